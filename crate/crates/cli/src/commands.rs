use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};
use vcc_core::io::{format_brel, format_ssys, parse_brel, parse_ssys};
use vcc_core::report::{run_report, ReportConfig, Suite};
use vcc_core::udtfs::UdtfsEntry;
use vcc_core::{
    decompose, dual, extend_compressible, find_kc_compressible, generate, hype_cover,
    hype_decompose, hype_family, is_k_hype, kc, largest_shattered_set, partial_teaching_dimension,
    rtd_sequence, teaching_dimension, transversal_report, udtfs_report, vc_dimension, Alpha,
    BipartiteRelation, DecomposeOutcome, Error, Generated, GeneratorSpec, HonestOutcome, Hype,
    Labeling, PartialLabeling, SetSystem, TeachingCertificate,
};

use crate::{Cli, Command, Family, GenArgs, HypeVerb, SearchArgs};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(e) if e.is_cap() => 3,
        CliError::Core(Error::Internal(_)) => 1,
        _ => 2,
    }
}

/// Rendered output plus whether a bounded search came up empty.
pub struct Output {
    pub text: String,
    pub exhausted: bool,
}

impl Output {
    fn done(text: String) -> Self {
        Output {
            text,
            exhausted: false,
        }
    }
}

pub fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_class(path: &Path) -> CliResult<SetSystem> {
    Ok(parse_ssys(&read_input(path)?)?)
}

fn load_relation(path: &Path) -> CliResult<BipartiteRelation> {
    Ok(parse_brel(&read_input(path)?)?)
}

fn labeling_for(class: &SetSystem, s: &str) -> CliResult<Labeling> {
    let l = Labeling::parse(s)?;
    if l.ground_size() != class.ground_size() {
        return Err(Error::GroundMismatch {
            expected: class.ground_size(),
            got: l.ground_size(),
        }
        .into());
    }
    Ok(l)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

fn cert_json(cert: &TeachingCertificate, bound: u64, vc: usize) -> Value {
    json!({
        "concept": cert.concept.to_string(),
        "witness": cert.witness,
        "size": cert.size(),
        "bound": bound,
        "vc": vc,
    })
}

fn cert_table(rows: &[Value]) -> String {
    let mut out = String::from("concept\twitness\tsize\tbound\tvc\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r["concept"].as_str().unwrap_or_default(),
            r["witness"],
            r["size"],
            r["bound"],
            r["vc"]
        );
    }
    out
}

fn spec_from(args: &GenArgs, seed: u64) -> GeneratorSpec {
    let m = args.m;
    match args.family {
        Family::FullCube => GeneratorSpec::FullCube { m },
        Family::Singletons => GeneratorSpec::Singletons { m },
        Family::Thresholds => GeneratorSpec::Thresholds { m },
        Family::Intervals => GeneratorSpec::Intervals { m },
        Family::UnionsOfIntervals => GeneratorSpec::UnionsOfIntervals { m, t: args.t },
        Family::HalfplanesOnGrid => GeneratorSpec::HalfplanesOnGrid {
            width: args.width,
            height: args.height,
        },
        Family::OrderRelation => GeneratorSpec::OrderRelation { m },
        Family::RandomFiltered => GeneratorSpec::RandomFiltered {
            m,
            concepts: args.concepts,
            max_vc: args.max_vc,
            seed,
        },
    }
}

fn k_or_default(class: &SetSystem, search: &SearchArgs) -> CliResult<usize> {
    match search.k {
        Some(k) => Ok(k),
        None => {
            let vc = vc_dimension(class)?;
            Ok((kc(vc as u32) as usize).min(class.ground_size()))
        }
    }
}

fn decomposition_json(target: &Labeling, alpha: Alpha, k: usize, out: &DecomposeOutcome) -> Value {
    match out {
        DecomposeOutcome::Found(d) => json!({
            "target": target.to_string(),
            "alpha": alpha.to_string(),
            "n": d.n(),
            "k": k,
            "components": strings(&d.concepts()),
            "witnesses": d.components.iter().map(|c| c.certificate.witness.clone()).collect::<Vec<_>>(),
            "status": "found",
        }),
        DecomposeOutcome::Exhausted { n_max, .. } => json!({
            "target": target.to_string(),
            "alpha": alpha.to_string(),
            "n": null,
            "n_max": n_max,
            "k": k,
            "components": [],
            "witnesses": [],
            "status": "exhausted",
        }),
    }
}

fn decomposition_text(v: &Value) -> String {
    let mut out = format!(
        "target {}  alpha {}  k {}  status {}\n",
        v["target"].as_str().unwrap_or_default(),
        v["alpha"].as_str().unwrap_or_default(),
        v["k"],
        v["status"].as_str().unwrap_or_default()
    );
    if let (Some(cs), Some(ws)) = (v["components"].as_array(), v["witnesses"].as_array()) {
        for (c, w) in cs.iter().zip(ws) {
            let _ = writeln!(out, "  {}\twitness {}", c.as_str().unwrap_or_default(), w);
        }
    }
    out
}

fn render(cli: &Cli, v: Value, text: impl FnOnce(&Value) -> String) -> String {
    if cli.json {
        pretty(&v)
    } else {
        text(&v)
    }
}

fn parse_points(spec: Option<&str>, x_size: usize) -> CliResult<Vec<usize>> {
    let Some(spec) = spec else {
        return Ok((0..x_size).collect());
    };
    let mut out = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let p: usize = tok
            .parse()
            .map_err(|_| Error::Input(format!("bad index {tok:?} in --A")))?;
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn udtfs_entry_json(e: &UdtfsEntry) -> Value {
    match &e.outcome {
        HonestOutcome::Defined(p) => json!({
            "b": e.b,
            "status": "defined",
            "exact": e.exact,
            "n": p.n,
            "k": p.k,
            "d": p.d,
            "d_prime": p.d_prime,
            "d_dblprime": p.d_dblprime,
            "anchors": [p.anchors.0, p.anchors.1],
        }),
        HonestOutcome::Exhausted { n_max, k } => json!({
            "b": e.b,
            "status": "exhausted",
            "exact": false,
            "n_max": n_max,
            "k": k,
        }),
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Gen(args) => {
            let spec = spec_from(args, cli.seed);
            let text = match generate(&spec)? {
                Generated::System(s) => {
                    if cli.json {
                        pretty(&json!({
                            "instance": spec.to_string(),
                            "ground": s.ground_size(),
                            "concepts": strings(&s.labelings().collect::<Vec<_>>()),
                        }))
                    } else {
                        format_ssys(&s)
                    }
                }
                Generated::Relation(r) => format_brel(&r),
            };
            Ok(Output::done(text))
        }
        Command::Vc { file } => {
            let c = load_class(file)?;
            let v = json!({
                "ground": c.ground_size(),
                "concepts": c.len(),
                "vc": vc_dimension(&c)?,
                "shattered": largest_shattered_set(&c)?,
            });
            Ok(Output::done(render(cli, v, |v| {
                format!(
                    "ground {}  concepts {}  vc {}  shattered {}\n",
                    v["ground"], v["concepts"], v["vc"], v["shattered"]
                )
            })))
        }
        Command::Dual { file } => {
            let d = dual(&load_class(file)?)?;
            let text = if cli.json {
                pretty(&json!({
                    "ground": d.ground_size(),
                    "concepts": strings(&d.labelings().collect::<Vec<_>>()),
                    "vc": vc_dimension(&d)?,
                }))
            } else {
                format_ssys(&d)
            };
            Ok(Output::done(text))
        }
        Command::Teach { file, concept } => {
            let c = load_class(file)?;
            let vc = vc_dimension(&c)?;
            let bound = kc(vc as u32);
            let targets = match concept {
                Some(s) => vec![labeling_for(&c, s)?],
                None => c.labelings().collect(),
            };
            let mut rows = Vec::with_capacity(targets.len());
            for t in &targets {
                let (_, cert) = teaching_dimension(&c, t)?;
                rows.push(cert_json(&cert, bound, vc));
            }
            let text = if cli.json {
                pretty(&Value::Array(rows))
            } else {
                cert_table(&rows)
            };
            Ok(Output::done(text))
        }
        Command::Rtd { file } => {
            let c = load_class(file)?;
            let steps = rtd_sequence(&c)?;
            let rows: Vec<Value> = steps
                .iter()
                .map(|s| {
                    json!({
                        "concept": s.concept.to_string(),
                        "teaching_dimension": s.teaching_dimension,
                        "class_vc": s.class_vc,
                        "bound": kc(s.class_vc as u32),
                    })
                })
                .collect();
            let rtd = steps
                .iter()
                .map(|s| s.teaching_dimension)
                .max()
                .unwrap_or(0);
            let v = json!({ "rtd": rtd, "steps": rows });
            Ok(Output::done(render(cli, v, |v| {
                let mut out = String::from("step\tconcept\ttd\tclass_vc\tbound\n");
                for (i, r) in v["steps"].as_array().into_iter().flatten().enumerate() {
                    let _ = writeln!(
                        out,
                        "{i}\t{}\t{}\t{}\t{}",
                        r["concept"].as_str().unwrap_or_default(),
                        r["teaching_dimension"],
                        r["class_vc"],
                        r["bound"]
                    );
                }
                let _ = writeln!(out, "rtd {}", v["rtd"]);
                out
            })))
        }
        Command::Compress { file } => {
            let c = load_class(file)?;
            let vc = vc_dimension(&c)?;
            let (_, cert) = find_kc_compressible(&c)?;
            let v = cert_json(&cert, kc(vc as u32), vc);
            Ok(Output::done(render(cli, v, |v| {
                cert_table(std::slice::from_ref(v))
            })))
        }
        Command::Extend { file, partial, l } => {
            let c = load_class(file)?;
            let cond = PartialLabeling::parse(partial)?;
            c.check_partial(&cond)?;
            let vc = vc_dimension(&c)?;
            let l = match l {
                Some(l) => *l,
                None => partial_teaching_dimension(&c, &cond)?,
            };
            let (_, cert) = extend_compressible(&c, &cond, l)?;
            let v = cert_json(&cert, l as u64 + kc(vc as u32), vc);
            Ok(Output::done(render(cli, v, |v| {
                cert_table(std::slice::from_ref(v))
            })))
        }
        Command::Decompose {
            file,
            target,
            search,
        } => {
            let c = load_class(file)?;
            let target = labeling_for(&c, target)?;
            let alpha: Alpha = search.alpha.parse()?;
            let k = k_or_default(&c, search)?;
            let out = decompose(&c, &target, alpha, search.nmax, k)?;
            let exhausted = out.found().is_none();
            let v = decomposition_json(&target, alpha, k, &out);
            Ok(Output {
                text: render(cli, v, decomposition_text),
                exhausted,
            })
        }
        Command::Pq { file, p, q } => {
            let family = load_class(file)?;
            let rep = transversal_report(&family, *p, *q)?;
            let v = json!({
                "p": rep.p,
                "q": rep.q,
                "has_pq": rep.has_pq,
                "min_transversal": rep.min_transversal,
                "size": rep.min_transversal.len(),
            });
            Ok(Output::done(render(cli, v, |v| {
                format!(
                    "({}, {})-property {}  transversal {}  size {}\n",
                    v["p"], v["q"], v["has_pq"], v["min_transversal"], v["size"]
                )
            })))
        }
        Command::Hype {
            verb,
            file,
            gamma,
            search,
        } => run_hype(cli, *verb, file, gamma.as_deref(), search),
        Command::Udtfs {
            file,
            a,
            alpha,
            nmax,
            k,
        } => {
            let rel = load_relation(file)?;
            let points = parse_points(a.as_deref(), rel.x_size())?;
            let alpha: Alpha = alpha.parse()?;
            let rep = udtfs_report(&rel, &points, alpha, *nmax, *k)?;
            let v = json!({
                "points": rep.points,
                "alpha": alpha.to_string(),
                "n_max": rep.n_max,
                "k": rep.k,
                "successes": rep.successes(),
                "total": rep.total(),
                "max_k": rep.max_k(),
                "entries": rep.entries.iter().map(udtfs_entry_json).collect::<Vec<_>>(),
            });
            let exhausted = !rep.all_exact();
            Ok(Output {
                text: render(cli, v, |v| {
                    let mut out = String::from("b\tstatus\tn\tk\n");
                    for e in v["entries"].as_array().into_iter().flatten() {
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}",
                            e["b"],
                            e["status"].as_str().unwrap_or_default(),
                            e.get("n").unwrap_or(&Value::Null),
                            e["k"]
                        );
                    }
                    let _ = writeln!(out, "defined {}/{}", v["successes"], v["total"]);
                    out
                }),
                exhausted,
            })
        }
        Command::Report { suite } => {
            let suite: Suite = suite.parse()?;
            let v = run_report(&ReportConfig::new(suite, cli.seed))?;
            Ok(Output::done(pretty(&v)))
        }
    }
}

fn run_hype(
    cli: &Cli,
    verb: HypeVerb,
    file: &Path,
    gamma: Option<&str>,
    search: &SearchArgs,
) -> CliResult<Output> {
    let c = load_class(file)?;
    let vc = vc_dimension(&c)?;
    let k = search.k.unwrap_or(vc + 1);
    let need_gamma = || -> CliResult<Labeling> {
        let g = gamma.ok_or_else(|| Error::Input("this verb needs a labeling argument".into()))?;
        labeling_for(&c, g)
    };
    match verb {
        HypeVerb::Check => {
            let g = need_gamma()?;
            let v = json!({
                "gamma": g.to_string(),
                "k": k,
                "is_hype": is_k_hype(&c, &g, k)?,
                "in_class": c.contains(&g),
            });
            Ok(Output::done(render(cli, v, |v| {
                format!(
                    "{} is{} a {}-hype\n",
                    v["gamma"].as_str().unwrap_or_default(),
                    if v["is_hype"] == json!(true) {
                        ""
                    } else {
                        " not"
                    },
                    v["k"]
                )
            })))
        }
        HypeVerb::Family => {
            let h = hype_family(&c, k)?;
            let text = if cli.json {
                pretty(&json!({
                    "k": k,
                    "ground": h.ground_size(),
                    "hypes": strings(&h.labelings().collect::<Vec<_>>()),
                    "vc": vc_dimension(&h)?,
                    "class_vc": vc,
                }))
            } else {
                format_ssys(&h)
            };
            Ok(Output::done(text))
        }
        HypeVerb::Decompose => {
            let g = need_gamma()?;
            let hype = Hype::new(&c, g.clone(), k)?;
            let alpha: Alpha = search.alpha.parse()?;
            let out = hype_decompose(&c, &hype, alpha, search.nmax)?;
            let exhausted = out.found().is_none();
            let v = decomposition_json(&g, alpha, k, &out);
            Ok(Output {
                text: render(cli, v, decomposition_text),
                exhausted,
            })
        }
        HypeVerb::Cover => {
            let g = need_gamma()?;
            let hype = Hype::new(&c, g.clone(), k)?;
            let cover = hype_cover(&c, &hype)?;
            let v = json!({
                "gamma": g.to_string(),
                "k": k,
                "cover": strings(&cover),
                "size": cover.len(),
            });
            Ok(Output::done(render(cli, v, |v| {
                let mut out = format!(
                    "cover of {} (size {})\n",
                    v["gamma"].as_str().unwrap_or_default(),
                    v["size"]
                );
                for c in v["cover"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "  {}", c.as_str().unwrap_or_default());
                }
                out
            })))
        }
    }
}
