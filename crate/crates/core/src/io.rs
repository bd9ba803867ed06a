//! Text formats.
//!
//! `.ssys`: a header line `m n`, then `n` lines of `m` characters from `{0,1}`.
//! `.brel`: a header line `|X| |Y|`, then `|X|` lines of `|Y|` characters.
//! In both, `#` starts a comment that runs to the end of the line, and blank
//! lines are ignored. Duplicate concepts in a `.ssys` file are merged.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use crate::udtfs::BipartiteRelation;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<(usize, usize, usize)> {
    let (ln, line) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let nums: Vec<&str> = line.split_whitespace().collect();
    let bad = || Error::Parse {
        line: ln,
        msg: format!("expected two counts, got {line:?}"),
    };
    if nums.len() != 2 {
        return Err(bad());
    }
    let a = nums[0].parse().map_err(|_| bad())?;
    let b = nums[1].parse().map_err(|_| bad())?;
    Ok((ln, a, b))
}

fn parse_rows(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    header_line: usize,
    count: usize,
    width: usize,
) -> Result<Vec<Bits>> {
    if width == 0 {
        // Rows of width zero are blank lines, which carry no content.
        return Ok(vec![Bits::zeros(0); count]);
    }
    let mut rows = Vec::with_capacity(count);
    let mut last = header_line;
    for _ in 0..count {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: last,
            msg: format!("expected {count} rows, found {}", rows.len()),
        })?;
        last = ln;
        if line.len() != width {
            return Err(Error::Parse {
                line: ln,
                msg: format!("row has {} characters, expected {width}", line.len()),
            });
        }
        let bits = Bits::parse(line).ok_or(Error::Parse {
            line: ln,
            msg: "rows may only contain 0 and 1".into(),
        })?;
        rows.push(bits);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing content after the last row".into(),
        });
    }
    Ok(rows)
}

pub fn parse_ssys(text: &str) -> Result<SetSystem> {
    let mut lines = content_lines(text);
    let (hl, m, n) = parse_header(&mut lines)?;
    let rows = parse_rows(&mut lines, hl, n, m)?;
    SetSystem::new(m, rows)
}

pub fn format_ssys(class: &SetSystem) -> String {
    let m = class.ground_size();
    let mut out = format!("{m} {}\n", class.len());
    if m > 0 {
        for c in class.concepts() {
            out.push_str(&c.to_bitstring(m));
            out.push('\n');
        }
    }
    out
}

pub fn parse_brel(text: &str) -> Result<BipartiteRelation> {
    let mut lines = content_lines(text);
    let (hl, x, y) = parse_header(&mut lines)?;
    let rows = parse_rows(&mut lines, hl, x, y)?;
    BipartiteRelation::new(x, y, rows)
}

pub fn format_brel(rel: &BipartiteRelation) -> String {
    let mut out = format!("{} {}\n", rel.x_size(), rel.y_size());
    if rel.y_size() > 0 {
        for a in 0..rel.x_size() {
            out.push_str(&rel.row(a).to_bitstring(rel.y_size()));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# thresholds\n3 4 # header\n000\n100\n\n110\n111 # last\n";
        let c = parse_ssys(text).unwrap();
        assert_eq!(c.ground_size(), 3);
        assert_eq!(c.len(), 4);
        assert_eq!(format_ssys(&c), "3 4\n000\n100\n110\n111\n");
    }

    #[test]
    fn reports_bad_rows() {
        assert!(matches!(
            parse_ssys("2 1\n101\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_ssys("2 2\n10\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_ssys("2 1\n1x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_ssys("2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_ssys("2 1\n10\n01\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_ssys(""), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn brel_round_trip() {
        let text = "2 3\n011\n001\n";
        let r = parse_brel(text).unwrap();
        assert!(r.get(0, 1) && !r.get(1, 1));
        assert_eq!(format_brel(&r), text);
    }

    #[test]
    fn zero_width_round_trip() {
        let c = parse_ssys("0 1\n").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(format_ssys(&c), "0 1\n");
    }
}
