use std::fmt::Write as _;

use super::params::WitnessParams;
use crate::error::{invalid, Result};
use crate::walks::Walk;

/// Text form of a set of walks: a `#` header with the family sizes, then one
/// walk per line as space-separated vertex labels, followed by ` | ` and the
/// step marks (`+` marked, `-` not) when the walk carries stored marks.
pub fn write_walk_dump<'a>(p: &WitnessParams, walks: impl IntoIterator<Item = &'a Walk>) -> String {
    let mut out = format!(
        "# s_pp={} d0={} D={} nu2={} L={} extra={}\n",
        p.s_pp,
        p.d0.get(),
        p.big_d,
        p.nu2,
        p.l,
        p.extra
    );
    for w in walks {
        match w.marks() {
            Some(m) => {
                let marks: String = m.iter().map(|&b| if b { '+' } else { '-' }).collect();
                let _ = writeln!(out, "{w} | {marks}");
            }
            None => {
                let _ = writeln!(out, "{w}");
            }
        }
    }
    out
}

pub fn parse_walk_dump(text: &str) -> Result<(WitnessParams, Vec<Walk>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .and_then(|l| l.trim().strip_prefix('#'))
        .ok_or_else(|| invalid("walk dump must start with a '#' header"))?;
    let mut fields = std::collections::HashMap::new();
    for tok in header.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| invalid(format!("malformed header field '{tok}'")))?;
        let v: usize = v
            .parse()
            .map_err(|_| invalid(format!("header field '{k}' is not an integer")))?;
        fields.insert(k, v);
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| invalid(format!("header is missing '{k}'")))
    };
    let p = WitnessParams::with_extra(
        get("s_pp")?,
        get("d0")?,
        get("D")?,
        get("nu2")?,
        get("L")?,
        fields.get("extra").copied().unwrap_or(0),
    )?;
    let walks = lines
        .map(|l| {
            let (labels, marks) = match l.split_once('|') {
                Some((a, b)) => (a, Some(b.trim())),
                None => (l, None),
            };
            let marks = marks
                .map(|m| {
                    m.chars()
                        .map(|c| match c {
                            '+' => Ok(true),
                            '-' => Ok(false),
                            _ => Err(invalid(format!("bad mark '{c}'"))),
                        })
                        .collect::<Result<Vec<bool>>>()
                })
                .transpose()?;
            let v = labels
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| invalid(format!("bad vertex label '{t}'")))
                })
                .collect::<Result<Vec<u32>>>()?;
            Walk::new(v, marks)
        })
        .collect::<Result<Vec<Walk>>>()?;
    Ok((p, walks))
}
