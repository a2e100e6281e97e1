//! Edge-list text format: a header line `n m`, then one `u v` line per edge
//! in canonical order. Blank lines and `#` comments are skipped on input.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v())?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut text = String::new();
    for line in input.lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut g = Graph::new(n);
    for (line, l) in lines {
        let (a, b) = parse_pair(line, l)?;
        if a >= n || b >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex out of range (n = {n})"),
            });
        }
        if a == b {
            return Err(Error::Parse {
                line,
                msg: "self-loop".into(),
            });
        }
        if !g.add_edge(a, b) {
            return Err(Error::Parse {
                line,
                msg: "duplicate edge".into(),
            });
        }
    }
    if g.edge_count() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", g.edge_count()),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}
