//! Plain-text edge lists.
//!
//! One edge per line as `u v` or `u v w`; `#` starts a comment. Weights are
//! integers, decimals (`0.25`) or rational literals (`p/q`), all read
//! exactly. A line holding a single label declares a vertex, which lets
//! isolated vertices and the vertex order survive a round trip.

use std::io::BufRead;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::{EdgeRejection, Graph, GraphBuilder};
use crate::error::{Error, Result};
use crate::Rational;

pub fn parse_edge_list(text: &str, weighted: bool) -> Result<Graph> {
    let mut b = GraphBuilder::new(weighted);
    for (i, raw) in text.lines().enumerate() {
        parse_line(&mut b, i + 1, raw)?;
    }
    Ok(b.build())
}

pub fn load_edge_list<R: BufRead>(reader: R, weighted: bool) -> Result<Graph> {
    let mut b = GraphBuilder::new(weighted);
    for (i, raw) in reader.lines().enumerate() {
        let raw = raw.map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        parse_line(&mut b, i + 1, &raw)?;
    }
    Ok(b.build())
}

fn parse_line(b: &mut GraphBuilder, line: usize, raw: &str) -> Result<()> {
    let content = raw.split('#').next().unwrap_or("");
    let tokens: Vec<&str> = content.split_whitespace().collect();
    let (u, v, w) = match tokens.as_slice() {
        [] => return Ok(()),
        [u] => {
            b.vertex(u);
            return Ok(());
        }
        [u, v] => (*u, *v, Rational::one()),
        [u, v, w] => {
            if !b.weighted {
                return Err(Error::Parse {
                    line,
                    message: "weight given for an unweighted graph".into(),
                });
            }
            let weight = parse_weight(w).ok_or_else(|| Error::Parse {
                line,
                message: format!("invalid weight '{w}'"),
            })?;
            (*u, *v, weight)
        }
        _ => {
            return Err(Error::Parse {
                line,
                message: format!("expected 'u v' or 'u v w', got {} fields", tokens.len()),
            })
        }
    };
    if u == v {
        return Err(Error::Loop {
            line,
            label: u.to_owned(),
        });
    }
    if w <= Rational::zero() {
        return Err(Error::NonPositiveWeight {
            line,
            weight: w.to_string(),
        });
    }
    let ui = b.vertex(u);
    let vi = b.vertex(v);
    b.add_edge(ui, vi, w).map_err(|r| match r {
        EdgeRejection::Duplicate => Error::DuplicateEdge {
            line,
            u: u.to_owned(),
            v: v.to_owned(),
        },
        EdgeRejection::Loop => Error::Loop {
            line,
            label: u.to_owned(),
        },
        EdgeRejection::NonPositiveWeight => Error::NonPositiveWeight {
            line,
            weight: "0".into(),
        },
    })
}

/// Parses `p`, `p/q` or a plain decimal `a.b` into an exact rational.
pub fn parse_weight(s: &str) -> Option<Rational> {
    if s.contains('/') {
        let (p, q) = s.split_once('/')?;
        let p = BigInt::from_str(p).ok()?;
        let q = BigInt::from_str(q).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(&digits).ok()?;
    let denom: BigInt = BigInt::from(10u32).pow(frac.len() as u32);
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// Serializes a graph so that [`parse_edge_list`] rebuilds it exactly:
/// every label is declared first, in index order, then each edge once.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for l in g.labels() {
        out.push_str(l);
        out.push('\n');
    }
    for (u, v, w) in g.edges() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        if g.is_weighted() {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}
