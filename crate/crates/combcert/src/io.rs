//! Plain-text formats. Blank lines and lines starting with `#` are skipped
//! everywhere; vertices are 0-indexed.
//!
//! * graph: `n m`, then `m` lines `u v`. A third header token `directed`
//!   marks a digraph with arcs `u -> v`.
//! * edge partition: `m`, then one line `u v c` per host edge.
//! * coalition instance: `n k r`, then lines `i: s1 ... sk`; children with
//!   no line are left open.
//! * ball instance: `n d`, then the `n` center coordinates (integers,
//!   decimals or `a/b`), then one binary point per line (`0110` or `0 1 1 0`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coalition::CoalitionInstance;
use crate::error::{Error, Result};
use crate::fair::EdgePartition;
use crate::graph::{Digraph, Graph};
use crate::prob::L1BallInstance;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| err(line, format!("expected a non-negative integer, got {t:?}"))))
        .collect()
}

struct GraphText {
    n: usize,
    directed: bool,
    pairs: Vec<(usize, usize)>,
}

fn parse_pairs(text: &str) -> Result<GraphText> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| err(1, "missing header `n m`"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let directed = match toks.get(2) {
        None => false,
        Some(&"directed") => true,
        Some(t) => return Err(err(hl, format!("unknown header flag {t:?}"))),
    };
    let nm = numbers(hl, &toks[..toks.len().min(2)].join(" "))?;
    let [n, m] = nm[..] else {
        return Err(err(hl, "header must be `n m`"));
    };
    let mut pairs = Vec::with_capacity(m);
    for (l, s) in it {
        let v = numbers(l, s)?;
        let [a, b] = v[..] else {
            return Err(err(l, "edge line must be `u v`"));
        };
        if a >= n || b >= n {
            return Err(err(l, format!("vertex out of range for n={n}")));
        }
        pairs.push((a, b));
    }
    if pairs.len() != m {
        return Err(err(hl, format!("header announces {m} edges, found {}", pairs.len())));
    }
    Ok(GraphText { n, directed, pairs })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let g = parse_pairs(text)?;
    if g.directed {
        return Err(err(1, "expected an undirected graph"));
    }
    Graph::from_edges(g.n, g.pairs)
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let g = parse_pairs(text)?;
    if !g.directed {
        return Err(err(1, "expected the `directed` header flag"));
    }
    Digraph::from_arcs(g.n, g.pairs)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_partition(text: &str, host: Graph) -> Result<EdgePartition> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| err(1, "missing header `m`"))?;
    let [m] = numbers(hl, header)?[..] else {
        return Err(err(hl, "header must be `m`"));
    };
    let mut colors = Vec::new();
    for (l, s) in it {
        let [u, v, c] = numbers(l, s)?[..] else {
            return Err(err(l, "line must be `u v c`"));
        };
        colors.push(((u, v), c));
    }
    EdgePartition::new(host, m, colors)
}

pub fn write_partition(p: &EdgePartition) -> String {
    let mut s = format!("{}\n", p.classes());
    for (u, v, c) in p.triples() {
        s.push_str(&format!("{u} {v} {c}\n"));
    }
    s
}

pub fn parse_instance(text: &str) -> Result<CoalitionInstance> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| err(1, "missing header `n k r`"))?;
    let [n, k, r] = numbers(hl, header)?[..] else {
        return Err(err(hl, "header must be `n k r`"));
    };
    let mut choices = vec![None; n];
    for (l, s) in it {
        let (i, rest) = s.split_once(':').ok_or_else(|| err(l, "line must be `i: s1 ... sk`"))?;
        let [i] = numbers(l, i)?[..] else {
            return Err(err(l, "bad child index"));
        };
        if i >= n {
            return Err(err(l, format!("child {i} out of range for n={n}")));
        }
        if choices[i].is_some() {
            return Err(err(l, format!("child {i} listed twice")));
        }
        choices[i] = Some(numbers(l, rest)?);
    }
    CoalitionInstance::new(n, k, r, choices)
}

pub fn write_instance(inst: &CoalitionInstance) -> String {
    let mut s = format!("{} {} {}\n", inst.n, inst.k, inst.r);
    for (i, c) in inst.choices.iter().enumerate() {
        if let Some(c) = c {
            let list: Vec<String> = c.iter().map(ToString::to_string).collect();
            s.push_str(&format!("{i}: {}\n", list.join(" ")));
        }
    }
    s
}

/// Integer, decimal (`-0.25`) or fraction (`3/8`).
pub fn parse_rational(t: &str) -> Option<BigRational> {
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.parse().ok()?;
        let b: BigInt = b.parse().ok()?;
        return (!b.is_zero()).then(|| BigRational::new(a, b));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_val: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f = BigRational::new(frac.parse().ok()?, scale);
        let whole = BigRational::from_integer(int_val);
        return Some(if neg { whole - f } else { whole + f });
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

pub fn parse_ball(text: &str) -> Result<L1BallInstance> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| err(1, "missing header `n d`"))?;
    let [n, d] = numbers(hl, header)?[..] else {
        return Err(err(hl, "header must be `n d`"));
    };
    let (xl, xs) = it.next().ok_or_else(|| err(hl + 1, "missing center line"))?;
    let x: Vec<BigRational> = xs
        .split_whitespace()
        .map(|t| parse_rational(t).ok_or_else(|| err(xl, format!("bad coordinate {t:?}"))))
        .collect::<Result<_>>()?;
    if x.len() != n {
        return Err(err(xl, format!("expected {n} coordinates, got {}", x.len())));
    }
    let mut points = Vec::new();
    for (l, s) in it {
        let p: Vec<u8> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(err(l, format!("bad bit {c:?}"))),
            })
            .collect::<Result<_>>()?;
        if p.len() != n {
            return Err(err(l, format!("point has {} bits, expected {n}", p.len())));
        }
        points.push(p);
    }
    L1BallInstance::new(x, d, points)
}

pub fn write_ball(inst: &L1BallInstance) -> String {
    let mut s = format!("{} {}\n", inst.x.len(), inst.d);
    let xs: Vec<String> = inst
        .x
        .iter()
        .map(|r| if r.denom().is_one() { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) })
        .collect();
    s.push_str(&xs.join(" "));
    s.push('\n');
    for p in &inst.points {
        s.extend(p.iter().map(|b| if *b == 1 { '1' } else { '0' }));
        s.push('\n');
    }
    s
}
