//! Connected dominating sets in graphs of minimum degree `k`.
//!
//! A dominating set with `x` induced components is made connected by at
//! most `f_{n,k}(x)` extra vertices ([`merge_components`]). The random set
//! `S = T ∪ Y_T` (each vertex in `T` with probability `ln(k+1)/(k+1)`,
//! `Y_T` the vertices left undominated) has small expected
//! `|S| + f(D(H))`, and [`derandomized_cds`] fixes the choices one vertex
//! at a time by conditional expectations.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::seeded;

/// Field operations needed to evaluate the potential either in `f64` or
/// exactly.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug {}
impl<T: Num + Clone + PartialOrd + FromPrimitive + Debug> Scalar for T {}

fn from_usize<T: Scalar>(v: usize) -> T {
    T::from_usize(v).expect("usize fits the scalar type")
}

fn powi<T: Scalar>(b: &T, e: usize) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * b.clone();
    }
    r
}

/// The budget `f_{n,k}(x)`: write `x = (y + z) N` with `N = n/(k+1)`,
/// integer `y ≥ 0` and `z ∈ [0,1)`; then `f = N(2z) − 2` for `y = 0` and
/// `f = N(z/y + H_{y−1} + 2) − 2` otherwise.
pub fn f_nk<T: Scalar>(n: usize, k: usize, x: &T) -> Result<T> {
    if *x < T::one() {
        return Err(Error::DomainError(format!("f_nk needs x >= 1, got {x:?}")));
    }
    if k + 1 > n {
        return Err(Error::DomainError(format!("f_nk needs k < n, got n={n}, k={k}")));
    }
    let big_n = from_usize::<T>(n) / from_usize(k + 1);
    let mut y = 0usize;
    while from_usize::<T>(y + 1) * big_n.clone() <= *x {
        y += 1;
    }
    let z = x.clone() / big_n.clone() - from_usize(y);
    let two = from_usize::<T>(2);
    let inner = if y == 0 {
        two * z
    } else {
        let mut h = T::zero();
        for j in 1..y {
            h = h + T::one() / from_usize(j);
        }
        z / from_usize(y) + h + two
    };
    Ok(big_n * inner - from_usize(2))
}

pub fn f_nk_f64(n: usize, k: usize, x: f64) -> Result<f64> {
    f_nk(n, k, &x)
}

/// Upper bound `n(ln(k+1)+4)/(k+1) − 2` on the connected domination number.
pub fn cds_bound(n: usize, k: usize) -> f64 {
    n as f64 * (((k + 1) as f64).ln() + 4.0) / (k + 1) as f64 - 2.0
}

/// Upper bound `n(ln(k+1)+1)/(k+1)` on the domination number.
pub fn domination_bound(n: usize, k: usize) -> f64 {
    n as f64 * (((k + 1) as f64).ln() + 1.0) / (k + 1) as f64
}

/// `E[1/(B(k,p)+1)] = (1 − (1−p)^{k+1}) / ((k+1)p)`.
pub fn binom_inv_expectation(k: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::DomainError(format!("p must lie in (0,1), got {p}")));
    }
    let kk = (k + 1) as f64;
    Ok((1.0 - (1.0 - p).powi(k as i32 + 1)) / (kk * p))
}

/// `Σ_a C(s,a) p^a (1−p)^{s−a} / (q+1+a)`.
fn inv_degree_expectation<T: Scalar>(q: usize, s: usize, p: &T) -> T {
    let one_minus = T::one() - p.clone();
    let mut total = T::zero();
    let mut binom = T::one();
    for a in 0..=s {
        let term = binom.clone() * powi(p, a) * powi(&one_minus, s - a) / from_usize(q + 1 + a);
        total = total + term;
        binom = binom * from_usize(s - a) / from_usize(a + 1);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Undecided,
    In,
    Out,
}

/// Membership decisions for `T`, fixed in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomState {
    pub decisions: Vec<Decision>,
}

impl DomState {
    pub fn undecided(n: usize) -> Self {
        DomState {
            decisions: vec![Decision::Undecided; n],
        }
    }

    pub fn decided(&self) -> usize {
        self.decisions.iter().take_while(|d| **d != Decision::Undecided).count()
    }

    pub fn is_valid(&self) -> bool {
        let i = self.decided();
        self.decisions[i..].iter().all(|d| *d == Decision::Undecided)
    }
}

/// Conditional expectations of `|T|`, `|Y_T|` and `D(H)` given the
/// decisions, and `total = T + Y + f(max(D,1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential<T> {
    pub psi_t: T,
    pub psi_y: T,
    pub psi_d: T,
    pub total: T,
}

/// The conditional potential for the given state. `D(H)` charges each
/// vertex of `T` by `1/(d_T(v)+1)` and each vertex of `Y_T` by 1.
pub fn psi<T: Scalar>(g: &Graph, state: &DomState, p: &T) -> Result<Potential<T>> {
    let n = g.n();
    let k = g.min_degree();
    let one_minus = T::one() - p.clone();
    let (mut pt, mut py, mut pd) = (T::zero(), T::zero(), T::zero());
    for v in 0..n {
        let (mut q, mut s) = (0usize, 0usize);
        for &w in g.neighbors(v) {
            match state.decisions[w] {
                Decision::In => q += 1,
                Decision::Undecided => s += 1,
                Decision::Out => {}
            }
        }
        // probability that v ends in Y_T: no member of N[v] in T
        let none_in = |own_undecided: bool| {
            if q > 0 {
                T::zero()
            } else {
                powi(&one_minus, s + usize::from(own_undecided))
            }
        };
        match state.decisions[v] {
            Decision::In => {
                pt = pt + T::one();
                pd = pd + inv_degree_expectation(q, s, p);
            }
            Decision::Out => {
                let y = none_in(false);
                py = py + y.clone();
                pd = pd + y;
            }
            Decision::Undecided => {
                pt = pt + p.clone();
                py = py + none_in(true);
                let out_part = if q > 0 { T::zero() } else { powi(&one_minus, s) };
                pd = pd + p.clone() * inv_degree_expectation(q, s, p) + one_minus.clone() * out_part;
            }
        }
    }
    let arg = if pd < T::one() { T::one() } else { pd.clone() };
    let f = f_nk(n, k, &arg)?;
    Ok(Potential {
        total: pt.clone() + py.clone() + f,
        psi_t: pt,
        psi_y: py,
        psi_d: pd,
    })
}

pub fn default_p(k: usize) -> f64 {
    ((k + 1) as f64).ln() / (k + 1) as f64
}

/// `p` rounded to a dyadic rational with denominator `2^40`.
pub fn dyadic_p(k: usize) -> BigRational {
    let den: i64 = 1 << 40;
    let num = (default_p(k) * den as f64).round() as i64;
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, Serialize)]
pub struct CdsOutcome {
    /// Dominating set `T ∪ Y_T` before merging.
    pub dominating: Vec<usize>,
    /// Final connected dominating set.
    pub set: Vec<usize>,
    /// Induced components of `dominating`.
    pub components: usize,
    pub k: usize,
    pub bound: f64,
    /// Potential after each decision, starting with the empty state.
    pub psi: Vec<f64>,
}

fn check_input(g: &Graph) -> Result<usize> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::HostDisconnected);
    }
    let k = g.min_degree();
    if k == 0 {
        return Err(Error::InfeasibleParameters("minimum degree must be at least 1".into()));
    }
    Ok(k)
}

/// Fixes each vertex's membership in `T` in order, taking the branch with
/// the smaller potential (ties go to "not in T"). Returns the decisions and
/// the potential trace.
pub fn derandomize<T: Scalar>(g: &Graph, p: &T, slack: &T) -> Result<(DomState, Vec<T>)> {
    let mut state = DomState::undecided(g.n());
    let mut trace = vec![psi(g, &state, p)?.total];
    for v in 0..g.n() {
        state.decisions[v] = Decision::In;
        let plus = psi(g, &state, p)?.total;
        state.decisions[v] = Decision::Out;
        let minus = psi(g, &state, p)?.total;
        let chosen = if plus < minus {
            state.decisions[v] = Decision::In;
            plus
        } else {
            minus
        };
        let prev = trace.last().expect("trace starts non-empty").clone();
        if chosen > prev.clone() + slack.clone() {
            return Err(Error::InternalInvariantViolation(format!(
                "potential increased at vertex {v}: {prev:?} -> {chosen:?}"
            )));
        }
        trace.push(chosen);
    }
    Ok((state, trace))
}

fn dominating_from_t(g: &Graph, in_t: &[bool]) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| in_t[v] || !g.neighbors(v).iter().any(|&w| in_t[w]))
        .collect()
}

/// Realized `D(H)` for a chosen `T`: `1/(d_T(v)+1)` over `T` plus `|Y_T|`.
pub fn realized_d(g: &Graph, in_t: &[bool]) -> f64 {
    (0..g.n())
        .map(|v| {
            let d = g.neighbors(v).iter().filter(|&&w| in_t[w]).count();
            if in_t[v] {
                1.0 / (d + 1) as f64
            } else if d == 0 {
                1.0
            } else {
                0.0
            }
        })
        .sum()
}

fn finish(g: &Graph, k: usize, in_t: &[bool], psi: Vec<f64>) -> Result<CdsOutcome> {
    let dominating = dominating_from_t(g, in_t);
    let mask = mask_of(g.n(), &dominating);
    let components = g.induced_components(&mask).len();
    let set = merge_components(g, &dominating)?;
    Ok(CdsOutcome {
        dominating,
        set,
        components,
        k,
        bound: cds_bound(g.n(), k),
        psi,
    })
}

/// Deterministic connected dominating set of size at most
/// `n(ln(k+1)+4)/(k+1) − 2`, with `k` the minimum degree.
pub fn derandomized_cds(g: &Graph) -> Result<CdsOutcome> {
    let k = check_input(g)?;
    let p = default_p(k);
    let (state, trace) = derandomize(g, &p, &1e-9)?;
    let in_t: Vec<bool> = state.decisions.iter().map(|d| *d == Decision::In).collect();
    let last = *trace.last().expect("non-empty trace");
    let chosen = dominating_from_t(g, &in_t).len() as f64;
    let realized = chosen + f_nk_f64(g.n(), k, realized_d(g, &in_t).max(1.0))?;
    if (realized - last).abs() > 1e-6 * (1.0 + last.abs()) {
        return Err(Error::InternalInvariantViolation(format!(
            "final potential {last} differs from realized value {realized}"
        )));
    }
    finish(g, k, &in_t, trace)
}

/// Same decisions computed with `p` rounded to a dyadic rational and exact
/// arithmetic throughout; monotonicity is checked with zero slack.
pub fn derandomized_cds_exact(g: &Graph) -> Result<(CdsOutcome, Vec<BigRational>)> {
    let k = check_input(g)?;
    if g.n() > 20 {
        return Err(Error::TooLarge(format!("exact potential limited to n <= 20, got {}", g.n())));
    }
    let p = dyadic_p(k);
    let (state, trace) = derandomize(g, &p, &BigRational::zero())?;
    let in_t: Vec<bool> = state.decisions.iter().map(|d| *d == Decision::In).collect();
    let approx = trace.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
    Ok((finish(g, k, &in_t, approx)?, trace))
}

/// Random `T`, then `S = T ∪ Y_T`, then merging.
pub fn randomized_cds(g: &Graph, seed: u64) -> Result<CdsOutcome> {
    let k = check_input(g)?;
    let p = default_p(k);
    let mut rng = seeded(seed);
    let in_t: Vec<bool> = (0..g.n()).map(|_| rng.gen_bool(p)).collect();
    finish(g, k, &in_t, Vec::new())
}

/// Repeatedly takes the vertex dominating the most undominated vertices
/// (smallest index on ties).
pub fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut set = Vec::new();
    while left > 0 {
        let gain = |v: usize| {
            usize::from(!dominated[v]) + g.neighbors(v).iter().filter(|&&w| !dominated[w]).count()
        };
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).expect("n > 0");
        set.push(best);
        for w in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !dominated[w] {
                dominated[w] = true;
                left -= 1;
            }
        }
    }
    set.sort_unstable();
    set
}

fn mask_of(n: usize, s: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in s {
        m[v] = true;
    }
    m
}

/// `Σ_{v∈S} 1/(d_H(v)+1)` for the subgraph induced on `mask`.
fn inverse_degree_sum(g: &Graph, mask: &[bool]) -> f64 {
    (0..g.n())
        .filter(|&v| mask[v])
        .map(|v| 1.0 / (g.neighbors(v).iter().filter(|&&w| mask[w]).count() + 1) as f64)
        .sum()
}

/// Makes a dominating set connected. While there are more than
/// `n/(k+1)` components a vertex lying in the most closed neighbourhoods
/// of component representatives is added; after that components are
/// joined one at a time along shortest paths (at most two new vertices
/// each). The result has at most `|s| + f_{n,k}(x)` vertices, `x` being
/// the initial component count.
pub fn merge_components(g: &Graph, s: &[usize]) -> Result<Vec<usize>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::HostDisconnected);
    }
    for &v in s {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if !g.is_dominating(s) {
        return Err(Error::NotDominating);
    }
    let n = g.n();
    let k = g.min_degree();
    let mut mask = mask_of(n, s);
    let start_size = mask.iter().filter(|&&b| b).count();
    let mut comps = g.induced_components(&mask);
    let x0 = comps.len();
    while comps.len() > 1 {
        let x = comps.len();
        if x as f64 > inverse_degree_sum(g, &mask) + 1e-9 {
            return Err(Error::InternalInvariantViolation(format!(
                "{x} components exceed the inverse-degree sum"
            )));
        }
        let mut added = false;
        if x * (k + 1) > n {
            added = hub_step(g, &mut mask, &comps, k)?;
        }
        if !added {
            path_step(g, &mut mask, &comps)?;
        }
        comps = g.induced_components(&mask);
    }
    let result: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
    if x0 > 0 {
        let budget = f_nk(n, k, &BigRational::from_integer(BigInt::from(x0)))?;
        let used = BigRational::from_integer(BigInt::from(result.len() - start_size));
        if used > budget {
            return Err(Error::InternalInvariantViolation(format!(
                "merging used {} vertices, budget {budget}",
                result.len() - start_size
            )));
        }
    }
    Ok(result)
}

fn hub_step(g: &Graph, mask: &mut [bool], comps: &[Vec<usize>], k: usize) -> Result<bool> {
    let n = g.n();
    let mut counts = vec![0usize; n];
    for comp in comps {
        let rep = *comp.iter().min().expect("components are non-empty");
        counts[rep] += 1;
        for &w in g.neighbors(rep) {
            counts[w] += 1;
        }
    }
    let (u, &best) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(v, c)| (*c, std::cmp::Reverse(v)))
        .expect("n > 0");
    let need = (comps.len() * (k + 1)).div_ceil(n);
    if best < need {
        return Err(Error::InternalInvariantViolation(format!(
            "hub vertex covers {best} representatives, expected at least {need}"
        )));
    }
    if mask[u] {
        return Ok(false);
    }
    mask[u] = true;
    Ok(true)
}

fn path_step(g: &Graph, mask: &mut [bool], comps: &[Vec<usize>]) -> Result<()> {
    let n = g.n();
    let first = comps
        .iter()
        .min_by_key(|c| c.iter().min().copied())
        .expect("at least two components");
    let mut in_first = vec![false; n];
    for &v in first {
        in_first[v] = true;
    }
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in first {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] != usize::MAX {
                continue;
            }
            dist[w] = dist[v] + 1;
            parent[w] = v;
            if mask[w] && !in_first[w] {
                if dist[w] > 3 {
                    return Err(Error::InternalInvariantViolation(format!(
                        "nearest component at distance {}",
                        dist[w]
                    )));
                }
                let mut x = parent[w];
                while !in_first[x] {
                    mask[x] = true;
                    x = parent[x];
                }
                return Ok(());
            }
            queue.push_back(w);
        }
    }
    Err(Error::HostDisconnected)
}

/// `m` copies of `K_{k+1}` minus an edge `x_i y_i`, joined by `y_i x_{i+1}`
/// cyclically. Block `i` occupies `i(k+1)..(i+1)(k+1)` with `x_i` first
/// and `y_i` second.
pub fn gen_cycle_of_cliques(k: usize, m: usize) -> Result<Graph> {
    if k < 2 || m < 2 {
        return Err(Error::InfeasibleParameters(format!("need k >= 2 and m >= 2, got k={k}, m={m}")));
    }
    let b = k + 1;
    let mut edges = Vec::new();
    for i in 0..m {
        let base = i * b;
        for u in 0..b {
            for v in u + 1..b {
                if (u, v) != (0, 1) {
                    edges.push((base + u, base + v));
                }
            }
        }
        edges.push((base + 1, ((i + 1) % m) * b));
    }
    Graph::from_edges(m * b, edges)
}
