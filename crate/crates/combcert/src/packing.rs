//! Edge-disjoint packing of two graphs on a common vertex set, with a
//! swap-based improvement loop that raises the girth of the combined graph
//! up to `min{g, k}` where `g` bounds the girth of both inputs and `k` is the
//! ball-growth bound of [`max_k_bound`].

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Length};
use crate::rng::{seeded, sub_seed};

/// Restarts attempted by the conflict-elimination search before giving up.
const MAX_RESTARTS: u64 = 64;

/// Largest `k` with `1 + D + D(D-1) + ... + D(D-1)^(k-1) < n`, `D = d1 + d2`.
/// Returns 0 when even `1 + D >= n`.
pub fn max_k_bound(d1: usize, d2: usize, n: usize) -> usize {
    let d = (d1 + d2) as u128;
    let n = n as u128;
    let mut sum: u128 = 1;
    let mut term = d;
    let mut k = 0usize;
    while sum.saturating_add(term) < n {
        sum += term;
        k += 1;
        if term == 0 || k as u128 >= n {
            break;
        }
        term = term.saturating_mul(d.saturating_sub(1));
    }
    k
}

/// Two bijections placing the vertices of `G1` and `G2` on a host vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

impl Placement {
    pub fn identity(n: usize) -> Self {
        Placement {
            f1: (0..n).collect(),
            f2: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.f1.len()
    }

    pub fn is_valid(&self) -> bool {
        is_bijection(&self.f1) && is_bijection(&self.f2) && self.f1.len() == self.f2.len()
    }

    /// Swap the host images of two `G1` vertices.
    pub fn swap_first(&mut self, a: usize, b: usize) {
        self.f1.swap(a, b);
    }
}

fn is_bijection(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().all(|&x| x < f.len() && !std::mem::replace(&mut seen[x], true))
}

/// Union of several edge-disjoint layers on one host, each host edge tagged
/// with the layer it came from (`0` for `G1`, `1` for `G2`).
#[derive(Clone, Debug)]
pub struct CombinedGraph {
    pub host: Graph,
    provenance: Vec<((usize, usize), usize)>,
}

impl CombinedGraph {
    /// Fails if two layers claim the same host edge.
    pub fn from_layers(n: usize, layers: &[Vec<(usize, usize)>]) -> Result<Self> {
        let mut provenance: Vec<((usize, usize), usize)> = layers
            .iter()
            .enumerate()
            .flat_map(|(i, es)| es.iter().map(move |&(u, v)| ((u.min(v), u.max(v)), i)))
            .collect();
        provenance.sort_unstable();
        if let Some(w) = provenance.windows(2).find(|w| w[0].0 == w[1].0) {
            let (u, v) = w[0].0;
            return Err(Error::MultiEdge(u, v));
        }
        let host = Graph::from_edges(n, provenance.iter().map(|&(e, _)| e))?;
        Ok(CombinedGraph { host, provenance })
    }

    pub fn layer_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.provenance
            .binary_search_by(|(e, _)| e.cmp(&key))
            .ok()
            .map(|i| self.provenance[i].1)
    }

    pub fn layer_count(&self) -> usize {
        self.provenance.iter().map(|&(_, l)| l + 1).max().unwrap_or(0)
    }

    pub fn layer_edges(&self, layer: usize) -> Vec<(usize, usize)> {
        self.provenance
            .iter()
            .filter(|&&(_, l)| l == layer)
            .map(|&(e, _)| e)
            .collect()
    }

    pub fn tagged_edges(&self) -> &[((usize, usize), usize)] {
        &self.provenance
    }
}

fn image_edges(g: &Graph, f: &[usize]) -> Vec<(usize, usize)> {
    g.edges().map(|(u, v)| (f[u], f[v])).collect()
}

/// Combined graph of a placement; errors if the images share an edge.
pub fn combine(g1: &Graph, g2: &Graph, placement: &Placement) -> Result<CombinedGraph> {
    CombinedGraph::from_layers(
        placement.n(),
        &[image_edges(g1, &placement.f1), image_edges(g2, &placement.f2)],
    )
}

fn check_same_order(g1: &Graph, g2: &Graph) -> Result<usize> {
    if g1.n() != g2.n() {
        return Err(Error::InfeasibleParameters(format!(
            "graphs have {} and {} vertices",
            g1.n(),
            g2.n()
        )));
    }
    Ok(g1.n())
}

/// Conflicting `G1` edges incident to `a` or `b` (edge `ab` counted once),
/// with `G2` placed by the identity.
fn local_conflicts(g1: &Graph, g2: &Graph, f1: &[usize], a: usize, b: usize) -> usize {
    let hits = |x: usize, skip: Option<usize>| {
        g1.neighbors(x)
            .iter()
            .filter(|&&y| Some(y) != skip && g2.has_edge(f1[x], f1[y]))
            .count()
    };
    hits(a, None) + hits(b, Some(a))
}

/// Conflict-elimination search from a random placement of `G1` (with `G2`
/// fixed by the identity): while some `G1` edge lands on a `G2` edge, swap
/// the image of one endpoint with another vertex whenever that strictly
/// lowers the number of conflicts. Succeeds whenever `2*d1*d2 < n`.
fn conflict_search(g1: &Graph, g2: &Graph, seed: u64, restarts: u64) -> Option<Placement> {
    let n = g1.n();
    for attempt in 0..restarts {
        let mut rng = seeded(sub_seed(seed, attempt));
        let mut f1: Vec<usize> = (0..n).collect();
        f1.shuffle(&mut rng);
        loop {
            let conflicted: Vec<usize> = g1
                .edges()
                .filter(|&(a, b)| g2.has_edge(f1[a], f1[b]))
                .map(|(a, _)| a)
                .collect();
            if conflicted.is_empty() {
                return Some(Placement { f1, f2: (0..n).collect() });
            }
            let improved = conflicted.iter().any(|&a| {
                (0..n).filter(|&b| b != a).any(|b| {
                    let before = local_conflicts(g1, g2, &f1, a, b);
                    f1.swap(a, b);
                    if local_conflicts(g1, g2, &f1, a, b) < before {
                        true
                    } else {
                        f1.swap(a, b);
                        false
                    }
                })
            });
            if !improved {
                break;
            }
        }
    }
    None
}

/// An edge-disjoint placement of `g1` and `g2`, guaranteed when
/// `2 * Δ(g1) * Δ(g2) < n`. Outside that range `PackingInfeasibleHint` is
/// returned without searching.
pub fn sauer_spencer_pack(g1: &Graph, g2: &Graph, seed: u64) -> Result<Placement> {
    let n = check_same_order(g1, g2)?;
    let (d1, d2) = (g1.max_degree(), g2.max_degree());
    if d1 == 0 || d2 == 0 {
        return Ok(Placement::identity(n));
    }
    if 2 * d1 * d2 >= n {
        return Err(Error::PackingInfeasibleHint { d1, d2, n });
    }
    conflict_search(g1, g2, seed, MAX_RESTARTS).ok_or_else(|| {
        Error::InternalInvariantViolation("conflict search stalled below 2*d1*d2 < n".into())
    })
}

/// One row of the improvement trace: distance from the target girth and the
/// number of shortest cycles before the swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Progress {
    pub deficit: usize,
    pub shortest_cycles: usize,
}

#[derive(Clone, Debug)]
pub struct Improvement {
    pub placement: Placement,
    pub trace: Vec<Progress>,
}

impl Improvement {
    /// Number of swaps performed.
    pub fn swaps(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}

/// Swap loop lifting the combined girth to `min{g, k}` (`g` infinite counts
/// as `n + 1`). Each step picks the canonical shortest cycle `C`, a vertex
/// `u` of `C` where the cycle passes from a `G1` edge to a `G2` edge, the
/// smallest vertex `v` at distance `> k` from `u`, and swaps the `G1`
/// preimages of `u` and `v`.
pub fn improve_girth(
    g1: &Graph,
    g2: &Graph,
    start: Placement,
    g: Length,
    k: usize,
) -> Result<Improvement> {
    let n = check_same_order(g1, g2)?;
    if !start.is_valid() || start.n() != n {
        return Err(Error::InfeasibleParameters("start is not a placement".into()));
    }
    let target = g.or_cap(n + 1).min(k);
    let mut placement = start;
    let mut inverse_f1 = vec![0; n];
    let mut trace: Vec<Progress> = Vec::new();
    loop {
        let combined = combine(g1, g2, &placement).map_err(|e| {
            Error::InternalInvariantViolation(format!("placement is not a packing: {e}"))
        })?;
        let (girth, count) = combined.host.girth_cycle_count();
        let m = girth.or_cap(n + 1);
        let step = Progress {
            deficit: target.saturating_sub(m),
            shortest_cycles: if m >= target { 0 } else { count },
        };
        if let Some(prev) = trace.last() {
            if step >= *prev {
                return Err(Error::InternalInvariantViolation(format!(
                    "swap did not make progress: {prev:?} -> {step:?}"
                )));
            }
        }
        trace.push(step);
        if m >= target {
            break;
        }
        let cycle = combined
            .host
            .shortest_cycle()
            .ok_or_else(|| Error::InternalInvariantViolation("girth finite but no cycle".into()))?;
        let c = cycle.vertices();
        let len = c.len();
        let u = (0..len)
            .find(|&i| {
                let before = combined.layer_of(c[(i + len - 1) % len], c[i]);
                let after = combined.layer_of(c[i], c[(i + 1) % len]);
                before != after
            })
            .map(|i| c[i])
            .ok_or_else(|| {
                Error::InternalInvariantViolation("shortest cycle lies in a single layer".into())
            })?;
        let near = combined.host.ball(u, k);
        let v = (0..n).find(|&w| !near[w]).ok_or_else(|| {
            Error::InternalInvariantViolation(format!("no vertex at distance > {k} from {u}"))
        })?;
        for (a, &img) in placement.f1.iter().enumerate() {
            inverse_f1[img] = a;
        }
        placement.swap_first(inverse_f1[u], inverse_f1[v]);
    }
    Ok(Improvement { placement, trace })
}

#[derive(Clone, Debug)]
pub struct PackOutcome {
    pub combined: CombinedGraph,
    pub placement: Placement,
    /// Lower bound on the girth of both inputs.
    pub g: Length,
    pub k: usize,
    /// `min{g, k}`, with infinite `g` read as `n + 1`.
    pub guaranteed: usize,
    pub girth: Length,
    pub trace: Vec<Progress>,
}

/// Packs `g1` and `g2` so that the combined graph has girth at least
/// `min{g, k}`. When `2*d1*d2 >= n` the bound is at most 1 and any
/// edge-disjoint placement found by the conflict search is returned.
pub fn pack_high_girth(g1: &Graph, g2: &Graph, seed: u64) -> Result<PackOutcome> {
    let n = check_same_order(g1, g2)?;
    let (d1, d2) = (g1.max_degree(), g2.max_degree());
    let g = g1.girth().min(g2.girth());
    let k = max_k_bound(d1, d2, n);
    let guaranteed = g.or_cap(n + 1).min(k);

    let (placement, trace) = if d1 == 0 || d2 == 0 {
        (Placement::identity(n), Vec::new())
    } else if 2 * d1 * d2 >= n {
        let p = conflict_search(g1, g2, seed, MAX_RESTARTS)
            .ok_or(Error::PackingInfeasibleHint { d1, d2, n })?;
        (p, Vec::new())
    } else {
        let start = sauer_spencer_pack(g1, g2, seed)?;
        let improved = improve_girth(g1, g2, start, g, k)?;
        (improved.placement, improved.trace)
    };
    let combined = combine(g1, g2, &placement)?;
    let girth = combined.host.girth();
    if girth.or_cap(n + 1) < guaranteed {
        return Err(Error::InternalInvariantViolation(format!(
            "combined girth {girth} below guarantee {guaranteed}"
        )));
    }
    Ok(PackOutcome {
        combined,
        placement,
        g,
        k,
        guaranteed,
        girth,
        trace,
    })
}

#[derive(Clone, Debug)]
pub struct HamiltonUnion {
    /// Layer `i` is the `i`-th Hamilton cycle.
    pub combined: CombinedGraph,
    /// Minimum of `n` and the `k` bound of every packing round.
    pub guaranteed: usize,
    pub girth: Length,
    pub round_bounds: Vec<usize>,
}

/// A `2d`-regular graph on `n` vertices decomposed into `d` Hamilton cycles,
/// built by repeatedly packing a fresh `C_n` against the union so far.
pub fn hamilton_union_high_girth(n: usize, d: usize, seed: u64) -> Result<HamiltonUnion> {
    if d == 0 || n < 3 {
        return Err(Error::InfeasibleParameters("need d >= 1 and n >= 3".into()));
    }
    if 8 * (d - 1) >= n {
        return Err(Error::InfeasibleParameters(format!(
            "2 * 2(d-1) * 2 < n fails for n={n}, d={d}"
        )));
    }
    let cycle = Graph::cycle(n);
    let mut layers: Vec<Vec<(usize, usize)>> = vec![cycle.edges().collect()];
    let mut union = cycle.clone();
    let mut round_bounds = Vec::new();
    let mut guaranteed = n;
    for round in 1..d {
        let out = pack_high_girth(&union, &cycle, sub_seed(seed, round as u64))?;
        round_bounds.push(out.k);
        guaranteed = guaranteed.min(out.guaranteed);
        let f1 = &out.placement.f1;
        for layer in layers.iter_mut() {
            for e in layer.iter_mut() {
                *e = (f1[e.0], f1[e.1]);
            }
        }
        layers.push(image_edges(&cycle, &out.placement.f2));
        union = out.combined.host;
    }
    let combined = CombinedGraph::from_layers(n, &layers)?;
    let girth = combined.host.girth();
    Ok(HamiltonUnion {
        combined,
        guaranteed,
        girth,
        round_bounds,
    })
}

/// True if `edges` form a single cycle through all `n` vertices.
pub fn is_hamilton_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() != n || n < 3 {
        return false;
    }
    let Ok(g) = Graph::from_edges(n, edges.iter().copied()) else {
        return false;
    };
    (0..n).all(|v| g.degree(v) == 2) && g.is_connected()
}
