//! Brute-force reference answers for small instances. Nothing here calls
//! the fast paths in the other modules; graphs are read once into bitmask
//! adjacency and everything else is plain enumeration.

use serde::Serialize;

use crate::coalition::{CoalitionInstance, PartitionResult};
use crate::error::{Error, Result};
use crate::fair::EdgePartition;
use crate::graph::{Graph, Length};

/// Environment variable overriding the oracle budget, e.g.
/// `girth=10,gamma=16`.
pub const BUDGET_ENV: &str = "COMBCERT_ORACLE_BUDGET";

/// Size limits checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub girth: usize,
    pub gamma: usize,
    pub matching: usize,
    pub hamilton: usize,
    pub partition: usize,
}

impl OracleBudget {
    /// Limits no override can raise.
    pub const HARD: OracleBudget = OracleBudget {
        girth: 16,
        gamma: 24,
        matching: 8,
        hamilton: 10,
        partition: 12,
    };

    /// Parses `key=value` pairs separated by commas; values are clamped to
    /// [`OracleBudget::HARD`].
    pub fn with_overrides(mut self, overrides: &str) -> Result<Self> {
        for (i, item) in overrides.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: format!("{msg} in budget item {item:?}"),
            };
            let (key, value) = item.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let v: usize = value.trim().parse().map_err(|_| bad("bad number"))?;
            let (slot, cap) = match key.trim() {
                "girth" => (&mut self.girth, Self::HARD.girth),
                "gamma" => (&mut self.gamma, Self::HARD.gamma),
                "matching" => (&mut self.matching, Self::HARD.matching),
                "hamilton" => (&mut self.hamilton, Self::HARD.hamilton),
                "partition" => (&mut self.partition, Self::HARD.partition),
                _ => return Err(bad("unknown key")),
            };
            *slot = v.min(cap);
        }
        Ok(self)
    }

    /// Default budget with the environment override applied, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(overrides) => OracleBudget::default().with_overrides(&overrides),
            Err(_) => Ok(OracleBudget::default()),
        }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            girth: 12,
            gamma: 20,
            matching: 6,
            hamilton: 8,
            partition: 10,
        }
    }
}

fn too_large(what: &str, n: usize, cap: usize) -> Error {
    Error::TooLarge(format!("{what} oracle limited to n <= {cap}, got {n}"))
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Girth by enumerating simple paths from each start vertex through larger
/// vertices only.
pub fn exact_girth(g: &Graph, budget: &OracleBudget) -> Result<Length> {
    let n = g.n();
    if n > budget.girth {
        return Err(too_large("girth", n, budget.girth));
    }
    let adj = masks(g);
    fn walk(adj: &[u32], start: usize, v: usize, used: u32, len: usize, best: &mut usize) {
        if len >= *best {
            return;
        }
        let mut next = adj[v];
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if w == start && len >= 3 {
                *best = (*best).min(len);
            } else if w > start && used >> w & 1 == 0 {
                walk(adj, start, w, used | 1 << w, len + 1, best);
            }
        }
    }
    let mut best = usize::MAX;
    for s in 0..n {
        walk(&adj, s, s, 1 << s, 1, &mut best);
    }
    Ok(if best == usize::MAX { Length::Infinite } else { Length::Finite(best) })
}

fn closed(adj: &[u32]) -> Vec<u32> {
    adj.iter().enumerate().map(|(v, &m)| m | 1 << v).collect()
}

fn dominates(closed: &[u32], set: u32, full: u32) -> bool {
    let mut cov = 0u32;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        cov |= closed[v];
    }
    cov == full
}

fn connected_within(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return false;
    }
    let mut seen = 1u32 << set.trailing_zeros();
    loop {
        let mut grow = seen;
        let mut s = seen;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            grow |= adj[v] & set;
        }
        if grow == seen {
            return seen == set;
        }
        seen = grow;
    }
}

/// Smallest `t` for which some `t`-subset satisfies `ok`, with the subset.
fn smallest_subset(n: usize, ok: impl Fn(u32) -> bool) -> Option<(usize, u32)> {
    for t in 1..=n {
        // Gosper's hack over t-subsets of n bits
        let mut s: u64 = (1u64 << t) - 1;
        while s < 1u64 << n {
            if ok(s as u32) {
                return Some((t, s as u32));
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    None
}

fn bits(set: u32) -> Vec<usize> {
    (0..32).filter(|&v| set >> v & 1 == 1).collect()
}

/// Domination number with a minimum dominating set.
pub fn exact_gamma(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > budget.gamma {
        return Err(too_large("domination", n, budget.gamma));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let cl = closed(&masks(g));
    let full = ((1u64 << n) - 1) as u32;
    let (t, set) = smallest_subset(n, |s| dominates(&cl, s, full)).expect("V dominates");
    Ok((t, bits(set)))
}

/// Connected domination number with a minimum connected dominating set.
pub fn exact_gamma_c(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > budget.gamma {
        return Err(too_large("connected domination", n, budget.gamma));
    }
    let adj = masks(g);
    let full = ((1u64 << n) - 1) as u32;
    if n == 0 || !connected_within(&adj, full) {
        return Err(Error::HostDisconnected);
    }
    let cl = closed(&adj);
    let (t, set) =
        smallest_subset(n, |s| dominates(&cl, s, full) && connected_within(&adj, s)).expect("V works");
    Ok((t, bits(set)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FairPattern {
    /// Perfect matchings of `K_{n,n}` with sides `0..n` and `n..2n`.
    Matching,
    /// Hamilton cycles of `K_n`.
    Hamilton,
}

#[derive(Clone, Debug, Serialize)]
pub struct FairOptimum {
    /// `min Σ (g x_i − f X_i)²` over all copies.
    pub scaled_potential: i128,
    pub dist_l2: f64,
    /// Matching: `σ` with edges `i, n+σ(i)`; Hamilton: vertex order.
    pub witness: Vec<usize>,
}

/// Lexicographic successor of a permutation; false after the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot has a successor");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Best possible `‖x − y‖₂` over every copy of the pattern.
pub fn exact_fair_optimum(p: &EdgePartition, kind: FairPattern, budget: &OracleBudget) -> Result<FairOptimum> {
    let host = p.host();
    let m = p.classes();
    let g = host.edge_count() as i128;
    let mut sizes = vec![0i128; m];
    for (_, _, c) in p.triples() {
        sizes[c] += 1;
    }
    let (n, mut perm) = match kind {
        FairPattern::Matching => {
            let n = host.n() / 2;
            if n > budget.matching {
                return Err(too_large("matching", n, budget.matching));
            }
            (n, (0..n).collect::<Vec<_>>())
        }
        FairPattern::Hamilton => {
            let n = host.n();
            if n > budget.hamilton {
                return Err(too_large("Hamilton", n, budget.hamilton));
            }
            if n < 3 {
                return Err(Error::InfeasibleParameters("Hamilton cycles need n >= 3".into()));
            }
            // vertex 0 first; the rest permuted
            (n, (1..n).collect::<Vec<_>>())
        }
    };
    let f = n as i128;
    let mut best: Option<(i128, Vec<usize>)> = None;
    loop {
        let mut x = vec![0i128; m];
        match kind {
            FairPattern::Matching => {
                for (i, &j) in perm.iter().enumerate() {
                    x[p.color(i, n + j).ok_or(Error::EdgeNotInHost(i, n + j))?] += 1;
                }
            }
            FairPattern::Hamilton => {
                let order: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
                for i in 0..n {
                    let (a, b) = (order[i], order[(i + 1) % n]);
                    x[p.color(a, b).ok_or(Error::EdgeNotInHost(a, b))?] += 1;
                }
            }
        }
        let phi: i128 = x.iter().zip(&sizes).map(|(&xi, &ci)| (g * xi - f * ci).pow(2)).sum();
        if best.as_ref().is_none_or(|(b, _)| phi < *b) {
            let witness = match kind {
                FairPattern::Matching => perm.clone(),
                FairPattern::Hamilton => std::iter::once(0).chain(perm.iter().copied()).collect(),
            };
            best = Some((phi, witness));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (phi, witness) = best.expect("at least one copy");
    Ok(FairOptimum {
        scaled_potential: phi,
        dist_l2: (phi as f64).sqrt() / g as f64,
        witness,
    })
}

/// Every set partition of the children in which each child has a listed
/// friend in its own part, in restricted-growth order.
pub fn all_valid_partitions(inst: &CoalitionInstance, budget: &OracleBudget) -> Result<Vec<PartitionResult>> {
    let n = inst.n;
    if n > budget.partition {
        return Err(too_large("partition", n, budget.partition));
    }
    let lists: Vec<u32> = (0..n)
        .map(|i| {
            inst.list(i)
                .map(|s| s.iter().fold(0u32, |m, &j| m | 1 << j))
                .ok_or_else(|| Error::InfeasibleParameters(format!("child {i} has no list")))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    // iterate restricted growth strings as an odometer
    loop {
        let mut part_masks = vec![0u32; n];
        for (v, &l) in labels.iter().enumerate() {
            part_masks[l] |= 1 << v;
        }
        if (0..n).all(|i| lists[i] & part_masks[labels[i]] != 0) {
            let count = labels.iter().max().map_or(0, |m| m + 1);
            out.push(PartitionResult {
                parts: part_masks[..count].iter().map(|&m| bits(m)).collect(),
            });
        }
        let Some(i) = (1..n).rev().find(|&i| labels[i] <= maxes[i - 1]) else {
            break;
        };
        labels[i] += 1;
        maxes[i] = maxes[i - 1].max(labels[i]);
        for j in i + 1..n {
            labels[j] = 0;
            maxes[j] = maxes[i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn girth_examples() {
        let b = OracleBudget::default();
        assert_eq!(exact_girth(&Graph::complete(4), &b).unwrap(), Length::Finite(3));
        assert_eq!(exact_girth(&Graph::petersen(), &b).unwrap(), Length::Finite(5));
        assert_eq!(exact_girth(&Graph::cycle(9), &b).unwrap(), Length::Finite(9));
        assert_eq!(exact_girth(&Graph::path(6), &b).unwrap(), Length::Infinite);
        assert!(matches!(exact_girth(&Graph::cycle(13), &b), Err(Error::TooLarge(_))));
    }

    #[test]
    fn domination_examples() {
        let b = OracleBudget::default();
        assert_eq!(exact_gamma(&Graph::cycle(6), &b).unwrap().0, 2);
        assert_eq!(exact_gamma_c(&Graph::cycle(6), &b).unwrap().0, 4);
        assert_eq!(exact_gamma(&Graph::complete(7), &b).unwrap().0, 1);
        assert_eq!(exact_gamma_c(&Graph::complete(7), &b).unwrap().0, 1);
        assert_eq!(exact_gamma_c(&Graph::empty(3), &b), Err(Error::HostDisconnected));
    }

    #[test]
    fn fair_optimum_examples() {
        let b = OracleBudget::default();
        let p = EdgePartition::new(
            Graph::complete_bipartite(2),
            2,
            [((0, 2), 0), ((1, 3), 0), ((0, 3), 1), ((1, 2), 1)],
        )
        .unwrap();
        let opt = exact_fair_optimum(&p, FairPattern::Matching, &b).unwrap();
        assert!((opt.dist_l2 - 2f64.sqrt()).abs() < 1e-12);
        let p = EdgePartition::random(Graph::complete(6), 1, &mut seeded(0));
        assert_eq!(exact_fair_optimum(&p, FairPattern::Hamilton, &b).unwrap().scaled_potential, 0);
    }

    #[test]
    fn partitions_examples() {
        let b = OracleBudget::default();
        let inst = CoalitionInstance::with_coalition(3, 1, vec![vec![1], vec![2], vec![0]]).unwrap();
        let all = all_valid_partitions(&inst, &b).unwrap();
        assert_eq!(all, vec![PartitionResult { parts: vec![vec![0, 1, 2]] }]);
    }

    #[test]
    fn budget_overrides() {
        let b = OracleBudget::default().with_overrides("girth=14, gamma=99").unwrap();
        assert_eq!(b.girth, 14);
        assert_eq!(b.gamma, OracleBudget::HARD.gamma);
        assert!(OracleBudget::default().with_overrides("nope=3").is_err());
    }
}
