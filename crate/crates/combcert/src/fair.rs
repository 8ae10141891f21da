//! Nearly-fair representation of an edge colouring inside a perfect
//! matching, Hamilton cycle or `T`-factor.
//!
//! Given an edge partition `P` of a host `G` (`K_{n,n}` or `K_n`) into `m`
//! colour classes and a copy `H` of a pattern graph with `f` edges, the
//! representation vector `x(H,P)` counts the edges of `H` in each class and
//! the fair share is `y = (f/g) x(G,P)` where `g = |E(G)|`. [`local_search`]
//! walks a uniform cover of width `s` with first-improvement descent on
//! `‖x − y‖₂²`; when it stops after exhausting the cover, `‖x − y‖₂` is at
//! most [`fairness_bound`]`(m, s)`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_rational::Ratio;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::seeded;

pub type Edge = (usize, usize);

fn norm((u, v): Edge) -> Edge {
    (u.min(v), u.max(v))
}

/// Colouring of every host edge by a class in `0..m`.
#[derive(Clone, Debug)]
pub struct EdgePartition {
    host: Graph,
    m: usize,
    colors: HashMap<Edge, usize>,
}

impl EdgePartition {
    pub fn new<I>(host: Graph, m: usize, colors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Edge, usize)>,
    {
        let mut map = HashMap::new();
        for (e, c) in colors {
            let e = norm(e);
            if !host.has_edge(e.0, e.1) {
                return Err(Error::EdgeNotInHost(e.0, e.1));
            }
            if c >= m {
                return Err(Error::MalformedPartition(format!("class {c} on edge {e:?} is not below m={m}")));
            }
            if map.insert(e, c).is_some() {
                return Err(Error::MalformedPartition(format!("edge {e:?} coloured twice")));
            }
        }
        if let Some(e) = host.edges().find(|e| !map.contains_key(e)) {
            return Err(Error::MalformedPartition(format!("edge {e:?} has no class")));
        }
        Ok(EdgePartition { host, m, colors: map })
    }

    /// Every host edge gets an independent uniform class.
    pub fn random<R: Rng>(host: Graph, m: usize, rng: &mut R) -> Self {
        let colors: HashMap<Edge, usize> = host.edges().map(|e| (e, rng.gen_range(0..m))).collect();
        EdgePartition { host, m, colors }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn classes(&self) -> usize {
        self.m
    }

    pub fn color(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&norm((u, v))).copied()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &c in self.colors.values() {
            sizes[c] += 1;
        }
        sizes
    }

    /// `(u, v, class)` triples in edge order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        self.host.edges().map(|(u, v)| (u, v, self.colors[&(u, v)])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepVector(pub Vec<usize>);

/// Per-class edge counts of the subgraph with edge list `edges`.
pub fn rep_vector(edges: &[Edge], p: &EdgePartition) -> Result<RepVector> {
    let mut x = vec![0; p.classes()];
    for &(u, v) in edges {
        let c = p.color(u, v).ok_or(Error::EdgeNotInHost(u.min(v), u.max(v)))?;
        x[c] += 1;
    }
    Ok(RepVector(x))
}

/// Fair share `y = (f/g) x(G,P)` as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetVector(pub Vec<Ratio<i64>>);

impl TargetVector {
    pub fn new(pattern_edges: usize, host_edges: usize, class_sizes: &[usize]) -> Self {
        TargetVector(
            class_sizes
                .iter()
                .map(|&c| Ratio::new((pattern_edges * c) as i64, host_edges as i64))
                .collect(),
        )
    }

    pub fn sum(&self) -> Ratio<i64> {
        self.0.iter().copied().sum()
    }
}

/// `(m-1) * 2^((m-2)/2) * s^m`; with `s = 2` this is `(m-1) * 2^((3m-2)/2)`.
pub fn fairness_bound(m: usize, s: usize) -> f64 {
    if m <= 1 {
        return 0.0;
    }
    (m as f64 - 1.0) * 2f64.powf((m as f64 - 2.0) / 2.0) * (s as f64).powi(m as i32)
}

/// A pattern graph `T` on vertices `0..t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub t: usize,
    pub edges: Vec<Edge>,
}

impl Pattern {
    pub fn new(name: &str, t: usize, edges: Vec<Edge>) -> Self {
        Pattern {
            name: name.to_string(),
            t,
            edges,
        }
    }

    pub fn k2() -> Self {
        Pattern::new("K2", 2, vec![(0, 1)])
    }

    pub fn k3() -> Self {
        Pattern::new("K3", 3, vec![(0, 1), (1, 2), (0, 2)])
    }

    /// Path on three vertices.
    pub fn p3() -> Self {
        Pattern::new("P3", 3, vec![(0, 1), (1, 2)])
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    /// Edges of `T` placed on the ordered vertex tuple `slots`.
    fn place(&self, slots: &[usize]) -> Vec<Edge> {
        self.edges.iter().map(|&(a, b)| norm((slots[a], slots[b]))).collect()
    }

    /// Position permutations giving pairwise distinct copies of `T` on a
    /// fixed `t`-set (one representative per automorphism coset).
    fn distinct_labelings(&self) -> Vec<Vec<usize>> {
        let mut seen: Vec<Vec<Edge>> = Vec::new();
        let mut reps = Vec::new();
        for perm in permutations(self.t) {
            let mut es = self.place(&perm);
            es.sort_unstable();
            if !seen.contains(&es) {
                seen.push(es);
                reps.push(perm);
            }
        }
        reps
    }
}

/// All permutations of `0..t` in lexicographic order.
pub fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; t], &mut out);
    out
}

fn combinations(p: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, p: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            rec(i + 1, p, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, p, t, &mut Vec::new(), &mut out);
    out
}

/// A copy of the pattern inside its host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Subgraph {
    /// `a_i b_{σ(i)}` in `K_{n,n}`, where `a_i = i` and `b_j = n + j`.
    Matching(Vec<usize>),
    /// Vertex order of a Hamilton cycle in `K_n`.
    Hamilton(Vec<usize>),
    /// Blocks of a `T`-factor; `blocks[i][j]` hosts vertex `j` of `T`.
    TFactor(Vec<Vec<usize>>),
}

/// One member of a cover, relative to the current copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Swap(usize, usize),
    TwoOpt(usize, usize),
    Relabel { block: usize, slots: Vec<usize> },
    Transversal { blocks: Vec<usize>, copies: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct Neighbor {
    pub mv: Move,
    /// `E(H') \ E(H)`.
    pub added: Vec<Edge>,
    /// `E(H) \ E(H')`.
    pub removed: Vec<Edge>,
}

impl Neighbor {
    /// `v_{H'}`: added minus removed edges per class.
    pub fn delta(&self, p: &EdgePartition) -> Vec<i64> {
        let mut v = vec![0i64; p.classes()];
        for &(a, b) in &self.added {
            v[p.color(a, b).expect("added edge in host")] += 1;
        }
        for &(a, b) in &self.removed {
            v[p.color(a, b).expect("removed edge in host")] -= 1;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverKind {
    BipartiteMatchingSwap,
    HamiltonTwoOpt,
    TFactor(Pattern),
}

/// A uniform cover of a pattern in `K_{n,n}` (matchings) or `K_n`.
#[derive(Clone, Debug)]
pub struct CoverNeighborhood {
    pub kind: CoverKind,
    pub n: usize,
    labelings: Vec<Vec<usize>>,
}

/// Two-swap cover of perfect matchings in `K_{n,n}`; width 2.
pub fn matching_neighborhood(n: usize) -> Result<CoverNeighborhood> {
    if n < 2 {
        return Err(Error::InfeasibleParameters("matching cover needs n >= 2".into()));
    }
    Ok(CoverNeighborhood {
        kind: CoverKind::BipartiteMatchingSwap,
        n,
        labelings: Vec::new(),
    })
}

/// Two-opt cover of Hamilton cycles in `K_n`; width 2, `n(n-3)/2` members.
pub fn hamilton_neighborhood(n: usize) -> Result<CoverNeighborhood> {
    if n < 5 {
        return Err(Error::InfeasibleParameters("Hamilton cover needs n >= 5".into()));
    }
    Ok(CoverNeighborhood {
        kind: CoverKind::HamiltonTwoOpt,
        n,
        labelings: Vec::new(),
    })
}

/// Relabel-one-block plus transversal-replacement cover of `T`-factors in
/// `K_n`; width at most `q t`. Requires `t | n`.
pub fn tfactor_neighborhood(n: usize, pattern: Pattern) -> Result<CoverNeighborhood> {
    if pattern.t == 0 || !n.is_multiple_of(pattern.t) {
        return Err(Error::InfeasibleParameters(format!("t={} does not divide n={n}", pattern.t)));
    }
    let labelings = pattern.distinct_labelings();
    Ok(CoverNeighborhood {
        kind: CoverKind::TFactor(pattern),
        n,
        labelings,
    })
}

impl CoverNeighborhood {
    pub fn width(&self) -> usize {
        match &self.kind {
            CoverKind::BipartiteMatchingSwap | CoverKind::HamiltonTwoOpt => 2,
            CoverKind::TFactor(t) => t.q() * t.t,
        }
    }

    pub fn host(&self) -> Graph {
        match self.kind {
            CoverKind::BipartiteMatchingSwap => Graph::complete_bipartite(self.n),
            _ => Graph::complete(self.n),
        }
    }

    /// Edge count `f` of the pattern copy.
    pub fn pattern_edges(&self) -> usize {
        match &self.kind {
            CoverKind::BipartiteMatchingSwap | CoverKind::HamiltonTwoOpt => self.n,
            CoverKind::TFactor(t) => t.q() * (self.n / t.t),
        }
    }

    /// Whether the enumerated family is a uniform cover. The transversal
    /// family needs at least `t` blocks; with fewer, edges between blocks
    /// are never covered and descent carries no guarantee.
    pub fn is_uniform(&self) -> bool {
        match &self.kind {
            CoverKind::TFactor(t) => self.n / t.t >= t.t,
            _ => true,
        }
    }

    pub fn start(&self) -> Subgraph {
        match &self.kind {
            CoverKind::BipartiteMatchingSwap => Subgraph::Matching((0..self.n).collect()),
            CoverKind::HamiltonTwoOpt => Subgraph::Hamilton((0..self.n).collect()),
            CoverKind::TFactor(t) => Subgraph::TFactor(
                (0..self.n / t.t).map(|b| (b * t.t..(b + 1) * t.t).collect()).collect(),
            ),
        }
    }

    pub fn edges(&self, h: &Subgraph) -> Vec<Edge> {
        match (h, &self.kind) {
            (Subgraph::Matching(sigma), _) => {
                sigma.iter().enumerate().map(|(i, &j)| (i, self.n + j)).collect()
            }
            (Subgraph::Hamilton(order), _) => {
                let k = order.len();
                (0..k).map(|i| norm((order[i], order[(i + 1) % k]))).collect()
            }
            (Subgraph::TFactor(blocks), CoverKind::TFactor(t)) => {
                blocks.iter().flat_map(|b| t.place(b)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Checks that `h` is a copy of the pattern this cover is for.
    pub fn is_valid(&self, h: &Subgraph) -> bool {
        let is_perm = |xs: &[usize], n: usize| {
            let mut seen = vec![false; n];
            xs.len() == n && xs.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        match (h, &self.kind) {
            (Subgraph::Matching(s), CoverKind::BipartiteMatchingSwap) => is_perm(s, self.n),
            (Subgraph::Hamilton(o), CoverKind::HamiltonTwoOpt) => is_perm(o, self.n),
            (Subgraph::TFactor(blocks), CoverKind::TFactor(t)) => {
                let flat: Vec<usize> = blocks.iter().flatten().copied().collect();
                blocks.iter().all(|b| b.len() == t.t) && is_perm(&flat, self.n)
            }
            _ => false,
        }
    }

    /// Visits every cover member in canonical order until `visit` breaks.
    pub fn for_each_neighbor<F>(&self, h: &Subgraph, mut visit: F)
    where
        F: FnMut(Neighbor) -> ControlFlow<()>,
    {
        let _ = self.walk(h, &mut visit);
    }

    fn walk<F>(&self, h: &Subgraph, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Neighbor) -> ControlFlow<()>,
    {
        match (h, &self.kind) {
            (Subgraph::Matching(sigma), _) => {
                let n = self.n;
                for i in 0..n {
                    for j in i + 1..n {
                        visit(Neighbor {
                            mv: Move::Swap(i, j),
                            added: vec![(i, n + sigma[j]), (j, n + sigma[i])],
                            removed: vec![(i, n + sigma[i]), (j, n + sigma[j])],
                        })?;
                    }
                }
            }
            (Subgraph::Hamilton(order), _) => {
                let n = order.len();
                for i in 0..n {
                    for j in i + 2..n {
                        if i == 0 && j == n - 1 {
                            continue;
                        }
                        let (a, b, c, d) = (order[i], order[i + 1], order[j], order[(j + 1) % n]);
                        visit(Neighbor {
                            mv: Move::TwoOpt(i, j),
                            added: vec![norm((a, c)), norm((b, d))],
                            removed: vec![norm((a, b)), norm((c, d))],
                        })?;
                    }
                }
            }
            (Subgraph::TFactor(blocks), CoverKind::TFactor(t)) => {
                self.walk_relabels(blocks, t, visit)?;
                self.walk_transversals(blocks, t, visit)?;
            }
            _ => {}
        }
        ControlFlow::Continue(())
    }

    fn walk_relabels<F>(&self, blocks: &[Vec<usize>], t: &Pattern, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Neighbor) -> ControlFlow<()>,
    {
        for (bi, block) in blocks.iter().enumerate() {
            let old = t.place(block);
            for lab in &self.labelings {
                let slots: Vec<usize> = lab.iter().map(|&j| block[j]).collect();
                let new = t.place(&slots);
                visit(Neighbor {
                    added: new.iter().filter(|e| !old.contains(e)).copied().collect(),
                    removed: old.iter().filter(|e| !new.contains(e)).copied().collect(),
                    mv: Move::Relabel { block: bi, slots },
                })?;
            }
        }
        ControlFlow::Continue(())
    }

    fn walk_transversals<F>(
        &self,
        blocks: &[Vec<usize>],
        t: &Pattern,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(Neighbor) -> ControlFlow<()>,
    {
        let tt = t.t;
        if blocks.len() < tt {
            return ControlFlow::Continue(());
        }
        let perms = permutations(tt);
        let labs = &self.labelings;
        for chosen in combinations(blocks.len(), tt) {
            let removed: Vec<Edge> = chosen.iter().flat_map(|&b| t.place(&blocks[b])).collect();
            // copy c takes vertex c of the first chosen block and vertex
            // sigma_j(c) of the j-th; then each copy gets a labelling.
            let mut sigma_idx = vec![0usize; tt - 1];
            loop {
                let members: Vec<Vec<usize>> = (0..tt)
                    .map(|c| {
                        let mut m = vec![blocks[chosen[0]][c]];
                        for j in 1..tt {
                            m.push(blocks[chosen[j]][perms[sigma_idx[j - 1]][c]]);
                        }
                        m
                    })
                    .collect();
                let mut lab_idx = vec![0usize; tt];
                loop {
                    let copies: Vec<Vec<usize>> = (0..tt)
                        .map(|c| labs[lab_idx[c]].iter().map(|&j| members[c][j]).collect())
                        .collect();
                    let added = copies.iter().flat_map(|s| t.place(s)).collect();
                    visit(Neighbor {
                        mv: Move::Transversal {
                            blocks: chosen.clone(),
                            copies,
                        },
                        added,
                        removed: removed.clone(),
                    })?;
                    if !odometer(&mut lab_idx, labs.len()) {
                        break;
                    }
                }
                if !odometer(&mut sigma_idx, perms.len()) {
                    break;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Number of cover members of `h` (enumerated).
    pub fn count(&self, h: &Subgraph) -> usize {
        let mut c = 0;
        self.for_each_neighbor(h, |_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    pub fn apply(&self, h: &Subgraph, mv: &Move) -> Subgraph {
        match (h, mv) {
            (Subgraph::Matching(s), Move::Swap(i, j)) => {
                let mut s = s.clone();
                s.swap(*i, *j);
                Subgraph::Matching(s)
            }
            (Subgraph::Hamilton(o), Move::TwoOpt(i, j)) => {
                let mut o = o.clone();
                o[i + 1..=*j].reverse();
                Subgraph::Hamilton(o)
            }
            (Subgraph::TFactor(b), Move::Relabel { block, slots }) => {
                let mut b = b.clone();
                b[*block] = slots.clone();
                Subgraph::TFactor(b)
            }
            (Subgraph::TFactor(b), Move::Transversal { blocks, copies }) => {
                let mut b = b.clone();
                for (&bi, copy) in blocks.iter().zip(copies) {
                    b[bi] = copy.clone();
                }
                Subgraph::TFactor(b)
            }
            _ => panic!("move {mv:?} does not apply to this subgraph"),
        }
    }
}

/// Mixed-radix increment; false once it wraps around.
fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Scan the whole cover each step; the outcome carries the bound.
    Exhaustive,
    /// Evaluate `per_step` uniformly sampled members each step. Stopping
    /// here certifies nothing.
    Sampled { per_step: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub subgraph: Subgraph,
    pub rep: RepVector,
    /// `g² ‖x − y‖₂²`, an integer.
    pub scaled_potential: i128,
    pub host_edges: usize,
    pub iterations: usize,
    /// True when the final scan covered the whole (uniform) cover.
    pub certified: bool,
    pub bound: f64,
    pub width: usize,
}

impl SearchOutcome {
    pub fn dist_sq(&self) -> Ratio<i128> {
        let g = self.host_edges as i128;
        Ratio::new(self.scaled_potential, g * g)
    }

    pub fn dist_l2(&self) -> f64 {
        (self.scaled_potential as f64).sqrt() / self.host_edges as f64
    }

    pub fn dist_inf(&self, target: &TargetVector) -> f64 {
        self.rep
            .0
            .iter()
            .zip(&target.0)
            .map(|(&x, y)| (Ratio::from_integer(x as i64) - y).abs())
            .max()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .unwrap_or(0.0)
    }
}

/// `Σ (g x_i − f X_i)²`.
fn scaled_potential(x: &[i64], class_sizes: &[usize], f: usize, g: usize) -> i128 {
    x.iter()
        .zip(class_sizes)
        .map(|(&xi, &ci)| {
            let d = g as i128 * xi as i128 - f as i128 * ci as i128;
            d * d
        })
        .sum()
}

/// First-improvement descent on `‖x(H,P) − y‖₂²` over the cover members of
/// the current copy, starting from `start`.
pub fn local_search(
    p: &EdgePartition,
    start: Subgraph,
    nb: &CoverNeighborhood,
    mode: SearchMode,
) -> Result<SearchOutcome> {
    let host = nb.host();
    if host.n() != p.host().n() || host.edge_count() != p.host().edge_count() {
        return Err(Error::InfeasibleParameters("partition host does not match the cover host".into()));
    }
    if !nb.is_valid(&start) {
        return Err(Error::InfeasibleParameters("start is not a copy of the pattern".into()));
    }
    let f = nb.pattern_edges();
    let g = host.edge_count();
    let sizes = p.class_sizes();
    let mut h = start;
    let mut x: Vec<i64> = rep_vector(&nb.edges(&h), p)?.0.iter().map(|&v| v as i64).collect();
    let mut phi = scaled_potential(&x, &sizes, f, g);
    let mut iterations = 0;
    let mut rng = match mode {
        SearchMode::Sampled { seed, .. } => Some(seeded(seed)),
        SearchMode::Exhaustive => None,
    };
    loop {
        let mut best: Option<(Move, Vec<i64>, i128)> = None;
        let consider = |cand: &Neighbor| {
            let v = cand.delta(p);
            let nx: Vec<i64> = x.iter().zip(&v).map(|(a, b)| a + b).collect();
            let nphi = scaled_potential(&nx, &sizes, f, g);
            (nphi < phi).then_some((nx, nphi))
        };
        match (mode, rng.as_mut()) {
            (SearchMode::Sampled { per_step, .. }, Some(rng)) => {
                let mut all = Vec::new();
                nb.for_each_neighbor(&h, |c| {
                    all.push(c);
                    ControlFlow::Continue(())
                });
                all.shuffle(rng);
                for cand in all.iter().take(per_step) {
                    if let Some((nx, nphi)) = consider(cand) {
                        best = Some((cand.mv.clone(), nx, nphi));
                        break;
                    }
                }
            }
            _ => nb.for_each_neighbor(&h, |cand| match consider(&cand) {
                Some((nx, nphi)) => {
                    best = Some((cand.mv, nx, nphi));
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }),
        }
        match best {
            Some((mv, nx, nphi)) => {
                h = nb.apply(&h, &mv);
                x = nx;
                phi = nphi;
                iterations += 1;
            }
            None => break,
        }
    }
    let certified = matches!(mode, SearchMode::Exhaustive) && nb.is_uniform();
    Ok(SearchOutcome {
        rep: RepVector(x.iter().map(|&v| v as usize).collect()),
        subgraph: h,
        scaled_potential: phi,
        host_edges: g,
        iterations,
        certified,
        bound: fairness_bound(p.classes(), nb.width()),
        width: nb.width(),
    })
}
