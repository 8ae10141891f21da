//! Simple undirected graphs and digraphs on dense vertex indices `0..n`,
//! with the girth, distance, component and domination queries shared by the
//! rest of the crate.

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A length or distance that may be infinite (forests have infinite girth,
/// unreachable vertices infinite distance). `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    /// Replace infinity by `cap`.
    pub fn or_cap(self, cap: usize) -> usize {
        self.finite().unwrap_or(cap)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range
    /// endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MultiEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edges: count })
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{n,n}` with sides `0..n` and `n..2n`.
    pub fn complete_bipartite(n: usize) -> Self {
        Graph::from_edges(2 * n, (0..n).flat_map(|a| (0..n).map(move |b| (a, n + b)))).unwrap()
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Length> {
        let mut dist = vec![Length::Infinite; self.n()];
        dist[source] = Length::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].or_cap(0);
            for &w in &self.adj[u] {
                if dist[w] == Length::Infinite {
                    dist[w] = Length::Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices within distance `radius` of `source`, flagged in a bitmap.
    pub fn ball(&self, source: usize, radius: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[source] = true;
        let mut frontier = vec![source];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// Components as sorted vertex lists, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.induced_components(&vec![true; self.n()])
    }

    /// Components of the subgraph induced on `members`.
    pub fn induced_components(&self, members: &[bool]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut parts = Vec::new();
        for s in 0..self.n() {
            if !members[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut part = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < part.len() {
                let u = part[i];
                i += 1;
                for &w in &self.adj[u] {
                    if members[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        part.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut covered = vec![false; self.n()];
        for &s in set {
            covered[s] = true;
            for &w in &self.adj[s] {
                covered[w] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Dominating and inducing a connected subgraph.
    pub fn is_connected_dominating(&self, set: &[usize]) -> bool {
        if set.is_empty() || !self.is_dominating(set) {
            return false;
        }
        let mut members = vec![false; self.n()];
        for &s in set {
            members[s] = true;
        }
        self.induced_components(&members).len() == 1
    }

    pub fn induced_subgraph(&self, members: &[bool]) -> Graph {
        let edges = self.edges().filter(|&(u, v)| members[u] && members[v]);
        Graph::from_edges(self.n(), edges).unwrap()
    }

    /// Length of a shortest cycle; BFS from every root, cut off once the
    /// search depth cannot beat the best cycle found so far.
    pub fn girth(&self) -> Length {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched = Vec::new();
        for root in 0..n {
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            if best == 3 {
                break;
            }
        }
        if best == usize::MAX {
            Length::Infinite
        } else {
            Length::Finite(best)
        }
    }

    /// A shortest cycle, canonical under: smallest minimum vertex first,
    /// then lexicographically smallest vertex sequence starting there.
    pub fn shortest_cycle(&self) -> Option<Cycle> {
        let len = self.girth().finite()?;
        (0..self.n()).find_map(|s| self.lex_min_cycle_through(s, len))
    }

    /// Lexicographically smallest cycle of exactly `len` vertices whose
    /// minimum vertex is `s`.
    fn lex_min_cycle_through(&self, s: usize, len: usize) -> Option<Cycle> {
        let half = len / 2;
        // distances to s inside the subgraph on vertices >= s, up to depth half
        let mut dist = std::collections::HashMap::new();
        dist.insert(s, 0usize);
        let mut frontier = vec![s];
        for d in 1..=half {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if w >= s && !dist.contains_key(&w) {
                        dist.insert(w, d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let reachable = |v: usize, budget: usize| match dist.get(&v) {
            Some(&d) => d <= budget,
            None => budget > half,
        };
        let mut path = vec![s];
        let mut on_path = vec![false; self.n()];
        on_path[s] = true;
        if self.extend_cycle(s, len, &mut path, &mut on_path, &reachable) {
            Some(Cycle(path))
        } else {
            None
        }
    }

    fn extend_cycle(
        &self,
        s: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        reachable: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == len {
            // closing edge; orientation rule: second vertex < last vertex
            return self.has_edge(last, s) && path[1] < last;
        }
        let remaining = len - path.len();
        for &w in &self.adj[last] {
            if w <= s || on_path[w] || !reachable(w, remaining) {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            if self.extend_cycle(s, len, path, on_path, reachable) {
                return true;
            }
            on_path[w] = false;
            path.pop();
        }
        false
    }

    /// Number of cycles whose length equals the girth (0 for forests).
    ///
    /// Within radius below half the girth every BFS ball is a tree, so the
    /// cycles through a root are read off the last BFS layer: for odd girth
    /// `2r+1` one per edge inside layer `r`, for even girth `2r` one per pair
    /// of layer-`(r-1)` neighbours of a layer-`r` vertex. Each cycle is seen
    /// once from each of its vertices.
    pub fn girth_cycle_count(&self) -> (Length, usize) {
        let girth = self.girth();
        let Some(g) = girth.finite() else {
            return (girth, 0);
        };
        let r = g / 2;
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut total = 0usize;
        for root in 0..n {
            let mut layers: Vec<Vec<usize>> = vec![vec![root]];
            dist[root] = 0;
            for d in 1..=r {
                let mut next = Vec::new();
                for &u in &layers[d - 1] {
                    for &w in &self.adj[u] {
                        if dist[w] == usize::MAX {
                            dist[w] = d;
                            next.push(w);
                        }
                    }
                }
                layers.push(next);
            }
            if g % 2 == 1 {
                for &u in &layers[r] {
                    total += self.adj[u].iter().filter(|&&w| w > u && dist[w] == r).count();
                }
            } else {
                for &u in &layers[r] {
                    let c = self.adj[u].iter().filter(|&&w| dist[w] == r - 1).count();
                    total += c * c.saturating_sub(1) / 2;
                }
            }
            for layer in &layers {
                for &v in layer {
                    dist[v] = usize::MAX;
                }
            }
        }
        (girth, total / g)
    }
}

/// A cycle given by its vertex sequence; the closing edge runs from the last
/// vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle(pub Vec<usize>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Consecutive vertex pairs including the closing pair.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    fn distinct(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.len() >= 3 && self.distinct() && self.steps().all(|(u, v)| g.has_edge(u, v))
    }

    pub fn is_valid_directed_in(&self, d: &Digraph) -> bool {
        self.len() >= 2 && self.distinct() && self.steps().all(|(u, v)| d.has_arc(u, v))
    }
}

/// Simple digraph with sorted out-neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out[u].push(v);
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MultiEdge(u, w[0]));
            }
        }
        Ok(Digraph { out })
    }

    /// Digraph with arcs `i -> j` for every `j` in `lists[i]`.
    pub fn from_out_lists(lists: &[Vec<usize>]) -> Result<Self> {
        Digraph::from_arcs(
            lists.len(),
            lists.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&j| (i, j))),
        )
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Some directed cycle inside the sub-digraph induced on `members`.
    pub fn find_cycle_within(&self, members: &[bool]) -> Option<Cycle> {
        // 0 = unvisited, 1 = on stack, 2 = finished
        let mut state = vec![0u8; self.n()];
        let mut stack_pos = vec![usize::MAX; self.n()];
        for root in 0..self.n() {
            if !members[root] || state[root] != 0 {
                continue;
            }
            let mut path = vec![root];
            let mut iters = vec![0usize];
            state[root] = 1;
            stack_pos[root] = 0;
            while let Some(&u) = path.last() {
                let i = iters.last_mut().unwrap();
                if let Some(&w) = self.out[u].get(*i) {
                    *i += 1;
                    if !members[w] {
                        continue;
                    }
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack_pos[w] = path.len();
                            path.push(w);
                            iters.push(0);
                        }
                        1 => return Some(Cycle(path[stack_pos[w]..].to_vec())),
                        _ => {}
                    }
                } else {
                    state[u] = 2;
                    path.pop();
                    iters.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic_within(&self, members: &[bool]) -> bool {
        self.find_cycle_within(members).is_none()
    }
}
