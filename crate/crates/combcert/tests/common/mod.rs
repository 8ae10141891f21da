//! Checkers written from the definitions, sharing no code with the library.

use std::collections::VecDeque;

use combcert::Graph;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Girth by a BFS from every vertex; `None` for a forest.
pub fn bfs_girth(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let adj = adjacency(n, edges);
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub fn dominates(g: &Graph, set: &[usize]) -> bool {
    let mut hit = vec![false; g.n()];
    for &v in set {
        hit[v] = true;
        for &w in g.neighbors(v) {
            hit[w] = true;
        }
    }
    hit.into_iter().all(|b| b)
}

pub fn induces_connected(g: &Graph, set: &[usize]) -> bool {
    let Some(&first) = set.first() else { return false };
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    seen[first] = true;
    let mut stack = vec![first];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    let mut distinct = set.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    count == distinct.len()
}

/// Every child is in exactly one part and shares it with someone on its list.
pub fn partition_valid(n: usize, lists: &[Option<Vec<usize>>], parts: &[Vec<usize>]) -> bool {
    let mut label = vec![usize::MAX; n];
    for (p, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= n || label[v] != usize::MAX {
                return false;
            }
            label[v] = p;
        }
    }
    if label.contains(&usize::MAX) {
        return false;
    }
    (0..n).all(|i| match &lists[i] {
        Some(s) => s.iter().any(|&j| j != i && label[j] == label[i]),
        None => false,
    })
}
