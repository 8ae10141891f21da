//! The class-assignment game: every child `i` lists a set `S_i` of `k`
//! friends, and a partition into classes is valid when every child has a
//! listed friend in its own class. A coalition `R = {0..r-1}` succeeds if
//! its members can pick lists that force them into one class however the
//! others choose and whichever valid partition is used. This holds for
//! `k <= 2` and fails for every `k >= 3`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Digraph};
use crate::rng::{seeded, sub_seed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalitionInstance {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// `choices[i]` is `S_i`, or `None` while still to be completed.
    pub choices: Vec<Option<Vec<usize>>>,
}

impl CoalitionInstance {
    pub fn new(n: usize, k: usize, r: usize, choices: Vec<Option<Vec<usize>>>) -> Result<Self> {
        if n < k + 1 {
            return Err(Error::InfeasibleParameters(format!("need n >= k+1, got n={n}, k={k}")));
        }
        if r > n || r == 0 {
            return Err(Error::InfeasibleParameters(format!("need 1 <= r <= n, got r={r}, n={n}")));
        }
        if choices.len() != n {
            return Err(Error::InfeasibleParameters(format!("{} choice lists for n={n}", choices.len())));
        }
        for (i, s) in choices.iter().enumerate() {
            if let Some(s) = s {
                check_list(i, s, n, k)?;
            }
        }
        Ok(CoalitionInstance { n, k, r, choices })
    }

    /// Instance with the coalition's lists set and everyone else open.
    pub fn with_coalition(n: usize, k: usize, lists: Vec<Vec<usize>>) -> Result<Self> {
        let r = lists.len();
        let mut choices: Vec<Option<Vec<usize>>> = lists.into_iter().map(Some).collect();
        choices.resize(n, None);
        CoalitionInstance::new(n, k, r, choices)
    }

    pub fn is_complete(&self) -> bool {
        self.choices.iter().all(Option::is_some)
    }

    pub fn list(&self, i: usize) -> Option<&[usize]> {
        self.choices[i].as_deref()
    }

    pub fn digraph(&self) -> Result<Digraph> {
        let lists: Vec<Vec<usize>> = self
            .choices
            .iter()
            .enumerate()
            .map(|(i, s)| s.clone().ok_or_else(|| incomplete(i)))
            .collect::<Result<_>>()?;
        Digraph::from_out_lists(&lists)
    }
}

fn incomplete(i: usize) -> Error {
    Error::InfeasibleParameters(format!("child {i} has no list"))
}

fn check_list(i: usize, s: &[usize], n: usize, k: usize) -> Result<()> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k || s.len() != k {
        return Err(Error::InfeasibleParameters(format!("list of child {i} must hold {k} distinct children")));
    }
    if s.contains(&i) {
        return Err(Error::InfeasibleParameters(format!("child {i} lists itself")));
    }
    if let Some(&j) = s.iter().find(|&&j| j >= n) {
        return Err(Error::VertexOutOfRange { vertex: j, n });
    }
    Ok(())
}

/// Lists for `R = {0..r-1}` that make it a successful coalition: the cyclic
/// successor for `k = 1`; for `k = 2`, `S_0 = {1,2}`, `S_1 = {0,2}` and
/// `S_i = {0,1}` for the remaining members.
pub fn coalition_construct(k: usize, r: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if r < 2 || n < k + 1 || n < r {
        return Err(Error::InfeasibleParameters(format!("need r >= 2, n >= k+1, n >= r; got k={k}, r={r}, n={n}")));
    }
    match k {
        1 => Ok((0..r).map(|i| vec![(i + 1) % r]).collect()),
        2 => {
            if n < 3 {
                return Err(Error::InfeasibleParameters("k = 2 needs n >= 3".into()));
            }
            let mut lists = vec![vec![1, 2], vec![0, 2]];
            lists.extend((2..r).map(|_| vec![0, 1]));
            Ok(lists)
        }
        _ => Err(Error::InfeasibleParameters(format!("no successful coalition exists for k={k}"))),
    }
}

/// Gives every child outside the coalition `S_j = {j-1, ..., j-k}`, so
/// the digraph on non-members is acyclic. Existing non-member lists are
/// replaced.
pub fn acyclic_completion(inst: &CoalitionInstance) -> Result<CoalitionInstance> {
    if inst.r < inst.k {
        return Err(Error::InfeasibleParameters(format!("completion needs r >= k, got r={}, k={}", inst.r, inst.k)));
    }
    let mut out = inst.clone();
    for j in inst.r..inst.n {
        out.choices[j] = Some((1..=inst.k).map(|d| j - d).collect());
    }
    for i in 0..inst.r {
        if out.choices[i].is_none() {
            return Err(incomplete(i));
        }
    }
    Ok(out)
}

/// Fills only the missing lists with the acyclic completion.
fn fill_missing(inst: &CoalitionInstance) -> Result<CoalitionInstance> {
    let mut out = inst.clone();
    for j in 0..inst.n {
        if out.choices[j].is_none() {
            if j < inst.k {
                return Err(incomplete(j));
            }
            out.choices[j] = Some((1..=inst.k).map(|d| j - d).collect());
        }
    }
    Ok(out)
}

/// Directed cycles starting at their smallest vertex, of length exactly
/// `len`, in lexicographic order; `visit` may stop the walk.
fn cycles_of_length(d: &Digraph, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(d: &Digraph, path: &mut Vec<usize>, on: &mut [bool], len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let start = path[0];
        let u = *path.last().expect("non-empty path");
        if path.len() == len {
            return d.has_arc(u, start) && visit(path);
        }
        for &w in d.out_neighbors(u) {
            if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                let stop = rec(d, path, on, len, visit);
                path.pop();
                on[w] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    let mut on = vec![false; d.n()];
    for s in 0..d.n() {
        on[s] = true;
        let stop = rec(d, &mut vec![s], &mut on, len, visit);
        on[s] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Two vertex-disjoint directed cycles. Cycles are tried by increasing
/// length and the rest of the digraph is searched for a second one.
pub fn find_two_disjoint_cycles(d: &Digraph) -> Result<(Cycle, Cycle)> {
    let n = d.n();
    let mut found = None;
    for len in 2..=n {
        let stopped = cycles_of_length(d, len, &mut |c| {
            let mut rest = vec![true; n];
            for &v in c {
                rest[v] = false;
            }
            if let Some(other) = d.find_cycle_within(&rest) {
                found = Some((Cycle(c.to_vec()), other));
                true
            } else {
                false
            }
        });
        if stopped {
            break;
        }
    }
    found.ok_or_else(|| Error::NotFound("no two vertex-disjoint cycles".into()))
}

/// A partition of the children into classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionResult {
    pub parts: Vec<Vec<usize>>,
}

impl PartitionResult {
    fn labels(&self, n: usize) -> Result<Vec<usize>> {
        let mut label = vec![usize::MAX; n];
        for (p, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::MalformedPartition(format!("part {p} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::MalformedPartition(format!("child {v} out of range")));
                }
                if label[v] != usize::MAX {
                    return Err(Error::MalformedPartition(format!("child {v} in two parts")));
                }
                label[v] = p;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedPartition(format!("child {v} in no part")));
        }
        Ok(label)
    }

    /// Whether some part holds members of `R = {0..r-1}` and another does too.
    pub fn splits(&self, r: usize) -> bool {
        self.parts.iter().filter(|p| p.iter().any(|&v| v < r)).count() >= 2
    }
}

/// Every child has a listed friend in its own part.
pub fn verify_partition(inst: &CoalitionInstance, pr: &PartitionResult) -> Result<bool> {
    let label = pr.labels(inst.n)?;
    for i in 0..inst.n {
        let s = inst.list(i).ok_or_else(|| incomplete(i))?;
        if !s.iter().any(|&j| label[j] == label[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct BreakResult {
    /// The instance with every non-member list filled in.
    pub instance: CoalitionInstance,
    pub partition: PartitionResult,
    /// The two disjoint cycles, when the cycle argument was used.
    pub cycles: Option<(Cycle, Cycle)>,
}

/// A valid two-class partition splitting the coalition, for `k >= 3`.
///
/// With `r >= k` the non-members get an acyclic completion, so two disjoint
/// cycles both meet `R`; each grows greedily into a class. With `r < k` a
/// random two-colouring that splits `R` and gives every member a friend of
/// its own colour is searched for, and each non-member then lists a member
/// of its own colour.
pub fn break_coalition(inst: &CoalitionInstance, seed: u64) -> Result<BreakResult> {
    if inst.k < 3 {
        return Err(Error::InfeasibleParameters(format!("k={} admits successful coalitions", inst.k)));
    }
    if inst.r < 2 {
        return Err(Error::InfeasibleParameters("a coalition needs r >= 2".into()));
    }
    if inst.r >= inst.k {
        break_by_cycles(inst)
    } else {
        break_by_colouring(inst, seed)
    }
}

fn break_by_cycles(inst: &CoalitionInstance) -> Result<BreakResult> {
    let full = acyclic_completion(inst)?;
    let d = full.digraph()?;
    let (a, b) = find_two_disjoint_cycles(&d)?;
    let n = inst.n;
    // 0 = unassigned, 1 = A', 2 = B'
    let mut side = vec![0u8; n];
    for &v in a.vertices() {
        side[v] = 1;
    }
    for &v in b.vertices() {
        side[v] = 2;
    }
    loop {
        let mut changed = false;
        for v in 0..n {
            if side[v] != 0 {
                continue;
            }
            let outs = d.out_neighbors(v);
            if outs.iter().any(|&w| side[w] == 1) {
                side[v] = 1;
                changed = true;
            } else if outs.iter().any(|&w| side[w] == 2) {
                side[v] = 2;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for s in side.iter_mut().filter(|s| **s == 0) {
        *s = 1;
    }
    let parts = [1u8, 2]
        .iter()
        .map(|&t| (0..n).filter(|&v| side[v] == t).collect())
        .collect();
    let partition = PartitionResult { parts };
    check_break(&full, &partition)?;
    Ok(BreakResult {
        instance: full,
        partition,
        cycles: Some((a, b)),
    })
}

/// Colouring good for the coalition: `R` uses both colours and each member
/// has a listed friend of its own colour.
fn good_colouring(inst: &CoalitionInstance, colour: &[bool]) -> Result<bool> {
    let r = inst.r;
    if (0..r).all(|i| colour[i] == colour[0]) {
        return Ok(false);
    }
    for i in 0..r {
        let s = inst.list(i).ok_or_else(|| incomplete(i))?;
        if !s.iter().any(|&j| colour[j] == colour[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

const MAX_COLOURINGS: u64 = 1 << 16;

fn break_by_colouring(inst: &CoalitionInstance, seed: u64) -> Result<BreakResult> {
    let n = inst.n;
    for attempt in 0..MAX_COLOURINGS {
        let mut rng = seeded(sub_seed(seed, attempt));
        let colour: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if !good_colouring(inst, &colour)? {
            continue;
        }
        let mut full = inst.clone();
        for j in inst.r..n {
            let anchor = (0..inst.r).find(|&i| colour[i] == colour[j]).expect("both colours meet R");
            let mut list = vec![anchor];
            list.extend((0..n).filter(|&v| v != j && v != anchor).take(inst.k - 1));
            full.choices[j] = Some(list);
        }
        let parts: Vec<Vec<usize>> = [true, false]
            .iter()
            .map(|&c| (0..n).filter(|&v| colour[v] == c).collect())
            .collect();
        let partition = PartitionResult { parts };
        check_break(&full, &partition)?;
        return Ok(BreakResult {
            instance: full,
            partition,
            cycles: None,
        });
    }
    Err(Error::NotFound(format!("no good colouring in {MAX_COLOURINGS} attempts")))
}

fn check_break(full: &CoalitionInstance, pr: &PartitionResult) -> Result<()> {
    if !verify_partition(full, pr)? || !pr.splits(full.r) {
        return Err(Error::InternalInvariantViolation("constructed partition does not break the coalition".into()));
    }
    Ok(())
}

/// Largest `n` handled by the exhaustive verifiers.
pub const MAX_EXHAUSTIVE_N: usize = 10;

/// Calls `visit` with the label vector of every set partition of `0..n`
/// (restricted growth strings); stops when `visit` returns true.
pub fn for_each_set_partition(n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if i == n {
            return visit(labels);
        }
        for l in 0..=max + 1 {
            labels.push(l);
            let stop = rec(i + 1, max.max(l), labels, n, visit);
            labels.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if n == 0 {
        return visit(&[]);
    }
    let mut labels = vec![0];
    rec(1, 0, &mut labels, n, visit)
}

fn parts_from_labels(labels: &[usize]) -> PartitionResult {
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        parts[l].push(v);
    }
    PartitionResult { parts }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerifyMode {
    /// Quantifies over every choice of the non-members' lists.
    Adversarial,
    /// Keeps the given non-member lists, filling missing ones acyclically.
    FixedCompletion,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuccessReport {
    pub success: bool,
    pub mode: VerifyMode,
    /// A valid partition splitting `R`, when one exists.
    pub witness: Option<PartitionResult>,
}

/// Whether the coalition's lists force `R` into one class.
///
/// In adversarial mode the non-members' lists are free. A partition can
/// then be made valid by suitable non-member lists exactly when every part
/// holding a non-member has another child in it, so `R` fails iff some
/// partition splits `R`, keeps each member with a listed friend, and has no
/// singleton non-member part.
pub fn verify_coalition_success(inst: &CoalitionInstance, mode: VerifyMode) -> Result<SuccessReport> {
    let n = inst.n;
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge(format!("n={n} exceeds {MAX_EXHAUSTIVE_N}")));
    }
    let r = inst.r;
    let full = match mode {
        VerifyMode::Adversarial => {
            for i in 0..r {
                inst.list(i).ok_or_else(|| incomplete(i))?;
            }
            inst.clone()
        }
        VerifyMode::FixedCompletion => fill_missing(inst)?,
    };
    let mut witness = None;
    let mut sizes = vec![0usize; n];
    for_each_set_partition(n, &mut |labels| {
        if (1..r).all(|i| labels[i] == labels[0]) {
            return false;
        }
        let ok = match mode {
            VerifyMode::Adversarial => {
                sizes.iter_mut().for_each(|s| *s = 0);
                for &l in labels {
                    sizes[l] += 1;
                }
                (0..r).all(|i| full.choices[i].as_ref().is_some_and(|s| s.iter().any(|&j| labels[j] == labels[i])))
                    && (r..n).all(|j| sizes[labels[j]] >= 2)
            }
            VerifyMode::FixedCompletion => (0..n).all(|i| {
                full.choices[i].as_ref().is_some_and(|s| s.iter().any(|&j| labels[j] == labels[i]))
            }),
        };
        if ok {
            witness = Some(parts_from_labels(labels));
        }
        ok
    });
    Ok(SuccessReport {
        success: witness.is_none(),
        mode,
        witness,
    })
}

/// Adversarial check restricted to two-class partitions, on bitmasks.
/// Agrees with [`verify_coalition_success`]: merging the parts of a
/// splitting partition into two sides, each holding some of `R`, keeps it
/// valid. Used for wide sweeps over coalition lists.
pub fn splits_with_two_classes(n: usize, r: usize, lists: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    for mask in 0..(1u32 << (n - 1)) {
        // child n-1 stays on the zero side, which removes mirror images
        let red = mask;
        let blue = full & !red;
        let r_mask = (1u32 << r) - 1;
        if red & r_mask == 0 || blue & r_mask == 0 {
            continue;
        }
        let outside = full & !r_mask;
        if (red & outside != 0 && red.count_ones() < 2) || (blue & outside != 0 && blue.count_ones() < 2) {
            continue;
        }
        if (0..r).all(|i| {
            let own = if red >> i & 1 == 1 { red } else { blue };
            lists[i] & own != 0
        }) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    /// Standard error of the frequency.
    pub std_err: f64,
    /// `1 - 1/2^(r-1) - r/2^k`, a lower bound on the good-event probability.
    pub lower_bound: f64,
}

/// Frequency of the good event under uniform random two-colourings:
/// `R` uses both colours and every member has a listed friend of its colour.
/// Trial `t` uses the sub-seed `seed ^ t`.
pub fn monte_carlo_claim(inst: &CoalitionInstance, trials: u64, seed: u64) -> Result<ClaimReport> {
    if trials == 0 {
        return Err(Error::InfeasibleParameters("trials must be positive".into()));
    }
    if inst.r < 2 {
        return Err(Error::InfeasibleParameters("a coalition needs r >= 2".into()));
    }
    let mut successes = 0u64;
    let mut colour = vec![false; inst.n];
    for t in 0..trials {
        let mut rng = seeded(sub_seed(seed, t));
        for c in colour.iter_mut() {
            *c = rng.gen_bool(0.5);
        }
        if good_colouring(inst, &colour)? {
            successes += 1;
        }
    }
    let frequency = successes as f64 / trials as f64;
    Ok(ClaimReport {
        trials,
        successes,
        frequency,
        std_err: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        lower_bound: 1.0 - 0.5f64.powi(inst.r as i32 - 1) - inst.r as f64 * 0.5f64.powi(inst.k as i32),
    })
}

/// Uniformly random lists for `0..r-1`.
pub fn random_coalition<R: Rng>(n: usize, k: usize, r: usize, rng: &mut R) -> Result<CoalitionInstance> {
    let lists = (0..r)
        .map(|i| {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            rand::seq::index::sample(rng, others.len(), k).into_iter().map(|x| others[x]).collect()
        })
        .collect();
    CoalitionInstance::with_coalition(n, k, lists)
}
