//! Exact Poisson-binomial distributions and two tools built on them:
//! rounding a point of an `ℓ1`-ball to a Hamming ball that keeps half of a
//! given point set, and an exact search for `K(n,p)`, the least number of
//! vectors over the `p`-th roots of unity such that every such vector is
//! orthogonal to one of them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Sum of independent indicators with success probabilities `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonBinomial {
    probs: Vec<BigRational>,
}

impl PoissonBinomial {
    pub fn new(probs: Vec<BigRational>) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| p.is_negative() || **p > BigRational::one()) {
            return Err(Error::DomainError(format!("probability {p} outside [0,1]")));
        }
        Ok(PoissonBinomial { probs })
    }

    /// Probabilities `num_i / den`.
    pub fn from_ratios(nums: &[i64], den: i64) -> Result<Self> {
        PoissonBinomial::new(nums.iter().map(|&a| BigRational::new(a.into(), den.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn mean(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |a, p| a + p)
    }

    /// `Pr[X = j]` for `j = 0..=n`.
    pub fn pmf(&self) -> Vec<BigRational> {
        pmf_of(&self.probs)
    }

    /// `Pr[X <= d]`; 0 for negative `d`.
    pub fn cdf(&self, d: i64) -> BigRational {
        if d < 0 {
            return BigRational::zero();
        }
        self.pmf().into_iter().take(d as usize + 1).fold(BigRational::zero(), |a, p| a + p)
    }
}

fn pmf_of(probs: &[BigRational]) -> Vec<BigRational> {
    let mut dist = vec![BigRational::one()];
    for p in probs {
        let q = BigRational::one() - p;
        let mut next = vec![BigRational::zero(); dist.len() + 1];
        for (j, w) in dist.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            next[j] += w * &q;
            next[j + 1] += w * p;
        }
        dist = next;
    }
    dist
}

/// Whether `⌊μ⌋` or `⌈μ⌉` is a median, i.e. has `Pr[X <= m] >= 1/2` and
/// `Pr[X >= m] >= 1/2`.
pub fn median_check(pb: &PoissonBinomial) -> bool {
    let mu = pb.mean();
    let pmf = pb.pmf();
    let mut cdf = Vec::with_capacity(pmf.len());
    let mut acc = BigRational::zero();
    for p in &pmf {
        acc += p;
        cdf.push(acc.clone());
    }
    let at_most = |m: i64| if m < 0 { BigRational::zero() } else { cdf[(m as usize).min(cdf.len() - 1)].clone() };
    let lo = mu.floor().to_integer().to_i64().expect("mean fits i64");
    let hi = mu.ceil().to_integer().to_i64().expect("mean fits i64");
    [lo, hi].iter().any(|&m| at_most(m) >= half() && BigRational::one() - at_most(m - 1) >= half())
}

/// A real center `x`, an integer radius `d` and binary points within
/// `ℓ1`-distance `d` of `x`.
#[derive(Clone, Debug)]
pub struct L1BallInstance {
    pub x: Vec<BigRational>,
    pub d: usize,
    pub points: Vec<Vec<u8>>,
}

fn l1_to(x: &[BigRational], a: &[u8]) -> BigRational {
    x.iter()
        .zip(a)
        .map(|(xi, &ai)| (xi - BigRational::from_integer(BigInt::from(ai))).abs())
        .fold(BigRational::zero(), |s, t| s + t)
}

impl L1BallInstance {
    pub fn new(x: Vec<BigRational>, d: usize, points: Vec<Vec<u8>>) -> Result<Self> {
        let radius = BigRational::from_integer(BigInt::from(d));
        for a in &points {
            if a.len() != x.len() || a.iter().any(|&b| b > 1) {
                return Err(Error::DomainError("points must be binary vectors of the center's length".into()));
            }
            if l1_to(&x, a) > radius {
                return Err(Error::DomainError(format!("point {a:?} lies outside the ball")));
            }
        }
        Ok(L1BallInstance { x, d, points })
    }
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct HammingCenter {
    pub y: Vec<u8>,
    /// Points within Hamming distance `d` of `y`.
    pub count: usize,
    /// Conditional expectation of the count before and after each fixing.
    pub expectations: Vec<f64>,
}

/// A binary `y` whose Hamming ball of radius `d` holds at least half of the
/// points. The clamped center gives independent coordinates `y_i ~
/// Bernoulli(x_i)`, under which each point lands in the ball with
/// probability at least 1/2; coordinates are then fixed left to right to
/// keep the exact conditional expectation from dropping.
pub fn hamming_center(inst: &L1BallInstance) -> Result<HammingCenter> {
    let n = inst.x.len();
    let zero = BigRational::zero();
    let one = BigRational::one();
    let x: Vec<BigRational> = inst
        .x
        .iter()
        .map(|v| if *v < zero { zero.clone() } else if *v > one { one.clone() } else { v.clone() })
        .collect();
    // suffix_cdf[a][j][t] = Pr[mismatches of a on coordinates j.. <= t]
    let suffix_cdf: Vec<Vec<Vec<BigRational>>> = inst
        .points
        .iter()
        .map(|a| {
            (0..=n)
                .map(|j| {
                    let q: Vec<BigRational> =
                        (j..n).map(|i| if a[i] == 1 { &one - &x[i] } else { x[i].clone() }).collect();
                    let mut acc = BigRational::zero();
                    pmf_of(&q)
                        .into_iter()
                        .map(|p| {
                            acc += p;
                            acc.clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let d = inst.d as i64;
    let cond = |j: usize, mism: &[i64]| -> BigRational {
        mism.iter().zip(&suffix_cdf).fold(BigRational::zero(), |s, (&c, table)| {
            let t = d - c;
            if t < 0 {
                s
            } else {
                let row = &table[j];
                s + row[(t as usize).min(row.len() - 1)].clone()
            }
        })
    };
    let mut mism = vec![0i64; inst.points.len()];
    let mut current = cond(0, &mism);
    let total = BigRational::from_integer(BigInt::from(inst.points.len()));
    if current.clone() * BigRational::from_integer(BigInt::from(2)) < total {
        return Err(Error::InternalInvariantViolation(format!("initial expectation {current} below half")));
    }
    let mut expectations = vec![current.to_f64().unwrap_or(f64::NAN)];
    let mut y = Vec::with_capacity(n);
    for j in 0..n {
        let mut best: Option<(u8, BigRational, Vec<i64>)> = None;
        for b in [0u8, 1] {
            let next: Vec<i64> =
                mism.iter().zip(&inst.points).map(|(&c, a)| c + i64::from(a[j] != b)).collect();
            let e = cond(j + 1, &next);
            if best.as_ref().is_none_or(|(_, be, _)| e > *be) {
                best = Some((b, e, next));
            }
        }
        let (b, e, next) = best.expect("two branches");
        if e < current {
            return Err(Error::InternalInvariantViolation(format!("expectation fell at coordinate {j}")));
        }
        y.push(b);
        mism = next;
        current = e;
        expectations.push(current.to_f64().unwrap_or(f64::NAN));
    }
    let count = inst.points.iter().filter(|a| hamming(a, &y) <= inst.d).count();
    Ok(HammingCenter { y, count, expectations })
}

/// Exponents `a_i` of a vector `(w^{a_1}, ..., w^{a_n})`, `w = e^{2πi/p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootVector(pub Vec<u8>);

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Whether `Σ w^{a_i + b_i} = 0` (plain, non-conjugated product). For prime
/// `p` this holds exactly when every residue of `a_i + b_i mod p` occurs
/// `n/p` times.
pub fn kpn_cover_relation(v: &RootVector, u: &RootVector, p: usize) -> bool {
    let n = v.0.len();
    if u.0.len() != n || !n.is_multiple_of(p) {
        return false;
    }
    let mut counts = vec![0usize; p];
    for (a, b) in v.0.iter().zip(&u.0) {
        counts[(*a as usize + *b as usize) % p] += 1;
    }
    counts.iter().all(|&c| c == n / p)
}

/// `(p-1) n`.
pub fn kpn_degree_bound(n: usize, p: usize) -> usize {
    (p - 1) * n
}

/// `⌈p^n ((n/p)!)^p / n!⌉`, the number of vectors over the size of one
/// orthogonality class.
pub fn kpn_counting_bound(n: usize, p: usize) -> Result<usize> {
    if p == 0 || !n.is_multiple_of(p) {
        return Err(Error::InfeasibleParameters(format!("p={p} must divide n={n}")));
    }
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |a, b| a * BigInt::from(b));
    let num = BigInt::from(p).pow(n as u32) * fact(n / p).pow(p as u32);
    let den = fact(n);
    let (q, r) = (&num / &den, &num % &den);
    let c = if r.is_zero() { q } else { q + 1 };
    c.to_usize().ok_or_else(|| Error::TooLarge("counting bound".into()))
}

/// Largest `p^n` handled by [`kpn_bruteforce`].
pub const MAX_KPN_VECTORS: usize = 64;

fn all_vectors(n: usize, p: usize) -> Vec<RootVector> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0u8; n];
            for c in v.iter_mut().rev() {
                *c = (idx % p) as u8;
                idx /= p;
            }
            RootVector(v)
        })
        .collect()
}

/// Exact `K(n,p)` together with a minimum cover (as vector indices in
/// lexicographic order). The all-ones vector is put in the cover first:
/// shifting every exponent of a cover by a fixed vector gives another
/// cover, so some minimum cover contains it.
pub fn kpn_bruteforce(n: usize, p: usize) -> Result<(usize, Vec<RootVector>)> {
    if !is_prime(p) {
        return Err(Error::InfeasibleParameters(format!("p={p} is not prime")));
    }
    if n == 0 || !n.is_multiple_of(p) {
        return Err(Error::InfeasibleParameters(format!("p={p} must divide n={n}")));
    }
    let total = p.checked_pow(n as u32).filter(|&t| t <= MAX_KPN_VECTORS);
    let Some(total) = total else {
        return Err(Error::TooLarge(format!("{p}^{n} vectors exceed {MAX_KPN_VECTORS}")));
    };
    let vecs = all_vectors(n, p);
    // covers[i] = vectors orthogonal to vector i
    let covers: Vec<u64> = vecs
        .iter()
        .map(|v| {
            vecs.iter()
                .enumerate()
                .filter(|(_, u)| kpn_cover_relation(v, u, p))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let full = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
    let max_cover = covers.iter().map(|c| c.count_ones()).max().unwrap_or(0) as usize;
    let mut best: Vec<usize> = (0..total).collect();
    let mut chosen = vec![0usize];
    search(&covers, full, covers[0], &mut chosen, &mut best, max_cover);
    Ok((best.len(), best.into_iter().map(|i| vecs[i].clone()).collect()))
}

fn search(covers: &[u64], full: u64, covered: u64, chosen: &mut Vec<usize>, best: &mut Vec<usize>, max_cover: usize) {
    if covered == full {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let left = (full & !covered).count_ones() as usize;
    if chosen.len() + left.div_ceil(max_cover.max(1)) >= best.len() {
        return;
    }
    // branch on the uncovered vector with the fewest candidates
    let target = (0..covers.len())
        .filter(|&b| covered >> b & 1 == 0)
        .min_by_key(|&b| covers.iter().filter(|&&c| c >> b & 1 == 1).count())
        .expect("something is uncovered");
    for (i, &c) in covers.iter().enumerate() {
        if c >> target & 1 == 1 {
            chosen.push(i);
            search(covers, full, covered | c, chosen, best, max_cover);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use num_complex::Complex64;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest};
    use rand::Rng;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cdf_examples() {
        let pb = PoissonBinomial::from_ratios(&[0, 0, 0], 1).unwrap();
        assert_eq!(pb.cdf(0), r(1, 1));
        let pb = PoissonBinomial::from_ratios(&[1, 1], 2).unwrap();
        assert_eq!(pb.cdf(1), r(3, 4));
        assert_eq!(pb.cdf(-1), r(0, 1));
        assert!(PoissonBinomial::from_ratios(&[3], 2).is_err());
    }

    #[test]
    fn cdf_matches_enumeration() {
        let mut rng = seeded(11);
        for n in [1usize, 5, 12, 16] {
            let nums: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=7)).collect();
            let pb = PoissonBinomial::from_ratios(&nums, 7).unwrap();
            let mut dist = vec![BigRational::zero(); n + 1];
            for mask in 0u32..(1 << n) {
                let mut w = BigRational::one();
                for i in 0..n {
                    let p = &pb.probs()[i];
                    w *= if mask >> i & 1 == 1 { p.clone() } else { BigRational::one() - p };
                }
                dist[mask.count_ones() as usize] += w;
            }
            assert_eq!(pb.pmf(), dist);
        }
    }

    #[test]
    fn median_examples() {
        let pb = PoissonBinomial::from_ratios(&[1; 10], 2).unwrap();
        assert!(median_check(&pb));
        let pb = PoissonBinomial::from_ratios(&[1, 1, 1, 1, 1], 5).unwrap();
        assert_eq!(pb.mean(), r(1, 1));
        assert!(pb.cdf(1) >= half());
        assert!(median_check(&PoissonBinomial::from_ratios(&[], 1).unwrap()));
    }

    #[test]
    fn hamming_binary_center() {
        let x = vec![r(1, 1), r(0, 1), r(1, 1)];
        let inst = L1BallInstance::new(x, 1, vec![vec![1, 0, 1], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let out = hamming_center(&inst).unwrap();
        assert_eq!(out.y, vec![1, 0, 1]);
        assert_eq!(out.count, 3);
        assert!(L1BallInstance::new(vec![r(0, 1)], 0, vec![vec![1]]).is_err());
    }

    #[test]
    fn hamming_full_cube() {
        let n = 6;
        let x = vec![r(1, 2); n];
        let points: Vec<Vec<u8>> = (0u32..1 << n).map(|m| (0..n).map(|i| (m >> i & 1) as u8).collect()).collect();
        let inst = L1BallInstance::new(x, n / 2, points).unwrap();
        let out = hamming_center(&inst).unwrap();
        assert_eq!(out.count, 1 + 6 + 15 + 20);
        assert!(out.count >= 1 << (n - 1));
    }

    #[test]
    fn cover_relation_examples() {
        assert!(kpn_cover_relation(&RootVector(vec![0, 0]), &RootVector(vec![0, 1]), 2));
        assert!(!kpn_cover_relation(&RootVector(vec![0, 0]), &RootVector(vec![0, 0]), 2));
        assert!(kpn_cover_relation(&RootVector(vec![0, 0, 0]), &RootVector(vec![0, 1, 2]), 3));
        assert!(!kpn_cover_relation(&RootVector(vec![0, 0, 0]), &RootVector(vec![0, 1, 2]), 2));
    }

    #[test]
    fn cover_relation_matches_complex_sum() {
        for p in [2usize, 3, 5] {
            for n in 1..=6 {
                if p.pow(n as u32) > 4096 {
                    continue;
                }
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / p as f64);
                let vecs = all_vectors(n, p);
                let v0 = &vecs[vecs.len() / 3];
                for u in &vecs {
                    let s: Complex64 = v0.0.iter().zip(&u.0).map(|(a, b)| w.powu((*a + *b) as u32)).sum();
                    assert_eq!(s.norm() < 1e-9, kpn_cover_relation(v0, u, p), "p={p} u={u:?}");
                }
            }
        }
    }

    #[test]
    fn kpn_small_values() {
        assert_eq!(kpn_bruteforce(2, 2).unwrap().0, 2);
        assert_eq!(kpn_bruteforce(4, 2).unwrap().0, 4);
        assert_eq!(kpn_counting_bound(3, 3).unwrap(), 5);
        assert!(matches!(kpn_bruteforce(3, 2), Err(Error::InfeasibleParameters(_))));
        assert!(matches!(kpn_bruteforce(4, 4), Err(Error::InfeasibleParameters(_))));
        assert!(matches!(kpn_bruteforce(8, 2), Err(Error::TooLarge(_))));
    }

    proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn median_holds(seed: u64, n in 0usize..20) {
            let mut rng = seeded(seed);
            let nums: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=12)).collect();
            prop_assert!(median_check(&PoissonBinomial::from_ratios(&nums, 12).unwrap()));
        }

        #[test]
        fn hamming_keeps_half(seed: u64, n in 1usize..10) {
            let mut rng = seeded(seed);
            let x: Vec<BigRational> = (0..n).map(|_| r(rng.gen_range(-2..=10), 8)).collect();
            let d = rng.gen_range(0..=n);
            let points: Vec<Vec<u8>> = (0..30)
                .map(|_| (0..n).map(|_| rng.gen_range(0..=1u8)).collect::<Vec<u8>>())
                .filter(|a| l1_to(&x, a) <= BigRational::from_integer(BigInt::from(d)))
                .collect();
            let inst = L1BallInstance::new(x, d, points).unwrap();
            let out = hamming_center(&inst).unwrap();
            prop_assert!(2 * out.count >= inst.points.len());
            prop_assert!(out.expectations.windows(2).all(|w| w[1] >= w[0]));
            prop_assert_eq!(out.count, inst.points.iter().filter(|a| hamming(a, &out.y) <= d).count());
        }
    }
}
