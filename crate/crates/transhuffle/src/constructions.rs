//! Shuffle constructions: simple shuffles from reduced words, sweep families
//! with the inductive recursion, divide-and-conquer with Bernoulli-factorized
//! bridge probabilities, and the independent uniqueness solver.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::prob::Prob;
use crate::shuffle::{LazyTransposition, Shuffle};
use crate::words::{
    delete_trajectory_of, trajectory_set, word_length, ReducedWord, TrackedElement,
};

/// A parameter sequence of order `n` whose composition leaves the last
/// position uniformly distributed over all `n` elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    n: usize,
    steps: Vec<LazyTransposition>,
}

impl Sweep {
    pub fn new(n: usize, steps: Vec<LazyTransposition>) -> Result<Self> {
        for step in &steps {
            step.check_order(n)?;
        }
        Ok(Sweep { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[LazyTransposition] {
        &self.steps
    }
}

/// The probabilities of a simple shuffle built from a reduced word:
/// step `i` is `(a_i, a_i + 1, (v_i − u_i)/(v_i − u_i + 1))` where
/// `(u_i, v_i)` are the elements transposed at step `i`.
pub fn simple_shuffle_from_word(word: &ReducedWord) -> Shuffle {
    let n = word.n();
    let mut sigma = Permutation::identity(n);
    let mut steps = Vec::with_capacity(word.len());
    for &a in word.letters() {
        let u = sigma.apply(a);
        let v = sigma.apply(a + 1);
        debug_assert!(u < v, "reduced-word steps always swap an ascending pair");
        let d = (v - u) as i64;
        let p = Prob::exact(d, d + 1).expect("d/(d+1) is a probability");
        steps.push(LazyTransposition::new(a, a + 1, p).expect("a < a+1"));
        sigma = sigma.swap_positions(a, a + 1);
    }
    Shuffle::new(n, steps).expect("steps are in range and share exact mode")
}

/// The sweep `(1,2,1/2), (2,3,2/3), …, (n−1,n,(n−1)/n)`.
pub fn simple_sweep(n: usize) -> Sweep {
    let steps = (1..n)
        .map(|k| {
            LazyTransposition::new(k, k + 1, Prob::exact(k as i64, k as i64 + 1).unwrap())
                .unwrap()
        })
        .collect();
    Sweep { n, steps }
}

/// The sweep `(1,n,1/2), (2,n,1/3), …, (n−1,n,1/n)`.
pub fn star_sweep(n: usize) -> Sweep {
    let steps = (1..n)
        .map(|k| LazyTransposition::new(k, n, Prob::exact(1, k as i64 + 1).unwrap()).unwrap())
        .collect();
    Sweep { n, steps }
}

/// A partition of `{1, …, n−1}` into non-empty blocks `D_j`, each with a
/// chosen representative `d_j ∈ D_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    members: Vec<usize>,
    representative: usize,
}

impl Block {
    pub fn new(mut members: Vec<usize>, representative: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::BadPartition("empty block".into()));
        }
        if !members.contains(&representative) {
            return Err(Error::BadPartition(format!(
                "representative {representative} not in block {members:?}"
            )));
        }
        Ok(Block {
            members,
            representative,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn representative(&self) -> usize {
        self.representative
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl Partition {
    /// Blocks must be disjoint and cover `{1, …, n−1}`.
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        let mut covered = vec![false; n];
        for block in &blocks {
            for &m in &block.members {
                if m == 0 || m >= n {
                    return Err(Error::BadPartition(format!(
                        "member {m} outside 1..={}",
                        n - 1
                    )));
                }
                if covered[m] {
                    return Err(Error::BadPartition(format!("member {m} appears twice")));
                }
                covered[m] = true;
            }
        }
        if !covered[1..].iter().all(|&c| c) {
            return Err(Error::BadPartition(format!(
                "blocks do not cover 1..={}",
                n - 1
            )));
        }
        Ok(Partition { n, blocks })
    }

    /// The all-singletons partition, each element its own representative.
    pub fn singletons(n: usize) -> Partition {
        let blocks = (1..n)
            .map(|m| Block {
                members: vec![m],
                representative: m,
            })
            .collect();
        Partition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// The inductive sweep: per-block sub-sweeps relabeled into their blocks
/// (with the representative receiving the uniform slot), followed by the
/// closing stage `(d_1, n, m_1/(1+m_1)), …, (d_r, n, m_r/n)`.
pub fn partition_sweep(n: usize, part: &Partition, sub_sweeps: &[Sweep]) -> Result<Sweep> {
    if part.n() != n {
        return Err(Error::OrderMismatch(part.n(), n));
    }
    if sub_sweeps.len() != part.blocks().len() {
        return Err(Error::BadPartition(format!(
            "{} sub-sweeps for {} blocks",
            sub_sweeps.len(),
            part.blocks().len()
        )));
    }
    let mut steps = Vec::new();
    for (block, sweep) in part.blocks().iter().zip(sub_sweeps) {
        let m = block.size();
        if sweep.n() != m {
            return Err(Error::OrderMismatch(sweep.n(), m));
        }
        // δ maps m to the representative and the remaining slots to the other
        // members in increasing order.
        let mut delta: Vec<usize> = block
            .members()
            .iter()
            .copied()
            .filter(|&x| x != block.representative())
            .collect();
        delta.push(block.representative());
        for step in sweep.steps() {
            steps.push(LazyTransposition::new(
                delta[step.a() - 1],
                delta[step.b() - 1],
                step.p().clone(),
            )?);
        }
    }
    let mut seen = 1i64; // the closing stage progressively merges blocks with position n
    for block in part.blocks() {
        let m = block.size() as i64;
        seen += m;
        steps.push(LazyTransposition::new(
            block.representative(),
            n,
            Prob::exact(m, seen)?,
        )?);
    }
    Sweep::new(n, steps)
}

/// A per-order sweep provider for the inductive shuffle recursion.
pub trait SweepProvider {
    fn sweep(&self, n: usize) -> Result<Sweep>;
}

impl<F: Fn(usize) -> Result<Sweep>> SweepProvider for F {
    fn sweep(&self, n: usize) -> Result<Sweep> {
        self(n)
    }
}

/// Concatenates `sweep(n), sweep(n−1), …, sweep(2)`: each sweep randomizes
/// its last position, then the recursion shuffles the prefix.
///
/// Every provided sweep is certified before use.
pub fn shuffle_from_sweeps<P: SweepProvider>(provider: &P, n: usize) -> Result<Shuffle> {
    let mut steps = Vec::new();
    for k in (2..=n).rev() {
        let sweep = provider.sweep(k)?;
        if sweep.n() != k {
            return Err(Error::OrderMismatch(sweep.n(), k));
        }
        if !crate::verify::is_sweep(sweep.steps(), k)? {
            return Err(Error::ConstructionFailed(format!(
                "provider returned a non-sweep at order {k}"
            )));
        }
        steps.extend(sweep.steps().iter().cloned());
    }
    Shuffle::new(n, steps)
}

/// The law of the number of light elements in heavy positions under a
/// uniform permutation: `p_k = C(n−h, k)·C(h, h−k)/C(n, h)` for `k = 0..h`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricSpec {
    n: usize,
    h: usize,
    pmf: Vec<BigRational>,
}

impl HypergeometricSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn pmf(&self) -> &[BigRational] {
        &self.pmf
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn hypergeometric_pmf(n: usize, h: usize) -> Result<HypergeometricSpec> {
    if h == 0 || h >= n {
        return Err(Error::ConstructionFailed(format!(
            "split size h = {h} must satisfy 1 <= h < n = {n}"
        )));
    }
    let total = BigInt::from(binomial(n, h));
    let pmf = (0..=h)
        .map(|k| {
            let ways = BigInt::from(binomial(n - h, k) * binomial(h, h - k));
            BigRational::new(ways, total.clone())
        })
        .collect();
    Ok(HypergeometricSpec { n, h, pmf })
}

/// All real roots of a real-rooted polynomial, ascending.
///
/// Brackets come from the interlacing roots of the derivative (computed
/// recursively down to the linear case) plus a Cauchy bound; each bracket is
/// bisected to machine precision and polished with Newton steps on the
/// original polynomial.
fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return vec![];
    }
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    if d == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect();
    let inner = real_roots(&deriv);
    let lead = coeffs[d].abs();
    let bound = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0, f64::max);
    let mut brackets = Vec::with_capacity(d + 1);
    brackets.push(-bound);
    brackets.extend(inner);
    brackets.push(bound);
    let mut roots = Vec::new();
    for w in brackets.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(lo), eval(hi));
        if flo == 0.0 {
            // endpoint root handled by the adjacent bracket or pushed here once
            if roots.last().map_or(true, |&r: &f64| r < lo) {
                roots.push(lo);
            }
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if eval(mid) * flo.signum() <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        // Newton polish
        let deval = |x: f64| deriv.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        for _ in 0..3 {
            let fx = eval(x);
            let dx = deval(x);
            if dx != 0.0 {
                let next = x - fx / dx;
                if next.is_finite() {
                    x = next;
                }
            }
        }
        roots.push(x);
    }
    roots
}

/// Coefficients of `∏_j (1 − q_j + q_j x)`.
fn bernoulli_product_coeffs(qs: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for &q in qs {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] += c * (1.0 - q);
            next[i + 1] += c * q;
        }
        coeffs = next;
    }
    coeffs
}

pub const FACTORIZATION_COEFF_TOL: f64 = 1e-12;

/// Bernoulli parameters `q_1 ≤ … ≤ q_h` whose sum of independent indicators
/// has the given hypergeometric law: root `x_j ≤ 0` of the generating
/// polynomial maps to `q_j = 1/(1 − x_j)`.
pub fn bernoulli_factorization(spec: &HypergeometricSpec) -> Result<Vec<f64>> {
    let coeffs: Vec<f64> = spec
        .pmf
        .iter()
        .map(|r| r.to_f64().unwrap())
        .collect();
    let roots = real_roots(&coeffs);
    if roots.len() != spec.h {
        return Err(Error::FactorizationFailed(format!(
            "found {} real roots, expected {}",
            roots.len(),
            spec.h
        )));
    }
    if roots.iter().any(|&x| x > 0.0) {
        return Err(Error::FactorizationFailed(
            "generating polynomial has a positive root".into(),
        ));
    }
    let mut qs: Vec<f64> = roots.iter().map(|&x| 1.0 / (1.0 - x)).collect();
    qs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let reconstructed = bernoulli_product_coeffs(&qs);
    for (rec, orig) in reconstructed.iter().zip(&coeffs) {
        if (rec - orig).abs() > FACTORIZATION_COEFF_TOL {
            return Err(Error::FactorizationFailed(format!(
                "reconstructed coefficient {rec} differs from {orig}"
            )));
        }
    }
    Ok(qs)
}

/// A per-order shuffle provider for divide-and-conquer recursion.
pub trait ShuffleProvider {
    fn shuffle(&self, n: usize) -> Result<Shuffle>;
}

impl<F: Fn(usize) -> Result<Shuffle>> ShuffleProvider for F {
    fn shuffle(&self, n: usize) -> Result<Shuffle> {
        self(n)
    }
}

fn to_real_steps(shuffle: &Shuffle, shift: usize, out: &mut Vec<LazyTransposition>) -> Result<()> {
    for step in shuffle.steps() {
        out.push(LazyTransposition::new(
            step.a() + shift,
            step.b() + shift,
            Prob::real(step.p().to_f64())?,
        )?);
    }
    Ok(())
}

/// Divide and conquer: shuffle light positions `1..h` and heavy positions
/// `h+1..n` independently, bridge with `(j, j+h, q_j)`, then shuffle both
/// halves again.  Output is always real-mode; length is
/// `2ℓ_h + 2ℓ_{n−h} + h`.
pub fn divide_and_conquer_shuffle<P: ShuffleProvider>(n: usize, sub: &P) -> Result<Shuffle> {
    if n <= 1 {
        return Shuffle::new(n, vec![]);
    }
    let h = n / 2;
    let light = sub.shuffle(h)?;
    let heavy = sub.shuffle(n - h)?;
    if light.n() != h || heavy.n() != n - h {
        return Err(Error::ConstructionFailed(
            "sub-provider returned a shuffle of the wrong order".into(),
        ));
    }
    let qs = bernoulli_factorization(&hypergeometric_pmf(n, h)?)?;
    let mut steps = Vec::with_capacity(2 * light.len() + 2 * heavy.len() + h);
    to_real_steps(&light, 0, &mut steps)?;
    to_real_steps(&heavy, h, &mut steps)?;
    for (j, &q) in qs.iter().enumerate() {
        steps.push(LazyTransposition::new(j + 1, j + 1 + h, Prob::real(q)?)?);
    }
    to_real_steps(&light, 0, &mut steps)?;
    to_real_steps(&heavy, h, &mut steps)?;
    Shuffle::new(n, steps)
}

/// The fully recursive divide-and-conquer shuffle, with the one-step simple
/// shuffle at order 2.
pub fn default_divide_and_conquer(n: usize) -> Result<Shuffle> {
    if n <= 1 {
        return Shuffle::new(n, vec![]);
    }
    if n == 2 {
        return Shuffle::new(
            2,
            vec![LazyTransposition::new(1, 2, Prob::real(0.5)?)?],
        );
    }
    divide_and_conquer_shuffle(n, &default_divide_and_conquer)
}

/// Probabilities forced on a reduced word by uniformity, computed by the
/// trajectory recursion: deleting the trajectory of element 1 pins the
/// probabilities outside `H`, deleting element n's trajectory pins those
/// outside `Ĥ`, and the single shared index is fixed by
/// `∏_{h∈H} p_h = 1/n`.  Independent of the simple-shuffle formula.
pub fn unique_simple_probabilities(word: &ReducedWord) -> Result<Vec<Prob>> {
    let probs = unique_probs_rational(word)?;
    probs.into_iter().map(Prob::from_rational).collect()
}

fn unique_probs_rational(word: &ReducedWord) -> Result<Vec<BigRational>> {
    let n = word.n();
    if n <= 1 {
        return Ok(vec![]);
    }
    let ell = word.len();
    let h = trajectory_set(word, TrackedElement::Min);
    let hhat = trajectory_set(word, TrackedElement::Max);
    let k = *h
        .indices()
        .iter()
        .find(|&&i| hhat.contains(i))
        .expect("H and Ĥ share exactly one index");

    let mut probs: Vec<Option<BigRational>> = vec![None; ell];
    for element in [TrackedElement::Min, TrackedElement::Max] {
        let (deleted, survivors) = delete_trajectory_of(word, element)?;
        let sub = unique_probs_rational(&deleted)?;
        for (orig, p) in survivors.into_iter().zip(sub) {
            match &probs[orig - 1] {
                None => probs[orig - 1] = Some(p),
                Some(existing) => assert_eq!(
                    *existing, p,
                    "the two trajectory recursions must agree off H ∪ Ĥ"
                ),
            }
        }
    }

    // ∏_{h∈H} p_h = 1/n fixes the remaining index.
    let mut product = BigRational::one();
    for &i in h.indices() {
        if i != k {
            product *= probs[i - 1]
                .as_ref()
                .expect("indices of H \\ {k} lie outside Ĥ");
        }
    }
    let target = BigRational::new(BigInt::one(), BigInt::from(n as i64));
    probs[k - 1] = Some(target / product);

    debug_assert_eq!(word_length(n - 1), ell - (n - 1));
    Ok(probs
        .into_iter()
        .map(|p| p.expect("every index is pinned by one of the recursions"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{bubble_sort_word, enumerate_reduced_words};

    fn probs_of(shuffle: &Shuffle) -> Vec<Prob> {
        shuffle.steps().iter().map(|s| s.p().clone()).collect()
    }

    fn exact(num: i64, den: i64) -> Prob {
        Prob::exact(num, den).unwrap()
    }

    #[test]
    fn bubble_word_probabilities() {
        let shuffle = simple_shuffle_from_word(&bubble_sort_word(5));
        let expected: Vec<Prob> = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (1, 2),
            (2, 3),
            (3, 4),
            (1, 2),
            (2, 3),
            (1, 2),
        ]
        .iter()
        .map(|&(a, b)| exact(a, b))
        .collect();
        assert_eq!(probs_of(&shuffle), expected);
    }

    #[test]
    fn interleaved_word_probabilities() {
        let word = ReducedWord::new(5, vec![1, 3, 2, 4, 1, 3, 2, 4, 1, 3]).unwrap();
        let shuffle = simple_shuffle_from_word(&word);
        let expected: Vec<Prob> = [
            (1, 2),
            (1, 2),
            (3, 4),
            (2, 3),
            (2, 3),
            (4, 5),
            (3, 4),
            (2, 3),
            (1, 2),
            (1, 2),
        ]
        .iter()
        .map(|&(a, b)| exact(a, b))
        .collect();
        assert_eq!(probs_of(&shuffle), expected);
    }

    #[test]
    fn order_three_word_probabilities() {
        let word = ReducedWord::new(3, vec![1, 2, 1]).unwrap();
        let shuffle = simple_shuffle_from_word(&word);
        assert_eq!(
            probs_of(&shuffle),
            vec![exact(1, 2), exact(2, 3), exact(1, 2)]
        );
    }

    #[test]
    fn sweep_families() {
        let s = simple_sweep(5);
        assert_eq!(s.len(), 4);
        assert_eq!(s.steps()[3].p(), &exact(4, 5));
        let star = star_sweep(4);
        let spelled: Vec<(usize, usize, Prob)> = star
            .steps()
            .iter()
            .map(|t| (t.a(), t.b(), t.p().clone()))
            .collect();
        assert_eq!(
            spelled,
            vec![
                (1, 4, exact(1, 2)),
                (2, 4, exact(1, 3)),
                (3, 4, exact(1, 4)),
            ]
        );
    }

    #[test]
    fn partition_sweep_worked_example() {
        // Blocks {1,2}, {3}, {4} with representatives 2, 3, 4.
        let part = Partition::new(
            5,
            vec![
                Block::new(vec![1, 2], 2).unwrap(),
                Block::new(vec![3], 3).unwrap(),
                Block::new(vec![4], 4).unwrap(),
            ],
        )
        .unwrap();
        let subs = vec![simple_sweep(2), simple_sweep(1), simple_sweep(1)];
        let sweep = partition_sweep(5, &part, &subs).unwrap();
        let spelled: Vec<(usize, usize, Prob)> = sweep
            .steps()
            .iter()
            .map(|t| (t.a(), t.b(), t.p().clone()))
            .collect();
        assert_eq!(
            spelled,
            vec![
                (1, 2, exact(1, 2)),
                (2, 5, exact(2, 3)),
                (3, 5, exact(1, 4)),
                (4, 5, exact(1, 5)),
            ]
        );
    }

    #[test]
    fn partition_sweep_degenerate_cases() {
        // One block with the simple sub-sweep reproduces the simple sweep.
        let n = 5;
        let part = Partition::new(
            n,
            vec![Block::new((1..n).collect(), n - 1).unwrap()],
        )
        .unwrap();
        let sweep = partition_sweep(n, &part, &[simple_sweep(n - 1)]).unwrap();
        assert_eq!(sweep.steps(), simple_sweep(n).steps());

        // All singletons reproduces the star sweep.
        let singles = Partition::singletons(n);
        let subs: Vec<Sweep> = (1..n).map(|_| simple_sweep(1)).collect();
        let sweep = partition_sweep(n, &singles, &subs).unwrap();
        assert_eq!(sweep.steps(), star_sweep(n).steps());
    }

    #[test]
    fn malformed_partitions_rejected() {
        assert!(Partition::new(4, vec![Block::new(vec![1, 2], 1).unwrap()]).is_err());
        assert!(Block::new(vec![1, 2], 3).is_err());
        assert!(Partition::new(
            4,
            vec![
                Block::new(vec![1, 2], 1).unwrap(),
                Block::new(vec![2, 3], 3).unwrap(),
            ],
        )
        .is_err());
    }

    #[test]
    fn sweep_recursion_matches_bubble_shuffle() {
        let shuffle = shuffle_from_sweeps(&|k| Ok(simple_sweep(k)), 5).unwrap();
        assert_eq!(
            shuffle.steps(),
            simple_shuffle_from_word(&bubble_sort_word(5)).steps()
        );
        let tiny = shuffle_from_sweeps(&|k| Ok(simple_sweep(k)), 2).unwrap();
        assert_eq!(tiny.len(), 1);
    }

    #[test]
    fn hypergeometric_pmfs() {
        let spec = hypergeometric_pmf(5, 2).unwrap();
        let expected: Vec<BigRational> = [(1, 10), (6, 10), (3, 10)]
            .iter()
            .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        assert_eq!(spec.pmf(), &expected[..]);

        let tiny = hypergeometric_pmf(2, 1).unwrap();
        assert_eq!(
            tiny.pmf(),
            &[
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into())
            ][..]
        );

        for n in 2..=10 {
            let spec = hypergeometric_pmf(n, n / 2).unwrap();
            let sum: BigRational = spec.pmf().iter().sum();
            assert!(sum.is_one());
        }
        assert!(hypergeometric_pmf(5, 0).is_err());
        assert!(hypergeometric_pmf(5, 5).is_err());
    }

    #[test]
    fn factorization_closed_form() {
        let qs = bernoulli_factorization(&hypergeometric_pmf(5, 2).unwrap()).unwrap();
        let low = (6.0 - 6.0f64.sqrt()) / 10.0;
        let high = (6.0 + 6.0f64.sqrt()) / 10.0;
        assert!((qs[0] - low).abs() < 1e-12);
        assert!((qs[1] - high).abs() < 1e-12);

        let qs = bernoulli_factorization(&hypergeometric_pmf(2, 1).unwrap()).unwrap();
        assert!((qs[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn factorization_reconstructs_pmf() {
        for n in 2..=10 {
            let spec = hypergeometric_pmf(n, n / 2).unwrap();
            let qs = bernoulli_factorization(&spec).unwrap();
            assert_eq!(qs.len(), n / 2);
            assert!(qs.windows(2).all(|w| w[0] <= w[1]));
            let coeffs = bernoulli_product_coeffs(&qs);
            for (c, p) in coeffs.iter().zip(spec.pmf()) {
                assert!((c - p.to_f64().unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn divide_and_conquer_lengths() {
        for n in 2..=8 {
            let shuffle = default_divide_and_conquer(n).unwrap();
            assert_eq!(shuffle.len(), n * (n - 1) / 2);
        }
        let two = default_divide_and_conquer(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two.steps()[0].p().to_f64(), 0.5);
    }

    #[test]
    fn unique_probabilities_small() {
        let word = ReducedWord::new(3, vec![1, 2, 1]).unwrap();
        assert_eq!(
            unique_simple_probabilities(&word).unwrap(),
            vec![exact(1, 2), exact(2, 3), exact(1, 2)]
        );
        let word2 = ReducedWord::new(2, vec![1]).unwrap();
        assert_eq!(
            unique_simple_probabilities(&word2).unwrap(),
            vec![exact(1, 2)]
        );
    }

    #[test]
    fn unique_probabilities_agree_with_construction() {
        for n in 2..=4 {
            for word in enumerate_reduced_words(n).unwrap() {
                let constructed = probs_of(&simple_shuffle_from_word(&word));
                let solved = unique_simple_probabilities(&word).unwrap();
                assert_eq!(constructed, solved, "word {:?}", word.letters());
            }
        }
    }
}
