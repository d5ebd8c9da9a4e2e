//! Exact certification of shuffles and sweeps, expected-matrix and rank
//! certificates, braid probability transport, rigidity probes, and
//! trajectory brute-force checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dist::ExactDistribution;
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::prob::{Mode, Prob};
use crate::shuffle::{LazyTransposition, OutcomeVector, Shuffle};
use crate::words::{trajectory_set, ReducedWord, TrackedElement};

/// Default max-deviation tolerance for real-mode uniformity verdicts.
pub const REAL_UNIFORM_TOL: f64 = 1e-10;

/// Guard for 2^ℓ outcome enumerations.
pub const MAX_BRUTE_LEN: usize = 20;

/// The full law of `π_ℓ = T_1 ⋯ T_ℓ` started from the identity.
pub fn exact_distribution(shuffle: &Shuffle) -> Result<ExactDistribution> {
    let mut dist = ExactDistribution::point_mass_at_identity(shuffle.n(), shuffle.mode())?;
    for step in shuffle.steps() {
        dist = dist.evolve(step)?;
    }
    Ok(dist)
}

/// Exact mode: zero-tolerance equality with `1/n!`; real mode: max deviation
/// at most `tol`.
pub fn is_uniform(dist: &ExactDistribution, tol: f64) -> bool {
    dist.is_uniform(tol)
}

/// Certifies a shuffle as uniform in its own mode (exact: zero tolerance;
/// real: [`REAL_UNIFORM_TOL`]).
pub fn is_uniform_shuffle(shuffle: &Shuffle) -> Result<bool> {
    Ok(exact_distribution(shuffle)?.is_uniform(REAL_UNIFORM_TOL))
}

/// The n×n matrix of marginals `M(π)_{i,j} = P(π(i) = j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    entries: Entries,
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact(Vec<BigRational>),
    Real(Vec<f64>),
}

impl StochasticMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        match self.entries {
            Entries::Exact(_) => Mode::Exact,
            Entries::Real(_) => Mode::Real,
        }
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> Prob {
        let idx = (i - 1) * self.n + (j - 1);
        match &self.entries {
            Entries::Exact(v) => Prob::Exact(v[idx].clone()),
            Entries::Real(v) => Prob::Real(v[idx]),
        }
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        self.get(i, j).to_f64()
    }

    /// Max deviation of any entry from `1/n`.
    pub fn max_deviation_from_flat(&self) -> f64 {
        let u = 1.0 / self.n as f64;
        (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| (self.get_f64(i, j) - u).abs())
            .fold(0.0, f64::max)
    }

    /// All entries equal `1/n`: exactly in exact mode, within `tol` otherwise.
    pub fn is_flat(&self, tol: f64) -> bool {
        match &self.entries {
            Entries::Exact(v) => {
                let u = BigRational::new(BigInt::one(), BigInt::from(self.n as i64));
                v.iter().all(|e| *e == u)
            }
            Entries::Real(_) => self.max_deviation_from_flat() <= tol,
        }
    }

    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        match &self.entries {
            Entries::Exact(v) => {
                let one = BigRational::one();
                (0..self.n).all(|i| {
                    v[i * self.n..(i + 1) * self.n].iter().sum::<BigRational>() == one
                }) && (0..self.n).all(|j| {
                    (0..self.n).map(|i| &v[i * self.n + j]).sum::<BigRational>() == one
                })
            }
            Entries::Real(v) => {
                (0..self.n).all(|i| {
                    (v[i * self.n..(i + 1) * self.n].iter().sum::<f64>() - 1.0).abs() <= tol
                }) && (0..self.n).all(|j| {
                    ((0..self.n).map(|i| v[i * self.n + j]).sum::<f64>() - 1.0).abs() <= tol
                })
            }
        }
    }

    /// Row `i` as floats (the marginal law of `π(i)`).
    pub fn row_f64(&self, i: usize) -> Vec<f64> {
        (1..=self.n).map(|j| self.get_f64(i, j)).collect()
    }

    fn exact_rows(&self) -> Option<Vec<Vec<BigRational>>> {
        match &self.entries {
            Entries::Exact(v) => Some(
                (0..self.n)
                    .map(|i| v[i * self.n..(i + 1) * self.n].to_vec())
                    .collect(),
            ),
            Entries::Real(_) => None,
        }
    }
}

fn step_matrix_exact(step: &LazyTransposition, n: usize) -> Vec<BigRational> {
    let p = step.p().as_exact().expect("exact step").clone();
    let q = BigRational::one() - &p;
    let mut m = vec![BigRational::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = BigRational::one();
    }
    let (a, b) = (step.a() - 1, step.b() - 1);
    m[a * n + a] = q.clone();
    m[b * n + b] = q;
    m[a * n + b] = p.clone();
    m[b * n + a] = p;
    m
}

fn step_matrix_real(step: &LazyTransposition, n: usize) -> Vec<f64> {
    let p = step.p().to_f64();
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    let (a, b) = (step.a() - 1, step.b() - 1);
    m[a * n + a] = 1.0 - p;
    m[b * n + b] = 1.0 - p;
    m[a * n + b] = p;
    m[b * n + a] = p;
    m
}

fn mat_mul_exact(x: &[BigRational], y: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if x[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                let prod = &x[i * n + k] * &y[k * n + j];
                out[i * n + j] += prod;
            }
        }
    }
    out
}

fn mat_mul_real(x: &[f64], y: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let xv = x[i * n + k];
            if xv == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += xv * y[k * n + j];
            }
        }
    }
    out
}

/// Product of the per-step expectation matrices; for a perfect shuffle every
/// entry is `1/n`.
pub fn expected_matrix(shuffle: &Shuffle) -> StochasticMatrix {
    let n = shuffle.n();
    let entries = match shuffle.mode() {
        Mode::Exact => {
            let mut m: Vec<BigRational> = (0..n * n)
                .map(|idx| {
                    if idx % n == idx / n {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            for step in shuffle.steps() {
                // M(σ)M(τ) = M(τ∘σ), so each new step left-multiplies
                m = mat_mul_exact(&step_matrix_exact(step, n), &m, n);
            }
            Entries::Exact(m)
        }
        Mode::Real => {
            let mut m: Vec<f64> = (0..n * n)
                .map(|idx| if idx % n == idx / n { 1.0 } else { 0.0 })
                .collect();
            for step in shuffle.steps() {
                m = mat_mul_real(&step_matrix_real(step, n), &m, n);
            }
            Entries::Real(m)
        }
    };
    StochasticMatrix { n, entries }
}

/// Whether the steps form a sweep: the marginal law of `π(n)` is uniform on
/// `{1, …, n}`.
pub fn is_sweep(steps: &[LazyTransposition], n: usize) -> Result<bool> {
    if n > 8 {
        return Err(Error::ResourceGuard(format!(
            "sweep certification capped at order 8, got {n}"
        )));
    }
    let shuffle = Shuffle::new(n, steps.to_vec())?;
    let m = expected_matrix(&shuffle);
    // Row n of the expectation matrix is exactly the marginal of π(n).
    match m.exact_rows() {
        Some(rows) => {
            let u = BigRational::new(BigInt::one(), BigInt::from(n as i64));
            Ok(rows[n - 1].iter().all(|e| *e == u))
        }
        None => {
            let u = 1.0 / n as f64;
            Ok(m
                .row_f64(n)
                .iter()
                .all(|&e| (e - u).abs() <= REAL_UNIFORM_TOL))
        }
    }
}

/// Half-probability accounting for a verified shuffle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCountReport {
    pub half_count: usize,
    pub endpoint_halves: bool,
    /// The count bound `half_count ≥ n−1` that holds for every perfect
    /// shuffle; false signals an internal-consistency failure.
    pub theorem_consistent: bool,
}

/// Tolerance for counting a real-mode probability as 1/2.
pub const REAL_HALF_TOL: f64 = 1e-9;

/// Counts probabilities equal to 1/2 and checks the endpoints.  Errors when
/// called on a shuffle that is not uniform.
pub fn half_count_check(shuffle: &Shuffle) -> Result<HalfCountReport> {
    if !is_uniform_shuffle(shuffle)? {
        return Err(Error::NotUniform);
    }
    Ok(half_counts_unchecked(shuffle))
}

pub(crate) fn half_counts_unchecked(shuffle: &Shuffle) -> HalfCountReport {
    let tol = match shuffle.mode() {
        Mode::Exact => 0.0,
        Mode::Real => REAL_HALF_TOL,
    };
    let half_count = shuffle
        .steps()
        .iter()
        .filter(|s| s.p().is_half(tol))
        .count();
    let endpoint_halves = match (shuffle.steps().first(), shuffle.steps().last()) {
        (Some(first), Some(last)) => first.p().is_half(tol) && last.p().is_half(tol),
        _ => true,
    };
    HalfCountReport {
        half_count,
        endpoint_halves,
        theorem_consistent: half_count + 1 >= shuffle.n(),
    }
}

/// Rank over the rationals by fraction-free Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_val = rows[rank][col].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot_val;
            for c in col..ncols {
                let sub = &factor * &rows[rank][c];
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Lower bound on the number of `p = 1/2` steps via Sylvester's rank
/// inequality: each step matrix has rank `n` unless `p = 1/2` (rank `n−1`),
/// and the product of a perfect shuffle has rank 1.
///
/// Returns `n − rank(product)`, the implied minimum number of half steps.
pub fn rank_certificate(shuffle: &Shuffle) -> Result<usize> {
    if shuffle.mode() != Mode::Exact {
        return Err(Error::ModeMismatch);
    }
    let n = shuffle.n();
    let product = expected_matrix(shuffle);
    let product_rank = rational_rank(product.exact_rows().expect("exact mode"));
    let mut nullity_sum = 0usize;
    for step in shuffle.steps() {
        // rank n unless p = 1/2, where the 2×2 block ((1/2,1/2),(1/2,1/2))
        // drops the rank by one
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| step_matrix_exact(step, n)[i * n..(i + 1) * n].to_vec())
            .collect();
        let r = rational_rank(rows);
        let expected = if step.p().is_half(0.0) { n - 1 } else { n };
        debug_assert_eq!(r, expected);
        nullity_sum += n - r;
    }
    let implied = n - product_rank;
    if implied > nullity_sum {
        return Err(Error::ConstructionFailed(
            "Sylvester chain violated; inconsistent matrix ranks".into(),
        ));
    }
    Ok(implied)
}

/// Result of transporting probabilities across a braid move.
#[derive(Clone, Debug, PartialEq)]
pub enum BraidOutcome {
    /// The odds condition holds; the transported triple is `(r, q, p)`.
    Transported(Prob, Prob, Prob),
    /// `odds(p) + odds(r) ≠ odds(q)`: no transport exists inside `(0,1)`.
    ConditionViolated,
}

/// Braid probability transport: for `(1,2,p),(2,3,q),(1,2,r)` versus
/// `(2,3,p'),(1,2,q'),(2,3,r')`, equality in law inside `(0,1)` holds iff
/// `p/(1−p) + r/(1−r) = q/(1−q)`, and then `(p',q',r') = (r,q,p)`.
pub fn braid_transform(p: &Prob, q: &Prob, r: &Prob) -> Result<BraidOutcome> {
    for x in [p, q, r] {
        if x.is_zero() || x.is_one() {
            return Err(Error::BraidBoundary);
        }
    }
    let holds = match (p, q, r) {
        (Prob::Exact(_), Prob::Exact(_), Prob::Exact(_)) => {
            p.exact_odds()? + r.exact_odds()? == q.exact_odds()?
        }
        (Prob::Real(pp), Prob::Real(qq), Prob::Real(rr)) => {
            let odds = |x: f64| x / (1.0 - x);
            (odds(*pp) + odds(*rr) - odds(*qq)).abs() <= 1e-12
        }
        _ => return Err(Error::ModeMismatch),
    };
    Ok(if holds {
        BraidOutcome::Transported(r.clone(), q.clone(), p.clone())
    } else {
        BraidOutcome::ConditionViolated
    })
}

/// Per-permutation affine coefficients of `P(π_ℓ = α) = A + B·p_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidityProbe {
    n: usize,
    /// `A[rank]`, indexed by lex rank of α.
    pub a: Vec<BigRational>,
    /// `B[rank]`.
    pub b: Vec<BigRational>,
}

impl RigidityProbe {
    /// True when some `B ≠ 0`, i.e. `p_i` cannot be altered.
    pub fn is_rigid(&self) -> bool {
        self.b.iter().any(|b| !b.is_zero())
    }
}

/// Evaluates the exact distribution at `p_i = 0` and `p_i = 1` (the
/// dependence on a single probability is affine, so two points determine the
/// line) for a verified exact-mode shuffle.  `index` is 1-based.
pub fn rigidity_probe(shuffle: &Shuffle, index: usize) -> Result<RigidityProbe> {
    if shuffle.mode() != Mode::Exact {
        return Err(Error::ModeMismatch);
    }
    if index == 0 || index > shuffle.len() {
        return Err(Error::PositionOutOfRange {
            pos: index,
            n: shuffle.len(),
        });
    }
    if !is_uniform_shuffle(shuffle)? {
        return Err(Error::NotUniform);
    }
    let masses_at = |p: Prob| -> Result<Vec<BigRational>> {
        let mut steps = shuffle.steps().to_vec();
        steps[index - 1] =
            LazyTransposition::new(steps[index - 1].a(), steps[index - 1].b(), p)?;
        let altered = Shuffle::new(shuffle.n(), steps)?;
        let dist = exact_distribution(&altered)?;
        Ok(Permutation::all(shuffle.n())
            .map(|pi| {
                dist.mass_of(&pi)
                    .expect("same order")
                    .as_exact()
                    .expect("exact mode")
                    .clone()
            })
            .collect())
    };
    let a = masses_at(Prob::exact(0, 1)?)?;
    let at_one = masses_at(Prob::exact(1, 1)?)?;
    let b = at_one
        .iter()
        .zip(&a)
        .map(|(one, zero)| one - zero)
        .collect();
    Ok(RigidityProbe {
        n: shuffle.n(),
        a,
        b,
    })
}

/// Forward reachability closure: true iff every permutation arises as a
/// composition of some subsequence of the swaps.
pub fn is_permutation_network(pairs: &[(usize, usize)], n: usize) -> Result<bool> {
    if n > 8 {
        return Err(Error::ResourceGuard(format!(
            "permutation-network check capped at order 8, got {n}"
        )));
    }
    let states = factorial(n);
    let mut reachable = vec![false; states];
    reachable[Permutation::identity(n).lex_rank()] = true;
    let mut count = 1usize;
    for &(a, b) in pairs {
        Permutation::transposition(a, b, n)?;
        let swap_rank: Vec<usize> = Permutation::all(n)
            .map(|pi| pi.swap_positions(a, b).lex_rank())
            .collect();
        let snapshot = reachable.clone();
        for (rank, &r) in snapshot.iter().enumerate() {
            if r && !reachable[swap_rank[rank]] {
                reachable[swap_rank[rank]] = true;
                count += 1;
            }
        }
        if count == states {
            return Ok(true);
        }
    }
    Ok(count == states)
}

/// Exhaustive check of the trajectory characterization: `π_ℓ(n) = 1` exactly
/// on outcome vectors with `ω|_H ≡ 1`, and `P(π_ℓ(n) = 1) = ∏_{h∈H} p_h`.
pub fn trajectory_brute_check(word: &ReducedWord, probs: &[Prob]) -> Result<bool> {
    let ell = word.len();
    if ell > MAX_BRUTE_LEN {
        return Err(Error::ResourceGuard(format!(
            "outcome enumeration capped at length {MAX_BRUTE_LEN}, got {ell}"
        )));
    }
    if probs.len() != ell {
        return Err(Error::OrderMismatch(probs.len(), ell));
    }
    let n = word.n();
    let shuffle = shuffle_from_word_probs(word, probs)?;
    let h = trajectory_set(word, TrackedElement::Min);

    // all-ones vector must reach σ_ℓ = ρ
    let all_ones = OutcomeVector::new(vec![true; ell]);
    if shuffle.apply_outcome(&all_ones)? != Permutation::reverse(n) {
        return Ok(false);
    }

    let mut hit_probability_exact = BigRational::zero();
    let mut hit_probability_real = 0.0;
    let exact = probs.iter().all(|p| p.mode() == Mode::Exact);
    for omega in OutcomeVector::all(ell) {
        let pi = shuffle.apply_outcome(&omega)?;
        let reaches = pi.apply(n) == 1;
        let fires_h = h.indices().iter().all(|&i| omega.bits()[i - 1]);
        if reaches != fires_h {
            return Ok(false);
        }
        if reaches {
            if exact {
                let mut mass = BigRational::one();
                for (p, &fired) in probs.iter().zip(omega.bits()) {
                    let r = p.as_exact().unwrap();
                    mass *= if fired {
                        r.clone()
                    } else {
                        BigRational::one() - r
                    };
                }
                hit_probability_exact += mass;
            } else {
                hit_probability_real += shuffle.outcome_probability(&omega);
            }
        }
    }
    if exact {
        let mut product = BigRational::one();
        for &i in h.indices() {
            product *= probs[i - 1].as_exact().unwrap();
        }
        Ok(hit_probability_exact == product)
    } else {
        let product: f64 = h.indices().iter().map(|&i| probs[i - 1].to_f64()).product();
        Ok((hit_probability_real - product).abs() <= 1e-12)
    }
}

/// Builds the simple shuffle `(a_i, a_i+1, p_i)` from a word and explicit
/// probabilities.
pub fn shuffle_from_word_probs(word: &ReducedWord, probs: &[Prob]) -> Result<Shuffle> {
    if probs.len() != word.len() {
        return Err(Error::OrderMismatch(probs.len(), word.len()));
    }
    let steps = word
        .letters()
        .iter()
        .zip(probs)
        .map(|(&a, p)| LazyTransposition::new(a, a + 1, p.clone()))
        .collect::<Result<Vec<_>>>()?;
    Shuffle::new(word.n(), steps)
}

/// Structured verification verdict for one shuffle.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub length: usize,
    pub mode: Mode,
    pub uniform: bool,
    pub max_deviation: Prob,
    pub half_count: usize,
    pub endpoint_halves: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        let max_dev = match &self.max_deviation {
            Prob::Exact(r) => serde_json::json!({
                "num": r.numer().to_string(),
                "den": r.denom().to_string(),
            }),
            Prob::Real(x) => serde_json::json!(format!("{x:e}")),
        };
        serde_json::json!({
            "n": self.n,
            "length": self.length,
            "mode": self.mode.to_string(),
            "uniform": self.uniform,
            "max_deviation": max_dev,
            "half_count": self.half_count,
            "endpoint_halves": self.endpoint_halves,
        })
    }

    pub fn human_text(&self) -> String {
        format!(
            "order {} length {} mode {}\nuniform: {}\nmax deviation: {}\nhalf count: {}\nendpoints 1/2: {}\n",
            self.n,
            self.length,
            self.mode,
            self.uniform,
            self.max_deviation,
            self.half_count,
            self.endpoint_halves,
        )
    }
}

/// Full verification pipeline: exact distribution, uniformity verdict, and
/// half-probability accounting.
pub fn verify_shuffle(shuffle: &Shuffle, tol: f64) -> Result<VerificationReport> {
    let dist = exact_distribution(shuffle)?;
    let uniform = dist.is_uniform(tol);
    let halves = half_counts_unchecked(shuffle);
    Ok(VerificationReport {
        n: shuffle.n(),
        length: shuffle.len(),
        mode: shuffle.mode(),
        uniform,
        max_deviation: dist.max_deviation_from_uniform(),
        half_count: halves.half_count,
        endpoint_halves: halves.endpoint_halves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{simple_shuffle_from_word, simple_sweep, star_sweep};
    use crate::words::bubble_sort_word;

    fn exact(num: i64, den: i64) -> Prob {
        Prob::exact(num, den).unwrap()
    }

    fn word(n: usize, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn empty_shuffle_is_point_mass() {
        let s = Shuffle::new(3, vec![]).unwrap();
        let d = exact_distribution(&s).unwrap();
        assert_eq!(
            d.mass_of(&Permutation::identity(3)).unwrap(),
            exact(1, 1)
        );
        assert!(!d.is_uniform(0.0));
    }

    #[test]
    fn bubble_shuffle_is_exactly_uniform() {
        let s = simple_shuffle_from_word(&bubble_sort_word(5));
        let d = exact_distribution(&s).unwrap();
        assert!(d.is_uniform(0.0));
        assert_eq!(
            d.mass_of(&Permutation::reverse(5)).unwrap(),
            exact(1, 120)
        );
    }

    #[test]
    fn all_halves_is_not_uniform() {
        let w = word(3, &[1, 2, 1]);
        let probs = vec![exact(1, 2); 3];
        let s = shuffle_from_word_probs(&w, &probs).unwrap();
        assert!(!is_uniform_shuffle(&s).unwrap());
    }

    #[test]
    fn sweeps_certify() {
        for n in 2..=7 {
            assert!(is_sweep(simple_sweep(n).steps(), n).unwrap());
            assert!(is_sweep(star_sweep(n).steps(), n).unwrap());
        }
        let single = [LazyTransposition::new(1, 2, exact(1, 2)).unwrap()];
        assert!(!is_sweep(&single, 3).unwrap());
        assert!(is_sweep(&[], 1).unwrap());
    }

    #[test]
    fn expected_matrix_flat_for_shuffles() {
        let s = simple_shuffle_from_word(&bubble_sort_word(5));
        let m = expected_matrix(&s);
        assert!(m.is_flat(0.0));
        assert!(m.is_doubly_stochastic(0.0));

        let single = Shuffle::new(
            2,
            vec![LazyTransposition::new(1, 2, exact(1, 2)).unwrap()],
        )
        .unwrap();
        let m2 = expected_matrix(&single);
        assert_eq!(m2.get(1, 1), exact(1, 2));
        assert_eq!(m2.get(2, 1), exact(1, 2));
    }

    #[test]
    fn expected_matrix_consistent_with_distribution() {
        let s = simple_shuffle_from_word(&word(4, &[1, 2, 1, 3, 2, 1]));
        let m = expected_matrix(&s);
        let d = exact_distribution(&s).unwrap();
        for i in 1..=4 {
            let marg = d.position_marginal_exact(i).unwrap();
            for j in 1..=4 {
                assert_eq!(Prob::Exact(marg[j - 1].clone()), m.get(i, j));
            }
        }
    }

    #[test]
    fn half_counting() {
        let s = simple_shuffle_from_word(&bubble_sort_word(5));
        let report = half_count_check(&s).unwrap();
        assert_eq!(report.half_count, 4);
        assert!(report.endpoint_halves);
        assert!(report.theorem_consistent);

        let not_uniform = shuffle_from_word_probs(&word(3, &[1, 2, 1]), &vec![exact(1, 2); 3])
            .unwrap();
        assert!(half_count_check(&not_uniform).is_err());
    }

    #[test]
    fn rank_certificates() {
        let s = simple_shuffle_from_word(&bubble_sort_word(4));
        assert_eq!(rank_certificate(&s).unwrap(), 3);
        let s5 = simple_shuffle_from_word(&bubble_sort_word(5));
        assert_eq!(rank_certificate(&s5).unwrap(), 4);
    }

    #[test]
    fn rank_of_half_step() {
        let rows: Vec<Vec<BigRational>> = (0..3)
            .map(|i| {
                let step =
                    LazyTransposition::new(1, 2, exact(1, 2)).unwrap();
                step_matrix_exact(&step, 3)[i * 3..(i + 1) * 3].to_vec()
            })
            .collect();
        assert_eq!(rational_rank(rows), 2);
    }

    #[test]
    fn braid_transport() {
        // pinned transport instance
        let out = braid_transform(&exact(1, 2), &exact(4, 5), &exact(3, 4)).unwrap();
        assert_eq!(
            out,
            BraidOutcome::Transported(exact(3, 4), exact(4, 5), exact(1, 2))
        );
        // n = 3 simple-shuffle triple is braid-symmetric
        let out = braid_transform(&exact(1, 2), &exact(2, 3), &exact(1, 2)).unwrap();
        assert_eq!(
            out,
            BraidOutcome::Transported(exact(1, 2), exact(2, 3), exact(1, 2))
        );
        // odds 1 + 1 ≠ 1
        let out = braid_transform(&exact(1, 2), &exact(1, 2), &exact(1, 2)).unwrap();
        assert_eq!(out, BraidOutcome::ConditionViolated);
        assert!(braid_transform(&exact(0, 1), &exact(1, 2), &exact(1, 2)).is_err());
    }

    #[test]
    fn rigidity_of_simple_shuffles() {
        let s = simple_shuffle_from_word(&word(3, &[1, 2, 1]));
        for i in 1..=3 {
            let probe = rigidity_probe(&s, i).unwrap();
            assert!(probe.is_rigid());
            // total mass stays 1 for any p_i: ΣA = 1 and ΣB = 0
            let sum_a: BigRational = probe.a.iter().sum();
            let sum_b: BigRational = probe.b.iter().sum();
            assert!(sum_a.is_one());
            assert!(sum_b.is_zero());
        }
    }

    #[test]
    fn redundant_half_step_is_not_rigid() {
        let mut steps = simple_shuffle_from_word(&word(3, &[1, 2, 1]))
            .steps()
            .to_vec();
        steps.push(LazyTransposition::new(1, 2, exact(1, 2)).unwrap());
        let padded = Shuffle::new(3, steps).unwrap();
        let probe = rigidity_probe(&padded, 4).unwrap();
        assert!(!probe.is_rigid());
    }

    #[test]
    fn permutation_networks() {
        assert!(is_permutation_network(&[(1, 2), (2, 3), (1, 2)], 3).unwrap());
        assert!(is_permutation_network(&[(1, 2), (2, 3), (1, 3)], 3).unwrap());
        assert!(!is_permutation_network(&[(1, 2), (1, 2), (1, 2)], 3).unwrap());
        assert!(is_permutation_network(&[], 1).unwrap());
        assert!(is_permutation_network(&[(1, 2)], 2).unwrap());
    }

    #[test]
    fn trajectory_brute() {
        let w3 = word(3, &[1, 2, 1]);
        let probs = vec![exact(1, 2), exact(2, 3), exact(1, 2)];
        assert!(trajectory_brute_check(&w3, &probs).unwrap());
        // wrong probabilities still satisfy the support characterization
        let skew = vec![exact(1, 3), exact(1, 5), exact(1, 7)];
        assert!(trajectory_brute_check(&w3, &skew).unwrap());
    }

    #[test]
    fn verify_report_round() {
        let s = simple_shuffle_from_word(&word(3, &[2, 1, 2]));
        let report = verify_shuffle(&s, 0.0).unwrap();
        assert!(report.uniform);
        assert_eq!(report.half_count, 2);
        assert!(report.endpoint_halves);
        assert!(report.max_deviation.is_zero());
    }
}
