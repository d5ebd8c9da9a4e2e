//! Evidence-grade search for minimum-length transposition shuffles:
//! canonical network enumeration with symmetry pruning and multilinear
//! least-squares feasibility solving.
//!
//! Infeasibility verdicts are heuristic evidence, never proof: the solver
//! cannot certify that no probability assignment exists.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::prob::Prob;
use crate::shuffle::{LazyTransposition, Shuffle};
use crate::verify;
use crate::words::ReducedWord;

/// `⌈log2 n!⌉`: a composition of `ℓ` lazy transpositions takes at most `2^ℓ`
/// values.
pub fn counting_lower_bound(n: usize) -> usize {
    let f = (1..=n as u128).product::<u128>().max(1);
    let bits = 128 - f.leading_zeros() as usize;
    if f.is_power_of_two() {
        bits - 1
    } else {
        bits
    }
}

/// A probability-free transposition network candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetworkCandidate {
    n: usize,
    pairs: Vec<(usize, usize)>,
    canonical: bool,
}

impl NetworkCandidate {
    /// Pairs are normalized to `a < b`; `a == b` is rejected.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a == b {
                return Err(Error::DegenerateTransposition(a));
            }
            for pos in [a, b] {
                if pos == 0 || pos > n {
                    return Err(Error::PositionOutOfRange { pos, n });
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        let canonical = canonical_form(n, &normalized) == normalized;
        Ok(NetworkCandidate {
            n,
            pairs: normalized,
            canonical,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Whether this candidate is the canonical representative of its orbit.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn canonical_form(&self) -> Vec<(usize, usize)> {
        canonical_form(self.n, &self.pairs)
    }

    /// All adjacent pairs `b = a + 1`.
    pub fn is_simple(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| b == a + 1)
    }
}

fn transform(
    pairs: &[(usize, usize)],
    relabel: &Permutation,
    reverse: bool,
) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (relabel.apply(a), relabel.apply(b));
            (x.min(y), x.max(y))
        })
        .collect();
    if reverse {
        out.reverse();
    }
    out
}

/// Lexicographic minimum over sequence reversal × global position relabeling.
/// Both maps preserve feasibility: the reversed composition is the inverse of
/// the original (uniform iff the original is), and relabeling conjugates by a
/// fixed permutation.
pub fn canonical_form(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for relabel in Permutation::all(n) {
        for reverse in [false, true] {
            let t = transform(pairs, &relabel, reverse);
            if best.as_ref().map_or(true, |b| t < *b) {
                best = Some(t);
            }
        }
    }
    best.unwrap_or_default()
}

/// Whether the multigraph on `1..=n` with the pair edges is connected.
fn transposition_graph_connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut component: Vec<usize> = (0..=n).collect();
    fn find(component: &mut Vec<usize>, mut x: usize) -> usize {
        while component[x] != x {
            component[x] = component[component[x]];
            x = component[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut component, a), find(&mut component, b));
        component[ra] = rb;
    }
    let root = find(&mut component, 1);
    (2..=n).all(|v| find(&mut component, v) == root)
}

fn static_prune(cand: &NetworkCandidate) -> Result<bool> {
    Ok(transposition_graph_connected(cand.n, &cand.pairs)
        && verify::is_permutation_network(&cand.pairs, cand.n)?)
}

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// All canonical candidates of the given length passing static pruning:
/// permutation-network reachability, transposition-graph connectivity, and no
/// immediately repeated identical pair.
pub fn enumerate_networks(n: usize, ell: usize, budget: u64) -> Result<Vec<NetworkCandidate>> {
    if ell < counting_lower_bound(n) {
        return Ok(vec![]);
    }
    let all_pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let raw = (all_pairs.len() as u64).checked_pow(ell as u32);
    if raw.map_or(true, |r| r > budget) {
        return Err(Error::ResourceGuard(format!(
            "{}^{ell} sequences exceed enumeration budget {budget}",
            all_pairs.len()
        )));
    }
    let mut out = Vec::new();
    let mut seq: Vec<(usize, usize)> = Vec::with_capacity(ell);
    fn dfs(
        n: usize,
        ell: usize,
        all_pairs: &[(usize, usize)],
        seq: &mut Vec<(usize, usize)>,
        out: &mut Vec<NetworkCandidate>,
    ) -> Result<()> {
        if seq.len() == ell {
            let cand = NetworkCandidate::new(n, seq.clone())?;
            if cand.is_canonical() && static_prune(&cand)? {
                out.push(cand);
            }
            return Ok(());
        }
        for &pair in all_pairs {
            if seq.last() == Some(&pair) {
                continue; // an immediately repeated pair merges into one step
            }
            seq.push(pair);
            dfs(n, ell, all_pairs, seq, out)?;
            seq.pop();
        }
        Ok(())
    }
    dfs(n, ell, &all_pairs, &mut seq, &mut out)?;
    Ok(out)
}

/// A seeded random draw of distinct canonical candidates, for lengths whose
/// full enumeration exceeds the budget.
pub fn sample_networks(
    n: usize,
    ell: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<NetworkCandidate>> {
    if ell < counting_lower_bound(n) {
        return Ok(vec![]);
    }
    let all_pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let mut seq = Vec::with_capacity(ell);
        for _ in 0..ell {
            loop {
                let pair = all_pairs[rng.gen_range(0..all_pairs.len())];
                if seq.last() != Some(&pair) {
                    seq.push(pair);
                    break;
                }
            }
        }
        let canon = canonical_form(n, &seq);
        if !seen.insert(canon.clone()) {
            continue;
        }
        let cand = NetworkCandidate::new(n, canon)?;
        if static_prune(&cand)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Solver verdict for one candidate.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Feasible(FeasibleSolution),
    /// No restart reached the residual target; evidence only.
    Infeasible { best_residual: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibleSolution {
    pub probs: Vec<f64>,
    /// Continued-fraction reconstruction, present only when it re-verifies
    /// exactly.
    pub rational_probs: Option<Vec<BigRational>>,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restarts: 64,
            tol: 1e-9,
            seed: 0,
        }
    }
}

pub const RATIONAL_DENOMINATOR_BOUND: u64 = 10_000;

/// Best continued-fraction approximation with bounded denominator; `None`
/// when no convergent lands within `1e-8`.
fn reconstruct_rational(x: f64, max_den: u64) -> Option<BigRational> {
    let mut value = x;
    let (mut h0, mut k0, mut h1, mut k1) = (1i64, 0i64, 0i64, 1i64);
    for _ in 0..64 {
        let a = value.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i64;
        let (h2, k2) = (ai * h0 + h1, ai * k0 + k1);
        if k2 as u64 > max_den {
            break;
        }
        (h1, k1, h0, k0) = (h0, k0, h2, k2);
        let frac = value - a;
        if frac.abs() < 1e-12 {
            break;
        }
        value = 1.0 / frac;
    }
    if k0 == 0 {
        return None;
    }
    let approx = h0 as f64 / k0 as f64;
    if (approx - x).abs() <= 1e-8 {
        Some(BigRational::new(BigInt::from(h0), BigInt::from(k0)))
    } else {
        None
    }
}

/// Forward evaluator for the distribution of a fixed network as a function
/// of its probability vector.
struct Evaluator {
    states: usize,
    swap_ranks: Vec<Vec<usize>>,
    uniform: f64,
}

impl Evaluator {
    fn new(cand: &NetworkCandidate) -> Self {
        let n = cand.n;
        let states = factorial(n);
        let swap_ranks = cand
            .pairs
            .iter()
            .map(|&(a, b)| {
                Permutation::all(n)
                    .map(|pi| pi.swap_positions(a, b).lex_rank())
                    .collect()
            })
            .collect();
        Evaluator {
            states,
            swap_ranks,
            uniform: 1.0 / states as f64,
        }
    }

    fn final_dist(&self, probs: &[f64]) -> Vec<f64> {
        let mut mass = vec![0.0; self.states];
        mass[0] = 1.0; // identity has lex rank 0
        for (p, swaps) in probs.iter().zip(&self.swap_ranks) {
            let prev = mass.clone();
            for (i, m) in mass.iter_mut().enumerate() {
                *m = (1.0 - p) * prev[i] + p * prev[swaps[i]];
            }
        }
        mass
    }

    fn final_dist_with(&self, probs: &[f64], index: usize, value: f64) -> Vec<f64> {
        let mut local = probs.to_vec();
        local[index] = value;
        self.final_dist(&local)
    }

    fn residual(&self, probs: &[f64]) -> Vec<f64> {
        self.final_dist(probs)
            .into_iter()
            .map(|m| m - self.uniform)
            .collect()
    }

    fn objective(&self, probs: &[f64]) -> f64 {
        self.residual(probs).iter().map(|r| r * r).sum()
    }

    /// Column `i` is the exact derivative `∂mass/∂p_i`, computed from the
    /// affine dependence via evaluations at `p_i = 0` and `p_i = 1`.
    fn jacobian(&self, probs: &[f64]) -> Vec<Vec<f64>> {
        (0..probs.len())
            .map(|i| {
                let at_zero = self.final_dist_with(probs, i, 0.0);
                let at_one = self.final_dist_with(probs, i, 1.0);
                at_one
                    .into_iter()
                    .zip(at_zero)
                    .map(|(one, zero)| one - zero)
                    .collect()
            })
            .collect()
    }
}

/// Gaussian elimination with partial pivoting for the ℓ×ℓ normal equations.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= factor * a[col][c];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Projected Gauss–Newton with Levenberg damping on the box `[0, 1]^ℓ`.
fn solve_from(eval: &Evaluator, start: &[f64], tol_sq: f64) -> (Vec<f64>, f64) {
    let ell = start.len();
    let mut p = start.to_vec();
    let mut f = eval.objective(&p);
    let mut lambda = 1e-6;
    for _ in 0..200 {
        if f <= tol_sq {
            break;
        }
        let r = eval.residual(&p);
        let jac = eval.jacobian(&p);
        // normal equations JᵀJ δ = −Jᵀr
        let mut jtj = vec![vec![0.0; ell]; ell];
        let mut jtr = vec![0.0; ell];
        for i in 0..ell {
            for j in i..ell {
                let dot: f64 = jac[i].iter().zip(&jac[j]).map(|(x, y)| x * y).sum();
                jtj[i][j] = dot;
                jtj[j][i] = dot;
            }
            jtr[i] = -jac[i].iter().zip(&r).map(|(x, y)| x * y).sum::<f64>();
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut damped = jtj.clone();
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] += lambda * (1.0 + jtj[i][i]);
            }
            let Some(delta) = solve_linear(damped, jtr.clone()) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = p
                .iter()
                .zip(&delta)
                .map(|(x, d)| (x + d).clamp(0.0, 1.0))
                .collect();
            let trial_f = eval.objective(&trial);
            if trial_f < f {
                let step: f64 = trial
                    .iter()
                    .zip(&p)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                p = trial;
                f = trial_f;
                lambda = (lambda / 3.0).max(1e-14);
                improved = true;
                if step < 1e-15 {
                    return (p, f);
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (p, f)
}

/// Seed derived from the simple-shuffle construction, transported through a
/// symmetry of the candidate when some relabeling/reversal of it is a simple
/// network on a reduced word.  Per-step probabilities are invariant under
/// both maps.
fn construction_seed(cand: &NetworkCandidate) -> Option<Vec<f64>> {
    let n = cand.n;
    for relabel in Permutation::all(n) {
        for reverse in [false, true] {
            let image = transform(&cand.pairs, &relabel, reverse);
            if !image.iter().all(|&(a, b)| b == a + 1) {
                continue;
            }
            let letters: Vec<usize> = image.iter().map(|&(a, _)| a).collect();
            let Ok(word) = ReducedWord::new(n, letters) else {
                continue;
            };
            let shuffle = crate::constructions::simple_shuffle_from_word(&word);
            let mut probs: Vec<f64> =
                shuffle.steps().iter().map(|s| s.p().to_f64()).collect();
            if reverse {
                probs.reverse();
            }
            return Some(probs);
        }
    }
    None
}

/// Domain restriction from the endpoint theorem: at the conjectured minimum
/// length, `p_1 = p_ℓ = 1/2` and at least `n−1` coordinates equal `1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedDomain {
    /// 1-based coordinates fixed to 1/2.
    pub fixed_half: Vec<usize>,
    pub min_half_count: usize,
}

pub fn endpoint_prune(cand: &NetworkCandidate) -> PrunedDomain {
    let fixed_half = if cand.is_empty() {
        vec![]
    } else if cand.len() == 1 {
        vec![1]
    } else {
        vec![1, cand.len()]
    };
    PrunedDomain {
        fixed_half,
        min_half_count: cand.n.saturating_sub(1),
    }
}

impl PrunedDomain {
    /// Post-hoc filter on a candidate solution.
    pub fn admits(&self, probs: &[f64], tol: f64) -> bool {
        self.fixed_half
            .iter()
            .all(|&i| (probs[i - 1] - 0.5).abs() <= tol)
            && probs.iter().filter(|p| (*p - 0.5).abs() <= tol).count() >= self.min_half_count
    }
}

/// Multi-start projected Gauss–Newton feasibility solve.  A feasible verdict
/// is only returned after the solution re-verifies: exactly via rational
/// reconstruction, or at tolerance 1e−10 in real mode.
pub fn feasibility_solve(cand: &NetworkCandidate, opts: &SolveOptions) -> Result<Verdict> {
    let ell = cand.len();
    if ell == 0 {
        return Ok(if cand.n <= 1 {
            Verdict::Feasible(FeasibleSolution {
                probs: vec![],
                rational_probs: Some(vec![]),
                residual: 0.0,
            })
        } else {
            Verdict::Infeasible { best_residual: 1.0 }
        });
    }
    let eval = Evaluator::new(cand);
    let tol_sq = opts.tol * opts.tol;
    let prune = endpoint_prune(cand);

    let mut seeds: Vec<Vec<f64>> = vec![vec![0.5; ell]];
    if let Some(seed) = construction_seed(cand) {
        seeds.push(seed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ hash_pairs(&cand.pairs));
    while seeds.len() < opts.restarts {
        let mut s: Vec<f64> = (0..ell).map(|_| rng.gen_range(0.02..0.98)).collect();
        // endpoint heuristic on every other random restart
        if seeds.len() % 2 == 0 {
            for &i in &prune.fixed_half {
                s[i - 1] = 0.5;
            }
        }
        seeds.push(s);
    }

    let mut best_residual = f64::INFINITY;
    for seed in &seeds {
        let (probs, f) = solve_from(&eval, seed, tol_sq);
        best_residual = best_residual.min(f);
        if f >= tol_sq {
            continue;
        }
        if let Some(solution) = reverify(cand, &probs, f)? {
            return Ok(Verdict::Feasible(solution));
        }
    }
    Ok(Verdict::Infeasible { best_residual })
}

fn hash_pairs(pairs: &[(usize, usize)]) -> u64 {
    let mut acc = 0xcbf2_9ce4_8422_2325u64;
    for &(a, b) in pairs {
        for v in [a as u64, b as u64] {
            acc ^= v;
            acc = acc.wrapping_mul(0x1000_0000_01b3);
        }
    }
    acc
}

/// Exact re-verification via rational reconstruction, falling back to
/// real-mode verification at 1e−10.
fn reverify(
    cand: &NetworkCandidate,
    probs: &[f64],
    residual: f64,
) -> Result<Option<FeasibleSolution>> {
    let rationals: Option<Vec<BigRational>> = probs
        .iter()
        .map(|&p| reconstruct_rational(p, RATIONAL_DENOMINATOR_BOUND))
        .collect();
    if let Some(rationals) = rationals {
        if rationals
            .iter()
            .all(|r| !r.is_negative() && *r <= BigRational::from(BigInt::from(1)))
        {
            let steps: Result<Vec<LazyTransposition>> = cand
                .pairs
                .iter()
                .zip(&rationals)
                .map(|(&(a, b), r)| {
                    LazyTransposition::new(a, b, Prob::from_rational(r.clone())?)
                })
                .collect();
            if let Ok(steps) = steps {
                let shuffle = Shuffle::new(cand.n, steps)?;
                if verify::exact_distribution(&shuffle)?.is_uniform(0.0) {
                    let probs = rationals.iter().map(|r| r.to_f64().unwrap()).collect();
                    return Ok(Some(FeasibleSolution {
                        probs,
                        rational_probs: Some(rationals),
                        residual,
                    }));
                }
            }
        }
    }
    let steps: Result<Vec<LazyTransposition>> = cand
        .pairs
        .iter()
        .zip(probs)
        .map(|(&(a, b), &p)| LazyTransposition::new(a, b, Prob::real(p.clamp(0.0, 1.0))?))
        .collect();
    let shuffle = Shuffle::new(cand.n, steps?)?;
    if verify::exact_distribution(&shuffle)?.is_uniform(1e-10) {
        return Ok(Some(FeasibleSolution {
            probs: probs.to_vec(),
            rational_probs: None,
            residual,
        }));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurveyStatus {
    /// Every canonical candidate was solved with the full restart budget.
    Exhaustive,
    /// Sampled or truncated; absence of solutions is evidence, not proof.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibleEntry {
    pub pairs: Vec<(usize, usize)>,
    pub probs: Vec<f64>,
    /// `num/den` strings when the solution re-verified exactly.
    pub rational: Option<Vec<String>>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSurvey {
    pub ell: usize,
    pub networks_examined: usize,
    pub feasible_found: Vec<FeasibleEntry>,
    pub infeasible_count: usize,
    pub status: SurveyStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub lengths: Vec<LengthSurvey>,
}

#[derive(Clone, Debug)]
pub struct SurveyOptions {
    pub solve: SolveOptions,
    pub budget: u64,
    /// Cap on candidates per length; exceeding it switches to seeded
    /// sampling and a heuristic status.
    pub max_candidates: Option<usize>,
    /// Append-only JSONL checkpoint; solved candidates found here are
    /// skipped on resume.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            solve: SolveOptions::default(),
            budget: DEFAULT_ENUMERATION_BUDGET,
            max_candidates: None,
            checkpoint: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    n: usize,
    ell: usize,
    pairs: Vec<(usize, usize)>,
    feasible: Option<FeasibleEntry>,
    best_residual: f64,
}

fn load_checkpoint(path: &PathBuf) -> Vec<CheckpointLine> {
    let Ok(file) = std::fs::File::open(path) else {
        return vec![];
    };
    std::io::BufReader::new(file)
        .lines()
        .map_while(|l| l.ok())
        .filter_map(|l| serde_json::from_str(&l).ok())
        .collect()
}

fn feasible_entry(cand: &NetworkCandidate, sol: &FeasibleSolution) -> FeasibleEntry {
    FeasibleEntry {
        pairs: cand.pairs.clone(),
        probs: sol.probs.clone(),
        rational: sol
            .rational_probs
            .as_ref()
            .map(|rs| rs.iter().map(|r| r.to_string()).collect()),
        residual: sol.residual,
    }
}

/// Runs enumerate + solve across a length range.  Candidate-level
/// parallelism with a deterministic merged order; never claims proof of
/// infeasibility.
pub fn minimum_length_survey(
    n: usize,
    lmin: usize,
    lmax: usize,
    opts: &SurveyOptions,
) -> Result<SearchReport> {
    let done: Vec<CheckpointLine> = opts
        .checkpoint
        .as_ref()
        .map(load_checkpoint)
        .unwrap_or_default();
    let checkpoint_file = opts
        .checkpoint
        .as_ref()
        .map(|p| {
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
        })
        .transpose()
        .map_err(|e| Error::Document(format!("checkpoint: {e}")))?
        .map(std::sync::Mutex::new);

    let mut lengths = Vec::new();
    for ell in lmin..=lmax {
        let (candidates, mut status) = match enumerate_networks(n, ell, opts.budget) {
            Ok(c) => (c, SurveyStatus::Exhaustive),
            Err(Error::ResourceGuard(_)) => {
                let count = opts.max_candidates.ok_or_else(|| {
                    Error::ResourceGuard(format!(
                        "length {ell} exceeds the enumeration budget; set a sampling cap"
                    ))
                })?;
                (
                    sample_networks(n, ell, count, opts.solve.seed)?,
                    SurveyStatus::Heuristic,
                )
            }
            Err(e) => return Err(e),
        };
        let candidates = if let Some(cap) = opts.max_candidates {
            if candidates.len() > cap {
                status = SurveyStatus::Heuristic;
                candidates.into_iter().take(cap).collect()
            } else {
                candidates
            }
        } else {
            candidates
        };
        let networks_examined = candidates.len();

        let mut results: Vec<(NetworkCandidate, Option<FeasibleEntry>)> = candidates
            .into_par_iter()
            .map(|cand| {
                if let Some(line) = done
                    .iter()
                    .find(|d| d.n == n && d.ell == ell && d.pairs == cand.pairs)
                {
                    return Ok((cand, line.feasible.clone()));
                }
                let verdict = feasibility_solve(&cand, &opts.solve)?;
                let (feasible, best_residual) = match &verdict {
                    Verdict::Feasible(sol) => {
                        (Some(feasible_entry(&cand, sol)), sol.residual)
                    }
                    Verdict::Infeasible { best_residual } => (None, *best_residual),
                };
                if let Some(file) = &checkpoint_file {
                    let line = CheckpointLine {
                        n,
                        ell,
                        pairs: cand.pairs.clone(),
                        feasible: feasible.clone(),
                        best_residual,
                    };
                    let mut guard = file.lock().unwrap();
                    let _ = writeln!(guard, "{}", serde_json::to_string(&line).unwrap());
                }
                Ok((cand, feasible))
            })
            .collect::<Result<Vec<_>>>()?;
        results.sort_by(|a, b| a.0.pairs.cmp(&b.0.pairs));

        let feasible_found: Vec<FeasibleEntry> = results
            .iter()
            .filter_map(|(_, f)| f.clone())
            .collect();
        let infeasible_count = networks_examined - feasible_found.len();
        lengths.push(LengthSurvey {
            ell,
            networks_examined,
            feasible_found,
            infeasible_count,
            status,
        });
    }
    Ok(SearchReport { n, lengths })
}
