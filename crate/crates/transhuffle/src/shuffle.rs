//! Lazy transpositions, shuffles, and outcome vectors.
//!
//! A lazy transposition with parameters `(a, b, p)` equals the swap `t(a, b)`
//! with probability `p` and the identity otherwise.  A shuffle is an ordered
//! sequence of independent lazy transpositions; it is perfect when the
//! composition `T_1 ⋯ T_ℓ` is uniform on `S_n`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::prob::{Mode, Prob};

/// Parameters `(a, b, p)` with canonical orientation `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LazyTransposition {
    a: usize,
    b: usize,
    p: Prob,
}

impl LazyTransposition {
    /// Inputs with `a > b` are normalized; `a == b` is rejected.
    pub fn new(a: usize, b: usize, p: Prob) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateTransposition(a));
        }
        if a == 0 || b == 0 {
            return Err(Error::PositionOutOfRange { pos: 0, n: 0 });
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(LazyTransposition { a, b, p })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn p(&self) -> &Prob {
        &self.p
    }

    pub fn mode(&self) -> Mode {
        self.p.mode()
    }

    pub fn check_order(&self, n: usize) -> Result<()> {
        if self.b > n {
            return Err(Error::PositionOutOfRange { pos: self.b, n });
        }
        Ok(())
    }
}

/// An ordered sequence of lazy transpositions of `S_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Shuffle {
    n: usize,
    steps: Vec<LazyTransposition>,
}

impl Shuffle {
    /// All steps must fit inside order `n` and share one probability mode.
    pub fn new(n: usize, steps: Vec<LazyTransposition>) -> Result<Self> {
        let mut mode = None;
        for step in &steps {
            step.check_order(n)?;
            match mode {
                None => mode = Some(step.mode()),
                Some(m) if m != step.mode() => return Err(Error::ModeMismatch),
                _ => {}
            }
        }
        Ok(Shuffle { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[LazyTransposition] {
        &self.steps
    }

    /// Probability mode of the steps; an empty shuffle defaults to exact.
    pub fn mode(&self) -> Mode {
        self.steps.first().map_or(Mode::Exact, |s| s.mode())
    }

    /// The deterministic composition `t(a_1, b_1) ⋯ t(a_ℓ, b_ℓ)` (all steps fire).
    pub fn deterministic_composition(&self) -> Permutation {
        let mut sigma = Permutation::identity(self.n);
        for step in &self.steps {
            sigma = sigma.swap_positions(step.a, step.b);
        }
        sigma
    }

    /// Applies the steps selected by `outcome`, in order.
    pub fn apply_outcome(&self, outcome: &OutcomeVector) -> Result<Permutation> {
        if outcome.len() != self.len() {
            return Err(Error::OrderMismatch(outcome.len(), self.len()));
        }
        let mut pi = Permutation::identity(self.n);
        for (step, &fired) in self.steps.iter().zip(outcome.bits()) {
            if fired {
                pi = pi.swap_positions(step.a, step.b);
            }
        }
        Ok(pi)
    }

    /// Probability of drawing a particular outcome vector, as `f64`.
    pub fn outcome_probability(&self, outcome: &OutcomeVector) -> f64 {
        self.steps
            .iter()
            .zip(outcome.bits())
            .map(|(step, &fired)| {
                let p = step.p.to_f64();
                if fired {
                    p
                } else {
                    1.0 - p
                }
            })
            .product()
    }

    /// Draws one permutation; deterministic for a fixed seed.
    pub fn sample(&self, seed: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with_rng(&mut rng)
    }

    pub fn sample_with_rng<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut pi = Permutation::identity(self.n);
        for step in &self.steps {
            if rng.gen_bool(step.p.to_f64()) {
                pi = pi.swap_positions(step.a, step.b);
            }
        }
        pi
    }
}

/// A vector `ω ∈ {0,1}^ℓ`; `ω_i = 1` means step `i` fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeVector {
    bits: Vec<bool>,
}

impl OutcomeVector {
    pub fn new(bits: Vec<bool>) -> Self {
        OutcomeVector { bits }
    }

    /// Outcome vector from the low `len` bits of `mask` (bit `i` is `ω_{i+1}`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        OutcomeVector {
            bits: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Enumerates all `2^len` outcome vectors.
    pub fn all(len: usize) -> impl Iterator<Item = OutcomeVector> {
        assert!(len < 64, "outcome enumeration limited to length < 64");
        (0u64..1 << len).map(move |mask| OutcomeVector::from_mask(mask, len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_step(a: usize, b: usize) -> LazyTransposition {
        LazyTransposition::new(a, b, Prob::exact(1, 2).unwrap()).unwrap()
    }

    #[test]
    fn orientation_normalized() {
        let s = LazyTransposition::new(4, 2, Prob::exact(1, 3).unwrap()).unwrap();
        assert_eq!((s.a(), s.b()), (2, 4));
        assert!(LazyTransposition::new(3, 3, Prob::exact(1, 2).unwrap()).is_err());
    }

    #[test]
    fn mixed_modes_rejected() {
        let e = LazyTransposition::new(1, 2, Prob::exact(1, 2).unwrap()).unwrap();
        let r = LazyTransposition::new(2, 3, Prob::real(0.5).unwrap()).unwrap();
        assert!(Shuffle::new(3, vec![e, r]).is_err());
    }

    #[test]
    fn out_of_range_step_rejected() {
        assert!(Shuffle::new(3, vec![half_step(2, 4)]).is_err());
    }

    #[test]
    fn empty_shuffle_samples_identity() {
        let s = Shuffle::new(4, vec![]).unwrap();
        assert!(s.sample(7).is_identity());
    }

    #[test]
    fn all_ones_gives_deterministic_composition() {
        let steps = vec![
            LazyTransposition::new(1, 2, Prob::exact(1, 1).unwrap()).unwrap(),
            LazyTransposition::new(2, 3, Prob::exact(1, 1).unwrap()).unwrap(),
        ];
        let s = Shuffle::new(3, steps).unwrap();
        assert_eq!(s.sample(0), s.deterministic_composition());
        let all = OutcomeVector::new(vec![true, true]);
        assert_eq!(s.apply_outcome(&all).unwrap(), s.deterministic_composition());
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let s = Shuffle::new(3, vec![half_step(1, 2), half_step(2, 3)]).unwrap();
        assert_eq!(s.sample(42), s.sample(42));
    }

    #[test]
    fn outcome_enumeration() {
        let all: Vec<_> = OutcomeVector::all(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[5].bits(), &[true, false, true]);
    }
}
