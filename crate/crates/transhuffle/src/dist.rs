//! Dense distributions over `S_n` and their evolution under lazy
//! transpositions.
//!
//! Masses are indexed by the lexicographic rank of one-line notation.  Exact
//! mode caps the order at `n ≤ 8` (8! = 40320 states).

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::prob::{Mode, Prob};
use crate::shuffle::LazyTransposition;

pub const MAX_EXACT_ORDER: usize = 8;
pub const MAX_REAL_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq)]
enum Mass {
    Exact(Vec<BigRational>),
    Real(Vec<f64>),
}

/// The full law of a random permutation of order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDistribution {
    n: usize,
    mass: Mass,
}

fn guard(n: usize, mode: Mode) -> Result<()> {
    let cap = match mode {
        Mode::Exact => MAX_EXACT_ORDER,
        Mode::Real => MAX_REAL_ORDER,
    };
    if n > cap {
        return Err(Error::ResourceGuard(format!(
            "order {n} exceeds {mode}-mode distribution cap {cap}"
        )));
    }
    Ok(())
}

impl ExactDistribution {
    /// All mass on the identity.
    pub fn point_mass_at_identity(n: usize, mode: Mode) -> Result<Self> {
        Self::point_mass(&Permutation::identity(n), mode)
    }

    pub fn point_mass(pi: &Permutation, mode: Mode) -> Result<Self> {
        let n = pi.n();
        guard(n, mode)?;
        let states = factorial(n);
        let rank = pi.lex_rank();
        let mass = match mode {
            Mode::Exact => {
                let mut v = vec![BigRational::zero(); states];
                v[rank] = BigRational::one();
                Mass::Exact(v)
            }
            Mode::Real => {
                let mut v = vec![0.0; states];
                v[rank] = 1.0;
                Mass::Real(v)
            }
        };
        Ok(ExactDistribution { n, mass })
    }

    pub fn uniform(n: usize, mode: Mode) -> Result<Self> {
        guard(n, mode)?;
        let states = factorial(n);
        let mass = match mode {
            Mode::Exact => Mass::Exact(vec![
                BigRational::new(1.into(), (states as i64).into());
                states
            ]),
            Mode::Real => Mass::Real(vec![1.0 / states as f64; states]),
        };
        Ok(ExactDistribution { n, mass })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        match self.mass {
            Mass::Exact(_) => Mode::Exact,
            Mass::Real(_) => Mode::Real,
        }
    }

    pub fn states(&self) -> usize {
        factorial(self.n)
    }

    /// Mass of a single permutation.
    pub fn mass_of(&self, pi: &Permutation) -> Result<Prob> {
        if pi.n() != self.n {
            return Err(Error::OrderMismatch(pi.n(), self.n));
        }
        let rank = pi.lex_rank();
        Ok(match &self.mass {
            Mass::Exact(v) => Prob::Exact(v[rank].clone()),
            Mass::Real(v) => Prob::Real(v[rank]),
        })
    }

    /// One evolution step: `new(σ) = (1 − p)·old(σ) + p·old(σ·t(a, b))`.
    pub fn evolve(&self, step: &LazyTransposition) -> Result<Self> {
        step.check_order(self.n)?;
        if step.mode() != self.mode() {
            return Err(Error::ModeMismatch);
        }
        // σ·t(a,b) swaps the entries at positions a, b; pair up states.
        let swap_rank: Vec<usize> = Permutation::all(self.n)
            .map(|pi| pi.swap_positions(step.a(), step.b()).lex_rank())
            .collect();
        let mass = match (&self.mass, step.p()) {
            (Mass::Exact(v), Prob::Exact(p)) => {
                let q = BigRational::one() - p;
                Mass::Exact(
                    v.iter()
                        .enumerate()
                        .map(|(i, m)| &q * m + p * &v[swap_rank[i]])
                        .collect(),
                )
            }
            (Mass::Real(v), Prob::Real(p)) => Mass::Real(
                v.iter()
                    .enumerate()
                    .map(|(i, m)| (1.0 - p) * m + p * v[swap_rank[i]])
                    .collect(),
            ),
            _ => return Err(Error::ModeMismatch),
        };
        Ok(ExactDistribution { n: self.n, mass })
    }

    /// Total mass; exactly 1 in exact mode for any well-formed distribution.
    pub fn total_mass(&self) -> Prob {
        match &self.mass {
            Mass::Exact(v) => Prob::Exact(v.iter().sum()),
            Mass::Real(v) => Prob::Real(v.iter().sum()),
        }
    }

    /// `max_σ |mass(σ) − 1/n!|` as an exact rational or a float.
    pub fn max_deviation_from_uniform(&self) -> Prob {
        let states = self.states();
        match &self.mass {
            Mass::Exact(v) => {
                let u = BigRational::new(1.into(), (states as i64).into());
                let dev = v
                    .iter()
                    .map(|m| (m - &u).abs())
                    .max()
                    .unwrap_or_else(BigRational::zero);
                Prob::Exact(dev)
            }
            Mass::Real(v) => {
                let u = 1.0 / states as f64;
                let dev = v.iter().map(|m| (m - u).abs()).fold(0.0, f64::max);
                Prob::Real(dev)
            }
        }
    }

    /// Exact mode: every mass equals `1/n!` exactly (tol ignored).
    /// Real mode: max deviation at most `tol`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        match self.max_deviation_from_uniform() {
            Prob::Exact(dev) => dev.is_zero(),
            Prob::Real(dev) => dev <= tol,
        }
    }

    /// Marginal `P(π(pos) = v)` for all `v`, as floats.
    pub fn position_marginal_f64(&self, pos: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (rank, pi) in Permutation::all(self.n).enumerate() {
            let v = pi.apply(pos);
            out[v - 1] += match &self.mass {
                Mass::Exact(m) => m[rank].to_f64().unwrap(),
                Mass::Real(m) => m[rank],
            };
        }
        out
    }

    /// Marginal `P(π(pos) = v)` in exact mode.
    pub fn position_marginal_exact(&self, pos: usize) -> Result<Vec<BigRational>> {
        let Mass::Exact(m) = &self.mass else {
            return Err(Error::ModeMismatch);
        };
        let mut out = vec![BigRational::zero(); self.n];
        for (rank, pi) in Permutation::all(self.n).enumerate() {
            let v = pi.apply(pos);
            out[v - 1] += &m[rank];
        }
        Ok(out)
    }

    /// Masses as floats in lex-rank order.
    pub fn masses_f64(&self) -> Vec<f64> {
        match &self.mass {
            Mass::Exact(v) => v.iter().map(|m| m.to_f64().unwrap()).collect(),
            Mass::Real(v) => v.clone(),
        }
    }
}
