//! Permutations of `{1, …, n}` in one-line notation, 1-based throughout.
//!
//! Composition follows the convention `(στ)(i) = σ(τ(i))`.

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` stored as its one-line image: `image[i-1] = π(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n as u8).collect(),
        }
    }

    /// The reverse permutation `ρ = [n, …, 1]`.
    pub fn reverse(n: usize) -> Self {
        Permutation {
            image: (1..=n as u8).rev().collect(),
        }
    }

    /// Builds a permutation from a one-line image, checking bijectivity.
    pub fn from_image(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::NotAPermutation(image, n));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { image })
    }

    /// The transposition `t(a, b)` in `S_n`.
    pub fn transposition(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateTransposition(a));
        }
        for pos in [a, b] {
            if pos == 0 || pos > n {
                return Err(Error::PositionOutOfRange { pos, n });
            }
        }
        let mut p = Permutation::identity(n);
        p.image.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `π(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.image
    }

    /// `π^{-1}(v)`: the position holding element `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.image.iter().position(|&x| x as usize == v).unwrap() + 1
    }

    /// `(στ)(i) = σ(τ(i))` with `self` as `σ`.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation> {
        if self.n() != tau.n() {
            return Err(Error::OrderMismatch(self.n(), tau.n()));
        }
        let image = tau
            .image
            .iter()
            .map(|&t| self.image[t as usize - 1])
            .collect();
        Ok(Permutation { image })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { image }
    }

    /// `self · t(a, b)`: swaps the entries at positions `a` and `b`.
    pub fn swap_positions(&self, a: usize, b: usize) -> Permutation {
        let mut image = self.image.clone();
        image.swap(a - 1, b - 1);
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Lexicographic rank of the one-line notation among all n! permutations.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0usize;
        let mut fact = factorial(n);
        let mut used = vec![false; n + 1];
        for (i, &v) in self.image.iter().enumerate() {
            fact /= n - i;
            let smaller = (1..v as usize).filter(|&u| !used[u]).count();
            rank += smaller * fact;
            used[v as usize] = true;
        }
        rank
    }

    /// Inverse of [`lex_rank`](Self::lex_rank).
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut image = Vec::with_capacity(n);
        let mut fact = factorial(n);
        for i in 0..n {
            fact /= n - i;
            let idx = rank / fact;
            rank %= fact;
            image.push(avail.remove(idx));
        }
        Permutation { image }
    }

    /// All permutations of order `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(n)).map(move |r| Permutation::from_lex_rank(n, r))
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(image: &[u8]) -> Permutation {
        Permutation::from_image(image.to_vec()).unwrap()
    }

    #[test]
    fn compose_convention() {
        // (στ)(i) = σ(τ(i))
        let sigma = p(&[2, 1, 3]);
        let tau = p(&[1, 3, 2]);
        assert_eq!(sigma.compose(&tau).unwrap(), p(&[2, 3, 1]));
    }

    #[test]
    fn identity_laws() {
        let pi = p(&[3, 1, 4, 2]);
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&pi).unwrap(), pi);
        assert_eq!(pi.compose(&id).unwrap(), pi);
    }

    #[test]
    fn simple_transpositions_compose() {
        let t12 = Permutation::transposition(1, 2, 3).unwrap();
        let t23 = Permutation::transposition(2, 3, 3).unwrap();
        assert_eq!(t12.compose(&t23).unwrap(), p(&[2, 3, 1]));
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(Permutation::transposition(1, 2, 3).unwrap(), p(&[2, 1, 3]));
        assert_eq!(
            Permutation::transposition(2, 5, 5).unwrap(),
            p(&[1, 5, 3, 4, 2])
        );
        let t = Permutation::transposition(2, 4, 5).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn transposition_errors() {
        assert!(Permutation::transposition(2, 2, 4).is_err());
        assert!(Permutation::transposition(0, 2, 4).is_err());
        assert!(Permutation::transposition(1, 5, 4).is_err());
    }

    #[test]
    fn reverse_permutation() {
        assert_eq!(Permutation::reverse(1), p(&[1]));
        assert_eq!(Permutation::reverse(4), p(&[4, 3, 2, 1]));
        let rho = Permutation::reverse(6);
        assert!(rho.compose(&rho).unwrap().is_identity());
    }

    #[test]
    fn bad_images_rejected() {
        assert!(Permutation::from_image(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_image(vec![0, 2, 3]).is_err());
        assert!(Permutation::from_image(vec![1, 2, 4]).is_err());
    }

    #[test]
    fn lex_rank_round_trip() {
        for n in 1..=5 {
            for (r, pi) in Permutation::all(n).enumerate() {
                assert_eq!(pi.lex_rank(), r);
                assert_eq!(Permutation::from_lex_rank(n, r), pi);
            }
        }
    }

    #[test]
    fn lex_order_is_lexicographic() {
        let perms: Vec<Permutation> = Permutation::all(4).collect();
        for w in perms.windows(2) {
            assert!(w[0].one_line() < w[1].one_line());
        }
    }

    #[test]
    fn inverse_and_positions() {
        let pi = p(&[3, 1, 4, 2]);
        assert!(pi.compose(&pi.inverse()).unwrap().is_identity());
        assert_eq!(pi.position_of(4), 3);
        assert_eq!(pi.inverse().apply(4), 3);
    }
}
