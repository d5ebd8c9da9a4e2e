//! Reduced words of the reverse permutation: validation, enumeration,
//! commuting/braid moves, and trajectory analysis.
//!
//! A reduced word of order `n` is a sequence of simple-transposition indices
//! `(a_i)` of length `C(n,2)` with `t(a_1)⋯t(a_ℓ) = ρ = [n,…,1]`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Guard for operations that enumerate all reduced words.
pub const MAX_ENUMERATION_ORDER: usize = 5;

/// `C(n, 2)`.
pub fn word_length(n: usize) -> usize {
    n * (n - 1) / 2
}

/// A validated reduced word of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Checks length and that the composition equals the reverse permutation.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        check_letters(&letters, n)?;
        if letters.len() != word_length(n) {
            return Err(Error::InvalidWord {
                n,
                reason: format!(
                    "length {} differs from C({n},2) = {}",
                    letters.len(),
                    word_length(n)
                ),
            });
        }
        let mut sigma = Permutation::identity(n);
        for &a in &letters {
            sigma = sigma.swap_positions(a, a + 1);
        }
        if sigma != Permutation::reverse(n) {
            return Err(Error::InvalidWord {
                n,
                reason: format!("composition is {sigma:?}, not the reverse permutation"),
            });
        }
        Ok(ReducedWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Prefix compositions `σ_0 = id, σ_1, …, σ_ℓ = ρ`.
    pub fn prefix_compositions(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut sigma = Permutation::identity(self.n);
        out.push(sigma.clone());
        for &a in &self.letters {
            sigma = sigma.swap_positions(a, a + 1);
            out.push(sigma.clone());
        }
        out
    }

    /// Exchanges letters `j` and `j+1` (1-based); they must differ by at least 2.
    pub fn apply_commuting_move(&self, j: usize) -> Result<ReducedWord> {
        if j == 0 || j >= self.len() {
            return Err(Error::IllegalMove {
                index: j,
                reason: "index out of range for a commuting move".into(),
            });
        }
        let (x, y) = (self.letters[j - 1], self.letters[j]);
        if x.abs_diff(y) < 2 {
            return Err(Error::IllegalMove {
                index: j,
                reason: format!("letters {x}, {y} do not commute"),
            });
        }
        let mut letters = self.letters.clone();
        letters.swap(j - 1, j);
        Ok(ReducedWord { n: self.n, letters })
    }

    /// Replaces the triple at `j` (1-based) by its braid partner:
    /// `(k, k+1, k) ↔ (k+1, k, k+1)`.
    pub fn apply_braid_move(&self, j: usize) -> Result<ReducedWord> {
        if j == 0 || j + 1 >= self.len() {
            return Err(Error::IllegalMove {
                index: j,
                reason: "index out of range for a braid move".into(),
            });
        }
        let (x, y, z) = (
            self.letters[j - 1],
            self.letters[j],
            self.letters[j + 1],
        );
        if !(x == z && y.abs_diff(x) == 1) {
            return Err(Error::IllegalMove {
                index: j,
                reason: format!("triple ({x},{y},{z}) is not of braid form"),
            });
        }
        let mut letters = self.letters.clone();
        letters[j - 1] = y;
        letters[j] = x;
        letters[j + 1] = y;
        Ok(ReducedWord { n: self.n, letters })
    }

    /// All legal moves at 1-based sites.
    pub fn legal_moves(&self) -> Vec<WordMove> {
        let mut moves = Vec::new();
        for j in 1..self.len() {
            if self.letters[j - 1].abs_diff(self.letters[j]) >= 2 {
                moves.push(WordMove::Commuting(j));
            }
        }
        for j in 1..self.len().saturating_sub(1) {
            let (x, y, z) = (
                self.letters[j - 1],
                self.letters[j],
                self.letters[j + 1],
            );
            if x == z && y.abs_diff(x) == 1 {
                moves.push(WordMove::Braid(j));
            }
        }
        moves
    }

    pub fn apply_move(&self, mv: WordMove) -> Result<ReducedWord> {
        match mv {
            WordMove::Commuting(j) => self.apply_commuting_move(j),
            WordMove::Braid(j) => self.apply_braid_move(j),
        }
    }
}

/// A single Tits move at a 1-based site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMove {
    Commuting(usize),
    Braid(usize),
}

fn check_letters(letters: &[usize], n: usize) -> Result<()> {
    for &a in letters {
        if a == 0 || a + 1 > n {
            return Err(Error::LetterOutOfRange {
                letter: a,
                max: n.saturating_sub(1),
                n,
            });
        }
    }
    Ok(())
}

/// True iff `letters` has length `C(n,2)` and composes to the reverse
/// permutation.
pub fn is_reduced_word(letters: &[usize], n: usize) -> Result<bool> {
    check_letters(letters, n)?;
    Ok(ReducedWord::new(n, letters.to_vec()).is_ok())
}

/// The word `(1,…,n−1, 1,…,n−2, …, 1,2, 1)`.
pub fn bubble_sort_word(n: usize) -> ReducedWord {
    let mut letters = Vec::with_capacity(word_length(n));
    for run in (1..n).rev() {
        letters.extend(1..=run);
    }
    ReducedWord::new(n, letters).expect("bubble sort word is reduced")
}

/// Number of reduced words of order `n`:
/// `C(n,2)! / (1^{n−1} 3^{n−2} ⋯ (2n−3)^1)`.
pub fn stanley_count(n: usize) -> BigUint {
    let mut numerator = BigUint::one();
    for i in 1..=word_length(n) {
        numerator *= BigUint::from(i);
    }
    let mut denominator = BigUint::one();
    for k in 1..n {
        // hook value 2k−1 appears with multiplicity n−k
        denominator *= BigUint::from(2 * k - 1).pow((n - k) as u32);
    }
    numerator / denominator
}

/// All reduced words of order `n ≤ 5`, lexicographically sorted.
///
/// Depth-first backtracking; a prefix extends by letter `a` only when the
/// entries at positions `a, a+1` are ascending, so every step increases the
/// inversion number.
pub fn enumerate_reduced_words(n: usize) -> Result<Vec<ReducedWord>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::ResourceGuard(format!(
            "reduced-word enumeration capped at order {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let target = word_length(n);
    let mut out = Vec::new();
    let mut letters = Vec::with_capacity(target);
    let mut sigma = Permutation::identity(n);
    fn dfs(
        n: usize,
        target: usize,
        sigma: &mut Permutation,
        letters: &mut Vec<usize>,
        out: &mut Vec<ReducedWord>,
    ) {
        if letters.len() == target {
            out.push(ReducedWord {
                n,
                letters: letters.clone(),
            });
            return;
        }
        for a in 1..n {
            if sigma.apply(a) < sigma.apply(a + 1) {
                *sigma = sigma.swap_positions(a, a + 1);
                letters.push(a);
                dfs(n, target, sigma, letters, out);
                letters.pop();
                *sigma = sigma.swap_positions(a, a + 1);
            }
        }
    }
    dfs(n, target, &mut sigma, &mut letters, &mut out);
    Ok(out)
}

/// Whether the graph on all reduced words of order `n` with single-move edges
/// is connected (a test oracle for the Tits-move theorem).
pub fn move_graph_connected(n: usize) -> Result<bool> {
    let words = enumerate_reduced_words(n)?;
    if words.len() <= 1 {
        return Ok(true);
    }
    let index: HashMap<&ReducedWord, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut seen = vec![false; words.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for mv in words[i].legal_moves() {
            let w = words[i].apply_move(mv).expect("legal move applies");
            let j = index[&w];
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    Ok(reached == words.len())
}

/// Which extreme element a trajectory tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrackedElement {
    /// Element 1, which only ever moves rightward.
    Min,
    /// Element n, which only ever moves leftward.
    Max,
}

/// The `n−1` step indices at which the tracked element moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectorySet {
    element: TrackedElement,
    indices: Vec<usize>,
}

impl TrajectorySet {
    pub fn element(&self) -> TrackedElement {
        self.element
    }

    /// Strictly increasing 1-based step indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// `H = {h : σ_{h−1}^{-1}(1) = a_h}` for element 1, and the mirror set for
/// element n (steps where `σ_{h−1}^{-1}(n) = a_h + 1`).
pub fn trajectory_set(word: &ReducedWord, element: TrackedElement) -> TrajectorySet {
    let n = word.n();
    let tracked = match element {
        TrackedElement::Min => 1,
        TrackedElement::Max => n,
    };
    let mut sigma = Permutation::identity(n);
    let mut pos = sigma.position_of(tracked);
    let mut indices = Vec::with_capacity(n - 1);
    for (i, &a) in word.letters().iter().enumerate() {
        let moved = match element {
            TrackedElement::Min => pos == a,
            TrackedElement::Max => pos == a + 1,
        };
        if moved {
            indices.push(i + 1);
        }
        sigma = sigma.swap_positions(a, a + 1);
        if moved {
            pos = sigma.position_of(tracked);
        }
        debug_assert_eq!(pos, sigma.position_of(tracked));
    }
    debug_assert_eq!(indices.len(), n - 1);
    TrajectorySet { element, indices }
}

/// Deletes the trajectory of element 1, returning the order-`n−1` word.
pub fn delete_trajectory(word: &ReducedWord) -> Result<ReducedWord> {
    Ok(delete_trajectory_of(word, TrackedElement::Min)?.0)
}

/// Deletes the trajectory of the chosen extreme element.  Also returns the
/// 1-based original indices of the surviving letters, in order.
pub fn delete_trajectory_of(
    word: &ReducedWord,
    element: TrackedElement,
) -> Result<(ReducedWord, Vec<usize>)> {
    let n = word.n();
    if n < 2 {
        return Err(Error::InvalidWord {
            n,
            reason: "trajectory deletion needs order at least 2".into(),
        });
    }
    let tracked = match element {
        TrackedElement::Min => 1,
        TrackedElement::Max => n,
    };
    let mut sigma = Permutation::identity(n);
    let mut letters = Vec::with_capacity(word_length(n - 1));
    let mut survivors = Vec::with_capacity(word_length(n - 1));
    for (i, &a) in word.letters().iter().enumerate() {
        let pos = sigma.position_of(tracked);
        let in_trajectory = match element {
            TrackedElement::Min => pos == a,
            TrackedElement::Max => pos == a + 1,
        };
        if !in_trajectory {
            // Removing the tracked wire shifts positions above it down by one.
            let c = if a > pos { a - 1 } else { a };
            letters.push(c);
            survivors.push(i + 1);
        }
        sigma = sigma.swap_positions(a, a + 1);
    }
    let deleted = ReducedWord::new(n - 1, letters)?;
    Ok((deleted, survivors))
}

/// A seeded random walk of `10·C(n,2)` uniformly chosen legal moves starting
/// from the bubble-sort word.  Not uniform over words.
pub fn random_reduced_word(n: usize, seed: u64) -> ReducedWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = bubble_sort_word(n);
    for _ in 0..10 * word_length(n) {
        let moves = word.legal_moves();
        if let Some(&mv) = moves.choose(&mut rng) {
            word = word.apply_move(mv).expect("legal move applies");
        }
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn w(n: usize, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn reduced_word_validation() {
        assert!(is_reduced_word(&[1, 2, 1], 3).unwrap());
        assert!(!is_reduced_word(&[1, 1, 2], 3).unwrap());
        assert!(is_reduced_word(&[1, 3, 2, 4, 1, 3, 2, 4, 1, 3], 5).unwrap());
        assert!(is_reduced_word(&[3, 1, 2], 3).is_err()); // letter out of range
        assert!(!is_reduced_word(&[1, 2], 3).unwrap()); // too short
    }

    #[test]
    fn bubble_words() {
        assert_eq!(bubble_sort_word(2).letters(), &[1]);
        assert_eq!(bubble_sort_word(3).letters(), &[1, 2, 1]);
        assert_eq!(
            bubble_sort_word(5).letters(),
            &[1, 2, 3, 4, 1, 2, 3, 1, 2, 1]
        );
    }

    #[test]
    fn stanley_counts() {
        assert_eq!(stanley_count(2).to_usize().unwrap(), 1);
        assert_eq!(stanley_count(3).to_usize().unwrap(), 2);
        assert_eq!(stanley_count(4).to_usize().unwrap(), 16);
        assert_eq!(stanley_count(5).to_usize().unwrap(), 768);
    }

    #[test]
    fn enumeration_matches_stanley() {
        for n in 2..=5 {
            let words = enumerate_reduced_words(n).unwrap();
            assert_eq!(words.len(), stanley_count(n).to_usize().unwrap());
            // lexicographically sorted, no duplicates
            for pair in words.windows(2) {
                assert!(pair[0].letters() < pair[1].letters());
            }
        }
        assert_eq!(
            enumerate_reduced_words(3).unwrap(),
            vec![w(3, &[1, 2, 1]), w(3, &[2, 1, 2])]
        );
        assert!(enumerate_reduced_words(6).is_err());
    }

    #[test]
    fn commuting_move() {
        let word = w(5, &[1, 3, 2, 4, 1, 3, 2, 4, 1, 3]);
        let moved = word.apply_commuting_move(1).unwrap();
        assert_eq!(&moved.letters()[..2], &[3, 1]);
        assert_eq!(moved.apply_commuting_move(1).unwrap(), word);
        assert!(w(3, &[1, 2, 1]).apply_commuting_move(1).is_err());
    }

    #[test]
    fn braid_move() {
        let word = w(3, &[1, 2, 1]);
        let moved = word.apply_braid_move(1).unwrap();
        assert_eq!(moved.letters(), &[2, 1, 2]);
        assert_eq!(moved.apply_braid_move(1).unwrap(), word);
        assert!(w(5, &[1, 3, 2, 4, 1, 3, 2, 4, 1, 3])
            .apply_braid_move(1)
            .is_err());
    }

    #[test]
    fn moves_preserve_validity() {
        for word in enumerate_reduced_words(4).unwrap() {
            for mv in word.legal_moves() {
                let moved = word.apply_move(mv).unwrap();
                assert!(is_reduced_word(moved.letters(), 4).unwrap());
            }
        }
    }

    #[test]
    fn move_graph_connectivity() {
        assert!(move_graph_connected(2).unwrap());
        assert!(move_graph_connected(3).unwrap());
        assert!(move_graph_connected(4).unwrap());
    }

    #[test]
    fn trajectories() {
        let word = w(3, &[1, 2, 1]);
        let h = trajectory_set(&word, TrackedElement::Min);
        assert_eq!(h.indices(), &[1, 2]);
        let hhat = trajectory_set(&word, TrackedElement::Max);
        assert_eq!(hhat.indices(), &[2, 3]);
        // H ∩ Ĥ = {2}: elements 1 and 3 swap at step 2.
        let common: Vec<usize> = h
            .indices()
            .iter()
            .copied()
            .filter(|&i| hhat.contains(i))
            .collect();
        assert_eq!(common, vec![2]);

        let word5 = w(5, &[1, 3, 2, 4, 1, 3, 2, 4, 1, 3]);
        let h5 = trajectory_set(&word5, TrackedElement::Min);
        assert_eq!(h5.indices(), &[1, 3, 6, 8]);
    }

    #[test]
    fn trajectory_sizes_and_intersection() {
        for n in [3, 4, 5] {
            for word in enumerate_reduced_words(n).unwrap() {
                let h = trajectory_set(&word, TrackedElement::Min);
                let hhat = trajectory_set(&word, TrackedElement::Max);
                assert_eq!(h.indices().len(), n - 1);
                assert_eq!(hhat.indices().len(), n - 1);
                let common = h
                    .indices()
                    .iter()
                    .filter(|&&i| hhat.contains(i))
                    .count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn deletion_small() {
        let word = w(3, &[1, 2, 1]);
        let deleted = delete_trajectory(&word).unwrap();
        assert_eq!(deleted.n(), 2);
        assert_eq!(deleted.letters(), &[1]);
    }

    #[test]
    fn deletion_worked_example() {
        // Deleting element 1's trajectory from the order-5 word gives the
        // order-4 word (2,3,1,2,1,3).
        let word = w(5, &[1, 3, 2, 4, 1, 3, 2, 4, 1, 3]);
        let deleted = delete_trajectory(&word).unwrap();
        assert_eq!(deleted.letters(), &[2, 3, 1, 2, 1, 3]);
    }

    #[test]
    fn deletion_always_reduced() {
        for n in [3, 4, 5] {
            for word in enumerate_reduced_words(n).unwrap() {
                for element in [TrackedElement::Min, TrackedElement::Max] {
                    let (deleted, survivors) = delete_trajectory_of(&word, element).unwrap();
                    assert_eq!(deleted.n(), n - 1);
                    assert_eq!(survivors.len(), word_length(n - 1));
                }
            }
        }
        for seed in 0..100 {
            for n in [6, 7] {
                let word = random_reduced_word(n, seed);
                let deleted = delete_trajectory(&word).unwrap();
                assert_eq!(deleted.n(), n - 1);
            }
        }
    }

    #[test]
    fn each_pair_swaps_exactly_once() {
        for word in enumerate_reduced_words(4).unwrap() {
            let prefixes = word.prefix_compositions();
            let mut swaps = std::collections::HashMap::new();
            for (i, &a) in word.letters().iter().enumerate() {
                let u = prefixes[i].apply(a);
                let v = prefixes[i].apply(a + 1);
                let key = (u.min(v), u.max(v));
                *swaps.entry(key).or_insert(0) += 1;
            }
            assert_eq!(swaps.len(), word_length(4));
            assert!(swaps.values().all(|&c| c == 1));
        }
    }

    #[test]
    fn random_words_are_valid() {
        assert_eq!(random_reduced_word(2, 9).letters(), &[1]);
        let w3 = random_reduced_word(3, 1);
        assert!(w3.letters() == [1, 2, 1] || w3.letters() == [2, 1, 2]);
        for seed in 0..10 {
            let word = random_reduced_word(6, seed);
            assert!(is_reduced_word(word.letters(), 6).unwrap());
        }
        assert_eq!(random_reduced_word(5, 3), random_reduced_word(5, 3));
    }
}
