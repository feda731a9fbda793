//! Multi-indices `I = (i_1, ..., i_n)` over the ambient dimension.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector of a monomial; length equals the ambient dimension.
///
/// Ordered graded-lexicographically: first by length `|I| = sum(i_j)`,
/// then lexicographically on the entries. This is the monomial order used
/// everywhere for canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The multi-index of the single variable `z_k` (0-based).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut e = vec![0; dim];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|I| = sum of entries`.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entry(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Component-wise sum (monomial product).
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Decrement entry `k` by one; `None` if it is already zero.
    pub fn step_down(&self, k: usize) -> Option<MultiIndex> {
        if self.0[k] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[k] -= 1;
        Some(MultiIndex(e))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![2, 0]); // degree 2
        let b = MultiIndex::new(vec![0, 1]); // degree 1
        let c = MultiIndex::new(vec![1, 1]); // degree 2
        assert!(b < a);
        assert!(b < c);
        assert!(c < a); // same degree, (1,1) < (2,0) lex
    }

    #[test]
    fn norm_and_step_down() {
        let i = MultiIndex::new(vec![1, 2, 0]);
        assert_eq!(i.norm(), 3);
        assert_eq!(i.step_down(1).unwrap().entries(), &[1, 1, 0]);
        assert!(i.step_down(2).is_none());
    }
}
