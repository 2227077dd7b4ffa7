//! Permutations of `[1, d]` and lexicographic enumeration of `S_n`.

use crate::error::{HymError, Result};

/// A bijection on `{1, ..., d}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    /// Builds from 1-based images `σ(1), ..., σ(d)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut zero_based = Vec::with_capacity(d);
        for &i in images {
            if i == 0 || i > d || seen[i - 1] {
                return Err(HymError::BadPermutation(format!("{images:?} is not a bijection on [1,{d}]")));
            }
            seen[i - 1] = true;
            zero_based.push(i - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    #[cfg(test)]
    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    /// Transposition of the 1-based positions `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > d || b > d {
            return Err(HymError::BadPermutation(format!("({a} {b}) outside [1,{d}]")));
        }
        let mut images: Vec<usize> = (0..d).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    /// `+1` or `-1` by the parity of inversions.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(HymError::ArityMismatch {
                perm: other.degree(),
                order: self.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }
}

/// Lexicographic enumeration of `S_n` with the sign carried incrementally.
///
/// Each successor step performs one swap and reverses a suffix of length `L`,
/// which is `floor(L/2)` further swaps; the sign is flipped accordingly.
pub struct Permutations {
    current: Vec<usize>,
    sign: i64,
    done: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: (0..n).collect(),
            sign: 1,
            done: false,
        }
    }

    fn advance(&mut self) {
        let p = &mut self.current;
        let n = p.len();
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            self.done = true;
            return;
        };
        let pivot = i - 1;
        let j = (i..n).rev().find(|&j| p[j] > p[pivot]).expect("successor exists");
        p.swap(pivot, j);
        p[i..].reverse();
        let swaps = 1 + (n - i) / 2;
        if swaps % 2 == 1 {
            self.sign = -self.sign;
        }
    }
}

impl Iterator for Permutations {
    /// 0-based images with their sign.
    type Item = (Vec<usize>, i64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (self.current.clone(), self.sign);
        self.advance();
        Some(item)
    }
}
