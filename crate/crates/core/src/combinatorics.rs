//! Counting, subsets and permutations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest symmetric group enumerated explicitly (10! = 3 628 800 elements).
pub const MAX_PERMUTATION_DEGREE: usize = 10;

/// `n choose k` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Number of multisets of size `k` drawn from `n` kinds.
pub fn multichoose(n: u64, k: u64) -> Option<u128> {
    if n == 0 {
        return Some(u128::from(k == 0));
    }
    binomial(n + k - 1, k)
}

/// All `k`-element subsets of `0..n`, each sorted, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sorts `indices` in place and returns the sign of the sorting permutation,
/// or `None` when an index repeats.
pub fn sort_with_sign(indices: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort; the number of adjacent swaps is the inversion count
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Lexicographic iterator over `S_n`, yielding each permutation (as the image
/// list `p[0..n]`) together with its parity sign.
#[derive(Debug, Clone)]
pub struct PermutationsWithSign {
    current: Vec<usize>,
    sign: i8,
    done: bool,
}

/// Enumerates all `n!` permutations in lexicographic order with their signs.
pub fn permutations_with_sign(n: usize) -> Result<PermutationsWithSign> {
    if n > MAX_PERMUTATION_DEGREE {
        return Err(Error::PermutationGroupTooLarge { n, max: MAX_PERMUTATION_DEGREE });
    }
    Ok(PermutationsWithSign { current: (0..n).collect(), sign: 1, done: false })
}

impl Iterator for PermutationsWithSign {
    type Item = (Vec<usize>, i8);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (self.current.clone(), self.sign);
        let p = &mut self.current;
        let n = p.len();
        let pivot = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]);
        match pivot {
            None => self.done = true,
            Some(i) => {
                let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
                p.swap(i, j);
                p[i + 1..].reverse();
                let tail = n - i - 1;
                // one swap plus floor(tail/2) swaps for the reversal
                if (1 + tail / 2) % 2 == 1 {
                    self.sign = -self.sign;
                }
            }
        }
        Some(item)
    }
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Table of `ln k!` for `k = 0..=n`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = vec![0.0; n + 1];
    for k in 1..=n {
        table[k] = table[k - 1] + libm::log(k as f64);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(4, 3), Some(4));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(multichoose(3, 2), Some(6));
        assert_eq!(multichoose(0, 0), Some(1));
        assert_eq!(multichoose(0, 2), Some(0));
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 1), vec![vec![0], vec![1]]);
        assert_eq!(subsets(4, 3).len(), 4);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        for (n, k) in [(5, 2), (6, 3), (7, 4)] {
            let s = subsets(n, k);
            assert_eq!(s.len() as u128, binomial(n as u64, k as u64).unwrap());
            assert!(s.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn sort_sign_counts_transpositions() {
        let mut v = [2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, [0, 1, 2]);
        let mut v = [1, 0];
        assert_eq!(sort_with_sign(&mut v), Some(-1));
        let mut v = [1, 3, 1];
        assert_eq!(sort_with_sign(&mut v), None);
    }

    #[test]
    fn permutations_small_groups() {
        let s2: Vec<_> = permutations_with_sign(2).unwrap().collect();
        assert_eq!(s2, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        let s3: Vec<_> = permutations_with_sign(3).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.iter().filter(|(_, s)| *s == 1).count(), 3);
        let s0: Vec<_> = permutations_with_sign(0).unwrap().collect();
        assert_eq!(s0, vec![(Vec::new(), 1)]);
        assert!(matches!(
            permutations_with_sign(11),
            Err(Error::PermutationGroupTooLarge { n: 11, .. })
        ));
    }

    #[test]
    fn permutation_signs_match_inversion_count() {
        for n in 0..=6 {
            let mut count = 0usize;
            let mut prev: Option<Vec<usize>> = None;
            for (p, s) in permutations_with_sign(n).unwrap() {
                let mut q = p.clone();
                assert_eq!(sort_with_sign(&mut q), Some(s));
                if let Some(prev) = &prev {
                    assert!(prev < &p);
                }
                prev = Some(p);
                count += 1;
            }
            assert_eq!(count as f64, factorial(n));
        }
    }
}
