//! Permutations of `0..n` and their signs.

use itertools::Itertools;

use crate::qseries::Sign;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Number of inversions `#{i < j : perm[i] > perm[j]}`.
pub fn inversions(perm: &[usize]) -> usize {
    perm.iter().tuple_combinations().filter(|(a, b)| a > b).count()
}

pub fn sign(perm: &[usize]) -> Sign {
    Sign::from_parity(inversions(perm) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(sign(&[1, 0, 2]), Sign::Minus);
        let plus = permutations(4).iter().filter(|p| sign(p) == Sign::Plus).count();
        assert_eq!(plus, 12);
    }
}
