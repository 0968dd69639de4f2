//! Deterministic enumeration of small integer vectors.
//!
//! Vectors with entries in [-bound, bound] are ordered lexicographically,
//! first coordinate most significant, with each coordinate running through
//! 0, 1, -1, 2, -2, ... The parallel scan returns exactly the element the
//! sequential scan would.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

fn digit_value(d: u64) -> i64 {
    if d == 0 {
        0
    } else if d % 2 == 1 {
        d.div_ceil(2) as i64
    } else {
        -((d / 2) as i64)
    }
}

/// Number of vectors of length `len` with entries bounded by `bound`.
pub fn space_size(len: usize, bound: u32) -> Option<u64> {
    (2 * bound as u64 + 1).checked_pow(len as u32)
}

/// The `index`-th vector in scan order.
pub fn decode(index: u64, len: usize, bound: u32) -> Vec<i64> {
    let base = 2 * bound as u64 + 1;
    let mut out = vec![0i64; len];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = digit_value(rest % base);
        rest /= base;
    }
    out
}

pub fn first_match_sequential<F>(len: usize, bound: u32, pred: F) -> Option<Vec<i64>>
where
    F: Fn(&[i64]) -> bool,
{
    let total = space_size(len, bound).expect("search space fits in u64");
    (0..total).map(|i| decode(i, len, bound)).find(|v| pred(v))
}

#[cfg(feature = "parallel")]
pub fn first_match_parallel<F>(len: usize, bound: u32, pred: F) -> Option<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync + Send,
{
    let total = space_size(len, bound).expect("search space fits in u64");
    (0..total)
        .into_par_iter()
        .map(|i| decode(i, len, bound))
        .find_first(|v| pred(v))
}

/// Dispatches on `exec`; without the `parallel` feature every scan is sequential.
pub fn first_match<F>(len: usize, bound: u32, exec: Exec, pred: F) -> Option<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => first_match_parallel(len, bound, pred),
        _ => first_match_sequential(len, bound, pred),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_order() {
        let all: Vec<Vec<i64>> = (0..9).map(|i| decode(i, 2, 1)).collect();
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[2], vec![0, -1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(all[8], vec![-1, -1]);
        assert_eq!(decode(4, 1, 2), vec![-2]);
    }

    #[test]
    fn empty_vector_space() {
        assert_eq!(space_size(0, 3), Some(1));
        assert_eq!(first_match_sequential(0, 3, |_| true), Some(vec![]));
    }

    #[test]
    fn sequential_equals_dispatch() {
        let pred = |v: &[i64]| v.iter().sum::<i64>() == 2 && v[0] < 0;
        let a = first_match_sequential(4, 2, pred);
        let b = first_match(4, 2, Exec::Parallel, pred);
        assert_eq!(a, b);
        assert!(a.is_some());
    }
}
