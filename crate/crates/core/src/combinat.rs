//! Binomials, colexicographic subset ranking and the normalization constants
//! of the symmetric walk states.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact binomial coefficient. Zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient in machine width, `None` on overflow.
pub fn binomial_checked(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Falling factorial x (x-1) ... (x-k+1) in floating point.
pub fn falling_factorial(x: u64, k: u64) -> f64 {
    (0..k).map(|i| x as f64 - i as f64).product()
}

fn check_subset(subset: &[usize], n: usize) -> Result<()> {
    if let Some(&bad) = subset.iter().find(|&&x| x >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedSubset(subset.to_vec()));
    }
    Ok(())
}

/// Colexicographic rank of a sorted subset of `[0, n)`: `Σ_i C(a_i, i+1)`.
pub fn rank_subset(subset: &[usize], n: usize) -> Result<u64> {
    check_subset(subset, n)?;
    let mut rank = 0u64;
    for (i, &a) in subset.iter().enumerate() {
        let term = binomial_checked(a as u64, i as u64 + 1)
            .ok_or_else(|| Error::InvalidParameters(format!("rank overflow for n={n}")))?;
        rank = rank
            .checked_add(term)
            .ok_or_else(|| Error::InvalidParameters(format!("rank overflow for n={n}")))?;
    }
    Ok(rank)
}

/// Inverse of [`rank_subset`] for subsets of size `m`.
pub fn unrank_subset(rank: u64, m: usize, n: usize) -> Result<Vec<usize>> {
    let total = binomial_checked(n as u64, m as u64)
        .ok_or_else(|| Error::InvalidParameters(format!("C({n},{m}) overflows")))?;
    if rank >= total {
        return Err(Error::InvalidParameters(format!(
            "rank {rank} out of range for C({n},{m}) = {total}"
        )));
    }
    let mut out = vec![0usize; m];
    let mut r = rank;
    let mut hi = n;
    for i in (1..=m).rev() {
        // largest c < hi with C(c, i) <= r
        let mut c = hi - 1;
        loop {
            let b = binomial_checked(c as u64, i as u64).unwrap_or(u64::MAX);
            if b <= r {
                break;
            }
            c -= 1;
        }
        out[i - 1] = c;
        r -= binomial_checked(c as u64, i as u64).unwrap_or(0);
        hi = c;
    }
    Ok(out)
}

/// Advance `subset` to its colex successor among m-subsets of `[0, n)`.
/// Returns `false` (leaving the subset untouched) when it is the last one.
pub fn next_colex(subset: &mut [usize], n: usize) -> bool {
    let m = subset.len();
    for i in 0..m {
        let limit = if i + 1 < m { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (t, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = t;
            }
            return true;
        }
    }
    false
}

/// Iterator over all m-subsets of `[0, n)` in colex order.
pub struct Subsets {
    current: Option<Vec<usize>>,
    n: usize,
}

impl Subsets {
    pub fn new(n: usize, m: usize) -> Self {
        let current = (m <= n).then(|| (0..m).collect());
        Self { current, n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        if cur.is_empty() || !next_colex(cur, self.n) {
            self.current = None;
        }
        Some(out)
    }
}

/// Label `(j, p)` of a symmetric state: `j = |A ∩ S|`, `p = 1` when the coin lies in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub j: usize,
    pub p: u8,
}

impl Label {
    pub const fn new(j: usize, p: u8) -> Self {
        Self { j, p }
    }
}

/// A-side labels in basis order: (0,0),(0,1),(1,0),(1,1),...,(L-1,1),(L,0).
pub fn a_labels(l: usize) -> Vec<Label> {
    let mut out = Vec::with_capacity(2 * l + 1);
    for j in 0..l {
        out.push(Label::new(j, 0));
        out.push(Label::new(j, 1));
    }
    out.push(Label::new(l, 0));
    out
}

/// B-side labels: (0,0) and (j,p) for j = 1..=L.
pub fn b_labels(l: usize) -> Vec<Label> {
    let mut out = vec![Label::new(0, 0)];
    for j in 1..=l {
        out.push(Label::new(j, 0));
        out.push(Label::new(j, 1));
    }
    out
}

/// Exact normalization constants `c_{j,p}`, `d_{j,p}` for walk subset size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormConstants {
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub c_jp: Vec<(Label, BigUint)>,
    pub d_jp: Vec<(Label, BigUint)>,
    pub c_total: BigUint,
}

fn c_formula(n: u64, m: u64, l: u64, j: u64, p: u8) -> BigUint {
    if j > m || j > l || m - j > n - l {
        return BigUint::zero();
    }
    let base = binomial(n - l, m - j) * binomial(l, j);
    match p {
        0 => base * ((n - l) - (m - j)),
        _ => base * (l - j),
    }
}

fn d_formula(n: u64, m: u64, l: u64, j: u64, p: u8) -> BigUint {
    if j > m + 1 || j > l || m + 1 - j > n - l {
        return BigUint::zero();
    }
    let base = binomial(n - l, m + 1 - j) * binomial(l, j);
    match p {
        0 => base * (m + 1 - j),
        _ => base * j,
    }
}

impl NormConstants {
    pub fn new(n: u64, m: u64, l: u64) -> Result<Self> {
        if l == 0 || l > m || m >= n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= l <= m < n, got n={n}, m={m}, l={l}"
            )));
        }
        let c_jp = a_labels(l as usize)
            .into_iter()
            .map(|lab| (lab, c_formula(n, m, l, lab.j as u64, lab.p)))
            .collect();
        let d_jp = b_labels(l as usize)
            .into_iter()
            .map(|lab| (lab, d_formula(n, m, l, lab.j as u64, lab.p)))
            .collect();
        let c_total = binomial(n, m) * (n - m);
        Ok(Self {
            n,
            m,
            l,
            c_jp,
            d_jp,
            c_total,
        })
    }

    pub fn c(&self, j: usize, p: u8) -> BigUint {
        self.c_jp
            .iter()
            .find(|(lab, _)| lab.j == j && lab.p == p)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    pub fn d(&self, j: usize, p: u8) -> BigUint {
        self.d_jp
            .iter()
            .find(|(lab, _)| lab.j == j && lab.p == p)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    /// `c_{j,p} / c` as a float, exact up to a single rounding when both fit.
    pub fn ratio(&self, j: usize, p: u8) -> f64 {
        let num = self.c(j, p);
        match (num.to_f64(), self.c_total.to_f64()) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
            _ => weight(self.n, self.m, self.l, j, p),
        }
    }
}

/// `c_{j,p} / c` via falling factorials; stays finite for any N.
///
/// `C(N-L, M-j) / C(N, M) = M^(j) (N-M)^(L-j) / N^(L)` with `x^(k)` the
/// falling factorial.
pub fn weight(n: u64, m: u64, l: u64, j: usize, p: u8) -> f64 {
    let j = j as u64;
    if j > l || j > m || l - j > n - m {
        return 0.0;
    }
    let ratio = falling_factorial(m, j) * falling_factorial(n - m, l - j) / falling_factorial(n, l)
        * binomial_checked(l, j).map_or(f64::NAN, |b| b as f64);
    let coin = match p {
        0 => ((n - l) - (m - j)) as f64,
        _ => (l - j) as f64,
    };
    ratio * coin / (n - m) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_matches_pascal_up_to_64() {
        let t = pascal(64);
        for n in 0..=64u64 {
            for k in 0..=n + 2 {
                let expect = t[n as usize].get(k as usize).cloned().unwrap_or_default();
                assert_eq!(binomial(n, k), expect, "C({n},{k})");
                assert_eq!(binomial_checked(n, k).map(BigUint::from), Some(expect));
            }
        }
        assert_eq!(binomial(9, 4), BigUint::from(126u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(17, 0), BigUint::one());
    }

    #[test]
    fn checked_binomial_overflows_cleanly() {
        assert_eq!(binomial_checked(200, 100), None);
        assert!(binomial(200, 100) > BigUint::from(u64::MAX));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_subset(&[0, 1], 4).unwrap(), 0);
        assert_eq!(rank_subset(&[2, 3], 4).unwrap(), 5);
        // colex order of 2-subsets of 4 by enumeration
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for (r, s) in all.iter().enumerate() {
            assert_eq!(rank_subset(s, 4).unwrap(), r as u64);
        }
    }

    #[test]
    fn rank_rejects_bad_subsets() {
        assert!(matches!(
            rank_subset(&[1, 4], 4),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        ));
        assert!(matches!(
            rank_subset(&[2, 1], 4),
            Err(Error::MalformedSubset(_))
        ));
        assert!(matches!(
            rank_subset(&[1, 1], 4),
            Err(Error::MalformedSubset(_))
        ));
        assert!(unrank_subset(20, 3, 6).is_err());
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 0..=18usize {
            for m in 0..=n {
                let total = binomial_checked(n as u64, m as u64).unwrap();
                if total > 100_000 {
                    continue;
                }
                let mut count = 0u64;
                for (r, s) in Subsets::new(n, m).enumerate() {
                    assert_eq!(rank_subset(&s, n).unwrap(), r as u64);
                    assert_eq!(unrank_subset(r as u64, m, n).unwrap(), s);
                    count += 1;
                }
                assert_eq!(count, total);
            }
        }
    }

    #[test]
    fn norm_constants_n9_m4_l2_by_enumeration() {
        let (n, m, l) = (9usize, 4usize, 2usize);
        let marked = [0usize, 1];
        let nc = NormConstants::new(n as u64, m as u64, l as u64).unwrap();
        // enumerate all (A, k) pairs and bucket them by label
        let mut counts = std::collections::BTreeMap::<Label, u64>::new();
        for a in Subsets::new(n, m) {
            let j = a.iter().filter(|x| marked.contains(x)).count();
            for k in (0..n).filter(|k| !a.contains(k)) {
                let p = marked.contains(&k) as u8;
                *counts.entry(Label::new(j, p)).or_default() += 1;
            }
        }
        for (lab, v) in &nc.c_jp {
            assert_eq!(*v, BigUint::from(*counts.get(lab).unwrap_or(&0)), "{lab:?}");
        }
        assert_eq!(nc.c(2, 0), BigUint::from(105u32));
        assert_eq!(nc.c(2, 1), BigUint::zero());
        let total: BigUint = nc.c_jp.iter().map(|(_, v)| v.clone()).sum();
        assert_eq!(total, BigUint::from(630u32));
        assert_eq!(nc.c_total, BigUint::from(630u32));

        let mut dcounts = std::collections::BTreeMap::<Label, u64>::new();
        for b in Subsets::new(n, m + 1) {
            let j = b.iter().filter(|x| marked.contains(x)).count();
            for &k in &b {
                let p = marked.contains(&k) as u8;
                *dcounts.entry(Label::new(j, p)).or_default() += 1;
            }
        }
        for (lab, v) in &nc.d_jp {
            assert_eq!(
                *v,
                BigUint::from(*dcounts.get(lab).unwrap_or(&0)),
                "{lab:?}"
            );
        }
    }

    #[test]
    fn completeness_and_d_identities_on_grid() {
        for n in 3..40u64 {
            for m in 1..n {
                for l in 1..=m.min(6) {
                    let nc = NormConstants::new(n, m, l).unwrap();
                    let sum_c: BigUint = nc.c_jp.iter().map(|(_, v)| v.clone()).sum();
                    let sum_d: BigUint = nc.d_jp.iter().map(|(_, v)| v.clone()).sum();
                    assert_eq!(sum_c, nc.c_total);
                    assert_eq!(sum_d, binomial(n, m + 1) * (m + 1));
                    for j in 0..=l as usize {
                        assert_eq!(nc.d(j, 0), nc.c(j, 0));
                        if j >= 1 {
                            assert_eq!(nc.d(j, 1), nc.c(j - 1, 1));
                        }
                        for p in 0..2u8 {
                            let exact = nc.ratio(j, p);
                            let ff = weight(n, m, l, j, p);
                            assert!(
                                (exact - ff).abs() <= 1e-12 * exact.max(1e-300),
                                "{n} {m} {l} {j} {p}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn norm_constants_reject_bad_params() {
        assert!(NormConstants::new(5, 5, 2).is_err());
        assert!(NormConstants::new(5, 1, 2).is_err());
        assert!(NormConstants::new(5, 2, 0).is_err());
    }

    proptest! {
        #[test]
        fn unrank_rank_roundtrip(n in 1usize..40, seed in any::<u64>()) {
            let m = (seed as usize) % (n + 1);
            let total = binomial_checked(n as u64, m as u64).unwrap();
            let r = seed % total;
            let s = unrank_subset(r, m, n).unwrap();
            prop_assert_eq!(s.len(), m);
            prop_assert_eq!(rank_subset(&s, n).unwrap(), r);
        }
    }
}
