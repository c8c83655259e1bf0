//! Exponent vectors indexing sparse polynomial terms.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest total degree (and largest per-coordinate exponent) supported by the
/// sparse representation. Factorials up to `DEGREE_CAP!` are exact in an `f64`,
/// which the basis-conversion and derivative tables rely on.
pub const DEGREE_CAP: usize = 16;

/// An exponent vector `alpha` of fixed length `n`, indexing one term of a
/// sparse polynomial in either basis.
///
/// Ordering is lexicographic on the exponent entries, which gives sparse
/// coefficient collections a canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    /// The all-zeros index of length `n` (the constant term).
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The standard unit index `e_i` of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "unit index {i} out of range for {n} variables");
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn from_exponents(exponents: &[u8]) -> Self {
        MultiIndex(exponents.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    /// Total degree `|alpha|`.
    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `alpha!`, the product of the factorials of the entries. Exact: every
    /// factor is at most `DEGREE_CAP!` which is below 2^53.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&e| FACTORIALS[e as usize]).product()
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference `self - other`; `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.divides(self) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.0.len(), other.0.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All indices `beta <= self` componentwise, in odometer order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.0.len()];
        loop {
            out.push(MultiIndex(cur.clone()));
            // advance odometer
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < self.0[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `0! ..= 18!`, all exactly representable in an `f64`.
pub(crate) const FACTORIALS: [f64; 19] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
];

/// `(m-1)!!` for even `m`, i.e. the `m`-th moment of a standard gaussian;
/// odd moments are zero.
pub fn gaussian_moment(m: usize) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut j = m as i64 - 1;
    while j > 1 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_lexicographic() {
        let a = MultiIndex::from_exponents(&[0, 2]);
        let b = MultiIndex::from_exponents(&[1, 0]);
        let c = MultiIndex::from_exponents(&[1, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn factorial_products() {
        assert_eq!(MultiIndex::from_exponents(&[3, 2]).factorial(), 12.0);
        assert_eq!(MultiIndex::zero(4).factorial(), 1.0);
        assert_eq!(MultiIndex::from_exponents(&[16]).factorial(), FACTORIALS[16]);
    }

    #[test]
    fn lower_set_enumerates_products() {
        let b = MultiIndex::from_exponents(&[2, 1]);
        let set = b.lower_set();
        assert_eq!(set.len(), 6);
        assert!(set.iter().all(|a| a.divides(&b)));
    }

    #[test]
    fn checked_sub_requires_divisibility() {
        let b = MultiIndex::from_exponents(&[2, 1]);
        let a = MultiIndex::from_exponents(&[1, 0]);
        assert_eq!(
            b.checked_sub(&a),
            Some(MultiIndex::from_exponents(&[1, 1]))
        );
        assert_eq!(a.checked_sub(&b), None);
    }

    #[test]
    fn gaussian_moments_match_double_factorial() {
        assert_eq!(gaussian_moment(0), 1.0);
        assert_eq!(gaussian_moment(1), 0.0);
        assert_eq!(gaussian_moment(2), 1.0);
        assert_eq!(gaussian_moment(4), 3.0);
        assert_eq!(gaussian_moment(6), 15.0);
        assert_eq!(gaussian_moment(8), 105.0);
    }
}
