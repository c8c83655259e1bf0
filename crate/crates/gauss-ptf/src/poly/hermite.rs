//! Univariate orthonormal Hermite polynomials.
//!
//! `h_m(t) = H_m(t)/sqrt(m!)` where `H_m` satisfies the probabilist's
//! recurrence `H_{m+1}(t) = t H_m(t) - m H_{m-1}(t)`, `H_0 = 1`, `H_1 = t`.
//! With this normalization the family is orthonormal under the standard
//! gaussian: `E h_m(x)^2 = 1` and `E h_m(x) h_k(x) = 0` for `m != k`.
//!
//! Conversion tables between the `H_m` family and plain powers of `t` are
//! built once from exact integer recurrences (all entries fit in an `i64`
//! up to the degree cap) and rounded to `f64` a single time.

use super::multi_index::{DEGREE_CAP, FACTORIALS};
use std::sync::OnceLock;

/// `h_m(t)`, evaluated by the normalized three-term recurrence
/// `h_{j+1}(t) = (t h_j(t) - sqrt(j) h_{j-1}(t)) / sqrt(j+1)`,
/// which is the recurrence above divided through by `sqrt((j+1)!)`.
pub fn univariate(m: usize, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = t;
    for j in 1..m {
        let next = (t * cur - (j as f64).sqrt() * prev) / ((j + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// `[h_0(t), h_1(t), ..., h_max(t)]` in one pass of the recurrence.
pub fn univariate_table(max_m: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_m + 1);
    out.push(1.0);
    if max_m == 0 {
        return out;
    }
    out.push(t);
    for j in 1..max_m {
        let next = (t * out[j] - (j as f64).sqrt() * out[j - 1]) / ((j + 1) as f64).sqrt();
        out.push(next);
    }
    out
}

pub(crate) fn sqrt_factorial(m: usize) -> f64 {
    FACTORIALS[m].sqrt()
}

/// Integer coefficients of `H_m` in powers of `t`: `H_m(t) = sum_j c[m][j] t^j`.
fn h_in_powers() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(DEGREE_CAP + 1);
        rows.push(vec![1]);
        rows.push(vec![0, 1]);
        for m in 1..DEGREE_CAP {
            let mut next = vec![0i64; m + 2];
            for (j, &c) in rows[m].iter().enumerate() {
                next[j + 1] += c; // t * H_m
            }
            for (j, &c) in rows[m - 1].iter().enumerate() {
                next[j] -= m as i64 * c; // - m * H_{m-1}
            }
            rows.push(next);
        }
        rows
    })
}

/// Integer coefficients of `t^m` in the `H` family: `t^m = sum_k c[m][k] H_k(t)`.
/// Closed form: the coefficient of `H_{m-2j}` is `m! / (2^j j! (m-2j)!)`.
fn powers_in_h() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(DEGREE_CAP + 1);
        for m in 0..=DEGREE_CAP {
            let mut row = vec![0i64; m + 1];
            let mut j = 0;
            while 2 * j <= m {
                let k = m - 2 * j;
                let c = FACTORIALS[m] / (2f64.powi(j as i32) * FACTORIALS[j] * FACTORIALS[k]);
                row[k] = c as i64;
                j += 1;
            }
            rows.push(row);
        }
        rows
    })
}

/// Expansion of `h_m` in powers of `t`: pairs `(power, coefficient)` with only
/// nonzero coefficients listed.
pub(crate) fn h_to_power_terms(m: usize) -> Vec<(usize, f64)> {
    let norm = sqrt_factorial(m);
    h_in_powers()[m]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c as f64 / norm))
        .collect()
}

/// Expansion of `t^m` in the `h` family: pairs `(degree, coefficient)`.
pub(crate) fn power_to_h_terms(m: usize) -> Vec<(usize, f64)> {
    powers_in_h()[m]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k, c as f64 * sqrt_factorial(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_is_one_everywhere() {
        assert_eq!(univariate(0, 7.3), 1.0);
    }

    #[test]
    fn degree_one_is_identity() {
        assert_eq!(univariate(1, 3.0), 3.0);
    }

    #[test]
    fn degree_two_at_zero() {
        // H_2(t) = t^2 - 1, normalized by sqrt(2)
        assert_relative_eq!(univariate(2, 0.0), -1.0 / 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(univariate(2, 1.0), 0.0);
    }

    #[test]
    fn recurrence_matches_tables() {
        // evaluate h_m via the integer expansion and compare to the recurrence
        for m in 0..=DEGREE_CAP {
            for &t in &[-2.3f64, -0.5, 0.0, 0.7, 1.9] {
                let via_table: f64 = h_to_power_terms(m)
                    .iter()
                    .map(|&(j, c)| c * t.powi(j as i32))
                    .sum();
                assert_relative_eq!(univariate(m, t), via_table, max_relative = 1e-11, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn power_and_h_tables_invert() {
        // t^m -> h-basis -> powers must reproduce the single monomial. Pure
        // high powers have h-coefficients ~1e7, so the cancellation leaves
        // roughly 1e-16 of that in absolute terms.
        for m in 0..=DEGREE_CAP {
            let h_terms = power_to_h_terms(m);
            let scale: f64 = h_terms.iter().map(|&(_, c)| c.abs()).fold(1.0, f64::max);
            let mut power_coeffs = vec![0.0; m + 1];
            for (k, ck) in h_terms {
                for (j, cj) in h_to_power_terms(k) {
                    power_coeffs[j] += ck * cj;
                }
            }
            for (j, &c) in power_coeffs.iter().enumerate() {
                let want = if j == m { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-14 * scale, "m={m} j={j} got {c}");
            }
        }
    }

    #[test]
    fn table_matches_pointwise() {
        let t = 0.83;
        let table = univariate_table(9, t);
        for (m, &v) in table.iter().enumerate() {
            assert_eq!(v, univariate(m, t));
        }
    }
}
