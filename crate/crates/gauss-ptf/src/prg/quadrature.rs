//! Gauss-Hermite quadrature for the standard gaussian weight.
//!
//! The M-point rule is the discrete law on M nodes whose moments agree with
//! `N(0,1)` exactly through degree `2M - 1`. Nodes and weights come from the
//! Golub-Welsch construction: eigenvalues of the symmetric tridiagonal Jacobi
//! matrix (zero diagonal, off-diagonal `sqrt(1), sqrt(2), ..., sqrt(M-1)`)
//! are the nodes, and the squared first components of the normalized
//! eigenvectors are the weights.

use crate::error::{Error, Result};

pub const MAX_NODES: usize = 32;

/// The M-point rule as `(node, weight)` pairs in ascending node order, with
/// weights summing to 1.
pub fn gauss_hermite_nodes(m: usize) -> Result<Vec<(f64, f64)>> {
    if m < 1 || m > MAX_NODES {
        return Err(Error::NodeCountRange(m));
    }
    let diag = vec![0.0; m];
    let off: Vec<f64> = (1..m).map(|i| (i as f64).sqrt()).collect();
    let (nodes, first_row) = tridiagonal_eigen_first_row(diag, off);

    let mut rule: Vec<(f64, f64)> = nodes
        .into_iter()
        .zip(first_row)
        .map(|(x, z)| (x, z * z))
        .collect();
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));

    // The squared first components already sum to 1 up to roundoff; clean up.
    let total: f64 = rule.iter().map(|&(_, w)| w).sum();
    for entry in &mut rule {
        entry.1 /= total;
    }
    Ok(rule)
}

/// QL algorithm with implicit shifts for a symmetric tridiagonal matrix,
/// accumulating only the first row of the eigenvector matrix (which is all
/// the Golub-Welsch weights need). `off[i]` couples rows `i` and `i+1`.
fn tridiagonal_eigen_first_row(mut d: Vec<f64>, off: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return (d, z);
    }

    for l in 0..n {
        let mut iterations = 0;
        loop {
            // find the end of the unreduced block starting at l
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations <= 50, "tridiagonal QL failed to converge");

            // Wilkinson-style shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let denom = g + if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // rotate columns i, i+1 of the first eigenvector row
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::gaussian_moment;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_out_of_range_counts() {
        assert!(gauss_hermite_nodes(0).is_err());
        assert!(gauss_hermite_nodes(33).is_err());
    }

    #[test]
    fn one_point_rule_is_the_mean() {
        assert_eq!(gauss_hermite_nodes(1).unwrap(), vec![(0.0, 1.0)]);
    }

    #[test]
    fn two_point_rule_is_rademacher() {
        let rule = gauss_hermite_nodes(2).unwrap();
        assert_relative_eq!(rule[0].0, -1.0, max_relative = 1e-12);
        assert_relative_eq!(rule[1].0, 1.0, max_relative = 1e-12);
        assert_relative_eq!(rule[0].1, 0.5, max_relative = 1e-12);
        assert_relative_eq!(rule[1].1, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn three_point_rule_closed_form() {
        let rule = gauss_hermite_nodes(3).unwrap();
        let s3 = 3f64.sqrt();
        assert_relative_eq!(rule[0].0, -s3, max_relative = 1e-12);
        assert_relative_eq!(rule[1].0, 0.0, epsilon = 1e-12);
        assert_relative_eq!(rule[2].0, s3, max_relative = 1e-12);
        assert_relative_eq!(rule[0].1, 1.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(rule[1].1, 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(rule[2].1, 1.0 / 6.0, max_relative = 1e-12);
    }

    fn raw_moment(rule: &[(f64, f64)], m: usize) -> f64 {
        rule.iter().map(|&(x, w)| w * x.powi(m as i32)).sum()
    }

    #[test]
    fn moments_exact_through_2m_minus_1() {
        for m in 1..=MAX_NODES {
            let rule = gauss_hermite_nodes(m).unwrap();
            let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((wsum - 1.0).abs() < 1e-12, "weights sum for M={m}");
            for deg in 0..=(2 * m - 1) {
                let got = raw_moment(&rule, deg);
                let want = gaussian_moment(deg);
                let scale = rule
                    .iter()
                    .map(|&(x, w)| w * x.abs().powi(deg as i32))
                    .sum::<f64>()
                    .max(1.0);
                assert!(
                    (got - want).abs() <= 1e-9 * scale,
                    "M={m} degree={deg}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn moment_fails_strictly_at_2m() {
        // first unmatched moment: M = 2 gives E[Y^4] = 1 against 3
        let rule = gauss_hermite_nodes(2).unwrap();
        let got = raw_moment(&rule, 4);
        assert_relative_eq!(got, 1.0, max_relative = 1e-10);
        assert!((got - 3.0).abs() > 1.0);

        for m in [3usize, 5, 8] {
            let rule = gauss_hermite_nodes(m).unwrap();
            let got = raw_moment(&rule, 2 * m);
            let want = gaussian_moment(2 * m);
            assert!(
                (got - want).abs() > 1e-3 * want.abs(),
                "M={m}: 2M-th moment unexpectedly matched"
            );
        }
    }
}
