//! Sparse multivariate polynomials in the Hermite and standard bases.
//!
//! A [`Poly`] stores a canonical sparse coefficient map `MultiIndex -> f64`
//! (no explicit zeros, keys in lexicographic order) together with the number
//! of variables `n`, a declared degree bound `d`, and the basis tag. In the
//! Hermite basis the coefficient of `alpha` is taken against the orthonormal
//! product polynomial `h_alpha(x) = prod_i h_{alpha_i}(x_i)`, so the squared
//! 2-norm of the coefficients equals `E[p(x)^2]` under `N(0,1)^n`.

pub mod hermite;
mod json;
mod multi_index;

pub use multi_index::{MultiIndex, DEGREE_CAP};

pub use multi_index::gaussian_moment;

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Which family of basis polynomials the stored coefficients refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Hermite,
    Standard,
}

/// Sparse polynomial over `n` variables with declared degree bound `d`.
///
/// Values are immutable after construction; all operations return new
/// polynomials and are safe to call from concurrent readers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    n: usize,
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl Poly {
    /// Build from `(multi-index, coefficient)` pairs. Duplicate indices are
    /// summed; exact-zero coefficients are dropped so the stored form is
    /// canonical. Fails on index-length mismatches and degree-cap violations.
    pub fn from_terms<I>(n: usize, degree: usize, basis: Basis, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (MultiIndex, f64)>,
    {
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap {
                got: degree,
                cap: DEGREE_CAP,
            });
        }
        let mut coeffs: BTreeMap<MultiIndex, f64> = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::IndexLength {
                    expected: n,
                    got: alpha.len(),
                });
            }
            if alpha.order() > degree {
                return Err(Error::DegreeCap {
                    got: alpha.order(),
                    cap: degree,
                });
            }
            if let Some(&e) = alpha.exponents().iter().find(|&&e| e as usize > DEGREE_CAP) {
                return Err(Error::ExponentCap {
                    got: e as usize,
                    cap: DEGREE_CAP,
                });
            }
            *coeffs.entry(alpha).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Ok(Poly {
            n,
            degree,
            basis,
            coeffs,
        })
    }

    /// The constant polynomial `c` with declared degree bound `degree`.
    pub fn constant(n: usize, degree: usize, basis: Basis, c: f64) -> Poly {
        Poly::from_terms(n, degree, basis, [(MultiIndex::zero(n), c)]).expect("constant is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared degree bound (every stored index has order at most this).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Stored terms in lexicographic index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `alpha` (zero when not stored).
    pub fn coeff(&self, alpha: &MultiIndex) -> f64 {
        self.coeffs.get(alpha).copied().unwrap_or(0.0)
    }

    /// Constant-term coefficient.
    pub fn constant_coeff(&self) -> f64 {
        self.coeff(&MultiIndex::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Per-coordinate basis-value tables for evaluation at `x`:
    /// `tables[i][m]` is `h_m(x_i)` (Hermite) or `x_i^m` (standard).
    fn value_tables(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .map(|&xi| match self.basis {
                Basis::Hermite => hermite::univariate_table(self.degree, xi),
                Basis::Standard => {
                    let mut t = Vec::with_capacity(self.degree + 1);
                    let mut p = 1.0;
                    for _ in 0..=self.degree {
                        t.push(p);
                        p *= xi;
                    }
                    t
                }
            })
            .collect()
    }

    /// Evaluate at a point of length `n`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        let tables = self.value_tables(x);
        Ok(self
            .coeffs
            .iter()
            .map(|(alpha, &c)| {
                let mut v = c;
                for (i, &e) in alpha.exponents().iter().enumerate() {
                    if e > 0 {
                        v *= tables[i][e as usize];
                    }
                }
                v
            })
            .sum())
    }

    /// The mixed partial derivative `d^alpha p`.
    ///
    /// In the Hermite basis each term maps as
    /// `h_beta -> sqrt(beta!/(beta-alpha)!) h_{beta-alpha}` (terms with
    /// `beta < alpha` vanish); in the standard basis the factor is the falling
    /// factorial `beta!/(beta-alpha)!` on monomials.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<Poly> {
        if alpha.len() != self.n {
            return Err(Error::IndexLength {
                expected: self.n,
                got: alpha.len(),
            });
        }
        let mut terms = Vec::new();
        for (beta, &c) in &self.coeffs {
            if let Some(gamma) = beta.checked_sub(alpha) {
                let ratio = beta.factorial() / gamma.factorial();
                let factor = match self.basis {
                    Basis::Hermite => ratio.sqrt(),
                    Basis::Standard => ratio,
                };
                terms.push((gamma, c * factor));
            }
        }
        Poly::from_terms(
            self.n,
            self.degree.saturating_sub(alpha.order()),
            self.basis,
            terms,
        )
    }

    /// Apply the noise operator: `coeff(alpha) -> rho^|alpha| coeff(alpha)`.
    /// Requires the Hermite basis (where the operator acts diagonally);
    /// `rho > 1` is permitted.
    pub fn noise(&self, rho: f64) -> Result<Poly> {
        self.require_basis(Basis::Hermite)?;
        if !(rho >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise parameter must be >= 0, got {rho}"
            )));
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(a, &c)| (a.clone(), c * rho.powi(a.order() as i32)));
        Poly::from_terms(self.n, self.degree, self.basis, terms)
    }

    /// Exact gaussian 2-norm `sqrt(E p(x)^2)`, valid in the Hermite basis by
    /// orthonormality. Convert standard-basis input first.
    pub fn l2_norm(&self) -> Result<f64> {
        self.require_basis(Basis::Hermite)?;
        Ok(self
            .coeffs
            .values()
            .map(|c| c * c)
            .sum::<f64>()
            .sqrt())
    }

    /// Hypercontractive upper bound on the gaussian `q`-norm for even `q >= 2`:
    /// `sqrt(sum (q-1)^|alpha| coeff(alpha)^2)`. Exact at `q = 2`.
    pub fn qnorm_bound(&self, q: u64) -> Result<f64> {
        self.require_basis(Basis::Hermite)?;
        if q < 2 || q % 2 != 0 {
            return Err(Error::InvalidMomentOrder(q));
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(a, &c)| ((q - 1) as f64).powi(a.order() as i32) * c * c)
            .sum::<f64>()
            .sqrt())
    }

    pub(crate) fn require_basis(&self, want: Basis) -> Result<()> {
        if self.basis != want {
            return Err(Error::BasisMismatch {
                expected: want,
                got: self.basis,
            });
        }
        Ok(())
    }

    /// Convert a Hermite-basis polynomial to the standard (monomial) basis by
    /// expanding each coordinate factor through the exact univariate tables.
    pub fn to_standard(&self) -> Result<Poly> {
        self.require_basis(Basis::Hermite)?;
        self.convert(Basis::Standard, hermite::h_to_power_terms)
    }

    /// Convert a standard-basis polynomial to the Hermite basis.
    pub fn to_hermite(&self) -> Result<Poly> {
        self.require_basis(Basis::Standard)?;
        self.convert(Basis::Hermite, hermite::power_to_h_terms)
    }

    fn convert(&self, target: Basis, univariate: fn(usize) -> Vec<(usize, f64)>) -> Result<Poly> {
        let mut out: BTreeMap<MultiIndex, f64> = BTreeMap::new();
        for (beta, &c) in &self.coeffs {
            // tensor product of the univariate expansions of each coordinate
            let mut partial: Vec<(Vec<u8>, f64)> = vec![(Vec::with_capacity(self.n), c)];
            for &e in beta.exponents() {
                let expansion = univariate(e as usize);
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (prefix, w) in &partial {
                    for &(m, u) in &expansion {
                        let mut p = prefix.clone();
                        p.push(m as u8);
                        next.push((p, w * u));
                    }
                }
                partial = next;
            }
            for (exps, w) in partial {
                *out.entry(MultiIndex::from_exponents(&exps)).or_insert(0.0) += w;
            }
        }
        Poly::from_terms(self.n, self.degree, target, out)
    }

    /// Rescale input coordinates: returns `q` with `q(x) = p(s * x)`.
    /// Standard basis only, where scaling acts diagonally on monomials.
    pub fn scale_coordinates(&self, s: f64) -> Result<Poly> {
        self.require_basis(Basis::Standard)?;
        let terms = self
            .coeffs
            .iter()
            .map(|(a, &c)| (a.clone(), c * s.powi(a.order() as i32)));
        Poly::from_terms(self.n, self.degree, self.basis, terms)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: f64) -> Poly {
        let terms = self.coeffs.iter().map(|(a, &v)| (a.clone(), v * c));
        Poly::from_terms(self.n, self.degree, self.basis, terms).expect("scaling preserves validity")
    }

    /// `sqrt(sum_{|alpha|=k} (d^alpha p (x))^2)` for `k = 0..=degree`.
    pub fn gradient_spectrum(&self, x: &[f64]) -> Result<GradientSpectrum> {
        self.check_point(x)?;
        Ok(DerivativePlan::new(self).spectrum(x))
    }

    /// Precompute the derivative evaluation plan (useful when the spectrum is
    /// needed at many points).
    pub fn derivative_plan(&self) -> DerivativePlan {
        DerivativePlan::new(self)
    }
}

/// The vector of derivative-tensor norms `||grad^k p(x)||` for `k = 0..=d`
/// at one evaluation point, where the squared norm sums `(d^alpha p(x))^2`
/// over multi-indices with `|alpha| = k` (no ordered-tensor multiplicity).
#[derive(Debug, Clone, PartialEq)]
pub struct GradientSpectrum {
    values: Vec<f64>,
}

impl GradientSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `||grad^k p(x)||`; zero beyond the declared degree.
    pub fn norm(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// Highest order tracked (the declared degree of the polynomial).
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// `max_k ||grad^k|| / ||grad^{k-1}||` over `1 <= k <= d`, with the
    /// conventions `0/0 = 0` and `pos/0 = +inf`.
    pub fn max_growth_ratio(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 1..self.values.len() {
            let num = self.values[k];
            let den = self.values[k - 1];
            let ratio = if num == 0.0 {
                0.0
            } else if den == 0.0 {
                f64::INFINITY
            } else {
                num / den
            };
            worst = worst.max(ratio);
        }
        worst
    }
}

/// Precomputed sparse table of every nonvanishing mixed partial of a
/// polynomial, for evaluating derivative values and gradient spectra at many
/// points without re-walking the coefficient map.
#[derive(Debug, Clone)]
pub struct DerivativePlan {
    n: usize,
    degree: usize,
    basis: Basis,
    // alpha -> [(coeff * factor, beta - alpha)], alphas sorted
    slots: Vec<(MultiIndex, Vec<(f64, MultiIndex)>)>,
}

impl DerivativePlan {
    fn new(p: &Poly) -> DerivativePlan {
        let mut map: BTreeMap<MultiIndex, Vec<(f64, MultiIndex)>> = BTreeMap::new();
        for (beta, &c) in &p.coeffs {
            for alpha in beta.lower_set() {
                let gamma = beta.checked_sub(&alpha).expect("alpha <= beta");
                let ratio = beta.factorial() / gamma.factorial();
                let factor = match p.basis {
                    Basis::Hermite => ratio.sqrt(),
                    Basis::Standard => ratio,
                };
                map.entry(alpha).or_default().push((c * factor, gamma));
            }
        }
        DerivativePlan {
            n: p.n,
            degree: p.degree,
            basis: p.basis,
            slots: map.into_iter().collect(),
        }
    }

    fn tables(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .map(|&xi| match self.basis {
                Basis::Hermite => hermite::univariate_table(self.degree, xi),
                Basis::Standard => {
                    let mut t = Vec::with_capacity(self.degree + 1);
                    let mut p = 1.0;
                    for _ in 0..=self.degree {
                        t.push(p);
                        p *= xi;
                    }
                    t
                }
            })
            .collect()
    }

    /// All `(alpha, d^alpha p(x))` pairs with nonvanishing derivative terms.
    pub fn derivative_values(&self, x: &[f64]) -> Vec<(MultiIndex, f64)> {
        let tables = self.tables(x);
        self.slots
            .iter()
            .map(|(alpha, entries)| {
                let v = entries
                    .iter()
                    .map(|(w, gamma)| {
                        let mut t = *w;
                        for (i, &e) in gamma.exponents().iter().enumerate() {
                            if e > 0 {
                                t *= tables[i][e as usize];
                            }
                        }
                        t
                    })
                    .sum::<f64>();
                (alpha.clone(), v)
            })
            .collect()
    }

    /// Gradient spectrum at `x`.
    pub fn spectrum(&self, x: &[f64]) -> GradientSpectrum {
        let mut sums = vec![0.0f64; self.degree + 1];
        for (alpha, v) in self.derivative_values(x) {
            sums[alpha.order()] += v * v;
        }
        GradientSpectrum {
            values: sums.into_iter().map(f64::sqrt).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}
