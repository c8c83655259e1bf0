//! Gaussian restrictions and the derivative-based well-behavedness calculus.
//!
//! The central object is the gaussian restriction
//! `p_{x,lambda}(y) = p(sqrt(1-lambda) x + sqrt(lambda) y)`, which fixes a
//! `(1-lambda)` fraction of the variance at the random center `x` and leaves
//! the rest free. Everything here works through the Hermite-basis Taylor
//! expansion of that restriction: writing `g = U_{sqrt(1-lambda)} p`, the
//! restricted polynomial has coefficients
//!
//! ```text
//! q(alpha) = d^alpha g(x) / sqrt(alpha!) * (lambda/(1-lambda))^(|alpha|/2)
//! ```
//!
//! The companion polynomial `phi(z) = U_{sqrt(1-lambda)} p(z / sqrt(1-lambda))`
//! absorbs the center scaling so that `p(x + sqrt(lambda) y)` expands around
//! `x` itself, with `d^alpha phi(x) = E_y d^alpha p(x + sqrt(lambda) y)`.

use crate::error::{Error, Result};
use crate::poly::{Basis, GradientSpectrum, Poly};

/// Center and free-variance fraction of a gaussian restriction.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Fraction of variance left free, in (0,1).
    pub lambda: f64,
    /// Restriction center, length must match the target polynomial.
    pub center: Vec<f64>,
}

impl Restriction {
    pub fn new(lambda: f64, center: Vec<f64>) -> Result<Restriction> {
        check_lambda(lambda)?;
        Ok(Restriction { lambda, center })
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaRange(lambda));
    }
    Ok(())
}

/// Restrict `p` at the given center: returns `q` with
/// `q(y) = p(sqrt(1-lambda) x + sqrt(lambda) y)` for all `y`.
pub fn restrict(p: &Poly, params: &Restriction) -> Result<Poly> {
    p.require_basis(Basis::Hermite)?;
    if params.center.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: params.center.len(),
        });
    }
    let lambda = params.lambda;
    let g = p.noise((1.0 - lambda).sqrt())?;
    let ratio = lambda / (1.0 - lambda);
    let terms = g
        .derivative_plan()
        .derivative_values(&params.center)
        .into_iter()
        .map(|(alpha, v)| {
            let scale = ratio.powf(alpha.order() as f64 / 2.0) / alpha.factorial().sqrt();
            (alpha, v * scale)
        });
    Poly::from_terms(p.n(), p.degree(), Basis::Hermite, terms)
}

/// The rescaled smoothing `phi(z) = U_{sqrt(1-lambda)} p(z / sqrt(1-lambda))`,
/// materialized exactly on stored coefficients: the noise operator acts
/// diagonally in the Hermite basis and the coordinate rescaling acts
/// diagonally in the standard basis. Equal to `p` itself when `p` is
/// multilinear.
pub fn phi(p: &Poly, lambda: f64) -> Result<Poly> {
    p.require_basis(Basis::Hermite)?;
    check_lambda(lambda)?;
    let smoothed = p.noise((1.0 - lambda).sqrt())?;
    let rescaled = smoothed
        .to_standard()?
        .scale_coordinates(1.0 / (1.0 - lambda).sqrt())?;
    rescaled.to_hermite()
}

/// Hypervariance of a Hermite-basis polynomial at weight `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypervarianceReport {
    /// `sum_{alpha != 0} coeff(alpha)^2 R^(2|alpha|)`.
    pub hypervariance: f64,
    /// Hypervariance divided by the squared constant coefficient;
    /// `+inf` when the constant coefficient is zero.
    pub normalized: f64,
    pub r: f64,
}

/// Compute hypervariance and its normalized form for `R >= 1`.
pub fn hypervariance(p: &Poly, r: f64) -> Result<HypervarianceReport> {
    p.require_basis(Basis::Hermite)?;
    if !(r >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "hypervariance weight must be >= 1, got {r}"
        )));
    }
    let hv: f64 = p
        .terms()
        .filter(|(alpha, _)| !alpha.is_zero())
        .map(|(alpha, c)| c * c * r.powi(2 * alpha.order() as i32))
        .sum();
    let c0 = p.constant_coeff();
    let normalized = if c0 == 0.0 { f64::INFINITY } else { hv / (c0 * c0) };
    Ok(HypervarianceReport {
        hypervariance: hv,
        normalized,
        r,
    })
}

/// Outcome of the normalized-hypervariance concentration test at even `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignFixedBound {
    /// Whether the hypothesis `H_sqrt(q)(p) <= 1/4` holds.
    pub applies: bool,
    /// Bound on `P(sign(p(y)) != sign of the constant coefficient)`:
    /// `2^-q` when the hypothesis applies, the vacuous `1` otherwise.
    pub bound: f64,
}

/// When the normalized hypervariance at weight `sqrt(q)` is at most 1/4, the
/// sign of `p` under gaussian (or `dq`-moment-matching) inputs differs from
/// the sign of its mean with probability at most `2^-q`.
pub fn sign_fixed_probability_bound(p: &Poly, q: u64) -> Result<SignFixedBound> {
    if q < 2 || q % 2 != 0 {
        return Err(Error::InvalidMomentOrder(q));
    }
    let h = hypervariance(p, (q as f64).sqrt())?;
    let applies = h.normalized <= 0.25;
    Ok(SignFixedBound {
        applies,
        bound: if applies { 0.5f64.powi(q as i32) } else { 1.0 },
    })
}

/// Upper bound on the `q/2`-norm of the squared deviation
/// `D(y) = ||grad^k p(x + sqrt(lambda) y) - grad^k phi(x)||^2`:
///
/// ```text
/// sum_{t = k+1}^{d} (lambda * d * q)^(t-k) * ||grad^t phi(x)||^2
/// ```
///
/// computed exactly from the gradient spectrum of `phi` at `x`, with `d` the
/// declared degree of `p`. The sum is empty (bound zero) at `k = d`.
pub fn deviation_moment_bound(p: &Poly, x: &[f64], lambda: f64, k: usize, q: u64) -> Result<f64> {
    check_lambda(lambda)?;
    if q < 2 || q % 2 != 0 {
        return Err(Error::InvalidMomentOrder(q));
    }
    let d = p.degree();
    if k > d {
        return Err(Error::InvalidParameter(format!(
            "derivative order {k} exceeds the declared degree {d}"
        )));
    }
    let spectrum = phi(p, lambda)?.gradient_spectrum(x)?;
    let base = lambda * d as f64 * q as f64;
    let mut bound = 0.0;
    for t in (k + 1)..=d {
        let norm = spectrum.norm(t);
        bound += base.powi((t - k) as i32) * norm * norm;
    }
    Ok(bound)
}

/// The standard bump: 0 for `t <= 0`, 1 for `t >= 1`, and
/// `e * exp(1 / ((t-1)^2 - 1))` in between.
pub fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let u = (t - 1.0) * (t - 1.0) - 1.0;
        std::f64::consts::E * (1.0 / u).exp()
    }
}

/// Smooth well-behavedness test at `x`:
///
/// ```text
/// g(x) = prod_{k=0}^{d-1} bump( log( ||grad^k p(x)||^2 / (16 eps^2 ||grad^{k+1} p(x)||^2) ) )
/// ```
///
/// Takes values in `[0,1]`; equals 0 as soon as one derivative order jumps by
/// more than `1/(4 eps)`, and 1 when every consecutive ratio is controlled.
/// A vanishing higher-order norm contributes a factor 1 (nothing left to
/// control), matching the limit of `bump(log(ratio))` as the ratio grows.
pub fn mollifier(p: &Poly, x: &[f64], eps: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(mollifier_from_spectrum(&p.gradient_spectrum(x)?, eps))
}

/// Mollifier value from a precomputed gradient spectrum.
pub fn mollifier_from_spectrum(spectrum: &GradientSpectrum, eps: f64) -> f64 {
    let mut g = 1.0;
    for k in 0..spectrum.max_order() {
        let num = spectrum.norm(k);
        let den = spectrum.norm(k + 1);
        if den == 0.0 {
            continue; // factor 1
        }
        let ratio = num / den;
        let arg = 2.0 * ratio.ln() - (16.0 * eps * eps).ln();
        g *= bump(arg);
        if g == 0.0 {
            break;
        }
    }
    g
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    Ok(())
}

/// Hard well-behavedness report: whether
/// `||grad^{k+1} p(x)|| <= (1/eps) ||grad^k p(x)||` holds for every
/// `k = 0, ..., d-1`, and if not, the largest violated `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WellBehavedReport {
    pub ok: bool,
    /// Largest `k` violating the growth inequality, when any.
    pub worst_k: Option<usize>,
}

pub fn is_well_behaved(p: &Poly, x: &[f64], eps: f64) -> Result<WellBehavedReport> {
    check_eps(eps)?;
    Ok(well_behaved_from_spectrum(&p.gradient_spectrum(x)?, eps))
}

/// Well-behavedness from a precomputed gradient spectrum.
pub fn well_behaved_from_spectrum(spectrum: &GradientSpectrum, eps: f64) -> WellBehavedReport {
    let mut worst = None;
    for k in 0..spectrum.max_order() {
        if spectrum.norm(k + 1) > spectrum.norm(k) / eps {
            worst = Some(k);
        }
    }
    WellBehavedReport {
        ok: worst.is_none(),
        worst_k: worst,
    }
}
