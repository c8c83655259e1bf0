//! The experiment implementations.
//!
//! Trial `t` of an experiment seeded with `s` draws from stream `(s, t)` (or
//! a fixed large offset plus `t` for a second independent input source), so
//! every experiment is reproducible and trials are order-independent.

use super::stats::{
    binomial_ci, mean, quantile_ci_sorted, quantile_sorted, sign01, sorted_copy, standard_error,
};
use super::{ExperimentReport, Params};
use crate::analysis::{
    hypervariance, is_well_behaved, mollifier_from_spectrum, phi, restrict, Restriction,
};
use crate::error::{Error, Result};
use crate::poly::{Basis, Poly};
use crate::prg::{gaussian_point, stream_rng, MomentSampler, Prg, PrgConfig, SamplerKind};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Stream offset separating a second randomness source (e.g. the gaussian
/// reference draws) from the primary one within the same master seed.
const SECOND_SOURCE: u64 = 1 << 40;

fn hermite_form(p: &Poly) -> Result<Poly> {
    match p.basis() {
        Basis::Hermite => Ok(p.clone()),
        Basis::Standard => p.to_hermite(),
    }
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in (0,1), got {v}"
        )));
    }
    Ok(())
}

/// Sample the growth of derivative norms at random gaussian points: records
/// `max_k ||grad^k p(x)|| / ||grad^{k-1} p(x)||` per trial and reports the
/// empirical `(1-delta)`-quantile of that max ratio. With a threshold, also
/// reports the fraction of trials whose ratio exceeds it.
pub fn exp_slow_growth(
    p: &Poly,
    delta: f64,
    threshold: Option<f64>,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    check_unit_interval("delta", delta)?;
    if trials < 100 {
        return Err(Error::InvalidParameter(format!(
            "slow-growth needs at least 100 trials, got {trials}"
        )));
    }
    let plan = p.derivative_plan();
    let ratios: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            plan.spectrum(&gaussian_point(seed, t, p.n()))
                .max_growth_ratio()
        })
        .collect();
    let sorted = sorted_copy(&ratios);
    let estimate = quantile_sorted(&sorted, 1.0 - delta);
    let ci_radius = quantile_ci_sorted(&sorted, 1.0 - delta);
    let mut aux = vec![("median_ratio".to_string(), quantile_sorted(&sorted, 0.5))];
    if let Some(thr) = threshold {
        let frac = ratios.iter().filter(|&&r| r > thr).count() as f64 / trials as f64;
        aux.push(("threshold".to_string(), thr));
        aux.push(("exceed_frac".to_string(), frac));
    }
    Ok(ExperimentReport {
        experiment: "slow_growth".into(),
        params: Params {
            n: p.n(),
            d: p.degree(),
            delta: Some(delta),
            trials,
            seed,
            ..Params::default()
        },
        estimate,
        ci_radius,
        aux,
    })
}

/// Estimate how often a random restriction pins the threshold function:
/// for each outer center `x`, restrict `p` at `(x, lambda)`, estimate
/// `m(x) = max_b P_y(sign = b)` by Monte Carlo, and report the fraction of
/// centers with `m(x) > 1 - eps`.
pub fn exp_restriction_fixing(
    p: &Poly,
    lambda: f64,
    eps: f64,
    outer_trials: u64,
    inner_trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    check_unit_interval("lambda", lambda)?;
    check_unit_interval("eps", eps)?;
    if outer_trials < 1 || inner_trials < 1 {
        return Err(Error::InvalidParameter("trial counts must be positive".into()));
    }
    let ph = hermite_form(p)?;
    let per_center: Vec<(bool, f64)> = (0..outer_trials)
        .into_par_iter()
        .map(|t| -> Result<(bool, f64)> {
            let x = gaussian_point(seed, 2 * t, ph.n());
            let q = restrict(&ph, &Restriction::new(lambda, x)?)?;
            let mut rng = stream_rng(seed, 2 * t + 1);
            let mut ones = 0u64;
            for _ in 0..inner_trials {
                let y: Vec<f64> = (0..q.n()).map(|_| rng.sample(StandardNormal)).collect();
                if q.eval(&y)? >= 0.0 {
                    ones += 1;
                }
            }
            let f = ones as f64 / inner_trials as f64;
            let m = f.max(1.0 - f);
            Ok((m > 1.0 - eps, m))
        })
        .collect::<Result<_>>()?;
    let fixed = per_center.iter().filter(|(fixed, _)| *fixed).count() as f64;
    let estimate = fixed / outer_trials as f64;
    let max_probs: Vec<f64> = per_center.iter().map(|&(_, m)| m).collect();
    Ok(ExperimentReport {
        experiment: "restriction_fixing".into(),
        params: Params {
            n: p.n(),
            d: p.degree(),
            lambda: Some(lambda),
            eps: Some(eps),
            trials: outer_trials,
            seed,
            ..Params::default()
        },
        estimate,
        ci_radius: binomial_ci(estimate, outer_trials),
        aux: vec![
            ("mean_max_prob".into(), mean(&max_probs)),
            ("inner_trials".into(), inner_trials as f64),
        ],
    })
}

/// Distribution of the normalized hypervariance of random restrictions:
/// reports the median over centers, with the 0.9 and 0.99 quantiles as aux
/// values.
pub fn exp_hypervariance(
    p: &Poly,
    lambda: f64,
    r: f64,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    check_unit_interval("lambda", lambda)?;
    if trials < 1 {
        return Err(Error::InvalidParameter("trial count must be positive".into()));
    }
    let ph = hermite_form(p)?;
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let x = gaussian_point(seed, t, ph.n());
            let q = restrict(&ph, &Restriction::new(lambda, x)?)?;
            Ok(hypervariance(&q, r)?.normalized)
        })
        .collect::<Result<_>>()?;
    let sorted = sorted_copy(&values);
    Ok(ExperimentReport {
        experiment: "hypervariance".into(),
        params: Params {
            n: p.n(),
            d: p.degree(),
            lambda: Some(lambda),
            trials,
            seed,
            ..Params::default()
        },
        estimate: quantile_sorted(&sorted, 0.5),
        ci_radius: quantile_ci_sorted(&sorted, 0.5),
        aux: vec![
            ("r_weight".into(), r),
            ("q90".into(), quantile_sorted(&sorted, 0.9)),
            ("q99".into(), quantile_sorted(&sorted, 0.99)),
        ],
    })
}

/// Frequency of the relative-anticoncentration event
/// `|p(x)| <= eps ||grad p(x)||` under gaussian `x`.
pub fn exp_anticoncentration(
    p: &Poly,
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if trials < 1 {
        return Err(Error::InvalidParameter("trial count must be positive".into()));
    }
    let plan = p.derivative_plan();
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = plan.spectrum(&gaussian_point(seed, t, p.n()));
            u64::from(s.norm(0) <= eps * s.norm(1))
        })
        .sum();
    let estimate = hits as f64 / trials as f64;
    Ok(ExperimentReport {
        experiment: "anticoncentration".into(),
        params: Params {
            n: p.n(),
            d: p.degree(),
            eps: Some(eps),
            trials,
            seed,
            ..Params::default()
        },
        estimate,
        ci_radius: binomial_ci(estimate, trials),
        aux: vec![],
    })
}

/// Two-sided fooling error of the bucketed generator on one instance:
/// `|E sign(p(Z)) - E sign(p(z))|` with `Z` from the generator and `z`
/// gaussian, combining both binomial standard errors into the half-width.
pub fn exp_fooling_error(
    p: &Poly,
    config: &PrgConfig,
    prg_draws: u64,
    mc_draws: u64,
) -> Result<ExperimentReport> {
    if prg_draws < 10_000 || mc_draws < 10_000 {
        return Err(Error::InvalidParameter(
            "fooling-error estimates need at least 1e4 draws per side".into(),
        ));
    }
    if p.n() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            got: p.n(),
        });
    }
    let prg = Prg::new(config.clone())?;
    let prg_hits: u64 = (0..prg_draws)
        .into_par_iter()
        .map(|t| {
            let z = prg.output(t);
            u64::from(p.eval(&z).expect("dimension checked") >= 0.0)
        })
        .sum();
    let mc_hits: u64 = (0..mc_draws)
        .into_par_iter()
        .map(|t| {
            let z = gaussian_point(config.master_seed, SECOND_SOURCE + t, p.n());
            u64::from(p.eval(&z).expect("dimension checked") >= 0.0)
        })
        .sum();
    let p_prg = prg_hits as f64 / prg_draws as f64;
    let p_mc = mc_hits as f64 / mc_draws as f64;
    let se = (p_prg * (1.0 - p_prg) / prg_draws as f64 + p_mc * (1.0 - p_mc) / mc_draws as f64)
        .sqrt();
    Ok(ExperimentReport {
        experiment: "fool".into(),
        params: Params {
            n: config.n,
            d: config.d,
            lambda: Some(config.lambda()),
            buckets: Some(config.buckets),
            moment_param: Some(config.moment_param),
            trials: prg_draws,
            seed: config.master_seed,
            ..Params::default()
        },
        estimate: (p_prg - p_mc).abs(),
        ci_radius: 1.96 * se,
        aux: vec![
            ("prg_mean".into(), p_prg),
            ("mc_mean".into(), p_mc),
            ("mc_draws".into(), mc_draws as f64),
        ],
    })
}

/// One hybrid step at a fixed center `x`: compare
/// `E sign(p(x + sqrt(lambda) Y)) g(x + sqrt(lambda) Y)` between the
/// `d*R`-moment-matching sampler and gaussian draws, where `g` is the
/// mollifier of `p` at width `eps`. Also classifies `x` as well- or
/// poorly-behaved for the smoothed polynomial and reports the frequencies the
/// two behavioral cases predict (mollifier exactly zero; sign disagreeing
/// with the smoothed sign).
#[allow(clippy::too_many_arguments)]
pub fn exp_hybrid_step(
    p: &Poly,
    x: &[f64],
    lambda: f64,
    eps: f64,
    moment_param: u64,
    trials: u64,
    seed: u64,
    kind: SamplerKind,
) -> Result<ExperimentReport> {
    check_unit_interval("lambda", lambda)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if trials < 1 || moment_param < 1 {
        return Err(Error::InvalidParameter(
            "hybrid step needs trials >= 1 and R >= 1".into(),
        ));
    }
    if x.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: x.len(),
        });
    }
    let ph = hermite_form(p)?;
    let smoothed = phi(&ph, lambda)?;
    let case = is_well_behaved(&smoothed, x, eps)?;
    let smoothed_sign = sign01(smoothed.eval(x)?);

    let k = p.degree() as u64 * moment_param;
    let sampler = match kind {
        SamplerKind::FullyIndependent => {
            MomentSampler::fully_independent(p.n(), k as usize, seed)?
        }
        SamplerKind::KWise { prime } => MomentSampler::k_wise(p.n(), k as usize, prime, seed)?,
    };

    let plan = p.derivative_plan();
    let sqrt_lambda = lambda.sqrt();
    let shifted = |y: &[f64]| -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| a + sqrt_lambda * b).collect()
    };
    let observe = |v: &[f64]| -> Result<(f64, bool, bool)> {
        let g = mollifier_from_spectrum(&plan.spectrum(v), eps);
        let s = sign01(p.eval(v)?);
        Ok((s * g, g == 0.0, s != smoothed_sign))
    };

    let matched: Vec<(f64, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| observe(&shifted(&sampler.sample(t))))
        .collect::<Result<_>>()?;
    let gaussian: Vec<(f64, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| observe(&shifted(&gaussian_point(seed, SECOND_SOURCE + t, p.n()))))
        .collect::<Result<_>>()?;

    let vals_y: Vec<f64> = matched.iter().map(|&(v, _, _)| v).collect();
    let vals_g: Vec<f64> = gaussian.iter().map(|&(v, _, _)| v).collect();
    let frac = |it: &[(f64, bool, bool)], pick: fn(&(f64, bool, bool)) -> bool| {
        it.iter().filter(|o| pick(o)).count() as f64 / trials as f64
    };
    let se = (standard_error(&vals_y).powi(2) + standard_error(&vals_g).powi(2)).sqrt();

    Ok(ExperimentReport {
        experiment: "hybrid_step".into(),
        params: Params {
            n: p.n(),
            d: p.degree(),
            lambda: Some(lambda),
            eps: Some(eps),
            moment_param: Some(moment_param),
            trials,
            seed,
            ..Params::default()
        },
        estimate: (mean(&vals_y) - mean(&vals_g)).abs(),
        ci_radius: 1.96 * se,
        aux: vec![
            ("well_behaved".into(), if case.ok { 1.0 } else { 0.0 }),
            (
                "worst_k".into(),
                case.worst_k.map(|k| k as f64).unwrap_or(-1.0),
            ),
            ("smoothed_sign".into(), smoothed_sign),
            ("g_zero_frac_matched".into(), frac(&matched, |o| o.1)),
            ("sign_flip_frac_matched".into(), frac(&matched, |o| o.2)),
            ("g_zero_frac_gauss".into(), frac(&gaussian, |o| o.1)),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use approx::assert_relative_eq;

    fn x1(n: usize, d: usize) -> Poly {
        Poly::from_terms(n, d, Basis::Standard, [(MultiIndex::unit(n, 0), 1.0)]).unwrap()
    }

    #[test]
    fn slow_growth_constant_polynomial() {
        let p = Poly::constant(2, 2, Basis::Hermite, 3.0);
        let r = exp_slow_growth(&p, 0.5, None, 200, 1).unwrap();
        assert_eq!(r.estimate, 0.0);
    }

    #[test]
    fn slow_growth_rejects_tiny_trial_counts() {
        let p = x1(1, 1);
        assert!(exp_slow_growth(&p, 0.5, None, 99, 1).is_err());
        assert!(exp_slow_growth(&p, 1.5, None, 200, 1).is_err());
    }

    #[test]
    fn restriction_fixing_constant_is_always_fixed() {
        let p = Poly::constant(2, 2, Basis::Hermite, 1.0);
        let r = exp_restriction_fixing(&p, 0.5, 0.05, 50, 50, 3).unwrap();
        assert_eq!(r.estimate, 1.0);
    }

    #[test]
    fn hypervariance_constant_restricts_to_zero() {
        let p = Poly::constant(2, 2, Basis::Hermite, 2.0);
        let r = exp_hypervariance(&p, 0.3, 2.0, 50, 3).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.aux[2].1, 0.0); // q99
    }

    #[test]
    fn hypervariance_is_scale_invariant() {
        let p = Poly::from_terms(
            2,
            2,
            Basis::Hermite,
            [
                (MultiIndex::zero(2), 0.5),
                (MultiIndex::from_exponents(&[1, 1]), 0.8),
            ],
        )
        .unwrap();
        let a = exp_hypervariance(&p, 0.1, 3.0, 60, 5).unwrap();
        let b = exp_hypervariance(&p.scale(2.0), 0.1, 3.0, 60, 5).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.aux, b.aux);
    }

    #[test]
    fn anticoncentration_constant_never_small() {
        let p = Poly::constant(3, 1, Basis::Hermite, 4.0);
        let r = exp_anticoncentration(&p, 0.1, 1000, 9).unwrap();
        assert_eq!(r.estimate, 0.0);
    }

    #[test]
    fn fooling_error_constant_is_zero() {
        let p = Poly::constant(2, 1, Basis::Hermite, 1.0);
        let cfg = PrgConfig::new(2, 1, 4, 2, 7);
        let r = exp_fooling_error(&p, &cfg, 10_000, 10_000).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert!(exp_fooling_error(&p, &cfg, 100, 10_000).is_err());
    }

    #[test]
    fn hybrid_step_constant_polynomial() {
        let p = Poly::constant(2, 1, Basis::Hermite, 2.0);
        let r = exp_hybrid_step(
            &p,
            &[0.1, -0.2],
            0.01,
            0.2,
            2,
            500,
            11,
            SamplerKind::FullyIndependent,
        )
        .unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.aux[0].1, 1.0); // well-behaved
    }

    #[test]
    fn reports_are_deterministic() {
        let p = x1(2, 2);
        let a = exp_anticoncentration(&p, 0.05, 5000, 21).unwrap();
        let b = exp_anticoncentration(&p, 0.05, 5000, 21).unwrap();
        assert_eq!(a, b);
        let c = exp_slow_growth(&p, 0.2, Some(5.0), 500, 21).unwrap();
        let d = exp_slow_growth(&p, 0.2, Some(5.0), 500, 21).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn linear_anticoncentration_matches_gaussian_cdf() {
        // P(|x_1| <= eps) = 2 Phi(eps) - 1 ~ 0.0797 at eps = 0.1
        let p = x1(1, 1);
        let r = exp_anticoncentration(&p, 0.1, 200_000, 13).unwrap();
        assert_relative_eq!(r.estimate, 0.07966, max_relative = 0.05);
        assert!(r.estimate >= 0.0 && r.estimate <= 1.0);
    }
}
