//! Deterministic threshold-function test corpora.

use crate::error::Result;
use crate::poly::{Basis, MultiIndex, Poly};
use crate::prg::stream_rng;
use rand::Rng;
use rand_distr::StandardNormal;
use std::fmt;

/// Tags describing how a corpus instance was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusLabel {
    /// Unit-norm random coefficients on random Hermite-basis indices.
    RandomHermite,
    /// Sparse random monomial coefficients in the standard basis.
    RandomStandard,
    /// Very sparse Hermite polynomial (few terms, no constant).
    Sparse,
    /// The single power `x_1^d`, the tight example for derivative growth.
    MonomialPower,
    /// Anything supplied by the caller (e.g. loaded from a file).
    Custom,
}

impl CorpusLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CorpusLabel::RandomHermite => "random_hermite",
            CorpusLabel::RandomStandard => "random_standard",
            CorpusLabel::Sparse => "sparse",
            CorpusLabel::MonomialPower => "monomial_power",
            CorpusLabel::Custom => "custom",
        }
    }

    /// Stable numeric code used in CSV aux columns.
    pub fn code(&self) -> f64 {
        match self {
            CorpusLabel::RandomHermite => 0.0,
            CorpusLabel::RandomStandard => 1.0,
            CorpusLabel::Sparse => 2.0,
            CorpusLabel::MonomialPower => 3.0,
            CorpusLabel::Custom => 4.0,
        }
    }
}

impl fmt::Display for CorpusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One test instance: a polynomial plus its provenance tag.
#[derive(Debug, Clone)]
pub struct PtfInstance {
    pub poly: Poly,
    pub label: CorpusLabel,
}

/// What kind of corpus to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    RandomHermite,
    RandomStandard,
    Sparse,
    MonomialPower,
    /// Cycle through all kinds, interleaving centered variants whose constant
    /// term shifts the sign probability near one half.
    Mixed,
}

impl CorpusKind {
    pub fn parse(s: &str) -> Option<CorpusKind> {
        match s {
            "random-hermite" | "random_hermite" => Some(CorpusKind::RandomHermite),
            "random-standard" | "random_standard" => Some(CorpusKind::RandomStandard),
            "sparse" => Some(CorpusKind::Sparse),
            "monomial-power" | "monomial_power" => Some(CorpusKind::MonomialPower),
            "mixed" => Some(CorpusKind::Mixed),
            _ => None,
        }
    }
}

/// Generate `count` deterministic instances over `n` variables of degree `d`.
/// The same `(kind, n, d, count, seed)` always yields the same corpus.
pub fn corpus_generate(
    kind: CorpusKind,
    n: usize,
    d: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<PtfInstance>> {
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let instance = match kind {
            CorpusKind::RandomHermite => random_hermite(n, d, seed, idx as u64)?,
            CorpusKind::RandomStandard => random_standard(n, d, seed, idx as u64)?,
            CorpusKind::Sparse => sparse_hermite(n, d, seed, idx as u64)?,
            CorpusKind::MonomialPower => monomial_power(n, d)?,
            CorpusKind::Mixed => match idx % 5 {
                0 => random_hermite(n, d, seed, idx as u64)?,
                1 => random_standard(n, d, seed, idx as u64)?,
                2 => sparse_hermite(n, d, seed, idx as u64)?,
                3 => monomial_power(n, d)?,
                _ => centered_monomial_power(n, d, seed, idx as u64)?,
            },
        };
        out.push(instance);
    }
    Ok(out)
}

fn random_multi_index<R: Rng>(rng: &mut R, n: usize, d: usize) -> MultiIndex {
    // a random order in 1..=d spread over random coordinates
    let order = rng.gen_range(1..=d);
    let mut exps = vec![0u8; n];
    for _ in 0..order {
        let i = rng.gen_range(0..n);
        exps[i] += 1;
    }
    MultiIndex::from_exponents(&exps)
}

/// Random Hermite-coefficient polynomial scaled to unit gaussian 2-norm.
fn random_hermite(n: usize, d: usize, seed: u64, idx: u64) -> Result<PtfInstance> {
    let mut rng = stream_rng(seed, idx);
    let num_terms = 2 * (d + 1);
    let mut terms = vec![(MultiIndex::zero(n), rng.sample::<f64, _>(StandardNormal))];
    for _ in 0..num_terms {
        let alpha = random_multi_index(&mut rng, n, d);
        terms.push((alpha, rng.sample(StandardNormal)));
    }
    let p = Poly::from_terms(n, d, Basis::Hermite, terms)?;
    let norm = p.l2_norm()?;
    Ok(PtfInstance {
        poly: p.scale(1.0 / norm),
        label: CorpusLabel::RandomHermite,
    })
}

/// Sparse standard-basis polynomial with uniform coefficients.
fn random_standard(n: usize, d: usize, seed: u64, idx: u64) -> Result<PtfInstance> {
    let mut rng = stream_rng(seed, idx.wrapping_add(1 << 32));
    let num_terms = d + 3;
    let mut terms = Vec::with_capacity(num_terms);
    for _ in 0..num_terms {
        let alpha = random_multi_index(&mut rng, n, d);
        terms.push((alpha, rng.gen_range(-1.0..1.0)));
    }
    Ok(PtfInstance {
        poly: Poly::from_terms(n, d, Basis::Standard, terms)?,
        label: CorpusLabel::RandomStandard,
    })
}

/// Two or three Hermite terms without a constant.
fn sparse_hermite(n: usize, d: usize, seed: u64, idx: u64) -> Result<PtfInstance> {
    let mut rng = stream_rng(seed, idx.wrapping_add(2 << 32));
    let num_terms = 2 + (idx % 2) as usize;
    let mut terms = Vec::with_capacity(num_terms);
    for _ in 0..num_terms {
        let alpha = random_multi_index(&mut rng, n, d);
        terms.push((alpha, rng.sample::<f64, _>(StandardNormal)));
    }
    let p = Poly::from_terms(n, d, Basis::Hermite, terms)?;
    let p = if p.is_zero() {
        Poly::from_terms(n, d, Basis::Hermite, [(MultiIndex::unit(n, 0), 1.0)])?
    } else {
        p
    };
    Ok(PtfInstance {
        poly: p,
        label: CorpusLabel::Sparse,
    })
}

/// `x_1^d` in the standard basis.
fn monomial_power(n: usize, d: usize) -> Result<PtfInstance> {
    let mut exps = vec![0u8; n];
    exps[0] = d as u8;
    Ok(PtfInstance {
        poly: Poly::from_terms(
            n,
            d,
            Basis::Standard,
            [(MultiIndex::from_exponents(&exps), 1.0)],
        )?,
        label: CorpusLabel::MonomialPower,
    })
}

/// `x_1^d - t` with `t` a Monte Carlo estimate of the median of `x_1^d`, so
/// the threshold function sits near acceptance probability one half.
fn centered_monomial_power(n: usize, d: usize, seed: u64, idx: u64) -> Result<PtfInstance> {
    let base = monomial_power(n, d)?.poly;
    let mut rng = stream_rng(seed, idx.wrapping_add(3 << 32));
    let trials = 100_000;
    let mut values: Vec<f64> = (0..trials)
        .map(|_| {
            let x: f64 = rng.sample(StandardNormal);
            x.powi(d as i32)
        })
        .collect();
    values.sort_by(f64::total_cmp);
    let median = super::stats::quantile_sorted(&values, 0.5);
    let shifted = Poly::from_terms(
        n,
        d,
        Basis::Standard,
        base.terms()
            .map(|(a, c)| (a.clone(), c))
            .chain([(MultiIndex::zero(n), -median)]),
    )?;
    Ok(PtfInstance {
        poly: shifted,
        label: CorpusLabel::MonomialPower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_power_is_first_coordinate_power() {
        let c = corpus_generate(CorpusKind::MonomialPower, 3, 3, 1, 0).unwrap();
        let p = &c[0].poly;
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.eval(&[2.0, 5.0, -1.0]).unwrap(), 8.0);
    }

    #[test]
    fn empty_corpus() {
        assert!(corpus_generate(CorpusKind::Mixed, 4, 3, 0, 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn same_seed_reproduces_corpus() {
        let a = corpus_generate(CorpusKind::Mixed, 4, 3, 10, 42).unwrap();
        let b = corpus_generate(CorpusKind::Mixed, 4, 3, 10, 42).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.poly, y.poly);
            assert_eq!(x.label, y.label);
        }
        let c = corpus_generate(CorpusKind::Mixed, 4, 3, 10, 43).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.poly != y.poly));
    }

    #[test]
    fn random_hermite_instances_are_unit_norm() {
        for inst in corpus_generate(CorpusKind::RandomHermite, 4, 3, 5, 9).unwrap() {
            let norm = inst.poly.l2_norm().unwrap();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_corpus_is_nonzero_and_within_degree() {
        for inst in corpus_generate(CorpusKind::Mixed, 4, 3, 20, 7).unwrap() {
            assert!(!inst.poly.is_zero());
            assert!(inst.poly.degree() <= 3);
        }
    }
}
