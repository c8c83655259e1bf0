//! Slow growth of derivative norms at random gaussian points.
//!
//! For a degree-d polynomial the consecutive derivative norms
//! `||grad^k p(x)||` rarely jump by a large factor. This example measures the
//! quantiles of the worst jump and compares the linear case against its
//! closed form (the ratio for `p = x_1` is exactly `1/|x_1|`).
//!
//! ```bash
//! cargo run -p gauss-ptf --example derivative_growth
//! ```

use gauss_ptf::experiment::{corpus_generate, exp_slow_growth, CorpusKind};
use gauss_ptf::poly::{Basis, MultiIndex, Poly};

fn main() -> gauss_ptf::Result<()> {
    let trials = 20_000;

    // the tight instance: p = x_1^d concentrates all mass on one coordinate
    for d in [1usize, 2, 3] {
        let p = Poly::from_terms(
            1,
            d,
            Basis::Standard,
            [(MultiIndex::from_exponents(&[d as u8]), 1.0)],
        )?;
        let r = exp_slow_growth(&p, 0.1, Some(10.0), trials, 7)?;
        println!(
            "p = x^{d}: 0.9-quantile of max growth ratio = {:.3} (+/- {:.3}), P(ratio > 10) = {:.4}",
            r.estimate, r.ci_radius, r.aux[2].1
        );
    }

    // for p = x the analytic median is 1 / median|N(0,1)| ~ 1.4826
    let p = Poly::from_terms(1, 1, Basis::Standard, [(MultiIndex::from_exponents(&[1]), 1.0)])?;
    let r = exp_slow_growth(&p, 0.5, None, trials, 7)?;
    println!(
        "\nlinear check: median ratio {:.4} vs analytic 1.4826",
        r.estimate
    );

    // random degree-3 instances in 4 variables stay tame too
    println!("\nrandom degree-3 instances, 0.9-quantile of the max ratio:");
    for inst in corpus_generate(CorpusKind::RandomHermite, 4, 3, 3, 11)? {
        let r = exp_slow_growth(&inst.poly, 0.1, None, trials, 7)?;
        println!("  {:.3} (+/- {:.3})", r.estimate, r.ci_radius);
    }
    Ok(())
}
