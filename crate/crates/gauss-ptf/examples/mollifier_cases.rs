//! The smooth well-behavedness test and the two behavioral cases of the
//! hybrid step.
//!
//! The mollifier multiplies bump factors testing whether each derivative
//! order jumps by more than `1/(4 eps)`; it is 1 deep inside the
//! well-behaved region and exactly 0 once one jump is too large. At a
//! well-behaved center the sign of the shifted polynomial is essentially
//! frozen; at a poorly-behaved one the mollifier kills the contribution.
//!
//! ```bash
//! cargo run -p gauss-ptf --example mollifier_cases
//! ```

use gauss_ptf::analysis::{bump, is_well_behaved, mollifier};
use gauss_ptf::experiment::exp_hybrid_step;
use gauss_ptf::poly::{Basis, MultiIndex, Poly};
use gauss_ptf::prg::SamplerKind;

fn main() -> gauss_ptf::Result<()> {
    println!("bump(t) at a few points:");
    for t in [-0.5, 0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  bump({t:5}) = {:.6}", bump(t));
    }

    // p = x_1 in two variables: behavior is governed by |x_1| alone
    let p = Poly::from_terms(2, 1, Basis::Standard, [(MultiIndex::unit(2, 0), 1.0)])?;
    let eps = 0.1;
    println!("\np = x_1, eps = {eps}: classification along |x_1|");
    for x1 in [0.01, 0.05, 0.2, 0.5, 1.0] {
        let x = [x1, 0.3];
        let report = is_well_behaved(&p, &x, eps)?;
        println!(
            "  x_1 = {x1:<5} mollifier = {:.4}  well-behaved = {}  worst k = {:?}",
            mollifier(&p, &x, eps)?,
            report.ok,
            report.worst_k
        );
    }

    // hybrid step at a poorly-behaved center: the mollifier is zero at
    // essentially every sampled point, so both expectations vanish
    let trials = 20_000;
    let r = exp_hybrid_step(
        &p,
        &[0.05, 0.3],
        1e-4,
        eps,
        4,
        trials,
        5,
        SamplerKind::FullyIndependent,
    )?;
    println!("\npoorly-behaved center:");
    println!("  |E_matched - E_gauss| = {:.5} (+/- {:.5})", r.estimate, r.ci_radius);
    for (name, value) in &r.aux {
        println!("  {name} = {value:.5}");
    }

    // and a well-behaved one: signs agree with the smoothed sign
    let r = exp_hybrid_step(
        &p,
        &[1.0, -0.4],
        1e-4,
        eps,
        4,
        trials,
        6,
        SamplerKind::FullyIndependent,
    )?;
    println!("\nwell-behaved center:");
    println!("  |E_matched - E_gauss| = {:.5} (+/- {:.5})", r.estimate, r.ci_radius);
    for (name, value) in &r.aux {
        println!("  {name} = {value:.5}");
    }
    Ok(())
}
