//! Sweep the free-variance fraction and watch random restrictions freeze the
//! sign of a threshold function.
//!
//! For each center `x` the restricted sign is called fixed when one outcome
//! has probability above `1 - eps`; the reported estimate is the fraction of
//! fixed centers.
//!
//! ```bash
//! cargo run --release -p gauss-ptf --example restriction_fixing
//! ```

use gauss_ptf::experiment::{corpus_generate, exp_restriction_fixing, CorpusKind};

fn main() -> gauss_ptf::Result<()> {
    let p = corpus_generate(CorpusKind::RandomHermite, 4, 3, 1, 7)?[0]
        .poly
        .clone();
    let eps = 0.05;
    println!("random degree-3 instance in 4 variables, eps = {eps}:");
    println!("lambda     fixed fraction   95% half-width   mean max_b P(sign = b)");
    for lambda in [0.5, 0.1, 0.01, 0.001] {
        let r = exp_restriction_fixing(&p, lambda, eps, 400, 4000, 7)?;
        println!(
            "{lambda:<9} {:>13.3} {:>16.3} {:>22.4}",
            r.estimate, r.ci_radius, r.aux[0].1
        );
    }
    println!("\nshrinking lambda drives the fixed fraction toward 1.");
    Ok(())
}
