//! Measure how well the bucketed generator `Z = (1/sqrt(L)) sum Y_i` fools
//! sign tests of low-degree polynomials.
//!
//! Each bucket `Y_i` matches `d * R` gaussian moments; the two-sided fooling
//! error per instance is the gap between the sign frequency under `Z` and
//! under true gaussian sampling.
//!
//! ```bash
//! cargo run --release -p gauss-ptf --example prg_fooling
//! ```

use gauss_ptf::experiment::{corpus_generate, exp_fooling_error, CorpusKind};
use gauss_ptf::prg::PrgConfig;

fn main() -> gauss_ptf::Result<()> {
    let corpus = corpus_generate(CorpusKind::Mixed, 4, 3, 5, 7)?;
    println!("instance            L   R   |E sign(p(Z)) - E sign(p(z))|   95% half-width");
    for (buckets, moment_param) in [(4u64, 2u64), (16, 4), (64, 6)] {
        for inst in &corpus {
            let config = PrgConfig::new(4, 3, buckets, moment_param, 7);
            let r = exp_fooling_error(&inst.poly, &config, 50_000, 200_000)?;
            println!(
                "{:<18} {:>3} {:>3}   {:>27.5}   {:.5}",
                inst.label.to_string(),
                buckets,
                moment_param,
                r.estimate,
                r.ci_radius
            );
        }
        println!();
    }
    println!("random instances sit inside the Monte Carlo noise from L = 16 on. The");
    println!("near-balanced power instances decay more slowly: their threshold falls");
    println!("exactly on an atom of the discrete output law (exact +/- cancellations,");
    println!("counted as sign 1), whose mass shrinks as the bucket count grows.");
    Ok(())
}
