//! Tour of the polynomial core: building sparse polynomials in the Hermite
//! basis, evaluating, differentiating, applying the noise operator, and
//! moving between bases.
//!
//! ```bash
//! cargo run -p gauss-ptf --example hermite_calculus
//! ```

use gauss_ptf::poly::{hermite, Basis, MultiIndex, Poly};

fn main() -> gauss_ptf::Result<()> {
    // h_0..h_4 at a point: the orthonormal univariate family
    println!("h_m(0.5) for m = 0..=4:");
    for m in 0..=4 {
        println!("  h_{m}(0.5) = {:+.6}", hermite::univariate(m, 0.5));
    }

    // p(y) = 2 h_(1,0) - 0.5 h_(2,1) + 0.3, a sparse trivariate-free poly in 2 vars
    let p = Poly::from_terms(
        2,
        3,
        Basis::Hermite,
        [
            (MultiIndex::from_exponents(&[1, 0]), 2.0),
            (MultiIndex::from_exponents(&[2, 1]), -0.5),
            (MultiIndex::from_exponents(&[0, 0]), 0.3),
        ],
    )?;
    let x = [0.7, -1.2];
    println!("\np(x) at {x:?} = {:+.6}", p.eval(&x)?);

    // derivatives act term by term: d/dx_1 h_m = sqrt(m) h_{m-1}
    let d1 = p.derivative(&MultiIndex::unit(2, 0))?;
    println!("d p / d x_1 at {x:?} = {:+.6}", d1.eval(&x)?);

    // the gradient spectrum collects ||grad^k p(x)|| for all orders at once
    let spectrum = p.gradient_spectrum(&x)?;
    println!("gradient spectrum at x: {:?}", spectrum.values());

    // the noise operator damps coefficients geometrically in the order
    let smoothed = p.noise(0.5)?;
    println!(
        "\nnoise at rho = 0.5 rescales h_(2,1): {:+.4} -> {:+.4}",
        p.coeff(&MultiIndex::from_exponents(&[2, 1])),
        smoothed.coeff(&MultiIndex::from_exponents(&[2, 1])),
    );

    // orthonormality makes gaussian norms exact coefficient sums
    println!("||p||_2 under N(0,1)^2 = {:.6}", p.l2_norm()?);
    println!("hypercontractive bound on ||p||_4 = {:.6}", p.qnorm_bound(4)?);

    // basis change is exact on stored coefficients and round-trips
    let standard = p.to_standard()?;
    println!("\nstandard-basis form has {} terms:", standard.num_terms());
    for (alpha, c) in standard.terms() {
        println!("  {alpha:?}: {c:+.6}");
    }
    let back = standard.to_hermite()?;
    println!(
        "round-trip error on h_(2,1): {:.2e}",
        (back.coeff(&MultiIndex::from_exponents(&[2, 1])) + 0.5).abs()
    );
    Ok(())
}
