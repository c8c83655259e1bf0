//! The JSON polynomial interchange format: write, read, validate, convert.
//!
//! ```bash
//! cargo run -p gauss-ptf --example polynomial_files
//! ```

use gauss_ptf::poly::{Basis, MultiIndex, Poly};

fn main() -> gauss_ptf::Result<()> {
    let p = Poly::from_terms(
        2,
        2,
        Basis::Hermite,
        [
            (MultiIndex::from_exponents(&[0, 1]), -0.5),
            (MultiIndex::from_exponents(&[2, 0]), 1.25),
        ],
    )?;

    let json = p.to_json_string();
    println!("canonical JSON form:\n{json}\n");

    let parsed = Poly::from_json_str(&json)?;
    assert_eq!(parsed, p);
    println!("parses back to an identical polynomial");

    // the format is strict: unsorted, duplicate, or explicitly zero terms
    // are rejected rather than silently normalized
    let bad = r#"{"n":1,"d":2,"basis":"hermite",
        "terms":[{"alpha":[2],"c":1.0},{"alpha":[1],"c":2.0}]}"#;
    match Poly::from_json_str(bad) {
        Err(e) => println!("unsorted input rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    // conversion keeps the function, changes the coefficients
    let standard = p.to_standard()?;
    println!("\nstandard-basis terms:");
    for (alpha, c) in standard.terms() {
        println!("  {alpha:?}: {c:+.6}");
    }
    let x = [0.3, -0.9];
    println!(
        "\nsame values everywhere: {:+.12} = {:+.12}",
        p.eval(&x)?,
        standard.eval(&x)?
    );
    Ok(())
}
