//! JSON interchange format for sparse polynomials.
//!
//! ```json
//! { "n": 2, "d": 3, "basis": "hermite",
//!   "terms": [ { "alpha": [0, 1], "c": -0.5 }, { "alpha": [2, 0], "c": 1.0 } ] }
//! ```
//!
//! Terms must be sorted by lexicographic `alpha`; duplicate or explicitly zero
//! coefficients are rejected so files are canonical.

use super::{Basis, MultiIndex, Poly};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct PolyFile {
    n: usize,
    d: usize,
    basis: Basis,
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    alpha: Vec<u8>,
    c: f64,
}

impl Poly {
    pub fn to_json_string(&self) -> String {
        let file = PolyFile {
            n: self.n(),
            d: self.degree(),
            basis: self.basis(),
            terms: self
                .terms()
                .map(|(alpha, c)| TermFile {
                    alpha: alpha.exponents().to_vec(),
                    c,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("polynomial serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Poly> {
        let file: PolyFile = serde_json::from_str(s)?;
        if file.n == 0 {
            return Err(Error::PolyFormat("variable count must be positive".into()));
        }
        let mut prev: Option<MultiIndex> = None;
        let mut terms = Vec::with_capacity(file.terms.len());
        for t in &file.terms {
            let alpha = MultiIndex::from_exponents(&t.alpha);
            if let Some(p) = &prev {
                if *p == alpha {
                    return Err(Error::PolyFormat(format!("duplicate alpha {alpha:?}")));
                }
                if *p > alpha {
                    return Err(Error::PolyFormat(
                        "terms must be sorted by lexicographic alpha".into(),
                    ));
                }
            }
            if !t.c.is_finite() {
                return Err(Error::PolyFormat(format!(
                    "coefficient for {alpha:?} is not finite"
                )));
            }
            if t.c == 0.0 {
                return Err(Error::PolyFormat(format!(
                    "explicit zero coefficient for {alpha:?}"
                )));
            }
            prev = Some(alpha.clone());
            terms.push((alpha, t.c));
        }
        Poly::from_terms(file.n, file.d, file.basis, terms)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Poly> {
        let s = std::fs::read_to_string(path)?;
        Poly::from_json_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Poly {
        Poly::from_terms(
            2,
            3,
            Basis::Hermite,
            [
                (MultiIndex::from_exponents(&[0, 1]), -0.5),
                (MultiIndex::from_exponents(&[2, 0]), 1.25),
            ],
        )
        .unwrap()
    }

    #[test]
    fn round_trips_through_json() {
        let p = sample();
        let q = Poly::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_duplicate_alpha() {
        let s = r#"{"n":1,"d":2,"basis":"hermite",
            "terms":[{"alpha":[1],"c":1.0},{"alpha":[1],"c":2.0}]}"#;
        assert!(matches!(Poly::from_json_str(s), Err(Error::PolyFormat(_))));
    }

    #[test]
    fn rejects_unsorted_terms() {
        let s = r#"{"n":1,"d":2,"basis":"hermite",
            "terms":[{"alpha":[2],"c":1.0},{"alpha":[1],"c":2.0}]}"#;
        assert!(matches!(Poly::from_json_str(s), Err(Error::PolyFormat(_))));
    }

    #[test]
    fn rejects_zero_coefficient() {
        let s = r#"{"n":1,"d":2,"basis":"standard","terms":[{"alpha":[1],"c":0.0}]}"#;
        assert!(matches!(Poly::from_json_str(s), Err(Error::PolyFormat(_))));
    }

    #[test]
    fn rejects_wrong_alpha_length() {
        let s = r#"{"n":2,"d":2,"basis":"hermite","terms":[{"alpha":[1],"c":1.0}]}"#;
        assert!(Poly::from_json_str(s).is_err());
    }

    #[test]
    fn rejects_degree_above_bound() {
        let s = r#"{"n":1,"d":1,"basis":"hermite","terms":[{"alpha":[2],"c":1.0}]}"#;
        assert!(Poly::from_json_str(s).is_err());
    }
}
