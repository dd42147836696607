//! JSON wire formats. Exact values serialize rationals as fraction
//! strings, never floats; floats appear only in the IVP payloads.
//!
//! A polynomial is `{"varcount": n, "terms": [{"exp": [...], "coef": "p/q"}]}`
//! with terms in graded-lex order, and a vector polynomial is
//! `{"components": [poly, ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{format_rational, parse_rational};
use crate::vecpoly::VectorPolynomial;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolynomialJson {
    pub varcount: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct VectorPolynomialJson {
    pub components: Vec<PolynomialJson>,
}

pub fn polynomial_to_json(p: &Polynomial) -> PolynomialJson {
    PolynomialJson {
        varcount: p.varcount(),
        terms: p
            .iter()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                coef: format_rational(c),
            })
            .collect(),
    }
}

pub fn polynomial_from_json(j: &PolynomialJson) -> Result<Polynomial> {
    let mut p = Polynomial::zero(j.varcount);
    for t in &j.terms {
        if t.exp.len() != j.varcount {
            return Err(Error::Parse(format!(
                "exponent vector of length {} in a {}-variable polynomial",
                t.exp.len(),
                j.varcount
            )));
        }
        p.add_term(Monomial(t.exp.clone()), parse_rational(&t.coef)?);
    }
    Ok(p)
}

pub fn vector_to_json(v: &VectorPolynomial) -> VectorPolynomialJson {
    VectorPolynomialJson {
        components: v.components().iter().map(polynomial_to_json).collect(),
    }
}

pub fn vector_from_json(j: &VectorPolynomialJson) -> Result<VectorPolynomial> {
    if j.components.is_empty() {
        return Err(Error::Parse("vector polynomial with no components".into()));
    }
    let comps = j
        .components
        .iter()
        .map(polynomial_from_json)
        .collect::<Result<Vec<_>>>()?;
    let vc = comps[0].varcount();
    if comps.iter().any(|p| p.varcount() != vc) {
        return Err(Error::Parse(
            "components disagree on variable count".into(),
        ));
    }
    Ok(VectorPolynomial::new(comps))
}

/// Manifest + payload for a generated basis.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BasisFileJson {
    pub n: usize,
    pub k: u32,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    pub count: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<String>,
    pub vectors: Vec<BasisVectorJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BasisVectorJson {
    pub params: serde_json::Value,
    pub value: VectorPolynomialJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn round_trip() {
        let p = &Polynomial::monomial(3, &[1, 2, 0], rat(3, 4))
            + &Polynomial::monomial(3, &[0, 0, 1], rat(-5, 1));
        let j = polynomial_to_json(&p);
        let s = serde_json::to_string(&j).unwrap();
        let back: PolynomialJson = serde_json::from_str(&s).unwrap();
        assert_eq!(polynomial_from_json(&back).unwrap(), p);
    }

    #[test]
    fn rejects_bad_exponent_length() {
        let j = PolynomialJson {
            varcount: 2,
            terms: vec![TermJson {
                exp: vec![1],
                coef: "1".into(),
            }],
        };
        assert!(polynomial_from_json(&j).is_err());
    }
}
