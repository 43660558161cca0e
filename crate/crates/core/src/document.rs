//! The structured input document for complexes, and the on-disk spline
//! format. Both are JSON; rational values are integers or strings like
//! "3/2". Unknown fields are rejected.

use crate::complex::{ComplexError, ComplexKind, PolytopalComplex};
use crate::poly::{Monomial, Polynomial};
use num::{BigInt, BigRational, One};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("spline document has {0} facet polynomials, complex has {1} facets")]
    FacetCountMismatch(usize, usize),
    #[error("monomial {0:?} has {1} exponents, expected {2}")]
    BadMonomial(Vec<u32>, usize, usize),
}

/// A rational number in a document: a JSON integer or a "p/q" string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Str(String),
}

impl RationalValue {
    pub fn parse(&self) -> Result<BigRational, DocumentError> {
        match self {
            RationalValue::Int(n) => Ok(BigRational::from_integer((*n).into())),
            RationalValue::Str(s) => parse_rational(s),
        }
    }

    pub fn from_rational(r: &BigRational) -> RationalValue {
        if r.denom().is_one() {
            if let Ok(n) = i64::try_from(r.numer().clone()) {
                return RationalValue::Int(n);
            }
        }
        RationalValue::Str(render_rational(r))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, DocumentError> {
    let bad = || DocumentError::BadRational(s.to_string());
    let mut parts = s.trim().splitn(2, '/');
    let numer: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(BigRational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Input document for [`load_complex`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub ambient_dim: usize,
    pub kind: ComplexKind,
    pub vertices: Vec<Vec<RationalValue>>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexDocument {
    pub fn to_complex(&self) -> Result<PolytopalComplex, DocumentError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(RationalValue::parse).collect())
            .collect::<Result<Vec<Vec<BigRational>>, _>>()?;
        Ok(PolytopalComplex::new(
            self.ambient_dim,
            self.kind,
            vertices,
            self.facets.clone(),
        )?)
    }

    pub fn from_complex(p: &PolytopalComplex) -> ComplexDocument {
        ComplexDocument {
            ambient_dim: p.ambient_dim(),
            kind: p.kind(),
            vertices: (0..p.num_vertices())
                .map(|i| p.vertex(i).iter().map(RationalValue::from_rational).collect())
                .collect(),
            facets: (0..p.num_facets()).map(|f| p.facet_cycle(f).to_vec()).collect(),
        }
    }
}

/// Parse and fully derive a complex from a JSON document.
pub fn load_complex(json: &str) -> Result<PolytopalComplex, DocumentError> {
    let doc: ComplexDocument = serde_json::from_str(json)?;
    doc.to_complex()
}

pub fn emit_complex(p: &PolytopalComplex) -> String {
    serde_json::to_string_pretty(&ComplexDocument::from_complex(p)).expect("serializable")
}

/// One term of a facet polynomial: exponent tuple plus coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplineTerm {
    pub monomial: Vec<u32>,
    pub coeff: RationalValue,
}

/// A spline as per-facet polynomials in the ambient (affine) variables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplineDocument {
    pub polynomials: Vec<Vec<SplineTerm>>,
}

impl SplineDocument {
    pub fn to_polynomials(
        &self,
        p: &PolytopalComplex,
    ) -> Result<Vec<Polynomial>, DocumentError> {
        if self.polynomials.len() != p.num_facets() {
            return Err(DocumentError::FacetCountMismatch(
                self.polynomials.len(),
                p.num_facets(),
            ));
        }
        let n = p.ambient_dim();
        self.polynomials
            .iter()
            .map(|terms| {
                let mut poly = Polynomial::zero(n);
                for t in terms {
                    if t.monomial.len() != n {
                        return Err(DocumentError::BadMonomial(
                            t.monomial.clone(),
                            t.monomial.len(),
                            n,
                        ));
                    }
                    poly.add_term(Monomial(t.monomial.clone()), t.coeff.parse()?);
                }
                Ok(poly)
            })
            .collect()
    }

    pub fn from_polynomials(polys: &[Polynomial]) -> SplineDocument {
        SplineDocument {
            polynomials: polys
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(m, c)| SplineTerm {
                            monomial: m.0.clone(),
                            coeff: RationalValue::from_rational(c),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn load_spline(json: &str, p: &PolytopalComplex) -> Result<Vec<Polynomial>, DocumentError> {
    let doc: SplineDocument = serde_json::from_str(json)?;
    doc.to_polynomials(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{qr, qr_frac};

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), qr_frac(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), qr(-7));
        assert_eq!(parse_rational(" 4 / -6 ").unwrap(), qr_frac(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn document_roundtrip_q() {
        let q = fixtures::q();
        let json = emit_complex(&q);
        let q2 = load_complex(&json).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let json = r#"{"ambient_dim":2,"kind":"simplicial","vertices":[[0,0],[1,0],[0,1]],"facets":[[0,1,2]],"extra":1}"#;
        assert!(matches!(load_complex(json), Err(DocumentError::Json(_))));
    }

    #[test]
    fn rational_string_vertices_accepted() {
        let json = r#"{"ambient_dim":2,"kind":"simplicial","vertices":[["0","0"],["3/2",0],[0,1]],"facets":[[0,1,2]]}"#;
        let c = load_complex(json).unwrap();
        assert_eq!(c.vertex(1)[0], qr_frac(3, 2));
    }

    #[test]
    fn spline_document_roundtrip() {
        let q = fixtures::q();
        let json = r#"{"polynomials":[[{"monomial":[2,0],"coeff":1}],[],[],[],[{"monomial":[0,0],"coeff":"1/3"}]]}"#;
        let polys = load_spline(json, &q).unwrap();
        assert_eq!(polys.len(), 5);
        assert_eq!(polys[0].total_degree(), Some(2));
        let doc = SplineDocument::from_polynomials(&polys);
        let again = doc.to_polynomials(&q).unwrap();
        assert_eq!(polys, again);
    }

    #[test]
    fn spline_document_wrong_facet_count() {
        let q = fixtures::q();
        let json = r#"{"polynomials":[[]]}"#;
        assert!(matches!(
            load_spline(json, &q),
            Err(DocumentError::FacetCountMismatch(1, 5))
        ));
    }
}
