//! JSON system descriptors:
//!
//! ```text
//! {"kind":"matrices","A":[[..],[..]],"B":[[..],[..]],"C":[[..],[..]]}
//! {"kind":"complex","a":[re,im],"b":[re,im],"c":[re,im]}
//! {"kind":"canonical","tau":t,"sigma":s}
//! ```

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexScalar, Mat2};
use crate::system::{from_canonical_params, from_complex_equation, ComplexEquation, SystemSpec};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SystemDescriptor {
    Matrices {
        #[serde(rename = "A")]
        a: Mat2,
        #[serde(rename = "B")]
        b: Mat2,
        #[serde(rename = "C")]
        c: Mat2,
    },
    Complex {
        a: [f64; 2],
        b: [f64; 2],
        c: [f64; 2],
    },
    Canonical {
        tau: f64,
        sigma: f64,
    },
}

impl SystemDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("descriptor: {e}")))
    }

    pub fn to_spec(&self) -> Result<SystemSpec> {
        match *self {
            SystemDescriptor::Matrices { a, b, c } => SystemSpec::new(a, b, c),
            SystemDescriptor::Complex { a, b, c } => {
                let z = |p: [f64; 2]| ComplexScalar::new(p[0], p[1]);
                Ok(from_complex_equation(&ComplexEquation::new(z(a), z(b), z(c))?))
            }
            SystemDescriptor::Canonical { tau, sigma } => from_canonical_params(tau, sigma),
        }
    }
}

/// Parses a descriptor and builds its system.
pub fn parse_system(text: &str) -> Result<SystemSpec> {
    SystemDescriptor::parse(text)?.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_kinds() {
        let s = parse_system(r#"{"kind":"matrices","A":[[1,0],[0,1]],"B":[[0,0],[0,0]],"C":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(s, SystemSpec::laplace());
        let s = parse_system(r#"{"kind":"complex","a":[1,0],"b":[0,1],"c":[-1,0]}"#).unwrap();
        assert_eq!(s.b, Mat2::new(0.0, -1.0, 1.0, 0.0));
        let s = parse_system(r#"{"kind":"canonical","tau":0,"sigma":0.5}"#).unwrap();
        assert_eq!(s.a, Mat2::diag(1.5, 0.5));
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"kind":"matrices","A":[[1,0],[0,1]],"B":[[0,0],[0,0]]}"#,
            r#"{"kind":"matrix","A":[[1,0],[0,1]]}"#,
            r#"{"kind":"complex","a":[1,0],"b":[0,1],"c":[-1,0],"d":[0,0]}"#,
            r#"{"kind":"canonical","tau":0,"sigma":"inf"}"#,
            r#"{"kind":"canonical","tau":0,"sigma":NaN}"#,
            r#"{"kind":"canonical","tau":1.5,"sigma":0.2}"#,
            r#"{"kind":"complex","a":[0,0],"b":[0,0],"c":[0,0]}"#,
            r#"{"kind":"matrices","A":[[1,0],[0,1]],"B":[[0,0],[0,0]],"C":[[1e400,0],[0,1]]}"#,
            "not json",
        ] {
            assert!(matches!(parse_system(text), Err(Error::InvalidParams(_))), "{text}");
        }
    }
}
