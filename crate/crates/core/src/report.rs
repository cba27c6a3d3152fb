//! Deterministic JSON output: compact, fields in declaration order, every
//! float written with 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use crate::canonical::CanonicalReport;
use crate::system::{characteristic_quartic, SystemSpec};

struct FixedFloat;

impl Formatter for FixedFloat {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, FixedFloat);
    value.serialize(&mut ser).expect("serialization to memory cannot fail");
    String::from_utf8(out).expect("JSON output is UTF-8")
}

/// Output of the `classify` command.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub elliptic: bool,
    pub strongly_elliptic: Option<bool>,
    pub strongly_elliptic_direct: Option<bool>,
    pub reducible: Option<bool>,
    pub marginal: bool,
    pub tol: f64,
    pub characteristic_quartic: [f64; 5],
    pub ellipticity_margin: f64,
    pub strong_ellipticity_margin: Option<f64>,
}

impl Classification {
    pub fn new(spec: &SystemSpec, report: &CanonicalReport) -> Self {
        let direct = if report.elliptic {
            crate::canonical::strong_ellipticity_margin(spec, report.tol).ok()
        } else {
            None
        };
        Self {
            elliptic: report.elliptic,
            strongly_elliptic: report.elliptic.then_some(report.strongly_elliptic),
            strongly_elliptic_direct: direct.map(|m| m > 1e-10),
            reducible: report.elliptic.then_some(report.reducible),
            marginal: report.marginal,
            tol: report.tol,
            characteristic_quartic: characteristic_quartic(spec).coeffs,
            ellipticity_margin: report.margins.ellipticity,
            strong_ellipticity_margin: direct,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonicalize;
    use crate::system::{from_canonical_params, from_complex_equation, ComplexEquation};
    use crate::{ComplexScalar, DEFAULT_TOL};

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(to_json(&0.1), "1.0000000000000001e-1");
        assert_eq!(to_json(&[1.0, -2.5]), "[1.0000000000000000e0,-2.5000000000000000e0]");
        let back: f64 = serde_json::from_str(&to_json(&(1.0 / 3.0))).unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn sigma_infinity_is_a_string() {
        let c = ComplexScalar::new;
        let bits = from_complex_equation(&ComplexEquation::new(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap());
        let r = canonicalize(&bits, DEFAULT_TOL).unwrap();
        let text = to_json(&r);
        assert!(text.contains(r#""sigma":"inf""#), "{text}");
    }

    #[test]
    fn reports_are_deterministic() {
        let s = from_canonical_params(0.2, 0.6).unwrap();
        let a = to_json(&canonicalize(&s, DEFAULT_TOL).unwrap());
        let b = to_json(&canonicalize(&s, DEFAULT_TOL).unwrap());
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["elliptic"], true);
    }
}
