//! Text encodings shared by the JSON/JSONL outputs.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::surfaces::{GroupElement, SurfaceKind, Word};

/// Floats written with 17 significant digits (`d.dddddddddddddddde±x`),
/// enough to round-trip every `f64` exactly.
pub mod sig17 {
    use serde::Serializer;
    use serde_json::value::RawValue;

    pub fn format(v: f64) -> String {
        if v.is_finite() {
            format!("{v:.16e}")
        } else {
            "null".to_owned()
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format(*v)).map_err(serde::ser::Error::custom)?;
        serde::Serialize::serialize(&raw, s)
    }
}

/// `[n, m]` for the lattice groups, `0`/`1` for the projective plane and a
/// generator word such as `"g0.g1'.g2"` for genus two.
pub fn element_to_json(g: &GroupElement) -> Value {
    match g {
        GroupElement::Torus { n, m } | GroupElement::Klein { n, m } => Value::from(vec![*n, *m]),
        GroupElement::Projective { flip } => Value::from(u8::from(*flip)),
        GroupElement::GenusTwo(w) => Value::from(w.to_string()),
    }
}

pub fn element_from_json(kind: SurfaceKind, v: &Value) -> Result<GroupElement> {
    let bad = || Error::Input(format!("cannot read a {kind} group element from {v}"));
    match kind {
        SurfaceKind::Torus | SurfaceKind::KleinBottle => {
            let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let n = pair[0].as_i64().ok_or_else(bad)?;
            let m = pair[1].as_i64().ok_or_else(bad)?;
            Ok(if kind == SurfaceKind::Torus {
                GroupElement::Torus { n, m }
            } else {
                GroupElement::Klein { n, m }
            })
        }
        SurfaceKind::ProjectivePlane => match v.as_u64() {
            Some(0) => Ok(GroupElement::Projective { flip: false }),
            Some(1) => Ok(GroupElement::Projective { flip: true }),
            _ => Err(bad()),
        },
        SurfaceKind::GenusTwo => {
            let text = v.as_str().ok_or_else(bad)?;
            Ok(GroupElement::GenusTwo(text.parse::<Word>()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_roundtrips() {
        for v in [0.2, 1.0 / 3.0, std::f64::consts::PI, 1e-300, 0.0, 12345.678] {
            let text = sig17::format(v);
            assert_eq!(text.parse::<f64>().unwrap(), v);
            let digits: String = text.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
            assert_eq!(digits.len(), 17);
        }
    }

    #[test]
    fn elements_roundtrip() {
        let cases = [
            GroupElement::Torus { n: -1, m: 2 },
            GroupElement::Klein { n: 3, m: -1 },
            GroupElement::Projective { flip: true },
            GroupElement::GenusTwo("g0.g1'.g2".parse().unwrap()),
            GroupElement::GenusTwo(Word::identity()),
        ];
        for g in cases {
            let v = element_to_json(&g);
            assert_eq!(element_from_json(g.kind(), &v).unwrap(), g);
        }
        assert_eq!(element_to_json(&GroupElement::GenusTwo("g0.g1'".parse().unwrap())), Value::from("g0.g1'"));
        assert!(element_from_json(SurfaceKind::Torus, &Value::from(3)).is_err());
    }
}
