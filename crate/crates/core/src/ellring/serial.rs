//! JSON form: `{"basis": "PI" | "PI_P", "terms": [{"i", "j", "l", "coeff"}, ...]}`
//! with terms in descending (l, j, i) order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Basis, EllMonomial, EllValue};
use crate::coeffield::FieldElem;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: u32,
    j: u32,
    l: u32,
    coeff: FieldElem,
}

#[derive(Serialize, Deserialize)]
struct ValueRepr {
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for EllValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(m, c)| TermRepr { i: m.i, j: m.j, l: m.l, coeff: c.clone() })
            .collect();
        ValueRepr { basis: self.basis(), terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EllValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ValueRepr::deserialize(d)?;
        let mut seen = std::collections::HashSet::new();
        for t in &r.terms {
            if t.coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient stored"));
            }
            if !seen.insert((t.i, t.j, t.l)) {
                return Err(D::Error::custom("repeated monomial"));
            }
        }
        Ok(EllValue::from_terms(r.terms.into_iter().map(|t| (EllMonomial::new(t.i, t.j, t.l), t.coeff)), r.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn round_trip() {
        let v = parse_value("u_v*((s_h^2+1)/s_h*P - K/s_h)*E + 7", Basis::PiP).unwrap();
        let js = serde_json::to_string(&v).unwrap();
        let back: EllValue = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
