//! JSON forms. Integers are written as decimal strings so any size round-trips.
//!
//! IntPoly: `[[d_h, d_v, "coeff"], ...]` in descending graded-lex order.
//! RatFunc: `{"num": IntPoly, "den": IntPoly}`.
//! FieldElem: `{"c00": RatFunc, "c10": RatFunc, "c01": RatFunc, "c11": RatFunc}`
//! where c_ab multiplies u_v^a u_h^b.

use rug::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FieldElem, IntPoly, RatFunc};

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(u32, u32, String)> =
            self.sorted_terms().into_iter().map(|((a, b), c)| (a, b, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        let mut parsed = Vec::with_capacity(terms.len());
        let mut seen = std::collections::HashSet::new();
        for (a, b, c) in terms {
            let v: Integer = c.parse().map_err(|e| D::Error::custom(format!("bad integer {c:?}: {e}")))?;
            if v == 0 {
                return Err(D::Error::custom("zero coefficient stored"));
            }
            if !seen.insert((a, b)) {
                return Err(D::Error::custom(format!("repeated exponent ({a}, {b})")));
            }
            parsed.push((a, b, v));
        }
        Ok(IntPoly::from_terms(parsed))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: IntPoly,
    den: IntPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        let out = RatFunc::new(r.num.clone(), r.den.clone()).map_err(D::Error::custom)?;
        if out.num() != &r.num || out.den() != &r.den {
            return Err(D::Error::custom("rational function not in canonical form"));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct FieldElemRepr {
    c00: RatFunc,
    c10: RatFunc,
    c01: RatFunc,
    c11: RatFunc,
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [c00, c10, c01, c11] = self.components();
        FieldElemRepr { c00, c10, c01, c11 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FieldElemRepr::deserialize(d)?;
        Ok(FieldElem::from_components([r.c00, r.c10, r.c01, r.c11]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let big: Integer = rug::ops::Pow::pow(Integer::from(3), 200u32);
        let p = IntPoly::from_terms([(3, 1, big.clone()), (0, 0, Integer::from(-7))]);
        let x = FieldElem::w()
            .mul_poly(&p)
            .add(&FieldElem::u_v().mul_rat(&RatFunc::monomial(5, -2, 1)));
        let js = serde_json::to_string(&x).unwrap();
        let back: FieldElem = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
        assert!(js.contains(&big.to_string()));
    }

    #[test]
    fn rejects_non_canonical() {
        let js = r#"{"num": [[1, 0, "2"]], "den": [[1, 0, "4"]]}"#;
        assert!(serde_json::from_str::<RatFunc>(js).is_err());
    }
}
