//! JSON forms of the exact types.
//!
//! Scalars are strings `"p/q"` or `"p/q+r/s i"`; polynomials are
//! `{"coeffs": [...]}` in ascending degree; rational functions are
//! `{"num": Poly, "den": Poly}`. Emission is canonical, so
//! `emit(parse(emit(x))) == emit(x)` byte for byte.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::affine::AffineMap;
use super::bivariate::BiPoly;
use super::gaussian::GaussianRational;
use super::ratfun::RatFun;
use super::univariate::Poly;

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Text(s) => s.parse().map_err(de::Error::custom),
            ScalarRepr::Int(n) => Ok(GaussianRational::from_int(n)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    coeffs: Vec<GaussianRational>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr { coeffs: self.coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Poly::new(PolyRepr::deserialize(d)?.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatFunRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFunRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

/// Input also accepts a bare polynomial or scalar as shorthand.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatFunInput {
    Fraction(RatFunRepr),
    Poly(Poly),
    Scalar(GaussianRational),
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RatFunInput::deserialize(d)
            .map_err(|_| de::Error::custom("expected {\"num\", \"den\"}, {\"coeffs\"} or a scalar"))?
        {
            RatFunInput::Fraction(r) => RatFun::new(r.num, r.den).map_err(de::Error::custom),
            RatFunInput::Poly(p) => Ok(RatFun::from_poly(p)),
            RatFunInput::Scalar(c) => Ok(RatFun::constant(c)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineRepr {
    a: GaussianRational,
    b: GaussianRational,
}

impl Serialize for AffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AffineRepr { a: self.a().clone(), b: self.b().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AffineRepr::deserialize(d)?;
        AffineMap::new(r.a, r.b).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiPolyRepr {
    #[serde(rename = "coeffs_in_W")]
    coeffs_in_w: Vec<RatFun>,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiPolyRepr { coeffs_in_w: self.coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(BiPoly::new(BiPolyRepr::deserialize(d)?.coeffs_in_w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poly_json_matches_documented_shape() {
        let p: Poly = serde_json::from_str(r#"{"coeffs":["1/1","0/1","0/1","0/1","0/1","0/1","1/1"]}"#).unwrap();
        assert_eq!(p, Poly::from_ints(&[1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"coeffs":["1/1","0/1","0/1","0/1","0/1","0/1","1/1"]}"#
        );
    }

    #[test]
    fn ratfun_json_is_canonicalized_on_read() {
        let r: RatFun = serde_json::from_str(r#"{"num":{"coeffs":["2","2"]},"den":{"coeffs":["0","2"]}}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"num":{"coeffs":["1/1","1/1"]},"den":{"coeffs":["0/1","1/1"]}}"#
        );
        assert!(serde_json::from_str::<RatFun>(r#"{"num":{"coeffs":["1"]},"den":{"coeffs":[]}}"#).is_err());
    }

    fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
    }

    proptest! {
        #[test]
        fn poly_emission_is_a_fixed_point(coeffs in proptest::collection::vec(gaussian(), 0..6)) {
            let p = Poly::new(coeffs);
            let text = serde_json::to_string(&p).unwrap();
            let back: Poly = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
