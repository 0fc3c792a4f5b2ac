//! Multiplicative characters `χ(P∘Q) = χ(P)·χ(Q)` on the polynomial
//! composition semigroup, all vanishing on constants.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decompose::complete_decomposition;
use crate::equivalence::affine_biequiv;
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Poly};

/// Base of a power-valued character; symbolic bases (such as `e`) stay
/// unevaluated so values are exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Base {
    Symbolic(String),
    Exact(GaussianRational),
}

impl Base {
    pub fn parse(s: &str) -> Base {
        match s.parse::<GaussianRational>() {
            Ok(g) => Base::Exact(g),
            Err(_) => Base::Symbolic(s.trim().to_string()),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Symbolic(s) => f.write_str(s),
            Base::Exact(g) => f.write_str(&g.to_canonical_string()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CharValue {
    Zero,
    Exact(GaussianRational),
    PowerOfBase { base: Base, exp: i64 },
}

impl CharValue {
    pub fn one() -> Self {
        CharValue::Exact(GaussianRational::one())
    }

    /// Collapses exact powers to `Exact`, and `x^0` to `1`.
    fn normalized(&self) -> CharValue {
        match self {
            CharValue::Exact(g) if g.is_zero() => CharValue::Zero,
            CharValue::PowerOfBase { exp: 0, .. } => CharValue::one(),
            CharValue::PowerOfBase { base: Base::Exact(b), exp } => match b.powi(*exp) {
                Some(v) if v.is_zero() => CharValue::Zero,
                Some(v) => CharValue::Exact(v),
                None => self.clone(),
            },
            other => other.clone(),
        }
    }

    /// Equality of the represented numbers rather than of representations.
    pub fn same_value(&self, other: &CharValue) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn mul(&self, other: &CharValue) -> Result<CharValue> {
        use CharValue::*;
        Ok(match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Exact(x), Exact(y)) => Exact(x * y),
            (PowerOfBase { base: b1, exp: e1 }, PowerOfBase { base: b2, exp: e2 }) if b1 == b2 => {
                PowerOfBase { base: b1.clone(), exp: e1 + e2 }
            }
            (Exact(x), p @ PowerOfBase { .. }) | (p @ PowerOfBase { .. }, Exact(x)) if x.is_one() => p.clone(),
            _ => {
                let (a, b) = (self.normalized(), other.normalized());
                match (&a, &b) {
                    (Exact(_), Exact(_)) | (Zero, _) | (_, Zero) => a.mul(&b)?,
                    _ => return Err(Error::IncompatibleBases),
                }
            }
        })
    }
}

impl Serialize for CharValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CharValue::Zero => s.serialize_str("0"),
            CharValue::Exact(g) => s.serialize_str(&g.to_canonical_string()),
            CharValue::PowerOfBase { base, exp } => {
                serde_json::json!({"base": base.to_string(), "exp": exp}).serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for CharValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Power { base: String, exp: i64 },
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) if t.trim() == "0" => Ok(CharValue::Zero),
            Repr::Text(t) => t.parse().map(CharValue::Exact).map_err(D::Error::custom),
            Repr::Power { base, exp } => Ok(CharValue::PowerOfBase { base: Base::parse(&base), exp }),
        }
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharValue::Zero => f.write_str("0"),
            CharValue::Exact(g) => write!(f, "{g}"),
            CharValue::PowerOfBase { base, exp } => write!(f, "{base}^{exp}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Character {
    /// `deg(P)^s`
    Degree { s: u32 },
    /// `base^{l(P)}`, `l` the number of prime factors.
    Length { base: Base },
    /// `a^n` on the semigroup generated by the bi-orbit of the prime `P`,
    /// `n` the number of factors; zero elsewhere.
    AffineOrbit { prime: Poly, a: GaussianRational },
    /// Product of table values over a prime decomposition (missing primes are
    /// zero). Lookup is by exact equality with the normalized factors that
    /// [`complete_decomposition`] returns.
    PrimeTable { table: Vec<(Poly, CharValue)> },
}

fn table_lookup(table: &[(Poly, CharValue)], p: &Poly) -> CharValue {
    table.iter().find(|(k, _)| k == p).map(|(_, v)| v.clone()).unwrap_or(CharValue::Zero)
}

/// `Some(n)` with `d == base^n`.
fn log_exact(mut d: usize, base: usize) -> Option<u32> {
    let mut n = 0;
    while d > 1 && d.is_multiple_of(base) {
        d /= base;
        n += 1;
    }
    (d == 1).then_some(n)
}

pub fn evaluate(chi: &Character, p: &Poly) -> Result<CharValue> {
    let n = p.degree();
    if p.is_constant() {
        return Ok(CharValue::Zero);
    }
    Ok(match chi {
        Character::Degree { s } => CharValue::Exact(GaussianRational::from_int(n as i64).pow(*s)),
        Character::Length { base } => {
            let l = if n == 1 { 0 } else { complete_decomposition(p)?.len() };
            CharValue::PowerOfBase { base: base.clone(), exp: l as i64 }
        }
        Character::AffineOrbit { prime, a } => {
            let base = Base::Exact(a.clone());
            if n == 1 {
                return Ok(CharValue::PowerOfBase { base, exp: 0 });
            }
            if prime.degree() < 2 || log_exact(n, prime.degree()).is_none() {
                return Ok(CharValue::Zero);
            }
            let d = complete_decomposition(p)?;
            if d.factors().iter().all(|f| affine_biequiv(prime, f).is_some()) {
                CharValue::PowerOfBase { base, exp: d.len() as i64 }
            } else {
                CharValue::Zero
            }
        }
        Character::PrimeTable { table } => {
            if n == 1 {
                return Ok(CharValue::one());
            }
            let d = complete_decomposition(p)?;
            let mut acc = CharValue::one();
            for f in d.factors() {
                acc = acc.mul(&table_lookup(table, f))?;
            }
            acc
        }
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub index: usize,
    pub composed: CharValue,
    pub product: CharValue,
}

/// Pairs `(p, q)` where `χ(p∘q) ≠ χ(p)·χ(q)`.
pub fn verify_multiplicative(chi: &Character, samples: &[(Poly, Poly)]) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (index, (p, q)) in samples.iter().enumerate() {
        let composed = evaluate(chi, &p.compose(q))?;
        let product = evaluate(chi, p)?.mul(&evaluate(chi, q)?)?;
        if !composed.same_value(&product) {
            out.push(Violation { index, composed, product });
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct PrimeDataReport {
    /// Quadruples with `φ(P1)·φ(P2) ≠ φ(P3)·φ(P4)`.
    pub violations: Vec<usize>,
    /// Table keys that are constants but carry a nonzero value.
    pub nonzero_constants: Vec<Poly>,
}

impl PrimeDataReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty() && self.nonzero_constants.is_empty()
    }
}

pub fn check_prime_data(table: &[(Poly, CharValue)], quadruples: &[[Poly; 4]]) -> Result<PrimeDataReport> {
    let mut report = PrimeDataReport::default();
    for (index, [p1, p2, p3, p4]) in quadruples.iter().enumerate() {
        if p1.compose(p2) != p3.compose(p4) {
            return Err(Error::NotACompositionIdentity { index });
        }
        let lhs = table_lookup(table, p1).mul(&table_lookup(table, p2))?;
        let rhs = table_lookup(table, p3).mul(&table_lookup(table, p4))?;
        if !lhs.same_value(&rhs) {
            report.violations.push(index);
        }
    }
    report.nonzero_constants = table
        .iter()
        .filter(|(k, v)| k.is_constant() && !v.same_value(&CharValue::Zero))
        .map(|(k, _)| k.clone())
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::AffineMap;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn e() -> Base {
        Base::Symbolic("e".into())
    }

    fn orbit() -> Character {
        Character::AffineOrbit { prime: p(&[-2, 0, 1]), a: GaussianRational::from_int(3) }
    }

    #[test]
    fn evaluate_examples() {
        let length = Character::Length { base: e() };
        assert_eq!(
            evaluate(&length, &p(&[1, 0, 0, 0, 0, 0, 1])).unwrap(),
            CharValue::PowerOfBase { base: e(), exp: 2 }
        );
        let cheb = p(&[-2, 0, 1]);
        assert_eq!(
            evaluate(&orbit(), &cheb.compose(&cheb)).unwrap(),
            CharValue::PowerOfBase { base: Base::Exact(3.into()), exp: 2 }
        );
        for chi in [Character::Degree { s: 1 }, length, orbit(), Character::PrimeTable { table: vec![] }] {
            assert_eq!(evaluate(&chi, &p(&[5])).unwrap(), CharValue::Zero);
            assert_eq!(evaluate(&chi, &Poly::zero()).unwrap(), CharValue::Zero);
        }
    }

    #[test]
    fn orbit_character_on_degree_one_is_one() {
        let v = evaluate(&orbit(), &p(&[4, 7])).unwrap();
        assert!(v.same_value(&CharValue::one()));
    }

    #[test]
    fn orbit_character_rejects_other_degrees_cheaply() {
        assert_eq!(evaluate(&orbit(), &p(&[0, 0, 0, 1])).unwrap(), CharValue::Zero);
        assert_eq!(evaluate(&orbit(), &p(&[0, 0, 0, 0, 0, 0, 1])).unwrap(), CharValue::Zero);
    }

    #[test]
    fn lemma_affine_factors_stay_in_the_orbit() {
        let prime = p(&[-2, 0, 1]);
        let a1 = AffineMap::new("2".parse().unwrap(), "i".parse().unwrap()).unwrap();
        let b1 = AffineMap::new("-1/2".parse().unwrap(), "1".parse().unwrap()).unwrap();
        let q = a1.after(&prime.compose(&prime));
        let r = b1.before(&prime);
        let qr = q.compose(&r);
        for x in [&q, &r, &qr] {
            assert!(!evaluate(&orbit(), x).unwrap().same_value(&CharValue::Zero));
        }
        assert!(verify_multiplicative(&orbit(), &[(q, r)]).unwrap().is_empty());
    }

    #[test]
    fn multiplicative_examples() {
        let samples = vec![(p(&[0, 0, 1]), p(&[0, 0, 0, 1])), (p(&[1, 1, 1]), p(&[3]))];
        for chi in [Character::Degree { s: 1 }, Character::Length { base: e() }, orbit()] {
            assert!(verify_multiplicative(&chi, &samples).unwrap().is_empty(), "{chi:?}");
        }
    }

    #[test]
    fn prime_data_examples() {
        let (t2, t3) = (Poly::chebyshev(2), Poly::chebyshev(3));
        let table = vec![(t2.clone(), CharValue::Exact(2.into())), (t3.clone(), CharValue::Exact(3.into()))];
        let r = check_prime_data(&table, &[[t2.clone(), t3.clone(), t3.clone(), t2.clone()]]).unwrap();
        assert!(r.is_consistent());

        let (sq, a, b) = (p(&[0, 0, 1]), p(&[0, 1, 0, 1]), p(&[0, 1, 2, 1]));
        let table = vec![
            (sq.clone(), CharValue::Exact(1.into())),
            (a.clone(), CharValue::Exact(5.into())),
            (b.clone(), CharValue::Exact(7.into())),
        ];
        let r = check_prime_data(&table, &[[sq.clone(), a, b, sq.clone()]]).unwrap();
        assert_eq!(r.violations, vec![0]);

        let r = check_prime_data(&[], &[[t2.clone(), t3.clone(), t3.clone(), t2.clone()]]).unwrap();
        assert!(r.is_consistent());

        let err = check_prime_data(&[], &[[t2.clone(), sq.clone(), sq.clone(), t2]]).unwrap_err();
        assert_eq!(err, Error::NotACompositionIdentity { index: 0 });

        let r = check_prime_data(&[(p(&[4]), CharValue::Exact(1.into()))], &[]).unwrap();
        assert_eq!(r.nonzero_constants, vec![p(&[4])]);
    }

    #[test]
    fn value_arithmetic_and_json() {
        let x = CharValue::PowerOfBase { base: e(), exp: 2 };
        let y = CharValue::PowerOfBase { base: Base::Exact(2.into()), exp: 3 };
        assert_eq!(x.mul(&x).unwrap(), CharValue::PowerOfBase { base: e(), exp: 4 });
        assert_eq!(x.mul(&y), Err(Error::IncompatibleBases));
        assert!(y.mul(&CharValue::Exact(3.into())).unwrap().same_value(&CharValue::Exact(24.into())));
        assert_eq!(x.mul(&CharValue::Zero).unwrap(), CharValue::Zero);

        assert_eq!(serde_json::to_string(&CharValue::Zero).unwrap(), r#""0""#);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"base":"e","exp":2}"#);
        for v in [CharValue::Zero, CharValue::Exact("1/2".parse().unwrap()), x, y] {
            let back: CharValue = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            assert_eq!(back, v);
        }
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-3i64..=3, 1..4).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn builtin_characters_are_multiplicative(f in small_poly(), g in small_poly()) {
            for chi in [Character::Degree { s: 2 }, Character::Length { base: e() }, orbit()] {
                let v = verify_multiplicative(&chi, &[(f.clone(), g.clone())]).unwrap();
                prop_assert!(v.is_empty(), "{:?} on {} ∘ {}", chi, f, g);
            }
        }

        #[test]
        fn orbit_character_vanishes_off_prime_powers(f in small_poly(), g in small_poly()) {
            let h = f.compose(&g);
            let d = h.degree();
            if d >= 2 && log_exact(d, 2).is_none() {
                prop_assert_eq!(evaluate(&orbit(), &h).unwrap(), CharValue::Zero);
            }
        }
    }
}
