use std::fmt;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::univariate::Poly;
use crate::error::{Error, Result};

/// `z ↦ a·z + b` with `a ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    a: GaussianRational,
    b: GaussianRational,
}

impl AffineMap {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateAffine);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity() -> Self {
        AffineMap { a: GaussianRational::one(), b: GaussianRational::zero() }
    }

    pub fn translation(c: GaussianRational) -> Self {
        AffineMap { a: GaussianRational::one(), b: c }
    }

    pub fn scaling(a: GaussianRational) -> Result<Self> {
        Self::new(a, GaussianRational::zero())
    }

    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.degree() != 1 {
            return Err(Error::DegenerateAffine);
        }
        Self::new(p.coeff(1), p.coeff(0))
    }

    pub fn a(&self) -> &GaussianRational {
        &self.a
    }

    pub fn b(&self) -> &GaussianRational {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn inverse(&self) -> AffineMap {
        let a_inv = self.a.inv().expect("invariant: a != 0");
        AffineMap { b: -&(&self.b * &a_inv), a: a_inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap { a: &self.a * &other.a, b: &(&self.a * &other.b) + &self.b }
    }

    pub fn apply(&self, z: &GaussianRational) -> GaussianRational {
        &(&self.a * z) + &self.b
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(self.a.clone(), self.b.clone())
    }

    /// `self ∘ p`
    pub fn after(&self, p: &Poly) -> Poly {
        &p.scale(&self.a) + &Poly::constant(self.b.clone())
    }

    /// `p ∘ self`
    pub fn before(&self, p: &Poly) -> Poly {
        p.compose(&self.to_poly())
    }

    /// `self ∘ p ∘ self⁻¹`
    pub fn conjugate(&self, p: &Poly) -> Poly {
        self.after(&self.inverse().before(p))
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_examples() {
        let a = AffineMap::new(g("2"), g("1")).unwrap();
        let inv = a.inverse();
        assert_eq!(inv, AffineMap::new(g("1/2"), g("-1/2")).unwrap());
        assert!(a.compose(&inv).is_identity());
        assert!(inv.compose(&a).is_identity());
        assert!(AffineMap::identity().inverse().is_identity());
        let neg = AffineMap::new(g("-1"), g("0")).unwrap();
        assert_eq!(neg.inverse(), neg);
    }

    #[test]
    fn rejects_degenerate() {
        assert_eq!(AffineMap::new(g("0"), g("1")), Err(Error::DegenerateAffine));
    }

    #[test]
    fn pre_and_post_composition() {
        let p = Poly::from_ints(&[0, 0, 1]);
        let t = AffineMap::translation(g("1"));
        assert_eq!(t.after(&p), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(t.before(&p), Poly::from_ints(&[1, 2, 1]));
        // (z+1)∘z^2∘(z-1) = z^2 - 2z + 2
        assert_eq!(t.conjugate(&p), Poly::from_ints(&[2, -2, 1]));
    }
}
