use crate::error::{Error, Result};
use crate::poly::{AffineMap, Poly, RatFun};

/// Anything with an associative composition `self∘other`.
pub trait Composable: Clone + PartialEq {
    fn compose_with(&self, other: &Self) -> Self;
}

impl Composable for Poly {
    fn compose_with(&self, other: &Self) -> Self {
        self.compose(other)
    }
}

impl Composable for RatFun {
    fn compose_with(&self, other: &Self) -> Self {
        self.compose(other)
    }
}

/// Product `f ∗_g h = f∘g∘h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SandwichSemigroup<T> {
    pub kernel: T,
}

impl<T: Composable> SandwichSemigroup<T> {
    pub fn new(kernel: T) -> Self {
        SandwichSemigroup { kernel }
    }

    pub fn compose(&self, f: &T, h: &T) -> T {
        f.compose_with(&self.kernel.compose_with(h))
    }
}

/// `Φ(P) = f∘P∘f⁻¹∘B⁻¹`, a homomorphism from the sandwich semigroup with
/// kernel `P1` onto the one with kernel `B∘f∘P1∘f⁻¹`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SandwichIso {
    pub f: AffineMap,
    pub b: AffineMap,
    pub source_kernel: Poly,
    pub target_kernel: Poly,
}

pub fn sandwich_isomorphism(f: &AffineMap, b: &AffineMap, p1: &Poly) -> SandwichIso {
    SandwichIso { f: f.clone(), b: b.clone(), source_kernel: p1.clone(), target_kernel: b.after(&f.conjugate(p1)) }
}

impl SandwichIso {
    pub fn apply(&self, p: &Poly) -> Poly {
        let tail = self.f.inverse().compose(&self.b.inverse());
        self.f.after(&tail.before(p))
    }

    /// `Φ(P ∗ Q) = Φ(P) ∗' Φ(Q)` on every sample pair.
    pub fn verify(&self, samples: &[(Poly, Poly)]) -> Result<()> {
        let src = SandwichSemigroup::new(self.source_kernel.clone());
        let dst = SandwichSemigroup::new(self.target_kernel.clone());
        for (index, (p, q)) in samples.iter().enumerate() {
            if self.apply(&src.compose(p, q)) != dst.compose(&self.apply(p), &self.apply(q)) {
                return Err(Error::SandwichLawViolated { index });
            }
        }
        Ok(())
    }
}
