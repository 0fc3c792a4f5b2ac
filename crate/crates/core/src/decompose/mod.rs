//! Functional decomposition into indecomposables.
//!
//! A split `p = q∘h` with `deg h = r` is unique once `h` is normalized to be
//! monic with `h(0) = 0`: the top `r` coefficients of `p` determine `h`
//! triangularly, and the `h`-adic expansion of `p` either has constant digits
//! (a split exists) or it doesn't.

mod moves;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Poly};

pub use moves::{apply_move, available_moves, RittMove};

/// Ordered prime factors `f_1∘f_2∘…∘f_n`, each of degree at least 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    factors: Vec<Poly>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RittInvariants {
    pub length: usize,
    /// Sorted ascending.
    pub degree_multiset: Vec<usize>,
}

impl Decomposition {
    /// Checks degrees only; primality of each factor is [`Decomposition::verify_prime`].
    pub fn new(factors: Vec<Poly>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDecomposition("no factors".into()));
        }
        if let Some(i) = factors.iter().position(|f| f.degree() < 2) {
            return Err(Error::InvalidDecomposition(format!("factor {} has degree below 2", i + 1)));
        }
        Ok(Decomposition { factors })
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `f_1∘f_2∘…∘f_n`
    pub fn compose(&self) -> Poly {
        let mut it = self.factors.iter().rev();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, f| f.compose(&acc))
    }

    pub fn invariants(&self) -> RittInvariants {
        ritt_invariants(self)
    }

    /// True when every factor is indecomposable.
    pub fn verify_prime(&self) -> bool {
        self.factors.iter().all(is_prime)
    }
}

pub fn ritt_invariants(d: &Decomposition) -> RittInvariants {
    let mut degree_multiset: Vec<usize> = d.factors.iter().map(Poly::degree).collect();
    degree_multiset.sort_unstable();
    RittInvariants { length: d.factors.len(), degree_multiset }
}

/// Finds `p = q∘h` with `deg h = r`, `h` monic and `h(0) = 0`.
///
/// `r = 1` and `r = deg p` only admit the trivial affine splits and yield
/// `None`, as does any `r` for which no right factor exists.
pub fn decompose_once(p: &Poly, r: usize) -> Result<Option<(Poly, Poly)>> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n });
    }
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::BadSplitDegree { r, degree: n });
    }
    if r == 1 || r == n {
        return Ok(None);
    }
    let s = n / r;
    let lead = p.leading();
    let shift = p.constant_term();
    let lead_inv = lead.inv().expect("nonzero leading coefficient");
    let mut normalized = p.coeffs().to_vec();
    normalized[0] = GaussianRational::zero();
    let target = Poly::new(normalized).scale(&lead_inv);

    // h = z^r + h_{r-1} z^{r-1} + … + h_1 z; coefficient n-j of h^s is
    // s·h_{r-j} plus terms in the already known h_{r-1}, …, h_{r-j+1}.
    let s_inv = GaussianRational::from_int(s as i64).inv().expect("s >= 1");
    let mut h = vec![GaussianRational::zero(); r + 1];
    h[r] = GaussianRational::one();
    for j in 1..r {
        let partial = Poly::new(h.clone()).pow(s as u32);
        let diff = &target.coeff(n - j) - &partial.coeff(n - j);
        h[r - j] = &diff * &s_inv;
    }
    let h = Poly::new(h);

    let mut digits = Vec::with_capacity(s + 1);
    let mut rest = target;
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(&h);
        if rem.degree() > 0 {
            return Ok(None);
        }
        digits.push(rem.coeff(0));
        rest = quot;
    }
    let q = Poly::new(digits).scale(&lead);
    let q = &q + &Poly::constant(shift);
    debug_assert_eq!(q.compose(&h), *p);
    Ok(Some((q, h)))
}

/// No split `p = q∘h` with `2 ≤ deg h < deg p`.
pub fn is_prime(p: &Poly) -> bool {
    let n = p.degree();
    n >= 2 && proper_divisors(n).all(|r| matches!(decompose_once(p, r), Ok(None)))
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (2..=n / 2).filter(move |r| n.is_multiple_of(*r))
}

/// Splits off right factors of smallest possible degree until the left
/// factor is prime.
pub fn complete_decomposition(p: &Poly) -> Result<Decomposition> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n });
    }
    let mut rights = Vec::new();
    let mut current = p.clone();
    'outer: loop {
        for r in proper_divisors(current.degree()) {
            if let Some((q, h)) = decompose_once(&current, r)? {
                rights.push(h);
                current = q;
                continue 'outer;
            }
        }
        break;
    }
    let mut factors = vec![current];
    factors.extend(rights.into_iter().rev());
    Decomposition::new(factors)
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    factors: Vec<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree_multiset: Option<Vec<usize>>,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let inv = self.invariants();
        DecompositionRepr {
            factors: self.factors.clone(),
            length: Some(inv.length),
            degree_multiset: Some(inv.degree_multiset),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DecompositionRepr::deserialize(d)?;
        let dec = Decomposition::new(repr.factors).map_err(D::Error::custom)?;
        let inv = dec.invariants();
        if repr.length.is_some_and(|l| l != inv.length) {
            return Err(D::Error::custom("length does not match factors"));
        }
        if repr.degree_multiset.as_ref().is_some_and(|m| {
            let mut m = m.clone();
            m.sort_unstable();
            m != inv.degree_multiset
        }) {
            return Err(D::Error::custom("degree_multiset does not match factors"));
        }
        Ok(dec)
    }
}
