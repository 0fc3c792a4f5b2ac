use std::collections::HashMap;

use serde::Serialize;

use super::{image_of, incidence, FiniteCorr};
use crate::error::{Error, Result};

/// A homomorphism given by its values on a finite subsemigroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomTable {
    domain: Vec<FiniteCorr>,
    images: Vec<FiniteCorr>,
    index: HashMap<FiniteCorr, usize>,
}

impl HomTable {
    /// Checks that the domain is closed under composition and that
    /// `φ(K∘L) = φ(K)∘φ(L)` for every pair.
    pub fn new(domain: Vec<FiniteCorr>, images: Vec<FiniteCorr>) -> Result<Self> {
        let table = Self::new_unchecked(domain, images)?;
        for (i, k) in table.domain.iter().enumerate() {
            for (j, l) in table.domain.iter().enumerate() {
                let kl = k.compose(l)?;
                let idx = *table
                    .index
                    .get(&kl)
                    .ok_or_else(|| Error::InvalidHomTable(format!("domain not closed: {k} ∘ {l}")))?;
                if table.images[idx] != table.images[i].compose(&table.images[j])? {
                    return Err(Error::InvalidHomTable(format!("not multiplicative at ({k}) ∘ ({l})")));
                }
            }
        }
        Ok(table)
    }

    /// Caller guarantees closure and multiplicativity.
    pub(crate) fn new_unchecked(domain: Vec<FiniteCorr>, images: Vec<FiniteCorr>) -> Result<Self> {
        if domain.len() != images.len() || domain.is_empty() {
            return Err(Error::InvalidHomTable("domain and images must be nonempty and of equal length".into()));
        }
        let n = domain[0].ground();
        let m = images[0].ground();
        if let Some(k) = domain.iter().find(|k| k.ground() != n) {
            return Err(Error::GroundMismatch(n, k.ground()));
        }
        if let Some(k) = images.iter().find(|k| k.ground() != m) {
            return Err(Error::GroundMismatch(m, k.ground()));
        }
        let index: HashMap<FiniteCorr, usize> = domain.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        if index.len() != domain.len() {
            return Err(Error::InvalidHomTable("duplicate domain element".into()));
        }
        Ok(HomTable { domain, images, index })
    }

    pub fn domain(&self) -> &[FiniteCorr] {
        &self.domain
    }

    pub fn images(&self) -> &[FiniteCorr] {
        &self.images
    }

    pub fn get(&self, k: &FiniteCorr) -> Option<&FiniteCorr> {
        self.index.get(k).map(|&i| &self.images[i])
    }

    pub fn ground(&self) -> usize {
        self.domain[0].ground()
    }

    pub fn target_ground(&self) -> usize {
        self.images[0].ground()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchreierReport {
    /// Row `x` is the constant value of `φ(const_x)`, a subset of the target.
    pub f: Vec<u64>,
    pub target_ground: usize,
    pub is_map: bool,
    pub is_bijective: bool,
    /// `φ(K) = f∘K∘f⁻¹` on the whole domain; only checked when `f` is bijective.
    pub conjugation_verified: bool,
}

impl SchreierReport {
    pub fn point_map(&self) -> Option<Vec<usize>> {
        self.is_map.then(|| self.f.iter().map(|r| r.trailing_zeros() as usize).collect())
    }
}

impl Serialize for SchreierReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "f": incidence(&self.f, self.target_ground),
            "is_map": self.is_map,
            "is_bijective": self.is_bijective,
            "conjugation_verified": self.conjugation_verified,
        })
        .serialize(s)
    }
}

/// Reads off `f(x)` from the image of the constant `x`, then checks the
/// intertwining `φ(K)∘f = f∘K` on the whole domain.
pub fn schreier_extract(phi: &HomTable) -> Result<SchreierReport> {
    let n = phi.ground();
    let m = phi.target_ground();
    let mut f = Vec::with_capacity(n);
    for x in 0..n {
        let c = FiniteCorr::constant(n, 1 << x)?;
        let img = phi
            .get(&c)
            .ok_or_else(|| Error::InvalidHomTable(format!("domain lacks the constant {x}")))?;
        let v = img
            .constant_value()
            .ok_or_else(|| Error::InvalidHomTable(format!("image of the constant {x} is not constant: {img}")))?;
        f.push(v);
    }
    for (k, img) in phi.domain().iter().zip(phi.images()) {
        let lhs: Vec<u64> = f.iter().map(|&s| image_of(img.rows(), s)).collect();
        let rhs: Vec<u64> = k.rows().iter().map(|&s| image_of(&f, s)).collect();
        if lhs != rhs {
            return Err(Error::SchreierFailure(format!("φ(K)∘f ≠ f∘K at K = {k}")));
        }
    }
    let is_map = f.iter().all(|r| r.count_ones() == 1);
    let union = f.iter().fold(0u64, |a, r| a | r);
    let is_bijective = is_map && n == m && union.count_ones() as usize == n;
    let mut conjugation_verified = false;
    if is_bijective {
        let mut f_inv = vec![0u64; n];
        for (x, r) in f.iter().enumerate() {
            f_inv[r.trailing_zeros() as usize] = 1 << x;
        }
        for (k, img) in phi.domain().iter().zip(phi.images()) {
            let conj: Vec<u64> = f_inv.iter().map(|&s| image_of(&f, image_of(k.rows(), s))).collect();
            if conj != img.rows() {
                return Err(Error::SchreierFailure(format!("φ(K) ≠ f∘K∘f⁻¹ at K = {k}")));
            }
        }
        conjugation_verified = true;
    }
    Ok(SchreierReport { f, target_ground: m, is_map, is_bijective, conjugation_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::all_maps;

    fn conjugation_table(n: usize, perm: &[usize]) -> HomTable {
        let p = FiniteCorr::from_map(perm).unwrap();
        let p_inv = p.inverse().unwrap();
        let domain = all_maps(n).unwrap();
        let images = domain.iter().map(|k| p.compose(&k.compose(&p_inv).unwrap()).unwrap()).collect();
        HomTable::new(domain, images).unwrap()
    }

    #[test]
    fn swap_conjugation_on_two_points() {
        let phi = conjugation_table(2, &[1, 0]);
        assert_eq!(phi.domain().len(), 4);
        let r = schreier_extract(&phi).unwrap();
        assert_eq!(r.point_map(), Some(vec![1, 0]));
        assert!(r.is_bijective && r.conjugation_verified);
    }

    #[test]
    fn identity_homomorphism() {
        let domain = all_maps(3).unwrap();
        let phi = HomTable::new(domain.clone(), domain).unwrap();
        let r = schreier_extract(&phi).unwrap();
        assert_eq!(r.point_map(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn non_constant_image_of_a_constant_is_rejected() {
        // Map({0,1}) → the trivial semigroup {id}: a homomorphism, but the
        // constants land on a non-constant element.
        let domain = all_maps(2).unwrap();
        let images = vec![FiniteCorr::identity(2).unwrap(); domain.len()];
        let phi = HomTable::new(domain, images).unwrap();
        assert!(matches!(schreier_extract(&phi), Err(Error::InvalidHomTable(_))));
    }

    #[test]
    fn table_validation() {
        let domain = all_maps(2).unwrap();
        let mut images = domain.clone();
        images.swap(0, 1);
        assert!(matches!(HomTable::new(domain.clone(), images), Err(Error::InvalidHomTable(_))));
        let partial = vec![FiniteCorr::from_map(&[1, 0]).unwrap()];
        assert!(matches!(HomTable::new(partial.clone(), partial), Err(Error::InvalidHomTable(_))));
    }
}
