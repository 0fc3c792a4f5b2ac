//! Correspondences on a finite set `X = {0, …, n-1}` with full domain.
//!
//! A correspondence is stored as one bitmask per point: bit `y` of row `x`
//! is set when `y ∈ K(x)`. Composition applies the right factor first,
//! `(K2∘K1)(x) = K2(K1(x))`, the same convention as function composition.

mod aut;
mod hom;
mod suite;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use aut::{enumerate_automorphisms, Ambient};
pub use hom::{schreier_extract, HomTable, SchreierReport};
pub use suite::{non_prime_example, verify_suite, Suite, SuiteReport};

pub const MAX_GROUND: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiniteCorr {
    n: usize,
    rows: Vec<u64>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::BadGroundSize(n));
    }
    Ok(())
}

/// Image of the set `mask` under the relation `rows`.
pub(crate) fn image_of(rows: &[u64], mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let y = mask.trailing_zeros() as usize;
        out |= rows[y];
        mask &= mask - 1;
    }
    out
}

impl FiniteCorr {
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        check_ground(n)?;
        if rows.len() != n {
            return Err(Error::GroundMismatch(n, rows.len()));
        }
        if let Some(x) = rows.iter().position(|&r| r == 0) {
            return Err(Error::EmptyRow(x));
        }
        if rows.iter().any(|&r| r & !full_mask(n) != 0) {
            return Err(Error::Parse(format!("image outside the ground set of size {n}")));
        }
        Ok(FiniteCorr { n, rows })
    }

    /// Graph of `x ↦ f[x]`.
    pub fn from_map(f: &[usize]) -> Result<Self> {
        let n = f.len();
        check_ground(n)?;
        if f.iter().any(|&y| y >= n) {
            return Err(Error::Parse(format!("map value outside the ground set of size {n}")));
        }
        Ok(FiniteCorr { n, rows: f.iter().map(|&y| 1u64 << y).collect() })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_map(&(0..n).collect::<Vec<_>>())
    }

    /// `x ↦ S` for every `x`.
    pub fn constant(n: usize, set: u64) -> Result<Self> {
        Self::new(n, vec![set; n])
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::constant(n, full_mask(n))
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn image(&self, x: usize) -> u64 {
        self.rows[x]
    }

    /// `self∘k1`: apply `k1`, then `self`.
    pub fn compose(&self, k1: &FiniteCorr) -> Result<FiniteCorr> {
        if self.n != k1.n {
            return Err(Error::GroundMismatch(self.n, k1.n));
        }
        // Full domain of both factors keeps every row nonempty.
        let rows: Vec<u64> = k1.rows.iter().map(|&m| image_of(&self.rows, m)).collect();
        debug_assert!(rows.iter().all(|&r| r != 0));
        Ok(FiniteCorr { n: self.n, rows })
    }

    /// Transpose; `None` when some point has no preimage.
    pub fn inverse(&self) -> Option<FiniteCorr> {
        let mut rows = vec![0u64; self.n];
        for (x, &r) in self.rows.iter().enumerate() {
            for (y, row) in rows.iter_mut().enumerate() {
                if r >> y & 1 == 1 {
                    *row |= 1 << x;
                }
            }
        }
        rows.iter().all(|&r| r != 0).then_some(FiniteCorr { n: self.n, rows })
    }

    pub fn is_map(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() == 1)
    }

    /// The point map when every image is a singleton.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        self.is_map().then(|| self.rows.iter().map(|r| r.trailing_zeros() as usize).collect())
    }

    pub fn is_surjective(&self) -> bool {
        self.rows.iter().fold(0, |acc, r| acc | r) == full_mask(self.n)
    }

    /// Largest image cardinality.
    pub fn degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    /// The common image when every point has the same one.
    pub fn constant_value(&self) -> Option<u64> {
        let first = self.rows[0];
        self.rows.iter().all(|&r| r == first).then_some(first)
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }
}

/// `r1∘r2⁻¹` for maps `r1`, `r2` with `r2` surjective.
pub fn block(r1: &FiniteCorr, r2: &FiniteCorr) -> Result<FiniteCorr> {
    if !r1.is_map() || !r2.is_map() {
        return Err(Error::NotAMap);
    }
    let inv = r2.inverse().ok_or(Error::NotSurjective)?;
    r1.compose(&inv)
}

/// Constant correspondences `x ↦ S`, one per nonempty `S`, ordered by `S`.
pub fn minimal_ideal(n: usize) -> Result<Vec<FiniteCorr>> {
    check_ground(n)?;
    if n > 20 {
        return Err(Error::BudgetExceeded(format!("minimal ideal of a {n}-point set")));
    }
    (1..=full_mask(n)).map(|s| FiniteCorr::constant(n, s)).collect()
}

/// Left translation `c ↦ K∘c` on the minimal ideal, listed in ideal order.
pub fn alpha(k: &FiniteCorr) -> Result<Vec<FiniteCorr>> {
    minimal_ideal(k.n)?.iter().map(|c| k.compose(c)).collect()
}

/// Every correspondence with full domain on `n` points, ordered by rows.
pub fn all_correspondences(n: usize) -> Result<Vec<FiniteCorr>> {
    check_ground(n)?;
    let per_row = full_mask(n) as usize;
    let total = per_row.checked_pow(n as u32).filter(|&t| t <= 1 << 20);
    let total = total.ok_or_else(|| Error::BudgetExceeded(format!("Corr of a {n}-point set")))?;
    Ok((0..total)
        .map(|mut code| {
            let mut rows = vec![0u64; n];
            for r in rows.iter_mut().rev() {
                *r = (code % per_row) as u64 + 1;
                code /= per_row;
            }
            FiniteCorr { n, rows }
        })
        .collect())
}

/// Every self-map of `n` points, ordered by rows.
pub fn all_maps(n: usize) -> Result<Vec<FiniteCorr>> {
    check_ground(n)?;
    let total = n.checked_pow(n as u32).filter(|&t| t <= 1 << 20);
    let total = total.ok_or_else(|| Error::BudgetExceeded(format!("Map of a {n}-point set")))?;
    let mut out: Vec<FiniteCorr> = (0..total)
        .map(|mut code| {
            let mut f = vec![0usize; n];
            for v in f.iter_mut().rev() {
                *v = code % n;
                code /= n;
            }
            FiniteCorr::from_map(&f).expect("in range")
        })
        .collect();
    out.sort();
    Ok(out)
}

impl fmt::Display for FiniteCorr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .map(|(x, &r)| {
                let ys: Vec<String> = (0..self.n).filter(|y| r >> y & 1 == 1).map(|y| y.to_string()).collect();
                format!("{x}↦{{{}}}", ys.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct CorrRepr {
    n: usize,
    incidence: Vec<Vec<u8>>,
}

pub(crate) fn incidence(rows: &[u64], cols: usize) -> Vec<Vec<u8>> {
    rows.iter().map(|r| (0..cols).map(|y| (r >> y & 1) as u8).collect()).collect()
}

impl Serialize for FiniteCorr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CorrRepr { n: self.n, incidence: incidence(&self.rows, self.n) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteCorr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CorrRepr::deserialize(d)?;
        if repr.incidence.iter().any(|row| row.len() != repr.n || row.iter().any(|&b| b > 1)) {
            return Err(D::Error::custom("incidence must be an n×n 0/1 matrix"));
        }
        let rows = repr
            .incidence
            .iter()
            .map(|row| row.iter().enumerate().fold(0u64, |acc, (y, &b)| acc | (b as u64) << y))
            .collect();
        FiniteCorr::new(repr.n, rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(f: &[usize]) -> FiniteCorr {
        FiniteCorr::from_map(f).unwrap()
    }

    #[test]
    fn compose_examples() {
        let (f, g) = (map(&[1, 2, 2]), map(&[0, 0, 1]));
        assert_eq!(g.compose(&f).unwrap(), map(&[0, 1, 1]));
        let full = FiniteCorr::full(3).unwrap();
        assert_eq!(full.compose(&f).unwrap(), full);

        let k1 = FiniteCorr::new(2, vec![0b11, 0b10]).unwrap();
        let swap = map(&[1, 0]);
        assert_eq!(swap.compose(&k1).unwrap(), FiniteCorr::new(2, vec![0b11, 0b01]).unwrap());
        assert_eq!(swap.compose(&map(&[0, 0, 0])), Err(Error::GroundMismatch(2, 3)));
    }

    #[test]
    fn inverse_examples() {
        let perm = map(&[2, 0, 1]);
        assert_eq!(perm.inverse().unwrap(), map(&[1, 2, 0]));
        assert_eq!(map(&[0, 0]).inverse(), None);
        assert_eq!(map(&[0, 0, 1]).inverse(), None);
        // A surjective self-map of a finite set is a bijection, so a
        // multi-point row in the transpose needs a non-map correspondence.
        let k = FiniteCorr::new(3, vec![0b001, 0b001, 0b110]).unwrap();
        assert_eq!(k.inverse().unwrap(), FiniteCorr::new(3, vec![0b011, 0b100, 0b100]).unwrap());
        assert_eq!(k.inverse().unwrap().inverse().unwrap(), k);
    }

    #[test]
    fn predicates() {
        let id = FiniteCorr::identity(3).unwrap();
        assert!(id.is_map() && id.is_surjective() && id.degree() == 1);
        let full = FiniteCorr::full(3).unwrap();
        assert!(!full.is_map() && full.is_surjective() && full.degree() == 3);
        assert_eq!(FiniteCorr::new(2, vec![0b01, 0]), Err(Error::EmptyRow(1)));
        assert_eq!(FiniteCorr::new(0, vec![]), Err(Error::BadGroundSize(0)));
    }

    #[test]
    fn blocks() {
        let p = map(&[2, 0, 1]);
        assert_eq!(block(&p, &p).unwrap(), FiniteCorr::identity(3).unwrap());
        assert_eq!(block(&FiniteCorr::identity(2).unwrap(), &map(&[0, 0])), Err(Error::NotSurjective));
        assert_eq!(block(&map(&[1, 0]), &FiniteCorr::identity(2).unwrap()).unwrap(), map(&[1, 0]));
        assert_eq!(block(&FiniteCorr::full(2).unwrap(), &map(&[1, 0])), Err(Error::NotAMap));
    }

    #[test]
    fn ideal_and_alpha() {
        assert_eq!(minimal_ideal(1).unwrap().len(), 1);
        assert_eq!(minimal_ideal(2).unwrap().len(), 3);
        let all = all_correspondences(2).unwrap();
        assert_eq!(all.len(), 9);
        let ideal = minimal_ideal(2).unwrap();
        for c in &ideal {
            for k in &all {
                assert_eq!(c.compose(k).unwrap(), *c);
                assert!(k.compose(c).unwrap().is_constant());
            }
            assert_eq!(alpha(c).unwrap(), vec![c.clone(); 3]);
        }
        assert_eq!(alpha(&FiniteCorr::identity(2).unwrap()).unwrap(), ideal);
        let tables: std::collections::BTreeSet<_> = all.iter().map(|k| alpha(k).unwrap()).collect();
        assert_eq!(tables.len(), 9);
    }

    #[test]
    fn enumerations() {
        assert_eq!(all_maps(3).unwrap().len(), 27);
        assert_eq!(all_correspondences(3).unwrap().len(), 343);
        assert!(all_correspondences(3).unwrap().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_incidence() {
        let k = FiniteCorr::new(2, vec![0b11, 0b10]).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"n":2,"incidence":[[1,1],[0,1]]}"#);
        assert_eq!(serde_json::from_str::<FiniteCorr>(&s).unwrap(), k);
        assert!(serde_json::from_str::<FiniteCorr>(r#"{"n":2,"incidence":[[0,0],[0,1]]}"#).is_err());
    }
}
