//! Finite holomorphic correspondences as monic polynomials in `W` with
//! rational-function coefficients in `z`: the fiber over `z` is the root set
//! of `K(z, W)`.
//!
//! Composition eliminates the middle variable with a resultant. Where a
//! leading coefficient vanishes the resultant can pick up spurious factors,
//! so composition is faithful off a finite exceptional set of `z`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{sylvester_resultant, BiPoly, GaussianRational, Poly, RatFun};

pub const FIBER_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HolCorr {
    poly: BiPoly,
}

impl HolCorr {
    /// Normalizes to monic; the `W`-degree must be at least 1.
    pub fn new(poly: BiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if poly.degree() == 0 {
            return Err(Error::DegenerateComposition);
        }
        Ok(HolCorr { poly: poly.monic() })
    }

    /// `∏ (W − R_i(z))`.
    pub fn from_branches(branches: &[RatFun]) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::EmptyBranches);
        }
        let poly = branches
            .iter()
            .fold(BiPoly::one(), |acc, r| &acc * &BiPoly::new(vec![-r, RatFun::one()]));
        Ok(HolCorr { poly })
    }

    pub fn graph(r: &RatFun) -> Self {
        Self::from_branches(std::slice::from_ref(r)).expect("one branch")
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.poly.squarefree_part().degree() == self.degree()
    }

    /// Collapses repeated branches.
    pub fn squarefree(&self) -> HolCorr {
        HolCorr { poly: self.poly.squarefree_part() }
    }

    /// The single branch of a degree-1 correspondence.
    pub fn as_graph(&self) -> Option<RatFun> {
        (self.degree() == 1).then(|| -&self.poly.coeff(0))
    }

    /// `self∘k1`: first `k1`, then `self`.
    pub fn compose(&self, k1: &HolCorr, squarefree: bool) -> Result<HolCorr> {
        compose(self, k1, squarefree)
    }

    /// Transposed correspondence; `None` when no branch depends on `z`.
    pub fn inverse(&self) -> Option<HolCorr> {
        let grid = cleared_grid(&self.poly);
        // grid[i][j]: coefficient of W^i z^j; after the swap z^j becomes W^j.
        let width = grid.iter().map(Vec::len).max().unwrap_or(0);
        if width <= 1 {
            return None;
        }
        let coeffs = (0..width)
            .map(|j| {
                let col = grid.iter().map(|row| row.get(j).cloned().unwrap_or_else(GaussianRational::zero)).collect();
                RatFun::from_poly(Poly::new(col))
            })
            .collect();
        HolCorr::new(BiPoly::new(coeffs)).ok()
    }

    /// Numerical fiber over `z0`, sorted by `(re, im)`.
    pub fn fiber(&self, z0: Complex64) -> Result<Vec<Complex64>> {
        let coeffs = self.eval_coeffs(z0)?;
        Ok(monic_roots(&coeffs))
    }

    /// Monic coefficients of `K(z0, W)` in ascending order.
    pub fn eval_coeffs(&self, z0: Complex64) -> Result<Vec<Complex64>> {
        self.poly
            .coeffs()
            .iter()
            .map(|c| {
                let den = eval_complex(c.den(), z0);
                if den.norm() <= FIBER_TOL * coeff_scale(c.den(), z0) {
                    return Err(Error::CoefficientPole);
                }
                Ok(eval_complex(c.num(), z0) / den)
            })
            .collect()
    }
}

fn coeff_scale(p: &Poly, z: Complex64) -> f64 {
    let r = z.norm().max(1.0);
    p.coeffs().iter().enumerate().map(|(k, c)| c.to_complex64().norm() * r.powi(k as i32)).sum::<f64>().max(1.0)
}

pub(crate) fn eval_complex(p: &Poly, z: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c.to_complex64())
}

/// Roots of `Σ c_k W^k` with `c_d = 1`: companion-matrix eigenvalues,
/// polished by Newton steps.
pub fn monic_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let mut roots: Vec<Complex64> = if d == 1 {
        vec![-coeffs[0]]
    } else {
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = Complex64::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -coeffs[i];
        }
        m.schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
    };
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let (mut p, mut dp) = (Complex64::zero(), Complex64::zero());
            for c in coeffs.iter().rev() {
                dp = dp * *r + p;
                p = p * *r + c;
            }
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *r -= step;
            if step.norm() <= f64::EPSILON * r.norm().max(1.0) {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Clears denominators: `rows[i][j]` is the coefficient of `W^i z^j` in
/// `lcm(den)·K`.
fn cleared_grid(poly: &BiPoly) -> Vec<Vec<GaussianRational>> {
    let l = poly.denominator_lcm();
    poly.coeffs()
        .iter()
        .map(|c| {
            let scaled = (c.num() * &l).div_exact(c.den()).expect("lcm is divisible by each denominator");
            scaled.coeffs().to_vec()
        })
        .collect()
}

/// `k2∘k1`: eliminates `W` between `k1(z, W)` and `k2(W, U)`.
///
/// With denominators cleared both sides are polynomials, and so is
/// `R(z, U) = Res_W`. Its degrees are bounded a priori, so `R` is
/// interpolated from scalar resultants at integer points; this avoids
/// arithmetic in ℚ(i)(z), whose normalizing gcds dominate otherwise.
pub fn compose(k2: &HolCorr, k1: &HolCorr, squarefree: bool) -> Result<HolCorr> {
    // a[w][j]: coefficient of W^w z^j in k1; g[u][w]: of U^u W^w in k2.
    let a = cleared_grid(&k1.poly);
    let g = cleared_grid(&k2.poly);
    let m = a.len() - 1;
    let n = g.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let dz = a.iter().map(Vec::len).max().unwrap_or(1) - 1;
    // R is homogeneous of degree n in k1's coefficients and m in k2's.
    let (deg_z, deg_u) = (n * dz, m * (g.len() - 1));
    let nodes = |d: usize| (0..=d as i64).map(GaussianRational::from_int).collect::<Vec<_>>();
    let (zs, us) = (nodes(deg_z), nodes(deg_u));

    let eval = |p: &[GaussianRational], x: &GaussianRational| {
        p.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    };
    // rows[k][j]: coefficient of U^j in R(zs[k], U).
    let rows: Vec<Vec<GaussianRational>> = zs
        .iter()
        .map(|z0| {
            let f: Vec<GaussianRational> = a.iter().map(|c| eval(c, z0)).collect();
            let values: Vec<GaussianRational> = us
                .iter()
                .map(|u0| {
                    let h: Vec<GaussianRational> = (0..=n)
                        .map(|w| {
                            g.iter()
                                .enumerate()
                                .fold(GaussianRational::zero(), |acc, (u, by_w)| match by_w.get(w) {
                                    Some(c) => &acc + &(c * &u0.pow(u as u32)),
                                    None => acc,
                                })
                        })
                        .collect();
                    sylvester_resultant(&f, &h)
                })
                .collect();
            let p = Poly::interpolate(&us, &values).expect("distinct nodes");
            (0..=deg_u).map(|j| p.coeff(j)).collect()
        })
        .collect();
    let coeffs_in_u = (0..=deg_u)
        .map(|j| {
            let values: Vec<GaussianRational> = rows.iter().map(|r| r[j].clone()).collect();
            RatFun::from_poly(Poly::interpolate(&zs, &values).expect("distinct nodes"))
        })
        .collect();
    let res = BiPoly::new(coeffs_in_u);
    if res.is_zero() || res.degree() == 0 {
        return Err(Error::DegenerateComposition);
    }
    let out = HolCorr { poly: res.monic() };
    Ok(if squarefree { out.squarefree() } else { out })
}

#[cfg(test)]
fn transpose(grid: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let width = grid.iter().map(Vec::len).max().unwrap_or(0);
    (0..width)
        .map(|j| grid.iter().map(|row| row.get(j).cloned().unwrap_or_else(GaussianRational::zero)).collect())
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct HolCorrRepr(BiPoly);

impl Serialize for HolCorr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.poly.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HolCorr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        HolCorr::new(HolCorrRepr::deserialize(d)?.0).map_err(D::Error::custom)
    }
}
