//! Affine bi-orbit equivalence, affine conjugacy and symmetries over ℚ(i).
//!
//! Writing `A = γz + δ`, `B = αz + β`, the two top coefficients of
//! `q = A∘p∘B` make `γ` and `β` explicit in `α`; every lower coefficient is
//! then a polynomial equation in `α` alone. Candidates are the Gaussian
//! rational roots of the gcd of those equations, each verified by exact
//! recomposition, so the search is sound and complete over ℚ(i).

mod sandwich;

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{gaussian_roots, AffineMap, GaussianRational, Poly};

pub use sandwich::{sandwich_isomorphism, Composable, SandwichIso, SandwichSemigroup};

/// `q = A∘p∘B`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BiEquivWitness {
    #[serde(rename = "A")]
    pub a: AffineMap,
    #[serde(rename = "B")]
    pub b: AffineMap,
}

impl BiEquivWitness {
    pub fn is_identity(&self) -> bool {
        self.a.is_identity() && self.b.is_identity()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.a.after(&self.b.before(p))
    }

    /// Lexicographic on `(α, γ, β, δ)` under [`GaussianRational::height_cmp`].
    fn tie_break(&self, other: &Self) -> Ordering {
        let key = |w: &Self| [w.b.a().clone(), w.a.a().clone(), w.b.b().clone(), w.a.b().clone()];
        let (x, y) = (key(self), key(other));
        x.iter().zip(&y).map(|(u, v)| u.height_cmp(v)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }
}

fn binomials(n: usize) -> Vec<Vec<GaussianRational>> {
    let mut rows = vec![vec![GaussianRational::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![GaussianRational::one(); i + 1];
        for k in 1..i {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Reduction of the bi-orbit equations to one unknown.
struct BiSystem {
    /// `β = c1·α + c0`
    c1: GaussianRational,
    c0: GaussianRational,
    /// gcd of the residual equations; zero when `α` is unconstrained.
    gcd: Poly,
}

fn bi_system(p: &Poly, q: &Poly) -> BiSystem {
    let n = p.degree();
    let (pn, qn) = (p.leading(), q.leading());
    let nn = GaussianRational::from_int(n as i64);
    let c1 = &q.coeff(n - 1) / &(&nn * &qn);
    let c0 = -(&p.coeff(n - 1) / &(&nn * &pn));
    let beta = Poly::linear(c1.clone(), c0.clone());
    let ratio = &qn / &pn;
    let binom = binomials(n);

    let mut beta_pows = vec![Poly::one()];
    for i in 1..=n {
        beta_pows.push(&beta_pows[i - 1] * &beta);
    }
    let mut gcd = Poly::zero();
    for k in 1..n.saturating_sub(1) {
        let mut sum = Poly::zero();
        for i in k..=n {
            sum = &sum + &beta_pows[i - k].scale(&(&p.coeff(i) * &binom[i][k]));
        }
        let e_k = &sum.scale(&ratio) - &Poly::monomial(q.coeff(k), n - k);
        gcd = gcd.gcd(&e_k);
    }
    BiSystem { c1, c0, gcd }
}

fn witness_for_alpha(p: &Poly, q: &Poly, sys: &BiSystem, alpha: &GaussianRational) -> Option<BiEquivWitness> {
    let n = p.degree() as u32;
    let beta = &(&sys.c1 * alpha) + &sys.c0;
    let gamma = q.leading().checked_div(&(&p.leading() * &alpha.pow(n)))?;
    let delta = &q.constant_term() - &(&gamma * &p.eval(&beta));
    let w = BiEquivWitness { a: AffineMap::new(gamma, delta).ok()?, b: AffineMap::new(alpha.clone(), beta).ok()? };
    (w.apply(p) == *q).then_some(w)
}

/// Representative values of a free `α`; the smallest under the tie-break is 1.
fn free_alpha_samples() -> Vec<GaussianRational> {
    ["1", "-1", "i", "-i", "2"].iter().map(|s| s.parse().expect("literal")).collect()
}

fn candidate_alphas(sys: &BiSystem) -> Vec<GaussianRational> {
    if sys.gcd.is_zero() {
        free_alpha_samples()
    } else {
        gaussian_roots(&sys.gcd).into_iter().filter(|a| !a.is_zero()).collect()
    }
}

/// Some `(A, B)` with `q = A∘p∘B`, the minimal one under a fixed order.
pub fn affine_biequiv(p: &Poly, q: &Poly) -> Option<BiEquivWitness> {
    let n = p.degree();
    if n < 2 || q.degree() != n {
        return None;
    }
    let sys = bi_system(p, q);
    candidate_alphas(&sys)
        .iter()
        .filter_map(|alpha| witness_for_alpha(p, q, &sys, alpha))
        .min_by(BiEquivWitness::tie_break)
}

/// Some `f` with `f∘p∘f⁻¹ = q`.
pub fn affine_conjugate(p: &Poly, q: &Poly) -> Option<AffineMap> {
    let n = p.degree();
    if n < 2 || q.degree() != n {
        return None;
    }
    // f = γz + δ; leading terms give γ^{n-1} = p_n/q_n, the next ones δ.
    let ratio = &p.leading() / &q.leading();
    let mut eq = vec![GaussianRational::zero(); n];
    eq[0] = -ratio;
    eq[n - 1] = GaussianRational::one();
    let nn = GaussianRational::from_int(n as i64);
    gaussian_roots(&Poly::new(eq))
        .into_iter()
        .filter_map(|gamma| {
            let g_pow = gamma.pow(n as u32 - 1);
            let num = &(&gamma * &p.coeff(n - 1)) - &(&q.coeff(n - 1) * &g_pow);
            let delta = num.checked_div(&(&(&nn * &q.leading()) * &g_pow))?;
            let f = AffineMap::new(gamma, delta).ok()?;
            (f.conjugate(p) == *q).then_some(f)
        })
        .min_by(|x, y| x.a().height_cmp(y.a()).then_with(|| x.b().height_cmp(y.b())))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Symmetries {
    /// Non-identity witnesses of `p = A∘p∘B`; representatives only when
    /// `one_parameter_family` is set.
    pub witnesses: Vec<BiEquivWitness>,
    /// `α` is unconstrained: `p` is bi-equivalent to `z^n` and has infinitely
    /// many symmetries.
    pub one_parameter_family: bool,
}

impl Symmetries {
    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Symmetries `p = A∘p∘B` over ℚ(i) other than `(Id, Id)`.
pub fn has_symmetries(p: &Poly) -> Symmetries {
    if p.degree() < 2 {
        return Symmetries { witnesses: Vec::new(), one_parameter_family: false };
    }
    let sys = bi_system(p, p);
    let mut witnesses: Vec<BiEquivWitness> = candidate_alphas(&sys)
        .iter()
        .filter_map(|alpha| witness_for_alpha(p, p, &sys, alpha))
        .filter(|w| !w.is_identity())
        .collect();
    witnesses.sort_by(BiEquivWitness::tie_break);
    Symmetries { witnesses, one_parameter_family: sys.gcd.is_zero() }
}
