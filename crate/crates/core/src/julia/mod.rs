//! Orbit classification for the semigroups `⟨R, a⟩`: the semigroup is finite
//! exactly when the forward orbit of `a` is finite.

mod expr;
mod render;

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{GaussianRational, Poly, RatFun, Rational};

pub use expr::parse_map;
pub use render::{render, Cell, CellClass, GridClassification, Region, RenderBudgets};

pub const DEFAULT_MAX_ITER: usize = 1000;
pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_HEIGHT_BITS: u64 = 4096;

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitReport {
    /// The exact orbit repeats: `z_{preperiod} = z_{preperiod + period}`.
    FiniteExact { preperiod: usize, period: usize },
    /// A polynomial orbit left its escape disc at this iterate.
    InfiniteCertified { escape_iterate: usize },
    /// Floating orbit passed the escape radius; not a proof.
    EscapedNumeric { escape_iterate: usize },
    /// Floating orbit converges to an attracting cycle.
    AttractedNumeric { period: usize, multiplier_modulus: f64 },
    /// Floating orbit shadows a repelling cycle: evidence of exact preperiodicity.
    FiniteNumeric { preperiod: usize, period: usize },
    /// Out of budget after this many iterates.
    Undecided { budget: usize },
}

/// A point of the Riemann sphere; `None` is ∞.
type Point = Option<GaussianRational>;

fn value_at_infinity(r: &RatFun) -> Point {
    let (dn, dd) = (r.num().degree(), r.den().degree());
    if r.num().is_zero() || dn < dd {
        Some(GaussianRational::zero())
    } else if dn == dd {
        r.num().leading().checked_div(&r.den().leading())
    } else {
        None
    }
}

fn abs_bound(c: &GaussianRational) -> Rational {
    c.re.abs() + c.im.abs()
}

/// A rational upper bound for `max(1, (1 + Σ_{k<d} |c_k|) / |c_d|)`, where
/// `|P(z)| > |z|` holds beyond it for `deg P ≥ 2`.
pub fn escape_radius_bound(p: &Poly) -> Rational {
    let d = p.degree();
    let lead = p.leading();
    let lower = lead.re.abs().max(lead.im.abs());
    let sum = p.coeffs()[..d].iter().fold(Rational::from_integer(1.into()), |acc, c| acc + abs_bound(c));
    let r = sum / lower;
    let one = Rational::from_integer(1.into());
    if r < one {
        one
    } else {
        r
    }
}

/// `max(1, (1 + Σ_{k<d} |c_k|) / |c_d|)` in floating point.
pub fn escape_radius(coeffs: &[Complex64]) -> f64 {
    let d = coeffs.len() - 1;
    let sum: f64 = coeffs[..d].iter().map(|c| c.norm()).sum();
    ((1.0 + sum) / coeffs[d].norm()).max(1.0)
}

/// Exact forward orbit of `a` under `r` over ℚ(i) ∪ {∞}.
pub fn exact_orbit(r: &RatFun, a: &GaussianRational, max_iter: usize, height_bound: u64) -> OrbitReport {
    let escape = r.as_poly().filter(|p| p.degree() >= 2).map(|p| {
        let b = escape_radius_bound(p);
        &b * &b
    });
    let at_infinity = value_at_infinity(r);
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut z: Point = Some(a.clone());
    for n in 0..=max_iter {
        if let Some(&first) = seen.get(&z) {
            return OrbitReport::FiniteExact { preperiod: first, period: n - first };
        }
        if let (Some(r2), Some(w)) = (&escape, &z) {
            if w.norm_sqr() > *r2 {
                return OrbitReport::InfiniteCertified { escape_iterate: n };
            }
        }
        if z.as_ref().is_some_and(|w| w.height_bits() > height_bound) {
            return OrbitReport::Undecided { budget: n };
        }
        if n == max_iter {
            break;
        }
        let next = match &z {
            Some(w) => r.eval(w),
            None => at_infinity.clone(),
        };
        seen.insert(z, n);
        z = next;
    }
    OrbitReport::Undecided { budget: max_iter }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FloatParams {
    pub max_iter: usize,
    pub eps: f64,
    pub escape_radius: f64,
}

impl FloatParams {
    pub fn for_map(coeffs: &[Complex64]) -> Self {
        FloatParams { max_iter: DEFAULT_MAX_ITER, eps: DEFAULT_EPS, escape_radius: escape_radius(coeffs) }
    }
}

pub fn to_complex_coeffs(p: &Poly) -> Vec<Complex64> {
    p.coeffs().iter().map(GaussianRational::to_complex64).collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Floating forward orbit of `a` under the polynomial with ascending
/// `coeffs`.
pub fn float_orbit(coeffs: &[Complex64], a: Complex64, params: &FloatParams) -> OrbitReport {
    float_orbit_detail(coeffs, a, params).0
}

/// Also returns a distance estimate to the Julia set for escaping orbits.
pub(crate) fn float_orbit_detail(coeffs: &[Complex64], a: Complex64, params: &FloatParams) -> (OrbitReport, Option<f64>) {
    let dcoeffs = derivative(coeffs);
    let mut history = Vec::with_capacity(params.max_iter.min(4096) + 1);
    let (mut z, mut dz) = (a, Complex64::new(1.0, 0.0));
    // Brent's cycle detection: compare against a checkpoint reset at
    // doubling intervals.
    let (mut check, mut check_idx, mut power) = (a, 0usize, 1usize);
    for n in 0..=params.max_iter {
        if !z.re.is_finite() || !z.im.is_finite() {
            return (OrbitReport::Undecided { budget: n }, None);
        }
        if z.norm() > params.escape_radius {
            return (OrbitReport::EscapedNumeric { escape_iterate: n }, distance_estimate(coeffs, &dcoeffs, z, dz));
        }
        history.push(z);
        if n > 0 && (z - check).norm() < params.eps {
            let period = n - check_idx;
            return (classify_cycle(&dcoeffs, &history, period, params.eps, n), None);
        }
        if n - check_idx == power {
            power *= 2;
            check = z;
            check_idx = n;
        }
        if n == params.max_iter {
            break;
        }
        dz *= horner(&dcoeffs, z);
        z = horner(coeffs, z);
    }
    (OrbitReport::Undecided { budget: params.max_iter }, None)
}

fn classify_cycle(dcoeffs: &[Complex64], history: &[Complex64], period: usize, eps: f64, budget: usize) -> OrbitReport {
    let last = history.len() - 1;
    let multiplier: f64 = history[last - period..last].iter().map(|&w| horner(dcoeffs, w).norm()).product();
    if multiplier < 1.0 - eps {
        OrbitReport::AttractedNumeric { period, multiplier_modulus: multiplier }
    } else if multiplier > 1.0 + eps {
        let preperiod = (0..=last - period)
            .find(|&j| (history[j] - history[j + period]).norm() < eps)
            .unwrap_or(last - period);
        OrbitReport::FiniteNumeric { preperiod, period }
    } else {
        OrbitReport::Undecided { budget }
    }
}

/// `|z| ln|z| / |dz|` after pushing the orbit further out.
fn distance_estimate(coeffs: &[Complex64], dcoeffs: &[Complex64], mut z: Complex64, mut dz: Complex64) -> Option<f64> {
    for _ in 0..64 {
        if z.norm() > 1e8 {
            break;
        }
        dz *= horner(dcoeffs, z);
        z = horner(coeffs, z);
    }
    let (r, d) = (z.norm(), dz.norm());
    (r.is_finite() && d.is_finite() && d > 0.0).then(|| r * r.ln() / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(c: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(c))
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn float(c: &[i64], a: f64) -> OrbitReport {
        let coeffs = to_complex_coeffs(&Poly::from_ints(c));
        float_orbit(&coeffs, Complex64::new(a, 0.0), &FloatParams::for_map(&coeffs))
    }

    /// Independent replay: iterate and look for the first repeat by scanning.
    fn replay(r: &RatFun, a: &GaussianRational, steps: usize) -> Option<(usize, usize)> {
        let mut orbit = vec![a.clone()];
        for _ in 0..steps {
            let next = r.eval(orbit.last()?)?;
            if let Some(j) = orbit.iter().position(|w| *w == next) {
                return Some((j, orbit.len() - j));
            }
            orbit.push(next);
        }
        None
    }

    #[test]
    fn exact_examples() {
        let run = |c: &[i64], a| exact_orbit(&rf(c), &g(a), DEFAULT_MAX_ITER, DEFAULT_HEIGHT_BITS);
        assert_eq!(run(&[-1, 0, 1], 0), OrbitReport::FiniteExact { preperiod: 0, period: 2 });
        assert_eq!(run(&[0, 0, 1], 1), OrbitReport::FiniteExact { preperiod: 0, period: 1 });
        assert_eq!(run(&[0, 0, 1], -1), OrbitReport::FiniteExact { preperiod: 1, period: 1 });
        assert!(matches!(run(&[0, 0, 1], 2), OrbitReport::InfiniteCertified { .. }));
        assert_eq!(run(&[-2, 0, 1], 2), OrbitReport::FiniteExact { preperiod: 0, period: 1 });
    }

    #[test]
    fn exact_orbits_match_replay() {
        let cases: [(&[i64], i64); 5] = [(&[-1, 0, 1], 0), (&[-1, 0, 1], 1), (&[0, 0, 1], -1), (&[-2, 0, 1], 0), (&[-2, 0, 1], -1)];
        for (c, a) in cases {
            let r = rf(c);
            match exact_orbit(&r, &g(a), 50, 256) {
                OrbitReport::FiniteExact { preperiod, period } => {
                    assert_eq!(replay(&r, &g(a), 50), Some((preperiod, period)), "{c:?} at {a}")
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn exact_height_budget() {
        let a = GaussianRational::from_ratio(1, 3);
        assert!(matches!(exact_orbit(&rf(&[0, 0, 1]), &a, 1000, 64), OrbitReport::Undecided { .. }));
        assert!(matches!(exact_orbit(&rf(&[0, 0, 1]), &a, 3, 4096), OrbitReport::Undecided { budget: 3 }));
    }

    #[test]
    fn rational_maps_pass_through_infinity() {
        // 1/z: 0 → ∞ → 0.
        let r = RatFun::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1])).unwrap();
        assert_eq!(exact_orbit(&r, &g(0), 10, 64), OrbitReport::FiniteExact { preperiod: 0, period: 2 });
        assert_eq!(exact_orbit(&r, &g(2), 10, 64), OrbitReport::FiniteExact { preperiod: 0, period: 2 });
    }

    #[test]
    fn escape_radius_is_sound() {
        // |P(z)| > |z| just outside the bound, sampled around the circle.
        for c in [&[-1i64, 0, 1][..], &[3, -2, 0, 2], &[0, 0, 1], &[5, 1, 1]] {
            let p = Poly::from_ints(c);
            let r = num_traits::ToPrimitive::to_f64(&escape_radius_bound(&p)).unwrap() * 1.0001;
            let coeffs = to_complex_coeffs(&p);
            for k in 0..64 {
                let z = Complex64::from_polar(r, k as f64 * std::f64::consts::TAU / 64.0);
                assert!(horner(&coeffs, z).norm() > z.norm(), "{c:?}");
            }
        }
    }

    #[test]
    fn float_examples() {
        match float(&[0, 0, 1], 0.5) {
            OrbitReport::AttractedNumeric { period: 1, multiplier_modulus } => assert!(multiplier_modulus < 1e-6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(float(&[0, 0, 1], 2.0), OrbitReport::EscapedNumeric { .. }));
        match float(&[-1, 0, 1], 0.0) {
            OrbitReport::AttractedNumeric { period: 2, multiplier_modulus } => assert!(multiplier_modulus < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(float(&[0, 0, 1], 1.0), OrbitReport::FiniteNumeric { preperiod: 0, period: 1 });
    }

    #[test]
    fn exact_and_float_periods_agree() {
        for (c, a) in [(&[0i64, 0, 1][..], 1i64), (&[0, 0, 1], -1), (&[-2, 0, 1], 2), (&[-2, 0, 1], 0), (&[-1, 0, 1], 0)] {
            let exact = exact_orbit(&rf(c), &g(a), 100, 256);
            let OrbitReport::FiniteExact { period, .. } = exact else { panic!("{exact:?}") };
            match float(c, a as f64) {
                OrbitReport::FiniteNumeric { period: p, .. } | OrbitReport::AttractedNumeric { period: p, .. } => {
                    assert_eq!(p, period, "{c:?} at {a}")
                }
                other => panic!("{c:?} at {a}: {other:?}"),
            }
        }
    }
}
