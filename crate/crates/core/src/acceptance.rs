//! End-to-end checks of the library's headline guarantees, each with a
//! seeded generator and an exact or toleranced pass condition.
//!
//! Every composition the checks use as ground truth goes through
//! [`Checks::compose`], so a broken composition routine makes them fail.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{evaluate, Base, CharValue, Character};
use crate::corr::{non_prime_example, verify_suite, Suite};
use crate::decompose::{apply_move, available_moves, complete_decomposition, decompose_once, Decomposition, RittMove};
use crate::equivalence::{affine_biequiv, sandwich_isomorphism, SandwichSemigroup};
use crate::error::Result;
use crate::hcorr::HolCorr;
use crate::julia::{
    exact_orbit, float_orbit, render, to_complex_coeffs, CellClass, FloatParams, OrbitReport, Region, RenderBudgets,
    DEFAULT_HEIGHT_BITS, DEFAULT_MAX_ITER,
};
use crate::poly::{AffineMap, GaussianRational, Poly, RatFun};

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const CHECK_COUNT: usize = 10;

pub type ComposeFn = fn(&Poly, &Poly) -> Poly;

#[derive(Clone, Debug)]
pub struct Checks {
    pub seed: u64,
    /// `compose(f, g) = f∘g`, used for every reference composition.
    pub compose: ComposeFn,
    pub render_resolution: usize,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { seed: DEFAULT_SEED, compose: |f, g| f.compose(g), render_resolution: 512 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!("[{}] {:>2} {:<24} {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

pub const NAMES: [&str; CHECK_COUNT] = [
    "ritt-invariance",
    "ritt-identities",
    "character-multiplicativity",
    "length-vs-degree",
    "biorbit-equivalence",
    "finite-schreier",
    "correspondence-algebra",
    "orbit-classification",
    "julia-renderer",
    "sandwich-laws",
];

type Outcome = Result<(bool, String)>;

impl Checks {
    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn compose_all(&self, factors: &[Poly]) -> Poly {
        let (last, rest) = factors.split_last().expect("nonempty");
        rest.iter().rev().fold(last.clone(), |acc, f| (self.compose)(f, &acc))
    }

    /// Runs check `id` (1-based); errors count as failures.
    pub fn run(&self, id: usize) -> CheckReport {
        let outcome = match id {
            1 => self.ritt_invariance(),
            2 => self.ritt_identities(),
            3 => self.character_multiplicativity(),
            4 => self.length_vs_degree(),
            5 => self.biorbit_equivalence(),
            6 => self.finite_schreier(),
            7 => self.correspondence_algebra(),
            8 => self.orbit_classification(),
            9 => self.julia_renderer(),
            10 => self.sandwich_laws(),
            _ => Ok((false, format!("no check {id}"))),
        };
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        CheckReport { id, name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), pass, detail }
    }

    /// All checks, run concurrently and reported in order.
    pub fn run_all(&self) -> Vec<CheckReport> {
        (1..=CHECK_COUNT).into_par_iter().map(|id| self.run(id)).collect()
    }

    fn ritt_invariance(&self) -> Outcome {
        let mut rng = self.rng(1);
        let mut moves_applied = 0;
        for case in 0..100 {
            let (d1, d2) = ([2, 3, 5][rng.gen_range(0..3)], [2, 3, 5][rng.gen_range(0..3)]);
            let (f1, f2) = (random_poly(&mut rng, d1), random_poly(&mut rng, d2));
            let p = (self.compose)(&f1, &f2);
            let d = complete_decomposition(&p)?;
            if self.compose_all(d.factors()) != p {
                return Ok((false, format!("case {case}: recomposition differs for {p}")));
            }
            let mut expected = vec![d1, d2];
            expected.sort_unstable();
            if d.invariants().degree_multiset != expected {
                return Ok((false, format!("case {case}: degrees {:?}, built {expected:?}", d.invariants().degree_multiset)));
            }
            let shuffle = RittMove::AffineShuffle { position: 1, a: nonzero_gr(&mut rng), b: small_gr(&mut rng) };
            let mut moves = available_moves(&d, 1)?;
            moves.push(shuffle);
            for m in &moves {
                if !self.move_preserves(&d, m, &p)? {
                    return Ok((false, format!("case {case}: {m:?} changed the decomposition's invariants")));
                }
                moves_applied += 1;
            }
        }
        // Swappable pairs do not arise at random; build some.
        for case in 0..20 {
            let k = rng.gen_range(2..=3);
            let r = rng.gen_range(1..=2);
            let deg = rng.gen_range(1..=2);
            let inner = random_poly(&mut rng, deg);
            let g = &Poly::monomial(GaussianRational::one(), r) * &inner.compose(&Poly::monomial(GaussianRational::one(), k));
            let d = Decomposition::new(vec![Poly::monomial(GaussianRational::one(), k), g])?;
            let p = self.compose_all(d.factors());
            let moves = available_moves(&d, 1)?;
            if !moves.iter().any(|m| matches!(m, RittMove::MonomialSwap { .. })) {
                return Ok((false, format!("monomial case {case}: swap not offered")));
            }
            for m in &moves {
                if !self.move_preserves(&d, m, &p)? {
                    return Ok((false, format!("monomial case {case}: {m:?} changed the decomposition's invariants")));
                }
                moves_applied += 1;
            }
        }
        Ok((true, format!("120 decompositions, {moves_applied} moves preserved composition and invariants")))
    }

    fn move_preserves(&self, d: &Decomposition, m: &RittMove, p: &Poly) -> Result<bool> {
        let e = apply_move(d, m)?;
        Ok(self.compose_all(e.factors()) == *p && e.invariants() == d.invariants())
    }

    fn ritt_identities(&self) -> Outcome {
        let (t2, t3) = (Poly::chebyshev(2), Poly::chebyshev(3));
        let t6 = Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]);
        let cheb = (self.compose)(&t2, &t3) == t6 && (self.compose)(&t3, &t2) == t6;
        let z2 = Poly::from_ints(&[0, 0, 1]);
        let lhs = (self.compose)(&z2, &Poly::from_ints(&[0, 1, 0, 1]));
        let rhs = (self.compose)(&Poly::from_ints(&[0, 1, 2, 1]), &z2);
        let mono = lhs == rhs && lhs == Poly::from_ints(&[0, 0, 1, 0, 2, 0, 1]);
        // The moves produce the other side of each identity.
        let swapped = apply_move(&Decomposition::new(vec![t2.clone(), t3.clone()])?, &RittMove::ChebyshevSwap { position: 1 })?;
        let moved = apply_move(
            &Decomposition::new(vec![z2.clone(), Poly::from_ints(&[0, 1, 0, 1])])?,
            &RittMove::MonomialSwap { position: 1, k: 2, r: 1 },
        )?;
        let via_moves =
            swapped.factors() == [t3, t2] && moved.factors() == [Poly::from_ints(&[0, 1, 2, 1]), z2];
        Ok((
            cheb && mono && via_moves,
            format!("chebyshev {}, monomial {}, moves {}", ok(cheb), ok(mono), ok(via_moves)),
        ))
    }

    fn character_multiplicativity(&self) -> Outcome {
        let mut rng = self.rng(3);
        let prime = Poly::from_ints(&[-2, 0, 1]);
        let chars = [
            Character::Degree { s: 1 },
            Character::Degree { s: 2 },
            Character::Length { base: Base::Symbolic("t".into()) },
            Character::Length { base: Base::Exact(GaussianRational::from_ratio(3, 2)) },
            Character::AffineOrbit { prime: prime.clone(), a: GaussianRational::from_parts(2, 1, 1, 1) },
        ];
        let mut nonzero_orbit = 0;
        for case in 0..200 {
            let p = self.character_sample(&mut rng, &prime);
            let q = self.character_sample(&mut rng, &prime);
            let pq = (self.compose)(&p, &q);
            for chi in &chars {
                let (vp, vq, vpq) = (evaluate(chi, &p)?, evaluate(chi, &q)?, evaluate(chi, &pq)?);
                if !vpq.same_value(&vp.mul(&vq)?) {
                    return Ok((false, format!("case {case}: {chi:?} at ({p}) ∘ ({q}): {vpq} ≠ {vp}·{vq}")));
                }
                if matches!(chi, Character::AffineOrbit { .. }) && vpq != CharValue::Zero && pq.degree() > 1 {
                    nonzero_orbit += 1;
                }
            }
        }
        for c in [0, 1, -3] {
            let c = Poly::from_ints(&[c]);
            for chi in &chars {
                if evaluate(chi, &c)? != CharValue::Zero {
                    return Ok((false, format!("{chi:?} is nonzero on the constant {c}")));
                }
            }
        }
        Ok((true, format!("200 pairs × {} characters; {nonzero_orbit} nonzero orbit values; constants map to 0", chars.len())))
    }

    /// A constant, a random polynomial, or an element of the semigroup
    /// generated by the bi-orbit of `prime`.
    fn character_sample(&self, rng: &mut ChaCha8Rng, prime: &Poly) -> Poly {
        match rng.gen_range(0..10) {
            0 | 1 => Poly::constant(small_gr(rng)),
            2..=4 => {
                let deg = rng.gen_range(1..=3);
                random_poly(rng, deg)
            }
            _ => {
                let n = rng.gen_range(1..=2);
                let factors: Vec<Poly> = (0..n)
                    .map(|_| {
                        let (a, b) = (random_affine(rng), random_affine(rng));
                        (self.compose)(&a.to_poly(), &(self.compose)(prime, &b.to_poly()))
                    })
                    .collect();
                self.compose_all(&factors)
            }
        }
    }

    fn length_vs_degree(&self) -> Outcome {
        let p = Poly::from_ints(&[0, 1, 0, 0, 1]);
        let z4 = Poly::from_ints(&[0, 0, 0, 0, 1]);
        let no_split = decompose_once(&p, 2)?.is_none() && quartic_split(&p).is_none();
        let z4_split = quartic_split(&z4).is_some_and(|(g, h)| (self.compose)(&g, &h) == z4);
        let (lp, l4) = (complete_decomposition(&p)?.len(), complete_decomposition(&z4)?.len());
        let length = Character::Length { base: Base::Symbolic("t".into()) };
        let degree = Character::Degree { s: 1 };
        let same_degree = evaluate(&degree, &p)? == evaluate(&degree, &z4)?;
        let lengths_differ = !evaluate(&length, &p)?.same_value(&evaluate(&length, &z4)?);
        let pass = no_split && z4_split && lp == 1 && l4 == 2 && same_degree && lengths_differ;
        Ok((pass, format!("l(z⁴+z) = {lp}, l(z⁴) = {l4}, equal degree {}, coefficient oracle agrees {}", ok(same_degree), ok(no_split && z4_split))))
    }

    fn biorbit_equivalence(&self) -> Outcome {
        let mut rng = self.rng(5);
        for case in 0..100 {
            let deg = rng.gen_range(2..=5);
            let p = random_poly(&mut rng, deg);
            let (a, b) = (random_affine(&mut rng), random_affine(&mut rng));
            let q = (self.compose)(&a.to_poly(), &(self.compose)(&p, &b.to_poly()));
            match affine_biequiv(&p, &q) {
                Some(w) if (self.compose)(&w.a.to_poly(), &(self.compose)(&p, &w.b.to_poly())) == q => {}
                Some(w) => return Ok((false, format!("pair {case}: witness {w:?} does not recompose"))),
                None => return Ok((false, format!("pair {case}: missed {q} ~ {p}"))),
            }
        }
        for case in 0..100 {
            // Bi-orbits are 4-dimensional, so degree ≥ 4 leaves room to step off one.
            let deg = rng.gen_range(4..=5);
            let p = random_poly(&mut rng, deg);
            let (a, b) = (random_affine(&mut rng), random_affine(&mut rng));
            let q = (self.compose)(&a.to_poly(), &(self.compose)(&p, &b.to_poly()));
            let k = rng.gen_range(1..=deg - 2);
            let q = &q + &Poly::monomial(nonzero_gr(&mut rng), k);
            if let Some(w) = affine_biequiv(&p, &q) {
                let verified = (self.compose)(&w.a.to_poly(), &(self.compose)(&p, &w.b.to_poly())) == q;
                return Ok((false, format!("non-pair {case}: reported {w:?} (recomposes: {verified})")));
            }
        }
        Ok((true, "100 pairs recovered with verified witnesses, 100 non-pairs rejected".into()))
    }

    fn finite_schreier(&self) -> Outcome {
        let mut failed = Vec::new();
        for n in [2, 3] {
            for s in Suite::ALL {
                let r = verify_suite(n, s)?;
                if !r.pass {
                    failed.push(format!("{} n={n}: {}", s.name(), r.to_json()));
                }
            }
        }
        let example = non_prime_example(3)?.is_some();
        let pass = failed.is_empty() && example;
        let detail = if pass {
            "all suites pass on 2 and 3 points; non-prime ideal example on 3 points".to_string()
        } else {
            format!("failures: {failed:?}; non-prime example found: {example}")
        };
        Ok((pass, detail))
    }

    fn correspondence_algebra(&self) -> Outcome {
        let mut rng = self.rng(7);
        for case in 0..50 {
            let (f, g) = (random_ratfun(&mut rng), random_ratfun(&mut rng));
            let k = HolCorr::graph(&f).compose(&HolCorr::graph(&g), false)?;
            if k != HolCorr::graph(&f.compose(&g)) {
                return Ok((false, format!("graph case {case}: ({f}) ∘ ({g})")));
            }
        }
        for case in 0..50 {
            let k1 = random_holcorr(&mut rng)?;
            let k2 = random_holcorr(&mut rng)?;
            let k = k2.compose(&k1, false)?;
            if k.degree() > k1.degree() * k2.degree() {
                return Ok((false, format!("degree case {case}: {} > {}·{}", k.degree(), k1.degree(), k2.degree())));
            }
        }
        let z2 = RatFun::from_poly(Poly::from_ints(&[0, 0, 1]));
        let worked = HolCorr::graph(&RatFun::from_poly(Poly::from_ints(&[1, 1]))).compose(&HolCorr::graph(&z2), false)?;
        let expected = HolCorr::graph(&RatFun::from_poly(Poly::from_ints(&[1, 0, 1])));
        let pass = worked == expected;
        Ok((pass, format!("50 graph compositions exact, 50 degree bounds hold, worked resultant {}", ok(pass))))
    }

    fn orbit_classification(&self) -> Outcome {
        let r = |c: &[i64]| RatFun::from_poly(Poly::from_ints(c));
        let run = |c: &[i64], a: i64| exact_orbit(&r(c), &GaussianRational::from_int(a), DEFAULT_MAX_ITER, DEFAULT_HEIGHT_BITS);
        let a = run(&[-1, 0, 1], 0) == OrbitReport::FiniteExact { preperiod: 0, period: 2 };
        let b = run(&[0, 0, 1], 1) == OrbitReport::FiniteExact { preperiod: 0, period: 1 };
        let c = matches!(run(&[0, 0, 1], 2), OrbitReport::InfiniteCertified { .. });
        let coeffs = to_complex_coeffs(&Poly::from_ints(&[0, 0, 1]));
        let f = float_orbit(&coeffs, Complex64::new(0.5, 0.0), &FloatParams::for_map(&coeffs));
        let d = matches!(f, OrbitReport::AttractedNumeric { multiplier_modulus, .. } if multiplier_modulus < 1e-6);
        Ok((a && b && c && d, format!("z²−1@0 {}, z²@1 {}, z²@2 {}, float z²@0.5 {}", ok(a), ok(b), ok(c), ok(d))))
    }

    fn julia_renderer(&self) -> Outcome {
        let n = self.render_resolution;
        let map = (self.compose)(&Poly::from_ints(&[0, 0, 1]), &Poly::z());
        let region = Region::square(Complex64::new(0.0, 0.0), 4.0);
        let budgets = RenderBudgets::default();
        let grid = render(&map, &region, n, n, &budgets)?;
        let again = render(&map, &region, n, n, &budgets)?;
        let (mut outer, mut outer_escape, mut inner, mut inner_attr, mut undecided, mut stray) = (0, 0, 0, 0, 0, 0);
        for j in 0..n {
            for i in 0..n {
                let r = grid.point(i, j).norm();
                let class = grid.cell(i, j).class;
                if r > 1.05 {
                    outer += 1;
                    outer_escape += (class == CellClass::Escape) as usize;
                } else if r < 0.95 {
                    inner += 1;
                    inner_attr += (class == CellClass::Attracted) as usize;
                }
                if class == CellClass::Undecided {
                    undecided += 1;
                    stray += !(0.95..=1.05).contains(&r) as usize;
                }
            }
        }
        let esc = outer_escape as f64 / outer.max(1) as f64;
        let att = inner_attr as f64 / inner.max(1) as f64;
        let identical = grid.cells == again.cells;
        let pass = esc >= 0.99 && att >= 0.99 && undecided > 0 && stray == 0 && identical;
        Ok((
            pass,
            format!(
                "{n}²: escape {:.4}%, attracted {:.4}%, undecided {undecided} ({stray} outside annulus), reruns identical {}",
                100.0 * esc,
                100.0 * att,
                ok(identical)
            ),
        ))
    }

    fn sandwich_laws(&self) -> Outcome {
        let mut rng = self.rng(10);
        for case in 0..100 {
            let [g, f, h, k] = [0; 4].map(|_| {
                let deg = rng.gen_range(1..=2);
                random_poly(&mut rng, deg)
            });
            let s = SandwichSemigroup::new(g.clone());
            let fh = s.compose(&f, &h);
            if fh != self.compose_all(&[f.clone(), g.clone(), h.clone()]) {
                return Ok((false, format!("triple {case}: f∗h ≠ f∘g∘h")));
            }
            if s.compose(&fh, &k) != s.compose(&f, &s.compose(&h, &k)) {
                return Ok((false, format!("triple {case}: associativity fails")));
            }
        }
        let f = AffineMap::translation(GaussianRational::one());
        let b = AffineMap::identity();
        for case in 0..100 {
            let deg = rng.gen_range(1..=3);
            let p1 = random_poly(&mut rng, deg);
            let iso = sandwich_isomorphism(&f, &b, &p1);
            let expected_kernel = self.compose_all(&[b.to_poly(), f.to_poly(), p1.clone(), f.inverse().to_poly()]);
            if iso.target_kernel != expected_kernel {
                return Ok((false, format!("case {case}: target kernel differs from B∘f∘P1∘f⁻¹")));
            }
            let pairs: Vec<(Poly, Poly)> = (0..3)
                .map(|_| {
                    let (dp, dq) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                    (random_poly(&mut rng, dp), random_poly(&mut rng, dq))
                })
                .collect();
            if let Err(e) = iso.verify(&pairs) {
                return Ok((false, format!("case {case}: {e}")));
            }
            if iso.apply(&Poly::z()) != b.inverse().to_poly() {
                return Ok((false, format!("case {case}: Φ(Id) ≠ B⁻¹")));
            }
        }
        Ok((true, "100 associative triples; 100 kernels × 3 pairs satisfy the homomorphism law; Φ(Id) = B⁻¹".into()))
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

/// `g∘h = p` with `h = z² + βz` for a quartic, by matching coefficients.
fn quartic_split(p: &Poly) -> Option<(Poly, Poly)> {
    if p.degree() != 4 {
        return None;
    }
    let lead = p.leading();
    let m = p.scale(&lead.inv()?);
    // (z² + βz)² + γ(z² + βz) + δ
    let beta = m.coeff(3).checked_div(&GaussianRational::from_int(2))?;
    let gamma = &m.coeff(2) - &(&beta * &beta);
    if &gamma * &beta != m.coeff(1) {
        return None;
    }
    let h = Poly::new(vec![GaussianRational::zero(), beta, GaussianRational::one()]);
    let g = Poly::new(vec![m.coeff(0), gamma, GaussianRational::one()]).scale(&lead);
    Some((g, h))
}

fn small_gr(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    if rng.gen_bool(0.25) {
        &re + &(&GaussianRational::i() * &GaussianRational::from_int(rng.gen_range(-2..=2)))
    } else {
        re
    }
}

fn nonzero_gr(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = small_gr(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let mut coeffs: Vec<GaussianRational> = (0..deg).map(|_| small_gr(rng)).collect();
    coeffs.push(nonzero_gr(rng));
    Poly::new(coeffs)
}

fn random_affine(rng: &mut ChaCha8Rng) -> AffineMap {
    AffineMap::new(nonzero_gr(rng), small_gr(rng)).expect("nonzero slope")
}

fn random_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
    loop {
        let (dn, dd) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        if let Ok(r) = RatFun::new(random_poly(rng, dn), random_poly(rng, dd)) {
            if r.degree() <= 3 {
                return r;
            }
        }
    }
}

fn random_holcorr(rng: &mut ChaCha8Rng) -> Result<HolCorr> {
    let n = rng.gen_range(1..=2);
    let branches: Vec<RatFun> = (0..n)
        .map(|_| loop {
            let r = random_ratfun(rng);
            if r.degree() <= 2 {
                return r;
            }
        })
        .collect();
    HolCorr::from_branches(&branches)
}
