use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::ratfun::RatFun;
use super::univariate::Poly;
use crate::error::{Error, Result};

/// Polynomial in one main variable (`W`, or `U` after elimination) whose
/// coefficients are rational functions of `z`. Ascending degree, no stored
/// leading zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    coeffs: Vec<RatFun>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().is_some_and(RatFun::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFun::one())
    }

    pub fn constant(c: RatFun) -> Self {
        Self::new(vec![c])
    }

    /// The main variable itself.
    pub fn var() -> Self {
        Self::new(vec![RatFun::zero(), RatFun::one()])
    }

    /// Lifts a polynomial with constant coefficients in the main variable.
    pub fn from_constant_poly(p: &Poly) -> Self {
        Self::new(p.coeffs().iter().map(|c| RatFun::constant(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> RatFun {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(RatFun::is_one)
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &RatFun::constant(GaussianRational::from_int(k as i64)))
                .collect(),
        )
    }

    /// Euclidean division over the coefficient field ℚ(i)(z).
    pub fn div_rem(&self, divisor: &BiPoly) -> (BiPoly, BiPoly) {
        assert!(!divisor.is_zero(), "division by the zero bivariate polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (BiPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFun::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (BiPoly::new(quot), BiPoly::new(rem))
    }

    /// Monic gcd in the main variable.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, ∂self)`, monic.
    pub fn squarefree_part(&self) -> BiPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Specializes `z := z0`; `None` if a coefficient has a pole there.
    pub fn eval_z(&self, z0: &GaussianRational) -> Option<Poly> {
        self.coeffs.iter().map(|c| c.eval(z0)).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    /// Least common multiple of the coefficient denominators (monic).
    pub fn denominator_lcm(&self) -> Poly {
        self.coeffs.iter().fold(Poly::one(), |acc, c| {
            let g = acc.gcd(c.den());
            (&acc * c.den()).div_exact(&g).expect("gcd divides").monic()
        })
    }

    /// Clears denominators: `Σ_k P_k(z) X^k` with polynomial `P_k`.
    pub fn numerator_coeffs(&self) -> Vec<Poly> {
        let l = self.denominator_lcm();
        self.coeffs
            .iter()
            .map(|c| (&l * c.num()).div_exact(c.den()).expect("lcm is divisible"))
            .collect()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·W")?,
                _ => write!(f, "({c})·W^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Polynomial in the elimination variable `W` whose coefficients lie in
/// ℚ(i)(z)[U]. Used to eliminate `W` between `f(z, W)` and `g(W, U)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WPoly {
    coeffs: Vec<BiPoly>,
}

impl WPoly {
    pub fn new(mut coeffs: Vec<BiPoly>) -> Self {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        WPoly { coeffs }
    }

    /// `f(z, W)` with no dependence on `U`.
    pub fn from_w_poly(f: &BiPoly) -> Self {
        Self::new(f.coeffs().iter().map(|c| BiPoly::constant(c.clone())).collect())
    }

    /// Builds `Σ_{i,j} c_ij W^i U^j` from `rows[i][j] = c_ij`.
    pub fn from_grid(rows: &[Vec<GaussianRational>]) -> Self {
        Self::new(rows.iter().map(|row| BiPoly::from_constant_poly(&Poly::new(row.clone()))).collect())
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Minimal integral-domain interface needed by Bareiss elimination.
pub(crate) trait DomainElem: Clone + PartialEq {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, o: &Self) -> Self;
    fn ring_sub(&self, o: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Division known to be exact.
    fn ring_div_exact(&self, o: &Self) -> Self;
}

impl DomainElem for GaussianRational {
    fn ring_zero() -> Self {
        GaussianRational::zero()
    }
    fn ring_one() -> Self {
        GaussianRational::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_div_exact(&self, o: &Self) -> Self {
        self.checked_div(o).expect("exact division by nonzero")
    }
}

impl DomainElem for RatFun {
    fn ring_zero() -> Self {
        RatFun::zero()
    }
    fn ring_one() -> Self {
        RatFun::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_div_exact(&self, o: &Self) -> Self {
        self.checked_div(o).expect("exact division by nonzero")
    }
}

impl DomainElem for BiPoly {
    fn ring_zero() -> Self {
        BiPoly::zero()
    }
    fn ring_one() -> Self {
        BiPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_det<R: DomainElem>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::ring_one();
    }
    let mut negate = false;
    let mut prev = R::ring_one();
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ring_is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].ring_mul(&m[k][k]).ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = t.ring_div_exact(&prev);
            }
            m[i][k] = R::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.ring_neg()
    } else {
        det
    }
}

/// Sylvester resultant of two polynomials given by ascending coefficients.
pub(crate) fn sylvester_resultant<R: DomainElem>(f: &[R], g: &[R]) -> R {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of f, then m shifted copies of g, descending powers
    for shift in 0..n {
        let mut row = vec![R::ring_zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![R::ring_zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Eliminates `W` from `f` and `g`: the Sylvester determinant of the two
/// polynomials in `W`, an element of ℚ(i)(z)[U].
pub fn resultant_in_w(f: &WPoly, g: &WPoly) -> Result<BiPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(sylvester_resultant(f.coeffs(), g.coeffs()))
}

/// Resultant of two polynomials in `W` over ℚ(i)(z).
pub fn resultant_over_z(f: &BiPoly, g: &BiPoly) -> Result<RatFun> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(sylvester_resultant(f.coeffs(), g.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(c: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(c))
    }

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn resultant_eliminates_graph_of_square() {
        // f = W - z^2, g = U - W - 1  →  U - z^2 - 1
        let f = WPoly::from_w_poly(&BiPoly::new(vec![rf(&[0, 0, -1]), rf(&[1])]));
        let g = WPoly::from_grid(&[vec![gi(-1), gi(1)], vec![gi(-1)]]);
        let r = resultant_in_w(&f, &g).unwrap();
        assert_eq!(r, BiPoly::new(vec![rf(&[-1, 0, -1]), rf(&[1])]));
    }

    #[test]
    fn resultant_substitutes_square() {
        // f = W - z, g = U - W^2  →  U - z^2
        let f = WPoly::from_w_poly(&BiPoly::new(vec![rf(&[0, -1]), rf(&[1])]));
        let g = WPoly::from_grid(&[vec![gi(0), gi(1)], vec![], vec![gi(-1)]]);
        let r = resultant_in_w(&f, &g).unwrap();
        assert_eq!(r, BiPoly::new(vec![rf(&[0, 0, -1]), rf(&[1])]));
    }

    #[test]
    fn shared_root_gives_zero() {
        let w = WPoly::from_w_poly(&BiPoly::var());
        assert!(resultant_in_w(&w, &w).unwrap().is_zero());
        assert_eq!(resultant_in_w(&w, &WPoly::default()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<RatFun>> = vec![
            vec![rf(&[2]), rf(&[0, 1]), rf(&[1])],
            vec![rf(&[1]), rf(&[3]), rf(&[0, 0, 1])],
            vec![rf(&[0, 1]), rf(&[1]), rf(&[4])],
        ];
        let cof = |r: usize, c: usize| -> RatFun {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]) - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]])
        };
        let expected = &(&(&m[0][0] * &cof(0, 0)) - &(&m[0][1] * &cof(0, 1))) + &(&m[0][2] * &cof(0, 2));
        assert_eq!(bareiss_det(m.clone()), expected);
    }
}
