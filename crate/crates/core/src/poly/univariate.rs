use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// Dense univariate polynomial over ℚ(i), coefficients in ascending degree.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `a·z + b`
    pub fn linear(a: GaussianRational, b: GaussianRational) -> Self {
        Self::new(vec![b, a])
    }

    /// Chebyshev polynomial of the first kind, `T_n(cos θ) = cos nθ`.
    pub fn chebyshev(n: usize) -> Self {
        let two_z = Self::monomial(GaussianRational::from_int(2), 1);
        let (mut prev, mut cur) = (Self::one(), Self::z());
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            let next = &(&two_z * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Largest `v` with `z^v | self`; zero for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self ∘ other`, i.e. `self(other(z))`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `n`-fold iterate `self ∘ … ∘ self`; `n = 0` gives `z`.
    pub fn iterate(&self, n: usize) -> Poly {
        (0..n).fold(Poly::z(), |acc, _| self.compose(&acc))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    /// The polynomial of degree below `xs.len()` through `(xs[k], ys[k])`;
    /// `None` on repeated nodes.
    pub fn interpolate(xs: &[GaussianRational], ys: &[GaussianRational]) -> Option<Poly> {
        assert_eq!(xs.len(), ys.len(), "one value per node");
        // Newton divided differences, then Horner in the Newton basis.
        let mut dd = ys.to_vec();
        for level in 1..xs.len() {
            for k in (level..xs.len()).rev() {
                let num = &dd[k] - &dd[k - 1];
                dd[k] = num.checked_div(&(&xs[k] - &xs[k - level]))?;
            }
        }
        let mut acc = Poly::zero();
        for k in (0..xs.len()).rev() {
            acc = &(&acc * &Poly::linear(GaussianRational::one(), -&xs[k])) + &Poly::constant(dd[k].clone());
        }
        Some(acc)
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussianRational::zero(); self.coeffs.len() - dd];
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
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if !self.is_zero() && !other.is_zero() {
            // The image mod a prime bounds the degree from above.
            match modp::gcd_degree(self, other) {
                Some(0) => return Poly::one(),
                Some(d) => {
                    for (x, y) in [(self, other), (other, self)] {
                        if x.degree() == d && y.div_rem(x).1.is_zero() {
                            return x.monic();
                        }
                    }
                }
                None => {}
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Removes the factor `z^valuation`.
    pub fn shift_down(&self, v: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(v).cloned().collect())
    }

    /// Polynomial in `z^k`: returns `P` with `self = P(z^k)` if it exists.
    pub fn deflate(&self, k: usize) -> Option<Poly> {
        if k == 0 {
            return None;
        }
        if self.coeffs.iter().enumerate().any(|(e, c)| e % k != 0 && !c.is_zero()) {
            return None;
        }
        Some(Poly::new(self.coeffs.iter().step_by(k).cloned().collect()))
    }

    /// True when the polynomial is exactly `z^k` for some `k ≥ 1`.
    pub fn monomial_exponent(&self) -> Option<usize> {
        let k = self.degree();
        if k >= 1 && self.is_monic() && self.coeffs[..k].iter().all(Zero::is_zero) {
            Some(k)
        } else {
            None
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut body = if c.is_real() {
                c.to_string()
            } else {
                format!("({c})")
            };
            let negative = body.starts_with('-');
            if negative {
                body.remove(0);
            }
            if k > 0 && (body == "1") {
                body.clear();
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let term = if body.is_empty() && mono.is_empty() { "1".to_string() } else { format!("{body}{mono}") };
            match (first, negative) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_examples() {
        let z2 = Poly::from_ints(&[0, 0, 1]);
        let z3 = Poly::from_ints(&[0, 0, 0, 1]);
        assert_eq!(z2.compose(&z3), Poly::from_ints(&[0, 0, 0, 0, 0, 0, 1]));
        // (z+1)^2 + 1
        let p = Poly::from_ints(&[1, 0, 1]);
        let q = Poly::from_ints(&[1, 1]);
        assert_eq!(p.compose(&q), Poly::from_ints(&[2, 2, 1]));
        let c = Poly::from_ints(&[5]);
        assert_eq!(c.compose(&q), c);
    }

    #[test]
    fn evaluation_examples() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.eval(&GaussianRational::zero()), GaussianRational::from_int(-1));
        assert_eq!(p.eval(&GaussianRational::from_int(-1)), GaussianRational::zero());
        let z2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(z2.eval(&GaussianRational::from_ratio(3, 2)), GaussianRational::from_ratio(9, 4));
    }

    #[test]
    fn chebyshev_closed_forms() {
        assert_eq!(Poly::chebyshev(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(Poly::chebyshev(3), Poly::from_ints(&[0, -3, 0, 4]));
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)(z+2) and (z-1)(z+3)
        let a = Poly::from_ints(&[-2, 1, 1]);
        let b = Poly::from_ints(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(q, Poly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::from_ints(&[1, 2, 1]).squarefree_part(), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Poly::from_ints(&[1, 0, -2, 1]).to_string(), "z^3 - 2z^2 + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}

/// Reduction of ℚ(i) modulo a prime `p ≡ 1 (mod 4)`, sending `i` to a square
/// root of −1.
mod modp {
    use std::sync::OnceLock;

    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::Poly;
    use crate::poly::gaussian::{GaussianRational, Rational};

    const P: u64 = 1_000_000_009;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn sqrt_minus_one() -> u64 {
        static S: OnceLock<u64> = OnceLock::new();
        *S.get_or_init(|| {
            (2..)
                .map(|g| pow(g, (P - 1) / 4))
                .find(|&s| mul(s, s) == P - 1)
                .expect("p ≡ 1 mod 4")
        })
    }

    fn int(n: &BigInt) -> u64 {
        let m: BigInt = n % P;
        let m = m.to_i64().expect("reduced");
        if m < 0 {
            (m + P as i64) as u64
        } else {
            m as u64
        }
    }

    fn rational(q: &Rational) -> Option<u64> {
        let d = int(q.denom());
        (d != 0).then(|| mul(int(q.numer()), inv(d)))
    }

    fn scalar(c: &GaussianRational) -> Option<u64> {
        Some((rational(&c.re)? + mul(sqrt_minus_one(), rational(&c.im)?)) % P)
    }

    fn reduce(p: &Poly) -> Option<Vec<u64>> {
        let v: Vec<u64> = p.coeffs().iter().map(scalar).collect::<Option<_>>()?;
        (*v.last()? != 0).then_some(v)
    }

    fn rem(a: &mut Vec<u64>, b: &[u64]) {
        let lead = inv(*b.last().expect("nonzero"));
        while a.len() >= b.len() {
            let c = mul(*a.last().expect("nonempty"), lead);
            let shift = a.len() - b.len();
            for (j, d) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + P - mul(c, *d)) % P;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
    }

    /// Degree of the gcd of the images; `None` when the prime divides a
    /// denominator or a leading coefficient.
    pub(super) fn gcd_degree(a: &Poly, b: &Poly) -> Option<usize> {
        let (mut a, mut b) = (reduce(a)?, reduce(b)?);
        while !b.is_empty() {
            rem(&mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        Some(a.len() - 1)
    }
}
