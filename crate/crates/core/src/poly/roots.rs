//! Roots of univariate polynomials that lie in ℚ(i).
//!
//! Degrees one and two are solved in closed form. Higher degrees go through
//! the rational root test over the Gaussian integers: after clearing
//! denominators every root is `u/v` with `u | a_0` and `v | a_d`, so both
//! end coefficients are factored in ℤ[i] and every quotient of divisors is
//! tested exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::univariate::Poly;

/// Distinct roots of `f` in ℚ(i), sorted by [`GaussianRational::height_cmp`].
/// The zero polynomial yields no roots; callers treat it separately.
pub fn gaussian_roots(f: &Poly) -> Vec<GaussianRational> {
    let mut roots = Vec::new();
    if f.is_zero() {
        return roots;
    }
    let v = f.valuation();
    if v > 0 {
        roots.push(GaussianRational::zero());
    }
    let g = f.shift_down(v).squarefree_part();
    match g.degree() {
        0 => {}
        1 => roots.push(-&(&g.coeff(0) / &g.coeff(1))),
        2 => roots.extend(quadratic_roots(&g)),
        _ => roots.extend(rational_root_test(&g)),
    }
    roots.sort_by(|a, b| a.height_cmp(b));
    roots.dedup();
    roots
}

fn quadratic_roots(g: &Poly) -> Vec<GaussianRational> {
    let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
    let four = GaussianRational::from_int(4);
    let two_a = &GaussianRational::from_int(2) * &a;
    let disc = &(&b * &b) - &(&four * &(&a * &c));
    let Some(s) = disc.sqrt() else {
        return Vec::new();
    };
    let nb = -&b;
    vec![&(&nb + &s) / &two_a, &(&nb - &s) / &two_a]
}

fn rational_root_test(g: &Poly) -> Vec<GaussianRational> {
    let ints = clear_denominators(g);
    let d = ints.len() - 1;
    let a0 = &ints[0];
    let ad = &ints[d];
    let numerators: Vec<GInt> = divisors(a0)
        .into_iter()
        .flat_map(|u| GInt::units().into_iter().map(move |e| u.mul(&e)))
        .collect();
    let denominators = divisors(ad);
    let mut out = Vec::new();
    for v in &denominators {
        // powers of v, reused across numerators
        let vpow: Vec<GInt> = powers(v, d);
        for u in &numerators {
            let upow = powers(u, d);
            let mut acc = GInt::zero();
            for (i, a) in ints.iter().enumerate() {
                acc = acc.add(&a.mul(&upow[i]).mul(&vpow[d - i]));
            }
            if acc.is_zero() {
                out.push(u.to_gaussian().checked_div(&v.to_gaussian()).expect("v != 0"));
            }
        }
    }
    out
}

fn powers(x: &GInt, d: usize) -> Vec<GInt> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(GInt::one());
    for k in 1..=d {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}

/// Scales to Gaussian-integer coefficients and removes their common content.
fn clear_denominators(g: &Poly) -> Vec<GInt> {
    let l = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.common_denom()));
    let lq = BigRational::from_integer(l);
    let ints: Vec<GInt> = g
        .coeffs()
        .iter()
        .map(|c| GInt {
            re: (&c.re * &lq).to_integer(),
            im: (&c.im * &lq).to_integer(),
        })
        .collect();
    let content = ints.iter().fold(GInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() || content.norm().is_one() {
        return ints;
    }
    ints.iter().map(|x| x.div_exact(&content).expect("content divides")).collect()
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GInt { re, im }
    }

    fn zero() -> Self {
        GInt::new(BigInt::zero(), BigInt::zero())
    }

    fn one() -> Self {
        GInt::new(BigInt::one(), BigInt::zero())
    }

    fn units() -> [GInt; 4] {
        [
            GInt::new(BigInt::one(), BigInt::zero()),
            GInt::new(-BigInt::one(), BigInt::zero()),
            GInt::new(BigInt::zero(), BigInt::one()),
            GInt::new(BigInt::zero(), -BigInt::one()),
        ]
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn conj(&self) -> GInt {
        GInt::new(self.re.clone(), -&self.im)
    }

    fn add(&self, o: &GInt) -> GInt {
        GInt::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &GInt) -> GInt {
        GInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn div_exact(&self, o: &GInt) -> Option<GInt> {
        let n = o.norm();
        let p = self.mul(&o.conj());
        if (&p.re % &n).is_zero() && (&p.im % &n).is_zero() {
            Some(GInt::new(&p.re / &n, &p.im / &n))
        } else {
            None
        }
    }

    /// Euclidean division with rounding to the nearest Gaussian integer.
    fn div_round(&self, o: &GInt) -> GInt {
        let n = o.norm();
        let p = self.mul(&o.conj());
        let round = |x: &BigInt| -> BigInt {
            let two_x: BigInt = x * 2u32 + &n;
            two_x.div_floor(&(&n * 2))
        };
        GInt::new(round(&p.re), round(&p.im))
    }

    fn gcd(&self, o: &GInt) -> GInt {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

/// All divisors of `m` up to multiplication by units.
fn divisors(m: &GInt) -> Vec<GInt> {
    let mut out = vec![GInt::one()];
    for (prime, exp) in factor_gaussian(m) {
        let mut next = Vec::with_capacity(out.len() * (exp as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..exp {
                acc = acc.mul(&prime);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}

/// Factorization of a nonzero Gaussian integer into Gaussian primes
/// (unit part discarded).
fn factor_gaussian(m: &GInt) -> Vec<(GInt, u32)> {
    let norm = m.norm().magnitude().clone();
    let mut rational_primes = factor_integer(&norm);
    rational_primes.sort();
    rational_primes.dedup();
    let mut rest = m.clone();
    let mut out = Vec::new();
    for p in rational_primes {
        for pi in gaussian_primes_over(&p) {
            let mut e = 0;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    out
}

fn gaussian_primes_over(p: &BigUint) -> Vec<GInt> {
    let pi = BigInt::from(p.clone());
    if p == &BigUint::from(2u32) {
        return vec![GInt::new(BigInt::one(), BigInt::one())];
    }
    let r = p % 4u32;
    if r == BigUint::from(3u32) {
        return vec![GInt::new(pi, BigInt::zero())];
    }
    // p ≡ 1 mod 4: x² ≡ -1 (mod p), then gcd(p, x + i)
    let exp = (p - 1u32) / 4u32;
    let minus_one = p - 1u32;
    let mut c = BigUint::from(2u32);
    let x = loop {
        let x = c.modpow(&exp, p);
        if (&x * &x) % p == minus_one {
            break x;
        }
        c += 1u32;
    };
    let g = GInt::new(pi, BigInt::zero()).gcd(&GInt::new(BigInt::from(x), BigInt::one()));
    vec![g.clone(), g.conj()]
}

/// Prime factors of `n` with multiplicity.
pub(crate) fn factor_integer(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    for p in 2u32..1000 {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            out.push(bp.clone());
            n /= &bp;
        }
    }
    factor_large(&n, &mut out);
    out
}

fn factor_large(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return;
    }
    let d = pollard_rho(n);
    factor_large(&d, out);
    factor_large(&(n / &d), out);
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let small = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &small {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    if (n % 2u32).is_zero() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn from_roots(roots: &[&str]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear(GaussianRational::one(), -g(r)))
    }

    #[test]
    fn closed_form_degrees() {
        assert_eq!(gaussian_roots(&from_roots(&["3/2"])), vec![g("3/2")]);
        let mut r = gaussian_roots(&from_roots(&["1+i", "-2/3"]));
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r.len(), 2);
        assert!(r.contains(&g("1+i")) && r.contains(&g("-2/3")));
        // z^2 + 1 has roots ±i; z^2 - 2 has none in Q(i)
        assert_eq!(gaussian_roots(&Poly::from_ints(&[1, 0, 1])).len(), 2);
        assert!(gaussian_roots(&Poly::from_ints(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn rational_root_test_finds_all_gaussian_roots() {
        let p = &from_roots(&["1/2+3/5 i", "-7", "2/3 i"]) * &Poly::from_ints(&[3, 0, 0, 1]);
        let roots = gaussian_roots(&p);
        for r in ["1/2+3/5 i", "-7", "2/3 i"] {
            assert!(roots.contains(&g(r)), "missing {r}: {roots:?}");
        }
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn quartic_binomial() {
        // α^4 = 16/81 has the four roots ±2/3, ±2i/3
        let p = Poly::new(vec![g("-16/81"), g("0"), g("0"), g("0"), g("1")]);
        assert_eq!(gaussian_roots(&p).len(), 4);
    }

    #[test]
    fn factors_composites() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let mut f = factor_integer(&n);
        f.sort();
        assert_eq!(f, vec![BigUint::from(1_000_003u64), BigUint::from(998_244_353u64)]);
    }

    #[test]
    fn zero_root_is_reported_once() {
        // z^3 - z^2 = z^2 (z - 1)
        let p = Poly::from_ints(&[0, 0, -1, 1]);
        let mut roots = gaussian_roots(&p);
        roots.sort_by_key(|r| r.to_string());
        assert_eq!(roots, vec![g("0"), g("1")]);
    }
}
