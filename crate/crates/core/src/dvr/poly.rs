//! Dense univariate polynomials in `t` with arbitrary-precision rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Coefficients are stored in ascending degree order with no trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exponent of the lowest-degree nonzero term; `None` for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lowest_coeff(&self) -> Option<&Rational> {
        self.low_degree().map(|d| &self.coeffs[d])
    }

    /// True when exactly one coefficient is nonzero.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Iterator over `(degree, coefficient)` for the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn eval_zero(&self) -> Rational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `t^k`; the caller guarantees `t^k` divides `self`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.low_degree().is_none_or(|d| d >= k));
        if k == 0 {
            return self.clone();
        }
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division `self = q * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; panics in debug builds when a remainder is left.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        if divisor.is_monomial() {
            let d = divisor.low_degree().unwrap();
            let c = divisor.coeffs[d].recip();
            return self.shift_down(d).scale(&c);
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        (self * other).div_exact(&self.gcd(other)).make_monic()
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    ///
    /// The power of `t` is split off first. A gcd computed modulo a large
    /// prime certifies coprimality cheaply; otherwise a primitive remainder
    /// sequence over the integers is used.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.make_monic();
        }
        if other.is_zero() {
            return self.make_monic();
        }
        let k = self.low_degree().unwrap().min(other.low_degree().unwrap());
        let a = self.shift_down(self.low_degree().unwrap());
        let b = other.shift_down(other.low_degree().unwrap());
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::monomial(Rational::one(), k);
        }
        let (a, b) = (a.primitive_int(), b.primitive_int());
        if modular_gcd_degree(&a, &b) == Some(0) {
            return Poly::monomial(Rational::one(), k);
        }
        let g = primitive_prs_gcd(a, b);
        let g = Poly::from_coeffs(g.into_iter().map(Rational::from_integer).collect());
        g.make_monic().shift_up(k)
    }

    /// Integer coefficients of a nonzero constant multiple with content 1.
    fn primitive_int(&self) -> Vec<BigInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        primitive_part(ints)
    }

    fn add_ref(&self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            if c.is_integer() && s.is_integer() {
                *c = Rational::from_integer(c.numer() + s.numer());
            } else {
                *c += s;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// `(c, d)` with `self = c / d` and `c` integral.
    fn over_common_denominator(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let c = self.coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
        (c, d)
    }

    fn mul_ref(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let (a, da) = self.over_common_denominator();
        let (b, db) = rhs.over_common_denominator();
        let mut coeffs = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        let coeffs = if d.is_one() {
            coeffs.into_iter().map(Rational::from_integer).collect()
        } else {
            coeffs.into_iter().map(|c| Rational::new(c, d.clone())).collect()
        };
        Poly::from_coeffs(coeffs)
    }
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return v;
    }
    let neg = v.last().is_some_and(Signed::is_negative);
    for c in v.iter_mut() {
        *c = &*c / &content;
        if neg {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b`, reduced to its primitive part.
fn primitive_prem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        for c in a.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            a[da - db + i] -= &la * c;
        }
        a = primitive_part(a);
    }
    a
}

fn primitive_prs_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let r = primitive_prem(a, &b);
        a = b;
        b = r;
    }
    a
}

const MOD_P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MOD_P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce_mod(v: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(MOD_P);
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| c.mod_floor(&p).to_u64().expect("residue fits in u64"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Degree of `gcd(a, b)` modulo a prime, or `None` when a leading
/// coefficient vanishes there. When defined it bounds the true degree from above.
fn modular_gcd_degree(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.len() != a.len() || y.len() != b.len() {
        return None;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let dy = y.len() - 1;
        let inv = inv_mod(y[dy]);
        while x.len() > dy {
            let dx = x.len() - 1;
            let f = mul_mod(x[dx], inv);
            for (i, c) in y.iter().enumerate() {
                let sub = mul_mod(f, *c);
                let slot = &mut x[dx - dy + i];
                *slot = (*slot + MOD_P - sub) % MOD_P;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    Some(x.len() - 1)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_ref(rhs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_ref(&-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = deg == 0 || !abs.is_one();
            let coeff = if abs.is_integer() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match (deg, show_coeff) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "{coeff}t")?,
                (1, false) => write!(f, "t")?,
                (d, true) => write!(f, "{coeff}t^{d}")?,
                (d, false) => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, 2, 5, 1]);
        let b = p(&[1, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_products() {
        let common = p(&[1, 1]);
        let a = &common * &p(&[2, 0, 1]);
        let b = &common * &p(&[0, 3]);
        assert_eq!(a.gcd(&b), common);
        assert_eq!(p(&[0, 0, 4]).gcd(&p(&[0, 2, 3])), p(&[0, 1]));
        assert!(p(&[1, 1]).gcd(&p(&[2])).is_one());
    }

    #[test]
    fn display_renders_terms_ascending() {
        assert_eq!(p(&[0, 0, 0, 1, 2]).to_string(), "t^3 + 2t^4");
        assert_eq!(p(&[-1, 0, -3]).to_string(), "-1 - 3t^2");
    }
}
