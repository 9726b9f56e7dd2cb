//! Exact arithmetic in the discrete valuation ring `R = Q[t]_(t)` and its
//! fraction field `Q(t)`.
//!
//! Every nonzero element factors as `u * t^k` with `u` a unit; `k` is the
//! [`Valuation`] and the residue map sends an element of `R` to `u(0)` when
//! `k = 0` and to `0` otherwise. Elements are reduced rational functions with
//! a monic denominator, so structural equality is mathematical equality.

mod poly;
mod valuation;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use poly::{Poly, Rational};
pub use valuation::Valuation;

/// Half-width of the integer range that random units are drawn from.
pub const UNIT_SAMPLE_BOUND: i64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero in the fraction field")]
    DivisionByZero,
    #[error("element of valuation {0} is not in the valuation ring")]
    NotInRing(i64),
    #[error("malformed ring element: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    num: Poly,
    den: Poly,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RingElem::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        RingElem::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: Rational) -> Self {
        RingElem::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        RingElem { num, den: Poly::one() }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        RingElem::monomial(Rational::one(), k)
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        if c.is_zero() {
            return RingElem::zero();
        }
        if k >= 0 {
            RingElem::from_poly(Poly::monomial(c, k as usize))
        } else {
            RingElem {
                num: Poly::constant(c),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    /// Polynomial with integer coefficients in ascending degree order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RingElem::from_poly(Poly::from_i64s(coeffs))
    }

    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(RingElem::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RingElem::zero();
        }
        if den.is_one() {
            return RingElem { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RingElem { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `ord_t(numerator) - ord_t(denominator)`, or infinity for zero.
    pub fn valuation(&self) -> Valuation {
        match self.num.low_degree() {
            None => Valuation::Infinite,
            Some(n) => Valuation::Finite(n as i64 - self.den.low_degree().unwrap() as i64),
        }
    }

    /// Membership in the valuation ring `R` (valuation `>= 0`).
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::ZERO
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::ZERO
    }

    /// Residue-field image, defined on `R`.
    pub fn residue(&self) -> Result<Rational, RingError> {
        match self.valuation() {
            Valuation::Infinite => Ok(Rational::zero()),
            Valuation::Finite(v) if v < 0 => Err(RingError::NotInRing(v)),
            Valuation::Finite(0) => Ok(self.num.eval_zero() / self.den.eval_zero()),
            Valuation::Finite(_) => Ok(Rational::zero()),
        }
    }

    /// Residue of `self / t^m0` when `self` has valuation exactly `m0`, else zero.
    pub fn residue_shift(&self, m0: i64) -> Rational {
        if self.valuation() == Valuation::Finite(m0) {
            self.leading_unit_residue()
        } else {
            Rational::zero()
        }
    }

    /// Residue of the unit part `u` in `self = u * t^k`; zero for zero.
    pub fn leading_unit_residue(&self) -> Rational {
        match (self.num.lowest_coeff(), self.den.lowest_coeff()) {
            (Some(n), Some(d)) => n / d,
            _ => Rational::zero(),
        }
    }

    /// Multiply by `t^k` without a gcd computation.
    pub fn mul_t_pow(&self, k: i64) -> RingElem {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            let k = k as usize;
            let d = self.den.low_degree().unwrap().min(k);
            RingElem {
                num: self.num.shift_up(k - d),
                den: self.den.shift_down(d),
            }
        } else {
            let k = (-k) as usize;
            let n = self.num.low_degree().unwrap().min(k);
            RingElem {
                num: self.num.shift_down(n),
                den: self.den.shift_up(k - n),
            }
        }
    }

    pub fn inv(&self) -> Result<RingElem, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let lc = self.num.leading().unwrap().recip();
        Ok(RingElem {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }

    pub fn checked_div(&self, rhs: &RingElem) -> Result<RingElem, RingError> {
        Ok(self * &rhs.inv()?)
    }

    fn add_ref(&self, rhs: &RingElem) -> RingElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RingElem::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_exact(&g);
        let b = self.den.div_exact(&g);
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RingElem::reduced(num, &self.den * &a)
    }

    fn mul_ref(&self, rhs: &RingElem) -> RingElem {
        if self.is_zero() || rhs.is_zero() {
            return RingElem::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RingElem::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        RingElem::reduced(num, den)
    }
}

/// True when the exact sum has strictly larger valuation than the smallest
/// valuation among the terms. An empty list never cancels.
pub fn detect_cancellation(terms: &[RingElem]) -> bool {
    let Some(min) = terms.iter().map(RingElem::valuation).min() else {
        return false;
    };
    let sum = terms.iter().fold(RingElem::zero(), |acc, x| &acc + x);
    min < sum.valuation()
}

/// A degree-0 unit: a nonzero integer drawn uniformly from
/// `[-UNIT_SAMPLE_BOUND, UNIT_SAMPLE_BOUND]`.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> RingElem {
    let k = rng.gen_range(1..=2 * UNIT_SAMPLE_BOUND);
    let c = if k <= UNIT_SAMPLE_BOUND {
        k - UNIT_SAMPLE_BOUND - 1
    } else {
        k - UNIT_SAMPLE_BOUND
    };
    RingElem::from_int(c)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$inner(rhs)
            }
        }
        impl $trait<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$inner(&rhs)
            }
        }
        impl $trait<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$inner(rhs)
            }
        }
        impl $trait<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$inner(&rhs)
            }
        }
    };
}

impl RingElem {
    fn sub_ref(&self, rhs: &RingElem) -> RingElem {
        self.add_ref(&-rhs)
    }

    fn div_ref(&self, rhs: &RingElem) -> RingElem {
        self.checked_div(rhs).expect("division by zero in the fraction field")
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
// Panics on a zero divisor; use `checked_div` for a recoverable error.
forward_binop!(Div, div, div_ref);

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&RingElem> for RingElem {
    fn mul_assign(&mut self, rhs: &RingElem) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Zero for RingElem {
    fn zero() -> Self {
        RingElem::zero()
    }
    fn is_zero(&self) -> bool {
        RingElem::is_zero(self)
    }
}

impl One for RingElem {
    fn one() -> Self {
        RingElem::one()
    }
}

impl Default for RingElem {
    fn default() -> Self {
        RingElem::zero()
    }
}

impl From<i64> for RingElem {
    fn from(c: i64) -> Self {
        RingElem::from_int(c)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// JSON: {"num": [["p/q", deg], ...], "den": [...]}, ascending degree, no zero
// coefficients, "den" omitted when it is 1.

type Monomials = Vec<(String, usize)>;

fn poly_to_monomials(p: &Poly) -> Monomials {
    p.terms().map(|(d, c)| (c.to_string(), d)).collect()
}

fn monomials_to_poly(terms: &[(String, usize)]) -> Result<Poly, RingError> {
    let len = terms.iter().map(|(_, d)| d + 1).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); len];
    for (c, d) in terms {
        let c = Rational::from_str(c.trim()).map_err(|e| RingError::Parse(format!("coefficient {c:?}: {e}")))?;
        coeffs[*d] += c;
    }
    Ok(Poly::from_coeffs(coeffs))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingElemRepr {
    num: Monomials,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<Monomials>,
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RingElemRepr {
            num: poly_to_monomials(&self.num),
            den: (!self.den.is_one()).then(|| poly_to_monomials(&self.den)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RingElemRepr::deserialize(d)?;
        let num = monomials_to_poly(&repr.num).map_err(D::Error::custom)?;
        let den = match repr.den {
            None => Poly::one(),
            Some(den) => monomials_to_poly(&den).map_err(D::Error::custom)?,
        };
        RingElem::from_fraction(num, den).map_err(D::Error::custom)
    }
}
