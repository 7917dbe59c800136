//! Elements `a + b·√d` of the quadratic field Q(√d).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// An element `a + b·√d` of Q(√d).
///
/// The discriminant travels with the value. Values whose irrational part is
/// zero are context free: they combine with numbers over any discriminant.
/// When `d` is a perfect square the radical is folded into `a` at
/// construction, so `b` is always zero in that case.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Integer square root of `d` when `d` is a perfect square.
pub fn exact_sqrt(d: u64) -> Option<u64> {
    let r = d.sqrt();
    (r * r == d).then_some(r)
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        match exact_sqrt(d) {
            Some(r) if !b.is_zero() => {
                QuadraticNumber { a: a + b * Rational::from_integer(BigInt::from(r)), b: Rational::zero(), d }
            }
            _ => QuadraticNumber { a, b, d },
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticNumber { a, b: Rational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadraticNumber { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(QuadraticNumber { a: self.a.recip(), b: Rational::zero(), d: self.d });
        }
        let n = self.norm();
        Some(QuadraticNumber { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Number of bits in the integer data; used to rank pivot candidates.
    pub fn bit_size(&self) -> u64 {
        let r = |q: &Rational| q.numer().bits() + q.denom().bits();
        r(&self.a) + r(&self.b)
    }

    fn context(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => self.d.max(other.d),
            (true, false) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing Q(√{}) and Q(√{})", self.d, other.d);
                self.d
            }
        }
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticNumber {}

impl From<Rational> for QuadraticNumber {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let rad = if self.b.is_one() {
            format!("√{}", self.d)
        } else if (-&self.b).is_one() {
            format!("-√{}", self.d)
        } else {
            format!("{}√{}", self.b, self.d)
        };
        if self.a.is_zero() {
            write!(f, "{rad}")
        } else if self.b.is_negative() {
            write!(f, "({} - {})", self.a, rad.trim_start_matches('-'))
        } else {
            write!(f, "({} + {})", self.a, rad)
        }
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.context(rhs);
        let b = if rhs.b.is_zero() {
            self.b.clone()
        } else if self.b.is_zero() {
            rhs.b.clone()
        } else {
            &self.b + &rhs.b
        };
        QuadraticNumber { a: &self.a + &rhs.a, b, d }
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.context(rhs);
        let b = if rhs.b.is_zero() { self.b.clone() } else { &self.b - &rhs.b };
        QuadraticNumber { a: &self.a - &rhs.a, b, d }
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.context(rhs);
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => QuadraticNumber { a: &self.a * &rhs.a, b: Rational::zero(), d },
            (true, false) => QuadraticNumber { a: &self.a * &rhs.a, b: &self.a * &rhs.b, d },
            (false, true) => QuadraticNumber { a: &self.a * &rhs.a, b: &self.b * &rhs.a, d },
            (false, false) => {
                let dd = Rational::from_integer(BigInt::from(d));
                QuadraticNumber {
                    a: &self.a * &rhs.a + &self.b * &rhs.b * dd,
                    b: &self.a * &rhs.b + &self.b * &rhs.a,
                    d,
                }
            }
        }
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let inv = rhs.inv().expect("division by zero in Q(√d)");
        self * &inv
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -self.a, b: -self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QuadraticNumber> for QuadraticNumber {
    fn add_assign(&mut self, rhs: &QuadraticNumber) {
        let d = self.context(rhs);
        self.a += &rhs.a;
        if !rhs.b.is_zero() {
            self.b += &rhs.b;
        }
        self.d = d;
    }
}

impl SubAssign<&QuadraticNumber> for QuadraticNumber {
    fn sub_assign(&mut self, rhs: &QuadraticNumber) {
        let d = self.context(rhs);
        self.a -= &rhs.a;
        if !rhs.b.is_zero() {
            self.b -= &rhs.b;
        }
        self.d = d;
    }
}

impl MulAssign<&QuadraticNumber> for QuadraticNumber {
    fn mul_assign(&mut self, rhs: &QuadraticNumber) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadraticNumber {
        QuadraticNumber::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()), d)
    }

    #[test]
    fn perfect_square_folds_radical() {
        assert_eq!(q(0, 1, 9), QuadraticNumber::from_int(3));
        assert!(q(2, 5, 4).is_rational());
        assert_eq!(q(2, 5, 4), QuadraticNumber::from_int(12));
    }

    #[test]
    fn sqrt_squared_is_d() {
        let s = QuadraticNumber::sqrt(5);
        assert_eq!(&s * &s, QuadraticNumber::from_int(5));
    }

    #[test]
    fn inverse_uses_conjugate() {
        let x = q(1, 2, 5);
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, QuadraticNumber::one());
        assert_eq!(x.norm(), Rational::from_integer((-19).into()));
        assert!(QuadraticNumber::zero().inv().is_none());
    }

    #[test]
    fn rationals_are_context_free() {
        let r = QuadraticNumber::from_int(3);
        let s = QuadraticNumber::sqrt(7);
        let sum = &r + &s;
        assert_eq!(sum.discriminant(), 7);
        assert_eq!(&sum - &s, r);
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = QuadraticNumber::sqrt(5) + QuadraticNumber::sqrt(7);
    }

    #[test]
    fn display() {
        assert_eq!(q(0, 1, 5).to_string(), "√5");
        assert_eq!(q(1, -2, 5).to_string(), "(1 - 2√5)");
        assert_eq!(QuadraticNumber::from_frac(-3, 6).to_string(), "-1/2");
    }
}
