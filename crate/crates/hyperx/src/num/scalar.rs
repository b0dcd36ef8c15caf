use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An exact number of the form `a + b*sqrt(d)` with `a`, `b` rational and `d`
/// a fixed nonnegative integer radicand. Pure rationals carry `b = 0, d = 0`.
///
/// The radicand is fixed per matrix context; combining two scalars with
/// distinct nonzero radicands is a programming error and panics. Boundary
/// layers (JSON, constructors) are expected to enforce a uniform radicand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        let mut s = ExactScalar { a, b, d };
        s.normalize();
        s
    }

    pub fn rational(a: BigRational) -> Self {
        ExactScalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `b * sqrt(d)` with no rational part.
    pub fn sqrt_term(b: BigRational, d: u64) -> Self {
        Self::new(BigRational::zero(), b, d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Canonical form: fold perfect-square radicands into the rational part
    /// and drop the radicand when the irrational part vanishes.
    fn normalize(&mut self) {
        if self.d > 0 {
            let r = isqrt(self.d);
            if r * r == self.d {
                let root = BigRational::from_integer(BigInt::from(r));
                self.a += &self.b * root;
                self.b = BigRational::zero();
            }
        }
        if self.b.is_zero() {
            self.b = BigRational::zero();
            self.d = 0;
        }
    }

    fn join_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) if d1 == d2 => d1,
            (d1, d2) => panic!("mixed radicands {d1} and {d2} in one scalar operation"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0 or 1. For `a + b*sqrt(d)` with mixed signs the sign
    /// is decided by comparing `a^2` against `b^2 * d` over the rationals.
    pub fn sign(&self) -> i32 {
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        if self.a.is_zero() {
            return sign_of(&self.b);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb {
            return sa;
        }
        // a and b have opposite signs; |a| vs |b|*sqrt(d) decides.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Self::rational(self.a.recip());
        }
        // 1/(a + b sqrt(d)) = (a - b sqrt(d)) / (a^2 - b^2 d)
        let denom = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        assert!(!denom.is_zero(), "conjugate norm vanished for nonzero scalar");
        Self::new(&self.a / &denom, -(&self.b) / &denom, self.d)
    }

    /// Floating approximation; diagnostics and sanity cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.clone() - other.clone();
        match diff.sign() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: Self) -> Self {
        let d = self.join_radicand(&rhs);
        ExactScalar::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> Self {
        let d = self.join_radicand(&rhs);
        ExactScalar::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> Self {
        let d = self.join_radicand(&rhs);
        let rad = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * rad;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        ExactScalar::new(a, b, d)
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}


macro_rules! forward_ref_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.clone().$method(rhs.clone())
            }
        }
        impl $imp<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$method(rhs.clone())
            }
        }
        impl $imp<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.clone().$method(rhs)
            }
        }
    };
}

forward_ref_binop!(Add, add);
forward_ref_binop!(Sub, sub);
forward_ref_binop!(Mul, mul);
forward_ref_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> Self {
        ExactScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -self.clone()
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: Self) {
        *self = self.clone() + rhs;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: Self) {
        *self = self.clone() - rhs;
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.clone() * rhs;
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}
