//! Exact scalar fields: rationals, a single quadratic extension `Q(sqrt(D))`
//! with its real embedding, and a float64 backend used only for cross-checks.
//!
//! Complex coefficients are pairs of scalars (`re + i*im`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::HhaError;

/// Default absolute tolerance of the float backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Sign of a real scalar under the real embedding `sqrt(D) > 0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Which backend a scalar value lives in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// Rationals, or `Q(sqrt(D))` for a square-free `D > 1`.
    Exact,
    /// float64 with absolute tolerance [`FLOAT_TOLERANCE`].
    Float,
}

/// An element of `Q(sqrt(d))` stored as `a + b*sqrt(d)`.
///
/// Canonical form: `d == 1` exactly when `b == 0`; otherwise `d` is square-free and `> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// A real scalar: exact quadratic-field element or a float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Quad),
    Float(f64),
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sign_of_rational(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Splits `n` as `s^2 * f` with `f` square-free; returns `(s, f)`.
fn square_free_part(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    f *= n;
    (s, f)
}

impl Quad {
    fn new(a: BigRational, b: BigRational, d: u64) -> Quad {
        if b.is_zero() || d == 1 {
            let a = if d == 1 { a + b } else { a };
            Quad { a, b: BigRational::zero(), d: 1 }
        } else {
            Quad { a, b, d }
        }
    }

    fn rational(a: BigRational) -> Quad {
        Quad { a, b: BigRational::zero(), d: 1 }
    }

    /// Field generator shared by two operands; panics on incompatible extensions.
    fn common_d(&self, other: &Quad) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (d1, d2) if d1 == d2 => d1,
            (d1, d2) => panic!("incompatible quadratic fields Q(sqrt({d1})) and Q(sqrt({d2})): towers are not supported"),
        }
    }

    fn sign(&self) -> Sign {
        let sa = sign_of_rational(&self.a);
        let sb = sign_of_rational(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) => s,
            (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            _ => {
                // Opposite signs: compare a^2 with b^2 d using exact integer arithmetic.
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Sign::Zero,
                }
            }
        }
    }

    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
        }
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Exact(Quad::rational(BigRational::zero()))
    }

    pub fn one() -> Scalar {
        Scalar::Exact(Quad::rational(BigRational::one()))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Exact(Quad::rational(BigRational::from_integer(BigInt::from(n))))
    }

    /// The rational `n/d`; panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Exact(Quad::rational(ratio(n, d)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Exact(Quad::rational(r))
    }

    /// `a + b*sqrt(d)` with rational parts; `d` is reduced to its square-free part.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Scalar {
        assert!(d > 0, "sqrt of zero is not a field generator");
        let (s, f) = square_free_part(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        Scalar::Exact(Quad::new(a, b, f))
    }

    /// `sqrt(n)` for a positive integer `n`.
    pub fn sqrt_int(n: u64) -> Scalar {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), n)
    }

    pub fn float(x: f64) -> Scalar {
        Scalar::Float(x)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Exact(_) => FieldKind::Exact,
            Scalar::Float(_) => FieldKind::Float,
        }
    }

    /// The radicand `D` of the extension this value needs (1 for rationals and floats).
    pub fn radicand(&self) -> u64 {
        match self {
            Scalar::Exact(q) => q.d,
            Scalar::Float(_) => 1,
        }
    }

    /// Rational and irrational parts `(a, b)` of an exact value.
    pub fn parts(&self) -> Option<(&BigRational, &BigRational)> {
        match self {
            Scalar::Exact(q) => Some((&q.a, &q.b)),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Exact(q) if q.b.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.a.is_zero() && q.b.is_zero(),
            Scalar::Float(x) => x.abs() <= FLOAT_TOLERANCE,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.a.is_one() && q.b.is_zero(),
            Scalar::Float(x) => (x - 1.0).abs() <= FLOAT_TOLERANCE,
        }
    }

    /// Exact sign under `sqrt(D) > 0`; floats use the tolerance band.
    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Exact(q) => q.sign(),
            Scalar::Float(x) => {
                if x.abs() <= FLOAT_TOLERANCE {
                    Sign::Zero
                } else if *x > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    /// Converts to the float backend.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Galois conjugate `a - b*sqrt(D)`; identity on rationals and floats.
    pub fn galois_conjugate(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(Quad { a: q.a.clone(), b: -q.b.clone(), d: q.d }),
            Scalar::Float(x) => Scalar::Float(*x),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Exact(q) => {
                if q.b.is_zero() {
                    return Some(Scalar::Exact(Quad::rational(q.a.recip())));
                }
                let d = BigRational::from_integer(BigInt::from(q.d));
                let norm = &q.a * &q.a - &q.b * &q.b * d;
                Some(Scalar::Exact(Quad::new(&q.a / &norm, -(&q.b / &norm), q.d)))
            }
            Scalar::Float(x) => Some(Scalar::Float(1.0 / x)),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact `sqrt(r)` for a rational `r >= 0`, if it lies in a quadratic field.
    pub fn sqrt_rational(r: &BigRational) -> Option<Scalar> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Scalar::zero());
        }
        // sqrt(p/q) = sqrt(p q) / q
        let p = r.numer() * r.denom();
        let p = p.to_u64()?;
        let (s, f) = square_free_part(p);
        let q = r.denom().clone();
        let coeff = BigRational::new(BigInt::from(s), q);
        Some(if f == 1 { Scalar::from_rational(coeff) } else { Scalar::Exact(Quad::new(BigRational::zero(), coeff, f)) })
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
            _ => (self - other).is_zero(),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

fn quad_add(x: &Quad, y: &Quad) -> Quad {
    let d = x.common_d(y);
    Quad::new(&x.a + &y.a, &x.b + &y.b, d)
}

fn quad_mul(x: &Quad, y: &Quad) -> Quad {
    let d = x.common_d(y);
    if x.b.is_zero() {
        return Quad::new(&x.a * &y.a, &x.a * &y.b, d);
    }
    if y.b.is_zero() {
        return Quad::new(&x.a * &y.a, &x.b * &y.a, d);
    }
    let dd = BigRational::from_integer(BigInt::from(d));
    Quad::new(&x.a * &y.a + &x.b * &y.b * dd, &x.a * &y.b + &x.b * &y.a, d)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(quad_add(x, y)),
            _ => Scalar::Float(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(quad_mul(x, y)),
            _ => Scalar::Float(self.to_f64() * rhs.to_f64()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(Quad { a: -q.a.clone(), b: -q.b.clone(), d: q.d }),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, Scalar);
forward_owned!(Sub, sub, Scalar);
forward_owned!(Mul, mul, Scalar);
forward_owned!(Div, div, Scalar);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Float(x) => write!(f, "{x}"),
            Scalar::Exact(q) => {
                if q.b.is_zero() {
                    return write!(f, "{}", fmt_rational(&q.a));
                }
                let mut s = String::new();
                if !q.a.is_zero() {
                    s.push_str(&fmt_rational(&q.a));
                }
                let babs = q.b.abs();
                if q.b.is_negative() {
                    s.push('-');
                } else if !q.a.is_zero() {
                    s.push('+');
                }
                if !babs.is_one() {
                    s.push_str(&fmt_rational(&babs));
                    s.push('*');
                }
                s.push_str(&format!("sqrt({})", q.d));
                write!(f, "{s}")
            }
        }
    }
}

fn parse_rational(t: &str) -> Result<BigRational, HhaError> {
    let bad = || HhaError::Parse(format!("invalid rational literal '{t}'"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(HhaError::Parse(format!("zero denominator in '{t}'")));
        }
        Ok(BigRational::new(n, d))
    } else if let Some((ip, fp)) = t.split_once('.') {
        // Finite decimals are exact rationals.
        let digits = format!("{ip}{fp}");
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = BigInt::from(10u32).pow(fp.len() as u32);
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Parses a single unsigned term: `r`, `r*sqrt(D)`, `sqrt(D)` or `sqrt(D)/q`.
fn parse_term(t: &str) -> Result<Scalar, HhaError> {
    let bad = || HhaError::Parse(format!("invalid scalar term '{t}'"));
    if let Some(pos) = t.find("sqrt(") {
        let close = t[pos..].find(')').ok_or_else(bad)? + pos;
        let radicand: u64 = t[pos + 5..close].trim().parse().map_err(|_| bad())?;
        if radicand == 0 {
            return Ok(Scalar::zero());
        }
        let prefix = &t[..pos];
        let suffix = &t[close + 1..];
        let mut coeff = BigRational::one();
        if !prefix.is_empty() {
            let p = prefix.strip_suffix('*').ok_or_else(bad)?;
            coeff = parse_rational(p)?;
        }
        if !suffix.is_empty() {
            let q = suffix.strip_prefix('/').ok_or_else(bad)?;
            let q = parse_rational(q)?;
            if q.is_zero() {
                return Err(HhaError::Parse(format!("zero denominator in '{t}'")));
            }
            coeff /= q;
        }
        Ok(Scalar::quadratic(BigRational::zero(), coeff, radicand))
    } else {
        Ok(Scalar::from_rational(parse_rational(t)?))
    }
}

impl FromStr for Scalar {
    type Err = HhaError;

    /// Accepts sums of terms such as `3/4`, `-1/2*sqrt(2)`, `1+sqrt(2)/2`, `0.25`.
    fn from_str(s: &str) -> Result<Scalar, HhaError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(HhaError::Parse("empty scalar literal".into()));
        }
        let mut total = Scalar::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut depth = 0i32;
        let mut terms = Vec::new();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start => {
                    // Exponent markers are not supported, so every top-level sign splits terms.
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, &t[1..]),
                b'+' => (false, &t[1..]),
                _ => (false, t),
            };
            let v = parse_term(body)?;
            total = if neg { &total - &v } else { &total + &v };
        }
        Ok(total)
    }
}

/// A complex number `re + i*im` over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> ComplexScalar {
        ComplexScalar { re, im }
    }

    pub fn zero() -> ComplexScalar {
        ComplexScalar { re: Scalar::zero(), im: Scalar::zero() }
    }

    pub fn one() -> ComplexScalar {
        ComplexScalar { re: Scalar::one(), im: Scalar::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> ComplexScalar {
        ComplexScalar { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn real(re: Scalar) -> ComplexScalar {
        ComplexScalar { re, im: Scalar::zero() }
    }

    pub fn from_int(n: i64) -> ComplexScalar {
        ComplexScalar::real(Scalar::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> ComplexScalar {
        ComplexScalar::real(Scalar::frac(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> ComplexScalar {
        ComplexScalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<ComplexScalar> {
        let n = self.norm_sqr();
        let ninv = n.inv()?;
        Some(ComplexScalar { re: &self.re * &ninv, im: -(&self.im * &ninv) })
    }

    pub fn scale(&self, s: &Scalar) -> ComplexScalar {
        ComplexScalar { re: &self.re * s, im: &self.im * s }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> ComplexScalar {
        ComplexScalar { re: -&self.im, im: self.re.clone() }
    }

    pub fn kind(&self) -> FieldKind {
        if self.re.kind() == FieldKind::Float || self.im.kind() == FieldKind::Float {
            FieldKind::Float
        } else {
            FieldKind::Exact
        }
    }

    pub fn to_float(&self) -> ComplexScalar {
        ComplexScalar { re: self.re.to_float(), im: self.im.to_float() }
    }

    pub fn radicand(&self) -> u64 {
        self.re.radicand().max(self.im.radicand())
    }

    pub fn pow(&self, e: u32) -> ComplexScalar {
        let mut acc = ComplexScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Scalar> for ComplexScalar {
    fn from(s: Scalar) -> ComplexScalar {
        ComplexScalar::real(s)
    }
}

impl<'a> Add<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ComplexScalar::real(&self.re * &rhs.re);
        }
        ComplexScalar { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl<'a> Div<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ComplexScalar) -> ComplexScalar {
        self * &rhs.inv().expect("division by zero complex scalar")
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

forward_owned!(Add, add, ComplexScalar);
forward_owned!(Sub, sub, ComplexScalar);
forward_owned!(Mul, mul, ComplexScalar);
forward_owned!(Div, div, ComplexScalar);

fn wrap(s: &Scalar) -> String {
    let t = s.to_string();
    let inner = t.strip_prefix('-').unwrap_or(&t);
    if inner.contains('+') || inner.contains('-') || inner.contains('*') {
        format!("({t})")
    } else {
        t
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", wrap(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if let Some(rest) = im.strip_prefix('-') {
            write!(f, "{}-{}", self.re, rest)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

impl FromStr for ComplexScalar {
    type Err = HhaError;

    /// Parses `re` alone; complex values are given as separate real/imaginary parts elsewhere.
    fn from_str(s: &str) -> Result<ComplexScalar, HhaError> {
        Ok(ComplexScalar::real(s.parse()?))
    }
}
