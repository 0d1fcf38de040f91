//! Scalar arithmetic for the three supported modes: exact rationals,
//! exact Gaussian rationals, and complex floats with a tolerance policy.
//!
//! The exact types keep a machine-word fast path and fall back to
//! arbitrary precision transparently, so closure computations stay exact
//! without paying bignum costs on the (overwhelmingly common) small values.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero as NumZero};
use serde::{Deserialize, Serialize};

pub type C64 = num_complex::Complex<f64>;

macro_rules! fmt_debug_as_display {
    ($ty:ty) => {
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

/// Arithmetic mode for a computation. Exact modes carry no tolerance;
/// float mode requires a strictly positive one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScalarMode {
    ExactRational,
    ExactGaussianRational,
    FloatComplex { tolerance: f64 },
}

impl ScalarMode {
    pub fn is_exact(&self) -> bool {
        !matches!(self, ScalarMode::FloatComplex { .. })
    }

    pub fn validate(&self) -> Result<(), crate::Error> {
        match self {
            ScalarMode::FloatComplex { tolerance } if *tolerance <= 0.0 => Err(
                crate::Error::Validation(format!("float mode needs tolerance > 0, got {tolerance}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn tolerance(&self) -> Option<f64> {
        match self {
            ScalarMode::FloatComplex { tolerance } => Some(*tolerance),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::ExactRational => write!(f, "exact-rational"),
            ScalarMode::ExactGaussianRational => write!(f, "exact-gaussian-rational"),
            ScalarMode::FloatComplex { tolerance } => write!(f, "float-complex(tol={tolerance:e})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Rat: exact rational with an i64 fast path
// ---------------------------------------------------------------------------

/// Exact rational number. Values that fit in `i64` numerator/denominator use
/// machine arithmetic; anything larger is promoted to `BigRational` and
/// demoted back when it shrinks.
#[derive(Clone)]
pub enum Rat {
    /// Reduced fraction, den > 0, gcd(|num|, den) = 1.
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[inline]
fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i64(num, den).max(1);
        Rat::Small(sign * (num / g), (den / g).abs())
    }

    fn from_big(b: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
            Rat::Small(n, d)
        } else {
            Rat::Big(Box::new(b))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Rat::Small(n, d) => {
                if *n < 0 {
                    Rat::Small(-d, -n)
                } else {
                    Rat::Small(*d, *n)
                }
            }
            Rat::Big(b) => Rat::from_big(b.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Rough size measure used for pivot selection (smaller is better).
    pub fn complexity(&self) -> u64 {
        match self {
            Rat::Small(n, d) => (64 - n.unsigned_abs().leading_zeros()) as u64
                + (64 - d.unsigned_abs().leading_zeros()) as u64,
            Rat::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    fn add_impl(&self, rhs: &Rat) -> Rat {
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, rhs) {
            // a/b + c/d = (a*(d/g) + c*(b/g)) / (b/g * d)
            let g = gcd_i64(*ad, *bd).max(1);
            let (adg, bdg) = (ad / g, bd / g);
            if let (Some(l), Some(r)) = (an.checked_mul(bdg), bn.checked_mul(adg)) {
                if let (Some(num), Some(den)) = (l.checked_add(r), adg.checked_mul(*bd)) {
                    return Rat::new(num, den);
                }
            }
        }
        Rat::from_big(self.to_big() + rhs.to_big())
    }

    fn mul_impl(&self, rhs: &Rat) -> Rat {
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, rhs) {
            if *an == 0 || *bn == 0 {
                return Rat::ZERO;
            }
            // Reduce across before multiplying to limit overflow.
            let g1 = gcd_i64(*an, *bd).max(1);
            let g2 = gcd_i64(*bn, *ad).max(1);
            if let (Some(num), Some(den)) =
                ((an / g1).checked_mul(bn / g2), (ad / g2).checked_mul(bd / g1))
            {
                return Rat::Small(num, den); // already reduced
            }
        }
        Rat::from_big(self.to_big() * rhs.to_big())
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => an == bn && ad == bd,
            _ => self.to_big() == other.to_big(),
        }
    }
}
impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical form: hash small representation when possible.
        match self {
            Rat::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
                    n.hash(state);
                    d.hash(state);
                } else {
                    b.numer().hash(state);
                    b.denom().hash(state);
                }
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::Small(v, 1)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                self.$impl(rhs)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$impl(&rhs)
            }
        }
    };
}

impl Rat {
    fn sub_impl(&self, rhs: &Rat) -> Rat {
        self.add_impl(&rhs.clone().neg())
    }
    fn div_impl(&self, rhs: &Rat) -> Rat {
        self.mul_impl(&rhs.recip())
    }
}

rat_binop!(Add, add, add_impl);
rat_binop!(Sub, sub, sub_impl);
rat_binop!(Mul, mul, mul_impl);
rat_binop!(Div, div, div_impl);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                if n == i64::MIN {
                    Rat::from_big(-self.to_big())
                } else {
                    Rat::Small(-n, d)
                }
            }
            Rat::Big(b) => Rat::from_big(-*b),
        }
    }
}
impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.clone().neg()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => {
                if b.denom() == &BigInt::from(1) {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

fmt_debug_as_display!(Rat);

impl FromStr for Rat {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| -> Result<BigInt, crate::Error> {
            t.parse::<BigInt>()
                .map_err(|_| crate::Error::Parse(format!("bad rational component {t:?}")))
        };
        let d = parse(den)?;
        if d.is_zero() {
            return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rat::from_big(BigRational::new(parse(num)?, d)))
    }
}

// ---------------------------------------------------------------------------
// GRat: Gaussian rationals
// ---------------------------------------------------------------------------

/// Element of the field of Gaussian rationals: `re + im*i` with exact
/// rational parts. Plain rationals embed with `im = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub const ZERO: GRat = GRat {
        re: Rat::ZERO,
        im: Rat::ZERO,
    };
    pub const ONE: GRat = GRat {
        re: Rat::ONE,
        im: Rat::ZERO,
    };

    pub fn new(re: Rat, im: Rat) -> GRat {
        GRat { re, im }
    }

    pub fn from_int(v: i64) -> GRat {
        GRat {
            re: Rat::from(v),
            im: Rat::ZERO,
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> GRat {
        GRat {
            re: Rat::new(num, den),
            im: Rat::ZERO,
        }
    }

    pub fn i() -> GRat {
        GRat {
            re: Rat::ZERO,
            im: Rat::ONE,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> GRat {
        GRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sq(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> GRat {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        let inv = n.recip();
        GRat {
            re: &self.re * &inv,
            im: &(-&self.im) * &inv,
        }
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn complexity(&self) -> u64 {
        self.re.complexity() + self.im.complexity()
    }
}

impl From<i64> for GRat {
    fn from(v: i64) -> Self {
        GRat::from_int(v)
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        // Real fast path dominates for the rational-entry providers.
        if self.im.is_zero() && rhs.im.is_zero() {
            return GRat {
                re: &self.re * &rhs.re,
                im: Rat::ZERO,
            };
        }
        GRat {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}
impl Div for &GRat {
    type Output = GRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GRat) -> GRat {
        self * &rhs.recip()
    }
}
impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! grat_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GRat {
            type Output = GRat;
            fn $method(self, rhs: GRat) -> GRat {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
grat_owned_binop!(Add, add);
grat_owned_binop!(Sub, sub);
grat_owned_binop!(Mul, mul);
grat_owned_binop!(Div, div);
impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -&self
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -&self.im)
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

fmt_debug_as_display!(GRat);

impl FromStr for GRat {
    type Err = crate::Error;

    /// Accepts "p/q", "p/q+r/s i", "p/q-r/s i" (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_suffix('i').map(str::trim_end).unwrap_or(t);
        let had_i = t.len() != s.trim().len();
        if !had_i {
            return Ok(GRat {
                re: t.parse()?,
                im: Rat::ZERO,
            });
        }
        // Split real and imaginary on the last +/- that is not a leading sign
        // and not part of a denominator.
        let bytes = t.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-')
                && bytes[idx - 1] != b'/'
                && bytes[idx - 1] != b'+'
                && bytes[idx - 1] != b'-'
            {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: Rat = t[..idx].parse()?;
                let sign = if bytes[idx] == b'-' { -1 } else { 1 };
                let im: Rat = t[idx + 1..].parse()?;
                let im = if sign < 0 { -im } else { im };
                Ok(GRat { re, im })
            }
            None => Ok(GRat {
                re: Rat::ZERO,
                im: t.parse()?,
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Scalar traits
// ---------------------------------------------------------------------------

/// Field operations shared by all scalar backends.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_int(v: i64) -> Self;
    fn to_c64(&self) -> C64;
    fn mode_name() -> &'static str;
}

/// Marker for scalars where equality (hence zero-testing, rank, etc.) is
/// decidable without a tolerance.
pub trait ExactScalar: Scalar + Eq + Hash {
    /// Pivot preference: smaller means cheaper to eliminate with.
    fn complexity(&self) -> u64;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_int(v: i64) -> Self {
        Rat::from(v)
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64(), 0.0)
    }
    fn mode_name() -> &'static str {
        "exact-rational"
    }
}

impl ExactScalar for Rat {
    fn complexity(&self) -> u64 {
        Rat::complexity(self)
    }
}

impl Scalar for GRat {
    fn zero() -> Self {
        GRat::ZERO
    }
    fn one() -> Self {
        GRat::ONE
    }
    fn is_zero(&self) -> bool {
        GRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GRat::conj(self)
    }
    fn from_int(v: i64) -> Self {
        GRat::from_int(v)
    }
    fn to_c64(&self) -> C64 {
        GRat::to_c64(self)
    }
    fn mode_name() -> &'static str {
        "exact-gaussian-rational"
    }
}

impl ExactScalar for GRat {
    fn complexity(&self) -> u64 {
        GRat::complexity(self)
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
    fn from_int(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn mode_name() -> &'static str {
        "float-complex"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_basic_arithmetic() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(Rat::new(-4, -8), Rat::new(1, 2));
        assert_eq!(Rat::new(4, -8), Rat::new(-1, 2));
    }

    #[test]
    fn rat_overflow_promotes_and_stays_exact() {
        let big = Rat::Small(i64::MAX, 1);
        let sq = &big * &big;
        let back = &sq / &big;
        assert_eq!(back, big);
        // (MAX)^2 doesn't fit, so it must be Big.
        assert!(matches!(sq, Rat::Big(_)));
        // And dividing back demotes.
        assert!(matches!(back, Rat::Small(_, _)));
    }

    #[test]
    fn rat_parse_display_roundtrip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn grat_field_axioms_spotcheck() {
        let z = GRat::new(Rat::new(1, 2), Rat::new(-3, 4));
        let w = GRat::new(Rat::new(2, 1), Rat::new(1, 5));
        let prod = &z * &w;
        assert_eq!(&prod / &w, z);
        assert_eq!(&(&z * &z.conj()).re, &z.norm_sq());
        assert!((&z * &z.conj()).im.is_zero());
        let i = GRat::i();
        assert_eq!(&i * &i, GRat::from_int(-1));
    }

    #[test]
    fn grat_parse_forms() {
        let cases = [
            ("1/2+3/4 i", GRat::new(Rat::new(1, 2), Rat::new(3, 4))),
            ("1/2-3/4 i", GRat::new(Rat::new(1, 2), Rat::new(-3, 4))),
            ("-2", GRat::from_int(-2)),
            ("3 i", GRat::new(Rat::ZERO, Rat::from(3))),
            ("-1/2 i", GRat::new(Rat::ZERO, Rat::new(-1, 2))),
        ];
        for (s, want) in cases {
            let got: GRat = s.parse().unwrap();
            assert_eq!(got, want, "parsing {s:?}");
        }
        // Display/parse roundtrip.
        let z = GRat::new(Rat::new(-5, 3), Rat::new(7, 2));
        assert_eq!(z.to_string().parse::<GRat>().unwrap(), z);
    }

    #[test]
    fn mode_validation() {
        assert!(ScalarMode::FloatComplex { tolerance: 0.0 }.validate().is_err());
        assert!(ScalarMode::FloatComplex { tolerance: 1e-9 }.validate().is_ok());
        assert!(ScalarMode::ExactRational.validate().is_ok());
    }
}
