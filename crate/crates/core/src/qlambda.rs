//! Exact arithmetic in `O = Z + λZ` and its fraction field `Q(λ)`, where
//! `λ = (−1 + √−7)/2` satisfies `λ² + λ + 2 = 0`.
//!
//! Elements of `Q(λ)` carry a single positive denominator shared by both
//! components, kept in lowest terms, so structural equality is numeric
//! equality and values can be hashed directly.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `a + bλ` of the ring of integers `O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: BigInt::zero() }
    }

    pub fn lambda() -> Self {
        QuadInt::new(0, 1)
    }

    /// `λ̄ = −1 − λ`.
    pub fn lambda_bar() -> Self {
        QuadInt::new(-1, -1)
    }

    /// `θ = λ − λ̄ = 1 + 2λ = √−7`.
    pub fn theta() -> Self {
        QuadInt::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation: `conj(a + bλ) = (a − b) − bλ`.
    pub fn conj(&self) -> Self {
        QuadInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// `x·x̄ = a² − ab + 2b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + BigInt::from(2) * &self.b * &self.b
    }

    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.a - &self.b
    }

    /// gcd of the two integer components.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The quotient `x / d` when it lies in `O`.
    pub fn divides(d: &QuadInt, x: &QuadInt) -> Result<Option<QuadInt>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let p = x * &d.conj();
        if p.a.is_multiple_of(&n) && p.b.is_multiple_of(&n) {
            Ok(Some(QuadInt { a: p.a / &n, b: p.b / &n }))
        } else {
            Ok(None)
        }
    }

    /// Exact division by `λ` if possible: `λ | a + bλ` iff `a` is even.
    pub(crate) fn div_lambda(&self) -> Option<QuadInt> {
        if self.a.is_odd() {
            return None;
        }
        let half = &self.a >> 1usize;
        Some(QuadInt { a: &self.b - &half, b: -half })
    }

    /// Valuation at the prime `λO`, i.e. the 2-adic valuation under the
    /// embedding that sends `λ` to twice a unit. `None` for zero.
    pub fn lambda_valuation(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let t = self.a.trailing_zeros().unwrap_or(u64::MAX).min(self.b.trailing_zeros().unwrap_or(u64::MAX));
        let mut x = QuadInt { a: &self.a >> t, b: &self.b >> t };
        let mut v = t;
        while let Some(q) = x.div_lambda() {
            x = q;
            v += 1;
        }
        Some(v)
    }

    /// Reduction modulo `θ`, via `O/θO ≅ F₇` with `λ ↦ 3`.
    pub fn mod_theta(&self) -> u8 {
        let r = (&self.a + BigInt::from(3) * &self.b).mod_floor(&BigInt::from(7));
        r.try_into().expect("residue fits in u8")
    }

    /// Reduction modulo `λ`, via `O/λO ≅ F₂`.
    pub fn mod_lambda(&self) -> u8 {
        if self.a.is_odd() {
            1
        } else {
            0
        }
    }
}

impl From<i64> for QuadInt {
    fn from(a: i64) -> Self {
        QuadInt::from_int(a)
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    // λ² = −λ − 2
    fn mul(self, o: &QuadInt) -> QuadInt {
        let bd = &self.b * &o.b;
        QuadInt {
            a: &self.a * &o.a - BigInt::from(2) * &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                self.$m(&o)
            }
        }
    };
}

forward_owned_binop!(QuadInt, Add, add);
forward_owned_binop!(QuadInt, Sub, sub);
forward_owned_binop!(QuadInt, Mul, mul);

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&QuadRat::from(self.clone()), f)
    }
}

/// An element `(a + bλ)/d` of `Q(λ)` with `d > 0` and `gcd(a, b, d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadRat {
    num: QuadInt,
    den: BigInt,
}

impl Default for QuadRat {
    fn default() -> Self {
        QuadRat::zero()
    }
}

impl From<QuadInt> for QuadRat {
    fn from(num: QuadInt) -> Self {
        QuadRat { num, den: BigInt::one() }
    }
}

impl From<i64> for QuadRat {
    fn from(a: i64) -> Self {
        QuadRat::from(QuadInt::from_int(a))
    }
}

impl From<BigInt> for QuadRat {
    fn from(a: BigInt) -> Self {
        QuadRat::from(QuadInt::from_int(a))
    }
}

impl From<&BigRational> for QuadRat {
    fn from(r: &BigRational) -> Self {
        QuadRat::new(QuadInt::from_int(r.numer().clone()), r.denom().clone())
    }
}

impl QuadRat {
    /// Builds `num / den`, normalizing sign and common factors.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: QuadInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.content().gcd(&den);
        if !g.is_one() {
            num = QuadInt { a: num.a / &g, b: num.b / &g };
            den /= &g;
        }
        QuadRat { num, den }
    }

    pub fn from_parts(a: BigRational, b: BigRational) -> Self {
        let d = a.denom().lcm(b.denom());
        let na = a.numer() * (&d / a.denom());
        let nb = b.numer() * (&d / b.denom());
        QuadRat::new(QuadInt::new(na, nb), d)
    }

    pub fn zero() -> Self {
        QuadRat::from(0)
    }

    pub fn one() -> Self {
        QuadRat::from(1)
    }

    pub fn lambda() -> Self {
        QuadRat::from(QuadInt::lambda())
    }

    pub fn lambda_bar() -> Self {
        QuadRat::from(QuadInt::lambda_bar())
    }

    pub fn theta() -> Self {
        QuadRat::from(QuadInt::theta())
    }

    pub fn numer(&self) -> &QuadInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Rational coordinates `(a/d, b/d)`.
    pub fn parts(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.num.a.clone(), self.den.clone()),
            BigRational::new(self.num.b.clone(), self.den.clone()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.a.is_one() && self.num.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.b.is_zero()
    }

    pub fn to_quad_int(&self) -> Option<QuadInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num.a.clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.is_integral()).then(|| self.num.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    /// Real part as a rational: `Re(λ) = −1/2`.
    pub fn real_part(&self) -> BigRational {
        BigRational::new(BigInt::from(2) * &self.num.a - &self.num.b, BigInt::from(2) * &self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(n/d) = d·n̄ / N(n)
        let n = self.num.norm();
        let c = self.num.conj();
        Ok(QuadRat::new(QuadInt { a: c.a * &self.den, b: c.b * &self.den }, n))
    }

    pub fn checked_div(&self, o: &QuadRat) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = QuadRat::new(base.num.pow(e.unsigned_abs() as u32), base.den.pow(e.unsigned_abs() as u32));
        Ok(n)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        QuadRat::new(QuadInt { a: &self.num.a * k, b: &self.num.b * k }, self.den.clone())
    }
}

impl<'a> Add<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, o: &QuadRat) -> QuadRat {
        if self.den == o.den {
            return QuadRat::new(&self.num + &o.num, self.den.clone());
        }
        let d = self.den.lcm(&o.den);
        let l = &d / &self.den;
        let r = &d / &o.den;
        QuadRat::new(
            QuadInt { a: &self.num.a * &l + &o.num.a * &r, b: &self.num.b * &l + &o.num.b * &r },
            d,
        )
    }
}

impl<'a> Sub<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, o: &QuadRat) -> QuadRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, o: &QuadRat) -> QuadRat {
        QuadRat::new(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by zero; use [`QuadRat::checked_div`] otherwise.
impl<'a> Div<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn div(self, o: &QuadRat) -> QuadRat {
        self.checked_div(o).expect("division by zero in Q(λ)")
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

forward_owned_binop!(QuadRat, Add, add);
forward_owned_binop!(QuadRat, Sub, sub);
forward_owned_binop!(QuadRat, Mul, mul);
forward_owned_binop!(QuadRat, Div, div);

impl AddAssign<&QuadRat> for QuadRat {
    fn add_assign(&mut self, o: &QuadRat) {
        *self = &*self + o;
    }
}

impl SubAssign<&QuadRat> for QuadRat {
    fn sub_assign(&mut self, o: &QuadRat) {
        *self = &*self - o;
    }
}

impl MulAssign<&QuadRat> for QuadRat {
    fn mul_assign(&mut self, o: &QuadRat) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a/d + (b/d)*l`, each fraction in lowest terms; a zero
/// `λ`-part is omitted.
impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.parts();
        if b.is_zero() {
            write!(f, "{}", fmt_rational(&a))
        } else {
            write!(f, "{} + ({})*l", fmt_rational(&a), fmt_rational(&b))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{t}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Accepts `r`, `r + (s)*l` and `(s)*l`, where `r` and `s` are integers or
/// fractions `p/q`.
impl FromStr for QuadRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lambda_term = |u: &str| -> Result<BigRational> {
            let u = u.trim();
            let inner = u
                .strip_suffix("*l")
                .map(str::trim)
                .and_then(|v| v.strip_prefix('('))
                .and_then(|v| v.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("invalid λ-term `{u}`")))?;
            parse_rational(inner)
        };
        if !t.ends_with("*l") {
            return Ok(QuadRat::from_parts(parse_rational(t)?, BigRational::zero()));
        }
        // Split at the " + (" that opens the λ-term, if any.
        match t.rfind('(') {
            Some(open) => {
                let head = t[..open].trim_end();
                let tail = &t[open..];
                if head.is_empty() {
                    Ok(QuadRat::from_parts(BigRational::zero(), lambda_term(tail)?))
                } else {
                    let head = head
                        .strip_suffix('+')
                        .ok_or_else(|| Error::Parse(format!("expected `+` in `{t}`")))?;
                    Ok(QuadRat::from_parts(parse_rational(head)?, lambda_term(tail)?))
                }
            }
            None => Err(Error::Parse(format!("invalid element `{t}`"))),
        }
    }
}

impl Serialize for QuadRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn lambda_times_conjugate_is_two() {
        assert_eq!(QuadInt::lambda() * QuadInt::lambda_bar(), qi(2, 0));
    }

    #[test]
    fn lambda_squared() {
        assert_eq!(QuadInt::lambda() * QuadInt::lambda(), qi(-2, -1));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(QuadInt::lambda().conj(), qi(-1, -1));
        assert_eq!(qi(3, 0).conj(), qi(3, 0));
        assert_eq!(QuadInt::theta().conj(), -QuadInt::theta());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(QuadInt::lambda().norm(), BigInt::from(2));
        assert_eq!(QuadInt::theta().norm(), BigInt::from(7));
        assert_eq!(QuadInt::default().norm(), BigInt::zero());
        assert_eq!(QuadInt::theta() * QuadInt::theta(), qi(-7, 0));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(QuadInt::divides(&QuadInt::lambda_bar(), &qi(2, 0)).unwrap(), Some(QuadInt::lambda()));
        assert_eq!(QuadInt::divides(&QuadInt::lambda_bar(), &qi(1, 0)).unwrap(), None);
        assert_eq!(QuadInt::divides(&QuadInt::theta(), &qi(7, 0)).unwrap(), Some(-QuadInt::theta()));
        assert!(QuadInt::divides(&QuadInt::default(), &qi(1, 0)).is_err());
    }

    #[test]
    fn lambda_valuations() {
        assert_eq!(QuadInt::lambda().lambda_valuation(), Some(1));
        assert_eq!(QuadInt::lambda_bar().lambda_valuation(), Some(0));
        assert_eq!(qi(8, 0).lambda_valuation(), Some(3));
        assert_eq!(QuadInt::lambda().pow(5).lambda_valuation(), Some(5));
        assert_eq!(QuadInt::default().lambda_valuation(), None);
    }

    #[test]
    fn render_and_parse() {
        let x = QuadRat::new(qi(-1, 3), BigInt::from(2));
        assert_eq!(x.to_string(), "-1/2 + (3/2)*l");
        assert_eq!("-1/2 + (3/2)*l".parse::<QuadRat>().unwrap(), x);
        assert_eq!("(1)*l".parse::<QuadRat>().unwrap(), QuadRat::lambda());
        assert_eq!("0 + (1)*l".parse::<QuadRat>().unwrap(), QuadRat::lambda());
        assert_eq!("7".parse::<QuadRat>().unwrap(), QuadRat::from(7));
        assert_eq!("-4/6".parse::<QuadRat>().unwrap().to_string(), "-2/3");
        assert!("1 + 2*l".parse::<QuadRat>().is_err());
        assert!("x".parse::<QuadRat>().is_err());
    }

    #[test]
    fn inverse_of_lambda() {
        // 1/λ = λ̄/2
        let inv = QuadRat::lambda().inv().unwrap();
        assert_eq!(inv, QuadRat::new(QuadInt::lambda_bar(), BigInt::from(2)));
        assert!(QuadRat::zero().inv().is_err());
    }

    fn arb_qi() -> impl Strategy<Value = QuadInt> {
        (-50i64..50, -50i64..50).prop_map(|(a, b)| qi(a, b))
    }

    fn arb_qr() -> impl Strategy<Value = QuadRat> {
        (arb_qi(), 1i64..30).prop_map(|(n, d)| QuadRat::new(n, BigInt::from(d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(x in arb_qi(), y in arb_qi(), z in arb_qi()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&QuadInt::from_int(1) * &x, x.clone());
        }

        #[test]
        fn norm_is_multiplicative(x in arb_qi(), y in arb_qi()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert!(x.norm() >= BigInt::zero());
            prop_assert_eq!(x.norm().is_zero(), x.is_zero());
        }

        #[test]
        fn field_inverse(x in arb_qr()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn text_round_trip(x in arb_qr()) {
            prop_assert_eq!(x.to_string().parse::<QuadRat>().unwrap(), x);
        }
    }
}
