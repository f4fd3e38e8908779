//! Exact scalars: arbitrary-precision rationals and the cyclotomic field Q(ω), ω² + ω + 1 = 0.
//!
//! Everything downstream is computed in one of these two fields. There is no
//! floating point anywhere in the crate. A [`Rat`] embeds into [`Cyc3`] with a
//! zero ω-part; that is the only implicit coercion [`ExactScalar`] performs.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn checked_inv(&self) -> Result<Rat> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_integer(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let parsed = match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                Rat::new(p, q).map_err(|_| Error::Parse(s.to_string()))?
            }
            None => Rat::from_integer(
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(s.to_string()))?,
            ),
        };
        Ok(parsed)
    }
}

/// An element a + b·ω of Q(ω), stored in the basis {1, ω}.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc3 {
    pub a: Rat,
    pub b: Rat,
}

impl Cyc3 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Cyc3 { a, b }
    }

    pub fn omega() -> Self {
        Cyc3::new(Rat::zero(), Rat::one())
    }

    pub fn from_rat(a: Rat) -> Self {
        Cyc3::new(a, Rat::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Norm N(a + bω) = a² − ab + b², the product with the Galois conjugate.
    pub fn norm(&self) -> Rat {
        &(&(&self.a * &self.a) - &(&self.a * &self.b)) + &(&self.b * &self.b)
    }

    /// Galois conjugate a + bω² = (a − b) − bω.
    pub fn conjugate(&self) -> Cyc3 {
        Cyc3::new(&self.a - &self.b, -&self.b)
    }

    pub fn checked_inv(&self) -> Result<Cyc3> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_norm = norm.checked_inv()?;
        let c = self.conjugate();
        Ok(Cyc3::new(&c.a * &inv_norm, &c.b * &inv_norm))
    }
}

/// Exact inverse in Q(ω).
pub fn cyc_invert(x: &Cyc3) -> Result<Cyc3> {
    x.checked_inv()
}

/// q = e^{±2πi/3} realized as ω (sign +1) or ω² = −1 − ω (sign −1).
pub fn q_root_of_unity(sign: i32) -> Cyc3 {
    if sign >= 0 {
        Cyc3::omega()
    } else {
        Cyc3::new(-Rat::one(), -Rat::one())
    }
}

impl Zero for Cyc3 {
    fn zero() -> Self {
        Cyc3::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Cyc3 {
    fn one() -> Self {
        Cyc3::new(Rat::one(), Rat::zero())
    }
}

impl fmt::Display for Cyc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*w", self.a, self.b)
    }
}

impl fmt::Debug for Cyc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyc3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(body) = t.strip_suffix("*w") else {
            return Ok(Cyc3::from_rat(t.parse()?));
        };
        // "a + b*w": the separator is the last " + " (b may itself carry a sign)
        match body.rsplit_once(" + ") {
            Some((a, b)) => Ok(Cyc3::new(a.parse()?, b.parse()?)),
            None => Ok(Cyc3::new(Rat::zero(), body.parse()?)),
        }
    }
}

/// A value in Q or in Q(ω).
#[derive(Clone)]
pub enum ExactScalar {
    Rat(Rat),
    Cyc(Cyc3),
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rat(Rat::from(n))
    }

    pub fn omega(sign: i32) -> Self {
        ExactScalar::Cyc(q_root_of_unity(sign))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Cyc(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_one(),
            ExactScalar::Cyc(c) => c.b.is_zero() && c.a.is_one(),
        }
    }

    /// The value as a rational, if its ω-part vanishes.
    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            ExactScalar::Rat(r) => Some(r.clone()),
            ExactScalar::Cyc(c) if c.is_rational() => Some(c.a.clone()),
            ExactScalar::Cyc(_) => None,
        }
    }

    pub fn to_cyc(&self) -> Cyc3 {
        match self {
            ExactScalar::Rat(r) => Cyc3::from_rat(r.clone()),
            ExactScalar::Cyc(c) => c.clone(),
        }
    }

    pub fn is_cyclotomic(&self) -> bool {
        matches!(self, ExactScalar::Cyc(_))
    }

    pub fn checked_inv(&self) -> Result<ExactScalar> {
        match self {
            ExactScalar::Rat(r) => Ok(ExactScalar::Rat(r.checked_inv()?)),
            ExactScalar::Cyc(c) => Ok(ExactScalar::Cyc(c.checked_inv()?)),
        }
    }

    pub fn checked_div(&self, other: &ExactScalar) -> Result<ExactScalar> {
        Ok(self * &other.checked_inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<ExactScalar> {
        let base = if exp < 0 {
            self.checked_inv()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = ExactScalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl From<Rat> for ExactScalar {
    fn from(r: Rat) -> Self {
        ExactScalar::Rat(r)
    }
}

impl From<Cyc3> for ExactScalar {
    fn from(c: Cyc3) -> Self {
        ExactScalar::Cyc(c)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactScalar::Rat(x), ExactScalar::Rat(y)) => x == y,
            _ => self.to_cyc() == other.to_cyc(),
        }
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            ExactScalar::Rat(r) => {
                r.hash(state);
                Rat::zero().hash(state);
            }
            ExactScalar::Cyc(c) => {
                c.a.hash(state);
                c.b.hash(state);
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(r) => write!(f, "{r}"),
            ExactScalar::Cyc(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts "omega+", "omega-", "p/q", and "a + b*w".
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "omega+" | "omega" | "w" => Ok(ExactScalar::omega(1)),
            "omega-" => Ok(ExactScalar::omega(-1)),
            t if t.ends_with("*w") => Ok(ExactScalar::Cyc(t.parse()?)),
            t => Ok(ExactScalar::Rat(t.parse()?)),
        }
    }
}

// ---- arithmetic ----

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl<'a> Add<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    fn add(self, rhs: &Cyc3) -> Cyc3 {
        Cyc3::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    fn sub(self, rhs: &Cyc3) -> Cyc3 {
        Cyc3::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Cyc3> for &'a Cyc3 {
    type Output = Cyc3;
    /// (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω, using ω² = −1 − ω.
    fn mul(self, rhs: &Cyc3) -> Cyc3 {
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Cyc3::new(&ac - &bd, &cross - &bd)
    }
}

impl Neg for &Cyc3 {
    type Output = Cyc3;
    fn neg(self) -> Cyc3 {
        Cyc3::new(-&self.a, -&self.b)
    }
}

impl Add for Cyc3 {
    type Output = Cyc3;
    fn add(self, rhs: Cyc3) -> Cyc3 {
        &self + &rhs
    }
}

impl Sub for Cyc3 {
    type Output = Cyc3;
    fn sub(self, rhs: Cyc3) -> Cyc3 {
        &self - &rhs
    }
}

impl Mul for Cyc3 {
    type Output = Cyc3;
    fn mul(self, rhs: Cyc3) -> Cyc3 {
        &self * &rhs
    }
}

impl Neg for Cyc3 {
    type Output = Cyc3;
    fn neg(self) -> Cyc3 {
        -&self
    }
}

fn mixed<FR, FC>(x: &ExactScalar, y: &ExactScalar, on_rat: FR, on_cyc: FC) -> ExactScalar
where
    FR: FnOnce(&Rat, &Rat) -> Rat,
    FC: FnOnce(&Cyc3, &Cyc3) -> Cyc3,
{
    match (x, y) {
        (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(on_rat(a, b)),
        (ExactScalar::Cyc(a), ExactScalar::Cyc(b)) => ExactScalar::Cyc(on_cyc(a, b)),
        (ExactScalar::Rat(a), ExactScalar::Cyc(b)) => {
            ExactScalar::Cyc(on_cyc(&Cyc3::from_rat(a.clone()), b))
        }
        (ExactScalar::Cyc(a), ExactScalar::Rat(b)) => {
            ExactScalar::Cyc(on_cyc(a, &Cyc3::from_rat(b.clone())))
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        mixed(self, rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        mixed(self, rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        match (self, rhs) {
            // cheap scaling of a Q(ω) element by a rational
            (ExactScalar::Rat(r), ExactScalar::Cyc(c))
            | (ExactScalar::Cyc(c), ExactScalar::Rat(r)) => {
                ExactScalar::Cyc(Cyc3::new(&c.a * r, &c.b * r))
            }
            _ => mixed(self, rhs, |a, b| a * b, |a, b| a * b),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(-r),
            ExactScalar::Cyc(c) => ExactScalar::Cyc(-c),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn invert_one_and_omega() {
        assert_eq!(cyc_invert(&Cyc3::one()).unwrap(), Cyc3::one());
        let w = Cyc3::omega();
        let w2 = Cyc3::new(rat(-1, 1), rat(-1, 1));
        assert_eq!(cyc_invert(&w).unwrap(), w2);
        assert_eq!(&w * &w, w2);
    }

    #[test]
    fn invert_two_plus_omega() {
        let x = Cyc3::new(rat(2, 1), rat(1, 1));
        assert_eq!(x.norm(), rat(3, 1));
        let inv = cyc_invert(&x).unwrap();
        assert_eq!(inv, Cyc3::new(rat(1, 3), rat(-1, 3)));
        assert_eq!(&x * &inv, Cyc3::one());
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(cyc_invert(&Cyc3::zero()), Err(Error::DivisionByZero));
        assert_eq!(rat(0, 1).checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_of_unity() {
        for sign in [1, -1] {
            let q = ExactScalar::omega(sign);
            let qi = q.checked_inv().unwrap();
            assert_eq!(&q + &qi, ExactScalar::from_int(-1));
            assert_eq!(q.pow(3).unwrap(), ExactScalar::one());
            assert_eq!(q.pow(6).unwrap(), ExactScalar::one());
            let tau = -(&q + &qi);
            assert!(tau.is_one());
        }
        assert_eq!(q_root_of_unity(1), Cyc3::new(rat(0, 1), rat(1, 1)));
        assert_eq!(q_root_of_unity(-1), Cyc3::new(rat(-1, 1), rat(-1, 1)));
    }

    #[test]
    fn mixed_equality_embeds() {
        let a = ExactScalar::Rat(rat(3, 2));
        let b = ExactScalar::Cyc(Cyc3::from_rat(rat(3, 2)));
        assert_eq!(a, b);
        let mut h1 = std::collections::hash_map::DefaultHasher::new();
        let mut h2 = std::collections::hash_map::DefaultHasher::new();
        a.hash(&mut h1);
        b.hash(&mut h2);
        assert_eq!(h1.finish(), h2.finish());
    }

    #[test]
    fn text_rendering_round_trips() {
        let c = Cyc3::new(rat(-1, 3), rat(5, 7));
        assert_eq!(c.to_string(), "-1/3 + 5/7*w");
        assert_eq!(c.to_string().parse::<Cyc3>().unwrap(), c);
        let c = Cyc3::new(rat(2, 1), rat(-1, 1));
        assert_eq!(c.to_string().parse::<Cyc3>().unwrap(), c);
        assert_eq!(
            "3/2".parse::<ExactScalar>().unwrap(),
            ExactScalar::Rat(rat(3, 2))
        );
        assert_eq!(
            "omega-".parse::<ExactScalar>().unwrap(),
            ExactScalar::omega(-1)
        );
        assert!("3/0".parse::<Rat>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn negative_powers() {
        let q = ExactScalar::Rat(rat(3, 2));
        assert_eq!(q.pow(-2).unwrap(), ExactScalar::Rat(rat(4, 9)));
        assert!(ExactScalar::zero().pow(-1).is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-1000i64..=1000, 1i64..=200).prop_map(|(p, d)| rat(p, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_inverse(x in arb_rat()) {
            match x.checked_inv() {
                Ok(inv) => prop_assert!((&x * &inv).is_one()),
                Err(_) => prop_assert!(x.is_zero()),
            }
        }

        #[test]
        fn cyclotomic_inverse(a in arb_rat(), b in arb_rat()) {
            let x = Cyc3::new(a, b);
            match cyc_invert(&x) {
                Ok(inv) => prop_assert!((&x * &inv).is_one()),
                Err(_) => prop_assert!(x.is_zero()),
            }
        }

        #[test]
        fn distributive_across_variants(a in arb_rat(), b in arb_rat(), c in arb_rat(), d in arb_rat()) {
            let x = ExactScalar::Rat(a);
            let y = ExactScalar::Cyc(Cyc3::new(b, c));
            let z = ExactScalar::Rat(d);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&y * &z) - &(&z * &y), ExactScalar::zero());
        }

        #[test]
        fn text_round_trip(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a.clone());
            let x = Cyc3::new(a, b);
            prop_assert_eq!(x.to_string().parse::<Cyc3>().unwrap(), x);
        }
    }
}
