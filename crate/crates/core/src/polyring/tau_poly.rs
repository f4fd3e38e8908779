use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rat;

/// Polynomial in the loop weight τ with integer coefficients.
///
/// `coeffs[k]` is the coefficient of τ^k. Trailing zeros are never stored, so
/// the zero polynomial has an empty coefficient list and structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauPoly {
    coeffs: Vec<BigInt>,
}

impl TauPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        TauPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TauPoly::constant(1)
    }

    pub fn tau() -> Self {
        TauPoly::from_i64s(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        TauPoly::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        TauPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiply by τ^k.
    pub fn shift(&self, k: usize) -> TauPoly {
        if self.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TauPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> TauPoly {
        TauPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Value at τ = 1, i.e. the sum of the coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| {
            &(&acc * t) + &Rat::from_integer(c.clone())
        })
    }

    pub fn pow(&self, e: u32) -> TauPoly {
        (0..e).fold(TauPoly::one(), |acc, _| &acc * self)
    }
}

impl From<i64> for TauPoly {
    fn from(c: i64) -> Self {
        TauPoly::constant(c)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TauPoly({self})")
    }
}

impl<'a> Add<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        TauPoly::new(
            (0..len)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigInt::zero(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TauPoly::new(out)
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        -&self
    }
}

impl Add for TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: TauPoly) -> TauPoly {
        &self + &rhs
    }
}

impl Sub for TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: TauPoly) -> TauPoly {
        &self - &rhs
    }
}

impl Mul for TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: TauPoly) -> TauPoly {
        &self * &rhs
    }
}

impl AddAssign<&TauPoly> for TauPoly {
    fn add_assign(&mut self, rhs: &TauPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&TauPoly> for TauPoly {
    fn sub_assign(&mut self, rhs: &TauPoly) {
        *self += &(-rhs);
    }
}

impl std::iter::Sum for TauPoly {
    fn sum<I: Iterator<Item = TauPoly>>(iter: I) -> Self {
        iter.fold(TauPoly::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
