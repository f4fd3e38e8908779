use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Affine form Σ c_ℓ·w_ℓ + const in the integration variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    coeffs: BTreeMap<usize, ExactScalar>,
    constant: ExactScalar,
}

impl AffineForm {
    pub fn new<I>(coeffs: I, constant: ExactScalar) -> Self
    where
        I: IntoIterator<Item = (usize, ExactScalar)>,
    {
        let mut map = BTreeMap::new();
        for (v, c) in coeffs {
            let e = map.entry(v).or_insert_with(ExactScalar::zero);
            *e += &c;
        }
        map.retain(|_, c: &mut ExactScalar| !c.is_zero());
        AffineForm {
            coeffs: map,
            constant,
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        AffineForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    /// c·w_var + constant.
    pub fn linear(var: usize, c: ExactScalar, constant: ExactScalar) -> Self {
        AffineForm::new([(var, c)], constant)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> &ExactScalar {
        &self.constant
    }

    pub fn coefficient(&self, var: usize) -> ExactScalar {
        self.coeffs
            .get(&var)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn scale(&self, s: &ExactScalar) -> AffineForm {
        if s.is_zero() {
            return AffineForm::constant(ExactScalar::zero());
        }
        AffineForm {
            coeffs: self.coeffs.iter().map(|(&v, c)| (v, c * s)).collect(),
            constant: &self.constant * s,
        }
    }

    /// Split into (s, m) with self = s·m and m monic in its lowest-index
    /// variable. A constant form splits as (const, 1).
    pub fn normalized(&self) -> (ExactScalar, AffineForm) {
        match self.coeffs.values().next() {
            None => (
                self.constant.clone(),
                AffineForm::constant(ExactScalar::one()),
            ),
            Some(lead) if lead.is_one() => (ExactScalar::one(), self.clone()),
            Some(lead) => {
                let inv = lead.checked_inv().expect("stored coefficients are nonzero");
                (lead.clone(), self.scale(&inv))
            }
        }
    }

    pub fn substitute(&self, var: usize, value: &ExactScalar) -> AffineForm {
        let Some(c) = self.coeffs.get(&var) else {
            return self.clone();
        };
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(&var);
        AffineForm {
            coeffs,
            constant: &self.constant + &(c * value),
        }
    }

    /// Value at w_ℓ = values[ℓ].
    pub fn evaluate(&self, values: &[ExactScalar]) -> ExactScalar {
        self.coeffs
            .iter()
            .fold(self.constant.clone(), |acc, (&v, c)| {
                &acc + &(c * &values[v])
            })
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (v, c) in &self.coeffs {
            write!(f, "[{c}]w{v} + ")?;
        }
        write!(f, "[{}])", self.constant)
    }
}

/// prefactor · Π num / Π den with every stored factor monic and non-constant.
#[derive(Clone, Debug)]
pub struct LinearFactorExpr {
    prefactor: ExactScalar,
    num: Vec<AffineForm>,
    den: Vec<AffineForm>,
}

impl LinearFactorExpr {
    pub fn new(prefactor: ExactScalar) -> Self {
        LinearFactorExpr {
            prefactor,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    pub fn prefactor(&self) -> &ExactScalar {
        &self.prefactor
    }

    pub fn numerator(&self) -> &[AffineForm] {
        &self.num
    }

    pub fn denominator(&self) -> &[AffineForm] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn scale(&mut self, s: &ExactScalar) {
        self.prefactor *= s;
    }

    pub fn mul_factor(&mut self, f: AffineForm) {
        let (s, m) = f.normalized();
        self.prefactor *= &s;
        if !m.is_constant() {
            self.num.push(m);
        }
    }

    /// Divide by an affine form; a form that is identically zero is an error.
    pub fn div_factor(&mut self, f: AffineForm) -> Result<()> {
        let (s, m) = f.normalized();
        if s.is_zero() {
            return Err(Error::Degenerate(
                "a denominator factor vanishes identically".into(),
            ));
        }
        self.prefactor = self.prefactor.checked_div(&s)?;
        if !m.is_constant() {
            self.den.push(m);
        }
        Ok(())
    }

    pub fn evaluate(&self, values: &[ExactScalar]) -> Result<ExactScalar> {
        let mut acc = self.prefactor.clone();
        for f in &self.num {
            acc *= &f.evaluate(values);
        }
        let mut den = ExactScalar::one();
        for f in &self.den {
            den *= &f.evaluate(values);
        }
        acc.checked_div(&den)
    }

    /// Remove numerator/denominator pairs that agree up to a scalar. Factors
    /// are stored normalized, so such pairs are literally equal.
    pub fn cancel_common_factors(&self) -> LinearFactorExpr {
        let mut den_count: HashMap<&AffineForm, usize> = HashMap::new();
        for f in &self.den {
            *den_count.entry(f).or_default() += 1;
        }
        let mut removed: HashMap<&AffineForm, usize> = HashMap::new();
        let mut num = Vec::with_capacity(self.num.len());
        for f in &self.num {
            match den_count.get_mut(f) {
                Some(c) if *c > 0 => {
                    *c -= 1;
                    *removed.entry(f).or_default() += 1;
                }
                _ => num.push(f.clone()),
            }
        }
        let mut den = Vec::with_capacity(self.den.len());
        for f in &self.den {
            match removed.get_mut(f) {
                Some(c) if *c > 0 => *c -= 1,
                _ => den.push(f.clone()),
            }
        }
        LinearFactorExpr {
            prefactor: self.prefactor.clone(),
            num,
            den,
        }
    }

    /// Residue in w_var at w_var = point, assuming a simple pole there.
    pub fn residue_at_simple_pole(
        &self,
        var: usize,
        point: &ExactScalar,
    ) -> Result<LinearFactorExpr> {
        let e = self.cancel_common_factors();
        let vanishing: Vec<usize> = e
            .den
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.coefficient(var).is_zero() && f.substitute(var, point).is_zero())
            .map(|(k, _)| k)
            .collect();
        let pole = match vanishing.as_slice() {
            [] => return Err(Error::NoPole { var }),
            [k] => *k,
            _ => {
                return Err(Error::HigherOrderPole {
                    var,
                    count: vanishing.len(),
                })
            }
        };
        let c = e.den[pole].coefficient(var);
        let mut out = LinearFactorExpr::new(e.prefactor.checked_div(&c)?);
        for f in &e.num {
            out.mul_factor(f.substitute(var, point));
            if out.is_zero() {
                return Ok(LinearFactorExpr::new(ExactScalar::zero()));
            }
        }
        for (k, f) in e.den.iter().enumerate() {
            if k != pole {
                out.div_factor(f.substitute(var, point)).map_err(|_| {
                    Error::Degenerate(format!(
                        "a second denominator factor vanishes after the residue in w{var}"
                    ))
                })?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    // w0 - c
    fn w_minus(c: i64) -> AffineForm {
        AffineForm::linear(0, s(1), s(-c))
    }

    #[test]
    fn cancel_equal_and_scaled_pairs() {
        let mut e = LinearFactorExpr::new(s(1));
        e.mul_factor(w_minus(2));
        e.div_factor(w_minus(2)).unwrap();
        let c = e.cancel_common_factors();
        assert!(c.numerator().is_empty() && c.denominator().is_empty());
        assert_eq!(c.prefactor(), &s(1));

        let mut e = LinearFactorExpr::new(s(1));
        e.mul_factor(AffineForm::linear(0, s(2), s(-4)));
        e.div_factor(w_minus(2)).unwrap();
        let c = e.cancel_common_factors();
        assert!(c.numerator().is_empty() && c.denominator().is_empty());
        assert_eq!(c.prefactor(), &s(2));

        let mut e = LinearFactorExpr::new(s(1));
        e.mul_factor(w_minus(2));
        e.div_factor(w_minus(3)).unwrap();
        let c = e.cancel_common_factors();
        assert_eq!(c.numerator().len(), 1);
        assert_eq!(c.denominator().len(), 1);
    }

    #[test]
    fn partial_fraction_residue() {
        let mut e = LinearFactorExpr::new(s(1));
        e.div_factor(w_minus(2)).unwrap();
        e.div_factor(w_minus(3)).unwrap();
        let r = e.residue_at_simple_pole(0, &s(2)).unwrap();
        assert_eq!(r.evaluate(&[]).unwrap(), s(-1));
    }

    #[test]
    fn cancelled_pole_is_no_pole() {
        let mut e = LinearFactorExpr::new(s(1));
        e.mul_factor(w_minus(2));
        e.div_factor(w_minus(2)).unwrap();
        assert_eq!(
            e.residue_at_simple_pole(0, &s(2)).unwrap_err(),
            Error::NoPole { var: 0 }
        );
    }

    #[test]
    fn double_pole_rejected() {
        let mut e = LinearFactorExpr::new(s(1));
        e.div_factor(w_minus(2)).unwrap();
        e.div_factor(AffineForm::linear(0, s(3), s(-6))).unwrap();
        assert!(matches!(
            e.residue_at_simple_pole(0, &s(2)),
            Err(Error::HigherOrderPole { count: 2, .. })
        ));
    }

    #[test]
    fn iterated_residue_in_two_variables() {
        // 1/((w0 - 2)(w0 - w1)(w1 - 5)): residue at w0 = 2 leaves 1/((2 - w1)(w1 - 5))
        let mut e = LinearFactorExpr::new(s(1));
        e.div_factor(w_minus(2)).unwrap();
        e.div_factor(AffineForm::new([(0, s(1)), (1, s(-1))], s(0)))
            .unwrap();
        e.div_factor(AffineForm::linear(1, s(1), s(-5))).unwrap();
        let r = e.residue_at_simple_pole(0, &s(2)).unwrap();
        assert_eq!(r.denominator().len(), 2);
        let r = r.residue_at_simple_pole(1, &s(5)).unwrap();
        assert_eq!(
            r.evaluate(&[]).unwrap(),
            ExactScalar::from(crate::scalar::Rat::new(-1, 3).unwrap())
        );
    }

    #[test]
    fn identically_zero_denominator_is_degenerate() {
        let mut e = LinearFactorExpr::new(s(1));
        assert!(matches!(
            e.div_factor(AffineForm::constant(s(0))),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn substitution_produces_remaining_form() {
        let f = AffineForm::new([(0, s(2)), (1, s(3))], s(1));
        let g = f.substitute(0, &s(5));
        assert_eq!(g, AffineForm::new([(1, s(3))], s(11)));
        assert_eq!(f.evaluate(&[s(5), s(1)]), s(14));
    }

    fn r(p: i64, d: i64) -> ExactScalar {
        ExactScalar::from(crate::scalar::Rat::new(p, d).unwrap())
    }

    /// Coefficients, lowest first, of Π (a_k w − b_k).
    fn expand(factors: &[(i64, i64)]) -> Vec<ExactScalar> {
        let mut poly = vec![s(1)];
        for &(a, b) in factors {
            let mut next = vec![s(0); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += &(c * &s(a));
                next[k] -= &(c * &s(b));
            }
            poly = next;
        }
        poly
    }

    fn horner(p: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
        p.iter().rev().fold(s(0), |acc, c| &(&acc * x) + c)
    }

    fn derivative(p: &[ExactScalar]) -> Vec<ExactScalar> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &s(k as i64))
            .collect()
    }

    fn build(c: i64, num: &[(i64, i64)], den: &[(i64, i64)]) -> LinearFactorExpr {
        let mut e = LinearFactorExpr::new(s(c));
        for &(a, b) in num {
            e.mul_factor(AffineForm::linear(0, s(a), s(-b)));
        }
        for &(a, b) in den {
            e.div_factor(AffineForm::linear(0, s(a), s(-b))).unwrap();
        }
        e
    }

    fn arb_factors(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((prop_oneof![-3i64..=-1, 1i64..=3], -6i64..=6), len)
    }

    proptest! {
        #[test]
        fn residue_matches_derivative_formula(
            c in 1i64..=5,
            num in arb_factors(0..4),
            den in arb_factors(1..5),
        ) {
            let pole = r(den[0].1, den[0].0);
            let roots: Vec<ExactScalar> = den.iter().map(|&(a, b)| r(b, a)).collect();
            for (i, x) in roots.iter().enumerate() {
                for y in &roots[i + 1..] {
                    prop_assume!(x != y);
                }
            }
            prop_assume!(num.iter().all(|&(a, b)| r(b, a) != pole));
            let e = build(c, &num, &den);
            let got = e.residue_at_simple_pole(0, &pole).unwrap().evaluate(&[]).unwrap();
            let n = expand(&num);
            let d = expand(&den);
            let want = (&s(c) * &horner(&n, &pole)).checked_div(&horner(&derivative(&d), &pole)).unwrap();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn cancellation_is_idempotent_and_exact(
            c in 1i64..=5,
            num in arb_factors(0..5),
            den in arb_factors(0..5),
            x in 7i64..=40,
        ) {
            let e = build(c, &num, &den);
            let once = e.cancel_common_factors();
            let twice = once.cancel_common_factors();
            prop_assert_eq!(once.numerator(), twice.numerator());
            prop_assert_eq!(once.denominator(), twice.denominator());
            prop_assert_eq!(once.prefactor(), twice.prefactor());
            let at = [r(x, 1)];
            prop_assert_eq!(e.evaluate(&at).unwrap(), once.evaluate(&at).unwrap());
        }
    }
}
