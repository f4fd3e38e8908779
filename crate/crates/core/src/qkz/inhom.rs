//! Components of the qKZ solution at exact spectral parameters, by summing
//! iterated residues of the contour-integral representation.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{AffineForm, LinearFactorExpr};
use crate::qkz::index::{ComponentIndex, IndexKind};
use crate::qkz::spin::{positions_of, SectorBasis, SpinVector};
use crate::sampling::{is_admissible, shifted_z};
use crate::scalar::ExactScalar;
use crate::sixvertex;

fn check_inputs(z: &[ExactScalar], q: &ExactScalar, size: usize) -> Result<()> {
    if z.len() != size {
        return Err(Error::InvalidArgument(format!(
            "expected {size} spectral parameters, got {}",
            z.len()
        )));
    }
    if q.is_zero() || q.is_one() || (-q).is_one() {
        return Err(Error::Degenerate(format!("q = {q} is not generic")));
    }
    if !is_admissible(z, q) {
        return Err(Error::Degenerate(
            "spectral parameters must be distinct, nonzero, and satisfy q^2 z_i != z_j".into(),
        ));
    }
    Ok(())
}

/// Π_{i<j} (q z_i − q⁻¹ z_j).
fn vandermonde_prefactor(z: &[ExactScalar], q: &ExactScalar, qi: &ExactScalar) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            acc *= &(&(q * &z[i]) - &(qi * &z[j]));
        }
    }
    acc
}

/// Integrand shared by both representations. `positions` are the 1-based
/// a_ℓ (or b_ℓ); `with_w` adds the Π w_ℓ numerator.
fn integrand(
    positions: &[usize],
    z: &[ExactScalar],
    q: &ExactScalar,
    qi: &ExactScalar,
    prefactor: ExactScalar,
    with_w: bool,
) -> Result<LinearFactorExpr> {
    let k = positions.len();
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let mut e = LinearFactorExpr::new(prefactor);
    for l in 0..k {
        if with_w {
            e.mul_factor(AffineForm::linear(l, one.clone(), zero.clone()));
        }
        for m in l + 1..k {
            e.mul_factor(AffineForm::new(
                [(m, one.clone()), (l, -&one)],
                zero.clone(),
            ));
            e.mul_factor(AffineForm::new([(l, q.clone()), (m, -qi)], zero.clone()));
        }
        let a = positions[l];
        for (i, zi) in z.iter().enumerate().map(|(i, zi)| (i + 1, zi)) {
            if i <= a {
                e.div_factor(AffineForm::linear(l, one.clone(), -zi))?;
            }
            if i >= a {
                e.div_factor(AffineForm::linear(l, q.clone(), -(qi * zi)))?;
            }
        }
    }
    Ok(e)
}

/// Depth-first sum over poles w_ℓ = z_i, i ≤ positions[ℓ].
fn residue_sum(
    e: &LinearFactorExpr,
    var: usize,
    positions: &[usize],
    z: &[ExactScalar],
) -> Result<ExactScalar> {
    if var == positions.len() {
        return e.evaluate(&[]);
    }
    let mut total = ExactScalar::zero();
    for zi in &z[..positions[var]] {
        match e.residue_at_simple_pole(var, zi) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => total += &residue_sum(&r, var + 1, positions, z)?,
            Err(Error::NoPole { .. }) => {}
            Err(Error::HigherOrderPole { var, count }) => {
                return Err(Error::Degenerate(format!(
                    "{count} coinciding poles in w{var}; parameters are not generic"
                )))
            }
            Err(err) => return Err(err),
        }
    }
    Ok(total)
}

/// Ψ_{a_1..a_n}(z) from the n-fold integral with the Π w_ℓ numerator.
pub fn psi_inhom(a: &ComponentIndex, z: &[ExactScalar], q: &ExactScalar) -> Result<ExactScalar> {
    if a.kind() != IndexKind::Down {
        return Err(Error::InvalidIndex(format!(
            "{a} is not a down-arrow index"
        )));
    }
    check_inputs(z, q, a.size())?;
    let qi = q.checked_inv()?;
    let n = a.n() as i64;
    let mut pre = (q - &qi).pow(n)?;
    for &al in a.indices() {
        pre *= &z[al - 1];
    }
    let e = integrand(a.indices(), z, q, &qi, pre, true)?;
    let sum = residue_sum(&e, 0, a.indices(), z)?;
    Ok(&sum * &vandermonde_prefactor(z, q, &qi))
}

/// Ψ̄_{b_1..b_{n+1}}(z) from the (n+1)-fold integral.
pub fn psibar_inhom(b: &ComponentIndex, z: &[ExactScalar], q: &ExactScalar) -> Result<ExactScalar> {
    if b.kind() != IndexKind::Up {
        return Err(Error::InvalidIndex(format!("{b} is not an up-arrow index")));
    }
    check_inputs(z, q, b.size())?;
    let qi = q.checked_inv()?;
    let n = b.n() as i64;
    // n+1 residues: the power of (q − q⁻¹) matches the number of integrations
    let mut pre = (q - &qi).pow(n + 1)?;
    for zi in z {
        pre *= zi;
    }
    let e = integrand(b.indices(), z, q, &qi, pre, false)?;
    let sum = residue_sum(&e, 0, b.indices(), z)?;
    Ok(&sum * &vandermonde_prefactor(z, q, &qi))
}

/// The full vector Ψ(z) in the sector with n down arrows, N = 2n+1 = z.len().
pub fn psi_vector_inhom(z: &[ExactScalar], q: &ExactScalar) -> Result<SpinVector> {
    let size = z.len();
    if size.is_multiple_of(2) || size < 3 {
        return Err(Error::InvalidArgument(format!(
            "system size must be odd and at least 3, got {size}"
        )));
    }
    let n = (size - 1) / 2;
    check_inputs(z, q, size)?;
    let basis = SectorBasis::new(size, n);
    let entries = basis
        .states()
        .par_iter()
        .map(|&m| psi_inhom(&ComponentIndex::down(n, positions_of(m))?, z, q))
        .collect::<Result<Vec<_>>>()?;
    SpinVector::from_entries(basis, entries)
}

fn swapped(z: &[ExactScalar], i: usize) -> Vec<ExactScalar> {
    let mut w = z.to_vec();
    w.swap(i - 1, i);
    w
}

/// Ř_{i,i+1}(z_{i+1}/z_i) Ψ(…, z_i, z_{i+1}, …) = Ψ(…, z_{i+1}, z_i, …).
pub fn check_exchange(z: &[ExactScalar], q: &ExactScalar, i: usize) -> Result<bool> {
    if i < 1 || i + 1 > z.len() {
        return Err(Error::InvalidArgument(format!(
            "exchange position {i} out of range for N={}",
            z.len()
        )));
    }
    let psi = psi_vector_inhom(z, q)?;
    let x = z[i].checked_div(&z[i - 1])?;
    let lhs = sixvertex::apply_rcheck(&psi, i, &x, q)?;
    let rhs = psi_vector_inhom(&swapped(z, i), q)?;
    Ok(lhs == rhs)
}

/// D σ Ψ(z_1, …, z_N) = Ψ(z_2, …, z_N, q⁶ z_1).
pub fn check_cyclicity(z: &[ExactScalar], q: &ExactScalar) -> Result<bool> {
    let psi = psi_vector_inhom(z, q)?;
    let lhs = sixvertex::apply_d(&sixvertex::rotate(&psi), q)?;
    let rhs = psi_vector_inhom(&shifted_z(z, q), q)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn zs(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    fn rat(p: i64, d: i64) -> ExactScalar {
        ExactScalar::Rat(Rat::new(p, d).unwrap())
    }

    #[test]
    fn n1_components_match_closed_forms() {
        let z = zs(&[1, 2, 3]);
        let q = ExactScalar::from_int(2);
        let qi = q.checked_inv().unwrap();
        let psi1 = psi_inhom(&ComponentIndex::down(1, vec![1]).unwrap(), &z, &q).unwrap();
        assert_eq!(psi1, &z[0] * &(&(&q * &z[1]) - &(&qi * &z[2])));
        let psi2 = psi_inhom(&ComponentIndex::down(1, vec![2]).unwrap(), &z, &q).unwrap();
        assert_eq!(psi2, rat(-13, 2));
        let bar = psibar_inhom(&ComponentIndex::up(1, vec![2, 3]).unwrap(), &z, &q).unwrap();
        assert_eq!(bar, psi1);
    }

    #[test]
    fn base_component_closed_form() {
        let z = zs(&[1, 2, 3, 5, 7]);
        let q = rat(3, 2);
        let qi = q.checked_inv().unwrap();
        let f = |i: usize, j: usize| &(&q * &z[i]) - &(&qi * &z[j]);
        let expected = &(&(&z[0] * &z[1]) * &f(0, 1)) * &(&(&f(2, 3) * &f(2, 4)) * &f(3, 4));
        let a = ComponentIndex::down(2, vec![1, 2]).unwrap();
        assert_eq!(psi_inhom(&a, &z, &q).unwrap(), expected);
        let b = ComponentIndex::up(2, vec![3, 4, 5]).unwrap();
        assert_eq!(psibar_inhom(&b, &z, &q).unwrap(), expected);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let q = ExactScalar::from_int(2);
        let a = ComponentIndex::down(1, vec![1]).unwrap();
        assert!(matches!(
            psi_inhom(&a, &zs(&[1, 1, 3]), &q),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            psi_inhom(&a, &zs(&[1, 4, 3]), &q),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            psi_inhom(&a, &zs(&[1, 2, 3]), &ExactScalar::one()),
            Err(Error::Degenerate(_))
        ));
        assert!(check_exchange(&zs(&[1, 1, 3]), &q, 1).is_err());
    }

    #[test]
    fn small_exchange_and_cyclicity() {
        let z = zs(&[1, 2, 3]);
        let q = ExactScalar::from_int(2);
        assert!(check_exchange(&z, &q, 1).unwrap());
        assert!(check_exchange(&z, &q, 2).unwrap());
        assert!(check_cyclicity(&z, &q).unwrap());
    }
}
