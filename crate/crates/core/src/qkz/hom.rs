//! Homogeneous components as constant terms: ψ_a is the coefficient of
//! Π u_ℓ^{a_ℓ−1} in Π_ℓ(1 + τu_ℓ + u_ℓ²) · Π_{ℓ<m}(u_m − u_ℓ)(1 + τu_m + u_ℓu_m).

use crate::error::{Error, Result};
use crate::polyring::{CtIntegrand, TauPoly};
use crate::qkz::index::{ComponentIndex, IndexKind};
use crate::qkz::spin::{mask_of, SectorBasis, SpinVector};
use crate::scalar::{ExactScalar, Rat};

fn tp(c: &[i64]) -> TauPoly {
    TauPoly::from_i64s(c)
}

/// Terms of (u_m − u_ℓ)(1 + τu_m + u_ℓu_m) as (e_ℓ, e_m, coefficient).
pub fn pair_kernel() -> Vec<(u32, u32, TauPoly)> {
    vec![
        (0, 1, tp(&[1])),
        (0, 2, tp(&[0, 1])),
        (1, 2, tp(&[1])),
        (1, 0, tp(&[-1])),
        (1, 1, tp(&[0, -1])),
        (2, 1, tp(&[-1])),
    ]
}

fn psi_integrand() -> CtIntegrand {
    CtIntegrand {
        single: vec![(0, tp(&[1])), (1, tp(&[0, 1])), (2, tp(&[1]))],
        pair: pair_kernel(),
    }
}

fn psibar_integrand() -> CtIntegrand {
    CtIntegrand {
        single: vec![(0, tp(&[1]))],
        pair: pair_kernel(),
    }
}

fn exponents(indices: &[i64]) -> Vec<i64> {
    indices.iter().map(|a| a - 1).collect()
}

/// The constant-term formula for ψ at an arbitrary integer tuple; entries need
/// not be increasing or in range.
pub fn psi_hom_tuple(indices: &[i64]) -> TauPoly {
    psi_integrand().coefficient(&exponents(indices))
}

/// The constant-term formula for ψ̄ at an arbitrary integer tuple.
pub fn psibar_hom_tuple(indices: &[i64]) -> TauPoly {
    psibar_integrand().coefficient(&exponents(indices))
}

/// ψ̄ at many tuples of the same length, sharing the elimination work.
pub fn psibar_hom_tuples(tuples: &[Vec<i64>]) -> Vec<TauPoly> {
    let targets: Vec<Vec<i64>> = tuples.iter().map(|t| exponents(t)).collect();
    psibar_integrand().coefficients(&targets)
}

fn as_i64(indices: &[usize]) -> Vec<i64> {
    indices.iter().map(|&a| a as i64).collect()
}

pub fn psi_hom(a: &ComponentIndex) -> Result<TauPoly> {
    if a.kind() != IndexKind::Down {
        return Err(Error::InvalidIndex(format!(
            "{a} is not a down-arrow index"
        )));
    }
    Ok(psi_hom_tuple(&as_i64(a.indices())))
}

pub fn psibar_hom(b: &ComponentIndex) -> Result<TauPoly> {
    if b.kind() != IndexKind::Up {
        return Err(Error::InvalidIndex(format!("{b} is not an up-arrow index")));
    }
    Ok(psibar_hom_tuple(&as_i64(b.indices())))
}

/// All homogeneous components for a given n, in lexicographic index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTable {
    n: usize,
    entries: Vec<(ComponentIndex, TauPoly)>,
}

impl ComponentTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(ComponentIndex, TauPoly)] {
        &self.entries
    }

    pub fn get(&self, a: &[usize]) -> Option<&TauPoly> {
        self.entries
            .iter()
            .find(|(idx, _)| idx.indices() == a)
            .map(|(_, p)| p)
    }

    /// The table with τ specialized.
    pub fn at_tau(&self, tau: &Rat) -> Vec<(ComponentIndex, Rat)> {
        self.entries
            .iter()
            .map(|(idx, p)| (idx.clone(), p.eval(tau)))
            .collect()
    }

    /// The τ-specialized table as a vector in the sector with n down arrows.
    pub fn to_spin_vector(&self, tau: &Rat) -> SpinVector {
        let basis = SectorBasis::new(2 * self.n + 1, self.n);
        let mut v = SpinVector::zeros_on(basis);
        for (idx, p) in &self.entries {
            v.add_at(mask_of(idx.indices()), &ExactScalar::Rat(p.eval(tau)));
        }
        v
    }
}

/// ψ_a for every down-arrow index a at size N = 2n+1.
pub fn psi_table(n: usize) -> ComponentTable {
    let indices = ComponentIndex::all_down(n);
    let targets: Vec<Vec<i64>> = indices
        .iter()
        .map(|a| exponents(&as_i64(a.indices())))
        .collect();
    let values = psi_integrand().coefficients(&targets);
    ComponentTable {
        n,
        entries: indices.into_iter().zip(values).collect(),
    }
}

fn epsilon_vectors(len: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u64..1 << len).map(move |bits| (0..len).map(|k| (bits >> k & 1) as i64).collect())
}

/// Σ_{ε_2..ε_n} τ^{Σε} ψ^{(n−1)}_{a_2−1−ε_2, …, a_n−1−ε_n}, for a_1 = 1.
pub fn recurrence_rhs(a: &[i64]) -> Result<TauPoly> {
    if a.first() != Some(&1) {
        return Err(Error::InvalidIndex(format!("{a:?} does not start with 1")));
    }
    let tail = &a[1..];
    Ok(epsilon_vectors(tail.len())
        .map(|eps| {
            let idx: Vec<i64> = tail.iter().zip(&eps).map(|(x, e)| x - 1 - e).collect();
            let weight: i64 = eps.iter().sum();
            psi_hom_tuple(&idx).shift(weight as usize)
        })
        .sum())
}

/// Σ_{ε_2..ε_n} ψ^{(n−1)}_{a_2−a_1−ε_2, …, a_n−a_1−ε_n} at τ = 1.
pub fn rotated_recurrence_rhs(a: &[i64]) -> Result<Rat> {
    let Some(&a1) = a.first() else {
        return Err(Error::InvalidIndex("empty index".into()));
    };
    let tail = &a[1..];
    let mut total = Rat::from(0);
    for eps in epsilon_vectors(tail.len()) {
        let idx: Vec<i64> = tail.iter().zip(&eps).map(|(x, e)| x - a1 - e).collect();
        total = &total + &Rat::from(psi_hom_tuple(&idx).at_one());
    }
    Ok(total)
}
