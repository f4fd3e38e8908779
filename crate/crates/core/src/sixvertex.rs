//! Six-vertex R-matrix, the exchange and rotation operators of the qKZ
//! system, the inhomogeneous transfer matrix and the XXZ Hamiltonian, all
//! applied matrix-free on a fixed-magnetization sector.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qkz::spin::{SpinMask, SpinVector};
use crate::scalar::ExactScalar;

/// Boltzmann weights of the six vertices at spectral ratio x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub c: ExactScalar,
    pub c_prime: ExactScalar,
}

/// a = (qx − q⁻¹)/(q − q⁻¹x), b = (x − 1)/(q − q⁻¹x),
/// c = (q − q⁻¹)x/(q − q⁻¹x), c' = (q − q⁻¹)/(q − q⁻¹x).
pub fn weights(x: &ExactScalar, q: &ExactScalar) -> Result<Weights> {
    let qi = q.checked_inv()?;
    let den = q - &(&qi * x);
    if den.is_zero() {
        return Err(Error::Degenerate(format!(
            "R-matrix weights have a pole at x = {x} for q = {q}"
        )));
    }
    let inv = den.checked_inv()?;
    let qq = q - &qi;
    Ok(Weights {
        a: &(&(q * x) - &qi) * &inv,
        b: &(x - &ExactScalar::one()) * &inv,
        c: &(&qq * x) * &inv,
        c_prime: &qq * &inv,
    })
}

/// R(x) in the basis ↑↑, ↑↓, ↓↑, ↓↓.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub x: ExactScalar,
    pub q: ExactScalar,
    pub weights: Weights,
}

pub fn r_matrix(x: &ExactScalar, q: &ExactScalar) -> Result<RMatrix> {
    Ok(RMatrix {
        x: x.clone(),
        q: q.clone(),
        weights: weights(x, q)?,
    })
}

pub type Mat = Vec<Vec<ExactScalar>>;

impl RMatrix {
    pub fn matrix(&self) -> Mat {
        let Weights { a, b, c, c_prime } = self.weights.clone();
        let o = ExactScalar::zero();
        vec![
            vec![a.clone(), o.clone(), o.clone(), o.clone()],
            vec![o.clone(), b.clone(), c, o.clone()],
            vec![o.clone(), c_prime, b, o.clone()],
            vec![o.clone(), o.clone(), o, a],
        ]
    }

    /// Ř = P·R.
    pub fn check_matrix(&self) -> Mat {
        let r = self.matrix();
        vec![r[0].clone(), r[2].clone(), r[1].clone(), r[3].clone()]
    }

    /// Δ = (a² + b² − c c')/(2ab).
    pub fn anisotropy(&self) -> Result<ExactScalar> {
        let Weights { a, b, c, c_prime } = &self.weights;
        let num = &(&(a * a) + &(b * b)) - &(c * c_prime);
        num.checked_div(&(&ExactScalar::from_int(2) * &(a * b)))
    }
}

pub fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let n = x.len();
    let m = y[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..y.len())
                        .filter(|&k| !x[i][k].is_zero() && !y[k][j].is_zero())
                        .map(|k| &x[i][k] * &y[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        ExactScalar::one()
                    } else {
                        ExactScalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Embed a two-site matrix on sites (j, k) of three spins; spin s of site t
/// is bit (2 − t) of the 8-dimensional index, ↓ = 1.
fn embed3(r: &Mat, j: usize, k: usize) -> Mat {
    let bit = |idx: usize, t: usize| (idx >> (2 - t)) & 1;
    let mut out = vec![vec![ExactScalar::zero(); 8]; 8];
    for col in 0..8 {
        let sc = bit(col, j) * 2 + bit(col, k);
        for row in 0..8 {
            let others_match = (0..3)
                .filter(|&t| t != j && t != k)
                .all(|t| bit(row, t) == bit(col, t));
            if others_match {
                let sr = bit(row, j) * 2 + bit(row, k);
                out[row][col] = r[sr][sc].clone();
            }
        }
    }
    out
}

/// R12(x1/x2) R13(x1/x3) R23(x2/x3) = R23(x2/x3) R13(x1/x3) R12(x1/x2).
pub fn yang_baxter_check(
    x1: &ExactScalar,
    x2: &ExactScalar,
    x3: &ExactScalar,
    q: &ExactScalar,
) -> Result<bool> {
    let r12 = embed3(&r_matrix(&x1.checked_div(x2)?, q)?.matrix(), 0, 1);
    let r13 = embed3(&r_matrix(&x1.checked_div(x3)?, q)?.matrix(), 0, 2);
    let r23 = embed3(&r_matrix(&x2.checked_div(x3)?, q)?.matrix(), 1, 2);
    let lhs = mat_mul(&mat_mul(&r12, &r13), &r23);
    let rhs = mat_mul(&mat_mul(&r23, &r13), &r12);
    Ok(lhs == rhs)
}

/// Ř(x) Ř(1/x) = 1.
pub fn unitarity_check(x: &ExactScalar, q: &ExactScalar) -> Result<bool> {
    let a = r_matrix(x, q)?.check_matrix();
    let b = r_matrix(&x.checked_inv()?, q)?.check_matrix();
    Ok(mat_mul(&a, &b) == identity(4))
}

fn down_at(mask: SpinMask, site: usize) -> bool {
    mask >> (site - 1) & 1 == 1
}

/// Ř_{i,i+1}(x) acting on sites i and i+1 (1-based).
pub fn apply_rcheck(
    v: &SpinVector,
    i: usize,
    x: &ExactScalar,
    q: &ExactScalar,
) -> Result<SpinVector> {
    let n = v.sites();
    if i < 1 || i >= n {
        return Err(Error::InvalidArgument(format!(
            "no bond ({i}, {}) on {n} sites",
            i + 1
        )));
    }
    let w = weights(x, q)?;
    let pair = (1 << (i - 1)) | (1 << i);
    let mut out = SpinVector::zeros_on(v.basis().clone());
    for (m, val) in v.iter_masks() {
        if val.is_zero() {
            continue;
        }
        match (down_at(m, i), down_at(m, i + 1)) {
            (false, true) => {
                out.add_at(m, &(&w.c_prime * val));
                out.add_at(m ^ pair, &(&w.b * val));
            }
            (true, false) => {
                out.add_at(m, &(&w.c * val));
                out.add_at(m ^ pair, &(&w.b * val));
            }
            _ => out.add_at(m, &(&w.a * val)),
        }
    }
    Ok(out)
}

/// Left rotation σ of the tensor factors: site 1 moves to site N.
pub fn rotate(v: &SpinVector) -> SpinVector {
    let n = v.sites();
    let mut out = SpinVector::zeros_on(v.basis().clone());
    for (m, val) in v.iter_masks() {
        let r = (m >> 1) | ((m & 1) << (n - 1));
        out.add_at(r, val);
    }
    out
}

/// D on the last factor: q^{3n+3} when site N carries a down arrow, q^{3n} otherwise, N = 2n+1.
pub fn apply_d(v: &SpinVector, q: &ExactScalar) -> Result<SpinVector> {
    let sites = v.sites();
    if sites.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "D needs an odd size, got {sites}"
        )));
    }
    let n = ((sites - 1) / 2) as i64;
    let up = q.pow(3 * n)?;
    let down = q.pow(3 * n + 3)?;
    let mut out = SpinVector::zeros_on(v.basis().clone());
    for (m, val) in v.iter_masks() {
        let f = if down_at(m, sites) { &down } else { &up };
        out.add_at(m, &(f * val));
    }
    Ok(out)
}

/// S_i = Ř_{i,i+1}(s z_i/z_{i+1})⋯Ř_{N−1,N}(s z_i/z_N) · D σ · Ř_{1,2}(z_i/z_1)⋯Ř_{i−1,i}(z_i/z_{i−1}), s = q⁶.
pub fn scattering_apply(
    v: &SpinVector,
    i: usize,
    z: &[ExactScalar],
    q: &ExactScalar,
) -> Result<SpinVector> {
    let n = v.sites();
    if z.len() != n || i < 1 || i > n {
        return Err(Error::InvalidArgument(format!(
            "site {i} with {} parameters on {n} sites",
            z.len()
        )));
    }
    let s = q.pow(6)?;
    let zi = &z[i - 1];
    let mut w = v.clone();
    for j in (1..i).rev() {
        w = apply_rcheck(&w, j, &zi.checked_div(&z[j - 1])?, q)?;
    }
    w = apply_d(&rotate(&w), q)?;
    let szi = &s * zi;
    for j in (i..n).rev() {
        w = apply_rcheck(&w, j, &szi.checked_div(&z[j])?, q)?;
    }
    Ok(w)
}

/// T(y|z) = tr_0 R_{0,1}(y/z_1)⋯R_{0,N}(y/z_N), applied by threading the
/// auxiliary arrow through the sites.
///
/// When the auxiliary arrow equals the incoming site arrow it either passes
/// straight (weight a) or both turn (weight c' from ↑, c from ↓); otherwise
/// both pass (weight b).
pub fn transfer_apply(
    v: &SpinVector,
    y: &ExactScalar,
    z: &[ExactScalar],
    q: &ExactScalar,
) -> Result<SpinVector> {
    let n = v.sites();
    if z.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} spectral parameters for {n} sites",
            z.len()
        )));
    }
    let ws = z
        .iter()
        .map(|zi| weights(&y.checked_div(zi)?, q))
        .collect::<Result<Vec<_>>>()?;
    let contributions: Vec<Vec<(SpinMask, ExactScalar)>> = v
        .iter_masks()
        .collect::<Vec<_>>()
        .par_iter()
        .filter(|(_, val)| !val.is_zero())
        .map(|&(nu, val)| {
            let mut out = Vec::new();
            for start in [false, true] {
                let mut paths: HashMap<(bool, SpinMask), ExactScalar> = HashMap::new();
                paths.insert((start, 0), val.clone());
                for (site, w) in ws.iter().enumerate() {
                    let incoming = nu >> site & 1 == 1;
                    let mut next: HashMap<(bool, SpinMask), ExactScalar> = HashMap::new();
                    let mut push = |key: (bool, SpinMask), x: ExactScalar| {
                        if !x.is_zero() {
                            *next.entry(key).or_insert_with(ExactScalar::zero) += &x;
                        }
                    };
                    for ((aux, mu), wt) in paths {
                        let bit = |down: bool| if down { 1 << site } else { 0 };
                        if aux == incoming {
                            push((aux, mu | bit(aux)), &wt * &w.a);
                            let turn = if aux { &w.c } else { &w.c_prime };
                            push((!aux, mu | bit(!aux)), &wt * turn);
                        } else {
                            push((aux, mu | bit(incoming)), &wt * &w.b);
                        }
                    }
                    paths = next;
                }
                out.extend(
                    paths
                        .into_iter()
                        .filter(|((aux, _), _)| *aux == start)
                        .map(|((_, mu), wt)| (mu, wt)),
                );
            }
            out
        })
        .collect();
    let mut result = SpinVector::zeros_on(v.basis().clone());
    for (mu, wt) in contributions.into_iter().flatten() {
        result.add_at(mu, &wt);
    }
    Ok(result)
}

/// (−1)^N (q^{−2N+K} + q^{−N−K}): the eigenvalue of T(0|z) on the sector with K down arrows.
pub fn transfer_zero_eigenvalue(sites: usize, down: usize, q: &ExactScalar) -> Result<ExactScalar> {
    let (n, k) = (sites as i64, down as i64);
    let sum = &q.pow(-2 * n + k)? + &q.pow(-n - k)?;
    Ok(if sites % 2 == 1 { -sum } else { sum })
}

/// T(y1) T(y2) v = T(y2) T(y1) v.
pub fn commuting_transfer_check(
    v: &SpinVector,
    y1: &ExactScalar,
    y2: &ExactScalar,
    z: &[ExactScalar],
    q: &ExactScalar,
) -> Result<bool> {
    let a = transfer_apply(&transfer_apply(v, y2, z, q)?, y1, z, q)?;
    let b = transfer_apply(&transfer_apply(v, y1, z, q)?, y2, z, q)?;
    Ok(a == b)
}

/// H = −½ Σ_i [σˣσˣ + σʸσʸ + Δ σᶻσᶻ]_{i,i+1}, periodic.
pub fn xxz_apply(v: &SpinVector, delta: &ExactScalar) -> SpinVector {
    let n = v.sites();
    let half_delta = delta * &ExactScalar::Rat(crate::scalar::Rat::new(1, 2).expect("nonzero"));
    let minus_one = ExactScalar::from_int(-1);
    let mut out = SpinVector::zeros_on(v.basis().clone());
    for (m, val) in v.iter_masks() {
        if val.is_zero() {
            continue;
        }
        let mut zz: i64 = 0;
        for i in 1..=n {
            let j = i % n + 1;
            if down_at(m, i) == down_at(m, j) {
                zz += 1;
            } else {
                zz -= 1;
                out.add_at(m ^ (1 << (i - 1)) ^ (1 << (j - 1)), &(&minus_one * val));
            }
        }
        let diag = -&(&half_delta * &ExactScalar::from_int(zz));
        out.add_at(m, &(&diag * val));
    }
    out
}
