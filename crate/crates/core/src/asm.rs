//! Alternating-sign-matrix counts and the refined identities relating them to
//! the spin-chain and loop-model components.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::loopmodel::{even_openings, LoopVector};
use crate::polyring::{CtIntegrand, TauPoly};
use crate::qkz::psi_hom_tuple;
use crate::scalar::Rat;

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A(n) = Π_{k=0}^{n−1} (3k+1)!/(n+k)!.
pub fn asm_count(n: u64) -> BigInt {
    let num = (0..n).fold(BigInt::one(), |acc, k| acc * factorial(3 * k + 1));
    let den = (0..n).fold(BigInt::one(), |acc, k| acc * factorial(n + k));
    num / den
}

/// A(n, r) = A(n)·C(n+r−2, n−1)·C(2n−1−r, n−1)/C(3n−2, n−1), 1 ≤ r ≤ n.
pub fn asm_refined(n: u64, r: u64) -> Result<BigInt> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "A({n}, {r}) needs 1 <= r <= n"
        )));
    }
    Ok(
        asm_count(n) * binomial(n + r - 2, n - 1) * binomial(2 * n - 1 - r, n - 1)
            / binomial(3 * n - 2, n - 1),
    )
}

/// (A(n,1), …, A(n,n)).
pub fn asm_refined_row(n: u64) -> Vec<BigInt> {
    (1..=n)
        .map(|r| asm_refined(n, r).expect("r in range"))
        .collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Σ_ε α^{Σε} ψ^{(n−1)}_{1+ε_1, 3+ε_2, …, 2n−3+ε_{n−1}} at τ = 1, as
/// coefficients in ascending powers of α.
pub fn refined_sum_poly(n: usize) -> Result<Vec<BigInt>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let m = n - 1;
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for bits in 0u64..1 << m {
        let idx: Vec<i64> = (0..m)
            .map(|l| 2 * l as i64 + 1 + (bits >> l & 1) as i64)
            .collect();
        coeffs[bits.count_ones() as usize] += psi_hom_tuple(&idx).at_one();
    }
    Ok(trim(coeffs))
}

fn alpha_pair_kernel() -> Vec<(u32, u32, TauPoly)> {
    // (u_m − u_ℓ)(1 + u_m + u_ℓu_m)
    [
        (0, 1, 1),
        (0, 2, 1),
        (1, 2, 1),
        (1, 0, -1),
        (1, 1, -1),
        (2, 1, -1),
    ]
    .into_iter()
    .map(|(a, b, c)| (a, b, TauPoly::constant(c)))
    .collect()
}

/// Coefficient lists in α of the two constant-term representations: the
/// (n−1)-fold one with (1+u+u²)(1+αu) per variable, and the n-fold one with
/// (1+αu) per variable, both read at exponents 2ℓ−1.
///
/// α rides in the formal coefficient slot; the loop weight is already 1.
pub fn alpha_integral_reps(n: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let first = CtIntegrand {
        single: vec![
            (0, TauPoly::from_i64s(&[1])),
            (1, TauPoly::from_i64s(&[1, 1])),
            (2, TauPoly::from_i64s(&[1, 1])),
            (3, TauPoly::from_i64s(&[0, 1])),
        ],
        pair: alpha_pair_kernel(),
    };
    let second = CtIntegrand {
        single: vec![
            (0, TauPoly::from_i64s(&[1])),
            (1, TauPoly::from_i64s(&[0, 1])),
        ],
        pair: alpha_pair_kernel(),
    };
    let targets = |k: usize| (1..=k).map(|l| 2 * l as i64 - 1).collect::<Vec<_>>();
    Ok((
        first.coefficient(&targets(n - 1)).coeffs().to_vec(),
        second.coefficient(&targets(n)).coeffs().to_vec(),
    ))
}

/// The (n−1)-fold representation gives Σ α^{r−1}A(n,r), the n-fold one Σ α^r A(n,r).
pub fn verify_alpha_integral_reps(n: usize) -> Result<bool> {
    let (first, second) = alpha_integral_reps(n)?;
    let row = asm_refined_row(n as u64);
    let mut shifted = vec![BigInt::zero()];
    shifted.extend(row.iter().cloned());
    Ok(first == row && second == shifted)
}

fn eval_poly(coeffs: &[BigInt], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::from(0), |acc, c| &(&acc * x) + &Rat::from(c.clone()))
}

/// (1/ψ^{(n−1)}_{1,3,…,2n−3}) Σ_ε α^{Σε}ψ^{(n−1)}_{1+ε_1,…} = (1/A(n−1)) Σ_r α^{r−1}A(n,r) at τ = 1.
pub fn verify_prerefined_identity(n: usize, alpha: &Rat) -> Result<bool> {
    let lhs_poly = refined_sum_poly(n)?;
    let odd: Vec<i64> = (0..n as i64 - 1).map(|l| 2 * l + 1).collect();
    let norm = Rat::from(psi_hom_tuple(&odd).at_one());
    let lhs = eval_poly(&lhs_poly, alpha).checked_div(&norm)?;
    let rhs = eval_poly(&asm_refined_row(n as u64), alpha)
        .checked_div(&Rat::from(asm_count(n as u64 - 1)))?;
    Ok(lhs == rhs)
}

/// Σ of ξ_π grouped by the number of even openings: entry r−1 is the sum over
/// patterns with r−1 even openings.
pub fn loop_refined_sums(xi: &LoopVector) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); xi.n()];
    for (p, v) in xi.iter() {
        sums[even_openings(p)] += v;
    }
    sums
}
