//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::One;
use qkz_core::ExactScalar;

/// Π z_i (i ≤ n) · Π_{i<j≤n}(q z_i − q⁻¹ z_j) · Π_{n<i<j}(q z_i − q⁻¹ z_j).
pub fn base_component(n: usize, z: &[ExactScalar], q: &ExactScalar) -> ExactScalar {
    let qi = q.checked_inv().unwrap();
    let bond = |i: usize, j: usize| &(q * &z[i]) - &(&qi * &z[j]);
    let mut acc = ExactScalar::one();
    for i in 0..n {
        acc *= &z[i];
        for j in i + 1..n {
            acc *= &bond(i, j);
        }
    }
    for i in n..z.len() {
        for j in i + 1..z.len() {
            acc *= &bond(i, j);
        }
    }
    acc
}

/// Builds Ψ_a by raising one index at a time from the base component:
/// Ψ_{…,i+1,…}(z) = (q z_i − q⁻¹ z_{i+1})/(z_{i+1} − z_i) Ψ_{…,i,…}(τ_i z)
///                 − (q − q⁻¹) z_{i+1}/(z_{i+1} − z_i) Ψ_{…,i,…}(z).
pub fn increment_oracle(a: &[usize], z: &[ExactScalar], q: &ExactScalar) -> ExactScalar {
    let n = a.len();
    let Some(l) = (0..n).find(|&l| a[l] > l + 1 && (l == 0 || a[l - 1] < a[l] - 1)) else {
        return base_component(n, z, q);
    };
    let i = a[l] - 1;
    let mut lower = a.to_vec();
    lower[l] = i;
    let mut swapped = z.to_vec();
    swapped.swap(i - 1, i);
    let (zi, zj) = (&z[i - 1], &z[i]);
    let qi = q.checked_inv().unwrap();
    let gap = zj - zi;
    let first = (&(q * zi) - &(&qi * zj)).checked_div(&gap).unwrap();
    let second = (&(q - &qi) * zj).checked_div(&gap).unwrap();
    &(&first * &increment_oracle(&lower, &swapped, q))
        - &(&second * &increment_oracle(&lower, z, q))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).product()
}

fn choose(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// A(n) from the factorial-ratio product, one factor pair at a time.
pub fn asm_oracle(n: u64) -> BigInt {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for k in 0..n {
        num *= factorial(3 * k + 1);
        den *= factorial(n + k);
    }
    num / den
}

/// (A(n,1), …, A(n,n)) from the binomial formula.
pub fn refined_oracle(n: u64) -> Vec<BigInt> {
    (1..=n)
        .map(|r| {
            asm_oracle(n) * choose(n + r - 2, n - 1) * choose(2 * n - 1 - r, n - 1)
                / choose(3 * n - 2, n - 1)
        })
        .collect()
}

/// Coefficients, lowest first, of Π (a_k w − b_k).
pub fn expand_linear_factors(factors: &[(i64, i64)]) -> Vec<ExactScalar> {
    let mut poly = vec![ExactScalar::one()];
    for &(a, b) in factors {
        let mut next = vec![ExactScalar::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += &(c * &ExactScalar::from_int(a));
            next[k] -= &(c * &ExactScalar::from_int(b));
        }
        poly = next;
    }
    poly
}

pub fn horner(p: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
    p.iter()
        .rev()
        .fold(ExactScalar::zero(), |acc, c| &(&acc * x) + c)
}

pub fn derivative(p: &[ExactScalar]) -> Vec<ExactScalar> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &ExactScalar::from_int(k as i64))
        .collect()
}
