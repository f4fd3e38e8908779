//! Temperley–Lieb loop model on 2n points of a circle: link patterns, the
//! generators e_i, the ground state at τ = 1, and the change-of-basis
//! coefficients to the spin components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{normalize_sign, sparse_integer_kernel};
use crate::polyring::TauPoly;
use crate::qkz::json::big_number;

/// Noncrossing perfect matching of {1..2n}, stored as (π(1), …, π(2n)).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    pairing: Vec<usize>,
}

impl LinkPattern {
    pub fn new(pairing: Vec<usize>) -> Result<Self> {
        let size = pairing.len();
        if size == 0 || size % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "pattern size {size} is not even"
            )));
        }
        for (k, &j) in pairing.iter().enumerate() {
            let i = k + 1;
            if j < 1 || j > size || j == i || pairing[j - 1] != i {
                return Err(Error::InvalidArgument(format!(
                    "{pairing:?} is not a fixed-point-free involution"
                )));
            }
        }
        let p = LinkPattern { pairing };
        if !p.is_noncrossing() {
            return Err(Error::InvalidArgument(format!(
                "{:?} has crossing arches",
                p.pairing
            )));
        }
        Ok(p)
    }

    /// Pattern from its list of arches.
    pub fn from_arches(size: usize, arches: &[(usize, usize)]) -> Result<Self> {
        let mut pairing = vec![0; size];
        for &(i, j) in arches {
            if i < 1 || j < 1 || i > size || j > size {
                return Err(Error::InvalidArgument(format!(
                    "arch ({i}, {j}) out of range"
                )));
            }
            pairing[i - 1] = j;
            pairing[j - 1] = i;
        }
        LinkPattern::new(pairing)
    }

    pub fn size(&self) -> usize {
        self.pairing.len()
    }

    pub fn n(&self) -> usize {
        self.pairing.len() / 2
    }

    /// π(i), 1-based.
    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i - 1]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Arches (i, π(i)) with i < π(i), by opening.
    pub fn arches(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairing
            .iter()
            .enumerate()
            .map(|(k, &j)| (k + 1, j))
            .filter(|(i, j)| i < j)
    }

    pub fn is_noncrossing(&self) -> bool {
        let arches: Vec<(usize, usize)> = self.arches().collect();
        !arches
            .iter()
            .any(|&(i, pi)| arches.iter().any(|&(j, pj)| i < j && j < pi && pi < pj))
    }

    /// Rotate every point forward by `shift` (mod 2n).
    pub fn rotate(&self, shift: usize) -> LinkPattern {
        let size = self.size();
        let map = |i: usize| (i - 1 + shift) % size + 1;
        let mut pairing = vec![0; size];
        for (k, &j) in self.pairing.iter().enumerate() {
            pairing[map(k + 1) - 1] = map(j);
        }
        LinkPattern { pairing }
    }

    /// The mirror image i ↦ 2n + 1 − i.
    pub fn reflect(&self) -> LinkPattern {
        let size = self.size();
        let mut pairing = vec![0; size];
        for (k, &j) in self.pairing.iter().enumerate() {
            pairing[size - k - 1] = size + 1 - j;
        }
        LinkPattern { pairing }
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.arches() {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All C_n link patterns of 2n points, lexicographic in (π(1), …, π(2n)).
pub fn enumerate_link_patterns(n: usize) -> Vec<LinkPattern> {
    fn fill(
        lo: usize,
        hi: usize,
        pairing: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        rest: &mut Vec<(usize, usize)>,
    ) {
        // match points lo..=hi, then continue with the pending intervals in `rest`
        if lo > hi {
            match rest.pop() {
                Some((a, b)) => {
                    fill(a, b, pairing, out, rest);
                    rest.push((a, b));
                }
                None => out.push(pairing.clone()),
            }
            return;
        }
        let mut j = lo + 1;
        while j <= hi {
            pairing[lo - 1] = j;
            pairing[j - 1] = lo;
            rest.push((j + 1, hi));
            fill(lo + 1, j - 1, pairing, out, rest);
            rest.pop();
            j += 2;
        }
    }
    let mut out = Vec::new();
    let mut pairing = vec![0; 2 * n];
    fill(1, 2 * n, &mut pairing, &mut out, &mut Vec::new());
    out.sort();
    out.into_iter()
        .map(|pairing| LinkPattern { pairing })
        .collect()
}

/// e_i acting on π, indices mod 2n. Returns the new pattern and whether a
/// closed loop (weight τ) was produced.
pub fn e_apply(i: usize, pi: &LinkPattern) -> (LinkPattern, bool) {
    let size = pi.size();
    let j = i % size + 1;
    let a = pi.partner(i);
    if a == j {
        return (pi.clone(), true);
    }
    let b = pi.partner(j);
    let mut pairing = pi.pairing.clone();
    pairing[i - 1] = j;
    pairing[j - 1] = i;
    pairing[a - 1] = b;
    pairing[b - 1] = a;
    (LinkPattern { pairing }, false)
}

/// Formal combination of link patterns with coefficients in Z[τ].
pub type TlVector = BTreeMap<LinkPattern, TauPoly>;

/// e_i extended linearly, with closed loops weighted by τ.
pub fn e_apply_vector(i: usize, v: &TlVector) -> TlVector {
    let mut out = TlVector::new();
    for (pi, c) in v {
        let (p, closed) = e_apply(i, pi);
        let c = if closed { c.shift(1) } else { c.clone() };
        let slot = out.entry(p).or_insert_with(TauPoly::zero);
        *slot += &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Number of even openings: even i with i < π(i).
pub fn even_openings(pi: &LinkPattern) -> usize {
    pi.arches().filter(|(i, _)| i % 2 == 0).count()
}

/// Exact ground state of H_TL = Σ e_i at τ = 1, as coprime positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopVector {
    n: usize,
    patterns: Vec<LinkPattern>,
    values: Vec<BigInt>,
}

impl LoopVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinkPattern, &BigInt)> {
        self.patterns.iter().zip(&self.values)
    }

    pub fn get(&self, pi: &LinkPattern) -> Option<&BigInt> {
        self.patterns
            .binary_search(pi)
            .ok()
            .map(|k| &self.values[k])
    }

    pub fn total(&self) -> BigInt {
        self.values.iter().sum()
    }

    /// The patterns on which the minimum is attained.
    pub fn minimal_patterns(&self) -> Vec<&LinkPattern> {
        let Some(min) = self.values.iter().min() else {
            return Vec::new();
        };
        self.iter()
            .filter(|(_, v)| *v == min)
            .map(|(p, _)| p)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "patterns": self.patterns.iter().map(|p| p.pairing().to_vec()).collect::<Vec<_>>(),
            "values": self.values.iter().map(big_number).collect::<Vec<_>>(),
        })
    }
}

/// The rotation orbit of (1,2) with a rainbow over 3..2n: the smallest components.
pub fn smallest_family(n: usize) -> Vec<LinkPattern> {
    let size = 2 * n;
    let mut arches = vec![(1, 2)];
    for k in 0..n - 1 {
        arches.push((3 + k, size - k));
    }
    let base = LinkPattern::from_arches(size, &arches).expect("nested arches do not cross");
    let mut orbit: Vec<LinkPattern> = (0..size).map(|s| base.rotate(s)).collect();
    orbit.sort();
    orbit.dedup();
    orbit
}

/// Kernel of (H_TL − 2n) at τ = 1, normalized to coprime positive integers.
///
/// Fails if the kernel is not one-dimensional, if an entry is not positive,
/// or if the minimum is not 1 on exactly the expected family of patterns.
pub fn loop_ground_state(n: usize) -> Result<LoopVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let patterns = enumerate_link_patterns(n);
    let index: HashMap<&LinkPattern, usize> =
        patterns.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let dim = patterns.len();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); dim];
    for (col, pi) in patterns.iter().enumerate() {
        *rows[col].entry(col).or_default() -= BigInt::from(2 * n);
        for i in 1..=2 * n {
            let (p, _) = e_apply(i, pi);
            *rows[index[&p]].entry(col).or_default() += BigInt::one();
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let mut kernel = sparse_integer_kernel(dim, rows);
    if kernel.len() != 1 {
        return Err(Error::Internal(format!(
            "expected a one-dimensional ground state, kernel has dimension {}",
            kernel.len()
        )));
    }
    let mut values = kernel.pop().expect("one vector");
    normalize_sign(&mut values);
    if values.iter().any(|v| v <= &BigInt::zero()) {
        return Err(Error::Internal(
            "ground state is not strictly positive".into(),
        ));
    }
    let v = LoopVector {
        n,
        patterns,
        values,
    };
    let min = v.values.iter().min().cloned().unwrap_or_default();
    let minimal: Vec<LinkPattern> = v.minimal_patterns().into_iter().cloned().collect();
    if !min.is_one() || minimal != smallest_family(n) {
        return Err(Error::Internal(format!(
            "smallest ground-state entries are {min} on {minimal:?}, not 1 on the expected family"
        )));
    }
    Ok(v)
}

/// ξ_{(1,a)} = Σ_{π(1)=a} ξ_π.
pub fn partial_sum_xi(a: usize, xi: &LoopVector) -> Result<BigInt> {
    if a % 2 == 1 || a < 2 || a > 2 * xi.n {
        return Err(Error::InvalidArgument(format!(
            "point 1 can only pair with an even point in [2, {}], got {a}",
            2 * xi.n
        )));
    }
    Ok(xi
        .iter()
        .filter(|(p, _)| p.partner(1) == a)
        .map(|(_, v)| v)
        .sum())
}

/// Σ_{π(i) < i} ξ_π: the components with a closing at i.
pub fn closing_sum(i: usize, xi: &LoopVector) -> BigInt {
    xi.iter()
        .filter(|(p, _)| p.partner(i) < i)
        .map(|(_, v)| v)
        .sum()
}

/// U_k with U_{−1} = 0, U_0 = 1, U_{k+1} = −τU_k − U_{k−1}; below −1 the
/// same recurrence run backwards gives U_{−k−2} = −U_k.
pub fn chebyshev_u(k: i64) -> TauPoly {
    if k < -1 {
        return -chebyshev_u(-k - 2);
    }
    let (mut prev, mut cur) = (TauPoly::zero(), TauPoly::one());
    if k == -1 {
        return prev;
    }
    for _ in 0..k {
        let next = &(-&cur.shift(1)) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// C^π_b = Π_{arches i<π(i)} U_{#{ℓ: i ≤ b_ℓ < π(i)} − (π(i) − i + 1)/2}.
pub fn coeff_c(b: &[usize], pi: &LinkPattern) -> TauPoly {
    pi.arches()
        .map(|(i, j)| {
            let inside = b.iter().filter(|&&x| i <= x && x < j).count() as i64;
            chebyshev_u(inside - (j - i).div_ceil(2) as i64)
        })
        .fold(TauPoly::one(), |acc, u| &acc * &u)
}
