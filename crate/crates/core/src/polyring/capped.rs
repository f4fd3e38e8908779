use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyring::TauPoly;

/// Sparse polynomial in k variables with τ-polynomial coefficients, truncated
/// above a per-variable degree cap.
///
/// Truncation is sound as long as only coefficients at exponents within the
/// caps are ever read back, since every factor multiplied in has nonnegative
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CappedPoly {
    caps: Vec<u32>,
    terms: HashMap<Vec<u32>, TauPoly>,
}

impl CappedPoly {
    pub fn zero(caps: Vec<u32>) -> Self {
        CappedPoly {
            caps,
            terms: HashMap::new(),
        }
    }

    pub fn one(caps: Vec<u32>) -> Self {
        let k = caps.len();
        let mut p = CappedPoly::zero(caps);
        p.terms.insert(vec![0; k], TauPoly::one());
        p
    }

    /// Build from (exponents, coefficient) pairs; terms beyond the caps are dropped.
    pub fn from_terms<I>(caps: Vec<u32>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, TauPoly)>,
    {
        let mut p = CappedPoly::zero(caps);
        for (e, c) in terms {
            assert_eq!(e.len(), p.caps.len(), "exponent vector has wrong length");
            if p.within_caps(&e) {
                p.add_term(e, &c);
            }
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TauPoly)> {
        self.terms.iter()
    }

    fn within_caps(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.caps).all(|(x, c)| x <= c)
    }

    fn add_term(&mut self, e: Vec<u32>, c: &TauPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// Truncated product. Both operands must carry identical caps.
    pub fn capped_multiply(&self, other: &CappedPoly) -> Result<CappedPoly> {
        if self.caps != other.caps {
            return Err(Error::CapMismatch {
                left: self.caps.clone(),
                right: other.caps.clone(),
            });
        }
        let mut out = CappedPoly::zero(self.caps.clone());
        let mut e = vec![0u32; self.caps.len()];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for (k, slot) in e.iter_mut().enumerate() {
                    *slot = ea[k] + eb[k];
                    if *slot > self.caps[k] {
                        continue 'inner;
                    }
                }
                out.add_term(e.clone(), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn extract_coefficient(&self, exponents: &[u32]) -> Result<TauPoly> {
        if exponents.len() != self.caps.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                self.caps.len(),
                exponents.len()
            )));
        }
        for (var, (&exponent, &cap)) in exponents.iter().zip(&self.caps).enumerate() {
            if exponent > cap {
                return Err(Error::ExponentBeyondCap { var, exponent, cap });
            }
        }
        Ok(self.terms.get(exponents).cloned().unwrap_or_default())
    }

    /// Lower the caps, dropping terms that no longer fit.
    pub fn restrict_caps(&mut self, caps: Vec<u32>) {
        assert_eq!(caps.len(), self.caps.len(), "cap vector has wrong length");
        self.caps = caps;
        let caps = &self.caps;
        self.terms
            .retain(|e, _| e.iter().zip(caps).all(|(x, c)| x <= c));
    }

    /// Coefficient of u_var^exponent, as a polynomial in the remaining
    /// variables (u_var is kept with cap 0).
    pub fn extract_variable(&self, var: usize, exponent: u32) -> Result<CappedPoly> {
        let cap = self.caps[var];
        if exponent > cap {
            return Err(Error::ExponentBeyondCap { var, exponent, cap });
        }
        let mut caps = self.caps.clone();
        caps[var] = 0;
        let mut out = CappedPoly::zero(caps);
        for (e, c) in &self.terms {
            if e[var] == exponent {
                let mut e = e.clone();
                e[var] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        Ok(out)
    }
}

/// A product Π_ℓ f(u_ℓ) · Π_{ℓ<m} g(u_ℓ, u_m) whose coefficients are read out
/// one monomial at a time.
///
/// `single` lists the terms (e, c) of f as c·u^e; `pair` lists the terms
/// (e_ℓ, e_m, c) of g as c·u_ℓ^{e_ℓ}·u_m^{e_m}.
#[derive(Clone, Debug)]
pub struct CtIntegrand {
    pub single: Vec<(u32, TauPoly)>,
    pub pair: Vec<(u32, u32, TauPoly)>,
}

impl CtIntegrand {
    /// Coefficient of Π u_ℓ^{targets[ℓ]}; negative targets give zero.
    pub fn coefficient(&self, targets: &[i64]) -> TauPoly {
        self.coefficients(&[targets.to_vec()])
            .pop()
            .expect("one target in, one coefficient out")
    }

    /// Coefficients for many exponent vectors of the same length.
    ///
    /// Variables are eliminated in order: once every factor involving u_ℓ has
    /// been multiplied in, only the slice at the requested exponent of u_ℓ is
    /// kept. Targets sharing a prefix share the work for that prefix.
    pub fn coefficients(&self, targets: &[Vec<i64>]) -> Vec<TauPoly> {
        let mut out = vec![TauPoly::zero(); targets.len()];
        let Some(k) = targets.first().map(Vec::len) else {
            return out;
        };
        assert!(
            targets.iter().all(|t| t.len() == k),
            "all exponent vectors must have the same length"
        );
        let group: Vec<usize> = (0..targets.len())
            .filter(|&g| targets[g].iter().all(|&t| t >= 0))
            .collect();
        if group.is_empty() {
            return out;
        }
        let caps = group_caps(targets, &group, 0, k);
        let mut found = Vec::new();
        self.eliminate(0, CappedPoly::one(caps), &group, targets, &mut found);
        for (g, p) in found {
            out[g] = p;
        }
        out
    }

    fn eliminate(
        &self,
        l: usize,
        mut acc: CappedPoly,
        group: &[usize],
        targets: &[Vec<i64>],
        found: &mut Vec<(usize, TauPoly)>,
    ) {
        let k = acc.num_vars();
        if l == k {
            let c = acc
                .extract_coefficient(&vec![0; k])
                .expect("all caps are zero at the end");
            found.extend(group.iter().map(|&g| (g, c.clone())));
            return;
        }
        acc.restrict_caps(group_caps(targets, group, l, k));
        let caps = acc.caps.clone();
        let f = CappedPoly::from_terms(
            caps.clone(),
            self.single.iter().map(|(e, c)| {
                let mut v = vec![0; k];
                v[l] = *e;
                (v, c.clone())
            }),
        );
        acc = acc.capped_multiply(&f).expect("caps agree by construction");
        for m in l + 1..k {
            let g = CappedPoly::from_terms(
                caps.clone(),
                self.pair.iter().map(|(el, em, c)| {
                    let mut v = vec![0; k];
                    v[l] = *el;
                    v[m] = *em;
                    (v, c.clone())
                }),
            );
            acc = acc.capped_multiply(&g).expect("caps agree by construction");
        }
        let mut by_value: Vec<(i64, Vec<usize>)> = Vec::new();
        for &g in group {
            let t = targets[g][l];
            match by_value.iter_mut().find(|(v, _)| *v == t) {
                Some((_, members)) => members.push(g),
                None => by_value.push((t, vec![g])),
            }
        }
        for (t, members) in by_value {
            let next = acc
                .extract_variable(l, t as u32)
                .expect("target is within the cap");
            if next.is_empty() {
                continue;
            }
            self.eliminate(l + 1, next, &members, targets, found);
        }
    }
}

/// Per-variable caps for a group of targets: 0 for eliminated variables, the
/// group maximum for the rest.
fn group_caps(targets: &[Vec<i64>], group: &[usize], l: usize, k: usize) -> Vec<u32> {
    (0..k)
        .map(|v| {
            if v < l {
                0
            } else {
                group
                    .iter()
                    .map(|&g| targets[g][v] as u32)
                    .max()
                    .unwrap_or(0)
            }
        })
        .collect()
}
