use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qkz::index::combinations;
use crate::scalar::ExactScalar;

/// Bit i−1 set means a down arrow at site i.
pub type SpinMask = u64;

pub fn mask_of(positions: &[usize]) -> SpinMask {
    positions.iter().fold(0, |m, &p| m | (1 << (p - 1)))
}

pub fn positions_of(mask: SpinMask) -> Vec<usize> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Basis of the sector of `sites` spins with exactly `down` down arrows,
/// ordered lexicographically by down positions.
#[derive(Debug)]
pub struct SectorBasis {
    sites: usize,
    down: usize,
    states: Vec<SpinMask>,
    index: HashMap<SpinMask, usize>,
}

impl SectorBasis {
    pub fn new(sites: usize, down: usize) -> Arc<Self> {
        assert!(sites <= 63, "at most 63 sites are supported");
        let states: Vec<SpinMask> = combinations(sites, down)
            .iter()
            .map(|c| mask_of(c))
            .collect();
        let index = states.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        Arc::new(SectorBasis {
            sites,
            down,
            states,
            index,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn down(&self) -> usize {
        self.down
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[SpinMask] {
        &self.states
    }

    pub fn position(&self, mask: SpinMask) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

/// Exact vector over a fixed-magnetization sector of (C²)^⊗N.
#[derive(Clone, Debug)]
pub struct SpinVector {
    basis: Arc<SectorBasis>,
    entries: Vec<ExactScalar>,
}

impl SpinVector {
    pub fn zeros(sites: usize, down: usize) -> Self {
        Self::zeros_on(SectorBasis::new(sites, down))
    }

    pub fn zeros_on(basis: Arc<SectorBasis>) -> Self {
        let entries = vec![ExactScalar::zero(); basis.len()];
        SpinVector { basis, entries }
    }

    pub fn from_entries(basis: Arc<SectorBasis>, entries: Vec<ExactScalar>) -> Result<Self> {
        if entries.len() != basis.len() {
            return Err(Error::InvalidArgument(format!(
                "sector has {} states, got {} entries",
                basis.len(),
                entries.len()
            )));
        }
        Ok(SpinVector { basis, entries })
    }

    /// Entry at each down-position set given by `f`.
    pub fn from_fn<F>(sites: usize, down: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> ExactScalar,
    {
        let basis = SectorBasis::new(sites, down);
        let entries = basis
            .states()
            .iter()
            .map(|&m| f(&positions_of(m)))
            .collect();
        SpinVector { basis, entries }
    }

    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.basis
    }

    pub fn sites(&self) -> usize {
        self.basis.sites
    }

    pub fn sector(&self) -> usize {
        self.basis.down
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn get(&self, positions: &[usize]) -> Option<&ExactScalar> {
        self.get_mask(mask_of(positions))
    }

    pub fn get_mask(&self, mask: SpinMask) -> Option<&ExactScalar> {
        self.basis.position(mask).map(|k| &self.entries[k])
    }

    pub fn set(&mut self, positions: &[usize], value: ExactScalar) -> Result<()> {
        let k = self
            .basis
            .position(mask_of(positions))
            .ok_or_else(|| Error::InvalidIndex(format!("{positions:?} is outside the sector")))?;
        self.entries[k] = value;
        Ok(())
    }

    /// (down positions, value) pairs in basis order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &ExactScalar)> {
        self.basis
            .states()
            .iter()
            .zip(&self.entries)
            .map(|(&m, v)| (positions_of(m), v))
    }

    pub fn iter_masks(&self) -> impl Iterator<Item = (SpinMask, &ExactScalar)> {
        self.basis.states().iter().copied().zip(&self.entries)
    }

    pub fn scale(&self, s: &ExactScalar) -> SpinVector {
        SpinVector {
            basis: self.basis.clone(),
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    /// Accumulate `value` at `mask`; the mask must lie in the sector.
    pub(crate) fn add_at(&mut self, mask: SpinMask, value: &ExactScalar) {
        let k = self
            .basis
            .position(mask)
            .expect("sector-preserving operator left the sector");
        self.entries[k] += value;
    }
}

impl PartialEq for SpinVector {
    fn eq(&self, other: &Self) -> bool {
        self.basis.sites == other.basis.sites
            && self.basis.down == other.basis.down
            && self.entries == other.entries
    }
}

impl Eq for SpinVector {}
