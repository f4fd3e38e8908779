use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    /// n positions of down arrows.
    Down,
    /// n+1 positions of up arrows.
    Up,
}

/// Strictly increasing positions in [1, N], N = 2n+1, labelling a component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentIndex {
    kind: IndexKind,
    n: usize,
    indices: Vec<usize>,
}

impl ComponentIndex {
    pub fn new(kind: IndexKind, n: usize, indices: Vec<usize>) -> Result<Self> {
        let size = 2 * n + 1;
        let expected = match kind {
            IndexKind::Down => n,
            IndexKind::Up => n + 1,
        };
        if indices.len() != expected {
            return Err(Error::InvalidIndex(format!(
                "{kind:?} index for n={n} needs {expected} entries, got {indices:?}"
            )));
        }
        if indices.iter().any(|&a| a < 1 || a > size) {
            return Err(Error::InvalidIndex(format!(
                "{indices:?} leaves the range [1, {size}]"
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(ComponentIndex { kind, n, indices })
    }

    pub fn down(n: usize, indices: Vec<usize>) -> Result<Self> {
        Self::new(IndexKind::Down, n, indices)
    }

    pub fn up(n: usize, indices: Vec<usize>) -> Result<Self> {
        Self::new(IndexKind::Up, n, indices)
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The complementary positions in [1, N], of the opposite kind.
    pub fn complement(&self) -> ComponentIndex {
        let indices = (1..=self.size())
            .filter(|i| !self.indices.contains(i))
            .collect();
        let kind = match self.kind {
            IndexKind::Down => IndexKind::Up,
            IndexKind::Up => IndexKind::Down,
        };
        ComponentIndex {
            kind,
            n: self.n,
            indices,
        }
    }

    /// The positions of down arrows, whichever kind this index is.
    pub fn down_positions(&self) -> Vec<usize> {
        match self.kind {
            IndexKind::Down => self.indices.clone(),
            IndexKind::Up => self.complement().indices,
        }
    }

    /// All down-kind indices for n, in lexicographic order.
    pub fn all_down(n: usize) -> Vec<ComponentIndex> {
        combinations(2 * n + 1, n)
            .into_iter()
            .map(|indices| ComponentIndex {
                kind: IndexKind::Down,
                n,
                indices,
            })
            .collect()
    }

    pub fn all_up(n: usize) -> Vec<ComponentIndex> {
        combinations(2 * n + 1, n + 1)
            .into_iter()
            .map(|indices| ComponentIndex {
                kind: IndexKind::Up,
                n,
                indices,
            })
            .collect()
    }
}

impl fmt::Display for ComponentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All k-subsets of {1..m} as increasing vectors, lexicographically ordered.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for a in start..=m + 1 - need {
            cur.push(a);
            rec(a + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(1, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
