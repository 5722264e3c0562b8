//! Finite multisets of grid vertices: iso-classes of preinjective modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arquiver::Vertex;
use crate::error::{Error, Result};

/// A direct sum of indecomposable preinjectives, recorded as vertex
/// multiplicities. Iteration is ascending in the grid order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModMultiset {
    mult: BTreeMap<Vertex, u32>,
}

impl ModMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        let mut m = Self::new();
        m.add(v, 1);
        m
    }

    pub fn mult(&self, v: Vertex) -> u32 {
        self.mult.get(&v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: Vertex, k: u32) {
        if k > 0 {
            *self.mult.entry(v).or_insert(0) += k;
        }
    }

    /// Removes `k` copies of `v`; underflow is an error.
    pub fn remove(&mut self, v: Vertex, k: u32) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        match self.mult.get_mut(&v) {
            Some(m) if *m >= k => {
                *m -= k;
                if *m == 0 {
                    self.mult.remove(&v);
                }
                Ok(())
            }
            _ => Err(Error::MultisetUnderflow(v)),
        }
    }

    pub fn union(&self, other: &ModMultiset) -> ModMultiset {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &ModMultiset) {
        for (v, k) in other.iter() {
            self.add(v, k);
        }
    }

    /// `self - other`; fails if `other` is not contained in `self`.
    pub fn difference(&self, other: &ModMultiset) -> Result<ModMultiset> {
        let mut out = self.clone();
        for (v, k) in other.iter() {
            out.remove(v, k)?;
        }
        Ok(out)
    }

    /// Largest common summand (pointwise minimum).
    pub fn intersection(&self, other: &ModMultiset) -> ModMultiset {
        let mut out = ModMultiset::new();
        for (v, k) in self.iter() {
            out.add(v, k.min(other.mult(v)));
        }
        out
    }

    /// `self` is a direct summand of `other`.
    pub fn is_subset(&self, other: &ModMultiset) -> bool {
        self.iter().all(|(v, k)| other.mult(v) >= k)
    }

    pub fn scaled(&self, factor: u32) -> ModMultiset {
        let mut out = ModMultiset::new();
        for (v, k) in self.iter() {
            out.add(v, k * factor);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Vertex, u32)> + '_ {
        self.mult.iter().map(|(&v, &k)| (v, k))
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.mult.keys().copied()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.mult.keys().next_back().copied()
    }

    /// Parses a comma-separated list of `r:i` vertices; repeats add up.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut out = ModMultiset::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.add(Vertex::parse(token, n)?, 1);
        }
        Ok(out)
    }
}

impl FromIterator<Vertex> for ModMultiset {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut out = ModMultiset::new();
        for v in iter {
            out.add(v, 1);
        }
        out
    }
}

impl fmt::Display for ModMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, m)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{m}")?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Serialize)]
struct Entry {
    r: u32,
    i: usize,
    mult: u32,
}

impl Serialize for ModMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.mult.len()))?;
        for (v, mult) in self.iter() {
            seq.serialize_element(&Entry {
                r: v.r,
                i: v.i + 1,
                mult,
            })?;
        }
        seq.end()
    }
}
