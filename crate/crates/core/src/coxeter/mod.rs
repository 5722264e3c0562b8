//! The Weyl group of a hereditary algebra, presented as a Coxeter group.
//!
//! Generators are 0-based internally and printed 1-based.

mod element;
mod leftmost;
mod word;

use std::fmt;

use serde::Serialize;

use crate::arquiver::Valuation;
use crate::error::{Error, Result};

pub use element::{element_of, is_reduced, WeylElement};
pub use leftmost::{
    braid_neighbors, exchange_test, is_leftmost, leftmost_bfs, leftmost_bfs_capped,
    leftmost_greedy, DEFAULT_BFS_CAP,
};
pub use word::{rho, word_compare, PairSeq, Word};

/// How a [`CartanData`] was specified.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum CartanMode {
    /// Derived from an acyclic quiver; arrows are 0-based `(src, dst)` with
    /// `src < dst`.
    Quiver { arrows: Vec<(usize, usize)> },
    /// Generalized Cartan matrix given directly.
    Valued,
}

/// A generalized Cartan matrix together with the arrow multiplicities used by
/// the Auslander-Reiten combinatorics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    n: usize,
    c: Vec<Vec<i64>>,
    mode: CartanMode,
    valuation: Valuation,
}

fn validate_table(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(Error::InvalidCartan(format!(
                "diagonal entry c_{0}{0} = {1}, expected 2",
                i + 1,
                c[i][i]
            )));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry c_{}{} = {} is positive",
                    i + 1,
                    j + 1,
                    c[i][j]
                )));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "c_{0}{1} = {2} but c_{1}{0} = {3}",
                    i + 1,
                    j + 1,
                    c[i][j],
                    c[j][i]
                )));
            }
        }
    }
    Ok(())
}

impl CartanData {
    /// Cartan datum of the path algebra of an acyclic quiver. Arrows are
    /// 0-based and must satisfy `src < dst`.
    pub fn from_quiver(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(src, dst) in arrows {
            if src >= n {
                return Err(Error::IndexOutOfRange { index: src + 1, n });
            }
            if dst >= n {
                return Err(Error::IndexOutOfRange { index: dst + 1, n });
            }
            if src >= dst {
                return Err(Error::NonAdmissibleArrow {
                    src: src + 1,
                    dst: dst + 1,
                });
            }
            c[src][dst] -= 1;
            c[dst][src] -= 1;
        }
        let valuation = Valuation::from_table(&c);
        Ok(Self {
            n,
            c,
            mode: CartanMode::Quiver {
                arrows: arrows.to_vec(),
            },
            valuation,
        })
    }

    /// Cartan datum given by a generalized Cartan matrix. The default
    /// valuation is `a_ij = -c_ij`.
    pub fn from_matrix(c: Vec<Vec<i64>>) -> Result<Self> {
        validate_table(&c)?;
        let valuation = Valuation::from_table(&c);
        Ok(Self {
            n: c.len(),
            c,
            mode: CartanMode::Valued,
            valuation,
        })
    }

    /// Overrides the arrow multiplicities on the edge `{i, j}`. The product
    /// `a_ij * a_ji` must equal `c_ij * c_ji`.
    pub fn with_valuation(mut self, i: usize, j: usize, a_ij: u32, a_ji: u32) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::SameIndex(i + 1));
        }
        let product = self.c[i][j] * self.c[j][i];
        if i64::from(a_ij) * i64::from(a_ji) != product {
            return Err(Error::InvalidCartan(format!(
                "valuation ({a_ij}, {a_ji}) on edge {{{}, {}}} has product {}, but c_ij c_ji = {product}",
                i + 1,
                j + 1,
                a_ij * a_ji
            )));
        }
        self.valuation.set(i, j, a_ij, a_ji);
        Ok(self)
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
        Self::from_quiver(n, &arrows).expect("linear orientation is admissible")
    }

    /// The Kronecker quiver `1 => 2`.
    pub fn kronecker() -> Self {
        Self::from_quiver(2, &[(0, 1), (0, 1)]).expect("admissible")
    }

    /// The four-vertex quiver with arrows `1->3, 1->4, 2->3, 2->4`.
    pub fn ex_weyl() -> Self {
        Self::from_quiver(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("admissible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn mode(&self) -> &CartanMode {
        &self.mode
    }

    pub fn is_quiver(&self) -> bool {
        matches!(self.mode, CartanMode::Quiver { .. })
    }

    /// Arrows of the quiver, or `None` in valued mode.
    pub fn arrows(&self) -> Option<&[(usize, usize)]> {
        match &self.mode {
            CartanMode::Quiver { arrows } => Some(arrows),
            CartanMode::Valued => None,
        }
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i + 1,
                n: self.n,
            })
        }
    }

    /// The datum on the index subset `keep` (0-based, any order), reindexed
    /// order-preservingly to `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &k in &keep {
            self.check_index(k)?;
        }
        let position = |v: usize| keep.binary_search(&v).ok();
        let mut sub = match &self.mode {
            CartanMode::Quiver { arrows } => {
                let arrows: Vec<_> = arrows
                    .iter()
                    .filter_map(|&(s, d)| Some((position(s)?, position(d)?)))
                    .collect();
                Self::from_quiver(keep.len(), &arrows)?
            }
            CartanMode::Valued => {
                let c = keep
                    .iter()
                    .map(|&i| keep.iter().map(|&j| self.c[i][j]).collect())
                    .collect();
                Self::from_matrix(c)?
            }
        };
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if a < b && self.c[i][j] != 0 {
                    sub.valuation
                        .set(a, b, self.valuation.a(i, j), self.valuation.a(j, i));
                }
            }
        }
        Ok(sub)
    }
}

/// Orders `m_ij` of products of pairs of generators; `None` stands for
/// infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    m: Vec<Vec<Option<u32>>>,
}

/// `m_ij` as a function of `c_ij * c_ji`.
pub fn order_from_product(product: i64) -> Option<u32> {
    match product {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// Coxeter matrix of a raw Cartan table, validating the table first.
pub fn build_coxeter_matrix(c: &[Vec<i64>]) -> Result<CoxeterMatrix> {
    validate_table(c)?;
    let n = c.len();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(1)
                    } else {
                        order_from_product(c[i][j] * c[j][i])
                    }
                })
                .collect()
        })
        .collect();
    Ok(CoxeterMatrix { m })
}

impl CoxeterMatrix {
    pub fn of(cartan: &CartanData) -> Self {
        build_coxeter_matrix(&cartan.c).expect("CartanData tables are validated on construction")
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<Option<u32>>] {
        &self.m
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.m.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|e| e.map_or_else(|| "inf".to_string(), |v| v.to_string()))
                .collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
