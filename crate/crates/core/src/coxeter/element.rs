use std::fmt;

use super::{CartanData, Word};

/// A Weyl group element, stored as its action on the root lattice: column
/// `j` holds the coordinates of the image of the simple root `alpha_j`.
///
/// The representation is faithful, so equality of actions is equality of
/// group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    action: Vec<i64>,
}

pub(crate) fn is_positive(root: &[i64]) -> bool {
    root.iter().all(|&x| x >= 0) && root.iter().any(|&x| x > 0)
}

pub(crate) fn is_negative(root: &[i64]) -> bool {
    root.iter().all(|&x| x <= 0) && root.iter().any(|&x| x < 0)
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut action = vec![0; n * n];
        for k in 0..n {
            action[k * n + k] = 1;
        }
        Self { n, action }
    }

    pub fn simple(cartan: &CartanData, i: usize) -> Self {
        let mut e = Self::identity(cartan.n());
        e.mul_simple_right(cartan, i);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.action[row * self.n + col]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|k| self.entry(k, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|k| (0..self.n).map(|j| self.entry(k, j) * v[j]).sum())
            .collect()
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut action = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                action[r * n + c] = (0..n).map(|k| self.entry(r, k) * other.entry(k, c)).sum();
            }
        }
        WeylElement { n, action }
    }

    /// `self <- self * s_i`.
    pub fn mul_simple_right(&mut self, cartan: &CartanData, i: usize) {
        let n = self.n;
        // s_i(alpha_j) = alpha_j - c_ij alpha_i, so column j picks up -c_ij * column i.
        let col_i = self.column(i);
        for j in 0..n {
            let c = cartan.c(i, j);
            if c == 0 {
                continue;
            }
            for (k, x) in col_i.iter().enumerate() {
                self.action[k * n + j] -= c * x;
            }
        }
    }

    /// `self <- s_i * self`.
    pub fn mul_simple_left(&mut self, cartan: &CartanData, i: usize) {
        let n = self.n;
        for col in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan.c(i, j) * self.entry(j, col)).sum();
            self.action[i * n + col] -= pairing;
        }
    }

    /// `l(self * s_i) < l(self)`, i.e. `self(alpha_i)` is negative.
    pub fn has_right_descent(&self, i: usize) -> bool {
        is_negative(&self.column(i))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            if r > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.n).map(|c| self.entry(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The product of the simple reflections of `w`, in word order.
pub fn element_of(w: &Word, cartan: &CartanData) -> WeylElement {
    let mut e = WeylElement::identity(cartan.n());
    for &i in w.letters() {
        e.mul_simple_right(cartan, i);
    }
    e
}

/// Inversion-sequence test: `beta_t = s_{i_1} ... s_{i_{t-1}}(alpha_{i_t})`.
/// The word is reduced iff every `beta_t` is a positive root. All `beta_t`
/// are returned.
pub fn is_reduced(w: &Word, cartan: &CartanData) -> (bool, Vec<Vec<i64>>) {
    let mut prefix = WeylElement::identity(cartan.n());
    let mut roots = Vec::with_capacity(w.len());
    let mut reduced = true;
    for &i in w.letters() {
        let beta = prefix.column(i);
        reduced &= is_positive(&beta);
        roots.push(beta);
        prefix.mul_simple_right(cartan, i);
    }
    if reduced {
        debug_assert!(
            roots
                .iter()
                .enumerate()
                .all(|(a, x)| roots[a + 1..].iter().all(|y| y != x)),
            "inversion roots of a reduced word are distinct"
        );
    }
    (reduced, roots)
}
