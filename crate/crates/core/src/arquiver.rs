//! The preinjective component of the Auslander-Reiten quiver.
//!
//! With the injectives ordered so that `Hom(I_i, I_j) = 0` for `i < j`, every
//! indecomposable preinjective is `tau^r I_i` for a grid vertex `(r, i)`, and
//! irreducible maps leave `(r, i)` only towards `(r, j)` with `j < i` and
//! `(r - 1, j)` with `j > i`. Existence of `tau^r I_i` (it is zero past the
//! boundary in finite type) is computed lazily, slice by slice.

use std::fmt;
use std::sync::RwLock;

use serde::{Serialize, Serializer};

use crate::coxeter::{CartanData, CartanMode, CoxeterMatrix, WeylElement};
use crate::error::{Error, Result};
use crate::multiset::ModMultiset;

/// Grid point `(r, i)`, i.e. the module `tau^r I_i`. Ordered
/// lexicographically; `i` is 0-based and printed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub r: u32,
    pub i: usize,
}

impl Vertex {
    pub const fn new(r: u32, i: usize) -> Self {
        Self { r, i }
    }

    pub fn is_injective_slot(self) -> bool {
        self.r == 0
    }

    /// `tau^{-1}`, towards the injectives.
    pub fn tau_inverse(self) -> Option<Vertex> {
        self.r.checked_sub(1).map(|r| Vertex::new(r, self.i))
    }

    pub fn tau(self) -> Vertex {
        Vertex::new(self.r + 1, self.i)
    }

    /// Parses `r:i` with 1-based `i`.
    pub fn parse(token: &str, n: usize) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, token, msg);
        let (r, i) = token
            .split_once(':')
            .ok_or_else(|| bad("expected a vertex `r:i`"))?;
        let r: u32 = r.trim().parse().map_err(|_| bad("bad tau-power"))?;
        let i: usize = i.trim().parse().map_err(|_| bad("bad vertex index"))?;
        if i == 0 || i > n {
            return Err(bad(&format!("vertex index out of range 1..={n}")));
        }
        Ok(Vertex::new(r, i - 1))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.i + 1)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Vertex", 2)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("i", &(self.i + 1))?;
        s.end()
    }
}

/// Arrow multiplicities: `a(i, j)` is how often a `j`-vertex occurs in the
/// middle term of an almost split sequence starting at an `i`-vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    a: Vec<Vec<u32>>,
}

impl Valuation {
    /// Default assignment `a_ij = -c_ij`.
    pub fn from_table(c: &[Vec<i64>]) -> Self {
        let n = c.len();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 0 } else { (-c[i][j]) as u32 })
                    .collect()
            })
            .collect();
        Self { a }
    }

    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.a[i][j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, a_ij: u32, a_ji: u32) {
        self.a[i][j] = a_ij;
        self.a[j][i] = a_ji;
    }
}

/// Composition multiplicities of a module at each simple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn add_scaled(&mut self, other: &DimVector, k: i64) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x = x
                .checked_add(y.checked_mul(k).expect("dimension overflow"))
                .expect("dimension overflow");
        }
    }

    pub fn is_nonneg_nonzero(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Slices of the grid; `None` marks a zero module.
type Slices = Vec<Vec<Option<Vec<i64>>>>;

#[derive(Debug)]
struct ReflectionGrid {
    slices: Slices,
    prefix: WeylElement,
    dead: Vec<bool>,
}

/// Root coefficients of a finite root system never exceed this.
const FINITE_ROOT_COEFF_BOUND: i64 = 6;

/// The preinjective component of a Cartan datum, with memoized slices.
#[derive(Debug)]
pub struct ArQuiver {
    cartan: CartanData,
    cox: CoxeterMatrix,
    knitted: RwLock<Slices>,
    reflected: RwLock<ReflectionGrid>,
}

impl Clone for ArQuiver {
    fn clone(&self) -> Self {
        ArQuiver::new(self.cartan.clone())
    }
}

impl ArQuiver {
    pub fn new(cartan: CartanData) -> Self {
        let n = cartan.n();
        let cox = CoxeterMatrix::of(&cartan);
        Self {
            reflected: RwLock::new(ReflectionGrid {
                slices: Vec::new(),
                prefix: WeylElement::identity(n),
                dead: vec![false; n],
            }),
            knitted: RwLock::new(Vec::new()),
            cox,
            cartan,
        }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn cox(&self) -> &CoxeterMatrix {
        &self.cox
    }

    pub fn n(&self) -> usize {
        self.cartan.n()
    }

    fn ensure_knitted(&self, r: u32) {
        let want = r as usize + 1;
        if self.knitted.read().unwrap().len() >= want {
            return;
        }
        let mut slices = self.knitted.write().unwrap();
        let n = self.n();
        let arrows = self.cartan.arrows().expect("knitting needs a quiver");
        let val = self.cartan.valuation();
        while slices.len() < want {
            let next: Vec<Option<Vec<i64>>> = match slices.last() {
                // dim(0, i)_j = number of paths j -> i.
                None => {
                    let mut paths = vec![vec![0i64; n]; n];
                    for i in 0..n {
                        paths[i][i] = 1;
                        for &(s, d) in arrows {
                            if d == i {
                                for j in 0..n {
                                    paths[j][i] += paths[j][s];
                                }
                            }
                        }
                    }
                    (0..n)
                        .map(|i| Some((0..n).map(|j| paths[j][i]).collect()))
                        .collect()
                }
                Some(prev) => {
                    let mut cur: Vec<Option<Vec<i64>>> = Vec::with_capacity(n);
                    for i in 0..n {
                        let Some(top) = &prev[i] else {
                            cur.push(None);
                            continue;
                        };
                        // Mesh: dim tau X = dim(middle) - dim X.
                        let mut d = DimVector(top.iter().map(|x| -x).collect());
                        for (j, slot) in cur.iter().enumerate() {
                            if let Some(dj) = slot {
                                d.add_scaled(&DimVector(dj.clone()), val.a(i, j).into());
                            }
                        }
                        for (j, slot) in prev.iter().enumerate().skip(i + 1) {
                            if let Some(dj) = slot {
                                d.add_scaled(&DimVector(dj.clone()), val.a(i, j).into());
                            }
                        }
                        cur.push(d.is_nonneg_nonzero().then_some(d.0));
                    }
                    cur
                }
            };
            slices.push(next);
        }
    }

    fn ensure_reflected(&self, r: u32) {
        let want = r as usize + 1;
        if self.reflected.read().unwrap().slices.len() >= want {
            return;
        }
        let mut grid = self.reflected.write().unwrap();
        let n = self.n();
        while grid.slices.len() < want {
            let mut slice = Vec::with_capacity(n);
            for i in 0..n {
                if grid.dead[i] {
                    slice.push(None);
                    continue;
                }
                let beta = grid.prefix.column(i);
                if beta.iter().all(|&x| x >= 0) && beta.iter().any(|&x| x > 0) {
                    grid.prefix.mul_simple_right(&self.cartan, i);
                    slice.push(Some(beta));
                } else {
                    grid.dead[i] = true;
                    slice.push(None);
                }
            }
            grid.slices.push(slice);
        }
    }

    /// Existence by knitting dimension vectors (quiver mode only).
    pub fn exists_by_knitting(&self, v: Vertex) -> Result<bool> {
        if !self.cartan.is_quiver() {
            return Err(Error::Unsupported("knitting requires a quiver"));
        }
        self.ensure_knitted(v.r);
        Ok(self.knitted.read().unwrap()[v.r as usize][v.i].is_some())
    }

    /// Existence by reducedness: walk the grid in order, appending `s_i` at
    /// each live position; `(r, i)` exists iff the extended word stays
    /// reduced, and a dead index stays dead.
    pub fn exists_by_reflection(&self, v: Vertex) -> bool {
        self.ensure_reflected(v.r);
        self.reflected.read().unwrap().slices[v.r as usize][v.i].is_some()
    }

    /// The positive root attached to an existing vertex by the reflection
    /// walk. In quiver mode it equals the dimension vector.
    pub fn root(&self, v: Vertex) -> Option<Vec<i64>> {
        if v.i >= self.n() {
            return None;
        }
        self.ensure_reflected(v.r);
        self.reflected.read().unwrap().slices[v.r as usize][v.i].clone()
    }

    pub fn vertex_exists(&self, v: Vertex) -> bool {
        if v.i >= self.n() {
            return false;
        }
        match self.cartan.mode() {
            CartanMode::Quiver { .. } => self.exists_by_knitting(v).unwrap_or(false),
            CartanMode::Valued => self.exists_by_reflection(v),
        }
    }

    pub fn check_exists(&self, v: Vertex) -> Result<()> {
        if v.i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: v.i + 1,
                n: self.n(),
            });
        }
        if self.vertex_exists(v) {
            Ok(())
        } else {
            Err(Error::ZeroModule(v))
        }
    }

    pub fn dim_vector(&self, v: Vertex) -> Result<DimVector> {
        if !self.cartan.is_quiver() {
            return Err(Error::Unsupported("dimension vectors require a quiver"));
        }
        self.check_exists(v)?;
        let slices = self.knitted.read().unwrap();
        Ok(DimVector(
            slices[v.r as usize][v.i].clone().expect("exists"),
        ))
    }

    pub fn dim_of(&self, m: &ModMultiset) -> Result<DimVector> {
        let mut d = DimVector::zero(self.n());
        for (v, k) in m.iter() {
            d.add_scaled(&self.dim_vector(v)?, k.into());
        }
        Ok(d)
    }

    /// Multiplicities `(alpha, beta)` of irreducible maps `i -> j` and
    /// `j -> i` between vertices of the two tau-orbits.
    pub fn alpha_beta(&self, i: usize, j: usize) -> Result<(u32, u32)> {
        self.cartan.check_index(i)?;
        self.cartan.check_index(j)?;
        if i == j {
            return Err(Error::SameIndex(i + 1));
        }
        let val = self.cartan.valuation();
        Ok((val.a(i, j), val.a(j, i)))
    }

    /// Irreducible maps out of `v`, as target vertices with multiplicity.
    pub fn successors(&self, v: Vertex) -> ModMultiset {
        let val = self.cartan.valuation();
        let mut out = ModMultiset::new();
        for j in 0..self.n() {
            let a = val.a(v.i, j);
            if a == 0 {
                continue;
            }
            let target = if j < v.i {
                Some(Vertex::new(v.r, j))
            } else {
                v.r.checked_sub(1).map(|r| Vertex::new(r, j))
            };
            if let Some(t) = target.filter(|&t| self.vertex_exists(t)) {
                out.add(t, a);
            }
        }
        out
    }

    /// The almost split sequence `0 -> v -> middle -> tau^{-1} v -> 0`.
    pub fn ar_sequence_start(&self, v: Vertex) -> Result<(ModMultiset, Vertex)> {
        self.check_exists(v)?;
        let end = v.tau_inverse().ok_or(Error::InjectiveVertex(v))?;
        Ok((self.successors(v), end))
    }

    /// Existing vertices with `r < slices`, ascending.
    pub fn vertices(&self, slices: u32) -> Vec<Vertex> {
        (0..slices)
            .flat_map(|r| (0..self.n()).map(move |i| Vertex::new(r, i)))
            .filter(|&v| self.vertex_exists(v))
            .collect()
    }

    /// Number of indecomposable preinjectives, or `None` in infinite type.
    pub fn total_vertices(&self) -> Option<usize> {
        let mut r = 0;
        loop {
            self.ensure_reflected(r);
            let grid = self.reflected.read().unwrap();
            if grid.dead.iter().all(|&d| d) {
                return Some(grid.slices.iter().flatten().filter(|s| s.is_some()).count());
            }
            let last = grid.slices.last().expect("slice computed");
            if last
                .iter()
                .flatten()
                .any(|root| root.iter().any(|&x| x > FINITE_ROOT_COEFF_BOUND))
            {
                return None;
            }
            drop(grid);
            r += 1;
        }
    }

    pub fn is_finite_type(&self) -> bool {
        self.total_vertices().is_some()
    }

    /// All existing vertices in finite type.
    pub fn all_vertices(&self) -> Option<Vec<Vertex>> {
        self.total_vertices()?;
        let slices = self.reflected.read().unwrap().slices.len() as u32;
        Some(self.vertices(slices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: u32, i: usize) -> Vertex {
        Vertex::new(r, i - 1)
    }

    fn ms(vs: &[(u32, usize)]) -> ModMultiset {
        vs.iter().map(|&(r, i)| v(r, i)).collect()
    }

    #[test]
    fn alpha_beta_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        assert_eq!(q.alpha_beta(0, 2).unwrap(), (1, 1));
        assert_eq!(q.alpha_beta(0, 1).unwrap(), (0, 0));
        assert!(matches!(q.alpha_beta(1, 1), Err(Error::SameIndex(2))));
        let k = ArQuiver::new(CartanData::from_matrix(vec![vec![2, -2], vec![-2, 2]]).unwrap());
        assert_eq!(k.alpha_beta(0, 1).unwrap(), (2, 2));
    }

    #[test]
    fn ar_sequences_of_the_example() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        assert_eq!(
            q.ar_sequence_start(v(1, 1)).unwrap(),
            (ms(&[(0, 3), (0, 4)]), v(0, 1))
        );
        assert_eq!(
            q.ar_sequence_start(v(1, 3)).unwrap(),
            (ms(&[(1, 1), (1, 2)]), v(0, 3))
        );
        assert_eq!(
            q.ar_sequence_start(v(0, 2)),
            Err(Error::InjectiveVertex(v(0, 2)))
        );
    }

    #[test]
    fn a2_boundary() {
        let q = ArQuiver::new(CartanData::linear_a(2));
        assert!(q.vertex_exists(v(1, 1)));
        assert!(!q.vertex_exists(v(1, 2)));
        assert!(!q.vertex_exists(v(2, 1)));
        assert!(q.vertex_exists(v(0, 1)) && q.vertex_exists(v(0, 2)));
        assert_eq!(q.dim_vector(v(0, 2)).unwrap().0, vec![1, 1]);
        assert_eq!(q.dim_vector(v(1, 1)).unwrap().0, vec![0, 1]);
        assert_eq!(q.dim_vector(v(1, 2)), Err(Error::ZeroModule(v(1, 2))));
        assert_eq!(q.total_vertices(), Some(3));
        assert_eq!(
            q.ar_sequence_start(v(1, 2)),
            Err(Error::ZeroModule(v(1, 2)))
        );
    }

    #[test]
    fn a3_linear_has_six_vertices() {
        let q = ArQuiver::new(CartanData::linear_a(3));
        assert_eq!(q.total_vertices(), Some(6));
        assert_eq!(q.vertices(10).len(), 6);
        assert_eq!(q.dim_vector(v(2, 1)).unwrap().0, vec![0, 0, 1]);
    }

    #[test]
    fn kronecker_is_infinite() {
        let q = ArQuiver::new(CartanData::kronecker());
        assert!(q.vertex_exists(v(5, 1)));
        assert_eq!(q.dim_vector(v(1, 1)).unwrap().0, vec![3, 2]);
        assert_eq!(q.total_vertices(), None);
    }

    #[test]
    fn ex_weyl_injective_dims() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        assert_eq!(q.dim_vector(v(0, 1)).unwrap().0, vec![1, 0, 0, 0]);
        assert_eq!(q.dim_vector(v(0, 3)).unwrap().0, vec![1, 1, 1, 0]);
    }

    #[test]
    fn valued_mode_has_no_dims() {
        let q = ArQuiver::new(CartanData::from_matrix(vec![vec![2, -1], vec![-2, 2]]).unwrap());
        assert!(matches!(q.dim_vector(v(0, 1)), Err(Error::Unsupported(_))));
        // B_2 has four positive roots.
        assert_eq!(q.total_vertices(), Some(4));
    }
}
