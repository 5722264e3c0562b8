//! Explicit linear algebra on type-A quivers.
//!
//! Indecomposables of a type-A path algebra are interval modules, so the
//! preinjective vertices can be realized concretely and Hom spaces computed
//! by solving the commutation constraints. This is an oracle for the
//! combinatorial engine and shares none of its code paths beyond the
//! dimension vectors used to identify the intervals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::arquiver::{ArQuiver, Vertex};
use crate::coxeter::CartanData;
use crate::error::{Error, Result};
use crate::multiset::ModMultiset;

/// Largest Hom dimension searched by brute-force enumeration.
pub const ENUMERATION_CAP: usize = 12;

/// Exact field arithmetic used by the row reduction.
pub trait Field: Copy + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(self) -> Self;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Field for Rational64 {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        Rational64::from_integer(x)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn inv(self) -> Self {
        self.recip()
    }
}

/// The prime field with `P` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(x: i64) -> Self {
        Fp(x.rem_euclid(i64::from(P)) as u32)
    }
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(self, o: Self) -> Self {
        Fp(((u64::from(self.0) * u64::from(o.0)) % u64::from(P)) as u32)
    }
    fn inv(self) -> Self {
        debug_assert!(self.0 != 0);
        // Fermat: a^(P-2).
        let mut out = Self::one();
        let mut base = self;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        out
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

/// Reduces `rows` in place to reduced row echelon form; returns the pivot
/// columns.
fn rref<F: Field>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.mul(inv);
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c];
                for col in 0..cols {
                    let sub = f.mul(rows[r][col]);
                    rows[k][col] = rows[k][col].sub(sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>], cols: usize) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows, cols).len()
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut rows = rows.to_vec();
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = F::zero().sub(rows[r][f]);
            }
            v
        })
        .collect()
}

/// A path quiver with single arrows in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeA {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

impl TypeA {
    pub fn new(cartan: &CartanData) -> Result<Self> {
        let n = cartan.n();
        let Some(arrows) = cartan.arrows() else {
            return Err(Error::NotTypeA("not given by a quiver".into()));
        };
        let mut edges = BTreeSet::new();
        let mut degree = vec![0usize; n];
        for &(s, d) in arrows {
            if !edges.insert((s.min(d), s.max(d))) {
                return Err(Error::NotTypeA(format!(
                    "multiple arrows between {} and {}",
                    s + 1,
                    d + 1
                )));
            }
            degree[s] += 1;
            degree[d] += 1;
        }
        if n > 0 && edges.len() != n - 1 {
            return Err(Error::NotTypeA(format!(
                "{} arrows on {n} vertices",
                edges.len()
            )));
        }
        if let Some(v) = degree.iter().position(|&d| d > 2) {
            return Err(Error::NotTypeA(format!("vertex {} has degree > 2", v + 1)));
        }
        let t = Self {
            n,
            arrows: arrows.to_vec(),
        };
        if n > 0 && !t.connected(&vec![true; n]) {
            return Err(Error::NotTypeA("underlying graph is disconnected".into()));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn connected(&self, support: &[bool]) -> bool {
        let Some(start) = support.iter().position(|&b| b) else {
            return false;
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &(s, d) in &self.arrows {
                for (a, b) in [(s, d), (d, s)] {
                    if a == x && support[b] && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        support.iter().zip(&seen).all(|(&s, &k)| !s || k)
    }

    /// The interval module with dimension vector `dim(v)`.
    pub fn interval_of_vertex(&self, q: &ArQuiver, v: Vertex) -> Result<IntervalRep> {
        let dim = q.dim_vector(v)?;
        if dim.0.iter().any(|&d| d > 1) {
            return Err(Error::NotTypeA(format!("{v} has dimension vector {dim}")));
        }
        let support: Vec<bool> = dim.0.iter().map(|&d| d == 1).collect();
        if !self.connected(&support) {
            return Err(Error::NotTypeA(format!("support of {v} is not connected")));
        }
        Ok(IntervalRep { support })
    }

    /// The direct sum realizing a multiset of vertices, summands ascending.
    pub fn rep_of(&self, q: &ArQuiver, m: &ModMultiset) -> Result<Vec<IntervalRep>> {
        let mut out = Vec::new();
        for (v, k) in m.iter() {
            let rep = self.interval_of_vertex(q, v)?;
            out.extend(std::iter::repeat_n(rep, k as usize));
        }
        Ok(out)
    }

    fn layout(&self, m: &[IntervalRep], n: &[IntervalRep]) -> Layout {
        let mut vars = Vec::new();
        let mut index = HashMap::new();
        for x in 0..self.n {
            for (qi, nq) in n.iter().enumerate() {
                for (pi, mp) in m.iter().enumerate() {
                    if nq.support[x] && mp.support[x] {
                        index.insert((x, qi, pi), vars.len());
                        vars.push(HomVar {
                            vertex: x,
                            target: qi,
                            source: pi,
                        });
                    }
                }
            }
        }
        // f_t M_a = N_a f_s for every arrow a: s -> t, entrywise.
        let mut constraints = Vec::new();
        for &(s, t) in &self.arrows {
            for (qi, nq) in n.iter().enumerate() {
                for (pi, mp) in m.iter().enumerate() {
                    if !nq.support[t] || !mp.support[s] {
                        continue;
                    }
                    let mut row = Vec::new();
                    if nq.support[s] {
                        row.push((index[&(s, qi, pi)], 1));
                    }
                    if mp.support[t] {
                        row.push((index[&(t, qi, pi)], -1));
                    }
                    constraints.push(row);
                }
            }
        }
        Layout {
            vars,
            index,
            constraints,
        }
    }

    fn constraint_matrix<F: Field>(&self, layout: &Layout) -> Vec<Vec<F>> {
        layout
            .constraints
            .iter()
            .map(|row| {
                let mut dense = vec![F::zero(); layout.vars.len()];
                for &(k, c) in row {
                    dense[k] = dense[k].add(F::from_i64(c));
                }
                dense
            })
            .collect()
    }

    /// Exact basis of `Hom(M, N)` over the rationals.
    pub fn hom_basis(&self, m: &[IntervalRep], n: &[IntervalRep]) -> HomSpace {
        let layout = self.layout(m, n);
        let a: Vec<Vec<Rational64>> = self.constraint_matrix(&layout);
        let basis = nullspace(&a, layout.vars.len());
        HomSpace {
            vars: layout.vars,
            constraints: layout.constraints,
            basis,
        }
    }

    /// Whether some homomorphism `M -> N` is injective at every vertex,
    /// decided over the fields with two and three elements.
    pub fn has_mono(&self, m: &[IntervalRep], n: &[IntervalRep]) -> Result<bool> {
        for x in 0..self.n {
            let dm = m.iter().filter(|r| r.support[x]).count();
            let dn = n.iter().filter(|r| r.support[x]).count();
            if dm > dn {
                return Ok(false);
            }
        }
        let layout = self.layout(m, n);
        let two = self.mono_over::<F2>(&layout, m, n)?;
        let three = self.mono_over::<F3>(&layout, m, n)?;
        if two != three {
            return Err(Error::FieldDisagreement);
        }
        Ok(two)
    }

    fn mono_over<F: Field + FieldSize>(
        &self,
        layout: &Layout,
        m: &[IntervalRep],
        n: &[IntervalRep],
    ) -> Result<bool> {
        let a: Vec<Vec<F>> = self.constraint_matrix(layout);
        let basis = nullspace(&a, layout.vars.len());
        let d = basis.len();
        // Component f_x as a linear function of the coefficient vector:
        // one row per (target summand, source summand) pair at x.
        let component = |x: usize, qi: usize, pi: usize| -> Vec<F> {
            let k = layout.index[&(x, qi, pi)];
            basis.iter().map(|b| b[k]).collect()
        };
        let sources =
            |x: usize| -> Vec<usize> { (0..m.len()).filter(|&p| m[p].support[x]).collect() };
        let targets =
            |x: usize| -> Vec<usize> { (0..n.len()).filter(|&q| n[q].support[x]).collect() };
        let thin = (0..self.n).all(|x| sources(x).len() <= 1);
        if thin {
            // f_x is a column; it is injective iff nonzero. The bad
            // coefficient vectors form a union of subspaces, counted by
            // inclusion-exclusion.
            let kernels: Vec<Vec<Vec<F>>> = (0..self.n)
                .filter_map(|x| {
                    let p = *sources(x).first()?;
                    Some(targets(x).into_iter().map(|q| component(x, q, p)).collect())
                })
                .collect();
            if kernels.len() > 20 {
                return Err(Error::ResourceCap {
                    what: "support for inclusion-exclusion",
                    limit: 20,
                });
            }
            let size = i128::from(F::SIZE);
            let pow = |e: usize| -> Result<i128> {
                size.checked_pow(e as u32).ok_or(Error::ResourceCap {
                    what: "hom dimension",
                    limit: d,
                })
            };
            let total = pow(d)?;
            let mut bad: i128 = 0;
            for mask in 1u32..1 << kernels.len() {
                let rows: Vec<Vec<F>> = kernels
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .flat_map(|(_, rows)| rows.iter().cloned())
                    .collect();
                let term = pow(d - rank(&rows, d))?;
                if mask.count_ones() % 2 == 1 {
                    bad += term;
                } else {
                    bad -= term;
                }
            }
            return Ok(bad < total);
        }
        if d > ENUMERATION_CAP {
            return Err(Error::ResourceCap {
                what: "hom dimension for enumeration",
                limit: ENUMERATION_CAP,
            });
        }
        let blocks: Vec<(Vec<usize>, Vec<usize>, usize)> = (0..self.n)
            .map(|x| (targets(x), sources(x), x))
            .filter(|(_, s, _)| !s.is_empty())
            .collect();
        let mut coeffs = vec![0u32; d];
        loop {
            let c: Vec<F> = coeffs.iter().map(|&k| F::from_i64(i64::from(k))).collect();
            let injective = blocks.iter().all(|(ts, ss, x)| {
                let mat: Vec<Vec<F>> = ts
                    .iter()
                    .map(|&q| {
                        ss.iter()
                            .map(|&p| {
                                component(*x, q, p)
                                    .iter()
                                    .zip(&c)
                                    .fold(F::zero(), |acc, (&b, &ck)| acc.add(b.mul(ck)))
                            })
                            .collect()
                    })
                    .collect();
                rank(&mat, ss.len()) == ss.len()
            });
            if injective {
                return Ok(true);
            }
            // Next coefficient vector in base SIZE.
            let mut k = 0;
            loop {
                if k == d {
                    return Ok(false);
                }
                coeffs[k] += 1;
                if coeffs[k] < F::SIZE {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
        }
    }

    /// Closure by brute force: no excluded `M` embeds into the direct sum of
    /// `len(M) + extra` copies of every non-excluded indecomposable. A
    /// monomorphism into any smaller such sum extends to this one, so this
    /// covers every sum with multiplicities up to the bound.
    pub fn brute_closed_with_bound(
        &self,
        q: &ArQuiver,
        excluded: &BTreeSet<Vertex>,
        extra: u32,
    ) -> Result<bool> {
        let all = q
            .all_vertices()
            .ok_or(Error::Precondition("brute force needs finite type".into()))?;
        for &m in excluded {
            let rep = self.interval_of_vertex(q, m)?;
            let bound = rep.length() as u32 + extra;
            let mut u = ModMultiset::new();
            for &v in all.iter().filter(|v| !excluded.contains(v)) {
                u.add(v, bound);
            }
            if self.has_mono(&[rep], &self.rep_of(q, &u)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn brute_closed(&self, q: &ArQuiver, excluded: &BTreeSet<Vertex>) -> Result<bool> {
        self.brute_closed_with_bound(q, excluded, 0)
    }
}

/// Marker for the number of elements of a finite field.
trait FieldSize {
    const SIZE: u32;
}

impl<const P: u32> FieldSize for Fp<P> {
    const SIZE: u32 = P;
}

struct Layout {
    vars: Vec<HomVar>,
    index: HashMap<(usize, usize, usize), usize>,
    constraints: Vec<Vec<(usize, i64)>>,
}

/// Entry of the component at `vertex` from summand `source` of `M` to
/// summand `target` of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomVar {
    pub vertex: usize,
    pub target: usize,
    pub source: usize,
}

/// An indecomposable of a type-A quiver: one-dimensional on a connected set
/// of vertices, identity maps inside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalRep {
    support: Vec<bool>,
}

impl IntervalRep {
    /// The interval `[a, b]` (0-based, inclusive) on `n` vertices.
    pub fn interval(n: usize, a: usize, b: usize) -> Self {
        Self {
            support: (0..n).map(|x| a <= x && x <= b).collect(),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.support[x]
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.support.iter().map(|&b| i64::from(b)).collect()
    }

    /// Composition length.
    pub fn length(&self) -> usize {
        self.support.iter().filter(|&&b| b).count()
    }

    /// First and last vertex of the support (0-based).
    pub fn bounds(&self) -> Option<(usize, usize)> {
        let a = self.support.iter().position(|&b| b)?;
        let b = self.support.iter().rposition(|&b| b)?;
        Some((a, b))
    }
}

impl fmt::Display for IntervalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds() {
            Some((a, b)) if self.length() == b - a + 1 => write!(f, "[{},{}]", a + 1, b + 1),
            Some(_) => {
                let xs: Vec<String> = (0..self.support.len())
                    .filter(|&x| self.support[x])
                    .map(|x| (x + 1).to_string())
                    .collect();
                write!(f, "{{{}}}", xs.join(","))
            }
            None => write!(f, "0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomSpace {
    pub vars: Vec<HomVar>,
    constraints: Vec<Vec<(usize, i64)>>,
    pub basis: Vec<Vec<Rational64>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Every basis element satisfies every commutation constraint exactly.
    pub fn residual_is_zero(&self) -> bool {
        self.basis.iter().all(|b| {
            self.constraints.iter().all(|row| {
                row.iter()
                    .fold(<Rational64 as Zero>::zero(), |acc, &(k, c)| acc + b[k] * c)
                    .is_zero()
            })
        })
    }
}

pub fn interval_of_vertex(q: &ArQuiver, v: Vertex) -> Result<IntervalRep> {
    TypeA::new(q.cartan())?.interval_of_vertex(q, v)
}

pub fn hom_basis(q: &ArQuiver, m: &ModMultiset, n: &ModMultiset) -> Result<HomSpace> {
    let t = TypeA::new(q.cartan())?;
    Ok(t.hom_basis(&t.rep_of(q, m)?, &t.rep_of(q, n)?))
}

pub fn has_mono(q: &ArQuiver, m: &ModMultiset, n: &ModMultiset) -> Result<bool> {
    let t = TypeA::new(q.cartan())?;
    t.has_mono(&t.rep_of(q, m)?, &t.rep_of(q, n)?)
}

pub fn brute_closed(q: &ArQuiver, excluded: &BTreeSet<Vertex>) -> Result<bool> {
    TypeA::new(q.cartan())?.brute_closed(q, excluded)
}
