//! Cofinite subcategories, the word dictionary and the closure check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::arquiver::{ArQuiver, Vertex};
use crate::coxeter::{is_leftmost, leftmost_bfs, rho, CartanData, WeylElement, Word};
use crate::embedding::{Engine, Outcome};
use crate::error::{Error, Result};
use crate::multiset::ModMultiset;

/// Number of leading vertices whose subsets are scanned for closed
/// subcategories in infinite type.
pub const INFINITE_WINDOW: usize = 12;

/// A full subcategory missing finitely many indecomposables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CofiniteSubcat {
    excluded: BTreeSet<Vertex>,
}

impl CofiniteSubcat {
    pub fn whole() -> Self {
        Self::default()
    }

    pub fn new(q: &ArQuiver, excluded: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let excluded: BTreeSet<_> = excluded.into_iter().collect();
        for &v in &excluded {
            q.check_exists(v)?;
        }
        Ok(Self { excluded })
    }

    pub fn excluded(&self) -> &BTreeSet<Vertex> {
        &self.excluded
    }

    pub fn contains(&self, v: Vertex) -> bool {
        !self.excluded.contains(&v)
    }
}

/// `C_w` together with the grid pairs of `rho(w)` that are zero modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordSubcat {
    pub subcat: CofiniteSubcat,
    pub dropped: Vec<Vertex>,
}

impl WordSubcat {
    pub fn all_exist(&self) -> bool {
        self.dropped.is_empty()
    }
}

pub fn subcat_of_word(q: &ArQuiver, w: &Word) -> WordSubcat {
    let (excluded, dropped): (Vec<_>, Vec<_>) =
        rho(w).0.into_iter().partition(|&v| q.vertex_exists(v));
    WordSubcat {
        subcat: CofiniteSubcat {
            excluded: excluded.into_iter().collect(),
        },
        dropped,
    }
}

/// The unique word whose grid image is the sorted set, if any.
pub fn word_of_excluded_set(q: &ArQuiver, set: &BTreeSet<Vertex>) -> Result<Word> {
    let mut prev: Option<Vertex> = None;
    let mut letters = Vec::with_capacity(set.len());
    for &v in set {
        q.check_exists(v)?;
        let expected_r = match prev {
            None => 0,
            Some(p) if v.i > p.i => p.r,
            Some(p) => p.r + 1,
        };
        if v.r != expected_r {
            let reason = match prev {
                None => "smallest vertex is not injective",
                Some(_) => "gap after the previous vertex",
            };
            return Err(Error::NotRealizable { at: v, reason });
        }
        letters.push(v.i);
        prev = Some(v);
    }
    Ok(Word::new(letters))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub closed: bool,
    /// Excluded modules that embed into the subcategory, with a module of
    /// the subcategory containing them.
    pub witnesses: Vec<(Vertex, ModMultiset)>,
}

pub fn is_submodule_closed(q: &ArQuiver, c: &CofiniteSubcat) -> Result<ClosureReport> {
    let engine = Engine::new(q);
    let mut witnesses = Vec::new();
    for &m in &c.excluded {
        if let Outcome::Embeds { certificate, .. } = engine.embeds_into_subcat(m, &c.excluded)? {
            witnesses.push((m, certificate));
        }
    }
    Ok(ClosureReport {
        closed: witnesses.is_empty(),
        witnesses,
    })
}

/// Closure check that stops at the first embedding excluded module.
fn closed_fast(engine: &Engine<'_>, excluded: &BTreeSet<Vertex>) -> Result<bool> {
    for &m in excluded {
        if engine.embeds_into_subcat(m, excluded)?.embeds() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub finite_type: bool,
    pub max_len: usize,
    /// Words whose grid pairs all exist, and were therefore compared.
    pub words_checked: usize,
    /// Words with a zero grid pair.
    pub words_skipped: usize,
    pub leftmost_words: usize,
    pub closed_words: usize,
    /// Vertices whose subsets were scanned for closed subcategories.
    pub scanned_vertices: usize,
    /// Closed subcategories found among those subsets.
    pub closed_subsets: usize,
    /// Group order, in finite type.
    pub group_order: Option<usize>,
    pub violations: Vec<String>,
    /// Each leftmost word with its excluded set.
    pub table: Vec<(Word, Vec<Vertex>)>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} type, words up to length {}: {} checked, {} skipped, {} leftmost, {} closed; \
             {} closed subsets of {} vertices",
            if self.finite_type {
                "finite"
            } else {
                "infinite"
            },
            self.max_len,
            self.words_checked,
            self.words_skipped,
            self.leftmost_words,
            self.closed_words,
            self.closed_subsets,
            self.scanned_vertices,
        );
        if let Some(order) = self.group_order {
            s.push_str(&format!("; |W| = {order}"));
        }
        match self.violations.first() {
            None => s.push_str("; no violations"),
            Some(v) => s.push_str(&format!(
                "; {} violations, first: {v}",
                self.violations.len()
            )),
        }
        s
    }
}

fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |i| {
                    let mut next = w.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Word::new));
    }
    out
}

/// Breadth-first enumeration of a finite Weyl group: one reduced word per
/// element, in order of length.
pub fn weyl_group_words(cartan: &CartanData, cap: usize) -> Result<Vec<Word>> {
    let n = cartan.n();
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = WeylElement::identity(n);
    seen.insert(id.clone());
    queue.push_back((id, Vec::new()));
    let mut out = Vec::new();
    while let Some((g, word)) = queue.pop_front() {
        out.push(Word::new(word.clone()));
        for i in 0..n {
            let mut h = g.clone();
            h.mul_simple_right(cartan, i);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "group elements",
                        limit: cap,
                    });
                }
                let mut next = word.clone();
                next.push(i);
                queue.push_back((h, next));
            }
        }
    }
    Ok(out)
}

#[derive(Default)]
struct WordTally {
    checked: usize,
    skipped: usize,
    leftmost: usize,
    closed: usize,
    violations: Vec<String>,
    table: Vec<(Word, Vec<Vertex>)>,
}

impl WordTally {
    fn merge(mut self, other: WordTally) -> WordTally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.leftmost += other.leftmost;
        self.closed += other.closed;
        self.violations.extend(other.violations);
        self.table.extend(other.table);
        self
    }
}

fn check_word(q: &ArQuiver, engine: &Engine<'_>, w: &Word) -> Result<WordTally> {
    let mut t = WordTally::default();
    let cartan = q.cartan();
    let leftmost = leftmost_bfs(w, cartan)? == *w;
    let ws = subcat_of_word(q, w);
    if !ws.all_exist() {
        if leftmost {
            t.violations.push(format!(
                "leftmost word {w} has zero grid pairs {:?}",
                ws.dropped
            ));
        }
        t.skipped = 1;
        return Ok(t);
    }
    t.checked = 1;
    let closed = closed_fast(engine, ws.subcat.excluded())?;
    if closed != leftmost {
        t.violations.push(format!(
            "word {w}: closed = {closed}, leftmost = {leftmost}"
        ));
    }
    if leftmost {
        t.leftmost = 1;
        t.table
            .push((w.clone(), ws.subcat.excluded.iter().copied().collect()));
    }
    if closed {
        t.closed = 1;
    }
    Ok(t)
}

fn subsets_of(vertices: &[Vertex]) -> impl ParallelIterator<Item = BTreeSet<Vertex>> + '_ {
    (0u64..1 << vertices.len())
        .into_par_iter()
        .map(move |mask| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
}

/// Checks the correspondence between leftmost words and submodule closed
/// cofinite subcategories. In finite type the whole group and every subset
/// of the indecomposables are covered, and `max_len` is raised to the
/// length of the longest element if smaller. In infinite type words up to
/// `max_len` and subsets of the first [`INFINITE_WINDOW`] vertices are used.
pub fn verify_bijection(cartan: &CartanData, max_len: usize) -> Result<BijectionReport> {
    let q = ArQuiver::new(cartan.clone());
    let engine = Engine::new(&q);
    let mut report = BijectionReport {
        finite_type: q.is_finite_type(),
        ..Default::default()
    };

    let mut max_len = max_len;
    let mut group_leftmost: Option<BTreeSet<Word>> = None;
    if report.finite_type {
        let elements = weyl_group_words(cartan, 1 << 20)?;
        report.group_order = Some(elements.len());
        max_len = max_len.max(elements.last().map_or(0, Word::len));
        let leftmost: Result<BTreeSet<Word>> = elements
            .par_iter()
            .map(|w| leftmost_bfs(w, cartan))
            .collect();
        group_leftmost = Some(leftmost?);
    }
    report.max_len = max_len;

    let words = all_words(cartan.n(), max_len);
    let tally = words
        .par_iter()
        .map(|w| check_word(&q, &engine, w))
        .try_reduce(WordTally::default, |a, b| Ok(a.merge(b)))?;
    report.words_checked = tally.checked;
    report.words_skipped = tally.skipped;
    report.leftmost_words = tally.leftmost;
    report.closed_words = tally.closed;
    report.violations = tally.violations;
    let mut table = tally.table;
    table.sort_by(|a, b| crate::coxeter::word_compare(&a.0, &b.0));

    let mut by_set: HashMap<&[Vertex], &Word> = HashMap::new();
    for (w, set) in &table {
        if let Some(prev) = by_set.insert(set.as_slice(), w) {
            report.violations.push(format!(
                "leftmost words {prev} and {w} share an excluded set"
            ));
        }
    }
    if let Some(expected) = &group_leftmost {
        let found: BTreeSet<Word> = table.iter().map(|(w, _)| w.clone()).collect();
        if &found != expected {
            report.violations.push(format!(
                "{} leftmost words by enumeration, {} from the group",
                found.len(),
                expected.len()
            ));
        }
    }

    let scan: Vec<Vertex> = match q.all_vertices() {
        Some(all) => all,
        None => q
            .vertices((INFINITE_WINDOW / q.n().max(1) + 1) as u32)
            .into_iter()
            .take(INFINITE_WINDOW)
            .collect(),
    };
    report.scanned_vertices = scan.len();
    let closed_sets: Vec<BTreeSet<Vertex>> = subsets_of(&scan)
        .map(|set| Ok(closed_fast(&engine, &set)?.then_some(set)))
        .filter_map(|r: Result<_>| r.transpose())
        .collect::<Result<_>>()?;
    report.closed_subsets = closed_sets.len();
    for set in &closed_sets {
        match word_of_excluded_set(&q, set) {
            Ok(w) => {
                if !is_leftmost(&w, cartan) || leftmost_bfs(&w, cartan)? != w {
                    report
                        .violations
                        .push(format!("closed set {set:?} has non-leftmost word {w}"));
                }
            }
            Err(e) => report
                .violations
                .push(format!("closed set {set:?} is not realizable: {e}")),
        }
    }
    if let Some(order) = report.group_order {
        if closed_sets.len() != order || table.len() != order {
            report.violations.push(format!(
                "|W| = {order}, {} leftmost words, {} closed subsets",
                table.len(),
                closed_sets.len()
            ));
        }
    }
    report.table = table;
    Ok(report)
}

/// Moves a subcategory to the datum on the indices `keep` (0-based). Every
/// excluded vertex must lie in a kept tau-orbit.
pub fn restrict_to_subalgebra(
    q: &ArQuiver,
    c: &CofiniteSubcat,
    keep: &[usize],
) -> Result<(ArQuiver, CofiniteSubcat)> {
    let sub = ArQuiver::new(q.cartan().restrict(keep)?);
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut excluded = BTreeSet::new();
    for &v in &c.excluded {
        let Ok(i) = keep.binary_search(&v.i) else {
            return Err(Error::Precondition(format!(
                "excluded vertex {v} lies outside the kept indices"
            )));
        };
        let w = Vertex::new(v.r, i);
        sub.check_exists(w)?;
        excluded.insert(w);
    }
    Ok((sub, CofiniteSubcat { excluded }))
}

/// Whether every prefix of `w` is leftmost.
pub fn prefix_leftmost_check(w: &Word, cartan: &CartanData) -> bool {
    (0..=w.len()).all(|k| is_leftmost(&w.prefix(k), cartan))
}
