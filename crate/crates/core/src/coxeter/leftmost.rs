use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};

use super::element::WeylElement;
use super::word::{rho, word_compare};
use super::{CartanData, CoxeterMatrix, Word};
use crate::arquiver::Vertex;
use crate::error::{Error, Result};

/// Node cap for [`leftmost_bfs`].
pub const DEFAULT_BFS_CAP: usize = 1_000_000;

/// All words obtained from `w` by one braid substitution
/// `{s_i s_j}^m_ij -> {s_j s_i}^m_ij`.
pub fn braid_neighbors(w: &Word, cox: &CoxeterMatrix) -> BTreeSet<Vec<usize>> {
    let letters = w.letters();
    let mut out = BTreeSet::new();
    for p in 0..letters.len().saturating_sub(1) {
        let (i, j) = (letters[p], letters[p + 1]);
        if i == j {
            continue;
        }
        let Some(m) = cox.get(i, j) else { continue };
        let m = m as usize;
        if p + m > letters.len() {
            continue;
        }
        let site = &letters[p..p + m];
        if site
            .iter()
            .enumerate()
            .all(|(k, &l)| l == if k % 2 == 0 { i } else { j })
        {
            let mut next = letters.to_vec();
            for (k, slot) in next[p..p + m].iter_mut().enumerate() {
                *slot = if k % 2 == 0 { j } else { i };
            }
            out.insert(next);
        }
    }
    out
}

fn delete_adjacent_pairs(mut letters: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(letters.len());
    for l in letters.drain(..) {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Exhaustive leftmost word: nil deletions plus breadth-first search over
/// the braid graph, returning the `<_l`-minimum of the braid class of a
/// reduced word.
pub fn leftmost_bfs(w: &Word, cartan: &CartanData) -> Result<Word> {
    leftmost_bfs_capped(w, cartan, DEFAULT_BFS_CAP)
}

pub fn leftmost_bfs_capped(w: &Word, cartan: &CartanData, cap: usize) -> Result<Word> {
    let cox = CoxeterMatrix::of(cartan);
    let mut current = delete_adjacent_pairs(w.letters().to_vec());
    let mut explored = 0usize;
    'restart: loop {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(current.clone());
        queue.push_back(current.clone());
        let mut best = current.clone();
        while let Some(word) = queue.pop_front() {
            explored += 1;
            if explored > cap {
                return Err(Error::ResourceCap {
                    what: "braid-graph search",
                    limit: cap,
                });
            }
            // A braid class containing `ss` is not reduced: delete and restart.
            if word.windows(2).any(|p| p[0] == p[1]) {
                current = delete_adjacent_pairs(word);
                continue 'restart;
            }
            if word_compare(&Word::new(word.clone()), &Word::new(best.clone())) == Ordering::Less {
                best = word.clone();
            }
            for next in braid_neighbors(&Word::new(word), &cox) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        return Ok(Word::new(best));
    }
}

/// Left-greedy leftmost word: walk the grid in order and emit `s_i` at
/// `(r, i)` whenever it is a left descent of the remaining element.
pub fn leftmost_greedy(w: &Word, cartan: &CartanData) -> Word {
    // Track v^{-1}: s_i is a left descent of v iff v^{-1}(alpha_i) < 0.
    let mut inverse = WeylElement::identity(cartan.n());
    for &i in w.letters().iter().rev() {
        inverse.mul_simple_right(cartan, i);
    }
    let n = cartan.n();
    let mut out = Vec::new();
    let mut pos = 0usize;
    while !inverse.is_identity() {
        let i = pos % n;
        if inverse.has_right_descent(i) {
            out.push(i);
            inverse.mul_simple_right(cartan, i);
        }
        pos += 1;
    }
    Word::new(out)
}

pub fn is_leftmost(w: &Word, cartan: &CartanData) -> bool {
    leftmost_greedy(w, cartan) == *w
}

/// Decides whether replacing `{s_i s_j}^m_ij` by `{s_j s_i}^m_ij` after the
/// prefix `u` makes the word `<_l`-smaller, using only the grid positions of
/// `u` and of the first two letters of the braid site.
pub fn exchange_test(u: &Word, i: usize, j: usize, v: &Word, cartan: &CartanData) -> Result<bool> {
    cartan.check_index(i)?;
    cartan.check_index(j)?;
    if i == j {
        return Err(Error::SameIndex(i + 1));
    }
    let cox = CoxeterMatrix::of(cartan);
    let m = cox
        .get(i, j)
        .ok_or(Error::InfiniteOrder { i: i + 1, j: j + 1 })? as usize;
    let w1 = u.concat(&Word::alternating(i, j, m)).concat(v);
    let pairs = rho(&w1);
    let q = pairs.pairs()[u.len() + 1].r;
    if q == 0 {
        return Ok(false);
    }
    let bound = Vertex::new(q - 1, j);
    Ok(pairs.pairs()[..u.len()].iter().all(|&p| p < bound))
}
