use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arquiver::Vertex;
use crate::error::{Error, Result};

/// A word over the simple reflections; letters are 0-based generator
/// indices. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based indices.
    pub fn from_one_based(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l - 1).collect())
    }

    /// Parses whitespace-separated 1-based generator indices.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let index: usize = token
                .parse()
                .map_err(|_| Error::parse(1, token, "expected a generator index"))?;
            if index == 0 || index > n {
                return Err(Error::parse(
                    1,
                    token,
                    format!("generator index out of range 1..={n}"),
                ));
            }
            letters.push(index - 1);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `{s_i s_j}^len`: the alternating word of the given length starting
    /// with `i`.
    pub fn alternating(i: usize, j: usize, len: usize) -> Word {
        Word((0..len).map(|k| if k % 2 == 0 { i } else { j }).collect())
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l >= n) {
            Some(&l) => Err(Error::IndexOutOfRange { index: l + 1, n }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l + 1)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|l| l + 1))
    }
}

/// Image of a word in the grid: strictly increasing vertices whose second
/// components spell the word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PairSeq(pub Vec<Vertex>);

impl PairSeq {
    pub fn pairs(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PairSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lifts each letter to the smallest grid position above the previous one.
pub fn rho(w: &Word) -> PairSeq {
    let mut out = Vec::with_capacity(w.len());
    let mut prev: Option<Vertex> = None;
    for &i in w.letters() {
        let r = match prev {
            None => 0,
            Some(p) if i > p.i => p.r,
            Some(p) => p.r + 1,
        };
        let v = Vertex::new(r, i);
        out.push(v);
        prev = Some(v);
    }
    PairSeq(out)
}

/// The total order `<_l`: shorter words first, then lexicographically on
/// their grid images.
pub fn word_compare(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| rho(a).0.cmp(&rho(b).0))
}
