//! Deciding monomorphisms `M -> U` between preinjective modules by rewriting
//! short exact sequences `0 -> M -> middle -> coker -> 0`.
//!
//! The state starts from the almost split sequence at `M`. Each step picks a
//! non-injective summand `x` of the middle term that `U` cannot absorb and
//! splices in the almost split sequence starting at `x`, cancelling summands
//! shared with the cokernel. A monomorphism exists iff the rewriting reaches
//! a middle term that is a summand of `U` without ever demanding more copies
//! of an injective than `U` has. The verdict does not depend on the order in
//! which eligible summands are picked.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::arquiver::{ArQuiver, Vertex};
use crate::error::{Error, Result};
use crate::multiset::ModMultiset;

/// Default bound on the number of rewriting steps.
pub const DEFAULT_TRACE_LIMIT: usize = 10_000;

/// The module `U` the engine tries to embed into.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    /// A concrete direct sum.
    Module(&'a ModMultiset),
    /// Any module of a cofinite subcategory: excluded vertices are
    /// unavailable, all others unlimited.
    Excluding(&'a BTreeSet<Vertex>),
}

impl Target<'_> {
    /// Available multiplicity of `v`; `None` is unlimited.
    pub fn available(&self, v: Vertex) -> Option<u32> {
        match self {
            Target::Module(u) => Some(u.mult(v)),
            Target::Excluding(ex) => ex.contains(&v).then_some(0),
        }
    }

    fn over_demanded(&self, v: Vertex, k: u32) -> bool {
        self.available(v).is_some_and(|a| k > a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub replaced: Vertex,
    pub alpha: u32,
    pub middle: ModMultiset,
    pub coker: ModMultiset,
}

/// A short exact sequence `0 -> M -> middle -> coker -> 0` reached by the
/// rewriting, with the steps that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeqState {
    pub middle: ModMultiset,
    pub coker: ModMultiset,
    pub trace: Vec<StepRecord>,
}

impl SeqState {
    /// One line per step: `step k: replace r:i -> middle {..} coker {..}`.
    pub fn trace_lines(&self) -> Vec<String> {
        format_trace(&self.trace)
    }
}

pub fn format_trace(trace: &[StepRecord]) -> Vec<String> {
    trace
        .iter()
        .enumerate()
        .map(|(k, s)| {
            format!(
                "step {}: replace {}:{} -> middle {} coker {}",
                k + 1,
                s.replaced.r,
                s.replaced.i + 1,
                s.middle,
                s.coker
            )
        })
        .collect()
}

/// An injective summand demanded more often than the target provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: Vertex,
    pub required: u32,
    pub available: u32,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "requires {}", self.vertex)?;
        if self.required != 1 {
            write!(f, "^{}", self.required)?;
        }
        write!(f, ", U provides {}", self.available)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    /// `M` is already a summand of `U`.
    Yes,
    /// An injective summand of `M` is missing from `U`.
    No(Witness),
    State(SeqState),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Outcome {
    /// The final middle term is a summand of `U` containing `M`.
    Embeds {
        certificate: ModMultiset,
        trace: Vec<StepRecord>,
    },
    NoEmbed {
        witness: Witness,
        trace: Vec<StepRecord>,
    },
}

impl Outcome {
    pub fn embeds(&self) -> bool {
        matches!(self, Outcome::Embeds { .. })
    }

    pub fn trace(&self) -> &[StepRecord] {
        match self {
            Outcome::Embeds { trace, .. } | Outcome::NoEmbed { trace, .. } => trace,
        }
    }
}

/// The rewriting engine over a fixed preinjective component.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'q> {
    quiver: &'q ArQuiver,
    trace_limit: usize,
}

impl<'q> Engine<'q> {
    pub fn new(quiver: &'q ArQuiver) -> Self {
        Self {
            quiver,
            trace_limit: DEFAULT_TRACE_LIMIT,
        }
    }

    pub fn with_trace_limit(mut self, limit: usize) -> Self {
        self.trace_limit = limit;
        self
    }

    pub fn quiver(&self) -> &'q ArQuiver {
        self.quiver
    }

    fn check_all_exist(&self, m: &ModMultiset) -> Result<()> {
        m.support().try_for_each(|v| self.quiver.check_exists(v))
    }

    /// Summands of `M` that `U` can absorb are kept, every other summand is
    /// replaced by the middle term of its almost split sequence.
    pub fn init_state(&self, m: &ModMultiset, target: Target<'_>) -> Result<Init> {
        self.check_all_exist(m)?;
        if let Target::Module(u) = target {
            self.check_all_exist(u)?;
        }
        let mut middle = ModMultiset::new();
        let mut coker = ModMultiset::new();
        let mut replaced_any = false;
        for (v, k) in m.iter() {
            let kept = target.available(v).map_or(k, |a| a.min(k));
            middle.add(v, kept);
            let rest = k - kept;
            if rest == 0 {
                continue;
            }
            let Some(end) = v.tau_inverse() else {
                return Ok(Init::No(Witness {
                    vertex: v,
                    required: k,
                    available: target.available(v).unwrap_or(0),
                }));
            };
            replaced_any = true;
            let (mid, _) = self.quiver.ar_sequence_start(v)?;
            middle.extend_from(&mid.scaled(rest));
            coker.add(end, rest);
        }
        if !replaced_any {
            return Ok(Init::Yes);
        }
        let common = middle.intersection(&coker);
        let middle = middle.difference(&common)?;
        let coker = coker.difference(&common)?;
        Ok(Init::State(SeqState {
            middle,
            coker,
            trace: Vec::new(),
        }))
    }

    /// Replaces one copy of `x` in the middle term by the middle term of the
    /// almost split sequence starting at `x`.
    pub fn step_state(&self, state: &SeqState, x: Vertex, alpha: u32) -> Result<SeqState> {
        let have = state.middle.mult(x);
        if have == 0 {
            return Err(Error::NotInMiddle(x));
        }
        if alpha == 0 || alpha > have {
            return Err(Error::Precondition(format!(
                "alpha = {alpha} but the middle term has {have} copies of {x}"
            )));
        }
        let (z, end) = self.quiver.ar_sequence_start(x)?;
        debug_assert!(z.support().all(|w| w < x), "replacement must decrease");

        let mut rest = state.middle.clone();
        rest.remove(x, 1)?;
        let shared = state.coker.intersection(&z);
        let mut coker = state.coker.difference(&shared)?;
        let z_rest = z.difference(&shared)?;
        if rest.mult(end) > 0 {
            rest.remove(end, 1)?;
        } else {
            coker.add(end, 1);
        }
        rest.extend_from(&z_rest);
        debug_assert!(rest.intersection(&coker).is_empty());

        let mut trace = state.trace.clone();
        trace.push(StepRecord {
            replaced: x,
            alpha,
            middle: rest.clone(),
            coker: coker.clone(),
        });
        Ok(SeqState {
            middle: rest,
            coker,
            trace,
        })
    }

    /// Non-injective summands the target cannot absorb, smallest first.
    pub fn eligible(&self, state: &SeqState, target: Target<'_>) -> Vec<Vertex> {
        state
            .middle
            .iter()
            .filter(|&(v, k)| v.r > 0 && target.over_demanded(v, k))
            .map(|(v, _)| v)
            .collect()
    }

    fn injective_over_demand(&self, state: &SeqState, target: Target<'_>) -> Option<Witness> {
        state
            .middle
            .iter()
            .find(|&(v, k)| v.r == 0 && target.over_demanded(v, k))
            .map(|(v, k)| Witness {
                vertex: v,
                required: k,
                available: target.available(v).unwrap_or(0),
            })
    }

    /// Runs the rewriting; `choose` picks an index into the eligible list
    /// (which is sorted smallest first).
    pub fn run_with<F>(&self, m: &ModMultiset, target: Target<'_>, mut choose: F) -> Result<Outcome>
    where
        F: FnMut(&[Vertex]) -> usize,
    {
        let mut state = match self.init_state(m, target)? {
            Init::Yes => {
                return Ok(Outcome::Embeds {
                    certificate: m.clone(),
                    trace: Vec::new(),
                })
            }
            Init::No(witness) => {
                return Ok(Outcome::NoEmbed {
                    witness,
                    trace: Vec::new(),
                })
            }
            Init::State(s) => s,
        };
        loop {
            if let Some(witness) = self.injective_over_demand(&state, target) {
                return Ok(Outcome::NoEmbed {
                    witness,
                    trace: state.trace,
                });
            }
            let eligible = self.eligible(&state, target);
            if eligible.is_empty() {
                debug_assert!(state
                    .middle
                    .iter()
                    .all(|(v, k)| !target.over_demanded(v, k)));
                return Ok(Outcome::Embeds {
                    certificate: state.middle,
                    trace: state.trace,
                });
            }
            if state.trace.len() >= self.trace_limit {
                return Err(Error::ResourceCap {
                    what: "rewriting steps",
                    limit: self.trace_limit,
                });
            }
            let x = eligible[choose(&eligible)];
            let alpha = target.available(x).map_or(1, |a| a + 1);
            state = self.step_state(&state, x, alpha)?;
        }
    }

    /// Canonical run: always replace the smallest eligible summand.
    pub fn decide(&self, m: &ModMultiset, u: &ModMultiset) -> Result<Outcome> {
        self.run_with(m, Target::Module(u), |_| 0)
    }

    /// Whether `m` embeds into some module of the subcategory whose
    /// indecomposables are all but `excluded`. On success the certificate
    /// is such a module.
    pub fn embeds_into_subcat(&self, m: Vertex, excluded: &BTreeSet<Vertex>) -> Result<Outcome> {
        self.run_with(
            &ModMultiset::singleton(m),
            Target::Excluding(excluded),
            |_| 0,
        )
    }
}

pub fn init_state(q: &ArQuiver, m: &ModMultiset, u: &ModMultiset) -> Result<Init> {
    Engine::new(q).init_state(m, Target::Module(u))
}

pub fn step_state(q: &ArQuiver, state: &SeqState, x: Vertex, alpha: u32) -> Result<SeqState> {
    Engine::new(q).step_state(state, x, alpha)
}

pub fn decide_embedding(q: &ArQuiver, m: &ModMultiset, u: &ModMultiset) -> Result<Outcome> {
    Engine::new(q).decide(m, u)
}

pub fn embeds_into_subcat(
    q: &ArQuiver,
    m: Vertex,
    subcat: &crate::subcats::CofiniteSubcat,
) -> Result<Outcome> {
    Engine::new(q).embeds_into_subcat(m, subcat.excluded())
}

/// `E(0) = 1`, `E(1) = alpha`, then alternately
/// `E(2k) = beta E(2k-1) - E(2k-2)` and `E(2k+1) = alpha E(2k) - E(2k-1)`.
/// The sequence is taken to vanish from its first zero on.
pub fn e_rec(alpha: u64, beta: u64, m: usize) -> i128 {
    e_sequence(alpha, beta, m + 1)[m]
}

pub fn e_sequence(alpha: u64, beta: u64, len: usize) -> Vec<i128> {
    let (a, b) = (i128::from(alpha), i128::from(beta));
    let mut out: Vec<i128> = Vec::with_capacity(len);
    for k in 0..len {
        let value = match k {
            0 => 1,
            1 => a,
            _ if out[k - 1] == 0 => 0,
            _ => {
                let factor = if k % 2 == 0 { b } else { a };
                factor * out[k - 1] - out[k - 2]
            }
        };
        out.push(value);
    }
    out
}

/// The chain `M_0 = (s, i)`, `M_1 = (t, j)` with `(s-1, i) < (t, j) < (s, i)`,
/// then alternately `tau^{-1}` of the previous two. Zero modules are `None`.
pub fn m_chain(q: &ArQuiver, m0: Vertex, j: usize, count: usize) -> Result<Vec<Option<Vertex>>> {
    q.check_exists(m0)?;
    q.cartan().check_index(j)?;
    if j == m0.i {
        return Err(Error::SameIndex(j + 1));
    }
    if m0.r == 0 && j > m0.i {
        return Err(Error::Precondition(format!(
            "chain from injective {m0} towards a larger index {} is undefined",
            j + 1
        )));
    }
    let t = if j < m0.i {
        i64::from(m0.r)
    } else {
        i64::from(m0.r) - 1
    };
    Ok((0..count)
        .map(|k| {
            let half = (k / 2) as i64;
            let (r, i) = if k % 2 == 0 {
                (i64::from(m0.r) - half, m0.i)
            } else {
                (t - half, j)
            };
            u32::try_from(r)
                .ok()
                .map(|r| Vertex::new(r, i))
                .filter(|&v| q.vertex_exists(v))
        })
        .collect())
}

/// The specialized sequence `0 -> M_0 -> M_m^E(m) + U_m -> M_{m+1}^E(m-1) -> 0`
/// reached by repeatedly replacing the current chain vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecSeq {
    pub chain_vertex: Vertex,
    pub chain_power: u32,
    pub u_m: ModMultiset,
    pub next_vertex: Vertex,
    pub next_power: u32,
    pub middle: ModMultiset,
    pub coker: ModMultiset,
}

pub fn recseq(q: &ArQuiver, m0: Vertex, j: usize, m: usize) -> Result<RecSeq> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let chain = m_chain(q, m0, j, m + 2)?;
    let Some(next_vertex) = chain[m + 1] else {
        return Err(Error::Precondition(format!("M_{} is zero", m + 1)));
    };
    let (alpha, beta) = q.alpha_beta(m0.i, j)?;
    let e = e_sequence(alpha.into(), beta.into(), m + 1);
    if e[m - 1] <= 0 {
        return Err(Error::Precondition(format!("E({}) vanishes", m - 1)));
    }
    let mut u_m = ModMultiset::new();
    for k in 0..m {
        let Some(current) = chain[k] else {
            return Err(Error::Precondition(format!("M_{k} is zero")));
        };
        let Some(following) = chain[k + 1] else {
            return Err(Error::Precondition(format!("M_{} is zero", k + 1)));
        };
        let gamma = if k % 2 == 0 { alpha } else { beta };
        let (mid, _) = q.ar_sequence_start(current)?;
        let mut side = mid;
        side.remove(following, gamma)?;
        u_m.extend_from(&side.scaled(e[k] as u32));
    }
    let chain_vertex = chain[m].expect("M_{m} precedes the existing M_{m+1}");
    let chain_power =
        u32::try_from(e[m]).map_err(|_| Error::Precondition(format!("E({m}) is negative")))?;
    let next_power = e[m - 1] as u32;
    let mut middle = u_m.clone();
    middle.add(chain_vertex, chain_power);
    let mut coker = ModMultiset::new();
    coker.add(next_vertex, next_power);
    Ok(RecSeq {
        chain_vertex,
        chain_power,
        u_m,
        next_vertex,
        next_power,
        middle,
        coker,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanData;

    fn v(r: u32, i: usize) -> Vertex {
        Vertex::new(r, i - 1)
    }

    fn ms(vs: &[(u32, usize)]) -> ModMultiset {
        vs.iter().map(|&(r, i)| v(r, i)).collect()
    }

    fn state(middle: &[(u32, usize)], coker: &[(u32, usize)]) -> SeqState {
        SeqState {
            middle: ms(middle),
            coker: ms(coker),
            trace: Vec::new(),
        }
    }

    #[test]
    fn init_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let u = ms(&[(0, 2), (0, 3), (0, 4)]);
        let Init::State(s) = init_state(&q, &ms(&[(1, 3)]), &u).unwrap() else {
            panic!("expected a state")
        };
        assert_eq!((s.middle, s.coker), (ms(&[(1, 1), (1, 2)]), ms(&[(0, 3)])));
        assert_eq!(
            init_state(&q, &ms(&[(0, 1)]), &ms(&[(0, 1)])).unwrap(),
            Init::Yes
        );
        let Init::State(s) = init_state(&q, &ms(&[(1, 1), (1, 2)]), &ms(&[(0, 3)])).unwrap() else {
            panic!("expected a state")
        };
        assert_eq!(
            (s.middle, s.coker),
            (ms(&[(0, 3), (0, 3), (0, 4), (0, 4)]), ms(&[(0, 1), (0, 2)]))
        );
        assert!(matches!(
            init_state(&q, &ms(&[(0, 1)]), &ms(&[(0, 2)])).unwrap(),
            Init::No(Witness {
                required: 1,
                available: 0,
                ..
            })
        ));
        assert_eq!(
            init_state(&q, &ms(&[(9, 9)]), &ModMultiset::new()),
            Err(Error::IndexOutOfRange { index: 9, n: 4 })
        );
    }

    #[test]
    fn step_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let s1 = step_state(&q, &state(&[(1, 1), (1, 2)], &[(0, 3)]), v(1, 1), 1).unwrap();
        assert_eq!(
            (&s1.middle, &s1.coker),
            (&ms(&[(1, 2), (0, 4)]), &ms(&[(0, 1)]))
        );
        let s2 = step_state(&q, &s1, v(1, 2), 1).unwrap();
        assert_eq!(
            (&s2.middle, &s2.coker),
            (&ms(&[(0, 3), (0, 4), (0, 4)]), &ms(&[(0, 1), (0, 2)]))
        );
        assert_eq!(s2.trace.len(), 2);
        let s3 = step_state(&q, &state(&[(1, 1), (0, 1)], &[]), v(1, 1), 1).unwrap();
        assert_eq!(
            (s3.middle, s3.coker),
            (ms(&[(0, 3), (0, 4)]), ModMultiset::new())
        );
    }

    #[test]
    fn step_errors() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let s = state(&[(1, 1), (0, 4)], &[]);
        assert_eq!(
            step_state(&q, &s, v(0, 4), 1),
            Err(Error::InjectiveVertex(v(0, 4)))
        );
        assert_eq!(
            step_state(&q, &s, v(1, 2), 1),
            Err(Error::NotInMiddle(v(1, 2)))
        );
        assert!(matches!(
            step_state(&q, &s, v(1, 1), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn decide_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let out = decide_embedding(&q, &ms(&[(1, 3)]), &ms(&[(0, 2), (0, 3), (0, 4)])).unwrap();
        let Outcome::NoEmbed { witness, trace } = out else {
            panic!("expected NoEmbed")
        };
        assert_eq!(
            witness,
            Witness {
                vertex: v(0, 4),
                required: 2,
                available: 1
            }
        );
        assert_eq!(witness.to_string(), "requires (0,4)^2, U provides 1");
        assert_eq!(trace.len(), 2);

        let out = decide_embedding(&q, &ms(&[(1, 1)]), &ms(&[(0, 3), (0, 4)])).unwrap();
        assert_eq!(
            out,
            Outcome::Embeds {
                certificate: ms(&[(0, 3), (0, 4)]),
                trace: Vec::new()
            }
        );
        assert!(!decide_embedding(&q, &ms(&[(0, 1)]), &ms(&[(0, 2)]))
            .unwrap()
            .embeds());
    }

    #[test]
    fn trace_limit_is_an_error() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let err = Engine::new(&q)
            .with_trace_limit(1)
            .decide(&ms(&[(1, 3)]), &ms(&[(0, 2), (0, 3), (0, 4)]))
            .unwrap_err();
        assert!(err.is_resource_cap());
    }

    #[test]
    fn subcat_examples() {
        let a2 = ArQuiver::new(CartanData::linear_a(2));
        let engine = Engine::new(&a2);
        let ex: BTreeSet<_> = [v(0, 2), v(1, 1)].into();
        assert!(!engine.embeds_into_subcat(v(1, 1), &ex).unwrap().embeds());
        let ex: BTreeSet<_> = [v(1, 1)].into();
        assert_eq!(
            engine.embeds_into_subcat(v(1, 1), &ex).unwrap(),
            Outcome::Embeds {
                certificate: ms(&[(0, 2)]),
                trace: Vec::new()
            }
        );
        let ex: BTreeSet<_> = [v(0, 2)].into();
        assert!(!engine.embeds_into_subcat(v(0, 2), &ex).unwrap().embeds());
    }

    #[test]
    fn trace_format() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let s = step_state(&q, &state(&[(1, 1), (1, 2)], &[(0, 3)]), v(1, 1), 1).unwrap();
        assert_eq!(
            s.trace_lines(),
            vec!["step 1: replace 1:1 -> middle {(0,4),(1,2)} coker {(0,1)}"]
        );
    }

    #[test]
    fn e_table() {
        assert_eq!(e_sequence(3, 1, 7), vec![1, 3, 2, 3, 1, 0, 0]);
        assert_eq!(e_sequence(0, 0, 4), vec![1, 0, 0, 0]);
        assert_eq!(e_sequence(2, 2, 5), vec![1, 2, 3, 4, 5]);
        assert_eq!(e_rec(1, 1, 2), 0);
    }

    #[test]
    fn chain_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        assert_eq!(
            m_chain(&q, v(1, 3), 0, 5).unwrap(),
            vec![
                Some(v(1, 3)),
                Some(v(1, 1)),
                Some(v(0, 3)),
                Some(v(0, 1)),
                None
            ]
        );
        assert_eq!(
            m_chain(&q, v(1, 1), 2, 4).unwrap(),
            vec![Some(v(1, 1)), Some(v(0, 3)), Some(v(0, 1)), None]
        );
        assert_eq!(
            m_chain(&q, v(0, 2), 0, 3).unwrap(),
            vec![Some(v(0, 2)), Some(v(0, 1)), None]
        );
        assert!(matches!(
            m_chain(&q, v(0, 1), 2, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recseq_examples() {
        let q = ArQuiver::new(CartanData::ex_weyl());
        let r1 = recseq(&q, v(1, 3), 0, 1).unwrap();
        assert_eq!((r1.chain_vertex, r1.chain_power), (v(1, 1), 1));
        assert_eq!(r1.u_m, ms(&[(1, 2)]));
        assert_eq!(r1.coker, ms(&[(0, 3)]));
        let r2 = recseq(&q, v(1, 3), 0, 2).unwrap();
        assert_eq!((r2.chain_vertex, r2.chain_power), (v(0, 3), 0));
        assert_eq!(r2.middle, ms(&[(1, 2), (0, 4)]));
        assert_eq!(r2.coker, ms(&[(0, 1)]));
        assert!(matches!(
            recseq(&q, v(1, 3), 0, 3),
            Err(Error::Precondition(_))
        ));

        let k = ArQuiver::new(CartanData::kronecker());
        let r = recseq(&k, v(3, 1), 1, 1).unwrap();
        assert_eq!(r.middle, ms(&[(2, 2), (2, 2)]));
        assert_eq!(r.coker, ms(&[(2, 1)]));
        assert!(r.u_m.is_empty());
    }
}
