#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylmod_core::coxeter::{CoxeterMatrix, Word};
use weylmod_core::embedding::{Engine, Init, Outcome, Target};
use weylmod_core::{
    exchange_test, leftmost_bfs, leftmost_greedy, word_compare, ArQuiver, CartanData, DimVector,
    ModMultiset, Vertex,
};

pub fn quivers() -> Vec<(&'static str, CartanData)> {
    vec![
        ("ExWeyl", CartanData::ex_weyl()),
        ("A3", CartanData::linear_a(3)),
        ("Kronecker", CartanData::kronecker()),
    ]
}

pub fn b2() -> CartanData {
    CartanData::from_matrix(vec![vec![2, -1], vec![-2, 2]]).unwrap()
}

pub fn g2() -> CartanData {
    CartanData::from_matrix(vec![vec![2, -1], vec![-3, 2]]).unwrap()
}

pub fn random_multiset<R: Rng>(
    rng: &mut R,
    pool: &[Vertex],
    summands: usize,
    max_mult: u32,
) -> ModMultiset {
    let mut m = ModMultiset::new();
    for _ in 0..summands {
        m.add(*pool.choose(rng).unwrap(), rng.gen_range(1..=max_mult));
    }
    m
}

fn pool(q: &ArQuiver) -> Vec<Vertex> {
    q.vertices(4)
}

/// Random `(M, U)` with `M` of one or two summands.
pub fn random_instance<R: Rng>(rng: &mut R, q: &ArQuiver) -> (ModMultiset, ModMultiset) {
    let pool = pool(q);
    let m_size = rng.gen_range(1..=2);
    let m = random_multiset(rng, &pool, m_size, 1);
    let u_size = rng.gen_range(0..=pool.len());
    let u = random_multiset(rng, &pool, u_size, 2);
    (m, u)
}

fn conserved(q: &ArQuiver, dim_m: &DimVector, middle: &ModMultiset, coker: &ModMultiset) -> bool {
    let mut d = q.dim_of(middle).unwrap();
    d.add_scaled(&q.dim_of(coker).unwrap(), -1);
    &d == dim_m
}

/// One random trajectory; checks `dim(middle) - dim(coker) = dim(M)` and
/// that middle and cokernel never share a vertex.
pub fn conservation_trajectory<R: Rng>(rng: &mut R, q: &ArQuiver) -> Result<usize, String> {
    let (m, u) = random_instance(rng, q);
    let engine = Engine::new(q);
    let dim_m = q.dim_of(&m).unwrap();
    let target = Target::Module(&u);
    let Init::State(mut state) = engine.init_state(&m, target).unwrap() else {
        return Ok(0);
    };
    let check = |middle: &ModMultiset, coker: &ModMultiset, step: usize| {
        if !conserved(q, &dim_m, middle, coker) {
            return Err(format!(
                "M = {m}, U = {u}: conservation fails at step {step}"
            ));
        }
        if !middle.intersection(coker).is_empty() {
            return Err(format!("M = {m}, U = {u}: shared summand at step {step}"));
        }
        Ok(())
    };
    check(&state.middle, &state.coker, 0)?;
    let mut steps = 0;
    loop {
        // Step on any non-injective summand, not only eligible ones.
        let candidates: Vec<Vertex> = state.middle.support().filter(|v| v.r > 0).collect();
        if candidates.is_empty() || steps >= 30 {
            return Ok(steps);
        }
        let x = *candidates.choose(rng).unwrap();
        let before = state.middle.support().collect::<BTreeSet<_>>();
        state = engine.step_state(&state, x, 1).unwrap();
        steps += 1;
        let added: Vec<Vertex> = state
            .middle
            .support()
            .filter(|v| !before.contains(v))
            .collect();
        if added.iter().any(|&v| v >= x) {
            return Err(format!(
                "step on {x} introduced a vertex not below it: {added:?}"
            ));
        }
        check(&state.middle, &state.coker, steps)?;
    }
}

/// The verdict and certificate agree across `orders` random choice orders.
pub fn confluence_instance<R: Rng>(
    rng: &mut R,
    q: &ArQuiver,
    orders: usize,
) -> Result<bool, String> {
    let (m, u) = random_instance(rng, q);
    let engine = Engine::new(q);
    let canonical = engine.decide(&m, &u).unwrap();
    let key = |o: &Outcome| match o {
        Outcome::Embeds { certificate, .. } => (true, Some(certificate.clone())),
        Outcome::NoEmbed { .. } => (false, None),
    };
    if let Outcome::NoEmbed { witness, .. } = &canonical {
        if witness.vertex.r != 0 || witness.required <= u.mult(witness.vertex) {
            return Err(format!("M = {m}, U = {u}: bad witness {witness}"));
        }
    }
    if let Outcome::Embeds { certificate, .. } = &canonical {
        if !certificate.is_subset(&u) {
            return Err(format!(
                "M = {m}, U = {u}: certificate {certificate} not in U"
            ));
        }
    }
    for _ in 0..orders {
        let mut pick = ChaCha8Rng::seed_from_u64(rng.gen());
        let other = engine
            .run_with(&m, Target::Module(&u), |el| pick.gen_range(0..el.len()))
            .unwrap();
        if key(&other) != key(&canonical) {
            return Err(format!(
                "M = {m}, U = {u}: verdicts differ ({:?} vs {:?})",
                key(&canonical),
                key(&other)
            ));
        }
    }
    Ok(canonical.embeds())
}

/// All words of length at most `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * n);
        for w in &frontier {
            for i in 0..n {
                let mut x: Vec<usize> = w.clone();
                x.push(i);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        frontier = next;
    }
    out
}

pub fn greedy_vs_bfs(cartan: &CartanData, max_len: usize) -> Result<usize, String> {
    let words = all_words(cartan.n(), max_len);
    for w in &words {
        let bfs = leftmost_bfs(w, cartan).map_err(|e| e.to_string())?;
        let greedy = leftmost_greedy(w, cartan);
        if bfs != greedy {
            return Err(format!("word {w}: bfs {bfs}, greedy {greedy}"));
        }
    }
    Ok(words.len())
}

fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..n)).collect())
}

pub fn exchange_instance<R: Rng>(rng: &mut R, cartan: &CartanData) -> Result<(), String> {
    let n = cartan.n();
    let cox = CoxeterMatrix::of(cartan);
    let (i, j) = loop {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j && cox.get(i, j).is_some() {
            break (i, j);
        }
    };
    let m = cox.get(i, j).unwrap() as usize;
    let u = random_word(rng, n, 6);
    let v = random_word(rng, n, 3);
    let with_ij = u.concat(&Word::alternating(i, j, m)).concat(&v);
    let with_ji = u.concat(&Word::alternating(j, i, m)).concat(&v);
    let direct = word_compare(&with_ji, &with_ij) == std::cmp::Ordering::Less;
    let test = exchange_test(&u, i, j, &v, cartan).map_err(|e| e.to_string())?;
    if direct != test {
        return Err(format!(
            "u = {u}, i = {}, j = {}, v = {v}: test {test}, direct {direct}",
            i + 1,
            j + 1
        ));
    }
    Ok(())
}

/// Quivers with a few orientations, for existence comparisons.
pub fn orientation_zoo() -> Vec<(&'static str, CartanData)> {
    let mut out = quivers();
    out.push((
        "A4 bent",
        CartanData::from_quiver(4, &[(0, 1), (0, 2), (2, 3)]).unwrap(),
    ));
    out.push((
        "D4",
        CartanData::from_quiver(4, &[(0, 3), (1, 3), (2, 3)]).unwrap(),
    ));
    out.push((
        "A3 tilde",
        CartanData::from_quiver(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
    ));
    out.push((
        "E6",
        CartanData::from_quiver(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap(),
    ));
    out
}

/// Knitted and reflection-walk existence agree, and roots equal dimension
/// vectors.
pub fn knit_vs_reflect(cartan: &CartanData, max_r: u32) -> Result<usize, String> {
    let q = ArQuiver::new(cartan.clone());
    let mut checked = 0;
    for r in 0..=max_r {
        for i in 0..cartan.n() {
            let v = Vertex::new(r, i);
            let knit = q.exists_by_knitting(v).map_err(|e| e.to_string())?;
            let refl = q.exists_by_reflection(v);
            if knit != refl {
                return Err(format!("{v}: knitting {knit}, reflection {refl}"));
            }
            if knit && q.root(v).unwrap() != q.dim_vector(v).unwrap().0 {
                return Err(format!("{v}: root differs from dimension vector"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
