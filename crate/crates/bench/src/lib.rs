//! Fixtures shared by the benchmarks.

use weylmod_core::{ArQuiver, CartanData, ModMultiset, Vertex, Word};

/// `(M, U)` pairs on a quiver: every vertex of the first `slices` slices
/// against the sum of the injectives.
pub fn embedding_workload(q: &ArQuiver, slices: u32) -> Vec<(ModMultiset, ModMultiset)> {
    let injectives: ModMultiset = (0..q.n()).map(|i| Vertex::new(0, i)).collect();
    q.vertices(slices)
        .into_iter()
        .map(|v| (ModMultiset::singleton(v), injectives.clone()))
        .collect()
}

/// Words of length `len` cycling through the generators with a twist, so
/// their braid classes are nontrivial.
pub fn word_workload(cartan: &CartanData, len: usize, count: usize) -> Vec<Word> {
    let n = cartan.n();
    (0..count)
        .map(|seed| Word::new((0..len).map(|k| (k * (seed + 1) + seed / n) % n).collect()))
        .collect()
}
