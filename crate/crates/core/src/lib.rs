//! Combinatorics of leftmost Coxeter words and cofinite submodule-closed
//! subcategories of hereditary algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`coxeter`]: Cartan data, the Coxeter matrix, words, the grid map
//!   [`rho`], the order on words, reducedness and leftmost words.
//! - [`arquiver`]: the preinjective Auslander-Reiten component, indexed by
//!   grid vertices `(r, i) = tau^r I_i`.
//! - [`embedding`]: the rewriting procedure deciding whether a preinjective
//!   module is a submodule of another.
//! - [`subcats`]: the word / subcategory dictionary and the bijection
//!   verification harness.
//! - [`linoracle`]: explicit linear algebra on type-A quivers, used as an
//!   independent cross-check.
//! - [`input`]: the quiver / Cartan file formats.

pub mod arquiver;
pub mod coxeter;
pub mod embedding;
mod error;
pub mod input;
pub mod linoracle;
pub mod multiset;
pub mod subcats;

pub use arquiver::{ArQuiver, DimVector, Valuation, Vertex};
pub use coxeter::{
    braid_neighbors, build_coxeter_matrix, element_of, exchange_test, is_reduced, leftmost_bfs,
    leftmost_greedy, rho, word_compare, CartanData, CartanMode, CoxeterMatrix, PairSeq,
    WeylElement, Word, DEFAULT_BFS_CAP,
};
pub use embedding::{
    decide_embedding, e_rec, embeds_into_subcat, init_state, m_chain, recseq, step_state, Engine,
    Init, Outcome, RecSeq, SeqState, StepRecord, Target, Witness,
};
pub use error::{Error, Result};
pub use input::parse_cartan_file;
pub use multiset::ModMultiset;
pub use subcats::{
    is_submodule_closed, prefix_leftmost_check, restrict_to_subalgebra, subcat_of_word,
    verify_bijection, word_of_excluded_set, BijectionReport, ClosureReport, CofiniteSubcat,
    WordSubcat,
};
