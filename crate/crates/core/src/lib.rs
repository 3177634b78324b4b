//! Exact orbit counting for `SL(2, Z_p)` acting on pairs of residue vectors.
//!
//! The number of classes of `G x G` under `(g, k) ~ (k, -g)` and
//! `(g, k) ~ (g, k + g)` is computed three ways ([`orbit`]), compared with
//! closed forms ([`closed_forms`]), and connected to four-letter
//! restricted-growth words ([`rg`], [`bridge`]).

pub mod bridge;
pub mod closed_forms;
pub mod error;
pub mod orbit;
pub mod residue;
pub mod rg;

pub use bridge::{encode_letter, encode_word, verify_bridge, BridgeReport};
pub use closed_forms::{
    f_closed, f_recurrence, r_formula, r_p2_product, r_telescoped, sequence_table, ExactInt,
};
pub use error::{Error, Result};
pub use orbit::{
    canonical_form, orbit_of, CensusReport, Method, OrbitEngine, OrbitSummary, DEFAULT_STATE_BUDGET,
};
pub use residue::{
    apply_mat, apply_s, apply_t, enumerate_sl2, is_prime, state_from_index, state_index, GroupSpec,
    Mat2, PairState, ResidueVector,
};
pub use rg::{count_words, enumerate_words, is_valid_word, RGWord};
