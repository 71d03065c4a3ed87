//! Finite-precision denseness oracles.
//!
//! A set `X ⊆ ℕ` is dense in `Z_p` iff it meets every residue class mod
//! `p^j` for every `j`. The oracles here only ever look at `X ∩ [1, N]`
//! ([`WindowSet`]) and a fixed precision, so they report coverage "to depth",
//! never denseness. Non-denseness is established separately through
//! [`AvoidanceCertificate`]s, which hold for every window.

mod cells;
mod certificate;
mod coverage;
mod lemma;
mod sampling;
mod window;

pub use cells::{
    cell_hits, ratio_cell_hit, ratio_cell_hit_brute, ratio_cell_hit_checked, CellHitSet, CellKey,
    RatioIndex, RatioWitness,
};
pub use certificate::{
    find_avoided_cell, find_avoided_class, AvoidanceCertificate, Justification, Obstruction,
};
pub use coverage::{zp_coverage, CoverageReport, RESIDUE_BUDGET};
pub use lemma::{verify_ratio_lemma, LemmaParams, LemmaVerdict};
pub use sampling::{sample_ratio_instance, seeded_rng, LemmaInstance, LemmaSampler};
pub use window::{Provenance, WindowSet};
