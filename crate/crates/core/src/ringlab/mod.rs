//! Brute-force checks of the ring identities behind the minus order on
//! small finite rings.
//!
//! Rings are multiplication and addition tables over element indices, so
//! every set (inner inverses, annihilators, idempotents) is an exhaustive
//! scan. Nothing here touches the matrix code, which lets the two
//! implementations be compared against each other.

mod props;
mod ring;
mod sets;

pub use props::{explore_maximal, MaximalExploration, Mode, Oracle, Proposition, Report, Status};
pub use ring::{FiniteRing, MAX_RING_SIZE};
pub use sets::{
    ann_l, ann_r, d1_set, g1_set, idempotent_set, minus_leq_def, minus_leq_inner, regular_set, ElementSet, RingFacts,
};

/// Build the ring named by `spec` and check one proposition, or all of them
/// when `prop` is `None`.
pub fn verify(spec: &str, prop: Option<Proposition>, mode: Mode) -> crate::Result<Vec<Report>> {
    let ring = FiniteRing::parse(spec)?;
    let oracle = Oracle::new(&ring);
    Ok(match prop {
        Some(p) => vec![oracle.verify(p, mode)],
        None => oracle.verify_all(mode),
    })
}
