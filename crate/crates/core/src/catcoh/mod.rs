//! Coefficient functors on finite categories and their cohomology theories.

mod cochains;
mod coinitial;
mod functor;
mod group;
mod idem;
pub mod io;
mod random;

pub use cochains::{
    baues_wirsching, baues_wirsching_complex, derived_limit, functor_cochain_complex,
    les_exactness, quillen_cohomology, relative_quillen, relative_sequence, restriction_map,
    LesCheck, LesTerm, RelativeSequence,
};
pub use coinitial::{check_coinitial, reduced_homology, CoinitialityReport, CommaReport, Verdict};
pub use functor::CoefFunctor;
pub use group::{
    group_cochain_complex, group_cohomology, reduced_classifying_cohomology, reduced_sequence,
    FiniteGroup, GroupModule, ReducedSequence,
};
pub use idem::{idem_decode, idem_encode, DecodedIdem, IdemTuple};
pub use random::{random_coef_functor, random_cyclic_sum, random_hom, random_idem_tuple, Bounds};

use crate::abmod::AbError;
use crate::fincat::FinCatError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohError {
    #[error("coefficient functor is based on a different category")]
    BaseMismatch,
    #[error("degree {degree} needs a degree cap of at least {needed}, got {cap}")]
    DegreeCapTooLow { degree: i64, needed: i64, cap: i64 },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("action matrices do not form a representation: {0}")]
    NotARepresentation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("functor is not based on the canonical twisted arrow category of Idem")]
    NotIdemBase,
    #[error("the (f,1) and (1,f) actions are not commuting idempotents")]
    ActionNotIdempotent,
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("cochain term with {cells} generators exceeds the cap of {cap}")]
    DimensionOverflow { cells: usize, cap: usize },
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error("malformed coefficient data: {0}")]
    Malformed(String),
}

/// Cap on the number of generators of a single cochain term, from `TL_MAX_CELLS`.
pub fn max_cells() -> usize {
    std::env::var("TL_MAX_CELLS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

pub(crate) fn check_cells(cells: usize) -> Result<(), CohError> {
    let cap = max_cells();
    if cells > cap {
        return Err(CohError::DimensionOverflow { cells, cap });
    }
    Ok(())
}
