//! Finite-dimensional associative algebras: Hochschild cohomology from the bar complex,
//! derivations, noncommutative differentials and their Quillen cohomology.

mod algebra;
mod bar;
mod omega;

pub use algebra::{bundled_algebras, AlgebraFile, AssocAlgebra, Bimodule, BimoduleFile};
pub use bar::{
    bar_cochain_complex, center, compare_derivations, derivations, hochschild_cohomology,
    inner_derivations, DerivationComparison, DerivationSpace,
};
pub use omega::{
    differential_homs, leibniz_presentation, noncomm_differentials, quillen_cohomology_algebra,
    DifferentialHoms, Differentials, LeibnizPresentation,
};

use crate::abmod::AbError;
use crate::catcoh::CohError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochError {
    #[error("structure constants are not associative at (e{i}, e{j}, e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the unit does not act as the identity on e{0}")]
    NotUnital(usize),
    #[error("not a bimodule: {0}")]
    NotABimodule(String),
    #[error("degree {degree} needs a degree cap of at least {needed}, got {cap}")]
    DegreeCapTooLow { degree: i64, needed: i64, cap: i64 },
    #[error("cochain term with {cells} generators exceeds the cap of {cap}")]
    DimensionOverflow { cells: usize, cap: usize },
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error("malformed algebra data: {0}")]
    Malformed(String),
}

impl From<CohError> for HochError {
    fn from(e: CohError) -> Self {
        match e {
            CohError::DimensionOverflow { cells, cap } => {
                HochError::DimensionOverflow { cells, cap }
            }
            CohError::Ab(e) => HochError::Ab(e),
            other => HochError::Malformed(other.to_string()),
        }
    }
}
