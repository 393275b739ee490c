//! Exact linear algebra over Z, Q and F_p.

mod complex;
mod group;
mod hom;
pub mod io;
mod lattice;
mod matrix;
pub(crate) mod reduce;
mod ring;
mod snf;

pub use complex::{
    cone_inclusion, cone_projection, mapping_cone, ChainMap, CochainComplex, CohomologyClasses,
};
pub use group::{CyclicSum, FgAbGroup, Normalization};
pub use hom::{hom_group, is_exact_at, AbHom, HomGroup, Realized};
pub use lattice::{kernel_basis, lattice_basis, SubQuotient};
pub use matrix::Matrix;
pub use ring::{big, int, mod_inverse, to_i64, Ring, Scalar};
pub use snf::{invariant_factors, rank, smith_normal_form, Snf};

pub(crate) use hom::validate_matrix;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("torsion is not allowed over a field")]
    TorsionOverField,
    #[error("invalid invariant factor {0}")]
    BadInvariantFactor(BigInt),
    #[error("columns are not linearly independent")]
    NotABasis,
    #[error("relation does not lie in the lattice")]
    RelationOutsideLattice,
    #[error("vector does not lie in the subgroup")]
    NotInSubgroup,
    #[error("matrix has shape {found:?}, expected {expected:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("entry ({row}, {col}) is not an element of the ring")]
    EntryNotInRing { row: usize, col: usize },
    #[error("entry ({row}, {col}) is incompatible with the torsion orders")]
    IncompatibleTorsion { row: usize, col: usize },
    #[error("ring mismatch")]
    RingMismatch,
    #[error("maps are not composable")]
    CompositionMismatch,
    #[error("degree {degree} outside [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("complex has no terms")]
    EmptyComplex,
    #[error("d∘d is nonzero starting in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("maps do not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("malformed data: {0}")]
    Malformed(String),
}
