use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::HochError;
use crate::abmod::io::{matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json};
use crate::abmod::{int, Matrix, Ring, Scalar};
use crate::catcoh::FiniteGroup;

/// A unital associative algebra, free of rank `dim` over `ring`, with
/// `e_i · e_j = Σ_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssocAlgebra {
    ring: Ring,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl AssocAlgebra {
    pub fn new(
        ring: Ring,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, HochError> {
        let dim = unit.len();
        if table.len() != dim
            || table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(HochError::Malformed(format!(
                "structure constants must form a {dim}×{dim}×{dim} array"
            )));
        }
        if table
            .iter()
            .flatten()
            .flatten()
            .chain(&unit)
            .any(|x| !ring.admits(x))
        {
            return Err(HochError::Malformed(
                "structure constant outside the ring".into(),
            ));
        }
        let norm = |v: &Vec<Scalar>| {
            v.iter()
                .map(|x| ring.normalize(x.clone()))
                .collect::<Vec<_>>()
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(norm).collect())
            .collect();
        let alg = AssocAlgebra {
            ring,
            dim,
            table,
            unit: norm(&unit),
        };
        alg.check()?;
        Ok(alg)
    }

    fn check(&self) -> Result<(), HochError> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(HochError::NotUnital(i));
            }
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let right = self.mul(&e, &self.mul_basis(j, k));
                    if left != right {
                        return Err(HochError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = int(1);
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.table[i][j].clone()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let r = self.ring;
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = r.mul(a, b);
                for (k, c) in self.table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    out[k] = r.add(&out[k], &r.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i · x`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul_basis(i, j)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `x ↦ x · e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul_basis(j, i)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn ground(ring: Ring) -> AssocAlgebra {
        AssocAlgebra::new(ring, vec![vec![vec![int(1)]]], vec![int(1)]).expect("ground ring")
    }

    /// `R[x]/x^n` on the basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomials(ring: Ring, n: usize) -> AssocAlgebra {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); n];
                        if i + j < n {
                            v[i + j] = int(1);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = int(1);
        AssocAlgebra::new(ring, table, unit).expect("truncated polynomial ring")
    }

    pub fn dual_numbers(ring: Ring) -> AssocAlgebra {
        AssocAlgebra::truncated_polynomials(ring, 2)
    }

    /// `R[G]` on the basis of group elements.
    pub fn group_algebra(ring: Ring, group: &FiniteGroup) -> AssocAlgebra {
        let n = group.order();
        let table = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        let mut v = vec![Scalar::zero(); n];
                        v[group.mul(g, h)] = int(1);
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![Scalar::zero(); n];
        unit[group.unit()] = int(1);
        AssocAlgebra::new(ring, table, unit).expect("group algebra")
    }

    /// `M_n(R)` on the matrix units `E_ij`, indexed `i·n + j`.
    pub fn matrix_algebra(ring: Ring, n: usize) -> AssocAlgebra {
        let d = n * n;
        let mut table = vec![vec![vec![Scalar::zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[i * n + j][j * n + l][i * n + l] = int(1);
                }
            }
        }
        let mut unit = vec![Scalar::zero(); d];
        for i in 0..n {
            unit[i * n + i] = int(1);
        }
        AssocAlgebra::new(ring, table, unit).expect("matrix algebra")
    }

    /// Upper triangular `2×2` matrices on the basis `E11, E12, E22`.
    pub fn upper_triangular(ring: Ring) -> AssocAlgebra {
        let units = [(0, 0), (0, 1), (1, 1)];
        let mut table = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    let c = units
                        .iter()
                        .position(|&u| u == (i, l))
                        .expect("upper triangular");
                    table[a][b][c] = int(1);
                }
            }
        }
        AssocAlgebra::new(ring, table, vec![int(1), Scalar::zero(), int(1)])
            .expect("upper triangular algebra")
    }

    pub fn product(&self, other: &AssocAlgebra) -> Result<AssocAlgebra, HochError> {
        if self.ring != other.ring {
            return Err(crate::abmod::AbError::RingMismatch.into());
        }
        let (m, n) = (self.dim, other.dim);
        let mut table = vec![vec![vec![Scalar::zero(); m + n]; m + n]; m + n];
        for i in 0..m {
            for j in 0..m {
                table[i][j][..m].clone_from_slice(&self.table[i][j]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                table[m + i][m + j][m..].clone_from_slice(&other.table[i][j]);
            }
        }
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        AssocAlgebra::new(self.ring, table, unit)
    }
}

/// The algebras used throughout the test suite, by name.
pub fn bundled_algebras(ring: Ring) -> Vec<(String, AssocAlgebra)> {
    let k = ring_name(ring);
    let ground = AssocAlgebra::ground(ring);
    vec![
        (k.clone(), ground.clone()),
        (
            format!("{k}×{k}"),
            ground.product(&ground).expect("same ring"),
        ),
        (format!("{k}[x]/x²"), AssocAlgebra::dual_numbers(ring)),
        (
            format!("{k}[C₂]"),
            AssocAlgebra::group_algebra(ring, &FiniteGroup::cyclic(2)),
        ),
        (format!("M₂({k})"), AssocAlgebra::matrix_algebra(ring, 2)),
        (format!("UT₂({k})"), AssocAlgebra::upper_triangular(ring)),
    ]
}

fn ring_name(ring: Ring) -> String {
    match ring {
        Ring::Integers => "Z".into(),
        Ring::Rationals => "Q".into(),
        Ring::PrimeField(p) => format!("F{p}"),
    }
}

/// A bimodule, free of rank `rank`: `left[i]` and `right[i]` are the matrices of
/// `m ↦ e_i · m` and `m ↦ m · e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    ring: Ring,
    rank: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        algebra: &AssocAlgebra,
        rank: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self, HochError> {
        let d = algebra.dim();
        if left.len() != d || right.len() != d {
            return Err(HochError::Malformed(
                "one left and one right matrix per basis element required".into(),
            ));
        }
        if left
            .iter()
            .chain(&right)
            .any(|m| m.nrows() != rank || m.ncols() != rank)
        {
            return Err(HochError::Malformed(format!(
                "action matrices must be {rank}×{rank}"
            )));
        }
        let b = Bimodule {
            ring: algebra.ring(),
            rank,
            left,
            right,
        };
        b.check(algebra)?;
        Ok(b)
    }

    fn combine(&self, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.rank, self.rank);
        for (m, c) in mats.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()) {
            out = out.add(self.ring, &m.scale(self.ring, c));
        }
        out
    }

    fn check(&self, a: &AssocAlgebra) -> Result<(), HochError> {
        let r = self.ring;
        let id = Matrix::identity(self.rank);
        if self.combine(&self.left, a.unit()) != id || self.combine(&self.right, a.unit()) != id {
            return Err(HochError::NotABimodule("the unit acts nontrivially".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = a.mul_basis(i, j);
                if self.left[i].mul(r, &self.left[j]) != self.combine(&self.left, &prod) {
                    return Err(HochError::NotABimodule(format!("left action of e{i}·e{j}")));
                }
                if self.right[j].mul(r, &self.right[i]) != self.combine(&self.right, &prod) {
                    return Err(HochError::NotABimodule(format!(
                        "right action of e{i}·e{j}"
                    )));
                }
                if self.left[i].mul(r, &self.right[j]) != self.right[j].mul(r, &self.left[i]) {
                    return Err(HochError::NotABimodule(format!(
                        "left e{i} and right e{j} do not commute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `A` acting on itself.
    pub fn regular(a: &AssocAlgebra) -> Bimodule {
        Bimodule {
            ring: a.ring(),
            rank: a.dim(),
            left: (0..a.dim()).map(|i| a.left_mult(i)).collect(),
            right: (0..a.dim()).map(|i| a.right_mult(i)).collect(),
        }
    }

    /// `A ⊗ A` with the outer actions `a (x ⊗ y) b = ax ⊗ yb`; basis `(p, q)` indexed `p·d + q`.
    pub fn enveloping(a: &AssocAlgebra) -> Bimodule {
        let d = a.dim();
        let id = Matrix::identity(d);
        Bimodule {
            ring: a.ring(),
            rank: d * d,
            left: (0..d)
                .map(|i| kron(a.ring(), &a.left_mult(i), &id))
                .collect(),
            right: (0..d)
                .map(|i| kron(a.ring(), &id, &a.right_mult(i)))
                .collect(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }
}

pub(crate) fn kron(ring: Ring, a: &Matrix, b: &Matrix) -> Matrix {
    let (bn, bm) = (b.nrows(), b.ncols());
    let mut out = Matrix::zeros(a.nrows() * bn, a.ncols() * bm);
    for i in 0..a.nrows() {
        for (j, x) in a.row(i) {
            out.add_block(ring, i * bn, j * bm, &b.scale(ring, x));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub ring: Ring,
    pub dim: usize,
    pub unit: Vec<Value>,
    /// `table[i][j][k]` is the coefficient of `e_k` in `e_i · e_j`.
    pub table: Vec<Vec<Vec<Value>>>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<AssocAlgebra, HochError> {
        let scalars = |v: &[Value]| {
            v.iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>, _>>()
        };
        let unit = scalars(&self.unit)?;
        if unit.len() != self.dim {
            return Err(HochError::Malformed(format!(
                "unit has {} coordinates, expected {}",
                unit.len(),
                self.dim
            )));
        }
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| scalars(v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        AssocAlgebra::new(self.ring, table, unit)
    }

    pub fn from_algebra(a: &AssocAlgebra) -> AlgebraFile {
        AlgebraFile {
            ring: a.ring(),
            dim: a.dim(),
            unit: a.unit().iter().map(scalar_to_json).collect(),
            table: a
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(scalar_to_json).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub rank: usize,
    pub left: Vec<Value>,
    pub right: Vec<Value>,
}

impl BimoduleFile {
    pub fn to_bimodule(&self, a: &AssocAlgebra) -> Result<Bimodule, HochError> {
        let mats = |v: &[Value]| {
            v.iter()
                .map(|m| matrix_from_json(m, self.rank, self.rank))
                .collect::<Result<Vec<_>, _>>()
        };
        Bimodule::new(a, self.rank, mats(&self.left)?, mats(&self.right)?)
    }

    pub fn from_bimodule(m: &Bimodule) -> BimoduleFile {
        BimoduleFile {
            rank: m.rank,
            left: m.left.iter().map(matrix_to_json).collect(),
            right: m.right.iter().map(matrix_to_json).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_algebras_validate() {
        for ring in [Ring::Rationals, Ring::PrimeField(2), Ring::Integers] {
            for (_, a) in bundled_algebras(ring) {
                Bimodule::new(
                    &a,
                    a.dim(),
                    (0..a.dim()).map(|i| a.left_mult(i)).collect(),
                    (0..a.dim()).map(|i| a.right_mult(i)).collect(),
                )
                .unwrap();
                let e = Bimodule::enveloping(&a);
                e.check(&a).unwrap();
            }
        }
    }

    #[test]
    fn rejects_non_associative() {
        // e1·e1 = e0 but e0 is not a unit
        let table = vec![
            vec![vec![int(1), int(0)], vec![int(0), int(0)]],
            vec![vec![int(0), int(0)], vec![int(1), int(0)]],
        ];
        assert!(AssocAlgebra::new(Ring::Rationals, table, vec![int(1), int(0)]).is_err());
    }

    #[test]
    fn matrix_units_multiply() {
        let m2 = AssocAlgebra::matrix_algebra(Ring::Rationals, 2);
        assert_eq!(m2.mul_basis(1, 2), m2.basis_vector(0));
        assert_eq!(m2.mul_basis(2, 1), m2.basis_vector(3));
        assert!(m2.mul_basis(2, 2).iter().all(Zero::is_zero));
        assert!(!m2.is_commutative());
        assert!(
            AssocAlgebra::group_algebra(Ring::Rationals, &FiniteGroup::cyclic(2)).is_commutative()
        );
    }

    #[test]
    fn file_roundtrip() {
        for (_, a) in bundled_algebras(Ring::Rationals) {
            let json = serde_json::to_string(&AlgebraFile::from_algebra(&a)).unwrap();
            let back: AlgebraFile = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_algebra().unwrap(), a);
            let m = Bimodule::regular(&a);
            let json = serde_json::to_string(&BimoduleFile::from_bimodule(&m)).unwrap();
            let back: BimoduleFile = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_bimodule(&a).unwrap(), m);
        }
    }
}
