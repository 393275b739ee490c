//! Subquotients `L / W` of `R^g`, where `L` is a lattice given by a basis and `W` a set of
//! vectors inside `L`. Kernels, images, cokernels and cohomology are all instances.

use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use super::snf::{snf_dense, Track};
use super::AbError;

type Dense = Vec<Vec<Scalar>>;

/// Columns spanning the kernel of `a` (over Z: a basis of the saturated kernel lattice).
pub fn kernel_basis(ring: Ring, a: &Matrix) -> Matrix {
    let n = a.ncols();
    let data = snf_dense(
        ring,
        a.to_dense(),
        n,
        Track {
            v: true,
            ..Track::NONE
        },
    );
    let v = data.v.unwrap();
    let cols: Vec<Vec<Scalar>> = (data.rank..n)
        .map(|j| v.iter().map(|row| row[j].clone()).collect())
        .collect();
    Matrix::from_columns(n, &cols)
}

/// A basis of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(ring: Ring, gens: &Matrix) -> Matrix {
    let m = gens.nrows();
    let data = snf_dense(
        ring,
        gens.to_dense(),
        gens.ncols(),
        Track {
            u_inv: true,
            ..Track::NONE
        },
    );
    let ui = data.u_inv.unwrap();
    let cols: Vec<Vec<Scalar>> = (0..data.rank)
        .map(|j| {
            ui.iter()
                .map(|row| ring.mul(&row[j], &data.diag[j]))
                .collect()
        })
        .collect();
    Matrix::from_columns(m, &cols)
}

#[derive(Clone, Debug)]
pub struct SubQuotient {
    ring: Ring,
    ambient: usize,
    basis: Matrix,
    // solving basis * c = x
    k_u: Dense,
    k_v: Dense,
    k_diag: Vec<Scalar>,
    // presentation of the quotient on lattice coordinates
    q_u: Dense,
    q_u_inv: Dense,
    keep: Vec<usize>,
    orders: Vec<num_bigint::BigInt>,
    group: FgAbGroup,
}

impl SubQuotient {
    /// `basis` must have full column rank; every column of `relations` must lie in its span.
    pub fn new(ring: Ring, basis: Matrix, relations: &Matrix) -> Result<Self, AbError> {
        let g = basis.nrows();
        let k = basis.ncols();
        assert_eq!(
            relations.nrows(),
            g,
            "relations live in a different ambient module"
        );
        let kd = snf_dense(
            ring,
            basis.to_dense(),
            k,
            Track {
                u: true,
                v: true,
                ..Track::NONE
            },
        );
        if kd.rank != k {
            return Err(AbError::NotABasis);
        }
        let mut sq = SubQuotient {
            ring,
            ambient: g,
            basis,
            k_u: kd.u.unwrap(),
            k_v: kd.v.unwrap(),
            k_diag: kd.diag,
            q_u: Vec::new(),
            q_u_inv: Vec::new(),
            keep: Vec::new(),
            orders: Vec::new(),
            group: FgAbGroup::zero(ring),
        };
        let w = relations.ncols();
        let mut coords: Dense = vec![vec![Scalar::zero(); w]; k];
        let rel_t = relations.transpose();
        for j in 0..w {
            let mut col = vec![Scalar::zero(); g];
            for (i, v) in rel_t.row(j) {
                col[*i] = v.clone();
            }
            let c = sq
                .lattice_coords(&col)
                .ok_or(AbError::RelationOutsideLattice)?;
            for (i, x) in c.into_iter().enumerate() {
                coords[i][j] = x;
            }
        }
        let qd = snf_dense(
            ring,
            coords,
            w,
            Track {
                u: true,
                u_inv: true,
                ..Track::NONE
            },
        );
        let mut torsion = Vec::new();
        for i in 0..k {
            if i < qd.rank {
                let d = &qd.diag[i];
                if ring.size(d) > num_bigint::BigInt::one() {
                    sq.keep.push(i);
                    let o = ring.order_of_divisor(d);
                    sq.orders.push(o.clone());
                    torsion.push(o);
                }
            } else {
                sq.keep.push(i);
                sq.orders.push(num_bigint::BigInt::zero());
            }
        }
        sq.group = FgAbGroup::new(ring, k - qd.rank, torsion)?;
        sq.q_u = qd.u.unwrap();
        sq.q_u_inv = qd.u_inv.unwrap();
        Ok(sq)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `x` in the lattice basis, or `None` if `x` is not in the lattice.
    pub fn lattice_coords(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let ring = self.ring;
        let k = self.basis.ncols();
        let y: Vec<Scalar> = self
            .k_u
            .iter()
            .map(|row| {
                ring.normalize(
                    row.iter()
                        .zip(x)
                        .fold(Scalar::zero(), |acc, (a, b)| acc + a * b),
                )
            })
            .collect();
        if y[k..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut z = Vec::with_capacity(k);
        for i in 0..k {
            let (q, r) = ring.div_rem(&y[i], &self.k_diag[i]);
            if !r.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(
            self.k_v
                .iter()
                .map(|row| {
                    ring.normalize(
                        row.iter()
                            .zip(&z)
                            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b),
                    )
                })
                .collect(),
        )
    }

    /// Coordinates of the class of `x` on the generators of [`Self::group`].
    pub fn class_of(&self, x: &[Scalar]) -> Result<Vec<Scalar>, AbError> {
        let c = self.lattice_coords(x).ok_or(AbError::NotInSubgroup)?;
        let ring = self.ring;
        Ok(self
            .keep
            .iter()
            .zip(&self.orders)
            .map(|(&i, o)| {
                let v = self.q_u[i]
                    .iter()
                    .zip(&c)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
                ring.reduce(ring.normalize(v), o)
            })
            .collect())
    }

    /// An ambient vector representing generator `i` of [`Self::group`].
    pub fn representative(&self, i: usize) -> Vec<Scalar> {
        let col = self.keep[i];
        let c: Vec<Scalar> = self.q_u_inv.iter().map(|row| row[col].clone()).collect();
        self.basis.apply(self.ring, &c)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.lattice_coords(x).is_some()
    }
}
