use num_traits::Zero;

use super::bar::{bar_complex_from, check_cap, check_ring, derivations};
use super::{AssocAlgebra, Bimodule, HochError};
use crate::abmod::{kernel_basis, AbHom, CyclicSum, FgAbGroup, Matrix, Scalar, SubQuotient};

/// `Ω = ker(μ: A ⊗ A -> A)` with its bimodule structure; `inclusion` has one column per basis
/// element of `Ω`, in `A ⊗ A` coordinates `p·d + q`.
#[derive(Clone, Debug)]
pub struct Differentials {
    pub bimodule: Bimodule,
    pub inclusion: Matrix,
    coords: SubQuotient,
}

impl Differentials {
    pub fn rank(&self) -> usize {
        self.bimodule.rank()
    }

    /// Coordinates in `Ω` of an element of `A ⊗ A`, if it lies in `Ω`.
    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.rank() == 0 {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        self.coords.lattice_coords(x)
    }
}

fn multiplication(a: &AssocAlgebra) -> Matrix {
    let d = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..d * d).map(|pq| a.mul_basis(pq / d, pq % d)).collect();
    Matrix::from_columns(d, &cols)
}

fn tensor(a: &AssocAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let d = a.dim();
    let mut out = vec![Scalar::zero(); d * d];
    for (p, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
        for (q, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[p * d + q] = a.ring().mul(u, v);
        }
    }
    out
}

/// `1 ⊗ a − a ⊗ 1`.
fn universal_derivation(a: &AssocAlgebra, x: &[Scalar]) -> Vec<Scalar> {
    let ring = a.ring();
    let (l, r) = (tensor(a, a.unit(), x), tensor(a, x, a.unit()));
    l.iter().zip(&r).map(|(u, v)| ring.sub(u, v)).collect()
}

pub fn noncomm_differentials(a: &AssocAlgebra) -> Result<Differentials, HochError> {
    let ring = a.ring();
    let d = a.dim();
    let inclusion = kernel_basis(ring, &multiplication(a));
    let rank = inclusion.ncols();
    let coords = SubQuotient::new(ring, inclusion.clone(), &Matrix::zeros(d * d, 0))?;
    let outer = Bimodule::enveloping(a);
    let restrict = |act: &Matrix| -> Result<Matrix, HochError> {
        let image = act.mul(ring, &inclusion);
        let cols = (0..rank)
            .map(|j| {
                coords
                    .lattice_coords(&image.column(j))
                    .ok_or(HochError::Malformed("Ω is not a sub-bimodule".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(rank, &cols))
    };
    let left = (0..d)
        .map(|i| restrict(outer.left(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let right = (0..d)
        .map(|i| restrict(outer.right(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let bimodule = Bimodule::new(a, rank, left, right)?;
    Ok(Differentials {
        bimodule,
        inclusion,
        coords,
    })
}

/// The bimodule generated by symbols `d(e_i)` subject to `d(e_i e_j) = e_i d(e_j) + d(e_i) e_j`,
/// presented as a quotient of `⊕_i A ⊗ A` (basis `(i, p, q)` meaning `e_p d(e_i) e_q`), with
/// its comparison map to `Ω`.
#[derive(Clone, Debug)]
pub struct LeibnizPresentation {
    pub generators: usize,
    pub relations: Matrix,
    pub group: FgAbGroup,
    /// `d(a) ↦ 1 ⊗ a − a ⊗ 1`, from `group` to `Ω`.
    pub to_differentials: AbHom,
    pub relations_hold: bool,
    pub is_isomorphism: bool,
}

pub fn leibniz_presentation(a: &AssocAlgebra) -> Result<LeibnizPresentation, HochError> {
    let ring = a.ring();
    let d = a.dim();
    let idx = |i: usize, p: usize, q: usize| (i * d + p) * d + q;
    let size = d * d * d;
    let unit = a.unit();
    // the relation d(e_i e_j) − e_i d(e_j) − d(e_i) e_j, in free coordinates
    let mut base_relations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut r = vec![Scalar::zero(); size];
            for (k, c) in a
                .mul_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                for (p, u) in unit.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                    for (q, v) in unit.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        let at = idx(k, p, q);
                        r[at] = ring.add(&r[at], &ring.mul(c, &ring.mul(u, v)));
                    }
                }
            }
            for (q, v) in unit.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let at = idx(j, i, q);
                r[at] = ring.sub(&r[at], v);
            }
            for (p, u) in unit.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                let at = idx(i, p, j);
                r[at] = ring.sub(&r[at], u);
            }
            base_relations.push(r);
        }
    }
    // close under e_s · r · e_t
    let mut relations = Vec::with_capacity(base_relations.len() * d * d);
    for r in &base_relations {
        for s in 0..d {
            for t in 0..d {
                let mut out = vec![Scalar::zero(); size];
                for (pos, c) in r.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let (i, p, q) = (pos / (d * d), (pos / d) % d, pos % d);
                    let sp = a.mul_basis(s, p);
                    let qt = a.mul_basis(q, t);
                    for (p2, x) in sp.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (q2, y) in qt.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            let at = idx(i, p2, q2);
                            out[at] = ring.add(&out[at], &ring.mul(c, &ring.mul(x, y)));
                        }
                    }
                }
                relations.push(out);
            }
        }
    }
    let relations = Matrix::from_columns(size, &relations);
    let presentation = SubQuotient::new(ring, Matrix::identity(size), &relations)?;
    let omega = noncomm_differentials(a)?;
    // e_p d(e_i) e_q ↦ e_p ⊗ e_i e_q − e_p e_i ⊗ e_q
    let phi = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); d * d];
        for (pos, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (i, p, q) = (pos / (d * d), (pos / d) % d, pos % d);
            let x = left_multiply(a, p, &universal_derivation(a, &a.basis_vector(i)));
            let y = right_multiply(a, &x, q);
            for (k, z) in y.iter().enumerate() {
                out[k] = ring.add(&out[k], &ring.mul(c, z));
            }
        }
        out
    };
    let relations_hold =
        (0..relations.ncols()).all(|j| phi(&relations.column(j)).iter().all(Zero::is_zero));
    let group = presentation.group().clone();
    let cols = (0..group.num_generators())
        .map(|g| {
            omega
                .coordinates(&phi(&presentation.representative(g)))
                .ok_or(HochError::Malformed("image of d(a) is not in Ω".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let to_differentials = AbHom::new(
        group.cyclic_sum(),
        CyclicSum::free(ring, omega.rank()),
        Matrix::from_columns(omega.rank(), &cols),
    )?;
    let is_isomorphism = relations_hold && to_differentials.is_isomorphism()?;
    Ok(LeibnizPresentation {
        generators: d,
        relations,
        group,
        to_differentials,
        relations_hold,
        is_isomorphism,
    })
}

/// `e_p · (x ⊗ y) = e_p x ⊗ y` on `A ⊗ A`.
fn left_multiply(a: &AssocAlgebra, p: usize, v: &[Scalar]) -> Vec<Scalar> {
    let d = a.dim();
    let ring = a.ring();
    let mut out = vec![Scalar::zero(); d * d];
    for (pos, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (x, y) = (pos / d, pos % d);
        for (k, e) in a
            .mul_basis(p, x)
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
        {
            out[k * d + y] = ring.add(&out[k * d + y], &ring.mul(c, e));
        }
    }
    out
}

/// `(x ⊗ y) · e_q = x ⊗ y e_q` on `A ⊗ A`.
fn right_multiply(a: &AssocAlgebra, v: &[Scalar], q: usize) -> Vec<Scalar> {
    let d = a.dim();
    let ring = a.ring();
    let mut out = vec![Scalar::zero(); d * d];
    for (pos, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (x, y) = (pos / d, pos % d);
        for (k, e) in a
            .mul_basis(y, q)
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
        {
            out[x * d + k] = ring.add(&out[x * d + k], &ring.mul(c, e));
        }
    }
    out
}

/// `Hom_{A^e}(Ω, M)` together with the comparison `h ↦ (a ↦ h(1 ⊗ a − a ⊗ 1))` into `Der(A, M)`.
#[derive(Clone, Debug)]
pub struct DifferentialHoms {
    pub group: FgAbGroup,
    /// Column `j` is the `rank M × rank Ω` matrix of the `j`-th basis map, stored column-major.
    pub basis: Matrix,
    pub to_derivations: AbHom,
}

pub fn differential_homs(a: &AssocAlgebra, m: &Bimodule) -> Result<DifferentialHoms, HochError> {
    check_ring(a, m)?;
    let ring = a.ring();
    let omega = noncomm_differentials(a)?;
    let (rm, ro, d) = (m.rank(), omega.rank(), a.dim());
    let var = |k: usize, l: usize| l * rm + k;
    let mut system = Matrix::zeros(2 * d * ro * rm, ro * rm);
    let mut row = 0;
    for i in 0..d {
        for (act_o, act_m) in [
            (omega.bimodule.left(i), m.left(i)),
            (omega.bimodule.right(i), m.right(i)),
        ] {
            for l in 0..ro {
                // h(act ω_l) − act h(ω_l)
                for k in 0..rm {
                    for s in 0..ro {
                        let c = act_o.get(s, l);
                        if !c.is_zero() {
                            system.add_at(ring, row + k, var(k, s), &c);
                        }
                    }
                    for (t, c) in act_m.row(k) {
                        system.add_at(ring, row + k, var(*t, l), &ring.neg(c));
                    }
                }
                row += rm;
            }
        }
    }
    let basis = kernel_basis(ring, &system);
    let group = FgAbGroup::free(ring, basis.ncols());
    let der = derivations(a, m)?;
    let der_coords = SubQuotient::new(
        ring,
        der.basis.clone(),
        &Matrix::zeros(der.basis.nrows(), 0),
    )?;
    let dx: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            omega
                .coordinates(&universal_derivation(a, &a.basis_vector(i)))
                .ok_or(HochError::Malformed("1 ⊗ a − a ⊗ 1 is not in Ω".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut cols = Vec::with_capacity(basis.ncols());
    for j in 0..basis.ncols() {
        let h = basis.column(j);
        let mut dv = vec![Scalar::zero(); d * rm];
        for i in 0..d {
            for k in 0..rm {
                let mut acc = Scalar::zero();
                for (l, x) in dx[i].iter().enumerate() {
                    acc = ring.add(&acc, &ring.mul(x, &h[var(k, l)]));
                }
                dv[i * rm + k] = acc;
            }
        }
        let c = if der.basis.ncols() == 0 {
            if dv.iter().any(|x| !x.is_zero()) {
                return Err(HochError::Malformed(
                    "a bimodule map gave a nonzero non-derivation".into(),
                ));
            }
            Vec::new()
        } else {
            der_coords
                .lattice_coords(&dv)
                .ok_or(HochError::Malformed("h ∘ d is not a derivation".into()))?
        };
        cols.push(c);
    }
    let to_derivations = AbHom::new(
        group.cyclic_sum(),
        der.group.cyclic_sum(),
        Matrix::from_columns(der.basis.ncols(), &cols),
    )?;
    Ok(DifferentialHoms {
        group,
        basis,
        to_derivations,
    })
}

/// `H^n_Q(A; M) = Ext^n_{A^e}(Ω, M)`: `Hom_{A^e}(Ω, M)` in degree 0, and for `n ≥ 1` the
/// bar complex with its degree-0 term removed, read one degree up.
pub fn quillen_cohomology_algebra(
    a: &AssocAlgebra,
    m: &Bimodule,
    n: i64,
    cap: i64,
) -> Result<FgAbGroup, HochError> {
    check_ring(a, m)?;
    check_cap(n, 2, cap)?;
    match n {
        n if n < 0 => Ok(FgAbGroup::zero(a.ring())),
        0 => Ok(differential_homs(a, m)?.group),
        n => Ok(bar_complex_from(a, m, 1, n as usize + 2)?.cohomology(n + 1)?),
    }
}
