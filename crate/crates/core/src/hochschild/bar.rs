use num_traits::Zero;

use super::{AssocAlgebra, Bimodule, HochError};
use crate::abmod::{
    int, kernel_basis, lattice_basis, AbHom, CochainComplex, CyclicSum, FgAbGroup, Matrix,
    SubQuotient,
};

/// `C^n = Hom(A^{⊗n}, M)` in degrees `lo..=top`; the coordinate of `φ(e_{t_1} ⊗ ... ⊗ e_{t_n})`
/// along `m_k` sits at `index(t)·rank + k`, tuples in lexicographic order.
pub(crate) fn bar_complex_from(
    a: &AssocAlgebra,
    m: &Bimodule,
    lo: usize,
    top: usize,
) -> Result<CochainComplex, HochError> {
    let ring = a.ring();
    let (d, r) = (a.dim(), m.rank());
    let count = |n: usize| d.pow(n as u32);
    for n in lo..=top {
        crate::catcoh::check_cells(count(n) * r)?;
    }
    let tuple = |mut idx: usize, n: usize| {
        let mut t = vec![0; n];
        for p in (0..n).rev() {
            t[p] = idx % d;
            idx /= d;
        }
        t
    };
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * d + x);
    let id = Matrix::identity(r);
    let mut diffs = Vec::new();
    for n in lo..top {
        let mut dm = Matrix::zeros(count(n + 1) * r, count(n) * r);
        for row in 0..count(n + 1) {
            let t = tuple(row, n + 1);
            let r0 = row * r;
            dm.add_block(ring, r0, index(&t[1..]) * r, m.left(t[0]));
            for i in 1..=n {
                let sign = int(if i % 2 == 0 { 1 } else { -1 });
                for (k, c) in a.mul_basis(t[i - 1], t[i]).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut s = t[..i - 1].to_vec();
                    s.push(k);
                    s.extend_from_slice(&t[i + 1..]);
                    dm.add_block(
                        ring,
                        r0,
                        index(&s) * r,
                        &id.scale(ring, &ring.mul(&sign, c)),
                    );
                }
            }
            let sign = int(if (n + 1) % 2 == 0 { 1 } else { -1 });
            dm.add_block(
                ring,
                r0,
                index(&t[..n]) * r,
                &m.right(t[n]).scale(ring, &sign),
            );
        }
        diffs.push(dm);
    }
    let terms = (lo..=top)
        .map(|n| CyclicSum::free(ring, count(n) * r))
        .collect();
    Ok(CochainComplex::new_unchecked(ring, lo as i64, terms, diffs)?)
}

pub fn bar_cochain_complex(
    a: &AssocAlgebra,
    m: &Bimodule,
    top: usize,
) -> Result<CochainComplex, HochError> {
    check_ring(a, m)?;
    bar_complex_from(a, m, 0, top)
}

pub(crate) fn check_ring(a: &AssocAlgebra, m: &Bimodule) -> Result<(), HochError> {
    if a.ring() != m.ring() {
        return Err(crate::abmod::AbError::RingMismatch.into());
    }
    Ok(())
}

pub(crate) fn check_cap(n: i64, guard: i64, cap: i64) -> Result<(), HochError> {
    if n + guard > cap {
        return Err(HochError::DegreeCapTooLow {
            degree: n,
            needed: n + guard,
            cap,
        });
    }
    Ok(())
}

pub fn hochschild_cohomology(
    a: &AssocAlgebra,
    m: &Bimodule,
    n: i64,
    cap: i64,
) -> Result<FgAbGroup, HochError> {
    check_ring(a, m)?;
    check_cap(n, 1, cap)?;
    if n < 0 {
        return Ok(FgAbGroup::zero(a.ring()));
    }
    Ok(bar_complex_from(a, m, 0, n as usize + 1)?.cohomology(n)?)
}

/// A submodule of `Hom(A, M)` with an explicit basis; column `j` lists `D_j(e_i)` along
/// `m_k` at `i·rank + k`.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub group: FgAbGroup,
    pub basis: Matrix,
}

/// Solves `D(e_i e_j) = e_i D(e_j) + D(e_i) e_j`.
pub fn derivations(a: &AssocAlgebra, m: &Bimodule) -> Result<DerivationSpace, HochError> {
    check_ring(a, m)?;
    let ring = a.ring();
    let (d, r) = (a.dim(), m.rank());
    let mut system = Matrix::zeros(d * d * r, d * r);
    for i in 0..d {
        for j in 0..d {
            let row = (i * d + j) * r;
            for (l, c) in a.mul_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    system.add_block(ring, row, l * r, &Matrix::identity(r).scale(ring, c));
                }
            }
            system.add_block(ring, row, j * r, &m.left(i).scale(ring, &int(-1)));
            system.add_block(ring, row, i * r, &m.right(j).scale(ring, &int(-1)));
        }
    }
    let basis = kernel_basis(ring, &system);
    Ok(DerivationSpace {
        group: FgAbGroup::free(ring, basis.ncols()),
        basis,
    })
}

/// The span of `a ↦ a·m − m·a` over the basis of `M`.
pub fn inner_derivations(a: &AssocAlgebra, m: &Bimodule) -> Result<DerivationSpace, HochError> {
    check_ring(a, m)?;
    let ring = a.ring();
    let (d, r) = (a.dim(), m.rank());
    let mut gens = Matrix::zeros(d * r, r);
    for i in 0..d {
        gens.add_block(ring, i * r, 0, &m.left(i).sub(ring, m.right(i)));
    }
    let basis = lattice_basis(ring, &gens);
    Ok(DerivationSpace {
        group: FgAbGroup::free(ring, basis.ncols()),
        basis,
    })
}

/// `{z : z e_i = e_i z for all i}`, as columns in `A`.
pub fn center(a: &AssocAlgebra) -> Matrix {
    let ring = a.ring();
    let d = a.dim();
    let mut system = Matrix::zeros(d * d, d);
    for i in 0..d {
        system.add_block(ring, i * d, 0, &a.right_mult(i).sub(ring, &a.left_mult(i)));
    }
    kernel_basis(ring, &system)
}

/// The comparison `Der(A, M) -> HH^1(A, M)`.
#[derive(Clone, Debug)]
pub struct DerivationComparison {
    pub derivations: DerivationSpace,
    pub inner: DerivationSpace,
    pub hh1: FgAbGroup,
    pub map: AbHom,
    pub surjective: bool,
    /// The kernel of `map` and the inner derivations span the same submodule of `Hom(A, M)`.
    pub kernel_is_inner: bool,
}

pub fn compare_derivations(
    a: &AssocAlgebra,
    m: &Bimodule,
) -> Result<DerivationComparison, HochError> {
    let ring = a.ring();
    let der = derivations(a, m)?;
    let inner = inner_derivations(a, m)?;
    let complex = bar_complex_from(a, m, 0, 2)?;
    let classes = complex.cohomology_classes(1)?;
    let cols = (0..der.basis.ncols())
        .map(|j| classes.class_of(&der.basis.column(j)))
        .collect::<Result<Vec<_>, _>>()?;
    let hh1 = classes.group().clone();
    let map = AbHom::new(
        der.group.cyclic_sum(),
        hh1.cyclic_sum(),
        Matrix::from_columns(hh1.num_generators(), &cols),
    )?;
    let surjective = map.is_surjective()?;
    let kernel = map.kernel()?;
    let kernel_in_hom = der.basis.mul(ring, kernel.map.matrix());
    let span_kernel = SubQuotient::new(
        ring,
        lattice_basis(ring, &kernel_in_hom),
        &Matrix::zeros(kernel_in_hom.nrows(), 0),
    )?;
    let span_inner = SubQuotient::new(
        ring,
        inner.basis.clone(),
        &Matrix::zeros(inner.basis.nrows(), 0),
    )?;
    let kernel_is_inner = (0..inner.basis.ncols())
        .all(|j| span_kernel.contains(&inner.basis.column(j)))
        && (0..kernel_in_hom.ncols()).all(|j| span_inner.contains(&kernel_in_hom.column(j)));
    Ok(DerivationComparison {
        derivations: der,
        inner,
        hh1,
        map,
        surjective,
        kernel_is_inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abmod::Ring;
    use crate::catcoh::FiniteGroup;

    const Q: Ring = Ring::Rationals;

    #[test]
    fn dual_numbers_term_dimensions() {
        let a = AssocAlgebra::dual_numbers(Q);
        let k = bar_cochain_complex(&a, &Bimodule::regular(&a), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| k.term(n).len()).collect();
        assert_eq!(dims, vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn ground_ring_is_acyclic_above_zero() {
        let a = AssocAlgebra::ground(Q);
        let m = Bimodule::regular(&a);
        assert_eq!(hochschild_cohomology(&a, &m, 0, 5).unwrap().dim(), 1);
        for n in 1..4 {
            assert!(hochschild_cohomology(&a, &m, n, 5).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_numbers_hh() {
        let a = AssocAlgebra::dual_numbers(Q);
        let m = Bimodule::regular(&a);
        let dims: Vec<usize> = (0..4)
            .map(|n| hochschild_cohomology(&a, &m, n, 5).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![2, 1, 1, 1]);
    }

    #[test]
    fn center_matches_hh0() {
        for a in [
            AssocAlgebra::upper_triangular(Q),
            AssocAlgebra::matrix_algebra(Q, 2),
            AssocAlgebra::dual_numbers(Q),
        ] {
            let hh0 = hochschild_cohomology(&a, &Bimodule::regular(&a), 0, 2).unwrap();
            assert_eq!(hh0.dim(), center(&a).ncols());
        }
        assert_eq!(center(&AssocAlgebra::upper_triangular(Q)).ncols(), 1);
    }

    #[test]
    fn derivation_examples() {
        let q = AssocAlgebra::ground(Q);
        assert!(derivations(&q, &Bimodule::regular(&q))
            .unwrap()
            .group
            .is_zero());
        let dual = AssocAlgebra::dual_numbers(Q);
        let der = derivations(&dual, &Bimodule::regular(&dual)).unwrap();
        assert_eq!(der.group.dim(), 1);
        // x ∂/∂x: 1 ↦ 0, x ↦ x
        assert!(
            der.basis.get(0, 0).is_zero()
                && der.basis.get(1, 0).is_zero()
                && der.basis.get(2, 0).is_zero()
        );
        let c2 = AssocAlgebra::group_algebra(Q, &FiniteGroup::cyclic(2));
        assert!(derivations(&c2, &Bimodule::regular(&c2))
            .unwrap()
            .group
            .is_zero());
        let m2 = AssocAlgebra::matrix_algebra(Q, 2);
        assert_eq!(
            inner_derivations(&m2, &Bimodule::regular(&m2))
                .unwrap()
                .group
                .dim(),
            3
        );
        assert!(inner_derivations(&dual, &Bimodule::regular(&dual))
            .unwrap()
            .group
            .is_zero());
    }

    #[test]
    fn der_mod_inner_is_hh1() {
        for a in [
            AssocAlgebra::matrix_algebra(Q, 2),
            AssocAlgebra::upper_triangular(Q),
            AssocAlgebra::dual_numbers(Q),
        ] {
            let c = compare_derivations(&a, &Bimodule::regular(&a)).unwrap();
            assert!(c.surjective && c.kernel_is_inner);
        }
    }
}
