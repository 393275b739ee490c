use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{CyclicSum, FgAbGroup};
use super::hom::{validate_matrix, AbHom};
use super::lattice::{kernel_basis, SubQuotient};
use super::matrix::Matrix;
use super::reduce::{reduce, Reduced};
use super::ring::{Ring, Scalar};
use super::AbError;

/// A bounded cochain complex `C^lo -> ... -> C^hi` of cyclic sums.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    ring: Ring,
    lo: i64,
    terms: Vec<CyclicSum>,
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    /// `diffs[i]` maps `terms[i]` to `terms[i + 1]`. Checks `d ∘ d = 0`.
    pub fn new(
        ring: Ring,
        lo: i64,
        terms: Vec<CyclicSum>,
        diffs: Vec<Matrix>,
    ) -> Result<Self, AbError> {
        let c = CochainComplex::new_unchecked(ring, lo, terms, diffs)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Validates shapes and torsion compatibility but skips the `d ∘ d = 0` check.
    pub fn new_unchecked(
        ring: Ring,
        lo: i64,
        terms: Vec<CyclicSum>,
        diffs: Vec<Matrix>,
    ) -> Result<Self, AbError> {
        if terms.is_empty() {
            return Err(AbError::EmptyComplex);
        }
        if diffs.len() + 1 != terms.len() {
            return Err(AbError::Shape {
                expected: (terms.len() - 1, 0),
                found: (diffs.len(), 0),
            });
        }
        let mut checked = Vec::with_capacity(diffs.len());
        for (i, d) in diffs.iter().enumerate() {
            if terms[i].ring() != ring {
                return Err(AbError::RingMismatch);
            }
            checked.push(validate_matrix(&terms[i], &terms[i + 1], d)?);
        }
        Ok(CochainComplex {
            ring,
            lo,
            terms,
            diffs: checked,
        })
    }

    pub fn check_square_zero(&self) -> Result<(), AbError> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.diffs[i + 1].mul(self.ring, &self.diffs[i]);
            let t = &self.terms[i + 2];
            for r in 0..dd.nrows() {
                for (_, v) in dd.row(r) {
                    if !self.ring.reduce(v.clone(), t.order(r)).is_zero() {
                        return Err(AbError::NotAComplex {
                            degree: self.lo + i as i64,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    fn pos(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    /// The term in degree `n`; zero outside the range.
    pub fn term(&self, n: i64) -> CyclicSum {
        self.pos(n)
            .map_or_else(|| CyclicSum::zero(self.ring), |p| self.terms[p].clone())
    }

    /// `d^n : C^n -> C^{n+1}`; zero matrices at the boundary.
    pub fn differential(&self, n: i64) -> Matrix {
        match (self.pos(n), self.pos(n + 1)) {
            (Some(p), Some(_)) => self.diffs[p].clone(),
            _ => Matrix::zeros(self.term(n + 1).len(), self.term(n).len()),
        }
    }

    pub fn total_generators(&self) -> usize {
        self.terms.iter().map(CyclicSum::len).sum()
    }

    /// Re-indexes so that old degree `n` becomes degree `n - k` (the complex `C[k]`),
    /// negating the differential when `k` is odd.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let sign = if k.rem_euclid(2) == 1 {
            -Scalar::from_integer(1.into())
        } else {
            Scalar::from_integer(1.into())
        };
        CochainComplex {
            ring: self.ring,
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| d.scale(self.ring, &sign))
                .collect(),
        }
    }

    /// Base change of a complex of free modules along `Z -> ring`.
    pub fn change_ring(&self, ring: Ring) -> Result<CochainComplex, AbError> {
        if self.terms.iter().any(|t| !t.is_free()) {
            return Err(AbError::TorsionOverField);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| CyclicSum::free(ring, t.len()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|d| {
                let mut m = d.clone();
                m.map_rows(|_, row| {
                    row.into_iter()
                        .map(|(j, v)| (j, ring.normalize(v)))
                        .collect()
                });
                m
            })
            .collect();
        CochainComplex::new_unchecked(ring, self.lo, terms, diffs)
    }

    fn orders(&self) -> Vec<Vec<BigInt>> {
        self.terms.iter().map(|t| t.orders().to_vec()).collect()
    }

    /// `H^n` in invariant-factor form.
    pub fn cohomology(&self, n: i64) -> Result<FgAbGroup, AbError> {
        let p = self.pos(n).ok_or(AbError::DegreeOutOfRange {
            degree: n,
            lo: self.lo,
            hi: self.hi(),
        })?;
        let (lo_p, hi_p) = (p.saturating_sub(1), (p + 1).min(self.terms.len() - 1));
        let orders = self.orders()[lo_p..=hi_p].to_vec();
        let diffs = self.diffs[lo_p..hi_p].to_vec();
        let track = vec![false; orders.len()];
        let red = reduce(self.ring, &orders, &diffs, &track);
        Ok(cohomology_of_reduced(self.ring, &red, p - lo_p)?
            .group()
            .clone())
    }

    /// `H^n` for every degree of the complex, sharing one reduction.
    pub fn cohomology_all(&self) -> Result<Vec<(i64, FgAbGroup)>, AbError> {
        let track = vec![false; self.terms.len()];
        let red = reduce(self.ring, &self.orders(), &self.diffs, &track);
        (0..self.terms.len())
            .map(|p| {
                Ok((
                    self.lo + p as i64,
                    cohomology_of_reduced(self.ring, &red, p)?.group().clone(),
                ))
            })
            .collect()
    }

    /// `H^n` together with cycle representatives and a class map.
    pub fn cohomology_classes(&self, n: i64) -> Result<CohomologyClasses, AbError> {
        let p = self.pos(n).ok_or(AbError::DegreeOutOfRange {
            degree: n,
            lo: self.lo,
            hi: self.hi(),
        })?;
        let (lo_p, hi_p) = (p.saturating_sub(1), (p + 1).min(self.terms.len() - 1));
        let orders = self.orders()[lo_p..=hi_p].to_vec();
        let diffs = self.diffs[lo_p..hi_p].to_vec();
        let mut track = vec![false; orders.len()];
        track[p - lo_p] = true;
        let mut red = reduce(self.ring, &orders, &diffs, &track);
        let sq = cohomology_of_reduced(self.ring, &red, p - lo_p)?;
        Ok(CohomologyClasses {
            degree: n,
            term: self.terms[p].clone(),
            next: self.term(n + 1),
            boundary: self.differential(n),
            reduced_orders: CyclicSum::new_unchecked(self.ring, red.orders[p - lo_p].clone()),
            iota: red.iota[p - lo_p].take().expect("tracked"),
            pi: red.pi[p - lo_p].take().expect("tracked"),
            sq,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if (self.lo + i as i64).rem_euclid(2) == 0 {
                    t.len() as i64
                } else {
                    -(t.len() as i64)
                }
            })
            .sum()
    }
}

fn cohomology_of_reduced(ring: Ring, red: &Reduced, p: usize) -> Result<SubQuotient, AbError> {
    let here = CyclicSum::new_unchecked(ring, red.orders[p].clone());
    // cycles: x with d x ∈ relations of the next term
    let basis = if p + 1 < red.orders.len() {
        // rows of the next term that the differential never reaches impose no condition
        let d = &red.diffs[p];
        let hit: Vec<usize> = (0..d.nrows()).filter(|&i| !d.row(i).is_empty()).collect();
        let next = CyclicSum::new_unchecked(ring, hit.iter().map(|&i| red.orders[p + 1][i].clone()).collect());
        let aug = d.select_rows(&hit).hstack(&next.relation_matrix());
        let kb = kernel_basis(ring, &aug);
        kb.select_rows(&(0..here.len()).collect::<Vec<_>>())
    } else {
        Matrix::identity(here.len())
    };
    let mut rel = here.relation_matrix();
    if p > 0 {
        rel = red.diffs[p - 1].hstack(&rel);
    }
    SubQuotient::new(ring, basis, &rel)
}

/// `H^n` with the data needed to move between cocycles and classes.
#[derive(Clone, Debug)]
pub struct CohomologyClasses {
    degree: i64,
    term: CyclicSum,
    next: CyclicSum,
    boundary: Matrix,
    reduced_orders: CyclicSum,
    iota: Matrix,
    pi: Matrix,
    sq: SubQuotient,
}

impl CohomologyClasses {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        self.sq.group()
    }

    pub fn term(&self) -> &CyclicSum {
        &self.term
    }

    pub fn is_cocycle(&self, x: &[Scalar]) -> bool {
        let ring = self.term.ring();
        self.next.is_zero_vector(&self.boundary.apply(ring, x))
    }

    /// Coordinates of the class of the cocycle `x` on the generators of [`Self::group`].
    pub fn class_of(&self, x: &[Scalar]) -> Result<Vec<Scalar>, AbError> {
        let ring = self.term.ring();
        let y = self.reduced_orders.reduce(&self.pi.apply(ring, x));
        self.sq.class_of(&y)
    }

    /// A cocycle in the original term representing generator `i`.
    pub fn representative(&self, i: usize) -> Vec<Scalar> {
        let ring = self.term.ring();
        let r = self.sq.representative(i);
        self.term.reduce(&self.iota.apply(ring, &r))
    }

    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        (0..self.group().num_generators())
            .map(|i| self.representative(i))
            .collect()
    }
}

/// A degreewise map of cochain complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    maps: Vec<(i64, Matrix)>,
}

impl ChainMap {
    /// `maps` lists `(n, φ^n)`; degrees not listed are zero.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        maps: Vec<(i64, Matrix)>,
    ) -> Result<Self, AbError> {
        let ring = source.ring;
        if target.ring != ring {
            return Err(AbError::RingMismatch);
        }
        let cm = ChainMap::new_unchecked(source, target, maps)?;
        let lo = cm.source.lo.min(cm.target.lo) - 1;
        let hi = cm.source.hi().max(cm.target.hi());
        for n in lo..=hi {
            let a = cm.map(n + 1).mul(ring, &cm.source.differential(n));
            let b = cm.target.differential(n).mul(ring, &cm.map(n));
            let diff = a.sub(ring, &b);
            let t = cm.target.term(n + 1);
            for r in 0..diff.nrows() {
                if diff
                    .row(r)
                    .iter()
                    .any(|(_, v)| !ring.reduce(v.clone(), t.order(r)).is_zero())
                {
                    return Err(AbError::NotAChainMap { degree: n });
                }
            }
        }
        Ok(cm)
    }

    /// Validates the matrices but not the commutation with the differentials.
    pub(crate) fn new_unchecked(
        source: CochainComplex,
        target: CochainComplex,
        maps: Vec<(i64, Matrix)>,
    ) -> Result<Self, AbError> {
        if target.ring != source.ring {
            return Err(AbError::RingMismatch);
        }
        let mut checked = Vec::new();
        for (n, m) in maps {
            let m = validate_matrix(&source.term(n), &target.term(n), &m)?;
            checked.push((n, m));
        }
        Ok(ChainMap {
            source,
            target,
            maps: checked,
        })
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn map(&self, n: i64) -> Matrix {
        self.maps
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Matrix::zeros(self.target.term(n).len(), self.source.term(n).len()))
    }

    pub fn identity(c: &CochainComplex) -> ChainMap {
        let maps = c
            .degrees()
            .map(|n| (n, Matrix::identity(c.term(n).len())))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    /// The induced map `H^n(source) -> H^n(target)` on the given class data.
    pub fn on_cohomology(
        &self,
        from: &CohomologyClasses,
        to: &CohomologyClasses,
    ) -> Result<AbHom, AbError> {
        let n = from.degree();
        let ring = self.source.ring;
        let m = self.map(n);
        let mut cols = Vec::new();
        for rep in from.representatives() {
            let img = self.target.term(n).reduce(&m.apply(ring, &rep));
            cols.push(to.class_of(&img)?);
        }
        AbHom::new(
            from.group().cyclic_sum(),
            to.group().cyclic_sum(),
            Matrix::from_columns(to.group().num_generators(), &cols),
        )
    }
}

/// `cone(φ)^n = L^n ⊕ K^{n+1}` with `D(l, k) = (d l + φ k, -d k)`.
pub fn mapping_cone(phi: &ChainMap) -> Result<CochainComplex, AbError> {
    let (k, l) = (&phi.source, &phi.target);
    let ring = k.ring;
    let lo = l.lo.min(k.lo - 1);
    let hi = l.hi().max(k.hi() - 1);
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        terms.push(l.term(n).direct_sum(&k.term(n + 1)));
        if n < hi {
            let (ln, kn1) = (l.term(n).len(), k.term(n + 1).len());
            let (ln1, kn2) = (l.term(n + 1).len(), k.term(n + 2).len());
            let mut d = Matrix::zeros(ln1 + kn2, ln + kn1);
            d.add_block(ring, 0, 0, &l.differential(n));
            d.add_block(ring, 0, ln, &phi.map(n + 1));
            d.add_block(
                ring,
                ln1,
                ln,
                &k.differential(n + 1)
                    .scale(ring, &-Scalar::from_integer(1.into())),
            );
            diffs.push(d);
        }
    }
    CochainComplex::new_unchecked(ring, lo, terms, diffs)
}

/// The canonical maps of the cone sequence `L -> cone(φ) -> K[1]`.
pub fn cone_inclusion(phi: &ChainMap, cone: &CochainComplex) -> Result<ChainMap, AbError> {
    let l = &phi.target;
    let maps = cone
        .degrees()
        .map(|n| {
            let ln = l.term(n).len();
            let mut m = Matrix::zeros(cone.term(n).len(), ln);
            for i in 0..ln {
                m.set(i, i, Scalar::from_integer(1.into()));
            }
            (n, m)
        })
        .collect();
    ChainMap::new_unchecked(l.clone(), cone.clone(), maps)
}

/// Projection `cone(φ)^n -> K^{n+1}`, as a chain map into `K[1]`.
pub fn cone_projection(phi: &ChainMap, cone: &CochainComplex) -> Result<ChainMap, AbError> {
    let k = &phi.source;
    let shifted = k.shift(1);
    let l = &phi.target;
    let maps = cone
        .degrees()
        .map(|n| {
            let ln = l.term(n).len();
            let kn1 = k.term(n + 1).len();
            let mut m = Matrix::zeros(kn1, cone.term(n).len());
            for i in 0..kn1 {
                m.set(i, ln + i, Scalar::from_integer(1.into()));
            }
            (n, m)
        })
        .collect();
    ChainMap::new_unchecked(cone.clone(), shifted, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abmod::ring::int;

    fn z() -> Ring {
        Ring::Integers
    }

    fn times_two() -> CochainComplex {
        CochainComplex::new(
            z(),
            0,
            vec![CyclicSum::free(z(), 1), CyclicSum::free(z(), 1)],
            vec![Matrix::from_i64(&[vec![2]])],
        )
        .unwrap()
    }

    #[test]
    fn times_two_cohomology() {
        let c = times_two();
        assert!(c.cohomology(0).unwrap().is_zero());
        assert_eq!(c.cohomology(1).unwrap(), FgAbGroup::cyclic(z(), 2));
        assert!(matches!(
            c.cohomology(2),
            Err(AbError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_differentials_give_terms() {
        let t = CyclicSum::new(z(), vec![BigInt::from(3), BigInt::zero()]).unwrap();
        let c = CochainComplex::new(
            z(),
            0,
            vec![t.clone(), t.clone()],
            vec![Matrix::zeros(2, 2)],
        )
        .unwrap();
        for n in 0..=1 {
            assert_eq!(c.cohomology(n).unwrap(), t.normal_form().group);
        }
    }

    #[test]
    fn rejects_non_complex() {
        let f = CyclicSum::free(z(), 1);
        let r = CochainComplex::new(
            z(),
            0,
            vec![f.clone(), f.clone(), f],
            vec![Matrix::from_i64(&[vec![1]]), Matrix::from_i64(&[vec![1]])],
        );
        assert!(matches!(r, Err(AbError::NotAComplex { .. })));
    }

    #[test]
    fn torsion_terms() {
        // Z --2--> Z/4 --4--> Z/8
        let c = CochainComplex::new(
            z(),
            0,
            vec![
                CyclicSum::free(z(), 1),
                CyclicSum::new(z(), vec![BigInt::from(4)]).unwrap(),
                CyclicSum::new(z(), vec![BigInt::from(8)]).unwrap(),
            ],
            vec![Matrix::from_i64(&[vec![2]]), Matrix::from_i64(&[vec![4]])],
        )
        .unwrap();
        assert_eq!(c.cohomology(0).unwrap(), FgAbGroup::free(z(), 1));
        assert!(c.cohomology(1).unwrap().is_zero());
        assert_eq!(c.cohomology(2).unwrap(), FgAbGroup::cyclic(z(), 4));
        assert_eq!(c.cohomology_all().unwrap().len(), 3);
    }

    #[test]
    fn classes_and_representatives() {
        let c = times_two();
        let h1 = c.cohomology_classes(1).unwrap();
        let rep = h1.representative(0);
        assert_eq!(h1.class_of(&rep).unwrap(), vec![int(1)]);
        assert_eq!(h1.class_of(&[int(2)]).unwrap(), vec![int(0)]);
        assert_eq!(h1.class_of(&[int(3)]).unwrap(), vec![int(1)]);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = times_two();
        let cone = mapping_cone(&ChainMap::identity(&c)).unwrap();
        for (_, h) in cone.cohomology_all().unwrap() {
            assert!(h.is_zero());
        }
    }

    #[test]
    fn cone_of_zero_map_is_shift() {
        let k = times_two();
        let zero = CochainComplex::new(z(), 0, vec![CyclicSum::zero(z())], vec![]).unwrap();
        let phi = ChainMap::new(k.clone(), zero, vec![]).unwrap();
        let cone = mapping_cone(&phi).unwrap();
        let shifted = k.shift(1);
        for n in shifted.degrees() {
            assert_eq!(cone.cohomology(n).unwrap(), shifted.cohomology(n).unwrap());
        }
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = times_two();
        let r = ChainMap::new(c.clone(), c, vec![(0, Matrix::from_i64(&[vec![1]]))]);
        assert!(matches!(r, Err(AbError::NotAChainMap { .. })));
    }
}
