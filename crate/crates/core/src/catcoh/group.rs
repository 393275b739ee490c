use num_traits::Zero;

use super::{check_cells, CoefFunctor, CohError};
use crate::abmod::{
    int, is_exact_at, AbHom, CochainComplex, CyclicSum, FgAbGroup, Matrix, Ring, Scalar,
};
use crate::fincat::{classifying_category, FinCat};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `table[a][b] = a · b`.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, CohError> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(CohError::NotAGroup(
                "table must be square with entries in range".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CohError::NotAGroup(format!(
                            "({a}·{b})·{c} != {a}·({b}·{c})"
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| CohError::NotAGroup("no unit".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == unit && table[b][a] == unit)
                .ok_or_else(|| CohError::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            table,
            unit,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::new(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
        .expect("cyclic group")
    }

    /// `C_2 × C_2`, with elements encoded as bit pairs.
    pub fn klein() -> FiniteGroup {
        FiniteGroup::new((0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect())
            .expect("Klein group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The one-object category `BG`; morphism `k` is element `k`.
    pub fn classifying_category(&self) -> FinCat {
        classifying_category(&self.table, None).expect("groups are categories")
    }
}

/// A left `G`-module: `action[g]` is the matrix of `g` on the generators of `module`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupModule {
    pub module: CyclicSum,
    pub action: Vec<Matrix>,
}

impl GroupModule {
    pub fn new(group: &FiniteGroup, module: CyclicSum, action: Vec<Matrix>) -> Result<Self, CohError> {
        let action = action
            .iter()
            .map(|m| crate::abmod::validate_matrix(&module, &module, m))
            .collect::<Result<Vec<_>, _>>()?;
        let m = GroupModule { module, action };
        m.check(group)?;
        Ok(m)
    }

    pub fn trivial(group: &FiniteGroup, module: CyclicSum) -> GroupModule {
        let n = module.len();
        GroupModule {
            module,
            action: vec![Matrix::identity(n); group.order()],
        }
    }

    /// `Z` with `g` acting by the sign of a homomorphism `sign: G -> {±1}`.
    pub fn sign(group: &FiniteGroup, ring: Ring, sign: impl Fn(usize) -> bool) -> GroupModule {
        let action = (0..group.order())
            .map(|g| Matrix::from_i64(&[vec![if sign(g) { -1 } else { 1 }]]))
            .collect();
        GroupModule {
            module: CyclicSum::free(ring, 1),
            action,
        }
    }

    fn check(&self, group: &FiniteGroup) -> Result<(), CohError> {
        let ring = self.module.ring();
        let n = self.module.len();
        if self.action.len() != group.order() {
            return Err(CohError::NotARepresentation(
                "one matrix per group element required".into(),
            ));
        }
        let differs = |a: &Matrix, b: &Matrix| {
            let d = a.sub(ring, b);
            (0..n).any(|r| {
                d.row(r)
                    .iter()
                    .any(|(_, v)| !ring.reduce(v.clone(), self.module.order(r)).is_zero())
            })
        };
        for m in &self.action {
            if m.nrows() != n || m.ncols() != n {
                return Err(CohError::NotARepresentation(
                    "action matrices have the wrong shape".into(),
                ));
            }
            crate::abmod::validate_matrix(&self.module, &self.module, m)
                .map_err(|e| CohError::NotARepresentation(e.to_string()))?;
        }
        if differs(&self.action[group.unit()], &Matrix::identity(n)) {
            return Err(CohError::NotARepresentation(
                "the unit acts nontrivially".into(),
            ));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if differs(
                    &self.action[group.mul(a, b)],
                    &self.action[a].mul(ring, &self.action[b]),
                ) {
                    return Err(CohError::NotARepresentation(format!(
                        "action of {a}·{b} is not the product"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The module as a functor on `BG`.
    pub fn to_functor(&self, group: &FiniteGroup) -> Result<CoefFunctor, CohError> {
        self.check(group)?;
        CoefFunctor::new(
            group.classifying_category(),
            self.module.ring(),
            vec![self.module.clone()],
            self.action.clone(),
        )
    }
}

/// The normalized bar complex in degrees `0..=top` (or `1..=top` when `reduced`); `n`-cochains
/// are indexed by `n`-tuples of non-identity elements in lexicographic order.
pub fn group_cochain_complex(
    group: &FiniteGroup,
    module: &GroupModule,
    top: usize,
    reduced: bool,
) -> Result<CochainComplex, CohError> {
    module.check(group)?;
    let ring = module.module.ring();
    let dim = module.module.len();
    let nonid: Vec<usize> = (0..group.order()).filter(|&g| g != group.unit()).collect();
    let k = nonid.len();
    let mut slot = vec![usize::MAX; group.order()];
    for (i, &g) in nonid.iter().enumerate() {
        slot[g] = i;
    }
    let count = |n: usize| k.pow(n as u32);
    let lo = usize::from(reduced);
    for n in lo..=top {
        check_cells(count(n) * dim)?;
    }
    let tuple = |mut idx: usize, n: usize| {
        let mut t = vec![0; n];
        for p in (0..n).rev() {
            t[p] = nonid[idx % k];
            idx /= k;
        }
        t
    };
    let index = |t: &[usize]| t.iter().fold(0, |acc, &g| acc * k + slot[g]);
    let terms: Vec<CyclicSum> = (lo..=top)
        .map(|n| CyclicSum::direct_sum_all(ring, std::iter::repeat(&module.module).take(count(n))))
        .collect();
    let identity = Matrix::identity(dim);
    let mut diffs = Vec::new();
    for n in lo..top {
        let mut d = Matrix::zeros(count(n + 1) * dim, count(n) * dim);
        for row in 0..count(n + 1) {
            let t = tuple(row, n + 1);
            let r0 = row * dim;
            d.add_block(ring, r0, index(&t[1..]) * dim, &module.action[t[0]]);
            for i in 1..=n {
                let p = group.mul(t[i - 1], t[i]);
                if p == group.unit() {
                    continue;
                }
                let mut s = t[..i - 1].to_vec();
                s.push(p);
                s.extend_from_slice(&t[i + 1..]);
                let sign: Scalar = int(if i % 2 == 0 { 1 } else { -1 });
                d.add_block(ring, r0, index(&s) * dim, &identity.scale(ring, &sign));
            }
            let sign: Scalar = int(if (n + 1) % 2 == 0 { 1 } else { -1 });
            d.add_block(ring, r0, index(&t[..n]) * dim, &identity.scale(ring, &sign));
        }
        diffs.push(d);
    }
    Ok(CochainComplex::new_unchecked(ring, lo as i64, terms, diffs)?)
}

pub fn group_cohomology(
    group: &FiniteGroup,
    module: &GroupModule,
    n: usize,
) -> Result<FgAbGroup, CohError> {
    Ok(group_cochain_complex(group, module, n + 1, false)?.cohomology(n as i64)?)
}

/// Cohomology of `(BG, *)`: the bar complex without its degree-0 term.
pub fn reduced_classifying_cohomology(
    group: &FiniteGroup,
    module: &GroupModule,
    n: usize,
) -> Result<FgAbGroup, CohError> {
    if n == 0 {
        module.check(group)?;
        return Ok(FgAbGroup::zero(module.module.ring()));
    }
    Ok(group_cochain_complex(group, module, n + 1, true)?.cohomology(n as i64)?)
}

/// The sequence `0 -> M/M^G -> H̃^1(BG; M) -> H^1(G; M) -> 0`, with `M -> H̃^1` given by
/// `m ↦ [g ↦ g·m − m]` and `H̃^1 -> H^1` by viewing a 1-cocycle in the full bar complex.
#[derive(Clone, Debug)]
pub struct ReducedSequence {
    pub coboundary: AbHom,
    pub forget: AbHom,
    /// The kernel of `coboundary` is exactly `M^G`.
    pub quotient_injective: bool,
    pub middle_exact: bool,
    pub forget_surjective: bool,
}

impl ReducedSequence {
    pub fn is_exact(&self) -> bool {
        self.quotient_injective && self.middle_exact && self.forget_surjective
    }
}

pub fn reduced_sequence(
    group: &FiniteGroup,
    module: &GroupModule,
) -> Result<ReducedSequence, CohError> {
    let full = group_cochain_complex(group, module, 2, false)?;
    let reduced = group_cochain_complex(group, module, 2, true)?;
    let ring = module.module.ring();
    let (h1, rh1) = (full.cohomology_classes(1)?, reduced.cohomology_classes(1)?);
    let d0 = full.differential(0);
    let classes = |m: &Matrix, vectors: Vec<Vec<Scalar>>, to: &crate::abmod::CohomologyClasses| {
        vectors
            .iter()
            .map(|v| to.class_of(&to.term().reduce(&m.apply(ring, v))))
            .collect::<Result<Vec<_>, _>>()
    };
    let units: Vec<Vec<Scalar>> = (0..module.module.len())
        .map(|i| Matrix::identity(module.module.len()).column(i))
        .collect();
    let rh1_sum = rh1.group().cyclic_sum();
    let coboundary = AbHom::new(
        module.module.clone(),
        rh1_sum.clone(),
        Matrix::from_columns(rh1_sum.len(), &classes(&d0, units, &rh1)?),
    )?;
    let h1_sum = h1.group().cyclic_sum();
    let id = Matrix::identity(full.term(1).len());
    let forget = AbHom::new(
        rh1_sum,
        h1_sum.clone(),
        Matrix::from_columns(h1_sum.len(), &classes(&id, rh1.representatives(), &h1)?),
    )?;
    let kernel = coboundary.kernel()?;
    let ker_cols = kernel.map.matrix();
    let quotient_injective = (0..ker_cols.ncols()).all(|j| {
        full.term(1)
            .is_zero_vector(&d0.apply(ring, &ker_cols.column(j)))
    });
    let middle_exact = is_exact_at(&coboundary, &forget)?;
    let forget_surjective = forget.is_surjective()?;
    Ok(ReducedSequence {
        coboundary,
        forget,
        quotient_injective,
        middle_exact,
        forget_surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z() -> CyclicSum {
        CyclicSum::free(Ring::Integers, 1)
    }

    #[test]
    fn rejects_non_groups() {
        assert!(matches!(
            FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]),
            Err(CohError::NotAGroup(_))
        ));
    }

    #[test]
    fn c2_trivial() {
        let g = FiniteGroup::cyclic(2);
        let m = GroupModule::trivial(&g, z());
        let h: Vec<FgAbGroup> = (0..5)
            .map(|n| group_cohomology(&g, &m, n).unwrap())
            .collect();
        assert_eq!(h[0], FgAbGroup::free(Ring::Integers, 1));
        assert!(h[1].is_zero() && h[3].is_zero());
        assert_eq!(h[2], FgAbGroup::cyclic(Ring::Integers, 2));
        assert_eq!(h[4], FgAbGroup::cyclic(Ring::Integers, 2));
    }

    #[test]
    fn c2_sign() {
        let g = FiniteGroup::cyclic(2);
        let m = GroupModule::sign(&g, Ring::Integers, |x| x == 1);
        assert!(group_cohomology(&g, &m, 0).unwrap().is_zero());
        assert_eq!(
            group_cohomology(&g, &m, 1).unwrap(),
            FgAbGroup::cyclic(Ring::Integers, 2)
        );
        assert_eq!(
            reduced_classifying_cohomology(&g, &m, 1).unwrap(),
            FgAbGroup::free(Ring::Integers, 1)
        );
    }

    #[test]
    fn trivial_group_reduced_vanishes() {
        let g = FiniteGroup::cyclic(1);
        let m = GroupModule::trivial(
            &g,
            CyclicSum::new(Ring::Integers, vec![BigInt::from(0), BigInt::from(3)]).unwrap(),
        );
        for n in 0..4 {
            assert!(reduced_classifying_cohomology(&g, &m, n).unwrap().is_zero());
        }
    }

    #[test]
    fn bad_representation() {
        let g = FiniteGroup::cyclic(3);
        // order-2 action of a generator of C_3
        let m = GroupModule::sign(&g, Ring::Integers, |x| x != 0);
        assert!(matches!(
            group_cohomology(&g, &m, 1),
            Err(CohError::NotARepresentation(_))
        ));
    }

    #[test]
    fn klein_h1_and_h2() {
        let g = FiniteGroup::klein();
        let m = GroupModule::trivial(&g, z());
        assert!(group_cohomology(&g, &m, 1).unwrap().is_zero());
        let two = BigInt::from(2);
        assert_eq!(
            group_cohomology(&g, &m, 2).unwrap(),
            FgAbGroup::new(Ring::Integers, 0, vec![two.clone(), two]).unwrap()
        );
    }

    #[test]
    fn reduced_sequence_is_exact() {
        let c2 = FiniteGroup::cyclic(2);
        let trivial = GroupModule::trivial(&c2, z());
        assert!(reduced_sequence(&c2, &trivial).unwrap().is_exact());
        let sign = GroupModule::sign(&c2, Ring::Integers, |g| g != c2.unit());
        let seq = reduced_sequence(&c2, &sign).unwrap();
        assert!(seq.is_exact());
        assert!(seq.coboundary.is_injective().unwrap());
    }
}
