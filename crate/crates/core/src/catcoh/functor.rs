use num_traits::Zero;

use super::CohError;
use crate::abmod::{validate_matrix, AbHom, CyclicSum, Matrix, Ring};
use crate::fincat::{FinCat, FinFunctor};

/// A functor from a finite category to finitely generated modules over `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefFunctor {
    base: FinCat,
    ring: Ring,
    values: Vec<CyclicSum>,
    action: Vec<Matrix>,
}

impl CoefFunctor {
    /// Checks shapes, identities and composition modulo the torsion of each value.
    pub fn new(
        base: FinCat,
        ring: Ring,
        values: Vec<CyclicSum>,
        action: Vec<Matrix>,
    ) -> Result<Self, CohError> {
        if values.len() != base.num_objects() || action.len() != base.num_morphisms() {
            return Err(CohError::Malformed(
                "one value per object and one matrix per morphism required".into(),
            ));
        }
        if values.iter().any(|v| v.ring() != ring) {
            return Err(crate::abmod::AbError::RingMismatch.into());
        }
        let mut checked = Vec::with_capacity(action.len());
        for (f, m) in action.iter().enumerate() {
            checked.push(validate_matrix(
                &values[base.dom(f)],
                &values[base.cod(f)],
                m,
            )?);
        }
        let func = CoefFunctor {
            base,
            ring,
            values,
            action: checked,
        };
        func.check_functoriality()?;
        Ok(func)
    }

    fn check_functoriality(&self) -> Result<(), CohError> {
        let c = &self.base;
        for x in 0..c.num_objects() {
            if self.action[c.identity(x)] != Matrix::identity(self.values[x].len()) {
                return Err(CohError::NotAFunctor(format!(
                    "identity of {} acts nontrivially",
                    c.object_name(x)
                )));
            }
        }
        for f in c.non_identity_morphisms() {
            for &g in c.out_non_identity(c.cod(f)) {
                let h = c.compose(g, f).expect("composable");
                let prod = self.action[g].mul(self.ring, &self.action[f]);
                let diff = prod.sub(self.ring, &self.action[h]);
                let target = &self.values[c.cod(g)];
                for r in 0..diff.nrows() {
                    if diff
                        .row(r)
                        .iter()
                        .any(|(_, v)| !self.ring.reduce(v.clone(), target.order(r)).is_zero())
                    {
                        return Err(CohError::NotAFunctor(format!(
                            "F({} ∘ {}) != F({}) F({})",
                            c.morphism_name(g),
                            c.morphism_name(f),
                            c.morphism_name(g),
                            c.morphism_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant functor with identity actions.
    pub fn constant(base: &FinCat, value: &CyclicSum) -> CoefFunctor {
        let n = value.len();
        CoefFunctor {
            base: base.clone(),
            ring: value.ring(),
            values: vec![value.clone(); base.num_objects()],
            action: vec![Matrix::identity(n); base.num_morphisms()],
        }
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn value(&self, x: usize) -> &CyclicSum {
        &self.values[x]
    }

    pub fn values(&self) -> &[CyclicSum] {
        &self.values
    }

    pub fn action(&self, f: usize) -> &Matrix {
        &self.action[f]
    }

    pub fn action_hom(&self, f: usize) -> AbHom {
        AbHom::new(
            self.values[self.base.dom(f)].clone(),
            self.values[self.base.cod(f)].clone(),
            self.action[f].clone(),
        )
        .expect("validated at construction")
    }

    /// `γ*F = F ∘ γ`.
    pub fn restrict(&self, gamma: &FinFunctor) -> Result<CoefFunctor, CohError> {
        if gamma.target() != &self.base {
            return Err(CohError::BaseMismatch);
        }
        let src = gamma.source();
        Ok(CoefFunctor {
            base: src.clone(),
            ring: self.ring,
            values: (0..src.num_objects())
                .map(|x| self.values[gamma.object(x)].clone())
                .collect(),
            action: (0..src.num_morphisms())
                .map(|f| self.action[gamma.morphism(f)].clone())
                .collect(),
        })
    }

    pub fn direct_sum(&self, other: &CoefFunctor) -> Result<CoefFunctor, CohError> {
        if self.base != other.base {
            return Err(CohError::BaseMismatch);
        }
        Ok(CoefFunctor {
            base: self.base.clone(),
            ring: self.ring,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        })
    }

    /// Largest value, by number of generators.
    pub fn max_rank(&self) -> usize {
        self.values.iter().map(CyclicSum::len).max().unwrap_or(0)
    }
}
