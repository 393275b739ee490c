//! JSON for coefficient functors. The base is either a category or, for natural systems, the
//! category whose twisted arrow category is meant. Values list generator orders (0 = free);
//! actions are row-major matrices keyed by morphism name, identities optional.
//!
//! Groups are multiplication tables of element indices; modules over them list generator
//! orders and one matrix per element, defaulting to the trivial action.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CoefFunctor, CohError, FiniteGroup, GroupModule};
use crate::abmod::io::{bigint_list, matrix_from_json, matrix_to_json};
use crate::abmod::{CyclicSum, Matrix, Ring};
use crate::fincat::io::CategoryFile;
use crate::fincat::{twisted_arrow, FinCat};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
struct Orders(#[serde(with = "bigint_list")] Vec<BigInt>);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefFunctorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<CategoryFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted_arrow_of: Option<CategoryFile>,
    pub ring: Ring,
    values: BTreeMap<String, Orders>,
    #[serde(default)]
    pub action: BTreeMap<String, Value>,
}

impl CoefFunctorFile {
    /// The base category, resolving `twisted_arrow_of`.
    pub fn base_category(&self) -> Result<FinCat, CohError> {
        match (&self.base, &self.twisted_arrow_of) {
            (Some(b), None) => Ok(b.to_category()?),
            (None, Some(c)) => Ok(twisted_arrow(&c.to_category()?).category),
            _ => Err(CohError::Malformed(
                "exactly one of \"base\" and \"twisted_arrow_of\" is required".into(),
            )),
        }
    }

    pub fn to_functor(&self) -> Result<CoefFunctor, CohError> {
        let base = self.base_category()?;
        let mut values = vec![None; base.num_objects()];
        for (name, orders) in &self.values {
            let x = base
                .object_index(name)
                .ok_or_else(|| CohError::Malformed(format!("unknown object {name:?}")))?;
            values[x] = Some(CyclicSum::new(self.ring, orders.0.clone())?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| {
                    CohError::Malformed(format!("no value for object {:?}", base.object_name(x)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut action: Vec<Option<Matrix>> = (0..base.num_morphisms())
            .map(|f| {
                base.is_identity(f)
                    .then(|| Matrix::identity(values[base.dom(f)].len()))
            })
            .collect();
        for (name, m) in &self.action {
            let f = base
                .morphism_index(name)
                .ok_or_else(|| CohError::Malformed(format!("unknown morphism {name:?}")))?;
            action[f] = Some(matrix_from_json(
                m,
                values[base.cod(f)].len(),
                values[base.dom(f)].len(),
            )?);
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(f, m)| {
                m.ok_or_else(|| {
                    CohError::Malformed(format!(
                        "no action for morphism {:?}",
                        base.morphism_name(f)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CoefFunctor::new(base, self.ring, values, action)
    }

    pub fn from_functor(f: &CoefFunctor) -> CoefFunctorFile {
        let c = f.base();
        CoefFunctorFile {
            base: Some(CategoryFile::from_category(c)),
            twisted_arrow_of: None,
            ring: f.ring(),
            values: (0..c.num_objects())
                .map(|x| {
                    (
                        c.object_name(x).to_string(),
                        Orders(f.value(x).orders().to_vec()),
                    )
                })
                .collect(),
            action: c
                .non_identity_morphisms()
                .map(|m| (c.morphism_name(m).to_string(), matrix_to_json(f.action(m))))
                .collect(),
        }
    }
}

pub fn parse_coef_functor(json: &str) -> Result<CoefFunctor, CohError> {
    let file: CoefFunctorFile =
        serde_json::from_str(json).map_err(|e| CohError::Malformed(e.to_string()))?;
    file.to_functor()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<FiniteGroup, CohError> {
        FiniteGroup::new(self.table.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupModuleFile {
    pub ring: Ring,
    orders: Orders,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Value>>,
}

impl GroupModuleFile {
    pub fn to_module(&self, group: &FiniteGroup) -> Result<GroupModule, CohError> {
        let module = CyclicSum::new(self.ring, self.orders.0.clone())?;
        let Some(action) = &self.action else {
            return Ok(GroupModule::trivial(group, module));
        };
        if action.len() != group.order() {
            return Err(CohError::Malformed(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let n = module.len();
        let action = action
            .iter()
            .map(|m| matrix_from_json(m, n, n))
            .collect::<Result<Vec<_>, _>>()?;
        GroupModule::new(group, module, action)
    }
}
