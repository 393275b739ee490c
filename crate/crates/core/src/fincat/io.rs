//! JSON files for categories and functors; everything is referenced by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FinCat, FinCatError, FinFunctor, Morphism, RawCategory};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    /// `[g, f, h]` declares `g ∘ f = h`.
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub objects: BTreeMap<String, String>,
    /// Identities may be omitted.
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

fn lookup(names: &[String], n: &str, what: &str) -> Result<usize, FinCatError> {
    names
        .iter()
        .position(|x| x == n)
        .ok_or_else(|| FinCatError::DanglingIndex {
            what: format!("{what} {n:?}"),
        })
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<FinCat, FinCatError> {
        let mnames: Vec<String> = self.morphisms.iter().map(|m| m.name.clone()).collect();
        let mut morphisms = Vec::with_capacity(self.morphisms.len());
        for m in &self.morphisms {
            morphisms.push(Morphism {
                name: m.name.clone(),
                dom: lookup(&self.objects, &m.dom, "object")?,
                cod: lookup(&self.objects, &m.cod, "object")?,
            });
        }
        let mut identities = vec![None; self.objects.len()];
        for (x, id) in &self.identities {
            identities[lookup(&self.objects, x, "object")?] =
                Some(lookup(&mnames, id, "morphism")?);
        }
        let mut composition = Vec::with_capacity(self.composition.len());
        for [g, f, h] in &self.composition {
            composition.push((
                lookup(&mnames, g, "morphism")?,
                lookup(&mnames, f, "morphism")?,
                lookup(&mnames, h, "morphism")?,
            ));
        }
        FinCat::validate(RawCategory {
            objects: self.objects.clone(),
            morphisms,
            identities,
            composition,
        })
    }

    /// Composites involving identities are left implicit.
    pub fn from_category(c: &FinCat) -> CategoryFile {
        let name = |f: usize| c.morphism_name(f).to_string();
        CategoryFile {
            objects: c.object_names().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismEntry {
                    name: m.name.clone(),
                    dom: c.object_name(m.dom).into(),
                    cod: c.object_name(m.cod).into(),
                })
                .collect(),
            identities: (0..c.num_objects())
                .map(|x| (c.object_name(x).to_string(), name(c.identity(x))))
                .collect(),
            composition: c
                .composition_table()
                .into_iter()
                .map(|(g, f, h)| [name(g), name(f), name(h)])
                .collect(),
        }
    }
}

pub fn parse_category(json: &str) -> Result<FinCat, FinCatError> {
    let file: CategoryFile =
        serde_json::from_str(json).map_err(|e| FinCatError::Malformed(e.to_string()))?;
    file.to_category()
}

impl FunctorFile {
    pub fn to_functor(&self, source: &FinCat, target: &FinCat) -> Result<FinFunctor, FinCatError> {
        let mut object_map = vec![usize::MAX; source.num_objects()];
        for (x, y) in &self.objects {
            object_map[lookup(source.object_names(), x, "source object")?] =
                lookup(target.object_names(), y, "target object")?;
        }
        if let Some(x) = object_map.iter().position(|&y| y == usize::MAX) {
            return Err(FinCatError::Malformed(format!(
                "object {:?} is not mapped",
                source.object_name(x)
            )));
        }
        let mut morphism_map: Vec<usize> = (0..source.num_morphisms())
            .map(|f| {
                if source.is_identity(f) {
                    target.identity(object_map[source.dom(f)])
                } else {
                    usize::MAX
                }
            })
            .collect();
        for (f, g) in &self.morphisms {
            let fi = source
                .morphism_index(f)
                .ok_or_else(|| FinCatError::DanglingIndex {
                    what: format!("source morphism {f:?}"),
                })?;
            let gi = target
                .morphism_index(g)
                .ok_or_else(|| FinCatError::DanglingIndex {
                    what: format!("target morphism {g:?}"),
                })?;
            morphism_map[fi] = gi;
        }
        if let Some(f) = morphism_map.iter().position(|&g| g == usize::MAX) {
            return Err(FinCatError::Malformed(format!(
                "morphism {:?} is not mapped",
                source.morphism_name(f)
            )));
        }
        FinFunctor::new(source.clone(), target.clone(), object_map, morphism_map)
    }

    pub fn from_functor(f: &FinFunctor) -> FunctorFile {
        let (s, t) = (f.source(), f.target());
        FunctorFile {
            objects: (0..s.num_objects())
                .map(|x| {
                    (
                        s.object_name(x).to_string(),
                        t.object_name(f.object(x)).to_string(),
                    )
                })
                .collect(),
            morphisms: s
                .non_identity_morphisms()
                .map(|m| {
                    (
                        s.morphism_name(m).to_string(),
                        t.morphism_name(f.morphism(m)).to_string(),
                    )
                })
                .collect(),
        }
    }
}

pub fn parse_functor(
    json: &str,
    source: &FinCat,
    target: &FinCat,
) -> Result<FinFunctor, FinCatError> {
    let file: FunctorFile =
        serde_json::from_str(json).map_err(|e| FinCatError::Malformed(e.to_string()))?;
    file.to_functor(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{cospan, free_iso, idem, interval, twisted_arrow};

    const IDEM: &str = r#"{"objects": ["x0"], "morphisms": [{"name": "id_x0", "dom": "x0", "cod": "x0"},
        {"name": "f", "dom": "x0", "cod": "x0"}], "identities": {"x0": "id_x0"}, "composition": [["f", "f", "f"]]}"#;

    #[test]
    fn parses_idem() {
        let c = parse_category(IDEM).unwrap();
        assert!(c.same_structure(&idem()));
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = IDEM.replacen("\"objects\"", "\"colour\": 1, \"objects\"", 1);
        assert!(matches!(
            parse_category(&bad),
            Err(FinCatError::Malformed(_))
        ));
    }

    #[test]
    fn unknown_names_are_dangling() {
        let bad = IDEM.replace("[\"f\", \"f\", \"f\"]", "[\"f\", \"g\", \"f\"]");
        assert!(matches!(
            parse_category(&bad),
            Err(FinCatError::DanglingIndex { .. })
        ));
    }

    #[test]
    fn roundtrip() {
        for c in [
            idem(),
            interval(2),
            free_iso(),
            cospan(),
            twisted_arrow(&idem()).category,
        ] {
            let file = CategoryFile::from_category(&c);
            let json = serde_json::to_string(&file).unwrap();
            assert_eq!(parse_category(&json).unwrap(), c);
        }
    }
}
