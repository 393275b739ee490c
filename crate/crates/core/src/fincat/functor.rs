use super::construct::twisted_arrow;
use super::{FinCat, FinCatError, TwistedArrow};

/// A functor between finite categories, given on object and morphism indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: FinCat,
    target: FinCat,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl FinFunctor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, FinCatError> {
        let bad = |what: String| FinCatError::NotAFunctor { what };
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms()
        {
            return Err(FinCatError::Malformed(
                "functor maps have the wrong length".into(),
            ));
        }
        if object_map.iter().any(|&y| y >= target.num_objects())
            || morphism_map.iter().any(|&g| g >= target.num_morphisms())
        {
            return Err(FinCatError::DanglingIndex {
                what: "functor image".into(),
            });
        }
        for x in 0..source.num_objects() {
            if morphism_map[source.identity(x)] != target.identity(object_map[x]) {
                return Err(bad(format!("the identity of object {x}")));
            }
        }
        for f in 0..source.num_morphisms() {
            let g = morphism_map[f];
            if target.dom(g) != object_map[source.dom(f)]
                || target.cod(g) != object_map[source.cod(f)]
            {
                return Err(bad(format!("the endpoints of morphism {f}")));
            }
        }
        for f in 0..source.num_morphisms() {
            for &g in source.out_non_identity(source.cod(f)) {
                let h = source.compose(g, f).expect("composable");
                if target.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[h]) {
                    return Err(bad(format!("the composite of {g} after {f}")));
                }
            }
        }
        Ok(FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub(crate) fn new_unchecked(
        source: FinCat,
        target: FinCat,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Self {
        let f = FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        };
        debug_assert!(FinFunctor::new(
            f.source.clone(),
            f.target.clone(),
            f.object_map.clone(),
            f.morphism_map.clone()
        )
        .is_ok());
        f
    }

    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor, FinCatError> {
        if self.target != other.source {
            return Err(FinCatError::Malformed("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&y| other.object(y)).collect(),
            morphism_map: self
                .morphism_map
                .iter()
                .map(|&g| other.morphism(g))
                .collect(),
        })
    }

    /// `Tw(γ): Tw(C) -> Tw(D)`, `f ↦ γ(f)`, `(a, b) ↦ (γ(a), γ(b))`, with both twisted arrow
    /// categories in canonical order.
    pub fn twisted(&self) -> (TwistedArrow, TwistedArrow, FinFunctor) {
        let tw_c = twisted_arrow(&self.source);
        let tw_d = twisted_arrow(&self.target);
        let g = self.twisted_between(&tw_c, &tw_d);
        (tw_c, tw_d, g)
    }

    pub fn twisted_between(&self, tw_c: &TwistedArrow, tw_d: &TwistedArrow) -> FinFunctor {
        let object_map = self.morphism_map.clone();
        let morphism_map = (0..tw_c.category.num_morphisms())
            .map(|i| {
                let (a, b) = tw_c.pairs[i];
                let f = tw_c.category.dom(i);
                tw_d.morphism(self.morphism(f), self.morphism(a), self.morphism(b))
                    .expect("functor preserves factorizations")
            })
            .collect();
        FinFunctor::new_unchecked(
            tw_c.category.clone(),
            tw_d.category.clone(),
            object_map,
            morphism_map,
        )
    }
}

/// Searches for an isomorphism `c -> d` by backtracking; meant for small categories.
pub fn find_isomorphism(c: &FinCat, d: &FinCat) -> Option<FinFunctor> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return None;
    }
    let mut objects = vec![usize::MAX; c.num_objects()];
    let mut used = vec![false; d.num_objects()];
    assign_objects(c, d, 0, &mut objects, &mut used)
}

fn assign_objects(
    c: &FinCat,
    d: &FinCat,
    x: usize,
    objects: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<FinFunctor> {
    if x == c.num_objects() {
        let mut morphisms = vec![usize::MAX; c.num_morphisms()];
        let mut taken = vec![false; d.num_morphisms()];
        return assign_morphisms(c, d, 0, objects, &mut morphisms, &mut taken);
    }
    for y in 0..d.num_objects() {
        if used[y] || c.hom(x, x).len() != d.hom(y, y).len() {
            continue;
        }
        let fits = (0..x).all(|z| {
            c.hom(x, z).len() == d.hom(y, objects[z]).len()
                && c.hom(z, x).len() == d.hom(objects[z], y).len()
        });
        if !fits {
            continue;
        }
        objects[x] = y;
        used[y] = true;
        if let Some(f) = assign_objects(c, d, x + 1, objects, used) {
            return Some(f);
        }
        used[y] = false;
    }
    None
}

fn assign_morphisms(
    c: &FinCat,
    d: &FinCat,
    f: usize,
    objects: &[usize],
    morphisms: &mut Vec<usize>,
    taken: &mut Vec<bool>,
) -> Option<FinFunctor> {
    if f == c.num_morphisms() {
        return FinFunctor::new(c.clone(), d.clone(), objects.to_vec(), morphisms.clone()).ok();
    }
    let (x, y) = (objects[c.dom(f)], objects[c.cod(f)]);
    for &g in d.hom(x, y) {
        if taken[g] || c.is_identity(f) != d.is_identity(g) {
            continue;
        }
        let consistent = (0..f).all(|h| match (c.compose(h, f), c.compose(f, h)) {
            (Some(k), _) if k < f => d.compose(morphisms[h], g) == Some(morphisms[k]),
            (_, Some(k)) if k < f => d.compose(g, morphisms[h]) == Some(morphisms[k]),
            _ => true,
        });
        if !consistent {
            continue;
        }
        morphisms[f] = g;
        taken[g] = true;
        if let Some(found) = assign_morphisms(c, d, f + 1, objects, morphisms, taken) {
            return Some(found);
        }
        taken[g] = false;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{free_iso, interval};

    #[test]
    fn rejects_non_functor() {
        let i = interval(1);
        let f = i.non_identity_morphisms().next().unwrap();
        // send both objects to 0 but the arrow to itself
        let r = FinFunctor::new(
            i.clone(),
            i.clone(),
            vec![0, 0],
            vec![i.identity(0), f, i.identity(0)],
        );
        assert!(r.is_err());
    }

    #[test]
    fn interval_into_free_iso() {
        let (i, e) = (interval(1), free_iso());
        let u = e.morphism_index("u").unwrap();
        let f = i.non_identity_morphisms().next().unwrap();
        let mut mm = vec![0; 3];
        mm[i.identity(0)] = e.identity(0);
        mm[i.identity(1)] = e.identity(1);
        mm[f] = u;
        let gamma = FinFunctor::new(i, e, vec![0, 1], mm).unwrap();
        let (_, _, tw) = gamma.twisted();
        assert_eq!(tw.source().num_objects(), 3);
        assert_eq!(tw.target().num_objects(), 4);
    }

    #[test]
    fn twisted_interval_is_a_cospan() {
        use crate::fincat::{cospan, interval};
        let tw = twisted_arrow(&interval(1));
        assert!(find_isomorphism(&tw.category, &cospan()).is_some());
        assert!(find_isomorphism(&interval(2), &cospan()).is_none());
        let bc3 = crate::fincat::cyclic_group(3);
        assert!(find_isomorphism(&bc3, &bc3.opposite()).is_some());
    }
}
