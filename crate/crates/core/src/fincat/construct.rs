use std::collections::HashMap;

use super::{FinCat, FinFunctor, Morphism};

/// A composable chain `start -> ... ` of non-identity morphisms (empty for a 0-chain).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, c: &FinCat) -> usize {
        self.arrows.last().map_or(self.start, |&f| c.cod(f))
    }
}

/// `C × D`; object `(x, y)` has index `x * |Ob D| + y`, morphism `(f, g)` index `f * |Mor D| + g`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (no, mo) = (d.num_objects(), d.num_morphisms());
    let mut objects = Vec::new();
    for x in c.object_names() {
        for y in d.object_names() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                dom: f.dom * no + g.dom,
                cod: f.cod * no + g.cod,
            });
        }
    }
    let identities = (0..c.num_objects())
        .flat_map(|x| (0..no).map(move |y| (x, y)))
        .map(|(x, y)| c.identity(x) * mo + d.identity(y))
        .collect();
    let m = morphisms.len();
    let mut comp = vec![None; m * m];
    for f1 in 0..c.num_morphisms() {
        for g1 in 0..c.num_morphisms() {
            let Some(h1) = c.compose(g1, f1) else {
                continue;
            };
            for f2 in 0..mo {
                for g2 in 0..mo {
                    if let Some(h2) = d.compose(g2, f2) {
                        comp[(g1 * mo + g2) * m + f1 * mo + f2] = Some(h1 * mo + h2);
                    }
                }
            }
        }
    }
    FinCat::assemble(objects, morphisms, identities, comp)
}

/// `Tw(C)` together with its projection to `C^op × C` and the factorization data.
#[derive(Clone, Debug)]
pub struct TwistedArrow {
    pub category: FinCat,
    pub projection: FinFunctor,
    /// For each morphism of `Tw(C)`: `(a, b)` with `target = b ∘ source ∘ a`.
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl TwistedArrow {
    /// The morphism `(a, b)` out of the object `f`.
    pub fn morphism(&self, f: usize, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(f, a, b)).copied()
    }

    /// The morphism `f -> b ∘ f` given by post-composition.
    pub fn post(&self, base: &FinCat, f: usize, b: usize) -> usize {
        self.morphism(f, base.identity(base.dom(f)), b)
            .expect("post-composition exists")
    }

    /// The morphism `f -> f ∘ a` given by pre-composition.
    pub fn pre(&self, base: &FinCat, f: usize, a: usize) -> usize {
        self.morphism(f, a, base.identity(base.cod(f)))
            .expect("pre-composition exists")
    }
}

/// Objects are the morphisms of `C` in index order; morphisms `f -> f'` are the pairs
/// `(a: dom f' -> dom f, b: cod f -> cod f')` with `b ∘ f ∘ a = f'`, listed by source,
/// then target, then `a`, then `b`.
pub fn twisted_arrow(c: &FinCat) -> TwistedArrow {
    let mc = c.num_morphisms();
    let objects: Vec<String> = c.morphisms().iter().map(|f| f.name.clone()).collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for f in 0..mc {
        for f2 in 0..mc {
            for &a in c.hom(c.dom(f2), c.dom(f)) {
                let fa = c.compose(f, a).expect("composable");
                for &b in c.hom(c.cod(f), c.cod(f2)) {
                    if c.compose(b, fa) == Some(f2) {
                        index.insert((f, a, b), morphisms.len());
                        morphisms.push(Morphism {
                            name: format!(
                                "({},{})@{}",
                                c.morphism_name(a),
                                c.morphism_name(b),
                                c.morphism_name(f)
                            ),
                            dom: f,
                            cod: f2,
                        });
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    let identities: Vec<usize> = (0..mc)
        .map(|f| index[&(f, c.identity(c.dom(f)), c.identity(c.cod(f)))])
        .collect();
    let m = morphisms.len();
    let mut comp = vec![None; m * m];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let mid = morphisms[i].cod;
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            if morphisms[j].dom != mid {
                continue;
            }
            let aa = c.compose(a, a2).expect("composable");
            let bb = c.compose(b2, b).expect("composable");
            comp[j * m + i] = Some(index[&(morphisms[i].dom, aa, bb)]);
        }
    }
    let category = FinCat::assemble(objects, morphisms, identities, comp);
    let op_times = product(&c.opposite(), c);
    let no = c.num_objects();
    let object_map = (0..mc).map(|f| c.dom(f) * no + c.cod(f)).collect();
    let morphism_map = pairs.iter().map(|&(a, b)| a * mc + b).collect();
    let projection =
        FinFunctor::new_unchecked(category.clone(), op_times, object_map, morphism_map);
    TwistedArrow {
        category,
        projection,
        pairs,
        index,
    }
}

/// The comma category `γ ↓ d`: objects `(c, u: γ(c) -> d)`, morphisms `m: c -> c'` with
/// `u' ∘ γ(m) = u`.
pub fn comma_over(gamma: &FinFunctor, d: usize) -> FinCat {
    let (src, tgt) = (gamma.source(), gamma.target());
    let mut objs: Vec<(usize, usize)> = Vec::new();
    for c in 0..src.num_objects() {
        for &u in tgt.hom(gamma.object(c), d) {
            objs.push((c, u));
        }
    }
    let objects = objs
        .iter()
        .map(|&(c, u)| format!("({},{})", src.object_name(c), tgt.morphism_name(u)))
        .collect();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; objs.len()];
    for (s, &(c, u)) in objs.iter().enumerate() {
        for (t, &(c2, u2)) in objs.iter().enumerate() {
            for &m in src.hom(c, c2) {
                if tgt.compose(u2, gamma.morphism(m)) == Some(u) {
                    if s == t && m == src.identity(c) {
                        identities[s] = morphisms.len();
                    }
                    index.insert((s, t, m), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}:{s}->{t}", src.morphism_name(m)),
                        dom: s,
                        cod: t,
                    });
                    underlying.push(m);
                }
            }
        }
    }
    let m = morphisms.len();
    let mut comp = vec![None; m * m];
    for i in 0..m {
        for j in 0..m {
            if morphisms[j].dom == morphisms[i].cod {
                let h = src
                    .compose(underlying[j], underlying[i])
                    .expect("composable");
                comp[j * m + i] = Some(index[&(morphisms[i].dom, morphisms[j].cod, h)]);
            }
        }
    }
    FinCat::assemble(objects, morphisms, identities, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{free_iso, idem, interval, point};

    #[test]
    fn tw_of_point() {
        let tw = twisted_arrow(&point());
        assert!(tw.category.same_structure(&point()));
    }

    #[test]
    fn tw_of_interval_is_cospan() {
        let c = interval(1);
        let tw = twisted_arrow(&c).category;
        assert_eq!(tw.num_objects(), 3);
        let non_id: Vec<usize> = tw.non_identity_morphisms().collect();
        assert_eq!(non_id.len(), 2);
        let f = c.non_identity_morphisms().next().unwrap();
        for g in non_id {
            assert_eq!(tw.cod(g), f);
        }
    }

    #[test]
    fn tw_of_idem_hom_sizes() {
        let tw = twisted_arrow(&idem()).category;
        let (one, f) = (0, 1);
        assert_eq!(tw.hom(f, f).len(), 4);
        assert_eq!(tw.hom(one, one).len(), 1);
        assert_eq!(tw.hom(one, f).len(), 3);
        assert_eq!(tw.hom(f, one).len(), 0);
        assert_eq!(tw.num_morphisms(), 8);
    }

    #[test]
    fn product_counts() {
        let p = product(&interval(1), &interval(1));
        assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
        let q = product(&idem(), &idem());
        assert_eq!((q.num_objects(), q.num_morphisms()), (1, 4));
    }

    #[test]
    fn comma_examples() {
        let id = FinFunctor::identity(&point());
        assert_eq!(comma_over(&id, 0).num_objects(), 1);
        let hit_one =
            FinFunctor::new(point(), interval(1), vec![1], vec![interval(1).identity(1)]).unwrap();
        assert_eq!(comma_over(&hit_one, 0).num_objects(), 0);
    }

    #[test]
    fn tw_of_free_iso_is_indiscrete() {
        let tw = twisted_arrow(&free_iso()).category;
        assert_eq!(tw.num_objects(), 4);
        assert_eq!(tw.num_morphisms(), 16);
        assert!(tw.is_groupoid());
    }
}
