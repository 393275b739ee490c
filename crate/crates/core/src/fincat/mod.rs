//! Finite categories with globally indexed morphisms and a dense composition table.

mod construct;
mod functor;
pub mod io;
mod standard;

pub use construct::{comma_over, product, twisted_arrow, Chain, TwistedArrow};
pub use functor::{find_isomorphism, FinFunctor};
pub use standard::{classifying_category, cospan, cyclic_group, free_iso, idem, interval, point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinCatError {
    #[error("object {object} has no identity morphism")]
    MissingIdentity { object: usize },
    #[error("unit law fails for morphism {morphism}")]
    UnitLawViolation { morphism: usize },
    #[error("associativity fails for ({h}, {g}, {f})")]
    AssociativityViolation { h: usize, g: usize, f: usize },
    #[error("dangling reference {what}")]
    DanglingIndex { what: String },
    #[error("composite of {g} after {f} declared twice with different results")]
    ConflictingComposition { g: usize, f: usize },
    #[error("composite of {g} after {f} is not declared")]
    MissingComposite { g: usize, f: usize },
    #[error("composite of {g} after {f} has the wrong type")]
    IllTypedComposite { g: usize, f: usize },
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("monoid table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("monoid table has no two-sided unit")]
    NoUnit,
    #[error("functor does not preserve {what}")]
    NotAFunctor { what: String },
    #[error("malformed category data: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A validated finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // comp[g * m + f] = g ∘ f
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
    out_nonid: Vec<Vec<usize>>,
}

/// Index-level input to [`FinCat::validate`].
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<Option<usize>>,
    /// `(g, f, h)` declares `g ∘ f = h`. Composites with identities may be omitted.
    pub composition: Vec<(usize, usize, usize)>,
}

impl FinCat {
    pub fn validate(raw: RawCategory) -> Result<FinCat, FinCatError> {
        let n = raw.objects.len();
        let m = raw.morphisms.len();
        let dangling = |what: String| FinCatError::DanglingIndex { what };
        for (i, f) in raw.morphisms.iter().enumerate() {
            if f.dom >= n || f.cod >= n {
                return Err(dangling(format!("endpoint of morphism {i}")));
            }
        }
        check_unique(raw.objects.iter())?;
        check_unique(raw.morphisms.iter().map(|f| &f.name))?;
        if raw.identities.len() != n {
            return Err(FinCatError::Malformed(format!(
                "{} identities for {n} objects",
                raw.identities.len()
            )));
        }
        let mut identities = Vec::with_capacity(n);
        for (x, id) in raw.identities.iter().enumerate() {
            let id = id.ok_or(FinCatError::MissingIdentity { object: x })?;
            if id >= m {
                return Err(dangling(format!("identity of object {x}")));
            }
            if raw.morphisms[id].dom != x || raw.morphisms[id].cod != x {
                return Err(FinCatError::UnitLawViolation { morphism: id });
            }
            identities.push(id);
        }
        let mut comp = vec![None; m * m];
        for &(g, f, h) in &raw.composition {
            if g >= m || f >= m || h >= m {
                return Err(dangling(format!("composition entry ({g}, {f}, {h})")));
            }
            let (mf, mg, mh) = (&raw.morphisms[f], &raw.morphisms[g], &raw.morphisms[h]);
            if mf.cod != mg.dom || mh.dom != mf.dom || mh.cod != mg.cod {
                return Err(FinCatError::IllTypedComposite { g, f });
            }
            match comp[g * m + f] {
                Some(old) if old != h => return Err(FinCatError::ConflictingComposition { g, f }),
                _ => comp[g * m + f] = Some(h),
            }
        }
        for (f, mf) in raw.morphisms.iter().enumerate() {
            for slot in [identities[mf.cod] * m + f, f * m + identities[mf.dom]] {
                match comp[slot] {
                    Some(h) if h != f => return Err(FinCatError::UnitLawViolation { morphism: f }),
                    _ => comp[slot] = Some(f),
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                if raw.morphisms[f].cod == raw.morphisms[g].dom && comp[g * m + f].is_none() {
                    return Err(FinCatError::MissingComposite { g, f });
                }
            }
        }
        let cat = FinCat::assemble(raw.objects, raw.morphisms, identities, comp);
        cat.check_associativity()?;
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> FinCat {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut out_nonid = vec![Vec::new(); n];
        for (i, f) in morphisms.iter().enumerate() {
            homs[f.dom * n + f.cod].push(i);
            if identities[f.dom] != i {
                out_nonid[f.dom].push(i);
            }
        }
        FinCat {
            objects,
            morphisms,
            identities,
            comp,
            homs,
            out_nonid,
        }
    }

    fn check_associativity(&self) -> Result<(), FinCatError> {
        let m = self.morphisms.len();
        for f in 0..m {
            for &g in &self.out_all(self.cod(f)) {
                let gf = self.compose(g, f).expect("total");
                for &h in &self.out_all(self.cod(g)) {
                    let hg = self.compose(h, g).expect("total");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(FinCatError::AssociativityViolation { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }

    fn out_all(&self, x: usize) -> Vec<usize> {
        let mut v = self.out_nonid[x].clone();
        v.push(self.identities[x]);
        v
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == f
    }

    /// `g ∘ f`, or `None` if `cod f != dom g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    /// Non-identity morphisms with domain `x`.
    pub fn out_non_identity(&self, x: usize) -> &[usize] {
        &self.out_nonid[x]
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|&f| !self.is_identity(f))
    }

    /// `(g, f, g ∘ f)` for all composable pairs of non-identity morphisms.
    pub fn composition_table(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for f in self.non_identity_morphisms() {
            for &g in self.out_non_identity(self.cod(f)) {
                out.push((g, f, self.compose(g, f).expect("total")));
            }
        }
        out
    }

    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity(x))
                && self.compose(f, g) == Some(self.identity(y))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| self.is_isomorphism(f))
    }

    /// Same shape up to renaming: identical index structure.
    pub fn same_structure(&self, other: &FinCat) -> bool {
        self.objects.len() == other.objects.len()
            && self.identities == other.identities
            && self.comp == other.comp
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.dom == b.dom && a.cod == b.cod)
            && self.morphisms.len() == other.morphisms.len()
    }

    pub fn opposite(&self) -> FinCat {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism {
                name: f.name.clone(),
                dom: f.cod,
                cod: f.dom,
            })
            .collect();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[g * m + f] = self.compose(f, g);
            }
        }
        FinCat::assemble(
            self.objects.clone(),
            morphisms,
            self.identities.clone(),
            comp,
        )
    }

    /// Composable chains of `n` non-identity morphisms; for `n = 0` one chain per object.
    pub fn nerve_chains(&self, n: usize) -> Vec<Chain> {
        if n == 0 {
            return (0..self.num_objects())
                .map(|x| Chain {
                    start: x,
                    arrows: Vec::new(),
                })
                .collect();
        }
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(n);
        for f in self.non_identity_morphisms() {
            stack.push(f);
            self.extend_chains(n, &mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, n: usize, stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
        if stack.len() == n {
            out.push(Chain {
                start: self.dom(stack[0]),
                arrows: stack.clone(),
            });
            return;
        }
        let last = *stack.last().expect("non-empty");
        for &g in self.out_non_identity(self.cod(last)) {
            stack.push(g);
            self.extend_chains(n, stack, out);
            stack.pop();
        }
    }

    /// Isomorphism classes of objects, each listed by increasing index.
    pub fn isomorphism_classes(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        let mut class = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            class[x] = out.len();
            let mut members = vec![x];
            for y in x + 1..n {
                if class[y] == usize::MAX && self.hom(x, y).iter().any(|&f| self.is_isomorphism(f))
                {
                    class[y] = out.len();
                    members.push(y);
                }
            }
            out.push(members);
        }
        out
    }

    /// The full subcategory on `objects` (kept in the given order) and its inclusion.
    pub fn full_subcategory(&self, objects: &[usize]) -> FinFunctor {
        let mut obj_pos = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objects.iter().enumerate() {
            obj_pos[x] = i;
        }
        let kept: Vec<usize> = (0..self.num_morphisms())
            .filter(|&f| obj_pos[self.dom(f)] != usize::MAX && obj_pos[self.cod(f)] != usize::MAX)
            .collect();
        let mut mor_pos = vec![usize::MAX; self.num_morphisms()];
        for (i, &f) in kept.iter().enumerate() {
            mor_pos[f] = i;
        }
        let m = kept.len();
        let mut comp = vec![None; m * m];
        for (gi, &g) in kept.iter().enumerate() {
            for (fi, &f) in kept.iter().enumerate() {
                comp[gi * m + fi] = self.compose(g, f).map(|h| mor_pos[h]);
            }
        }
        let sub = FinCat::assemble(
            objects.iter().map(|&x| self.objects[x].clone()).collect(),
            kept.iter()
                .map(|&f| Morphism {
                    name: self.morphisms[f].name.clone(),
                    dom: obj_pos[self.dom(f)],
                    cod: obj_pos[self.cod(f)],
                })
                .collect(),
            objects
                .iter()
                .map(|&x| mor_pos[self.identities[x]])
                .collect(),
            comp,
        );
        FinFunctor::new_unchecked(sub, self.clone(), objects.to_vec(), kept)
    }

    /// Inclusion of a skeleton: the full subcategory on the least object of each isomorphism class.
    pub fn skeleton(&self) -> FinFunctor {
        let reps: Vec<usize> = self.isomorphism_classes().iter().map(|c| c[0]).collect();
        self.full_subcategory(&reps)
    }

    pub fn is_skeletal(&self) -> bool {
        self.isomorphism_classes().iter().all(|c| c.len() == 1)
    }
}

fn check_unique<'a, I: Iterator<Item = &'a String>>(names: I) -> Result<(), FinCatError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(FinCatError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}
