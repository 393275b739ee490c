use std::collections::HashMap;

use super::functor::CoefFunctor;
use super::{check_cells, CohError};
use serde::Serialize;

use crate::abmod::{
    cone_projection, is_exact_at, mapping_cone, AbHom, ChainMap, CochainComplex, CohomologyClasses,
    CyclicSum, FgAbGroup, Matrix, Scalar,
};
use crate::fincat::{twisted_arrow, Chain, FinCat, FinFunctor, TwistedArrow};

struct Layout {
    chains: Vec<Chain>,
    index: HashMap<Chain, usize>,
    offsets: Vec<usize>,
    term: CyclicSum,
}

impl Layout {
    fn new(
        chains: Vec<Chain>,
        value: impl Fn(&Chain) -> CyclicSum,
        ring: crate::abmod::Ring,
    ) -> Result<Layout, CohError> {
        let mut offsets = Vec::with_capacity(chains.len());
        let mut parts = Vec::with_capacity(chains.len());
        let mut total = 0;
        for ch in &chains {
            offsets.push(total);
            let v = value(ch);
            total += v.len();
            parts.push(v);
        }
        check_cells(total)?;
        let index = chains
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        Ok(Layout {
            chains,
            index,
            offsets,
            term: CyclicSum::direct_sum_all(ring, parts.iter()),
        })
    }

    fn offset(&self, ch: &Chain) -> usize {
        self.offsets[self.index[ch]]
    }
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::from_integer(1.into())
    } else {
        Scalar::from_integer((-1).into())
    }
}

/// Shared shape of the nerve-indexed complexes: the coefficient of a chain sits at
/// `value_obj(chain)`; the last face acts through `last(chain)`, the first face through
/// `first(chain)` (`None` for the identity); inner faces act by the identity.
fn nerve_complex(
    c: &FinCat,
    f: &CoefFunctor,
    top: usize,
    value_obj: &dyn Fn(&Chain) -> usize,
    last: &dyn Fn(&Chain) -> usize,
    first: &dyn Fn(&Chain) -> Option<usize>,
) -> Result<(CochainComplex, Vec<Layout>), CohError> {
    let ring = f.ring();
    let mut layouts = Vec::with_capacity(top + 1);
    for n in 0..=top {
        layouts.push(Layout::new(
            c.nerve_chains(n),
            |ch| f.value(value_obj(ch)).clone(),
            ring,
        )?);
    }
    let mut diffs = Vec::with_capacity(top);
    let mut identities: HashMap<(usize, bool), Matrix> = HashMap::new();
    let mut signed_identity = |size: usize, negative: bool| {
        identities
            .entry((size, negative))
            .or_insert_with(|| Matrix::identity(size).scale(ring, &sign(usize::from(negative))))
            .clone()
    };
    for n in 0..top {
        let (src, dst) = (&layouts[n], &layouts[n + 1]);
        let last_sign = sign(n + 1);
        let signed_actions: Vec<Matrix> = (0..f.base().num_morphisms())
            .map(|m| f.action(m).scale(ring, &last_sign))
            .collect();
        let mut d = Matrix::zeros(dst.term.len(), src.term.len());
        for (si, sigma) in dst.chains.iter().enumerate() {
            let r0 = dst.offsets[si];
            let arrows = &sigma.arrows;
            let drop_last = Chain {
                start: sigma.start,
                arrows: arrows[..n].to_vec(),
            };
            d.add_block(
                ring,
                r0,
                src.offset(&drop_last),
                &signed_actions[last(sigma)],
            );
            for i in 1..=n {
                let h = c.compose(arrows[i], arrows[i - 1]).expect("composable");
                if c.is_identity(h) {
                    continue;
                }
                let mut inner = arrows[..i - 1].to_vec();
                inner.push(h);
                inner.extend_from_slice(&arrows[i + 1..]);
                let tau = Chain {
                    start: sigma.start,
                    arrows: inner,
                };
                let size = f.value(value_obj(sigma)).len();
                d.add_block(
                    ring,
                    r0,
                    src.offset(&tau),
                    &signed_identity(size, i % 2 == 1),
                );
            }
            let drop_first = Chain {
                start: c.cod(arrows[0]),
                arrows: arrows[1..].to_vec(),
            };
            let block = match first(sigma) {
                Some(m) => f.action(m).clone(),
                None => signed_identity(f.value(value_obj(sigma)).len(), false),
            };
            d.add_block(ring, r0, src.offset(&drop_first), &block);
        }
        diffs.push(d);
    }
    let terms = layouts.iter().map(|l| l.term.clone()).collect();
    Ok((CochainComplex::new_unchecked(ring, 0, terms, diffs)?, layouts))
}

/// The normalized cochain complex computing `lim^n F`, in degrees `0..=top`.
pub fn functor_cochain_complex(
    c: &FinCat,
    f: &CoefFunctor,
    top: usize,
) -> Result<CochainComplex, CohError> {
    Ok(functor_complex_with_layout(c, f, top)?.0)
}

fn functor_complex_with_layout(
    c: &FinCat,
    f: &CoefFunctor,
    top: usize,
) -> Result<(CochainComplex, Vec<Layout>), CohError> {
    if f.base() != c {
        return Err(CohError::BaseMismatch);
    }
    nerve_complex(
        c,
        f,
        top,
        &|ch| ch.end(c),
        &|ch| *ch.arrows.last().expect("non-empty"),
        &|_| None,
    )
}

fn check_cap(n: i64, guard: i64, cap: i64) -> Result<(), CohError> {
    if n + guard > cap {
        return Err(CohError::DegreeCapTooLow {
            degree: n,
            needed: n + guard,
            cap,
        });
    }
    Ok(())
}

/// `lim^n F`. Categories with non-trivial isomorphisms are first replaced by a skeleton.
pub fn derived_limit(c: &FinCat, f: &CoefFunctor, n: i64, cap: i64) -> Result<FgAbGroup, CohError> {
    if f.base() != c {
        return Err(CohError::BaseMismatch);
    }
    check_cap(n, 1, cap)?;
    if n < 0 {
        return Ok(FgAbGroup::zero(f.ring()));
    }
    let (c, f) = if c.is_skeletal() {
        (c.clone(), f.clone())
    } else {
        let incl = c.skeleton();
        (incl.source().clone(), f.restrict(&incl)?)
    };
    let complex = functor_cochain_complex(&c, &f, n as usize + 1)?;
    Ok(complex.cohomology(n)?)
}

/// The complex whose degree-`n` term is the sum over `n`-chains of `D(f_n ∘ ... ∘ f_1)`.
pub fn baues_wirsching_complex(
    c: &FinCat,
    d: &CoefFunctor,
    top: usize,
) -> Result<CochainComplex, CohError> {
    let tw = twisted_arrow(c);
    if d.base() != &tw.category {
        return Err(CohError::BaseMismatch);
    }
    Ok(bw_with_tw(c, &tw, d, top)?.0)
}

fn composite(c: &FinCat, start: usize, arrows: &[usize]) -> usize {
    arrows.iter().fold(c.identity(start), |acc, &g| {
        c.compose(g, acc).expect("composable")
    })
}

fn bw_with_tw(
    c: &FinCat,
    tw: &TwistedArrow,
    d: &CoefFunctor,
    top: usize,
) -> Result<(CochainComplex, Vec<Layout>), CohError> {
    let value_obj = |ch: &Chain| composite(c, ch.start, &ch.arrows);
    let last = |ch: &Chain| {
        let k = ch.arrows.len();
        tw.post(
            c,
            composite(c, ch.start, &ch.arrows[..k - 1]),
            ch.arrows[k - 1],
        )
    };
    let first = |ch: &Chain| {
        let f1 = ch.arrows[0];
        Some(tw.pre(c, composite(c, c.cod(f1), &ch.arrows[1..]), f1))
    };
    nerve_complex(c, d, top, &value_obj, &last, &first)
}

pub fn baues_wirsching(
    c: &FinCat,
    d: &CoefFunctor,
    n: i64,
    cap: i64,
) -> Result<FgAbGroup, CohError> {
    check_cap(n, 1, cap)?;
    let tw = twisted_arrow(c);
    if d.base() != &tw.category {
        return Err(CohError::BaseMismatch);
    }
    if n < 0 {
        return Ok(FgAbGroup::zero(d.ring()));
    }
    Ok(bw_with_tw(c, &tw, d, n as usize + 1)?.0.cohomology(n)?)
}

/// `H^n_Q(C; F) = lim^{n+1}` over `Tw(C)`; zero below degree `-1`.
pub fn quillen_cohomology(
    c: &FinCat,
    f: &CoefFunctor,
    n: i64,
    cap: i64,
) -> Result<FgAbGroup, CohError> {
    let tw = twisted_arrow(c);
    if f.base() != &tw.category {
        return Err(CohError::BaseMismatch);
    }
    check_cap(n, 2, cap)?;
    if n < -1 {
        return Ok(FgAbGroup::zero(f.ring()));
    }
    derived_limit(&tw.category, f, n + 1, cap)
}

/// The pullback `φ ↦ φ ∘ γ` on normalized cochains; chains that become degenerate go to 0.
pub fn restriction_map(
    gamma: &FinFunctor,
    f: &CoefFunctor,
    top: usize,
) -> Result<ChainMap, CohError> {
    let pulled = f.restrict(gamma)?;
    let (k, kl) = functor_complex_with_layout(gamma.target(), f, top)?;
    let (l, ll) = functor_complex_with_layout(gamma.source(), &pulled, top)?;
    let src = gamma.source();
    let mut maps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let (kn, ln) = (&kl[n], &ll[n]);
        let mut m = Matrix::zeros(ln.term.len(), kn.term.len());
        for (i, sigma) in ln.chains.iter().enumerate() {
            let image: Vec<usize> = sigma.arrows.iter().map(|&a| gamma.morphism(a)).collect();
            if image.iter().any(|&a| gamma.target().is_identity(a)) {
                continue;
            }
            let tau = Chain {
                start: gamma.object(sigma.start),
                arrows: image,
            };
            let size = pulled.value(sigma.end(src)).len();
            m.add_block(
                f.ring(),
                ln.offsets[i],
                kn.offset(&tau),
                &Matrix::identity(size),
            );
        }
        maps.push((n as i64, m));
    }
    Ok(ChainMap::new_unchecked(k, l, maps)?)
}

/// The restriction `C•(Tw D; F) -> C•(Tw C; Tw(f)*F)` and its cone, whose cohomology is
/// relative Quillen cohomology.
#[derive(Clone, Debug)]
pub struct RelativeSequence {
    pub restriction: ChainMap,
    pub cone: CochainComplex,
}

impl RelativeSequence {
    pub fn absolute_target(&self) -> &CochainComplex {
        self.restriction.source()
    }

    pub fn absolute_source(&self) -> &CochainComplex {
        self.restriction.target()
    }
}

/// Complexes in degrees `0..=top`; the cone is exact in degrees up to `top - 2`.
pub fn relative_sequence(
    f: &FinFunctor,
    coef: &CoefFunctor,
    top: usize,
) -> Result<RelativeSequence, CohError> {
    let (_, tw_d, tw_f) = f.twisted();
    if coef.base() != &tw_d.category {
        return Err(CohError::BaseMismatch);
    }
    let restriction = restriction_map(&tw_f, coef, top)?;
    let cone = mapping_cone(&restriction)?;
    Ok(RelativeSequence { restriction, cone })
}

/// `H^n_Q(D, C; F)`, fitting into `... -> H^n_Q(D,C) -> H^n_Q(D) -> H^n_Q(C; f*F) -> H^{n+1}_Q(D,C) -> ...`.
pub fn relative_quillen(
    f: &FinFunctor,
    coef: &CoefFunctor,
    n: i64,
    cap: i64,
) -> Result<FgAbGroup, CohError> {
    let tw_d = twisted_arrow(f.target());
    if coef.base() != &tw_d.category {
        return Err(CohError::BaseMismatch);
    }
    check_cap(n, 2, cap)?;
    if n < -1 {
        return Ok(FgAbGroup::zero(coef.ring()));
    }
    let seq = relative_sequence(f, coef, (n + 2) as usize)?;
    Ok(seq.cone.cohomology(n)?)
}

/// Which term of the relative long exact sequence a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LesTerm {
    Relative,
    Target,
    Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesCheck {
    pub term: LesTerm,
    /// Quillen degree of the term.
    pub degree: i64,
    pub exact: bool,
}

fn induced(
    m: &Matrix,
    from: &CohomologyClasses,
    to: &CohomologyClasses,
) -> Result<AbHom, CohError> {
    let ring = to.term().ring();
    let cols = from
        .representatives()
        .iter()
        .map(|rep| to.class_of(&to.term().reduce(&m.apply(ring, rep))))
        .collect::<Result<Vec<_>, _>>()?;
    let target = to.group().cyclic_sum();
    Ok(AbHom::new(
        from.group().cyclic_sum(),
        target.clone(),
        Matrix::from_columns(target.len(), &cols),
    )?)
}

/// Checks exactness of `H^n_Q(D,C) -> H^n_Q(D) -> H^n_Q(C) -> H^{n+1}_Q(D,C)` at each of the
/// three terms for Quillen degrees `-1..=max_degree`, using induced maps on explicit cocycles.
pub fn les_exactness(seq: &RelativeSequence, max_degree: i64) -> Result<Vec<LesCheck>, CohError> {
    let (k, l, cone) = (seq.absolute_target(), seq.absolute_source(), &seq.cone);
    check_cap(max_degree, 3, k.hi())?;
    let ring = k.ring();
    let proj = cone_projection(&seq.restriction, cone)?;
    let cone_classes = (-1..=max_degree + 1)
        .map(|n| cone.cohomology_classes(n))
        .collect::<Result<Vec<_>, _>>()?;
    let k_classes = (0..=max_degree + 1)
        .map(|n| k.cohomology_classes(n))
        .collect::<Result<Vec<_>, _>>()?;
    let l_classes = (0..=max_degree + 1)
        .map(|n| l.cohomology_classes(n))
        .collect::<Result<Vec<_>, _>>()?;
    // indexed by Quillen degree q ≥ -1: cone H^q, K and L in H^{q+1}
    let at = |q: i64| (q + 1) as usize;
    let include = |q: i64| -> Result<AbHom, CohError> {
        let target = &cone_classes[at(q)];
        if q < 0 {
            return Ok(AbHom::zero(
                &CyclicSum::zero(ring),
                &target.group().cyclic_sum(),
            ));
        }
        let m = Matrix::identity(l.term(q).len())
            .vstack(&Matrix::zeros(k.term(q + 1).len(), l.term(q).len()));
        induced(&m, &l_classes[q as usize], target)
    };
    let project = |q: i64| induced(&proj.map(q), &cone_classes[at(q)], &k_classes[at(q)]);
    let restrict = |q: i64| {
        induced(
            &seq.restriction.map(q + 1),
            &k_classes[at(q)],
            &l_classes[at(q)],
        )
    };
    let mut out = Vec::new();
    for q in -1..=max_degree {
        let checks = [
            (LesTerm::Relative, is_exact_at(&include(q)?, &project(q)?)?),
            (LesTerm::Target, is_exact_at(&project(q)?, &restrict(q)?)?),
            (
                LesTerm::Source,
                is_exact_at(&restrict(q)?, &include(q + 1)?)?,
            ),
        ];
        out.extend(checks.into_iter().map(|(term, exact)| LesCheck {
            term,
            degree: q,
            exact,
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abmod::{CyclicSum, Ring};
    use crate::fincat::{cyclic_group, idem, interval, point};
    use num_bigint::BigInt;

    fn z1() -> CyclicSum {
        CyclicSum::free(Ring::Integers, 1)
    }

    #[test]
    fn point_complex() {
        let f = CoefFunctor::constant(&point(), &z1());
        let k = functor_cochain_complex(&point(), &f, 3).unwrap();
        assert_eq!(k.term(0).len(), 1);
        for n in 1..=3 {
            assert_eq!(k.term(n).len(), 0);
        }
    }

    #[test]
    fn cyclic_group_terms_have_rank_one() {
        let c = cyclic_group(2);
        let k = functor_cochain_complex(&c, &CoefFunctor::constant(&c, &z1()), 5).unwrap();
        for n in 0..=5 {
            assert_eq!(k.term(n).len(), 1);
        }
    }

    #[test]
    fn cyclic_group_limits() {
        let c = cyclic_group(2);
        let f = CoefFunctor::constant(&c, &z1());
        let z = Ring::Integers;
        assert_eq!(derived_limit(&c, &f, 0, 4).unwrap(), FgAbGroup::free(z, 1));
        assert!(derived_limit(&c, &f, 1, 4).unwrap().is_zero());
        assert_eq!(
            derived_limit(&c, &f, 2, 4).unwrap(),
            FgAbGroup::new(z, 0, vec![BigInt::from(2)]).unwrap()
        );
        assert!(matches!(
            derived_limit(&c, &f, 4, 4),
            Err(CohError::DegreeCapTooLow { .. })
        ));
    }

    #[test]
    fn initial_object_computes_limit() {
        let c = interval(2);
        let f = CoefFunctor::constant(
            &c,
            &CyclicSum::new(Ring::Integers, vec![BigInt::from(4)]).unwrap(),
        );
        assert_eq!(
            derived_limit(&c, &f, 0, 4).unwrap(),
            FgAbGroup::cyclic(Ring::Integers, 4)
        );
        for n in 1..=3 {
            assert!(derived_limit(&c, &f, n, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn quillen_of_point() {
        let tw = twisted_arrow(&point());
        let f = CoefFunctor::constant(&tw.category, &z1());
        assert_eq!(
            quillen_cohomology(&point(), &f, -1, 4).unwrap(),
            FgAbGroup::free(Ring::Integers, 1)
        );
        for n in [-3, -2, 0, 1, 2] {
            assert!(quillen_cohomology(&point(), &f, n, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn bw_of_point_and_idem_constant() {
        let tw = twisted_arrow(&point());
        let d = CoefFunctor::constant(&tw.category, &z1());
        assert_eq!(
            baues_wirsching(&point(), &d, 0, 4).unwrap(),
            FgAbGroup::free(Ring::Integers, 1)
        );
        assert!(baues_wirsching(&point(), &d, 1, 4).unwrap().is_zero());
        let c = idem();
        let tw = twisted_arrow(&c);
        let d = CoefFunctor::constant(&tw.category, &z1());
        for n in 0..4 {
            assert_eq!(
                baues_wirsching(&c, &d, n, 5).unwrap(),
                derived_limit(&tw.category, &d, n, 5).unwrap()
            );
        }
    }

    #[test]
    fn relative_of_identity_vanishes() {
        let c = idem();
        let tw = twisted_arrow(&c);
        let f = CoefFunctor::constant(&tw.category, &z1());
        let id = FinFunctor::identity(&c);
        for n in -1..=2 {
            assert!(relative_quillen(&id, &f, n, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn les_is_exact_for_interval_inclusion() {
        use crate::catcoh::{random_coef_functor, Bounds};
        let f = FinFunctor::new(interval(1), interval(2), vec![0, 2], vec![0, 2, 5]);
        let f = f.unwrap();
        let tw = twisted_arrow(&interval(2));
        for seed in 0..3 {
            let coef = random_coef_functor(&tw.category, Ring::Integers, seed, &Bounds::default())
                .unwrap();
            let seq = relative_sequence(&f, &coef, 6).unwrap();
            let checks = les_exactness(&seq, 3).unwrap();
            assert_eq!(checks.len(), 15);
            assert!(checks.iter().all(|c| c.exact));
        }
    }
}
