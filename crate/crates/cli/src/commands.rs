use serde::Serialize;
use serde_json::json;

use quillen_core::abmod::io::parse_ring;
use quillen_core::abmod::{CyclicSum, FgAbGroup, Ring};
use quillen_core::catcoh::io::{CoefFunctorFile, GroupFile, GroupModuleFile};
use quillen_core::catcoh::{
    baues_wirsching, check_coinitial, derived_limit, group_cohomology, les_exactness,
    reduced_classifying_cohomology, reduced_homology, reduced_sequence, relative_sequence,
    CoefFunctor, CohError, FiniteGroup, GroupModule,
};
use quillen_core::examples::{run_example, EXAMPLE_NAMES};
use quillen_core::fincat::io::{CategoryFile, FunctorFile};
use quillen_core::fincat::{product, twisted_arrow, FinCat};
use quillen_core::hochschild::{
    compare_derivations, hochschild_cohomology, inner_derivations, leibniz_presentation,
    noncomm_differentials, quillen_cohomology_algebra, AlgebraFile, AssocAlgebra, Bimodule,
    BimoduleFile, HochError,
};

use crate::report::{Failure, Inputs, Outcome};
use crate::{CatCommand, CohCommand, Global, HhCommand};

fn coh_failure(e: CohError) -> Failure {
    match e {
        CohError::BaseMismatch | CohError::DegreeCapTooLow { .. } | CohError::DimensionOverflow { .. } => {
            Failure::precondition(e)
        }
        e => Failure::validation(e),
    }
}

fn hoch_failure(e: HochError) -> Failure {
    match e {
        HochError::DegreeCapTooLow { .. } | HochError::DimensionOverflow { .. } => Failure::precondition(e),
        e => Failure::validation(e),
    }
}

#[derive(Serialize)]
struct DegreeRow {
    degree: i64,
    group: FgAbGroup,
    display: String,
}

impl DegreeRow {
    fn new(degree: i64, group: FgAbGroup) -> DegreeRow {
        DegreeRow { degree, display: group.to_string(), group }
    }
}

fn degree_table(rows: &[DegreeRow]) -> Vec<Vec<String>> {
    rows.iter().map(|r| vec![r.degree.to_string(), r.display.clone()]).collect()
}

/// `--degree` if given, otherwise `lo..=hi`.
fn degrees(g: &Global, lo: i64, hi: i64) -> Vec<i64> {
    match g.degree {
        Some(n) => vec![n],
        None => (lo..=hi).collect(),
    }
}

/// The cap check shared by computations without one of their own.
fn require_cap(n: i64, guard: i64, cap: i64) -> Result<(), Failure> {
    if n + guard > cap {
        return Err(coh_failure(CohError::DegreeCapTooLow { degree: n, needed: n + guard, cap }));
    }
    Ok(())
}

fn ring(g: &Global) -> Result<Ring, Failure> {
    parse_ring(&g.ring).map_err(Failure::validation)
}

fn load_category(inputs: &mut Inputs, path: &str) -> Result<FinCat, Failure> {
    inputs.json::<CategoryFile>(path)?.to_category().map_err(Failure::validation)
}

fn load_coef(inputs: &mut Inputs, path: &str) -> Result<CoefFunctor, Failure> {
    inputs.json::<CoefFunctorFile>(path)?.to_functor().map_err(coh_failure)
}

fn coef_or_constant(
    inputs: &mut Inputs,
    path: Option<&String>,
    base: &FinCat,
    g: &Global,
) -> Result<CoefFunctor, Failure> {
    match path {
        Some(p) => load_coef(inputs, p),
        None => Ok(CoefFunctor::constant(base, &CyclicSum::free(ring(g)?, 1))),
    }
}

fn load_algebra(inputs: &mut Inputs, path: &str) -> Result<AssocAlgebra, Failure> {
    inputs.json::<AlgebraFile>(path)?.to_algebra().map_err(hoch_failure)
}

fn load_bimodule(inputs: &mut Inputs, path: Option<&String>, a: &AssocAlgebra) -> Result<Bimodule, Failure> {
    match path {
        Some(p) => inputs.json::<BimoduleFile>(p)?.to_bimodule(a).map_err(hoch_failure),
        None => Ok(Bimodule::regular(a)),
    }
}

fn load_group(inputs: &mut Inputs, path: &str, module: Option<&String>, g: &Global) -> Result<(FiniteGroup, GroupModule), Failure> {
    let group = inputs.json::<GroupFile>(path)?.to_group().map_err(coh_failure)?;
    let module = match module {
        Some(p) => inputs.json::<GroupModuleFile>(p)?.to_module(&group).map_err(coh_failure)?,
        None => GroupModule::trivial(&group, CyclicSum::free(ring(g)?, 1)),
    };
    Ok((group, module))
}

#[derive(Serialize)]
struct CategorySummary {
    objects: usize,
    morphisms: usize,
    groupoid: bool,
    skeletal: bool,
    isomorphism_classes: usize,
}

fn summary(c: &FinCat) -> CategorySummary {
    CategorySummary {
        objects: c.num_objects(),
        morphisms: c.num_morphisms(),
        groupoid: c.is_groupoid(),
        skeletal: c.is_skeletal(),
        isomorphism_classes: c.isomorphism_classes().len(),
    }
}

fn summary_rows(s: &CategorySummary) -> Vec<Vec<String>> {
    vec![
        vec!["objects".into(), s.objects.to_string()],
        vec!["morphisms".into(), s.morphisms.to_string()],
        vec!["groupoid".into(), s.groupoid.to_string()],
        vec!["skeletal".into(), s.skeletal.to_string()],
        vec!["isomorphism classes".into(), s.isomorphism_classes.to_string()],
    ]
}

pub fn cat(cmd: &CatCommand, g: &Global, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        CatCommand::Validate { category } => {
            let c = load_category(inputs, category)?;
            let s = summary(&c);
            let rows = summary_rows(&s);
            Ok(Outcome::new(json!({ "valid": true, "summary": s })).table(&["property", "value"], rows))
        }
        CatCommand::Tw { category } => {
            let c = load_category(inputs, category)?;
            let tw = twisted_arrow(&c);
            let s = summary(&tw.category);
            let rows = summary_rows(&s);
            Ok(Outcome::new(json!({
                "category": CategoryFile::from_category(&tw.category),
                "projection": FunctorFile::from_functor(&tw.projection),
                "projection_target": CategoryFile::from_category(tw.projection.target()),
                "summary": s,
            }))
            .table(&["property", "value"], rows))
        }
        CatCommand::Nerve { category } => {
            let c = load_category(inputs, category)?;
            let top = g.max_degree.max(0) as usize;
            let homology = reduced_homology(&c, top).map_err(coh_failure)?;
            let rows: Vec<_> = homology
                .into_iter()
                .enumerate()
                .map(|(n, h)| {
                    json!({
                        "degree": n,
                        "nondegenerate_chains": c.nerve_chains(n).len(),
                        "reduced_homology": h,
                        "display": h.to_string(),
                    })
                })
                .collect();
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r["degree"].to_string(),
                        r["nondegenerate_chains"].to_string(),
                        r["display"].as_str().unwrap_or_default().to_string(),
                    ]
                })
                .collect();
            Ok(Outcome::new(json!({ "degrees": rows }))
                .table(&["n", "nondegenerate n-chains", "reduced H_n"], table))
        }
        CatCommand::Op { category } => {
            let c = load_category(inputs, category)?.opposite();
            let rows = summary_rows(&summary(&c));
            Ok(Outcome::new(json!({ "category": CategoryFile::from_category(&c) })).table(&["property", "value"], rows))
        }
        CatCommand::Product { left, right } => {
            let c = load_category(inputs, left)?;
            let d = load_category(inputs, right)?;
            let p = product(&c, &d);
            let rows = summary_rows(&summary(&p));
            Ok(Outcome::new(json!({ "category": CategoryFile::from_category(&p) })).table(&["property", "value"], rows))
        }
    }
}

fn groups_outcome(rows: Vec<DegreeRow>, label: &str, extra: serde_json::Value) -> Outcome {
    let table = degree_table(&rows);
    let mut results = json!({ "degrees": rows });
    if let (Some(obj), serde_json::Value::Object(more)) = (results.as_object_mut(), extra) {
        obj.extend(more);
    }
    Outcome::new(results).table(&["n", label], table)
}

pub fn coh(cmd: &CohCommand, g: &Global, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let cap = g.max_degree;
    match cmd {
        CohCommand::Lim { category, coefficients } => {
            let c = load_category(inputs, category)?;
            let f = coef_or_constant(inputs, coefficients.as_ref(), &c, g)?;
            let rows = degrees(g, 0, cap - 1)
                .into_iter()
                .map(|n| Ok(DegreeRow::new(n, derived_limit(&c, &f, n, cap).map_err(coh_failure)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(groups_outcome(rows, "lim^n", json!({})))
        }
        CohCommand::Bw { category, coefficients } => {
            let c = load_category(inputs, category)?;
            let tw = twisted_arrow(&c).category;
            let d = coef_or_constant(inputs, coefficients.as_ref(), &tw, g)?;
            let mut agree = true;
            let mut rows = Vec::new();
            for n in degrees(g, 0, cap - 1) {
                let bw = baues_wirsching(&c, &d, n, cap).map_err(coh_failure)?;
                agree &= derived_limit(&tw, &d, n, cap).map_err(coh_failure)? == bw;
                rows.push(DegreeRow::new(n, bw));
            }
            Ok(groups_outcome(rows, "H^n_BW", json!({ "agrees_with_lim_over_tw": agree }))
                .note(format!("agrees with lim^n over Tw(C): {agree}")))
        }
        CohCommand::Quillen { category, coefficients } => {
            let c = load_category(inputs, category)?;
            let tw = twisted_arrow(&c).category;
            let f = coef_or_constant(inputs, coefficients.as_ref(), &tw, g)?;
            let rows = degrees(g, -1, cap - 2)
                .into_iter()
                .map(|n| {
                    let h = quillen_core::catcoh::quillen_cohomology(&c, &f, n, cap).map_err(coh_failure)?;
                    Ok(DegreeRow::new(n, h))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let shift = "H^n_Q(C; F) = lim^{n+1} over Tw(C); rows are indexed by n";
            Ok(groups_outcome(rows, "H^n_Q", json!({ "shift": shift })).note(shift))
        }
        CohCommand::Relative { source, target, functor, coefficients } => {
            let c = load_category(inputs, source)?;
            let d = load_category(inputs, target)?;
            let f = inputs.json::<FunctorFile>(functor)?.to_functor(&c, &d).map_err(Failure::validation)?;
            let tw_d = twisted_arrow(&d).category;
            let coef = coef_or_constant(inputs, coefficients.as_ref(), &tw_d, g)?;
            let qs = degrees(g, -1, cap - 2);
            let hi = *qs.iter().max().unwrap_or(&-1);
            require_cap(hi, 2, cap)?;
            if hi < -1 {
                let rows = qs.iter().map(|&q| DegreeRow::new(q, FgAbGroup::zero(coef.ring()))).collect();
                return Ok(groups_outcome(rows, "H^n_Q(D, C)", json!({})));
            }
            let seq = relative_sequence(&f, &coef, (hi + 3) as usize).map_err(coh_failure)?;
            let les = les_exactness(&seq, hi).map_err(coh_failure)?;
            let exact = les.iter().all(|c| c.exact);
            let mut rows = Vec::new();
            let mut table = Vec::new();
            for &q in &qs {
                let coh = |k: &quillen_core::abmod::CochainComplex, n: i64| {
                    if n < 0 { Ok(FgAbGroup::zero(coef.ring())) } else { k.cohomology(n).map_err(Failure::validation) }
                };
                let relative = coh(&seq.cone, q)?;
                let tgt = coh(seq.absolute_target(), q + 1)?;
                let src = coh(seq.absolute_source(), q + 1)?;
                table.push(vec![q.to_string(), relative.to_string(), tgt.to_string(), src.to_string()]);
                rows.push(json!({
                    "degree": q,
                    "relative": DegreeRow::new(q, relative),
                    "target": DegreeRow::new(q, tgt),
                    "source": DegreeRow::new(q, src),
                }));
            }
            Ok(Outcome::new(json!({
                "degrees": rows,
                "long_exact_sequence": les,
                "exact": exact,
            }))
            .table(&["n", "H^n_Q(D, C)", "H^n_Q(D)", "H^n_Q(C)"], table)
            .note(format!("long exact sequence exact through degree {hi}: {exact}")))
        }
        CohCommand::Coinitial { source, target, gamma } => {
            let c = load_category(inputs, source)?;
            let d = load_category(inputs, target)?;
            let gamma = inputs.json::<FunctorFile>(gamma)?.to_functor(&c, &d).map_err(Failure::validation)?;
            let top = g.degree.unwrap_or(g.max_degree).max(0) as usize;
            let report = check_coinitial(&gamma, top).map_err(coh_failure)?;
            let table = report
                .comma_categories
                .iter()
                .map(|r| {
                    let homology: Vec<String> = r.reduced_homology.iter().map(|h| h.to_string()).collect();
                    vec![
                        r.object.clone(),
                        r.objects.to_string(),
                        r.connected.to_string(),
                        homology.join(", "),
                        r.has_terminal_object.to_string(),
                    ]
                })
                .collect();
            let verdict = format!("verdict: {:?}", report.verdict);
            Ok(Outcome::new(&report)
                .table(&["object", "comma objects", "connected", "reduced H_1..", "terminal object"], table)
                .note(verdict))
        }
        CohCommand::Group { group, module } => {
            let (grp, m) = load_group(inputs, group, module.as_ref(), g)?;
            let bg = grp.classifying_category();
            let coef = m.to_functor(&grp).map_err(coh_failure)?;
            let mut agree = true;
            let mut rows = Vec::new();
            for n in degrees(g, 0, cap - 1) {
                require_cap(n, 1, cap)?;
                let h = if n < 0 {
                    FgAbGroup::zero(m.module.ring())
                } else {
                    group_cohomology(&grp, &m, n as usize).map_err(coh_failure)?
                };
                agree &= derived_limit(&bg, &coef, n, cap).map_err(coh_failure)? == h;
                rows.push(DegreeRow::new(n, h));
            }
            Ok(groups_outcome(rows, "H^n(G; M)", json!({ "agrees_with_lim_over_bg": agree }))
                .note(format!("agrees with lim^n over BG: {agree}")))
        }
        CohCommand::Reduced { group, module } => {
            let (grp, m) = load_group(inputs, group, module.as_ref(), g)?;
            let mut rows = Vec::new();
            for n in degrees(g, 0, cap - 1) {
                require_cap(n, 1, cap)?;
                let h = if n < 0 {
                    FgAbGroup::zero(m.module.ring())
                } else {
                    reduced_classifying_cohomology(&grp, &m, n as usize).map_err(coh_failure)?
                };
                rows.push(DegreeRow::new(n, h));
            }
            let seq = reduced_sequence(&grp, &m).map_err(coh_failure)?;
            let exact = seq.is_exact();
            Ok(groups_outcome(rows, "reduced H^n(BG; M)", json!({ "low_degree_sequence_exact": exact }))
                .note(format!("0 -> M/M^G -> reduced H^1 -> H^1 -> 0 exact: {exact}")))
        }
    }
}

pub fn hh(cmd: &HhCommand, g: &Global, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let cap = g.max_degree;
    match cmd {
        HhCommand::Hh { algebra, bimodule } => {
            let a = load_algebra(inputs, algebra)?;
            let m = load_bimodule(inputs, bimodule.as_ref(), &a)?;
            let rows = degrees(g, 0, cap - 1)
                .into_iter()
                .map(|n| Ok(DegreeRow::new(n, hochschild_cohomology(&a, &m, n, cap).map_err(hoch_failure)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(groups_outcome(rows, "HH^n", json!({})))
        }
        HhCommand::Der { algebra, bimodule } => {
            let a = load_algebra(inputs, algebra)?;
            let m = load_bimodule(inputs, bimodule.as_ref(), &a)?;
            let c = compare_derivations(&a, &m).map_err(hoch_failure)?;
            let rows = vec![
                vec!["Der(A, M)".into(), c.derivations.group.to_string()],
                vec!["HH^1(A, M)".into(), c.hh1.to_string()],
                vec!["Der -> HH^1 surjective".into(), c.surjective.to_string()],
                vec!["kernel = inner derivations".into(), c.kernel_is_inner.to_string()],
            ];
            Ok(Outcome::new(json!({
                "derivations": c.derivations.group,
                "display": c.derivations.group.to_string(),
                "hh1": c.hh1,
                "surjective_onto_hh1": c.surjective,
                "kernel_is_inner": c.kernel_is_inner,
            }))
            .table(&["invariant", "value"], rows))
        }
        HhCommand::Inner { algebra, bimodule } => {
            let a = load_algebra(inputs, algebra)?;
            let m = load_bimodule(inputs, bimodule.as_ref(), &a)?;
            let inner = inner_derivations(&a, &m).map_err(hoch_failure)?;
            let rows = vec![vec!["Inn(A, M)".into(), inner.group.to_string()]];
            Ok(Outcome::new(json!({ "inner_derivations": inner.group, "display": inner.group.to_string() }))
                .table(&["invariant", "value"], rows))
        }
        HhCommand::Omega { algebra } => {
            let a = load_algebra(inputs, algebra)?;
            let omega = noncomm_differentials(&a).map_err(hoch_failure)?;
            let rows = vec![
                vec!["dim A".into(), a.dim().to_string()],
                vec!["rank of ker(A ⊗ A -> A)".into(), omega.rank().to_string()],
            ];
            Ok(Outcome::new(json!({ "algebra_dim": a.dim(), "rank": omega.rank(), "bimodule": BimoduleFile::from_bimodule(&omega.bimodule) }))
                .table(&["invariant", "value"], rows))
        }
        HhCommand::Leibniz { algebra } => {
            let a = load_algebra(inputs, algebra)?;
            let p = leibniz_presentation(&a).map_err(hoch_failure)?;
            let rows = vec![
                vec!["presented module".into(), p.group.to_string()],
                vec!["relations hold in the kernel".into(), p.relations_hold.to_string()],
                vec!["comparison is an isomorphism".into(), p.is_isomorphism.to_string()],
            ];
            Ok(Outcome::new(json!({
                "generators": p.generators,
                "group": p.group,
                "display": p.group.to_string(),
                "relations_hold": p.relations_hold,
                "is_isomorphism": p.is_isomorphism,
            }))
            .table(&["invariant", "value"], rows))
        }
        HhCommand::Quillen { algebra, bimodule } => {
            let a = load_algebra(inputs, algebra)?;
            let m = load_bimodule(inputs, bimodule.as_ref(), &a)?;
            let mut rows = Vec::new();
            let mut table = Vec::new();
            for n in degrees(g, 0, cap - 2) {
                let q = quillen_cohomology_algebra(&a, &m, n, cap).map_err(hoch_failure)?;
                let h = hochschild_cohomology(&a, &m, n + 1, cap).map_err(hoch_failure)?;
                let matches = (n >= 1).then(|| q == h);
                table.push(vec![
                    n.to_string(),
                    q.to_string(),
                    h.to_string(),
                    matches.map_or("-".into(), |b| b.to_string()),
                ]);
                rows.push(json!({
                    "degree": n,
                    "quillen": DegreeRow::new(n, q),
                    "hochschild_shifted": DegreeRow::new(n + 1, h),
                    "match": matches,
                }));
            }
            Ok(Outcome::new(json!({ "degrees": rows }))
                .table(&["n", "H^n_Q(A; M)", "HH^{n+1}(A; M)", "match"], table))
        }
    }
}

pub fn examples(name: &str, g: &Global) -> Result<Outcome, Failure> {
    let report = run_example(name, g.seed)
        .ok_or_else(|| Failure::Validation {
            kind: "UnknownExample".into(),
            message: format!("unknown example {name:?}; expected one of {}", EXAMPLE_NAMES.join(", ")),
        })?
        .map_err(coh_failure)?;
    let table = report
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), if c.passed { "PASS" } else { "FAIL" }.into(), c.detail.clone()])
        .collect();
    let mut outcome = Outcome::new(json!({ "example": report.example, "passed": report.passed(), "checks": report.checks }))
        .table(&["check", "result", "detail"], table);
    outcome.passed = report.passed();
    Ok(outcome)
}
