//! Self-contained worked examples, each a list of named checks.

use serde::Serialize;

use crate::abmod::{CyclicSum, FgAbGroup, Ring};
use crate::catcoh::{
    check_coinitial, derived_limit, group_cohomology, idem_decode, idem_encode, quillen_cohomology,
    random_coef_functor, random_idem_tuple, reduced_classifying_cohomology, reduced_sequence,
    relative_quillen, Bounds, CohError, FiniteGroup, GroupModule, Verdict,
};
use crate::fincat::{
    cospan, find_isomorphism, free_iso, idem, interval, twisted_arrow, FinFunctor,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub checks: Vec<Check>,
}

impl ExampleReport {
    fn new(example: &str) -> Self {
        ExampleReport {
            example: example.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const EXAMPLE_NAMES: [&str; 3] = ["idem", "detect-equivalence", "group-c2"];

pub fn run_example(name: &str, seed: u64) -> Option<Result<ExampleReport, CohError>> {
    match name {
        "idem" => Some(idem_example(seed, 20)),
        "detect-equivalence" => Some(detect_equivalence_example(seed, 20)),
        "group-c2" => Some(group_c2_example()),
        _ => None,
    }
}

/// Structure of `Tw(Idem)` and the limits of functors on it, for `count` random tuples.
pub fn idem_example(seed: u64, count: u64) -> Result<ExampleReport, CohError> {
    let mut report = ExampleReport::new("idem");
    let tw = twisted_arrow(&idem()).category;
    // object 0 is the identity, object 1 is f
    let sizes = [
        tw.hom(1, 1).len(),
        tw.hom(0, 0).len(),
        tw.hom(0, 1).len(),
        tw.hom(1, 0).len(),
    ];
    report.check(
        "Tw(Idem) objects",
        tw.num_objects() == 2,
        format!("{} objects, {} morphisms", tw.num_objects(), tw.num_morphisms()),
    );
    report.check(
        "hom-set sizes (End f, End 1, Hom(1,f), Hom(f,1))",
        sizes == [4, 1, 3, 0],
        format!("{sizes:?}"),
    );
    let z = Ring::Integers;
    let mut failures: [Vec<u64>; 5] = Default::default();
    for s in seed..seed + count {
        let t = random_idem_tuple(z, s, &Bounds::default());
        let f = idem_encode(&t);
        if !t.is_isomorphic_to(&idem_decode(&f)?)? {
            failures[0].push(s);
        }
        let pair = t.pair_map();
        let lim = |n| derived_limit(&tw, &f, n, 4);
        if lim(0)? != pair.kernel()?.group {
            failures[1].push(s);
        }
        if lim(1)? != pair.cokernel()?.group {
            failures[2].push(s);
        }
        if !(lim(2)?.is_zero() && lim(3)?.is_zero()) {
            failures[3].push(s);
        }
        let quillen = |n| quillen_cohomology(&idem(), &f, n, 4);
        if !(quillen(1)?.is_zero() && quillen(2)?.is_zero()) {
            failures[4].push(s);
        }
    }
    let names = [
        "tuple roundtrip",
        "lim^0 = ker(g01, g10)",
        "lim^1 = coker(g01, g10)",
        "lim^2 = lim^3 = 0",
        "H^n_Q = 0 for n = 1, 2",
    ];
    for (name, failed) in names.iter().zip(failures) {
        let detail = if failed.is_empty() {
            format!("{count} seeds from {seed}")
        } else {
            format!("failing seeds {failed:?}")
        };
        report.check(*name, failed.is_empty(), detail);
    }
    Ok(report)
}

/// The inclusion `[1] -> I` of an arrow into the free-living isomorphism.
pub fn arrow_into_iso() -> FinFunctor {
    FinFunctor::new(interval(1), free_iso(), vec![0, 1], vec![0, 2, 1]).expect("functor")
}

/// `[1] -> I` is detected as an equivalence for Quillen cohomology.
pub fn detect_equivalence_example(seed: u64, count: u64) -> Result<ExampleReport, CohError> {
    let mut report = ExampleReport::new("detect-equivalence");
    let f = arrow_into_iso();
    let (tw_c, tw_d, gamma) = f.twisted();
    report.check(
        "Tw([1]) is a cospan",
        find_isomorphism(&tw_c.category, &cospan()).is_some(),
        "",
    );
    let skeleton = tw_d.category.skeleton();
    report.check(
        "Tw(I) is equivalent to a point",
        skeleton.source().num_objects() == 1 && skeleton.source().num_morphisms() == 1,
        format!("{} objects", tw_d.category.num_objects()),
    );
    let coinitial = check_coinitial(&gamma, 4)?;
    report.check(
        "Tw([1]) -> Tw(I) coinitial",
        coinitial.verdict == Verdict::HomologicallyCoinitialUpTo(4),
        format!("{:?}", coinitial.verdict),
    );
    let mut failed = Vec::new();
    for s in seed..seed + count {
        let coef = random_coef_functor(&tw_d.category, Ring::Integers, s, &Bounds::default())?;
        for n in -1..=2 {
            if !relative_quillen(&f, &coef, n, 4)?.is_zero() {
                failed.push((s, n));
            }
        }
    }
    let detail = if failed.is_empty() {
        format!("{count} seeds from {seed}, n = -1..2")
    } else {
        format!("nonzero at (seed, n) {failed:?}")
    };
    report.check("relative cohomology vanishes", failed.is_empty(), detail);
    Ok(report)
}

/// Group cohomology of `C2` with trivial `Z` coefficients, computed by the bar complex and
/// as derived limits over `BC2`.
pub fn group_c2_example() -> Result<ExampleReport, CohError> {
    let mut report = ExampleReport::new("group-c2");
    let z = Ring::Integers;
    let g = FiniteGroup::cyclic(2);
    let module = GroupModule::trivial(&g, CyclicSum::free(z, 1));
    let bg = g.classifying_category();
    let constant = module.to_functor(&g)?;
    let expected = [
        FgAbGroup::free(z, 1),
        FgAbGroup::zero(z),
        FgAbGroup::cyclic(z, 2),
        FgAbGroup::zero(z),
        FgAbGroup::cyclic(z, 2),
    ];
    let mut groups = Vec::new();
    for (n, want) in expected.iter().enumerate() {
        let bar = group_cohomology(&g, &module, n)?;
        let lim = derived_limit(&bg, &constant, n as i64, 5)?;
        report.check(
            format!("H^{n}"),
            &bar == want && lim == bar,
            format!("bar {bar}, lim {lim}, expected {want}"),
        );
        groups.push(bar);
    }
    let reduced0 = reduced_classifying_cohomology(&g, &module, 0)?;
    report.check("reduced H^0 = 0", reduced0.is_zero(), format!("{reduced0}"));
    for n in 2..=4 {
        let r = reduced_classifying_cohomology(&g, &module, n)?;
        report.check(
            format!("reduced H^{n} = H^{n}"),
            r == groups[n],
            format!("{r}"),
        );
    }
    let sign = GroupModule::sign(&g, z, |x| x != g.unit());
    for (label, m) in [("trivial Z", &module), ("sign Z", &sign)] {
        let seq = reduced_sequence(&g, m)?;
        report.check(
            format!("0 -> M/M^G -> reduced H^1 -> H^1 -> 0 exact ({label})"),
            seq.is_exact(),
            format!(
                "{} -> {}",
                seq.coboundary.target().normal_form().group,
                seq.forget.target().normal_form().group
            ),
        );
    }
    Ok(report)
}
