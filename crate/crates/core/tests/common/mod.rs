#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quillen_core::fincat::{
    classifying_category, cospan, cyclic_group, free_iso, idem, interval, point, FinCat, Morphism,
    RawCategory,
};

/// The bundled categories, by name.
pub fn bundled() -> Vec<(&'static str, FinCat)> {
    vec![
        ("pt", point()),
        ("[1]", interval(1)),
        ("[2]", interval(2)),
        ("Idem", idem()),
        ("BC2", cyclic_group(2)),
        ("BC3", cyclic_group(3)),
        ("I", free_iso()),
        ("cospan", cospan()),
    ]
}

/// A random poset on at most `max_objects` elements, as a category.
pub fn random_poset(seed: u64, max_objects: usize) -> FinCat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_objects);
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut raw = RawCategory {
        objects: (0..n).map(|i| format!("p{i}")).collect(),
        identities: vec![None; n],
        ..RawCategory::default()
    };
    let mut index = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                index[i][j] = Some(raw.morphisms.len());
                if i == j {
                    raw.identities[i] = Some(raw.morphisms.len());
                }
                raw.morphisms.push(Morphism { name: format!("p{i}<=p{j}"), dom: i, cod: j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (index[i][j], index[j][k], index[i][k]) {
                    raw.composition.push((g, f, h));
                }
            }
        }
    }
    FinCat::validate(raw).expect("posets are categories")
}

/// The monoid of self-maps of `{0, 1, 2}` generated by one or two random maps, if it has at
/// most `max_size` elements.
pub fn random_monoid(seed: u64, max_size: usize) -> Option<FinCat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=2);
    let gens: Vec<[usize; 3]> = (0..k)
        .map(|_| std::array::from_fn(|_| rng.gen_range(0..3)))
        .collect();
    let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] { std::array::from_fn(|x| a[b[x]]) };
    let mut elements: BTreeSet<[usize; 3]> = BTreeSet::from([[0, 1, 2]]);
    let mut frontier: Vec<[usize; 3]> = vec![[0, 1, 2]];
    while let Some(e) = frontier.pop() {
        for g in &gens {
            let next = compose(g, &e);
            if elements.insert(next) {
                frontier.push(next);
            }
        }
        if elements.len() > max_size {
            return None;
        }
    }
    let elements: Vec<[usize; 3]> = elements.into_iter().collect();
    let position = |m: &[usize; 3]| elements.iter().position(|e| e == m).expect("closed");
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| position(&compose(a, b))).collect())
        .collect();
    Some(classifying_category(&table, None).expect("monoid"))
}

/// Bundled categories plus random posets and monoids with at most 6 morphisms.
pub fn small_categories(count: u64) -> Vec<FinCat> {
    let mut out: Vec<FinCat> = bundled().into_iter().map(|(_, c)| c).collect();
    for seed in 0..count {
        let p = random_poset(seed, 3);
        if p.num_morphisms() <= 6 {
            out.push(p);
        }
        if let Some(m) = random_monoid(seed, 6) {
            out.push(m);
        }
    }
    out
}
