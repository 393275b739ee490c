use super::{FinCat, FinCatError, Morphism, RawCategory};

/// The category with one object and one morphism.
pub fn point() -> FinCat {
    FinCat::validate(RawCategory {
        objects: vec!["*".into()],
        morphisms: vec![Morphism {
            name: "id".into(),
            dom: 0,
            cod: 0,
        }],
        identities: vec![Some(0)],
        composition: vec![],
    })
    .expect("valid")
}

/// The poset `[n] = {0 < 1 < ... < n}`; the morphism `i -> j` is named `i<j` (`id_i` when equal).
pub fn interval(n: usize) -> FinCat {
    let mut morphisms = Vec::new();
    let mut idx = vec![vec![usize::MAX; n + 1]; n + 1];
    for i in 0..=n {
        for j in i..=n {
            idx[i][j] = morphisms.len();
            let name = if i == j {
                format!("id_{i}")
            } else {
                format!("{i}<{j}")
            };
            morphisms.push(Morphism {
                name,
                dom: i,
                cod: j,
            });
        }
    }
    let mut composition = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                composition.push((idx[j][k], idx[i][j], idx[i][k]));
            }
        }
    }
    FinCat::validate(RawCategory {
        objects: (0..=n).map(|i| i.to_string()).collect(),
        morphisms,
        identities: (0..=n).map(|i| Some(idx[i][i])).collect(),
        composition,
    })
    .expect("valid")
}

/// One object `x` with a non-identity idempotent `f`.
pub fn idem() -> FinCat {
    classifying_category(&[vec![0, 1], vec![1, 1]], Some(&["id", "f"])).expect("valid")
}

/// `a -> c <- b`.
pub fn cospan() -> FinCat {
    FinCat::validate(RawCategory {
        objects: vec!["a".into(), "b".into(), "c".into()],
        morphisms: vec![
            Morphism {
                name: "id_a".into(),
                dom: 0,
                cod: 0,
            },
            Morphism {
                name: "id_b".into(),
                dom: 1,
                cod: 1,
            },
            Morphism {
                name: "id_c".into(),
                dom: 2,
                cod: 2,
            },
            Morphism {
                name: "p".into(),
                dom: 0,
                cod: 2,
            },
            Morphism {
                name: "q".into(),
                dom: 1,
                cod: 2,
            },
        ],
        identities: vec![Some(0), Some(1), Some(2)],
        composition: vec![],
    })
    .expect("valid")
}

/// The free-living isomorphism `u: 0 -> 1`, `v: 1 -> 0`.
pub fn free_iso() -> FinCat {
    FinCat::validate(RawCategory {
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![
            Morphism {
                name: "id_0".into(),
                dom: 0,
                cod: 0,
            },
            Morphism {
                name: "id_1".into(),
                dom: 1,
                cod: 1,
            },
            Morphism {
                name: "u".into(),
                dom: 0,
                cod: 1,
            },
            Morphism {
                name: "v".into(),
                dom: 1,
                cod: 0,
            },
        ],
        identities: vec![Some(0), Some(1)],
        composition: vec![(2, 3, 1), (3, 2, 0)],
    })
    .expect("valid")
}

/// The cyclic group of order `n` as a one-object category; morphism `k` is `g^k`.
pub fn cyclic_group(n: usize) -> FinCat {
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let names: Vec<String> = (0..n)
        .map(|k| {
            if k == 0 {
                "e".to_string()
            } else {
                format!("g{k}")
            }
        })
        .collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    classifying_category(&table, Some(&names)).expect("valid")
}

/// One object whose endomorphisms are the monoid elements; `table[a][b] = a · b`, read as `a ∘ b`.
pub fn classifying_category(
    table: &[Vec<usize>],
    names: Option<&[&str]>,
) -> Result<FinCat, FinCatError> {
    let n = table.len();
    if table
        .iter()
        .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
    {
        return Err(FinCatError::Malformed(
            "multiplication table must be square with entries in range".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(FinCatError::NotAssociative { a, b, c });
                }
            }
        }
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or(FinCatError::NoUnit)?;
    let name = |k: usize| names.map_or_else(|| format!("m{k}"), |v| v[k].to_string());
    let composition = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b, table[a][b])))
        .collect();
    FinCat::validate(RawCategory {
        objects: vec!["*".into()],
        morphisms: (0..n)
            .map(|k| Morphism {
                name: name(k),
                dom: 0,
                cod: 0,
            })
            .collect(),
        identities: vec![Some(unit)],
        composition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_monoid_is_point() {
        assert!(classifying_category(&[vec![0]], None)
            .unwrap()
            .same_structure(&point()));
    }

    #[test]
    fn monoid_errors() {
        assert_eq!(
            classifying_category(&[vec![0, 0], vec![0, 0]], None),
            Err(FinCatError::NoUnit)
        );
        let bad = [vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 0]];
        assert!(matches!(
            classifying_category(&bad, None),
            Err(FinCatError::NotAssociative { .. })
        ));
    }

    #[test]
    fn standard_shapes() {
        assert_eq!(interval(2).num_morphisms(), 6);
        assert_eq!(cyclic_group(2).num_morphisms(), 2);
        assert!(cyclic_group(3).is_groupoid());
        let e = free_iso();
        assert_eq!((e.num_objects(), e.num_morphisms()), (2, 4));
        assert!(e.is_groupoid());
        assert!(!idem().is_groupoid());
    }

    #[test]
    fn nerve_examples() {
        assert_eq!(interval(1).nerve_chains(1).len(), 1);
        for n in 1..6 {
            let chains = idem().nerve_chains(n);
            assert_eq!(chains.len(), 1);
            assert_eq!(chains[0].arrows, vec![1; n]);
            assert!(point().nerve_chains(n).is_empty());
        }
    }

    #[test]
    fn opposite_is_involutive() {
        for c in [point(), idem(), interval(2), free_iso(), cospan()] {
            assert_eq!(c.opposite().opposite(), c);
        }
        let op = interval(1).opposite();
        let f = op.non_identity_morphisms().next().unwrap();
        assert_eq!((op.dom(f), op.cod(f)), (1, 0));
    }
}
