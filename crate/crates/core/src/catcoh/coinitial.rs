use std::collections::HashMap;

use serde::Serialize;

use super::CohError;
use crate::abmod::{CochainComplex, CyclicSum, FgAbGroup, Matrix, Ring, Scalar};
use crate::fincat::{comma_over, Chain, FinCat, FinFunctor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    CertifiedNotCoinitial,
    HomologicallyCoinitialUpTo(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommaReport {
    pub object: String,
    pub objects: usize,
    pub morphisms: usize,
    pub connected: bool,
    /// Reduced homology of the nerve in degrees `1..=n_max`.
    pub reduced_homology: Vec<FgAbGroup>,
    pub has_terminal_object: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinitialityReport {
    pub comma_categories: Vec<CommaReport>,
    pub verdict: Verdict,
}

/// Reduced homology of the nerve of `c` in degrees `0..=top`.
pub fn reduced_homology(c: &FinCat, top: usize) -> Result<Vec<FgAbGroup>, CohError> {
    let ring = Ring::Integers;
    let one = Scalar::from_integer(1.into());
    let chains: Vec<Vec<Chain>> = (0..=top + 1).map(|n| c.nerve_chains(n)).collect();
    let index: Vec<HashMap<&Chain, usize>> = chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, ch)| (ch, i)).collect())
        .collect();
    // degree -k holds k-chains; the augmentation sits in degree 1
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for k in (1..=top + 1).rev() {
        terms.push(CyclicSum::free(ring, chains[k].len()));
        let mut d = Matrix::zeros(chains[k - 1].len(), chains[k].len());
        for (j, sigma) in chains[k].iter().enumerate() {
            let a = &sigma.arrows;
            let mut faces: Vec<(usize, Chain)> = Vec::new();
            faces.push((
                0,
                Chain {
                    start: c.cod(a[0]),
                    arrows: a[1..].to_vec(),
                },
            ));
            for i in 1..k {
                let h = c.compose(a[i], a[i - 1]).expect("composable");
                if c.is_identity(h) {
                    continue;
                }
                let mut inner = a[..i - 1].to_vec();
                inner.push(h);
                inner.extend_from_slice(&a[i + 1..]);
                faces.push((
                    i,
                    Chain {
                        start: sigma.start,
                        arrows: inner,
                    },
                ));
            }
            faces.push((
                k,
                Chain {
                    start: sigma.start,
                    arrows: a[..k - 1].to_vec(),
                },
            ));
            for (i, tau) in faces {
                let s = if i % 2 == 0 {
                    one.clone()
                } else {
                    -one.clone()
                };
                d.add_at(ring, index[k - 1][&tau], j, &s);
            }
        }
        diffs.push(d);
    }
    terms.push(CyclicSum::free(ring, chains[0].len()));
    let mut aug = Matrix::zeros(1, chains[0].len());
    for j in 0..chains[0].len() {
        aug.set(0, j, one.clone());
    }
    diffs.push(aug);
    terms.push(CyclicSum::free(ring, 1));
    let complex = CochainComplex::new_unchecked(ring, -(top as i64 + 1), terms, diffs)?;
    (0..=top)
        .map(|n| Ok(complex.cohomology(-(n as i64))?))
        .collect()
}

fn connected(c: &FinCat) -> bool {
    let n = c.num_objects();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for f in c.morphisms() {
        let (a, b) = (find(&mut parent, f.dom), find(&mut parent, f.cod));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == root)
}

fn has_terminal(c: &FinCat) -> bool {
    (0..c.num_objects()).any(|t| (0..c.num_objects()).all(|x| c.hom(x, t).len() == 1))
}

/// Examines every comma category `γ ↓ d`. A positive verdict is homological evidence only.
pub fn check_coinitial(gamma: &FinFunctor, n_max: usize) -> Result<CoinitialityReport, CohError> {
    let mut reports = Vec::new();
    let mut certified_not = false;
    for d in 0..gamma.target().num_objects() {
        let comma = comma_over(gamma, d);
        let conn = connected(&comma);
        let reduced = if comma.num_objects() == 0 {
            vec![FgAbGroup::zero(Ring::Integers); n_max]
        } else {
            reduced_homology(&comma, n_max)?[1..].to_vec()
        };
        if !conn || reduced.iter().any(|h| !h.is_zero()) {
            certified_not = true;
        }
        reports.push(CommaReport {
            object: gamma.target().object_name(d).to_string(),
            objects: comma.num_objects(),
            morphisms: comma.num_morphisms(),
            connected: conn,
            reduced_homology: reduced,
            has_terminal_object: has_terminal(&comma),
        });
    }
    let verdict = if certified_not {
        Verdict::CertifiedNotCoinitial
    } else {
        Verdict::HomologicallyCoinitialUpTo(n_max)
    };
    Ok(CoinitialityReport {
        comma_categories: reports,
        verdict,
    })
}
