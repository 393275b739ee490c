//! Gaussian elimination of a cochain complex.
//!
//! Whenever a differential entry is an isomorphism between two cyclic summands of the
//! same order, both summands are cancelled and the neighbouring differential is corrected
//! by the rank-one term `γ φ⁻¹ δ`. The result is homotopy equivalent to the input;
//! optionally the comparison maps `ι` (reduced → original) and `π` (original → reduced)
//! are accumulated so that cohomology classes can be transported.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};

type SparseVec = BTreeMap<usize, Scalar>;

struct Diff {
    // cols[j][i] = entry (i, j)
    cols: Vec<SparseVec>,
    rows: Vec<BTreeSet<usize>>,
}

impl Diff {
    fn from_matrix(m: &Matrix) -> Diff {
        let mut cols = vec![SparseVec::new(); m.ncols()];
        let mut rows = vec![BTreeSet::new(); m.nrows()];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in m.row(i) {
                cols[*j].insert(i, v.clone());
                row.insert(*j);
            }
        }
        Diff { cols, rows }
    }

    fn set(&mut self, i: usize, j: usize, v: Scalar) {
        if v.is_zero() {
            self.cols[j].remove(&i);
            self.rows[i].remove(&j);
        } else {
            self.cols[j].insert(i, v);
            self.rows[i].insert(j);
        }
    }

    fn remove_row(&mut self, i: usize) {
        for j in std::mem::take(&mut self.rows[i]) {
            self.cols[j].remove(&i);
        }
    }

    fn remove_col(&mut self, j: usize) {
        for i in std::mem::take(&mut self.cols[j]).into_keys() {
            self.rows[i].remove(&j);
        }
    }
}

pub(crate) struct Reduced {
    pub orders: Vec<Vec<BigInt>>,
    pub diffs: Vec<Matrix>,
    /// Per degree: original generators × surviving generators.
    pub iota: Vec<Option<Matrix>>,
    /// Per degree: surviving generators × original generators.
    pub pi: Vec<Option<Matrix>>,
}

/// `track[k]` selects the degrees (by position) whose comparison maps are kept.
pub(crate) fn reduce(
    ring: Ring,
    orders: &[Vec<BigInt>],
    diffs: &[Matrix],
    track: &[bool],
) -> Reduced {
    let nterms = orders.len();
    let mut d: Vec<Diff> = diffs.iter().map(Diff::from_matrix).collect();
    let mut alive: Vec<Vec<bool>> = orders.iter().map(|o| vec![true; o.len()]).collect();
    // iota[k][a] : original coordinates of surviving generator a
    let mut iota: Vec<Option<Vec<SparseVec>>> = (0..nterms)
        .map(|k| {
            track[k].then(|| {
                (0..orders[k].len())
                    .map(|a| SparseVec::from([(a, Scalar::from_integer(1.into()))]))
                    .collect()
            })
        })
        .collect();
    // pi[k][a] : functional on original coordinates giving coordinate a
    let mut pi: Vec<Option<Vec<SparseVec>>> = iota.clone();

    for k in 0..diffs.len() {
        loop {
            let mut pivots = 0usize;
            for b in 0..orders[k].len() {
                if !alive[k][b] || d[k].cols[b].is_empty() {
                    continue;
                }
                let ob = &orders[k][b];
                let choice = d[k].cols[b]
                    .iter()
                    .filter(|(c, v)| orders[k + 1][**c] == *ob && ring.is_unit(v, ob))
                    .min_by_key(|(c, _)| d[k].rows[**c].len())
                    .map(|(c, v)| (*c, v.clone()));
                let Some((c, phi)) = choice else { continue };
                eliminate(ring, orders, &mut d, &mut iota, &mut pi, k, b, c, &phi);
                alive[k][b] = false;
                alive[k + 1][c] = false;
                pivots += 1;
            }
            if pivots == 0 {
                break;
            }
        }
    }

    let index: Vec<Vec<usize>> = alive
        .iter()
        .map(|a| (0..a.len()).filter(|&i| a[i]).collect())
        .collect();
    let mut pos: Vec<Vec<usize>> = alive.iter().map(|a| vec![usize::MAX; a.len()]).collect();
    for k in 0..nterms {
        for (new, &old) in index[k].iter().enumerate() {
            pos[k][old] = new;
        }
    }
    let out_orders: Vec<Vec<BigInt>> = (0..nterms)
        .map(|k| index[k].iter().map(|&i| orders[k][i].clone()).collect())
        .collect();
    let out_diffs: Vec<Matrix> = (0..diffs.len())
        .map(|k| {
            let mut m = Matrix::zeros(index[k + 1].len(), index[k].len());
            for (jn, &j) in index[k].iter().enumerate() {
                for (i, v) in &d[k].cols[j] {
                    m.set(pos[k + 1][*i], jn, v.clone());
                }
            }
            m
        })
        .collect();
    let out_iota = (0..nterms)
        .map(|k| {
            iota[k].as_ref().map(|cols| {
                let mut m = Matrix::zeros(orders[k].len(), index[k].len());
                for (an, &a) in index[k].iter().enumerate() {
                    for (o, v) in &cols[a] {
                        m.set(*o, an, v.clone());
                    }
                }
                m
            })
        })
        .collect();
    let out_pi = (0..nterms)
        .map(|k| {
            pi[k].as_ref().map(|rows| {
                let mut m = Matrix::zeros(index[k].len(), orders[k].len());
                for (an, &a) in index[k].iter().enumerate() {
                    for (o, v) in &rows[a] {
                        m.set(an, *o, v.clone());
                    }
                }
                m
            })
        })
        .collect();
    Reduced {
        orders: out_orders,
        diffs: out_diffs,
        iota: out_iota,
        pi: out_pi,
    }
}

#[allow(clippy::too_many_arguments)]
fn eliminate(
    ring: Ring,
    orders: &[Vec<BigInt>],
    d: &mut [Diff],
    iota: &mut [Option<Vec<SparseVec>>],
    pi: &mut [Option<Vec<SparseVec>>],
    k: usize,
    b: usize,
    c: usize,
    phi: &Scalar,
) {
    let ob = &orders[k][b];
    let phi_inv = ring.unit_inverse(phi, ob);
    // δ: row c without b;  coefficient φ⁻¹δ_a as a map a -> b
    let delta: Vec<(usize, Scalar)> = d[k].rows[c]
        .iter()
        .filter(|&&a| a != b)
        .map(|&a| (a, ring.reduce(ring.mul(&phi_inv, &d[k].cols[a][&c]), ob)))
        .collect();
    // γ: column b without c
    let gamma: Vec<(usize, Scalar)> = d[k].cols[b]
        .iter()
        .filter(|(r, _)| **r != c)
        .map(|(r, v)| (*r, v.clone()))
        .collect();

    for (a, coef) in &delta {
        for (beta, g) in &gamma {
            let ob2 = &orders[k + 1][*beta];
            let cur = d[k].cols[*a]
                .get(beta)
                .cloned()
                .unwrap_or_else(Scalar::zero);
            let nv = ring.reduce(ring.sub(&cur, &ring.mul(g, coef)), ob2);
            d[k].set(*beta, *a, nv);
        }
    }
    d[k].remove_row(c);
    d[k].remove_col(b);
    if k > 0 {
        d[k - 1].remove_row(b);
    }
    if k + 1 < d.len() {
        d[k + 1].remove_col(c);
    }

    if let Some(io) = iota[k].as_mut() {
        let ib = std::mem::take(&mut io[b]);
        for (a, coef) in &delta {
            let target = &mut io[*a];
            for (o, v) in &ib {
                let oo = &orders[k][*o];
                let cur = target.get(o).cloned().unwrap_or_else(Scalar::zero);
                let nv = ring.reduce(ring.sub(&cur, &ring.mul(v, coef)), oo);
                if nv.is_zero() {
                    target.remove(o);
                } else {
                    target.insert(*o, nv);
                }
            }
        }
    }
    if let Some(io) = iota[k + 1].as_mut() {
        io[c].clear();
    }
    if let Some(p) = pi[k + 1].as_mut() {
        let pc = std::mem::take(&mut p[c]);
        for (beta, g) in &gamma {
            let ob2 = &orders[k + 1][*beta];
            let coef = ring.reduce(ring.mul(g, &phi_inv), ob2);
            let target = &mut p[*beta];
            for (o, v) in &pc {
                let cur = target.get(o).cloned().unwrap_or_else(Scalar::zero);
                let nv = ring.reduce(ring.sub(&cur, &ring.mul(&coef, v)), ob2);
                if nv.is_zero() {
                    target.remove(o);
                } else {
                    target.insert(*o, nv);
                }
            }
        }
    }
    if let Some(p) = pi[k].as_mut() {
        p[b].clear();
    }
}
