//! Smith normal form over Z and over fields.
//!
//! The pivot is always the entry of smallest Euclidean size in the remaining block.
//! Transform matrices are only accumulated when requested, since on the larger
//! complexes only the diagonal is needed.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};

type Dense = Vec<Vec<Scalar>>;

/// `U * M * V = D` with `U`, `V` invertible and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

pub(crate) struct SnfData {
    pub diag: Vec<Scalar>,
    pub rank: usize,
    pub u: Option<Dense>,
    pub u_inv: Option<Dense>,
    pub v: Option<Dense>,
    #[allow(dead_code)]
    pub v_inv: Option<Dense>,
}

fn ident(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct Calc {
    ring: Ring,
    a: Dense,
    m: usize,
    n: usize,
    u: Option<Dense>,
    u_inv: Option<Dense>,
    v: Option<Dense>,
    v_inv: Option<Dense>,
}

fn row_axpy(ring: Ring, mat: &mut Dense, target: usize, src: usize, q: &Scalar) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = mat.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = mat.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = ring.sub(x, &ring.mul(q, y));
        }
    }
}

fn col_axpy(ring: Ring, mat: &mut Dense, target: usize, src: usize, q: &Scalar) {
    if q.is_zero() {
        return;
    }
    for row in mat.iter_mut() {
        if !row[src].is_zero() {
            let d = ring.mul(q, &row[src]);
            row[target] = ring.sub(&row[target], &d);
        }
    }
}

impl Calc {
    // row_i -= q * row_t
    fn row_op(&mut self, i: usize, t: usize, q: &Scalar) {
        let ring = self.ring;
        row_axpy(ring, &mut self.a, i, t, q);
        if let Some(u) = self.u.as_mut() {
            row_axpy(ring, u, i, t, q);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            col_axpy(ring, ui, t, i, &ring.neg(q));
        }
    }

    // col_j -= q * col_t
    fn col_op(&mut self, j: usize, t: usize, q: &Scalar) {
        let ring = self.ring;
        col_axpy(ring, &mut self.a, j, t, q);
        if let Some(v) = self.v.as_mut() {
            col_axpy(ring, v, j, t, q);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            row_axpy(ring, vi, t, j, &ring.neg(q));
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap(i, j);
        }
    }

    fn scale_row(&mut self, t: usize, c: &Scalar) {
        let ring = self.ring;
        let c_inv = ring.unit_inverse(c, &Default::default());
        for x in self.a[t].iter_mut() {
            *x = ring.mul(x, c);
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[t].iter_mut() {
                *x = ring.mul(x, c);
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[t] = ring.mul(&row[t], &c_inv);
            }
        }
    }

    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize, num_bigint::BigInt)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let s = ring.size(x);
                if best.as_ref().map_or(true, |(_, _, b)| s < *b) {
                    let done = s.is_one();
                    best = Some((i, j, s));
                    if done {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> usize {
        let ring = self.ring;
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.smallest(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let (q, _) = ring.div_rem(&self.a[i][t], &self.a[t][t]);
                        self.row_op(i, t, &q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let (q, _) = ring.div_rem(&self.a[t][j], &self.a[t][t]);
                        self.col_op(j, t, &q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder is now smaller than the pivot; move it into place
                    let mut best: Option<(bool, usize, num_bigint::BigInt)> = None;
                    for i in t + 1..self.m {
                        if !self.a[i][t].is_zero() {
                            let s = ring.size(&self.a[i][t]);
                            if best.as_ref().map_or(true, |b| s < b.2) {
                                best = Some((true, i, s));
                            }
                        }
                    }
                    for j in t + 1..self.n {
                        if !self.a[t][j].is_zero() {
                            let s = ring.size(&self.a[t][j]);
                            if best.as_ref().map_or(true, |b| s < b.2) {
                                best = Some((false, j, s));
                            }
                        }
                    }
                    if let Some((is_row, k, _)) = best {
                        if is_row {
                            self.swap_rows(t, k);
                        } else {
                            self.swap_cols(t, k);
                        }
                    }
                    continue;
                }
                if ring == Ring::Integers {
                    let p = self.a[t][t].clone();
                    let bad = (t + 1..self.m)
                        .find(|&i| (t + 1..self.n).any(|j| !ring.divides(&p, &self.a[i][j])));
                    if let Some(i) = bad {
                        self.row_op(t, i, &-Scalar::one());
                        continue;
                    }
                }
                break;
            }
            let unit = ring.normalizing_unit(&self.a[t][t]);
            if !unit.is_one() {
                self.scale_row(t, &unit);
            }
            t += 1;
        }
        t
    }
}

pub(crate) fn snf_dense(ring: Ring, a: Dense, ncols: usize, track: Track) -> SnfData {
    let m = a.len();
    let n = ncols;
    let mut calc = Calc {
        ring,
        a,
        m,
        n,
        u: track.u.then(|| ident(m)),
        u_inv: track.u_inv.then(|| ident(m)),
        v: track.v.then(|| ident(n)),
        v_inv: track.v_inv.then(|| ident(n)),
    };
    let rank = calc.run();
    let diag = (0..m.min(n)).map(|i| calc.a[i][i].clone()).collect();
    SnfData {
        diag,
        rank,
        u: calc.u,
        u_inv: calc.u_inv,
        v: calc.v,
        v_inv: calc.v_inv,
    }
}

pub fn smith_normal_form(ring: Ring, m: &Matrix) -> Snf {
    let data = snf_dense(
        ring,
        m.to_dense(),
        m.ncols(),
        Track {
            u: true,
            v: true,
            ..Track::NONE
        },
    );
    let mut d = Matrix::zeros(m.nrows(), m.ncols());
    for (i, x) in data.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    let u = data.u.unwrap();
    let v = data.v.unwrap();
    Snf {
        u: Matrix::from_dense(u, m.nrows()),
        d,
        v: Matrix::from_dense(v, m.ncols()),
    }
}

/// Invariant factors only (diagonal of the Smith form, zeros included).
pub fn invariant_factors(ring: Ring, m: &Matrix) -> Vec<Scalar> {
    snf_dense(ring, m.to_dense(), m.ncols(), Track::NONE).diag
}

pub fn rank(ring: Ring, m: &Matrix) -> usize {
    snf_dense(ring, m.to_dense(), m.ncols(), Track::NONE).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abmod::ring::int;

    #[test]
    fn identity_is_fixed() {
        let z = Ring::Integers;
        let s = smith_normal_form(z, &Matrix::identity(3));
        assert_eq!(s.d, Matrix::identity(3));
        assert_eq!(s.u, Matrix::identity(3));
        assert_eq!(s.v, Matrix::identity(3));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let z = Ring::Integers;
        let m = Matrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(z, &m);
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
        assert_eq!(s.u.mul(z, &m).mul(z, &s.v), s.d);
    }

    #[test]
    fn field_rank() {
        let f2 = Ring::PrimeField(2);
        let m = Matrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(rank(f2, &m), 1);
        let q = Ring::Rationals;
        let m = Matrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(rank(q, &m), 2);
        assert_eq!(invariant_factors(q, &m), vec![int(1), int(1)]);
    }
}
