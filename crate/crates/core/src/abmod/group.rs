use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::SubQuotient;
use super::matrix::Matrix;
use super::ring::{big, Ring, Scalar};
use super::AbError;

/// A finitely generated abelian group (or vector space) in invariant-factor form.
///
/// Generators are ordered torsion first (`Z/d_1, Z/d_2, ...` with `d_1 | d_2 | ...`),
/// then the free part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "super::io::GroupRepr", into = "super::io::GroupRepr")]
pub struct FgAbGroup {
    ring: Ring,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(ring: Ring, free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbError> {
        if ring.is_field() && !torsion.is_empty() {
            return Err(AbError::TorsionOverField);
        }
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(AbError::BadInvariantFactor(d.clone()));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(AbError::BadInvariantFactor(w[1].clone()));
            }
        }
        Ok(FgAbGroup {
            ring,
            free_rank,
            torsion,
        })
    }

    pub fn zero(ring: Ring) -> Self {
        FgAbGroup {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        FgAbGroup {
            ring,
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/d` (or `Z` for `d = 0`); over fields only `d = 0` is meaningful.
    pub fn cyclic(ring: Ring, d: u64) -> Self {
        FgAbGroup::from_orders(ring, &[BigInt::from(d)])
    }

    /// Normal form of a direct sum of cyclic groups with the given orders (0 = infinite).
    pub fn from_orders(ring: Ring, orders: &[BigInt]) -> Self {
        CyclicSum::new_unchecked(ring, orders.to_vec())
            .normal_form()
            .group
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Dimension over a field; free rank over Z.
    pub fn dim(&self) -> usize {
        self.free_rank
    }

    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat(BigInt::zero()).take(self.free_rank));
        o
    }

    pub fn cyclic_sum(&self) -> CyclicSum {
        CyclicSum::new_unchecked(self.ring, self.orders())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = self.orders();
        o.extend(other.orders());
        FgAbGroup::from_orders(self.ring, &o)
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            if self.free_rank == 1 {
                parts.push(format!("{}", self.ring));
            } else {
                parts.push(format!("{}^{}", self.ring, self.free_rank));
            }
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A direct sum of cyclic groups in a fixed generator order; no normal-form requirement.
///
/// This is how cochain terms and coefficient values are presented: a generator of order
/// `d >= 2` spans `Z/d`, a generator of order 0 spans a free summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSum {
    ring: Ring,
    orders: Vec<BigInt>,
}

/// Isomorphism between a [`CyclicSum`] and its invariant-factor normal form.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub group: FgAbGroup,
    /// Coordinates on the normal-form generators of each original generator.
    pub to_normal: Matrix,
    /// Each normal-form generator written in the original generators.
    pub from_normal: Matrix,
}

impl CyclicSum {
    pub fn new(ring: Ring, orders: Vec<BigInt>) -> Result<Self, AbError> {
        for o in &orders {
            if o.is_negative() || o.is_one() {
                return Err(AbError::BadInvariantFactor(o.clone()));
            }
            if ring.is_field() && !o.is_zero() {
                return Err(AbError::TorsionOverField);
            }
        }
        Ok(CyclicSum { ring, orders })
    }

    pub(crate) fn new_unchecked(ring: Ring, orders: Vec<BigInt>) -> Self {
        CyclicSum { ring, orders }
    }

    pub fn free(ring: Ring, n: usize) -> Self {
        CyclicSum {
            ring,
            orders: vec![BigInt::zero(); n],
        }
    }

    pub fn zero(ring: Ring) -> Self {
        CyclicSum {
            ring,
            orders: Vec::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn order(&self, i: usize) -> &BigInt {
        &self.orders[i]
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.orders.iter().all(Zero::is_zero)
    }

    pub fn direct_sum(&self, other: &CyclicSum) -> CyclicSum {
        let mut o = self.orders.clone();
        o.extend(other.orders.iter().cloned());
        CyclicSum {
            ring: self.ring,
            orders: o,
        }
    }

    pub fn direct_sum_all<'a, I: IntoIterator<Item = &'a CyclicSum>>(
        ring: Ring,
        parts: I,
    ) -> CyclicSum {
        let mut o = Vec::new();
        for p in parts {
            o.extend(p.orders.iter().cloned());
        }
        CyclicSum { ring, orders: o }
    }

    /// Reduces each coordinate modulo the order of its generator.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        v.iter()
            .zip(&self.orders)
            .map(|(x, o)| self.ring.reduce(x.clone(), o))
            .collect()
    }

    pub fn is_zero_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Relation columns: `order_i * e_i` for each torsion generator.
    pub fn relation_matrix(&self) -> Matrix {
        let tors: Vec<usize> = (0..self.len())
            .filter(|&i| !self.orders[i].is_zero())
            .collect();
        let mut r = Matrix::zeros(self.len(), tors.len());
        for (c, &i) in tors.iter().enumerate() {
            r.set(i, c, big(self.orders[i].clone()));
        }
        r
    }

    pub fn normal_form(&self) -> Normalization {
        let sq = SubQuotient::new(
            self.ring,
            Matrix::identity(self.len()),
            &self.relation_matrix(),
        )
        .expect("identity lattice is always valid");
        let n = sq.group().num_generators();
        let mut to_normal = Matrix::zeros(n, self.len());
        for j in 0..self.len() {
            let mut e = vec![Scalar::zero(); self.len()];
            e[j] = Scalar::one();
            let c = sq.class_of(&e).expect("basis vector lies in the lattice");
            for (i, x) in c.into_iter().enumerate() {
                to_normal.set(i, j, x);
            }
        }
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| self.reduce(&sq.representative(i))).collect();
        let from_normal = Matrix::from_columns(self.len(), &cols);
        Normalization {
            group: sq.group().clone(),
            to_normal,
            from_normal,
        }
    }

    pub fn is_isomorphic(&self, other: &CyclicSum) -> bool {
        self.normal_form().group == other.normal_form().group
    }
}

impl From<&FgAbGroup> for CyclicSum {
    fn from(g: &FgAbGroup) -> Self {
        g.cyclic_sum()
    }
}
