//! Functors on `Tw(Idem)` as tuples `(B, A00, A01, A10, A11, g01, g10, g11)`.
//!
//! In `Tw(Idem)` object 0 is the identity and object 1 is `f`. `B` sits over the identity and
//! `F(f) = A00 ⊕ A01 ⊕ A10 ⊕ A11`, where `(f,id)` acts by the first index and `(id,f)` by
//! the second.

use num_traits::{One, Zero};

use super::{CoefFunctor, CohError};
use crate::abmod::{AbError, AbHom, CyclicSum, Matrix, Ring, Scalar};
use crate::fincat::{idem, twisted_arrow};

// morphism indices in the canonical ordering of Tw(Idem)
const UNIT_ID: usize = 0;
const UNIT_POST: usize = 1;
const UNIT_PRE: usize = 2;
const UNIT_BOTH: usize = 3;
const F_ID: usize = 4;
const F_POST: usize = 5;
const F_PRE: usize = 6;
const F_BOTH: usize = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct IdemTuple {
    pub b: CyclicSum,
    /// `A00, A01, A10, A11`.
    pub a: [CyclicSum; 4],
    pub g01: AbHom,
    pub g10: AbHom,
    pub g11: AbHom,
}

impl IdemTuple {
    pub fn new(
        b: CyclicSum,
        a: [CyclicSum; 4],
        g01: AbHom,
        g10: AbHom,
        g11: AbHom,
    ) -> Result<Self, CohError> {
        let ring = b.ring();
        if a.iter().any(|x| x.ring() != ring) {
            return Err(AbError::RingMismatch.into());
        }
        for (g, t) in [(&g01, &a[1]), (&g10, &a[2]), (&g11, &a[3])] {
            if g.source() != &b || g.target() != t {
                return Err(AbError::CompositionMismatch.into());
            }
        }
        Ok(IdemTuple {
            b,
            a,
            g01,
            g10,
            g11,
        })
    }

    pub fn ring(&self) -> Ring {
        self.b.ring()
    }

    /// `A00 ⊕ A01 ⊕ A10 ⊕ A11`.
    pub fn total(&self) -> CyclicSum {
        CyclicSum::direct_sum_all(self.ring(), self.a.iter())
    }

    fn offset(&self, k: usize) -> usize {
        self.a[..k].iter().map(CyclicSum::len).sum()
    }

    /// The inclusion of the `k`-th summand (`k = 2λ + μ`) into the total group.
    pub fn block_inclusion(&self, k: usize) -> AbHom {
        let mut m = Matrix::zeros(self.total().len(), self.a[k].len());
        m.add_block(
            self.ring(),
            self.offset(k),
            0,
            &Matrix::identity(self.a[k].len()),
        );
        AbHom::new(self.a[k].clone(), self.total(), m).expect("summand inclusion")
    }

    /// The projection of the total group onto the `k`-th summand.
    pub fn block_projection(&self, k: usize) -> AbHom {
        let mut m = Matrix::zeros(self.a[k].len(), self.total().len());
        m.add_block(
            self.ring(),
            0,
            self.offset(k),
            &Matrix::identity(self.a[k].len()),
        );
        AbHom::new(self.total(), self.a[k].clone(), m).expect("summand projection")
    }

    /// Is `decoded` isomorphic to this tuple through the summand maps `A'_k -> F(f) -> A_k`?
    /// `decoded` must come from a functor whose value at `f` is [`Self::total`].
    pub fn is_isomorphic_to(&self, decoded: &DecodedIdem) -> Result<bool, CohError> {
        if decoded.tuple.b != self.b {
            return Ok(false);
        }
        let mut alpha = Vec::with_capacity(4);
        for k in 0..4 {
            let a = self.block_projection(k).compose(&decoded.inclusions[k])?;
            if !a.is_isomorphism()? {
                return Ok(false);
            }
            alpha.push(a);
        }
        let theirs = [&decoded.tuple.g01, &decoded.tuple.g10, &decoded.tuple.g11];
        let ours = [&self.g01, &self.g10, &self.g11];
        for k in 0..3 {
            if &alpha[k + 1].compose(theirs[k])? != ours[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn projector(&self, keep: &[usize]) -> Matrix {
        let total = self.total().len();
        let mut m = Matrix::zeros(total, total);
        for &k in keep {
            m.add_block(
                self.ring(),
                self.offset(k),
                self.offset(k),
                &Matrix::identity(self.a[k].len()),
            );
        }
        m
    }

    fn into_blocks(&self, parts: &[(usize, &AbHom)]) -> Matrix {
        let mut m = Matrix::zeros(self.total().len(), self.b.len());
        for &(k, g) in parts {
            m.add_block(self.ring(), self.offset(k), 0, g.matrix());
        }
        m
    }

    /// `(g01, g10): B -> A01 ⊕ A10`, whose kernel and cokernel are `lim^0` and `lim^1`.
    pub fn pair_map(&self) -> AbHom {
        let target = self.a[1].direct_sum(&self.a[2]);
        let m = self.g01.matrix().vstack(self.g10.matrix());
        AbHom::new(self.b.clone(), target, m).expect("stacked maps")
    }
}

pub fn idem_encode(t: &IdemTuple) -> CoefFunctor {
    let tw = twisted_arrow(&idem()).category;
    let n = t.total().len();
    let mut action = vec![Matrix::zeros(0, 0); 8];
    action[UNIT_ID] = Matrix::identity(t.b.len());
    action[UNIT_POST] = t.into_blocks(&[(1, &t.g01), (3, &t.g11)]);
    action[UNIT_PRE] = t.into_blocks(&[(2, &t.g10), (3, &t.g11)]);
    action[UNIT_BOTH] = t.into_blocks(&[(3, &t.g11)]);
    action[F_ID] = Matrix::identity(n);
    action[F_POST] = t.projector(&[1, 3]);
    action[F_PRE] = t.projector(&[2, 3]);
    action[F_BOTH] = t.projector(&[3]);
    CoefFunctor::new(tw, t.ring(), vec![t.b.clone(), t.total()], action)
        .expect("tuples give functors")
}

/// A decoded tuple together with the inclusions `A_λμ -> F(f)`.
#[derive(Clone, Debug)]
pub struct DecodedIdem {
    pub tuple: IdemTuple,
    pub inclusions: [AbHom; 4],
}

pub fn idem_decode(f: &CoefFunctor) -> Result<DecodedIdem, CohError> {
    let tw = twisted_arrow(&idem()).category;
    if f.base() != &tw {
        return Err(CohError::NotIdemBase);
    }
    let v = f.value(1).clone();
    let p = f.action_hom(F_PRE);
    let q = f.action_hom(F_POST);
    let idempotent = |x: &AbHom| x.compose(x).map(|xx| &xx == x);
    if !idempotent(&p)? || !idempotent(&q)? || p.compose(&q)? != q.compose(&p)? {
        return Err(CohError::ActionNotIdempotent);
    }
    let id = AbHom::identity(&v);
    let not_p = id.add(&p.negate())?;
    let not_q = id.add(&q.negate())?;
    let idempotents = [
        not_p.compose(&not_q)?,
        q.compose(&not_p)?,
        p.compose(&not_q)?,
        p.compose(&q)?,
    ];
    let mut groups = Vec::with_capacity(4);
    let mut inclusions = Vec::with_capacity(4);
    let mut presentations = Vec::with_capacity(4);
    for e in &idempotents {
        let r = id.add(&e.negate())?.kernel()?;
        groups.push(r.group.cyclic_sum());
        inclusions.push(r.map);
        presentations.push(r.presentation);
    }
    let b = f.value(0).clone();
    let component = |k: usize, along: usize| -> Result<AbHom, CohError> {
        let m = idempotents[k].compose(&f.action_hom(along))?;
        let cols = (0..b.len())
            .map(|j| {
                let mut x = vec![Scalar::zero(); b.len()];
                x[j] = Scalar::one();
                presentations[k].class_of(&m.apply(&x))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbHom::new(
            b.clone(),
            groups[k].clone(),
            Matrix::from_columns(groups[k].len(), &cols),
        )?)
    };
    let g01 = component(1, UNIT_POST)?;
    let g10 = component(2, UNIT_PRE)?;
    let g11 = component(3, UNIT_POST)?;
    let a: [CyclicSum; 4] = groups.try_into().expect("four summands");
    let tuple = IdemTuple::new(b, a, g01, g10, g11)?;
    Ok(DecodedIdem {
        tuple,
        inclusions: inclusions.try_into().expect("four summands"),
    })
}
