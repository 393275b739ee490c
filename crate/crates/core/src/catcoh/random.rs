//! Seeded generators for tests and property checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CoefFunctor, CohError, IdemTuple};
use crate::abmod::{big, int, AbHom, CyclicSum, Matrix, Ring, Scalar, SubQuotient};
use crate::fincat::FinCat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Most generators of any single value.
    pub max_rank: usize,
    /// Largest allowed finite order of a generator.
    pub max_torsion: u64,
    pub max_attempts: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_rank: 3,
            max_torsion: 8,
            max_attempts: 200,
        }
    }
}

pub fn random_cyclic_sum(rng: &mut impl Rng, ring: Ring, bounds: &Bounds) -> CyclicSum {
    let n = rng.gen_range(0..=bounds.max_rank);
    let orders = (0..n)
        .map(|_| {
            if ring != Ring::Integers || bounds.max_torsion < 2 || rng.gen_bool(0.5) {
                BigInt::zero()
            } else {
                BigInt::from(rng.gen_range(2..=bounds.max_torsion))
            }
        })
        .collect();
    CyclicSum::new(ring, orders).expect("orders are valid")
}

/// A random homomorphism; entries are chosen so that every torsion generator maps to an
/// element of compatible order.
pub fn random_hom(rng: &mut impl Rng, source: &CyclicSum, target: &CyclicSum) -> AbHom {
    let ring = source.ring();
    let mut m = Matrix::zeros(target.len(), source.len());
    for i in 0..target.len() {
        for j in 0..source.len() {
            let (t, o) = (target.order(i), source.order(j));
            let step = if o.is_zero() {
                BigInt::one()
            } else if t.is_zero() {
                continue;
            } else {
                t / t.gcd(o)
            };
            let x: i64 = rng.gen_range(-3..=3);
            m.set(i, j, ring.normalize(big(step * x)));
        }
    }
    AbHom::new(source.clone(), target.clone(), m).expect("compatible orders")
}

pub fn random_idem_tuple(ring: Ring, seed: u64, bounds: &Bounds) -> IdemTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_cyclic_sum(&mut rng, ring, bounds);
    let a: [CyclicSum; 4] = std::array::from_fn(|_| random_cyclic_sum(&mut rng, ring, bounds));
    let g01 = random_hom(&mut rng, &b, &a[1]);
    let g10 = random_hom(&mut rng, &b, &a[2]);
    let g11 = random_hom(&mut rng, &b, &a[3]);
    IdemTuple::new(b, a, g01, g10, g11).expect("consistent tuple")
}

/// A quotient of a sum of representables `Z[Hom(c, -)]` by the subfunctor generated by a few
/// random elements, optionally plus a constant summand. Values are normalized to cyclic
/// decompositions; draws violating `bounds` are discarded.
pub fn random_coef_functor(
    base: &FinCat,
    ring: Ring,
    seed: u64,
    bounds: &Bounds,
) -> Result<CoefFunctor, CohError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..bounds.max_attempts {
        if let Some(f) = attempt(base, ring, &mut rng, bounds)? {
            return Ok(f);
        }
    }
    Err(CohError::GenerationFailed(bounds.max_attempts))
}

fn attempt(
    base: &FinCat,
    ring: Ring,
    rng: &mut ChaCha8Rng,
    bounds: &Bounds,
) -> Result<Option<CoefFunctor>, CohError> {
    let no = base.num_objects();
    let k = rng.gen_range(0..=2);
    let sources: Vec<usize> = (0..k).map(|_| rng.gen_range(0..no)).collect();
    // basis of P(y): pairs (summand, morphism out of its source)
    let basis: Vec<Vec<(usize, usize)>> = (0..no)
        .map(|y| {
            sources
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| base.hom(c, y).iter().map(move |&u| (i, u)))
                .collect()
        })
        .collect();
    let position = |y: usize, e: (usize, usize)| {
        basis[y]
            .iter()
            .position(|&b| b == e)
            .expect("basis element")
    };
    let push = |m: usize, y: usize, v: &[Scalar]| -> Vec<Scalar> {
        let z = base.cod(m);
        let mut out = vec![Scalar::zero(); basis[z].len()];
        for (p, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let (i, u) = basis[y][p];
                let q = position(z, (i, base.compose(m, u).expect("composable")));
                out[q] = ring.add(&out[q], x);
            }
        }
        out
    };
    let mut relations: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); no];
    let count = rng.gen_range(0..=4);
    for _ in 0..count {
        let y = rng.gen_range(0..no);
        let dim = basis[y].len();
        if dim == 0 {
            continue;
        }
        let mut r = vec![Scalar::zero(); dim];
        let e = rng.gen_range(0..dim);
        let e2 = rng.gen_range(0..dim);
        match rng.gen_range(0..4) {
            0 => r[e] = int(1),
            1 => r[e] = int(rng.gen_range(2..=4)),
            2 => {
                r[e] = int(1);
                r[e2] = ring.sub(&r[e2], &int(1));
            }
            _ => {
                r[e] = int(1);
                r[e2] = ring.add(&r[e2], &int(1));
            }
        }
        let r: Vec<Scalar> = r.into_iter().map(|x| ring.normalize(x)).collect();
        for &m in std::iter::once(&base.identity(y)).chain(base.out_non_identity(y)) {
            relations[base.cod(m)].push(push(m, y, &r));
        }
    }
    let mut quotients = Vec::with_capacity(no);
    for y in 0..no {
        let dim = basis[y].len();
        let rel = Matrix::from_columns(dim, &relations[y]);
        quotients.push(SubQuotient::new(ring, Matrix::identity(dim), &rel)?);
    }
    let mut values: Vec<CyclicSum> = quotients.iter().map(|q| q.group().cyclic_sum()).collect();
    let mut action = Vec::with_capacity(base.num_morphisms());
    for m in 0..base.num_morphisms() {
        let (y, z) = (base.dom(m), base.cod(m));
        let cols = (0..values[y].len())
            .map(|i| quotients[z].class_of(&push(m, y, &quotients[y].representative(i))))
            .collect::<Result<Vec<_>, _>>()?;
        action.push(Matrix::from_columns(values[z].len(), &cols));
    }
    if rng.gen_bool(0.4) {
        let extra = random_cyclic_sum(
            rng,
            ring,
            &Bounds {
                max_rank: 1,
                ..*bounds
            },
        );
        values = values.iter().map(|v| v.direct_sum(&extra)).collect();
        action = action
            .iter()
            .map(|a| a.block_diag(&Matrix::identity(extra.len())))
            .collect();
    }
    let limit = BigInt::from(bounds.max_torsion);
    let ok = values
        .iter()
        .all(|v| v.len() <= bounds.max_rank && v.orders().iter().all(|o| o <= &limit));
    if !ok {
        return Ok(None);
    }
    Ok(Some(CoefFunctor::new(base.clone(), ring, values, action)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{idem, point, twisted_arrow};

    #[test]
    fn deterministic() {
        let tw = twisted_arrow(&idem()).category;
        let b = Bounds::default();
        for seed in 0..5 {
            assert_eq!(
                random_coef_functor(&tw, Ring::Integers, seed, &b).unwrap(),
                random_coef_functor(&tw, Ring::Integers, seed, &b).unwrap()
            );
        }
    }

    #[test]
    fn point_gives_single_group() {
        let f = random_coef_functor(&point(), Ring::Integers, 3, &Bounds::default()).unwrap();
        assert_eq!(f.values().len(), 1);
        assert!(f.max_rank() <= 3);
    }

    #[test]
    fn hundred_seeds_on_tw_idem() {
        let tw = twisted_arrow(&idem()).category;
        let mut nonzero = 0;
        for seed in 0..100 {
            let f = random_coef_functor(&tw, Ring::Integers, seed, &Bounds::default()).unwrap();
            if f.values().iter().any(|v| !v.is_empty()) {
                nonzero += 1;
            }
        }
        assert!(nonzero > 50);
    }

    #[test]
    fn random_homs_are_well_defined() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = random_cyclic_sum(&mut rng, Ring::Integers, &Bounds::default());
            let t = random_cyclic_sum(&mut rng, Ring::Integers, &Bounds::default());
            random_hom(&mut rng, &s, &t);
        }
    }
}
