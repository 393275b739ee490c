use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{CyclicSum, FgAbGroup};
use super::lattice::{kernel_basis, lattice_basis, SubQuotient};
use super::matrix::Matrix;
use super::ring::{big, Ring, Scalar};
use super::AbError;

/// A homomorphism between cyclic sums, given on generators (column `j` is the image of
/// source generator `j`). Entries are kept reduced modulo the target orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: CyclicSum,
    target: CyclicSum,
    matrix: Matrix,
}

/// A subgroup or quotient realized as an [`FgAbGroup`] with its comparison data.
#[derive(Clone, Debug)]
pub struct Realized {
    pub group: FgAbGroup,
    /// For kernels and images: the inclusion into the ambient group.
    /// For cokernels: the projection from the ambient group.
    pub map: AbHom,
    pub presentation: SubQuotient,
}

/// Checks that `matrix` defines a homomorphism `source -> target` and reduces its entries.
pub(crate) fn validate_matrix(
    source: &CyclicSum,
    target: &CyclicSum,
    matrix: &Matrix,
) -> Result<Matrix, AbError> {
    let ring = source.ring();
    if matrix.nrows() != target.len() || matrix.ncols() != source.len() {
        return Err(AbError::Shape {
            expected: (target.len(), source.len()),
            found: (matrix.nrows(), matrix.ncols()),
        });
    }
    let mut m = matrix.clone();
    let mut bad: Option<AbError> = None;
    m.map_rows(|i, row| {
        let o_i = target.order(i);
        row.into_iter()
            .map(|(j, v)| {
                if !ring.admits(&v) {
                    bad.get_or_insert(AbError::EntryNotInRing { row: i, col: j });
                }
                let v = ring.reduce(ring.normalize(v), o_i);
                let o_j = source.order(j);
                if !o_j.is_zero() && !v.is_zero() {
                    // o_j * v must vanish in Z/o_i
                    let ok = !o_i.is_zero() && (o_j * v.to_integer()).is_multiple_of(o_i);
                    if !ok {
                        bad.get_or_insert(AbError::IncompatibleTorsion { row: i, col: j });
                    }
                }
                (j, v)
            })
            .collect()
    });
    match bad {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

impl AbHom {
    pub fn new(source: CyclicSum, target: CyclicSum, matrix: Matrix) -> Result<Self, AbError> {
        if source.ring() != target.ring() {
            return Err(AbError::RingMismatch);
        }
        let matrix = validate_matrix(&source, &target, &matrix)?;
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(s: &CyclicSum) -> Self {
        AbHom {
            source: s.clone(),
            target: s.clone(),
            matrix: Matrix::identity(s.len()),
        }
    }

    pub fn zero(source: &CyclicSum, target: &CyclicSum) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.len(), source.len()),
        }
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom, AbError> {
        if first.target != self.source {
            return Err(AbError::CompositionMismatch);
        }
        let m = self.matrix.mul(self.ring(), &first.matrix);
        AbHom::new(first.source.clone(), self.target.clone(), m)
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AbError> {
        if self.source != other.source || self.target != other.target {
            return Err(AbError::CompositionMismatch);
        }
        AbHom::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(self.ring(), &other.matrix),
        )
    }

    pub fn negate(&self) -> AbHom {
        let m = self.matrix.scale(self.ring(), &-Scalar::one());
        AbHom::new(self.source.clone(), self.target.clone(), m)
            .expect("negation preserves validity")
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.target.reduce(&self.matrix.apply(self.ring(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn direct_sum(&self, other: &AbHom) -> AbHom {
        AbHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel(&self) -> Result<Realized, AbError> {
        let ring = self.ring();
        let g = self.source.len();
        let aug = self.matrix.hstack(&self.target.relation_matrix());
        let kb = kernel_basis(ring, &aug);
        let rows: Vec<usize> = (0..g).collect();
        let basis = kb.select_rows(&rows);
        let sq = SubQuotient::new(ring, basis, &self.source.relation_matrix())?;
        let inclusion = inclusion_of(&sq, &self.source)?;
        Ok(Realized {
            group: sq.group().clone(),
            map: inclusion,
            presentation: sq,
        })
    }

    /// The image as a subgroup of the target.
    pub fn image(&self) -> Result<Realized, AbError> {
        let ring = self.ring();
        let rel = self.target.relation_matrix();
        let basis = lattice_basis(ring, &self.matrix.hstack(&rel));
        let sq = SubQuotient::new(ring, basis, &rel)?;
        let inclusion = inclusion_of(&sq, &self.target)?;
        Ok(Realized {
            group: sq.group().clone(),
            map: inclusion,
            presentation: sq,
        })
    }

    /// The cokernel with the projection from the target.
    pub fn cokernel(&self) -> Result<Realized, AbError> {
        let ring = self.ring();
        let t = self.target.len();
        let rel = self.matrix.hstack(&self.target.relation_matrix());
        let sq = SubQuotient::new(ring, Matrix::identity(t), &rel)?;
        let group = sq.group().clone();
        let mut cols = Vec::with_capacity(t);
        for j in 0..t {
            let mut e = vec![Scalar::zero(); t];
            e[j] = Scalar::one();
            cols.push(sq.class_of(&e)?);
        }
        let proj = AbHom::new(
            self.target.clone(),
            group.cyclic_sum(),
            Matrix::from_columns(group.num_generators(), &cols),
        )?;
        Ok(Realized {
            group,
            map: proj,
            presentation: sq,
        })
    }

    pub fn is_injective(&self) -> Result<bool, AbError> {
        Ok(self.kernel()?.group.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool, AbError> {
        Ok(self.cokernel()?.group.is_zero())
    }

    pub fn is_isomorphism(&self) -> Result<bool, AbError> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }
}

fn inclusion_of(sq: &SubQuotient, ambient: &CyclicSum) -> Result<AbHom, AbError> {
    let n = sq.group().num_generators();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| ambient.reduce(&sq.representative(i)))
        .collect();
    AbHom::new(
        sq.group().cyclic_sum(),
        ambient.clone(),
        Matrix::from_columns(ambient.len(), &cols),
    )
}

/// Is `A --f--> B --g--> C` exact at `B`?
pub fn is_exact_at(f: &AbHom, g: &AbHom) -> Result<bool, AbError> {
    if f.target != g.source {
        return Err(AbError::CompositionMismatch);
    }
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    let ker = g.kernel()?;
    // im f is contained in ker g; compare by computing the subquotient ker g / im f
    let ring = f.ring();
    let rel = f.matrix.hstack(&f.target.relation_matrix());
    let sq = SubQuotient::new(ring, ker.presentation.basis().clone(), &rel)?;
    Ok(sq.group().is_zero())
}

/// `Hom(A, B)` with an explicit generating homomorphism for each normal-form generator.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FgAbGroup,
    pub generators: Vec<AbHom>,
}

pub fn hom_group(a: &CyclicSum, b: &CyclicSum) -> Result<HomGroup, AbError> {
    if a.ring() != b.ring() {
        return Err(AbError::RingMismatch);
    }
    let ring = a.ring();
    // one cyclic summand per pair of generators
    let mut orders = Vec::new();
    let mut elementary: Vec<(usize, usize, BigInt)> = Vec::new();
    for (i, oa) in a.orders().iter().enumerate() {
        for (j, ob) in b.orders().iter().enumerate() {
            let (order, value) = match (oa.is_zero(), ob.is_zero()) {
                (true, true) => (BigInt::zero(), BigInt::one()),
                (true, false) => (ob.clone(), BigInt::one()),
                (false, true) => continue,
                (false, false) => {
                    let g = oa.gcd(ob);
                    if g.is_one() {
                        continue;
                    }
                    (g.clone(), ob / &g)
                }
            };
            orders.push(order);
            elementary.push((i, j, value));
        }
    }
    let sum = CyclicSum::new_unchecked(ring, orders);
    let norm = sum.normal_form();
    let mut generators = Vec::new();
    for k in 0..norm.group.num_generators() {
        let mut m = Matrix::zeros(b.len(), a.len());
        for (e, (i, j, value)) in elementary.iter().enumerate() {
            let c = norm.from_normal.get(e, k);
            if !c.is_zero() {
                m.add_at(ring, *j, *i, &ring.mul(&c, &big(value.clone())));
            }
        }
        generators.push(AbHom::new(a.clone(), b.clone(), m)?);
    }
    Ok(HomGroup {
        group: norm.group,
        generators,
    })
}
