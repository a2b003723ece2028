use super::group::{AbelianGroup, GroupElement};
use super::lattice::{express_in, preimage_of_zero, quotient, span_contains, subgroup};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A homomorphism between canonical groups. Column `j` of the matrix is the
/// image of source generator `j` in target coordinates; rows belonging to
/// torsion summands are reduced into `[0, e)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom<T> {
    source: AbelianGroup<T>,
    target: AbelianGroup<T>,
    matrix: IntMatrix<T>,
}

impl<T: Scalar> GroupHom<T> {
    /// Validates the congruence constraints and reduces the matrix.
    pub fn new(source: &AbelianGroup<T>, target: &AbelianGroup<T>, matrix: IntMatrix<T>) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let src = source.moduli();
        let tgt = target.moduli();
        for (i, e) in tgt.iter().enumerate() {
            for (j, d) in src.iter().enumerate() {
                let m = &matrix[(i, j)];
                // d * m must vanish modulo e (e = 0: vanish outright)
                let dm = d.mul_exact(m);
                let ok = if e.is_zero() { dm.is_zero() } else { dm.is_multiple_of(e) };
                if !ok {
                    return Err(Error::InvalidHom { row: i, col: j });
                }
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix: matrix.reduce_rows(&tgt),
        })
    }

    pub fn from_i64_rows(source: &AbelianGroup<T>, target: &AbelianGroup<T>, rows: &[&[i64]]) -> Result<Self> {
        let matrix = if rows.is_empty() {
            IntMatrix::zeros(0, source.ngens())
        } else {
            IntMatrix::from_i64_rows(rows)
        };
        Self::new(source, target, matrix)
    }

    pub fn zero(source: &AbelianGroup<T>, target: &AbelianGroup<T>) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn identity(group: &AbelianGroup<T>) -> Self {
        Self::multiplication(group, &T::one())
    }

    /// `x -> n x`.
    pub fn multiplication(group: &AbelianGroup<T>, n: &T) -> Self {
        Self::new(group, group, IntMatrix::identity(group.ngens()).scale(n)).expect("scalar endomorphism")
    }

    pub fn source(&self) -> &AbelianGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup<T> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.matrix
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::Mismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        Self::new(&inner.source, &self.target, self.matrix.mul(&inner.matrix)?)
    }

    pub fn apply(&self, x: &GroupElement<T>) -> Result<GroupElement<T>> {
        if x.group() != &self.source {
            return Err(Error::Mismatch("element is not in the source".into()));
        }
        GroupElement::new(&self.target, self.matrix.mul_vec(x.coords())?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Self::new(&self.source, &self.target, self.matrix.add(&other.matrix)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Self::new(&self.source, &self.target, self.matrix.sub(&other.matrix)?)
    }

    pub fn negate(&self) -> Self {
        self.scale(&T::one().neg_exact())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(&self.source, &self.target, self.matrix.scale(k)).expect("multiples of a hom are homs")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("homomorphisms are not parallel".into()));
        }
        Ok(())
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (AbelianGroup<T>, GroupHom<T>) {
        let src = self.source.moduli();
        let gens = preimage_of_zero(&self.matrix, &self.target.moduli());
        let sub = subgroup(&gens, &src);
        let inc = GroupHom::new(&sub.group, &self.source, sub.inclusion).expect("kernel inclusion");
        (sub.group, inc)
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> (AbelianGroup<T>, GroupHom<T>) {
        let sub = subgroup(&self.matrix, &self.target.moduli());
        let inc = GroupHom::new(&sub.group, &self.target, sub.inclusion).expect("image inclusion");
        (sub.group, inc)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (AbelianGroup<T>, GroupHom<T>) {
        let c = quotient(&self.target.moduli(), &self.matrix);
        let proj = GroupHom::new(&self.target, &c.group, c.to_canonical).expect("cokernel projection");
        (c.group, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Whether `im(self) ⊆ im(other)`; both must share a target.
    pub fn image_within(&self, other: &Self) -> Result<bool> {
        if self.target != other.target {
            return Err(Error::Mismatch("images live in different groups".into()));
        }
        Ok(span_contains(&other.matrix, &self.matrix, &self.target.moduli()))
    }

    /// Whether the two maps have the same image; this decides subgroup
    /// equality for inclusions returned by [`kernel`](Self::kernel) and
    /// [`image`](Self::image).
    pub fn same_image(&self, other: &Self) -> Result<bool> {
        Ok(self.image_within(other)? && other.image_within(self)?)
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &GroupElement<T>) -> Result<Option<GroupElement<T>>> {
        if y.group() != &self.target {
            return Err(Error::Mismatch("element is not in the target".into()));
        }
        Ok(express_in(y.coords(), &self.matrix, &self.target.moduli())
            .map(|x| GroupElement::new(&self.source, x).expect("preimage coordinates")))
    }

    /// Two-sided inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_isomorphism() {
            return None;
        }
        let cols: Vec<Vec<T>> = (0..self.target.ngens())
            .map(|i| {
                let y = self.target.generator(i);
                self.preimage(&y)
                    .ok()
                    .flatten()
                    .expect("surjective")
                    .coords()
                    .to_vec()
            })
            .collect();
        Self::new(&self.target, &self.source, IntMatrix::from_columns(self.source.ngens(), &cols)).ok()
    }

    /// The map `source / n -> target` induced by `self`, provided `n * source`
    /// lies in the kernel; `quotient` is the projection `source -> source / n`.
    pub fn descend(&self, quotient: &GroupHom<T>) -> Result<Self> {
        if quotient.source != self.source {
            return Err(Error::Mismatch("quotient map has a different source".into()));
        }
        let q = quotient.target.clone();
        let cols: Vec<Vec<T>> = (0..q.ngens())
            .map(|i| {
                let lift = quotient
                    .preimage(&q.generator(i))?
                    .ok_or_else(|| Error::Mismatch("quotient map is not surjective".into()))?;
                Ok(self.apply(&lift)?.coords().to_vec())
            })
            .collect::<Result<_>>()?;
        Self::new(&q, &self.target, IntMatrix::from_columns(self.target.ngens(), &cols))
    }

    pub fn convert<S: Scalar>(&self) -> GroupHom<S> {
        GroupHom {
            source: self.source.convert(),
            target: self.target.convert(),
            matrix: self.matrix.convert(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = AbelianGroup<i64>;
    type H = GroupHom<i64>;

    fn c(n: i64) -> G {
        G::cyclic(n)
    }

    #[test]
    fn congruence_is_enforced() {
        // Z/4 -> Z/6: generator must land in {0, 3}
        assert!(H::from_i64_rows(&c(4), &c(6), &[&[3]]).is_ok());
        assert!(matches!(
            H::from_i64_rows(&c(4), &c(6), &[&[2]]),
            Err(Error::InvalidHom { row: 0, col: 0 })
        ));
        assert!(H::from_i64_rows(&c(2), &G::integers(), &[&[1]]).is_err());
        let h = H::from_i64_rows(&G::integers(), &c(5), &[&[-1]]).unwrap();
        assert_eq!(h.matrix()[(0, 0)], 4);
    }

    #[test]
    fn kernel_image_cokernel_of_doubling() {
        let two = H::multiplication(&c(4), &2);
        assert_eq!(two.kernel().0, c(2));
        assert_eq!(two.image().0, c(2));
        assert_eq!(two.cokernel().0, c(2));
        let z2 = H::multiplication(&G::integers(), &2);
        assert_eq!(z2.cokernel().0, c(2));
        assert_eq!(z2.kernel().0, G::trivial());
    }

    #[test]
    fn isomorphism_detection() {
        assert!(!H::multiplication(&c(4), &2).is_isomorphism());
        assert!(H::multiplication(&c(4), &3).is_isomorphism());
        let inv = H::multiplication(&c(4), &3).inverse().unwrap();
        assert_eq!(inv, H::multiplication(&c(4), &3));
    }

    #[test]
    fn compose_and_identity() {
        let f = H::from_i64_rows(&c(4), &c(8), &[&[2]]).unwrap();
        assert_eq!(f.compose(&H::identity(&c(4))).unwrap(), f);
        assert_eq!(H::identity(&c(8)).compose(&f).unwrap(), f);
        assert!(matches!(f.compose(&f), Err(Error::Mismatch(_))));
    }

    #[test]
    fn exactness_via_same_image() {
        // Z/2 -> Z/4 -> Z/2, 1 -> 2, reduction
        let f = H::from_i64_rows(&c(2), &c(4), &[&[2]]).unwrap();
        let g = H::from_i64_rows(&c(4), &c(2), &[&[1]]).unwrap();
        assert!(g.compose(&f).unwrap().is_zero());
        assert!(f.image().1.same_image(&g.kernel().1).unwrap());
        assert!(f.is_injective());
        assert!(g.is_surjective());
    }

    #[test]
    fn trivial_group_is_accepted() {
        let t = G::trivial();
        let z = H::zero(&t, &c(3));
        assert_eq!(z.kernel().0, t);
        assert_eq!(z.cokernel().0, c(3));
        assert!(H::identity(&t).is_isomorphism());
    }

    #[test]
    fn descend_to_quotient() {
        // Z -> Z/8, 1 -> 4 factors through Z/2
        let f = H::from_i64_rows(&G::integers(), &c(8), &[&[4]]).unwrap();
        let (_, proj) = H::multiplication(&G::integers(), &2).cokernel();
        let bar = f.descend(&proj).unwrap();
        assert_eq!(bar.source(), &c(2));
        assert_eq!(bar.matrix()[(0, 0)], 4);
    }
}
