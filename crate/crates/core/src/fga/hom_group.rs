use super::group::{AbelianGroup, GroupElement};
use super::hom::GroupHom;
use super::lattice::{canonicalize, Canonical};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One matrix position `(row, col)` whose admissible entries are the
/// multiples of `step`, forming a cyclic group of order `modulus`.
#[derive(Clone, Debug)]
struct Slot<T> {
    row: usize,
    col: usize,
    step: T,
    modulus: T,
}

/// `Hom(A, B)` in canonical form, with generating homomorphisms.
///
/// A homomorphism decomposes entrywise: position `(i, j)` contributes
/// `Hom(C_j, C'_i)` for the cyclic summands of source and target, so the whole
/// group is a direct sum of cyclic slots that is then canonicalized.
#[derive(Clone, Debug)]
pub struct HomGroup<T> {
    source: AbelianGroup<T>,
    target: AbelianGroup<T>,
    slots: Vec<Slot<T>>,
    canonical: Canonical<T>,
    generators: Vec<GroupHom<T>>,
}

impl<T: Scalar> HomGroup<T> {
    pub fn new(source: &AbelianGroup<T>, target: &AbelianGroup<T>) -> Self {
        let src = source.moduli();
        let tgt = target.moduli();
        let mut slots = Vec::new();
        for (i, e) in tgt.iter().enumerate() {
            for (j, d) in src.iter().enumerate() {
                let slot = match (d.is_zero(), e.is_zero()) {
                    (true, _) => Some((T::one(), e.clone())),
                    (false, true) => None,
                    (false, false) => {
                        let g = d.gcd_exact(e);
                        (!g.is_one()).then(|| (e.div_floor(&g), g))
                    }
                };
                if let Some((step, modulus)) = slot {
                    slots.push(Slot {
                        row: i,
                        col: j,
                        step,
                        modulus,
                    });
                }
            }
        }
        let moduli: Vec<T> = slots.iter().map(|s| s.modulus.clone()).collect();
        let canonical = canonicalize(moduli.len(), &IntMatrix::diagonal(&moduli));
        let mut out = Self {
            source: source.clone(),
            target: target.clone(),
            slots,
            canonical,
            generators: Vec::new(),
        };
        out.generators = (0..out.group().ngens())
            .map(|k| out.from_slot_coords(&out.canonical.from_canonical.column(k)))
            .collect();
        out
    }

    pub fn group(&self) -> &AbelianGroup<T> {
        &self.canonical.group
    }

    pub fn source(&self) -> &AbelianGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup<T> {
        &self.target
    }

    /// Generating homomorphisms, one per canonical generator of the group.
    pub fn generators(&self) -> &[GroupHom<T>] {
        &self.generators
    }

    /// Generators paired with their orders (0 for infinite order).
    pub fn generators_with_orders(&self) -> Vec<(GroupHom<T>, T)> {
        self.generators
            .iter()
            .cloned()
            .zip(self.group().moduli())
            .collect()
    }

    fn from_slot_coords(&self, coords: &[T]) -> GroupHom<T> {
        let mut m = IntMatrix::zeros(self.target.ngens(), self.source.ngens());
        for (s, c) in self.slots.iter().zip(coords) {
            m[(s.row, s.col)] = c.mul_exact(&s.step);
        }
        GroupHom::new(&self.source, &self.target, m).expect("slot combination is a homomorphism")
    }

    /// Coordinates of `f` with respect to the canonical generators.
    pub fn coords_of(&self, f: &GroupHom<T>) -> Result<GroupElement<T>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Mismatch("homomorphism is not in this Hom group".into()));
        }
        let slot_coords: Vec<T> = self
            .slots
            .iter()
            .map(|s| f.matrix()[(s.row, s.col)].div_floor(&s.step))
            .collect();
        GroupElement::new(self.group(), self.canonical.to_canonical.mul_vec(&slot_coords)?)
    }

    /// The homomorphism with the given canonical coordinates.
    pub fn hom_at(&self, x: &GroupElement<T>) -> Result<GroupHom<T>> {
        if x.group() != self.group() {
            return Err(Error::Mismatch("coordinates are not in this Hom group".into()));
        }
        let slot_coords = self.canonical.from_canonical.mul_vec(x.coords())?;
        Ok(self.from_slot_coords(&slot_coords))
    }
}

/// `Hom(A, B)` with generators.
pub fn hom_group<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> HomGroup<T> {
    HomGroup::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = AbelianGroup<i64>;

    #[test]
    fn small_hom_groups() {
        let a = G::new(1, vec![2, 6]).unwrap();
        assert_eq!(hom_group(&G::integers(), &a).group(), &a);
        assert_eq!(hom_group(&G::cyclic(4), &G::cyclic(6)).group(), &G::cyclic(2));
        assert_eq!(hom_group(&G::cyclic(2), &G::integers()).group(), &G::trivial());
        assert_eq!(hom_group(&G::integers(), &G::integers()).group(), &G::integers());
    }

    #[test]
    fn coordinates_round_trip() {
        let a = G::new(1, vec![4]).unwrap();
        let b = G::new(0, vec![2, 8]).unwrap();
        let h = hom_group(&a, &b);
        for (k, g) in h.generators().iter().enumerate() {
            let x = h.coords_of(g).unwrap();
            assert_eq!(x, h.group().generator(k));
            assert_eq!(&h.hom_at(&x).unwrap(), g);
        }
    }

    #[test]
    fn generator_orders_match_group() {
        let h = hom_group(&G::cyclic(12), &G::new(0, vec![2, 8]).unwrap());
        for (g, order) in h.generators_with_orders() {
            assert!(g.scale(&order).is_zero());
        }
    }
}
