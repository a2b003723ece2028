use std::fmt;

use super::lattice::{canonicalize, quotient, subgroup};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finitely generated abelian group `Z^rank + Z/d_1 + ... + Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Generators are ordered free summands first, then torsion summands in
/// invariant-factor order. Homomorphism matrices and element coordinates
/// always refer to this ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianGroup<T> {
    rank: usize,
    torsion: Vec<T>,
}

impl<T: Scalar> AbelianGroup<T> {
    pub fn new(rank: usize, torsion: Vec<T>) -> Result<Self> {
        let two = T::from_i64_exact(2);
        if let Some(d) = torsion.iter().find(|d| **d < two) {
            return Err(Error::InvalidGroup(format!("factor {d} is below 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(Self { rank, torsion })
    }

    pub(crate) fn new_unchecked(rank: usize, torsion: Vec<T>) -> Self {
        debug_assert!(Self::new(rank, torsion.clone()).is_ok());
        Self { rank, torsion }
    }

    pub fn trivial() -> Self {
        Self {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: T) -> Self {
        Self::from_cyclics(&[n])
    }

    /// The integers.
    pub fn integers() -> Self {
        Self::free(1)
    }

    /// Canonical form of a direct sum of cyclic groups `Z/m_i` (0 means `Z`).
    pub fn from_cyclics(moduli: &[T]) -> Self {
        let moduli: Vec<T> = moduli.iter().map(T::abs_exact).collect();
        canonicalize(moduli.len(), &IntMatrix::diagonal(&moduli)).group
    }

    /// Cokernel of a relation matrix with one row per relation and one column
    /// per generator.
    pub fn from_presentation(relations: &IntMatrix<T>) -> Self {
        canonicalize(relations.cols(), &relations.transpose()).group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each canonical generator, with 0 standing for infinite order.
    pub fn moduli(&self) -> Vec<T> {
        std::iter::repeat(T::zero())
            .take(self.rank)
            .chain(self.torsion.iter().cloned())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<T> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(T::one(), |acc, d| acc.mul_exact(d)))
    }

    /// Whether `2x = 0` for every element, i.e. the group is a `Z/2`-module.
    pub fn is_elementary_two(&self) -> bool {
        let two = T::from_i64_exact(2);
        self.rank == 0 && self.torsion.iter().all(|d| *d == two)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = self.moduli();
        m.extend(other.moduli());
        Self::from_cyclics(&m)
    }

    /// `A / nA`.
    pub fn quotient_by_n(&self, n: &T) -> Result<Self> {
        let n = positive(n)?;
        let moduli = self.moduli();
        let multiples = IntMatrix::diagonal(&vec![n; moduli.len()]);
        Ok(quotient(&moduli, &multiples).group)
    }

    /// `{x : nx = 0}`.
    pub fn n_torsion(&self, n: &T) -> Result<Self> {
        let n = positive(n)?;
        let moduli = self.moduli();
        let gens = super::lattice::preimage_of_zero(
            &IntMatrix::diagonal(&vec![n; moduli.len()]),
            &moduli,
        );
        Ok(subgroup(&gens, &moduli).group)
    }

    pub fn zero_element(&self) -> GroupElement<T> {
        GroupElement {
            group: self.clone(),
            coords: vec![T::zero(); self.ngens()],
        }
    }

    /// The `i`-th canonical generator as an element.
    pub fn generator(&self, i: usize) -> GroupElement<T> {
        let mut coords = vec![T::zero(); self.ngens()];
        coords[i] = T::one();
        GroupElement::new(self, coords).expect("generator coordinates")
    }

    /// Converts the factor list to another scalar type.
    pub fn convert<S: Scalar>(&self) -> AbelianGroup<S> {
        AbelianGroup {
            rank: self.rank,
            torsion: self
                .torsion
                .iter()
                .map(|d| d.to_string().parse::<S>().ok().expect("scalar conversion"))
                .collect(),
        }
    }

    /// Renders with `ℤ` and `⊕` instead of ASCII.
    pub fn to_unicode(&self) -> String {
        self.render("ℤ", " ⊕ ")
    }

    fn render(&self, z: &str, plus: &str) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(z.to_string()),
            r => parts.push(format!("{z}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("{z}/{d}")));
        parts.join(plus)
    }
}

fn positive<T: Scalar>(n: &T) -> Result<T> {
    if n.is_positive() {
        Ok(n.clone())
    } else {
        Err(Error::OutOfRange(format!("n = {n} must be positive")))
    }
}

/// `Z^r + Z/d1 + ...`, with `0` for the trivial group.
impl<T: Scalar> fmt::Display for AbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("Z", " + "))
    }
}

/// An element in canonical coordinates; torsion coordinates are reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement<T> {
    group: AbelianGroup<T>,
    coords: Vec<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn new(group: &AbelianGroup<T>, coords: Vec<T>) -> Result<Self> {
        if coords.len() != group.ngens() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                group.ngens(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(group.moduli())
            .map(|(c, m)| c.reduce(&m))
            .collect();
        Ok(Self {
            group: group.clone(),
            coords,
        })
    }

    pub fn group(&self) -> &AbelianGroup<T> {
        &self.group
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Mismatch("elements of different groups".into()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add_exact(b))
            .collect();
        Self::new(&self.group, coords)
    }

    pub fn neg(&self) -> Self {
        self.scale(&T::one().neg_exact())
    }

    pub fn scale(&self, k: &T) -> Self {
        let coords = self.coords.iter().map(|a| a.mul_exact(k)).collect();
        Self::new(&self.group, coords).expect("same group")
    }

    /// Order of the element, or `None` for infinite order.
    pub fn order(&self) -> Option<T> {
        let mut acc = T::one();
        for (c, m) in self.coords.iter().zip(self.group.moduli()) {
            if c.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            let o = m.div_floor(&c.gcd_exact(&m));
            acc = acc.lcm(&o);
        }
        Some(acc)
    }
}
