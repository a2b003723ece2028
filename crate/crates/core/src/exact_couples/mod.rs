//! The category of exact couples `A -2-> A -α-> B -β-> A` with `αβ = 2`.

mod file;

use std::fmt;

pub use file::{parse_couple, write_couple};

use crate::error::{Error, Result};
use crate::fga::lattice::{express_in, preimage_of_zero, subgroup};
use crate::fga::{AbelianGroup, GroupElement, GroupHom, HomGroup, IntMatrix};
use crate::scalar::Scalar;

/// An object `(A, B, α: A -> B, β: B -> A)`. Construction only checks that the
/// maps have the right shape; [`validate`](Self::validate) checks the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCouple<T> {
    a: AbelianGroup<T>,
    b: AbelianGroup<T>,
    alpha: GroupHom<T>,
    beta: GroupHom<T>,
}

/// A failed axiom of an exact couple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `ker α ≠ im 2`
    KernelOfAlpha,
    /// `ker β ≠ im α`
    KernelOfBeta,
    /// `A₂ ≠ im β`
    ImageOfBeta,
    /// `α ∘ β ≠ 2` on `B`
    NotDoubling,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::KernelOfAlpha => "not exact at A (ker alpha != im 2)",
            Violation::KernelOfBeta => "not exact at B (ker beta != im alpha)",
            Violation::ImageOfBeta => "not exact at A (ker 2 != im beta)",
            Violation::NotDoubling => "alpha after beta is not multiplication by 2",
        })
    }
}

impl<T: Scalar> ExactCouple<T> {
    pub fn new(alpha: GroupHom<T>, beta: GroupHom<T>) -> Result<Self> {
        if alpha.source() != beta.target() || alpha.target() != beta.source() {
            return Err(Error::Mismatch(format!(
                "alpha: {} -> {} and beta: {} -> {} do not form a couple",
                alpha.source(),
                alpha.target(),
                beta.source(),
                beta.target()
            )));
        }
        Ok(Self {
            a: alpha.source().clone(),
            b: alpha.target().clone(),
            alpha,
            beta,
        })
    }

    /// Like [`new`](Self::new) but rejects couples that fail [`validate`](Self::validate).
    pub fn checked(alpha: GroupHom<T>, beta: GroupHom<T>) -> Result<Self> {
        let d = Self::new(alpha, beta)?;
        d.ensure_valid()?;
        Ok(d)
    }

    pub fn alpha(&self) -> &GroupHom<T> {
        &self.alpha
    }

    pub fn beta(&self) -> &GroupHom<T> {
        &self.beta
    }

    /// `Φ₁(D) = A`
    pub fn phi1(&self) -> &AbelianGroup<T> {
        &self.a
    }

    /// `Φ₂(D) = B`
    pub fn phi2(&self) -> &AbelianGroup<T> {
        &self.b
    }

    /// Every failed axiom; empty iff the couple is an object of the category.
    pub fn validate(&self) -> Vec<Violation> {
        let two = T::from_i64_exact(2);
        let double_a = GroupHom::multiplication(&self.a, &two);
        let mut out = Vec::new();
        let same = |x: &GroupHom<T>, y: &GroupHom<T>| x.same_image(y).unwrap_or(false);
        if !same(&self.alpha.kernel().1, &double_a) {
            out.push(Violation::KernelOfAlpha);
        }
        if !same(&self.beta.kernel().1, &self.alpha) {
            out.push(Violation::KernelOfBeta);
        }
        if !same(&double_a.kernel().1, &self.beta) {
            out.push(Violation::ImageOfBeta);
        }
        let ab = self.alpha.compose(&self.beta).expect("shapes checked at construction");
        if ab != GroupHom::multiplication(&self.b, &two) {
            out.push(Violation::NotDoubling);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCouple(v))
        }
    }

    /// Moves the couple along an automorphism `u` of `B`:
    /// `(A, B, u α, β u⁻¹)`.
    pub fn transport(&self, u: &GroupHom<T>) -> Result<Self> {
        let inv = u
            .inverse()
            .ok_or_else(|| Error::Mismatch("transport needs an automorphism of B".into()))?;
        Self::new(u.compose(&self.alpha)?, self.beta.compose(&inv)?)
    }

    pub fn convert<S: Scalar>(&self) -> ExactCouple<S> {
        ExactCouple {
            a: self.a.convert(),
            b: self.b.convert(),
            alpha: self.alpha.convert(),
            beta: self.beta.convert(),
        }
    }
}

/// `(f₁: A -> A'', f₂: B -> B'')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoupleMorphism<T> {
    pub f1: GroupHom<T>,
    pub f2: GroupHom<T>,
}

impl<T: Scalar> CoupleMorphism<T> {
    pub fn identity(d: &ExactCouple<T>) -> Self {
        Self {
            f1: GroupHom::identity(&d.a),
            f2: GroupHom::identity(&d.b),
        }
    }

    /// Multiplication by `n` on both components.
    pub fn multiplication(d: &ExactCouple<T>, n: &T) -> Self {
        Self {
            f1: GroupHom::multiplication(&d.a, n),
            f2: GroupHom::multiplication(&d.b, n),
        }
    }

    pub fn doubling(d: &ExactCouple<T>) -> Self {
        Self::multiplication(d, &T::from_i64_exact(2))
    }

    pub fn zero(d: &ExactCouple<T>, d2: &ExactCouple<T>) -> Self {
        Self {
            f1: GroupHom::zero(&d.a, &d2.a),
            f2: GroupHom::zero(&d.b, &d2.b),
        }
    }

    /// `self ∘ inner`, componentwise.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        Ok(Self {
            f1: self.f1.compose(&inner.f1)?,
            f2: self.f2.compose(&inner.f2)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            f1: self.f1.add(&other.f1)?,
            f2: self.f2.add(&other.f2)?,
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            f1: self.f1.scale(k),
            f2: self.f2.scale(k),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_isomorphism() && self.f2.is_isomorphism()
    }

    /// Whether both squares commute: `f₂α = α''f₁` and `f₁β = β''f₂`.
    pub fn commutes(&self, source: &ExactCouple<T>, target: &ExactCouple<T>) -> bool {
        let shapes = self.f1.source() == &source.a
            && self.f1.target() == &target.a
            && self.f2.source() == &source.b
            && self.f2.target() == &target.b;
        shapes
            && self.f2.compose(&source.alpha).ok() == target.alpha.compose(&self.f1).ok()
            && self.f1.compose(&source.beta).ok() == target.beta.compose(&self.f2).ok()
    }
}

/// `Hom(D, D'')` with explicit generating morphisms.
#[derive(Clone, Debug)]
pub struct MorphismGroup<T> {
    source: ExactCouple<T>,
    target: ExactCouple<T>,
    h1: HomGroup<T>,
    h2: HomGroup<T>,
    group: AbelianGroup<T>,
    /// Canonical generators in `Hom(A, A'') ⊕ Hom(B, B'')` coordinates.
    inclusion: IntMatrix<T>,
    generators: Vec<CoupleMorphism<T>>,
}

impl<T: Scalar> MorphismGroup<T> {
    /// The kernel of `(f₁, f₂) ↦ (f₂α − α''f₁, f₁β − β''f₂)`.
    pub fn new(source: &ExactCouple<T>, target: &ExactCouple<T>) -> Result<Self> {
        source.ensure_valid()?;
        target.ensure_valid()?;
        let h1 = HomGroup::new(&source.a, &target.a);
        let h2 = HomGroup::new(&source.b, &target.b);
        let k1 = HomGroup::new(&source.a, &target.b);
        let k2 = HomGroup::new(&source.b, &target.a);

        let mut domain = h1.group().moduli();
        domain.extend(h2.group().moduli());
        let mut codomain = k1.group().moduli();
        codomain.extend(k2.group().moduli());

        let mut cols: Vec<Vec<T>> = Vec::new();
        for f1 in h1.generators() {
            let mut col = k1.coords_of(&target.alpha.compose(f1)?.negate())?.coords().to_vec();
            col.extend(k2.coords_of(&f1.compose(&source.beta)?)?.coords().iter().cloned());
            cols.push(col);
        }
        for f2 in h2.generators() {
            let mut col = k1.coords_of(&f2.compose(&source.alpha)?)?.coords().to_vec();
            col.extend(k2.coords_of(&target.beta.compose(f2)?.negate())?.coords().iter().cloned());
            cols.push(col);
        }
        let constraint = IntMatrix::from_columns(codomain.len(), &cols);
        let solutions = preimage_of_zero(&constraint, &codomain);
        let sub = subgroup(&solutions, &domain);

        let mut out = Self {
            source: source.clone(),
            target: target.clone(),
            h1,
            h2,
            group: sub.group,
            inclusion: sub.inclusion,
            generators: Vec::new(),
        };
        out.generators = (0..out.group.ngens())
            .map(|k| out.from_domain(&out.inclusion.column(k)))
            .collect::<Result<_>>()?;
        Ok(out)
    }

    fn from_domain(&self, v: &[T]) -> Result<CoupleMorphism<T>> {
        let n1 = self.h1.group().ngens();
        let x1 = GroupElement::new(self.h1.group(), v[..n1].to_vec())?;
        let x2 = GroupElement::new(self.h2.group(), v[n1..].to_vec())?;
        Ok(CoupleMorphism {
            f1: self.h1.hom_at(&x1)?,
            f2: self.h2.hom_at(&x2)?,
        })
    }

    pub fn group(&self) -> &AbelianGroup<T> {
        &self.group
    }

    pub fn source(&self) -> &ExactCouple<T> {
        &self.source
    }

    pub fn target(&self) -> &ExactCouple<T> {
        &self.target
    }

    pub fn generators(&self) -> &[CoupleMorphism<T>] {
        &self.generators
    }

    /// The morphism with the given coordinates.
    pub fn morphism_at(&self, x: &GroupElement<T>) -> Result<CoupleMorphism<T>> {
        if x.group() != &self.group {
            return Err(Error::Mismatch("coordinates are not in this morphism group".into()));
        }
        let mut domain = self.h1.group().moduli();
        domain.extend(self.h2.group().moduli());
        let v = self.inclusion.mul_vec(x.coords())?;
        let v: Vec<T> = v.iter().zip(&domain).map(|(a, m)| a.reduce(m)).collect();
        self.from_domain(&v)
    }

    /// Coordinates of a morphism, or an error if it does not commute.
    pub fn coords_of(&self, m: &CoupleMorphism<T>) -> Result<GroupElement<T>> {
        if !m.commutes(&self.source, &self.target) {
            return Err(Error::Mismatch("not a morphism between these couples".into()));
        }
        let mut v = self.h1.coords_of(&m.f1)?.coords().to_vec();
        v.extend(self.h2.coords_of(&m.f2)?.coords().iter().cloned());
        let mut domain = self.h1.group().moduli();
        domain.extend(self.h2.group().moduli());
        let c = express_in(&v, &self.inclusion, &domain)
            .ok_or_else(|| Error::Mismatch("morphism outside the solution lattice".into()))?;
        GroupElement::new(&self.group, c)
    }

    /// The forgetful map `Hom(D, D'') -> Hom(A, A'')`, `(f₁, f₂) ↦ f₁`.
    pub fn forgetful(&self) -> Result<(GroupHom<T>, &HomGroup<T>)> {
        let n1 = self.h1.group().ngens();
        let rows: Vec<usize> = (0..n1).collect();
        let m = self.inclusion.select_rows(&rows);
        Ok((GroupHom::new(&self.group, self.h1.group(), m)?, &self.h1))
    }
}

/// `Hom(D, D'')` and its generators.
pub fn morphism_group<T: Scalar>(
    d: &ExactCouple<T>,
    d2: &ExactCouple<T>,
) -> Result<(AbelianGroup<T>, Vec<CoupleMorphism<T>>)> {
    let m = MorphismGroup::new(d, d2)?;
    Ok((m.group.clone(), m.generators))
}
