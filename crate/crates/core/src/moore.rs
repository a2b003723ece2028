//! Moore spaces `M(A, n)` modelled by their homology group `A`: the canonical
//! exact couple `D_X`, homotopy classes `[X, Y] = Hom(D_X, D_Y)`, and the
//! stable homotopy groups `π_q^S(X)` for stems `q = 0..7`.
//!
//! The degree `n` never enters: in the stable range everything depends on `A`
//! alone, and results are indexed by the stem `q = i - n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_couples::{CoupleMorphism, ExactCouple, MorphismGroup};
use crate::fga::lattice::quotient;
use crate::fga::{quotient_map, torsion_inclusion, AbelianGroup, GroupHom, HomGroup};
use crate::functors::{ext, tensor, tor, Lambda};
use crate::scalar::Scalar;

/// Highest stem computed.
pub const MAX_STEM: i64 = 7;

/// `π_q^S` of the sphere spectrum for `q = 0..7`; zero outside that range
/// below zero.
pub fn sphere_stem<T: Scalar>(q: i64) -> Result<AbelianGroup<T>> {
    let n: i64 = match q {
        q if q < 0 => return Ok(AbelianGroup::trivial()),
        0 => return Ok(AbelianGroup::integers()),
        1 | 2 | 6 => 2,
        3 => 24,
        4 | 5 => 1,
        7 => 240,
        _ => return Err(Error::OutOfRange(format!("stem {q} is beyond {MAX_STEM}"))),
    };
    Ok(AbelianGroup::cyclic(T::from_i64_exact(n)))
}

/// `M(A, n)` for a symbolic `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreSpace<T> {
    pub homology: AbelianGroup<T>,
}

impl<T: Scalar> MooreSpace<T> {
    pub fn new(homology: AbelianGroup<T>) -> Self {
        Self { homology }
    }

    pub fn couple(&self) -> Result<ExactCouple<T>> {
        canonical_couple(&self.homology)
    }

    pub fn stable_stem(&self, q: i64) -> Result<AbelianGroup<T>> {
        stable_stem(&self.homology, q)
    }

    pub fn stem_table(&self) -> Result<StemTable<T>> {
        stem_table(&self.homology)
    }
}

/// `D_X` for `X = M(A, n)` together with the maps it is built from:
/// `0 -> A/2 -f-> A' -g-> A₂ -> 0` with `α = f ∘ (A -> A/2)` and
/// `β = (A₂ -> A) ∘ g`.
#[derive(Clone, Debug)]
pub struct CanonicalCouple<T> {
    pub couple: ExactCouple<T>,
    /// `A -> A/2`
    pub mod_two: GroupHom<T>,
    /// `A₂ -> A`
    pub two_torsion: GroupHom<T>,
    /// `A/2 -> A'`
    pub alpha_bar: GroupHom<T>,
    /// `A' -> A₂`
    pub beta_bar: GroupHom<T>,
}

impl<T: Scalar> CanonicalCouple<T> {
    /// `A'` is the extension of `A₂` by `A/2` whose `λ`-class is the natural
    /// map `A₂ -> A -> A/2`.
    pub fn new(a: &AbelianGroup<T>) -> Result<Self> {
        let two = T::from_i64_exact(2);
        let inc = torsion_inclusion(a, &two)?;
        let proj = quotient_map(a, &two)?;
        let natural = proj.compose(&inc)?;

        let lambda = Lambda::new(inc.source(), proj.target())?;
        // λ lands in Hom((A₂)₂, (A/2)/2); both identifications are isomorphisms
        let transported = lambda.mod_two().compose(&natural)?.compose(lambda.two_torsion())?;
        let target = lambda.hom.coords_of(&transported)?;
        let class = lambda
            .map
            .preimage(&target)?
            .ok_or_else(|| Error::Mismatch("λ is not surjective on Z/2-modules".into()))?;
        let ext = lambda.ext.realize(&class)?.realization;

        let alpha = ext.inclusion.compose(&proj)?;
        let beta = inc.compose(&ext.projection)?;
        Ok(Self {
            couple: ExactCouple::new(alpha, beta)?,
            mod_two: proj,
            two_torsion: inc,
            alpha_bar: ext.inclusion,
            beta_bar: ext.projection,
        })
    }
}

/// The exact couple `D_X` of `X = M(A, n)`.
pub fn canonical_couple<T: Scalar>(a: &AbelianGroup<T>) -> Result<ExactCouple<T>> {
    Ok(CanonicalCouple::new(a)?.couple)
}

/// `A'` predicted summand by summand: `Z/2` per free summand, `Z/4` per
/// factor `≡ 2 (mod 4)`, `Z/2 + Z/2` per factor divisible by 4.
pub fn closed_form_phi2<T: Scalar>(a: &AbelianGroup<T>) -> AbelianGroup<T> {
    let two = T::from_i64_exact(2);
    let four = T::from_i64_exact(4);
    let mut cyclics: Vec<T> = vec![two.clone(); a.rank()];
    for d in a.torsion() {
        if d.is_multiple_of(&four) {
            cyclics.push(two.clone());
            cyclics.push(two.clone());
        } else if d.is_multiple_of(&two) {
            cyclics.push(four.clone());
        }
    }
    AbelianGroup::from_cyclics(&cyclics)
}

/// `[M(A, n), M(B, n)] = Hom(D_A, D_B)`.
pub fn homotopy_classes<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<MorphismGroup<T>> {
    MorphismGroup::new(&canonical_couple(a)?, &canonical_couple(b)?)
}

/// An isomorphism `D -> canonical_couple(Φ₁ D)` with `f₁ = id`.
pub fn normalize<T: Scalar>(d: &ExactCouple<T>) -> Result<(ExactCouple<T>, CoupleMorphism<T>)> {
    d.ensure_valid()?;
    let canonical = canonical_couple(d.phi1())?;
    let identity = CoupleMorphism {
        f1: GroupHom::identity(d.phi1()),
        f2: GroupHom::identity(d.phi2()),
    };
    if d.phi2() == canonical.phi2() && identity.commutes(d, &canonical) {
        return Ok((canonical, identity));
    }

    let group = MorphismGroup::new(d, &canonical)?;
    let (forget, h1) = group.forgetful()?;
    let id_coords = h1.coords_of(&GroupHom::identity(d.phi1()))?;
    let base = forget.preimage(&id_coords)?.ok_or(Error::NoIsomorphism)?;

    // any lift of the identity is an isomorphism by the five lemma; the
    // search over the (finite, 2-torsion) fibre only guards that claim
    let (fibre, inc) = forget.kernel();
    let order = fibre.order().ok_or(Error::NoIsomorphism)?;
    let moduli = fibre.moduli();
    let total = order.to_u64().ok_or(Error::NoIsomorphism)?;
    for index in 0..total {
        let mut rest = index;
        let coords: Vec<T> = moduli
            .iter()
            .map(|m| {
                let m = m.to_u64().expect("small fibre");
                let c = rest % m;
                rest /= m;
                T::from_u64_exact(c)
            })
            .collect();
        let k = crate::fga::GroupElement::new(&fibre, coords)?;
        let x = base.add(&inc.apply(&k)?)?;
        let m = group.morphism_at(&x)?;
        if m.f1 == GroupHom::identity(d.phi1()) && m.is_isomorphism() {
            return Ok((canonical, m));
        }
    }
    Err(Error::NoIsomorphism)
}

/// The pushout of `X <-f- C -g-> Y`: the cokernel of `c ↦ (f(c), -g(c))`.
pub fn pushout<T: Scalar>(f: &GroupHom<T>, g: &GroupHom<T>) -> Result<AbelianGroup<T>> {
    if f.source() != g.source() {
        return Err(Error::Mismatch(format!(
            "pushout legs start at {} and {}",
            f.source(),
            g.source()
        )));
    }
    let mut moduli = f.target().moduli();
    moduli.extend(g.target().moduli());
    let image = f.matrix().vcat(&g.matrix().neg());
    Ok(quotient(&moduli, &image).group)
}

/// The legs `A' <- A/2 -> A/24` of the pushout giving `π_3^S`: the first is
/// `ᾱ`, the second is induced by multiplication by 12.
pub fn pi3_legs<T: Scalar>(a: &AbelianGroup<T>) -> Result<(GroupHom<T>, GroupHom<T>)> {
    let cc = CanonicalCouple::new(a)?;
    let n = |v: i64| T::from_i64_exact(v);
    let twelve = quotient_map(a, &n(24))?.compose(&GroupHom::multiplication(a, &n(12)))?;
    Ok((cc.alpha_bar, twelve.descend(&cc.mod_two)?))
}

/// `π_q^S(M(A, n))` in stem degree `q` for `0 <= q <= 7`.
pub fn stable_stem<T: Scalar>(a: &AbelianGroup<T>, q: i64) -> Result<AbelianGroup<T>> {
    let n = |v: i64| T::from_i64_exact(v);
    match q {
        0 => Ok(a.clone()),
        1 | 6 => a.quotient_by_n(&n(2)),
        2 => Ok(canonical_couple(a)?.phi2().clone()),
        3 => {
            let (f, g) = pi3_legs(a)?;
            pushout(&f, &g)
        }
        4 => a.n_torsion(&n(24)),
        5 => Ok(AbelianGroup::trivial()),
        7 => Ok(a.quotient_by_n(&n(240))?.direct_sum(&a.n_torsion(&n(2))?)),
        _ => Err(Error::OutOfRange(format!("stem {q} outside 0..={MAX_STEM}"))),
    }
}

/// `π_q^S(X)` for `q = 0..7`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemTable<T> {
    entries: Vec<AbelianGroup<T>>,
}

impl<T: Scalar> StemTable<T> {
    pub fn get(&self, q: i64) -> Option<&AbelianGroup<T>> {
        usize::try_from(q).ok().and_then(|i| self.entries.get(i))
    }

    pub fn entries(&self) -> &[AbelianGroup<T>] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &AbelianGroup<T>)> {
        self.entries.iter().enumerate().map(|(q, g)| (q as i64, g))
    }
}

impl<T: Scalar> fmt::Display for StemTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, g) in self.iter() {
            writeln!(f, "{q}\t{g}")?;
        }
        Ok(())
    }
}

pub fn stem_table<T: Scalar>(a: &AbelianGroup<T>) -> Result<StemTable<T>> {
    let entries = (0..=MAX_STEM).map(|q| stable_stem(a, q)).collect::<Result<Vec<_>>>()?;
    debug_assert!(entries[5].is_trivial());
    Ok(StemTable { entries })
}

fn finite_order<T: Scalar>(g: &AbelianGroup<T>) -> Result<T> {
    g.order().ok_or(Error::Infinite)
}

/// `|π_q^S(X)| = |A ⊗ π_q^S| · |Tor(A, π_(q-1)^S)|`.
pub fn ahss_order_check<T: Scalar>(a: &AbelianGroup<T>, q: i64) -> Result<bool> {
    if !a.is_finite() {
        return Err(Error::Infinite);
    }
    let stem = stable_stem(a, q)?;
    let bottom = tensor(a, &sphere_stem(q)?);
    let top = tor(a, &sphere_stem(q - 1)?);
    Ok(finite_order(&stem)? == finite_order(&bottom)?.mul_exact(&finite_order(&top)?))
}

/// `|[X, Y]| = |Ext(A, B/2)| · |Hom(A, B)|`.
pub fn homotopy_ses_order_check<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<bool> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Infinite);
    }
    let classes = homotopy_classes(a, b)?;
    let e = ext(a, &b.quotient_by_n(&T::from_i64_exact(2))?);
    let h = HomGroup::new(a, b);
    Ok(finite_order(classes.group())? == finite_order(&e)?.mul_exact(&finite_order(h.group())?))
}
