//! Tensor product, Tor and Ext of finitely generated abelian groups, and the
//! natural map `λ : Ext(A, B) -> Hom(A₂, B/2)`.
//!
//! Tor and Ext are computed from the canonical free resolution
//! `0 -> Z^t -> Z^(r+t) -> A -> 0` whose relation map sends the `j`-th basis
//! vector to `d_j` times the `j`-th torsion generator. Ext classes are stored
//! as cocycles: one element of `B` per torsion generator of `A`.

use crate::error::{Error, Result};
use crate::fga::lattice::{canonicalize, preimage_of_zero, quotient, subgroup, Canonical};
use crate::fga::{quotient_map, torsion_inclusion, AbelianGroup, GroupElement, GroupHom, HomGroup, IntMatrix};
use crate::scalar::Scalar;

/// `A ⊗ B`.
pub fn tensor<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> AbelianGroup<T> {
    // generator a_j ⊗ b_i, killed by the order of a_j and by the order of b_i
    let (am, bm) = (a.moduli(), b.moduli());
    let n = am.len() * bm.len();
    let mut rel = IntMatrix::zeros(n, 2 * n);
    for (j, d) in am.iter().enumerate() {
        for (i, e) in bm.iter().enumerate() {
            let g = j * bm.len() + i;
            rel[(g, 2 * g)] = d.clone();
            rel[(g, 2 * g + 1)] = e.clone();
        }
    }
    canonicalize(n, &rel).group
}

/// Moduli of `B^t` and the block-diagonal matrix `diag(d_1 I, ..., d_t I)`.
fn torsion_blocks<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> (Vec<T>, IntMatrix<T>) {
    let bm = b.moduli();
    let t = a.torsion().len();
    let k = bm.len();
    let moduli: Vec<T> = (0..t).flat_map(|_| bm.iter().cloned()).collect();
    let mut m = IntMatrix::zeros(t * k, t * k);
    for (j, d) in a.torsion().iter().enumerate() {
        for i in 0..k {
            m[(j * k + i, j * k + i)] = d.clone();
        }
    }
    (moduli, m)
}

/// `Tor(A, B) = ker(B^t -> B^t)` with the resolution matrix applied blockwise.
pub fn tor<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> AbelianGroup<T> {
    let (moduli, m) = torsion_blocks(a, b);
    let gens = preimage_of_zero(&m, &moduli);
    subgroup(&gens, &moduli).group
}

/// `Ext(A, B)`.
pub fn ext<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> AbelianGroup<T> {
    ExtGroup::new(a, b).group().clone()
}

/// `Ext(A, B)` as the cokernel of `Hom(Z^(r+t), B) -> Hom(Z^t, B)`, keeping the
/// data needed to move between classes, cocycles and extensions.
#[derive(Clone, Debug)]
pub struct ExtGroup<T> {
    a: AbelianGroup<T>,
    b: AbelianGroup<T>,
    /// Presentation over cocycle coordinates `B^t`.
    canonical: Canonical<T>,
    cocycle_moduli: Vec<T>,
}

/// A short exact sequence `0 -> B -f-> E -g-> A -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<T> {
    pub middle: AbelianGroup<T>,
    pub inclusion: GroupHom<T>,
    pub projection: GroupHom<T>,
}

/// An element of `Ext(A, B)` together with an extension realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass<T> {
    pub ambient: AbelianGroup<T>,
    pub class_coords: GroupElement<T>,
    pub realization: Extension<T>,
}

impl<T: Scalar> ExtGroup<T> {
    pub fn new(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Self {
        let (moduli, m) = torsion_blocks(a, b);
        let canonical = quotient(&moduli, &m);
        Self {
            a: a.clone(),
            b: b.clone(),
            canonical,
            cocycle_moduli: moduli,
        }
    }

    pub fn group(&self) -> &AbelianGroup<T> {
        &self.canonical.group
    }

    pub fn first(&self) -> &AbelianGroup<T> {
        &self.a
    }

    pub fn second(&self) -> &AbelianGroup<T> {
        &self.b
    }

    /// A cocycle (one `B`-coordinate block per torsion generator of `A`).
    fn cocycle_of(&self, x: &GroupElement<T>) -> Vec<T> {
        let c = self.canonical.from_canonical.mul_vec(x.coords()).expect("dimensions");
        c.iter().zip(&self.cocycle_moduli).map(|(v, m)| v.reduce(m)).collect()
    }

    fn class_of_cocycle(&self, c: &[T]) -> GroupElement<T> {
        let coords = self.canonical.to_canonical.mul_vec(c).expect("dimensions");
        GroupElement::new(self.group(), coords).expect("class coordinates")
    }

    /// Builds the extension for a class: `E` is generated by `B` and one new
    /// generator `a_l` per generator of `A`, with `d_j a_(r+j) = c_j`.
    pub fn realize(&self, coords: &GroupElement<T>) -> Result<ExtClass<T>> {
        if coords.group() != self.group() {
            return Err(Error::InvalidElement(format!(
                "class is not an element of Ext = {}",
                self.group()
            )));
        }
        let c = self.cocycle_of(coords);
        let kb = self.b.ngens();
        let ka = self.a.ngens();
        let r = self.a.rank();
        let mut rel_cols: Vec<Vec<T>> = Vec::new();
        for (i, e) in self.b.moduli().iter().enumerate() {
            if !e.is_zero() {
                let mut col = vec![T::zero(); kb + ka];
                col[i] = e.clone();
                rel_cols.push(col);
            }
        }
        for (j, d) in self.a.torsion().iter().enumerate() {
            let mut col = vec![T::zero(); kb + ka];
            col[kb + r + j] = d.clone();
            for i in 0..kb {
                col[i] = c[j * kb + i].neg_exact();
            }
            rel_cols.push(col);
        }
        let presentation = canonicalize(kb + ka, &IntMatrix::from_columns(kb + ka, &rel_cols));
        let e = presentation.group.clone();
        let f_cols: Vec<usize> = (0..kb).collect();
        let inclusion = GroupHom::new(&self.b, &e, presentation.to_canonical.select_cols(&f_cols))?;
        let g_pres = IntMatrix::zeros(ka, kb).hcat(&IntMatrix::identity(ka));
        let projection = GroupHom::new(&e, &self.a, g_pres.mul(&presentation.from_canonical)?)?;
        Ok(ExtClass {
            ambient: self.group().clone(),
            class_coords: coords.clone(),
            realization: Extension {
                middle: e,
                inclusion,
                projection,
            },
        })
    }

    /// Class of an extension `0 -> B -> E -> A -> 0`: lift each torsion
    /// generator of `A`, multiply by its order, pull back through `f`.
    pub fn classify(&self, ext: &Extension<T>) -> Result<GroupElement<T>> {
        let f = &ext.inclusion;
        let g = &ext.projection;
        if f.source() != &self.b || g.target() != &self.a || f.target() != g.source() {
            return Err(Error::Mismatch("extension does not match Ext(A, B)".into()));
        }
        let r = self.a.rank();
        let mut c = Vec::with_capacity(self.cocycle_moduli.len());
        for (j, d) in self.a.torsion().iter().enumerate() {
            let y = g
                .preimage(&self.a.generator(r + j))?
                .ok_or_else(|| Error::Mismatch("projection is not surjective".into()))?;
            let z = f
                .preimage(&y.scale(d))?
                .ok_or_else(|| Error::Mismatch("sequence is not exact at E".into()))?;
            c.extend(z.coords().iter().cloned());
        }
        Ok(self.class_of_cocycle(&c))
    }

    /// The map `Ext(A, B) -> Ext(A', B')` induced by `u: A' -> A` and
    /// `v: B -> B'`.
    pub fn induced(&self, target: &ExtGroup<T>, u: &GroupHom<T>, v: &GroupHom<T>) -> Result<GroupHom<T>> {
        if u.target() != &self.a || u.source() != &target.a || v.source() != &self.b || v.target() != &target.b {
            return Err(Error::Mismatch("maps do not match the Ext groups".into()));
        }
        let (r, r2) = (self.a.rank(), target.a.rank());
        let t = self.a.torsion();
        let kb2 = target.b.ngens();
        let cols: Vec<Vec<T>> = (0..self.group().ngens())
            .map(|k| {
                let c = self.cocycle_of(&self.group().generator(k));
                let kb = self.b.ngens();
                let mut out = vec![T::zero(); target.cocycle_moduli.len()];
                for (j2, d2) in target.a.torsion().iter().enumerate() {
                    // u(d2 e_j2) = sum_l w_l d_l e_l, so the pulled-back cocycle
                    // at j2 is sum_l w_l c_l
                    for (l, d) in t.iter().enumerate() {
                        let w = d2.mul_exact(&u.matrix()[(r + l, r2 + j2)]).div_floor(d);
                        if w.is_zero() {
                            continue;
                        }
                        let cl = GroupElement::new(&self.b, c[l * kb..(l + 1) * kb].to_vec())?;
                        let vc = v.apply(&cl)?;
                        for i in 0..kb2 {
                            let s = out[j2 * kb2 + i].add_exact(&w.mul_exact(&vc.coords()[i]));
                            out[j2 * kb2 + i] = s;
                        }
                    }
                }
                Ok(target.class_of_cocycle(&out).coords().to_vec())
            })
            .collect::<Result<_>>()?;
        GroupHom::new(self.group(), target.group(), IntMatrix::from_columns(target.group().ngens(), &cols))
    }
}

/// Realizes the class with the given coordinates in `Ext(A, B)`.
pub fn ext_realize<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>, coords: &[T]) -> Result<ExtClass<T>> {
    let e = ExtGroup::new(a, b);
    let group = e.group().clone();
    if coords.len() != group.ngens() {
        return Err(Error::OutOfRange(format!(
            "Ext({a}, {b}) = {group} has {} coordinates",
            group.ngens()
        )));
    }
    for (c, m) in coords.iter().zip(group.moduli()) {
        if c.is_negative() || (!m.is_zero() && *c >= m) {
            return Err(Error::OutOfRange(format!("coordinate {c} outside [0, {m})")));
        }
    }
    e.realize(&GroupElement::new(&group, coords.to_vec())?)
}

/// `λ : Ext(A, B) -> Hom(A₂, B/2)` with its source and target groups.
#[derive(Clone, Debug)]
pub struct Lambda<T> {
    pub ext: ExtGroup<T>,
    pub hom: HomGroup<T>,
    pub map: GroupHom<T>,
    two_torsion: GroupHom<T>,
    mod_two: GroupHom<T>,
}

impl<T: Scalar> Lambda<T> {
    pub fn new(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<Self> {
        let two = T::from_i64_exact(2);
        let ext = ExtGroup::new(a, b);
        let two_torsion = torsion_inclusion(a, &two)?;
        let mod_two = quotient_map(b, &two)?;
        let hom = HomGroup::new(two_torsion.source(), mod_two.target());
        let placeholder = GroupHom::zero(ext.group(), hom.group());
        let mut out = Self {
            ext,
            hom,
            map: placeholder,
            two_torsion,
            mod_two,
        };
        let cols: Vec<Vec<T>> = (0..out.ext.group().ngens())
            .map(|k| {
                let class = out.ext.realize(&out.ext.group().generator(k))?;
                let h = out.of_extension(&class.realization)?;
                Ok(out.hom.coords_of(&h)?.coords().to_vec())
            })
            .collect::<Result<_>>()?;
        out.map = GroupHom::new(
            out.ext.group(),
            out.hom.group(),
            IntMatrix::from_columns(out.hom.group().ngens(), &cols),
        )?;
        Ok(out)
    }

    /// Evaluates the recipe on an extension: for `x` in `A₂` lift to `y` with
    /// `g(y) = x`, write `2y = f(z)` and send `x` to `z mod 2B`.
    pub fn of_extension(&self, ext: &Extension<T>) -> Result<GroupHom<T>> {
        let a2 = self.two_torsion.source();
        let two = T::from_i64_exact(2);
        let cols: Vec<Vec<T>> = (0..a2.ngens())
            .map(|k| {
                let x = self.two_torsion.apply(&a2.generator(k))?;
                let y = ext
                    .projection
                    .preimage(&x)?
                    .ok_or_else(|| Error::Mismatch("projection is not surjective".into()))?;
                let z = ext
                    .inclusion
                    .preimage(&y.scale(&two))?
                    .ok_or_else(|| Error::Mismatch("2y is not in the image of B".into()))?;
                Ok(self.mod_two.apply(&z)?.coords().to_vec())
            })
            .collect::<Result<_>>()?;
        let target = self.mod_two.target();
        GroupHom::new(a2, target, IntMatrix::from_columns(target.ngens(), &cols))
    }

    /// The inclusion `A₂ -> A`.
    pub fn two_torsion(&self) -> &GroupHom<T> {
        &self.two_torsion
    }

    /// The projection `B -> B/2`.
    pub fn mod_two(&self) -> &GroupHom<T> {
        &self.mod_two
    }
}

/// `λ_(A,B)` as a homomorphism `Ext(A, B) -> Hom(A₂, B/2)`.
pub fn lambda_map<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<GroupHom<T>> {
    Ok(Lambda::new(a, b)?.map)
}

/// Whether `λ_(A,B)` is an isomorphism. When `A` is a `Z/2`-module `A₂ = A`,
/// and when `B` is one `B/2 = B`, so the map is compared directly against
/// `Hom(A, B/2)` or `Hom(A₂, B)`.
pub fn lambda_iso_check<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<bool> {
    Ok(lambda_map(a, b)?.is_isomorphism())
}
