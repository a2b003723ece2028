//! Finitely generated abelian groups: canonical forms via Smith normal
//! form, homomorphisms, kernels, cokernels, images and Hom groups.

mod group;
mod hom;
mod hom_group;
pub(crate) mod lattice;
mod matrix;
mod smith;

pub use group::{AbelianGroup, GroupElement};
pub use hom::GroupHom;
pub use hom_group::{hom_group, HomGroup};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};

use crate::error::Result;
use crate::scalar::Scalar;

/// Canonical form of `A ⊕ B`.
pub fn direct_sum<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> AbelianGroup<T> {
    a.direct_sum(b)
}

/// `A ⊕ B` together with its two injections and two projections.
#[derive(Clone, Debug)]
pub struct Biproduct<T> {
    pub sum: AbelianGroup<T>,
    pub inject_left: GroupHom<T>,
    pub inject_right: GroupHom<T>,
    pub project_left: GroupHom<T>,
    pub project_right: GroupHom<T>,
}

pub fn biproduct<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Biproduct<T> {
    let mut moduli = a.moduli();
    moduli.extend(b.moduli());
    let c = lattice::canonicalize(moduli.len(), &IntMatrix::diagonal(&moduli));
    let (na, nb) = (a.ngens(), b.ngens());
    let left: Vec<usize> = (0..na).collect();
    let right: Vec<usize> = (na..na + nb).collect();
    let inject = |cols: &[usize], src: &AbelianGroup<T>| {
        GroupHom::new(src, &c.group, c.to_canonical.select_cols(cols)).expect("injection")
    };
    let project = |rows: &[usize], tgt: &AbelianGroup<T>| {
        GroupHom::new(&c.group, tgt, c.from_canonical.select_rows(rows)).expect("projection")
    };
    Biproduct {
        inject_left: inject(&left, a),
        inject_right: inject(&right, b),
        project_left: project(&left, a),
        project_right: project(&right, b),
        sum: c.group.clone(),
    }
}

/// `A / nA` with the projection from `A`.
pub fn quotient_map<T: Scalar>(a: &AbelianGroup<T>, n: &T) -> Result<GroupHom<T>> {
    a.quotient_by_n(n)?;
    Ok(GroupHom::multiplication(a, n).cokernel().1)
}

/// The inclusion of `{x : nx = 0}` into `A`.
pub fn torsion_inclusion<T: Scalar>(a: &AbelianGroup<T>, n: &T) -> Result<GroupHom<T>> {
    a.n_torsion(n)?;
    Ok(GroupHom::multiplication(a, n).kernel().1)
}

/// `quotient_by_n` as a free function.
pub fn quotient_by_n<T: Scalar>(a: &AbelianGroup<T>, n: &T) -> Result<AbelianGroup<T>> {
    a.quotient_by_n(n)
}

/// `n_torsion` as a free function.
pub fn n_torsion<T: Scalar>(a: &AbelianGroup<T>, n: &T) -> Result<AbelianGroup<T>> {
    a.n_torsion(n)
}
