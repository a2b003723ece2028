//! Presentations `Z^g / L` and the lattice computations behind kernels,
//! images, cokernels and membership tests. Column-vector convention
//! throughout: relation lattices and generating sets are matrix columns.

use super::group::AbelianGroup;
use super::matrix::IntMatrix;
use super::smith::SmithForm;
use crate::scalar::Scalar;

/// A presented group brought to invariant-factor form.
#[derive(Clone, Debug)]
pub(crate) struct Canonical<T> {
    pub group: AbelianGroup<T>,
    /// `k x g`: images of the presentation generators, reduced.
    pub to_canonical: IntMatrix<T>,
    /// `g x k`: lifts of the canonical generators.
    pub from_canonical: IntMatrix<T>,
}

/// Canonical form of `Z^ngens / colspan(relations)`.
pub(crate) fn canonicalize<T: Scalar>(ngens: usize, relations: &IntMatrix<T>) -> Canonical<T> {
    assert_eq!(relations.rows(), ngens, "one relation row per generator");
    let s = SmithForm::compute(relations);
    let diag = s.diagonal();
    let modulus = |i: usize| diag.get(i).cloned().unwrap_or_else(T::zero);

    let free: Vec<usize> = (0..ngens).filter(|&i| modulus(i).is_zero()).collect();
    let torsion: Vec<usize> = (0..ngens)
        .filter(|&i| {
            let m = modulus(i);
            !m.is_zero() && !m.is_one()
        })
        .collect();
    let order: Vec<usize> = free.iter().chain(&torsion).copied().collect();

    let group = AbelianGroup::new_unchecked(free.len(), torsion.iter().map(|&i| modulus(i)).collect());
    let to_canonical = s.u.select_rows(&order).reduce_rows(&group.moduli());
    let from_canonical = s.u_inv.select_cols(&order);
    Canonical {
        group,
        to_canonical,
        from_canonical,
    }
}

/// Generators (as columns) of `{x in Z^n : f x = 0 modulo target_moduli}`
/// where `f` has `n` columns.
pub(crate) fn preimage_of_zero<T: Scalar>(f: &IntMatrix<T>, target_moduli: &[T]) -> IntMatrix<T> {
    assert_eq!(f.rows(), target_moduli.len());
    let n = f.cols();
    let system = f.hcat(&IntMatrix::diagonal(target_moduli));
    let s = SmithForm::compute(&system);
    let rank = s.rank();
    let cols: Vec<Vec<T>> = (rank..system.cols())
        .map(|j| s.v.column(j)[..n].to_vec())
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    IntMatrix::from_columns(n, &cols)
}

/// Some integer solution of `m x = b`, if one exists.
pub(crate) fn solve<T: Scalar>(m: &IntMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len());
    let s = SmithForm::compute(m);
    let c = s.u.mul_vec(b).expect("dimensions");
    let diag = s.diagonal();
    let rank = s.rank();
    let mut y = vec![T::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            if !ci.is_multiple_of(&diag[i]) {
                return None;
            }
            y[i] = ci.div_floor(&diag[i]);
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y).expect("dimensions"))
}

/// Coefficients `c` with `gens * c = v` modulo `moduli`, if `v` lies in the
/// subgroup generated by the columns of `gens`.
pub(crate) fn express_in<T: Scalar>(v: &[T], gens: &IntMatrix<T>, moduli: &[T]) -> Option<Vec<T>> {
    let system = gens.hcat(&IntMatrix::diagonal(moduli));
    solve(&system, v).map(|x| x[..gens.cols()].to_vec())
}

/// A subgroup generated by the columns of `gens` inside `Z^k / diag(moduli)`.
pub(crate) struct SubgroupData<T> {
    pub group: AbelianGroup<T>,
    /// `k x n`: canonical generators written in ambient coordinates.
    pub inclusion: IntMatrix<T>,
}

pub(crate) fn subgroup<T: Scalar>(gens: &IntMatrix<T>, moduli: &[T]) -> SubgroupData<T> {
    let relations = preimage_of_zero(gens, moduli);
    let c = canonicalize(gens.cols(), &relations);
    let inclusion = gens
        .mul(&c.from_canonical)
        .expect("dimensions")
        .reduce_rows(moduli);
    SubgroupData {
        group: c.group,
        inclusion,
    }
}

/// Canonical form of `(Z^k / diag(moduli)) / <extra columns>`.
pub(crate) fn quotient<T: Scalar>(moduli: &[T], extra: &IntMatrix<T>) -> Canonical<T> {
    let relations = IntMatrix::diagonal(moduli).hcat(extra);
    canonicalize(moduli.len(), &relations)
}

/// Whether every column of `a` lies in the span of `b` (modulo `moduli`).
pub(crate) fn span_contains<T: Scalar>(b: &IntMatrix<T>, a: &IntMatrix<T>, moduli: &[T]) -> bool {
    (0..a.cols()).all(|j| express_in(&a.column(j), b, moduli).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = IntMatrix<i64>;

    #[test]
    fn canonicalize_diag_two_three() {
        let c = canonicalize(2, &M::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(c.group, AbelianGroup::new(0, vec![6]).unwrap());
        // generator images must generate: image of (1,0) has order 2, (0,1) order 3
        let img0 = c.to_canonical[(0, 0)];
        let img1 = c.to_canonical[(0, 1)];
        assert_eq!(6 / img0.gcd_exact(&6), 2);
        assert_eq!(6 / img1.gcd_exact(&6), 3);
    }

    #[test]
    fn canonicalize_orders_free_first() {
        let c = canonicalize(3, &M::from_i64_rows(&[&[4], &[0], &[0]]));
        assert_eq!(c.group, AbelianGroup::new(2, vec![4]).unwrap());
    }

    #[test]
    fn solve_rejects_non_integral() {
        let m = M::from_i64_rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(solve(&m, &[4, 8]), Some(vec![2, 2]));
        assert_eq!(solve(&m, &[1, 0]), None);
    }

    #[test]
    fn preimage_of_zero_of_doubling_mod_four() {
        // x -> 2x on Z/4 pulled back to Z: kernel lattice 2Z
        let gens = preimage_of_zero(&M::from_i64_rows(&[&[2]]), &[4]);
        let g = (0..gens.cols()).map(|j| gens[(0, j)].abs()).fold(0, |a, b| a.gcd_exact(&b));
        assert_eq!(g, 2);
    }
}
