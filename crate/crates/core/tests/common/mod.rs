#![allow(dead_code)]

use moore_core::{AbelianGroup, Group64, GroupHom, Hom64, IntMatrix};
use proptest::prelude::*;

pub fn g(rank: usize, torsion: &[i64]) -> Group64 {
    Group64::new(rank, torsion.to_vec()).unwrap()
}

pub fn cyclic(n: i64) -> Group64 {
    Group64::cyclic(n)
}

/// Groups with rank `0..=max_rank` and up to `max_factors` cyclic factors
/// drawn from `moduli`.
pub fn groups(max_rank: usize, max_factors: usize, moduli: &'static [i64]) -> impl Strategy<Value = Group64> {
    (0..=max_rank, prop::collection::vec(prop::sample::select(moduli), 0..=max_factors)).prop_map(|(r, t)| {
        let mut c = vec![0; r];
        c.extend(t);
        Group64::from_cyclics(&c)
    })
}

pub const SMALL: &[i64] = &[2, 3, 4, 6, 8, 12];

pub fn small_finite() -> impl Strategy<Value = Group64> {
    groups(0, 3, SMALL)
}

/// A random homomorphism `a -> b` built from a random integer matrix.
pub fn hom_from_seed(a: &Group64, b: &Group64, seed: &[i64]) -> Hom64 {
    // column j must be killed by the order of generator j
    let am = a.moduli();
    let bm = b.moduli();
    let mut m = IntMatrix::zeros(bm.len(), am.len());
    let mut k = 0;
    for (j, d) in am.iter().enumerate() {
        for (i, e) in bm.iter().enumerate() {
            let raw = seed[k % seed.len()];
            k += 1;
            m[(i, j)] = match (*d, *e) {
                (_, 0) if *d != 0 => 0,
                (0, _) => raw,
                (d, e) => raw * (e / num_integer::gcd(d, e)),
            };
        }
    }
    GroupHom::new(a, b, m).unwrap()
}

pub fn homs() -> impl Strategy<Value = (Group64, Group64, Hom64)> {
    (small_finite(), small_finite(), prop::collection::vec(-20i64..20, 1..12))
        .prop_map(|(a, b, seed)| {
            let f = hom_from_seed(&a, &b, &seed);
            (a, b, f)
        })
}

pub fn big<T: moore_core::Scalar>(g: &AbelianGroup<T>) -> moore_core::Group {
    g.convert()
}
