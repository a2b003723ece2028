//! Brute-force cross-checks on finite groups, written against plain `u64`
//! arithmetic and element enumeration rather than Smith normal form.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::exact_couples::{CoupleMorphism, ExactCouple, MorphismGroup};
use crate::fga::{AbelianGroup, GroupElement, GroupHom, IntMatrix};
use crate::functors::Extension;
use crate::moore::canonical_couple;
use crate::scalar::Scalar;

/// Largest number of candidate maps or elements an oracle will visit.
pub const GUARD: u64 = 1_000_000;

/// The four functors with closed-form tables on cyclic groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctorKind {
    Tensor,
    Tor,
    Ext,
    Hom,
}

fn to_u64<T: Scalar>(x: &T) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::SizeGuard(format!("{x} does not fit the oracle")))
}

/// Moduli of a finite group as `u64`.
pub fn finite_moduli<T: Scalar>(g: &AbelianGroup<T>) -> Result<Vec<u64>> {
    if !g.is_finite() {
        return Err(Error::Infinite);
    }
    g.torsion().iter().map(to_u64).collect()
}

fn checked_order(moduli: &[u64]) -> Result<u64> {
    moduli.iter().try_fold(1u64, |acc, &m| {
        acc.checked_mul(m)
            .filter(|&n| n <= GUARD)
            .ok_or_else(|| Error::SizeGuard(format!("more than {GUARD} elements")))
    })
}

/// Every element of `Z/m₁ ⊕ ... ⊕ Z/m_k`, first coordinate fastest.
pub fn elements(moduli: &[u64]) -> Result<Vec<Vec<u64>>> {
    let n = checked_order(moduli)?;
    Ok((0..n)
        .map(|mut i| {
            moduli
                .iter()
                .map(|&m| {
                    let c = i % m;
                    i /= m;
                    c
                })
                .collect()
        })
        .collect())
}

fn residue(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// `M x` reduced into the target moduli.
fn apply(m: &[Vec<i128>], x: &[u64], target: &[u64]) -> Vec<u64> {
    target
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let s: i128 = m[i].iter().zip(x).map(|(a, &b)| a.rem_euclid(e as i128) * b as i128).sum();
            residue(s, e)
        })
        .collect()
}

fn matrix_i128<T: Scalar>(m: &IntMatrix<T>) -> Result<Vec<Vec<i128>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| v.to_i128().ok_or_else(|| Error::SizeGuard(format!("entry {v} too large"))))
                .collect()
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Elements of `Z/m₁ ⊕ ...` killed by `n`.
fn killed_by(n: u64, moduli: &[u64]) -> Result<Vec<Vec<u64>>> {
    Ok(elements(moduli)?
        .into_iter()
        .filter(|x| x.iter().zip(moduli).all(|(&c, &m)| (c as u128 * n as u128) % m as u128 == 0))
        .collect())
}

/// `|Hom(A, B)|` by counting admissible images of each generator.
pub fn count_homs<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<u64> {
    let am = finite_moduli(a)?;
    let bm = finite_moduli(b)?;
    let mut total = 1u64;
    for &d in &am {
        total = total
            .checked_mul(killed_by(d, &bm)?.len() as u64)
            .ok_or_else(|| Error::SizeGuard("hom count overflows".into()))?;
    }
    Ok(total)
}

/// Every homomorphism `A -> B` between finite groups.
pub fn enumerate_homs<T: Scalar>(a: &AbelianGroup<T>, b: &AbelianGroup<T>) -> Result<Vec<GroupHom<T>>> {
    let am = finite_moduli(a)?;
    let bm = finite_moduli(b)?;
    let choices: Vec<Vec<Vec<u64>>> = am.iter().map(|&d| killed_by(d, &bm)).collect::<Result<_>>()?;
    let mut total = 1u64;
    for c in &choices {
        total = total
            .checked_mul(c.len() as u64)
            .filter(|&n| n <= GUARD)
            .ok_or_else(|| Error::SizeGuard(format!("more than {GUARD} candidate maps")))?;
    }
    let mut out = Vec::with_capacity(total as usize);
    for mut i in 0..total {
        let cols: Vec<Vec<T>> = choices
            .iter()
            .map(|c| {
                let pick = &c[(i % c.len() as u64) as usize];
                i /= c.len() as u64;
                pick.iter().map(|&v| T::from_u64_exact(v)).collect()
            })
            .collect();
        out.push(GroupHom::new(a, b, IntMatrix::from_columns(bm.len(), &cols))?);
    }
    Ok(out)
}

fn factor(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Invariant factors from prime-power exponents: the `k`-th largest factor
/// multiplies the `k`-th largest power of every prime.
fn invariants_from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (&p, exps) in primary {
        let mut exps = exps.clone();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in exps.into_iter().enumerate() {
            out[k] *= p.pow(e);
        }
    }
    out.reverse();
    out
}

/// Canonical group of `Z^rank ⊕ ⊕ Z/m` via the primary decomposition.
/// Moduli `0` count as free summands, `1` as nothing.
pub fn canonical_from_cyclics<T: Scalar>(moduli: &[u64]) -> AbelianGroup<T> {
    let rank = moduli.iter().filter(|&&m| m == 0).count();
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in moduli.iter().filter(|&&m| m > 1) {
        for (p, e) in factor(m) {
            primary.entry(p).or_default().push(e);
        }
    }
    let torsion = invariants_from_primary(&primary)
        .into_iter()
        .map(T::from_u64_exact)
        .collect();
    AbelianGroup::new(rank, torsion).expect("primary decomposition yields a divisibility chain")
}

/// The cyclic summands of a group, `0` for each free one.
fn cyclic_summands<T: Scalar>(g: &AbelianGroup<T>) -> Result<Vec<u64>> {
    let mut out = vec![0; g.rank()];
    for d in g.torsion() {
        out.push(to_u64(d)?);
    }
    Ok(out)
}

/// The functor on one pair of cyclic groups; `0` is `Z`, the result lists
/// cyclic summands in the same convention.
fn cyclic_entry(kind: FunctorKind, m: u64, n: u64) -> Vec<u64> {
    match (kind, m, n) {
        (FunctorKind::Tensor, 0, n) | (FunctorKind::Tensor, n, 0) => vec![n],
        (FunctorKind::Tensor, m, n) => vec![gcd(m, n)],
        (FunctorKind::Tor, 0, _) | (FunctorKind::Tor, _, 0) => vec![],
        (FunctorKind::Tor, m, n) => vec![gcd(m, n)],
        (FunctorKind::Ext, 0, _) => vec![],
        (FunctorKind::Ext, m, 0) => vec![m],
        (FunctorKind::Ext, m, n) => vec![gcd(m, n)],
        (FunctorKind::Hom, 0, n) => vec![n],
        (FunctorKind::Hom, _, 0) => vec![],
        (FunctorKind::Hom, m, n) => vec![gcd(m, n)],
    }
}

/// The functor by additivity over cyclic summands and the gcd table.
pub fn cyclic_table_functor<T: Scalar>(
    kind: FunctorKind,
    a: &AbelianGroup<T>,
    b: &AbelianGroup<T>,
) -> Result<AbelianGroup<T>> {
    let sa = cyclic_summands(a)?;
    let sb = cyclic_summands(b)?;
    let mut out = Vec::new();
    for &m in &sa {
        for &n in &sb {
            out.extend(cyclic_entry(kind, m, n));
        }
    }
    Ok(canonical_from_cyclics(&out))
}

/// Exactness of `0 -> B -f-> E -g-> A -> 0` by enumerating elements.
pub fn exactness_element_check<T: Scalar>(ext: &Extension<T>) -> Result<bool> {
    let f = &ext.inclusion;
    let g = &ext.projection;
    if f.target() != &ext.middle || g.source() != &ext.middle {
        return Ok(false);
    }
    let bm = finite_moduli(f.source())?;
    let em = finite_moduli(&ext.middle)?;
    let am = finite_moduli(g.target())?;
    let fm = matrix_i128(f.matrix())?;
    let gm = matrix_i128(g.matrix())?;

    let image_f: HashSet<Vec<u64>> = elements(&bm)?.iter().map(|x| apply(&fm, x, &em)).collect();
    if image_f.len() as u64 != checked_order(&bm)? {
        return Ok(false);
    }
    let zero_a = vec![0; am.len()];
    let mut image_g = HashSet::new();
    let mut kernel_g = HashSet::new();
    for y in elements(&em)? {
        let gy = apply(&gm, &y, &am);
        if gy == zero_a {
            kernel_g.insert(y);
        }
        image_g.insert(gy);
    }
    Ok(image_g.len() as u64 == checked_order(&am)? && kernel_g == image_f)
}

/// A finite quotient `X / H` with `X = Z/m₁ ⊕ ...` and `H` listed.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pub moduli: Vec<u64>,
    pub subgroup: HashSet<Vec<u64>>,
}

impl FiniteQuotient {
    /// `H` is the subgroup generated by `gens`.
    pub fn generated(moduli: Vec<u64>, gens: &[Vec<u64>]) -> Result<Self> {
        checked_order(&moduli)?;
        let zero = vec![0; moduli.len()];
        let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y: Vec<u64> = x.iter().zip(g).zip(&moduli).map(|((a, b), &m)| (a + b) % m).collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self { moduli, subgroup: seen })
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product::<u64>() / self.subgroup.len() as u64
    }

    /// `|{q ∈ X/H : nq = 0}| = |{x : nx ∈ H}| / |H|`.
    pub fn torsion_count(&self, n: u64) -> Result<u64> {
        let hits = elements(&self.moduli)?
            .into_iter()
            .filter(|x| {
                let nx: Vec<u64> = x
                    .iter()
                    .zip(&self.moduli)
                    .map(|(&c, &m)| ((c as u128 * n as u128) % m as u128) as u64)
                    .collect();
                self.subgroup.contains(&nx)
            })
            .count() as u64;
        Ok(hits / self.subgroup.len() as u64)
    }

    /// Invariant factors read off from `|Q[p^k]|`: the number of cyclic
    /// `p`-summands of order at least `p^k` is `log_p |Q[p^k]| / |Q[p^(k-1)]|`.
    pub fn group<T: Scalar>(&self) -> Result<AbelianGroup<T>> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (p, top) in factor(self.order()) {
            let mut at_least = Vec::new();
            let mut prev = 1u64;
            for k in 1..=top {
                let c = self.torsion_count(p.pow(k))?;
                let mut r = 0;
                let mut q = c / prev;
                while q > 1 {
                    q /= p;
                    r += 1;
                }
                at_least.push(r);
                prev = c;
            }
            let exps = primary.entry(p).or_default();
            for k in 0..at_least.len() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in next..at_least[k] {
                    exps.push(k as u32 + 1);
                }
            }
        }
        let torsion = invariants_from_primary(&primary).into_iter().map(T::from_u64_exact).collect();
        AbelianGroup::new(0, torsion)
    }
}

/// The pushout of `X <-f- C -g-> Y` computed as `(X ⊕ Y) / {(f c, -g c)}`
/// by enumeration.
pub fn pushout_element_oracle<T: Scalar>(f: &GroupHom<T>, g: &GroupHom<T>) -> Result<AbelianGroup<T>> {
    if f.source() != g.source() {
        return Err(Error::Mismatch("pushout legs have different sources".into()));
    }
    let cm = finite_moduli(f.source())?;
    let xm = finite_moduli(f.target())?;
    let ym = finite_moduli(g.target())?;
    let fm = matrix_i128(f.matrix())?;
    let gm = matrix_i128(g.matrix())?;
    let gens: Vec<Vec<u64>> = (0..cm.len())
        .map(|j| {
            let mut e = vec![0; cm.len()];
            e[j] = 1;
            let mut v = apply(&fm, &e, &xm);
            v.extend(apply(&gm, &e, &ym).iter().zip(&ym).map(|(&c, &m)| (m - c) % m));
            v
        })
        .collect();
    let mut moduli = xm;
    moduli.extend(ym);
    FiniteQuotient::generated(moduli, &gens)?.group()
}

/// Relations between `θ: D_S -> D_P` (reduction mod 2 on `Φ₁`) and
/// `λ: D_P -> D_S` (the nonzero class).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub two_theta_zero: bool,
    pub two_lambda_zero: bool,
    pub lambda_theta_zero: bool,
    pub theta_lambda_doubling: bool,
}

impl RelationsReport {
    pub fn all(&self) -> bool {
        self.two_theta_zero && self.two_lambda_zero && self.lambda_theta_zero && self.theta_lambda_doubling
    }
}

fn elements_of<T: Scalar>(m: &MorphismGroup<T>) -> Result<Vec<CoupleMorphism<T>>> {
    let moduli = finite_moduli(m.group())?;
    elements(&moduli)?
        .into_iter()
        .map(|c| {
            let x = GroupElement::new(m.group(), c.into_iter().map(T::from_u64_exact).collect())?;
            m.morphism_at(&x)
        })
        .collect()
}

pub fn couple_relations_check<T: Scalar>() -> Result<RelationsReport> {
    let d_s = canonical_couple(&AbelianGroup::<T>::integers())?;
    let d_p = canonical_couple(&AbelianGroup::<T>::cyclic(T::from_i64_exact(2)))?;

    let sp = MorphismGroup::new(&d_s, &d_p)?;
    let projection = GroupHom::from_i64_rows(d_s.phi1(), d_p.phi1(), &[&[1]])?;
    let ps_group = MorphismGroup::new(&d_p, &d_s)?;
    let theta = elements_of(&sp)?
        .into_iter()
        .find(|m| m.f1 == projection)
        .ok_or_else(|| Error::Mismatch("no morphism lifts reduction mod 2".into()))?;
    let lambda = elements_of(&ps_group)?
        .into_iter()
        .find(|m| !m.is_zero())
        .ok_or_else(|| Error::Mismatch("Hom(D_P, D_S) is zero".into()))?;

    let two = T::from_i64_exact(2);
    let doubling = CoupleMorphism::doubling(&d_p);
    Ok(RelationsReport {
        two_theta_zero: theta.scale(&two).is_zero(),
        two_lambda_zero: lambda.scale(&two).is_zero(),
        lambda_theta_zero: lambda.compose(&theta)?.is_zero(),
        theta_lambda_doubling: theta.compose(&lambda)? == doubling,
    })
}

/// Structural validity of a couple by enumerating elements of `A` and `B`.
pub fn couple_element_check<T: Scalar>(d: &ExactCouple<T>) -> Result<bool> {
    let am = finite_moduli(d.phi1())?;
    let bm = finite_moduli(d.phi2())?;
    let al = matrix_i128(d.alpha().matrix())?;
    let be = matrix_i128(d.beta().matrix())?;
    let ea = elements(&am)?;
    let eb = elements(&bm)?;
    let za = vec![0; am.len()];
    let zb = vec![0; bm.len()];
    let double = |x: &[u64], m: &[u64]| -> Vec<u64> { x.iter().zip(m).map(|(&c, &m)| (2 * c) % m).collect() };

    let twice_a: HashSet<_> = ea.iter().map(|x| double(x, &am)).collect();
    let ker_alpha: HashSet<_> = ea.iter().filter(|x| apply(&al, x, &bm) == zb).cloned().collect();
    let im_alpha: HashSet<_> = ea.iter().map(|x| apply(&al, x, &bm)).collect();
    let ker_beta: HashSet<_> = eb.iter().filter(|y| apply(&be, y, &am) == za).cloned().collect();
    let im_beta: HashSet<_> = eb.iter().map(|y| apply(&be, y, &am)).collect();
    let two_torsion: HashSet<_> = ea.iter().filter(|x| double(x, &am) == za).cloned().collect();
    let doubling = eb.iter().all(|y| apply(&al, &apply(&be, y, &am), &bm) == double(y, &bm));
    Ok(ker_alpha == twice_a && ker_beta == im_alpha && im_beta == two_torsion && doubling)
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = AbelianGroup<i64>;

    fn g(rank: usize, t: &[i64]) -> G {
        G::new(rank, t.to_vec()).unwrap()
    }

    #[test]
    fn hom_counts() {
        assert_eq!(count_homs(&g(0, &[4]), &g(0, &[6])).unwrap(), 2);
        assert_eq!(enumerate_homs(&g(0, &[2, 2]), &g(0, &[4])).unwrap().len(), 4);
        assert_eq!(enumerate_homs(&G::trivial(), &g(0, &[4])).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&G::integers(), &g(0, &[4])).unwrap_err(), Error::Infinite);
        let big = g(0, &[1000, 1000]);
        assert!(matches!(enumerate_homs(&big, &big), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn primary_canonical_form() {
        assert_eq!(canonical_from_cyclics::<i64>(&[2, 3]), g(0, &[6]));
        assert_eq!(canonical_from_cyclics::<i64>(&[4, 6, 0, 1]), g(1, &[2, 12]));
        assert_eq!(canonical_from_cyclics::<i64>(&[]), G::trivial());
    }

    #[test]
    fn cyclic_tables() {
        use FunctorKind::*;
        let z = G::integers();
        let c4 = g(0, &[4]);
        let c6 = g(0, &[6]);
        assert_eq!(cyclic_table_functor(Tensor, &c4, &c6).unwrap(), g(0, &[2]));
        assert_eq!(cyclic_table_functor(Ext, &c4, &z).unwrap(), c4);
        assert_eq!(cyclic_table_functor(Hom, &z, &c6).unwrap(), c6);
        assert!(cyclic_table_functor(Tor, &z, &c6).unwrap().is_trivial());
    }

    #[test]
    fn quotient_counts() {
        // Z/4 ⊕ Z/2 modulo <(2, 1)>
        let q = FiniteQuotient::generated(vec![4, 2], &[vec![2, 1]]).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.group::<i64>().unwrap(), g(0, &[4]));
        let q = FiniteQuotient::generated(vec![8, 4, 3], &[]).unwrap();
        assert_eq!(q.group::<i64>().unwrap(), g(0, &[4, 24]));
    }

    #[test]
    fn standard_relations_hold() {
        let r = couple_relations_check::<i64>().unwrap();
        assert!(r.all(), "{r:?}");
    }

    #[test]
    fn element_checks() {
        let d = canonical_couple(&g(0, &[2, 4])).unwrap();
        assert!(couple_element_check(&d).unwrap());
        let a = g(0, &[2]);
        let bad = ExactCouple::new(GroupHom::identity(&a), GroupHom::identity(&a)).unwrap();
        assert!(!couple_element_check(&bad).unwrap());
    }
}
