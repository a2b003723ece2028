//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use moore_cli::battery::{battery, elementary_twos, Size};
use moore_cli::{format_group, parse_group};
use moore_core::oracle::{self, couple_element_check, FunctorKind};
use moore_core::{
    ahss_order_check, canonical_couple, ext, homotopy_classes, homotopy_ses_order_check, lambda_iso_check,
    normalize, stable_stem, stem_table, tensor, tor, BigInt, Couple, ExactCouple, Group, Hom, HomGroup, IntMatrix,
    Scalar, SmithForm,
};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cyc(n: i64) -> Group {
    Group::cyclic(BigInt::from(n))
}

fn grp(rank: usize, torsion: &[i64]) -> Group {
    Group::new(rank, torsion.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn golden_sphere() -> Outcome {
    let start = Instant::now();
    let table = stem_table(&Group::integers()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want = [grp(1, &[]), cyc(2), cyc(2), cyc(24), Group::trivial(), Group::trivial(), cyc(2), cyc(240)];
    ensure(table.entries() == want, || format!("got {:?}", table.entries().iter().map(ToString::to_string).collect::<Vec<_>>()))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{elapsed:.2?}"))
}

fn golden_p() -> Outcome {
    let p = cyc(2);
    for (q, want) in [(2, cyc(4)), (3, grp(0, &[2, 2])), (7, grp(0, &[2, 2]))] {
        let got = stable_stem(&p, q).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("q = {q}: {got}, expected {want}"))?;
    }
    Ok("q = 2, 3, 7".into())
}

fn morphism_groups() -> Outcome {
    let p = cyc(2);
    let order = |a: &Group, b: &Group| homotopy_classes(a, b).map(|m| m.group().clone()).map_err(|e| e.to_string());
    ensure(order(&p, &p)? == cyc(4), || "[P, P] is not Z/4".into())?;
    ensure(order(&p, &Group::integers())? == p, || "[P, S] is not Z/2".into())?;
    let groups = battery(Size::Full);
    for b in &groups {
        let got = order(&Group::integers(), b)?;
        ensure(&got == b, || format!("[S, M({b})] = {got}"))?;
    }
    Ok(format!("{} targets", groups.len()))
}

/// A random finite group with at most four invariant factors, each at most 64.
fn random_finite(rng: &mut ChaCha8Rng) -> Group {
    loop {
        let k = rng.gen_range(1..=4);
        let cyclics: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen_range(2..=64))).collect();
        let g = Group::from_cyclics(&cyclics);
        if g.torsion().len() <= 4 && g.torsion().iter().all(|d| d <= &BigInt::from(64)) {
            return g;
        }
    }
}

fn order_identities() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..30 {
        let a = random_finite(&mut rng);
        for q in 0..=7 {
            ensure(ahss_order_check(&a, q) == Ok(true), || format!("|π_{q}(M({a}))|"))?;
        }
    }
    for _ in 0..30 {
        let a = random_finite(&mut rng);
        let b = random_finite(&mut rng);
        ensure(homotopy_ses_order_check(&a, &b) == Ok(true), || format!("|[M({a}), M({b})]|"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("30 groups x 8 stems, 30 pairs, {elapsed:.2?}"))
}

fn lambda_suite() -> Outcome {
    let twos = elementary_twos();
    let groups = battery(Size::Full);
    let mut n = 0;
    let mut check = |a: &Group, b: &Group| {
        n += 1;
        ensure(lambda_iso_check(a, b) == Ok(true), || format!("λ({a}, {b}) is not an isomorphism"))
    };
    for a in &twos {
        for b in &twos {
            check(a, b)?;
        }
    }
    for a in &twos[1..3] {
        for b in &groups {
            check(a, b)?;
            check(b, a)?;
        }
    }
    Ok(format!("{n} pairs"))
}

fn oracle_equivalence() -> Outcome {
    let groups = battery(Size::Full);
    let mut enumerated = 0;
    let mut counted = 0;
    for a in &groups {
        for b in &groups {
            let hom = HomGroup::new(a, b);
            let ours = [
                (FunctorKind::Tensor, tensor(a, b)),
                (FunctorKind::Tor, tor(a, b)),
                (FunctorKind::Ext, ext(a, b)),
                (FunctorKind::Hom, hom.group().clone()),
            ];
            for (kind, got) in ours {
                let want = oracle::cyclic_table_functor(kind, a, b).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("{kind:?}({a}, {b}) = {got}, table gives {want}"))?;
            }
            if !(a.is_finite() && b.is_finite()) {
                continue;
            }
            let size = hom.group().order().unwrap();
            let count = oracle::count_homs(a, b).map_err(|e| e.to_string())?;
            ensure(size == BigInt::from(count), || format!("|Hom({a}, {b})| = {size}, counted {count}"))?;
            counted += 1;
            if count <= 20_000 {
                let all = oracle::enumerate_homs(a, b).map_err(|e| e.to_string())?;
                ensure(BigInt::from(all.len()) == size, || format!("enumerated {} maps {a} -> {b}", all.len()))?;
                for f in &all {
                    let back = hom.coords_of(f).and_then(|x| hom.hom_at(&x)).map_err(|e| e.to_string())?;
                    ensure(&back == f, || format!("{f:?} outside the generated subgroup"))?;
                }
                enumerated += 1;
            }
        }
    }
    Ok(format!(
        "{} groups, {} pairs x 4 functors, {counted} hom counts, {enumerated} fully enumerated",
        groups.len(),
        groups.len() * groups.len()
    ))
}

/// A random automorphism of `b` as a product of elementary ones: a unit
/// multiple of one generator, or adding a multiple of one generator to the
/// image of another where that is a homomorphism.
fn random_automorphism(b: &Group, rng: &mut ChaCha8Rng) -> Hom {
    let moduli = b.moduli();
    let n = moduli.len();
    let mut u = Hom::identity(b);
    if n == 0 {
        return u;
    }
    for _ in 0..8 {
        let mut m = IntMatrix::<BigInt>::identity(n);
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            let d = &moduli[i];
            m[(i, i)] = if d.is_zero() {
                -BigInt::one()
            } else {
                let k = BigInt::from(rng.gen_range(1..1000)) % d;
                if k.gcd_exact(d).is_one() {
                    k
                } else {
                    BigInt::one()
                }
            };
        } else {
            m[(i, j)] = BigInt::from(rng.gen_range(1..4));
        }
        if let Ok(e) = Hom::new(b, b, m) {
            if e.is_isomorphism() {
                u = e.compose(&u).unwrap();
            }
        }
    }
    u
}

fn single_entry_corruptions(d: &Couple) -> Vec<Couple> {
    let mut out = Vec::new();
    for which in 0..2 {
        let f = if which == 0 { d.alpha() } else { d.beta() };
        for i in 0..f.matrix().rows() {
            for j in 0..f.matrix().cols() {
                for delta in 1..=3 {
                    let mut m: IntMatrix<BigInt> = f.matrix().clone();
                    m[(i, j)] += BigInt::from(delta);
                    let Ok(h) = Hom::new(f.source(), f.target(), m) else { continue };
                    if &h == f || out.iter().any(|c: &Couple| c.alpha() == &h || c.beta() == &h) {
                        continue;
                    }
                    let c = if which == 0 {
                        ExactCouple::new(h, d.beta().clone())
                    } else {
                        ExactCouple::new(d.alpha().clone(), h)
                    };
                    out.push(c.unwrap());
                }
            }
        }
    }
    out
}

fn equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pool: Vec<Group> = [&[2][..], &[4], &[8], &[2, 2], &[2, 4], &[6], &[12], &[3], &[2, 2, 2], &[4, 4], &[2, 8], &[6, 12], &[2, 2, 4]]
        .iter()
        .map(|t| grp(0, t))
        .chain([grp(1, &[]), grp(1, &[2])])
        .collect();
    for k in 0..50 {
        let a = &pool[k % pool.len()];
        let d = canonical_couple(a).map_err(|e| e.to_string())?;
        let u = random_automorphism(d.phi2(), &mut rng);
        let moved = d.transport(&u).map_err(|e| e.to_string())?;
        let (canonical, iso) = normalize(&moved).map_err(|e| format!("normalize over {a}: {e}"))?;
        ensure(iso.f1 == Hom::identity(a), || format!("f1 is not the identity over {a}"))?;
        ensure(iso.is_isomorphism() && iso.commutes(&moved, &canonical), || {
            format!("normalize over {a} did not return an isomorphism")
        })?;
    }
    let mut rejected = 0;
    let mut still_valid = 0;
    for a in pool.iter().filter(|a| a.is_finite()) {
        let d = canonical_couple(a).map_err(|e| e.to_string())?;
        for c in single_entry_corruptions(&d) {
            let brute = couple_element_check(&c).map_err(|e| e.to_string())?;
            ensure(c.is_valid() == brute, || format!("validate disagrees with enumeration over {a}"))?;
            if brute {
                still_valid += 1;
            } else {
                rejected += 1;
            }
        }
    }
    ensure(rejected >= 50, || format!("only {rejected} corruptions generated"))?;
    Ok(format!("50 transports, {rejected} corruptions rejected, {still_valid} edits still valid couples"))
}

fn relations() -> Outcome {
    let r = oracle::couple_relations_check::<BigInt>().map_err(|e| e.to_string())?;
    ensure(r.all(), || format!("{r:?}"))?;
    Ok("2θ = 0, 2λ = 0, λθ = 0, θλ = 2".into())
}

fn snf_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<BigInt>> =
            (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect()).collect();
        let m = IntMatrix::from_rows(rows).unwrap();
        let s = SmithForm::compute(&m);
        ensure(s.u.mul(&m).unwrap().mul(&s.v).unwrap() == s.d, || format!("U M V != D for {m}"))?;
        ensure(s.u.determinant().unwrap().abs().is_one(), || format!("U not unimodular for {m}"))?;
        ensure(s.v.determinant().unwrap().abs().is_one(), || format!("V not unimodular for {m}"))?;
        for i in 0..r {
            for j in 0..c {
                ensure(i == j || s.d[(i, j)].is_zero(), || format!("D not diagonal for {m}"))?;
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            let chain = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(!w[0].is_negative() && chain, || format!("diagonal {diag:?} is not a chain"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("200 matrices, {elapsed:.2?}"))
}

fn random_group(rng: &mut ChaCha8Rng) -> Group {
    let rank = rng.gen_range(0..=3);
    let k = rng.gen_range(0..=4);
    let mut cyclics = vec![BigInt::zero(); rank];
    cyclics.extend((0..k).map(|_| BigInt::from(rng.gen_range(2..=1000))));
    Group::from_cyclics(&cyclics)
}

fn moore(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_moore")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let g = random_group(&mut rng);
        for unicode in [false, true] {
            let text = format_group(&g, unicode);
            let back = parse_group(&text).map_err(|e| e.to_string())?;
            ensure(back == g, || format!("{text} parsed as {back}"))?;
            ensure(format_group(&back, unicode) == text, || format!("{text} re-printed differently"))?;
        }
    }
    let snapshots = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/snapshots");
    let golden: [(&str, &[&str]); 5] = [
        ("stems_Z.json", &["--json", "stems", "Z"]),
        ("stems_Z2.json", &["--json", "stems", "Z/2"]),
        ("maps_Z2_Z2.json", &["--json", "maps", "Z/2", "Z/2"]),
        ("maps_Z_Z24.json", &["--json", "maps", "Z", "Z/24"]),
        ("maps_Z2_Z.json", &["--json", "maps", "Z/2", "Z"]),
    ];
    for (file, args) in golden {
        let (code, first) = moore(args)?;
        let (_, second) = moore(args)?;
        ensure(code == 0, || format!("moore {args:?} exited with {code}"))?;
        ensure(first == second, || format!("moore {args:?} is not byte-stable"))?;
        let want = std::fs::read_to_string(snapshots.join(file)).map_err(|e| format!("{file}: {e}"))?;
        ensure(first == want, || format!("moore {args:?} differs from {file}:\n{first}"))?;
    }
    Ok("100 round trips, 5 snapshots".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden stems of the sphere", golden_sphere),
        ("golden stems of the mod 2 Moore space", golden_p),
        ("morphism groups", morphism_groups),
        ("order identities", order_identities),
        ("lambda isomorphisms", lambda_suite),
        ("oracle equivalence", oracle_equivalence),
        ("equivalence of categories", equivalence),
        ("Moore diagram relations", relations),
        ("Smith normal form properties", snf_suite),
        ("CLI round trip and snapshots", cli),
    ];
    // keep the default hook quiet; failures are reported below
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

