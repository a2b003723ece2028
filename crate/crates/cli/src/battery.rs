//! The verification battery behind `moore check`.

use moore_core::oracle::{self, FunctorKind};
use moore_core::{
    ahss_order_check, canonical_couple, ext, homotopy_ses_order_check, lambda_iso_check, moore, pi3_legs,
    stable_stem, tensor, tor, BigInt, Group, HomGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Size {
    Small,
    Full,
}

/// One named family of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn cyclic(n: i64) -> Group {
    Group::cyclic(BigInt::from(n))
}

/// The cyclic groups of the battery, `Z` first.
pub fn cyclic_battery(size: Size) -> Vec<Group> {
    let moduli: &[i64] = match size {
        Size::Small => &[0, 2, 3, 4],
        Size::Full => &[0, 2, 3, 4, 8, 9, 12, 24, 240],
    };
    moduli.iter().map(|&n| cyclic(n)).collect()
}

/// Cyclic groups followed by all 2-fold sums of them.
pub fn battery(size: Size) -> Vec<Group> {
    let c = cyclic_battery(size);
    let mut out = c.clone();
    for i in 0..c.len() {
        for j in i..c.len() {
            out.push(c[i].direct_sum(&c[j]));
        }
    }
    out
}

/// Elementary abelian 2-groups of rank `0..=3`.
pub fn elementary_twos() -> Vec<Group> {
    (0..=3).map(|r| Group::from_cyclics(&vec![BigInt::from(2); r])).collect()
}

fn functor_tables(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("functor tables");
    for a in groups {
        for b in groups {
            let cases = [
                (FunctorKind::Tensor, tensor(a, b)),
                (FunctorKind::Tor, tor(a, b)),
                (FunctorKind::Ext, ext(a, b)),
                (FunctorKind::Hom, HomGroup::new(a, b).group().clone()),
            ];
            for (kind, got) in cases {
                let want = oracle::cyclic_table_functor(kind, a, b);
                r.record(want.as_ref() == Ok(&got), || format!("{kind:?}({a}, {b}) = {got}, table {want:?}"));
            }
        }
    }
    r
}

fn hom_counts(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("hom counts");
    for a in groups.iter().filter(|g| g.is_finite()) {
        for b in groups.iter().filter(|g| g.is_finite()) {
            let got = HomGroup::new(a, b).group().order();
            let want = oracle::count_homs(a, b).map(BigInt::from);
            r.record(want.as_ref().ok() == got.as_ref(), || format!("|Hom({a}, {b})|"));
        }
    }
    r
}

fn ahss_orders(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("stem orders");
    for a in groups.iter().filter(|g| g.is_finite()) {
        for q in 0..=moore::MAX_STEM {
            r.record(ahss_order_check(a, q) == Ok(true), || format!("|π_{q}({a})|"));
        }
    }
    r
}

fn ses_orders(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("homotopy class orders");
    for a in groups.iter().filter(|g| g.is_finite()) {
        for b in groups.iter().filter(|g| g.is_finite()) {
            r.record(homotopy_ses_order_check(a, b) == Ok(true), || format!("|[{a}, {b}]|"));
        }
    }
    r
}

fn lambda_suite(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("lambda isomorphisms");
    let twos = elementary_twos();
    for a in &twos {
        for b in &twos {
            r.record(lambda_iso_check(a, b) == Ok(true), || format!("λ({a}, {b})"));
        }
    }
    for a in &twos[1..3] {
        for b in groups {
            r.record(lambda_iso_check(a, b) == Ok(true), || format!("λ({a}, {b})"));
            r.record(lambda_iso_check(b, a) == Ok(true), || format!("λ({b}, {a})"));
        }
    }
    r
}

fn couples(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("canonical couples");
    for a in groups {
        let ok = canonical_couple(a).map(|d| {
            d.is_valid()
                && d.phi2() == &moore::closed_form_phi2(a)
                && (!a.is_finite() || oracle::couple_element_check(&d) == Ok(true))
        });
        r.record(ok == Ok(true), || format!("D({a})"));
    }
    r
}

fn pushouts(groups: &[Group]) -> CheckResult {
    let mut r = CheckResult::new("pi_3 pushouts");
    for a in groups.iter().filter(|g| g.is_finite()) {
        let ok = pi3_legs(a).and_then(|(f, g)| {
            let want = oracle::pushout_element_oracle(&f, &g)?;
            Ok(stable_stem(a, 3)? == want)
        });
        r.record(ok == Ok(true), || format!("π_3({a})"));
    }
    r
}

fn relations() -> CheckResult {
    let mut r = CheckResult::new("couple relations");
    let report = oracle::couple_relations_check::<BigInt>();
    r.record(report.as_ref().map(|x| x.all()) == Ok(true), || format!("{report:?}"));
    r
}

pub fn run(size: Size) -> Vec<CheckResult> {
    let groups = battery(size);
    let cyclics = cyclic_battery(size);
    vec![
        functor_tables(&groups),
        hom_counts(&groups),
        ahss_orders(&groups),
        ses_orders(&cyclics),
        lambda_suite(&groups),
        couples(&groups),
        pushouts(&groups),
        relations(),
    ]
}
