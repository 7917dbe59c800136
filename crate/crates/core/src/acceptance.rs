//! The reproduction checks run by `quasinv verify-all` and by the
//! `acceptance` test target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{homogeneous_monomials, Polynomial, QuadraticNumber, SeriesTable};
use crate::config::{check_hyperplane_identities, Configuration, SystemLabel};
use crate::fraction::HyperplaneFraction;
use crate::harmonic::{
    default_quotient_bound, defining_integrals, free_module_check, harmonic_profile, harmonic_space, hilbert_quotient,
    in_ideal_span, meets_ideal_trivially, reference_harmonics, same_span,
};
use crate::operators::{
    bilinear_form, explicit_l1, explicit_l2, gram_matrix, integral_apply, integral_apply_fraction, IntegralSpec,
};
use crate::quasi::{closed_form_numerator, default_bound, is_quasi_invariant, poincare_numerator, quasi_space};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Failed sub-checks, or a short summary when everything passed.
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "A2 Poincaré numerators"),
    (2, "C2 Poincaré numerators"),
    (3, "palindromic numerators"),
    (4, "A2 harmonic profile and explicit harmonics"),
    (5, "degree-5 harmonic degeneration at m=2"),
    (6, "quotient ranks"),
    (7, "bilinear form"),
    (8, "operator consistency"),
    (9, "structural identities"),
    (10, "free-module bookkeeping"),
];

pub const A2_MS: [u32; 4] = [1, 2, 3, 4];
pub const C2_PARAMS: [(u32, u32); 5] = [(1, 0), (2, 0), (1, 1), (2, 1), (3, 2)];
const C2_SMALL: [(u32, u32); 3] = [(1, 0), (1, 1), (2, 1)];
const SEED: u64 = 0x5eed_0a2c;

/// Failed sub-check messages collected while a criterion runs.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                let w = what();
                self.check(false, || format!("{w}: {e}"));
            }
        }
    }

    fn finish(self, id: u8) -> CriterionResult {
        let name = CRITERIA[id as usize - 1].1;
        let passed = self.failures.is_empty();
        let detail = if passed { format!("{} checks", self.count) } else { self.failures.join("; ") };
        CriterionResult { id, name, passed, detail }
    }
}

fn a2(m: u32) -> Configuration {
    Configuration::a2(m).expect("valid parameters")
}

fn c2(m: u32, l: u32) -> Configuration {
    Configuration::c2(m, l).expect("valid parameters")
}

fn planar_numerators() -> Vec<(Configuration, Result<SeriesTable>)> {
    let configs: Vec<Configuration> =
        A2_MS.iter().map(|&m| a2(m)).chain(C2_PARAMS.iter().map(|&(m, l)| c2(m, l))).collect();
    configs
        .into_iter()
        .map(|c| {
            let r = poincare_numerator(&c, default_bound(&c)).map(|r| r.numerator);
            (c, r)
        })
        .collect()
}

fn numerators_match(label: SystemLabel) -> CriterionResult {
    let mut checks = Checks::default();
    for (c, r) in planar_numerators().into_iter().filter(|(c, _)| c.label() == label) {
        let p = c.params();
        let cf = closed_form_numerator(label, p.m, p.l);
        checks.check_result(r.and_then(|n| Ok(n == cf?)), || format!("{c} numerator differs from closed form"));
    }
    checks.finish(if label == SystemLabel::A2Planar { 1 } else { 2 })
}

fn criterion_3() -> CriterionResult {
    let mut checks = Checks::default();
    for (c, r) in planar_numerators() {
        checks.check_result(r.map(|n| n.is_palindromic()), || format!("{c} numerator is not palindromic"));
    }
    checks.finish(3)
}

fn criterion_4() -> CriterionResult {
    let mut checks = Checks::default();
    for m in 1..=3 {
        let c = a2(m);
        let profile = harmonic_profile(&c, default_bound(&c));
        let expected = closed_form_numerator(SystemLabel::A2Planar, m, 0).expect("planar");
        checks.check(profile.trimmed() == expected, || format!("{c} harmonic profile {profile}"));
        let refs = reference_harmonics(m);
        let mut degrees: Vec<u32> = refs.iter().filter_map(|p| p.degree()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let want: Vec<Polynomial> = refs.iter().filter(|p| p.degree() == Some(d)).cloned().collect();
            let got = harmonic_space(&c, d).basis;
            checks.check(same_span(&got, &want, 2, d), || format!("{c} harmonic span differs in degree {d}"));
        }
    }
    checks.finish(4)
}

fn criterion_5() -> CriterionResult {
    let mut checks = Checks::default();
    let c = a2(2);
    let g = c.generators();
    let product = &g[0] * &g[1];
    let h = harmonic_space(&c, 5).basis;
    checks.check(h.len() == 1 && same_span(&h, &[product], 2, 5), || "A2(2) degree-5 harmonic is not p1·p2".into());
    for m in [1, 3] {
        let c = a2(m);
        let h = harmonic_space(&c, 5).basis;
        let q3 = reference_harmonics(m).remove(2);
        checks.check(!in_ideal_span(&c, &q3, 5), || format!("{c} degree-5 harmonic lies in the ideal"));
        checks.check(meets_ideal_trivially(&c, &h, 5), || format!("{c} degree-5 harmonics meet the ideal"));
    }
    checks.finish(5)
}

fn criterion_6() -> CriterionResult {
    let mut checks = Checks::default();
    let mut cases: Vec<(Configuration, i64)> = A2_MS.iter().map(|&m| (a2(m), 6)).collect();
    cases.extend((1..=2).map(|m| (Configuration::an(2, m).expect("valid"), 6)));
    cases.extend(C2_PARAMS.iter().map(|&(m, l)| (c2(m, l), 8)));
    for (c, mu) in cases {
        let r = hilbert_quotient(&c, default_quotient_bound(&c)).map(|t| t.stabilized && t.total == mu);
        checks.check_result(r, || format!("{c} quotient total is not {mu}"));
    }
    checks.finish(6)
}

fn random_element(c: &Configuration, d: u32, rng: &mut ChaCha8Rng) -> Option<Polynomial> {
    let basis = quasi_space(c, d).basis;
    if basis.is_empty() {
        return None;
    }
    loop {
        let mut p = Polynomial::zero(c.ambient_dim());
        for b in &basis {
            p = &p + &b.scale(&QuadraticNumber::from_int(rng.gen_range(-3..=3)));
        }
        if !p.is_zero() {
            return Some(p);
        }
    }
}

/// `(qr, p) = (L_r L_q p)(0)` on random homogeneous quasi-invariants.
fn adjointness_holds(c: &Configuration, rng: &mut ChaCha8Rng) -> Result<bool> {
    let mut done = 0;
    while done < 10 {
        let dp = rng.gen_range(2..=7);
        let dq = rng.gen_range(1..dp);
        let (Some(p), Some(q), Some(r)) =
            (random_element(c, dp, rng), random_element(c, dq, rng), random_element(c, dp - dq, rng))
        else {
            continue;
        };
        let lhs = bilinear_form(c, &(&q * &r), &p)?;
        let lq = integral_apply(c, &IntegralSpec::new(c, q)?, &p);
        let rhs = integral_apply_fraction(c, &IntegralSpec::new(c, r)?, &lq).as_polynomial()?.constant_term();
        if lhs != rhs {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}

fn criterion_7() -> CriterionResult {
    let mut checks = Checks::default();
    let configs: Vec<Configuration> = (1..=3).map(a2).chain(C2_SMALL.iter().map(|&(m, l)| c2(m, l))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for c in &configs {
        for d in 0..=8 {
            let r = gram_matrix(c, d).map(|g| g.symmetric && g.non_degenerate());
            checks.check_result(r, || format!("{c} Gram matrix in degree {d}"));
        }
        if c.label() == SystemLabel::A2Planar {
            let k2 = c.generators().remove(0);
            let want = QuadraticNumber::from_int(-(4 * c.params().m as i64 + 4));
            checks.check_result(bilinear_form(c, &k2, &k2).map(|v| v == want), || format!("{c} (k², k²)"));
        }
        checks.check_result(adjointness_holds(c, &mut rng), || format!("{c} adjointness"));
    }
    checks.finish(7)
}

/// Monomials of degree at most 6 in `nvars` variables.
pub fn probe_set(nvars: usize) -> Vec<Polynomial> {
    (0..=6)
        .flat_map(|d| homogeneous_monomials(nvars, d))
        .map(|u| Polynomial::monomial(nvars, u, QuadraticNumber::one()))
        .collect()
}

fn k_squared(c: &Configuration) -> Polynomial {
    let n = c.ambient_dim();
    (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &Polynomial::var(n, i).pow(2))
}

fn criterion_8() -> CriterionResult {
    let mut checks = Checks::default();
    let configs: Vec<Configuration> = (1..=3).map(a2).chain([c2(1, 0), c2(2, 1)]).collect();
    for c in &configs {
        let probes = probe_set(c.ambient_dim());
        let op = c.gauged_operator();
        match IntegralSpec::new(c, k_squared(c)) {
            Ok(spec) => {
                let ok = probes.iter().all(|f| integral_apply(c, &spec, f) == op.apply_polynomial(f));
                checks.check(ok, || format!("{c} k² integral differs from the gauged operator"));
            }
            Err(e) => checks.check(false, || format!("{c}: {e}")),
        }
        if c.label() != SystemLabel::A2Planar {
            continue;
        }
        let l1 = explicit_l1(c).expect("planar A2");
        checks.check(l1.same_coefficients(op), || format!("{c} gauged coefficients differ from explicit L1"));
        let l2 = explicit_l2(c).expect("planar A2");
        let spec = IntegralSpec::new(c, c.generators().remove(1)).expect("p2 is quasi-invariant");
        let ok = probes.iter().all(|f| integral_apply(c, &spec, f) == l2.apply_polynomial(f));
        checks.check(ok, || format!("{c} p2 integral differs from explicit L2"));
    }
    checks.finish(8)
}

/// Every configuration the structural checks range over.
pub fn test_matrix() -> Vec<Configuration> {
    let mut out: Vec<Configuration> = (1..=4).map(a2).collect();
    for s in 0..=5 {
        for m in 0..=s {
            out.push(c2(m, s - m));
        }
    }
    for n in 2..=3 {
        for m in 1..=3 {
            out.push(Configuration::an(n, m).expect("valid"));
        }
    }
    for (n, m, l) in [(2, 1, 0), (2, 4, 1), (2, 1, 1)] {
        out.push(Configuration::cn(n, m, l).expect("valid"));
    }
    out
}

fn criterion_9() -> CriterionResult {
    let mut checks = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for c in test_matrix() {
        let report = check_hyperplane_identities(&c);
        checks.check(report.passed(), || format!("{c} identity fails at roots {:?}", report.failures()));
        for (s, g) in c.generators().iter().enumerate() {
            checks
                .check(is_quasi_invariant(&c, g).passed(), || format!("{c} Newton sum {} not quasi-invariant", s + 1));
        }
        for _ in 0..20 {
            let da = rng.gen_range(1..=5);
            let db = rng.gen_range(1..=10 - da);
            if let (Some(a), Some(b)) = (random_element(&c, da, &mut rng), random_element(&c, db, &mut rng)) {
                checks.check(is_quasi_invariant(&c, &(&a * &b)).passed(), || {
                    format!("{c} product of degrees {da}, {db} not quasi-invariant")
                });
            }
        }
    }
    let planar: Vec<Configuration> = (1..=3).map(a2).chain(C2_SMALL.iter().map(|&(m, l)| c2(m, l))).collect();
    for c in planar.iter().chain(&[Configuration::an(2, 1).expect("valid")]) {
        let one = HyperplaneFraction::from_polynomial(Polynomial::one(c.ambient_dim()), c.forms());
        for spec in defining_integrals(c) {
            checks.check(integral_apply_fraction(c, &spec, &one).is_zero(), || {
                format!("{c} integral of degree {} does not annihilate 1", spec.degree())
            });
        }
    }
    for c in &planar {
        let p = c.params();
        let degrees = closed_form_numerator(c.label(), p.m, p.l).expect("planar");
        for (d, _) in degrees.nonzero() {
            for h in harmonic_space(c, d as u32).basis {
                checks.check(is_quasi_invariant(c, &h).passed(), || format!("{c} harmonic of degree {d}"));
            }
        }
    }
    checks.finish(9)
}

fn criterion_10() -> CriterionResult {
    let mut checks = Checks::default();
    let configs: Vec<Configuration> = (1..=3).map(a2).chain(C2_SMALL.iter().map(|&(m, l)| c2(m, l))).collect();
    for c in &configs {
        let r = free_module_check(c, default_bound(c));
        checks.check_result(r.as_ref().map(|r| r.passed()).map_err(Clone::clone), || match &r {
            Ok(r) => format!("{c}: {:?}", r.failures),
            Err(_) => format!("{c}"),
        });
    }
    checks.finish(10)
}

pub fn run_criterion(id: u8) -> CriterionResult {
    match id {
        1 => numerators_match(SystemLabel::A2Planar),
        2 => numerators_match(SystemLabel::C2Planar),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => panic!("no criterion {id}"),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id)).collect()
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{status}] {}: {}", self.id, self.name, self.detail)
    }
}
