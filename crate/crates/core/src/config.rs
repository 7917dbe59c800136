//! The deformed configurations, their Newton sums and the gauged
//! Calogero–Moser operator.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::algebra::{LinearForm, Polynomial, QuadraticNumber, Rational};
use crate::diffop::DiffOp;
use crate::fraction::HyperplaneFraction;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemLabel {
    /// `A₂(m)` in the plane: `e₁` (mult m), `e₁ ± √(2m+1) e₂` (mult 1).
    A2Planar,
    /// `C₂(m, l)` in the plane.
    C2Planar,
    /// `A_n(m)` in n+1 variables.
    An,
    /// `C_{n+1}(m, l)` in n+1 variables.
    Cn,
}

impl SystemLabel {
    pub fn name(self) -> &'static str {
        match self {
            SystemLabel::A2Planar => "a2",
            SystemLabel::C2Planar => "c2",
            SystemLabel::An => "an",
            SystemLabel::Cn => "cn",
        }
    }
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a2" | "a2_planar" | "a2-planar" => Ok(SystemLabel::A2Planar),
            "c2" | "c2_planar" | "c2-planar" => Ok(SystemLabel::C2Planar),
            "an" => Ok(SystemLabel::An),
            "cn" => Ok(SystemLabel::Cn),
            other => Err(Error::InvalidParameters(format!("unknown system {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: u32,
    pub l: u32,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub form: LinearForm,
    pub multiplicity: u32,
}

/// A finite set of pairwise non-proportional covectors with positive
/// integer multiplicities.
#[derive(Clone, Debug)]
pub struct Configuration {
    label: SystemLabel,
    params: Params,
    ambient_dim: usize,
    discriminant: u64,
    roots: Vec<Root>,
    forms: Arc<[LinearForm]>,
    operator: OnceLock<DiffOp>,
}

fn int(n: i64) -> QuadraticNumber {
    QuadraticNumber::from_int(n)
}

fn frac(a: i64, b: i64) -> QuadraticNumber {
    QuadraticNumber::from_frac(a, b)
}

fn unit_form(dim: usize, entries: &[(usize, QuadraticNumber)]) -> LinearForm {
    let mut c = vec![QuadraticNumber::zero(); dim];
    for (i, v) in entries {
        c[*i] = v.clone();
    }
    LinearForm::new(c)
}

impl Configuration {
    /// Builds one of the four families. Parameters not used by a family are
    /// ignored (`n` for the planar systems, `l` for the A-family).
    pub fn build(label: SystemLabel, m: u32, l: u32, n: u32) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParameters(msg));
        let mut roots = Vec::new();
        let (ambient_dim, discriminant, params) = match label {
            SystemLabel::A2Planar => {
                if m < 1 {
                    return invalid(format!("A2 requires m >= 1, got m = {m}"));
                }
                let d = 2 * m as u64 + 1;
                let s = QuadraticNumber::sqrt(d);
                roots.push(Root { form: unit_form(2, &[(0, int(1))]), multiplicity: m });
                roots.push(Root { form: unit_form(2, &[(0, int(1)), (1, s.clone())]), multiplicity: 1 });
                roots.push(Root { form: unit_form(2, &[(0, int(1)), (1, -s)]), multiplicity: 1 });
                (2, d, Params { m, l: 0, n: 2 })
            }
            SystemLabel::C2Planar => {
                let d = (2 * m as u64 + 1) * (2 * l as u64 + 1);
                let sk = sqrt_kappa(m, l);
                if m > 0 {
                    roots.push(Root { form: unit_form(2, &[(0, int(2))]), multiplicity: m });
                }
                if l > 0 {
                    roots.push(Root { form: unit_form(2, &[(1, &sk * &int(2))]), multiplicity: l });
                }
                roots.push(Root { form: unit_form(2, &[(0, int(1)), (1, sk.clone())]), multiplicity: 1 });
                roots.push(Root { form: unit_form(2, &[(0, int(1)), (1, -sk)]), multiplicity: 1 });
                (2, d, Params { m, l, n: 1 })
            }
            SystemLabel::An => {
                if m < 1 {
                    return invalid(format!("A_n requires m >= 1, got m = {m}"));
                }
                if n < 2 {
                    return invalid(format!("A_n requires n >= 2, got n = {n}"));
                }
                let dim = n as usize + 1;
                let sm = QuadraticNumber::sqrt(m as u64);
                for i in 0..n as usize {
                    for j in i + 1..n as usize {
                        roots.push(Root { form: unit_form(dim, &[(i, int(1)), (j, int(-1))]), multiplicity: m });
                    }
                }
                for i in 0..n as usize {
                    roots.push(Root { form: unit_form(dim, &[(i, int(1)), (n as usize, -&sm)]), multiplicity: 1 });
                }
                (dim, m as u64, Params { m, l: 0, n })
            }
            SystemLabel::Cn => {
                if n < 1 {
                    return invalid(format!("C_(n+1) requires n >= 1, got n = {n}"));
                }
                let num = 2 * m + 1;
                let den = 2 * l + 1;
                if n >= 2 && !num.is_multiple_of(den) {
                    return invalid(format!("kappa = {num}/{den} must be a positive integer when n >= 2"));
                }
                let kappa = num / den;
                let dim = n as usize + 1;
                let last = n as usize;
                let sk = sqrt_kappa(m, l);
                for i in 0..n as usize {
                    for j in i + 1..n as usize {
                        for sign in [1, -1] {
                            roots.push(Root {
                                form: unit_form(dim, &[(i, int(1)), (j, int(sign))]),
                                multiplicity: kappa,
                            });
                        }
                    }
                }
                if m > 0 {
                    for i in 0..n as usize {
                        roots.push(Root { form: unit_form(dim, &[(i, int(2))]), multiplicity: m });
                    }
                }
                if l > 0 {
                    roots.push(Root { form: unit_form(dim, &[(last, &sk * &int(2))]), multiplicity: l });
                }
                for i in 0..n as usize {
                    for sign in [1, -1] {
                        roots.push(Root {
                            form: unit_form(dim, &[(i, int(1)), (last, &sk * &int(sign))]),
                            multiplicity: 1,
                        });
                    }
                }
                (dim, (num as u64) * (den as u64), Params { m, l, n })
            }
        };
        Ok(Self::from_parts(label, params, ambient_dim, discriminant, roots))
    }

    fn from_parts(label: SystemLabel, params: Params, ambient_dim: usize, discriminant: u64, roots: Vec<Root>) -> Self {
        for (i, a) in roots.iter().enumerate() {
            assert!(a.multiplicity >= 1);
            for b in &roots[i + 1..] {
                assert!(!a.form.is_proportional(&b.form), "proportional roots");
            }
        }
        let forms: Arc<[LinearForm]> = roots.iter().map(|r| r.form.clone()).collect();
        Configuration { label, params, ambient_dim, discriminant, roots, forms, operator: OnceLock::new() }
    }

    pub fn a2(m: u32) -> Result<Self> {
        Self::build(SystemLabel::A2Planar, m, 0, 2)
    }

    pub fn c2(m: u32, l: u32) -> Result<Self> {
        Self::build(SystemLabel::C2Planar, m, l, 1)
    }

    pub fn an(n: u32, m: u32) -> Result<Self> {
        Self::build(SystemLabel::An, m, 0, n)
    }

    pub fn cn(n: u32, m: u32, l: u32) -> Result<Self> {
        Self::build(SystemLabel::Cn, m, l, n)
    }

    /// Same configuration with the multiplicity of one root replaced.
    pub fn with_multiplicity(&self, root: usize, multiplicity: u32) -> Self {
        let mut roots = self.roots.clone();
        roots[root].multiplicity = multiplicity;
        Self::from_parts(self.label, self.params, self.ambient_dim, self.discriminant, roots)
    }

    /// Same configuration with one root multiplied by a nonzero scalar.
    pub fn with_scaled_root(&self, root: usize, factor: &QuadraticNumber) -> Self {
        let mut roots = self.roots.clone();
        roots[root].form = roots[root].form.scale(factor);
        Self::from_parts(self.label, self.params, self.ambient_dim, self.discriminant, roots)
    }

    pub fn label(&self) -> SystemLabel {
        self.label
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn forms(&self) -> &Arc<[LinearForm]> {
        &self.forms
    }

    pub fn is_planar(&self) -> bool {
        matches!(self.label, SystemLabel::A2Planar | SystemLabel::C2Planar)
    }

    /// `κ = (2m+1)/(2l+1)` for the C-family.
    pub fn kappa(&self) -> Option<Rational> {
        match self.label {
            SystemLabel::C2Planar | SystemLabel::Cn => {
                Some(Rational::new(BigInt::from(2 * self.params.m + 1), BigInt::from(2 * self.params.l + 1)))
            }
            _ => None,
        }
    }

    /// Number of defining Newton sums (the rank of the deformed-invariant
    /// polynomial subalgebra).
    pub fn generator_count(&self) -> usize {
        match self.label {
            SystemLabel::A2Planar | SystemLabel::C2Planar => 2,
            SystemLabel::An | SystemLabel::Cn => self.params.n as usize + 1,
        }
    }

    /// Degrees of the defining Newton sums.
    pub fn denominator_degrees(&self) -> Vec<usize> {
        let k = self.generator_count();
        match self.label {
            SystemLabel::A2Planar => vec![2, 3],
            SystemLabel::An => (1..=k).collect(),
            SystemLabel::C2Planar | SystemLabel::Cn => (1..=k).map(|s| 2 * s).collect(),
        }
    }

    /// The defining Newton sums `s = 1..=generator_count()`.
    pub fn generators(&self) -> Vec<Polynomial> {
        (1..=self.generator_count() as u32).map(|s| newton_sum(self, s)).collect()
    }

    /// `Δ − Σ_α 2m_α/(α,x) ∂_α`, computed once per configuration.
    pub fn gauged_operator(&self) -> &DiffOp {
        self.operator.get_or_init(|| gauged_operator(self))
    }

    pub fn name(&self) -> String {
        let Params { m, l, n } = self.params;
        match self.label {
            SystemLabel::A2Planar => format!("A2({m})"),
            SystemLabel::C2Planar => format!("C2({m},{l})"),
            SystemLabel::An => format!("A{n}({m})"),
            SystemLabel::Cn => format!("C{}({m},{l})", n + 1),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `√κ = √((2m+1)(2l+1)) / (2l+1)`.
fn sqrt_kappa(m: u32, l: u32) -> QuadraticNumber {
    let d = (2 * m as u64 + 1) * (2 * l as u64 + 1);
    QuadraticNumber::sqrt(d) * frac(1, 2 * l as i64 + 1)
}

fn kappa_power(config: &Configuration, e: u32) -> QuadraticNumber {
    QuadraticNumber::rational(config.kappa().expect("C-family").pow(e as i32))
}

/// Deformed Newton sum of index `s ≥ 1`.
///
/// For the planar `A₂(m)` model the sums are the restrictions of the
/// ambient `p_{s+1}` to the plane spanned by the roots; `s = 1, 2` are
/// normalized to `x² + y²` and `(2m−1)y³ − 3x²y`.
pub fn newton_sum(config: &Configuration, s: u32) -> Polynomial {
    assert!(s >= 1);
    let dim = config.ambient_dim();
    let Params { m, n, .. } = config.params();
    let power = |var: usize, e: u32, c: QuadraticNumber| {
        let mut ex = vec![0; dim];
        ex[var] = e;
        Polynomial::monomial(dim, ex, c)
    };
    match config.label() {
        SystemLabel::An => {
            let mut p = Polynomial::zero(dim);
            for i in 0..n as usize {
                p = &p + &power(i, s, int(1));
            }
            // m^{(s−2)/2}
            let sm = QuadraticNumber::sqrt(m as u64);
            let c = if s >= 2 { sm.pow(s - 2) } else { sm.inv().expect("m >= 1") };
            &p + &power(n as usize, s, c)
        }
        SystemLabel::Cn | SystemLabel::C2Planar => {
            let k = if config.label() == SystemLabel::C2Planar { 1 } else { n as usize };
            let mut p = Polynomial::zero(dim);
            for i in 0..k {
                p = &p + &power(i, 2 * s, int(1));
            }
            &p + &power(k, 2 * s, kappa_power(config, s - 1))
        }
        SystemLabel::A2Planar => {
            let k = s + 1;
            let d = 2 * m as u64 + 1;
            let root = QuadraticNumber::sqrt(d);
            let inv_root = &root * &frac(1, d as i64);
            let x = Polynomial::var(2, 0);
            let yy = Polynomial::var(2, 1).scale(&inv_root);
            let x1 = &x + &yy;
            let x2 = &yy - &x;
            let tail = yy.pow(k).scale(&(int(-2).pow(k) * int(m as i64).pow(k - 1)));
            let p = &(&x1.pow(k) + &x2.pow(k)) + &tail;
            match s {
                1 => p.scale(&frac(1, 2)),
                2 => p.scale(&(&root * &frac(-1, 2))),
                _ => p,
            }
        }
    }
}

/// Per-root outcome of the hyperplane identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityEntry {
    pub root: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub entries: Vec<IdentityEntry>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.root).collect()
    }
}

/// For each root α checks that `Σ_{β≠α} m_β (α,β)/(β,x)` vanishes on the
/// hyperplane `(α,x) = 0`, after clearing the denominators `Π_{γ≠α}(γ,x)`.
pub fn check_hyperplane_identities(config: &Configuration) -> IdentityReport {
    let roots = config.roots();
    let dim = config.ambient_dim();
    let entries = (0..roots.len())
        .map(|a| {
            let alpha = &roots[a].form;
            let mut sum = Polynomial::zero(dim);
            for (b, beta) in roots.iter().enumerate() {
                if b == a {
                    continue;
                }
                let c = &int(beta.multiplicity as i64) * &alpha.dot(&beta.form);
                if c.is_zero() {
                    continue;
                }
                let mut term = Polynomial::constant(dim, c);
                for (g, gamma) in roots.iter().enumerate() {
                    if g != a && g != b {
                        term = term.mul_linear(&gamma.form);
                    }
                }
                sum = &sum + &term;
            }
            let (_, r) = sum.divide_by_linear_form(alpha);
            IdentityEntry { root: a, passed: r.is_zero() }
        })
        .collect();
    IdentityReport { entries }
}

/// The gauged operator with first-order coefficients combined per
/// coordinate direction.
pub fn gauged_operator(config: &Configuration) -> DiffOp {
    let dim = config.ambient_dim();
    let forms = config.forms();
    let mut op = DiffOp::new(dim, forms.clone());
    for i in 0..dim {
        let mut mi = vec![0; dim];
        mi[i] = 2;
        op.add_term(mi, HyperplaneFraction::from_polynomial(Polynomial::one(dim), forms));
    }
    for i in 0..dim {
        let parts: Vec<HyperplaneFraction> = config
            .roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.form.coeffs()[i].is_zero())
            .map(|(k, r)| {
                let c = &int(-2 * r.multiplicity as i64) * &r.form.coeffs()[i];
                let mut den = vec![0; forms.len()];
                den[k] = 1;
                HyperplaneFraction::new(Polynomial::constant(dim, c), den, forms.clone())
            })
            .collect();
        if parts.is_empty() {
            continue;
        }
        let mut mi = vec![0; dim];
        mi[i] = 1;
        op.add_term(mi, HyperplaneFraction::sum(forms, parts.iter()));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(terms: &[(QuadraticNumber, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(2, terms.iter().map(|(c, i, j)| (vec![*i, *j], c.clone())))
    }

    #[test]
    fn a2_planar_roots() {
        let c = Configuration::a2(2).unwrap();
        assert_eq!(c.roots().len(), 3);
        let mults: Vec<u32> = c.roots().iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![2, 1, 1]);
        assert_eq!(c.discriminant(), 5);
    }

    #[test]
    fn c2_axis_root_omitted_for_l_zero() {
        let c = Configuration::c2(1, 0).unwrap();
        assert_eq!(c.kappa().unwrap(), Rational::from_integer(3.into()));
        assert_eq!(c.roots().len(), 3);
        assert_eq!(c.roots()[0].form.coeffs(), &[int(2), int(0)]);
        let s3 = QuadraticNumber::sqrt(3);
        assert_eq!(c.roots()[1].form.coeffs(), &[int(1), s3.clone()]);
        assert_eq!(c.roots()[2].form.coeffs(), &[int(1), -s3]);
    }

    #[test]
    fn cn_parameter_validation() {
        let c = Configuration::cn(2, 1, 1).unwrap();
        assert_eq!(c.kappa().unwrap(), Rational::from_integer(1.into()));
        assert!(matches!(Configuration::cn(2, 0, 1), Err(Error::InvalidParameters(_))));
        assert!(Configuration::cn(1, 0, 1).is_ok());
        assert!(matches!(Configuration::a2(0), Err(Error::InvalidParameters(_))));
        assert!(matches!(Configuration::an(2, 0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn planar_newton_sums_match_closed_forms() {
        for m in 1..=4 {
            let c = Configuration::a2(m).unwrap();
            assert_eq!(newton_sum(&c, 1), xy(&[(int(1), 2, 0), (int(1), 0, 2)]));
            assert_eq!(newton_sum(&c, 2), xy(&[(int(2 * m as i64 - 1), 0, 3), (int(-3), 2, 1)]));
        }
        let c = Configuration::c2(2, 1).unwrap();
        let kappa = QuadraticNumber::from_frac(5, 3);
        assert_eq!(newton_sum(&c, 2), xy(&[(int(1), 4, 0), (kappa, 0, 4)]));
    }

    #[test]
    fn newton_sums_are_homogeneous() {
        let cases = [
            (Configuration::an(3, 2).unwrap(), 1),
            (Configuration::cn(2, 4, 1).unwrap(), 2),
            (Configuration::c2(1, 2).unwrap(), 2),
        ];
        for (c, factor) in cases {
            for s in 1..=4 {
                let p = newton_sum(&c, s);
                assert!(p.is_homogeneous());
                assert_eq!(p.degree(), Some(factor * s));
            }
        }
        let a2 = Configuration::a2(3).unwrap();
        for s in 1..=4 {
            assert_eq!(newton_sum(&a2, s).degree(), Some(s + 1));
        }
    }

    #[test]
    fn identities_hold_for_built_systems() {
        assert!(check_hyperplane_identities(&Configuration::a2(2).unwrap()).passed());
        assert!(check_hyperplane_identities(&Configuration::cn(2, 1, 0).unwrap()).passed());
    }

    #[test]
    fn perturbed_multiplicity_breaks_the_simple_roots() {
        let c = Configuration::a2(2).unwrap().with_multiplicity(0, 3);
        let report = check_hyperplane_identities(&c);
        assert_eq!(report.failures(), vec![1, 2]);
    }

    #[test]
    fn m_equal_l_is_the_coxeter_case() {
        // κ = 1: hyperplanes x=0, y=0, x±y=0 with multiplicities m, m, 1, 1
        let c = Configuration::c2(2, 2).unwrap();
        assert_eq!(c.discriminant(), 25);
        let forms: Vec<&[QuadraticNumber]> = c.roots().iter().map(|r| r.form.coeffs()).collect();
        assert_eq!(forms[1], &[int(0), int(2)]);
        assert_eq!(forms[2], &[int(1), int(1)]);
        assert_eq!(forms[3], &[int(1), int(-1)]);
        let mults: Vec<u32> = c.roots().iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![2, 2, 1, 1]);
    }
}
