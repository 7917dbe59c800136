//! Higher integrals through iterated commutators with the gauged operator,
//! and the bilinear form they induce on quasi-invariants.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{MatrixQ, Polynomial, QuadraticNumber, Rational};
use crate::config::{Configuration, SystemLabel};
use crate::diffop::DiffOp;
use crate::fraction::HyperplaneFraction;
use crate::quasi::{is_quasi_invariant, quasi_space, QuasiBasis};
use crate::{Error, Result};

/// A homogeneous quasi-invariant `q` together with the constant
/// `1/(2^d d!)` that turns `ad_L^d q` into an integral with highest term
/// `q(∂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralSpec {
    q: Polynomial,
    degree: u32,
    normalization: Rational,
}

impl IntegralSpec {
    pub fn new(config: &Configuration, q: Polynomial) -> Result<Self> {
        if q.is_zero() || !q.is_homogeneous() {
            return Err(Error::NotQuasiInvariant("integral needs a nonzero homogeneous polynomial".into()));
        }
        let report = is_quasi_invariant(config, &q);
        if !report.passed() {
            let v = report.violations[0];
            return Err(Error::NotQuasiInvariant(format!("fails at root {} order {}", v.root, v.order)));
        }
        let degree = q.degree().unwrap_or(0);
        let mut den = BigInt::one();
        for k in 1..=degree {
            den *= 2 * k;
        }
        Ok(IntegralSpec { q, degree, normalization: Rational::new(BigInt::one(), den) })
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn normalization(&self) -> &Rational {
        &self.normalization
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `c_d Σ_j (−1)^{d−j} C(d,j) L^j(q · L^{d−j} f)`.
pub fn integral_apply_fraction(
    config: &Configuration,
    spec: &IntegralSpec,
    f: &HyperplaneFraction,
) -> HyperplaneFraction {
    let op = config.gauged_operator();
    let d = spec.degree;
    let mut powers = Vec::with_capacity(d as usize + 1);
    powers.push(f.clone());
    for k in 0..d as usize {
        let next = op.apply(&powers[k]);
        powers.push(next);
    }
    let terms: Vec<HyperplaneFraction> = (0..=d)
        .into_par_iter()
        .map(|j| {
            let mut g = powers[(d - j) as usize].mul_polynomial(&spec.q);
            for _ in 0..j {
                g = op.apply(&g);
            }
            g
        })
        .collect();
    let c = QuadraticNumber::rational(spec.normalization.clone());
    let weighted = terms.iter().enumerate().map(|(j, t)| {
        let sign = if (d as usize - j).is_multiple_of(2) { 1 } else { -1 };
        (&c * &QuadraticNumber::from_int(sign * binomial(d, j as u32)), t)
    });
    HyperplaneFraction::linear_combination(config.forms(), config.ambient_dim(), weighted)
}

pub fn integral_apply(config: &Configuration, spec: &IntegralSpec, f: &Polynomial) -> HyperplaneFraction {
    integral_apply_fraction(config, spec, &HyperplaneFraction::from_polynomial(f.clone(), config.forms()))
}

/// `(p, q) = (L_p q)(0)`; zero across different degrees.
pub fn bilinear_form(config: &Configuration, p: &Polynomial, q: &Polynomial) -> Result<QuadraticNumber> {
    let spec = IntegralSpec::new(config, p.clone())?;
    let qr = is_quasi_invariant(config, q);
    if !qr.passed() {
        return Err(Error::NotQuasiInvariant(format!("second argument fails at root {}", qr.violations[0].root)));
    }
    if q.degree() != p.degree() {
        return Ok(QuadraticNumber::zero());
    }
    Ok(integral_apply(config, &spec, q).as_polynomial()?.constant_term())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub degree: u32,
    pub basis: QuasiBasis,
    pub matrix: MatrixQ,
    pub symmetric: bool,
    pub determinant: QuadraticNumber,
}

impl GramReport {
    pub fn non_degenerate(&self) -> bool {
        !self.determinant.is_zero()
    }
}

pub fn gram_matrix(config: &Configuration, d: u32) -> Result<GramReport> {
    let basis = quasi_space(config, d);
    let n = basis.dim();
    let entries: Vec<QuadraticNumber> = (0..n * n)
        .into_par_iter()
        .map(|k| bilinear_form(config, &basis.basis[k / n], &basis.basis[k % n]))
        .collect::<Result<_>>()?;
    let rows = entries.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
    let matrix = MatrixQ::from_rows(n, rows);
    let determinant = if n == 0 { QuadraticNumber::one() } else { matrix.determinant() };
    Ok(GramReport { degree: d, symmetric: matrix.is_symmetric(), basis, matrix, determinant })
}

fn a2_check(config: &Configuration) -> Result<u32> {
    if config.label() != SystemLabel::A2Planar {
        return Err(Error::InvalidParameters("explicit integrals exist only for the planar A2 model".into()));
    }
    Ok(config.params().m)
}

/// `Σ c x^i y^j` with rational coefficients.
fn xy(terms: &[(i64, u32, u32)]) -> Polynomial {
    Polynomial::from_terms(2, terms.iter().map(|&(c, i, j)| (vec![i, j], QuadraticNumber::from_int(c))))
}

/// Denominator `x^a (x+sy)^b (x−sy)^b`, `s = √(2m+1)`, in the
/// configuration's form order.
fn planar_fraction(config: &Configuration, num: Polynomial, a: u32, b: u32) -> HyperplaneFraction {
    HyperplaneFraction::new(num, vec![a, b, b], config.forms().clone())
}

fn constant_term(config: &Configuration, c: i64) -> HyperplaneFraction {
    HyperplaneFraction::from_polynomial(Polynomial::constant(2, QuadraticNumber::from_int(c)), config.forms())
}

/// The planar `A₂(m)` second-order integral written out in coordinates.
pub fn explicit_l1(config: &Configuration) -> Result<DiffOp> {
    let m = a2_check(config)? as i64;
    let mut op = DiffOp::new(2, config.forms().clone());
    op.add_term(vec![2, 0], constant_term(config, 1));
    op.add_term(vec![0, 2], constant_term(config, 1));
    op.add_term(vec![0, 1], planar_fraction(config, xy(&[(4 * (1 + 2 * m), 0, 1)]), 0, 1));
    op.add_term(vec![1, 0], planar_fraction(config, xy(&[(2 * m * (1 + 2 * m), 0, 2), (-2 * (2 + m), 2, 0)]), 1, 1));
    Ok(op)
}

/// The planar `A₂(m)` third-order integral written out in coordinates.
pub fn explicit_l2(config: &Configuration) -> Result<DiffOp> {
    let m = a2_check(config)? as i64;
    let d = 2 * m + 1;
    let mut op = DiffOp::new(2, config.forms().clone());
    op.add_term(vec![0, 3], constant_term(config, 2 * m - 1));
    op.add_term(vec![2, 1], constant_term(config, -3));
    // (2m+1)y² − x² = −(x+sy)(x−sy)
    op.add_term(vec![0, 2], planar_fraction(config, xy(&[(6 * (4 * m * m - 1), 0, 1)]), 0, 1));
    op.add_term(vec![2, 0], planar_fraction(config, xy(&[(-6 * d, 0, 1)]), 0, 1));
    op.add_term(vec![1, 1], planar_fraction(config, xy(&[(6 * (m + 2), 2, 0), (-6 * m * d, 0, 2)]), 1, 1));
    op.add_term(vec![1, 0], planar_fraction(config, xy(&[(-12 * d * (m - 2), 2, 1), (-12 * d * m * d, 0, 3)]), 1, 2));
    op.add_term(vec![0, 1], planar_fraction(config, xy(&[(-12 * d, 2, 0), (-12 * d * (1 - 4 * m * m), 0, 2)]), 0, 2));
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homogeneous_monomials;

    fn k2() -> Polynomial {
        xy(&[(1, 2, 0), (1, 0, 2)])
    }

    #[test]
    fn normalization_constants() {
        let c = Configuration::a2(1).unwrap();
        assert_eq!(IntegralSpec::new(&c, k2()).unwrap().normalization(), &Rational::new(1.into(), 8.into()));
        let p2 = c.generators().remove(1);
        assert_eq!(IntegralSpec::new(&c, p2).unwrap().normalization(), &Rational::new(1.into(), 48.into()));
        assert!(IntegralSpec::new(&c, xy(&[(1, 1, 1)])).is_err());
    }

    #[test]
    fn laplacian_integral_is_the_gauged_operator() {
        let c = Configuration::a2(2).unwrap();
        let spec = IntegralSpec::new(&c, k2()).unwrap();
        for mono in homogeneous_monomials(2, 3) {
            let f = Polynomial::monomial(2, mono, QuadraticNumber::one());
            assert_eq!(integral_apply(&c, &spec, &f), c.gauged_operator().apply_polynomial(&f));
        }
    }

    #[test]
    fn explicit_l1_matches_gauged() {
        for m in 1..=3 {
            let c = Configuration::a2(m).unwrap();
            assert!(explicit_l1(&c).unwrap().same_coefficients(c.gauged_operator()));
        }
    }

    #[test]
    fn operator_on_k2_is_constant() {
        let c = Configuration::a2(2).unwrap();
        let r = c.gauged_operator().apply_polynomial(&k2()).as_polynomial().unwrap();
        assert_eq!(r, Polynomial::constant(2, QuadraticNumber::from_int(-12)));
        assert_eq!(bilinear_form(&c, &k2(), &k2()).unwrap(), QuadraticNumber::from_int(-12));
    }

    #[test]
    fn operator_on_xy_has_axis_pole() {
        let c = Configuration::a2(2).unwrap();
        let r = c.gauged_operator().apply_polynomial(&xy(&[(1, 1, 1)]));
        // numerator y²(6m x² + 2m(2m+1)y²) over x(x² − (2m+1)y²)
        assert_eq!(r.as_polynomial(), Err(Error::NonPolynomial { factors: vec![0, 1, 2] }));
    }

    #[test]
    fn small_gram_matrices() {
        let c = Configuration::a2(2).unwrap();
        let g = gram_matrix(&c, 2).unwrap();
        assert_eq!(g.determinant, QuadraticNumber::from_int(-12));
        let g = gram_matrix(&c, 1).unwrap();
        assert_eq!(g.matrix.rows(), 0);
        assert!(g.non_degenerate());
        let g = gram_matrix(&c, 4).unwrap();
        assert_eq!(g.matrix.rows(), 2);
        assert!(g.symmetric && g.non_degenerate());
    }
}
