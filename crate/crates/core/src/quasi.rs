//! Quasi-invariance, the graded pieces of the ring of quasi-invariants, and
//! their Poincaré series.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{
    homogeneous_monomials, series_coefficients, MatrixQ, Monomial, Polynomial, QuadraticNumber, SeriesTable,
};
use crate::config::{Configuration, SystemLabel};
use crate::{Error, Result};

/// A root index and odd derivative order at which quasi-invariance fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub root: usize,
    pub order: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuasiReport {
    pub violations: Vec<Violation>,
}

impl QuasiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `∂_α^s p` vanishes on `(α,x) = 0` for every root and every
/// odd `s < 2m_α`.
pub fn is_quasi_invariant(config: &Configuration, p: &Polynomial) -> QuasiReport {
    let mut violations = Vec::new();
    for (k, root) in config.roots().iter().enumerate() {
        let mut d = p.directional_derivative(&root.form);
        for s in (1..2 * root.multiplicity).step_by(2) {
            if s > 1 {
                d = d.directional_derivative(&root.form).directional_derivative(&root.form);
            }
            if d.is_zero() {
                break;
            }
            let (_, r) = d.divide_by_linear_form(&root.form);
            if !r.is_zero() {
                violations.push(Violation { root: k, order: s });
            }
        }
    }
    QuasiReport { violations }
}

/// Homogeneous quasi-invariants of one degree, in reduced row echelon form
/// with respect to the descending-lex monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiBasis {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

impl QuasiBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Linear conditions on the coefficients of a degree-`d` polynomial, one
/// row per (root, odd order, residual monomial).
pub fn condition_matrix(config: &Configuration, d: u32) -> (Vec<Monomial>, MatrixQ) {
    let monomials = homogeneous_monomials(config.ambient_dim(), d);
    let nvars = config.ambient_dim();
    let mut rows: Vec<Vec<QuadraticNumber>> = Vec::new();
    for root in config.roots() {
        let mut current: Vec<Polynomial> = monomials
            .iter()
            .map(|u| Polynomial::monomial(nvars, u.clone(), QuadraticNumber::one()).directional_derivative(&root.form))
            .collect();
        for s in (1..2 * root.multiplicity).step_by(2) {
            if s > 1 {
                current = current
                    .iter()
                    .map(|p| p.directional_derivative(&root.form).directional_derivative(&root.form))
                    .collect();
            }
            let mut block: BTreeMap<Monomial, Vec<QuadraticNumber>> = BTreeMap::new();
            for (j, p) in current.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let (_, r) = p.divide_by_linear_form(&root.form);
                for (mono, c) in r.terms() {
                    block.entry(mono.clone()).or_insert_with(|| vec![QuadraticNumber::zero(); monomials.len()])[j] =
                        c.clone();
                }
            }
            rows.extend(block.into_values());
        }
    }
    let cols = monomials.len();
    (monomials, MatrixQ::from_rows(cols, rows))
}

pub fn quasi_space(config: &Configuration, d: u32) -> QuasiBasis {
    let (monomials, m) = condition_matrix(config, d);
    let basis =
        m.nullspace().into_iter().map(|v| Polynomial::from_coordinates(config.ambient_dim(), &monomials, &v)).collect();
    QuasiBasis { degree: d, basis }
}

pub fn quasi_dim(config: &Configuration, d: u32) -> usize {
    let (monomials, m) = condition_matrix(config, d);
    monomials.len() - m.rank()
}

/// Dimensions of the graded pieces `0..=bound`, computed in parallel.
pub fn quasi_dims(config: &Configuration, bound: u32) -> SeriesTable {
    let dims: Vec<i64> = (0..=bound).into_par_iter().map(|d| quasi_dim(config, d) as i64).collect();
    SeriesTable::new(dims)
}

/// Degree bound that leaves a margin above the top expected numerator
/// exponent.
pub fn default_bound(config: &Configuration) -> u32 {
    let p = config.params();
    match config.label() {
        SystemLabel::A2Planar | SystemLabel::An => 2 * p.m + 13,
        SystemLabel::C2Planar | SystemLabel::Cn => 2 * (p.m + p.l + 4) + 4,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoincareReport {
    pub bound: u32,
    pub dims: SeriesTable,
    pub numerator: SeriesTable,
    pub denominator_degrees: Vec<usize>,
    pub palindromic: bool,
    pub matches_closed_form: Option<bool>,
}

/// Numerator of the Poincaré series from the dimensions up to `bound`.
pub fn poincare_numerator(config: &Configuration, bound: u32) -> Result<PoincareReport> {
    let dims = quasi_dims(config, bound);
    poincare_from_dims(config, bound, dims)
}

pub fn poincare_from_dims(config: &Configuration, bound: u32, dims: SeriesTable) -> Result<PoincareReport> {
    let degrees = config.denominator_degrees();
    let mut numerator = dims.clone();
    for &e in &degrees {
        numerator.mul_one_minus(e);
    }
    let margin = degrees.iter().copied().max().unwrap_or(0);
    let len = numerator.len();
    if len < margin || numerator.coeffs()[len - margin..].iter().any(|&c| c != 0) {
        return Err(Error::InsufficientDegreeBound { bound: bound as usize });
    }
    let numerator = numerator.trimmed();
    let matches_closed_form = match config.label() {
        SystemLabel::A2Planar | SystemLabel::C2Planar => {
            let p = config.params();
            Some(closed_form_numerator(config.label(), p.m, p.l)? == numerator)
        }
        _ => None,
    };
    debug_assert_eq!(series_coefficients(&numerator, &degrees, bound as usize), dims);
    Ok(PoincareReport {
        bound,
        palindromic: numerator.is_palindromic(),
        dims,
        numerator,
        denominator_degrees: degrees,
        matches_closed_form,
    })
}

/// Closed-form numerators for the two planar families.
pub fn closed_form_numerator(label: SystemLabel, m: u32, l: u32) -> Result<SeriesTable> {
    let (m, l) = (m as usize, l as usize);
    let exponents = match label {
        SystemLabel::A2Planar => vec![0, 4, 5, 2 * m + 2, 2 * m + 3, 2 * m + 7],
        SystemLabel::C2Planar => {
            vec![0, 6, 2 * m + 3, 2 * m + 5, 2 * l + 3, 2 * l + 5, 2 * (m + l + 1), 2 * (m + l + 4)]
        }
        other => return Err(Error::InvalidParameters(format!("no closed form for {other}"))),
    };
    Ok(SeriesTable::from_exponents(&exponents))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(terms: &[(i64, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(2, terms.iter().map(|&(c, i, j)| (vec![i, j], QuadraticNumber::from_int(c))))
    }

    #[test]
    fn p1_p2_are_quasi_invariant() {
        for m in 1..=4 {
            let c = Configuration::a2(m).unwrap();
            for g in c.generators() {
                assert!(is_quasi_invariant(&c, &g).passed(), "m={m}");
            }
        }
    }

    #[test]
    fn xy_violates_first_order_on_axis() {
        let c = Configuration::a2(1).unwrap();
        let r = is_quasi_invariant(&c, &xy(&[(1, 1, 1)]));
        assert_eq!(r.violations[0], Violation { root: 0, order: 1 });
    }

    #[test]
    fn low_degree_pieces() {
        let c = Configuration::a2(2).unwrap();
        assert_eq!(quasi_space(&c, 0).dim(), 1);
        assert_eq!(quasi_space(&c, 1).dim(), 0);
        assert_eq!(quasi_space(&c, 2).basis, vec![xy(&[(1, 2, 0), (1, 0, 2)])]);
        assert_eq!(quasi_dim(&Configuration::c2(1, 0).unwrap(), 3), 1);
    }

    #[test]
    fn closed_forms_accumulate_collisions() {
        assert_eq!(
            closed_form_numerator(SystemLabel::A2Planar, 1, 0).unwrap().coeffs(),
            &[1, 0, 0, 0, 2, 2, 0, 0, 0, 1]
        );
        assert_eq!(
            closed_form_numerator(SystemLabel::C2Planar, 1, 1).unwrap().coeffs(),
            &[1, 0, 0, 0, 0, 2, 2, 2, 0, 0, 0, 0, 1]
        );
        assert!(closed_form_numerator(SystemLabel::An, 1, 0).is_err());
    }

    #[test]
    fn a2_numerator_at_m2() {
        let c = Configuration::a2(2).unwrap();
        let r = poincare_numerator(&c, 18).unwrap();
        assert_eq!(r.numerator, SeriesTable::from_exponents(&[0, 4, 5, 6, 7, 11]));
        assert!(r.palindromic);
        assert_eq!(r.matches_closed_form, Some(true));
    }

    #[test]
    fn short_bound_is_rejected() {
        let c = Configuration::a2(2).unwrap();
        assert_eq!(poincare_numerator(&c, 9), Err(Error::InsufficientDegreeBound { bound: 9 }));
    }
}
