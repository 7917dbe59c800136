//! Deformed harmonic polynomials, the quotient by the Newton-sum ideal, and
//! the degree bookkeeping of the free-module structure.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{
    homogeneous_monomials, series_coefficients, MatrixQ, Monomial, Polynomial, QuadraticNumber, SeriesTable,
};
use crate::config::{Configuration, SystemLabel};
use crate::operators::{integral_apply, IntegralSpec};
use crate::quasi::{closed_form_numerator, quasi_dims, quasi_space};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicBasis {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Integrals attached to the defining Newton sums.
pub fn defining_integrals(config: &Configuration) -> Vec<IntegralSpec> {
    config
        .generators()
        .into_iter()
        .map(|g| IntegralSpec::new(config, g).expect("Newton sums are quasi-invariant"))
        .collect()
}

/// Rows expressing `L_g f = 0` for a generic `f` over `monomials`.
fn integral_rows(config: &Configuration, spec: &IntegralSpec, monomials: &[Monomial]) -> Vec<Vec<QuadraticNumber>> {
    let nvars = config.ambient_dim();
    let images: Vec<_> = monomials
        .par_iter()
        .map(|u| integral_apply(config, spec, &Polynomial::monomial(nvars, u.clone(), QuadraticNumber::one())))
        .collect();
    let mut target = vec![0u32; config.forms().len()];
    for f in &images {
        for (t, &k) in target.iter_mut().zip(f.denominator()) {
            *t = (*t).max(k);
        }
    }
    let mut rows: BTreeMap<Monomial, Vec<QuadraticNumber>> = BTreeMap::new();
    for (j, f) in images.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (mono, c) in f.numerator_over(&target).terms() {
            rows.entry(mono.clone()).or_insert_with(|| vec![QuadraticNumber::zero(); monomials.len()])[j] = c.clone();
        }
    }
    rows.into_values().collect()
}

/// Homogeneous degree-`d` solutions of `L_g f = 0` for every defining
/// Newton sum `g`.
pub fn harmonic_space(config: &Configuration, d: u32) -> HarmonicBasis {
    let monomials = homogeneous_monomials(config.ambient_dim(), d);
    let mut rows = Vec::new();
    for spec in defining_integrals(config) {
        rows.extend(integral_rows(config, &spec, &monomials));
    }
    let basis = MatrixQ::from_rows(monomials.len(), rows)
        .nullspace()
        .into_iter()
        .map(|v| Polynomial::from_coordinates(config.ambient_dim(), &monomials, &v))
        .collect();
    HarmonicBasis { degree: d, basis }
}

/// Harmonic dimensions for degrees `0..=bound`.
pub fn harmonic_profile(config: &Configuration, bound: u32) -> SeriesTable {
    SeriesTable::new((0..=bound).into_par_iter().map(|d| harmonic_space(config, d).dim() as i64).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTable {
    pub dims: SeriesTable,
    pub total: i64,
    pub stabilized: bool,
}

/// Sum of the generator degrees plus the largest one.
pub fn default_quotient_bound(config: &Configuration) -> u32 {
    let degrees = config.denominator_degrees();
    (degrees.iter().sum::<usize>() + degrees.iter().max().copied().unwrap_or(0)) as u32
}

/// Dimension of the degree-`d` part of the quotient of the polynomial ring
/// by the ideal of the defining Newton sums.
pub fn quotient_dim(config: &Configuration, d: u32) -> usize {
    let nvars = config.ambient_dim();
    let monomials = homogeneous_monomials(nvars, d);
    let mut rows = Vec::new();
    for g in config.generators() {
        let e = g.degree().expect("generators are nonzero");
        if e > d {
            continue;
        }
        for u in homogeneous_monomials(nvars, d - e) {
            let p = &Polynomial::monomial(nvars, u, QuadraticNumber::one()) * &g;
            rows.push(p.coordinates(&monomials));
        }
    }
    monomials.len() - MatrixQ::from_rows(monomials.len(), rows).rank()
}

pub fn hilbert_quotient(config: &Configuration, bound: u32) -> Result<QuotientTable> {
    let dims = SeriesTable::new((0..=bound).into_par_iter().map(|d| quotient_dim(config, d) as i64).collect());
    let window = config.denominator_degrees().into_iter().max().unwrap_or(1);
    let len = dims.len();
    let stabilized = len >= window && dims.coeffs()[len - window..].iter().all(|&c| c == 0);
    if !stabilized {
        return Err(Error::NotStabilized { bound: bound as usize });
    }
    Ok(QuotientTable { total: dims.sum(), dims, stabilized })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeModuleFailure {
    /// Quasi-invariant dimension differs from the harmonic profile times the
    /// denominator series.
    Convolution {
        degree: usize,
        expected: i64,
        found: i64,
    },
    Rank {
        harmonic_total: i64,
        mu: i64,
    },
    ClosedForm {
        degree: usize,
        expected: i64,
        found: i64,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeModuleReport {
    pub failures: Vec<FreeModuleFailure>,
}

impl FreeModuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares precomputed tables; all of them must cover the same degrees.
pub fn check_free_module_tables(
    quasi: &SeriesTable,
    harmonic: &SeriesTable,
    denominator_degrees: &[usize],
    mu: i64,
    closed_form: Option<&SeriesTable>,
) -> FreeModuleReport {
    let bound = quasi.len().saturating_sub(1);
    let mut failures = Vec::new();
    let expected = series_coefficients(harmonic, denominator_degrees, bound);
    for d in 0..=bound {
        if expected.get(d) != quasi.get(d) {
            failures.push(FreeModuleFailure::Convolution { degree: d, expected: expected.get(d), found: quasi.get(d) });
        }
    }
    if harmonic.sum() != mu {
        failures.push(FreeModuleFailure::Rank { harmonic_total: harmonic.sum(), mu });
    }
    if let Some(cf) = closed_form {
        for d in 0..=bound.max(cf.len().saturating_sub(1)) {
            if cf.get(d) != harmonic.get(d) {
                failures.push(FreeModuleFailure::ClosedForm { degree: d, expected: cf.get(d), found: harmonic.get(d) });
            }
        }
    }
    FreeModuleReport { failures }
}

pub fn free_module_check(config: &Configuration, bound: u32) -> Result<FreeModuleReport> {
    let quasi = quasi_dims(config, bound);
    let harmonic = harmonic_profile(config, bound);
    let mu = hilbert_quotient(config, bound.max(default_quotient_bound(config)))?.total;
    let closed = match config.label() {
        SystemLabel::A2Planar | SystemLabel::C2Planar => {
            Some(closed_form_numerator(config.label(), config.params().m, config.params().l)?)
        }
        _ => None,
    };
    Ok(check_free_module_tables(&quasi, &harmonic, &config.denominator_degrees(), mu, closed.as_ref()))
}

fn q(n: i64) -> QuadraticNumber {
    QuadraticNumber::from_int(n)
}

/// The six `A₂(m)` harmonics of degrees 0, 4, 5, 2m+2, 2m+3, 2m+7.
pub fn reference_harmonics(m: u32) -> Vec<Polynomial> {
    let k = 2 * m;
    let mi = m as i64;
    let xy = |terms: Vec<(QuadraticNumber, u32, u32)>| {
        Polynomial::from_terms(2, terms.into_iter().map(|(c, i, j)| (vec![i, j], c)))
    };
    vec![
        Polynomial::one(2),
        xy(vec![(q(1), 4, 0), (q(2 * (2 * mi + 1)), 2, 2), (q(1 - 4 * mi * mi), 0, 4)]),
        xy(vec![(q(1), 4, 1), (QuadraticNumber::from_frac(-(2 * mi - 3) * (2 * mi + 1), 5), 0, 5)]),
        xy(vec![(q(1), k + 1, 1)]),
        xy(vec![(q(1), k + 3, 0), (q(2 * mi + 3), k + 1, 2)]),
        xy(vec![
            (q(5), k + 7, 0),
            (q(-35 - 10 * mi), k + 5, 2),
            (q(35 + 80 * mi + 20 * mi * mi), k + 3, 4),
            (q(-21 - 62 * mi - 44 * mi * mi - 8 * mi * mi * mi), k + 1, 6),
        ]),
    ]
}

fn rank_of(polys: &[&Polynomial], monomials: &[Monomial]) -> usize {
    MatrixQ::from_rows(monomials.len(), polys.iter().map(|p| p.coordinates(monomials)).collect()).rank()
}

/// Whether two lists of degree-`d` homogeneous polynomials span the same
/// space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial], nvars: usize, d: u32) -> bool {
    let monomials = homogeneous_monomials(nvars, d);
    let ra = rank_of(&a.iter().collect::<Vec<_>>(), &monomials);
    let rb = rank_of(&b.iter().collect::<Vec<_>>(), &monomials);
    let rab = rank_of(&a.iter().chain(b).collect::<Vec<_>>(), &monomials);
    ra == rb && ra == rab
}

/// Degree-`d` part of the ideal generated by the Newton sums inside the ring
/// of quasi-invariants: `Σ g_i · Q_{d − deg g_i}`.
pub fn ideal_span(config: &Configuration, d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in config.generators() {
        let e = g.degree().expect("nonzero");
        if e <= d {
            out.extend(quasi_space(config, d - e).basis.iter().map(|b| b * &g));
        }
    }
    out
}

/// Membership of a homogeneous degree-`d` polynomial in [`ideal_span`].
pub fn in_ideal_span(config: &Configuration, p: &Polynomial, d: u32) -> bool {
    let span = ideal_span(config, d);
    let monomials = homogeneous_monomials(config.ambient_dim(), d);
    let base: Vec<&Polynomial> = span.iter().collect();
    let mut with = base.clone();
    with.push(p);
    rank_of(&base, &monomials) == rank_of(&with, &monomials)
}

/// Whether the span of `polys` meets [`ideal_span`] only in zero.
pub fn meets_ideal_trivially(config: &Configuration, polys: &[Polynomial], d: u32) -> bool {
    let span = ideal_span(config, d);
    let monomials = homogeneous_monomials(config.ambient_dim(), d);
    let own: Vec<&Polynomial> = polys.iter().collect();
    let ideal: Vec<&Polynomial> = span.iter().collect();
    let both: Vec<&Polynomial> = span.iter().chain(polys).collect();
    rank_of(&both, &monomials) == rank_of(&ideal, &monomials) + rank_of(&own, &monomials)
}
