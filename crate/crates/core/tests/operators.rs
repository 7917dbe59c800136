use quasinv::acceptance::probe_set;
use quasinv::config::Configuration;
use quasinv::harmonic::defining_integrals;
use quasinv::operators::{bilinear_form, explicit_l2, gram_matrix, integral_apply, IntegralSpec};
use quasinv::quasi::{is_quasi_invariant, quasi_space};
use quasinv::{Polynomial, QuadraticNumber};

fn configs() -> Vec<Configuration> {
    vec![
        Configuration::a2(1).unwrap(),
        Configuration::a2(2).unwrap(),
        Configuration::a2(3).unwrap(),
        Configuration::c2(1, 0).unwrap(),
        Configuration::c2(1, 1).unwrap(),
        Configuration::c2(2, 1).unwrap(),
        Configuration::an(2, 1).unwrap(),
        Configuration::cn(2, 1, 0).unwrap(),
    ]
}

#[test]
fn integrals_preserve_quasi_invariants() {
    for c in configs() {
        let max = if c.is_planar() { 8 } else { 6 };
        let specs = defining_integrals(&c);
        for d in 0..=max {
            for q in quasi_space(&c, d).basis {
                for spec in &specs {
                    let r = integral_apply(&c, spec, &q).as_polynomial();
                    let r = r.unwrap_or_else(|e| panic!("{c} degree {d}: {e}"));
                    assert!(r.is_zero() || is_quasi_invariant(&c, &r).passed(), "{c} degree {d}");
                }
            }
        }
    }
}

#[test]
fn integrals_annihilate_constants() {
    for c in configs() {
        let one = Polynomial::one(c.ambient_dim());
        for spec in defining_integrals(&c) {
            assert!(integral_apply(&c, &spec, &one).is_zero(), "{c} degree {}", spec.degree());
        }
    }
}

#[test]
fn integrals_lower_degree_by_their_order() {
    for c in [Configuration::a2(2).unwrap(), Configuration::c2(1, 0).unwrap()] {
        for spec in defining_integrals(&c) {
            for f in probe_set(2) {
                let r = integral_apply(&c, &spec, &f);
                if r.is_zero() {
                    continue;
                }
                assert!(r.numerator().is_homogeneous());
                let den: u32 = r.denominator().iter().sum();
                let deg = r.numerator().degree().unwrap() as i64 - den as i64;
                assert_eq!(deg, f.degree().unwrap() as i64 - spec.degree() as i64, "{c}");
            }
        }
    }
}

#[test]
fn explicit_l2_matches_on_nonhomogeneous_probes() {
    let c = Configuration::a2(2).unwrap();
    let spec = IntegralSpec::new(&c, c.generators().remove(1)).unwrap();
    let l2 = explicit_l2(&c).unwrap();
    let probes = probe_set(2);
    let f = probes.iter().take(12).fold(Polynomial::zero(2), |acc, p| &acc + p);
    assert_eq!(integral_apply(&c, &spec, &f), l2.apply_polynomial(&f));
}

#[test]
fn bilinear_form_grading_and_units() {
    let c = Configuration::a2(2).unwrap();
    let one = Polynomial::one(2);
    assert_eq!(bilinear_form(&c, &one, &one).unwrap(), QuadraticNumber::one());
    let g = c.generators();
    assert!(bilinear_form(&c, &g[0], &g[1]).unwrap().is_zero());
    assert!(bilinear_form(&c, &g[0], &Polynomial::var(2, 0)).is_err());
}

#[test]
fn gram_matrices_are_symmetric_and_non_degenerate() {
    for c in configs().into_iter().filter(|c| c.is_planar()) {
        for d in 0..=8 {
            let g = gram_matrix(&c, d).unwrap();
            assert!(g.symmetric, "{c} degree {d}");
            assert!(g.non_degenerate(), "{c} degree {d}");
        }
    }
    let g = gram_matrix(&Configuration::a2(2).unwrap(), 2).unwrap();
    assert_eq!(g.determinant, QuadraticNumber::from_int(-12));
}
