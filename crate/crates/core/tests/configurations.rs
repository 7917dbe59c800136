use proptest::prelude::*;
use quasinv::acceptance::test_matrix;
use quasinv::config::{check_hyperplane_identities, newton_sum, Configuration, SystemLabel};
use quasinv::{LinearForm, Polynomial, QuadraticNumber};

fn probe(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, nvars), -5i64..=5), 1..6).prop_map(move |terms| {
        Polynomial::from_terms(
            nvars,
            terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= 6)
                .map(|(e, c)| (e, QuadraticNumber::from_int(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn rescaling_a_root_keeps_the_operator(p in probe(2), root in 0usize..3, k in 1i64..4) {
        let c = Configuration::a2(2).unwrap();
        let factor = &QuadraticNumber::from_int(-k) * &QuadraticNumber::sqrt(5);
        let scaled = c.with_scaled_root(root, &factor);
        let a = c.gauged_operator().apply_polynomial(&p);
        let b = scaled.gauged_operator().apply_polynomial(&p);
        prop_assert!(a.value_eq(&b));
    }

    #[test]
    fn rescaling_in_three_variables(p in probe(3), root in 0usize..9, k in 2i64..5) {
        let c = Configuration::cn(2, 1, 0).unwrap();
        let root = root % c.roots().len();
        let scaled = c.with_scaled_root(root, &QuadraticNumber::from_frac(1, k));
        prop_assert!(c.gauged_operator().apply_polynomial(&p).value_eq(&scaled.gauged_operator().apply_polynomial(&p)));
    }
}

#[test]
fn identities_on_the_whole_matrix() {
    for c in test_matrix() {
        let r = check_hyperplane_identities(&c);
        assert!(r.passed(), "{c}: {:?}", r.failures());
    }
}

fn unit(dim: usize, entries: &[(usize, i64)]) -> LinearForm {
    let mut v = vec![QuadraticNumber::zero(); dim];
    for &(i, c) in entries {
        v[i] = QuadraticNumber::from_int(c);
    }
    LinearForm::new(v)
}

/// Hyperplanes with multiplicities agree up to scaling of each form.
fn same_arrangement(c: &Configuration, expected: &[(LinearForm, u32)]) -> bool {
    c.roots().len() == expected.len()
        && expected.iter().all(|(f, m)| c.roots().iter().any(|r| r.form.is_proportional(f) && r.multiplicity == *m))
}

#[test]
fn equal_parameters_give_the_coxeter_arrangement() {
    for m in 1..=3 {
        let c = Configuration::c2(m, m).unwrap();
        let want = [
            (unit(2, &[(0, 1)]), m),
            (unit(2, &[(1, 1)]), m),
            (unit(2, &[(0, 1), (1, 1)]), 1),
            (unit(2, &[(0, 1), (1, -1)]), 1),
        ];
        assert!(same_arrangement(&c, &want), "{c}");
    }
    let c = Configuration::cn(2, 1, 1).unwrap();
    let mut want = Vec::new();
    for i in 0..3 {
        want.push((unit(3, &[(i, 1)]), 1));
        for j in i + 1..3 {
            want.push((unit(3, &[(i, 1), (j, 1)]), 1));
            want.push((unit(3, &[(i, 1), (j, -1)]), 1));
        }
    }
    assert!(same_arrangement(&c, &want));
}

#[test]
fn newton_sums_are_homogeneous_of_the_listed_degrees() {
    for c in test_matrix() {
        let degrees = c.denominator_degrees();
        for s in 1..=c.generator_count() as u32 {
            let p = newton_sum(&c, s);
            assert!(p.is_homogeneous(), "{c} s={s}");
            assert_eq!(p.degree(), Some(degrees[s as usize - 1] as u32), "{c} s={s}");
        }
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(Configuration::cn(2, 0, 1).is_err());
    assert!(Configuration::a2(0).is_err());
    assert!(Configuration::an(2, 0).is_err());
    assert!(Configuration::build(SystemLabel::An, 1, 0, 1).is_err());
    assert!(Configuration::cn(2, 4, 1).is_ok());
}
