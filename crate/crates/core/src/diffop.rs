//! Linear differential operators with hyperplane-fraction coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{LinearForm, Monomial, Polynomial};
use crate::fraction::HyperplaneFraction;

/// `Σ c_α ∂^α`, one coefficient per multi-index.
#[derive(Clone, Debug)]
pub struct DiffOp {
    nvars: usize,
    forms: Arc<[LinearForm]>,
    terms: BTreeMap<Monomial, HyperplaneFraction>,
}

impl DiffOp {
    pub fn new(nvars: usize, forms: Arc<[LinearForm]>) -> Self {
        DiffOp { nvars, forms, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn forms(&self) -> &Arc<[LinearForm]> {
        &self.forms
    }

    /// Adds `c ∂^index`, merging with an existing term of the same index.
    pub fn add_term(&mut self, index: Monomial, c: HyperplaneFraction) {
        assert_eq!(index.len(), self.nvars);
        let merged = match self.terms.remove(&index) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(index, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &HyperplaneFraction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &[u32]) -> Option<&HyperplaneFraction> {
        self.terms.get(index)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficientwise value equality; the operators may use different
    /// form families.
    pub fn same_coefficients(&self, other: &DiffOp) -> bool {
        let zero_here = HyperplaneFraction::zero(self.nvars, &self.forms);
        let zero_there = HyperplaneFraction::zero(other.nvars, &other.forms);
        let keys: std::collections::BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.terms.get(k).unwrap_or(&zero_here);
            let b = other.terms.get(k).unwrap_or(&zero_there);
            a.value_eq(b)
        })
    }

    pub fn apply(&self, f: &HyperplaneFraction) -> HyperplaneFraction {
        let mut memo: HashMap<Monomial, HyperplaneFraction> = HashMap::new();
        memo.insert(vec![0; self.nvars], f.clone());
        let products: Vec<HyperplaneFraction> =
            self.terms.iter().map(|(index, c)| c.mul(&derivative(&mut memo, index))).collect();
        HyperplaneFraction::sum(&self.forms, products.iter())
    }

    pub fn apply_polynomial(&self, p: &Polynomial) -> HyperplaneFraction {
        self.apply(&HyperplaneFraction::from_polynomial(p.clone(), &self.forms))
    }
}

fn derivative(memo: &mut HashMap<Monomial, HyperplaneFraction>, index: &Monomial) -> HyperplaneFraction {
    if let Some(f) = memo.get(index) {
        return f.clone();
    }
    let var = index.iter().position(|&e| e > 0).expect("zero index is seeded");
    let mut lower = index.clone();
    lower[var] -= 1;
    let d = derivative(memo, &lower).derivative(var);
    memo.insert(index.clone(), d.clone());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuadraticNumber;

    fn q(n: i64) -> QuadraticNumber {
        QuadraticNumber::from_int(n)
    }

    #[test]
    fn laplacian_on_monomial() {
        let forms: Arc<[LinearForm]> = vec![LinearForm::new(vec![q(1), q(0)])].into();
        let mut op = DiffOp::new(2, forms.clone());
        op.add_term(vec![2, 0], HyperplaneFraction::from_polynomial(Polynomial::one(2), &forms));
        op.add_term(vec![0, 2], HyperplaneFraction::from_polynomial(Polynomial::one(2), &forms));
        let p = Polynomial::monomial(2, vec![3, 2], q(1));
        let r = op.apply_polynomial(&p).as_polynomial().unwrap();
        let want = &Polynomial::monomial(2, vec![1, 2], q(6)) + &Polynomial::monomial(2, vec![3, 0], q(2));
        assert_eq!(r, want);
        assert_eq!(op.order(), 2);
    }

    #[test]
    fn duplicate_terms_merge_and_cancel() {
        let forms: Arc<[LinearForm]> = vec![LinearForm::new(vec![q(1), q(0)])].into();
        let mut op = DiffOp::new(2, forms.clone());
        let one = HyperplaneFraction::from_polynomial(Polynomial::one(2), &forms);
        op.add_term(vec![1, 0], one.clone());
        op.add_term(vec![1, 0], one.scale(&q(-1)));
        assert_eq!(op.terms().count(), 0);
    }

    #[test]
    fn euler_over_form() {
        // (1/x) ∂_x applied to x³ is 3x
        let forms: Arc<[LinearForm]> = vec![LinearForm::new(vec![q(1), q(0)])].into();
        let mut op = DiffOp::new(2, forms.clone());
        op.add_term(vec![1, 0], HyperplaneFraction::new(Polynomial::one(2), vec![1], forms));
        let r = op.apply_polynomial(&Polynomial::monomial(2, vec![3, 0], q(1)));
        assert_eq!(r.as_polynomial().unwrap(), Polynomial::monomial(2, vec![1, 0], q(3)));
    }
}
