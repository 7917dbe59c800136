//! Rational functions whose denominators are products of a fixed family of
//! linear forms.

use std::sync::Arc;

use crate::algebra::{LinearForm, Polynomial, QuadraticNumber};
use crate::{Error, Result};

/// `numerator / Π_i ℓ_i^{k_i}` over a shared list of forms `ℓ_i`.
///
/// Kept reduced: no `ℓ_i` with `k_i > 0` divides the numerator.
#[derive(Clone, Debug)]
pub struct HyperplaneFraction {
    numerator: Polynomial,
    denominator: Vec<u32>,
    forms: Arc<[LinearForm]>,
}

impl HyperplaneFraction {
    pub fn new(numerator: Polynomial, denominator: Vec<u32>, forms: Arc<[LinearForm]>) -> Self {
        assert_eq!(denominator.len(), forms.len());
        let mut f = HyperplaneFraction { numerator, denominator, forms };
        f.reduce();
        f
    }

    pub fn from_polynomial(p: Polynomial, forms: &Arc<[LinearForm]>) -> Self {
        HyperplaneFraction { numerator: p, denominator: vec![0; forms.len()], forms: forms.clone() }
    }

    pub fn zero(nvars: usize, forms: &Arc<[LinearForm]>) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars), forms)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn forms(&self) -> &Arc<[LinearForm]> {
        &self.forms
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.iter().all(|&k| k == 0)
    }

    /// The numerator when the reduced denominator is empty.
    pub fn as_polynomial(&self) -> Result<Polynomial> {
        if self.is_polynomial() {
            Ok(self.numerator.clone())
        } else {
            let factors = self.denominator.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect();
            Err(Error::NonPolynomial { factors })
        }
    }

    /// Expanded product `Π ℓ_i^{k_i}`.
    pub fn denominator_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::one(self.nvars());
        for (form, &k) in self.forms.iter().zip(&self.denominator) {
            for _ in 0..k {
                p = p.mul_linear(form);
            }
        }
        p
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.iter_mut().for_each(|k| *k = 0);
            return;
        }
        for i in 0..self.forms.len() {
            while self.denominator[i] > 0 {
                match self.numerator.exact_div_linear(&self.forms[i]) {
                    Some(q) => {
                        self.numerator = q;
                        self.denominator[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    fn check_forms(&self, other: &Self) {
        debug_assert!(Arc::ptr_eq(&self.forms, &other.forms) || self.forms[..] == other.forms[..]);
    }

    /// Numerator over the larger denominator `Π ℓ_i^{target_i}`.
    pub fn numerator_over(&self, target: &[u32]) -> Polynomial {
        debug_assert!(target.iter().zip(&self.denominator).all(|(t, k)| t >= k));
        let mut n = self.numerator.clone();
        for (i, (&t, &k)) in target.iter().zip(&self.denominator).enumerate() {
            for _ in k..t {
                n = n.mul_linear(&self.forms[i]);
            }
        }
        n
    }

    /// `Σ cᵢ fᵢ` over a common denominator, reduced once.
    pub fn linear_combination<'a, I>(forms: &Arc<[LinearForm]>, nvars: usize, items: I) -> Self
    where
        I: IntoIterator<Item = (QuadraticNumber, &'a HyperplaneFraction)>,
    {
        let items: Vec<(QuadraticNumber, &HyperplaneFraction)> =
            items.into_iter().filter(|(c, f)| !c.is_zero() && !f.is_zero()).collect();
        let mut target = vec![0u32; forms.len()];
        for (_, f) in &items {
            for (t, &k) in target.iter_mut().zip(&f.denominator) {
                *t = (*t).max(k);
            }
        }
        let mut num = Polynomial::zero(nvars);
        for (c, f) in &items {
            let lifted = f.numerator_over(&target);
            num = &num + &if c.is_one() { lifted } else { lifted.scale(c) };
        }
        HyperplaneFraction::new(num, target, forms.clone())
    }

    pub fn sum<'a, I>(forms: &Arc<[LinearForm]>, items: I) -> Self
    where
        I: IntoIterator<Item = &'a HyperplaneFraction>,
    {
        let items: Vec<&HyperplaneFraction> = items.into_iter().collect();
        let nvars = items.first().map_or(forms[0].nvars(), |f| f.nvars());
        Self::linear_combination(forms, nvars, items.into_iter().map(|f| (QuadraticNumber::one(), f)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_forms(other);
        Self::linear_combination(
            &self.forms,
            self.nvars(),
            [(QuadraticNumber::one(), self), (QuadraticNumber::one(), other)],
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_forms(other);
        Self::linear_combination(
            &self.forms,
            self.nvars(),
            [(QuadraticNumber::one(), self), (QuadraticNumber::from_int(-1), other)],
        )
    }

    pub fn scale(&self, c: &QuadraticNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars(), &self.forms);
        }
        HyperplaneFraction {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
            forms: self.forms.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_forms(other);
        let den = self.denominator.iter().zip(&other.denominator).map(|(a, b)| a + b).collect();
        HyperplaneFraction::new(&self.numerator * &other.numerator, den, self.forms.clone())
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        HyperplaneFraction::new(&self.numerator * p, self.denominator.clone(), self.forms.clone())
    }

    /// Partial derivative by the quotient rule; the denominator gains one
    /// power of each supporting form that involves `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let support: Vec<usize> = (0..self.forms.len())
            .filter(|&i| self.denominator[i] > 0 && !self.forms[i].coeffs()[var].is_zero())
            .collect();
        let dn = self.numerator.derivative(var);
        if support.is_empty() {
            return HyperplaneFraction {
                numerator: dn,
                denominator: self.denominator.clone(),
                forms: self.forms.clone(),
            };
        }
        // N' Π ℓ − N Σ_i k_i c_i Π_{j≠i} ℓ_j
        let mut lead = dn;
        for &i in &support {
            lead = lead.mul_linear(&self.forms[i]);
        }
        let mut correction = Polynomial::zero(self.nvars());
        for &i in &support {
            let c = &QuadraticNumber::from_int(self.denominator[i] as i64) * &self.forms[i].coeffs()[var];
            let mut t = self.numerator.scale(&c);
            for &j in &support {
                if j != i {
                    t = t.mul_linear(&self.forms[j]);
                }
            }
            correction = &correction + &t;
        }
        let mut den = self.denominator.clone();
        for &i in &support {
            den[i] += 1;
        }
        HyperplaneFraction::new(&lead - &correction, den, self.forms.clone())
    }

    /// Value identity by cross-multiplication; works across different form
    /// families.
    pub fn value_eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator_polynomial() == &other.numerator * &self.denominator_polynomial()
    }
}

impl PartialEq for HyperplaneFraction {
    fn eq(&self, other: &Self) -> bool {
        self.value_eq(other)
    }
}
