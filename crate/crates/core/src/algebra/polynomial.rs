//! Sparse multivariate polynomials over Q(√d) and linear forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::QuadraticNumber;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse polynomial: exponent vector → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, QuadraticNumber>,
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending lexicographic order (`x₀^degree` first).
pub fn homogeneous_monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Monomial, left: usize, degree: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(prefix, left - 1, degree - e, out);
            prefix.pop();
        }
    }
    assert!(nvars > 0);
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: QuadraticNumber) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, QuadraticNumber::one())
    }

    pub fn monomial(nvars: usize, exponents: Monomial, c: QuadraticNumber) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { nvars, terms }
    }

    /// The coordinate function `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(nvars, e, QuadraticNumber::one())
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, QuadraticNumber)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QuadraticNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> QuadraticNumber {
        self.terms.get(exponents).cloned().unwrap_or_else(QuadraticNumber::zero)
    }

    pub fn constant_term(&self) -> QuadraticNumber {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, exponents: Monomial, c: &QuadraticNumber) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &QuadraticNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            out.terms.insert(f, c * &QuadraticNumber::from_int(e[var] as i64));
        }
        out
    }

    /// Derivative along the coefficient vector of `form`.
    pub fn directional_derivative(&self, form: &LinearForm) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, c) in form.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.derivative(i).scale(c);
            }
        }
        out
    }

    /// Substitute the variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = std::mem::replace(&mut f[var], 0);
            by_power.entry(k).or_insert_with(|| Self::zero(self.nvars)).terms.insert(f, c.clone());
        }
        // Horner in the substituted value
        let mut acc = Self::zero(self.nvars);
        let mut last = match by_power.keys().next_back() {
            Some(&k) => k,
            None => return acc,
        };
        for (&k, part) in by_power.iter().rev() {
            for _ in k..last {
                acc = &acc * value;
            }
            acc = &acc + part;
            last = k;
        }
        for _ in 0..last {
            acc = &acc * value;
        }
        acc
    }

    /// Division by a linear form: `self = quotient·ℓ + remainder`, where the
    /// remainder does not involve the pivot variable of `ℓ`. The remainder is
    /// the restriction of `self` to the hyperplane `ℓ = 0`.
    pub fn divide_by_linear_form(&self, form: &LinearForm) -> (Polynomial, Polynomial) {
        let v = form.pivot();
        let lead_inv = form.coeffs[v].inv().expect("nonzero pivot");
        // ℓ = c·x_v + rest
        let mut rest = Self::zero(self.nvars);
        for (i, c) in form.coeffs.iter().enumerate() {
            if i != v && !c.is_zero() {
                rest.add_term(unit(self.nvars, i), c);
            }
        }
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = std::mem::replace(&mut f[v], 0);
            by_power.entry(k).or_insert_with(|| Self::zero(self.nvars)).terms.insert(f, c.clone());
        }
        let top = match by_power.keys().next_back() {
            Some(&k) => k,
            None => return (Self::zero(self.nvars), Self::zero(self.nvars)),
        };
        let mut quotient = Self::zero(self.nvars);
        // carry = Q_k, starting from Q_top = 0
        let mut carry = Self::zero(self.nvars);
        for k in (1..=top).rev() {
            let p_k = by_power.remove(&k).unwrap_or_else(|| Self::zero(self.nvars));
            let q = (&p_k - &(&rest * &carry)).scale(&lead_inv);
            for (e, c) in &q.terms {
                let mut f = e.clone();
                f[v] += k - 1;
                quotient.terms.insert(f, c.clone());
            }
            carry = q;
        }
        let p0 = by_power.remove(&0).unwrap_or_else(|| Self::zero(self.nvars));
        let remainder = &p0 - &(&rest * &carry);
        (quotient, remainder)
    }

    /// Exact quotient by `form`, or `None` if `form` does not divide `self`.
    pub fn exact_div_linear(&self, form: &LinearForm) -> Option<Polynomial> {
        let (q, r) = self.divide_by_linear_form(form);
        r.is_zero().then_some(q)
    }

    pub fn mul_linear(&self, form: &LinearForm) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (i, c) in form.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (e, x) in &self.terms {
                let mut f = e.clone();
                f[i] += 1;
                out.add_term(f, &(x * c));
            }
        }
        out
    }

    /// Coefficients read off in the order of `basis`, which must contain
    /// every monomial of `self`.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<QuadraticNumber> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_coordinates(nvars: usize, basis: &[Monomial], coords: &[QuadraticNumber]) -> Self {
        Self::from_terms(nvars, basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

fn unit(nvars: usize, i: usize) -> Monomial {
    let mut e = vec![0; nvars];
    e[i] = 1;
    e
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        VAR_NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = var_name(self.nvars, i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if !first {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            } else if negative {
                write!(f, "-")?;
            }
            first = false;
            match (mono.is_empty(), cs == "1") {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{cs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// A nonzero linear form `Σ cᵢ xᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<QuadraticNumber>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<QuadraticNumber>) -> Self {
        assert!(coeffs.iter().any(|c| !c.is_zero()), "linear form must be nonzero");
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[QuadraticNumber] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// First variable with a nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form")
    }

    /// Euclidean pairing of coefficient vectors.
    pub fn dot(&self, other: &LinearForm) -> QuadraticNumber {
        let mut acc = QuadraticNumber::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            acc += &(a * b);
        }
        acc
    }

    pub fn scale(&self, c: &QuadraticNumber) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars());
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(unit(self.nvars(), i), c);
        }
        p
    }

    /// True when the two forms are proportional.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        let n = self.nvars();
        (0..n).all(|i| (i + 1..n).all(|j| &self.coeffs[i] * &other.coeffs[j] == &self.coeffs[j] * &other.coeffs[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> QuadraticNumber {
        QuadraticNumber::from_int(n)
    }

    fn xy(terms: &[(i64, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(2, terms.iter().map(|&(c, i, j)| (vec![i, j], int(c))))
    }

    #[test]
    fn monomial_enumeration_order() {
        let m = homogeneous_monomials(2, 2);
        assert_eq!(m, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(homogeneous_monomials(3, 3).len(), 10);
        assert_eq!(homogeneous_monomials(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn power_rule() {
        // ∂x(x²y) = 2xy
        assert_eq!(xy(&[(1, 2, 1)]).derivative(0), xy(&[(2, 1, 1)]));
        // ∂y((2m−1)y³ − 3x²y) at m = 2
        assert_eq!(xy(&[(3, 0, 3), (-3, 2, 1)]).derivative(1), xy(&[(9, 0, 2), (-3, 2, 0)]));
        assert!(xy(&[(7, 0, 0)]).derivative(0).is_zero());
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Polynomial::zero(2).degree(), None);
        assert_eq!(xy(&[(1, 0, 0)]).degree(), Some(0));
        assert!(xy(&[(1, 2, 0), (1, 0, 2)]).is_homogeneous());
        assert!(!xy(&[(1, 2, 0), (1, 0, 1)]).is_homogeneous());
    }

    #[test]
    fn difference_of_squares() {
        let m = 2;
        let s = QuadraticNumber::sqrt(2 * m + 1);
        let p = xy(&[(1, 2, 0), (-(2 * m as i64 + 1), 0, 2)]);
        let form = LinearForm::new(vec![int(1), -&s]);
        let (q, r) = p.divide_by_linear_form(&form);
        assert!(r.is_zero());
        let expected = Polynomial::from_terms(2, [(vec![1, 0], int(1)), (vec![0, 1], s)]);
        assert_eq!(q, expected);
    }

    #[test]
    fn restriction_remainders() {
        let (q, r) = xy(&[(1, 2, 0), (1, 0, 2)]).divide_by_linear_form(&LinearForm::new(vec![int(1), int(0)]));
        assert_eq!(q, xy(&[(1, 1, 0)]));
        assert_eq!(r, xy(&[(1, 0, 2)]));
        let (q, r) = xy(&[(1, 1, 1)]).divide_by_linear_form(&LinearForm::new(vec![int(1), int(-1)]));
        assert_eq!(q, xy(&[(1, 0, 1)]));
        assert_eq!(r, xy(&[(1, 0, 2)]));
    }

    #[test]
    fn substitute_matches_restriction() {
        let p = xy(&[(3, 3, 1), (-1, 1, 2), (5, 0, 4)]);
        let form = LinearForm::new(vec![int(2), int(3)]);
        // x = −3/2 y
        let value = Polynomial::monomial(2, vec![0, 1], QuadraticNumber::from_frac(-3, 2));
        let (_, r) = p.divide_by_linear_form(&form);
        assert_eq!(p.substitute(0, &value), r);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(xy(&[(1, 2, 0), (-3, 1, 1), (1, 0, 0)]).to_string(), "x^2 - 3*x*y + 1");
    }
}
