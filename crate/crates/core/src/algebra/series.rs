//! Truncated power series with integer coefficients.

use std::fmt;

/// Coefficients `c₀, c₁, …, c_D` of a truncated power series in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SeriesTable {
    coeffs: Vec<i64>,
}

impl SeriesTable {
    pub fn new(coeffs: Vec<i64>) -> Self {
        SeriesTable { coeffs }
    }

    /// Polynomial `Σ t^e` over the given exponents; repeated exponents
    /// accumulate.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let len = exponents.iter().max().map_or(0, |m| m + 1);
        let mut coeffs = vec![0; len];
        for &e in exponents {
            coeffs[e] += 1;
        }
        SeriesTable { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Copy resized to exactly `degree + 1` entries.
    pub fn truncated(&self, degree: usize) -> SeriesTable {
        let mut c = self.coeffs.clone();
        c.resize(degree + 1, 0);
        SeriesTable { coeffs: c }
    }

    /// Copy with trailing zeros removed.
    pub fn trimmed(&self) -> SeriesTable {
        let end = self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        SeriesTable { coeffs: self.coeffs[..end].to_vec() }
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let t = self.trimmed();
        t.coeffs.iter().eq(t.coeffs.iter().rev())
    }

    /// Multiply by `(1 − t^e)` in place, keeping the length.
    pub fn mul_one_minus(&mut self, e: usize) {
        for k in (e..self.coeffs.len()).rev() {
            self.coeffs[k] -= self.coeffs[k - e];
        }
    }

    /// Divide by `(1 − t^e)` in place, keeping the length.
    pub fn div_one_minus(&mut self, e: usize) {
        assert!(e > 0);
        for k in e..self.coeffs.len() {
            self.coeffs[k] += self.coeffs[k - e];
        }
    }

    /// Nonzero `(degree, coefficient)` pairs.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c))
    }
}

/// Coefficients `0..=degree` of `numerator(t) / Π (1 − t^{e})`.
pub fn series_coefficients(numerator: &SeriesTable, denominator_degrees: &[usize], degree: usize) -> SeriesTable {
    let mut s = numerator.truncated(degree);
    for &e in denominator_degrees {
        s.div_one_minus(e);
    }
    s
}

impl fmt::Display for SeriesTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .nonzero()
            .map(|(k, c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
