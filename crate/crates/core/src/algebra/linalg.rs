//! Exact dense linear algebra over Q(√d).
//!
//! Rank and nullspace use fraction-free (Bareiss) elimination in the ring
//! Z[√d] after clearing row denominators. Every intermediate entry is a
//! minor of the cleared matrix, so each division is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{QuadraticNumber, Rational};

/// Dense row-major matrix over Q(√d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<QuadraticNumber>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![QuadraticNumber::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<QuadraticNumber>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        MatrixQ { rows: nrows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QuadraticNumber::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[QuadraticNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[QuadraticNumber]) -> Vec<QuadraticNumber> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QuadraticNumber::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    /// Basis of the right nullspace in reduced row echelon form: each vector
    /// has leading entry 1 and zeros in the leading positions of the others.
    pub fn nullspace(&self) -> Vec<Vec<QuadraticNumber>> {
        let ech = echelon(self);
        let field_rows: Vec<Vec<QuadraticNumber>> = (0..ech.pivots.len()).map(|i| ech.row_to_field(i)).collect();
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &p in &ech.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![QuadraticNumber::zero(); self.cols];
            v[free] = QuadraticNumber::one();
            for (r, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &field_rows[r];
                let mut acc = QuadraticNumber::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += &(&row[j] * &v[j]);
                    }
                }
                if !acc.is_zero() {
                    v[pc] = -(&acc / &row[pc]);
                }
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let mut m = MatrixQ::from_rows(self.cols, basis);
        m.rref_in_place();
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }

    /// Gauss–Jordan over the field; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).filter(|&i| !self[(i, c)].is_zero()).min_by_key(|&i| self[(i, c)].bit_size())
            else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().unwrap();
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let t = &f * &self[(r, j)];
                        self[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn determinant(&self) -> QuadraticNumber {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = QuadraticNumber::one();
        for c in 0..n {
            let Some(p) = (c..n).filter(|&i| !m[(i, c)].is_zero()).min_by_key(|&i| m[(i, c)].bit_size()) else {
                return QuadraticNumber::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = &f * &m[(c, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for MatrixQ {
    type Output = QuadraticNumber;
    fn index(&self, (i, j): (usize, usize)) -> &QuadraticNumber {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QuadraticNumber {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Element `a + b√d` of Z[√d].
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZSqrt {
    a: BigInt,
    b: BigInt,
}

impl ZSqrt {
    fn zero() -> Self {
        ZSqrt { a: BigInt::zero(), b: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn bits(&self) -> u64 {
        self.a.bits() + self.b.bits()
    }

    fn mul(&self, o: &ZSqrt, d: &BigInt) -> ZSqrt {
        if self.b.is_zero() && o.b.is_zero() {
            return ZSqrt { a: &self.a * &o.a, b: BigInt::zero() };
        }
        ZSqrt { a: &self.a * &o.a + &self.b * &o.b * d, b: &self.a * &o.b + &self.b * &o.a }
    }

    fn sub(&self, o: &ZSqrt) -> ZSqrt {
        ZSqrt { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    /// `self / o`, known to lie in Z[√d].
    fn div_exact(&self, o: &ZSqrt, d: &BigInt) -> ZSqrt {
        if o.b.is_zero() {
            debug_assert!((&self.a % &o.a).is_zero() && (&self.b % &o.a).is_zero());
            return ZSqrt { a: &self.a / &o.a, b: &self.b / &o.a };
        }
        let conj = ZSqrt { a: o.a.clone(), b: -&o.b };
        let n = &o.a * &o.a - &o.b * &o.b * d;
        let t = self.mul(&conj, d);
        debug_assert!((&t.a % &n).is_zero() && (&t.b % &n).is_zero());
        ZSqrt { a: t.a / &n, b: t.b / &n }
    }
}

struct Echelon {
    rows: Vec<Vec<ZSqrt>>,
    pivots: Vec<usize>,
    d: u64,
}

impl Echelon {
    fn row_to_field(&self, i: usize) -> Vec<QuadraticNumber> {
        self.rows[i]
            .iter()
            .map(|z| {
                QuadraticNumber::new(Rational::from_integer(z.a.clone()), Rational::from_integer(z.b.clone()), self.d)
            })
            .collect()
    }
}

fn common_discriminant(m: &MatrixQ) -> u64 {
    let mut d = 0;
    for x in &m.data {
        if !x.is_rational() {
            if d != 0 {
                assert_eq!(d, x.discriminant(), "matrix mixes quadratic fields");
            }
            d = x.discriminant();
        }
    }
    d
}

/// Clears denominators of one row, producing entries of Z[√d].
fn integral_row(row: &[QuadraticNumber]) -> Vec<ZSqrt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.rational_part().denom());
        lcm = lcm.lcm(x.irrational_part().denom());
    }
    let scale = Rational::from_integer(lcm);
    row.iter()
        .map(|x| {
            let a = x.rational_part() * &scale;
            let b = x.irrational_part() * &scale;
            ZSqrt { a: a.to_integer(), b: b.to_integer() }
        })
        .collect()
}

fn echelon(m: &MatrixQ) -> Echelon {
    let d = common_discriminant(m);
    let dd = BigInt::from(d);
    let mut rows: Vec<Vec<ZSqrt>> = (0..m.rows).map(|i| integral_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut prev = ZSqrt { a: BigInt::one(), b: BigInt::zero() };
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let piv = &prow[c];
        for row in tail.iter_mut() {
            let f = std::mem::replace(&mut row[c], ZSqrt::zero());
            for j in c + 1..m.cols {
                let mut v = row[j].mul(piv, &dd);
                if !f.is_zero() && !prow[j].is_zero() {
                    v = v.sub(&f.mul(&prow[j], &dd));
                }
                row[j] = if v.is_zero() { v } else { v.div_exact(&prev, &dd) };
            }
        }
        prev = head[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> MatrixQ {
        let cols = rows[0].len();
        MatrixQ::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| QuadraticNumber::from_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn rank_one_nullspace() {
        let n = ints(&[&[1, 1], &[2, 2]]).nullspace();
        assert_eq!(n, vec![vec![QuadraticNumber::from_int(1), QuadraticNumber::from_int(-1)]]);
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(MatrixQ::identity(2).nullspace().is_empty());
        assert_eq!(MatrixQ::identity(3).rank(), 3);
    }

    #[test]
    fn radical_nullspace_is_normalized() {
        let m = MatrixQ::from_rows(2, vec![vec![QuadraticNumber::sqrt(5), QuadraticNumber::from_int(5)]]);
        let n = m.nullspace();
        let expected = QuadraticNumber::sqrt(5) * QuadraticNumber::from_frac(-1, 5);
        assert_eq!(n, vec![vec![QuadraticNumber::one(), expected]]);
    }

    #[test]
    fn determinant_small() {
        let m = ints(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant(), QuadraticNumber::from_int(5));
        assert_eq!(ints(&[&[1, 2], &[2, 4]]).determinant(), QuadraticNumber::zero());
        assert_eq!(MatrixQ::zeros(0, 0).determinant(), QuadraticNumber::one());
    }

    #[test]
    fn bareiss_with_radicals_and_skipped_columns() {
        let s = QuadraticNumber::sqrt(3);
        let one = QuadraticNumber::one();
        let z = QuadraticNumber::zero();
        let m = MatrixQ::from_rows(
            4,
            vec![
                vec![z.clone(), s.clone(), one.clone(), QuadraticNumber::from_frac(1, 2)],
                vec![z.clone(), &s * &s, s.clone(), &s * &QuadraticNumber::from_frac(1, 2)],
                vec![z.clone(), one.clone(), &s + &one, z.clone()],
            ],
        );
        assert_eq!(m.rank(), 2);
        let n = m.nullspace();
        assert_eq!(n.len(), 2);
        for v in &n {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
