//! Exact univariate polynomials over ℤ and square matrices of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// A polynomial in `t` with big-integer coefficients, lowest degree first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `c·t^d`.
    pub fn monomial<T: Into<BigInt>>(c: T, d: usize) -> Poly {
        let mut v = vec![BigInt::zero(); d];
        v.push(c.into());
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Poly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `1 − t^d`.
    pub fn one_minus(d: usize) -> Poly {
        &Poly::one() - &Poly::monomial(1, d)
    }

    /// `1 + t^d`.
    pub fn one_plus(d: usize) -> Poly {
        &Poly::one() + &Poly::monomial(1, d)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    /// Division by an integer, if every coefficient is divisible.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Poly> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for x in &self.0 {
            if !(x % c).is_zero() {
                return None;
            }
            out.push(x / c);
        }
        Some(Poly::from_coeffs(out))
    }

    /// Exact division in ℤ[t]; `None` if the quotient is not in ℤ[t].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let lead = &d.0[dd];
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return self.is_zero().then(Poly::zero);
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            if !(c % lead).is_zero() {
                return None;
            }
            let f = c / lead;
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] -= &f * dc;
            }
            q[i] = f;
        }
        rem.iter().all(Zero::is_zero).then(|| Poly::from_coeffs(q))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n).map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero)).collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}")?,
            }
            match d {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A square matrix over ℤ[t], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> PolyMatrix {
        PolyMatrix { n, entries: vec![Poly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        PolyMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(Poly::zero(), |acc, k| {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect()
    }

    /// Entries evaluated at `t = 1`.
    pub fn at_one(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).at_one()).collect()).collect()
    }
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in ℤ[t].
pub fn determinant(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    if n == 0 {
        return Poly::one();
    }
    let mut m = rows.to_vec();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}
