//! Exact integer linear algebra on small dense matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM, "matrix dimension over cap");
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn all_ones(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        m.data.iter_mut().for_each(|x| *x = BigInt::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| rows[i][j].into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    /// Entries as i64 rows (panics if some entry does not fit).
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().expect("entry fits i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(other.data.iter()).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).sum()).collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Exact inverse over Q, None when singular.
    pub fn inverse_rational(&self) -> Result<Option<Vec<Vec<BigRational>>>> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(c, p);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..2 * n {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Inverse as an integer matrix; NotIntegral if the inverse has denominators.
    pub fn inverse_integral(&self) -> Result<IntMatrix> {
        let inv = self.inverse_rational()?.ok_or(Error::NotIntegral)?;
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return Err(Error::NotIntegral);
                }
                out.set(i, j, inv[i][j].to_integer());
            }
        }
        Ok(out)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map_or(false, |d| d.abs().is_one())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Integer polynomial, coefficients low to high, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// p(M) by Horner's rule.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&IntMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show = !mag.is_one() || i == 0;
            if show {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{}", i)?,
            }
        }
        Ok(())
    }
}

/// Monic characteristic polynomial det(X - M), Faddeev-LeVerrier with exact division.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::Dimension("charpoly of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk)?.add(&IntMatrix::identity(n).scale(&c[n - k + 1]))?;
        let t = m.mul(&mk)?.trace();
        let (quo, rem) = t.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        c[n - k] = -quo;
    }
    Ok(IntPoly::new(c))
}

/// Finite abelian group (or with free part) as invariant factors d_1 | d_2 | ...
/// Factors equal to 1 are kept so the list length matches the number of
/// generators; 0 marks a free summand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Self {
        AbelianGroup { factors }
    }

    /// Normalizes a product of cyclic groups Z/n_1 x ... into invariant factors.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let d = IntMatrix::from_fn(n, n, |i, j| if i == j { orders[i].abs() } else { BigInt::zero() });
        smith_normal_form(&d)
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        AbelianGroup::from_cyclic_orders(&[n.into()])
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Invariant factors with the trivial ones dropped.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.factors.iter().any(|d| d.is_zero()) {
            return None;
        }
        Some(self.factors.iter().product())
    }

    pub fn is_cyclic_of_order(&self, n: &BigInt) -> bool {
        let nt = self.nontrivial();
        if n.is_one() {
            nt.is_empty()
        } else {
            nt.len() == 1 && &nt[0] == n
        }
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.nontrivial() == other.nontrivial()
    }

    /// Number of cyclic factors of even order (2-rank).
    pub fn two_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// Invariant factors of Z^cols / (row span of M). For square M this agrees with
/// the column-span convention.
pub fn smith_normal_form(m: &IntMatrix) -> AbelianGroup {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // pivot of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in t..c {
                    let v = &qt * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &qt * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..r).find_map(|i| (t + 1..c).find(|&j| !(&a[i][j] % &a[t][t]).is_zero()).map(|_| i));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..c {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t into the pivot
            let mut bi = (t, t);
            for i in t..r {
                if !a[i][t].is_zero() && (a[bi.0][bi.1].is_zero() || a[i][t].abs() < a[bi.0][bi.1].abs()) {
                    bi = (i, t);
                }
            }
            for j in t..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                a.swap(t, bi.0);
            }
            if bi.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, bi.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    while diag.len() < c {
        diag.push(BigInt::zero());
    }
    AbelianGroup { factors: diag }
}

/// det(Trace(t_i t_j)).
pub fn trace_form_discriminant(basis: &[IntMatrix]) -> Result<BigInt> {
    let Some(first) = basis.first() else {
        return Ok(BigInt::one());
    };
    if basis.iter().any(|b| !b.is_square() || b.rows() != first.rows()) {
        return Err(Error::Dimension("basis matrices differ in size".into()));
    }
    let k = basis.len();
    let mut gram = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].mul(&basis[j])?.trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.det()
}

/// Dimension of the kernel of M over F_ell.
pub fn nullity_mod_ell(m: &IntMatrix, ell: u64) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension("nullity of a non-square matrix".into()));
    }
    if !crate::ffpoly::is_prime(ell as i64) {
        return Err(Error::BadModulus(ell as i64));
    }
    let l = BigInt::from(ell);
    let rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).mod_floor(&l).to_u64().unwrap()).collect())
        .collect();
    Ok(m.cols() - rank_mod(rows, ell))
}

pub(crate) fn rank_mod(mut a: Vec<Vec<u64>>, ell: u64) -> usize {
    let r = a.len();
    let c = a.first().map_or(0, |x| x.len());
    let inv = |x: u64| -> u64 {
        let (mut base, mut e, mut acc) = (x % ell, ell - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % ell;
            }
            base = base * base % ell;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, p);
        let pi = inv(a[rank][col]);
        for j in col..c {
            a[rank][j] = a[rank][j] * pi % ell;
        }
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..c {
                    a[i][j] = (a[i][j] + ell * ell - f * a[rank][j] % ell) % ell;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficients x with target = sum x_i basis_i, solved exactly over Q.
pub fn express_in_span(target: &IntMatrix, basis: &[IntMatrix]) -> Result<Vec<BigInt>> {
    if basis.iter().any(|b| b.rows() != target.rows() || b.cols() != target.cols()) {
        return Err(Error::Dimension("basis and target differ in shape".into()));
    }
    let k = basis.len();
    let eqs = target.rows() * target.cols();
    // augmented system, one equation per entry
    let mut a: Vec<Vec<BigRational>> = (0..eqs)
        .map(|e| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|b| BigRational::from_integer(b.entries()[e].clone())).collect();
            row.push(BigRational::from_integer(target.entries()[e].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..eqs).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for x in a[rank].iter_mut() {
            *x /= &piv;
        }
        for i in 0..eqs {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=k {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rank < k {
        return Err(Error::Invalid("basis is linearly dependent".into()));
    }
    if a[rank..].iter().any(|row| !row[k].is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut out = vec![BigInt::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        if !a[i][k].is_integer() {
            return Err(Error::NotIntegral);
        }
        out[col] = a[i][k].to_integer();
    }
    Ok(out)
}

// Rational polynomials for the Sturm computation.

type QPoly = Vec<BigRational>;

fn qtrim(p: &mut QPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn qrem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &lb;
        for (j, c) in b.iter().enumerate() {
            let t = &f * c;
            r[shift + j] -= t;
        }
        r.pop();
        qtrim(&mut r);
    }
    r
}

fn qgcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = qrem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn qdiv_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut quo = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &b[db];
        for (j, c) in b.iter().enumerate() {
            let t = &f * c;
            r[shift + j] -= t;
        }
        quo[shift] = f;
        r.pop();
    }
    qtrim(&mut quo);
    quo
}

fn qderiv(p: &QPoly) -> QPoly {
    let mut d: QPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
    qtrim(&mut d);
    d
}

fn qeval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), qderiv(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r: QPoly = qrem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut prev = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if prev != 0 && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

fn sgn(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn changes_at(chain: &[QPoly], x: &BigRational) -> usize {
    sign_changes(chain.iter().map(|p| sgn(&qeval(p, x))))
}

fn changes_at_infinity(chain: &[QPoly], positive: bool) -> usize {
    sign_changes(chain.iter().map(|p| {
        let s = sgn(p.last().unwrap());
        if positive || (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

fn squarefree(p: &QPoly) -> QPoly {
    let g = qgcd(p, &qderiv(p));
    if g.len() <= 1 {
        p.clone()
    } else {
        qdiv_exact(p, &g)
    }
}

/// Number of distinct real roots of a nonzero rational polynomial.
fn count_real_roots(p: &QPoly) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    let chain = sturm_chain(&squarefree(p));
    changes_at_infinity(&chain, false) - changes_at_infinity(&chain, true)
}

/// Distinct real roots in (a, +inf). Counted as total minus those in
/// (-inf, a], which stays valid when a is itself a root.
fn count_roots_above(p: &QPoly, a: &BigRational) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    let chain = sturm_chain(&squarefree(p));
    let total = changes_at_infinity(&chain, false) - changes_at_infinity(&chain, true);
    let at_most = changes_at_infinity(&chain, false) - changes_at(&chain, a);
    total - at_most
}

/// True iff every root l of p is real with l^2 <= bound_sq.
pub fn roots_bounded_by(p: &IntPoly, bound_sq: &BigInt) -> bool {
    assert!(!p.is_zero(), "zero polynomial");
    let qp: QPoly = p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let sf = squarefree(&qp);
    if count_real_roots(&qp) != sf.len() - 1 {
        return false;
    }
    // r(Y) = E(Y)^2 - Y O(Y)^2 where p(X) = E(X^2) + X O(X^2)
    let even: IntPoly = IntPoly::new(p.coeffs().iter().step_by(2).cloned().collect());
    let odd: IntPoly = IntPoly::new(p.coeffs().iter().skip(1).step_by(2).cloned().collect());
    let y_odd2 = IntPoly::new(std::iter::once(BigInt::zero()).chain(odd.mul(&odd).coeffs().iter().cloned()).collect());
    let e2 = even.mul(&even);
    let n = e2.coeffs().len().max(y_odd2.coeffs().len());
    let r: Vec<BigInt> = (0..n)
        .map(|i| {
            e2.coeffs().get(i).cloned().unwrap_or_default() - y_odd2.coeffs().get(i).cloned().unwrap_or_default()
        })
        .collect();
    let r = IntPoly::new(r);
    let qr: QPoly = r.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    count_roots_above(&qr, &BigRational::from_integer(bound_sq.clone())) == 0
}
