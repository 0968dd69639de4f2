//! Prime fields, monic polynomials in F_q[T], Laurent series in the
//! uniformizer pi = 1/T, and cyclotomic integers Z[zeta_p].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest field size accepted anywhere in the crate.
pub const MAX_Q: u32 = 97;
/// Degree cap for divisor enumeration.
pub const MAX_DIVISOR_DEGREE: usize = 12;
/// Default Laurent window: coefficients of pi^k for k < 8 are tracked.
pub const DEFAULT_PRECISION: i64 = 8;

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadClass {
    Square,
    Zero,
    NonSquare,
}

/// The prime field F_q. Elements are plain residues in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    q: u32,
}

impl Fq {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_Q || !is_prime(q as i64) {
            return Err(Error::BadModulus(q as i64));
        }
        Ok(Fq { q })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a % self.q == 0 {
            None
        } else {
            Some(self.pow(a, (self.q - 2) as u64))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.q
    }

    pub fn quad_class(&self, e: u32) -> QuadClass {
        let e = e % self.q;
        if e == 0 {
            return QuadClass::Zero;
        }
        if self.q == 2 {
            return QuadClass::Square;
        }
        // Euler's criterion
        if self.pow(e, ((self.q - 1) / 2) as u64) == 1 {
            QuadClass::Square
        } else {
            QuadClass::NonSquare
        }
    }

    pub fn is_square(&self, e: u32) -> bool {
        self.quad_class(e) == QuadClass::Square
    }
}

/// True iff T^2 + aT + b has no root in F_q.
pub fn is_irreducible_deg2(f: &Fq, a: u32, b: u32) -> bool {
    f.elements()
        .all(|t| f.add(f.add(f.mul(t, t), f.mul(a % f.q(), t)), b % f.q()) != 0)
}

// Dense F_q polynomial helpers, coefficients low to high.

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Division by a monic divisor. Returns (quotient, remainder).
fn poly_divmod_monic(f: &Fq, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![0], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quo = vec![0u32; a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = rem[i + db];
        if c == 0 {
            continue;
        }
        quo[i] = c;
        for j in 0..=db {
            rem[i + j] = f.sub(rem[i + j], f.mul(c, b[j]));
        }
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

/// A monic polynomial in A = F_q[T].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    q: u32,
    coeffs: Vec<u32>,
}

impl MonicPoly {
    /// Coefficients low to high; the last one must be 1.
    pub fn new(field: &Fq, coeffs: &[u32]) -> Result<Self> {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| x % field.q()).collect();
        trim(&mut c);
        if c.is_empty() || *c.last().unwrap() != 1 {
            return Err(Error::Invalid("polynomial is not monic".into()));
        }
        Ok(MonicPoly { q: field.q(), coeffs: c })
    }

    pub fn one(field: &Fq) -> Self {
        MonicPoly { q: field.q(), coeffs: vec![1] }
    }

    /// The polynomial T.
    pub fn t(field: &Fq) -> Self {
        MonicPoly { q: field.q(), coeffs: vec![0, 1] }
    }

    /// T^2 + aT + b.
    pub fn quadratic(field: &Fq, a: u32, b: u32) -> Self {
        MonicPoly {
            q: field.q(),
            coeffs: vec![b % field.q(), a % field.q(), 1],
        }
    }

    pub fn field(&self) -> Fq {
        Fq { q: self.q }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// |m| = q^deg m.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.q).pow(self.degree() as u32)
    }

    pub fn mul(&self, other: &MonicPoly) -> MonicPoly {
        let f = self.field();
        MonicPoly {
            q: self.q,
            coeffs: poly_mul(&f, &self.coeffs, &other.coeffs),
        }
    }

    pub fn divides(&self, m: &MonicPoly) -> bool {
        let f = self.field();
        let (_, r) = poly_divmod_monic(&f, &m.coeffs, &self.coeffs);
        r.iter().all(|&c| c == 0)
    }

    /// m / self when self divides m.
    pub fn quotient_of(&self, m: &MonicPoly) -> Option<MonicPoly> {
        let f = self.field();
        let (quo, r) = poly_divmod_monic(&f, &m.coeffs, &self.coeffs);
        if r.iter().any(|&c| c != 0) {
            return None;
        }
        Some(MonicPoly { q: self.q, coeffs: quo })
    }

    pub fn gcd(&self, other: &MonicPoly) -> MonicPoly {
        let f = self.field();
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !(b.len() == 1 && b[0] == 0) {
            let lead = *b.last().unwrap();
            let li = f.inv(lead).unwrap();
            let bm: Vec<u32> = b.iter().map(|&c| f.mul(c, li)).collect();
            let (_, r) = poly_divmod_monic(&f, &a, &bm);
            a = bm;
            b = r;
        }
        let li = f.inv(*a.last().unwrap()).unwrap();
        let coeffs = a.iter().map(|&c| f.mul(c, li)).collect();
        MonicPoly { q: self.q, coeffs }
    }

    pub fn is_coprime(&self, other: &MonicPoly) -> bool {
        self.gcd(other).degree() == 0
    }

    /// All monic polynomials of exact degree d, ordered by the coefficient
    /// tuple read from T^{d-1} down to T^0.
    pub fn all_of_degree(field: &Fq, d: usize) -> Vec<MonicPoly> {
        let q = field.q() as usize;
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = vec![0u32; d + 1];
                c[d] = 1;
                for k in 0..d {
                    c[k] = (idx % q) as u32;
                    idx /= q;
                }
                MonicPoly { q: field.q(), coeffs: c }
            })
            .collect()
    }

    /// Monic divisors, ordered by (degree, coefficient tuple).
    pub fn monic_divisors(&self) -> Result<Vec<MonicPoly>> {
        let n = self.degree();
        if n > MAX_DIVISOR_DEGREE {
            return Err(Error::DegreeCap(n));
        }
        let f = self.field();
        let mut out = Vec::new();
        for d in 0..=n / 2 {
            for cand in MonicPoly::all_of_degree(&f, d) {
                if let Some(co) = cand.quotient_of(self) {
                    out.push(cand);
                    out.push(co);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Evaluate the coefficients into a Laurent series in pi = 1/T.
    pub fn to_laurent(&self) -> LaurentSeries {
        LaurentSeries::from_t_poly(&self.field(), &self.coeffs)
    }
}

impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{}", i),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mon,
                _ => format!("{}{}", c, mon),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Truncated Laurent series sum c_k pi^k over F_q. Coefficients are known
/// for indices below `prec`; everything below `val` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    q: u32,
    val: i64,
    coeffs: Vec<u32>,
    prec: i64,
}

/// Marker for series with no truncation (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX;

impl LaurentSeries {
    pub fn zero(field: &Fq) -> Self {
        LaurentSeries { q: field.q(), val: 0, coeffs: Vec::new(), prec: EXACT }
    }

    /// c * pi^k, exact.
    pub fn monomial(field: &Fq, c: u32, k: i64) -> Self {
        LaurentSeries {
            q: field.q(),
            val: k,
            coeffs: vec![c % field.q()],
            prec: EXACT,
        }
        .normalized()
    }

    /// Exact series with `coeffs[i]` the coefficient of pi^{val + i}.
    pub fn from_coeffs(field: &Fq, val: i64, coeffs: &[u32]) -> Self {
        LaurentSeries {
            q: field.q(),
            val,
            coeffs: coeffs.iter().map(|&c| c % field.q()).collect(),
            prec: EXACT,
        }
        .normalized()
    }

    /// A polynomial in T, coefficients low to high; T^j = pi^{-j}.
    pub fn from_t_poly(field: &Fq, t_coeffs: &[u32]) -> Self {
        let n = t_coeffs.len() as i64;
        let rev: Vec<u32> = t_coeffs.iter().rev().copied().collect();
        LaurentSeries::from_coeffs(field, -(n - 1), &rev)
    }

    /// 1 / g(T) for a monic g of degree d, as pi^d (1 + c_1 pi + ...)^{-1},
    /// known below pi^prec.
    pub fn inverse_of_monic(g: &MonicPoly, prec: i64) -> Self {
        let f = g.field();
        let d = g.degree() as i64;
        // g(T) = T^d * h(pi), h(pi) = sum_j g_{d-j} pi^j, h(0) = 1
        let h: Vec<u32> = g.coeffs().iter().rev().copied().collect();
        let len = (prec - d).max(0) as usize;
        let mut inv = vec![0u32; len];
        for n in 0..len {
            let mut acc = if n == 0 { 1 } else { 0 };
            for j in 1..h.len().min(n + 1) {
                acc = f.sub(acc, f.mul(h[j], inv[n - j]));
            }
            inv[n] = acc;
        }
        LaurentSeries { q: g.field().q(), val: d, coeffs: inv, prec }.normalized()
    }

    fn normalized(mut self) -> Self {
        while let Some(&0) = self.coeffs.first() {
            self.coeffs.remove(0);
            self.val += 1;
        }
        while let Some(&0) = self.coeffs.last() {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
        self
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn with_precision(mut self, prec: i64) -> Self {
        if prec < self.prec {
            let keep = (prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
            self.prec = prec;
        }
        self.normalized()
    }

    /// Index of the lowest nonzero coefficient (None for zero series).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Coefficient of pi^k.
    pub fn coeff(&self, k: i64) -> Result<u32> {
        if k >= self.prec {
            let lo = self.valuation().unwrap_or(self.prec).min(self.prec);
            return Err(Error::Precision { index: k, lo, hi: self.prec });
        }
        if k < self.val {
            return Ok(0);
        }
        Ok(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = Fq { q: self.q };
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() {
            return other.clone().with_precision(prec);
        }
        if other.coeffs.is_empty() {
            return self.clone().with_precision(prec);
        }
        let lo = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i64)
            .max(other.val + other.coeffs.len() as i64)
            .min(prec);
        let mut c = Vec::with_capacity((hi - lo).max(0) as usize);
        for k in lo..hi {
            let x = if k >= self.val { self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0) } else { 0 };
            let y = if k >= other.val { other.coeffs.get((k - other.val) as usize).copied().unwrap_or(0) } else { 0 };
            c.push(f.add(x, y));
        }
        LaurentSeries { q: self.q, val: lo, coeffs: c, prec }.normalized()
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = Fq { q: self.q };
        LaurentSeries {
            q: self.q,
            val: self.val,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
            prec: self.prec,
        }
        .normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = Fq { q: self.q };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            let prec = match (self.prec, other.prec) {
                (EXACT, EXACT) => EXACT,
                _ => self.prec.min(other.prec),
            };
            return LaurentSeries { q: self.q, val: 0, coeffs: Vec::new(), prec };
        }
        let prec = match (self.prec == EXACT, other.prec == EXACT) {
            (true, true) => EXACT,
            (true, false) => other.prec + self.val,
            (false, true) => self.prec + other.val,
            (false, false) => (self.prec + other.val).min(other.prec + self.val),
        };
        let val = self.val + other.val;
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(x, y));
            }
        }
        if prec != EXACT {
            c.truncate((prec - val).max(0) as usize);
        }
        LaurentSeries { q: self.q, val, coeffs: c, prec }.normalized()
    }
}

/// An element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInt {
    p: u32,
    coords: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coords: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut c = CyclotomicInt::zero(p);
        c.coords[0] = n.into();
        c
    }

    /// zeta^e, reduced by 1 + zeta + ... + zeta^{p-1} = 0.
    pub fn zeta_pow(p: u32, e: u64) -> Self {
        let e = (e % p as u64) as usize;
        let mut c = CyclotomicInt::zero(p);
        if e < (p - 1) as usize {
            c.coords[e] = BigInt::one();
        } else {
            for x in c.coords.iter_mut() {
                *x = -BigInt::one();
            }
        }
        c
    }

    /// Raw coordinates as given; reduction happens on construction.
    pub fn from_coords(p: u32, coords: &[i64]) -> Self {
        let mut c = CyclotomicInt::zero(p);
        for (i, &v) in coords.iter().enumerate() {
            c.add_assign(&CyclotomicInt::zeta_pow(p, i as u64).scaled(&BigInt::from(v)));
        }
        c
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(other.coords.iter()) {
            *a += b;
        }
    }

    /// self += n * zeta^e
    pub fn add_zeta_multiple(&mut self, e: u64, n: &BigInt) {
        let e = (e % self.p as u64) as usize;
        if e < self.coords.len() {
            self.coords[e] += n;
        } else {
            for x in self.coords.iter_mut() {
                *x -= n;
            }
        }
    }

    pub fn scaled(&self, n: &BigInt) -> Self {
        CyclotomicInt { p: self.p, coords: self.coords.iter().map(|x| x * n).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = CyclotomicInt::zero(self.p);
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if !y.is_zero() {
                    out.add_zeta_multiple((i + j) as u64, &(x * y));
                }
            }
        }
        out
    }

    /// The rational integer n when self = n * 1.
    pub fn as_integer(&self) -> Result<BigInt> {
        if self.coords[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.coords[0].clone())
    }
}

/// eta(u) = zeta_q^{a_1(u)} where a_1 is the coefficient of pi^1.
pub fn character(u: &LaurentSeries) -> Result<CyclotomicInt> {
    let a1 = u.coeff(1)?;
    Ok(CyclotomicInt::zeta_pow(u.q, a1 as u64))
}
