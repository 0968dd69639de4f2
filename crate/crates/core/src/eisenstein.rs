//! Divisor sums and Eisenstein series evaluated on the labeled edges.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cochain::EdgeLabel;
use crate::error::{Error, Result};
use crate::ffpoly::{character, CyclotomicInt, Fq, LaurentSeries, MonicPoly, DEFAULT_PRECISION};
use crate::level::LevelParams;

/// sum of |d| over monic divisors d of m.
pub fn sigma(m: &MonicPoly) -> Result<BigInt> {
    Ok(m.monic_divisors()?.iter().map(|d| d.norm()).sum())
}

/// sigma(m) - |n| sigma(m/n), the second term dropped when n does not divide m.
pub fn sigma_level(m: &MonicPoly, n: &MonicPoly) -> Result<BigInt> {
    let mut s = sigma(m)?;
    if let Some(co) = n.quotient_of(m) {
        s -= n.norm() * sigma(&co)?;
    }
    Ok(s)
}

/// sum of |d| over monic divisors d of m coprime to p*q.
pub fn sigma_prime(m: &MonicPoly, p: &MonicPoly, q: &MonicPoly) -> Result<BigInt> {
    let pq = p.mul(q);
    Ok(m.monic_divisors()?
        .iter()
        .filter(|d| d.is_coprime(&pq))
        .map(|d| d.norm())
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesKind {
    Level(MonicPoly),
    Pair(MonicPoly, MonicPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinSeries {
    kind: SeriesKind,
}

impl EisensteinSeries {
    pub fn level(n: MonicPoly) -> Self {
        EisensteinSeries { kind: SeriesKind::Level(n) }
    }

    pub fn pair(p: MonicPoly, q: MonicPoly) -> Result<Self> {
        if p == q {
            return Err(Error::Invalid("pair series needs distinct primes".into()));
        }
        Ok(EisensteinSeries { kind: SeriesKind::Pair(p, q) })
    }

    pub fn kind(&self) -> &SeriesKind {
        &self.kind
    }

    fn field(&self) -> Fq {
        match &self.kind {
            SeriesKind::Level(n) => n.field(),
            SeriesKind::Pair(p, _) => p.field(),
        }
    }

    /// The normalizing factor nu.
    pub fn nu(&self) -> BigInt {
        let q1 = BigInt::from(self.field().q() + 1);
        match &self.kind {
            SeriesKind::Level(n) => {
                if n.degree() % 2 == 1 {
                    q1
                } else {
                    BigInt::one()
                }
            }
            SeriesKind::Pair(p, q) => {
                if p.degree() % 2 == 0 || q.degree() % 2 == 0 {
                    BigInt::one()
                } else {
                    q1
                }
            }
        }
    }

    fn constant_term(&self) -> BigRational {
        let q = BigInt::from(self.field().q());
        let den = BigInt::one() - &q * &q;
        let num = match &self.kind {
            SeriesKind::Level(n) => BigInt::one() - n.norm(),
            SeriesKind::Pair(p, r) => (BigInt::one() - p.norm()) * (BigInt::one() - r.norm()),
        };
        BigRational::new(num, den)
    }

    fn coefficient(&self, m: &MonicPoly) -> Result<BigInt> {
        match &self.kind {
            SeriesKind::Level(n) => sigma_level(m, n),
            SeriesKind::Pair(p, r) => sigma_prime(m, p, r),
        }
    }
}

/// The edge (pi^k, u; 0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub k: i64,
    pub u: LaurentSeries,
}

pub fn edge_spec(lp: &LevelParams, label: EdgeLabel) -> Result<EdgeSpec> {
    let f = lp.field();
    let pi = |c: u32, e: i64| LaurentSeries::monomial(&f, c, e);
    let zero = LaurentSeries::zero(&f);
    let y_inv = LaurentSeries::inverse_of_monic(&lp.y(), DEFAULT_PRECISION);
    let (k, u) = match label {
        EdgeLabel::C1 => (1, zero),
        EdgeLabel::C2 => (3, zero),
        EdgeLabel::C3 => (4, pi(1, 1)),
        EdgeLabel::C4 => (5, y_inv),
        EdgeLabel::A1 => (2, pi(1, 1)),
        EdgeLabel::A2 => (3, pi(1, 1)),
        EdgeLabel::A3 => (4, y_inv),
        EdgeLabel::A4 => (3, pi(1, 2)),
        EdgeLabel::A5 => (2, zero),
        EdgeLabel::A6 => (4, pi(1, 1).add(&pi(f.neg(lp.b()), 3))),
        EdgeLabel::B(w) => {
            if w >= f.q() {
                return Err(Error::Invalid(format!("b-label index {} outside F_{}", w, f.q())));
            }
            (3, pi(1, 1).add(&pi(w, 2)))
        }
    };
    Ok(EdgeSpec { k, u })
}

/// Exact value of the series on an edge. The Fourier sum runs over every
/// nonzero m of degree at most k-2, with the coefficient taken at the monic
/// associate of m.
pub fn evaluate_on_edge(series: &EisensteinSeries, e: &EdgeSpec) -> Result<BigRational> {
    let f = series.field();
    let p = f.q();
    let mut acc = CyclotomicInt::zero(p);
    for d in 0..=(e.k - 2).max(-1) {
        for m in MonicPoly::all_of_degree(&f, d as usize) {
            let coeff = series.coefficient(&m)?;
            let mu = m.to_laurent().mul(&e.u);
            for c in f.units() {
                let term = character(&mu.scale(c))?;
                acc.add_assign(&term.scaled(&coeff));
            }
        }
    }
    let sum = acc.as_integer()?;
    let q = BigInt::from(p);
    let scale = if e.k <= 1 {
        BigRational::from_integer(q.pow((1 - e.k) as u32))
    } else {
        BigRational::new(BigInt::one(), q.pow((e.k - 1) as u32))
    };
    Ok(BigRational::from_integer(series.nu()) * scale * (series.constant_term() + BigRational::from_integer(sum)))
}

/// E_x, E_y and E_(x,y) for the level.
pub fn level_series(lp: &LevelParams) -> (EisensteinSeries, EisensteinSeries, EisensteinSeries) {
    let (x, y) = (lp.x(), lp.y());
    (
        EisensteinSeries::level(x.clone()),
        EisensteinSeries::level(y.clone()),
        EisensteinSeries::pair(x, y).expect("x and y differ"),
    )
}

/// -(q+1) E_x + (q^2+1) E_y + q E_(x,y) on an edge.
pub fn generator_combination(lp: &LevelParams, label: EdgeLabel) -> Result<BigRational> {
    let (ex, ey, exy) = level_series(lp);
    let e = edge_spec(lp, label)?;
    let q = BigInt::from(lp.q());
    let cx = BigRational::from_integer(-(&q + BigInt::one()));
    let cy = BigRational::from_integer(&q * &q + BigInt::one());
    let cxy = BigRational::from_integer(q);
    Ok(cx * evaluate_on_edge(&ex, &e)? + cy * evaluate_on_edge(&ey, &e)? + cxy * evaluate_on_edge(&exy, &e)?)
}
