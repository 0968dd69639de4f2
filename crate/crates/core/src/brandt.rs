//! Brandt matrices of the Eichler order on the quaternion side, the involution
//! gamma, and the transfer matrices B'(x-s) acting on cochains there.
//!
//! Ideal classes are indexed (inf, 0, 1, ..., q-1); index 0 is inf and
//! index 1 + u is u.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ffpoly::QuadClass;
use crate::level::LevelParams;
use crate::zlinalg::IntMatrix;

fn weight(c: QuadClass) -> i64 {
    match c {
        QuadClass::Square => 2,
        QuadClass::Zero => 1,
        QuadClass::NonSquare => 0,
    }
}

fn check_supported(lp: &LevelParams) -> Result<()> {
    let f = lp.field();
    if f.q() == 2 {
        if (lp.a(), lp.b()) == (1, 1) {
            return Ok(());
        }
        return Err(Error::UnsupportedOrder("q = 2 is tabulated only for y = T^2 + T + 1".into()));
    }
    if f.quad_class(lp.b()) != QuadClass::NonSquare {
        return Err(Error::UnsupportedOrder(format!("b = {} is a square in F_{}", lp.b(), f.q())));
    }
    Ok(())
}

/// Closed-form counts for odd q, b a nonsquare, at parameter t in F_q.
/// The matrix at parameter t is the Brandt matrix of the ideal (T' - t).
pub fn brandt_counts(lp: &LevelParams, t: u32) -> Result<IntMatrix> {
    let f = lp.field();
    if f.q() == 2 {
        return Err(Error::UnsupportedOrder("closed forms need odd q".into()));
    }
    check_supported(lp)?;
    let q = f.q();
    let t = t % q;
    let (a, b) = (lp.a(), lp.b());
    let sq = |x: u32| f.mul(x, x);
    let c = |k: i64| f.reduce(k);
    let n = q as usize + 1;
    let mut m = IntMatrix::zeros(n, n);
    m.set(0, 0, BigInt::from(weight(f.quad_class(t))));
    for u in 0..q {
        let u2 = sq(u);
        // 1 + t(4u^2 + a + t b)
        let alpha = f.add(1, f.mul(t, f.add(f.add(f.mul(c(4), u2), a), f.mul(t, b))));
        let w = BigInt::from(weight(f.quad_class(alpha)));
        m.set(0, 1 + u as usize, w.clone());
        m.set(1 + u as usize, 0, w);
        // ((a + 4u^2)^2 - 4b) t + 16u^2
        let s4 = f.add(a, f.mul(c(4), u2));
        let beta = f.add(f.mul(f.sub(sq(s4), f.mul(c(4), b)), t), f.mul(c(16), u2));
        m.set(1 + u as usize, 1 + u as usize, BigInt::from(weight(f.quad_class(beta))));
    }
    for u in 0..q {
        for v in 0..q {
            if u == v {
                continue;
            }
            let (u2, v2) = (sq(u), sq(v));
            let td2 = f.mul(t, sq(f.sub(v, u)));
            let first = f.add(f.add(f.mul(2, u2), f.mul(2, v2)), f.mul(td2, a));
            let disc = f.sub(sq(a), f.mul(c(4), b));
            let second = f.sub(f.mul(c(16), f.mul(u2, v2)), f.mul(td2, disc));
            let xi = f.sub(sq(first), f.mul(f.sub(1, td2), second));
            m.set(1 + u as usize, 1 + v as usize, BigInt::from(weight(f.quad_class(xi))));
        }
    }
    Ok(m)
}

fn q2_table(s: u32) -> IntMatrix {
    let rows: Vec<Vec<i64>> = if s == 0 {
        // B(T') at q = 2
        vec![vec![2, 1, 2], vec![1, 2, 2], vec![2, 2, 1]]
    } else {
        vec![vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 1]]
    };
    IntMatrix::from_rows(&rows)
}

/// The Brandt matrix attached to the place x - s, i.e. B(T' - 1/s).
pub fn brandt_matrix(lp: &LevelParams, s: u32) -> Result<IntMatrix> {
    check_supported(lp)?;
    let f = lp.field();
    let s_inv = f.inv(s % f.q()).ok_or_else(|| Error::Invalid("s must be nonzero".into()))?;
    if f.q() == 2 {
        return Ok(q2_table(1));
    }
    brandt_counts(lp, s_inv)
}

/// gamma as a map on class indices.
pub fn gamma_perm(lp: &LevelParams) -> Result<Vec<usize>> {
    check_supported(lp)?;
    let f = lp.field();
    let q = f.q() as usize;
    if q == 2 {
        // read off 2J - B(T')
        return Ok(vec![1, 0, 2]);
    }
    let mut p = vec![0usize; q + 1];
    for u in 0..f.q() {
        p[1 + u as usize] = 1 + f.neg(u) as usize;
    }
    Ok(p)
}

pub fn gamma_matrix(lp: &LevelParams) -> Result<IntMatrix> {
    let p = gamma_perm(lp)?;
    let n = p.len();
    Ok(IntMatrix::from_fn(n, n, |i, j| BigInt::from((p[i] == j) as i64)))
}

/// B(T') = 2J - gamma.
pub fn brandt_t_prime(lp: &LevelParams) -> Result<IntMatrix> {
    let g = gamma_matrix(lp)?;
    let n = g.rows();
    IntMatrix::all_ones(n).scale(&BigInt::from(2)).sub(&g)
}

/// All quaternion-side data for one level.
#[derive(Debug, Clone)]
pub struct BrandtPackage {
    lp: LevelParams,
    gamma: Vec<usize>,
    brandt: Vec<IntMatrix>,
    bprime: Vec<IntMatrix>,
}

impl BrandtPackage {
    pub fn new(lp: LevelParams) -> Result<Self> {
        let gamma = gamma_perm(&lp)?;
        let q = lp.q() as usize;
        let brandt = (1..lp.q()).map(|s| brandt_matrix(&lp, s)).collect::<Result<Vec<_>>>()?;
        let mut bprime: Vec<IntMatrix> = brandt.iter().map(|b| transfer(b, &gamma, q)).collect();
        // B'(x) from sum over F_q of T_{x-s} = -1
        let bx = bprime
            .iter()
            .fold(IntMatrix::identity(q).neg(), |acc, m| acc.sub(m).expect("same shape"));
        bprime.insert(0, bx);
        Ok(BrandtPackage { lp, gamma, brandt, bprime })
    }

    pub fn level(&self) -> &LevelParams {
        &self.lp
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    /// B(T' - 1/s), s in F_q^x.
    pub fn brandt(&self, s: u32) -> &IntMatrix {
        &self.brandt[(s % self.lp.q()) as usize - 1]
    }

    /// B'(x - s) for s in F_q, s = 0 included.
    pub fn bprime(&self, s: u32) -> &IntMatrix {
        &self.bprime[(s % self.lp.q()) as usize]
    }
}

/// B'_{u',u} = B_{u',gamma(inf)} - B_{u',gamma(u)}.
fn transfer(b: &IntMatrix, gamma: &[usize], q: usize) -> IntMatrix {
    IntMatrix::from_fn(q, q, |up, u| b.get(1 + up, gamma[0]) - b.get(1 + up, gamma[1 + u]))
}

pub fn bprime_matrix(lp: &LevelParams, s: u32) -> Result<IntMatrix> {
    Ok(BrandtPackage::new(*lp)?.bprime(s).clone())
}
