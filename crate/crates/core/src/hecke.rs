//! Gekeler's Hecke matrices on cuspidal cochains of level xy, the trace-form
//! discriminant, the Eisenstein quotient and the Gorenstein search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::level::LevelParams;
use crate::search::{first_match, Exec};
use crate::zlinalg::{express_in_span, nullity_mod_ell, rank_mod, smith_normal_form, trace_form_discriminant, AbelianGroup, IntMatrix};

/// Number of distinct roots beta of (u-b)(w-b)(s-b) + b(b^2 + a b + c) in F_q,
/// plus one when u + w + s + a = 0.
fn root_count(lp: &LevelParams, s: u32, u: u32, w: u32) -> i64 {
    let f = lp.field();
    let (a, b) = (lp.a(), lp.b());
    let roots = f
        .elements()
        .filter(|&beta| {
            let lhs = f.mul(f.mul(f.sub(u, beta), f.sub(w, beta)), f.sub(s, beta));
            let rhs = f.mul(beta, f.add(f.add(f.mul(beta, beta), f.mul(a, beta)), b));
            f.add(lhs, rhs) == 0
        })
        .count() as i64;
    let extra = (f.add(f.add(u, w), f.add(s, a)) == 0) as i64;
    roots + extra
}

/// The q x q matrix of T_{x-s}, rows and columns indexed by F_q ascending.
pub fn gekeler_matrix(lp: &LevelParams, s: u32) -> Result<IntMatrix> {
    let f = lp.field();
    let q = f.q();
    let s = s % q;
    let s_inv = f.inv(s).ok_or_else(|| Error::Invalid("s must be nonzero".into()))?;
    let b_over_s = f.mul(lp.b(), s_inv);
    Ok(IntMatrix::from_fn(q as usize, q as usize, |u, w| {
        let (u, w) = (u as u32, w as u32);
        let mut v = 2 - root_count(lp, s, u, w);
        if w == s {
            v -= q as i64 + 1;
        }
        if u == 0 && w == b_over_s {
            v += q as i64;
        }
        BigInt::from(v)
    }))
}

/// The Hecke matrices G(x-s), s in F_q^x, for one level.
#[derive(Debug, Clone)]
pub struct HeckePackage {
    lp: LevelParams,
    mats: Vec<IntMatrix>,
}

impl HeckePackage {
    pub fn new(lp: LevelParams) -> Result<Self> {
        let mats = (1..lp.q()).map(|s| gekeler_matrix(&lp, s)).collect::<Result<Vec<_>>>()?;
        Ok(HeckePackage { lp, mats })
    }

    pub fn level(&self) -> &LevelParams {
        &self.lp
    }

    pub fn dim(&self) -> usize {
        self.lp.q() as usize
    }

    /// G(x-s) for s in F_q^x.
    pub fn g(&self, s: u32) -> &IntMatrix {
        &self.mats[(s % self.lp.q()) as usize - 1]
    }

    /// T_x, fixed by the relation sum over s in F_q of T_{x-s} = -1.
    pub fn t_x(&self) -> IntMatrix {
        let n = self.dim();
        self.mats
            .iter()
            .fold(IntMatrix::identity(n).neg(), |acc, g| acc.sub(g).expect("same shape"))
    }

    /// T_{x-s} for every s in F_q, including s = 0.
    pub fn t_all(&self, s: u32) -> IntMatrix {
        if s % self.lp.q() == 0 {
            self.t_x()
        } else {
            self.g(s).clone()
        }
    }

    /// The Z-basis {1, T_{x-1}, ..., T_{x-(q-1)}} of the Hecke algebra.
    pub fn basis(&self) -> Vec<IntMatrix> {
        let mut v = vec![IntMatrix::identity(self.dim())];
        v.extend(self.mats.iter().cloned());
        v
    }

    /// eta_s = T_{x-s} - (q+1).
    pub fn eta(&self, s: u32) -> IntMatrix {
        let q1 = BigInt::from(self.lp.q() + 1);
        self.g(s).sub(&IntMatrix::identity(self.dim()).scale(&q1)).expect("same shape")
    }
}

pub fn discriminant(lp: &LevelParams) -> Result<BigInt> {
    trace_form_discriminant(&HeckePackage::new(*lp)?.basis())
}

/// The quotient of the Hecke algebra by the ideal generated by the eta_s.
pub fn eisenstein_quotient(lp: &LevelParams) -> Result<AbelianGroup> {
    let pkg = HeckePackage::new(*lp)?;
    let basis = pkg.basis();
    let n = basis.len();
    let mut rows = Vec::new();
    for s in 1..lp.q() {
        let eta = pkg.eta(s);
        for t in &basis {
            rows.push(express_in_span(&eta.mul(t)?, &basis)?);
        }
    }
    let m = IntMatrix::from_fn(rows.len(), n, |i, j| rows[i][j].clone());
    let g = smith_normal_form(&m);
    let q = lp.q() as i64;
    let expected = BigInt::from((q + 1) * (q * q + 1));
    if !g.is_cyclic_of_order(&expected) {
        return Err(Error::StructureMismatch(format!(
            "quotient {:?} differs from Z/{}; the degree-one generators may span a smaller ideal",
            g, expected
        )));
    }
    Ok(g)
}

fn matrix_mod(m: &IntMatrix, ell: u64) -> Vec<Vec<u64>> {
    let l = BigInt::from(ell);
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).mod_floor(&l).to_u64().unwrap()).collect())
        .collect()
}

/// First coefficient vector (c_s), |c_s| <= bound, for which sum c_s eta_s has
/// a one-dimensional kernel mod ell.
pub fn gorenstein_search(lp: &LevelParams, ell: u64, bound: u32, exec: Exec) -> Result<Vec<i64>> {
    let q = lp.q() as u64;
    let n = (q + 1) * (q * q + 1);
    if !crate::ffpoly::is_prime(ell as i64) || n % ell != 0 || ell == q {
        return Err(Error::Invalid(format!("{} is not a prime divisor of {} prime to q", ell, n)));
    }
    if bound == 0 {
        return Err(Error::Invalid("coefficient bound must be at least 1".into()));
    }
    let pkg = HeckePackage::new(*lp)?;
    let etas: Vec<Vec<Vec<u64>>> = (1..lp.q()).map(|s| matrix_mod(&pkg.eta(s), ell)).collect();
    let dim = pkg.dim();
    let pred = |c: &[i64]| {
        let mut acc = vec![vec![0u64; dim]; dim];
        for (cs, e) in c.iter().zip(etas.iter()) {
            let k = cs.rem_euclid(ell as i64) as u64;
            if k == 0 {
                continue;
            }
            for i in 0..dim {
                for j in 0..dim {
                    acc[i][j] = (acc[i][j] + k * e[i][j]) % ell;
                }
            }
        }
        dim - rank_mod(acc, ell) == 1
    };
    first_match(etas.len(), bound, exec, pred).ok_or(Error::NotFound)
}

/// sum c_s eta_s as an integer matrix.
pub fn eta_combination(lp: &LevelParams, coeffs: &[i64]) -> Result<IntMatrix> {
    let pkg = HeckePackage::new(*lp)?;
    let mut acc = IntMatrix::zeros(pkg.dim(), pkg.dim());
    for (s, c) in (1..lp.q()).zip(coeffs.iter()) {
        acc = acc.add(&pkg.eta(s).scale(&BigInt::from(*c)))?;
    }
    Ok(acc)
}

/// Kernel dimension of the eta combination mod ell.
pub fn eta_nullity(lp: &LevelParams, coeffs: &[i64], ell: u64) -> Result<usize> {
    nullity_mod_ell(&eta_combination(lp, coeffs)?, ell)
}

/// Distinct prime divisors of n in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
