//! Integral conjugacy between the quaternion-side matrices B'(x-s) and the
//! split-side matrices G(x-s).

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::brandt::BrandtPackage;
use crate::error::{Error, Result};
use crate::hecke::HeckePackage;
use crate::level::LevelParams;
use crate::search::{first_match, Exec};
use crate::zlinalg::IntMatrix;

/// M_{u,s} = (B'(x-s)^T alpha)_u, columns s in F_q ascending.
pub fn pairing_gram(bp: &BrandtPackage, alpha: &[i64]) -> IntMatrix {
    let q = bp.level().q() as usize;
    assert_eq!(alpha.len(), q, "alpha has length q");
    let a: Vec<BigInt> = alpha.iter().map(|&v| BigInt::from(v)).collect();
    let cols: Vec<Vec<BigInt>> = (0..q as u32).map(|s| bp.bprime(s).transpose().mul_vec(&a)).collect();
    IntMatrix::from_fn(q, q, |u, s| cols[s][u].clone())
}

/// Same pairing with the column set {1} and {T_{x-s} : s != 0}.
pub fn pairing_gram_unit_basis(bp: &BrandtPackage, alpha: &[i64]) -> IntMatrix {
    let mut m = pairing_gram(bp, alpha);
    for (u, &v) in alpha.iter().enumerate() {
        m.set(u, 0, BigInt::from(v));
    }
    m
}

/// First alpha in scan order with |det M| = 1.
pub fn find_alpha(lp: &LevelParams, bound: u32, exec: Exec) -> Result<Vec<i64>> {
    let bp = BrandtPackage::new(*lp)?;
    let q = lp.q() as usize;
    // B'(x-s)^T as plain integers for the inner loop
    let bt: Vec<Vec<Vec<i64>>> = (0..q as u32).map(|s| bp.bprime(s).transpose().to_i64_rows()).collect();
    let pred = |alpha: &[i64]| {
        let m = IntMatrix::from_fn(q, q, |u, s| {
            BigInt::from(bt[s][u].iter().zip(alpha).map(|(x, y)| x * y).sum::<i64>())
        });
        m.det().map_or(false, |d| d.abs().is_one())
    };
    first_match(q, bound, exec, pred).ok_or(Error::NotFound)
}

#[derive(Debug, Clone)]
pub struct ConjugacyReport {
    pub alpha: Vec<i64>,
    pub gram: IntMatrix,
    pub det: BigInt,
    pub conjugator: Option<IntMatrix>,
    /// Which construction produced the conjugator.
    pub variant: Option<String>,
    /// Vector used when the conjugator needed a self-duality correction.
    pub witness: Option<Vec<i64>>,
    /// (s, C^{-1} B'(x-s) C == G(x-s)) for s in F_q, s = 0 included.
    pub checks: Vec<(u32, bool)>,
}

impl ConjugacyReport {
    pub fn verified(&self) -> bool {
        self.conjugator.is_some() && !self.checks.is_empty() && self.checks.iter().all(|&(_, ok)| ok)
    }
}

/// Per-s verification of C^{-1} B'(x-s) C = G(x-s), s in F_q. Returns None
/// when C is not unimodular.
pub fn verify_conjugator(hp: &HeckePackage, bp: &BrandtPackage, c: &IntMatrix) -> Option<Vec<(u32, bool)>> {
    if !c.is_unimodular() {
        return None;
    }
    let ci = c.inverse_integral().ok()?;
    Some(
        (0..hp.level().q())
            .map(|s| {
                let lhs = ci.mul(bp.bprime(s)).and_then(|x| x.mul(c));
                (s, lhs.map_or(false, |m| m == hp.t_all(s)))
            })
            .collect(),
    )
}

fn all_hold(checks: &Option<Vec<(u32, bool)>>) -> bool {
    checks.as_ref().map_or(false, |v| v.iter().all(|&(_, ok)| ok))
}

/// Rows: the 1-row has -1 everywhere, the T_{x-s}-row is the unit vector e_s.
fn split_presentation(q: usize) -> IntMatrix {
    IntMatrix::from_fn(q, q, |r, v| {
        BigInt::from(if r == 0 {
            -1
        } else {
            (r == v) as i64
        })
    })
}

/// Rows: alpha, then (B'(x-s)^T alpha)^T for s in F_q^x.
fn quaternion_presentation(bp: &BrandtPackage, alpha: &[i64]) -> IntMatrix {
    pairing_gram_unit_basis(bp, alpha).transpose()
}

/// Builds C with C^{-1} B'(x-s) C = G(x-s) from a unimodular pairing alpha.
/// The direct candidates from P_H^{-1} P_H' are tried first; when they only
/// intertwine B' with the transposed family, a vector h whose orbit
/// (h, G^T(x-1) h, ...) is a Z-basis supplies the missing duality.
pub fn build_and_verify_conjugator(
    lp: &LevelParams,
    alpha: &[i64],
    witness_bound: u32,
    exec: Exec,
) -> Result<ConjugacyReport> {
    let hp = HeckePackage::new(*lp)?;
    let bp = BrandtPackage::new(*lp)?;
    let q = lp.q() as usize;
    if alpha.len() != q {
        return Err(Error::Dimension(format!("alpha must have length {}", q)));
    }
    let gram = pairing_gram(&bp, alpha);
    let det = gram.det()?;
    let mut report = ConjugacyReport {
        alpha: alpha.to_vec(),
        gram,
        det: det.clone(),
        conjugator: None,
        variant: None,
        witness: None,
        checks: Vec::new(),
    };
    if !det.abs().is_one() {
        return Ok(report);
    }
    let ph = split_presentation(q);
    let ph_inv = ph.inverse_integral()?;
    let x = ph_inv.mul(&quaternion_presentation(&bp, alpha))?;
    let x_inv = x.inverse_integral()?;
    let candidates = [
        ("direct", x.clone()),
        ("inverse", x_inv.clone()),
        ("transpose", x.transpose()),
        ("inverse-transpose", x_inv.transpose()),
    ];
    for (name, c) in candidates {
        let checks = verify_conjugator(&hp, &bp, &c);
        if all_hold(&checks) {
            report.conjugator = Some(c);
            report.variant = Some(name.to_string());
            report.checks = checks.unwrap();
            return Ok(report);
        }
    }
    let gts: Vec<IntMatrix> = (1..lp.q()).map(|s| hp.g(s).transpose()).collect();
    let ph_inv_t = ph_inv.transpose();
    let build = |h: &[i64]| -> Option<IntMatrix> {
        let hv: Vec<BigInt> = h.iter().map(|&v| BigInt::from(v)).collect();
        let mut cols = vec![hv.clone()];
        cols.extend(gts.iter().map(|g| g.mul_vec(&hv)));
        let psi = IntMatrix::from_fn(q, q, |i, j| cols[j][i].clone());
        if !psi.is_unimodular() {
            return None;
        }
        let w = psi.mul(&ph_inv_t).ok()?;
        x_inv.mul(&w).ok()
    };
    let pred = |h: &[i64]| build(h).map_or(false, |c| all_hold(&verify_conjugator(&hp, &bp, &c)));
    match first_match(q, witness_bound, exec, pred) {
        Some(h) => {
            let c = build(&h).expect("witness rebuilt");
            report.checks = verify_conjugator(&hp, &bp, &c).unwrap();
            report.conjugator = Some(c);
            report.variant = Some("witness".to_string());
            report.witness = Some(h);
            Ok(report)
        }
        None => Err(Error::NoIntertwiner),
    }
}
