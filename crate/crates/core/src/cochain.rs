//! Harmonic cochains of level xy on the labeled edges of the quotient graph,
//! the two component groups at infinity, and the Eisenstein generator.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ffpoly::Fq;
use crate::zlinalg::{smith_normal_form, AbelianGroup, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    C1,
    C2,
    C3,
    C4,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    B(u32),
}

impl EdgeLabel {
    pub fn parse(s: &str) -> Option<EdgeLabel> {
        let s = s.trim().to_ascii_lowercase();
        Some(match s.as_str() {
            "c1" => EdgeLabel::C1,
            "c2" => EdgeLabel::C2,
            "c3" => EdgeLabel::C3,
            "c4" => EdgeLabel::C4,
            "a1" => EdgeLabel::A1,
            "a2" => EdgeLabel::A2,
            "a3" => EdgeLabel::A3,
            "a4" => EdgeLabel::A4,
            "a5" => EdgeLabel::A5,
            "a6" => EdgeLabel::A6,
            _ => {
                let rest = s.strip_prefix('b')?.trim_start_matches('_');
                EdgeLabel::B(rest.parse().ok()?)
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            EdgeLabel::C1 => "c1".into(),
            EdgeLabel::C2 => "c2".into(),
            EdgeLabel::C3 => "c3".into(),
            EdgeLabel::C4 => "c4".into(),
            EdgeLabel::A1 => "a1".into(),
            EdgeLabel::A2 => "a2".into(),
            EdgeLabel::A3 => "a3".into(),
            EdgeLabel::A4 => "a4".into(),
            EdgeLabel::A5 => "a5".into(),
            EdgeLabel::A6 => "a6".into(),
            EdgeLabel::B(u) => format!("b{}", u),
        }
    }

    /// Every label for the given q, cusps first.
    pub fn all(q: u32) -> Vec<EdgeLabel> {
        let mut v = vec![
            EdgeLabel::C1,
            EdgeLabel::C2,
            EdgeLabel::C3,
            EdgeLabel::C4,
            EdgeLabel::A1,
            EdgeLabel::A2,
            EdgeLabel::A3,
            EdgeLabel::A4,
            EdgeLabel::A5,
            EdgeLabel::A6,
        ];
        v.extend((0..q).map(EdgeLabel::B));
        v
    }
}

/// Values of a cochain on the labeled edges. `b[0]` doubles as the value on a2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainXY {
    q: u32,
    modulus: u64,
    cusps: [i64; 4],
    a1: i64,
    a3: i64,
    a4: i64,
    a5: i64,
    a6: i64,
    b: Vec<i64>,
}

impl CochainXY {
    fn reduce(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn b_values(&self) -> &[i64] {
        &self.b
    }

    pub fn value(&self, label: EdgeLabel) -> i64 {
        match label {
            EdgeLabel::C1 => self.cusps[0],
            EdgeLabel::C2 => self.cusps[1],
            EdgeLabel::C3 => self.cusps[2],
            EdgeLabel::C4 => self.cusps[3],
            EdgeLabel::A1 => self.a1,
            EdgeLabel::A2 => self.b[0],
            EdgeLabel::A3 => self.a3,
            EdgeLabel::A4 => self.a4,
            EdgeLabel::A5 => self.a5,
            EdgeLabel::A6 => self.a6,
            EdgeLabel::B(u) => self.b[u as usize],
        }
    }

    pub fn set(&mut self, label: EdgeLabel, v: i64) {
        let v = self.reduce(v);
        match label {
            EdgeLabel::C1 => self.cusps[0] = v,
            EdgeLabel::C2 => self.cusps[1] = v,
            EdgeLabel::C3 => self.cusps[2] = v,
            EdgeLabel::C4 => self.cusps[3] = v,
            EdgeLabel::A1 => self.a1 = v,
            EdgeLabel::A2 => self.b[0] = v,
            EdgeLabel::A3 => self.a3 = v,
            EdgeLabel::A4 => self.a4 = v,
            EdgeLabel::A5 => self.a5 = v,
            EdgeLabel::A6 => self.a6 = v,
            EdgeLabel::B(u) => self.b[u as usize] = v,
        }
    }

    /// The six edge relations with the cusp conditions, modulo the coefficient modulus.
    pub fn relation_residuals(&self) -> [i64; 6] {
        let q1 = self.q as i64 - 1;
        let a2 = self.b[0];
        let tail: i64 = self.b[1..].iter().sum();
        [
            q1 * self.a1 + self.a5,
            q1 * a2 - self.a6,
            q1 * self.a3 + self.a6,
            q1 * self.a4 - self.a5,
            a2 + tail - self.a1,
            self.a3 - tail - self.a4,
        ]
        .map(|r| self.reduce(r))
    }

    /// f(a1) + f(a4) = 0, the extra condition cutting out the smaller lattice.
    pub fn satisfies_h00(&self) -> bool {
        self.reduce(self.a1 + self.a4) == 0
    }
}

/// The unique harmonic cuspidal extension of the b-values.
pub fn extend_cochain(q: u32, b_values: &[i64], modulus: u64) -> Result<CochainXY> {
    Fq::new(q)?;
    if b_values.len() != q as usize {
        return Err(Error::Dimension(format!("expected {} b-values, got {}", q, b_values.len())));
    }
    let mut c = CochainXY {
        q,
        modulus,
        cusps: [0; 4],
        a1: 0,
        a3: 0,
        a4: 0,
        a5: 0,
        a6: 0,
        b: vec![0; q as usize],
    };
    for (u, &v) in b_values.iter().enumerate() {
        c.b[u] = c.reduce(v);
    }
    let q1 = q as i64 - 1;
    let a1 = c.reduce(c.b.iter().sum());
    let a2 = c.b[0];
    c.a1 = a1;
    c.a4 = c.reduce(-a1);
    c.a5 = c.reduce(-q1 * a1);
    c.a6 = c.reduce(q1 * a2);
    c.a3 = c.reduce(-a2);
    debug_assert_eq!(c.relation_residuals()[5], 0);
    Ok(c)
}

pub fn check_harmonic(c: &CochainXY) -> bool {
    c.cusps.iter().all(|&v| c.reduce(v) == 0) && c.relation_residuals().iter().all(|&r| r == 0)
}

/// The q x q pairing matrix of the split side.
pub fn level_pairing_matrix(q: u32) -> IntMatrix {
    let n = q as usize;
    IntMatrix::from_fn(n, n, |i, j| {
        let v: i64 = if i == j {
            if i == 0 || i == n - 1 {
                q as i64 + 2
            } else {
                2
            }
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        };
        BigInt::from(v)
    })
}

pub fn phi_infinity_level(q: u32) -> Result<AbelianGroup> {
    Fq::new(q)?;
    let g = smith_normal_form(&level_pairing_matrix(q));
    let n = BigInt::from((q as i64 + 1) * (q as i64 * q as i64 + 1));
    if !g.is_cyclic_of_order(&n) {
        return Err(Error::StructureMismatch(format!("split-side group {:?} is not Z/{}", g, n)));
    }
    Ok(g)
}

pub fn quaternion_pairing_matrix(q: u32) -> IntMatrix {
    let n = q as usize;
    IntMatrix::identity(n).add(&IntMatrix::all_ones(n)).expect("same shape")
}

pub fn phi_infinity_quaternion(q: u32) -> Result<AbelianGroup> {
    Fq::new(q)?;
    let g = smith_normal_form(&quaternion_pairing_matrix(q));
    let n = BigInt::from(q + 1);
    if !g.is_cyclic_of_order(&n) {
        return Err(Error::StructureMismatch(format!("quaternion-side group {:?} is not Z/{}", g, n)));
    }
    Ok(g)
}

/// N = (q+1)(q^2+1) and the b-vector of the Eisenstein cochain mod N.
pub fn eisenstein_generator(q: u32) -> Result<(u64, Vec<i64>)> {
    Fq::new(q)?;
    let q = q as i64;
    let n = (q + 1) * (q * q + 1);
    let mut b = vec![(-(q + 1)).rem_euclid(n); q as usize];
    b[0] = (q * q).rem_euclid(n);
    Ok((n as u64, b))
}
