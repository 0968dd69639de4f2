//! The level xy: x = T and y = T^2 + aT + b irreducible over F_q.

use crate::error::{Error, Result};
use crate::ffpoly::{is_irreducible_deg2, Fq, MonicPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelParams {
    field: Fq,
    a: u32,
    b: u32,
}

impl LevelParams {
    pub fn new(q: u32, a: u32, b: u32) -> Result<Self> {
        let field = Fq::new(q)?;
        let (a, b) = (a % q, b % q);
        if !is_irreducible_deg2(&field, a, b) {
            return Err(Error::Reducible { q, a, b });
        }
        Ok(LevelParams { field, a, b })
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn x(&self) -> MonicPoly {
        MonicPoly::t(&self.field)
    }

    pub fn y(&self) -> MonicPoly {
        MonicPoly::quadratic(&self.field, self.a, self.b)
    }

    /// Every irreducible y = T^2 + aT + b for this q, ordered by (a, b).
    pub fn all_for(q: u32) -> Result<Vec<LevelParams>> {
        let field = Fq::new(q)?;
        Ok((0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .filter(|&(a, b)| is_irreducible_deg2(&field, a, b))
            .map(|(a, b)| LevelParams { field, a, b })
            .collect())
    }
}
