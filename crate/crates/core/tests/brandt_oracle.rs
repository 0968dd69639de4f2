// Brute-force Brandt matrices from the Eichler order itself: enumerate
// elements of the right reduced norm and test ideal membership directly.

use xyhecke_core::brandt::brandt_matrix;
use xyhecke_core::level::LevelParams;

/// Laurent polynomial in t over F_q: coefficient of t^(lo + i) at index i.
#[derive(Clone, Debug)]
struct Lp {
    lo: i32,
    c: Vec<i64>,
    q: i64,
}

impl Lp {
    fn new(q: i64, lo: i32, c: &[i64]) -> Lp {
        Lp { lo, c: c.iter().map(|v| v.rem_euclid(q)).collect(), q }.trim()
    }

    fn zero(q: i64) -> Lp {
        Lp { lo: 0, c: vec![], q }
    }

    fn constant(q: i64, v: i64) -> Lp {
        Lp::new(q, 0, &[v])
    }

    fn trim(mut self) -> Lp {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&v| v == 0).count();
        self.c.drain(..lead);
        self.lo += lead as i32;
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_polynomial(&self) -> bool {
        self.is_zero() || self.lo >= 0
    }

    fn get(&self, e: i32) -> i64 {
        let i = e - self.lo;
        if i < 0 || i as usize >= self.c.len() {
            0
        } else {
            self.c[i as usize]
        }
    }

    fn hi(&self) -> i32 {
        self.lo + self.c.len() as i32
    }

    fn add(&self, o: &Lp) -> Lp {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let c: Vec<i64> = (lo..hi).map(|e| self.get(e) + o.get(e)).collect();
        Lp::new(self.q, lo, &c)
    }

    fn scale(&self, k: i64) -> Lp {
        Lp::new(self.q, self.lo, &self.c.iter().map(|v| v * k).collect::<Vec<_>>())
    }

    fn sub(&self, o: &Lp) -> Lp {
        self.add(&o.scale(-1))
    }

    fn mul(&self, o: &Lp) -> Lp {
        if self.is_zero() || o.is_zero() {
            return Lp::zero(self.q);
        }
        let mut c = vec![0i64; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.q;
            }
        }
        Lp::new(self.q, self.lo + o.lo, &c)
    }

    fn shift(&self, k: i32) -> Lp {
        let mut r = self.clone();
        if !r.is_zero() {
            r.lo += k;
        }
        r
    }

    fn eq(&self, o: &Lp) -> bool {
        self.sub(o).is_zero()
    }
}

type Quat = [Lp; 4];

struct Algebra {
    q: i64,
    alpha: Lp,
    beta: Lp,
}

impl Algebra {
    fn new(q: i64, a: i64, b: i64) -> Algebra {
        Algebra { q, alpha: Lp::new(q, 1, &[1]), beta: Lp::new(q, 0, &[1, a, b]) }
    }

    // basis 1, i, j, k with i^2 = alpha, j^2 = beta, k = ij = -ji
    fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let (al, be) = (&self.alpha, &self.beta);
        let ab = al.mul(be);
        let r0 = x[0].mul(&y[0]).add(&al.mul(&x[1].mul(&y[1]))).add(&be.mul(&x[2].mul(&y[2]))).sub(&ab.mul(&x[3].mul(&y[3])));
        let r1 = x[0].mul(&y[1]).add(&x[1].mul(&y[0])).sub(&be.mul(&x[2].mul(&y[3]))).add(&be.mul(&x[3].mul(&y[2])));
        let r2 = x[0].mul(&y[2]).add(&x[2].mul(&y[0])).add(&al.mul(&x[1].mul(&y[3]))).sub(&al.mul(&x[3].mul(&y[1])));
        let r3 = x[0].mul(&y[3]).add(&x[3].mul(&y[0])).add(&x[1].mul(&y[2])).sub(&x[2].mul(&y[1]));
        [r0, r1, r2, r3]
    }

    fn norm(&self, x: &Quat) -> Lp {
        let (al, be) = (&self.alpha, &self.beta);
        x[0].mul(&x[0])
            .sub(&al.mul(&x[1].mul(&x[1])))
            .sub(&be.mul(&x[2].mul(&x[2])))
            .add(&al.mul(be).mul(&x[3].mul(&x[3])))
    }

    /// Z-basis of the ideal class with index None (the order) or Some(u).
    fn ideal(&self, u: Option<i64>) -> Vec<Quat> {
        let q = self.q;
        let c = |v| Lp::constant(q, v);
        let z = || Lp::zero(q);
        match u {
            None => vec![
                [c(1), z(), z(), z()],
                [z(), c(1), z(), z()],
                [z(), z(), c(1), z()],
                [z(), z(), z(), c(1)],
            ],
            Some(u) => vec![
                [c(1), z(), c(-1), z()],
                [z(), Lp::new(q, -1, &[1]), c(2 * u), Lp::new(q, -1, &[1])],
                [z(), z(), Lp::new(q, 1, &[1]), z()],
                [z(), z(), z(), c(1)],
            ],
        }
    }

    /// Coordinates in the ideal basis are read off directly:
    /// c0 = v0, c1 = t v1, c2 = (v2 + v0 - 2u t v1)/t, c3 = v3 - v1.
    fn member(&self, v: &Quat, u: Option<i64>) -> bool {
        match u {
            None => v.iter().all(Lp::is_polynomial),
            Some(u) => {
                let tv1 = v[1].shift(1);
                let c2 = v[2].add(&v[0]).sub(&tv1.scale(2 * u)).shift(-1);
                [v[0].clone(), tv1, c2, v[3].sub(&v[1])].iter().all(Lp::is_polynomial)
            }
        }
    }
}

/// Counts for the ideal (T' - 1/s), i.e. elements of norm c(1 - s t) up to units.
fn brute_brandt(q: i64, a: i64, b: i64, s: i64) -> Vec<Vec<i64>> {
    let alg = Algebra::new(q, a, b);
    let targets: Vec<Lp> = (1..q).map(|c| Lp::new(q, 2, &[c, -c * s])).collect();
    let mut cands: Vec<Quat> = Vec::new();
    for x00 in 0..q {
        for x01 in 0..q {
            for x10 in 0..q {
                for x11 in 0..q {
                    for x2 in 0..q {
                        for x3 in 0..q {
                            let num = [
                                Lp::new(q, 0, &[x00, x01]),
                                Lp::new(q, 0, &[x10, x11]),
                                Lp::constant(q, x2),
                                Lp::constant(q, x3),
                            ];
                            let nr = alg.norm(&num);
                            if targets.iter().any(|t| nr.eq(t)) {
                                cands.push(num.map(|c| c.shift(-1)));
                            }
                        }
                    }
                }
            }
        }
    }
    let idx: Vec<Option<i64>> = std::iter::once(None).chain((0..q).map(Some)).collect();
    idx.iter()
        .map(|&u| {
            idx.iter()
                .map(|&w| {
                    let gens = alg.ideal(w);
                    let n = cands.iter().filter(|z| gens.iter().all(|g| alg.member(&alg.mul(z, g), u))).count();
                    assert_eq!(n as i64 % (q - 1), 0);
                    n as i64 / (q - 1)
                })
                .collect()
        })
        .collect()
}

#[test]
fn closed_forms_match_enumeration() {
    for q in [3u32, 5] {
        for lp in LevelParams::all_for(q).unwrap() {
            if brandt_matrix(&lp, 1).is_err() {
                continue;
            }
            for s in 1..q {
                let brute = brute_brandt(q as i64, lp.a() as i64, lp.b() as i64, s as i64);
                for row in &brute {
                    assert_eq!(row.iter().sum::<i64>(), q as i64 + 1);
                }
                let closed = brandt_matrix(&lp, s).unwrap();
                assert_eq!(closed.to_i64_rows(), brute, "q={} a={} b={} s={}", q, lp.a(), lp.b(), s);
            }
        }
    }
}

#[test]
fn enumeration_is_symmetric() {
    let m = brute_brandt(3, 1, 2, 2);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
}
