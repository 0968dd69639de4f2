//! Closed-form group invariants that depend only on q and the degrees of the
//! primes involved: supersingular counts, component groups, the cuspidal and
//! Shimura groups, Eisenstein spaces over Z/n and the conjectured kernel of
//! the Jacquet-Langlands isogeny.
//!
//! Every division is carried out in Q and checked for integrality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffpoly::is_prime;
use crate::zlinalg::{smith_normal_form, AbelianGroup, IntMatrix};

/// m = prod p_i^{r_i}, stored as (deg p_i, r_i).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModulusSpec {
    factors: Vec<(u32, u32)>,
}

impl ModulusSpec {
    pub fn unit() -> Self {
        ModulusSpec::default()
    }

    pub fn new(factors: &[(u32, u32)]) -> Result<Self> {
        if factors.iter().any(|&(d, r)| d == 0 || r == 0) {
            return Err(Error::Invalid("prime degrees and multiplicities must be positive".into()));
        }
        Ok(ModulusSpec { factors: factors.to_vec() })
    }

    /// Square-free modulus with the given prime degrees.
    pub fn squarefree(degrees: &[u32]) -> Result<Self> {
        ModulusSpec::new(&degrees.iter().map(|&d| (d, 1)).collect::<Vec<_>>())
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct primes.
    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    /// #P^1(A/m).
    pub fn projective_line_size(&self, q: u32) -> BigInt {
        self.factors
            .iter()
            .map(|&(d, r)| {
                let n = norm(q, d);
                n.pow(r - 1) * (n + 1)
            })
            .product()
    }

    /// 1 when every prime has even degree (including m = A), else 0.
    pub fn all_even_indicator(&self) -> BigInt {
        BigInt::from(self.factors.iter().all(|&(d, _)| d % 2 == 0) as i64)
    }

    fn has_odd_degree(&self) -> bool {
        self.factors.iter().any(|&(d, _)| d % 2 == 1)
    }
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 || !is_prime(q as i64) {
        return Err(Error::BadModulus(q as i64));
    }
    Ok(())
}

fn check_degrees(degs: &[u32]) -> Result<()> {
    if degs.iter().any(|&d| d == 0) {
        return Err(Error::Invalid("prime degrees must be positive".into()));
    }
    Ok(())
}

/// |p| = q^deg.
pub fn norm(q: u32, deg: u32) -> BigInt {
    BigInt::from(q).pow(deg)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn integral(r: &BigRational, what: &str) -> Result<BigInt> {
    if !r.is_integer() {
        return Err(Error::NonIntegral(format!("{} = {}", what, r)));
    }
    Ok(r.to_integer())
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    integral(&ratio(num, den), what)
}

fn two_pow(s: usize) -> BigInt {
    BigInt::one() << s
}

/// Number of supersingular points on X_0(m) in characteristic p.
pub fn supersingular_count(q: u32, deg_p: u32, m: &ModulusSpec) -> Result<BigInt> {
    check_q(q)?;
    check_degrees(&[deg_p])?;
    let qb = int(q as i64);
    let p = norm(q, deg_p);
    let q2m1: BigInt = &qb * &qb - 1;
    let l = m.projective_line_size(q);
    let r = m.all_even_indicator();
    let s = m.prime_count();
    let v = if deg_p % 2 == 0 {
        ratio(p - 1, q2m1) * BigRational::from_integer(l)
    } else {
        ratio((p - &qb) * &l, q2m1) + ratio(&l + &qb * two_pow(s) * r, &qb + 1)
    };
    integral(&v, "supersingular count")
}

/// Component group of J_0(p m) at p, p prime to m.
pub fn component_group_fp(q: u32, deg_p: u32, m: &ModulusSpec) -> Result<AbelianGroup> {
    let s_count = supersingular_count(q, deg_p, m)?;
    let q1 = int(q as i64 + 1);
    if deg_p % 2 == 1 && m.is_unit() {
        return Ok(AbelianGroup::cyclic(&q1 * (s_count - 1) + 1));
    }
    if deg_p % 2 == 0 || m.has_odd_degree() {
        return Ok(AbelianGroup::cyclic(s_count));
    }
    let s = m.prime_count();
    let big = &q1 * &q1 * s_count - int(q as i64) * &q1 * two_pow(s);
    let mut orders = vec![big];
    let extra = (1usize << s) - 2;
    orders.extend(std::iter::repeat(q1).take(extra));
    Ok(AbelianGroup::from_cyclic_orders(&orders))
}

/// (Phi_p, Phi_p(F_p)) for n = p q.
pub fn component_group_pq(q: u32, deg_p: u32, deg_q: u32) -> Result<(AbelianGroup, AbelianGroup)> {
    check_q(q)?;
    check_degrees(&[deg_p, deg_q])?;
    let qb = int(q as i64);
    let n = ratio((norm(q, deg_p) - 1) * (norm(q, deg_q) + 1), &qb * &qb - 1);
    let q1 = BigRational::from_integer(&qb + 1);
    if deg_p % 2 == 1 && deg_q % 2 == 0 {
        let whole = integral(&(&q1 * &q1 * &n), "(q+1)^2 n")?;
        let fixed = integral(&(&q1 * &n), "(q+1) n")?;
        return Ok((AbelianGroup::cyclic(whole), AbelianGroup::cyclic(fixed)));
    }
    let g = AbelianGroup::cyclic(integral(&n, "n(p, q)")?);
    Ok((g.clone(), g))
}

/// The cuspidal divisor group of J_0(p q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalGroup {
    /// Order of [p] - [inf].
    pub order_c_p: BigInt,
    /// Order of [q] - [inf].
    pub order_c_q: BigInt,
    /// (N_{--}, N_{-+}, N_{+-}).
    pub sub_orders: [BigInt; 3],
    /// The subgroup generated by the three sign combinations.
    pub sub: AbelianGroup,
    pub full: AbelianGroup,
}

fn mu(q: u32, deg_p: u32, deg_q: u32) -> BigInt {
    let qb = int(q as i64);
    if deg_p % 2 == 0 || deg_q % 2 == 0 {
        (&qb - 1) * (&qb * &qb - 1)
    } else {
        (&qb - 1) * (&qb - 1)
    }
}

fn epsilon(q: u32, deg_p: u32, deg_q: u32) -> BigInt {
    let qb = int(q as i64);
    let q_even = q % 2 == 0;
    let (p_odd, q_odd) = (deg_p % 2 == 1, deg_q % 2 == 1);
    if p_odd && !q_odd {
        if q_even {
            qb - 1
        } else {
            int(2) * (qb - 1)
        }
    } else if (p_odd && q_odd) || (q_even && !p_odd) {
        &qb * &qb - 1
    } else {
        int(2) * (&qb * &qb - 1)
    }
}

fn split_two(n: &BigInt) -> (BigInt, u32) {
    let mut odd = n.clone();
    let mut v = 0;
    while !odd.is_zero() && odd.is_even() {
        odd >>= 1;
        v += 1;
    }
    (odd, v)
}

pub fn cuspidal_group(q: u32, deg_p: u32, deg_q: u32) -> Result<CuspidalGroup> {
    check_q(q)?;
    check_degrees(&[deg_p, deg_q])?;
    let qb = int(q as i64);
    let (p, r) = (norm(q, deg_p), norm(q, deg_q));
    let den: BigInt = (&qb - 1) * (&qb * &qb - 1);
    let order_c_p = exact_div((&p * &p - 1) * (&r - 1), den.clone(), "order of c_p")?;
    let order_c_q = exact_div((&p - 1) * (&r * &r - 1), den, "order of c_q")?;
    let n_mm = exact_div((&p - 1) * (&r - 1), mu(q, deg_p, deg_q), "N(-,-)")?;
    let n_mp = exact_div((&p - 1) * (&r + 1), epsilon(q, deg_p, deg_q), "N(-,+)")?;
    let n_pm = exact_div((&p + 1) * (&r - 1), epsilon(q, deg_q, deg_p), "N(+,-)")?;
    let sub_orders = [n_mm, n_mp, n_pm];
    let sub = AbelianGroup::from_cyclic_orders(&sub_orders);
    let unchanged = q % 2 == 0 || (deg_p * deg_q) % 2 == 1;
    let full = if unchanged {
        sub.clone()
    } else {
        let mut odd = Vec::new();
        let mut vals = Vec::new();
        for n in &sub_orders {
            let (o, v) = split_two(n);
            odd.push(o);
            vals.push(v);
        }
        vals.sort_unstable_by(|a, b| b.cmp(a));
        let mut orders = odd;
        orders.push(two_pow(vals[0] as usize + 1));
        orders.push(two_pow(vals[1] as usize + 1));
        orders.push(two_pow(vals[2] as usize));
        AbelianGroup::from_cyclic_orders(&orders)
    };
    Ok(CuspidalGroup { order_c_p, order_c_q, sub_orders, sub, full })
}

/// The Shimura subgroup of J_0(n), n square-free with the given prime degrees.
pub fn shimura_group(q: u32, degrees: &[u32]) -> Result<AbelianGroup> {
    check_q(q)?;
    check_degrees(degrees)?;
    if degrees.is_empty() {
        return Ok(AbelianGroup::trivial());
    }
    let qb = int(q as i64);
    let q2m1: BigInt = &qb * &qb - 1;
    if degrees.iter().any(|d| d % 2 == 1) {
        let orders = degrees
            .iter()
            .map(|&d| exact_div(norm(q, d) - 1, &qb - 1, "(|p|-1)/(q-1)"))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AbelianGroup::from_cyclic_orders(&orders));
    }
    if q % 2 == 0 {
        let orders = degrees
            .iter()
            .map(|&d| exact_div(norm(q, d) - 1, q2m1.clone(), "(|p|-1)/(q^2-1)"))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AbelianGroup::from_cyclic_orders(&orders));
    }
    let orders = degrees
        .iter()
        .map(|&d| exact_div(int(2) * (norm(q, d) - 1), q2m1.clone(), "2(|p|-1)/(q^2-1)"))
        .collect::<Result<Vec<_>>>()?;
    // quotient by the diagonal Z/2: add the relation sum (m_i/2) e_i = 0
    let k = orders.len();
    let rel = IntMatrix::from_fn(k + 1, k, |i, j| {
        if i < k {
            if i == j {
                orders[i].clone()
            } else {
                BigInt::zero()
            }
        } else {
            &orders[j] / 2
        }
    });
    Ok(smith_normal_form(&rel))
}

fn nu_single(q: u32, deg: u32) -> BigInt {
    if deg % 2 == 1 {
        int(q as i64 + 1)
    } else {
        BigInt::one()
    }
}

fn nu_pair(q: u32, deg_p: u32, deg_q: u32) -> BigInt {
    if deg_p % 2 == 0 || deg_q % 2 == 0 {
        BigInt::one()
    } else {
        int(q as i64 + 1)
    }
}

pub const EISENSTEIN_MODULUS_CAP: u64 = 10_000;

/// Integer relation matrix whose kernel over Z/n is the Eisenstein space of
/// level p q. Rows are the three congruences on the coefficients (a, b, c).
pub fn eisenstein_relations(q: u32, deg_p: u32, deg_q: u32) -> Result<IntMatrix> {
    check_q(q)?;
    check_degrees(&[deg_p, deg_q])?;
    let qb = int(q as i64);
    let (p, r) = (norm(q, deg_p), norm(q, deg_q));
    let (nu_p, nu_q, nu_pq) = (nu_single(q, deg_p), nu_single(q, deg_q), nu_pair(q, deg_p, deg_q));
    let q2m1: BigInt = &qb * &qb - 1;
    let one_m_q2 = BigInt::one() - &qb * &qb;
    let e = |num: BigInt, den: &BigInt, what: &str| exact_div(num, den.clone(), what);
    let r0 = e((&p - 1) * (&r + 1) * &nu_p, &q2m1, "first relation")?;
    let r1 = e((&p + 1) * (&r - 1) * &nu_q, &q2m1, "second relation")?;
    let ca = e((BigInt::one() - &p) * &nu_p, &one_m_q2, "a-coefficient")?;
    let cb = e((BigInt::one() - &r) * &nu_q, &one_m_q2, "b-coefficient")?;
    let cc = e((BigInt::one() - &p) * (BigInt::one() - &r) * &nu_pq, &one_m_q2, "c-coefficient")?;
    let z = BigInt::zero;
    Ok(IntMatrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => r0.clone(),
        (1, 1) => r1.clone(),
        (2, 0) => ca.clone(),
        (2, 1) => cb.clone(),
        (2, 2) => cc.clone(),
        _ => z(),
    }))
}

/// Kernel of the relation matrix on (Z/n)^3 as an abstract group.
pub fn eisenstein_space_bruteforce(q: u32, deg_p: u32, deg_q: u32, n: u64) -> Result<AbelianGroup> {
    if n == 0 || n > EISENSTEIN_MODULUS_CAP {
        return Err(Error::Invalid(format!("modulus {} outside 1..={}", n, EISENSTEIN_MODULUS_CAP)));
    }
    if n.gcd(&(q as u64)) != 1 {
        return Err(Error::Invalid(format!("modulus {} is not prime to q = {}", n, q)));
    }
    let nb = BigInt::from(n);
    if !nu_pair(q, deg_p, deg_q).gcd(&nb).is_one() {
        return Err(Error::Invalid(format!("q + 1 is not invertible mod {}", n)));
    }
    let rel = eisenstein_relations(q, deg_p, deg_q)?;
    // A = U D V with U, V unimodular, so ker A = V^{-1} ker D and ker D is
    // the sum of the d_i-torsion of Z/n.
    let diag = smith_normal_form(&rel);
    let orders: Vec<BigInt> = diag
        .factors()
        .iter()
        .map(|d| if d.is_zero() { nb.clone() } else { d.gcd(&nb) })
        .collect();
    Ok(AbelianGroup::from_cyclic_orders(&orders))
}

/// Data around the conjectured kernel for n = p q with deg p <= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelConjecture {
    /// M(q).
    pub m_q: BigInt,
    /// Order of [1] - [inf] in J_0(q).
    pub n_q: BigInt,
    pub kernel: AbelianGroup,
    /// Component group of the quaternion-side Jacobian at q.
    pub phi_prime_q: AbelianGroup,
    /// Phi_q modulo the image of the old cuspidal divisor.
    pub phi_tilde_q: AbelianGroup,
}

pub fn jl_kernel_conjecture(q: u32, deg_p: u32, deg_q: u32) -> Result<KernelConjecture> {
    check_q(q)?;
    check_degrees(&[deg_p, deg_q])?;
    if deg_p > 2 {
        return Err(Error::Invalid(format!("deg p = {} exceeds 2", deg_p)));
    }
    let qb = int(q as i64);
    let r = norm(q, deg_q);
    let q_even = deg_q % 2 == 0;
    let m_q = if q_even { &r + 1 } else { exact_div(&r + 1, &qb + 1, "M(q)")? };
    let n_q = if q_even {
        exact_div(&r - 1, &qb * &qb - 1, "N(q)")?
    } else {
        exact_div(&r - 1, &qb - 1, "N(q)")?
    };
    let q1: BigInt = &qb + 1;
    let q2p1: BigInt = &qb * &qb + 1;
    let (kernel, phi_prime, phi_tilde) = if deg_p == 1 {
        (
            AbelianGroup::cyclic(m_q.clone()),
            if q_even { &q1 * &m_q } else { m_q.clone() },
            if q_even { AbelianGroup::cyclic(q1.clone()) } else { AbelianGroup::trivial() },
        )
    } else {
        (
            AbelianGroup::from_cyclic_orders(&[m_q.clone(), q2p1.clone()]),
            if q_even { m_q.clone() } else { &q1 * &m_q },
            AbelianGroup::cyclic(if q_even { q2p1 } else { q2p1 * &q1 }),
        )
    };
    Ok(KernelConjecture {
        m_q,
        n_q,
        kernel,
        phi_prime_q: AbelianGroup::cyclic(phi_prime),
        phi_tilde_q: phi_tilde,
    })
}
