use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use xyhecke_core::brandt::BrandtPackage;
use xyhecke_core::cochain::{eisenstein_generator, extend_cochain, phi_infinity_level, phi_infinity_quaternion, EdgeLabel};
use xyhecke_core::eisenstein::generator_combination;
use xyhecke_core::hecke::{discriminant, eisenstein_quotient, gorenstein_search, prime_divisors, HeckePackage};
use xyhecke_core::invariants::{
    component_group_fp, component_group_pq, cuspidal_group, eisenstein_space_bruteforce, jl_kernel_conjecture,
    shimura_group, supersingular_count, ModulusSpec,
};
use xyhecke_core::jl::build_and_verify_conjugator;
use xyhecke_core::level::LevelParams;
use xyhecke_core::search::Exec;
use xyhecke_core::tables::{ALPHAS, DISCRIMINANTS};
use xyhecke_core::zlinalg::{charpoly, roots_bounded_by, AbelianGroup};

pub type Outcome = Result<(), String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Default,
    Formulas,
    Tables,
}

fn e2s(e: xyhecke_core::Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyc(v: &[i64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

const SMALL: [u32; 4] = [2, 3, 5, 7];
const FORMULA_QS: [u32; 6] = [2, 3, 5, 7, 11, 13];

fn levels(qs: &[u32]) -> Result<Vec<LevelParams>, String> {
    let mut out = Vec::new();
    for &q in qs {
        out.extend(LevelParams::all_for(q).map_err(e2s)?);
    }
    Ok(out)
}

fn discriminants(_: Exec) -> Outcome {
    for (q, a, b, want) in DISCRIMINANTS {
        let d = discriminant(&LevelParams::new(q, a, b).map_err(e2s)?).map_err(e2s)?;
        ensure(d == BigInt::from(want), || format!("q={} a={} b={}: {} != {}", q, a, b, d, want))?;
    }
    Ok(())
}

fn alphas(exec: Exec) -> Outcome {
    for (q, a, b, alpha) in ALPHAS {
        let lp = LevelParams::new(q, a, b).map_err(e2s)?;
        let r = build_and_verify_conjugator(&lp, alpha, 1, exec).map_err(e2s)?;
        ensure(r.det.abs() == BigInt::from(1) && r.verified(), || format!("q={} a={} b={}", q, a, b))?;
    }
    Ok(())
}

fn hecke_identities(_: Exec) -> Outcome {
    for lp in levels(&SMALL)? {
        let hp = HeckePackage::new(lp).map_err(e2s)?;
        let q = lp.q();
        let (n, b) = eisenstein_generator(q).map_err(e2s)?;
        let nb = BigInt::from(n);
        let v: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        for s in 1..q {
            let g = hp.g(s);
            for (u, r) in g.row_sums().into_iter().enumerate() {
                ensure(r == BigInt::from(-((u as u32 == s) as i64)), || format!("{:?} s={}: row sum", lp, s))?;
            }
            for t in (s + 1)..q {
                let h = hp.g(t);
                ensure(g.mul(h).map_err(e2s)? == h.mul(g).map_err(e2s)?, || format!("{:?}: noncommuting", lp))?;
            }
            ensure(roots_bounded_by(&charpoly(g).map_err(e2s)?, &BigInt::from(4 * q)), || format!("{:?} s={}: Ramanujan", lp, s))?;
            let w = g.transpose().mul_vec(&v);
            for (x, y) in w.iter().zip(&v) {
                ensure(((x - y * BigInt::from(q + 1)).mod_floor(&nb)) == BigInt::from(0), || format!("{:?}: Eisenstein vector", lp))?;
            }
        }
    }
    Ok(())
}

fn brandt_identities(_: Exec) -> Outcome {
    for lp in levels(&SMALL)? {
        let Ok(bp) = BrandtPackage::new(lp) else { continue };
        let hp = HeckePackage::new(lp).map_err(e2s)?;
        let q = lp.q();
        for s in 1..q {
            let m = bp.brandt(s);
            ensure(m.is_symmetric(), || format!("{:?}: asymmetric", lp))?;
            ensure(m.row_sums().iter().all(|r| *r == BigInt::from(q + 1)), || format!("{:?}: row sums", lp))?;
        }
        for s in 0..q {
            ensure(charpoly(bp.bprime(s)).map_err(e2s)? == charpoly(&hp.t_all(s)).map_err(e2s)?, || format!("{:?} s={}: charpoly", lp, s))?;
        }
    }
    Ok(())
}

fn infinity(_: Exec) -> Outcome {
    for q in FORMULA_QS {
        let n = BigInt::from((q as i64 + 1) * (q as i64 * q as i64 + 1));
        ensure(phi_infinity_level(q).map_err(e2s)?.is_cyclic_of_order(&n), || format!("q={}: split side", q))?;
        ensure(phi_infinity_quaternion(q).map_err(e2s)?.is_cyclic_of_order(&BigInt::from(q + 1)), || format!("q={}: quaternion side", q))?;
    }
    Ok(())
}

fn quotient(_: Exec) -> Outcome {
    for lp in levels(&SMALL)? {
        eisenstein_quotient(&lp).map_err(|e| format!("{:?}: {}", lp, e))?;
    }
    Ok(())
}

fn gorenstein(exec: Exec) -> Outcome {
    for lp in levels(&SMALL)?.into_iter().filter(|lp| BrandtPackage::new(*lp).is_ok()) {
        let q = lp.q() as u64;
        for ell in prime_divisors((q + 1) * (q * q + 1)) {
            gorenstein_search(&lp, ell, 3, exec).map_err(|e| format!("{:?} ell={}: {}", lp, ell, e))?;
        }
    }
    Ok(())
}

fn eisenstein_generator_values(_: Exec) -> Outcome {
    for q in SMALL {
        let (n, b) = eisenstein_generator(q).map_err(e2s)?;
        let c = extend_cochain(q, &b, n).map_err(e2s)?;
        let nb = BigInt::from(n);
        let lp = LevelParams::all_for(q).map_err(e2s)?[0];
        for label in EdgeLabel::all(q) {
            let v = generator_combination(&lp, label).map_err(e2s)?;
            ensure(v.is_integer(), || format!("q={} {}: not integral", q, label.name()))?;
            ensure(v.to_integer().mod_floor(&nb) == BigInt::from(c.value(label)).mod_floor(&nb), || format!("q={} {}", q, label.name()))?;
        }
    }
    Ok(())
}

fn group_examples(_: Exec) -> Outcome {
    for q in FORMULA_QS {
        let qi = q as i64;
        let iso = |g: &AbelianGroup, want: &[i64], what: &str| ensure(g.is_isomorphic(&cyc(want)), || format!("q={} {}: {:?}", q, what, g));
        iso(&cuspidal_group(q, 1, 2).map_err(e2s)?.full, &[qi + 1, qi * qi + 1], "cuspidal (1,2)")?;
        iso(&cuspidal_group(q, 2, 2).map_err(e2s)?.full, &[qi * qi + 1, (qi + 1) * (qi * qi + 1)], "cuspidal (2,2)")?;
        iso(&shimura_group(q, &[1, 2]).map_err(e2s)?, &[qi + 1], "shimura (1,2)")?;
        iso(&shimura_group(q, &[3]).map_err(e2s)?, &[qi * qi + qi + 1], "shimura (3)")?;
        iso(&component_group_fp(q, 1, &ModulusSpec::squarefree(&[2]).map_err(e2s)?).map_err(e2s)?, &[(qi + 1) * (qi * qi + 1)], "component at x")?;
        iso(&component_group_pq(q, 2, 1).map_err(e2s)?.0, &[qi + 1], "component (2,1)")?;
        iso(&jl_kernel_conjecture(q, 1, 2).map_err(e2s)?.kernel, &[qi * qi + 1], "kernel (1,2)")?;
        iso(&jl_kernel_conjecture(q, 2, 2).map_err(e2s)?.kernel, &[qi * qi + 1, qi * qi + 1], "kernel (2,2)")?;
        ensure(supersingular_count(q, 1, &ModulusSpec::squarefree(&[2]).map_err(e2s)?).map_err(e2s)? == BigInt::from(qi + 1), || format!("q={}: supersingular", q))?;
    }
    Ok(())
}

fn cusp_orders(_: Exec) -> Outcome {
    for q in FORMULA_QS {
        for dp in 1..=4 {
            for dq in 1..=4 {
                let c = cuspidal_group(q, dp, dq).map_err(e2s)?;
                let [nmm, nmp, npm] = c.sub_orders.clone();
                let k = BigInt::from(if q % 2 == 1 && (dp * dq) % 2 == 0 { 2 } else { 1 });
                ensure(c.order_c_p == &k * nmm.lcm(&npm) && c.order_c_q == &k * nmm.lcm(&nmp), || format!("q={} degrees ({},{})", q, dp, dq))?;
            }
        }
    }
    Ok(())
}

fn eisenstein_spaces(_: Exec) -> Outcome {
    for q in [3u32, 5, 7] {
        let qi = q as i64;
        let m1 = BigInt::from((qi - 1) / 2 * (qi * qi + 1) * (qi + 1));
        for n in (1..=60u64).filter(|n| n % q as u64 != 0) {
            let g = eisenstein_space_bruteforce(q, 1, 2, n).map_err(e2s)?;
            let nb = BigInt::from(n);
            let want = AbelianGroup::from_cyclic_orders(&[m1.gcd(&nb), BigInt::from(2).gcd(&nb)]);
            ensure(g.is_isomorphic(&want), || format!("q={} n={}", q, n))?;
        }
    }
    Ok(())
}

type CheckFn = fn(Exec) -> Outcome;

pub fn checks(scope: Scope) -> Vec<(&'static str, CheckFn)> {
    let tables: Vec<(&'static str, CheckFn)> = vec![("discriminant table", discriminants), ("pairing table", alphas)];
    let formulas: Vec<(&'static str, CheckFn)> = vec![
        ("group-formula examples", group_examples),
        ("cusp orders through sign combinations", cusp_orders),
        ("Eisenstein space closed form, odd q", eisenstein_spaces),
    ];
    match scope {
        Scope::Tables => tables,
        Scope::Formulas => formulas,
        Scope::Default => {
            let mut v = tables;
            v.extend([
                ("Hecke identities", hecke_identities as CheckFn),
                ("Brandt identities", brandt_identities),
                ("component groups at infinity", infinity),
                ("Eisenstein quotient", quotient),
                ("Gorenstein witnesses", gorenstein),
                ("Eisenstein generator on edges", eisenstein_generator_values),
            ]);
            v.extend(formulas);
            v
        }
    }
}
