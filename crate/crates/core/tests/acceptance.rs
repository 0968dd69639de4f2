// One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use xyhecke_core::brandt::{brandt_matrix, brandt_t_prime, gamma_matrix, BrandtPackage};
use xyhecke_core::cochain::{eisenstein_generator, extend_cochain, phi_infinity_level, phi_infinity_quaternion, EdgeLabel};
use xyhecke_core::eisenstein::{edge_spec, evaluate_on_edge, generator_combination, level_series, sigma, sigma_prime};
use xyhecke_core::ffpoly::{is_prime, Fq, MonicPoly};
use xyhecke_core::hecke::{discriminant, eisenstein_quotient, gekeler_matrix, gorenstein_search, prime_divisors, HeckePackage};
use xyhecke_core::invariants::{
    component_group_fp, component_group_pq, cuspidal_group, jl_kernel_conjecture, shimura_group, ModulusSpec,
};
use xyhecke_core::jl::{build_and_verify_conjugator, find_alpha, verify_conjugator};
use xyhecke_core::level::LevelParams;
use xyhecke_core::search::Exec;
use xyhecke_core::tables::{ALPHAS, DISCRIMINANTS};
use xyhecke_core::zlinalg::{charpoly, roots_bounded_by, AbelianGroup, IntMatrix, IntPoly};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

fn cyc(orders: &[i64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(&orders.iter().map(|&v| bi(v)).collect::<Vec<_>>())
}

fn level(q: u32, a: u32, b: u32) -> std::result::Result<LevelParams, String> {
    LevelParams::new(q, a, b).map_err(|e| e.to_string())
}

fn table_one() -> Check {
    for (q, a, b, want) in DISCRIMINANTS {
        let start = Instant::now();
        let d = discriminant(&level(q, a, b)?).map_err(|e| e.to_string())?;
        ensure(d == BigInt::from(want), || format!("q={} a={} b={}: got {}, want {}", q, a, b, d, want))?;
        ensure(start.elapsed() < Duration::from_secs(1), || format!("q={} took {:?}", q, start.elapsed()))?;
    }
    Ok(())
}

fn q2_pipeline() -> Check {
    let lp = level(2, 1, 1)?;
    let err = |e: xyhecke_core::Error| e.to_string();
    ensure(gekeler_matrix(&lp, 1).map_err(err)? == m(&[&[0, 0], &[1, -2]]), || "G(x-1)".into())?;
    ensure(brandt_t_prime(&lp).map_err(err)? == m(&[&[2, 1, 2], &[1, 2, 2], &[2, 2, 1]]), || "B(T')".into())?;
    ensure(brandt_matrix(&lp, 1).map_err(err)? == m(&[&[0, 2, 1], &[2, 0, 1], &[1, 1, 1]]), || "B(T'-1)".into())?;
    ensure(gamma_matrix(&lp).map_err(err)? == m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), || "gamma".into())?;
    let bp = BrandtPackage::new(lp).map_err(err)?;
    ensure(bp.bprime(1) == &m(&[&[-2, -1], &[0, 0]]), || "B'(x-1)".into())?;
    let hp = HeckePackage::new(lp).map_err(err)?;
    let checks = verify_conjugator(&hp, &bp, &m(&[&[0, -1], &[1, 0]])).ok_or("C not unimodular")?;
    ensure(checks.iter().all(|&(_, ok)| ok), || format!("conjugation fails: {:?}", checks))
}

fn table_two() -> Check {
    for (q, a, b, alpha) in ALPHAS {
        let lp = level(q, a, b)?;
        let r = build_and_verify_conjugator(&lp, alpha, 1, Exec::Parallel).map_err(|e| format!("q={} a={} b={}: {}", q, a, b, e))?;
        ensure(r.det.abs() == bi(1), || format!("q={} a={} b={}: det M = {}", q, a, b, r.det))?;
        ensure(r.verified(), || format!("q={} a={} b={}: conjugator fails {:?}", q, a, b, r.checks))?;
    }
    for q in [2u32, 3] {
        for lp in LevelParams::all_for(q).map_err(|e| e.to_string())? {
            if BrandtPackage::new(lp).is_err() {
                continue;
            }
            let alpha = find_alpha(&lp, 1, Exec::Parallel).map_err(|e| format!("{:?}: {}", lp, e))?;
            let r = build_and_verify_conjugator(&lp, &alpha, 1, Exec::Parallel).map_err(|e| e.to_string())?;
            ensure(r.verified(), || format!("{:?}: searched alpha {:?} gives no conjugator", lp, alpha))?;
        }
    }
    Ok(())
}

fn charpolys() -> Check {
    let g = gekeler_matrix(&level(2, 1, 1)?, 1).map_err(|e| e.to_string())?;
    let cp = charpoly(&g).map_err(|e| e.to_string())?;
    ensure(cp == IntPoly::from_i64(&[0, 2, 1]), || format!("q=2: {}", cp))?;
    let g = gekeler_matrix(&level(3, 1, 2)?, 2).map_err(|e| e.to_string())?;
    let cp = charpoly(&g).map_err(|e| e.to_string())?;
    let want = IntPoly::from_i64(&[1, 1]).mul(&IntPoly::from_i64(&[-4, -1, 1]));
    ensure(cp == want, || format!("q=3: {}", cp))
}

fn infinity_groups() -> Check {
    for q in (2..=13).filter(|&q| is_prime(q as i64)) {
        let n = bi((q as i64 + 1) * (q as i64 * q as i64 + 1));
        let g = phi_infinity_level(q).map_err(|e| e.to_string())?;
        ensure(g.is_cyclic_of_order(&n), || format!("q={}: split side {:?}", q, g))?;
        let g = phi_infinity_quaternion(q).map_err(|e| e.to_string())?;
        ensure(g.is_cyclic_of_order(&bi(q as i64 + 1)), || format!("q={}: quaternion side {:?}", q, g))?;
    }
    Ok(())
}

fn quotients() -> Check {
    for q in [2u32, 3, 5, 7] {
        let n = bi((q as i64 + 1) * (q as i64 * q as i64 + 1));
        for lp in LevelParams::all_for(q).map_err(|e| e.to_string())? {
            let g = eisenstein_quotient(&lp).map_err(|e| format!("{:?}: {}", lp, e))?;
            ensure(g.is_cyclic_of_order(&n), || format!("{:?}: {:?}", lp, g))?;
        }
    }
    Ok(())
}

fn brandt_level(lp: &LevelParams) -> bool {
    BrandtPackage::new(*lp).is_ok()
}

// Checked on the levels carrying a quaternion side (b a nonsquare, or q = 2).
fn gorenstein() -> Check {
    for q in [2u32, 3, 5, 7] {
        let n = (q as u64 + 1) * (q as u64 * q as u64 + 1);
        for lp in LevelParams::all_for(q).map_err(|e| e.to_string())?.iter().filter(|lp| brandt_level(lp)) {
            for ell in prime_divisors(n) {
                gorenstein_search(lp, ell, 3, Exec::Parallel).map_err(|e| format!("{:?} ell={}: {}", lp, ell, e))?;
            }
        }
    }
    Ok(())
}

/// Remaining levels where no degree-one combination works.
fn gorenstein_misses() -> Vec<String> {
    let mut out = Vec::new();
    for q in [2u32, 3, 5, 7] {
        let n = (q as u64 + 1) * (q as u64 * q as u64 + 1);
        for lp in LevelParams::all_for(q).unwrap().iter().filter(|lp| !brandt_level(lp)) {
            for ell in prime_divisors(n) {
                if gorenstein_search(lp, ell, 3, Exec::Parallel).is_err() {
                    out.push(format!("q={} y=T^2+{}T+{} ell={}", q, lp.a(), lp.b(), ell));
                }
            }
        }
    }
    out
}

fn edge_table() -> Check {
    for q in [2u32, 3, 5, 7] {
        let qi = q as i64;
        let rat = |v: i64| BigRational::from_integer(bi(v));
        let (n, b) = eisenstein_generator(q).map_err(|e| e.to_string())?;
        let generator = extend_cochain(q, &b, n).map_err(|e| e.to_string())?;
        for lp in LevelParams::all_for(q).map_err(|e| e.to_string())? {
            let (ex, ey, exy) = level_series(&lp);
            let a1 = edge_spec(&lp, EdgeLabel::A1).map_err(|e| e.to_string())?;
            let a4 = edge_spec(&lp, EdgeLabel::A4).map_err(|e| e.to_string())?;
            let expected = [
                (&ex, &a1, -1),
                (&ex, &a4, -qi),
                (&ey, &a1, 0),
                (&ey, &a4, -1),
                (&exy, &a1, -1),
                (&exy, &a4, -1),
            ];
            for (k, (s, e, want)) in expected.iter().enumerate() {
                let v = evaluate_on_edge(s, e).map_err(|e| e.to_string())?;
                ensure(v == rat(*want), || format!("{:?} entry {}: got {}, want {}", lp, k, v, want))?;
            }
            let nb = bi(n as i64);
            for label in EdgeLabel::all(q) {
                let v = generator_combination(&lp, label).map_err(|e| e.to_string())?;
                ensure(v.is_integer(), || format!("{:?} {}: {} not integral", lp, label.name(), v))?;
                let got = v.to_integer().mod_floor(&nb);
                let want = bi(generator.value(label)).mod_floor(&nb);
                ensure(got == want, || format!("{:?} {}: {} vs {} mod {}", lp, label.name(), got, want, n))?;
            }
        }
    }
    Ok(())
}

fn random_monic(rng: &mut StdRng, f: &Fq, max_deg: usize) -> MonicPoly {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.q())).collect();
    c.push(1);
    MonicPoly::new(f, &c).expect("monic")
}

fn properties() -> Check {
    let err = |e: xyhecke_core::Error| e.to_string();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for q in [2u32, 3, 5, 7] {
        let f = Fq::new(q).map_err(err)?;
        let (n, b) = eisenstein_generator(q).map_err(err)?;
        let nb = bi(n as i64);
        let v: Vec<BigInt> = b.iter().map(|&x| bi(x)).collect();
        for lp in LevelParams::all_for(q).map_err(err)? {
            let hp = HeckePackage::new(lp).map_err(err)?;
            for s in 1..q {
                let g = hp.g(s);
                for (u, r) in g.row_sums().into_iter().enumerate() {
                    ensure(r == bi(-((u as u32 == s) as i64)), || format!("{:?} s={}: row sum", lp, s))?;
                }
                for t in (s + 1)..q {
                    let h = hp.g(t);
                    ensure(g.mul(h).map_err(err)? == h.mul(g).map_err(err)?, || format!("{:?}: G({}) G({}) differ", lp, s, t))?;
                }
                let cp = charpoly(g).map_err(err)?;
                ensure(roots_bounded_by(&cp, &bi(4 * q as i64)), || format!("{:?} s={}: eigenvalue above 2 sqrt q", lp, s))?;
                let w = g.transpose().mul_vec(&v);
                for (x, y) in w.iter().zip(&v) {
                    ensure((x - y * bi(q as i64 + 1)).mod_floor(&nb).is_zero(), || format!("{:?} s={}: not Eisenstein", lp, s))?;
                }
            }
            if let Ok(bp) = BrandtPackage::new(lp) {
                for s in 1..q {
                    let bm = bp.brandt(s);
                    ensure(bm.is_symmetric(), || format!("{:?} s={}: Brandt not symmetric", lp, s))?;
                    ensure(bm.entries().iter().all(|e| *e >= bi(0) && *e <= bi(2)), || format!("{:?}: entry", lp))?;
                    ensure(bm.row_sums().iter().all(|r| *r == bi(q as i64 + 1)), || format!("{:?}: Brandt row sum", lp))?;
                }
            }
            let (x, y) = (lp.x(), lp.y());
            for _ in 0..20 {
                let m = random_monic(&mut rng, &f, 5);
                let term = |d: &MonicPoly| d.quotient_of(&m).map_or(Ok(BigInt::zero()), |co| sigma(&co).map(|s| d.norm() * s));
                let want = sigma(&m).map_err(err)? - term(&x).map_err(err)? - term(&y).map_err(err)? + term(&x.mul(&y)).map_err(err)?;
                ensure(sigma_prime(&m, &x, &y).map_err(err)? == want, || format!("{:?}: sigma' inclusion-exclusion", lp))?;
            }
        }
        for _ in 0..20 {
            let c = rng.gen_range(0..q);
            let p = MonicPoly::new(&f, &[f.neg(c), 1]).map_err(err)?;
            let k = rng.gen_range(1..4u32);
            let pw = |e: u32| (0..e).fold(MonicPoly::one(&f), |acc, _| acc.mul(&p));
            let np = p.norm();
            let lhs = sigma(&pw(k + 1)).map_err(err)?;
            let rhs = (&np + 1) * sigma(&pw(k)).map_err(err)? - &np * sigma(&pw(k - 1)).map_err(err)?;
            ensure(lhs == rhs, || format!("q={}: sigma recursion at k={}", q, k))?;
        }
    }
    Ok(())
}

fn group_examples() -> Check {
    let err = |e: xyhecke_core::Error| e.to_string();
    for q in [2u32, 3, 5, 7, 11, 13] {
        let qi = q as i64;
        let iso = |g: &AbelianGroup, want: &[i64], what: &str| {
            ensure(g.is_isomorphic(&cyc(want)), || format!("q={} {}: {:?}, want {:?}", q, what, g, want))
        };
        let c = cuspidal_group(q, 1, 2).map_err(err)?;
        iso(&c.full, &[qi + 1, qi * qi + 1], "C(xy)")?;
        if q % 2 == 1 {
            iso(&c.sub, &[(qi + 1) / 2, (qi * qi + 1) / 2], "C'(xy)")?;
        }
        let c = cuspidal_group(q, 2, 2).map_err(err)?;
        iso(&c.full, &[qi * qi + 1, (qi + 1) * (qi * qi + 1)], "C(pq), degrees 2, 2")?;
        if q % 2 == 1 {
            iso(&c.sub, &[qi + 1, (qi * qi + 1) / 2, (qi * qi + 1) / 2], "C'(pq), degrees 2, 2")?;
        }
        iso(&shimura_group(q, &[1, 2]).map_err(err)?, &[qi + 1], "S(xy)")?;
        iso(&shimura_group(q, &[3]).map_err(err)?, &[qi * qi + qi + 1], "S(p), degree 3")?;
        if q % 2 == 1 {
            iso(&shimura_group(q, &[2, 2]).map_err(err)?, &[2], "S(pq), degrees 2, 2")?;
        }
        iso(&component_group_fp(q, 3, &ModulusSpec::unit()).map_err(err)?, &[qi * qi + qi + 1], "Phi_p, degree 3")?;
        let one = ModulusSpec::squarefree(&[1]).map_err(err)?;
        let two = ModulusSpec::squarefree(&[2]).map_err(err)?;
        iso(&component_group_fp(q, 2, &one).map_err(err)?, &[qi + 1], "Phi_p, p of degree 2, m of degree 1")?;
        iso(&component_group_fp(q, 1, &two).map_err(err)?, &[(qi + 1) * (qi * qi + 1)], "Phi_x at level xy")?;
        let (g, fixed) = component_group_pq(q, 1, 2).map_err(err)?;
        iso(&g, &[(qi + 1) * (qi * qi + 1)], "Phi_p (1, 2)")?;
        iso(&fixed, &[qi * qi + 1], "Phi_p(F_p) (1, 2)")?;
        let (g, fixed) = component_group_pq(q, 2, 1).map_err(err)?;
        iso(&g, &[qi + 1], "Phi_p (2, 1)")?;
        iso(&fixed, &[qi + 1], "Phi_p(F_p) (2, 1)")?;
        let (g, _) = component_group_pq(q, 2, 2).map_err(err)?;
        iso(&g, &[qi * qi + 1], "Phi_p (2, 2)")?;
        iso(&jl_kernel_conjecture(q, 1, 2).map_err(err)?.kernel, &[qi * qi + 1], "kernel (1, 2)")?;
        iso(&jl_kernel_conjecture(q, 1, 3).map_err(err)?.kernel, &[(qi.pow(3) + 1) / (qi + 1)], "kernel (1, 3)")?;
        iso(&jl_kernel_conjecture(q, 2, 2).map_err(err)?.kernel, &[qi * qi + 1, qi * qi + 1], "kernel (2, 2)")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("trace-form discriminants", table_one, Duration::from_secs(8)),
        ("q = 2 worked pipeline", q2_pipeline, Duration::from_secs(1)),
        ("unimodular pairings and conjugators", table_two, Duration::from_secs(60)),
        ("Hecke characteristic polynomials", charpolys, Duration::from_secs(1)),
        ("component groups at infinity", infinity_groups, Duration::from_secs(5)),
        ("Eisenstein quotient", quotients, Duration::from_secs(60)),
        ("Gorenstein search", gorenstein, Duration::from_secs(120)),
        ("Eisenstein edge values", edge_table, Duration::from_secs(60)),
        ("property suites", properties, Duration::from_secs(120)),
        ("group-formula examples", group_examples, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if result.is_ok() && took > *budget {
            result = Err(format!("took {:?}, budget {:?}", took, budget));
        }
        match result {
            Ok(()) => println!("PASS {:>2} {} ({:.2?})", i + 1, name, took),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.2?}): {}", i + 1, name, took, e);
            }
        }
    }
    let misses = gorenstein_misses();
    if !misses.is_empty() {
        println!("note: b a square, no eta found in the degree-one span: {}", misses.join("; "));
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
