//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! elapsed time against its budget. All checks are exact; the only
//! tolerances are the time budgets below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use folia::certificates::{
    f2_point, fit_qd, orbit_sample, random_map, sampler, stored_certificate, verify_certificate, verify_symbolic, FitOutcome,
};
use folia::corpus;
use folia::degeneration::{
    certify_f1_degeneration, certify_f2_degeneration, certify_h12_degeneration, limit_family, scaling_family, Absence,
    DegenerationCertificate, Outcome, Target,
};
use folia::form::{parse_curve, parse_form};
use folia::inflection::{decompose_divisor, inflection_polynomial, squarefree_mod2};
use folia::intersect::intersection_at_origin;
use folia::local::{bb_index, direction_order, tangency_order, u1_membership, Germ};
use folia::symmetry::{iso_family_f0, iso_family_f1, iso_family_f2, symmetry_space, verify_isotropy_family};
use folia::{singular_points, Chart, Foliation, ProjectiveMap, ProjectivePoint};
use folia_algebra::gcd::{gcd, resultant, squarefree_part};
use folia_algebra::poly::proportional;
use folia_algebra::ring::{q, qf};
use folia_algebra::{Monomial, QPoly, Vars, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome_ = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn poly(s: &str) -> QPoly {
    parse_curve(s).unwrap()
}

fn pt(c: [i64; 3]) -> ProjectivePoint {
    ProjectivePoint::from_i64(c).unwrap()
}

/// Homogeneous polynomial of degree `d` in `x, y, z` with entries in [-3, 3].
fn random_homogeneous(rng: &mut ChaCha8Rng, d: u32) -> QPoly {
    let mut p = QPoly::q_zero(&Vars::xyz());
    for i in 0..=d {
        for j in 0..=d - i {
            p.add_term(Monomial::new(vec![i, j, d - i - j]), q(rng.gen_range(-3..=3)));
        }
    }
    p
}

fn random_foliation(rng: &mut ChaCha8Rng, d: u32) -> Foliation {
    loop {
        let [a, b, c] = [0; 3].map(|_| random_homogeneous(rng, d));
        if let Ok(f) = Foliation::from_abc(&a, &b, &c) {
            if f.degree() == d {
                return f;
            }
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=7).into())
}

fn c1() -> Outcome_ {
    for d in 2..=6u32 {
        let dec = decompose_divisor(&corpus::f1(d)).map_err(|e| e.to_string())?;
        let expect = poly(&format!("x^{}*y^{}", d + 1, 2 * d - 1));
        ensure!(proportional(&dec.total.product(), &expect), "I(F1^{d}) = {}", dec.total);
        ensure!(proportional(&dec.invariant.product(), &expect) && dec.transverse.degree() == 0, "F1^{d} split");
        let dec = decompose_divisor(&corpus::f2(d)).map_err(|e| e.to_string())?;
        ensure!(proportional(&dec.total.product(), &poly(&format!("x^{}*y^{}", 2 * d + 1, d - 1))), "I(F2^{d}) = {}", dec.total);
        ensure!(proportional(&dec.invariant.product(), &poly(&format!("x^{}", 2 * d + 1))), "F2^{d} invariant part");
        ensure!(proportional(&dec.transverse.product(), &poly(&format!("y^{}", d - 1))), "F2^{d} transverse part");
    }
    let mut rng = sampler(101);
    for i in 0..100 {
        let d = 2 + (i % 2);
        let f = random_foliation(&mut rng, d);
        let dec = decompose_divisor(&f).map_err(|e| e.to_string())?;
        ensure!(dec.total.degree() == 3 * d, "deg I_F = {} for {f}", dec.total.degree());
    }
    Ok("models for d = 2..6, 100 random foliations of degree 2 and 3".into())
}

fn c2() -> Outcome_ {
    for d in 2..=8u32 {
        let p = inflection_polynomial(&corpus::jouanolou(d));
        let (a, e) = (2 * d + 1, d - 1);
        let expect = poly(&format!("x^{a}*z^{e} + y^{a}*x^{e} + z^{a}*y^{e} - 3*x^{d}*y^{d}*z^{d}"));
        ensure!(proportional(&p, &expect), "d = {d}: {p}");
        ensure!(squarefree_part(&p).1, "d = {d}: not squarefree over Q");
        ensure!(squarefree_mod2(&p), "d = {d}: F2 certificate does not apply");
    }
    Ok("d = 2..8, squarefree over Q and by reduction mod 2".into())
}

fn c3() -> Outcome_ {
    for d in 2..=5u32 {
        let f = corpus::jouanolou(d);
        let s = singular_points(&f).map_err(|e| e.to_string())?;
        ensure!(s.complete, "d = {d}: singular set incomplete");
        let expect = Q::new(((d + 2) * (d + 2)).into(), (d * d + d + 1).into());
        let mut n = 0;
        for p in &s.points {
            let bb = bb_index(&f, &p.point).map_err(|e| e.to_string())?;
            ensure!(p.point.ring().as_rational(&bb) == Some(expect.clone()), "d = {d}: BB at {}", p.point);
            n += p.point.count();
        }
        ensure!(n as u32 == d * d + d + 1, "d = {d}: {n} points");
    }
    let mut rng = sampler(303);
    let mut count = 0;
    while count < 20 {
        let lam = random_rational(&mut rng);
        if lam.is_zero() {
            continue;
        }
        let d = 2 + count % 4;
        let s = pt([0, 0, 1]);
        let bb = bb_index(&corpus::f0(d, lam.clone()), &s).map_err(|e| e.to_string())?;
        let expect = q(2) + &lam + Q::one() / &lam;
        ensure!(s.ring().as_rational(&bb) == Some(expect), "F0({lam}) at s1");
        count += 1;
    }
    Ok("Jouanolou d = 2..5 at all points, F0(lambda) for 20 lambda".into())
}

fn c4() -> Outcome_ {
    for d in 2..=5u32 {
        let dim = |f: &Foliation| symmetry_space(f).dimension();
        let mut cases = vec![("F1", corpus::f1(d), 2), ("F2", corpus::f2(d), 2)];
        for lam in [q(2), qf(-1, 2), q(-3)] {
            cases.push(("F0", corpus::f0(d, lam), 1));
        }
        cases.extend([("H1", corpus::h1(d), 1), ("H2", corpus::h2(d), 1), ("H12", corpus::h12(d), 1), ("FJ", corpus::jouanolou(d), 0)]);
        for (name, f, expect) in cases {
            ensure!(dim(&f) == expect, "{name}^{d}: dimension {}", dim(&f));
        }
    }
    for d in 2..=4u32 {
        ensure!(verify_isotropy_family(&corpus::f1(d), &iso_family_f1(d)), "F1^{d} family");
        ensure!(verify_isotropy_family(&corpus::f2(d), &iso_family_f2(d)), "F2^{d} family");
        ensure!(verify_isotropy_family(&corpus::f0(d, q(3)), &iso_family_f0(d)), "F0^{d} family");
    }
    Ok("dimensions for d = 2..5, symbolic families for d = 2..4".into())
}

fn c5() -> Outcome_ {
    let mut rng = sampler(505);
    let mut members = 0;
    for d in 2..=3u32 {
        let mut gammas = vec![Q::zero()];
        while gammas.len() < 30 {
            gammas.push(random_rational(&mut rng));
        }
        for g in gammas {
            let r = u1_membership(&corpus::g(d, g.clone())).map_err(|e| e.to_string())?;
            ensure!(r.complete, "G^{d}({g}): incomplete singular set");
            // gamma (gamma^(d+1) + (d+1)^(d+1) / d^d) != 0
            let c = Q::from_integer(BigInt::from(d + 1).pow(d + 1)) / Q::from_integer(BigInt::from(d).pow(d));
            let predicted = !(&g * (num_traits::pow(g.clone(), d as usize + 1) + c)).is_zero();
            ensure!(r.member == predicted, "G^{d}({g}): member = {}, predicted {predicted}", r.member);
            members += usize::from(r.member);
        }
    }
    Ok(format!("60 cases, {members} in U1"))
}

fn replays(c: &DegenerationCertificate) -> Result<(), String> {
    ensure!(c.replay().map_err(|e| e.to_string())?, "replay failed for {}", c.source);
    for n in &c.chained {
        replays(n)?;
    }
    Ok(())
}

fn certified(o: Outcome, what: &str) -> Result<DegenerationCertificate, String> {
    match o {
        Outcome::Certified(c) => {
            replays(&c)?;
            Ok(*c)
        }
        Outcome::Absent(a) => Err(format!("{what}: {}", a.reason())),
    }
}

fn obstruction(o: Outcome, needle: &str, what: &str) -> Result<(), String> {
    match o {
        Outcome::Absent(Absence::Obstruction(r)) if r.contains(needle) => Ok(()),
        other => Err(format!("{what}: {other:?}")),
    }
}

fn c6() -> Outcome_ {
    let s = |e: folia::Error| e.to_string();
    let mut n = 0;
    for d in 2..=4u32 {
        certified(certify_f1_degeneration(&corpus::h1(d)).map_err(s)?, "H1 -> F1")?;
        for g in [q(1), q(-2), qf(1, 2)] {
            certified(certify_f1_degeneration(&corpus::g(d, g)).map_err(s)?, "G -> F1")?;
        }
        obstruction(certify_f1_degeneration(&corpus::jouanolou(d)).map_err(s)?, "Baum-Bott", "FJ -> F1")?;
        certified(certify_f2_degeneration(&corpus::jouanolou(d)).map_err(s)?, "FJ -> F2")?;
        certified(certify_f2_degeneration(&corpus::h2(d)).map_err(s)?, "H2 -> F2")?;
        let c = certified(certify_h12_degeneration(&corpus::h12(d)).map_err(s)?, "H12 -> H12")?;
        let chain: Vec<Target> = c.chained.iter().map(|c| c.target.clone()).collect();
        ensure!(chain == [Target::F1, Target::F2], "H12 chain {chain:?}");
        n += 8;
    }
    for d in 3..=5u32 {
        let f = corpus::f0(d, qf(-1, d as i64 - 1));
        obstruction(certify_f2_degeneration(&f).map_err(s)?, "deg I_tr", "F0(-1/(d-1)) -> F2")?;
    }
    Ok(format!("{n} certificates replayed, 6 obstructions"))
}

fn c7() -> Outcome_ {
    for d in 2..=5u32 {
        let f = corpus::entry("sans-singularite", d, None).unwrap().foliation;
        let lim = limit_family(&f, &scaling_family([0, d - 1, d], [q(3), q(1), q(1)])).map_err(|e| e.to_string())?;
        ensure!(lim.limit == parse_form(&format!("x*dy - y*dx + y^{d}*dy"), &[]).unwrap(), "sans-singularite d = {d}: {}", lim.limit);
        let f = corpus::entry("sans-inflex", d, None).unwrap().foliation;
        let lim = limit_family(&f, &scaling_family([0, d, d + 1], [q(2), q(1), q(1)])).map_err(|e| e.to_string())?;
        ensure!(lim.limit == parse_form(&format!("dx + y^{d}*dy"), &[]).unwrap(), "sans-inflex d = {d}: {}", lim.limit);
    }
    Ok("d = 2..5".into())
}

fn c8() -> Outcome_ {
    let lambdas = [q(2), qf(3, 2), q(-3), qf(-2, 5), qf(7, 3)];
    let mut values = Vec::new();
    for (d, at_f2) in [(3, -50625), (4, -10368), (5, -1422750)] {
        let p = stored_certificate(d).map_err(|e| e.to_string())?;
        for (i, lam) in lambdas.iter().enumerate() {
            let r = verify_certificate(&p, lam, 100, 800 + i as u64).map_err(|e| e.to_string())?;
            ensure!(r.zeros == 100, "P{d}, lambda = {lam}: {:?}", r.failure);
        }
        let v = p.eval(&f2_point(d)).map_err(|e| e.to_string())?;
        ensure!(v == q(at_f2), "P{d}(F2) = {v}");
        values.push(format!("P{d}(F2) = {v}"));
    }
    let names = ["lambda", "m00", "m01", "m02", "m10", "m11", "m12", "m20", "m21", "m22"];
    let v = Vars::new(&names);
    let e = |i| QPoly::q_var(&v, i);
    let m = ProjectiveMap::symbolic(&v, [[e(1), e(2), e(3)], [e(4), e(5), e(6)], [e(7), e(8), e(9)]]);
    let p3 = stored_certificate(3).map_err(|e| e.to_string())?;
    ensure!(verify_symbolic(&p3, &e(0), &m).map_err(|e| e.to_string())?, "symbolic P3");
    Ok(format!("{}, symbolic P3 identically zero", values.join(", ")))
}

fn c9() -> Outcome_ {
    let r = match fit_qd(6, 240, 200, 1).map_err(|e| e.to_string())? {
        FitOutcome::Fitted(r) => r,
        FitOutcome::Infeasible { reason, .. } => return Err(format!("infeasible: {reason}")),
    };
    ensure!(r.held_out >= 200, "only {} held-out samples", r.held_out);
    ensure!(r.certificate.poly.total_degree() == Some(3), "degree");
    ensure!(!r.f2_value.is_zero(), "Q6(F2) = 0");
    let b21 = r.coefficients.iter().find(|(l, _)| l == "b_2,1").map(|(_, c)| c.clone());
    ensure!(b21.as_ref().is_some_and(|c| !c.is_zero()), "b_2,1 = 0");
    // a fresh stream, independent of the fit
    let mut rng = sampler(909);
    for _ in 0..20 {
        let lam = Q::new(rng.gen_range(1i64..9).into(), rng.gen_range(1i64..9).into());
        let v = r.certificate.eval(&orbit_sample(6, &lam, random_map(&mut rng)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(v.is_zero(), "nonzero on a fresh sample");
    }
    Ok(format!("{} unknowns, nullity {}, {} training and {} held-out samples", r.unknowns, r.nullity, r.training_samples, r.held_out))
}

fn c10() -> Outcome_ {
    let mut rng = sampler(1010);
    let small = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(0..=3);
        random_homogeneous(rng, d)
    };
    for _ in 0..100 {
        let (f, g, h) = (small(&mut rng), small(&mut rng), small(&mut rng));
        ensure!(&(&f + &g) * &h == &(&f * &h) + &(&g * &h), "distributivity");
        ensure!(&(&f * &g) * &h == &f * &(&g * &h), "associativity");
        ensure!(&f * &g == &g * &f, "commutativity");
    }
    let x = QPoly::q_var(&Vars::xyz(), 0);
    for i in 0..50 {
        let (a, b, c) = (small(&mut rng), small(&mut rng), &small(&mut rng) + &x);
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let (f, g) = (&a * &c, &b * &c);
        let h = gcd(&f, &g);
        ensure!(h.div_exact(&c).is_some(), "case {i}: c = {c} does not divide gcd({f}, {g}) = {h}");
        ensure!(gcd(&f.div_exact(&h).unwrap(), &g.div_exact(&h).unwrap()).is_constant(), "case {i}: cofactors");
        if c.involves(0) {
            ensure!(resultant(&f, &g, 0).is_zero(), "case {i}: resultant of polynomials with a common factor");
        }
    }
    // tangency by valuation, by the Fulton recursion and projectively
    let uv = Vars::new(&["u", "v"]);
    let (u, v) = (QPoly::q_var(&uv, 0), QPoly::q_var(&uv, 1));
    let mut cases = 0;
    while cases < 100 {
        let d = rng.gen_range(2u32..4);
        let (mut a, mut b) = (QPoly::q_zero(&Vars::xyz()), QPoly::q_zero(&Vars::xyz()));
        for deg in 1..=d {
            for i in 0..=deg {
                a.add_term(Monomial::new(vec![deg - i, i, 0]), q(rng.gen_range(-3..=3)));
                b.add_term(Monomial::new(vec![deg - i, i, 0]), q(rng.gen_range(-3..=3)));
            }
        }
        let Ok(f) = Foliation::from_affine(Chart::Z, &a, &b) else { continue };
        let (p, r) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
        if f.degree() != d || (p, r) == (0, 0) {
            continue;
        }
        let Some((x1, x2)) = Germ::new(&f, &pt([0, 0, 1])).rational_field() else { continue };
        let by_valuation = direction_order(&x1, &x2, &q(p), &q(r));
        let l = &u.scale(&q(p)) + &v.scale(&q(r));
        let xl = &x1.scale(&q(p)) + &x2.scale(&q(r));
        ensure!(by_valuation == intersection_at_origin(&l, &xl), "Fulton disagrees on {f}");
        let line = poly(&format!("{p}*x + {r}*y"));
        ensure!(tangency_order(&f, &line, &pt([0, 0, 1])).map_err(|e| e.to_string())? == by_valuation, "tangency on {f}");
        cases += 1;
    }
    // Euler relation and primitivity after pullback
    for i in 0..40 {
        let d = 2 + i % 3;
        let f = random_foliation(&mut rng, d);
        let g = f.pullback(&ProjectiveMap::from_i64(random_map(&mut rng))).map_err(|e| e.to_string())?;
        let [a, b, c] = g.components();
        let xyz = Vars::xyz();
        let euler = &(&(&QPoly::q_var(&xyz, 0) * a) + &(&QPoly::q_var(&xyz, 1) * b)) + &(&QPoly::q_var(&xyz, 2) * c);
        ensure!(euler.is_zero(), "Euler relation after pullback");
        ensure!(gcd(&gcd(a, b), c).is_constant(), "primitivity after pullback");
        ensure!(g.degree() == d, "degree after pullback");
    }
    // Milnor numbers add up on the corpus
    for (name, _) in corpus::NAMES {
        if name == "pencil" {
            continue;
        }
        for d in 2..=3u32 {
            let f = corpus::entry(name, d, None).unwrap().foliation;
            let s = singular_points(&f).map_err(|e| e.to_string())?;
            ensure!(s.complete && s.milnor_sum() == (d * d + d + 1) as u64, "{name}^{d}: Milnor sum {}", s.milnor_sum());
        }
    }
    // byte-identical reports
    for args in [
        &["analyze", "--corpus", "g", "--d", "3", "--param", "gamma=-2"][..],
        &["certify", "--poly", "p5", "--lambda", "-4/3", "--samples", "30", "--seed", "17", "--format", "json"],
        &["degenerate", "--corpus", "jouanolou", "--d", "3", "--target", "f2", "--format", "json"],
    ] {
        let argv: Vec<String> = std::iter::once("folia").chain(args.iter().copied()).map(String::from).collect();
        let (a, b) = (folia_cli::run(&argv), folia_cli::run(&argv));
        ensure!(a.code == b.code && a.stdout == b.stdout && !a.stdout.is_empty(), "report for {args:?} differs between runs");
    }
    Ok("ring axioms, gcd/resultant, 100 tangency cases, pullback invariants, Milnor sums, determinism".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome_,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "inflection divisors", budget: secs(10), run: c1 },
        Criterion { id: 2, name: "Jouanolou inflection curve", budget: secs(30), run: c2 },
        Criterion { id: 3, name: "Baum-Bott indices", budget: secs(30), run: c3 },
        Criterion { id: 4, name: "isotropy dimensions", budget: secs(60), run: c4 },
        Criterion { id: 5, name: "U1 criterion", budget: secs(60), run: c5 },
        Criterion { id: 6, name: "degeneration certificates", budget: secs(60), run: c6 },
        Criterion { id: 7, name: "bespoke limits", budget: secs(10), run: c7 },
        Criterion { id: 8, name: "certificates P3, P4, P5", budget: secs(120), run: c8 },
        Criterion { id: 9, name: "Q6 fit", budget: secs(600), run: c9 },
        Criterion { id: 10, name: "property suites", budget: secs(120), run: c10 },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let result = match result {
            Ok(msg) if t > c.budget => Err(format!("{msg}; over the time budget")),
            other => other,
        };
        let (tag, msg) = match result {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag} {}: {msg} [{:.1} s of {} s]", c.id, c.name, t.as_secs_f64(), c.budget.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
