//! One line per acceptance criterion. Runs as a plain binary so the lines are
//! always printed; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use gkdefect::algebra::linear_characters;
use gkdefect::fixtures::quadratic::split_primes;
use gkdefect::fixtures::{admit, load_fixture, quadratic_builtin, AdmittedField, NumberField};
use gkdefect::invariants::{
    compute_invariants, gross_bound, irreducible_over_q, leopoldt_bound, ArtinRep, GrossFlags, InvariantTriple, PlaceData,
};
use gkdefect::padic::{hensel_roots, log_rational, Padic, PrecisionPolicy};
use gkdefect::regulators::{defect_report, gross_matrix, isotypic_matrices, DefectKind, IsotypicMatrices};
use gkdefect::scan::{
    algebraicity_probe, defect_at_slope, exceptional_slope_candidate, min_precision, plant_exceptional,
    slope_scan, solve_exceptional, Coordinates, ProbeOutcome, Sampler, Slope,
};
use gkdefect::theta::{six_exponentials_check, waldschmidt_roy_rank_bound, IndependenceCertificate};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUADRATIC_CORPUS: [i64; 8] = [-1, -2, -3, -5, -7, 2, 3, 5];

type Outcome = Result<String, String>;

/// `(d, d+, f, irreducible, real place, totally real, L value, L bound, G value, G strict, G bound)`.
type Check = fn() -> Outcome;

type BoundRow = (u64, u64, u64, bool, bool, bool, &'static str, i64, &'static str, bool, i64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

/// `x ≡ 0 mod p^k`.
fn vanishes_to(x: &Padic, k: i64) -> bool {
    x.agreement(&Padic::zero(x.prime())).is_none_or(|a| a >= k)
}

fn corpus(name: &str) -> NumberField {
    let path = format!("{}/../../fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    load_fixture(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn quadratic_cases(n: u32) -> Vec<AdmittedField> {
    QUADRATIC_CORPUS
        .iter()
        .flat_map(|&d| split_primes(d, 2).into_iter().map(move |p| quadratic_builtin(d, p, n).unwrap()))
        .collect()
}

fn pieces(f: &AdmittedField, pol: &PrecisionPolicy) -> Vec<IsotypicMatrices> {
    let (g, _) = f.field.relative_group();
    linear_characters(&g)
        .iter()
        .map(|phi| isotypic_matrices(f, phi, pol).unwrap())
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> (BigInt, BigInt) {
    let mut nz = || loop {
        let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
        if x != 0 {
            return BigInt::from(x);
        }
    };
    (nz(), nz())
}

fn log_laws() -> Outcome {
    let t = Instant::now();
    let n = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let one = BigInt::one();
    for p in [5u64, 7, 13] {
        let lp = log_rational(&BigInt::from(p), &one, p, n).unwrap();
        ensure(vanishes_to(&lp, n.into()), || format!("log_{p}({p}) = {lp:?}"))?;
        let lt = log_rational(&-&one, &one, p, n).unwrap();
        ensure(vanishes_to(&lt, n.into()), || format!("log_{p}(-1) = {lt:?}"))?;
    }
    let mut worst = i64::MAX;
    for i in 0..10_000 {
        let p = [5u64, 7, 13][i % 3];
        let (a, b) = random_rational(&mut rng);
        let (c, d) = random_rational(&mut rng);
        let x = log_rational(&a, &b, p, n).unwrap();
        let y = log_rational(&c, &d, p, n).unwrap();
        let xy = log_rational(&(&a * &c), &(&b * &d), p, n).unwrap();
        let tors = log_rational(&-&a, &b, p, n).unwrap();
        let add = xy.agreement(&(&x + &y)).unwrap_or(i64::MAX);
        let neg = tors.agreement(&x).unwrap_or(i64::MAX);
        worst = worst.min(add).min(neg);
        ensure(add >= i64::from(n) - 2, || format!("log({a}/{b} * {c}/{d}) at p = {p}: {add} digits"))?;
        ensure(neg >= i64::from(n) - 2, || format!("log(-{a}/{b}) at p = {p}: {neg} digits"))?;
    }
    let e = within(t, Duration::from_secs(10))?;
    Ok(format!("10^4 pairs over p in {{5, 7, 13}}, worst agreement {worst} of {n} digits, {e:.2?}"))
}

fn product_formula() -> Outcome {
    let n = 50;
    let mut rows = 0;
    for f in quadratic_cases(n) {
        let m = gross_matrix(&f).map_err(|e| e.to_string())?;
        for (i, r) in m.rows().iter().enumerate() {
            let s = r.iter().fold(Padic::zero(f.p()), |acc, x| &acc + x);
            ensure(vanishes_to(&s, i64::from(n) - 2), || format!("{} p = {} row {i}: {s:?}", f.field.id, f.p()))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} rows over 16 (field, prime) pairs vanish to N - 2"))
}

fn certified_gross() -> Outcome {
    let t = Instant::now();
    let pol = PrecisionPolicy::new(50);
    let cases = quadratic_cases(50);
    for f in &cases {
        let r = defect_report(f, DefectKind::Gross, &pol, None).map_err(|e| e.to_string())?;
        ensure(r.certified && r.defect_upper_bound == 0, || format!("{r:?}"))?;
    }
    let e = within(t, Duration::from_secs(30))?;
    Ok(format!("{} (field, prime) pairs certified with defect 0, {e:.2?}", cases.len()))
}

fn certified_leopoldt() -> Outcome {
    let pol = PrecisionPolicy::new(50);
    let mut count = 0;
    for d in [2, 3, 5] {
        for p in split_primes(d, 2) {
            let f = quadratic_builtin(d, p, 50).unwrap();
            let r = defect_report(&f, DefectKind::Leopoldt, &pol, None).map_err(|e| e.to_string())?;
            ensure(r.certified && r.defect_upper_bound == 0 && r.rank == 1, || format!("{r:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} real quadratic (field, prime) pairs certified"))
}

fn rank_one_locus() -> Outcome {
    let pol = PrecisionPolicy::new(50);
    let mut total = 0;
    for d in [-1, -3] {
        let p = split_primes(d, 1)[0];
        let f = quadratic_builtin(d, p, 50).unwrap();
        let iso = pieces(&f, &pol);
        let r = slope_scan(&f.field.id, &iso[0], &iso[0], Sampler::Random { count: 100 }, 2026, &pol)
            .map_err(|e| e.to_string())?;
        let labels: Vec<_> = r.points.iter().filter_map(|x| x.label.as_deref()).collect();
        ensure(labels.contains(&"cyclotomic") && labels.contains(&"anticyclotomic"), || format!("{labels:?}"))?;
        ensure(r.points.len() >= 102, || format!("{} points", r.points.len()))?;
        for x in &r.points {
            ensure(x.rank == 1 && x.saturated && x.defect_upper_bound == 0, || format!("d = {d}: {x:?}"))?;
        }
        total += r.points.len();
    }
    Ok(format!("{total} slopes over Q(i), Q(sqrt(-3)) including 1 and -1, all rank 1"))
}

fn artin_oracle() -> Outcome {
    let field = corpus("zeta8_over_qi");
    let mut out = Vec::new();
    for p in [17, 41] {
        let f = admit(&field, p, 50).unwrap();
        let pol = PrecisionPolicy::new(50);
        let iso = pieces(&f, &pol);
        let s = Coordinates::from_integers(p, 50, &[1, 1]).unwrap();
        let per: usize = iso
            .iter()
            .map(|x| defect_at_slope(&s, x, &iso[0], &pol).map(|r| r.rank))
            .sum::<Result<usize, _>>()
            .map_err(|e| e.to_string())?;
        let direct = defect_report(&f, DefectKind::Gross, &pol, None).map_err(|e| e.to_string())?;
        ensure(per == direct.rank, || format!("p = {p}: sum {per}, direct {}", direct.rank))?;
        out.push(format!("p = {p}: {per} = {}", direct.rank));
    }
    Ok(format!("Q(zeta_8)/Q(i), {}", out.join(", ")))
}

fn invariant_formalism() -> Outcome {
    use common::{add, group, places, rep, SHAPES};
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for i in 0..1000 {
        let shape = rng.gen_range(0..=SHAPES.len());
        let degree = rng.gen_range(1u64..4);
        let small = |rng: &mut ChaCha8Rng| -> Vec<u8> { (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..3)).collect() };
        let (m1, m2) = (small(&mut rng), small(&mut rng));
        let picks: Vec<usize> = (0..rng.gen_range(4..8)).map(|_| rng.gen_range(0..1000)).collect();
        let g = group(shape);
        let pd = places(&g, degree, &picks);
        let (a, b) = (rep(&g, &m1), rep(&g, &m2));
        let sum = ArtinRep::new(g.clone(), a.character.add(&b.character)).unwrap();
        let inv = |r: &ArtinRep, pd: &PlaceData| compute_invariants(r, pd).map_err(|e| format!("instance {i}: {e}"));
        let (ta, tb, ts) = (inv(&a, &pd)?, inv(&b, &pd)?, inv(&sum, &pd)?);
        ensure(ts == add(ta, tb), || format!("instance {i}: additivity {ts:?} vs {ta:?} + {tb:?}"))?;
        for t in [ta, tb, ts] {
            ensure(t.d_plus <= t.d && t.f <= t.d, || format!("instance {i}: {t:?}"))?;
        }
        let h = g.generated(&[picks[3] % g.order()]);
        let (hg, h) = g.subgroup(&h).unwrap();
        let psi = rep(&hg, &m1);
        let ind = ArtinRep::new(g.clone(), psi.character.induce(&g, &h)).unwrap();
        let (up, down) = (inv(&ind, &pd)?, inv(&psi, &pd.restrict(&g, &h))?);
        ensure(up == down, || format!("instance {i}: induction {up:?} vs {down:?}"))?;
        let nsub = g.normal_closure(&[picks[2] % g.order()]);
        let (q, map) = g.quotient(&nsub).unwrap();
        let rho = rep(&q, &m1);
        let inflated = ArtinRep::new(g.clone(), rho.character.pullback(&map)).unwrap();
        let (up, down) = (inv(&inflated, &pd)?, inv(&rho, &pd.push_forward(&map, &q))?);
        ensure(up == down, || format!("instance {i}: inflation {up:?} vs {down:?}"))?;
    }
    Ok("1000 instances, |G| <= 16: additivity, induction, inflation, d+ <= d, f <= d".into())
}

fn bound_formulas() -> Outcome {
    #[rustfmt::skip]
    let table: [BoundRow; 20] = [
        (2, 0, 0, true, false, false, "0", 0, "0", false, 0),
        (1, 1, 1, true, true, true, "1/2", 0, "1/3", false, 0),
        (3, 3, 3, true, true, true, "3/2", 1, "1", false, 1),
        (2, 1, 2, true, false, false, "1/3", 0, "4/5", false, 0),
        (2, 0, 2, true, false, false, "0", 0, "1", false, 1),
        (4, 2, 4, true, false, false, "2/3", 0, "8/5", false, 1),
        (6, 3, 6, true, false, false, "1", 1, "12/5", false, 2),
        (2, 2, 0, true, true, true, "1", 1, "0", false, 0),
        (3, 1, 2, true, true, false, "1/4", 0, "4/5", false, 0),
        (4, 4, 4, true, true, true, "2", 2, "4/3", false, 1),
        (4, 2, 4, false, false, false, "1", 1, "2", false, 2),
        (4, 2, 4, false, true, false, "1", 1, "2", true, 1),
        (4, 4, 4, false, true, true, "2", 2, "4/3", false, 1),
        (6, 3, 3, false, true, false, "3/2", 1, "3/2", true, 1),
        (3, 3, 3, false, true, true, "3/2", 1, "1", false, 1),
        (2, 0, 0, false, false, false, "0", 0, "0", false, 0),
        (2, 1, 0, false, true, false, "1/2", 0, "0", false, 0),
        (6, 0, 6, false, false, false, "0", 0, "3", false, 3),
        (8, 4, 2, false, true, false, "2", 2, "1", true, 0),
        (5, 5, 5, true, true, true, "5/2", 2, "5/3", false, 1),
    ];
    for (i, &(d, d_plus, f, irr, real, tr, lv, li, gv, gs, gi)) in table.iter().enumerate() {
        let t = InvariantTriple { d, d_plus, f };
        let lb = leopoldt_bound(&t, irr);
        let gb = gross_bound(
            &t,
            GrossFlags {
                irreducible_over_q: irr,
                has_real_place: real,
                totally_real: tr,
            },
        );
        let got = (lb.value.to_string(), lb.integer_bound.clone(), gb.value.to_string(), gb.strict, gb.integer_bound.clone());
        let want = (lv.to_string(), BigInt::from(li), gv.to_string(), gs, BigInt::from(gi));
        ensure(got == want, || format!("row {i} {t:?}: got {got:?}, want {want:?}"))?;
    }
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let wr = [(3, q(2, 3), 2), (2, q(1, 1), 1), (4, q(0, 1), 0), (3, q(1, 2), 1), (5, q(3, 2), 3)];
    for (m, theta, want) in wr {
        let got = waldschmidt_roy_rank_bound(m, &theta);
        ensure(got == want, || format!("WR bound m = {m}, theta = {theta}: {got}, want {want}"))?;
    }
    Ok("20 triples and 5 rank bounds, including (0, 0) -> 0 and m = 3, theta = 2/3 -> 2".into())
}

fn exceptional_slopes() -> Outcome {
    let n = 60u32;
    let pol = PrecisionPolicy::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut worst = i64::MAX;
    let mut found = 0;
    for i in 0..100 {
        let p = [5u64, 7, 13][i % 3];
        let lam = Padic::random_unit(p, n, &mut rng);
        let s0 = Coordinates::from_slope(&Slope::Finite(lam.clone()), p, n).unwrap();
        let (l, m, one) = loop {
            if let Ok(x) = plant_exceptional(p, n, &s0, &mut rng) {
                break x;
            }
        };
        let r = solve_exceptional(&l, &m, &one, &pol).map_err(|e| format!("instance {i}: {e}"))?;
        let Slope::Finite(x) = &r.candidate else {
            return Err(format!("instance {i}: infinite candidate"));
        };
        let a = x.agreement(&lam).unwrap_or(i64::MAX);
        worst = worst.min(a);
        if r.viable && a >= i64::from(n) - 5 {
            found += 1;
        }
    }
    ensure(found == 100, || format!("{found}/100 planted slopes recovered, worst {worst} digits"))?;
    let f = admit(&corpus("s3_sextic_over_qi"), 97, 200).unwrap();
    let pol = PrecisionPolicy::new(200);
    let iso = pieces(&f, &pol);
    let mut minors = Vec::new();
    for phi in &iso[1..] {
        let e = exceptional_slope_candidate(phi, &iso[0], &pol).map_err(|e| e.to_string())?;
        ensure(!e.viable, || format!("{}: viable candidate {e:?}", phi.label))?;
        minors.push(format!("{:?}", e.cross_minors));
    }
    Ok(format!(
        "100/100 planted slopes to >= {} digits (worst {worst}); sextic over Q(i) at N = 200: no exceptional slope, cross minors {}",
        n - 5,
        minors.join(" ")
    ))
}

fn content(c: &[BigInt]) -> BigInt {
    c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Primitive, with positive leading coefficient.
fn normalize(c: &[BigInt]) -> Vec<BigInt> {
    let g = content(c);
    let sign = if c.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    c.iter().map(|x| x / &g * &sign).collect()
}

/// Eisenstein at 2, hence irreducible: odd leading coefficient, the rest
/// even, constant term 2 mod 4.
fn eisenstein(rng: &mut ChaCha8Rng, degree: usize, h: i64) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = (0..=degree).map(|_| BigInt::from(2 * rng.gen_range(-h / 2..=h / 2))).collect();
    c[0] = BigInt::from(4 * rng.gen_range(-h / 4 + 1..h / 4) + 2);
    c[degree] = BigInt::from(2 * rng.gen_range(0..h / 2) + 1);
    c
}

fn algebraicity() -> Outcome {
    let n = 200;
    let h = 1_000_000i64;
    let height = BigInt::from(h);
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut done = 0;
    let mut degrees = [0usize; 4];
    while done < 50 {
        let degree = 1 + done % 4;
        let p = [5u64, 7, 11, 13][rng.gen_range(0..4)];
        let poly = eisenstein(&mut rng, degree, h);
        let Ok(roots) = hensel_roots(&poly, p, 2 * n) else { continue };
        let Some(root) = roots.first().cloned() else { continue };
        let lambda = |prec: u32| Ok(root.truncate_rel(prec));
        let got = algebraicity_probe(lambda, n, 4, &height).map_err(|e| e.to_string())?;
        let want = normalize(&poly);
        ensure(got == ProbeOutcome::Relation(want.clone()), || format!("p = {p}, planted {want:?}: {got:?}"))?;
        degrees[degree - 1] += 1;
        done += 1;
    }
    let (hh, dd) = (BigInt::from(10u64).pow(10), 8);
    let m = min_precision(5, dd, &hh);
    let ratio = |prec: u32| {
        let a = log_rational(&6.into(), &1.into(), 5, prec + 2)?;
        let b = log_rational(&11.into(), &1.into(), 5, prec + 2)?;
        Ok(a.checked_div(&b)?)
    };
    let r = algebraicity_probe(ratio, m, dd, &hh).map_err(|e| e.to_string())?;
    ensure(matches!(r, ProbeOutcome::NoRelation { .. }), || format!("log_5(6)/log_5(11): {r:?}"))?;
    Ok(format!(
        "50/50 planted minimal polynomials (degrees {degrees:?}) at N = {n}; no relation for log_5(6)/log_5(11) with (D, H) = (8, 10^10) at N = {m}"
    ))
}

fn determinism() -> Outcome {
    let f = admit(&corpus("zeta8_over_qi"), 17, 50).unwrap();
    let pol = PrecisionPolicy::new(50);
    let iso = pieces(&f, &pol);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let r = slope_scan(&f.field.id, &iso[1], &iso[0], Sampler::Random { count: 40 }, 99, &pol).unwrap();
            let d = defect_report(&f, DefectKind::Gross, &pol, Some(1)).unwrap();
            serde_json::to_vec(&(r, d)).unwrap()
        })
    };
    let a = run(1);
    for threads in [1, 2, 4] {
        ensure(run(threads) == a, || format!("output differs with {threads} threads"))?;
    }
    Ok(format!("seeded scan and defect reports byte-identical across 1, 2, 4 threads ({} bytes)", a.len()))
}

/// Numeric ranks never fall below what the bounds guarantee.
fn theory_consistency() -> Outcome {
    let mut checked = 0;
    let mut fields: Vec<AdmittedField> = ["zeta8_over_qi", "cyclic_cubic_7", "cyclic_cubic_13", "s3_sextic_over_qi"]
        .iter()
        .map(|n| {
            let f = corpus(n);
            let p = f.primes[0].p;
            admit(&f, p, 50).unwrap()
        })
        .collect();
    fields.extend(quadratic_cases(50));
    let pol = PrecisionPolicy::new(50);
    for f in &fields {
        let (g, _) = f.field.relative_group();
        let pd = PlaceData::from_field(&f.field);
        for (i, phi) in linear_characters(&g).iter().enumerate() {
            let t = compute_invariants(&ArtinRep::linear(&g, phi), &pd).map_err(|e| e.to_string())?;
            let irr = irreducible_over_q(&f.field, phi);
            let flags = GrossFlags {
                irreducible_over_q: irr,
                has_real_place: f.field.has_real_place(),
                totally_real: f.field.is_totally_real(),
            };
            for (kind, bound) in [
                (DefectKind::Leopoldt, leopoldt_bound(&t, irr)),
                (DefectKind::Gross, gross_bound(&t, flags)),
            ] {
                let r = defect_report(f, kind, &pol, Some(i)).map_err(|e| e.to_string())?;
                ensure(BigInt::from(r.defect_upper_bound) <= bound.integer_bound, || {
                    format!("{} {kind:?} character {i}: defect <= {} exceeds bound {}", f.field.id, r.defect_upper_bound, bound.integer_bound)
                })?;
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let six = IndependenceCertificate::parse(
        (0..6).map(|i| format!("x{i}")).collect(),
        &[
            vec!["x0".into(), "x1".into()],
            vec!["x2".into(), "x3".into()],
            vec!["x4".into(), "x5".into()],
        ],
    )
    .map_err(|e| e.to_string())?;
    for _ in 0..20 {
        let vals: Vec<Padic> = (0..6)
            .map(|_| {
                let q = rng.gen_range(2i64..10_000);
                log_rational(&q.into(), &1.into(), 7, 52).unwrap()
            })
            .collect();
        let m = six.evaluate(&vals).map_err(|e| e.to_string())?;
        let r = six_exponentials_check(&m, &six, &PrecisionPolicy::new(50)).map_err(|e| e.to_string())?;
        ensure(!r.alarm, || format!("{vals:?}: {r:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} numeric ranks at or above their lower bounds"))
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("logarithm laws", log_laws),
        ("product formula", product_formula),
        ("certified Gross defect, quadratic corpus", certified_gross),
        ("certified Leopoldt defect, real quadratic corpus", certified_leopoldt),
        ("rank one on the trivial-character locus", rank_one_locus),
        ("Artin formalism oracle", artin_oracle),
        ("invariant formalism", invariant_formalism),
        ("bound formulas", bound_formulas),
        ("exceptional slope solver", exceptional_slopes),
        ("algebraicity probe", algebraicity),
        ("determinism", determinism),
        ("theory consistency", theory_consistency),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match res {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
