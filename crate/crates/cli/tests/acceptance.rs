//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use modgeo::binwords::Composition;
use modgeo::counting::{self, CumulativeOptions, Family};
use modgeo::enumerate::{self, ClassFilter};
use modgeo::geometry::{self, Classification, ProjectiveMatrix};
use modgeo::oracle;
use modgeo::report;
use modgeo::{BinaryWord, Exec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e as usize
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c1_burnside() -> Outcome {
    for tau in 1..=16u32 {
        let burnside: BigUint = (1..=tau).map(|j| pow2(gcd(j, tau))).sum::<BigUint>() / tau;
        let enumerated = enumerate::count_classes(tau, ClassFilter::all(), Exec::Sequential)
            .map_err(|e| e.to_string())?;
        ensure(BigUint::from(enumerated) == burnside, || {
            format!("tau = {tau}: enumerated {enumerated}, Burnside {burnside}")
        })?;
        ensure(
            counting::necklace_count(tau).map_err(|e| e.to_string())? == burnside,
            || format!("tau = {tau}: necklace_count disagrees"),
        )?;
    }
    Ok("tau <= 16, single-threaded".into())
}

fn c2_reciprocal() -> Outcome {
    let mut running = 0u64;
    for t in 1..=16u32 {
        let n = enumerate::count_reciprocal_classes(t, None, false, Exec::Parallel)
            .map_err(|e| e.to_string())?;
        running += n;
        ensure(n == 1 << (t - 1), || format!("t = {t}: {n} classes"))?;
        ensure(running == (1 << t) - 1, || {
            format!("t = {t}: cumulative {running}")
        })?;
        let formula = counting::cumulative(Family::Reciprocal, t, CumulativeOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(formula == BigUint::from(running), || {
            format!("t = {t}: formula {formula}")
        })?;
    }
    let mut exceptions = 0usize;
    for t in 1..=12u32 {
        let reps =
            enumerate::reciprocal_classes(t, None, Exec::Parallel).map_err(|e| e.to_string())?;
        let mut covered = BTreeSet::new();
        for h in &reps {
            let forms: BTreeSet<BinaryWord> = (0..2 * t as i64)
                .map(|k| h.word().rotate(k))
                .filter(BinaryWord::is_half_turn)
                .collect();
            exceptions += (forms.len() != 2) as usize;
            covered.extend(forms);
        }
        exceptions += (covered.len() != 1 << t) as usize;
    }
    ensure(exceptions == 0, || {
        format!("{exceptions} pairing exceptions")
    })?;
    Ok("t <= 16 counts, pairing t <= 12 with 0 exceptions".into())
}

fn c3_primitive() -> Outcome {
    let rec = counting::primitive_class_counts(16).map_err(|e| e.to_string())?;
    for tau in 1..=16u32 {
        let enumerated = enumerate::count_classes(tau, ClassFilter::primitive(), Exec::Parallel)
            .map_err(|e| e.to_string())?;
        let mobius = oracle::mobius_primitive_count(tau as u64);
        let r = &rec[tau as usize - 1];
        ensure(*r == mobius && BigUint::from(enumerated) == mobius, || {
            format!("tau = {tau}: recursion {r}, Mobius {mobius}, enumerated {enumerated}")
        })?;
    }
    let rrec = counting::reciprocal_primitive_counts(16).map_err(|e| e.to_string())?;
    for t in 1..=16u32 {
        let mut mobius: i64 = 0;
        for d in (1..=t).filter(|d| t % d == 0) {
            mobius += oracle::mobius((t / d) as u64) * (1i64 << (d - 1));
        }
        let enumerated = enumerate::count_reciprocal_classes(t, None, true, Exec::Parallel)
            .map_err(|e| e.to_string())?;
        let r = rrec[t as usize - 1].to_i64().expect("small");
        ensure(r == mobius && enumerated as i64 == mobius, || {
            format!("t = {t}: recursion {r}, Mobius {mobius}, enumerated {enumerated}")
        })?;
    }
    Ok("tau <= 16 and t <= 16".into())
}

fn c4_phi() -> Outcome {
    let mut witnesses = 0usize;
    for t in 1..=12u32 {
        for m in 1..=t {
            let reps = enumerate::reciprocal_classes(t, Some(m), Exec::Parallel)
                .map_err(|e| e.to_string())?;
            let comps = oracle::compositions(t, m);
            let rec = counting::bounded_compositions(t, m).map_err(|e| e.to_string())?;
            ensure(
                reps.len() == comps.len() && BigUint::from(comps.len()) == rec,
                || {
                    format!(
                        "t = {t}, m = {m}: {} classes, {} compositions, recursion {rec}",
                        reps.len(),
                        comps.len()
                    )
                },
            )?;
            let mut images = BTreeSet::new();
            for h in &reps {
                let c = enumerate::phi(h).map_err(|e| e.to_string())?;
                let back = enumerate::phi_inverse(&c).map_err(|e| e.to_string())?;
                ensure(back == *h && c.max_part() <= m, || {
                    format!("round trip fails at {h}")
                })?;
                images.insert(c.parts().to_vec());
                witnesses += 1;
            }
            let expected: BTreeSet<Vec<u32>> = comps.into_iter().collect();
            ensure(images == expected, || {
                format!("t = {t}, m = {m}: image is not C_t,m")
            })?;
            for parts in &expected {
                let c = Composition::new(parts.clone()).map_err(|e| e.to_string())?;
                let h = enumerate::phi_inverse(&c).map_err(|e| e.to_string())?;
                ensure(enumerate::phi(&h).map_err(|e| e.to_string())? == c, || {
                    format!("round trip fails at {c}")
                })?;
            }
        }
    }
    for m in 2..=10u32 {
        for t in 1..=40u32 {
            let closed = counting::closed_form_compositions(t, m).map_err(|e| e.to_string())?;
            let rec = counting::bounded_compositions(t, m).map_err(|e| e.to_string())?;
            ensure(closed == rec, || {
                format!("t = {t}, m = {m}: closed {closed}, recursion {rec}")
            })?;
        }
    }
    Ok(format!(
        "{witnesses} round-trip witnesses; closed form exact for t <= 40, 2 <= m <= 10"
    ))
}

fn c5_alpha() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 2..=40u32 {
        let a = counting::alpha(m, counting::DEFAULT_TOL).map_err(|e| e.to_string())?;
        let lo = 2.0 * (1.0 - 2f64.powi(-(m as i32)));
        ensure(a.residual.abs() <= 1e-12, || {
            format!("m = {m}: residual {:e}", a.residual)
        })?;
        ensure(lo <= a.alpha && a.alpha < 2.0, || {
            format!("m = {m}: alpha {} outside bracket", a.alpha)
        })?;
        worst = worst.max(a.residual.abs());
    }
    let a2 = counting::alpha(2, counting::DEFAULT_TOL)
        .map_err(|e| e.to_string())?
        .alpha;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    ensure((a2 - golden).abs() <= 1e-10, || format!("alpha_2 = {a2}"))?;
    Ok(format!(
        "max |residual| {worst:.3e}, |alpha_2 - golden| {:.1e}",
        (a2 - golden).abs()
    ))
}

fn c6_lowlying() -> Outcome {
    let mut min_margin = f64::INFINITY;
    for tau in 1..=16u32 {
        for m in [2u32, 3, 4] {
            let count = enumerate::count_classes(tau, ClassFilter::low_lying(m), Exec::Parallel)
                .map_err(|e| e.to_string())?;
            let bound = 2f64.powf(tau as f64 - tau as f64 / m as f64 - 1.0) / tau as f64;
            ensure(count as f64 >= bound, || {
                format!("tau = {tau}, m = {m}: {count} < {bound}")
            })?;
            let need = (2f64.powi(tau as i32 - (tau / m) as i32 - 1) / tau as f64).ceil() as usize;
            let rb = enumerate::red_black_classes(tau, m).map_err(|e| e.to_string())?;
            ensure(rb.len() >= need, || {
                format!("tau = {tau}, m = {m}: red/black {} < {need}", rb.len())
            })?;
            ensure(rb.iter().all(|w| w.is_low_lying(m as usize)), || {
                format!("tau = {tau}, m = {m}: red/black word not low-lying")
            })?;
            min_margin = min_margin.min(count as f64 / bound);
        }
    }
    Ok(format!(
        "tau <= 16, m in {{2,3,4}}; min count/bound {min_margin:.3}"
    ))
}

/// `x <= n 2^(n/2) / q`, compared as `(q x)^2 <= n^2 2^n`.
fn within(x: &BigUint, q: u32, n: u32) -> bool {
    (x * q).pow(2) <= BigUint::from(n).pow(2) * pow2(n)
}

fn c7_nonprimitive() -> Outcome {
    let p = counting::primitive_class_counts(40).map_err(|e| e.to_string())?;
    let rp = counting::reciprocal_primitive_counts(40).map_err(|e| e.to_string())?;
    for n in 1..=40u32 {
        let np = counting::necklace_count(n).map_err(|e| e.to_string())? - &p[n as usize - 1];
        ensure(within(&np, 2, n), || format!("tau = {n}: |W^np| = {np}"))?;
        let rnp = pow2(n - 1) - &rp[n as usize - 1];
        ensure(within(&rnp, 4, n), || format!("t = {n}: |R^np| = {rnp}"))?;
    }
    Ok("tau, t <= 40".into())
}

fn c8_trend() -> Outcome {
    let mut parts = Vec::new();
    for (item, m, tol) in [
        (1u8, None, 0.05),
        (2, Some(2u32), 0.05),
        (2, Some(3), 0.05),
        (3, None, 0.15),
    ] {
        let rows = report::growth(item, 26, m, 16, Exec::Parallel).map_err(|e| e.to_string())?;
        let ratios: Vec<f64> = [10usize, 18, 26]
            .iter()
            .map(|&t| rows[t - 1].ratio)
            .collect();
        ensure(ratios.iter().all(|r| r.is_finite() && *r > 0.0), || {
            format!("item {item}: {ratios:?}")
        })?;
        let dev: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
        ensure(dev[0] > dev[1] && dev[1] > dev[2], || {
            format!("item {item}: deviations {dev:?} not decreasing")
        })?;
        ensure(dev[2] <= tol, || {
            format!("item {item}: |ratio - 1| = {} at t = 26", dev[2])
        })?;
        let label = m.map_or(format!("item {item}"), |m| format!("item {item} (m={m})"));
        parts.push(format!(
            "{label} {:.4}/{:.4}/{:.4}",
            ratios[0], ratios[1], ratios[2]
        ));
    }
    Ok(parts.join(", "))
}

fn c9_geometry() -> Outcome {
    let a = ProjectiveMatrix::generator_a();
    let b = ProjectiveMatrix::generator_b();
    for m in [&a * &b, &a * &b.inverse()] {
        ensure(geometry::classify(&m) == Classification::Parabolic, || {
            format!("{m} not parabolic")
        })?;
    }
    let mut checked = 0;
    for tau in 2..=12u32 {
        for w in enumerate::classes(tau, ClassFilter::primitive(), Exec::Parallel)
            .map_err(|e| e.to_string())?
        {
            let class = geometry::classify(&geometry::encode(&w));
            ensure(class == Classification::Hyperbolic, || {
                format!("{w} is {class}")
            })?;
            checked += 1;
        }
    }
    let plus_minus: BinaryWord = "+-".parse().unwrap();
    let len =
        geometry::geodesic_length(&geometry::encode(&plus_minus)).map_err(|e| e.to_string())?;
    let expected = 2.0 * 1.5f64.acosh();
    ensure((len - expected).abs() <= 1e-10, || format!("length {len}"))?;
    let w: BinaryWord = "++-".parse().unwrap();
    let lift = geometry::encode(&w).conjugate_by(&a);
    let apex = geometry::apex_height(&lift).map_err(|e| e.to_string())?;
    ensure((apex - 3f64.sqrt()).abs() <= 1e-10, || {
        format!("apex {apex} for {lift}")
    })?;
    Ok(format!(
        "{checked} primitive classes hyperbolic; length {len:.10}; apex {apex:.10}"
    ))
}

fn c10_audit() -> Outcome {
    let report = geometry::depth_audit(10, Exec::Parallel).map_err(|e| e.to_string())?;
    let s = &report.summary;
    ensure(s.widened_hits == s.classes && s.classes > 0, || {
        format!("widened bracket {} of {}", s.widened_hits, s.classes)
    })?;
    Ok(format!(
        "{} classes, widened 100%; run bracket {}, shifted bracket {}, neither {}, boundary {}",
        s.classes, s.run_hits, s.shifted_hits, s.neither, s.boundary_hits
    ))
}

fn c11_table1() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = modgeo_cli::run_with(
        ["modgeo", "table1", "--t", "6", "--m", "3"],
        &mut out,
        &mut err,
    );
    ensure(code == 0, || {
        format!("exit {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or(format!("no column {name}"))
    };
    let (fam, rel, formula, enumerated, agree) = (
        col("family")?,
        col("relation")?,
        col("formula")?,
        col("enumerated")?,
        col("agree")?,
    );
    let mut families = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        families.push(rec[fam].to_string());
        ensure(!rec[enumerated].is_empty() && &rec[agree] == "true", || {
            format!("row {:?}", rec)
        })?;
        if &rec[rel] == "=" {
            ensure(rec[formula] == rec[enumerated], || format!("row {:?}", rec))?;
        } else {
            let f: f64 = rec[formula].parse().map_err(|_| format!("row {:?}", rec))?;
            let e: f64 = rec[enumerated]
                .parse()
                .map_err(|_| format!("row {:?}", rec))?;
            ensure(e >= f, || format!("row {:?}", rec))?;
        }
    }
    ensure(
        families
            == [
                "geodesics",
                "reciprocal",
                "geodesics-in-S_m",
                "reciprocal-in-S_m",
            ],
        || format!("families {families:?}"),
    )?;
    Ok("4 rows, every dual-sourced cell agrees".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "1 Burnside equality",
            c1_burnside,
            Some(Duration::from_secs(60)),
        ),
        ("2 reciprocal count and pairing", c2_reciprocal, None),
        ("3 primitive recursion vs brute force", c3_primitive, None),
        ("4 phi bijection and closed form", c4_phi, None),
        ("5 alpha solver", c5_alpha, None),
        ("6 low-lying lower bound", c6_lowlying, None),
        ("7 nonprimitive bounds", c7_nonprimitive, None),
        ("8 asymptotic trend", c8_trend, Some(Duration::from_secs(1))),
        ("9 geometry sanity", c9_geometry, None),
        ("10 depth audit", c10_audit, Some(Duration::from_secs(120))),
        ("11 cardinality table", c11_table1, None),
    ];
    let mut failures = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} criteria, {failures} failed", criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
