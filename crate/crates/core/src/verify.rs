//! Invariant suites behind `modgeo verify`.
//!
//! Each check sweeps exhaustively up to a length derived from `tmax` and, on
//! failure, names the first witness found. Checks run concurrently under
//! [`Exec::Parallel`]; each one is deterministic, so the report is too.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::binwords::{runs_of, BinaryWord, Composition, HalfTurnWord};
use crate::counting::{self, CumulativeOptions, Family};
use crate::enumerate::{self, ClassFilter};
use crate::error::{domain, Error, Result};
use crate::exec::{self, Exec};
use crate::geometry::{self, Classification, ProjectiveMatrix};
use crate::oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Binwords,
    Counting,
    Enumerate,
    Geometry,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Binwords,
        Suite::Counting,
        Suite::Enumerate,
        Suite::Geometry,
        Suite::All,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Binwords => "binwords",
            Suite::Counting => "counting",
            Suite::Enumerate => "enumerate",
            Suite::Geometry => "geometry",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.tag() == s)
            .ok_or_else(|| domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    /// Scope on success; the violated invariant's witness on failure.
    pub detail: String,
}

type CheckFn = fn(u32, Exec) -> std::result::Result<String, String>;

const BINWORDS: &[(&str, CheckFn)] = &[
    ("rotation group action", rotation_action),
    (
        "canonical form is least rotation",
        canonical_is_least_rotation,
    ),
    ("distinct rotations = t / exponent", distinct_rotations),
    ("half-turn closure", half_turn_closure),
    ("orbit meets Y_2t in two words", orbit_intersection),
    ("primitive iff k0 = t", primitivity_criterion),
    ("runs_of is two-to-one", runs_two_to_one),
    ("max cyclic run", max_run_invariant),
];

const COUNTING: &[(&str, CheckFn)] = &[
    ("Burnside sum integrality", burnside_integrality),
    ("primitive recursion = Mobius inversion", mobius_cross_check),
    ("nonprimitive bounds", nonprimitive_bounds),
    ("closed form = composition recursion", closed_form_agreement),
    ("unbounded parts give 2^(t-1)", unbounded_degeneration),
    ("composition recursion = oracle", compositions_oracle),
    ("alpha solver", alpha_solver),
    ("growth ratios approach 1", ratio_convergence),
];

const ENUMERATE: &[(&str, CheckFn)] = &[
    ("class enumeration = formulas", class_oracle),
    ("reciprocal enumeration = formulas", reciprocal_oracle),
    ("phi bijection round trip", phi_bijection),
    ("two normal forms per reciprocal class", two_normal_forms),
    ("low-lying lower bound", lowlying_bound),
    ("red/black classes meet bound", red_black_bound),
    ("low-lying filter monotone in m", filter_monotone),
    ("power map onto nonprimitive classes", power_bijection),
];

const GEOMETRY: &[(&str, CheckFn)] = &[
    ("encode is a homomorphism", encode_homomorphism),
    (
        "trace and length conjugation invariant",
        conjugation_invariance,
    ),
    ("parabolic iff constant", parabolic_classification),
    ("apex = fixed point half-distance", apex_oracle),
    ("sign canonicalization", sign_canonicalization),
    ("depth within widened bracket", widened_bracket),
    ("conjugation search agrees", bfs_agreement),
];

fn table(suite: Suite) -> Vec<(Suite, &'static str, CheckFn)> {
    let tag = |s: Suite, list: &[(&'static str, CheckFn)]| {
        list.iter()
            .map(move |&(n, f)| (s, n, f))
            .collect::<Vec<_>>()
    };
    match suite {
        Suite::Binwords => tag(Suite::Binwords, BINWORDS),
        Suite::Counting => tag(Suite::Counting, COUNTING),
        Suite::Enumerate => tag(Suite::Enumerate, ENUMERATE),
        Suite::Geometry => tag(Suite::Geometry, GEOMETRY),
        Suite::All => [
            Suite::Binwords,
            Suite::Counting,
            Suite::Enumerate,
            Suite::Geometry,
        ]
        .into_iter()
        .flat_map(table)
        .collect(),
    }
}

/// Runs every check of `suite`. Exhaustive sweeps stop at `tmax` or at the
/// check's own ceiling, whichever is smaller; closed-form checks ignore `tmax`.
pub fn run_suite(suite: Suite, tmax: u32, exec: Exec) -> Result<Vec<Check>> {
    if !(1..=enumerate::MAX_ENUM_LEN).contains(&tmax) {
        return Err(domain(format!(
            "tmax must be in 1..={}, got {tmax}",
            enumerate::MAX_ENUM_LEN
        )));
    }
    let checks = table(suite);
    Ok(exec::map_slice(exec, &checks, |&(s, name, f)| {
        let (passed, detail) = match f(tmax, exec) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check {
            suite: s,
            name,
            passed,
            detail,
        }
    }))
}

type Outcome = std::result::Result<String, String>;

fn cap(tmax: u32, ceiling: u32) -> u32 {
    tmax.min(ceiling)
}

fn word(bits: u64, t: u32) -> BinaryWord {
    BinaryWord::from_bits(bits, t as usize).expect("t <= 30")
}

/// Every word of each length in `lens` satisfies `ok`, or the first that does not.
fn sweep<F>(exec: Exec, lens: RangeInclusive<u32>, ok: F) -> Option<BinaryWord>
where
    F: Fn(&BinaryWord) -> bool + Sync + Send,
{
    for t in lens {
        let bad = exec::filter_map_range(exec, 0..(1u64 << t), |b| {
            let w = word(b, t);
            (!ok(&w)).then_some(w)
        });
        if let Some(w) = bad.into_iter().next() {
            return Some(w);
        }
    }
    None
}

/// As [`sweep`], over every element of `Y_2t`.
fn sweep_half_turn<F>(exec: Exec, lens: RangeInclusive<u32>, ok: F) -> Option<HalfTurnWord>
where
    F: Fn(&HalfTurnWord) -> bool + Sync + Send,
{
    sweep(exec, lens, |half| {
        ok(&HalfTurnWord::from_first_half(half).expect("t <= 30"))
    })
    .map(|half| HalfTurnWord::from_first_half(&half).expect("t <= 30"))
}

fn outcome<W: fmt::Display>(bad: Option<W>, scope: String) -> Outcome {
    match bad {
        None => Ok(scope),
        Some(w) => Err(format!("witness {w}")),
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err_str(e: Error) -> String {
    format!("error: {e}")
}

fn signs(w: &BinaryWord) -> Vec<i8> {
    w.iter().map(|s| s.as_i8()).collect()
}

fn rotation_action(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep(exec, 1..=n, |w| {
        let t = w.len() as i64;
        let c = w.canonical_form();
        (0..t).all(|i| {
            w.rotate(i).canonical_form() == c
                && (-t..t).all(|j| w.rotate(i).rotate(j) == w.rotate(i + j))
        })
    });
    outcome(bad, format!("t <= {n}"))
}

fn canonical_is_least_rotation(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep(exec, 1..=n, |w| {
        signs(&w.canonical_form()) == oracle::least_rotation(&signs(w))
            && w.is_canonical() == (w.canonical_form() == *w)
    });
    outcome(bad, format!("t <= {n}"))
}

fn distinct_rotations(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep(exec, 1..=n, |w| {
        let (root, e) = w.primitive_root();
        let distinct: HashSet<BinaryWord> = (0..w.len() as i64).map(|k| w.rotate(k)).collect();
        distinct.len() * e == w.len()
            && root.repeat(e).ok() == Some(*w)
            && root.is_primitive()
            && (e > 1) == oracle::is_proper_power(&signs(w))
    });
    outcome(bad, format!("t <= {n}"))
}

fn half_turn_closure(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep_half_turn(exec, 1..=n, |h| {
        h.word().rotate(h.t() as i64).is_half_turn()
    });
    outcome(bad, format!("t <= {n}"))
}

fn orbit_intersection(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep_half_turn(exec, 1..=n, |h| {
        let hits: HashSet<BinaryWord> = (0..2 * h.t() as i64)
            .map(|k| h.word().rotate(k))
            .filter(BinaryWord::is_half_turn)
            .collect();
        hits.len() == 2
    });
    outcome(bad, format!("t <= {n}"))
}

fn primitivity_criterion(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10);
    let bad = sweep_half_turn(exec, 1..=n, |h| {
        h.is_primitive() == (h.word().primitive_root().1 == 1)
    });
    outcome(bad, format!("t <= {n}"))
}

fn runs_two_to_one(tmax: u32, _exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    for t in 1..=n {
        let mut preimages: BTreeMap<Composition, usize> = BTreeMap::new();
        for b in 0..(1u64 << t) {
            *preimages.entry(runs_of(&word(b, t))).or_default() += 1;
        }
        if preimages.len() != 1 << (t - 1) {
            return Err(format!("t = {t}: {} compositions reached", preimages.len()));
        }
        if let Some((c, k)) = preimages.iter().find(|(_, &k)| k != 2) {
            return Err(format!("witness composition {c} with {k} preimages"));
        }
    }
    Ok(format!("t <= {n}"))
}

fn max_run_invariant(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    let bad = sweep(exec, 1..=n, |w| {
        let r = w.max_cyclic_run();
        r == oracle::longest_cyclic_block(&signs(w))
            && (0..w.len() as i64).all(|k| w.rotate(k).max_cyclic_run() == r)
    });
    outcome(bad, format!("t <= {n}"))
}

fn burnside_integrality(_tmax: u32, _exec: Exec) -> Outcome {
    for tau in 1u32..=200 {
        let sum: BigUint = (1..=tau)
            .map(|j| BigUint::one() << j.gcd(&tau) as usize)
            .sum();
        ensure((sum % tau).is_zero(), || format!("witness tau = {tau}"))?;
    }
    Ok("tau <= 200".into())
}

fn mobius_cross_check(_tmax: u32, _exec: Exec) -> Outcome {
    let p = counting::primitive_class_counts(64).map_err(err_str)?;
    for (i, v) in p.iter().enumerate() {
        let tau = i as u64 + 1;
        ensure(*v == oracle::mobius_primitive_count(tau), || {
            format!("witness tau = {tau}")
        })?;
    }
    Ok("tau <= 64".into())
}

/// `x <= (k/q) n 2^(n/2)` as `(q x)^2 <= k^2 n^2 2^n`, exactly.
fn below_half_power(x: &BigUint, q: u32, k: u32, n: u32) -> bool {
    let lhs = (x * q).pow(2);
    let rhs = (BigUint::from(k * k) * BigUint::from(n).pow(2)) << n as usize;
    lhs <= rhs
}

fn nonprimitive_bounds(_tmax: u32, _exec: Exec) -> Outcome {
    let p = counting::primitive_class_counts(40).map_err(err_str)?;
    let rp = counting::reciprocal_primitive_counts(40).map_err(err_str)?;
    for n in 1..=40u32 {
        let i = n as usize - 1;
        let np = counting::necklace_count(n).map_err(err_str)? - &p[i];
        ensure(below_half_power(&np, 2, 1, n), || {
            format!("classes witness tau = {n}")
        })?;
        let rnp = counting::reciprocal_count(n, false).map_err(err_str)? - &rp[i];
        ensure(below_half_power(&rnp, 4, 1, n), || {
            format!("reciprocal witness t = {n}")
        })?;
    }
    Ok("tau, t <= 40".into())
}

fn closed_form_agreement(_tmax: u32, _exec: Exec) -> Outcome {
    for m in 2..=10 {
        let a = counting::alpha(m, counting::DEFAULT_TOL).map_err(err_str)?;
        for t in 1..=40 {
            let closed = counting::closed_form_with(&a, t).map_err(err_str)?;
            let rec = counting::bounded_compositions(t, m).map_err(err_str)?;
            ensure(closed == rec, || {
                format!("witness t = {t}, m = {m}: {closed} vs {rec}")
            })?;
        }
    }
    Ok("t <= 40, 2 <= m <= 10".into())
}

fn unbounded_degeneration(_tmax: u32, _exec: Exec) -> Outcome {
    for t in 1..=40u32 {
        for m in t..=t + 2 {
            let c = counting::bounded_compositions(t, m).map_err(err_str)?;
            ensure(c == BigUint::one() << (t - 1) as usize, || {
                format!("witness t = {t}, m = {m}")
            })?;
        }
    }
    Ok("t <= 40".into())
}

fn compositions_oracle(tmax: u32, _exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    for t in 1..=n {
        for m in 1..=t {
            let c = counting::bounded_compositions(t, m).map_err(err_str)?;
            ensure(c == BigUint::from(oracle::compositions(t, m).len()), || {
                format!("witness t = {t}, m = {m}")
            })?;
        }
    }
    Ok(format!("t <= {n}"))
}

fn alpha_solver(_tmax: u32, _exec: Exec) -> Outcome {
    let mut prev = 0.0;
    for m in 2..=40u32 {
        let a = counting::alpha(m, counting::DEFAULT_TOL).map_err(err_str)?;
        let lo = 2.0 * (1.0 - 2f64.powi(-(m as i32)));
        ensure(a.residual.abs() <= 1e-12, || {
            format!("residual witness m = {m}: {}", a.residual)
        })?;
        ensure(lo <= a.alpha && a.alpha < 2.0, || {
            format!("bracket witness m = {m}: {}", a.alpha)
        })?;
        ensure(a.alpha > prev, || format!("monotonicity witness m = {m}"))?;
        prev = a.alpha;
    }
    ensure(prev > 2.0 - 1e-11, || format!("alpha_40 = {prev}"))?;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let a2 = counting::alpha(2, counting::DEFAULT_TOL)
        .map_err(err_str)?
        .alpha;
    ensure((a2 - golden).abs() <= 1e-10, || format!("alpha_2 = {a2}"))?;
    Ok("2 <= m <= 40".into())
}

fn ratio_convergence(_tmax: u32, _exec: Exec) -> Outcome {
    let opts = CumulativeOptions::default();
    let p = counting::primitive_class_counts(26).map_err(err_str)?;
    let mut last = (f64::INFINITY, f64::INFINITY);
    for tau in [10u32, 18, 26] {
        let cum = counting::cumulative(Family::Classes, tau, opts).map_err(err_str)?;
        let target = counting::count_target(Family::Classes, tau, None, true).expect("closed form");
        let r1 = (cum.to_f64().expect("finite") / target - 1.0).abs();
        let n = counting::necklace_count(tau).map_err(err_str)?;
        let r2 = (p[tau as usize - 1].to_f64().expect("finite") / n.to_f64().expect("finite")
            - 1.0)
            .abs();
        ensure(r1 < last.0 && r2 < last.1, || {
            format!("witness tau = {tau}")
        })?;
        last = (r1, r2);
    }
    Ok("tau in {10, 18, 26}".into())
}

fn class_oracle(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    let p = counting::primitive_class_counts(n).map_err(err_str)?;
    for tau in 1..=n {
        let all = enumerate::count_classes(tau, ClassFilter::all(), exec).map_err(err_str)?;
        ensure(
            BigUint::from(all) == counting::necklace_count(tau).map_err(err_str)?,
            || format!("witness tau = {tau}"),
        )?;
        let prim =
            enumerate::count_classes(tau, ClassFilter::primitive(), exec).map_err(err_str)?;
        ensure(
            BigUint::from(prim) == p[tau as usize - 1]
                && BigUint::from(prim) == oracle::mobius_primitive_count(tau as u64),
            || format!("primitive witness tau = {tau}"),
        )?;
        if tau <= 12 {
            ensure(all as usize == oracle::orbit_count(tau as usize), || {
                format!("orbit oracle witness tau = {tau}")
            })?;
        }
    }
    Ok(format!("tau <= {n}"))
}

fn reciprocal_oracle(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    let rp = counting::reciprocal_primitive_counts(n).map_err(err_str)?;
    let mut running = BigUint::zero();
    for t in 1..=n {
        let all = enumerate::count_reciprocal_classes(t, None, false, exec).map_err(err_str)?;
        running += all;
        ensure(
            all == 1 << (t - 1) && running == (BigUint::one() << t as usize) - 1u32,
            || format!("witness t = {t}"),
        )?;
        let prim = enumerate::count_reciprocal_classes(t, None, true, exec).map_err(err_str)?;
        ensure(BigUint::from(prim) == rp[t as usize - 1], || {
            format!("primitive witness t = {t}")
        })?;
    }
    Ok(format!("t <= {n}"))
}

fn phi_bijection(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    for t in 1..=n {
        for m in 1..=t {
            let reps = enumerate::reciprocal_classes(t, Some(m), exec).map_err(err_str)?;
            let c = counting::bounded_compositions(t, m).map_err(err_str)?;
            ensure(BigUint::from(reps.len()) == c, || {
                format!("count witness t = {t}, m = {m}")
            })?;
            for h in &reps {
                let comp = enumerate::phi(h).map_err(err_str)?;
                let back = enumerate::phi_inverse(&comp).map_err(err_str)?;
                ensure(
                    back == *h
                        && comp.max_part() <= m
                        && comp.max_part() as usize == h.word().max_cyclic_run(),
                    || format!("witness {h}"),
                )?;
            }
            for parts in oracle::compositions(t, m) {
                let comp = Composition::new(parts).map_err(err_str)?;
                let h = enumerate::phi_inverse(&comp).map_err(err_str)?;
                ensure(
                    enumerate::phi(&h).map_err(err_str)? == comp
                        && h.word().max_cyclic_run() <= m as usize,
                    || format!("witness composition {comp}"),
                )?;
            }
        }
    }
    Ok(format!("t <= {n}, 1 <= m <= t"))
}

fn two_normal_forms(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    for t in 1..=n {
        let reps = enumerate::reciprocal_classes(t, None, exec).map_err(err_str)?;
        let mut seen = BTreeSet::new();
        for h in &reps {
            let forms: BTreeSet<BinaryWord> = (0..2 * t as i64)
                .map(|k| h.word().rotate(k))
                .filter(BinaryWord::is_half_turn)
                .collect();
            ensure(forms.len() == 2, || format!("witness {h}"))?;
            seen.extend(forms);
        }
        ensure(seen.len() == 1 << t, || {
            format!("t = {t}: {} normal forms", seen.len())
        })?;
    }
    Ok(format!("t <= {n}"))
}

fn lowlying_bound(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    for tau in 1..=n {
        for m in [2, 3, 4] {
            let count =
                enumerate::count_classes(tau, ClassFilter::low_lying(m), exec).map_err(err_str)?;
            let bound = counting::lowlying_lower_bound(tau, m).map_err(err_str)?;
            ensure(count as f64 >= bound, || {
                format!("witness tau = {tau}, m = {m}")
            })?;
        }
    }
    Ok(format!("tau <= {n}, m in {{2, 3, 4}}"))
}

fn red_black_bound(tmax: u32, _exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    for tau in 1..=n {
        for m in [2, 3, 4] {
            let reps = enumerate::red_black_classes(tau, m).map_err(err_str)?;
            let need = (2f64.powi(tau as i32 - (tau / m) as i32 - 1) / tau as f64).ceil();
            ensure(reps.len() as f64 >= need, || {
                format!("witness tau = {tau}, m = {m}")
            })?;
            if let Some(w) = reps.iter().find(|w| !w.is_low_lying(m as usize)) {
                return Err(format!("witness {w} (m = {m})"));
            }
        }
    }
    Ok(format!("tau <= {n}, m in {{2, 3, 4}}"))
}

fn filter_monotone(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    for tau in 1..=n {
        let all = enumerate::count_classes(tau, ClassFilter::all(), exec).map_err(err_str)?;
        let mut prev = 0;
        for m in 1..=tau {
            let c =
                enumerate::count_classes(tau, ClassFilter::low_lying(m), exec).map_err(err_str)?;
            ensure(c >= prev, || format!("witness tau = {tau}, m = {m}"))?;
            prev = c;
        }
        ensure(prev == all, || format!("witness tau = {tau} at m = tau"))?;
    }
    Ok(format!("tau <= {n}"))
}

fn power_bijection(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 16);
    for tau in 1..=n {
        let images = enumerate::power_images(tau, exec).map_err(err_str)?;
        let mut hit = BTreeSet::new();
        for (img, root, k) in &images {
            ensure(hit.insert(*img), || {
                format!("collision at {img} from {root}^{k}")
            })?;
        }
        let nonprimitive: BTreeSet<BinaryWord> = enumerate::classes(tau, ClassFilter::all(), exec)
            .map_err(err_str)?
            .into_iter()
            .filter(|w| !w.is_primitive())
            .collect();
        if let Some(w) = nonprimitive.symmetric_difference(&hit).next() {
            return Err(format!("witness {w}"));
        }
    }
    Ok(format!("tau <= {n}"))
}

fn encode_homomorphism(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 8);
    let bad = sweep(exec, 2..=n.max(2), |w| {
        let m = geometry::encode(w);
        (1..w.len()).all(|cut| {
            let bits = w.bits();
            let u = BinaryWord::from_bits(bits >> (w.len() - cut), cut).expect("prefix");
            let v = BinaryWord::from_bits(bits & ((1 << (w.len() - cut)) - 1), w.len() - cut)
                .expect("suffix");
            &geometry::encode(&u) * &geometry::encode(&v) == m
        })
    });
    outcome(bad, format!("tau <= {n}"))
}

fn conjugation_invariance(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10);
    let bad = sweep(exec, 1..=n, |w| {
        let m = geometry::encode(w);
        let len = geometry::geodesic_length(&m).ok();
        (0..w.len() as i64).all(|k| {
            let r = geometry::encode(&w.rotate(k));
            r.trace_abs() == m.trace_abs() && geometry::geodesic_length(&r).ok() == len
        })
    });
    outcome(bad, format!("tau <= {n}"))
}

fn parabolic_classification(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 12);
    for tau in 1..=n {
        let reps = enumerate::classes(tau, ClassFilter::all(), exec).map_err(err_str)?;
        let mut parabolic = 0;
        for w in &reps {
            let class = geometry::classify(&geometry::encode(w));
            let expected = if w.is_constant() {
                Classification::Parabolic
            } else {
                Classification::Hyperbolic
            };
            ensure(class == expected, || format!("witness {w} is {class}"))?;
            parabolic += (class == Classification::Parabolic) as usize;
        }
        ensure(parabolic == 2, || {
            format!("tau = {tau}: {parabolic} parabolic classes")
        })?;
    }
    for m in [
        &ProjectiveMatrix::generator_a() * &ProjectiveMatrix::generator_b(),
        &ProjectiveMatrix::generator_a() * &ProjectiveMatrix::generator_b().inverse(),
    ] {
        ensure(geometry::classify(&m) == Classification::Parabolic, || {
            format!("witness {m}")
        })?;
    }
    Ok(format!("tau <= {n}"))
}

fn apex_oracle(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10);
    let bad = sweep(exec, 2..=n.max(2), |w| {
        let m = geometry::encode(w);
        let lift = m.conjugate_by(&ProjectiveMatrix::generator_a());
        [m, lift].iter().all(|m| match geometry::apex_height(m) {
            Ok(apex) => oracle::fixed_points(m.a(), m.b(), m.c(), m.d())
                .is_some_and(|(x1, x2)| (apex - (x2 - x1).abs() / 2.0).abs() <= 1e-12),
            Err(_) => m.c().is_zero() || geometry::classify(m) != Classification::Hyperbolic,
        })
    });
    outcome(bad, format!("tau <= {n}"))
}

fn sign_canonicalization(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10);
    let bad = sweep(exec, 1..=n, |w| {
        let m = geometry::encode(w);
        ProjectiveMatrix::new(
            -m.a().clone(),
            -m.b().clone(),
            -m.c().clone(),
            -m.d().clone(),
        )
        .is_ok_and(|neg| neg == m)
    });
    outcome(bad, format!("tau <= {n}"))
}

fn widened_bracket(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10).max(2);
    let report = geometry::depth_audit(n, exec).map_err(err_str)?;
    outcome(
        report.rows.iter().find(|r| !r.widened_hit).map(|r| r.word),
        format!("tau <= {n}, {} classes", report.summary.classes),
    )
}

fn bfs_agreement(tmax: u32, exec: Exec) -> Outcome {
    let n = cap(tmax, 10).max(2);
    let report = geometry::depth_audit(n, exec).map_err(err_str)?;
    outcome(
        report.rows.iter().find(|r| !r.bfs_agrees).map(|r| r.word),
        format!("tau <= {n}"),
    )
}
