//! `PSL(2, Z)` images of words and cusp-excursion diagnostics.
//!
//! The representation sends `a` to `A = [[0,-1],[1,0]]` and `b` to
//! `B = [[1,-1],[1,0]]`, so the sign entry `+1` contributes `AB` and `-1`
//! contributes `AB^-1`, the translation `z -> z - 1`. Matrix arithmetic is
//! exact; only lengths, apex heights and depths are floating point.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::sync::LazyLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binwords::{BinaryWord, Sign};
use crate::enumerate::{self, ClassFilter};
use crate::error::{domain, Error, Result};
use crate::exec::{self, Exec};

/// A determinant-one integer matrix up to sign, stored with the first nonzero
/// of `(a, b, c, d)` positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

static GEN_A: LazyLock<ProjectiveMatrix> =
    LazyLock::new(|| ProjectiveMatrix::from_i64(0, -1, 1, 0).unwrap());
static GEN_B: LazyLock<ProjectiveMatrix> =
    LazyLock::new(|| ProjectiveMatrix::from_i64(1, -1, 1, 0).unwrap());
static PLUS_FACTOR: LazyLock<ProjectiveMatrix> = LazyLock::new(|| &*GEN_A * &*GEN_B);
static MINUS_FACTOR: LazyLock<ProjectiveMatrix> = LazyLock::new(|| &*GEN_A * &GEN_B.inverse());

impl ProjectiveMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(domain(format!(
                "[[{a},{b}],[{c},{d}]] does not have determinant 1"
            )));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("determinant one matrix is nonzero");
        if lead.is_negative() {
            ProjectiveMatrix {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            ProjectiveMatrix { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).unwrap()
    }

    /// Image of the order-two generator `a`.
    pub fn generator_a() -> Self {
        GEN_A.clone()
    }

    /// Image of the order-three generator `b`.
    pub fn generator_b() -> Self {
        GEN_B.clone()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &ProjectiveMatrix) -> Self {
        &(g * self) * &g.inverse()
    }

    pub fn trace_abs(&self) -> BigUint {
        (&self.a + &self.d)
            .abs()
            .to_biguint()
            .expect("abs is nonnegative")
    }

    pub fn max_abs_entry(&self) -> BigUint {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|x| x.abs().to_biguint().expect("abs is nonnegative"))
            .max()
            .expect("four entries")
    }
}

impl Mul for &ProjectiveMatrix {
    type Output = ProjectiveMatrix;

    fn mul(self, rhs: &ProjectiveMatrix) -> ProjectiveMatrix {
        ProjectiveMatrix::canonical(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl fmt::Display for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Product of `AB` (for `+1`) and `AB^-1` (for `-1`) over the entries of `w`.
pub fn encode(w: &BinaryWord) -> ProjectiveMatrix {
    w.iter()
        .fold(ProjectiveMatrix::identity(), |acc, s| match s {
            Sign::Plus => &acc * &PLUS_FACTOR,
            Sign::Minus => &acc * &MINUS_FACTOR,
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Elliptic => "elliptic",
            Classification::Parabolic => "parabolic",
            Classification::Hyperbolic => "hyperbolic",
        })
    }
}

/// By `|trace|` against 2. The identity reports as parabolic; no nonempty
/// (ab)-word maps to it.
pub fn classify(m: &ProjectiveMatrix) -> Classification {
    let two = BigUint::from(2u32);
    match m.trace_abs().cmp(&two) {
        std::cmp::Ordering::Less => Classification::Elliptic,
        std::cmp::Ordering::Equal => Classification::Parabolic,
        std::cmp::Ordering::Greater => Classification::Hyperbolic,
    }
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn require_hyperbolic(m: &ProjectiveMatrix) -> Result<()> {
    match classify(m) {
        Classification::Hyperbolic => Ok(()),
        other => Err(Error::NotHyperbolic(format!("{m} ({other})"))),
    }
}

/// Translation length `2 arccosh(|trace| / 2)`.
pub fn geodesic_length(m: &ProjectiveMatrix) -> Result<f64> {
    require_hyperbolic(m)?;
    Ok(2.0 * (big_to_f64(&m.trace_abs()) / 2.0).acosh())
}

/// `sqrt(trace^2 - 4)`, with the square computed exactly.
fn discriminant_root(m: &ProjectiveMatrix) -> f64 {
    let tr = m.trace_abs();
    big_to_f64(&(&tr * &tr - 4u32)).sqrt()
}

/// Height of the top of the axis: half the distance between the real fixed
/// points, `sqrt(trace^2 - 4) / (2 |c|)`.
pub fn apex_height(m: &ProjectiveMatrix) -> Result<f64> {
    require_hyperbolic(m)?;
    if m.c.is_zero() {
        return Err(domain(format!("{m} has c = 0; its axis is vertical")));
    }
    let c = big_to_f64(&m.c.abs().to_biguint().expect("abs"));
    Ok(discriminant_root(m) / (2.0 * c))
}

/// Deepest cusp excursion of the closed geodesic of a word.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    pub word: BinaryWord,
    pub trace_abs: BigUint,
    pub geo_length: f64,
    pub max_run: usize,
    /// Largest axis apex over the candidate lifts.
    pub apex: f64,
    /// `log(apex)`: distance past the height-one horocycle.
    pub depth: f64,
    /// `(k, k + 1)` with `k/2 < apex < (k+1)/2`, the winding count the depth
    /// would indicate under the `(log(k/2), log((k+1)/2))` bracket.
    pub winding_bracket: (u64, u64),
    /// Smallest nonzero `|c|` among the candidate lifts.
    pub min_c: BigUint,
    /// Smallest nonzero `|c|` seen by the bounded conjugation search.
    pub bfs_min_c: BigUint,
    /// False when the search found a lift with smaller `|c|` than the candidates.
    pub bfs_agrees: bool,
}

/// Node budget for the conjugation search in [`max_depth`].
pub const BFS_NODE_LIMIT: usize = 20_000;

fn abs_c(m: &ProjectiveMatrix) -> BigUint {
    m.c.abs().to_biguint().expect("abs")
}

/// Breadth-first search over conjugates by `A`, `B`, `B^-1`, never leaving the
/// set of matrices whose entries are at most `bound` in absolute value.
fn bfs_min_c(starts: &[ProjectiveMatrix], bound: &BigUint) -> Option<BigUint> {
    let gens = [
        ProjectiveMatrix::generator_a(),
        ProjectiveMatrix::generator_b(),
        ProjectiveMatrix::generator_b().inverse(),
    ];
    let mut seen: HashSet<ProjectiveMatrix> = starts.iter().cloned().collect();
    let mut queue: VecDeque<ProjectiveMatrix> = starts.iter().cloned().collect();
    let mut best: Option<BigUint> = None;
    while let Some(m) = queue.pop_front() {
        let c = abs_c(&m);
        if !c.is_zero() && best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
        for g in &gens {
            let next = m.conjugate_by(g);
            if seen.len() >= BFS_NODE_LIMIT || next.max_abs_entry() > *bound {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    best
}

/// Depth of the deepest cusp excursion of the geodesic of `w`.
///
/// Candidate lifts are the images of every rotation of `w` and their
/// conjugates by `A`; the cusp parabolic `AB` fixes 0, and `A` moves 0 to
/// infinity. The apex is maximal where `|c|` is minimal since the trace is a
/// class invariant. A bounded conjugation search double-checks the minimum.
pub fn max_depth(w: &BinaryWord) -> Result<DepthReport> {
    let base = encode(w);
    require_hyperbolic(&base)?;
    let gen_a = ProjectiveMatrix::generator_a();
    let candidates: Vec<ProjectiveMatrix> = (0..w.len() as i64)
        .flat_map(|k| {
            let m = encode(&w.rotate(k));
            let conj = m.conjugate_by(&gen_a);
            [m, conj]
        })
        .collect();
    let min_c = candidates
        .iter()
        .map(abs_c)
        .filter(|c| !c.is_zero())
        .min()
        .ok_or_else(|| domain(format!("no candidate lift of {w} has c != 0")))?;
    let bound = candidates
        .iter()
        .map(ProjectiveMatrix::max_abs_entry)
        .max()
        .expect("nonempty");
    let bfs = bfs_min_c(&candidates, &bound).unwrap_or_else(|| min_c.clone());

    let apex = discriminant_root(&base) / (2.0 * big_to_f64(&min_c));
    let k = (2.0 * apex).floor() as u64;
    Ok(DepthReport {
        word: *w,
        trace_abs: base.trace_abs(),
        geo_length: geodesic_length(&base)?,
        max_run: w.max_cyclic_run(),
        apex,
        depth: apex.ln(),
        winding_bracket: (k, k + 1),
        bfs_agrees: bfs >= min_c,
        min_c,
        bfs_min_c: bfs,
    })
}

/// Membership of the geodesic of `w` in the `m`-thick part, by the run criterion.
pub fn in_thick_part(w: &BinaryWord, m: usize) -> bool {
    w.max_cyclic_run() <= m
}

/// Tolerance for strict bracket comparisons in the depth audit.
pub const AUDIT_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct AuditRow {
    pub word: BinaryWord,
    pub tau: usize,
    pub max_run: usize,
    pub trace_abs: BigUint,
    pub length: f64,
    pub apex: f64,
    pub depth: f64,
    /// `log(k/2) < depth < log((k+1)/2)` with `k` the longest run.
    pub run_bracket_hit: bool,
    /// `log((k+1)/2) < depth < log((k+2)/2)`.
    pub shifted_bracket_hit: bool,
    /// `log(k/2) - margin < depth < log((k+2)/2) + margin`.
    pub widened_hit: bool,
    /// Depth within the margin of one of the three bracket endpoints.
    pub boundary_hit: bool,
    pub bfs_agrees: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BracketTally {
    pub run: usize,
    pub shifted: usize,
    pub neither: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditSummary {
    pub classes: usize,
    pub run_hits: usize,
    pub shifted_hits: usize,
    pub neither: usize,
    pub widened_hits: usize,
    pub boundary_hits: usize,
    pub bfs_disagreements: usize,
    /// Tallies keyed by longest cyclic run.
    pub by_run: BTreeMap<usize, BracketTally>,
}

impl AuditSummary {
    pub fn widened_fraction(&self) -> f64 {
        if self.classes == 0 {
            1.0
        } else {
            self.widened_hits as f64 / self.classes as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub summary: AuditSummary,
}

fn audit_row(w: &BinaryWord) -> Result<AuditRow> {
    let r = max_depth(w)?;
    let k = r.max_run as f64;
    let edges = [
        (k / 2.0).ln(),
        ((k + 1.0) / 2.0).ln(),
        ((k + 2.0) / 2.0).ln(),
    ];
    let inside = |lo: f64, hi: f64| r.depth > lo + AUDIT_MARGIN && r.depth < hi - AUDIT_MARGIN;
    Ok(AuditRow {
        word: *w,
        tau: w.len(),
        max_run: r.max_run,
        trace_abs: r.trace_abs,
        length: r.geo_length,
        apex: r.apex,
        depth: r.depth,
        run_bracket_hit: inside(edges[0], edges[1]),
        shifted_bracket_hit: inside(edges[1], edges[2]),
        widened_hit: r.depth > edges[0] - AUDIT_MARGIN && r.depth < edges[2] + AUDIT_MARGIN,
        boundary_hit: edges.iter().any(|e| (r.depth - e).abs() <= AUDIT_MARGIN),
        bfs_agrees: r.bfs_agrees,
    })
}

/// Measures where the deepest excursion of every hyperbolic class with
/// `tau <= tau_max` falls relative to the run-length brackets. Reports only;
/// nothing is asserted.
pub fn depth_audit(tau_max: u32, exec: Exec) -> Result<AuditReport> {
    if tau_max < 2 {
        return Err(domain(format!("audit needs tau_max >= 2, got {tau_max}")));
    }
    let mut words = Vec::new();
    for tau in 1..=tau_max {
        words.extend(enumerate::classes(
            tau,
            ClassFilter::all().and_hyperbolic(),
            exec,
        )?);
    }
    let rows = exec::map_slice(exec, &words, audit_row)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut summary = AuditSummary {
        classes: rows.len(),
        ..AuditSummary::default()
    };
    for row in &rows {
        let tally = summary.by_run.entry(row.max_run).or_default();
        if row.run_bracket_hit {
            summary.run_hits += 1;
            tally.run += 1;
        } else if row.shifted_bracket_hit {
            summary.shifted_hits += 1;
            tally.shifted += 1;
        } else {
            summary.neither += 1;
            tally.neither += 1;
        }
        summary.widened_hits += row.widened_hit as usize;
        summary.boundary_hits += row.boundary_hit as usize;
        summary.bfs_disagreements += !row.bfs_agrees as usize;
    }
    Ok(AuditReport { rows, summary })
}
