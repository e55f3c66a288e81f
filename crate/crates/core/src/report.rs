//! Row builders for the reproduction tables printed by the CLI.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::counting::{self, CumulativeOptions, Family};
use crate::enumerate::{self, ClassFilter};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;

/// Default largest `tau` (or reciprocal `t`) that is cross-checked by enumeration.
pub const DEFAULT_ORACLE_MAX: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtLeast,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "=",
            Relation::AtLeast => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigUint),
    Real(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Int(n) => n.to_f64().unwrap_or(f64::INFINITY),
            Value::Real(x) => *x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub family: &'static str,
    pub group_length: u64,
    pub relation: Relation,
    pub formula: Value,
    /// Enumerated count, present when the index is within the oracle ceiling.
    pub enumerated: Option<BigUint>,
    /// Formula against enumeration under `relation`, when both exist.
    pub agree: Option<bool>,
}

impl Table1Row {
    fn new(
        family: &'static str,
        group_length: u64,
        relation: Relation,
        formula: Value,
        enumerated: Option<BigUint>,
    ) -> Self {
        let agree = enumerated.as_ref().map(|e| match (&formula, relation) {
            (Value::Int(f), Relation::Equal) => f == e,
            (Value::Int(f), Relation::AtLeast) => e >= f,
            (Value::Real(f), Relation::Equal) => e.to_f64() == Some(*f),
            (Value::Real(f), Relation::AtLeast) => e.to_f64().is_some_and(|e| e >= *f),
        });
        Table1Row {
            family,
            group_length,
            relation,
            formula,
            enumerated,
            agree,
        }
    }
}

/// The four cardinality rows for index `t` and run bound `m`:
/// all classes of length `2t`, reciprocal classes of length `4t`, classes in
/// `S_m` of length `2t` (lower bound), reciprocal classes in `S_m` of length
/// `4t` (closed form). Enumeration runs only when `t <= oracle_max`.
///
/// The last row uses `rnd(d_m alpha_m^t)`; past the double-precision ceiling
/// the recursion value is reported instead.
pub fn table1(t: u32, m: u32, oracle_max: u32, exec: Exec) -> Result<Vec<Table1Row>> {
    if t < 1 {
        return Err(domain(format!("t must be at least 1, got {t}")));
    }
    if m < 2 {
        return Err(domain(format!("table rows need m >= 2, got {m}")));
    }
    let oracle = t <= oracle_max.min(enumerate::MAX_ENUM_LEN);
    let big = BigUint::from;

    let classes_enum = oracle
        .then(|| enumerate::count_classes(t, ClassFilter::all(), exec))
        .transpose()?;
    let recip_enum = oracle
        .then(|| enumerate::count_reciprocal_classes(t, None, false, exec))
        .transpose()?;
    let low_enum = oracle
        .then(|| enumerate::count_classes(t, ClassFilter::low_lying(m), exec))
        .transpose()?;
    let low_recip_enum = oracle
        .then(|| enumerate::count_reciprocal_classes(t, Some(m), false, exec))
        .transpose()?;

    let closed = match counting::closed_form_compositions(t, m) {
        Ok(v) => v,
        Err(Error::Precision { .. }) => counting::bounded_compositions(t, m)?,
        Err(e) => return Err(e),
    };

    Ok(vec![
        Table1Row::new(
            "geodesics",
            2 * t as u64,
            Relation::Equal,
            Value::Int(counting::necklace_count(t)?),
            classes_enum.map(big),
        ),
        Table1Row::new(
            "reciprocal",
            4 * t as u64,
            Relation::Equal,
            Value::Int(counting::reciprocal_count(t, false)?),
            recip_enum.map(big),
        ),
        Table1Row::new(
            "geodesics-in-S_m",
            2 * t as u64,
            Relation::AtLeast,
            Value::Real(counting::lowlying_lower_bound(t, m)?),
            low_enum.map(big),
        ),
        Table1Row::new(
            "reciprocal-in-S_m",
            4 * t as u64,
            Relation::Equal,
            Value::Int(closed),
            low_recip_enum.map(big),
        ),
    ])
}

/// Where the `exact` cell of a growth row came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Formula,
    Enumerated,
    /// Enumerated up to the oracle ceiling, rounded-up lower bounds beyond it.
    Bound,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Formula => "formula",
            Source::Enumerated => "enumerated",
            Source::Bound => "bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub t: u32,
    pub exact: BigUint,
    pub target: f64,
    pub ratio: f64,
    pub source: Source,
}

fn cumulative_or_zero(family: Family, n: u32, m: Option<u32>) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::zero());
    }
    counting::cumulative(family, n, CumulativeOptions { torsion: false, m })
}

/// Exact counts of group length at most `2t` against the growth targets, for
/// `t = 1..=t_max`.
///
/// 1. reciprocal classes, `|R_<=2t|`
/// 2. `m`-low-lying reciprocal classes
/// 3. primitive hyperbolic classes: cumulative primitive counts minus `[ab]`, `[ab^-1]`
/// 4. primitive hyperbolic `m`-low-lying classes; enumerated while
///    `tau <= oracle_max`, then `ceil` of the per-length lower bound
pub fn growth(
    item: u8,
    t_max: u32,
    m: Option<u32>,
    oracle_max: u32,
    exec: Exec,
) -> Result<Vec<GrowthRow>> {
    if t_max < 1 {
        return Err(domain(format!("t_max must be at least 1, got {t_max}")));
    }
    // validates item and m up front
    counting::growth_target(item, 1, m)?;

    let mut item4_running = BigUint::zero();
    let mut item4_bounded = false;
    let primitive = if item == 3 {
        counting::primitive_class_counts(t_max)?
    } else {
        Vec::new()
    };
    let mut item3_running = BigUint::zero();

    let mut rows = Vec::with_capacity(t_max as usize);
    for t in 1..=t_max {
        let (exact, source) = match item {
            1 => (
                cumulative_or_zero(Family::Reciprocal, t / 2, None)?,
                Source::Formula,
            ),
            2 => (
                cumulative_or_zero(Family::LowLyingReciprocal, t / 2, m)?,
                Source::Formula,
            ),
            3 => {
                item3_running += &primitive[t as usize - 1];
                // P(1) = 2 are exactly the two parabolic classes
                (&item3_running - 2u32, Source::Formula)
            }
            _ => {
                let m = m.expect("validated");
                if t <= oracle_max.min(enumerate::MAX_ENUM_LEN) {
                    item4_running += enumerate::count_classes(
                        t,
                        ClassFilter::low_lying(m).and_primitive().and_hyperbolic(),
                        exec,
                    )?;
                } else {
                    item4_bounded = true;
                    let bound = counting::lowlying_lower_bound(t, m)?.ceil();
                    item4_running += BigUint::from(bound as u64);
                }
                let source = if item4_bounded {
                    Source::Bound
                } else {
                    Source::Enumerated
                };
                (item4_running.clone(), source)
            }
        };
        let target = counting::growth_target(item, t, m)?;
        let ratio = exact.to_f64().unwrap_or(f64::INFINITY) / target;
        rows.push(GrowthRow {
            t,
            exact,
            target,
            ratio,
            source,
        });
    }
    Ok(rows)
}
