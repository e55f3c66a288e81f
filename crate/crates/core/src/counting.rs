//! Exact counters for every family, the `alpha_m` root solver and the growth
//! targets.
//!
//! Length conventions: `tau` is the number of sign entries of an (ab)-word, whose
//! group length is `2 tau`. Reciprocal families are indexed by `t` with group
//! length `4t` (a half-turn word has `2t` entries).
//!
//! Every cyclically reduced word of length greater than one alternates `a` and
//! `b^{+-1}` syllables and so has even length. Odd lengths only contribute the
//! three torsion classes `[a]`, `[b]`, `[b^-1]`, which is why the divisor
//! recursions below run over even group lengths only.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Default bracket width for [`alpha`].
pub const DEFAULT_TOL: f64 = 1e-13;

/// [`alpha`] keeps refining until `|p(alpha)|` is below this, whatever `tol` says.
pub const RESIDUAL_BOUND: f64 = 1e-13;

/// [`closed_form_compositions`] refuses values at or above this.
pub const PRECISION_CEILING: f64 = 4_503_599_627_370_496.0; // 2^52

/// Number of conjugacy classes of length one (`[a]`, `[b]`, `[b^-1]`).
pub const TORSION_CLASSES: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Classes,
    Primitive,
    Reciprocal,
    ReciprocalPrimitive,
    LowLying,
    LowLyingReciprocal,
    Compositions,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Classes,
        Family::Primitive,
        Family::Reciprocal,
        Family::ReciprocalPrimitive,
        Family::LowLying,
        Family::LowLyingReciprocal,
        Family::Compositions,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Classes => "classes",
            Family::Primitive => "primitive",
            Family::Reciprocal => "reciprocal",
            Family::ReciprocalPrimitive => "reciprocal-primitive",
            Family::LowLying => "lowlying",
            Family::LowLyingReciprocal => "lowlying-reciprocal",
            Family::Compositions => "compositions",
        }
    }

    /// Families that take the run bound `m`.
    pub fn needs_m(self) -> bool {
        matches!(
            self,
            Family::LowLying | Family::LowLyingReciprocal | Family::Compositions
        )
    }

    /// Reciprocal families are indexed by `t` with group length `4t`.
    pub fn is_reciprocal(self) -> bool {
        matches!(
            self,
            Family::Reciprocal | Family::ReciprocalPrimitive | Family::LowLyingReciprocal
        )
    }

    /// Group word length of the elements counted at index `n`, if the family
    /// counts group elements at all.
    pub fn group_length(self, n: u32) -> Option<u64> {
        match self {
            Family::Compositions => None,
            f if f.is_reciprocal() => Some(4 * n as u64),
            _ => Some(2 * n as u64),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| domain(format!("unknown family tag {s:?}")))
    }
}

/// One row of a count table.
#[derive(Clone, Debug, PartialEq)]
pub struct CountRecord {
    pub family: Family,
    pub t: u32,
    pub m: Option<u32>,
    pub exact: BigUint,
    pub target: Option<f64>,
}

impl CountRecord {
    pub fn new(
        family: Family,
        t: u32,
        m: Option<u32>,
        exact: BigUint,
        target: Option<f64>,
    ) -> Result<Self> {
        check_m(family, m)?;
        Ok(CountRecord {
            family,
            t,
            m,
            exact,
            target,
        })
    }
}

fn check_m(family: Family, m: Option<u32>) -> Result<Option<u32>> {
    match (family.needs_m(), m) {
        (true, None) => Err(domain(format!("family {family} requires m"))),
        (false, Some(_)) => Err(domain(format!("family {family} does not take m"))),
        (true, Some(0)) => Err(domain("m must be at least 1")),
        _ => Ok(m),
    }
}

fn require_positive(name: &str, n: u32) -> Result<()> {
    if n < 1 {
        Err(domain(format!("{name} must be at least 1, got {n}")))
    } else {
        Ok(())
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e as usize
}

/// Rotation orbits of `{-1,+1}^tau`, i.e. `|W_2tau|`, by Burnside:
/// `(1/tau) sum_{j=1..tau} 2^gcd(j, tau)`.
pub fn necklace_count(tau: u32) -> Result<BigUint> {
    require_positive("tau", tau)?;
    let sum: BigUint = (1..=tau).map(|j| pow2(j.gcd(&tau) as u64)).sum();
    let (q, r) = sum.div_rem(&BigUint::from(tau));
    debug_assert!(r.is_zero(), "Burnside sum not divisible by tau");
    Ok(q)
}

/// `out[n-1] = total(n) - sum_{s | n, s < n} out[s-1]` for `n = 1..=totals.len()`.
fn strip_powers(totals: Vec<BigUint>) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(totals.len());
    for (i, total) in totals.into_iter().enumerate() {
        let n = i + 1;
        let mut p = total;
        for s in (1..n).filter(|s| n % s == 0) {
            p -= &out[s - 1];
        }
        out.push(p);
    }
    out
}

/// Primitive class counts `P(1..=tau_max)`.
pub fn primitive_class_counts(tau_max: u32) -> Result<Vec<BigUint>> {
    require_positive("tau", tau_max)?;
    let totals = (1..=tau_max)
        .map(necklace_count)
        .collect::<Result<Vec<_>>>()?;
    Ok(strip_powers(totals))
}

/// Primitive conjugacy classes of group length `2 tau`:
/// `P(tau) = |W_2tau| - sum_{s | tau, s < tau} P(s)`.
///
/// `s = 1` is part of the sum: the two length-two classes `[ab]`, `[ab^-1]`
/// have infinite order and their powers are the constant words.
pub fn primitive_class_count(tau: u32) -> Result<BigUint> {
    Ok(primitive_class_counts(tau)?.pop().expect("nonempty"))
}

/// Primitive reciprocal class counts `R^p(1..=t_max)`.
pub fn reciprocal_primitive_counts(t_max: u32) -> Result<Vec<BigUint>> {
    require_positive("t", t_max)?;
    let totals = (1..=t_max).map(|t| pow2(t as u64 - 1)).collect();
    Ok(strip_powers(totals))
}

/// Reciprocal classes of group length `4t`: `2^(t-1)`, or the primitive ones.
pub fn reciprocal_count(t: u32, primitive: bool) -> Result<BigUint> {
    require_positive("t", t)?;
    if primitive {
        Ok(reciprocal_primitive_counts(t)?.pop().expect("nonempty"))
    } else {
        Ok(pow2(t as u64 - 1))
    }
}

/// Compositions of `t` with all parts at most `m` (`C_0 = 1`).
pub fn bounded_compositions(t: u32, m: u32) -> Result<BigUint> {
    if m < 1 {
        return Err(domain(format!("m must be at least 1, got {m}")));
    }
    let t = t as usize;
    let mut c: Vec<BigUint> = Vec::with_capacity(t + 1);
    c.push(BigUint::one());
    for n in 1..=t {
        let lo = n.saturating_sub(m as usize);
        let next: BigUint = c[lo..n].iter().sum();
        c.push(next);
    }
    Ok(c.pop().expect("nonempty"))
}

/// Count at a single index for families with a closed form or recursion.
pub fn per_length(family: Family, n: u32, m: Option<u32>) -> Result<BigUint> {
    let m = check_m(family, m)?;
    match family {
        Family::Classes => necklace_count(n),
        Family::Primitive => primitive_class_count(n),
        Family::Reciprocal => reciprocal_count(n, false),
        Family::ReciprocalPrimitive => reciprocal_count(n, true),
        Family::LowLying => Err(Error::NoClosedForm(family.tag())),
        Family::LowLyingReciprocal => {
            require_positive("t", n)?;
            bounded_compositions(n, m.expect("checked"))
        }
        Family::Compositions => bounded_compositions(n, m.expect("checked")),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CumulativeOptions {
    /// Add the three length-one torsion classes (`classes` family only).
    pub torsion: bool,
    pub m: Option<u32>,
}

/// Sum of [`per_length`] over `1..=n_max`, plus 3 torsion classes on request.
pub fn cumulative(family: Family, n_max: u32, opts: CumulativeOptions) -> Result<BigUint> {
    require_positive("t", n_max)?;
    if opts.torsion && family != Family::Classes {
        return Err(domain("torsion classes only apply to the classes family"));
    }
    check_m(family, opts.m)?;
    let sum: BigUint = match family {
        Family::Primitive => primitive_class_counts(n_max)?.into_iter().sum(),
        Family::ReciprocalPrimitive => reciprocal_primitive_counts(n_max)?.into_iter().sum(),
        Family::Reciprocal => pow2(n_max as u64) - 1u32,
        _ => (1..=n_max)
            .map(|n| per_length(family, n, opts.m))
            .sum::<Result<BigUint>>()?,
    };
    Ok(if opts.torsion {
        sum + TORSION_CLASSES
    } else {
        sum
    })
}

/// Root data for `p_m(z) = z^m - z^(m-1) - ... - z - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaData {
    pub m: u32,
    /// The root, rounded to `f64`.
    pub alpha: f64,
    /// `(alpha - 1) / (2 + (m + 1)(alpha - 2))`.
    pub d: f64,
    /// `p_m` evaluated exactly at the dyadic root the solver settled on.
    pub residual: f64,
    /// Final bisection bracket.
    pub lower: f64,
    pub upper: f64,
    numerator: BigInt,
    scale_bits: u32,
}

impl AlphaData {
    /// The solver's root as `numerator / 2^scale_bits`.
    pub fn dyadic(&self) -> (&BigInt, u32) {
        (&self.numerator, self.scale_bits)
    }

    /// `alpha / (2 + (m + 1)(alpha - 2))`, the coefficient in the cumulative
    /// low-lying reciprocal growth law.
    pub fn cumulative_coefficient(&self) -> f64 {
        self.d * self.alpha / (self.alpha - 1.0)
    }
}

/// `x * 2^e` without intermediate overflow or underflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// `n / 2^scale` as the nearest-ish `f64` (keeps the top 63 bits).
pub(crate) fn dyadic_to_f64(n: &BigInt, scale: u64) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(63);
    let top = (n.abs() >> shift as usize)
        .to_u64()
        .expect("fits in 63 bits") as f64;
    let v = ldexp(top, shift as i64 - scale as i64);
    if n.is_negative() {
        -v
    } else {
        v
    }
}

/// `p_m(n / 2^scale) * 2^(m scale)`, exactly.
fn scaled_poly(m: u32, n: &BigInt, scale: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 1..=m {
        acc = acc * n - (BigInt::one() << (k as usize * scale as usize));
    }
    acc
}

/// Unique positive root `alpha_m` of `z^m - z^(m-1) - ... - 1`, by exact dyadic
/// bisection on `[2(1 - 2^-m), 2]`.
///
/// The bracket is narrowed to width at most `tol` and at least far enough that
/// the exact residual is below [`RESIDUAL_BOUND`].
pub fn alpha(m: u32, tol: f64) -> Result<AlphaData> {
    if m < 2 {
        return Err(domain(format!("alpha needs m >= 2, got {m}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(domain(format!(
            "tol must be positive and finite, got {tol}"
        )));
    }
    let from_tol = (-tol.log2()).ceil().max(0.0) as u32 + 2;
    let scale = (m + 96).max(from_tol).min(8192);
    let one = BigInt::one();
    let two = &one << (scale as usize + 1);
    let mut lo = &two - (&one << (scale as usize + 1 - m as usize));
    let mut hi = two.clone();

    if scaled_poly(m, &lo, scale).is_positive() || !scaled_poly(m, &hi, scale).is_positive() {
        return Err(Error::Contract(format!(
            "p_{m} does not change sign on [2(1-2^-m), 2]"
        )));
    }
    while &hi - &lo > one {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if scaled_poly(m, &mid, scale).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let p_lo = scaled_poly(m, &lo, scale);
    let p_hi = scaled_poly(m, &hi, scale);
    let (root, p_root) = if p_lo.abs() <= p_hi.abs() {
        (lo.clone(), p_lo)
    } else {
        (hi.clone(), p_hi)
    };
    let residual = dyadic_to_f64(&p_root, m as u64 * scale as u64);
    if residual.abs() >= RESIDUAL_BOUND {
        return Err(Error::Contract(format!(
            "alpha_{m} residual {residual:e} above bound"
        )));
    }

    let alpha = dyadic_to_f64(&root, scale as u64);
    let alpha_minus_two = dyadic_to_f64(&(&root - &two), scale as u64);
    let alpha_minus_one = dyadic_to_f64(&(&root - (&one << scale as usize)), scale as u64);
    let d = alpha_minus_one / (2.0 + (m as f64 + 1.0) * alpha_minus_two);
    Ok(AlphaData {
        m,
        alpha,
        d,
        residual,
        lower: dyadic_to_f64(&lo, scale as u64),
        upper: dyadic_to_f64(&hi, scale as u64),
        numerator: root,
        scale_bits: scale,
    })
}

/// `floor(x + 1/2)`, ties rounding up.
pub fn rnd(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// `rnd(d_m alpha_m^t)` using precomputed root data.
pub fn closed_form_with(data: &AlphaData, t: u32) -> Result<BigUint> {
    let value = data.d * data.alpha.powi(t as i32);
    if value.is_nan() || value >= PRECISION_CEILING {
        return Err(Error::Precision { value });
    }
    Ok(BigUint::from(rnd(value) as u64))
}

/// Closed form for `|C_t,m|`: `rnd(d_m alpha_m^t)`. Errors instead of guessing
/// once the value reaches `2^52`.
pub fn closed_form_compositions(t: u32, m: u32) -> Result<BigUint> {
    closed_form_with(&alpha(m, DEFAULT_TOL)?, t)
}

/// `2^(t - t/m - 1) / t`, the red/black lower bound on `m`-low-lying classes.
pub fn lowlying_lower_bound(t: u32, m: u32) -> Result<f64> {
    require_positive("t", t)?;
    if m < 2 {
        return Err(domain(format!("lower bound needs m >= 2, got {m}")));
    }
    let t = t as f64;
    Ok(2f64.powf(t - t / m as f64 - 1.0) / t)
}

/// Right-hand sides of the four growth laws, for group length at most `2t`.
///
/// 1. primitive reciprocal: `2^floor(t/2)`
/// 2. primitive reciprocal in `S_m`: `alpha/(2 + (m+1)(alpha-2)) * alpha^floor(t/2)`
/// 3. primitive closed: `2^(t+1)/t`
/// 4. primitive closed in `S_m` (lower-order): `2^(t(1 - 1/m))/t`
pub fn growth_target(item: u8, t: u32, m: Option<u32>) -> Result<f64> {
    require_positive("t", t)?;
    let half = (t / 2) as i32;
    match item {
        1 => Ok(2f64.powi(half)),
        2 => {
            let m = m.ok_or_else(|| domain("growth item 2 requires m"))?;
            if m < 2 {
                return Err(domain("growth item 2 requires m >= 2"));
            }
            let a = alpha(m, DEFAULT_TOL)?;
            Ok(a.cumulative_coefficient() * a.alpha.powi(half))
        }
        3 => Ok(2f64.powi(t as i32 + 1) / t as f64),
        4 => {
            let m = m.ok_or_else(|| domain("growth item 4 requires m"))?;
            if m < 3 {
                return Err(domain("growth item 4 requires m >= 3"));
            }
            let t = t as f64;
            Ok(2f64.powf(t * (1.0 - 1.0 / m as f64)) / t)
        }
        other => Err(domain(format!("growth item must be 1..=4, got {other}"))),
    }
}

/// Leading-order value to compare an exact count against, where one exists.
pub fn count_target(family: Family, n: u32, m: Option<u32>, cumulative: bool) -> Option<f64> {
    let x = n as f64;
    match (family, cumulative) {
        (Family::Classes | Family::Primitive, false) => Some(2f64.powi(n as i32) / x),
        (Family::Classes | Family::Primitive, true) => Some(2f64.powi(n as i32 + 1) / x),
        (Family::Reciprocal | Family::ReciprocalPrimitive, false) => Some(2f64.powi(n as i32 - 1)),
        (Family::Reciprocal | Family::ReciprocalPrimitive, true) => Some(2f64.powi(n as i32) - 1.0),
        (Family::LowLying, false) => lowlying_lower_bound(n, m?).ok(),
        (Family::LowLyingReciprocal | Family::Compositions, c) => {
            let a = alpha(m?, DEFAULT_TOL).ok()?;
            let power = a.alpha.powi(n as i32);
            Some(if c {
                a.cumulative_coefficient() * (power - 1.0)
            } else {
                a.d * power
            })
        }
        (Family::LowLying, true) => None,
    }
}
