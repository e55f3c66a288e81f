//! Brute-force enumeration of conjugacy classes and the explicit bijections.
//!
//! Classes of (ab)-words are rotation orbits of sign sequences. The enumerators
//! scan all `2^tau` packed words and keep the ones that are their own least
//! rotation, so each orbit is produced exactly once without a dedup pass. The
//! scan is split across the rayon pool in [`Exec::Parallel`] mode; output is
//! always sorted.

use std::collections::BTreeSet;

use crate::binwords::{from_composition, runs_of, BinaryWord, Composition, HalfTurnWord, Sign};
use crate::counting;
use crate::error::{domain, Error, Result};
use crate::exec::{self, Exec};

/// Largest `tau` (or reciprocal `t`) the enumerators accept.
pub const MAX_ENUM_LEN: u32 = 30;

fn check_enum_len(name: &str, n: u32) -> Result<()> {
    if (1..=MAX_ENUM_LEN).contains(&n) {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be in 1..={MAX_ENUM_LEN}, got {n}"
        )))
    }
}

/// Which classes to keep. Conditions combine with AND.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFilter {
    pub primitive: bool,
    /// Keep classes whose longest cyclic run is at most this.
    pub max_run: Option<u32>,
    /// Drop the parabolic classes (constant-sign words).
    pub hyperbolic: bool,
}

impl ClassFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn primitive() -> Self {
        ClassFilter {
            primitive: true,
            ..Self::default()
        }
    }

    pub fn low_lying(m: u32) -> Self {
        ClassFilter {
            max_run: Some(m),
            ..Self::default()
        }
    }

    /// Primitive classes of norm greater than 2: excludes `[ab]` and `[ab^-1]`.
    pub fn hyperbolic_primitive() -> Self {
        ClassFilter {
            primitive: true,
            hyperbolic: true,
            ..Self::default()
        }
    }

    pub fn and_primitive(mut self) -> Self {
        self.primitive = true;
        self
    }

    pub fn and_hyperbolic(mut self) -> Self {
        self.hyperbolic = true;
        self
    }

    pub fn accepts(&self, w: &BinaryWord) -> bool {
        (!self.hyperbolic || !w.is_constant())
            && self
                .max_run
                .is_none_or(|m| w.max_cyclic_run() <= m as usize)
            && (!self.primitive || w.is_primitive())
    }
}

/// One canonical representative per class of group length `2 tau` passing `filter`.
pub fn classes(tau: u32, filter: ClassFilter, exec: Exec) -> Result<Vec<BinaryWord>> {
    check_enum_len("tau", tau)?;
    let len = tau as usize;
    Ok(exec::filter_map_range(exec, 0..(1u64 << tau), |bits| {
        let w = BinaryWord::from_bits(bits, len).expect("in range");
        (w.is_canonical() && filter.accepts(&w)).then_some(w)
    }))
}

pub fn count_classes(tau: u32, filter: ClassFilter, exec: Exec) -> Result<u64> {
    check_enum_len("tau", tau)?;
    let len = tau as usize;
    Ok(exec::count_range(exec, 0..(1u64 << tau), |bits| {
        let w = BinaryWord::from_bits(bits, len).expect("in range");
        w.is_canonical() && filter.accepts(&w)
    }))
}

/// A normal-form word is the canonical representative of its reciprocal class
/// when it is the smaller of itself and its half-turn partner.
pub fn is_canonical_reciprocal(h: &HalfTurnWord) -> bool {
    h.word() < h.half_turn_partner().0.word()
}

pub fn canonical_reciprocal(h: &HalfTurnWord) -> HalfTurnWord {
    let (partner, _) = h.half_turn_partner();
    if h.word() < partner.word() {
        *h
    } else {
        partner
    }
}

fn reciprocal_rep(half_bits: u64, t: usize, m: Option<u32>) -> Option<HalfTurnWord> {
    let half = BinaryWord::from_bits(half_bits, t).expect("in range");
    let h = HalfTurnWord::from_first_half(&half).expect("t <= 30");
    (is_canonical_reciprocal(&h) && m.is_none_or(|m| h.word().max_cyclic_run() <= m as usize))
        .then_some(h)
}

/// Canonical representatives of reciprocal classes of group length `4t`,
/// optionally restricted to `m`-low-lying ones.
///
/// Scans the `2^t` free first halves of `Y_2t`; each class has exactly two
/// normal forms and the smaller is kept.
pub fn reciprocal_classes(t: u32, m: Option<u32>, exec: Exec) -> Result<Vec<HalfTurnWord>> {
    check_enum_len("t", t)?;
    let len = t as usize;
    Ok(exec::filter_map_range(exec, 0..(1u64 << t), |bits| {
        reciprocal_rep(bits, len, m)
    }))
}

pub fn count_reciprocal_classes(
    t: u32,
    m: Option<u32>,
    primitive: bool,
    exec: Exec,
) -> Result<u64> {
    check_enum_len("t", t)?;
    let len = t as usize;
    Ok(exec::count_range(exec, 0..(1u64 << t), |bits| {
        reciprocal_rep(bits, len, m).is_some_and(|h| !primitive || h.word().is_primitive())
    }))
}

/// The composition attached to a canonical reciprocal representative: the
/// runs of its first half.
pub fn phi(h: &HalfTurnWord) -> Result<Composition> {
    if !is_canonical_reciprocal(h) {
        return Err(Error::Contract(format!(
            "{h} is not the canonical representative of its reciprocal class"
        )));
    }
    Ok(runs_of(&h.first_half()))
}

/// Inverse of [`phi`]: of the two sign sequences with run lengths `c`, exactly
/// one gives a canonical representative.
pub fn phi_inverse(c: &Composition) -> Result<HalfTurnWord> {
    let mut found = Vec::with_capacity(1);
    for leading in [Sign::Minus, Sign::Plus] {
        let half = from_composition(c, leading)?;
        let h = HalfTurnWord::from_first_half(&half)?;
        if is_canonical_reciprocal(&h) {
            found.push(h);
        }
    }
    match found.as_slice() {
        [h] => Ok(*h),
        _ => Err(Error::Contract(format!(
            "composition {c} has {} canonical preimages",
            found.len()
        ))),
    }
}

/// The power map `[w] -> [w^n]`, returned as a canonical representative.
pub fn power_map(w: &BinaryWord, n: usize) -> Result<BinaryWord> {
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    if n < 2 {
        return Err(domain(format!("power must be at least 2, got {n}")));
    }
    Ok(w.repeat(n)?.canonical_form())
}

/// Every image of the power map landing at length `tau`, tagged with its
/// primitive root class and exponent.
pub fn power_images(tau: u32, exec: Exec) -> Result<Vec<(BinaryWord, BinaryWord, usize)>> {
    check_enum_len("tau", tau)?;
    let mut out = Vec::new();
    for s in (1..tau).filter(|s| tau.is_multiple_of(*s)) {
        let n = (tau / s) as usize;
        for root in classes(s, ClassFilter::primitive(), exec)? {
            out.push((power_map(&root, n)?, root, n));
        }
    }
    Ok(out)
}

/// Slot colouring for the red/black construction at length `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Black,
    /// Opposite of the previous slot.
    FlipPrevious,
    /// Opposite of slot 0.
    FlipFirst,
    /// Same as slot 0.
    CopyFirst,
}

fn red_black_slots(t: usize, m: usize) -> Vec<Slot> {
    let mut slots = vec![Slot::Black; t];
    for j in (m..t).step_by(m) {
        slots[j] = Slot::FlipPrevious;
    }
    if t >= 2 {
        if slots[t - 1] == Slot::Black {
            slots[t - 1] = Slot::FlipFirst;
        } else {
            // The last slot already opens a group; slot t-2 closes the
            // previous group, so pinning it to slot 0 makes the last slot
            // differ from slot 0 as well.
            slots[t - 2] = Slot::CopyFirst;
        }
    }
    slots
}

/// Words of the red/black construction: slots are grouped in blocks of `m`,
/// the first slot of every block after the first is forced to break the run
/// it follows, and the last slot is forced to differ from slot 0 so no run
/// wraps around. All remaining (black) slots are free.
pub fn red_black_words(t: u32, m: u32) -> Result<Vec<BinaryWord>> {
    check_enum_len("t", t)?;
    if m < 2 {
        return Err(domain(format!(
            "red/black construction needs m >= 2, got {m}"
        )));
    }
    let (t, m) = (t as usize, m as usize);
    let slots = red_black_slots(t, m);
    let black: Vec<usize> = (0..t).filter(|&j| slots[j] == Slot::Black).collect();
    let words = (0..(1u64 << black.len()))
        .map(|assignment| {
            let mut signs = vec![Sign::Minus; t];
            let mut free = 0;
            for j in 0..t {
                signs[j] = match slots[j] {
                    Slot::Black => {
                        let bit = (assignment >> (black.len() - 1 - free)) & 1;
                        free += 1;
                        if bit == 1 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    }
                    Slot::FlipPrevious => signs[j - 1].flip(),
                    Slot::FlipFirst => signs[0].flip(),
                    Slot::CopyFirst => signs[0],
                };
            }
            BinaryWord::new(&signs).expect("length checked")
        })
        .collect();
    Ok(words)
}

/// Number of free slots in the red/black construction.
pub fn red_black_free_slots(t: u32, m: u32) -> usize {
    red_black_slots(t as usize, m.max(2) as usize)
        .iter()
        .filter(|s| **s == Slot::Black)
        .count()
}

/// Distinct classes hit by the red/black construction, sorted.
pub fn red_black_classes(t: u32, m: u32) -> Result<Vec<BinaryWord>> {
    let set: BTreeSet<BinaryWord> = red_black_words(t, m)?
        .iter()
        .map(BinaryWord::canonical_form)
        .collect();
    Ok(set.into_iter().collect())
}

/// Smallest `tau0` such that, for every `tau` in `tau0..=tau_max`, the primitive
/// `m`-low-lying class count is at least half of the red/black lower bound.
/// `None` when it fails at `tau_max` itself.
pub fn empirical_t0(m: u32, tau_max: u32, exec: Exec) -> Result<Option<u32>> {
    let mut t0 = None;
    for tau in (1..=tau_max).rev() {
        let count = count_classes(tau, ClassFilter::low_lying(m).and_primitive(), exec)?;
        if (count as f64) >= 0.5 * counting::lowlying_lower_bound(tau, m)? {
            t0 = Some(tau);
        } else {
            break;
        }
    }
    Ok(t0)
}
