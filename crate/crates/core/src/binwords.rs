//! Cyclic binary words.
//!
//! A [`BinaryWord`] of length `t` stands for the (ab)-word
//! `a b^e0 a b^e1 ... a b^e(t-1)` of group length `2t`. Conjugation among
//! (ab)-words is rotation of the sign sequence, so everything here is about
//! rotation orbits.
//!
//! Storage is bit-packed: entry `j` lives in bit `t - 1 - j`, with `-1`
//! encoded as `0` and `+1` as `1`. Two words of the same length therefore
//! compare as integers exactly as they compare lexicographically under
//! `-1 < +1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Longest word that fits the packed representation.
pub const MAX_LEN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: u64,
    len: u8,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_len(len: usize) -> Result<()> {
    if (1..=MAX_LEN).contains(&len) {
        Ok(())
    } else {
        Err(Error::WordLength(len))
    }
}

impl BinaryWord {
    pub fn new(entries: &[Sign]) -> Result<Self> {
        check_len(entries.len())?;
        let bits = entries.iter().fold(0u64, |acc, s| (acc << 1) | s.bit());
        Ok(BinaryWord {
            bits,
            len: entries.len() as u8,
        })
    }

    /// Builds a word from its packed bits (entry 0 in the highest of the `len` bits).
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        if bits & !mask(len) != 0 {
            return Err(domain(format!(
                "bits {bits:#x} do not fit in {len} entries"
            )));
        }
        Ok(BinaryWord {
            bits,
            len: len as u8,
        })
    }

    pub fn constant(len: usize, sign: Sign) -> Result<Self> {
        check_len(len)?;
        let bits = match sign {
            Sign::Minus => 0,
            Sign::Plus => mask(len),
        };
        Ok(BinaryWord {
            bits,
            len: len as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; words have at least one entry.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, j: usize) -> Sign {
        assert!(
            j < self.len(),
            "index {j} out of range for length {}",
            self.len
        );
        if (self.bits >> (self.len() - 1 - j)) & 1 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |j| self.get(j))
    }

    pub fn to_vec(&self) -> Vec<Sign> {
        self.iter().collect()
    }

    /// Rotation by `k`: entry `j` of the result is entry `j - k (mod t)` of `self`.
    pub fn rotate(&self, k: i64) -> BinaryWord {
        let t = self.len();
        let k = k.rem_euclid(t as i64) as usize;
        if k == 0 {
            return *self;
        }
        let bits = ((self.bits >> k) | (self.bits << (t - k))) & mask(t);
        BinaryWord {
            bits,
            len: self.len,
        }
    }

    /// Lexicographically least rotation under `-1 < +1`.
    pub fn canonical_form(&self) -> BinaryWord {
        (1..self.len() as i64)
            .map(|k| self.rotate(k))
            .fold(*self, |best, r| if r.bits < best.bits { r } else { best })
    }

    /// True when no rotation is smaller than `self`. Cheaper than
    /// `canonical_form() == *self` because it stops at the first smaller rotation.
    pub fn is_canonical(&self) -> bool {
        (1..self.len() as i64).all(|k| self.rotate(k).bits >= self.bits)
    }

    /// Smallest period: returns `(root, exponent)` with `self == root^exponent`.
    pub fn primitive_root(&self) -> (BinaryWord, usize) {
        let t = self.len();
        for d in 1..t {
            if t.is_multiple_of(d) && self.rotate(d as i64) == *self {
                let root = BinaryWord {
                    bits: self.bits >> (t - d),
                    len: d as u8,
                };
                return (root, t / d);
            }
        }
        (*self, 1)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.bits == 0 || self.bits == mask(self.len())
    }

    /// Length of the longest constant-sign block, read cyclically.
    /// Constant words return their length.
    pub fn max_cyclic_run(&self) -> usize {
        let t = self.len();
        if self.is_constant() {
            return t;
        }
        // Rotate so that entry 0 starts a block; then a linear scan sees every block whole.
        let start = (0..t)
            .find(|&j| self.get(j) != self.get((j + t - 1) % t))
            .expect("non-constant word has a sign change");
        let w = self.rotate(-(start as i64));
        let mut best = 1;
        let mut run = 1;
        for j in 1..t {
            if w.get(j) == w.get(j - 1) {
                run += 1;
                best = best.max(run);
            } else {
                run = 1;
            }
        }
        best
    }

    /// No `m + 1` cyclically consecutive equal signs.
    pub fn is_low_lying(&self, m: usize) -> bool {
        self.max_cyclic_run() <= m
    }

    pub fn concat(&self, other: &BinaryWord) -> Result<BinaryWord> {
        let len = self.len() + other.len();
        check_len(len)?;
        Ok(BinaryWord {
            bits: (self.bits << other.len()) | other.bits,
            len: len as u8,
        })
    }

    pub fn repeat(&self, n: usize) -> Result<BinaryWord> {
        if n == 0 {
            return Err(domain("repeat count must be positive"));
        }
        check_len(self.len() * n)?;
        let mut out = *self;
        for _ in 1..n {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    /// Flips every sign.
    pub fn negate(&self) -> BinaryWord {
        BinaryWord {
            bits: !self.bits & mask(self.len()),
            len: self.len,
        }
    }

    pub fn reverse(&self) -> BinaryWord {
        let t = self.len();
        BinaryWord {
            bits: self.bits.reverse_bits() >> (64 - t),
            len: self.len,
        }
    }

    /// Membership in `Y_2t`: even length and `e_j = -e_(2t-j-1)` for all `j`.
    pub fn is_half_turn(&self) -> bool {
        self.len().is_multiple_of(2) && *self == self.reverse().negate()
    }
}

impl Ord for BinaryWord {
    /// Shorter words first; equal lengths compare lexicographically with `-1 < +1`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    /// Parses a string over `{+, -}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryWord::new(&signs)
    }
}

/// An element of `Y_2t` together with its `k0`, the smallest positive rotation
/// that lands back in `Y_2t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfTurnWord {
    word: BinaryWord,
    k0: usize,
}

impl HalfTurnWord {
    pub fn new(word: BinaryWord) -> Result<Self> {
        if !word.is_half_turn() {
            return Err(Error::NotHalfTurn(word.to_string()));
        }
        let t = word.len() / 2;
        let k0 = (1..=t)
            .find(|&k| word.rotate(k as i64).is_half_turn())
            .expect("rotation by t preserves the half-turn condition");
        Ok(HalfTurnWord { word, k0 })
    }

    /// The normal-form word `(e_0..e_(t-1), -e_(t-1)..-e_0)`.
    pub fn from_first_half(half: &BinaryWord) -> Result<Self> {
        let full = half.concat(&half.reverse().negate())?;
        HalfTurnWord::new(full)
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    /// Half the word length.
    pub fn t(&self) -> usize {
        self.word.len() / 2
    }

    pub fn first_half(&self) -> BinaryWord {
        let t = self.t();
        BinaryWord::from_bits(self.word.bits() >> t, t).expect("half of a valid word")
    }

    /// The other element of `Y_2t` in this rotation orbit, and `k0`.
    pub fn half_turn_partner(&self) -> (HalfTurnWord, usize) {
        let partner = HalfTurnWord {
            word: self.word.rotate(self.k0 as i64),
            k0: self.k0,
        };
        (partner, self.k0)
    }

    pub fn is_primitive(&self) -> bool {
        self.k0 == self.t()
    }
}

impl fmt::Display for HalfTurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(domain("a composition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(domain("composition parts must be positive"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `3,2,1,1`, `(3,2,1,1)` or whitespace-separated parts.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| domain(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// Lengths of the maximal constant-sign blocks of `half`, left to right.
/// Not cyclic: a block at the end never merges with one at the start.
pub fn runs_of(half: &BinaryWord) -> Composition {
    let mut parts = Vec::new();
    let mut run = 1u32;
    for j in 1..half.len() {
        if half.get(j) == half.get(j - 1) {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    Composition { parts }
}

/// Right inverse of [`runs_of`]: blocks of alternating sign starting with `leading`.
pub fn from_composition(c: &Composition, leading: Sign) -> Result<BinaryWord> {
    let mut signs = Vec::with_capacity(c.total() as usize);
    let mut sign = leading;
    for &p in c.parts() {
        signs.extend(std::iter::repeat_n(sign, p as usize));
        sign = sign.flip();
    }
    BinaryWord::new(&signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(w("+--").rotate(1), w("-+-"));
        assert_eq!(w("+--").rotate(3), w("+--"));
        assert_eq!(w("++--").rotate(2), w("--++"));
        assert_eq!(w("+--").rotate(-1), w("--+"));
    }

    #[test]
    fn canonical_examples() {
        let lyndon = w("---+---+--++");
        for k in 0..12 {
            assert_eq!(lyndon.rotate(k).canonical_form(), lyndon);
        }
        assert_eq!(w("+++").canonical_form(), w("+++"));
        assert_eq!(w("+-+-").canonical_form(), w("-+-+"));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(w("+-+-").primitive_root(), (w("+-"), 2));
        assert_eq!(w("++-").primitive_root(), (w("++-"), 1));
        assert_eq!(w("++++++").primitive_root(), (w("+"), 6));
    }

    #[test]
    fn max_run_examples() {
        assert_eq!(w("++-").max_cyclic_run(), 2);
        assert_eq!(w("---").max_cyclic_run(), 3);
        assert_eq!(w("+--+").max_cyclic_run(), 2);
        assert_eq!(w("+-+-").max_cyclic_run(), 1);
        assert!(!w("+++").is_low_lying(2));
    }

    #[test]
    fn half_turn_partner_examples() {
        let h = HalfTurnWord::new(w("+-")).unwrap();
        let (p, k0) = h.half_turn_partner();
        assert_eq!((*p.word(), k0), (w("-+"), 1));
        assert!(h.is_primitive());

        let h = HalfTurnWord::new(w("++--")).unwrap();
        let (p, k0) = h.half_turn_partner();
        assert_eq!((*p.word(), k0), (w("--++"), 2));
        assert!(h.is_primitive());

        let h = HalfTurnWord::new(w("+-+-")).unwrap();
        let (p, k0) = h.half_turn_partner();
        assert_eq!((*p.word(), k0), (w("-+-+"), 1));
        assert!(!h.is_primitive());
    }

    #[test]
    fn half_turn_rejects_bad_input() {
        assert!(matches!(
            HalfTurnWord::new(w("++")),
            Err(Error::NotHalfTurn(_))
        ));
        assert!(HalfTurnWord::new(w("+-+")).is_err());
    }

    #[test]
    fn runs_examples() {
        assert_eq!(runs_of(&w("---++-+")).parts(), &[3, 2, 1, 1]);
        assert_eq!(runs_of(&w("+")).parts(), &[1]);
        assert_eq!(runs_of(&w("+-+-")).parts(), &[1, 1, 1, 1]);
        // not cyclic
        assert_eq!(runs_of(&w("+--+")).parts(), &[1, 2, 1]);
    }

    #[test]
    fn from_composition_examples() {
        let c = Composition::new(vec![3, 2, 1, 1]).unwrap();
        assert_eq!(from_composition(&c, Sign::Minus).unwrap(), w("---++-+"));
        let c = Composition::new(vec![1]).unwrap();
        assert_eq!(from_composition(&c, Sign::Plus).unwrap(), w("+"));
        let c = Composition::new(vec![2, 2]).unwrap();
        assert_eq!(from_composition(&c, Sign::Plus).unwrap(), w("++--"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!("+x-".parse::<BinaryWord>(), Err(Error::InvalidSymbol('x')));
        assert_eq!("".parse::<BinaryWord>(), Err(Error::WordLength(0)));
        assert_eq!("+ + -".parse::<BinaryWord>().unwrap().to_string(), "++-");
        assert!(Composition::new(vec![1, 0]).is_err());
        assert_eq!(
            "(3,2,1,1)".parse::<Composition>().unwrap().parts(),
            &[3, 2, 1, 1]
        );
    }

    #[test]
    fn full_length_words() {
        let x = BinaryWord::from_bits(0x8000_0000_0000_0001, 64).unwrap();
        assert_eq!(x.rotate(1).bits(), 0xC000_0000_0000_0000);
        assert_eq!(x.reverse(), x);
        assert_eq!(x.max_cyclic_run(), 62);
        assert!(x.concat(&x).is_err());
    }

    #[test]
    fn lexicographic_order_matches_bits() {
        assert!(w("-+") < w("+-"));
        assert!(w("--+") < w("-+-"));
    }

    fn word_strategy() -> impl Strategy<Value = BinaryWord> {
        (1usize..=20).prop_flat_map(|t| {
            (0u64..(1u64 << t)).prop_map(move |b| BinaryWord::from_bits(b, t).unwrap())
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(x in word_strategy()) {
            prop_assert_eq!(x.to_string().parse::<BinaryWord>().unwrap(), x);
        }

        #[test]
        fn rotation_is_a_group_action(x in word_strategy(), i in -40i64..40, j in -40i64..40) {
            prop_assert_eq!(x.rotate(i).rotate(j), x.rotate(i + j));
            prop_assert_eq!(x.rotate(x.len() as i64), x);
        }

        #[test]
        fn canonical_is_orbit_invariant(x in word_strategy(), k in 0i64..40) {
            let c = x.canonical_form();
            prop_assert_eq!(x.rotate(k).canonical_form(), c);
            prop_assert_eq!(c.canonical_form(), c);
            prop_assert!(c.is_canonical());
            prop_assert_eq!(x.rotate(k).max_cyclic_run(), x.max_cyclic_run());
        }

        #[test]
        fn root_reconstructs(x in word_strategy()) {
            let (root, e) = x.primitive_root();
            prop_assert_eq!(root.repeat(e).unwrap(), x);
            prop_assert!(root.is_primitive());
        }

        #[test]
        fn runs_round_trip(x in word_strategy()) {
            let c = runs_of(&x);
            prop_assert_eq!(c.total() as usize, x.len());
            prop_assert_eq!(from_composition(&c, x.get(0)).unwrap(), x);
            prop_assert_eq!(runs_of(&from_composition(&c, x.get(0).flip()).unwrap()), c);
        }
    }
}
