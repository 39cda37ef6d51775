//! Exact algebra on eventually periodic bit-strings and decimals.
//!
//! An [`EpString`] is an infinite string over `{0, 1}` of the form
//! `pre · per · per · per · …`, stored in a normal form that makes equality
//! of denoted strings coincide with structural equality: the period is
//! primitive (not a power of a shorter word) and the preperiod is as short
//! as possible. A [`Decimal`] is an [`EpString`] together with a point
//! position.
//!
//! Text grammar (ASCII, parentheses play the role of an overline):
//!
//! ```text
//! EpString:  [01]* "(" [01]+ ")"            e.g.  0(1)   (01)   011(01)
//! Decimal:   [01]* "." [01]* ("(" [01]+ ")")?   e.g.  11.   1.1(0)   .(10)
//! ```
//!
//! In a decimal the parenthesised tail may be omitted only when the
//! fractional part is all zeros.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_integer::Integer as _;

/// A single binary digit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bit {
    Zero = 0,
    One = 1,
}

impl Bit {
    pub fn from_u8(v: u8) -> Option<Bit> {
        match v {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }

    pub fn is_one(self) -> bool {
        self == Bit::One
    }

    pub fn as_usize(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite (possibly empty) word of bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Word(Vec<Bit>);

impl Word {
    pub fn new(bits: Vec<Bit>) -> Word {
        Word(bits)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Parses a word from a string of `0`s and `1`s (may be empty).
    pub fn parse(text: &str) -> Result<Word, ParseError> {
        let mut bits = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(Bit::Zero),
                '1' => bits.push(Bit::One),
                _ => return Err(ParseError { pos, expected: "bit 0 or 1" }),
            }
        }
        Ok(Word(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> Bit {
        self.0[i]
    }

    pub fn push(&mut self, b: Bit) {
        self.0.push(b);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = Bit> + '_ {
        self.0.iter().copied()
    }

    /// True when `needle` occurs as a contiguous factor of `self`.
    pub fn contains_word(&self, needle: &Word) -> bool {
        if needle.is_empty() {
            return true;
        }
        if needle.len() > self.len() {
            return false;
        }
        self.0.windows(needle.len()).any(|w| w == needle.bits())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromIterator<Bit> for Word {
    fn from_iter<T: IntoIterator<Item = Bit>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// Error raised by the parsers and constructors in this module.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("syntax error at position {pos}: expected {expected}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: &'static str,
}

/// An eventually periodic infinite bit-string in normal form.
///
/// Normal form means the period is primitive and the preperiod is minimal;
/// two `EpString`s denote the same infinite string exactly when they are
/// structurally equal, so the derived `Eq`/`Hash` agree with string equality.
/// The comparison operators implement the lexicographic order on the denoted
/// infinite strings.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EpString {
    pre: Word,
    per: Word,
}

impl EpString {
    /// Builds the unique normal form of `pre · per^ω`.
    ///
    /// The period must be nonempty. Primitivity is restored by collapsing a
    /// repeated period to its root; the preperiod is shortened while its
    /// last bit agrees with the last bit of the (rotated) period.
    pub fn new(pre: Word, per: Word) -> Result<EpString, ParseError> {
        if per.is_empty() {
            return Err(ParseError { pos: 0, expected: "period must be nonempty" });
        }
        let mut pre: Vec<Bit> = pre.0;
        let mut per: Vec<Bit> = per.0;

        // Primitive root of the period.
        let n = per.len();
        for d in 1..=n {
            if n % d == 0 && per.chunks(d).all(|c| c == &per[..d]) {
                per.truncate(d);
                break;
            }
        }

        // Minimal preperiod: absorb trailing bits that match the cyclic
        // alignment of the period.
        while let Some(&last) = pre.last() {
            if last == *per.last().expect("period nonempty") {
                pre.pop();
                per.rotate_right(1);
            } else {
                break;
            }
        }

        Ok(EpString { pre: Word(pre), per: Word(per) })
    }

    /// The constant string `b b b …`.
    pub fn constant(b: Bit) -> EpString {
        EpString { pre: Word::empty(), per: Word(vec![b]) }
    }

    /// All zeros.
    pub fn zeros() -> EpString {
        EpString::constant(Bit::Zero)
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    /// The `n`-th bit of the denoted infinite string.
    pub fn bit_at(&self, n: usize) -> Bit {
        if n < self.pre.len() {
            self.pre.bit(n)
        } else {
            self.per.bit((n - self.pre.len()) % self.per.len())
        }
    }

    /// The first `n` bits as a finite word.
    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.bit_at(i)).collect()
    }

    /// Normal form of the shift `S^n`.
    pub fn shift(&self, n: usize) -> EpString {
        if n <= self.pre.len() {
            let pre = Word(self.pre.0[n..].to_vec());
            EpString::new(pre, self.per.clone()).expect("period stays nonempty")
        } else {
            let k = (n - self.pre.len()) % self.per.len();
            let mut per = self.per.0.clone();
            per.rotate_left(k);
            EpString::new(Word::empty(), Word(per)).expect("period stays nonempty")
        }
    }

    /// Prepends a finite word, returning the normal form of `w · self`.
    pub fn prepend(&self, w: &Word) -> EpString {
        EpString::new(w.concat(&self.pre), self.per.clone()).expect("period stays nonempty")
    }

    /// The set `{S^n(self) : n >= 0}` together with the least `n` realizing
    /// each element, in order of first appearance. Its size is at most
    /// `|preperiod| + |period|`.
    pub fn distinct_shifts(&self) -> Vec<(usize, EpString)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for n in 0..=(self.pre.len() + self.per.len()) {
            let s = self.shift(n);
            if seen.insert(s.clone()) {
                out.push((n, s));
            }
        }
        out
    }

    /// Number of positions after which comparison against `other` is decided:
    /// beyond `|preA| + |preB| + lcm(|perA|, |perB|)` the two strings are
    /// jointly periodic, so agreement there means agreement forever.
    fn decision_window(&self, other: &EpString) -> usize {
        self.pre.len() + other.pre.len() + self.per.len().lcm(&other.per.len())
    }

    /// Lexicographic comparison of the denoted infinite strings.
    pub fn lex_cmp(&self, other: &EpString) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let window = self.decision_window(other);
        for i in 0..window {
            match self.bit_at(i).cmp(&other.bit_at(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        // Normal forms are unique, so distinct values must differ in the window.
        unreachable!("distinct normal forms agree on their decision window");
    }

    /// True when the finite word `f` occurs as a factor. Any occurrence at
    /// all implies one starting within `|pre| + 2·|per| + |f|` positions.
    pub fn contains_factor(&self, f: &Word) -> bool {
        if f.is_empty() {
            return true;
        }
        let starts = self.pre.len() + 2 * self.per.len() + f.len();
        (0..starts).any(|s| (0..f.len()).all(|i| self.bit_at(s + i) == f.bit(i)))
    }

    /// Parses the `pre(per)` grammar.
    pub fn parse(text: &str) -> Result<EpString, ParseError> {
        let open = text
            .find('(')
            .ok_or(ParseError { pos: text.len(), expected: "'(' starting the period" })?;
        if !text.ends_with(')') || text.len() < open + 3 {
            return Err(ParseError { pos: text.len(), expected: "nonempty period ending in ')'" });
        }
        let pre = Word::parse(&text[..open])?;
        let per = Word::parse(&text[open + 1..text.len() - 1]).map_err(|e| ParseError {
            pos: e.pos + open + 1,
            expected: e.expected,
        })?;
        EpString::new(pre, per)
    }
}

impl PartialOrd for EpString {
    fn partial_cmp(&self, other: &EpString) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpString {
    fn cmp(&self, other: &EpString) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for EpString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.pre, self.per)
    }
}

/// An eventually periodic decimal: digits plus a point position.
///
/// `point = N >= 0` puts the point after digit `N`; `point = -1` puts it
/// before all digits. The canonical form has no leading zeros before the
/// point (zero itself is `digits = (0)`, `point = -1`, displayed `0.`), so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Decimal {
    digits: EpString,
    point: i64,
}

impl Decimal {
    /// Builds the canonical form: leading zeros before the point are
    /// stripped, with the point position adjusted to compensate.
    pub fn new(digits: EpString, point: i64) -> Result<Decimal, ParseError> {
        if point < -1 {
            return Err(ParseError { pos: 0, expected: "point position >= -1" });
        }
        let mut digits = digits;
        let mut point = point;
        while point >= 0 && digits.bit_at(0) == Bit::Zero {
            if digits == EpString::zeros() {
                point = -1;
                break;
            }
            digits = digits.shift(1);
            point -= 1;
        }
        Ok(Decimal { digits, point })
    }

    pub fn zero() -> Decimal {
        Decimal { digits: EpString::zeros(), point: -1 }
    }

    pub fn digits(&self) -> &EpString {
        &self.digits
    }

    pub fn point(&self) -> i64 {
        self.point
    }

    /// The digits before the point. Empty when `point = -1`.
    pub fn integer_part(&self) -> Word {
        if self.point < 0 {
            Word::empty()
        } else {
            self.digits.prefix(self.point as usize + 1)
        }
    }

    /// The tile label of this decimal: its integer part, except that an
    /// empty integer part is written as the single digit `0`.
    pub fn label(&self) -> Word {
        let w = self.integer_part();
        if w.is_empty() {
            Word(vec![Bit::Zero])
        } else {
            w
        }
    }

    /// The digits after the point, as an infinite string.
    pub fn fraction(&self) -> EpString {
        self.digits.shift((self.point + 1) as usize)
    }

    /// Lexicographic order on decimals: align the points by left-padding
    /// with zeros and compare the padded digit strings.
    pub fn lex_cmp(&self, other: &Decimal) -> Ordering {
        let shift_self = (other.point - self.point).max(0) as usize;
        let shift_other = (self.point - other.point).max(0) as usize;
        let a = self.digits.prepend(&Word(vec![Bit::Zero; shift_self]));
        let b = other.digits.prepend(&Word(vec![Bit::Zero; shift_other]));
        a.lex_cmp(&b)
    }

    /// Parses the decimal grammar `[01]* "." [01]* ("(" [01]+ ")")?`.
    ///
    /// An omitted parenthesised tail stands for repeating zeros and is only
    /// allowed when the fractional part is all zeros.
    pub fn parse(text: &str) -> Result<Decimal, ParseError> {
        let dot = text
            .find('.')
            .ok_or(ParseError { pos: text.len(), expected: "'.' in decimal" })?;
        let int_part = Word::parse(&text[..dot])?;
        let rest = &text[dot + 1..];
        let (frac_finite, per) = match rest.find('(') {
            None => {
                let w = Word::parse(rest).map_err(|e| ParseError {
                    pos: e.pos + dot + 1,
                    expected: e.expected,
                })?;
                if w.iter().any(|b| b.is_one()) {
                    return Err(ParseError {
                        pos: text.len(),
                        expected: "'(' tail (required unless the fraction is all zeros)",
                    });
                }
                (w, Word(vec![Bit::Zero]))
            }
            Some(open) => {
                if !rest.ends_with(')') || rest.len() < open + 3 {
                    return Err(ParseError {
                        pos: text.len(),
                        expected: "nonempty period ending in ')'",
                    });
                }
                let w = Word::parse(&rest[..open]).map_err(|e| ParseError {
                    pos: e.pos + dot + 1,
                    expected: e.expected,
                })?;
                let p = Word::parse(&rest[open + 1..rest.len() - 1]).map_err(|e| ParseError {
                    pos: e.pos + dot + 2 + open,
                    expected: e.expected,
                })?;
                (w, p)
            }
        };
        let pre = int_part.concat(&frac_finite);
        let point = int_part.len() as i64 - 1;
        Decimal::new(EpString::new(pre, per)?, point)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.integer_part();
        let frac = self.fraction();
        if int.is_empty() && frac == EpString::zeros() {
            return write!(f, "0.");
        }
        write!(f, "{int}.")?;
        if frac == EpString::zeros() {
            Ok(())
        } else {
            write!(f, "{}({})", frac.preperiod(), frac.period())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(s: &str) -> EpString {
        EpString::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let n = |pre, per| EpString::new(w(pre), w(per)).unwrap();
        assert_eq!(n("0", "10"), ep("0(10)"));
        // 0111… has minimal preperiod "0".
        assert_eq!(n("01", "1"), ep("0(1)"));
        // Primitivity reduction, then the preperiod absorbs into the cycle:
        // 0(1010) denotes 0101… = (01).
        assert_eq!(n("0", "1010"), ep("(01)"));
        assert_eq!(n("011", "01"), ep("01(10)"));
        assert!(EpString::new(w("0"), Word::empty()).is_err());
    }

    #[test]
    fn normal_form_is_canonical() {
        // Same denoted string, several spellings.
        for s in ["(01)", "0(10)", "01(01)", "0101(0101)"] {
            assert_eq!(ep(s), ep("(01)"), "{s}");
        }
        for n in 0..12 {
            assert_eq!(ep("0(10)").bit_at(n), ep("(01)").bit_at(n));
        }
    }

    #[test]
    fn bit_at_examples() {
        assert_eq!(ep("0(1)").bit_at(0), Bit::Zero);
        assert_eq!(ep("0(1)").bit_at(5), Bit::One);
        assert_eq!(ep("(01101)").bit_at(7), Bit::One);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ep("0(1)").shift(1), ep("(1)"));
        assert_eq!(ep("(01)").shift(1), ep("(10)"));
        assert_eq!(ep("1(0)").shift(3), ep("(0)"));
    }

    #[test]
    fn shift_composes() {
        let cases = [ep("01(10)"), ep("(01101)"), ep("1(0)"), ep("011(0110)")];
        for s in &cases {
            for n in 0..6 {
                for m in 0..6 {
                    assert_eq!(s.shift(n).shift(m), s.shift(n + m));
                }
            }
        }
    }

    #[test]
    fn lex_cmp_examples() {
        assert_eq!(ep("0(1)").lex_cmp(&ep("1(0)")), Ordering::Less);
        assert_eq!(ep("(01)").lex_cmp(&ep("(01)")), Ordering::Equal);
        assert_eq!(ep("(10)").lex_cmp(&ep("1(0)")), Ordering::Greater);
    }

    #[test]
    fn distinct_shifts_examples() {
        let shifts =
            |s: &str| ep(s).distinct_shifts().into_iter().map(|(_, e)| e).collect::<Vec<_>>();
        assert_eq!(shifts("1(0)"), vec![ep("1(0)"), ep("(0)")]);
        assert_eq!(shifts("(01)"), vec![ep("(01)"), ep("(10)")]);
        assert_eq!(shifts("01(10)"), vec![ep("01(10)"), ep("1(10)"), ep("(10)"), ep("(01)")]);
    }

    #[test]
    fn contains_factor_examples() {
        assert!(!ep("(01)").contains_factor(&w("11")));
        assert!(ep("0(1)").contains_factor(&w("11")));
        assert!(!ep("(100)").contains_factor(&w("000")));
        assert!(ep("(100)").contains_factor(&w("001")));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(ep("0(1)"), EpString::new(w("0"), w("1")).unwrap());
        for s in ["0(1)", "(01)", "011(01)", "(0)"] {
            assert_eq!(EpString::parse(s).unwrap().to_string(), ep(s).to_string());
        }
        assert!(EpString::parse("01").is_err());
        assert!(EpString::parse("0()").is_err());
        assert!(EpString::parse("0(2)").is_err());
    }

    #[test]
    fn decimal_parse_examples() {
        let d = Decimal::parse("11.0(1)").unwrap();
        assert_eq!(d.digits(), &ep("110(1)"));
        assert_eq!(d.point(), 1);
        assert_eq!(Decimal::parse(".(10)").unwrap().to_string(), ".(10)");
        assert_eq!(Decimal::parse("11.").unwrap().to_string(), "11.");
        assert_eq!(Decimal::parse("1.1(0)").unwrap().to_string(), "1.1(0)");
        // Leading zeros before the point do not change the value.
        assert_eq!(Decimal::parse("01.1(0)").unwrap(), Decimal::parse("1.1(0)").unwrap());
        assert_eq!(Decimal::parse("0.(10)").unwrap(), Decimal::parse(".(10)").unwrap());
        assert_eq!(Decimal::parse("00.").unwrap(), Decimal::zero());
        assert_eq!(Decimal::zero().to_string(), "0.");
        // A nonzero fraction must spell out its tail.
        assert!(Decimal::parse("1.1").is_err());
        assert!(Decimal::parse("11").is_err());
    }

    #[test]
    fn decimal_parts() {
        let d = Decimal::parse("110.1(0)").unwrap();
        assert_eq!(d.integer_part(), w("110"));
        assert_eq!(d.fraction(), ep("1(0)"));
        assert_eq!(d.label(), w("110"));
        assert_eq!(Decimal::parse(".(10)").unwrap().label(), w("0"));
    }

    #[test]
    fn decimal_lex_cmp_pads_zeros() {
        let a = Decimal::parse(".(10)").unwrap();
        let b = Decimal::parse("1.(0)").unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }
}
