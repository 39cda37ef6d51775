//! Radix systems: base and partition point, the digit-producing itinerary
//! map, exact encoding and decoding, and recovery of a pair from `(B, p)`.
//!
//! A built [`RadixSystem`] carries `b` (the least solution of the series
//! equation in `[1/2, 1)`), `B = 1/b`, and the partition point
//! `p = π_b(alpha) = π_b(beta)`, all as exact elements of `Q(b)`. Encoding
//! a nonnegative `x` finds the least `N` with `y = b^N (1-b) x < p`, then
//! reads off the itinerary of `y` under the piecewise-linear expanding map
//!
//! ```text
//! f(y) = B·y          on the left of p,
//! f(y) = B·y + 1 - B  on the right,
//! ```
//!
//! with the boundary `y = p` going left for the Minus variant and right for
//! the Plus variant. Orbits of exact inputs are watched for a revisited
//! state, which turns the digit stream into an exact eventually periodic
//! decimal.

use std::collections::HashMap;

use num_traits::One;

use crate::admissible::{
    build_automaton, check_admissible, is_null, member_decimal, AdmissiblePair, PrefixAutomaton,
    Variant, Violation,
};
use crate::binstr::{Bit, Decimal, EpString, Word};
use crate::numeric::{project, solve_base, AlgebraicReal, Base, Rat};

/// Errors from building or using a radix system.
#[derive(Debug, thiserror::Error)]
pub enum RadixError {
    #[error("null pair: the address space has zero growth rate, no radix system exists")]
    NullPair,
    #[error("projection mismatch: π_b(alpha) ≠ π_b(beta)")]
    ProjectionMismatch,
    #[error("not a member of the address space: {0}")]
    NotAMember(Decimal),
    #[error("negative input: the radix map only covers nonnegative reals")]
    NegativeInput,
    #[error("orbit not closed within {0} steps")]
    OrbitNotClosed(usize),
    #[error("base must satisfy 1 < B <= 2")]
    BaseOutOfRange,
    #[error("partition point must satisfy 1 - b <= p <= b")]
    PartitionOutOfRange,
    #[error("recovered pair fails admissibility: {0}")]
    Inadmissible(#[from] Violation),
}

/// The result of encoding a real number.
#[derive(Clone, Debug)]
pub enum EncodeResult {
    /// The orbit closed: an exact eventually periodic decimal.
    Exact(Decimal),
    /// The orbit did not close within the step budget: an exact digit
    /// prefix (integer part plus the requested number of fractional
    /// digits) with the point after position `point`.
    Truncated { bits: Word, point: i64 },
}

impl EncodeResult {
    pub fn is_truncated(&self) -> bool {
        matches!(self, EncodeResult::Truncated { .. })
    }
}

/// The two-branch expanding map together with its exact itinerary readers.
#[derive(Clone, Debug)]
pub struct ItineraryMap {
    b: AlgebraicReal,
    big_b: AlgebraicReal,
    p: AlgebraicReal,
}

impl ItineraryMap {
    /// Checks `1 < B <= 2` and `1 - b <= p <= b`.
    pub fn new(base: &Base, p: AlgebraicReal) -> Result<ItineraryMap, RadixError> {
        let b = base.b().clone();
        let half = Rat::new(1.into(), 2.into());
        if b.cmp_rat(&half) == std::cmp::Ordering::Less
            || b.cmp_rat(&Rat::one()) != std::cmp::Ordering::Less
        {
            return Err(RadixError::BaseOutOfRange);
        }
        let one_minus_b = base.field().from_rational(Rat::one()).sub(&b);
        if p.cmp(&one_minus_b) == std::cmp::Ordering::Less
            || p.cmp(&b) == std::cmp::Ordering::Greater
        {
            return Err(RadixError::PartitionOutOfRange);
        }
        Ok(ItineraryMap { big_b: b.inverse(), b, p })
    }

    pub fn b(&self) -> &AlgebraicReal {
        &self.b
    }

    pub fn big_b(&self) -> &AlgebraicReal {
        &self.big_b
    }

    pub fn partition_point(&self) -> &AlgebraicReal {
        &self.p
    }

    /// One step: emits the digit at `y` and applies the matching branch.
    /// The boundary `y = p` emits 0 (Minus) or 1 (Plus); this is exactly
    /// where the two variants part ways.
    pub fn step(&self, y: &AlgebraicReal, variant: Variant) -> (Bit, AlgebraicReal) {
        let left = match y.cmp(&self.p) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => variant == Variant::Minus,
            std::cmp::Ordering::Greater => false,
        };
        let by = self.big_b.mul(y);
        if left {
            (Bit::Zero, by)
        } else {
            // B·y + 1 - B
            let shift = self.big_b.sub(&self.big_b.field().from_rational(Rat::one()));
            (Bit::One, by.sub(&shift))
        }
    }

    /// The first `k` digits of the itinerary of `y`.
    pub fn itinerary(&self, y: &AlgebraicReal, variant: Variant, k: usize) -> Word {
        let mut out = Word::empty();
        let mut y = y.clone();
        for _ in 0..k {
            let (bit, next) = self.step(&y, variant);
            out.push(bit);
            y = next;
        }
        out
    }

    /// Runs the orbit until an exact state repeats, yielding the eventually
    /// periodic itinerary, or gives up after `max_steps`.
    ///
    /// Orbit states are hashed by their reduced representation in `Q(b)`;
    /// if a comparison refines the field modulus mid-walk (possible with a
    /// reducible field polynomial) the stored keys go stale and the walk
    /// restarts, which can happen at most `deg` times.
    pub fn itinerary_closed(
        &self,
        y: &AlgebraicReal,
        variant: Variant,
        max_steps: usize,
    ) -> Result<EpString, RadixError> {
        let field = self.b.field().clone();
        'restart: loop {
            let generation = field.generation();
            let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
            let mut bits: Vec<Bit> = Vec::new();
            let mut y = y.clone();
            loop {
                if field.generation() != generation {
                    continue 'restart;
                }
                let key = y.canonical_key();
                if let Some(&start) = seen.get(&key) {
                    let pre: Word = bits[..start].iter().copied().collect();
                    let per: Word = bits[start..].iter().copied().collect();
                    return Ok(EpString::new(pre, per).expect("period nonempty"));
                }
                if bits.len() >= max_steps {
                    return Err(RadixError::OrbitNotClosed(max_steps));
                }
                seen.insert(key, bits.len());
                let (bit, next) = self.step(&y, variant);
                bits.push(bit);
                y = next;
            }
        }
    }
}

/// A constructed binary radix system for one admissible non-null pair and
/// one variant.
#[derive(Debug)]
pub struct RadixSystem {
    pair: AdmissiblePair,
    variant: Variant,
    base: Base,
    map: ItineraryMap,
    automaton: PrefixAutomaton,
}

/// Builds the radix system: solves the base equation, computes the
/// partition point from both strings (they must agree exactly), and rejects
/// null pairs.
pub fn build(pair: &AdmissiblePair, variant: Variant) -> Result<RadixSystem, RadixError> {
    if is_null(pair) {
        return Err(RadixError::NullPair);
    }
    let base = solve_base(pair.alpha(), pair.beta()).map_err(|_| RadixError::NullPair)?;
    let p_alpha = project(&base, pair.alpha());
    let p_beta = project(&base, pair.beta());
    if p_alpha.cmp(&p_beta) != std::cmp::Ordering::Equal {
        return Err(RadixError::ProjectionMismatch);
    }
    let map = ItineraryMap::new(&base, p_alpha)?;
    let automaton = build_automaton(pair, variant);
    Ok(RadixSystem { pair: pair.clone(), variant, base, map, automaton })
}

impl RadixSystem {
    pub fn pair(&self) -> &AdmissiblePair {
        &self.pair
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn b(&self) -> &AlgebraicReal {
        self.map.b()
    }

    pub fn big_b(&self) -> &AlgebraicReal {
        self.map.big_b()
    }

    /// `p = π_b(alpha) = π_b(beta)`.
    pub fn partition_point(&self) -> &AlgebraicReal {
        self.map.partition_point()
    }

    pub fn map(&self) -> &ItineraryMap {
        &self.map
    }

    pub fn automaton(&self) -> &PrefixAutomaton {
        &self.automaton
    }

    pub fn from_rational(&self, x: &Rat) -> AlgebraicReal {
        self.base.field().from_rational(x.clone())
    }

    /// Exact value of a member decimal:
    /// `B^point · π_b(digits) / (1 - b)`.
    pub fn radix_value(&self, d: &Decimal) -> Result<AlgebraicReal, RadixError> {
        if !member_decimal(d, &self.pair, self.variant) {
            return Err(RadixError::NotAMember(d.clone()));
        }
        Ok(self.value_of_digits(d.digits(), d.point()))
    }

    /// The radix-map value without the membership check (used for closure
    /// endpoints in tilings, which need not be members of the open space).
    pub fn value_of_digits(&self, digits: &EpString, point: i64) -> AlgebraicReal {
        let pi = project(&self.base, digits);
        let one_minus_b =
            self.base.field().from_rational(Rat::one()).sub(self.map.b());
        self.map.big_b().pow(point).mul(&pi).mul(&one_minus_b.inverse())
    }

    /// Exact value of a truncated digit prefix: `Σ bits_i · B^(point - i)`.
    pub fn value_of_prefix(&self, bits: &Word, point: i64) -> AlgebraicReal {
        let field = self.base.field();
        let mut acc = field.from_rational(Rat::new(0.into(), 1.into()));
        for (i, bit) in bits.iter().enumerate() {
            if bit.is_one() {
                acc = acc.add(&self.map.big_b().pow(point - i as i64));
            }
        }
        acc
    }

    /// Encodes a nonnegative exact value into its digit expansion, using
    /// this system's variant.
    ///
    /// `max_steps` bounds the orbit-closure search (the exact path);
    /// `fraction_digits` is how many digits after the point a truncated
    /// result carries.
    pub fn encode(
        &self,
        x: &AlgebraicReal,
        max_steps: usize,
        fraction_digits: usize,
    ) -> Result<EncodeResult, RadixError> {
        self.encode_variant(x, self.variant, max_steps, fraction_digits)
    }

    /// Encoding with an explicit variant (the tiling walk needs the Plus
    /// address of a boundary regardless of the system variant).
    pub fn encode_variant(
        &self,
        x: &AlgebraicReal,
        variant: Variant,
        max_steps: usize,
        fraction_digits: usize,
    ) -> Result<EncodeResult, RadixError> {
        if x.sign() < 0 {
            return Err(RadixError::NegativeInput);
        }
        let field = self.base.field();
        let one_minus_b = field.from_rational(Rat::one()).sub(self.map.b());
        // Least N >= 0 with y = b^N (1-b) x < p.
        let mut y = one_minus_b.mul(x);
        let mut point = 0i64;
        while y.cmp(self.map.partition_point()) != std::cmp::Ordering::Less {
            y = y.mul(self.map.b());
            point += 1;
        }
        match self.map.itinerary_closed(&y, variant, max_steps) {
            Ok(digits) => Ok(EncodeResult::Exact(
                Decimal::new(digits, point).expect("valid point position"),
            )),
            Err(RadixError::OrbitNotClosed(_)) => {
                let k = point as usize + 1 + fraction_digits;
                let bits = self.map.itinerary(&y, variant, k);
                Ok(EncodeResult::Truncated { bits, point })
            }
            Err(e) => Err(e),
        }
    }

    pub fn encode_rational(
        &self,
        x: &Rat,
        max_steps: usize,
        fraction_digits: usize,
    ) -> Result<EncodeResult, RadixError> {
        self.encode(&self.from_rational(x), max_steps, fraction_digits)
    }

    /// Number of distinct length-`n` itinerary words over the invariant
    /// window `[0, B·p]`, computed exactly by pulling the partition point
    /// back through the two inverse branches `g0(x) = b·x` and
    /// `g1(x) = b·x + (1 - b)`.
    ///
    /// This is an independent oracle for the automaton prefix counts: the
    /// itineraries of `[0, B·p]` are exactly the point-stripped members of
    /// the decimal address space.
    pub fn lap_count(&self, n: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        let field = self.base.field().clone();
        'restart: loop {
            let generation = field.generation();
            let b = self.map.b();
            let p = self.map.partition_point();
            let one_minus_b = field.from_rational(Rat::one()).sub(b);
            let bp = self.map.big_b().mul(p);
            let mut all: HashMap<Vec<Rat>, AlgebraicReal> = HashMap::new();
            let mut level: Vec<AlgebraicReal> = vec![p.clone()];
            all.insert(p.canonical_key(), p.clone());
            for _ in 1..n {
                if field.generation() != generation {
                    continue 'restart;
                }
                let mut next = Vec::new();
                for q in &level {
                    let x0 = b.mul(q);
                    if x0.cmp(p) != std::cmp::Ordering::Greater {
                        if !all.contains_key(&x0.canonical_key()) {
                            all.insert(x0.canonical_key(), x0.clone());
                            next.push(x0);
                        }
                    }
                    let x1 = b.mul(q).add(&one_minus_b);
                    if x1.cmp(p) == std::cmp::Ordering::Greater
                        && x1.cmp_rat(&Rat::one()) != std::cmp::Ordering::Greater
                    {
                        if !all.contains_key(&x1.canonical_key()) {
                            all.insert(x1.canonical_key(), x1.clone());
                            next.push(x1);
                        }
                    }
                }
                level = next;
            }
            if field.generation() != generation {
                continue 'restart;
            }
            let mut cells = 1u64;
            for x in all.values() {
                if x.sign() > 0 && x.cmp(&bp) == std::cmp::Ordering::Less {
                    cells += 1;
                }
            }
            return cells;
        }
    }
}

/// Outcome of recovering an admissible pair from a base and partition
/// point.
#[derive(Clone, Debug)]
pub enum PairRecovery {
    /// Both itineraries closed: the exact, admissibility-checked pair.
    Exact(AdmissiblePair),
    /// One of the orbits did not close within the step budget.
    Truncated { alpha_prefix: Word, beta_prefix: Word },
}

/// Recovers the pair whose radix systems have base `B = 1/b` and partition
/// point `p`: `alpha` is the Minus itinerary of `p` and `beta` its Plus
/// itinerary.
pub fn pair_from_base(
    base: &Base,
    p: &AlgebraicReal,
    max_steps: usize,
) -> Result<PairRecovery, RadixError> {
    let map = ItineraryMap::new(base, p.clone())?;
    let alpha = map.itinerary_closed(p, Variant::Minus, max_steps);
    let beta = map.itinerary_closed(p, Variant::Plus, max_steps);
    match (alpha, beta) {
        (Ok(alpha), Ok(beta)) => {
            let pair = check_admissible(&alpha, &beta)?;
            Ok(PairRecovery::Exact(pair))
        }
        _ => Ok(PairRecovery::Truncated {
            alpha_prefix: map.itinerary(p, Variant::Minus, max_steps.min(256)),
            beta_prefix: map.itinerary(p, Variant::Plus, max_steps.min(256)),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::check_admissible;
    use crate::numeric::IntPoly;
    use num_traits::Zero;

    fn ep(s: &str) -> EpString {
        EpString::parse(s).unwrap()
    }

    fn sys(a: &str, b: &str, v: Variant) -> RadixSystem {
        build(&check_admissible(&ep(a), &ep(b)).unwrap(), v).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn build_standard_and_golden() {
        let s = sys("0(1)", "1(0)", Variant::Minus);
        assert_eq!(s.big_b().is_rational(), Some(rat(2, 1)));
        assert_eq!(s.partition_point().is_rational(), Some(rat(1, 2)));

        let g = sys("(01)", "1(0)", Variant::Plus);
        // p = b² for the golden system.
        let b = g.b().clone();
        assert_eq!(g.partition_point().cmp(&b.mul(&b)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn sqrt2_pair_builds() {
        // (01(10), 10(01)) is the itinerary pair of (B, p) = (√2, 1/2);
        // its address space has growth ln √2 > 0, so the build succeeds
        // (the pair is not null, whatever its usual billing).
        let s = sys("01(10)", "10(01)", Variant::Minus);
        let two = s.from_rational(&rat(2, 1));
        assert_eq!(s.big_b().mul(s.big_b()).cmp(&two), std::cmp::Ordering::Equal);
        assert_eq!(s.partition_point().is_rational(), Some(rat(1, 2)));
        // √2 is not Pisot, so most rational orbits never close; x = 1 does.
        match s.encode_rational(&Rat::one(), 4096, 64).unwrap() {
            EncodeResult::Exact(d) => {
                let back = s.radix_value(&d).unwrap();
                assert_eq!(back.cmp_rat(&Rat::one()), std::cmp::Ordering::Equal);
            }
            other => panic!("{other:?}"),
        }
        // A non-closing orbit still yields an accurate truncated expansion.
        match s.encode_rational(&rat(3, 4), 4096, 64).unwrap() {
            EncodeResult::Truncated { bits, point } => {
                let approx = s.value_of_prefix(&bits, point).to_f64();
                assert!((approx - 0.75).abs() < 1e-9);
            }
            other => panic!("expected truncation, got {other:?}"),
        }
    }

    #[test]
    fn itinerary_examples_doubling_map() {
        let base = Base::from_b_root(&IntPoly::parse("2x-1").unwrap(), &rat(1, 2), &rat(1, 2))
            .unwrap();
        let map = ItineraryMap::new(&base, base.field().from_rational(rat(1, 2))).unwrap();
        let y = base.field().from_rational(rat(7, 16));
        assert_eq!(map.itinerary(&y, Variant::Minus, 6).to_string(), "011011");
        assert_eq!(map.itinerary(&y, Variant::Plus, 6).to_string(), "011100");
        let zero = base.field().from_rational(Rat::zero());
        assert_eq!(map.itinerary(&zero, Variant::Minus, 5).to_string(), "00000");
    }

    #[test]
    fn encode_examples() {
        let minus = sys("0(1)", "1(0)", Variant::Minus);
        let plus = sys("0(1)", "1(0)", Variant::Plus);
        let seven_halves = rat(7, 2);
        match minus.encode_rational(&seven_halves, 4096, 64).unwrap() {
            EncodeResult::Exact(d) => assert_eq!(d.to_string(), "11.0(1)"),
            other => panic!("expected exact encode, got {other:?}"),
        }
        match plus.encode_rational(&seven_halves, 4096, 64).unwrap() {
            EncodeResult::Exact(d) => assert_eq!(d.to_string(), "11.1(0)"),
            other => panic!("expected exact encode, got {other:?}"),
        }

        let gm = sys("(01)", "1(0)", Variant::Minus);
        let gp = sys("(01)", "1(0)", Variant::Plus);
        match gm.encode_rational(&Rat::one(), 4096, 64).unwrap() {
            EncodeResult::Exact(d) => assert_eq!(d.to_string(), ".(10)"),
            other => panic!("{other:?}"),
        }
        match gp.encode_rational(&Rat::one(), 4096, 64).unwrap() {
            EncodeResult::Exact(d) => assert_eq!(d.to_string(), "1."),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn encode_zero() {
        for s in [sys("0(1)", "1(0)", Variant::Minus), sys("(01)", "1(0)", Variant::Plus)] {
            match s.encode_rational(&Rat::zero(), 64, 8).unwrap() {
                EncodeResult::Exact(d) => {
                    assert_eq!(d, Decimal::zero());
                    assert_eq!(d.to_string(), "0.");
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn radix_value_examples() {
        let s = sys("0(1)", "1(0)", Variant::Plus);
        let v = s.radix_value(&Decimal::parse("11.1(0)").unwrap()).unwrap();
        assert_eq!(v.is_rational(), Some(rat(7, 2)));

        let gm = sys("(01)", "1(0)", Variant::Minus);
        let v = gm.radix_value(&Decimal::parse(".(10)").unwrap()).unwrap();
        assert_eq!(v.is_rational(), Some(rat(1, 1)));

        let gp = sys("(01)", "1(0)", Variant::Plus);
        let v = gp.radix_value(&Decimal::parse("1.").unwrap()).unwrap();
        assert_eq!(v.is_rational(), Some(rat(1, 1)));
        // "1." is not a Minus member (it is the boundary address).
        assert!(gm.radix_value(&Decimal::parse("1.").unwrap()).is_err());
    }

    #[test]
    fn roundtrip_small_rationals() {
        let systems = [
            sys("0(1)", "1(0)", Variant::Minus),
            sys("(01)", "1(0)", Variant::Plus),
            sys("(011)", "(10)", Variant::Minus),
        ];
        for s in &systems {
            for num in 0..40i64 {
                let x = Rat::new(num.into(), 8.into());
                match s.encode_rational(&x, 4096, 64).unwrap() {
                    EncodeResult::Exact(d) => {
                        let back = s.radix_value(&d).unwrap();
                        assert_eq!(back.cmp_rat(&x), std::cmp::Ordering::Equal, "x = {x}");
                        assert!(member_decimal(&d, s.pair(), s.variant()));
                    }
                    EncodeResult::Truncated { bits, point } => {
                        let approx = s.value_of_prefix(&bits, point).to_f64();
                        let xf = x.numer().to_string().parse::<f64>().unwrap()
                            / x.denom().to_string().parse::<f64>().unwrap();
                        assert!((approx - xf).abs() < 1e-6, "x = {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn pair_recovery_examples() {
        // B = 2, p = 1/2.
        let base = Base::from_b_root(&IntPoly::parse("2x-1").unwrap(), &rat(1, 2), &rat(1, 2))
            .unwrap();
        let p = base.field().from_rational(rat(1, 2));
        match pair_from_base(&base, &p, 256).unwrap() {
            PairRecovery::Exact(pair) => {
                assert_eq!(pair.alpha(), &ep("0(1)"));
                assert_eq!(pair.beta(), &ep("1(0)"));
            }
            other => panic!("{other:?}"),
        }
        // Golden B, p = b².
        let base = Base::from_b_root(
            &IntPoly::parse("x^2+x-1").unwrap(),
            &rat(1, 2),
            &rat(7, 10),
        )
        .unwrap();
        let b = base.b().clone();
        let p = b.mul(&b);
        match pair_from_base(&base, &p, 256).unwrap() {
            PairRecovery::Exact(pair) => {
                assert_eq!(pair.alpha(), &ep("(01)"));
                assert_eq!(pair.beta(), &ep("1(0)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lap_counts_match_automaton_counts() {
        use crate::admissible::count_prefixes;
        let systems = [
            sys("0(1)", "1(0)", Variant::Minus),
            sys("(01)", "1(0)", Variant::Minus),
            sys("(01)", "(100)", Variant::Minus),
        ];
        for s in &systems {
            for n in 0..=10 {
                let auto = count_prefixes(s.automaton(), n).to_string();
                let laps = s.lap_count(n).to_string();
                assert_eq!(auto, laps, "pair {} n = {n}", s.pair());
            }
        }
    }
}
