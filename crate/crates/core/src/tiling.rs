//! Self-replicating tilings of the half-line and their substitution rules.
//!
//! Every radix system tiles `ℝ⁺`: the tile of a label `s` is the closure of
//! the set of values whose decimal has integer part exactly `s`. Tiles are
//! computed exactly — the extremal completions of a label are greedy paths
//! through the prefix automaton, hence eventually periodic, so endpoints
//! live in `Q(b)`. The tiling is generated by a boundary walk: the label to
//! the right of a boundary `x` is the integer part of the Plus-variant
//! address of `x`. Expanding any tile by `B` lands exactly on tile
//! boundaries, which is what the substitution rules record.

use std::cmp::Ordering;
use std::fmt;

use crate::admissible::Variant;
use crate::binstr::{Bit, EpString, Word};
use crate::numeric::AlgebraicReal;
use crate::radix::{EncodeResult, RadixError, RadixSystem};

/// One tile: a label and an exact closed interval.
#[derive(Clone, Debug)]
pub struct Tile {
    pub label: Word,
    pub lo: AlgebraicReal,
    pub hi: AlgebraicReal,
    /// Index into the tiling's ascending length alphabet.
    pub type_id: usize,
}

impl Tile {
    pub fn length(&self) -> AlgebraicReal {
        self.hi.sub(&self.lo)
    }
}

/// A consecutive, gap-free run of tiles starting at 0.
#[derive(Clone, Debug)]
pub struct Tiling {
    tiles: Vec<Tile>,
    /// Distinct tile lengths in increasing order; `type_id` indexes here.
    lengths: Vec<AlgebraicReal>,
    names: Vec<String>,
}

impl Tiling {
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn lengths(&self) -> &[AlgebraicReal] {
        &self.lengths
    }

    /// Display names of the tile types: `1` and `B` when there are exactly
    /// two lengths in ratio `B`, otherwise `0`, `1`, `2`, … by increasing
    /// length.
    pub fn type_names(&self) -> &[String] {
        &self.names
    }

    /// The type sequence as a string, e.g. `B1BB1B1B…` or `40123…`.
    pub fn type_sequence(&self) -> String {
        self.tiles.iter().map(|t| self.names[t.type_id].as_str()).collect()
    }

    pub fn last_boundary(&self) -> &AlgebraicReal {
        &self.tiles.last().expect("tiling is nonempty").hi
    }
}

/// Errors from tiling generation and substitution derivation.
#[derive(Debug, thiserror::Error)]
pub enum TilingError {
    #[error(transparent)]
    Radix(#[from] RadixError),
    #[error("no member decimal has integer part {0}")]
    EmptyLabel(Word),
    #[error("tile for label {label} starts at {found} instead of the boundary {expected}")]
    Gap { label: Word, expected: String, found: String },
    #[error("boundary address did not close into an exact decimal")]
    BoundaryNotClosed,
    #[error(
        "not substitutive: type {type_name} expands to {first:?} at one occurrence and {second:?} at another"
    )]
    NotSubstitutive { type_name: String, first: Vec<usize>, second: Vec<usize> },
    #[error("expansion of a tile does not align with tile boundaries at {at}")]
    Misaligned { at: String },
    #[error("sample of {0} tiles leaves some type without an in-range occurrence")]
    InsufficientSample(usize),
}

/// The tile for integer-part string `s`, or `None` when no member decimal
/// has that integer part.
///
/// The endpoints are the values of the lexicographically least and greatest
/// live completions of `s` in the prefix automaton; greedy paths in a
/// finite automaton cycle, so both are exact.
pub fn tile_interval(sys: &RadixSystem, s: &Word) -> Option<Tile> {
    let aut = sys.automaton();
    let state = aut.run_from(aut.initial(), s)?;
    let min_tail = greedy_tail(sys, state, Bit::Zero);
    let max_tail = greedy_tail(sys, state, Bit::One);
    let point = s.len() as i64 - 1;
    let lo = sys.value_of_digits(&min_tail.prepend(s), point);
    let hi = sys.value_of_digits(&max_tail.prepend(s), point);
    Some(Tile { label: s.clone(), lo, hi, type_id: 0 })
}

fn greedy_tail(sys: &RadixSystem, state: usize, prefer: Bit) -> EpString {
    let aut = sys.automaton();
    let other = if prefer == Bit::One { Bit::Zero } else { Bit::One };
    let mut visited: Vec<(usize, usize)> = Vec::new(); // (state, position)
    let mut bits = Word::empty();
    let mut s = state;
    loop {
        if let Some(&(_, start)) = visited.iter().find(|&&(v, _)| v == s) {
            let pre: Word = bits.bits()[..start].iter().copied().collect();
            let per: Word = bits.bits()[start..].iter().copied().collect();
            return EpString::new(pre, per).expect("cycle is nonempty");
        }
        visited.push((s, bits.len()));
        let next = aut
            .step(s, prefer)
            .map(|t| (prefer, t))
            .or_else(|| aut.step(s, other).map(|t| (other, t)))
            .expect("live states have live successors");
        bits.push(next.0);
        s = next.1;
    }
}

/// Generates the first `count` tiles by the boundary walk.
pub fn generate_tiling(sys: &RadixSystem, count: usize) -> Result<Tiling, TilingError> {
    assert!(count >= 1);
    let zero_label = Word::new(vec![Bit::Zero]);
    let first =
        tile_interval(sys, &zero_label).ok_or(TilingError::EmptyLabel(zero_label))?;
    let mut tiles = vec![first];
    while tiles.len() < count {
        let boundary = tiles.last().unwrap().hi.clone();
        let label = match sys.encode_variant(&boundary, Variant::Plus, 4096, 0)? {
            EncodeResult::Exact(d) => d.label(),
            EncodeResult::Truncated { .. } => return Err(TilingError::BoundaryNotClosed),
        };
        let tile =
            tile_interval(sys, &label).ok_or_else(|| TilingError::EmptyLabel(label.clone()))?;
        if tile.lo.cmp(&boundary) != Ordering::Equal {
            return Err(TilingError::Gap {
                label,
                expected: boundary.to_float(8),
                found: tile.lo.to_float(8),
            });
        }
        tiles.push(tile);
    }

    // Classify types by exact length equality, then order by length.
    let mut lengths: Vec<AlgebraicReal> = Vec::new();
    let mut raw_type: Vec<usize> = Vec::new();
    for t in &tiles {
        let len = t.length();
        let idx = lengths.iter().position(|l| l.cmp(&len) == Ordering::Equal);
        match idx {
            Some(i) => raw_type.push(i),
            None => {
                lengths.push(len);
                raw_type.push(lengths.len() - 1);
            }
        }
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|&i, &j| lengths[i].cmp(&lengths[j]));
    let mut rank = vec![0usize; lengths.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let sorted_lengths: Vec<AlgebraicReal> =
        order.iter().map(|&i| lengths[i].clone()).collect();
    for (tile, &raw) in tiles.iter_mut().zip(raw_type.iter()) {
        tile.type_id = rank[raw];
    }
    let names = type_names(sys, &sorted_lengths);
    Ok(Tiling { tiles, lengths: sorted_lengths, names })
}

fn type_names(sys: &RadixSystem, lengths: &[AlgebraicReal]) -> Vec<String> {
    if lengths.len() == 2 {
        let ratio_is_base =
            lengths[0].mul(sys.big_b()).cmp(&lengths[1]) == Ordering::Equal;
        if ratio_is_base {
            return vec!["1".to_string(), "B".to_string()];
        }
    }
    (0..lengths.len()).map(|i| i.to_string()).collect()
}

/// All candidate tile lengths `π(•S^m alpha) − π(•S^n beta)` over the
/// distinct shifts of the pair, deduplicated, positive ones only,
/// increasing. The all-zero string joins the `beta` shifts: the leftmost
/// tile starts at 0, whose address is all zeros.
pub fn candidate_tile_lengths(sys: &RadixSystem) -> Vec<AlgebraicReal> {
    let alpha_shifts = sys.pair().alpha().distinct_shifts();
    let mut lower: Vec<EpString> =
        sys.pair().beta().distinct_shifts().into_iter().map(|(_, s)| s).collect();
    lower.push(EpString::zeros());
    let mut out: Vec<AlgebraicReal> = Vec::new();
    for (_, sa) in &alpha_shifts {
        let va = sys.value_of_digits(sa, -1);
        for sb in &lower {
            let vb = sys.value_of_digits(sb, -1);
            let diff = va.sub(&vb);
            if diff.sign() > 0
                && !out.iter().any(|l| l.cmp(&diff) == Ordering::Equal)
            {
                out.push(diff);
            }
        }
    }
    out.sort_by(|a, b| a.cmp(b));
    out
}

/// Observed tile lengths with multiplicities, increasing by length.
pub fn tile_lengths(tiling: &Tiling) -> Vec<(AlgebraicReal, usize)> {
    let mut counts = vec![0usize; tiling.lengths().len()];
    for t in tiling.tiles() {
        counts[t.type_id] += 1;
    }
    tiling.lengths().iter().cloned().zip(counts).collect()
}

/// A substitution system on tile types: expanding a type-`t` tile by `B`
/// covers exactly the recorded sequence of types.
#[derive(Clone, Debug)]
pub struct SubstitutionSystem {
    lengths: Vec<AlgebraicReal>,
    names: Vec<String>,
    rules: Vec<Vec<usize>>,
    axiom: usize,
}

impl SubstitutionSystem {
    pub fn lengths(&self) -> &[AlgebraicReal] {
        &self.lengths
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `rules()[t]` is the type sequence covering the `B`-expansion of a
    /// type-`t` tile.
    pub fn rules(&self) -> &[Vec<usize>] {
        &self.rules
    }

    pub fn axiom(&self) -> usize {
        self.axiom
    }

    /// Iterated rewrite of the axiom.
    pub fn expand(&self, steps: usize) -> Vec<usize> {
        let mut seq = vec![self.axiom];
        for _ in 0..steps {
            seq = seq.iter().flat_map(|&t| self.rules[t].iter().copied()).collect();
        }
        seq
    }

    pub fn sequence_string(&self, seq: &[usize]) -> String {
        seq.iter().map(|&t| self.names[t].as_str()).collect()
    }

    /// Rule table like `B<-B1 1<-B`.
    pub fn rules_string(&self) -> String {
        self.rules
            .iter()
            .enumerate()
            .map(|(t, rhs)| {
                format!(
                    "{}<-{}",
                    self.names[t],
                    rhs.iter().map(|&u| self.names[u].as_str()).collect::<String>()
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for SubstitutionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rules_string())
    }
}

/// Derives the substitution rules from a generated sample of the tiling.
///
/// Every occurrence of a type within range is expanded by `B` and read off
/// against the existing boundaries; the rule is accepted only when all
/// occurrences agree exactly.
pub fn derive_substitution(
    sys: &RadixSystem,
    sample_size: usize,
) -> Result<SubstitutionSystem, TilingError> {
    let tiling = generate_tiling(sys, sample_size)?;
    derive_substitution_from(sys, &tiling)
}

/// Same as [`derive_substitution`] but reuses an existing sample.
pub fn derive_substitution_from(
    sys: &RadixSystem,
    tiling: &Tiling,
) -> Result<SubstitutionSystem, TilingError> {
    let tiles = tiling.tiles();
    let last = tiling.last_boundary();
    let mut rules: Vec<Option<Vec<usize>>> = vec![None; tiling.lengths().len()];
    for tile in tiles {
        let elo = tile.lo.mul(sys.big_b());
        let ehi = tile.hi.mul(sys.big_b());
        if ehi.cmp(last) == Ordering::Greater {
            continue;
        }
        let Some(mut j) = find_boundary(tiles, &elo) else {
            return Err(TilingError::Misaligned { at: elo.to_float(8) });
        };
        let mut rhs = Vec::new();
        loop {
            rhs.push(tiles[j].type_id);
            match tiles[j].hi.cmp(&ehi) {
                Ordering::Equal => break,
                Ordering::Less => j += 1,
                Ordering::Greater => {
                    return Err(TilingError::Misaligned { at: ehi.to_float(8) });
                }
            }
            if j >= tiles.len() {
                return Err(TilingError::Misaligned { at: ehi.to_float(8) });
            }
        }
        match &rules[tile.type_id] {
            None => rules[tile.type_id] = Some(rhs),
            Some(existing) => {
                if existing != &rhs {
                    return Err(TilingError::NotSubstitutive {
                        type_name: tiling.type_names()[tile.type_id].clone(),
                        first: existing.clone(),
                        second: rhs,
                    });
                }
            }
        }
    }
    let mut final_rules = Vec::with_capacity(rules.len());
    for r in rules {
        match r {
            Some(r) => final_rules.push(r),
            None => return Err(TilingError::InsufficientSample(tiles.len())),
        }
    }
    Ok(SubstitutionSystem {
        lengths: tiling.lengths().to_vec(),
        names: tiling.type_names().to_vec(),
        rules: final_rules,
        axiom: tiles[0].type_id,
    })
}

fn find_boundary(tiles: &[Tile], x: &AlgebraicReal) -> Option<usize> {
    // Boundaries are increasing; binary search with exact comparison.
    let mut lo = 0usize;
    let mut hi = tiles.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        match tiles[mid].lo.cmp(x) {
            Ordering::Equal => return Some(mid),
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
        }
    }
    None
}

/// Verifies self-replication on the generated prefix: the image under
/// `x ↦ B·x` of every boundary that stays in range is again a boundary.
pub fn verify_self_replicating(sys: &RadixSystem, tiling: &Tiling) -> bool {
    let tiles = tiling.tiles();
    let last = tiling.last_boundary();
    let mut boundaries: Vec<&AlgebraicReal> = tiles.iter().map(|t| &t.lo).collect();
    boundaries.push(last);
    for x in &boundaries {
        let bx = x.mul(sys.big_b());
        if bx.cmp(last) == Ordering::Greater {
            continue;
        }
        let found = boundaries
            .binary_search_by(|probe| probe.cmp(&bx))
            .is_ok();
        if !found {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::check_admissible;
    use crate::numeric::Rat as Rational;
    use crate::radix::build;

    fn ep(s: &str) -> EpString {
        EpString::parse(s).unwrap()
    }

    fn sys(a: &str, b: &str) -> RadixSystem {
        build(&check_admissible(&ep(a), &ep(b)).unwrap(), Variant::Minus).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn tile_intervals_standard_binary() {
        let s = sys("0(1)", "1(0)");
        let t = tile_interval(&s, &w("11")).unwrap();
        assert_eq!(t.lo.is_rational(), Some(Rational::new(3.into(), 1.into())));
        assert_eq!(t.hi.is_rational(), Some(Rational::new(4.into(), 1.into())));
        let tiling = generate_tiling(&s, 4).unwrap();
        for (i, tile) in tiling.tiles().iter().enumerate() {
            assert_eq!(tile.lo.is_rational(), Some(Rational::new((i as i64).into(), 1.into())));
            assert_eq!(
                tile.hi.is_rational(),
                Some(Rational::new((i as i64 + 1).into(), 1.into()))
            );
        }
        assert!(verify_self_replicating(&s, &tiling));
    }

    #[test]
    fn golden_tile_empty_and_first_labels() {
        let s = sys("(01)", "1(0)");
        assert!(tile_interval(&s, &w("011")).is_none());
        assert!(tile_interval(&s, &w("11")).is_none());
        let tiling = generate_tiling(&s, 3).unwrap();
        let labels: Vec<String> =
            tiling.tiles().iter().map(|t| t.label.to_string()).collect();
        assert_eq!(labels, vec!["0", "1", "10"]);
        // [0,1], [1,B], [B,B+1]
        assert_eq!(tiling.tiles()[0].lo.is_rational(), Some(Rational::new(0.into(), 1.into())));
        assert_eq!(tiling.tiles()[0].hi.is_rational(), Some(Rational::new(1.into(), 1.into())));
        assert_eq!(tiling.tiles()[1].hi.cmp(s.big_b()), Ordering::Equal);
        let b_plus_1 = s.big_b().add_rat(&Rational::new(1.into(), 1.into()));
        assert_eq!(tiling.tiles()[2].hi.cmp(&b_plus_1), Ordering::Equal);
    }

    #[test]
    fn golden_type_sequence_and_substitution() {
        let s = sys("(01)", "1(0)");
        let tiling = generate_tiling(&s, 22).unwrap();
        assert_eq!(tiling.type_sequence(), "B1BB1B1BB1BB1B1BB1B1BB");
        let subst = derive_substitution(&s, 40).unwrap();
        assert_eq!(subst.rules_string(), "1<-B B<-B1");
        // Fixed point from B: B -> B1 -> B1B -> B1BB1 -> B1BB1B1B
        let seq = subst.expand(4);
        assert_eq!(subst.sequence_string(&seq), "B1BB1B1B");
        assert!(verify_self_replicating(&s, &generate_tiling(&s, 50).unwrap()));
    }

    #[test]
    fn substitution_reproduces_tiling_sequence() {
        let s = sys("(01)", "1(0)");
        let tiling = generate_tiling(&s, 60).unwrap();
        let subst = derive_substitution_from(&s, &tiling).unwrap();
        for k in 0..8 {
            let seq = subst.sequence_string(&subst.expand(k));
            let prefix: String =
                tiling.type_sequence().chars().take(seq.chars().count()).collect();
            assert_eq!(seq, prefix, "step {k}");
        }
    }

    #[test]
    fn observed_lengths_are_candidates() {
        for (a, b) in [("(01)", "1(0)"), ("(011)", "(10)"), ("(01101)", "(100)")] {
            let s = sys(a, b);
            let tiling = generate_tiling(&s, 30).unwrap();
            let candidates = candidate_tile_lengths(&s);
            for (len, _count) in tile_lengths(&tiling) {
                assert!(
                    candidates.iter().any(|c| c.cmp(&len) == Ordering::Equal),
                    "length {} of pair ({a},{b}) not in candidate set",
                    len.to_float(8)
                );
            }
        }
    }
}
