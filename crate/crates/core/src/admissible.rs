//! Admissible pairs, address-space membership, prefix-counting automata,
//! growth rates, nullity, and forbidden-factor sets.
//!
//! A pair `(alpha, beta)` with `alpha` starting `01` and `beta` starting
//! `10` is admissible when no shift of `alpha` lands in `(alpha, beta]` and
//! no shift of `beta` lands in `[alpha, beta)`. Because shifts of eventually
//! periodic strings repeat, both conditions are decided over the finite set
//! of distinct shifts.
//!
//! Membership of a string in the Minus/Plus address space reduces to a
//! suffix test: every suffix starting with 0 must stay `<=` (Minus) or `<`
//! (Plus) `alpha`, and every suffix starting with 1 must stay `>` (Minus)
//! or `>=` (Plus) `beta`. Decimals additionally need `0·digits <= alpha`
//! (`<` for Plus), which is what makes the point position irrelevant.
//!
//! The [`PrefixAutomaton`] tracks, for each suffix of the word read so far,
//! how far it still agrees with a prefix of `alpha` (suffixes opening with
//! 0) or of `beta` (opening with 1). Agreement offsets collapse into the
//! periodic cycle, so the state set is finite. A transition dies exactly
//! when some tracked comparison resolves the wrong way. The automaton is
//! seeded as if a virtual 0 preceded the input, which builds in the decimal
//! condition `0·w <= alpha`; its accepted words of length `n` are exactly
//! the length-`n` prefixes of (point-stripped) members of the decimal
//! address space. The Minus and Plus automata have identical transition
//! structure — the two variants disagree only on strings that track `alpha`
//! or `beta` exactly forever, which no finite prefix can witness.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binstr::{Bit, Decimal, EpString, Word};

/// Which of the two address spaces (the `-`/`+` subscripts).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    Minus,
    Plus,
}

impl Variant {
    pub fn symbol(self) -> char {
        match self {
            Variant::Minus => '-',
            Variant::Plus => '+',
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Witness for a failed admissibility check.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum Violation {
    #[error("alpha must start with 01 and beta with 10")]
    BadPrefix,
    #[error("S^{shift} {string} = {witness} lands in {interval}")]
    ShiftInInterval {
        /// "alpha" or "beta".
        string: &'static str,
        shift: usize,
        witness: EpString,
        /// "(alpha, beta]" or "[alpha, beta)".
        interval: &'static str,
    },
}

/// A validated admissible pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdmissiblePair {
    alpha: EpString,
    beta: EpString,
}

impl AdmissiblePair {
    pub fn alpha(&self) -> &EpString {
        &self.alpha
    }

    pub fn beta(&self) -> &EpString {
        &self.beta
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Checks both admissibility conditions, quantified over distinct shifts.
pub fn check_admissible(alpha: &EpString, beta: &EpString) -> Result<AdmissiblePair, Violation> {
    let starts = |w: &EpString, b0, b1| w.bit_at(0) == b0 && w.bit_at(1) == b1;
    if !starts(alpha, Bit::Zero, Bit::One) || !starts(beta, Bit::One, Bit::Zero) {
        return Err(Violation::BadPrefix);
    }
    for (n, s) in alpha.distinct_shifts() {
        // S^n alpha ∉ (alpha, beta]
        if s.lex_cmp(alpha) == Ordering::Greater && s.lex_cmp(beta) != Ordering::Greater {
            return Err(Violation::ShiftInInterval {
                string: "alpha",
                shift: n,
                witness: s,
                interval: "(alpha, beta]",
            });
        }
    }
    for (n, s) in beta.distinct_shifts() {
        // S^n beta ∉ [alpha, beta)
        if s.lex_cmp(alpha) != Ordering::Less && s.lex_cmp(beta) == Ordering::Less {
            return Err(Violation::ShiftInInterval {
                string: "beta",
                shift: n,
                witness: s,
                interval: "[alpha, beta)",
            });
        }
    }
    Ok(AdmissiblePair { alpha: alpha.clone(), beta: beta.clone() })
}

/// Membership of an infinite string in `Ω_(alpha,beta,variant)`, via the
/// suffix reformulation over the finitely many distinct shifts.
pub fn member(omega: &EpString, pair: &AdmissiblePair, variant: Variant) -> bool {
    for (_, s) in omega.distinct_shifts() {
        let ok = if s.bit_at(0) == Bit::Zero {
            match variant {
                Variant::Minus => s.lex_cmp(pair.alpha()) != Ordering::Greater,
                Variant::Plus => s.lex_cmp(pair.alpha()) == Ordering::Less,
            }
        } else {
            match variant {
                Variant::Minus => s.lex_cmp(pair.beta()) == Ordering::Greater,
                Variant::Plus => s.lex_cmp(pair.beta()) != Ordering::Less,
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Membership of a decimal in `Ω•_(alpha,beta,variant)`.
///
/// The point position is irrelevant (the spaces are shift invariant); what
/// is tested is the point-stripped digit string against `Ω⁰`: ordinary
/// membership plus the leading-zero condition on `0·digits`.
pub fn member_decimal(d: &Decimal, pair: &AdmissiblePair, variant: Variant) -> bool {
    let digits = d.digits();
    if !member(digits, pair, variant) {
        return false;
    }
    let zero_prefixed = digits.prepend(&Word::new(vec![Bit::Zero]));
    match variant {
        Variant::Minus => zero_prefixed.lex_cmp(pair.alpha()) != Ordering::Greater,
        Variant::Plus => zero_prefixed.lex_cmp(pair.alpha()) == Ordering::Less,
    }
}

/// Offsets of active comparisons against one reference string, collapsed
/// into the periodic cycle. An offset `t` means: some suffix of the word
/// read so far agrees with the first `t` characters of the reference, and
/// the next input bit is compared against character `t`.
fn canon_offset(t: usize, pre: usize, per: usize) -> usize {
    let base = pre.max(1);
    let mut t = t;
    while t >= base + per {
        t -= per;
    }
    t
}

type StateKey = (Vec<u16>, Vec<u16>);

/// Deterministic automaton accepting exactly the finite prefixes of
/// (point-stripped) members of the designated decimal address space.
#[derive(Clone, Debug)]
pub struct PrefixAutomaton {
    variant: Variant,
    /// `transitions[s][bit]` — `None` is the dead sink.
    transitions: Vec<[Option<usize>; 2]>,
    live: Vec<bool>,
    initial: usize,
}

/// Builds the prefix automaton for the pair and variant.
///
/// The transition structure is identical for the two variants (they differ
/// only on infinite equality tails), so counting for the union space needs
/// no product construction.
pub fn build_automaton(pair: &AdmissiblePair, variant: Variant) -> PrefixAutomaton {
    let alpha = pair.alpha();
    let beta = pair.beta();
    let (pa, qa) = (alpha.preperiod().len(), alpha.period().len());
    let (pb, qb) = (beta.preperiod().len(), beta.period().len());

    let step = |state: &StateKey, c: Bit| -> Option<StateKey> {
        let mut next_a: Vec<u16> = Vec::new();
        let mut next_b: Vec<u16> = Vec::new();
        for &t in &state.0 {
            let expected = alpha.bit_at(t as usize);
            match c.cmp(&expected) {
                Ordering::Greater => return None, // a 0-suffix went above alpha
                Ordering::Less => {}              // resolved below: satisfied
                Ordering::Equal => next_a.push(canon_offset(t as usize + 1, pa, qa) as u16),
            }
        }
        for &t in &state.1 {
            let expected = beta.bit_at(t as usize);
            match c.cmp(&expected) {
                Ordering::Less => return None, // a 1-suffix went below beta
                Ordering::Greater => {}        // resolved above: satisfied
                Ordering::Equal => next_b.push(canon_offset(t as usize + 1, pb, qb) as u16),
            }
        }
        match c {
            Bit::Zero => next_a.push(canon_offset(1, pa, qa) as u16),
            Bit::One => next_b.push(canon_offset(1, pb, qb) as u16),
        }
        next_a.sort_unstable();
        next_a.dedup();
        next_b.sort_unstable();
        next_b.dedup();
        Some((next_a, next_b))
    };

    // Seed with a virtual leading 0: one alpha-comparison already one
    // character deep. This encodes the decimal condition 0·w ⪯ alpha.
    let initial_key: StateKey = (vec![canon_offset(1, pa, qa) as u16], vec![]);
    let mut index: HashMap<StateKey, usize> = HashMap::new();
    let mut keys: Vec<StateKey> = Vec::new();
    let mut transitions: Vec<[Option<usize>; 2]> = Vec::new();
    index.insert(initial_key.clone(), 0);
    keys.push(initial_key);
    transitions.push([None, None]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for c in [Bit::Zero, Bit::One] {
            let Some(key) = step(&keys[s], c) else { continue };
            let t = *index.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                transitions.push([None, None]);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            transitions[s][c.as_usize()] = Some(t);
        }
    }

    // Dead-state pruning to a fixpoint: live states keep an outgoing
    // transition to a live state, so accepted words extend forever.
    let mut live = vec![true; transitions.len()];
    loop {
        let mut changed = false;
        for s in 0..transitions.len() {
            if live[s]
                && !transitions[s]
                    .iter()
                    .any(|t| t.is_some_and(|t| live[t]))
            {
                live[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    PrefixAutomaton { variant, transitions, live, initial: 0 }
}

impl PrefixAutomaton {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn live_state_count(&self) -> usize {
        self.live.iter().filter(|l| **l).count()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_live(&self, s: usize) -> bool {
        self.live[s]
    }

    /// Live-to-live transition, if any.
    pub fn step(&self, s: usize, c: Bit) -> Option<usize> {
        if !self.live[s] {
            return None;
        }
        self.transitions[s][c.as_usize()].filter(|&t| self.live[t])
    }

    /// Runs a word from a state through live states.
    pub fn run_from(&self, mut s: usize, w: &Word) -> Option<usize> {
        for c in w.iter() {
            s = self.step(s, c)?;
        }
        Some(s)
    }

    /// Runs a word through the raw transition structure, ignoring liveness:
    /// true when no tracked suffix comparison resolves the wrong way.
    pub fn runs_unpruned(&self, w: &Word) -> bool {
        let mut s = self.initial;
        for c in w.iter() {
            match self.transitions[s][c.as_usize()] {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// True when `w` is a prefix of some member of the address space.
    pub fn accepts(&self, w: &Word) -> bool {
        self.run_from(self.initial, w).is_some()
    }

    /// Edge list over live states, for debugging dumps.
    pub fn edges(&self) -> Vec<(usize, Bit, usize)> {
        let mut out = Vec::new();
        for s in 0..self.transitions.len() {
            if !self.live[s] {
                continue;
            }
            for c in [Bit::Zero, Bit::One] {
                if let Some(t) = self.step(s, c) {
                    out.push((s, c, t));
                }
            }
        }
        out
    }

    /// True when `w` can occur as a factor of some accepted word.
    pub fn possible_factor(&self, w: &Word) -> bool {
        let reachable = self.reachable();
        (0..self.transitions.len())
            .filter(|&s| self.live[s] && reachable[s])
            .any(|s| self.run_from(s, w).is_some())
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.transitions.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for c in [Bit::Zero, Bit::One] {
                if let Some(t) = self.step(s, c) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }
}

/// Exact count of length-`n` accepted words, by vector–matrix iteration
/// over live states.
pub fn count_prefixes(aut: &PrefixAutomaton, n: usize) -> BigUint {
    if !aut.is_live(aut.initial()) {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut counts = vec![BigUint::zero(); aut.state_count()];
    counts[aut.initial()] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); aut.state_count()];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for bit in [Bit::Zero, Bit::One] {
                if let Some(t) = aut.step(s, bit) {
                    next[t] += c;
                }
            }
        }
        counts = next;
    }
    counts.into_iter().sum()
}

/// Strongly connected components of the reachable live subgraph
/// (iterative Tarjan).
fn live_sccs(aut: &PrefixAutomaton) -> Vec<Vec<usize>> {
    let n = aut.state_count();
    let reachable = {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        if aut.is_live(aut.initial()) {
            seen[aut.initial()] = true;
            queue.push_back(aut.initial());
        }
        while let Some(s) = queue.pop_front() {
            for c in [Bit::Zero, Bit::One] {
                if let Some(t) = aut.step(s, c) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    };
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0usize;
    let mut sccs = Vec::new();

    for root in 0..n {
        if !reachable[root] || index[root] != usize::MAX {
            continue;
        }
        // Iterative DFS frame: (state, next edge to explore).
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&(v, edge)) = call.last() {
            if edge == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let succs: Vec<usize> = [Bit::Zero, Bit::One]
                .iter()
                .filter_map(|&c| aut.step(v, c))
                .collect();
            if edge < succs.len() {
                call.last_mut().unwrap().1 += 1;
                let w = succs[edge];
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(comp);
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }
    sccs
}

/// Exponential growth rate `h = ln(spectral radius)` of the live transition
/// matrix.
///
/// Each strongly connected component is either a simple cycle (spectral
/// radius exactly 1) or has a branching vertex, in which case the Perron
/// root is bracketed by Collatz–Wielandt quotients of the aperiodic matrix
/// `A + I` until the bounds agree to 1e-12. A fully cyclic graph gives
/// exactly 0.
pub fn growth_rate(aut: &PrefixAutomaton) -> f64 {
    let mut rho_max = 1.0f64;
    for comp in live_sccs(aut) {
        if comp.len() == 1 {
            let s = comp[0];
            let selfloops = [Bit::Zero, Bit::One]
                .iter()
                .filter(|&&c| aut.step(s, c) == Some(s))
                .count();
            if selfloops <= 1 {
                continue; // trivial or a 1-cycle
            }
        }
        let pos: HashMap<usize, usize> =
            comp.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let k = comp.len();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); k];
        let mut internal_edges = 0usize;
        for (i, &s) in comp.iter().enumerate() {
            for c in [Bit::Zero, Bit::One] {
                if let Some(t) = aut.step(s, c) {
                    if let Some(&j) = pos.get(&t) {
                        rows[i].push((j, 1.0));
                        internal_edges += 1;
                    }
                }
            }
        }
        if internal_edges <= k && rows.iter().all(|r| r.len() <= 1) {
            continue; // simple cycle: spectral radius 1
        }
        // Collatz–Wielandt bounds on A + I (primitive for an SCC).
        let mut v = vec![1.0f64; k];
        let mut bounds = (1.0, f64::INFINITY);
        for _ in 0..200_000 {
            let mut w = v.clone(); // the +I part
            for (i, row) in rows.iter().enumerate() {
                for &(j, a) in row {
                    w[j] += a * v[i];
                }
            }
            // transposed iteration is fine: spectra agree
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for i in 0..k {
                let q = w[i] / v[i];
                lo = lo.min(q);
                hi = hi.max(q);
            }
            bounds = (lo, hi);
            if hi - lo < 1e-12 {
                break;
            }
            let norm = w.iter().sum::<f64>();
            for x in &mut w {
                *x /= norm;
            }
            v = w;
        }
        let rho = (bounds.0 + bounds.1) / 2.0 - 1.0;
        rho_max = rho_max.max(rho);
    }
    if rho_max <= 1.0 {
        0.0
    } else {
        rho_max.ln()
    }
}

/// Null pair test: zero exponential growth rate, decided exactly from the
/// cycle structure (every reachable live component a simple cycle).
pub fn is_null(pair: &AdmissiblePair) -> bool {
    let aut = build_automaton(pair, Variant::Minus);
    growth_rate(&aut) <= 1e-6
}

/// A verified finite forbidden-factor characterization: a word belongs to
/// the address-space prefix language iff it avoids every listed factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForbiddenSet {
    words: Vec<Word>,
    verified_to: usize,
}

impl ForbiddenSet {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Length bound the characterization was certified to. The product
    /// search is exhaustive over automaton states, so the certification in
    /// fact holds for all lengths; this records the requested bound.
    pub fn verified_to(&self) -> usize {
        self.verified_to
    }
}

impl fmt::Display for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Report for a pair whose address space needs infinitely many forbidden
/// words (possible when alpha or beta is only eventually periodic).
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub struct NoFiniteSet {
    /// The first members of the unbounded family, in the order discovered.
    pub family: Vec<Word>,
}

impl fmt::Display for NoFiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no finite forbidden set; runaway family starts ")?;
        for (i, w) in self.family.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ", …")
    }
}

/// Aho–Corasick matcher over the current forbidden set, used to walk only
/// factor-free words in the completeness search.
struct FactorMatcher {
    /// goto[state][bit]
    goto: Vec<[usize; 2]>,
    matched: Vec<bool>,
}

impl FactorMatcher {
    fn new(words: &[Word]) -> FactorMatcher {
        let mut goto: Vec<[Option<usize>; 2]> = vec![[None, None]];
        let mut matched = vec![false];
        for w in words {
            let mut s = 0usize;
            for c in w.iter() {
                let idx = c.as_usize();
                s = match goto[s][idx] {
                    Some(t) => t,
                    None => {
                        goto.push([None, None]);
                        matched.push(false);
                        let t = goto.len() - 1;
                        goto[s][idx] = Some(t);
                        t
                    }
                };
            }
            matched[s] = true;
        }
        // Failure links via BFS; convert to a total goto function and
        // propagate match flags.
        let n = goto.len();
        let mut fail = vec![0usize; n];
        let mut total: Vec<[usize; 2]> = vec![[0, 0]; n];
        let mut queue = VecDeque::new();
        for idx in 0..2 {
            match goto[0][idx] {
                Some(t) => {
                    fail[t] = 0;
                    total[0][idx] = t;
                    queue.push_back(t);
                }
                None => total[0][idx] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            if matched[fail[s]] {
                matched[s] = true;
            }
            for idx in 0..2 {
                match goto[s][idx] {
                    Some(t) => {
                        fail[t] = total[fail[s]][idx];
                        total[s][idx] = t;
                        queue.push_back(t);
                    }
                    None => total[s][idx] = total[fail[s]][idx],
                }
            }
        }
        FactorMatcher { goto: total, matched }
    }

    fn step(&self, s: usize, c: Bit) -> (usize, bool) {
        let t = self.goto[s][c.as_usize()];
        (t, self.matched[t])
    }
}

/// Derives the forbidden-factor set for the decimal address space
/// `Ω•_(alpha,beta)` of the pair.
///
/// Seed candidates come from the two strings (a forced upward continuation
/// `alpha_1 … alpha_{k-1} 1` wherever `alpha_k = 0`, a forced downward one
/// `beta_1 … beta_{k-1} 0` wherever `beta_k = 1`, over one unrolled cycle);
/// unsound candidates are dropped by an exact factor check against the
/// automaton, and completeness is restored by an exhaustive product search
/// that surfaces the shortest factor-free rejected word until none remains.
/// When that loop keeps producing words past `max_len` — which happens for
/// genuinely infinite families — the family found so far is reported as
/// [`NoFiniteSet`].
pub fn derive_forbidden_set(
    pair: &AdmissiblePair,
    max_len: usize,
) -> Result<ForbiddenSet, NoFiniteSet> {
    let aut = build_automaton(pair, Variant::Minus);
    let mut words: Vec<Word> = Vec::new();

    let push_minimal = |words: &mut Vec<Word>, w: Word| {
        if words.iter().any(|existing| w.contains_word(existing)) {
            return;
        }
        words.retain(|existing| !existing.contains_word(&w));
        words.push(w);
    };

    // Seed candidates from one unrolled cycle of each string.
    let alpha = pair.alpha();
    for k in 2..=(alpha.preperiod().len() + 2 * alpha.period().len()) {
        if alpha.bit_at(k) == Bit::Zero {
            let mut w: Word = (1..k).map(|i| alpha.bit_at(i)).collect();
            w.push(Bit::One);
            if !aut.possible_factor(&w) {
                push_minimal(&mut words, w);
            }
        }
    }
    let beta = pair.beta();
    for k in 2..=(beta.preperiod().len() + 2 * beta.period().len()) {
        if beta.bit_at(k) == Bit::One {
            let mut w: Word = (1..k).map(|i| beta.bit_at(i)).collect();
            w.push(Bit::Zero);
            if !aut.possible_factor(&w) {
                push_minimal(&mut words, w);
            }
        }
    }

    // Completeness loop: find the shortest factor-free word the automaton
    // rejects; its shortest non-factor suffix is a new forbidden word.
    loop {
        let Some(counterexample) = shortest_free_rejected(&aut, &words) else {
            words.sort_by(|a, b| (a.len(), a.bits()).cmp(&(b.len(), b.bits())));
            return Ok(ForbiddenSet { words, verified_to: max_len });
        };
        let mut new_word = None;
        for start in (0..counterexample.len()).rev() {
            let suffix: Word = counterexample.bits()[start..].iter().copied().collect();
            if !aut.possible_factor(&suffix) {
                new_word = Some(suffix);
                break;
            }
        }
        let new_word = new_word.expect("a rejected word ends in a non-factor suffix");
        if new_word.len() > max_len || words.len() > 64 {
            let mut family = words;
            family.push(new_word);
            family.sort_by(|a, b| (a.len(), a.bits()).cmp(&(b.len(), b.bits())));
            return Err(NoFiniteSet { family });
        }
        push_minimal(&mut words, new_word);
    }
}

/// BFS over (automaton state | dead) × matcher state for the shortest word
/// that avoids every forbidden factor yet is rejected by the automaton.
fn shortest_free_rejected(aut: &PrefixAutomaton, words: &[Word]) -> Option<Word> {
    let matcher = FactorMatcher::new(words);
    let mut seen = HashSet::new();
    let mut queue: VecDeque<(usize, usize, Word)> = VecDeque::new();
    queue.push_back((aut.initial(), 0, Word::empty()));
    seen.insert((aut.initial(), 0));
    while let Some((s, m, w)) = queue.pop_front() {
        for c in [Bit::Zero, Bit::One] {
            let (m2, hit) = matcher.step(m, c);
            if hit {
                continue; // word would contain a forbidden factor
            }
            let mut w2 = w.clone();
            w2.push(c);
            match aut.step(s, c) {
                None => return Some(w2),
                Some(t) => {
                    if seen.insert((t, m2)) {
                        queue.push_back((t, m2, w2));
                    }
                }
            }
        }
    }
    None
}
