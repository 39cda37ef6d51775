//! Binary radix systems built from admissible pairs of eventually periodic
//! bit-strings.
//!
//! A pair of infinite bit-strings `(alpha, beta)` with `alpha` starting `01`
//! and `beta` starting `10`, whose shifts stay clear of the interval between
//! them, determines a positional number system with digits `{0, 1}` and a
//! real base `1 < B <= 2`. This crate constructs those systems and everything
//! around them:
//!
//! * [`binstr`] — exact algebra on eventually periodic bit-strings and
//!   decimals (normal forms, shifts, lexicographic order, factor queries,
//!   parsing and printing).
//! * [`admissible`] — admissibility checking, address-space membership,
//!   forbidden-factor derivation, and prefix-counting automata for growth
//!   rate and null detection.
//! * [`numeric`] — exact arithmetic: integer polynomials, Sturm-sequence
//!   root isolation, and algebraic reals living in the field `Q(b)`.
//! * [`radix`] — constructing the radix systems, converting reals to and
//!   from digit expansions via itineraries of a piecewise-linear map, and
//!   recovering a pair from a base and partition point.
//! * [`tiling`] — the induced self-replicating tilings of the half-line and
//!   their substitution rules.
//!
//! All values are immutable and all operations are pure (algebraic reals
//! refine a private interval cache behind a lock), so everything here is safe
//! for concurrent use.

pub mod admissible;
pub mod binstr;
pub mod numeric;
pub mod radix;
pub mod tiling;

pub use admissible::{
    build_automaton, check_admissible, derive_forbidden_set, is_null, member, member_decimal,
    AdmissiblePair, ForbiddenSet, NoFiniteSet, PrefixAutomaton, Variant, Violation,
};
pub use binstr::{Bit, Decimal, EpString, Word};
pub use numeric::{series_form, solve_base, AlgebraicReal, Base, IntPoly, NumberField, PolyFraction};
pub use radix::{pair_from_base, EncodeResult, PairRecovery, RadixSystem};
pub use tiling::{SubstitutionSystem, Tile, Tiling};
