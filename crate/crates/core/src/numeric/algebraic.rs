//! Algebraic real numbers: Sturm-sequence root isolation and exact
//! arithmetic in the field `Q(b)` of a distinguished real algebraic `b`.
//!
//! A [`NumberField`] holds a square-free integer polynomial together with a
//! rational interval isolating one of its real roots, `b`. Elements are
//! polynomials in `b` with rational coefficients, reduced modulo the field
//! polynomial. Because the field polynomial need not be irreducible,
//! zero-testing and inversion refine it on demand: whenever a gcd splits off
//! the factor that vanishes at `b`, the modulus shrinks to that factor. The
//! refinement is monotone (the modulus only ever loses factors without a
//! root at `b`), so every element keeps its value.
//!
//! Sign decisions are exact: the isolating interval is bisected until the
//! element's numerator polynomial has no root inside, at which point the
//! sign at the midpoint is the sign of the value.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Int, IntPoly, Rat, RatPoly};

/// The Sturm sequence of a (square-free) integer polynomial.
fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.primitive(), p.derivative().primitive()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let r = seq[n - 2].to_rat().rem(&seq[n - 1].to_rat());
        if r.is_zero() {
            return seq;
        }
        seq.push(r.neg().primitive_int());
    }
}

fn sign_variations(seq: &[IntPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval_rat(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
/// Requires `p(lo) != 0` and `p(hi) != 0`.
pub fn count_roots_open(p: &IntPoly, lo: &Rat, hi: &Rat) -> usize {
    debug_assert!(!p.eval_rat(lo).is_zero() && !p.eval_rat(hi).is_zero());
    // Sturm's theorem needs a square-free polynomial; distinct roots agree.
    let seq = sturm_sequence(&p.square_free());
    sign_variations(&seq, lo) - sign_variations(&seq, hi)
}

/// Location of one real root.
#[derive(Clone, Debug)]
pub enum RootLoc {
    Exact(Rat),
    /// Open interval containing exactly one root; endpoints are not roots.
    Interval(Rat, Rat),
}

impl RootLoc {
    fn lower(&self) -> &Rat {
        match self {
            RootLoc::Exact(r) => r,
            RootLoc::Interval(lo, _) => lo,
        }
    }
}

/// Divisors of `|n|`, complete when `|n| <= 10^12` (trial division).
fn small_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
        if out.len() > 4096 {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Rational roots of `p` inside `(lo, hi)`, found by the rational root
/// theorem when the outer coefficients are small enough to factor.
fn rational_roots_in(p: &IntPoly, lo: &Rat, hi: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let (Some(c0), Some(cl)) = (p.coeffs().first(), p.leading()) else {
        return out;
    };
    let bound = Int::from(1_000_000_000_000u64);
    if c0.abs() > bound || cl.abs() > bound {
        return out;
    }
    if c0.is_zero() {
        // x = 0 is a root; other candidates come from the reduced polynomial.
        let zero = Rat::zero();
        if lo < &zero && &zero < hi {
            out.push(zero);
        }
        let reduced = IntPoly::from_coeffs(p.coeffs()[1..].to_vec());
        out.extend(rational_roots_in(&reduced, lo, hi));
        out.sort();
        out.dedup();
        return out;
    }
    for num in small_divisors(c0) {
        for den in small_divisors(cl) {
            for sign in [1, -1] {
                let cand = Rat::new(&num * Int::from(sign), den.clone());
                if lo < &cand && &cand < hi && p.eval_rat(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Isolates every real root of square-free `p` in `(lo, hi)`, in increasing
/// order. Rational roots are reported exactly; the remaining intervals are
/// split at the rational roots so that locations sort consistently.
pub fn isolate_roots(p: &IntPoly, lo: &Rat, hi: &Rat) -> Vec<RootLoc> {
    assert!(!p.is_zero());
    let mut p = p.primitive();
    let mut exact = Vec::new();
    for r in rational_roots_in(&p, lo, hi) {
        // Divide out (den·x - num).
        let lin = IntPoly::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
        p = p.exact_div(&lin).expect("rational root divides");
        exact.push(r);
    }
    exact.sort();
    let mut out: Vec<RootLoc> = Vec::new();
    if !p.is_zero() && p.degree().unwrap_or(0) > 0 {
        let mut cuts = vec![lo.clone()];
        cuts.extend(exact.iter().cloned());
        cuts.push(hi.clone());
        for seg in cuts.windows(2) {
            bisect_roots(&p, &seg[0], &seg[1], &mut out);
        }
    }
    out.extend(exact.into_iter().map(RootLoc::Exact));
    // An interval starting at an exact root contains a strictly larger root.
    let tiebreak = |r: &RootLoc| match r {
        RootLoc::Exact(_) => 0u8,
        RootLoc::Interval(..) => 1u8,
    };
    out.sort_by(|a, b| a.lower().cmp(b.lower()).then(tiebreak(a).cmp(&tiebreak(b))));
    out
}

fn bisect_roots(p: &IntPoly, lo: &Rat, hi: &Rat, out: &mut Vec<RootLoc>) {
    debug_assert!(!p.eval_rat(lo).is_zero() && !p.eval_rat(hi).is_zero());
    match count_roots_open(p, lo, hi) {
        0 => {}
        1 => out.push(RootLoc::Interval(lo.clone(), hi.clone())),
        _ => {
            let mut mid = (lo + hi) / Rat::from_integer(Int::from(2));
            // Nudge off a root hit (possible only for irrational-free mids,
            // but cheap to guard).
            let mut step = (hi - lo) / Rat::from_integer(Int::from(4));
            while p.eval_rat(&mid).is_zero() {
                mid += step.clone();
                step /= Rat::from_integer(Int::from(2));
            }
            bisect_roots(p, lo, &mid, out);
            bisect_roots(p, &mid, hi, out);
        }
    }
}

struct FieldInner {
    modulus: IntPoly,
    lo: Rat,
    hi: Rat,
}

/// The real algebraic field `Q(b)`.
///
/// `b` is pinned down by a square-free integer polynomial and an isolating
/// rational interval (`lo == hi` encodes a rational `b`). Interval and
/// modulus refinement are interior-mutable and monotone, so shared use is
/// safe.
pub struct NumberField {
    inner: RwLock<FieldInner>,
    generation: AtomicU64,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.read().unwrap();
        write!(f, "NumberField(b: root of {} in [{}, {}])", inner.modulus, inner.lo, inner.hi)
    }
}

/// Errors from field construction.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FieldError {
    #[error("interval [{0}, {1}] does not isolate exactly one root (found {2})")]
    NotIsolating(Rat, Rat, usize),
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
}

impl NumberField {
    /// Field with `b` the unique root of `poly` in `[lo, hi]`.
    pub fn new(poly: &IntPoly, lo: &Rat, hi: &Rat) -> Result<Arc<NumberField>, FieldError> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(FieldError::ConstantPolynomial);
        }
        let mut p = poly.square_free();
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        if lo == hi {
            if !p.eval_rat(&lo).is_zero() {
                return Err(FieldError::NotIsolating(lo.clone(), hi, 0));
            }
            return Ok(Self::rational(lo));
        }
        // Endpoint roots: either they are the root we want (degenerate to
        // rational) or we shrink past them.
        for endpoint in [&mut lo, &mut hi] {
            if p.eval_rat(endpoint).is_zero() {
                let e = endpoint.clone();
                let lin = IntPoly::from_coeffs(vec![-e.numer().clone(), e.denom().clone()]);
                while let Some(q) = p.exact_div(&lin) {
                    p = q;
                }
            }
        }
        if p.eval_rat(&lo).is_zero() || p.eval_rat(&hi).is_zero() {
            unreachable!("endpoint roots removed");
        }
        let rationals = rational_roots_in(&p, &lo, &hi);
        match count_roots_open(&p, &lo, &hi) {
            1 => {
                if let Some(r) = rationals.first() {
                    return Ok(Self::rational(r.clone()));
                }
                Ok(Arc::new(NumberField {
                    inner: RwLock::new(FieldInner { modulus: p, lo, hi }),
                    generation: AtomicU64::new(0),
                }))
            }
            n => Err(FieldError::NotIsolating(lo, hi, n)),
        }
    }

    /// The degree-one field of a rational `b`.
    pub fn rational(b: Rat) -> Arc<NumberField> {
        let modulus = IntPoly::from_coeffs(vec![-b.numer().clone(), b.denom().clone()]);
        Arc::new(NumberField {
            inner: RwLock::new(FieldInner { modulus, lo: b.clone(), hi: b }),
            generation: AtomicU64::new(0),
        })
    }

    /// Bumps on every modulus refinement; lets callers invalidate caches
    /// keyed on reduced representations.
    pub fn generation(&self) -> u64 {
        self.generation.load(AtomicOrdering::SeqCst)
    }

    pub fn modulus(&self) -> IntPoly {
        self.inner.read().unwrap().modulus.clone()
    }

    pub fn interval(&self) -> (Rat, Rat) {
        let inner = self.inner.read().unwrap();
        (inner.lo.clone(), inner.hi.clone())
    }

    pub fn degree(&self) -> usize {
        self.inner.read().unwrap().modulus.degree().unwrap_or(0)
    }

    /// The generator `b` as a field element.
    pub fn generator(self: &Arc<Self>) -> AlgebraicReal {
        let rep = self.reduce(&RatPoly::x());
        AlgebraicReal { field: Arc::clone(self), rep, defining: None }
    }

    pub fn from_rational(self: &Arc<Self>, r: Rat) -> AlgebraicReal {
        AlgebraicReal {
            field: Arc::clone(self),
            rep: RatPoly::constant(r),
            defining: None,
        }
    }

    pub fn from_rat_poly(self: &Arc<Self>, p: &RatPoly) -> AlgebraicReal {
        AlgebraicReal { field: Arc::clone(self), rep: self.reduce(p), defining: None }
    }

    fn reduce(&self, p: &RatPoly) -> RatPoly {
        let inner = self.inner.read().unwrap();
        p.rem(&inner.modulus.to_rat())
    }

    /// Halves the isolating interval once (no-op for rational fields).
    ///
    /// The interval always brackets a single simple root, so the endpoint
    /// signs differ and plain sign bisection works. A midpoint that is
    /// itself a root must be that root, collapsing the field to rational.
    fn refine_interval(&self) {
        let mut inner = self.inner.write().unwrap();
        if inner.lo == inner.hi {
            return;
        }
        let two = Rat::from_integer(Int::from(2));
        let mid = (&inner.lo + &inner.hi) / &two;
        let at_mid = inner.modulus.eval_rat(&mid);
        if at_mid.is_zero() {
            inner.lo = mid.clone();
            inner.hi = mid;
            return;
        }
        if at_mid.is_positive() == inner.modulus.eval_rat(&inner.lo).is_positive() {
            inner.lo = mid;
        } else {
            inner.hi = mid;
        }
    }

    /// Rigorous rational enclosure of `rep(b)` at the current interval
    /// precision: value at the midpoint plus a first-derivative bound.
    fn enclose_rep(&self, rep: &RatPoly) -> (Rat, Rat) {
        let (lo, hi) = self.interval();
        if lo == hi {
            let v = rep.eval(&lo);
            return (v.clone(), v);
        }
        let mid = (&lo + &hi) / Rat::from_integer(Int::from(2));
        let value = rep.eval(&mid);
        let m = lo.abs().max(hi.abs()).max(Rat::one());
        let mut deriv_bound = Rat::zero();
        let mut mpow = Rat::one();
        for (i, c) in rep.coeffs().iter().enumerate() {
            if i >= 1 {
                deriv_bound += c.abs() * Rat::from_integer(Int::from(i)) * &mpow;
                mpow *= &m;
            }
        }
        let err = deriv_bound * (&hi - &lo);
        (&value - &err, value + err)
    }

    /// Exact zero test of a reduced representation; may refine the modulus.
    fn rep_is_zero(&self, rep: &RatPoly) -> bool {
        let rep = self.reduce(rep);
        if rep.is_zero() {
            return true;
        }
        if rep.degree() == Some(0) {
            return false;
        }
        // Cheap exit: an enclosure that misses zero settles it without any
        // polynomial gcd work.
        let (elo, ehi) = self.enclose_rep(&rep);
        if elo.is_positive() || ehi.is_negative() {
            return false;
        }
        let candidate = rep.primitive_int();
        let (g, lo, hi) = {
            let inner = self.inner.read().unwrap();
            (candidate.gcd(&inner.modulus), inner.lo.clone(), inner.hi.clone())
        };
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let vanishes = if lo == hi {
            g.eval_rat(&lo).is_zero()
        } else {
            // g divides the square-free modulus, so a root of g inside the
            // isolating interval can only be b itself.
            let glo = g.eval_rat(&lo);
            let ghi = g.eval_rat(&hi);
            if glo.is_zero() || ghi.is_zero() {
                // Endpoint root of g is not b (b is interior); fall back to
                // counting on a slightly shrunk interval by refining first.
                self.refine_interval();
                return self.rep_is_zero(&rep);
            }
            count_roots_open(&g, &lo, &hi) >= 1
        };
        if vanishes {
            // b is a root of g: shrink the modulus to g.
            let mut inner = self.inner.write().unwrap();
            if inner.modulus.degree() > g.degree() {
                inner.modulus = g;
                self.generation.fetch_add(1, AtomicOrdering::SeqCst);
            }
            true
        } else {
            false
        }
    }

    /// Exact sign of a reduced representation.
    fn rep_sign(&self, rep: &RatPoly) -> i8 {
        let rep = self.reduce(rep);
        if rep.is_zero() {
            return 0;
        }
        if let Some(0) = rep.degree() {
            return if rep.coeff(0).is_positive() { 1 } else { -1 };
        }
        // A few rounds of interval refinement separate most values from
        // zero without exact work; only stubborn cases pay for the gcd.
        for attempt in 0.. {
            let (elo, ehi) = self.enclose_rep(&rep);
            if elo.is_positive() {
                return 1;
            }
            if ehi.is_negative() {
                return -1;
            }
            if attempt == 3 && self.rep_is_zero(&rep) {
                return 0;
            }
            self.refine_interval();
        }
        unreachable!()
    }
}

/// Extended Euclid over rational polynomials: returns `(g, s)` with
/// `s·a ≡ g (mod m)` and `g = gcd(a, m)` monic.
fn half_egcd(a: &RatPoly, m: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r0 = a.clone();
    let mut r1 = m.clone();
    let mut s0 = RatPoly::constant(Rat::one());
    let mut s1 = RatPoly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.is_zero() {
        return (r0, s0);
    }
    let lead = r0.leading().unwrap().clone();
    (r0.scale(&lead.recip()), s0.scale(&lead.recip()))
}

/// A real number in `Q(b)`, represented as a polynomial in the field
/// generator with rational coefficients.
///
/// Comparisons are exact. Values that are themselves roots of a known
/// integer polynomial (the base `b` and `B = 1/b`) carry that defining data
/// so they can be compared across different fields.
#[derive(Clone)]
pub struct AlgebraicReal {
    field: Arc<NumberField>,
    rep: RatPoly,
    defining: Option<Defining>,
}

#[derive(Clone, Debug)]
struct Defining {
    poly: IntPoly,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicReal {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// The reduced representation as a polynomial in `b`.
    pub fn rep(&self) -> RatPoly {
        self.field.reduce(&self.rep)
    }

    /// Canonical key for hashing orbit points: the reduced coefficient
    /// vector. Only stable while the field generation is unchanged.
    pub fn canonical_key(&self) -> Vec<Rat> {
        self.rep().coeffs().to_vec()
    }

    /// Attaches a defining polynomial with an isolating interval.
    pub fn with_defining(mut self, poly: IntPoly, lo: Rat, hi: Rat) -> AlgebraicReal {
        self.defining = Some(Defining { poly, lo, hi });
        self
    }

    /// The defining polynomial, when one is attached.
    pub fn defining_polynomial(&self) -> Option<&IntPoly> {
        self.defining.as_ref().map(|d| &d.poly)
    }

    pub fn is_rational(&self) -> Option<Rat> {
        let rep = self.rep();
        match rep.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(rep.coeff(0)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.field.rep_is_zero(&self.rep)
    }

    pub fn sign(&self) -> i8 {
        self.field.rep_sign(&self.rep)
    }

    fn assert_same_field(&self, other: &AlgebraicReal) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field),
            "operands must live in the same number field"
        );
    }

    pub fn add(&self, other: &AlgebraicReal) -> AlgebraicReal {
        self.assert_same_field(other);
        AlgebraicReal {
            field: Arc::clone(&self.field),
            rep: self.rep.add(&other.rep),
            defining: None,
        }
    }

    pub fn sub(&self, other: &AlgebraicReal) -> AlgebraicReal {
        self.assert_same_field(other);
        AlgebraicReal {
            field: Arc::clone(&self.field),
            rep: self.rep.sub(&other.rep),
            defining: None,
        }
    }

    pub fn mul(&self, other: &AlgebraicReal) -> AlgebraicReal {
        self.assert_same_field(other);
        AlgebraicReal {
            field: Arc::clone(&self.field),
            rep: self.field.reduce(&self.rep.mul(&other.rep)),
            defining: None,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> AlgebraicReal {
        AlgebraicReal {
            field: Arc::clone(&self.field),
            rep: self.rep.scale(r),
            defining: None,
        }
    }

    pub fn add_rat(&self, r: &Rat) -> AlgebraicReal {
        self.add(&self.field.from_rational(r.clone()))
    }

    /// Multiplicative inverse. Panics on zero. May refine the field modulus
    /// when the representation shares a factor with it.
    pub fn inverse(&self) -> AlgebraicReal {
        assert!(!self.is_zero(), "inverse of zero");
        loop {
            let rep = self.rep();
            let modulus = self.field.modulus().to_rat();
            let (g, s) = half_egcd(&rep, &modulus);
            if g.degree() == Some(0) {
                return AlgebraicReal {
                    field: Arc::clone(&self.field),
                    rep: self.field.reduce(&s),
                    defining: None,
                };
            }
            // Nontrivial gcd: since the value is nonzero, b is a root of
            // modulus / g. Trigger refinement through a zero test of g(b),
            // which must come back false and shrink the modulus.
            let gb = self.field.from_rat_poly(&g);
            let shrunk = gb.is_zero();
            debug_assert!(!shrunk, "nonzero element shares every factor with the modulus");
            let quotient = self
                .field
                .modulus()
                .exact_div(&g.primitive_int())
                .expect("gcd divides modulus");
            let mut inner = self.field.inner.write().unwrap();
            if inner.modulus.degree() > quotient.degree() {
                inner.modulus = quotient;
                self.field.generation.fetch_add(1, AtomicOrdering::SeqCst);
            }
        }
    }

    pub fn div(&self, other: &AlgebraicReal) -> AlgebraicReal {
        self.mul(&other.inverse())
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> AlgebraicReal {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = self.field.from_rational(Rat::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        let diff = self.sub(&self.field.from_rational(r.clone()));
        match diff.sign() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Exact comparison. Same-field values compare through a sign test;
    /// cross-field values need either a rational side or defining
    /// polynomials on both sides (equality then reduces to a shared root of
    /// the gcd inside the overlap).
    pub fn cmp(&self, other: &AlgebraicReal) -> Ordering {
        if Arc::ptr_eq(&self.field, &other.field) {
            return match self.sub(other).sign() {
                0 => Ordering::Equal,
                s if s > 0 => Ordering::Greater,
                _ => Ordering::Less,
            };
        }
        if let Some(r) = other.is_rational() {
            return self.cmp_rat(&r);
        }
        if let Some(r) = self.is_rational() {
            return other.cmp_rat(&r).reverse();
        }
        self.cmp_cross_field(other)
    }

    fn cmp_cross_field(&self, other: &AlgebraicReal) -> Ordering {
        if let (Some(a), Some(b)) = (&self.defining, &other.defining) {
            let g = a.poly.gcd(&b.poly);
            if g.degree().unwrap_or(0) >= 1 {
                // A root of g in the overlap of both isolating intervals is
                // simultaneously self and other.
                let lo = a.lo.clone().max(b.lo.clone());
                let hi = a.hi.clone().min(b.hi.clone());
                if lo < hi
                    && !g.eval_rat(&lo).is_zero()
                    && !g.eval_rat(&hi).is_zero()
                    && count_roots_open(&g, &lo, &hi) >= 1
                    && self.enclosure_contains(&lo, &hi)
                    && other.enclosure_contains(&lo, &hi)
                {
                    return Ordering::Equal;
                }
                if lo == hi && g.eval_rat(&lo).is_zero() {
                    return Ordering::Equal;
                }
            }
        }
        // Distinct values separate under refinement.
        for _ in 0..512 {
            let (alo, ahi) = self.enclosure();
            let (blo, bhi) = other.enclosure();
            if ahi < blo {
                return Ordering::Less;
            }
            if bhi < alo {
                return Ordering::Greater;
            }
            self.field.refine_interval();
            other.field.refine_interval();
        }
        panic!("cannot separate two algebraic reals; missing defining polynomials for equality")
    }

    fn enclosure_contains(&self, lo: &Rat, hi: &Rat) -> bool {
        let (mut alo, mut ahi) = self.enclosure();
        for _ in 0..64 {
            if &alo >= lo && &ahi <= hi {
                return true;
            }
            if &ahi < lo || &alo > hi {
                return false;
            }
            self.field.refine_interval();
            (alo, ahi) = self.enclosure();
        }
        false
    }

    /// A rigorous rational enclosure of the value at the field's current
    /// interval precision.
    pub fn enclosure(&self) -> (Rat, Rat) {
        let rep = self.rep();
        let (lo, hi) = self.field.interval();
        if lo == hi {
            let v = rep.eval(&lo);
            return (v.clone(), v);
        }
        let mid = (&lo + &hi) / Rat::from_integer(Int::from(2));
        let value = rep.eval(&mid);
        // |f(x) - f(mid)| <= sup|f'| · width/2, with sup|f'| bounded by
        // coefficient magnitudes at M = max(|lo|, |hi|).
        let m = lo.abs().max(hi.abs()).max(Rat::one());
        let mut deriv_bound = Rat::zero();
        let mut mpow = Rat::one();
        for (i, c) in rep.coeffs().iter().enumerate() {
            if i >= 1 {
                deriv_bound += c.abs() * Rat::from_integer(Int::from(i)) * &mpow;
                mpow *= &m;
            }
        }
        let err = deriv_bound * (&hi - &lo);
        (&value - &err, value + err)
    }

    /// Shrinks the enclosure until its width is below `eps`.
    pub fn enclosure_within(&self, eps: &Rat) -> (Rat, Rat) {
        loop {
            let (lo, hi) = self.enclosure();
            if &hi - &lo < *eps {
                return (lo, hi);
            }
            self.field.refine_interval();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let eps = Rat::new(Int::one(), Int::from(10).pow(22));
        let scale = {
            let (lo, hi) = self.enclosure_within(&Rat::one());
            lo.abs().max(hi.abs()).max(Rat::one())
        };
        let (lo, hi) = self.enclosure_within(&(eps * scale));
        let mid = (lo + hi) / Rat::from_integer(Int::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string with `digits` correct significant digits.
    pub fn to_float(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        for round in 0.. {
            let (lo, hi) = self.enclosure();
            if lo.is_positive() == hi.is_positive() && !lo.is_zero() && !hi.is_zero() {
                let a = rat_to_sig_string(&lo, digits);
                let b = rat_to_sig_string(&hi, digits);
                if a == b {
                    return a;
                }
                if round >= 64 {
                    // The enclosure may be straddling a rounding boundary
                    // that the value hits exactly; probe for that.
                    let ten = Rat::from_integer(Int::from(10));
                    let mut scale = Rat::one();
                    for _ in 0..(digits + 4) {
                        scale *= &ten;
                    }
                    let mid = (&lo + &hi) / Rat::from_integer(Int::from(2));
                    let snapped =
                        (mid * &scale + Rat::new(Int::one(), Int::from(2))).floor() / &scale;
                    if !snapped.is_zero() && self.cmp_rat(&snapped) == Ordering::Equal {
                        return rat_to_sig_string(&snapped, digits);
                    }
                }
            }
            if round > 20_000 {
                panic!("to_float failed to converge");
            }
            self.field.refine_interval();
        }
        unreachable!()
    }

    /// Renders the representation as a polynomial in `b`, e.g. `b^2+1/2`.
    pub fn rep_string(&self) -> String {
        rat_poly_in_var(&self.rep(), 'b')
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicReal({} ≈ {})", self.rep_string(), self.to_float(6))
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.defining {
            write!(f, "root of {} in [{}, {}] ≈ {}", d.poly, d.lo, d.hi, self.to_float(10))
        } else if let Some(r) = self.is_rational() {
            write!(f, "{r}")
        } else {
            write!(f, "{} ≈ {}", self.rep_string(), self.to_float(10))
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &AlgebraicReal) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &AlgebraicReal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Pretty-prints a rational polynomial in the variable `var`.
pub fn rat_poly_in_var(p: &RatPoly, var: char) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else if c.is_negative() {
            s.push('-');
        } else {
            s.push('+');
        }
        let unit = mag.is_one();
        if i == 0 {
            s.push_str(&mag.to_string());
        } else {
            if !unit {
                s.push_str(&mag.to_string());
                s.push('*');
            }
            s.push(var);
            if i > 1 {
                s.push_str(&format!("^{i}"));
            }
        }
    }
    s
}

/// Rounds `x` (nonzero) to `digits` significant digits, plain decimal form.
fn rat_to_sig_string(x: &Rat, digits: usize) -> String {
    let neg = x.is_negative();
    let x = x.abs();
    let ten = Rat::from_integer(Int::from(10));
    // e = the unique integer with 10^(e-1) <= x < 10^e.
    let mut e: i64 = 0;
    let mut scaled = x.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    let one = Rat::one();
    while scaled < one {
        scaled *= &ten;
        e -= 1;
    }
    e += 1;
    // n = round(x · 10^(digits - e)) has exactly `digits` digits (or one
    // more after a carry).
    let shift = digits as i64 - e;
    let mut scaled = x;
    match shift.cmp(&0) {
        Ordering::Greater => scaled *= Rat::from_integer(Int::from(10).pow(shift as u32)),
        Ordering::Less => scaled /= Rat::from_integer(Int::from(10).pow((-shift) as u32)),
        Ordering::Equal => {}
    }
    let n = (scaled + Rat::new(Int::one(), Int::from(2))).floor().to_integer();
    let mut digits_str = n.to_string();
    let mut e = e;
    if digits_str.len() > digits {
        // Carry (e.g. 9.99 -> 10.0): drop the trailing zero, bump exponent.
        digits_str.pop();
        e += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e <= 0 {
        out.push_str("0.");
        for _ in 0..(-e) {
            out.push('0');
        }
        out.push_str(&digits_str);
    } else if (e as usize) >= digits_str.len() {
        out.push_str(&digits_str);
        for _ in 0..(e as usize - digits_str.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits_str[..e as usize]);
        out.push('.');
        out.push_str(&digits_str[e as usize..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn sturm_counts_roots() {
        // x^2 - 2 has one root in (1, 2), none in (2, 3).
        let q = p("x^2-2");
        assert_eq!(count_roots_open(&q, &r(1, 1), &r(2, 1)), 1);
        assert_eq!(count_roots_open(&q, &r(2, 1), &r(3, 1)), 0);
        assert_eq!(count_roots_open(&q, &r(-2, 1), &r(2, 1)), 2);
    }

    #[test]
    fn isolates_rational_and_irrational_roots() {
        // (2x - 1)(x^2 - 2): roots 1/2, ±√2.
        let q = p("2x-1").mul(&p("x^2-2"));
        let roots = isolate_roots(&q, &r(0, 1), &r(2, 1));
        assert_eq!(roots.len(), 2);
        match &roots[0] {
            RootLoc::Exact(v) => assert_eq!(v, &r(1, 2)),
            other => panic!("expected exact 1/2, got {other:?}"),
        }
        match &roots[1] {
            RootLoc::Interval(lo, hi) => {
                assert!(lo < &r(15, 10) && &r(14, 10) < hi);
            }
            other => panic!("expected interval around √2, got {other:?}"),
        }
    }

    #[test]
    fn golden_field_arithmetic() {
        // b = (√5 - 1)/2, root of x^2 + x - 1 in (0.5, 0.7).
        let field = NumberField::new(&p("x^2+x-1"), &r(1, 2), &r(7, 10)).unwrap();
        let b = field.generator();
        // b^2 = 1 - b
        let lhs = b.mul(&b);
        let rhs = field.from_rational(Rat::one()).sub(&b);
        assert_eq!(lhs.cmp(&rhs), Ordering::Equal);
        // B = 1/b = b + 1
        let big = b.inverse();
        let expected = b.add_rat(&Rat::one());
        assert_eq!(big.cmp(&expected), Ordering::Equal);
        assert!(big.cmp_rat(&r(8, 5)) == Ordering::Greater);
        assert!(big.cmp_rat(&r(13, 8)) == Ordering::Less);
        assert_eq!(&big.to_float(5), "1.6180");
        assert_eq!(&b.to_float(4), "0.6180");
    }

    #[test]
    fn rational_field_degenerates_cleanly() {
        let field = NumberField::rational(r(1, 2));
        let b = field.generator();
        assert_eq!(b.is_rational(), Some(r(1, 2)));
        assert_eq!(b.inverse().is_rational(), Some(r(2, 1)));
        assert_eq!(b.pow(3).is_rational(), Some(r(1, 8)));
    }

    #[test]
    fn reducible_modulus_refines_on_zero_test() {
        // Modulus (x^2 - 2)(x^2 - 3), b = √2 isolated in (1.3, 1.5).
        let q = p("x^2-2").mul(&p("x^2-3"));
        let field = NumberField::new(&q, &r(13, 10), &r(3, 2)).unwrap();
        let b = field.generator();
        let two = field.from_rational(r(2, 1));
        // b^2 - 2 is zero; detecting that must shrink the modulus to x^2 - 2.
        assert!(b.mul(&b).sub(&two).is_zero());
        assert_eq!(field.modulus(), p("x^2-2"));
        assert!(field.generation() > 0);
    }

    #[test]
    fn significant_digit_strings() {
        assert_eq!(rat_to_sig_string(&r(13247, 10000), 5), "1.3247");
        assert_eq!(rat_to_sig_string(&r(1, 3), 4), "0.3333");
        assert_eq!(rat_to_sig_string(&r(2, 3), 4), "0.6667");
        assert_eq!(rat_to_sig_string(&r(999949, 100000), 4), "9.999");
        assert_eq!(rat_to_sig_string(&r(99999, 10000), 4), "10.00");
        assert_eq!(rat_to_sig_string(&r(-125, 100), 3), "-1.25");
        assert_eq!(rat_to_sig_string(&r(12500, 1), 3), "12500");
    }

    #[test]
    fn cross_field_comparison_with_defining_polys() {
        let f1 = NumberField::new(&p("x^2+x-1"), &r(1, 2), &r(7, 10)).unwrap();
        let f2 = NumberField::new(&p("x^2+x-1"), &r(6, 10), &r(9, 10)).unwrap();
        let b1 = f1.generator().with_defining(p("x^2+x-1"), r(1, 2), r(7, 10));
        let b2 = f2.generator().with_defining(p("x^2+x-1"), r(6, 10), r(9, 10));
        assert_eq!(b1.cmp(&b2), Ordering::Equal);
        let c = f2.generator().mul(&f2.generator()); // b^2 < b
        assert_eq!(b1.cmp(&c), Ordering::Greater);
    }
}
