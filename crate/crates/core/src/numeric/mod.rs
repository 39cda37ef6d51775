//! Exact numerics: polynomials, algebraic reals, the base equation, and the
//! projection map.
//!
//! The base of a radix system is the least solution `b` in `[1/2, 1)` of
//! `Σ alpha_n x^n = Σ beta_n x^n`. Both series have closed forms as
//! rational functions (the strings are eventually periodic), so clearing
//! denominators turns the equation into an integer polynomial whose real
//! roots are isolated exactly. All later arithmetic happens in `Q(b)`.

mod algebraic;
mod poly;

pub use algebraic::{
    count_roots_open, isolate_roots, rat_poly_in_var, AlgebraicReal, FieldError, NumberField,
    RootLoc,
};
pub use poly::{cyclotomic, Int, IntPoly, PolyFraction, PolyParseError, Rat, RatPoly};

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::binstr::EpString;

/// Closed form of the power series `F(x) = Σ w_n x^n` for `|x| < 1`:
/// `F = P(x) + x^m · Q(x) / (1 - x^q)` with `m = |preperiod|`,
/// `q = |period|`, combined over a common denominator.
pub fn series_form(w: &EpString) -> PolyFraction {
    let m = w.preperiod().len();
    let q = w.period().len();
    let p_poly = IntPoly::from_coeffs(
        w.preperiod().iter().map(|b| Int::from(b.as_usize())).collect(),
    );
    let q_poly =
        IntPoly::from_coeffs(w.period().iter().map(|b| Int::from(b.as_usize())).collect());
    let den = IntPoly::constant(Int::one()).sub(&IntPoly::monomial(q));
    let num = p_poly.mul(&den).add(&q_poly.shift_up(m));
    PolyFraction::new(num, den)
}

/// The solved base of a radix system: `b` in `[1/2, 1)` with its field, and
/// `B = 1/b`.
#[derive(Clone, Debug)]
pub struct Base {
    field: Arc<NumberField>,
    b: AlgebraicReal,
    defining: IntPoly,
}

impl Base {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// The contraction ratio `b`, `1/2 <= b < 1`.
    pub fn b(&self) -> &AlgebraicReal {
        &self.b
    }

    /// The base `B = 1/b`, `1 < B <= 2`, carrying the reversed defining
    /// polynomial.
    pub fn big_b(&self) -> AlgebraicReal {
        let inv = self.b.inverse();
        let rev = IntPoly::from_coeffs(self.defining.coeffs().iter().rev().cloned().collect())
            .primitive();
        let (lo, hi) = self.field.interval();
        let (blo, bhi) = if lo == hi {
            (lo.recip(), hi.recip())
        } else {
            (hi.recip(), lo.recip())
        };
        inv.with_defining(rev, blo, bhi)
    }

    /// The polynomial whose root in the isolating interval defines `b`.
    pub fn defining_polynomial(&self) -> &IntPoly {
        &self.defining
    }

    /// Constructs a base directly from a defining polynomial and isolating
    /// interval for `b` (used when recovering pairs from a given base).
    pub fn from_b_root(poly: &IntPoly, lo: &Rat, hi: &Rat) -> Result<Base, FieldError> {
        let field = NumberField::new(poly, lo, hi)?;
        let modulus = field.modulus();
        let (flo, fhi) = field.interval();
        let b = field.generator().with_defining(modulus.clone(), flo, fhi);
        Ok(Base { field, b, defining: modulus })
    }
}

/// Error for a base equation with no solution in `[1/2, 1)`.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("the series equation of the pair has no solution in [1/2, 1)")]
pub struct NoSolution;

/// Solves `Σ alpha_n x^n = Σ beta_n x^n` for the least root in `[1/2, 1)`.
///
/// The cleared-denominator polynomial always picks up `x = 1` (and often
/// other cyclotomic junk) from the geometric-series denominators; those
/// factors have no roots in `[1/2, 1)` and are divided out before
/// isolation, which also brings the reported defining polynomial down to
/// the interesting factor.
pub fn solve_base(alpha: &EpString, beta: &EpString) -> Result<Base, NoSolution> {
    let fa = series_form(alpha);
    let fb = series_form(beta);
    let mut e = fa
        .numerator()
        .mul(fb.denominator())
        .sub(&fb.numerator().mul(fa.denominator()));
    if e.is_zero() {
        return Err(NoSolution);
    }
    e = e.square_free();
    let deg = e.degree().unwrap_or(0);
    for d in 1..=(2 * deg * deg + 6) {
        let phi = cyclotomic(d);
        if phi.degree().unwrap_or(0) > e.degree().unwrap_or(0) {
            continue;
        }
        while let Some(q) = e.exact_div(&phi) {
            if q.is_zero() || q.degree().is_none() {
                break;
            }
            e = q;
        }
        if e.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    if e.degree().unwrap_or(0) == 0 {
        return Err(NoSolution);
    }
    e = e.primitive();

    let half = Rat::new(Int::one(), Int::from(2));
    let one = Rat::one();
    if e.eval_rat(&half).is_zero() {
        // 1/2 is in the closed end of the domain and is automatically least.
        let field = NumberField::rational(half.clone());
        let defining = IntPoly::from_coeffs(vec![-Int::one(), Int::from(2)]);
        let b = field.generator().with_defining(defining.clone(), half.clone(), half);
        return Ok(Base { field, b, defining });
    }
    debug_assert!(!e.eval_rat(&one).is_zero(), "x = 1 was stripped with the cyclotomics");
    let roots = isolate_roots(&e, &half, &one);
    let Some(least) = roots.into_iter().next() else {
        return Err(NoSolution);
    };
    match least {
        RootLoc::Exact(r) => {
            let field = NumberField::rational(r.clone());
            let defining = field.modulus();
            let b = field.generator().with_defining(defining.clone(), r.clone(), r);
            Ok(Base { field, b, defining })
        }
        RootLoc::Interval(lo, hi) => {
            let field = NumberField::new(&e, &lo, &hi).expect("interval isolates one root");
            let b = field.generator().with_defining(e.clone(), lo, hi);
            Ok(Base { field, b, defining: e })
        }
    }
}

/// The projection map `π_b(w) = (1 - b) · Σ w_k b^k`, evaluated exactly in
/// `Q(b)` through the closed series form.
pub fn project(base: &Base, w: &EpString) -> AlgebraicReal {
    let f = series_form(w);
    let b = base.b();
    let num = eval_int_poly(base, f.numerator());
    let den = eval_int_poly(base, f.denominator());
    let one_minus_b = base.field().from_rational(Rat::one()).sub(b);
    one_minus_b.mul(&num).mul(&den.inverse())
}

fn eval_int_poly(base: &Base, p: &IntPoly) -> AlgebraicReal {
    let field = base.field();
    let b = base.b();
    let mut acc = field.from_rational(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(b).add_rat(&Rat::from_integer(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use std::cmp::Ordering;

    fn ep(s: &str) -> EpString {
        EpString::parse(s).unwrap()
    }

    fn ip(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn series_form_examples() {
        assert_eq!(series_form(&ep("(0)")), PolyFraction::new(IntPoly::zero(), ip("1")));
        assert_eq!(series_form(&ep("0(1)")), PolyFraction::new(ip("x"), ip("1").sub(&ip("x"))));
        assert_eq!(
            series_form(&ep("(01)")),
            PolyFraction::new(ip("x"), ip("1").sub(&ip("x^2")))
        );
    }

    #[test]
    fn series_form_matches_partial_sums() {
        let half = Rat::new(Int::from(2), Int::from(5));
        for s in ["(01)", "011(01)", "1(0)", "(01101)", "01(10)"] {
            let w = ep(s);
            let f = series_form(&w);
            let exact = f.eval_rat(&half);
            let mut partial = Rat::zero();
            let mut pow = Rat::one();
            for n in 0..64 {
                if w.bit_at(n).is_one() {
                    partial += &pow;
                }
                pow *= &half;
            }
            let err = (exact - partial).abs();
            // tail bound x^64 / (1 - x)
            let mut bound = Rat::one();
            for _ in 0..64 {
                bound *= &half;
            }
            bound /= Rat::one() - &half;
            assert!(err <= bound, "series mismatch for {s}");
        }
    }

    #[test]
    fn solve_base_standard_binary() {
        let base = solve_base(&ep("0(1)"), &ep("1(0)")).unwrap();
        assert_eq!(base.b().is_rational(), Some(Rat::new(Int::one(), Int::from(2))));
        assert_eq!(base.big_b().is_rational(), Some(Rat::from_integer(Int::from(2))));
    }

    #[test]
    fn solve_base_golden() {
        let base = solve_base(&ep("(01)"), &ep("1(0)")).unwrap();
        assert_eq!(base.defining_polynomial(), &ip("x^2+x-1"));
        let b = base.b().to_f64();
        assert!((b - 0.618_033_988_749_894_9).abs() < 1e-12);
        assert!((base.big_b().to_f64() - 1.618_033_988_749_894_9).abs() < 1e-12);
    }

    #[test]
    fn solve_base_cubic_family() {
        // Three different pairs share the root of x^3 + x^2 - 1.
        for (a, b) in [("(01000)", "1(0)"), ("(011)", "(10)"), ("(01)", "(100)")] {
            let base = solve_base(&ep(a), &ep(b)).unwrap();
            assert_eq!(base.defining_polynomial(), &ip("x^3+x^2-1"), "pair ({a}, {b})");
            assert!((base.b().to_f64() - 0.754_877_666).abs() < 1e-6);
            assert!((base.big_b().to_f64() - 1.324_717_957).abs() < 1e-6);
        }
    }

    #[test]
    fn null_pair_equation_still_has_a_root() {
        // The equation for (01(10), 10(01)) reduces to 2x^2 - 1: solving
        // succeeds even though the pair is null; nullity is a separate check.
        let base = solve_base(&ep("01(10)"), &ep("10(01)")).unwrap();
        assert_eq!(base.defining_polynomial(), &ip("2x^2-1"));
        assert!((base.b().to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn projection_endpoints() {
        let base = solve_base(&ep("(01)"), &ep("1(0)")).unwrap();
        assert!(project(&base, &ep("(0)")).is_zero());
        assert_eq!(project(&base, &ep("(1)")).is_rational(), Some(Rat::one()));
        // π_b((01)) = b² for the golden base.
        let p = project(&base, &ep("(01)"));
        let b = base.b();
        assert_eq!(p.cmp(&b.mul(b)), Ordering::Equal);
        assert!((p.to_f64() - 0.381_966_011_250_105).abs() < 1e-12);
    }

    #[test]
    fn projection_is_monotone_on_members_spotcheck() {
        let base = solve_base(&ep("(01)"), &ep("1(0)")).unwrap();
        // A few no-11 strings in increasing lexicographic order.
        let wlist = ["(0)", "(001)", "(01)", "10(010)", "(10)"];
        let vals: Vec<AlgebraicReal> =
            wlist.iter().map(|s| project(&base, &ep(s))).collect();
        for i in 1..vals.len() {
            assert_eq!(vals[i - 1].cmp(&vals[i]), Ordering::Less, "{}", wlist[i]);
        }
    }
}
