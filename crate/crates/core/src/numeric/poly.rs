//! Integer and rational polynomials in one variable.
//!
//! Coefficients are stored little-endian (`coeffs[i]` multiplies `x^i`) with
//! trailing zeros trimmed; the zero polynomial has an empty coefficient
//! vector. Integer polynomials print compactly as `x^3+x^2-1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// A polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<Int>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: Int) -> IntPoly {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn x() -> IntPoly {
        IntPoly { coeffs: vec![Int::zero(), Int::one()] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> IntPoly {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = Int::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Int::from(i)).collect(),
        )
    }

    /// Gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &IntPoly) -> Option<IntPoly> {
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(other));
        if !r.is_zero() {
            return None;
        }
        q.to_int_poly()
    }

    /// Polynomial gcd, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let g = RatPoly::from_int(self).gcd(&RatPoly::from_int(other));
        g.primitive_int()
    }

    /// The square-free part `self / gcd(self, self')`, primitive.
    pub fn square_free(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.primitive()
        } else {
            self.exact_div(&g).expect("gcd divides").primitive()
        }
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_int(self)
    }

    /// Parses polynomials like `x^3+x^2-1`, `2x-1`, or `2*x - 1`.
    pub fn parse(text: &str) -> Result<IntPoly, PolyParseError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if cleaned.is_empty() {
            return Err(PolyParseError(text.to_string()));
        }
        let mut result = IntPoly::zero();
        let bytes = cleaned.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i32;
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff_txt = &cleaned[start..i];
            let has_x = i < bytes.len() && bytes[i] == b'x';
            let mut exp = 0usize;
            if has_x {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = cleaned[estart..i]
                        .parse()
                        .map_err(|_| PolyParseError(text.to_string()))?;
                }
            }
            if coeff_txt.is_empty() && !has_x {
                return Err(PolyParseError(text.to_string()));
            }
            let coeff: Int = if coeff_txt.is_empty() {
                Int::one()
            } else {
                coeff_txt.parse().map_err(|_| PolyParseError(text.to_string()))?
            };
            let term = IntPoly::constant(Int::from(sign) * coeff).mul(&IntPoly::monomial(exp));
            result = result.add(&term);
        }
        Ok(result)
    }
}

/// Error for unparseable polynomial text.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("cannot parse polynomial from {0:?}")]
pub struct PolyParseError(pub String);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// The `d`-th cyclotomic polynomial.
///
/// Computed as `(x^d - 1)` divided by the cyclotomics of the proper divisors.
pub fn cyclotomic(d: usize) -> IntPoly {
    assert!(d >= 1);
    let mut num = IntPoly::monomial(d).sub(&IntPoly::constant(Int::one()));
    for e in 1..d {
        if d % e == 0 {
            num = num.exact_div(&cyclotomic(e)).expect("cyclotomic divides x^d - 1");
        }
    }
    num
}

/// A polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> RatPoly {
        RatPoly::from_coeffs(vec![c])
    }

    pub fn x() -> RatPoly {
        RatPoly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn from_int(p: &IntPoly) -> RatPoly {
        RatPoly {
            coeffs: p.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q·other + r` and
    /// `deg r < deg other`. Panics when `other` is zero.
    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let d = other.degree().unwrap();
        let lead = other.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if !q.is_zero() {
                for (j, c) in other.coeffs.iter().enumerate() {
                    let idx = i - d + j;
                    let delta = &q * c;
                    rem[idx] = &rem[idx] - delta;
                }
            }
            quot[i - d] = q;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    pub fn rem(&self, other: &RatPoly) -> RatPoly {
        self.div_rem(other).1
    }

    /// Monic gcd via the Euclidean algorithm; zero when both inputs are zero.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading().unwrap().clone();
            a.scale(&lead.recip())
        }
    }

    /// Clears denominators and divides by the content; positive leading sign.
    pub fn primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<Int> =
            self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        IntPoly::from_coeffs(ints).primitive()
    }

    /// Converts to an integer polynomial if all coefficients are integers.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        let mut ints = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            ints.push(c.to_integer());
        }
        Some(IntPoly::from_coeffs(ints))
    }
}

/// A quotient of integer polynomials (denominator not identically zero).
///
/// Used for the closed form of the power series `Σ w_n x^n` of an eventually
/// periodic string `w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFraction {
    num: IntPoly,
    den: IntPoly,
}

impl PolyFraction {
    /// Builds `num / den`, reduced by the polynomial gcd and normalized so
    /// the denominator has positive leading coefficient.
    pub fn new(num: IntPoly, den: IntPoly) -> PolyFraction {
        assert!(!den.is_zero(), "denominator must not be identically zero");
        if num.is_zero() {
            return PolyFraction { num, den: IntPoly::constant(Int::one()) };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        PolyFraction { num, den }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.num.eval_rat(x) / self.den.eval_rat(x)
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading().unwrap().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["x^3+x^2-1", "2x-1", "x^2+x-1", "x^5+x-1", "-x+2", "7"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2*x - 1"), p("2x-1"));
        assert_eq!(p("x^2 + x - 1"), p("x^2+x-1"));
        assert!(IntPoly::parse("").is_err());
        assert!(IntPoly::parse("x+").is_err());
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("x^2+x-1");
        let b = p("x-1");
        assert_eq!(a.mul(&b), p("x^3-2x+1"));
        assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        assert_eq!(a.sub(&a), IntPoly::zero());
        assert_eq!(p("x^3-2x+1").derivative(), p("3x^2-2"));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p("x^2-1");
        let b = p("x^2-2x+1");
        assert_eq!(a.gcd(&b), p("x-1"));
        // (x-1)^2 (x+2) has square-free part (x-1)(x+2).
        let sq = p("x-1").mul(&p("x-1")).mul(&p("x+2"));
        assert_eq!(sq.square_free(), p("x-1").mul(&p("x+2")));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p("x-1"));
        assert_eq!(cyclotomic(2), p("x+1"));
        assert_eq!(cyclotomic(6), p("x^2-x+1"));
        assert_eq!(cyclotomic(5), p("x^4+x^3+x^2+x+1"));
    }

    #[test]
    fn fraction_reduces() {
        // (x^2-1)/(x-1) = x+1
        let f = PolyFraction::new(p("x^2-1"), p("x-1"));
        assert_eq!(f.numerator(), &p("x+1"));
        assert_eq!(f.denominator(), &p("1"));
    }
}
