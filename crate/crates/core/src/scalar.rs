//! Exact rational functions in the loop parameter `δ`.
//!
//! A [`Scalar`] is `num / den` with `num, den ∈ ℤ[δ]`, kept in canonical
//! form: `gcd(num, den)` is a unit, the leading coefficient of `den` is
//! positive and zero is `0/1`. Structural equality is therefore
//! mathematical equality.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, ascending degree, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(alloc::vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = alloc::vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `δ^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = alloc::vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        let p = self.div_scalar_exact(&c);
        if p.lead().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    /// Remainder of `self` by `b` up to a nonzero integer factor.
    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            let g = lr.gcd(&lb);
            let r_scaled = r.scale(&(&lb / &g));
            let sub = b.scale(&(&lr / &g)).shift(dr - db);
            r = &r_scaled - &sub;
        }
        r
    }

    /// Greatest common divisor in `ℤ[δ]`, positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&cont)
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide `self`
    /// in `ℤ[δ]`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree()?;
        let lb = b.lead().unwrap();
        if db == 0 {
            if self.coeffs.iter().all(|c| c.is_multiple_of(lb)) {
                return Some(self.div_scalar_exact(lb));
            }
            return None;
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (quot, rem) = r.lead().unwrap().div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            let term = Poly::monomial(quot, dr - db);
            r = &r - &(&term * b);
            q.push(term);
        }
        Some(q.into_iter().fold(Poly::zero(), |acc, t| &acc + &t))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact evaluation at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Render in ascending order with `var` as the indeterminate, e.g.
    /// `1 - 2*d + 1*d^2`.
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match e {
                0 => c.abs().to_string(),
                1 => alloc::format!("{}*{var}", c.abs()),
                _ => alloc::format!("{}*{var}^{e}", c.abs()),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Parse the output of [`Poly::display_with`]. Bare `d` and `d^e`
    /// terms (implicit unit coefficient) are accepted as well.
    pub fn parse_with(s: &str, var: char) -> Result<Poly> {
        let err = || Error::Parse(alloc::format!("bad polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !current.ends_with('^') {
                if i != 0 {
                    if current.is_empty() {
                        return Err(err());
                    }
                    terms.push((negative, core::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err());
        }
        terms.push((negative, current));

        let mut coeffs: Vec<BigInt> = Vec::new();
        for (neg, body) in terms {
            let (coef, exp) = match body.find(var) {
                None => (BigInt::from_str(&body).map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let head = &body[..pos];
                    let coef = if head.is_empty() {
                        BigInt::one()
                    } else {
                        let head = head.strip_suffix('*').ok_or_else(err)?;
                        BigInt::from_str(head).map_err(|_| err())?
                    };
                    let tail = &body[pos + var.len_utf8()..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        let e = tail.strip_prefix('^').ok_or_else(err)?;
                        e.parse::<usize>().map_err(|_| err())?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            if neg {
                coeffs[exp] -= coef;
            } else {
                coeffs[exp] += coef;
            }
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = alloc::vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('d'))
    }
}

/// Element of `ℚ(δ)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Scalar { num: Poly::constant(BigInt::from(c)), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// The loop parameter itself.
    pub fn delta() -> Self {
        Scalar::delta_pow(1)
    }

    /// `δ^k` for any integer `k`.
    pub fn delta_pow(k: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar { num: m, den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: m }
        }
    }

    /// Build `num / den` and bring it to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.lead().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Scalar { num, den }
    }

    /// Whether `(num, den)` is already canonical.
    pub fn is_canonical_pair(num: &Poly, den: &Poly) -> bool {
        if den.is_zero() {
            return false;
        }
        if num.is_zero() {
            return den.is_one();
        }
        den.lead().is_some_and(Signed::is_positive) && num.gcd(den).is_one()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is `1`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Multiply by `δ^k`.
    pub fn mul_delta_pow(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        if k > 0 {
            let num = self.num.shift(k as usize);
            if self.den.is_one() {
                Scalar { num, den: self.den.clone() }
            } else {
                Self::normalize(num, self.den.clone())
            }
        } else {
            Self::normalize(self.num.clone(), self.den.shift(k.unsigned_abs() as usize))
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        if c == 0 {
            return Scalar::zero();
        }
        let num = self.num.scale(&BigInt::from(c));
        if self.den.is_one() {
            Scalar { num, den: self.den.clone() }
        } else {
            Self::normalize(num, self.den.clone())
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Floating evaluation at `δ = delta`; errors if the denominator
    /// vanishes there (within `1e-12`).
    pub fn evaluate(&self, delta: f64) -> Result<f64> {
        let d = self.den.eval_f64(delta);
        if d.abs() < 1e-12 {
            return Err(Error::Pole { at: alloc::format!("{delta}") });
        }
        Ok(self.num.eval_f64(delta) / d)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar { num, den: Poly::one() };
            }
            return Scalar::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::normalize(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -self.num, den: self.den }
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on canonical forms; only used for deterministic
/// sorting, it has no algebraic meaning.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num.coeffs, &self.den.coeffs).cmp(&(&other.num.coeffs, &other.den.coeffs))
    }
}

fn wrap(p: &Poly) -> String {
    if p.term_count() > 1 {
        alloc::format!("({p})")
    } else {
        p.to_string()
    }
}

/// `num` when the denominator is `1`, otherwise `num/den` with multi-term
/// sides parenthesized, e.g. `(1 + 1*d)/1*d^2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse(alloc::format!("bad scalar `{s}`")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        match split {
            None => Ok(Scalar::from_poly(Poly::parse_with(strip_parens(s), 'd')?)),
            Some(i) => {
                let num = Poly::parse_with(strip_parens(&s[..i]), 'd')?;
                let den = Poly::parse_with(strip_parens(&s[i + 1..]), 'd')?;
                Scalar::new(num, den)
            }
        }
    }
}
