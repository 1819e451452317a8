//! Exact arithmetic: Gaussian rationals and multivariate polynomials over them.
//!
//! Every number the engine touches is a `Scalar` (an element of Q(i)) or a
//! `PolyScalar` (a polynomial over Q(i) in the highest-weight coordinates).
//! There is no floating point anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im*i` with arbitrary-precision rational parts.
///
/// `BigRational` keeps denominators positive and in lowest terms, so the
/// representation is canonical and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate. Involutive.
    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// `i^k` for `k >= 0`.
    pub fn i_pow(k: u32) -> Scalar {
        match k % 4 {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -Scalar::one(),
            _ => -Scalar::i(),
        }
    }

    /// `(-i)^k` for `k >= 0`.
    pub fn neg_i_pow(k: u32) -> Scalar {
        Scalar::i_pow(k).conj()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_imag_part(im: &BigRational) -> String {
    let a = im.abs();
    if a.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", fmt_rational(&a))
    }
}

impl fmt::Display for Scalar {
    /// Canonical rendering: `a/b`, `c/d*i` or `a/b+c/d*i`; re-parses through
    /// the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, fmt_imag_part(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", fmt_rational(&self.re), sign, fmt_imag_part(&self.im))
    }
}

/// Exponent vector of a monomial in the weight coordinates.
pub type Exponents = Vec<u32>;

/// A polynomial over `Scalar` in `arity` commuting coordinates.
///
/// Zero coefficients are never stored; a degree-0 polynomial round-trips
/// exactly with `Scalar`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyScalar {
    arity: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl PolyScalar {
    pub fn zero(arity: usize) -> Self {
        PolyScalar { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = PolyScalar::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        PolyScalar::constant(arity, Scalar::one())
    }

    /// The coordinate polynomial `λ_j`.
    pub fn coordinate(arity: usize, j: usize) -> Self {
        assert!(j < arity, "coordinate index out of range");
        let mut exps = vec![0; arity];
        exps[j] = 1;
        let mut p = PolyScalar::zero(arity);
        p.terms.insert(exps, Scalar::one());
        p
    }

    /// Single monomial `c * λ^exps`.
    pub fn monomial(arity: usize, exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), arity);
        let mut p = PolyScalar::zero(arity);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &PolyScalar) -> PolyScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PolyScalar {
        PolyScalar {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        let mut out = PolyScalar::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PolyScalar {
        if c.is_zero() {
            return PolyScalar::zero(self.arity);
        }
        PolyScalar {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Coefficient-wise conjugation. The coordinates stand for real weight
    /// coordinates, so they are fixed.
    pub fn conj(&self) -> PolyScalar {
        PolyScalar {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, coords: &[Scalar]) -> Result<Scalar> {
        if coords.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, got: coords.len() });
        }
        let mut acc = Scalar::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &coords[j];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Exact division for univariate polynomials; `None` when the remainder
    /// is nonzero or the divisor is zero.
    pub fn div_exact_univariate(&self, rhs: &PolyScalar) -> Option<PolyScalar> {
        assert_eq!(self.arity, 1);
        assert_eq!(rhs.arity, 1);
        if rhs.is_zero() {
            return None;
        }
        let coeff = |p: &PolyScalar, d: u32| -> Scalar {
            p.terms.get(&vec![d]).cloned().unwrap_or_else(Scalar::zero)
        };
        let deg = |p: &PolyScalar| -> Option<u32> { p.terms.keys().map(|e| e[0]).max() };
        let dr = deg(rhs).unwrap();
        let lead_inv = coeff(rhs, dr).inv().unwrap();
        let mut rem = self.clone();
        let mut quo = PolyScalar::zero(1);
        while let Some(d) = deg(&rem) {
            if d < dr {
                return None;
            }
            let q = &coeff(&rem, d) * &lead_inv;
            let qmono = PolyScalar::monomial(1, vec![d - dr], q);
            rem = rem.sub(&qmono.mul(rhs));
            quo = quo.add(&qmono);
            if rem.is_zero() {
                return Some(quo);
            }
        }
        // self was zero
        Some(PolyScalar::zero(1))
    }

    /// Render with explicit coordinate names, graded-lex term order
    /// (highest degree first) so output is deterministic.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.arity);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (pos, exps) in keys.iter().enumerate() {
            let c = &self.terms[*exps];
            let mono = render_monomial(exps, names);
            push_term(&mut out, pos == 0, c, &mono);
        }
        out
    }

    /// Default coordinate names: `t` for one coordinate, `t1..tn` otherwise.
    pub fn default_names(arity: usize) -> Vec<String> {
        if arity == 1 {
            vec!["t".to_string()]
        } else {
            (1..=arity).map(|k| format!("t{k}")).collect()
        }
    }
}

fn render_monomial(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (j, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[j].clone()),
            _ => parts.push(format!("{}^{}", names[j], e)),
        }
    }
    parts.join("*")
}

/// Append `c * mono` to a sum being rendered, pulling real-negative signs out
/// of the coefficient. Shared by the polynomial and enveloping printers.
pub(crate) fn push_term(out: &mut String, first: bool, c: &Scalar, mono: &str) {
    // a coefficient is printed as negative when its real part (or, if purely
    // imaginary, its imaginary part) is negative
    let negative = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
    let abs = if negative { -c } else { c.clone() };
    let sep = match (first, negative) {
        (true, false) => "",
        (true, true) => "- ",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    out.push_str(sep);
    if mono.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mono);
    } else {
        let cs = abs.to_string();
        if cs.contains('+') || cs.contains('-') {
            out.push_str(&format!("({cs})*{mono}"));
        } else {
            out.push_str(&format!("{cs}*{mono}"));
        }
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&PolyScalar::default_names(self.arity)))
    }
}
