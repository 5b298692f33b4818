//! The exact scalar field shared by the whole crate.
//!
//! Elements are finite sums `Σ_r (a_r + b_r·i)·√r` with `a_r, b_r` exact
//! rationals and `r` ranging over squarefree positive integers (`r = 1` is the
//! rational part). The field is closed under the four arithmetic operations;
//! square roots of integers are canonicalized by pulling out the square part,
//! so every element has a unique normal form and equality is decidable by
//! structural comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

pub type Rat = BigRational;

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Gauss {
    re: Rat,
    im: Rat,
}

impl Gauss {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, other: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn inv(&self) -> Gauss {
        let norm = &self.re * &self.re + &self.im * &self.im;
        Gauss {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }
}

/// Exact element of `ℚ(i, √2, √3, √5, …)`, represented as a map from
/// squarefree radicands to Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<u64, Gauss>,
}

/// Splits `n` into `(s, r)` with `n = s²·r` and `r` squarefree.
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        while rest % (d * d) == 0 {
            rest /= d * d;
            square *= d;
        }
        d += 1;
    }
    (square, rest)
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            1,
            Gauss {
                re: Rat::zero(),
                im: Rat::one(),
            },
        );
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(
                1,
                Gauss {
                    re: r,
                    im: Rat::zero(),
                },
            );
        }
        Scalar { terms }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_re_im(re: Rat, im: Rat) -> Self {
        let mut terms = BTreeMap::new();
        let g = Gauss { re, im };
        if !g.is_zero() {
            terms.insert(1, g);
        }
        Scalar { terms }
    }

    /// `√n`, canonicalized: `√12 = 2·√3`, `√9 = 3`, `√0 = 0`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Scalar::zero();
        }
        let (s, r) = squarefree_split(n);
        let mut terms = BTreeMap::new();
        terms.insert(
            r,
            Gauss {
                re: Rat::from_integer(BigInt::from(s)),
                im: Rat::zero(),
            },
        );
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// True when the value lies in ℚ(i) (no genuine radicals).
    pub fn is_gaussian_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    /// The rational part, if the value is a plain real rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(g) = self.terms.get(&1) {
                if g.im.is_zero() {
                    return Some(g.re.clone());
                }
            }
        }
        None
    }

    pub fn conj(&self) -> Scalar {
        let terms = self
            .terms
            .iter()
            .map(|(&r, g)| {
                (
                    r,
                    Gauss {
                        re: g.re.clone(),
                        im: -g.im.clone(),
                    },
                )
            })
            .collect();
        Scalar { terms }
    }

    fn insert_term(terms: &mut BTreeMap<u64, Gauss>, rad: u64, g: Gauss) {
        if g.is_zero() {
            return;
        }
        match terms.entry(rad) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(g);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let cur = e.get_mut();
                cur.re += g.re;
                cur.im += g.im;
                if cur.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        // Base case: no radicals.
        if self.is_gaussian_rational() {
            let g = self.terms.get(&1).unwrap().inv();
            let mut terms = BTreeMap::new();
            terms.insert(1, g);
            return Some(Scalar { terms });
        }
        // Pick a prime dividing some radicand and rationalize it away:
        // write self = a + √p·b, multiply by the conjugate a − √p·b.
        let p = self
            .terms
            .keys()
            .filter(|&&r| r > 1)
            .map(|&r| smallest_prime_factor(r))
            .min()
            .unwrap();
        let mut a = Scalar::zero();
        let mut b = Scalar::zero();
        for (&r, g) in &self.terms {
            if r % p == 0 {
                Scalar::insert_term(&mut b.terms, r / p, g.clone());
            } else {
                Scalar::insert_term(&mut a.terms, r, g.clone());
            }
        }
        let sqrt_p = Scalar::sqrt_int(p);
        let conjugate = &a - &(&sqrt_p * &b);
        let denom = self * &conjugate;
        debug_assert!(denom.terms.keys().all(|&r| r % p != 0));
        Some(&conjugate * &denom.inv().expect("nonzero by field axioms"))
    }

    /// Exact division by a nonzero integer (the common case in the solvers).
    pub fn div_int(&self, d: i64) -> Scalar {
        assert!(d != 0, "division by zero");
        let inv = Scalar::from_rat(Rat::new(BigInt::one(), BigInt::from(d)));
        self * &inv
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&r, g) in &self.terms {
            let w = (r as f64).sqrt();
            re += g.re.to_f64().unwrap_or(f64::NAN) * w;
            im += g.im.to_f64().unwrap_or(f64::NAN) * w;
        }
        num_complex::Complex64::new(re, im)
    }

    /// Canonical string of the real part, e.g. `"3/4"`, `"1/2*sqrt2"`,
    /// `"1-1/2*sqrt2"`. Used by the document format; `parse_real` inverts it.
    pub fn re_string(&self) -> String {
        format_radical_sum(self.terms.iter().map(|(&r, g)| (r, g.re.clone())))
    }

    /// Canonical string of the imaginary part.
    pub fn im_string(&self) -> String {
        format_radical_sum(self.terms.iter().map(|(&r, g)| (r, g.im.clone())))
    }

    /// Parses the canonical radical-sum format of `re_string`/`im_string`.
    pub fn parse_real(s: &str) -> Result<Scalar, Error> {
        let parts = parse_radical_sum(s)?;
        let mut out = Scalar::zero();
        for (rad, q) in parts {
            // Canonicalize radicands that arrive in non-squarefree form.
            let term = &Scalar::sqrt_int(rad) * &Scalar::from_rat(q);
            out += &term;
        }
        Ok(out)
    }

    /// Rebuilds a scalar from its `(re_string, im_string)` pair.
    pub fn from_re_im_strings(re: &str, im: &str) -> Result<Scalar, Error> {
        let re = Scalar::parse_real(re)?;
        let im = Scalar::parse_real(im)?;
        Ok(&re + &(&Scalar::i() * &im))
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_radical_sum(parts: impl Iterator<Item = (u64, Rat)>) -> String {
    let mut out = String::new();
    for (rad, q) in parts {
        if q.is_zero() {
            continue;
        }
        let mag = q.abs();
        let body = if rad == 1 {
            format_rat(&mag)
        } else {
            format!("{}*sqrt{}", format_rat(&mag), rad)
        };
        if out.is_empty() {
            if q.is_negative() {
                out.push('-');
            }
        } else if q.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_radical_sum(s: &str) -> Result<Vec<(u64, Rat)>, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar string".into()));
    }
    let bad = |msg: &str| Error::Parse(format!("bad scalar string {s:?}: {msg}"));
    let mut parts = Vec::new();
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut sign = 1i64;
    if bytes[0] == b'+' {
        pos = 1;
    } else if bytes[0] == b'-' {
        sign = -1;
        pos = 1;
    }
    while pos < bytes.len() {
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        let (rat_str, rad) = match term.split_once("*sqrt") {
            Some((r, n)) => {
                let rad: u64 = n.parse().map_err(|_| bad("invalid radicand"))?;
                if rad == 0 {
                    return Err(bad("radicand must be positive"));
                }
                (r, rad)
            }
            None => (term, 1),
        };
        let q = parse_rat(rat_str).ok_or_else(|| bad("invalid rational"))?;
        parts.push((rad, if sign < 0 { -q } else { q }));
        if pos < bytes.len() {
            sign = if bytes[pos] == b'-' { -1 } else { 1 };
            pos += 1;
            if pos == bytes.len() {
                return Err(bad("dangling sign"));
            }
        }
    }
    Ok(parts)
}

fn parse_rat(s: &str) -> Option<Rat> {
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(BigInt::from_str(s).ok()?)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re_string();
        let im = self.im_string();
        if im == "0" {
            write!(f, "{re}")
        } else if re == "0" {
            write!(f, "({im})*i")
        } else {
            write!(f, "{re}+({im})*i")
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (&r, g) in &rhs.terms {
            Scalar::insert_term(&mut terms, r, g.clone());
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self
            .terms
            .iter()
            .map(|(&r, g)| {
                (
                    r,
                    Gauss {
                        re: -g.re.clone(),
                        im: -g.im.clone(),
                    },
                )
            })
            .collect();
        Scalar { terms }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (&r1, g1) in &self.terms {
            for (&r2, g2) in &rhs.terms {
                // √r1·√r2 = g·√(r1' r2') with r1 = g r1', r2 = g r2'.
                let g = gcd(r1, r2);
                let rad = (r1 / g) * (r2 / g);
                let mut coeff = g1.mul(g2);
                if g > 1 {
                    let gr = Rat::from_integer(BigInt::from(g));
                    coeff.re *= &gr;
                    coeff.im *= &gr;
                }
                Scalar::insert_term(&mut terms, rad, coeff);
            }
        }
        Scalar { terms }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&r, g) in &rhs.terms {
            Scalar::insert_term(&mut self.terms, r, g.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
