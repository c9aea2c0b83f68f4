//! Dense univariate polynomials over F_q.
//!
//! Coefficients are field-element codes in ascending order with no trailing
//! zeros. The canonical order on polynomials is by degree (zero first), then
//! coefficients compared from the leading one down. Read as base-q integers
//! `sum c_i q^i`, this is plain integer order, so [`Poly::from_index`] walks
//! polynomials canonically.

mod factor;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use factor::Factorization;

use crate::error::{Error, Result};
use crate::finite_field::{Field, FieldElement};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

/// Selection for [`Poly::enumerate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerateMode {
    /// Every polynomial of degree at most m, zero included.
    AllDegLe,
    /// Every monic irreducible of degree in [1, m].
    MonicIrreducibleDegLe,
}

impl Poly {
    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from ascending coefficient codes.
    pub fn from_coeffs(field: &Field, coeffs: Vec<u32>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::BadSpec(format!("coefficient {c} out of range for {field:?}")));
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Result<Poly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Self::from_raw(field, coeffs.iter().map(|c| c.code()).collect()))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, code: u32) -> Poly {
        Self::from_raw(field, vec![code])
    }

    /// The indeterminate t.
    pub fn t(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![0, 1] }
    }

    /// The polynomial whose base-q digits are the digits of `index`.
    pub fn from_index(field: &Field, mut index: u64) -> Poly {
        let q = field.order() as u64;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push((index % q) as u32);
            index /= q;
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Inverse of [`Poly::from_index`]: the base-q integer `sum c_i q^i`.
    pub fn to_index(&self) -> u64 {
        let q = self.field.order() as u64;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    /// Monic polynomials of exact degree n, in canonical order.
    pub fn monic_of_degree(field: &Field, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.order() as u64;
        let count = q.pow(n as u32);
        (0..count).map(move |i| {
            let mut p = Poly::from_index(field, i);
            p.coeffs.resize(n, 0);
            p.coeffs.push(1);
            p
        })
    }

    /// Enumerates polynomials of degree at most `m` in canonical order.
    pub fn enumerate(field: &Field, mode: EnumerateMode, m: usize) -> Vec<Poly> {
        match mode {
            EnumerateMode::AllDegLe => {
                let total = (field.order() as u64).pow(m as u32 + 1);
                (0..total).map(|i| Poly::from_index(field, i)).collect()
            }
            EnumerateMode::MonicIrreducibleDegLe => {
                (1..=m).flat_map(|n| Poly::monic_of_degree(field, n).filter(|f| f.is_irreducible_unchecked())).collect()
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient code; zero for the zero polynomial.
    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Splits off the leading coefficient: returns `(lc, self / lc)`.
    pub fn monic(&self) -> (u32, Poly) {
        let lc = self.leading();
        match self.field.inv(lc) {
            Some(inv) => (lc, self.scale(inv)),
            None => (0, self.clone()),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(&other.neg_raw()))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    fn add_raw(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_raw(f, c)
    }

    fn neg_raw(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    fn mul_raw(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_raw(f, out)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], inv_lc);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Quotient of a division known to be exact.
    pub(crate) fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divmod(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd. `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, f.from_int(i as i64))).collect();
        Poly::from_raw(f, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Largest e with `pi^e | self`. `pi` must be nonconstant and `self` nonzero.
    pub fn multiplicity(&self, pi: &Poly) -> u32 {
        debug_assert!(!self.is_zero() && !pi.is_constant());
        let mut e = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divmod(pi).expect("nonzero divisor");
            if !r.is_zero() {
                return e;
            }
            e += 1;
            cur = q;
        }
    }

    /// Irreducibility by Rabin's test.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        Ok(self.is_irreducible_unchecked())
    }

    fn is_irreducible_unchecked(&self) -> bool {
        let f = self.monic().1;
        let n = f.degree().unwrap();
        if n == 1 {
            return true;
        }
        let q = self.field.order() as u64;
        let t = Poly::t(&self.field);
        // frob[i] = t^(q^i) mod f
        let mut frob = vec![t.rem(&f).unwrap()];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(q, &f).unwrap();
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return false;
        }
        crate::finite_field::prime_divisors(n as u64).into_iter().all(|r| {
            let h = &frob[n / r as usize] - &t;
            h.gcd(&f).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    pub fn factor(&self, seed: u64) -> Result<Factorization> {
        factor::factor(self, seed)
    }

    /// Parses ascending comma-separated coefficients: "1,1,1" is 1 + t + t^2.
    /// Extension-field coefficients are written as tuples, e.g. "(1,2),0,1".
    /// Anything mentioning `t` is read as a sum of terms instead, e.g.
    /// "t^2+2t+1" or "(1,1)t-1", which is also the `Display` form.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::BadSpec("empty polynomial".into()));
        }
        if s.contains('t') {
            return Self::parse_terms(field, s);
        }
        let mut coeffs = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    coeffs.push(field.parse_element(&s[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::BadSpec(format!("unbalanced parentheses in {s:?}")));
        }
        coeffs.push(field.parse_element(&s[start..])?);
        Ok(Poly::from_raw(field, coeffs))
    }
}

impl Poly {
    fn parse_terms(field: &Field, s: &str) -> Result<Poly> {
        let bad = || Error::BadSpec(format!("bad polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0i32;
        for ch in compact.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    if !current.is_empty() {
                        terms.push((negative, std::mem::take(&mut current)));
                        negative = false;
                    }
                    if ch == '-' {
                        negative = !negative;
                    }
                    continue;
                }
                _ => {}
            }
            current.push(ch);
        }
        if current.is_empty() || depth != 0 {
            return Err(bad());
        }
        terms.push((negative, current));
        let mut coeffs: Vec<u32> = Vec::new();
        for (negative, term) in terms {
            let (coef, exp) = match term.find('t') {
                Some(i) => {
                    let rest = &term[i + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?
                    };
                    (term[..i].strip_suffix('*').unwrap_or(&term[..i]), exp)
                }
                None => (term.as_str(), 0),
            };
            let mut c = if coef.is_empty() { 1 } else { field.parse_element(coef)? };
            if negative {
                c = field.neg(c);
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = field.add(coeffs[exp], c);
        }
        Ok(Poly::from_raw(field, coeffs))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                assert!(self.field == rhs.field, "polynomials over different fields");
                $body(self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Poly, b: &Poly| a.add_raw(b));
binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_raw(&b.neg_raw()));
binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_raw(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_raw()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.field.format_code(c);
            match (i, c) {
                (0, _) => write!(f, "{cs}")?,
                (_, 1) => {}
                _ => write!(f, "{cs}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
