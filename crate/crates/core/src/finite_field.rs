//! Arithmetic in F_q for q = p^k <= 2^16.
//!
//! An element is stored as its integer code `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_0 + c_1 x + ...` is its residue modulo the defining polynomial.
//! Code order is the canonical total order on field elements: integer order
//! for prime fields, and lexicographic order on coordinate vectors read from
//! the top coordinate down for extensions. Zero is always code 0 and one is code 1.
//!
//! Multiplication goes through discrete log tables built once per field.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polynomials::Poly;

const MAX_ORDER: u64 = 1 << 16;

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    /// Monic, ascending, length k + 1. For k = 1 this is `[0, 1]`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field F_q. Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if self.0.k > 1 {
            write!(f, "[modulus={:?}]", self.0.modulus)?;
        }
        Ok(())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "q={}", self.0.p)
        } else {
            let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "q={}^{}:modulus={}", self.0.p, self.0.k, m.join(","))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, each listed once, ascending.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds F_{p^k}. For `k > 1` without a modulus, the first irreducible
    /// monic polynomial of degree k in canonical order is used.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let p32 = p as u32;
        if k == 1 {
            if let Some(m) = modulus {
                if m.len() != 2 || m[1] != 1 || m[0] >= p32 {
                    return Err(Error::InvalidModulus(format!("{m:?} is not a monic linear polynomial")));
                }
            }
            return Ok(Self::build(p32, 1, vec![0, 1]));
        }
        let prime = Self::build(p32, 1, vec![0, 1]);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", k + 1, m.len())));
                }
                if m.iter().any(|&c| c >= p32) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                let poly = Poly::from_coeffs(&prime, m.to_vec())?;
                if !poly.is_irreducible()? {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => {
                let found = Poly::monic_of_degree(&prime, k as usize)
                    .find(|f| f.is_irreducible().unwrap_or(false))
                    .expect("an irreducible polynomial exists in every degree");
                found.coeffs().to_vec()
            }
        };
        Ok(Self::build(p32, k, modulus))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// Builds F_q from its order, generating a modulus when q is a proper prime power.
    pub fn with_order(q: u64) -> Result<Field> {
        if q < 2 {
            return Err(Error::NotPrime(q));
        }
        let ps = prime_divisors(q);
        if ps.len() != 1 {
            return Err(Error::NotPrime(q));
        }
        let p = ps[0];
        let mut k = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            k += 1;
        }
        Self::new(p, k, None)
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(k);
        let mut data = FieldData { p, k, q, modulus, exp: Vec::new(), log: Vec::new() };
        if q == 2 {
            data.exp = vec![1];
            data.log = vec![0, 0];
            return Field(Arc::new(data));
        }
        let order = (q - 1) as usize;
        for g in 2..q {
            let mut exp = Vec::with_capacity(order);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = slow_mul(&data, x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                data.exp = exp;
                data.log = log;
                return Field(Arc::new(data));
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Parses "q=P", "q=P^K" or "q=P^K:modulus=c0,c1,...,cK". A bare order
    /// ("9", "3^2") is also accepted.
    pub fn parse_spec(s: &str) -> Result<Field> {
        let s = s.trim();
        let s = s.strip_prefix("q=").unwrap_or(s);
        let (order, modulus) = match s.split_once(':') {
            Some((o, m)) => {
                let m = m
                    .trim()
                    .strip_prefix("modulus=")
                    .ok_or_else(|| Error::BadSpec(format!("expected modulus=..., got {m:?}")))?;
                (o, Some(parse_u32_list(m)?))
            }
            None => (s, None),
        };
        let bad = || Error::BadSpec(format!("bad field order {order:?}"));
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => (p.trim().parse::<u64>().map_err(|_| bad())?, k.trim().parse::<u32>().map_err(|_| bad())?),
            None => {
                let q = order.trim().parse::<u64>().map_err(|_| bad())?;
                if modulus.is_none() {
                    return Self::with_order(q);
                }
                let ps = prime_divisors(q);
                if ps.len() != 1 {
                    return Err(Error::NotPrime(q));
                }
                let mut k = 0;
                let mut r = q;
                while r > 1 {
                    r /= ps[0];
                    k += 1;
                }
                (ps[0], k)
            }
        };
        Self::new(p, k, modulus.as_deref())
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 1 }
    }

    /// Element with the given code; errors if the code is not below q.
    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.0.q {
            return Err(Error::BadSpec(format!("element code {code} out of range for {self:?}")));
        }
        Ok(FieldElement { field: self.clone(), code })
    }

    /// Element from its coordinates over F_p (ascending powers of the generator).
    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() > self.0.k as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::BadSpec(format!("bad coordinates {coords:?} for {self:?}")));
        }
        let code = coords.iter().rev().fold(0u32, |acc, &c| acc * self.0.p + c);
        Ok(FieldElement { field: self.clone(), code })
    }

    pub fn coords(&self, code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut c = code;
        for _ in 0..self.0.k {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    /// All q elements in canonical order, zero first.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.0.q).map(|code| FieldElement { field: self.clone(), code }).collect()
    }

    // Raw code arithmetic. Callers guarantee codes are below q.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        digitwise(p, self.0.k, a, b, |x, y| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        digitwise(p, self.0.k, a, 0, |x, _| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let e = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[(if e >= n { e - n } else { e }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// The element `n · 1`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub(crate) fn format_code(&self, code: u32) -> String {
        if self.0.k == 1 {
            code.to_string()
        } else {
            let c: Vec<String> = self.coords(code).iter().map(|x| x.to_string()).collect();
            format!("({})", c.join(","))
        }
    }

    /// Parses an element literal: an integer residue for prime fields, or a
    /// parenthesised coordinate tuple "(c0,c1,...)" for extensions. A bare
    /// integer in an extension field denotes that multiple of one.
    pub fn parse_element(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coords = parse_u32_list(inner)?;
            return Ok(self.from_coords(&coords)?.code);
        }
        let n: i64 = s.parse().map_err(|_| Error::BadSpec(format!("bad field element {s:?}")))?;
        Ok(self.from_int(n))
    }
}

fn digitwise(p: u32, k: u32, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..k {
        out += f(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Schoolbook product modulo the defining polynomial; used only to build tables.
fn slow_mul(data: &FieldData, a: u32, b: u32) -> u32 {
    let p = data.p as u64;
    let k = data.k as usize;
    if k == 1 {
        return ((a as u64 * b as u64) % p) as u32;
    }
    let digits = |mut x: u32| {
        let mut v = vec![0u64; k];
        for d in v.iter_mut() {
            *d = (x % data.p) as u64;
            x /= data.p;
        }
        v
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let m = data.modulus[j] as u64;
            prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
        }
    }
    prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

pub(crate) fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::BadSpec(format!("bad integer {t:?} in {s:?}"))))
        .collect()
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        Field::parse_spec(s)
    }
}

/// Field operation selector for [`FieldElement::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

/// A field element bound to its field; operations check that both operands
/// share a field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    fn with(&self, code: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), code }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let inv = self.field.inv(other.code).ok_or(Error::DivisionByZero)?;
        Ok(self.with(self.field.mul(self.code, inv)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let inv = self.field.inv(self.code).ok_or(Error::DivisionByZero)?;
        Ok(self.with(inv))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.code))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.code, e))
    }

    /// Binary operations take `other`; `Inv` and `Pow` ignore it.
    pub fn apply(&self, op: FieldOp, other: &FieldElement) -> Result<FieldElement> {
        match op {
            FieldOp::Add => self.add(other),
            FieldOp::Sub => self.sub(other),
            FieldOp::Mul => self.mul(other),
            FieldOp::Div => self.div(other),
            FieldOp::Inv => self.inv(),
            FieldOp::Pow(e) => Ok(self.pow(e)),
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_code(self.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_code(self.code))
    }
}
