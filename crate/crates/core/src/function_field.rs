//! The rational function field F_q(t): places, valuations, divisors, weighted
//! divisors and the height on weighted projective space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::finite_field::Field;
use crate::polynomials::Poly;
use crate::weights::WeightVector;

/// An element `num / den` of F_q(t), reduced with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        num.same_field(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let (num, den) = (num.div_exact(&g), den.div_exact(&g));
        let (lc, den) = den.monic();
        let inv = num.field().inv(lc).expect("nonzero leading coefficient");
        Ok(RationalFunction { num: num.scale(inv), den })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let den = Poly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn zero(field: &Field) -> RationalFunction {
        RationalFunction { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        Self::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(e as u64), den: self.den.pow(e as u64) }
    }

    /// Parses "num/den" or "num" using the polynomial coefficient syntax.
    pub fn parse(field: &Field, s: &str) -> Result<RationalFunction> {
        match s.split_once('/') {
            Some((n, d)) => Self::new(Poly::parse(field, n)?, Poly::parse(field, d)?),
            None => Ok(Self::from_poly(Poly::parse(field, s)?)),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a semicolon-separated coordinate list such as "t;1" or "1,1/0,1;1".
pub fn parse_coords(field: &Field, s: &str) -> Result<Vec<RationalFunction>> {
    s.split(';').map(|c| RationalFunction::parse(field, c)).collect()
}

/// A place of F_q(t): a monic irreducible polynomial, or the place at infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        if pi.is_constant() || !pi.is_monic() || !pi.is_irreducible()? {
            return Err(Error::NotAPlace(pi.to_string()));
        }
        Ok(Place::Finite(pi))
    }

    pub fn degree(&self) -> i64 {
        match self {
            Place::Finite(pi) => pi.degree().unwrap() as i64,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "({pi})"),
            Place::Infinity => write!(f, "(inf)"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Valuation of a nonzero `y` at `place`.
pub fn ord_at(place: &Place, y: &RationalFunction) -> Result<i64> {
    if y.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(match place {
        Place::Finite(pi) => y.num.multiplicity(pi) as i64 - y.den.multiplicity(pi) as i64,
        Place::Infinity => y.den.degree().unwrap() as i64 - y.num.degree().unwrap() as i64,
    })
}

/// A divisor: finitely many places with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    fn add_term(&mut self, place: Place, n: i64) {
        let c = self.support.entry(place.clone()).or_insert(0);
        *c += n;
        if *c == 0 {
            self.support.remove(&place);
        }
    }

    pub fn coefficient(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.support.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&n| n >= 0)
    }

    pub fn degree(&self) -> i64 {
        self.support.iter().map(|(p, &n)| n * p.degree()).sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &n) in &other.support {
            out.add_term(p.clone(), n);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor { support: self.support.iter().map(|(p, &n)| (p.clone(), -n)).collect() }
    }

    /// Coefficientwise minimum; absent coefficients count as 0.
    pub fn inf(&self, other: &Divisor) -> Divisor {
        let places: BTreeSet<&Place> = self.support.keys().chain(other.support.keys()).collect();
        Divisor::from_terms(places.into_iter().map(|p| (p.clone(), self.coefficient(p).min(other.coefficient(p)))))
    }

    /// Coefficientwise `self <= other`.
    pub fn leq(&self, other: &Divisor) -> bool {
        self.support.keys().chain(other.support.keys()).all(|p| self.coefficient(p) <= other.coefficient(p))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(p, n)| format!("{n}*{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Places where `y` may have nonzero valuation: factors of numerator and
/// denominator, plus infinity.
fn support_places(y: &RationalFunction) -> Result<Vec<Place>> {
    let mut places = BTreeSet::new();
    for p in [&y.num, &y.den] {
        for (pi, _) in p.factor(0)?.factors {
            places.insert(Place::Finite(pi));
        }
    }
    places.insert(Place::Infinity);
    Ok(places.into_iter().collect())
}

/// (y)_w = sum over places of floor(ord_P(y) / w) P.
pub fn weighted_divisor(y: &RationalFunction, w: u32) -> Result<Divisor> {
    if y.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if w == 0 {
        return Err(Error::InvalidWeights("weight must be positive".into()));
    }
    let mut terms = Vec::new();
    for place in support_places(y)? {
        let ord = ord_at(&place, y)?;
        terms.push((place, ord.div_euclid(w as i64)));
    }
    Ok(Divisor::from_terms(terms))
}

/// The principal divisor (y) = (y)_1.
pub fn principal_divisor(y: &RationalFunction) -> Result<Divisor> {
    weighted_divisor(y, 1)
}

/// ht_w(y) = -deg(inf over nonzero coordinates of (y_i)_{w_i}).
pub fn height(coords: &[RationalFunction], w: &WeightVector) -> Result<i64> {
    if coords.len() != w.len() {
        return Err(Error::LengthMismatch { expected: w.len(), got: coords.len() });
    }
    let mut acc: Option<Divisor> = None;
    for (i, y) in coords.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let d = weighted_divisor(y, w.get(i))?;
        acc = Some(match acc {
            None => d,
            Some(a) => a.inf(&d),
        });
    }
    acc.map(|d| -d.degree()).ok_or(Error::AllZero)
}

/// lambda *_w y: multiplies coordinate i by lambda^{w_i}.
pub fn scale_weighted(
    coords: &[RationalFunction],
    lambda: &RationalFunction,
    w: &WeightVector,
) -> Result<Vec<RationalFunction>> {
    if coords.len() != w.len() {
        return Err(Error::LengthMismatch { expected: w.len(), got: coords.len() });
    }
    coords.iter().enumerate().map(|(i, y)| y.mul(&lambda.pow(w.get(i)))).collect()
}
