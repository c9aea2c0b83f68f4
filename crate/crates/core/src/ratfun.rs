//! Rational functions in t with exact big-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

/// Dense polynomial over Q in ascending order, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rational::one())
    }

    /// 1 - a t.
    pub fn one_minus(a: Rational) -> QPoly {
        QPoly::new(vec![Rational::one(), -a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn divmod(&self, b: &QPoly) -> Result<(QPoly, QPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lc = b.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lc;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * bj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Smallest positive integer L with L * self integral, and the integral coefficients.
    fn clear_denominators(coeffs: &[Rational]) -> BigInt {
        coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    fn fmt_integral(coeffs: &[BigInt]) -> String {
        let mut s = String::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show = i == 0 || !mag.is_one();
            if show {
                s.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => s.push('t'),
                _ => s.push_str(&format!("t^{i}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let coef = match (i, mag.is_one(), mag.is_integer()) {
                (0, _, _) => mag.to_string(),
                (_, true, _) => String::new(),
                (_, _, true) => mag.to_string(),
                _ => format!("{mag}*"),
            };
            s.push_str(&coef);
            match i {
                0 => {}
                1 => s.push('t'),
                _ => s.push_str(&format!("t^{i}")),
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

/// A reduced rational function `num / den` over Q with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: QPoly,
    den: QPoly,
}

impl RatFuncQ {
    pub fn new(num: QPoly, den: QPoly) -> Result<RatFuncQ> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncQ::zero());
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g)?.0;
        let den = den.divmod(&g)?.0;
        let lc = den.leading();
        Ok(RatFuncQ { num: num.scale(&lc.recip()), den: den.monic() })
    }

    pub fn from_poly(p: QPoly) -> RatFuncQ {
        RatFuncQ { num: p, den: QPoly::one() }
    }

    pub fn constant(c: Rational) -> RatFuncQ {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn zero() -> RatFuncQ {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> RatFuncQ {
        Self::constant(Rational::one())
    }

    /// c / (1 - a t).
    pub fn geometric(c: Rational, a: Rational) -> RatFuncQ {
        RatFuncQ::new(QPoly::constant(c), QPoly::one_minus(a)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn scale(&self, c: &Rational) -> RatFuncQ {
        if c.is_zero() {
            return RatFuncQ::zero();
        }
        RatFuncQ { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_div(&self, other: &RatFuncQ) -> Result<RatFuncQ> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFuncQ::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Coefficient of t^d in the expansion at t = 0.
    pub fn coeff(&self, d: usize) -> Result<Rational> {
        Ok(self.series(d + 1)?.pop().expect("nonempty series"))
    }

    /// The first `n` Taylor coefficients, from the recurrence
    /// sum_k den_k c_{d-k} = num_d.
    pub fn series(&self, n: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NoExpansionAtZero);
        }
        let inv = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for d in 0..n {
            let mut acc = self.num.coeff(d);
            for (k, dk) in self.den.coeffs().iter().enumerate().skip(1).take(d) {
                if !dk.is_zero() {
                    acc -= dk * &out[d - k];
                }
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }

    /// Splits into polynomial part and proper part: self = S + g.
    pub fn poly_part(&self) -> (QPoly, RatFuncQ) {
        let (s, r) = self.num.divmod(&self.den).expect("nonzero denominator");
        let g = RatFuncQ::new(r, self.den.clone()).expect("nonzero denominator");
        (s, g)
    }

    /// True iff the expansion matches every given coefficient.
    pub fn match_series(&self, coeffs: &[Rational]) -> Result<bool> {
        Ok(self.series(coeffs.len())? == coeffs)
    }

    /// Value at a rational point; errors at a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Integer numerator and denominator coefficients, scaled by a common
    /// factor so all are integers with overall gcd 1 and the denominator's
    /// constant (lowest nonzero) coefficient positive.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let all: Vec<Rational> = self.num.coeffs.iter().chain(self.den.coeffs.iter()).cloned().collect();
        let l = Rational::from_integer(QPoly::clear_denominators(&all));
        let to_int = |p: &QPoly| p.coeffs.iter().map(|c| (c * &l).to_integer()).collect::<Vec<BigInt>>();
        let (mut n, mut d) = (to_int(&self.num), to_int(&self.den));
        let g = n.iter().chain(d.iter()).fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = d.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false);
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c = &*c / &g;
            if sign {
                *c = -&*c;
            }
        }
        (n, d)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_form();
        if d.len() == 1 && d[0].is_one() {
            write!(f, "{}", QPoly::fmt_integral(&n))
        } else {
            write!(f, "({}) / ({})", QPoly::fmt_integral(&n), QPoly::fmt_integral(&d))
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.den == rhs.den {
            return RatFuncQ::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        RatFuncQ::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul<&RatFuncQ> for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        RatFuncQ::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}
