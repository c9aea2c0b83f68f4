//! Weighted divisor zeta functions and the height zeta function of P(w).
//!
//! For a base curve X with class number h, genus g and degree-one divisor
//! D*, the weighted divisor zeta function is
//!
//!   Z_w(X, t) = sum_j sum_d #B_w(D_j + dD*) t^d,
//!
//! where #B_w(D) counts F_q^×-orbits of nonzero tuples (x_i) with
//! x_i in L(w_i D). Expanding the product over coordinates gives
//!
//!   Z_w = sum_{v != ∅} sum_{u ⊆ v} gcd(v, q-1) (-1)^{#v-#u} Z(u, t) / (q-1),
//!
//! with Z(u, t) = P_u(t) / (1 - q^{|u|} t) rational by Riemann-Roch. The
//! height zeta function Z_w / Z(X, t) has A_d(w) as its t^d coefficient.
//! Its simple poles at t = q^{-|u|} give the main term
//! sum_{|u| >= 2} a_u q^{d|u|}.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curves::{CurveModel, ZetaData};
use crate::error::{Error, Result};
use crate::ratfun::{int, QPoly, RatFuncQ, Rational};
use crate::weights::{Subset, WeightVector};

fn qpow(q: u64, e: i64) -> Rational {
    let base = int(q);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        Rational::one() / num_traits::pow(base, e.unsigned_abs() as usize)
    }
}

fn to_biguint(x: &Rational, what: &str) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::InvariantViolation(format!("{what} = {x} is not a nonnegative integer")));
    }
    Ok(x.to_integer().to_biguint().unwrap())
}

/// #B_w(D_j + dD*) = sum_{v != ∅} gcd(v, q-1)/(q-1) prod_{i in v} (q^{l_i} - 1)
/// with l_i = dim L(w_i (D_j + dD*)).
pub fn bw_count(curve: &CurveModel, w: &WeightVector, j: usize, d: u64) -> Result<BigUint> {
    let q = curve.q();
    let nonzero: Vec<BigUint> = (0..w.len())
        .map(|i| {
            let l = curve.rr_dim(j, w.get(i) as u64, d)?;
            Ok(BigUint::from(q).pow(l as u32) - 1u32)
        })
        .collect::<Result<_>>()?;
    let mut total = BigUint::zero();
    for v in w.full().subsets().filter(|v| !v.is_empty()) {
        let prod: BigUint = v.indices().map(|i| &nonzero[i]).product();
        total += prod * w.gcd_with(v, q - 1);
    }
    let (quot, rem) = total.div_rem(&BigUint::from(q - 1));
    if !rem.is_zero() {
        return Err(Error::InvariantViolation(format!("#B_w sum {total} is not divisible by q - 1")));
    }
    Ok(quot)
}

/// Z(u, t) = sum_j sum_d prod_{i in u} q^{l(w_i(D_j + dD*))} t^d in closed
/// form: h/(1 - t) for u = ∅, otherwise
/// Q_u(t) + h q^{#u(1-g)} / (1 - q^{|u|} t) where the polynomial Q_u
/// corrects the degrees d <= (2g-2)/min(u) outside the Riemann-Roch range.
pub fn zu_closed(curve: &CurveModel, w: &WeightVector, u: Subset) -> Result<RatFuncQ> {
    let h = curve.h();
    let q = curve.q();
    if u.is_empty() {
        return Ok(RatFuncQ::geometric(int(h), int(1)));
    }
    let g = curve.genus() as i64;
    let size = u.len() as i64;
    let s = w.weight_of(u) as i64;
    let lead = int(h) * qpow(q, size * (1 - g));
    let mut closed = RatFuncQ::geometric(lead.clone(), qpow(q, s));
    if 2 * g - 2 >= 0 {
        let dmax = (2 * g - 2) / w.min_of(u).unwrap() as i64;
        let mut correction = vec![Rational::zero(); dmax as usize + 1];
        for (d, c) in correction.iter_mut().enumerate() {
            let mut actual = Rational::zero();
            for j in 0..h as usize {
                let mut e = 0i64;
                for i in u.indices() {
                    e += curve.rr_dim(j, w.get(i) as u64, d as u64)? as i64;
                }
                actual += qpow(q, e);
            }
            *c = actual - &lead * qpow(q, s * d as i64);
        }
        closed = &closed + &RatFuncQ::from_poly(QPoly::new(correction));
    }
    Ok(closed)
}

/// The numerator P_u(t) = Z(u, t) (1 - q^{|u|} t).
pub fn p_u(curve: &CurveModel, w: &WeightVector, u: Subset) -> Result<QPoly> {
    let z = zu_closed(curve, w, u)?;
    let factor = QPoly::one_minus(qpow(curve.q(), w.weight_of(u) as i64));
    let prod = &z * &RatFuncQ::from_poly(factor);
    if !prod.is_polynomial() {
        return Err(Error::InvariantViolation(format!("Z(u, t) for u = {u} has an unexpected pole")));
    }
    Ok(prod.num().clone())
}

/// The stated degree bound 1 + (2g - 2)/min(u) for P_u.
pub fn p_u_degree_bound(curve: &CurveModel, w: &WeightVector, u: Subset) -> Option<Rational> {
    let m = w.min_of(u)?;
    let g = curve.genus() as i64;
    Some(int(1) + Rational::new(BigInt::from(2 * g - 2), BigInt::from(m)))
}

/// c_u = sum over nonempty v ⊇ u of gcd(v, q-1) (-1)^{#v-#u}, for every u.
fn inclusion_exclusion(w: &WeightVector, q: u64) -> BTreeMap<Subset, BigInt> {
    let mut c: BTreeMap<Subset, BigInt> = BTreeMap::new();
    for v in w.subsets().filter(|v| !v.is_empty()) {
        let gcd = BigInt::from(w.gcd_with(v, q - 1));
        for u in v.subsets() {
            let term = if (v.len() - u.len()) % 2 == 0 { gcd.clone() } else { -gcd.clone() };
            *c.entry(u).or_insert_with(BigInt::zero) += term;
        }
    }
    c
}

/// Z_w(X, t): the first `dmax + 1` coefficients summed class by class from
/// #B_w, and the closed form. Errors if the two disagree.
pub fn zw(curve: &CurveModel, w: &WeightVector, dmax: u64) -> Result<(Vec<BigUint>, RatFuncQ)> {
    let closed = zw_closed(curve, w)?;
    let mut series = Vec::with_capacity(dmax as usize + 1);
    for d in 0..=dmax {
        let mut s = BigUint::zero();
        for j in 0..curve.h() as usize {
            s += bw_count(curve, w, j, d)?;
        }
        series.push(s);
    }
    let as_rat: Vec<Rational> = series.iter().map(|s| Rational::from(BigInt::from(s.clone()))).collect();
    if !closed.match_series(&as_rat)? {
        return Err(Error::InvariantViolation("closed form of Z_w disagrees with its series".into()));
    }
    Ok((series, closed))
}

/// The closed form of Z_w(X, t) alone.
pub fn zw_closed(curve: &CurveModel, w: &WeightVector) -> Result<RatFuncQ> {
    let q = curve.q();
    let q1 = int(q - 1);
    let mut closed = RatFuncQ::zero();
    for (u, c) in inclusion_exclusion(w, q) {
        if c.is_zero() {
            continue;
        }
        let coeff = Rational::from(c) / &q1;
        closed = &closed + &zu_closed(curve, w, u)?.scale(&coeff);
    }
    Ok(closed)
}

/// The height zeta function of P(w) over the function field of a curve,
/// with its main-term data.
#[derive(Debug, Clone)]
pub struct WeightedZeta {
    curve: CurveModel,
    w: WeightVector,
    zeta: ZetaData,
    zw: RatFuncQ,
    height: RatFuncQ,
    poly_part: QPoly,
    d0: u64,
    main_coeffs: BTreeMap<Subset, Rational>,
}

/// Builds Z_w, divides by Z(X, t), and checks the identity and pole
/// structure.
pub fn height_zeta(curve: &CurveModel, w: &WeightVector) -> Result<WeightedZeta> {
    let zeta = curve.zeta_data();
    let zw = zw_closed(curve, w)?;
    let z = zeta.z_function();
    let height = zw.checked_div(&z)?;
    if &height * &z != zw {
        return Err(Error::InvariantViolation("height zeta times Z(X, t) is not Z_w".into()));
    }
    let q = curve.q();
    let mut poles = QPoly::one();
    let mut seen = Vec::new();
    for u in w.subsets() {
        let s = w.weight_of(u);
        if s >= 2 && !seen.contains(&s) {
            seen.push(s);
            poles = &poles * &QPoly::one_minus(qpow(q, s as i64));
        }
    }
    if curve.genus() > 0 {
        poles = &poles * &zeta.numerator_poly();
    }
    if !height.den().divides(&poles) {
        return Err(Error::InvariantViolation(format!(
            "height zeta denominator {} has poles outside t = q^-|u|",
            height.den()
        )));
    }
    let (poly_part, _) = height.poly_part();
    let d0 = poly_part.degree().map_or(0, |k| k as u64 + 1);

    let h = int(curve.h());
    let g = curve.genus() as i64;
    let q1 = int(q - 1);
    let c = inclusion_exclusion(w, q);
    let mut zeta_cache: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut main_coeffs = BTreeMap::new();
    for u in w.subsets() {
        let s = w.weight_of(u);
        if s < 2 {
            continue;
        }
        let zv = match zeta_cache.get(&s) {
            Some(v) => v.clone(),
            None => {
                let v = curve.zeta_value(s as i64)?;
                zeta_cache.insert(s, v.clone());
                v
            }
        };
        let a = Rational::from(c[&u].clone()) * &h * qpow(q, u.len() as i64 * (1 - g)) / (&q1 * zv);
        main_coeffs.insert(u, a);
    }
    Ok(WeightedZeta { curve: curve.clone(), w: w.clone(), zeta, zw, height, poly_part, d0, main_coeffs })
}

impl WeightedZeta {
    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn weights(&self) -> &WeightVector {
        &self.w
    }

    pub fn zeta_data(&self) -> &ZetaData {
        &self.zeta
    }

    pub fn zw(&self) -> &RatFuncQ {
        &self.zw
    }

    pub fn height_zeta(&self) -> &RatFuncQ {
        &self.height
    }

    pub fn poly_part(&self) -> &QPoly {
        &self.poly_part
    }

    /// One past the degree of the polynomial part; 0 if there is none.
    pub fn d0(&self) -> u64 {
        self.d0
    }

    /// a_u for every index subset u with |u| >= 2, zeros included.
    pub fn main_coeffs(&self) -> &BTreeMap<Subset, Rational> {
        &self.main_coeffs
    }

    /// The coefficient of the leading pole, attached to u = w.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.main_coeffs.get(&self.w.full())
    }

    /// A_d(w): the t^d coefficient of the height zeta function.
    pub fn ad_exact(&self, d: u64) -> Result<BigUint> {
        to_biguint(&self.height.coeff(d as usize)?, &format!("A_{d}"))
    }

    /// sum_{|u| >= 2} a_u q^{d|u|}, defined for d >= 1.
    pub fn ad_main(&self, d: u64) -> Result<Rational> {
        if d < 1 {
            return Err(Error::OutOfDomain(format!("main term needs d >= 1, got {d}")));
        }
        let q = self.curve.q();
        Ok(self.main_coeffs.iter().map(|(u, a)| a * qpow(q, self.w.weight_of(*u) as i64 * d as i64)).sum())
    }

    /// r_s = sum of a_u over |u| = s, the residue data of the pole at q^{-s}.
    pub fn pole_residues(&self) -> BTreeMap<u32, Rational> {
        let mut r = BTreeMap::new();
        for (u, a) in &self.main_coeffs {
            *r.entry(self.w.weight_of(*u)).or_insert_with(Rational::zero) += a;
        }
        r
    }

    /// Splits the height zeta function as
    /// S(t) + sum_s r_s / (1 - q^s t) + M(t) / P(t)
    /// and derives the constants of the error bounds.
    pub fn error_terms(&self) -> Result<ErrorTerms> {
        let q = self.curve.q();
        let (s_poly, proper) = self.height.poly_part();
        let mut remainder = proper;
        for (s, r) in self.pole_residues() {
            remainder = &remainder - &RatFuncQ::geometric(r, qpow(q, s as i64));
        }
        let p = self.zeta.numerator_poly();
        let m = &remainder * &RatFuncQ::from_poly(p.clone());
        if !m.is_polynomial() {
            return Err(Error::InvariantViolation(format!(
                "remainder {remainder} has poles outside the zeros of P(t)"
            )));
        }
        let m = m.num().clone();
        let c: Rational = m.coeffs().iter().map(|x| x.abs()).sum();
        let c_prime: Rational = s_poly.coeffs().iter().map(|x| x.abs()).sum();
        let mut sizes: Vec<u32> =
            self.main_coeffs.iter().filter(|(_, a)| !a.is_zero()).map(|(u, _)| self.w.weight_of(*u)).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let s_prime = if sizes.len() >= 2 { sizes[sizes.len() - 2] } else { 0 };
        let c_double_prime = self.leading_coeff().filter(|a| !a.is_zero()).map(|a_w| {
            let others: Rational =
                self.main_coeffs.iter().filter(|(u, _)| **u != self.w.full()).map(|(_, a)| a.abs()).sum();
            (others + &c_prime + &c) / a_w.abs()
        });
        Ok(ErrorTerms {
            q,
            total: self.w.total(),
            w_min: self.w.min(),
            s_poly,
            m,
            c,
            c_prime,
            s_prime,
            c_double_prime,
            a_w: self.leading_coeff().cloned(),
        })
    }
}

/// Constants bounding A_d(w) minus its main term.
#[derive(Debug, Clone)]
pub struct ErrorTerms {
    q: u64,
    total: u32,
    w_min: u32,
    /// Polynomial part S(t) of the height zeta function.
    pub s_poly: QPoly,
    /// Numerator M(t) of the part with poles at the zeros of P(t).
    pub m: QPoly,
    /// sum |m_k|.
    pub c: Rational,
    /// sum |S_k|.
    pub c_prime: Rational,
    /// Second-largest |u| with a_u != 0, or 0.
    pub s_prime: u32,
    /// (sum_{u != w} |a_u| + C' + C) / |a_w|, when a_w exists.
    pub c_double_prime: Option<Rational>,
    a_w: Option<Rational>,
}

impl ErrorTerms {
    /// |exact - main| <= C (d+1) q^{d/2} + C' q^{d s'}, decided exactly by
    /// squaring.
    pub fn error_within_bound(&self, d: u64, exact: &BigUint, main: &Rational) -> bool {
        let err = (Rational::from(BigInt::from_biguint(Sign::Plus, exact.clone())) - main).abs();
        let slack = err - &self.c_prime * qpow(self.q, (d * self.s_prime as u64) as i64);
        if !slack.is_positive() {
            return true;
        }
        let lhs = &slack * &slack;
        let factor = &self.c * int(d + 1);
        let rhs = &factor * &factor * qpow(self.q, d as i64);
        lhs <= rhs
    }

    /// |A_d / (a_w q^{|w|d}) - 1| <= C'' q^{-d w_min}, checked after
    /// multiplying through by |a_w| q^{|w|d}. `None` without a leading term.
    pub fn corollary_holds(&self, d: u64, exact: &BigUint) -> Option<bool> {
        let a_w = self.a_w.as_ref()?;
        let c2 = self.c_double_prime.as_ref()?;
        let lead = a_w * qpow(self.q, (self.total as u64 * d) as i64);
        let diff = (Rational::from(BigInt::from_biguint(Sign::Plus, exact.clone())) - &lead).abs();
        let bound = c2 * a_w.abs() * qpow(self.q, ((self.total - self.w_min) as u64 * d) as i64);
        Some(diff <= bound)
    }
}

/// Convenience wrappers matching the one-shot operations.
pub fn ad_exact(curve: &CurveModel, w: &WeightVector, d: u64) -> Result<BigUint> {
    height_zeta(curve, w)?.ad_exact(d)
}

pub fn ad_main(curve: &CurveModel, w: &WeightVector, d: u64) -> Result<Rational> {
    height_zeta(curve, w)?.ad_main(d)
}

pub fn d_threshold(curve: &CurveModel, w: &WeightVector) -> Result<u64> {
    Ok(height_zeta(curve, w)?.d0())
}

/// Rational to u128 when integral and in range; used by callers that print
/// compact tables.
pub fn rational_to_u128(x: &Rational) -> Option<u128> {
    if x.is_integer() {
        x.to_integer().to_u128()
    } else {
        None
    }
}
