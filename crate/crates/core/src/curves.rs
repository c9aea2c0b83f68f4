//! Base curves: the projective line and elliptic curves y^2 = x^3 + ax + b.
//!
//! Only the data the zeta formulas consume is modelled: genus, class number,
//! degree-zero class representatives, Riemann-Roch dimensions of
//! u(D_j + dD*), and the numerator P(t) of Z(X, t).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite_field::{Field, FieldElement};
use crate::ratfun::{int, QPoly, RatFuncQ, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveKind {
    Genus0,
    /// Short Weierstrass form; coefficients are field codes.
    Elliptic {
        a: u32,
        b: u32,
    },
}

/// A point of E(F_q) in affine coordinates, or the point at infinity O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EcPoint {
    Infinity,
    Affine(u32, u32),
}

/// One representative per degree-zero divisor class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRep {
    /// The only class on the projective line.
    Trivial,
    /// The class of (P) - (O).
    Point(EcPoint),
}

/// Numerator of the curve zeta function Z(X, t) = P(t) / ((1 - t)(1 - qt)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaData {
    /// Integer coefficients of P(t), constant term first.
    pub numerator: Vec<i64>,
    pub q: u64,
    pub g: u32,
    pub h: u64,
}

impl ZetaData {
    pub fn numerator_poly(&self) -> QPoly {
        QPoly::from_ints(&self.numerator)
    }

    /// Z(X, t) as an exact rational function.
    pub fn z_function(&self) -> RatFuncQ {
        let den = &QPoly::one_minus(int(1)) * &QPoly::one_minus(int(self.q));
        RatFuncQ::new(self.numerator_poly(), den).expect("nonzero denominator")
    }
}

#[derive(Debug, Clone)]
pub struct CurveModel {
    field: Field,
    kind: CurveKind,
    /// E(F_q) in increasing order, O first; a single entry for genus 0.
    points: Vec<EcPoint>,
}

impl CurveModel {
    pub fn genus0(field: &Field) -> CurveModel {
        CurveModel { field: field.clone(), kind: CurveKind::Genus0, points: vec![EcPoint::Infinity] }
    }

    pub fn elliptic(field: &Field, a: u32, b: u32) -> Result<CurveModel> {
        let p = field.characteristic();
        if p < 5 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        let f = field;
        let disc = f.add(f.mul(f.from_int(4), f.pow(a, 3)), f.mul(f.from_int(27), f.mul(b, b)));
        if disc == 0 {
            return Err(Error::SingularCurve);
        }
        let mut curve = CurveModel { field: field.clone(), kind: CurveKind::Elliptic { a, b }, points: Vec::new() };
        curve.points = curve.scan_points();
        Ok(curve)
    }

    pub fn elliptic_from_elements(a: &FieldElement, b: &FieldElement) -> Result<CurveModel> {
        if a.field() != b.field() {
            return Err(Error::MixedFields);
        }
        Self::elliptic(a.field(), a.code(), b.code())
    }

    /// Parses "genus0" or "elliptic:a=A,b=B" over `field`.
    pub fn parse(field: &Field, spec: &str) -> Result<CurveModel> {
        let spec = spec.trim();
        if spec == "genus0" {
            return Ok(Self::genus0(field));
        }
        let rest = spec.strip_prefix("elliptic:").ok_or_else(|| Error::BadSpec(format!("unknown curve {spec:?}")))?;
        let (mut a, mut b) = (None, None);
        for part in rest.split(',') {
            let (key, val) =
                part.split_once('=').ok_or_else(|| Error::BadSpec(format!("expected key=value, got {part:?}")))?;
            let code = field.parse_element(val.trim())?;
            match key.trim() {
                "a" => a = Some(code),
                "b" => b = Some(code),
                k => return Err(Error::BadSpec(format!("unknown curve parameter {k:?}"))),
            }
        }
        match (a, b) {
            (Some(a), Some(b)) => Self::elliptic(field, a, b),
            _ => Err(Error::BadSpec("elliptic curves need both a and b".into())),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn genus(&self) -> u32 {
        match self.kind {
            CurveKind::Genus0 => 0,
            CurveKind::Elliptic { .. } => 1,
        }
    }

    pub fn is_on_curve(&self, pt: &EcPoint) -> bool {
        match (pt, &self.kind) {
            (EcPoint::Infinity, _) => true,
            (EcPoint::Affine(x, y), CurveKind::Elliptic { a, b }) => {
                let f = &self.field;
                if *x >= f.order() || *y >= f.order() {
                    return false;
                }
                f.mul(*y, *y) == self.rhs(*x, *a, *b)
            }
            (EcPoint::Affine(..), CurveKind::Genus0) => false,
        }
    }

    fn rhs(&self, x: u32, a: u32, b: u32) -> u32 {
        let f = &self.field;
        f.add(f.add(f.pow(x, 3), f.mul(a, x)), b)
    }

    fn check(&self, pt: &EcPoint) -> Result<()> {
        if self.is_on_curve(pt) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn neg(&self, pt: &EcPoint) -> Result<EcPoint> {
        self.check(pt)?;
        Ok(match *pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x, self.field.neg(y)),
        })
    }

    /// Chord-tangent addition.
    pub fn add(&self, p1: &EcPoint, p2: &EcPoint) -> Result<EcPoint> {
        self.check(p1)?;
        self.check(p2)?;
        Ok(self.add_unchecked(*p1, *p2))
    }

    fn add_unchecked(&self, p1: EcPoint, p2: EcPoint) -> EcPoint {
        let f = &self.field;
        let a = match self.kind {
            CurveKind::Elliptic { a, .. } => a,
            CurveKind::Genus0 => return EcPoint::Infinity,
        };
        let (x1, y1, x2, y2) = match (p1, p2) {
            (EcPoint::Infinity, q) | (q, EcPoint::Infinity) => return q,
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return EcPoint::Infinity;
            }
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), a);
            f.mul(num, f.inv(f.add(y1, y1)).unwrap())
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).unwrap())
        };
        let x3 = f.sub(f.sub(f.mul(slope, slope), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        EcPoint::Affine(x3, y3)
    }

    /// [k]P by double-and-add; negative k negates.
    pub fn smul(&self, k: i64, pt: &EcPoint) -> Result<EcPoint> {
        self.check(pt)?;
        let mut base = if k < 0 { self.neg(pt)? } else { *pt };
        let mut k = k.unsigned_abs();
        let mut acc = EcPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(acc, base);
            }
            base = self.add_unchecked(base, base);
            k >>= 1;
        }
        Ok(acc)
    }

    fn scan_points(&self) -> Vec<EcPoint> {
        let CurveKind::Elliptic { a, b } = self.kind else {
            return vec![EcPoint::Infinity];
        };
        let f = &self.field;
        let q = f.order();
        let mut roots: Vec<Vec<u32>> = vec![Vec::new(); q as usize];
        for y in 0..q {
            roots[f.mul(y, y) as usize].push(y);
        }
        let mut pts = vec![EcPoint::Infinity];
        for x in 0..q {
            for &y in &roots[self.rhs(x, a, b) as usize] {
                pts.push(EcPoint::Affine(x, y));
            }
        }
        pts
    }

    /// E(F_q), with O first. For genus 0 this is just [O].
    pub fn points(&self) -> &[EcPoint] {
        &self.points
    }

    /// (h, one representative per degree-zero class).
    pub fn class_number(&self) -> (u64, Vec<ClassRep>) {
        match self.kind {
            CurveKind::Genus0 => (1, vec![ClassRep::Trivial]),
            CurveKind::Elliptic { .. } => {
                (self.points.len() as u64, self.points.iter().map(|&p| ClassRep::Point(p)).collect())
            }
        }
    }

    pub fn h(&self) -> u64 {
        self.points.len() as u64
    }

    /// dim L(u(D_j + dD*)) for the j-th class representative.
    pub fn rr_dim(&self, j: usize, u: u64, d: u64) -> Result<u64> {
        let reps = self.class_number().1;
        let rep = reps.get(j).ok_or_else(|| Error::OutOfDomain(format!("class index {j} out of range")))?;
        if u == 0 {
            return Err(Error::OutOfDomain("u must be at least 1".into()));
        }
        let ud = u * d;
        Ok(match rep {
            ClassRep::Trivial => ud + 1,
            ClassRep::Point(_) if ud >= 1 => ud,
            ClassRep::Point(p) => {
                if self.smul(u as i64, p)? == EcPoint::Infinity {
                    1
                } else {
                    0
                }
            }
        })
    }

    pub fn zeta_data(&self) -> ZetaData {
        let q = self.q();
        let h = self.h();
        let numerator = match self.kind {
            CurveKind::Genus0 => vec![1],
            CurveKind::Elliptic { .. } => {
                let trace = q as i64 + 1 - h as i64;
                vec![1, -trace, q as i64]
            }
        };
        ZetaData { numerator, q, g: self.genus(), h }
    }

    /// ζ_X(s) = Z(X, q^{-s}) for integers s >= 2.
    pub fn zeta_value(&self, s: i64) -> Result<Rational> {
        if s <= 1 {
            return Err(Error::PoleAtOne(s));
        }
        let q = int(self.q());
        let x = Rational::one() / num_traits::pow(q, s as usize);
        let value = self.zeta_data().z_function().eval(&x)?;
        debug_assert!(!value.is_zero());
        Ok(value)
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::Genus0 => write!(f, "genus0"),
            CurveKind::Elliptic { a, b } => {
                write!(f, "elliptic:a={},b={}", self.field.format_code(a), self.field.format_code(b))
            }
        }
    }
}
