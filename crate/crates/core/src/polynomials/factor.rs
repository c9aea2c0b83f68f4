//! Complete factorization over F_q: squarefree decomposition, distinct-degree
//! factorization, then randomized equal-degree splitting (Cantor–Zassenhaus;
//! the trace map replaces the half-power in characteristic 2).

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::finite_field::FieldElement;

const MAX_SPLIT_ATTEMPTS: u32 = 256;

/// `unit * prod(factor^multiplicity)`, factors monic irreducible and sorted canonically.
#[derive(Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> Poly {
        let field = self.unit.field();
        let mut acc = Poly::constant(field, self.unit.code());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u64);
        }
        acc
    }

    pub fn multiplicity_of(&self, pi: &Poly) -> u32 {
        self.factors.iter().find(|(f, _)| f == pi).map(|(_, e)| *e).unwrap_or(0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit.code() != 1 || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (p, e) in &self.factors {
            let base =
                if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 { format!("({p})") } else { p.to_string() };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(super) fn factor(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let (lc, monic) = f.monic();
    let unit = field.element(lc)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut collected: BTreeMap<Poly, u32> = BTreeMap::new();
    for (sqf, mult) in squarefree(&monic) {
        for (block, d) in distinct_degree(&sqf)? {
            for irr in equal_degree(&block, d, &mut rng)? {
                *collected.entry(irr).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization { unit, factors: collected.into_iter().collect() })
}

/// p-th root of a polynomial all of whose exponents are multiples of p.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    // a^(1/p) = a^(q/p) in F_q
    let e = (field.order() / field.characteristic()) as u64;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.pow(c, e)).collect();
    Poly::from_raw(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs (g, e) with g squarefree,
/// pairwise coprime, and f = prod g^e.
fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in squarefree(&pth_root(f)) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&df).expect("f nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w nonzero");
        let z = w.div_exact(&y);
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, e) in squarefree(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (g, d) where g is the product of all irreducible factors of degree d.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.order() as u64;
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest)?;
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&(&h - &t))?;
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    Ok(out)
}

fn random_poly(f: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    let field = f.field();
    let n = f.degree().unwrap();
    let coeffs = (0..n).map(|_| rng.gen_range(0..field.order())).collect();
    Poly::from_raw(field, coeffs)
}

/// Splits a monic product of distinct degree-d irreducibles into its factors.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let q = field.order() as u64;
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let a = random_poly(f, rng);
        if a.is_constant() {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // Tr_{F_{q^d}/F_2}(a) = a + a^2 + ... + a^(2^(kd - 1))
            let rounds = field.degree() as usize * d;
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..rounds {
                term = (&term * &term).rem(f)?;
                acc = &acc + &term;
            }
            acc
        } else {
            // a^((q^d - 1)/2) = N(a)^((q - 1)/2) with N(a) = a^(1 + q + ... + q^(d-1))
            let mut conj = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, f)?;
                norm = (&norm * &conj).rem(f)?;
            }
            &norm.pow_mod((q - 1) / 2, f)? - &Poly::one(field)
        };
        if b.is_zero() {
            continue;
        }
        let g = f.gcd(&b)?;
        let gd = g.degree().unwrap();
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.div_exact(&g), d, rng)?);
            return Ok(out);
        }
    }
    Err(Error::SplittingFailed(MAX_SPLIT_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::Field;
    use crate::polynomials::EnumerateMode;
    use proptest::prelude::*;

    fn p(field: &Field, c: &[u32]) -> Poly {
        Poly::from_coeffs(field, c.to_vec()).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f2 = Field::prime(2).unwrap();
        let fac = p(&f2, &[0, 1, 1]).factor(0).unwrap();
        assert_eq!(fac.unit.code(), 1);
        assert_eq!(fac.factors, vec![(p(&f2, &[0, 1]), 1), (p(&f2, &[1, 1]), 1)]);

        let fac = p(&f2, &[1, 0, 1]).factor(0).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, &[1, 1]), 2)]);
        assert_eq!(fac.to_string(), "(t+1)^2");

        let f3 = Field::prime(3).unwrap();
        let fac = p(&f3, &[2, 0, 2]).factor(0).unwrap();
        assert_eq!(fac.unit.code(), 2);
        assert_eq!(fac.factors, vec![(p(&f3, &[1, 0, 1]), 1)]);

        assert_eq!(Poly::zero(&f3).factor(0).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn pth_powers_collapse() {
        let f3 = Field::prime(3).unwrap();
        // (t^2 + 1)^3 (t + 1)^4 over F_3
        let g = &p(&f3, &[1, 0, 1]).pow(3) * &p(&f3, &[1, 1]).pow(4);
        let fac = g.factor(5).unwrap();
        assert_eq!(fac.factors, vec![(p(&f3, &[1, 1]), 4), (p(&f3, &[1, 0, 1]), 3)]);
        let f2 = Field::prime(2).unwrap();
        let g = &p(&f2, &[1, 1, 1]).pow(6) * &p(&f2, &[0, 1]).pow(5);
        let fac = g.factor(1).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, &[0, 1]), 5), (p(&f2, &[1, 1, 1]), 6)]);
    }

    #[test]
    fn extension_field_factoring() {
        let f4 = Field::with_order(4).unwrap();
        // t^2 + t + 1 splits over F_4
        let fac = p(&f4, &[1, 1, 1]).factor(3).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), p(&f4, &[1, 1, 1]));
        let f9 = Field::with_order(9).unwrap();
        let g = Poly::from_index(&f9, 123_456_789);
        let fac = g.factor(2).unwrap();
        assert_eq!(fac.product(), g);
    }

    #[test]
    fn necklace_counts() {
        fn mobius(n: u64) -> i64 {
            let ps = crate::finite_field::prime_divisors(n);
            if ps.iter().any(|p| (n / p).is_multiple_of(*p)) {
                0
            } else if ps.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        for q in [2u64, 3, 4, 5] {
            let field = Field::with_order(q).unwrap();
            let irr = Poly::enumerate(&field, EnumerateMode::MonicIrreducibleDegLe, 4);
            for m in 1..=4u64 {
                let expected: i64 =
                    (1..=m).filter(|e| m % e == 0).map(|e| mobius(e) * (q as i64).pow((m / e) as u32)).sum::<i64>()
                        / m as i64;
                let got = irr.iter().filter(|f| f.degree() == Some(m as usize)).count() as i64;
                assert_eq!(got, expected, "q={q} m={m}");
            }
        }
    }

    fn field_and_coeffs() -> impl Strategy<Value = (u64, Vec<u32>, u64)> {
        prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
            .prop_flat_map(|q| (Just(q), prop::collection::vec(0..q as u32, 1..=9), any::<u64>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn factor_round_trip((q, coeffs, seed) in field_and_coeffs()) {
            let field = Field::prime(q).unwrap();
            let f = Poly::from_coeffs(&field, coeffs).unwrap();
            prop_assume!(!f.is_zero());
            let fac = f.factor(seed).unwrap();
            prop_assert_eq!(fac.product(), f.clone());
            for (g, e) in &fac.factors {
                prop_assert!(*e >= 1);
                prop_assert!(g.is_monic());
                prop_assert!(g.is_irreducible().unwrap());
            }
            prop_assert!(fac.factors.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert_eq!(fac, f.factor(seed.wrapping_add(17)).unwrap());
        }

        #[test]
        fn gcd_is_greatest_common_divisor(
            (q, a, _) in field_and_coeffs(),
            b in prop::collection::vec(0u32..2, 1..=6),
            c in prop::collection::vec(0u32..2, 1..=4),
        ) {
            let field = Field::prime(q).unwrap();
            let common = Poly::from_coeffs(&field, c).unwrap();
            let a = &Poly::from_coeffs(&field, a).unwrap() * &common;
            let b = &Poly::from_coeffs(&field, b).unwrap() * &common;
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.divides(&a).unwrap());
            prop_assert!(g.divides(&b).unwrap());
            if !common.is_zero() {
                prop_assert!(common.divides(&g).unwrap());
            }
        }

        #[test]
        fn irreducible_iff_single_simple_factor((q, coeffs, seed) in field_and_coeffs()) {
            let field = Field::prime(q).unwrap();
            let f = Poly::from_coeffs(&field, coeffs).unwrap();
            prop_assume!(!f.is_constant());
            let fac = f.factor(seed).unwrap();
            let single = fac.factors.len() == 1 && fac.factors[0].1 == 1;
            prop_assert_eq!(f.is_irreducible().unwrap(), single);
        }
    }
}
