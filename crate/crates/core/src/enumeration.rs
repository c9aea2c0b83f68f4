//! Brute-force points of P(w) over F_q(t) of a given height.
//!
//! Every K^×-orbit of the punctured affine cone contains a w-primitive tuple
//! of polynomials: no monic irreducible π satisfies π^{w_i} | x_i for every
//! nonzero coordinate. Such a tuple is unique up to the weighted F_q^× action,
//! and its height is max_i ceil(deg x_i / w_i) over nonzero coordinates.
//!
//! The search runs over all tuples with deg x_i <= w_i d. For each coordinate
//! we precompute a bitmask over the monic irreducibles of degree <= d marking
//! which π satisfy π^{w_i} | x_i (the zero polynomial sets every bit). A tuple
//! is w-primitive iff the AND of its masks is empty. No π of larger degree can
//! divide every nonzero coordinate to the required power.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finite_field::Field;
use crate::function_field::RationalFunction;
use crate::polynomials::{EnumerateMode, Poly};
use crate::weights::{Subset, WeightVector};

pub const DEFAULT_CAP: u128 = 1_000_000_000;

/// Called with (completed units, total units) while a search runs.
pub type ProgressHook = Arc<dyn Fn(u64, u64) + Send + Sync>;

#[derive(Clone)]
pub struct EnumOptions {
    /// Largest admissible search space q^{sum(w_i d + 1)}.
    pub cap: u128,
    pub progress: Option<ProgressHook>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_CAP, progress: None }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: u128) -> Self {
        EnumOptions { cap, progress: None }
    }
}

/// A w-primitive polynomial tuple, canonical in its F_q^× orbit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalizedPoint {
    coords: Vec<Poly>,
    weights: WeightVector,
}

/// Orders by coordinates, then by weights.
impl Ord for NormalizedPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords).then_with(|| self.weights.weights().cmp(other.weights.weights()))
    }
}

impl PartialOrd for NormalizedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl NormalizedPoint {
    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Subset {
        support_of(&self.coords)
    }

    /// max over nonzero coordinates of ceil(deg x_i / w_i).
    pub fn height(&self) -> u64 {
        normalized_height(&self.coords, &self.weights)
    }

    pub fn as_rational_functions(&self) -> Vec<RationalFunction> {
        self.coords.iter().cloned().map(RationalFunction::from_poly).collect()
    }
}

impl std::fmt::Display for NormalizedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", c.join(" : "))
    }
}

fn support_of(coords: &[Poly]) -> Subset {
    coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(Subset::EMPTY, |s, (i, _)| s.with(i))
}

fn normalized_height(coords: &[Poly], w: &WeightVector) -> u64 {
    coords
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.degree().map(|d| (d as u64).div_ceil(w.get(i) as u64)))
        .max()
        .unwrap_or(0)
}

fn check_coords(coords: &[Poly], w: &WeightVector) -> Result<()> {
    if coords.len() != w.len() {
        return Err(Error::LengthMismatch { expected: w.len(), got: coords.len() });
    }
    if coords.iter().all(|c| c.is_zero()) {
        return Err(Error::AllZero);
    }
    for c in &coords[1..] {
        coords[0].same_field(c)?;
    }
    Ok(())
}

/// Number of λ in F_q^× with λ^{w_i} = 1 for all i in `support`:
/// gcd({w_i : i in support} ∪ {q - 1}).
pub fn stabilizer_order(support: Subset, w: &WeightVector, q: u64) -> Result<u64> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    Ok(w.gcd_with(support, q - 1))
}

/// True iff no monic irreducible π has floor(v_π(x_i) / w_i) >= 1 at every
/// nonzero coordinate.
pub fn is_w_primitive(coords: &[Poly], w: &WeightVector) -> Result<bool> {
    check_coords(coords, w)?;
    // Any offending π has w_i deg π <= deg x_i for each nonzero coordinate.
    let bound = coords.iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| d / w.get(i) as usize)).min().unwrap();
    let field = coords[0].field();
    for pi in Poly::enumerate(field, EnumerateMode::MonicIrreducibleDegLe, bound) {
        let scales_out =
            coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).all(|(i, c)| c.multiplicity(&pi) >= w.get(i));
        if scales_out {
            return Ok(false);
        }
    }
    Ok(true)
}

fn act(coords: &[Poly], w: &WeightVector, lambda: u32) -> Vec<Poly> {
    let field = coords[0].field();
    coords.iter().enumerate().map(|(i, c)| c.scale(field.pow(lambda, w.get(i) as u64))).collect()
}

/// The lexicographically smallest tuple in the weighted F_q^× orbit.
pub fn canonical_rep(coords: &[Poly], w: &WeightVector) -> Result<NormalizedPoint> {
    if !is_w_primitive(coords, w)? {
        return Err(Error::NotPrimitive);
    }
    Ok(canonical_unchecked(coords, w))
}

fn canonical_unchecked(coords: &[Poly], w: &WeightVector) -> NormalizedPoint {
    let q = coords[0].field().order();
    let best = (1..q).map(|l| act(coords, w, l)).min().expect("F_q^× is nonempty");
    NormalizedPoint { coords: best, weights: w.clone() }
}

fn is_canonical(coords: &[Poly], w: &WeightVector) -> bool {
    let q = coords[0].field().order();
    (2..q).all(|l| act(coords, w, l).as_slice() >= coords)
}

/// Reduces an arbitrary nonzero tuple of rational functions to the canonical
/// w-primitive representative of its K^× orbit: clear denominators with
/// λ = lcm of denominators, then divide out π^{m_π} with
/// m_π = min_i floor(v_π(x_i) / w_i).
pub fn normalize(coords: &[RationalFunction], w: &WeightVector) -> Result<NormalizedPoint> {
    if coords.len() != w.len() {
        return Err(Error::LengthMismatch { expected: w.len(), got: coords.len() });
    }
    if coords.iter().all(|c| c.is_zero()) {
        return Err(Error::AllZero);
    }
    let field = coords[0].field().clone();
    let mut lcm = Poly::one(&field);
    for c in coords {
        let g = lcm.gcd(c.den())?;
        lcm = (&lcm * c.den()).divmod(&g)?.0;
    }
    let mut polys: Vec<Poly> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let scaled = c.mul(&RationalFunction::from_poly(lcm.pow(w.get(i) as u64)))?;
            debug_assert!(scaled.is_polynomial());
            Ok(scaled.num().clone())
        })
        .collect::<Result<_>>()?;
    let mut g = Poly::zero(&field);
    for p in &polys {
        if !p.is_zero() {
            g = if g.is_zero() { p.monic().1 } else { g.gcd(p)? };
        }
    }
    for (pi, _) in g.factor(0)?.factors {
        let m = polys
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| p.multiplicity(&pi) / w.get(i))
            .min()
            .unwrap();
        if m > 0 {
            for (i, p) in polys.iter_mut().enumerate() {
                if !p.is_zero() {
                    *p = p.div_exact(&pi.pow((m * w.get(i)) as u64));
                }
            }
        }
    }
    canonical_rep(&polys, w)
}

/// q^{sum_i (w_i d + 1)}: the number of coordinate tuples the search visits.
pub fn search_space(q: u32, w: &WeightVector, d: u64) -> BigUint {
    let exp: u64 = w.weights().iter().map(|&wi| wi as u64 * d + 1).sum();
    BigUint::from(q).pow(exp as u32)
}

fn guard(field: &Field, w: &WeightVector, d: u64, cap: u128) -> Result<()> {
    let size = search_space(field.order(), w, d);
    if size > BigUint::from(cap) {
        return Err(Error::TooLarge { size: size.to_string(), cap });
    }
    Ok(())
}

/// Per-coordinate search table: every polynomial of degree <= w_i d, indexed
/// by its base-q integer, with its divisibility mask and height flag.
struct CoordTable {
    size: usize,
    words: usize,
    masks: Vec<u64>,
    /// ceil(deg / w_i) == d; false for the zero polynomial.
    top: Vec<bool>,
}

impl CoordTable {
    fn build(field: &Field, wi: u32, d: u64, irreducibles: &[Poly]) -> CoordTable {
        let q = field.order() as u64;
        let max_deg = wi as u64 * d;
        let size = q.pow(max_deg as u32 + 1) as usize;
        let words = irreducibles.len().div_ceil(64);
        let mut masks = vec![0u64; size * words];
        for (j, pi) in irreducibles.iter().enumerate() {
            let power = pi.pow(wi as u64);
            let pdeg = power.degree().unwrap() as u64;
            if pdeg > max_deg {
                continue;
            }
            let cofactors = q.pow((max_deg - pdeg) as u32 + 1);
            for y in 1..cofactors {
                let x = &power * &Poly::from_index(field, y);
                masks[x.to_index() as usize * words + j / 64] |= 1 << (j % 64);
            }
        }
        for j in 0..irreducibles.len() {
            masks[j / 64] |= 1 << (j % 64);
        }
        let mut top = vec![false; size];
        if d == 0 {
            top[1..].iter_mut().for_each(|t| *t = true);
        } else {
            // Degrees in ((d-1) w_i, d w_i] have ceil(deg / w_i) = d.
            let lo = q.pow(((d - 1) * wi as u64) as u32 + 1) as usize;
            top[lo..].iter_mut().for_each(|t| *t = true);
        }
        CoordTable { size, words, masks, top }
    }

    fn mask(&self, idx: usize) -> &[u64] {
        &self.masks[idx * self.words..(idx + 1) * self.words]
    }
}

fn tables(field: &Field, w: &WeightVector, d: u64) -> Vec<CoordTable> {
    let irreducibles = Poly::enumerate(field, EnumerateMode::MonicIrreducibleDegLe, d as usize);
    w.weights().iter().map(|&wi| CoordTable::build(field, wi, d, &irreducibles)).collect()
}

/// Lists every point of P(w)(F_q(t)) of height exactly `d`, as canonical
/// w-primitive representatives, sorted.
pub fn enumerate_points(field: &Field, w: &WeightVector, d: u64, opts: &EnumOptions) -> Result<Vec<NormalizedPoint>> {
    guard(field, w, d, opts.cap)?;
    let tables = tables(field, w, d);
    let words = tables[0].words;
    let total = tables[0].size as u64;
    let done = std::sync::atomic::AtomicU64::new(0);
    let mut points: Vec<NormalizedPoint> = (0..tables[0].size)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut idx = vec![0usize; w.len()];
            idx[0] = first;
            let acc = tables[0].mask(first).to_vec();
            walk(field, w, &tables, 1, &mut idx, &acc, words, &mut out);
            let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if let Some(hook) = &opts.progress {
                hook(n, total);
            }
            out
        })
        .collect();
    points.sort();
    Ok(points)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    field: &Field,
    w: &WeightVector,
    tables: &[CoordTable],
    level: usize,
    idx: &mut Vec<usize>,
    acc: &[u64],
    words: usize,
    out: &mut Vec<NormalizedPoint>,
) {
    if level == tables.len() {
        let nonzero = idx.iter().any(|&i| i != 0);
        let top = idx.iter().zip(tables).any(|(&i, t)| t.top[i]);
        if nonzero && top && acc.iter().all(|&m| m == 0) {
            let coords: Vec<Poly> = idx.iter().map(|&i| Poly::from_index(field, i as u64)).collect();
            if is_canonical(&coords, w) {
                out.push(NormalizedPoint { coords, weights: w.clone() });
            }
        }
        return;
    }
    let table = &tables[level];
    let mut next = vec![0u64; words];
    for i in 0..table.size {
        for (n, (a, m)) in next.iter_mut().zip(acc.iter().zip(table.mask(i))) {
            *n = a & m;
        }
        idx[level] = i;
        walk(field, w, tables, level + 1, idx, &next, words, out);
    }
}

/// A_d(w) over F_q(t): the stabilizer-weighted count
/// sum over w-primitive height-d tuples x of gcd(supp x, q - 1) / (q - 1).
///
/// Tuples are grouped by (mask, height flag, support) coordinate by
/// coordinate, so the cost is dominated by building the tables.
pub fn count_points(field: &Field, w: &WeightVector, d: u64, opts: &EnumOptions) -> Result<BigUint> {
    guard(field, w, d, opts.cap)?;
    let weighted = weighted_tuple_sum(field, w, d)?;
    let q1 = field.order() as u128 - 1;
    if weighted % q1 != 0 {
        return Err(Error::InvariantViolation(format!(
            "stabilizer-weighted sum {weighted} is not divisible by q - 1 = {q1}"
        )));
    }
    if let Some(hook) = &opts.progress {
        hook(1, 1);
    }
    Ok(BigUint::from(weighted / q1))
}

/// sum over w-primitive tuples of height d of gcd(support, q - 1).
pub fn weighted_tuple_sum(field: &Field, w: &WeightVector, d: u64) -> Result<u128> {
    let tables = tables(field, w, d);
    let words = tables[0].words;
    // (mask, top) -> number of nonzero polynomials in the class
    type Classes = HashMap<(Vec<u64>, bool), u128>;
    let classes: Vec<Classes> = tables
        .par_iter()
        .map(|t| {
            let mut c = Classes::new();
            for i in 1..t.size {
                *c.entry((t.mask(i).to_vec(), t.top[i])).or_insert(0) += 1;
            }
            c
        })
        .collect();

    let full_mask = tables[0].mask(0).to_vec();
    let mut states: HashMap<(Vec<u64>, Subset, bool), u128> = HashMap::new();
    states.insert((full_mask, Subset::EMPTY, false), 1);
    for (i, cls) in classes.iter().enumerate() {
        let mut next: HashMap<(Vec<u64>, Subset, bool), u128> = HashMap::new();
        for ((acc, support, top), count) in &states {
            // zero coordinate: mask is all ones, nothing changes
            *next.entry((acc.clone(), *support, *top)).or_insert(0) += count;
            for ((mask, t), n) in cls {
                let m: Vec<u64> = acc.iter().zip(mask).map(|(a, b)| a & b).collect();
                *next.entry((m, support.with(i), *top || *t)).or_insert(0) += count * n;
            }
        }
        states = next;
    }
    let q1 = field.order() as u64 - 1;
    let mut total: u128 = 0;
    for ((acc, support, top), count) in states {
        if top && !support.is_empty() && acc.iter().take(words).all(|&m| m == 0) {
            total += count * stabilizer_order(support, w, q1 + 1)? as u128;
        }
    }
    Ok(total)
}

/// Convenience: `count_points` as a `u128`.
pub fn count_points_u128(field: &Field, w: &WeightVector, d: u64, opts: &EnumOptions) -> Result<u128> {
    let n = count_points(field, w, d, opts)?;
    n.to_u128().ok_or_else(|| Error::OutOfDomain("count exceeds u128".into()))
}
