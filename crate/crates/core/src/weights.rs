//! Weight vectors and their index-subset lattice.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Upper bound on the number of coordinates; subsets are `u32` bitmasks.
pub const MAX_COORDS: usize = 16;

/// A set of coordinate indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_indices(indices: &[usize]) -> Subset {
        Subset(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `self`, the empty set and `self` included.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// The weights (w_0, ..., w_n) of a weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<u32>,
}

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<WeightVector> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("at least one weight is required".into()));
        }
        if weights.len() > MAX_COORDS {
            return Err(Error::InvalidWeights(format!("at most {MAX_COORDS} weights are supported")));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        Ok(WeightVector { weights })
    }

    /// Parses a comma-separated list such as "1,2".
    pub fn parse(s: &str) -> Result<WeightVector> {
        let w = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::BadSpec(format!("bad weight {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(w)
    }

    /// All-ones weights of length n + 1, i.e. ordinary projective n-space.
    pub fn projective(n: usize) -> WeightVector {
        WeightVector { weights: vec![1; n + 1] }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> u32 {
        self.weights[i]
    }

    /// Number of coordinates, #w.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the weights, |w|.
    pub fn total(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn min(&self) -> u32 {
        *self.weights.iter().min().unwrap()
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.len()) - 1)
    }

    /// All index subsets, the empty one included.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        self.full().subsets()
    }

    /// |u|: the sum of the weights indexed by `u`.
    pub fn weight_of(&self, u: Subset) -> u32 {
        u.indices().map(|i| self.weights[i]).sum()
    }

    /// Smallest weight indexed by `u`, or `None` for the empty subset.
    pub fn min_of(&self, u: Subset) -> Option<u32> {
        u.indices().map(|i| self.weights[i]).min()
    }

    /// gcd({w_i : i in v} ∪ {q - 1}); equal to q - 1 for the empty subset.
    pub fn gcd_with(&self, v: Subset, q_minus_one: u64) -> u64 {
        v.indices().fold(q_minus_one, |g, i| g.gcd(&(self.weights[i] as u64)))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", w.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let w = WeightVector::new(vec![2, 3, 1]).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.total(), 6);
        assert_eq!(w.min(), 1);
        assert_eq!(w.subsets().count(), 8);
        assert_eq!(w.weight_of(Subset::from_indices(&[0, 1])), 5);
        assert_eq!(w.gcd_with(Subset::EMPTY, 4), 4);
        assert_eq!(w.gcd_with(Subset::from_indices(&[0]), 4), 2);
        assert_eq!(w.gcd_with(Subset::from_indices(&[0, 1]), 4), 1);
    }

    #[test]
    fn invalid_weights() {
        assert!(WeightVector::new(vec![]).is_err());
        assert!(WeightVector::new(vec![1, 0]).is_err());
        assert!(WeightVector::parse("1,x").is_err());
        assert_eq!(WeightVector::parse("1, 2").unwrap().weights(), &[1, 2]);
    }

    #[test]
    fn subsets_of_subset() {
        let v = Subset::from_indices(&[0, 2]);
        let subs: Vec<Subset> = v.subsets().collect();
        assert_eq!(subs, vec![Subset(0), Subset(1), Subset(4), Subset(5)]);
        assert!(subs.iter().all(|u| u.is_subset_of(v)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }
}
