//! Finite formal sums with exact nonnegative rational coefficients.

use num::{BigRational, BigUint, One, Zero};
use std::collections::BTreeMap;

/// A finite linear combination of expressions of type `K` with exact
/// nonnegative rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sum<K: Ord + Clone> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> Default for Sum<K> {
    fn default() -> Self {
        Sum::zero()
    }
}

impl<K: Ord + Clone> Sum<K> {
    pub fn zero() -> Self {
        Sum {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(key: K) -> Self {
        Sum::with_coeff(key, BigRational::one())
    }

    pub fn with_coeff(key: K, coeff: BigRational) -> Self {
        let mut s = Sum::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * key` into the sum, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let new = o.get() + coeff;
                if new.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = new;
                }
            }
        }
    }

    pub fn add(&self, other: &Sum<K>) -> Sum<K> {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Sum<K> {
        if factor.is_zero() {
            return Sum::zero();
        }
        Sum {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    pub fn coeff(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn contains(&self, key: &K) -> bool {
        self.terms.contains_key(key)
    }

    /// The support, in the structural order.
    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    /// Applies a linear map to every key.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Sum<K2> {
        let mut out = Sum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Monadic bind: replaces every key by a sum, multiplying coefficients.
    pub fn bind<K2: Ord + Clone>(&self, f: impl Fn(&K) -> Sum<K2>) -> Sum<K2> {
        let mut out = Sum::zero();
        for (k, c) in &self.terms {
            for (k2, c2) in f(k).terms {
                out.add_term(k2, c * c2);
            }
        }
        out
    }

    /// True when every coefficient is a (positive) integer.
    pub fn all_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Expands the sum into a multiset of keys; requires integer
    /// coefficients small enough to fit a `usize` count.
    pub fn expand_counts(&self) -> Vec<(&K, usize)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                assert!(c.is_integer(), "expansion requires integer coefficients");
                let n: BigUint = c
                    .to_integer()
                    .try_into()
                    .expect("expansion requires nonnegative coefficients");
                let n = usize::try_from(&n).expect("coefficient too large to expand");
                (k, n)
            })
            .collect()
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigRational)> for Sum<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigRational)>>(iter: I) -> Self {
        let mut out = Sum::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

/// Convenience: an exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// An exact natural as a rational.
pub fn nat(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut s: Sum<&'static str> = Sum::zero();
        s.add_term("a", ratio(0, 1));
        assert!(s.is_zero());
        s.add_term("a", ratio(1, 2));
        s.add_term("a", ratio(1, 2));
        assert_eq!(s.coeff(&"a"), ratio(1, 1));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn bind_multiplies_through() {
        let s: Sum<u8> = Sum::from_iter([(1u8, nat(3))]);
        let t = s.bind(|_| Sum::from_iter([(10u8, ratio(1, 2)), (11u8, nat(1))]));
        assert_eq!(t.coeff(&10), ratio(3, 2));
        assert_eq!(t.coeff(&11), nat(3));
    }
}
