//! Plain data types for subsets of `[n]` and ordered set partitions.
//!
//! Elements are stored 0-based; everything user-facing (Display, JSON) is
//! 1-based to match the usual `[n] = {1, ..., n}` convention.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Largest ground set a bitmask subset supports.
pub const MAX_ELEMENTS: usize = 32;

/// A subset of `{0, ..., n-1}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Builds a subset from 1-based labels, rejecting labels outside `1..=n`.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Subset> {
        let mut mask = 0u32;
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::OutOfRange(format!("element {label} not in [1, {n}]")));
            }
            mask |= 1 << (label - 1);
        }
        Ok(Subset(mask))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order, 0-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Elements in ascending order, 1-based.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `self` of size `size`, in increasing mask order.
    pub fn subsets_of_size(self, size: usize) -> Vec<Subset> {
        let elements: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        combos(&elements, size, 0, 0, &mut out);
        out.sort();
        out
    }
}

fn combos(elements: &[usize], size: usize, start: usize, acc: u32, out: &mut Vec<Subset>) {
    if size == 0 {
        out.push(Subset(acc));
        return;
    }
    for idx in start..elements.len() {
        if elements.len() - idx < size {
            break;
        }
        combos(elements, size - 1, idx + 1, acc | 1 << elements[idx], out);
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, label) in self.labels().into_iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered set partition `X_1 < ... < X_h` of `[n]`: the order type of a
/// linear functional, lowest block first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderType {
    n: usize,
    blocks: Vec<Subset>,
}

impl OrderType {
    pub fn new(n: usize, blocks: Vec<Subset>) -> Result<OrderType> {
        if n > MAX_ELEMENTS {
            return Err(Error::OutOfRange(format!("n = {n} exceeds {MAX_ELEMENTS}")));
        }
        let mut seen = Subset::EMPTY;
        for &block in &blocks {
            if block.is_empty() {
                return Err(Error::Parse("order type has an empty block".into()));
            }
            if !block.is_disjoint(seen) {
                return Err(Error::Parse(format!("block {block} overlaps an earlier block")));
            }
            seen = seen.union(block);
        }
        if seen != Subset::full(n) {
            return Err(Error::Parse(format!("blocks do not cover [{n}]")));
        }
        Ok(OrderType { n, blocks })
    }

    /// Groups coordinates by value, lowest value first.
    pub fn of_functional(values: &[BigRational]) -> OrderType {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]));
        let mut blocks: Vec<Subset> = Vec::new();
        let mut last: Option<&BigRational> = None;
        for i in order {
            match last {
                Some(v) if *v == values[i] => {
                    let top = blocks.last_mut().unwrap();
                    *top = top.union(Subset::singleton(i));
                }
                _ => blocks.push(Subset::singleton(i)),
            }
            last = Some(&values[i]);
        }
        OrderType { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Subset> {
        self.blocks
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, block) in self.blocks.iter().enumerate() {
            if idx > 0 {
                write!(f, "<")?;
            }
            write!(f, "{block}")?;
        }
        Ok(())
    }
}
