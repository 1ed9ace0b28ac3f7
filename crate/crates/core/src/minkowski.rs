//! Backward differences, the Minkowski basis `{point, Pi_{n-1}(1), ...,
//! Pi_{n-1}(n-1)}`, subset-lattice zeta/Möbius transforms and Rado
//! membership for the permutation polytopes `P_{n-1}(v)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::faces::{distinct_permutations, FunctionalVector, VertexVector};
use crate::sets::Subset;

/// Largest ground set for [`SubsetCollection`].
pub const MAX_COLLECTION_ELEMENTS: usize = 16;

/// A weight vector `v`, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    values: Vec<BigRational>,
}

impl WeightVector {
    /// Accepts only nonempty, ascending input.
    pub fn new(values: Vec<BigRational>) -> Result<WeightVector> {
        if values.is_empty() {
            return Err(Error::OutOfRange("weight vector is empty".into()));
        }
        if let Some(pos) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::OutOfRange(format!(
                "weight vector is not ascending at position {}",
                pos + 2
            )));
        }
        Ok(WeightVector { values })
    }

    /// Sorts first; `P_{n-1}(v)` does not depend on the order of `v`.
    pub fn sorted(mut values: Vec<BigRational>) -> Result<WeightVector> {
        values.sort();
        WeightVector::new(values)
    }

    pub fn from_integers(values: &[i64]) -> Result<WeightVector> {
        WeightVector::sorted(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ascending.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Sums of the `m` largest entries, `m = 0..=n`.
    pub fn top_sums(&self) -> Vec<BigRational> {
        let mut sums = vec![BigRational::zero()];
        for v in self.values.iter().rev() {
            let next = sums.last().unwrap() + v;
            sums.push(next);
        }
        sums
    }
}

/// `(a_2 - a_1, ..., a_n - a_{n-1})`
pub fn diff(v: &[BigRational]) -> Result<Vec<BigRational>> {
    if v.len() < 2 {
        return Err(Error::OutOfRange(format!(
            "difference needs at least 2 entries, got {}",
            v.len()
        )));
    }
    Ok(v.windows(2).map(|w| &w[1] - &w[0]).collect())
}

/// Rows `v, diff(v), diff(diff(v)), ...` down to a single entry.
pub fn difference_table(v: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut rows = vec![v.to_vec()];
    while rows.last().unwrap().len() >= 2 {
        let next = diff(rows.last().unwrap()).expect("length checked");
        rows.push(next);
    }
    rows
}

/// Whether every iterated difference of `v`, `v` itself included, is
/// entrywise nonnegative.
pub fn all_diffs_nonneg(v: &[BigRational]) -> bool {
    first_negative_difference(v).is_none()
}

/// A negative entry of an iterated difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Number of differences taken.
    pub order: usize,
    /// 0-based position within that row.
    pub index: usize,
}

/// The first negative entry, scanning rows by increasing order.
pub fn first_negative_difference(v: &[BigRational]) -> Option<Witness> {
    difference_table(v).iter().enumerate().find_map(|(order, row)| {
        row.iter()
            .position(|x| x.is_negative())
            .map(|index| Witness { order, index })
    })
}

/// `(0, ..., 0, C(k-1, k-1), ..., C(n-1, k-1))`, all ones for `k = 1`.
pub fn basis_vector(n: usize, k: usize) -> Result<VertexVector> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok((0..n).map(|j| binomial(j, k - 1)).collect())
}

/// Coefficients `y_1, ..., y_n` of `v = sum_k y_k basis_vector(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCoefficients {
    pub y: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Feasible(BasisCoefficients),
    Infeasible(Witness),
}

/// Writes sorted `v` in the Minkowski basis.
///
/// The basis matrix `M[j][k] = C(j, k-1)` is lower unitriangular, so forward
/// substitution gives the unique `y`. A negative `y_k` means `v` is not a
/// nonnegative combination; the reported witness comes from the difference
/// table.
pub fn decompose(v: &WeightVector) -> Decomposition {
    let n = v.len();
    let values = v.values();
    let mut y: Vec<BigRational> = Vec::with_capacity(n);
    for (j, vj) in values.iter().enumerate() {
        debug_assert_eq!(binomial(j, j), BigInt::from(1));
        let mut rest = vj.clone();
        for (k, yk) in y.iter().enumerate() {
            rest -= yk * BigRational::from_integer(binomial(j, k));
        }
        y.push(rest);
    }
    if y.iter().any(Signed::is_negative) {
        let witness = first_negative_difference(values)
            .expect("a negative coefficient is a leading entry of some difference row");
        return Decomposition::Infeasible(witness);
    }
    Decomposition::Feasible(BasisCoefficients { y })
}

/// `sum_k y_k basis_vector(n, k)`
pub fn compose(coefficients: &BasisCoefficients) -> Vec<BigRational> {
    let n = coefficients.y.len();
    (0..n)
        .map(|j| {
            coefficients
                .y
                .iter()
                .enumerate()
                .map(|(k, yk)| yk * BigRational::from_integer(binomial(j, k)))
                .sum()
        })
        .collect()
}

/// Rational values on nonempty subsets of `[n]`; absent subsets are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCollection {
    n: usize,
    values: BTreeMap<Subset, BigRational>,
}

impl SubsetCollection {
    pub fn new(n: usize) -> Result<SubsetCollection> {
        if n > MAX_COLLECTION_ELEMENTS {
            return Err(Error::OutOfRange(format!(
                "collections support n <= {MAX_COLLECTION_ELEMENTS}, got {n}"
            )));
        }
        Ok(SubsetCollection {
            n,
            values: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `t_I`; zero removes the entry.
    pub fn insert(&mut self, subset: Subset, value: BigRational) -> Result<()> {
        if subset.is_empty() || !subset.is_subset_of(Subset::full(self.n)) {
            return Err(Error::OutOfRange(format!(
                "{subset} is not a nonempty subset of [{}]",
                self.n
            )));
        }
        if value.is_zero() {
            self.values.remove(&subset);
        } else {
            self.values.insert(subset, value);
        }
        Ok(())
    }

    pub fn get(&self, subset: Subset) -> BigRational {
        self.values.get(&subset).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries in mask order.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, &BigRational)> {
        self.values.iter().map(|(s, v)| (*s, v))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.values().all(|v| !v.is_negative())
    }

    fn to_dense(&self) -> Vec<BigRational> {
        let mut dense = vec![BigRational::zero(); 1 << self.n];
        for (s, v) in &self.values {
            dense[s.0 as usize] = v.clone();
        }
        dense
    }

    fn from_dense(n: usize, dense: Vec<BigRational>) -> SubsetCollection {
        let values = dense
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| !v.is_zero())
            .map(|(mask, v)| (Subset(mask as u32), v))
            .collect();
        SubsetCollection { n, values }
    }
}

/// `z_I = sum_{J subset of I} y_J`
pub fn zeta(y: &SubsetCollection) -> SubsetCollection {
    let mut dense = y.to_dense();
    for bit in 0..y.n {
        for mask in 0..dense.len() {
            if mask >> bit & 1 == 1 {
                let lower = dense[mask ^ (1 << bit)].clone();
                dense[mask] += lower;
            }
        }
    }
    SubsetCollection::from_dense(y.n, dense)
}

/// Result of inverting [`zeta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusResult {
    pub y: SubsetCollection,
    /// Whether every recovered `y_I` is nonnegative, i.e. `P(z)` is the
    /// Minkowski sum `sum y_I Delta_I`.
    pub nonnegative: bool,
}

/// `y_I = sum_{J subset of I} (-1)^{|I|-|J|} z_J`
pub fn mobius(z: &SubsetCollection) -> MobiusResult {
    let mut dense = z.to_dense();
    for bit in 0..z.n {
        for mask in 0..dense.len() {
            if mask >> bit & 1 == 1 {
                let lower = dense[mask ^ (1 << bit)].clone();
                dense[mask] -= lower;
            }
        }
    }
    let y = SubsetCollection::from_dense(z.n, dense);
    let nonnegative = y.is_nonnegative();
    MobiusResult { y, nonnegative }
}

/// Whether `t_I` depends only on `|I|`.
pub fn is_symmetric(t: &SubsetCollection) -> bool {
    let mut by_size: Vec<Option<BigRational>> = vec![None; t.n + 1];
    for mask in 1u32..(1 << t.n) {
        let s = Subset(mask);
        let value = t.get(s);
        match &by_size[s.len()] {
            Some(seen) if *seen != value => return false,
            Some(_) => {}
            None => by_size[s.len()] = Some(value),
        }
    }
    true
}

/// The two membership routes of Rado's theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadoMethod {
    /// Every nonempty proper subset `I`.
    Exhaustive,
    /// Only the `m` largest coordinates of `t` for each `m`.
    Prefix,
}

/// Whether `t` lies in `P_{n-1}(v)`: the coordinates sum to `sum v`, and
/// every `I` has `sum_{i in I} t_i` at most the sum of the `|I|` largest
/// entries of `v`.
pub fn rado_membership(t: &[BigRational], v: &WeightVector, method: RadoMethod) -> Result<bool> {
    let n = v.len();
    if t.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: t.len(),
        });
    }
    let bounds = v.top_sums();
    if t.iter().sum::<BigRational>() != bounds[n] {
        return Ok(false);
    }
    match method {
        RadoMethod::Exhaustive => {
            if n > MAX_COLLECTION_ELEMENTS {
                return Err(Error::OutOfRange(format!(
                    "exhaustive check supports n <= {MAX_COLLECTION_ELEMENTS}"
                )));
            }
            for mask in 1u32..((1 << n) - 1) {
                let s = Subset(mask);
                let sum: BigRational = s.iter().map(|i| &t[i]).sum();
                if sum > bounds[s.len()] {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        RadoMethod::Prefix => {
            let mut desc: Vec<&BigRational> = t.iter().collect();
            desc.sort_by(|a, b| b.cmp(a));
            let mut sum = BigRational::zero();
            for (m, value) in desc.iter().enumerate().take(n - 1) {
                sum += *value;
                if sum > bounds[m + 1] {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The distinct coordinate permutations of `v`.
pub fn p_v_vertices(v: &WeightVector) -> Vec<Vec<BigRational>> {
    distinct_permutations(v.values())
}

/// 0 for constant `v`, `n - 1` otherwise.
pub fn dim_p_v(v: &WeightVector) -> usize {
    let values = v.values();
    if values.first() == values.last() {
        0
    } else {
        v.len() - 1
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A functional whose maximum over the permutations of `v` is attained at
/// `point` alone, or `None` if `point` is not such a vertex. The candidate
/// is `point` itself, checked against every other permutation.
pub fn vertex_certificate(point: &[BigRational], v: &WeightVector) -> Result<Option<FunctionalVector>> {
    if point.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            got: point.len(),
        });
    }
    let mut sorted = point.to_vec();
    sorted.sort();
    if sorted != v.values() {
        return Ok(None);
    }
    let c = point.to_vec();
    let best = dot(&c, point);
    let unique = p_v_vertices(v)
        .iter()
        .all(|w| w.as_slice() == point || dot(&c, w) < best);
    Ok(unique.then_some(c))
}
