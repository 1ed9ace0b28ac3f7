//! Face lattices of Minkowski sums of coordinate simplices rebuilt from
//! first principles.
//!
//! A functional with order type `X_1 < ... < X_h` is maximized on `Delta_F`
//! by the face `Delta_{A_F}` with `A_F = F` intersected with the highest
//! block meeting `F`, and the face of the sum is the sum of those faces.
//! Faces are named by the tuple `(A_F)_F`, which is unique per face, and
//! ordered componentwise.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sets::{OrderType, Subset};

/// Largest `n` for which [`order_types`] will enumerate.
pub const MAX_ORDER_TYPE_ELEMENTS: usize = 8;
/// Largest `n` for [`oracle_faces`] and [`f_vector_oracle`].
pub const MAX_FACE_ELEMENTS: usize = 7;
/// Largest `n` and chain length for [`flag_count_oracle`].
pub const MAX_FLAG_ELEMENTS: usize = 6;
pub const MAX_FLAG_LENGTH: usize = 3;

/// The summands `Delta_F`, `F` in `supports`, of a Minkowski sum in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFamily {
    n: usize,
    supports: Vec<Subset>,
}

impl SimplexFamily {
    pub fn new(n: usize, supports: Vec<Subset>) -> Result<SimplexFamily> {
        for &f in &supports {
            if f.is_empty() || !f.is_subset_of(Subset::full(n)) {
                return Err(Error::OutOfRange(format!("{f} is not a nonempty subset of [{n}]")));
            }
        }
        Ok(SimplexFamily { n, supports })
    }

    /// All `k`-subsets of `[n]`.
    pub fn uniform(n: usize, k: usize) -> Result<SimplexFamily> {
        if k < 1 || k > n {
            return Err(Error::OutOfRange(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        SimplexFamily::new(n, Subset::full(n).subsets_of_size(k))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supports(&self) -> &[Subset] {
        &self.supports
    }
}

/// All ordered set partitions of `[n]`, built by inserting element `i`
/// either into one of the existing blocks or as a new singleton block in
/// one of the gaps.
pub fn order_types(n: usize) -> Result<Vec<OrderType>> {
    if n > MAX_ORDER_TYPE_ELEMENTS {
        return Err(Error::OutOfRange(format!(
            "order types are enumerated for n <= {MAX_ORDER_TYPE_ELEMENTS}, got {n}"
        )));
    }
    let mut partial: Vec<Vec<Subset>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for blocks in &partial {
            for join in 0..blocks.len() {
                let mut grown = blocks.clone();
                grown[join] = grown[join].union(Subset::singleton(i));
                next.push(grown);
            }
            for gap in 0..=blocks.len() {
                let mut grown = blocks.clone();
                grown.insert(gap, Subset::singleton(i));
                next.push(grown);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|blocks| OrderType::new(n, blocks))
        .collect()
}

/// The argmax sets `A_F`, one per support, in family order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDecomposition {
    n: usize,
    parts: Vec<Subset>,
}

impl FaceDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// Componentwise `A_F` inside `A'_F`.
    pub fn is_contained_in(&self, other: &FaceDecomposition) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset_of(*b))
    }

    /// Coordinates that are zero at a relative-interior point.
    pub fn generic_zero_count(&self) -> usize {
        let used = self.parts.iter().fold(Subset::EMPTY, |acc, &p| acc.union(p));
        self.n - used.len()
    }

    /// Every point `sum_F e_{a_F}` with `a_F in A_F`, deduplicated: the
    /// vertices of the face, possibly with some non-vertex lattice points of
    /// the face when a sum of vertices is not a vertex.
    pub fn vertex_sums(&self) -> BTreeSet<Vec<u32>> {
        let mut points = BTreeSet::from([vec![0u32; self.n]]);
        for part in &self.parts {
            let mut next = BTreeSet::new();
            for p in &points {
                for e in part.iter() {
                    let mut q = p.clone();
                    q[e] += 1;
                    next.insert(q);
                }
            }
            points = next;
        }
        points
    }
}

pub fn face_from_ordertype(ot: &OrderType, fam: &SimplexFamily) -> Result<FaceDecomposition> {
    if ot.n() != fam.n {
        return Err(Error::LengthMismatch {
            expected: fam.n,
            got: ot.n(),
        });
    }
    let parts = fam
        .supports
        .iter()
        .map(|&f| {
            let top = ot
                .blocks()
                .iter()
                .rev()
                .find(|b| !b.is_disjoint(f))
                .expect("blocks cover [n]");
            f.intersection(*top)
        })
        .collect();
    Ok(FaceDecomposition { n: fam.n, parts })
}

/// Rank over the rationals via fraction-free (Bareiss) elimination.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom {
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(pivot_row) {
                *entry = (&pivot * &*entry - &factor * p) / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of `sum_F Delta_{A_F}`: the rank of the directions
/// `e_a - e_b`, `a, b in A_F`. One representative pair per element suffices.
pub fn face_dim_oracle(d: &FaceDecomposition) -> usize {
    let mut directions: BTreeSet<(usize, usize)> = BTreeSet::new();
    for part in &d.parts {
        let mut it = part.iter();
        if let Some(first) = it.next() {
            for other in it {
                directions.insert((first, other));
            }
        }
    }
    let rows = directions
        .into_iter()
        .map(|(a, b)| {
            let mut row = vec![BigInt::zero(); d.n];
            row[a] = BigInt::one();
            row[b] = -BigInt::one();
            row
        })
        .collect();
    integer_rank(rows)
}

/// A face with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFace {
    pub decomposition: FaceDecomposition,
    pub dim: usize,
}

/// Every face of the family's Minkowski sum, sorted by dimension and then
/// by decomposition. Order types are processed in parallel chunks.
pub fn oracle_faces(fam: &SimplexFamily) -> Result<Vec<OracleFace>> {
    if fam.n > MAX_FACE_ELEMENTS {
        return Err(Error::OutOfRange(format!(
            "face enumeration supports n <= {MAX_FACE_ELEMENTS}, got {}",
            fam.n
        )));
    }
    let types = order_types(fam.n)?;
    let distinct = types
        .par_chunks(512)
        .map(|chunk| {
            chunk
                .iter()
                .map(|ot| face_from_ordertype(ot, fam).expect("same n"))
                .collect::<HashSet<_>>()
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut faces: Vec<OracleFace> = distinct
        .into_iter()
        .map(|decomposition| {
            let dim = face_dim_oracle(&decomposition);
            OracleFace { decomposition, dim }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.decomposition).cmp(&(b.dim, &b.decomposition)));
    Ok(faces)
}

/// Face counts by dimension, `f_0, ..., f_d`, the whole polytope included.
pub fn f_vector_oracle(fam: &SimplexFamily) -> Result<Vec<BigInt>> {
    let faces = oracle_faces(fam)?;
    let top = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let mut counts = vec![BigInt::zero(); top + 1];
    for f in &faces {
        counts[f.dim] += 1;
    }
    Ok(counts)
}

/// Chains `A_1 <= ... <= A_l` with `dim A_i = chain[i]`.
pub fn flag_count_oracle(fam: &SimplexFamily, chain: &[usize]) -> Result<BigInt> {
    if fam.n > MAX_FLAG_ELEMENTS || chain.len() > MAX_FLAG_LENGTH || chain.is_empty() {
        return Err(Error::OutOfRange(format!(
            "flag counting supports n <= {MAX_FLAG_ELEMENTS} and 1 <= l <= {MAX_FLAG_LENGTH}"
        )));
    }
    if chain.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NonMonotoneChain(chain.to_vec()));
    }
    let faces = oracle_faces(fam)?;
    let mut by_dim: HashMap<usize, Vec<&FaceDecomposition>> = HashMap::new();
    for f in &faces {
        by_dim.entry(f.dim).or_default().push(&f.decomposition);
    }
    let empty = Vec::new();
    let level = |d: usize| by_dim.get(&d).unwrap_or(&empty);
    let mut lower = level(chain[0]);
    let mut counts: Vec<BigInt> = vec![BigInt::one(); lower.len()];
    for &d in &chain[1..] {
        let upper = level(d);
        let next: Vec<BigInt> = upper
            .iter()
            .map(|u| {
                lower
                    .iter()
                    .zip(&counts)
                    .filter(|(l, _)| l.is_contained_in(u))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        lower = upper;
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// The vertices as integer points.
pub fn oracle_vertices(fam: &SimplexFamily) -> Result<BTreeSet<Vec<u32>>> {
    Ok(oracle_faces(fam)?
        .into_iter()
        .filter(|f| f.dim == 0)
        .flat_map(|f| f.decomposition.vertex_sums())
        .collect())
}

/// Number of edges with each generic zero count, keyed by that count.
pub fn edge_zero_profile(fam: &SimplexFamily) -> Result<Vec<(usize, usize)>> {
    let mut profile: HashMap<usize, usize> = HashMap::new();
    for f in oracle_faces(fam)?.into_iter().filter(|f| f.dim == 1) {
        *profile.entry(f.decomposition.generic_zero_count()).or_default() += 1;
    }
    let mut out: Vec<_> = profile.into_iter().collect();
    out.sort();
    Ok(out)
}

/// For every vertex, the number of edges containing it.
pub fn vertex_degrees(fam: &SimplexFamily) -> Result<Vec<usize>> {
    let faces = oracle_faces(fam)?;
    let edges: Vec<_> = faces.iter().filter(|f| f.dim == 1).collect();
    Ok(faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|v| {
            edges
                .iter()
                .filter(|e| v.decomposition.is_contained_in(&e.decomposition))
                .count()
        })
        .collect())
}
