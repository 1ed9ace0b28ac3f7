//! The face lattice of `Pi_{n-1}(k-1)` in terms of ordered pseudo-partitions.
//!
//! A face is identified by an [`Opp`] `(Z, X_0, ..., X_p)`: `Z` holds the
//! coordinates that vanish on the whole face (it may be empty), and the
//! blocks `X_0 < ... < X_p` receive the remaining vertex entries in
//! increasing order. Valid OPPs satisfy `|Z| <= k-1` and `|Z| + |X_0| >= k`;
//! the face has dimension `n - |Z| - p - 1`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::counting::{f_polynomial, flag_count_simple, validate_chain};
use crate::error::{Error, Result};
use crate::exact::{binomial, integer};
use crate::sets::{OrderType, Subset, MAX_ELEMENTS};

/// An integer point of `R^n`, typically a vertex.
pub type VertexVector = Vec<BigInt>;

/// Coefficients of a linear functional `x -> c . x`.
pub type FunctionalVector = Vec<BigRational>;

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n || n > MAX_ELEMENTS {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n <= {MAX_ELEMENTS}, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// The sorted vertex `(0, ..., 0, C(k-1, k-1), ..., C(n-1, k-1))`.
pub fn sorted_vertex(n: usize, k: usize) -> VertexVector {
    (0..n).map(|j| binomial(j, k - 1)).collect()
}

/// Ordered pseudo-partition of `[n]`, the canonical name of a face of
/// `Pi_{n-1}(k-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Opp {
    n: usize,
    k: usize,
    zero: Subset,
    parts: Vec<Subset>,
}

impl Opp {
    /// Validates the pseudo-partition conditions for the given `(n, k)`.
    pub fn new(n: usize, k: usize, zero: Subset, parts: Vec<Subset>) -> Result<Opp> {
        check_nk(n, k)?;
        let bad = |why: String| Err(Error::InvalidOpp(why));
        if parts.is_empty() {
            return bad("no blocks besides Z".into());
        }
        let mut seen = zero;
        for &part in &parts {
            if part.is_empty() {
                return bad("empty block".into());
            }
            if !part.is_disjoint(seen) {
                return bad(format!("block {part} overlaps an earlier block"));
            }
            seen = seen.union(part);
        }
        if seen != Subset::full(n) {
            return bad(format!("blocks do not cover [{n}]"));
        }
        if zero.len() > k - 1 {
            return bad(format!("|Z| = {} exceeds k - 1 = {}", zero.len(), k - 1));
        }
        if zero.len() + parts[0].len() < k {
            return bad(format!(
                "|Z| + |X_0| = {} is below k = {k}",
                zero.len() + parts[0].len()
            ));
        }
        Ok(Opp { n, k, zero, parts })
    }

    /// Parses from 1-based labels.
    pub fn from_labels(n: usize, k: usize, zero: &[usize], parts: &[Vec<usize>]) -> Result<Opp> {
        let zero = Subset::from_labels(zero, n)?;
        let parts = parts
            .iter()
            .map(|p| Subset::from_labels(p, n))
            .collect::<Result<Vec<_>>>()?;
        Opp::new(n, k, zero, parts)
    }

    /// The face `Pi_{n-1}(k-1)` itself.
    pub fn whole(n: usize, k: usize) -> Result<Opp> {
        Opp::new(n, k, Subset::EMPTY, vec![Subset::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn zero_block(&self) -> Subset {
        self.zero
    }

    /// `X_0, ..., X_p`, lowest first.
    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// `p`, the index of the top block.
    pub fn top_index(&self) -> usize {
        self.parts.len() - 1
    }

    /// `n - |Z| - p - 1`
    pub fn dim(&self) -> usize {
        self.n - self.zero.len() - self.parts.len()
    }

    /// True for the whole polytope, which is not a proper face.
    pub fn is_improper(&self) -> bool {
        self.dim() + 1 == self.n
    }

    /// Functional that is 0 on `Z` and `i + 1` on `X_i`.
    pub fn canonical_functional(&self) -> FunctionalVector {
        let mut c = vec![BigRational::zero(); self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for e in part.iter() {
                c[e] = integer(i as i64 + 1);
            }
        }
        c
    }

    fn sort_key(&self) -> (usize, Vec<usize>, Vec<Vec<usize>>) {
        (
            self.dim(),
            self.zero.labels(),
            self.parts.iter().map(|p| p.labels()).collect(),
        )
    }
}

impl PartialOrd for Opp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension ascending, then lexicographic on the 1-based canonical form.
impl Ord for Opp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.k)
            .cmp(&(other.n, other.k))
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for Opp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z={}", self.zero)?;
        for (i, part) in self.parts.iter().enumerate() {
            write!(f, ", X{i}={part}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Opp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Steps `values` to the next distinct permutation in lexicographic order.
fn next_permutation<T: Ord>(values: &mut [T]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// All distinct coordinate permutations of `v`, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(v: &[T]) -> Vec<Vec<T>> {
    let mut current = v.to_vec();
    current.sort();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Vertices of `Pi_{n-1}(k-1)`: the distinct permutations of
/// `(0, ..., 0, C(k-1, k-1), ..., C(n-1, k-1))`, `n!/(k-1)!` of them for
/// `k >= 2`. At `k = 1` the polytope is the single point `(1, ..., 1)`.
pub fn vertices(n: usize, k: usize) -> Result<Vec<VertexVector>> {
    check_nk(n, k)?;
    Ok(distinct_permutations(&sorted_vertex(n, k)))
}

/// The OPP of the face maximizing `c`: top blocks of the order type are
/// taken while they cover fewer than `n - k + 1` coordinates; everything
/// below the last block taken goes into `Z`.
pub fn opp_from_functional(c: &[BigRational], n: usize, k: usize) -> Result<Opp> {
    check_nk(n, k)?;
    if c.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let blocks = OrderType::of_functional(c).into_blocks();
    let need = n - k + 1;
    let mut covered = 0;
    let mut first_taken = blocks.len();
    while covered < need {
        first_taken -= 1;
        covered += blocks[first_taken].len();
    }
    let zero = blocks[..first_taken]
        .iter()
        .fold(Subset::EMPTY, |acc, &b| acc.union(b));
    Opp::new(n, k, zero, blocks[first_taken..].to_vec())
}

/// Vertices of the face `f`: `Z` holds zeros and block `X_i` receives the
/// next `|X_i|` entries of the sorted vertex, in every distinct arrangement.
pub fn face_vertices(f: &Opp) -> Vec<VertexVector> {
    let sorted = sorted_vertex(f.n, f.k);
    let mut blocks: Vec<Subset> = Vec::with_capacity(f.parts.len() + 1);
    if !f.zero.is_empty() {
        blocks.push(f.zero);
    }
    blocks.extend_from_slice(&f.parts);

    let mut out = vec![vec![BigInt::zero(); f.n]];
    let mut offset = 0;
    for block in blocks {
        let positions: Vec<usize> = block.iter().collect();
        let values = &sorted[offset..offset + positions.len()];
        offset += positions.len();
        let arrangements = distinct_permutations(values);
        let mut next = Vec::with_capacity(out.len() * arrangements.len());
        for partial in &out {
            for arrangement in &arrangements {
                let mut v = partial.clone();
                for (&pos, value) in positions.iter().zip(arrangement) {
                    v[pos] = value.clone();
                }
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

pub fn face_dim(f: &Opp) -> usize {
    f.dim()
}

/// Whether face `a` is contained in face `c`.
///
/// With `c` read as its canonical functional, `a` lies in `c` iff `c` is
/// weakly increasing along `a`'s blocks `Z < X_0 < ... < X_p` and constant
/// on every block of `a` with two or more elements other than `Z`.
pub fn face_contains(a: &Opp, c: &Opp) -> Result<bool> {
    if (a.n, a.k) != (c.n, c.k) {
        return Err(Error::ContextMismatch {
            left: (a.n, a.k),
            right: (c.n, c.k),
        });
    }
    let mut rank = vec![0usize; a.n];
    for (i, part) in c.parts.iter().enumerate() {
        for e in part.iter() {
            rank[e] = i + 1;
        }
    }
    let span = |block: Subset| {
        let mut it = block.iter().map(|e| rank[e]);
        let first = it.next().unwrap();
        it.fold((first, first), |(lo, hi), r| (lo.min(r), hi.max(r)))
    };
    let mut prev_max = 0;
    if !a.zero.is_empty() {
        prev_max = span(a.zero).1;
    }
    for &part in &a.parts {
        let (lo, hi) = span(part);
        if lo != hi || lo < prev_max {
            return Ok(false);
        }
        prev_max = hi;
    }
    Ok(true)
}

/// For `a` contained in `c`, the map sending block index `i` of `a` to the
/// index `i'` of the block of `c` containing `X_i(a)`.
pub fn block_index_map(a: &Opp, c: &Opp) -> Result<Option<Vec<usize>>> {
    if !face_contains(a, c)? {
        return Ok(None);
    }
    let map = a
        .parts
        .iter()
        .map(|part| {
            let e = part.min_element().unwrap();
            c.parts.iter().position(|q| q.contains(e))
        })
        .collect::<Option<Vec<usize>>>();
    Ok(map)
}

/// Ordered set partitions of `set` into exactly `blocks` blocks, built by
/// choosing the first block (which always contains the least remaining
/// element or not) recursively.
fn ordered_partitions_into(set: Subset, blocks: usize, out: &mut Vec<Vec<Subset>>) {
    fn rec(rest: Subset, blocks: usize, cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        if blocks == 0 {
            if rest.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if rest.len() < blocks {
            return;
        }
        // enumerate nonempty submasks of rest
        let mut sub = rest.0;
        while sub != 0 {
            let block = Subset(sub);
            cur.push(block);
            rec(rest.difference(block), blocks - 1, cur, out);
            cur.pop();
            sub = (sub - 1) & rest.0;
        }
    }
    rec(set, blocks, &mut Vec::new(), out);
}

/// Every valid OPP of `Pi_{n-1}(k-1)`, optionally only those of dimension
/// `dim_filter`, sorted by dimension and then lexicographically.
pub fn enumerate_faces(n: usize, k: usize, dim_filter: Option<usize>) -> Result<Vec<Opp>> {
    check_nk(n, k)?;
    let full = Subset::full(n);
    let mut out = Vec::new();
    for z_size in 0..k {
        for zero in full.subsets_of_size(z_size) {
            let rest = full.difference(zero);
            for x0_size in (k - z_size)..=rest.len() {
                for x0 in rest.subsets_of_size(x0_size) {
                    let remaining = rest.difference(x0);
                    for p in 0..=remaining.len() {
                        let dim = n - z_size - p - 1;
                        if dim_filter.is_some_and(|d| d != dim) {
                            continue;
                        }
                        let mut tails = Vec::new();
                        ordered_partitions_into(remaining, p, &mut tails);
                        for tail in tails {
                            let mut parts = Vec::with_capacity(p + 1);
                            parts.push(x0);
                            parts.extend(tail);
                            out.push(Opp { n, k, zero, parts });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// How [`count_flags`] obtains its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagMethod {
    /// f-vector entry times a multinomial (valid because the polytope is simple).
    Formula,
    /// Walk the containment relation between enumerated OPPs.
    Enumerate,
}

/// Number of chains `A_1 <= ... <= A_l` of faces with `dim A_i = s_i`.
pub fn count_flags(n: usize, k: usize, chain: &[usize], method: FlagMethod) -> Result<BigInt> {
    check_nk(n, k)?;
    validate_chain(chain, n - 1)?;
    match method {
        FlagMethod::Formula => count_flags_formula(n, k, chain),
        FlagMethod::Enumerate => count_flags_enumerated(n, k, chain),
    }
}

fn count_flags_formula(n: usize, k: usize, chain: &[usize]) -> Result<BigInt> {
    if k == 1 {
        // a point: only the chain of the point itself
        return Ok(BigInt::from(u8::from(chain.iter().all(|&s| s == 0))));
    }
    flag_count_simple(&f_polynomial(n, k)?, n - 1, chain)
}

fn faces_by_dim(n: usize, k: usize, chain: &[usize]) -> Result<HashMap<usize, Vec<Opp>>> {
    let mut by_dim = HashMap::new();
    for &d in chain {
        if let Entry::Vacant(slot) = by_dim.entry(d) {
            slot.insert(enumerate_faces(n, k, Some(d))?);
        }
    }
    Ok(by_dim)
}

fn count_flags_enumerated(n: usize, k: usize, chain: &[usize]) -> Result<BigInt> {
    let by_dim = faces_by_dim(n, k, chain)?;
    let mut level = &by_dim[&chain[0]];
    let mut counts: Vec<BigInt> = vec![BigInt::from(1); level.len()];
    for &d in &chain[1..] {
        let next = &by_dim[&d];
        let mut next_counts = vec![BigInt::zero(); next.len()];
        for (face, count) in level.iter().zip(&counts) {
            if count.is_zero() {
                continue;
            }
            for (slot, upper) in next_counts.iter_mut().zip(next) {
                if face_contains(face, upper)? {
                    *slot += count;
                }
            }
        }
        level = next;
        counts = next_counts;
    }
    Ok(counts.into_iter().sum())
}

/// Lists every chain of faces with the prescribed dimensions.
pub fn enumerate_flags(n: usize, k: usize, chain: &[usize]) -> Result<Vec<Vec<Opp>>> {
    check_nk(n, k)?;
    validate_chain(chain, n - 1)?;
    let by_dim = faces_by_dim(n, k, chain)?;
    let mut flags: Vec<Vec<Opp>> = by_dim[&chain[0]].iter().map(|f| vec![f.clone()]).collect();
    for &d in &chain[1..] {
        let mut extended = Vec::new();
        for flag in &flags {
            for upper in &by_dim[&d] {
                if face_contains(flag.last().unwrap(), upper)? {
                    let mut longer = flag.clone();
                    longer.push(upper.clone());
                    extended.push(longer);
                }
            }
        }
        flags = extended;
    }
    Ok(flags)
}

/// Merges consecutive blocks of `c`'s order type on which `v` is constant,
/// replacing both block values by their average, until no such pair remains.
/// `c` and `v` must be ordered consistently: `c_i < c_j` implies `v_i <= v_j`.
pub fn v_reduce(c: &[BigRational], v: &[BigInt]) -> Result<FunctionalVector> {
    if c.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            got: v.len(),
        });
    }
    for i in 0..c.len() {
        for j in 0..c.len() {
            if c[i] < c[j] && v[i] > v[j] {
                return Err(Error::OutOfRange(format!(
                    "functional and vertex are not ordered consistently at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut out = c.to_vec();
    loop {
        let blocks = OrderType::of_functional(&out).into_blocks();
        let merge = blocks.windows(2).find(|pair| {
            let union = pair[0].union(pair[1]);
            let first = &v[union.min_element().unwrap()];
            union.iter().all(|e| &v[e] == first)
        });
        let Some(pair) = merge else {
            return Ok(out);
        };
        let low = out[pair[0].min_element().unwrap()].clone();
        let high = out[pair[1].min_element().unwrap()].clone();
        let mid = (low + high) / integer(2);
        for e in pair[0].union(pair[1]).iter() {
            out[e] = mid.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::monotone_chains;
    use crate::exact::{factorial, rational};
    use std::collections::BTreeSet;

    fn ints(v: &[i64]) -> VertexVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rats(v: &[i64]) -> FunctionalVector {
        v.iter().map(|&x| integer(x)).collect()
    }

    fn opp(n: usize, k: usize, z: &[usize], parts: &[&[usize]]) -> Opp {
        let parts: Vec<Vec<usize>> = parts.iter().map(|p| p.to_vec()).collect();
        Opp::from_labels(n, k, z, &parts).unwrap()
    }

    #[test]
    fn vertices_examples() {
        let v = vertices(4, 3).unwrap();
        assert_eq!(v.len(), 12);
        assert!(v
            .iter()
            .all(|u| distinct_permutations(u)[0] == ints(&[0, 0, 1, 3])));
        assert_eq!(vertices(5, 5).unwrap().len(), 5);
        assert!(vertices(5, 5).unwrap().iter().all(|u| u.iter().sum::<BigInt>() == 1.into()));
        let hex = vertices(3, 2).unwrap();
        assert_eq!(hex.len(), 6);
        assert!(hex.contains(&ints(&[2, 0, 1])));
        assert!(vertices(3, 0).is_err());
        assert!(vertices(3, 4).is_err());
    }

    #[test]
    fn vertex_counts_and_coordinate_sums() {
        for n in 2..=7 {
            for k in 2..=n {
                let v = vertices(n, k).unwrap();
                assert_eq!(BigInt::from(v.len()), factorial(n) / factorial(k - 1));
                // each k-subset contributes one unit
                let total = binomial(n, k);
                assert!(v.iter().all(|u| u.iter().sum::<BigInt>() == total));
            }
        }
    }

    #[test]
    fn opp_from_functional_examples() {
        assert_eq!(
            opp_from_functional(&rats(&[1, 1, 1, 1]), 4, 3).unwrap(),
            Opp::whole(4, 3).unwrap()
        );
        assert_eq!(
            opp_from_functional(&rats(&[0, 5, 5, 9]), 4, 3).unwrap(),
            opp(4, 3, &[1], &[&[2, 3], &[4]])
        );
        let v = opp_from_functional(&rats(&[1, 2, 3]), 3, 2).unwrap();
        assert_eq!(v, opp(3, 2, &[1], &[&[2], &[3]]));
        assert_eq!(v.dim(), 0);
        assert!(opp_from_functional(&rats(&[1, 2]), 3, 2).is_err());
    }

    #[test]
    fn opp_validation() {
        assert!(Opp::from_labels(3, 2, &[], &[vec![1], vec![2], vec![3]]).is_err());
        assert!(Opp::from_labels(4, 3, &[1, 2, 3], &[vec![4]]).is_err());
        assert!(Opp::from_labels(4, 3, &[1], &[vec![2], vec![2, 3, 4]]).is_err());
        assert!(Opp::from_labels(4, 3, &[1], &[vec![2, 3]]).is_err());
        assert!(Opp::from_labels(4, 3, &[], &[]).is_err());
    }

    #[test]
    fn face_vertices_examples() {
        let edge = opp(4, 3, &[1], &[&[2, 3], &[4]]);
        assert_eq!(face_vertices(&edge), vec![ints(&[0, 0, 1, 3]), ints(&[0, 1, 0, 3])]);
        let mut all = vertices(4, 3).unwrap();
        all.sort();
        assert_eq!(face_vertices(&Opp::whole(4, 3).unwrap()), all);
        for f in enumerate_faces(5, 3, Some(0)).unwrap() {
            assert_eq!(face_vertices(&f).len(), 1);
        }
    }

    #[test]
    fn face_vertices_match_brute_force_filter() {
        // a vertex u lies on the face iff u is maximal for the canonical functional
        for n in 2..=5 {
            for k in 2..=n {
                let all = vertices(n, k).unwrap();
                for f in enumerate_faces(n, k, None).unwrap() {
                    let c = f.canonical_functional();
                    let value = |u: &VertexVector| -> BigRational {
                        u.iter()
                            .zip(&c)
                            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                            .sum()
                    };
                    let best = all.iter().map(value).max().unwrap();
                    let mut expected: Vec<_> =
                        all.iter().filter(|u| value(u) == best).cloned().collect();
                    expected.sort();
                    assert_eq!(face_vertices(&f), expected, "{f}");
                }
            }
        }
    }

    #[test]
    fn face_dim_examples() {
        assert_eq!(face_dim(&opp(4, 3, &[1], &[&[2, 3], &[4]])), 1);
        for n in 1..=7 {
            for k in 1..=n {
                let whole = Opp::whole(n, k).unwrap();
                assert_eq!(face_dim(&whole), n - 1);
                assert!(whole.is_improper());
            }
        }
        let vertex = opp(5, 3, &[4, 5], &[&[1], &[2], &[3]]);
        assert_eq!(face_dim(&vertex), 0);
    }

    #[test]
    fn face_contains_examples() {
        let edge = opp(4, 3, &[1], &[&[2, 3], &[4]]);
        let vertex = opp(4, 3, &[1, 2], &[&[3], &[4]]);
        assert_eq!(face_vertices(&vertex), vec![ints(&[0, 0, 1, 3])]);
        assert!(face_contains(&vertex, &edge).unwrap());
        assert!(face_contains(&edge, &edge).unwrap());
        let other = opp(4, 3, &[1, 3], &[&[2], &[4]]);
        assert!(face_contains(&other, &edge).unwrap());
        assert!(!face_contains(&vertex, &other).unwrap());
        let w = opp(4, 3, &[2, 3], &[&[1], &[4]]);
        assert!(!face_contains(&w, &edge).unwrap());
        let foreign = Opp::whole(4, 2).unwrap();
        assert!(face_contains(&vertex, &foreign).is_err());
        assert_eq!(
            block_index_map(&vertex, &edge).unwrap(),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn containment_iff_vertex_subset() {
        for n in 2..=5 {
            for k in 2..=n {
                let faces = enumerate_faces(n, k, None).unwrap();
                let vsets: Vec<BTreeSet<VertexVector>> = faces
                    .iter()
                    .map(|f| face_vertices(f).into_iter().collect())
                    .collect();
                for (a, va) in faces.iter().zip(&vsets) {
                    for (c, vc) in faces.iter().zip(&vsets) {
                        assert_eq!(
                            face_contains(a, c).unwrap(),
                            va.is_subset(vc),
                            "{a} in {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn block_index_map_is_increasing_surjection() {
        for n in 2..=5 {
            for k in 2..=n {
                let faces = enumerate_faces(n, k, None).unwrap();
                for a in &faces {
                    for c in &faces {
                        if let Some(map) = block_index_map(a, c).unwrap() {
                            assert!(map.windows(2).all(|w| w[0] <= w[1]), "{a} {c}");
                            let image: BTreeSet<_> = map.iter().copied().collect();
                            // every block of c other than X'_0 receives a block of a
                            assert!(
                                (1..c.parts().len()).all(|i| image.contains(&i)),
                                "{a} in {c}: {map:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simple_vertices() {
        for n in 2..=6 {
            for k in 2..=n {
                let edges = enumerate_faces(n, k, Some(1)).unwrap();
                for v in enumerate_faces(n, k, Some(0)).unwrap() {
                    let degree = edges
                        .iter()
                        .filter(|e| face_contains(&v, e).unwrap())
                        .count();
                    assert_eq!(degree, n - 1, "{v}");
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_faces(3, 2, Some(1)).unwrap().len(), 6);
        assert_eq!(enumerate_faces(4, 3, Some(0)).unwrap().len(), 12);
        assert_eq!(enumerate_faces(4, 3, Some(2)).unwrap().len(), 8);
    }

    #[test]
    fn enumeration_matches_f_polynomial() {
        for n in 2..=7 {
            for k in 2..=n {
                let f = f_polynomial(n, k).unwrap();
                let faces = enumerate_faces(n, k, None).unwrap();
                let mut hist = vec![0usize; n];
                for face in &faces {
                    hist[face.dim()] += 1;
                }
                for (d, &count) in hist.iter().enumerate() {
                    assert_eq!(BigInt::from(count), f.coeff(d), "n={n} k={k} d={d}");
                }
                assert!(faces.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn canonical_functional_round_trip() {
        for n in 1..=6 {
            for k in 1..=n {
                for f in enumerate_faces(n, k, None).unwrap() {
                    let back = opp_from_functional(&f.canonical_functional(), n, k).unwrap();
                    assert_eq!(back, f);
                }
            }
        }
    }

    #[test]
    fn functional_depends_only_on_order_type() {
        let a = rats(&[3, 1, 4, 1, 5]);
        let b = vec![
            rational(7, 2),
            integer(-2),
            integer(10),
            integer(-2),
            integer(11),
        ];
        for k in 1..=5 {
            assert_eq!(
                opp_from_functional(&a, 5, k).unwrap(),
                opp_from_functional(&b, 5, k).unwrap()
            );
        }
    }

    #[test]
    fn count_flags_examples() {
        for method in [FlagMethod::Formula, FlagMethod::Enumerate] {
            assert_eq!(count_flags(3, 2, &[0, 1], method).unwrap(), 12.into());
            assert_eq!(count_flags(4, 3, &[3], method).unwrap(), 1.into());
            assert_eq!(count_flags(4, 3, &[0, 2], method).unwrap(), 36.into());
            assert!(count_flags(4, 3, &[2, 0], method).is_err());
        }
    }

    #[test]
    fn flag_methods_agree() {
        for n in 2..=5 {
            for k in 2..=n {
                for ell in 1..=3 {
                    for chain in monotone_chains(ell, n - 1) {
                        assert_eq!(
                            count_flags(n, k, &chain, FlagMethod::Formula).unwrap(),
                            count_flags(n, k, &chain, FlagMethod::Enumerate).unwrap(),
                            "n={n} k={k} chain={chain:?}"
                        );
                    }
                }
            }
        }
        let flags = enumerate_flags(4, 3, &[0, 1, 2]).unwrap();
        assert_eq!(flags.len(), 72);
    }

    #[test]
    fn v_reduce_examples() {
        let out = v_reduce(&rats(&[1, 2, 3, 4]), &ints(&[0, 0, 1, 3])).unwrap();
        assert_eq!(
            out,
            vec![rational(3, 2), rational(3, 2), integer(3), integer(4)]
        );
        assert_eq!(
            v_reduce(&rats(&[2, 2, 2]), &ints(&[0, 1, 3])).unwrap(),
            rats(&[2, 2, 2])
        );
        assert_eq!(v_reduce(&rats(&[1, 2]), &ints(&[0, 3])).unwrap(), rats(&[1, 2]));
        assert!(v_reduce(&rats(&[1, 2]), &ints(&[0, 3, 4])).is_err());
        assert!(v_reduce(&rats(&[1, 2]), &ints(&[3, 0])).is_err());
    }

    #[test]
    fn v_reduce_preserves_face() {
        for n in 2..=5 {
            for k in 2..=n {
                let v = sorted_vertex(n, k);
                for f in enumerate_faces(n, k, None).unwrap() {
                    // sort the functional's coordinates to agree with v
                    let mut c = f.canonical_functional();
                    c.sort();
                    let reduced = v_reduce(&c, &v).unwrap();
                    assert_eq!(
                        opp_from_functional(&reduced, n, k).unwrap(),
                        opp_from_functional(&c, n, k).unwrap()
                    );
                }
            }
        }
    }
}
