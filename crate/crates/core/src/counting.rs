//! Closed-form face and flag counts of the general permutahedron
//! `Pi_{n-1}(k-1)`, the Minkowski sum of all `(k-1)`-simplices in `R^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, multinomial, ordered_partition_count, stirling2};

/// Univariate integer polynomial, coefficient `i` multiplies `x^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `sum_i (-1)^i f_i`
    pub fn alternating_sum(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = deg == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Integer polynomial in `x_1, ..., x_l`, keyed by exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl MultiPolynomial {
    pub fn zero(vars: usize) -> MultiPolynomial {
        MultiPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> MultiPolynomial {
        let mut p = MultiPolynomial::zero(vars);
        p.add_term(vec![0; vars], BigInt::one());
        p
    }

    /// The variable `x_{index+1}`.
    pub fn variable(vars: usize, index: usize) -> MultiPolynomial {
        let mut exps = vec![0; vars];
        exps[index] = 1;
        let mut p = MultiPolynomial::zero(vars);
        p.add_term(exps, BigInt::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exps: Vec<usize>, coeff: BigInt) {
        assert_eq!(exps.len(), self.vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[usize]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.vars, other.vars);
        let mut out = MultiPolynomial::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }
}

/// Checks `0 <= s_1 <= ... <= s_l <= max` and that the chain is nonempty.
pub fn validate_chain(chain: &[usize], max: usize) -> Result<()> {
    if chain.is_empty() || chain.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NonMonotoneChain(chain.to_vec()));
    }
    if *chain.last().unwrap() > max {
        return Err(Error::OutOfRange(format!(
            "chain entry {} exceeds dimension {max}",
            chain.last().unwrap()
        )));
    }
    Ok(())
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::OutOfRange(format!(
            "need 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// f-polynomial of `Pi_{n-1}(k-1)`: choose the zero block `Z` (size `i`) and
/// the bottom block `X_0` (size `j`), then order-partition the rest into `p`
/// blocks; the face has dimension `n - i - p - 1`.
pub fn f_polynomial(n: usize, k: usize) -> Result<IntPolynomial> {
    check_nk(n, k)?;
    let mut coeffs = vec![BigInt::zero(); n];
    for i in 0..k {
        for j in k.saturating_sub(i)..=(n - i) {
            if j == 0 {
                continue;
            }
            let choose = binomial(n, i) * binomial(n - i, j);
            let rest = n - i - j;
            for p in 0..=rest {
                let count = ordered_partition_count(rest, p);
                if count.is_zero() {
                    continue;
                }
                coeffs[n - i - p - 1] += &choose * count;
            }
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `n! / (k-1)!`
pub fn vertex_count(n: usize, k: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    Ok(factorial(n) / factorial(k - 1))
}

/// Edges of the first kind (generic points keep `k-1` zeros) and second
/// kind (`k-2` zeros).
pub fn edge_counts(n: usize, k: usize) -> Result<(BigInt, BigInt)> {
    check_nk(n, k)?;
    let e1 = binomial(n, n - k + 1) * stirling2(n - k + 1, n - k) * factorial(n - k);
    let e2 = binomial(n, n - k + 2) * stirling2(n - k + 2, n - k + 1) * factorial(n - k);
    Ok((e1, e2))
}

/// Flag count of a simple `d`-polytope from its f-vector.
pub fn flag_count_simple(fvec: &IntPolynomial, d: usize, chain: &[usize]) -> Result<BigInt> {
    validate_chain(chain, d)?;
    let diffs: Vec<usize> = chain.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(fvec.coeff(chain[0]) * multinomial(d - chain[0], &diffs)?)
}

/// Flag counts of the standard permutahedron `Pi_{n-1}`.
pub fn perm_flag_count(n: usize, chain: &[usize]) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    validate_chain(chain, n - 1)?;
    let s1 = chain[0];
    let diffs: Vec<usize> = chain.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(ordered_partition_count(n, n - s1) * multinomial(n - s1 - 1, &diffs)?)
}

/// The `l`-flag polynomial in `x_1, ..., x_l`: the coefficient of
/// `x_1^{s_1} x_2^{s_2-s_1} ... x_l^{s_l-s_{l-1}}` counts `s`-chains of faces.
///
/// Computed by composition: each monomial `f_{s_1} x_1^{s_1}` of the
/// f-polynomial is multiplied by `(x_2 + ... + x_l + 1)^{n-1-s_1}`.
pub fn flag_polynomial(n: usize, k: usize, ell: usize) -> Result<MultiPolynomial> {
    if ell == 0 {
        return Err(Error::OutOfRange("flag length must be at least 1".into()));
    }
    let f = f_polynomial(n, k)?;
    let d = n - 1;
    let mut base = MultiPolynomial::one(ell);
    for var in 1..ell {
        base = base.add(&MultiPolynomial::variable(ell, var));
    }
    // powers[e] = base^e
    let mut powers = vec![MultiPolynomial::one(ell)];
    for e in 1..=d {
        let next = powers[e - 1].mul(&base);
        powers.push(next);
    }
    let mut out = MultiPolynomial::zero(ell);
    for (s1, coeff) in f.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let mut mono = MultiPolynomial::zero(ell);
        let mut exps = vec![0; ell];
        exps[0] = s1;
        mono.add_term(exps, coeff.clone());
        out = out.add(&mono.mul(&powers[d - s1]));
    }
    Ok(out)
}

/// Exponent tuple `(s_1, s_2 - s_1, ...)` of a chain.
pub fn chain_exponents(chain: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(chain.len());
    for (idx, &s) in chain.iter().enumerate() {
        out.push(if idx == 0 { s } else { s - chain[idx - 1] });
    }
    out
}

/// All monotone chains of length `ell` with entries in `0..=max`.
pub fn monotone_chains(ell: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(ell: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == ell {
            out.push(cur.clone());
            return;
        }
        for s in lo..=max {
            cur.push(s);
            rec(ell, s, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(ell, 0, max, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn f_polynomial_examples() {
        let f = f_polynomial(4, 3).unwrap();
        assert_eq!(f, IntPolynomial::from_i64(&[12, 18, 8, 1]));
        assert_eq!(f.to_string(), "x^3 + 8x^2 + 18x + 12");
        assert_eq!(f_polynomial(3, 2).unwrap(), IntPolynomial::from_i64(&[6, 6, 1]));
        assert!(f_polynomial(3, 1).is_err());
        assert!(f_polynomial(3, 4).is_err());
    }

    #[test]
    fn simplex_column() {
        for n in 2..=9 {
            // ((x+1)^n - 1)/x has coefficients C(n, i+1)
            let expected = IntPolynomial::new((0..n).map(|i| binomial(n, i + 1)).collect());
            assert_eq!(f_polynomial(n, n).unwrap(), expected);
        }
    }

    #[test]
    fn vertex_and_edge_examples() {
        assert_eq!(vertex_count(4, 3).unwrap(), big(12));
        assert_eq!(edge_counts(4, 3).unwrap(), (big(6), big(12)));
        assert_eq!(vertex_count(3, 2).unwrap(), big(6));
        let (e1, e2) = edge_counts(3, 2).unwrap();
        assert_eq!(e1 + e2, big(6));
        for k in 2..=7 {
            assert!(edge_counts(k, k).unwrap().0.is_zero());
        }
    }

    #[test]
    fn edge_counts_match_closed_forms() {
        for n in 2..=9 {
            for k in 2..=n {
                let (e1, e2) = edge_counts(n, k).unwrap();
                let nf = factorial(n);
                assert_eq!(&e1 * 2 * factorial(k - 1), BigInt::from(n - k) * &nf);
                assert_eq!(&e2 * 2 * factorial(k - 2), nf.clone());
                assert_eq!((e1 + e2) * 2 * factorial(k - 1), BigInt::from(n - 1) * nf);
            }
        }
    }

    #[test]
    fn low_coefficients_agree_with_vertex_and_edge_counts() {
        for n in 2..=8 {
            for k in 2..=n {
                let f = f_polynomial(n, k).unwrap();
                let (e1, e2) = edge_counts(n, k).unwrap();
                assert_eq!(f.coeff(0), vertex_count(n, k).unwrap());
                assert_eq!(f.coeff(1), e1 + e2);
                assert_eq!(f.coeff(n - 1), BigInt::one());
            }
        }
    }

    #[test]
    fn euler_relation() {
        for n in 2..=8usize {
            for k in 2..=n {
                let f = f_polynomial(n, k).unwrap();
                assert_eq!(f.alternating_sum(), BigInt::one(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn flag_count_simple_examples() {
        let hexagon = f_polynomial(3, 2).unwrap();
        assert_eq!(flag_count_simple(&hexagon, 2, &[0, 1]).unwrap(), big(12));
        assert_eq!(flag_count_simple(&hexagon, 2, &[2]).unwrap(), big(1));
        let f = f_polynomial(4, 3).unwrap();
        assert_eq!(flag_count_simple(&f, 3, &[0, 1, 2]).unwrap(), big(72));
        assert_eq!(flag_count_simple(&f, 3, &[0, 2]).unwrap(), big(36));
        assert!(flag_count_simple(&f, 3, &[2, 1]).is_err());
        assert!(flag_count_simple(&f, 3, &[0, 4]).is_err());
    }

    #[test]
    fn perm_flag_examples() {
        assert_eq!(perm_flag_count(3, &[0, 1]).unwrap(), big(12));
        assert_eq!(perm_flag_count(3, &[2]).unwrap(), big(1));
        assert_eq!(perm_flag_count(4, &[1, 2]).unwrap(), big(72));
        assert!(perm_flag_count(4, &[3, 1]).is_err());
    }

    #[test]
    fn perm_flags_agree_with_simple_reduction() {
        for n in 2..=6 {
            let f = f_polynomial(n, 2).unwrap();
            for ell in 1..=3 {
                for chain in monotone_chains(ell, n - 1) {
                    assert_eq!(
                        perm_flag_count(n, &chain).unwrap(),
                        flag_count_simple(&f, n - 1, &chain).unwrap(),
                        "n={n} chain={chain:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn flag_polynomial_examples() {
        let f1 = flag_polynomial(4, 3, 1).unwrap();
        for (deg, c) in f_polynomial(4, 3).unwrap().coeffs().iter().enumerate() {
            assert_eq!(&f1.coeff(&[deg]), c);
        }
        assert_eq!(flag_polynomial(3, 2, 2).unwrap().coeff(&[0, 1]), big(12));
        assert_eq!(flag_polynomial(4, 3, 2).unwrap().coeff(&[3, 0]), big(1));
    }

    #[test]
    fn flag_polynomial_matches_lemma_counts() {
        for n in 2..=6 {
            for k in 2..=n {
                let f = f_polynomial(n, k).unwrap();
                for ell in 1..=3 {
                    let poly = flag_polynomial(n, k, ell).unwrap();
                    let chains = monotone_chains(ell, n - 1);
                    assert_eq!(poly.len(), chains.len());
                    for chain in chains {
                        assert_eq!(
                            poly.coeff(&chain_exponents(&chain)),
                            flag_count_simple(&f, n - 1, &chain).unwrap()
                        );
                    }
                }
            }
        }
    }

    /// Simplex faces are nonempty subsets of `[n]`; chains counted by brute force.
    #[test]
    fn simplex_flag_polynomial_by_subset_chains() {
        for n in 2..=5usize {
            let faces: Vec<u32> = (1..(1u32 << n)).collect();
            for ell in 1..=3 {
                let poly = flag_polynomial(n, n, ell).unwrap();
                for chain in monotone_chains(ell, n - 1) {
                    let mut count = 0u64;
                    fn rec(
                        faces: &[u32],
                        chain: &[usize],
                        prev: Option<u32>,
                        count: &mut u64,
                    ) {
                        let Some((&dim, rest)) = chain.split_first() else {
                            *count += 1;
                            return;
                        };
                        for &f in faces {
                            if f.count_ones() as usize != dim + 1 {
                                continue;
                            }
                            if prev.is_some_and(|p| p & !f != 0) {
                                continue;
                            }
                            rec(faces, rest, Some(f), count);
                        }
                    }
                    rec(&faces, &chain, None, &mut count);
                    assert_eq!(poly.coeff(&chain_exponents(&chain)), BigInt::from(count));
                }
            }
        }
    }

    #[test]
    fn display_of_polynomials() {
        assert_eq!(IntPolynomial::from_i64(&[6, 6, 1]).to_string(), "x^2 + 6x + 6");
        assert_eq!(IntPolynomial::from_i64(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
        assert_eq!(IntPolynomial::from_i64(&[0, 0]).to_string(), "0");
    }
}
