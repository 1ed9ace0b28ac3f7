//! Truncated trivariate power series over the rationals and the exponential
//! flag generating functions of the family `{Pi_{n-1}(k-1)}_{n >= k}`.
//!
//! A [`BiSeries`] lives in `Q[x, s, y] / (x^(Dx+1), s^(Ds+1), y^(Dy+1))`.
//! That quotient is a ring, so sums, products, inverses of units and
//! exponentials of non-units are exact up to the caps. Only
//! [`BiSeries::divide_exact`] loses precision: dividing by a monomial of
//! degree `(mx, ms, my)` lowers the caps by the same amounts.
//!
//! `x` marks the lowest face dimension of a flag, `s` stands for
//! `x_2 + ... + x_l` and `y` carries `n`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::validate_chain;
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, multinomial, stirling2};

/// Degree caps `(Dx, Ds, Dy)`, inclusive.
pub type Caps = (usize, usize, usize);

/// Default caps for [`xi_series`].
pub const DEFAULT_CAPS: Caps = (10, 6, 10);

/// A truncated power series in `x`, `s`, `y` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    caps: Caps,
    coeffs: Vec<BigRational>,
}

fn inverse_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

impl BiSeries {
    pub fn zero(caps: Caps) -> BiSeries {
        let len = (caps.0 + 1) * (caps.1 + 1) * (caps.2 + 1);
        BiSeries {
            caps,
            coeffs: vec![BigRational::zero(); len],
        }
    }

    pub fn one(caps: Caps) -> BiSeries {
        BiSeries::monomial(caps, (0, 0, 0), BigRational::one())
    }

    /// `value * x^a s^b y^c`, or zero if beyond the caps.
    pub fn monomial(caps: Caps, exps: Caps, value: BigRational) -> BiSeries {
        let mut out = BiSeries::zero(caps);
        out.set(exps, value);
        out
    }

    /// Builds from a coefficient function, evaluated at every position.
    pub fn from_fn<F: FnMut(usize, usize, usize) -> BigRational>(caps: Caps, mut f: F) -> BiSeries {
        let mut out = BiSeries::zero(caps);
        for a in 0..=caps.0 {
            for b in 0..=caps.1 {
                for c in 0..=caps.2 {
                    let idx = out.index(a, b, c);
                    out.coeffs[idx] = f(a, b, c);
                }
            }
        }
        out
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * (self.caps.1 + 1) + b) * (self.caps.2 + 1) + c
    }

    fn within(&self, (a, b, c): Caps) -> bool {
        a <= self.caps.0 && b <= self.caps.1 && c <= self.caps.2
    }

    /// Coefficient of `x^a s^b y^c`; zero beyond the caps.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> BigRational {
        if self.within((a, b, c)) {
            self.coeffs[self.index(a, b, c)].clone()
        } else {
            BigRational::zero()
        }
    }

    /// Sets a coefficient; positions beyond the caps are ignored.
    pub fn set(&mut self, exps: Caps, value: BigRational) {
        if self.within(exps) {
            let idx = self.index(exps.0, exps.1, exps.2);
            self.coeffs[idx] = value;
        }
    }

    /// Nonzero terms in `(x, s, y)`-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Caps, &BigRational)> + '_ {
        let (_, ds, dy) = self.caps;
        self.coeffs.iter().enumerate().filter_map(move |(idx, v)| {
            if v.is_zero() {
                return None;
            }
            let c = idx % (dy + 1);
            let b = idx / (dy + 1) % (ds + 1);
            let a = idx / ((dy + 1) * (ds + 1));
            Some(((a, b, c), v))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs[0].clone()
    }

    fn check_caps(&self, other: &BiSeries) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapMismatch(self.caps, other.caps));
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BiSeries { caps: self.caps, coeffs })
    }

    pub fn sub(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(BiSeries { caps: self.caps, coeffs })
    }

    pub fn scale(&self, factor: &BigRational) -> BiSeries {
        BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|v| v * factor).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_caps(other)?;
        let right: Vec<(Caps, &BigRational)> = other.terms().collect();
        let mut out = BiSeries::zero(self.caps);
        for ((a, b, c), u) in self.terms() {
            for &((a2, b2, c2), v) in &right {
                let exps = (a + a2, b + b2, c + c2);
                if out.within(exps) {
                    let idx = out.index(exps.0, exps.1, exps.2);
                    out.coeffs[idx] += u * v;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: usize) -> BiSeries {
        let mut out = BiSeries::one(self.caps);
        for _ in 0..exponent {
            out = out.mul(self).expect("same caps");
        }
        out
    }

    /// `exp(self)`; requires a zero constant term.
    ///
    /// Solves `E(F) = F E(A)` for `F = exp(A)`, where `E` multiplies
    /// `x^a s^b y^c` by `a + b + c`.
    pub fn exp(&self) -> Result<BiSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let weighted: Vec<(Caps, BigRational)> = self
            .terms()
            .map(|((a, b, c), v)| ((a, b, c), v * BigInt::from(a + b + c)))
            .collect();
        let mut out = BiSeries::zero(self.caps);
        out.coeffs[0] = BigRational::one();
        let (dx, ds, dy) = self.caps;
        for a in 0..=dx {
            for b in 0..=ds {
                for c in 0..=dy {
                    let degree = a + b + c;
                    if degree == 0 {
                        continue;
                    }
                    let mut acc = BigRational::zero();
                    for ((a2, b2, c2), w) in &weighted {
                        if *a2 <= a && *b2 <= b && *c2 <= c {
                            let prev = &out.coeffs[out.index(a - a2, b - b2, c - c2)];
                            if !prev.is_zero() {
                                acc += w * prev;
                            }
                        }
                    }
                    let idx = out.index(a, b, c);
                    out.coeffs[idx] = acc / BigInt::from(degree);
                }
            }
        }
        Ok(out)
    }

    /// `E_m(self) = sum_{j <= m} self^j / j!`.
    pub fn trunc_exp(&self, m: usize) -> BiSeries {
        let mut out = BiSeries::zero(self.caps);
        let mut power = BiSeries::one(self.caps);
        for j in 0..=m {
            out = out.add(&power.scale(&inverse_factorial(j))).expect("same caps");
            if j < m {
                power = power.mul(self).expect("same caps");
            }
        }
        out
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<BiSeries> {
        let unit = self.constant_term();
        if unit.is_zero() {
            return Err(Error::InexactDivision("series has no constant term".into()));
        }
        let unit_inv = unit.recip();
        let tail: Vec<(Caps, &BigRational)> =
            self.terms().filter(|(e, _)| *e != (0, 0, 0)).collect();
        let mut out = BiSeries::zero(self.caps);
        out.coeffs[0] = unit_inv.clone();
        let (dx, ds, dy) = self.caps;
        for a in 0..=dx {
            for b in 0..=ds {
                for c in 0..=dy {
                    if a + b + c == 0 {
                        continue;
                    }
                    let mut acc = BigRational::zero();
                    for &((a2, b2, c2), u) in &tail {
                        if a2 <= a && b2 <= b && c2 <= c {
                            let prev = &out.coeffs[out.index(a - a2, b - b2, c - c2)];
                            if !prev.is_zero() {
                                acc += u * prev;
                            }
                        }
                    }
                    let idx = out.index(a, b, c);
                    out.coeffs[idx] = -acc * &unit_inv;
                }
            }
        }
        Ok(out)
    }

    /// Smallest exponent of each variable over the nonzero terms.
    pub fn min_exponents(&self) -> Option<Caps> {
        self.terms().map(|(e, _)| e).fold(None, |acc, (a, b, c)| {
            Some(match acc {
                None => (a, b, c),
                Some((x, s, y)) => (x.min(a), s.min(b), y.min(c)),
            })
        })
    }

    /// Divides by the monomial `x^a s^b y^c`; the caps drop by `(a, b, c)`.
    pub fn divide_monomial(&self, (ma, mb, mc): Caps) -> Result<BiSeries> {
        let (dx, ds, dy) = self.caps;
        if ma > dx || mb > ds || mc > dy {
            return Err(Error::CapsTooSmall(format!(
                "cannot divide caps {:?} by x^{ma} s^{mb} y^{mc}",
                self.caps
            )));
        }
        if let Some(((a, b, c), _)) = self.terms().find(|((a, b, c), _)| *a < ma || *b < mb || *c < mc) {
            return Err(Error::InexactDivision(format!(
                "term x^{a} s^{b} y^{c} is not divisible by x^{ma} s^{mb} y^{mc}"
            )));
        }
        let caps = (dx - ma, ds - mb, dy - mc);
        Ok(BiSeries::from_fn(caps, |a, b, c| self.coeff(a + ma, b + mb, c + mc)))
    }

    /// Exact quotient `self / den` with `den = monomial * unit`. The
    /// monomial is the componentwise minimum exponent of `den`, which must
    /// divide every term of `self`. Caps drop by the monomial's degrees.
    pub fn divide_exact(&self, den: &BiSeries) -> Result<BiSeries> {
        self.check_caps(den)?;
        let monomial = den
            .min_exponents()
            .ok_or_else(|| Error::InexactDivision("division by zero series".into()))?;
        let unit = den.divide_monomial(monomial)?;
        if unit.constant_term().is_zero() {
            return Err(Error::InexactDivision(
                "denominator is not a monomial times a unit".into(),
            ));
        }
        self.divide_monomial(monomial)?.mul(&unit.inverse()?)
    }

    /// Restricts to smaller caps.
    pub fn truncate(&self, caps: Caps) -> Result<BiSeries> {
        if caps.0 > self.caps.0 || caps.1 > self.caps.1 || caps.2 > self.caps.2 {
            return Err(Error::CapsTooSmall(format!(
                "cannot widen caps {:?} to {caps:?}",
                self.caps
            )));
        }
        Ok(BiSeries::from_fn(caps, |a, b, c| self.coeff(a, b, c)))
    }

    /// Formal `d/dx`; the x-cap drops by one.
    pub fn derivative_x(&self) -> Result<BiSeries> {
        let (dx, ds, dy) = self.caps;
        if dx == 0 {
            return Err(Error::CapsTooSmall("x-cap is already 0".into()));
        }
        Ok(BiSeries::from_fn((dx - 1, ds, dy), |a, b, c| {
            self.coeff(a + 1, b, c) * BigInt::from(a + 1)
        }))
    }

    /// Formal antiderivative in `x` with zero `x^0` part; the x-cap grows by one.
    pub fn integral_x(&self) -> BiSeries {
        let (dx, ds, dy) = self.caps;
        BiSeries::from_fn((dx + 1, ds, dy), |a, b, c| {
            if a == 0 {
                BigRational::zero()
            } else {
                self.coeff(a - 1, b, c) / BigInt::from(a)
            }
        })
    }

    /// Coefficient table as CSV rows `k,ell,deg_x,deg_s,deg_y,num,den`,
    /// nonzero terms only, header included.
    pub fn to_csv(&self, k: usize, ell: usize) -> String {
        let mut out = String::from("k,ell,deg_x,deg_s,deg_y,num,den\n");
        for ((a, b, c), v) in self.terms() {
            writeln!(out, "{k},{ell},{a},{b},{c},{},{}", v.numer(), v.denom()).unwrap();
        }
        out
    }
}

impl std::fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiSeries{:?}[", self.caps)?;
        for (idx, ((a, b, c), v)) in self.terms().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v}) x^{a} s^{b} y^{c}")?;
        }
        write!(f, "]")
    }
}

/// `e^(xy)`
fn exp_of_xy(caps: Caps) -> BiSeries {
    BiSeries::from_fn(caps, |a, b, c| {
        if b == 0 && a == c {
            inverse_factorial(a)
        } else {
            BigRational::zero()
        }
    })
}

/// `e^y`
fn exp_of_y(caps: Caps) -> BiSeries {
    BiSeries::from_fn(caps, |a, b, c| {
        if a == 0 && b == 0 {
            inverse_factorial(c)
        } else {
            BigRational::zero()
        }
    })
}

/// `E_m(xy)`
fn trunc_exp_of_xy(caps: Caps, m: usize) -> BiSeries {
    BiSeries::from_fn(caps, |a, b, c| {
        if b == 0 && a == c && a <= m {
            inverse_factorial(a)
        } else {
            BigRational::zero()
        }
    })
}

/// `E_m(y)`
fn trunc_exp_of_y(caps: Caps, m: usize) -> BiSeries {
    BiSeries::from_fn(caps, |a, b, c| {
        if a == 0 && b == 0 && c <= m {
            inverse_factorial(c)
        } else {
            BigRational::zero()
        }
    })
}

/// `x (e^y - 1)`
fn touchard_exponent(caps: Caps) -> BiSeries {
    BiSeries::from_fn(caps, |a, b, c| {
        if a == 1 && b == 0 && c >= 1 {
            inverse_factorial(c)
        } else {
            BigRational::zero()
        }
    })
}

/// `e^{x(e^y - 1)}`, whose `x^k y^n` coefficient is `S(n, k) / n!`.
pub fn touchard_series(dx: usize, dy: usize) -> BiSeries {
    touchard_exponent((dx, 0, dy)).exp().expect("no constant term")
}

/// `1 + s`, or `1` when there is a single flag level.
fn block_sum(caps: Caps, ell: usize) -> BiSeries {
    let mut out = BiSeries::one(caps);
    if ell >= 2 {
        out.set((0, 1, 0), BigRational::one());
    }
    out
}

/// `(S / x)(e^{xy} - 1) = S * sum_{j >= 1} x^{j-1} y^j / j!`, built termwise.
fn scaled_exponent(caps: Caps, ell: usize) -> BiSeries {
    let base = BiSeries::from_fn(caps, |a, b, c| {
        if b == 0 && c >= 1 && a + 1 == c {
            inverse_factorial(c)
        } else {
            BigRational::zero()
        }
    });
    base.mul(&block_sum(caps, ell)).expect("same caps")
}

/// `t^i (e^t - E_{k-i-1}(t)) / (i! (e^t - 1)^{i+1})` at `t = xy`.
fn leading_factor(k: usize, i: usize, caps: Caps) -> Result<BiSeries> {
    let raised = (caps.0 + i + 1, caps.1, caps.2 + i + 1);
    let e = exp_of_xy(raised);
    let t_pow = BiSeries::monomial(raised, (i, 0, i), inverse_factorial(i));
    let tail = e.sub(&trunc_exp_of_xy(raised, k - i - 1))?;
    let num = t_pow.mul(&tail)?;
    let den = e.sub(&BiSeries::one(raised))?.pow(i + 1);
    // numerator starts at (xy)^k, denominator at (xy)^{i+1} with i < k
    debug_assert!(num.min_exponents().is_some_and(|(a, _, c)| a > i && c > i));
    num.divide_exact(&den)?.truncate(caps)
}

/// Exponential `l`-flag generating function of `{Pi_{n-1}(k-1)}_{n >= k}`.
///
/// The coefficient of `x^{s_1} s^m y^n` is the sum of
/// `f_s / ((n - s_1)! n!)` over chains `s` with first entry `s_1`,
/// `s_l - s_1 = m`, with each chain weighted by the number of ways its
/// step sizes arrange into `x_2 ... x_l`. For `l = 1` no `s` terms occur.
pub fn xi_series(k: usize, ell: usize, caps: Caps) -> Result<BiSeries> {
    if k < 1 || ell < 1 {
        return Err(Error::OutOfRange(format!("need k >= 1 and ell >= 1, got k = {k}, ell = {ell}")));
    }
    let (dx, _, dy) = caps;
    if dy < k || dx + 1 < k {
        return Err(Error::CapsTooSmall(format!(
            "caps {caps:?} cannot hold the n = k terms; need Dx >= {} and Dy >= {k}",
            k - 1
        )));
    }
    let w = scaled_exponent(caps, ell);
    let exp_w = w.exp()?;
    let mut sum = BiSeries::zero(caps);
    for i in 0..k {
        let tail = exp_w.sub(&w.trunc_exp(i))?;
        sum = sum.add(&leading_factor(k, i, caps)?.mul(&tail)?)?;
    }
    sum.mul(&block_sum(caps, ell).inverse()?)
}

/// `(e^{(S/x)(e^{xy}-1)} - 1) / S`: the generating function of the ordinary
/// permutohedra, `n >= 1`.
pub fn permutohedra_series(ell: usize, caps: Caps) -> Result<BiSeries> {
    let w = scaled_exponent(caps, ell);
    let shifted = w.exp()?.sub(&BiSeries::one(caps))?;
    shifted.mul(&block_sum(caps, ell).inverse()?)
}

/// `y^i (e^y - E_{k-i-1}(y)) / (i! (e^y-1)^{i+1}) * (e^{x(e^y-1)} - E_i(x(e^y-1)))`
pub fn g_component(k: usize, i: usize, dx: usize, dy: usize) -> Result<BiSeries> {
    if i >= k {
        return Err(Error::OutOfRange(format!("component {i} needs i < k = {k}")));
    }
    let caps = (dx, 0, dy);
    let raised = (dx, 0, dy + i + 1);
    let e = exp_of_y(raised);
    let num = BiSeries::monomial(raised, (0, 0, i), inverse_factorial(i))
        .mul(&e.sub(&trunc_exp_of_y(raised, k - i - 1))?)?;
    let den = e.sub(&BiSeries::one(raised))?.pow(i + 1);
    // den is y^{i+1} times a unit; the x-cap is untouched
    let factor = num.divide_exact(&den)?;
    let u = touchard_exponent(caps);
    let bracket = u.exp()?.sub(&u.trunc_exp(i))?;
    factor.mul(&bracket)
}

/// `sum_n g_{n;i}(x) y^n / n!` from the Stirling-number expansion of `g_{n;i}`.
pub fn g_component_direct(k: usize, i: usize, dx: usize, dy: usize) -> Result<BiSeries> {
    if i >= k {
        return Err(Error::OutOfRange(format!("component {i} needs i < k = {k}")));
    }
    let mut out = BiSeries::zero((dx, 0, dy));
    for n in 1..=dy {
        if n < k {
            continue;
        }
        let outer = binomial(n, i);
        for j in (k - i)..=(n - i) {
            let rest = n - i - j;
            for p in 0..=rest {
                let deg = i + p + 1;
                let term = BigRational::new(
                    &outer * binomial(n - i, j) * stirling2(rest, p) * factorial(p),
                    factorial(deg) * factorial(n),
                );
                let prev = out.coeff(deg, 0, n);
                out.set((deg, 0, n), prev + term);
            }
        }
    }
    Ok(out)
}

/// `e^{x(e^y-1)} (e^y - 1)`
pub fn alpha_series(dx: usize, dy: usize) -> Result<BiSeries> {
    let caps = (dx, 0, dy);
    touchard_series(dx, dy).mul(&exp_of_y(caps).sub(&BiSeries::one(caps))?)
}

/// `(y^q / q!) e^{x(e^y-1)}`
pub fn alpha_q_series(q: usize, dx: usize, dy: usize) -> Result<BiSeries> {
    let caps = (dx, 0, dy);
    BiSeries::monomial(caps, (0, 0, q), inverse_factorial(q)).mul(&touchard_series(dx, dy))
}

/// Recovers `f_s(Pi_{n-1}(k-1))` from a flag generating function produced
/// by [`xi_series`] with the same `l`.
pub fn extract_flag_count(series: &BiSeries, n: usize, chain: &[usize], ell: usize) -> Result<BigInt> {
    if chain.len() != ell {
        return Err(Error::LengthMismatch {
            expected: ell,
            got: chain.len(),
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    validate_chain(chain, n - 1)?;
    let first = chain[0];
    let m = chain[ell - 1] - first;
    let (dx, ds, dy) = series.caps();
    if n > dy || first > dx || m > ds {
        return Err(Error::CapsTooSmall(format!(
            "coefficient x^{first} s^{m} y^{n} lies outside caps {:?}",
            series.caps()
        )));
    }
    let steps: Vec<usize> = chain.windows(2).map(|w| w[1] - w[0]).collect();
    // the last step is implicit in the multinomial
    let arrangements = match steps.split_last() {
        Some((_, explicit)) => multinomial(m, explicit)?,
        None => BigInt::one(),
    };
    let scaled = series.coeff(first, m, n) * BigRational::from_integer(factorial(n - first) * factorial(n));
    if !scaled.is_integer() {
        return Err(Error::InexactDivision(format!(
            "coefficient {scaled} is not an integer multiple"
        )));
    }
    Ok(scaled.to_integer() * arrangements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{flag_polynomial, monotone_chains};
    use crate::exact::{integer, rational};
    use crate::faces::{count_flags, FlagMethod};
    use proptest::prelude::*;

    #[test]
    fn ring_examples() {
        let caps = (3, 0, 3);
        let xy = BiSeries::monomial(caps, (1, 0, 1), integer(1));
        let one = BiSeries::one(caps);
        let prod = one.add(&xy).unwrap().mul(&one.sub(&xy).unwrap()).unwrap();
        let expected = one.sub(&BiSeries::monomial(caps, (2, 0, 2), integer(1))).unwrap();
        assert_eq!(prod, expected);
        assert_eq!(one.add(&BiSeries::zero(caps)).unwrap(), one);
        assert!(one.add(&BiSeries::one((3, 0, 2))).is_err());

        // (sum x^i y^i / i!)^2 at x^2 y^2: 1/2! + 1 + 1/2! = 2
        let e = exp_of_xy(caps);
        assert_eq!(e.mul(&e).unwrap().coeff(2, 0, 2), integer(2));
    }

    #[test]
    fn exp_examples() {
        let caps = (4, 2, 4);
        assert_eq!(BiSeries::zero(caps).exp().unwrap(), BiSeries::one(caps));
        assert!(BiSeries::one(caps).exp().is_err());
        let t = touchard_series(6, 6);
        assert_eq!(t.coeff(2, 0, 3), rational(1, 2));
        assert_eq!(t.coeff(2, 0, 4), rational(7, 24));
        assert_eq!(t.coeff(0, 0, 0), integer(1));
        let bell: BigRational = (0..=3).map(|k| t.coeff(k, 0, 3)).sum::<BigRational>() * BigInt::from(6);
        assert_eq!(bell, integer(5));
    }

    #[test]
    fn exp_matches_power_sum() {
        let caps = (3, 2, 3);
        let a = BiSeries::from_fn(caps, |a, b, c| {
            if a + b + c == 0 {
                BigRational::zero()
            } else {
                rational((a * 3 + b * 5 + c) as i64 % 7 - 3, (a + b + c) as i64)
            }
        });
        let mut sum = BiSeries::zero(caps);
        for j in 0..=(3 + 2 + 3) {
            sum = sum.add(&a.pow(j).scale(&inverse_factorial(j))).unwrap();
        }
        assert_eq!(a.exp().unwrap(), sum);
        // exp(a) exp(-a) = 1
        let neg = a.scale(&integer(-1));
        assert_eq!(
            a.exp().unwrap().mul(&neg.exp().unwrap()).unwrap(),
            BiSeries::one(caps)
        );
    }

    #[test]
    fn division_examples() {
        let caps = (5, 0, 5);
        let e = exp_of_xy(caps);
        let shifted = e.sub(&BiSeries::one(caps)).unwrap();
        let q = shifted.divide_exact(&shifted).unwrap();
        assert_eq!(q, BiSeries::one((4, 0, 4)));

        let ey = exp_of_y(caps).sub(&BiSeries::one(caps)).unwrap();
        let q = ey.mul(&ey).unwrap().divide_exact(&ey).unwrap();
        assert_eq!(q, ey.truncate((5, 0, 4)).unwrap());

        let num = exp_of_y(caps).sub(&trunc_exp_of_y(caps, 1)).unwrap();
        let q = num.divide_exact(&ey.mul(&ey).unwrap()).unwrap();
        assert_eq!(q.caps(), (5, 0, 3));
        assert_eq!(q.coeff(0, 0, 0), rational(1, 2));

        // y is not divisible by y^2
        assert!(ey.divide_exact(&ey.mul(&ey).unwrap()).is_err());
        // x + y contains no monomial factor but no constant either
        let mixed = BiSeries::monomial(caps, (1, 0, 0), integer(1))
            .add(&BiSeries::monomial(caps, (0, 0, 1), integer(1)))
            .unwrap();
        assert!(BiSeries::one(caps).divide_exact(&mixed).is_err());
    }

    #[test]
    fn inverse_of_unit() {
        let caps = (3, 3, 3);
        let u = BiSeries::from_fn(caps, |a, b, c| integer(((a + 2 * b + 3 * c) % 5) as i64 + 1));
        assert_eq!(u.mul(&u.inverse().unwrap()).unwrap(), BiSeries::one(caps));
    }

    #[test]
    fn xi_examples() {
        let xi = xi_series(2, 1, DEFAULT_CAPS).unwrap();
        assert_eq!(xi.coeff(0, 0, 3), rational(1, 6));
        for n in 2..=6 {
            let top = xi_series(n, 1, (n, 0, n)).unwrap();
            assert_eq!(top.coeff(n - 1, 0, n), BigRational::new(1.into(), factorial(n)));
        }
        assert!(xi_series(3, 1, (5, 0, 2)).is_err());
        assert!(xi_series(0, 1, DEFAULT_CAPS).is_err());
    }

    #[test]
    fn xi_has_no_terms_below_k() {
        for k in 2..=4 {
            let xi = xi_series(k, 2, (6, 3, 6)).unwrap();
            for ((_, _, c), _) in xi.terms() {
                assert!(c >= k);
            }
        }
    }

    #[test]
    fn permutohedra_form_at_k2() {
        for ell in 1..=3 {
            let caps = (8, if ell == 1 { 0 } else { 8 }, 8);
            let lhs = xi_series(2, ell, caps)
                .unwrap()
                .add(&BiSeries::monomial(caps, (0, 0, 1), integer(1)))
                .unwrap();
            assert_eq!(lhs, permutohedra_series(ell, caps).unwrap(), "ell={ell}");
        }
    }

    #[test]
    fn extraction_examples() {
        let xi = xi_series(2, 2, DEFAULT_CAPS).unwrap();
        assert_eq!(extract_flag_count(&xi, 3, &[0, 1], 2).unwrap(), 12.into());
        let xi = xi_series(3, 1, DEFAULT_CAPS).unwrap();
        assert_eq!(extract_flag_count(&xi, 4, &[0], 1).unwrap(), 12.into());
        let xi = xi_series(3, 1, DEFAULT_CAPS).unwrap();
        assert_eq!(extract_flag_count(&xi, 3, &[2], 1).unwrap(), 1.into());
        assert!(extract_flag_count(&xi, 11, &[0], 1).is_err());
        assert!(extract_flag_count(&xi, 4, &[0, 1], 1).is_err());
    }

    #[test]
    fn extraction_matches_face_counts() {
        let caps = (7, 6, 7);
        for k in 2..=4 {
            for ell in 1..=3 {
                let xi = xi_series(k, ell, caps).unwrap();
                for n in k..=7 {
                    let poly = flag_polynomial(n, k, ell).unwrap();
                    for chain in monotone_chains(ell, n - 1) {
                        let got = extract_flag_count(&xi, n, &chain, ell).unwrap();
                        let exps = crate::counting::chain_exponents(&chain);
                        assert_eq!(got, poly.coeff(&exps), "k={k} n={n} {chain:?}");
                        if n <= 5 {
                            assert_eq!(
                                got,
                                count_flags(n, k, &chain, FlagMethod::Formula).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn g_components_agree() {
        let (dx, dy) = (7, 7);
        for k in 1..=4 {
            for i in 0..k {
                let closed = g_component(k, i, dx, dy).unwrap();
                let direct = g_component_direct(k, i, dx, dy).unwrap();
                // the closed form is exact to degree dy in y
                assert_eq!(closed, direct, "k={k} i={i}");

                // (i+1)-fold x-derivative against the alpha assembly
                let mut derived = closed.clone();
                for _ in 0..=i {
                    derived = derived.derivative_x().unwrap();
                }
                let dcap = dx - i - 1;
                let mut alpha = alpha_series(dcap, dy).unwrap();
                for q in 1..(k - i) {
                    alpha = alpha.sub(&alpha_q_series(q, dcap, dy).unwrap()).unwrap();
                }
                let assembled = BiSeries::monomial((dcap, 0, dy), (0, 0, i), inverse_factorial(i))
                    .mul(&alpha)
                    .unwrap();
                assert_eq!(derived, assembled, "k={k} i={i}");

                // vanishing of g_i and its first i derivatives at x = 0
                let mut current = closed.clone();
                for _ in 0..=i {
                    assert!((0..=dy).all(|c| current.coeff(0, 0, c).is_zero()));
                    current = current.derivative_x().unwrap();
                }
            }
        }
    }

    #[test]
    fn g_components_sum_to_xi() {
        // xi_k(x, y) at l = 1 is g(1/x, xy): coefficient x^a y^n of xi equals
        // coefficient x^{n-a} y^n of g
        let (dx, dy) = (7, 7);
        for k in 1..=4 {
            let mut g = BiSeries::zero((dx, 0, dy));
            for i in 0..k {
                g = g.add(&g_component(k, i, dx, dy).unwrap()).unwrap();
            }
            let xi = xi_series(k, 1, (dx, 0, dy)).unwrap();
            for n in 0..=dy {
                for a in 0..=n.min(dx) {
                    assert_eq!(xi.coeff(a, 0, n), g.coeff(n - a, 0, n), "k={k} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn csv_layout() {
        let t = touchard_series(1, 1);
        assert_eq!(t.to_csv(0, 1), "k,ell,deg_x,deg_s,deg_y,num,den\n0,1,0,0,0,1,1\n0,1,1,0,1,1,1\n");
    }

    fn arb_series(caps: Caps) -> impl Strategy<Value = BiSeries> {
        let len = (caps.0 + 1) * (caps.1 + 1) * (caps.2 + 1);
        proptest::collection::vec((-20i64..20, 1i64..6), len).prop_map(move |vals| {
            let mut it = vals.into_iter();
            BiSeries::from_fn(caps, |_, _, _| {
                let (p, q) = it.next().unwrap();
                rational(p, q)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn derivative_undoes_integral(a in arb_series((4, 2, 3))) {
            prop_assert_eq!(a.integral_x().derivative_x().unwrap(), a.clone());
            let back = a.derivative_x().unwrap().integral_x();
            let dropped = BiSeries::from_fn(a.caps(), |x, s, y| {
                if x == 0 { BigRational::zero() } else { a.coeff(x, s, y) }
            });
            prop_assert_eq!(back, dropped);
        }

        #[test]
        fn multiplication_commutes_and_distributes(
            a in arb_series((2, 1, 2)),
            b in arb_series((2, 1, 2)),
            c in arb_series((2, 1, 2)),
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }
    }
}
