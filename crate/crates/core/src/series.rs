//! Dense truncated power series over the complex numbers.
//!
//! A [`TruncatedSeries`] stores `c_0, ..., c_N` for the expansion
//! `sum_j c_j (x - center)^j + O((x - center)^(N+1))`. All binary operations
//! require identical centers and orders; composition truncates to the smaller
//! of the two orders.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Two centers closer than this (relative to their size) are considered equal.
const CENTER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

fn same_point(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= CENTER_TOL * (1.0 + a.norm().max(b.norm()))
}

impl TruncatedSeries {
    /// Builds a series from its coefficient list. Panics on an empty list.
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { center, coeffs }
    }

    pub fn from_fn(center: Complex64, order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::new(center, (0..=order).map(f).collect())
    }

    pub fn zero(center: Complex64, order: usize) -> Self {
        Self::new(center, vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(center: Complex64, value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        s.coeffs[0] = value;
        s
    }

    /// The identity map `x` expanded about `center`.
    pub fn variable(center: Complex64, order: usize) -> Self {
        let mut s = Self::constant(center, center, order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// Taylor series of `exp` about `center`.
    pub fn exp_about(center: Complex64, order: usize) -> Self {
        let base = center.exp();
        let mut fact = 1.0;
        Self::from_fn(center, order, |j| {
            if j > 0 {
                fact *= j as f64;
            }
            base / fact
        })
    }

    /// Taylor series of the principal logarithm about a nonzero `center`.
    pub fn ln_about(center: Complex64, order: usize) -> Result<Self> {
        if center.norm() == 0.0 {
            return Err(Error::SingularSeries("ln"));
        }
        let inv = center.inv();
        let mut pow = Complex64::new(1.0, 0.0);
        Ok(Self::from_fn(center, order, |j| {
            if j == 0 {
                center.ln()
            } else {
                pow *= inv;
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                pow * (sign / j as f64)
            }
        }))
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `(x - center)^j`; zero beyond the stored order.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    /// Drops all coefficients above `order` (no-op if already shorter).
    pub fn truncated(&self, order: usize) -> Self {
        let n = (order + 1).min(self.coeffs.len());
        Self::new(self.center, self.coeffs[..n].to_vec())
    }

    /// Same coefficients, zero-padded up to `order`. The padding is exact only
    /// when the series is known to be a polynomial of degree at most its order.
    pub(crate) fn padded(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order.max(self.order()) + 1, Complex64::new(0.0, 0.0));
        Self::new(self.center, c)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let d = x - self.center;
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * d + c)
    }

    /// Term-by-term derivative; the result has order `N - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.center, 0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(j, &c)| c * (j + 1) as f64)
            .collect();
        Self::new(self.center, coeffs)
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Structural(format!(
                "{op}: orders differ ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        if !same_point(self.center, other.center) {
            return Err(Error::Structural(format!(
                "{op}: centers differ ({} vs {})",
                self.center, other.center
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.center, coeffs)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.center, self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn add_constant(&self, k: Complex64) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += k;
        s
    }

    /// Truncated Cauchy product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "multiply")?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(self.center, out)
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::SingularSeries("reciprocal"));
        }
        let inv = a0.inv();
        let mut out: Vec<Complex64> = Vec::with_capacity(self.coeffs.len());
        out.push(inv);
        for n in 1..self.coeffs.len() {
            let acc: Complex64 = (1..=n).map(|k| self.coeffs[k] * out[n - k]).sum();
            out.push(-acc * inv);
        }
        Ok(Self::new(self.center, out))
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "divide")?;
        Ok(self.mul_unchecked(&other.reciprocal()?))
    }

    /// Square root with the principal branch at the constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::SingularSeries("sqrt"));
        }
        let b0 = a0.sqrt();
        let inv2 = (b0 * 2.0).inv();
        let mut out: Vec<Complex64> = Vec::with_capacity(self.coeffs.len());
        out.push(b0);
        for n in 1..self.coeffs.len() {
            let acc: Complex64 = (1..n).map(|k| out[k] * out[n - k]).sum();
            out.push((self.coeffs[n] - acc) * inv2);
        }
        Ok(Self::new(self.center, out))
    }

    /// `(s(x) - s(center)) / (x - center)`, valid when the constant term is
    /// already zero. The result has order `N - 1`.
    pub fn deflate(&self) -> Result<Self> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if self.coeffs[0].norm() > CENTER_TOL * scale.max(1.0) {
            return Err(Error::Structural(
                "deflate: constant term is not zero".to_string(),
            ));
        }
        if self.order() == 0 {
            return Err(Error::Structural("deflate: order 0 series".to_string()));
        }
        Ok(Self::new(self.center, self.coeffs[1..].to_vec()))
    }

    /// `outer(inner(x))`, expanded about `inner.center`.
    ///
    /// Requires `inner.coeffs[0] == outer.center`. The result is truncated at
    /// `min(outer.order, inner.order)`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !same_point(inner.coeffs[0], outer.center) {
            return Err(Error::Structural(format!(
                "compose: inner value {} at its center does not match outer center {}",
                inner.coeffs[0], outer.center
            )));
        }
        let order = outer.order().min(inner.order());
        let mut d = inner.truncated(order);
        d.coeffs[0] = Complex64::new(0.0, 0.0);
        Ok(horner_compose(&outer.coeffs[..=order], &d))
    }

    pub fn exp(&self) -> Self {
        let outer = Self::exp_about(self.coeffs[0], self.order());
        // center of outer is coeffs[0] by construction
        Self::compose(&outer, self).expect("exp outer centered at inner value")
    }

    pub fn ln(&self) -> Result<Self> {
        let outer = Self::ln_about(self.coeffs[0], self.order())?;
        Self::compose(&outer, self)
    }

    /// Compositional inverse.
    ///
    /// For `s` about `c` with `s(c) = y0` and `s'(c) != 0`, returns `t` about
    /// `y0` with `t(s(x)) = x + O((x - c)^(N+1))`. Computed by Newton
    /// iteration on series, doubling the number of correct terms per step.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Err(Error::Structural("revert: order 0 series".to_string()));
        }
        let a1 = self.coeffs[1];
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !a1.norm().is_finite() || a1.norm() <= 1e-14 * scale || a1.norm() == 0.0 {
            return Err(Error::DegenerateReversion);
        }
        let zero = Complex64::new(0.0, 0.0);
        // p: the map with its constant removed, in the local variable x - c
        let mut p = self.clone();
        p.center = zero;
        p.coeffs[0] = zero;
        let dp = p.derivative().padded(n);
        let id = Self::variable(zero, n);

        let mut q = Self::zero(zero, n);
        q.coeffs[1] = a1.inv();
        let iterations = usize::BITS - n.leading_zeros() + 2;
        for _ in 0..iterations {
            let residual = horner_compose(&p.coeffs, &q).sub(&id)?;
            if residual.coeffs.iter().all(|c| c.norm() == 0.0) {
                break;
            }
            let slope = horner_compose(&dp.coeffs, &q);
            let step = residual.mul_unchecked(&slope.reciprocal()?);
            q = q.sub(&step)?;
        }
        q.coeffs[0] = self.center;
        q.center = self.coeffs[0];
        Ok(q)
    }

    /// Re-expands the stored polynomial about a new center. Exact for the
    /// truncated polynomial; accuracy as a Taylor series depends on the shift.
    pub fn recenter(&self, new_center: Complex64) -> Self {
        let shift = new_center - self.center;
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += shift * next;
            }
        }
        Self::new(new_center, c)
    }
}

/// Evaluates `sum outer[j] d^j` for a series `d` with zero constant term.
fn horner_compose(outer: &[Complex64], d: &TruncatedSeries) -> TruncatedSeries {
    let order = d.order().min(outer.len() - 1);
    let d = d.truncated(order);
    let mut acc = TruncatedSeries::constant(d.center, outer[order], order);
    for &c in outer[..order].iter().rev() {
        acc = acc.mul_unchecked(&d);
        acc.coeffs[0] += c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(center: f64, coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new(c(center, 0.0), coeffs.iter().map(|&x| c(x, 0.0)).collect())
    }

    fn assert_coeffs(s: &TruncatedSeries, expected: &[Complex64], tol: f64) {
        assert_eq!(s.order() + 1, expected.len(), "order mismatch for {s:?}");
        for (j, (a, b)) in s.coeffs().iter().zip(expected).enumerate() {
            assert!((a - b).norm() <= tol, "coeff {j}: {a} vs {b}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let a = real(0.0, &[1.0, 1.0, 0.0]);
        let b = real(0.0, &[1.0, -1.0, 0.0]);
        let p = a.multiply(&b).unwrap();
        assert_coeffs(&p, &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], 0.0);
    }

    #[test]
    fn multiplicative_identity() {
        let a = real(0.0, &[1.0, 1.0, 1.0]);
        let one = TruncatedSeries::constant(c(0.0, 0.0), c(1.0, 0.0), 2);
        assert_eq!(a.multiply(&one).unwrap(), a);
    }

    #[test]
    fn exp_times_exp_minus() {
        let e = TruncatedSeries::exp_about(c(0.0, 0.0), 3);
        let em = e.compose_neg();
        let p = e.multiply(&em).unwrap();
        assert_coeffs(&p, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-15);
    }

    impl TruncatedSeries {
        fn compose_neg(&self) -> Self {
            let neg = TruncatedSeries::variable(self.center, self.order()).scale(c(-1.0, 0.0));
            TruncatedSeries::compose(self, &neg).unwrap()
        }
    }

    #[test]
    fn mismatched_structure_is_rejected() {
        let a = real(0.0, &[1.0, 2.0]);
        let b = real(0.0, &[1.0, 2.0, 3.0]);
        assert!(matches!(a.multiply(&b), Err(Error::Structural(_))));
        let d = real(1.0, &[1.0, 2.0]);
        assert!(matches!(a.multiply(&d), Err(Error::Structural(_))));
        assert!(matches!(a.add(&d), Err(Error::Structural(_))));
    }

    #[test]
    fn linear_reversion() {
        let s = real(0.0, &[0.0, 2.0, 0.0, 0.0]);
        let t = s.revert().unwrap();
        assert_coeffs(&t, &[c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-16);
    }

    #[test]
    fn sine_reverts_to_arcsine() {
        let sin = real(0.0, &[0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0]);
        let asin = sin.revert().unwrap();
        let expected = [0.0, 1.0, 0.0, 1.0 / 6.0, 0.0, 3.0 / 40.0];
        let expected: Vec<_> = expected.iter().map(|&x| c(x, 0.0)).collect();
        assert_coeffs(&asin, &expected, 1e-15);
        let back = TruncatedSeries::compose(&asin, &sin).unwrap();
        assert_coeffs(&back, TruncatedSeries::variable(c(0.0, 0.0), 5).coeffs(), 1e-15);
    }

    #[test]
    fn reversion_moves_center() {
        // s(x) = 3 + 2 (x - 1) + (x - 1)^2 about x = 1
        let s = real(1.0, &[3.0, 2.0, 1.0, 0.0]);
        let t = s.revert().unwrap();
        assert_eq!(t.center(), c(3.0, 0.0));
        assert_eq!(t.coeff(0), c(1.0, 0.0));
        let id = TruncatedSeries::compose(&t, &s).unwrap();
        assert_coeffs(&id, TruncatedSeries::variable(c(1.0, 0.0), 3).coeffs(), 1e-15);
    }

    #[test]
    fn degenerate_reversion() {
        let s = real(0.0, &[0.0, 0.0, 1.0]);
        assert!(matches!(s.revert(), Err(Error::DegenerateReversion)));
    }

    #[test]
    fn identity_outer_returns_inner() {
        let inner = TruncatedSeries::new(c(0.0, 0.0), vec![c(0.5, 1.0), c(2.0, -1.0), c(0.0, 3.0)]);
        let outer = TruncatedSeries::variable(c(0.5, 1.0), 2);
        let out = TruncatedSeries::compose(&outer, &inner).unwrap();
        assert_coeffs(&out, inner.coeffs(), 1e-15);
    }

    #[test]
    fn exp_of_log1p_is_shifted_identity() {
        let log1p = real(0.0, &[0.0, 1.0, -0.5, 1.0 / 3.0, -0.25]);
        let exp = TruncatedSeries::exp_about(c(0.0, 0.0), 4);
        let out = TruncatedSeries::compose(&exp, &log1p).unwrap();
        let expected: Vec<_> = [1.0, 1.0, 0.0, 0.0, 0.0].iter().map(|&x| c(x, 0.0)).collect();
        assert_coeffs(&out, &expected, 1e-15);
    }

    #[test]
    fn compose_center_mismatch() {
        let inner = real(0.0, &[1.0, 1.0]);
        let outer = real(0.0, &[0.0, 1.0]);
        assert!(matches!(
            TruncatedSeries::compose(&outer, &inner),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn compose_truncates_to_min_order() {
        let inner = real(0.0, &[0.0, 1.0, 1.0]);
        let outer = TruncatedSeries::exp_about(c(0.0, 0.0), 5);
        assert_eq!(TruncatedSeries::compose(&outer, &inner).unwrap().order(), 2);
    }

    #[test]
    fn sqrt_squares_back() {
        let a = TruncatedSeries::new(c(0.0, 0.0), vec![c(-4.0, 1.0), c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0)]);
        let r = a.sqrt().unwrap();
        assert!(r.coeff(0).re > 0.0);
        let sq = r.multiply(&r).unwrap();
        assert_coeffs(&sq, a.coeffs(), 1e-14);
    }

    #[test]
    fn reciprocal_and_divide() {
        let a = real(0.0, &[2.0, 1.0, 0.0, 0.0]);
        let inv = a.reciprocal().unwrap();
        assert_coeffs(&inv, &[c(0.5, 0.0), c(-0.25, 0.0), c(0.125, 0.0), c(-0.0625, 0.0)], 1e-16);
        let zero_const = real(0.0, &[0.0, 1.0]);
        assert!(matches!(zero_const.reciprocal(), Err(Error::SingularSeries(_))));
    }

    #[test]
    fn recenter_preserves_values() {
        let p = TruncatedSeries::new(c(0.0, 0.0), vec![c(1.0, 0.0), c(-2.0, 1.0), c(0.5, 0.5), c(0.25, 0.0)]);
        let q = p.recenter(c(0.3, -0.2));
        for x in [c(0.1, 0.1), c(-0.4, 0.2), c(1.0, 0.0)] {
            assert!((p.eval(x) - q.eval(x)).norm() < 1e-14);
        }
    }

    #[test]
    fn deflate_requires_zero_constant() {
        let s = real(0.0, &[0.0, 3.0, 4.0]);
        assert_coeffs(&s.deflate().unwrap(), &[c(3.0, 0.0), c(4.0, 0.0)], 0.0);
        assert!(real(0.0, &[1.0, 3.0]).deflate().is_err());
    }

    #[test]
    fn ln_inverts_exp() {
        let s = TruncatedSeries::new(c(0.0, 0.0), vec![c(0.2, 0.3), c(1.0, -1.0), c(0.0, 0.5), c(0.1, 0.0)]);
        let back = s.exp().ln().unwrap();
        assert_coeffs(&back, s.coeffs(), 1e-14);
    }
}
