//! Exact rationals, bivariate polynomials and truncated power series (jets).
//!
//! The jet arithmetic is the derivative-extraction backbone: every Taylor
//! coefficient at the origin used by the coefficient formulas is obtained
//! exactly (up to floating round-off) from polynomial axis jets combined with
//! `mul`/`div`/`exp`/`log`/`int0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rat {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn add(&self, other: Rat) -> Rat {
        Rat::new(self.num * other.den + other.num * self.den, self.den * other.den)
    }

    pub fn mul(&self, other: Rat) -> Rat {
        Rat::new(self.num * other.num, self.den * other.den)
    }

    pub fn recip(&self) -> Rat {
        Rat::new(self.den, self.num)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Axis selector for [`Poly2::axis_jet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Restrict to (u, 0).
    X1,
    /// Restrict to (0, u).
    X2,
}

/// Bivariate polynomial with real coefficients, sparse representation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly2 {
    coeffs: BTreeMap<(u32, u32), f64>,
}

impl Poly2 {
    pub fn new() -> Self {
        Poly2::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Poly2::new();
        p.set(0, 0, c);
        p
    }

    /// Build from (i, j, coeff) triples; repeated (i, j) accumulate.
    pub fn from_terms(terms: &[(u32, u32, f64)]) -> Self {
        let mut p = Poly2::new();
        for &(i, j, c) in terms {
            *p.coeffs.entry((i, j)).or_insert(0.0) += c;
        }
        p.prune();
        p
    }

    pub fn set(&mut self, i: u32, j: u32, c: f64) {
        if c == 0.0 {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != 0.0);
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        // Horner in x1 over coefficient polynomials in x2 keeps this exact
        // for integer-ish inputs and stable in general.
        let max_i = self.coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut acc = 0.0;
        for i in (0..=max_i).rev() {
            let mut row = 0.0;
            let max_j = self
                .coeffs
                .keys()
                .filter(|&&(ii, _)| ii == i)
                .map(|&(_, j)| j)
                .max();
            if let Some(max_j) = max_j {
                for j in (0..=max_j).rev() {
                    row = row * x2 + self.coeff(i, j);
                }
            }
            acc = acc * x1 + row;
        }
        acc
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            let e = out.coeffs.entry((i, j)).or_insert(0.0);
            *e += c;
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: f64) -> Poly2 {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::new();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                *out.coeffs.entry((i1 + i2, j1 + j2)).or_insert(0.0) += c1 * c2;
            }
        }
        out.prune();
        out
    }

    /// Partial derivative in the first variable.
    pub fn d1(&self) -> Poly2 {
        let mut out = Poly2::new();
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.set(i - 1, j, c * i as f64);
            }
        }
        out
    }

    /// Partial derivative in the second variable.
    pub fn d2(&self) -> Poly2 {
        let mut out = Poly2::new();
        for (i, j, c) in self.terms() {
            if j > 0 {
                out.set(i, j - 1, c * j as f64);
            }
        }
        out
    }

    /// Taylor jet of u -> P(u, 0) or u -> P(0, u) at u = 0, order `k`. Exact.
    pub fn axis_jet(&self, axis: Axis, k: usize) -> Jet {
        let mut coeffs = vec![0.0; k + 1];
        for (i, j, c) in self.terms() {
            match axis {
                Axis::X1 => {
                    if j == 0 && (i as usize) <= k {
                        coeffs[i as usize] += c;
                    }
                }
                Axis::X2 => {
                    if i == 0 && (j as usize) <= k {
                        coeffs[j as usize] += c;
                    }
                }
            }
        }
        Jet { coeffs }
    }
}

/// Truncated Taylor series at the origin: c0 + c1 u + ... + cK u^K.
///
/// Arithmetic truncates to the shorter operand. The base point is always 0
/// in this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Jet { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// The identity series u, truncated at `order`.
    pub fn variable(order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// k-th derivative at 0, i.e. k! * c_k.
    pub fn derivative_at0(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for m in 1..=k {
            fact *= m as f64;
        }
        self.coeff(k) * fact
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Partial sum evaluation at u.
    pub fn eval(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Tail sum sum_{i >= k} c_i u^(i-k).
    pub fn eval_tail(&self, k: usize, u: f64) -> f64 {
        if k > self.order() {
            return 0.0;
        }
        let mut acc = 0.0;
        for &c in self.coeffs[k..].iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    fn common_order(&self, other: &Jet) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let n = self.common_order(other);
        Jet {
            coeffs: (0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let n = self.common_order(other);
        Jet {
            coeffs: (0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn add_scalar(&self, c: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.common_order(other);
        let mut coeffs = vec![0.0; n + 1];
        for k in 0..=n {
            let mut s = 0.0;
            for m in 0..=k {
                s += self.coeff(m) * other.coeff(k - m);
            }
            coeffs[k] = s;
        }
        Jet { coeffs }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        if other.coeff(0) == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.common_order(other);
        let mut coeffs = vec![0.0; n + 1];
        for k in 0..=n {
            let mut s = self.coeff(k);
            for m in 0..k {
                s -= coeffs[m] * other.coeff(k - m);
            }
            coeffs[k] = s / other.coeff(0);
        }
        Ok(Jet { coeffs })
    }

    pub fn exp(&self) -> Jet {
        // e' = a' e, so k e_k = sum_{m=1..k} m a_m e_{k-m}.
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        coeffs[0] = self.coeff(0).exp();
        for k in 1..=n {
            let mut s = 0.0;
            for m in 1..=k {
                s += m as f64 * self.coeff(m) * coeffs[k - m];
            }
            coeffs[k] = s / k as f64;
        }
        Jet { coeffs }
    }

    pub fn log(&self) -> Result<Jet> {
        if self.coeff(0) <= 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        // l' = a'/a, so k a_0 l_k = k a_k - sum_{m=1..k-1} m l_m a_{k-m}.
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        coeffs[0] = self.coeff(0).ln();
        for k in 1..=n {
            let mut s = k as f64 * self.coeff(k);
            for m in 1..k {
                s -= m as f64 * coeffs[m] * self.coeff(k - m);
            }
            coeffs[k] = s / (k as f64 * self.coeff(0));
        }
        Ok(Jet { coeffs })
    }

    /// Termwise antiderivative of a(z)/z: requires a.c0 = 0, returns c_k = a_k / k.
    pub fn int0(&self) -> Result<Jet> {
        if self.coeff(0) != 0.0 {
            return Err(Error::NonvanishingAtZero);
        }
        let mut coeffs = vec![0.0; self.coeffs.len()];
        for k in 1..self.coeffs.len() {
            coeffs[k] = self.coeff(k) / k as f64;
        }
        Ok(Jet { coeffs })
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Real power via exp(p log a); requires a.c0 > 0.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        Ok(self.log()?.scale(p).exp())
    }

    /// Crude convergence-radius estimate from the trailing coefficients.
    pub fn radius_estimate(&self) -> f64 {
        let n = self.order();
        if n < 4 {
            return f64::INFINITY;
        }
        let mut r = f64::INFINITY;
        for k in (n.saturating_sub(6).max(2))..=n {
            let c = self.coeff(k).abs();
            if c > 1e-300 {
                r = r.min(c.powf(-1.0 / k as f64));
            }
        }
        r
    }
}

pub fn poly_eval(p: &Poly2, x1: f64, x2: f64) -> f64 {
    p.eval(x1, x2)
}

pub fn poly_axis_jet(p: &Poly2, axis: Axis, k: usize) -> Jet {
    p.axis_jet(axis, k)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut out = 1.0;
    for m in 0..k.min(n - k) {
        out = out * (n - m) as f64 / (m + 1) as f64;
    }
    out
}

pub fn factorial(n: usize) -> f64 {
    let mut out = 1.0;
    for m in 1..=n {
        out *= m as f64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn rat_reduces() {
        let r = Rat::new(4, -6);
        assert_eq!((r.num(), r.den()), (-2, 3));
        assert_eq!(Rat::new(1, 2).add(Rat::new(1, 3)), Rat::new(5, 6));
        assert!(Rat::new(1, 2) < Rat::new(2, 3));
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(poly_eval(&Poly2::constant(1.0), 3.0, 4.0), 1.0);
        let xy = Poly2::from_terms(&[(1, 1, 1.0)]);
        assert_eq!(poly_eval(&xy, 2.0, 5.0), 10.0);
        let p = Poly2::from_terms(&[(0, 0, -0.7), (1, 0, 1.0)]);
        assert_close(poly_eval(&p, 0.1, 9.0), -0.6, 1e-15);
    }

    #[test]
    fn axis_jet_examples() {
        let lam = 0.7;
        let p = Poly2::from_terms(&[(0, 0, -lam), (0, 1, 1.0)]);
        assert_eq!(p.axis_jet(Axis::X2, 2).coeffs(), &[-lam, 1.0, 0.0]);
        let q = Poly2::from_terms(&[(0, 0, 1.0), (1, 1, 1.0)]);
        assert_eq!(q.axis_jet(Axis::X2, 3).coeffs(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(q.axis_jet(Axis::X1, 1).coeffs(), &[1.0, 0.0]);
    }

    #[test]
    fn jet_div_geometric() {
        let a = Jet::new(vec![1.0, 0.0, 0.0]);
        let b = Jet::new(vec![1.0, 1.0, 0.0]);
        assert_eq!(a.div(&b).unwrap().coeffs(), &[1.0, -1.0, 1.0]);
    }

    #[test]
    fn jet_exp_series() {
        let a = Jet::new(vec![0.0, 1.0, 0.0, 0.0]);
        let e = a.exp();
        assert_eq!(e.coeff(0), 1.0);
        assert_eq!(e.coeff(1), 1.0);
        assert_close(e.coeff(2), 0.5, 1e-15);
        assert_close(e.coeff(3), 1.0 / 6.0, 1e-15);
    }

    #[test]
    fn jet_mul_convolution() {
        let a = Jet::new(vec![1.0, 2.0]);
        let b = Jet::new(vec![3.0, 4.0]);
        assert_eq!(a.mul(&b).coeffs(), &[3.0, 10.0]);
    }

    #[test]
    fn jet_int0_examples() {
        assert_eq!(Jet::new(vec![0.0, 1.0, 0.0]).int0().unwrap().coeffs(), &[0.0, 1.0, 0.0]);
        assert_eq!(Jet::new(vec![0.0, 0.0, 2.0]).int0().unwrap().coeffs(), &[0.0, 0.0, 1.0]);
        assert_eq!(Jet::new(vec![0.0, 3.0, 4.0]).int0().unwrap().coeffs(), &[0.0, 3.0, 2.0]);
        assert!(Jet::new(vec![1.0, 0.0]).int0().is_err());
    }

    #[test]
    fn jet_div_zero_constant_errors() {
        let a = Jet::new(vec![1.0, 0.0]);
        let b = Jet::new(vec![0.0, 1.0]);
        assert!(matches!(a.div(&b), Err(Error::ZeroConstantTerm)));
        assert!(Jet::new(vec![-1.0, 0.0]).log().is_err());
    }

    #[test]
    fn axis_jet_matches_divided_differences() {
        // Newton divided differences of poly_eval on the axis recover the
        // Taylor coefficients of a polynomial exactly (up to round-off).
        let p = Poly2::from_terms(&[(0, 0, 2.0), (0, 1, -1.5), (0, 2, 0.25), (0, 3, 3.0), (2, 1, 7.0)]);
        let jet = p.axis_jet(Axis::X2, 3);
        let nodes: Vec<f64> = vec![0.0, 0.5, -0.5, 1.0, -1.0];
        let f = |u: f64| p.eval(0.0, u);
        // Divided-difference table; dd[k] built on nodes[0..=k].
        let mut table: Vec<f64> = nodes.iter().map(|&u| f(u)).collect();
        let mut dd = vec![table[0]];
        for k in 1..nodes.len() {
            for m in 0..nodes.len() - k {
                table[m] = (table[m + 1] - table[m]) / (nodes[m + k] - nodes[m]);
            }
            dd.push(table[0]);
        }
        // Expand the Newton form around 0 to get monomial coefficients.
        let mut mono = vec![0.0; nodes.len()];
        let mut basis = vec![0.0; nodes.len()];
        basis[0] = 1.0;
        for (k, &d) in dd.iter().enumerate() {
            for (m, &b) in basis.iter().enumerate() {
                mono[m] += d * b;
            }
            // basis *= (u - nodes[k])
            let mut next = vec![0.0; nodes.len()];
            for m in 0..nodes.len() - 1 {
                next[m + 1] += basis[m];
                next[m] -= nodes[k] * basis[m];
            }
            basis = next;
        }
        for k in 0..=3 {
            assert_close(jet.coeff(k), mono[k], 1e-8);
        }
    }
}
