//! Incomplete Mellin transform: the unique smooth solution of x y' - a y = f(x)
//! through x = 0, together with its pole limits at nonnegative-integer a.

use std::sync::Arc;

use crate::algebra::Jet;
use crate::error::{Error, Result};
use crate::quad::adaptive_gk;

/// Distance below which an exponent counts as a nonnegative integer.
pub const INTEGER_GUARD: f64 = 1e-9;

const QUAD_TOL: f64 = 1e-12;
const QUAD_MAX_SUBDIV: usize = 200;
/// Extra jet coefficients kept beyond the Taylor-polynomial degree so the
/// series tail of the remainder integrand reaches ~1e-14 at the switch radius.
const TAIL_ORDER: usize = 36;

/// A smooth function on an interval containing 0, bundled with exact Taylor
/// data at the origin. Evaluation and jets must be callable concurrently.
#[derive(Clone)]
pub struct SmoothFn {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    jet_at0: Arc<dyn Fn(usize) -> Jet + Send + Sync>,
    interval: (f64, f64),
}

impl std::fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFn").field("interval", &self.interval).finish()
    }
}

impl SmoothFn {
    /// Builds a smooth function handle, cross-checking the first three jet
    /// coefficients against finite differences of `eval` (tolerance 1e-6).
    pub fn new<E, J>(eval: E, jet_at0: J, interval: (f64, f64)) -> Result<Self>
    where
        E: Fn(f64) -> f64 + Send + Sync + 'static,
        J: Fn(usize) -> Jet + Send + Sync + 'static,
    {
        let out = Self::new_unchecked(eval, jet_at0, interval);
        out.validate_jet()?;
        Ok(out)
    }

    pub fn new_unchecked<E, J>(eval: E, jet_at0: J, interval: (f64, f64)) -> Self
    where
        E: Fn(f64) -> f64 + Send + Sync + 'static,
        J: Fn(usize) -> Jet + Send + Sync + 'static,
    {
        assert!(interval.0 < 0.0 && interval.1 > 0.0, "interval must contain 0");
        SmoothFn { eval: Arc::new(eval), jet_at0: Arc::new(jet_at0), interval }
    }

    fn validate_jet(&self) -> Result<()> {
        let jet = self.jet(2);
        let h = (1e-4f64).min(self.interval.1 / 8.0).min(-self.interval.0 / 8.0);
        let f = |u: f64| (self.eval)(u);
        let c0 = f(0.0);
        let c1 = (f(h) - f(-h)) / (2.0 * h);
        let c2 = (f(h) - 2.0 * c0 + f(-h)) / (2.0 * h * h);
        let scale = 1.0 + c0.abs().max(c1.abs()).max(c2.abs());
        for (index, fd) in [(0usize, c0), (1, c1), (2, c2)] {
            let tol = if index == 2 { 1e-4 } else { 1e-6 };
            if (jet.coeff(index) - fd).abs() > tol * scale {
                return Err(Error::JetMismatch { index, jet: jet.coeff(index), fd });
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn jet(&self, order: usize) -> Jet {
        (self.jet_at0)(order)
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.interval.0 && x < self.interval.1
    }

    pub fn constant(c: f64, interval: (f64, f64)) -> Self {
        Self::new_unchecked(move |_| c, move |k| Jet::constant(c, k), interval)
    }

    /// Monomial x^n.
    pub fn monomial(n: u32, interval: (f64, f64)) -> Self {
        Self::new_unchecked(
            move |x| x.powi(n as i32),
            move |k| {
                let mut coeffs = vec![0.0; k + 1];
                if (n as usize) <= k {
                    coeffs[n as usize] = 1.0;
                }
                Jet::new(coeffs)
            },
            interval,
        )
    }

    pub fn exp_fn(interval: (f64, f64)) -> Self {
        Self::new_unchecked(
            |x| x.exp(),
            |k| {
                let mut coeffs = vec![0.0; k + 1];
                let mut c = 1.0;
                for (m, slot) in coeffs.iter_mut().enumerate() {
                    if m > 0 {
                        c /= m as f64;
                    }
                    *slot = c;
                }
                Jet::new(coeffs)
            },
            interval,
        )
    }
}

/// Jet of the transform in x at 0: coefficient k of f-hat(alpha, .) is
/// c_k / (k - alpha).
pub fn hat_jet(jet: &Jet, alpha: f64) -> Jet {
    Jet::new(
        jet.coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| c / (k as f64 - alpha))
            .collect(),
    )
}

pub fn is_nonneg_integer(alpha: f64, guard: f64) -> Option<i64> {
    if alpha < -guard {
        return None;
    }
    let r = alpha.round();
    if r >= 0.0 && (alpha - r).abs() <= guard {
        Some(r as i64)
    } else {
        None
    }
}

fn taylor_degree(alpha: f64) -> usize {
    let mut k = if alpha < 0.0 { 0usize } else { alpha.floor() as usize + 1 };
    if k as f64 - alpha < INTEGER_GUARD {
        k += 1;
    }
    k
}

/// Evaluates the transform of `f` at (alpha, x).
///
/// Uses the Taylor-polynomial split at degree k = max(0, floor(alpha) + 1):
/// the polynomial part sums c_i x^i / (i - alpha) and the remainder integral
/// int_0^1 t^(k-alpha-1) g(tx) dt, g = (f - T^(k-1)f)/y^k, is split at
/// t* = y_switch/|x|. On [0, t*] the series tail of g integrates termwise in
/// closed form (this carries the near-pole mass exactly when alpha is close
/// to k); on [t*, 1] the weight is bounded and adaptive Gauss-Kronrod
/// applies. The direct evaluation of g is only ever used for |tx| >=
/// y_switch, where the Taylor subtraction loses a bounded number of digits.
pub fn mellin_hat(f: &SmoothFn, alpha: f64, x: f64) -> Result<f64> {
    mellin_hat_impl(f, alpha, x, None)
}

/// Same as [`mellin_hat`] but with a caller-chosen Taylor degree `k > alpha`;
/// the result does not depend on the choice (uniqueness of the transform).
pub fn mellin_hat_with_k(f: &SmoothFn, alpha: f64, x: f64, k: usize) -> Result<f64> {
    if (k as f64) <= alpha {
        return Err(Error::InvalidConfig(format!("k = {k} must exceed alpha = {alpha}")));
    }
    mellin_hat_impl(f, alpha, x, Some(k))
}

fn mellin_hat_impl(f: &SmoothFn, alpha: f64, x: f64, k_override: Option<usize>) -> Result<f64> {
    if is_nonneg_integer(alpha, INTEGER_GUARD).is_some() {
        return Err(Error::AlphaNonnegativeInteger { alpha });
    }
    if !f.contains(x) && x != 0.0 {
        let (lo, hi) = f.interval();
        return Err(Error::OutsideInterval { x, lo, hi });
    }
    let k = k_override.unwrap_or_else(|| taylor_degree(alpha));
    let jet = f.jet(k + TAIL_ORDER);
    if x == 0.0 {
        return Ok(-f.eval(0.0) / alpha);
    }

    let mut head = 0.0;
    for i in (0..k).rev() {
        head += jet.coeff(i) * x.powi(i as i32) / (i as f64 - alpha);
    }

    // Switch radius for the series-tail branch of g.
    let radius = jet.radius_estimate();
    let y_switch = (0.2f64).min(0.4 * radius);
    let t_star = if x.abs() <= y_switch { 1.0 } else { y_switch / x.abs() };

    // Series piece: int_0^t* t^(k-a-1) g(tx) dt = t*^(k-a) sum_{i>=k} c_i z^(i-k)/(i-a),
    // z = x t*.
    let z = x * t_star;
    let mut series = 0.0;
    for i in (k..=jet.order()).rev() {
        series = series * z + jet.coeff(i) / (i as f64 - alpha);
    }
    series *= t_star.powf(k as f64 - alpha);

    let quad = if t_star < 1.0 {
        let g_direct = |y: f64| -> f64 {
            // Horner of the degree-(k-1) Taylor polynomial.
            let mut t = 0.0;
            for i in (0..k).rev() {
                t = t * y + jet.coeff(i);
            }
            (f.eval(y) - t) / y.powi(k as i32)
        };
        let w = k as f64 - alpha - 1.0;
        adaptive_gk(|t| t.powf(w) * g_direct(t * x), t_star, 1.0, QUAD_TOL, QUAD_MAX_SUBDIV).value
    } else {
        0.0
    };

    Ok(head + x.powi(k as i32) * (series + quad))
}

/// lim (i0 - alpha) f-hat(alpha, x) as alpha -> i0: f^(i0)(0)/i0! * x^i0.
pub fn mellin_pole_limit(f: &SmoothFn, i0: usize, x: f64) -> Result<f64> {
    if !f.contains(x) && x != 0.0 {
        let (lo, hi) = f.interval();
        return Err(Error::OutsideInterval { x, lo, hi });
    }
    let jet = f.jet(i0);
    Ok(jet.coeff(i0) * x.powi(i0 as i32))
}

/// lim (alpha0 - alpha) f-hat(kappa1*alpha + kappa2, x) as alpha -> alpha0,
/// where i0 := kappa1*alpha0 + kappa2 must be a nonnegative integer:
/// f^(i0)(0) x^i0 / (kappa1 * i0!).
pub fn mellin_affine_pole_limit(f: &SmoothFn, kappa1: f64, kappa2: f64, alpha0: f64, x: f64) -> Result<f64> {
    assert!(kappa1 != 0.0);
    let value = kappa1 * alpha0 + kappa2;
    let i0 = is_nonneg_integer(value, INTEGER_GUARD).ok_or(Error::NotAPole { value })? as usize;
    let jet = f.jet(i0);
    Ok(jet.coeff(i0) * x.powi(i0 as i32) / kappa1)
}

/// Pole limits of B-hat((q+1)alpha - p, x) where B(x; alpha) = A(x) * M-hat(alpha, x),
/// as alpha -> i0.
///
/// order = 2 requires i1 := q*i0 - p >= 0 and returns
///   x^i2/(q+1) * M^(i0)(0)/i0! * A^(i1)(0)/i1!,  i2 := (q+1)*i0 - p.
/// order = 1 requires i1 < 0 and returns the two-part sum
///   1/(q+1) * sum_{j=0..i2} M^(j)(0)/j! * A^(i2-j)(0)/(i2-j)! / (j - i0) * x^i2
///   + x^i0 * M^(i0)(0)/i0! * A-hat(i1, x)
/// with the summation empty when i2 < 0.
pub fn mellin_product_pole_limit(
    a: &SmoothFn,
    m: &SmoothFn,
    i0: usize,
    p: i64,
    q: i64,
    x: f64,
    order: u8,
) -> Result<f64> {
    assert!(q != -1);
    let i1 = q * i0 as i64 - p;
    let i2 = (q + 1) * i0 as i64 - p;
    match order {
        2 => {
            if i1 < 0 {
                return Err(Error::WrongBranch { order, i1 });
            }
            let mjet = m.jet(i0);
            let ajet = a.jet(i1 as usize);
            Ok(x.powi(i2 as i32) / (q as f64 + 1.0) * mjet.coeff(i0) * ajet.coeff(i1 as usize))
        }
        1 => {
            if i1 >= 0 {
                return Err(Error::WrongBranch { order, i1 });
            }
            let mut sum = 0.0;
            if i2 >= 0 {
                let i2u = i2 as usize;
                let mjet = m.jet(i2u);
                let ajet = a.jet(i2u);
                for j in 0..=i2u {
                    sum += mjet.coeff(j) * ajet.coeff(i2u - j) / (j as f64 - i0 as f64);
                }
                sum *= x.powi(i2 as i32) / (q as f64 + 1.0);
            }
            let mjet = m.jet(i0);
            let ahat = mellin_hat(a, i1 as f64, x)?;
            Ok(sum + x.powi(i0 as i32) * mjet.coeff(i0) * ahat)
        }
        _ => Err(Error::InvalidConfig(format!("order must be 1 or 2, got {order}"))),
    }
}

/// The transform of the product A * M-hat(alpha, .) taken at the displayed
/// affine argument, evaluated directly (used by the punctured-extrapolation
/// oracles).
pub fn product_hat(a: &SmoothFn, m: &SmoothFn, alpha: f64, p: i64, q: i64, x: f64) -> Result<f64> {
    let a2 = a.clone();
    let m2 = m.clone();
    let am = SmoothFn::new_unchecked(
        move |y| a2.eval(y) * mellin_hat(&m2, alpha, y).expect("inner transform"),
        {
            let a3 = a.clone();
            let m3 = m.clone();
            move |k| a3.jet(k).mul(&hat_jet(&m3.jet(k), alpha))
        },
        a.interval(),
    );
    mellin_hat(&am, (q + 1) as f64 * alpha - p as f64, x)
}
