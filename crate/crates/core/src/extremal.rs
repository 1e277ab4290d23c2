//! The two extremal families and their profiles.
//!
//! ```text
//! v_n(p) = (1 - (n-1)p, p, ..., p)                  p ∈ [0, 1/(n-1)]
//! w_n(p) = (p, ..., p, 1 - ⌊1/p⌋p, 0, ..., 0)       p ∈ [1/n, 1]
//!           ^^^^^^^^^ ⌊1/p⌋ copies
//! ```
//!
//! `H_v` is strictly increasing on `[0, 1/n]` and `H_w` strictly decreasing on
//! `[1/n, 1]`, both sweeping `[0, ln n]`, so both invert. `H_w` is only
//! piecewise smooth: on each bracket `[1/m, 1/(m-1)]` the count `⌊1/p⌋` is
//! `m - 1`, and `H_w(1/m) = ln m` pins the bracket ends. The inverses here
//! bisect inside one bracket with the count held fixed, which sidesteps the
//! floor entirely.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root::bisect_monotone;
use crate::simplex::{Order, ProbVec, LARGE_ORDER};

/// Slack accepted on parameters, entropies and norms at domain edges.
pub const TOL_EDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    V,
    W,
}

/// One of the two families at a fixed alphabet size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtremalFamily {
    kind: Family,
    n: usize,
}

/// A family member together with its entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalProfile {
    pub family: ExtremalFamily,
    pub param: f64,
    pub entropy: f64,
    pub dist: ProbVec,
}

impl ExtremalFamily {
    pub fn new(kind: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self { kind, n })
    }

    pub fn v(n: usize) -> Result<Self> {
        Self::new(Family::V, n)
    }

    pub fn w(n: usize) -> Result<Self> {
        Self::new(Family::W, n)
    }

    pub fn kind(&self) -> Family {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Parameters the distribution is defined for.
    pub fn domain(&self) -> (f64, f64) {
        match self.kind {
            Family::V => (0.0, 1.0 / (self.nf() - 1.0)),
            Family::W => (1.0 / self.nf(), 1.0),
        }
    }

    /// Parameters on which the entropy and norm profiles are inverted.
    pub fn profile_domain(&self) -> (f64, f64) {
        match self.kind {
            Family::V => (0.0, 1.0 / self.nf()),
            Family::W => (1.0 / self.nf(), 1.0),
        }
    }

    fn check_param(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if !p.is_finite() || p < lo - TOL_EDGE || p > hi + TOL_EDGE {
            return Err(Error::ParamOutOfRange { p, lo, hi });
        }
        Ok(p.clamp(lo, hi))
    }

    /// The distribution `v_n(p)` or `w_n(p)`.
    pub fn distribution(&self, p: f64) -> Result<ProbVec> {
        let p = self.check_param(p)?;
        let n = self.n;
        let entries = match self.kind {
            Family::V => {
                let mut e = vec![p; n];
                e[0] = (1.0 - (n - 1) as f64 * p).max(0.0);
                e
            }
            Family::W => {
                let k = w_count(p, n);
                let mut e = vec![0.0; n];
                e[..k].fill(p);
                if k < n {
                    e[k] = w_remainder(k, p);
                }
                e
            }
        };
        Ok(ProbVec::from_entries(entries))
    }

    /// Shannon entropy of the family member, from the closed form.
    pub fn entropy(&self, p: f64) -> Result<f64> {
        let p = self.check_param(p)?;
        Ok(match self.kind {
            Family::V => h_v(self.n, p),
            Family::W => {
                let k = w_count(p, self.n);
                (-(k as f64) * xlnx(p) - xlnx(w_remainder(k, p))).max(0.0)
            }
        })
    }

    /// ℓα-norm of the family member, from the closed form.
    pub fn norm(&self, p: f64, order: Order) -> Result<f64> {
        let p = self.check_param(p)?;
        Ok(match self.kind {
            Family::V => norm_v(self.n, p, order),
            Family::W => {
                let k = w_count(p, self.n);
                two_level_norm(k as f64, p, w_remainder(k, p), order)
            }
        })
    }

    pub fn profile(&self, p: f64) -> Result<ExtremalProfile> {
        let dist = self.distribution(p)?;
        let entropy = self.entropy(p)?;
        Ok(ExtremalProfile {
            family: *self,
            param: p.clamp(self.domain().0, self.domain().1),
            entropy,
            dist,
        })
    }

    /// The unique parameter in [`profile_domain`](Self::profile_domain) whose
    /// entropy is `h`.
    pub fn inverse_entropy(&self, h: f64) -> Result<f64> {
        let ln_n = self.nf().ln();
        if !h.is_finite() || h < -TOL_EDGE || h > ln_n + TOL_EDGE {
            return Err(Error::EntropyOutOfRange { h, n: self.n });
        }
        let (lo, hi) = self.profile_domain();
        // values nudged past an endpoint by rounding map onto it
        if h <= 0.0 {
            return Ok(match self.kind {
                Family::V => lo,
                Family::W => hi,
            });
        }
        if h >= ln_n {
            return Ok(1.0 / self.nf());
        }
        match self.kind {
            Family::V => {
                let n = self.n;
                Ok(bisect_monotone(|p| h_v(n, p), h, lo, hi))
            }
            Family::W => {
                let m = self.entropy_bracket(h);
                let k = m - 1;
                let (b_lo, b_hi) = bracket(m);
                Ok(bisect_monotone(|p| h_w_fixed(k, p), h, b_lo, b_hi))
            }
        }
    }

    /// `m ∈ [2, n]` with `ln(m-1) ≤ h ≤ ln m`.
    fn entropy_bracket(&self, h: f64) -> usize {
        let guess = (h.exp().ceil() as usize).clamp(2, self.n);
        let fits = |m: usize| ((m - 1) as f64).ln() <= h && h <= (m as f64).ln();
        [guess, guess.saturating_sub(1), guess + 1]
            .into_iter()
            .filter(|m| (2..=self.n).contains(m))
            .find(|&m| fits(m))
            .unwrap_or_else(|| (2..=self.n).find(|&m| fits(m)).unwrap_or(self.n))
    }

    /// Range of the ℓα-norm over the simplex: between 1 and `n^{1/α-1}`.
    pub fn norm_range(&self, order: Order) -> (f64, f64) {
        norm_range(self.n, order)
    }

    /// The unique parameter in [`profile_domain`](Self::profile_domain) whose
    /// ℓα-norm is `target`.
    pub fn inverse_norm(&self, target: f64, order: Order) -> Result<f64> {
        if order == Order::Shannon {
            return Err(Error::ShannonOrderUnsupported);
        }
        let (lo, hi) = self.norm_range(order);
        if !target.is_finite() || target < lo - TOL_EDGE || target > hi + TOL_EDGE {
            return Err(Error::NormOutOfRange { target, lo, hi });
        }
        let target = target.clamp(lo, hi);
        let n = self.n;
        let nf = self.nf();
        let (p_lo, p_hi) = self.profile_domain();
        let infinite = matches!(order, Order::Infinity)
            || order.as_finite().is_some_and(|a| a > LARGE_ORDER);

        if target == 1.0 {
            return Ok(match self.kind {
                Family::V => p_lo,
                Family::W => p_hi,
            });
        }
        if target == uniform_norm(n, order) {
            return Ok(1.0 / nf);
        }
        match (self.kind, infinite) {
            (Family::V, true) => Ok(((1.0 - target) / (nf - 1.0)).clamp(p_lo, p_hi)),
            (Family::W, true) => Ok(target.clamp(p_lo, p_hi)),
            (Family::V, false) => Ok(bisect_monotone(
                |p| norm_v(n, p, order),
                target,
                p_lo,
                p_hi,
            )),
            (Family::W, false) => {
                let m = self.norm_bracket(target, order);
                let k = m - 1;
                let (b_lo, b_hi) = bracket(m);
                Ok(bisect_monotone(
                    |p| norm_w_fixed(k, p, order),
                    target,
                    b_lo,
                    b_hi,
                ))
            }
        }
    }

    /// `m ∈ [2, n]` whose bracket `[1/m, 1/(m-1)]` spans `target`; the bracket
    /// ends have the norms of the uniform distributions on `m` and `m - 1`
    /// points.
    fn norm_bracket(&self, target: f64, order: Order) -> usize {
        let a = order.value();
        let fits = |m: usize| {
            let x = (m as f64).powf(1.0 / a - 1.0);
            let y = ((m - 1) as f64).powf(1.0 / a - 1.0);
            x.min(y) <= target && target <= x.max(y)
        };
        let guess = (target.powf(a / (1.0 - a)).ceil() as usize).clamp(2, self.n);
        [guess, guess.saturating_sub(1), guess + 1]
            .into_iter()
            .filter(|m| (2..=self.n).contains(m))
            .find(|&m| fits(m))
            .unwrap_or_else(|| (2..=self.n).find(|&m| fits(m)).unwrap_or(self.n))
    }
}

/// `[1/m, 1/(m-1)]`.
fn bracket(m: usize) -> (f64, f64) {
    (1.0 / m as f64, 1.0 / (m - 1) as f64)
}

/// `⌊1/p⌋`, snapped to the nearest integer when within 1e-12 so that
/// `p = 0.1` counts 10 and not 9.
pub(crate) fn w_count(p: f64, n: usize) -> usize {
    let x = 1.0 / p;
    let r = x.round();
    let k = if (x - r).abs() <= 1e-12 * r.max(1.0) {
        r
    } else {
        x.floor()
    };
    (k as usize).clamp(1, n)
}

/// `1 - kp`, with rounding dust at the breakpoints written as an exact zero.
fn w_remainder(k: usize, p: f64) -> f64 {
    let r = 1.0 - k as f64 * p;
    if r <= k as f64 * f64::EPSILON {
        0.0
    } else {
        r
    }
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `H_v(p) = -(1-(n-1)p) ln(1-(n-1)p) - (n-1) p ln p`.
pub(crate) fn h_v(n: usize, p: f64) -> f64 {
    let k = (n - 1) as f64;
    (-xlnx(1.0 - k * p) - k * xlnx(p)).max(0.0)
}

/// `H_w` with the count `⌊1/p⌋ = k` held fixed.
fn h_w_fixed(k: usize, p: f64) -> f64 {
    let kf = k as f64;
    let r = (1.0 - kf * p).max(0.0);
    (-kf * xlnx(p) - xlnx(r)).max(0.0)
}

/// `(count·small^α + big^α)^{1/α}`, scaled by the larger mass.
fn two_level_norm(count: f64, small: f64, big: f64, order: Order) -> f64 {
    let top = small.max(big);
    match order {
        Order::Shannon => count * small + big,
        Order::Infinity => top,
        Order::Finite(a) if a.get() > LARGE_ORDER => top,
        Order::Finite(a) => {
            if top == 0.0 {
                return 0.0;
            }
            let a = a.get();
            let s = count * (small / top).powf(a) + (big / top).powf(a);
            top * s.powf(1.0 / a)
        }
    }
}

fn norm_v(n: usize, p: f64, order: Order) -> f64 {
    let k = (n - 1) as f64;
    two_level_norm(k, p, (1.0 - k * p).max(0.0), order)
}

fn norm_w_fixed(k: usize, p: f64, order: Order) -> f64 {
    let r = (1.0 - k as f64 * p).max(0.0);
    two_level_norm(k as f64, p, r, order)
}

fn uniform_norm(n: usize, order: Order) -> f64 {
    match order {
        Order::Shannon => 1.0,
        Order::Infinity => 1.0 / n as f64,
        Order::Finite(a) if a.get() > LARGE_ORDER => 1.0 / n as f64,
        Order::Finite(a) => (n as f64).powf(1.0 / a.get() - 1.0),
    }
}

/// `[min(1, n^{1/α-1}), max(1, n^{1/α-1})]`.
pub fn norm_range(n: usize, order: Order) -> (f64, f64) {
    let u = uniform_norm(n, order);
    (u.min(1.0), u.max(1.0))
}

pub fn v_dist(n: usize, p: f64) -> Result<ProbVec> {
    ExtremalFamily::v(n)?.distribution(p)
}

pub fn w_dist(n: usize, p: f64) -> Result<ProbVec> {
    ExtremalFamily::w(n)?.distribution(p)
}

pub fn entropy_profile(family: ExtremalFamily, p: f64) -> Result<f64> {
    family.entropy(p)
}

pub fn inverse_entropy(family: ExtremalFamily, h: f64) -> Result<f64> {
    family.inverse_entropy(h)
}

pub fn norm_profile(family: ExtremalFamily, p: f64, order: Order) -> Result<f64> {
    family.norm(p, order)
}

pub fn inverse_norm(family: ExtremalFamily, target: f64, order: Order) -> Result<f64> {
    family.inverse_norm(target, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{alpha_norm, shannon_entropy, uniform};
    use approx::assert_abs_diff_eq;

    fn o(a: f64) -> Order {
        Order::from_real(a).unwrap()
    }

    #[test]
    fn v_examples() {
        assert_eq!(v_dist(4, 0.25).unwrap(), uniform(4).unwrap());
        assert_eq!(v_dist(3, 0.0).unwrap().entries(), &[1.0, 0.0, 0.0]);
        let v = v_dist(3, 0.2).unwrap();
        assert_abs_diff_eq!(v.entries()[0], 0.6, epsilon = 1e-15);
        assert_eq!(&v.entries()[1..], &[0.2, 0.2]);
        assert!(matches!(
            v_dist(3, 0.6),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(v_dist(3, -0.1).is_err());
        assert!(v_dist(1, 0.0).is_err());
        // wider construction domain reaches 1/(n-1)
        assert_eq!(v_dist(3, 0.5).unwrap().entries(), &[0.0, 0.5, 0.5]);
    }

    #[test]
    fn w_examples() {
        let w = w_dist(6, 1.0 / 3.0).unwrap();
        assert_eq!(&w.entries()[..3], &[1.0 / 3.0; 3]);
        assert_eq!(&w.entries()[3..], &[0.0, 0.0, 0.0]);
        assert_eq!(w_dist(4, 1.0).unwrap().entries(), &[1.0, 0.0, 0.0, 0.0]);
        let w = w_dist(5, 0.4).unwrap();
        assert_eq!(&w.entries()[..2], &[0.4, 0.4]);
        assert_abs_diff_eq!(w.entries()[2], 0.2, epsilon = 1e-15);
        assert_eq!(&w.entries()[3..], &[0.0, 0.0]);
        assert!(w_dist(5, 0.1).is_err());
        assert!(w_dist(5, 1.5).is_err());
    }

    #[test]
    fn w_floor_snapping() {
        // 1/0.1 is 9.999999999999998 in floating point
        assert_eq!(w_count(0.1, 10), 10);
        let w = w_dist(10, 0.1).unwrap();
        assert!(w.entries().iter().all(|x| *x == 0.1));
        // breakpoints leave an exact zero remainder, never dust or -0
        for m in 2..=7usize {
            let w = w_dist(7, 1.0 / m as f64).unwrap();
            for x in &w.entries()[m..] {
                assert_eq!(x.to_bits(), 0f64.to_bits());
            }
        }
    }

    #[test]
    fn entropy_profile_examples() {
        let v6 = ExtremalFamily::v(6).unwrap();
        let w6 = ExtremalFamily::w(6).unwrap();
        assert_abs_diff_eq!(v6.entropy(1.0 / 6.0).unwrap(), 6f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(w6.entropy(0.5).unwrap(), 2f64.ln(), epsilon = 1e-15);
        let v3 = ExtremalFamily::v(3).unwrap();
        // 50-digit oracle: H(0.8, 0.1, 0.1)
        assert_abs_diff_eq!(v3.entropy(0.1).unwrap(), 0.639_031_859_650_177, epsilon = 1e-15);
        assert_abs_diff_eq!(
            v3.entropy(0.1).unwrap(),
            shannon_entropy(&v_dist(3, 0.1).unwrap()),
            epsilon = 1e-14
        );
        assert!(v3.entropy(0.9).is_err());
    }

    #[test]
    fn inverse_entropy_examples() {
        let v4 = ExtremalFamily::v(4).unwrap();
        let w4 = ExtremalFamily::w(4).unwrap();
        assert_eq!(v4.inverse_entropy(4f64.ln()).unwrap(), 0.25);
        assert_abs_diff_eq!(w4.inverse_entropy(2f64.ln()).unwrap(), 0.5, epsilon = 1e-15);
        let v3 = ExtremalFamily::v(3).unwrap();
        let h = v3.entropy(0.1).unwrap();
        assert_abs_diff_eq!(v3.inverse_entropy(h).unwrap(), 0.1, epsilon = 1e-10);
        assert_eq!(v4.inverse_entropy(0.0).unwrap(), 0.0);
        assert_eq!(w4.inverse_entropy(0.0).unwrap(), 1.0);
        assert_eq!(v4.inverse_entropy(-1e-13).unwrap(), 0.0);
        assert!(matches!(
            v4.inverse_entropy(1.5),
            Err(Error::EntropyOutOfRange { .. })
        ));
        assert!(w4.inverse_entropy(-0.1).is_err());
    }

    #[test]
    fn norm_profile_examples() {
        let v6 = ExtremalFamily::v(6).unwrap();
        assert_abs_diff_eq!(
            v6.norm(1.0 / 6.0, o(2.0)).unwrap(),
            6f64.powf(-0.5),
            epsilon = 1e-15
        );
        let w4 = ExtremalFamily::w(4).unwrap();
        for a in [0.3, 2.0, 7.0, f64::INFINITY] {
            assert_eq!(w4.norm(1.0, o(a)).unwrap(), 1.0);
        }
        let v3 = ExtremalFamily::v(3).unwrap();
        // 50-digit oracle: (2√0.2 + √0.6)²
        let expect = 2.785_640_646_055_101_8;
        assert_abs_diff_eq!(v3.norm(0.2, o(0.5)).unwrap(), expect, epsilon = 1e-14);
        assert_abs_diff_eq!(
            alpha_norm(&v_dist(3, 0.2).unwrap(), o(0.5)),
            expect,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(v3.norm(0.2, Order::Infinity).unwrap(), 0.6, epsilon = 1e-15);
        assert_eq!(
            ExtremalFamily::w(5).unwrap().norm(0.4, Order::Infinity).unwrap(),
            0.4
        );
    }

    #[test]
    fn inverse_norm_examples() {
        let v4 = ExtremalFamily::v(4).unwrap();
        let w4 = ExtremalFamily::w(4).unwrap();
        assert_eq!(v4.inverse_norm(4f64.powf(-0.5), o(2.0)).unwrap(), 0.25);
        assert_eq!(w4.inverse_norm(1.0, o(2.0)).unwrap(), 1.0);
        let v3 = ExtremalFamily::v(3).unwrap();
        let t = v3.norm(0.07, o(4.0)).unwrap();
        assert_abs_diff_eq!(v3.inverse_norm(t, o(4.0)).unwrap(), 0.07, epsilon = 1e-10);
        assert!(matches!(
            v4.inverse_norm(1.0, Order::Shannon),
            Err(Error::ShannonOrderUnsupported)
        ));
        assert!(matches!(
            v4.inverse_norm(1.5, o(2.0)),
            Err(Error::NormOutOfRange { .. })
        ));
        assert!(w4.inverse_norm(0.9, o(0.5)).is_err());
        // ∞: closed forms
        assert_abs_diff_eq!(
            v4.inverse_norm(0.7, Order::Infinity).unwrap(),
            0.1,
            epsilon = 1e-15
        );
        assert_eq!(w4.inverse_norm(0.7, Order::Infinity).unwrap(), 0.7);
    }

    #[test]
    fn v_sorted_is_w_on_overlap() {
        for n in 2..=8usize {
            let (lo, hi) = (1.0 / n as f64, 1.0 / (n - 1) as f64);
            for i in 0..=100 {
                let p = lo + (hi - lo) * i as f64 / 100.0;
                let v = v_dist(n, p).unwrap();
                let w = w_dist(n, p).unwrap();
                for (a, b) in v.sorted_desc().iter().zip(w.sorted_desc()) {
                    assert!((a - b).abs() <= 1e-15, "n={n} p={p}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn w_continuous_at_breakpoints() {
        for n in 2..=8usize {
            let w = ExtremalFamily::w(n).unwrap();
            for m in 2..=n {
                let b = 1.0 / m as f64;
                for p in [b - 1e-12, b + 1e-12] {
                    if p < 1.0 / n as f64 {
                        continue;
                    }
                    let h = w.entropy(p).unwrap();
                    assert!((h - (m as f64).ln()).abs() <= 1e-9, "n={n} m={m} p={p}");
                }
                assert!((w.entropy(b).unwrap() - (m as f64).ln()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn large_order_uses_max() {
        let v = ExtremalFamily::v(5).unwrap();
        assert_eq!(
            v.norm(0.1, Order::finite(1e7).unwrap()).unwrap(),
            v.norm(0.1, Order::Infinity).unwrap()
        );
    }
}
