//! Sandwich bounds between the Shannon entropy and ℓα-norm based measures.
//!
//! Let `v̄(p)` and `w̄(p)` be the members of the two extremal families with
//! the same Shannon entropy as `p`. Then for every order
//!
//! ```text
//! ‖w̄(p)‖α ≤ ‖p‖α ≤ ‖v̄(p)‖α
//! ```
//!
//! and any strictly monotone `f` turns this into bounds on `f(‖p‖α)`, with
//! the two ends swapped when `f` is decreasing. [`MeasureSpec`] lists the
//! measures supported that way. In the other direction, fixing `‖p‖α`
//! bounds `H(p)` by the entropies of the family members with that norm, with
//! the roles of `v` and `w` switching across α = 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::ExtremalFamily;
use crate::simplex::{alpha_norm, renyi_entropy, shannon_entropy, Order, ProbVec};

/// Slack used when checking `lower ≤ value ≤ upper`.
pub const TOL_BOUND: f64 = 1e-9;

/// `ln_α x = (x^{1-α} - 1)/(1-α)`, and `ln x` at α = 1.
pub fn alpha_log(alpha: f64, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    if !alpha.is_finite() {
        return Err(Error::DomainViolation(format!("order {alpha} is not finite")));
    }
    let lx = x.ln();
    if alpha == 1.0 {
        return Ok(lx);
    }
    let c = 1.0 - alpha;
    Ok((c * lx).exp_m1() / c)
}

/// `ln_α x / ln_α y` without forming either factor when it would overflow.
fn alpha_log_ratio(alpha: f64, lx: f64, ly: f64) -> f64 {
    let c = 1.0 - alpha;
    if c == 0.0 {
        lx / ly
    } else if c > 0.0 {
        // e^{c(lx-ly)} (1 - e^{-c lx}) / (1 - e^{-c ly})
        (c * (lx - ly)).exp() * (-c * lx).exp_m1() / (-c * ly).exp_m1()
    } else {
        (c * lx).exp_m1() / (c * ly).exp_m1()
    }
}

/// `ln_β x / ln_β y - ln_α x / ln_α y` for `α < β`, `1 ≤ x ≤ y`, `y ≠ 1`.
///
/// Never negative, and zero exactly when `x ∈ {1, y}`.
pub fn alpha_log_ratio_gap(alpha: f64, beta: f64, x: f64, y: f64) -> Result<f64> {
    if !(alpha.is_finite() && beta.is_finite() && alpha < beta) {
        return Err(Error::DomainViolation(format!(
            "need finite orders with alpha < beta, got {alpha} and {beta}"
        )));
    }
    if !(x.is_finite() && y.is_finite() && 1.0 <= x && x <= y && y != 1.0) {
        return Err(Error::DomainViolation(format!(
            "need 1 <= x <= y with y != 1, got x = {x}, y = {y}"
        )));
    }
    let (lx, ly) = (x.ln(), y.ln());
    Ok(alpha_log_ratio(beta, lx, ly) - alpha_log_ratio(alpha, lx, ly))
}

/// A bounded value together with the distributions attaining each bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "measure")]
    pub measure_name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub attaining_lower: ProbVec,
    pub attaining_upper: ProbVec,
}

impl BoundReport {
    /// Whether `lower - slack ≤ value ≤ upper + slack`.
    pub fn holds(&self, slack: f64) -> bool {
        self.lower - slack <= self.value && self.value <= self.upper + slack
    }

    /// How far `value` falls outside `[lower, upper]` (0 when inside).
    pub fn excess(&self) -> f64 {
        (self.lower - self.value).max(self.value - self.upper).max(0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Measures that are strictly monotone functions of an ℓα-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// `t/(1-t) ln x`
    Renyi,
    /// `(x^t - 1)/(1-t)`
    Tsallis,
    /// `(x^t - 1)/(2^{1-t} - 1)`
    TypeBeta,
    /// `(1 - x)/(1 - 2^{t-1})`, evaluated on the norm of order `1/t`
    Gamma,
    /// `t/(t-1) (1 - x)`
    RNorm,
    /// identity
    AlphaNorm,
    /// `x²` on the 2-norm
    IndexOfCoincidence,
    /// `ln n - t/(1-t) ln x`, the Rényi divergence from `u_n`
    RenyiDivergence,
    /// `ρ ln n - ln x` with `ρ = 1/t - 1`: `ρ D_t(p ‖ u_n)`, which is Gallager's
    /// `E0` for a uniformly focusing channel under a uniform input
    GallagerE0,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 9] = [
        MeasureKind::Renyi,
        MeasureKind::Tsallis,
        MeasureKind::TypeBeta,
        MeasureKind::Gamma,
        MeasureKind::RNorm,
        MeasureKind::AlphaNorm,
        MeasureKind::IndexOfCoincidence,
        MeasureKind::RenyiDivergence,
        MeasureKind::GallagerE0,
    ];

    /// The five entropies with a tabulated transform.
    pub const ENTROPIES: [MeasureKind; 5] = [
        MeasureKind::Renyi,
        MeasureKind::Tsallis,
        MeasureKind::TypeBeta,
        MeasureKind::Gamma,
        MeasureKind::RNorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Renyi => "renyi",
            MeasureKind::Tsallis => "tsallis",
            MeasureKind::TypeBeta => "type-beta",
            MeasureKind::Gamma => "gamma",
            MeasureKind::RNorm => "r-norm",
            MeasureKind::AlphaNorm => "alpha-norm",
            MeasureKind::IndexOfCoincidence => "index-of-coincidence",
            MeasureKind::RenyiDivergence => "renyi-divergence",
            MeasureKind::GallagerE0 => "gallager-e0",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .or(match key.as_str() {
                "norm" => Some(MeasureKind::AlphaNorm),
                "ic" => Some(MeasureKind::IndexOfCoincidence),
                "e0" => Some(MeasureKind::GallagerE0),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown measure {s:?}")))
    }
}

/// A measure with its order parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    kind: MeasureKind,
    order: Order,
}

impl MeasureSpec {
    pub fn new(kind: MeasureKind, order: Order) -> Result<Self> {
        let ok = match (kind, order) {
            (_, Order::Shannon) => false,
            (MeasureKind::AlphaNorm, _) => true,
            (MeasureKind::IndexOfCoincidence, o) => o.as_finite() == Some(2.0),
            (_, o) => o.as_finite().is_some(),
        };
        if !ok {
            return Err(Error::InvalidOrder(format!("{kind} is not defined at order {order}")));
        }
        Ok(Self { kind, order })
    }

    pub fn alpha_norm(order: Order) -> Result<Self> {
        Self::new(MeasureKind::AlphaNorm, order)
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// The order of the ℓα-norm the measure is a function of.
    pub fn norm_order(&self) -> Order {
        match (self.kind, self.order) {
            (MeasureKind::Gamma, Order::Finite(t)) => {
                Order::from_real(1.0 / t.get()).expect("1/t is a valid order")
            }
            (_, o) => o,
        }
    }

    fn t(&self) -> f64 {
        self.order.value()
    }

    /// `f_t(x)`; `n` only enters the divergence-type measures.
    pub fn transform(&self, x: f64, n: usize) -> f64 {
        let t = self.t();
        let ln_n = (n as f64).ln();
        match self.kind {
            MeasureKind::Renyi => t / (1.0 - t) * x.ln(),
            MeasureKind::Tsallis => (x.powf(t) - 1.0) / (1.0 - t),
            MeasureKind::TypeBeta => (x.powf(t) - 1.0) / ((1.0 - t).exp2() - 1.0),
            MeasureKind::Gamma => (1.0 - x) / (1.0 - (t - 1.0).exp2()),
            MeasureKind::RNorm => t / (t - 1.0) * (1.0 - x),
            MeasureKind::AlphaNorm => x,
            MeasureKind::IndexOfCoincidence => x * x,
            MeasureKind::RenyiDivergence => ln_n - t / (1.0 - t) * x.ln(),
            MeasureKind::GallagerE0 => (1.0 / t - 1.0) * ln_n - x.ln(),
        }
    }

    /// Whether `f_t` is strictly increasing on `x > 0`.
    pub fn is_increasing(&self) -> bool {
        let below_one = self.t() < 1.0;
        match self.kind {
            MeasureKind::Renyi
            | MeasureKind::Tsallis
            | MeasureKind::TypeBeta
            | MeasureKind::RNorm => below_one,
            MeasureKind::Gamma => !below_one,
            MeasureKind::AlphaNorm | MeasureKind::IndexOfCoincidence => true,
            MeasureKind::RenyiDivergence => !below_one,
            MeasureKind::GallagerE0 => false,
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.order)
    }
}

/// Parameters of `v̄(p)` and `w̄(p)`: the family members with entropy `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyMatch {
    pub n: usize,
    pub v_param: f64,
    pub w_param: f64,
}

impl EntropyMatch {
    pub fn at_entropy(n: usize, h: f64) -> Result<Self> {
        Ok(Self {
            n,
            v_param: ExtremalFamily::v(n)?.inverse_entropy(h)?,
            w_param: ExtremalFamily::w(n)?.inverse_entropy(h)?,
        })
    }

    pub fn of(p: &ProbVec) -> Result<Self> {
        Self::at_entropy(p.n(), shannon_entropy(p))
    }

    /// `(‖w̄‖α, ‖v̄‖α)`.
    pub fn norms(&self, order: Order) -> Result<(f64, f64)> {
        let lo = ExtremalFamily::w(self.n)?.norm(self.w_param, order)?;
        let hi = ExtremalFamily::v(self.n)?.norm(self.v_param, order)?;
        Ok((lo, hi))
    }

    pub fn v_bar(&self) -> Result<ProbVec> {
        ExtremalFamily::v(self.n)?.distribution(self.v_param)
    }

    pub fn w_bar(&self) -> Result<ProbVec> {
        ExtremalFamily::w(self.n)?.distribution(self.w_param)
    }
}

pub(crate) fn norm_bounds_with(p: &ProbVec, order: Order, m: &EntropyMatch) -> Result<BoundReport> {
    if order == Order::Shannon {
        return Err(Error::ShannonOrderUnsupported);
    }
    let (lower, upper) = m.norms(order)?;
    Ok(BoundReport {
        measure_name: MeasureKind::AlphaNorm.name().to_string(),
        value: alpha_norm(p, order),
        lower,
        upper,
        attaining_lower: m.w_bar()?,
        attaining_upper: m.v_bar()?,
    })
}

/// `‖w̄(p)‖α ≤ ‖p‖α ≤ ‖v̄(p)‖α`.
pub fn norm_bounds_at_entropy(p: &ProbVec, order: Order) -> Result<BoundReport> {
    if order == Order::Shannon {
        return Err(Error::ShannonOrderUnsupported);
    }
    norm_bounds_with(p, order, &EntropyMatch::of(p)?)
}

/// Bounds on `H(p)` among distributions sharing `‖p‖α`.
///
/// For α < 1 the `v` member has the least entropy and the `w` member the
/// most; for α > 1 it is the other way around.
pub fn entropy_bounds_at_norm(p: &ProbVec, order: Order) -> Result<BoundReport> {
    let alpha = match order {
        Order::Shannon => return Err(Error::ShannonOrderUnsupported),
        Order::Infinity => {
            return Err(Error::InvalidOrder(
                "entropy bounds at fixed norm need a finite order".into(),
            ))
        }
        Order::Finite(a) => a.get(),
    };
    let n = p.n();
    let target = alpha_norm(p, order);
    let v = ExtremalFamily::v(n)?;
    let w = ExtremalFamily::w(n)?;
    let pv = v.inverse_norm(target, order)?;
    let pw = w.inverse_norm(target, order)?;
    let (hv, hw) = (v.entropy(pv)?, w.entropy(pw)?);
    let (dv, dw) = (v.distribution(pv)?, w.distribution(pw)?);
    let (lower, upper, attaining_lower, attaining_upper) = if alpha < 1.0 {
        (hv, hw, dv, dw)
    } else {
        (hw, hv, dw, dv)
    };
    Ok(BoundReport {
        measure_name: "shannon-entropy".to_string(),
        value: shannon_entropy(p),
        lower,
        upper,
        attaining_lower,
        attaining_upper,
    })
}

/// `f_t(‖p‖)` for the measure's transform and norm order.
pub fn measure_value(p: &ProbVec, spec: &MeasureSpec) -> f64 {
    spec.transform(alpha_norm(p, spec.norm_order()), p.n())
}

pub(crate) fn measure_bounds_with(
    p: &ProbVec,
    spec: &MeasureSpec,
    m: &EntropyMatch,
) -> Result<BoundReport> {
    let norms = norm_bounds_with(p, spec.norm_order(), m)?;
    Ok(transform_report(p, spec, norms))
}

fn transform_report(p: &ProbVec, spec: &MeasureSpec, norms: BoundReport) -> BoundReport {
    let n = p.n();
    let at_w = spec.transform(norms.lower, n);
    let at_v = spec.transform(norms.upper, n);
    let (lower, upper, attaining_lower, attaining_upper) = if spec.is_increasing() {
        (at_w, at_v, norms.attaining_lower, norms.attaining_upper)
    } else {
        (at_v, at_w, norms.attaining_upper, norms.attaining_lower)
    };
    BoundReport {
        measure_name: spec.name().to_string(),
        value: measure_value(p, spec),
        lower,
        upper,
        attaining_lower,
        attaining_upper,
    }
}

/// Bounds on a norm-based measure at the Shannon entropy of `p`.
pub fn measure_bounds_at_entropy(p: &ProbVec, spec: &MeasureSpec) -> Result<BoundReport> {
    let norms = norm_bounds_at_entropy(p, spec.norm_order())?;
    Ok(transform_report(p, spec, norms))
}

/// `D_α(p ‖ u_n) = ln n - H_α(p)`.
pub fn renyi_divergence_from_uniform(p: &ProbVec, order: Order) -> f64 {
    ((p.n() as f64).ln() - renyi_entropy(p, order)).max(0.0)
}

/// Bounds on `D_α(p ‖ u_n)` at fixed `D(p ‖ u_n)`.
pub fn renyi_divergence_bounds(p: &ProbVec, order: Order) -> Result<BoundReport> {
    let spec = MeasureSpec::new(MeasureKind::RenyiDivergence, order)?;
    measure_bounds_at_entropy(p, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{v_dist, w_dist};
    use crate::simplex::{deterministic, sample_simplex, uniform};
    use approx::assert_abs_diff_eq;

    fn o(a: f64) -> Order {
        Order::from_real(a).unwrap()
    }

    fn pv(v: &[f64]) -> ProbVec {
        ProbVec::new(v.to_vec()).unwrap()
    }

    #[test]
    fn alpha_log_examples() {
        assert_abs_diff_eq!(alpha_log(1.0, std::f64::consts::E).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_log(2.0, 4.0).unwrap(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_log(0.5, 9.0).unwrap(), 4.0, epsilon = 1e-14);
        assert!(matches!(alpha_log(2.0, 0.0), Err(Error::NonPositiveArgument(_))));
        assert!(alpha_log(2.0, -1.0).is_err());
        // continuity through α = 1
        assert_abs_diff_eq!(
            alpha_log(1.0 + 1e-9, 5.0).unwrap(),
            5f64.ln(),
            epsilon = 1e-8
        );
    }

    #[test]
    fn ratio_gap_examples() {
        assert_eq!(alpha_log_ratio_gap(0.5, 2.0, 1.0, 3.0).unwrap(), 0.0);
        assert_eq!(alpha_log_ratio_gap(0.5, 2.0, 3.0, 3.0).unwrap(), 0.0);
        // 50-digit oracle
        assert_abs_diff_eq!(
            alpha_log_ratio_gap(0.5, 2.0, 2.0, 3.0).unwrap(),
            0.184_173_751_206_302_07,
            epsilon = 1e-14
        );
        assert!(alpha_log_ratio_gap(2.0, 0.5, 2.0, 3.0).is_err());
        assert!(alpha_log_ratio_gap(0.5, 2.0, 3.0, 2.0).is_err());
        assert!(alpha_log_ratio_gap(0.5, 2.0, 1.0, 1.0).is_err());
        assert!(alpha_log_ratio_gap(0.5, 2.0, 0.5, 2.0).is_err());
        // through α = 1 and negative orders
        assert!(alpha_log_ratio_gap(-3.0, 1.0, 2.0, 5.0).unwrap() > 0.0);
        assert!(alpha_log_ratio_gap(1.0, 40.0, 2.0, 1e6).unwrap() > 0.0);
    }

    #[test]
    fn norm_bounds_corners() {
        let r = norm_bounds_at_entropy(&uniform(6).unwrap(), o(2.0)).unwrap();
        let e = 6f64.powf(-0.5);
        for x in [r.value, r.lower, r.upper] {
            assert_abs_diff_eq!(x, e, epsilon = 1e-12);
        }
        let r = norm_bounds_at_entropy(&deterministic(6).unwrap(), o(2.0)).unwrap();
        assert_eq!((r.lower, r.value, r.upper), (1.0, 1.0, 1.0));
        assert!(matches!(
            norm_bounds_at_entropy(&uniform(3).unwrap(), Order::Shannon),
            Err(Error::ShannonOrderUnsupported)
        ));
    }

    #[test]
    fn norm_bounds_attaining_vectors_reproduce_bounds() {
        let p = pv(&[0.5, 0.3, 0.2]);
        for a in [0.25, 0.5, 2.0, 4.0, f64::INFINITY] {
            let r = norm_bounds_at_entropy(&p, o(a)).unwrap();
            assert!(r.lower < r.value && r.value < r.upper, "α={a}: {r:?}");
            assert_abs_diff_eq!(alpha_norm(&r.attaining_lower, o(a)), r.lower, epsilon = 1e-9);
            assert_abs_diff_eq!(alpha_norm(&r.attaining_upper, o(a)), r.upper, epsilon = 1e-9);
            let h = shannon_entropy(&p);
            assert_abs_diff_eq!(shannon_entropy(&r.attaining_lower), h, epsilon = 1e-9);
            assert_abs_diff_eq!(shannon_entropy(&r.attaining_upper), h, epsilon = 1e-9);
        }
    }

    #[test]
    fn entropy_bounds_corners_and_flip() {
        let r = entropy_bounds_at_norm(&uniform(5).unwrap(), o(0.5)).unwrap();
        assert_abs_diff_eq!(r.lower, 5f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(r.upper, 5f64.ln(), epsilon = 1e-12);
        let r = entropy_bounds_at_norm(&deterministic(5).unwrap(), o(2.0)).unwrap();
        assert_eq!((r.lower, r.upper), (0.0, 0.0));

        let p = pv(&[0.5, 0.3, 0.2]);
        let lo = entropy_bounds_at_norm(&p, o(0.5)).unwrap();
        let hi = entropy_bounds_at_norm(&p, o(2.0)).unwrap();
        assert!(lo.holds(0.0) && hi.holds(0.0));
        // v attains the lower end below α = 1 and the upper end above
        assert_eq!(lo.attaining_lower.sorted_desc()[1], lo.attaining_lower.sorted_desc()[2]);
        assert_eq!(hi.attaining_upper.sorted_desc()[1], hi.attaining_upper.sorted_desc()[2]);
        assert!(matches!(
            entropy_bounds_at_norm(&p, Order::Shannon),
            Err(Error::ShannonOrderUnsupported)
        ));
        assert!(entropy_bounds_at_norm(&p, Order::Infinity).is_err());
    }

    #[test]
    fn measure_value_examples() {
        let renyi = MeasureSpec::new(MeasureKind::Renyi, o(2.0)).unwrap();
        assert_abs_diff_eq!(measure_value(&uniform(4).unwrap(), &renyi), 4f64.ln(), epsilon = 1e-15);
        let tsallis = MeasureSpec::new(MeasureKind::Tsallis, o(2.0)).unwrap();
        assert_eq!(measure_value(&deterministic(3).unwrap(), &tsallis), 0.0);
        let beta = MeasureSpec::new(MeasureKind::TypeBeta, o(2.0)).unwrap();
        assert_abs_diff_eq!(measure_value(&pv(&[0.5, 0.5]), &beta), 1.0, epsilon = 1e-15);
        let ic = MeasureSpec::new(MeasureKind::IndexOfCoincidence, o(2.0)).unwrap();
        assert_abs_diff_eq!(measure_value(&pv(&[0.5, 0.3, 0.2]), &ic), 0.38, epsilon = 1e-15);
        let gamma = MeasureSpec::new(MeasureKind::Gamma, o(2.0)).unwrap();
        assert_eq!(gamma.norm_order().as_finite(), Some(0.5));
    }

    #[test]
    fn measure_spec_validation() {
        assert!(MeasureSpec::new(MeasureKind::Renyi, Order::Shannon).is_err());
        assert!(MeasureSpec::new(MeasureKind::Renyi, Order::Infinity).is_err());
        assert!(MeasureSpec::new(MeasureKind::AlphaNorm, Order::Infinity).is_ok());
        assert!(MeasureSpec::new(MeasureKind::IndexOfCoincidence, o(3.0)).is_err());
        assert_eq!("type_beta".parse::<MeasureKind>().unwrap(), MeasureKind::TypeBeta);
        assert_eq!("R-Norm".parse::<MeasureKind>().unwrap(), MeasureKind::RNorm);
        assert!("shannon".parse::<MeasureKind>().is_err());
    }

    #[test]
    fn renyi_bounds_follow_monotonicity() {
        let p = pv(&[0.6, 0.25, 0.1, 0.05]);
        let m = EntropyMatch::of(&p).unwrap();
        let (v, w) = (m.v_bar().unwrap(), m.w_bar().unwrap());
        let r = measure_bounds_at_entropy(&p, &MeasureSpec::new(MeasureKind::Renyi, o(0.5)).unwrap())
            .unwrap();
        assert_eq!(r.lower, renyi_entropy_via(&w, 0.5));
        assert_abs_diff_eq!(r.upper, renyi_entropy(&v, o(0.5)), epsilon = 1e-12);
        let r = measure_bounds_at_entropy(&p, &MeasureSpec::new(MeasureKind::Renyi, o(2.0)).unwrap())
            .unwrap();
        assert_abs_diff_eq!(r.lower, renyi_entropy(&v, o(2.0)), epsilon = 1e-12);
        assert_abs_diff_eq!(r.upper, renyi_entropy(&w, o(2.0)), epsilon = 1e-12);
    }

    fn renyi_entropy_via(q: &ProbVec, a: f64) -> f64 {
        MeasureSpec::new(MeasureKind::Renyi, o(a)).unwrap().transform(alpha_norm(q, o(a)), q.n())
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(renyi_divergence_from_uniform(&uniform(7).unwrap(), o(2.0)), 0.0);
        assert_abs_diff_eq!(
            renyi_divergence_from_uniform(&deterministic(3).unwrap(), o(0.5)),
            3f64.ln(),
            epsilon = 1e-15
        );
        // 50-digit oracle: ln 3 + ln 0.38, also (1/(α-1)) ln Σ p^α n^{α-1}
        let p = pv(&[0.5, 0.3, 0.2]);
        let d = renyi_divergence_from_uniform(&p, o(2.0));
        assert_abs_diff_eq!(d, 0.131_028_262_406_404_09, epsilon = 1e-15);
        let direct = (p.entries().iter().map(|x| x * x * 3.0).sum::<f64>()).ln();
        assert_abs_diff_eq!(d, direct, epsilon = 1e-15);
        assert_abs_diff_eq!(
            renyi_divergence_from_uniform(&p, Order::Shannon),
            3f64.ln() - shannon_entropy(&p),
            epsilon = 1e-15
        );
    }

    #[test]
    fn divergence_bounds_corners() {
        for n in [2, 3, 6] {
            for a in [0.5, 2.0] {
                let r = renyi_divergence_bounds(&uniform(n).unwrap(), o(a)).unwrap();
                assert!(r.lower.abs() < 1e-12 && r.upper.abs() < 1e-12);
                let r = renyi_divergence_bounds(&deterministic(n).unwrap(), o(a)).unwrap();
                let ln_n = (n as f64).ln();
                assert_abs_diff_eq!(r.lower, ln_n, epsilon = 1e-12);
                assert_abs_diff_eq!(r.upper, ln_n, epsilon = 1e-12);
            }
        }
        assert!(renyi_divergence_bounds(&uniform(3).unwrap(), Order::Shannon).is_err());
    }

    #[test]
    fn family_members_attain_their_bound() {
        for n in 3..=6 {
            for i in 1..20 {
                let t = i as f64 / 20.0;
                let v = v_dist(n, t / n as f64).unwrap();
                let w = w_dist(n, 1.0 / n as f64 + t * (1.0 - 1.0 / n as f64)).unwrap();
                for a in [0.5, 3.0] {
                    let rv = norm_bounds_at_entropy(&v, o(a)).unwrap();
                    assert!((rv.upper - rv.value).abs() <= 1e-9);
                    let rw = norm_bounds_at_entropy(&w, o(a)).unwrap();
                    assert!((rw.lower - rw.value).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = norm_bounds_at_entropy(&uniform(4).unwrap(), o(2.0)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["measure", "value", "lower", "upper", "attaining_lower", "attaining_upper"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["attaining_upper"].as_array().unwrap().len(), 4);
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sampled_sandwich_smoke() {
        for p in sample_simplex(5, 200, 11).unwrap() {
            for a in [0.25, 2.0, f64::INFINITY] {
                assert!(norm_bounds_at_entropy(&p, o(a)).unwrap().holds(TOL_BOUND));
            }
            for a in [0.5, 2.0] {
                assert!(entropy_bounds_at_norm(&p, o(a)).unwrap().holds(TOL_BOUND));
            }
        }
    }
}
