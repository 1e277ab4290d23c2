//! Discrete memoryless channels.
//!
//! A [`Channel`] is a row-stochastic matrix `P(y|x)` (rows are inputs).
//! [`posterior_state`] applies Bayes' rule for a given input distribution;
//! the conditional entropies use Arimoto's definition
//!
//! ```text
//! H_α(X|Y) = α/(1-α) ln E_Y[ ‖P(·|Y)‖α ]
//! ```
//!
//! For a uniformly focusing channel (columns are permutations of each other)
//! under a uniform input, every posterior row is a permutation of every
//! other, so `H_α(X|Y) = H_α(X|Y=y)` for each `y` and Gallager's `E0` becomes
//! `ρ D_{1/(1+ρ)}(P(·|y) ‖ u)`. [`e0_bounds`] then bounds `E0` at fixed
//! `H(X|Y)` with the two extremal families.

use serde::{Deserialize, Serialize};

use crate::bounds::{renyi_divergence_from_uniform, BoundReport, EntropyMatch};
use crate::error::{Error, Result};
use crate::simplex::{alpha_norm, renyi_entropy, shannon_entropy, Order, ProbVec};

/// Default tolerance for [`classify`].
pub const TOL_CLASSIFY: f64 = 1e-9;

/// A row-stochastic transition matrix `P(y|x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Channel {
    matrix: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct ChannelJson {
    matrix: Vec<Vec<f64>>,
}

impl Channel {
    /// Validate each row as a distribution over the outputs.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.len() < 2 {
            return Err(Error::DimensionTooSmall(matrix.len()));
        }
        let width = matrix[0].len();
        let mut rows = Vec::with_capacity(matrix.len());
        for (i, row) in matrix.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidChannelRow {
                    row: i,
                    reason: format!("has {} entries, expected {width}", row.len()),
                });
            }
            let p = ProbVec::new(row).map_err(|e| Error::InvalidChannelRow {
                row: i,
                reason: e.to_string(),
            })?;
            rows.push(Vec::from(p));
        }
        Ok(Self { matrix: rows })
    }

    /// The circulant channel whose row `x` is `row` shifted right by `x`.
    ///
    /// Such channels are strongly symmetric.
    pub fn circulant(row: &ProbVec) -> Self {
        let n = row.n();
        let r = row.entries();
        let matrix = (0..n)
            .map(|x| (0..n).map(|y| r[(y + n - x) % n]).collect())
            .collect();
        Self { matrix }
    }

    /// JSON `{"matrix": [[...], ...]}` or CSV with one row per input symbol.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let c: ChannelJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::new(c.matrix);
        }
        let mut matrix = Vec::new();
        for (i, line) in s.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let row = line
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidChannelRow {
                    row: i,
                    reason: e.to_string(),
                })?;
            matrix.push(row);
        }
        Self::new(matrix)
    }

    pub fn input_size(&self) -> usize {
        self.matrix.len()
    }

    pub fn output_size(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    /// `P(y|x)`.
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.matrix[x][y]
    }

    pub fn column(&self, y: usize) -> Vec<f64> {
        self.matrix.iter().map(|row| row[y]).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("channel serializes")
    }
}

/// Uniformity classes of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Every row is a permutation of every other row.
    pub dispersive: bool,
    /// Every column is a permutation of every other column.
    pub focusing: bool,
    pub strongly_symmetric: bool,
}

fn all_permutations_of_first(vectors: impl Iterator<Item = Vec<f64>>, tol: f64) -> bool {
    let mut sorted = vectors.map(|mut v| {
        v.sort_by(f64::total_cmp);
        v
    });
    let Some(first) = sorted.next() else {
        return true;
    };
    sorted.all(|v| v.iter().zip(&first).all(|(a, b)| (a - b).abs() <= tol))
}

/// Compare sorted rows and sorted columns entrywise within `tol`.
pub fn classify(ch: &Channel, tol: f64) -> Classification {
    let dispersive = all_permutations_of_first(ch.matrix.iter().cloned(), tol);
    let focusing = all_permutations_of_first((0..ch.output_size()).map(|y| ch.column(y)), tol);
    Classification {
        dispersive,
        focusing,
        strongly_symmetric: dispersive && focusing,
    }
}

/// A channel driven by a fixed input distribution.
#[derive(Debug, Clone)]
pub struct JointState<'a> {
    pub channel: &'a Channel,
    pub input: ProbVec,
    pub output_marginal: ProbVec,
    /// `P(·|y)` per output; `None` where `P_Y(y) = 0`.
    pub posterior: Vec<Option<ProbVec>>,
}

impl JointState<'_> {
    /// `(P_Y(y), P(·|y))` over outputs with positive probability.
    pub fn observed(&self) -> impl Iterator<Item = (f64, &ProbVec)> {
        self.output_marginal
            .entries()
            .iter()
            .zip(&self.posterior)
            .filter_map(|(py, post)| post.as_ref().map(|p| (*py, p)))
    }
}

/// Bayes' rule: `P(x|y) = P_X(x) P(y|x) / P_Y(y)`.
pub fn posterior_state<'a>(ch: &'a Channel, input: &ProbVec) -> Result<JointState<'a>> {
    if input.n() != ch.input_size() {
        return Err(Error::DimensionMismatch {
            expected: ch.input_size(),
            got: input.n(),
        });
    }
    let px = input.entries();
    let marginal: Vec<f64> = (0..ch.output_size())
        .map(|y| (0..ch.input_size()).map(|x| px[x] * ch.prob(x, y)).sum())
        .collect();
    let posterior = marginal
        .iter()
        .enumerate()
        .map(|(y, &py)| {
            (py > 0.0).then(|| {
                let post = (0..ch.input_size())
                    .map(|x| px[x] * ch.prob(x, y) / py)
                    .collect();
                ProbVec::new(post).expect("Bayes posterior is a distribution")
            })
        })
        .collect();
    Ok(JointState {
        channel: ch,
        input: input.clone(),
        output_marginal: ProbVec::new(marginal).expect("output marginal is a distribution"),
        posterior,
    })
}

/// Arimoto's conditional Rényi entropy; the ordinary `H(X|Y)` at order 1.
pub fn conditional_entropy(state: &JointState<'_>, order: Order) -> f64 {
    match order {
        Order::Shannon => state
            .observed()
            .map(|(py, post)| py * shannon_entropy(post))
            .sum(),
        Order::Finite(a) => {
            let a = a.get();
            let mean: f64 = state
                .observed()
                .map(|(py, post)| py * alpha_norm(post, order))
                .sum();
            a / (1.0 - a) * mean.ln()
        }
        // limit α → ∞ of the finite case
        Order::Infinity => {
            let mean: f64 = state
                .observed()
                .map(|(py, post)| py * post.max_entry())
                .sum();
            -mean.ln()
        }
    }
}

/// `I_α(X;Y) = H_α(X) - H_α(X|Y)`.
pub fn mutual_information_alpha(state: &JointState<'_>, order: Order) -> f64 {
    renyi_entropy(&state.input, order) - conditional_entropy(state, order)
}

fn check_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho <= -1.0 {
        return Err(Error::RhoOutOfRange(rho));
    }
    Ok(())
}

/// Gallager's `E0(ρ) = -ln Σ_y (Σ_x P_X(x) P(y|x)^{1/(1+ρ)})^{1+ρ}`.
pub fn gallager_e0(ch: &Channel, input: &ProbVec, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if input.n() != ch.input_size() {
        return Err(Error::DimensionMismatch {
            expected: ch.input_size(),
            got: input.n(),
        });
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let s = 1.0 / (1.0 + rho);
    let px = input.entries();
    let total: f64 = (0..ch.output_size())
        .map(|y| {
            let inner: f64 = (0..ch.input_size())
                .filter(|&x| px[x] > 0.0 && ch.prob(x, y) > 0.0)
                .map(|x| px[x] * ch.prob(x, y).powf(s))
                .sum();
            inner.powf(1.0 + rho)
        })
        .sum();
    Ok(-total.ln())
}

/// The tilted input `P_X(x)^α / Σ P_X^α`.
pub fn tilted_input(input: &ProbVec, alpha: f64) -> Result<ProbVec> {
    if alpha.is_nan() || alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidOrder(format!("tilt order must be positive, got {alpha}")));
    }
    let w: Vec<f64> = input
        .entries()
        .iter()
        .map(|p| if *p > 0.0 { p.powf(alpha) } else { 0.0 })
        .collect();
    let s: f64 = w.iter().sum();
    ProbVec::new(w.into_iter().map(|x| x / s).collect())
}

/// Bounds on `E0(ρ)` of a uniformly focusing channel under a uniform input,
/// at its conditional entropy `H(X|Y)`:
///
/// ```text
/// ρ D_{1/(1+ρ)}(v̂ ‖ u) ≤ E0(ρ) ≤ ρ D_{1/(1+ρ)}(ŵ ‖ u)
/// ```
///
/// where `v̂`, `ŵ` are the family members with entropy `H(X|Y)`. The same
/// chain holds for every `ρ > -1`.
pub fn e0_bounds(ch: &Channel, rho: f64) -> Result<BoundReport> {
    check_rho(rho)?;
    if !classify(ch, TOL_CLASSIFY).focusing {
        return Err(Error::NotFocusing);
    }
    let n = ch.input_size();
    let input = ProbVec::uniform(n)?;
    let state = posterior_state(ch, &input)?;
    let h = conditional_entropy(&state, Order::Shannon).clamp(0.0, (n as f64).ln());
    let m = EntropyMatch::at_entropy(n, h)?;
    let (v_hat, w_hat) = (m.v_bar()?, m.w_bar()?);
    let value = gallager_e0(ch, &input, rho)?;
    let (lower, upper) = if rho == 0.0 {
        (0.0, 0.0)
    } else {
        let order = Order::from_real(1.0 / (1.0 + rho))?;
        (
            rho * renyi_divergence_from_uniform(&v_hat, order),
            rho * renyi_divergence_from_uniform(&w_hat, order),
        )
    };
    Ok(BoundReport {
        measure_name: "gallager-e0".to_string(),
        value,
        lower,
        upper,
        attaining_lower: v_hat,
        attaining_upper: w_hat,
    })
}
