//! Probability vectors and the base information measures.
//!
//! A [`ProbVec`] is an n-ary probability vector (n ≥ 2). It keeps its entries
//! in the order given and also caches the decreasing rearrangement, which is
//! what every measure in this crate is evaluated on. Because all sums run over
//! the sorted view, every measure is exactly (bit-for-bit) permutation
//! invariant.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the entry sum of a constructed vector.
pub const TOL_SUM: f64 = 1e-12;

/// Tolerance on the input sum accepted by [`ProbVec::new`].
pub const TOL_INPUT_SUM: f64 = 1e-9;

/// Negative entries down to this value are treated as rounding dust.
pub const TOL_NEGATIVE: f64 = 1e-12;

/// Entries below this are stored as exact zeros.
pub const ZERO_FLOOR: f64 = 1e-300;

/// Above this order `p^α` underflows; the norm is the maximum entry.
pub const LARGE_ORDER: f64 = 1e6;

/// Number of samples produced per RNG stream by [`sample_simplex`].
pub const SHARD_LEN: usize = 1024;

/// An n-ary probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVec {
    entries: Vec<f64>,
    desc: Vec<f64>,
}

impl ProbVec {
    /// Validate and normalize `values`.
    ///
    /// Negative dust (≥ -1e-12) is clamped to zero and the residual
    /// `1 - Σ` is folded into the largest entry.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DimensionTooSmall(values.len()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < -TOL_NEGATIVE)
        {
            return Err(Error::NotADistribution(format!("entry {i} = {v}")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TOL_INPUT_SUM {
            return Err(Error::NotADistribution(format!("entries sum to {sum}")));
        }
        let mut entries: Vec<f64> = values
            .into_iter()
            .map(|v| if v < ZERO_FLOOR { 0.0 } else { v })
            .collect();
        let mut sorted = entries.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let residual = 1.0 - sorted.iter().sum::<f64>();
        if residual != 0.0 {
            let imax = argmax(&entries);
            entries[imax] = (entries[imax] + residual).clamp(0.0, 1.0);
        }
        Ok(Self::from_entries(entries))
    }

    /// Build from entries already known to form a distribution.
    pub(crate) fn from_entries(entries: Vec<f64>) -> Self {
        debug_assert!(entries.len() >= 2);
        debug_assert!((entries.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        let mut desc = entries.clone();
        // stable: ties keep their original relative order
        desc.sort_by(|a, b| b.total_cmp(a));
        Self { entries, desc }
    }

    /// The equiprobable distribution `u_n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self::from_entries(vec![1.0 / n as f64; n]))
    }

    /// The deterministic distribution `d_n = (1, 0, ..., 0)`.
    pub fn deterministic(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let mut entries = vec![0.0; n];
        entries[0] = 1.0;
        Ok(Self::from_entries(entries))
    }

    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entries sorted non-increasing.
    pub fn sorted_desc(&self) -> &[f64] {
        &self.desc
    }

    /// The largest entry, `‖p‖∞`.
    pub fn max_entry(&self) -> f64 {
        self.desc[0]
    }

    pub fn is_uniform(&self, tol: f64) -> bool {
        let u = 1.0 / self.n() as f64;
        self.entries.iter().all(|p| (p - u).abs() <= tol)
    }

    pub fn is_deterministic(&self, tol: f64) -> bool {
        (self.desc[0] - 1.0).abs() <= tol && self.desc[1..].iter().all(|p| *p <= tol)
    }

    /// Parse a JSON array (`[0.5, 0.5]`) or a CSV row (`0.5,0.5`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<f64> = if s.starts_with('[') {
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("f64 vector serializes")
    }

    /// One CSV row, 17 significant digits per entry.
    pub fn to_csv_row(&self) -> String {
        self.entries
            .iter()
            .map(|v| format!("{v:.16e}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<f64>> for ProbVec {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<ProbVec> for Vec<f64> {
    fn from(p: ProbVec) -> Self {
        p.entries
    }
}

impl FromStr for ProbVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in xs.iter().enumerate() {
        if *x > xs[best] {
            best = i;
        }
    }
    best
}

/// A finite order α ∈ (0, ∞) \ {1}.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Order parameter of an entropy or norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(Alpha),
    /// α = 1.
    Shannon,
    /// α → ∞.
    Infinity,
}

impl Order {
    /// A finite order; rejects α ≤ 0, α = 1 and non-finite values.
    pub fn finite(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidOrder(format!(
                "order must be a positive real, got {alpha}"
            )));
        }
        if alpha == 1.0 {
            return Err(Error::InvalidOrder(
                "order 1 is the Shannon case; use Order::Shannon".into(),
            ));
        }
        Ok(Order::Finite(Alpha(alpha)))
    }

    /// Map any α ∈ (0, ∞] onto the matching variant.
    pub fn from_real(alpha: f64) -> Result<Self> {
        if alpha == f64::INFINITY {
            Ok(Order::Infinity)
        } else if alpha == 1.0 {
            Ok(Order::Shannon)
        } else {
            Self::finite(alpha)
        }
    }

    /// α as a real (1 for Shannon, +∞ for Infinity).
    pub fn value(self) -> f64 {
        match self {
            Order::Finite(a) => a.0,
            Order::Shannon => 1.0,
            Order::Infinity => f64::INFINITY,
        }
    }

    /// `Some(α)` for finite orders other than 1.
    pub fn as_finite(self) -> Option<f64> {
        match self {
            Order::Finite(a) => Some(a.0),
            _ => None,
        }
    }

    /// Whether α > 1 (true for Infinity).
    pub fn above_one(self) -> bool {
        self.value() > 1.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(a) => write!(f, "{}", a.0),
            Order::Shannon => f.write_str("1"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Order::Infinity),
            t => {
                let a: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidOrder(format!("cannot parse order {s:?}")))?;
                Order::from_real(a)
            }
        }
    }
}

pub fn uniform(n: usize) -> Result<ProbVec> {
    ProbVec::uniform(n)
}

pub fn deterministic(n: usize) -> Result<ProbVec> {
    ProbVec::deterministic(n)
}

/// `p↓`: same entries, sorted non-increasing (stable on ties).
pub fn rearrange_decreasing(p: &ProbVec) -> ProbVec {
    ProbVec {
        entries: p.desc.clone(),
        desc: p.desc.clone(),
    }
}

/// `-Σ p ln p` over a slice, skipping zeros.
pub(crate) fn entropy_of(xs: &[f64]) -> f64 {
    let h: f64 = xs
        .iter()
        .filter(|x| **x > 0.0)
        .map(|x| -x * x.ln())
        .sum();
    h.max(0.0)
}

/// `(Σ x^α)^{1/α}` over a slice, scaled by the maximum to avoid underflow.
pub(crate) fn norm_of(xs: &[f64], order: Order) -> f64 {
    let max = xs.iter().copied().fold(0.0, f64::max);
    match order {
        Order::Shannon => xs.iter().sum(),
        Order::Infinity => max,
        Order::Finite(a) if a.0 > LARGE_ORDER => max,
        Order::Finite(a) => {
            if max == 0.0 {
                return 0.0;
            }
            let s: f64 = xs
                .iter()
                .filter(|x| **x > 0.0)
                .map(|x| (x / max).powf(a.0))
                .sum();
            max * s.powf(1.0 / a.0)
        }
    }
}

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &ProbVec) -> f64 {
    entropy_of(&p.desc)
}

/// The ℓα-norm. Order 1 is exactly 1; Infinity is the maximum entry.
pub fn alpha_norm(p: &ProbVec, order: Order) -> f64 {
    match order {
        Order::Shannon => 1.0,
        _ => norm_of(&p.desc, order),
    }
}

/// Rényi entropy `α/(1-α) ln ‖p‖α`; Shannon at order 1, `-ln max` at ∞.
pub fn renyi_entropy(p: &ProbVec, order: Order) -> f64 {
    match order {
        Order::Shannon => shannon_entropy(p),
        Order::Infinity => -p.max_entry().ln(),
        Order::Finite(a) => {
            let a = a.0;
            a / (1.0 - a) * alpha_norm(p, order).ln()
        }
    }
}

/// One RNG stream's worth of uniform simplex samples.
///
/// Shard `k` of seed `s` is always the same `len` vectors, independent of how
/// shards are scheduled.
pub fn sample_shard(n: usize, seed: u64, shard: u64, len: usize) -> Result<Vec<ProbVec>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut out = Vec::with_capacity(len);
    let mut buf = vec![0.0; n];
    for _ in 0..len {
        // exponential spacings: normalized Exp(1) draws are Dirichlet(1, ..., 1)
        loop {
            for x in buf.iter_mut() {
                *x = Exp1.sample(&mut rng);
            }
            let s: f64 = buf.iter().sum();
            if s > 0.0 {
                let v = buf.iter().map(|x| x / s).collect();
                out.push(ProbVec::new(v).expect("normalized draw"));
                break;
            }
        }
    }
    Ok(out)
}

/// `count` vectors drawn uniformly from the (n-1)-simplex.
pub fn sample_simplex(n: usize, count: usize, seed: u64) -> Result<Vec<ProbVec>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let shards = count.div_ceil(SHARD_LEN);
    let make = |k: usize| {
        let len = SHARD_LEN.min(count - k * SHARD_LEN);
        sample_shard(n, seed, k as u64, len).expect("n checked")
    };
    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<ProbVec>> = {
        use rayon::prelude::*;
        (0..shards).into_par_iter().map(make).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<ProbVec>> = (0..shards).map(make).collect();
    Ok(chunks.into_iter().flatten().collect())
}
