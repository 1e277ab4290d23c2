//! Monte-Carlo and brute-force verification of every bound and monotonicity
//! property.
//!
//! Each check returns a [`Tally`]: how many cases were examined, how many
//! fell outside tolerance, and the largest excess seen. Work is split into
//! fixed shards of [`SHARD_LEN`] cases whose randomness depends only on
//! `(seed, shard)`, and tallies are merged with order-independent operations,
//! so results are identical for any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    alpha_log_ratio_gap, entropy_bounds_at_norm, measure_bounds_with, measure_value,
    norm_bounds_with, renyi_divergence_bounds, EntropyMatch, MeasureKind, MeasureSpec,
};
use crate::channel::{
    classify, conditional_entropy, e0_bounds, gallager_e0, mutual_information_alpha,
    posterior_state, Channel,
};
use crate::error::Result;
use crate::extremal::{v_dist, w_dist, ExtremalFamily, Family};
use crate::region::{boundary_curves, XAxis};
use crate::simplex::{
    alpha_norm, rearrange_decreasing, renyi_entropy, sample_shard, shannon_entropy, Order,
    ProbVec, SHARD_LEN,
};

/// How shards are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Rayon's global pool; sequential when built without `parallel`.
    #[default]
    Parallel,
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub violations: u64,
    pub max_excess: f64,
}

impl Tally {
    /// Record one case that is off by `excess` against tolerance `tol`.
    pub fn observe(&mut self, excess: f64, tol: f64) {
        self.checked += 1;
        let excess = if excess.is_nan() { f64::INFINITY } else { excess.max(0.0) };
        if excess > tol {
            self.violations += 1;
        }
        self.max_excess = self.max_excess.max(excess);
    }

    /// Record a case that could not be evaluated.
    pub fn fail(&mut self) {
        self.observe(f64::INFINITY, 0.0);
    }

    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            checked: self.checked + other.checked,
            violations: self.violations + other.violations,
            max_excess: self.max_excess.max(other.max_excess),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn run_shards<F>(exec: Exec, shards: u64, f: F) -> Tally
where
    F: Fn(u64) -> Tally + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..shards)
            .into_par_iter()
            .map(f)
            .reduce(Tally::default, Tally::merge),
        _ => (0..shards).map(f).fold(Tally::default(), Tally::merge),
    }
}

fn shard_count(count: usize) -> u64 {
    count.div_ceil(SHARD_LEN) as u64
}

fn shard_len(count: usize, shard: u64) -> usize {
    (count - shard as usize * SHARD_LEN).min(SHARD_LEN)
}

/// Uniform simplex samples, shard by shard, with `f` scoring each.
fn over_samples<F>(n: usize, count: usize, seed: u64, exec: Exec, f: F) -> Tally
where
    F: Fn(&ProbVec, &mut Tally) + Sync + Send,
{
    run_shards(exec, shard_count(count), |s| {
        let mut t = Tally::default();
        match sample_shard(n, seed, s, shard_len(count, s)) {
            Ok(ps) => ps.iter().for_each(|p| f(p, &mut t)),
            Err(_) => t.fail(),
        }
        t
    })
}

/// A per-shard generator for auxiliary randomness, kept apart from the
/// simplex sampler's streams by `tag`.
fn aux_rng(seed: u64, tag: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(shard);
    rng
}

/// Cases drawn from `aux_rng`, shard by shard.
fn over_draws<F>(count: usize, seed: u64, tag: u64, exec: Exec, f: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng, &mut Tally) + Sync + Send,
{
    run_shards(exec, shard_count(count), |s| {
        let mut rng = aux_rng(seed, tag, s);
        let mut t = Tally::default();
        for _ in 0..shard_len(count, s) {
            f(&mut rng, &mut t);
        }
        t
    })
}

fn orders(values: &[f64]) -> Vec<Order> {
    values
        .iter()
        .map(|a| Order::from_real(*a).expect("valid order"))
        .collect()
}

/// The orders used for the norm checks: 0.25, 0.5, 2, 4 and ∞.
pub fn standard_orders() -> Vec<Order> {
    orders(&[0.25, 0.5, 2.0, 4.0, f64::INFINITY])
}

/// `‖w̄(p)‖α - tol ≤ ‖p‖α ≤ ‖v̄(p)‖α + tol` on uniform samples.
pub fn norm_sandwich(
    n: usize,
    orders: &[Order],
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_samples(n, samples, seed, exec, |p, t| {
        let Ok(m) = EntropyMatch::of(p) else {
            return t.fail();
        };
        for &o in orders {
            match norm_bounds_with(p, o, &m) {
                Ok(r) => t.observe(r.excess(), tol),
                Err(_) => t.fail(),
            }
        }
    })
}

/// Family members attain their own bound: `v` the upper, `w` the lower.
pub fn family_tightness(
    n: usize,
    orders: &[Order],
    members: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    let (v, w) = (
        ExtremalFamily::v(n).expect("n >= 2"),
        ExtremalFamily::w(n).expect("n >= 2"),
    );
    over_draws(members, seed, 1, exec, |rng, t| {
        let pv = rng.random_range(0.0..=1.0 / n as f64);
        let pw = rng.random_range(1.0 / n as f64..=1.0);
        let (Ok(dv), Ok(dw)) = (v.distribution(pv), w.distribution(pw)) else {
            return t.fail();
        };
        let (Ok(mv), Ok(mw)) = (EntropyMatch::of(&dv), EntropyMatch::of(&dw)) else {
            return t.fail();
        };
        for &o in orders {
            match (norm_bounds_with(&dv, o, &mv), norm_bounds_with(&dw, o, &mw)) {
                (Ok(rv), Ok(rw)) => {
                    t.observe((rv.upper - rv.value).abs(), tol);
                    t.observe((rw.lower - rw.value).abs(), tol);
                }
                _ => t.fail(),
            }
        }
    })
}

/// For `n = 2` the two bounds coincide.
pub fn binary_collapse(
    orders: &[Order],
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_samples(2, samples, seed, exec, |p, t| {
        let Ok(m) = EntropyMatch::of(p) else {
            return t.fail();
        };
        for &o in orders {
            match norm_bounds_with(p, o, &m) {
                Ok(r) => t.observe((r.upper - r.lower).abs(), tol),
                Err(_) => t.fail(),
            }
        }
    })
}

/// Entropy bounds at fixed norm, with the roles of the families checked
/// against the side of 1 the order lies on.
pub fn entropy_sandwich(
    n: usize,
    orders: &[Order],
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    let (v, w) = (
        ExtremalFamily::v(n).expect("n >= 2"),
        ExtremalFamily::w(n).expect("n >= 2"),
    );
    over_samples(n, samples, seed, exec, |p, t| {
        for &o in orders {
            let Ok(r) = entropy_bounds_at_norm(p, o) else {
                return t.fail();
            };
            t.observe(r.excess(), tol);
            // below 1 the v member is the low-entropy end, above 1 the w member
            let low_is_v = !o.above_one();
            let family_ok = |d: &ProbVec, is_v: bool| {
                let fam = if is_v { &v } else { &w };
                let param = match fam.kind() {
                    Family::V => d.sorted_desc()[d.n() - 1],
                    Family::W => d.sorted_desc()[0],
                };
                fam.distribution(param)
                    .map(|e| e.sorted_desc() == d.sorted_desc())
                    .unwrap_or(false)
            };
            let roles = family_ok(&r.attaining_lower, low_is_v)
                && family_ok(&r.attaining_upper, !low_is_v);
            t.observe(if roles { 0.0 } else { f64::INFINITY }, tol);
        }
    })
}

/// Every point of the grid `{(i, j, N-i-j)/N}` on the 3-simplex lies between
/// the region's boundary curves, interpolated linearly, within `band`.
pub fn region_containment(
    order: Order,
    denominator: usize,
    resolution: usize,
    band: f64,
    exec: Exec,
) -> Tally {
    let Ok(spec) = MeasureSpec::alpha_norm(order) else {
        return Tally { checked: 1, violations: 1, max_excess: f64::INFINITY };
    };
    let Ok((vc, wc)) = boundary_curves(3, &spec, XAxis::ShannonEntropy, resolution) else {
        return Tally { checked: 1, violations: 1, max_excess: f64::INFINITY };
    };
    let d = denominator as f64;
    run_shards(exec, denominator as u64 + 1, |i| {
        let mut t = Tally::default();
        let i = i as usize;
        for j in 0..=denominator - i {
            let k = denominator - i - j;
            let p = ProbVec::new(vec![i as f64 / d, j as f64 / d, k as f64 / d]);
            let Ok(p) = p else {
                t.fail();
                continue;
            };
            let x = shannon_entropy(&p).min(3f64.ln());
            let y = alpha_norm(&p, order);
            match (vc.interpolate(x), wc.interpolate(x)) {
                (Some(a), Some(b)) => {
                    let (lo, hi) = (a.min(b), a.max(b));
                    t.observe((lo - y).max(y - hi), band);
                }
                _ => t.fail(),
            }
        }
        t
    })
}

/// Parameter grid of `points` values spanning `[lo, hi]`.
fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| {
        if i + 1 == points {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (points - 1) as f64
        }
    })
}

/// `H(inverse_entropy(H(p)))` reproduces `H(p)` on a parameter grid.
pub fn inverse_entropy_roundtrip(n: usize, points: usize, tol: f64) -> Tally {
    let mut t = Tally::default();
    for fam in [ExtremalFamily::v(n), ExtremalFamily::w(n)] {
        let fam = fam.expect("n >= 2");
        let (lo, hi) = fam.profile_domain();
        for p in grid(lo, hi, points) {
            let res = fam
                .entropy(p)
                .and_then(|h| Ok((h, fam.entropy(fam.inverse_entropy(h)?)?)));
            match res {
                Ok((h, back)) => t.observe((h - back).abs(), tol),
                Err(_) => t.fail(),
            }
        }
    }
    t
}

/// `‖·‖ ∘ inverse_norm` reproduces the norm on a parameter grid.
pub fn inverse_norm_roundtrip(n: usize, orders: &[Order], points: usize, tol: f64) -> Tally {
    let mut t = Tally::default();
    for fam in [ExtremalFamily::v(n), ExtremalFamily::w(n)] {
        let fam = fam.expect("n >= 2");
        let (lo, hi) = fam.profile_domain();
        for &o in orders {
            for p in grid(lo, hi, points) {
                let res = fam
                    .norm(p, o)
                    .and_then(|x| Ok((x, fam.norm(fam.inverse_norm(x, o)?, o)?)));
                match res {
                    Ok((x, back)) => t.observe((x - back).abs(), tol),
                    Err(_) => t.fail(),
                }
            }
        }
    }
    t
}

/// `H_w(1/m) = ln m`, and inverting `ln m` lands on `1/m`'s entropy.
pub fn w_breakpoints(n: usize, tol: f64) -> Tally {
    let mut t = Tally::default();
    let w = ExtremalFamily::w(n).expect("n >= 2");
    for m in 1..=n {
        let ln_m = (m as f64).ln();
        match w.entropy(1.0 / m as f64) {
            Ok(h) => t.observe((h - ln_m).abs(), tol),
            Err(_) => t.fail(),
        }
        match w.inverse_entropy(ln_m).and_then(|p| w.entropy(p)) {
            Ok(h) => t.observe((h - ln_m).abs(), tol),
            Err(_) => t.fail(),
        }
    }
    t
}

/// Entropy profiles strictly monotone, and the norm moving in the direction
/// fixed by the order along both families.
pub fn profile_monotonicity(n: usize, orders: &[Order], points: usize) -> Tally {
    let mut t = Tally::default();
    for fam in [ExtremalFamily::v(n), ExtremalFamily::w(n)] {
        let fam = fam.expect("n >= 2");
        let (lo, hi) = fam.profile_domain();
        let hs: Vec<f64> = grid(lo, hi, points)
            .map(|p| fam.entropy(p).unwrap_or(f64::NAN))
            .collect();
        // V entropy rises with the parameter, W entropy falls
        let dir = if fam.kind() == Family::V { 1.0 } else { -1.0 };
        for pair in hs.windows(2) {
            t.observe(if dir * (pair[1] - pair[0]) > 0.0 { 0.0 } else { f64::INFINITY }, 0.0);
        }
        for &o in orders {
            // the norm falls with entropy above order 1 and rises below
            let sign = if o.above_one() { -1.0 } else { 1.0 };
            let xs: Vec<f64> = grid(lo, hi, points)
                .map(|p| fam.norm(p, o).unwrap_or(f64::NAN))
                .collect();
            for (hp, xp) in hs.windows(2).zip(xs.windows(2)) {
                let dh = hp[1] - hp[0];
                let dx = xp[1] - xp[0];
                t.observe(-(sign * dh.signum() * dx), 1e-15);
            }
        }
    }
    t
}

/// `v_n(p)↓ = w_n(p)` on `[1/n, 1/(n-1)]`.
pub fn family_overlap(n: usize, points: usize, tol: f64) -> Tally {
    let mut t = Tally::default();
    if n < 3 {
        return t;
    }
    let (lo, hi) = (1.0 / n as f64, 1.0 / (n - 1) as f64);
    for p in grid(lo, hi, points) {
        match (v_dist(n, p), w_dist(n, p)) {
            (Ok(v), Ok(w)) => {
                let d = v
                    .sorted_desc()
                    .iter()
                    .zip(w.sorted_desc())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                t.observe(d, tol);
            }
            _ => t.fail(),
        }
    }
    t
}

/// The α-log ratio gap is never negative, and vanishes at `x = 1` and `x = y`.
pub fn ratio_gap(tuples: usize, seed: u64, tol: f64, exec: Exec) -> Tally {
    over_draws(tuples, seed, 2, exec, |rng, t| {
        let a: f64 = rng.random_range(0.05..8.0);
        let b: f64 = rng.random_range(0.05..8.0);
        let (alpha, beta) = if a < b { (a, b) } else if b < a { (b, a) } else { return };
        let y: f64 = 1.0 + rng.random_range(1e-6..20.0f64);
        let x: f64 = rng.random_range(1.0..=y);
        match alpha_log_ratio_gap(alpha, beta, x, y) {
            Ok(g) => t.observe(-g, tol),
            Err(_) => t.fail(),
        }
        for xe in [1.0, y] {
            match alpha_log_ratio_gap(alpha, beta, xe, y) {
                Ok(g) => t.observe(g.abs(), tol),
                Err(_) => t.fail(),
            }
        }
    })
}

/// Measure bounds are the transformed norm bounds, bit for bit, and they
/// contain the measure.
pub fn measure_transform(
    n: usize,
    specs: &[MeasureSpec],
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_samples(n, samples, seed, exec, |p, t| {
        let Ok(m) = EntropyMatch::of(p) else {
            return t.fail();
        };
        for spec in specs {
            let (Ok(r), Ok(nb)) = (
                measure_bounds_with(p, spec, &m),
                norm_bounds_with(p, spec.norm_order(), &m),
            ) else {
                t.fail();
                continue;
            };
            let (fw, fv) = (spec.transform(nb.lower, n), spec.transform(nb.upper, n));
            let expect = if spec.is_increasing() { (fw, fv) } else { (fv, fw) };
            let exact = r.lower.to_bits() == expect.0.to_bits()
                && r.upper.to_bits() == expect.1.to_bits()
                && r.value.to_bits() == measure_value(p, spec).to_bits();
            t.observe(if exact { 0.0 } else { f64::INFINITY }, 0.0);
            t.observe(r.excess(), tol);
        }
    })
}

/// The five entropies of the table at order `t`.
pub fn table_specs(t: f64) -> Vec<MeasureSpec> {
    let o = Order::from_real(t).expect("valid order");
    MeasureKind::ENTROPIES
        .iter()
        .map(|k| MeasureSpec::new(*k, o).expect("valid measure"))
        .collect()
}

/// Each transform moves in the direction recorded for it.
pub fn transform_direction(pairs: usize, seed: u64, exec: Exec) -> Tally {
    over_draws(pairs, seed, 3, exec, |rng, t| {
        let x1: f64 = rng.random_range(1e-3..3.0);
        let x2: f64 = x1 + rng.random_range(1e-3..3.0f64);
        for tv in [0.5, 2.0] {
            for spec in table_specs(tv) {
                let d = spec.transform(x2, 6) - spec.transform(x1, 6);
                let ok = if spec.is_increasing() { d > 0.0 } else { d < 0.0 };
                t.observe(if ok { 0.0 } else { f64::INFINITY }, 0.0);
            }
        }
    })
}

/// Rényi divergence from uniform between the family members of equal
/// divergence.
pub fn divergence_sandwich(
    n: usize,
    orders: &[Order],
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_samples(n, samples, seed, exec, |p, t| {
        for &o in orders {
            match renyi_divergence_bounds(p, o) {
                Ok(r) => t.observe(r.excess(), tol),
                Err(_) => t.fail(),
            }
        }
    })
}

/// The rows of random circulant channels, shard by shard.
fn over_channels<F>(n: usize, count: usize, seed: u64, exec: Exec, f: F) -> Tally
where
    F: Fn(&Channel, &mut Tally) + Sync + Send,
{
    let seed = seed ^ 0xC4A7_7E1C_0000_0001;
    over_samples(n, count, seed, exec, |row, t| f(&Channel::circulant(row), t))
}

pub const RHO_GRID: [f64; 6] = [-0.9, -0.5, 0.5, 1.0, 2.0, 8.0];

/// `E0` bounds on random circulant channels over the `ρ` grid.
pub fn e0_sandwich(
    n: usize,
    rhos: &[f64],
    channels: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_channels(n, channels, seed, exec, |ch, t| {
        for &rho in rhos {
            match e0_bounds(ch, rho) {
                Ok(r) => t.observe(r.excess(), tol),
                Err(_) => t.fail(),
            }
        }
    })
}

/// Channels built from `v` members attain the lower `E0` bound, those from
/// `w` members the upper.
pub fn e0_attainment(
    n: usize,
    rhos: &[f64],
    channels: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_draws(channels, seed, 4, exec, |rng, t| {
        let pv = rng.random_range(0.0..=1.0 / n as f64);
        let pw = rng.random_range(1.0 / n as f64..=1.0);
        let (Ok(rv), Ok(rw)) = (v_dist(n, pv), w_dist(n, pw)) else {
            return t.fail();
        };
        let (cv, cw) = (Channel::circulant(&rv), Channel::circulant(&rw));
        for &rho in rhos {
            match (e0_bounds(&cv, rho), e0_bounds(&cw, rho)) {
                (Ok(a), Ok(b)) => {
                    t.observe((a.value - a.lower).abs(), tol);
                    t.observe((b.value - b.upper).abs(), tol);
                }
                _ => t.fail(),
            }
        }
    })
}

/// `E0(ρ)/ρ` under a uniform input equals the mutual information of order
/// `1/(1+ρ)`.
pub fn e0_identity(
    n: usize,
    rhos: &[f64],
    channels: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_channels(n, channels, seed, exec, |ch, t| {
        let Ok(u) = ProbVec::uniform(n) else {
            return t.fail();
        };
        let Ok(state) = posterior_state(ch, &u) else {
            return t.fail();
        };
        for &rho in rhos {
            let Ok(order) = Order::from_real(1.0 / (1.0 + rho)) else {
                t.fail();
                continue;
            };
            match gallager_e0(ch, &u, rho) {
                Ok(e0) => {
                    let i = mutual_information_alpha(&state, order);
                    t.observe((e0 / rho - i).abs(), tol);
                }
                Err(_) => t.fail(),
            }
        }
    })
}

/// Under a uniform input a focusing channel has a uniform output, and the
/// conditional entropy equals the entropy of every posterior.
pub fn focusing_posteriors(
    n: usize,
    orders: &[Order],
    channels: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Tally {
    over_channels(n, channels, seed, exec, |ch, t| {
        let Ok(u) = ProbVec::uniform(n) else {
            return t.fail();
        };
        let Ok(state) = posterior_state(ch, &u) else {
            return t.fail();
        };
        let inv = 1.0 / ch.output_size() as f64;
        for py in state.output_marginal.entries() {
            t.observe((py - inv).abs(), tol);
        }
        for &o in orders {
            let h = conditional_entropy(&state, o);
            for post in &state.posterior {
                match post {
                    Some(post) => t.observe((renyi_entropy(post, o) - h).abs(), tol),
                    None => t.fail(),
                }
            }
        }
    })
}

/// Classification does not change when rows or columns are permuted.
pub fn classify_permutation(n: usize, channels: usize, seed: u64, exec: Exec) -> Tally {
    over_draws(channels, seed, 5, exec, |rng, t| {
        let row: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
        let s: f64 = row.iter().sum();
        let Ok(row) = ProbVec::new(row.iter().map(|x| x / s).collect()) else {
            return t.fail();
        };
        let base = Channel::circulant(&row);
        // perturb one row so that not every matrix is in the class
        let mut m = base.matrix().to_vec();
        if rng.random_bool(0.5) {
            m[0].swap(0, 1);
            m[0][0] *= 0.5;
            let r: f64 = m[0].iter().skip(1).sum();
            let scale = (1.0 - m[0][0]) / r;
            m[0][1..].iter_mut().for_each(|x| *x *= scale);
        }
        let Ok(a) = Channel::new(m.clone()) else {
            return t.fail();
        };
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            rows.swap(i, rng.random_range(0..=i));
            cols.swap(i, rng.random_range(0..=i));
        }
        let permuted = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
            .collect();
        let Ok(b) = Channel::new(permuted) else {
            return t.fail();
        };
        let same = classify(&a, 1e-9) == classify(&b, 1e-9);
        t.observe(if same { 0.0 } else { f64::INFINITY }, 0.0);
    })
}

/// Norm range, permutation invariance and entropy range of samples.
pub fn simplex_properties(n: usize, samples: usize, seed: u64, exec: Exec) -> Tally {
    let ords = standard_orders();
    let ln_n = (n as f64).ln();
    over_samples(n, samples, seed, exec, |p, t| {
        for &o in &ords {
            let x = alpha_norm(p, o);
            let e = match o {
                Order::Infinity => 1.0 / n as f64,
                _ => (n as f64).powf(1.0 / o.value() - 1.0),
            };
            let (lo, hi) = (e.min(1.0), e.max(1.0));
            t.observe((lo - x).max(x - hi), 1e-12);
            let q = rearrange_decreasing(p);
            t.observe(if alpha_norm(&q, o) == x { 0.0 } else { f64::INFINITY }, 0.0);
        }
        let h = shannon_entropy(p);
        let same = h == shannon_entropy(&rearrange_decreasing(p));
        t.observe(if same { 0.0 } else { f64::INFINITY }, 0.0);
        t.observe((-h).max(h - ln_n), 1e-12);
    })
}

/// Settings of a full run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 5,
            samples: 100_000,
            seed: 42,
            tolerance: 1e-9,
            exec: Exec::Parallel,
        }
    }
}

/// One named check of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    #[serde(flatten)]
    pub tally: Tally,
}

/// Outcome of a full run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.tally.passed())
    }

    pub fn total_violations(&self) -> u64 {
        self.checks.iter().map(|c| c.tally.violations).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every check at one alphabet size.
///
/// Sample-based checks use `samples` draws, family and channel checks a
/// hundredth of that (at least 100), and grid checks 10⁴ points.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    let SuiteConfig { n, samples, seed, tolerance: tol, exec } = *cfg;
    ExtremalFamily::v(n)?;
    let few = (samples / 100).max(100);
    let ords = standard_orders();
    let finite = orders(&[0.25, 0.5, 2.0, 4.0]);
    let grid_points = 10_000;
    let mut checks = Vec::new();
    let mut push = |name, tally| checks.push(CheckResult { name, tally });

    push("simplex-properties", simplex_properties(n, samples, seed, exec));
    push("profile-monotonicity", profile_monotonicity(n, &finite, grid_points));
    push("inverse-entropy", inverse_entropy_roundtrip(n, grid_points, 1e-10));
    push("inverse-norm", inverse_norm_roundtrip(n, &ords, grid_points, 1e-10));
    push("w-breakpoints", w_breakpoints(n, 1e-12));
    push("family-overlap", family_overlap(n, grid_points, 1e-15));
    push("norm-sandwich", norm_sandwich(n, &ords, samples, seed, tol, exec));
    push("family-tightness", family_tightness(n, &ords, few, seed, tol, exec));
    if n == 2 {
        push("binary-collapse", binary_collapse(&ords, samples, seed, 1e-12, exec));
    }
    push("entropy-sandwich", entropy_sandwich(n, &finite, samples, seed, tol, exec));
    push("ratio-gap", ratio_gap(samples, seed, 1e-12, exec));
    let specs: Vec<MeasureSpec> = table_specs(0.5).into_iter().chain(table_specs(2.0)).collect();
    push("measure-transform", measure_transform(n, &specs, samples, seed, tol, exec));
    push("transform-direction", transform_direction(few, seed, exec));
    let div = orders(&[0.5, 2.0]);
    push("divergence-sandwich", divergence_sandwich(n, &div, samples, seed, tol, exec));
    push("e0-sandwich", e0_sandwich(n, &RHO_GRID, few, seed, tol, exec));
    push("e0-attainment", e0_attainment(n, &RHO_GRID, few, seed, tol, exec));
    push("e0-identity", e0_identity(n, &[-0.5, 0.25, 1.0, 4.0], few, seed, 1e-10, exec));
    let lemma_orders = orders(&[0.5, 1.0, 2.0]);
    push("focusing-posteriors", focusing_posteriors(n, &lemma_orders, few, seed, 1e-12, exec));
    push("classify-permutation", classify_permutation(n, few, seed, exec));

    Ok(VerifyReport { n, samples, seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_merge_is_order_free() {
        let mut a = Tally::default();
        a.observe(0.5, 1.0);
        a.observe(2.0, 1.0);
        let mut b = Tally::default();
        b.observe(3.0, 1.0);
        assert_eq!(a.merge(b), b.merge(a));
        assert_eq!(a.merge(b).violations, 2);
        assert_eq!(a.merge(b).max_excess, 3.0);
    }

    #[test]
    fn nan_counts_as_violation() {
        let mut t = Tally::default();
        t.observe(f64::NAN, 1.0);
        assert_eq!(t.violations, 1);
    }

    #[test]
    fn sequential_matches_parallel() {
        let ords = standard_orders();
        let a = norm_sandwich(4, &ords, 3000, 9, 1e-9, Exec::Sequential);
        let b = norm_sandwich(4, &ords, 3000, 9, 1e-9, Exec::Parallel);
        assert_eq!(a, b);
        assert_eq!(a.checked, 3000 * ords.len() as u64);
        assert!(a.passed());
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig { n: 4, samples: 2000, seed: 3, ..Default::default() };
        let report = run_suite(&cfg).unwrap();
        for c in &report.checks {
            assert!(c.tally.passed(), "{}: {:?}", c.name, c.tally);
            assert!(c.tally.checked > 0, "{} checked nothing", c.name);
        }
    }

    #[test]
    fn binary_suite_includes_collapse() {
        let cfg = SuiteConfig { n: 2, samples: 1000, seed: 3, ..Default::default() };
        let report = run_suite(&cfg).unwrap();
        assert!(report.checks.iter().any(|c| c.name == "binary-collapse"));
        assert!(report.passed(), "{}", report.to_json());
    }

    #[test]
    fn region_grid_is_contained() {
        let t = region_containment(Order::finite(2.0).unwrap(), 60, 4096, 1e-6, Exec::Parallel);
        assert_eq!(t.checked, 61 * 62 / 2);
        assert!(t.passed(), "{t:?}");
    }
}
