//! Monte Carlo evaluation of the mollified degree integral over a finite box.
//!
//! Samples come from a mixture proposal: a defensive uniform component over the whole box
//! plus uniform boxes around the clusters where the integrand was supported at the previous
//! (larger) epsilon. The estimator weights every sample by the full mixture density, so it
//! stays unbiased whatever the boxes are. Independent randomized quasi-Monte Carlo streams
//! give the standard error.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mollifier::{split_norms, MollifierSpec};
use crate::error::{Error, Result};
use crate::polysys::{PolySystem, RealSystem};
use crate::qmc::{mix_seed, RSequence};
use crate::rootfind::{root_bound, NewtonConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeIntegralConfig {
    pub epsilon0: f64,
    pub halvings: u32,
    /// Samples per epsilon; `None` picks 1e6 for d = 1 and 4e6 for d >= 2.
    pub samples: Option<usize>,
    /// Root bound `R`; the integration box is `[-2R, 2R]^{2d}`. `None` computes one.
    pub root_bound: Option<f64>,
    pub streams: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub stderr_threshold: f64,
    pub defensive_fraction: f64,
    /// Minimum fraction of uniform samples inside the support before descending in epsilon.
    pub pilot_hit_fraction: f64,
}

impl Default for DegreeIntegralConfig {
    fn default() -> Self {
        Self {
            epsilon0: 0.5,
            halvings: 6,
            samples: None,
            root_bound: None,
            streams: 16,
            seed: 0,
            max_dim: 2,
            stderr_threshold: 0.15,
            defensive_fraction: 0.1,
            pilot_hit_fraction: 0.02,
        }
    }
}

impl DegreeIntegralConfig {
    pub fn schedule(&self) -> Vec<f64> {
        (0..=self.halvings).map(|k| self.epsilon0 / 2f64.powi(k as i32)).collect()
    }

    fn sample_count(&self, d: usize) -> usize {
        self.samples.unwrap_or(if d == 1 { 1_000_000 } else { 4_000_000 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelEstimate {
    pub epsilon: f64,
    pub estimate: f64,
    pub std_error: f64,
    /// Fraction of samples that landed in the integrand's support.
    pub hit_fraction: f64,
    /// Number of cluster boxes in the proposal.
    pub components: usize,
    /// Coarse level used only to locate the support.
    pub pilot: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Nearest integer, absent when inconclusive.
    pub rounded: Option<i64>,
    pub inconclusive: bool,
    pub box_half_width: f64,
    pub root_bound_heuristic: bool,
    /// Smallest integrand value seen in the support.
    pub min_integrand: f64,
    pub negative_samples: u64,
    pub levels: Vec<LevelEstimate>,
}

#[derive(Debug, Clone)]
struct Component {
    lo: Vec<f64>,
    hi: Vec<f64>,
    density: f64,
}

impl Component {
    fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        let vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
        Self { lo, hi, density: 1.0 / vol }
    }

    fn contains(&self, w: &[f64]) -> bool {
        w.iter().zip(&self.lo).zip(&self.hi).all(|((x, a), b)| x >= a && x <= b)
    }
}

struct StreamResult {
    sum: f64,
    hits: u64,
    min_integrand: f64,
    negatives: u64,
    /// Support points of the next level with their inverse proposal density.
    kept: Vec<(Vec<f64>, f64)>,
}

struct Level<'a> {
    rs: &'a RealSystem,
    spec: MollifierSpec,
    next_eps: f64,
    comps: &'a [Component],
    counts: Vec<usize>,
    per_stream: usize,
    keep_cap: usize,
}

impl Level<'_> {
    fn run_stream(&self, seed: u64) -> StreamResult {
        let n = 2 * self.spec.d;
        let seq = RSequence::seeded(n, seed);
        let mut ws = self.rs.workspace();
        let mut u = vec![0.0; n];
        let mut w = vec![0.0; n];
        let e2 = self.spec.epsilon * self.spec.epsilon;
        let next2 = self.next_eps * self.next_eps;
        let weights: Vec<f64> = self.counts.iter().map(|&c| c as f64 / self.per_stream as f64).collect();
        let mut out = StreamResult {
            sum: 0.0,
            hits: 0,
            min_integrand: f64::INFINITY,
            negatives: 0,
            kept: Vec::new(),
        };
        let mut stride = 1u64;
        let mut seen = 0u64;
        let mut idx = 0u64;
        for (k, &count) in self.counts.iter().enumerate() {
            let c = &self.comps[k];
            for _ in 0..count {
                seq.point(idx, &mut u);
                idx += 1;
                for j in 0..n {
                    w[j] = c.lo[j] + u[j] * (c.hi[j] - c.lo[j]);
                }
                self.rs.eval_into(&w, &mut ws);
                let (re2, im2) = split_norms(&ws.values);
                if !(re2 < e2 && im2 < e2) {
                    continue;
                }
                let jd = self.rs.jac_det_from(&mut ws);
                let f = self.spec.eta * (-(re2 + im2) / (2.0 * e2)).exp() * jd;
                let q: f64 = self
                    .comps
                    .iter()
                    .zip(&weights)
                    .filter(|(c, _)| c.contains(&w))
                    .map(|(c, wt)| wt * c.density)
                    .sum();
                out.sum += f / q;
                out.hits += 1;
                out.min_integrand = out.min_integrand.min(f);
                if f < 0.0 {
                    out.negatives += 1;
                }
                if re2 < next2 && im2 < next2 {
                    if seen % stride == 0 {
                        out.kept.push((w.clone(), 1.0 / q));
                        if out.kept.len() > self.keep_cap {
                            out.kept = out.kept.into_iter().step_by(2).collect();
                            stride *= 2;
                        }
                    }
                    seen += 1;
                }
            }
        }
        out.sum /= self.per_stream as f64;
        out
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Points spread roughly uniformly over the support: systematic resampling of `kept` by
/// inverse proposal density, without repeats.
fn uniformize(kept: &[(Vec<f64>, f64)], target: usize) -> Vec<usize> {
    let total: f64 = kept.iter().map(|k| k.1).sum();
    if !(total > 0.0) {
        return Vec::new();
    }
    let step = total / target as f64;
    let mut next = 0.5 * step;
    let mut acc = 0.0;
    let mut out = Vec::new();
    for (i, k) in kept.iter().enumerate() {
        acc += k.1;
        if acc >= next {
            out.push(i);
            while next <= acc {
                next += step;
            }
        }
    }
    out
}

/// Single-linkage clusters of the (uniformized) support points at 4x the median
/// nearest-neighbour distance, returned as padded, expanded bounding boxes clipped to
/// `[-h, h]^n`; every kept point widens the box of its nearest representative.
fn cluster_boxes(kept: &[(Vec<f64>, f64)], h: f64) -> Vec<Component> {
    let reps = uniformize(kept, 2000);
    if reps.is_empty() {
        return Vec::new();
    }
    let pts: Vec<&Vec<f64>> = reps.iter().map(|&i| &kept[i].0).collect();
    let m = pts.len();
    let n = pts[0].len();
    let mut nn: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .filter(|&j| j != i)
                .map(|j| dist2(pts[i], pts[j]))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .collect();
    nn.sort_by(f64::total_cmp);
    let median = if m > 1 { nn[m / 2] } else { 0.0 };
    let mut thresh = 4.0 * median;
    if !(thresh > 0.0) {
        thresh = 1e-3 * h;
    }
    let t2 = thresh * thresh;
    let mut parent: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if dist2(pts[i], pts[j]) <= t2 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut boxes: std::collections::BTreeMap<usize, (Vec<f64>, Vec<f64>)> = Default::default();
    let roots: Vec<usize> = (0..m).map(|i| find(&mut parent, i)).collect();
    let nearest: Vec<usize> = kept
        .par_iter()
        .map(|(w, _)| {
            (0..m)
                .min_by(|&a, &b| dist2(w, pts[a]).total_cmp(&dist2(w, pts[b])))
                .expect("nonempty")
        })
        .collect();
    for ((w, _), &r) in kept.iter().zip(&nearest) {
        let e = boxes.entry(roots[r]).or_insert_with(|| (w.clone(), w.clone()));
        for j in 0..n {
            e.0[j] = e.0[j].min(w[j]);
            e.1[j] = e.1[j].max(w[j]);
        }
    }
    let mut out: Vec<(Vec<f64>, Vec<f64>)> = boxes
        .into_values()
        .map(|(lo, hi)| {
            let mut a = vec![0.0; n];
            let mut b = vec![0.0; n];
            for j in 0..n {
                let c = 0.5 * (lo[j] + hi[j]);
                let r = 0.75 * (hi[j] - lo[j]) + thresh;
                a[j] = (c - r).max(-h);
                b[j] = (c + r).min(h);
            }
            (a, b)
        })
        .collect();
    // Fragments of one connected support overlap once padded; merge them so the boxes
    // cover the support instead of tiling part of it.
    'merge: loop {
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                let overlap = (0..n).all(|k| out[i].0[k] <= out[j].1[k] && out[j].0[k] <= out[i].1[k]);
                if overlap {
                    let (lo, hi) = out.swap_remove(j);
                    for k in 0..n {
                        out[i].0[k] = out[i].0[k].min(lo[k]);
                        out[i].1[k] = out[i].1[k].max(hi[k]);
                    }
                    continue 'merge;
                }
            }
        }
        break;
    }
    out.into_iter().map(|(a, b)| Component::new(a, b)).collect()
}

/// Estimates the degree integral at each epsilon of the schedule and reports the last one.
pub fn degree_via_integral(s: &PolySystem, cfg: &DegreeIntegralConfig) -> Result<IntegralEstimate> {
    let d = s.dim();
    if d > cfg.max_dim {
        return Err(Error::SizeLimit {
            size: d,
            limit: cfg.max_dim,
        });
    }
    if !(cfg.epsilon0 > 0.0) || cfg.streams < 2 {
        return Err(Error::InvalidInput("integral needs epsilon0 > 0 and at least two streams".into()));
    }
    let (rb, heuristic) = match cfg.root_bound {
        Some(r) => (r, false),
        None => {
            let b = root_bound(s, &NewtonConfig::with_seed(cfg.seed));
            (b.radius, b.heuristic)
        }
    };
    let h = 2.0 * rb.max(1e-3);
    let n = 2 * d;
    let rs = s.realify();
    let total = cfg.sample_count(d);
    let per_stream = total.div_ceil(cfg.streams);
    let keep_cap = (4000 / cfg.streams).max(64);
    let domain = Component::new(vec![-h; n], vec![h; n]);

    let mut levels = Vec::new();
    let mut comps = vec![domain.clone()];
    let mut min_integrand = f64::INFINITY;
    let mut negatives = 0u64;

    let schedule = cfg.schedule();
    let mut eps = schedule[0];
    let mut pilot = true;
    let mut level_idx = 0u64;
    let mut k_sched = 0usize;
    let mut pilot_rounds = 0;
    let (estimate, std_error) = loop {
        let next_eps = eps / 2.0;
        let counts = allocate(per_stream, comps.len(), cfg.defensive_fraction);
        let lvl = Level {
            rs: &rs,
            spec: MollifierSpec::new(d, eps),
            next_eps,
            comps: &comps,
            counts,
            per_stream,
            keep_cap,
        };
        let results: Vec<StreamResult> = (0..cfg.streams)
            .into_par_iter()
            .map(|k| lvl.run_stream(mix_seed(mix_seed(cfg.seed, level_idx), k as u64)))
            .collect();
        level_idx += 1;
        let sums: Vec<f64> = results.iter().map(|r| r.sum).collect();
        let mean = sums.iter().sum::<f64>() / sums.len() as f64;
        let var = sums.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (sums.len() - 1) as f64;
        let se = (var / sums.len() as f64).sqrt();
        let hits: u64 = results.iter().map(|r| r.hits).sum();
        let hit_fraction = hits as f64 / (per_stream * cfg.streams) as f64;

        if pilot && comps.len() == 1 && hit_fraction < cfg.pilot_hit_fraction && pilot_rounds < 40 {
            // Support too thin for uniform sampling: climb until it is visible.
            pilot_rounds += 1;
            eps *= 2.0;
            continue;
        }
        let is_pilot = eps > schedule[0] * (1.0 + 1e-12);
        for r in &results {
            min_integrand = min_integrand.min(r.min_integrand);
            negatives += r.negatives;
        }
        levels.push(LevelEstimate {
            epsilon: eps,
            estimate: mean,
            std_error: se,
            hit_fraction,
            components: comps.len() - 1,
            pilot: is_pilot,
        });
        pilot = false;
        if !is_pilot {
            k_sched += 1;
            if k_sched == schedule.len() {
                break (mean, se);
            }
        }
        let kept: Vec<(Vec<f64>, f64)> = results.into_iter().flat_map(|r| r.kept).collect();
        comps = std::iter::once(domain.clone()).chain(cluster_boxes(&kept, h)).collect();
        eps = next_eps;
    };
    let frac = estimate - estimate.floor();
    let inconclusive = !estimate.is_finite() || !(std_error <= cfg.stderr_threshold) || frac == 0.5;
    Ok(IntegralEstimate {
        estimate,
        std_error,
        rounded: (!inconclusive).then(|| estimate.round() as i64),
        inconclusive,
        box_half_width: h,
        root_bound_heuristic: heuristic,
        min_integrand: if min_integrand.is_finite() { min_integrand } else { 0.0 },
        negative_samples: negatives,
        levels,
    })
}

/// Per-component sample counts: the defensive share to the whole box, the rest split evenly.
fn allocate(per_stream: usize, ncomp: usize, alpha: f64) -> Vec<usize> {
    if ncomp == 1 {
        return vec![per_stream];
    }
    let uniform = ((alpha * per_stream as f64).round() as usize).clamp(1, per_stream);
    let rest = per_stream - uniform;
    let k = ncomp - 1;
    let mut counts = vec![uniform];
    counts.extend((0..k).map(|i| rest / k + usize::from(i < rest % k)));
    counts
}
