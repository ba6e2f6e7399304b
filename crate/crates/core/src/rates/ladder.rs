//! Rate equations on a truncated harmonic ladder.
//!
//! `dp_n/dt = γ₋ n p_{n−1} + γ₊ (n+1) p_{n+1} − (γ₋ (n+1) + γ₊ n) p_n`,
//! with the upward channel out of the top level removed so probability
//! stays inside the truncation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest population the top level may hold.
pub const TRUNCATION_LIMIT: f64 = 1e-6;
/// Negative populations above this magnitude are reported as errors.
pub const POSITIVITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LadderState {
    populations: Vec<f64>,
    coherence_01: Option<Complex64>,
}

impl LadderState {
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        if populations.len() < 2 {
            return Err(Error::domain("the ladder needs at least two levels"));
        }
        if let Some((n, p)) = populations
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::domain(format!("population p_{n} = {p} is not a probability")));
        }
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("populations sum to {total}, not 1")));
        }
        Ok(Self {
            populations,
            coherence_01: None,
        })
    }

    /// All population in the ground state of an `levels`-level ladder.
    pub fn ground(levels: usize) -> Result<Self> {
        let mut p = vec![0.0; levels.max(1)];
        p[0] = 1.0;
        Self::new(p)
    }

    pub fn with_coherence(mut self, rho_01: Complex64) -> Self {
        self.coherence_01 = Some(rho_01);
        self
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn coherence_01(&self) -> Option<Complex64> {
        self.coherence_01
    }

    pub fn levels(&self) -> usize {
        self.populations.len()
    }

    pub fn total(&self) -> f64 {
        self.populations.iter().sum()
    }

    /// `Σ n p_n`.
    pub fn mean_occupation(&self) -> f64 {
        self.populations.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }
}

/// Step bound `0.01 / max(γ₋N, γ₊N)`.
pub fn max_step(levels: usize, gamma_plus: f64, gamma_minus: f64) -> f64 {
    let fastest = gamma_plus.max(gamma_minus) * levels as f64;
    if fastest > 0.0 {
        0.01 / fastest
    } else {
        f64::INFINITY
    }
}

fn derivative(p: &[f64], gp: f64, gm: f64, out: &mut [f64]) {
    let top = p.len() - 1;
    for n in 0..=top {
        let nf = n as f64;
        let mut d = 0.0;
        if n > 0 {
            d += gm * nf * p[n - 1];
        }
        if n < top {
            d += gp * (nf + 1.0) * p[n + 1];
            d -= gm * (nf + 1.0) * p[n];
        }
        d -= gp * nf * p[n];
        out[n] = d;
    }
}

fn rk4_step(p: &mut [f64], gp: f64, gm: f64, h: f64, scratch: &mut [Vec<f64>; 5]) {
    let [k1, k2, k3, k4, tmp] = scratch;
    derivative(p, gp, gm, k1);
    for (t, (x, k)) in tmp.iter_mut().zip(p.iter().zip(k1.iter())) {
        *t = x + 0.5 * h * k;
    }
    derivative(tmp, gp, gm, k2);
    for (t, (x, k)) in tmp.iter_mut().zip(p.iter().zip(k2.iter())) {
        *t = x + 0.5 * h * k;
    }
    derivative(tmp, gp, gm, k3);
    for (t, (x, k)) in tmp.iter_mut().zip(p.iter().zip(k3.iter())) {
        *t = x + h * k;
    }
    derivative(tmp, gp, gm, k4);
    for n in 0..p.len() {
        p[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
    }
}

/// Integrates the ladder rate equations for `duration` seconds with fixed
/// RK4 steps no longer than `dt` nor [`max_step`].
///
/// `ρ₀₁` decays at `(γ₊ + γ₋)/2` when tracked. Fails when the top level
/// reaches [`TRUNCATION_LIMIT`] or a population drops below
/// `−POSITIVITY_TOLERANCE`; smaller negative excursions are clamped to zero.
pub fn evolve_populations(
    state: &LadderState,
    gamma_plus: f64,
    gamma_minus: f64,
    duration: f64,
    dt: f64,
) -> Result<LadderState> {
    let mut problems = Vec::new();
    for (name, v) in [
        ("gamma_plus", gamma_plus),
        ("gamma_minus", gamma_minus),
        ("duration", duration),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            problems.push(format!("{name} must be finite and non-negative, got {v}"));
        }
    }
    if !(dt.is_finite() && dt > 0.0) {
        problems.push(format!("dt must be positive, got {dt}"));
    }
    if !problems.is_empty() {
        return Err(Error::Domain(problems.join("; ")));
    }

    let levels = state.levels();
    let h_max = dt.min(max_step(levels, gamma_plus, gamma_minus));
    let steps = (duration / h_max).ceil() as u64;
    let h = if steps > 0 { duration / steps as f64 } else { 0.0 };

    let mut p = state.populations.clone();
    let mut scratch: [Vec<f64>; 5] = std::array::from_fn(|_| vec![0.0; levels]);
    for _ in 0..steps {
        rk4_step(&mut p, gamma_plus, gamma_minus, h, &mut scratch);
        for (n, x) in p.iter_mut().enumerate() {
            if *x < 0.0 {
                if *x < -POSITIVITY_TOLERANCE {
                    return Err(Error::NegativePopulation {
                        level: n,
                        population: *x,
                    });
                }
                *x = 0.0;
            }
        }
        if p[levels - 1] >= TRUNCATION_LIMIT {
            return Err(Error::TruncationOverflow {
                level: levels - 1,
                population: p[levels - 1],
            });
        }
    }

    let decay = (-0.5 * (gamma_plus + gamma_minus) * duration).exp();
    Ok(LadderState {
        populations: p,
        coherence_01: state.coherence_01.map(|c| c * decay),
    })
}
