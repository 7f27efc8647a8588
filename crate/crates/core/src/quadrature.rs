//! Fourier quadrature on a symmetric, uniformly sampled window.
//!
//! The response kernels have a derivative jump at τ = 0, so the grid always
//! places a node there and integrates each half with composite Simpson
//! weights. Plain trapezoid weights leave an O(dt²) error from the kink that
//! is visible at the 1e-6 level for the default settings.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform grid τ_k = (k - n/2)·dt, k = 0..=n, covering [-window/2, window/2].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGrid {
    window: f64,
    intervals: usize,
}

impl SymmetricGrid {
    /// `intervals` must be a positive multiple of 4 so that each half of the
    /// window holds an even number of Simpson panels.
    pub fn new(window: f64, intervals: usize) -> Result<Self> {
        if !(window.is_finite() && window > 0.0) {
            return Err(Error::domain(format!(
                "window must be positive, got {window}"
            )));
        }
        if intervals == 0 || !intervals.is_multiple_of(4) {
            return Err(Error::domain(format!(
                "sample interval count must be a positive multiple of 4, got {intervals}"
            )));
        }
        Ok(Self { window, intervals })
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn step(&self) -> f64 {
        self.window / self.intervals as f64
    }

    /// Highest angular frequency the sampling resolves.
    pub fn nyquist(&self) -> f64 {
        PI / self.step()
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, k: usize) -> f64 {
        let half = (self.intervals / 2) as f64;
        (k as f64 - half) * self.step()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.node(k))
    }

    /// Composite Simpson weight of node `k`, including the step factor.
    pub fn weight(&self, k: usize) -> f64 {
        let n = self.intervals;
        let mid = n / 2;
        let h3 = self.step() / 3.0;
        if k == 0 || k == n {
            h3
        } else if k == mid {
            // Panel boundary shared by the two halves.
            2.0 * h3
        } else {
            let local = if k < mid { k } else { k - mid };
            if local % 2 == 1 {
                4.0 * h3
            } else {
                2.0 * h3
            }
        }
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes().map(f).collect()
    }

    /// Returns (Re, Im) of Σ w_k f(τ_k) e^{iωτ_k}.
    pub fn fourier(&self, samples: &[f64], omega: f64) -> Result<(f64, f64)> {
        if samples.len() != self.len() {
            return Err(Error::domain(format!(
                "expected {} samples, got {}",
                self.len(),
                samples.len()
            )));
        }
        if !omega.is_finite() || omega.abs() > self.nyquist() {
            return Err(Error::domain(format!(
                "frequency {omega} exceeds the sampling limit {}",
                self.nyquist()
            )));
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &f) in samples.iter().enumerate() {
            let w = self.weight(k) * f;
            let (s, c) = (omega * self.node(k)).sin_cos();
            re += w * c;
            im += w * s;
        }
        Ok((re, im))
    }

    pub fn integrate(&self, samples: &[f64]) -> Result<f64> {
        self.fourier(samples, 0.0).map(|(re, _)| re)
    }
}
