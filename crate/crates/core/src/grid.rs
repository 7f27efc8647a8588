//! Sampling axes and row-parallel surface evaluation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evenly spaced axis `min..=max` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + span * i as f64 / last
                }
            })
            .collect()
    }
}

/// Checks that an axis is nonempty, finite and sorted ascending.
pub fn check_axis(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain(format!("{name} axis is empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain(format!("{name} axis has non-finite entries")));
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain(format!(
            "{name} axis is not sorted ascending"
        )));
    }
    Ok(())
}

/// Evaluates `cell(row_value, col_value)` over the full grid.
///
/// Cells are independent, so the result does not depend on `workers`;
/// `workers <= 1` evaluates serially on the calling thread.
pub fn evaluate_grid<T, F>(
    rows: &[f64],
    cols: &[f64],
    workers: usize,
    cell: F,
) -> Result<Vec<Vec<T>>>
where
    T: Send,
    F: Fn(f64, f64) -> Result<T> + Sync,
{
    let row = |(i, &r): (usize, &f64)| -> Result<Vec<T>> {
        cols.iter()
            .enumerate()
            .map(|(j, &c)| {
                cell(r, c).map_err(|e| Error::Cell {
                    row: i,
                    col: j,
                    source: Box::new(e),
                })
            })
            .collect()
    };

    if workers <= 1 {
        return rows.iter().enumerate().map(row).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| rows.par_iter().enumerate().map(row).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints_exact() {
        let v = Axis::new(0.0, 10.0, 201).values();
        assert_eq!(v.len(), 201);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[20], 1.0);
        assert_eq!(v[100], 5.0);
        assert_eq!(v[200], 10.0);
    }

    #[test]
    fn axis_checks() {
        assert!(check_axis("x", &[]).is_err());
        assert!(check_axis("x", &[1.0, 0.0]).is_err());
        assert!(check_axis("x", &[0.0, f64::NAN]).is_err());
        assert!(check_axis("x", &[0.0, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn parallel_matches_serial() {
        let rows = Axis::new(0.0, 1.0, 37).values();
        let cols = Axis::new(-2.0, 2.0, 11).values();
        let f = |r: f64, c: f64| Ok((r * c).sin() + r.exp() * c);
        let serial = evaluate_grid(&rows, &cols, 1, f).unwrap();
        let par = evaluate_grid(&rows, &cols, 4, f).unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn failing_cell_is_located() {
        let err = evaluate_grid(&[0.0, 1.0], &[0.0, 1.0, 2.0], 2, |r, c| {
            if r == 1.0 && c == 2.0 {
                Err(Error::domain("boom"))
            } else {
                Ok(0.0)
            }
        })
        .unwrap_err();
        assert!(matches!(err, Error::Cell { row: 1, col: 2, .. }), "{err}");
    }
}
