//! Regression errors and correlation coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionMetrics {
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
    pub medae: f64,
    /// `None` when the truth has zero variance.
    pub r2: Option<f64>,
    /// `None` when the truth has zero variance.
    pub ev: Option<f64>,
    pub me: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlations {
    /// `None` when either series has zero variance.
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
}

fn check_lengths(predicted: &[f64], truth: &[f64], min: usize) -> Result<()> {
    if predicted.len() != truth.len() {
        return Err(Error::invalid(format!(
            "{} predictions for {} targets",
            predicted.len(),
            truth.len()
        )));
    }
    if predicted.len() < min {
        return Err(Error::invalid(format!(
            "need at least {min} values, got {}",
            predicted.len()
        )));
    }
    Ok(())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub fn regression_metrics(predicted: &[f64], truth: &[f64]) -> Result<RegressionMetrics> {
    check_lengths(predicted, truth, 1)?;
    let residuals: Vec<f64> = truth.iter().zip(predicted).map(|(t, p)| t - p).collect();
    let n = residuals.len() as f64;
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let mse = ss_res / n;
    let mut abs: Vec<f64> = residuals.iter().map(|r| r.abs()).collect();
    let mae = abs.iter().sum::<f64>() / n;
    abs.sort_by(f64::total_cmp);
    let medae = median(&abs);
    let me = abs.last().copied().unwrap_or(0.0);

    let var_truth = variance(truth);
    let (r2, ev) = if var_truth > 0.0 {
        let ss_tot = var_truth * n;
        (
            Some(1.0 - ss_res / ss_tot),
            Some(1.0 - variance(&residuals) / var_truth),
        )
    } else {
        (None, None)
    };
    Ok(RegressionMetrics {
        mse,
        rmse: mse.sqrt(),
        mae,
        medae,
        r2,
        ev,
        me,
    })
}

/// Pearson correlation, or `None` if either series is constant or holds a
/// non-finite value.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let (mx, my) = (mean(x), mean(y));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    if sxx == 0.0 || syy == 0.0 || !r.is_finite() {
        return None;
    }
    Some(r.clamp(-1.0, 1.0))
}

/// 1-based ranks with ties sharing the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end hold ranks start+1..=end.
        let rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        start = end;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return None;
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

pub fn correlations(predicted: &[f64], truth: &[f64]) -> Result<Correlations> {
    check_lengths(predicted, truth, 2)?;
    Ok(Correlations {
        pearson: pearson(predicted, truth),
        spearman: spearman(predicted, truth),
    })
}
