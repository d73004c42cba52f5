use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::LayerSpec;
use crate::multilayer::Aggregation;

pub const PREDICTION_POLICY: &str =
    "error metrics use predictions clamped to [0, 1]; correlations use raw scores";

/// Row labels of the comparison table, in order.
pub const TABLE_ROWS: [&str; 8] = [
    "Pearson Corr",
    "Spearman Corr",
    "MSE",
    "RMSE",
    "R2",
    "EV",
    "ME",
    "MAE",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub label: String,
    pub layers: Vec<LayerSpec>,
    pub aggregation: Aggregation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub config: ConfigEcho,
    pub n_pairs: usize,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
    pub medae: f64,
    pub r2: Option<f64>,
    pub ev: Option<f64>,
    pub me: f64,
    /// True when at least one prediction fell outside `[0, 1]`.
    pub clamped: bool,
    pub prediction_policy: String,
    /// Mean Jensen-Shannon divergence between layers; absent for one layer.
    pub inter_layer_weight: Option<f64>,
    /// True when the inter-layer weight hit its lower bound.
    pub inter_layer_weight_clamped: bool,
}

impl EvaluationReport {
    fn table_value(&self, row: &str) -> Option<f64> {
        match row {
            "Pearson Corr" => self.pearson,
            "Spearman Corr" => self.spearman,
            "MSE" => Some(self.mse),
            "RMSE" => Some(self.rmse),
            "R2" => self.r2,
            "EV" => self.ev,
            "ME" => Some(self.me),
            "MAE" => Some(self.mae),
            _ => None,
        }
    }
}

/// Renders reports side by side: one column per configuration, one row per
/// entry of [`TABLE_ROWS`].
pub fn render_table(reports: &[EvaluationReport]) -> String {
    let mut header = vec!["Metric".to_string()];
    header.extend(reports.iter().map(|r| r.config.label.clone()));
    let mut rows = vec![header];
    for label in TABLE_ROWS {
        let mut row = vec![label.to_string()];
        for r in reports {
            row.push(match r.table_value(label) {
                Some(v) => format!("{v:.4}"),
                None => "n/a".to_string(),
            });
        }
        rows.push(row);
    }

    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                let _ = write!(out, "{cell:<w$}", w = widths[c]);
            } else {
                let _ = write!(out, "  {cell:>w$}", w = widths[c]);
            }
        }
        out.push('\n');
    }
    out
}
