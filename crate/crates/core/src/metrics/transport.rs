//! Exact solver for the balanced transportation problem.
//!
//! Uses the transportation simplex (MODI / u-v method): a north-west corner
//! start gives a spanning-tree basis of `m + n - 1` cells, potentials are
//! read off the tree, and the most negative reduced cost enters until none
//! remains. After a run of degenerate pivots the entering and leaving
//! choices switch to lowest-index (Bland) order so the method cannot cycle.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Tolerance on the total mass of supply and demand.
const MASS_TOLERANCE: f64 = 1e-9;
/// Relative tolerance on reduced costs, scaled by the largest cost.
const REDUCED_COST_TOLERANCE: f64 = 1e-12;
/// Consecutive zero-step pivots before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 8;

/// An optimal flow and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    /// `flow[i][j]` is the mass moved from supply `i` to demand `j`.
    pub flow: Vec<Vec<f64>>,
    pub cost: f64,
}

impl TransportPlan {
    pub fn row_sums(&self) -> Vec<f64> {
        self.flow.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let n = self.flow.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| self.flow.iter().map(|row| row[j]).sum())
            .collect()
    }
}

fn validate(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> Result<()> {
    if supply.is_empty() || demand.is_empty() {
        return Err(Error::invalid(
            "transport needs at least one supply and one demand",
        ));
    }
    for (name, masses) in [("supply", supply), ("demand", demand)] {
        if masses.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::invalid(format!(
                "{name} weights must be finite and non-negative"
            )));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::invalid(format!(
                "{name} weights sum to {total}, expected 1"
            )));
        }
    }
    if cost.len() != supply.len() {
        return Err(Error::DimensionMismatch {
            left: supply.len(),
            right: cost.len(),
        });
    }
    for row in cost {
        if row.len() != demand.len() {
            return Err(Error::DimensionMismatch {
                left: demand.len(),
                right: row.len(),
            });
        }
        if row.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::invalid(
                "transport costs must be finite and non-negative",
            ));
        }
    }
    Ok(())
}

/// Minimum-cost plan moving `supply` onto `demand`, both summing to one.
pub fn solve_transport(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> Result<TransportPlan> {
    validate(supply, demand, cost)?;
    let mut basis = Basis::north_west(supply, demand);
    basis.optimize(cost)?;

    let m = supply.len();
    let n = demand.len();
    let mut flow = vec![vec![0.0; n]; m];
    for &(i, j) in &basis.cells {
        flow[i][j] = basis.flow[i][j];
    }
    let cost = flow
        .iter()
        .zip(cost)
        .flat_map(|(f_row, c_row)| f_row.iter().zip(c_row).map(|(f, c)| f * c))
        .sum();
    Ok(TransportPlan { flow, cost })
}

/// A spanning-tree basis over the bipartite graph of rows `0..m` and
/// columns `m..m+n`.
struct Basis {
    m: usize,
    n: usize,
    cells: Vec<(usize, usize)>,
    is_basic: Vec<Vec<bool>>,
    flow: Vec<Vec<f64>>,
}

impl Basis {
    fn north_west(supply: &[f64], demand: &[f64]) -> Self {
        let (m, n) = (supply.len(), demand.len());
        let mut s = supply.to_vec();
        let mut d = demand.to_vec();
        let mut flow = vec![vec![0.0; n]; m];
        let mut is_basic = vec![vec![false; n]; m];
        let mut cells = Vec::with_capacity(m + n - 1);
        let (mut i, mut j) = (0, 0);
        loop {
            let q = s[i].min(d[j]);
            flow[i][j] = q;
            is_basic[i][j] = true;
            cells.push((i, j));
            let row_done = s[i] <= d[j];
            s[i] -= q;
            d[j] -= q;
            if i == m - 1 && j == n - 1 {
                break;
            }
            // Advance exactly one of row/column so the staircase stays a tree.
            if i == m - 1 {
                j += 1;
            } else if j == n - 1 || row_done {
                i += 1;
            } else {
                j += 1;
            }
        }
        debug_assert_eq!(cells.len(), m + n - 1);
        Basis {
            m,
            n,
            cells,
            is_basic,
            flow,
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m + self.n];
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            adj[i].push(k);
            adj[self.m + j].push(k);
        }
        adj
    }

    /// Row and column potentials with `u[0] = 0`.
    fn potentials(&self, cost: &[Vec<f64>], adj: &[Vec<usize>]) -> (Vec<f64>, Vec<f64>) {
        let m = self.m;
        let mut pot = vec![f64::NAN; m + self.n];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &k in &adj[node] {
                let (i, j) = self.cells[k];
                let (other, value) = if node < m {
                    (m + j, cost[i][j] - pot[node])
                } else {
                    (i, cost[i][j] - pot[node])
                };
                if pot[other].is_nan() {
                    pot[other] = value;
                    queue.push_back(other);
                }
            }
        }
        let v = pot.split_off(m);
        (pot, v)
    }

    /// Cells on the tree path from row `i` to column `j`, starting at the
    /// cell that touches column `j`.
    fn tree_path(&self, adj: &[Vec<usize>], i: usize, j: usize) -> Vec<usize> {
        let m = self.m;
        let target = m + j;
        let mut via: Vec<Option<usize>> = vec![None; m + self.n];
        let mut seen = vec![false; m + self.n];
        seen[i] = true;
        let mut queue = VecDeque::from([i]);
        while let Some(node) = queue.pop_front() {
            if node == target {
                break;
            }
            for &k in &adj[node] {
                let (ci, cj) = self.cells[k];
                let other = if node < m { m + cj } else { ci };
                if !seen[other] {
                    seen[other] = true;
                    via[other] = Some(k);
                    queue.push_back(other);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = target;
        while node != i {
            let k = via[node].expect("basis is a spanning tree");
            path.push(k);
            let (ci, cj) = self.cells[k];
            node = if node < m { m + cj } else { ci };
        }
        path
    }

    fn optimize(&mut self, cost: &[Vec<f64>]) -> Result<()> {
        let max_cost = cost.iter().flatten().fold(0.0f64, |acc, &c| acc.max(c));
        let tolerance = REDUCED_COST_TOLERANCE * max_cost.max(1.0);
        let max_pivots = 50 * self.m * self.n + 1000;
        let mut degenerate = 0usize;

        for _ in 0..max_pivots {
            let adj = self.adjacency();
            let (u, v) = self.potentials(cost, &adj);
            let bland = degenerate >= DEGENERATE_STREAK;

            let mut entering: Option<(usize, usize)> = None;
            let mut best = -tolerance;
            'scan: for i in 0..self.m {
                for j in 0..self.n {
                    if self.is_basic[i][j] {
                        continue;
                    }
                    let reduced = cost[i][j] - u[i] - v[j];
                    if reduced < best {
                        entering = Some((i, j));
                        if bland {
                            break 'scan;
                        }
                        best = reduced;
                    }
                }
            }
            let Some((ei, ej)) = entering else {
                return Ok(());
            };

            // Cells on the path alternate between losing and gaining mass,
            // starting with a loss at the cell sharing column `ej`.
            let path = self.tree_path(&adj, ei, ej);
            let mut leave_pos = 0;
            let mut theta = f64::INFINITY;
            for (pos, &k) in path.iter().enumerate().step_by(2) {
                let (i, j) = self.cells[k];
                let f = self.flow[i][j];
                let better = f < theta
                    || (bland && f == theta && self.cells[k] < self.cells[path[leave_pos]]);
                if better {
                    theta = f;
                    leave_pos = pos;
                }
            }

            for (pos, &k) in path.iter().enumerate() {
                let (i, j) = self.cells[k];
                if pos % 2 == 0 {
                    self.flow[i][j] -= theta;
                } else {
                    self.flow[i][j] += theta;
                }
            }
            let leaving = path[leave_pos];
            let (li, lj) = self.cells[leaving];
            self.flow[li][lj] = 0.0;
            self.is_basic[li][lj] = false;
            self.flow[ei][ej] = theta;
            self.is_basic[ei][ej] = true;
            self.cells[leaving] = (ei, ej);

            if theta == 0.0 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
        }
        Err(Error::SolverStalled(max_pivots))
    }
}
