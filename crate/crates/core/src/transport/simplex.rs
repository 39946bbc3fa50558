//! Transportation simplex (MODI) for small balanced transport problems.
//!
//! The basis is a spanning tree on row and column nodes. Entering cells are
//! chosen by most negative reduced cost, switching to Bland's rule after a
//! run of degenerate pivots to rule out cycling.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TransportPlan {
    /// Total cost of the optimal plan.
    pub cost: f64,
    /// Basic cells `(row, col, flow)`.
    pub flows: Vec<(usize, usize, f64)>,
    pub pivots: usize,
}

struct Basis {
    rows: usize,
    cols: usize,
    cells: Vec<(usize, usize)>,
    flow: Vec<f64>,
}

impl Basis {
    fn node_col(&self, j: usize) -> usize {
        self.rows + j
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.rows + self.cols];
        for (idx, &(i, j)) in self.cells.iter().enumerate() {
            adj[i].push((self.node_col(j), idx));
            adj[self.node_col(j)].push((i, idx));
        }
        adj
    }

    fn potentials(&self, cost: &[f64], adj: &[Vec<(usize, usize)>]) -> (Vec<f64>, Vec<f64>) {
        let total = self.rows + self.cols;
        let mut pot = vec![f64::NAN; total];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &(other, idx) in &adj[node] {
                if pot[other].is_nan() {
                    let (i, j) = self.cells[idx];
                    // c_ij = u_i + v_j
                    pot[other] = cost[i * self.cols + j] - pot[node];
                    queue.push_back(other);
                }
            }
        }
        let u = pot[..self.rows].to_vec();
        let v = pot[self.rows..].to_vec();
        (u, v)
    }

    /// Basis cell indices on the tree path from row `i` to column `j`.
    fn tree_path(&self, adj: &[Vec<(usize, usize)>], i: usize, j: usize) -> Vec<usize> {
        let total = self.rows + self.cols;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
        let mut seen = vec![false; total];
        seen[i] = true;
        let target = self.node_col(j);
        let mut queue = VecDeque::from([i]);
        while let Some(node) = queue.pop_front() {
            if node == target {
                break;
            }
            for &(other, idx) in &adj[node] {
                if !seen[other] {
                    seen[other] = true;
                    parent[other] = Some((node, idx));
                    queue.push_back(other);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = target;
        while node != i {
            let (prev, idx) = parent[node].expect("basis is a spanning tree");
            path.push(idx);
            node = prev;
        }
        path.reverse();
        path
    }
}

/// Solves `min sum c_ij x_ij` subject to row sums `supply`, column sums
/// `demand`, `x >= 0`. `cost` is row-major `supply.len() x demand.len()`.
/// Totals must agree to 1e-9 relative.
pub fn solve_transport(supply: &[f64], demand: &[f64], cost: &[f64]) -> Result<TransportPlan> {
    let (m, n) = (supply.len(), demand.len());
    if m == 0 || n == 0 || cost.len() != m * n {
        return Err(Error::InvalidInput(
            "transport problem has inconsistent shape".into(),
        ));
    }
    if supply.iter().chain(demand).any(|&x| !(x >= 0.0)) {
        return Err(Error::InvalidInput("negative supply or demand".into()));
    }
    let (sa, sb): (f64, f64) = (supply.iter().sum(), demand.iter().sum());
    if (sa - sb).abs() > 1e-9 * sa.max(sb).max(1.0) {
        return Err(Error::InvalidInput(format!(
            "unbalanced transport: {sa} vs {sb}"
        )));
    }

    // Northwest corner start: a staircase spanning tree.
    let mut a = supply.to_vec();
    let mut b = demand.to_vec();
    let mut basis = Basis {
        rows: m,
        cols: n,
        cells: Vec::with_capacity(m + n - 1),
        flow: Vec::with_capacity(m + n - 1),
    };
    let (mut i, mut j) = (0, 0);
    loop {
        let q = a[i].min(b[j]).max(0.0);
        basis.cells.push((i, j));
        basis.flow.push(q);
        a[i] -= q;
        b[j] -= q;
        if i == m - 1 && j == n - 1 {
            break;
        }
        if j == n - 1 || (i < m - 1 && a[i] <= b[j]) {
            i += 1;
        } else {
            j += 1;
        }
    }

    let scale = cost.iter().fold(0.0f64, |s, c| s.max(c.abs())).max(1.0);
    let tol = 1e-12 * scale;
    let max_pivots = 50 * (m + n) * (m + n) + 1000;
    let mut in_basis = vec![false; m * n];
    for &(i, j) in &basis.cells {
        in_basis[i * n + j] = true;
    }
    let mut degenerate_run = 0usize;
    let mut pivots = 0usize;
    loop {
        let adj = basis.adjacency();
        let (u, v) = basis.potentials(cost, &adj);
        let bland = degenerate_run > m + n;
        let mut entering: Option<(usize, usize)> = None;
        let mut best = -tol;
        'scan: for i in 0..m {
            for j in 0..n {
                if in_basis[i * n + j] {
                    continue;
                }
                let r = cost[i * n + j] - u[i] - v[j];
                if r < best {
                    entering = Some((i, j));
                    if bland {
                        break 'scan;
                    }
                    best = r;
                }
            }
        }
        let Some((ei, ej)) = entering else { break };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::InvalidInput(format!(
                "transport simplex did not converge in {max_pivots} pivots"
            )));
        }

        // Cycle: entering cell gets +, the tree path row ei -> col ej gets -, +, -, ...
        let path = basis.tree_path(&adj, ei, ej);
        let mut leave_pos = None;
        let mut theta = f64::INFINITY;
        for (k, &idx) in path.iter().enumerate() {
            if k % 2 == 0 {
                let f = basis.flow[idx];
                let better = match leave_pos {
                    None => true,
                    Some(p) => f < theta || (bland && f == theta && idx < path[p]),
                };
                if better {
                    theta = f;
                    leave_pos = Some(k);
                }
            }
        }
        let leave_pos = leave_pos.expect("cycle has a decreasing cell");
        for (k, &idx) in path.iter().enumerate() {
            if k % 2 == 0 {
                basis.flow[idx] = (basis.flow[idx] - theta).max(0.0);
            } else {
                basis.flow[idx] += theta;
            }
        }
        let leave_idx = path[leave_pos];
        let (li, lj) = basis.cells[leave_idx];
        in_basis[li * n + lj] = false;
        in_basis[ei * n + ej] = true;
        basis.cells[leave_idx] = (ei, ej);
        basis.flow[leave_idx] = theta;
        if theta > 0.0 {
            degenerate_run = 0;
        } else {
            degenerate_run += 1;
        }
    }

    let total = basis
        .cells
        .iter()
        .zip(&basis.flow)
        .map(|(&(i, j), &f)| f * cost[i * n + j])
        .sum();
    Ok(TransportPlan {
        cost: total,
        flows: basis
            .cells
            .iter()
            .zip(&basis.flow)
            .map(|(&(i, j), &f)| (i, j, f))
            .collect(),
        pivots,
    })
}
