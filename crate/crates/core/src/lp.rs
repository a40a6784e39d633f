//! Exact linear programming over the rationals.
//!
//! Dense two-phase primal simplex with Bland's rule. Problems here are tiny
//! (tens of variables), so clarity wins over sparsity.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// `minimize objective . x` subject to `rows[i].0 . x = rows[i].1` and
/// `x >= 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub objective: Vec<Q>,
    pub rows: Vec<(Vec<Q>, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![Q::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `sum coeffs[j] * x_j = rhs` from sparse `(j, coeff)` pairs.
    pub fn add_eq(&mut self, coeffs: impl IntoIterator<Item = (usize, Q)>, rhs: Q) {
        let mut row = vec![Q::zero(); self.num_vars()];
        for (j, c) in coeffs {
            row[j] += c;
        }
        self.rows.push((row, rhs));
    }

    pub fn minimize(&self) -> Result<LpSolution> {
        Tableau::build(self).solve(&self.objective)
    }

    /// Phase-one feasibility only.
    pub fn is_feasible(&self) -> bool {
        let mut t = Tableau::build(self);
        t.phase_one().is_ok()
    }
}

struct Tableau {
    /// m rows of `n + m` coefficients followed by the right-hand side.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.rows.len();
        let mut rows = Vec::with_capacity(m);
        for (i, (a, b)) in lp.rows.iter().enumerate() {
            assert_eq!(a.len(), n, "row {i} has wrong width");
            let flip = b.is_negative();
            let mut row: Vec<Q> = a.iter().map(|c| if flip { -c } else { c.clone() }).collect();
            row.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
            row.push(if flip { -b } else { b.clone() });
            rows.push(row);
        }
        Self {
            rows,
            basis: (n..n + m).collect(),
            n,
            m,
        }
    }

    fn width(&self) -> usize {
        self.n + self.m
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [Q]) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !cost[c].is_zero() {
            let f = cost[c].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the reduced-cost row `cost` (length
    /// width + 1, last entry is minus the objective value), allowing only
    /// columns `< allowed` to enter.
    fn iterate(&mut self, cost: &mut [Q], allowed: usize) -> Result<()> {
        loop {
            let Some(c) = (0..allowed).find(|&j| cost[j].is_negative()) else {
                return Ok(());
            };
            let rhs = self.width();
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, c, cost);
        }
    }

    fn phase_one(&mut self) -> Result<()> {
        let w = self.width();
        let mut cost = vec![Q::zero(); w + 1];
        for row in &self.rows {
            for j in 0..self.n {
                cost[j] -= &row[j];
            }
            cost[w] -= &row[w];
        }
        self.iterate(&mut cost, self.n)?;
        if !cost[w].is_zero() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.n {
                match (0..self.n).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => {
                        self.pivot(r, c, &mut cost);
                        r += 1;
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        Ok(())
    }

    fn solve(mut self, objective: &[Q]) -> Result<LpSolution> {
        self.phase_one()?;
        let w = self.width();
        let mut cost = vec![Q::zero(); w + 1];
        cost[..self.n].clone_from_slice(objective);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n && !objective[b].is_zero() {
                let f = objective[b].clone();
                for (x, p) in cost.iter_mut().zip(&self.rows[i]) {
                    *x -= &f * p;
                }
            }
        }
        self.iterate(&mut cost, self.n)?;
        let mut x = vec![Q::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[i][w].clone();
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution { value, x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn small_minimum() {
        // min x + 2y  s.t. x + y - s = 1, x - y + t = 1/2 (s, t slack >= 0)
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![qi(1), qi(2), qi(0), qi(0)];
        lp.add_eq([(0, qi(1)), (1, qi(1)), (2, qi(-1))], qi(1));
        lp.add_eq([(0, qi(1)), (1, qi(-1)), (3, qi(1))], q(1, 2));
        let sol = lp.minimize().unwrap();
        // optimum at x = 3/4, y = 1/4
        assert_eq!(sol.value, q(5, 4));
        assert_eq!(sol.x[0], q(3, 4));
        assert_eq!(sol.x[1], q(1, 4));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_eq([(0, qi(1))], qi(-1));
        assert_eq!(lp.minimize(), Err(Error::Infeasible));
        assert!(!lp.is_feasible());

        let mut lp = LinearProgram::new(2);
        lp.objective = vec![qi(-1), qi(0)];
        lp.add_eq([(0, qi(1)), (1, qi(-1))], qi(0));
        assert_eq!(lp.minimize(), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_rows() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![qi(1), qi(3)];
        lp.add_eq([(0, qi(1)), (1, qi(1))], qi(1));
        lp.add_eq([(0, qi(2)), (1, qi(2))], qi(2));
        let sol = lp.minimize().unwrap();
        assert_eq!(sol.value, qi(1));
    }

    #[test]
    fn degenerate_cycle_free() {
        // Beale's classic cycling example, which Bland's rule must finish.
        let mut lp = LinearProgram::new(7);
        lp.objective = vec![q(-3, 4), qi(150), q(-1, 50), qi(6), qi(0), qi(0), qi(0)];
        lp.add_eq([(0, q(1, 4)), (1, qi(-60)), (2, q(-1, 25)), (3, qi(9)), (4, qi(1))], qi(0));
        lp.add_eq([(0, q(1, 2)), (1, qi(-90)), (2, q(-1, 50)), (3, qi(3)), (5, qi(1))], qi(0));
        lp.add_eq([(2, qi(1)), (6, qi(1))], qi(1));
        let sol = lp.minimize().unwrap();
        assert_eq!(sol.value, q(-1, 20));
    }
}
