//! Exact linear programming.
//!
//! Dense two-phase primal simplex over [`Rational`] with Bland's rule, so it
//! terminates on degenerate problems. Every optimal outcome carries a dual
//! solution read off the final tableau; primal and dual objectives agree
//! exactly.
//!
//! Problems are stated as *maximize* `c·x` subject to rows `a·x {≤,=,≥} b`,
//! with each variable either nonnegative or free. The reported duals follow
//! the textbook orientation for a maximization: `y ≥ 0` on `≤` rows, `y ≤ 0`
//! on `≥` rows, free on `=` rows, and `yᵀA ≥ c` (with equality on free
//! variables).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarDomain {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    fn holds_at(&self, point: &[Rational]) -> bool {
        let lhs = dot(&self.coefficients, point);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// A maximization problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub variable_count: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub domains: Vec<VarDomain>,
}

impl LinearProgram {
    /// A problem over nonnegative variables with no constraints yet.
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            variable_count: n,
            objective,
            constraints: Vec::new(),
            domains: vec![VarDomain::NonNegative; n],
        }
    }

    pub fn set_domain(&mut self, var: usize, domain: VarDomain) -> Result<()> {
        let slot = self.domains.get_mut(var).ok_or_else(|| {
            Error::IndexOutOfRange(format!("variable {var} of {}", self.variable_count))
        })?;
        *slot = domain;
        Ok(())
    }

    pub fn add_constraint(
        &mut self,
        coefficients: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        if coefficients.len() != self.variable_count {
            return Err(Error::Dimension(format!(
                "constraint has {} coefficients, expected {}",
                coefficients.len(),
                self.variable_count
            )));
        }
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.variable_count;
        if self.objective.len() != n {
            return Err(Error::Dimension(format!(
                "objective has {} entries, expected {n}",
                self.objective.len()
            )));
        }
        if self.domains.len() != n {
            return Err(Error::Dimension(format!(
                "{} domain flags, expected {n}",
                self.domains.len()
            )));
        }
        for (r, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::Dimension(format!(
                    "constraint {r} has {} coefficients, expected {n}",
                    c.coefficients.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub primal: Vec<Rational>,
    pub objective_value: Rational,
    /// One entry per constraint, in the caller's order and orientation.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// True iff `point` satisfies every constraint and domain flag exactly.
pub fn check_point(lp: &LinearProgram, point: &[Rational]) -> Result<bool> {
    lp.validate()?;
    if point.len() != lp.variable_count {
        return Err(Error::Dimension(format!(
            "point has {} entries, expected {}",
            point.len(),
            lp.variable_count
        )));
    }
    let domains_ok = lp
        .domains
        .iter()
        .zip(point)
        .all(|(d, x)| *d == VarDomain::Free || !x.is_negative());
    Ok(domains_ok && lp.constraints.iter().all(|c| c.holds_at(point)))
}

/// True iff `duals` is feasible for the dual of `lp`.
pub fn check_dual(lp: &LinearProgram, duals: &[Rational]) -> Result<bool> {
    lp.validate()?;
    if duals.len() != lp.constraints.len() {
        return Err(Error::Dimension(format!(
            "{} duals for {} constraints",
            duals.len(),
            lp.constraints.len()
        )));
    }
    for (c, y) in lp.constraints.iter().zip(duals) {
        let ok = match c.relation {
            Relation::Le => !y.is_negative(),
            Relation::Ge => !y.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return Ok(false);
        }
    }
    for j in 0..lp.variable_count {
        let reduced: Rational = lp
            .constraints
            .iter()
            .zip(duals)
            .filter(|(c, _)| !c.coefficients[j].is_zero())
            .fold(Rational::zero(), |acc, (c, y)| acc + &c.coefficients[j] * y);
        let ok = match lp.domains[j] {
            VarDomain::NonNegative => reduced >= lp.objective[j],
            VarDomain::Free => reduced == lp.objective[j],
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn dual_objective(lp: &LinearProgram, duals: &[Rational]) -> Rational {
    lp.constraints
        .iter()
        .zip(duals)
        .fold(Rational::zero(), |acc, (c, y)| acc + &c.rhs * y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows[r]` holds the coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_B B⁻¹ A_j − c_j`, then the current objective value.
    objective: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
}

enum PhaseResult {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.width();
        let inv = self.rows[row][col].recip();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let eliminate = |target: &mut Vec<Rational>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for k in 0..=width {
                if !pivot_row[k].is_zero() {
                    target[k] -= &factor * &pivot_row[k];
                }
            }
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.objective);
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let width = self.width();
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for k in 0..=width {
                if !self.rows[r][k].is_zero() {
                    obj[k] += cb * &self.rows[r][k];
                }
            }
        }
        self.objective = obj;
    }

    /// Primal simplex with Bland's rule; artificial columns never enter.
    fn run(&mut self) -> PhaseResult {
        let width = self.width();
        loop {
            let entering = (0..width).find(|&j| {
                self.kinds[j] != ColumnKind::Artificial && self.objective[j].is_negative()
            });
            let Some(col) = entering else {
                return PhaseResult::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][width] / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return PhaseResult::Unbounded,
            }
        }
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let m = lp.constraints.len();

    // Structural columns; a free variable becomes a (plus, minus) pair.
    let mut column_of_var = Vec::with_capacity(lp.variable_count);
    let mut structural = 0usize;
    for d in &lp.domains {
        column_of_var.push(structural);
        structural += match d {
            VarDomain::NonNegative => 1,
            VarDomain::Free => 2,
        };
    }

    // Normalize every row to a nonnegative right-hand side.
    let mut signs = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);
    for c in &lp.constraints {
        let flip = c.rhs.is_negative();
        signs.push(flip);
        relations.push(match (c.relation, flip) {
            (r, false) => r,
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (Relation::Eq, true) => Relation::Eq,
        });
    }
    let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
    let artificial_count = relations.iter().filter(|r| **r != Relation::Le).count();
    let width = structural + slack_count + artificial_count;

    let mut kinds = vec![ColumnKind::Structural; structural];
    kinds.extend(std::iter::repeat_n(ColumnKind::Slack, slack_count));
    kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, artificial_count));

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    // Column holding the initial identity for each row; B⁻¹e_r lives there.
    let mut identity_col = Vec::with_capacity(m);
    let mut next_slack = structural;
    let mut next_artificial = structural + slack_count;
    for (r, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (j, a) in c.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = if signs[r] { -a } else { a.clone() };
            let col = column_of_var[j];
            if lp.domains[j] == VarDomain::Free {
                row[col + 1] = -&a;
            }
            row[col] = a;
        }
        row[width] = if signs[r] { -&c.rhs } else { c.rhs.clone() };
        match relations[r] {
            Relation::Le => {
                row[next_slack] = Rational::from_integer(1.into());
                basis.push(next_slack);
                identity_col.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = Rational::from_integer((-1).into());
                next_slack += 1;
                row[next_artificial] = Rational::from_integer(1.into());
                basis.push(next_artificial);
                identity_col.push(next_artificial);
                next_artificial += 1;
            }
            Relation::Eq => {
                row[next_artificial] = Rational::from_integer(1.into());
                basis.push(next_artificial);
                identity_col.push(next_artificial);
                next_artificial += 1;
            }
        }
        rows.push(row);
    }

    let mut tableau = Tableau {
        rows,
        objective: Vec::new(),
        basis,
        kinds,
    };

    if artificial_count > 0 {
        let phase_one: Vec<Rational> = tableau
            .kinds
            .iter()
            .map(|k| match k {
                ColumnKind::Artificial => Rational::from_integer((-1).into()),
                _ => Rational::zero(),
            })
            .collect();
        tableau.set_costs(&phase_one);
        // Phase one is bounded above by zero, so Unbounded cannot occur; the
        // entering rule excludes artificials, which start basic and have zero
        // reduced cost.
        tableau.run();
        if tableau.objective[width].is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot zero-level artificials out where possible. Rows where every
        // non-artificial entry is zero are redundant and stay inert.
        for r in 0..m {
            if tableau.kinds[tableau.basis[r]] != ColumnKind::Artificial {
                continue;
            }
            let col = (0..width).find(|&j| {
                tableau.kinds[j] != ColumnKind::Artificial && !tableau.rows[r][j].is_zero()
            });
            if let Some(col) = col {
                tableau.pivot(r, col);
            }
        }
    }

    let mut costs = vec![Rational::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        let col = column_of_var[j];
        costs[col] = c.clone();
        if lp.domains[j] == VarDomain::Free {
            costs[col + 1] = -c;
        }
    }
    tableau.set_costs(&costs);
    if let PhaseResult::Unbounded = tableau.run() {
        return Ok(LpOutcome::Unbounded);
    }

    let mut values = vec![Rational::zero(); width];
    for (r, &b) in tableau.basis.iter().enumerate() {
        values[b] = tableau.rows[r][width].clone();
    }
    let primal: Vec<Rational> = (0..lp.variable_count)
        .map(|j| {
            let col = column_of_var[j];
            match lp.domains[j] {
                VarDomain::NonNegative => values[col].clone(),
                VarDomain::Free => &values[col] - &values[col + 1],
            }
        })
        .collect();

    // y = c_B B⁻¹, then undo the row sign normalization.
    let duals: Vec<Rational> = (0..m)
        .map(|r| {
            let col = identity_col[r];
            let y = tableau
                .basis
                .iter()
                .enumerate()
                .filter(|(k, &b)| !costs[b].is_zero() && !tableau.rows[*k][col].is_zero())
                .fold(Rational::zero(), |acc, (k, &b)| {
                    acc + &costs[b] * &tableau.rows[k][col]
                });
            if signs[r] {
                -y
            } else {
                y
            }
        })
        .collect();

    let objective_value = tableau.objective[width].clone();
    debug_assert_eq!(objective_value, lp.objective_at(&primal));
    Ok(LpOutcome::Optimal(LpSolution {
        primal,
        objective_value,
        duals,
    }))
}
