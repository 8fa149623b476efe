//! Exact feasibility LP over the ordered field Q(s).
//!
//! Variables are free. Each constraint is `a·x = b` or `a·x ≥ b`. The solver
//! runs a phase-one simplex on the standard-form system
//! `σ(A(x⁺ − x⁻) − s) + art = σb` with Bland's rule, so it terminates and
//! pivots identically on every run. Infeasibility is reported with a Farkas
//! row: multipliers `u` (nonnegative on `≥` rows) with `uᵀA = 0` and
//! `uᵀb > 0`, which sums the constraints into `0 ≥ positive`.

use serde::Serialize;

use super::matrix::{dot, ScalarVec};
use super::symbols::SymbolTable;
use super::value::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: ScalarVec,
    pub rel: Relation,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpProblem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(ScalarVec),
    Infeasible(ScalarVec),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, coeffs: ScalarVec, rel: Relation, rhs: Scalar) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "constraint has {} coefficients, problem has {} variables",
                coeffs.len(),
                self.num_vars
            )));
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        Ok(())
    }

    pub fn add_eq(&mut self, coeffs: ScalarVec, rhs: Scalar) {
        self.push(coeffs, Relation::Eq, rhs).expect("coefficient count");
    }

    pub fn add_ge(&mut self, coeffs: ScalarVec, rhs: Scalar) {
        self.push(coeffs, Relation::Ge, rhs).expect("coefficient count");
    }

    /// Exact check that `x` satisfies every constraint.
    pub fn verify_point(&self, x: &[Scalar], table: &SymbolTable, max_bits: u32) -> Result<bool> {
        if x.len() != self.num_vars {
            return Ok(false);
        }
        for c in &self.constraints {
            let lhs = dot(&c.coeffs, x);
            let diff = &lhs - &c.rhs;
            match c.rel {
                Relation::Eq => {
                    if !diff.is_zero() {
                        return Ok(false);
                    }
                }
                Relation::Ge => {
                    if diff.sign(table, max_bits)? < 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Exact check of a Farkas row.
    pub fn verify_farkas(&self, u: &[Scalar], table: &SymbolTable, max_bits: u32) -> Result<bool> {
        if u.len() != self.constraints.len() {
            return Ok(false);
        }
        let mut combo = vec![Scalar::zero(); self.num_vars];
        let mut rhs = Scalar::zero();
        for (c, ui) in self.constraints.iter().zip(u) {
            if ui.is_zero() {
                continue;
            }
            if c.rel == Relation::Ge && ui.sign(table, max_bits)? < 0 {
                return Ok(false);
            }
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc = &*acc + &(ui * a);
            }
            rhs = &rhs + &(ui * &c.rhs);
        }
        if combo.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        Ok(rhs.sign(table, max_bits)? > 0)
    }

    /// Decide feasibility; the returned point or certificate has already
    /// been re-verified exactly.
    pub fn solve(&self, table: &SymbolTable, max_bits: u32) -> Result<LpOutcome> {
        let out = Tableau::build(self, table, max_bits)?.run()?;
        let ok = match &out {
            LpOutcome::Feasible(x) => self.verify_point(x, table, max_bits)?,
            LpOutcome::Infeasible(u) => self.verify_farkas(u, table, max_bits)?,
        };
        if !ok {
            return Err(Error::Invariant("simplex output failed exact re-verification".into()));
        }
        Ok(out)
    }
}

/// Shorthand for [`LpProblem::solve`].
pub fn lp_feasible(p: &LpProblem, table: &SymbolTable, max_bits: u32) -> Result<LpOutcome> {
    p.solve(table, max_bits)
}

struct Tableau<'a> {
    table: &'a SymbolTable,
    max_bits: u32,
    nrows: usize,
    ncols: usize,
    /// row-major, `ncols + 1` entries per row (last = rhs)
    t: Vec<Scalar>,
    cost: Vec<Scalar>,
    obj: Scalar,
    basis: Vec<usize>,
    flips: Vec<bool>,
    num_vars: usize,
    art_start: usize,
}

impl<'a> Tableau<'a> {
    fn build(p: &LpProblem, table: &'a SymbolTable, max_bits: u32) -> Result<Self> {
        let nrows = p.constraints.len();
        let nv = p.num_vars;
        let slack_rows: Vec<usize> = (0..nrows).filter(|&i| p.constraints[i].rel == Relation::Ge).collect();
        let art_start = 2 * nv + slack_rows.len();
        let ncols = art_start + nrows;
        let w = ncols + 1;
        let mut t = vec![Scalar::zero(); nrows * w];
        let mut flips = vec![false; nrows];
        for (i, c) in p.constraints.iter().enumerate() {
            let flip = c.rhs.sign(table, max_bits)? < 0;
            flips[i] = flip;
            let f = |x: &Scalar| if flip { -x } else { x.clone() };
            for j in 0..nv {
                t[i * w + 2 * j] = f(&c.coeffs[j]);
                t[i * w + 2 * j + 1] = -f(&c.coeffs[j]);
            }
            if let Some(k) = slack_rows.iter().position(|&r| r == i) {
                t[i * w + 2 * nv + k] = f(&Scalar::from_int(-1));
            }
            t[i * w + art_start + i] = Scalar::one();
            t[i * w + ncols] = f(&c.rhs);
        }
        let mut cost = vec![Scalar::zero(); ncols];
        let mut obj = Scalar::zero();
        for i in 0..nrows {
            for j in 0..art_start {
                let v = &t[i * w + j];
                if !v.is_zero() {
                    cost[j] = &cost[j] - v;
                }
            }
            obj = &obj + &t[i * w + ncols];
        }
        Ok(Tableau {
            table,
            max_bits,
            nrows,
            ncols,
            t,
            cost,
            obj,
            basis: (art_start..art_start + nrows).collect(),
            flips,
            num_vars: nv,
            art_start,
        })
    }

    fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.t[r * (self.ncols + 1) + c]
    }

    fn sign(&self, x: &Scalar) -> Result<i8> {
        x.sign(self.table, self.max_bits)
    }

    fn run(mut self) -> Result<LpOutcome> {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if self.cost[j].is_zero() {
                    continue;
                }
                if self.sign(&self.cost[j])? < 0 {
                    entering = Some(j);
                    break;
                }
            }
            let Some(e) = entering else { break };
            let mut leave: Option<(usize, Scalar)> = None;
            for r in 0..self.nrows {
                let a = self.at(r, e);
                if a.is_zero() || self.sign(a)? < 0 {
                    continue;
                }
                let ratio = self.at(r, self.ncols) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        let s = self.sign(&(&ratio - &best))?;
                        if s < 0 || (s == 0 && self.basis[r] < self.basis[br]) {
                            Some((r, ratio))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            // phase one is bounded below by zero
            let (r, _) = leave.ok_or_else(|| Error::Invariant("unbounded phase-one objective".into()))?;
            self.pivot(r, e);
        }
        if self.obj.is_zero() {
            let w = self.ncols + 1;
            let mut xs = vec![Scalar::zero(); 2 * self.num_vars];
            for (r, &b) in self.basis.iter().enumerate() {
                if b < 2 * self.num_vars {
                    xs[b] = self.t[r * w + self.ncols].clone();
                }
            }
            let x = (0..self.num_vars).map(|j| &xs[2 * j] - &xs[2 * j + 1]).collect();
            return Ok(LpOutcome::Feasible(x));
        }
        // y_k = 1 − reduced cost of artificial k; undo the row flips
        let u = (0..self.nrows)
            .map(|k| {
                let y = &Scalar::one() - &self.cost[self.art_start + k];
                if self.flips[k] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(LpOutcome::Infeasible(u))
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.ncols + 1;
        let inv = self.at(r, e).recip().expect("pivot nonzero");
        for c in 0..w {
            let v = &self.t[r * w + c] * &inv;
            self.t[r * w + c] = v;
        }
        let prow: Vec<Scalar> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.nrows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + e].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..w {
                if prow[c].is_zero() {
                    continue;
                }
                let v = &self.t[i * w + c] - &(&f * &prow[c]);
                self.t[i * w + c] = v;
            }
        }
        let f = self.cost[e].clone();
        if !f.is_zero() {
            for c in 0..self.ncols {
                if prow[c].is_zero() {
                    continue;
                }
                self.cost[c] = &self.cost[c] - &(&f * &prow[c]);
            }
            self.obj = &self.obj + &(&f * &prow[self.ncols]);
        }
        self.basis[r] = e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let t = SymbolTable::new();
        let mut p = LpProblem::new(1);
        p.add_ge(vec![s(1)], s(1));
        p.add_ge(vec![s(-1)], s(0));
        match p.solve(&t, 256).unwrap() {
            LpOutcome::Infeasible(u) => {
                assert!(p.verify_farkas(&u, &t, 256).unwrap());
                assert_eq!(u, vec![s(1), s(1)]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn simplex_segment_is_feasible_at_vertex() {
        let t = SymbolTable::new();
        let mut p = LpProblem::new(2);
        p.add_eq(vec![s(1), s(1)], s(1));
        p.add_ge(vec![s(1), s(0)], s(0));
        p.add_ge(vec![s(0), s(1)], s(0));
        match p.solve(&t, 256).unwrap() {
            LpOutcome::Feasible(x) => {
                assert!(x[0] == s(0) || x[0] == s(1));
                assert_eq!(&x[0] + &x[1], s(1));
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn symbolic_coefficients() {
        let mut t = SymbolTable::new();
        t.push_sqrt("r", num_rational::BigRational::from_integer(2.into()))
            .unwrap();
        let r = Scalar::symbol(0);
        // x ≥ r, x ≤ 3/2  is feasible (√2 < 1.5); x ≤ 7/5 is not
        let mut p = LpProblem::new(1);
        p.add_ge(vec![s(1)], r.clone());
        p.add_ge(vec![s(-1)], Scalar::ratio(-3, 2));
        assert!(p.solve(&t, 256).unwrap().is_feasible());
        let mut p = LpProblem::new(1);
        p.add_ge(vec![s(1)], r);
        p.add_ge(vec![s(-1)], Scalar::ratio(-7, 5));
        assert!(!p.solve(&t, 256).unwrap().is_feasible());
    }

    #[test]
    fn empty_problem_is_feasible() {
        let t = SymbolTable::new();
        let p = LpProblem::new(3);
        assert_eq!(p.solve(&t, 64).unwrap(), LpOutcome::Feasible(vec![s(0), s(0), s(0)]));
    }
}
