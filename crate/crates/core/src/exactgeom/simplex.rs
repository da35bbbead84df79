//! Dictionary simplex over exact rationals for problems with free variables
//! and `g·x ≥ h` rows. Bland's rule throughout, so runs are deterministic and
//! never cycle.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_traits::{One, Signed, Zero};

use super::{LinearConstraint, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rational>, value: Rational },
}

/// Maximizes `objective · x` over free `x` subject to `row.normal · x ≥ row.offset`.
pub(crate) fn maximize(nvars: usize, objective: &[Rational], rows: &[LinearConstraint]) -> LpOutcome {
    debug_assert_eq!(objective.len(), nvars);
    let mut dict = Dictionary::new(nvars, objective, rows);
    dict.enter_free_variables();
    if !dict.make_feasible() {
        return LpOutcome::Infeasible;
    }
    if dict.stuck_with_gradient() {
        return LpOutcome::Unbounded;
    }
    if !dict.optimize(false) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal { point: dict.free_values(), value: dict.objective.constant.clone() }
}

#[derive(Debug, Clone)]
struct Row {
    constant: Rational,
    coeffs: Vec<Rational>,
}

/// Variables: `0..nfree` are the free unknowns, `nfree..nfree+m` the row
/// slacks, and `nfree+m` the phase-one auxiliary.
struct Dictionary {
    nfree: usize,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    rows: Vec<Row>,
    objective: Row,
    aux_objective: Option<Row>,
    stuck: Vec<bool>,
}

impl Dictionary {
    fn new(nfree: usize, objective: &[Rational], rows: &[LinearConstraint]) -> Self {
        let rows: Vec<Row> = rows
            .iter()
            .map(|c| Row { constant: -c.offset.clone(), coeffs: c.normal.clone() })
            .collect();
        Dictionary {
            nfree,
            basic: (nfree..nfree + rows.len()).collect(),
            nonbasic: (0..nfree).collect(),
            rows,
            objective: Row { constant: Rational::zero(), coeffs: objective.to_vec() },
            aux_objective: None,
            stuck: vec![false; nfree],
        }
    }

    fn aux_var(&self) -> usize {
        self.nfree + self.rows.len()
    }

    fn is_active(&self, r: usize) -> bool {
        self.basic[r] >= self.nfree
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let a = self.rows[r].coeffs[c].clone();
        debug_assert!(!a.is_zero());
        let inv = a.recip();
        let pivot_row = {
            let row = &self.rows[r];
            let mut coeffs: Vec<Rational> = row.coeffs.iter().map(|v| -(v * &inv)).collect();
            coeffs[c] = inv.clone();
            Row { constant: -(&row.constant * &inv), coeffs }
        };
        let substitute = |target: &mut Row| {
            let k = core::mem::replace(&mut target.coeffs[c], Rational::zero());
            if k.is_zero() {
                return;
            }
            target.constant += &k * &pivot_row.constant;
            for (t, p) in target.coeffs.iter_mut().zip(&pivot_row.coeffs) {
                if !p.is_zero() {
                    *t += &k * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                substitute(row);
            }
        }
        substitute(&mut self.objective);
        if let Some(aux) = self.aux_objective.as_mut() {
            substitute(aux);
        }
        self.rows[r] = pivot_row;
        core::mem::swap(&mut self.basic[r], &mut self.nonbasic[c]);
    }

    /// Moves every free variable that appears in some slack row into the
    /// basis. Free variables left out are unconstrained; they stay at zero.
    fn enter_free_variables(&mut self) {
        for c in 0..self.nonbasic.len() {
            let var = self.nonbasic[c];
            if var >= self.nfree {
                continue;
            }
            let row = (0..self.rows.len())
                .find(|&r| self.is_active(r) && !self.rows[r].coeffs[c].is_zero());
            match row {
                Some(r) => self.pivot(r, c),
                None => self.stuck[var] = true,
            }
        }
    }

    fn stuck_with_gradient(&self) -> bool {
        self.nonbasic
            .iter()
            .zip(&self.objective.coeffs)
            .any(|(&v, k)| v < self.nfree && self.stuck[v] && !k.is_zero())
    }

    fn can_enter(&self, c: usize) -> bool {
        let v = self.nonbasic[c];
        v >= self.nfree && !(self.aux_objective.is_none() && v == self.aux_var())
    }

    /// Bland's rule simplex on the current objective (the auxiliary one when
    /// `phase_one`). Returns false if unbounded.
    fn optimize(&mut self, phase_one: bool) -> bool {
        loop {
            let obj = if phase_one { self.aux_objective.as_ref().unwrap() } else { &self.objective };
            let entering = (0..self.nonbasic.len())
                .filter(|&c| self.can_enter(c) && obj.coeffs[c].is_positive())
                .min_by_key(|&c| self.nonbasic[c]);
            let Some(c) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                if !self.is_active(r) || !self.rows[r].coeffs[c].is_negative() {
                    continue;
                }
                let ratio = &self.rows[r].constant / -&self.rows[r].coeffs[c];
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => match ratio.cmp(best_ratio) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basic[r] < self.basic[*best],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Phase one with a single auxiliary variable added to every slack row.
    fn make_feasible(&mut self) -> bool {
        let worst = (0..self.rows.len())
            .filter(|&r| self.is_active(r) && self.rows[r].constant.is_negative())
            .min_by(|&a, &b| self.rows[a].constant.cmp(&self.rows[b].constant).then(a.cmp(&b)));
        let Some(worst) = worst else {
            return true;
        };
        let aux = self.aux_var();
        for r in 0..self.rows.len() {
            let k = if self.is_active(r) { Rational::one() } else { Rational::zero() };
            self.rows[r].coeffs.push(k);
        }
        self.objective.coeffs.push(Rational::zero());
        let mut aux_obj = Row {
            constant: Rational::zero(),
            coeffs: vec![Rational::zero(); self.nonbasic.len() + 1],
        };
        *aux_obj.coeffs.last_mut().unwrap() = -Rational::one();
        self.aux_objective = Some(aux_obj);
        self.nonbasic.push(aux);
        let aux_col = self.nonbasic.len() - 1;
        self.pivot(worst, aux_col);
        let bounded = self.optimize(true);
        debug_assert!(bounded, "phase one objective is bounded by zero");
        if self.aux_objective.as_ref().unwrap().constant.is_negative() {
            return false;
        }
        if let Some(r) = self.basic.iter().position(|&v| v == aux) {
            let c = (0..self.nonbasic.len())
                .find(|&c| !self.rows[r].coeffs[c].is_zero())
                .expect("auxiliary row has a nonzero coefficient");
            self.pivot(r, c);
        }
        let col = self.nonbasic.iter().position(|&v| v == aux).unwrap();
        self.nonbasic.remove(col);
        for row in self.rows.iter_mut() {
            row.coeffs.remove(col);
        }
        self.objective.coeffs.remove(col);
        self.aux_objective = None;
        true
    }

    fn free_values(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.nfree];
        for (row, &v) in self.rows.iter().zip(&self.basic) {
            if v < self.nfree {
                values[v] = row.constant.clone();
            }
        }
        values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ge(normal: &[i64], offset: i64) -> LinearConstraint {
        LinearConstraint::new(normal.iter().map(|&v| q(v)).collect(), q(offset))
    }

    #[test]
    fn bounded_box_optimum() {
        // max x + y with 0 ≤ x ≤ 2, 0 ≤ y ≤ 3, x + y ≤ 4
        let rows = [ge(&[1, 0], 0), ge(&[-1, 0], -2), ge(&[0, 1], 0), ge(&[0, -1], -3), ge(&[-1, -1], -4)];
        match maximize(2, &[q(1), q(1)], &rows) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(4));
                assert_eq!(&point[0] + &point[1], q(4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = [ge(&[1], 1), ge(&[-1], 0)];
        assert_eq!(maximize(1, &[q(0)], &rows), LpOutcome::Infeasible);
        let rows = [ge(&[1, -1], 0)];
        assert_eq!(maximize(2, &[q(1), q(0)], &rows), LpOutcome::Unbounded);
    }

    #[test]
    fn unconstrained_direction_is_unbounded_only_with_gradient() {
        let rows = [ge(&[1, 0], 2)];
        assert!(matches!(maximize(2, &[q(-1), q(0)], &rows), LpOutcome::Optimal { .. }));
        assert_eq!(maximize(2, &[q(0), q(1)], &rows), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_start_needs_phase_one() {
        // x ≥ 3, y ≥ x + 1, max -y
        let rows = [ge(&[1, 0], 3), ge(&[-1, 1], 1)];
        match maximize(2, &[q(0), q(-1)], &rows) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(-4));
                assert_eq!(point, vec![q(3), q(4)]);
            }
            other => panic!("{other:?}"),
        }
    }
}
