//! Heuristic redundancy removal by linear programming.
//!
//! Floating point, so a removed inequality is only redundant up to solver
//! tolerance. Removed inequalities are kept in `PolytopeDescription::pruned`.

use super::polytope::{Inequality, PolytopeDescription};
use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

const SLACK_TOL: f64 = 1e-9;

fn flat(q: &Inequality) -> Vec<f64> {
    q.coeffs_f64().into_iter().flatten().collect()
}

/// Minimum of `target` over the cone cut out by `others` and the chamber,
/// intersected with the box `[-1, 1]^N`.
fn min_over_cone(p: &PolytopeDescription, others: &[Vec<f64>], target: &[f64]) -> Option<f64> {
    let n = p.datum.ambient_dim();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = target.iter().map(|&c| lp.add_var(c, (-1.0, 1.0))).collect();
    let row = |factor: usize, coeffs: &[i64]| -> Vec<(Variable, f64)> {
        coeffs.iter().enumerate().map(|(j, &c)| (vars[factor * n + j], c as f64)).collect()
    };
    for c in &p.chamber {
        lp.add_constraint(row(c.factor, &c.coeffs), ComparisonOp::Ge, 0.0);
    }
    for c in &p.trace_equalities {
        lp.add_constraint(row(c.factor, &c.coeffs), ComparisonOp::Eq, 0.0);
    }
    for o in others {
        let r: Vec<(Variable, f64)> = vars.iter().zip(o).filter(|(_, &c)| c != 0.0).map(|(&v, &c)| (v, c)).collect();
        lp.add_constraint(r, ComparisonOp::Ge, 0.0);
    }
    lp.solve().ok().map(|s| s.objective())
}

/// Moves inequalities implied by the remaining ones (and the chamber) into
/// `pruned`, one at a time in list order.
pub fn prune_redundant(p: &mut PolytopeDescription) {
    let mut keep: Vec<bool> = vec![true; p.inequalities.len()];
    let coeffs: Vec<Vec<f64>> = p.inequalities.iter().map(flat).collect();
    for i in 0..coeffs.len() {
        let others: Vec<Vec<f64>> =
            (0..coeffs.len()).filter(|&j| j != i && keep[j]).map(|j| coeffs[j].clone()).collect();
        if let Some(m) = min_over_cone(p, &others, &coeffs[i]) {
            if m >= -SLACK_TOL {
                keep[i] = false;
            }
        }
    }
    let all = std::mem::take(&mut p.inequalities);
    for (q, k) in all.into_iter().zip(keep) {
        if k {
            p.inequalities.push(q);
        } else {
            p.pruned.push(q);
        }
    }
}
