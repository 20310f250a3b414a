//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use momentope::admissible::{GroupSetup, VData};
use momentope::oracle::{NamedRep, Representation};
use momentope::ressayre::PolytopeDescription;
use momentope::roots::{Coweight, RootDatum, Weight, WeightedModule, WeylElement};
use momentope::schubert::lr::{lr_coefficient, product_in_box, Partition};
use momentope::schubert::FlagVariety;
use std::collections::BTreeSet;

pub fn plain(group: &str, s: usize) -> GroupSetup {
    GroupSetup::without_v(RootDatum::parse(group).unwrap(), s).unwrap()
}

/// `group` acting on `T*K^s × V` with `V` a sum of standard/dual blocks of factor 0.
pub fn with_v(group: &str, s: usize, reps: &[NamedRep], assume_proper: bool) -> GroupSetup {
    let d = RootDatum::parse(group).unwrap();
    let n = d.ambient_dim();
    let mut weights = Vec::new();
    for r in reps {
        let (f, sign) = match *r {
            NamedRep::Standard(f) => (f, 1),
            NamedRep::Dual(f) => (f, -1),
        };
        for i in d.factors()[f].range() {
            let mut w = vec![0; n];
            w[i] = sign;
            weights.push(Weight::from_ints(&w));
        }
    }
    let rep = Representation::named(&d, reps).unwrap();
    let v = VData { weights: WeightedModule::from_weights(weights), representation: Some(rep), assume_proper };
    GroupSetup::new(d, s, Some(v)).unwrap()
}

/// `γ` whose antidominant form has blocks of the given sizes, trace zero.
pub fn gamma_with_blocks(sizes: &[usize]) -> Coweight {
    let n = sizes.iter().sum::<usize>() as i64;
    let mean: i64 = sizes.iter().enumerate().map(|(l, &m)| l as i64 * m as i64).sum();
    let coords: Vec<i64> = sizes
        .iter()
        .enumerate()
        .flat_map(|(l, &m)| std::iter::repeat_n(l as i64 * n - mean, m))
        .collect();
    Coweight::from_ints(&coords)
}

/// All compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partition of a Grassmannian permutation with its descent at `k`.
pub fn partition_of(w: &WeylElement, k: usize) -> Partition {
    let p = w.perm();
    let mut lam: Vec<usize> = (0..k).rev().map(|i| p[i] - i).collect();
    while lam.last() == Some(&0) {
        lam.pop();
    }
    lam
}

/// Exhaustive comparison of cup products on `Gr(k, n)` with Littlewood–Richardson
/// coefficients. Returns the number of products compared.
pub fn check_grassmannian(k: usize, n: usize) -> Result<usize, String> {
    let d = RootDatum::parse(&format!("su({n})")).unwrap();
    let flag = FlagVariety::new(&d, &gamma_with_blocks(&[k, n - k])).map_err(|e| e.to_string())?;
    let basis = flag.basis().to_vec();
    let mut count = 0;
    for a in &basis {
        for b in &basis {
            let c = flag
                .cup(&flag.schubert_class(a).unwrap(), &flag.schubert_class(b).unwrap())
                .map_err(|e| e.to_string())?;
            let expected = product_in_box(&partition_of(a, k), &partition_of(b, k), k, n - k);
            let got: std::collections::BTreeMap<Partition, u64> = c
                .coefficients()
                .map(|(w, x)| (partition_of(w, k), u64::try_from(x.clone()).expect("nonnegative")))
                .collect();
            if got != expected {
                return Err(format!("Gr({k},{n}): {a} * {b}: got {got:?}, expected {expected:?}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The pairing `∫ σ^u σ^v` over complementary degrees is the permutation
/// `v = dual(u)`. Returns the number of flag varieties checked.
pub fn check_poincare_duality(n: usize) -> Result<usize, String> {
    let d = RootDatum::parse(&format!("su({n})")).unwrap();
    let comps = compositions(n);
    for sizes in comps.iter().filter(|c| c.len() > 1) {
        let flag = FlagVariety::new(&d, &gamma_with_blocks(sizes)).map_err(|e| e.to_string())?;
        for u in flag.basis() {
            let mut ones = 0;
            for v in flag.basis().iter().filter(|v| v.length() + u.length() == flag.dim()) {
                let c = flag
                    .cup(&flag.schubert_class(u).unwrap(), &flag.schubert_class(v).unwrap())
                    .map_err(|e| e.to_string())?;
                let k = flag.point_coefficient(&c).map_err(|e| e.to_string())?;
                let want = i32::from(*v == flag.dual_index(u));
                if k != want.into() {
                    return Err(format!("{sizes:?}: <{u}, {v}> = {k}, expected {want}"));
                }
                ones += want;
            }
            if ones != 1 {
                return Err(format!("{sizes:?}: row {u} has {ones} ones"));
            }
        }
    }
    Ok(comps.len() - 1)
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `[n]_q! / Π [m_i]_q!` via `P · Π [m_i]_q! = [n]_q!`.
pub fn check_poincare_polynomials(n: usize) -> Result<usize, String> {
    let qfact = |m: usize| (1..=m).fold(vec![1u64], |acc, k| poly_mul(&acc, &vec![1; k]));
    let d = RootDatum::parse(&format!("su({n})")).unwrap();
    let mut count = 0;
    for sizes in compositions(n).iter().filter(|c| c.len() > 1) {
        let flag = FlagVariety::new(&d, &gamma_with_blocks(sizes)).map_err(|e| e.to_string())?;
        let p = flag.poincare_polynomial();
        let lhs = sizes.iter().fold(p.clone(), |acc, &m| poly_mul(&acc, &qfact(m)));
        if lhs != qfact(n) {
            return Err(format!("{sizes:?}: Poincare polynomial {p:?}"));
        }
        let rev: Vec<u64> = p.iter().rev().copied().collect();
        if rev != p {
            return Err(format!("{sizes:?}: {p:?} is not palindromic"));
        }
        count += 1;
    }
    Ok(count)
}

/// Horn inequalities for `A + B + C = 0`, coefficient vectors `[ξ̃_1 | ξ̃_2 | ξ]`,
/// where `ξ̃_i = spec` of the summands and `ξ = spec(-(A + B))`.
pub fn horn(n: usize) -> Vec<Vec<f64>> {
    let subsets = |r: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == r)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    };
    let lambda = |s: &[usize]| -> Vec<usize> {
        let r = s.len();
        let mut l: Vec<usize> = (0..r).rev().map(|t| s[t] - t).collect();
        while l.last() == Some(&0) {
            l.pop();
        }
        l
    };
    let mut out = Vec::new();
    for r in 1..n {
        let ss = subsets(r);
        for i in &ss {
            for j in &ss {
                for k in &ss {
                    let (li, lj, lk) = (lambda(i), lambda(j), lambda(k));
                    if li.iter().sum::<usize>() + lj.iter().sum::<usize>() != lk.iter().sum::<usize>() {
                        continue;
                    }
                    if lr_coefficient(&li, &lj, &lk) == 0 {
                        continue;
                    }
                    // Σ_K c_k ≤ Σ_I a_i + Σ_J b_j with c_k = -ξ_{n+1-k}.
                    let mut v = vec![0.0; 3 * n];
                    for &x in i {
                        v[x] += 1.0;
                    }
                    for &x in j {
                        v[n + x] += 1.0;
                    }
                    for &x in k {
                        v[2 * n + (n - 1 - x)] += 1.0;
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Interlacing inequalities for `spec(-A - ½vv*)` against `spec(A)` on `u(n)`,
/// as `(ξ̃ coefficients, ξ coefficients)`.
pub fn interlacing(n: usize) -> BTreeSet<(Vec<i64>, Vec<i64>)> {
    let mut out = BTreeSet::new();
    for i in 0..n {
        let mut xt = vec![0; n];
        let mut xi = vec![0; n];
        xt[n - 1 - i] = -1;
        xi[i] = -1;
        out.insert((xt, xi));
        if i + 1 < n {
            let mut xt = vec![0; n];
            let mut xi = vec![0; n];
            xt[n - 2 - i] = 1;
            xi[i] = 1;
            out.insert((xt, xi));
        }
    }
    out
}

/// Flattened float coefficients of the generated inequalities.
pub fn generated(p: &PolytopeDescription) -> Vec<Vec<f64>> {
    p.inequalities.iter().map(|q| q.coeffs_f64().into_iter().flatten().collect()).collect()
}

/// `min target` over `{x : rows·x ≥ 0, chamber, traces} ∩ [-1,1]^N`.
pub fn cone_min(p: &PolytopeDescription, rows: &[Vec<f64>], target: &[f64]) -> f64 {
    let n = p.datum.ambient_dim();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = target.iter().map(|&c| lp.add_var(c, (-1.0, 1.0))).collect();
    let factor_row = |f: usize, coeffs: &[i64]| -> Vec<(Variable, f64)> {
        coeffs.iter().enumerate().map(|(j, &c)| (vars[f * n + j], c as f64)).collect()
    };
    for c in &p.chamber {
        lp.add_constraint(factor_row(c.factor, &c.coeffs), ComparisonOp::Ge, 0.0);
    }
    for c in &p.trace_equalities {
        lp.add_constraint(factor_row(c.factor, &c.coeffs), ComparisonOp::Eq, 0.0);
    }
    for r in rows {
        lp.add_constraint(vars.iter().copied().zip(r.iter().copied()).collect::<Vec<_>>(), ComparisonOp::Ge, 0.0);
    }
    lp.solve().expect("bounded LP").objective()
}

/// Both cones agree: every row of one is implied by the other (with the chamber).
pub fn same_cone(p: &PolytopeDescription, a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<(), String> {
    for (name, rows, targets) in [("generated", a, b), ("reference", b, a)] {
        for t in targets {
            let m = cone_min(p, rows, t);
            if m < -1e-9 {
                return Err(format!("{t:?} is not implied by the {name} system (min {m})"));
            }
        }
    }
    Ok(())
}
