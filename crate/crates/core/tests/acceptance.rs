//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//! Run with `cargo test -p momentope --release --test acceptance`.

mod common;

use common::*;
use momentope::admissible::{enumerate_admissible, GroupSetup};
use momentope::exact::{frac, int, Rational};
use momentope::oracle::linalg::{eigh, CMatrix, C64};
use momentope::oracle::validate::{draw_sample, moment_map_for, MEMBERSHIP_TOL};
use momentope::oracle::{
    check_limit_proposition, facet_tightness, gradient_flow, kempf_ness_along_ray, limit_sample, monte_carlo_validate,
    FlowOptions, MomentMap, NamedRep, Representation,
};
use momentope::ressayre::{
    condition_a, eval_f64, generate_inequalities, GenerateOptions, Mode, Point, PolytopeDescription,
};
use momentope::roots::{Coweight, RootDatum, WeylElement};
use momentope::schubert::FlagVariety;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Collects sub-check failures and notes for one criterion.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> Outcome {
        if self.failed.is_empty() {
            outcome(true, self.notes.join("; "))
        } else {
            outcome(false, self.failed.join("; "))
        }
    }
}

fn generate(setup: &GroupSetup, mode: Mode) -> PolytopeDescription {
    generate_inequalities(setup, &GenerateOptions::with_mode(mode)).expect("generation")
}

fn facets(c: &mut Checks, p: &PolytopeDescription, setup: &GroupSetup, trials: u64, tol: f64) {
    let mut worst = 0.0f64;
    for i in 0..p.inequalities.len() {
        let t = facet_tightness(p, setup, i, trials, SEED + i as u64).expect("tightness");
        worst = worst.max(t.min_slack);
        c.require(t.min_slack <= tol, format!("{} has slack {:.2e}", p.inequalities[i].render(), t.min_slack));
    }
    c.note(format!("worst facet slack {worst:.1e}"));
}

fn monte_carlo(c: &mut Checks, p: &PolytopeDescription, setup: &GroupSetup, trials: u64) {
    let r = monte_carlo_validate(p, setup, trials, SEED).expect("monte carlo");
    c.require(r.pass && r.violating_samples == 0, format!("{} violating samples", r.violating_samples));
    c.note(format!("{} MC samples, max violation {:.1e}", r.trials, r.max_violation));
}

fn su2_pair(a: f64, b: f64, theta: f64) -> f64 {
    let (co, si) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let u = CMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => C64::new(co, 0.0),
        (0, 1) => C64::new(-si, 0.0),
        _ => C64::new(si, 0.0),
    });
    let m = CMatrix::diag_real(&[a, -a]).add(&u.mul(&CMatrix::diag_real(&[b, -b])).mul(&u.adjoint()));
    eigh(&m).expect("2x2").values[0]
}

fn criterion_1() -> Outcome {
    let mut c = Checks::default();
    let setup = plain("su(2)", 2);
    let p = generate(&setup, Mode::Ressayre);
    c.require(p.inequalities.len() == 3, format!("{} inequalities", p.inequalities.len()));

    // Exact agreement with |a - b| <= c <= a + b on a rational grid.
    let grid: Vec<Rational> = (0..=20).map(|k| frac(k, 20)).collect();
    let mut disagree = 0;
    for a in &grid {
        for b in &grid {
            for x in &grid {
                let pt = Point {
                    xi_tilde: vec![vec![a.clone(), -a.clone()], vec![b.clone(), -b.clone()]],
                    xi: vec![x.clone(), -x.clone()],
                };
                let expected = (a - b).abs() <= *x && *x <= a + b;
                if p.check_membership(&pt).expect("domain").member != expected {
                    disagree += 1;
                }
            }
        }
    }
    c.require(disagree == 0, format!("{disagree} grid points disagree with the triangle region"));

    monte_carlo(&mut c, &p, &setup, 100_000);
    facets(&mut c, &p, &setup, 16, 1e-6);

    // Sampled hull at resolution 1e-2 in a, b and the unitary angle.
    let steps = 100;
    let (mut outside, mut gap) = (0.0f64, 0.0f64);
    for i in 0..=steps {
        for j in 0..=steps {
            let (a, b) = (i as f64 / steps as f64, j as f64 / steps as f64);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..=steps {
                let x = su2_pair(a, b, std::f64::consts::PI * k as f64 / steps as f64);
                let factors = vec![vec![a, -a], vec![b, -b], vec![x, -x]];
                let scale = a.max(b).max(1e-300);
                outside =
                    outside.max(p.inequalities.iter().map(|q| -eval_f64(&q.coeffs_f64(), &factors)).fold(0.0, f64::max) / scale);
                lo = lo.min(x);
                hi = hi.max(x);
            }
            gap = gap.max((lo - (a - b).abs()).abs()).max((hi - (a + b)).abs());
        }
    }
    c.require(outside <= 1e-9, format!("sampled hull leaves the polytope by {outside:.1e}"));
    c.require(gap <= 1e-9, format!("sampled hull misses the region by {gap:.1e}"));
    c.note(format!("hull of {} samples inside", (steps + 1usize).pow(3)));
    c.finish()
}

fn criterion_2() -> Outcome {
    let mut c = Checks::default();
    let setup = plain("su(3)", 2);
    let adm = enumerate_admissible(&setup);
    c.require(adm.len() == 6, format!("{} admissible elements", adm.len()));
    let roots = setup.datum().positive_roots();
    for a in &adm {
        let zero = roots.iter().filter(|r| r.pair(&a.gamma) == int(0)).count();
        c.require(zero == 1, format!("{} is orthogonal to {zero} positive roots", a.gamma));
    }
    let p = generate(&setup, Mode::Ressayre);
    let n_one = p.inequalities.iter().all(|q| q.source.schubert_n == 1.into());
    c.require(n_one, "an emitted pair has schubertN != 1");
    c.note(format!("{} inequalities, all schubertN = 1", p.inequalities.len()));
    monte_carlo(&mut c, &p, &setup, 100_000);
    facets(&mut c, &p, &setup, 24, 1e-5);
    c.finish()
}

fn criterion_3() -> Outcome {
    let mut c = Checks::default();
    let mut pairs = 0;
    for n in 2..=6 {
        for k in 1..n {
            match check_grassmannian(k, n) {
                Ok(m) => pairs += m,
                Err(e) => c.require(false, format!("Gr({k},{n}): {e}")),
            }
        }
    }
    for n in 2..=4 {
        if let Err(e) = check_poincare_duality(n) {
            c.require(false, format!("duality su({n}): {e}"));
        }
    }
    for n in 2..=5 {
        if let Err(e) = check_poincare_polynomials(n) {
            c.require(false, format!("Poincare su({n}): {e}"));
        }
    }
    c.note(format!("{pairs} Grassmannian products match Littlewood-Richardson"));
    c.finish()
}

fn tuples(reps: &[WeylElement], s: usize) -> Vec<Vec<WeylElement>> {
    (0..s).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| reps.iter().map(move |w| [t.clone(), vec![w.clone()]].concat())).collect()
    })
}

fn criterion_4() -> Outcome {
    let mut c = Checks::default();
    let su2 = RootDatum::parse("su(2)").unwrap();
    let h = Coweight::from_ints(&[1, -1]);
    let f = FlagVariety::new(&su2, &h).unwrap();
    c.require(f.class_of_x_gamma() == f.unit(), "X_H is not the unit");
    let f = FlagVariety::new(&su2, &h.neg()).unwrap();
    c.require(f.class_of_x_gamma() == f.point_class(), "X_-H is not the point class");

    let setup = plain("su(3)", 2);
    let mut tested = 0;
    for a in enumerate_admissible(&setup) {
        let g = &a.gamma;
        let flag = FlagVariety::new(setup.datum(), g).unwrap();
        let x_codim = flag.class_of_x_gamma().degrees()[0];
        for w in tuples(&setup.datum().minimal_coset_reps(g), 2) {
            let degree = x_codim + w.iter().map(|wi| flag.class_of_orbit(wi).degrees()[0]).sum::<usize>();
            let held = condition_a(&setup, g, &w).holds;
            c.require(held == (degree == flag.dim()), format!("gamma {g}, w {w:?}: degree {degree}"));
            tested += 1;
        }
    }
    c.note(format!("{tested} su(3) tuples graded consistently"));
    c.finish()
}

fn criterion_5() -> Outcome {
    let mut c = Checks::default();
    let literal = with_v("su(2)", 1, &[NamedRep::Standard(0), NamedRep::Dual(0)], true);
    let p = generate(&literal, Mode::Ressayre);
    c.note(format!("su(2) std+dual: {} inequalities ({})", p.inequalities.len(), p.properness));
    monte_carlo(&mut c, &p, &literal, 10_000);
    for (group, s) in [("u(2)", 1), ("u(2)", 2), ("u(3)", 1)] {
        let setup = with_v(group, s, &[NamedRep::Standard(0)], false);
        let p = generate(&setup, Mode::Ressayre);
        c.require(!p.inequalities.is_empty(), format!("{group} x{s} x V has no inequalities"));
        let r = monte_carlo_validate(&p, &setup, 10_000, SEED).expect("monte carlo");
        c.require(r.pass, format!("{group} x{s} x V: max violation {:.1e}", r.max_violation));
        c.note(format!("{group} x{s} x V: {} inequalities, max violation {:.1e}", p.inequalities.len(), r.max_violation));
        facets(&mut c, &p, &setup, 16, 1e-6);
    }
    c.finish()
}

fn criterion_6() -> Outcome {
    let mut c = Checks::default();
    let d = RootDatum::parse("u(2)").unwrap();
    let rep = Representation::named(&d, &[NamedRep::Standard(0), NamedRep::Standard(0)]).unwrap();
    let mm = MomentMap::new(&d, rep).with_shift(&d, &[1.0, 1.0]).unwrap();
    let gammas: Vec<Coweight> = [[1, 0], [0, 1], [-1, 0], [0, -1], [1, -1], [-1, 1], [1, 1], [-1, -1]]
        .iter()
        .map(|g| Coweight::from_ints(g))
        .collect();
    let r = check_limit_proposition(&mm, &gammas, 60, SEED).expect("limit");
    c.require(r.margins.len() >= 100, format!("only {} semistable samples with limits", r.margins.len()));
    c.require(r.pass, format!("max margin {:?}", r.max_margin));
    c.note(format!(
        "{} samples, max margin {:.1e}, skipped {} without limit and {} unstable",
        r.margins.len(),
        r.max_margin.unwrap_or(f64::NAN),
        r.skipped_no_limit,
        r.skipped_unstable
    ));

    let mut floor = f64::INFINITY;
    for m in &r.margins {
        let g = gammas.iter().find(|g| g.coords().iter().map(|x| x.to_string()).eq(m.gamma.iter().cloned())).unwrap();
        let x = limit_sample(&mm, g, SEED, m.stream, m.draw % 2 == 0);
        let flow = gradient_flow(&mm, &x, &FlowOptions::default());
        c.require(flow.is_semistable(), format!("stream {} is no longer semistable", m.stream));
        for h in &gammas {
            let dir = mm.torus_coords(&h.to_f64());
            match kempf_ness_along_ray(&mm, &x, &dir, 50.0, 25) {
                Ok(pts) => {
                    let low = pts.iter().map(|p| p.psi).fold(f64::INFINITY, f64::min);
                    let slope = pts.last().unwrap().slope;
                    floor = floor.min(low);
                    c.require(slope >= -1e-9, format!("stream {}: Psi decreasing at t = 50 along {h}", m.stream));
                }
                Err(e) => c.require(false, format!("stream {}: {e}", m.stream)),
            }
        }
    }
    c.note(format!("Kempf-Ness minimum over [0, 50] is {floor:.3}"));
    c.finish()
}

fn verdicts(p: &PolytopeDescription, factors: &[Vec<f64>], scale: f64) -> bool {
    p.min_value_f64(factors) >= -MEMBERSHIP_TOL * scale
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, copies: usize) -> Point {
    let mut block = || {
        let mut v: Vec<i64> = (0..n).map(|_| rng.random_range(-6..=6)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let sum: i64 = v.iter().sum();
        v.iter().map(|&x| frac(n as i64 * x - sum, n as i64)).collect::<Vec<_>>()
    };
    Point { xi_tilde: (0..copies).map(|_| block()).collect(), xi: block() }
}

fn criterion_7() -> Outcome {
    let mut c = Checks::default();
    let setup = plain("su(3)", 2);
    let base = generate(&setup, Mode::Ressayre);
    let rendered = |p: &PolytopeDescription| p.inequalities.iter().map(|q| q.render()).collect::<Vec<_>>();
    for q in [2, 3, 5] {
        let scaled =
            generate_inequalities(&setup, &GenerateOptions { gamma_scale: q, ..Default::default() }).expect("generation");
        c.require(rendered(&scaled) == rendered(&base), format!("gamma -> {q} gamma changes the inequalities"));
    }

    for (group, s) in [("su(3)", 2), ("su(2)", 3)] {
        let setup = plain(group, s);
        let r = generate(&setup, Mode::Ressayre);
        let i = generate(&setup, Mode::Infinitesimal);
        let mut disagree = 0;
        for draw in 0..20_000 {
            let sample = draw_sample(&r.datum, s, SEED, draw).expect("sample");
            let mut factors = sample.inputs.clone();
            factors.push(sample.output.clone());
            let scale = factors.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            if verdicts(&r, &factors, scale) != verdicts(&i, &factors, scale) || !verdicts(&r, &factors, scale) {
                disagree += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let n = r.datum.ambient_dim();
        let mut members = 0;
        for _ in 0..5_000 {
            let pt = random_point(&mut rng, n, s);
            let (a, b) = (r.check_membership(&pt).unwrap().member, i.check_membership(&pt).unwrap().member);
            members += a as usize;
            disagree += (a != b) as usize;
        }
        c.require(disagree == 0, format!("{group} x{s}: {disagree} verdicts differ between modes"));
        c.note(format!(
            "{group} x{s}: {} vs {} inequalities agree on 25000 points ({members} exact members)",
            r.inequalities.len(),
            i.inequalities.len()
        ));
    }

    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let p = generate(&setup, Mode::Ressayre);
            let mc = monte_carlo_validate(&p, &setup, 2_000, SEED).unwrap();
            let t = facet_tightness(&p, &setup, 0, 8, SEED).unwrap();
            let mm = moment_map_for(&setup).unwrap();
            (p.to_json(), serde_json::to_string(&mc).unwrap(), t.min_slack.to_bits(), mm.is_none())
        })
    };
    c.require(run(1) == run(4), "outputs differ between 1 and 4 threads");
    c.note("threads 1 and 4 byte-identical");
    c.finish()
}

type Criterion = (&'static str, fn() -> Outcome, f64);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 su(2)^2 triangle region", criterion_1, 60.0),
        ("2 su(3)^2 admissible, Schubert and Monte Carlo", criterion_2, 600.0),
        ("3 Schubert engine", criterion_3, f64::INFINITY),
        ("4 X_gamma classes and grading", criterion_4, f64::INFINITY),
        ("5 Euler class pipeline with V", criterion_5, f64::INFINITY),
        ("6 limits of semistable points", criterion_6, f64::INFINITY),
        ("7 scaling, modes and threads", criterion_7, f64::INFINITY),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let mut o = f();
        let secs = start.elapsed().as_secs_f64();
        if secs > budget {
            o = outcome(false, format!("took {secs:.1}s, budget {budget}s; {}", o.detail));
        }
        println!("{} [{name}] ({secs:.1}s) {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
