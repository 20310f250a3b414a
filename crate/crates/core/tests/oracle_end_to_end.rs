mod common;

use common::*;
use momentope::oracle::linalg::C64;
use momentope::oracle::sample::random_vector;
use momentope::oracle::{
    check_limit_proposition, facet_tightness, gradient_flow, kempf_ness_along_ray, monte_carlo_validate,
    validate::tightness_of, FlowOptions, MomentMap, NamedRep, Representation,
};
use momentope::ressayre::{generate_inequalities, GenerateOptions, PolytopeDescription};
use momentope::roots::{Coweight, RootDatum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generate(setup: &momentope::admissible::GroupSetup) -> PolytopeDescription {
    generate_inequalities(setup, &GenerateOptions::default()).unwrap()
}

fn assert_valid(setup: &momentope::admissible::GroupSetup, trials: u64) {
    let p = generate(setup);
    assert!(!p.inequalities.is_empty());
    let r = monte_carlo_validate(&p, setup, trials, 7).unwrap();
    assert!(r.pass, "max violation {}", r.max_violation);
    assert_eq!(r.violating_samples, 0);
    for i in 0..p.inequalities.len() {
        let t = facet_tightness(&p, setup, i, 16, 11).unwrap();
        assert!(t.facet, "{} has slack {}", p.inequalities[i].render(), t.min_slack);
    }
}

#[test]
fn cotangent_polytopes_validate() {
    assert_valid(&plain("su(2)", 2), 2000);
    assert_valid(&plain("su(3)", 2), 2000);
    assert_valid(&plain("su(2)", 3), 2000);
}

#[test]
fn polytopes_with_v_validate() {
    assert_valid(&with_v("u(2)", 1, &[NamedRep::Standard(0)], false), 2000);
    assert_valid(&with_v("u(3)", 1, &[NamedRep::Standard(0)], false), 2000);
    assert_valid(&with_v("u(2)", 2, &[NamedRep::Standard(0)], false), 2000);
}

#[test]
fn flipped_inequality_is_caught() {
    let setup = plain("su(3)", 2);
    let mut p = generate(&setup);
    let q = &mut p.inequalities[0];
    for x in q.xi_tilde.iter_mut().flatten().chain(q.xi.iter_mut()) {
        *x = -x.clone();
    }
    let r = monte_carlo_validate(&p, &setup, 1000, 3).unwrap();
    assert!(!r.pass);
    assert!(r.violation_rate() > 0.1, "{}", r.violation_rate());
}

#[test]
fn slack_inequality_is_not_a_facet() {
    // 2a + 2b + 2c >= 0 on su(2)^2 dominant coordinates holds with room.
    let setup = plain("su(2)", 2);
    let p = generate(&setup);
    let coeffs = vec![vec![1.0, -1.0], vec![1.0, -1.0], vec![1.0, -1.0]];
    let (min, _) = tightness_of(&p, None, &coeffs, None, 16, 5).unwrap();
    assert!(min > 1e-2, "{min}");
}

#[test]
fn zero_trials_and_fingerprints() {
    let setup = plain("su(2)", 2);
    let p = generate(&setup);
    let r = monte_carlo_validate(&p, &setup, 0, 1).unwrap();
    assert!(r.pass);
    assert_eq!(r.trials, 0);
    assert!(monte_carlo_validate(&p, &plain("su(2)", 3), 10, 1).is_err());
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let setup = plain("su(3)", 2);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let p = generate(&setup);
            let r = monte_carlo_validate(&p, &setup, 500, 9).unwrap();
            let t = facet_tightness(&p, &setup, 1, 8, 2).unwrap();
            (p.to_json(), serde_json::to_string(&r).unwrap(), t.min_slack.to_bits())
        })
    };
    assert_eq!(run(1), run(4));
}

fn u2_two_copies() -> (RootDatum, MomentMap) {
    let d = RootDatum::parse("u(2)").unwrap();
    let rep = Representation::named(&d, &[NamedRep::Standard(0), NamedRep::Standard(0)]).unwrap();
    let mm = MomentMap::new(&d, rep).with_shift(&d, &[1.0, 1.0]).unwrap();
    (d, mm)
}

fn gammas() -> Vec<Coweight> {
    [[1, 0], [0, 1], [-1, 0], [0, -1], [1, -1], [-1, 1], [1, 1], [-1, -1]]
        .iter()
        .map(|g| Coweight::from_ints(g))
        .collect()
}

#[test]
fn limits_of_semistable_points() {
    let (_, mm) = u2_two_copies();
    let r = check_limit_proposition(&mm, &gammas(), 40, 4).unwrap();
    assert!(r.pass, "{:?}", r.max_margin);
    assert!(r.margins.len() >= 100, "{}", r.margins.len());
    assert!(r.skipped_no_limit > 0);
    assert_eq!(r.margins.len() as u64 + r.skipped_no_limit + r.skipped_unstable, 40 * 8);
}

#[test]
fn kempf_ness_bounded_below_for_semistable_points() {
    let (_, mm) = u2_two_copies();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    for _ in 0..10 {
        let x: Vec<C64> = random_vector(mm.dim_v(), &mut rng);
        if !gradient_flow(&mm, &x, &FlowOptions::default()).is_semistable() {
            continue;
        }
        for g in gammas() {
            let dir = mm.torus_coords(&g.to_f64());
            let pts = kempf_ness_along_ray(&mm, &x, &dir, 50.0, 50).unwrap();
            let last = pts.last().unwrap();
            // Bounded below means the slope is eventually non-negative.
            assert!(last.slope >= -1e-9, "slope {} along {g:?}", last.slope);
            let floor = pts.iter().map(|p| p.psi).fold(f64::INFINITY, f64::min);
            assert!(last.psi >= floor - 1e-9);
            checked += 1;
        }
    }
    assert!(checked >= 40);
}
