//! Acceptance suite: one test per gate criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Tolerances are exact-rational
//! equality everywhere; wall-clock budgets are asserted where stated.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csf_core::alexander::{cosmetic_solve, exhaustive_solutions, GenusTwoSymmetric};
use csf_core::cobordism::{
    asd_index, broken_index_bound, certify_chain, degree_level, load_chain_spec,
    minimal_reducible, reducibles_on_n, BreakScenario, ChainStep, CobordismTopology, FlatLimit,
    Relation,
};
use csf_core::floer::ManifoldData;
use csf_core::gen;
use csf_core::ip::{IpModule, MorphismMeta, Slack};
use csf_core::rational::{rat, rat_int, ExtRat};
use csf_core::triangle::{surgery_ranks, GradedDims, TriangleFile};

fn data(file: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(file);
    p
}

#[test]
fn acceptance_1_poincare_sphere_invariants() {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_csf"))
        .args(["--json", "ell", data("poincare.json").to_str().unwrap()])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8_lossy(&out.stdout))
        .expect("JSON report");
    assert_eq!(v["results"]["ell"], "-13/60");
    let kappa = v["results"]["kappa"].as_array().unwrap();
    assert_eq!(kappa[1]["value"], "1/120");
    assert_eq!(kappa[5]["value"], "49/120");
    assert_eq!(kappa[2]["value"], "inf");

    // Library-level exact values, including the shifted degree.
    let m = ManifoldData::load(&data("poincare.json")).unwrap();
    assert_eq!(m.ell(), ExtRat::Finite(rat(-13, 60)));
    assert_eq!(m.kappa(1), ExtRat::Finite(rat(1, 120)));
    assert_eq!(m.kappa(5), ExtRat::Finite(rat(49, 120)));
    assert_eq!(m.kappa(9), ExtRat::Finite(rat(121, 120)));
    assert_eq!(m.kappa(2), ExtRat::PosInf);

    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 1: PASS — ell = -13/60 and the kappa table are exact ({elapsed:?})");
}

#[test]
fn acceptance_2_persistence_oracle_on_random_complexes() {
    let started = Instant::now();
    let mut checked_pairs = 0usize;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
        let c = gen::random_filtered_complex(&mut rng, 40);
        let barcode = c.barcode();
        for d in 0..8 {
            let crit = c.critical_values(d);
            for (i, r) in crit.iter().enumerate() {
                assert_eq!(
                    barcode.dim_at(r, d),
                    c.sublevel_homology(r, d),
                    "seed {seed} degree {d} r {r}"
                );
                for r2 in crit[i..].iter() {
                    assert_eq!(
                        barcode.connecting_rank(r, r2, d).unwrap(),
                        c.sublevel_map_rank(r, r2, d),
                        "seed {seed} degree {d} pair ({r}, {r2})"
                    );
                    checked_pairs += 1;
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "acceptance 2: PASS — barcode ranks match brute force on 1000 complexes, {checked_pairs} level pairs ({elapsed:?})"
    );
}

#[test]
fn acceptance_3_periodicity_axioms_on_produced_modules() {
    let mut produced = 0usize;
    let check = |m: &IpModule| {
        for d in -8..16i64 {
            let k = m.kappa(d);
            assert!(k > ExtRat::NegInf);
            assert_eq!(m.kappa(d + 8), k.add_rat(&rat_int(1)), "degree {d}");
        }
        let ell = m.ell();
        assert!(ell > ExtRat::NegInf);
        assert_eq!(ell == ExtRat::PosInf, m.limit_is_zero());
    };
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_3000 + seed);
        check(&IpModule::new(gen::random_barcode(&mut rng, 14)));
        produced += 1;
    }
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_3100 + seed);
        let c = gen::random_filtered_complex(&mut rng, 24);
        check(&IpModule::new(c.barcode()));
        produced += 1;
    }
    for file in ["poincare.json", "s3-empty.json", "toy-finite-bar.json"] {
        check(&ManifoldData::load(&data(file)).unwrap().ip_module());
        produced += 1;
    }
    println!("acceptance 3: PASS — kappa shift and the ell-finiteness rule hold on {produced} modules");
}

#[test]
fn acceptance_4_triangle_detection_on_generated_instances() {
    let mut total_dim_sum = 0usize;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_4000 + seed);
        let t = gen::random_triangle_data(&mut rng, 24);
        assert!(t.total_dim() <= 24);
        total_dim_sum += t.total_dim();
        let report = t.verify_identities();
        assert!(report.ok, "seed {seed}: {:?}", report.first_failure);
        assert!(report.q_established(), "seed {seed}");
        let verdict = t.detect().expect("identities hold");
        for c in &verdict.cone_checks {
            assert_eq!(
                c.homology_dim, c.cone_homology_dim,
                "seed {seed}: H(C{}) vs cone of f{}",
                c.slot, c.cone_of
            );
            assert!(c.comparison_iso, "seed {seed}: comparison at slot {}", c.slot);
        }
        assert!(verdict.ok, "seed {seed}");
    }

    // The zero-middle-vertex instance: the long map across the zero vertex
    // must be a quasi-isomorphism.
    let (_, t) = TriangleFile::load(&data("triangle-zero-middle.json")).unwrap();
    let verdict = t.detect().unwrap();
    assert!(verdict.ok);
    let note = &verdict.zero_vertex_notes[0];
    assert_eq!((note.g_slot, note.target_slot), (1, 2));
    assert!(note.quasi_isomorphism);
    println!(
        "acceptance 4: PASS — 200/200 generated triangles detected (mean dim {:.1}), zero-vertex instance gives the g isomorphism",
        total_dim_sum as f64 / 200.0
    );
}

#[test]
fn acceptance_5_surgery_rank_calculus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_5000);
    for _ in 0..50 {
        let base = GradedDims::new((0..8).map(|_| rng.random_range(0..5usize)).collect());
        for n in 1..=6i64 {
            for sign in [1i64, -1] {
                let m = n * sign;
                let out = surgery_ranks(m, &base).unwrap();
                assert_eq!(out.total(), n as usize * base.total(), "n = {m}");
                if n >= 2 {
                    // Dropping the last summand gives the previous member.
                    let prev = surgery_ranks(m - sign, &base).unwrap();
                    for d in 0..8i64 {
                        assert_eq!(
                            out.dim(d) - base.dim(d + 2 * (n - 1) * sign),
                            prev.dim(d),
                            "n = {m} degree {d}"
                        );
                    }
                }
            }
        }
    }
    // Derived example: base supported at degrees 1 and 5 (the minus-one
    // surgery pattern of the left trefoil), n = -2.
    let base = GradedDims::new(vec![0, 1, 0, 0, 0, 1, 0, 0]);
    let out = surgery_ranks(-2, &base).unwrap();
    assert_eq!(out.dims(), &[0, 1, 0, 1, 0, 1, 0, 1]);
    println!("acceptance 5: PASS — rank decomposition, projections, and the trefoil-derived pattern are exact");
}

#[test]
fn acceptance_6_cobordism_arithmetic() {
    // Degree/level triples.
    let topo = |c2, fam| CobordismTopology {
        b1: 0,
        b_plus: 0,
        c_squared: c2,
        simply_connected: true,
        family_dim: fam,
        middle_ends: vec![],
    };
    let m = degree_level(&topo(rat(0, 1), 0)).unwrap();
    assert_eq!((m.degree, m.level_base.clone(), m.slack), (0, rat(0, 1), Slack::Positive));
    let m = degree_level(&topo(rat(-1, 1), 0)).unwrap();
    assert_eq!((m.degree, m.level_base.clone(), m.slack), (2, rat(1, 4), Slack::Positive));
    let m = degree_level(&topo(rat(-1, 1), 1)).unwrap();
    assert_eq!((m.degree, m.level_base.clone(), m.slack), (3, rat(1, 4), Slack::Positive));

    // The minimal reducible on the three-ended piece: 1 - 3 + 1 = -1.
    use FlatLimit::*;
    assert_eq!(
        asd_index(&rat_int(1), 0, &[Central, Central, Abelian]),
        rat_int(-1)
    );

    // Reducible enumeration: unique minimum at n = 1, strictly increasing.
    let list = reducibles_on_n(&rat(-1, 2), 1..=10);
    let (pos, unique) = minimal_reducible(&list).unwrap();
    assert_eq!(list[pos].n, 1);
    assert!(unique);
    assert_eq!(list[0].index, rat_int(-1));
    for w in list.windows(2) {
        assert!(w[0].index < w[1].index);
    }

    // Broken-instanton bounds.
    assert_eq!(broken_index_bound(&BreakScenario::ReducibleComponent), -4);
    assert_eq!(broken_index_bound(&BreakScenario::ReducibleIntermediate { hops: 2 }), 1);
    assert_eq!(broken_index_bound(&BreakScenario::ReducibleIntermediate { hops: 3 }), 0);
    println!("acceptance 6: PASS — degree/level, index, reducible enumeration, and case bounds are exact");
}

#[test]
fn acceptance_7_certificate_engine() {
    // The opposite-slope step: strict gap of 1/8.
    let (_, steps) = load_chain_spec(&data("certificate-pm-one.json")).unwrap();
    let cert = certify_chain(&steps).unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].relation, Relation::Lt);
    assert_eq!(cert.steps[0].offset, rat(-1, 8));
    assert_eq!(cert.cumulative_offset, rat(-1, 8));
    assert!(cert.cumulative_strict);
    assert!(!cert.conditional && !cert.contradictory);

    // Ladders of every length up to 8 emit one strict inequality per step.
    for n in 1..=8usize {
        let steps: Vec<ChainStep> = (0..n)
            .map(|i| ChainStep {
                label: format!("step{i}"),
                source: format!("ell(S{i})"),
                target: format!("ell(S{})", i + 1),
                morphism: MorphismMeta::new(0, rat(0, 1), Slack::Positive),
                injectivity: Some("surgery-triangle-collapse".into()),
                nonvanishing: Some("irreducible-representations-exist".into()),
            })
            .collect();
        let cert = certify_chain(&steps).unwrap();
        assert_eq!(cert.steps.len(), n);
        assert!(cert.steps.iter().all(|s| s.relation == Relation::Lt));
        assert!(cert.cumulative_strict);
        assert!(!cert.contradictory);
    }

    // The cyclic pattern is flagged contradictory.
    let (_, steps) = load_chain_spec(&data("certificate-cyclic.json")).unwrap();
    let cert = certify_chain(&steps).unwrap();
    assert!(cert.cyclic);
    assert!(cert.contradictory);
    println!("acceptance 7: PASS — strict 1/8 gap, n-step ladders, and the cyclic contradiction flag");
}

#[test]
fn acceptance_8_alexander_pipeline() {
    let started = Instant::now();
    let report = cosmetic_solve();
    assert_eq!(report.normalized, GenusTwoSymmetric { a: 0, b: 0, c: 1 });
    assert_eq!(
        report.raw_solutions,
        vec![
            GenusTwoSymmetric { a: 0, b: 0, c: 1 },
            GenusTwoSymmetric { a: 0, b: 0, c: -1 },
        ]
    );
    // Intermediate identities: the linear form 8a + 2b and the lifted
    // derivative ±4a.
    assert_eq!(report.second_derivative_form, [8, 2, 0]);
    assert_eq!(
        report.cover_second_derivative[0],
        csf_core::alexander::LaurentPoly::monomial(4, 1)
    );
    assert_eq!(
        report.cover_second_derivative[1],
        csf_core::alexander::LaurentPoly::monomial(-4, 1)
    );
    // Exhaustive search over |a|, |b|, |c| <= 50.
    let found = exhaustive_solutions(50);
    assert_eq!(
        found,
        vec![
            GenusTwoSymmetric { a: 0, b: 0, c: -1 },
            GenusTwoSymmetric { a: 0, b: 0, c: 1 },
        ]
    );
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("acceptance 8: PASS — only the trivial polynomial survives; exhaustive bound 50 ({elapsed:?})");
}
