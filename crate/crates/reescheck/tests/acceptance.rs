//! Acceptance gate: one test per shipped guarantee, each printing a
//! single pass line (visible with `--nocapture`). Every check is
//! exact; there are no tolerances anywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use reescheck::depth::{analyze_general, analyze_worked_example, Verdict, WorkedExample};
use reescheck::forms::BinaryForm;
use reescheck::genrank::{
    assignment_from_forms, concat_a, maximal_rank_certificate, q_form, RankStrategy,
};
use reescheck::graded::{general_forms, general_hilbert_function, GradedIdeal};
use reescheck::rrtest::{conjecture_check, content_system, rr_test, RRMethod};
use reescheck::scalars::{DenseMatrix, FieldSpec, Scalar};

const P: u64 = 2_147_483_647;

fn fp() -> FieldSpec {
    FieldSpec::prime(P).unwrap()
}

fn general(d: usize, seed: u64) -> Vec<BinaryForm> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    general_forms(fp(), d, &mut rng).unwrap().0
}

fn pass(n: usize, what: &str) {
    println!("criterion {n:2}: pass ({what})");
}

#[test]
fn criterion_01_syzygy_degree_profile() {
    for d in 2..=12usize {
        for seed in [11, 22, 33] {
            let ideal = GradedIdeal::new(general(d, seed)).unwrap();
            let profile = ideal.syzygy_profile().unwrap();
            assert_eq!(profile, vec![d / 2, d.div_ceil(2)], "degree {d} seed {seed}");
            assert_eq!(profile.iter().sum::<usize>(), d, "degree {d} seed {seed}");
        }
    }
    pass(1, "syzygy profile {d/2 floor, d/2 ceil} for d = 2..=12, 3 seeds");
}

#[test]
fn criterion_02_hilbert_function_table() {
    for d in [5usize, 6, 7, 8] {
        for seed in [44, 55, 66] {
            let ideal = GradedIdeal::new(general(d, seed)).unwrap();
            let mut zeros = 0;
            let mut t = 0;
            while zeros < 2 {
                let h = ideal.hilbert_function(t);
                assert_eq!(h, general_hilbert_function(d, t), "degree {d} piece {t}");
                zeros = if h == 0 { zeros + 1 } else { 0 };
                t += 1;
            }
            if d % 2 == 1 {
                let s = (d - 1) / 2;
                assert_eq!(ideal.hilbert_function(3 * s), 1, "degree {d} socle");
            } else {
                let s = d / 2;
                assert_eq!(ideal.hilbert_function(3 * s - 2), 2, "degree {d} socle");
                assert_eq!(ideal.hilbert_function(3 * s - 1), 0, "degree {d} top");
            }
        }
    }
    pass(2, "Hilbert function tables match the closed formula for d = 5,6,7,8");
}

#[test]
fn criterion_03_maximal_rank_certificates() {
    for d in [5usize, 7, 9, 11, 13, 10, 12, 14] {
        let target = if d % 2 == 1 {
            5 * ((d - 1) / 2) + 2
        } else {
            5 * (d / 2) - 1
        };
        for strategy in [RankStrategy::Phi, RankStrategy::Random] {
            for seed in [0, 1, 2] {
                let seed = matches!(strategy, RankStrategy::Random).then_some(seed);
                let cert = maximal_rank_certificate(d, false, strategy, fp(), seed).unwrap();
                assert_eq!(cert.target_rank, target, "degree {d} {strategy}");
                assert!(cert.full_rank(), "degree {d} {strategy} seed {seed:?}");
            }
        }
    }
    pass(3, "maximal rank for odd d in {5..13} and even d in {10,12,14}, both strategies");
}

#[test]
fn criterion_04_specialization_bridge() {
    for d in [5usize, 7, 10, 11] {
        for seed in [77, 88, 99] {
            let forms = general(d, seed);
            let content = content_system(&forms).unwrap().matrix;
            let assignment = assignment_from_forms(&forms).unwrap();
            let specialized = concat_a(d).unwrap().specialize(fp(), &assignment).unwrap();
            assert_eq!(content, specialized, "degree {d} seed {seed}");
        }
    }
    pass(4, "content matrix equals the specialized generic matrix for d = 5,7,10,11");
}

#[test]
fn criterion_05_closure_strictly_larger() {
    for d in [5usize, 7, 9, 11, 10, 12] {
        for seed in [12, 23, 34] {
            let forms = general(d, seed);
            let report = rr_test(&forms, RRMethod::Both).unwrap();
            let content = report.content.as_ref().unwrap();
            let colon = report.colon.as_ref().unwrap();
            assert!(content.strictly_larger, "degree {d} seed {seed} content");
            assert!(colon.strictly_larger, "degree {d} seed {seed} colon");
            assert_eq!(report.verdicts_agree(), Some(true), "degree {d} seed {seed}");

            let cs = content_system(&forms).unwrap();
            assert_eq!(content.witnesses.len(), cs.targets.len());
            for witness in &content.witnesses {
                let target = &cs.targets[witness.target_index];
                let mut acc = BinaryForm::zero(fp(), target.monomial.degree() + d);
                for ((i, k), h) in &witness.cofactors {
                    let product = forms[*i].multiply(&forms[*k]).unwrap();
                    acc = acc.add(&h.multiply(&product).unwrap()).unwrap();
                }
                let rhs = target.monomial.multiply(&forms[target.form_index]).unwrap();
                assert_eq!(acc, rhs, "degree {d} seed {seed} target {}", target.label);
            }
        }
    }
    pass(5, "closure strictly larger, routes agree, cofactors reconstruct exactly");
}

#[test]
fn criterion_06_degree_six_table() {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let (_, _, analysis) = analyze_general(fp(), 6, &mut rng).unwrap();
    assert_eq!(analysis.reduction.reduction_number, 5);
    assert_eq!(analysis.ladder.lambdas[0], 9);
    assert_eq!(analysis.ladder.lambdas[1], 3);
    assert_eq!(analysis.ladder.lambdas[2], 3);
    assert_eq!(analysis.ladder.rung_generator_degrees[2], vec![2, 2, 2]);
    assert_eq!(analysis.fit.e1, 15);
    assert!(analysis.ladder.sum >= 17);
    assert!(analysis.ladder.sum > 15);
    assert_eq!(analysis.verdict, Verdict::DepthOne);
    pass(6, "d=6: lambdas start 9,3,3 with cube rung (x,y)^2, sum 17 > 15, depth one");
}

#[test]
fn criterion_07_degree_eight_table() {
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let (_, _, analysis) = analyze_general(fp(), 8, &mut rng).unwrap();
    assert_eq!(analysis.ladder.lambdas[0], 16);
    assert_eq!(analysis.ladder.lambdas[1], 6);
    assert_eq!(analysis.ladder.lambdas[2], 3);
    assert_eq!(analysis.fit.e1, 28);
    assert!(analysis.ladder.sum >= 29);
    assert!(analysis.ladder.sum > 28);
    assert_eq!(analysis.verdict, Verdict::DepthOne);
    pass(7, "d=8: lambdas start 16,6,3, sum 29 > 28, depth one");
}

#[test]
fn criterion_08_worked_examples() {
    let a = analyze_worked_example(WorkedExample::A).unwrap();
    let a_gens: Vec<String> = a.reduction.j_gens.iter().map(ToString::to_string).collect();
    assert_eq!(a_gens, ["x^6", "x^4*y^2 - y^6"]);
    assert_eq!(a.ladder.lambdas, [9, 2, 2, 1, 1]);
    assert_eq!(a.ladder.sum, 15);
    assert_eq!(a.fit.e1, 15);
    assert_eq!(a.verdict, Verdict::AlmostCohenMacaulay);

    let b = analyze_worked_example(WorkedExample::B).unwrap();
    let b_gens: Vec<String> = b.reduction.j_gens.iter().map(ToString::to_string).collect();
    assert_eq!(b_gens, ["x^6 - 2*x^3*y^3", "x^4*y^2 - y^6"]);
    assert_eq!(b.ladder.lambdas, [9, 3, 1, 1, 1]);
    assert_eq!(b.ladder.sum, 15);
    assert_eq!(b.fit.e1, 15);
    assert_eq!(b.verdict, Verdict::AlmostCohenMacaulay);

    let (_, forms) = reescheck::depth::worked_example_forms(WorkedExample::B).unwrap();
    let ideal = GradedIdeal::new(forms.to_vec()).unwrap();
    let j = GradedIdeal::new(b.reduction.j_gens.clone()).unwrap();
    let colon = j
        .product(&ideal.power(2).unwrap())
        .unwrap()
        .colon(&ideal.power(3).unwrap())
        .unwrap();
    assert_eq!(colon.minimal_generator_degrees(), [1, 1]);
    pass(8, "worked examples: ladders (9,2,2,1,1) and (9,3,1,1,1), sums 15, almost CM");
}

#[test]
fn criterion_09_hilbert_samuel_fit() {
    for d in [5usize, 6, 7, 8] {
        let mut rng = ChaCha20Rng::seed_from_u64(d as u64 + 40);
        let (_, _, analysis) = analyze_general(fp(), d, &mut rng).unwrap();
        assert_eq!(analysis.fit.e0, (d * d) as i64, "degree {d}");
        assert_eq!(analysis.fit.e1, (d * (d - 1) / 2) as i64, "degree {d}");
        assert_eq!(analysis.fit.postulation_ok, Some(true), "degree {d}");
    }
    pass(9, "fitted (e0, e1) = (d^2, d(d-1)/2) with clean postulation for d = 5..8");
}

#[test]
fn criterion_10_property_suites() {
    let f = fp();
    let mut rng = ChaCha20Rng::seed_from_u64(1010);

    let pairs: [(u8, u8); 6] = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];
    for _ in 0..8 {
        let d = 4 + (rand::Rng::gen_range(&mut rng, 0..5) as usize);
        let forms: Vec<BinaryForm> = (0..3)
            .map(|_| BinaryForm::random(f, d, &mut rng).unwrap())
            .collect();
        let assign = assignment_from_forms(&forms).unwrap();
        for &(t1, t2) in &pairs {
            let product = forms[t1 as usize - 1].multiply(&forms[t2 as usize - 1]).unwrap();
            for r in 0..=2 * d {
                let q = q_form(d, r, t1, t2).unwrap();
                assert_eq!(q.evaluate(f, &assign).unwrap(), product.coeff(r).clone());
            }
        }
    }

    for _ in 0..8 {
        let da = 3 + (rand::Rng::gen_range(&mut rng, 0..3) as usize);
        let db = 2 + (rand::Rng::gen_range(&mut rng, 0..3) as usize);
        let a = GradedIdeal::new(vec![
            BinaryForm::random(f, da, &mut rng).unwrap(),
            BinaryForm::random(f, da + 1, &mut rng).unwrap(),
        ])
        .unwrap();
        let b = GradedIdeal::new(vec![
            BinaryForm::random(f, db, &mut rng).unwrap(),
            BinaryForm::random(f, db + 1, &mut rng).unwrap(),
        ])
        .unwrap();
        let colon = a.colon(&b).unwrap();
        for h in colon.minimal_generators() {
            for g in b.gens() {
                assert!(a.contains(&h.multiply(g).unwrap()).unwrap());
            }
        }
    }

    for _ in 0..12 {
        let rows = 2 + (rand::Rng::gen_range(&mut rng, 0..5) as usize);
        let cols = 2 + (rand::Rng::gen_range(&mut rng, 0..5) as usize);
        let m = DenseMatrix::from_fn(f, rows, cols, |_, _| f.random(&mut rng).unwrap()).unwrap();
        let kernel = m.kernel_basis();
        assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            assert!(m.mat_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    let q = FieldSpec::Rationals;
    for _ in 0..12 {
        let entries: Vec<Vec<i64>> = (0..6)
            .map(|_| (0..6).map(|_| rand::Rng::gen_range(&mut rng, -9..=9)).collect())
            .collect();
        let m = DenseMatrix::from_i64_rows(q, &entries);
        assert_eq!(m.determinant().unwrap(), m.naive_determinant().unwrap());
        assert_eq!(m.rank(), m.naive_rank());
    }
    pass(10, "product quadrics, colon soundness, kernel/rank duality, dual elimination");
}

#[test]
fn criterion_11_companion_conjecture_nonblocking() {
    let mut mismatches = Vec::new();
    for d in [5usize, 7, 9] {
        for seed in [45, 56, 67] {
            let forms = general(d, seed);
            let report = conjecture_check(&forms).unwrap();
            println!(
                "  recorded: d={d} seed={seed} holds={} inclusions={}",
                report.holds, report.inclusions_checked
            );
            if !report.holds {
                mismatches.push((d, seed, report.failures.len()));
            }
        }
    }
    if mismatches.is_empty() {
        pass(11, "companion square inclusions recorded, holding at every pinned seed");
    } else {
        println!(
            "criterion 11: recorded ({} pinned seed(s) now violate the inclusion; \
             this opens an investigation, not a build failure: {mismatches:?})",
            mismatches.len()
        );
    }
}
