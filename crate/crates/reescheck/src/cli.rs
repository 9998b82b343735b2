//! Command-line front end: form ingestion, seeded experiment
//! orchestration, and machine-readable verification reports.
//!
//! Four subcommands cover the four pipelines (`syzygy`, `rank`, `rr`,
//! `depth`), each emitting one JSON report document to stdout and
//! optionally to `--out`. The `--verify <report>` mode re-checks the
//! witnesses stored in an existing report without redoing the full
//! run. Exit codes: 0 when every check matched its expectation, 1
//! when a mathematical check failed, 2 on configuration or input
//! errors.

use crate::depth::{
    self, analyze_input_forms, analyze_worked_example, hilbert_burch_generators, lambda_rung,
    run_pipeline, Reduction, Verdict, WorkedExample,
};
use crate::forms::BinaryForm;
use crate::genrank::{certificate_matrix, maximal_rank_certificate, RankStrategy, TVar};
use crate::graded::{
    expected_syzygy_degrees, general_forms, general_hilbert_function, GradedIdeal, RESAMPLE_CAP,
};
use crate::report::{
    fnv1a_hex, form_from_json, form_to_json, forms_from_json, forms_to_json, object, str_field,
    u64_field, CheckRecord, Outcome, Report,
};
use crate::rrtest::{
    conjecture_check, monomial_witness_check, rr_test, ContentOutcome, RRMethod, RRReport,
};
use crate::scalars::FieldSpec;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "reescheck",
    version,
    about = "Exact checks for ideals of three binary forms: syzygies, generic ranks, \
             Ratliff-Rush closure, and Rees-algebra depth"
)]
struct Cli {
    /// Re-check the witnesses stored in an existing report document.
    #[arg(long, value_name = "REPORT")]
    verify: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Syzygy degree profile and Hilbert function table of a general ideal.
    Syzygy(CommonArgs),
    /// Maximal-rank certificates for the generic block matrix.
    Rank(RankArgs),
    /// Ratliff-Rush strict-enlargement test plus the odd-degree companions.
    Rr(RrArgs),
    /// Minimal reduction, lambda ladder, coefficient fit, and depth verdict.
    Depth(DepthArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Degree of the three general forms (required without --input).
    #[arg(long)]
    degree: Option<usize>,

    /// Seed driving every random draw of the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Coefficient field: "rational" or "gfp:<prime>".
    #[arg(long, default_value = "gfp:2147483647")]
    field: String,

    /// Form file replacing the random draw (JSON; see the README).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    /// Degree of the generic matrix.
    #[arg(long)]
    degree: usize,

    /// Seed for the random-point strategy.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Coefficient field: "rational" or "gfp:<prime>".
    #[arg(long, default_value = "gfp:2147483647")]
    field: String,

    /// Specialization strategy: "phi", "random", or "both".
    #[arg(long, default_value = "both")]
    strategy: String,

    /// Build the matrix outside its supported degrees and record the
    /// rank without an expectation.
    #[arg(long)]
    exploratory: bool,

    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RrArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Route selection: "content", "colon", or "both".
    #[arg(long, default_value = "both")]
    method: String,

    /// Allow the colon oracle alone on even degrees below 10,
    /// recording the outcome without an expectation.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Args)]
struct DepthArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Run a worked example over the rationals instead: "a" or "b".
    #[arg(long)]
    example: Option<String>,
}

/// Parse the process arguments, run, print, and return the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerifyFailed(_)
        | Error::NotMPrimary(_)
        | Error::ResampleCap(_)
        | Error::ReductionCap(_)
        | Error::NonIntegralFit => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    if let Some(path) = &cli.verify {
        if cli.command.is_some() {
            return Err(Error::InvalidInput(
                "--verify replaces the subcommand; pass one or the other".into(),
            ));
        }
        let ok = verify_report(path)?;
        return Ok(if ok { 0 } else { 1 });
    }
    let Some(command) = cli.command else {
        return Err(Error::InvalidInput(
            "a subcommand or --verify is required; see --help".into(),
        ));
    };
    let (report, out) = match command {
        Command::Syzygy(args) => (cmd_syzygy(&args)?, args.out),
        Command::Rank(args) => (cmd_rank(&args)?, args.out.clone()),
        Command::Rr(args) => (cmd_rr(&args)?, args.common.out.clone()),
        Command::Depth(args) => (cmd_depth(&args)?, args.common.out.clone()),
    };
    let rendered = report.render();
    print!("{rendered}");
    if let Some(path) = out {
        std::fs::write(path, &rendered)?;
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

/// The three forms a command runs on, either drawn generally from the
/// seed or loaded from a form file.
struct FormsSource {
    field: FieldSpec,
    degree: usize,
    forms: Vec<BinaryForm>,
    resamples: Vec<String>,
    origin: String,
}

fn acquire_forms(common: &CommonArgs, rng: &mut ChaCha20Rng) -> Result<FormsSource> {
    if let Some(path) = &common.input {
        let (field, forms) = load_form_file(path)?;
        if forms.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "the form file must provide exactly three forms, got {}",
                forms.len()
            )));
        }
        let degree = forms[0].degree();
        if forms.iter().any(|f| f.degree() != degree) {
            return Err(Error::InvalidInput(
                "the three input forms must share one degree".into(),
            ));
        }
        Ok(FormsSource {
            field,
            degree,
            forms,
            resamples: Vec::new(),
            origin: format!("input:{}", path.display()),
        })
    } else {
        let field: FieldSpec = common.field.parse()?;
        let degree = common.degree.ok_or_else(|| {
            Error::InvalidInput("--degree is required without --input".into())
        })?;
        let (forms, log) = general_forms(field, degree, rng)?;
        Ok(FormsSource {
            field,
            degree,
            forms,
            resamples: log.rejections,
            origin: format!("general(seed={})", common.seed),
        })
    }
}

/// Form file grammar: a JSON object with a "field" string and either
/// a "forms" array (each form an object with a "coeffs" string array
/// and an optional "degree") or a "hilbert_burch" 3x2 matrix of such
/// entries whose signed minors become the three forms.
fn load_form_file(path: &Path) -> Result<(FieldSpec, Vec<BinaryForm>)> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let field: FieldSpec = str_field(&doc, "field")?.parse()?;
    if let Some(hb) = doc.get("hilbert_burch") {
        let rows = hb
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::InvalidInput("\"hilbert_burch\" must be a 3x2 array".into()))?;
        let mut matrix: Vec<[BinaryForm; 2]> = Vec::with_capacity(3);
        for row in rows {
            let cells = row
                .as_array()
                .filter(|c| c.len() == 2)
                .ok_or_else(|| Error::InvalidInput("each matrix row needs two entries".into()))?;
            matrix.push([
                form_from_json(field, &cells[0])?,
                form_from_json(field, &cells[1])?,
            ]);
        }
        let rows: [[BinaryForm; 2]; 3] = matrix.try_into().expect("length checked");
        let gens = hilbert_burch_generators(&rows)?;
        Ok((field, gens.to_vec()))
    } else if let Some(forms) = doc.get("forms") {
        Ok((field, forms_from_json(field, forms)?))
    } else {
        Err(Error::InvalidInput(
            "the form file needs a \"forms\" array or a \"hilbert_burch\" matrix".into(),
        ))
    }
}

fn config_json(common: &CommonArgs, extra: Vec<(&str, Value)>) -> Value {
    let mut pairs = vec![
        ("degree", json!(common.degree)),
        ("seed", json!(common.seed)),
        ("field", json!(common.field)),
        (
            "input",
            json!(common.input.as_ref().map(|p| p.display().to_string())),
        ),
        ("resample_cap", json!(RESAMPLE_CAP)),
    ];
    pairs.extend(extra);
    object(pairs)
}

fn digest(parts: &[&str]) -> String {
    fnv1a_hex(&parts.join("|"))
}

fn forms_repr(forms: &[BinaryForm]) -> String {
    forms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_syzygy(args: &CommonArgs) -> Result<Report> {
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let src = acquire_forms(args, &mut rng)?;
    let mut report = Report::new("syzygy", config_json(args, vec![]));
    let ideal = GradedIdeal::new(src.forms.clone())?;
    let d = src.degree;
    let repr = forms_repr(&src.forms);

    let t0 = Instant::now();
    let profile = ideal.syzygy_profile()?;
    let expected = expected_syzygy_degrees(d).to_vec();
    report.push(CheckRecord {
        name: "syzygy_degree_profile".into(),
        inputs_digest: digest(&["syzygy_degree_profile", &src.origin, &repr]),
        outcome: Outcome::from_passed(profile == expected),
        details: object(vec![
            ("field", json!(src.field.to_string())),
            ("forms", forms_to_json(&src.forms)),
            ("computed", json!(profile)),
            ("expected", json!(expected)),
        ]),
        resamples: src.resamples.clone(),
        wall_ms: t0.elapsed().as_millis(),
    });

    let t0 = Instant::now();
    let mut table = Vec::new();
    let mut zeros = 0usize;
    let mut all_match = true;
    let mut t = 0usize;
    while zeros < 2 {
        let computed = ideal.hilbert_function(t);
        let predicted = general_hilbert_function(d, t);
        all_match &= computed == predicted;
        table.push(json!([t, computed, predicted]));
        zeros = if computed == 0 { zeros + 1 } else { 0 };
        t += 1;
    }
    let socle_ok = if d % 2 == 1 {
        let s = (d - 1) / 2;
        ideal.hilbert_function(3 * s) == 1
    } else {
        let s = d / 2;
        ideal.hilbert_function(3 * s - 2) == 2 && ideal.hilbert_function(3 * s - 1) == 0
    };
    report.push(CheckRecord {
        name: "hilbert_function_table".into(),
        inputs_digest: digest(&["hilbert_function_table", &src.origin, &repr]),
        outcome: Outcome::from_passed(all_match && socle_ok),
        details: object(vec![
            ("table", Value::Array(table)),
            ("socle_values_match", json!(socle_ok)),
        ]),
        resamples: vec![],
        wall_ms: t0.elapsed().as_millis(),
    });
    Ok(report)
}

fn cmd_rank(args: &RankArgs) -> Result<Report> {
    let field: FieldSpec = args.field.parse()?;
    let strategies: Vec<RankStrategy> = match args.strategy.as_str() {
        "phi" => vec![RankStrategy::Phi],
        "random" => vec![RankStrategy::Random],
        "both" => vec![RankStrategy::Phi, RankStrategy::Random],
        other => {
            return Err(Error::InvalidInput(format!(
                "strategy must be \"phi\", \"random\" or \"both\", got {other:?}"
            )))
        }
    };
    let config = object(vec![
        ("degree", json!(args.degree)),
        ("seed", json!(args.seed)),
        ("field", json!(args.field)),
        ("strategy", json!(args.strategy)),
        ("exploratory", json!(args.exploratory)),
        ("resample_cap", json!(RESAMPLE_CAP)),
    ]);
    let mut report = Report::new("rank", config);
    for strategy in strategies {
        let seed = matches!(strategy, RankStrategy::Random).then_some(args.seed);
        let t0 = Instant::now();
        let cert = maximal_rank_certificate(args.degree, args.exploratory, strategy, field, seed)?;
        let assignment: Value = cert
            .assignment
            .iter()
            .map(|(var, value)| (var.to_string(), json!(value.to_string())))
            .collect::<serde_json::Map<_, _>>()
            .into();
        let name = format!("rank_certificate_{strategy}");
        let outcome = if args.exploratory {
            Outcome::Recorded
        } else {
            Outcome::from_passed(cert.full_rank())
        };
        report.push(CheckRecord {
            inputs_digest: digest(&[
                &name,
                &args.degree.to_string(),
                &args.field,
                &format!("{seed:?}"),
                &args.exploratory.to_string(),
            ]),
            name,
            outcome,
            details: object(vec![
                ("field", json!(field.to_string())),
                ("strategy", json!(strategy.to_string())),
                ("seed", json!(cert.seed)),
                ("exploratory", json!(cert.exploratory)),
                ("rows", json!(cert.rows)),
                ("cols", json!(cert.cols)),
                ("target_rank", json!(cert.target_rank)),
                ("achieved_rank", json!(cert.achieved_rank)),
                ("assignment", assignment),
            ]),
            resamples: cert.resamples.clone(),
            wall_ms: t0.elapsed().as_millis(),
        });
    }
    Ok(report)
}

fn content_route_details(src: &FormsSource, content: &ContentOutcome, rr: &RRReport) -> Result<Value> {
    let cs = crate::rrtest::content_system(&src.forms)?;
    let mut targets = Vec::new();
    let mut witness_iter = content.witnesses.iter();
    for (idx, target) in cs.targets.iter().enumerate() {
        let solvable = content.solvable[idx];
        let cofactors = if solvable {
            let witness = witness_iter.next().expect("one witness per solvable target");
            debug_assert_eq!(witness.target_index, idx);
            json!(witness
                .cofactors
                .iter()
                .map(|((i, k), h)| {
                    object(vec![
                        ("pair", json!([i + 1, k + 1])),
                        ("form", form_to_json(h)),
                    ])
                })
                .collect::<Vec<_>>())
        } else {
            Value::Null
        };
        targets.push(object(vec![
            ("label", json!(target.label)),
            ("monomial", form_to_json(&target.monomial)),
            ("form_index", json!(target.form_index)),
            ("solvable", json!(solvable)),
            ("cofactors", cofactors),
        ]));
    }
    Ok(object(vec![
        ("field", json!(rr.field.to_string())),
        ("forms", forms_to_json(&src.forms)),
        (
            "monomials_outside_ideal",
            json!(content
                .monomial_outside
                .iter()
                .map(|(m, out)| json!([m, out]))
                .collect::<Vec<_>>()),
        ),
        ("targets", Value::Array(targets)),
        ("strictly_larger", json!(content.strictly_larger)),
    ]))
}

fn cmd_rr(args: &RrArgs) -> Result<Report> {
    let mut rng = ChaCha20Rng::seed_from_u64(args.common.seed);
    let src = acquire_forms(&args.common, &mut rng)?;
    let method: RRMethod = args.method.parse()?;
    let d = src.degree;
    let content_supported = (d % 2 == 1 && d >= 5) || (d % 2 == 0 && d >= 10);
    let colon_exploratory = !content_supported && args.exploratory;
    if !content_supported && !(colon_exploratory && method == RRMethod::ColonOracle) {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the closure test covers odd degrees from 5 and even degrees from 10; \
                     below that run the depth pipeline, or pass --method colon --exploratory \
                     for the colon oracle alone"
                .into(),
        });
    }
    let config = config_json(
        &args.common,
        vec![
            ("method", json!(args.method)),
            ("exploratory", json!(args.exploratory)),
        ],
    );
    let mut report = Report::new("rr", config);
    let repr = forms_repr(&src.forms);

    let t0 = Instant::now();
    let rr = rr_test(&src.forms, method)?;
    let rr_ms = t0.elapsed().as_millis();
    if let Some(content) = &rr.content {
        report.push(CheckRecord {
            name: "closure_content_route".into(),
            inputs_digest: digest(&["closure_content_route", &src.origin, &repr]),
            outcome: Outcome::from_passed(content.strictly_larger),
            details: content_route_details(&src, content, &rr)?,
            resamples: src.resamples.clone(),
            wall_ms: rr_ms,
        });
    }
    if let Some(colon) = &rr.colon {
        report.push(CheckRecord {
            name: "closure_colon_route".into(),
            inputs_digest: digest(&["closure_colon_route", &src.origin, &repr]),
            outcome: if colon_exploratory {
                Outcome::Recorded
            } else {
                Outcome::from_passed(colon.strictly_larger)
            },
            details: object(vec![
                ("field", json!(src.field.to_string())),
                ("forms", forms_to_json(&src.forms)),
                (
                    "colon_minimal_generators",
                    forms_to_json(&colon.colon.minimal_generators()),
                ),
                (
                    "witness_outside_ideal",
                    colon.witness.as_ref().map(form_to_json).unwrap_or(Value::Null),
                ),
                ("strictly_larger", json!(colon.strictly_larger)),
            ]),
            resamples: src.resamples.clone(),
            wall_ms: rr_ms,
        });
    }
    if let Some(agree) = rr.verdicts_agree() {
        report.push(CheckRecord {
            name: "closure_route_agreement".into(),
            inputs_digest: digest(&["closure_route_agreement", &src.origin, &repr]),
            outcome: Outcome::from_passed(agree),
            details: object(vec![(
                "verdicts",
                json!([
                    rr.content.as_ref().map(|c| c.strictly_larger),
                    rr.colon.as_ref().map(|c| c.strictly_larger),
                ]),
            )]),
            resamples: vec![],
            wall_ms: 0,
        });
    }

    if d % 2 == 1 && d >= 5 {
        let t0 = Instant::now();
        match monomial_witness_check(&src.forms) {
            Ok(mw) => report.push(CheckRecord {
                name: "monomial_closure_witness".into(),
                inputs_digest: digest(&["monomial_closure_witness", &src.origin, &repr]),
                outcome: Outcome::from_passed(mw.holds),
                details: object(vec![("witness", json!(mw.witness))]),
                resamples: vec![],
                wall_ms: t0.elapsed().as_millis(),
            }),
            Err(Error::NotMPrimary(t)) => report.push(CheckRecord {
                name: "monomial_closure_witness".into(),
                inputs_digest: digest(&["monomial_closure_witness", &src.origin, &repr]),
                outcome: Outcome::Fail,
                details: object(vec![(
                    "error",
                    json!(format!("the ideal is not (x, y)-primary (checked to degree {t})")),
                )]),
                resamples: vec![],
                wall_ms: t0.elapsed().as_millis(),
            }),
            Err(e) => return Err(e),
        }
        let t0 = Instant::now();
        match conjecture_check(&src.forms) {
            Ok(cj) => report.push(CheckRecord {
                name: "companion_square_inclusions".into(),
                inputs_digest: digest(&["companion_square_inclusions", &src.origin, &repr]),
                outcome: Outcome::Recorded,
                details: object(vec![
                    ("holds", json!(cj.holds)),
                    ("inclusions_checked", json!(cj.inclusions_checked)),
                    (
                        "failures",
                        json!(cj
                            .failures
                            .iter()
                            .map(|f| json!([f.monomial, f.pair]))
                            .collect::<Vec<_>>()),
                    ),
                ]),
                resamples: vec![],
                wall_ms: t0.elapsed().as_millis(),
            }),
            Err(Error::NotMPrimary(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn reduction_details(field: FieldSpec, forms: &[BinaryForm], reduction: &Reduction) -> Value {
    object(vec![
        ("field", json!(field.to_string())),
        ("forms", forms_to_json(forms)),
        ("j_gens", forms_to_json(&reduction.j_gens)),
        ("distinguished", form_to_json(&reduction.distinguished)),
        (
            "mixing",
            reduction
                .mixing
                .as_ref()
                .map(|rows| {
                    json!(rows
                        .iter()
                        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>())
                })
                .unwrap_or(Value::Null),
        ),
        ("reduction_number", json!(reduction.reduction_number)),
    ])
}

fn fit_details(fit: &crate::depth::HilbertSamuelFit) -> Value {
    object(vec![
        ("n_lo", json!(fit.n_lo)),
        ("n_hi", json!(fit.n_hi)),
        (
            "colengths",
            json!(fit.colengths.iter().map(|&(n, v)| json!([n, v])).collect::<Vec<_>>()),
        ),
        (
            "predicted",
            json!(fit.predicted.iter().map(|&v| v as i64).collect::<Vec<_>>()),
        ),
        ("e0", json!(fit.e0)),
        ("e1", json!(fit.e1)),
        ("e2", json!(fit.e2)),
        ("postulation_ok", json!(fit.postulation_ok)),
    ])
}

fn cmd_depth(args: &DepthArgs) -> Result<Report> {
    let config = config_json(&args.common, vec![("example", json!(args.example))]);
    if let Some(example) = &args.example {
        let which: WorkedExample = example.parse()?;
        return cmd_depth_example(which, config);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(args.common.seed);
    if args.common.input.is_some() {
        let src = acquire_forms(&args.common, &mut rng)?;
        let analysis = analyze_input_forms(&src.forms, &mut rng)?;
        return depth_report(config, &src.forms, analysis, None, DepthExpectation::None, vec![]);
    }
    let field: FieldSpec = args.common.field.parse()?;
    let d = args
        .common
        .degree
        .ok_or_else(|| Error::InvalidInput("--degree is required without --input".into()))?;
    let pipeline = run_pipeline(field, d, &mut rng)?;
    depth_report(
        config,
        &pipeline.forms,
        pipeline.analysis,
        pipeline.closure,
        DepthExpectation::General,
        pipeline.resample_log.rejections,
    )
}

/// What the depth checks are measured against.
enum DepthExpectation {
    /// General forms: reduction number `d - 1`, closed forms enforced,
    /// verdict depth one.
    General,
    /// A worked example: published ladder and verdict.
    Example {
        ladder: Vec<usize>,
        extra_maximal_colon: bool,
    },
    /// Arbitrary input forms: invariants only.
    None,
}

fn cmd_depth_example(which: WorkedExample, config: Value) -> Result<Report> {
    let analysis = analyze_worked_example(which)?;
    let (_, gens) = depth::worked_example_forms(which)?;
    let expectation = match which {
        WorkedExample::A => DepthExpectation::Example {
            ladder: vec![9, 2, 2, 1, 1],
            extra_maximal_colon: false,
        },
        WorkedExample::B => DepthExpectation::Example {
            ladder: vec![9, 3, 1, 1, 1],
            extra_maximal_colon: true,
        },
    };
    depth_report(config, &gens, analysis, None, expectation, vec![])
}

fn depth_report(
    config: Value,
    forms: &[BinaryForm],
    analysis: crate::depth::DepthAnalysis,
    closure: Option<RRReport>,
    expectation: DepthExpectation,
    draw_resamples: Vec<String>,
) -> Result<Report> {
    let mut report = Report::new("depth", config);
    let repr = forms_repr(forms);
    let d = analysis.d;

    let reduction_pass = match &expectation {
        DepthExpectation::General => Some(analysis.reduction.reduction_number == d - 1),
        DepthExpectation::Example { .. } => Some(analysis.reduction.reduction_number == 5),
        DepthExpectation::None => None,
    };
    report.push(CheckRecord {
        name: "reduction_number".into(),
        inputs_digest: digest(&["reduction_number", &repr]),
        outcome: reduction_pass.map(Outcome::from_passed).unwrap_or(Outcome::Recorded),
        details: reduction_details(analysis.field, forms, &analysis.reduction),
        resamples: draw_resamples
            .iter()
            .chain(&analysis.reduction.resamples)
            .cloned()
            .collect(),
        wall_ms: 0,
    });

    let rungs_positive = analysis.ladder.lambdas.iter().all(|&l| l >= 1);
    let ladder_pass = match &expectation {
        DepthExpectation::General => {
            let mut ok = rungs_positive;
            if d == 6 || d == 8 {
                ok &= analysis.ladder.lambdas.get(2) == Some(&3);
            }
            if d == 6 {
                ok &= analysis.ladder.rung_generator_degrees.get(2) == Some(&vec![2, 2, 2]);
            }
            ok
        }
        DepthExpectation::Example { ladder, .. } => &analysis.ladder.lambdas == ladder,
        DepthExpectation::None => rungs_positive,
    };
    report.push(CheckRecord {
        name: "lambda_ladder".into(),
        inputs_digest: digest(&["lambda_ladder", &repr]),
        outcome: Outcome::from_passed(ladder_pass),
        details: object(vec![
            ("lambdas", json!(analysis.ladder.lambdas)),
            (
                "rung_generator_degrees",
                json!(analysis.ladder.rung_generator_degrees),
            ),
            ("sum", json!(analysis.ladder.sum)),
        ]),
        resamples: vec![],
        wall_ms: 0,
    });

    let fit = &analysis.fit;
    let expected_e1 = (d * (d - 1) / 2) as i64;
    let fit_pass = match &expectation {
        DepthExpectation::General => {
            fit.e0 == (d * d) as i64 && fit.e1 == expected_e1 && fit.postulation_ok == Some(true)
        }
        DepthExpectation::Example { .. } => {
            fit.e0 == 36 && fit.e1 == 15 && fit.postulation_ok == Some(true)
        }
        DepthExpectation::None => fit.e0 == (d * d) as i64 && fit.postulation_ok == Some(true),
    };
    report.push(CheckRecord {
        name: "hilbert_samuel_fit".into(),
        inputs_digest: digest(&["hilbert_samuel_fit", &repr]),
        outcome: Outcome::from_passed(fit_pass),
        details: fit_details(fit),
        resamples: vec![],
        wall_ms: 0,
    });

    if let Some(check) = &analysis.closed_check {
        report.push(CheckRecord {
            name: "closed_form_cross_checks".into(),
            inputs_digest: digest(&["closed_form_cross_checks", &repr]),
            outcome: Outcome::from_passed(check.agrees()),
            details: object(vec![
                ("lambda1", json!([check.observed_lambda1, check.closed.lambda1])),
                ("lambda2", json!([check.observed_lambda2, check.closed.lambda2])),
                (
                    "syzygy_entry_colength",
                    json!([
                        check.observed_syzygy_entry_colength,
                        check.closed.syzygy_entry_colength
                    ]),
                ),
                ("e1", json!([check.observed_e1, check.closed.e1])),
                ("tail_threshold", json!(check.closed.tail_threshold)),
            ]),
            resamples: vec![],
            wall_ms: 0,
        });
    }

    let verdict_pass = match &expectation {
        DepthExpectation::General => analysis.verdict == Verdict::DepthOne,
        DepthExpectation::Example { .. } => analysis.verdict == Verdict::AlmostCohenMacaulay,
        DepthExpectation::None => analysis.verdict != Verdict::Inconclusive,
    };
    report.push(CheckRecord {
        name: "huckaba_marley_verdict".into(),
        inputs_digest: digest(&["huckaba_marley_verdict", &repr]),
        outcome: Outcome::from_passed(verdict_pass),
        details: object(vec![
            ("lambda_sum", json!(analysis.ladder.sum)),
            ("e1", json!(fit.e1)),
            ("verdict", json!(analysis.verdict.to_string())),
        ]),
        resamples: vec![],
        wall_ms: 0,
    });

    if let Some(rr) = &closure {
        report.push(CheckRecord {
            name: "closure_strictly_larger".into(),
            inputs_digest: digest(&["closure_strictly_larger", &repr]),
            outcome: Outcome::from_passed(rr.strictly_larger()),
            details: object(vec![
                ("strictly_larger", json!(rr.strictly_larger())),
                ("routes_agree", json!(rr.verdicts_agree())),
            ]),
            resamples: vec![],
            wall_ms: 0,
        });
    }

    if let DepthExpectation::Example {
        extra_maximal_colon: true,
        ..
    } = &expectation
    {
        let t0 = Instant::now();
        let ideal = GradedIdeal::new(forms.to_vec())?;
        let j = GradedIdeal::new(analysis.reduction.j_gens.clone())?;
        let colon = j.product(&ideal.power(2)?)?.colon(&ideal.power(3)?)?;
        let degrees = colon.minimal_generator_degrees();
        report.push(CheckRecord {
            name: "colon_ji2_i3_is_maximal_ideal".into(),
            inputs_digest: digest(&["colon_ji2_i3_is_maximal_ideal", &repr]),
            outcome: Outcome::from_passed(degrees == vec![1, 1]),
            details: object(vec![
                ("minimal_generator_degrees", json!(degrees)),
                (
                    "minimal_generators",
                    forms_to_json(&colon.minimal_generators()),
                ),
            ]),
            resamples: vec![],
            wall_ms: t0.elapsed().as_millis(),
        });
    }
    Ok(report)
}

/// Re-check the witnesses stored in a report document. Returns true
/// when every stored witness still verifies.
fn verify_report(path: &Path) -> Result<bool> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let command = str_field(&doc, "command")?;
    let checks = doc
        .get("checks")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("the report has no \"checks\" array".into()))?;
    let mut all_ok = true;
    let mut verified = 0usize;
    let mut confirm = |name: &str, ok: bool| {
        println!("verify {name}: {}", if ok { "ok" } else { "MISMATCH" });
        verified += 1;
        all_ok &= ok;
    };
    match command {
        "syzygy" => {
            for check in checks {
                if str_field(check, "name")? != "syzygy_degree_profile" {
                    continue;
                }
                let details = &check["details"];
                let field: FieldSpec = str_field(details, "field")?.parse()?;
                let forms = forms_from_json(field, &details["forms"])?;
                let profile = GradedIdeal::new(forms)?.syzygy_profile()?;
                let stored = details["computed"].clone();
                confirm("syzygy_degree_profile", json!(profile) == stored);
            }
        }
        "rank" => {
            let d = u64_field(&doc["config"], "degree")? as usize;
            for check in checks {
                let name = str_field(check, "name")?;
                if !name.starts_with("rank_certificate") {
                    continue;
                }
                let details = &check["details"];
                let field: FieldSpec = str_field(details, "field")?.parse()?;
                let exploratory = details["exploratory"].as_bool().unwrap_or(false);
                let assignment_obj = details["assignment"]
                    .as_object()
                    .ok_or_else(|| Error::InvalidInput("missing assignment".into()))?;
                let mut assignment = crate::genrank::Assignment::new();
                for (k, v) in assignment_obj {
                    let var: TVar = k.parse()?;
                    let value = field.parse(v.as_str().ok_or_else(|| {
                        Error::InvalidInput("assignment values must be strings".into())
                    })?)?;
                    assignment.insert(var, value);
                }
                let matrix = certificate_matrix(d, exploratory)?;
                let rank = matrix.specialize(field, &assignment)?.rank();
                let stored = u64_field(details, "achieved_rank")? as usize;
                confirm(name, rank == stored);
            }
        }
        "rr" => {
            for check in checks {
                let name = str_field(check, "name")?;
                let details = &check["details"];
                match name {
                    "closure_content_route" => {
                        let field: FieldSpec = str_field(details, "field")?.parse()?;
                        let forms = forms_from_json(field, &details["forms"])?;
                        let targets = details["targets"]
                            .as_array()
                            .ok_or_else(|| Error::InvalidInput("missing targets".into()))?;
                        for target in targets {
                            if !target["solvable"].as_bool().unwrap_or(false) {
                                continue;
                            }
                            let label = str_field(target, "label")?;
                            let monomial = form_from_json(field, &target["monomial"])?;
                            let j = u64_field(target, "form_index")? as usize;
                            let mut acc =
                                BinaryForm::zero(field, monomial.degree() + forms[0].degree());
                            for cof in target["cofactors"].as_array().into_iter().flatten() {
                                let pair = cof["pair"]
                                    .as_array()
                                    .ok_or_else(|| Error::InvalidInput("missing pair".into()))?;
                                let i = pair[0].as_u64().unwrap_or(0) as usize - 1;
                                let k = pair[1].as_u64().unwrap_or(0) as usize - 1;
                                let h = form_from_json(field, &cof["form"])?;
                                let product = forms[i].multiply(&forms[k])?;
                                acc = acc.add(&h.multiply(&product)?)?;
                            }
                            let expected = monomial.multiply(&forms[j])?;
                            confirm(&format!("cofactor_reconstruction[{label}]"), acc == expected);
                        }
                    }
                    "closure_colon_route" => {
                        let field: FieldSpec = str_field(details, "field")?.parse()?;
                        let forms = forms_from_json(field, &details["forms"])?;
                        if details["witness_outside_ideal"].is_null() {
                            continue;
                        }
                        let witness = form_from_json(field, &details["witness_outside_ideal"])?;
                        let ideal = GradedIdeal::new(forms.clone())?;
                        let square = ideal.power(2)?;
                        let mut ok = !ideal.contains(&witness)?;
                        for f in &forms {
                            ok &= square.contains(&witness.multiply(f)?)?;
                        }
                        confirm("colon_witness_membership", ok);
                    }
                    _ => {}
                }
            }
        }
        "depth" => {
            let seed = doc["config"]["seed"].as_u64().unwrap_or(0);
            let mut reduction: Option<(FieldSpec, Vec<BinaryForm>, Reduction)> = None;
            let mut ladder: Option<(Vec<usize>, Vec<Vec<usize>>)> = None;
            for check in checks {
                let details = &check["details"];
                match str_field(check, "name")? {
                    "reduction_number" => {
                        let field: FieldSpec = str_field(details, "field")?.parse()?;
                        let forms = forms_from_json(field, &details["forms"])?;
                        let j_gens = forms_from_json(field, &details["j_gens"])?;
                        let distinguished = form_from_json(field, &details["distinguished"])?;
                        let reduction_number = u64_field(details, "reduction_number")? as usize;
                        reduction = Some((
                            field,
                            forms,
                            Reduction {
                                j_gens,
                                mixing: None,
                                distinguished,
                                reduction_number,
                                resamples: vec![],
                            },
                        ));
                    }
                    "lambda_ladder" => {
                        let lambdas = details["lambdas"]
                            .as_array()
                            .map(|a| a.iter().filter_map(Value::as_u64).map(|v| v as usize).collect())
                            .unwrap_or_default();
                        let degrees = details["rung_generator_degrees"]
                            .as_array()
                            .map(|rows| {
                                rows.iter()
                                    .map(|row| {
                                        row.as_array()
                                            .map(|a| {
                                                a.iter()
                                                    .filter_map(Value::as_u64)
                                                    .map(|v| v as usize)
                                                    .collect()
                                            })
                                            .unwrap_or_default()
                                    })
                                    .collect()
                            })
                            .unwrap_or_default();
                        ladder = Some((lambdas, degrees));
                    }
                    _ => {}
                }
            }
            let (Some((_, forms, reduction)), Some((lambdas, degrees))) = (reduction, ladder)
            else {
                return Err(Error::InvalidInput(
                    "the depth report lacks reduction or ladder records".into(),
                ));
            };
            if lambdas.len() != reduction.reduction_number {
                return Err(Error::InvalidInput(
                    "ladder length disagrees with the reduction number".into(),
                ));
            }
            let l = 1 + (seed as usize) % reduction.reduction_number;
            let ideal = GradedIdeal::new(forms)?;
            let (lambda, rung_degrees) = lambda_rung(&ideal, &reduction, l)?;
            confirm(
                &format!("lambda_rung[{l}]"),
                lambda == lambdas[l - 1] && rung_degrees == degrees[l - 1],
            );
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown report command {other:?}"
            )))
        }
    }
    if verified == 0 {
        return Err(Error::InvalidInput(
            "the report contains no verifiable witnesses".into(),
        ));
    }
    Ok(all_ok)
}
