//! Depth analysis of the Rees algebra of three binary forms through
//! the Huckaba-Marley length criterion.
//!
//! For an `(x, y)`-primary ideal `I = (f1, f2, f3)` with a two-form
//! minimal reduction `J` and reduction number `red`, the rung lengths
//! `lambda_l = length(I^l / J*I^(l-1))` decide the depth of the Rees
//! algebra: their sum exceeds the Hilbert-Samuel coefficient `e1`
//! exactly when the associated graded ring has depth zero, forcing the
//! Rees algebra to depth one; equality means the associated graded
//! ring is Cohen-Macaulay (the almost Cohen-Macaulay case for the Rees
//! algebra). Each rung is computed as the colength of a colon ideal
//! `(J*I^(l-1) : f^l)`, and `e1` is recovered independently from an
//! exact polynomial fit of the colength function `n -> length(R/I^n)`.

use crate::forms::BinaryForm;
use crate::graded::{general_forms, GradedIdeal, ResampleLog, RESAMPLE_CAP};
use crate::scalars::{FieldSpec, Scalar};
use crate::{Error, Result};
use num::ToPrimitive;
use rand::Rng;

/// A two-generator minimal reduction `J` of `I` together with the
/// distinguished generator `f` satisfying `I = (J, f)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub j_gens: Vec<BinaryForm>,
    /// Mixing coefficients when `J` was drawn at random: two rows of
    /// three scalars, `j_i = sum mixing[i][k] * f_(k+1)`.
    pub mixing: Option<Vec<Vec<Scalar>>>,
    pub distinguished: BinaryForm,
    /// Least `r >= 1` with `J * I^r = I^(r+1)`.
    pub reduction_number: usize,
    pub resamples: Vec<String>,
}

/// Least `r` in `1..=cap` with `J * I^r = I^(r+1)`. Both ideals are
/// generated in degree `(r+1)*d`, so equality of that single graded
/// piece is equivalent to equality of the ideals.
fn reduction_number_of(ideal: &GradedIdeal, j: &GradedIdeal, cap: usize) -> Result<usize> {
    let d = ideal.max_gen_degree();
    for r in 1..=cap {
        let t = (r + 1) * d;
        let ji = j.product(&ideal.power(r)?)?;
        if ji.piece_dim(t) == ideal.power(r + 1)?.piece_dim(t) {
            return Ok(r);
        }
    }
    Err(Error::ReductionCap(cap))
}

fn validate_three_forms(forms: &[BinaryForm]) -> Result<(FieldSpec, usize)> {
    if forms.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "exactly three forms expected, got {}",
            forms.len()
        )));
    }
    let field = forms[0].field();
    let d = forms[0].degree();
    if forms.iter().any(|f| f.field() != field) {
        return Err(Error::FieldMismatch("the three forms".into()));
    }
    if forms.iter().any(|f| f.degree() != d) {
        return Err(Error::DimensionMismatch(
            "the three forms must share one degree".into(),
        ));
    }
    Ok((field, d))
}

/// Draw a minimal reduction `J = (j1, j2)` of `I = (f1, f2, f3)` from
/// random coefficient mixes, distinguished generator `f3`. A draw is
/// rejected when a mix degenerates, when `(j1, j2, f3)` fails to span
/// `I` in degree `d`, when `J` is not `(x, y)`-primary, or when no
/// reduction number at most `2d` certifies `J` as a reduction. Over
/// the rationals the mixes use small random integers.
pub fn minimal_reduction<R: Rng>(forms: &[BinaryForm], rng: &mut R) -> Result<Reduction> {
    let (field, d) = validate_three_forms(forms)?;
    let draw = |rng: &mut R| match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-99..=99)),
        _ => field.random(rng).expect("finite field"),
    };
    let ideal = GradedIdeal::new(forms.to_vec())?;
    let target_dim = ideal.piece_dim(d);
    let mut resamples = Vec::new();
    for _ in 0..RESAMPLE_CAP {
        let mixing: Vec<Vec<Scalar>> = (0..2)
            .map(|_| (0..3).map(|_| draw(rng)).collect())
            .collect();
        let mut j_gens = Vec::with_capacity(2);
        for row in &mixing {
            let mut g = BinaryForm::zero(field, d);
            for (c, f) in row.iter().zip(forms) {
                g = g.add(&f.scale(c))?;
            }
            j_gens.push(g);
        }
        if j_gens.iter().any(BinaryForm::is_zero) {
            resamples.push("degenerate mix: a combination vanished".into());
            continue;
        }
        let with_f = GradedIdeal::new(vec![
            j_gens[0].clone(),
            j_gens[1].clone(),
            forms[2].clone(),
        ])?;
        if with_f.piece_dim(d) != target_dim {
            resamples.push("(j1, j2, f3) does not span the degree-d piece".into());
            continue;
        }
        let j = GradedIdeal::new(j_gens.clone())?;
        match j.colength() {
            Ok(len) => debug_assert_eq!(len, d * d),
            Err(Error::NotMPrimary(_)) => {
                resamples.push("J shares a common factor".into());
                continue;
            }
            Err(e) => return Err(e),
        }
        match reduction_number_of(&ideal, &j, 2 * d) {
            Ok(reduction_number) => {
                return Ok(Reduction {
                    j_gens,
                    mixing: Some(mixing),
                    distinguished: forms[2].clone(),
                    reduction_number,
                    resamples,
                })
            }
            Err(Error::ReductionCap(_)) => {
                resamples.push("no reduction number found below the cap".into());
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleCap(RESAMPLE_CAP))
}

/// Assemble a reduction from explicitly given parts: `J = (j1, j2)`
/// and a distinguished `f` with `I = (J, f)`. Checks membership of
/// the parts in `I`, the degree-`d` span condition, and computes the
/// reduction number.
pub fn reduction_from_parts(
    forms: &[BinaryForm],
    j_gens: [BinaryForm; 2],
    distinguished: BinaryForm,
) -> Result<Reduction> {
    let (_, d) = validate_three_forms(forms)?;
    let ideal = GradedIdeal::new(forms.to_vec())?;
    for g in j_gens.iter().chain(std::iter::once(&distinguished)) {
        if !ideal.contains(g)? {
            return Err(Error::InvalidInput(format!(
                "{g} is not a member of the ideal"
            )));
        }
    }
    let with_f = GradedIdeal::new(vec![
        j_gens[0].clone(),
        j_gens[1].clone(),
        distinguished.clone(),
    ])?;
    if with_f.piece_dim(d) != ideal.piece_dim(d) {
        return Err(Error::InvalidInput(
            "(j1, j2, f) does not span the ideal in its generating degree".into(),
        ));
    }
    let j = GradedIdeal::new(j_gens.to_vec())?;
    let reduction_number = reduction_number_of(&ideal, &j, 2 * d)?;
    Ok(Reduction {
        j_gens: j_gens.to_vec(),
        mixing: None,
        distinguished,
        reduction_number,
        resamples: Vec::new(),
    })
}

/// The rung lengths `lambda_l = length(I^l / J*I^(l-1))` for
/// `l = 1..=red`, each computed as the colength of the colon ideal
/// `(J*I^(l-1) : f^l)`; the identity `I^l = J*I^(l-1) + (f^l)` makes
/// the quotient cyclic with that annihilator.
#[derive(Clone, Debug)]
pub struct LambdaLadder {
    pub lambdas: Vec<usize>,
    /// Minimal generator degrees of each colon ideal, rung by rung.
    pub rung_generator_degrees: Vec<Vec<usize>>,
    pub sum: usize,
}

pub fn lambda_ladder(ideal: &GradedIdeal, reduction: &Reduction) -> Result<LambdaLadder> {
    let j = GradedIdeal::new(reduction.j_gens.clone())?;
    let mut lambdas = Vec::with_capacity(reduction.reduction_number);
    let mut rung_generator_degrees = Vec::with_capacity(reduction.reduction_number);
    let mut f_power = reduction.distinguished.clone();
    for l in 1..=reduction.reduction_number {
        if l > 1 {
            f_power = f_power.multiply(&reduction.distinguished)?;
        }
        let numerator = if l == 1 {
            j.clone()
        } else {
            j.product(&ideal.power(l - 1)?)?
        };
        let rung = numerator.colon(&GradedIdeal::new(vec![f_power.clone()])?)?;
        lambdas.push(rung.colength()?);
        rung_generator_degrees.push(rung.minimal_generator_degrees());
    }
    let sum = lambdas.iter().sum();
    Ok(LambdaLadder {
        lambdas,
        rung_generator_degrees,
        sum,
    })
}

/// One rung recomputed in isolation, for spot verification of stored
/// reports: returns `(lambda_l, minimal generator degrees)`.
pub fn lambda_rung(ideal: &GradedIdeal, reduction: &Reduction, l: usize) -> Result<(usize, Vec<usize>)> {
    if l == 0 || l > reduction.reduction_number {
        return Err(Error::InvalidInput(format!(
            "rung {l} outside 1..={}",
            reduction.reduction_number
        )));
    }
    let j = GradedIdeal::new(reduction.j_gens.clone())?;
    let numerator = if l == 1 {
        j
    } else {
        j.product(&ideal.power(l - 1)?)?
    };
    let mut f_power = reduction.distinguished.clone();
    for _ in 1..l {
        f_power = f_power.multiply(&reduction.distinguished)?;
    }
    let rung = numerator.colon(&GradedIdeal::new(vec![f_power])?)?;
    Ok((rung.colength()?, rung.minimal_generator_degrees()))
}

/// Exact quadratic fit of the colength function: coefficients
/// `(e0, e1, e2)` with `length(R/I^n) = e0*C(n+1,2) - e1*n + e2` on
/// the last three sample points, plus the predicted values over the
/// whole window.
#[derive(Clone, Debug)]
pub struct HilbertSamuelFit {
    pub n_lo: usize,
    pub n_hi: usize,
    /// `(n, length(R/I^n))` for the whole window.
    pub colengths: Vec<(usize, usize)>,
    pub predicted: Vec<i128>,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    /// Whether the fit reproduces the fourth-from-last sample point;
    /// `None` when the window has only three points.
    pub postulation_ok: Option<bool>,
}

fn binom2(n: i128) -> i128 {
    n * (n + 1) / 2
}

/// Solve the three-coefficient fit on the last three points and check
/// it against the rest of the window. The window must contain at
/// least three points.
pub fn fit_colengths(points: &[(usize, usize)]) -> Result<HilbertSamuelFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(
            "the fit window needs at least three sample points".into(),
        ));
    }
    let field = FieldSpec::Rationals;
    let last = &points[points.len() - 3..];
    let rows: Vec<Vec<i64>> = last
        .iter()
        .map(|&(n, _)| vec![binom2(n as i128) as i64, -(n as i64), 1])
        .collect();
    let matrix = crate::scalars::DenseMatrix::from_i64_rows(field, &rows);
    let rhs: Vec<Scalar> = last.iter().map(|&(_, v)| field.from_i64(v as i64)).collect();
    let solution = matrix
        .solve_any(&rhs)?
        .expect("consecutive-window fit matrices are nonsingular");
    let mut coeffs = [0i64; 3];
    for (slot, value) in coeffs.iter_mut().zip(&solution) {
        let Scalar::Rat(r) = value else {
            unreachable!("the fit runs over the rationals")
        };
        // Consecutive windows give a unimodular system, so this check
        // is a pure invariant; it guards non-consecutive callers.
        if !r.is_integer() {
            return Err(Error::NonIntegralFit);
        }
        *slot = r.to_integer().to_i64().ok_or(Error::NonIntegralFit)?;
    }
    let [e0, e1, e2] = coeffs;
    let predicted: Vec<i128> = points
        .iter()
        .map(|&(n, _)| {
            e0 as i128 * binom2(n as i128) - e1 as i128 * n as i128 + e2 as i128
        })
        .collect();
    let postulation_ok = (points.len() >= 4).then(|| {
        let idx = points.len() - 4;
        predicted[idx] == points[idx].1 as i128
    });
    Ok(HilbertSamuelFit {
        n_lo: points[0].0,
        n_hi: points[points.len() - 1].0,
        colengths: points.to_vec(),
        predicted,
        e0,
        e1,
        e2,
        postulation_ok,
    })
}

/// Sample `length(R/I^n)` over `n_lo..=n_hi` and fit.
pub fn hilbert_samuel_fit(ideal: &GradedIdeal, n_lo: usize, n_hi: usize) -> Result<HilbertSamuelFit> {
    if n_lo == 0 || n_hi < n_lo + 2 {
        return Err(Error::InvalidInput(format!(
            "fit window [{n_lo}, {n_hi}] needs n_lo >= 1 and at least three points"
        )));
    }
    let mut points = Vec::with_capacity(n_hi - n_lo + 1);
    for n in n_lo..=n_hi {
        points.push((n, ideal.power(n)?.colength()?));
    }
    fit_colengths(&points)
}

/// Closed-form rung and coefficient values for three general forms of
/// degree `d >= 4`: the first rung `lambda1 = length(I/J)`, the
/// colength of the ideal of syzygy-matrix entries, the second rung
/// `lambda2`, the coefficient `e1`, and the tail threshold that the
/// rungs beyond the second must beat for depth one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub d: usize,
    pub lambda1: usize,
    pub syzygy_entry_colength: usize,
    pub lambda2: usize,
    pub e1: usize,
    pub tail_threshold: usize,
}

pub fn closed_forms(d: usize) -> Result<ClosedForms> {
    if d < 4 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "closed forms are stated for degree at least 4".into(),
        });
    }
    let half = d / 2;
    let (lambda1, syzygy_entry_colength, tail_threshold) = if d % 2 == 0 {
        (
            d * d / 4,
            half * (half + 1) / 2 + half.saturating_sub(5),
            d * (d - 2) / 8 + half.saturating_sub(5),
        )
    } else {
        (
            (d * d - 1) / 4,
            half * (half + 1) / 2 + (half - 2),
            (d + 1) * (d - 1) / 8 - 2,
        )
    };
    let lambda2 = lambda1 - syzygy_entry_colength;
    let e1 = d * (d - 1) / 2;
    Ok(ClosedForms {
        d,
        lambda1,
        syzygy_entry_colength,
        lambda2,
        e1,
        tail_threshold,
    })
}

/// Colength of the ideal generated by the entries of the minimal
/// first-syzygy matrix of `I`.
pub fn syzygy_entry_colength(ideal: &GradedIdeal) -> Result<usize> {
    let mut entries = Vec::new();
    for syz in ideal.first_syzygies()? {
        for coord in syz.coords {
            if !coord.is_zero() {
                entries.push(coord);
            }
        }
    }
    GradedIdeal::new(entries)?.colength()
}

/// Verdict of the length comparison `sum(lambda) ? e1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DepthOne,
    AlmostCohenMacaulay,
    Inconclusive,
}

impl Verdict {
    pub fn from_comparison(lambda_sum: usize, e1: usize) -> Verdict {
        match lambda_sum.cmp(&e1) {
            std::cmp::Ordering::Greater => Verdict::DepthOne,
            std::cmp::Ordering::Equal => Verdict::AlmostCohenMacaulay,
            std::cmp::Ordering::Less => Verdict::Inconclusive,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::DepthOne => "depth_one",
            Verdict::AlmostCohenMacaulay => "almost_cm",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Observed values compared against [`ClosedForms`] for general forms.
#[derive(Clone, Debug)]
pub struct ClosedFormCheck {
    pub closed: ClosedForms,
    pub observed_lambda1: usize,
    pub observed_lambda2: usize,
    pub observed_syzygy_entry_colength: usize,
    pub observed_e1: i64,
}

impl ClosedFormCheck {
    pub fn agrees(&self) -> bool {
        self.observed_lambda1 == self.closed.lambda1
            && self.observed_lambda2 == self.closed.lambda2
            && self.observed_syzygy_entry_colength == self.closed.syzygy_entry_colength
            && self.observed_e1 == self.closed.e1 as i64
    }
}

/// Complete depth analysis of one ideal: reduction, ladder, fit, the
/// closed-form comparison when requested, and the verdict.
#[derive(Clone, Debug)]
pub struct DepthAnalysis {
    pub d: usize,
    pub field: FieldSpec,
    pub reduction: Reduction,
    pub ladder: LambdaLadder,
    pub fit: HilbertSamuelFit,
    pub closed_check: Option<ClosedFormCheck>,
    pub verdict: Verdict,
}

fn assemble(
    forms: &[BinaryForm],
    reduction: Reduction,
    enforce_closed_forms: bool,
) -> Result<DepthAnalysis> {
    let (field, d) = validate_three_forms(forms)?;
    let ideal = GradedIdeal::new(forms.to_vec())?;
    let ladder = lambda_ladder(&ideal, &reduction)?;
    let fit = hilbert_samuel_fit(&ideal, d - 1, d + 2)?;
    let closed_check = if enforce_closed_forms {
        let closed = closed_forms(d)?;
        let check = ClosedFormCheck {
            closed,
            observed_lambda1: ladder.lambdas[0],
            observed_lambda2: ladder.lambdas.get(1).copied().unwrap_or(0),
            observed_syzygy_entry_colength: syzygy_entry_colength(&ideal)?,
            observed_e1: fit.e1,
        };
        if !check.agrees() {
            return Err(Error::VerifyFailed(format!(
                "closed-form cross-check failed in degree {d}: \
                 lambda1 {} vs {}, lambda2 {} vs {}, syzygy-entry colength {} vs {}, e1 {} vs {}",
                check.observed_lambda1,
                closed.lambda1,
                check.observed_lambda2,
                closed.lambda2,
                check.observed_syzygy_entry_colength,
                closed.syzygy_entry_colength,
                check.observed_e1,
                closed.e1
            )));
        }
        Some(check)
    } else {
        None
    };
    if fit.e0 != (d * d) as i64 {
        return Err(Error::VerifyFailed(format!(
            "multiplicity mismatch in degree {d}: e0 = {} instead of {}",
            fit.e0,
            d * d
        )));
    }
    let e1 = usize::try_from(fit.e1)
        .map_err(|_| Error::VerifyFailed(format!("negative e1 = {} in degree {d}", fit.e1)))?;
    let verdict = Verdict::from_comparison(ladder.sum, e1);
    Ok(DepthAnalysis {
        d,
        field,
        reduction,
        ladder,
        fit,
        closed_check,
        verdict,
    })
}

/// Run the whole pipeline on freshly drawn general forms of degree
/// `d` over a finite field: general forms, random minimal reduction,
/// ladder, fit, closed-form cross-checks (enforced), verdict.
pub fn analyze_general<R: Rng>(
    field: FieldSpec,
    d: usize,
    rng: &mut R,
) -> Result<(Vec<BinaryForm>, ResampleLog, DepthAnalysis)> {
    let (forms, log) = general_forms(field, d, rng)?;
    let reduction = minimal_reduction(&forms, rng)?;
    let analysis = assemble(&forms, reduction, true)?;
    Ok((forms, log, analysis))
}

/// Run the pipeline on explicitly given forms and reduction parts,
/// without closed-form enforcement.
pub fn analyze_with_reduction(
    forms: &[BinaryForm],
    j_gens: [BinaryForm; 2],
    distinguished: BinaryForm,
) -> Result<DepthAnalysis> {
    let reduction = reduction_from_parts(forms, j_gens, distinguished)?;
    assemble(forms, reduction, false)
}

/// Run the pipeline on explicitly given forms with a random minimal
/// reduction, without closed-form enforcement (the forms need not be
/// general).
pub fn analyze_input_forms<R: Rng>(forms: &[BinaryForm], rng: &mut R) -> Result<DepthAnalysis> {
    let reduction = minimal_reduction(forms, rng)?;
    assemble(forms, reduction, false)
}

/// Combined run over freshly drawn general forms: the length-based
/// analysis always, the closure route additionally when its degree
/// hypotheses apply (odd `d >= 5` or even `d >= 10`). A strictly
/// larger closure forces depth one on its own; when both routes run
/// their verdicts must agree.
#[derive(Clone, Debug)]
pub struct DepthPipeline {
    pub forms: Vec<BinaryForm>,
    pub resample_log: ResampleLog,
    pub analysis: DepthAnalysis,
    pub closure: Option<crate::rrtest::RRReport>,
    pub verdict: Verdict,
}

pub fn run_pipeline<R: Rng>(field: FieldSpec, d: usize, rng: &mut R) -> Result<DepthPipeline> {
    if d < 5 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the depth pipeline starts at degree 5".into(),
        });
    }
    let (forms, resample_log, analysis) = analyze_general(field, d, rng)?;
    let closure_applies = d % 2 == 1 || d >= 10;
    let closure = if closure_applies {
        Some(crate::rrtest::rr_test(&forms, crate::rrtest::RRMethod::Both)?)
    } else {
        None
    };
    if let Some(rr) = &closure {
        if rr.verdicts_agree() == Some(false) {
            return Err(Error::VerifyFailed(
                "the two closure routes disagree".into(),
            ));
        }
        let closure_depth_one = rr.strictly_larger();
        let length_depth_one = analysis.verdict == Verdict::DepthOne;
        if closure_depth_one != length_depth_one {
            return Err(Error::VerifyFailed(format!(
                "closure route ({closure_depth_one}) and length route ({length_depth_one}) \
                 disagree in degree {d}"
            )));
        }
    }
    let verdict = analysis.verdict;
    Ok(DepthPipeline {
        forms,
        resample_log,
        analysis,
        closure,
        verdict,
    })
}

/// Signed maximal minors of a homogeneous 3x2 matrix of forms:
/// `f_i = (-1)^i * det(rows other than i)`. The columns of the matrix
/// are then syzygies of `(f0, f1, f2)`.
pub fn hilbert_burch_generators(rows: &[[BinaryForm; 2]; 3]) -> Result<[BinaryForm; 3]> {
    let minor = |a: usize, b: usize| -> Result<BinaryForm> {
        let pos = rows[a][0].multiply(&rows[b][1])?;
        let neg = rows[a][1].multiply(&rows[b][0])?;
        pos.sub(&neg).map_err(|_| {
            Error::Inhomogeneous(format!(
                "minor of rows {a} and {b} mixes degrees",
            ))
        })
    };
    let minus_one = rows[0][0].field().from_i64(-1);
    let f0 = minor(1, 2)?;
    let f1 = minor(0, 2)?.scale(&minus_one);
    let f2 = minor(0, 1)?;
    let gens = [f0, f1, f2];
    #[cfg(debug_assertions)]
    for col in 0..2 {
        let mut acc = BinaryForm::zero(gens[0].field(), gens[0].degree() + rows[0][col].degree());
        for (g, row) in gens.iter().zip(rows) {
            acc = acc.add(&g.multiply(&row[col])?)?;
        }
        debug_assert!(acc.is_zero(), "matrix columns must be syzygies");
    }
    Ok(gens)
}

/// The two worked examples over the rationals, each presented by a
/// 3x2 matrix of cubics whose signed minors generate the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorkedExample {
    A,
    B,
}

impl std::str::FromStr for WorkedExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(WorkedExample::A),
            "b" | "B" => Ok(WorkedExample::B),
            other => Err(Error::InvalidInput(format!(
                "example must be \"a\" or \"b\", got {other:?}"
            ))),
        }
    }
}

/// The presentation matrix and its signed minors for a worked example.
pub fn worked_example_forms(which: WorkedExample) -> Result<([[BinaryForm; 2]; 3], [BinaryForm; 3])> {
    let q = FieldSpec::Rationals;
    let form = |coeffs: [i64; 4]| BinaryForm::from_i64(q, &coeffs);
    let rows = match which {
        // Rows of the matrix: (-x*y^2, -y^3), (x^3, 0), (y^3, x^3).
        WorkedExample::A => [
            [form([0, -1, 0, 0]), form([-1, 0, 0, 0])],
            [form([0, 0, 0, 1]), BinaryForm::zero(q, 3)],
            [form([1, 0, 0, 0]), form([0, 0, 0, 1])],
        ],
        // Rows: (x^3, x*y^2), (x^2*y, x^3 - y^3), (y^3, -x^2*y + x*y^2).
        WorkedExample::B => [
            [form([0, 0, 0, 1]), form([0, 1, 0, 0])],
            [form([0, 0, 1, 0]), form([-1, 0, 0, 1])],
            [form([1, 0, 0, 0]), form([0, 1, -1, 0])],
        ],
    };
    let gens = hilbert_burch_generators(&rows)?;
    Ok((rows, gens))
}

/// Depth analysis of a worked example with its published reduction:
/// example A takes `J = (f0, f1)` with distinguished `f2`, example B
/// takes `J = (f2, -f0)` with distinguished `f1`.
pub fn analyze_worked_example(which: WorkedExample) -> Result<DepthAnalysis> {
    let (_, gens) = worked_example_forms(which)?;
    let minus_one = FieldSpec::Rationals.from_i64(-1);
    let (j_gens, distinguished) = match which {
        WorkedExample::A => ([gens[0].clone(), gens[1].clone()], gens[2].clone()),
        WorkedExample::B => ([gens[2].clone(), gens[0].scale(&minus_one)], gens[1].clone()),
    };
    analyze_with_reduction(&gens, j_gens, distinguished)
}
