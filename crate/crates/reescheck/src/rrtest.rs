//! Ratliff-Rush closure tests for ideals of three binary forms.
//!
//! For an `(x, y)`-primary ideal `I`, the Ratliff-Rush closure is the
//! union of the colon ideals `(I^(n+1) : I^n)`. It strictly exceeds
//! `I` as soon as `(I^2 : I)` does, and the tests here decide that
//! first step by two independent routes:
//!
//! * the content-matrix route sets up, for a socle monomial `m` and
//!   each generator `f_j`, the exact linear system asking whether
//!   `m * f_j` is a combination of the pairwise products `f_i * f_k`
//!   with cofactors of the complementary degree. Solvability for all
//!   targets plus `m` outside `I` exhibits `m` inside `(I^2 : I)`
//!   but outside `I`;
//! * the colon-oracle route computes `(I^2 : I)` outright and compares
//!   minimal generators against `I`.
//!
//! The module also carries the odd-degree companion constructions: the
//! tilde ideal spanned by `x^2`-quotients of the generators plus two
//! monomials, the conjecture check `m^(s-1) * Itilde^2 inside I^2`,
//! and the hunt for a single degree-`3s` monomial closure witness.

use crate::forms::BinaryForm;
use crate::graded::GradedIdeal;
use crate::scalars::{DenseMatrix, FieldSpec, Scalar, Subspace};
use crate::{Error, Result};

/// One membership target of the content system: the product of a
/// socle monomial with one of the three generators.
#[derive(Clone, Debug)]
pub struct ContentTarget {
    /// Human-readable name, e.g. `y^6 * f1`.
    pub label: String,
    /// The socle monomial `m`.
    pub monomial: BinaryForm,
    /// Which generator is multiplied (0-based).
    pub form_index: usize,
    /// Coefficient vector of `m * f_j`, one entry per matrix row.
    pub rhs: Vec<Scalar>,
}

/// The exact linear system deciding `m * f_j` membership in the span
/// of cofactor multiples of the pairwise products `f_i * f_k`.
#[derive(Clone, Debug)]
pub struct ContentSystem {
    pub d: usize,
    /// `s` in the parity decomposition `d = 2s + 1` or `d = 2s`.
    pub s: usize,
    pub field: FieldSpec,
    /// Stacked multiplication matrix: one column block per product
    /// `f_i * f_k` (pairs ordered 11, 12, 13, 22, 23, 33), the block
    /// columns being monomial shifts of the product.
    pub matrix: DenseMatrix,
    pub targets: Vec<ContentTarget>,
    forms: Vec<BinaryForm>,
    /// Common degree of the cofactors encoded by one block.
    cofactor_degree: usize,
    block_pairs: [(usize, usize); 6],
}

/// A solved target: cofactors `h_(i,k)` with
/// `sum h_(i,k) * f_i * f_k = m * f_j`, verified exactly.
#[derive(Clone, Debug)]
pub struct MembershipWitness {
    pub target_index: usize,
    /// One cofactor per product pair, in block order.
    pub cofactors: Vec<((usize, usize), BinaryForm)>,
}

impl ContentSystem {
    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    pub fn cofactor_degree(&self) -> usize {
        self.cofactor_degree
    }

    pub fn block_pairs(&self) -> &[(usize, usize); 6] {
        &self.block_pairs
    }
}

/// Build the content system for three forms of one degree: odd
/// `d = 2s + 1 >= 5` or even `d = 2s >= 10`. The matrix is
/// `(5s+2) x 6s` odd and `(5s-1) x 6(s-1)` even; the targets are the
/// socle-monomial products: `y^3s * f_j` odd, `y^(3s-2) * f_j` and
/// `x*y^(3s-3) * f_j` even.
pub fn content_system(forms: &[BinaryForm]) -> Result<ContentSystem> {
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
    let (s, rows, cofactor_degree) = if d % 2 == 1 {
        if d < 5 {
            return Err(Error::UnsupportedDegree {
                degree: d,
                reason: "odd content systems start at degree 5".into(),
            });
        }
        let s = (d - 1) / 2;
        (s, 5 * s + 2, s - 1)
    } else {
        if d < 10 {
            return Err(Error::UnsupportedDegree {
                degree: d,
                reason: "even content systems start at degree 10".into(),
            });
        }
        let s = d / 2;
        (s, 5 * s - 1, s - 2)
    };
    let block_pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut columns = Vec::with_capacity(6 * (cofactor_degree + 1));
    for &(i, k) in &block_pairs {
        let product = forms[i].multiply(&forms[k])?;
        for c in 0..=cofactor_degree {
            columns.push(product.shift(c, cofactor_degree - c).coeffs().to_vec());
        }
    }
    let matrix = DenseMatrix::from_columns(field, rows, &columns)?;
    let mut targets = Vec::new();
    let monomials: Vec<BinaryForm> = if d % 2 == 1 {
        vec![BinaryForm::monomial(field, 0, 3 * s)?]
    } else {
        vec![
            BinaryForm::monomial(field, 0, 3 * s - 2)?,
            BinaryForm::monomial(field, 1, 3 * s - 2)?,
        ]
    };
    for (j, form) in forms.iter().enumerate() {
        for m in &monomials {
            let product = m.multiply(form)?;
            debug_assert_eq!(product.degree() + 1, rows);
            targets.push(ContentTarget {
                label: format!("{m} * f{}", j + 1),
                monomial: m.clone(),
                form_index: j,
                rhs: product.coeffs().to_vec(),
            });
        }
    }
    Ok(ContentSystem {
        d,
        s,
        field,
        matrix,
        targets,
        forms: forms.to_vec(),
        cofactor_degree,
        block_pairs,
    })
}

/// Solve one target of the content system. `None` means the system is
/// inconsistent (the product is not in the cofactor span). A returned
/// witness is re-verified: the cofactor combination is multiplied out
/// and compared with the target product.
pub fn solve_membership(cs: &ContentSystem, target_index: usize) -> Result<Option<MembershipWitness>> {
    let target = cs.targets.get(target_index).ok_or_else(|| {
        Error::InvalidInput(format!("target index {target_index} out of range"))
    })?;
    let Some(solution) = cs.matrix.solve_any(&target.rhs)? else {
        return Ok(None);
    };
    let width = cs.cofactor_degree + 1;
    let mut cofactors = Vec::with_capacity(6);
    for (b, &(i, k)) in cs.block_pairs.iter().enumerate() {
        let coeffs = solution[b * width..(b + 1) * width].to_vec();
        cofactors.push(((i, k), BinaryForm::new(cs.field, coeffs)?));
    }
    // Semantic re-verification on top of the solver's own check.
    let degree = target.monomial.degree() + cs.d;
    let mut acc = BinaryForm::zero(cs.field, degree);
    for ((i, k), h) in &cofactors {
        let product = cs.forms[*i].multiply(&cs.forms[*k])?;
        acc = acc.add(&h.multiply(&product)?)?;
    }
    let expected = target.monomial.multiply(&cs.forms[target.form_index])?;
    if acc != expected {
        return Err(Error::VerifyFailed(format!(
            "cofactor reconstruction of {} does not reproduce the target",
            target.label
        )));
    }
    Ok(Some(MembershipWitness {
        target_index,
        cofactors,
    }))
}

/// Outcome of the content-matrix route.
#[derive(Clone, Debug)]
pub struct ContentOutcome {
    /// Solvability per target, in target order.
    pub solvable: Vec<bool>,
    /// Witnesses for the solvable targets.
    pub witnesses: Vec<MembershipWitness>,
    /// For each socle monomial, whether it lies outside `I`.
    pub monomial_outside: Vec<(String, bool)>,
    /// All targets solvable and every socle monomial outside `I`.
    pub strictly_larger: bool,
}

/// Outcome of the colon-oracle route.
#[derive(Clone, Debug)]
pub struct ColonOutcome {
    /// Minimal generators of `(I^2 : I)`.
    pub colon: GradedIdeal,
    /// The first minimal generator outside `I`, if any.
    pub witness: Option<BinaryForm>,
    pub strictly_larger: bool,
}

/// Which route(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RRMethod {
    ContentMatrix,
    ColonOracle,
    Both,
}

impl std::str::FromStr for RRMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "content" => Ok(RRMethod::ContentMatrix),
            "colon" => Ok(RRMethod::ColonOracle),
            "both" => Ok(RRMethod::Both),
            other => Err(Error::InvalidInput(format!(
                "method must be \"content\", \"colon\" or \"both\", got {other:?}"
            ))),
        }
    }
}

/// Joint result of the requested routes.
#[derive(Clone, Debug)]
pub struct RRReport {
    pub d: usize,
    pub field: FieldSpec,
    pub content: Option<ContentOutcome>,
    pub colon: Option<ColonOutcome>,
}

impl RRReport {
    /// Verdicts of the two routes when both ran: they must agree for a
    /// sound run.
    pub fn verdicts_agree(&self) -> Option<bool> {
        match (&self.content, &self.colon) {
            (Some(c), Some(o)) => Some(c.strictly_larger == o.strictly_larger),
            _ => None,
        }
    }

    /// The strictly-larger verdict of whichever route ran (they agree
    /// when both did).
    pub fn strictly_larger(&self) -> bool {
        self.content
            .as_ref()
            .map(|c| c.strictly_larger)
            .or_else(|| self.colon.as_ref().map(|c| c.strictly_larger))
            .unwrap_or(false)
    }
}

/// Decide whether the Ratliff-Rush closure of `I = (f1, f2, f3)`
/// strictly exceeds `I` at the first colon step `(I^2 : I)`.
pub fn rr_test(forms: &[BinaryForm], method: RRMethod) -> Result<RRReport> {
    let ideal = GradedIdeal::new(forms.to_vec())?;
    let d = ideal.max_gen_degree();
    let field = ideal.field();
    let run_content = matches!(method, RRMethod::ContentMatrix | RRMethod::Both);
    let run_colon = matches!(method, RRMethod::ColonOracle | RRMethod::Both);
    let content = if run_content {
        let cs = content_system(forms)?;
        let mut solvable = Vec::with_capacity(cs.targets.len());
        let mut witnesses = Vec::new();
        for idx in 0..cs.targets.len() {
            match solve_membership(&cs, idx)? {
                Some(w) => {
                    solvable.push(true);
                    witnesses.push(w);
                }
                None => solvable.push(false),
            }
        }
        let mut monomial_outside = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for t in &cs.targets {
            let name = t.monomial.to_string();
            if seen.insert(name.clone()) {
                monomial_outside.push((name, !ideal.contains(&t.monomial)?));
            }
        }
        let strictly_larger =
            solvable.iter().all(|&b| b) && monomial_outside.iter().all(|(_, out)| *out);
        Some(ContentOutcome {
            solvable,
            witnesses,
            monomial_outside,
            strictly_larger,
        })
    } else {
        None
    };
    let colon = if run_colon {
        let square = ideal.power(2)?;
        let colon_ideal = square.colon(&ideal)?;
        let mut witness = None;
        for g in colon_ideal.minimal_generators() {
            if !ideal.contains(&g)? {
                witness = Some(g);
                break;
            }
        }
        let strictly_larger = witness.is_some();
        Some(ColonOutcome {
            colon: colon_ideal,
            witness,
            strictly_larger,
        })
    } else {
        None
    };
    Ok(RRReport {
        d,
        field,
        content,
        colon,
    })
}

/// The odd-degree companion ideal: for `d = 2s + 1`, the ideal
/// generated by `x^2 * delta(f_j)` for the three generators together
/// with `x * y^(d-1)` and `y^d`, where `delta` drops the two lowest
/// coefficients.
pub fn tilde_ideal(forms: &[BinaryForm]) -> Result<GradedIdeal> {
    if forms.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "exactly three forms expected, got {}",
            forms.len()
        )));
    }
    let d = forms[0].degree();
    if d % 2 == 0 || d < 3 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the companion ideal is defined for odd degrees of at least 3".into(),
        });
    }
    let field = forms[0].field();
    let mut gens = Vec::with_capacity(5);
    for f in forms {
        gens.push(f.delta()?.shift(2, 0));
    }
    gens.push(BinaryForm::monomial(field, 1, d)?);
    gens.push(BinaryForm::monomial(field, 0, d)?);
    GradedIdeal::new(gens)
}

/// One failed inclusion of the conjecture check.
#[derive(Clone, Debug)]
pub struct ConjectureFailure {
    pub monomial: String,
    pub pair: (usize, usize),
}

/// Result of checking `m * g_i * g_k in I^2` for every monomial `m` of
/// degree `s - 1` and every pair of companion-ideal generators.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub d: usize,
    pub holds: bool,
    pub inclusions_checked: usize,
    pub failures: Vec<ConjectureFailure>,
}

/// Check the square of the companion ideal against `(I^2 : m^(s-1))`:
/// for odd `d = 2s + 1 >= 5`, every product of a degree-`(s-1)`
/// monomial with a pair of companion generators must lie in `I^2`.
/// Requires `I` to be `(x, y)`-primary.
pub fn conjecture_check(forms: &[BinaryForm]) -> Result<ConjectureReport> {
    let d = forms.first().map(BinaryForm::degree).unwrap_or(0);
    if d % 2 == 0 || d < 5 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the conjecture check needs odd degree at least 5".into(),
        });
    }
    let s = (d - 1) / 2;
    let ideal = GradedIdeal::new(forms.to_vec())?;
    ideal.colength()?;
    let tilde = tilde_ideal(forms)?;
    let square = ideal.power(2)?;
    let tilde_gens = tilde.gens();
    // All products share one degree, so one piece subspace suffices.
    let check_degree = (s - 1) + 2 * d;
    let piece = square.piece_subspace(check_degree);
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in 0..=(s - 1) {
        let m = BinaryForm::monomial(ideal.field(), a, s - 1)?;
        for i in 0..tilde_gens.len() {
            for k in i..tilde_gens.len() {
                let product = m.multiply(&tilde_gens[i].multiply(&tilde_gens[k])?)?;
                checked += 1;
                if !piece.contains(product.coeffs()) {
                    failures.push(ConjectureFailure {
                        monomial: m.to_string(),
                        pair: (i, k),
                    });
                }
            }
        }
    }
    Ok(ConjectureReport {
        d,
        holds: failures.is_empty(),
        inclusions_checked: checked,
        failures,
    })
}

/// Result of the monomial-witness hunt: a degree-`3s` monomial
/// multiplying every generator into `I^2` while staying outside `I`.
#[derive(Clone, Debug)]
pub struct MonomialWitnessReport {
    pub d: usize,
    pub witness: Option<String>,
    pub holds: bool,
}

/// Hunt for a witness monomial of degree `3s` (odd `d = 2s + 1 >= 5`)
/// with `m * f_j in I^2` for all three generators and `m` outside `I`.
/// Requires `I` to be `(x, y)`-primary.
pub fn monomial_witness_check(forms: &[BinaryForm]) -> Result<MonomialWitnessReport> {
    let d = forms.first().map(BinaryForm::degree).unwrap_or(0);
    if d % 2 == 0 || d < 5 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the monomial-witness hunt needs odd degree at least 5".into(),
        });
    }
    let s = (d - 1) / 2;
    let ideal = GradedIdeal::new(forms.to_vec())?;
    ideal.colength()?;
    let square = ideal.power(2)?;
    let field = ideal.field();
    let ideal_piece = ideal.piece_subspace(3 * s);
    let square_piece: Subspace = square.piece_subspace(3 * s + d);
    for a in 0..=(3 * s) {
        let m = BinaryForm::monomial(field, a, 3 * s)?;
        if ideal_piece.contains(m.coeffs()) {
            continue;
        }
        let all_in = forms
            .iter()
            .map(|f| m.multiply(f).map(|p| square_piece.contains(p.coeffs())))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if all_in {
            return Ok(MonomialWitnessReport {
                d,
                witness: Some(m.to_string()),
                holds: true,
            });
        }
    }
    Ok(MonomialWitnessReport {
        d,
        witness: None,
        holds: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::general_forms;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const P: u64 = 2147483647;

    fn fp() -> FieldSpec {
        FieldSpec::prime(P).unwrap()
    }

    fn general(d: usize, seed: u64) -> Vec<BinaryForm> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        general_forms(fp(), d, &mut rng).unwrap().0
    }

    #[test]
    fn content_system_shapes() {
        let forms = general(5, 21);
        let cs = content_system(&forms).unwrap();
        assert_eq!((cs.matrix.rows(), cs.matrix.cols()), (12, 12));
        assert_eq!(cs.targets.len(), 3);
        assert_eq!(cs.cofactor_degree(), 1);
        assert_eq!(cs.targets[0].label, "y^6 * f1");
        let forms = general(10, 22);
        let cs = content_system(&forms).unwrap();
        assert_eq!((cs.matrix.rows(), cs.matrix.cols()), (24, 24));
        assert_eq!(cs.targets.len(), 6);
        assert_eq!(cs.targets[1].label, "x*y^12 * f1");
    }

    #[test]
    fn content_system_rejects_small_even_degrees() {
        let forms = general(6, 23);
        assert!(content_system(&forms).is_err());
        let forms = general(8, 24);
        assert!(content_system(&forms).is_err());
    }

    #[test]
    fn general_quintics_are_not_ratliff_rush_closed() {
        let forms = general(5, 25);
        let report = rr_test(&forms, RRMethod::Both).unwrap();
        let content = report.content.as_ref().unwrap();
        assert!(content.solvable.iter().all(|&b| b));
        assert!(content.strictly_larger);
        assert_eq!(content.witnesses.len(), 3);
        let colon = report.colon.as_ref().unwrap();
        assert!(colon.strictly_larger);
        assert_eq!(report.verdicts_agree(), Some(true));
    }

    #[test]
    fn colon_route_witness_multiplies_into_square() {
        let forms = general(7, 26);
        let report = rr_test(&forms, RRMethod::ColonOracle).unwrap();
        let colon = report.colon.as_ref().unwrap();
        let witness = colon.witness.as_ref().unwrap();
        let ideal = GradedIdeal::new(forms.clone()).unwrap();
        let square = ideal.power(2).unwrap();
        assert!(!ideal.contains(witness).unwrap());
        for f in &forms {
            let product = witness.multiply(f).unwrap();
            assert!(square.contains(&product).unwrap());
        }
    }

    #[test]
    fn equal_power_generators_leave_no_witness() {
        // f1 = f2 = f3 = x^d: the content system has no solution, so
        // the solver must report absence rather than fabricate one.
        let f = fp();
        let xd = BinaryForm::monomial(f, 5, 5).unwrap();
        let forms = vec![xd.clone(), xd.clone(), xd];
        let report = rr_test(&forms, RRMethod::ContentMatrix).unwrap();
        let content = report.content.as_ref().unwrap();
        assert!(content.solvable.iter().all(|&b| !b));
        assert!(!content.strictly_larger);
    }

    #[test]
    fn tilde_ideal_generators() {
        let f = fp();
        let d = 7;
        let forms = general(d, 27);
        let tilde = tilde_ideal(&forms).unwrap();
        assert_eq!(tilde.gens().len(), 5);
        for g in &tilde.gens()[..3] {
            assert_eq!(g.degree(), d);
            assert!(g.coeff(0).is_zero());
            assert!(g.coeff(1).is_zero());
        }
        assert_eq!(tilde.gens()[3], BinaryForm::monomial(f, 1, d).unwrap());
        assert_eq!(tilde.gens()[4], BinaryForm::monomial(f, 0, d).unwrap());
        let even = general(6, 28);
        assert!(tilde_ideal(&even).is_err());
    }

    #[test]
    fn conjecture_holds_for_general_quintics_and_septics() {
        for (d, seed, pairs) in [(5usize, 29u64, 15usize), (7, 30, 15)] {
            let forms = general(d, seed);
            let report = conjecture_check(&forms).unwrap();
            assert!(report.holds, "degree {d}");
            let s = (d - 1) / 2;
            assert_eq!(report.inclusions_checked, pairs * s);
            assert!(report.failures.is_empty());
        }
    }

    #[test]
    fn monomial_witness_hunt_finds_the_socle_monomial() {
        let forms = general(5, 31);
        let report = monomial_witness_check(&forms).unwrap();
        assert!(report.holds);
        assert_eq!(report.witness.as_deref(), Some("y^6"));
    }

    #[test]
    fn checks_reject_even_or_tiny_degrees() {
        let forms = general(6, 32);
        assert!(conjecture_check(&forms).is_err());
        assert!(monomial_witness_check(&forms).is_err());
    }

    #[test]
    fn content_matrix_is_the_specialized_generic_matrix() {
        // The content matrix over concrete forms must coincide entry
        // by entry with the generic block matrix specialized at the
        // coefficient assignment of those forms.
        use crate::genrank::{assignment_from_forms, concat_a};
        for (d, seed) in [(5usize, 33u64), (7, 34), (11, 35), (10, 36), (12, 37)] {
            let forms = general(d, seed);
            let cs = content_system(&forms).unwrap();
            let generic = concat_a(d).unwrap();
            let assignment = assignment_from_forms(&forms).unwrap();
            let specialized = generic.specialize(fp(), &assignment).unwrap();
            assert_eq!(cs.matrix, specialized, "degree {d}");
        }
    }
}
