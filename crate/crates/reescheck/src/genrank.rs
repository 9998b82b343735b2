//! Block matrices of generic quadrics and maximal-rank certificates.
//!
//! Take three generic binary forms of degree `d` with indeterminate
//! coefficients `T1_0..T1_d`, `T2_*`, `T3_*`. The product of forms
//! `t1` and `t2` has, in each degree `r` from `0` to `2d`, the generic
//! quadric coefficient
//!
//! ```text
//! Q_r = sum over l in [max(0, r-d), min(r, d)] of Tt1_l * Tt2_(r-l)
//! ```
//!
//! a bilinear form in the two coefficient families. For `t1 = t2` the
//! symmetric pairs appear twice, which encodes the coefficient 2.
//!
//! These quadrics fill banded Toeplitz-like blocks `B(t1, t2)`, and the
//! six blocks with `t1 <= t2` concatenate into one wide matrix `A`. A
//! square column selection of `A` that drops leading columns of the
//! last block has maximal rank for generic `T`, and this module
//! certifies that by exhibiting one explicit point: either the sparse
//! `phi` assignment that keeps only four survivor variables alive, or
//! a uniformly random assignment. Specializing and computing the exact
//! rank yields a checkable certificate, since rank can only drop under
//! specialization.
//!
//! Characteristic 2 is refused: the sparse route divides by the
//! coefficient 2 sitting in front of the mixed survivor products.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::forms::BinaryForm;
use crate::graded::RESAMPLE_CAP;
use crate::scalars::{DenseMatrix, FieldSpec, Scalar};
use crate::{Error, Result};

/// One indeterminate coefficient `T<family>_<index>`: `family` names
/// the form (1, 2 or 3) and `index` the `x`-power of its coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TVar {
    pub family: u8,
    pub index: usize,
}

impl TVar {
    pub fn new(family: u8, index: usize) -> Self {
        assert!((1..=3).contains(&family), "family must be 1, 2 or 3");
        TVar { family, index }
    }
}

impl fmt::Display for TVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}_{}", self.family, self.index)
    }
}

impl FromStr for TVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad variable name: {s:?}"));
        let rest = s.strip_prefix('T').ok_or_else(bad)?;
        let (fam, idx) = rest.split_once('_').ok_or_else(bad)?;
        let family: u8 = fam.parse().map_err(|_| bad())?;
        if !(1..=3).contains(&family) {
            return Err(bad());
        }
        let index: usize = idx.parse().map_err(|_| bad())?;
        Ok(TVar { family, index })
    }
}

/// A value for every variable of the three generic forms.
pub type Assignment = BTreeMap<TVar, Scalar>;

/// The degree-`r` coefficient of the product of generic forms `t1` and
/// `t2`, kept as its list of variable pairs. Repeated pairs encode
/// integer coefficients larger than 1.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericQuadric {
    pub t1: u8,
    pub t2: u8,
    pub r: usize,
    terms: Vec<(TVar, TVar)>,
}

impl GenericQuadric {
    pub fn terms(&self) -> &[(TVar, TVar)] {
        &self.terms
    }

    /// Exact value under an assignment; every variable that occurs
    /// must be assigned.
    pub fn evaluate(&self, field: FieldSpec, assign: &Assignment) -> Result<Scalar> {
        let mut acc = field.zero();
        for (a, b) in &self.terms {
            let va = assign
                .get(a)
                .ok_or_else(|| Error::InvalidInput(format!("unassigned variable {a}")))?;
            let vb = assign
                .get(b)
                .ok_or_else(|| Error::InvalidInput(format!("unassigned variable {b}")))?;
            if !field.owns(va) || !field.owns(vb) {
                return Err(Error::FieldMismatch(format!("assignment of {a} or {b}")));
            }
            acc = field.add(&acc, &field.mul(va, vb));
        }
        Ok(acc)
    }
}

/// The generic quadric `Q_r` for the form pair `(t1, t2)`, degrees of
/// the forms being `d`: all products `Tt1_l * Tt2_(r-l)` with both
/// indices in range. Requires `1 <= t1 <= t2 <= 3` and `r <= 2d`.
pub fn q_form(d: usize, r: usize, t1: u8, t2: u8) -> Result<GenericQuadric> {
    if !(1..=3).contains(&t1) || !(1..=3).contains(&t2) || t1 > t2 {
        return Err(Error::InvalidInput(format!(
            "form pair ({t1}, {t2}) must satisfy 1 <= t1 <= t2 <= 3"
        )));
    }
    if r > 2 * d {
        return Err(Error::UnsupportedDegree {
            degree: r,
            reason: format!("product of two degree-{d} forms stops at degree {}", 2 * d),
        });
    }
    let lo = r.saturating_sub(d);
    let hi = r.min(d);
    let terms = (lo..=hi)
        .map(|l| (TVar::new(t1, l), TVar::new(t2, r - l)))
        .collect();
    Ok(GenericQuadric { t1, t2, r, terms })
}

/// Placement of one block inside a concatenated matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockInfo {
    pub t1: u8,
    pub t2: u8,
    pub col_start: usize,
    pub cols: usize,
}

/// A matrix whose entries are generic quadrics or structural zeros,
/// with bookkeeping for which block each column belongs to.
#[derive(Clone, Debug)]
pub struct GenericMatrix {
    d: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Option<GenericQuadric>>,
    blocks: Vec<BlockInfo>,
}

impl GenericMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn blocks(&self) -> &[BlockInfo] {
        &self.blocks
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&GenericQuadric> {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j].as_ref()
    }

    /// The distinct quadrics appearing in the matrix, by `(t1, t2, r)`.
    pub fn distinct_quadrics(&self) -> Vec<GenericQuadric> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in self.entries.iter().flatten() {
            if seen.insert((e.t1, e.t2, e.r)) {
                out.push(e.clone());
            }
        }
        out
    }

    /// Evaluate every entry under an assignment.
    pub fn specialize(&self, field: FieldSpec, assign: &Assignment) -> Result<DenseMatrix> {
        let mut out = DenseMatrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some(q) = self.get(i, j) {
                    out.set(i, j, q.evaluate(field, assign)?);
                }
            }
        }
        Ok(out)
    }
}

/// Row count, per-block column count, and band height for degree `d`.
fn parity_sizes(d: usize) -> Result<(usize, usize, usize)> {
    if d % 2 == 1 {
        let s = (d - 1) / 2;
        if s < 1 {
            return Err(Error::UnsupportedDegree {
                degree: d,
                reason: "odd block shapes need degree at least 3".into(),
            });
        }
        Ok((5 * s + 2, s, 4 * s + 2))
    } else {
        let s = d / 2;
        if s < 2 {
            return Err(Error::UnsupportedDegree {
                degree: d,
                reason: "even block shapes need degree at least 4".into(),
            });
        }
        Ok((5 * s - 1, s - 1, 4 * s))
    }
}

/// The banded block `B(t1, t2)`: entry `(i, c)` is `Q_(i-c)` when
/// `0 <= i - c <= band`, structurally zero otherwise. Odd `d = 2s + 1`
/// gives shape `(5s+2) x s` with band `4s+2`; even `d = 2s` gives
/// `(5s-1) x (s-1)` with band `4s`.
pub fn block(d: usize, t1: u8, t2: u8) -> Result<GenericMatrix> {
    let (rows, cols, band) = parity_sizes(d)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for c in 0..cols {
            if i >= c && i - c <= band {
                entries.push(Some(q_form(d, i - c, t1, t2)?));
            } else {
                entries.push(None);
            }
        }
    }
    Ok(GenericMatrix {
        d,
        rows,
        cols,
        entries,
        blocks: vec![BlockInfo {
            t1,
            t2,
            col_start: 0,
            cols,
        }],
    })
}

const BLOCK_PAIRS: [(u8, u8); 6] = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// Concatenation of the six blocks `B(t1, t2)`, `t1 <= t2`, in the
/// order 11, 12, 13, 22, 23, 33, without the degree restrictions of
/// [`concat_a`]. Square column selections only exist in the supported
/// range, so this is for exploratory builds.
pub fn concat_a_any(d: usize) -> Result<GenericMatrix> {
    let (rows, bcols, _) = parity_sizes(d)?;
    let mut entries = vec![None; rows * 6 * bcols];
    let mut blocks = Vec::with_capacity(6);
    for (k, &(t1, t2)) in BLOCK_PAIRS.iter().enumerate() {
        let b = block(d, t1, t2)?;
        let col_start = k * bcols;
        for i in 0..rows {
            for c in 0..bcols {
                entries[i * 6 * bcols + col_start + c] = b.entries[i * bcols + c].clone();
            }
        }
        blocks.push(BlockInfo {
            t1,
            t2,
            col_start,
            cols: bcols,
        });
    }
    Ok(GenericMatrix {
        d,
        rows,
        cols: 6 * bcols,
        entries,
        blocks,
    })
}

/// The concatenated matrix `A` for odd `d >= 5` or even `d >= 10`, the
/// range where a maximal-rank square selection exists.
pub fn concat_a(d: usize) -> Result<GenericMatrix> {
    if d % 2 == 1 && d < 5 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "odd degrees start at 5".into(),
        });
    }
    if d % 2 == 0 && d < 10 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "even degrees start at 10; below that run the depth pipeline, \
                     or pass the exploratory flag to build the matrix anyway"
                .into(),
        });
    }
    concat_a_any(d)
}

/// The square column selection of `A`: drop the first `s - 2` (odd
/// `d = 2s + 1`) or `s - 5` (even `d = 2s`) columns of the last block
/// `B(3, 3)`. The result has as many columns as rows.
pub fn select_b(d: usize) -> Result<GenericMatrix> {
    let a = concat_a(d)?;
    let drop = if d % 2 == 1 {
        (d - 1) / 2 - 2
    } else {
        d / 2 - 5
    };
    let last = *a.blocks.last().expect("six blocks");
    let dropped: Vec<usize> = (last.col_start..last.col_start + drop).collect();
    let keep: Vec<usize> = (0..a.cols).filter(|j| !dropped.contains(j)).collect();
    let cols = keep.len();
    debug_assert_eq!(cols, a.rows);
    let mut entries = Vec::with_capacity(a.rows * cols);
    for i in 0..a.rows {
        for &j in &keep {
            entries.push(a.entries[i * a.cols + j].clone());
        }
    }
    let mut blocks = a.blocks.clone();
    blocks.last_mut().expect("six blocks").cols -= drop;
    Ok(GenericMatrix {
        d,
        rows: a.rows,
        cols,
        entries,
        blocks,
    })
}

/// The four survivor variables of the sparse `phi` assignment:
/// `T1_0, T2_s, T2_2s, T3_(2s+1)` for odd `d = 2s + 1` and
/// `T1_0, T2_(s-1), T2_(2s-2), T3_2s` for even `d = 2s`.
pub fn phi_survivors(d: usize) -> Result<[TVar; 4]> {
    parity_sizes(d)?;
    if d % 2 == 1 {
        let s = (d - 1) / 2;
        Ok([
            TVar::new(1, 0),
            TVar::new(2, s),
            TVar::new(2, 2 * s),
            TVar::new(3, 2 * s + 1),
        ])
    } else {
        let s = d / 2;
        Ok([
            TVar::new(1, 0),
            TVar::new(2, s - 1),
            TVar::new(2, 2 * (s - 1)),
            TVar::new(3, 2 * s),
        ])
    }
}

/// The sparse assignment: the four survivors get the given nonzero
/// values and every other variable becomes zero.
pub fn phi_assignment(d: usize, field: FieldSpec, values: &[Scalar; 4]) -> Result<Assignment> {
    let survivors = phi_survivors(d)?;
    for (k, v) in values.iter().enumerate() {
        if !field.owns(v) {
            return Err(Error::FieldMismatch(format!("survivor value {k}")));
        }
        if v.is_zero() {
            return Err(Error::InvalidInput(format!(
                "survivor {} must get a nonzero value",
                survivors[k]
            )));
        }
    }
    let mut assign = Assignment::new();
    for family in 1..=3u8 {
        for index in 0..=d {
            assign.insert(TVar::new(family, index), field.zero());
        }
    }
    for (var, value) in survivors.iter().zip(values) {
        assign.insert(*var, value.clone());
    }
    Ok(assign)
}

/// The sparse assignment with all four survivors set to 1.
pub fn phi_assignment_ones(d: usize, field: FieldSpec) -> Result<Assignment> {
    let one = field.one();
    phi_assignment(d, field, &[one.clone(), one.clone(), one.clone(), one])
}

/// Uniform random values for all `3(d + 1)` variables.
pub fn random_assignment<R: Rng>(d: usize, field: FieldSpec, rng: &mut R) -> Result<Assignment> {
    let mut assign = Assignment::new();
    for family in 1..=3u8 {
        for index in 0..=d {
            let v = field.random(rng).ok_or(Error::NeedsFiniteField)?;
            assign.insert(TVar::new(family, index), v);
        }
    }
    Ok(assign)
}

/// The assignment sending each variable to the matching coefficient of
/// three concrete forms of one common degree. Under it every generic
/// quadric evaluates to the corresponding product coefficient.
pub fn assignment_from_forms(forms: &[BinaryForm]) -> Result<Assignment> {
    if forms.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "exactly three forms expected, got {}",
            forms.len()
        )));
    }
    let d = forms[0].degree();
    let field = forms[0].field();
    if forms.iter().any(|f| f.degree() != d) {
        return Err(Error::DimensionMismatch(
            "the three forms must share one degree".into(),
        ));
    }
    if forms.iter().any(|f| f.field() != field) {
        return Err(Error::FieldMismatch("the three forms".into()));
    }
    let mut assign = Assignment::new();
    for (j, form) in forms.iter().enumerate() {
        for (index, coeff) in form.coeffs().iter().enumerate() {
            assign.insert(TVar::new(j as u8 + 1, index), coeff.clone());
        }
    }
    Ok(assign)
}

/// The 2 x 2 pivot minor of the sparse route, as generic quadrics:
/// rows `(Q_4s^22, Q_3s^22)` and `(Q_(4s+1)^23, Q_(3s+1)^23)` for odd
/// `d = 2s + 1`, the analogous indices shifted to `s - 1` for even
/// `d = 2s`. Under the `phi` assignment with survivor values
/// `(a, b, c, e)` its determinant is `-b * c^2 * e`.
pub fn phi_pivot_minor(d: usize) -> Result<[GenericQuadric; 4]> {
    parity_sizes(d)?;
    if d % 2 == 1 {
        let s = (d - 1) / 2;
        Ok([
            q_form(d, 4 * s, 2, 2)?,
            q_form(d, 3 * s, 2, 2)?,
            q_form(d, 4 * s + 1, 2, 3)?,
            q_form(d, 3 * s + 1, 2, 3)?,
        ])
    } else {
        // Even survivors sit at T2_a, T2_2a, T3_(2a+2) for a = d/2 - 1,
        // so the surviving 22 quadrics are Q_4a and Q_3a and the
        // surviving 23 quadrics are Q_(4a+2) and Q_(3a+2).
        let a = d / 2 - 1;
        Ok([
            q_form(d, 4 * a, 2, 2)?,
            q_form(d, 3 * a, 2, 2)?,
            q_form(d, 4 * a + 2, 2, 3)?,
            q_form(d, 3 * a + 2, 2, 3)?,
        ])
    }
}

/// Determinant of the pivot minor under an assignment.
pub fn phi_pivot_determinant(d: usize, field: FieldSpec, assign: &Assignment) -> Result<Scalar> {
    let [a, b, c, e] = phi_pivot_minor(d)?;
    let m = DenseMatrix::from_rows(
        field,
        &[
            vec![a.evaluate(field, assign)?, b.evaluate(field, assign)?],
            vec![c.evaluate(field, assign)?, e.evaluate(field, assign)?],
        ],
    )?;
    m.determinant()
}

/// How the specialization point is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankStrategy {
    /// The sparse four-survivor assignment with all values 1.
    Phi,
    /// Uniform random values for every variable.
    Random,
}

impl fmt::Display for RankStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankStrategy::Phi => write!(f, "phi"),
            RankStrategy::Random => write!(f, "random"),
        }
    }
}

impl FromStr for RankStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(RankStrategy::Phi),
            "random" => Ok(RankStrategy::Random),
            other => Err(Error::InvalidInput(format!(
                "strategy must be \"phi\" or \"random\", got {other:?}"
            ))),
        }
    }
}

/// A checkable witness that the generic matrix reaches its target
/// rank: the explicit assignment together with the exact rank of the
/// specialized matrix. Rank only drops under specialization, so
/// `achieved == target` proves the generic claim.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub d: usize,
    pub exploratory: bool,
    pub strategy: RankStrategy,
    pub field: FieldSpec,
    pub seed: Option<u64>,
    pub rows: usize,
    pub cols: usize,
    pub target_rank: usize,
    pub achieved_rank: usize,
    pub assignment: Assignment,
    pub resamples: Vec<String>,
}

impl RankCertificate {
    pub fn full_rank(&self) -> bool {
        self.achieved_rank == self.target_rank
    }
}

/// The matrix a certificate is about: the square selection in the
/// supported range, the raw concatenation for exploratory even
/// degrees below 10.
pub fn certificate_matrix(d: usize, exploratory: bool) -> Result<GenericMatrix> {
    if exploratory && d % 2 == 0 && d < 10 {
        concat_a_any(d)
    } else {
        select_b(d)
    }
}

/// Build a maximal-rank certificate for degree `d`. Characteristic 2
/// is refused. The random strategy needs a finite field and a seed,
/// and resamples (up to the genericity cap) if an assignment misses
/// the target rank; every resample is recorded.
pub fn maximal_rank_certificate(
    d: usize,
    exploratory: bool,
    strategy: RankStrategy,
    field: FieldSpec,
    seed: Option<u64>,
) -> Result<RankCertificate> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let matrix = certificate_matrix(d, exploratory)?;
    let target = matrix.rows().min(matrix.cols());
    let mut resamples = Vec::new();
    match strategy {
        RankStrategy::Phi => {
            let assignment = phi_assignment_ones(d, field)?;
            let achieved = matrix.specialize(field, &assignment)?.rank();
            Ok(RankCertificate {
                d,
                exploratory,
                strategy,
                field,
                seed: None,
                rows: matrix.rows(),
                cols: matrix.cols(),
                target_rank: target,
                achieved_rank: achieved,
                assignment,
                resamples,
            })
        }
        RankStrategy::Random => {
            let seed_value = seed.ok_or_else(|| {
                Error::InvalidInput("the random strategy needs a seed".into())
            })?;
            let mut rng = ChaCha20Rng::seed_from_u64(seed_value);
            let mut last = None;
            for _ in 0..RESAMPLE_CAP {
                let assignment = random_assignment(d, field, &mut rng)?;
                let achieved = matrix.specialize(field, &assignment)?.rank();
                if achieved == target || exploratory {
                    return Ok(RankCertificate {
                        d,
                        exploratory,
                        strategy,
                        field,
                        seed: Some(seed_value),
                        rows: matrix.rows(),
                        cols: matrix.cols(),
                        target_rank: target,
                        achieved_rank: achieved,
                        assignment,
                        resamples,
                    });
                }
                resamples.push(format!(
                    "random assignment reached rank {achieved} of {target}"
                ));
                last = Some((assignment, achieved));
            }
            let _ = last;
            Err(Error::ResampleCap(RESAMPLE_CAP))
        }
    }
}
