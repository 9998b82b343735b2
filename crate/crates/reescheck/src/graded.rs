//! Degree-by-degree queries on homogeneous ideals of `k[x, y]`.
//!
//! An ideal is held as a list of nonzero generating forms. Every
//! question is answered through exact linear algebra on one graded
//! piece at a time: the degree-`t` piece of the ideal is the span of
//! the columns `m * g` where `g` runs over the generators and `m` over
//! the monomials of complementary degree. On top of piece dimensions
//! sit Hilbert functions, membership, products and powers, colon
//! ideals, colengths, minimal generators, and first syzygies.
//!
//! Minimal generators and syzygies use graded Nakayama: the new
//! generators in degree `t` form a complement of `(x, y) * (part
//! already generated)` inside the degree-`t` piece. Complements are
//! extracted as reduced echelon bases, so the output is canonical and
//! independent of generator order.
//!
//! Colengths and colon ideals only terminate for `(x, y)`-primary
//! input; the scan stops after two consecutive zero values of the
//! Hilbert function (for an ideal one zero already forces the rest,
//! the second is a cheap safety) and gives up with an error past the
//! degree bound `3 * max generator degree + 6`.

use rand::Rng;
use std::collections::HashMap;

use crate::forms::BinaryForm;
use crate::scalars::{DenseMatrix, FieldSpec, Scalar, Subspace};
use crate::{Error, Result};

/// How many times a genericity guard may reject a random sample
/// before the caller gives up.
pub const RESAMPLE_CAP: usize = 5;

/// A homogeneous ideal of `k[x, y]`, given by nonzero generators.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    field: FieldSpec,
    gens: Vec<BinaryForm>,
}

/// One minimal generator of the first syzygy module of an ordered
/// list of equal-degree forms: coordinates `h_i` with
/// `sum h_i * f_i = 0`, all of one degree.
#[derive(Clone, Debug)]
pub struct SyzygyGen {
    /// Cofactor forms, one per generator of the ideal.
    pub coords: Vec<BinaryForm>,
    /// Common degree of generator times cofactor.
    pub standard_degree: usize,
}

impl GradedIdeal {
    /// Build from generators: nonempty, nonzero, one common field.
    pub fn new(gens: Vec<BinaryForm>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidInput("an ideal needs generators".into()));
        };
        let field = first.field();
        for (i, g) in gens.iter().enumerate() {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!("generator {i}")));
            }
            if g.is_zero() {
                return Err(Error::InvalidInput(format!("generator {i} is zero")));
            }
        }
        Ok(GradedIdeal { field, gens })
    }

    /// The unit ideal, generated by 1.
    pub fn unit(field: FieldSpec) -> Self {
        GradedIdeal {
            field,
            gens: vec![BinaryForm::one(field)],
        }
    }

    /// The irrelevant maximal ideal `(x, y)`.
    pub fn maximal_ideal(field: FieldSpec) -> Self {
        GradedIdeal {
            field,
            gens: vec![
                BinaryForm::monomial(field, 1, 1).expect("x"),
                BinaryForm::monomial(field, 0, 1).expect("y"),
            ],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn gens(&self) -> &[BinaryForm] {
        &self.gens
    }

    pub fn min_gen_degree(&self) -> usize {
        self.gens.iter().map(BinaryForm::degree).min().unwrap()
    }

    pub fn max_gen_degree(&self) -> usize {
        self.gens.iter().map(BinaryForm::degree).max().unwrap()
    }

    fn degree_cap(&self) -> usize {
        3 * self.max_gen_degree() + 6
    }

    /// Matrix whose columns span the degree-`t` piece: every monomial
    /// multiple `x^a y^(t - deg g - a) * g` of every generator that
    /// fits in degree `t`.
    pub fn piece_matrix(&self, t: usize) -> DenseMatrix {
        let mut columns = Vec::new();
        for g in &self.gens {
            if g.degree() > t {
                continue;
            }
            let room = t - g.degree();
            for a in 0..=room {
                columns.push(g.shift(a, room - a).coeffs().to_vec());
            }
        }
        DenseMatrix::from_columns(self.field, t + 1, &columns)
            .expect("piece columns share one length")
    }

    /// Dimension of the degree-`t` piece of the ideal.
    pub fn piece_dim(&self, t: usize) -> usize {
        self.piece_matrix(t).rank()
    }

    /// The degree-`t` piece as a canonical subspace of `k^(t+1)`.
    pub fn piece_subspace(&self, t: usize) -> Subspace {
        Subspace::from_matrix_columns(&self.piece_matrix(t))
    }

    /// Hilbert function of the quotient ring, `dim (R/I)_t`.
    pub fn hilbert_function(&self, t: usize) -> usize {
        (t + 1) - self.piece_dim(t)
    }

    /// Exact ideal membership of a form, checked in its own degree.
    pub fn contains(&self, f: &BinaryForm) -> Result<bool> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch("membership query".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.piece_subspace(f.degree()).contains(f.coeffs()))
    }

    /// Product ideal, generated by all pairwise generator products.
    pub fn product(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("ideal product".into()));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.multiply(b)?);
            }
        }
        GradedIdeal::new(gens)
    }

    /// `n`-th power, `n >= 1`: generated by all degree-`n` monomials
    /// in the generators.
    pub fn power(&self, n: usize) -> Result<GradedIdeal> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "power exponent must be at least 1; the zeroth power is the unit ideal".into(),
            ));
        }
        let mut gens = Vec::new();
        let mut exponents = vec![0usize; self.gens.len()];
        build_monomials(&self.gens, &mut exponents, 0, n, &mut gens)?;
        GradedIdeal::new(gens)
    }

    /// Total length `sum_t dim (R/I)_t`; errors when the ideal is not
    /// `(x, y)`-primary within the degree cap.
    pub fn colength(&self) -> Result<usize> {
        let cap = self.degree_cap();
        let mut sum = 0usize;
        let mut zeros = 0usize;
        for t in 0..=cap {
            let h = self.hilbert_function(t);
            sum += h;
            zeros = if h == 0 { zeros + 1 } else { 0 };
            if zeros == 2 {
                return Ok(sum);
            }
        }
        Err(Error::NotMPrimary(cap))
    }

    /// First degree from which every piece of `R/I` vanishes; errors
    /// when the ideal is not `(x, y)`-primary within the degree cap.
    /// Colon ideals against this ideal are generated in degrees at
    /// most this bound.
    pub fn socle_bound(&self) -> Result<usize> {
        let cap = self.degree_cap();
        for t in 0..=cap {
            if self.hilbert_function(t) == 0 && self.hilbert_function(t + 1) == 0 {
                return Ok(t);
            }
        }
        Err(Error::NotMPrimary(cap))
    }

    /// Canonical minimal generators (echelon complements, degree by
    /// degree). The result generates the same ideal and has the
    /// minimal possible number of elements in each degree.
    pub fn minimal_generators(&self) -> Vec<BinaryForm> {
        let lo = self.min_gen_degree();
        let hi = self.max_gen_degree();
        let mut out = Vec::new();
        let mut prev: Option<Subspace> = None;
        for t in lo..=hi {
            let piece = self.piece_subspace(t);
            let mut span = Subspace::new(self.field, t + 1);
            if let Some(p) = &prev {
                for row in p.basis() {
                    span.insert(shift_x(row));
                    span.insert(shift_y(row));
                }
            }
            let mut fresh = Subspace::new(self.field, t + 1);
            for row in piece.basis() {
                fresh.insert(span.reduce(row));
            }
            for row in fresh.basis() {
                out.push(BinaryForm::new(self.field, row.clone()).expect("nonzero echelon row"));
            }
            prev = Some(piece);
        }
        out
    }

    /// Sorted degrees of a minimal generating set.
    pub fn minimal_generator_degrees(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self
            .minimal_generators()
            .iter()
            .map(BinaryForm::degree)
            .collect();
        degs.sort_unstable();
        degs
    }

    /// Colon ideal `(self : other)`, returned by canonical minimal
    /// generators. Requires `self` to be `(x, y)`-primary so the scan
    /// provably reaches all generators.
    pub fn colon(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        self.colon_inner(other, self.degree_cap(), true)
    }

    /// Colon ideal generators found in degrees at most `t_max`; for a
    /// complete answer `t_max` must be at least [`Self::socle_bound`].
    pub fn colon_up_to(&self, other: &GradedIdeal, t_max: usize) -> Result<GradedIdeal> {
        self.colon_inner(other, t_max, false)
    }

    fn colon_inner(
        &self,
        other: &GradedIdeal,
        t_max: usize,
        require_complete: bool,
    ) -> Result<GradedIdeal> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("colon ideal".into()));
        }
        let f = self.field;
        let mut own_pieces: HashMap<usize, Subspace> = HashMap::new();
        let mut gens: Vec<BinaryForm> = Vec::new();
        let mut prev_piece: Option<Subspace> = None;
        let mut prev_full = false;
        for t in 0..=t_max {
            // One column per monomial x^a y^(t-a); stacked residuals of
            // monomial * b against the pieces of self, one block per
            // generator b of other. The kernel is exactly the set of
            // degree-t forms multiplying all of other into self.
            let mut columns = vec![Vec::new(); t + 1];
            for b in other.gens() {
                let target_degree = t + b.degree();
                let piece = own_pieces
                    .entry(target_degree)
                    .or_insert_with(|| self.piece_subspace(target_degree));
                for (a, col) in columns.iter_mut().enumerate() {
                    let product = b.shift(a, t - a);
                    col.extend(piece.reduce(product.coeffs()));
                }
            }
            let height = columns[0].len();
            let m = DenseMatrix::from_columns(f, height, &columns)?;
            let mut piece = Subspace::new(f, t + 1);
            for v in m.kernel_basis() {
                piece.insert(v);
            }
            let mut span = Subspace::new(f, t + 1);
            if let Some(p) = &prev_piece {
                for row in p.basis() {
                    span.insert(shift_x(row));
                    span.insert(shift_y(row));
                }
            }
            let mut fresh = Subspace::new(f, t + 1);
            for row in piece.basis() {
                fresh.insert(span.reduce(row));
            }
            for row in fresh.basis() {
                gens.push(BinaryForm::new(f, row.clone()).expect("nonzero echelon row"));
            }
            let full = piece.is_full();
            if full && prev_full {
                return GradedIdeal::new(gens);
            }
            prev_full = full;
            prev_piece = Some(piece);
        }
        if require_complete {
            return Err(Error::NotMPrimary(t_max));
        }
        if gens.is_empty() {
            return Err(Error::InvalidInput(format!(
                "no colon generators in degrees up to {t_max}"
            )));
        }
        GradedIdeal::new(gens)
    }

    /// Minimal generators of the first syzygy module of the ordered
    /// generator list. All generators must have one degree, and the
    /// ideal must be `(x, y)`-primary: then the syzygy module of `g`
    /// generators is free of rank `g - 1` and the search stops as soon
    /// as that many minimal generators have appeared.
    pub fn first_syzygies(&self) -> Result<Vec<SyzygyGen>> {
        let g = self.gens.len();
        if g < 2 {
            return Err(Error::InvalidInput(
                "syzygies need at least two generators".into(),
            ));
        }
        let d = self.gens[0].degree();
        if self.gens.iter().any(|x| x.degree() != d) {
            return Err(Error::InvalidInput(
                "syzygies are computed for generators of one common degree".into(),
            ));
        }
        let f = self.field;
        let target = g - 1;
        let mut found: Vec<SyzygyGen> = Vec::new();
        let mut prev_kernel: Option<Subspace> = None;
        for t in 0..=self.degree_cap() {
            let ambient = g * (t + 1);
            let mut columns = Vec::with_capacity(ambient);
            for gen in &self.gens {
                for a in 0..=t {
                    columns.push(gen.shift(a, t - a).coeffs().to_vec());
                }
            }
            let m = DenseMatrix::from_columns(f, t + d + 1, &columns)?;
            let mut kernel = Subspace::new(f, ambient);
            for v in m.kernel_basis() {
                kernel.insert(v);
            }
            let mut span = Subspace::new(f, ambient);
            if let Some(p) = &prev_kernel {
                for row in p.basis() {
                    span.insert(shift_module_x(g, row));
                    span.insert(shift_module_y(g, row));
                }
            }
            let mut fresh = Subspace::new(f, ambient);
            for row in kernel.basis() {
                fresh.insert(span.reduce(row));
            }
            for row in fresh.basis() {
                let coords: Vec<BinaryForm> = row
                    .chunks(t + 1)
                    .map(|c| BinaryForm::new(f, c.to_vec()).expect("chunk of module vector"))
                    .collect();
                debug_assert!(self.is_syzygy(&coords));
                found.push(SyzygyGen {
                    coords,
                    standard_degree: t + d,
                });
                if found.len() > target {
                    return Err(Error::InvalidInput(
                        "syzygy module has more minimal generators than a \
                         codimension-two configuration allows"
                            .into(),
                    ));
                }
            }
            if found.len() == target {
                return Ok(found);
            }
            prev_kernel = Some(kernel);
        }
        Err(Error::NotMPrimary(self.degree_cap()))
    }

    fn is_syzygy(&self, coords: &[BinaryForm]) -> bool {
        let mut acc = BinaryForm::zero(self.field, coords[0].degree() + self.gens[0].degree());
        for (h, gen) in coords.iter().zip(&self.gens) {
            let term = h.multiply(gen).expect("same field");
            acc = acc.add(&term).expect("same degree");
        }
        acc.is_zero()
    }

    /// Sorted coordinate degrees of the minimal first syzygies. For
    /// three forms of one degree `d` these are the column degrees of
    /// the Hilbert-Burch matrix and sum to `d`.
    pub fn syzygy_profile(&self) -> Result<Vec<usize>> {
        let d = self.gens[0].degree();
        let mut degs: Vec<usize> = self
            .first_syzygies()?
            .iter()
            .map(|s| s.standard_degree - d)
            .collect();
        degs.sort_unstable();
        Ok(degs)
    }
}

fn build_monomials(
    gens: &[BinaryForm],
    exponents: &mut Vec<usize>,
    from: usize,
    remaining: usize,
    out: &mut Vec<BinaryForm>,
) -> Result<()> {
    if remaining == 0 {
        let field = gens[0].field();
        let mut acc = BinaryForm::one(field);
        for (g, &e) in gens.iter().zip(exponents.iter()) {
            for _ in 0..e {
                acc = acc.multiply(g)?;
            }
        }
        out.push(acc);
        return Ok(());
    }
    if from == gens.len() {
        return Ok(());
    }
    for e in (0..=remaining).rev() {
        exponents[from] = e;
        build_monomials(gens, exponents, from + 1, remaining - e, out)?;
        exponents[from] = 0;
    }
    Ok(())
}

/// Coefficient vector of `x * f` from the vector of `f`.
fn shift_x(v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(zero_like(v));
    out.extend(v.iter().cloned());
    out
}

/// Coefficient vector of `y * f` from the vector of `f`.
fn shift_y(v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.extend(v.iter().cloned());
    out.push(zero_like(v));
    out
}

fn zero_like(v: &[Scalar]) -> Scalar {
    match v.first().expect("nonempty coefficient vector") {
        Scalar::Rat(_) => Scalar::Rat(num::BigRational::from(num::BigInt::from(0))),
        Scalar::Fp(_) => Scalar::Fp(0),
    }
}

/// Component-wise `x` shift of a module vector with `g` blocks.
fn shift_module_x(g: usize, v: &[Scalar]) -> Vec<Scalar> {
    let chunk = v.len() / g;
    let mut out = Vec::with_capacity(v.len() + g);
    for block in v.chunks(chunk) {
        out.extend(shift_x(block));
    }
    out
}

/// Component-wise `y` shift of a module vector with `g` blocks.
fn shift_module_y(g: usize, v: &[Scalar]) -> Vec<Scalar> {
    let chunk = v.len() / g;
    let mut out = Vec::with_capacity(v.len() + g);
    for block in v.chunks(chunk) {
        out.extend(shift_y(block));
    }
    out
}

/// Hilbert function of `R/I` for an ideal generated by three general
/// forms of degree `d >= 2`: the closed formula
/// `dim R_t - (3 dim R_(t-d) - dim R_(t-d-floor(d/2)) - dim R_(t-d-ceil(d/2)))`
/// with `dim R_t = t + 1` for `t >= 0` and `0` otherwise.
pub fn general_hilbert_function(d: usize, t: usize) -> usize {
    fn ring_dim(t: i64) -> i64 {
        if t < 0 {
            0
        } else {
            t + 1
        }
    }
    let d = d as i64;
    let t = t as i64;
    let lo = d / 2;
    let hi = d - lo;
    let value =
        ring_dim(t) - (3 * ring_dim(t - d) - ring_dim(t - d - lo) - ring_dim(t - d - hi));
    assert!(value >= 0, "general Hilbert function must be nonnegative");
    value as usize
}

/// Syzygy coordinate degrees of three general forms of degree `d`:
/// `floor(d/2)` and `ceil(d/2)`, the Hilbert-Burch column degrees.
pub fn expected_syzygy_degrees(d: usize) -> [usize; 2] {
    [d / 2, d.div_ceil(2)]
}

/// Record of how often genericity guards rejected a random sample.
#[derive(Clone, Debug, Default)]
pub struct ResampleLog {
    /// Samples drawn, including the accepted one.
    pub attempts: usize,
    /// One reason per rejected sample.
    pub rejections: Vec<String>,
}

/// Why a sample of three forms fails to behave generically, if it does.
fn genericity_failure(forms: &[BinaryForm], d: usize) -> Result<Option<String>> {
    let ideal = GradedIdeal::new(forms.to_vec())?;
    let top = 3 * d / 2 + 2;
    for t in 0..=top {
        let expected = general_hilbert_function(d, t);
        let actual = ideal.hilbert_function(t);
        if expected != actual {
            return Ok(Some(format!(
                "hilbert function at degree {t}: expected {expected}, got {actual}"
            )));
        }
    }
    let profile = ideal.syzygy_profile()?;
    let expected = expected_syzygy_degrees(d);
    if profile != expected {
        return Ok(Some(format!(
            "syzygy degrees: expected {expected:?}, got {profile:?}"
        )));
    }
    let field = ideal.field();
    if d % 2 == 1 {
        let s = (d - 1) / 2;
        let socle = BinaryForm::monomial(field, 0, 3 * s)?;
        if ideal.contains(&socle)? {
            return Ok(Some(format!("socle monomial y^{} lies in the ideal", 3 * s)));
        }
    } else {
        let s = d / 2;
        let t = 3 * s - 2;
        let mut piece = ideal.piece_subspace(t);
        let y_mono = BinaryForm::monomial(field, 0, t)?;
        let x_mono = BinaryForm::monomial(field, 1, t)?;
        if !piece.insert(y_mono.coeffs().to_vec()) {
            return Ok(Some(format!("socle monomial y^{t} lies in the ideal")));
        }
        if !piece.insert(x_mono.coeffs().to_vec()) {
            return Ok(Some(format!(
                "socle monomials y^{t} and x*y^{} are dependent modulo the ideal",
                t - 1
            )));
        }
    }
    Ok(None)
}

/// Draw three forms of degree `d` with uniform random coefficients and
/// keep resampling (up to [`RESAMPLE_CAP`] attempts) until they pass
/// the genericity guards: the expected Hilbert function, the expected
/// syzygy degrees, and socle monomials outside the ideal.
pub fn general_forms<R: Rng>(
    field: FieldSpec,
    d: usize,
    rng: &mut R,
) -> Result<(Vec<BinaryForm>, ResampleLog)> {
    if d < 2 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "three general forms need degree at least 2".into(),
        });
    }
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::NeedsFiniteField);
    }
    if p <= 2 * d as u64 {
        return Err(Error::InvalidInput(format!(
            "field gfp:{p} is too small for degree {d}: the modulus must exceed 2d"
        )));
    }
    let mut log = ResampleLog::default();
    for _ in 0..RESAMPLE_CAP {
        log.attempts += 1;
        let forms = vec![
            BinaryForm::random(field, d, rng)?,
            BinaryForm::random(field, d, rng)?,
            BinaryForm::random(field, d, rng)?,
        ];
        match genericity_failure(&forms, d)? {
            None => return Ok((forms, log)),
            Some(reason) => log.rejections.push(reason),
        }
    }
    Err(Error::ResampleCap(RESAMPLE_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const P: u64 = 2147483647;

    fn fp() -> FieldSpec {
        FieldSpec::prime(P).unwrap()
    }

    fn qq() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn ideal(field: FieldSpec, gens: &[&[i64]]) -> GradedIdeal {
        GradedIdeal::new(
            gens.iter()
                .map(|c| BinaryForm::from_i64(field, c))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hilbert_function_of_maximal_ideal() {
        for f in [qq(), fp()] {
            let m = GradedIdeal::maximal_ideal(f);
            assert_eq!(m.hilbert_function(0), 1);
            assert_eq!(m.hilbert_function(1), 0);
            assert_eq!(m.hilbert_function(5), 0);
            assert_eq!(m.colength().unwrap(), 1);
        }
    }

    #[test]
    fn colength_of_maximal_ideal_powers() {
        for f in [qq(), fp()] {
            let m = GradedIdeal::maximal_ideal(f);
            for n in 1..=5 {
                let pow = m.power(n).unwrap();
                assert_eq!(pow.colength().unwrap(), n * (n + 1) / 2);
            }
        }
    }

    #[test]
    fn power_zero_is_rejected() {
        let m = GradedIdeal::maximal_ideal(qq());
        assert!(m.power(0).is_err());
    }

    #[test]
    fn power_generator_count_is_monomial_count() {
        let f = fp();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let gens: Vec<BinaryForm> = (0..3)
            .map(|_| BinaryForm::random(f, 4, &mut rng).unwrap())
            .collect();
        let i = GradedIdeal::new(gens).unwrap();
        assert_eq!(i.power(2).unwrap().gens().len(), 6);
        assert_eq!(i.power(4).unwrap().gens().len(), 15);
    }

    #[test]
    fn membership_in_a_principal_ideal() {
        let f = qq();
        let i = ideal(f, &[&[1, 1]]); // (x + y)
        let cubes = BinaryForm::from_i64(f, &[1, 0, 0, 1]); // x^3 + y^3
        assert!(i.contains(&cubes).unwrap());
        let x3 = BinaryForm::from_i64(f, &[0, 0, 0, 1]);
        assert!(!i.contains(&x3).unwrap());
        assert!(i.contains(&BinaryForm::zero(f, 7)).unwrap());
    }

    #[test]
    fn low_pieces_are_empty() {
        let i = ideal(qq(), &[&[0, 0, 1], &[1, 0, 0]]); // (x^2, y^2)
        assert_eq!(i.piece_dim(0), 0);
        assert_eq!(i.piece_dim(1), 0);
        assert_eq!(i.hilbert_function(1), 2);
        assert_eq!(i.piece_dim(2), 2);
    }

    #[test]
    fn colon_of_square_free_pair_is_square_of_maximal() {
        for f in [qq(), fp()] {
            let a = ideal(f, &[&[0, 0, 1], &[1, 0, 0]]); // (x^2, y^2)
            let m = GradedIdeal::maximal_ideal(f);
            let c = a.colon(&m).unwrap();
            assert_eq!(c.minimal_generator_degrees(), vec![2, 2, 2]);
            let m2 = m.power(2).unwrap();
            assert_eq!(c.minimal_generators(), m2.minimal_generators());
            let xy = BinaryForm::from_i64(f, &[0, 1, 0]);
            assert!(c.contains(&xy).unwrap());
        }
    }

    #[test]
    fn colon_by_contained_ideal_is_unit() {
        let f = qq();
        let a = ideal(f, &[&[0, 0, 1], &[1, 0, 0]]); // (x^2, y^2)
        let b = ideal(f, &[&[0, 0, 1]]); // (x^2)
        let c = a.colon(&b).unwrap();
        assert_eq!(c.minimal_generator_degrees(), vec![0]);
        assert_eq!(c.colength().unwrap(), 0);
    }

    #[test]
    fn colon_requires_primary_ideal_for_completeness() {
        let f = qq();
        let a = ideal(f, &[&[0, 0, 1]]); // (x^2), not (x,y)-primary
        let m = GradedIdeal::maximal_ideal(f);
        assert!(matches!(a.colon(&m), Err(Error::NotMPrimary(_))));
        assert!(matches!(a.colength(), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn minimal_generators_drop_redundant_ones() {
        let f = fp();
        // (x, y, x^2 + y^2): the quadric is redundant.
        let i = ideal(f, &[&[0, 1], &[1, 0], &[1, 0, 1]]);
        assert_eq!(i.minimal_generator_degrees(), vec![1, 1]);
    }

    #[test]
    fn syzygies_of_square_of_maximal_ideal() {
        for f in [qq(), fp()] {
            let m2 = GradedIdeal::maximal_ideal(f).power(2).unwrap();
            let syz = m2.first_syzygies().unwrap();
            assert_eq!(syz.len(), 2);
            for s in &syz {
                assert_eq!(s.standard_degree, 3);
                assert_eq!(s.coords.len(), 3);
            }
            assert_eq!(m2.syzygy_profile().unwrap(), vec![1, 1]);
        }
    }

    #[test]
    fn general_hilbert_function_matches_published_values() {
        // Degree 5: values 5, 3, 1, 0 at t = 4, 5, 6, 7.
        assert_eq!(general_hilbert_function(5, 4), 5);
        assert_eq!(general_hilbert_function(5, 5), 3);
        assert_eq!(general_hilbert_function(5, 6), 1);
        assert_eq!(general_hilbert_function(5, 7), 0);
        // Degree 6: values 4, 2, 0 at t = 6, 7, 8.
        assert_eq!(general_hilbert_function(6, 6), 4);
        assert_eq!(general_hilbert_function(6, 7), 2);
        assert_eq!(general_hilbert_function(6, 8), 0);
        // Low degrees, where every piece below d is untouched.
        assert_eq!(general_hilbert_function(6, 3), 4);
        assert_eq!(general_hilbert_function(2, 1), 2);
        assert_eq!(general_hilbert_function(2, 2), 0);
    }

    #[test]
    fn expected_syzygy_degree_split() {
        assert_eq!(expected_syzygy_degrees(5), [2, 3]);
        assert_eq!(expected_syzygy_degrees(6), [3, 3]);
        assert_eq!(expected_syzygy_degrees(12), [6, 6]);
    }

    #[test]
    fn random_forms_match_general_hilbert_function() {
        let mut rng = ChaCha20Rng::seed_from_u64(101);
        for d in [5usize, 6] {
            let (forms, log) = general_forms(fp(), d, &mut rng).unwrap();
            assert_eq!(log.attempts, 1, "expected the first sample to be general");
            let i = GradedIdeal::new(forms).unwrap();
            for t in 0..=(3 * d / 2 + 2) {
                assert_eq!(i.hilbert_function(t), general_hilbert_function(d, t));
            }
            assert_eq!(i.syzygy_profile().unwrap(), expected_syzygy_degrees(d).to_vec());
        }
    }

    #[test]
    fn general_quintics_have_colength_nineteen() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let (forms, _) = general_forms(fp(), 5, &mut rng).unwrap();
        let i = GradedIdeal::new(forms).unwrap();
        let by_formula: usize = (0..=9).map(|t| general_hilbert_function(5, t)).sum();
        assert_eq!(by_formula, 19);
        assert_eq!(i.colength().unwrap(), 19);
    }

    #[test]
    fn general_sextics_have_colength_twenty_seven() {
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let (forms, _) = general_forms(fp(), 6, &mut rng).unwrap();
        let i = GradedIdeal::new(forms).unwrap();
        assert_eq!(i.colength().unwrap(), 27);
    }

    #[test]
    fn general_forms_validate_the_field() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        assert!(matches!(
            general_forms(qq(), 5, &mut rng),
            Err(Error::NeedsFiniteField)
        ));
        let tiny = FieldSpec::prime(7).unwrap();
        assert!(general_forms(tiny, 5, &mut rng).is_err());
    }

    #[test]
    fn product_of_principal_ideals() {
        let f = qq();
        let x = ideal(f, &[&[0, 1]]);
        let y = ideal(f, &[&[1, 0]]);
        let xy = x.product(&y).unwrap();
        assert_eq!(xy.gens().len(), 1);
        assert_eq!(
            xy.gens()[0],
            BinaryForm::from_i64(f, &[0, 1, 0]) // x*y
        );
    }

    #[test]
    fn zero_generators_are_rejected() {
        let f = qq();
        assert!(GradedIdeal::new(vec![BinaryForm::zero(f, 2)]).is_err());
        assert!(GradedIdeal::new(vec![]).is_err());
    }

    #[test]
    fn unit_ideal_has_zero_colength() {
        let u = GradedIdeal::unit(qq());
        assert_eq!(u.hilbert_function(0), 0);
        assert_eq!(u.colength().unwrap(), 0);
    }
}
