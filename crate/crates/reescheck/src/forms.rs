//! Binary forms: homogeneous polynomials in `k[x, y]`.
//!
//! A form of degree `d` is stored as the dense vector of its `d + 1`
//! coefficients in ascending powers of `x`: entry `i` is the
//! coefficient of `x^i * y^(d - i)`. The zero form of each degree is
//! representable, so matrices of forms with zero entries keep their
//! degree bookkeeping.
//!
//! Multiplication is coefficient convolution. The only other piece of
//! calculus needed downstream is [`BinaryForm::delta`], which removes
//! the two lowest coefficients of a form vanishing to order two at
//! `x = 0`, i.e. writes `f = x^2 * g + (lower terms)` and returns `g`
//! when the lower terms are absent.

use rand::Rng;
use std::fmt;

use crate::scalars::{FieldSpec, Scalar};
use crate::{Error, Result};

/// A homogeneous polynomial in two variables over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    field: FieldSpec,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// Build a form of degree `coeffs.len() - 1` from ascending
    /// `x`-power coefficients.
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a form needs at least one coefficient".into(),
            ));
        }
        if let Some(s) = coeffs.iter().find(|s| !field.owns(s)) {
            return Err(Error::FieldMismatch(format!("coefficient {s}")));
        }
        Ok(BinaryForm {
            field,
            degree: coeffs.len() - 1,
            coeffs,
        })
    }

    /// The zero form of the given degree.
    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        BinaryForm {
            field,
            degree,
            coeffs: vec![field.zero(); degree + 1],
        }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        BinaryForm::new(field, coeffs.iter().map(|&v| field.from_i64(v)).collect())
            .expect("nonempty integer coefficients")
    }

    /// The monomial `x^i * y^(t - i)`, `i <= t`.
    pub fn monomial(field: FieldSpec, i: usize, t: usize) -> Result<Self> {
        if i > t {
            return Err(Error::UnsupportedDegree {
                degree: t,
                reason: format!("monomial exponent {i} exceeds degree {t}"),
            });
        }
        let mut coeffs = vec![field.zero(); t + 1];
        coeffs[i] = field.one();
        Ok(BinaryForm {
            field,
            degree: t,
            coeffs,
        })
    }

    /// The constant form 1, of degree zero.
    pub fn one(field: FieldSpec) -> Self {
        BinaryForm {
            field,
            degree: 0,
            coeffs: vec![field.one()],
        }
    }

    /// A form of degree `d` with coefficients drawn uniformly from a
    /// finite field.
    pub fn random<R: Rng>(field: FieldSpec, degree: usize, rng: &mut R) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            coeffs.push(field.random(rng).ok_or(Error::NeedsFiniteField)?);
        }
        Ok(BinaryForm {
            field,
            degree,
            coeffs,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ascending `x`-power coefficients; entry `i` multiplies
    /// `x^i * y^(degree - i)`.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn require_same_field(&self, other: &BinaryForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "forms over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.require_same_field(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "adding forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(BinaryForm {
            field: self.field,
            degree: self.degree,
            coeffs,
        })
    }

    /// Difference of two forms of equal degree.
    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        assert!(self.field.owns(c), "scalar from a different field");
        BinaryForm {
            field: self.field,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    /// Product of two forms: coefficient convolution, degree adds.
    pub fn multiply(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.require_same_field(other)?;
        let f = self.field;
        let degree = self.degree + other.degree;
        let mut coeffs = vec![f.zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Ok(BinaryForm {
            field: f,
            degree,
            coeffs,
        })
    }

    /// Remove a factor of `x^2`: for `f` of degree `d >= 2` whose two
    /// lowest `x`-power coefficients vanish, return the degree `d - 2`
    /// form `g` with `f = x^2 * g`. The general quotient (dropping the
    /// two lowest coefficients regardless) is what the callers need, so
    /// no vanishing check is made here; `x^2 * delta(f)` equals `f`
    /// exactly when `f` has no `y^d` or `x * y^(d-1)` term.
    pub fn delta(&self) -> Result<BinaryForm> {
        if self.degree < 2 {
            return Err(Error::UnsupportedDegree {
                degree: self.degree,
                reason: "delta needs degree at least 2".into(),
            });
        }
        Ok(BinaryForm {
            field: self.field,
            degree: self.degree - 2,
            coeffs: self.coeffs[2..].to_vec(),
        })
    }

    /// Multiply by the monomial `x^a * y^b`: shifts coefficients up by
    /// `a` and raises the degree by `a + b`.
    pub fn shift(&self, a: usize, b: usize) -> BinaryForm {
        let degree = self.degree + a + b;
        let mut coeffs = vec![self.field.zero(); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + a] = c.clone();
        }
        BinaryForm {
            field: self.field,
            degree,
            coeffs,
        }
    }

}

impl fmt::Display for BinaryForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut coeff = c.to_string();
            if first {
                first = false;
            } else if let Some(stripped) = coeff.strip_prefix('-') {
                write!(out, " - ")?;
                coeff = stripped.to_string();
            } else {
                write!(out, " + ")?;
            }
            write_term(out, &coeff, i, d - i)?;
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

fn write_term(out: &mut fmt::Formatter<'_>, coeff: &str, xe: usize, ye: usize) -> fmt::Result {
    let is_constant = xe == 0 && ye == 0;
    if coeff != "1" || is_constant {
        write!(out, "{coeff}")?;
        if !is_constant {
            write!(out, "*")?;
        }
    }
    match (xe, ye) {
        (0, 0) => Ok(()),
        (0, 1) => write!(out, "y"),
        (0, e) => write!(out, "y^{e}"),
        (1, 0) => write!(out, "x"),
        (e, 0) => write!(out, "x^{e}"),
        (1, 1) => write!(out, "x*y"),
        (1, e) => write!(out, "x*y^{e}"),
        (e, 1) => write!(out, "x^{e}*y"),
        (a, b) => write!(out, "x^{a}*y^{b}"),
    }
}
