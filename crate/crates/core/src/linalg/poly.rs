//! Univariate rational polynomials, characteristic polynomials, exact
//! rational root finding and spectral projections.
//!
//! Root finding works on the monic integer transform of the polynomial, whose
//! rational roots are integers. Real roots are isolated with a Sturm sequence
//! evaluated at half-integers (never roots of a monic integer polynomial) and
//! each unit interval is checked for an integer root exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::{LinalgError, Matrix};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::rat(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        let lead = d.lead().clone();
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= c * &f;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Polynomial::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free(&self) -> Polynomial {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// All distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let sf = self.square_free();
        let mut roots = Vec::new();
        let mut coeffs = sf.coeffs.clone();
        if coeffs[0].is_zero() {
            roots.push(Rational::zero());
            coeffs.remove(0);
        }
        let reduced = Polynomial::new(coeffs);
        if reduced.degree().unwrap_or(0) > 0 {
            let ints = integer_coefficients(&reduced);
            let lead = ints.last().unwrap().clone();
            let monic = monic_integer_transform(&ints);
            for y in integer_roots(&monic) {
                roots.push(Rational::new(y, lead.clone()));
            }
        }
        roots.retain(|r| self.eval(r).is_zero());
        roots.sort();
        roots
    }
}

/// Scales to a primitive integer polynomial with the same roots.
fn integer_coefficients(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if ints.last().unwrap().is_negative() {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    ints
}

/// For `P(x) = Σ a_i x^i` of degree `d`, returns `a_d^{d-1} P(y / a_d)`,
/// a monic integer polynomial whose roots are `a_d` times those of `P`.
fn monic_integer_transform(a: &[BigInt]) -> Vec<BigInt> {
    let d = a.len() - 1;
    let lead = &a[d];
    (0..=d)
        .map(|i| {
            if i == d {
                BigInt::one()
            } else {
                &a[i] * num_traits::pow(lead.clone(), d - 1 - i)
            }
        })
        .collect()
}

fn integer_roots(monic: &[BigInt]) -> Vec<BigInt> {
    let p = Polynomial::new(monic.iter().cloned().map(Rational::from_integer).collect());
    let sturm = sturm_sequence(&p);
    // Cauchy bound: every root has |y| < 1 + max |a_i|.
    let bound = monic[..monic.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo = Rational::from_integer(-bound.clone()) - &half;
    let hi = Rational::from_integer(bound) + &half;
    let mut roots = Vec::new();
    isolate(&p, &sturm, lo, hi, &mut roots);
    roots
}

fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(Polynomial::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn sign_changes(seq: &[Polynomial], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// Collects integer roots in the half-integer interval `(lo, hi)`.
fn isolate(p: &Polynomial, sturm: &[Polynomial], lo: Rational, hi: Rational, out: &mut Vec<BigInt>) {
    let count = sign_changes(sturm, &lo).saturating_sub(sign_changes(sturm, &hi));
    if count == 0 {
        return;
    }
    let width = (&hi - &lo).to_integer();
    if width <= BigInt::one() {
        let k = (&lo + Rational::new(BigInt::one(), BigInt::from(2))).to_integer();
        if p.eval(&Rational::from_integer(k.clone())).is_zero() {
            out.push(k);
        }
        return;
    }
    // lo is a half-integer, so this is one too.
    let mid = &lo + Rational::from_integer(width.div_floor(&BigInt::from(2)));
    isolate(p, sturm, lo, mid.clone(), out);
    isolate(p, sturm, mid, hi, out);
}

/// Characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(a: &Matrix) -> Result<Polynomial, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next)?;
        coeffs[n - k] = -am.trace() / rational::rat(k as i64);
        m = next;
    }
    Ok(Polynomial::new(coeffs))
}

/// Spectral decomposition of a matrix with `n` distinct rational eigenvalues.
///
/// Returns `(λ_i, P_i)` sorted by eigenvalue, where the `P_i` are the
/// Lagrange projections `Π_{j≠i} (A − λ_j I)/(λ_i − λ_j)`. They satisfy
/// `P_i P_j = δ_ij P_i` and `Σ P_i = I`. Returns `None` when the spectrum is
/// not `n` distinct rationals.
pub fn spectral_projections(a: &Matrix) -> Result<Option<Vec<(Rational, Matrix)>>, LinalgError> {
    let n = a.rows();
    let chi = characteristic_polynomial(a)?;
    let roots = chi.rational_roots();
    if roots.len() != n {
        return Ok(None);
    }
    let id = Matrix::identity(n);
    let mut out = Vec::with_capacity(n);
    for (i, li) in roots.iter().enumerate() {
        let mut p = id.clone();
        for (j, lj) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = a.sub(&id.scale(lj))?.scale(&(li - lj).recip());
            p = p.mul(&factor)?;
        }
        out.push((li.clone(), p));
    }
    Ok(Some(out))
}
