//! Real rays, Born probabilities and orthonormal contexts.
//!
//! A [`Ray`] is a unit vector in real d-space standing for the rank-1
//! projector onto its span, so `|b⟩` and `-|b⟩` are the same ray. Every ray
//! is stored in canonical sign: the first component whose magnitude exceeds
//! the tolerance is positive.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default geometric tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Stored as the bit pattern of an f64; zero means "unset".
static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Residual norm below which a Gram-Schmidt candidate counts as dependent.
const DEPENDENCE_CUTOFF: f64 = 1e-6;

/// Components smaller than this are stored as exact zeros.
const FLUSH_TO_ZERO: f64 = 1e-15;

/// The globally configured tolerance, [`DEFAULT_TOLERANCE`] unless changed.
pub fn tolerance() -> f64 {
    match TOLERANCE_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

/// Replace the global tolerance used by operations that do not take one.
pub fn set_tolerance(tol: f64) -> Result<()> {
    check_tolerance(tol)?;
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

#[derive(Clone, PartialEq)]
pub struct Ray {
    components: Vec<f64>,
}

impl Ray {
    /// Normalize and canonicalize `components` using the global tolerance.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(components, tolerance())
    }

    /// Like [`Ray::new`], with an explicit tolerance for the sign convention.
    ///
    /// Vectors whose norm is already 1 to within 1e-12 are kept as given, so
    /// parsing a serialized ray reproduces it bit for bit.
    pub fn with_tolerance(mut components: Vec<f64>, tol: f64) -> Result<Self> {
        check_tolerance(tol)?;
        if components.len() < 2 {
            return Err(Error::InvalidDimension(components.len()));
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateVector);
        }
        let norm = components.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= tol {
            return Err(Error::DegenerateVector);
        }
        if (norm - 1.0).abs() > 1e-12 {
            components.iter_mut().for_each(|x| *x /= norm);
        }
        if let Some(lead) = components.iter().find(|x| x.abs() > tol) {
            if *lead < 0.0 {
                components.iter_mut().for_each(|x| *x = -*x);
            }
        }
        // Flush rounding debris (and signed zeros) so equal rays compare equal.
        components.iter_mut().for_each(|x| {
            if x.abs() < FLUSH_TO_ZERO {
                *x = 0.0
            }
        });
        Ok(Self { components })
    }

    /// The i-th standard basis vector of R^d.
    pub fn basis(dimension: usize, i: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidDimension(dimension));
        }
        if i >= dimension {
            return Err(Error::DimensionMismatch {
                left: i + 1,
                right: dimension,
            });
        }
        let mut v = vec![0.0; dimension];
        v[i] = 1.0;
        Ok(Self { components: v })
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Component-wise equality within `tol`. Both rays are canonical, so this
    /// decides ray (projector) equality.
    pub fn approx_eq(&self, other: &Ray, tol: f64) -> bool {
        self.dimension() == other.dimension()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    fn check_dimension(&self, other: &Ray) -> Result<()> {
        if self.dimension() == other.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dimension(),
                right: other.dimension(),
            })
        }
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray{:?}", self.components)
    }
}

/// Euclidean dot product.
pub fn inner_product(a: &Ray, b: &Ray) -> Result<f64> {
    a.check_dimension(b)?;
    Ok(dot(&a.components, &b.components))
}

/// Probability `|⟨c|b⟩|²` of observing `b` when the system is prepared in `c`.
pub fn born_probability(c: &Ray, b: &Ray) -> Result<f64> {
    let overlap = inner_product(c, b)?;
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

pub fn is_orthogonal(a: &Ray, b: &Ray, tol: f64) -> Result<bool> {
    Ok(inner_product(a, b)?.abs() <= tol)
}

/// Normalized cross product of two non-collinear rays in R^3.
pub fn cross3(a: &Ray, b: &Ray) -> Result<Ray> {
    a.check_dimension(b)?;
    if a.dimension() != 3 {
        return Err(Error::DimensionMismatch {
            left: a.dimension(),
            right: 3,
        });
    }
    let (x, y) = (&a.components, &b.components);
    let v = vec![
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    let tol = tolerance();
    if v.iter().map(|c| c * c).sum::<f64>().sqrt() <= tol {
        return Err(Error::Collinear);
    }
    Ray::with_tolerance(v, tol)
}

/// An orthonormal basis of R^d: one context, or block.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextBasis {
    rays: Vec<Ray>,
}

impl ContextBasis {
    /// Checks that there are exactly d rays of dimension d, pairwise
    /// orthogonal within `tol`.
    pub fn new(rays: Vec<Ray>, tol: f64) -> Result<Self> {
        let d = rays.first().map(Ray::dimension).unwrap_or(0);
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if rays.len() != d {
            return Err(Error::NotOrthonormal(format!(
                "{} rays given for dimension {d}",
                rays.len()
            )));
        }
        check_pairwise_orthogonal(&rays, tol)?;
        Ok(Self { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn dimension(&self) -> usize {
        self.rays.len()
    }

    /// Index of the basis element equal to `ray` within `tol`.
    pub fn position(&self, ray: &Ray, tol: f64) -> Option<usize> {
        self.rays.iter().position(|r| r.approx_eq(ray, tol))
    }
}

fn check_pairwise_orthogonal(rays: &[Ray], tol: f64) -> Result<()> {
    for (i, a) in rays.iter().enumerate() {
        for (j, b) in rays.iter().enumerate().skip(i + 1) {
            let overlap = inner_product(a, b)?;
            if overlap.abs() > tol {
                return Err(Error::NotOrthonormal(format!(
                    "rays {i} and {j} overlap by {overlap:e}"
                )));
            }
        }
    }
    Ok(())
}

/// Extend `partial` (k < d pairwise orthogonal rays) to a full context.
///
/// Gram-Schmidt runs over the standard basis e1..ed in order; candidates
/// whose residual falls below 1e-6 are skipped. The inputs come first in
/// the result, followed by the new rays in the order they were produced.
pub fn complete_context(partial: &[Ray], dimension: usize, tol: f64) -> Result<ContextBasis> {
    check_tolerance(tol)?;
    if dimension < 2 {
        return Err(Error::InvalidDimension(dimension));
    }
    if partial.len() >= dimension {
        return Err(Error::ContextFull {
            given: partial.len(),
            dimension,
        });
    }
    for r in partial {
        if r.dimension() != dimension {
            return Err(Error::DimensionMismatch {
                left: r.dimension(),
                right: dimension,
            });
        }
    }
    check_pairwise_orthogonal(partial, tol)?;

    let mut rays = partial.to_vec();
    for i in 0..dimension {
        if rays.len() == dimension {
            break;
        }
        let mut v = vec![0.0; dimension];
        v[i] = 1.0;
        // Two passes of modified Gram-Schmidt keep the residual orthogonal
        // to working precision.
        for _ in 0..2 {
            for r in &rays {
                let p = dot(&v, r.components());
                v.iter_mut()
                    .zip(r.components())
                    .for_each(|(x, y)| *x -= p * y);
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm < DEPENDENCE_CUTOFF {
            continue;
        }
        rays.push(Ray::with_tolerance(v, tol)?);
    }
    ContextBasis::new(rays, tol)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn ray(v: &[f64]) -> Ray {
        Ray::new(v.to_vec()).unwrap()
    }

    fn prep_c() -> Ray {
        let s = 3f64.sqrt();
        ray(&[2f64.sqrt() / s, 1.0 / s, 0.0])
    }

    fn meas_b() -> Ray {
        let s = 3f64.sqrt();
        ray(&[2f64.sqrt() / s, -1.0 / s, 0.0])
    }

    #[test]
    fn inner_products() {
        let e1 = ray(&[1.0, 0.0, 0.0]);
        let e2 = ray(&[0.0, 1.0, 0.0]);
        assert_eq!(inner_product(&e1, &e1).unwrap(), 1.0);
        assert_eq!(inner_product(&e1, &e2).unwrap(), 0.0);
        assert!((inner_product(&prep_c(), &meas_b()).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ray(&[1.0, 0.0]);
        let b = ray(&[1.0, 0.0, 0.0]);
        assert_eq!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(born_probability(&a, &b).is_err());
        assert!(is_orthogonal(&a, &b, TOL).is_err());
    }

    #[test]
    fn born_probability_of_bug_pair_is_one_ninth() {
        let p = born_probability(&prep_c(), &meas_b()).unwrap();
        assert!((p - 1.0 / 9.0).abs() < 1e-12);
        assert!((born_probability(&prep_c(), &prep_c()).unwrap() - 1.0).abs() < 1e-15);
        let e3 = ray(&[0.0, 0.0, 1.0]);
        assert_eq!(born_probability(&prep_c(), &e3).unwrap(), 0.0);
    }

    #[test]
    fn orthogonality_predicate() {
        let e1 = ray(&[1.0, 0.0, 0.0]);
        let e2 = ray(&[0.0, 1.0, 0.0]);
        let e3 = ray(&[0.0, 0.0, 1.0]);
        assert!(is_orthogonal(&e3, &e1, 1e-9).unwrap());
        assert!(!is_orthogonal(&prep_c(), &meas_b(), 1e-9).unwrap());
        let nearly = ray(&[1.0, 1e-12, 0.0]);
        assert!(is_orthogonal(&nearly, &e2, 1e-9).unwrap());
    }

    #[test]
    fn canonical_sign() {
        assert_eq!(ray(&[-1.0, 2.0, 0.0]), ray(&[1.0, -2.0, 0.0]));
        // Leading component below tolerance does not decide the sign.
        let r = ray(&[-1e-12, -1.0, 0.0]);
        assert!(r.components()[1] > 0.0);
        assert!(Ray::new(vec![0.0, 0.0, 0.0]).is_err());
        assert!(Ray::new(vec![1.0]).is_err());
        assert!(Ray::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn cross_products() {
        let e1 = ray(&[1.0, 0.0, 0.0]);
        let e2 = ray(&[0.0, 1.0, 0.0]);
        assert_eq!(cross3(&e1, &e2).unwrap(), ray(&[0.0, 0.0, 1.0]));
        let n = cross3(&prep_c(), &meas_b()).unwrap();
        assert!(n.approx_eq(&ray(&[0.0, 0.0, 1.0]), 1e-15));
        assert_eq!(cross3(&e1, &e1), Err(Error::Collinear));
        assert!(cross3(&ray(&[1.0, 0.0]), &ray(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn completes_standard_basis() {
        let e1 = Ray::basis(3, 0).unwrap();
        let basis = complete_context(std::slice::from_ref(&e1), 3, TOL).unwrap();
        let expected: Vec<Ray> = (0..3).map(|i| Ray::basis(3, i).unwrap()).collect();
        assert_eq!(basis.rays(), expected.as_slice());

        let e2 = Ray::basis(3, 1).unwrap();
        let basis = complete_context(&[e1, e2], 3, TOL).unwrap();
        assert_eq!(basis.rays(), expected.as_slice());
    }

    #[test]
    fn completes_preparation_ray() {
        // Gram-Schmidt by hand: e1 - (√2/√3) c = (1/3)(1, -√2, 0), norm 1/√3;
        // e2 is then dependent and e3 is already orthogonal.
        let c = prep_c();
        let basis = complete_context(std::slice::from_ref(&c), 3, TOL).unwrap();
        let s = 3f64.sqrt();
        let second = ray(&[1.0 / s, -(2f64.sqrt()) / s, 0.0]);
        let third = ray(&[0.0, 0.0, 1.0]);
        assert_eq!(basis.rays()[0], c);
        assert!(basis.rays()[1].approx_eq(&second, 1e-15));
        assert!(basis.rays()[2].approx_eq(&third, 1e-15));
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(
                    inner_product(&basis.rays()[i], &basis.rays()[j])
                        .unwrap()
                        .abs()
                        < 1e-15
                );
            }
        }
    }

    #[test]
    fn completion_rejects_bad_input() {
        let e1 = Ray::basis(3, 0).unwrap();
        let e2 = Ray::basis(3, 1).unwrap();
        let e3 = Ray::basis(3, 2).unwrap();
        assert!(matches!(
            complete_context(&[e1.clone(), e2.clone(), e3], 3, TOL),
            Err(Error::ContextFull { .. })
        ));
        assert!(matches!(
            complete_context(&[e1, prep_c()], 3, TOL),
            Err(Error::NotOrthonormal(_))
        ));
        assert!(complete_context(&[e2], 4, TOL).is_err());
    }

    #[test]
    fn empty_partial_gives_standard_basis() {
        let basis = complete_context(&[], 4, TOL).unwrap();
        assert_eq!(basis.dimension(), 4);
        assert_eq!(basis.rays()[3], Ray::basis(4, 3).unwrap());
    }
}
