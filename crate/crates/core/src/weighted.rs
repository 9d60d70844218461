//! Arithmetic of the weighted Dirichlet scale.
//!
//! The space with index `alpha >= -1` carries the series norm
//!
//! ```text
//! ||f||^2 = |a_0|^2 + sum_{n>=1} n^(1-alpha) |a_n|^2
//! ```
//!
//! so the weight sequence is `weight(0) = 1`, `weight(n) = n^(1-alpha)`.
//! Smaller indices mean stronger norms: for `alpha < beta` the inclusion
//! into the larger space is contractive coefficientwise, and the weights
//! interpolate exactly, `weight(n, gamma) = weight(n, alpha)^(1-t) *
//! weight(n, beta)^t` when `gamma = (1-t) alpha + t beta`. That exact
//! multiplicativity is what makes the interpolation norm inequality hold on
//! finite truncations with no error term.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, real, Real};

/// Index `alpha >= -1` selecting a space in the weighted Dirichlet scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightIndex<T>(T);

impl<T: Real> WeightIndex<T> {
    pub fn new(alpha: T) -> Result<Self> {
        // Written so that NaN is rejected as well.
        if !(alpha >= -T::one()) {
            return Err(Error::InvalidWeightIndex {
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> T {
        self.0
    }

    /// `S^2`: functions whose derivative lies in the Hardy space; weights `n^2`.
    pub fn s2() -> Self {
        Self(-T::one())
    }

    /// The Dirichlet space; weights `n`.
    pub fn dirichlet() -> Self {
        Self(T::zero())
    }

    /// The Hardy space, with equal norm; all weights 1.
    pub fn hardy() -> Self {
        Self(T::one())
    }

    /// The weighted Bergman space `A^2_beta` (`beta > -1`), in its
    /// series-equivalent form; index `beta + 2`.
    pub fn bergman(beta: T) -> Result<Self> {
        if !(beta > -T::one()) {
            return Err(Error::InvalidWeightIndex {
                alpha: beta.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(beta + real::<T>(2.0)))
    }

    /// `weight(0) = 1`, `weight(n) = n^(1-alpha)` computed as
    /// `exp((1-alpha) ln n)`.
    pub fn weight(self, n: usize) -> T {
        if n == 0 {
            T::one()
        } else {
            ((T::one() - self.0) * from_usize::<T>(n).ln()).exp()
        }
    }

    /// Square root of the weight, used for the orthonormalized monomials
    /// `e_n = z^n / sqrt(weight(n))`.
    pub fn sqrt_weight(self, n: usize) -> T {
        if n == 0 {
            T::one()
        } else {
            (real::<T>(0.5) * (T::one() - self.0) * from_usize::<T>(n).ln()).exp()
        }
    }
}

/// `gamma = (1-t) alpha + t beta`, the interpolation index between two
/// spaces of the scale. Requires `alpha < beta` and `t` strictly inside
/// `(0, 1)`.
pub fn interpolation_gamma<T: Real>(
    alpha: WeightIndex<T>,
    beta: WeightIndex<T>,
    t: T,
) -> Result<WeightIndex<T>> {
    if !(alpha.alpha() < beta.alpha()) || !(t > T::zero() && t < T::one()) {
        return Err(Error::InvalidInterpolation {
            alpha: alpha.alpha().to_f64().unwrap_or(f64::NAN),
            beta: beta.alpha().to_f64().unwrap_or(f64::NAN),
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    WeightIndex::new((T::one() - t) * alpha.alpha() + t * beta.alpha())
}

/// Inverse solve: the `t` with `gamma = (1-t) alpha + t beta`. Requires
/// `alpha < gamma < beta`.
pub fn interpolation_parameter<T: Real>(
    alpha: WeightIndex<T>,
    beta: WeightIndex<T>,
    gamma: WeightIndex<T>,
) -> Result<T> {
    let (a, b, g) = (alpha.alpha(), beta.alpha(), gamma.alpha());
    if !(a < g && g < b) {
        return Err(Error::InvalidInterpolation {
            alpha: a.to_f64().unwrap_or(f64::NAN),
            beta: b.to_f64().unwrap_or(f64::NAN),
            t: f64::NAN,
        });
    }
    Ok((g - a) / (b - a))
}

/// Truncated Taylor coefficients `a_0 .. a_{N-1}` of an analytic function
/// on the disk. Index `n` holds the coefficient of `z^n`; evaluation is the
/// finite sum, the truncation is explicit and never hidden.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> CoefficientVector<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_reals(coeffs: &[T]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&x| Complex::new(x, T::zero()))
                .collect(),
        )
    }

    /// The constant function `c`.
    pub fn constant(c: Complex<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The monomial `z^k`, stored with `k + 1` coefficients.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); k + 1];
        coeffs[k] = Complex::new(T::one(), T::zero());
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one coefficient
    }

    /// Coefficient of `z^n`; zero beyond the stored length.
    pub fn coeff(&self, n: usize) -> Complex<T> {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Horner evaluation of the finite sum `sum a_n z^n`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Horner evaluation of the termwise derivative `sum n a_n z^(n-1)`.
    pub fn eval_derivative(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for n in (1..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[n] * from_usize::<T>(n);
        }
        acc
    }

    /// The series norm `sqrt(sum weight(n) |a_n|^2)` over the stored
    /// coefficients.
    pub fn norm(&self, alpha: WeightIndex<T>) -> T {
        let mut acc = T::zero();
        for (n, a) in self.coeffs.iter().enumerate() {
            acc = acc + alpha.weight(n) * a.norm_sqr();
        }
        acc.sqrt()
    }

    /// `sum weight(n) a_n conj(b_n)`; the shorter vector is zero-padded.
    /// Linear in `self`, conjugate-linear in `other`, and consistent with
    /// [`Self::norm`]: `f.inner_product(f, alpha) = f.norm(alpha)^2`.
    pub fn inner_product(&self, other: &Self, alpha: WeightIndex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for n in 0..self.coeffs.len().min(other.coeffs.len()) {
            acc = acc + self.coeffs[n] * other.coeffs[n].conj() * alpha.weight(n);
        }
        acc
    }
}
