//! Reproducing kernels of the weighted Dirichlet scale.
//!
//! Matching `<f, K>` against `f(w)` resp. `f'(w)` under the series inner
//! product gives the coefficient formulas
//!
//! ```text
//! point kernel:       b_0 = 1,  b_n = n^(alpha-1) conj(w)^n
//! derivative kernel:  b_0 = 0,  b_n = n^alpha     conj(w)^(n-1)
//! ```
//!
//! which reduce to `1/(1 - conj(w) z)` on the Hardy space, to
//! `z/(1 - conj(w) z)` for the Dirichlet derivative kernel and to
//! `(1/conj(w)) log(1/(1 - conj(w) z))` on `S^2` (whose series form is
//! regular at `w = 0` and is the form used here). The pairing of two
//! derivative kernels is the series
//!
//! ```text
//! <K_v^(1), K_w^(1)> = sum_{n>=1} n^(1+alpha) (conj(v) w)^(n-1),
//! ```
//!
//! evaluated term by term with an explicit geometric tail bound; the closed
//! forms at alpha in {-1, 0, 1} serve as oracles and fast paths, since the
//! scale has no elementary closed forms strictly between -1 and 0.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, real, Real};
use crate::series::TruncationOrder;
use crate::tolerances;
use crate::weighted::{CoefficientVector, WeightIndex};

/// Which evaluation functional the kernel represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelOrder {
    /// `f(w) = <f, K_w>`
    Point,
    /// `f'(w) = <f, K_w^(1)>`
    Derivative,
}

/// An evaluation kernel: point `w` in the open disk, space index, order.
#[derive(Debug, Clone, Copy)]
pub struct KernelSpec<T> {
    pub w: Complex<T>,
    pub alpha: WeightIndex<T>,
    pub order: KernelOrder,
}

impl<T: Real> KernelSpec<T> {
    pub fn new(w: Complex<T>, alpha: WeightIndex<T>, order: KernelOrder) -> Result<Self> {
        if !(w.norm() < T::one()) {
            return Err(Error::OutsideDisk {
                modulus: w.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { w, alpha, order })
    }
}

/// Taylor coefficients of the kernel, truncated at `n` terms.
pub fn kernel_coeffs<T: Real>(spec: &KernelSpec<T>, n: TruncationOrder) -> CoefficientVector<T> {
    let len = n.get();
    let alpha = spec.alpha.alpha();
    let wbar = spec.w.conj();
    let mut out = vec![Complex::new(T::zero(), T::zero()); len];
    match spec.order {
        KernelOrder::Point => {
            out[0] = Complex::new(T::one(), T::zero());
            let mut pw = Complex::new(T::one(), T::zero());
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                pw = pw * wbar; // conj(w)^k
                let scale = ((alpha - T::one()) * from_usize::<T>(k).ln()).exp();
                *slot = pw * scale;
            }
        }
        KernelOrder::Derivative => {
            let mut pw = Complex::new(T::one(), T::zero()); // conj(w)^(k-1)
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                let scale = (alpha * from_usize::<T>(k).ln()).exp();
                *slot = pw * scale;
                pw = pw * wbar;
            }
        }
    }
    CoefficientVector::new(out).expect("length >= 1")
}

/// `|<f, K> - f(w)|` resp. `|<f, K> - f'(w)|` with the kernel truncated at
/// `n` terms; exact (up to rounding) whenever `f` has fewer than `n`
/// coefficients, since polynomials reproduce exactly.
pub fn reproducing_check<T: Real>(
    f: &CoefficientVector<T>,
    spec: &KernelSpec<T>,
    n: TruncationOrder,
) -> T {
    let kernel = kernel_coeffs(spec, n);
    let pairing = f.inner_product(&kernel, spec.alpha);
    let target = match spec.order {
        KernelOrder::Point => f.eval(spec.w),
        KernelOrder::Derivative => f.eval_derivative(spec.w),
    };
    (pairing - target).norm()
}

/// Upper bound for the series tail `sum_{m > n} m^(1+alpha) rho^(m-1)`,
/// `0 <= rho < 1`. The term ratio is at most
/// `q = ((n+2)/(n+1))^(1+alpha) rho`, so once `q < 1` the tail is dominated
/// by `term(n+1) / (1 - q)`.
pub fn pairing_tail_bound<T: Real>(n: usize, rho: T, alpha: WeightIndex<T>) -> T {
    if rho <= T::zero() {
        return T::zero();
    }
    let e = T::one() + alpha.alpha();
    let n1 = from_usize::<T>(n + 1);
    let n2 = from_usize::<T>(n + 2);
    let q = (e * (n2 / n1).ln()).exp() * rho;
    if q >= T::one() {
        return T::infinity();
    }
    let first = (e * n1.ln()).exp() * rho.powi(n as i32);
    first / (T::one() - q)
}

fn series_terms_for<T: Real>(eps: T, rho: T, alpha: WeightIndex<T>) -> usize {
    const CAP: usize = 1 << 26;
    if rho <= T::zero() {
        return 1;
    }
    // Doubling search, then binary refinement to the smallest admissible n.
    let mut hi = 4usize;
    while pairing_tail_bound(hi, rho, alpha) >= eps {
        hi *= 2;
        if hi >= CAP {
            return CAP;
        }
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if pairing_tail_bound(mid, rho, alpha) < eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest truncation whose pairing tail at point radius `r` (series ratio
/// `r^2`) is below `eps`, found by doubling search.
pub fn truncation_for_tolerance<T: Real>(eps: T, r: T, alpha: WeightIndex<T>) -> usize {
    series_terms_for(eps, r * r, alpha)
}

fn pairing_series_x<T: Real>(x: Complex<T>, alpha: WeightIndex<T>, eps: T) -> Complex<T> {
    let rho = x.norm();
    if rho == T::zero() {
        return Complex::new(T::one(), T::zero());
    }
    let terms = series_terms_for(eps, rho, alpha);
    let e = T::one() + alpha.alpha();
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut pw = Complex::new(T::one(), T::zero()); // x^(n-1)
    for n in 1..=terms {
        let scale = if n == 1 {
            T::one()
        } else {
            (e * from_usize::<T>(n).ln()).exp()
        };
        acc = acc + pw * scale;
        pw = pw * x;
    }
    acc
}

fn pairing_closed_x<T: Real>(x: Complex<T>, alpha: WeightIndex<T>) -> Option<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let a = alpha.alpha();
    let d = one - x;
    if a == -T::one() {
        Some(one / d)
    } else if a == T::zero() {
        Some(one / (d * d))
    } else if a == T::one() {
        Some((one + x) / (d * d * d))
    } else {
        None
    }
}

/// `<K_v^(1), K_w^(1)>_alpha = sum_{n>=1} n^(1+alpha) (conj(v) w)^(n-1)`.
/// Uses the closed form when `alpha` is exactly -1, 0 or 1 and the tail-
/// bounded series otherwise.
pub fn deriv_kernel_pairing<T: Real>(
    w: Complex<T>,
    v: Complex<T>,
    alpha: WeightIndex<T>,
) -> Complex<T> {
    let x = v.conj() * w;
    pairing_closed_x(x, alpha)
        .unwrap_or_else(|| pairing_series_x(x, alpha, real::<T>(tolerances::SERIES_TOL)))
}

/// Series evaluation of the pairing regardless of closed-form availability,
/// with absolute tail target `eps`.
pub fn deriv_kernel_pairing_series<T: Real>(
    w: Complex<T>,
    v: Complex<T>,
    alpha: WeightIndex<T>,
    eps: T,
) -> Complex<T> {
    pairing_series_x(v.conj() * w, alpha, eps)
}

/// Closed form of the pairing when `alpha` is one of the named spaces.
pub fn deriv_kernel_pairing_closed<T: Real>(
    w: Complex<T>,
    v: Complex<T>,
    alpha: WeightIndex<T>,
) -> Option<Complex<T>> {
    pairing_closed_x(v.conj() * w, alpha)
}

/// `||K_w^(1)||_alpha = sqrt(<K_w^(1), K_w^(1)>)`, requires `|w| < 1`.
pub fn deriv_kernel_norm<T: Real>(w: Complex<T>, alpha: WeightIndex<T>) -> Result<T> {
    if !(w.norm() < T::one()) {
        return Err(Error::OutsideDisk {
            modulus: w.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(deriv_kernel_pairing(w, w, alpha).re.max(T::zero()).sqrt())
}

/// Adjoint action on a derivative kernel: given `value = phi(w)` and
/// `deriv = phi'(w)`, the image is `conj(phi'(w)) K_{phi(w)}^(1)`, returned
/// as truncated coefficients. `value` must stay inside the open disk.
pub fn adjoint_on_deriv_kernel<T: Real>(
    value: Complex<T>,
    deriv: Complex<T>,
    alpha: WeightIndex<T>,
    n: TruncationOrder,
) -> Result<CoefficientVector<T>> {
    if !(value.norm() < T::one()) {
        return Err(Error::ImageOnBoundary {
            modulus: value.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let spec = KernelSpec::new(value, alpha, KernelOrder::Derivative)?;
    let kernel = kernel_coeffs(&spec, n);
    let factor = deriv.conj();
    let coeffs = kernel.coeffs().iter().map(|&b| b * factor).collect();
    CoefficientVector::new(coeffs)
}
