//! Finite compressions of composition operators.
//!
//! In the orthonormalized monomial basis `e_n = z^n / sqrt(weight(n))` the
//! compression of `C_phi` to polynomials of degree below `N` has entries
//!
//! ```text
//! A(m, n) = sqrt(weight(m) / weight(n)) * [z^m] phi(z)^n,
//! ```
//!
//! one truncated convolution per column since column `n` reuses `phi^(n-1)`.
//! Column 0 is exactly the first basis vector. Compression norms
//! lower-bound the operator norm and are nondecreasing in `N`; no
//! convergence rate is claimed anywhere, the lab reports monotone trends
//! and stabilization only.
//!
//! Because the weights interpolate multiplicatively along the scale, the
//! compressed matrices at `alpha`, `gamma`, `beta` are conjugates of one
//! fixed coefficient matrix by diagonal weight powers, and the norm
//! inequality `||T_gamma|| <= ||T_alpha||^(1-t) ||T_beta||^t` holds
//! exactly for every finite section; the margin check below witnesses it.

use num_complex::Complex;

use crate::boundary::{ApproachPath, SymbolMap};
use crate::emit::format_float;
use crate::error::{Error, Result};
use crate::kernels::{adjoint_on_deriv_kernel, kernel_coeffs, KernelOrder, KernelSpec};
use crate::linalg::singular_values;
use crate::scalar::{from_usize, real, Real};
use crate::series::{multiply, TruncationOrder};
use crate::tolerances;
use crate::weighted::{interpolation_gamma, CoefficientVector, WeightIndex};

/// What a truncated operator was assembled from.
#[derive(Debug, Clone)]
pub enum OperatorSource<T> {
    Composition(SymbolMap<T>),
    Difference(SymbolMap<T>, SymbolMap<T>),
}

/// The `N x N` compression of a composition operator (or of a difference of
/// two) on `D_alpha`.
#[derive(Debug, Clone)]
pub struct TruncatedOperator<T> {
    entries: Vec<Complex<T>>, // row-major
    n: usize,
    alpha: WeightIndex<T>,
    source: OperatorSource<T>,
}

impl<T: Real> TruncatedOperator<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> WeightIndex<T> {
        self.alpha
    }

    pub fn source(&self) -> &OperatorSource<T> {
        &self.source
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Entrywise difference of two compressions on the same space and
    /// truncation.
    pub fn difference(phi_op: &Self, psi_op: &Self) -> Result<Self> {
        if phi_op.n != psi_op.n || phi_op.alpha != psi_op.alpha {
            return Err(Error::ShapeMismatch {
                reason: "difference needs matching truncation and weight index".into(),
            });
        }
        let entries = phi_op
            .entries
            .iter()
            .zip(&psi_op.entries)
            .map(|(&x, &y)| x - y)
            .collect();
        let phi = match &phi_op.source {
            OperatorSource::Composition(s) => s.clone(),
            OperatorSource::Difference(s, _) => s.clone(),
        };
        let psi = match &psi_op.source {
            OperatorSource::Composition(s) => s.clone(),
            OperatorSource::Difference(s, _) => s.clone(),
        };
        Ok(Self {
            entries,
            n: phi_op.n,
            alpha: phi_op.alpha,
            source: OperatorSource::Difference(phi, psi),
        })
    }

    /// `A* x` for a coordinate vector of length `N`.
    pub fn apply_adjoint(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.n, "coordinate vector must match truncation");
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.n];
        for (row, &xk) in x.iter().enumerate() {
            if xk.norm_sqr() == T::zero() {
                continue;
            }
            let row_slice = &self.entries[row * self.n..(row + 1) * self.n];
            for (m, slot) in out.iter_mut().enumerate() {
                *slot = *slot + row_slice[m].conj() * xk;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Row-major CSV dump with re/im interleaved, fixed 17-digit fields.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.entries.chunks_exact(self.n) {
            let mut fields = Vec::with_capacity(2 * self.n);
            for z in row {
                fields.push(format_float(z.re.to_f64().unwrap_or(f64::NAN)));
                fields.push(format_float(z.im.to_f64().unwrap_or(f64::NAN)));
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

/// Assemble the compression of `C_phi` on `D_alpha` at truncation `n`.
pub fn assemble<T: Real>(
    phi: &SymbolMap<T>,
    alpha: WeightIndex<T>,
    n: TruncationOrder,
) -> Result<TruncatedOperator<T>> {
    let size = n.get();
    let taylor = phi.taylor(n)?;
    let sqrt_w: Vec<T> = (0..size).map(|m| alpha.sqrt_weight(m)).collect();
    let zero = Complex::new(T::zero(), T::zero());
    let mut entries = vec![zero; size * size];

    // Column 0 is e_0 exactly; columns reuse the previous power.
    entries[0] = Complex::new(T::one(), T::zero());
    let mut padded = vec![zero; size];
    padded[0] = Complex::new(T::one(), T::zero());
    let mut power = CoefficientVector::new(padded).expect("nonempty");
    for col in 1..size {
        power = multiply(&power, &taylor, n);
        for m in 0..size {
            entries[m * size + col] = power.coeff(m) * (sqrt_w[m] / sqrt_w[col]);
        }
    }
    Ok(TruncatedOperator {
        entries,
        n: size,
        alpha,
        source: OperatorSource::Composition(phi.clone()),
    })
}

/// Largest singular value of the compression, to relative tolerance `tol`.
pub fn operator_norm<T: Real>(op: &TruncatedOperator<T>, tol: T) -> Result<T> {
    let svs = singular_values(&op.entries, op.n, tol)?;
    Ok(svs.into_iter().next().unwrap_or(T::zero()))
}

/// Top `k` singular values, nonincreasing.
pub fn singular_value_profile<T: Real>(op: &TruncatedOperator<T>, k: usize) -> Result<Vec<T>> {
    if k == 0 || k > op.n {
        return Err(Error::ShapeMismatch {
            reason: format!("profile length {k} must lie in 1..={}", op.n),
        });
    }
    let mut svs = singular_values(&op.entries, op.n, real::<T>(tolerances::SV_TOL))?;
    svs.truncate(k);
    Ok(svs)
}

/// Residual of the adjoint identity on the truncation, with its analytic
/// tail bound and the rounding floor of the comparison.
#[derive(Debug, Clone, Copy)]
pub struct AdjointKernelCheck<T> {
    pub residual: T,
    /// Tail bound: the coefficients of the powers of a self-map are bounded
    /// by 1, so each entry of the truncation error is at most
    /// `weight(m)^(-1/2) sum_{j>=N} j |w|^(j-1)`, and the vector norm by
    /// `sqrt(sum_{m<N} weight(m)^(-1)) * |w|^(N-1) (N(1-|w|) + |w|) / (1-|w|)^2`.
    pub tail_bound: T,
    /// `8 N eps ||A||_F ||kappa||`, the scale of matrix-multiply rounding.
    pub roundoff_floor: T,
}

impl<T: Real> AdjointKernelCheck<T> {
    pub fn bound(&self) -> T {
        self.tail_bound + self.roundoff_floor
    }

    pub fn passes(&self) -> bool {
        self.residual <= self.bound()
    }
}

/// Verify `C_phi* K_w^(1) = conj(phi'(w)) K_(phi(w))^(1)` on the
/// compression: apply the conjugate transpose of the assembled matrix to
/// the orthonormal coordinates of the kernel and compare against the
/// coordinates of the analytic image, both truncated at `n`.
pub fn adjoint_kernel_check<T: Real>(
    phi: &SymbolMap<T>,
    w: Complex<T>,
    alpha: WeightIndex<T>,
    n: TruncationOrder,
) -> Result<AdjointKernelCheck<T>> {
    if !(w.norm() < T::one()) {
        return Err(Error::OutsideDisk {
            modulus: w.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let size = n.get();
    let op = assemble(phi, alpha, n)?;
    let spec = KernelSpec::new(w, alpha, KernelOrder::Derivative)?;
    let kernel = kernel_coeffs(&spec, n);
    let sqrt_w: Vec<T> = (0..size).map(|m| alpha.sqrt_weight(m)).collect();
    let kappa: Vec<Complex<T>> = (0..size)
        .map(|m| kernel.coeff(m) * sqrt_w[m])
        .collect();
    let pushed = op.apply_adjoint(&kappa);

    let image = adjoint_on_deriv_kernel(phi.value(w), phi.derivative(w), alpha, n)?;
    let mut residual_sq = T::zero();
    for m in 0..size {
        let target = image.coeff(m) * sqrt_w[m];
        residual_sq = residual_sq + (pushed[m] - target).norm_sqr();
    }
    let residual = residual_sq.sqrt();

    // sqrt(sum 1/weight(m)) * closed-form tail of sum_{j>=N} j r^(j-1).
    let inv_weight_sum = (0..size).fold(T::zero(), |acc, m| acc + T::one() / alpha.weight(m));
    let r = w.norm();
    let nf = from_usize::<T>(size);
    let tail = r.powi(size as i32 - 1) * (nf * (T::one() - r) + r)
        / ((T::one() - r) * (T::one() - r));
    let tail_bound = inv_weight_sum.sqrt() * tail;

    let kappa_norm = kappa
        .iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt();
    let roundoff_floor =
        real::<T>(8.0) * nf * T::epsilon() * op.frobenius_norm() * kappa_norm.max(T::one());

    Ok(AdjointKernelCheck {
        residual,
        tail_bound,
        roundoff_floor,
    })
}

/// Outcome of the interpolation norm inequality on one finite section.
#[derive(Debug, Clone, Copy)]
pub struct InterpolationCheck<T> {
    pub gamma: T,
    pub lhs: T,
    pub rhs: T,
    /// `rhs - lhs`; nonnegative up to rounding.
    pub margin: T,
}

/// Compare `||T_gamma||` against `||T_alpha||^(1-t) ||T_beta||^t` at
/// `gamma = (1-t) alpha + t beta`, for the compression of `C_phi` or of the
/// difference `C_phi - C_psi` when `psi` is supplied.
pub fn interpolation_inequality_check<T: Real>(
    phi: &SymbolMap<T>,
    psi: Option<&SymbolMap<T>>,
    alpha: WeightIndex<T>,
    beta: WeightIndex<T>,
    t: T,
    n: TruncationOrder,
    tol: T,
) -> Result<InterpolationCheck<T>> {
    let gamma = interpolation_gamma(alpha, beta, t)?;
    let norm_at = |index: WeightIndex<T>| -> Result<T> {
        let op_phi = assemble(phi, index, n)?;
        let op = match psi {
            None => op_phi,
            Some(psi) => TruncatedOperator::difference(&op_phi, &assemble(psi, index, n)?)?,
        };
        operator_norm(&op, tol)
    };
    let lo = norm_at(alpha)?;
    let hi = norm_at(beta)?;
    let lhs = norm_at(gamma)?;
    let rhs = lo.powf(T::one() - t) * hi.powf(t);
    Ok(InterpolationCheck {
        gamma: gamma.alpha(),
        lhs,
        rhs,
        margin: rhs - lhs,
    })
}

/// The best kernel obstruction level seen along the supplied paths.
#[derive(Debug, Clone, Copy)]
pub struct ObstructionLevel<T> {
    pub value: T,
    pub witness: Complex<T>,
}

/// Maximum of the normalized kernel difference over all path points, with
/// the point achieving it. This certifies a lower bound for the norm of the
/// compressed difference in the limit of deep truncations; the lab reports
/// it as the kernel obstruction level.
pub fn essential_lower_bound_scan<T: Real>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    alpha: WeightIndex<T>,
    paths: &[ApproachPath<T>],
) -> Result<ObstructionLevel<T>> {
    let mut best: Option<ObstructionLevel<T>> = None;
    for path in paths {
        for &w in &path.points {
            let value = crate::boundary::kernel_difference_quantity(phi, psi, w, alpha);
            if best.map_or(true, |b| value > b.value) {
                best = Some(ObstructionLevel { value, witness: w });
            }
        }
    }
    best.ok_or_else(|| Error::EmptyPath {
        reason: "no path points supplied".into(),
    })
}
