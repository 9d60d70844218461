//! Boundary behavior of symbol pairs.
//!
//! The obstruction quantities live here: the pseudo-hyperbolic distance
//! `rho(z) = |(phi(z) - psi(z))/(1 - conj(phi(z)) psi(z))|` between the two
//! images, the Julia-Caratheodory quotient `(1 - |phi(z)|)/(1 - |z|)` whose
//! nontangential limit is the modulus of the angular derivative, the
//! weighted obstruction `Q = rho (T_phi + T_psi)` that must vanish at the
//! boundary for a compact difference (derivative to the first power on the
//! Dirichlet space, squared on `S^2`), and the normalized kernel difference
//!
//! ```text
//! ||(C_phi - C_psi)* K_w^(1)||^2 / ||K_w^(1)||^2
//! ```
//!
//! expanded through the derivative-kernel pairing. Everything is reported
//! along explicit approach paths; limits are never claimed, only trends
//! along radial grids and the curves `gamma_M = {w : |1 - w conj(zeta)| /
//! (1 - |w|^2) = M}` that the compactness arguments trace.

use num_complex::Complex;
use serde::Serialize;

use crate::emit::format_float;
use crate::error::{Error, Result};
use crate::kernels::deriv_kernel_pairing;
use crate::moebius::{BoundaryData, LinearFractionalMap};
use crate::scalar::{real, Real};
use crate::series::{lft_taylor, TruncationOrder};
use crate::tolerances;
use crate::weighted::{CoefficientVector, WeightIndex};

/// An analytic self-map of the disk as the lab consumes it: either exact
/// linear fractional data or a truncated coefficient vector with a radius
/// inside which the truncation is trusted.
#[derive(Debug, Clone)]
pub enum SymbolMap<T> {
    Lft(LinearFractionalMap<T>),
    Series {
        coeffs: CoefficientVector<T>,
        radius: T,
    },
}

impl<T: Real> SymbolMap<T> {
    /// Wrap a linear fractional map, verifying the exact self-map property.
    pub fn lft(map: LinearFractionalMap<T>) -> Result<Self> {
        let check = map.is_disk_self_map(real::<T>(tolerances::BOUNDARY_TOL));
        if !check.is_self_map {
            return Err(Error::NotSelfMap {
                sup_norm: check.sup_norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::Lft(map))
    }

    /// Wrap a coefficient-backed symbol, trusted for `|z| <= radius`.
    pub fn series(coeffs: CoefficientVector<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero() && radius <= T::one()) {
            return Err(Error::InvalidPath {
                reason: format!(
                    "radius of validity must lie in (0, 1], got {}",
                    radius.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        Ok(Self::Series { coeffs, radius })
    }

    /// Sample `|value|` on the circle of the given radius and reject the
    /// symbol if it exceeds `1 + tol` anywhere.
    pub fn sampled_self_map_check(&self, samples: usize, radius: T, tol: T) -> Result<()> {
        let tau = T::PI() + T::PI();
        let mut worst = T::zero();
        for k in 0..samples {
            let angle = tau * from_usize_t::<T>(k) / from_usize_t::<T>(samples);
            let z = Complex::from_polar(radius, angle);
            worst = worst.max(self.value(z).norm());
        }
        if worst > T::one() + tol {
            return Err(Error::NotSelfMap {
                sup_norm: worst.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn value(&self, z: Complex<T>) -> Complex<T> {
        match self {
            Self::Lft(map) => map
                .eval(z)
                .expect("self-map pole lies outside the closed disk"),
            Self::Series { coeffs, .. } => coeffs.eval(z),
        }
    }

    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        match self {
            Self::Lft(map) => map
                .eval_derivative(z)
                .expect("self-map pole lies outside the closed disk"),
            Self::Series { coeffs, .. } => coeffs.eval_derivative(z),
        }
    }

    /// Taylor coefficients to length `n` (exact for linear fractional data,
    /// zero-extended for coefficient-backed symbols).
    pub fn taylor(&self, n: TruncationOrder) -> Result<CoefficientVector<T>> {
        match self {
            Self::Lft(map) => lft_taylor(map, n),
            Self::Series { coeffs, .. } => {
                let mut out: Vec<Complex<T>> = coeffs.coeffs().to_vec();
                out.resize(n.get(), Complex::new(T::zero(), T::zero()));
                out.truncate(n.get());
                CoefficientVector::new(out)
            }
        }
    }

    pub fn as_lft(&self) -> Option<&LinearFractionalMap<T>> {
        match self {
            Self::Lft(map) => Some(map),
            Self::Series { .. } => None,
        }
    }
}

fn from_usize_t<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index fits scalar")
}

/// How a path approaches its boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathKind<T> {
    Radial,
    /// Along `{w : |1 - w conj(zeta)| / (1 - |w|^2) = M}`, `M >= 1`.
    GammaM(T),
}

/// A finite sequence of disk points tending to a boundary point.
#[derive(Debug, Clone)]
pub struct ApproachPath<T> {
    pub zeta: Complex<T>,
    pub kind: PathKind<T>,
    pub points: Vec<Complex<T>>,
    /// Radii of the requested grid admitting no point on the curve.
    pub skipped_radii: Vec<T>,
}

/// The default geometric radii grid `r = 1 - 2^-k`, `k = 1 ..= k_max`.
pub fn default_radii<T: Real>(k_max: usize) -> Vec<T> {
    let half = real::<T>(0.5);
    let mut out = Vec::with_capacity(k_max);
    let mut step = T::one();
    for _ in 1..=k_max {
        step = step * half;
        out.push(T::one() - step);
    }
    out
}

/// Build an approach path toward `zeta` over the given increasing radii.
///
/// Radial paths are the points `r zeta`. For `gamma_M` the angle at each
/// radius solves `|1 - r e^(i theta)| = M (1 - r^2)` by bisection on
/// `theta` in `[0, pi]` (the defining quotient is monotone in `theta`);
/// radii admitting no solution are skipped and reported in the path.
pub fn make_path<T: Real>(
    zeta: Complex<T>,
    kind: PathKind<T>,
    radii: &[T],
) -> Result<ApproachPath<T>> {
    let modulus = zeta.norm();
    if (modulus - T::one()).abs() > real::<T>(tolerances::UNIMODULAR_TOL) {
        return Err(Error::NotUnimodular {
            modulus: modulus.to_f64().unwrap_or(f64::NAN),
        });
    }
    let zeta = zeta / modulus;
    if radii.is_empty() {
        return Err(Error::EmptyPath {
            reason: "no radii supplied".into(),
        });
    }
    for pair in radii.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidPath {
                reason: "radii must be strictly increasing".into(),
            });
        }
    }
    if !(radii[0] > T::zero() && *radii.last().unwrap() < T::one()) {
        return Err(Error::InvalidPath {
            reason: "radii must lie strictly between 0 and 1".into(),
        });
    }

    let mut points = Vec::with_capacity(radii.len());
    let mut skipped = Vec::new();
    match kind {
        PathKind::Radial => {
            for &r in radii {
                points.push(zeta * r);
            }
        }
        PathKind::GammaM(m) => {
            if !(m >= T::one()) {
                return Err(Error::InvalidPath {
                    reason: format!("gamma_M needs M >= 1, got {}", m.to_f64().unwrap_or(f64::NAN)),
                });
            }
            for &r in radii {
                match gamma_angle(r, m) {
                    Some(theta) => points.push(zeta * Complex::from_polar(r, theta)),
                    None => skipped.push(r),
                }
            }
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyPath {
            reason: "no grid radius admits a point on the curve".into(),
        });
    }
    Ok(ApproachPath {
        zeta,
        kind,
        points,
        skipped_radii: skipped,
    })
}

/// Quotient `|1 - r e^(i theta)| / (1 - r^2)`, evaluated stably through the
/// complex difference.
fn gamma_quotient<T: Real>(r: T, theta: T) -> T {
    let w = Complex::from_polar(r, theta);
    (Complex::new(T::one(), T::zero()) - w).norm() / (T::one() - r * r)
}

fn gamma_angle<T: Real>(r: T, m: T) -> Option<T> {
    let tol = real::<T>(tolerances::CURVE_TOL) * m.max(T::one());
    let mut lo = T::zero();
    let mut hi = T::PI();
    let f_lo = gamma_quotient(r, lo) - m;
    let f_hi = gamma_quotient(r, hi) - m;
    if f_lo > T::zero() || f_hi < T::zero() {
        return None;
    }
    if f_lo.abs() <= tol {
        return Some(lo);
    }
    let mut mid = lo;
    for _ in 0..200 {
        mid = (lo + hi) * real::<T>(0.5);
        if mid <= lo || mid >= hi {
            break; // interval narrowed to adjacent floats
        }
        let f_mid = gamma_quotient(r, mid) - m;
        if f_mid.abs() <= tol {
            return Some(mid);
        }
        if f_mid < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Interval exhausted; accept only if the residual stayed acceptable.
    let residual = (gamma_quotient(r, mid) - m).abs();
    if residual <= real::<T>(tolerances::CURVE_RESIDUAL_MAX) * m.max(T::one()) {
        Some(mid)
    } else {
        None
    }
}

/// Pseudo-hyperbolic distance between the two images at `z`; zero when the
/// images coincide, always in `[0, 1]` inside the disk.
pub fn pseudo_distance<T: Real>(phi: &SymbolMap<T>, psi: &SymbolMap<T>, z: Complex<T>) -> T {
    let u = phi.value(z);
    let v = psi.value(z);
    let num = (u - v).norm();
    if num == T::zero() {
        return T::zero();
    }
    let den = (Complex::new(T::one(), T::zero()) - u.conj() * v).norm();
    (num / den).min(T::one())
}

/// `(1 - |phi(z)|) / (1 - |z|)`.
pub fn jc_quotient<T: Real>(phi: &SymbolMap<T>, z: Complex<T>) -> T {
    (T::one() - phi.value(z).norm()) / (T::one() - z.norm())
}

/// Result of estimating the angular derivative along a path.
#[derive(Debug, Clone)]
pub struct AngularDerivativeEstimate<T> {
    /// Julia-Caratheodory quotients at each path point, the raw trend.
    pub quotients: Vec<T>,
    /// Accelerated limit estimate; `None` when the path shows no boundary
    /// contact (the quotient blows up, the `d = infinity` case).
    pub d_est: Option<T>,
    /// Direction of the boundary image, `phi(w_last)` normalized.
    pub eta_est: Option<Complex<T>>,
    /// Exact jet at the boundary point, available for linear fractional
    /// symbols.
    pub exact: Option<BoundaryData<T>>,
}

impl<T> AngularDerivativeEstimate<T> {
    pub fn has_contact(&self) -> bool {
        self.d_est.is_some()
    }
}

/// Estimate the angular derivative of `phi` at the path's boundary point.
///
/// The estimate is the Aitken-accelerated value of the quotient sequence
/// (exact for geometrically converging trends, which is what radial grids
/// produce), falling back to the last quotient when the differences
/// degenerate. No contact is declared when the final quotient exceeds
/// `1/sqrt(1 - |w_last|)`: a finite angular derivative keeps the quotient
/// bounded, while the infinite case grows like `1/(1 - r)`.
pub fn angular_derivative_estimate<T: Real>(
    phi: &SymbolMap<T>,
    path: &ApproachPath<T>,
) -> Result<AngularDerivativeEstimate<T>> {
    if path.points.is_empty() {
        return Err(Error::EmptyPath {
            reason: "path has no points".into(),
        });
    }
    let quotients: Vec<T> = path.points.iter().map(|&w| jc_quotient(phi, w)).collect();
    let last_w = *path.points.last().unwrap();
    let last_q = *quotients.last().unwrap();
    let exact = phi
        .as_lft()
        .and_then(|map| map.derivatives_at(path.zeta).ok());

    let contact = last_q <= T::one() / (T::one() - last_w.norm()).sqrt();
    if !contact {
        return Ok(AngularDerivativeEstimate {
            quotients,
            d_est: None,
            eta_est: None,
            exact,
        });
    }
    let d_est = aitken(&quotients);
    let image = phi.value(last_w);
    let eta = if image.norm() > T::zero() {
        image / image.norm()
    } else {
        Complex::new(T::one(), T::zero())
    };
    Ok(AngularDerivativeEstimate {
        quotients,
        d_est: Some(d_est),
        eta_est: Some(eta),
        exact,
    })
}

fn aitken<T: Real>(q: &[T]) -> T {
    let n = q.len();
    if n < 3 {
        return q[n - 1];
    }
    let (a, b, c) = (q[n - 3], q[n - 2], q[n - 1]);
    let denom = (c - b) - (b - a);
    if denom.abs() <= real::<T>(1e-14) * (c.abs() + b.abs() + a.abs() + T::one()) {
        return c;
    }
    c - (c - b) * (c - b) / denom
}

fn derivative_exponent<T: Real>(alpha: WeightIndex<T>) -> Result<i32> {
    if alpha.alpha() == T::zero() {
        Ok(1)
    } else if alpha.alpha() == -T::one() {
        Ok(2)
    } else {
        Err(Error::UnsupportedAlpha {
            alpha: alpha.alpha().to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// The factors of the obstruction quantity at `z`: the pseudo-hyperbolic
/// distance and the two derivative terms
/// `T = |phi'|^p (1 - |z|^2)/(1 - |phi|^2)` with `p = 1` on the Dirichlet
/// space (`alpha = 0`) and `p = 2` on `S^2` (`alpha = -1`).
pub fn obstruction_terms<T: Real>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    z: Complex<T>,
    alpha: WeightIndex<T>,
) -> Result<(T, T, T)> {
    let p = derivative_exponent(alpha)?;
    let rho = pseudo_distance(phi, psi, z);
    let one_minus = T::one() - z.norm_sqr();
    let term = |map: &SymbolMap<T>| -> T {
        let deriv = map.derivative(z).norm().powi(p);
        deriv * one_minus / (T::one() - map.value(z).norm_sqr())
    };
    Ok((rho, term(phi), term(psi)))
}

/// `Q(z) = rho(z) (T_phi(z) + T_psi(z))`; a compact difference forces this
/// to vanish as `|z| -> 1`.
pub fn obstruction_quantity<T: Real>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    z: Complex<T>,
    alpha: WeightIndex<T>,
) -> Result<T> {
    let (rho, t_phi, t_psi) = obstruction_terms(phi, psi, z, alpha)?;
    Ok(rho * (t_phi + t_psi))
}

/// Normalized squared norm of `(C_phi - C_psi)*` on the unit derivative
/// kernel at `w`, through the pairing expansion
///
/// ```text
/// (|phi'|^2 P(phiw, phiw) + |psi'|^2 P(psiw, psiw)
///   - 2 Re(conj(phi') psi' P(phiw, psiw))) / P(w, w).
/// ```
pub fn kernel_difference_quantity<T: Real>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    w: Complex<T>,
    alpha: WeightIndex<T>,
) -> T {
    let u = phi.value(w);
    let du = phi.derivative(w);
    let v = psi.value(w);
    let dv = psi.derivative(w);
    let p_uu = deriv_kernel_pairing(u, u, alpha).re;
    let p_vv = deriv_kernel_pairing(v, v, alpha).re;
    let p_uv = deriv_kernel_pairing(v, u, alpha); // <K_u, K_v> ordering
    let p_ww = deriv_kernel_pairing(w, w, alpha).re;
    let two = real::<T>(2.0);
    let num =
        du.norm_sqr() * p_uu + dv.norm_sqr() * p_vv - two * (du.conj() * dv * p_uv).re;
    (num / p_ww).max(T::zero())
}

/// One scan row: the point and every boundary quantity evaluated there.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow<T> {
    pub w_re: T,
    pub w_im: T,
    pub rho: T,
    #[serde(rename = "T_phi")]
    pub t_phi: T,
    #[serde(rename = "T_psi")]
    pub t_psi: T,
    #[serde(rename = "Q")]
    pub q: T,
    pub kernel_diff: T,
}

/// Evaluate every obstruction quantity at every path point.
pub fn boundary_scan<T: Real>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    alpha: WeightIndex<T>,
    path: &ApproachPath<T>,
) -> Result<Vec<ScanRow<T>>> {
    derivative_exponent(alpha)?;
    path.points
        .iter()
        .map(|&w| {
            let (rho, t_phi, t_psi) = obstruction_terms(phi, psi, w, alpha)?;
            Ok(ScanRow {
                w_re: w.re,
                w_im: w.im,
                rho,
                t_phi,
                t_psi,
                q: rho * (t_phi + t_psi),
                kernel_diff: kernel_difference_quantity(phi, psi, w, alpha),
            })
        })
        .collect()
}

/// CSV table of scan rows with the fixed header
/// `w_re,w_im,rho,T_phi,T_psi,Q,kernel_diff` and 17-significant-digit
/// fields.
pub fn scan_to_csv<T: Real>(rows: &[ScanRow<T>]) -> String {
    let mut out = String::from("w_re,w_im,rho,T_phi,T_psi,Q,kernel_diff\n");
    for row in rows {
        let f = |x: T| format_float(x.to_f64().unwrap_or(f64::NAN));
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            f(row.w_re),
            f(row.w_im),
            f(row.rho),
            f(row.t_phi),
            f(row.t_psi),
            f(row.q),
            f(row.kernel_diff),
        ));
    }
    out
}

/// JSON array equivalent of the CSV table.
pub fn scan_to_json<T: Real>(rows: &[ScanRow<T>]) -> String {
    let as64: Vec<ScanRow<f64>> = rows
        .iter()
        .map(|r| ScanRow {
            w_re: r.w_re.to_f64().unwrap_or(f64::NAN),
            w_im: r.w_im.to_f64().unwrap_or(f64::NAN),
            rho: r.rho.to_f64().unwrap_or(f64::NAN),
            t_phi: r.t_phi.to_f64().unwrap_or(f64::NAN),
            t_psi: r.t_psi.to_f64().unwrap_or(f64::NAN),
            q: r.q.to_f64().unwrap_or(f64::NAN),
            kernel_diff: r.kernel_diff.to_f64().unwrap_or(f64::NAN),
        })
        .collect();
    serde_json::to_string_pretty(&as64).expect("plain rows serialize")
}
