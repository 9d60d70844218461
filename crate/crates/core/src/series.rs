//! Truncated power series arithmetic.
//!
//! Plain O(N^2) Cauchy products; truncation orders stay in the hundreds, so
//! nothing transform-based is warranted and the rounding analysis stays
//! elementary. Powers are built by iterated multiplication on purpose: the
//! operator assembly consumes every power `phi^0 .. phi^(N-1)` anyway, one
//! convolution per column.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::moebius::LinearFractionalMap;
use crate::scalar::Real;
use crate::weighted::CoefficientVector;

/// Number of retained coefficients (degrees `0 .. N-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationOrder(usize);

impl TruncationOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroTruncation);
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Truncated Cauchy product: degree-n coefficient is `sum_k p_k q_(n-k)`
/// for `n < N`; the result always has length `N`.
pub fn multiply<T: Real>(
    p: &CoefficientVector<T>,
    q: &CoefficientVector<T>,
    n: TruncationOrder,
) -> CoefficientVector<T> {
    let len = n.get();
    let mut out = vec![Complex::new(T::zero(), T::zero()); len];
    for (i, &pi) in p.coeffs().iter().enumerate().take(len) {
        if pi.norm_sqr() == T::zero() {
            continue;
        }
        for (j, &qj) in q.coeffs().iter().enumerate().take(len - i) {
            out[i + j] = out[i + j] + pi * qj;
        }
    }
    CoefficientVector::new(out).expect("length >= 1")
}

/// Truncated k-th power by iterated multiplication; `k = 0` gives the
/// constant 1.
pub fn power<T: Real>(
    p: &CoefficientVector<T>,
    k: usize,
    n: TruncationOrder,
) -> CoefficientVector<T> {
    let mut acc = vec![Complex::new(T::zero(), T::zero()); n.get()];
    acc[0] = Complex::new(T::one(), T::zero());
    let mut acc = CoefficientVector::new(acc).expect("length >= 1");
    for _ in 0..k {
        acc = multiply(&acc, p, n);
    }
    acc
}

/// Taylor coefficients of `phi(z) = (az + b)/(cz + 1)`:
/// `a_0 = b`, `a_n = (a - bc) (-c)^(n-1)` for `n >= 1`. Requires the pole
/// `-1/c` strictly outside the closed disk when `c != 0`.
pub fn lft_taylor<T: Real>(
    map: &LinearFractionalMap<T>,
    n: TruncationOrder,
) -> Result<CoefficientVector<T>> {
    let c = map.c();
    if c.norm() >= T::one() {
        return Err(Error::PoleInsideDisk {
            pole_abs: (T::one() / c.norm()).to_f64().unwrap_or(f64::NAN),
        });
    }
    let len = n.get();
    let mut out = vec![Complex::new(T::zero(), T::zero()); len];
    out[0] = map.b();
    if len > 1 {
        out[1] = map.a() - map.b() * c;
        for k in 2..len {
            out[k] = out[k - 1] * (-c);
        }
    }
    CoefficientVector::new(out).expect("length >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;

    fn n(k: usize) -> TruncationOrder {
        TruncationOrder::new(k).unwrap()
    }

    fn reals(xs: &[f64]) -> CoefficientVector<f64> {
        CoefficientVector::from_reals(xs).unwrap()
    }

    #[test]
    fn truncation_order_rejects_zero() {
        assert!(TruncationOrder::new(0).is_err());
        assert_eq!(TruncationOrder::new(5).unwrap().get(), 5);
    }

    #[test]
    fn multiply_values() {
        let p = reals(&[1.0, 1.0]);
        let got = multiply(&p, &p, n(3));
        assert_eq!(got.coeffs(), &[C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(1.0, 0.0)]);

        let q = reals(&[2.0, -1.0, 0.5]);
        let one = reals(&[1.0]);
        assert_eq!(multiply(&q, &one, n(3)), q);

        let ones = reals(&[1.0; 8]);
        let got = multiply(&ones, &ones, n(4));
        assert_eq!(
            got.coeffs(),
            &[C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(3.0, 0.0), C::new(4.0, 0.0)]
        );
    }

    #[test]
    fn power_values() {
        let p = reals(&[0.3, -0.2, 0.7]);
        let zeroth = power(&p, 0, n(4));
        assert_eq!(zeroth.coeff(0), C::new(1.0, 0.0));
        assert_eq!(zeroth.coeff(3), C::new(0.0, 0.0));

        let z = reals(&[0.0, 1.0]);
        let cube = power(&z, 3, n(5));
        assert_eq!(cube.coeff(3), C::new(1.0, 0.0));
        assert_eq!(cube.coeff(4), C::new(0.0, 0.0));
        assert_eq!(cube.coeff(2), C::new(0.0, 0.0));

        // (z/(2-z))^2 = (0, 0, 1/4, 1/4, ...): square of a_n = 2^-n (n >= 1).
        let geo = reals(&[0.0, 0.5, 0.25, 0.125, 0.0625]);
        let sq = power(&geo, 2, n(4));
        assert!((sq.coeff(0)).norm() < 1e-15);
        assert!((sq.coeff(1)).norm() < 1e-15);
        assert!((sq.coeff(2) - C::new(0.25, 0.0)).norm() < 1e-15);
        assert!((sq.coeff(3) - C::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lft_taylor_values() {
        let id = LinearFractionalMap::<f64>::identity();
        let got = lft_taylor(&id, n(4)).unwrap();
        assert_eq!(got.coeffs()[..2], [C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        assert_eq!(got.coeff(2), C::new(0.0, 0.0));

        // (z + 1)/2: c = 0 stops after degree one.
        let m =
            LinearFractionalMap::new(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(2.0, 0.0))
                .unwrap();
        let got = lft_taylor(&m, n(4)).unwrap();
        assert_eq!(got.coeff(0), C::new(0.5, 0.0));
        assert_eq!(got.coeff(1), C::new(0.5, 0.0));
        assert_eq!(got.coeff(2), C::new(0.0, 0.0));

        // z/(2 - z): a_n = 2^-n for n >= 1.
        let m =
            LinearFractionalMap::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(-1.0, 0.0), C::new(2.0, 0.0))
                .unwrap();
        let got = lft_taylor(&m, n(8)).unwrap();
        for k in 1..8 {
            assert!((got.coeff(k) - C::new(0.5f64.powi(k as i32), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn lft_taylor_matches_finite_differences() {
        // Central differences of z/(2-z) at 0 on a small circle: the n-th
        // coefficient is the discrete Fourier mean of phi on |z| = r over
        // r^n, an oracle independent of the closed form.
        let m =
            LinearFractionalMap::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(-1.0, 0.0), C::new(2.0, 0.0))
                .unwrap();
        let got = lft_taylor(&m, n(6)).unwrap();
        let samples = 64;
        let r = 0.5;
        for k in 0..6 {
            let mut acc = C::new(0.0, 0.0);
            for j in 0..samples {
                let angle = std::f64::consts::TAU * j as f64 / samples as f64;
                let z = C::from_polar(r, angle);
                // z^-k with modulus and argument spelled out
                acc += m.eval(z).unwrap() * C::from_polar(r.powi(k as i32), k as f64 * angle).inv()
                    * C::new(1.0 / samples as f64, 0.0);
            }
            assert!(
                (acc - got.coeff(k)).norm() < 1e-12,
                "coefficient {k}: {acc} vs {}",
                got.coeff(k)
            );
        }
    }

    #[test]
    fn lft_taylor_rejects_pole_in_disk() {
        // (z + 2)/(2z + 1): pole at -1/2 inside the disk.
        let m =
            LinearFractionalMap::new(C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(2.0, 0.0), C::new(1.0, 0.0))
                .unwrap();
        assert!(matches!(
            lft_taylor(&m, n(4)),
            Err(crate::error::Error::PoleInsideDisk { .. })
        ));
    }

    #[test]
    fn lft_taylor_partial_sums_track_rational_value() {
        // Geometric tail bound 2 |cz|^N / (1 - |cz|) at |z| <= 0.9.
        let m =
            LinearFractionalMap::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(-1.0, 0.0), C::new(2.0, 0.0))
                .unwrap();
        for order in [8usize, 16, 32] {
            let coeffs = lft_taylor(&m, n(order)).unwrap();
            for z in [C::new(0.9, 0.0), C::new(0.0, 0.9), C::new(-0.5, 0.6)] {
                let cz = (m.c() * z).norm();
                let bound = 2.0 * cz.powi(order as i32) / (1.0 - cz);
                let err = (coeffs.eval(z) - m.eval(z).unwrap()).norm();
                assert!(err <= bound, "order {order}, z {z}: {err} > {bound}");
            }
        }
    }

    proptest! {
        #[test]
        fn multiply_commutes(
            pc in proptest::collection::vec(-1.0f64..1.0, 1..12),
            qc in proptest::collection::vec(-1.0f64..1.0, 1..12),
        ) {
            let p = reals(&pc);
            let q = reals(&qc);
            let ord = n(12);
            let pq = multiply(&p, &q, ord);
            let qp = multiply(&q, &p, ord);
            for k in 0..12 {
                prop_assert!((pq.coeff(k) - qp.coeff(k)).norm() < 1e-12);
            }
        }

        #[test]
        fn multiply_associates(
            pc in proptest::collection::vec(-1.0f64..1.0, 1..8),
            qc in proptest::collection::vec(-1.0f64..1.0, 1..8),
            rc in proptest::collection::vec(-1.0f64..1.0, 1..8),
        ) {
            let p = reals(&pc);
            let q = reals(&qc);
            let r = reals(&rc);
            let ord = n(10);
            let left = multiply(&multiply(&p, &q, ord), &r, ord);
            let right = multiply(&p, &multiply(&q, &r, ord), ord);
            for k in 0..10 {
                prop_assert!((left.coeff(k) - right.coeff(k)).norm() < 1e-12);
            }
        }

        #[test]
        fn power_matches_iterated_multiply(
            pc in proptest::collection::vec(-1.0f64..1.0, 1..10),
            k in 0usize..=8,
        ) {
            let p = reals(&pc);
            let ord = n(64);
            let via_power = power(&p, k, ord);
            let mut manual = power(&p, 0, ord);
            for _ in 0..k {
                manual = multiply(&manual, &p, ord);
            }
            for idx in 0..64 {
                prop_assert!((via_power.coeff(idx) - manual.coeff(idx)).norm() < 1e-10);
            }
        }
    }
}
