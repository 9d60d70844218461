//! Dense Hermitian eigenvalues by cyclic complex Jacobi rotations, and
//! singular values through the Gram matrix. The lab's compressions stay
//! below a few hundred rows, where Jacobi's simplicity and its high
//! relative accuracy on the dominant eigenvalues beat anything fancier.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

const MAX_SWEEPS: usize = 60;

fn off_diagonal_norm<T: Real>(a: &[Complex<T>], n: usize) -> T {
    let mut acc = T::zero();
    for p in 0..n {
        for q in (p + 1)..n {
            acc = acc + a[p * n + q].norm_sqr();
        }
    }
    (acc + acc).sqrt()
}

fn frobenius<T: Real>(a: &[Complex<T>]) -> T {
    a.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Eigenvalues of a Hermitian matrix (row-major, `n x n`), sorted
/// descending. `rel_tol` is the off-diagonal target relative to the
/// Frobenius norm; convergence is quadratic once rotations lock in.
pub fn hermitian_eigenvalues<T: Real>(
    mut a: Vec<Complex<T>>,
    n: usize,
    rel_tol: T,
) -> Result<Vec<T>> {
    assert_eq!(a.len(), n * n, "matrix storage must be n*n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let fro = frobenius(&a);
    if fro == T::zero() {
        return Ok(vec![T::zero(); n]);
    }
    let target = fro * rel_tol.max(T::epsilon() * real::<T>(4.0));
    let rotation_floor = fro * T::epsilon() * real::<T>(0.01);

    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) > target {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: sweeps - 1,
                off_diagonal: off_diagonal_norm(&a, n).to_f64().unwrap_or(f64::NAN),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let rho = apq.norm();
                if rho <= rotation_floor {
                    continue;
                }
                // Phase-align the pivot, then rotate the real 2x2 block.
                let phase = apq / rho; // e^(i phi)
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (rho + rho);
                let t = if tau == T::zero() {
                    T::one()
                } else {
                    let s = if tau > T::zero() { T::one() } else { -T::one() };
                    s / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // Columns p and q: J has entries [c, s; -s e^(-i phi), c e^(-i phi)]
                let sp = phase.conj() * s;
                let cp = phase.conj() * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * sp;
                    a[k * n + q] = akp * s + akq * cp;
                }
                // Rows p and q with the conjugate transpose.
                let sp = phase * s;
                let cp = phase * c;
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * sp;
                    a[q * n + k] = apk * s + aqk * cp;
                }
                // Keep the Hermitian structure exact where rounding frays it.
                a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
                a[q * n + q] = Complex::new(a[q * n + q].re, T::zero());
                let mean = (a[p * n + q] + a[q * n + p].conj()) * real::<T>(0.5);
                a[p * n + q] = mean;
                a[q * n + p] = mean.conj();
            }
        }
    }

    let mut eigs: Vec<T> = (0..n).map(|k| a[k * n + k].re).collect();
    eigs.sort_unstable_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(eigs)
}

/// Singular values of a dense complex matrix (row-major, `n x n`), sorted
/// descending, through the eigenvalues of the Gram matrix `A* A`.
pub fn singular_values<T: Real>(a: &[Complex<T>], n: usize, rel_tol: T) -> Result<Vec<T>> {
    assert_eq!(a.len(), n * n, "matrix storage must be n*n");
    let zero = Complex::new(T::zero(), T::zero());
    let mut gram = vec![zero; n * n];
    // Accumulate rank-one row contributions; contiguous inner loop.
    for row in a.chunks_exact(n) {
        for i in 0..n {
            let ci = row[i].conj();
            if ci.norm_sqr() == T::zero() {
                continue;
            }
            for (j, &rj) in row.iter().enumerate().skip(i) {
                gram[i * n + j] = gram[i * n + j] + ci * rj;
            }
        }
    }
    for i in 0..n {
        gram[i * n + i] = Complex::new(gram[i * n + i].re, T::zero());
        for j in (i + 1)..n {
            gram[j * n + i] = gram[i * n + j].conj();
        }
    }
    let eigs = hermitian_eigenvalues(gram, n, rel_tol)?;
    Ok(eigs.into_iter().map(|l| l.max(T::zero()).sqrt()).collect())
}
