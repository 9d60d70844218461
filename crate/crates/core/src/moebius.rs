//! Linear fractional self-maps of the disk.
//!
//! Maps are normalized to the form `phi(z) = (az + b)/(cz + 1)`; a raw
//! quadruple `(a, b, c, d)` is divided through by `d` at construction.
//! The boundary jet at a unimodular point is exact rational data,
//!
//! ```text
//! phi'(zeta)  = (a - bc) / (c zeta + 1)^2
//! phi''(zeta) = -2c (a - bc) / (c zeta + 1)^3
//! ```
//!
//! and that jet is rigid: two nonconstant maps sharing value, first and
//! second derivative at one boundary point are identical, which is what
//! [`LinearFractionalMap::from_second_order_data`] inverts.
//!
//! The image of the unit circle is again a circle, `|w - b| = |cw - a|` in
//! normalized coordinates, so sup norms and boundary contact are exact
//! circle geometry rather than sampling. Compactness of the induced
//! composition operator on every space of the scale reduces to
//! `sup |phi| < 1`, and a difference of two such operators is compact
//! exactly when the maps are equal or both verdicts are compact.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use crate::tolerances;
use crate::weighted::WeightIndex;

/// Normalized map `z -> (az + b)/(cz + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFractionalMap<T> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
}

/// Exact boundary jet `(phi(zeta), phi'(zeta), phi''(zeta))` at `|zeta| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData<T> {
    pub zeta: Complex<T>,
    pub value: Complex<T>,
    pub first: Complex<T>,
    pub second: Complex<T>,
}

/// Outcome of the exact self-map test.
#[derive(Debug, Clone, Copy)]
pub struct SelfMapCheck<T> {
    pub is_self_map: bool,
    pub sup_norm: T,
    /// Boundary point at which `|phi|` attains its maximum.
    pub witness: Complex<T>,
}

/// The set of boundary points mapped onto the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryContact<T> {
    /// `sup |phi| < 1`: no contact.
    Empty,
    /// Internal tangency of the image circle: a single contact point
    /// (given in the domain).
    Point(Complex<T>),
    /// The map is a disk automorphism: all of the circle.
    Full,
}

/// Compactness verdict for `C_phi` on `D_gamma`.
#[derive(Debug, Clone, Copy)]
pub struct CompactnessVerdict<T> {
    pub gamma: T,
    pub sup_norm: T,
    pub compact: bool,
}

/// Which branch decided a compact-difference verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceReason {
    EqualMaps,
    BothCompact,
    Distinct {
        phi_compact: bool,
        psi_compact: bool,
    },
}

impl std::fmt::Display for DifferenceReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::EqualMaps => write!(f, "equal maps"),
            Self::BothCompact => write!(f, "both compositions compact"),
            Self::Distinct {
                phi_compact: false,
                psi_compact: false,
            } => write!(f, "neither compact; maps differ"),
            Self::Distinct { .. } => write!(f, "exactly one composition compact; maps differ"),
        }
    }
}

/// Verdict for compactness of `C_phi - C_psi` on `D_gamma`.
#[derive(Debug, Clone, Copy)]
pub struct DifferenceVerdict<T> {
    pub gamma: T,
    pub compact: bool,
    pub reason: DifferenceReason,
    pub sup_phi: T,
    pub sup_psi: T,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
    #[serde(default = "unit_d")]
    d: [f64; 2],
}

fn unit_d() -> [f64; 2] {
    [1.0, 0.0]
}

impl<T: Real> LinearFractionalMap<T> {
    /// Build from the raw quadruple `(a, b, c, d)`, normalizing by `d`.
    /// Rejects `d = 0` and degenerate (constant) maps with `ad - bc = 0`.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        if !(d.norm() > T::zero()) {
            return Err(Error::ZeroDenominator);
        }
        Self::from_normalized(a / d, b / d, c / d)
    }

    /// Build directly from normalized coefficients (`d = 1`).
    pub fn from_normalized(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Result<Self> {
        let det = a - b * c;
        let scale = T::one() + a.norm() + b.norm() + c.norm();
        if !(det.norm() > real::<T>(1e-14) * scale) {
            return Err(Error::DegenerateMap);
        }
        Ok(Self { a, b, c })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
            c: Complex::new(T::zero(), T::zero()),
        }
    }

    /// Rotation `z -> e^(i theta) z`.
    pub fn rotation(theta: T) -> Self {
        Self {
            a: Complex::new(theta.cos(), theta.sin()),
            b: Complex::new(T::zero(), T::zero()),
            c: Complex::new(T::zero(), T::zero()),
        }
    }

    /// `z -> s z` for `s != 0`.
    pub fn scaling(s: Complex<T>) -> Result<Self> {
        Self::from_normalized(
            s,
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        )
    }

    /// Disk automorphism `z -> e^(i theta) (z - p)/(1 - conj(p) z)`, `|p| < 1`.
    pub fn automorphism(theta: T, p: Complex<T>) -> Result<Self> {
        if !(p.norm() < T::one()) {
            return Err(Error::OutsideDisk {
                modulus: p.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        let lambda = Complex::new(theta.cos(), theta.sin());
        Self::from_normalized(lambda, -lambda * p, -p.conj())
    }

    /// `z -> center + radius e^(i theta) (z - p)/(1 - conj(p) z)`: the disk
    /// maps onto the disk around `center` of radius `radius`, so the sup
    /// norm is exactly `|center| + radius`. Every linear fractional
    /// self-map of the disk factors this way, which makes the constructor a
    /// convenient generator with a prescribed boundary distance. Requires
    /// `radius > 0` and `|p| < 1`; the result is a self-map exactly when
    /// `|center| + radius <= 1`.
    pub fn from_disk_image(center: Complex<T>, radius: T, theta: T, p: Complex<T>) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::DegenerateMap);
        }
        let aut = Self::automorphism(theta, p)?;
        let r = Complex::new(radius, T::zero());
        Self::from_normalized(center * aut.c + r * aut.a, center + r * aut.b, aut.c)
    }

    pub fn a(&self) -> Complex<T> {
        self.a
    }

    pub fn b(&self) -> Complex<T> {
        self.b
    }

    pub fn c(&self) -> Complex<T> {
        self.c
    }

    /// Coefficients of `self ∘ other`, by the 2x2 coefficient matrix product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b;
        let c = self.c * other.a + other.c;
        let d = self.c * other.b + one;
        Self::new(a, b, c, d)
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let den = self.c * z + Complex::new(T::one(), T::zero());
        if den.norm() < real::<T>(tolerances::POLE_TOL) {
            return Err(Error::PoleHit {
                denom_abs: den.norm().to_f64().unwrap_or(0.0),
            });
        }
        Ok((self.a * z + self.b) / den)
    }

    /// `phi'(z) = (a - bc)/(cz + 1)^2`.
    pub fn eval_derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        let den = self.c * z + Complex::new(T::one(), T::zero());
        if den.norm() < real::<T>(tolerances::POLE_TOL) {
            return Err(Error::PoleHit {
                denom_abs: den.norm().to_f64().unwrap_or(0.0),
            });
        }
        Ok((self.a - self.b * self.c) / (den * den))
    }

    /// Exact boundary jet at a unimodular point.
    pub fn derivatives_at(&self, zeta: Complex<T>) -> Result<BoundaryData<T>> {
        let modulus = zeta.norm();
        if (modulus - T::one()).abs() > real::<T>(tolerances::UNIMODULAR_TOL) {
            return Err(Error::NotUnimodular {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        let one = Complex::new(T::one(), T::zero());
        let den = self.c * zeta + one;
        if den.norm() < real::<T>(tolerances::POLE_TOL) {
            return Err(Error::PoleHit {
                denom_abs: den.norm().to_f64().unwrap_or(0.0),
            });
        }
        let det = self.a - self.b * self.c;
        let two = real::<T>(2.0);
        Ok(BoundaryData {
            zeta,
            value: (self.a * zeta + self.b) / den,
            first: det / (den * den),
            second: -(det * self.c * two) / (den * den * den),
        })
    }

    /// Center and radius of the image of the unit circle, from the inverse
    /// locus `|w - b| = |cw - a|`. `None` when the pole sits on the unit
    /// circle itself (`|c| = 1`), in which case the image degenerates to a
    /// line and the map is unbounded on the circle.
    pub fn image_circle(&self) -> Option<(Complex<T>, T)> {
        let cc = T::one() - self.c.norm_sqr();
        if cc.abs() < real::<T>(1e-14) {
            return None;
        }
        let center = (self.b - self.c.conj() * self.a) / cc;
        let rad_sq = center.norm_sqr() - (self.b.norm_sqr() - self.a.norm_sqr()) / cc;
        Some((center, rad_sq.max(T::zero()).sqrt()))
    }

    /// `max_{|z|=1} |phi(z)| = |center| + radius` of the image circle;
    /// infinite when the pole lies on the circle.
    pub fn sup_norm(&self) -> T {
        match self.image_circle() {
            Some((center, radius)) => center.norm() + radius,
            None => T::infinity(),
        }
    }

    /// Preimage `z = (w - b)/(a - cw)` of a point under the map.
    pub fn preimage(&self, w: Complex<T>) -> Result<Complex<T>> {
        let den = self.a - self.c * w;
        if den.norm() < real::<T>(tolerances::POLE_TOL) {
            return Err(Error::PoleHit {
                denom_abs: den.norm().to_f64().unwrap_or(0.0),
            });
        }
        Ok((w - self.b) / den)
    }

    /// Exact verdict `sup |phi| <= 1 + tol`, with a boundary witness
    /// attaining the maximum modulus.
    pub fn is_disk_self_map(&self, tol: T) -> SelfMapCheck<T> {
        let one = Complex::new(T::one(), T::zero());
        match self.image_circle() {
            None => {
                // Pole on the circle: the witness is the pole direction.
                let pole = -one / self.c;
                SelfMapCheck {
                    is_self_map: false,
                    sup_norm: T::infinity(),
                    witness: pole / pole.norm(),
                }
            }
            Some((center, radius)) => {
                let sup = center.norm() + radius;
                let witness = if center.norm() > real::<T>(1e-300) {
                    // Farthest image point from the origin, pulled back.
                    let far = center + center / center.norm() * radius;
                    match self.preimage(far) {
                        Ok(z) if z.norm() > T::zero() => z / z.norm(),
                        _ => one,
                    }
                } else {
                    // Concentric image: every boundary point attains |phi| = radius.
                    one
                };
                SelfMapCheck {
                    is_self_map: sup <= T::one() + tol,
                    sup_norm: sup,
                    witness,
                }
            }
        }
    }

    /// Classify the boundary contact set `{zeta : |phi(zeta)| = 1}` by exact
    /// circle geometry with tangency tolerance `tol`. Requires a self-map.
    pub fn boundary_contact_set(&self, tol: T) -> Result<BoundaryContact<T>> {
        let Some((center, radius)) = self.image_circle() else {
            return Err(Error::NotSelfMap {
                sup_norm: f64::INFINITY,
            });
        };
        let sup = center.norm() + radius;
        if sup > T::one() + tol {
            return Err(Error::NotSelfMap {
                sup_norm: sup.to_f64().unwrap_or(f64::NAN),
            });
        }
        if center.norm() <= tol && (radius - T::one()).abs() <= tol {
            return Ok(BoundaryContact::Full);
        }
        if sup < T::one() - tol {
            return Ok(BoundaryContact::Empty);
        }
        // Internal tangency: the image circle touches the unit circle at
        // center + radius * center/|center|; pull the point back.
        let far = center + center / center.norm() * radius;
        let z = self.preimage(far)?;
        Ok(BoundaryContact::Point(z / z.norm()))
    }

    /// Componentwise comparison of the normalized coefficients.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (self.a - other.a).norm() <= tol
            && (self.b - other.b).norm() <= tol
            && (self.c - other.c).norm() <= tol
    }

    /// True when value, first and second derivative at `zeta` all agree
    /// within `tol`.
    pub fn same_second_order_data(&self, other: &Self, zeta: Complex<T>, tol: T) -> Result<bool> {
        let lhs = self.derivatives_at(zeta)?;
        let rhs = other.derivatives_at(zeta)?;
        Ok((lhs.value - rhs.value).norm() <= tol
            && (lhs.first - rhs.first).norm() <= tol
            && (lhs.second - rhs.second).norm() <= tol)
    }

    /// Compactness of `C_phi` on `D_gamma`: `sup |phi| < 1`, independently
    /// of which space of the scale is asked about.
    pub fn is_compact_composition(&self, gamma: WeightIndex<T>) -> CompactnessVerdict<T> {
        let sup = self.sup_norm();
        CompactnessVerdict {
            gamma: gamma.alpha(),
            sup_norm: sup,
            compact: sup < T::one() - real::<T>(tolerances::BOUNDARY_TOL),
        }
    }

    /// Compactness of `C_phi - C_psi` on `D_gamma`: compact exactly when
    /// the maps are equal or both compositions are compact.
    pub fn compact_difference_verdict(
        &self,
        other: &Self,
        gamma: WeightIndex<T>,
    ) -> DifferenceVerdict<T> {
        let phi = self.is_compact_composition(gamma);
        let psi = other.is_compact_composition(gamma);
        let (compact, reason) = if self.approx_eq(other, real::<T>(tolerances::MAP_EQ_TOL)) {
            (true, DifferenceReason::EqualMaps)
        } else if phi.compact && psi.compact {
            (true, DifferenceReason::BothCompact)
        } else {
            (
                false,
                DifferenceReason::Distinct {
                    phi_compact: phi.compact,
                    psi_compact: psi.compact,
                },
            )
        };
        DifferenceVerdict {
            gamma: gamma.alpha(),
            compact,
            reason,
            sup_phi: phi.sup_norm,
            sup_psi: psi.sup_norm,
        }
    }

    /// Reconstruct the unique map with the given second order boundary data
    /// at `zeta`. Rotating the data to the point 1 turns the jet equations
    /// into the solvable triangle
    ///
    /// ```text
    /// c = -f2 / (f2 + 2 f1),   b = v - f1 (c + 1),   a = v (c + 1) - b
    /// ```
    ///
    /// (in rotated coordinates `f1 = zeta phi'(zeta)`, `f2 = zeta^2
    /// phi''(zeta)`, `v = phi(zeta)`).
    pub fn from_second_order_data(
        zeta: Complex<T>,
        value: Complex<T>,
        first: Complex<T>,
        second: Complex<T>,
    ) -> Result<Self> {
        let modulus = zeta.norm();
        if (modulus - T::one()).abs() > real::<T>(tolerances::UNIMODULAR_TOL) {
            return Err(Error::NotUnimodular {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        let one = Complex::new(T::one(), T::zero());
        let two = real::<T>(2.0);
        let f1 = zeta * first;
        let f2 = zeta * zeta * second;
        if f1.norm() < real::<T>(1e-300) {
            return Err(Error::UnsolvableData {
                reason: "vanishing first derivative".into(),
            });
        }
        let pivot = f2 + f1 * two;
        if pivot.norm() <= real::<T>(1e-12) * (f1.norm() + f2.norm()) {
            return Err(Error::UnsolvableData {
                reason: "f'' + 2 f' vanishes, the coefficient solve is singular".into(),
            });
        }
        let c = -f2 / pivot;
        let b = value - f1 * (c + one);
        let a = value * (c + one) - b;
        // Undo the rotation: the solved map is phi ∘ (zeta z).
        let zbar = zeta.conj();
        Self::from_normalized(a * zbar, b, c * zbar)
    }

    /// Serialize to the normalized JSON form
    /// `{"a":[re,im],"b":[re,im],"c":[re,im],"d":[1.0,0.0]}`.
    pub fn to_json(&self) -> String {
        let pack = |z: Complex<T>| [z.re.to_f64().unwrap(), z.im.to_f64().unwrap()];
        serde_json::to_string(&MapJson {
            a: pack(self.a),
            b: pack(self.b),
            c: pack(self.c),
            d: [1.0, 0.0],
        })
        .expect("plain struct serializes")
    }

    /// Parse from the JSON form; `d` defaults to 1 and normalization is
    /// applied on read.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MapJson = serde_json::from_str(text).map_err(|e| Error::MapJson(e.to_string()))?;
        let unpack = |p: [f64; 2]| Complex::new(real::<T>(p[0]), real::<T>(p[1]));
        Self::new(unpack(raw.a), unpack(raw.b), unpack(raw.c), unpack(raw.d))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Map = LinearFractionalMap<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn half_shift() -> Map {
        // (z + 1)/2
        Map::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap()
    }

    fn cayley_like() -> Map {
        // z/(2 - z)
        Map::new(c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)).unwrap()
    }

    pub(crate) fn random_self_map(rng: &mut impl Rng) -> Map {
        let radius = rng.gen_range(0.2..0.95);
        let margin: f64 = rng.gen_range(0.05..1.0);
        let center = C::from_polar(
            (1.0 - radius) * (1.0 - margin),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let p = C::from_polar(
            rng.gen_range(0.0..0.8),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        Map::from_disk_image(center, radius, theta, p).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(Map::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).is_err());
        // Constant map a=1, b=2, c=0.5, d=1 has ad - bc = 0.
        assert!(Map::new(c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)).is_err());
        let m = Map::new(c(2.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!(m.a(), c(1.0, 0.0));
        assert_eq!(m.c(), c(-0.5, 0.0));
    }

    #[test]
    fn eval_values() {
        let id = Map::identity();
        let z = c(0.3, 0.4);
        assert_eq!(id.eval(z).unwrap(), z);
        assert!((half_shift().eval(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let got = cayley_like().eval(c(0.0, 1.0)).unwrap();
        assert!((got - c(-0.2, 0.4)).norm() < 1e-15); // i/(2-i) = (-1+2i)/5
    }

    #[test]
    fn boundary_jets() {
        let one = c(1.0, 0.0);
        let data = half_shift().derivatives_at(one).unwrap();
        assert!((data.value - one).norm() < 1e-15);
        assert!((data.first - c(0.5, 0.0)).norm() < 1e-15);
        assert!(data.second.norm() < 1e-15);

        let zeta = C::from_polar(1.0, 1.1);
        let id = Map::identity().derivatives_at(zeta).unwrap();
        assert!((id.value - zeta).norm() < 1e-15);
        assert!((id.first - one).norm() < 1e-15);
        assert!(id.second.norm() < 1e-15);

        let data = cayley_like().derivatives_at(one).unwrap();
        assert!((data.value - one).norm() < 1e-15);
        assert!((data.first - c(2.0, 0.0)).norm() < 1e-14);
        assert!((data.second - c(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn jets_match_finite_differences() {
        // Symbolic jet vs central differences along the inward normal.
        let m = random_self_map(&mut ChaCha8Rng::seed_from_u64(7));
        let zeta = C::from_polar(1.0, 0.37);
        let jet = m.derivatives_at(zeta).unwrap();
        let h = 1e-5;
        let f = |t: f64| m.eval(zeta * (1.0 + t)).unwrap();
        let d1 = (f(h) - f(-h)) / (2.0 * h * zeta);
        let d2 = (f(h) - f(0.0) * 2.0 + f(-h)) / (h * h * zeta * zeta);
        assert!((d1 - jet.first).norm() < 1e-7);
        assert!((d2 - jet.second).norm() < 1e-4);
    }

    #[test]
    fn self_map_checks() {
        let id = Map::identity();
        assert!(id.is_disk_self_map(0.0).is_self_map);

        let double = Map::scaling(c(2.0, 0.0)).unwrap();
        let check = double.is_disk_self_map(0.0);
        assert!(!check.is_self_map);
        assert!((check.sup_norm - 2.0).abs() < 1e-15);
        assert!((double.eval(check.witness).unwrap().norm() - 2.0).abs() < 1e-12);

        let (center, radius) = half_shift().image_circle().unwrap();
        assert!((center - c(0.5, 0.0)).norm() < 1e-15);
        assert!((radius - 0.5).abs() < 1e-15);
        assert!(half_shift().is_disk_self_map(1e-12).is_self_map);
    }

    #[test]
    fn sup_norms() {
        assert!((Map::scaling(c(0.5, 0.0)).unwrap().sup_norm() - 0.5).abs() < 1e-15);
        assert!((cayley_like().sup_norm() - 1.0).abs() < 1e-12);
        let m = Map::new(c(1.0, 0.0), c(3.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!((m.sup_norm() - 1.0).abs() < 1e-15);
        // Witness of the maximum modulus is z = 1.
        let check = m.is_disk_self_map(1e-12);
        assert!((check.witness - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn contact_sets() {
        let tol = 1e-9;
        assert_eq!(
            Map::scaling(c(0.5, 0.0)).unwrap().boundary_contact_set(tol).unwrap(),
            BoundaryContact::Empty
        );
        match half_shift().boundary_contact_set(tol).unwrap() {
            BoundaryContact::Point(z) => assert!((z - c(1.0, 0.0)).norm() < 1e-9),
            other => panic!("expected single contact point, got {other:?}"),
        }
        let rot = Map::rotation(std::f64::consts::PI / 3.0);
        assert_eq!(rot.boundary_contact_set(tol).unwrap(), BoundaryContact::Full);
        let aut = Map::automorphism(0.4, c(0.3, -0.2)).unwrap();
        assert_eq!(aut.boundary_contact_set(tol).unwrap(), BoundaryContact::Full);
        assert!(Map::scaling(c(2.0, 0.0))
            .unwrap()
            .boundary_contact_set(tol)
            .is_err());
    }

    #[test]
    fn contact_point_has_positive_angular_derivative() {
        // Whenever the contact set is a point, the first derivative there
        // does not vanish.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_self_map(&mut rng);
            // Push the image circle to touch the boundary: rescale about its center.
            let (center, radius) = m.image_circle().unwrap();
            if center.norm() < 1e-3 {
                continue; // nearly concentric, tangency would be Full
            }
            let scale = (1.0 - center.norm()) / radius;
            let touched = Map::new(
                m.a() * scale + center * (1.0 - scale) * m.c(),
                m.b() * scale + center * (1.0 - scale),
                m.c(),
                c(1.0, 0.0),
            )
            .unwrap();
            match touched.boundary_contact_set(1e-9).unwrap() {
                BoundaryContact::Point(zeta) => {
                    let jet = touched.derivatives_at(zeta).unwrap();
                    assert!((jet.value.norm() - 1.0).abs() < 1e-9);
                    assert!(jet.first.norm() > 0.0);
                }
                other => panic!("expected tangency, got {other:?}"),
            }
        }
    }

    #[test]
    fn second_order_comparisons() {
        let tol = 1e-9;
        let one = c(1.0, 0.0);
        assert!(half_shift()
            .same_second_order_data(&half_shift(), one, tol)
            .unwrap());
        // First-order data 1/2 vs 2 differ at 1.
        assert!(!half_shift()
            .same_second_order_data(&cayley_like(), one, tol)
            .unwrap());
    }

    #[test]
    fn compact_verdicts() {
        let gamma = WeightIndex::new(0.0).unwrap();
        assert!(Map::scaling(c(0.5, 0.0))
            .unwrap()
            .is_compact_composition(gamma)
            .compact);
        assert!(
            !half_shift()
                .is_compact_composition(WeightIndex::new(-1.0).unwrap())
                .compact
        );
        assert!(!Map::rotation(1.0)
            .is_compact_composition(WeightIndex::new(1.0).unwrap())
            .compact);
        assert!(!cayley_like().is_compact_composition(gamma).compact);
    }

    #[test]
    fn difference_verdicts() {
        let gamma = WeightIndex::new(0.0).unwrap();
        let equal = half_shift().compact_difference_verdict(&half_shift(), gamma);
        assert!(equal.compact);
        assert_eq!(equal.reason, DifferenceReason::EqualMaps);

        let both = Map::scaling(c(0.5, 0.0)).unwrap().compact_difference_verdict(
            &Map::scaling(c(1.0 / 3.0, 0.0)).unwrap(),
            WeightIndex::new(0.5).unwrap(),
        );
        assert!(both.compact);
        assert_eq!(both.reason, DifferenceReason::BothCompact);

        let neither = Map::identity()
            .compact_difference_verdict(&half_shift(), WeightIndex::new(-1.0).unwrap());
        assert!(!neither.compact);
        assert_eq!(
            neither.reason,
            DifferenceReason::Distinct {
                phi_compact: false,
                psi_compact: false
            }
        );
    }

    #[test]
    fn rigidity_solve_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let m = random_self_map(&mut rng);
            let zeta = C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let jet = m.derivatives_at(zeta).unwrap();
            let back =
                Map::from_second_order_data(zeta, jet.value, jet.first, jet.second).unwrap();
            assert!(
                back.approx_eq(&m, 1e-9),
                "solve-back drifted: {:?} vs {:?}",
                back,
                m
            );
        }
    }

    #[test]
    fn rigidity_detects_perturbed_second_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let one = c(1.0, 0.0);
        for _ in 0..100 {
            let m = random_self_map(&mut rng);
            let jet = m.derivatives_at(one).unwrap();
            let delta = C::from_polar(
                rng.gen_range(1e-6..1.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let perturbed =
                match Map::from_second_order_data(one, jet.value, jet.first, jet.second + delta) {
                    Ok(p) => p,
                    Err(_) => continue, // singular pivot, resample
                };
            assert!(!m.same_second_order_data(&perturbed, one, 1e-9).unwrap());
            assert!(!m.approx_eq(&perturbed, 1e-9));
        }
    }

    #[test]
    fn rotation_invariance_of_difference_verdict() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let gamma = WeightIndex::new(0.3).unwrap();
        for _ in 0..40 {
            let phi = random_self_map(&mut rng);
            let psi = if rng.gen_bool(0.5) {
                phi
            } else {
                random_self_map(&mut rng)
            };
            let pre = Map::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
            let post = Map::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
            let base = phi.compact_difference_verdict(&psi, gamma);
            let moved = post
                .compose(&phi)
                .unwrap()
                .compose(&pre)
                .unwrap()
                .compact_difference_verdict(&post.compose(&psi).unwrap().compose(&pre).unwrap(), gamma);
            assert_eq!(base.compact, moved.compact);
        }
    }

    #[test]
    fn self_map_sup_norm_at_most_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..100 {
            let m = random_self_map(&mut rng);
            let check = m.is_disk_self_map(0.0);
            assert!(check.is_self_map);
            assert!(m.sup_norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let m = cayley_like();
        let back = Map::from_json(&m.to_json()).unwrap();
        assert!(back.approx_eq(&m, 1e-15));
        // Raw form normalizes on read.
        let raw = r#"{"a":[1.0,0.0],"b":[0.0,0.0],"c":[-1.0,0.0],"d":[2.0,0.0]}"#;
        assert!(Map::from_json(raw).unwrap().approx_eq(&m, 1e-15));
        // d defaults to 1.
        let short = r#"{"a":[0.5,0.0],"b":[0.0,0.0],"c":[-0.5,0.0]}"#;
        assert!(Map::from_json(short).unwrap().approx_eq(&m, 1e-15));
        assert!(Map::from_json("{}").is_err());
    }
}
