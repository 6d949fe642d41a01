//! The Heisenberg-type group `N = F^{n-1} x Im(F)`: group law, gauge norm,
//! left-invariant distance, dilations, rotations and geodesics.
//!
//! Group coordinates are exponential coordinates; the Lie bracket is the
//! closed form `[(u,I),(a,b)] = (0, 2 Im(u^* a))`.

use crate::algebra::{AlgElem, AlgVector, FieldTag, Matrix};
use crate::error::{Error, Result};

/// Tolerance for the imaginary-center invariant at construction.
const CENTER_RE_TOL: f64 = 1e-9;

/// A point `(u, I)` with `u` of length `n - 1` and `I` imaginary.
#[derive(Clone, Debug)]
pub struct NPoint {
    u: AlgVector,
    center: AlgElem,
}

impl PartialEq for NPoint {
    /// Tolerant equality at the default comparison tolerance.
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, 1e-12)
    }
}

impl NPoint {
    pub fn new(u: AlgVector, center: AlgElem) -> Result<Self> {
        if u.tag() != center.tag() {
            return Err(Error::TagMismatch(u.tag(), center.tag()));
        }
        if u.is_empty() {
            return Err(Error::Shape("rank must be at least 2".into()));
        }
        if u.tag() == FieldTag::Octonion && u.len() != 1 {
            return Err(Error::Shape("octonionic rank is restricted to n = 2".into()));
        }
        if center.re().abs() > CENTER_RE_TOL * (1.0 + center.norm()) {
            return Err(Error::Domain(format!(
                "center has real part {}",
                center.re()
            )));
        }
        Ok(NPoint {
            u,
            center: center.im(),
        })
    }

    pub fn origin(tag: FieldTag, rank: usize) -> Self {
        NPoint {
            u: AlgVector::zero(tag, rank - 1),
            center: AlgElem::zero(tag),
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.u.tag()
    }

    /// The rank `n` of the ambient hyperbolic space; `u` has length `n - 1`.
    pub fn rank(&self) -> usize {
        self.u.len() + 1
    }

    pub fn u(&self) -> &AlgVector {
        &self.u
    }

    pub fn center(&self) -> &AlgElem {
        &self.center
    }

    fn check_shape(&self, other: &NPoint) -> Result<()> {
        if self.tag() != other.tag() {
            return Err(Error::TagMismatch(self.tag(), other.tag()));
        }
        if self.rank() != other.rank() {
            return Err(Error::Shape(format!(
                "rank {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        Ok(())
    }

    /// Group law `(u,I)(v,J) = (u+v, I+J+Im(u^*v))`. The real part of the
    /// center is re-projected to zero to kill float drift.
    pub fn compose(&self, other: &NPoint) -> Result<NPoint> {
        self.check_shape(other)?;
        let u = self.u.add(&other.u)?;
        let twist = self.u.hermitian(&other.u)?.im();
        let center = self.center.add(&other.center)?.add(&twist)?.im();
        Ok(NPoint { u, center })
    }

    pub fn inverse(&self) -> NPoint {
        NPoint {
            u: self.u.neg(),
            center: self.center.neg(),
        }
    }

    /// Group commutator; always central, with closed form `(0, 2 Im(u^*v))`.
    pub fn commutator(&self, other: &NPoint) -> Result<NPoint> {
        let xy = self.compose(other)?;
        let yx = other.compose(self)?;
        xy.compose(&yx.inverse())
    }

    /// `sqrt(|u|^2 + |I|)`, homogeneous of degree one under dilations.
    pub fn gauge_norm(&self) -> f64 {
        (self.u.norm_sq() + self.center.norm()).sqrt()
    }

    /// Left-invariant distance `|(-x) y|`.
    pub fn distance(&self, other: &NPoint) -> Result<f64> {
        Ok(self.inverse().compose(other)?.gauge_norm())
    }

    /// `(lambda u, lambda^2 I)` for `lambda > 0`.
    pub fn dilate(&self, lambda: f64) -> Result<NPoint> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        Ok(NPoint {
            u: self.u.rscale(lambda),
            center: self.center.rscale(lambda * lambda),
        })
    }

    pub fn approx_eq(&self, other: &NPoint, tol: f64) -> bool {
        self.tag() == other.tag()
            && self.rank() == other.rank()
            && self.u.dist(&other.u) + self.center.dist(&other.center)
                <= tol * (1.0 + self.gauge_norm().max(other.gauge_norm()))
    }

    /// Coordinates flattened to real numbers (u entries, then center).
    pub fn flat_coords(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for e in self.u.entries() {
            out.extend_from_slice(e.coeffs());
        }
        out.extend_from_slice(self.center.coeffs());
        out
    }
}

/// A Lie-algebra element in the coordinates of the group (same shape as a
/// point; the exponential is the identity on coordinates).
#[derive(Clone, Debug)]
pub struct NTangent {
    u: AlgVector,
    center: AlgElem,
}

impl NTangent {
    pub fn new(u: AlgVector, center: AlgElem) -> Result<Self> {
        let p = NPoint::new(u, center)?;
        Ok(NTangent {
            u: p.u,
            center: p.center,
        })
    }

    pub fn from_point(p: &NPoint) -> Self {
        NTangent {
            u: p.u.clone(),
            center: p.center,
        }
    }

    pub fn u(&self) -> &AlgVector {
        &self.u
    }

    pub fn center(&self) -> &AlgElem {
        &self.center
    }

    /// The one-parameter subgroup `t -> (t a, t b)`; valid because
    /// `Im(a^* a) = 0` makes the line a subgroup.
    pub fn one_param(&self, t: f64) -> NPoint {
        NPoint {
            u: self.u.rscale(t),
            center: self.center.rscale(t),
        }
    }
}

/// Geodesic through `p` with direction `v`: `p exp(tv)`.
pub fn geodesic(p: &NPoint, v: &NTangent, t: f64) -> Result<NPoint> {
    p.compose(&v.one_param(t))
}

/// The closed-form bracket `[(u,I),(a,b)] = (0, 2 Im(u^* a))` as a point
/// shape (u-part zero).
pub fn bracket(p: &NPoint, v: &NTangent) -> Result<NPoint> {
    let im = p.u.hermitian(&v.u)?.im().rscale(2.0);
    Ok(NPoint {
        u: AlgVector::zero(p.tag(), p.rank() - 1),
        center: im,
    })
}

/// A gauge rotation of the group. For R, C and H this is a unitary matrix
/// `P` with a companion unit `alpha` acting by `(u, I) -> (P u a^{-1}, a I a^{-1})`.
/// For O it is an ordered sequence of unit imaginary factors, each acting by
/// `(x, z) -> (x mu, mu z mu^{-1})`; the factor multiplies `x` on the right,
/// which is the side compatible with the group law's `Im(x^* eta)` twist.
#[derive(Clone, Debug)]
pub enum Rotation {
    Unitary { p: Matrix, alpha: AlgElem },
    Octonion { mus: Vec<AlgElem> },
}

const UNITARY_TOL: f64 = 1e-10;

impl Rotation {
    pub fn identity(tag: FieldTag, rank: usize) -> Self {
        if tag == FieldTag::Octonion {
            Rotation::Octonion { mus: Vec::new() }
        } else {
            Rotation::Unitary {
                p: Matrix::identity(tag, rank - 1),
                alpha: AlgElem::one(tag),
            }
        }
    }

    pub fn unitary(p: Matrix, alpha: AlgElem) -> Result<Self> {
        if p.tag() == FieldTag::Octonion {
            return Err(Error::Domain(
                "octonionic rotations are sequences of unit imaginary factors".into(),
            ));
        }
        if p.tag() != alpha.tag() {
            return Err(Error::TagMismatch(p.tag(), alpha.tag()));
        }
        if !p.is_unitary(UNITARY_TOL) {
            return Err(Error::Domain("rotation matrix is not unitary".into()));
        }
        if (alpha.norm() - 1.0).abs() > UNITARY_TOL {
            return Err(Error::Domain("companion unit must have norm 1".into()));
        }
        Ok(Rotation::Unitary { p, alpha })
    }

    pub fn octonion(mus: Vec<AlgElem>) -> Result<Self> {
        for mu in &mus {
            if mu.tag() != FieldTag::Octonion {
                return Err(Error::TagMismatch(FieldTag::Octonion, mu.tag()));
            }
            if (mu.norm() - 1.0).abs() > UNITARY_TOL || !mu.is_imaginary(UNITARY_TOL) {
                return Err(Error::Domain(
                    "octonionic rotation factors must be unit imaginary".into(),
                ));
            }
        }
        Ok(Rotation::Octonion { mus })
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            Rotation::Unitary { p, .. } => p.tag(),
            Rotation::Octonion { .. } => FieldTag::Octonion,
        }
    }

    pub fn apply(&self, x: &NPoint) -> Result<NPoint> {
        match self {
            Rotation::Unitary { p, alpha } => {
                if p.tag() != x.tag() || p.ncols() != x.rank() - 1 {
                    return Err(Error::Shape("rotation shape mismatch".into()));
                }
                let alpha_inv = alpha.inv()?;
                let pu = p.apply_vec(x.u())?;
                let entries = pu
                    .entries()
                    .iter()
                    .map(|e| e.mul(&alpha_inv))
                    .collect::<Result<_>>()?;
                let u = AlgVector::new(p.tag(), entries)?;
                let center = alpha.mul(x.center())?.mul(&alpha_inv)?.im();
                Ok(NPoint { u, center })
            }
            Rotation::Octonion { mus } => {
                if x.tag() != FieldTag::Octonion {
                    return Err(Error::TagMismatch(FieldTag::Octonion, x.tag()));
                }
                let mut cur = x.clone();
                for mu in mus {
                    let mu_inv = mu.inv()?;
                    let entries = cur
                        .u
                        .entries()
                        .iter()
                        .map(|e| e.mul(mu))
                        .collect::<Result<_>>()?;
                    let u = AlgVector::new(FieldTag::Octonion, entries)?;
                    let center = mu.mul(&cur.center)?.mul(&mu_inv)?.im();
                    cur = NPoint { u, center };
                }
                Ok(cur)
            }
        }
    }

    /// Composition as actions: `self` applied after `other`.
    pub fn compose(&self, other: &Rotation) -> Result<Rotation> {
        match (self, other) {
            (
                Rotation::Unitary { p: p1, alpha: a1 },
                Rotation::Unitary { p: p2, alpha: a2 },
            ) => Ok(Rotation::Unitary {
                p: p1.mul(p2)?,
                alpha: a1.mul(a2)?,
            }),
            (Rotation::Octonion { mus: m1 }, Rotation::Octonion { mus: m2 }) => {
                let mut mus = m2.clone();
                mus.extend_from_slice(m1);
                Ok(Rotation::Octonion { mus })
            }
            _ => Err(Error::Shape("mixed rotation kinds".into())),
        }
    }

    pub fn inverse(&self) -> Result<Rotation> {
        match self {
            Rotation::Unitary { p, alpha } => Ok(Rotation::Unitary {
                p: p.adjoint(),
                alpha: alpha.inv()?,
            }),
            Rotation::Octonion { mus } => {
                let mus = mus
                    .iter()
                    .rev()
                    .map(|m| m.inv())
                    .collect::<Result<Vec<_>>>()?;
                Ok(Rotation::Octonion { mus })
            }
        }
    }

    /// Equality decided by action agreement on a probe set; rotation normal
    /// forms do not exist for the octonionic sequences.
    pub fn action_eq(&self, other: &Rotation, probes: &[NPoint], tol: f64) -> bool {
        probes.iter().all(|x| match (self.apply(x), other.apply(x)) {
            (Ok(a), Ok(b)) => a.approx_eq(&b, tol),
            _ => false,
        })
    }
}
