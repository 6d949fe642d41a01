//! The projective model of rank-one hyperbolic space over R, C and H:
//! quadratic forms in the bases E and F, isometry matrices, the K/M/A/N
//! constructors, Iwasawa decomposition, and the chart identifying the
//! Heisenberg-type group with the boundary minus one point.
//!
//! The octonionic case is rejected here: O^3 is not a vector space, so the
//! projective model does not exist; octonionic support lives entirely at the
//! group and similarity level.

use crate::algebra::{AlgElem, AlgVector, FieldTag, Matrix};
use crate::error::{Error, Result};
use crate::heisenberg::{NPoint, Rotation};
use crate::similarity::Similarity;

/// Basis of `F^{n+1}`: the canonical basis E, or the null basis F obtained
/// by the substitution `f_1 = (-e_1+e_{n+1})/sqrt(2)`, `f_{n+1} = (e_1+e_{n+1})/sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    Boundary,
    Exterior,
}

fn reject_octonion(tag: FieldTag) -> Result<()> {
    if tag == FieldTag::Octonion {
        return Err(Error::Precondition(
            "no projective model over the octonions".into(),
        ));
    }
    Ok(())
}

/// A point of the right projective space `P(F^{n+1})`: a nonzero coordinate
/// column up to right scalar multiplication.
#[derive(Clone, Debug)]
pub struct ProjVec {
    coords: AlgVector,
    basis: BasisTag,
}

impl ProjVec {
    pub fn new(coords: AlgVector, basis: BasisTag) -> Result<Self> {
        reject_octonion(coords.tag())?;
        if coords.len() < 3 {
            return Err(Error::Shape("need at least 3 coordinates (n >= 2)".into()));
        }
        if coords.norm() == 0.0 {
            return Err(Error::Domain("zero vector has no projective class".into()));
        }
        Ok(ProjVec { coords, basis })
    }

    /// The basis line `[e_k]` (or `[f_k]`), `k` zero-based.
    pub fn basis_line(tag: FieldTag, n: usize, k: usize, basis: BasisTag) -> Result<Self> {
        let mut v = vec![AlgElem::zero(tag); n + 1];
        v[k] = AlgElem::one(tag);
        ProjVec::new(AlgVector::new(tag, v)?, basis)
    }

    /// The interior point "0" = `[e_{n+1}]`.
    pub fn zero_point(tag: FieldTag, n: usize, basis: BasisTag) -> Result<Self> {
        match basis {
            BasisTag::E => ProjVec::basis_line(tag, n, n, BasisTag::E),
            BasisTag::F => ProjVec::zero_point(tag, n, BasisTag::E)?.change_basis(),
        }
    }

    /// The boundary point infinity = `[f_{n+1}]`.
    pub fn infinity(tag: FieldTag, n: usize, basis: BasisTag) -> Result<Self> {
        match basis {
            BasisTag::F => ProjVec::basis_line(tag, n, n, BasisTag::F),
            BasisTag::E => ProjVec::infinity(tag, n, BasisTag::F)?.change_basis(),
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.coords.tag()
    }

    /// The rank `n`; coordinates have length `n + 1`.
    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn coords(&self) -> &AlgVector {
        &self.coords
    }

    /// Right scalar multiplication (a no-op projectively).
    pub fn rmul(&self, mu: &AlgElem) -> Result<ProjVec> {
        let entries = self
            .coords
            .entries()
            .iter()
            .map(|e| e.mul(mu))
            .collect::<Result<Vec<_>>>()?;
        ProjVec::new(AlgVector::new(self.tag(), entries)?, self.basis)
    }

    fn pivot(&self) -> usize {
        let mut best = 0;
        let mut best_norm = self.coords.entry(0).norm();
        for k in 1..self.coords.len() {
            let n = self.coords.entry(k).norm();
            if n > best_norm {
                best = k;
                best_norm = n;
            }
        }
        best
    }

    /// Canonical representative: the coordinate of largest norm (lowest
    /// index on ties) is right-normalized to a positive real, then the
    /// column is scaled to Euclidean norm 1. Right normalization is
    /// well-defined over H as well.
    pub fn normalized(&self) -> Result<ProjVec> {
        let k = self.pivot();
        let piv = *self.coords.entry(k);
        let mu = piv.conj().rscale(1.0 / piv.norm());
        let v = self.rmul(&mu)?;
        let scale = 1.0 / v.coords.norm();
        Ok(ProjVec {
            coords: v.coords.rscale(scale),
            basis: self.basis,
        })
    }

    /// Distance between projective classes via canonical representatives.
    pub fn proj_dist(&self, other: &ProjVec) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::Shape("projective points in different bases".into()));
        }
        let a = self.normalized()?;
        let b = other.normalized()?;
        Ok(a.coords.dist(&b.coords))
    }

    pub fn change_basis(&self) -> Result<ProjVec> {
        let s = transition(self.tag(), self.rank())?;
        let coords = match self.basis {
            // v_E = S v_F
            BasisTag::F => s.apply_vec(&self.coords)?,
            // S is real orthogonal, so S^{-1} = S^T = S^*
            BasisTag::E => s.adjoint().apply_vec(&self.coords)?,
        };
        ProjVec::new(
            coords,
            match self.basis {
                BasisTag::E => BasisTag::F,
                BasisTag::F => BasisTag::E,
            },
        )
    }
}

/// Transition matrix S with the F-basis vectors as columns in E-coordinates.
fn transition(tag: FieldTag, n: usize) -> Result<Matrix> {
    reject_octonion(tag)?;
    let r = 1.0 / 2f64.sqrt();
    let mut s = Matrix::identity(tag, n + 1);
    *s.at_mut(0, 0) = AlgElem::real(tag, -r);
    *s.at_mut(n, 0) = AlgElem::real(tag, r);
    *s.at_mut(0, n) = AlgElem::real(tag, r);
    *s.at_mut(n, n) = AlgElem::real(tag, r);
    Ok(s)
}

/// Gram matrix J of the hermitian form in the given basis.
pub fn gram(tag: FieldTag, n: usize, basis: BasisTag) -> Result<Matrix> {
    reject_octonion(tag)?;
    let mut j = Matrix::identity(tag, n + 1);
    match basis {
        BasisTag::E => {
            *j.at_mut(n, n) = AlgElem::real(tag, -1.0);
        }
        BasisTag::F => {
            *j.at_mut(0, 0) = AlgElem::zero(tag);
            *j.at_mut(n, n) = AlgElem::zero(tag);
            *j.at_mut(0, n) = AlgElem::real(tag, -1.0);
            *j.at_mut(n, 0) = AlgElem::real(tag, -1.0);
        }
    }
    Ok(j)
}

/// The hermitian form `v^* J w`, conjugate-linear in the first argument.
pub fn hermitian_form(v: &ProjVec, w: &ProjVec) -> Result<AlgElem> {
    if v.basis != w.basis {
        return Err(Error::Shape("form arguments in different bases".into()));
    }
    let j = gram(v.tag(), v.rank(), v.basis)?;
    v.coords.hermitian(&j.apply_vec(&w.coords)?)
}

/// `Q(v)`: the quadratic form value of the stored representative.
pub fn q_eval(v: &ProjVec) -> Result<f64> {
    Ok(hermitian_form(v, v)?.re())
}

const BOUNDARY_BAND: f64 = 1e-9;

/// Sign of Q on the line, with a relative tolerance band for the null cone.
pub fn classify_point(v: &ProjVec) -> Result<PointClass> {
    let q = q_eval(v)? / v.coords.norm_sq();
    if q.abs() <= BOUNDARY_BAND {
        Ok(PointClass::Boundary)
    } else if q < 0.0 {
        Ok(PointClass::Interior)
    } else {
        Ok(PointClass::Exterior)
    }
}

/// An isometry of the form Q: a matrix with `g^* J g = J` in its basis.
#[derive(Clone, Debug)]
pub struct GroupElem {
    mat: Matrix,
    basis: BasisTag,
}

const ISOMETRY_TOL: f64 = 1e-9;

impl GroupElem {
    pub fn new(mat: Matrix, basis: BasisTag) -> Result<Self> {
        reject_octonion(mat.tag())?;
        if mat.nrows() != mat.ncols() || mat.nrows() < 3 {
            return Err(Error::Shape("isometry matrix must be square, n >= 2".into()));
        }
        let g = GroupElem { mat, basis };
        if !g.is_isometry(ISOMETRY_TOL)? {
            return Err(Error::Domain("matrix does not preserve the form Q".into()));
        }
        Ok(g)
    }

    pub fn identity(tag: FieldTag, n: usize, basis: BasisTag) -> Result<Self> {
        GroupElem::new(Matrix::identity(tag, n + 1), basis)
    }

    pub fn tag(&self) -> FieldTag {
        self.mat.tag()
    }

    pub fn rank(&self) -> usize {
        self.mat.nrows() - 1
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn is_isometry(&self, tol: f64) -> Result<bool> {
        let j = gram(self.tag(), self.rank(), self.basis)?;
        let lhs = self.mat.adjoint().mul(&j)?.mul(&self.mat)?;
        Ok(lhs.dist(&j) <= tol * (1.0 + j.dist(&Matrix::zero(self.tag(), 0, 0).scale(0.0)).max(1.0)))
    }

    pub fn mul(&self, other: &GroupElem) -> Result<GroupElem> {
        if self.basis != other.basis {
            return Err(Error::Shape("isometries in different bases".into()));
        }
        Ok(GroupElem {
            mat: self.mat.mul(&other.mat)?,
            basis: self.basis,
        })
    }

    /// Inverse through the form: `g^{-1} = J^{-1} g^* J`, valid for any
    /// isometry; both Gram matrices here are involutions.
    pub fn inverse(&self) -> Result<GroupElem> {
        let j = gram(self.tag(), self.rank(), self.basis)?;
        Ok(GroupElem {
            mat: j.mul(&self.mat.adjoint())?.mul(&j)?,
            basis: self.basis,
        })
    }

    pub fn change_basis(&self) -> Result<GroupElem> {
        let s = transition(self.tag(), self.rank())?;
        let (mat, basis) = match self.basis {
            // g_E = S g_F S^T
            BasisTag::F => (s.mul(&self.mat)?.mul(&s.adjoint())?, BasisTag::E),
            BasisTag::E => (s.adjoint().mul(&self.mat)?.mul(&s)?, BasisTag::F),
        };
        Ok(GroupElem { mat, basis })
    }

    pub fn in_basis(&self, basis: BasisTag) -> Result<GroupElem> {
        if self.basis == basis {
            Ok(self.clone())
        } else {
            self.change_basis()
        }
    }

    pub fn apply(&self, v: &ProjVec) -> Result<ProjVec> {
        if self.basis != v.basis() {
            return Err(Error::Shape("isometry and point in different bases".into()));
        }
        ProjVec::new(self.mat.apply_vec(v.coords())?, self.basis)?.normalized()
    }

    /// The `n + 2` frame lines: the basis lines plus the all-ones line.
    pub fn frame(tag: FieldTag, n: usize, basis: BasisTag) -> Result<Vec<ProjVec>> {
        let mut out = Vec::with_capacity(n + 2);
        for k in 0..=n {
            out.push(ProjVec::basis_line(tag, n, k, basis)?);
        }
        let ones = AlgVector::new(tag, vec![AlgElem::one(tag); n + 1])?;
        out.push(ProjVec::new(ones, basis)?);
        Ok(out)
    }

    /// Projective equality: agreement of the actions on the frame.
    pub fn proj_dist(&self, other: &GroupElem) -> Result<f64> {
        let other = other.in_basis(self.basis)?;
        let mut worst = 0.0f64;
        for v in GroupElem::frame(self.tag(), self.rank(), self.basis)? {
            worst = worst.max(self.apply(&v)?.proj_dist(&other.apply(&v)?)?);
        }
        Ok(worst)
    }
}

/// `k = diag(k', 1)` in basis E, `k'` unitary `n x n`.
pub fn mk_k(kp: &Matrix) -> Result<GroupElem> {
    reject_octonion(kp.tag())?;
    if !kp.is_unitary(1e-10) {
        return Err(Error::Domain("K-part must be unitary".into()));
    }
    let n = kp.nrows();
    let mut m = Matrix::identity(kp.tag(), n + 1);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(i, j) = *kp.at(i, j);
        }
    }
    GroupElem::new(m, BasisTag::E)
}

/// `m = diag(alpha, alpha m', alpha)` in basis F, `m'` unitary `(n-1) x (n-1)`,
/// `alpha` a unit.
pub fn mk_m(mp: &Matrix, alpha: &AlgElem) -> Result<GroupElem> {
    reject_octonion(mp.tag())?;
    if mp.tag() != alpha.tag() {
        return Err(Error::TagMismatch(mp.tag(), alpha.tag()));
    }
    if !mp.is_unitary(1e-10) {
        return Err(Error::Domain("M-part must be unitary".into()));
    }
    if (alpha.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Domain("alpha must be a unit".into()));
    }
    let n = mp.nrows() + 1;
    let mut m = Matrix::zero(mp.tag(), n + 1, n + 1);
    *m.at_mut(0, 0) = *alpha;
    *m.at_mut(n, n) = *alpha;
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            *m.at_mut(i + 1, j + 1) = alpha.mul(mp.at(i, j))?;
        }
    }
    GroupElem::new(m, BasisTag::F)
}

/// `a_t = diag(e^{-t}, 1, ..., 1, e^t)` in basis F.
pub fn mk_a(tag: FieldTag, n: usize, t: f64) -> Result<GroupElem> {
    reject_octonion(tag)?;
    let mut m = Matrix::identity(tag, n + 1);
    *m.at_mut(0, 0) = AlgElem::real(tag, (-t).exp());
    *m.at_mut(n, n) = AlgElem::real(tag, t.exp());
    GroupElem::new(m, BasisTag::F)
}

/// The unipotent translation matrix `n_{u,I}` in basis F.
pub fn mk_n(u: &AlgVector, center: &AlgElem) -> Result<GroupElem> {
    reject_octonion(u.tag())?;
    if u.tag() != center.tag() {
        return Err(Error::TagMismatch(u.tag(), center.tag()));
    }
    if !center.is_imaginary(1e-10) {
        return Err(Error::Domain("translation center must be imaginary".into()));
    }
    let n = u.len() + 1;
    let mut m = Matrix::identity(u.tag(), n + 1);
    for k in 0..n - 1 {
        *m.at_mut(k + 1, 0) = *u.entry(k);
        *m.at_mut(n, k + 1) = u.entry(k).conj();
    }
    *m.at_mut(n, 0) = AlgElem::real(u.tag(), u.norm_sq() / 2.0).add(center)?;
    GroupElem::new(m, BasisTag::F)
}

/// The chart `(u, I) -> [1, u, |u|^2/2 + I]` in basis F, sending the group
/// onto the boundary minus infinity.
pub fn from_heisenberg(x: &NPoint) -> Result<ProjVec> {
    reject_octonion(x.tag())?;
    let n = x.rank();
    let mut coords = Vec::with_capacity(n + 1);
    coords.push(AlgElem::one(x.tag()));
    coords.extend_from_slice(x.u().entries());
    coords.push(AlgElem::real(x.tag(), x.u().norm_sq() / 2.0).add(x.center())?);
    ProjVec::new(AlgVector::new(x.tag(), coords)?, BasisTag::F)
}

/// Inverse chart; infinity is the excluded point.
pub fn to_heisenberg(v: &ProjVec) -> Result<NPoint> {
    let v = v.in_basis_f()?;
    if classify_point(&v)? != PointClass::Boundary {
        return Err(Error::Precondition("not a boundary point".into()));
    }
    let first = *v.coords().entry(0);
    if first.norm() <= 1e-12 * v.coords().norm() {
        return Err(Error::PointAtInfinity);
    }
    let w = v.rmul(&first.inv()?)?;
    let u = AlgVector::new(
        v.tag(),
        w.coords().entries()[1..v.rank()].to_vec(),
    )?;
    let center = w.coords().entry(v.rank()).im();
    NPoint::new(u, center)
}

impl ProjVec {
    fn in_basis_f(&self) -> Result<ProjVec> {
        match self.basis {
            BasisTag::F => Ok(self.clone()),
            BasisTag::E => self.change_basis(),
        }
    }
}

/// Unit quaternion inducing a given 3x3 rotation of Im(H) by conjugation.
fn quaternion_from_rotation(tag: FieldTag, r: &[[f64; 3]; 3]) -> Result<AlgElem> {
    let tr = r[0][0] + r[1][1] + r[2][2];
    let (w, x, y, z);
    if tr > 0.0 {
        let s = (tr + 1.0).sqrt() * 2.0;
        w = 0.25 * s;
        x = (r[2][1] - r[1][2]) / s;
        y = (r[0][2] - r[2][0]) / s;
        z = (r[1][0] - r[0][1]) / s;
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let s = (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt() * 2.0;
        w = (r[2][1] - r[1][2]) / s;
        x = 0.25 * s;
        y = (r[0][1] + r[1][0]) / s;
        z = (r[0][2] + r[2][0]) / s;
    } else if r[1][1] >= r[2][2] {
        let s = (1.0 + r[1][1] - r[0][0] - r[2][2]).sqrt() * 2.0;
        w = (r[0][2] - r[2][0]) / s;
        x = (r[0][1] + r[1][0]) / s;
        y = 0.25 * s;
        z = (r[1][2] + r[2][1]) / s;
    } else {
        let s = (1.0 + r[2][2] - r[0][0] - r[1][1]).sqrt() * 2.0;
        w = (r[1][0] - r[0][1]) / s;
        x = (r[0][2] + r[2][0]) / s;
        y = (r[1][2] + r[2][1]) / s;
        z = 0.25 * s;
    }
    let q = AlgElem::from_coeffs(tag, &[w, x, y, z])?;
    Ok(q.rscale(1.0 / q.norm()))
}

/// Extracts the similarity induced on the chart by an isometry fixing
/// infinity (an element of MAN).
pub fn sim_from_stab_infinity(g: &GroupElem) -> Result<Similarity> {
    let g = g.in_basis(BasisTag::F)?;
    let tag = g.tag();
    let n = g.rank();
    let inf = ProjVec::infinity(tag, n, BasisTag::F)?;
    if g.apply(&inf)?.proj_dist(&inf)? > 1e-9 {
        return Err(Error::Precondition(
            "not parabolic-stabilizing: the isometry moves infinity".into(),
        ));
    }
    // lower-triangular block form: lambda = e^t is the corner norm ratio
    let lambda = (g.matrix().at(n, n).norm() / g.matrix().at(0, 0).norm()).sqrt();

    let chart = |x: &NPoint| -> Result<NPoint> { to_heisenberg(&g.apply(&from_heisenberg(x)?)?) };
    let c = chart(&NPoint::origin(tag, n))?;
    let rot_action = |x: &NPoint| -> Result<NPoint> {
        c.inverse().compose(&chart(x)?)?.dilate(1.0 / lambda)
    };

    // companion unit: trivial for R (Im = 0) and C (conjugation is trivial),
    // recovered from the conjugation action on Im(H) otherwise
    let alpha = if tag == FieldTag::Quaternion {
        let mut r = [[0.0f64; 3]; 3];
        for b in 0..3 {
            let i0 = NPoint::new(AlgVector::zero(tag, n - 1), AlgElem::unit(tag, b + 1))?;
            let image = rot_action(&i0)?;
            for a in 0..3 {
                r[a][b] = image.center().coeff(a + 1);
            }
        }
        quaternion_from_rotation(tag, &r)?
    } else {
        AlgElem::one(tag)
    };

    // P columns: the u-action right-untwisted by alpha
    let mut p = Matrix::zero(tag, n - 1, n - 1);
    for j in 0..n - 1 {
        let mut u = vec![AlgElem::zero(tag); n - 1];
        u[j] = AlgElem::one(tag);
        let e = NPoint::new(AlgVector::new(tag, u)?, AlgElem::zero(tag))?;
        let col = rot_action(&e)?;
        for i in 0..n - 1 {
            *p.at_mut(i, j) = col.u().entry(i).mul(&alpha)?;
        }
    }
    Similarity::new(lambda, Rotation::unitary(p, alpha)?, c)
}

/// KAN factorization outcome: `g = k * a_t * n_{u,I}` projectively.
#[derive(Clone, Debug)]
pub struct Iwasawa {
    pub k: GroupElem,
    pub t: f64,
    pub u: AlgVector,
    pub center: AlgElem,
}

/// Iwasawa decomposition via horospherical coordinates of `g * "0"`: AN acts
/// simply transitively on the interior, which pins `(t, u, I)`; the residual
/// `k = g (a n)^{-1}` must stabilize "0".
pub fn iwasawa(g: &GroupElem) -> Result<Iwasawa> {
    let tag = g.tag();
    let n = g.rank();
    let g_f = g.in_basis(BasisTag::F)?;
    // the K-part stabilizes "0", so it is invisible in g^{-1} "0":
    // g = k a_t n_{u,I} gives g^{-1} "0" = a_s n_{v,J} "0" with
    // t = -s, u = -e^s v, I = -e^{2s} J
    let z = g_f
        .inverse()?
        .apply(&ProjVec::zero_point(tag, n, BasisTag::F)?)?;

    // right-normalize the first coordinate to 1; it cannot vanish on an
    // interior point since Q_F >= 0 whenever w_1 = 0
    let first = *z.coords().entry(0);
    if first.norm() <= 1e-12 {
        return Err(Error::Degeneracy(
            "image of the interior basepoint has vanishing first coordinate".into(),
        ));
    }
    let w = z.rmul(&first.inv()?)?;
    let wprime = AlgVector::new(tag, w.coords().entries()[1..n].to_vec())?;
    let wlast = *w.coords().entry(n);

    // a_t n_{u,I} "0" = [e^{-t}, u, e^t(|u|^2/2 + I + 1)]; with s = e^{-2t}:
    // s (Re(w_last) - |w'|^2/2) = 1
    let denom = wlast.re() - wprime.norm_sq() / 2.0;
    if denom <= 0.0 {
        return Err(Error::Degeneracy(
            "basepoint image is not interior in horospherical form".into(),
        ));
    }
    let sq = 1.0 / denom;
    let s = -0.5 * sq.ln();
    let v = wprime.rscale(sq.sqrt());
    let cj = wlast.im().rscale(sq);
    let t = -s;
    let u = v.rscale(-s.exp());
    let center = cj.rscale(-(2.0 * s).exp());

    let an = mk_a(tag, n, t)?.mul(&mk_n(&u, &center)?)?;
    let an_inv = mk_n(&u.neg(), &center.neg())?.mul(&mk_a(tag, n, -t)?)?;
    let k = g_f.mul(&an_inv)?.in_basis(BasisTag::E)?;

    // verification: k stabilizes "0", is block diagonal in basis E, and the
    // recomposition matches g projectively
    let zero_e = ProjVec::zero_point(tag, n, BasisTag::E)?;
    if k.apply(&zero_e)?.proj_dist(&zero_e)? > 1e-8 {
        return Err(Error::Degeneracy("residual factor moves the basepoint".into()));
    }
    let kmat = k.matrix();
    let scale = kmat.at(n, n).norm().max(1.0);
    for j in 0..n {
        if kmat.at(n, j).norm() > 1e-8 * scale || kmat.at(j, n).norm() > 1e-8 * scale {
            return Err(Error::Degeneracy(
                "residual factor is not block diagonal".into(),
            ));
        }
    }
    let recomposed = k.in_basis(BasisTag::F)?.mul(&an)?;
    if recomposed.proj_dist(&g_f)? > 1e-8 {
        return Err(Error::Degeneracy("recomposition mismatch".into()));
    }
    Ok(Iwasawa { k, t, u, center })
}
