//! The similarity group of the Heisenberg-type group: composition, fixed
//! points, centered dilations, center solving, non-discreteness witnesses
//! and half-space classification of limit visibility.

use crate::algebra::{AlgElem, AlgVector, FieldTag};
use crate::error::{Error, Result};
use crate::heisenberg::{NPoint, Rotation};
use crate::sample;

/// `f(x) = c . dilate(lambda, rot(x))` with the translation on the left;
/// this composite is a genuine `lambda`-similarity of the gauge distance.
#[derive(Clone, Debug)]
pub struct Similarity {
    lambda: f64,
    rot: Rotation,
    c: NPoint,
}

pub const FIXED_POINT_TOL: f64 = 1e-12;
pub const FIXED_POINT_MAX_ITER: usize = 100_000;

impl Similarity {
    pub fn new(lambda: f64, rot: Rotation, c: NPoint) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        if rot.tag() != c.tag() {
            return Err(Error::TagMismatch(rot.tag(), c.tag()));
        }
        Ok(Similarity { lambda, rot, c })
    }

    pub fn identity(tag: FieldTag, rank: usize) -> Self {
        Similarity {
            lambda: 1.0,
            rot: Rotation::identity(tag, rank),
            c: NPoint::origin(tag, rank),
        }
    }

    pub fn translation(c: NPoint) -> Self {
        let rot = Rotation::identity(c.tag(), c.rank());
        Similarity {
            lambda: 1.0,
            rot,
            c,
        }
    }

    pub fn pure_dilation(tag: FieldTag, rank: usize, lambda: f64) -> Result<Self> {
        Similarity::new(lambda, Rotation::identity(tag, rank), NPoint::origin(tag, rank))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn rot(&self) -> &Rotation {
        &self.rot
    }

    pub fn c(&self) -> &NPoint {
        &self.c
    }

    pub fn tag(&self) -> FieldTag {
        self.c.tag()
    }

    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    pub fn apply(&self, x: &NPoint) -> Result<NPoint> {
        self.c
            .compose(&self.rot.apply(x)?.dilate(self.lambda)?)
    }

    /// `self . other` as maps: apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Result<Similarity> {
        let rot = self.rot.compose(&other.rot)?;
        let c = self
            .c
            .compose(&self.rot.apply(&other.c)?.dilate(self.lambda)?)?;
        Ok(Similarity {
            lambda: self.lambda * other.lambda,
            rot,
            c,
        })
    }

    pub fn invert(&self) -> Result<Similarity> {
        let rot = self.rot.inverse()?;
        let c = rot
            .apply(&self.c.inverse())?
            .dilate(1.0 / self.lambda)?;
        Ok(Similarity {
            lambda: 1.0 / self.lambda,
            rot,
            c,
        })
    }

    pub fn conjugate_by(&self, g: &Similarity) -> Result<Similarity> {
        g.compose(self)?.compose(&g.invert()?)
    }

    /// Maximum displacement of `probes` between the two maps.
    pub fn action_distance(&self, other: &Similarity, probes: &[NPoint]) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in probes {
            let d = self.apply(x)?.distance(&other.apply(x)?)?;
            worst = worst.max(d);
        }
        Ok(worst)
    }

    /// Fixed point of a non-isometric similarity by contraction iteration;
    /// iterates the inverse when `lambda > 1` (same fixed point).
    pub fn fixed_point(&self, tol: f64, max_iter: usize) -> Result<NPoint> {
        if (self.lambda - 1.0).abs() < 1e-14 {
            return Err(Error::Precondition(
                "no contracting fixed point: dilation factor is 1".into(),
            ));
        }
        let f = if self.lambda < 1.0 {
            self.clone()
        } else {
            self.invert()?
        };
        let mut x = NPoint::origin(self.tag(), self.rank());
        // Steps contract by a factor lambda exactly, but the gauge distance
        // is Hoelder-1/2 in the center coordinate: a one-ulp center change
        // already reads as a step near 1e-8. Stagnation below 1e-6 is the
        // double-precision floor and counts as convergence.
        let mut prev_step = f64::INFINITY;
        for _ in 0..max_iter {
            let next = f.apply(&x)?;
            let step = x.distance(&next)?;
            x = next;
            if step < tol || (step >= prev_step && step < 1e-6) {
                return Ok(x);
            }
            prev_step = step;
        }
        Err(Error::NonConvergence(format!(
            "fixed point iteration did not reach tol {tol} in {max_iter} steps"
        )))
    }

    pub fn fixed_point_default(&self) -> Result<NPoint> {
        self.fixed_point(FIXED_POINT_TOL, FIXED_POINT_MAX_ITER)
    }
}

/// The dilation with factor `lambda` fixing `beta`:
/// `x -> beta . dilate(lambda, beta^{-1} . x)`.
pub fn centered_dilation(beta: &NPoint, lambda: f64) -> Result<Similarity> {
    let c = beta.compose(&beta.inverse().dilate(lambda)?)?;
    Similarity::new(lambda, Rotation::identity(beta.tag(), beta.rank()), c)
}

fn rank2_coords(x: &NPoint) -> Result<(AlgElem, AlgElem)> {
    if x.rank() != 2 {
        return Err(Error::Shape(format!(
            "rank-2 coordinates required, got rank {}",
            x.rank()
        )));
    }
    Ok((*x.u().entry(0), *x.center()))
}

fn rank2_point(tag: FieldTag, x1: AlgElem, x2: AlgElem) -> Result<NPoint> {
    NPoint::new(AlgVector::new(tag, vec![x1])?, x2.im())
}

/// The printed coordinate form of the dilation centered at `beta` in rank 2:
/// `(l(x1-b1)+b1, l^2(x2-b2)+b2+l(1+l) Im(x1^* b1))`. This mixes left
/// subtraction with right addition and differs from [`centered_dilation`] by
/// a central term; both are kept.
pub fn paper_dilation(beta: &NPoint, lambda: f64, x: &NPoint) -> Result<NPoint> {
    if beta.tag() != x.tag() {
        return Err(Error::TagMismatch(beta.tag(), x.tag()));
    }
    let (b1, b2) = rank2_coords(beta)?;
    let (x1, x2) = rank2_coords(x)?;
    let u = x1.sub(&b1)?.rscale(lambda).add(&b1)?;
    let twist = x1.conj().mul(&b1)?.im().rscale(lambda * (1.0 + lambda));
    let center = x2
        .sub(&b2)?
        .rscale(lambda * lambda)
        .add(&b2)?
        .add(&twist)?;
    rank2_point(x.tag(), u, center)
}

/// Recovers the center `beta = (c, d)` of the printed dilation from one
/// input/output pair, inverting [`paper_dilation`] exactly:
/// `c = (1-l)^{-1}(y1 - l x1)`, `d = (1-l^2)^{-1}(y2 - l^2 x2 - l(1+l) Im(x1^* c))`.
pub fn center_solve(lambda: f64, x: &NPoint, y: &NPoint) -> Result<NPoint> {
    if (lambda - 1.0).abs() < 1e-12 {
        return Err(Error::Degeneracy(
            "dilation factor 1 is the translation case; center is not determined".into(),
        ));
    }
    if x.tag() != y.tag() {
        return Err(Error::TagMismatch(x.tag(), y.tag()));
    }
    let (x1, x2) = rank2_coords(x)?;
    let (y1, y2) = rank2_coords(y)?;
    let c = y1.sub(&x1.rscale(lambda))?.rscale(1.0 / (1.0 - lambda));
    let twist = x1.conj().mul(&c)?.im().rscale(lambda * (1.0 + lambda));
    let d = y2
        .sub(&x2.rscale(lambda * lambda))?
        .sub(&twist)?
        .rscale(1.0 / (1.0 - lambda * lambda));
    rank2_point(x.tag(), c, d)
}

/// Half-space visible in the small-dilation limit around a unit-gauge center.
#[derive(Clone, Debug)]
pub enum HalfspaceKind {
    /// `beta_1 != 0`: the boundary is vertical; visibility is governed by a
    /// functional of the first coordinate alone.
    Vertical { beta: NPoint },
    /// `beta_1 = 0`: visibility is the condition `|x1|^2 + Re(x2^* xi) < 1`.
    Horizontal { xi: AlgElem },
}

impl HalfspaceKind {
    /// Signed margin: negative means `x` is visible in the limit, positive
    /// means it is not. The margin is the first-order derivative of the
    /// squared gauge norm of `paper_dilation(beta, l, x)` at `l = 0`.
    pub fn margin(&self, x: &NPoint) -> Result<f64> {
        match self {
            HalfspaceKind::Vertical { beta } => {
                let (b1, b2) = rank2_coords(beta)?;
                let (x1, _) = rank2_coords(x)?;
                let lin = 2.0 * x1.sub(&b1)?.conj().mul(&b1)?.re();
                let w = x1.conj().mul(&b1)?.im();
                let central = if b2.norm() > 1e-12 {
                    let unit = b2.rscale(1.0 / b2.norm());
                    unit.conj().mul(&w)?.re()
                } else {
                    w.norm()
                };
                Ok(lin + central)
            }
            HalfspaceKind::Horizontal { xi } => {
                let (x1, x2) = rank2_coords(x)?;
                Ok(x1.norm_sq() + x2.conj().mul(xi)?.re() - 1.0)
            }
        }
    }

    pub fn contains(&self, x: &NPoint) -> Result<bool> {
        Ok(self.margin(x)? < 0.0)
    }
}

const UNIT_SPHERE_TOL: f64 = 1e-9;

/// Classifies the visibility half-space of a unit-gauge rank-2 center.
pub fn halfspace_classify(beta: &NPoint) -> Result<HalfspaceKind> {
    let (b1, b2) = rank2_coords(beta)?;
    if (beta.gauge_norm() - 1.0).abs() > UNIT_SPHERE_TOL {
        return Err(Error::Precondition(format!(
            "center must lie on the unit gauge sphere, gauge norm is {}",
            beta.gauge_norm()
        )));
    }
    if b1.norm() > 1e-9 {
        Ok(HalfspaceKind::Vertical { beta: beta.clone() })
    } else {
        Ok(HalfspaceKind::Horizontal { xi: b2 })
    }
}

/// Brute-force oracle: `x` is visible when some small dilation factor pulls
/// it inside the unit gauge ball. The grid is geometric with every factor at
/// most `lambda_min`, spanning two decades below it; visibility in the limit
/// is governed by the sign of the derivative at factor zero, so the grid must
/// stay small enough that higher-order terms cannot flip it, yet large enough
/// that the norm defect stays above floating-point noise.
pub fn visible_in_limit(
    beta: &NPoint,
    x: &NPoint,
    lambda_min: f64,
    samples: usize,
) -> Result<bool> {
    if !(lambda_min > 0.0 && lambda_min < 1.0) {
        return Err(Error::Domain("lambda_min must lie in (0, 1)".into()));
    }
    let span = 100.0f64.ln();
    for k in 0..samples {
        let lambda = lambda_min * (-span * k as f64 / samples.max(2) as f64).exp();
        if paper_dilation(beta, lambda, x)?.gauge_norm() < 1.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of the `h_n = f^n (g f g^{-1}) f^{-n}` accumulation search.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    /// First pair `(n, m)`, `n < m`, whose maps agree within `eps` on the
    /// probe set while both differ from the identity.
    pub pair: Option<(usize, usize)>,
    /// Action distance realised by the pair, when found.
    pub pair_distance: Option<f64>,
    /// Action distance of the rotation accumulation `A_n = P^n Q P Q^{-1} P^{-n}`
    /// from the identity rotation, per index.
    pub rotation_drift: Vec<f64>,
    pub max_n: usize,
}

/// Searches for two distinct indices whose conjugates `h_n` nearly coincide,
/// witnessing non-discreteness of the group generated by `f` and `g`. When
/// `lambda(f) > 1` the search runs on the inverse.
pub fn discreteness_witness(
    f: &Similarity,
    g: &Similarity,
    eps: f64,
    max_n: usize,
) -> Result<WitnessReport> {
    if (f.lambda() - 1.0).abs() < 1e-14 {
        return Err(Error::Precondition(
            "f must have dilation factor different from 1".into(),
        ));
    }
    let f = if f.lambda() > 1.0 {
        f.invert()?
    } else {
        f.clone()
    };
    let p = f.fixed_point_default()?;
    let gp = g.apply(&p)?;
    let gap = p.distance(&gp)?;
    if gap <= 10.0 * eps {
        return Err(Error::Precondition(format!(
            "g must move the fixed point of f; displacement is {gap}"
        )));
    }

    let probes = sample::probe_points(f.tag(), f.rank(), 42, 8);
    let ident = Similarity::identity(f.tag(), f.rank());
    let f_inv = f.invert()?;
    let h = f.conjugate_by(g)?;

    let mut hs: Vec<Similarity> = Vec::with_capacity(max_n + 1);
    let mut rotation_drift = Vec::with_capacity(max_n + 1);
    let mut cur = h;
    for _ in 0..=max_n {
        let rot_part = Similarity::new(
            1.0,
            cur.rot().clone(),
            NPoint::origin(f.tag(), f.rank()),
        )?;
        rotation_drift.push(rot_part.action_distance(&ident, &probes)?);
        hs.push(cur.clone());
        cur = f.compose(&cur)?.compose(&f_inv)?;
    }

    for m in 1..=max_n {
        for n in 0..m {
            let d = hs[n].action_distance(&hs[m], &probes)?;
            if d < eps
                && hs[n].action_distance(&ident, &probes)? > eps
                && hs[m].action_distance(&ident, &probes)? > eps
            {
                return Ok(WitnessReport {
                    pair: Some((n, m)),
                    pair_distance: Some(d),
                    rotation_drift,
                    max_n,
                });
            }
        }
    }
    Ok(WitnessReport {
        pair: None,
        pair_distance: None,
        rotation_drift,
        max_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;

    fn c2(re: f64, im: f64) -> AlgElem {
        AlgElem::from_coeffs(FieldTag::Complex, &[re, im]).unwrap()
    }

    fn cpt(u: (f64, f64), center: f64) -> NPoint {
        NPoint::new(
            AlgVector::new(FieldTag::Complex, vec![c2(u.0, u.1)]).unwrap(),
            c2(0.0, center),
        )
        .unwrap()
    }

    fn rand_sim(rng: &mut rand_chacha::ChaCha8Rng, tag: FieldTag, rank: usize) -> Similarity {
        use rand::Rng;
        let lambda = rng.gen_range(0.3..2.5);
        let rot = sample::rand_rotation(rng, tag, rank);
        let c = sample::rand_npoint(rng, tag, rank, 1.0);
        Similarity::new(lambda, rot, c).unwrap()
    }

    #[test]
    fn identity_and_translation() {
        let x = cpt((0.3, -1.1), 0.6);
        let id = Similarity::identity(FieldTag::Complex, 2);
        assert!(id.apply(&x).unwrap().approx_eq(&x, 1e-14));
        let c = cpt((1.0, 0.0), 0.0);
        let t = Similarity::translation(c.clone());
        let zero = NPoint::origin(FieldTag::Complex, 2);
        assert!(t.apply(&zero).unwrap().approx_eq(&c, 1e-14));
    }

    #[test]
    fn similarity_ratio() {
        let mut rng = sample::rng_from_seed(7);
        for tag in [
            FieldTag::Real,
            FieldTag::Complex,
            FieldTag::Quaternion,
            FieldTag::Octonion,
        ] {
            for _ in 0..40 {
                let f = rand_sim(&mut rng, tag, 2);
                let x = sample::rand_npoint(&mut rng, tag, 2, 1.0);
                let y = sample::rand_npoint(&mut rng, tag, 2, 1.0);
                let lhs = f.apply(&x).unwrap().distance(&f.apply(&y).unwrap()).unwrap();
                let rhs = f.lambda() * x.distance(&y).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-10 * (1.0 + rhs),
                    "ratio failure over {:?}: {} vs {}",
                    tag,
                    lhs,
                    rhs
                );
            }
        }
    }

    #[test]
    fn compose_and_invert_act_correctly() {
        let mut rng = sample::rng_from_seed(13);
        for tag in [FieldTag::Complex, FieldTag::Quaternion, FieldTag::Octonion] {
            for _ in 0..20 {
                let f = rand_sim(&mut rng, tag, 2);
                let g = rand_sim(&mut rng, tag, 2);
                let x = sample::rand_npoint(&mut rng, tag, 2, 1.0);
                let a = f.compose(&g).unwrap().apply(&x).unwrap();
                let b = f.apply(&g.apply(&x).unwrap()).unwrap();
                assert!(a.approx_eq(&b, 1e-10));
                let back = f.invert().unwrap().apply(&f.apply(&x).unwrap()).unwrap();
                assert!(back.approx_eq(&x, 1e-10));
                assert!(
                    (f.compose(&g).unwrap().lambda() - f.lambda() * g.lambda()).abs() < 1e-14
                );
            }
        }
    }

    #[test]
    fn fixed_point_closed_form() {
        // x -> (1,0) . dilate(1/2, x) over C fixes (2, 0).
        let f = Similarity::new(
            0.5,
            Rotation::identity(FieldTag::Complex, 2),
            cpt((1.0, 0.0), 0.0),
        )
        .unwrap();
        let p = f.fixed_point_default().unwrap();
        assert!(p.approx_eq(&cpt((2.0, 0.0), 0.0), 1e-10));
        assert!(f.apply(&p).unwrap().distance(&p).unwrap() < 1e-11);
    }

    #[test]
    fn fixed_point_of_expanding_map_and_conjugation() {
        let mut rng = sample::rng_from_seed(19);
        let f = Similarity::new(
            2.0,
            sample::rand_rotation(&mut rng, FieldTag::Quaternion, 2),
            sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 1.0),
        )
        .unwrap();
        let p = f.fixed_point_default().unwrap();
        // residual floor: one ulp in the center reads as a gauge distance ~1e-8
        assert!(f.apply(&p).unwrap().distance(&p).unwrap() < 1e-7);
        let g = rand_sim(&mut rng, FieldTag::Quaternion, 2);
        let q = f.conjugate_by(&g).unwrap().fixed_point_default().unwrap();
        assert!(q.approx_eq(&g.apply(&p).unwrap(), 1e-8));
    }

    #[test]
    fn fixed_point_refuses_isometries() {
        let t = Similarity::translation(cpt((1.0, 0.0), 0.0));
        assert!(matches!(
            t.fixed_point_default(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn centered_dilation_fixes_center_and_is_one_param() {
        let mut rng = sample::rng_from_seed(29);
        for tag in [FieldTag::Complex, FieldTag::Octonion] {
            let beta = sample::rand_npoint(&mut rng, tag, 2, 1.0);
            let g = centered_dilation(&beta, 0.5).unwrap();
            assert!(g.apply(&beta).unwrap().approx_eq(&beta, 1e-12));
            let h = centered_dilation(&beta, 0.7).unwrap();
            let gh = g.compose(&h).unwrap();
            let direct = centered_dilation(&beta, 0.35).unwrap();
            let probes = sample::probe_points(tag, 2, 3, 8);
            assert!(gh.action_distance(&direct, &probes).unwrap() < 1e-10);
        }
        let zero = NPoint::origin(FieldTag::Complex, 2);
        let d = centered_dilation(&zero, 0.5).unwrap();
        assert!(d.c().gauge_norm() < 1e-15);
    }

    #[test]
    fn paper_dilation_hand_cases() {
        let beta = cpt((0.5, 0.5), 0.3);
        assert!(paper_dilation(&beta, 0.8, &beta)
            .unwrap()
            .approx_eq(&beta, 1e-13));
        // l = 1 shifts only the center, by 2 Im(x1^* b1)
        let x = cpt((1.0, -0.4), 0.2);
        let out = paper_dilation(&beta, 1.0, &x).unwrap();
        let shift = x
            .u()
            .entry(0)
            .conj()
            .mul(beta.u().entry(0))
            .unwrap()
            .im()
            .rscale(2.0);
        let expected = cpt((1.0, -0.4), 0.2 + shift.coeff(1));
        assert!(out.approx_eq(&expected, 1e-13));
    }

    #[test]
    fn center_solve_round_trip() {
        let mut rng = sample::rng_from_seed(31);
        use rand::Rng;
        for tag in [FieldTag::Complex, FieldTag::Quaternion, FieldTag::Octonion] {
            for _ in 0..50 {
                let beta = sample::rand_npoint(&mut rng, tag, 2, 1.0);
                let x = sample::rand_npoint(&mut rng, tag, 2, 1.0);
                let lambda = rng.gen_range(0.05..0.95);
                let y = paper_dilation(&beta, lambda, &x).unwrap();
                let rec = center_solve(lambda, &x, &y).unwrap();
                assert!(rec.approx_eq(&beta, 1e-8), "tag {:?}", tag);
                assert!(paper_dilation(&rec, lambda, &x).unwrap().approx_eq(&y, 1e-8));
            }
        }
    }

    #[test]
    fn center_solve_fixed_input() {
        let x = cpt((0.2, 0.9), -0.4);
        let rec = center_solve(0.5, &x, &x).unwrap();
        assert!(rec.approx_eq(&x, 1e-12));
        assert!(matches!(
            center_solve(1.0, &x, &x),
            Err(Error::Degeneracy(_))
        ));
    }

    #[test]
    fn halfspace_horizontal_case() {
        // beta = ((0), i): horizontal with xi = i
        let beta = cpt((0.0, 0.0), 1.0);
        let k = halfspace_classify(&beta).unwrap();
        match &k {
            HalfspaceKind::Horizontal { xi } => {
                assert!((xi.norm() - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected horizontal"),
        }
        // origin: Re(0^* xi) = 0 < 1, visible
        assert!(k.contains(&NPoint::origin(FieldTag::Complex, 2)).unwrap());
        assert!(visible_in_limit(&beta, &NPoint::origin(FieldTag::Complex, 2), 1e-4, 60).unwrap());
    }

    #[test]
    fn halfspace_vertical_case() {
        let beta = cpt((1.0, 0.0), 0.0);
        assert!(matches!(
            halfspace_classify(&beta).unwrap(),
            HalfspaceKind::Vertical { .. }
        ));
        assert!(halfspace_classify(&cpt((2.0, 0.0), 0.0)).is_err());
    }

    #[test]
    fn halfspace_agrees_with_sampling_oracle() {
        let mut rng = sample::rng_from_seed(37);
        for pass in 0..2 {
            let beta = if pass == 0 {
                let p = sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 1.0);
                p.dilate(1.0 / p.gauge_norm()).unwrap()
            } else {
                NPoint::new(
                    AlgVector::zero(FieldTag::Quaternion, 1),
                    sample::rand_unit_imaginary(&mut rng, FieldTag::Quaternion),
                )
                .unwrap()
            };
            let k = halfspace_classify(&beta).unwrap();
            let mut agree = 0;
            let mut total = 0;
            for _ in 0..200 {
                let x = sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 1.5);
                let m = k.margin(&x).unwrap();
                if m.abs() < 1e-3 {
                    continue;
                }
                total += 1;
                if (m < 0.0) == visible_in_limit(&beta, &x, 1e-4, 120).unwrap() {
                    agree += 1;
                }
            }
            assert!(agree as f64 >= 0.99 * total as f64, "{agree}/{total}");
        }
    }

    #[test]
    fn witness_found_for_dilation_and_translation() {
        let f = centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.5).unwrap();
        let g = Similarity::translation(cpt((1.0, 0.0), 0.0));
        let report = discreteness_witness(&f, &g, 1e-6, 40).unwrap();
        let (n, m) = report.pair.expect("witness expected");
        assert!(m <= 40 && n < m);
        assert!(report.pair_distance.unwrap() < 1e-6);
    }

    #[test]
    fn witness_refusals() {
        let f = centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.5).unwrap();
        // g fixing the fixed point of f
        let g = centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.25).unwrap();
        assert!(matches!(
            discreteness_witness(&f, &g, 1e-6, 40),
            Err(Error::Precondition(_))
        ));
        // pure rotation, lambda = 1
        let t = FieldTag::Complex;
        let p = Matrix::from_rows(t, vec![vec![AlgElem::unit(t, 1)]]).unwrap();
        let r = Similarity::new(
            1.0,
            Rotation::unitary(p, AlgElem::one(t)).unwrap(),
            NPoint::origin(t, 2),
        )
        .unwrap();
        let g2 = Similarity::translation(cpt((1.0, 0.0), 0.0));
        assert!(matches!(
            discreteness_witness(&r, &g2, 1e-6, 40),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn expanding_witness_uses_inverse() {
        let f = centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 2.0).unwrap();
        let g = Similarity::translation(cpt((1.0, 0.0), 0.0));
        let report = discreteness_witness(&f, &g, 1e-6, 40).unwrap();
        assert!(report.pair.is_some());
    }
}
