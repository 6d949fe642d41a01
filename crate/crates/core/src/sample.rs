//! Seeded sampling helpers used by the verification battery and the probe
//! sets of map-equality checks. Everything here is deterministic given the
//! seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, AlgVector, FieldTag, Matrix};
use crate::heisenberg::{NPoint, NTangent, Rotation};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_elem<R: Rng>(rng: &mut R, tag: FieldTag, scale: f64) -> AlgElem {
    let coeffs: Vec<f64> = (0..tag.dim())
        .map(|_| rng.gen_range(-scale..scale))
        .collect();
    AlgElem::from_coeffs(tag, &coeffs).expect("matching length")
}

pub fn rand_imaginary<R: Rng>(rng: &mut R, tag: FieldTag, scale: f64) -> AlgElem {
    rand_elem(rng, tag, scale).im()
}

/// A uniform-ish unit element; falls back to 1 when the draw is tiny.
pub fn rand_unit<R: Rng>(rng: &mut R, tag: FieldTag) -> AlgElem {
    let e = rand_elem(rng, tag, 1.0);
    let n = e.norm();
    if n < 1e-6 {
        AlgElem::one(tag)
    } else {
        e.rscale(1.0 / n)
    }
}

/// A unit imaginary element (zero for the reals, where Im(F) = {0}, is not
/// possible; callers must not request one over R).
pub fn rand_unit_imaginary<R: Rng>(rng: &mut R, tag: FieldTag) -> AlgElem {
    assert!(tag != FieldTag::Real, "Im(R) has no unit elements");
    loop {
        let e = rand_elem(rng, tag, 1.0).im();
        let n = e.norm();
        if n > 1e-6 {
            return e.rscale(1.0 / n);
        }
    }
}

pub fn rand_vector<R: Rng>(rng: &mut R, tag: FieldTag, len: usize, scale: f64) -> AlgVector {
    AlgVector::new(tag, (0..len).map(|_| rand_elem(rng, tag, scale)).collect())
        .expect("homogeneous tag")
}

pub fn rand_npoint<R: Rng>(rng: &mut R, tag: FieldTag, rank: usize, scale: f64) -> NPoint {
    let u = rand_vector(rng, tag, rank - 1, scale);
    let center = rand_imaginary(rng, tag, scale);
    NPoint::new(u, center).expect("imaginary center")
}

pub fn rand_tangent<R: Rng>(rng: &mut R, tag: FieldTag, rank: usize, scale: f64) -> NTangent {
    NTangent::new(
        rand_vector(rng, tag, rank - 1, scale),
        rand_imaginary(rng, tag, scale),
    )
    .expect("imaginary center")
}

/// Random unitary matrix over R, C or H by Gram-Schmidt on a random matrix.
/// Projection coefficients multiply on the right, matching the hermitian
/// product `sum conj(u_k) v_k`.
pub fn rand_unitary<R: Rng>(rng: &mut R, tag: FieldTag, n: usize) -> Matrix {
    assert!(tag != FieldTag::Octonion, "no unitary matrices over O");
    loop {
        let cols: Vec<AlgVector> = (0..n).map(|_| rand_vector(rng, tag, n, 1.0)).collect();
        if let Some(q) = gram_schmidt(&cols) {
            let mut m = Matrix::zero(tag, n, n);
            for (j, col) in q.iter().enumerate() {
                for i in 0..n {
                    *m.at_mut(i, j) = *col.entry(i);
                }
            }
            return m;
        }
    }
}

fn gram_schmidt(cols: &[AlgVector]) -> Option<Vec<AlgVector>> {
    let mut out: Vec<AlgVector> = Vec::with_capacity(cols.len());
    for v in cols {
        let mut w = v.clone();
        for u in &out {
            let coef = u.hermitian(&w).ok()?;
            let entries = w
                .entries()
                .iter()
                .zip(u.entries())
                .map(|(we, ue)| we.sub(&ue.mul(&coef).ok()?).ok())
                .collect::<Option<Vec<_>>>()?;
            w = AlgVector::new(w.tag(), entries).ok()?;
        }
        let n = w.norm();
        if n < 1e-8 {
            return None;
        }
        out.push(w.rscale(1.0 / n));
    }
    Some(out)
}

/// Random rotation of the Heisenberg-type group: a unitary pair for R/C/H,
/// a short sequence of unit imaginary factors for O.
pub fn rand_rotation<R: Rng>(rng: &mut R, tag: FieldTag, rank: usize) -> Rotation {
    if tag == FieldTag::Octonion {
        let count = rng.gen_range(1..=3);
        let mus = (0..count).map(|_| rand_unit_imaginary(rng, tag)).collect();
        Rotation::octonion(mus).expect("unit imaginary factors")
    } else {
        let p = rand_unitary(rng, tag, rank - 1);
        let alpha = if tag == FieldTag::Real {
            AlgElem::real(tag, if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        } else {
            rand_unit(rng, tag)
        };
        Rotation::unitary(p, alpha).expect("unitary data")
    }
}

/// Deterministic probe set used for action-based map equality.
pub fn probe_points(tag: FieldTag, rank: usize, seed: u64, count: usize) -> Vec<NPoint> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| rand_npoint(&mut rng, tag, rank, 1.5))
        .collect()
}
