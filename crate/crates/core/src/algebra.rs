//! Arithmetic in the four normed division algebras R, C, H, O.
//!
//! Elements are coefficient sequences over a basis built by Cayley-Dickson
//! doubling, with the rule `(a,b)(c,d) = (ac - d*b, da + bc*)`. All higher
//! structure in the crate (group laws, hermitian products, rotations)
//! reduces to this module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute-plus-relative comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// `|a - b| <= tol * (1 + max(|a|, |b|))`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// One of the four normed division algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl FieldTag {
    pub fn dim(self) -> usize {
        match self {
            FieldTag::Real => 1,
            FieldTag::Complex => 2,
            FieldTag::Quaternion => 4,
            FieldTag::Octonion => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Option<Self> {
        match dim {
            1 => Some(FieldTag::Real),
            2 => Some(FieldTag::Complex),
            4 => Some(FieldTag::Quaternion),
            8 => Some(FieldTag::Octonion),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
            FieldTag::Quaternion => "H",
            FieldTag::Octonion => "O",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "R" => Some(FieldTag::Real),
            "C" => Some(FieldTag::Complex),
            "H" => Some(FieldTag::Quaternion),
            "O" => Some(FieldTag::Octonion),
            _ => None,
        }
    }
}

/// An element of R, C, H or O as a coefficient sequence; coefficient 0 is
/// the real part. Immutable: every operation returns a fresh value.
#[derive(Clone, Copy, Debug)]
pub struct AlgElem {
    tag: FieldTag,
    c: [f64; 8],
}

// Cayley-Dickson product on coefficient slices of power-of-two length.
fn cd_mul(a: &[f64], b: &[f64], out: &mut [f64]) {
    let n = a.len();
    if n == 1 {
        out[0] = a[0] * b[0];
        return;
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let mut b1c = [0.0f64; 4];
    let mut b2c = [0.0f64; 4];
    b1c[..h].copy_from_slice(b1);
    b2c[..h].copy_from_slice(b2);
    for x in b1c[1..h].iter_mut() {
        *x = -*x;
    }
    for x in b2c[1..h].iter_mut() {
        *x = -*x;
    }
    let mut t1 = [0.0f64; 4];
    let mut t2 = [0.0f64; 4];
    // first half: a1*b1 - conj(b2)*a2
    cd_mul(a1, b1, &mut t1[..h]);
    cd_mul(&b2c[..h], a2, &mut t2[..h]);
    for k in 0..h {
        out[k] = t1[k] - t2[k];
    }
    // second half: b2*a1 + a2*conj(b1)
    cd_mul(b2, a1, &mut t1[..h]);
    cd_mul(a2, &b1c[..h], &mut t2[..h]);
    for k in 0..h {
        out[h + k] = t1[k] + t2[k];
    }
}

impl AlgElem {
    pub fn zero(tag: FieldTag) -> Self {
        AlgElem { tag, c: [0.0; 8] }
    }

    pub fn one(tag: FieldTag) -> Self {
        let mut c = [0.0; 8];
        c[0] = 1.0;
        AlgElem { tag, c }
    }

    /// The basis element `e_k`, `0 <= k < dim`.
    pub fn unit(tag: FieldTag, k: usize) -> Self {
        assert!(k < tag.dim(), "basis index out of range");
        let mut c = [0.0; 8];
        c[k] = 1.0;
        AlgElem { tag, c }
    }

    pub fn real(tag: FieldTag, t: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = t;
        AlgElem { tag, c }
    }

    pub fn from_coeffs(tag: FieldTag, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != tag.dim() {
            return Err(Error::Shape(format!(
                "expected {} coefficients for {:?}, got {}",
                tag.dim(),
                tag,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        let mut c = [0.0; 8];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(AlgElem { tag, c })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.tag.dim()]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    fn check_tag(&self, other: &AlgElem) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        Ok(())
    }

    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_tag(other)?;
        let d = self.tag.dim();
        let mut out = AlgElem::zero(self.tag);
        cd_mul(&self.c[..d], &other.c[..d], &mut out.c[..d]);
        Ok(out)
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_tag(other)?;
        let mut out = *self;
        for k in 0..self.tag.dim() {
            out.c[k] += other.c[k];
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_tag(other)?;
        let mut out = *self;
        for k in 0..self.tag.dim() {
            out.c[k] -= other.c[k];
        }
        Ok(out)
    }

    pub fn neg(&self) -> AlgElem {
        self.rscale(-1.0)
    }

    pub fn rscale(&self, t: f64) -> AlgElem {
        let mut out = *self;
        for k in 0..self.tag.dim() {
            out.c[k] *= t;
        }
        out
    }

    pub fn conj(&self) -> AlgElem {
        let mut out = *self;
        for k in 1..self.tag.dim() {
            out.c[k] = -out.c[k];
        }
        out
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// The imaginary part as an element (real coefficient zeroed).
    pub fn im(&self) -> AlgElem {
        let mut out = *self;
        out.c[0] = 0.0;
        out
    }

    pub fn is_imaginary(&self, tol: f64) -> bool {
        self.c[0].abs() <= tol
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs().iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inv(&self) -> Result<AlgElem> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.conj().rscale(1.0 / n2))
    }

    pub fn dist(&self, other: &AlgElem) -> f64 {
        let d = self.tag.dim();
        (0..d)
            .map(|k| (self.c[k] - other.c[k]).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &AlgElem, tol: f64) -> bool {
        self.tag == other.tag && self.dist(other) <= tol * (1.0 + self.norm().max(other.norm()))
    }
}

/// A vector of algebra elements with a homogeneous tag.
#[derive(Clone, Debug)]
pub struct AlgVector {
    tag: FieldTag,
    entries: Vec<AlgElem>,
}

impl AlgVector {
    pub fn new(tag: FieldTag, entries: Vec<AlgElem>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.tag() != tag) {
            return Err(Error::TagMismatch(tag, e.tag()));
        }
        Ok(AlgVector { tag, entries })
    }

    pub fn zero(tag: FieldTag, len: usize) -> Self {
        AlgVector {
            tag,
            entries: vec![AlgElem::zero(tag); len],
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[AlgElem] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> &AlgElem {
        &self.entries[k]
    }

    fn check_shape(&self, other: &AlgVector) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "vector length {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgVector) -> Result<AlgVector> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(AlgVector {
            tag: self.tag,
            entries,
        })
    }

    pub fn sub(&self, other: &AlgVector) -> Result<AlgVector> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(AlgVector {
            tag: self.tag,
            entries,
        })
    }

    pub fn neg(&self) -> AlgVector {
        self.rscale(-1.0)
    }

    pub fn rscale(&self, t: f64) -> AlgVector {
        AlgVector {
            tag: self.tag,
            entries: self.entries.iter().map(|e| e.rscale(t)).collect(),
        }
    }

    /// `sum_k conj(u_k) v_k`, summed left to right.
    pub fn hermitian(&self, other: &AlgVector) -> Result<AlgElem> {
        self.check_shape(other)?;
        let mut acc = AlgElem::zero(self.tag);
        for (u, v) in self.entries.iter().zip(&other.entries) {
            acc = acc.add(&u.conj().mul(v)?)?;
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sq()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &AlgVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.dist(b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// A dense matrix of algebra elements, row-major.
#[derive(Clone, Debug)]
pub struct Matrix {
    tag: FieldTag,
    rows: usize,
    cols: usize,
    data: Vec<AlgElem>,
}

impl Matrix {
    pub fn zero(tag: FieldTag, rows: usize, cols: usize) -> Self {
        Matrix {
            tag,
            rows,
            cols,
            data: vec![AlgElem::zero(tag); rows * cols],
        }
    }

    pub fn identity(tag: FieldTag, n: usize) -> Self {
        let mut m = Matrix::zero(tag, n, n);
        for k in 0..n {
            *m.at_mut(k, k) = AlgElem::one(tag);
        }
        m
    }

    pub fn from_rows(tag: FieldTag, rows: Vec<Vec<AlgElem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Shape("ragged matrix rows".into()));
            }
            for e in row {
                if e.tag() != tag {
                    return Err(Error::TagMismatch(tag, e.tag()));
                }
                data.push(e);
            }
        }
        Ok(Matrix {
            tag,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &AlgElem {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut AlgElem {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matrix product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.tag, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = AlgElem::zero(self.tag);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector (entries multiply from the left).
    pub fn apply_vec(&self, v: &AlgVector) -> Result<AlgVector> {
        if self.tag != v.tag() {
            return Err(Error::TagMismatch(self.tag, v.tag()));
        }
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = AlgElem::zero(self.tag);
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(v.entry(k))?)?;
            }
            out.push(acc);
        }
        AlgVector::new(self.tag, out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zero(self.tag, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let p = match self.adjoint().mul(self) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let id = Matrix::identity(self.tag, self.rows);
        p.dist(&id) <= tol
    }

    pub fn dist(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.dist(b).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, t: f64) -> Matrix {
        Matrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.rscale(t)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> AlgElem {
        AlgElem::from_coeffs(FieldTag::Complex, &[re, im]).unwrap()
    }

    #[test]
    fn complex_i_squared() {
        let i = AlgElem::unit(FieldTag::Complex, 1);
        let p = i.mul(&i).unwrap();
        assert!(p.approx_eq(&AlgElem::real(FieldTag::Complex, -1.0), 1e-15));
    }

    #[test]
    fn quaternion_i_j_k() {
        let t = FieldTag::Quaternion;
        let i = AlgElem::unit(t, 1);
        let j = AlgElem::unit(t, 2);
        let k = AlgElem::unit(t, 3);
        assert!(i.mul(&j).unwrap().approx_eq(&k, 1e-15));
        assert!(j.mul(&k).unwrap().approx_eq(&i, 1e-15));
        assert!(k.mul(&i).unwrap().approx_eq(&j, 1e-15));
    }

    // Full signed octonion table for the doubling rule, evaluated by hand
    // for all basis pairs. Entry (p, q) holds (sign, r) with e_p e_q = sign e_r;
    // r == 8 flags a real result (sign * 1).
    const OCT_TABLE: [[(i8, usize); 8]; 8] = [
        [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
        [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
        [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
        [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
    ];

    #[test]
    fn octonion_table_matches_hand_derivation() {
        let t = FieldTag::Octonion;
        for p in 0..8 {
            for q in 0..8 {
                let prod = AlgElem::unit(t, p).mul(&AlgElem::unit(t, q)).unwrap();
                let (sign, r) = OCT_TABLE[p][q];
                let expected = AlgElem::unit(t, r).rscale(sign as f64);
                assert!(
                    prod.approx_eq(&expected, 1e-15),
                    "e{} * e{} = {:?}, expected {}e{}",
                    p,
                    q,
                    prod.coeffs(),
                    sign,
                    r
                );
            }
        }
    }

    #[test]
    fn conj_and_norm() {
        let z = c(3.0, 4.0);
        assert!(z.conj().approx_eq(&c(3.0, -4.0), 1e-15));
        assert!((z.norm() - 5.0).abs() < 1e-15);
        let o = AlgElem::from_coeffs(FieldTag::Octonion, &[1.0; 8])
            .unwrap()
            .rscale(1.0 / 8f64.sqrt());
        assert!((o.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_roundtrip_quaternions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = FieldTag::Quaternion;
        for _ in 0..100 {
            let q = AlgElem::from_coeffs(
                t,
                &(0..4).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<_>>(),
            )
            .unwrap();
            if q.norm() < 1e-3 {
                continue;
            }
            let p = q.inv().unwrap().mul(&q).unwrap();
            assert!(p.approx_eq(&AlgElem::one(t), 1e-12));
        }
    }

    #[test]
    fn inv_of_zero_is_domain_error() {
        assert!(matches!(
            AlgElem::zero(FieldTag::Complex).inv(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let a = AlgElem::one(FieldTag::Complex);
        let b = AlgElem::one(FieldTag::Quaternion);
        assert!(matches!(a.mul(&b), Err(Error::TagMismatch(_, _))));
    }

    #[test]
    fn hermitian_single_entry() {
        let u = AlgVector::new(FieldTag::Complex, vec![c(1.0, 0.0)]).unwrap();
        let v = AlgVector::new(FieldTag::Complex, vec![c(0.0, 1.0)]).unwrap();
        let h = u.hermitian(&v).unwrap();
        assert!(h.approx_eq(&c(0.0, 1.0), 1e-15));
    }
}
