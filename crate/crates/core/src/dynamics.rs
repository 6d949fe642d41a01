//! Orbit enumeration, limit-set estimation and classification for groups of
//! similarities or projective isometries, plus the radius function and the
//! Fried pseudo-distance over forbidden sets.

use rayon::prelude::*;

use crate::algebra::FieldTag;
use crate::boundary::{BasisTag, GroupElem, ProjVec};
use crate::error::{Error, Result};
use crate::heisenberg::NPoint;
use crate::similarity::Similarity;

/// Generators of a group acting on the Heisenberg-type group (sim mode) or
/// on the projective model (matrix mode).
#[derive(Clone, Debug)]
pub enum Generators {
    Sim(Vec<Similarity>),
    Matrix(Vec<GroupElem>),
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    tag: FieldTag,
    rank: usize,
    gens: Generators,
}

impl GeneratorSet {
    pub fn new(tag: FieldTag, rank: usize, gens: Generators) -> Result<Self> {
        let count = match &gens {
            Generators::Sim(v) => {
                for g in v {
                    if g.tag() != tag || g.rank() != rank {
                        return Err(Error::Shape("generator shape mismatch".into()));
                    }
                }
                v.len()
            }
            Generators::Matrix(v) => {
                for g in v {
                    if g.tag() != tag || g.rank() != rank {
                        return Err(Error::Shape("generator shape mismatch".into()));
                    }
                }
                v.len()
            }
        };
        if count == 0 {
            return Err(Error::Shape("generator set must be nonempty".into()));
        }
        if count > 26 {
            return Err(Error::Shape("at most 26 generators supported".into()));
        }
        Ok(GeneratorSet { tag, rank, gens })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &Generators {
        &self.gens
    }
}

/// One orbit point: flattened real coordinates, plus the word that produced
/// it (letters `a..` for generators, uppercase for inverses).
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub coords: Vec<f64>,
    pub word_len: usize,
    pub word: String,
}

#[derive(Clone, Debug)]
pub struct OrbitCloud {
    pub points: Vec<OrbitPoint>,
    pub truncated: bool,
}

pub const ORBIT_CAP: usize = 20_000;

fn letter(i: usize, inverse: bool) -> char {
    let c = (b'a' + i as u8) as char;
    if inverse {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

struct SimNode {
    map: Similarity,
    point: NPoint,
    log_lambda: f64,
    word: String,
}

/// Breadth-first orbit closure in sim mode. Dedup key: the image point
/// within `dedup_tol` together with the log dilation factor of the word, so
/// distinct group elements sharing a fixed point are kept apart.
fn orbit_sim(
    gens: &[Similarity],
    base: &NPoint,
    max_word_len: usize,
    dedup_tol: f64,
    cap: usize,
) -> Result<(Vec<SimNode>, bool)> {
    let mut alphabet = Vec::with_capacity(gens.len() * 2);
    for (i, g) in gens.iter().enumerate() {
        alphabet.push((letter(i, false), g.clone()));
        alphabet.push((letter(i, true), g.invert()?));
    }
    let mut kept: Vec<SimNode> = vec![SimNode {
        map: Similarity::identity(base.tag(), base.rank()),
        point: base.clone(),
        log_lambda: 0.0,
        word: String::new(),
    }];
    let mut truncated = false;
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..max_word_len {
        let candidates: Vec<SimNode> = frontier
            .par_iter()
            .map(|&idx| -> Result<Vec<SimNode>> {
                let node = &kept[idx];
                let mut out = Vec::with_capacity(alphabet.len());
                for (ch, g) in &alphabet {
                    let map = node.map.compose(g)?;
                    let point = map.apply(base)?;
                    let log_lambda = map.lambda().ln();
                    let mut word = node.word.clone();
                    word.push(*ch);
                    out.push(SimNode {
                        map,
                        point,
                        log_lambda,
                        word,
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut next_frontier = Vec::new();
        'cand: for cand in candidates {
            if kept.len() >= cap {
                truncated = true;
                break;
            }
            for old in &kept {
                if (old.log_lambda - cand.log_lambda).abs() > dedup_tol {
                    continue;
                }
                // the gauge distance dominates the Euclidean distance of the
                // u-parts, so this cheap check is an exact pre-filter
                if old.point.u().dist(cand.point.u()) > dedup_tol {
                    continue;
                }
                if old.point.distance(&cand.point).unwrap_or(f64::INFINITY) <= dedup_tol {
                    continue 'cand;
                }
            }
            next_frontier.push(kept.len());
            kept.push(cand);
        }
        if next_frontier.is_empty() || truncated {
            break;
        }
        frontier = next_frontier;
    }
    Ok((kept, truncated))
}

fn orbit_matrix(
    gens: &[GroupElem],
    base: &ProjVec,
    max_word_len: usize,
    dedup_tol: f64,
    cap: usize,
) -> Result<(Vec<(ProjVec, String)>, bool)> {
    let mut alphabet = Vec::with_capacity(gens.len() * 2);
    for (i, g) in gens.iter().enumerate() {
        let g = g.in_basis(base.basis())?;
        alphabet.push((letter(i, false), g.clone()));
        alphabet.push((letter(i, true), g.inverse()?));
    }
    let mut kept: Vec<(ProjVec, String)> = vec![(base.normalized()?, String::new())];
    let mut truncated = false;
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..max_word_len {
        let mut candidates = Vec::new();
        for &idx in &frontier {
            let (v, word) = &kept[idx];
            for (ch, g) in &alphabet {
                let image = g.apply(v)?;
                let mut w = word.clone();
                w.push(*ch);
                candidates.push((image, w));
            }
        }
        let mut next_frontier = Vec::new();
        'cand: for (image, word) in candidates {
            if kept.len() >= cap {
                truncated = true;
                break;
            }
            // kept entries and images are canonically normalized already
            for (old, _) in &kept {
                if old.coords().dist(image.coords()) <= dedup_tol {
                    continue 'cand;
                }
            }
            next_frontier.push(kept.len());
            kept.push((image, word));
        }
        if next_frontier.is_empty() || truncated {
            break;
        }
        frontier = next_frontier;
    }
    Ok((kept, truncated))
}

/// Orbit of the default basepoint (group identity in sim mode, the interior
/// point "0" in matrix mode).
pub fn orbit(
    gens: &GeneratorSet,
    max_word_len: usize,
    dedup_tol: f64,
    cap: usize,
) -> Result<OrbitCloud> {
    if max_word_len < 1 {
        return Err(Error::Domain("max word length must be at least 1".into()));
    }
    match gens.gens() {
        Generators::Sim(v) => {
            let base = NPoint::origin(gens.tag(), gens.rank());
            let (nodes, truncated) = orbit_sim(v, &base, max_word_len, dedup_tol, cap)?;
            Ok(OrbitCloud {
                points: nodes
                    .into_iter()
                    .map(|n| OrbitPoint {
                        coords: n.point.flat_coords(),
                        word_len: n.word.len(),
                        word: n.word,
                    })
                    .collect(),
                truncated,
            })
        }
        Generators::Matrix(v) => {
            let base = ProjVec::zero_point(gens.tag(), gens.rank(), BasisTag::F)?;
            let (nodes, truncated) = orbit_matrix(v, &base, max_word_len, dedup_tol, cap)?;
            Ok(OrbitCloud {
                points: nodes
                    .into_iter()
                    .map(|(v, word)| OrbitPoint {
                        coords: v
                            .coords()
                            .entries()
                            .iter()
                            .flat_map(|e| e.coeffs().to_vec())
                            .collect(),
                        word_len: word.len(),
                        word,
                    })
                    .collect(),
                truncated,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitPoint {
    Infinity,
    Finite(NPoint),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitClass {
    Empty,
    Single(LimitPoint),
    Pair(LimitPoint, LimitPoint),
    Larger,
}

#[derive(Clone, Debug)]
pub struct LimitSetReport {
    pub class: LimitClass,
    /// Accumulation evidence: cluster centers with the length of a word
    /// reaching them.
    pub evidence: Vec<(LimitPoint, usize)>,
    pub contains_infinity: bool,
    pub max_lambda: f64,
    pub min_lambda: f64,
    /// Set when the classification heuristics were inconclusive.
    pub low_confidence: bool,
    /// The taxonomy of the classification presumes the group is discrete;
    /// the estimator cannot certify that.
    pub assumes_discrete: bool,
}

const CONTRACTION_THRESHOLD: f64 = 0.05;
const EXPANSION_THRESHOLD: f64 = 20.0;

/// Single-linkage clusters of candidate accumulation points.
fn clusters(points: &[(NPoint, usize)], radius: f64) -> Vec<(NPoint, usize)> {
    let mut reps: Vec<(NPoint, usize)> = Vec::new();
    for (p, wl) in points {
        let mut found = false;
        for (rep, _) in reps.iter() {
            if rep.distance(p).unwrap_or(f64::INFINITY) <= radius {
                found = true;
                break;
            }
        }
        if !found {
            reps.push((p.clone(), *wl));
        }
    }
    reps
}

/// Estimates and classifies the limit set of a similarity group from the
/// orbit of the group identity, following the taxonomy: empty, `{infinity}`,
/// a dual pair, or larger.
pub fn limit_set_estimate(
    gens: &GeneratorSet,
    max_word_len: usize,
    cluster_radius: f64,
) -> Result<LimitSetReport> {
    let sims = match gens.gens() {
        Generators::Sim(v) => v,
        Generators::Matrix(_) => {
            return Err(Error::Precondition(
                "limit-set estimation requires sim-mode generators".into(),
            ))
        }
    };
    let base = NPoint::origin(gens.tag(), gens.rank());
    let (nodes, _truncated) = orbit_sim(sims, &base, max_word_len, 1e-9, ORBIT_CAP)?;

    let mut max_lambda = 0.0f64;
    let mut min_lambda = f64::INFINITY;
    let mut infinity_word = 0usize;
    let mut candidates: Vec<(NPoint, usize)> = Vec::new();
    let mut norm_by_depth: Vec<f64> = vec![0.0; max_word_len + 1];
    for node in &nodes {
        let l = node.map.lambda();
        max_lambda = max_lambda.max(l);
        min_lambda = min_lambda.min(l);
        let depth = node.word.len();
        norm_by_depth[depth] = norm_by_depth[depth].max(node.point.gauge_norm());
        if l < CONTRACTION_THRESHOLD {
            candidates.push((node.point.clone(), depth));
        }
        if l > EXPANSION_THRESHOLD {
            infinity_word = infinity_word.max(depth);
        }
    }

    // escape to infinity: either unbounded dilation products, or orbit
    // points that keep growing at the deepest levels
    let deepest = norm_by_depth
        .iter()
        .rposition(|&n| n > 0.0)
        .unwrap_or(0);
    let escaping = deepest >= 4
        && norm_by_depth[deepest] > 1.5 * norm_by_depth[deepest / 2].max(1.0);
    let contains_infinity = max_lambda > EXPANSION_THRESHOLD || escaping;

    let reps = clusters(&candidates, cluster_radius);
    let mut evidence: Vec<(LimitPoint, usize)> = reps
        .iter()
        .map(|(p, wl)| (LimitPoint::Finite(p.clone()), *wl))
        .collect();
    if contains_infinity {
        evidence.push((LimitPoint::Infinity, infinity_word.max(deepest)));
    }

    let mut low_confidence = false;
    let class = match (reps.len(), contains_infinity) {
        (0, false) => LimitClass::Empty,
        (0, true) => LimitClass::Single(LimitPoint::Infinity),
        (1, false) => LimitClass::Single(LimitPoint::Finite(reps[0].0.clone())),
        (1, true) => LimitClass::Pair(
            LimitPoint::Finite(reps[0].0.clone()),
            LimitPoint::Infinity,
        ),
        (2, false) => {
            let sep = reps[0].0.distance(&reps[1].0)?;
            if sep >= 10.0 * cluster_radius {
                LimitClass::Pair(
                    LimitPoint::Finite(reps[0].0.clone()),
                    LimitPoint::Finite(reps[1].0.clone()),
                )
            } else {
                low_confidence = true;
                LimitClass::Larger
            }
        }
        _ => LimitClass::Larger,
    };
    Ok(LimitSetReport {
        class,
        evidence,
        contains_infinity,
        max_lambda,
        min_lambda,
        low_confidence,
        assumes_discrete: true,
    })
}

/// The dual pair of a non-isometric similarity, attracting point first.
pub fn source_sink(f: &Similarity) -> Result<(LimitPoint, LimitPoint)> {
    if (f.lambda() - 1.0).abs() < 1e-14 {
        return Err(Error::Precondition(
            "dual pair requires a dilation factor different from 1".into(),
        ));
    }
    let p = LimitPoint::Finite(f.fixed_point_default()?);
    if f.lambda() < 1.0 {
        Ok((p, LimitPoint::Infinity))
    } else {
        Ok((LimitPoint::Infinity, p))
    }
}

/// Sampling check that the evidence of a `Larger` report is covered by the
/// group images of one evidence point's neighborhood.
pub fn autosimilarity_check(
    gens: &GeneratorSet,
    report: &LimitSetReport,
    radius: f64,
) -> Result<bool> {
    if report.class != LimitClass::Larger {
        return Err(Error::Precondition(
            "autosimilarity check applies to Larger reports only".into(),
        ));
    }
    let sims = match gens.gens() {
        Generators::Sim(v) => v,
        Generators::Matrix(_) => {
            return Err(Error::Precondition("sim-mode generators required".into()))
        }
    };
    let ident = Similarity::identity(gens.tag(), gens.rank());
    let probes = crate::sample::probe_points(gens.tag(), gens.rank(), 7, 4);
    if sims
        .iter()
        .all(|g| g.action_distance(&ident, &probes).unwrap_or(0.0) < 1e-12)
    {
        return Err(Error::Precondition(
            "generators act trivially; nothing to check".into(),
        ));
    }
    let anchor = match report.evidence.iter().find_map(|(p, _)| match p {
        LimitPoint::Finite(x) => Some(x.clone()),
        LimitPoint::Infinity => None,
    }) {
        Some(x) => x,
        None => {
            return Err(Error::Precondition(
                "no finite evidence point to anchor the check".into(),
            ))
        }
    };
    let (nodes, _) = orbit_sim(sims, &anchor, 6, 1e-9, ORBIT_CAP)?;
    for (target, _) in &report.evidence {
        let target = match target {
            LimitPoint::Finite(x) => x,
            LimitPoint::Infinity => continue,
        };
        let covered = nodes
            .iter()
            .any(|n| n.point.distance(target).unwrap_or(f64::INFINITY) <= radius);
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The set over which the radius function measures clearance: finitely many
/// points, or an affine set given by a basepoint and coordinate directions
/// (the boundary of a vertical or horizontal half-space in group
/// coordinates).
#[derive(Clone, Debug)]
pub enum ForbiddenSet {
    Finite(Vec<NPoint>),
    Affine { base: NPoint, dirs: Vec<NPoint> },
}

impl ForbiddenSet {
    pub fn finite(points: Vec<NPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Shape("forbidden set must be nonempty".into()));
        }
        Ok(ForbiddenSet::Finite(points))
    }

    pub fn affine(base: NPoint, dirs: Vec<NPoint>) -> Result<Self> {
        if dirs.is_empty() {
            return Err(Error::Shape("affine set needs at least one direction".into()));
        }
        for d in &dirs {
            if d.tag() != base.tag() || d.rank() != base.rank() {
                return Err(Error::Shape("direction shape mismatch".into()));
            }
        }
        Ok(ForbiddenSet::Affine { base, dirs })
    }
}

fn affine_point(base: &NPoint, dirs: &[NPoint], params: &[f64]) -> Result<NPoint> {
    let tag = base.tag();
    let mut u = base.u().clone();
    let mut center = *base.center();
    for (d, &t) in dirs.iter().zip(params) {
        u = u.add(&d.u().rscale(t))?;
        center = center.add(&d.center().rscale(t))?;
    }
    let _ = tag;
    NPoint::new(u, center)
}

/// Gauge distance from `z` to the affine set, by nested grid refinement of
/// the parameters down to step 1e-8.
fn affine_distance(z: &NPoint, base: &NPoint, dirs: &[NPoint]) -> Result<f64> {
    let k = dirs.len();
    let mut center_params = vec![0.0f64; k];
    let mut half_width = 2.0 * (z.distance(base)? + 1.0);
    let steps = 9usize;
    let mut best = f64::INFINITY;
    while half_width > 1e-8 {
        let mut best_params = center_params.clone();
        let mut idx = vec![0usize; k];
        loop {
            let params: Vec<f64> = idx
                .iter()
                .zip(&center_params)
                .map(|(&i, &c)| c + half_width * (2.0 * i as f64 / (steps - 1) as f64 - 1.0))
                .collect();
            let d = z.distance(&affine_point(base, dirs, &params)?)?;
            if d < best {
                best = d;
                best_params = params;
            }
            // odometer over the k-dimensional grid
            let mut carry = 0;
            loop {
                idx[carry] += 1;
                if idx[carry] < steps {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
                if carry == k {
                    break;
                }
            }
            if carry == k {
                break;
            }
        }
        center_params = best_params;
        half_width *= 0.35;
    }
    Ok(best)
}

/// Radius of the largest ball around `z` avoiding the forbidden set.
pub fn max_ball_radius(z: &NPoint, set: &ForbiddenSet) -> Result<f64> {
    let r = match set {
        ForbiddenSet::Finite(points) => {
            let mut best = f64::INFINITY;
            for p in points {
                best = best.min(z.distance(p)?);
            }
            best
        }
        ForbiddenSet::Affine { base, dirs } => affine_distance(z, base, dirs)?,
    };
    if r <= 1e-12 {
        return Err(Error::Precondition(
            "point lies on the forbidden set".into(),
        ));
    }
    Ok(r)
}

/// The pseudo-distance `d(p, q) / (r(p) + r(q))`, invariant under
/// similarities stabilizing the forbidden set.
pub fn fried_distance(p: &NPoint, q: &NPoint, set: &ForbiddenSet) -> Result<f64> {
    let rp = max_ball_radius(p, set)?;
    let rq = max_ball_radius(q, set)?;
    Ok(p.distance(q)? / (rp + rq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgElem, AlgVector};
    use crate::heisenberg::Rotation;
    use crate::sample;

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

    fn translation_gens(points: &[NPoint]) -> GeneratorSet {
        GeneratorSet::new(
            FieldTag::Complex,
            2,
            Generators::Sim(points.iter().cloned().map(Similarity::translation).collect()),
        )
        .unwrap()
    }

    #[test]
    fn single_translation_orbit() {
        let gens = translation_gens(&[cpt((1.0, 0.0), 0.0)]);
        let cloud = orbit(&gens, 3, 1e-9, ORBIT_CAP).unwrap();
        // {-3c..3c}: 7 points
        assert_eq!(cloud.points.len(), 7);
        assert!(!cloud.truncated);
        assert!(cloud.points.iter().any(|p| p.word.is_empty()));
    }

    #[test]
    fn orbit_cap_truncates() {
        let gens = translation_gens(&[cpt((1.0, 0.0), 0.0), cpt((0.0, 1.0), 0.0)]);
        let cloud = orbit(&gens, 6, 1e-9, 20).unwrap();
        assert!(cloud.truncated);
        assert!(cloud.points.len() <= 20);
    }

    #[test]
    fn orbit_deterministic() {
        let gens = translation_gens(&[cpt((1.0, 0.3), 0.0), cpt((0.2, 1.0), 0.5)]);
        let a = orbit(&gens, 4, 1e-9, ORBIT_CAP).unwrap();
        let b = orbit(&gens, 4, 1e-9, ORBIT_CAP).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (x, y) in a.points.iter().zip(&b.points) {
            assert_eq!(x.word, y.word);
            assert_eq!(x.coords, y.coords);
        }
    }

    #[test]
    fn taxonomy_rotation_is_empty() {
        let t = FieldTag::Complex;
        // order-4 rotation: P = i
        let p = crate::algebra::Matrix::from_rows(t, vec![vec![AlgElem::unit(t, 1)]]).unwrap();
        let r = Similarity::new(
            1.0,
            Rotation::unitary(p, AlgElem::one(t)).unwrap(),
            NPoint::origin(t, 2),
        )
        .unwrap();
        let gens = GeneratorSet::new(t, 2, Generators::Sim(vec![r])).unwrap();
        let report = limit_set_estimate(&gens, 8, 1e-2).unwrap();
        assert_eq!(report.class, LimitClass::Empty);
        assert!(!report.contains_infinity);
    }

    #[test]
    fn taxonomy_translations_give_infinity() {
        let gens = translation_gens(&[cpt((1.0, 0.0), 0.0), cpt((0.0, 1.0), 0.0)]);
        let report = limit_set_estimate(&gens, 8, 1e-2).unwrap();
        assert_eq!(report.class, LimitClass::Single(LimitPoint::Infinity));
    }

    #[test]
    fn taxonomy_dilation_gives_pair() {
        let f = crate::similarity::centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.5)
            .unwrap();
        let gens = GeneratorSet::new(FieldTag::Complex, 2, Generators::Sim(vec![f])).unwrap();
        let report = limit_set_estimate(&gens, 10, 1e-2).unwrap();
        match &report.class {
            LimitClass::Pair(LimitPoint::Finite(p), LimitPoint::Infinity) => {
                assert!(p.gauge_norm() < 1e-6);
            }
            other => panic!("expected Pair(0, infinity), got {other:?}"),
        }
    }

    #[test]
    fn source_sink_cases() {
        let f = Similarity::pure_dilation(FieldTag::Complex, 2, 0.5).unwrap();
        let (a, r) = source_sink(&f).unwrap();
        assert!(matches!(a, LimitPoint::Finite(ref p) if p.gauge_norm() < 1e-9));
        assert_eq!(r, LimitPoint::Infinity);
        let (a2, r2) = source_sink(&f.invert().unwrap()).unwrap();
        assert_eq!(a2, LimitPoint::Infinity);
        assert!(matches!(r2, LimitPoint::Finite(_)));
        assert!(source_sink(&Similarity::identity(FieldTag::Complex, 2)).is_err());
    }

    #[test]
    fn autosimilarity_refusals_and_success() {
        let f = crate::similarity::centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.5)
            .unwrap();
        let gens = GeneratorSet::new(FieldTag::Complex, 2, Generators::Sim(vec![f])).unwrap();
        let pair_report = limit_set_estimate(&gens, 10, 1e-2).unwrap();
        assert!(matches!(
            autosimilarity_check(&gens, &pair_report, 0.1),
            Err(Error::Precondition(_))
        ));

        // two dilations centered at distinct points: a larger limit set
        let g1 = crate::similarity::centered_dilation(&NPoint::origin(FieldTag::Complex, 2), 0.4)
            .unwrap();
        let g2 =
            crate::similarity::centered_dilation(&cpt((1.0, 0.0), 0.0), 0.4).unwrap();
        let gens2 =
            GeneratorSet::new(FieldTag::Complex, 2, Generators::Sim(vec![g1, g2])).unwrap();
        let report = limit_set_estimate(&gens2, 8, 1e-2).unwrap();
        assert_eq!(report.class, LimitClass::Larger);
        assert!(autosimilarity_check(&gens2, &report, 0.15).unwrap());
    }

    #[test]
    fn matrix_mode_orbit_runs() {
        let tag = FieldTag::Complex;
        let mut rng = sample::rng_from_seed(103);
        let x = sample::rand_npoint(&mut rng, tag, 2, 0.5);
        let g = crate::boundary::mk_n(x.u(), x.center()).unwrap();
        let gens = GeneratorSet::new(tag, 2, Generators::Matrix(vec![g])).unwrap();
        let cloud = orbit(&gens, 3, 1e-9, ORBIT_CAP).unwrap();
        assert_eq!(cloud.points.len(), 7);
        let report = limit_set_estimate(&gens, 3, 1e-2);
        assert!(matches!(report, Err(Error::Precondition(_))));
    }

    #[test]
    fn radius_basic_values() {
        let origin = NPoint::origin(FieldTag::Complex, 2);
        let set = ForbiddenSet::finite(vec![origin.clone()]).unwrap();
        let z = cpt((1.0, 0.0), 0.0);
        assert!((max_ball_radius(&z, &set).unwrap() - 1.0).abs() < 1e-12);
        let two = ForbiddenSet::finite(vec![origin.clone(), cpt((0.9, 0.0), 0.0)]).unwrap();
        let r = max_ball_radius(&z, &two).unwrap();
        assert!((r - z.distance(&cpt((0.9, 0.0), 0.0)).unwrap()).abs() < 1e-12);
        assert!(max_ball_radius(&origin, &set).is_err());
    }

    #[test]
    fn radius_lipschitz() {
        let mut rng = sample::rng_from_seed(107);
        let set = ForbiddenSet::finite(vec![
            sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 1.0),
            sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 1.0),
        ])
        .unwrap();
        for _ in 0..200 {
            let p = sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 2.0);
            let q = sample::rand_npoint(&mut rng, FieldTag::Quaternion, 2, 2.0);
            let (rp, rq) = match (max_ball_radius(&p, &set), max_ball_radius(&q, &set)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            assert!(rp <= rq + p.distance(&q).unwrap() + 1e-12);
        }
    }

    #[test]
    fn radius_equivariance_and_fried_invariance() {
        let mut rng = sample::rng_from_seed(109);
        let a = sample::rand_npoint(&mut rng, FieldTag::Complex, 2, 1.0);
        let set = ForbiddenSet::finite(vec![a.clone()]).unwrap();
        let f = crate::similarity::centered_dilation(&a, 0.6).unwrap();
        for _ in 0..50 {
            let z = sample::rand_npoint(&mut rng, FieldTag::Complex, 2, 1.5);
            let r = max_ball_radius(&z, &set).unwrap();
            let rf = max_ball_radius(&f.apply(&z).unwrap(), &set).unwrap();
            assert!((rf - f.lambda() * r).abs() <= 1e-9 * (1.0 + r));
            let q = sample::rand_npoint(&mut rng, FieldTag::Complex, 2, 1.5);
            let d0 = fried_distance(&z, &q, &set).unwrap();
            let d1 = fried_distance(&f.apply(&z).unwrap(), &f.apply(&q).unwrap(), &set).unwrap();
            assert!((d0 - d1).abs() <= 1e-9 * (1.0 + d0));
            assert!((d0 - fried_distance(&q, &z, &set).unwrap()).abs() < 1e-12);
        }
        let z = cpt((0.5, 0.5), 0.2);
        assert!(fried_distance(&z, &z, &set).unwrap() < 1e-15);
    }

    #[test]
    fn affine_radius_matches_closed_form() {
        // forbidden set: the real axis {(t, 0)} over C; clearance of a point
        // on the imaginary u-axis is governed by the gauge of (-t, iy) offsets
        let base = NPoint::origin(FieldTag::Complex, 2);
        let dir = cpt((1.0, 0.0), 0.0);
        let set = ForbiddenSet::affine(base, vec![dir]).unwrap();
        let z = cpt((0.0, 1.0), 0.0);
        // d(z, (t,0)) = gauge(-t + i, Im((t)^* i)) = ((t^2+1)^2 + ... ) minimized at t=0
        let r = max_ball_radius(&z, &set).unwrap();
        let direct = (0..2001)
            .map(|k| {
                let t = -4.0 + k as f64 * 0.004;
                z.distance(&cpt((t, 0.0), 0.0)).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((r - direct).abs() < 1e-4);
        assert!(r <= direct + 1e-8);
    }
}
