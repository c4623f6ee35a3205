//! Coarse geometry of filling pairs: lengths, certified modulus lower
//! bounds, coarse midpoints in length form, weighted midpoints and coarse
//! geodesics, centers of triples, the side-of-center order, empirical
//! calibration of the midpoint constant, and the Bowditch axiom harness.
//!
//! All comparisons against `R * sqrt(I)` are done in squared integer form;
//! `R` enters every operation explicitly as an exact rational `R^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::ComplexUniverse;
use crate::curves::{intersection_number, is_filling, CurveError, MultiCurve, NormalCurve};
use crate::ratio::Ratio;
use crate::sampling::SeededRng;
use crate::surface::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoarseError {
    Curve(CurveError),
    /// The named pair does not fill.
    NonFillingPair(String),
    /// The midpoint set is empty at this `R`; `cap_boundary` reports whether
    /// the shortest universe curve touches the weight cap, which points at
    /// the cap rather than `R`.
    EmptyAtThisR { min_length_sq_over_i: Ratio, cap_boundary: bool },
    /// A modulus candidate has zero length.
    ZeroLengthCandidate,
    /// Sampling found no filling pairs.
    NoFillingPairs,
}

impl From<CurveError> for CoarseError {
    fn from(e: CurveError) -> Self {
        CoarseError::Curve(e)
    }
}

impl fmt::Display for CoarseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoarseError::Curve(e) => write!(f, "{e}"),
            CoarseError::NonFillingPair(s) => write!(f, "pair does not fill: {s}"),
            CoarseError::EmptyAtThisR { min_length_sq_over_i, cap_boundary } => write!(
                f,
                "midpoint empty at this R (min length^2/I = {min_length_sq_over_i}, cap boundary: {cap_boundary})"
            ),
            CoarseError::ZeroLengthCandidate => write!(f, "zero-length modulus candidate"),
            CoarseError::NoFillingPairs => write!(f, "no filling pairs found while sampling"),
        }
    }
}

/// Two multicurves that jointly fill, with their intersection number cached.
/// The intersection number is the area of the dual square complex, which is
/// never materialized.
#[derive(Clone, Debug)]
pub struct FillingPair {
    pub a: MultiCurve,
    pub b: MultiCurve,
    i_ab: u64,
}

impl FillingPair {
    pub fn new(
        tri: &IdealTriangulation,
        a: MultiCurve,
        b: MultiCurve,
    ) -> Result<FillingPair, CoarseError> {
        if !is_filling(tri, &a, &b)? {
            return Err(CoarseError::NonFillingPair("a-b".into()));
        }
        let i_ab = intersection_number(tri, &a, &b)?;
        debug_assert!(i_ab > 0);
        Ok(FillingPair { a, b, i_ab })
    }

    pub fn intersection(&self) -> u64 {
        self.i_ab
    }
}

/// A filling pair with positive integer weights: the system `(qa, pb)`.
#[derive(Clone, Debug)]
pub struct WeightedPair {
    pub pair: FillingPair,
    pub q: u64,
    pub p: u64,
}

impl WeightedPair {
    pub fn new(pair: FillingPair, q: u64, p: u64) -> WeightedPair {
        assert!(q >= 1 && p >= 1);
        WeightedPair { pair, q, p }
    }

    /// `I(qa, pb) = q p I(a,b)`.
    pub fn weighted_intersection(&self) -> u128 {
        self.q as u128 * self.p as u128 * self.pair.intersection() as u128
    }
}

/// `l(c) = q I(a,c) + p I(b,c)`.
pub fn length(
    tri: &IdealTriangulation,
    c: &MultiCurve,
    wp: &WeightedPair,
) -> Result<u128, CoarseError> {
    let ia = intersection_number(tri, &wp.pair.a, c)?;
    let ib = intersection_number(tri, &wp.pair.b, c)?;
    Ok(wp.q as u128 * ia as u128 + wp.p as u128 * ib as u128)
}

fn length_curve(
    tri: &IdealTriangulation,
    c: &NormalCurve,
    wp: &WeightedPair,
) -> Result<u128, CoarseError> {
    length(tri, &MultiCurve::from_curve(c.clone()), wp)
}

/// Certified lower bound for the modulus `m(c) = sup I(c,x)/l(x)`: the
/// maximum over the supplied candidates, monotone in the candidate set.
pub fn modulus_lower(
    tri: &IdealTriangulation,
    c: &MultiCurve,
    wp: &WeightedPair,
    candidates: &[NormalCurve],
) -> Result<Ratio, CoarseError> {
    if candidates.is_empty() {
        return Err(CoarseError::ZeroLengthCandidate);
    }
    let mut best = Ratio::ZERO;
    for x in candidates {
        let l = length_curve(tri, x, wp)?;
        if l == 0 {
            return Err(CoarseError::ZeroLengthCandidate);
        }
        let i_cx = intersection_number(tri, c, &MultiCurve::from_curve(x.clone()))?;
        let r = Ratio::new(i_cx as i128, l as i128);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// Midpoint set in length form: curves of the universe with
/// `l(c)^2 <= R^2 I(qa, pb)`, compared exactly in squared form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseSet {
    pub members: Vec<NormalCurve>,
    pub weight_cap: u32,
}

impl CoarseSet {
    pub fn indices(&self, u: &ComplexUniverse) -> Vec<u32> {
        self.members.iter().filter_map(|c| u.index_of(c)).collect()
    }
}

pub fn mid_prime(
    tri: &IdealTriangulation,
    wp: &WeightedPair,
    r_squared: Ratio,
    universe: &ComplexUniverse,
) -> Result<CoarseSet, CoarseError> {
    assert!(r_squared.is_positive());
    let bound = r_squared.mul(Ratio::new(wp.weighted_intersection() as i128, 1));
    let mut members = Vec::new();
    let mut min_ratio: Option<(Ratio, bool)> = None;
    for c in universe.curves() {
        let l = length_curve(tri, c, wp)?;
        let lsq = Ratio::new((l * l) as i128, 1);
        if lsq <= bound {
            members.push(c.clone());
        }
        let ratio = Ratio::new(
            (l * l) as i128,
            wp.weighted_intersection() as i128,
        );
        let at_cap = c.max_weight() == universe.weight_cap;
        if min_ratio.map_or(true, |(m, _)| ratio < m) {
            min_ratio = Some((ratio, at_cap));
        }
    }
    if members.is_empty() {
        let (min_length_sq_over_i, cap_boundary) =
            min_ratio.unwrap_or((Ratio::ZERO, false));
        return Err(CoarseError::EmptyAtThisR { min_length_sq_over_i, cap_boundary });
    }
    members.sort();
    Ok(CoarseSet { members, weight_cap: universe.weight_cap })
}

/// Weighted midpoint `Mid(a,b; p/q) = Mid(qa, pb)` for a positive slope.
pub fn weighted_mid(
    tri: &IdealTriangulation,
    fp: &FillingPair,
    slope: Ratio,
    r_squared: Ratio,
    universe: &ComplexUniverse,
) -> Result<CoarseSet, CoarseError> {
    assert!(slope.is_positive());
    let wp = WeightedPair::new(fp.clone(), slope.den() as u64, slope.num() as u64);
    mid_prime(tri, &wp, r_squared, universe)
}

/// The coarse geodesic: weighted midpoints per slope, ordered by slope.
/// The slope order is the coarse order required by the axiom harness.
pub fn coarse_geodesic(
    tri: &IdealTriangulation,
    fp: &FillingPair,
    r_squared: Ratio,
    slopes: &[Ratio],
    universe: &ComplexUniverse,
) -> Vec<(Ratio, Result<CoarseSet, CoarseError>)> {
    let mut slopes: Vec<Ratio> = slopes.to_vec();
    slopes.sort();
    slopes.dedup();
    slopes
        .into_iter()
        .map(|s| {
            let r = weighted_mid(tri, fp, s, r_squared, universe);
            (s, r)
        })
        .collect()
}

/// Center of a pairwise-filling triple: the union of the midpoints of the
/// rescaled pairs `(I(b,c)a, I(c,a)b)` and its two rotations.
pub fn center(
    tri: &IdealTriangulation,
    a: &MultiCurve,
    b: &MultiCurve,
    c: &MultiCurve,
    r_squared: Ratio,
    universe: &ComplexUniverse,
) -> Result<CoarseSet, CoarseError> {
    let parts = center_parts(tri, a, b, c, r_squared, universe)?;
    let mut members: Vec<NormalCurve> = Vec::new();
    for p in parts {
        for m in p.members {
            if !members.contains(&m) {
                members.push(m);
            }
        }
    }
    members.sort();
    Ok(CoarseSet { members, weight_cap: universe.weight_cap })
}

/// The three rescaled midpoint sets `Mid(~a,~b), Mid(~b,~c), Mid(~c,~a)`.
pub fn center_parts(
    tri: &IdealTriangulation,
    a: &MultiCurve,
    b: &MultiCurve,
    c: &MultiCurve,
    r_squared: Ratio,
    universe: &ComplexUniverse,
) -> Result<[CoarseSet; 3], CoarseError> {
    let i_ab = filling_intersection(tri, a, b, "a-b")?;
    let i_bc = filling_intersection(tri, b, c, "b-c")?;
    let i_ca = filling_intersection(tri, c, a, "c-a")?;
    // Pairwise intersection of the rescaled systems is
    // I(a,b) I(b,c) I(c,a) for every pair.
    let tilde = i_ab as u128 * i_bc as u128 * i_ca as u128;
    let mid = |x: &MultiCurve,
               y: &MultiCurve,
               i_xy: u64,
               wx: u64,
               wy: u64|
     -> Result<CoarseSet, CoarseError> {
        let fp = FillingPair { a: x.clone(), b: y.clone(), i_ab: i_xy };
        let wp = WeightedPair::new(fp, wx, wy);
        debug_assert_eq!(wp.weighted_intersection(), tilde);
        mid_prime(tri, &wp, r_squared, universe)
    };
    Ok([
        mid(a, b, i_ab, i_bc, i_ca)?,
        mid(b, c, i_bc, i_ca, i_ab)?,
        mid(c, a, i_ca, i_ab, i_bc)?,
    ])
}

fn filling_intersection(
    tri: &IdealTriangulation,
    x: &MultiCurve,
    y: &MultiCurve,
    name: &str,
) -> Result<u64, CoarseError> {
    if !is_filling(tri, x, y)? {
        return Err(CoarseError::NonFillingPair(name.into()));
    }
    Ok(intersection_number(tri, x, y)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    XSide,
    YSide,
    Balanced,
}

/// The side-of-center predicate: the weighted point `alpha x + beta y` of a
/// pairwise-filling triple is on the x-side of the center iff
/// `alpha I(x,z) >= beta I(y,z)`, exactly.
pub fn side_of_center(
    tri: &IdealTriangulation,
    alpha: u64,
    beta: u64,
    x: &MultiCurve,
    y: &MultiCurve,
    z: &MultiCurve,
) -> Result<Side, CoarseError> {
    let ixz = intersection_number(tri, x, z)? as u128;
    let iyz = intersection_number(tri, y, z)? as u128;
    let lhs = alpha as u128 * ixz;
    let rhs = beta as u128 * iyz;
    Ok(match lhs.cmp(&rhs) {
        core::cmp::Ordering::Greater => Side::XSide,
        core::cmp::Ordering::Less => Side::YSide,
        core::cmp::Ordering::Equal => Side::Balanced,
    })
}

/// The axiom-2 transfer condition at parameter `t`:
/// `I I(a,c) (t I(b,c) + (1-t) I) >= I(b,c) I (t I(a,c) + (1-t) I)`,
/// which reduces to `I(a,c) >= I(b,c)` away from `t = 1`.
pub fn transfer_condition_reduces(i_ab: u64, i_ac: u64, i_bc: u64, t: Ratio) -> bool {
    let i = Ratio::integer(i_ab as i128);
    let iac = Ratio::integer(i_ac as i128);
    let ibc = Ratio::integer(i_bc as i128);
    let one_minus = Ratio::integer(1).sub(t);
    let lhs = i.mul(iac).mul(t.mul(ibc).add(one_minus.mul(i)));
    let rhs = ibc.mul(i).mul(t.mul(iac).add(one_minus.mul(i)));
    let direct = lhs >= rhs;
    let reduced = i_ac >= i_bc;
    if t == Ratio::integer(1) {
        // Degenerate: both sides coincide.
        lhs == rhs
    } else {
        direct == reduced
    }
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

/// Generic closeness-campaign report; constants are graph distances in the
/// universe.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignReport {
    pub name: String,
    pub samples_requested: u64,
    pub samples: u64,
    pub skipped: u64,
    pub max_constant: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub seed: u64,
    pub weight_cap: u32,
    pub r_squared: Ratio,
}

impl CampaignReport {
    fn new(name: &str, requested: u64, seed: u64, cap: u32, r_squared: Ratio) -> CampaignReport {
        CampaignReport {
            name: name.into(),
            samples_requested: requested,
            samples: 0,
            skipped: 0,
            max_constant: 0,
            histogram: BTreeMap::new(),
            seed,
            weight_cap: cap,
            r_squared,
        }
    }

    fn record(&mut self, value: u64) {
        self.samples += 1;
        self.max_constant = self.max_constant.max(value);
        *self.histogram.entry(value).or_insert(0) += 1;
    }
}

/// Directed and symmetric Hausdorff distance between universe index sets.
pub fn hausdorff(u: &ComplexUniverse, xs: &[u32], ys: &[u32]) -> Option<u64> {
    if xs.is_empty() || ys.is_empty() {
        return None;
    }
    let one_way = |from: &[u32], to: &[u32]| -> Option<u64> {
        let mut worst = 0u64;
        for &f in from {
            let dist = u.bfs_from(f);
            let d = to.iter().map(|&t| dist[t as usize]).min()?;
            if d == u32::MAX {
                return None;
            }
            worst = worst.max(d as u64);
        }
        Some(worst)
    };
    Some(one_way(xs, ys)?.max(one_way(ys, xs)?))
}

/// Diameter of a universe index set.
pub fn diameter(u: &ComplexUniverse, xs: &[u32]) -> Option<u64> {
    if xs.is_empty() {
        return None;
    }
    let mut worst = 0u64;
    for &x in xs {
        let dist = u.bfs_from(x);
        for &y in xs {
            let d = dist[y as usize];
            if d == u32::MAX {
                return None;
            }
            worst = worst.max(d as u64);
        }
    }
    Some(worst)
}

/// Calibration of the midpoint constant: over sampled filling pairs of the
/// universe, the worst-case (maximal) value of the minimal
/// `length(c)^2 / I(a,b)`; the returned rational is the calibrated `R^2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub r_squared: Ratio,
    pub per_pair: Vec<Ratio>,
    pub samples_requested: u64,
    pub samples: u64,
    pub skipped_non_filling: u64,
    /// A minimizing curve touched the weight cap in some sample, which means
    /// a larger cap could lower the calibrated constant.
    pub cap_boundary_hit: bool,
    pub seed: u64,
    pub weight_cap: u32,
}

pub fn calibrate_r(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    samples: u64,
    seed: u64,
) -> Result<CalibrationReport, CoarseError> {
    let mut rng = SeededRng::new(seed);
    let mut report = CalibrationReport {
        r_squared: Ratio::ZERO,
        per_pair: Vec::new(),
        samples_requested: samples,
        samples: 0,
        skipped_non_filling: 0,
        cap_boundary_hit: false,
        seed,
        weight_cap: universe.weight_cap,
    };
    let n = universe.len();
    if n < 2 {
        return Err(CoarseError::NoFillingPairs);
    }
    let mut attempts = 0u64;
    while report.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let a = &universe.curves()[rng.index(n)];
        let b = &universe.curves()[rng.index(n)];
        let ma = MultiCurve::from_curve(a.clone());
        let mb = MultiCurve::from_curve(b.clone());
        if !is_filling(tri, &ma, &mb)? {
            report.skipped_non_filling += 1;
            continue;
        }
        let fp = FillingPair::new(tri, ma, mb)?;
        let wp = WeightedPair::new(fp, 1, 1);
        let mut best: Option<(Ratio, bool)> = None;
        for c in universe.curves() {
            let l = length_curve(tri, c, &wp)?;
            let ratio = Ratio::new((l * l) as i128, wp.weighted_intersection() as i128);
            let at_cap = c.max_weight() == universe.weight_cap;
            if best.map_or(true, |(m, _)| ratio < m) {
                best = Some((ratio, at_cap));
            }
        }
        let (ratio, at_cap) = best.expect("universe nonempty");
        report.per_pair.push(ratio);
        report.cap_boundary_hit |= at_cap;
        if ratio > report.r_squared {
            report.r_squared = ratio;
        }
        report.samples += 1;
    }
    if report.samples == 0 {
        return Err(CoarseError::NoFillingPairs);
    }
    Ok(report)
}

/// Sample single-curve pairwise-filling triples from the universe.
fn sample_filling_triple(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    rng: &mut SeededRng,
) -> Option<(MultiCurve, MultiCurve, MultiCurve)> {
    let n = universe.len();
    let pick = |rng: &mut SeededRng| MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
    let (a, b, c) = (pick(rng), pick(rng), pick(rng));
    for (x, y) in [(&a, &b), (&b, &c), (&c, &a)] {
        if !is_filling(tri, x, y).ok()? {
            return None;
        }
    }
    Some((a, b, c))
}

/// Fellow traveling: for `I(b,c) = 0` and equalized intersections with `a`
/// (by formal rescaling), the midpoints of `(a,b)` and `(a,c)` stay close.
pub fn probe_fellow_travel(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    r_squared: Ratio,
    samples: u64,
    seed: u64,
) -> CampaignReport {
    let mut rng = SeededRng::new(seed);
    let mut report =
        CampaignReport::new("fellow-travel", samples, seed, universe.weight_cap, r_squared);
    let n = universe.len();
    let mut attempts = 0u64;
    while report.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let a = MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
        let b = MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
        let c = MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
        let ok = (|| -> Result<Option<u64>, CoarseError> {
            if intersection_number(tri, &b, &c)? != 0 {
                return Ok(None);
            }
            let i_ab = intersection_number(tri, &a, &b)?;
            let i_ac = intersection_number(tri, &a, &c)?;
            if i_ab == 0 || i_ac == 0 {
                return Ok(None);
            }
            if !is_filling(tri, &a, &b)? || !is_filling(tri, &a, &c)? {
                return Ok(None);
            }
            // Equalize: I(a, i_ac * b) = I(a, i_ab * c).
            let bb = b.scaled(i_ac as u32);
            let cc = c.scaled(i_ab as u32);
            let fp_ab = FillingPair::new(tri, a.clone(), bb)?;
            let fp_ac = FillingPair::new(tri, a.clone(), cc)?;
            let m1 = mid_prime(tri, &WeightedPair::new(fp_ab, 1, 1), r_squared, universe);
            let m2 = mid_prime(tri, &WeightedPair::new(fp_ac, 1, 1), r_squared, universe);
            let (Ok(m1), Ok(m2)) = (m1, m2) else { return Ok(None) };
            Ok(hausdorff(universe, &m1.indices(universe), &m2.indices(universe)))
        })();
        match ok {
            Ok(Some(d)) => report.record(d),
            _ => report.skipped += 1,
        }
    }
    report
}

/// Centers: the three rescaled midpoint sets of a triple are pairwise close.
pub fn probe_centers(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    r_squared: Ratio,
    samples: u64,
    seed: u64,
) -> CampaignReport {
    let mut rng = SeededRng::new(seed);
    let mut report = CampaignReport::new("centers", samples, seed, universe.weight_cap, r_squared);
    let mut attempts = 0u64;
    while report.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let Some((a, b, c)) = sample_filling_triple(tri, universe, &mut rng) else {
            report.skipped += 1;
            continue;
        };
        match center_parts(tri, &a, &b, &c, r_squared, universe) {
            Ok(parts) => {
                let idx: Vec<Vec<u32>> = parts.iter().map(|p| p.indices(universe)).collect();
                let mut worst = None;
                for i in 0..3 {
                    for j in i + 1..3 {
                        match hausdorff(universe, &idx[i], &idx[j]) {
                            Some(d) => worst = Some(worst.unwrap_or(0u64).max(d)),
                            None => {
                                worst = None;
                                break;
                            }
                        }
                    }
                }
                match worst {
                    Some(d) => report.record(d),
                    None => report.skipped += 1,
                }
            }
            Err(_) => report.skipped += 1,
        }
    }
    report
}

/// Thin triangles: for `M >= N`, the midpoints of `(M~a, N~b)` and
/// `(M~a, N~c)` stay close.
pub fn probe_thin_triangles(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    r_squared: Ratio,
    samples: u64,
    seed: u64,
    max_scale: u64,
) -> CampaignReport {
    let mut rng = SeededRng::new(seed);
    let mut report =
        CampaignReport::new("thin-triangles", samples, seed, universe.weight_cap, r_squared);
    let mut attempts = 0u64;
    while report.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let Some((a, b, c)) = sample_filling_triple(tri, universe, &mut rng) else {
            report.skipped += 1;
            continue;
        };
        let n_scale = 1 + rng.index(max_scale as usize) as u64;
        let m_scale = n_scale + rng.index(max_scale as usize) as u64;
        let out = (|| -> Result<Option<u64>, CoarseError> {
            let i_ab = intersection_number(tri, &a, &b)?;
            let i_bc = intersection_number(tri, &b, &c)?;
            let i_ca = intersection_number(tri, &c, &a)?;
            // Mid(M ~a, N ~b): pair (a,b) with weights (M I(b,c), N I(c,a)).
            let fp_ab = FillingPair { a: a.clone(), b: b.clone(), i_ab };
            let fp_ac = FillingPair { a: a.clone(), b: c.clone(), i_ab: i_ca };
            let wp_ab =
                WeightedPair::new(fp_ab, m_scale * i_bc, n_scale * i_ca);
            let wp_ac =
                WeightedPair::new(fp_ac, m_scale * i_bc, n_scale * i_ab);
            let m1 = mid_prime(tri, &wp_ab, r_squared, universe);
            let m2 = mid_prime(tri, &wp_ac, r_squared, universe);
            let (Ok(m1), Ok(m2)) = (m1, m2) else { return Ok(None) };
            Ok(hausdorff(universe, &m1.indices(universe), &m2.indices(universe)))
        })();
        match out {
            Ok(Some(d)) => report.record(d),
            _ => report.skipped += 1,
        }
    }
    report
}

/// Interpolation: a curve of `Mid'(a,b;1)` stays close to `Mid'(a,b;t)` for
/// `t` between `1` and `I(a,x)/I(b,x)`.
pub fn probe_ax3(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    r_squared: Ratio,
    samples: u64,
    seed: u64,
) -> CampaignReport {
    let mut rng = SeededRng::new(seed);
    let mut report = CampaignReport::new("ax3", samples, seed, universe.weight_cap, r_squared);
    let n = universe.len();
    let mut attempts = 0u64;
    while report.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let a = MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
        let b = MultiCurve::from_curve(universe.curves()[rng.index(n)].clone());
        let out = (|| -> Result<Option<u64>, CoarseError> {
            if !is_filling(tri, &a, &b)? {
                return Ok(None);
            }
            let fp = FillingPair::new(tri, a.clone(), b.clone())?;
            let m1 = match mid_prime(tri, &WeightedPair::new(fp.clone(), 1, 1), r_squared, universe)
            {
                Ok(m) => m,
                Err(_) => return Ok(None),
            };
            let x = m1.members[rng.index(m1.members.len())].clone();
            let mx = MultiCurve::from_curve(x.clone());
            let iax = intersection_number(tri, &a, &mx)?;
            let ibx = intersection_number(tri, &b, &mx)?;
            if ibx == 0 || iax == 0 {
                return Ok(None);
            }
            let t_far = Ratio::new(iax as i128, ibx as i128);
            let one = Ratio::integer(1);
            let (lo, hi) = if t_far < one { (t_far, one) } else { (one, t_far) };
            // Five interpolation points including both ends.
            let mut worst = 0u64;
            let Some(xi) = universe.index_of(&x) else { return Ok(None) };
            for k in 0..5i128 {
                let t = lo.add(hi.sub(lo).mul(Ratio::new(k, 4)));
                if !t.is_positive() {
                    continue;
                }
                let mid = weighted_mid(tri, &fp, t, r_squared, universe);
                let Ok(mid) = mid else { return Ok(None) };
                let idx = mid.indices(universe);
                let dist = universe.bfs_from(xi);
                let d = idx.iter().map(|&y| dist[y as usize]).min().unwrap_or(u32::MAX);
                if d == u32::MAX {
                    return Ok(None);
                }
                worst = worst.max(d as u64);
            }
            Ok(Some(worst))
        })();
        match out {
            Ok(Some(d)) => report.record(d),
            _ => report.skipped += 1,
        }
    }
    report
}

/// Per-axiom statistics of the Bowditch harness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom1: CampaignReport,
    pub axiom2: CampaignReport,
    pub axiom3: CampaignReport,
    /// Sampled instances of the axiom-2 transfer condition that matched the
    /// reduced form `I(a,c) >= I(b,c)` symbolically.
    pub transfer_checked: u64,
    pub transfer_failures: u64,
}

/// Bowditch axioms with the center as the ternary point and slope order as
/// the coarse order on the geodesics.
pub fn check_bowditch_axioms(
    tri: &IdealTriangulation,
    universe: &ComplexUniverse,
    r_squared: Ratio,
    samples: u64,
    seed: u64,
    grid_denominator: u32,
) -> AxiomReport {
    let mut rng = SeededRng::new(seed);
    let cap = universe.weight_cap;
    let mut axiom1 = CampaignReport::new("bowditch-1", samples, seed, cap, r_squared);
    let mut axiom2 = CampaignReport::new("bowditch-2", samples, seed, cap, r_squared);
    let mut axiom3 = CampaignReport::new("bowditch-3", samples, seed, cap, r_squared);
    let mut transfer_checked = 0u64;
    let mut transfer_failures = 0u64;

    // Axiom 1: HausDist(L_ab[a, phi], L_ac[a, phi]) bounded.
    let mut attempts = 0u64;
    while axiom1.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let Some((a, b, c)) = sample_filling_triple(tri, universe, &mut rng) else {
            axiom1.skipped += 1;
            continue;
        };
        let out = (|| -> Result<Option<u64>, CoarseError> {
            let i_ab = intersection_number(tri, &a, &b)?;
            let i_ac = intersection_number(tri, &a, &c)?;
            let i_bc = intersection_number(tri, &b, &c)?;
            let fp_ab = FillingPair { a: a.clone(), b: b.clone(), i_ab };
            let fp_ac = FillingPair { a: a.clone(), b: c.clone(), i_ab: i_ac };
            // Center sits at slope I(a,c)/I(b,c) on L_ab and I(a,b)/I(b,c)
            // on L_ac.
            let t_ab = Ratio::new(i_ac as i128, i_bc as i128);
            let t_ac = Ratio::new(i_ab as i128, i_bc as i128);
            let seg_ab =
                segment_union(tri, &fp_ab, r_squared, universe, grid_denominator, t_ab)?;
            let seg_ac =
                segment_union(tri, &fp_ac, r_squared, universe, grid_denominator, t_ac)?;
            Ok(hausdorff(universe, &seg_ab, &seg_ac))
        })();
        match out {
            Ok(Some(d)) => axiom1.record(d),
            _ => axiom1.skipped += 1,
        }
    }

    // Axiom 2: adjacent c,d move the center boundedly along L_ab.
    attempts = 0;
    while axiom2.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let Some((a, b, c)) = sample_filling_triple(tri, universe, &mut rng) else {
            axiom2.skipped += 1;
            continue;
        };
        // d adjacent to c: a universe neighbor of c disjoint from it.
        let out = (|| -> Result<Option<u64>, CoarseError> {
            let ci = universe.index_of(&c.components()[0].0).expect("universe curve");
            let neighbors: Vec<u32> = (0..universe.len() as u32)
                .filter(|&j| j != ci)
                .filter(|&j| {
                    intersection_number(
                        tri,
                        &c,
                        &MultiCurve::from_curve(universe.curves()[j as usize].clone()),
                    )
                    .map(|v| v == 0)
                    .unwrap_or(false)
                })
                .collect();
            if neighbors.is_empty() {
                return Ok(None);
            }
            let d = MultiCurve::from_curve(
                universe.curves()[neighbors[rng.index(neighbors.len())] as usize].clone(),
            );
            if !is_filling(tri, &a, &d)? || !is_filling(tri, &b, &d)? {
                return Ok(None);
            }
            let i_ab = intersection_number(tri, &a, &b)?;
            let i_ac = intersection_number(tri, &a, &c)?;
            let i_bc = intersection_number(tri, &b, &c)?;
            let i_ad = intersection_number(tri, &a, &d)?;
            let i_bd = intersection_number(tri, &b, &d)?;
            // Transfer-condition reduction, checked symbolically per sample.
            for k in 0..=4i128 {
                let t = Ratio::new(k, 4);
                transfer_checked += 1;
                if !transfer_condition_reduces(i_ab, i_ac, i_bc, t) {
                    transfer_failures += 1;
                }
            }
            let fp_ab = FillingPair { a: a.clone(), b: b.clone(), i_ab };
            let t_c = Ratio::new(i_ac as i128, i_bc as i128);
            let t_d = Ratio::new(i_ad as i128, i_bd as i128);
            let (lo, hi) = if t_c <= t_d { (t_c, t_d) } else { (t_d, t_c) };
            let seg = segment_union_range(
                tri, &fp_ab, r_squared, universe, grid_denominator, lo, hi,
            )?;
            Ok(diameter(universe, &seg))
        })();
        match out {
            Ok(Some(d)) => axiom2.record(d),
            _ => axiom2.skipped += 1,
        }
    }

    // Axiom 3: a point of L_ab is close to the segment toward its center.
    attempts = 0;
    while axiom3.samples < samples && attempts < samples * 64 {
        attempts += 1;
        let a = MultiCurve::from_curve(universe.curves()[rng.index(universe.len())].clone());
        let b = MultiCurve::from_curve(universe.curves()[rng.index(universe.len())].clone());
        let out = (|| -> Result<Option<u64>, CoarseError> {
            if !is_filling(tri, &a, &b)? {
                return Ok(None);
            }
            let fp = FillingPair::new(tri, a.clone(), b.clone())?;
            let m1 =
                match mid_prime(tri, &WeightedPair::new(fp.clone(), 1, 1), r_squared, universe) {
                    Ok(m) => m,
                    Err(_) => return Ok(None),
                };
            let x = m1.members[rng.index(m1.members.len())].clone();
            let mx = MultiCurve::from_curve(x.clone());
            let iax = intersection_number(tri, &a, &mx)?;
            let ibx = intersection_number(tri, &b, &mx)?;
            if iax == 0 || ibx == 0 {
                return Ok(None);
            }
            let t_center = Ratio::new(iax as i128, ibx as i128);
            let one = Ratio::integer(1);
            let (lo, hi) = if t_center < one { (t_center, one) } else { (one, t_center) };
            let seg = segment_union_range(
                tri, &fp, r_squared, universe, grid_denominator, lo, hi,
            )?;
            let Some(xi) = universe.index_of(&x) else { return Ok(None) };
            let dist = universe.bfs_from(xi);
            let worst = seg.iter().map(|&y| dist[y as usize]).max().unwrap_or(u32::MAX);
            if worst == u32::MAX {
                return Ok(None);
            }
            Ok(Some(worst as u64))
        })();
        match out {
            Ok(Some(d)) => axiom3.record(d),
            _ => axiom3.skipped += 1,
        }
    }

    AxiomReport { axiom1, axiom2, axiom3, transfer_checked, transfer_failures }
}

/// Union of weighted midpoints over the slope grid from the a-end up to
/// `t_hi` (the segment `L_ab[a, center]`).
fn segment_union(
    tri: &IdealTriangulation,
    fp: &FillingPair,
    r_squared: Ratio,
    universe: &ComplexUniverse,
    grid_denominator: u32,
    t_hi: Ratio,
) -> Result<Vec<u32>, CoarseError> {
    let lo = Ratio::new(1, grid_denominator as i128);
    segment_union_range(tri, fp, r_squared, universe, grid_denominator, lo, t_hi)
}

fn segment_union_range(
    tri: &IdealTriangulation,
    fp: &FillingPair,
    r_squared: Ratio,
    universe: &ComplexUniverse,
    grid_denominator: u32,
    lo: Ratio,
    hi: Ratio,
) -> Result<Vec<u32>, CoarseError> {
    let mut slopes: Vec<Ratio> = Vec::new();
    let g = grid_denominator as i128;
    for q in 1..=g {
        for p in 1..=g {
            let t = Ratio::new(p, q);
            if t >= lo && t <= hi {
                slopes.push(t);
            }
        }
    }
    slopes.push(lo);
    slopes.push(hi);
    slopes.sort();
    slopes.dedup();
    let mut out: Vec<u32> = Vec::new();
    for t in slopes {
        if !t.is_positive() {
            continue;
        }
        if let Ok(mid) = weighted_mid(tri, fp, t, r_squared, universe) {
            for i in mid.indices(universe) {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::torus_curve;
    use crate::farey::FareySlope;
    use crate::surface::{standard_triangulation, SurfaceSig};

    fn torus_pair() -> (IdealTriangulation, FillingPair) {
        let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        let a = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(0, 1).unwrap()).unwrap());
        let b = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(1, 0).unwrap()).unwrap());
        let fp = FillingPair::new(&tri, a, b).unwrap();
        (tri, fp)
    }

    #[test]
    fn length_formula() {
        let (tri, fp) = torus_pair();
        let c = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(1, 1).unwrap()).unwrap());
        // l(c) = q I(a,c) + p I(b,c) = 1*1 + 1*1.
        let wp = WeightedPair::new(fp.clone(), 1, 1);
        assert_eq!(length(&tri, &c, &wp).unwrap(), 2);
        // Scaling by (Nq, Np) multiplies by N.
        let wp3 = WeightedPair::new(fp.clone(), 3, 3);
        assert_eq!(length(&tri, &c, &wp3).unwrap(), 6);
        // A component of a has length p I(b, a).
        assert_eq!(length(&tri, &fp.a.clone(), &WeightedPair::new(fp, 1, 1)).unwrap(), 1);
    }

    #[test]
    fn modulus_lower_examples() {
        let (tri, fp) = torus_pair();
        let wp = WeightedPair::new(fp, 1, 1);
        let c = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(1, 1).unwrap()).unwrap());
        let candidates =
            alloc::vec![torus_curve(&tri, FareySlope::new(1, 1).unwrap()).unwrap()];
        // I(c,c) = 0.
        assert_eq!(modulus_lower(&tri, &c, &wp, &candidates).unwrap(), Ratio::ZERO);
        let candidates2 =
            alloc::vec![torus_curve(&tri, FareySlope::new(-1, 1).unwrap()).unwrap()];
        // I(c, -1/1) = 2, l(-1/1) = 2.
        assert_eq!(modulus_lower(&tri, &c, &wp, &candidates2).unwrap(), Ratio::new(1, 1));
    }

    #[test]
    fn side_of_center_examples() {
        let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        let x = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(0, 1).unwrap()).unwrap());
        let y = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(1, 0).unwrap()).unwrap());
        let z = MultiCurve::from_curve(torus_curve(&tri, FareySlope::new(1, 1).unwrap()).unwrap());
        assert_eq!(side_of_center(&tri, 1, 1, &x, &y, &z).unwrap(), Side::Balanced);
        assert_eq!(side_of_center(&tri, 2, 1, &x, &y, &z).unwrap(), Side::XSide);
        assert_eq!(side_of_center(&tri, 1, 3, &x, &y, &z).unwrap(), Side::YSide);
    }

    #[test]
    fn transfer_condition_symbolic() {
        for (iab, iac, ibc) in [(4u64, 3u64, 2u64), (5, 2, 2), (6, 1, 5), (3, 3, 3)] {
            for k in 0..=4 {
                assert!(transfer_condition_reduces(iab, iac, ibc, Ratio::new(k, 4)));
            }
        }
    }
}
