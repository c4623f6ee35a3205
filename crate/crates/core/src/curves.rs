//! Isotopy classes of essential simple closed curves in normal coordinates,
//! multicurves with formal multiplicities, geometric intersection numbers,
//! and Dehn-twist actions.
//!
//! Curve identity is equality of normal weight vectors on the fixed
//! triangulation. Degenerate vectors (all zero, puncture loops) are rejected
//! at construction, never silently accepted.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{
    count_crossings_fast, peripheral_vectors, reduce_word, trace_weights, word_is_valid,
    word_weights, Diagram, TracedCurve,
};
use crate::farey::FareySlope;
use crate::surface::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveError {
    /// Curve built on a different triangulation than the operation's.
    TriangulationMismatch,
    /// Weight vector fails the normal-coordinate matching conditions.
    BadWeights(String),
    /// Weights trace to several components.
    Disconnected(usize),
    /// The class is a puncture loop or empty.
    Inessential(String),
    /// Multicurve components intersect or repeat.
    NotAMulticurve(String),
    /// A mapping-class word is malformed.
    BadWord(String),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::TriangulationMismatch => write!(f, "triangulation mismatch"),
            CurveError::BadWeights(s) => write!(f, "bad weights: {s}"),
            CurveError::Disconnected(n) => write!(f, "weights trace to {n} components"),
            CurveError::Inessential(s) => write!(f, "inessential curve: {s}"),
            CurveError::NotAMulticurve(s) => write!(f, "not a multicurve: {s}"),
            CurveError::BadWord(s) => write!(f, "bad mapping-class word: {s}"),
        }
    }
}

/// Essential simple closed curve as normal edge weights.
#[derive(Clone, Debug)]
pub struct NormalCurve {
    fp: u64,
    weights: Vec<u32>,
    trace: TracedCurve,
}

impl PartialEq for NormalCurve {
    fn eq(&self, other: &Self) -> bool {
        self.fp == other.fp && self.weights == other.weights
    }
}
impl Eq for NormalCurve {}

impl PartialOrd for NormalCurve {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for NormalCurve {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.fp, &self.weights).cmp(&(other.fp, &other.weights))
    }
}

impl NormalCurve {
    /// Validates matching conditions, connectedness, and essentiality.
    pub fn from_weights(
        tri: &IdealTriangulation,
        weights: Vec<u32>,
    ) -> Result<NormalCurve, CurveError> {
        if weights.iter().all(|&w| w == 0) {
            return Err(CurveError::Inessential("zero weights".into()));
        }
        let mut comps = trace_weights(tri, &weights).map_err(CurveError::BadWeights)?;
        if comps.len() != 1 {
            return Err(CurveError::Disconnected(comps.len()));
        }
        if peripheral_vectors(tri).iter().any(|p| *p == weights) {
            return Err(CurveError::Inessential("puncture loop".into()));
        }
        Ok(NormalCurve { fp: tri.fingerprint(), weights, trace: comps.remove(0) })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn check_triangulation(&self, tri: &IdealTriangulation) -> Result<(), CurveError> {
        if self.fp == tri.fingerprint() {
            Ok(())
        } else {
            Err(CurveError::TriangulationMismatch)
        }
    }

    pub(crate) fn traced(&self) -> &TracedCurve {
        &self.trace
    }
}

/// Formal positive-integer-weighted multicurve: components pairwise disjoint
/// and pairwise non-isotopic, parallelism encoded in multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCurve {
    components: Vec<(NormalCurve, u32)>,
}

impl MultiCurve {
    pub fn new(
        tri: &IdealTriangulation,
        mut components: Vec<(NormalCurve, u32)>,
    ) -> Result<MultiCurve, CurveError> {
        if components.is_empty() {
            return Err(CurveError::NotAMulticurve("no components".into()));
        }
        for (c, m) in &components {
            c.check_triangulation(tri)?;
            if *m == 0 {
                return Err(CurveError::NotAMulticurve("zero multiplicity".into()));
            }
        }
        components.sort_by(|a, b| a.0.cmp(&b.0));
        for w in components.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CurveError::NotAMulticurve(
                    "repeated component; use multiplicity".into(),
                ));
            }
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if intersection_curves(tri, &components[i].0, &components[j].0) != 0 {
                    return Err(CurveError::NotAMulticurve(format!(
                        "components {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(MultiCurve { components })
    }

    pub fn from_curve(c: NormalCurve) -> MultiCurve {
        MultiCurve { components: alloc::vec![(c, 1)] }
    }

    /// Same support, all multiplicities scaled by `n`.
    pub fn scaled(&self, n: u32) -> MultiCurve {
        assert!(n >= 1);
        MultiCurve {
            components: self.components.iter().map(|(c, m)| (c.clone(), m * n)).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(mut components: Vec<(NormalCurve, u32)>) -> MultiCurve {
        components.sort_by(|a, b| a.0.cmp(&b.0));
        MultiCurve { components }
    }

    pub fn components(&self) -> &[(NormalCurve, u32)] {
        &self.components
    }

    pub fn check_triangulation(&self, tri: &IdealTriangulation) -> Result<(), CurveError> {
        for (c, _) in &self.components {
            c.check_triangulation(tri)?;
        }
        Ok(())
    }
}

/// Geometric intersection number of two single curves.
pub fn intersection_curves(tri: &IdealTriangulation, a: &NormalCurve, b: &NormalCurve) -> u64 {
    if a == b {
        return 0;
    }
    count_crossings_fast(tri, a.traced(), b.traced())
}

/// Intersection number through the positional diagram engine; same value as
/// [`intersection_curves`], kept as an independent route for cross-checks.
pub fn intersection_via_diagram(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> u64 {
    if a == b {
        return 0;
    }
    let d = Diagram::new(tri, alloc::vec![a.traced(), b.traced()]);
    d.count_between(0, 1)
}

/// Geometric intersection number, extended bilinearly over multiplicities.
pub fn intersection_number(
    tri: &IdealTriangulation,
    a: &MultiCurve,
    b: &MultiCurve,
) -> Result<u64, CurveError> {
    a.check_triangulation(tri)?;
    b.check_triangulation(tri)?;
    let mut total = 0u64;
    for (ca, ma) in a.components() {
        for (cb, mb) in b.components() {
            total += *ma as u64 * *mb as u64 * intersection_curves(tri, ca, cb);
        }
    }
    Ok(total)
}

/// Dehn twist of `target` about `twist`, `exp` full turns (sign = handedness).
pub fn twist_curve(
    tri: &IdealTriangulation,
    twist: &NormalCurve,
    exp: i64,
    target: &NormalCurve,
) -> Result<NormalCurve, CurveError> {
    twist.check_triangulation(tri)?;
    target.check_triangulation(tri)?;
    if exp == 0 || twist == target {
        return Ok(target.clone());
    }
    let t = twist.traced();
    let c = target.traced();
    let dia = Diagram::new(tri, alloc::vec![t, c]);
    let crossings = dia.crossings_along(1);
    if crossings.is_empty() {
        return Ok(target.clone());
    }
    let tn = t.len();
    let mut word: Vec<u32> = Vec::new();
    let mut by_step: alloc::collections::BTreeMap<u32, Vec<(u32, i8)>> =
        alloc::collections::BTreeMap::new();
    for (kc, _other, kt, sign) in crossings {
        by_step.entry(kc).or_default().push((kt, sign));
    }
    for (k, &h) in c.steps.iter().enumerate() {
        word.push(h);
        if let Some(list) = by_step.get(&(k as u32)) {
            for &(kt, sign) in list {
                let forward = (sign < 0) == (exp > 0);
                for _ in 0..exp.unsigned_abs() {
                    if forward {
                        for j in 1..=tn {
                            word.push(t.steps[(kt as usize + j) % tn]);
                        }
                    } else {
                        for j in 0..tn {
                            word.push(tri.partner(t.steps[(kt as usize + tn - j) % tn]));
                        }
                    }
                }
            }
        }
    }
    debug_assert!(word_is_valid(tri, &word));
    let reduced = reduce_word(tri, word);
    if reduced.is_empty() {
        return Err(CurveError::Inessential("twist image reduced to nothing".into()));
    }
    NormalCurve::from_weights(tri, word_weights(tri, &reduced))
}

/// Word in Dehn twists; entries act left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClassWord {
    pub twists: Vec<(NormalCurve, i64)>,
}

impl MappingClassWord {
    pub fn new(
        tri: &IdealTriangulation,
        twists: Vec<(NormalCurve, i64)>,
    ) -> Result<MappingClassWord, CurveError> {
        for (c, n) in &twists {
            c.check_triangulation(tri)?;
            if *n == 0 {
                return Err(CurveError::BadWord("zero exponent".into()));
            }
        }
        Ok(MappingClassWord { twists })
    }

    pub fn identity() -> MappingClassWord {
        MappingClassWord { twists: Vec::new() }
    }

    pub fn inverse(&self) -> MappingClassWord {
        MappingClassWord {
            twists: self.twists.iter().rev().map(|(c, n)| (c.clone(), -n)).collect(),
        }
    }

    pub fn compose(&self, then: &MappingClassWord) -> MappingClassWord {
        let mut twists = self.twists.clone();
        twists.extend(then.twists.iter().cloned());
        MappingClassWord { twists }
    }
}

/// Image of a multicurve under a twist word; a group action preserving
/// intersection numbers.
pub fn apply_twist(
    tri: &IdealTriangulation,
    word: &MappingClassWord,
    c: &MultiCurve,
) -> Result<MultiCurve, CurveError> {
    c.check_triangulation(tri)?;
    let mut parts: Vec<(NormalCurve, u32)> = c.components().to_vec();
    for (t, n) in &word.twists {
        parts = parts
            .into_iter()
            .map(|(comp, m)| twist_curve(tri, t, *n, &comp).map(|c2| (c2, m)))
            .collect::<Result<Vec<_>, _>>()?;
    }
    Ok(MultiCurve::from_parts_unchecked(parts))
}

/// Apply a twist word to a single curve.
pub fn apply_twist_curve(
    tri: &IdealTriangulation,
    word: &MappingClassWord,
    c: &NormalCurve,
) -> Result<NormalCurve, CurveError> {
    let mut cur = c.clone();
    for (t, n) in &word.twists {
        cur = twist_curve(tri, t, *n, &cur)?;
    }
    Ok(cur)
}

/// All essential connected normal curves with every edge weight at most
/// `weight_cap`, in lexicographic weight order.
pub fn enumerate_curves(tri: &IdealTriangulation, weight_cap: u32) -> Vec<NormalCurve> {
    assert!(weight_cap >= 1);
    let ne = tri.num_edges();
    let tris: Vec<[usize; 3]> = (0..tri.num_triangles())
        .map(|t| {
            [
                tri.edge_of(3 * t as u32) as usize,
                tri.edge_of(3 * t as u32 + 1) as usize,
                tri.edge_of(3 * t as u32 + 2) as usize,
            ]
        })
        .collect();
    let peripherals = peripheral_vectors(tri);
    let mut out = Vec::new();
    let mut weights = alloc::vec![0u32; ne];
    enumerate_rec(tri, &tris, &peripherals, weight_cap, 0, &mut weights, &mut out);
    out
}

fn enumerate_rec(
    tri: &IdealTriangulation,
    tris: &[[usize; 3]],
    peripherals: &[Vec<u32>],
    cap: u32,
    e: usize,
    weights: &mut Vec<u32>,
    out: &mut Vec<NormalCurve>,
) {
    let ne = weights.len();
    if e == ne {
        if weights.iter().all(|&w| w == 0) {
            return;
        }
        if peripherals.iter().any(|p| p == weights) {
            return;
        }
        if let Ok(comps) = trace_weights(tri, weights) {
            if comps.len() == 1 {
                out.push(NormalCurve {
                    fp: tri.fingerprint(),
                    weights: weights.clone(),
                    trace: comps.into_iter().next().unwrap(),
                });
            }
        }
        return;
    }
    'next: for w in 0..=cap {
        weights[e] = w;
        for t in tris {
            let assigned = t.iter().filter(|&&x| x <= e).count();
            if assigned == 3 {
                let (x, y, z) = (weights[t[0]], weights[t[1]], weights[t[2]]);
                if (x + y + z) % 2 != 0 || x > y + z || y > z + x || z > x + y {
                    continue 'next;
                }
            } else if assigned == 2 {
                let vals: Vec<u32> = t.iter().filter(|&&x| x <= e).map(|&x| weights[x]).collect();
                let (y, z) = (vals[0], vals[1]);
                let lo = y.abs_diff(z);
                let hi = (y + z).min(cap);
                if lo > hi {
                    continue 'next;
                }
                if lo == hi && (lo + y + z) % 2 != 0 {
                    continue 'next;
                }
            }
        }
        enumerate_rec(tri, tris, peripherals, cap, e + 1, weights, out);
    }
    weights[e] = 0;
}

/// True iff every complementary region of `a` and `b` together is a disk
/// with at most one puncture, by an Euler census of the complement in
/// minimal position. Multiplicities are irrelevant and ignored.
pub fn is_filling(
    tri: &IdealTriangulation,
    a: &MultiCurve,
    b: &MultiCurve,
) -> Result<bool, CurveError> {
    a.check_triangulation(tri)?;
    b.check_triangulation(tri)?;
    let dia = union_diagram(tri, a, b);
    Ok(crate::regions::analyze_regions(&dia).all_disks_with_at_most_one_puncture())
}

/// Joint minimal-position diagram of the distinct components of two
/// multicurves, cross-checked pairwise against the ray-counting route.
pub(crate) fn union_diagram<'a>(
    tri: &'a IdealTriangulation,
    a: &'a MultiCurve,
    b: &'a MultiCurve,
) -> Diagram<'a> {
    let mut comps: Vec<&'a NormalCurve> = Vec::new();
    for (c, _) in a.components().iter().chain(b.components().iter()) {
        if !comps.iter().any(|d| *d == c) {
            comps.push(c);
        }
    }
    let dia = Diagram::new(tri, comps.iter().map(|c| c.traced()).collect());
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let want = intersection_curves(tri, comps[i], comps[j]);
            let got = dia.count_between(i as u32, j as u32);
            assert_eq!(
                got, want,
                "union diagram not minimal between components {i} and {j}"
            );
        }
    }
    dia
}

/// Essential boundary components of a regular neighborhood of the union of
/// two curves, as normal curves (deduplicated, sorted).
pub(crate) fn neighborhood_boundary(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> Vec<NormalCurve> {
    let dia = Diagram::new(tri, alloc::vec![a.traced(), b.traced()]);
    let report = crate::regions::analyze_regions(&dia);
    let mut out: Vec<NormalCurve> = Vec::new();
    for circuits in &report.circuits {
        for word in circuits {
            let reduced = reduce_word(tri, word.clone());
            if reduced.is_empty() {
                continue;
            }
            if let Ok(c) = NormalCurve::from_weights(tri, word_weights(tri, &reduced)) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Once-punctured torus slope coordinates
// ---------------------------------------------------------------------------

/// Normal weights of the slope `p/q` curve on the standard once-punctured
/// torus triangulation: `(|p|, |q|, |p-q|)`.
pub fn torus_curve(tri: &IdealTriangulation, slope: FareySlope) -> Result<NormalCurve, CurveError> {
    if tri.num_edges() != 3 {
        return Err(CurveError::BadWeights("not the once-punctured torus".into()));
    }
    let (p, q) = (slope.p, slope.q);
    let w = alloc::vec![
        p.unsigned_abs() as u32,
        q.unsigned_abs() as u32,
        (p - q).unsigned_abs() as u32,
    ];
    NormalCurve::from_weights(tri, w)
}

/// Slope of a curve on the standard once-punctured torus triangulation.
pub fn torus_slope(tri: &IdealTriangulation, c: &NormalCurve) -> Result<FareySlope, CurveError> {
    if tri.num_edges() != 3 {
        return Err(CurveError::BadWeights("not the once-punctured torus".into()));
    }
    c.check_triangulation(tri)?;
    let w = c.weights();
    let (a, b, d) = (w[0] as i64, w[1] as i64, w[2] as i64);
    let slope = if d == (a - b).abs() {
        FareySlope::new(a, b)
    } else if d == a + b {
        FareySlope::new(-a, b)
    } else {
        return Err(CurveError::BadWeights(format!("not a slope vector: {w:?}")));
    };
    slope.map_err(|e| CurveError::BadWeights(format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{standard_triangulation, SurfaceSig};

    fn torus() -> IdealTriangulation {
        standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap()
    }

    fn slope(tri: &IdealTriangulation, p: i64, q: i64) -> NormalCurve {
        torus_curve(tri, FareySlope::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn validation_rejects_degenerates() {
        let tri = torus();
        assert!(matches!(
            NormalCurve::from_weights(&tri, alloc::vec![0, 0, 0]),
            Err(CurveError::Inessential(_))
        ));
        // Puncture loop.
        assert!(matches!(
            NormalCurve::from_weights(&tri, alloc::vec![2, 2, 2]),
            Err(CurveError::Inessential(_))
        ));
        // Disconnected (two parallel copies).
        assert!(matches!(
            NormalCurve::from_weights(&tri, alloc::vec![0, 2, 2]),
            Err(CurveError::Disconnected(2))
        ));
        // Parity failure.
        assert!(matches!(
            NormalCurve::from_weights(&tri, alloc::vec![1, 1, 1]),
            Err(CurveError::BadWeights(_))
        ));
    }

    #[test]
    fn torus_slope_roundtrip() {
        let tri = torus();
        for (p, q) in [(0, 1), (1, 0), (1, 1), (-1, 1), (1, 2), (-2, 3), (5, 3), (-5, 8)] {
            let c = slope(&tri, p, q);
            let s = torus_slope(&tri, &c).unwrap();
            assert_eq!(s, FareySlope::new(p, q).unwrap(), "slope {p}/{q}");
        }
    }

    #[test]
    fn torus_intersection_matches_determinant() {
        let tri = torus();
        let slopes = [(0i64, 1i64), (1, 0), (1, 1), (-1, 1), (1, 2), (2, 1), (-1, 2), (3, 2),
            (-2, 3), (5, 2), (4, 7), (-5, 3)];
        for &(p, q) in &slopes {
            for &(r, s) in &slopes {
                let a = slope(&tri, p, q);
                let b = slope(&tri, r, s);
                let want = (p * s - q * r).unsigned_abs();
                let got = intersection_curves(&tri, &a, &b);
                assert_eq!(got, want, "I({p}/{q}, {r}/{s})");
            }
        }
    }

    #[test]
    fn intersection_bilinear() {
        let tri = torus();
        let a = MultiCurve::from_curve(slope(&tri, 0, 1)).scaled(3);
        let b = MultiCurve::from_curve(slope(&tri, 1, 0)).scaled(5);
        assert_eq!(intersection_number(&tri, &a, &b).unwrap(), 15);
    }

    #[test]
    fn twist_action_on_torus() {
        let tri = torus();
        let m = slope(&tri, 0, 1);
        let l = slope(&tri, 1, 0);
        let image = twist_curve(&tri, &m, 1, &l).unwrap();
        // One twist about the meridian sends the longitude to a slope meeting
        // both basis curves once.
        assert_eq!(intersection_curves(&tri, &image, &l), 1);
        assert_eq!(intersection_curves(&tri, &image, &m), 1);
        // Twist acts trivially on its own curve.
        assert_eq!(twist_curve(&tri, &m, 3, &m).unwrap(), m);
        // Group law: T then T^{-1} is the identity.
        let back = twist_curve(&tri, &m, -1, &image).unwrap();
        assert_eq!(back, l);
        // Higher powers: I(T^n_m(l), l) = n * I(m,l)^2.
        for n in 1..=4i64 {
            let im = twist_curve(&tri, &m, n, &l).unwrap();
            assert_eq!(intersection_curves(&tri, &im, &l), n as u64);
            assert_eq!(intersection_curves(&tri, &im, &m), 1);
        }
    }

    #[test]
    fn filling_examples() {
        let tri = torus();
        let m = MultiCurve::from_curve(slope(&tri, 0, 1));
        let l = MultiCurve::from_curve(slope(&tri, 1, 0));
        assert!(is_filling(&tri, &m, &l).unwrap());
        // Parallel curves never fill.
        assert!(!is_filling(&tri, &m, &m).unwrap());
        // Multiplicities are irrelevant.
        assert!(is_filling(&tri, &m.scaled(3), &l.scaled(2)).unwrap());
    }

    #[test]
    fn neighborhood_boundary_of_filling_pair() {
        let tri = torus();
        let m = slope(&tri, 0, 1);
        let l = slope(&tri, 1, 0);
        // On the once-punctured torus the neighborhood boundary of a filling
        // pair with one crossing is the puncture loop: nothing essential.
        assert!(neighborhood_boundary(&tri, &m, &l).is_empty());
    }

    #[test]
    fn enumerate_small_torus() {
        let tri = torus();
        let cap1 = enumerate_curves(&tri, 1);
        assert_eq!(cap1.len(), 3);
        let cap2 = enumerate_curves(&tri, 2);
        for c in &cap1 {
            assert!(cap2.contains(c));
        }
        // All slopes with |p|+|q| <= 3 appear at cap 3.
        let cap3 = enumerate_curves(&tri, 3);
        let mut found = 0;
        for c in &cap3 {
            let s = torus_slope(&tri, c).unwrap();
            if s.p.abs() + s.q <= 3 {
                found += 1;
            }
        }
        assert_eq!(found, 8);
    }
}
