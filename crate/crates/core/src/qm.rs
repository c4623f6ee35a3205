//! Counting quasimorphisms: maximal non-overlapping copy counts, the
//! discounted distance `c_{w,W}`, the difference quasimorphism `h_w`,
//! defect scans, and stabilizer boundedness probes.
//!
//! Any minimizer of `|alpha| - W |alpha|_w` can be normalized to alternate
//! geodesic segments with whole copies of `w`, so the infimum is searched
//! over chains of enumerated translates joined by geodesics, with the
//! pruning bound `|alpha| <= d(x,y) |w| / (|w| - W)` recorded per call. On
//! the Farey engine the translate oracle is exact; on capped curve-complex
//! universes it checks bounded twist words only and results are flagged.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::ComplexUniverse;
use crate::curves::{apply_twist_curve, MappingClassWord, NormalCurve};
use crate::farey::{
    adjacent, farey_distance, farey_geodesic, is_edge_path, neighbor_fan, translate_match,
    FareySlope, IntMatrix,
};
use crate::sampling::SeededRng;
use crate::surface::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QmError {
    BadSpec(String),
    Unreachable,
    /// An element claimed to stabilize a vertex does not fix it.
    DoesNotFix(String),
}

impl fmt::Display for QmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QmError::BadSpec(s) => write!(f, "bad quasimorphism spec: {s}"),
            QmError::Unreachable => write!(f, "vertices not connected in the search graph"),
            QmError::DoesNotFix(s) => write!(f, "element does not fix the vertex: {s}"),
        }
    }
}

/// A path `w`, the penalty weight `0 < W < |w|`, and the base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmSpec<V> {
    pub w: Vec<V>,
    pub weight: u64,
    pub x0: V,
}

impl<V: Clone> QmSpec<V> {
    pub fn new(w: Vec<V>, weight: u64, x0: V) -> Result<QmSpec<V>, QmError> {
        let len = w.len().saturating_sub(1) as u64;
        if len < 2 {
            return Err(QmError::BadSpec("path must have length at least 2".into()));
        }
        if weight == 0 || weight >= len {
            return Err(QmError::BadSpec("need 0 < W < |w|".into()));
        }
        Ok(QmSpec { w, weight, x0 })
    }

    /// `|w|`, the edge length of the path.
    pub fn len(&self) -> u64 {
        self.w.len() as u64 - 1
    }

    /// The reversed path with the same weight and base vertex.
    pub fn reversed(&self) -> QmSpec<V> {
        let mut w = self.w.clone();
        w.reverse();
        QmSpec { w, weight: self.weight, x0: self.x0.clone() }
    }

    /// Default penalty: half the path length, rounded up.
    pub fn default_weight(len: u64) -> u64 {
        len.div_ceil(2).clamp(1, len - 1)
    }
}

/// Search graph interface shared by the Farey engine and capped universes.
pub trait QmGraph {
    type V: Clone + Ord + core::fmt::Debug;

    fn dist(&self, x: &Self::V, y: &Self::V) -> Option<u64>;
    fn geodesic(&self, x: &Self::V, y: &Self::V) -> Option<Vec<Self::V>>;
    /// Is `sigma` a group translate of `w`?
    fn is_translate(&self, w: &[Self::V], sigma: &[Self::V]) -> bool;
    /// Candidate copies of `w` for the infimum search, enumerated near the
    /// anchors. Under-enumeration only weakens the reported value, never
    /// breaks its bounds.
    fn translates(&self, w: &[Self::V], anchors: &[Self::V]) -> Vec<Vec<Self::V>>;
    /// True when the translate decision is exact for this engine.
    fn exact_oracle(&self) -> bool;
}

/// Maximal non-overlapping copies with verified witness intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCount {
    pub count: u64,
    /// Disjoint `[start, end]` vertex index intervals, each a translate.
    pub witnesses: Vec<(usize, usize)>,
    pub exact: bool,
}

/// Count the maximal number of non-overlapping translates of `w` in `alpha`.
/// Matches have equal length, so taking them greedily from the left is
/// optimal interval scheduling.
pub fn count_copies<G: QmGraph>(g: &G, alpha: &[G::V], spec: &QmSpec<G::V>) -> CopyCount {
    let n = spec.w.len();
    let mut witnesses = Vec::new();
    if alpha.len() >= n {
        let mut i = 0usize;
        while i + n <= alpha.len() {
            if g.is_translate(&spec.w, &alpha[i..i + n]) {
                witnesses.push((i, i + n - 1));
                i += n - 1;
            } else {
                i += 1;
            }
        }
    }
    CopyCount { count: witnesses.len() as u64, witnesses, exact: g.exact_oracle() }
}

/// Exhaustive-placement reference for the copy count, for cross-checks.
pub fn count_copies_exhaustive<G: QmGraph>(
    g: &G,
    alpha: &[G::V],
    spec: &QmSpec<G::V>,
) -> u64 {
    let n = spec.w.len();
    if alpha.len() < n {
        return 0;
    }
    let matches: Vec<usize> = (0..=alpha.len() - n)
        .filter(|&i| g.is_translate(&spec.w, &alpha[i..i + n]))
        .collect();
    // Depth-first over all non-overlapping subsets.
    fn best(matches: &[usize], from: usize, min_start: usize, span: usize) -> u64 {
        let mut top = 0;
        for (k, &m) in matches.iter().enumerate().skip(from) {
            if m < min_start {
                continue;
            }
            top = top.max(1 + best(matches, k + 1, m + span, span));
        }
        top
    }
    best(&matches, 0, 0, n - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discounted {
    pub c: u64,
    pub distance: u64,
    /// Copies used by the best chain found.
    pub copies: u64,
    /// The pruning bound `d |w| / (|w| - W)` exceeded the search cap; the
    /// value is then a lower bound for the true discounted distance.
    pub capped: bool,
    pub exact_oracle: bool,
}

/// `c_{w,W}(x,y) = d(x,y) - inf(|alpha| - W |alpha|_w)`, searched over chains
/// of translate copies joined by geodesic segments.
pub fn discounted_distance<G: QmGraph>(
    g: &G,
    x: &G::V,
    y: &G::V,
    spec: &QmSpec<G::V>,
    search_cap: u64,
) -> Result<Discounted, QmError> {
    let d = g.dist(x, y).ok_or(QmError::Unreachable)?;
    let len = spec.len();
    let bonus = len - spec.weight;
    // Any path with |alpha| - W |alpha|_w < d satisfies
    // |alpha| (1 - W/|w|) <= d, so minimizers are bounded.
    let prune = d * len / bonus.max(1) + len;
    let capped = prune > search_cap;
    let mut anchors: Vec<G::V> = vec![x.clone(), y.clone()];
    if let Some(geo) = g.geodesic(x, y) {
        anchors.extend(geo);
    }
    let all_copies = g.translates(&spec.w, &anchors);
    // A copy on a useful chain satisfies
    // d(x, start) + (|w| - W) + d(end, y) <= d; drop the rest.
    let copies: Vec<Vec<G::V>> = all_copies
        .into_iter()
        .filter(|c| {
            let s = g.dist(x, &c[0]);
            let e = g.dist(c.last().unwrap(), y);
            match (s, e) {
                (Some(s), Some(e)) => s + (len - spec.weight) + e <= d,
                _ => false,
            }
        })
        .collect();
    // Chain search: Dijkstra over (start, copies, end).
    let n = copies.len();
    let starts: Vec<&G::V> = copies.iter().map(|c| &c[0]).collect();
    let ends: Vec<&G::V> = copies.iter().map(|c| c.last().unwrap()).collect();
    let copy_cost = len - spec.weight;
    // best[i] = minimal f-value of a chain from x through copy i inclusive.
    let mut best: Vec<u64> = Vec::with_capacity(n);
    for i in 0..n {
        let direct = g.dist(x, starts[i]).map(|d0| d0 + copy_cost);
        best.push(direct.unwrap_or(u64::MAX));
    }
    // Relax chains in best-first order.
    let mut settled = vec![false; n];
    for _ in 0..n {
        let Some(i) = (0..n)
            .filter(|&i| !settled[i] && best[i] != u64::MAX)
            .min_by_key(|&i| best[i])
        else {
            break;
        };
        settled[i] = true;
        if best[i] >= d {
            break;
        }
        for j in 0..n {
            if settled[j] {
                continue;
            }
            if let Some(gap) = g.dist(ends[i], starts[j]) {
                let cand = best[i] + gap + copy_cost;
                if cand < best[j] {
                    best[j] = cand;
                }
            }
        }
    }
    let mut min_f = d;
    let mut copies_used = 0u64;
    for i in 0..n {
        if best[i] == u64::MAX {
            continue;
        }
        if let Some(tail) = g.dist(ends[i], y) {
            let f = best[i] + tail;
            if f < min_f {
                min_f = f;
                copies_used += 1;
            }
        }
    }
    let c = d - min_f;
    Ok(Discounted { c, distance: d, copies: copies_used, capped, exact_oracle: g.exact_oracle() })
}

/// `h_w(g) = c_{w,W}(x0, g x0) - c_{w^{-1},W}(x0, g x0)`, taking the image
/// of the base vertex directly.
pub fn h_w<G: QmGraph>(
    g: &G,
    spec: &QmSpec<G::V>,
    image_of_base: &G::V,
    search_cap: u64,
) -> Result<(i64, bool), QmError> {
    let fwd = discounted_distance(g, &spec.x0, image_of_base, spec, search_cap)?;
    let rev = discounted_distance(g, &spec.x0, image_of_base, &spec.reversed(), search_cap)?;
    Ok((fwd.c as i64 - rev.c as i64, fwd.capped || rev.capped))
}

// ---------------------------------------------------------------------------
// Farey engine
// ---------------------------------------------------------------------------

/// Exact engine on the Farey graph. Translate enumeration is bounded by a
/// fan cap and expansion hops around the anchors plus configured landmarks;
/// the oracle deciding whether a given path is a translate is exact.
pub struct FareyQm {
    pub fan: i64,
    pub hops: u32,
    pub landmarks: Vec<FareySlope>,
    pub allow_reflection: bool,
    landmark_cache: core::cell::RefCell<BTreeMap<Vec<FareySlope>, Vec<Vec<FareySlope>>>>,
}

impl Default for FareyQm {
    fn default() -> FareyQm {
        FareyQm::new(3, 1, Vec::new(), false)
    }
}

impl FareyQm {
    pub fn new(
        fan: i64,
        hops: u32,
        landmarks: Vec<FareySlope>,
        allow_reflection: bool,
    ) -> FareyQm {
        FareyQm {
            fan,
            hops,
            landmarks,
            allow_reflection,
            landmark_cache: core::cell::RefCell::new(BTreeMap::new()),
        }
    }

    fn expand_region(&self, seeds: &[FareySlope]) -> Vec<FareySlope> {
        let mut region: BTreeSet<FareySlope> = seeds.iter().copied().collect();
        for _ in 0..self.hops {
            let snapshot: Vec<FareySlope> = region.iter().copied().collect();
            for v in snapshot {
                for n in neighbor_fan(v, -self.fan, self.fan) {
                    region.insert(n);
                }
            }
        }
        region.into_iter().collect()
    }

    fn translates_in(&self, w: &[FareySlope], verts: &[FareySlope]) -> Vec<Vec<FareySlope>> {
        let mut out: Vec<Vec<FareySlope>> = Vec::new();
        let mut seen: BTreeSet<Vec<FareySlope>> = BTreeSet::new();
        for &u in verts {
            for &v in verts {
                if u == v || !adjacent(u, v) {
                    continue;
                }
                if let Some(m) = translate_match(&w[0..2], &[u, v], self.allow_reflection) {
                    let img: Option<Vec<FareySlope>> =
                        w.iter().map(|&x| m.act_checked(x)).collect();
                    let Some(img) = img else { continue };
                    if is_edge_path(&img) && seen.insert(img.clone()) {
                        out.push(img);
                    }
                }
            }
        }
        out
    }
}

impl QmGraph for FareyQm {
    type V = FareySlope;

    fn dist(&self, x: &FareySlope, y: &FareySlope) -> Option<u64> {
        Some(farey_distance(*x, *y))
    }

    fn geodesic(&self, x: &FareySlope, y: &FareySlope) -> Option<Vec<FareySlope>> {
        Some(farey_geodesic(*x, *y))
    }

    fn is_translate(&self, w: &[FareySlope], sigma: &[FareySlope]) -> bool {
        translate_match(w, sigma, self.allow_reflection).is_some()
    }

    fn translates(&self, w: &[FareySlope], anchors: &[FareySlope]) -> Vec<Vec<FareySlope>> {
        // Landmark-region copies are cached per path; anchor-region copies
        // are cheap and recomputed per query.
        let mut out = {
            let mut cache = self.landmark_cache.borrow_mut();
            cache
                .entry(w.to_vec())
                .or_insert_with(|| {
                    if self.landmarks.is_empty() {
                        Vec::new()
                    } else {
                        let region = self.expand_region(&self.landmarks);
                        self.translates_in(w, &region)
                    }
                })
                .clone()
        };
        let region = self.expand_region(anchors);
        let mut seen: BTreeSet<Vec<FareySlope>> = out.iter().cloned().collect();
        for img in self.translates_in(w, &region) {
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    }

    fn exact_oracle(&self) -> bool {
        true
    }
}

/// Axis segment of a hyperbolic matrix through a base vertex: geodesics
/// joining consecutive orbit points `m^j(base)` for `j = 0..=steps`.
pub fn axis_segment(m: IntMatrix, base: FareySlope, steps: u32) -> Vec<FareySlope> {
    let mut path = vec![base];
    let mut cur = base;
    for _ in 0..steps {
        let next = m.act(cur);
        let geo = farey_geodesic(cur, next);
        path.extend(geo.into_iter().skip(1));
        cur = next;
    }
    path
}

/// Landmarks covering the `m`-orbit of the segment `w`, for evaluating the
/// quasimorphism along powers of `m`.
pub fn orbit_landmarks(m: IntMatrix, w: &[FareySlope], powers: u32) -> Vec<FareySlope> {
    let mut out: BTreeSet<FareySlope> = w.iter().copied().collect();
    let mut fwd = IntMatrix::IDENTITY;
    let inv = m.inverse();
    let mut bwd = IntMatrix::IDENTITY;
    for _ in 0..=powers {
        fwd = fwd.mul(m);
        bwd = bwd.mul(inv);
        for &v in w {
            out.insert(fwd.act(v));
            out.insert(bwd.act(v));
        }
    }
    out.into_iter().collect()
}

/// Defect statistics of `h_w` over sampled pairs of group elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefectReport {
    pub pairs_requested: u64,
    pub pairs: u64,
    pub max_defect: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub any_capped: bool,
    pub exact_oracle: bool,
    pub seed: u64,
    pub max_word_len: u32,
}

/// Sample pairs of positive words in the given matrices and scan the
/// quasimorphism defect `|h(g1 g2) - h(g1) - h(g2)|`.
pub fn defect_scan_farey(
    engine: &FareyQm,
    spec: &QmSpec<FareySlope>,
    generators: &[IntMatrix],
    max_word_len: u32,
    pairs: u64,
    search_cap: u64,
    seed: u64,
) -> Result<DefectReport, QmError> {
    let mut rng = SeededRng::new(seed);
    let mut report = DefectReport {
        pairs_requested: pairs,
        pairs: 0,
        max_defect: 0,
        histogram: BTreeMap::new(),
        any_capped: false,
        exact_oracle: engine.exact_oracle(),
        seed,
        max_word_len,
    };
    let mut memo: BTreeMap<IntMatrix, (i64, bool)> = BTreeMap::new();
    let mut sample_word = |rng: &mut SeededRng| -> IntMatrix {
        let len = 1 + rng.index(max_word_len as usize);
        let mut m = IntMatrix::IDENTITY;
        for _ in 0..len {
            m = m.mul(*rng.choose(generators));
        }
        m
    };
    for _ in 0..pairs {
        let g1 = sample_word(&mut rng);
        let g2 = sample_word(&mut rng);
        let g12 = g1.mul(g2);
        let mut h_of = |m: IntMatrix,
                        memo: &mut BTreeMap<IntMatrix, (i64, bool)>|
         -> Result<(i64, bool), QmError> {
            if let Some(&v) = memo.get(&m) {
                return Ok(v);
            }
            let v = h_w(engine, spec, &m.act(spec.x0), search_cap)?;
            memo.insert(m, v);
            Ok(v)
        };
        let (h1, c1) = h_of(g1, &mut memo)?;
        let (h2, c2) = h_of(g2, &mut memo)?;
        let (h12, c12) = h_of(g12, &mut memo)?;
        let defect = (h12 - h1 - h2).unsigned_abs();
        report.pairs += 1;
        report.any_capped |= c1 || c2 || c12;
        report.max_defect = report.max_defect.max(defect);
        *report.histogram.entry(defect).or_insert(0) += 1;
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub samples: u64,
    pub bound: u64,
    pub max_abs_h: u64,
    pub all_within_bound: bool,
    pub any_capped: bool,
}

/// Check `|h_w(g)| <= 2 d(x0, x)` for sampled elements fixing `x`.
pub fn stabilizer_probe_farey(
    engine: &FareyQm,
    spec: &QmSpec<FareySlope>,
    x: FareySlope,
    elements: &[IntMatrix],
    search_cap: u64,
) -> Result<StabilizerReport, QmError> {
    let bound = 2 * farey_distance(spec.x0, x);
    let mut report = StabilizerReport {
        samples: 0,
        bound,
        max_abs_h: 0,
        all_within_bound: true,
        any_capped: false,
    };
    for m in elements {
        if m.act(x) != x {
            return Err(QmError::DoesNotFix(alloc::format!("{m:?} moves {x}")));
        }
        let (h, capped) = h_w(engine, spec, &m.act(spec.x0), search_cap)?;
        report.samples += 1;
        report.any_capped |= capped;
        report.max_abs_h = report.max_abs_h.max(h.unsigned_abs());
        if h.unsigned_abs() > bound {
            report.all_within_bound = false;
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Capped curve-complex engine
// ---------------------------------------------------------------------------

/// Approximate engine over an enumerated curve-complex universe: the
/// translate oracle checks images under twist words of bounded length in the
/// declared generators only, and every output is flagged approximate.
pub struct UniverseQm<'a> {
    pub tri: &'a IdealTriangulation,
    pub universe: &'a ComplexUniverse,
    translate_images: Vec<MappingClassWord>,
}

impl<'a> UniverseQm<'a> {
    pub fn new(
        tri: &'a IdealTriangulation,
        universe: &'a ComplexUniverse,
        generators: &[NormalCurve],
        max_word_len: u32,
    ) -> UniverseQm<'a> {
        // All twist words up to the length cap with exponents in {-1, 1}.
        let mut words: Vec<MappingClassWord> = vec![MappingClassWord::identity()];
        let mut frontier = vec![MappingClassWord::identity()];
        for _ in 0..max_word_len {
            let mut next = Vec::new();
            for wword in &frontier {
                for t in generators {
                    for e in [1i64, -1] {
                        let mut tw = wword.twists.clone();
                        tw.push((t.clone(), e));
                        next.push(MappingClassWord { twists: tw });
                    }
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        UniverseQm { tri, universe, translate_images: words }
    }
}

impl<'a> QmGraph for UniverseQm<'a> {
    type V = NormalCurve;

    fn dist(&self, x: &NormalCurve, y: &NormalCurve) -> Option<u64> {
        self.universe.bfs_distance(x, y).ok()
    }

    fn geodesic(&self, x: &NormalCurve, y: &NormalCurve) -> Option<Vec<NormalCurve>> {
        let (ix, iy) = (self.universe.index_of(x)?, self.universe.index_of(y)?);
        let idx = self.universe.lex_geodesic(ix, iy)?;
        Some(idx.into_iter().map(|i| self.universe.curves()[i as usize].clone()).collect())
    }

    fn is_translate(&self, w: &[NormalCurve], sigma: &[NormalCurve]) -> bool {
        if w.len() != sigma.len() {
            return false;
        }
        'words: for word in &self.translate_images {
            for (a, b) in w.iter().zip(sigma.iter()) {
                match apply_twist_curve(self.tri, word, a) {
                    Ok(img) if img == *b => {}
                    _ => continue 'words,
                }
            }
            return true;
        }
        false
    }

    fn translates(&self, w: &[NormalCurve], _anchors: &[NormalCurve]) -> Vec<Vec<NormalCurve>> {
        let mut out = Vec::new();
        let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
        'words: for word in &self.translate_images {
            let mut img = Vec::with_capacity(w.len());
            for a in w {
                match apply_twist_curve(self.tri, word, a) {
                    Ok(b) => img.push(b),
                    Err(_) => continue 'words,
                }
            }
            // Keep only copies living inside the universe.
            if !img.iter().all(|c| self.universe.index_of(c).is_some()) {
                continue;
            }
            let key: Vec<Vec<u32>> = img.iter().map(|c| c.weights().to_vec()).collect();
            if seen.insert(key) {
                out.push(img);
            }
        }
        out
    }

    fn exact_oracle(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> FareySlope {
        FareySlope::new(p, q).unwrap()
    }

    fn base_spec() -> QmSpec<FareySlope> {
        // A length-3 path in the Farey graph.
        let w = vec![s(0, 1), s(1, 1), s(1, 2), s(2, 5)];
        assert!(is_edge_path(&w));
        QmSpec::new(w, 2, s(0, 1)).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(QmSpec::new(vec![s(0, 1), s(1, 1)], 1, s(0, 1)).is_err());
        assert!(QmSpec::new(vec![s(0, 1), s(1, 1), s(1, 2)], 2, s(0, 1)).is_err());
        assert!(QmSpec::new(vec![s(0, 1), s(1, 1), s(1, 2)], 1, s(0, 1)).is_ok());
    }

    #[test]
    fn copies_identity_and_shift() {
        let engine = FareyQm::default();
        let spec = base_spec();
        // alpha = w: exactly one copy.
        let cc = count_copies(&engine, &spec.w, &spec);
        assert_eq!(cc.count, 1);
        // Shorter path: none.
        let cc2 = count_copies(&engine, &spec.w[0..2], &spec);
        assert_eq!(cc2.count, 0);
        // A translated copy appended after a gap edge.
        let m = IntMatrix::new(1, 3, 0, 1).unwrap();
        let img = m.act_path(&spec.w);
        let mut alpha = spec.w.clone();
        // Join end to image start by a geodesic.
        let geo = farey_geodesic(*alpha.last().unwrap(), img[0]);
        alpha.extend(geo.into_iter().skip(1));
        alpha.extend(img.iter().skip(0).cloned());
        // The concatenation may not be a strict edge path at the seam; only
        // count when it is.
        if is_edge_path(&alpha) {
            let cc3 = count_copies(&engine, &alpha, &spec);
            assert!(cc3.count >= 2, "got {}", cc3.count);
            assert_eq!(cc3.count, count_copies_exhaustive(&engine, &alpha, &spec));
        }
    }

    #[test]
    fn discounted_distance_bounds() {
        let engine = FareyQm::default();
        let spec = base_spec();
        for target in [s(1, 1), s(5, 13), s(7, 3), s(2, 5)] {
            let r = discounted_distance(&engine, &spec.x0, &target, &spec, 10_000).unwrap();
            assert!(r.c <= r.distance, "c within [0, d]");
        }
        // x = y gives zero.
        let r = discounted_distance(&engine, &spec.x0, &spec.x0.clone(), &spec, 10_000).unwrap();
        assert_eq!(r.c, 0);
    }

    #[test]
    fn h_fixing_base_is_zero() {
        let engine = FareyQm::default();
        let spec = base_spec();
        let (h, _) = h_w(&engine, &spec, &spec.x0.clone(), 10_000).unwrap();
        assert_eq!(h, 0);
    }

    #[test]
    fn stabilizer_bound_parabolic() {
        let engine = FareyQm::default();
        let spec = base_spec();
        // Parabolic powers fixing infinity; d(0/1, infinity) = 1, bound 2.
        let els: Vec<IntMatrix> =
            (1..=4).map(|n| IntMatrix::new(1, n, 0, 1).unwrap()).collect();
        let rep =
            stabilizer_probe_farey(&engine, &spec, FareySlope::INFINITY, &els, 10_000).unwrap();
        assert_eq!(rep.bound, 2);
        assert!(rep.all_within_bound, "max |h| = {}", rep.max_abs_h);
        // Rejects non-stabilizing elements.
        let bad = IntMatrix::new(2, 1, 1, 1).unwrap();
        assert!(matches!(
            stabilizer_probe_farey(&engine, &spec, FareySlope::INFINITY, &[bad], 100),
            Err(QmError::DoesNotFix(_))
        ));
    }
}
