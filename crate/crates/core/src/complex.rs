//! The curve complex as a lazily explored graph: exact small distances,
//! breadth-first distances inside a capped vertex universe, constructive
//! surgery paths, and slim-triangle probes.
//!
//! The complex itself is infinite; every search here runs inside an explicit
//! enumerated universe, with unreachability reported rather than guessed.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::curves::{
    enumerate_curves, intersection_curves, is_filling, neighborhood_boundary, CurveError,
    MultiCurve, NormalCurve,
};
use crate::diagram::Diagram;
use crate::farey;
use crate::sampling::SeededRng;
use crate::surface::{classify, ComplexClass, IdealTriangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    Curve(CurveError),
    /// Pair disconnected within the capped universe.
    Unreachable,
    /// Vertex not in the universe.
    NotInUniverse,
    /// The surgery case analysis needs a curve that does not exist here.
    SurgeryStuck(String),
}

impl From<CurveError> for ComplexError {
    fn from(e: CurveError) -> Self {
        ComplexError::Curve(e)
    }
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::Curve(e) => write!(f, "{e}"),
            ComplexError::Unreachable => write!(f, "unreachable within the capped universe"),
            ComplexError::NotInUniverse => write!(f, "vertex outside the capped universe"),
            ComplexError::SurgeryStuck(s) => write!(f, "surgery stuck: {s}"),
        }
    }
}

/// Exact distance information that needs no search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallDistance {
    Zero,
    One,
    Two,
    AtLeastThree,
}

/// Distance class of a pair: `0` iff equal, `1` iff disjoint, `2` iff
/// intersecting but not filling, at least `3` iff filling.
///
/// On the once-punctured torus the complex follows the modified adjacency
/// (edges at intersection number one) and this defers to the exact Farey
/// distance.
pub fn small_distance(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> Result<SmallDistance, ComplexError> {
    a.check_triangulation(tri)?;
    b.check_triangulation(tri)?;
    if classify(tri.sig()) == ComplexClass::FareyModel {
        let sa = crate::curves::torus_slope(tri, a)?;
        let sb = crate::curves::torus_slope(tri, b)?;
        return Ok(match farey::farey_distance(sa, sb) {
            0 => SmallDistance::Zero,
            1 => SmallDistance::One,
            2 => SmallDistance::Two,
            _ => SmallDistance::AtLeastThree,
        });
    }
    if a == b {
        return Ok(SmallDistance::Zero);
    }
    if intersection_curves(tri, a, b) == 0 {
        return Ok(SmallDistance::One);
    }
    let fa = MultiCurve::from_curve(a.clone());
    let fb = MultiCurve::from_curve(b.clone());
    if is_filling(tri, &fa, &fb)? {
        Ok(SmallDistance::AtLeastThree)
    } else {
        Ok(SmallDistance::Two)
    }
}

/// Enumerated vertex universe of the complex with its adjacency
/// (disjointness) relation.
pub struct ComplexUniverse {
    pub weight_cap: u32,
    curves: Vec<NormalCurve>,
    index: BTreeMap<Vec<u32>, u32>,
    adj: Vec<Vec<u32>>,
}

impl ComplexUniverse {
    pub fn build(tri: &IdealTriangulation, weight_cap: u32) -> ComplexUniverse {
        let curves = enumerate_curves(tri, weight_cap);
        let index = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.weights().to_vec(), i as u32))
            .collect();
        let n = curves.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if intersection_curves_unchecked(&curves[i], &curves[j], tri) == 0 {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        ComplexUniverse { weight_cap, curves, index, adj }
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[NormalCurve] {
        &self.curves
    }

    pub fn index_of(&self, c: &NormalCurve) -> Option<u32> {
        self.index.get(c.weights()).copied()
    }

    pub fn degree(&self, i: u32) -> usize {
        self.adj[i as usize].len()
    }

    /// BFS distances from a vertex; `u32::MAX` marks unreachable.
    pub fn bfs_from(&self, start: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.curves.len()];
        let mut queue = VecDeque::new();
        dist[start as usize] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length within the universe.
    pub fn bfs_distance(
        &self,
        a: &NormalCurve,
        b: &NormalCurve,
    ) -> Result<u64, ComplexError> {
        let (ia, ib) = (
            self.index_of(a).ok_or(ComplexError::NotInUniverse)?,
            self.index_of(b).ok_or(ComplexError::NotInUniverse)?,
        );
        let d = self.bfs_from(ia)[ib as usize];
        if d == u32::MAX {
            Err(ComplexError::Unreachable)
        } else {
            Ok(d as u64)
        }
    }

    /// Lexicographically least BFS geodesic, by vertex index.
    pub fn lex_geodesic(&self, ia: u32, ib: u32) -> Option<Vec<u32>> {
        let dist_to = self.bfs_from(ib);
        if dist_to[ia as usize] == u32::MAX {
            return None;
        }
        let mut path = vec![ia];
        let mut cur = ia;
        while cur != ib {
            let d = dist_to[cur as usize];
            let next = self.adj[cur as usize]
                .iter()
                .copied()
                .filter(|&w| dist_to[w as usize] + 1 == d)
                .min()
                .expect("geodesic step exists");
            path.push(next);
            cur = next;
        }
        Some(path)
    }
}

fn intersection_curves_unchecked(a: &NormalCurve, b: &NormalCurve, tri: &IdealTriangulation) -> u64 {
    intersection_curves(tri, a, b)
}

/// Path in the complex as a vertex list; consecutive entries disjoint.
pub fn validate_edge_path(tri: &IdealTriangulation, path: &[NormalCurve]) -> bool {
    if path.is_empty() {
        return false;
    }
    path.windows(2).all(|w| w[0] != w[1] && intersection_curves(tri, &w[0], &w[1]) == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurgeryStrategy {
    /// Any valid surgery; path length at most `2 I(a,b)`.
    Basic,
    /// Greedy choice minimizing the remaining intersection number; path
    /// length logarithmic in `I(a,b)`.
    Log,
}

/// Constructive path from `a` to `b` following the connectivity induction:
/// disjoint pairs are an edge, one crossing routes through the boundary of a
/// regular neighborhood, and otherwise surgery along two same-sign crossings
/// produces a curve meeting `a` less and `b` at most once.
pub fn surgery_path(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
    strategy: SurgeryStrategy,
) -> Result<Vec<NormalCurve>, ComplexError> {
    a.check_triangulation(tri)?;
    b.check_triangulation(tri)?;
    let mut path = surgery_path_inner(tri, a, b, strategy, 0)?;
    path.dedup();
    debug_assert!(validate_edge_path(tri, &path) || path.len() == 1);
    Ok(path)
}

fn surgery_path_inner(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
    strategy: SurgeryStrategy,
    depth: u32,
) -> Result<Vec<NormalCurve>, ComplexError> {
    if a == b {
        return Ok(vec![a.clone()]);
    }
    let i_ab = intersection_curves(tri, a, b);
    if i_ab == 0 {
        return Ok(vec![a.clone(), b.clone()]);
    }
    assert!(depth <= 64 + i_ab as u32, "surgery recursion does not progress");
    if i_ab == 1 {
        // Boundary of the one-holed torus neighborhood.
        let c = neighborhood_boundary(tri, a, b)
            .into_iter()
            .find(|c| {
                intersection_curves(tri, c, a) == 0 && intersection_curves(tri, c, b) == 0
            })
            .ok_or_else(|| {
                ComplexError::SurgeryStuck(
                    "no essential neighborhood boundary for a once-crossing pair".into(),
                )
            })?;
        return Ok(vec![a.clone(), c, b.clone()]);
    }

    let candidates = surgery_candidates(tri, a, b, i_ab);
    let chosen = match strategy {
        SurgeryStrategy::Basic => candidates.into_iter().next(),
        SurgeryStrategy::Log => candidates
            .into_iter()
            .min_by_key(|c| (intersection_curves(tri, c, a), c.weights().to_vec())),
    };
    if let Some(c) = chosen {
        let mut path = surgery_path_inner(tri, a, &c, strategy, depth + 1)?;
        let tail = surgery_path_inner(tri, &c, b, strategy, depth + 1)?;
        path.extend(tail.into_iter().skip(1));
        return Ok(path);
    }
    // All crossings alternate in sign and none of the surgeries worked; for
    // two opposite crossings the neighborhood is a four-holed sphere with an
    // essential boundary component.
    let c = neighborhood_boundary(tri, a, b)
        .into_iter()
        .find(|c| intersection_curves(tri, c, a) == 0 && intersection_curves(tri, c, b) == 0)
        .ok_or_else(|| {
            ComplexError::SurgeryStuck(format!(
                "no surgery candidate and no essential neighborhood boundary at I = {i_ab}"
            ))
        })?;
    let mut path = vec![a.clone()];
    path.push(c.clone());
    let tail = surgery_path_inner(tri, &c, b, strategy, depth + 1)?;
    path.extend(tail.into_iter().skip(1));
    Ok(path)
}

/// Curves obtained by joining an arc of `a` between two same-sign crossings
/// to an arc of `b`, filtered to essential curves that meet `a` less than
/// `I(a,b)` and `b` at most once. Ordered deterministically.
fn surgery_candidates(
    tri: &IdealTriangulation,
    a: &NormalCurve,
    b: &NormalCurve,
    i_ab: u64,
) -> Vec<NormalCurve> {
    let ta = a.traced();
    let tb = b.traced();
    let dia = Diagram::new(tri, vec![ta, tb]);
    // Crossings along a: (step on a, _, step on b, sign from a's viewpoint).
    let xs = dia.crossings_along(0);
    let m = xs.len();
    debug_assert_eq!(m as u64, i_ab);
    let mut out: Vec<NormalCurve> = Vec::new();
    // Keep candidates that make strict progress on both sides while keeping
    // the total small; path lengths then telescope to at most twice the
    // intersection number.
    let mut push = |c: Result<NormalCurve, CurveError>| {
        if let Ok(c) = c {
            let ia = intersection_curves(tri, &c, a);
            let ib = intersection_curves(tri, &c, b);
            if ia < i_ab && ib < i_ab && ia + ib <= i_ab && !out.contains(&c) {
                out.push(c);
            }
        }
    };
    for s in 0..m {
        for gap in [1usize, 2] {
            let (x, y) = (xs[s], xs[(s + gap) % m]);
            if x.3 != y.3 || (gap == 2 && m < 3) {
                continue;
            }
            // Arc of a from x to y (forward), then back along b either way.
            for b_forward in [true, false] {
                push(join_arcs(tri, ta, tb, x.0, x.2, y.0, y.2, b_forward));
            }
        }
        if m == 2 {
            break;
        }
    }
    out.sort();
    out
}

/// Closed transverse word: arc of `a` from crossing x to crossing y, then an
/// arc of `b` from y back to x, reduced and normalized.
#[allow(clippy::too_many_arguments)]
fn join_arcs(
    tri: &IdealTriangulation,
    ta: &crate::diagram::TracedCurve,
    tb: &crate::diagram::TracedCurve,
    ka1: u32,
    kb1: u32,
    ka2: u32,
    kb2: u32,
    b_forward: bool,
) -> Result<NormalCurve, CurveError> {
    let an = ta.len();
    let bn = tb.len();
    let mut word: Vec<u32> = Vec::new();
    // a-arc: passages ka1+1 ..= ka2 cyclically.
    let mut k = (ka1 as usize + 1) % an;
    loop {
        word.push(ta.steps[k]);
        if k == ka2 as usize {
            break;
        }
        k = (k + 1) % an;
    }
    if b_forward {
        let mut k = (kb2 as usize + 1) % bn;
        loop {
            word.push(tb.steps[k]);
            if k == kb1 as usize {
                break;
            }
            k = (k + 1) % bn;
        }
    } else {
        let mut k = kb2 as usize;
        loop {
            word.push(tri.partner(tb.steps[k]));
            if k == (kb1 as usize + 1) % bn {
                break;
            }
            k = (k + bn - 1) % bn;
        }
    }
    debug_assert!(crate::diagram::word_is_valid(tri, &word));
    let reduced = crate::diagram::reduce_word(tri, word);
    if reduced.is_empty() {
        return Err(CurveError::Inessential("surgery collapsed".into()));
    }
    NormalCurve::from_weights(tri, crate::diagram::word_weights(tri, &reduced))
}

/// Slimness statistics of sampled geodesic triangles in a universe.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaReport {
    pub weight_cap: u32,
    pub universe_size: u64,
    pub samples_requested: u64,
    pub samples: u64,
    pub skipped: u64,
    pub max_slimness: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub seed: u64,
}

/// Measure geodesic-triangle slimness on sampled vertex triples: the maximum
/// distance from a side to the union of the other two.
pub fn probe_delta(u: &ComplexUniverse, samples: u64, seed: u64) -> DeltaReport {
    let mut rng = SeededRng::new(seed);
    let mut report = DeltaReport {
        weight_cap: u.weight_cap,
        universe_size: u.len() as u64,
        samples_requested: samples,
        samples: 0,
        skipped: 0,
        max_slimness: 0,
        histogram: BTreeMap::new(),
        seed,
    };
    if u.is_empty() {
        report.skipped = samples;
        return report;
    }
    for _ in 0..samples {
        let a = rng.index(u.len()) as u32;
        let b = rng.index(u.len()) as u32;
        let c = rng.index(u.len()) as u32;
        let (Some(ab), Some(bc), Some(ca)) =
            (u.lex_geodesic(a, b), u.lex_geodesic(b, c), u.lex_geodesic(c, a))
        else {
            report.skipped += 1;
            continue;
        };
        let sides = [&ab, &bc, &ca];
        let mut slim = 0u64;
        for i in 0..3 {
            let others: Vec<u32> =
                sides[(i + 1) % 3].iter().chain(sides[(i + 2) % 3].iter()).copied().collect();
            for &v in sides[i] {
                let dist = u.bfs_from(v);
                let d = others.iter().map(|&w| dist[w as usize]).min().unwrap_or(u32::MAX);
                slim = slim.max(d as u64);
            }
        }
        report.samples += 1;
        report.max_slimness = report.max_slimness.max(slim);
        *report.histogram.entry(slim).or_insert(0) += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::torus_curve;
    use crate::farey::FareySlope;
    use crate::surface::{standard_triangulation, SurfaceSig};

    #[test]
    fn small_distance_on_farey_model() {
        let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        let a = torus_curve(&tri, FareySlope::new(0, 1).unwrap()).unwrap();
        let b = torus_curve(&tri, FareySlope::new(1, 0).unwrap()).unwrap();
        let c = torus_curve(&tri, FareySlope::new(2, 5).unwrap()).unwrap();
        assert_eq!(small_distance(&tri, &a, &a).unwrap(), SmallDistance::Zero);
        assert_eq!(small_distance(&tri, &a, &b).unwrap(), SmallDistance::One);
        assert_eq!(small_distance(&tri, &a, &c).unwrap(), SmallDistance::Two);
    }

    #[test]
    fn universe_bfs_small() {
        let tri = standard_triangulation(SurfaceSig::new(0, 5, true)).unwrap();
        let u = ComplexUniverse::build(&tri, 1);
        assert!(u.len() > 2, "universe too small: {}", u.len());
        // Adjacent pairs at distance 1; distances symmetric.
        let mut found_adjacent = false;
        for i in 0..u.len().min(12) as u32 {
            let di = u.bfs_from(i);
            for j in 0..u.len() as u32 {
                if i == j {
                    continue;
                }
                let dj = u.bfs_from(j);
                assert_eq!(di[j as usize], dj[i as usize]);
                if di[j as usize] == 1 {
                    found_adjacent = true;
                }
            }
        }
        assert!(found_adjacent);
    }

    #[test]
    fn surgery_base_cases() {
        let tri = standard_triangulation(SurfaceSig::new(0, 5, true)).unwrap();
        let u = ComplexUniverse::build(&tri, 1);
        let curves = u.curves();
        // A disjoint pair yields an edge.
        'outer: for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if intersection_curves(&tri, &curves[i], &curves[j]) == 0 {
                    let p =
                        surgery_path(&tri, &curves[i], &curves[j], SurgeryStrategy::Basic)
                            .unwrap();
                    assert_eq!(p.len(), 2);
                    break 'outer;
                }
            }
        }
    }
}
