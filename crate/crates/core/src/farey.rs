//! Exact Farey graph: rational slopes, unimodular adjacency, the projective
//! integer matrix action, and continued-fraction distances.
//!
//! This is the curve complex of the once-punctured torus with the modified
//! adjacency (edges where the intersection number is one), and the testbed
//! where every quasimorphism quantity is computable exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sampling::SeededRng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FareyError {
    InvalidSlope(String),
    NotUnimodular(String),
    NotAPath(String),
}

impl fmt::Display for FareyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FareyError::InvalidSlope(s) => write!(f, "invalid slope: {s}"),
            FareyError::NotUnimodular(s) => write!(f, "matrix not unimodular: {s}"),
            FareyError::NotAPath(s) => write!(f, "not an edge path: {s}"),
        }
    }
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rational slope `p/q` in lowest terms with `q > 0`, or `1/0` for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FareySlope {
    pub p: i64,
    pub q: i64,
}

impl FareySlope {
    pub const INFINITY: FareySlope = FareySlope { p: 1, q: 0 };
    pub const ZERO: FareySlope = FareySlope { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<FareySlope, FareyError> {
        FareySlope::new_i128(p as i128, q as i128)
    }

    pub fn new_i128(p: i128, q: i128) -> Result<FareySlope, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::InvalidSlope("0/0".into()));
        }
        let g = {
            let (mut a, mut b) = (p.abs(), q.abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        };
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        let (p, q) = (
            i64::try_from(p).map_err(|_| FareyError::InvalidSlope("overflow".into()))?,
            i64::try_from(q).map_err(|_| FareyError::InvalidSlope("overflow".into()))?,
        );
        Ok(FareySlope { p, q })
    }

    /// `p_u q_v - q_u p_v`; adjacency means this is `+-1`.
    pub fn det(self, other: FareySlope) -> i128 {
        self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128
    }
}

/// True iff the slopes span a Farey edge.
pub fn adjacent(u: FareySlope, v: FareySlope) -> bool {
    u.det(v).abs() == 1
}

impl fmt::Display for FareySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for FareySlope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<FareySlope, FareyError> {
        let (p, q) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<i64>().map_err(|_| FareyError::InvalidSlope(s.into()))?,
                b.trim().parse::<i64>().map_err(|_| FareyError::InvalidSlope(s.into()))?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| FareyError::InvalidSlope(s.into()))?, 1),
        };
        FareySlope::new(p, q)
    }
}

impl PartialOrd for FareySlope {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FareySlope {
    /// Deterministic total order by `(q, p)`; infinity sorts first.
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.q, self.p).cmp(&(other.q, other.p))
    }
}

/// Integer matrix of determinant `+-1`, taken projectively (up to sign).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<IntMatrix, FareyError> {
        let m = IntMatrix { a, b, c, d };
        if m.det().abs() != 1 {
            return Err(FareyError::NotUnimodular(format!("det = {}", m.det())));
        }
        Ok(m.canonical())
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    /// Sign-canonical representative: first nonzero of `(a, b, c, d)` positive.
    pub fn canonical(self) -> IntMatrix {
        let lead = [self.a, self.b, self.c, self.d].into_iter().find(|&x| x != 0).unwrap_or(0);
        if lead < 0 {
            IntMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn mul(self, o: IntMatrix) -> IntMatrix {
        IntMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
        .canonical()
    }

    pub fn inverse(self) -> IntMatrix {
        // Adjugate works projectively for determinant +-1.
        IntMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical()
    }

    pub fn pow(self, n: u32) -> IntMatrix {
        let mut out = IntMatrix::IDENTITY;
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Projective action on slopes; intermediate products in 128 bits.
    pub fn act(&self, v: FareySlope) -> FareySlope {
        self.act_checked(v).expect("slope out of 64-bit range under action")
    }

    /// Action that reports slopes leaving the 64-bit range instead of
    /// panicking; enumeration paths skip such candidates.
    pub fn act_checked(&self, v: FareySlope) -> Option<FareySlope> {
        let p = self.a as i128 * v.p as i128 + self.b as i128 * v.q as i128;
        let q = self.c as i128 * v.p as i128 + self.d as i128 * v.q as i128;
        FareySlope::new_i128(p, q).ok()
    }

    pub fn act_path(&self, path: &[FareySlope]) -> Vec<FareySlope> {
        path.iter().map(|&v| self.act(v)).collect()
    }
}

/// Checks that consecutive vertices are distinct and adjacent.
pub fn is_edge_path(path: &[FareySlope]) -> bool {
    path.len() >= 2 && path.windows(2).all(|w| adjacent(w[0], w[1]))
}

/// Graph distance, by continued-fraction reduction.
///
/// After moving `u` to infinity, any path from infinity into the interval
/// `(n, n+1)` holding the target must pass through `n` or `n+1` (tessellation
/// edges separate), so the distance recursion branches over those two pivots
/// and each branch shrinks the denominator.
pub fn farey_distance(u: FareySlope, v: FareySlope) -> u64 {
    let mut memo = BTreeMap::new();
    // Apply the matrix moving u to infinity in 128-bit arithmetic; the
    // recursion never materializes a slope.
    let (x, y) = bezout(u.p, u.q);
    let p = x as i128 * v.p as i128 + y as i128 * v.q as i128;
    let q = -(u.q as i128) * v.p as i128 + u.p as i128 * v.q as i128;
    dist_from_infinity(p, q, &mut memo)
}

/// An actual geodesic realizing `farey_distance`, deterministic.
pub fn farey_geodesic(u: FareySlope, v: FareySlope) -> Vec<FareySlope> {
    let m = move_to_infinity(u);
    let x = m.act(v);
    let mut memo = BTreeMap::new();
    let path = geodesic_from_infinity(x, &mut memo);
    let back = m.inverse();
    back.act_path(&path)
}

/// Some unimodular matrix sending `u` to infinity.
fn move_to_infinity(u: FareySlope) -> IntMatrix {
    // Bezout: x p + y q = 1, then [[x, y], [-q, p]] has determinant 1.
    let (x, y) = bezout(u.p, u.q);
    IntMatrix::new(x, y, -u.q, u.p).expect("bezout matrix is unimodular")
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (if a < 0 { -1 } else { 1 }, 0);
    }
    let (x, y) = bezout(b, a % b);
    (y, x - (a / b) * y)
}

fn dist_from_infinity(p: i128, q: i128, memo: &mut BTreeMap<(i128, i128), u64>) -> u64 {
    let q = q.abs();
    if q == 0 {
        return 0;
    }
    if q == 1 {
        return 1;
    }
    let p = p.rem_euclid(q);
    if let Some(&d) = memo.get(&(p, q)) {
        return d;
    }
    // Pivot at floor: -1/(p/q) has denominator p; pivot at ceil: denominator q - p.
    let a = dist_from_infinity(-q, p, memo);
    let b = dist_from_infinity(q, q - p, memo);
    let d = 1 + a.min(b);
    memo.insert((p, q), d);
    d
}

fn geodesic_from_infinity(
    x: FareySlope,
    memo: &mut BTreeMap<(i128, i128), u64>,
) -> Vec<FareySlope> {
    if x.q == 0 {
        return vec![FareySlope::INFINITY];
    }
    if x.q == 1 {
        return vec![FareySlope::INFINITY, x];
    }
    let (p, q) = (x.p as i128, x.q as i128);
    let n = p.div_euclid(q) as i64;
    let p_red = p.rem_euclid(q);
    let da = dist_from_infinity(-q, p_red, memo);
    let db = dist_from_infinity(q, q - p_red, memo);
    // Pivot: floor on ties.
    let pivot = if da <= db { n } else { n + 1 };
    // Send pivot to infinity by A^{-1} with A = T^pivot S^{-1}; recurse and map back.
    let s_inv = IntMatrix::new(0, 1, -1, 0).unwrap();
    let t_pivot = IntMatrix::new(1, pivot, 0, 1).unwrap();
    let a = t_pivot.mul(s_inv);
    let x2 = a.inverse().act(x);
    let tail = geodesic_from_infinity(x2, memo);
    let mut out = vec![FareySlope::INFINITY];
    out.extend(a.act_path(&tail));
    out
}

/// Matrix `g` with `g . w = sigma` vertexwise, if one exists.
///
/// The candidate is pinned by the first edge (ordered-edge stabilizers are
/// trivial projectively) and verified along the rest. Determinant `-1`
/// matches are admitted only when `allow_reflection` is set.
pub fn translate_match(
    w: &[FareySlope],
    sigma: &[FareySlope],
    allow_reflection: bool,
) -> Option<IntMatrix> {
    if w.len() != sigma.len() || w.len() < 2 {
        return None;
    }
    let (u0, u1, v0, v1) = (w[0], w[1], sigma[0], sigma[1]);
    // M [u0 u1] = [v0 v1] diag(l0, l1); inverse of a +-1 column matrix is its
    // adjugate up to the determinant sign, which washes out projectively.
    let du = u0.p as i128 * u1.q as i128 - u1.p as i128 * u0.q as i128;
    if du.abs() != 1 {
        return None;
    }
    for signs in [(1i128, 1i128), (1, -1)] {
        // V diag(signs) adj(U); candidates out of 64-bit range cannot match
        // desk-scale paths and are skipped.
        let (l0, l1) = signs;
        let a = l0 * v0.p as i128 * u1.q as i128 - l1 * v1.p as i128 * u0.q as i128;
        let b = -l0 * v0.p as i128 * u1.p as i128 + l1 * v1.p as i128 * u0.p as i128;
        let c = l0 * v0.q as i128 * u1.q as i128 - l1 * v1.q as i128 * u0.q as i128;
        let d = -l0 * v0.q as i128 * u1.p as i128 + l1 * v1.q as i128 * u0.p as i128;
        let (Ok(a), Ok(b), Ok(c), Ok(d)) =
            (i64::try_from(a), i64::try_from(b), i64::try_from(c), i64::try_from(d))
        else {
            continue;
        };
        let m = match IntMatrix::new(a, b, c, d) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if !allow_reflection && m.det() != 1 {
            continue;
        }
        if w.iter().zip(sigma.iter()).all(|(&x, &y)| m.act(x) == y) {
            return Some(m);
        }
    }
    None
}

/// All neighbors `(r + t p) / (s + t q)` of `v` for `t` in the given range.
pub fn neighbor_fan(v: FareySlope, t_lo: i64, t_hi: i64) -> Vec<FareySlope> {
    let (r, s) = {
        // p s - q r = 1
        let (x, y) = bezout(v.p, v.q);
        (-y, x)
    };
    debug_assert_eq!(v.p as i128 * s as i128 - v.q as i128 * r as i128, 1);
    (t_lo..=t_hi)
        .map(|t| FareySlope::new(r + t * v.p, s + t * v.q).expect("fan slope valid"))
        .collect()
}

/// Finite ball of canonical slopes with `|p| <= p_bound`, `0 <= q <= q_bound`,
/// with its adjacency, for BFS oracles and probes.
pub struct FareyBall {
    pub slopes: Vec<FareySlope>,
    index: BTreeMap<FareySlope, u32>,
    adj: Vec<Vec<u32>>,
}

impl FareyBall {
    pub fn new(p_bound: i64, q_bound: i64) -> FareyBall {
        let mut slopes = vec![FareySlope::INFINITY];
        for q in 1..=q_bound {
            for p in -p_bound..=p_bound {
                if gcd64(p, q) == 1 {
                    slopes.push(FareySlope { p, q });
                }
            }
        }
        slopes.sort();
        let index: BTreeMap<FareySlope, u32> =
            slopes.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let n = slopes.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(slopes[i], slopes[j]) {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        FareyBall { slopes, index, adj }
    }

    pub fn contains(&self, v: FareySlope) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: FareySlope) -> Option<u32> {
        self.index.get(&v).copied()
    }

    /// BFS distances within the ball; `u32::MAX` marks unreachable.
    pub fn bfs_distances(&self, from: FareySlope) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.slopes.len()];
        let Some(s) = self.index_of(from) else {
            return dist;
        };
        let mut queue = alloc::collections::VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
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

    /// Lexicographically least BFS geodesic inside the ball, if connected.
    pub fn lex_geodesic(&self, from: FareySlope, to: FareySlope) -> Option<Vec<FareySlope>> {
        let (s, t) = (self.index_of(from)?, self.index_of(to)?);
        let dist_to = self.bfs_distances(to);
        if dist_to[s as usize] == u32::MAX {
            return None;
        }
        let mut path = vec![from];
        let mut cur = s;
        while cur != t {
            let d = dist_to[cur as usize];
            // Smallest-index neighbor strictly closer to the target.
            let next = self.adj[cur as usize]
                .iter()
                .copied()
                .filter(|&w| dist_to[w as usize] + 1 == d)
                .min_by_key(|&w| self.slopes[w as usize])
                .expect("geodesic step exists");
            path.push(self.slopes[next as usize]);
            cur = next;
        }
        Some(path)
    }
}

/// Slimness statistics of sampled geodesic triangles inside a ball.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlimnessReport {
    pub samples: u64,
    pub skipped: u64,
    pub max_slimness: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub seed: u64,
}

/// Sample geodesic triangles in the ball and measure how far each side
/// strays from the union of the other two.
pub fn probe_farey_slimness(ball: &FareyBall, samples: u64, seed: u64) -> SlimnessReport {
    let mut rng = SeededRng::new(seed);
    let mut report = SlimnessReport {
        samples: 0,
        skipped: 0,
        max_slimness: 0,
        histogram: BTreeMap::new(),
        seed,
    };
    for _ in 0..samples {
        let a = *rng.choose(&ball.slopes);
        let b = *rng.choose(&ball.slopes);
        let c = *rng.choose(&ball.slopes);
        let (Some(ab), Some(bc), Some(ca)) =
            (ball.lex_geodesic(a, b), ball.lex_geodesic(b, c), ball.lex_geodesic(c, a))
        else {
            report.skipped += 1;
            continue;
        };
        let slim = triangle_slimness(ball, &[&ab, &bc, &ca]);
        report.samples += 1;
        report.max_slimness = report.max_slimness.max(slim);
        *report.histogram.entry(slim).or_insert(0) += 1;
    }
    report
}

fn triangle_slimness(ball: &FareyBall, sides: &[&Vec<FareySlope>; 3]) -> u64 {
    let mut worst = 0u64;
    for i in 0..3 {
        let side = sides[i];
        let others: Vec<FareySlope> =
            sides[(i + 1) % 3].iter().chain(sides[(i + 2) % 3].iter()).copied().collect();
        for &v in side.iter() {
            let dists = ball.bfs_distances(v);
            let d = others
                .iter()
                .filter_map(|&w| ball.index_of(w))
                .map(|w| dists[w as usize])
                .min()
                .unwrap_or(u32::MAX);
            worst = worst.max(d as u64);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> FareySlope {
        FareySlope::new(p, q).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(s(0, 1), FareySlope::INFINITY));
        assert!(adjacent(s(1, 2), s(1, 3)));
        assert!(!adjacent(s(0, 1), s(2, 5)));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(farey_distance(s(0, 1), s(0, 1)), 0);
        assert_eq!(farey_distance(s(0, 1), FareySlope::INFINITY), 1);
        assert_eq!(farey_distance(s(0, 1), s(2, 5)), 2);
        assert_eq!(farey_distance(s(0, 1), s(5, 13)), 3);
        assert_eq!(farey_distance(s(5, 13), s(0, 1)), 3);
    }

    #[test]
    fn geodesics_realize_distance() {
        for (u, v) in [
            (s(0, 1), s(5, 13)),
            (s(3, 7), s(-8, 5)),
            (FareySlope::INFINITY, s(34, 55)),
            (s(2, 9), s(2, 9)),
        ] {
            let path = farey_geodesic(u, v);
            assert_eq!(path[0], u);
            assert_eq!(*path.last().unwrap(), v);
            assert_eq!(path.len() as u64 - 1, farey_distance(u, v));
            for w in path.windows(2) {
                assert!(adjacent(w[0], w[1]), "non-edge in geodesic");
            }
        }
    }

    #[test]
    fn action_examples() {
        let t = IntMatrix::new(1, 1, 0, 1).unwrap();
        assert_eq!(t.act(s(0, 1)), s(1, 1));
        assert_eq!(IntMatrix::IDENTITY.act(s(3, 5)), s(3, 5));
        let m = IntMatrix::new(2, 1, 1, 1).unwrap();
        let mi = m.inverse();
        assert_eq!(m.mul(mi), IntMatrix::IDENTITY);
    }

    #[test]
    fn translate_match_roundtrip() {
        let w = vec![s(0, 1), FareySlope::INFINITY, s(1, 1), s(1, 2)];
        assert!(is_edge_path(&w));
        assert_eq!(translate_match(&w, &w, false), Some(IntMatrix::IDENTITY));
        let m = IntMatrix::new(3, 2, 1, 1).unwrap();
        let sigma = m.act_path(&w);
        assert_eq!(translate_match(&w, &sigma, false), Some(m));
        // A shape mismatch has no match.
        let bad = vec![s(0, 1), s(1, 1), s(1, 2), s(2, 3)];
        assert!(is_edge_path(&bad));
        assert_eq!(translate_match(&w, &bad, false), None);
    }

    #[test]
    fn fan_neighbors_are_adjacent() {
        for v in [s(3, 7), FareySlope::INFINITY, s(0, 1)] {
            for n in neighbor_fan(v, -5, 5) {
                assert!(adjacent(v, n));
            }
        }
    }

    #[test]
    fn ball_bfs_matches_cf_distance_smoke() {
        let ball = FareyBall::new(25, 25);
        let from = s(0, 1);
        let dist = ball.bfs_distances(from);
        for (i, &v) in ball.slopes.iter().enumerate() {
            if v.q <= 8 && v.p.abs() <= 8 {
                assert_eq!(dist[i] as u64, farey_distance(from, v), "mismatch at {v}");
            }
        }
    }
}
