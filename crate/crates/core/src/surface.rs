//! Surface signatures, the sporadic classification, and the ideal
//! triangulations that anchor all curve coordinates.
//!
//! A triangulation is a set of oriented triangles with their sides glued in
//! pairs. Sides are half-edges `h = 3*t + i`; the boundary of triangle `t`
//! traverses sides `0, 1, 2` counterclockwise, so side `i` runs from corner
//! `i+2` to corner `i` (corner `k` sits between sides `k` and `k+1`).
//! Triangle corners are the punctures; no interior vertices exist.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Genus/puncture/orientability signature of a surface.
///
/// For non-orientable signatures `genus` counts crosscaps (projective plane
/// has genus 1, Klein bottle genus 2). Non-orientable signatures may be
/// classified but never triangulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub punctures: u32,
    pub orientable: bool,
}

impl SurfaceSig {
    pub fn new(genus: u32, punctures: u32, orientable: bool) -> SurfaceSig {
        SurfaceSig { genus, punctures, orientable }
    }

    /// Euler characteristic; `2 - 2g - n` orientable, `2 - g - n` otherwise.
    pub fn euler_char(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64 - self.punctures as i64
        } else {
            2 - self.genus as i64 - self.punctures as i64
        }
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}{})",
            self.genus,
            self.punctures,
            if self.orientable { "" } else { ",non-orientable" }
        )
    }
}

/// What the curve complex of a signature looks like, and whether this
/// toolkit models it.
///
/// `NonOrientableUnsupported` doubles as the general out-of-model bucket:
/// it also absorbs closed orientable surfaces of genus at least two, whose
/// complex is fine in theory but needs at least one puncture to carry the
/// triangulation coordinates used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexClass {
    EmptyComplex,
    DiscreteComplex,
    FareyModel,
    Supported,
    NonOrientableSporadic,
    NonOrientableUnsupported,
}

/// Total classification of a signature.
pub fn classify(sig: SurfaceSig) -> ComplexClass {
    let (g, n) = (sig.genus, sig.punctures);
    if sig.orientable {
        match (g, n) {
            (0, 0..=3) => ComplexClass::EmptyComplex,
            (0, 4) => ComplexClass::DiscreteComplex,
            (1, 0..=1) => ComplexClass::FareyModel,
            (0, _) => ComplexClass::Supported,
            (1, _) => ComplexClass::Supported,
            (_, 0) => ComplexClass::NonOrientableUnsupported,
            (_, _) => ComplexClass::Supported,
        }
    } else {
        match (g, n) {
            (1, 0..=2) => ComplexClass::NonOrientableSporadic,
            (2, 0..=1) => ComplexClass::NonOrientableSporadic,
            _ => ComplexClass::NonOrientableUnsupported,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationError {
    /// Signature cannot carry an ideal triangulation in this toolkit.
    UnsupportedSignature(SurfaceSig, String),
    /// A gluing table failed validation.
    Invalid(String),
}

impl fmt::Display for TriangulationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangulationError::UnsupportedSignature(sig, why) => {
                write!(f, "no triangulation for {sig}: {why}")
            }
            TriangulationError::Invalid(why) => write!(f, "invalid triangulation: {why}"),
        }
    }
}

/// Ideal triangulation of a punctured orientable surface.
///
/// Immutable after construction; validated on every construction path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    glue: Vec<u32>,
    edge_of_half: Vec<u32>,
    edge_rep: Vec<u32>,
    punctures: u32,
    genus: u32,
    fingerprint: u64,
}

impl IdealTriangulation {
    /// Build from a gluing involution on half-edges (`glue[3t+i]` is the
    /// half-edge glued to side `i` of triangle `t`).
    pub fn from_gluing(glue: Vec<u32>) -> Result<IdealTriangulation, TriangulationError> {
        let nh = glue.len();
        if nh == 0 || nh % 3 != 0 {
            return Err(TriangulationError::Invalid(format!(
                "half-edge count {nh} not a positive multiple of 3"
            )));
        }
        for (h, &g) in glue.iter().enumerate() {
            if g as usize >= nh {
                return Err(TriangulationError::Invalid(format!("side {h} glued out of range")));
            }
            if g as usize == h {
                return Err(TriangulationError::Invalid(format!("side {h} glued to itself")));
            }
            if glue[g as usize] as usize != h {
                return Err(TriangulationError::Invalid(format!("gluing not an involution at {h}")));
            }
        }
        // Edge ids in order of their smaller half-edge.
        let mut edge_of_half = vec![u32::MAX; nh];
        let mut edge_rep = Vec::new();
        for h in 0..nh {
            if edge_of_half[h] == u32::MAX {
                let e = edge_rep.len() as u32;
                edge_rep.push(h as u32);
                edge_of_half[h] = e;
                edge_of_half[glue[h] as usize] = e;
            }
        }
        // Connectivity over triangle adjacency.
        let nt = nh / 3;
        let mut seen = vec![false; nt];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for i in 0..3 {
                let n = glue[3 * t + i] as usize / 3;
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TriangulationError::Invalid("surface not connected".into()));
        }
        let mut tri = IdealTriangulation {
            glue,
            edge_of_half,
            edge_rep,
            punctures: 0,
            genus: 0,
            fingerprint: 0,
        };
        let punctures = tri.corner_cycles().len() as u32;
        // Euler count of the closed surface (punctures filled back in).
        let chi = punctures as i64 - tri.num_edges() as i64 + nt as i64;
        let two_g = 2 - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(TriangulationError::Invalid(format!(
                "Euler count not orientable: chi={chi}, punctures={punctures}"
            )));
        }
        if punctures == 0 {
            return Err(TriangulationError::Invalid("no punctures".into()));
        }
        tri.punctures = punctures;
        tri.genus = (two_g / 2) as u32;
        tri.fingerprint = fnv1a(&tri.glue);
        Ok(tri)
    }

    pub fn num_triangles(&self) -> usize {
        self.glue.len() / 3
    }

    pub fn num_edges(&self) -> usize {
        self.edge_rep.len()
    }

    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig::new(self.genus, self.punctures, true)
    }

    /// Stable content hash; curves carry it to detect triangulation mixups.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn partner(&self, h: u32) -> u32 {
        self.glue[h as usize]
    }

    pub fn next(&self, h: u32) -> u32 {
        h - h % 3 + (h + 1) % 3
    }

    pub fn prev(&self, h: u32) -> u32 {
        h - h % 3 + (h + 2) % 3
    }

    pub fn edge_of(&self, h: u32) -> u32 {
        self.edge_of_half[h as usize]
    }

    /// Canonical half-edge of an edge; its traversal direction orients the edge.
    pub fn edge_rep(&self, e: u32) -> u32 {
        self.edge_rep[e as usize]
    }

    pub fn is_canonical(&self, h: u32) -> bool {
        self.edge_rep[self.edge_of(h) as usize] == h
    }

    pub fn half_edges(&self) -> impl Iterator<Item = u32> {
        0..self.glue.len() as u32
    }

    /// Corner cycles around the punctures. A corner is named by the side it
    /// ends at: corner `h` sits between sides `h` and `next(h)`.
    pub fn corner_cycles(&self) -> Vec<Vec<u32>> {
        let nh = self.glue.len();
        let mut seen = vec![false; nh];
        let mut cycles = Vec::new();
        for start in 0..nh as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                seen[h as usize] = true;
                cycle.push(h);
                h = self.partner(self.next(h));
                if h == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Puncture id for each corner (indexed by the corner's half-edge).
    pub fn puncture_of_corner(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.glue.len()];
        for (p, cycle) in self.corner_cycles().iter().enumerate() {
            for &h in cycle {
                out[h as usize] = p as u32;
            }
        }
        out
    }

    /// Gluing table rows `[t, i, t', i']`, one per edge, for serialization.
    pub fn gluing_rows(&self) -> Vec<[u32; 4]> {
        let mut rows = Vec::new();
        let mut done = BTreeSet::new();
        for h in 0..self.glue.len() as u32 {
            if done.contains(&h) {
                continue;
            }
            let g = self.partner(h);
            done.insert(h);
            done.insert(g);
            rows.push([h / 3, h % 3, g / 3, g % 3]);
        }
        rows
    }
}

fn fnv1a(data: &[u32]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &v in data {
        for b in v.to_le_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    }
    hash
}

/// The fixed triangulation this toolkit uses for a signature.
///
/// Deterministic: the same signature always yields the identical labeled
/// triangulation. Genus zero starts from the two-triangle sphere with three
/// punctures; genus `g >= 1` starts from the fan-triangulated `4g`-gon with
/// one puncture. Additional punctures are created by repeatedly coning
/// triangle 0 (split into three triangles around a new puncture).
pub fn standard_triangulation(sig: SurfaceSig) -> Result<IdealTriangulation, TriangulationError> {
    if !sig.orientable {
        return Err(TriangulationError::UnsupportedSignature(
            sig,
            "non-orientable signatures are classification-only".into(),
        ));
    }
    if sig.punctures == 0 {
        return Err(TriangulationError::UnsupportedSignature(
            sig,
            "closed surfaces carry no ideal triangulation".into(),
        ));
    }
    match classify(sig) {
        ComplexClass::FareyModel | ComplexClass::Supported => {}
        c => {
            return Err(TriangulationError::UnsupportedSignature(
                sig,
                format!("classified {c:?}"),
            ));
        }
    }

    let (base, base_punctures) = if sig.genus == 0 {
        // Doubled triangle with a flip: the three-punctured sphere.
        (vec![3, 5, 4, 0, 2, 1], 3)
    } else {
        (polygon_gluing(sig.genus), 1)
    };
    let mut glue = base;
    for _ in base_punctures..sig.punctures {
        glue = cone_triangle_zero(&glue);
    }
    let tri = IdealTriangulation::from_gluing(glue)?;
    debug_assert_eq!(tri.sig(), sig);
    Ok(tri)
}

/// Fan triangulation of the standard `4g`-gon `a1 b1 a1' b1' ...`.
fn polygon_gluing(g: u32) -> Vec<u32> {
    let m = 4 * g as usize; // polygon sides
    let nt = m - 2; // fan triangles (0, k, k+1), k = 1..=m-2
    let mut glue = vec![u32::MAX; 3 * nt];
    let pair = |a: u32, b: u32, glue: &mut Vec<u32>| {
        glue[a as usize] = b;
        glue[b as usize] = a;
    };
    // Polygon side j as a half-edge.
    let side = |j: usize| -> u32 {
        if j == 0 {
            0 // triangle 0, side 0
        } else if j == m - 1 {
            (3 * (nt - 1) + 2) as u32
        } else {
            (3 * (j - 1) + 1) as u32
        }
    };
    // Diagonals between consecutive fan triangles.
    for k in 2..m - 1 {
        pair((3 * (k - 2) + 2) as u32, (3 * (k - 1)) as u32, &mut glue);
    }
    // Side identifications a b a' b' per handle.
    for q in 0..g as usize {
        pair(side(4 * q), side(4 * q + 2), &mut glue);
        pair(side(4 * q + 1), side(4 * q + 3), &mut glue);
    }
    glue
}

/// Split triangle 0 into three around a new puncture.
fn cone_triangle_zero(glue: &[u32]) -> Vec<u32> {
    let nt = glue.len() / 3;
    // Child for old side j of triangle 0: child 0 stays at index 0, children
    // 1 and 2 append. Outer side of each child is its side 0.
    let child = |j: u32| -> u32 {
        match j {
            0 => 0,
            1 => nt as u32,
            _ => nt as u32 + 1,
        }
    };
    let map = |h: u32| -> u32 {
        if h < 3 {
            3 * child(h)
        } else {
            h
        }
    };
    let mut out = vec![u32::MAX; glue.len() + 6];
    for h in 0..glue.len() as u32 {
        let (a, b) = (map(h), map(glue[h as usize]));
        out[a as usize] = b;
        out[b as usize] = a;
    }
    // Spokes: child j side 1 meets child j+1 side 2.
    for j in 0..3u32 {
        let a = 3 * child(j) + 1;
        let b = 3 * child((j + 1) % 3) + 2;
        out[a as usize] = b;
        out[b as usize] = a;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(SurfaceSig::new(0, 3, true)), ComplexClass::EmptyComplex);
        assert_eq!(classify(SurfaceSig::new(0, 4, true)), ComplexClass::DiscreteComplex);
        assert_eq!(classify(SurfaceSig::new(1, 1, true)), ComplexClass::FareyModel);
        assert_eq!(classify(SurfaceSig::new(1, 0, true)), ComplexClass::FareyModel);
        assert_eq!(classify(SurfaceSig::new(0, 5, true)), ComplexClass::Supported);
        assert_eq!(classify(SurfaceSig::new(1, 2, true)), ComplexClass::Supported);
        assert_eq!(classify(SurfaceSig::new(2, 0, true)), ComplexClass::NonOrientableUnsupported);
        assert_eq!(classify(SurfaceSig::new(2, 1, true)), ComplexClass::Supported);
        assert_eq!(classify(SurfaceSig::new(1, 2, false)), ComplexClass::NonOrientableSporadic);
        assert_eq!(classify(SurfaceSig::new(2, 1, false)), ComplexClass::NonOrientableSporadic);
        assert_eq!(classify(SurfaceSig::new(1, 3, false)), ComplexClass::NonOrientableUnsupported);
        assert_eq!(classify(SurfaceSig::new(3, 4, false)), ComplexClass::NonOrientableUnsupported);
    }

    #[test]
    fn standard_counts() {
        let t11 = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        assert_eq!(t11.num_triangles(), 2);
        assert_eq!(t11.num_edges(), 3);
        let t05 = standard_triangulation(SurfaceSig::new(0, 5, true)).unwrap();
        assert_eq!(t05.num_triangles(), 6);
        assert_eq!(t05.num_edges(), 9);
        let t12 = standard_triangulation(SurfaceSig::new(1, 2, true)).unwrap();
        assert_eq!(t12.num_triangles(), 4);
        assert_eq!(t12.num_edges(), 6);
        let t21 = standard_triangulation(SurfaceSig::new(2, 1, true)).unwrap();
        assert_eq!(t21.num_triangles(), 6);
        assert_eq!(t21.num_edges(), 9);
        assert_eq!(t21.sig(), SurfaceSig::new(2, 1, true));
    }

    #[test]
    fn sporadic_rejected() {
        assert!(standard_triangulation(SurfaceSig::new(0, 2, true)).is_err());
        assert!(standard_triangulation(SurfaceSig::new(0, 4, true)).is_err());
        assert!(standard_triangulation(SurfaceSig::new(1, 0, true)).is_err());
        assert!(standard_triangulation(SurfaceSig::new(1, 2, false)).is_err());
    }

    #[test]
    fn determinism() {
        let a = standard_triangulation(SurfaceSig::new(0, 6, true)).unwrap();
        let b = standard_triangulation(SurfaceSig::new(0, 6, true)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}
