//! Complementary regions of a curve system in minimal position.
//!
//! Each triangle of a diagram is cut by its chords into planar cells; cells
//! glue across triangulation-edge segments into the regions of the
//! complement. Per region this computes the Euler count of its cut closure
//! (punctures filled back in), the punctures it contains, and its boundary
//! circuits as transverse words; the circuits over all regions are exactly
//! the components of the boundary of a regular neighborhood of the union.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::Diagram;

#[derive(Clone, Debug)]
pub(crate) struct RegionReport {
    /// Euler characteristic of each region's cut closure, punctures filled.
    pub euler: Vec<i64>,
    /// Punctures inside each region.
    pub punctures: Vec<u32>,
    /// Boundary circuits per region, as entering-half-edge words of a
    /// push-off.
    pub circuits: Vec<Vec<Vec<u32>>>,
}

impl RegionReport {
    pub fn all_disks_with_at_most_one_puncture(&self) -> bool {
        self.euler.iter().zip(self.punctures.iter()).all(|(&chi, &p)| chi == 1 && p <= 1)
    }
}

const OUTER: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ArcKind {
    /// Lies on the triangle boundary; payload is the side `0..3`.
    Boundary(u32),
    /// Segment of a curve chord.
    Chord,
}

struct LocalTriangle {
    /// arcs[a] = (from node, to node); darts are `2a` (forward) and `2a+1`.
    arcs: Vec<(u32, u32)>,
    kind: Vec<ArcKind>,
    /// Boundary arc index by (side, offset 0..=points-on-side).
    arcs_by_side: [Vec<u32>; 3],
    /// next dart counterclockwise around the face to the left.
    next_in_face: Vec<usize>,
    face_of_dart: Vec<usize>,
    face_count: usize,
    /// Wedge face at the end corner of each side.
    corner_faces: [usize; 3],
    /// One face per cut corner of each crossing node.
    crossing_corner_faces: Vec<usize>,
}

impl LocalTriangle {
    fn face_of_side_arc(&self, h: u32, offset: u32) -> usize {
        let a = self.arcs_by_side[(h % 3) as usize][offset as usize];
        self.face_of_dart[2 * a as usize]
    }

    fn build(dia: &Diagram<'_>, t: u32) -> LocalTriangle {
        let tri = dia.triangulation();
        let side_pts: Vec<Vec<(u32, u32)>> =
            (0..3).map(|i| dia.points_on_side(3 * t + i)).collect();
        let n_side: [u32; 3] = [
            side_pts[0].len() as u32,
            side_pts[1].len() as u32,
            side_pts[2].len() as u32,
        ];
        // Boundary nodes: per side block, the side's start corner followed by
        // its points; point node (i, p) = base[i] + 1 + p.
        let mut base = [0u32; 3];
        let mut acc = 0;
        for i in 0..3 {
            base[i] = acc;
            acc += 1 + n_side[i];
        }
        let num_b = acc;
        let point_node = |i: u32, p: u32| base[i as usize] + 1 + p;

        let xids = dia.crossing_ids_in_triangle(t);
        let xnode: BTreeMap<u32, u32> =
            xids.iter().enumerate().map(|(j, &x)| (x, num_b + j as u32)).collect();

        // Arcs: boundary circle first.
        let mut arcs: Vec<(u32, u32)> = Vec::new();
        let mut kind: Vec<ArcKind> = Vec::new();
        for j in 0..num_b {
            arcs.push((j, (j + 1) % num_b));
            let side = match (0..3).rev().find(|&i| j >= base[i]) {
                Some(i) => i as u32,
                None => 0,
            };
            kind.push(ArcKind::Boundary(side));
        }
        let arcs_by_side: [Vec<u32>; 3] = core::array::from_fn(|i| {
            (0..=n_side[i]).map(|k| base[i] + k).collect()
        });

        // Chord segments, plus per-dart direction keys at crossing nodes for
        // the rotation there. Boundary keys: cyclic position of the chord's
        // endpoint.
        let mut key_at_crossing: BTreeMap<(u32, usize), u64> = BTreeMap::new();
        for (c, k) in dia.chords_in_triangle(t) {
            let (si, pi, so, po) = dia.chord_sides(c, k);
            let n_in = point_node(si, pi);
            let n_out = point_node(so, po);
            let key_in = n_in as u64;
            let key_out = n_out as u64;
            let xs = dia.crossings_on_chord(c, k);
            let mut prev = n_in;
            for &x in &xs {
                let xn = xnode[&x];
                let a = arcs.len();
                arcs.push((prev, xn));
                kind.push(ArcKind::Chord);
                // Dart 2a+1 leaves xn toward the entry endpoint.
                key_at_crossing.insert((xn, 2 * a + 1), key_in);
                if prev >= num_b {
                    key_at_crossing.insert((prev, 2 * a), key_out);
                }
                prev = xn;
            }
            let a = arcs.len();
            arcs.push((prev, n_out));
            kind.push(ArcKind::Chord);
            if prev >= num_b {
                key_at_crossing.insert((prev, 2 * a), key_out);
            }
        }

        // Rotations: counterclockwise outgoing darts per node.
        let num_nodes = num_b + xids.len() as u32;
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); num_nodes as usize];
        for (a, &(from, to)) in arcs.iter().enumerate() {
            outgoing[from as usize].push(2 * a);
            outgoing[to as usize].push(2 * a + 1);
        }
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); num_nodes as usize];
        for v in 0..num_b {
            let fwd = 2 * v as usize; // boundary arc leaving v
            let bwd = 2 * (((v + num_b - 1) % num_b) as usize) + 1; // into prev
            let chord: Vec<usize> = outgoing[v as usize]
                .iter()
                .copied()
                .filter(|&d| kind[d / 2] == ArcKind::Chord)
                .collect();
            debug_assert!(chord.len() <= 1);
            let mut rot = vec![fwd];
            rot.extend(chord);
            rot.push(bwd);
            rotation[v as usize] = rot;
        }
        for v in num_b..num_nodes {
            let mut ds: Vec<(u64, usize)> = outgoing[v as usize]
                .iter()
                .map(|&d| (key_at_crossing[&(v, d)], d))
                .collect();
            debug_assert_eq!(ds.len(), 4);
            ds.sort_unstable();
            rotation[v as usize] = ds.into_iter().map(|(_, d)| d).collect();
        }

        // Faces to the left of darts: next(d) = clockwise-next of reverse(d)
        // at the head of d.
        let num_darts = 2 * arcs.len();
        let head = |d: usize| -> u32 {
            let (from, to) = arcs[d / 2];
            if d % 2 == 0 {
                to
            } else {
                from
            }
        };
        let mut next_in_face = vec![0usize; num_darts];
        for d in 0..num_darts {
            let v = head(d) as usize;
            let rev = d ^ 1;
            let rot = &rotation[v];
            let pos = rot.iter().position(|&x| x == rev).expect("dart in rotation");
            next_in_face[d] = rot[(pos + rot.len() - 1) % rot.len()];
        }
        // Orbits; the orbit of the clockwise dart of boundary arc 0 is the
        // outer face and gets remapped out of the id range.
        let mut face_of_dart = vec![usize::MAX; num_darts];
        let mut orbit_count = 0usize;
        for start in 0..num_darts {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let f = orbit_count;
            orbit_count += 1;
            let mut d = start;
            loop {
                face_of_dart[d] = f;
                d = next_in_face[d];
                if d == start {
                    break;
                }
            }
        }
        let outer_id = face_of_dart[1];
        for f in face_of_dart.iter_mut() {
            *f = match (*f).cmp(&outer_id) {
                core::cmp::Ordering::Less => *f,
                core::cmp::Ordering::Equal => OUTER,
                core::cmp::Ordering::Greater => *f - 1,
            };
        }
        let face_count = orbit_count - 1;

        // Wedge face at the end corner of side k: the corner node of block
        // k+1; its leaving boundary arc's forward dart.
        let corner_faces: [usize; 3] = core::array::from_fn(|k| {
            let node = base[(k + 1) % 3];
            face_of_dart[2 * node as usize]
        });
        let mut crossing_corner_faces = Vec::new();
        for v in num_b..num_nodes {
            for &d in &rotation[v as usize] {
                crossing_corner_faces.push(face_of_dart[d]);
            }
        }

        LocalTriangle {
            arcs,
            kind,
            arcs_by_side,
            next_in_face,
            face_of_dart,
            face_count,
            corner_faces,
            crossing_corner_faces,
        }
    }
}

/// Analyze the complement of the diagram's curves.
pub(crate) fn analyze_regions(dia: &Diagram<'_>) -> RegionReport {
    let tri = dia.triangulation();
    let nt = tri.num_triangles();
    let local: Vec<LocalTriangle> = (0..nt as u32).map(|t| LocalTriangle::build(dia, t)).collect();

    let mut face_base = vec![0usize; nt + 1];
    for t in 0..nt {
        face_base[t + 1] = face_base[t] + local[t].face_count;
    }
    let mut uf = UnionFind::new(face_base[nt]);
    for e in 0..tri.num_edges() as u32 {
        let h1 = tri.edge_rep(e);
        let h2 = tri.partner(h1);
        let (t1, t2) = ((h1 / 3) as usize, (h2 / 3) as usize);
        let n = dia.points_on_edge(e) as u32;
        for k in 0..=n {
            let f1 = local[t1].face_of_side_arc(h1, k);
            let f2 = local[t2].face_of_side_arc(h2, n - k);
            uf.union(face_base[t1] + f1, face_base[t2] + f2);
        }
    }

    let total_faces = face_base[nt];
    let mut region_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut region_of_face = vec![0usize; total_faces];
    for f in 0..total_faces {
        let r = uf.find(f);
        let next = region_of_root.len();
        let id = *region_of_root.entry(r).or_insert(next);
        region_of_face[f] = id;
    }
    let nr = region_of_root.len();

    let mut v_count = vec![0i64; nr];
    let mut e_count = vec![0i64; nr];
    let mut f_count = vec![0i64; nr];
    for &r in &region_of_face {
        f_count[r] += 1;
    }
    // Interior edges, one per glued boundary-arc pair; cut vertices at the
    // passage points, one per flanking pair.
    for e in 0..tri.num_edges() as u32 {
        let h1 = tri.edge_rep(e);
        let t1 = (h1 / 3) as usize;
        let n = dia.points_on_edge(e) as u32;
        for k in 0..=n {
            let f1 = local[t1].face_of_side_arc(h1, k);
            e_count[region_of_face[face_base[t1] + f1]] += 1;
        }
        for k in 0..n {
            for flank in [k, k + 1] {
                let f1 = local[t1].face_of_side_arc(h1, flank);
                v_count[region_of_face[face_base[t1] + f1]] += 1;
            }
        }
    }
    // Boundary edges, one per chord-segment side; cut corners at crossings.
    for (t, lt) in local.iter().enumerate() {
        for (a, &k) in lt.kind.iter().enumerate() {
            if k == ArcKind::Chord {
                for d in [2 * a, 2 * a + 1] {
                    let f = lt.face_of_dart[d];
                    debug_assert_ne!(f, OUTER);
                    e_count[region_of_face[face_base[t] + f]] += 1;
                }
            }
        }
        for &f in &lt.crossing_corner_faces {
            v_count[region_of_face[face_base[t] + f]] += 1;
        }
    }
    // Punctures: interior vertices, one each; all wedges around a puncture
    // land in one region.
    let corner_punct = tri.puncture_of_corner();
    let mut punctures = vec![0u32; nr];
    let mut puncture_region: BTreeMap<u32, usize> = BTreeMap::new();
    for t in 0..nt {
        for corner in 0..3u32 {
            let p = corner_punct[(3 * t as u32 + corner) as usize];
            let f = local[t].corner_faces[corner as usize];
            let r = region_of_face[face_base[t] + f];
            if let Some(&prev) = puncture_region.get(&p) {
                debug_assert_eq!(prev, r, "puncture wedges split across regions");
            } else {
                puncture_region.insert(p, r);
                v_count[r] += 1;
                punctures[r] += 1;
            }
        }
    }

    let euler: Vec<i64> = (0..nr).map(|r| v_count[r] - e_count[r] + f_count[r]).collect();
    let circuits = trace_circuits(dia, &local, &face_base, &region_of_face, nr);
    RegionReport { euler, punctures, circuits }
}

/// Walk the boundary circles of every region. From a chord dart, follow the
/// face boundary; each boundary arc passed is a hop across the triangulation
/// edge beneath it, recorded as the entering half-edge of the push-off.
fn trace_circuits(
    dia: &Diagram<'_>,
    local: &[LocalTriangle],
    face_base: &[usize],
    region_of_face: &[usize],
    nr: usize,
) -> Vec<Vec<Vec<u32>>> {
    let tri = dia.triangulation();
    let mut circuits: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nr];
    let mut seen: Vec<Vec<bool>> =
        local.iter().map(|lt| vec![false; lt.next_in_face.len()]).collect();
    for t0 in 0..local.len() {
        for d0 in 0..local[t0].next_in_face.len() {
            if seen[t0][d0] || local[t0].kind[d0 / 2] != ArcKind::Chord {
                continue;
            }
            let region = region_of_face[face_base[t0] + local[t0].face_of_dart[d0]];
            let mut word: Vec<u32> = Vec::new();
            let (mut t, mut d) = (t0, d0);
            loop {
                seen[t][d] = true;
                let mut cur = local[t].next_in_face[d];
                loop {
                    match local[t].kind[cur / 2] {
                        ArcKind::Chord => {
                            d = cur;
                            break;
                        }
                        ArcKind::Boundary(side) => {
                            let h = 3 * t as u32 + side;
                            let partner = tri.partner(h);
                            let t2 = (partner / 3) as usize;
                            let n = dia.points_on_edge(tri.edge_of(h)) as u32;
                            let a = cur / 2;
                            let k = a as u32 - local[t].arcs_by_side[side as usize][0];
                            word.push(partner);
                            let a2 = local[t2].arcs_by_side[(partner % 3) as usize]
                                [(n - k) as usize];
                            t = t2;
                            cur = local[t].next_in_face[2 * a2 as usize];
                        }
                    }
                }
                if (t, d) == (t0, d0) {
                    break;
                }
            }
            circuits[region].push(word);
        }
    }
    circuits
}


struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{trace_weights, Diagram};
    use crate::surface::{standard_triangulation, SurfaceSig};

    #[test]
    fn torus_filling_pair_regions() {
        let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        let a = trace_weights(&tri, &[0, 1, 1]).unwrap().remove(0);
        let b = trace_weights(&tri, &[1, 0, 1]).unwrap().remove(0);
        let dia = Diagram::new(&tri, alloc::vec![&a, &b]);
        let rep = analyze_regions(&dia);
        // Meridian and longitude fill: one disk region with the puncture.
        assert_eq!(rep.euler.len(), 1);
        assert_eq!(rep.euler[0], 1);
        assert_eq!(rep.punctures[0], 1);
        assert!(rep.all_disks_with_at_most_one_puncture());
    }

    #[test]
    fn torus_single_curve_region() {
        let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
        let a = trace_weights(&tri, &[0, 1, 1]).unwrap().remove(0);
        let dia = Diagram::new(&tri, alloc::vec![&a]);
        let rep = analyze_regions(&dia);
        // Complement of one curve: an annulus holding the puncture.
        assert_eq!(rep.euler.len(), 1);
        assert_eq!(rep.euler[0], 0);
        assert_eq!(rep.punctures[0], 1);
        assert!(!rep.all_disks_with_at_most_one_puncture());
        // Two boundary circles.
        assert_eq!(rep.circuits[0].len(), 2);
    }
}
