use curvecx_core::surface::{standard_triangulation, SurfaceSig};
use curvecx_core::curves::{torus_curve, torus_slope, intersection_curves, intersection_via_diagram, twist_curve};
use curvecx_core::farey::FareySlope;

fn main() {
    let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
    let mut slopes = vec![];
    for q in 0..=13i64 {
        for p in -13..=13i64 {
            if let Ok(s) = FareySlope::new(p, q) {
                if (s.p, s.q) == (p, q) { slopes.push(s); }
            }
        }
    }
    println!("slopes: {}", slopes.len());
    let curves: Vec<_> = slopes.iter().map(|&s| torus_curve(&tri, s).unwrap()).collect();
    // cross-validate fast counter vs diagram engine vs determinant
    let t0 = std::time::Instant::now();
    for i in 0..slopes.len() {
        for j in 0..slopes.len() {
            let want = (slopes[i].p * slopes[j].q - slopes[i].q * slopes[j].p).unsigned_abs();
            let fast = intersection_curves(&tri, &curves[i], &curves[j]);
            assert_eq!(fast, want, "fast I({}, {})", slopes[i], slopes[j]);
        }
    }
    println!("fast path: {} pairs in {:?}", slopes.len()*slopes.len(), t0.elapsed());
    let t1 = std::time::Instant::now();
    for i in (0..slopes.len()).step_by(7) {
        for j in (0..slopes.len()).step_by(5) {
            let want = (slopes[i].p * slopes[j].q - slopes[i].q * slopes[j].p).unsigned_abs();
            let dia = intersection_via_diagram(&tri, &curves[i], &curves[j]);
            assert_eq!(dia, want, "diagram I({}, {})", slopes[i], slopes[j]);
        }
    }
    println!("diagram sample agreed in {:?}", t1.elapsed());
    // twist convention: T_s(v) = v + det(v,s) s
    let dets = |v: FareySlope, s: FareySlope| v.p * s.q - v.q * s.p;
    for &(vp, vq, sp, sq) in &[(1i64,0i64,0i64,1i64),(0,1,1,0),(2,5,1,2),(3,1,-1,2),(5,8,3,5)] {
        let v = FareySlope::new(vp, vq).unwrap();
        let s = FareySlope::new(sp, sq).unwrap();
        let cv = torus_curve(&tri, v).unwrap();
        let cs = torus_curve(&tri, s).unwrap();
        let im = twist_curve(&tri, &cs, 1, &cv).unwrap();
        let got = torus_slope(&tri, &im).unwrap();
        let d = dets(v, s);
        let want = FareySlope::new(v.p + d * s.p, v.q + d * s.q).unwrap();
        assert_eq!(got, want, "T_{s}({v})");
        println!("T_{}({}) = {} ok", s, v, got);
    }
}
