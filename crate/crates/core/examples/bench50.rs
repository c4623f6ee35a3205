use curvecx_core::surface::{standard_triangulation, SurfaceSig};
use curvecx_core::curves::{torus_curve, intersection_curves};
use curvecx_core::farey::FareySlope;

fn main() {
    let tri = standard_triangulation(SurfaceSig::new(1, 1, true)).unwrap();
    let mut slopes = vec![FareySlope::INFINITY];
    for q in 1..=50i64 {
        for p in 0..=q {
            if let Ok(s) = FareySlope::new(p, q) {
                if (s.p, s.q) == (p, q) { slopes.push(s); }
            }
        }
    }
    println!("slopes: {}", slopes.len());
    let curves: Vec<_> = slopes.iter().map(|&s| torus_curve(&tri, s).unwrap()).collect();
    let t0 = std::time::Instant::now();
    let mut bad = 0u64;
    let mut done = 0u64;
    for i in 0..slopes.len() {
        for j in i+1..slopes.len() {
            let want = (slopes[i].p * slopes[j].q - slopes[i].q * slopes[j].p).unsigned_abs();
            let got = intersection_curves(&tri, &curves[i], &curves[j]);
            if got != want { bad += 1; }
            done += 1;
        }
        if i % 100 == 0 { println!("  row {} elapsed {:?}", i, t0.elapsed()); }
    }
    println!("checked {} pairs, {} mismatches, in {:?}", done, bad, t0.elapsed());
}
