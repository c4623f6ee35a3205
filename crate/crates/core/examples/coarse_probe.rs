use curvecx_core::coarse::*;
use curvecx_core::complex::ComplexUniverse;
use curvecx_core::surface::{standard_triangulation, SurfaceSig};

fn main() {
    let tri = standard_triangulation(SurfaceSig::new(0, 5, true)).unwrap();
    for cap in [1u32, 2, 3] {
        let t0 = std::time::Instant::now();
        let u = ComplexUniverse::build(&tri, cap);
        println!("(0,5) cap {cap}: {} curves, built in {:?}", u.len(), t0.elapsed());
    }
    let t0 = std::time::Instant::now();
    let u = ComplexUniverse::build(&tri, 2);
    let cal = calibrate_r(&tri, &u, 20, 42).unwrap();
    println!("calibrate 20 samples: R^2 = {} (cap hit: {}), skipped {} in {:?}",
        cal.r_squared, cal.cap_boundary_hit, cal.skipped_non_filling, t0.elapsed());
    let r2 = cal.r_squared;
    let t0 = std::time::Instant::now();
    let ft = probe_fellow_travel(&tri, &u, r2, 10, 1);
    println!("fellow travel: samples {} skipped {} max {} in {:?}", ft.samples, ft.skipped, ft.max_constant, t0.elapsed());
    let t0 = std::time::Instant::now();
    let ax = check_bowditch_axioms(&tri, &u, r2, 5, 1, 4);
    println!("axioms(5): K1={} ({}/{}), K2={} ({}/{}), K3={} ({}/{}), transfer {}/{} in {:?}",
        ax.axiom1.max_constant, ax.axiom1.samples, ax.axiom1.skipped,
        ax.axiom2.max_constant, ax.axiom2.samples, ax.axiom2.skipped,
        ax.axiom3.max_constant, ax.axiom3.samples, ax.axiom3.skipped,
        ax.transfer_checked - ax.transfer_failures, ax.transfer_checked, t0.elapsed());
}
