use curvecx_core::farey::{farey_distance, FareySlope, IntMatrix};
use curvecx_core::qm::*;

fn main() {
    let m = IntMatrix::new(2, 1, 1, 1).unwrap();
    let base = FareySlope::new(0, 1).unwrap();
    let w = axis_segment(m, base, 2);
    let wl = (w.len() - 1) as u64;
    let spec = QmSpec::new(w.clone(), QmSpec::<FareySlope>::default_weight(wl), base).unwrap();
    let engine = FareyQm { landmarks: orbit_landmarks(m, &w, 14), ..Default::default() };
    for n in 1..=10u32 {
        let g = m.pow(n);
        let target = g.act(base);
        let d = farey_distance(base, target);
        let fwd = discounted_distance(&engine, &base, &target, &spec, 100_000).unwrap();
        let rev = discounted_distance(&engine, &base, &target, &spec.reversed(), 100_000).unwrap();
        println!("n={n}: d={d} c_fwd={} c_rev={} copies_fwd={}", fwd.c, rev.c, fwd.copies);
    }
    // orbit path geodesic?
    for n in [4u32, 8, 12] {
        let d = farey_distance(base, m.pow(n).act(base));
        println!("d(x0, m^{n} x0) = {d} (orbit path length {n})");
    }
}
