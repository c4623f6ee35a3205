use curvecx_core::farey::{FareySlope, IntMatrix};
use curvecx_core::qm::*;

fn main() {
    let m = IntMatrix::new(2, 1, 1, 1).unwrap();
    let base = FareySlope::new(0, 1).unwrap();
    let w = axis_segment(m, base, 2);
    println!("axis segment w (len {}): {:?}", w.len()-1, w.iter().map(|s| format!("{s}")).collect::<Vec<_>>());
    let wl = (w.len() - 1) as u64;
    let spec = QmSpec::new(w.clone(), QmSpec::<FareySlope>::default_weight(wl), base).unwrap();
    let engine = FareyQm::new(3, 1, orbit_landmarks(m, &w, 14), false);
    let t0 = std::time::Instant::now();
    let mut prev = None;
    let mut strict = true;
    let mut min_inc = i64::MAX;
    for n in 1..=12u32 {
        let g = m.pow(n);
        let (h, capped) = h_w(&engine, &spec, &g.act(base), 100_000).unwrap();
        if let Some(p) = prev { if h <= p { strict = false; } min_inc = min_inc.min(h - p); }
        prev = Some(h);
        println!("h(m^{n}) = {h} (capped {capped})");
    }
    println!("strictly increasing: {strict}, min increment: {min_inc}, time {:?}", t0.elapsed());
    // defect scan
    let gens = [IntMatrix::new(1,1,0,1).unwrap(), IntMatrix::new(1,0,1,1).unwrap()];
    let t1 = std::time::Instant::now();
    let rep = defect_scan_farey(&engine, &spec, &gens, 10, 60, 100_000, 11).unwrap();
    println!("defect over {} pairs: max {} (capped {}) in {:?}", rep.pairs, rep.max_defect, rep.any_capped, t1.elapsed());
}
