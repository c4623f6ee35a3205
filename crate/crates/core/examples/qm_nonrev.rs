use curvecx_core::farey::{farey_distance, FareySlope, IntMatrix};
use curvecx_core::qm::*;

fn main() {
    // Continued-fraction blocks (1,1,2,3): not cyclically equal to their
    // reversal, so this element is not conjugate to its inverse.
    let m = IntMatrix::new(17, 5, 10, 3).unwrap();
    let base = FareySlope::new(0, 1).unwrap();
    for n in 1..=6u32 {
        println!("d(x0, m^{n} x0) = {}", farey_distance(base, m.pow(n).act(base)));
    }
    for steps in [1u32, 2] {
        let w = axis_segment(m, base, steps);
        let wl = (w.len() - 1) as u64;
        for weight in 1..wl {
            let spec = QmSpec::new(w.clone(), weight, base).unwrap();
            let engine = FareyQm::new(3, 1, orbit_landmarks(m, &w, 7), false);
            let mut hs = vec![];
            for n in 1..=6u32 {
                let g = m.pow(n);
                let (h, _) = h_w(&engine, &spec, &g.act(base), 1_000_000).unwrap();
                hs.push(h);
            }
            println!("steps {steps} |w|={wl} W={weight}: h = {:?}", hs);
        }
    }
}
