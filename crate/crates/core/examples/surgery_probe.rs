use curvecx_core::complex::{surgery_path, validate_edge_path, SurgeryStrategy};
use curvecx_core::curves::*;
use curvecx_core::surface::{standard_triangulation, SurfaceSig};
use curvecx_core::SeededRng;

fn main() {
    for sig in [SurfaceSig::new(0, 5, true), SurfaceSig::new(1, 2, true)] {
        let tri = standard_triangulation(sig).unwrap();
        let gens = enumerate_curves(&tri, 1);
        println!("{sig:?}: {} generator curves", gens.len());
        let mut rng = SeededRng::new(7);
        let mut max_i = 0u64;
        let mut fails = 0;
        let mut len_viol = 0;
        let t0 = std::time::Instant::now();
        for trial in 0..120 {
            // random twist words applied to random base curves
            let base_a = rng.choose(&gens).clone();
            let base_b = rng.choose(&gens).clone();
            let mut wa = vec![];
            for _ in 0..rng.index(4) {
                wa.push((rng.choose(&gens).clone(), rng.range_i64(-2, 2)));
            }
            let wa: Vec<_> = wa.into_iter().filter(|(_, n)| *n != 0).collect();
            let word = MappingClassWord::new(&tri, wa).unwrap();
            let a = apply_twist_curve(&tri, &word, &base_a).unwrap();
            let b = base_b;
            let i_ab = intersection_curves(&tri, &a, &b);
            max_i = max_i.max(i_ab);
            for strat in [SurgeryStrategy::Basic, SurgeryStrategy::Log] {
                match surgery_path(&tri, &a, &b, strat) {
                    Ok(p) => {
                        if !(p.len() == 1 || validate_edge_path(&tri, &p)) {
                            println!("INVALID PATH trial {trial} {:?}", strat);
                            fails += 1;
                        }
                        let len = (p.len() - 1) as u64;
                        if strat == SurgeryStrategy::Basic && len > 2 * i_ab.max(1) {
                            println!("LEN VIOLATION trial {trial}: len {len} I {i_ab}");
                            len_viol += 1;
                        }
                    }
                    Err(e) => {
                        println!("ERR trial {trial} {:?}: {e} (I={i_ab})", strat);
                        fails += 1;
                    }
                }
            }
        }
        println!("  max I = {max_i}, fails = {fails}, len violations = {len_viol}, time {:?}", t0.elapsed());
    }
}
