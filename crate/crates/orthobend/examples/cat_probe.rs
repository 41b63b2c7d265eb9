use orthobend::flow::{bend_minimum, constrained_bend_min, ConstraintSet};
use orthobend::oracle::{enumerate_representations, satisfies};
use orthobend::planar::for_each_plane_graph;
use orthobend::{gen, Bend};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let t0 = std::time::Instant::now();
    let cat = gen::connected_catalog(6);
    let mut pgs = 0usize;
    let mut checks = 0usize;
    for (gi, g) in cat.iter().enumerate() {
        let mut pgi = 0usize;
        for_each_plane_graph(g, 6, &mut |pg| {
            pgs += 1;
            pgi += 1;
            let reps = enumerate_representations(pg, 4).unwrap();
            let enum_min = reps.iter().map(|r| r.total_bends()).min();
            let flow = bend_minimum(pg).unwrap().expect("unconstrained is feasible");
            let fb = flow.total_bends();
            if fb <= 4 {
                assert_eq!(Some(fb), enum_min, "graph {gi} pg {pgi}");
            } else {
                assert_eq!(None, enum_min, "graph {gi} pg {pgi}");
            }
            if g.edge_count() == 0 {
                return; // no corners or edges to constrain
            }
            let mut rng = ChaCha8Rng::seed_from_u64((gi as u64) << 20 | pgi as u64);
            for _ in 0..20 {
                let mut cons = ConstraintSet::new();
                // each corner may appear in at most one fix
                let mut covered: Vec<std::collections::BTreeSet<usize>> =
                    vec![Default::default(); g.n()];
                for _ in 0..rng.gen_range(1..=3) {
                    match rng.gen_range(0..10) {
                        0..=4 => {
                            let v = rng.gen_range(0..g.n());
                            if g.degree(v) < 2 { continue; }
                            let i = rng.gen_range(0..g.degree(v));
                            if !covered[v].insert(i) { continue; }
                            let a = 90 * rng.gen_range(1..=3) as u16;
                            cons.fix_corner_angle(v, i, a).unwrap();
                        }
                        5..=8 => {
                            let e = rng.gen_range(0..g.edge_count());
                            let len = rng.gen_range(0..=2);
                            let s: Vec<Bend> = (0..len)
                                .map(|_| if rng.gen() { Bend::L } else { Bend::R })
                                .collect();
                            let _ = cons.fix_edge_bends(e, s);
                        }
                        _ => {
                            let v = rng.gen_range(0..g.n());
                            if g.degree(v) < 3 { continue; }
                            let start = rng.gen_range(0..g.degree(v));
                            let next = (start + 1) % g.degree(v);
                            if covered[v].contains(&start) || covered[v].contains(&next) {
                                continue;
                            }
                            covered[v].insert(start);
                            covered[v].insert(next);
                            let total = 90 * rng.gen_range(2..=4) as u32;
                            cons.fix_corner_sum(v, start, 2, total).unwrap();
                        }
                    }
                }
                checks += 1;
                let flow = constrained_bend_min(pg, &cons).unwrap();
                let best = reps
                    .iter()
                    .filter(|r| satisfies(r, &cons))
                    .map(|r| r.total_bends())
                    .min();
                match flow {
                    None => assert_eq!(best, None, "graph {gi} pg {pgi}"),
                    Some(rep) if rep.total_bends() <= 4 => {
                        assert_eq!(best, Some(rep.total_bends()), "graph {gi} pg {pgi}")
                    }
                    Some(_) => assert_eq!(best, None, "graph {gi} pg {pgi}"),
                }
            }
        })
        .unwrap();
    }
    println!("{} graphs, {} plane graphs, {} constrained checks, wall {:?}", cat.len(), pgs, checks, t0.elapsed());
}
