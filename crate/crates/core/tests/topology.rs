mod common;

use std::collections::BTreeMap;

use common::{all_topologies, naive_closure, naive_interior, prod, set, z};
use gyrolab::sub::{canonical_decomposition, negate, open_l_subgyrogroup, sumset, translate, Side};
use gyrolab::topo::{
    cellularity, classify_continuity, dense_family_check, dispersion_character,
    disjoint_translate_cover, is_collectionwise_hausdorff, is_discrete_family, is_hausdorff,
    is_irresolvable, is_maximal, is_nowhere_dense, is_submaximal, isolated_points, xi_family,
    yl5_conditions, MaximalWitness,
};
use gyrolab::{FiniteGyrogroup, FiniteTopology, Subset, TopoGyroModel};

fn subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(move |m| Subset::from_bits(n, m).unwrap())
}

fn naive_dense(t: &FiniteTopology, s: &Subset) -> bool {
    naive_closure(t, s).is_full()
}

fn tops() -> Vec<FiniteTopology> {
    (1..=4).flat_map(all_topologies).collect()
}

#[test]
fn topology_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| all_topologies(n).len()).collect();
    assert_eq!(counts, vec![1, 4, 29, 355]);
}

#[test]
fn interior_and_closure_against_open_lists() {
    for t in tops() {
        let n = t.size();
        for s in subsets(n) {
            let int = t.interior(&s).unwrap();
            let cl = t.closure(&s).unwrap();
            assert_eq!(int, naive_interior(&t, &s));
            assert_eq!(cl, naive_closure(&t, &s));
            assert_eq!(cl, t.interior(&s.complement()).unwrap().complement());
            assert_eq!(t.interior(&int).unwrap(), int);
            assert_eq!(t.closure(&cl).unwrap(), cl);
            assert_eq!(t.is_dense(&s).unwrap(), naive_dense(&t, &s));
            for u in subsets(n).filter(|u| s.is_subset(u)) {
                assert!(int.is_subset(&t.interior(&u).unwrap()));
                assert!(cl.is_subset(&t.closure(&u).unwrap()));
            }
        }
    }
}

#[test]
fn text_round_trip_and_subbasis() {
    for t in tops() {
        assert_eq!(FiniteTopology::parse(&t.serialize()).unwrap(), t);
        let again = FiniteTopology::generate_from_subbasis(t.size(), &t.opens()).unwrap();
        assert_eq!(again, t);
    }
}

#[test]
fn submaximal_irresolvable_against_definitions() {
    for t in tops() {
        let n = t.size();
        let dense: Vec<Subset> = subsets(n).filter(|s| naive_dense(&t, s)).collect();
        let sm = dense.iter().all(|d| t.opens().contains(d));
        let v = is_submaximal(&t).unwrap();
        assert_eq!(v.holds, sm);
        if let Some(w) = v.witness {
            assert!(naive_dense(&t, &w) && !t.is_open(&w));
        }
        let ir = !dense.iter().any(|d| naive_dense(&t, &d.complement()));
        let v = is_irresolvable(&t).unwrap();
        assert_eq!(v.holds, ir);
        if let Some((a, b)) = v.witness {
            assert!(a.is_disjoint(&b) && naive_dense(&t, &a) && naive_dense(&t, &b));
        }
    }
}

#[test]
fn maximal_against_all_finer_topologies() {
    for n in 1..=4 {
        let all = all_topologies(n);
        for t in &all {
            let opens = t.opens();
            let iso = |s: &FiniteTopology| !isolated_points(s).is_empty();
            let finer = all.iter().filter(|f| {
                *f != t && opens.iter().all(|u| f.is_open(u))
            });
            let oracle = !iso(t) && finer.clone().all(iso);
            let v = is_maximal(t).unwrap();
            assert_eq!(v.holds, oracle, "{}", t.serialize());
            match v.witness {
                Some(MaximalWitness::IsolatedPoints(p)) => assert_eq!(p, isolated_points(t)),
                Some(MaximalWitness::Refinement(a)) => {
                    let mut fam = opens.clone();
                    fam.push(a);
                    let r = FiniteTopology::generate_from_subbasis(n, &fam).unwrap();
                    assert!(!iso(&r));
                }
                None => {}
            }
        }
    }
}

#[test]
fn submaximal_spaces_have_closed_discrete_nowhere_dense_sets() {
    for t in tops().iter().filter(|t| is_submaximal(t).unwrap().holds) {
        let n = t.size();
        for s in subsets(n).filter(|s| is_nowhere_dense(t, s).unwrap()) {
            assert!(t.is_closed(&s));
            for x in s.iter() {
                assert_eq!(t.minimal_open(x).intersection(&s), Subset::singleton(n, x));
            }
        }
    }
}

#[test]
fn nowhere_dense_definition() {
    for t in tops() {
        for s in subsets(t.size()) {
            let cl = naive_closure(&t, &s);
            assert_eq!(is_nowhere_dense(&t, &s).unwrap(), naive_interior(&t, &cl).is_empty());
        }
    }
}

fn max_disjoint(opens: &[Subset], used: Subset, from: usize) -> usize {
    (from..opens.len())
        .filter(|&i| opens[i].is_disjoint(&used))
        .map(|i| 1 + max_disjoint(opens, used.union(&opens[i]), i + 1))
        .max()
        .unwrap_or(0)
}

#[test]
fn cellularity_and_dispersion_against_open_lists() {
    for t in tops() {
        let n = t.size();
        let nonempty: Vec<Subset> = t.opens().into_iter().filter(|u| !u.is_empty()).collect();
        let c = cellularity(&t);
        assert_eq!(c, max_disjoint(&nonempty, Subset::empty(n), 0));
        let mut mins: Vec<Subset> = (0..n).map(|x| t.minimal_open(x)).collect();
        mins.sort();
        mins.dedup();
        assert!(c <= mins.len());
        let d = dispersion_character(&t);
        for x in 0..n {
            let smallest = nonempty.iter().filter(|u| u.contains(x)).map(|u| u.len()).min();
            assert_eq!(Some(d.per_point[x]), smallest);
        }
        assert_eq!(d.global, nonempty.iter().map(|u| u.len()).min().unwrap());
    }
    for n in 1..=10 {
        assert_eq!(cellularity(&FiniteTopology::discrete(n).unwrap()), n);
    }
}

#[test]
fn hausdorff_finite_spaces_are_discrete() {
    for t in tops() {
        let n = t.size();
        let sep = (0..n).all(|x| {
            (0..n).filter(|&y| y != x).all(|y| {
                t.opens().iter().any(|u| {
                    u.contains(x) && t.opens().iter().any(|v| v.contains(y) && u.is_disjoint(v))
                })
            })
        });
        assert_eq!(is_hausdorff(&t).holds, sep);
        if sep {
            assert!(isolated_points(&t).is_full());
        }
    }
}

fn naive_discrete(t: &FiniteTopology, fam: &[Subset]) -> bool {
    (0..t.size()).all(|x| {
        t.opens()
            .iter()
            .any(|u| u.contains(x) && fam.iter().filter(|f| !f.is_disjoint(u)).count() <= 1)
    })
}

#[test]
fn discrete_families_against_definition() {
    for t in all_topologies(3) {
        let subs: Vec<Subset> = subsets(3).collect();
        for a in &subs {
            for b in &subs {
                let fam = [*a, *b];
                assert_eq!(is_discrete_family(&t, &fam).unwrap().holds, naive_discrete(&t, &fam));
            }
            assert!(is_discrete_family(&t, &[*a]).unwrap().holds);
        }
    }
}

/// Some open `V_p ∋ p` for each `p ∈ A` making the family discrete, by trying
/// every assignment.
fn separable(t: &FiniteTopology, a: &[usize], chosen: &mut Vec<Subset>) -> bool {
    if chosen.len() == a.len() {
        return naive_discrete(t, chosen);
    }
    let p = a[chosen.len()];
    for u in t.opens().into_iter().filter(|u| u.contains(p)) {
        chosen.push(u);
        if separable(t, a, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[test]
fn collectionwise_hausdorff_against_all_assignments() {
    let mut failing = 0;
    for t in tops() {
        let n = t.size();
        let oracle = subsets(n).all(|a| {
            let singles: Vec<Subset> = a.iter().map(|p| Subset::singleton(n, p)).collect();
            !naive_discrete(&t, &singles) || separable(&t, &a.to_vec(), &mut Vec::new())
        });
        let v = is_collectionwise_hausdorff(&t).unwrap();
        assert_eq!(v.holds, oracle, "{}", t.serialize());
        if !v.holds {
            failing += 1;
        }
    }
    assert!(failing > 0);
}

#[test]
fn four_point_collectionwise_hausdorff_failure() {
    let t = FiniteTopology::generate_from_subbasis(
        4,
        &[set(4, &[2]), set(4, &[0, 2]), set(4, &[1, 2]), set(4, &[3])],
    )
    .unwrap();
    assert_eq!(is_collectionwise_hausdorff(&t).unwrap().witness, Some(set(4, &[0, 1])));
}

#[test]
fn dense_filters_against_definition() {
    for t in tops() {
        let n = t.size();
        let dense: Vec<Subset> = subsets(n).filter(|s| naive_dense(&t, s)).collect();
        for d in &dense {
            let fam: Vec<Subset> = dense.iter().filter(|e| d.is_subset(e)).copied().collect();
            let v = dense_family_check(&t, &fam).unwrap();
            assert!(v.filter.holds);
            let ultra = !dense.iter().any(|e| {
                !fam.contains(e) && fam.iter().all(|f| naive_dense(&t, &e.intersection(f)))
            });
            assert_eq!(v.ultrafilter.holds, ultra);
        }
    }
}

fn naive_continuity(m: &TopoGyroModel) -> [bool; 4] {
    let g = &m.gyro;
    let t = &m.topology;
    let n = g.order();
    let opens = t.opens();
    let left = (0..n).all(|a| opens.iter().all(|u| t.is_open(&translate(g, a, u, Side::Left).unwrap())));
    let right = (0..n).all(|a| opens.iter().all(|u| t.is_open(&translate(g, a, u, Side::Right).unwrap())));
    let inverse = opens.iter().all(|u| t.is_open(&negate(g, u)));
    let joint = opens.iter().all(|w| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                !w.contains(g.op_idx(a, b))
                    || opens.iter().filter(|u| u.contains(a)).any(|u| {
                        opens
                            .iter()
                            .filter(|v| v.contains(b))
                            .any(|v| sumset(g, u, v).is_subset(w))
                    })
            })
        })
    });
    [left, right, inverse, joint]
}

#[test]
fn continuity_against_definitions_on_four_points() {
    for g in [z(4), prod(&[z(2), z(2)])] {
        for t in all_topologies(4) {
            let m = TopoGyroModel::new(g.clone(), t.clone(), None).unwrap();
            let c = classify_continuity(&m);
            let [l, r, i, j] = naive_continuity(&m);
            assert_eq!([c.left.holds, c.right.holds, c.inverse.holds, c.joint.holds], [l, r, i, j]);
            if c.left.holds {
                for a in 0..4 {
                    for u in t.opens() {
                        assert!(t.is_open(&translate(&g, a, &u, Side::Left).unwrap()));
                    }
                }
            }
            if c.strongly.holds {
                let (h, rep) = open_l_subgyrogroup(&m, &t.minimal_open(0)).unwrap();
                assert!(rep.overall && h.contains(0));
            }
        }
    }
}

#[test]
fn xi_against_interiors() {
    let g = z(4);
    for t in all_topologies(4) {
        let m = TopoGyroModel::new(g.clone(), t.clone(), None).unwrap();
        for e in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 2, 1]] {
            let dec = canonical_decomposition(&g, &e).unwrap();
            let k = dec.blocks.len();
            let xi = xi_family(&m, &dec).unwrap();
            let members: Vec<Vec<usize>> = (0u32..1 << k)
                .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|a| !t.interior(&dec.union_of_blocks(a).unwrap()).unwrap().is_empty())
                .collect();
            assert_eq!(xi.members, members);
            let has = |a: &Vec<usize>| members.contains(a);
            let up = members.iter().all(|a| {
                (0..k).all(|i| {
                    let mut b = a.clone();
                    if !b.contains(&i) {
                        b.push(i);
                        b.sort();
                    }
                    has(&b)
                })
            });
            let cap = members.iter().all(|a| {
                members
                    .iter()
                    .all(|b| has(&a.iter().filter(|x| b.contains(x)).copied().collect()))
            });
            assert_eq!(xi.upward_closed, up);
            assert_eq!(xi.intersection_closed, cap);
        }
    }
}

#[test]
fn yl5_on_discrete_partitions() {
    let d = FiniteTopology::discrete(6).unwrap();
    let v: BTreeMap<usize, Subset> = (0..6).map(|x| (x, Subset::singleton(6, x))).collect();
    let parts = [set(6, &[0, 3]), set(6, &[1, 4, 5]), set(6, &[2])];
    assert!(yl5_conditions(&d, &parts, &v).unwrap().overall);
    let ind = FiniteTopology::indiscrete(6).unwrap();
    let v: BTreeMap<usize, Subset> = (0..6).map(|x| (x, Subset::full(6))).collect();
    let r = yl5_conditions(&ind, &parts, &v).unwrap();
    assert!(!r.check("(1) each H_i closed and discrete").unwrap().passed);
    assert!(!r.check("(3) each {V_x : x ∈ H_i} discrete").unwrap().passed);
}

#[test]
fn translate_cover_on_strong_models() {
    for g in [z(4), prod(&[z(2), z(2)])] {
        for t in all_topologies(4) {
            let m = TopoGyroModel::new(g.clone(), t.clone(), None).unwrap();
            if !classify_continuity(&m).strongly.holds {
                continue;
            }
            let v = t.minimal_open(0);
            let (a, r) = disjoint_translate_cover(&m, &v).unwrap();
            assert!(r.overall, "{}", r.render_text());
            assert_eq!(sumset(&g, &a, &sumset(&g, &v, &v)), Subset::full(4));
        }
    }
}

#[test]
fn sixteen_point_submaximal_scan() {
    let g: FiniteGyrogroup = prod(&[z(4), z(4)]);
    let sub = set(16, &[0, 4, 8, 12]);
    let cosets: Vec<Subset> = (0..4).map(|a| translate(&g, a, &sub, Side::Left).unwrap()).collect();
    let t = FiniteTopology::generate_from_subbasis(16, &cosets).unwrap();
    let v = is_submaximal(&t).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert!(t.is_dense(&w).unwrap() && !t.is_open(&w));
}
