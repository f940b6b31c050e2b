mod common;

use common::{fixtures, k16, set, small_fixtures, z};
use gyrolab::sub::{
    bounded_cover_for_sub, canonical_decomposition, covering_number, generate, is_subgyrogroup,
    sumset, translate_defect, verify_decomposition,
};
use gyrolab::{FiniteGyrogroup, Subset};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Closed under ⊕ and ⊖, nonempty, tested straight from the table.
fn closed(g: &FiniteGyrogroup, m: u64) -> bool {
    let n = g.order();
    m & 1 == 1
        && (0..n).filter(|a| m >> a & 1 == 1).all(|a| {
            m >> g.inv_idx(a) & 1 == 1
                && (0..n)
                    .filter(|b| m >> b & 1 == 1)
                    .all(|b| m >> g.op_idx(a, b) & 1 == 1)
        })
}

fn all_subgyrogroups(g: &FiniteGyrogroup) -> Vec<u64> {
    (0..1u64 << g.order()).filter(|&m| closed(g, m)).collect()
}

#[test]
fn generation_matches_intersection_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, g) in small_fixtures() {
        let n = g.order();
        let subs = all_subgyrogroups(&g);
        for _ in 0..100 {
            let x: u64 = (rng.gen::<u64>() & ((1u64 << n) - 1) & rng.gen::<u64>())
                | 1 << rng.gen_range(0..n);
            let oracle = subs
                .iter()
                .filter(|&&h| x & !h == 0)
                .fold((1u64 << n) - 1, |acc, &h| acc & h);
            let got = generate(&g, &Subset::from_bits(n, x).unwrap()).unwrap();
            assert_eq!(got.bits(), oracle, "{name}: X = {x:#x}");
        }
    }
}

#[test]
fn subgyrogroup_test_matches_table_closure() {
    for (name, g) in small_fixtures() {
        for m in 1..1u64 << g.order() {
            let s = Subset::from_bits(g.order(), m).unwrap();
            assert_eq!(is_subgyrogroup(&g, &s).unwrap().holds, closed(&g, m), "{name} {s}");
        }
    }
}

#[test]
fn decompositions_verify_under_random_enumerations() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, g) in fixtures() {
        let n = g.order();
        for _ in 0..20 {
            let mut rest: Vec<usize> = (1..n).collect();
            rest.shuffle(&mut rng);
            let mut e = vec![0];
            e.extend(rest);
            let dec = canonical_decomposition(&g, &e).unwrap();
            let r = verify_decomposition(&g, &dec).unwrap();
            assert!(r.overall, "{name} {e:?}\n{}", r.render_text());
            assert_eq!(r.checks.len(), 6);
            assert_eq!(r.out_of_scope.len(), 2);
        }
    }
}

#[test]
fn translate_defects_stay_in_the_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in fixtures() {
        let n = g.order();
        let mut e: Vec<usize> = (1..n).collect();
        e.shuffle(&mut rng);
        e.insert(0, 0);
        let dec = canonical_decomposition(&g, &e).unwrap();
        let m = dec.blocks.len();
        for mask in 0u32..1 << m {
            let a: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            for _ in 0..8 {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let (_, ok) = translate_defect(&g, &dec, &a, x, y).unwrap();
                assert!(ok, "{name} A={a:?} x={x} y={y}");
            }
        }
    }
}

#[test]
fn k16_decomposition_along_the_l_subgyrogroups() {
    let Some(k) = k16() else { return };
    let dec = canonical_decomposition(&k, &(0..16).collect::<Vec<_>>()).unwrap();
    assert!(verify_decomposition(&k, &dec).unwrap().overall);
    assert!(dec.chain.iter().all(|c| c.contains(0)));
}

fn brute_force_cover(g: &FiniteGyrogroup, u: &Subset) -> usize {
    let n = g.order();
    (0..1u64 << n)
        .filter(|&a| sumset(g, &Subset::from_bits(n, a).unwrap(), u).is_full())
        .map(|a| a.count_ones() as usize)
        .min()
        .unwrap()
}

#[test]
fn covering_numbers_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, g) in small_fixtures() {
        let n = g.order();
        for _ in 0..6 {
            let u = Subset::from_bits(n, (rng.gen::<u64>() & ((1u64 << n) - 1)) | 1).unwrap();
            let c = covering_number(&g, &u).unwrap();
            assert!(c.exact && c.verify(&g), "{name} {u}");
            assert_eq!(c.size, brute_force_cover(&g, &u), "{name} {u}");
        }
    }
}

#[test]
fn bounded_cover_for_subgroups() {
    let g = FiniteGyrogroup::product(&[z(2), z(2), z(3)]).unwrap();
    let n = g.order();
    for h in all_subgyrogroups(&g) {
        let h = Subset::from_bits(n, h).unwrap();
        let v = set(n, &[0]);
        let b = Subset::full(n);
        let a = bounded_cover_for_sub(&g, &h, &b, &v, &h).unwrap();
        assert_eq!(sumset(&g, &a, &h), h);
        assert!(a.len() <= b.len());
    }
}

#[test]
fn gyro_text_round_trip() {
    for (name, g) in fixtures() {
        let back = FiniteGyrogroup::parse(&g.serialize()).unwrap();
        assert_eq!(back, g, "{name}");
        let bytes = g.serialize().into_bytes();
        assert_eq!(gyrolab::models::load_table(&bytes).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn generate_is_idempotent_and_contains_x(which in 0usize..10, bits in any::<u64>()) {
        let (_, g) = small_fixtures().swap_remove(which);
        let n = g.order();
        let x = Subset::from_bits(n, bits & ((1u64 << n) - 1) | 1 << (bits >> 58) as usize % n).unwrap();
        let h = generate(&g, &x).unwrap();
        prop_assert!(x.is_subset(&h) && h.contains(0));
        prop_assert_eq!(generate(&g, &h).unwrap(), h);
        prop_assert!(is_subgyrogroup(&g, &h).unwrap().holds);
    }

    #[test]
    fn cover_certificates_reverify(n in 2usize..=12, bits in any::<u64>()) {
        let g = z(n);
        let u = Subset::from_bits(n, (bits & ((1u64 << n) - 1)) | 1).unwrap();
        let c = covering_number(&g, &u).unwrap();
        prop_assert!(c.verify(&g));
        prop_assert!(c.size * u.len() >= n);
    }
}
