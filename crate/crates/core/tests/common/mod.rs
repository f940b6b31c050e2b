#![allow(dead_code)]

use gyrolab::{FiniteGyrogroup, FiniteTopology, Subset};

pub fn z(n: usize) -> FiniteGyrogroup {
    FiniteGyrogroup::cyclic(n).unwrap()
}

pub fn prod(fs: &[FiniteGyrogroup]) -> FiniteGyrogroup {
    FiniteGyrogroup::product(fs).unwrap()
}

/// S3 as permutations of {0,1,2}, listed in lexicographic order, composed as
/// `(p ⊕ q)(i) = p(q(i))`.
pub fn s3() -> FiniteGyrogroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let rows = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    FiniteGyrogroup::group_as_gyrogroup(rows).unwrap()
}

pub fn k16() -> Option<FiniteGyrogroup> {
    let k = gyrolab::models::load_k16().unwrap();
    if k.is_none() {
        eprintln!("warning: K16 data file missing, skipping K16 cases");
    }
    k
}

/// Fixtures with at most 12 elements.
pub fn small_fixtures() -> Vec<(&'static str, FiniteGyrogroup)> {
    vec![
        ("Z1", z(1)),
        ("Z2", z(2)),
        ("Z4", z(4)),
        ("Z8", z(8)),
        ("Z2xZ2", prod(&[z(2), z(2)])),
        ("Z2xZ3", prod(&[z(2), z(3)])),
        ("S3", s3()),
        ("Z3xZ3", prod(&[z(3), z(3)])),
        ("Z2xZ2xZ2", prod(&[z(2), z(2), z(2)])),
        ("Z2xZ2xZ3", prod(&[z(2), z(2), z(3)])),
    ]
}

/// All finite fixtures, including K16 and K16 × Z2 when the table is present.
pub fn fixtures() -> Vec<(&'static str, FiniteGyrogroup)> {
    let mut out = small_fixtures();
    out.push(("Z2xS3", prod(&[z(2), s3()])));
    if let Some(k) = k16() {
        out.push(("K16xZ2", prod(&[k.clone(), z(2)])));
        out.push(("K16", k));
    }
    out
}

pub fn set(n: usize, xs: &[usize]) -> Subset {
    Subset::from_indices(n, xs.iter().copied()).unwrap()
}

/// Every topology on an `n`-point carrier, `n ≤ 4`, found by testing every
/// family of subsets that contains ∅ and the carrier.
pub fn all_topologies(n: usize) -> Vec<FiniteTopology> {
    assert!(n <= 4);
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..1 << middle.len() {
        let fam: Vec<u64> = (0..middle.len())
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| middle[i])
            .collect();
        let closed = fam.iter().all(|&a| {
            fam.iter().all(|&b| {
                let u = a | b;
                let i = a & b;
                (u == full || fam.contains(&u)) && (i == 0 || fam.contains(&i))
            })
        });
        if closed {
            let opens = std::iter::once(0)
                .chain(fam)
                .chain(std::iter::once(full))
                .map(|m| Subset::from_bits(n, m).unwrap());
            out.push(FiniteTopology::new(n, opens).unwrap());
        }
    }
    out
}

/// Closure computed from the open-set list: intersection of all closed
/// supersets.
pub fn naive_closure(t: &FiniteTopology, s: &Subset) -> Subset {
    let n = t.size();
    t.opens()
        .iter()
        .map(|u| u.complement())
        .filter(|c| s.is_subset(c))
        .fold(Subset::full(n), |acc, c| acc.intersection(&c))
}

/// Interior computed from the open-set list: union of all open subsets.
pub fn naive_interior(t: &FiniteTopology, s: &Subset) -> Subset {
    t.opens()
        .iter()
        .filter(|u| u.is_subset(s))
        .fold(Subset::empty(t.size()), |acc, u| acc.union(u))
}
