use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{GyroError, Result};
use crate::models::FiniteGyrogroup;
use crate::report::{Verdict, VerificationReport};
use crate::sub::{
    gyr_invariant_set, left_translate, negate, sumset, translate, CanonicalDecomposition, Side,
};
use crate::subset::Subset;

use super::{is_discrete_family, is_nowhere_dense, FiniteTopology, SUBSET_SCAN_BOUND};

/// A finite gyrogroup with a topology on its carrier and an optional
/// neighbourhood base at `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TopoGyroModel {
    pub gyro: FiniteGyrogroup,
    pub topology: FiniteTopology,
    pub base: Option<Vec<Subset>>,
}

impl TopoGyroModel {
    pub fn new(
        gyro: FiniteGyrogroup,
        topology: FiniteTopology,
        base: Option<Vec<Subset>>,
    ) -> Result<Self> {
        if gyro.order() != topology.size() {
            return Err(GyroError::WidthMismatch {
                expected: gyro.order(),
                got: topology.size(),
            });
        }
        if let Some(b) = &base {
            for u in b {
                u.check_width(gyro.order())?;
                if !u.contains(0) || !topology.is_open(u) {
                    return Err(GyroError::InvalidTopology(format!(
                        "base member {u} is not an open set containing 0"
                    )));
                }
            }
            // every open containing 0 contains M_0
            let m0 = topology.minimal_open(0);
            if !b.contains(&m0) {
                return Err(GyroError::InvalidTopology(format!(
                    "base misses the minimal open {m0} at 0"
                )));
            }
        }
        Ok(Self {
            gyro,
            topology,
            base,
        })
    }

    /// The supplied base, or `{M_0}`.
    pub fn base_or_default(&self) -> Vec<Subset> {
        self.base
            .clone()
            .unwrap_or_else(|| vec![self.topology.minimal_open(0)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    /// Witness `(g, U)` with `g ⊕ U` not open.
    pub left: Verdict<(usize, Subset)>,
    /// Witness `(g, U)` with `U ⊕ g` not open.
    pub right: Verdict<(usize, Subset)>,
    /// Witness `U` with `⊖U` not open.
    pub inverse: Verdict<Subset>,
    /// Witness `(a, b)` with `M_a ⊕ M_b ⊄ M_{a⊕b}`.
    pub joint: Verdict<(usize, usize)>,
    /// Witness: the first base member moved by a gyration, or none when
    /// `joint` or `inverse` already fails.
    pub strongly: Verdict<Subset>,
    pub base: Vec<Subset>,
}

/// Classifies a finite model as a left/right/joint topological gyrogroup,
/// with continuous inverse, and as strongly topological.
///
/// Translations and inversion are bijections, so they map every open set to
/// an open set iff they map every `M_x` to an open set. Joint continuity at
/// `(a, b)` holds iff `M_a ⊕ M_b ⊆ M_{a⊕b}`. The strong form uses the
/// supplied base, or `{M_0}`, which lies in every base.
pub fn classify_continuity(model: &TopoGyroModel) -> ContinuityReport {
    let g = &model.gyro;
    let t = &model.topology;
    let n = g.order();
    let mins: Vec<Subset> = (0..n).map(|x| t.minimal_open(x)).collect();

    let side = |s: Side| {
        let w = (0..n).find_map(|a| {
            mins.iter().find_map(|m| {
                let img = translate(g, a, m, s).expect("width checked");
                (!t.is_open(&img)).then_some((a, *m))
            })
        });
        Verdict::from_witness(w)
    };
    let left = side(Side::Left);
    let right = side(Side::Right);
    let inverse =
        Verdict::from_witness(mins.iter().find(|m| !t.is_open(&negate(g, m))).copied());
    let joint = Verdict::from_witness(
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !sumset(g, &mins[a], &mins[b]).is_subset(&mins[g.op_idx(a, b)])),
    );
    let base = model.base_or_default();
    let strongly = if joint.holds && inverse.holds {
        let moved = base
            .iter()
            .find(|u| !gyr_invariant_set(g, u).map(|v| v.holds).unwrap_or(false))
            .copied();
        Verdict::from_witness(moved)
    } else {
        Verdict {
            holds: false,
            witness: None,
        }
    };
    ContinuityReport {
        left,
        right,
        inverse,
        joint,
        strongly,
        base,
    }
}

/// The family `ξ = {A : interior(H_A) ≠ ∅}` of block-index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiFamily {
    pub blocks: usize,
    /// Members in increasing mask order.
    pub members: Vec<Vec<usize>>,
    pub upward_closed: bool,
    pub intersection_closed: bool,
}

/// Computes `ξ` for a decomposition. `interior(H_A) ≠ ∅` iff `A` contains the
/// set `β_x` of blocks met by `M_x` for some `x`, so `ξ` is the upward
/// closure of the `β_x`, and it is closed under intersection iff
/// `β_x ∩ β_y ∈ ξ` for all `x, y`.
pub fn xi_family(model: &TopoGyroModel, dec: &CanonicalDecomposition) -> Result<XiFamily> {
    let m = dec.blocks.len();
    if m > SUBSET_SCAN_BOUND {
        return Err(GyroError::BoundExceeded {
            n: m,
            bound: SUBSET_SCAN_BOUND,
        });
    }
    let n = model.gyro.order();
    for b in &dec.blocks {
        b.check_width(n)?;
    }
    let t = &model.topology;
    let mut members = Vec::new();
    let mut flags = vec![false; 1 << m];
    for mask in 0u64..1 << m {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let h = dec.union_of_blocks(&idx)?;
        if !t.interior(&h)?.is_empty() {
            flags[mask as usize] = true;
            members.push(idx);
        }
    }
    let upward_closed = (0..1usize << m)
        .filter(|&a| flags[a])
        .all(|a| (0..m).all(|i| flags[a | 1 << i]));
    let gens: Vec<usize> = (0..n)
        .map(|x| {
            let mx = t.minimal_open(x);
            (0..m)
                .filter(|&i| !dec.blocks[i].is_disjoint(&mx))
                .fold(0usize, |acc, i| acc | 1 << i)
        })
        .collect();
    let intersection_closed = upward_closed
        && gens
            .iter()
            .all(|&a| gens.iter().all(|&b| flags[a & b]));
    Ok(XiFamily {
        blocks: m,
        members,
        upward_closed,
        intersection_closed,
    })
}

/// Checks, for each index set `A_i`, that `H_{A_i}` is closed and nowhere
/// dense, and that the `H_{A_i}` cover `G`.
pub fn cover_by_nowhere_dense(
    model: &TopoGyroModel,
    dec: &CanonicalDecomposition,
    index_sets: &[Vec<usize>],
) -> Result<VerificationReport> {
    let m = dec.blocks.len();
    let mut seen = vec![false; m];
    for a in index_sets {
        for &i in a {
            if i >= m {
                return Err(GyroError::Domain(format!(
                    "block index {i} out of range 0..{m}"
                )));
            }
            seen[i] = true;
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(GyroError::Precondition(format!(
            "block {i} is not covered by any index set"
        )));
    }
    let t = &model.topology;
    let mut report = VerificationReport::new(true);
    let mut union = Subset::empty(model.gyro.order());
    for (k, a) in index_sets.iter().enumerate() {
        let h = dec.union_of_blocks(a)?;
        union = union.union(&h);
        let wit = || Some(vec![Value::from(k), serde_json::to_value(h).unwrap_or(Value::Null)]);
        report.record(
            format!("H_A{k} closed"),
            if t.is_closed(&h) { None } else { wit() },
            1,
        );
        report.record(
            format!("H_A{k} nowhere dense"),
            if is_nowhere_dense(t, &h)? { None } else { wit() },
            1,
        );
    }
    report.record(
        "union is G",
        (!union.is_full()).then(|| vec![serde_json::to_value(union.complement()).unwrap_or(Value::Null)]),
        index_sets.len() as u64,
    );
    Ok(report)
}

/// The three set conditions for a family `H_1, …, H_k` with neighbourhoods
/// `V_x`: (1) each `H_i` is closed and discrete as a subspace; (2) the `H_i`
/// are pairwise disjoint; (3) each `{V_x : x ∈ H_i}` is a discrete family.
pub fn yl5_conditions(
    t: &FiniteTopology,
    hs: &[Subset],
    v: &BTreeMap<usize, Subset>,
) -> Result<VerificationReport> {
    t.check_scan_bound()?;
    let n = t.size();
    for h in hs {
        h.check_width(n)?;
        for x in h.iter() {
            let vx = v.get(&x).ok_or_else(|| {
                GyroError::Precondition(format!("assignment missing point {x}"))
            })?;
            vx.check_width(n)?;
            if !vx.contains(x) || !t.is_open(vx) {
                return Err(GyroError::Precondition(format!(
                    "V_{x} = {vx} is not an open set containing {x}"
                )));
            }
        }
    }
    let mut report = VerificationReport::new(true);

    let w = hs.iter().enumerate().find_map(|(i, h)| {
        if !t.is_closed(h) {
            return Some(vec![Value::from(i), Value::from("not closed")]);
        }
        h.iter()
            .find(|&x| t.minimal_open(x).intersection(h) != Subset::singleton(n, x))
            .map(|x| vec![Value::from(i), Value::from(x)])
    });
    report.record("(1) each H_i closed and discrete", w, hs.len() as u64);

    let w = hs.iter().enumerate().find_map(|(i, a)| {
        hs.iter()
            .enumerate()
            .skip(i + 1)
            .find(|(_, b)| !a.is_disjoint(b))
            .map(|(j, _)| vec![Value::from(i), Value::from(j)])
    });
    report.record("(2) pairwise disjoint", w, (hs.len() * hs.len()) as u64);

    let mut w = None;
    for (i, h) in hs.iter().enumerate() {
        let fam: Vec<Subset> = h.iter().map(|x| v[&x]).collect();
        if let Some(p) = is_discrete_family(t, &fam)?.witness {
            w = Some(vec![Value::from(i), Value::from(p)]);
            break;
        }
    }
    report.record("(3) each {V_x : x ∈ H_i} discrete", w, hs.len() as u64);
    Ok(report)
}

/// Greedy maximal `V`-disjoint set: scan the carrier in index order and keep
/// `x` when `x ⊕ V` misses every kept translate. The report checks that the
/// kept translates are pairwise disjoint, that the set is maximal, and that
/// `A ⊕ (V ⊕ V) = G`.
///
/// Preconditions: `V` is open, contains `0`, is symmetric and is fixed by
/// every gyration.
pub fn disjoint_translate_cover(
    model: &TopoGyroModel,
    v: &Subset,
) -> Result<(Subset, VerificationReport)> {
    let g = &model.gyro;
    let n = g.order();
    v.check_width(n)?;
    if !v.contains(0) || !model.topology.is_open(v) {
        return Err(GyroError::Precondition(format!(
            "V = {v} is not an open set containing 0"
        )));
    }
    if negate(g, v) != *v {
        return Err(GyroError::Precondition(format!("V = {v} is not symmetric")));
    }
    if let Some((x, y)) = gyr_invariant_set(g, v)?.witness {
        return Err(GyroError::Precondition(format!(
            "V = {v} is moved by gyr[{x}, {y}]"
        )));
    }
    let mut a = Subset::empty(n);
    let mut covered = Subset::empty(n);
    for x in 0..n {
        let tx = left_translate(g, x, v);
        if tx.is_disjoint(&covered) {
            a.insert(x);
            covered = covered.union(&tx);
        }
    }

    let mut report = VerificationReport::new(true);
    let translates: Vec<(usize, Subset)> = a.iter().map(|x| (x, left_translate(g, x, v))).collect();
    let w = translates.iter().enumerate().find_map(|(i, (x, tx))| {
        translates[i + 1..]
            .iter()
            .find(|(_, ty)| !tx.is_disjoint(ty))
            .map(|(y, _)| vec![Value::from(*x), Value::from(*y)])
    });
    report.record("translates pairwise disjoint", w, (a.len() * a.len()) as u64);
    let w = (0..n)
        .find(|&x| left_translate(g, x, v).is_disjoint(&covered))
        .map(|x| vec![Value::from(x)]);
    report.record("maximal", w, n as u64);
    let reach = sumset(g, &a, &sumset(g, v, v));
    report.record(
        "A ⊕ (V ⊕ V) = G",
        (!reach.is_full()).then(|| vec![serde_json::to_value(reach.complement()).unwrap_or(Value::Null)]),
        n as u64,
    );
    Ok((a, report))
}
