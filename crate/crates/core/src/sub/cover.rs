use serde::Serialize;

use crate::error::{GyroError, Result};
use crate::models::FiniteGyrogroup;
use crate::subset::Subset;

use super::{is_subgyrogroup, left_translate, sumset};

/// Carriers up to this size get an exact minimum cover; larger ones a greedy
/// upper bound.
pub const EXACT_COVER_BOUND: usize = 20;

/// A set `A` with `A ⊕ U = G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub u: Subset,
    pub a: Subset,
    pub size: usize,
    /// `size` is the minimum over all covers.
    pub exact: bool,
}

impl CoverCertificate {
    /// Re-checks `A ⊕ U = G`.
    pub fn verify(&self, g: &FiniteGyrogroup) -> bool {
        sumset(g, &self.a, &self.u).is_full() && self.size == self.a.len()
    }
}

/// Smallest `A` with `A ⊕ U = G`: exact by iterative-deepening search for
/// `|G| ≤ 20`, greedy otherwise.
pub fn covering_number(g: &FiniteGyrogroup, u: &Subset) -> Result<CoverCertificate> {
    u.check_width(g.order())?;
    if u.is_empty() {
        return Err(GyroError::EmptySubset);
    }
    if !u.contains(0) {
        return Err(GyroError::Precondition(format!("0 ∉ U = {u}")));
    }
    let n = g.order();
    let full = Subset::full(n).bits();
    let translates: Vec<u64> = (0..n).map(|a| left_translate(g, a, u).bits()).collect();

    let (chosen, exact) = if n <= EXACT_COVER_BOUND {
        let lower = n.div_ceil(u.len());
        let mut chosen = Vec::new();
        let mut depth = lower;
        while !search(&translates, full, u.len(), depth, 0, &mut chosen) {
            depth += 1;
        }
        (chosen, true)
    } else {
        (greedy(&translates, full), false)
    };
    let a = Subset::from_indices(n, chosen)?;
    let cert = CoverCertificate {
        u: *u,
        size: a.len(),
        a,
        exact,
    };
    debug_assert!(cert.verify(g));
    Ok(cert)
}

fn search(
    translates: &[u64],
    full: u64,
    block: usize,
    depth: usize,
    covered: u64,
    chosen: &mut Vec<usize>,
) -> bool {
    let uncovered = full & !covered;
    if uncovered == 0 {
        return true;
    }
    // every translate has exactly |U| points
    if depth == 0 || (uncovered.count_ones() as usize) > depth * block {
        return false;
    }
    let x = uncovered.trailing_zeros();
    for (a, &t) in translates.iter().enumerate() {
        if t >> x & 1 == 1 {
            chosen.push(a);
            if search(translates, full, block, depth - 1, covered | t, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn greedy(translates: &[u64], full: u64) -> Vec<usize> {
    let mut covered = 0u64;
    let mut chosen = Vec::new();
    while covered != full {
        let (a, _) = translates
            .iter()
            .enumerate()
            .map(|(a, &t)| (a, (t & !covered).count_ones()))
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))
            .expect("nonempty carrier");
        chosen.push(a);
        covered |= translates[a];
    }
    chosen
}

/// Cover of a subgyrogroup `H` by translates of `W`, built from a cover
/// `B ⊕ V = G`: keep the `c ∈ B` whose translate `c ⊕ V` meets `H`, and
/// replace each by the least-index point `a_c` of `(c ⊕ V) ∩ H`. The result
/// `A` satisfies `|A| ≤ |B|` and is checked to satisfy `A ⊕ W = H`.
///
/// Preconditions: `H` is a subgyrogroup, `B ⊕ V = G`, and
/// `(V ⊕ V) ∩ H ⊆ W ⊆ H`.
pub fn bounded_cover_for_sub(
    g: &FiniteGyrogroup,
    h: &Subset,
    b: &Subset,
    v: &Subset,
    w: &Subset,
) -> Result<Subset> {
    let n = g.order();
    for s in [h, b, v, w] {
        s.check_width(n)?;
    }
    if let Some(viol) = is_subgyrogroup(g, h)?.witness {
        return Err(GyroError::Precondition(format!(
            "H = {h} is not a subgyrogroup ({viol:?})"
        )));
    }
    let bv = sumset(g, b, v);
    if !bv.is_full() {
        return Err(GyroError::Precondition(format!(
            "B ⊕ V = {bv} misses {}",
            bv.complement()
        )));
    }
    let vv_h = sumset(g, v, v).intersection(h);
    if !vv_h.is_subset(w) {
        return Err(GyroError::Precondition(format!(
            "(V ⊕ V) ∩ H = {vv_h} is not inside W = {w}"
        )));
    }
    if !w.is_subset(h) {
        return Err(GyroError::Precondition(format!("W = {w} is not inside H = {h}")));
    }

    let mut a = Subset::empty(n);
    for c in b.iter() {
        if let Some(ac) = left_translate(g, c, v).intersection(h).first() {
            a.insert(ac);
        }
    }
    let aw = sumset(g, &a, w);
    if aw != *h {
        return Err(GyroError::PostconditionFailed(format!(
            "A = {a} gives A ⊕ W = {aw} ≠ H = {h}"
        )));
    }
    Ok(a)
}
