//! Subgyrogroups of finite gyrogroups: membership and L-subgyrogroup tests,
//! generation, translations, gyration-invariant sets, covers by translates,
//! and canonical decompositions.

mod cover;
mod decomposition;

pub use cover::{bounded_cover_for_sub, covering_number, CoverCertificate, EXACT_COVER_BOUND};
pub use decomposition::{
    canonical_decomposition, translate_defect, verify_decomposition, CanonicalDecomposition,
};

use serde::Serialize;
use serde_json::Value;

use crate::error::{GyroError, Result};
use crate::gyro::{gyr, to_json, Gyrogroup, Mode, Points};
use crate::models::FiniteGyrogroup;
use crate::report::{Verdict, VerificationReport};
use crate::subset::Subset;
use crate::topo::TopoGyroModel;

/// Why a subset fails to be a subgyrogroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureViolation {
    /// `a ⊕ b ∉ H`.
    Sum(usize, usize),
    /// `⊖a ∉ H`.
    Inverse(usize),
}

/// Left or right translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `a ⊕ S` as a set.
pub fn left_translate(g: &FiniteGyrogroup, a: usize, s: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for x in s.iter() {
        out.insert(g.op_idx(a, x));
    }
    out
}

/// `S ⊕ T = {s ⊕ t}`.
pub fn sumset(g: &FiniteGyrogroup, s: &Subset, t: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for a in s.iter() {
        out = out.union(&left_translate(g, a, t));
    }
    out
}

/// `⊖S`.
pub fn negate(g: &FiniteGyrogroup, s: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for a in s.iter() {
        out.insert(g.inv_idx(a));
    }
    out
}

/// `gyr[x, y](S)`.
pub fn gyr_image(g: &FiniteGyrogroup, x: usize, y: usize, s: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for z in s.iter() {
        out.insert(g.gyr_idx(x, y, z));
    }
    out
}

/// `{g ⊕ s}` or `{s ⊕ g}`.
pub fn translate(g: &FiniteGyrogroup, a: usize, s: &Subset, side: Side) -> Result<Subset> {
    g.check_domain(&a)?;
    s.check_width(g.order())?;
    Ok(match side {
        Side::Left => left_translate(g, a, s),
        Side::Right => {
            let mut out = Subset::empty(g.order());
            for x in s.iter() {
                out.insert(g.op_idx(x, a));
            }
            out
        }
    })
}

/// `H` is a subgyrogroup iff it is closed under `⊕` and `⊖`. Sums are
/// scanned before inverses, pairs in index order.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, h: &Subset) -> Result<Verdict<ClosureViolation>> {
    h.check_width(g.order())?;
    if h.is_empty() {
        return Err(GyroError::EmptySubset);
    }
    for a in h.iter() {
        for b in h.iter() {
            if !h.contains(g.op_idx(a, b)) {
                return Ok(Verdict::no(ClosureViolation::Sum(a, b)));
            }
        }
    }
    Ok(Verdict::from_witness(
        h.iter().find(|&a| !h.contains(g.inv_idx(a))).map(ClosureViolation::Inverse),
    ))
}

/// `H` is an L-subgyrogroup iff it is a subgyrogroup and
/// `gyr[a, h](H) = H` for every `a ∈ G`, `h ∈ H`. The witness is `(a, h)`.
pub fn is_l_subgyrogroup(g: &FiniteGyrogroup, h: &Subset) -> Result<Verdict<(usize, usize)>> {
    let sub = is_subgyrogroup(g, h)?;
    if let Some(v) = sub.witness {
        return Err(GyroError::Precondition(format!(
            "{h} is not a subgyrogroup ({v:?})"
        )));
    }
    for a in 0..g.order() {
        for x in h.iter() {
            if gyr_image(g, a, x, h) != *h {
                return Ok(Verdict::no((a, x)));
            }
        }
    }
    Ok(Verdict::yes())
}

/// The subgyrogroup generated by `X`: iterate
/// `Y ← ⊖(Y ⊕ Y) ∪ (Y ⊕ Y)` from `Y₀ = X ∪ ⊖X ∪ {0}` to a fixpoint.
pub fn generate(g: &FiniteGyrogroup, x: &Subset) -> Result<Subset> {
    x.check_width(g.order())?;
    if x.is_empty() {
        return Err(GyroError::EmptySubset);
    }
    let mut y = x.union(&negate(g, x));
    y.insert(0);
    loop {
        let yy = sumset(g, &y, &y);
        let next = yy.union(&negate(g, &yy));
        // 0 ∈ Y gives Y ⊆ Y ⊕ Y, so the iterates increase
        if next == y {
            return Ok(y);
        }
        y = next;
    }
}

/// Generation on an arbitrary carrier from explicit elements. Fails with
/// [`GyroError::PartialClosure`] once more than `budget` distinct elements
/// have been produced, which is the expected outcome on continuous carriers.
pub fn generate_elements<G: Gyrogroup + ?Sized>(
    g: &G,
    xs: &[G::Element],
    budget: usize,
) -> Result<Vec<G::Element>> {
    if xs.is_empty() {
        return Err(GyroError::EmptySubset);
    }
    let mut y: Vec<G::Element> = Vec::new();
    let push = |y: &mut Vec<G::Element>, e: G::Element| -> Result<bool> {
        if y.iter().any(|m| g.approx_eq(m, &e)) {
            return Ok(false);
        }
        y.push(e);
        if y.len() > budget {
            return Err(GyroError::PartialClosure { budget });
        }
        Ok(true)
    };
    push(&mut y, g.identity())?;
    for x in xs {
        g.check_domain(x)?;
        push(&mut y, x.clone())?;
        push(&mut y, g.inverse(x))?;
    }
    loop {
        let mut grew = false;
        let snapshot = y.clone();
        for a in &snapshot {
            for b in &snapshot {
                let s = g.op(a, b);
                grew |= push(&mut y, g.inverse(&s))?;
                grew |= push(&mut y, s)?;
            }
        }
        if !grew {
            return Ok(y);
        }
    }
}

/// `U ∪ ⊖U`.
pub fn symmetrize(g: &FiniteGyrogroup, u: &Subset) -> Result<Subset> {
    u.check_width(g.order())?;
    Ok(u.union(&negate(g, u)))
}

/// `gyr[x, y](U) = U` for all `x, y ∈ G`, exhaustively. Witness `(x, y)`.
pub fn gyr_invariant_set(g: &FiniteGyrogroup, u: &Subset) -> Result<Verdict<(usize, usize)>> {
    u.check_width(g.order())?;
    for x in 0..g.order() {
        for y in 0..g.order() {
            if gyr_image(g, x, y, u) != *u {
                return Ok(Verdict::no((x, y)));
            }
        }
    }
    Ok(Verdict::yes())
}

/// Gyration invariance of a region of a (possibly continuous) carrier. The
/// region is given by a membership predicate and finite `members` drawn from
/// it. The check is that `gyr[x, y](u)` stays in the region for every member
/// `u` and every tested `(x, y)`. Inclusion for all `x, y` already forces
/// equality, because `gyr[x, y]` is onto.
///
/// The witness is `[x, y, u]`.
pub fn gyr_invariant_region<G, F>(
    g: &G,
    members: &[G::Element],
    contains: F,
    mode: Mode,
) -> Result<Verdict<Vec<Value>>>
where
    G: Gyrogroup + ?Sized,
    F: Fn(&G::Element) -> bool,
{
    let pts = Points::new(g, mode)?;
    let (w, _) = pts.find2(|x, y| {
        members
            .iter()
            .find(|u| !contains(&gyr(g, x, y, u)))
            .map(|u| vec![to_json(x), to_json(y), to_json(u)])
    });
    Ok(Verdict::from_witness(w))
}

/// The finite form of the open L-subgyrogroup construction: from
/// `H₀ = U` iterate `Hₙ₊₁ = ⊖(Hₙ ⊕ Hₙ) ∪ (Hₙ ⊕ Hₙ)` and take the union. The
/// report checks that the result is a subgyrogroup, is fixed by every
/// gyration, and is open.
pub fn open_l_subgyrogroup(
    model: &TopoGyroModel,
    u: &Subset,
) -> Result<(Subset, VerificationReport)> {
    let g = &model.gyro;
    u.check_width(g.order())?;
    if !u.contains(0) {
        return Err(GyroError::Precondition(format!("0 ∉ U = {u}")));
    }
    if !model.topology.is_open(u) {
        return Err(GyroError::Precondition(format!("U = {u} is not open")));
    }
    if let Some((x, y)) = gyr_invariant_set(g, u)?.witness {
        return Err(GyroError::Precondition(format!(
            "U = {u} is moved by gyr[{x}, {y}]"
        )));
    }
    let mut h = *u;
    loop {
        let hh = sumset(g, &h, &h);
        let next = h.union(&hh).union(&negate(g, &hh));
        if next == h {
            break;
        }
        h = next;
    }
    let mut report = VerificationReport::new(true);
    let n = g.order() as u64;
    let sub = is_subgyrogroup(g, &h)?;
    report.record(
        "subgyrogroup",
        sub.witness.map(|v| vec![to_json(&v)]),
        (h.len() * h.len()) as u64,
    );
    let inv = gyr_invariant_set(g, &h)?;
    report.record(
        "fixed by every gyration",
        inv.witness.map(|(x, y)| vec![Value::from(x), Value::from(y)]),
        n * n,
    );
    let open = model.topology.is_open(&h);
    report.record(
        "open",
        (!open).then(|| vec![to_json(&h)]),
        model.topology.opens().len() as u64,
    );
    Ok((h, report))
}
