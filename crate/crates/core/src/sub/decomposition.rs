use serde::Serialize;
use serde_json::Value;

use crate::error::{GyroError, Result};
use crate::models::FiniteGyrogroup;
use crate::report::VerificationReport;
use crate::subset::Subset;

use super::{generate, is_subgyrogroup, left_translate, negate, translate, Side};

/// Increasing chain of generated subgyrogroups `G₀ ⊊ G₁ ⊊ … ⊊ G_m = G` and
/// its difference blocks `H_α = G_α \ ⋃_{β<α} G_β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub enumeration: Vec<usize>,
    pub chain: Vec<Subset>,
    pub blocks: Vec<Subset>,
}

impl CanonicalDecomposition {
    /// Index of the block containing `g`.
    pub fn block_of(&self, g: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(g))
    }

    /// `H_A`, the union of the blocks indexed by `a`.
    pub fn union_of_blocks(&self, a: &[usize]) -> Result<Subset> {
        let n = self.blocks.first().map_or(0, |b| b.width());
        let mut out = Subset::empty(n);
        for &i in a {
            let b = self.blocks.get(i).ok_or_else(|| {
                GyroError::Domain(format!(
                    "block index {i} out of range 0..{}",
                    self.blocks.len()
                ))
            })?;
            out = out.union(b);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or(Value::Null)
    }
}

/// Runs the chain construction along `enumeration` (which must list the
/// carrier with the identity first). Start from `G₀ = ⟨{0}⟩`; while the union
/// `B` of the chain so far is not all of `G`, take the first enumerated
/// element `g ∉ B` and append `⟨B ∪ {g}⟩`. The chain is increasing, so `B` is
/// its last member.
pub fn canonical_decomposition(
    g: &FiniteGyrogroup,
    enumeration: &[usize],
) -> Result<CanonicalDecomposition> {
    let n = g.order();
    if enumeration.len() != n {
        return Err(GyroError::InvalidEnumeration(format!(
            "expected {n} entries, got {}",
            enumeration.len()
        )));
    }
    let mut seen = Subset::empty(n);
    for &e in enumeration {
        if e >= n || seen.contains(e) {
            return Err(GyroError::InvalidEnumeration(format!(
                "{enumeration:?} is not a permutation of 0..{n}"
            )));
        }
        seen.insert(e);
    }
    if enumeration[0] != 0 {
        return Err(GyroError::InvalidEnumeration(format!(
            "enumeration must start with the identity 0, starts with {}",
            enumeration[0]
        )));
    }

    let mut chain = vec![generate(g, &Subset::singleton(n, 0))?];
    loop {
        let b = *chain.last().expect("chain is nonempty");
        if b.is_full() {
            break;
        }
        let next = enumeration
            .iter()
            .copied()
            .find(|&e| !b.contains(e))
            .expect("B ≠ G leaves an element outside");
        let mut seed = b;
        seed.insert(next);
        chain.push(generate(g, &seed)?);
    }
    let mut blocks = Vec::with_capacity(chain.len());
    let mut below = Subset::empty(n);
    for c in &chain {
        blocks.push(c.difference(&below));
        below = below.union(c);
    }
    Ok(CanonicalDecomposition {
        enumeration: enumeration.to_vec(),
        chain,
        blocks,
    })
}

/// Exhaustively checks the finite decomposition properties:
/// (1) every `G_α` is a subgyrogroup; (2) the chain is strictly increasing;
/// (4) `G_α = ⋃_{υ≤α} H_υ`; (5) the blocks partition `G`;
/// (6) `g ∈ H_α`, `α < β` implies `g ⊕ H_β = H_β ⊕ g = H_β`;
/// (7) `H_α = ⊖H_α`.
/// The cardinal-arithmetic properties (3) and (8) have no finite form and are
/// listed as out of scope.
pub fn verify_decomposition(
    g: &FiniteGyrogroup,
    dec: &CanonicalDecomposition,
) -> Result<VerificationReport> {
    let n = g.order();
    for s in dec.chain.iter().chain(&dec.blocks) {
        s.check_width(n)?;
    }
    let mut report = VerificationReport::new(true);
    let ix = |i: usize| Value::from(i);

    let mut w = None;
    for (i, c) in dec.chain.iter().enumerate() {
        let bad = match is_subgyrogroup(g, c) {
            Ok(v) => !v.holds,
            Err(_) => true,
        };
        if bad {
            w = Some(vec![ix(i)]);
            break;
        }
    }
    report.record("(1) each G_α is a subgyrogroup", w, dec.chain.len() as u64);

    let w = dec
        .chain
        .windows(2)
        .position(|p| !(p[0].is_subset(&p[1]) && p[0] != p[1]))
        .map(|i| vec![ix(i), ix(i + 1)]);
    report.record("(2) chain strictly increasing", w, dec.chain.len() as u64);

    let w = if dec.chain.len() != dec.blocks.len() {
        Some(vec![ix(dec.chain.len()), ix(dec.blocks.len())])
    } else {
        let mut acc = Subset::empty(n);
        let mut bad = None;
        for (i, (c, b)) in dec.chain.iter().zip(&dec.blocks).enumerate() {
            acc = acc.union(b);
            if acc != *c {
                bad = Some(vec![ix(i)]);
                break;
            }
        }
        bad
    };
    report.record("(4) G_α is the union of H_υ, υ ≤ α", w, dec.chain.len() as u64);

    let mut w = None;
    let mut acc = Subset::empty(n);
    'p: for (i, b) in dec.blocks.iter().enumerate() {
        if b.is_empty() {
            w = Some(vec![ix(i)]);
            break;
        }
        for (j, c) in dec.blocks.iter().enumerate().skip(i + 1) {
            if !b.is_disjoint(c) {
                w = Some(vec![ix(i), ix(j)]);
                break 'p;
            }
        }
        acc = acc.union(b);
    }
    if w.is_none() && !acc.is_full() {
        w = acc.complement().first().map(|x| vec![Value::from(format!("uncovered {x}"))]);
    }
    report.record("(5) blocks partition G", w, dec.blocks.len() as u64);

    let mut w = None;
    let mut tested = 0;
    'six: for (alpha, ha) in dec.blocks.iter().enumerate() {
        for x in ha.iter() {
            for (beta, hb) in dec.blocks.iter().enumerate().skip(alpha + 1) {
                tested += 1;
                let left = left_translate(g, x, hb);
                let right = translate(g, x, hb, Side::Right)?;
                if left != *hb || right != *hb {
                    w = Some(vec![ix(x), ix(alpha), ix(beta)]);
                    break 'six;
                }
            }
        }
    }
    report.record("(6) g ⊕ H_β = H_β ⊕ g = H_β for g ∈ H_α, α < β", w, tested);

    let w = dec
        .blocks
        .iter()
        .position(|b| negate(g, b) != *b)
        .map(|i| vec![ix(i)]);
    report.record("(7) H_α = ⊖H_α", w, dec.blocks.len() as u64);

    report.mark_out_of_scope("(3) |G_α| = |α| (infinite cardinal arithmetic)");
    report.mark_out_of_scope("(8) cofinal unions have cardinality κ (infinite cardinal arithmetic)");
    Ok(report)
}

/// `D = (h ⊕ (g ⊕ H_A)) \ H_A`, together with whether `D ⊆ G_max(α,β)`
/// where `g ∈ H_α` and `h ∈ H_β`.
pub fn translate_defect(
    g: &FiniteGyrogroup,
    dec: &CanonicalDecomposition,
    a: &[usize],
    x: usize,
    y: usize,
) -> Result<(Subset, bool)> {
    let h_a = dec.union_of_blocks(a)?;
    let alpha = dec
        .block_of(x)
        .ok_or_else(|| GyroError::Domain(format!("{x} lies in no block")))?;
    let beta = dec
        .block_of(y)
        .ok_or_else(|| GyroError::Domain(format!("{y} lies in no block")))?;
    let moved = left_translate(g, y, &left_translate(g, x, &h_a));
    let d = moved.difference(&h_a);
    let bound = dec.chain[alpha.max(beta)];
    Ok((d, d.is_subset(&bound)))
}
