//! Finite topologies stored as bitmask families, and exact checkers for the
//! topological notions used with (strongly) topological gyrogroups.
//!
//! Every point `x` of a finite space has a smallest open neighbourhood
//! `M_x`, the intersection of all opens containing `x`. Most checkers reduce
//! to `M_x`:
//!
//! * `interior(S) = {x : M_x ⊆ S}` and `closure(S) = {x : M_x ∩ S ≠ ∅}`;
//! * `x` and `y` are separated by disjoint opens iff `M_x ∩ M_y = ∅`;
//! * a family is discrete iff every `M_x` meets at most one member, since
//!   shrinking a neighbourhood never increases the number of members it meets;
//! * in the collectionwise Hausdorff test, choosing `V_p = M_p` is optimal
//!   for the same reason.

mod model;
mod props;

pub use model::{
    classify_continuity, cover_by_nowhere_dense, disjoint_translate_cover, xi_family,
    yl5_conditions, ContinuityReport, TopoGyroModel, XiFamily,
};
pub use props::{
    cellularity, dense_family_check, dispersion_character, is_collectionwise_hausdorff,
    is_discrete_family, is_hausdorff, is_irresolvable, is_maximal, is_nowhere_dense,
    is_submaximal, isolated_points, property_report, DenseFamilyVerdict, Dispersion,
    FilterViolation, MaximalWitness, PropertyReport, PropertyVerdict,
};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{GyroError, Result};
use crate::subset::{full_mask, Subset};

/// Largest carrier accepted by the checkers that enumerate all `2ⁿ` subsets.
pub const SUBSET_SCAN_BOUND: usize = 20;

/// A topology on `{0, …, n-1}`: the sorted, deduplicated list of its open
/// sets, plus the minimal open set of each point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<u64>,
    minimal: Vec<u64>,
}

impl FiniteTopology {
    /// Validates `opens` as a topology: it must contain `∅` and the carrier
    /// and be closed under union and intersection. Nothing is added.
    pub fn new(n: usize, opens: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(GyroError::InvalidTopology(format!(
                "carrier size {n} outside 1..=64"
            )));
        }
        let mut masks = Vec::new();
        for s in opens {
            s.check_width(n)?;
            masks.push(s.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        let full = full_mask(n);
        if masks.first() != Some(&0) {
            return Err(GyroError::InvalidTopology("∅ is not listed as open".into()));
        }
        if masks.last() != Some(&full) {
            return Err(GyroError::InvalidTopology("the carrier is not listed as open".into()));
        }
        let minimal = minimal_opens(n, &masks);
        for (x, &m) in minimal.iter().enumerate() {
            if masks.binary_search(&m).is_err() {
                return Err(GyroError::InvalidTopology(format!(
                    "not closed under intersection: the intersection of the opens containing {x} is {} and is not listed",
                    Subset::from_bits(n, m)?
                )));
            }
        }
        // With every M_x open, a family closed under union and intersection is
        // exactly the set of unions of the M_x.
        let generated = union_closure(&minimal, Some(masks.len()));
        match generated {
            Some(g) if g == masks => Ok(Self { n, opens: masks, minimal }),
            _ => {
                let missing = union_closure(&minimal, None)
                    .unwrap_or_default()
                    .into_iter()
                    .find(|m| masks.binary_search(m).is_err());
                Err(GyroError::InvalidTopology(match missing {
                    Some(m) => format!(
                        "not closed under union: {} is missing",
                        Subset::from_bits(n, m)?
                    ),
                    None => "family is not closed under union".into(),
                }))
            }
        }
    }

    /// The topology generated by `family` as a subbasis.
    pub fn generate_from_subbasis(n: usize, family: &[Subset]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(GyroError::InvalidTopology(format!(
                "carrier size {n} outside 1..=64"
            )));
        }
        let mut masks = vec![0, full_mask(n)];
        for s in family {
            s.check_width(n)?;
            masks.push(s.bits());
        }
        let minimal = minimal_opens(n, &masks);
        let opens = union_closure(&minimal, None).expect("unbounded closure");
        Ok(Self { n, opens, minimal })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        let singles: Vec<Subset> = (0..n).map(|i| Subset::singleton(n, i)).collect();
        Self::generate_from_subbasis(n, &singles)
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        Self::generate_from_subbasis(n, &[])
    }

    /// `{∅, {0}, {0, 1}}`.
    pub fn sierpinski() -> Self {
        Self::new(
            2,
            [Subset::empty(2), Subset::singleton(2, 0), Subset::full(2)],
        )
        .expect("Sierpiński space is a topology")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> Vec<Subset> {
        self.opens
            .iter()
            .map(|&m| Subset::from_bits(self.n, m).expect("valid width"))
            .collect()
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub(crate) fn minimal_masks(&self) -> &[u64] {
        &self.minimal
    }

    /// `M_x`, the smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> Subset {
        Subset::from_bits(self.n, self.minimal[x]).expect("valid width")
    }

    pub(crate) fn is_open_mask(&self, s: u64) -> bool {
        let mut rest = s;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            if self.minimal[x] & !s != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        s.width() == self.n && self.is_open_mask(s.bits())
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        s.width() == self.n && self.is_open_mask(s.complement().bits())
    }

    pub(crate) fn interior_mask(&self, s: u64) -> u64 {
        (0..self.n)
            .filter(|&x| self.minimal[x] & !s == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub(crate) fn closure_mask(&self, s: u64) -> u64 {
        (0..self.n)
            .filter(|&x| self.minimal[x] & s != 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub(crate) fn is_dense_mask(&self, s: u64) -> bool {
        self.minimal.iter().all(|&m| m & s != 0)
    }

    pub fn interior(&self, s: &Subset) -> Result<Subset> {
        s.check_width(self.n)?;
        Subset::from_bits(self.n, self.interior_mask(s.bits()))
    }

    pub fn closure(&self, s: &Subset) -> Result<Subset> {
        s.check_width(self.n)?;
        Subset::from_bits(self.n, self.closure_mask(s.bits()))
    }

    pub fn is_dense(&self, s: &Subset) -> Result<bool> {
        s.check_width(self.n)?;
        Ok(self.is_dense_mask(s.bits()))
    }

    pub(crate) fn check_scan_bound(&self) -> Result<()> {
        if self.n > SUBSET_SCAN_BOUND {
            Err(GyroError::BoundExceeded {
                n: self.n,
                bound: SUBSET_SCAN_BOUND,
            })
        } else {
            Ok(())
        }
    }

    /// Parses the `.topo` format: the first non-comment line is `n`; every
    /// following line is one open set, written as comma-separated indices or a
    /// `0x` mask (`{}` or `0x0` for the empty set). `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(GyroError::Parse {
            line: 1,
            message: "missing size line".into(),
        })?;
        let n: usize = header.parse().map_err(|_| GyroError::Parse {
            line: line_no,
            message: format!("expected carrier size, found {header:?}"),
        })?;
        if n == 0 || n > 64 {
            return Err(GyroError::Parse {
                line: line_no,
                message: format!("carrier size {n} outside 1..=64"),
            });
        }
        let mut opens = Vec::new();
        for (line_no, line) in lines {
            let s = Subset::parse(n, line).map_err(|e| GyroError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            opens.push(s);
        }
        Self::new(n, opens)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for s in self.opens() {
            let _ = writeln!(out, "{s}");
        }
        out
    }
}

/// `M_x = ⋂{U ∈ family : x ∈ U}`, or the carrier when no member contains `x`.
fn minimal_opens(n: usize, family: &[u64]) -> Vec<u64> {
    let full = full_mask(n);
    (0..n)
        .map(|x| {
            family
                .iter()
                .filter(|&&u| u >> x & 1 == 1)
                .fold(full, |acc, &u| acc & u)
        })
        .collect()
}

/// All unions of the given sets (including the empty union), sorted.
/// Returns `None` once more than `limit` sets have been produced.
fn union_closure(generators: &[u64], limit: Option<usize>) -> Option<Vec<u64>> {
    let mut gens: Vec<u64> = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    seen.insert(0);
    let mut frontier = vec![0u64];
    while let Some(u) = frontier.pop() {
        for &g in &gens {
            let v = u | g;
            if seen.insert(v) {
                if limit.is_some_and(|l| seen.len() > l) {
                    return None;
                }
                frontier.push(v);
            }
        }
    }
    Some(seen.into_iter().collect())
}
