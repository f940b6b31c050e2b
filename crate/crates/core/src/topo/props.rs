use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{GyroError, Result};
use crate::report::Verdict;
use crate::subset::{full_mask, scan_masks, Subset};

use super::{FiniteTopology, SUBSET_SCAN_BOUND};

fn sub(t: &FiniteTopology, m: u64) -> Subset {
    Subset::from_bits(t.size(), m).expect("mask within carrier")
}

/// Every dense subset is open. Witness: the first dense, non-open subset in
/// mask order.
pub fn is_submaximal(t: &FiniteTopology) -> Result<Verdict<Subset>> {
    t.check_scan_bound()?;
    let w = scan_masks(t.size(), |m| {
        (t.is_dense_mask(m) && !t.is_open_mask(m)).then_some(m)
    });
    Ok(Verdict::from_witness(w.map(|m| sub(t, m))))
}

/// Why [`is_maximal`] answered `false`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "set", rename_all = "snake_case")]
pub enum MaximalWitness {
    /// `τ` itself has isolated points, so the notion does not apply.
    IsolatedPoints(Subset),
    /// `A ∉ τ` whose refinement `⟨τ ∪ {A}⟩` still has no isolated point.
    Refinement(Subset),
}

/// `τ` has no isolated point, but every strictly finer topology has one.
///
/// In `⟨τ ∪ {A}⟩` the minimal open of `x` is `M_x ∩ A` for `x ∈ A` and `M_x`
/// otherwise, so the refinement gains an isolated point iff some `x ∈ A` has
/// `M_x ∩ A = {x}`. Every strictly finer topology contains such a single-set
/// refinement, and isolated points survive further refinement.
pub fn is_maximal(t: &FiniteTopology) -> Result<Verdict<MaximalWitness>> {
    t.check_scan_bound()?;
    let iso = isolated_points(t);
    if !iso.is_empty() {
        return Ok(Verdict::no(MaximalWitness::IsolatedPoints(iso)));
    }
    let mins = t.minimal_masks();
    let w = scan_masks(t.size(), |a| {
        if t.is_open_mask(a) {
            return None;
        }
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros();
            if mins[x as usize] & a == 1 << x {
                return None;
            }
            rest &= rest - 1;
        }
        Some(a)
    });
    Ok(Verdict::from_witness(
        w.map(|m| MaximalWitness::Refinement(sub(t, m))),
    ))
}

/// No two disjoint dense subsets exist. Witness `(D, X \ D)`, both dense.
pub fn is_irresolvable(t: &FiniteTopology) -> Result<Verdict<(Subset, Subset)>> {
    t.check_scan_bound()?;
    let full = full_mask(t.size());
    let w = scan_masks(t.size(), |m| {
        (t.is_dense_mask(m) && t.is_dense_mask(full & !m)).then_some(m)
    });
    Ok(Verdict::from_witness(
        w.map(|m| (sub(t, m), sub(t, full & !m))),
    ))
}

/// First failure found while testing a family of dense sets for the filter
/// laws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilterViolation {
    Empty,
    NotDense { set: Subset },
    NotIntersectionClosed { a: Subset, b: Subset },
    NotUpwardClosed { member: Subset, missing: Subset },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseFamilyVerdict {
    pub filter: Verdict<FilterViolation>,
    /// Witness: a dense set outside the family meeting every member in a
    /// dense set. `None` with `holds == false` when the family is not a filter.
    pub ultrafilter: Verdict<Subset>,
}

/// Filter and ultrafilter tests for a family of dense subsets.
///
/// Upward closure is checked one point at a time (`D ∪ {x}` for `x ∉ D`),
/// which generates all supersets. For the ultrafilter test a finite filter has
/// a least member `D₀`, and `D ∩ D′` is dense for every member `D′` iff
/// `D ∩ D₀` is dense.
pub fn dense_family_check(t: &FiniteTopology, family: &[Subset]) -> Result<DenseFamilyVerdict> {
    t.check_scan_bound()?;
    let n = t.size();
    for d in family {
        d.check_width(n)?;
    }
    let mut members: Vec<u64> = family.iter().map(|d| d.bits()).collect();
    members.sort_unstable();
    members.dedup();
    let has = |m: u64| members.binary_search(&m).is_ok();

    let violation = if members.is_empty() {
        Some(FilterViolation::Empty)
    } else if let Some(&d) = members.iter().find(|&&d| !t.is_dense_mask(d)) {
        Some(FilterViolation::NotDense { set: sub(t, d) })
    } else {
        let mut v = None;
        'pairs: for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                if !has(a & b) {
                    v = Some(FilterViolation::NotIntersectionClosed {
                        a: sub(t, a),
                        b: sub(t, b),
                    });
                    break 'pairs;
                }
            }
        }
        if v.is_none() {
            'up: for &d in &members {
                for x in 0..n {
                    let bigger = d | 1 << x;
                    if bigger != d && !has(bigger) {
                        v = Some(FilterViolation::NotUpwardClosed {
                            member: sub(t, d),
                            missing: sub(t, bigger),
                        });
                        break 'up;
                    }
                }
            }
        }
        v
    };

    let ultrafilter = if violation.is_some() {
        Verdict {
            holds: false,
            witness: None,
        }
    } else {
        let least = members.iter().fold(full_mask(n), |acc, &d| acc & d);
        let w = scan_masks(n, |m| {
            (!has(m) && t.is_dense_mask(m) && t.is_dense_mask(m & least)).then_some(m)
        });
        Verdict::from_witness(w.map(|m| sub(t, m)))
    };
    Ok(DenseFamilyVerdict {
        filter: Verdict::from_witness(violation),
        ultrafilter,
    })
}

/// `interior(closure(S)) = ∅`.
pub fn is_nowhere_dense(t: &FiniteTopology, s: &Subset) -> Result<bool> {
    s.check_width(t.size())?;
    Ok(t.interior_mask(t.closure_mask(s.bits())) == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dispersion {
    /// `Δ(x)`, the size of the minimal open set at `x`.
    pub per_point: Vec<usize>,
    /// `Δ(X)`.
    pub global: usize,
}

/// In a finite space the smallest nonempty open set at `x` is `M_x`.
pub fn dispersion_character(t: &FiniteTopology) -> Dispersion {
    let per_point: Vec<usize> = t
        .minimal_masks()
        .iter()
        .map(|m| m.count_ones() as usize)
        .collect();
    let global = per_point.iter().copied().min().unwrap_or(0);
    Dispersion { per_point, global }
}

/// Largest number of pairwise disjoint nonempty open sets.
///
/// Any such family can be shrunk to distinct inclusion-minimal `M_x`, and two
/// distinct inclusion-minimal `M_x` are disjoint (a common point `z` would
/// give `M_z` inside both). So the answer is the number of distinct
/// inclusion-minimal minimal opens.
pub fn cellularity(t: &FiniteTopology) -> usize {
    let mut mins: Vec<u64> = t.minimal_masks().to_vec();
    mins.sort_unstable();
    mins.dedup();
    mins.iter()
        .filter(|&&m| !mins.iter().any(|&o| o != m && o & !m == 0))
        .count()
}

/// Every point has a neighbourhood meeting at most one member. Witness: a
/// point whose minimal open meets two members.
pub fn is_discrete_family(t: &FiniteTopology, family: &[Subset]) -> Result<Verdict<usize>> {
    for f in family {
        f.check_width(t.size())?;
    }
    let w = t.minimal_masks().iter().position(|&m| {
        family.iter().filter(|f| f.bits() & m != 0).count() > 1
    });
    Ok(Verdict::from_witness(w))
}

/// For every subset `A` whose singletons form a discrete family, the family
/// `{M_p : p ∈ A}` is discrete. Witness: the first failing `A`.
pub fn is_collectionwise_hausdorff(t: &FiniteTopology) -> Result<Verdict<Subset>> {
    t.check_scan_bound()?;
    let n = t.size();
    let mins = t.minimal_masks();
    // meets[x] = {p : M_x ∩ M_p ≠ ∅}
    let meets: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&p| mins[x] & mins[p] != 0)
                .fold(0u64, |acc, p| acc | 1 << p)
        })
        .collect();
    let w = scan_masks(n, |a| {
        let discrete = mins.iter().all(|&m| (m & a).count_ones() <= 1);
        let separated = meets.iter().all(|&s| (s & a).count_ones() <= 1);
        (discrete && !separated).then_some(a)
    });
    Ok(Verdict::from_witness(w.map(|m| sub(t, m))))
}

/// Distinct points have disjoint neighbourhoods. Witness: the first
/// inseparable pair.
pub fn is_hausdorff(t: &FiniteTopology) -> Verdict<(usize, usize)> {
    let mins = t.minimal_masks();
    let n = t.size();
    let w = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| mins[x] & mins[y] != 0);
    Verdict::from_witness(w)
}

/// Points `x` with `{x}` open.
pub fn isolated_points(t: &FiniteTopology) -> Subset {
    let bits = t
        .minimal_masks()
        .iter()
        .enumerate()
        .filter(|(x, &m)| m == 1 << x)
        .fold(0u64, |acc, (x, _)| acc | 1 << x);
    sub(t, bits)
}

/// One entry of a [`PropertyReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub exhaustive: bool,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub properties: Vec<PropertyVerdict>,
    /// Status of the standing hypotheses, which are reported and never
    /// enforced.
    pub hypotheses: Value,
}

impl PropertyReport {
    pub fn get(&self, property: &str) -> Option<&PropertyVerdict> {
        self.properties.iter().find(|p| p.property == property)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or(Value::Null)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let line = match &p.witness {
                Some(w) => format!("{:<26} {}  witness {}\n", p.property, p.verdict, w),
                None => format!("{:<26} {}\n", p.property, p.verdict),
            };
            out.push_str(&line);
        }
        out.push_str(&format!("hypotheses                 {}\n", self.hypotheses));
        out
    }
}

fn entry<W: Serialize>(property: &str, v: Verdict<W>, bound: usize) -> PropertyVerdict {
    PropertyVerdict {
        property: property.into(),
        verdict: Value::Bool(v.holds),
        witness: v.witness.map(|w| serde_json::to_value(w).unwrap_or(Value::Null)),
        exhaustive: true,
        bound,
    }
}

/// Runs every property checker on `t`.
pub fn property_report(t: &FiniteTopology) -> Result<PropertyReport> {
    if t.size() > SUBSET_SCAN_BOUND {
        return Err(GyroError::BoundExceeded {
            n: t.size(),
            bound: SUBSET_SCAN_BOUND,
        });
    }
    let b = SUBSET_SCAN_BOUND;
    let n = t.size();
    let mut props = vec![
        entry("submaximal", is_submaximal(t)?, b),
        {
            let v = is_maximal(t)?;
            let mut e = entry("maximal", v.clone(), b);
            if let Some(MaximalWitness::IsolatedPoints(_)) = v.witness {
                e.verdict = json!("not applicable (isolated points exist)");
            }
            e
        },
        entry("irresolvable", is_irresolvable(t)?, b),
        entry("hausdorff", is_hausdorff(t), n),
        entry("collectionwise-hausdorff", is_collectionwise_hausdorff(t)?, b),
    ];
    let iso = isolated_points(t);
    props.push(PropertyVerdict {
        property: "isolated-points".into(),
        verdict: json!(iso),
        witness: None,
        exhaustive: true,
        bound: n,
    });
    let d = dispersion_character(t);
    props.push(PropertyVerdict {
        property: "dispersion-character".into(),
        verdict: json!({ "per_point": d.per_point, "global": d.global }),
        witness: None,
        exhaustive: true,
        bound: n,
    });
    props.push(PropertyVerdict {
        property: "cellularity".into(),
        verdict: json!(cellularity(t)),
        witness: None,
        exhaustive: true,
        bound: n,
    });
    let hausdorff = is_hausdorff(t).holds;
    let hypotheses = json!({
        "hausdorff": hausdorff,
        "dense_in_itself": iso.is_empty(),
        "both_hold": hausdorff && iso.is_empty(),
    });
    Ok(PropertyReport {
        n,
        properties: props,
        hypotheses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    fn sier() -> FiniteTopology {
        FiniteTopology::sierpinski()
    }

    #[test]
    fn submaximal_examples() {
        for n in 1..=6 {
            assert!(is_submaximal(&FiniteTopology::discrete(n).unwrap()).unwrap().holds);
        }
        let v = is_submaximal(&FiniteTopology::indiscrete(2).unwrap()).unwrap();
        assert_eq!(v.witness, Some(s(2, &[0])));
        assert!(is_submaximal(&sier()).unwrap().holds);
    }

    #[test]
    fn maximal_examples() {
        let v = is_maximal(&FiniteTopology::discrete(3).unwrap()).unwrap();
        assert!(matches!(v.witness, Some(MaximalWitness::IsolatedPoints(_))));
        assert!(is_maximal(&FiniteTopology::indiscrete(2).unwrap()).unwrap().holds);
        let v = is_maximal(&sier()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(MaximalWitness::IsolatedPoints(s(2, &[0]))));
        // indiscrete on 3 points: adding {0,1} leaves 0 and 1 inseparable
        // and 2 with minimal open X
        let v = is_maximal(&FiniteTopology::indiscrete(3).unwrap()).unwrap();
        assert_eq!(v.witness, Some(MaximalWitness::Refinement(s(3, &[0, 1]))));
    }

    #[test]
    fn irresolvable_examples() {
        let v = is_irresolvable(&FiniteTopology::indiscrete(2).unwrap()).unwrap();
        assert_eq!(v.witness, Some((s(2, &[0]), s(2, &[1]))));
        assert!(is_irresolvable(&sier()).unwrap().holds);
        assert!(is_irresolvable(&FiniteTopology::discrete(4).unwrap()).unwrap().holds);
    }

    #[test]
    fn dense_families() {
        let t = sier();
        let v = dense_family_check(&t, &[s(2, &[0]), Subset::full(2)]).unwrap();
        assert!(v.filter.holds && v.ultrafilter.holds);

        let v = dense_family_check(&t, &[Subset::full(2)]).unwrap();
        assert!(v.filter.holds);
        assert_eq!(v.ultrafilter.witness, Some(s(2, &[0])));

        let v = dense_family_check(&t, &[s(2, &[0])]).unwrap();
        assert_eq!(
            v.filter.witness,
            Some(FilterViolation::NotUpwardClosed {
                member: s(2, &[0]),
                missing: Subset::full(2)
            })
        );
        assert!(!v.ultrafilter.holds);

        let v = dense_family_check(&t, &[s(2, &[1])]).unwrap();
        assert!(matches!(v.filter.witness, Some(FilterViolation::NotDense { .. })));

        let ind = FiniteTopology::indiscrete(2).unwrap();
        let v = dense_family_check(&ind, &[s(2, &[0]), s(2, &[1]), Subset::full(2)]).unwrap();
        assert!(matches!(
            v.filter.witness,
            Some(FilterViolation::NotIntersectionClosed { .. })
        ));
        assert!(matches!(
            dense_family_check(&t, &[]).unwrap().filter.witness,
            Some(FilterViolation::Empty)
        ));
    }

    #[test]
    fn nowhere_dense_examples() {
        let t = sier();
        assert!(is_nowhere_dense(&t, &Subset::empty(2)).unwrap());
        assert!(is_nowhere_dense(&t, &s(2, &[1])).unwrap());
        assert!(!is_nowhere_dense(&t, &s(2, &[0])).unwrap());
        let d = FiniteTopology::discrete(3).unwrap();
        assert!(!is_nowhere_dense(&d, &s(3, &[2])).unwrap());
    }

    #[test]
    fn dispersion_and_cellularity() {
        let d = dispersion_character(&sier());
        assert_eq!(d.per_point, vec![1, 2]);
        assert_eq!(d.global, 1);
        assert_eq!(dispersion_character(&FiniteTopology::indiscrete(4).unwrap()).per_point, vec![4; 4]);
        assert_eq!(cellularity(&FiniteTopology::discrete(5).unwrap()), 5);
        assert_eq!(cellularity(&FiniteTopology::indiscrete(5).unwrap()), 1);
        assert_eq!(cellularity(&sier()), 1);
    }

    #[test]
    fn discrete_families() {
        let ind = FiniteTopology::indiscrete(3).unwrap();
        assert!(is_discrete_family(&ind, &[s(3, &[0, 1])]).unwrap().holds);
        assert_eq!(
            is_discrete_family(&ind, &[s(3, &[0]), s(3, &[2])]).unwrap().witness,
            Some(0)
        );
        let d = FiniteTopology::discrete(3).unwrap();
        assert!(is_discrete_family(&d, &[s(3, &[0]), s(3, &[1, 2])]).unwrap().holds);
    }

    #[test]
    fn collectionwise_hausdorff_three_points() {
        let t = FiniteTopology::new(
            3,
            [Subset::empty(3), s(3, &[2]), s(3, &[0, 2]), s(3, &[1, 2]), Subset::full(3)],
        )
        .unwrap();
        let v = is_collectionwise_hausdorff(&t).unwrap();
        assert_eq!(v.witness, Some(s(3, &[0, 1])));
        assert!(is_collectionwise_hausdorff(&FiniteTopology::discrete(4).unwrap()).unwrap().holds);
        assert!(is_collectionwise_hausdorff(&FiniteTopology::indiscrete(4).unwrap()).unwrap().holds);
    }

    #[test]
    fn hausdorff_and_isolated() {
        let t = sier();
        assert_eq!(is_hausdorff(&t).witness, Some((0, 1)));
        assert_eq!(isolated_points(&t), s(2, &[0]));
        let ind = FiniteTopology::indiscrete(3).unwrap();
        assert!(!is_hausdorff(&ind).holds);
        assert!(isolated_points(&ind).is_empty());
        assert!(is_hausdorff(&FiniteTopology::discrete(3).unwrap()).holds);
    }

    #[test]
    fn report_shape() {
        let r = property_report(&sier()).unwrap();
        assert_eq!(r.get("maximal").unwrap().verdict, json!("not applicable (isolated points exist)"));
        assert_eq!(r.get("cellularity").unwrap().verdict, json!(1));
        for p in &r.properties {
            if p.verdict == Value::Bool(false) {
                assert!(p.witness.is_some(), "{}", p.property);
            }
            assert!(p.exhaustive);
        }
        assert_eq!(r.hypotheses["dense_in_itself"], json!(false));
    }
}
