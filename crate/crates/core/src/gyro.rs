//! The gyrogroup contract and its verifiers.
//!
//! A model supplies the binary operation, identity, inverse and an equality
//! policy. Gyrations are derived from the operation as
//! `gyr[x, y](z) = ⊖(x ⊕ y) ⊕ (x ⊕ (y ⊕ z))`; a model may also provide a
//! closed-form gyration, which is then used and cross-checked against the
//! derived one.
//!
//! Finite carriers are verified exhaustively. Continuous carriers are verified
//! on seeded samples, so every run is reproducible from `(count, seed)`.

use std::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{GyroError, Result};
use crate::report::VerificationReport;

/// Default absolute-plus-relative tolerance for numeric models.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait Gyrogroup {
    type Element: Clone + Debug + Serialize;

    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn identity(&self) -> Self::Element;

    fn inverse(&self, a: &Self::Element) -> Self::Element;

    /// Closed-form gyration, when the model has one.
    fn native_gyr(
        &self,
        _a: &Self::Element,
        _b: &Self::Element,
        _c: &Self::Element,
    ) -> Option<Self::Element> {
        None
    }

    /// Equality under the model's tolerance policy (exact for finite tables).
    fn approx_eq(&self, a: &Self::Element, b: &Self::Element) -> bool;

    /// `None` for exact models.
    fn tolerance(&self) -> Option<f64> {
        None
    }

    fn check_domain(&self, a: &Self::Element) -> Result<()>;

    /// Every element of the carrier, for finite carriers.
    fn elements(&self) -> Option<Vec<Self::Element>>;

    /// Draws one element from the model's sampling distribution.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Element;

    /// Distinguished triples tried first by witness searches.
    fn probe_triples(&self) -> Vec<[Self::Element; 3]> {
        Vec::new()
    }
}

/// Gyration derived from the operation (left cancellation form).
pub fn derived_gyr<G: Gyrogroup + ?Sized>(
    g: &G,
    x: &G::Element,
    y: &G::Element,
    z: &G::Element,
) -> G::Element {
    let xy = g.op(x, y);
    let x_yz = g.op(x, &g.op(y, z));
    g.op(&g.inverse(&xy), &x_yz)
}

/// `gyr[x, y](z)`: the native gyration when the model has one, otherwise the
/// derived one.
pub fn gyr<G: Gyrogroup + ?Sized>(
    g: &G,
    x: &G::Element,
    y: &G::Element,
    z: &G::Element,
) -> G::Element {
    g.native_gyr(x, y, z)
        .unwrap_or_else(|| derived_gyr(g, x, y, z))
}

/// Like [`gyr`], but validates the arguments against the carrier first.
pub fn gyr_checked<G: Gyrogroup + ?Sized>(
    g: &G,
    x: &G::Element,
    y: &G::Element,
    z: &G::Element,
) -> Result<G::Element> {
    g.check_domain(x)?;
    g.check_domain(y)?;
    g.check_domain(z)?;
    Ok(gyr(g, x, y, z))
}

/// How a checker chooses its test points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// `count` random tuples from a ChaCha8 stream seeded with `seed`.
    /// A missing seed is rejected.
    Sampled { count: usize, seed: Option<u64> },
}

impl Mode {
    pub fn sampled(count: usize, seed: u64) -> Self {
        Mode::Sampled {
            count,
            seed: Some(seed),
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Mode::Exhaustive)
    }
}

/// Test points for one checker run.
pub(crate) enum Points<E> {
    All(Vec<E>),
    Samples(Vec<[E; 4]>),
}

impl<E: Clone> Points<E> {
    pub(crate) fn new<G: Gyrogroup<Element = E> + ?Sized>(g: &G, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Exhaustive => g.elements().map(Points::All).ok_or(GyroError::NotEnumerable),
            Mode::Sampled { count, seed } => {
                let seed = seed.ok_or(GyroError::MissingSeed)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let samples = (0..count)
                    .map(|_| {
                        [
                            g.sample(&mut rng),
                            g.sample(&mut rng),
                            g.sample(&mut rng),
                            g.sample(&mut rng),
                        ]
                    })
                    .collect();
                Ok(Points::Samples(samples))
            }
        }
    }

    pub(crate) fn is_exhaustive(&self) -> bool {
        matches!(self, Points::All(_))
    }

    /// Calls `f` on every tested singleton until it returns a witness.
    pub(crate) fn find1<W>(&self, mut f: impl FnMut(&E) -> Option<W>) -> (Option<W>, u64) {
        let mut n = 0;
        match self {
            Points::All(all) => {
                for a in all {
                    n += 1;
                    if let Some(w) = f(a) {
                        return (Some(w), n);
                    }
                }
            }
            Points::Samples(s) => {
                for t in s {
                    n += 1;
                    if let Some(w) = f(&t[0]) {
                        return (Some(w), n);
                    }
                }
            }
        }
        (None, n)
    }

    pub(crate) fn find2<W>(&self, mut f: impl FnMut(&E, &E) -> Option<W>) -> (Option<W>, u64) {
        let mut n = 0;
        match self {
            Points::All(all) => {
                for a in all {
                    for b in all {
                        n += 1;
                        if let Some(w) = f(a, b) {
                            return (Some(w), n);
                        }
                    }
                }
            }
            Points::Samples(s) => {
                for t in s {
                    n += 1;
                    if let Some(w) = f(&t[0], &t[1]) {
                        return (Some(w), n);
                    }
                }
            }
        }
        (None, n)
    }

    pub(crate) fn find3<W>(
        &self,
        mut f: impl FnMut(&E, &E, &E) -> Option<W>,
    ) -> (Option<W>, u64) {
        let mut n = 0;
        match self {
            Points::All(all) => {
                for a in all {
                    for b in all {
                        for c in all {
                            n += 1;
                            if let Some(w) = f(a, b, c) {
                                return (Some(w), n);
                            }
                        }
                    }
                }
            }
            Points::Samples(s) => {
                for t in s {
                    n += 1;
                    if let Some(w) = f(&t[0], &t[1], &t[2]) {
                        return (Some(w), n);
                    }
                }
            }
        }
        (None, n)
    }

    pub(crate) fn find4<W>(
        &self,
        mut f: impl FnMut(&E, &E, &E, &E) -> Option<W>,
    ) -> (Option<W>, u64) {
        let mut n = 0;
        match self {
            Points::All(all) => {
                for a in all {
                    for b in all {
                        for c in all {
                            for d in all {
                                n += 1;
                                if let Some(w) = f(a, b, c, d) {
                                    return (Some(w), n);
                                }
                            }
                        }
                    }
                }
            }
            Points::Samples(s) => {
                for t in s {
                    n += 1;
                    if let Some(w) = f(&t[0], &t[1], &t[2], &t[3]) {
                        return (Some(w), n);
                    }
                }
            }
        }
        (None, n)
    }
}

pub(crate) fn to_json<E: Serialize>(e: &E) -> Value {
    serde_json::to_value(e).unwrap_or(Value::Null)
}

fn wit<E: Serialize>(items: &[&E]) -> Vec<Value> {
    items.iter().map(|e| to_json(*e)).collect()
}

fn wit_if<E: Serialize>(bad: bool, items: &[&E]) -> Option<Vec<Value>> {
    bad.then(|| wit(items))
}

/// Verifies the gyrogroup axioms: two-sided identity and inverse (with
/// uniqueness on finite carriers), left gyroassociativity with gyrations that
/// are automorphisms, and the left loop property.
pub fn check_axioms<G: Gyrogroup + ?Sized>(g: &G, mode: Mode) -> Result<VerificationReport> {
    let pts = Points::new(g, mode)?;
    let exhaustive = pts.is_exhaustive();
    let mut report = VerificationReport::new(exhaustive).with_tolerance(g.tolerance());
    let zero = g.identity();

    let (w, n) = pts.find1(|a| {
        let bad = !g.approx_eq(&g.op(&zero, a), a) || !g.approx_eq(&g.op(a, &zero), a);
        wit_if(bad, &[a])
    });
    report.record("G1 two-sided identity", w, n);

    let (w, n) = pts.find1(|a| {
        let ia = g.inverse(a);
        let bad = !g.approx_eq(&g.op(&ia, a), &zero) || !g.approx_eq(&g.op(a, &ia), &zero);
        wit_if(bad, &[a])
    });
    report.record("G2 two-sided inverse", w, n);

    if let Points::All(all) = &pts {
        // a second left identity e ≠ 0
        let second_identity = all.iter().find(|e| {
            !g.approx_eq(e, &zero) && all.iter().all(|a| g.approx_eq(&g.op(e, a), a))
        });
        report.record(
            "G1 identity uniqueness",
            second_identity.map(|e| wit(&[e])),
            all.len() as u64,
        );
        // an element with two distinct left inverses
        let mut bad = None;
        'outer: for a in all {
            let mut found: Option<&G::Element> = None;
            for b in all {
                if g.approx_eq(&g.op(b, a), &zero) {
                    if let Some(prev) = found {
                        bad = Some(wit(&[a, prev, b]));
                        break 'outer;
                    }
                    found = Some(b);
                }
            }
        }
        report.record("G2 inverse uniqueness", bad, all.len() as u64);
    } else {
        report.mark_out_of_scope("G1/G2 uniqueness (continuous carrier)");
    }

    let (w, n) = pts.find3(|x, y, z| {
        let lhs = g.op(x, &g.op(y, z));
        let rhs = g.op(&g.op(x, y), &gyr(g, x, y, z));
        wit_if(!g.approx_eq(&lhs, &rhs), &[x, y, z])
    });
    report.record("G3 left gyroassociativity", w, n);

    let (w, n) = pts.find4(|x, y, a, b| {
        let lhs = gyr(g, x, y, &g.op(a, b));
        let rhs = g.op(&gyr(g, x, y, a), &gyr(g, x, y, b));
        wit_if(!g.approx_eq(&lhs, &rhs), &[x, y, a, b])
    });
    report.record("G3 gyration is a homomorphism", w, n);

    if let Points::All(all) = &pts {
        let (w, n) = pts.find2(|x, y| {
            let images: Vec<G::Element> = all.iter().map(|z| gyr(g, x, y, z)).collect();
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    if g.approx_eq(&images[i], &images[j]) {
                        return Some(wit(&[x, y, &all[i], &all[j]]));
                    }
                }
            }
            None
        });
        report.record("G3 gyration is bijective", w, n);
    } else {
        report.mark_out_of_scope("G3 gyration bijectivity (continuous carrier)");
    }

    let (w, n) = pts.find3(|x, y, z| {
        let lhs = gyr(g, &g.op(x, y), y, z);
        let rhs = gyr(g, x, y, z);
        wit_if(!g.approx_eq(&lhs, &rhs), &[x, y, z])
    });
    report.record("G4 left loop property", w, n);

    if let Some(native) = native_cross_check(g, &pts) {
        report.push(native);
    }
    Ok(report)
}

fn native_cross_check<G: Gyrogroup + ?Sized>(
    g: &G,
    pts: &Points<G::Element>,
) -> Option<crate::report::Check> {
    let zero = g.identity();
    g.native_gyr(&zero, &zero, &zero)?;
    let (w, n) = pts.find3(|x, y, z| {
        let native = g.native_gyr(x, y, z)?;
        let derived = derived_gyr(g, x, y, z);
        wit_if(!g.approx_eq(&native, &derived), &[x, y, z])
    });
    Some(crate::report::Check {
        name: "native gyration agrees with derived".into(),
        passed: w.is_none(),
        witness: w,
        samples: n,
    })
}

/// Verifies the basic identities that follow from the axioms: left
/// cancellation, the two right cancellation laws, and agreement between the
/// derived and the native gyration when the model has one.
pub fn check_identities<G: Gyrogroup + ?Sized>(g: &G, mode: Mode) -> Result<VerificationReport> {
    let pts = Points::new(g, mode)?;
    let mut report = VerificationReport::new(pts.is_exhaustive()).with_tolerance(g.tolerance());

    let (w, n) = pts.find2(|x, y| {
        let lhs = g.op(&g.inverse(x), &g.op(x, y));
        wit_if(!g.approx_eq(&lhs, y), &[x, y])
    });
    report.record("left cancellation", w, n);

    let (w, n) = pts.find2(|x, y| {
        let iy = g.inverse(y);
        let lhs = g.op(&g.op(x, &iy), &gyr(g, x, &iy, y));
        wit_if(!g.approx_eq(&lhs, x), &[x, y])
    });
    report.record("right cancellation I", w, n);

    let (w, n) = pts.find2(|x, y| {
        let iy = g.inverse(y);
        let lhs = g.op(&g.op(x, &gyr(g, x, y, &iy)), y);
        wit_if(!g.approx_eq(&lhs, x), &[x, y])
    });
    report.record("right cancellation II", w, n);

    if let Some(native) = native_cross_check(g, &pts) {
        report.push(native);
    }
    Ok(report)
}

/// Associativity scan. Returns `(true, None)` when every tested triple
/// associates, otherwise the first violating triple.
pub fn is_group<G: Gyrogroup + ?Sized>(
    g: &G,
    mode: Mode,
) -> Result<(bool, Option<[G::Element; 3]>)> {
    let pts = Points::new(g, mode)?;
    let (w, _) = pts.find3(|x, y, z| {
        let lhs = g.op(x, &g.op(y, z));
        let rhs = g.op(&g.op(x, y), z);
        (!g.approx_eq(&lhs, &rhs)).then(|| [x.clone(), y.clone(), z.clone()])
    });
    Ok((w.is_none(), w))
}

/// Checks `f(x ⊕ y) = f(x) ⊕ f(y)` over the test points of `source`. With
/// `check_bijective` on two finite carriers, also checks that `f` is a
/// bijection, giving an isomorphism (automorphism when `source = target`)
/// verdict.
pub fn check_homomorphism<G1, G2, F>(
    f: F,
    source: &G1,
    target: &G2,
    mode: Mode,
    check_bijective: bool,
) -> Result<VerificationReport>
where
    G1: Gyrogroup + ?Sized,
    G2: Gyrogroup + ?Sized,
    F: Fn(&G1::Element) -> G2::Element,
{
    let pts = Points::new(source, mode)?;
    let mut report = VerificationReport::new(pts.is_exhaustive()).with_tolerance(target.tolerance());

    let (w, n) = pts.find1(|x| match target.check_domain(&f(x)) {
        Ok(()) => None,
        Err(_) => Some(wit(&[x])),
    });
    report.record("image lies in target", w, n);

    let (w, n) = pts.find2(|x, y| {
        let lhs = f(&source.op(x, y));
        let rhs = target.op(&f(x), &f(y));
        wit_if(!target.approx_eq(&lhs, &rhs), &[x, y])
    });
    report.record("homomorphism", w, n);

    if check_bijective {
        match (source.elements(), target.elements()) {
            (Some(src), Some(dst)) => {
                let images: Vec<G2::Element> = src.iter().map(&f).collect();
                let mut witness = None;
                'scan: for i in 0..images.len() {
                    for j in (i + 1)..images.len() {
                        if target.approx_eq(&images[i], &images[j]) {
                            witness = Some(wit(&[&src[i], &src[j]]));
                            break 'scan;
                        }
                    }
                }
                if witness.is_none() && src.len() != dst.len() {
                    witness = dst
                        .iter()
                        .find(|d| !images.iter().any(|im| target.approx_eq(im, d)))
                        .map(|d| vec![to_json(d)]);
                }
                report.record("bijective", witness, src.len() as u64);
            }
            _ => report.mark_out_of_scope("bijectivity (continuous carrier)"),
        }
    }
    Ok(report)
}

/// Absolute-plus-relative closeness: `|diff| ≤ tol + tol·scale`.
pub fn within_tolerance(diff: f64, scale: f64, tol: f64) -> bool {
    diff.is_finite() && diff <= tol + tol * scale
}
