use rand_chacha::ChaCha8Rng;

use crate::error::{GyroError, Result};
use crate::gyro::{gyr, Gyrogroup};

/// Direct product of finitely many copies of one gyrogroup type, with
/// coordinatewise operation, inverse, and gyration.
#[derive(Debug, Clone, PartialEq)]
pub struct Product<G> {
    factors: Vec<G>,
}

pub fn product<G: Gyrogroup>(factors: Vec<G>) -> Result<Product<G>> {
    if factors.is_empty() {
        return Err(GyroError::EmptyProduct);
    }
    Ok(Product { factors })
}

impl<G> Product<G> {
    pub fn factors(&self) -> &[G] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }
}

impl<G: Gyrogroup> Product<G> {
    fn zip_map(
        &self,
        a: &[G::Element],
        b: &[G::Element],
        f: impl Fn(&G, &G::Element, &G::Element) -> G::Element,
    ) -> Vec<G::Element> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(g, (x, y))| f(g, x, y))
            .collect()
    }
}

impl<G: Gyrogroup> Gyrogroup for Product<G> {
    type Element = Vec<G::Element>;

    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.zip_map(a, b, |g, x, y| g.op(x, y))
    }

    fn identity(&self) -> Self::Element {
        self.factors.iter().map(|g| g.identity()).collect()
    }

    fn inverse(&self, a: &Self::Element) -> Self::Element {
        self.factors.iter().zip(a).map(|(g, x)| g.inverse(x)).collect()
    }

    fn native_gyr(
        &self,
        a: &Self::Element,
        b: &Self::Element,
        c: &Self::Element,
    ) -> Option<Self::Element> {
        Some(
            self.factors
                .iter()
                .zip(a.iter().zip(b.iter().zip(c)))
                .map(|(g, (x, (y, z)))| gyr(g, x, y, z))
                .collect(),
        )
    }

    fn approx_eq(&self, a: &Self::Element, b: &Self::Element) -> bool {
        a.len() == b.len()
            && self
                .factors
                .iter()
                .zip(a.iter().zip(b))
                .all(|(g, (x, y))| g.approx_eq(x, y))
    }

    fn tolerance(&self) -> Option<f64> {
        self.factors
            .iter()
            .filter_map(|g| g.tolerance())
            .reduce(f64::max)
    }

    fn check_domain(&self, a: &Self::Element) -> Result<()> {
        if a.len() != self.factors.len() {
            return Err(GyroError::Domain(format!(
                "product element has arity {}, expected {}",
                a.len(),
                self.factors.len()
            )));
        }
        self.factors
            .iter()
            .zip(a)
            .try_for_each(|(g, x)| g.check_domain(x))
    }

    fn elements(&self) -> Option<Vec<Self::Element>> {
        let mut out: Vec<Self::Element> = vec![Vec::new()];
        for g in &self.factors {
            let els = g.elements()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    els.iter().map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e.clone());
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Element {
        self.factors.iter().map(|g| g.sample(rng)).collect()
    }

    /// Probe triples of the first factor, padded with identities.
    fn probe_triples(&self) -> Vec<[Self::Element; 3]> {
        let pad = self.identity();
        self.factors[0]
            .probe_triples()
            .into_iter()
            .map(|t| {
                t.map(|x| {
                    let mut e = pad.clone();
                    e[0] = x;
                    e
                })
            })
            .collect()
    }
}
