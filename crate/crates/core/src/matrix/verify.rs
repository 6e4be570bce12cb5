use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{MatrixElement, MatrixError, Realization};
use crate::algebra::{Algebra, Degree, Element};
use crate::random::random_element;

#[derive(Debug, Clone, Default, Serialize)]
pub struct IsoReport {
    pub samples: usize,
    pub product_checks: usize,
    pub degree_checks: usize,
    pub star_checks: usize,
    /// The images of the vertices sum to the identity in every block.
    pub identity: bool,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.identity && self.failures.is_empty()
    }
}

fn blocks_mul(x: &[MatrixElement], y: &[MatrixElement]) -> Result<Vec<MatrixElement>, MatrixError> {
    x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()
}

/// Checks on `samples` seeded random pairs `(a, b)`: the image of `ab` is
/// the product of images; each homogeneous component of `a` maps to a
/// matrix of the same degree, equal to the matching component of the image
/// of `a`; and `a*` maps to the conjugate transpose with `x -> x^-1`.
pub fn verify_iso(r: &Realization, samples: usize, seed: u64) -> Result<IsoReport, MatrixError> {
    let g = r.graph();
    let alg = Algebra::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IsoReport { samples, ..IsoReport::default() };

    let mut total = r.zero();
    for v in g.vertices() {
        total = total.iter().zip(r.apply(&Element::vertex(v))).map(|(a, b)| a.add(&b)).collect::<Result<_, _>>()?;
    }
    report.identity = total.iter().all(|m| *m == MatrixElement::identity(m.n));

    let deltas: Vec<Vec<i64>> = r.blocks.iter().map(|b| b.algebra.delta.clone()).collect();
    for s in 0..samples {
        let a = alg.normal_form(&random_element(g, &mut rng, 3, 3, 1))?;
        let b = alg.normal_form(&random_element(g, &mut rng, 3, 3, 1))?;
        let (ia, ib) = (r.apply(&a), r.apply(&b));
        let product = alg.normal_form(&alg.multiply(&a, &b)?)?;
        report.product_checks += 1;
        if r.apply(&product) != blocks_mul(&ia, &ib)? {
            report.failures.push(format!("sample {s}: product of {} and {}", a.display(g), b.display(g)));
        }
        for (d, part) in alg.homogeneous_components(&a)? {
            report.degree_checks += 1;
            let image = r.apply(&part);
            let degrees: Vec<Degree> = image.iter().zip(&deltas).map(|(m, delta)| m.degree(delta)).collect();
            let consistent = degrees.iter().all(|x| matches!(x, Degree::Any) || *x == Degree::Exactly(d))
                && degrees.contains(&Degree::Exactly(d));
            let components: Vec<MatrixElement> =
                ia.iter().zip(&deltas).map(|(m, delta)| m.component(d, delta)).collect();
            if !consistent || components != image {
                report.failures.push(format!("sample {s}: degree {d} component {}", part.display(g)));
            }
        }
        report.star_checks += 1;
        let starred: Vec<MatrixElement> = ia.iter().map(MatrixElement::conjugate_transpose).collect();
        if r.apply(&a.star()) != starred {
            report.failures.push(format!("sample {s}: star of {}", a.display(g)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::matrix::{realize_acyclic, realize_comet};

    #[test]
    fn realizations_verify() {
        let a4 = parse_graph("vertex v1\nvertex v2\nvertex v3\nvertex v4\nedge a v1 v2\nedge b v2 v3\nedge c v3 v4")
            .unwrap();
        let report = verify_iso(&realize_acyclic(&a4).unwrap(), 30, 1).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let comet = parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap();
        let report = verify_iso(&realize_comet(&comet).unwrap(), 30, 2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn wrong_shift_is_caught() {
        let a4 = parse_graph("vertex v1\nvertex v2\nvertex v3\nvertex v4\nedge a v1 v2\nedge b v2 v3\nedge c v3 v4")
            .unwrap();
        let mut r = realize_acyclic(&a4).unwrap();
        r.set_delta(0, vec![0, 1, 2, 4]);
        let report = verify_iso(&r, 30, 1).unwrap();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.contains("degree")));
    }
}
