//! Exchange polynomials divided by the old variable, vertex by vertex.
//!
//! With symbolic values a division that is not exact means the new variable
//! is not a polynomial. On a two-parameter slice of F_p-valued matrices the
//! same division in F_p[s, t] is a necessary condition, used where the
//! fully symbolic expansion is too large. When the old variable is
//! irreducible its restriction to a generic plane stays irreducible, so a
//! non-polynomial exchange is caught with high probability.

use exact_arith::{Fp, Poly, Ring};
use gcs_engine::GcsError;
use matrix_core::RingMatrix;

use crate::LabeledSeed;

#[derive(Clone, Debug, PartialEq)]
pub struct VertexCheck {
    pub vertex: usize,
    pub label: String,
    pub divisible: bool,
    pub error: Option<String>,
}

pub fn check_regularity<T: Ring>(seed: &LabeledSeed<T>) -> Vec<VertexCheck> {
    check_vertices(seed, &seed.mutable_vertices())
}

/// Same as `check_regularity` restricted to the given vertices.
pub fn check_vertices<T: Ring>(seed: &LabeledSeed<T>, vertices: &[usize]) -> Vec<VertexCheck> {
    vertices
        .iter()
        .map(|&v| {
            let r = seed.seed.generalized_exchange(v);
            VertexCheck {
                vertex: v,
                label: seed.seed.quiver.vertex(v).label.clone(),
                divisible: r.is_ok(),
                error: match r {
                    Ok(_) | Err(GcsError::NotDivisible(_)) => None,
                    Err(e) => Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// base + s·d1 + t·d2 with s, t the variables 0 and 1.
pub fn slice_matrix(base: &RingMatrix<Fp>, d1: &RingMatrix<Fp>, d2: &RingMatrix<Fp>) -> RingMatrix<Poly<Fp>> {
    let (s, t) = (Poly::<Fp>::var(0), Poly::<Fp>::var(1));
    RingMatrix::from_fn(base.rows(), base.cols(), |i, j| {
        Poly::constant(*base.get(i, j))
            .add(&s.scale(d1.get(i, j)))
            .add(&t.scale(d2.get(i, j)))
    })
}
