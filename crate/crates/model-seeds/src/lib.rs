//! The worked examples: the seed on the Drinfeld double, the seed on
//! periodic band matrices with its finite-type exploration, and the exotic
//! GL6 data.

use std::collections::BTreeMap;

use exact_arith::Ring;
use gcs_engine::{ExtendedSeed, GQuiver, GcsError, Monomial};

pub mod band;
pub mod double;
pub mod gamma6;
pub mod regularity;
pub mod yz;

pub use band::{
    a11_tilde, band_invariants, band_staircase, band_xy, build_sigma_band, phi_tilde, random_band, symbolic_band,
    verify_band_identity, BandReport,
};
pub use double::{build_sigma_double, double_phi_g_check, g_minor, h_minor, random_double, symbolic_double};
pub use gamma6::{
    build_gamma6, f_gamma, frozen_form_residuals, gamma6_pattern_check, gamma6_stars, gamma6_structure, gamma_id_residuals, symbolic_rs,
    Gamma6Data,
};
pub use regularity::{check_regularity, check_vertices, slice_matrix, VertexCheck};
pub use yz::{dense_principal_minor, shift_band, valid_minor_indices, yz_exploration, yz_report, YzReport, YzRun};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeedError {
    #[error("band diagonal entry a_{0},{1} is zero")]
    BandDegenerate(usize, usize),
    #[error("bad parameters: {0}")]
    Params(String),
    #[error("minor index ({0},{1}) is not valid")]
    IndexInvalid(usize, usize),
    #[error(transparent)]
    Staircase(#[from] staircase_core::StaircaseError),
    #[error(transparent)]
    Matrix(#[from] matrix_core::MatrixError),
    #[error(transparent)]
    Gcs(#[from] GcsError),
    #[error(transparent)]
    Arith(#[from] exact_arith::ArithError),
}

/// Position of a vertex in the pictures: a grid node, the extra vertex that
/// carries g11 on the double, or the i-th isolated coefficient vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Grid(usize, usize),
    Extra,
    Iso(usize),
}

/// A seed together with the coordinate of every vertex. Vertex ids are
/// assigned in construction order; `index` maps coordinates back to ids.
#[derive(Clone, Debug)]
pub struct LabeledSeed<T> {
    pub seed: ExtendedSeed<T>,
    pub coords: Vec<Coord>,
    pub index: BTreeMap<Coord, usize>,
    pub special: usize,
}

impl<T: Ring> LabeledSeed<T> {
    pub fn id(&self, c: Coord) -> usize {
        self.index[&c]
    }

    pub fn value(&self, c: Coord) -> &T {
        &self.seed.values[self.id(c)]
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.seed.quiver.len())
            .filter(|&v| !self.seed.quiver.is_frozen(v))
            .collect()
    }
}

/// Incremental construction: vertices first, then edges that are silently
/// dropped when an endpoint is missing or both endpoints are frozen.
pub(crate) struct Builder<T> {
    quiver: GQuiver,
    values: Vec<T>,
    coords: Vec<Coord>,
    index: BTreeMap<Coord, usize>,
}

impl<T: Ring> Builder<T> {
    pub(crate) fn new() -> Builder<T> {
        Builder {
            quiver: GQuiver::new(),
            values: vec![],
            coords: vec![],
            index: BTreeMap::new(),
        }
    }

    pub(crate) fn vertex(&mut self, c: Coord, label: String, frozen: bool, mult: u32, value: T) {
        let id = self.quiver.add_vertex(label, frozen, mult);
        self.values.push(value);
        self.coords.push(c);
        self.index.insert(c, id);
    }

    pub(crate) fn edge(&mut self, u: Coord, v: Coord, count: u32) {
        let (Some(&a), Some(&b)) = (self.index.get(&u), self.index.get(&v)) else {
            return;
        };
        if self.quiver.is_frozen(a) && self.quiver.is_frozen(b) {
            return;
        }
        self.quiver.add_edges(a, b, count);
    }

    /// Finish with the string at `special` given as coefficient-vertex
    /// coordinates for p_1..p_{d-1}.
    pub(crate) fn finish(self, special: Coord, string: &[Coord]) -> Result<LabeledSeed<T>, SeedError> {
        let sp = self.index[&special];
        let mut seed = ExtendedSeed::new(self.quiver, self.values)?;
        let mut st = vec![Monomial::one()];
        st.extend(string.iter().map(|c| Monomial::var(self.index[c])));
        st.push(Monomial::one());
        seed.set_string(sp, st)?;
        Ok(LabeledSeed {
            seed,
            coords: self.coords,
            index: self.index,
            special: sp,
        })
    }
}
