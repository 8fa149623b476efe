//! Fan data `{K; a_1, …, a_m}` and the checks built on it.

mod complete;
mod normal;
mod quotient;
mod validate;
mod weak;

pub use complete::{is_complete, CompletenessReport, RidgeFailure};
pub(crate) use normal::subsets;
pub use normal::{normal_fan, NormalFan, PolytopeH, Vertex};
pub use quotient::quotient_fan;
pub use validate::{validate_fan, FanReport, Overlap};
pub use weak::{
    certificate_from_offsets, verify_weak_farkas, weak_normal_certificate, WeakNormalCertificate, WeakNormalOutcome,
};

use crate::error::{Error, Result};
use crate::scalar::{ScalarMatrix, ScalarVec, SymbolTable, DEFAULT_MAX_BITS};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    complex: SimplicialComplex,
    n: usize,
    vectors: Vec<ScalarVec>,
    table: SymbolTable,
    max_bits: u32,
}

impl FanData {
    pub fn new(complex: SimplicialComplex, n: usize, vectors: Vec<ScalarVec>, table: SymbolTable) -> Result<Self> {
        if vectors.len() != complex.m() {
            return Err(Error::Dimension(format!(
                "complex has m = {} but {} vectors were given",
                complex.m(),
                vectors.len()
            )));
        }
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(Error::Dimension(format!(
                "vector a_{} has {} coordinates, expected n = {n}",
                i + 1,
                v.len()
            )));
        }
        Ok(FanData {
            complex,
            n,
            vectors,
            table,
            max_bits: DEFAULT_MAX_BITS,
        })
    }

    pub fn with_max_bits(mut self, bits: u32) -> Self {
        self.max_bits = bits;
        self
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    /// `ℓ = (m − n)/2`, when `m − n` is a nonnegative even number.
    pub fn ell(&self) -> Option<usize> {
        let d = self.m().checked_sub(self.n)?;
        (d % 2 == 0).then_some(d / 2)
    }

    pub fn vectors(&self) -> &[ScalarVec] {
        &self.vectors
    }

    /// `a_i` for a 1-based index.
    pub fn vector(&self, i: usize) -> &ScalarVec {
        &self.vectors[i - 1]
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// The `n × m` matrix with columns `a_i`.
    pub fn matrix_a(&self) -> ScalarMatrix {
        ScalarMatrix::from_columns(&self.vectors, self.n)
    }

    /// The `n × |I|` matrix with columns `a_i`, `i ∈ I`.
    pub fn columns(&self, face: &[usize]) -> ScalarMatrix {
        let cols: Vec<ScalarVec> = face.iter().map(|&i| self.vector(i).clone()).collect();
        ScalarMatrix::from_columns(&cols, self.n)
    }

    pub(crate) fn sign(&self, x: &crate::scalar::Scalar) -> Result<i8> {
        x.sign(&self.table, self.max_bits)
    }
}
