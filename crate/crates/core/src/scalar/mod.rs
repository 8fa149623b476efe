//! Exact arithmetic over Q(s_1, …, s_k) and the linear algebra and LP
//! machinery built on it.

pub mod complex;
pub mod interval;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod relation;
pub mod symbols;
pub mod value;

pub use complex::ComplexScalar;
pub use interval::{FloatInterval, Interval};
pub use lp::{lp_feasible, LpOutcome, LpProblem, Relation};
pub use matrix::{dot, QMatrix, ScalarMatrix, ScalarVec};
pub use parse::{parse_scalar, print_scalar};
pub use symbols::{Symbol, SymbolSource, SymbolTable};
pub use value::{Scalar, DEFAULT_MAX_BITS, INITIAL_BITS};

/// Sign of `x` (−1, 0, +1); see [`Scalar::sign`].
pub fn sign(x: &Scalar, table: &SymbolTable, max_bits: u32) -> crate::Result<i8> {
    x.sign(table, max_bits)
}

/// Basis of the kernel of `m` over Q(s).
pub fn kernel_basis(m: &ScalarMatrix) -> Vec<ScalarVec> {
    m.kernel_basis()
}

/// Basis over Q of the rational vectors in the kernel of `m`.
pub fn rational_solution_space(m: &ScalarMatrix) -> Vec<Vec<num_rational::BigRational>> {
    m.rational_solution_space()
}
