//! Multiplications on multigraded free complexes.
//!
//! A [`Multiplication`] stores one scalar vector per unordered pair of basis
//! elements of positive homological degree; the monomial factor of each
//! product term is `x^{mdeg g + mdeg h − mdeg e}`. Products with the unit are
//! implicit.
//!
//! Supportiveness is tested on basis pairs only. This suffices: every term of
//! a homogeneous element carries a basis element whose degree is at most the
//! element's degree, so the join of the factors' degrees only grows when
//! passing from basis elements to homogeneous elements.

mod homotopy;
mod multiplication;
mod solve;
mod structure;

pub use homotopy::{contracting_homotopy, laurent_dga, scaled_dga, ContractingHomotopy, LaurentMultiplication, ScaledDga};
pub use multiplication::{
    associator, check_axioms, check_dga_axioms, is_supportive, multiply, relabel, supportive_witness,
    taylor_multiplication, transfer_multiplication, DgaReport, Multiplication, Witness,
};
pub use solve::{
    associativity_scan, forced_products, leibniz_solution_space, ForcedProducts, MultiplicationSpace, ScanReport,
    ScanSample,
};
pub use structure::{
    avramov_obstruction, degree_one_generation, hilbert_cone_check, scarf_product_check, taylor_to_f_map,
    AvramovReport, DgIdeal, GenerationReport, HilbertConeReport, ScarfProductReport, TaylorToF,
};
