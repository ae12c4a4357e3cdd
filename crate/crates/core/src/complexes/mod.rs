//! Multigraded free complexes and the constructions built on them.

mod betti;
mod complex;
mod homology;
mod minimize;
mod taylor;

pub use betti::{
    betti_poset, betti_table, check_subadditivity, minimal_resolution, t_vector, BettiTable, MinimalResolution,
    SubadditivityMode, SubadditivityReport, TVector,
};
pub use complex::{
    differential, divide_to_degree, squarefree_part, BasisElement, Element, FreeComplex, GenSet,
};
pub use homology::{
    graded_component, is_minimal, is_resolution, minimality_witness, resolution_witness, GradedComponent,
};
pub(crate) use minimize::Reducer;
pub use minimize::{minimize, minimize_with, PivotOrder, TransferData};
pub use taylor::{
    algebraic_scarf, lyubeznik, scarf_complex, scarf_faces, taylor_complex, taylor_complex_capped,
    taylor_subcomplex, TAYLOR_CAP,
};
