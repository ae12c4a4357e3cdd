//! Multidegrees, monomial ideals, polarization, lcm lattices and posets.

mod ideal;
mod lattice;
mod multidegree;
mod polarize;

pub use ideal::{generator_name, MonomialIdeal};
pub use lattice::{lcm_lattice, poset_isomorphic, LatticeIso, LcmLattice, Poset, POSET_ISO_CAP};
pub use multidegree::{divides, join, meet, Multidegree};
pub use polarize::{polarize, Polarization};
