//! Simplicial complexes, f-vectors, cones and Morse matchings on the Taylor complex.

mod construct;
mod fvector;
mod morse;
mod simplicial;

pub use construct::ideal_from_cone_complex;
pub use fvector::{cone_deconvolve, is_cone_fvector, kruskal_katona_check, FVector};
pub use morse::{
    cone_morse_matching, morse_quotient, verify_morse_matching, MorseMatching, MorseQuotient, MorseReport,
};
pub use simplicial::SimplicialComplex;
