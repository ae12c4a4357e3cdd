//! Fixed and seeded test ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comb::{ideal_from_cone_complex, SimplicialComplex};
use crate::complexes::scarf_complex;
use crate::monomial::{MonomialIdeal, Multidegree};
use crate::Result;

fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).expect("valid ideal")
}

/// `⟨x1x2y, x2x3, x3x4z, x4x1⟩` in `k[x1,…,x4,y,z]`.
pub fn four_cycle_with_tails() -> MonomialIdeal {
    ideal(6, &[&[1, 1, 0, 0, 1, 0], &[0, 1, 1, 0, 0, 0], &[0, 0, 1, 1, 0, 1], &[1, 0, 0, 1, 0, 0]])
}

/// `⟨x², xy, xz⟩`.
pub fn x_squared_xy_xz() -> MonomialIdeal {
    ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]])
}

/// The edge ideal of the path on six vertices.
pub fn path_of_five_edges() -> MonomialIdeal {
    let gens: Vec<Multidegree> = (0..5)
        .map(|i| Multidegree::new((0..6).map(|j| i64::from(j == i || j == i + 1)).collect()))
        .collect();
    MonomialIdeal::new(6, gens).expect("valid ideal")
}

/// The edge ideal of the hexagon.
pub fn hexagon() -> MonomialIdeal {
    let gens: Vec<Multidegree> = (0..6)
        .map(|i| Multidegree::new((0..6).map(|j| i64::from(j == i || j == (i + 1) % 6)).collect()))
        .collect();
    MonomialIdeal::new(6, gens).expect("valid ideal")
}

/// `⟨x², xy, y²z², zw, w²⟩` in `k[x,y,z,w]`.
pub fn strongly_generic_five() -> MonomialIdeal {
    ideal(4, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[0, 2, 2, 0], &[0, 0, 1, 1], &[0, 0, 0, 2]])
}

/// The rooting order under which the Lyubeznik complex of
/// [`strongly_generic_five`] is minimal.
pub const STRONGLY_GENERIC_ORDER: [usize; 5] = [1, 3, 0, 2, 4];

/// The squarefree ideal whose lcm lattice is the face lattice of the Scarf
/// complex of [`strongly_generic_five`] with a top adjoined.
pub fn scarf_cone_construct() -> Result<MonomialIdeal> {
    ideal_from_cone_complex(&scarf_complex(&strongly_generic_five())?)
}

/// The named ideals used throughout the tests.
pub fn paper_ideals() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("four-cycle-with-tails", four_cycle_with_tails()),
        ("x2-xy-xz", x_squared_xy_xz()),
        ("path-of-five-edges", path_of_five_edges()),
        ("hexagon", hexagon()),
        ("strongly-generic-five", strongly_generic_five()),
        ("scarf-cone-construct", scarf_cone_construct().expect("construction verifies")),
    ]
}

/// A random monomial ideal with at most `max_gens` minimal generators in at
/// most `max_vars` variables and exponents at most 2.
pub fn random_ideal(rng: &mut ChaCha8Rng, max_gens: usize, max_vars: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_vars);
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Multidegree> = (0..k)
            .map(|_| Multidegree::new((0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { 0 }).collect()))
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        if let Ok(i) = MonomialIdeal::minimal_generators(&gens, n) {
            return i;
        }
    }
}

pub fn random_ideals(seed: u64, count: usize, max_gens: usize, max_vars: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ideal(&mut rng, max_gens, max_vars)).collect()
}

/// A random squarefree ideal, as for [`random_ideal`].
pub fn random_squarefree_ideal(rng: &mut ChaCha8Rng, max_gens: usize, max_vars: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_vars);
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Multidegree> = (0..k)
            .map(|_| Multidegree::new((0..n).map(|_| i64::from(rng.gen_bool(0.4))).collect()))
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        if let Ok(i) = MonomialIdeal::minimal_generators(&gens, n) {
            return i;
        }
    }
}

pub fn random_squarefree_ideals(seed: u64, count: usize, max_gens: usize, max_vars: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_squarefree_ideal(&mut rng, max_gens, max_vars)).collect()
}

/// The cone over a random complex on at most `max_vertices − 1` vertices,
/// each of which is a face.
pub fn random_cone_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..max_vertices);
    let mut faces: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let f: u64 = rng.gen_range(1..1u64 << n);
        faces.extend((1..=f).filter(|&s| s & f == s));
    }
    faces.push(0);
    SimplicialComplex::from_faces(n, faces).expect("downward closed").cone()
}

pub fn random_cone_complexes(seed: u64, count: usize, max_vertices: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_cone_complex(&mut rng, max_vertices)).collect()
}

/// The cone over the path with three vertices.
pub fn cone_over_path() -> SimplicialComplex {
    SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2]]).expect("valid").cone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_ideals() {
        assert_eq!(paper_ideals().len(), 6);
        assert!(strongly_generic_five().is_strongly_generic());
        assert!(scarf_cone_construct().unwrap().is_squarefree());
    }

    #[test]
    fn seeded_ideals_are_reproducible() {
        let a = random_ideals(7, 10, 5, 6);
        assert_eq!(a, random_ideals(7, 10, 5, 6));
        assert!(a.iter().all(|i| i.num_generators() <= 5 && i.num_vars() <= 6));
        assert!(random_squarefree_ideals(7, 10, 5, 6).iter().all(MonomialIdeal::is_squarefree));
    }

    #[test]
    fn random_cones() {
        for d in random_cone_complexes(3, 20, 6) {
            assert!(d.num_vertices() <= 6);
            assert!(d.is_cone().is_some());
            assert!((0..d.num_vertices()).all(|v| d.contains(crate::complexes::GenSet::singleton(v))));
        }
    }
}
