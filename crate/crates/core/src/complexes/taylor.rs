use std::collections::HashMap;

use num_traits::Zero;

use super::{BasisElement, FreeComplex, GenSet};
use crate::comb::SimplicialComplex;
use crate::monomial::{MonomialIdeal, Multidegree};
use crate::scalar::{sign, SparseVec};
use crate::{Error, Result};

/// Default bound on the number of generators accepted by [`taylor_complex`].
pub const TAYLOR_CAP: usize = 16;

fn subset_order(masks: &mut [u64]) {
    masks.sort_by_key(|&m| (m.count_ones(), GenSet(m).indices()));
}

pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    taylor_complex_capped(ideal, TAYLOR_CAP)
}

pub fn taylor_complex_capped(ideal: &MonomialIdeal, cap: usize) -> Result<FreeComplex> {
    let k = ideal.num_generators();
    if k > cap || k > 63 {
        return Err(Error::GeneratorCap { got: k, cap: cap.min(63) });
    }
    taylor_subcomplex(ideal, |_| true)
}

/// The subcomplex of the Taylor complex spanned by the `g_W` with `keep(W)`.
///
/// The kept family must be closed under taking subsets.
pub fn taylor_subcomplex(ideal: &MonomialIdeal, keep: impl Fn(GenSet) -> bool) -> Result<FreeComplex> {
    let k = ideal.num_generators();
    if k > 63 {
        return Err(Error::GeneratorCap { got: k, cap: 63 });
    }
    let mut masks: Vec<u64> = (0..1u64 << k).filter(|&m| keep(GenSet(m))).collect();
    subset_order(&mut masks);
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut basis = Vec::with_capacity(masks.len());
    let mut diff = Vec::with_capacity(masks.len());
    for &m in &masks {
        let w = GenSet(m);
        basis.push(BasisElement { hdeg: w.len(), mdeg: ideal.lcm_of(m), label: Some(w) });
        let mut d = SparseVec::new();
        for (pos, i) in w.indices().into_iter().enumerate() {
            let face = w.without(i);
            let Some(&target) = index.get(&face.0) else {
                return Err(Error::InvalidComplex(format!("subset family not closed: {face} missing below {w}")));
            };
            d.insert(target, sign(pos));
        }
        diff.push(d);
    }
    if !index.contains_key(&0) {
        return Err(Error::InvalidComplex("empty subset missing".into()));
    }
    FreeComplex::new(ideal.num_vars(), basis, diff, true)
}

/// Subsets `W` whose lcm is attained by no other subset.
pub fn scarf_faces(ideal: &MonomialIdeal) -> Result<Vec<GenSet>> {
    let k = ideal.num_generators();
    if k > TAYLOR_CAP {
        return Err(Error::GeneratorCap { got: k, cap: TAYLOR_CAP });
    }
    let mut counts: HashMap<Multidegree, usize> = HashMap::new();
    let lcms: Vec<Multidegree> = (0..1u64 << k).map(|m| ideal.lcm_of(m)).collect();
    for l in &lcms {
        *counts.entry(l.clone()).or_default() += 1;
    }
    let mut faces: Vec<u64> = (0..1u64 << k).filter(|&m| counts[&lcms[m as usize]] == 1).collect();
    subset_order(&mut faces);
    Ok(faces.into_iter().map(GenSet).collect())
}

pub fn scarf_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let faces = scarf_faces(ideal)?;
    SimplicialComplex::from_faces(ideal.num_generators(), faces.into_iter().map(|f| f.0))
}

/// The Taylor subcomplex on the faces of the Scarf complex.
pub fn algebraic_scarf(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let faces: std::collections::HashSet<GenSet> = scarf_faces(ideal)?.into_iter().collect();
    taylor_subcomplex(ideal, |w| faces.contains(&w))
}

/// The Lyubeznik complex for a total order on the generators.
///
/// `order` lists generator indices from smallest to largest. A subset
/// `W = {m_{i_1} ≺ … ≺ m_{i_s}}` (sorted by `order`) is kept when for every `t`
/// no generator `m_q` with `q ≺ m_{i_t}` divides `lcm(m_{i_t}, …, m_{i_s})`.
/// Signs still follow the input order of the generators.
pub fn lyubeznik(ideal: &MonomialIdeal, order: &[usize]) -> Result<FreeComplex> {
    let k = ideal.num_generators();
    let mut seen = vec![false; k];
    if order.len() != k || order.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::Precondition(format!("{order:?} is not a permutation of the {k} generators")));
    }
    if k > TAYLOR_CAP {
        return Err(Error::GeneratorCap { got: k, cap: TAYLOR_CAP });
    }
    let mut rank = vec![0; k];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let gens = ideal.generators();
    let rooted = |w: GenSet| {
        let mut members = w.indices();
        members.sort_by_key(|&i| rank[i]);
        (0..members.len()).all(|t| {
            let tail = members[t..]
                .iter()
                .fold(Multidegree::zero(ideal.num_vars()), |acc, &i| acc.join(&gens[i]));
            order[..rank[members[t]]].iter().all(|&q| !gens[q].le(&tail))
        })
    };
    let complex = taylor_subcomplex(ideal, rooted)?;
    debug_assert!(complex.diff().iter().all(|d| d.values().all(|c| !c.is_zero())));
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{is_minimal, is_resolution};
    use crate::scalar::int;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    #[test]
    fn taylor_differential_signs() {
        // x², xy, xz: ∂g_ab = x·g_b − y·g_a
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let t = taylor_complex(&i).unwrap();
        assert_eq!(t.len(), 8);
        let ab = t.find_label(GenSet::from_indices(&[0, 1])).unwrap();
        let a = t.find_label(GenSet::singleton(0)).unwrap();
        let b = t.find_label(GenSet::singleton(1)).unwrap();
        let d = t.diff_of(ab);
        assert_eq!(d[&b], int(1));
        assert_eq!(d[&a], int(-1));
        assert_eq!(t.mdeg(ab).sub(t.mdeg(b)), Multidegree::new(vec![1, 0, 0]));
        assert_eq!(t.mdeg(ab).sub(t.mdeg(a)), Multidegree::new(vec![0, 1, 0]));
        assert!(t.d_squared_is_zero());
        assert!(is_resolution(&t, &i));
        assert!(is_minimal(&t));
    }

    #[test]
    fn basis_order_is_by_size_then_lex() {
        let i = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let t = taylor_complex(&i).unwrap();
        let names: Vec<String> = (0..t.len()).map(|g| t.name(g)).collect();
        assert_eq!(names, ["1", "g_a", "g_b", "g_c", "g_ab", "g_ac", "g_bc", "g_abc"]);
    }

    #[test]
    fn principal_ideal() {
        let i = ideal(2, &[&[1, 2]]);
        let t = taylor_complex(&i).unwrap();
        assert_eq!(t.ranks(), vec![1, 1]);
        assert_eq!(t.diff_of(1)[&0], int(1));
    }

    #[test]
    fn generator_cap() {
        let gens: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
        let i = MonomialIdeal::new(5, gens.into_iter().map(Multidegree::new).collect()).unwrap();
        assert!(matches!(taylor_complex_capped(&i, 4), Err(Error::GeneratorCap { got: 5, cap: 4 })));
    }

    #[test]
    fn scarf_of_regular_sequence_is_simplex() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(scarf_faces(&i).unwrap().len(), 4);
    }

    #[test]
    fn scarf_faces_of_four_cycle_with_extras() {
        // x1x2y, x2x3, x3x4z, x4x1 over x1..x4, y, z
        let i = ideal(6, &[&[1, 1, 0, 0, 1, 0], &[0, 1, 1, 0, 0, 0], &[0, 0, 1, 1, 0, 1], &[1, 0, 0, 1, 0, 0]]);
        let faces = scarf_faces(&i).unwrap();
        let counts: Vec<usize> = (0..4).map(|s| faces.iter().filter(|f| f.len() == s).count()).collect();
        assert_eq!(counts, vec![1, 4, 5, 2]);
        assert!(faces.contains(&GenSet::from_indices(&[0, 1, 3])));
        assert!(faces.contains(&GenSet::from_indices(&[1, 2, 3])));
        let s = algebraic_scarf(&i).unwrap();
        assert!(is_resolution(&s, &i));
    }

    #[test]
    fn lyubeznik_regular_sequence_keeps_everything() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(lyubeznik(&i, &[1, 0]).unwrap().len(), 4);
        assert!(lyubeznik(&i, &[0, 0]).is_err());
    }

    #[test]
    fn lyubeznik_is_a_resolution() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let l = lyubeznik(&i, &order).unwrap();
            assert!(is_resolution(&l, &i));
            assert_eq!(l.ranks(), vec![1, 3, 2]);
        }
    }
}
