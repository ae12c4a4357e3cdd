use std::collections::BTreeSet;

use super::FreeComplex;
use crate::linalg;
use crate::monomial::{MonomialIdeal, Multidegree};
use crate::scalar::SparseVec;

/// The degree-`a` strand of a free complex as a complex of k-vector spaces.
///
/// The graded piece of `S(−mdeg g)` in degree `a` is spanned by
/// `x^{a − mdeg g} g` when `mdeg g ≤ a`, so the matrices are exactly the
/// stored scalar coefficients restricted to those basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: Multidegree,
    /// Basis ids in each homological degree.
    pub bases: Vec<Vec<usize>>,
    /// `images[i][k]` is the image of `bases[i][k]`, over global basis ids.
    pub images: Vec<Vec<SparseVec>>,
}

impl GradedComponent {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// `dim H_i` for every homological degree.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.images.iter().map(|im| linalg::rank(im)).collect();
        (0..self.bases.len())
            .map(|i| self.bases[i].len() - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0))
            .collect()
    }
}

pub fn graded_component(complex: &FreeComplex, a: &Multidegree) -> GradedComponent {
    let top = complex.max_hdeg() + 1;
    let mut bases = vec![Vec::new(); top];
    for g in 0..complex.len() {
        if complex.mdeg(g).le(a) {
            bases[complex.hdeg(g)].push(g);
        }
    }
    let images = bases
        .iter()
        .map(|ids| ids.iter().map(|&g| complex.diff_of(g).clone()).collect())
        .collect();
    GradedComponent { degree: a.clone(), bases, images }
}

/// Degrees at which exactness has to be tested: all joins of subsets of the
/// generators and basis degrees.
///
/// Every graded strand coincides with the strand at such a join, so testing
/// these degrees decides exactness everywhere.
fn test_degrees(complex: &FreeComplex, ideal: &MonomialIdeal) -> BTreeSet<Multidegree> {
    let mut set: BTreeSet<Multidegree> = BTreeSet::new();
    set.insert(Multidegree::zero(ideal.num_vars()));
    let seeds: BTreeSet<Multidegree> = ideal
        .generators()
        .iter()
        .cloned()
        .chain(complex.basis().iter().map(|b| b.mdeg.clone()))
        .collect();
    for s in seeds {
        let joins: Vec<Multidegree> = set.iter().map(|x| x.join(&s)).collect();
        set.extend(joins);
    }
    set
}

/// First degree at which the complex fails to resolve `S/I`, with the
/// homology dimensions found there.
pub fn resolution_witness(complex: &FreeComplex, ideal: &MonomialIdeal) -> Option<(Multidegree, Vec<usize>)> {
    if complex.num_vars() != ideal.num_vars() || !complex.is_augmented() {
        return Some((Multidegree::zero(ideal.num_vars()), Vec::new()));
    }
    test_degrees(complex, ideal).into_iter().find_map(|a| {
        let h = graded_component(complex, &a).homology_dims();
        let expect0 = usize::from(!ideal.contains(&a));
        let ok = h.first().copied().unwrap_or(0) == expect0 && h.iter().skip(1).all(|&d| d == 0);
        (!ok).then_some((a, h))
    })
}

/// Whether `complex` is a free resolution of `S/I`.
pub fn is_resolution(complex: &FreeComplex, ideal: &MonomialIdeal) -> bool {
    resolution_witness(complex, ideal).is_none()
}

/// A differential entry between basis elements of equal multidegree.
pub fn minimality_witness(complex: &FreeComplex) -> Option<(usize, usize)> {
    (0..complex.len()).find_map(|g| {
        complex
            .diff_of(g)
            .keys()
            .find(|&&h| complex.mdeg(h) == complex.mdeg(g))
            .map(|&h| (g, h))
    })
}

/// `∂F ⊆ mF`.
pub fn is_minimal(complex: &FreeComplex) -> bool {
    minimality_witness(complex).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{taylor_complex, BasisElement, GenSet};
    use crate::scalar::{int, unit_vec};
    use num_traits::Signed;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn component_at_zero() {
        let i = MonomialIdeal::new(2, vec![md(&[1, 0]), md(&[0, 1])]).unwrap();
        let t = taylor_complex(&i).unwrap();
        let c = graded_component(&t, &md(&[0, 0]));
        assert_eq!(c.dims(), vec![1, 0, 0]);
        let full = graded_component(&t, &md(&[1, 1]));
        assert_eq!(full.dims(), vec![1, 2, 1]);
        assert_eq!(full.homology_dims(), vec![0, 0, 0]);
    }

    #[test]
    fn component_divisibility_filter() {
        let i = MonomialIdeal::new(3, vec![md(&[2, 0, 0]), md(&[1, 1, 0]), md(&[1, 0, 1])]).unwrap();
        let t = taylor_complex(&i).unwrap();
        let c = graded_component(&t, &md(&[2, 1, 0]));
        let labels: Vec<Vec<GenSet>> = c
            .bases
            .iter()
            .map(|ids| ids.iter().map(|&g| t.element(g).label.unwrap()).collect())
            .collect();
        assert_eq!(labels[0], vec![GenSet::EMPTY]);
        assert_eq!(labels[1], vec![GenSet::singleton(0), GenSet::singleton(1)]);
        assert_eq!(labels[2], vec![GenSet::from_indices(&[0, 1])]);
    }

    #[test]
    fn non_resolution_detected() {
        // S ← S(−x) ← S(−xy) with ∂ = x, y would need y·x ≠ 0: drop the top to break exactness instead
        let i = MonomialIdeal::new(2, vec![md(&[1, 0]), md(&[0, 1])]).unwrap();
        let basis = vec![
            BasisElement { hdeg: 0, mdeg: md(&[0, 0]), label: None },
            BasisElement { hdeg: 1, mdeg: md(&[1, 0]), label: None },
            BasisElement { hdeg: 1, mdeg: md(&[0, 1]), label: None },
        ];
        let diff = vec![SparseVec::new(), unit_vec(0), unit_vec(0)];
        let c = FreeComplex::new(2, basis, diff, true).unwrap();
        let (a, h) = resolution_witness(&c, &i).unwrap();
        assert_eq!(a, md(&[1, 1]));
        assert_eq!(h, vec![0, 1]);
    }

    #[test]
    fn non_minimal_taylor() {
        let i = MonomialIdeal::new(3, vec![md(&[1, 1, 0]), md(&[0, 1, 1]), md(&[1, 0, 1])]).unwrap();
        let t = taylor_complex(&i).unwrap();
        assert!(is_resolution(&t, &i));
        let (g, h) = minimality_witness(&t).unwrap();
        assert_eq!(t.hdeg(g), 3);
        assert_eq!(t.diff_of(g)[&h].abs(), int(1));
    }
}
