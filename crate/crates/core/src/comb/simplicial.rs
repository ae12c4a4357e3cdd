use std::collections::BTreeSet;
use std::fmt;

use super::FVector;
use crate::complexes::GenSet;
use crate::{Error, Result};

/// A simplicial complex on the vertices `0..num_vertices`, faces stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    faces: BTreeSet<u64>,
}

impl SimplicialComplex {
    /// Checks that the family contains `∅` and is closed under subsets.
    pub fn from_faces(num_vertices: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        if num_vertices > 63 {
            return Err(Error::InvalidSimplicialComplex(format!("{num_vertices} vertices is too many")));
        }
        let faces: BTreeSet<u64> = faces.into_iter().collect();
        if !faces.contains(&0) {
            return Err(Error::InvalidSimplicialComplex("the empty face is missing".into()));
        }
        for &f in &faces {
            if f >> num_vertices != 0 {
                return Err(Error::InvalidSimplicialComplex(format!("face {} uses an unknown vertex", GenSet(f))));
            }
            for i in GenSet(f).indices() {
                if !faces.contains(&(f & !(1 << i))) {
                    return Err(Error::InvalidSimplicialComplex(format!(
                        "{} is a face but {} is not",
                        GenSet(f),
                        GenSet(f & !(1 << i))
                    )));
                }
            }
        }
        Ok(Self { num_vertices, faces })
    }

    /// The smallest complex containing the given faces.
    pub fn from_facets(num_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut faces = BTreeSet::from([0u64]);
        for facet in facets {
            if let Some(&v) = facet.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidSimplicialComplex(format!("vertex {v} out of range")));
            }
            let mask = GenSet::from_indices(facet).0;
            let mut sub = mask;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        Self::from_faces(num_vertices, faces)
    }

    pub fn simplex(num_vertices: usize) -> Self {
        Self::from_facets(num_vertices, &[(0..num_vertices).collect()]).expect("simplex")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = GenSet> + '_ {
        self.faces.iter().map(|&f| GenSet(f))
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: GenSet) -> bool {
        self.faces.contains(&face.0)
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<GenSet> {
        self.faces()
            .filter(|&f| (0..self.num_vertices).all(|v| f.contains(v) || !self.contains(GenSet(f.0 | 1 << v))))
            .collect()
    }

    /// Faces counted by cardinality.
    pub fn f_vector(&self) -> FVector {
        let mut f = vec![0u64; self.num_vertices + 2];
        for face in self.faces() {
            f[face.len()] += 1;
        }
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        FVector(f)
    }

    /// A vertex `v` with `F ∪ {v} ∈ Δ` for every face `F`.
    pub fn is_cone(&self) -> Option<usize> {
        (0..self.num_vertices).find(|&v| self.faces.iter().all(|&f| self.faces.contains(&(f | 1 << v))))
    }

    /// The cone over `self` with a new apex `num_vertices`.
    pub fn cone(&self) -> Self {
        let apex = 1u64 << self.num_vertices;
        let faces = self.faces.iter().flat_map(|&f| [f, f | apex]);
        Self::from_faces(self.num_vertices + 1, faces).expect("cone is a complex")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets().into_iter().map(|w| format!("{{{w}}}")).collect();
        write!(f, "{}", facets.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_fvector() {
        assert_eq!(SimplicialComplex::simplex(3).f_vector(), FVector(vec![1, 3, 3, 1]));
    }

    #[test]
    fn downward_closure_enforced() {
        assert!(SimplicialComplex::from_faces(2, [0, 3]).is_err());
        assert!(SimplicialComplex::from_faces(2, [1]).is_err());
    }

    #[test]
    fn cones() {
        assert!(SimplicialComplex::simplex(3).is_cone().is_some());
        let two_edges = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two_edges.is_cone(), None);
        let c = two_edges.cone();
        assert_eq!(c.is_cone(), Some(4));
        assert_eq!(c.f_vector(), FVector(vec![1, 5, 6, 2]));
        assert_eq!(two_edges.facets().len(), 2);
    }
}
