use super::SimplicialComplex;
use crate::complexes::GenSet;
use crate::monomial::{lcm_lattice, MonomialIdeal, Multidegree};
use crate::{Error, Result};

/// A squarefree ideal whose lcm lattice is the face lattice of `Δ` with a top
/// element adjoined (unless `Δ` is a full simplex).
///
/// Variables are indexed by the meet-irreducible elements `p` of that lattice
/// and vertex `j` becomes `∏_{j ∉ p} x_p`, so the lcm of a face `W` is the
/// product over the meet-irreducibles not containing `W`. The lattice
/// isomorphism `W ↦ lcm(W)` is verified before returning.
pub fn ideal_from_cone_complex(delta: &SimplicialComplex) -> Result<MonomialIdeal> {
    let k = delta.num_vertices();
    if delta.is_cone().is_none() {
        return Err(Error::Precondition("the complex is not a cone".into()));
    }
    if let Some(v) = (0..k).find(|&v| !delta.contains(GenSet::singleton(v))) {
        return Err(Error::Precondition(format!("vertex {} is not a face", v + 1)));
    }
    let full = GenSet((1u64 << k) - 1);
    let faces: Vec<GenSet> = delta.faces().collect();
    // Elements of the lattice: faces, plus `None` for an adjoined top.
    let has_top = !delta.contains(full);
    // Upper covers of a face inside the lattice.
    let covers = |p: GenSet| -> usize {
        let up: Vec<GenSet> = faces.iter().copied().filter(|&q| q != p && p.is_subset(q)).collect();
        let minimal = up.iter().filter(|&&q| !up.iter().any(|&r| r != q && r.is_subset(q))).count();
        if minimal == 0 && has_top {
            1
        } else {
            minimal
        }
    };
    let irreducible: Vec<GenSet> = faces.iter().copied().filter(|&p| p != full && covers(p) == 1).collect();
    let n = irreducible.len();
    if n == 0 {
        return Err(Error::Precondition("no variables: the complex has no vertices".into()));
    }
    let generators: Vec<Multidegree> = (0..k)
        .map(|j| Multidegree::new(irreducible.iter().map(|p| i64::from(!p.contains(j))).collect()))
        .collect();
    let ideal = MonomialIdeal::new(n, generators)
        .map_err(|e| Error::Verification(format!("construction produced an invalid ideal: {e}")))?;
    verify_face_lattice(&ideal, delta)?;
    Ok(ideal)
}

/// Checks that `lcm(W)` for faces `W`, plus the lcm of all generators as top,
/// is an order isomorphism from the face lattice onto the lcm lattice.
fn verify_face_lattice(ideal: &MonomialIdeal, delta: &SimplicialComplex) -> Result<()> {
    let fail = |msg: &str| Err(Error::Verification(format!("lcm lattice differs from the face lattice: {msg}")));
    let k = delta.num_vertices();
    let full = GenSet((1u64 << k) - 1);
    let faces: Vec<GenSet> = delta.faces().collect();
    let image: Vec<Multidegree> = faces.iter().map(|w| ideal.lcm_of(w.0)).collect();
    let top = ideal.lcm();
    let mut elements = image.clone();
    if !delta.contains(full) {
        if image.contains(&top) {
            return fail("a proper face has the lcm of all generators");
        }
        elements.push(top.clone());
    }
    let lattice = lcm_lattice(ideal);
    if lattice.len() != elements.len() || !elements.iter().all(|e| lattice.contains(e)) {
        return fail("element sets differ");
    }
    for (a, wa) in faces.iter().enumerate() {
        for (b, wb) in faces.iter().enumerate() {
            if wa.is_subset(*wb) != image[a].le(&image[b]) {
                return fail(&format!("order mismatch between {wa} and {wb}"));
            }
        }
    }
    // every subset of generators lands on the closure of its face
    for w in 0..1u64 << k {
        let l = ideal.lcm_of(w);
        let closure = faces.iter().filter(|f| GenSet(w).is_subset(**f)).fold(None::<GenSet>, |acc, &f| {
            Some(acc.map_or(f, |g| GenSet(g.0 & f.0)))
        });
        let expected = closure.map_or(top.clone(), |c| ideal.lcm_of(c.0));
        if l != expected {
            return fail(&format!("subset {} does not map to its closure", GenSet(w)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::poset_isomorphic;
    use crate::monomial::Poset;

    fn face_lattice_poset(delta: &SimplicialComplex) -> Poset {
        let k = delta.num_vertices();
        let mut faces: Vec<u64> = delta.faces().map(|f| f.0).collect();
        let full = (1u64 << k) - 1;
        if !delta.contains(GenSet(full)) {
            faces.push(u64::MAX);
        }
        let leq = faces.iter().map(|&a| faces.iter().map(|&b| a & !b == 0).collect()).collect();
        Poset::new(faces.iter().map(|f| format!("{f:b}")).collect(), leq).unwrap()
    }

    #[test]
    fn single_vertex() {
        let d = SimplicialComplex::simplex(1);
        let i = ideal_from_cone_complex(&d).unwrap();
        assert_eq!(i.num_generators(), 1);
        assert!(i.is_squarefree());
    }

    #[test]
    fn edge() {
        let d = SimplicialComplex::simplex(2);
        let i = ideal_from_cone_complex(&d).unwrap();
        assert_eq!(i.num_generators(), 2);
        let l = lcm_lattice(&i);
        assert!(poset_isomorphic(&l.poset(), &face_lattice_poset(&d)).unwrap().is_some());
    }

    #[test]
    fn cone_over_path() {
        let path = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let d = path.cone();
        let i = ideal_from_cone_complex(&d).unwrap();
        assert!(i.is_squarefree());
        let l = lcm_lattice(&i);
        assert_eq!(l.len(), d.len() + 1);
        assert!(poset_isomorphic(&l.poset(), &face_lattice_poset(&d)).unwrap().is_some());
    }

    #[test]
    fn non_cone_rejected() {
        let d = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(ideal_from_cone_complex(&d).is_err());
    }
}
