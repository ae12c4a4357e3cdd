use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::SimplicialComplex;
use crate::complexes::{FreeComplex, GenSet, Reducer, TransferData};
use crate::dga::{transfer_multiplication, Multiplication};
use crate::monomial::MonomialIdeal;
use crate::scalar;
use crate::{Error, Result};

/// Matched pairs `(V, W)` of generator subsets with `V ⊂ W`, `|W| = |V| + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseMatching {
    pub pairs: Vec<(GenSet, GenSet)>,
}

impl MorseMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_matched(&self, w: GenSet) -> bool {
        self.pairs.iter().any(|&(v, u)| v == w || u == w)
    }
}

/// The three properties of a Morse matching on a Taylor basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    /// Each pair is a codimension-one face pair and no subset appears twice.
    pub matching: bool,
    /// The face digraph with matched edges reversed has no directed cycle.
    pub acyclic: bool,
    /// Both members of every pair have the same lcm.
    pub equal_degrees: bool,
}

impl MorseReport {
    pub fn passes(&self) -> bool {
        self.matching && self.acyclic && self.equal_degrees
    }
}

/// `{(W ∖ {apex}, W) : apex ∈ W, W ∉ Δ}`.
pub fn cone_morse_matching(ideal: &MonomialIdeal, delta: &SimplicialComplex, apex: usize) -> Result<MorseMatching> {
    let k = ideal.num_generators();
    if delta.num_vertices() != k {
        return Err(Error::Precondition(format!(
            "Δ has {} vertices but the ideal has {k} generators",
            delta.num_vertices()
        )));
    }
    if apex >= k || !delta.faces().all(|f| delta.contains(f.union(GenSet::singleton(apex)))) {
        return Err(Error::Precondition(format!("vertex {} is not an apex of Δ", apex + 1)));
    }
    let pairs = (0u64..1 << k)
        .map(GenSet)
        .filter(|&w| w.contains(apex) && !delta.contains(w))
        .map(|w| (w.without(apex), w))
        .collect();
    Ok(MorseMatching { pairs })
}

pub fn verify_morse_matching(matching: &MorseMatching, taylor: &FreeComplex) -> MorseReport {
    let mut seen = BTreeSet::new();
    let mut matching_ok = true;
    for &(v, w) in &matching.pairs {
        matching_ok &= v.is_subset(w) && w.len() == v.len() + 1;
        matching_ok &= seen.insert(v) && seen.insert(w);
    }
    let equal_degrees = matching.pairs.iter().all(|&(v, w)| {
        match (taylor.find_label(v), taylor.find_label(w)) {
            (Some(a), Some(b)) => taylor.mdeg(a) == taylor.mdeg(b),
            _ => false,
        }
    });
    let acyclic = matching_ok && is_acyclic(matching, taylor);
    MorseReport { matching: matching_ok, acyclic, equal_degrees }
}

/// Edges `W → W ∖ {m}`, with matched edges pointing up instead.
fn is_acyclic(matching: &MorseMatching, taylor: &FreeComplex) -> bool {
    let up: BTreeMap<GenSet, GenSet> = matching.pairs.iter().copied().collect();
    let labels: Vec<GenSet> = taylor.basis().iter().filter_map(|b| b.label).collect();
    let successors = |w: GenSet| -> Vec<GenSet> {
        let mut out: Vec<GenSet> = w
            .indices()
            .into_iter()
            .map(|m| w.without(m))
            .filter(|&v| up.get(&v) != Some(&w))
            .collect();
        if let Some(&u) = up.get(&w) {
            out.push(u);
        }
        out
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: BTreeMap<GenSet, u8> = BTreeMap::new();
    for &start in &labels {
        if state.contains_key(&start) {
            continue;
        }
        let mut stack = vec![(start, successors(start), 0usize)];
        state.insert(start, 1);
        while let Some((node, succ, pos)) = stack.last_mut() {
            if *pos == succ.len() {
                state.insert(*node, 2);
                stack.pop();
                continue;
            }
            let next = succ[*pos];
            *pos += 1;
            match state.get(&next) {
                Some(1) => return false,
                Some(_) => {}
                None => {
                    state.insert(next, 1);
                    stack.push((next, successors(next), 0));
                }
            }
        }
    }
    true
}

/// The quotient of the Taylor DGA by the ideal spanned by the matched pairs.
#[derive(Clone, Debug)]
pub struct MorseQuotient {
    pub complex: Arc<FreeComplex>,
    pub multiplication: Multiplication,
    pub transfer: TransferData,
}

/// Cancels the matched pairs in the Taylor complex and carries the Taylor
/// product over.
///
/// The kernel of the projection is the S-span of `g_W` and `∂g_W` over the
/// upper members `W` of the pairs; it is checked to absorb products with every
/// Taylor basis element, so the transferred product is the quotient product.
pub fn morse_quotient(taylor: &Multiplication, matching: &MorseMatching) -> Result<MorseQuotient> {
    let t = taylor.complex();
    let report = verify_morse_matching(matching, t);
    if !report.passes() {
        return Err(Error::Precondition(format!("not a Morse matching: {report:?}")));
    }
    let ids: Vec<(usize, usize)> = matching
        .pairs
        .iter()
        .map(|&(v, w)| (t.find_label(v).unwrap(), t.find_label(w).unwrap()))
        .collect();
    let mut reducer = Reducer::new(t);
    let mut pending = ids.clone();
    while !pending.is_empty() {
        let Some(k) = pending.iter().position(|&(a, b)| reducer.entry(b, a).is_some()) else {
            return Err(Error::Verification(format!(
                "no matched pair can be cancelled; {} remain, e.g. ({}, {})",
                pending.len(),
                t.name(pending[0].0),
                t.name(pending[0].1)
            )));
        };
        let (a, b) = pending.swap_remove(k);
        reducer.cancel(a, b)?;
    }
    let (small, transfer) = reducer.finish()?;
    let upper: Vec<usize> = ids.iter().map(|&(_, b)| b).collect();
    for &w in &upper {
        for u in [scalar::unit_vec(w), t.diff_of(w).clone()] {
            for s in 0..t.len() {
                let p = scalar::apply(&transfer.projection, &taylor.product_vec(&scalar::unit_vec(s), &u));
                if !p.is_empty() {
                    return Err(Error::Verification(format!(
                        "the matched span is not a DG-ideal: {} times an element from {} survives",
                        t.name(s),
                        t.name(w)
                    )));
                }
            }
        }
    }
    let small = Arc::new(small);
    let multiplication = transfer_multiplication(taylor, &transfer, Arc::clone(&small))?;
    Ok(MorseQuotient { complex: small, multiplication, transfer })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::ideal_from_cone_complex;
    use crate::complexes::{is_minimal, is_resolution, taylor_complex};
    use crate::dga::{check_dga_axioms, taylor_multiplication};
    use crate::monomial::Multidegree;

    fn pipeline(delta: &SimplicialComplex) -> (MonomialIdeal, MorseQuotient) {
        let apex = delta.is_cone().unwrap();
        let ideal = ideal_from_cone_complex(delta).unwrap();
        let taylor = Arc::new(taylor_complex(&ideal).unwrap());
        let m = cone_morse_matching(&ideal, delta, apex).unwrap();
        assert!(verify_morse_matching(&m, &taylor).passes());
        let q = morse_quotient(&taylor_multiplication(taylor).unwrap(), &m).unwrap();
        (ideal, q)
    }

    #[test]
    fn full_simplex_matches_nothing() {
        let delta = SimplicialComplex::simplex(3);
        let ideal = ideal_from_cone_complex(&delta).unwrap();
        assert!(cone_morse_matching(&ideal, &delta, 0).unwrap().is_empty());
        let (_, q) = pipeline(&delta);
        assert!(q.transfer.is_identity());
    }

    #[test]
    fn cone_over_path() {
        let path = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let delta = path.cone();
        let (ideal, q) = pipeline(&delta);
        assert_eq!(q.complex.ranks(), vec![1, 4, 5, 2]);
        assert!(is_resolution(&q.complex, &ideal));
        assert!(is_minimal(&q.complex));
        assert!(check_dga_axioms(&q.multiplication).passes_all());
        let top = ideal.lcm();
        let t = taylor_complex(&ideal).unwrap();
        let m = cone_morse_matching(&ideal, &delta, 3).unwrap();
        assert!(m.pairs.iter().all(|&(v, _)| t.mdeg(t.find_label(v).unwrap()) == &top));
    }

    #[test]
    fn violations_detected() {
        let ideal = MonomialIdeal::new(2, vec![Multidegree::new(vec![1, 0]), Multidegree::new(vec![0, 1])]).unwrap();
        let t = taylor_complex(&ideal).unwrap();
        let unequal = MorseMatching { pairs: vec![(GenSet::from_indices(&[0]), GenSet::from_indices(&[0, 1]))] };
        let r = verify_morse_matching(&unequal, &t);
        assert!(r.matching && !r.equal_degrees);
        let shared = MorseMatching {
            pairs: vec![
                (GenSet::from_indices(&[0]), GenSet::from_indices(&[0, 1])),
                (GenSet::from_indices(&[1]), GenSet::from_indices(&[0, 1])),
            ],
        };
        assert!(!verify_morse_matching(&shared, &t).matching);
        assert!(verify_morse_matching(&MorseMatching::default(), &t).passes());
    }
}
