use std::collections::{BTreeMap, BTreeSet};

use super::{MonomialIdeal, Multidegree};
use crate::{Error, Result};

/// Default bound on poset sizes accepted by [`poset_isomorphic`].
pub const POSET_ISO_CAP: usize = 64;

/// The lattice of least common multiples of subsets of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmLattice {
    /// Sorted by total degree, then lexicographically; `elements[0]` is the bottom.
    elements: Vec<Multidegree>,
    /// `atoms[i]` is the index of generator `i` in `elements`.
    atoms: Vec<usize>,
}

pub fn lcm_lattice(ideal: &MonomialIdeal) -> LcmLattice {
    let mut set: BTreeSet<Multidegree> = BTreeSet::new();
    set.insert(Multidegree::zero(ideal.num_vars()));
    for g in ideal.generators() {
        let joins: Vec<Multidegree> = set.iter().map(|x| x.join(g)).collect();
        set.extend(joins);
    }
    let mut elements: Vec<Multidegree> = set.into_iter().collect();
    elements.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    let atoms = ideal
        .generators()
        .iter()
        .map(|g| elements.iter().position(|e| e == g).expect("generator in lattice"))
        .collect();
    LcmLattice { elements, atoms }
}

impl LcmLattice {
    pub fn elements(&self) -> &[Multidegree] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn bottom(&self) -> &Multidegree {
        &self.elements[0]
    }

    pub fn top(&self) -> &Multidegree {
        self.elements.last().expect("nonempty lattice")
    }

    pub fn index_of(&self, a: &Multidegree) -> Option<usize> {
        self.elements.iter().position(|e| e == a)
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        self.index_of(a).is_some()
    }

    pub fn is_join_closed(&self) -> bool {
        let set: BTreeSet<&Multidegree> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.join(b))))
    }

    pub fn poset(&self) -> Poset {
        Poset::from_multidegrees(&self.elements)
    }
}

/// A finite poset stored as a full comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from a comparison table, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("comparison table has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Precondition("comparison is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Precondition("comparison is not antisymmetric".into()));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::Precondition("comparison is not transitive".into()));
                    }
                }
            }
        }
        Ok(Self { labels, leq })
    }

    /// Distinct multidegrees ordered by divisibility.
    pub fn from_multidegrees(elements: &[Multidegree]) -> Self {
        let leq = elements
            .iter()
            .map(|a| elements.iter().map(|b| a.le(b)).collect())
            .collect();
        Self { labels: elements.iter().map(|e| e.to_string()).collect(), leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Length of the longest chain ending at each element.
    fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        let mut h = vec![0; n];
        for &i in &order {
            h[i] = (0..n)
                .filter(|&j| j != i && self.leq[j][i])
                .map(|j| h[j] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    fn signatures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let h = self.heights();
        (0..n)
            .map(|i| {
                let below = (0..n).filter(|&j| self.leq[j][i]).count();
                let above = (0..n).filter(|&j| self.leq[i][j]).count();
                (h[i], below, above)
            })
            .collect()
    }
}

/// Searches for an order isomorphism `P → Q`, returned as the image index of
/// every element of `P`.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Result<Option<Vec<usize>>> {
    poset_isomorphic_capped(p, q, POSET_ISO_CAP)
}

pub fn poset_isomorphic_capped(p: &Poset, q: &Poset, cap: usize) -> Result<Option<Vec<usize>>> {
    for s in [p, q] {
        if s.len() > cap {
            return Err(Error::PosetCap { got: s.len(), cap });
        }
    }
    if p.len() != q.len() {
        return Ok(None);
    }
    let sp = p.signatures();
    let sq = q.signatures();
    let mut ms: Vec<_> = sp.clone();
    let mut mq: Vec<_> = sq.clone();
    ms.sort();
    mq.sort();
    if ms != mq {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| sp[i]);
    let mut assignment = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];

    fn search(
        depth: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        sp: &[(usize, usize, usize)],
        sq: &[(usize, usize, usize)],
        assignment: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..q.len() {
            if used[y] || sp[x] != sq[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&x2| {
                let y2 = assignment[x2];
                p.leq(x2, x) == q.leq(y2, y) && p.leq(x, x2) == q.leq(y, y2)
            });
            if !consistent {
                continue;
            }
            assignment[x] = y;
            used[y] = true;
            if search(depth + 1, order, p, q, sp, sq, assignment, used) {
                return true;
            }
            used[y] = false;
            assignment[x] = usize::MAX;
        }
        false
    }

    if search(0, &order, p, q, &sp, &sq, &mut assignment, &mut used) {
        Ok(Some(assignment))
    } else {
        Ok(None)
    }
}

/// An isomorphism between two lcm lattices, as a map on multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    map: BTreeMap<Multidegree, Multidegree>,
}

impl LatticeIso {
    pub fn identity(lattice: &LcmLattice) -> Self {
        Self { map: lattice.elements().iter().map(|e| (e.clone(), e.clone())).collect() }
    }

    /// Finds an isomorphism `source → target` by poset search.
    pub fn find(source: &LcmLattice, target: &LcmLattice) -> Result<Option<Self>> {
        let found = poset_isomorphic(&source.poset(), &target.poset())?;
        Ok(found.map(|images| Self {
            map: images
                .iter()
                .enumerate()
                .map(|(i, &j)| (source.elements()[i].clone(), target.elements()[j].clone()))
                .collect(),
        }))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Multidegree, Multidegree)>) -> Self {
        Self { map: pairs.into_iter().collect() }
    }

    pub fn apply(&self, a: &Multidegree) -> Option<&Multidegree> {
        self.map.get(a)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Multidegree, &Multidegree)> {
        self.map.iter()
    }

    /// Checks that the map is a bijection `source → target` that preserves and
    /// reflects the order.
    pub fn is_isomorphism(&self, source: &LcmLattice, target: &LcmLattice) -> bool {
        if self.map.len() != source.len() || source.len() != target.len() {
            return false;
        }
        let images: BTreeSet<&Multidegree> = self.map.values().collect();
        if images.len() != target.len() || !images.iter().all(|m| target.contains(m)) {
            return false;
        }
        if !source.elements().iter().all(|e| self.map.contains_key(e)) {
            return false;
        }
        self.map
            .iter()
            .all(|(a, fa)| self.map.iter().all(|(b, fb)| a.le(b) == fa.le(fb)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| md(g)).collect()).unwrap()
    }

    #[test]
    fn lattice_of_three_generators() {
        // {x², xy, xz}: all eight subset lcms are distinct
        let l = lcm_lattice(&ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]));
        assert_eq!(l.len(), 8);
        let expected = [
            [0, 0, 0],
            [2, 0, 0],
            [1, 1, 0],
            [1, 0, 1],
            [2, 1, 0],
            [2, 0, 1],
            [1, 1, 1],
            [2, 1, 1],
        ];
        for e in expected {
            assert!(l.contains(&md(&e)), "{e:?}");
        }
        assert!(l.is_join_closed());
        assert_eq!(l.top(), &md(&[2, 1, 1]));
    }

    #[test]
    fn small_lattices() {
        let l = lcm_lattice(&ideal(2, &[&[3, 1]]));
        assert_eq!(l.elements(), &[md(&[0, 0]), md(&[3, 1])]);
        let l = lcm_lattice(&ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(l.len(), 4);
        assert_eq!(l.atoms().len(), 2);
    }

    #[test]
    fn iso_search() {
        let chain = Poset::new(vec!["0".into(), "1".into()], vec![vec![true, true], vec![false, true]]).unwrap();
        let anti = Poset::new(vec!["0".into(), "1".into()], vec![vec![true, false], vec![false, true]]).unwrap();
        assert_eq!(poset_isomorphic(&chain, &chain).unwrap(), Some(vec![0, 1]));
        assert_eq!(poset_isomorphic(&chain, &anti).unwrap(), None);
    }

    #[test]
    fn iso_cap() {
        let big: Vec<Multidegree> = (0..70).map(|i| md(&[i])).collect();
        let p = Poset::from_multidegrees(&big);
        assert!(matches!(poset_isomorphic(&p, &p), Err(Error::PosetCap { .. })));
    }

    #[test]
    fn invalid_poset_rejected() {
        let bad = Poset::new(vec!["a".into(), "b".into()], vec![vec![true, true], vec![true, true]]);
        assert!(bad.is_err());
    }
}
