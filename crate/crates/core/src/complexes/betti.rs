use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{is_minimal, minimize, taylor_complex, FreeComplex, TransferData};
use crate::monomial::{MonomialIdeal, Multidegree, Poset};
use crate::{Error, Result};

/// Multigraded Betti numbers `β_{i,a}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Multidegree), usize>,
}

impl BettiTable {
    /// Reads the ranks and degrees of a minimal complex.
    pub fn from_minimal(complex: &FreeComplex) -> Result<Self> {
        if !is_minimal(complex) {
            return Err(Error::Precondition("Betti numbers need a minimal complex".into()));
        }
        let mut entries = BTreeMap::new();
        for b in complex.basis() {
            *entries.entry((b.hdeg, b.mdeg.clone())).or_insert(0) += 1;
        }
        Ok(Self { entries })
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, Multidegree), usize)>) -> Self {
        Self { entries: entries.into_iter().filter(|(_, v)| *v > 0).collect() }
    }

    pub fn get(&self, i: usize, a: &Multidegree) -> usize {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Multidegree, usize)> {
        self.entries.iter().map(|((i, a), &v)| (*i, a, v))
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total Betti numbers `β_i`.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.projective_dimension() + 1];
        for ((i, _), v) in &self.entries {
            t[*i] += v;
        }
        t
    }

    /// Multidegrees carrying a nonzero Betti number, without repetition.
    pub fn degrees(&self) -> Vec<Multidegree> {
        let mut d: Vec<Multidegree> = self.entries.keys().map(|(_, a)| a.clone()).collect();
        d.sort();
        d.dedup();
        d
    }

    /// The Betti poset: nonzero-Betti degrees ordered by divisibility.
    ///
    /// Fails when the table does not look like one of `ideal` (degree lengths
    /// or a degree outside the lcm lattice).
    pub fn poset(&self, ideal: &MonomialIdeal) -> Result<Poset> {
        let lattice = crate::monomial::lcm_lattice(ideal);
        let mut degrees = self.degrees();
        if let Some(a) = degrees.iter().find(|a| !lattice.contains(a)) {
            return Err(Error::Precondition(format!("Betti degree {a} is not in the lcm lattice")));
        }
        degrees.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
        Ok(Poset::from_multidegrees(&degrees))
    }
}

/// Taylor complex, its minimization, and the transfer data between them.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    pub taylor: FreeComplex,
    pub minimal: FreeComplex,
    pub transfer: TransferData,
}

pub fn minimal_resolution(ideal: &MonomialIdeal) -> Result<MinimalResolution> {
    let taylor = taylor_complex(ideal)?;
    let (minimal, transfer) = minimize(&taylor)?;
    Ok(MinimalResolution { taylor, minimal, transfer })
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    BettiTable::from_minimal(&minimal_resolution(ideal)?.minimal)
}

/// The Betti poset of `ideal`.
pub fn betti_poset(ideal: &MonomialIdeal) -> Result<Poset> {
    betti_table(ideal)?.poset(ideal)
}

/// Maximal shifts `t_i = max{|a| : β_{i,a} ≠ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TVector(pub Vec<i64>);

pub fn t_vector(betti: &BettiTable) -> TVector {
    let mut t = vec![i64::MIN; betti.projective_dimension() + 1];
    for (i, a, _) in betti.entries() {
        t[i] = t[i].max(a.total_degree());
    }
    TVector(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubadditivityMode {
    /// `t_b ≤ t_a + t_{b−a}` for all `1 ≤ a < b`.
    All,
    /// Only `a = 1`.
    FirstStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubadditivityReport {
    pub mode: SubadditivityMode,
    /// Violated pairs `(a, b)`.
    pub violations: Vec<(usize, usize)>,
}

impl SubadditivityReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_subadditivity(t: &TVector, mode: SubadditivityMode) -> SubadditivityReport {
    let t = &t.0;
    let mut violations = Vec::new();
    for b in 2..t.len() {
        let top = match mode {
            SubadditivityMode::All => b,
            SubadditivityMode::FirstStep => 2,
        };
        for a in 1..top {
            if t[b] > t[a] + t[b - a] {
                violations.push((a, b));
            }
        }
    }
    SubadditivityReport { mode, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn koszul_betti() {
        let i = MonomialIdeal::new(2, vec![md(&[1, 0]), md(&[0, 1])]).unwrap();
        let b = betti_table(&i).unwrap();
        assert_eq!(b.totals(), vec![1, 2, 1]);
        assert_eq!(b.get(2, &md(&[1, 1])), 1);
        let t = t_vector(&b);
        assert_eq!(t, TVector(vec![0, 1, 2]));
        assert!(check_subadditivity(&t, SubadditivityMode::All).passes());
    }

    #[test]
    fn koszul_betti_poset() {
        let i = MonomialIdeal::new(2, vec![md(&[1, 0]), md(&[0, 1])]).unwrap();
        let p = betti_table(&i).unwrap().poset(&i).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(0, 3) && !p.leq(1, 2));
    }

    #[test]
    fn subadditivity_violation_reported() {
        let r = check_subadditivity(&TVector(vec![0, 2, 3, 9]), SubadditivityMode::All);
        assert_eq!(r.violations, vec![(1, 3), (2, 3)]);
        let r = check_subadditivity(&TVector(vec![0, 2, 3, 9]), SubadditivityMode::FirstStep);
        assert_eq!(r.violations, vec![(1, 3)]);
    }
}
