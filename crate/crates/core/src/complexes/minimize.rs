use num_traits::One;

use super::{FreeComplex};
use crate::scalar::{self, axpy, Scalar, SparseVec};
use crate::{Error, Result};

/// Which invertible entry [`minimize_with`] cancels next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Lowest homological degree first, then smallest basis ids.
    #[default]
    LowestFirst,
    /// Highest homological degree first, then largest basis ids.
    HighestFirst,
}

/// Homotopy-equivalence data between a complex and a smaller one.
///
/// Maps are scalar matrices stored column-wise: `inclusion[s]` is the image of
/// small basis element `s` over big ids, `projection[b]` the image of big
/// basis element `b` over small ids, and `homotopy[b]` the image of `b` over
/// big ids, one homological degree up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferData {
    pub inclusion: Vec<SparseVec>,
    pub projection: Vec<SparseVec>,
    pub homotopy: Vec<SparseVec>,
}

impl TransferData {
    pub fn identity(n: usize) -> Self {
        Self {
            inclusion: (0..n).map(scalar::unit_vec).collect(),
            projection: (0..n).map(scalar::unit_vec).collect(),
            homotopy: vec![SparseVec::new(); n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inclusion.len() == self.projection.len()
            && self.inclusion.iter().enumerate().all(|(k, v)| *v == scalar::unit_vec(k))
            && self.projection.iter().enumerate().all(|(k, v)| *v == scalar::unit_vec(k))
            && self.homotopy.iter().all(SparseVec::is_empty)
    }

    /// Checks `p∘i = id`, that `i` and `p` are chain maps,
    /// `i∘p − id = ∂h + h∂`, and that all three maps respect both gradings.
    pub fn verify(&self, big: &FreeComplex, small: &FreeComplex) -> Result<()> {
        let fail = |what: String| Err(Error::Verification(what));
        if self.inclusion.len() != small.len() || self.projection.len() != big.len() || self.homotopy.len() != big.len() {
            return fail("transfer maps have the wrong shape".into());
        }
        let graded = |map: &[SparseVec], src: &FreeComplex, dst: &FreeComplex, shift: usize| {
            map.iter().enumerate().all(|(s, v)| {
                v.keys().all(|&t| dst.hdeg(t) == src.hdeg(s) + shift && dst.mdeg(t).le(src.mdeg(s)))
            })
        };
        if !graded(&self.inclusion, small, big, 0) || !graded(&self.projection, big, small, 0) {
            return fail("inclusion or projection does not respect the grading".into());
        }
        if !graded(&self.homotopy, big, big, 1) {
            return fail("homotopy does not respect the grading".into());
        }
        for s in 0..small.len() {
            if scalar::apply(&self.projection, &self.inclusion[s]) != scalar::unit_vec(s) {
                return fail(format!("p∘i differs from the identity on {}", small.name(s)));
            }
            let lhs = scalar::apply(big.diff(), &self.inclusion[s]);
            let rhs = scalar::apply(&self.inclusion, small.diff_of(s));
            if lhs != rhs {
                return fail(format!("inclusion is not a chain map at {}", small.name(s)));
            }
        }
        for b in 0..big.len() {
            let lhs = scalar::apply(&self.projection, big.diff_of(b));
            let rhs = scalar::apply(small.diff(), &self.projection[b]);
            if lhs != rhs {
                return fail(format!("projection is not a chain map at {}", big.name(b)));
            }
            let mut ip = scalar::apply(&self.inclusion, &self.projection[b]);
            scalar::add_entry(&mut ip, b, &-Scalar::one());
            let mut dh = scalar::apply(big.diff(), &self.homotopy[b]);
            axpy(&mut dh, &Scalar::one(), &scalar::apply(&self.homotopy, big.diff_of(b)));
            if ip != dh {
                return fail(format!("i∘p − id ≠ ∂h + h∂ at {}", big.name(b)));
            }
        }
        Ok(())
    }
}

/// Incremental Gaussian cancellation on a free complex.
///
/// Cancelling a pair `(a, b)` with `∂b = c·a + r`, `c` invertible and
/// `mdeg a = mdeg b`, replaces `∂x` by `∂x − (κ_x / c) ∂b` for the other
/// `x` with `κ_x = ∂x[a]`, and drops `b` from boundaries one degree up. The
/// accumulated maps satisfy the identities checked by [`TransferData::verify`].
pub(crate) struct Reducer<'a> {
    big: &'a FreeComplex,
    alive: Vec<bool>,
    diff: Vec<SparseVec>,
    incl: Vec<SparseVec>,
    proj: Vec<SparseVec>,
    htpy: Vec<SparseVec>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(big: &'a FreeComplex) -> Self {
        let n = big.len();
        Self {
            big,
            alive: vec![true; n],
            diff: big.diff().to_vec(),
            incl: (0..n).map(scalar::unit_vec).collect(),
            proj: (0..n).map(scalar::unit_vec).collect(),
            htpy: vec![SparseVec::new(); n],
        }
    }

    /// Current coefficient of `a` in `∂b`, if both are still present.
    pub(crate) fn entry(&self, b: usize, a: usize) -> Option<&Scalar> {
        if !self.alive[a] || !self.alive[b] {
            return None;
        }
        self.diff[b].get(&a)
    }

    fn candidates(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.diff.len()).filter(|&b| self.alive[b]).flat_map(move |b| {
            self.diff[b]
                .keys()
                .filter(move |&&a| self.big.mdeg(a) == self.big.mdeg(b))
                .map(move |&a| (a, b))
        })
    }

    pub(crate) fn next_pivot(&self, order: PivotOrder) -> Option<(usize, usize)> {
        let key = |&(a, b): &(usize, usize)| (self.big.hdeg(a), a, b);
        match order {
            PivotOrder::LowestFirst => self.candidates().min_by_key(key),
            PivotOrder::HighestFirst => self.candidates().max_by_key(key),
        }
    }

    /// Cancels `a` against `b`, where `∂b` has an invertible entry at `a`
    /// and the two have equal multidegree.
    pub(crate) fn cancel(&mut self, a: usize, b: usize) -> Result<()> {
        let c = self
            .entry(b, a)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("no entry from {} to {}", self.big.name(b), self.big.name(a))))?;
        if self.big.mdeg(a) != self.big.mdeg(b) {
            return Err(Error::Precondition(format!(
                "{} and {} have different multidegrees",
                self.big.name(a),
                self.big.name(b)
            )));
        }
        let inv = Scalar::one() / &c;
        let db = self.diff[b].clone();
        let mut rest = db.clone();
        rest.remove(&a);
        let incl_b = self.incl[b].clone();
        let h_a = scalar::scaled(&incl_b, &-inv.clone());

        // homotopy and projection, read off the old projection
        for y in 0..self.proj.len() {
            let alpha = self.proj[y].get(&a).cloned();
            self.proj[y].remove(&b);
            if let Some(alpha) = alpha {
                axpy(&mut self.htpy[y], &alpha, &h_a);
                self.proj[y].remove(&a);
                axpy(&mut self.proj[y], &(-&alpha * &inv), &rest);
            }
        }

        let hb = self.big.hdeg(b);
        for x in 0..self.diff.len() {
            if !self.alive[x] || x == b {
                continue;
            }
            if self.big.hdeg(x) == hb {
                if let Some(kappa) = self.diff[x].get(&a).cloned() {
                    let f = -kappa * &inv;
                    axpy(&mut self.diff[x], &f, &db);
                    axpy(&mut self.incl[x], &f, &incl_b);
                }
            } else if self.big.hdeg(x) == hb + 1 {
                self.diff[x].remove(&b);
            }
        }
        self.alive[a] = false;
        self.alive[b] = false;
        self.diff[a].clear();
        self.diff[b].clear();
        Ok(())
    }

    /// Cancels until no entry between equal multidegrees remains.
    pub(crate) fn exhaust(&mut self, order: PivotOrder) -> Result<()> {
        while let Some((a, b)) = self.next_pivot(order) {
            self.cancel(a, b)?;
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<(FreeComplex, TransferData)> {
        let keep: Vec<usize> = (0..self.alive.len()).filter(|&g| self.alive[g]).collect();
        let mut new_id = vec![usize::MAX; self.alive.len()];
        for (k, &g) in keep.iter().enumerate() {
            new_id[g] = k;
        }
        let renumber = |v: &SparseVec| -> SparseVec { v.iter().map(|(&g, c)| (new_id[g], c.clone())).collect() };
        let basis = keep.iter().map(|&g| self.big.element(g).clone()).collect();
        let diff = keep.iter().map(|&g| renumber(&self.diff[g])).collect();
        let small = FreeComplex::new(self.big.num_vars(), basis, diff, self.big.is_augmented())?;
        let transfer = TransferData {
            inclusion: keep.iter().map(|&g| self.incl[g].clone()).collect(),
            projection: self.proj.iter().map(renumber).collect(),
            homotopy: self.htpy,
        };
        Ok((small, transfer))
    }
}

/// Minimizes a complex by cancelling invertible differential entries.
pub fn minimize(complex: &FreeComplex) -> Result<(FreeComplex, TransferData)> {
    minimize_with(complex, PivotOrder::LowestFirst)
}

pub fn minimize_with(complex: &FreeComplex, order: PivotOrder) -> Result<(FreeComplex, TransferData)> {
    let mut r = Reducer::new(complex);
    r.exhaust(order)?;
    let (small, transfer) = r.finish()?;
    if small.is_augmented() && small.unit().is_none() {
        return Err(Error::NotResolution("the unit was cancelled".into()));
    }
    Ok((small, transfer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{is_minimal, is_resolution, taylor_complex};
    use crate::monomial::{MonomialIdeal, Multidegree};
    use num_traits::Zero;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    #[test]
    fn minimal_input_gives_identity() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let t = taylor_complex(&i).unwrap();
        let (m, tr) = minimize(&t).unwrap();
        assert_eq!(m, t);
        assert!(tr.is_identity());
    }

    #[test]
    fn triangle_minimizes_to_132() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let t = taylor_complex(&i).unwrap();
        for order in [PivotOrder::LowestFirst, PivotOrder::HighestFirst] {
            let (m, tr) = minimize_with(&t, order).unwrap();
            assert_eq!(m.ranks(), vec![1, 3, 2]);
            assert!(is_minimal(&m));
            assert!(is_resolution(&m, &i));
            tr.verify(&t, &m).unwrap();
        }
    }

    #[test]
    fn hexagon_ranks() {
        let i = ideal(
            6,
            &[
                &[1, 1, 0, 0, 0, 0],
                &[0, 1, 1, 0, 0, 0],
                &[0, 0, 1, 1, 0, 0],
                &[0, 0, 0, 1, 1, 0],
                &[0, 0, 0, 0, 1, 1],
                &[1, 0, 0, 0, 0, 1],
            ],
        );
        let t = taylor_complex(&i).unwrap();
        let (m, tr) = minimize(&t).unwrap();
        assert_eq!(m.ranks(), vec![1, 6, 9, 6, 2]);
        tr.verify(&t, &m).unwrap();
        assert!(is_resolution(&m, &i));
    }

    #[test]
    fn verify_rejects_broken_homotopy() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let t = taylor_complex(&i).unwrap();
        let (m, mut tr) = minimize(&t).unwrap();
        let victim = tr.homotopy.iter().position(|v| !v.is_empty()).unwrap();
        tr.homotopy[victim].clear();
        assert!(tr.verify(&t, &m).is_err());
        let _ = Scalar::zero();
    }
}
