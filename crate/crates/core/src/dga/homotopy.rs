use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::Multiplication;
use crate::complexes::{minimal_resolution, FreeComplex};
use crate::linalg::{solve_combination, Echelon};
use crate::monomial::{MonomialIdeal, Multidegree};
use crate::scalar::{self, axpy, sign, Scalar, SparseVec};
use crate::{Error, Result};

/// A degree-one map `σ` on the scalarized complex with `∂σ + σ∂ = id` and `σσ = 0`.
///
/// `sigma[g]` is the image of basis element `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractingHomotopy {
    pub sigma: Vec<SparseVec>,
}

impl ContractingHomotopy {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        scalar::apply(&self.sigma, v)
    }

    /// Checks `∂σ + σ∂ = id`, `σσ = 0` and `σ∂σ = σ`.
    pub fn verify(&self, complex: &FreeComplex) -> Result<()> {
        for g in 0..complex.len() {
            let mut lhs = scalar::apply(complex.diff(), &self.sigma[g]);
            axpy(&mut lhs, &Scalar::one(), &self.apply(complex.diff_of(g)));
            if lhs != scalar::unit_vec(g) {
                return Err(Error::Verification(format!("∂σ + σ∂ ≠ id at {}", complex.name(g))));
            }
            if !self.apply(&self.sigma[g]).is_empty() {
                return Err(Error::Verification(format!("σσ ≠ 0 at {}", complex.name(g))));
            }
            if self.apply(&scalar::apply(complex.diff(), &self.sigma[g])) != self.sigma[g] {
                return Err(Error::Verification(format!("σ∂σ ≠ σ at {}", complex.name(g))));
            }
        }
        Ok(())
    }
}

/// Contracting homotopy of the scalarized complex (all monomials set to one).
///
/// In each homological degree the image of `∂` is put in reduced echelon form
/// with the smallest column as pivot. The complement `V` is spanned by the
/// non-pivot coordinates; `σ` vanishes on `V` and sends the pivot coordinate of
/// each echelon row `r` to the unique preimage of `r` inside `V` one degree up.
pub fn contracting_homotopy(complex: &FreeComplex) -> Result<ContractingHomotopy> {
    let top = complex.max_hdeg();
    let ids: Vec<Vec<usize>> = (0..=top + 1).map(|i| complex.ids_in_hdeg(i)).collect();
    let echelons: Vec<Echelon> = (0..=top)
        .map(|i| {
            let mut e = Echelon::new();
            for &g in &ids[i + 1] {
                e.insert(complex.diff_of(g).clone());
            }
            e
        })
        .collect();
    let mut sigma = vec![SparseVec::new(); complex.len()];
    for i in 0..=top {
        let complement: Vec<usize> = if i < top {
            ids[i + 1].iter().copied().filter(|&g| !echelons[i + 1].is_pivot(g)).collect()
        } else {
            Vec::new()
        };
        let columns: Vec<SparseVec> = complement.iter().map(|&g| complex.diff_of(g).clone()).collect();
        for (pivot, (row, _)) in echelons[i].reduced_rows() {
            let coeffs = solve_combination(&columns, &row).ok_or_else(|| {
                Error::NotResolution(format!("scalarized complex is not exact at homological degree {}", i + 1))
            })?;
            sigma[pivot] = coeffs.into_iter().map(|(k, c)| (complement[k], c)).collect();
        }
    }
    let h = ContractingHomotopy { sigma };
    h.verify(complex)
        .map_err(|e| Error::NotResolution(format!("scalarized complex is not exact: {e}")))?;
    Ok(h)
}

/// Multiplication over the Laurent ring built from a contracting homotopy.
#[derive(Clone, Debug)]
pub struct LaurentMultiplication {
    pub multiplication: Multiplication,
    pub homotopy: ContractingHomotopy,
}

/// `a ∗ b := σ(∂a ∗ b + (−1)^{|a|} a ∗ ∂b)` for `|a|, |b| ≥ 1`, by induction
/// on `|a| + |b|`.
pub fn laurent_dga(complex: Arc<FreeComplex>) -> Result<LaurentMultiplication> {
    let homotopy = contracting_homotopy(&complex)?;
    let positive: Vec<usize> = (0..complex.len()).filter(|&g| complex.hdeg(g) > 0).collect();
    let mut pairs: Vec<(usize, usize)> = positive
        .iter()
        .flat_map(|&g| positive.iter().filter(move |&&h| h >= g).map(move |&h| (g, h)))
        .filter(|&(g, h)| complex.hdeg(g) + complex.hdeg(h) <= complex.max_hdeg())
        .collect();
    pairs.sort_by_key(|&(g, h)| (complex.hdeg(g) + complex.hdeg(h), g, h));
    let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    let product = |table: &BTreeMap<(usize, usize), SparseVec>, g: usize, h: usize| -> SparseVec {
        if complex.hdeg(g) == 0 {
            return scalar::unit_vec(h);
        }
        if complex.hdeg(h) == 0 {
            return scalar::unit_vec(g);
        }
        let v = table.get(&(g.min(h), g.max(h))).cloned().unwrap_or_default();
        if g <= h {
            v
        } else {
            scalar::scaled(&v, &sign(complex.hdeg(g) * complex.hdeg(h)))
        }
    };
    for (g, h) in pairs {
        let mut t = SparseVec::new();
        for (&k, x) in complex.diff_of(g) {
            axpy(&mut t, x, &product(&table, k, h));
        }
        let s = sign(complex.hdeg(g));
        for (&k, x) in complex.diff_of(h) {
            axpy(&mut t, &(&s * x), &product(&table, g, k));
        }
        let v = homotopy.apply(&t);
        if !v.is_empty() {
            table.insert((g, h), v);
        }
    }
    let multiplication = Multiplication::new(complex, table, true)?;
    Ok(LaurentMultiplication { multiplication, homotopy })
}

/// Minimal DGA resolution of `x^s I` for `s` the lcm of the generators.
#[derive(Clone, Debug)]
pub struct ScaledDga {
    pub shift: Multidegree,
    pub ideal: MonomialIdeal,
    pub complex: Arc<FreeComplex>,
    pub multiplication: Multiplication,
}

/// Shifts every basis element of positive homological degree of the minimal
/// resolution by `s`; the structure constants of the Laurent multiplication
/// then have nonnegative exponents.
pub fn scaled_dga(ideal: &MonomialIdeal) -> Result<ScaledDga> {
    let minimal = Arc::new(minimal_resolution(ideal)?.minimal);
    let laurent = laurent_dga(Arc::clone(&minimal))?;
    let shift = ideal.lcm();
    let degrees = minimal
        .basis()
        .iter()
        .map(|b| if b.hdeg == 0 { b.mdeg.clone() } else { b.mdeg.add(&shift) })
        .collect();
    let complex = Arc::new(minimal.with_degrees(ideal.num_vars(), degrees)?);
    let multiplication = laurent.multiplication.on_complex(Arc::clone(&complex), false)?;
    Ok(ScaledDga { ideal: ideal.scaled(&shift)?, shift, complex, multiplication })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{is_minimal, is_resolution, BasisElement};
    use crate::dga::check_dga_axioms;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    #[test]
    fn identity_complex() {
        let basis = vec![
            BasisElement { hdeg: 0, mdeg: Multidegree::zero(1), label: None },
            BasisElement { hdeg: 1, mdeg: Multidegree::zero(1), label: None },
        ];
        let c = FreeComplex::new(1, basis, vec![SparseVec::new(), scalar::unit_vec(0)], false).unwrap();
        let h = contracting_homotopy(&c).unwrap();
        assert_eq!(h.sigma[0], scalar::unit_vec(1));
        assert!(h.sigma[1].is_empty());
    }

    #[test]
    fn koszul_homotopy_and_product() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let f = Arc::new(minimal_resolution(&i).unwrap().minimal);
        contracting_homotopy(&f).unwrap().verify(&f).unwrap();
        let l = laurent_dga(f).unwrap();
        let r = check_dga_axioms(&l.multiplication);
        assert!(r.passes_all(), "{r:?}");
    }

    #[test]
    fn scaled_principal_ideal() {
        let i = ideal(2, &[&[1, 2]]);
        let s = scaled_dga(&i).unwrap();
        assert_eq!(s.shift, Multidegree::new(vec![1, 2]));
        assert_eq!(s.ideal.generators()[0], Multidegree::new(vec![2, 4]));
        assert!(is_resolution(&s.complex, &s.ideal));
        assert!(check_dga_axioms(&s.multiplication).passes_all());
    }

    #[test]
    fn scaled_triangle() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let s = scaled_dga(&i).unwrap();
        assert!(is_resolution(&s.complex, &s.ideal));
        assert!(is_minimal(&s.complex));
        assert!(check_dga_axioms(&s.multiplication).passes_all());
    }
}
