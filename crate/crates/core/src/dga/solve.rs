use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_axioms, Multiplication};
use crate::complexes::{is_minimal, FreeComplex};
use crate::linalg::{solve_combination, Echelon};
use crate::scalar::{self, axpy, sign, Scalar, SparseVec};
use crate::{Error, Result};

/// All multiplications on a complex, as an affine space over k.
///
/// Coordinates are the coefficients `c_{g,h,e}` of `e` in `g ∗ h` for
/// `g ≤ h` of positive homological degree, restricted to `e` whose degree
/// allows a polynomial coefficient. Odd squares are fixed to zero.
#[derive(Clone, Debug)]
pub struct MultiplicationSpace {
    complex: Arc<FreeComplex>,
    pub unknowns: Vec<(usize, usize, usize)>,
    pub particular: SparseVec,
    pub nullspace: Vec<SparseVec>,
}

/// Linear form in the unknowns plus a constant.
type Form = (SparseVec, Scalar);

fn form_axpy(acc: &mut Form, c: &Scalar, f: &Form) {
    axpy(&mut acc.0, c, &f.0);
    acc.1 += c * &f.1;
}

pub fn leibniz_solution_space(complex: Arc<FreeComplex>) -> Result<MultiplicationSpace> {
    if !is_minimal(&complex) {
        return Err(Error::Precondition("the Leibniz system is set up on minimal complexes".into()));
    }
    let c = &*complex;
    let max = c.max_hdeg();
    let positive: Vec<usize> = (0..c.len()).filter(|&g| c.hdeg(g) > 0).collect();
    let mut unknowns = Vec::new();
    let mut index: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for &g in &positive {
        for &h in positive.iter().filter(|&&h| h >= g) {
            let hd = c.hdeg(g) + c.hdeg(h);
            if hd > max || (g == h && c.hdeg(g) % 2 == 1) {
                continue;
            }
            let sum = c.mdeg(g).add(c.mdeg(h));
            let slots: Vec<(usize, usize)> = c
                .ids_in_hdeg(hd)
                .into_iter()
                .filter(|&e| c.mdeg(e).le(&sum))
                .map(|e| {
                    unknowns.push((g, h, e));
                    (e, unknowns.len() - 1)
                })
                .collect();
            index.insert((g, h), slots);
        }
    }
    // `g ∗ h` as a map from target basis element to a linear form
    let product = |g: usize, h: usize| -> BTreeMap<usize, Form> {
        let mut out = BTreeMap::new();
        if c.hdeg(g) == 0 || c.hdeg(h) == 0 {
            let e = if c.hdeg(g) == 0 { h } else { g };
            out.insert(e, (SparseVec::new(), Scalar::one()));
            return out;
        }
        let s = if g <= h { Scalar::one() } else { sign(c.hdeg(g) * c.hdeg(h)) };
        if let Some(slots) = index.get(&(g.min(h), g.max(h))) {
            for &(e, u) in slots {
                out.insert(e, (scalar::scaled(&scalar::unit_vec(u), &s), Scalar::zero()));
            }
        }
        out
    };
    let mut system = Echelon::new();
    for &g in &positive {
        for &h in positive.iter().filter(|&&h| h >= g) {
            if c.hdeg(g) + c.hdeg(h) > max + 1 {
                continue;
            }
            let mut eq: BTreeMap<usize, Form> = BTreeMap::new();
            let mut add = |target: usize, coef: &Scalar, f: &Form| {
                let entry = eq.entry(target).or_insert_with(|| (SparseVec::new(), Scalar::zero()));
                form_axpy(entry, coef, f);
            };
            for (e, f) in product(g, h) {
                for (&t, x) in c.diff_of(e) {
                    add(t, x, &f);
                }
            }
            for (&k, x) in c.diff_of(g) {
                for (t, f) in product(k, h) {
                    add(t, &-x.clone(), &f);
                }
            }
            let s = -sign(c.hdeg(g));
            for (&k, x) in c.diff_of(h) {
                for (t, f) in product(g, k) {
                    add(t, &(&s * x), &f);
                }
            }
            for (_, (row, constant)) in eq {
                system.insert_eq(row, -constant);
            }
        }
    }
    if !system.is_consistent() {
        return Err(Error::Inconsistent("the Leibniz system has no solution".into()));
    }
    let particular = system.particular().expect("consistent");
    let nullspace = system.nullspace(unknowns.len());
    Ok(MultiplicationSpace { complex, unknowns, particular, nullspace })
}

impl MultiplicationSpace {
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.nullspace.len()
    }

    /// `particular + Σ λ_k nullspace[k]` as a coordinate vector.
    pub fn coordinates(&self, params: &[Scalar]) -> Result<SparseVec> {
        if params.len() != self.dim() {
            return Err(Error::LengthMismatch(params.len(), self.dim()));
        }
        let mut v = self.particular.clone();
        for (p, n) in params.iter().zip(&self.nullspace) {
            axpy(&mut v, p, n);
        }
        Ok(v)
    }

    pub fn point(&self, params: &[Scalar]) -> Result<Multiplication> {
        let v = self.coordinates(params)?;
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (u, x) in v {
            let (g, h, e) = self.unknowns[u];
            table.entry((g, h)).or_default().insert(e, x);
        }
        Multiplication::new(Arc::clone(&self.complex), table, false)
    }

    fn pair_slots(&self, g: usize, h: usize) -> Vec<usize> {
        let (g, h) = (g.min(h), g.max(h));
        (0..self.unknowns.len()).filter(|&u| self.unknowns[u].0 == g && self.unknowns[u].1 == h).collect()
    }

    fn restrict(&self, v: &SparseVec, slots: &[usize]) -> SparseVec {
        slots
            .iter()
            .filter_map(|u| v.get(u).map(|x| (self.unknowns[*u].2, x.clone())))
            .collect()
    }

    /// Dimension of the set of values `g ∗ h` takes over the space.
    pub fn pair_dimension(&self, g: usize, h: usize) -> usize {
        let slots = self.pair_slots(g, h);
        let rows: Vec<SparseVec> = self.nullspace.iter().map(|n| self.restrict(n, &slots)).collect();
        crate::linalg::rank(&rows)
    }

    pub fn is_forced(&self, g: usize, h: usize) -> bool {
        self.pair_dimension(g, h) == 0
    }

    /// `g ∗ h` at the given parameters (`g ≤ h` orientation).
    pub fn pair_value(&self, g: usize, h: usize, params: &[Scalar]) -> Result<SparseVec> {
        Ok(self.restrict(&self.coordinates(params)?, &self.pair_slots(g, h)))
    }

    /// Parameters at which `g ∗ h` (for `g ≤ h`) equals `target`, if any.
    pub fn solve_pair(&self, g: usize, h: usize, target: &SparseVec) -> Option<Vec<Scalar>> {
        let slots = self.pair_slots(g, h);
        let columns: Vec<SparseVec> = self.nullspace.iter().map(|n| self.restrict(n, &slots)).collect();
        let rhs = scalar::sub(target, &self.restrict(&self.particular, &slots));
        let sol = solve_combination(&columns, &rhs)?;
        Some((0..self.dim()).map(|k| sol.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect())
    }
}

/// Products determined by the Leibniz rule alone, and the pairs left free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedProducts {
    pub forced: BTreeMap<(usize, usize), SparseVec>,
    pub free: Vec<(usize, usize)>,
}

impl ForcedProducts {
    /// `g ∗ h` if forced, with the commutativity sign for `g > h`.
    pub fn get(&self, complex: &FreeComplex, g: usize, h: usize) -> Option<SparseVec> {
        let v = self.forced.get(&(g.min(h), g.max(h)))?;
        Some(if g <= h { v.clone() } else { scalar::scaled(v, &sign(complex.hdeg(g) * complex.hdeg(h))) })
    }
}

pub fn forced_products(space: &MultiplicationSpace) -> ForcedProducts {
    let c = space.complex();
    let mut forced = BTreeMap::new();
    let mut free = Vec::new();
    let positive: Vec<usize> = (0..c.len()).filter(|&g| c.hdeg(g) > 0).collect();
    for &g in &positive {
        for &h in positive.iter().filter(|&&h| h >= g) {
            if c.hdeg(g) + c.hdeg(h) > c.max_hdeg() {
                continue;
            }
            if space.is_forced(g, h) {
                forced.insert((g, h), space.restrict(&space.particular, &space.pair_slots(g, h)));
            } else {
                free.push((g, h));
            }
        }
    }
    ForcedProducts { forced, free }
}

/// Associativity at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSample {
    pub label: String,
    pub params: Vec<Scalar>,
    /// Basis triples with a nonzero associator.
    pub failing: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub samples: Vec<ScanSample>,
}

impl ScanReport {
    pub fn associative_samples(&self) -> impl Iterator<Item = &ScanSample> {
        self.samples.iter().filter(|s| s.failing.is_empty())
    }
}

/// Evaluates associators at the particular point, at `±1` along each
/// nullspace direction, and at `random` seeded random rational points.
///
/// A search aid: finding no associative point proves nothing.
pub fn associativity_scan(space: &MultiplicationSpace, random: usize, seed: u64) -> Result<ScanReport> {
    let d = space.dim();
    let mut points: Vec<(String, Vec<Scalar>)> = vec![("particular".into(), vec![Scalar::zero(); d])];
    for k in 0..d {
        for s in [1i64, -1] {
            let mut p = vec![Scalar::zero(); d];
            p[k] = scalar::int(s);
            points.push((format!("grid {}e{k}", if s > 0 { "+" } else { "-" }), p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..random {
        let p = (0..d)
            .map(|_| {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=5);
                Scalar::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        points.push((format!("random {r}"), p));
    }
    let samples = points
        .into_iter()
        .map(|(label, params)| {
            let m = space.point(&params)?;
            let report = check_axioms(&m, true);
            let failing = report
                .associativity
                .iter()
                .map(|w| (w.inputs[0], w.inputs[1], w.inputs[2]))
                .collect();
            Ok(ScanSample { label, params, failing })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::minimal_resolution;
    use crate::dga::check_dga_axioms;
    use crate::monomial::{MonomialIdeal, Multidegree};

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    #[test]
    fn koszul_is_forced() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let f = Arc::new(minimal_resolution(&i).unwrap().minimal);
        let s = leibniz_solution_space(f).unwrap();
        assert_eq!(s.dim(), 0);
        let m = s.point(&[]).unwrap();
        assert!(check_dga_axioms(&m).passes_all());
        assert_eq!(m.product_basis(1, 2).len(), 1);
    }

    #[test]
    fn random_points_are_multiplications() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let f = Arc::new(minimal_resolution(&i).unwrap().minimal);
        let s = leibniz_solution_space(f).unwrap();
        assert!(s.dim() >= 1);
        let scan = associativity_scan(&s, 3, 7).unwrap();
        for sample in &scan.samples {
            let m = s.point(&sample.params).unwrap();
            assert!(check_axioms(&m, false).is_multiplication());
        }
        let again = associativity_scan(&s, 3, 7).unwrap();
        assert_eq!(scan, again);
    }
}
