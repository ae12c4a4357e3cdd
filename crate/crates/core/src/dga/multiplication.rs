use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::complexes::{Element, FreeComplex, TransferData};
use crate::monomial::{lcm_lattice, LatticeIso, MonomialIdeal, Multidegree};
use crate::scalar::{self, axpy, sign, SparseVec};
use crate::{Error, Result};

/// A bilinear product on a free complex, given on basis pairs.
#[derive(Clone, Debug)]
pub struct Multiplication {
    complex: Arc<FreeComplex>,
    table: BTreeMap<(usize, usize), SparseVec>,
    laurent: bool,
}

impl PartialEq for Multiplication {
    fn eq(&self, other: &Self) -> bool {
        *self.complex == *other.complex && self.table == other.table && self.laurent == other.laurent
    }
}

impl Multiplication {
    /// `table[(g, h)]` with `g ≤ h` gives `g ∗ h`; the other orientation
    /// follows from graded commutativity. With `laurent` the implied monomial
    /// factors may have negative exponents.
    pub fn new(complex: Arc<FreeComplex>, table: BTreeMap<(usize, usize), SparseVec>, laurent: bool) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for ((g, h), v) in table {
            if g > h || h >= complex.len() {
                return Err(Error::InvalidElement(format!("bad table key ({g}, {h})")));
            }
            if complex.hdeg(g) == 0 {
                return Err(Error::InvalidElement("products with homological degree 0 are implicit".into()));
            }
            let sum = complex.mdeg(g).add(complex.mdeg(h));
            for (&e, c) in &v {
                if e >= complex.len() || complex.hdeg(e) != complex.hdeg(g) + complex.hdeg(h) {
                    return Err(Error::InvalidElement(format!(
                        "{} ∗ {} has a term in the wrong homological degree",
                        complex.name(g),
                        complex.name(h)
                    )));
                }
                if c.is_zero() {
                    return Err(Error::InvalidElement("zero coefficient stored".into()));
                }
                if !laurent && !complex.mdeg(e).le(&sum) {
                    return Err(Error::InvalidElement(format!(
                        "{} ∗ {} has a term {} of too large multidegree",
                        complex.name(g),
                        complex.name(h),
                        complex.name(e)
                    )));
                }
            }
            if !v.is_empty() {
                clean.insert((g, h), v);
            }
        }
        if complex.unit().is_none() {
            return Err(Error::InvalidComplex("a multiplication needs a unit in homological degree 0".into()));
        }
        Ok(Self { complex, table: clean, laurent })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<FreeComplex> {
        Arc::clone(&self.complex)
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.table
    }

    /// Exponent vector of the monomial attached to the term `e` of `g ∗ h`.
    pub fn exponent(&self, g: usize, h: usize, e: usize) -> Multidegree {
        let c = &self.complex;
        c.mdeg(g).add(c.mdeg(h)).sub(c.mdeg(e))
    }

    /// Scalar coefficients of `g ∗ h` for basis elements `g`, `h`.
    pub fn product_basis(&self, g: usize, h: usize) -> SparseVec {
        let c = &self.complex;
        if c.hdeg(g) == 0 {
            return scalar::unit_vec(h);
        }
        if c.hdeg(h) == 0 {
            return scalar::unit_vec(g);
        }
        if g <= h {
            self.table.get(&(g, h)).cloned().unwrap_or_default()
        } else {
            let v = self.table.get(&(h, g)).cloned().unwrap_or_default();
            scalar::scaled(&v, &sign(c.hdeg(g) * c.hdeg(h)))
        }
    }

    /// Bilinear extension to coefficient vectors.
    pub fn product_vec(&self, f: &SparseVec, g: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&a, x) in f {
            for (&b, y) in g {
                axpy(&mut out, &(x * y), &self.product_basis(a, b));
            }
        }
        out
    }

    /// The same structure constants on a complex with the same differential.
    pub fn on_complex(&self, complex: Arc<FreeComplex>, laurent: bool) -> Result<Self> {
        if complex.diff() != self.complex.diff() {
            return Err(Error::InvalidComplex("differentials differ".into()));
        }
        Self::new(complex, self.table.clone(), laurent)
    }

    /// Replaces the product of one basis pair (`g ≤ h`).
    pub fn with_product(&self, g: usize, h: usize, value: SparseVec) -> Result<Self> {
        let mut table = self.table.clone();
        table.insert((g.min(h), g.max(h)), if g <= h {
            value
        } else {
            scalar::scaled(&value, &sign(self.complex.hdeg(g) * self.complex.hdeg(h)))
        });
        Self::new(Arc::clone(&self.complex), table, self.laurent)
    }

    /// Searches signs `ε_g = ±1` on the basis such that `g ↦ ε_g g`
    /// transforms `self` into `other`, returning them if found.
    ///
    /// Zero patterns must agree exactly. Signs are found by propagation along
    /// the constraints `ε_g ε_h ε_e = ratio`, so the search is linear in the
    /// table size.
    pub fn agrees_up_to_basis_signs(&self, other: &Self) -> Option<Vec<i8>> {
        let c = &self.complex;
        if **c != *other.complex {
            return None;
        }
        let n = c.len();
        let mut constraints: Vec<([usize; 3], bool)> = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if c.hdeg(g) == 0 || c.hdeg(h) == 0 {
                    continue;
                }
                let a = self.product_basis(g, h);
                let b = other.product_basis(g, h);
                if a.keys().ne(b.keys()) {
                    return None;
                }
                for (e, x) in &a {
                    let y = &b[e];
                    if *x == *y {
                        constraints.push(([g, h, *e], false));
                    } else if *x == -y.clone() {
                        constraints.push(([g, h, *e], true));
                    } else {
                        return None;
                    }
                }
            }
        }
        // Parity system over GF(2): ε_g + ε_h + ε_e = flip.
        let mut rows: Vec<(Vec<u64>, bool)> = constraints
            .into_iter()
            .map(|(ids, flip)| {
                let mut bits = vec![0u64; n.div_ceil(64)];
                for id in ids {
                    bits[id / 64] ^= 1 << (id % 64);
                }
                (bits, flip)
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].0[col / 64] >> (col % 64) & 1 == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.0[col / 64] >> (col % 64) & 1 == 1 {
                    for (w, pw) in row.0.iter_mut().zip(&pivot_row.0) {
                        *w ^= pw;
                    }
                    row.1 ^= pivot_row.1;
                }
            }
            pivots.push((r, col));
            r += 1;
        }
        if rows[r..].iter().any(|row| row.1) {
            return None;
        }
        let mut eps = vec![1i8; n];
        for (row, col) in pivots {
            if rows[row].1 {
                eps[col] = -1;
            }
        }
        Some(eps)
    }
}

/// `f ∗ g` for homogeneous elements.
pub fn multiply(m: &Multiplication, f: &Element, g: &Element) -> Result<Element> {
    let n = m.complex().len();
    if f.coeffs.keys().chain(g.coeffs.keys()).any(|&k| k >= n) {
        return Err(Error::InvalidElement("element does not belong to the ambient complex".into()));
    }
    if f.degree.len() != m.complex().num_vars() || g.degree.len() != m.complex().num_vars() {
        return Err(Error::LengthMismatch(f.degree.len(), m.complex().num_vars()));
    }
    Ok(Element::from_coeffs(f.hdeg + g.hdeg, f.degree.add(&g.degree), m.product_vec(&f.coeffs, &g.coeffs)))
}

/// `(f ∗ g) ∗ h − f ∗ (g ∗ h)`.
pub fn associator(m: &Multiplication, f: &Element, g: &Element, h: &Element) -> Result<Element> {
    let left = multiply(m, &multiply(m, f, g)?, h)?;
    let right = multiply(m, f, &multiply(m, g, h)?)?;
    left.sub(&right)
}

/// The exterior-algebra product on the Taylor complex.
pub fn taylor_multiplication(taylor: Arc<FreeComplex>) -> Result<Multiplication> {
    let mut table = BTreeMap::new();
    for g in 0..taylor.len() {
        let Some(w) = taylor.element(g).label else {
            return Err(Error::Precondition("the Taylor multiplication needs labelled basis elements".into()));
        };
        if w.is_empty() {
            continue;
        }
        for h in g..taylor.len() {
            let v = taylor.element(h).label.expect("labelled");
            if w.intersects(v) {
                continue;
            }
            let Some(e) = taylor.find_label(w.union(v)) else {
                return Err(Error::Precondition(format!("g_{} is missing", w.union(v))));
            };
            let mut entry = SparseVec::new();
            entry.insert(e, sign(w.inversions(v)));
            table.insert((g, h), entry);
        }
    }
    Multiplication::new(taylor, table, false)
}

/// `a ∗ b := p(i(a) ∗_T i(b))` on the smaller complex of a transfer.
pub fn transfer_multiplication(
    big: &Multiplication,
    transfer: &TransferData,
    small: Arc<FreeComplex>,
) -> Result<Multiplication> {
    if transfer.inclusion.len() != small.len() || transfer.projection.len() != big.complex().len() {
        return Err(Error::Precondition("transfer data does not match the complexes".into()));
    }
    let mut table = BTreeMap::new();
    for g in 0..small.len() {
        if small.hdeg(g) == 0 {
            continue;
        }
        for h in g..small.len() {
            let prod = big.product_vec(&transfer.inclusion[g], &transfer.inclusion[h]);
            let v = scalar::apply(&transfer.projection, &prod);
            if !v.is_empty() {
                table.insert((g, h), v);
            }
        }
    }
    Multiplication::new(small, table, big.is_laurent())
}

/// A failing input of an axiom check with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<usize>,
    pub residual: Element,
}

/// Outcome of [`check_dga_axioms`]; every list holds the failures of one axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgaReport {
    pub unit: Vec<Witness>,
    pub leibniz: Vec<Witness>,
    pub commutativity: Vec<Witness>,
    pub associativity: Vec<Witness>,
    pub multigraded: Vec<Witness>,
    pub associativity_checked: bool,
}

impl DgaReport {
    /// Unit, Leibniz, graded commutativity and multigrading.
    pub fn is_multiplication(&self) -> bool {
        self.unit.is_empty() && self.leibniz.is_empty() && self.commutativity.is_empty() && self.multigraded.is_empty()
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_checked && self.associativity.is_empty()
    }

    pub fn passes_all(&self) -> bool {
        self.is_multiplication() && self.is_associative()
    }

    /// `(axiom, passed)` in a fixed order.
    pub fn outcomes(&self) -> Vec<(&'static str, bool)> {
        let mut v = vec![
            ("unit", self.unit.is_empty()),
            ("leibniz", self.leibniz.is_empty()),
            ("commutativity", self.commutativity.is_empty()),
        ];
        if self.associativity_checked {
            v.push(("associativity", self.associativity.is_empty()));
        }
        v.push(("multigraded", self.multigraded.is_empty()));
        v
    }
}

pub fn check_dga_axioms(m: &Multiplication) -> DgaReport {
    check_axioms(m, true)
}

/// Checks the axioms on all basis pairs and, if requested, triples.
pub fn check_axioms(m: &Multiplication, associativity: bool) -> DgaReport {
    let c = m.complex();
    let n = c.len();
    let unit = c.unit().expect("multiplication has a unit");
    let mut report = DgaReport { associativity_checked: associativity, ..Default::default() };
    let witness = |inputs: Vec<usize>, hdeg: usize, coeffs: SparseVec| {
        let degree = inputs.iter().fold(Multidegree::zero(c.num_vars()), |acc, &g| acc.add(c.mdeg(g)));
        Witness { inputs, residual: Element::from_coeffs(hdeg, degree, coeffs) }
    };
    for g in 0..n {
        for (a, b) in [(unit, g), (g, unit)] {
            let r = scalar::sub(&m.product_basis(a, b), &scalar::unit_vec(g));
            if !r.is_empty() {
                report.unit.push(witness(vec![a, b], c.hdeg(g), r));
            }
        }
    }
    let positive: Vec<usize> = (0..n).filter(|&g| c.hdeg(g) > 0).collect();
    for &g in &positive {
        for &h in &positive {
            let hd = c.hdeg(g) + c.hdeg(h);
            let gh = m.product_basis(g, h);
            let hg = m.product_basis(h, g);
            let comm = scalar::sub(&gh, &scalar::scaled(&hg, &sign(c.hdeg(g) * c.hdeg(h))));
            if !comm.is_empty() {
                report.commutativity.push(witness(vec![g, h], hd, comm));
            }
            let mut res = scalar::apply(c.diff(), &gh);
            for (&k, x) in c.diff_of(g) {
                axpy(&mut res, &-x.clone(), &m.product_basis(k, h));
            }
            let s = -sign(c.hdeg(g));
            for (&k, x) in c.diff_of(h) {
                axpy(&mut res, &(&s * x), &m.product_basis(g, k));
            }
            if !res.is_empty() {
                report.leibniz.push(witness(vec![g, h], hd - 1, res));
            }
            if !m.is_laurent() {
                let sum = c.mdeg(g).add(c.mdeg(h));
                let bad: SparseVec = gh
                    .iter()
                    .filter(|(&e, _)| c.hdeg(e) != hd || !c.mdeg(e).le(&sum))
                    .map(|(&e, x)| (e, x.clone()))
                    .collect();
                if !bad.is_empty() {
                    report.multigraded.push(witness(vec![g, h], hd, bad));
                }
            }
        }
    }
    if associativity {
        let max = c.max_hdeg();
        report.associativity = positive
            .par_iter()
            .flat_map_iter(|&g| {
                let mut out = Vec::new();
                for &h in &positive {
                    if c.hdeg(g) + c.hdeg(h) + 1 > max {
                        continue;
                    }
                    let gh = m.product_basis(g, h);
                    for &k in &positive {
                        if c.hdeg(g) + c.hdeg(h) + c.hdeg(k) > max {
                            continue;
                        }
                        let hk = m.product_basis(h, k);
                        if gh.is_empty() && hk.is_empty() {
                            continue;
                        }
                        let mut r = SparseVec::new();
                        for (&e, x) in &gh {
                            axpy(&mut r, x, &m.product_basis(e, k));
                        }
                        for (&e, x) in &hk {
                            axpy(&mut r, &-x.clone(), &m.product_basis(g, e));
                        }
                        if !r.is_empty() {
                            out.push(witness(vec![g, h, k], c.hdeg(g) + c.hdeg(h) + c.hdeg(k), r));
                        }
                    }
                }
                out
            })
            .collect();
    }
    report
}

/// A product term `e` of `g ∗ h` with `mdeg e ≰ mdeg g ∨ mdeg h`.
pub fn supportive_witness(m: &Multiplication) -> Option<(usize, usize, usize)> {
    let c = m.complex();
    m.table().iter().find_map(|(&(g, h), v)| {
        let join = c.mdeg(g).join(c.mdeg(h));
        v.keys().find(|&&e| !c.mdeg(e).le(&join)).map(|&e| (g, h, e))
    })
}

pub fn is_supportive(m: &Multiplication) -> bool {
    supportive_witness(m).is_none()
}

/// Moves a supportive multiplication on a resolution of `source` along an
/// lcm-lattice isomorphism onto `target`.
///
/// Differential and structure constants are kept; every basis degree `a`
/// becomes `ν(a)`.
pub fn relabel(
    m: &Multiplication,
    source: &MonomialIdeal,
    nu: &LatticeIso,
    target: &MonomialIdeal,
) -> Result<Multiplication> {
    if let Some((g, h, e)) = supportive_witness(m) {
        let c = m.complex();
        return Err(Error::Precondition(format!(
            "multiplication is not supportive: {} ∗ {} involves {}",
            c.name(g),
            c.name(h),
            c.name(e)
        )));
    }
    if !nu.is_isomorphism(&lcm_lattice(source), &lcm_lattice(target)) {
        return Err(Error::Precondition("ν is not an isomorphism of lcm lattices".into()));
    }
    let c = m.complex();
    let degrees = (0..c.len())
        .map(|g| {
            nu.apply(c.mdeg(g))
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("degree {} is not in the lcm lattice", c.mdeg(g))))
        })
        .collect::<Result<Vec<_>>>()?;
    let complex = c.with_degrees(target.num_vars(), degrees)?;
    m.on_complex(Arc::new(complex), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{minimal_resolution, taylor_complex, GenSet};
    use crate::scalar::int;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    fn taylor_dga(i: &MonomialIdeal) -> Multiplication {
        taylor_multiplication(Arc::new(taylor_complex(i).unwrap())).unwrap()
    }

    #[test]
    fn taylor_products_and_axioms() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let m = taylor_dga(&i);
        let t = m.complex();
        let a = t.find_label(GenSet::singleton(0)).unwrap();
        let b = t.find_label(GenSet::singleton(1)).unwrap();
        let c = t.find_label(GenSet::singleton(2)).unwrap();
        let ab = t.find_label(GenSet::from_indices(&[0, 1])).unwrap();
        let bc = t.find_label(GenSet::from_indices(&[1, 2])).unwrap();
        assert_eq!(m.product_basis(a, b), scalar::unit_vec(ab));
        assert_eq!(m.exponent(a, b, ab), Multidegree::new(vec![1, 0, 0]));
        assert_eq!(m.product_basis(b, c), scalar::unit_vec(bc));
        assert_eq!(m.exponent(b, c, bc), Multidegree::new(vec![1, 0, 0]));
        assert_eq!(m.product_basis(b, a), scalar::scaled(&scalar::unit_vec(ab), &int(-1)));
        assert!(m.product_basis(a, a).is_empty());
        assert!(check_dga_axioms(&m).passes_all());
        assert!(is_supportive(&m));
    }

    #[test]
    fn corrupted_entry_fails_leibniz() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let m = taylor_dga(&i);
        let bad = m.with_product(1, 2, scalar::scaled(&scalar::unit_vec(3), &int(2))).unwrap();
        let r = check_dga_axioms(&bad);
        assert!(!r.leibniz.is_empty());
        assert!(!r.leibniz[0].residual.is_zero());
    }

    #[test]
    fn unit_acts_as_identity() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let m = taylor_dga(&i);
        let t = m.complex();
        let one = Element::basis(t, t.unit().unwrap());
        let f = Element::term(t, int(3), &Multidegree::new(vec![0, 2]), 1);
        assert_eq!(multiply(&m, &one, &f).unwrap(), f);
    }

    #[test]
    fn transfer_of_minimal_is_identity() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let r = minimal_resolution(&i).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        let m = transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal.clone())).unwrap();
        assert_eq!(m.table(), mt.table());
    }

    #[test]
    fn transfer_on_triangle() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let r = minimal_resolution(&i).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        let m = transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal.clone())).unwrap();
        let rep = check_dga_axioms(&m);
        assert!(rep.is_multiplication());
        assert!(is_supportive(&m));
    }

    #[test]
    fn sign_normalisation_found() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let m = taylor_dga(&i);
        // flip the sign of g_ab: the product g_a ∗ g_b changes sign
        let flipped = m.with_product(1, 2, scalar::scaled(&scalar::unit_vec(3), &int(-1))).unwrap();
        let eps = m.agrees_up_to_basis_signs(&flipped).unwrap();
        assert_eq!(eps.iter().filter(|&&e| e == -1).count() % 2, 1);
        let doubled = m.with_product(1, 2, scalar::scaled(&scalar::unit_vec(3), &int(2))).unwrap();
        assert!(m.agrees_up_to_basis_signs(&doubled).is_none());
    }
}
