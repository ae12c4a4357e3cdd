use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::monomial::{generator_name, Multidegree};
use crate::scalar::{self, axpy, Scalar, SparseVec};
use crate::{Error, Result};

/// A subset of the generators of an ideal, as a bitmask over generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        GenSet(indices.iter().fold(0, |m, &i| m | 1 << i))
    }

    pub fn singleton(i: usize) -> Self {
        GenSet(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn union(self, other: Self) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn without(self, i: usize) -> Self {
        GenSet(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// `#{(m, m′) ∈ self × other : m′ ≺ m}` for the index order.
    pub fn inversions(self, other: Self) -> usize {
        self.indices()
            .iter()
            .map(|&m| other.indices().iter().filter(|&&m2| m2 < m).count())
            .sum()
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let names: Vec<String> = self.indices().into_iter().map(generator_name).collect();
        if names.iter().all(|n| n.len() == 1) {
            write!(f, "{}", names.concat())
        } else {
            write!(f, "{}", names.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub hdeg: usize,
    pub mdeg: Multidegree,
    /// Generator subset for bases derived from the Taylor complex.
    pub label: Option<GenSet>,
}

impl BasisElement {
    pub fn name(&self, id: usize) -> String {
        match self.label {
            Some(l) if self.hdeg == 0 => {
                let _ = l;
                "1".to_string()
            }
            Some(l) => format!("g_{l}"),
            None => format!("e{id}"),
        }
    }
}

/// A multigraded free complex of S-modules.
///
/// `diff[g]` lists the scalar coefficients of `∂g`; the coefficient `c` on `h`
/// stands for `c · x^{mdeg(g) − mdeg(h)} h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    num_vars: usize,
    basis: Vec<BasisElement>,
    diff: Vec<SparseVec>,
    augmented: bool,
}

impl FreeComplex {
    pub fn new(num_vars: usize, basis: Vec<BasisElement>, diff: Vec<SparseVec>, augmented: bool) -> Result<Self> {
        if basis.len() != diff.len() {
            return Err(Error::InvalidComplex("basis and differential sizes differ".into()));
        }
        for (g, b) in basis.iter().enumerate() {
            if b.mdeg.len() != num_vars {
                return Err(Error::LengthMismatch(b.mdeg.len(), num_vars));
            }
            if !b.mdeg.is_nonnegative() {
                return Err(Error::InvalidComplex(format!("basis element {g} has a negative degree")));
            }
            for (&h, c) in &diff[g] {
                let Some(t) = basis.get(h) else {
                    return Err(Error::InvalidComplex(format!("∂ of {g} refers to missing element {h}")));
                };
                if c.is_zero() {
                    return Err(Error::InvalidComplex("zero coefficient stored".into()));
                }
                if t.hdeg + 1 != b.hdeg {
                    return Err(Error::InvalidComplex(format!("∂ of {g} does not lower the homological degree by one")));
                }
                if !t.mdeg.le(&b.mdeg) {
                    return Err(Error::InvalidComplex(format!("∂ of {g} raises the multidegree")));
                }
            }
        }
        if augmented {
            let zero = basis.iter().filter(|b| b.hdeg == 0).collect::<Vec<_>>();
            if zero.len() != 1 || !zero[0].mdeg.is_zero() {
                return Err(Error::InvalidComplex("an augmented complex needs a single degree-zero unit in homological degree 0".into()));
            }
        }
        Ok(Self { num_vars, basis, diff, augmented })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, id: usize) -> &BasisElement {
        &self.basis[id]
    }

    pub fn hdeg(&self, id: usize) -> usize {
        self.basis[id].hdeg
    }

    pub fn mdeg(&self, id: usize) -> &Multidegree {
        &self.basis[id].mdeg
    }

    pub fn name(&self, id: usize) -> String {
        self.basis[id].name(id)
    }

    pub fn diff(&self) -> &[SparseVec] {
        &self.diff
    }

    pub fn diff_of(&self, id: usize) -> &SparseVec {
        &self.diff[id]
    }

    pub fn ids_in_hdeg(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.basis[g].hdeg == i).collect()
    }

    pub fn max_hdeg(&self) -> usize {
        self.basis.iter().map(|b| b.hdeg).max().unwrap_or(0)
    }

    /// Rank of the free module in each homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.max_hdeg() + 1];
        for b in &self.basis {
            r[b.hdeg] += 1;
        }
        r
    }

    /// The unit: the homological-degree-zero basis element of degree zero.
    pub fn unit(&self) -> Option<usize> {
        (0..self.len()).find(|&g| self.basis[g].hdeg == 0 && self.basis[g].mdeg.is_zero())
    }

    pub fn find_label(&self, label: GenSet) -> Option<usize> {
        self.basis.iter().position(|b| b.label == Some(label))
    }

    /// Every basis degree is at most `(1, …, 1)`.
    pub fn has_squarefree_basis(&self) -> bool {
        self.basis.iter().all(|b| b.mdeg.is_squarefree())
    }

    /// `∂∘∂ = 0`, checked by composing the scalar matrices.
    pub fn d_squared_is_zero(&self) -> bool {
        (0..self.len()).all(|g| scalar::apply(&self.diff, &self.diff[g]).is_empty())
    }

    /// Same differential and labels with new basis multidegrees.
    pub fn with_degrees(&self, num_vars: usize, mdegs: Vec<Multidegree>) -> Result<Self> {
        if mdegs.len() != self.len() {
            return Err(Error::InvalidComplex("wrong number of degrees".into()));
        }
        let basis = self
            .basis
            .iter()
            .zip(mdegs)
            .map(|(b, mdeg)| BasisElement { hdeg: b.hdeg, mdeg, label: b.label })
            .collect();
        Self::new(num_vars, basis, self.diff.clone(), self.augmented)
    }
}

/// A homogeneous element `Σ c_g x^{degree − mdeg(g)} g`.
///
/// The monomial attached to each basis element is implied by the common
/// multidegree, so only the scalar coefficients are stored. In Laurent
/// contexts the implied exponents may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub hdeg: usize,
    pub degree: Multidegree,
    pub coeffs: SparseVec,
}

impl Element {
    pub fn zero(hdeg: usize, degree: Multidegree) -> Self {
        Self { hdeg, degree, coeffs: SparseVec::new() }
    }

    pub fn basis(complex: &FreeComplex, id: usize) -> Self {
        Self {
            hdeg: complex.hdeg(id),
            degree: complex.mdeg(id).clone(),
            coeffs: scalar::unit_vec(id),
        }
    }

    /// `coeff · x^monomial · g`.
    pub fn term(complex: &FreeComplex, coeff: Scalar, monomial: &Multidegree, id: usize) -> Self {
        let mut coeffs = SparseVec::new();
        if !coeff.is_zero() {
            coeffs.insert(id, coeff);
        }
        Self { hdeg: complex.hdeg(id), degree: complex.mdeg(id).add(monomial), coeffs }
    }

    pub fn from_coeffs(hdeg: usize, degree: Multidegree, coeffs: SparseVec) -> Self {
        Self { hdeg, degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as `(coefficient, monomial, basis id)`.
    pub fn terms(&self, complex: &FreeComplex) -> Vec<(Scalar, Multidegree, usize)> {
        self.coeffs
            .iter()
            .map(|(&g, c)| (c.clone(), self.degree.sub(complex.mdeg(g)), g))
            .collect()
    }

    /// Checks homogeneity against the ambient complex; with `polynomial` also
    /// requires every implied monomial to have nonnegative exponents.
    pub fn validate(&self, complex: &FreeComplex, polynomial: bool) -> Result<()> {
        if self.degree.len() != complex.num_vars() {
            return Err(Error::LengthMismatch(self.degree.len(), complex.num_vars()));
        }
        for &g in self.coeffs.keys() {
            if g >= complex.len() {
                return Err(Error::InvalidElement(format!("unknown basis element {g}")));
            }
            if complex.hdeg(g) != self.hdeg {
                return Err(Error::InvalidElement("mixed homological degrees".into()));
            }
            if polynomial && !complex.mdeg(g).le(&self.degree) {
                return Err(Error::InvalidElement(format!(
                    "basis element {} has degree above the element degree",
                    complex.name(g)
                )));
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { hdeg: self.hdeg, degree: self.degree.clone(), coeffs: scalar::scaled(&self.coeffs, c) }
    }

    /// Multiplies by the monomial `x^m`.
    pub fn shift(&self, m: &Multidegree) -> Self {
        Self { hdeg: self.hdeg, degree: self.degree.add(m), coeffs: self.coeffs.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.hdeg != other.hdeg || self.degree != other.degree {
            return Err(Error::InvalidElement("adding elements of different degrees".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        axpy(&mut coeffs, &Scalar::one(), &other.coeffs);
        Ok(Self { hdeg: self.hdeg, degree: self.degree.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Human-readable rendering such as `x2*x3 g_ab - g_ac`.
    pub fn display(&self, complex: &FreeComplex) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (c, m, g)) in self.terms(complex).into_iter().enumerate() {
            let negative = c < Scalar::zero();
            let abs = if negative { -c } else { c };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = if m.is_zero() { String::new() } else { m.to_string() };
            let coef = if abs.is_one() { String::new() } else { scalar::format(&abs) };
            let name = complex.name(g);
            let parts: Vec<&str> = [coef.as_str(), mono.as_str()].into_iter().filter(|s| !s.is_empty()).collect();
            if parts.is_empty() {
                out.push_str(&name);
            } else if name == "1" {
                out.push_str(&parts.join("*"));
            } else {
                out.push_str(&format!("{} {}", parts.join("*"), name));
            }
        }
        out
    }
}

/// `∂f`, of the same multidegree and one lower homological degree.
pub fn differential(complex: &FreeComplex, f: &Element) -> Element {
    Element {
        hdeg: f.hdeg.saturating_sub(1),
        degree: f.degree.clone(),
        coeffs: scalar::apply(complex.diff(), &f.coeffs),
    }
}

/// The unique `f′` of degree `target` with `f = x^{deg f − target} f′`, if it exists.
pub fn divide_to_degree(complex: &FreeComplex, f: &Element, target: &Multidegree) -> Option<Element> {
    if !target.le(&f.degree) {
        return None;
    }
    if f.coeffs.keys().any(|&g| !complex.mdeg(g).le(target)) {
        return None;
    }
    Some(Element { hdeg: f.hdeg, degree: target.clone(), coeffs: f.coeffs.clone() })
}

/// Factors `f = x^m · f′` with `deg f′ = deg f ∧ (1, …, 1)`.
///
/// Requires every basis degree of the ambient complex to be squarefree. The
/// coefficients of `f′` coincide with those of `f`; only the degree changes,
/// which is why the map `f ↦ f′` is additive on elements of equal degree.
pub fn squarefree_part(complex: &FreeComplex, f: &Element) -> Result<(Multidegree, Element)> {
    if let Some(g) = (0..complex.len()).find(|&g| !complex.mdeg(g).is_squarefree()) {
        return Err(Error::Precondition(format!(
            "basis element {} has non-squarefree degree {}",
            complex.name(g),
            complex.mdeg(g)
        )));
    }
    f.validate(complex, true)?;
    let cap = f.degree.squarefree_cap();
    let m = f.degree.sub(&cap);
    let reduced = divide_to_degree(complex, f, &cap).ok_or_else(|| {
        Error::InvalidElement("element has a basis term above its squarefree cap".into())
    })?;
    Ok((m, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::taylor_complex;
    use crate::monomial::MonomialIdeal;
    use crate::scalar::int;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn koszul() -> FreeComplex {
        taylor_complex(&MonomialIdeal::new(2, vec![md(&[1, 0]), md(&[0, 1])]).unwrap()).unwrap()
    }

    #[test]
    fn genset_inversions() {
        let w = GenSet::from_indices(&[1, 2]);
        let v = GenSet::from_indices(&[0]);
        assert_eq!(w.inversions(v), 2);
        assert_eq!(v.inversions(w), 0);
        assert_eq!(GenSet::from_indices(&[0, 1]).to_string(), "ab");
    }

    #[test]
    fn squarefree_part_of_squarefree_degree() {
        let c = koszul();
        let g = c.find_label(GenSet::from_indices(&[0, 1])).unwrap();
        let f = Element::basis(&c, g);
        let (m, f2) = squarefree_part(&c, &f).unwrap();
        assert!(m.is_zero());
        assert_eq!(f2, f);
    }

    #[test]
    fn squarefree_part_strips_monomial() {
        // f = x²y · 1 in two variables: m = x, f′ = xy · 1
        let c = koszul();
        let unit = c.unit().unwrap();
        let f = Element::term(&c, int(3), &md(&[2, 1]), unit);
        let (m, f2) = squarefree_part(&c, &f).unwrap();
        assert_eq!(m, md(&[1, 0]));
        assert_eq!(f2.degree, md(&[1, 1]));
        assert_eq!(f2.coeffs[&unit], int(3));
        // k-linearity
        let (m3, f3) = squarefree_part(&c, &f.scale(&int(-2))).unwrap();
        assert_eq!(m3, m);
        assert_eq!(f3, f2.scale(&int(-2)));
    }

    #[test]
    fn squarefree_part_rejects_non_squarefree_ambient() {
        let c = taylor_complex(&MonomialIdeal::new(1, vec![md(&[2])]).unwrap()).unwrap();
        let f = Element::basis(&c, 1);
        assert!(squarefree_part(&c, &f).is_err());
    }

    #[test]
    fn inhomogeneous_input_rejected() {
        let c = koszul();
        let mut f = Element::basis(&c, 1);
        f.coeffs.insert(3, int(1));
        assert!(squarefree_part(&c, &f).is_err());
    }
}
