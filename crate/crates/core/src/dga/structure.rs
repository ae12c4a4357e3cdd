use std::collections::BTreeMap;
use std::sync::Arc;

use super::{check_axioms, multiply, Multiplication};
use crate::comb::{cone_deconvolve, is_cone_fvector, FVector};
use crate::complexes::{
    betti_table, differential, scarf_faces, taylor_complex, Element, FreeComplex, GenSet,
};
use crate::dga::taylor_multiplication;
use crate::linalg::{self, Echelon};
use crate::monomial::{lcm_lattice, MonomialIdeal, Multidegree};
use crate::scalar::{self, int, sign, SparseVec};
use crate::{Error, Result};

/// Outcome of [`scarf_product_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScarfProductReport {
    /// Number of ordered pairs `(W, V)` checked.
    pub checked: usize,
    /// Pairs of basis ids whose product differs from the formula.
    pub failures: Vec<(usize, usize)>,
}

impl ScarfProductReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_squarefree(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_squarefree() {
        Ok(())
    } else {
        Err(Error::Precondition("the ideal is not squarefree".into()))
    }
}

/// Checks `g_W ∗ g_V = (−1)^{σ(W,V)} (m_W m_V / m_{W∪V}) g_{W∪V}` for disjoint
/// and `0` for overlapping `W, V ∈ Δ_I` with `W ∪ V ∈ Δ_I`.
pub fn scarf_product_check(ideal: &MonomialIdeal, m: &Multiplication) -> Result<ScarfProductReport> {
    require_squarefree(ideal)?;
    let c = m.complex();
    let faces: Vec<GenSet> = scarf_faces(ideal)?.into_iter().filter(|w| !w.is_empty()).collect();
    let id = |w: GenSet| {
        c.find_label(w)
            .ok_or_else(|| Error::Precondition(format!("the complex has no basis element g_{w}")))
    };
    let mut report = ScarfProductReport { checked: 0, failures: Vec::new() };
    for &w in &faces {
        for &v in &faces {
            let u = w.union(v);
            if !faces.contains(&u) {
                continue;
            }
            let (gw, gv) = (id(w)?, id(v)?);
            let expected = if w.intersects(v) {
                SparseVec::new()
            } else {
                scalar::scaled(&scalar::unit_vec(id(u)?), &sign(w.inversions(v)))
            };
            report.checked += 1;
            if m.product_basis(gw, gv) != expected {
                report.failures.push((gw, gv));
            }
        }
    }
    Ok(report)
}

/// Outcome of [`degree_one_generation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    /// `(homological degree, multidegree, basis ids not reached modulo mF)`.
    pub missing: Vec<(usize, Multidegree, Vec<usize>)>,
}

impl GenerationReport {
    pub fn passes(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Whether every basis element is reached, modulo `mF`, by right-nested
/// products of degree-one elements brought to its multidegree.
///
/// For each `a` in the lcm lattice, `P_1(a)` is spanned by the degree-one
/// basis elements of degree at most `a`, and `P_i(a)` by the products
/// `g ∗ v` with `g ∈ F_1`, `deg g ≤ a`, `v ∈ P_{i−1}(a)` whose terms all have
/// degree at most `a` (so the product divided down to degree `a` is defined).
/// For squarefree ideals this division is the squarefree part. With `guard`
/// non-squarefree ideals are rejected.
pub fn degree_one_generation(ideal: &MonomialIdeal, m: &Multiplication, guard: bool) -> Result<GenerationReport> {
    if guard {
        require_squarefree(ideal)?;
    }
    let c = m.complex();
    let ones = c.ids_in_hdeg(1);
    let mut missing = Vec::new();
    for a in lcm_lattice(ideal).elements() {
        let fits = |v: &SparseVec| v.keys().all(|&e| c.mdeg(e).le(a));
        let gens: Vec<usize> = ones.iter().copied().filter(|&g| c.mdeg(g).le(a)).collect();
        let mut level: Vec<SparseVec> = gens.iter().map(|&g| scalar::unit_vec(g)).collect();
        for i in 1..=c.max_hdeg() {
            if i > 1 {
                let mut ech = Echelon::new();
                let mut next = Vec::new();
                for &g in &gens {
                    for v in &level {
                        let p = m.product_vec(&scalar::unit_vec(g), v);
                        if !p.is_empty() && fits(&p) && matches!(ech.insert(p.clone()), linalg::Insert::Pivot(_)) {
                            next.push(p);
                        }
                    }
                }
                level = next;
            }
            let exact: Vec<usize> = c.ids_in_hdeg(i).into_iter().filter(|&e| c.mdeg(e) == a).collect();
            if exact.is_empty() {
                continue;
            }
            let projected: Vec<SparseVec> = level
                .iter()
                .map(|v| v.iter().filter(|(e, _)| exact.contains(e)).map(|(&e, x)| (e, x.clone())).collect())
                .collect();
            let mut ech = Echelon::new();
            for p in projected {
                ech.insert(p);
            }
            let unreached: Vec<usize> = exact.iter().copied().filter(|&e| !ech.contains(&scalar::unit_vec(e))).collect();
            if ech.rank() < exact.len() {
                missing.push((i, a.clone(), unreached));
            }
        }
    }
    Ok(GenerationReport { missing })
}

/// A submodule of the Taylor complex given by its k-spans in each degree of
/// the lcm lattice.
///
/// Coefficient vectors are over Taylor basis ids; a vector in the span at `a`
/// stands for the element of degree `a` with those coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgIdeal {
    pub spans: BTreeMap<Multidegree, Vec<SparseVec>>,
}

impl DgIdeal {
    /// The S-span of the given homogeneous generators `(degree, coefficients)`.
    pub fn generated_by(taylor: &FreeComplex, ideal: &MonomialIdeal, gens: &[(Multidegree, SparseVec)]) -> Self {
        let _ = taylor;
        let mut spans = BTreeMap::new();
        for a in lcm_lattice(ideal).elements() {
            let mut ech = Echelon::new();
            let mut basis = Vec::new();
            for (d, v) in gens {
                if d.le(a) && matches!(ech.insert(v.clone()), linalg::Insert::Pivot(_)) {
                    basis.push(v.clone());
                }
            }
            spans.insert(a.clone(), basis);
        }
        Self { spans }
    }

    pub fn contains(&self, a: &Multidegree, v: &SparseVec) -> bool {
        let Some(basis) = self.spans.get(a) else { return v.is_empty() };
        let mut ech = Echelon::new();
        for b in basis {
            ech.insert(b.clone());
        }
        ech.contains(v)
    }

    /// Equal spans in every degree.
    pub fn same_as(&self, other: &Self) -> bool {
        self.spans.len() == other.spans.len()
            && self.spans.iter().all(|(a, basis)| {
                let Some(theirs) = other.spans.get(a) else { return false };
                linalg::rank(basis) == linalg::rank(theirs)
                    && basis.iter().all(|v| other.contains(a, v))
            })
    }

    /// Closed under `∂` and under multiplication by every Taylor basis element.
    ///
    /// Products leave the lattice window, so the test is whether the product
    /// lies in the S-span at the product's degree computed from all spans.
    pub fn closure_witness(&self, mt: &Multiplication) -> Option<(Multidegree, SparseVec)> {
        let t = mt.complex();
        let gens: Vec<(Multidegree, SparseVec)> = self
            .spans
            .iter()
            .flat_map(|(a, basis)| basis.iter().map(move |v| (a.clone(), v.clone())))
            .collect();
        let in_span = |d: &Multidegree, w: &SparseVec| {
            let mut ech = Echelon::new();
            for (a, v) in &gens {
                if a.le(d) {
                    ech.insert(v.clone());
                }
            }
            ech.contains(w)
        };
        for (a, v) in &gens {
            let dv = scalar::apply(t.diff(), v);
            if !in_span(a, &dv) {
                return Some((a.clone(), dv));
            }
            for s in 0..t.len() {
                let p = mt.product_vec(&scalar::unit_vec(s), v);
                let d = a.add(t.mdeg(s));
                if !in_span(&d, &p) {
                    return Some((d, p));
                }
            }
        }
        None
    }
}

/// The map from the Taylor complex onto a minimal DGA resolution and its kernel.
#[derive(Clone, Debug)]
pub struct TaylorToF {
    pub taylor: Arc<FreeComplex>,
    /// `phi[A]` is the image of `g_A` over the basis of `F`.
    pub phi: Vec<SparseVec>,
    pub kernel: DgIdeal,
    pub chain_map: bool,
    pub multiplicative: bool,
    pub surjective: bool,
    pub kernel_closed: bool,
}

impl TaylorToF {
    pub fn passes(&self) -> bool {
        self.chain_map && self.multiplicative && self.surjective && self.kernel_closed
    }
}

/// `φ(g_A) = |φ(g_{m_1}) ∗ (φ(g_{m_2}) ∗ (⋯ ∗ φ(g_{m_s})))|_sqf` with `φ(g_m)`
/// the basis element of `F` labelled `{m}`.
pub fn taylor_to_f_map(ideal: &MonomialIdeal, m: &Multiplication) -> Result<TaylorToF> {
    require_squarefree(ideal)?;
    if !check_axioms(m, true).is_associative() {
        return Err(Error::Precondition("the multiplication is not associative".into()));
    }
    let f = m.complex();
    let taylor = Arc::new(taylor_complex(ideal)?);
    let mt = taylor_multiplication(Arc::clone(&taylor))?;
    let unit = f.unit().expect("unit");
    let vertex = |i: usize| {
        f.find_label(GenSet::singleton(i))
            .ok_or_else(|| Error::Precondition(format!("F has no basis element for generator {}", i + 1)))
    };
    let mut phi = Vec::with_capacity(taylor.len());
    for a in 0..taylor.len() {
        let w = taylor.element(a).label.expect("labelled");
        let members = w.indices();
        let v = match members.split_last() {
            None => scalar::unit_vec(unit),
            Some((&last, rest)) => {
                let mut v = scalar::unit_vec(vertex(last)?);
                for &i in rest.iter().rev() {
                    v = m.product_vec(&scalar::unit_vec(vertex(i)?), &v);
                }
                v
            }
        };
        if let Some(&e) = v.keys().find(|&&e| !f.mdeg(e).le(taylor.mdeg(a))) {
            return Err(Error::Precondition(format!(
                "the product for g_{w} involves {} above its squarefree part",
                f.name(e)
            )));
        }
        phi.push(v);
    }
    let chain_map = (0..taylor.len())
        .all(|a| scalar::apply(f.diff(), &phi[a]) == scalar::apply(&phi, taylor.diff_of(a)));
    let multiplicative = (0..taylor.len()).all(|s| {
        (0..taylor.len()).all(|t| scalar::apply(&phi, &mt.product_basis(s, t)) == m.product_vec(&phi[s], &phi[t]))
    });
    let mut surjective = true;
    let mut spans = BTreeMap::new();
    for a in lcm_lattice(ideal).elements() {
        let source: Vec<usize> = (0..taylor.len()).filter(|&s| taylor.mdeg(s).le(a)).collect();
        let target = (0..f.len()).filter(|&e| f.mdeg(e).le(a)).count();
        let images: Vec<SparseVec> = source.iter().map(|&s| phi[s].clone()).collect();
        surjective &= linalg::rank(&images) == target;
        let kernel = linalg::kernel(&images)
            .into_iter()
            .map(|k| k.into_iter().map(|(j, x)| (source[j], x)).collect())
            .collect();
        spans.insert(a.clone(), kernel);
    }
    let kernel = DgIdeal { spans };
    let kernel_closed = kernel.closure_witness(&mt).is_none();
    Ok(TaylorToF { taylor, phi, kernel, chain_map, multiplicative, surjective, kernel_closed })
}

/// Outcome of [`hilbert_cone_check`] on the scalarized algebra `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertConeReport {
    pub hilbert: FVector,
    /// Dimensions of the cycles in each homological degree.
    pub cycles: Vec<u64>,
    /// `dim A_i = dim C_i + dim C_{i−1}`.
    pub decomposition: bool,
    pub generated_in_degree_one: bool,
    pub cone_fvector: bool,
    /// The deconvolution of the Hilbert function, when it is a cone f-vector.
    pub base: Option<FVector>,
}

impl HilbertConeReport {
    /// The decomposition always holds; when `A` is generated in degree one
    /// the Hilbert function is a cone f-vector over the cycle dimensions.
    pub fn passes(&self) -> bool {
        let base_is_cycles = self.base.as_ref().is_some_and(|b| {
            let mut c = self.cycles.clone();
            while c.len() > 1 && *c.last().unwrap() == 0 {
                c.pop();
            }
            b.0 == c
        });
        self.decomposition && (!self.generated_in_degree_one || (self.cone_fvector && base_is_cycles))
    }
}

pub fn hilbert_cone_check(m: &Multiplication) -> Result<HilbertConeReport> {
    if !check_axioms(m, true).passes_all() {
        return Err(Error::Precondition("hilbert_cone_check needs a DGA".into()));
    }
    let c = m.complex();
    let ranks: Vec<u64> = c.ranks().into_iter().map(|r| r as u64).collect();
    let diff_rank: Vec<u64> = (0..ranks.len())
        .map(|i| {
            if i == 0 {
                0
            } else {
                let rows: Vec<SparseVec> = c.ids_in_hdeg(i).into_iter().map(|g| c.diff_of(g).clone()).collect();
                linalg::rank(&rows) as u64
            }
        })
        .collect();
    let cycles: Vec<u64> = (0..ranks.len()).map(|i| ranks[i] - diff_rank[i]).collect();
    let decomposition = (0..ranks.len()).all(|i| ranks[i] == cycles[i] + if i > 0 { cycles[i - 1] } else { 0 });
    let ones = c.ids_in_hdeg(1);
    let mut level: Vec<SparseVec> = ones.iter().map(|&g| scalar::unit_vec(g)).collect();
    let mut generated = true;
    for i in 1..ranks.len() {
        if i > 1 {
            let mut ech = Echelon::new();
            let mut next = Vec::new();
            for &g in &ones {
                for v in &level {
                    let p = m.product_vec(&scalar::unit_vec(g), v);
                    if matches!(ech.insert(p.clone()), linalg::Insert::Pivot(_)) {
                        next.push(p);
                    }
                }
            }
            level = next;
        }
        generated &= level.len() as u64 == ranks[i];
    }
    let hilbert = FVector(ranks);
    Ok(HilbertConeReport {
        cone_fvector: is_cone_fvector(&hilbert),
        base: cone_deconvolve(&hilbert),
        hilbert,
        cycles,
        decomposition,
        generated_in_degree_one: generated,
    })
}

/// Certificate that a five-generator path ideal has no minimal DGA resolution.
#[derive(Clone, Debug)]
pub struct AvramovReport {
    /// `β_{3,(1,1,1,1,0,0)}` and `β_{3,(0,0,1,1,1,1)}`.
    pub betti_zero: [usize; 2],
    /// The Taylor-algebra element `f`.
    pub f: Element,
    /// `f` minus the four-term combination, which must lie in the span of
    /// `g_abc` and `g_cde`.
    pub remainder: Element,
    pub remainder_in_kernel_span: bool,
    /// Coefficients of `g_abe, g_ade, g_bde, g_abd` in `f`.
    pub four_terms: SparseVec,
    pub signs: [i8; 4],
    /// `β_{3,a} ≠ 0` at the lcm `a` of each of the four triples.
    pub triples_carry_betti: bool,
    /// The triples among the four that are not Scarf faces.
    pub non_scarf_triples: Vec<GenSet>,
    pub f_nonzero: bool,
    pub taylor: Arc<FreeComplex>,
}

impl AvramovReport {
    pub fn passes(&self) -> bool {
        self.betti_zero == [0, 0]
            && self.remainder_in_kernel_span
            && self.triples_carry_betti
            && self.f_nonzero
            && self.signs.iter().all(|&s| s != 0)
    }
}

/// The element
/// `f = (∂g_abc) ∗ g_e − g_a ∗ (∂g_cde) − x_1 ∂g_bcde − x_6 ∂g_abcd`
/// in the Taylor algebra of `⟨x1x2, x2x3, x3x4, x4x5, x5x6⟩` and the facts
/// that make it an obstruction.
pub fn avramov_obstruction(ideal: &MonomialIdeal) -> Result<AvramovReport> {
    let path: Vec<Multidegree> = (0..5)
        .map(|i| Multidegree::new((0..6).map(|j| i64::from(j == i || j == i + 1)).collect()))
        .collect();
    if ideal.num_vars() != 6 || ideal.generators() != path.as_slice() {
        return Err(Error::Precondition("expected the ideal ⟨x1x2, x2x3, x3x4, x4x5, x5x6⟩".into()));
    }
    let betti = betti_table(ideal)?;
    let betti_zero = [
        betti.get(3, &Multidegree::new(vec![1, 1, 1, 1, 0, 0])),
        betti.get(3, &Multidegree::new(vec![0, 0, 1, 1, 1, 1])),
    ];
    let taylor = Arc::new(taylor_complex(ideal)?);
    let mt = taylor_multiplication(Arc::clone(&taylor))?;
    let t = &*taylor;
    let g = |idx: &[usize]| Element::basis(t, t.find_label(GenSet::from_indices(idx)).expect("Taylor basis"));
    let x = |v: usize| Multidegree::unit(6, v);
    let (a, c, d, e) = (0, 2, 3, 4);
    let b = 1;
    let term1 = multiply(&mt, &differential(t, &g(&[a, b, c])), &g(&[e]))?;
    let term2 = multiply(&mt, &g(&[a]), &differential(t, &g(&[c, d, e])))?;
    let term3 = differential(t, &g(&[b, c, d, e])).shift(&x(0));
    let term4 = differential(t, &g(&[a, b, c, d])).shift(&x(5));
    let f = term1.sub(&term2)?.sub(&term3)?.sub(&term4)?;
    let triples = [[a, b, e], [a, d, e], [b, d, e], [a, b, d]];
    let ids: Vec<usize> = triples.iter().map(|w| t.find_label(GenSet::from_indices(w)).unwrap()).collect();
    let mut signs = [0i8; 4];
    let mut combination = Element::zero(3, f.degree.clone());
    for (k, &id) in ids.iter().enumerate() {
        if let Some(coef) = f.coeffs.get(&id) {
            signs[k] = if *coef > int(0) { 1 } else { -1 };
            let mut v = SparseVec::new();
            v.insert(id, coef.clone());
            combination = combination.add(&Element::from_coeffs(3, f.degree.clone(), v))?;
        }
    }
    let remainder = f.sub(&combination)?;
    let allowed = [t.find_label(GenSet::from_indices(&[a, b, c])).unwrap(), t.find_label(GenSet::from_indices(&[c, d, e])).unwrap()];
    let remainder_in_kernel_span = remainder.coeffs.keys().all(|k| allowed.contains(k));
    let scarf = scarf_faces(ideal)?;
    let non_scarf_triples =
        triples.iter().map(|w| GenSet::from_indices(w)).filter(|w| !scarf.contains(w)).collect();
    let triples_carry_betti = ids.iter().all(|&id| betti.get(3, t.mdeg(id)) > 0);
    let four_terms = combination.coeffs.clone();
    Ok(AvramovReport {
        betti_zero,
        f_nonzero: !f.is_zero() && !combination.is_zero(),
        f,
        remainder,
        remainder_in_kernel_span,
        four_terms,
        signs,
        triples_carry_betti,
        non_scarf_triples,
        taylor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::minimal_resolution;
    use crate::dga::transfer_multiplication;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Multidegree::new(g.to_vec())).collect()).unwrap()
    }

    fn transferred(i: &MonomialIdeal) -> Multiplication {
        let r = minimal_resolution(i).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal)).unwrap()
    }

    #[test]
    fn koszul_structure() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let m = transferred(&i);
        assert!(scarf_product_check(&i, &m).unwrap().passes());
        assert!(degree_one_generation(&i, &m, true).unwrap().passes());
        let h = hilbert_cone_check(&m).unwrap();
        assert_eq!(h.hilbert, FVector(vec![1, 2, 1]));
        assert_eq!(h.base, Some(FVector(vec![1, 1])));
        assert!(h.passes());
        let phi = taylor_to_f_map(&i, &m).unwrap();
        assert!(phi.passes());
        assert!(phi.kernel.spans.values().all(Vec::is_empty));
    }

    #[test]
    fn non_squarefree_rejected() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let m = transferred(&i);
        assert!(scarf_product_check(&i, &m).is_err());
        assert!(degree_one_generation(&i, &m, true).is_err());
        assert!(degree_one_generation(&i, &m, false).unwrap().passes());
        assert!(taylor_to_f_map(&i, &m).is_err());
    }

    #[test]
    fn triangle_kernel() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let m = transferred(&i);
        assert!(degree_one_generation(&i, &m, true).unwrap().passes());
    }
}
