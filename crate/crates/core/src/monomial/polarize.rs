use super::{lcm_lattice, LatticeIso, MonomialIdeal, Multidegree};

/// The standard polarization of a monomial ideal together with the map back
/// to the original multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// For original variable `i`, the polarized variables `blocks[i].0 .. blocks[i].0 + blocks[i].1`.
    blocks: Vec<(usize, usize)>,
}

/// Replaces `x_i^a` by the product of the first `a` copies of `x_i`.
/// Every variable gets `max(1, e_i)` copies where `e_i` is its largest
/// exponent, so a squarefree ideal polarizes to itself.
pub fn polarize(ideal: &MonomialIdeal) -> Polarization {
    let n = ideal.num_vars();
    let mut blocks = Vec::with_capacity(n);
    let mut next = 0usize;
    for v in 0..n {
        let e = ideal.generators().iter().map(|g| g.exponents()[v]).max().unwrap_or(0).max(1) as usize;
        blocks.push((next, e));
        next += e;
    }
    let polarize_one = |g: &Multidegree| {
        let mut out = vec![0i64; next];
        for (v, &(start, _)) in blocks.iter().enumerate() {
            for k in 0..g.exponents()[v] as usize {
                out[start + k] = 1;
            }
        }
        Multidegree::new(out)
    };
    let gens = ideal.generators().iter().map(polarize_one).collect();
    let ideal = MonomialIdeal::new(next, gens).expect("polarization preserves minimality");
    Polarization { ideal, blocks }
}

impl Polarization {
    pub fn original_num_vars(&self) -> usize {
        self.blocks.len()
    }

    /// Sends a polarized multidegree back by summing each block of copies.
    pub fn depolarize(&self, a: &Multidegree) -> Multidegree {
        Multidegree::new(
            self.blocks
                .iter()
                .map(|&(start, len)| a.exponents()[start..start + len].iter().sum())
                .collect(),
        )
    }

    /// Image of an original nonnegative multidegree (prefixes of each block).
    pub fn polarize_degree(&self, a: &Multidegree) -> Multidegree {
        let total: usize = self.blocks.iter().map(|b| b.1).sum();
        let mut out = vec![0i64; total];
        for (v, &(start, len)) in self.blocks.iter().enumerate() {
            for k in 0..(a.exponents()[v].max(0) as usize).min(len) {
                out[start + k] = 1;
            }
        }
        Multidegree::new(out)
    }

    /// The lcm-lattice isomorphism from the polarized ideal to the original one.
    pub fn lattice_iso(&self) -> LatticeIso {
        LatticeIso::from_pairs(lcm_lattice(&self.ideal).elements().iter().map(|a| (a.clone(), self.depolarize(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{lcm_lattice, poset_isomorphic};

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn lattice_iso_is_isomorphism() {
        let i = MonomialIdeal::new(3, vec![md(&[2, 0, 0]), md(&[1, 1, 0]), md(&[1, 0, 1])]).unwrap();
        let p = polarize(&i);
        assert!(p.lattice_iso().is_isomorphism(&lcm_lattice(&p.ideal), &lcm_lattice(&i)));
    }

    #[test]
    fn single_square() {
        let p = polarize(&MonomialIdeal::new(1, vec![md(&[2])]).unwrap());
        assert_eq!(p.ideal.generators(), &[md(&[1, 1])]);
        assert_eq!(p.depolarize(&md(&[1, 1])), md(&[2]));
    }

    #[test]
    fn squarefree_is_fixed() {
        let i = MonomialIdeal::new(3, vec![md(&[1, 1, 0]), md(&[0, 1, 1])]).unwrap();
        assert_eq!(polarize(&i).ideal, i);
    }

    #[test]
    fn three_generators() {
        // {x², xy, xz} -> {x1 x2, x1 y, x1 z} with variables (x1, x2, y, z)
        let i = MonomialIdeal::new(3, vec![md(&[2, 0, 0]), md(&[1, 1, 0]), md(&[1, 0, 1])]).unwrap();
        let p = polarize(&i);
        assert_eq!(
            p.ideal.generators(),
            &[md(&[1, 1, 0, 0]), md(&[1, 0, 1, 0]), md(&[1, 0, 0, 1])]
        );
        let iso = poset_isomorphic(&lcm_lattice(&i).poset(), &lcm_lattice(&p.ideal).poset()).unwrap();
        assert!(iso.is_some());
        for g in i.generators() {
            assert_eq!(&p.depolarize(&p.polarize_degree(g)), g);
        }
    }
}
