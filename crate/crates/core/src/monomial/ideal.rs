use std::fmt;

use serde::{Deserialize, Serialize};

use super::Multidegree;
use crate::{Error, Result};

/// A monomial ideal given by its minimal generators.
///
/// The order of `generators` is the total order used for every sign in the
/// Taylor complex and its multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Multidegree>,
}

/// Short name of the `i`-th generator: `a, b, …, z`, then `m27, m28, …`.
pub fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("m{}", i + 1)
    }
}

impl MonomialIdeal {
    /// Validates that `generators` is a nonempty antichain of distinct,
    /// nonnegative, non-constant exponent vectors of length `num_vars`.
    pub fn new(num_vars: usize, generators: Vec<Multidegree>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidIdeal("no variables".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != num_vars {
                return Err(Error::LengthMismatch(g.len(), num_vars));
            }
            if !g.is_nonnegative() {
                return Err(Error::InvalidIdeal(format!("generator {} has a negative exponent", i + 1)));
            }
            if g.is_zero() {
                return Err(Error::InvalidIdeal("the unit ideal is not supported".into()));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate() {
                if i != j && g.le(h) {
                    return Err(Error::InvalidIdeal(if g == h {
                        format!("duplicate generator {g}")
                    } else {
                        format!("generator {g} divides generator {h}")
                    }));
                }
            }
        }
        Ok(Self { num_vars, generators })
    }

    /// Minimal generators of the ideal generated by `mons`, keeping the input
    /// order among survivors.
    pub fn minimal_generators(mons: &[Multidegree], num_vars: usize) -> Result<Self> {
        if mons.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        let mut kept: Vec<Multidegree> = Vec::new();
        for (i, m) in mons.iter().enumerate() {
            if m.len() != num_vars {
                return Err(Error::LengthMismatch(m.len(), num_vars));
            }
            let redundant = mons
                .iter()
                .enumerate()
                .any(|(j, other)| other.lt(m) || (other == m && j < i));
            if !redundant {
                kept.push(m.clone());
            }
        }
        Self::new(num_vars, kept)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Multidegree] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Least common multiple of all generators.
    pub fn lcm(&self) -> Multidegree {
        self.generators
            .iter()
            .fold(Multidegree::zero(self.num_vars), |acc, g| acc.join(g))
    }

    /// Least common multiple of the generators whose indices are set in `mask`.
    pub fn lcm_of(&self, mask: u64) -> Multidegree {
        let mut acc = Multidegree::zero(self.num_vars);
        for (i, g) in self.generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.join(g);
            }
        }
        acc
    }

    /// Whether `x^a` lies in the ideal.
    pub fn contains(&self, a: &Multidegree) -> bool {
        self.generators.iter().any(|g| g.le(a))
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Multidegree::is_squarefree)
    }

    /// No variable occurs with the same nonzero exponent in two generators.
    pub fn is_strongly_generic(&self) -> bool {
        (0..self.num_vars).all(|v| {
            let mut seen = std::collections::BTreeSet::new();
            self.generators
                .iter()
                .map(|g| g.exponents()[v])
                .filter(|&e| e != 0)
                .all(|e| seen.insert(e))
        })
    }

    /// The ideal `x^s · I`.
    pub fn scaled(&self, s: &Multidegree) -> Result<Self> {
        if s.len() != self.num_vars {
            return Err(Error::LengthMismatch(s.len(), self.num_vars));
        }
        Self::new(self.num_vars, self.generators.iter().map(|g| g.add(s)).collect())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}
