use std::fmt;

use serde::{Deserialize, Serialize};

/// Face counts by cardinality: entry `i` is the number of faces with `i` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
    }
    r
}

/// Upper bound on the number of `(i+1)`-faces given `n` faces of size `i`.
fn upper_shadow_bound(n: u64, i: u64) -> u128 {
    let mut rest = u128::from(n);
    let mut bound = 0u128;
    let mut j = i;
    while rest > 0 && j > 0 {
        // largest a with C(a, j) ≤ rest
        let mut a = j;
        while binomial(a + 1, j) <= rest {
            a += 1;
        }
        rest -= binomial(a, j);
        bound += binomial(a, j + 1);
        j -= 1;
    }
    bound
}

/// Whether `f` is the f-vector of a simplicial complex.
pub fn kruskal_katona_check(f: &FVector) -> bool {
    let f = &f.0;
    if f.first() != Some(&1) {
        return false;
    }
    (1..f.len().saturating_sub(1)).all(|i| u128::from(f[i + 1]) <= upper_shadow_bound(f[i], i as u64))
}

/// The `g` with `f_i = g_i + g_{i−1}` when it is itself an f-vector.
pub fn cone_deconvolve(f: &FVector) -> Option<FVector> {
    let f = &f.0;
    if f.first() != Some(&1) {
        return None;
    }
    let mut g: Vec<u64> = Vec::with_capacity(f.len());
    let mut carry = 0u64;
    for &fi in f {
        let gi = fi.checked_sub(carry)?;
        g.push(gi);
        carry = gi;
    }
    if carry != 0 {
        return None;
    }
    g.pop();
    while g.len() > 1 && *g.last().unwrap() == 0 {
        g.pop();
    }
    let g = FVector(g);
    kruskal_katona_check(&g).then_some(g)
}

pub fn is_cone_fvector(f: &FVector) -> bool {
    cone_deconvolve(f).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(v: &[u64]) -> FVector {
        FVector(v.to_vec())
    }

    #[test]
    fn kruskal_katona_examples() {
        assert!(kruskal_katona_check(&fv(&[1, 3, 3, 1])));
        assert!(!kruskal_katona_check(&fv(&[1, 6, 9, 6, 2])));
        assert!(!kruskal_katona_check(&fv(&[1, 5, 4, 2])));
        assert!(kruskal_katona_check(&fv(&[1])));
        assert!(!kruskal_katona_check(&fv(&[1, 2, 2])));
    }

    #[test]
    fn shadow_bound_cascade() {
        // 4 = C(3,2) + C(1,1): bound C(3,3) + C(1,2) = 1
        assert_eq!(upper_shadow_bound(4, 2), 1);
        assert_eq!(upper_shadow_bound(6, 2), 4);
        assert_eq!(upper_shadow_bound(5, 1), 10);
    }

    #[test]
    fn deconvolution() {
        assert_eq!(cone_deconvolve(&fv(&[1, 4, 5, 2])), Some(fv(&[1, 3, 2])));
        assert_eq!(cone_deconvolve(&fv(&[1, 6, 9, 6, 2])), None);
        assert_eq!(cone_deconvolve(&fv(&[1, 1])), Some(fv(&[1])));
        assert_eq!(cone_deconvolve(&fv(&[1])), None);
        assert_eq!(cone_deconvolve(&fv(&[1, 3, 3, 1])), Some(fv(&[1, 2, 1])));
    }
}
