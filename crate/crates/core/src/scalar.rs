//! Exact scalars and sparse coefficient vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Elements of the ground field.
pub type Scalar = BigRational;

/// Sparse vector indexed by basis ids. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^e` as a scalar.
pub fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Renders a scalar as `p` or `p/q`.
pub fn format(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Scalar::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

pub fn is_unit(s: &Scalar) -> bool {
    s.abs().is_one()
}

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in w {
        add_entry(v, k, &(c * x));
    }
}

/// `v[k] += c`, dropping the entry if it cancels.
pub fn add_entry(v: &mut SparseVec, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let remove = {
        let e = v.entry(k).or_insert_with(Scalar::zero);
        *e += c;
        e.is_zero()
    };
    if remove {
        v.remove(&k);
    }
}

pub fn scaled(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

pub fn unit_vec(k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, Scalar::one());
    v
}

/// Applies the linear map `rows` (row `k` is the image of basis vector `k`) to `v`.
pub fn apply(rows: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, c) in v {
        axpy(&mut out, c, &rows[k]);
    }
    out
}

pub fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    axpy(&mut out, &-Scalar::one(), b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let mut v = unit_vec(3);
        axpy(&mut v, &int(-1), &unit_vec(3));
        assert!(v.is_empty());
    }

    #[test]
    fn parse_format_roundtrip() {
        for s in ["0", "-3", "7/2", "-5/9"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert!(parse("1/0").is_none());
        assert_eq!(parse("4/2").unwrap(), int(2));
    }
}
