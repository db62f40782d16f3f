use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FqElem, ResidueField};

/// A 2x2 matrix of determinant 1 over a residue field, row-major
/// `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    e: [FqElem; 4],
}

impl Mat2 {
    /// Rejects matrices whose determinant is not 1.
    pub fn new(a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Result<Self> {
        let m = Mat2 { e: [a, b, c, d] };
        if !m.det().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(m)
    }

    pub fn from_ints(field: &Arc<ResidueField>, entries: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = entries.map(|n| FqElem::from_int(field, n));
        Self::new(a, b, c, d)
    }

    pub fn identity(field: &Arc<ResidueField>) -> Self {
        let (z, o) = (FqElem::zero(field), FqElem::one(field));
        Mat2 {
            e: [o.clone(), z.clone(), z, o],
        }
    }

    /// `[[1, x], [0, 1]]`
    pub fn unipotent(x: &FqElem) -> Self {
        let f = x.field();
        Mat2 {
            e: [FqElem::one(f), x.clone(), FqElem::zero(f), FqElem::one(f)],
        }
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        self.e[0].field()
    }

    pub fn a(&self) -> &FqElem {
        &self.e[0]
    }

    pub fn b(&self) -> &FqElem {
        &self.e[1]
    }

    pub fn c(&self) -> &FqElem {
        &self.e[2]
    }

    pub fn d(&self) -> &FqElem {
        &self.e[3]
    }

    pub fn entries(&self) -> &[FqElem; 4] {
        &self.e
    }

    pub fn det(&self) -> FqElem {
        self.e[0].mul(&self.e[3]).sub(&self.e[1].mul(&self.e[2]))
    }

    pub fn trace(&self) -> FqElem {
        self.e[0].add(&self.e[3])
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.e;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    /// True for `I` and `-I`.
    pub fn is_scalar_unit(&self) -> bool {
        let [a, b, c, d] = &self.e;
        b.is_zero() && c.is_zero() && a == d && a.mul(a).is_one()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.e;
        let [w, x, y, z] = &rhs.e;
        Mat2 {
            e: [
                a.mul(w).add(&b.mul(y)),
                a.mul(x).add(&b.mul(z)),
                c.mul(w).add(&d.mul(y)),
                c.mul(x).add(&d.mul(z)),
            ],
        }
    }

    /// Inverse of a unimodular matrix: its adjugate.
    pub fn inv(&self) -> Self {
        let [a, b, c, d] = &self.e;
        Mat2 {
            e: [d.clone(), b.neg(), c.neg(), a.clone()],
        }
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            e: self.e.clone().map(|x| x.neg()),
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Order in SL2, by repeated multiplication up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        self.order_by(limit, Mat2::is_identity)
    }

    /// Order of the image in PSL2.
    pub fn psl_order(&self, limit: u64) -> Option<u64> {
        self.order_by(limit, Mat2::is_scalar_unit)
    }

    fn order_by(&self, limit: u64, done: impl Fn(&Mat2) -> bool) -> Option<u64> {
        let mut acc = self.clone();
        for n in 1..=limit {
            if done(&acc) {
                return Some(n);
            }
            acc = acc.mul(self);
        }
        None
    }
}

/// Canonical representative of `{x, -x}`: the entry-lexicographically
/// smaller one, entries compared in field enumeration order.
pub fn psl_canon(x: &Mat2) -> Mat2 {
    let n = x.neg();
    if n < *x {
        n
    } else {
        x.clone()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}
