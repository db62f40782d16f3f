use std::fmt;
use std::sync::Arc;

use super::mat::Mat2;
use crate::error::{Error, Result};
use crate::gf::{FqElem, ResidueField, DEFAULT_ENUMERATION_CAP};

/// A point of `P^1(F)`: `(a : 1)` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FqElem),
    Infinity,
}

impl ProjPoint {
    /// Finite points in field enumeration order, then infinity.
    pub fn index(&self, field_order: u64) -> u64 {
        match self {
            ProjPoint::Finite(a) => a.index(),
            ProjPoint::Infinity => field_order,
        }
    }

    pub fn from_index(field: &Arc<ResidueField>, idx: u64, field_order: u64) -> Self {
        if idx == field_order {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(FqElem::from_index(field, idx))
        }
    }
}

/// `z -> (az + b)/(cz + d)`, with a zero denominator sending z to infinity
/// and infinity going to `a/c` (or staying put when `c = 0`).
pub fn act(x: &Mat2, pt: &ProjPoint) -> ProjPoint {
    match pt {
        ProjPoint::Infinity => {
            if x.c().is_zero() {
                ProjPoint::Infinity
            } else {
                ProjPoint::Finite(x.a().mul(&x.c().inv().expect("nonzero")))
            }
        }
        ProjPoint::Finite(z) => {
            let den = x.c().mul(z).add(x.d());
            if den.is_zero() {
                ProjPoint::Infinity
            } else {
                let num = x.a().mul(z).add(x.b());
                ProjPoint::Finite(num.mul(&den.inv().expect("nonzero")))
            }
        }
    }
}

/// Multiset of cycle lengths of a permutation, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType(Vec<u64>);

impl CycleType {
    pub fn new(mut lengths: Vec<u64>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[u64] {
        &self.0
    }

    /// Number of points permuted.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.count(1)
    }

    pub fn count(&self, len: u64) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }

    /// `(count, length)` runs, longest cycles first.
    pub fn runs(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((c, len)) if *len == l => *c += 1,
                _ => out.push((1, l)),
            }
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The permutation of `P^1(F)` induced by `x`, as point indices
/// (see [`ProjPoint::index`]).
pub fn p1_permutation(x: &Mat2, cap: u64) -> Result<Vec<u64>> {
    let field = x.field();
    let q = field
        .order_u64()
        .filter(|&n| n < cap)
        .ok_or(Error::CapExceeded {
            what: "projective line",
            cap,
        })?;
    Ok((0..=q)
        .map(|i| act(x, &ProjPoint::from_index(field, i, q)).index(q))
        .collect())
}

pub fn cycle_type(perm: &[u64]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    CycleType::new(lengths)
}

/// Cycle type of the fractional linear action of `x` on all `p^m + 1`
/// points of the projective line.
pub fn p1_action_cycles(x: &Mat2) -> Result<CycleType> {
    Ok(cycle_type(&p1_permutation(x, DEFAULT_ENUMERATION_CAP)?))
}

/// Whether the group generated by `generators` acts transitively on
/// `P^1(F)`: the orbit of infinity reaches every point.
pub fn is_transitive_on_p1(generators: &[Mat2], cap: u64) -> Result<bool> {
    let perms: Vec<Vec<u64>> = generators
        .iter()
        .map(|g| p1_permutation(g, cap))
        .collect::<Result<_>>()?;
    let Some(n) = perms.first().map(Vec::len) else {
        return Ok(false);
    };
    let mut seen = vec![false; n];
    let mut stack = vec![n - 1];
    seen[n - 1] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for perm in &perms {
            let j = perm[i] as usize;
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    Ok(count == n)
}
