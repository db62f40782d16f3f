use std::fmt;

use num_bigint::BigUint;

use super::closure::{closure, ClosureMode, MatGroup};
use super::mat::Mat2;

/// Isomorphism type of a finite subgroup of SL2 or PSL2 over a finite
/// field, as far as the classifier can tell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    /// Dihedral of order `2s`, s odd.
    Dihedral {
        s: u64,
    },
    /// The binary icosahedral group, order 120.
    Sl2F5,
    /// The icosahedral group A5, order 60.
    Psl2F5,
    /// All of `SL2(F_(p^m))`.
    Sl2 {
        p: u64,
        m: usize,
    },
    /// All of `PSL2(F_(p^m))`.
    Psl2 {
        p: u64,
        m: usize,
    },
    Cyclic {
        n: u64,
    },
    Unknown {
        order: u64,
    },
}

impl GroupId {
    /// Order of the group this label names.
    pub fn order(&self) -> BigUint {
        match *self {
            GroupId::Dihedral { s } => BigUint::from(2 * s),
            GroupId::Sl2F5 => BigUint::from(120u32),
            GroupId::Psl2F5 => BigUint::from(60u32),
            GroupId::Sl2 { p, m } => sl2_order(p, m),
            GroupId::Psl2 { p, m } => psl2_order(p, m),
            GroupId::Cyclic { n } => BigUint::from(n),
            GroupId::Unknown { order } => BigUint::from(order),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

fn field_label(p: u64, m: usize) -> String {
    if m == 1 {
        p.to_string()
    } else {
        format!("{p}^{m}")
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupId::Dihedral { s } => write!(f, "D_{}", 2 * s),
            GroupId::Sl2F5 => write!(f, "SL2(F5)"),
            GroupId::Psl2F5 => write!(f, "PSL2(F5)"),
            GroupId::Sl2 { p, m } => write!(f, "SL2({})", field_label(p, m)),
            GroupId::Psl2 { p, m } => write!(f, "PSL2({})", field_label(p, m)),
            GroupId::Cyclic { n } => write!(f, "C_{n}"),
            GroupId::Unknown { order } => write!(f, "unknown({order})"),
        }
    }
}

/// `|SL2(F_(p^m))| = (p^m + 1) p^m (p^m - 1)`
pub fn sl2_order(p: u64, m: usize) -> BigUint {
    let n = BigUint::from(p).pow(m as u32);
    (&n + 1u32) * &n * (&n - 1u32)
}

/// `|PSL2(F_(p^m))| = |SL2(F_(p^m))| / gcd(2, p - 1)`
pub fn psl2_order(p: u64, m: usize) -> BigUint {
    let full = sl2_order(p, m);
    if p == 2 {
        full
    } else {
        full / 2u32
    }
}

/// Names a closure output.
///
/// Checks in order: the dihedral relations on the `hint` pair (rotation,
/// reflection), the full group over the ambient field, the binary
/// icosahedral / icosahedral presentation, cyclic. Anything else is
/// reported as `Unknown` with its order.
pub fn identify_group(g: &MatGroup, hint: Option<(&Mat2, &Mat2)>) -> GroupId {
    let n = g.len() as u64;
    let field = g.field();
    let (p, m) = (field.characteristic(), field.degree());

    if let Some((a, b)) = hint {
        if is_dihedral(g, a, b) {
            return GroupId::Dihedral { s: n / 2 };
        }
    }

    let full = match g.mode() {
        ClosureMode::Sl2 => sl2_order(p, m),
        ClosureMode::Psl2 => psl2_order(p, m),
    };
    if BigUint::from(n) == full {
        return match g.mode() {
            ClosureMode::Sl2 => GroupId::Sl2 { p, m },
            ClosureMode::Psl2 => GroupId::Psl2 { p, m },
        };
    }

    match (g.mode(), n) {
        (ClosureMode::Sl2, 120) if is_binary_icosahedral(g) => return GroupId::Sl2F5,
        (ClosureMode::Psl2, 60) if has_icosahedral_pair(g) => return GroupId::Psl2F5,
        _ => {}
    }

    if g.iter().any(|x| g.element_order(&x) == Some(n)) {
        return GroupId::Cyclic { n };
    }
    GroupId::Unknown { order: n }
}

/// `|g| = 2s` with s odd, `ord(a) = s`, `ord(b) = 2`, `b a b^-1 = a^-1`.
/// Such a pair generates a dihedral subgroup of order 2s, so with
/// `a, b` in g it is all of g.
fn is_dihedral(g: &MatGroup, a: &Mat2, b: &Mat2) -> bool {
    let n = g.len() as u64;
    if !n.is_multiple_of(2) || (n / 2) % 2 != 1 {
        return false;
    }
    let s = n / 2;
    g.contains(a)
        && g.contains(b)
        && g.element_order(a) == Some(s)
        && g.element_order(b) == Some(2)
        && g.same(&b.mul(a).mul(&b.inv()), &a.inv())
}

/// Order 120, a unique involution, and a generating pair with
/// `h^5 = u^3 = (hu)^4 = 1`.
fn is_binary_icosahedral(g: &MatGroup) -> bool {
    let elems: Vec<(Mat2, u64)> = g
        .iter()
        .map(|x| {
            let o = g.element_order(&x).expect("finite group");
            (x, o)
        })
        .collect();
    if elems.iter().filter(|(_, o)| *o == 2).count() != 1 {
        return false;
    }
    find_presentation_pair(g, &elems, 4)
}

/// A generating pair with `h^5 = u^3 = (hu)^2 = 1` in PSL2, i.e. A5.
fn has_icosahedral_pair(g: &MatGroup) -> bool {
    let elems: Vec<(Mat2, u64)> = g
        .iter()
        .map(|x| {
            let o = g.element_order(&x).expect("finite group");
            (x, o)
        })
        .collect();
    find_presentation_pair(g, &elems, 2)
}

fn find_presentation_pair(g: &MatGroup, elems: &[(Mat2, u64)], prod_exp: u64) -> bool {
    let fives: Vec<&Mat2> = elems
        .iter()
        .filter(|(_, o)| *o == 5)
        .map(|(x, _)| x)
        .collect();
    let threes: Vec<&Mat2> = elems
        .iter()
        .filter(|(_, o)| *o == 3)
        .map(|(x, _)| x)
        .collect();
    let n = g.len() as u64;
    for h in &fives {
        for u in &threes {
            if !g.is_identity(&h.mul(u).pow(prod_exp)) {
                continue;
            }
            if let Ok(sub) = closure(&[(*h).clone(), (*u).clone()], g.mode(), n) {
                if sub.len() as u64 == n {
                    return true;
                }
            }
        }
    }
    false
}
