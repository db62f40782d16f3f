use std::collections::HashSet;
use std::sync::Arc;

use super::mat::{psl_canon, Mat2};
use crate::error::{Error, Result};
use crate::gf::{FqElem, ResidueField};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    /// Elements of SL2 as they are.
    Sl2,
    /// Elements identified up to sign, each stored as its [`psl_canon`]
    /// representative.
    Psl2,
}

/// A finite matrix group produced by [`closure`].
///
/// Elements are kept as packed keys (four 32-bit field indices) in
/// discovery order and decoded on demand.
#[derive(Clone, Debug)]
pub struct MatGroup {
    field: Arc<ResidueField>,
    mode: ClosureMode,
    keys: Vec<u128>,
    set: HashSet<u128>,
}

fn key(m: &Mat2) -> u128 {
    m.entries()
        .iter()
        .fold(0u128, |acc, x| (acc << 32) | x.index() as u128)
}

fn decode(field: &Arc<ResidueField>, k: u128) -> Mat2 {
    let mask = u32::MAX as u128;
    let entry = |shift: u32| FqElem::from_index(field, ((k >> shift) & mask) as u64);
    Mat2::new(entry(96), entry(64), entry(32), entry(0)).expect("stored matrices are unimodular")
}

impl MatGroup {
    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Normal form of a matrix in this group's mode.
    pub fn normalize(&self, m: &Mat2) -> Mat2 {
        group_normalize(self.mode, m)
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.set.contains(&key(&self.normalize(m)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat2> + '_ {
        self.keys.iter().map(|&k| decode(&self.field, k))
    }

    pub fn is_identity(&self, m: &Mat2) -> bool {
        match self.mode {
            ClosureMode::Sl2 => m.is_identity(),
            ClosureMode::Psl2 => m.is_scalar_unit(),
        }
    }

    /// Element order in this group's mode; bounded by the group size.
    pub fn element_order(&self, m: &Mat2) -> Option<u64> {
        let limit = self.len() as u64;
        match self.mode {
            ClosureMode::Sl2 => m.order(limit),
            ClosureMode::Psl2 => m.psl_order(limit),
        }
    }

    /// Equality in this group's mode.
    pub fn same(&self, x: &Mat2, y: &Mat2) -> bool {
        self.normalize(x) == self.normalize(y)
    }
}

/// The group generated by `generators`: breadth-first closure of the
/// identity under right multiplication by each generator.
///
/// Fails with [`Error::CapExceeded`] as soon as more than `cap` elements
/// have been found.
pub fn closure(generators: &[Mat2], mode: ClosureMode, cap: u64) -> Result<MatGroup> {
    closure_with(generators, mode, cap, TABLE_LIMIT)
}

fn closure_with(
    generators: &[Mat2],
    mode: ClosureMode,
    cap: u64,
    table_limit: u64,
) -> Result<MatGroup> {
    let field = generators
        .first()
        .map(|g| g.field().clone())
        .ok_or_else(|| Error::Invalid("closure needs at least one generator".into()))?;
    if generators
        .iter()
        .any(|g| g.field().as_ref() != field.as_ref())
    {
        return Err(Error::FieldMismatch);
    }
    if field.order_u64().is_none_or(|n| n > u32::MAX as u64) {
        return Err(Error::Invalid(format!("{field} is too large for closure")));
    }
    if cap == 0 {
        return Err(Error::CapExceeded {
            what: "group closure",
            cap,
        });
    }
    let mut group = MatGroup {
        field: field.clone(),
        mode,
        keys: Vec::new(),
        set: HashSet::new(),
    };
    if field.order_u64().is_some_and(|n| n <= table_limit) {
        let tables = Tables::new(&field);
        let gens: Vec<[u16; 4]> = generators
            .iter()
            .map(|g| unpack(key(&group.normalize(g))))
            .collect();
        bfs(&mut group, cap, |k, out| {
            let x = unpack(k);
            for g in &gens {
                let y = tables.mul(&x, g);
                out.push(match mode {
                    ClosureMode::Sl2 => pack(&y),
                    ClosureMode::Psl2 => pack(&y).min(pack(&tables.neg(&y))),
                });
            }
        })?;
        return Ok(group);
    }
    let gens: Vec<Mat2> = generators.iter().map(|g| group.normalize(g)).collect();
    bfs(&mut group, cap, |k, out| {
        let x = decode(&field, k);
        for g in &gens {
            out.push(key(&group_normalize(mode, &x.mul(g))));
        }
    })?;
    Ok(group)
}

fn group_normalize(mode: ClosureMode, m: &Mat2) -> Mat2 {
    match mode {
        ClosureMode::Sl2 => m.clone(),
        ClosureMode::Psl2 => psl_canon(m),
    }
}

/// Breadth-first search from the identity; `step` lists the keys of the
/// successors of a key.
fn bfs(group: &mut MatGroup, cap: u64, mut step: impl FnMut(u128, &mut Vec<u128>)) -> Result<()> {
    let id = key(&Mat2::identity(&group.field));
    group.keys.push(id);
    group.set.insert(id);
    let mut next = 0;
    let mut succ = Vec::new();
    while next < group.keys.len() {
        succ.clear();
        step(group.keys[next], &mut succ);
        next += 1;
        for &k in &succ {
            if group.set.insert(k) {
                if group.keys.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "group closure",
                        cap,
                    });
                }
                group.keys.push(k);
            }
        }
    }
    Ok(())
}

/// Fields up to this order get precomputed addition and multiplication
/// tables.
const TABLE_LIMIT: u64 = 1024;

struct Tables {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

impl Tables {
    fn new(field: &Arc<ResidueField>) -> Self {
        let n = field.order_u64().expect("small field") as usize;
        let elems: Vec<FqElem> = (0..n as u64)
            .map(|i| FqElem::from_index(field, i))
            .collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate().skip(i) {
                let s = x.add(y).index() as u16;
                let p = x.mul(y).index() as u16;
                add[i * n + j] = s;
                add[j * n + i] = s;
                mul[i * n + j] = p;
                mul[j * n + i] = p;
            }
        }
        let neg = elems.iter().map(|x| x.neg().index() as u16).collect();
        Tables { n, add, mul, neg }
    }

    fn dot(&self, a: u16, b: u16, c: u16, d: u16) -> u16 {
        let n = self.n;
        let ab = self.mul[a as usize * n + b as usize] as usize;
        let cd = self.mul[c as usize * n + d as usize] as usize;
        self.add[ab * n + cd]
    }

    fn mul(&self, x: &[u16; 4], y: &[u16; 4]) -> [u16; 4] {
        [
            self.dot(x[0], y[0], x[1], y[2]),
            self.dot(x[0], y[1], x[1], y[3]),
            self.dot(x[2], y[0], x[3], y[2]),
            self.dot(x[2], y[1], x[3], y[3]),
        ]
    }

    fn neg(&self, x: &[u16; 4]) -> [u16; 4] {
        x.map(|e| self.neg[e as usize])
    }
}

fn pack(x: &[u16; 4]) -> u128 {
    x.iter().fold(0u128, |acc, &e| (acc << 32) | e as u128)
}

fn unpack(k: u128) -> [u16; 4] {
    [
        (k >> 96) as u16,
        (k >> 64) as u16,
        (k >> 32) as u16,
        k as u16,
    ]
}
