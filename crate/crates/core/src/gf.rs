//! Arithmetic in `F_(p^m) = F_p[t]/(g)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_factors};
use crate::polyarith::{add_mod, inv_mod, is_irreducible, mul_mod, sub_mod, ModPoly};

/// Default bound on `p^m` for operations that walk every field element.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// The finite field `F_p[t]/(g)` for a monic irreducible g of degree m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    modulus: ModPoly,
}

impl ResidueField {
    /// Field defined by an arbitrary monic irreducible modulus.
    pub fn new(modulus: ModPoly) -> Result<Arc<Self>> {
        let p = modulus.modulus();
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !modulus.is_monic() {
            return Err(Error::NonMonic);
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Reducible { p });
        }
        Ok(Arc::new(ResidueField { p, modulus }))
    }

    /// Used for moduli coming out of the factorization, which are already
    /// certified irreducible.
    pub(crate) fn from_irreducible(modulus: ModPoly) -> Arc<Self> {
        debug_assert!(modulus.is_monic());
        Arc::new(ResidueField {
            p: modulus.modulus(),
            modulus,
        })
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(ModPoly::new(p, vec![0, 1]))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus is nonzero")
    }

    pub fn modulus(&self) -> &ModPoly {
        &self.modulus
    }

    /// `p^m`
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    /// `p^m` when it fits in a u64.
    pub fn order_u64(&self) -> Option<u64> {
        self.p.checked_pow(self.degree() as u32)
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(
                f,
                "F_{}^{} = F_{}[t]/({})",
                self.p,
                self.degree(),
                self.p,
                self.modulus
            )
        }
    }
}

/// An element of a [`ResidueField`], stored as its `m` coordinates in the
/// basis `1, t, ..., t^(m-1)`.
///
/// Equality, hashing and ordering look only at the coordinates; mixing
/// elements of different fields is caught by the arithmetic.
#[derive(Clone)]
pub struct FqElem {
    field: Arc<ResidueField>,
    coeffs: Box<[u64]>,
}

impl FqElem {
    pub fn zero(field: &Arc<ResidueField>) -> Self {
        FqElem {
            field: field.clone(),
            coeffs: vec![0; field.degree()].into_boxed_slice(),
        }
    }

    pub fn one(field: &Arc<ResidueField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<ResidueField>, n: i64) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = n.rem_euclid(field.p as i64) as u64;
        e
    }

    /// The class of the generator t.
    pub fn generator(field: &Arc<ResidueField>) -> Self {
        Self::from_poly(field, &ModPoly::x(field.p))
    }

    pub fn from_poly(field: &Arc<ResidueField>, poly: &ModPoly) -> Self {
        let r = poly.rem(&field.modulus).expect("nonzero modulus");
        let mut e = Self::zero(field);
        for (k, &c) in r.coeffs().iter().enumerate() {
            e.coeffs[k] = c;
        }
        e
    }

    /// Coordinates, reduced into `[0, p)`.
    pub fn from_coeffs(field: &Arc<ResidueField>, coeffs: &[u64]) -> Self {
        Self::from_poly(field, &ModPoly::new(field.p, coeffs.to_vec()))
    }

    /// Inverse of [`FqElem::index`].
    pub fn from_index(field: &Arc<ResidueField>, mut idx: u64) -> Self {
        let mut e = Self::zero(field);
        for c in e.coeffs.iter_mut() {
            *c = idx % field.p;
            idx /= field.p;
        }
        e
    }

    /// `sum c_k p^k`: the position of this element in enumeration order.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.field.p + c)
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn to_poly(&self) -> ModPoly {
        ModPoly::new(self.field.p, self.coeffs.to_vec())
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &rhs.field) || self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.add(rhs))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.sub(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.mul(rhs))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.check_same(rhs).is_ok());
        let p = self.field.p;
        FqElem {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.check_same(rhs).is_ok());
        let p = self.field.p;
        FqElem {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        FqElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| sub_mod(0, a, p)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.check_same(rhs).is_ok());
        let p = self.field.p;
        let m = self.coeffs.len();
        if m == 1 {
            return FqElem {
                field: self.field.clone(),
                coeffs: Box::new([mul_mod(self.coeffs[0], rhs.coeffs[0], p)]),
            };
        }
        // schoolbook product, then reduce by the monic modulus from the top
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(a, b, p), p);
            }
        }
        let g = self.field.modulus.coeffs();
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                prod[k - m + j] = sub_mod(prod[k - m + j], mul_mod(c, g[j], p), p);
            }
        }
        prod.truncate(m);
        FqElem {
            field: self.field.clone(),
            coeffs: prod.into_boxed_slice(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        if self.coeffs.len() == 1 {
            return Ok(FqElem {
                field: self.field.clone(),
                coeffs: Box::new([inv_mod(self.coeffs[0], p)?]),
            });
        }
        let (g, s) = self.to_poly().ext_gcd_inverse(&self.field.modulus);
        debug_assert!(g.is_one());
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = Self::one(&self.field);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Least `n >= 1` with `self^n = 1`. Requires `p^m - 1` to fit in a u64.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self
            .field
            .order_u64()
            .ok_or_else(|| Error::Invalid(format!("{} is too large", self.field)))?
            - 1;
        let mut n = group;
        for r in prime_factors(group) {
            while n % r == 0 && self.pow(n / r).is_one() {
                n /= r;
            }
        }
        Ok(n)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order: compare from the highest coordinate down, which is
/// the numeric order of [`FqElem::index`].
impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Every element of the field, in increasing [`FqElem::index`] order.
pub fn enumerate_field(field: &Arc<ResidueField>, cap: u64) -> Result<Vec<FqElem>> {
    let n = field
        .order_u64()
        .filter(|&n| n <= cap)
        .ok_or(Error::CapExceeded {
            what: "field enumeration",
            cap,
        })?;
    Ok((0..n).map(|i| FqElem::from_index(field, i)).collect())
}

/// The first z in enumeration order with `z^2 = c`, if any.
pub fn solve_square(field: &Arc<ResidueField>, c: &FqElem) -> Result<Option<FqElem>> {
    Ok(enumerate_field(field, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .find(|z| z.mul(z) == *c))
}
