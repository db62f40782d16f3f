//! The order `Z[lambda_q]`, its prime ideals above a rational prime, and
//! reduction into residue fields.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::{FqElem, ResidueField};
use crate::numtheory::{check_q, is_prime};
use crate::polyarith::{factor_mod_p, lambda_minpoly, mul_mod, IntPoly, ModPoly};

/// An element of `Z[lambda_q]` in the power basis `1, lambda, ...,
/// lambda^(d-1)`, `d = deg T_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloInt {
    q: u64,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        CycloInt {
            q: self.q,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        CycloInt {
            q: self.q,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloInt {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string().replace('x', "L");
        write!(f, "{s}")
    }
}

/// A 2x2 matrix over `Z[lambda_q]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMat {
    pub entries: [CycloInt; 4],
}

/// The triangle group data for a fixed odd q: the minimal polynomial of
/// `lambda_q`, `lambda_q`, `mu_q = 2 + lambda_q` and the generators
///
/// ```text
/// g1 = [[-lambda, -1], [1, 0]]   (elliptic, order q in PSL2)
/// g2 = [[0, 1], [-1, 2]]         (parabolic, fixes 1)
/// g3 = [[1, mu], [0, 1]]         (parabolic, fixes infinity)
/// ```
#[derive(Clone, Debug)]
pub struct TriangleParams {
    q: u64,
    minpoly: IntPoly,
    lambda: CycloInt,
    mu: CycloInt,
    generators: [CycloMat; 3],
}

impl TriangleParams {
    pub fn new(q: u64) -> Result<Self> {
        check_q(q)?;
        let minpoly = lambda_minpoly(q)?;
        let d = minpoly.degree().expect("nonzero");
        let int = |n: i64| {
            let mut coeffs = vec![BigInt::zero(); d];
            coeffs[0] = BigInt::from(n);
            CycloInt { q, coeffs }
        };
        let lambda = if d == 1 {
            // T_3 = x - 1, so lambda_3 = 1
            int(1)
        } else {
            let mut coeffs = vec![BigInt::zero(); d];
            coeffs[1] = BigInt::one();
            CycloInt { q, coeffs }
        };
        let mu = lambda.add(&int(2));
        let generators = [
            CycloMat {
                entries: [lambda.neg(), int(-1), int(1), int(0)],
            },
            CycloMat {
                entries: [int(0), int(1), int(-1), int(2)],
            },
            CycloMat {
                entries: [int(1), mu.clone(), int(0), int(1)],
            },
        ];
        let params = TriangleParams {
            q,
            minpoly,
            lambda,
            mu,
            generators,
        };
        debug_assert!(params
            .generators
            .iter()
            .all(|g| params.det(g) == params.integer(1)));
        Ok(params)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().expect("nonzero")
    }

    pub fn lambda(&self) -> &CycloInt {
        &self.lambda
    }

    pub fn mu(&self) -> &CycloInt {
        &self.mu
    }

    pub fn generators(&self) -> &[CycloMat; 3] {
        &self.generators
    }

    pub fn integer(&self, n: i64) -> CycloInt {
        let mut coeffs = vec![BigInt::zero(); self.degree()];
        coeffs[0] = BigInt::from(n);
        CycloInt { q: self.q, coeffs }
    }

    /// Element from power-basis coordinates; missing entries are zero and
    /// longer inputs are reduced modulo `T_q`.
    pub fn element(&self, coeffs: &[BigInt]) -> CycloInt {
        self.reduce_poly(&IntPoly::new(coeffs.to_vec()))
    }

    fn reduce_poly(&self, poly: &IntPoly) -> CycloInt {
        let (_, r) = poly.div_rem_monic(&self.minpoly).expect("T_q is monic");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), BigInt::zero());
        CycloInt { q: self.q, coeffs }
    }

    pub fn mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        self.reduce_poly(&(&a.as_poly() * &b.as_poly()))
    }

    pub fn det(&self, m: &CycloMat) -> CycloInt {
        let [a, b, c, d] = &m.entries;
        self.mul(a, d).sub(&self.mul(b, c))
    }
}

/// The prime `(p, g(lambda_q))` of `Z[lambda_q]`, g a monic irreducible
/// factor of `T_q mod p` occurring with multiplicity `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub q: u64,
    pub p: u64,
    /// Position in the sorted factor list of `T_q mod p`.
    pub index: usize,
    pub g: ModPoly,
    pub e: usize,
    pub f: usize,
}

impl PrimeIdeal {
    pub fn is_ramified(&self) -> bool {
        self.e > 1
    }

    pub fn residue_field(&self) -> Arc<ResidueField> {
        ResidueField::from_irreducible(self.g.clone())
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = IntPoly::new(self.g.coeffs().iter().map(|&c| BigInt::from(c)).collect());
        write!(f, "({}, {})", self.p, g.to_string().replace('x', "L"))
    }
}

/// All primes of `Z[lambda_q]` above p, one per distinct irreducible factor
/// of `T_q mod p`, in factor-sorted order.
pub fn primes_above(q: u64, p: u64) -> Result<Vec<PrimeIdeal>> {
    check_q(q)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let t = lambda_minpoly(q)?;
    Ok(factor_mod_p(&t, p)?
        .into_iter()
        .enumerate()
        .map(|(index, (g, e))| PrimeIdeal {
            q,
            p,
            index,
            f: g.degree().expect("factors are nonconstant"),
            g,
            e,
        })
        .collect())
}

/// Residue degree of p in `Q(lambda_q)` by pure modular arithmetic: strip
/// every factor p from 2q to get q', then return the least `f >= 1` with
/// `p^f = +-1 (mod q')`.
pub fn residue_degree_formula(q: u64, p: u64) -> Result<usize> {
    check_q(q)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut qq = 2 * q;
    while qq.is_multiple_of(p) {
        qq /= p;
    }
    if qq <= 2 {
        // +1 and -1 coincide modulo 1 and 2
        return Ok(1);
    }
    let base = p % qq;
    let mut acc = base;
    let mut f = 1;
    while acc != 1 && acc != qq - 1 {
        acc = mul_mod(acc, base, qq);
        f += 1;
    }
    Ok(f)
}

/// Image of `x` in `Z[lambda_q]/ideal`: reduce coordinates mod p, then the
/// polynomial in lambda mod g.
pub fn reduce_cyclo(x: &CycloInt, ideal: &PrimeIdeal, field: &Arc<ResidueField>) -> Result<FqElem> {
    if x.q != ideal.q {
        return Err(Error::MismatchedQ {
            ideal_q: ideal.q,
            elem_q: x.q,
        });
    }
    if field.modulus() != &ideal.g {
        return Err(Error::FieldMismatch);
    }
    let p = BigInt::from(ideal.p);
    let coeffs: Vec<u64> = x
        .coeffs
        .iter()
        .map(|c| u64::try_from(c.mod_floor(&p)).expect("residue fits in u64"))
        .collect();
    Ok(FqElem::from_poly(field, &ModPoly::new(ideal.p, coeffs)))
}

pub fn ideal_contains(ideal: &PrimeIdeal, x: &CycloInt) -> Result<bool> {
    Ok(reduce_cyclo(x, ideal, &ideal.residue_field())?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::primes_up_to;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec())
    }

    #[test]
    fn ideals_above_examples() {
        let i = primes_above(5, 11).unwrap();
        assert_eq!(i.len(), 2);
        assert_eq!((i[0].g.clone(), i[0].e, i[0].f), (mp(11, &[3, 1]), 1, 1));
        assert_eq!((i[1].g.clone(), i[1].e, i[1].f), (mp(11, &[7, 1]), 1, 1));

        let i = primes_above(5, 3).unwrap();
        assert_eq!(i.len(), 1);
        assert_eq!((i[0].g.clone(), i[0].e, i[0].f), (mp(3, &[2, 2, 1]), 1, 2));

        let i = primes_above(9, 3).unwrap();
        assert_eq!(i.len(), 1);
        assert_eq!((i[0].g.clone(), i[0].e, i[0].f), (mp(3, &[2, 1]), 3, 1));

        assert!(matches!(primes_above(4, 3), Err(Error::InvalidQ(4))));
        assert!(matches!(primes_above(5, 1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn residue_degree_examples() {
        assert_eq!(residue_degree_formula(5, 2).unwrap(), 2);
        assert_eq!(residue_degree_formula(5, 3).unwrap(), 2);
        assert_eq!(residue_degree_formula(9, 3).unwrap(), 1);
        assert_eq!(residue_degree_formula(7, 3).unwrap(), 3);
    }

    #[test]
    fn formula_matches_factorization() {
        for q in (3..=31u64).step_by(2) {
            let d = lambda_minpoly(q).unwrap().degree().unwrap();
            for p in primes_up_to(31) {
                let ideals = primes_above(q, p).unwrap();
                let f = residue_degree_formula(q, p).unwrap();
                assert!(ideals.iter().all(|i| i.f == f), "q = {q}, p = {p}");
                assert_eq!(ideals.iter().map(|i| i.e * i.f).sum::<usize>(), d);
            }
        }
    }

    #[test]
    fn generators_are_unimodular() {
        for q in (3..=21u64).step_by(2) {
            let t = TriangleParams::new(q).unwrap();
            for g in t.generators() {
                assert_eq!(t.det(g), t.integer(1));
            }
            assert_eq!(t.mu(), &t.lambda().add(&t.integer(2)));
        }
    }

    #[test]
    fn reduction_examples() {
        let t9 = TriangleParams::new(9).unwrap();
        let ideal = &primes_above(9, 3).unwrap()[0];
        let field = ideal.residue_field();
        let lam = reduce_cyclo(t9.lambda(), ideal, &field).unwrap();
        assert_eq!(lam, FqElem::one(&field));
        let mu = reduce_cyclo(t9.mu(), ideal, &field).unwrap();
        assert!(mu.is_zero());
        assert!(reduce_cyclo(&t9.integer(0), ideal, &field)
            .unwrap()
            .is_zero());

        let t5 = TriangleParams::new(5).unwrap();
        assert!(matches!(
            reduce_cyclo(t5.mu(), ideal, &field),
            Err(Error::MismatchedQ {
                ideal_q: 9,
                elem_q: 5
            })
        ));
    }

    #[test]
    fn membership_examples() {
        let t9 = TriangleParams::new(9).unwrap();
        let ideal9 = &primes_above(9, 3).unwrap()[0];
        assert!(ideal_contains(ideal9, t9.mu()).unwrap());
        assert!(ideal_contains(ideal9, &t9.integer(0)).unwrap());

        let t5 = TriangleParams::new(5).unwrap();
        for ideal in primes_above(5, 11).unwrap() {
            assert!(!ideal_contains(&ideal, t5.mu()).unwrap());
            assert!(ideal_contains(&ideal, &t5.integer(0)).unwrap());
        }
    }

    #[test]
    fn mu_avoids_primes_away_from_q() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let t = TriangleParams::new(q).unwrap();
            for p in primes_up_to(31).into_iter().filter(|&p| p != q) {
                for ideal in primes_above(q, p).unwrap() {
                    assert!(!ideal_contains(&ideal, t.mu()).unwrap(), "q={q} p={p}");
                }
            }
        }
    }
}
