//! Congruence covers `X(p) -> X(1)` and `X0(p) -> X(1)`: reduction of the
//! generators, the Galois group of the full cover, ramification and genera.

mod analyze;
mod classify;
mod genus;
mod two_generator;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

pub use analyze::{analyze, GenusLevel};
pub use classify::{classify_cover, exceptional_witnesses, ClassifyOptions};
pub use genus::{
    genus_borel, genus_full, monodromy_borel, rh_genus_oracle, rh_genus_runs, BorelMonodromy,
    FullGenus,
};
pub use two_generator::{generates_field, verify_two_generator_subgroup};

use crate::error::Result;
use crate::gf::ResidueField;
use crate::residue::{reduce_cyclo, CycloMat, PrimeIdeal, TriangleParams};
use crate::sl2::{GroupId, Mat2};

/// The three branch points of `X(1)`: the cusps 1 and infinity and the
/// elliptic point `z0` fixed by the order-q generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasePoint {
    CuspOne,
    CuspInfinity,
    EllipticZ0,
}

impl BasePoint {
    pub fn name(self) -> &'static str {
        match self {
            BasePoint::CuspOne => "cusp_one",
            BasePoint::CuspInfinity => "cusp_infinity",
            BasePoint::EllipticZ0 => "elliptic_z0",
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fiber over a branch point: `count` points of ramification index `e`
/// for each entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    pub base_point: BasePoint,
    pub fiber: Vec<(BigUint, u64)>,
}

impl RamificationData {
    /// `sum count * e`, which must equal the covering degree.
    pub fn degree(&self) -> BigUint {
        self.fiber.iter().map(|(c, e)| c * *e).sum()
    }
}

/// Everything computed for one `(q, ideal)` pair.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub q: u64,
    pub p: u64,
    pub ideal: PrimeIdeal,
    pub residue: Arc<ResidueField>,
    pub galois: GroupId,
    /// Index of the image of the congruence subgroup in the projective
    /// triangle group: the degree of `X(p) -> X(1)`.
    pub index_mu_bar: BigUint,
    pub degenerate: bool,
    pub genus_full: Option<BigUint>,
    pub genus_borel: Option<BigUint>,
    pub ramification: Vec<RamificationData>,
    pub oracle_checked: bool,
    /// Free-form markers, e.g. `p2-extrapolated` or why a genus is absent.
    pub notes: Vec<String>,
}

impl CoverReport {
    /// `p^m`
    pub fn residue_order(&self) -> BigUint {
        self.residue.order()
    }
}

fn reduce_mat(m: &CycloMat, ideal: &PrimeIdeal, field: &Arc<ResidueField>) -> Result<Mat2> {
    let [a, b, c, d] = &m.entries;
    Mat2::new(
        reduce_cyclo(a, ideal, field)?,
        reduce_cyclo(b, ideal, field)?,
        reduce_cyclo(c, ideal, field)?,
        reduce_cyclo(d, ideal, field)?,
    )
}

/// Entrywise reduction of the three generators modulo `ideal`, over the
/// field `field` (which must be the residue field of `ideal`).
pub fn reduce_generators_in(
    params: &TriangleParams,
    ideal: &PrimeIdeal,
    field: &Arc<ResidueField>,
) -> Result<[Mat2; 3]> {
    let [g1, g2, g3] = params.generators();
    Ok([
        reduce_mat(g1, ideal, field)?,
        reduce_mat(g2, ideal, field)?,
        reduce_mat(g3, ideal, field)?,
    ])
}

/// Images of `g1, g2, g3` in `SL2(Z[lambda_q]/ideal)`.
pub fn reduce_generators(params: &TriangleParams, ideal: &PrimeIdeal) -> Result<[Mat2; 3]> {
    reduce_generators_in(params, ideal, &ideal.residue_field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::residue::primes_above;

    #[test]
    fn reduced_generators_over_f2() {
        let t = TriangleParams::new(3).unwrap();
        let ideal = &primes_above(3, 2).unwrap()[0];
        let [g1, _, g3] = reduce_generators(&t, ideal).unwrap();
        let f = g1.field().clone();
        assert_eq!(g1, Mat2::from_ints(&f, [1, 1, 1, 0]).unwrap());
        assert_eq!(g3, Mat2::from_ints(&f, [1, 1, 0, 1]).unwrap());
    }

    #[test]
    fn degenerate_parabolic_reduces_to_identity() {
        let t = TriangleParams::new(9).unwrap();
        let ideal = &primes_above(9, 3).unwrap()[0];
        let [_, _, g3] = reduce_generators(&t, ideal).unwrap();
        assert!(g3.is_identity());
    }

    #[test]
    fn reductions_are_unimodular() {
        for q in (3..=21u64).step_by(2) {
            let t = TriangleParams::new(q).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13] {
                for ideal in primes_above(q, p).unwrap() {
                    for g in reduce_generators(&t, &ideal).unwrap() {
                        assert!(g.det().is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_q_is_rejected() {
        let t = TriangleParams::new(5).unwrap();
        let ideal = &primes_above(7, 2).unwrap()[0];
        assert!(matches!(
            reduce_generators(&t, ideal),
            Err(Error::MismatchedQ { .. })
        ));
    }
}
