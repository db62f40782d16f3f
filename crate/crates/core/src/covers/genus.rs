//! Genera of `X(p)` and `X0(p)`, and the Riemann-Hurwitz oracle both are
//! checked against.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::classify::{classify_cover, ClassifyOptions};
use super::{reduce_generators, BasePoint, CoverReport, RamificationData};
use crate::error::{Error, Precondition, Result};
use crate::numtheory::is_prime;
use crate::residue::{PrimeIdeal, TriangleParams};
use crate::sl2::{p1_action_cycles, CycleType, GroupId};

/// Genus of a cover of the sphere from its branch data:
/// `2g - 2 = -2 * degree + sum over fibers of sum (e - 1)`.
///
/// Each fiber is a list of `(count, e)` and must account for exactly
/// `degree` sheets.
pub fn rh_genus_runs(degree: &BigUint, fibers: &[Vec<(BigUint, u64)>]) -> Result<BigUint> {
    let mut excess = BigInt::zero();
    for fiber in fibers {
        let sum: BigUint = fiber.iter().map(|(c, e)| c * *e).sum();
        if &sum != degree {
            return Err(Error::FiberSum {
                sum: sum.to_string(),
                degree: degree.to_string(),
            });
        }
        for (c, e) in fiber {
            excess += BigInt::from(c.clone()) * BigInt::from(e.saturating_sub(1));
        }
    }
    let two_g: BigInt = excess - BigInt::from(degree.clone()) * 2u32 + 2u32;
    if two_g.is_negative() || two_g.is_odd() {
        return Err(Error::NonIntegralGenus(format!("2g = {two_g}")));
    }
    Ok((two_g / 2u32).to_biguint().expect("nonnegative"))
}

/// [`rh_genus_runs`] on measured cycle types.
pub fn rh_genus_oracle(degree: u64, fibers: &[CycleType]) -> Result<u64> {
    let runs: Vec<Vec<(BigUint, u64)>> = fibers
        .iter()
        .map(|c| {
            c.runs()
                .into_iter()
                .map(|(n, l)| (BigUint::from(n), l))
                .collect()
        })
        .collect();
    let g = rh_genus_runs(&BigUint::from(degree), &runs)?;
    Ok(g.to_u64().expect("genus bounded by degree"))
}

/// Genus of the full congruence cover together with its branch data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullGenus {
    pub genus: BigUint,
    pub ramification: Vec<RamificationData>,
    /// p = 2 lies outside the range the closed form was derived for; the
    /// value is still cross-checked against the branch data.
    pub p2_extrapolated: bool,
}

fn ratio_exact(n: &BigUint, d: u64) -> Option<BigUint> {
    let (quot, rem) = n.div_rem(&BigUint::from(d));
    rem.is_zero().then_some(quot)
}

pub(crate) fn check_full_preconditions(q: u64, ideal: &PrimeIdeal) -> Result<()> {
    if !is_prime(q) {
        return Err(Precondition::QComposite { q }.into());
    }
    if ideal.p == q {
        return Err(Precondition::PEqualsQ { q }.into());
    }
    if ideal.is_ramified() {
        return Err(Precondition::Ramified {
            q,
            p: ideal.p,
            e: ideal.e,
        }
        .into());
    }
    Ok(())
}

/// `1 + (mu/2)(1 - 2/p - 1/q)` with `mu` the index from `report`, evaluated
/// exactly and cross-checked against Riemann-Hurwitz on the fibers
/// `mu/p` points of index p over each cusp and `mu/q` points of index q
/// over `z0`.
pub(crate) fn full_genus_from_report(report: &CoverReport) -> Result<FullGenus> {
    let (q, p) = (report.q, report.p);
    check_full_preconditions(q, &report.ideal)?;
    if report.degenerate {
        return Err(Precondition::Degenerate { q, p }.into());
    }
    let mu = &report.index_mu_bar;
    let r = |n: u64| BigRational::from_integer(BigInt::from(n));
    let value = BigRational::one()
        + BigRational::from_integer(BigInt::from(mu.clone())) / r(2)
            * (BigRational::one() - r(2) / r(p) - BigRational::one() / r(q));
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegralGenus(value.to_string()));
    }
    let genus = value.to_integer().to_biguint().expect("nonnegative");

    let over_cusp = ratio_exact(mu, p)
        .ok_or_else(|| Error::NonIntegralGenus(format!("index {mu} not divisible by p = {p}")))?;
    let over_z0 = ratio_exact(mu, q)
        .ok_or_else(|| Error::NonIntegralGenus(format!("index {mu} not divisible by q = {q}")))?;
    let ramification = vec![
        RamificationData {
            base_point: BasePoint::CuspOne,
            fiber: vec![(over_cusp.clone(), p)],
        },
        RamificationData {
            base_point: BasePoint::CuspInfinity,
            fiber: vec![(over_cusp, p)],
        },
        RamificationData {
            base_point: BasePoint::EllipticZ0,
            fiber: vec![(over_z0, q)],
        },
    ];
    let fibers: Vec<_> = ramification.iter().map(|r| r.fiber.clone()).collect();
    let rh = rh_genus_runs(mu, &fibers)?;
    if rh != genus {
        return Err(Error::OracleMismatch {
            q,
            p,
            ideal: report.ideal.index,
            detail: format!("closed form gives genus {genus}, branch data gives {rh}"),
        });
    }
    Ok(FullGenus {
        genus,
        ramification,
        p2_extrapolated: p == 2,
    })
}

/// Genus of `X(ideal)`. Requires q prime, `p != q` and an unramified,
/// non-degenerate ideal.
pub fn genus_full(params: &TriangleParams, ideal: &PrimeIdeal) -> Result<FullGenus> {
    check_full_preconditions(params.q(), ideal)?;
    let report = classify_cover(params, ideal, ClassifyOptions::default())?;
    full_genus_from_report(&report)
}

/// Cycle types of the reduced parabolic and elliptic generators on
/// `P^1(F_(p^f))`: the monodromy of `X0(p) -> X(1)` over each branch point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelMonodromy {
    pub infinity: CycleType,
    pub one: CycleType,
    pub z0: CycleType,
}

impl BorelMonodromy {
    pub fn fibers(&self) -> [CycleType; 3] {
        [self.infinity.clone(), self.one.clone(), self.z0.clone()]
    }
}

pub(crate) fn check_borel_preconditions(q: u64, p: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Precondition::QComposite { q }.into());
    }
    if p == 2 {
        return Err(Precondition::PNotOdd { p }.into());
    }
    if p == q {
        return Err(Precondition::PEqualsQ { q }.into());
    }
    Ok(())
}

pub(crate) fn require_psl2(report: &CoverReport) -> Result<()> {
    match report.galois {
        GroupId::Psl2 { .. } if !report.degenerate => Ok(()),
        ref other => Err(Precondition::NotPsl2 {
            label: other.to_string(),
        }
        .into()),
    }
}

/// Cycle types over infinity (`g3`), 1 (`g2`) and `z0` (`g1`), checked
/// against their expected shapes: one fixed point plus `p^(f-1)` p-cycles
/// over each cusp, and over `z0` only q-cycles plus `m` fixed points with
/// `m = 0` if `p^f = -1 (mod q)` and `m = 2` if `p^f = 1 (mod q)`.
pub fn monodromy_borel(params: &TriangleParams, ideal: &PrimeIdeal) -> Result<BorelMonodromy> {
    let (q, p) = (params.q(), ideal.p);
    check_borel_preconditions(q, p)?;
    let report = classify_cover(params, ideal, ClassifyOptions::default())?;
    require_psl2(&report)?;

    let [g1, g2, g3] = reduce_generators(params, ideal)?;
    let mono = BorelMonodromy {
        infinity: p1_action_cycles(&g3)?,
        one: p1_action_cycles(&g2)?,
        z0: p1_action_cycles(&g1)?,
    };

    let bad = |detail: String| Error::OracleMismatch {
        q,
        p,
        ideal: ideal.index,
        detail,
    };
    let f = ideal.f as u32;
    let pf = p.pow(f);
    let cusp_shape = CycleType::new(
        std::iter::once(1)
            .chain(std::iter::repeat_n(p, p.pow(f - 1) as usize))
            .collect(),
    );
    if mono.infinity != cusp_shape {
        return Err(bad(format!(
            "over infinity: {} != {}",
            mono.infinity, cusp_shape
        )));
    }
    if mono.one != cusp_shape {
        return Err(bad(format!("over 1: {} != {}", mono.one, cusp_shape)));
    }
    let m = fixed_points_over_z0(pf % q, q)
        .ok_or_else(|| bad(format!("p^f = {pf} is not +-1 mod q")))?;
    let z0_ok =
        mono.z0.fixed_points() as u64 == m && mono.z0.lengths().iter().all(|&l| l == 1 || l == q);
    if !z0_ok {
        return Err(bad(format!(
            "over z0: {} with expected {m} fixed points",
            mono.z0
        )));
    }
    Ok(mono)
}

fn fixed_points_over_z0(residue: u64, q: u64) -> Option<u64> {
    if residue == 1 {
        Some(2)
    } else if residue == q - 1 {
        Some(0)
    } else {
        None
    }
}

/// Genus of `X0(ideal)`: `(q - 1)/2 * n - p^(f-1)` where
/// `p^f + 1 = q n + m`, `m in {0, 2}` from `p^f mod q`.
///
/// Requires q prime at least 5, p an odd prime other than q, and the full
/// cover's group to be `PSL2` of the residue field.
pub fn genus_borel(params: &TriangleParams, ideal: &PrimeIdeal) -> Result<BigUint> {
    let q = params.q();
    if q < 5 {
        crate::numtheory::check_q(q)?;
        return Err(Precondition::QTooSmall { q, min: 5 }.into());
    }
    check_borel_preconditions(q, ideal.p)?;
    let report = classify_cover(params, ideal, ClassifyOptions::default())?;
    require_psl2(&report)?;
    borel_formula(q, ideal)
}

pub(crate) fn borel_formula(q: u64, ideal: &PrimeIdeal) -> Result<BigUint> {
    let p = ideal.p;
    let f = ideal.f as u32;
    let pf = BigUint::from(p).pow(f);
    let residue = (&pf % q).to_u64().expect("less than q");
    let m = fixed_points_over_z0(residue, q).ok_or_else(|| Error::OracleMismatch {
        q,
        p,
        ideal: ideal.index,
        detail: format!("p^f = {residue} mod q is not +-1"),
    })?;
    let (n, rem) = (&pf + 1u32 - m).div_rem(&BigUint::from(q));
    if !rem.is_zero() {
        return Err(Error::NonIntegralGenus(format!("n = (p^f + 1 - {m})/{q}")));
    }
    let g = BigInt::from(n * ((q - 1) / 2)) - BigInt::from(BigUint::from(p).pow(f - 1));
    g.to_biguint()
        .ok_or_else(|| Error::NonIntegralGenus(format!("negative genus {g}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::primes_above;

    fn ideal(q: u64, p: u64) -> (TriangleParams, PrimeIdeal) {
        (
            TriangleParams::new(q).unwrap(),
            primes_above(q, p).unwrap().remove(0),
        )
    }

    fn ct(v: &[u64]) -> CycleType {
        CycleType::new(v.to_vec())
    }

    #[test]
    fn rh_oracle_examples() {
        let g = rh_genus_oracle(12, &[ct(&[11, 1]), ct(&[11, 1]), ct(&[5, 5, 1, 1])]).unwrap();
        assert_eq!(g, 3);
        let g = rh_genus_oracle(10, &[ct(&[3, 3, 3, 1]), ct(&[3, 3, 3, 1]), ct(&[5, 5])]).unwrap();
        assert_eq!(g, 1);
        assert_eq!(
            rh_genus_oracle(1, &[ct(&[1]), ct(&[1]), ct(&[1])]).unwrap(),
            0
        );
        assert!(matches!(
            rh_genus_oracle(12, &[ct(&[11])]),
            Err(Error::FiberSum { .. })
        ));
        // a degree-2 cover branched at one point only is impossible
        assert!(matches!(
            rh_genus_oracle(2, &[ct(&[2]), ct(&[1, 1])]),
            Err(Error::NonIntegralGenus(_))
        ));
    }

    #[test]
    fn full_genus_examples() {
        let (t, i) = ideal(5, 3);
        assert_eq!(genus_full(&t, &i).unwrap().genus, BigUint::from(25u32));
        let (t, i) = ideal(5, 11);
        assert_eq!(genus_full(&t, &i).unwrap().genus, BigUint::from(205u32));
        let (t, i) = ideal(5, 2);
        let g = genus_full(&t, &i).unwrap();
        assert_eq!(g.genus, BigUint::from(0u32));
        assert!(g.p2_extrapolated);
        assert_eq!(g.ramification[2].fiber, vec![(BigUint::from(2u32), 5)]);
    }

    #[test]
    fn full_genus_preconditions() {
        let (t, i) = ideal(9, 2);
        assert!(matches!(
            genus_full(&t, &i),
            Err(Error::Precondition(Precondition::QComposite { q: 9 }))
        ));
        let (t, i) = ideal(5, 5);
        assert!(matches!(
            genus_full(&t, &i),
            Err(Error::Precondition(Precondition::PEqualsQ { q: 5 }))
        ));
    }

    #[test]
    fn borel_genus_examples() {
        let (t, i) = ideal(5, 3);
        assert_eq!(genus_borel(&t, &i).unwrap(), BigUint::from(1u32));
        let (t, i) = ideal(5, 11);
        assert_eq!(genus_borel(&t, &i).unwrap(), BigUint::from(3u32));
        // f = 3, 27 = -1 mod 7, n = 4: 3 * 4 - 9
        let (t, i) = ideal(7, 3);
        assert_eq!(genus_borel(&t, &i).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn borel_preconditions() {
        let (t, i) = ideal(3, 5);
        assert!(matches!(
            genus_borel(&t, &i),
            Err(Error::Precondition(Precondition::QTooSmall { q: 3, .. }))
        ));
        let (t, i) = ideal(5, 2);
        assert!(matches!(
            genus_borel(&t, &i),
            Err(Error::Precondition(Precondition::PNotOdd { p: 2 }))
        ));
        let (t, i) = ideal(15, 7);
        assert!(matches!(
            monodromy_borel(&t, &i),
            Err(Error::Precondition(Precondition::QComposite { q: 15 }))
        ));
    }

    #[test]
    fn monodromy_examples() {
        let (t, i) = ideal(5, 3);
        let m = monodromy_borel(&t, &i).unwrap();
        assert_eq!(m.infinity, ct(&[3, 3, 3, 1]));
        assert_eq!(m.one, ct(&[3, 3, 3, 1]));
        assert_eq!(m.z0, ct(&[5, 5]));
        let (t, i) = ideal(5, 11);
        let m = monodromy_borel(&t, &i).unwrap();
        assert_eq!(m.infinity, ct(&[11, 1]));
        assert_eq!(m.one, ct(&[11, 1]));
        assert_eq!(m.z0, ct(&[5, 5, 1, 1]));
    }

    #[test]
    fn q7_p3_against_oracle() {
        let (t, i) = ideal(7, 3);
        let m = monodromy_borel(&t, &i).unwrap();
        assert_eq!(rh_genus_oracle(28, &m.fibers()).unwrap(), 3);
    }
}
