use num_bigint::BigUint;

use super::{reduce_generators_in, CoverReport};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::residue::{ideal_contains, primes_above, PrimeIdeal, TriangleParams};
use crate::sl2::{closure, identify_group, psl2_order, ClosureMode, GroupId, DEFAULT_CLOSURE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Recompute the image by brute-force closure and require it to match
    /// the predicted group.
    pub verify: bool,
    /// Element bound for every closure run.
    pub cap: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            verify: false,
            cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

fn mismatch(ideal: &PrimeIdeal, detail: String) -> Error {
    Error::OracleMismatch {
        q: ideal.q,
        p: ideal.p,
        ideal: ideal.index,
        detail,
    }
}

/// Galois group and degree of `X(ideal) -> X(1)`.
///
/// Cases, in order:
/// 1. `mu_q` in the ideal: the reduced parabolic generator is trivial, no
///    prediction applies; the group is whatever the closure gives.
/// 2. `p = 2`: dihedral of order `2s`, s odd dividing q, with `s = q` for
///    prime q. s is read off the closure.
/// 3. `p = 3` and `mu_q^2 - 2` in the ideal: `PSL2(F5)`, index 60.
/// 4. Otherwise `PSL2` of the residue field, index
///    `(p^m + 1) p^m (p^m - 1) / 2`.
///
/// With `opts.verify` the PSL2 closure of the reduced generators must
/// carry the predicted label and order; a disagreement is an
/// [`Error::OracleMismatch`].
pub fn classify_cover(
    params: &TriangleParams,
    ideal: &PrimeIdeal,
    opts: ClassifyOptions,
) -> Result<CoverReport> {
    let (q, p) = (params.q(), ideal.p);
    let field = ideal.residue_field();
    let gens = reduce_generators_in(params, ideal, &field)?;
    let hint = (&gens[0], &gens[2]);
    let mut report = CoverReport {
        q,
        p,
        ideal: ideal.clone(),
        residue: field.clone(),
        galois: GroupId::Unknown { order: 0 },
        index_mu_bar: BigUint::from(0u32),
        degenerate: false,
        genus_full: None,
        genus_borel: None,
        ramification: Vec::new(),
        oracle_checked: false,
        notes: Vec::new(),
    };

    if ideal_contains(ideal, params.mu())? {
        let group = closure(&gens, ClosureMode::Psl2, opts.cap)?;
        report.degenerate = true;
        report.galois = identify_group(&group, Some(hint));
        report.index_mu_bar = BigUint::from(group.len());
        report.notes.push("degenerate: mu_q reduces to 0".into());
        return Ok(report);
    }

    if p == 2 {
        // PSL2 = SL2 in characteristic 2
        let group = closure(&gens, ClosureMode::Psl2, opts.cap)?;
        let order = group.len() as u64;
        if !order.is_multiple_of(2) || (order / 2) % 2 != 1 || q % (order / 2) != 0 {
            return Err(mismatch(
                ideal,
                format!("image has order {order}, not 2s with s odd dividing q"),
            ));
        }
        let s = order / 2;
        if is_prime(q) && s != q {
            return Err(mismatch(ideal, format!("s = {s} but q = {q} is prime")));
        }
        let predicted = GroupId::Dihedral { s };
        if opts.verify {
            let found = identify_group(&group, Some(hint));
            if found != predicted {
                return Err(mismatch(
                    ideal,
                    format!("expected {predicted}, closure is {found}"),
                ));
            }
            report.oracle_checked = true;
        }
        report.galois = predicted;
        report.index_mu_bar = BigUint::from(order);
        return Ok(report);
    }

    let mu_sq_minus_two = params.mul(params.mu(), params.mu()).sub(&params.integer(2));
    let predicted = if p == 3 && ideal_contains(ideal, &mu_sq_minus_two)? {
        GroupId::Psl2F5
    } else {
        GroupId::Psl2 {
            p,
            m: field.degree(),
        }
    };
    let index = match predicted {
        GroupId::Psl2F5 => BigUint::from(60u32),
        _ => psl2_order(p, field.degree()),
    };

    if opts.verify {
        let group = closure(&gens, ClosureMode::Psl2, opts.cap)?;
        let found = identify_group(&group, Some(hint));
        if found != predicted || BigUint::from(group.len()) != index {
            return Err(mismatch(
                ideal,
                format!(
                    "expected {predicted} of order {index}, closure is {found} of order {}",
                    group.len()
                ),
            ));
        }
        report.oracle_checked = true;
    }
    report.galois = predicted;
    report.index_mu_bar = index;
    Ok(report)
}

/// Ideals above 3 of `Z[lambda_q]`, q odd up to `max_q`, that contain
/// `mu_q^2 - 2` (the exceptional `PSL2(F5)` case).
pub fn exceptional_witnesses(max_q: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for q in (3..=max_q).step_by(2) {
        let params = TriangleParams::new(q)?;
        let target = params.mul(params.mu(), params.mu()).sub(&params.integer(2));
        for ideal in primes_above(q, 3)? {
            if ideal_contains(&ideal, &target)? {
                out.push(ideal);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verified(q: u64, p: u64) -> Vec<CoverReport> {
        let params = TriangleParams::new(q).unwrap();
        let opts = ClassifyOptions {
            verify: true,
            ..Default::default()
        };
        primes_above(q, p)
            .unwrap()
            .iter()
            .map(|i| classify_cover(&params, i, opts).unwrap())
            .collect()
    }

    #[test]
    fn generic_case_q5_p3() {
        let r = &verified(5, 3)[0];
        assert_eq!(r.galois, GroupId::Psl2 { p: 3, m: 2 });
        assert_eq!(r.index_mu_bar, BigUint::from(360u32));
        assert!(r.oracle_checked && !r.degenerate);
    }

    #[test]
    fn dihedral_cases() {
        let r = &verified(5, 2)[0];
        assert_eq!(r.galois, GroupId::Dihedral { s: 5 });
        assert_eq!(r.index_mu_bar, BigUint::from(10u32));
        let r = &verified(3, 2)[0];
        assert_eq!(r.galois, GroupId::Dihedral { s: 3 });
        assert_eq!(r.index_mu_bar, BigUint::from(6u32));
    }

    #[test]
    fn dihedral_for_composite_q_divides_q() {
        for q in [9u64, 15] {
            for r in verified(q, 2) {
                let GroupId::Dihedral { s } = r.galois else {
                    panic!("q = {q}: {}", r.galois);
                };
                assert_eq!(s % 2, 1);
                assert_eq!(q % s, 0);
            }
        }
    }

    #[test]
    fn degenerate_case() {
        let params = TriangleParams::new(9).unwrap();
        let ideal = &primes_above(9, 3).unwrap()[0];
        let r = classify_cover(&params, ideal, ClassifyOptions::default()).unwrap();
        assert!(r.degenerate);
        assert!(!r.oracle_checked);
        assert_eq!(r.index_mu_bar, r.galois.order());
    }

    #[test]
    fn verification_respects_cap() {
        let params = TriangleParams::new(5).unwrap();
        let ideal = &primes_above(5, 3).unwrap()[0];
        let opts = ClassifyOptions {
            verify: true,
            cap: 100,
        };
        assert!(matches!(
            classify_cover(&params, ideal, opts),
            Err(Error::CapExceeded { .. })
        ));
        // unverified classification never builds the closure for p odd
        let opts = ClassifyOptions {
            verify: false,
            cap: 100,
        };
        assert!(classify_cover(&params, ideal, opts).is_ok());
    }

    #[test]
    fn no_exceptional_witness_up_to_25() {
        assert!(exceptional_witnesses(25).unwrap().is_empty());
    }
}
