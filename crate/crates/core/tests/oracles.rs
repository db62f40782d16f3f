use num_bigint::BigUint;
use num_traits::ToPrimitive;

use tricover_core::covers::{
    classify_cover, genus_borel, genus_full, monodromy_borel, reduce_generators, rh_genus_oracle,
    rh_genus_runs, ClassifyOptions,
};
use tricover_core::numtheory::{is_prime, primes_up_to};
use tricover_core::residue::{ideal_contains, primes_above, PrimeIdeal, TriangleParams};
use tricover_core::sl2::{is_transitive_on_p1, GroupId, DEFAULT_CLOSURE_CAP};

fn instances(max_q: u64, max_p: u64) -> Vec<(TriangleParams, PrimeIdeal)> {
    let mut out = Vec::new();
    for q in (3..=max_q).step_by(2) {
        for p in primes_up_to(max_p) {
            for ideal in primes_above(q, p).unwrap() {
                out.push((TriangleParams::new(q).unwrap(), ideal));
            }
        }
    }
    out
}

fn predicted_fits(report_order: &BigUint) -> bool {
    *report_order <= BigUint::from(DEFAULT_CLOSURE_CAP)
}

#[test]
fn classification_agrees_with_closure() {
    let opts = ClassifyOptions {
        verify: true,
        cap: DEFAULT_CLOSURE_CAP,
    };
    let mut checked = 0;
    for (params, ideal) in instances(15, 13) {
        let plain = classify_cover(&params, &ideal, ClassifyOptions::default()).unwrap();
        if plain.degenerate || !predicted_fits(&plain.index_mu_bar) {
            continue;
        }
        let r = classify_cover(&params, &ideal, opts)
            .unwrap_or_else(|e| panic!("q={} ideal={ideal}: {e}", params.q()));
        assert!(r.oracle_checked);
        assert_eq!(r.galois.order(), r.index_mu_bar);
        checked += 1;
    }
    assert!(checked >= 25, "only {checked} instances checked");
}

#[test]
fn degenerate_exactly_when_mu_in_ideal() {
    for (params, ideal) in instances(21, 13) {
        let r = classify_cover(&params, &ideal, ClassifyOptions::default()).unwrap();
        let contains = ideal_contains(&ideal, params.mu()).unwrap();
        assert_eq!(r.degenerate, contains, "q={} ideal={ideal}", params.q());
        if is_prime(params.q()) && ideal.p != params.q() {
            assert!(!contains);
        }
    }
}

#[test]
fn reduced_generators_act_transitively() {
    for (params, ideal) in instances(13, 13) {
        let r = classify_cover(&params, &ideal, ClassifyOptions::default()).unwrap();
        if !matches!(r.galois, GroupId::Psl2 { .. }) {
            continue;
        }
        let Some(n) = r.residue.order_u64().filter(|&n| n <= 1 << 16) else {
            continue;
        };
        let gens = reduce_generators(&params, &ideal).unwrap();
        assert!(
            is_transitive_on_p1(&gens, n + 1).unwrap(),
            "q={} ideal={ideal}",
            params.q()
        );
    }
}

#[test]
fn full_genus_matches_branch_data() {
    for q in [3u64, 5, 7, 11, 13] {
        let params = TriangleParams::new(q).unwrap();
        for p in primes_up_to(31).into_iter().filter(|&p| p != q) {
            for ideal in primes_above(q, p).unwrap() {
                let g = genus_full(&params, &ideal).unwrap();
                let mu = classify_cover(&params, &ideal, ClassifyOptions::default())
                    .unwrap()
                    .index_mu_bar;
                let fibers: Vec<_> = g.ramification.iter().map(|r| r.fiber.clone()).collect();
                assert_eq!(rh_genus_runs(&mu, &fibers).unwrap(), g.genus);
                for r in &g.ramification {
                    assert_eq!(r.degree(), mu);
                }
            }
        }
    }
}

#[test]
fn borel_genus_matches_measured_monodromy() {
    let mut checked = 0;
    for q in [5u64, 7, 11, 13] {
        let params = TriangleParams::new(q).unwrap();
        for p in [3u64, 5, 7, 11, 13].into_iter().filter(|&p| p != q) {
            for ideal in primes_above(q, p).unwrap() {
                let pf = BigUint::from(p).pow(ideal.f as u32);
                let Some(pf) = pf.to_u64().filter(|&n| n <= 1 << 20) else {
                    continue;
                };
                let m = monodromy_borel(&params, &ideal).unwrap();
                assert_eq!(m.infinity, m.one);
                let oracle = rh_genus_oracle(pf + 1, &m.fibers()).unwrap();
                let g = genus_borel(&params, &ideal).unwrap();
                assert_eq!(g, BigUint::from(oracle), "q={q} ideal={ideal}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 12);
}
