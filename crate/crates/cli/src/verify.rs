//! The `verify` command: every closed-form result re-derived by an
//! independent computation over a range of (q, p).

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use tricover_core::covers::{
    analyze, classify_cover, genus_borel, monodromy_borel, rh_genus_oracle, rh_genus_runs,
    verify_two_generator_subgroup, ClassifyOptions, GenusLevel,
};
use tricover_core::gf::{
    enumerate_field, solve_square, FqElem, ResidueField, DEFAULT_ENUMERATION_CAP,
};
use tricover_core::numtheory::{is_prime, primes_up_to};
use tricover_core::polyarith::{norm_via_resultant, ModPoly};
use tricover_core::residue::{
    ideal_contains, primes_above, residue_degree_formula, PrimeIdeal, TriangleParams,
};
use tricover_core::sl2::{psl2_order, GroupId, DEFAULT_CLOSURE_CAP};
use tricover_core::{Error, Result};

/// Instances whose predicted closure is larger than this are skipped,
/// whatever cap the closures themselves run under.
pub const DESK_LIMIT: u64 = DEFAULT_CLOSURE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_q: u64,
    pub max_p: u64,
    pub cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_q: 15,
            max_p: 13,
            cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub context: String,
    pub error: Error,
}

#[derive(Debug)]
pub struct FamilyVerdict {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failure: Option<Failure>,
}

impl FamilyVerdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "{}: ok ({} checked, {} skipped)",
                self.name, self.checked, self.skipped
            ),
            Some(fail) => write!(
                f,
                "{}: FAILED at {}: {} ({} checked before)",
                self.name, fail.context, fail.error, self.checked
            ),
        }
    }
}

#[derive(Debug)]
pub struct VerifySummary {
    pub families: Vec<FamilyVerdict>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyVerdict::passed)
    }

    pub fn first_error(&self) -> Option<&Error> {
        self.families
            .iter()
            .find_map(|v| v.failure.as_ref().map(|f| &f.error))
    }
}

enum Outcome {
    Checked,
    Skipped,
}

/// Folds per-instance results, in order, into a verdict that stops at the
/// first failure.
fn tally(name: &'static str, results: Vec<(String, Result<Outcome>)>) -> FamilyVerdict {
    let mut v = FamilyVerdict {
        name,
        checked: 0,
        skipped: 0,
        failure: None,
    };
    for (context, r) in results {
        match r {
            Ok(Outcome::Checked) => v.checked += 1,
            Ok(Outcome::Skipped) => v.skipped += 1,
            Err(error) => {
                v.failure = Some(Failure { context, error });
                break;
            }
        }
    }
    v
}

fn mismatch(detail: String) -> Error {
    Error::PredictionMismatch(detail)
}

fn context(ideal: &PrimeIdeal) -> String {
    format!("q = {}, p = {}, ideal {}", ideal.q, ideal.p, ideal.index)
}

fn instances(max_q: u64, max_p: u64) -> Result<Vec<(TriangleParams, PrimeIdeal)>> {
    let mut out = Vec::new();
    for q in (3..=max_q).step_by(2) {
        let params = TriangleParams::new(q)?;
        for p in primes_up_to(max_p) {
            for ideal in primes_above(q, p)? {
                out.push((params.clone(), ideal));
            }
        }
    }
    Ok(out)
}

fn over_limit(n: &BigUint) -> bool {
    *n > BigUint::from(DESK_LIMIT)
}

fn classification_vs_closure(
    params: &TriangleParams,
    ideal: &PrimeIdeal,
    cap: u64,
) -> Result<Outcome> {
    let q = params.q();
    let degenerate = ideal_contains(ideal, params.mu())?;
    if degenerate && is_prime(q) && ideal.p != q {
        return Err(mismatch("mu_q lies in an ideal not above q".into()));
    }
    if ideal.p != 2 {
        let bound = if degenerate {
            psl2_order(ideal.p, ideal.f)
        } else {
            classify_cover(params, ideal, ClassifyOptions::default())?.index_mu_bar
        };
        if over_limit(&bound) {
            return Ok(Outcome::Skipped);
        }
    }
    let opts = ClassifyOptions { verify: true, cap };
    let r = classify_cover(params, ideal, opts)?;
    if !degenerate && !r.oracle_checked {
        return Err(mismatch("classification was not closure-checked".into()));
    }
    Ok(Outcome::Checked)
}

fn degree_formula(q: u64, p: u64) -> Result<Outcome> {
    let params = TriangleParams::new(q)?;
    let ideals = primes_above(q, p)?;
    let f = residue_degree_formula(q, p)?;
    for ideal in &ideals {
        if ideal.f != f {
            return Err(mismatch(format!(
                "ideal {} has degree {}, formula gives {f}",
                ideal.index, ideal.f
            )));
        }
    }
    let total: usize = ideals.iter().map(|i| i.e * i.f).sum();
    if total != params.degree() {
        return Err(mismatch(format!(
            "sum of e f is {total}, field degree is {}",
            params.degree()
        )));
    }
    Ok(Outcome::Checked)
}

fn monodromy_vs_rh(params: &TriangleParams, ideal: &PrimeIdeal, cap: u64) -> Result<Outcome> {
    let (q, p) = (params.q(), ideal.p);
    if q < 5 || !is_prime(q) || p == 2 || p == q {
        return Ok(Outcome::Skipped);
    }
    let r = classify_cover(params, ideal, ClassifyOptions { verify: false, cap })?;
    let pf = r.residue_order();
    // the projective line has p^f + 1 points
    let too_long = pf >= BigUint::from(DEFAULT_ENUMERATION_CAP);
    if r.degenerate || !matches!(r.galois, GroupId::Psl2 { .. }) || too_long {
        return Ok(Outcome::Skipped);
    }
    let mono = monodromy_borel(params, ideal)?;
    if mono.infinity != mono.one {
        return Err(mismatch(format!(
            "cycle types over infinity {} and over 1 {} differ",
            mono.infinity, mono.one
        )));
    }
    let degree = u64::try_from(&pf).expect("below the enumeration cap") + 1;
    let oracle = rh_genus_oracle(degree, &mono.fibers())?;
    let g = genus_borel(params, ideal)?;
    if g != BigUint::from(oracle) {
        return Err(mismatch(format!(
            "formula gives {g}, monodromy gives {oracle}"
        )));
    }
    Ok(Outcome::Checked)
}

fn full_genus_vs_rh(params: &TriangleParams, ideal: &PrimeIdeal, cap: u64) -> Result<Outcome> {
    let q = params.q();
    if !is_prime(q) || ideal.p == q || ideal.is_ramified() {
        return Ok(Outcome::Skipped);
    }
    let opts = ClassifyOptions { verify: false, cap };
    let r = analyze(params, ideal, opts, GenusLevel::Full)?;
    let Some(g) = &r.genus_full else {
        return Err(mismatch(format!("no genus: {}", r.notes.join("; "))));
    };
    let fibers: Vec<_> = r.ramification.iter().map(|rd| rd.fiber.clone()).collect();
    let rh = rh_genus_runs(&r.index_mu_bar, &fibers)?;
    if &rh != g {
        return Err(mismatch(format!(
            "formula gives {g}, branch data gives {rh}"
        )));
    }
    Ok(Outcome::Checked)
}

fn two_generator_orders(cap: u64) -> Vec<(String, Result<Outcome>)> {
    let f9 =
        ResidueField::new(ModPoly::new(3, vec![1, 0, 1])).expect("x^2 + 1 is irreducible mod 3");
    let exceptional = solve_square(&f9, &FqElem::from_int(&f9, 2))
        .ok()
        .flatten()
        .expect("2 is a square in F9");
    let generic = enumerate_field(&f9, 9)
        .expect("nine elements")
        .into_iter()
        .find(|w| w.mul(w) == w.add(&FqElem::one(&f9)))
        .expect("x^2 - x - 1 splits over F9");
    [(exceptional, 120u32), (generic, 720)]
        .into_iter()
        .map(|(z, order)| {
            let ctx = format!("F9, z = {z}");
            let r = verify_two_generator_subgroup(3, &f9, &z, cap).and_then(|g| {
                if g.order() == BigUint::from(order) {
                    Ok(Outcome::Checked)
                } else {
                    Err(mismatch(format!(
                        "{g} has order {}, expected {order}",
                        g.order()
                    )))
                }
            });
            (ctx, r)
        })
        .collect()
}

fn norm_claim(q: u64, max_p: u64) -> Result<Outcome> {
    let params = TriangleParams::new(q)?;
    let n = norm_via_resultant(params.minpoly(), &params.mu().as_poly())?;
    if n.magnitude() != &BigUint::from(q) {
        return Err(mismatch(format!("|N(mu_q)| = {}", n.magnitude())));
    }
    for p in primes_up_to(max_p).into_iter().filter(|&p| p != q) {
        for ideal in primes_above(q, p)? {
            if ideal_contains(&ideal, params.mu())? {
                return Err(mismatch(format!("mu_q lies in {ideal}")));
            }
        }
    }
    Ok(Outcome::Checked)
}

fn per_instance(
    list: &[(TriangleParams, PrimeIdeal)],
    check: impl Fn(&TriangleParams, &PrimeIdeal) -> Result<Outcome> + Sync,
) -> Vec<(String, Result<Outcome>)> {
    list.par_iter()
        .map(|(params, ideal)| (context(ideal), check(params, ideal)))
        .collect()
}

/// Runs every check family and reports one verdict per family.
pub fn run_verify(cfg: VerifyConfig) -> Result<VerifySummary> {
    let list = instances(cfg.max_q, cfg.max_p)?;
    let cap = cfg.cap;
    let pairs: Vec<(u64, u64)> = (3..=cfg.max_q)
        .step_by(2)
        .flat_map(|q| primes_up_to(cfg.max_p).into_iter().map(move |p| (q, p)))
        .collect();
    let prime_qs: Vec<u64> = (3..=cfg.max_q)
        .step_by(2)
        .filter(|&q| is_prime(q))
        .collect();

    let families = vec![
        tally(
            "classification vs closure",
            per_instance(&list, |t, i| classification_vs_closure(t, i, cap)),
        ),
        tally(
            "residue degree formula vs factorization",
            pairs
                .par_iter()
                .map(|&(q, p)| (format!("q = {q}, p = {p}"), degree_formula(q, p)))
                .collect(),
        ),
        tally(
            "monodromy shapes and Riemann-Hurwitz",
            per_instance(&list, |t, i| monodromy_vs_rh(t, i, cap)),
        ),
        tally(
            "full genus vs branch data",
            per_instance(&list, |t, i| full_genus_vs_rh(t, i, cap)),
        ),
        tally("two-generator subgroup orders", two_generator_orders(cap)),
        tally(
            "norm of mu_q",
            prime_qs
                .par_iter()
                .map(|&q| (format!("q = {q}"), norm_claim(q, cfg.max_p)))
                .collect(),
        ),
    ];
    Ok(VerifySummary { families })
}
