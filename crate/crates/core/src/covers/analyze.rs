use super::classify::{classify_cover, ClassifyOptions};
use super::genus::{
    borel_formula, check_borel_preconditions, full_genus_from_report, require_psl2,
};
use super::CoverReport;
use crate::error::{Error, Precondition, Result};
use crate::residue::{PrimeIdeal, TriangleParams};

/// Which genera to compute alongside the classification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GenusLevel {
    #[default]
    Both,
    Full,
    Borel,
    None,
}

impl GenusLevel {
    pub fn full(self) -> bool {
        matches!(self, GenusLevel::Both | GenusLevel::Full)
    }

    pub fn borel(self) -> bool {
        matches!(self, GenusLevel::Both | GenusLevel::Borel)
    }
}

/// Classification plus the requested genera. A genus whose hypotheses do
/// not hold is left empty and the reason goes into `notes`; any other
/// failure is returned.
pub fn analyze(
    params: &TriangleParams,
    ideal: &PrimeIdeal,
    opts: ClassifyOptions,
    level: GenusLevel,
) -> Result<CoverReport> {
    let mut report = classify_cover(params, ideal, opts)?;
    if level.full() {
        match full_genus_from_report(&report) {
            Ok(full) => {
                report.genus_full = Some(full.genus);
                report.ramification = full.ramification;
                if full.p2_extrapolated {
                    report.notes.push("p2-extrapolated".into());
                }
            }
            Err(Error::Precondition(pc)) => report.notes.push(format!("genus_full: {pc}")),
            Err(e) => return Err(e),
        }
    }
    if level.borel() {
        match borel_genus_for(&report) {
            Ok(g) => report.genus_borel = Some(g),
            Err(Error::Precondition(pc)) => report.notes.push(format!("genus_borel: {pc}")),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn borel_genus_for(report: &CoverReport) -> Result<num_bigint::BigUint> {
    let q = report.q;
    if q < 5 {
        return Err(Precondition::QTooSmall { q, min: 5 }.into());
    }
    check_borel_preconditions(q, report.p)?;
    require_psl2(report)?;
    borel_formula(q, &report.ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::primes_above;
    use num_bigint::BigUint;

    fn run(q: u64, p: u64) -> CoverReport {
        let t = TriangleParams::new(q).unwrap();
        let i = primes_above(q, p).unwrap().remove(0);
        analyze(&t, &i, ClassifyOptions::default(), GenusLevel::Both).unwrap()
    }

    #[test]
    fn q5_rows() {
        let r = run(5, 2);
        assert_eq!(r.genus_full, Some(BigUint::from(0u32)));
        assert_eq!(r.genus_borel, None);
        assert!(r.notes.iter().any(|n| n == "p2-extrapolated"));
        let r = run(5, 3);
        assert_eq!(r.genus_full, Some(BigUint::from(25u32)));
        assert_eq!(r.genus_borel, Some(BigUint::from(1u32)));
        assert_eq!(r.ramification.len(), 3);
        let r = run(5, 11);
        assert_eq!(r.genus_full, Some(BigUint::from(205u32)));
        assert_eq!(r.genus_borel, Some(BigUint::from(3u32)));
    }

    #[test]
    fn excluded_pairs_leave_blanks() {
        let r = run(5, 5);
        assert_eq!(r.genus_full, None);
        assert_eq!(r.genus_borel, None);
        assert!(r.notes.iter().any(|n| n.contains("p = q = 5")));
        let r = run(9, 3);
        assert!(r.degenerate);
        assert_eq!(r.genus_full, None);
    }
}
