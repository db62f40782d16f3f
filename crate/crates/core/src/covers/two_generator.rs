use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FqElem, ResidueField};
use crate::numtheory::prime_factors;
use crate::sl2::{closure, identify_group, ClosureMode, GroupId, Mat2};

/// Whether z lies in no proper subfield of its field, i.e. `F_p(z)` is the
/// whole field.
pub fn generates_field(z: &FqElem) -> bool {
    let field = z.field();
    let (p, m) = (field.characteristic(), field.degree());
    let frob = |k: usize| (0..k).fold(z.clone(), |acc, _| acc.pow(p));
    prime_factors(m as u64)
        .into_iter()
        .all(|r| frob(m / r as usize) != *z)
}

/// Brute-force check of the two-generator classification: the group
/// generated by `v = [[0, 1], [-1, 2]]` and `u_z = [[1, z], [0, 1]]` is
/// `SL2(F5)` (binary icosahedral) when `p = 3` and `z^2 = 2`, and all of
/// `SL2(F_p(z))` otherwise.
pub fn verify_two_generator_subgroup(
    p: u64,
    field: &Arc<ResidueField>,
    z: &FqElem,
    cap: u64,
) -> Result<GroupId> {
    if field.characteristic() != p {
        return Err(Error::FieldMismatch);
    }
    if p < 3 {
        return Err(Error::Invalid(format!("p = {p} must be at least 3")));
    }
    if z.field().as_ref() != field.as_ref() {
        return Err(Error::FieldMismatch);
    }
    if z.is_zero() {
        return Err(Error::Invalid("z must be nonzero".into()));
    }
    if !generates_field(z) {
        return Err(Error::Invalid(format!("{z} does not generate {field}")));
    }
    let v = Mat2::from_ints(field, [0, 1, -1, 2])?;
    let u = Mat2::unipotent(z);
    let group = closure(&[v, u], ClosureMode::Sl2, cap)?;
    let found = identify_group(&group, None);
    let predicted = if p == 3 && z.mul(z) == FqElem::from_int(field, 2) {
        GroupId::Sl2F5
    } else {
        GroupId::Sl2 {
            p,
            m: field.degree(),
        }
    };
    if found != predicted {
        return Err(Error::PredictionMismatch(format!(
            "<v, u_z> over {field} with z = {z}: expected {predicted}, closure is {found} of order {}",
            group.len()
        )));
    }
    Ok(found)
}
