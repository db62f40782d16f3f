//! Unimodular 2x2 matrices over residue fields: group closure, PSL2
//! representatives, subgroup identification and the projective-line
//! action.

mod closure;
mod identify;
mod mat;
mod projective;

pub use closure::{closure, ClosureMode, MatGroup, DEFAULT_CLOSURE_CAP};
pub use identify::{identify_group, psl2_order, sl2_order, GroupId};
pub use mat::{psl_canon, Mat2};
pub use projective::{
    act, cycle_type, is_transitive_on_p1, p1_action_cycles, p1_permutation, CycleType, ProjPoint,
};
