//! Closed forms for Kapteyn series and the identity catalog built on them.

mod identities;
mod negative_q;
mod nielsen;
mod positive_q;

pub use identities::{catalog, find_identity, identity_check, Identity, IdentityReport, Params};
pub use negative_q::{
    coeff_first_kind, coeff_second_kind_neg, coeff_second_kind_neg_exact, eval_first_kind,
    eval_second_kind_neg, first_kind_poly, second_kind_neg_poly, verify_recurrence_eq43, xi,
    xi_exact,
};
pub use nielsen::{nielsen_integral, nielsen_rhs, sinc_pi, NielsenKind};
pub use positive_q::{
    coeff_second_kind_pos, eval_k2_pos, k2_family, k2_q0, next_k2, K2Chain, K2Family,
};
