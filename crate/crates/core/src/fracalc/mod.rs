//! Translation semigroups and fractional powers of `𝔇 = d/dx + a(x)` and of
//! its right-sided counterpart.

pub mod bbm;
pub mod ftc;
pub mod hermite_fn;
pub mod maxprinciple;
pub mod powers;
pub mod semigroup;
pub mod weighted;

pub use bbm::{bbm_sweep, BbmReport};
pub use ftc::{ftc_check, FtcReport};
pub use hermite_fn::{hermite_function, hermite_ode_residual};
pub use maxprinciple::{max_principle_probe, MaxPrincipleReport};
pub use powers::{
    first_order_left, frac_deriv_left, frac_deriv_left_truncated, frac_deriv_right, frac_int_left,
    frac_int_left_func, frac_int_right,
};
pub use semigroup::{semigroup_left, semigroup_right};
pub use weighted::Weighted;
