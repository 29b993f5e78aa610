//! Complex-analytic layer: `u, v, w`, the transform of `R`, `Ŝ` and its Ingham equivalent.

pub mod lambda;
pub mod transform;
pub mod uvw;
pub mod value;

pub use lambda::{ComplexLambda, DomainTag};
pub use transform::{
    fn_s_hat, fn_s_hat_nu, ingham_equivalent, laplace_r, laplace_r_plain, laplace_r_raw, nu_average_u_shift,
};
pub use uvw::{expansion_residual_v, expansion_residual_w, fn_u, fn_u_shift, fn_v, fn_v_shift, fn_w, fn_w_shift, Uvw};
pub use value::TransformValue;
