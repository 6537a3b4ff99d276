//! Symmetric-power modules over `F_p` and truncated rings: the substitution
//! action, `θ`-divisibility, the function spaces `I_h` and the subquotients
//! `N_α`.

mod functions;
mod homog;
mod theta;

pub use functions::{club_map, n_alpha_class, FunctionSpaceElement};
pub use homog::{kz_act, HomogPoly, Mat2, Twist, TwistedPoly};
pub use theta::{family_polynomial, theta, theta_criterion, theta_pow, theta_pow_divide, ThetaCriterion};
