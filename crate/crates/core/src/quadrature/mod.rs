//! Gauss–Jacobi rules and the fractional operators built on them.

mod composition;
mod operator;
mod rule;

pub use composition::check_composition;
pub use operator::{
    left_integral, power_closed_form, right_integral, FractionalOperator, OperatorResult, Side,
    DEFAULT_NODES,
};
pub use rule::{cached_rule, jacobi_rule, QuadratureRule};
