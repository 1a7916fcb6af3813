//! Exact desk-scale measure theory: interval unions, simple functions,
//! Riemann sums, the Cantor set and function, and an absolute-continuity
//! diagnostic.

mod ac;
mod cantor;
mod intervals;
mod riemann;

pub use ac::{ac_diagnostic, AcReport, AcRow};
pub use cantor::{
    cantor_function, cantor_function_exact, cantor_level, in_cantor_set, snap_rational,
    ternary_expansion, CantorLevel, MAX_BINARY_DIGITS, MAX_LEVEL, MAX_MATERIALIZED_LEVEL,
    MAX_TERNARY_DIGITS,
};
pub use intervals::{lebesgue_integral_simple, set_ops, IntervalUnion, SimpleFunction};
pub use riemann::{
    rational_indicator, riemann_step_integral, riemann_sum, riemann_sum_converge, step_to_simple,
    ConvergenceReport, TagRule, RATIONAL_DENOMINATOR_LIMIT,
};
