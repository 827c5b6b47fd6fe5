//! Character sums over F_q and F_p, valued exactly in Z[zeta_p].

mod characters;
mod coulter;
mod cyclotomic;
mod legendre;
mod linearized;

pub use characters::{additive_sum, additive_sums_all, chi, eta, gauss_sum, gauss_sum_literal, prime_gauss_sum};
pub use coulter::{
    coulter_case, coulter_histogram, coulter_histograms_all_b, coulter_sum_brute, coulter_sum_closed,
    is_f_permutation, CoulterCase,
};
pub(crate) use coulter::coulter_sum_closed_with;
pub use cyclotomic::CyclotomicInt;
pub(crate) use legendre::leg;
pub use legendre::{
    l_p_closed, l_p_sum, legendre, quadratic_sum, quadratic_sum_closed, residue_class_cardinalities,
    residue_class_cardinalities_closed, s_p_closed, s_p_sum, ResidueClassCounts, SignSymbol,
};
pub(crate) use linearized::class_of;
pub use linearized::{f_target, solve_f, trace_of_solution_class, LinearizedMap, SolutionSet};
