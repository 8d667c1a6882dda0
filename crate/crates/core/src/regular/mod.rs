//! Regularization of divergent polyzetas: star combinations, the characters
//! `zeta_⧢` and `gamma_•`, negative-index expansions and the identities they
//! yield.

mod beta;
mod characters;
mod combo;
mod families;
mod negindex;

pub use beta::{
    beta_gamma_check, integrate, li_extended_eval, partial_beta, BetaGammaCheck, ExtendedExpr,
    Quad, MAX_NESTING,
};
pub use characters::{
    gamma_atom, gamma_char, y_star, zeta_shuffle_char, zeta_shuffle_char_with, CharValue,
    GammaCharInput,
};
pub use combo::{finite_part, ScaleExpansion, StarAtom, StarCombo};
pub use families::{
    admissible_by_depth, newton_girard_h_check, newton_girard_sides, repeated_mzv_exact,
    sum_formula_check, DepthResidual, Family, NewtonGirardSides, SumFormulaReport,
    SUM_FORMULA_READING,
};
pub use negindex::{negindex_to_starcombo, stirling2, stirling_starcombo};
