//! Arbitrary-precision evaluation of zeta values, multiple zeta values,
//! harmonic sums, polylogarithms and the functions `l_r`, `Gamma_{y_r}`.

mod ell;
mod mzv;
mod real;
mod roots;
mod zeta;

pub use ell::{
    ell_r, ell_r_power, gamma_real, gamma_yr, weierstrass3_check, weierstrass_product_check,
    zeta_even_rational, ProductCheck,
};
pub use mzv::{harmonic_sum, li_numeric, mzv, mzv_with_cutoff, Approx};
pub use real::{Complex, Real};
pub use roots::{roots_g, zero_set_sample, RootSystem};
pub use zeta::{bernoulli, euler_gamma, zeta_int};
