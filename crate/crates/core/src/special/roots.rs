use crate::coeff::{Coeff, Cyclo};

use super::Complex;

/// `G_r`, the solutions of `z^r = (-1)^{r-1}`, and the group of `r`-th roots
/// of unity, as exact cyclotomic numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub r: u32,
    /// `exp(i pi (2k + r - 1) / r)` for `k = 0..r`.
    pub g: Vec<Cyclo>,
    /// `exp(2 i pi k / r)` for `k = 0..r`.
    pub unity: Vec<Cyclo>,
}

impl RootSystem {
    pub fn numeric_g(&self, prec: usize) -> Vec<Complex> {
        self.g
            .iter()
            .map(|c| Complex::from_cyclo(c, prec))
            .collect()
    }
}

pub fn roots_g(r: u32) -> RootSystem {
    assert!(r >= 1, "r must be positive");
    let n = 2 * r as u64;
    RootSystem {
        r,
        g: (0..r)
            .map(|k| Cyclo::root_of_unity(n, (2 * k + r - 1) as i64))
            .collect(),
        unity: (0..r)
            .map(|k| Cyclo::root_of_unity(r as u64, k as i64))
            .collect(),
    }
}

/// `{chi * m : chi in G_r, -depth <= m <= -1}`, ordered by `chi` then `m`.
pub fn zero_set_sample(r: u32, depth: u32) -> Vec<Cyclo> {
    let rs = roots_g(r);
    rs.g.iter()
        .flat_map(|chi| (1..=depth as i64).map(move |n| chi.clone() * Cyclo::from_int(-n)))
        .collect()
}
