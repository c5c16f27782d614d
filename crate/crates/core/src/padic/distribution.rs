//! The quadruple `(T_ρ, f_ρ, p_ρ, ω_ρ)` as data.

use serde::Serialize;

use crate::weights::WeightList;

/// `Y = G_m^n`, `f = t_1 + ⋯ + t_n`, `p(t) = ∏ λ_i(t_i)`, `ω = dt_1 ⋯ dt_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgGeomDistributionData {
    pub n: usize,
    /// Row `j` lists the exponent of `t_i` in the `j`-th target coordinate.
    pub monomial_matrix: Vec<Vec<i64>>,
    pub phase: String,
    pub form: String,
}

impl AlgGeomDistributionData {
    pub fn from_weights(rho: &WeightList) -> Self {
        let n = rho.len();
        let monomial_matrix = (0..rho.rank()).map(|j| rho.weights().iter().map(|l| l[j]).collect()).collect();
        let phase = (1..=n).map(|i| format!("t{i}")).collect::<Vec<_>>().join(" + ");
        let form = (1..=n).map(|i| format!("dt{i}")).collect::<Vec<_>>().join(" ");
        AlgGeomDistributionData { n, monomial_matrix, phase, form }
    }

    /// Exponent vectors of the weights, read back from the matrix.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.monomial_matrix.iter().map(|row| row[i]).collect()).collect()
    }
}
