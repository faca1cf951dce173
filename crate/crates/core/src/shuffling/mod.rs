//! Generalized domino shuffling on the Aztec diamond whose cut corner is
//! frozen, giving exact edge-inclusion probabilities and exact samples of
//! the six-vertex measure on the L-shaped domain.

mod bijection;
mod eps;
mod grid;
mod levels;
mod order;
mod probabilities;
mod sample;

pub use bijection::{probabilities_from_marginals, sample_indicator, vertex_type};
pub use eps::EpsWeight;
pub use grid::{build_weights, AztecWeightGrid, CellWeights, Edge};
pub use levels::{RhoTable, MAX_RHO_TABLE_ORDER};
pub use order::{order_parameters, OrderParameterField};
pub use probabilities::{edge_probabilities, PlaquetteProbabilities};
pub use sample::{sample_tiling, TilingSample, SAMPLER_VERSION};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sixvertex::{partition_function, vertex_marginals};
    use crate::{FreeFermionWeights, LGeometry};

    fn geometries(max_n: usize) -> impl Iterator<Item = LGeometry> {
        (1..=max_n).flat_map(move |n| {
            (1..=n).flat_map(move |r| (0..=r.min(n)).map(move |s| LGeometry::new(n, r, s).unwrap()))
        })
    }

    #[test]
    fn matches_enumeration() {
        for alpha in [0.25, 1.0 / 3.0, 0.5, 0.8] {
            for g in geometries(4) {
                let wg = build_weights(&g, alpha).unwrap();
                let pr = edge_probabilities(&wg).unwrap();
                let m = vertex_marginals(&g, &FreeFermionWeights::float(alpha).unwrap()).unwrap();
                let ex = probabilities_from_marginals(&m, g.n, alpha);
                for k in 0..g.n * g.n {
                    for (a, b) in [(pr.p[k], ex.p[k]), (pr.q[k], ex.q[k]), (pr.r[k], ex.r[k]), (pr.s[k], ex.s[k])] {
                        assert!((a - b).abs() < 1e-12, "{g:?} alpha={alpha} cell {k}: {a} vs {b}");
                    }
                }
                let nn = (g.n * (g.n + 1)) as f64;
                assert!((pr.total() - nn).abs() < 1e-10);
                let z = partition_function(&g, &FreeFermionWeights::float(alpha).unwrap()).unwrap().approx;
                let norm = (1.0 - alpha).sqrt().max(alpha.sqrt());
                let dominoes = (g.n * (g.n + 1) - g.cut_size()) as f64;
                let ln_z6 = pr.ln_z + dominoes * norm.ln();
                assert!((ln_z6 - z.ln()).abs() < 1e-10, "{g:?}: {} vs {}", ln_z6, z.ln());
            }
        }
    }
}
