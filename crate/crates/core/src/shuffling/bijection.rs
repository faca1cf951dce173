//! Correspondence between Aztec cells and six-vertex vertices: a single
//! `N`, `E`, `S` or `W` domino gives types 1, 4, 2 and 3, a pair gives
//! type 6 and an empty cell gives type 5. Type 6 splits into `N+S` and
//! `E+W` pairs with weights `1-alpha` and `alpha`.

use alloc::vec;
use alloc::vec::Vec;

use super::grid::Edge;
use super::probabilities::PlaquetteProbabilities;
use super::sample::TilingSample;
use crate::sixvertex::SixVertexState;
use crate::{Error, LGeometry, Result, VertexType};

pub fn vertex_type(mask: u8) -> Option<VertexType> {
    const N: u8 = 1;
    const E: u8 = 2;
    const S: u8 = 4;
    const W: u8 = 8;
    match mask {
        N => Some(VertexType::One),
        E => Some(VertexType::Four),
        S => Some(VertexType::Two),
        W => Some(VertexType::Three),
        0 => Some(VertexType::Five),
        m if m == N | S || m == E | W => Some(VertexType::Six),
        _ => None,
    }
}

impl TilingSample {
    pub fn to_six_vertex(&self, geom: &LGeometry) -> Result<SixVertexState> {
        if geom.n != self.order {
            return Err(Error::InvalidGeometry("sample order differs from N".into()));
        }
        let grid = self
            .cells
            .iter()
            .map(|&m| vertex_type(m).ok_or_else(|| Error::InvalidParameter("cell holds an impossible domino set".into())))
            .collect::<Result<Vec<_>>>()?;
        SixVertexState::from_grid(*geom, grid)
    }
}

/// Edge-inclusion probabilities implied by per-vertex type marginals.
pub fn probabilities_from_marginals(marginals: &[[f64; 6]], order: usize, alpha: f64) -> PlaquetteProbabilities {
    let len = order * order;
    let mut out = PlaquetteProbabilities {
        order,
        p: vec![0.0; len],
        q: vec![0.0; len],
        r: vec![0.0; len],
        s: vec![0.0; len],
        ln_z: f64::NAN,
    };
    for (k, m) in marginals.iter().enumerate().take(len) {
        let t = |v: VertexType| m[v.index()];
        let six = t(VertexType::Six);
        out.p[k] = t(VertexType::One) + (1.0 - alpha) * six;
        out.s[k] = t(VertexType::Two) + (1.0 - alpha) * six;
        out.q[k] = t(VertexType::Four) + alpha * six;
        out.r[k] = t(VertexType::Three) + alpha * six;
    }
    out
}

/// Edge indicator of a sample in the same layout as the probabilities.
pub fn sample_indicator(sample: &TilingSample, e: Edge) -> Vec<bool> {
    sample.cells.iter().map(|&m| m & e.bit() != 0).collect()
}
