use alloc::format;
use alloc::vec::Vec;

use super::eps::EpsWeight;
use crate::fmath::{ln, sqrt};
use crate::{Error, LGeometry, Result};

/// The four edges of an Aztec cell. In the picture rotated by 45 degrees
/// they become the NW, NE, SE and SW edges of the plaquette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    N,
    E,
    S,
    W,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::N, Edge::E, Edge::S, Edge::W];

    pub fn bit(self) -> u8 {
        match self {
            Edge::N => 1,
            Edge::E => 2,
            Edge::S => 4,
            Edge::W => 8,
        }
    }

    pub fn opposite(self) -> Edge {
        match self {
            Edge::N => Edge::S,
            Edge::E => Edge::W,
            Edge::S => Edge::N,
            Edge::W => Edge::E,
        }
    }

    /// Offset `(di, dj)` from the cell of order `m - 1` that feeds this edge
    /// to cell `(i, j)` of order `m`.
    pub(crate) fn source_offset(self) -> (usize, usize) {
        match self {
            Edge::N => (1, 0),
            Edge::S => (0, 1),
            Edge::E => (1, 1),
            Edge::W => (0, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellWeights {
    pub n: EpsWeight,
    pub e: EpsWeight,
    pub s: EpsWeight,
    pub w: EpsWeight,
}

impl CellWeights {
    pub fn uniform(v: f64) -> Self {
        let x = EpsWeight::new(v);
        CellWeights { n: x, e: x, s: x, w: x }
    }

    pub fn get(&self, e: Edge) -> EpsWeight {
        match e {
            Edge::N => self.n,
            Edge::E => self.e,
            Edge::S => self.s,
            Edge::W => self.w,
        }
    }

    fn ns(&self) -> EpsWeight {
        self.n * self.s
    }

    fn ew(&self) -> EpsWeight {
        self.e * self.w
    }

    fn delta(&self) -> EpsWeight {
        self.ns() + self.ew()
    }

    /// Limit probability that a freshly created pair in this cell is `N+S`.
    pub fn rho(&self) -> f64 {
        (self.ns() / self.delta()).limit()
    }

    fn max_coeff(&self) -> f64 {
        self.n.coeff.max(self.e.coeff).max(self.s.coeff).max(self.w.coeff)
    }

    fn scale(&mut self, c: f64) {
        self.n = self.n.scale(c);
        self.e = self.e.scale(c);
        self.s = self.s.scale(c);
        self.w = self.w.scale(c);
    }
}

/// Edge weights of the Aztec diamond of order `order`; cell `(i, j)` is
/// stored at `i * order + j`. Cell `(i, j)` corresponds to the six-vertex
/// vertex in row `i` from the top and column `j` from the right.
#[derive(Debug, Clone, PartialEq)]
pub struct AztecWeightGrid {
    order: usize,
    cells: Vec<CellWeights>,
    cut: Option<LGeometry>,
}

impl AztecWeightGrid {
    pub fn new(order: usize, cells: Vec<CellWeights>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGeometry("order must be positive".into()));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidGeometry(format!("expected {} cells, got {}", order * order, cells.len())));
        }
        let ok = cells.iter().all(|c| {
            Edge::ALL.iter().all(|&e| {
                let w = c.get(e);
                w.coeff.is_finite() && w.coeff > 0.0 && w.order >= 0
            })
        });
        if !ok {
            return Err(Error::InvalidParameter("weights must be finite and non-negative".into()));
        }
        Ok(AztecWeightGrid { order, cells, cut: None })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cut(&self) -> Option<&LGeometry> {
        self.cut.as_ref()
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellWeights {
        &self.cells[i * self.order + j]
    }

    pub fn cells(&self) -> &[CellWeights] {
        &self.cells
    }
}

/// Weights whose dimer measure maps to the free-fermion six-vertex measure
/// on the L-shaped domain. Outside the cut, `N = S = sqrt(1-alpha)` and
/// `E = W = sqrt(alpha)`, rescaled so the larger is 1. Inside the cut only
/// the `S` edge survives, which freezes those cells to type 2.
pub fn build_weights(geom: &LGeometry, alpha: f64) -> Result<AztecWeightGrid> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in [0,1]")));
    }
    let n = geom.n;
    let (a, b) = (sqrt(1.0 - alpha), sqrt(alpha));
    let m = a.max(b);
    let ns = EpsWeight::new(a / m);
    let ew = EpsWeight::new(b / m);
    let live = CellWeights { n: ns, e: ew, s: ns, w: ew };
    let frozen = CellWeights { n: EpsWeight::EPS, e: EpsWeight::EPS, s: EpsWeight::ONE, w: EpsWeight::EPS };
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(if geom.is_cut(j, i) { frozen } else { live });
        }
    }
    Ok(AztecWeightGrid { order: n, cells, cut: Some(*geom) })
}

/// Output of one shuffling reduction.
pub(crate) struct Reduced {
    pub cells: Vec<CellWeights>,
    pub delta_order: i64,
    pub ln_factor: f64,
}

/// Weights of order `m - 1` from weights of order `m`, rescaled so the
/// largest coefficient is 1. `ln_factor` and `delta_order` track
/// `Z_m / Z_{m-1}`.
pub(crate) fn reduce(cells: &[CellWeights], m: usize) -> Reduced {
    let deltas: Vec<EpsWeight> = cells.iter().map(CellWeights::delta).collect();
    let mut delta_order = 0i64;
    let mut ln_factor = 0.0;
    for d in &deltas {
        delta_order += d.order as i64;
        ln_factor += ln(d.coeff);
    }
    let k = m - 1;
    let at = |i: usize, j: usize| i * m + j;
    let mut out = Vec::with_capacity(k * k);
    let mut big = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let (a, b, c, d) = (at(i + 1, j), at(i, j + 1), at(i + 1, j + 1), at(i, j));
            let cw = CellWeights {
                n: cells[a].n / deltas[a],
                s: cells[b].s / deltas[b],
                e: cells[c].e / deltas[c],
                w: cells[d].w / deltas[d],
            };
            big = big.max(cw.max_coeff());
            out.push(cw);
        }
    }
    if k > 0 && big > 0.0 && big.is_finite() {
        for c in &mut out {
            c.scale(1.0 / big);
        }
        ln_factor += (k * (k + 1)) as f64 * ln(big);
    }
    Reduced { cells: out, delta_order, ln_factor }
}
