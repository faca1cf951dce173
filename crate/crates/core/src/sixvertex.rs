//! Brute-force oracle: DWBC states on the L-shaped domain, partition
//! functions, the boundary distribution and generalized emptiness formation
//! probabilities.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::pow;
use crate::weights::{Alpha, FreeFermionWeights, Surd, Value, VertexType};
use crate::{Error, LGeometry, Result};

/// Largest lattice accepted by the enumerator.
pub const MAX_ENUM_N: usize = 7;

/// One admissible configuration. The grid covers the whole `N x N` square
/// (row-major in `k`, then `j`); vertices of the removed corner carry the
/// frozen type 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixVertexState {
    pub geom: LGeometry,
    grid: Vec<VertexType>,
}

impl SixVertexState {
    /// A state from a row-major grid, rejected unless it is admissible.
    pub fn from_grid(geom: LGeometry, grid: Vec<VertexType>) -> Result<Self> {
        if grid.len() != geom.n * geom.n {
            return Err(Error::InvalidGeometry(format!("grid has {} cells, expected {}", grid.len(), geom.n * geom.n)));
        }
        let st = SixVertexState { geom, grid };
        if !st.is_valid() {
            return Err(Error::InvalidParameter("grid violates the ice rule or the boundary conditions".into()));
        }
        Ok(st)
    }

    /// Vertex in column `j` (0-based from the right) and row `k` (0-based
    /// from the top).
    #[inline]
    pub fn get(&self, j: usize, k: usize) -> VertexType {
        self.grid[k * self.geom.n + j]
    }

    pub fn in_domain(&self, j: usize, k: usize) -> bool {
        !self.geom.is_cut(j, k)
    }

    /// Vertex-type counts over the L-shaped domain (cut corner excluded).
    pub fn counts(&self) -> [usize; 6] {
        let mut c = [0; 6];
        let n = self.geom.n;
        for k in 0..n {
            for j in 0..n {
                if self.in_domain(j, k) {
                    c[self.get(j, k).index()] += 1;
                }
            }
        }
        c
    }

    /// Ice rule on every vertex, consistency of shared edges, and DWBC.
    pub fn is_valid(&self) -> bool {
        let n = self.geom.n;
        for k in 0..n {
            for j in 0..n {
                let (l, r, b, t) = self.get(j, k).arrows();
                if self.geom.is_cut(j, k) && self.get(j, k) != VertexType::Two {
                    return false;
                }
                if j + 1 < n {
                    if self.get(j + 1, k).arrows().1 != l {
                        return false;
                    }
                } else if l {
                    return false;
                }
                if j == 0 && !r {
                    return false;
                }
                if k + 1 < n {
                    if self.get(j, k + 1).arrows().3 != b {
                        return false;
                    }
                } else if !b {
                    return false;
                }
                if k == 0 && t {
                    return false;
                }
            }
        }
        true
    }

    /// 1-based column of the sole up arrow on the vertical edges below the
    /// first row.
    pub fn first_row_up_column(&self) -> Option<usize> {
        let n = self.geom.n;
        let mut found = None;
        for j in 0..n {
            if self.get(j, 0).arrows().2 {
                if found.is_some() {
                    return None;
                }
                found = Some(j + 1);
            }
        }
        found
    }

    /// Whether the horizontal edge between columns `col` and `col+1` (1-based)
    /// in row `k` (0-based) points left. Column `N` borders the left
    /// boundary, whose arrows point left; column 0 borders the right
    /// boundary, whose arrows point right.
    pub fn edge_points_left(&self, k: usize, col: usize) -> bool {
        if col >= self.geom.n {
            return true;
        }
        if col == 0 {
            return false;
        }
        self.get(col, k).right_edge_points_left()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[VertexType]> {
        self.grid.chunks(self.geom.n)
    }
}

struct Walker<'a, F: FnMut(&[VertexType])> {
    geom: LGeometry,
    grid: Vec<VertexType>,
    visit: &'a mut F,
}

impl<F: FnMut(&[VertexType])> Walker<'_, F> {
    fn row(&mut self, k: usize, top_up: u32) {
        let n = self.geom.n;
        if k == n {
            if top_up == (1u32 << n) - 1 {
                (self.visit)(&self.grid);
            }
            return;
        }
        // Remaining rows can add at most one up arrow each.
        if (top_up.count_ones() as usize) != k {
            return;
        }
        self.cell(k, n, false, top_up, 0);
    }

    // Processes vertex `j - 1` of row `k`, moving right to left in the
    // picture (from the left boundary towards column 1).
    fn cell(&mut self, k: usize, j: usize, left_right: bool, top_up: u32, bottom_up: u32) {
        if j == 0 {
            if left_right {
                self.row(k + 1, bottom_up);
            }
            return;
        }
        let j = j - 1;
        let t = top_up >> j & 1 == 1;
        for b in [false, true] {
            let inward = left_right as i32 + b as i32 + (!t) as i32;
            let right_inward = 2 - inward;
            if !(0..=1).contains(&right_inward) {
                continue;
            }
            let r = right_inward == 0;
            let Some(v) = VertexType::from_arrows(left_right, r, b, t) else {
                continue;
            };
            if self.geom.is_cut(j, k) && v != VertexType::Two {
                continue;
            }
            self.grid[k * self.geom.n + j] = v;
            self.cell(k, j, r, top_up, bottom_up | (b as u32) << j);
        }
    }
}

fn guard(geom: &LGeometry) -> Result<()> {
    if geom.n > MAX_ENUM_N {
        return Err(Error::SizeGuard { what: "N", limit: MAX_ENUM_N, got: geom.n });
    }
    Ok(())
}

/// Calls `visit` with every admissible state grid in a fixed canonical order.
pub fn for_each_state(geom: &LGeometry, mut visit: impl FnMut(&[VertexType])) -> Result<()> {
    guard(geom)?;
    let mut w = Walker { geom: *geom, grid: vec![VertexType::Two; geom.n * geom.n], visit: &mut visit };
    w.row(0, 0);
    Ok(())
}

/// Every admissible DWBC state of the L-shaped domain, each exactly once.
pub fn enumerate_states(geom: &LGeometry) -> Result<Vec<SixVertexState>> {
    let mut out = Vec::new();
    for_each_state(geom, |g| out.push(SixVertexState { geom: *geom, grid: g.to_vec() }))?;
    Ok(out)
}

/// Multiplicities of `(n1 + n2, n3 + n4)` over a set of states. Every state
/// weight is `(1-alpha)^(n12/2) * alpha^(n34/2)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightTally(pub BTreeMap<(usize, usize), u64>);

impl WeightTally {
    pub fn add(&mut self, counts: &[usize; 6]) {
        *self.0.entry((counts[0] + counts[1], counts[2] + counts[3])).or_insert(0) += 1;
    }

    pub fn states(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn eval_f64(&self, alpha: f64) -> f64 {
        let (a, b) = (crate::fmath::sqrt(1.0 - alpha), crate::fmath::sqrt(alpha));
        self.0
            .iter()
            .map(|(&(n12, n34), &c)| c as f64 * crate::fmath::powi(a, n12 as i32) * crate::fmath::powi(b, n34 as i32))
            .sum()
    }

    /// Exact value; the type-1/2 count has a common parity and the type-3/4
    /// count is always even on these domains.
    pub fn eval_exact(&self, alpha: &BigRational) -> Surd {
        let oma = BigRational::one() - alpha;
        let mut coeff = BigRational::zero();
        let mut parity = None;
        for (&(n12, n34), &c) in &self.0 {
            assert!(n34 % 2 == 0, "odd type-3/4 count");
            match parity {
                None => parity = Some(n12 % 2),
                Some(p) => assert_eq!(p, n12 % 2, "mixed type-1/2 parity"),
            }
            coeff += BigRational::from_integer(c.into()) * pow(&oma, (n12 / 2) as i64) * pow(alpha, (n34 / 2) as i64);
        }
        Surd { coeff, odd: parity == Some(1) }
    }

    fn value(&self, w: &FreeFermionWeights) -> Value {
        match &w.alpha {
            Alpha::Exact(a) => {
                let s = self.eval_exact(a);
                debug_assert!(s.is_rational());
                Value::Exact(s.coeff)
            }
            Alpha::Float(a) => Value::Approx(self.eval_f64(*a)),
        }
    }
}

fn square_counts(grid: &[VertexType]) -> [usize; 6] {
    let mut c = [0; 6];
    for v in grid {
        c[v.index()] += 1;
    }
    c
}

fn domain_counts(geom: &LGeometry, grid: &[VertexType]) -> [usize; 6] {
    let mut c = square_counts(grid);
    c[VertexType::Two.index()] -= geom.cut_size();
    c
}

pub fn weight_tally(geom: &LGeometry) -> Result<WeightTally> {
    let mut t = WeightTally::default();
    for_each_state(geom, |g| t.add(&domain_counts(geom, g)))?;
    Ok(t)
}

/// Partition function of the L-shaped domain (cut corner carries no weight).
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFunction {
    /// Present when alpha is rational.
    pub exact: Option<Surd>,
    pub approx: f64,
    pub states: u64,
}

pub fn partition_function(geom: &LGeometry, w: &FreeFermionWeights) -> Result<PartitionFunction> {
    let t = weight_tally(geom)?;
    let approx = t.eval_f64(w.alpha_f64());
    let exact = w.exact_alpha().map(|a| t.eval_exact(a));
    Ok(PartitionFunction { exact, approx, states: t.states() })
}

/// Probability of each vertex type at every vertex, indexed `k * N + j`
/// and then by [`VertexType::index`].
pub fn vertex_marginals(geom: &LGeometry, w: &FreeFermionWeights) -> Result<Vec<[f64; 6]>> {
    let n = geom.n;
    let alpha = w.alpha_f64();
    let mut acc = vec![[0.0; 6]; n * n];
    let mut z = 0.0;
    for_each_state(geom, |g| {
        let mut wt = 1.0;
        for (idx, v) in g.iter().enumerate() {
            if !geom.is_cut(idx % n, idx / n) {
                wt *= v.weight(alpha);
            }
        }
        z += wt;
        for (idx, v) in g.iter().enumerate() {
            acc[idx][v.index()] += wt;
        }
    })?;
    if z <= 0.0 {
        return Err(Error::Degenerate(format!("no state of positive weight for {geom:?}")));
    }
    for a in &mut acc {
        for x in a.iter_mut() {
            *x /= z;
        }
    }
    Ok(acc)
}

/// `H^(l)`: probability that the sole up arrow below the first row sits in
/// column `l` (1-based from the right).
pub fn boundary_distribution(geom: &LGeometry, w: &FreeFermionWeights) -> Result<Vec<Value>> {
    let width = geom.top_width();
    let mut tallies = vec![WeightTally::default(); width];
    for_each_state(geom, |g| {
        let up = (0..geom.n).find(|&j| g[j].arrows().2).expect("first row has an up arrow");
        tallies[up].add(&domain_counts(geom, g));
    })?;
    let mut total = WeightTally::default();
    for t in &tallies {
        for (k, c) in &t.0 {
            *total.0.entry(*k).or_insert(0) += c;
        }
    }
    if total.states() == 0 {
        return Err(Error::Degenerate(format!("no admissible states for {geom:?}")));
    }
    Ok(match &w.alpha {
        Alpha::Exact(a) => {
            let z = total.eval_exact(a);
            tallies
                .iter()
                .map(|t| {
                    let h = t.eval_exact(a);
                    if h.coeff.is_zero() {
                        Value::Exact(BigRational::zero())
                    } else {
                        assert_eq!(h.odd, z.odd);
                        Value::Exact(h.coeff / &z.coeff)
                    }
                })
                .collect()
        }
        Alpha::Float(a) => {
            let z = total.eval_f64(*a);
            tallies.iter().map(|t| Value::Approx(t.eval_f64(*a) / z)).collect()
        }
    })
}

/// Probability, on the `N x N` square, that in each row `k = 1..=s` the
/// horizontal edge between columns `r_k` and `r_k + 1` points left. An entry
/// `r_k = 0` asks for the right boundary edge to point left, which never
/// happens.
pub fn gefp_bruteforce(n: usize, r_list: &[usize], w: &FreeFermionWeights) -> Result<Value> {
    let geom = LGeometry::square(n)?;
    if r_list.len() > n {
        return Err(Error::InvalidGeometry(format!("{} rows requested on N = {n}", r_list.len())));
    }
    if r_list.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InvalidParameter(format!("r_list {r_list:?} is not weakly increasing")));
    }
    if r_list.iter().any(|&r| r > n) {
        return Err(Error::InvalidParameter(format!("r_list {r_list:?} exceeds N = {n}")));
    }
    let mut t = WeightTally::default();
    for_each_state(&geom, |g| {
        let ok = r_list.iter().enumerate().all(|(k, &rk)| match rk {
            0 => false,
            rk if rk == n => true,
            rk => g[k * n + rk].right_edge_points_left(),
        });
        if ok {
            t.add(&square_counts(g));
        }
    })?;
    Ok(t.value(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn geom(n: usize, r: usize, s: usize) -> LGeometry {
        LGeometry::new(n, r, s).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_states(&geom(1, 1, 0)).unwrap().len(), 1);
        assert_eq!(enumerate_states(&geom(2, 2, 0)).unwrap().len(), 2);
        assert_eq!(enumerate_states(&geom(2, 1, 1)).unwrap().len(), 1);
        let asm = [1, 2, 7, 42, 429, 7436];
        for (i, &c) in asm.iter().enumerate() {
            assert_eq!(enumerate_states(&LGeometry::square(i + 1).unwrap()).unwrap().len(), c);
        }
    }

    #[test]
    fn cut_beyond_top_band() {
        assert_eq!(enumerate_states(&geom(3, 2, 2)).unwrap().len(), 2);
        assert_eq!(enumerate_states(&geom(4, 3, 2)).unwrap().len(), 21);
        assert_eq!(enumerate_states(&geom(4, 3, 3)).unwrap().len(), 7);
        assert!(enumerate_states(&geom(4, 1, 2)).unwrap().is_empty());
    }

    #[test]
    fn states_are_valid() {
        for st in enumerate_states(&geom(5, 3, 2)).unwrap() {
            assert!(st.is_valid());
            assert!(st.first_row_up_column().unwrap() <= 3);
        }
    }

    #[test]
    fn two_by_two_partition_function() {
        let w = FreeFermionWeights::ratio(2, 7).unwrap();
        let z = partition_function(&geom(2, 2, 0), &w).unwrap();
        assert_eq!(z.exact.unwrap(), Surd { coeff: BigRational::one(), odd: false });
    }

    #[test]
    fn two_by_two_boundary_distribution() {
        let w = FreeFermionWeights::ratio(1, 3).unwrap();
        let h = boundary_distribution(&geom(2, 2, 0), &w).unwrap();
        assert_eq!(h, vec![Value::Exact(rat(2, 3)), Value::Exact(rat(1, 3))]);
        let h = boundary_distribution(&geom(2, 1, 1), &w).unwrap();
        assert_eq!(h, vec![Value::Exact(rat(1, 1))]);
    }

    #[test]
    fn gefp_small() {
        let w = FreeFermionWeights::ratio(1, 3).unwrap();
        assert_eq!(gefp_bruteforce(2, &[1], &w).unwrap(), Value::Exact(rat(2, 3)));
        assert_eq!(gefp_bruteforce(3, &[3, 3], &w).unwrap(), Value::Exact(rat(1, 1)));
        assert_eq!(gefp_bruteforce(3, &[0, 3], &w).unwrap(), Value::Exact(rat(0, 1)));
        assert!(gefp_bruteforce(3, &[2, 1], &w).is_err());
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(enumerate_states(&LGeometry::square(8).unwrap()), Err(Error::SizeGuard { .. })));
    }
}
