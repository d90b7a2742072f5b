//! Exact linear algebra for the balance equations: weights around each
//! black vertex sum to its angle, weights around each white vertex sum to
//! its angle divided by the ratio.

use crate::angulation::{Color, MixedAngulation};
use crate::dataset::DataSet;
use crate::rational::Q;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BalanceError {
    #[error("the balance system has no solution")]
    Infeasible,
    #[error("bad targets: {0}")]
    BadTargets(String),
    #[error("the edge list is not a tree")]
    NotATree,
    #[error("rank identity failed: {0}")]
    AssertionFailure(String),
}

/// Vertex-arc incidence matrix, black rows (by id) first, then white rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionMatrix {
    pub rows: Vec<Vec<i64>>,
    /// Vertex id of each row.
    pub row_vertex: Vec<usize>,
    pub blacks: usize,
}

pub fn connection_matrix(a: &MixedAngulation) -> ConnectionMatrix {
    let mut order = a.vertices_of(Color::Black);
    let blacks = order.len();
    order.extend(a.vertices_of(Color::White));
    let rows = order
        .iter()
        .map(|&v| {
            let mut row = vec![0i64; a.num_arcs()];
            for d in a.rotation(v) {
                row[d.arc] += 1;
            }
            row
        })
        .collect();
    ConnectionMatrix {
        rows,
        row_vertex: order,
        blacks,
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for i in rank + 1..nrows {
            let lead = m[i][col];
            for j in col + 1..ncols {
                let v = m[i][j] * pivot - lead * m[rank][j];
                debug_assert_eq!(v % prev, 0);
                m[i][j] = v / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of `Lambda(R) M`: white rows scaled by `R`, cleared to integers.
pub fn scaled_rank(cm: &ConnectionMatrix, ratio: Q) -> usize {
    let rows: Vec<Vec<i64>> = cm
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if i < cm.blacks {
                row.clone()
            } else {
                row.iter().map(|&x| x * ratio.numer()).collect()
            }
        })
        .collect();
    rank_int(&rows)
}

/// Affine solution space of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub particular: Vec<Q>,
    pub kernel: Vec<Vec<Q>>,
    /// A strictly positive solution, when the bounded search finds one.
    pub positive_witness: Option<Vec<Q>>,
}

/// Solves `A x = rhs` exactly by Gauss-Jordan elimination. Free variables
/// are zero in the particular solution; the kernel has one vector per free
/// column.
pub fn solve_linear(a: &[Vec<Q>], rhs: &[Q]) -> Result<SolutionSpace, BalanceError> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(*b);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..=ncols {
                    let delta = f * m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(BalanceError::Infeasible);
    }
    let mut particular = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][ncols];
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f];
            }
            v
        })
        .collect::<Vec<_>>();
    let positive_witness = search_positive(&particular, &kernel);
    Ok(SolutionSpace {
        particular,
        kernel,
        positive_witness,
    })
}

const GRID_BUDGET: u64 = 200_000;

/// Looks for `x0 + sum c_i k_i > 0` with each `c_i` on a grid of step
/// `1/den`, `den` doubling up to 64. A `None` is not a proof of absence.
fn search_positive(x0: &[Q], kernel: &[Vec<Q>]) -> Option<Vec<Q>> {
    let positive = |v: &[Q]| v.iter().all(|x| x.is_positive());
    if positive(x0) {
        return Some(x0.to_vec());
    }
    if kernel.is_empty() {
        return None;
    }
    let combine = |c: &[Q]| -> Vec<Q> {
        let mut v = x0.to_vec();
        for (ci, k) in c.iter().zip(kernel) {
            for (x, y) in v.iter_mut().zip(k) {
                *x += *ci * *y;
            }
        }
        v
    };
    if kernel.len() == 1 {
        return interval_witness(x0, &kernel[0]).map(|c| combine(&[c]));
    }
    let bound = x0
        .iter()
        .map(|x| x.abs().ceil().to_integer())
        .max()
        .unwrap_or(0)
        + 1;
    let dim = kernel.len() as u32;
    let mut den = 1i64;
    while den <= 64 {
        let side = (2 * bound * den + 1) as u64;
        let total = side.checked_pow(dim).filter(|&t| t <= GRID_BUDGET)?;
        let mut idx = vec![0u64; kernel.len()];
        for _ in 0..total {
            let c: Vec<Q> = idx
                .iter()
                .map(|&i| Q::new(i as i64 - bound * den, den))
                .collect();
            let v = combine(&c);
            if positive(&v) {
                return Some(v);
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < side {
                    break;
                }
                *slot = 0;
            }
        }
        den *= 2;
    }
    None
}

/// Exact open interval of `c` with `x0 + c k > 0`; returns its simplest
/// interior point.
fn interval_witness(x0: &[Q], k: &[Q]) -> Option<Q> {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for (x, y) in x0.iter().zip(k) {
        if y.is_zero() {
            if !x.is_positive() {
                return None;
            }
            continue;
        }
        let t = -*x / *y;
        if y.is_positive() {
            lo = Some(lo.map_or(t, |l| l.max(t)));
        } else {
            hi = Some(hi.map_or(t, |h| h.min(t)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l < h => Some(simplest_between(l, h)),
        (Some(_), Some(_)) => None,
        (Some(l), None) => Some(l.floor() + Q::one()),
        (None, Some(h)) => Some(h.ceil() - Q::one()),
        (None, None) => Some(Q::zero()),
    }
}

/// Rational with the smallest denominator strictly inside `(lo, hi)`.
fn simplest_between(lo: Q, hi: Q) -> Q {
    let mut den = 1i64;
    loop {
        let n = (lo * Q::from_integer(den)).floor().to_integer() + 1;
        let c = Q::new(n, den);
        if c < hi {
            return c;
        }
        den += 1;
    }
}

/// Solves `Lambda(R) M W = beta`, with `beta` indexed by vertex id.
pub fn solve_balance(
    a: &MixedAngulation,
    ratio: Q,
    beta: &[Q],
) -> Result<SolutionSpace, BalanceError> {
    if beta.len() != a.num_vertices() {
        return Err(BalanceError::BadTargets(format!(
            "{} targets for {} vertices",
            beta.len(),
            a.num_vertices()
        )));
    }
    if ratio.is_negative() || ratio >= Q::one() {
        return Err(BalanceError::BadTargets("ratio outside [0, 1)".into()));
    }
    if beta.iter().any(|b| b.is_negative()) {
        return Err(BalanceError::BadTargets("negative target".into()));
    }
    let cm = connection_matrix(a);
    if ratio.is_zero()
        && cm.row_vertex[cm.blacks..]
            .iter()
            .any(|&v| !beta[v].is_zero())
    {
        return Err(BalanceError::BadTargets(
            "ratio zero needs zero targets at white vertices".into(),
        ));
    }
    let rows: Vec<Vec<Q>> = cm
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let s = if i < cm.blacks { Q::one() } else { ratio };
            row.iter().map(|&x| s * Q::from_integer(x)).collect()
        })
        .collect();
    let rhs: Vec<Q> = cm.row_vertex.iter().map(|&v| beta[v]).collect();
    solve_linear(&rows, &rhs)
}

/// `b - rank(M)`, checked against `2g + j0 - 1`. Needs a positive ratio.
pub fn weight_space_dimension(d: &DataSet) -> Result<usize, BalanceError> {
    if d.ratio().is_zero() {
        return Err(BalanceError::BadTargets("ratio zero".into()));
    }
    let a = d.angulation();
    let rank = rank_int(&connection_matrix(a).rows);
    let dim = a.num_arcs() - rank;
    let expected = 2 * a.genus() as usize + a.num_faces() - 1;
    if dim != expected {
        return Err(BalanceError::AssertionFailure(format!(
            "b - rank = {dim}, expected {expected}"
        )));
    }
    Ok(dim)
}

/// Abstract bi-colored tree: blacks `0..blacks`, whites `0..whites`, edges
/// as `(black, white)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicoloredTree {
    pub blacks: usize,
    pub whites: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BicoloredTree {
    pub fn is_tree(&self) -> bool {
        let n = self.blacks + self.whites;
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(x, y) in &self.edges {
            if x >= self.blacks || y >= self.whites {
                return false;
            }
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, self.blacks + y));
            if rx == ry {
                return false;
            }
            parent[rx] = ry;
        }
        true
    }
}

/// Integer weights with black sums `q` and white sums `p`, found by peeling
/// leaves round by round. Infeasible when some weight is not positive.
pub fn solve_tree(tree: &BicoloredTree, p: i64, q: i64) -> Result<Vec<i64>, BalanceError> {
    if !tree.is_tree() {
        return Err(BalanceError::NotATree);
    }
    let nb = tree.blacks;
    let n = nb + tree.whites;
    let mut residual: Vec<i64> = (0..n).map(|v| if v < nb { q } else { p }).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(x, y)) in tree.edges.iter().enumerate() {
        incident[x].push(e);
        incident[nb + y].push(e);
    }
    let ends = |e: usize| (tree.edges[e].0, nb + tree.edges[e].1);
    let mut weight: Vec<Option<i64>> = vec![None; tree.edges.len()];
    let mut open: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut alive = vec![true; n];
    let mut remaining = tree.edges.len();
    while remaining > 0 {
        let leaves: Vec<usize> = (0..n).filter(|&v| alive[v] && open[v] == 1).collect();
        for v in leaves {
            if !alive[v] || open[v] != 1 {
                continue;
            }
            let e = *incident[v]
                .iter()
                .find(|&&e| weight[e].is_none())
                .expect("leaf has one open edge");
            let w = residual[v];
            if w <= 0 {
                return Err(BalanceError::Infeasible);
            }
            weight[e] = Some(w);
            remaining -= 1;
            let (x, y) = ends(e);
            let u = if x == v { y } else { x };
            residual[v] = 0;
            residual[u] -= w;
            open[v] = 0;
            open[u] -= 1;
            alive[v] = false;
        }
    }
    if residual.iter().any(|&r| r != 0) {
        return Err(BalanceError::Infeasible);
    }
    Ok(weight.into_iter().map(|w| w.expect("all edges peeled")).collect())
}

/// Whether every weight is divisible by `lambda`.
pub fn divisibility_check(weights: &[i64], lambda: i64) -> bool {
    lambda != 0 && weights.iter().all(|w| w % lambda == 0)
}
