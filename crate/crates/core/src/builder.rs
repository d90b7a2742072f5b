//! Explicit constructions of weighted mixed angulations.

use crate::angulation::{canonical_angulation, Color, Dart, EmbeddedGraph, MixedAngulation};
use crate::balance::{solve_tree, BicoloredTree};
use crate::constraints::{check_refined, one_cone_admissible, AngleVector, ConstraintError};
use crate::dataset::DataSet;
use crate::rational::{gcd, Q};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("order vector incompatible with the polygon: {0}")]
    Incompatible(String),
    #[error("bad order vector: {0}")]
    BadOrderVector(String),
    #[error("no surface with this prescription")]
    EmptySpace,
    #[error("p and q are not coprime")]
    NotCoprime,
    #[error("need p > q >= 1: {0}")]
    BadOrder(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("tree enumeration limited to 12 vertices")]
    TooLarge,
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error("construction failed: {0}")]
    Internal(String),
}

const DEFAULT_K0: f64 = 1.0;

fn default_levels(a: &MixedAngulation) -> Vec<Q> {
    vec![Q::new(1, 2); a.num_faces()]
}

fn finish(
    graph: EmbeddedGraph,
    ratio: Q,
    weight_of: impl Fn(&MixedAngulation, usize) -> Q,
) -> Result<DataSet, BuildError> {
    let a = MixedAngulation::from_graph(graph).map_err(|e| BuildError::Internal(e.to_string()))?;
    let weights = (0..a.num_arcs()).map(|e| weight_of(&a, e)).collect();
    let levels = default_levels(&a);
    DataSet::new(a, DEFAULT_K0, ratio, weights, levels).map_err(|r| BuildError::Internal(r.to_string()))
}

fn first_corner_of(g: &EmbeddedGraph, walk: &[Dart], color: Color) -> Dart {
    *walk
        .iter()
        .find(|&&d| g.color(g.tail(d)) == color)
        .expect("polygons alternate colors")
}

/// Subdivides the face traced from `start` (a `2K`-gon) into faces whose
/// orders `deg - 2` are the entries of `w`, using diagonals and pendant
/// black vertices on white corners.
pub fn subdivide_face(g: &mut EmbeddedGraph, start: Dart, w: &[u32]) -> Result<(), BuildError> {
    if w.is_empty() {
        return Err(BuildError::BadOrderVector("empty".into()));
    }
    if let Some(x) = w.iter().find(|&&x| x < 2 || x % 2 == 1) {
        return Err(BuildError::BadOrderVector(format!("entry {x} is not an even number >= 2")));
    }
    let walk = g.walk_from(start);
    let two_k = walk.len() as i64;
    let total: i64 = w.iter().map(|&x| x as i64).sum();
    let two_l = total - (two_k - 2);
    if two_l < 0 {
        return Err(BuildError::Incompatible(format!(
            "sum {total} is below {}",
            two_k - 2
        )));
    }
    let w1 = w[0] as i64;
    if w.len() == 1 {
        let corner = first_corner_of(g, &walk, Color::White);
        for _ in 0..two_l / 2 {
            g.insert_pendant(corner);
        }
        return Ok(());
    }
    if w1 < two_k - 2 {
        // Cut off the (w1 + 2)-gon on corners 0 ..= w1 + 1.
        let (_, rest) = g.insert_diagonal(walk[0], walk[(w1 + 1) as usize]);
        return subdivide_face(g, rest, &w[1..]);
    }
    // Split off a bigon along corners 0 and 1, then grow the 2K-gon.
    let (_, big) = g.insert_diagonal(walk[0], walk[1]);
    let big_walk = g.walk_from(big);
    let corner = first_corner_of(g, &big_walk, Color::White);
    for _ in 0..(w1 + 2 - two_k) / 2 {
        g.insert_pendant(corner);
    }
    subdivide_face(g, walk[0], &w[1..])
}

/// A `2K`-gon on the sphere (vertex `0` black) whose inner face is
/// subdivided for the order vector `w`. Returns the graph and a dart on the
/// untouched outer face.
pub fn subdivide_polygon(k: u32, w: &[u32]) -> Result<(EmbeddedGraph, Dart), BuildError> {
    if k == 0 {
        return Err(BuildError::Incompatible("K must be positive".into()));
    }
    let mut g = EmbeddedGraph::new();
    let n = 2 * k as usize;
    for i in 0..n {
        g.add_vertex(if i % 2 == 0 { Color::Black } else { Color::White });
    }
    for i in 0..n {
        g.append_arc(i, (i + 1) % n);
    }
    let inner = Dart::b(0);
    let outer = Dart::w(0);
    if g.walk_from(inner).len() != n {
        return Err(BuildError::Internal("polygon faces".into()));
    }
    subdivide_face(&mut g, inner, w)?;
    Ok((g, outer))
}

/// Builds a surface for `(g, alpha, Z)` with top curvature 1 and all levels
/// one half.
pub fn build_surface(
    genus: u32,
    alpha: &AngleVector,
    saddles: &BTreeSet<usize>,
) -> Result<DataSet, BuildError> {
    if !check_refined(genus, alpha, saddles)?.is_nonempty() {
        return Err(BuildError::EmptySpace);
    }
    if saddles.is_empty() {
        return Err(BuildError::Inadmissible(
            "footballs have no saddle and no angulation".into(),
        ));
    }
    let (m, _, _) = crate::constraints::invariants_m_a(genus, alpha, saddles)?;
    let cusps = alpha.zeros();
    let mut g = canonical_angulation(genus);
    let start = Dart::b(0);
    for _ in 1..cusps.max(1) {
        g.insert_pendant(start);
    }
    let w: Vec<u32> = saddles
        .iter()
        .map(|&i| (2 * alpha.entries()[i].to_integer() - 2) as u32)
        .collect();
    subdivide_face(&mut g, start, &w)?;

    let mut beta: Vec<Q> = (0..alpha.len())
        .filter(|i| !saddles.contains(i))
        .map(|i| alpha.entries()[i])
        .filter(|x| !x.is_zero())
        .collect();
    beta.extend(std::iter::repeat_n(Q::one(), m as usize));
    beta.sort_by(|x, y| y.cmp(x));

    let ratio = if cusps > 0 {
        Q::zero()
    } else {
        let min = beta.pop().ok_or_else(|| BuildError::Internal("no extremal point".into()))?;
        let rest: Q = beta.iter().sum();
        min / rest
    };
    let blacks: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| g.color(v) == Color::Black)
        .collect();
    if blacks.len() != beta.len() {
        return Err(BuildError::Internal(format!(
            "{} black vertices for {} maximum angles",
            blacks.len(),
            beta.len()
        )));
    }
    let target: HashMap<usize, Q> = blacks.into_iter().zip(beta).collect();
    finish(g, ratio, |a, e| {
        let x = a.arc(e).black;
        target[&x] / Q::from_integer(a.degree(x) as i64)
    })
}

/// Tree with black sums `q`, white sums `p` for coprime `p > q`, built by
/// walking the two arithmetic progressions.
pub fn build_coprime_tree(p: u64, q: u64) -> Result<(BicoloredTree, Vec<i64>), BuildError> {
    if q == 0 || p <= q {
        return Err(BuildError::BadOrder(format!("p = {p}, q = {q}")));
    }
    if gcd(p, q) != 1 {
        return Err(BuildError::NotCoprime);
    }
    let (p, q) = (p as i64, q as i64);
    let mut edges = vec![(0usize, 0usize)];
    let mut weights = vec![q];
    let mut acc = q;
    for _ in 2..p + q {
        let i = acc / q;
        let j = acc / p;
        let w = ((j + 1) * p - acc).min((i + 1) * q - acc);
        edges.push((i as usize, j as usize));
        weights.push(w);
        acc += w;
    }
    let tree = BicoloredTree {
        blacks: p as usize,
        whites: q as usize,
        edges,
    };
    Ok((tree, weights))
}

/// Tree with black sums `q`, white sums `p` when `q` does not divide `p`
/// (or `q = 1`). Non-coprime pairs use repeated splitting and grafting.
pub fn build_tree(p: u64, q: u64) -> Result<(BicoloredTree, Vec<i64>), BuildError> {
    if q == 0 || p <= q {
        return Err(BuildError::BadOrder(format!("p = {p}, q = {q}")));
    }
    let lambda = gcd(p, q);
    if lambda == 1 {
        return build_coprime_tree(p, q);
    }
    if p.is_multiple_of(q) {
        return Err(BuildError::Inadmissible("q divides p".into()));
    }
    let (pb, qb) = (p / lambda, q / lambda);
    let (base, bw) = build_coprime_tree(pb, qb)?;
    let deg = |x: usize| base.edges.iter().filter(|e| e.0 == x).count();
    let xi = (0..base.blacks)
        .find(|&x| deg(x) == 2)
        .ok_or_else(|| BuildError::Internal("no black vertex of degree two".into()))?;
    let k = base
        .edges
        .iter()
        .position(|e| e.0 == xi)
        .expect("x_I has edges");
    // Edges of the component hanging from x_I through edge `first`.
    let side = |first: usize| -> Vec<usize> {
        let mut out = vec![first];
        let mut blacks = BTreeSet::from([xi]);
        let mut whites = BTreeSet::from([base.edges[first].1]);
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(x, y)) in base.edges.iter().enumerate() {
                if out.contains(&e) {
                    continue;
                }
                if (whites.contains(&y) && x != xi) || (blacks.contains(&x) && x != xi) {
                    out.push(e);
                    blacks.insert(x);
                    whites.insert(y);
                    changed = true;
                }
            }
        }
        out
    };
    let plus = side(k);
    let minus = side(k + 1);
    let leaf0 = pb as usize - 1;
    if deg(leaf0) != 1 {
        return Err(BuildError::Internal("last black vertex is not a leaf".into()));
    }

    let mut edges: Vec<(usize, usize, i64)> = base
        .edges
        .iter()
        .zip(&bw)
        .map(|(&(x, y), &w)| (x, y, w))
        .collect();
    let (mut nb, mut nw) = (base.blacks, base.whites);
    let mut leaf = leaf0;
    for _ in 1..lambda {
        let pos = edges
            .iter()
            .position(|e| e.0 == leaf)
            .expect("leaf edge present");
        let (_, y, _) = edges.remove(pos);
        let x_plus = leaf;
        let x_minus = nb;
        nb += 1;
        edges.push((x_plus, y, bw[k]));
        edges.push((x_minus, y, bw[k + 1]));
        let mut graft = |part: &[usize], anchor: usize| -> BTreeMap<usize, usize> {
            let mut bmap = BTreeMap::from([(xi, anchor)]);
            let mut wmap = BTreeMap::new();
            for &e in part {
                let (x, y) = base.edges[e];
                let nx = *bmap.entry(x).or_insert_with(|| {
                    nb += 1;
                    nb - 1
                });
                let ny = *wmap.entry(y).or_insert_with(|| {
                    nw += 1;
                    nw - 1
                });
                edges.push((nx, ny, bw[e]));
            }
            bmap
        };
        let minus_map = graft(&minus, x_plus);
        let plus_map = graft(&plus, x_minus);
        leaf = *minus_map
            .get(&leaf0)
            .or_else(|| plus_map.get(&leaf0))
            .ok_or_else(|| BuildError::Internal("leaf copy missing".into()))?;
    }
    let l = lambda as i64;
    let tree = BicoloredTree {
        blacks: nb,
        whites: nw,
        edges: edges.iter().map(|e| (e.0, e.1)).collect(),
    };
    Ok((tree, edges.iter().map(|e| e.2 * l).collect()))
}

/// Planar embedding of a tree: blacks first, then whites; rotations follow
/// edge order.
pub fn tree_graph(tree: &BicoloredTree) -> EmbeddedGraph {
    let mut g = EmbeddedGraph::new();
    for _ in 0..tree.blacks {
        g.add_vertex(Color::Black);
    }
    for _ in 0..tree.whites {
        g.add_vertex(Color::White);
    }
    for &(x, y) in &tree.edges {
        g.append_arc(x, tree.blacks + y);
    }
    g
}

/// Surface with one saddle of angle `p + q + 2g - 1`, `p` smooth maxima and
/// `q` smooth minima.
pub fn build_one_cone(genus: u32, p: u64, q: u64) -> Result<DataSet, BuildError> {
    if q == 0 || p <= q {
        return Err(BuildError::BadOrder(format!("p = {p}, q = {q}")));
    }
    let alpha = p + q + 2 * genus as u64 - 1;
    if !one_cone_admissible(genus, alpha, p, q) {
        return Err(BuildError::Inadmissible("q divides p".into()));
    }
    let ratio = Q::new(q as i64, p as i64);
    let qq = Q::from_integer(q as i64);
    if genus == 0 {
        let (tree, w) = build_tree(p, q)?;
        return finish(tree_graph(&tree), ratio, |_, e| Q::from_integer(w[e]) / qq);
    }
    if q == 1 {
        let av = AngleVector::from_integers(&[alpha as i64])?;
        return build_surface(genus, &av, &BTreeSet::from([0]));
    }
    if !p.is_multiple_of(q) {
        return one_cone_from_tree(genus, p, q, ratio);
    }
    one_cone_from_stars(genus, p, q, ratio)
}

fn one_cone_from_tree(genus: u32, p: u64, q: u64, ratio: Q) -> Result<DataSet, BuildError> {
    let (tree, tw) = build_tree(p, q)?;
    let qq = Q::from_integer(q as i64);
    let leaf = (0..tree.blacks)
        .rev()
        .find(|&x| tree.edges.iter().filter(|e| e.0 == x).count() == 1)
        .ok_or_else(|| BuildError::Internal("tree without black leaf".into()))?;
    let leaf_edge = tree.edges.iter().position(|e| e.0 == leaf).expect("leaf edge");
    let root = tree.edges[leaf_edge].1;

    let mut g = canonical_angulation(genus);
    let handle_arcs = g.num_arcs();
    let mut weights: Vec<Q> = vec![qq / Q::from_integer(handle_arcs as i64); handle_arcs];
    // Graft the rest of the tree at the canonical white vertex (id 1).
    let mut placed_white: HashMap<usize, usize> = HashMap::from([(root, 1)]);
    let mut placed_black: HashMap<usize, usize> = HashMap::new();
    let mut stack = vec![(Color::White, root)];
    while let Some((color, v)) = stack.pop() {
        let here = match color {
            Color::White => placed_white[&v],
            Color::Black => placed_black[&v],
        };
        for (e, &(x, y)) in tree.edges.iter().enumerate() {
            if e == leaf_edge {
                continue;
            }
            let (child_color, child) = match color {
                Color::White if y == v && !placed_black.contains_key(&x) => (Color::Black, x),
                Color::Black if x == v && !placed_white.contains_key(&y) => (Color::White, y),
                _ => continue,
            };
            let corner = g.rotation(here)[0];
            let (new_v, new_e) = g.insert_pendant(corner);
            debug_assert_eq!(new_e, weights.len());
            weights.push(Q::from_integer(tw[e]));
            match child_color {
                Color::Black => placed_black.insert(child, new_v),
                Color::White => placed_white.insert(child, new_v),
            };
            stack.push((child_color, child));
        }
    }
    finish(g, ratio, |_, e| weights[e] / qq)
}

fn one_cone_from_stars(genus: u32, p: u64, q: u64, ratio: Q) -> Result<DataSet, BuildError> {
    let k = (p / q) as usize;
    let qn = q as usize;
    let qq = Q::from_integer(q as i64);
    let half = qq / Q::from_integer(2);
    let mut g = EmbeddedGraph::new();
    let mut y = Vec::new();
    let mut x: Vec<Vec<usize>> = Vec::new();
    for _ in 0..qn {
        y.push(g.add_vertex(Color::White));
        x.push((0..k).map(|_| g.add_vertex(Color::Black)).collect());
    }
    let mut weights = Vec::new();
    for j in 0..qn {
        for i in 0..k {
            g.append_arc(x[j][i], y[j]);
            weights.push(if i == 0 {
                half
            } else if j == 0 && i == k - 1 {
                qq - Q::one()
            } else {
                qq
            });
        }
        if j + 1 < qn {
            g.append_arc(x[j + 1][0], y[j]);
            weights.push(half);
        }
    }
    let hats = 2 * genus as usize - 1;
    let hat_weight = Q::one() / Q::from_integer(hats as i64);
    let closing = (y[qn - 1], x[0][0]);
    let hat = (x[0][k - 1], y[0]);
    add_crossing_pair(&mut g, closing, hat)?;
    weights.push(half);
    weights.push(hat_weight);
    for _ in 0..(hats - 1) / 2 {
        add_crossing_pair(&mut g, hat, hat)?;
        weights.push(hat_weight);
        weights.push(hat_weight);
    }
    finish(g, ratio, |_, e| weights[e] / qq)
}

/// Adds two arcs whose ends interleave around the single face, raising the
/// genus by one and keeping one face.
fn add_crossing_pair(
    g: &mut EmbeddedGraph,
    first: (usize, usize),
    second: (usize, usize),
) -> Result<(), BuildError> {
    let faces = g.faces();
    if faces.len() != 1 {
        return Err(BuildError::Internal("expected a single face".into()));
    }
    let walk = &faces[0].darts;
    let n = walk.len();
    let at = |v: usize| -> Vec<usize> { (0..n).filter(|&i| g.tail(walk[i]) == v).collect() };
    let (a1, b1, a2, b2) = (at(first.0), at(first.1), at(second.0), at(second.1));
    for &i in &a1 {
        for &j in &b1 {
            let inside = |t: usize| {
                let (lo, hi) = (i.min(j), i.max(j));
                lo < t && t < hi
            };
            for &k in &a2 {
                for &l in &b2 {
                    let distinct = [i, j, k, l].iter().collect::<BTreeSet<_>>().len() == 4;
                    if !distinct || inside(k) == inside(l) {
                        continue;
                    }
                    let mut trial = g.clone();
                    trial.insert_diagonal(walk[i], walk[j]);
                    trial.insert_diagonal(walk[k], walk[l]);
                    if trial.faces().len() == 1 {
                        *g = trial;
                        return Ok(());
                    }
                }
            }
        }
    }
    Err(BuildError::Internal("no interleaved corners".into()))
}

fn tree_code(adj: &[Vec<usize>], colors: Option<&[bool]>, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| tree_code(adj, colors, u, v))
        .collect();
    kids.sort();
    let tag = match colors {
        Some(c) if c[v] => "b",
        Some(_) => "w",
        None => "",
    };
    format!("({tag}{})", kids.concat())
}

fn canonical_code(adj: &[Vec<usize>], colors: Option<&[bool]>) -> String {
    (0..adj.len())
        .map(|r| tree_code(adj, colors, r, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// All unlabeled trees on `n` vertices as adjacency lists.
fn free_trees(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut level: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for _ in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.len() {
                let mut u = t.clone();
                let new = u.len();
                u.push(vec![v]);
                u[v].push(new);
                if seen.insert(canonical_code(&u, None)) {
                    next.push(u);
                }
            }
        }
        level = next;
    }
    level
}

/// Every bi-colored tree with `p` blacks and `q` whites, up to color
/// preserving isomorphism, whose balance system has a positive integer
/// solution. Limited to `p + q <= 12`.
pub fn brute_force_trees(p: u64, q: u64) -> Result<Vec<(BicoloredTree, Vec<i64>)>, BuildError> {
    if p + q > 12 {
        return Err(BuildError::TooLarge);
    }
    if p == 0 || q == 0 {
        return Ok(Vec::new());
    }
    let n = (p + q) as usize;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for adj in free_trees(n) {
        let mut parity = vec![false; n];
        let mut order = vec![0usize];
        let mut visited = vec![false; n];
        visited[0] = true;
        while let Some(v) = order.pop() {
            for &u in &adj[v] {
                if !visited[u] {
                    visited[u] = true;
                    parity[u] = !parity[v];
                    order.push(u);
                }
            }
        }
        for flip in [false, true] {
            let black: Vec<bool> = parity.iter().map(|&b| b != flip).collect();
            if black.iter().filter(|&&b| b).count() as u64 != p {
                continue;
            }
            if !seen.insert(canonical_code(&adj, Some(&black))) {
                continue;
            }
            let mut index = vec![0usize; n];
            let (mut nb, mut nw) = (0, 0);
            for v in 0..n {
                if black[v] {
                    index[v] = nb;
                    nb += 1;
                } else {
                    index[v] = nw;
                    nw += 1;
                }
            }
            let mut edges = Vec::new();
            for v in 0..n {
                for &u in &adj[v] {
                    if black[v] && !black[u] {
                        edges.push((index[v], index[u]));
                    }
                }
            }
            edges.sort();
            let tree = BicoloredTree {
                blacks: nb,
                whites: nw,
                edges,
            };
            if let Ok(w) = solve_tree(&tree, p as i64, q as i64) {
                out.push((tree, w));
            }
        }
    }
    Ok(out)
}
