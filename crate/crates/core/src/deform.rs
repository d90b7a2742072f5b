//! Level circles, twists along them and splitting of integral extremal
//! vertices, all in exact arithmetic.
//!
//! Each arc is a bigon with coordinates `(phi, s)`: `phi` in `[0, W]` runs
//! counter-clockwise around the black end, and `s` is the normalized level
//! (0 at the black end, 1 at the white end). The side `phi = 0` is the right
//! side of the arc and carries the saddle of the right face at its level; the
//! side `phi = W` carries the saddle of the left face.

use crate::angulation::{Arc, Color, Dart, End, MixedAngulation};
use crate::dataset::DataSet;
use crate::rational::{fmt_q, q_mod, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("level {0} is outside (0, 1)")]
    BadLevel(String),
    #[error("level {0} is a saddle level")]
    CriticalLevel(String),
    #[error("no circle with index {0}")]
    BadCircleIndex(usize),
    #[error("twist is not generic: a meridian from the saddle of face {from} reaches the saddle of face {to}")]
    NonGeneric { from: String, to: String },
    #[error("vertex {0} does not exist")]
    BadVertex(usize),
    #[error("cone angle {0} is not an integer greater than one")]
    NotInteger(String),
    #[error("offset must lie in [0, 1)")]
    BadOffset,
    #[error("a cut falls on the boundary of a bigon")]
    CutOnBoundary,
    #[error("cannot split a cusp")]
    CuspVertex,
    #[error("surgery failed: {0}")]
    Internal(String),
}

/// One component of a level set: arcs in the order met while `phi` grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCircle {
    pub arcs: Vec<usize>,
    pub circumference: Q,
}

fn check_level(d: &DataSet, c: Q) -> Result<(), DeformError> {
    if c <= Q::zero() || c >= Q::one() {
        return Err(DeformError::BadLevel(fmt_q(&c)));
    }
    if d.levels().contains(&c) {
        return Err(DeformError::CriticalLevel(fmt_q(&c)));
    }
    Ok(())
}

/// Bigon met next along the level `c` after leaving `e` through `phi = W`.
fn next_along(d: &DataSet, c: Q, e: usize) -> usize {
    let a = d.angulation();
    if c < d.level(a.left_face(e)) {
        a.succ_black(e)
    } else {
        a.pred_white(e)
    }
}

/// Components of the level set at a non-critical level, sorted by their
/// smallest arc; each starts at that arc.
pub fn circles_at_level(d: &DataSet, c: Q) -> Result<Vec<LevelCircle>, DeformError> {
    check_level(d, c)?;
    let n = d.angulation().num_arcs();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut arcs = Vec::new();
        let mut e = start;
        loop {
            seen[e] = true;
            arcs.push(e);
            e = next_along(d, c, e);
            if e == start {
                break;
            }
        }
        let circumference = arcs.iter().map(|&e| d.weight(e)).sum();
        out.push(LevelCircle {
            arcs,
            circumference,
        });
    }
    Ok(out)
}

/// True when one side of the circle holds no saddle, so every twist along it
/// gives back the same surface.
pub fn twist_is_trivial(d: &DataSet, c: Q, index: usize) -> Result<bool, DeformError> {
    let circles = circles_at_level(d, c)?;
    let circle = circles.get(index).ok_or(DeformError::BadCircleIndex(index))?;
    let a = d.angulation();
    let above: Vec<bool> = circle
        .arcs
        .iter()
        .map(|&e| c < d.level(a.left_face(e)))
        .collect();
    Ok(above.iter().all(|&x| x) || above.iter().all(|&x| !x))
}

/// Positions around each vertex, in weight units.
struct Charts {
    /// Start of each arc around its black end (counter-clockwise).
    black_offset: Vec<Q>,
    /// Start of each arc around its white end (clockwise, the direction of
    /// growing `phi`).
    white_offset: Vec<Q>,
    total: Vec<Q>,
}

impl Charts {
    fn new(d: &DataSet) -> Charts {
        let a = d.angulation();
        let mut black_offset = vec![Q::zero(); a.num_arcs()];
        let mut white_offset = vec![Q::zero(); a.num_arcs()];
        let mut total = vec![Q::zero(); a.num_vertices()];
        for v in 0..a.num_vertices() {
            let rot = a.rotation(v);
            let order: Vec<Dart> = match a.color(v) {
                Color::Black => rot.to_vec(),
                Color::White => rot.iter().rev().copied().collect(),
            };
            let mut acc = Q::zero();
            for dart in order {
                match a.color(v) {
                    Color::Black => black_offset[dart.arc] = acc,
                    Color::White => white_offset[dart.arc] = acc,
                }
                acc += d.weight(dart.arc);
            }
            total[v] = acc;
        }
        Charts {
            black_offset,
            white_offset,
            total,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    arc: usize,
    phi: Q,
    level: Q,
}

enum Hit {
    Vertex(usize, Q),
    Saddle(usize),
}

struct Tracer<'a> {
    d: &'a DataSet,
    charts: Charts,
    level: Q,
    psi: Q,
    period: Q,
    /// Position of each arc in the twisted circle, with its start `T`.
    slot: Vec<Option<Q>>,
    circle: &'a LevelCircle,
}

impl Tracer<'_> {
    fn boundary_face(&self, p: &Pos) -> Option<usize> {
        let a = self.d.angulation();
        if p.phi.is_zero() {
            Some(a.right_face(p.arc))
        } else if p.phi == self.d.weight(p.arc) {
            Some(a.left_face(p.arc))
        } else {
            None
        }
    }

    fn relocate(&self, t: Q) -> Pos {
        let t = q_mod(t, self.period);
        let mut start = Q::zero();
        for &e in &self.circle.arcs {
            let w = self.d.weight(e);
            if t < start + w {
                return Pos {
                    arc: e,
                    phi: t - start,
                    level: self.level,
                };
            }
            start += w;
        }
        unreachable!("t reduced modulo the circumference")
    }

    fn run(&self, mut p: Pos, down: bool) -> Hit {
        let a = self.d.angulation();
        loop {
            let saddle = self.boundary_face(&p).and_then(|f| {
                let s = self.d.level(f);
                let ahead = if down { s > p.level } else { s < p.level };
                ahead.then_some((s, f))
            });
            let crosses = match self.slot[p.arc] {
                Some(_) if down => self.level > p.level,
                Some(_) => self.level < p.level,
                None => false,
            };
            let circle_first = crosses
                && saddle.is_none_or(|(s, _)| if down { self.level < s } else { self.level > s });
            if circle_first {
                let t = self.slot[p.arc].expect("arc on circle") + p.phi;
                let shift = if down { -self.psi } else { self.psi };
                p = self.relocate(t + shift);
                continue;
            }
            if let Some((_, f)) = saddle {
                return Hit::Saddle(f);
            }
            let arc = a.arc(p.arc);
            return if down {
                let total = self.charts.total[arc.white];
                Hit::Vertex(arc.white, q_mod(self.charts.white_offset[p.arc] + p.phi, total))
            } else {
                let total = self.charts.total[arc.black];
                Hit::Vertex(arc.black, q_mod(self.charts.black_offset[p.arc] + p.phi, total))
            };
        }
    }

    /// Point at a given angle around a black vertex, at the top.
    fn start_at_black(&self, x: usize, angle: Q) -> Pos {
        let a = self.d.angulation();
        for dart in a.rotation(x) {
            let start = self.charts.black_offset[dart.arc];
            let w = self.d.weight(dart.arc);
            if angle >= start && angle < start + w {
                return Pos {
                    arc: dart.arc,
                    phi: angle - start,
                    level: Q::zero(),
                };
            }
        }
        unreachable!("angle within the total")
    }
}

/// New arc produced by a surgery, with the saddles on its two sides.
struct ArcSpec {
    black: usize,
    white: usize,
    weight: Q,
    right: usize,
    left: usize,
}

/// Builds a data set from arcs, rotations (as indices into `arcs`) and a
/// saddle on each side of each arc; checks that every face sees one saddle.
fn assemble(
    colors: Vec<Color>,
    arcs: &[ArcSpec],
    rotations: Vec<Vec<usize>>,
    saddle_levels: &[Q],
    k0: f64,
    ratio: Q,
) -> Result<DataSet, DeformError> {
    let internal = |m: String| DeformError::Internal(m);
    let rot: Vec<Vec<Dart>> = rotations
        .iter()
        .enumerate()
        .map(|(v, list)| {
            list.iter()
                .map(|&e| Dart::new(e, End::of(colors[v])))
                .collect()
        })
        .collect();
    let arc_list = arcs
        .iter()
        .map(|s| Arc {
            black: s.black,
            white: s.white,
        })
        .collect();
    let a = MixedAngulation::build(colors, arc_list, rot).map_err(|e| internal(e.to_string()))?;
    let mut face_saddle = vec![None; a.num_faces()];
    for (e, spec) in arcs.iter().enumerate() {
        for (dart, s) in [(Dart::b(e), spec.right), (Dart::w(e), spec.left)] {
            let f = a.face_of(dart);
            match face_saddle[f] {
                None => face_saddle[f] = Some(s),
                Some(t) if t == s => {}
                Some(_) => return Err(internal("face meets two saddles".into())),
            }
        }
    }
    let mut used = vec![false; saddle_levels.len()];
    let mut levels = Vec::with_capacity(a.num_faces());
    for s in face_saddle {
        let s = s.ok_or_else(|| internal("face without saddle".into()))?;
        if std::mem::replace(&mut used[s], true) {
            return Err(internal("saddle on two faces".into()));
        }
        levels.push(saddle_levels[s]);
    }
    let weights = arcs.iter().map(|s| s.weight).collect();
    DataSet::new(a, k0, ratio, weights, levels).map_err(|r| internal(r.to_string()))
}

/// Cuts along the circle `index` at level `c` and reglues after rotating the
/// lower side by `psi`: a meridian reaching the circle from above at position
/// `t` continues below at `t - psi`.
pub fn twist(d: &DataSet, c: Q, index: usize, psi: Q) -> Result<DataSet, DeformError> {
    let circles = circles_at_level(d, c)?;
    let circle = circles.get(index).ok_or(DeformError::BadCircleIndex(index))?;
    let a = d.angulation();
    let mut slot = vec![None; a.num_arcs()];
    let mut acc = Q::zero();
    for &e in &circle.arcs {
        slot[e] = Some(acc);
        acc += d.weight(e);
    }
    let tracer = Tracer {
        d,
        charts: Charts::new(d),
        level: c,
        psi: q_mod(psi, circle.circumference),
        period: circle.circumference,
        slot,
        circle,
    };
    let key = |f: usize| a.faces()[f].key.to_string();

    // Each arc's right side carries one meridian up and one down from its saddle.
    let mut tops: BTreeMap<usize, Vec<(Q, usize)>> = BTreeMap::new();
    let mut bottoms: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for e in 0..a.num_arcs() {
        let f = a.right_face(e);
        let start = Pos {
            arc: e,
            phi: Q::zero(),
            level: d.level(f),
        };
        for down in [false, true] {
            match tracer.run(start, down) {
                Hit::Saddle(g) => {
                    return Err(DeformError::NonGeneric {
                        from: key(f),
                        to: key(g),
                    })
                }
                Hit::Vertex(v, ang) if down => bottoms.entry(v).or_default().push(ang),
                Hit::Vertex(v, ang) => tops.entry(v).or_default().push((ang, f)),
            }
        }
    }

    let mut specs = Vec::new();
    let mut white_pos: Vec<Vec<(Q, usize)>> = vec![Vec::new(); a.num_vertices()];
    let mut black_rot: Vec<Vec<usize>> = vec![Vec::new(); a.num_vertices()];
    for (&x, prongs) in tops.iter_mut() {
        prongs.sort();
        let total = tracer.charts.total[x];
        for i in 0..prongs.len() {
            let (lo, right) = prongs[i];
            let (hi, left) = if i + 1 < prongs.len() {
                prongs[i + 1]
            } else {
                (prongs[0].0 + total, prongs[0].1)
            };
            if hi == lo {
                return Err(DeformError::Internal("coincident meridians".into()));
            }
            let mid = q_mod((lo + hi) / Q::from_integer(2), total);
            let Hit::Vertex(y, omega) = tracer.run(tracer.start_at_black(x, mid), true) else {
                return Err(DeformError::Internal("generic meridian hit a saddle".into()));
            };
            let id = specs.len();
            specs.push(ArcSpec {
                black: x,
                white: y,
                weight: hi - lo,
                right,
                left,
            });
            black_rot[x].push(id);
            white_pos[y].push((omega, id));
        }
    }
    // Around a white vertex the boundaries of the new bigons must be exactly
    // the downward meridians.
    for (y, list) in white_pos.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        let total = tracer.charts.total[y];
        let mut edges: Vec<Q> = list
            .iter()
            .map(|&(m, id)| q_mod(m - specs[id].weight / Q::from_integer(2), total))
            .collect();
        let mut expected = bottoms.get(&y).cloned().unwrap_or_default();
        edges.sort();
        expected.sort();
        if edges != expected {
            return Err(DeformError::Internal(format!("white vertex {y} is inconsistent")));
        }
    }
    let colors: Vec<Color> = (0..a.num_vertices()).map(|v| a.color(v)).collect();
    let rotations = (0..a.num_vertices())
        .map(|v| match colors[v] {
            Color::Black => black_rot[v].clone(),
            Color::White => {
                let mut l = white_pos[v].clone();
                l.sort();
                l.iter().rev().map(|&(_, id)| id).collect()
            }
        })
        .collect();
    assemble(colors, &specs, rotations, d.levels(), d.k0(), d.ratio())
}

/// Splits an extremal vertex of integral cone angle `alpha > 1` into `alpha`
/// smooth extremal vertices and one new saddle of angle `alpha` at level
/// `s_star`.
///
/// Positions around the vertex are measured in weight units from the start of
/// its smallest arc (counter-clockwise at a black vertex, clockwise at a
/// white one). The cuts sit at `(offset + j) / c` for `j < alpha`, where `c`
/// is 1 at a black vertex and the ratio at a white vertex.
pub fn split(d: &DataSet, vertex: usize, offset: Q, s_star: Q) -> Result<DataSet, DeformError> {
    let a = d.angulation();
    if vertex >= a.num_vertices() {
        return Err(DeformError::BadVertex(vertex));
    }
    if s_star <= Q::zero() || s_star >= Q::one() {
        return Err(DeformError::BadLevel(fmt_q(&s_star)));
    }
    if offset < Q::zero() || offset >= Q::one() {
        return Err(DeformError::BadOffset);
    }
    let color = a.color(vertex);
    if color == Color::White && d.ratio().is_zero() {
        return Err(DeformError::CuspVertex);
    }
    let angle = d.vertex_angle(vertex);
    if !angle.is_integer() || angle <= Q::one() {
        return Err(DeformError::NotInteger(fmt_q(&angle)));
    }
    let count = angle.to_integer();
    let spacing = match color {
        Color::Black => Q::one(),
        Color::White => d.ratio().recip(),
    };
    let period = spacing * Q::from_integer(count);

    // Arcs around the vertex in the direction of growing phi, from the smallest.
    let mut order: Vec<usize> = match color {
        Color::Black => a.rotation(vertex).iter().map(|x| x.arc).collect(),
        Color::White => a.rotation(vertex).iter().rev().map(|x| x.arc).collect(),
    };
    let first = order
        .iter()
        .enumerate()
        .min_by_key(|(_, &e)| e)
        .map(|(i, _)| i)
        .expect("vertex has arcs");
    order.rotate_left(first);
    let cuts: Vec<Q> = (0..count)
        .map(|j| (offset + Q::from_integer(j)) * spacing)
        .collect();

    // Pieces: (old arc, phi range, sector).
    struct Piece {
        arc: usize,
        lo: Q,
        hi: Q,
        sector: usize,
    }
    let mut pieces_of: BTreeMap<usize, Vec<Piece>> = BTreeMap::new();
    let mut start = Q::zero();
    for &e in &order {
        let w = d.weight(e);
        if cuts.contains(&start) {
            return Err(DeformError::CutOnBoundary);
        }
        let mut marks = vec![Q::zero()];
        marks.extend(
            cuts.iter()
                .filter(|&&c| c > start && c < start + w)
                .map(|&c| c - start),
        );
        marks.push(w);
        let list = pieces_of.entry(e).or_default();
        for pair in marks.windows(2) {
            let pos = q_mod(start + pair[0] - cuts[0], period);
            let sector = (pos / spacing).floor().to_integer() as usize;
            list.push(Piece {
                arc: e,
                lo: pair[0],
                hi: pair[1],
                sector,
            });
        }
        start += w;
    }

    // New vertices: the split vertex keeps its id for sector 0.
    let mut colors: Vec<Color> = (0..a.num_vertices()).map(|v| a.color(v)).collect();
    let mut sector_vertex = vec![vertex];
    for _ in 1..count {
        colors.push(color);
        sector_vertex.push(colors.len() - 1);
    }
    let new_saddle = a.num_faces();
    let mut saddle_levels = d.levels().to_vec();
    saddle_levels.push(s_star);

    let mut specs = Vec::new();
    let mut ids_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut sector_members: Vec<Vec<(Q, usize)>> = vec![Vec::new(); count as usize];
    let mut starts: BTreeMap<usize, Q> = BTreeMap::new();
    let mut acc = Q::zero();
    for &e in &order {
        starts.insert(e, acc);
        acc += d.weight(e);
    }
    for e in 0..a.num_arcs() {
        let arc = a.arc(e);
        let Some(pieces) = pieces_of.get(&e) else {
            let id = specs.len();
            specs.push(ArcSpec {
                black: arc.black,
                white: arc.white,
                weight: d.weight(e),
                right: a.right_face(e),
                left: a.left_face(e),
            });
            ids_of.insert(e, vec![id]);
            continue;
        };
        let mut ids = Vec::new();
        for piece in pieces {
            let q = sector_vertex[piece.sector];
            let (black, white) = match color {
                Color::Black => (q, arc.white),
                Color::White => (arc.black, q),
            };
            let id = specs.len();
            specs.push(ArcSpec {
                black,
                white,
                weight: piece.hi - piece.lo,
                right: if piece.lo.is_zero() { a.right_face(e) } else { new_saddle },
                left: if piece.hi == d.weight(e) { a.left_face(e) } else { new_saddle },
            });
            let pos = q_mod(starts[&piece.arc] + piece.lo - cuts[0], period);
            sector_members[piece.sector].push((pos, id));
            ids.push(id);
        }
        ids_of.insert(e, ids);
    }

    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); colors.len()];
    for v in 0..a.num_vertices() {
        if v == vertex {
            continue;
        }
        for dart in a.rotation(v) {
            let ids = &ids_of[&dart.arc];
            // Pieces are stored by growing phi, which is counter-clockwise at
            // a black end and clockwise at a white end.
            match a.color(v) {
                Color::Black => rotations[v].extend(ids.iter()),
                Color::White => rotations[v].extend(ids.iter().rev()),
            }
        }
    }
    for (j, members) in sector_members.iter_mut().enumerate() {
        members.sort();
        let ids = members.iter().map(|&(_, id)| id);
        let v = sector_vertex[j];
        rotations[v] = match color {
            Color::Black => ids.collect(),
            Color::White => ids.rev().collect(),
        };
    }
    assemble(colors, &specs, rotations, &saddle_levels, d.k0(), d.ratio())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::tests::calabi;
    use crate::dataset::{census, realized_angle_vector};

    #[test]
    fn calabi_circles() {
        let d = calabi();
        let below = circles_at_level(&d, Q::new(1, 4)).unwrap();
        assert_eq!(below.len(), 3);
        assert!(below.iter().all(|c| c.circumference == Q::one()));
        let above = circles_at_level(&d, Q::new(3, 4)).unwrap();
        assert_eq!(above.len(), 2);
        assert!(above.iter().all(|c| c.circumference == Q::new(3, 2)));
        assert_eq!(
            circles_at_level(&d, Q::new(1, 2)),
            Err(DeformError::CriticalLevel("1/2".into()))
        );
    }

    #[test]
    fn calabi_twists_are_trivial() {
        let d = calabi();
        for c in [Q::new(1, 4), Q::new(3, 4)] {
            for i in 0..circles_at_level(&d, c).unwrap().len() {
                assert!(twist_is_trivial(&d, c, i).unwrap());
                let t = twist(&d, c, i, Q::new(1, 3)).unwrap();
                assert!(t.is_isomorphic(&d));
            }
        }
    }

    fn two_level_twist(psi: Q) -> Result<DataSet, DeformError> {
        twist(&crate::dataset::tests::two_level(), Q::new(1, 2), 0, psi)
    }

    #[test]
    fn two_level_circles() {
        let d = crate::dataset::tests::two_level();
        let cs = circles_at_level(&d, Q::new(1, 2)).unwrap();
        let arcs: Vec<_> = cs.iter().map(|c| c.arcs.clone()).collect();
        assert_eq!(arcs, vec![vec![0, 2], vec![1], vec![3]]);
        let trivial: Vec<_> = (0..3)
            .map(|i| twist_is_trivial(&d, Q::new(1, 2), i).unwrap())
            .collect();
        assert_eq!(trivial, vec![false, true, true]);
    }

    #[test]
    fn nontrivial_twist_moves_weights() {
        let d = crate::dataset::tests::two_level();
        let t = two_level_twist(Q::new(1, 8)).unwrap();
        assert!(!t.is_isomorphic(&d));
        let mut w = t.weights().to_vec();
        w.sort();
        assert_eq!(w, vec![Q::new(3, 8), Q::new(5, 8), Q::one(), Q::one()]);
        assert_eq!(realized_angle_vector(&t), realized_angle_vector(&d));
        assert_eq!(census(&t).unwrap(), census(&d).unwrap());
    }

    #[test]
    fn full_turn_is_identity() {
        let d = crate::dataset::tests::two_level();
        assert!(two_level_twist(Q::one()).unwrap().is_isomorphic(&d));
        assert!(two_level_twist(Q::zero()).unwrap().is_isomorphic(&d));
    }

    #[test]
    fn saddle_connection_is_reported() {
        assert!(matches!(
            two_level_twist(Q::new(1, 2)),
            Err(DeformError::NonGeneric { .. })
        ));
    }

    #[test]
    fn twists_compose() {
        let once = two_level_twist(Q::new(1, 8)).unwrap();
        let target = two_level_twist(Q::new(3, 8)).unwrap();
        let c = Q::new(1, 2);
        let n = circles_at_level(&once, c).unwrap().len();
        assert!((0..n).any(|i| twist(&once, c, i, Q::new(1, 4))
            .is_ok_and(|t| t.is_isomorphic(&target))));
    }

    #[test]
    fn zero_twist_is_identity() {
        let d = calabi();
        let t = twist(&d, Q::new(1, 4), 0, Q::zero()).unwrap();
        assert!(t.is_isomorphic(&d));
    }

    #[test]
    fn split_makes_two_saddles() {
        let alpha = crate::constraints::AngleVector::new(vec![Q::from_integer(2), Q::from_integer(3)]).unwrap();
        let d = crate::builder::build_surface(0, &alpha, &[0].into()).unwrap();
        let x = (0..d.angulation().num_vertices())
            .find(|&v| d.vertex_angle(v) == Q::from_integer(3))
            .unwrap();
        let s = split(&d, x, Q::new(1, 2), Q::new(1, 3)).unwrap();
        let (got, t) = realized_angle_vector(&s);
        assert_eq!(got.entries(), &[Q::from_integer(3), Q::from_integer(2)]);
        assert_eq!(t.saddles.len(), 2);
        let c = census(&s).unwrap();
        assert_eq!((c.m, c.a, c.b), (5, 5, 5));
        let mut degrees: Vec<_> = s.angulation().faces().iter().map(|f| f.degree()).collect();
        degrees.sort();
        assert_eq!(degrees, vec![4, 6]);
        assert_eq!(split(&d, x, Q::zero(), Q::new(1, 3)), Err(DeformError::CutOnBoundary));
    }

    #[test]
    fn split_rejects_non_integer_angles() {
        let d = calabi();
        assert!(matches!(
            split(&d, 0, Q::new(1, 2), Q::new(1, 3)),
            Err(DeformError::NotInteger(_))
        ));
    }
}
