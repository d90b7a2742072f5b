//! Rotation systems of bi-colored graphs on closed oriented surfaces.
//!
//! A dart is one end of an arc, written `<arc>:b` or `<arc>:w`. The rotation
//! at a vertex lists its darts counter-clockwise. Faces are the orbits of
//! `phi = sigma . theta`, where `theta` swaps the two darts of an arc and
//! `sigma` moves to the next dart in the rotation. With this rule a face lies
//! to the right of each of its darts.

use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

/// Which end of an arc a dart sits on. Black sorts before white.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    B,
    W,
}

impl End {
    pub fn of(color: Color) -> End {
        match color {
            Color::Black => End::B,
            Color::White => End::W,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: usize,
    pub end: End,
}

impl Dart {
    pub fn new(arc: usize, end: End) -> Dart {
        Dart { arc, end }
    }

    pub fn b(arc: usize) -> Dart {
        Dart { arc, end: End::B }
    }

    pub fn w(arc: usize) -> Dart {
        Dart { arc, end: End::W }
    }

    pub fn opposite(self) -> Dart {
        let end = match self.end {
            End::B => End::W,
            End::W => End::B,
        };
        Dart { arc: self.arc, end }
    }

    fn index(self) -> usize {
        2 * self.arc + usize::from(self.end == End::W)
    }

    pub fn parse(token: &str) -> Option<Dart> {
        let (a, e) = token.split_once(':')?;
        let arc = a.parse().ok()?;
        let end = match e {
            "b" => End::B,
            "w" => End::W,
            _ => return None,
        };
        Some(Dart { arc, end })
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = if self.end == End::B { 'b' } else { 'w' };
        write!(f, "{}:{}", self.arc, e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub black: usize,
    pub white: usize,
}

/// A face: its key is the smallest dart on the walk, and the walk starts there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub key: Dart,
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AngulationError {
    #[error("arc {arc} does not join a black vertex to a white vertex")]
    NotBipartite { arc: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("face {face} has degree {degree}; faces need even degree at least 4")]
    OddFaceDegree { face: String, degree: usize },
    #[error("Euler characteristic does not give a non-negative integer genus")]
    NonIntegerGenus,
    #[error("malformed rotation system: {0}")]
    Malformed(String),
}

/// Embedded bi-colored graph with no validity guarantees.
///
/// Used as the working state of the surgery routines. Faces of any degree are
/// allowed here; [`MixedAngulation`] performs the checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmbeddedGraph {
    colors: Vec<Color>,
    arcs: Vec<Arc>,
    rotations: Vec<Vec<Dart>>,
}

impl EmbeddedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assembles a graph from raw parts, checking only that every dart sits
    /// in the rotation of its own endpoint exactly once.
    pub fn from_parts(
        colors: Vec<Color>,
        arcs: Vec<Arc>,
        rotations: Vec<Vec<Dart>>,
    ) -> Result<Self, AngulationError> {
        if rotations.len() != colors.len() {
            return Err(AngulationError::Malformed(
                "one rotation per vertex is required".into(),
            ));
        }
        for (i, a) in arcs.iter().enumerate() {
            if a.black >= colors.len() || a.white >= colors.len() {
                return Err(AngulationError::Malformed(format!(
                    "arc {i} references an unknown vertex"
                )));
            }
            if colors[a.black] != Color::Black || colors[a.white] != Color::White {
                return Err(AngulationError::NotBipartite { arc: i });
            }
        }
        let g = EmbeddedGraph {
            colors,
            arcs,
            rotations,
        };
        let mut seen = vec![false; 2 * g.arcs.len()];
        for (v, rot) in g.rotations.iter().enumerate() {
            for &d in rot {
                if d.arc >= g.arcs.len() {
                    return Err(AngulationError::Malformed(format!(
                        "rotation of vertex {v} references unknown arc {}",
                        d.arc
                    )));
                }
                if g.tail(d) != v {
                    return Err(AngulationError::Malformed(format!(
                        "dart {d} listed at vertex {v} but belongs to vertex {}",
                        g.tail(d)
                    )));
                }
                if std::mem::replace(&mut seen[d.index()], true) {
                    return Err(AngulationError::Malformed(format!(
                        "dart {d} listed twice"
                    )));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let d = if i % 2 == 0 { Dart::b(i / 2) } else { Dart::w(i / 2) };
            return Err(AngulationError::Malformed(format!(
                "dart {d} missing from every rotation"
            )));
        }
        Ok(g)
    }

    /// Builds the map whose face permutation is the given cyclic sequence of
    /// darts (covering every dart once); rotations follow from `sigma = phi . theta`.
    pub fn from_single_face(colors: Vec<Color>, arcs: Vec<Arc>, walk: &[Dart]) -> Self {
        let n = walk.len();
        let mut phi = vec![Dart::b(0); n];
        for i in 0..n {
            phi[walk[i].index()] = walk[(i + 1) % n];
        }
        let mut g = EmbeddedGraph {
            colors,
            arcs,
            rotations: Vec::new(),
        };
        g.rotations = vec![Vec::new(); g.colors.len()];
        let mut done = vec![false; n];
        let mut starts: Vec<Dart> = walk.to_vec();
        starts.sort();
        for s in starts {
            if done[s.index()] {
                continue;
            }
            let v = g.tail(s);
            let mut d = s;
            loop {
                done[d.index()] = true;
                g.rotations[v].push(d);
                d = phi[d.opposite().index()];
                if d == s {
                    break;
                }
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn arc(&self, e: usize) -> Arc {
        self.arcs[e]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn tail(&self, d: Dart) -> usize {
        let a = self.arcs[d.arc];
        match d.end {
            End::B => a.black,
            End::W => a.white,
        }
    }

    fn position(&self, d: Dart) -> usize {
        let rot = &self.rotations[self.tail(d)];
        rot.iter()
            .position(|&x| x == d)
            .expect("dart present in its rotation")
    }

    /// Next dart counter-clockwise around the tail vertex.
    pub fn sigma(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.tail(d)];
        rot[(self.position(d) + 1) % rot.len()]
    }

    /// Previous dart counter-clockwise around the tail vertex.
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.tail(d)];
        rot[(self.position(d) + rot.len() - 1) % rot.len()]
    }

    /// Face successor of a dart.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(d.opposite())
    }

    pub fn walk_from(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.phi(start);
        while d != start {
            out.push(d);
            d = self.phi(d);
        }
        out
    }

    /// All faces, sorted by key.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = vec![false; 2 * self.arcs.len()];
        let mut faces = Vec::new();
        for arc in 0..self.arcs.len() {
            for d in [Dart::b(arc), Dart::w(arc)] {
                if seen[d.index()] {
                    continue;
                }
                // Darts are visited in increasing order, so `d` is the key.
                let darts = self.walk_from(d);
                for x in &darts {
                    seen[x.index()] = true;
                }
                faces.push(Face { key: d, darts });
            }
        }
        faces
    }

    pub fn add_vertex(&mut self, color: Color) -> usize {
        self.colors.push(color);
        self.rotations.push(Vec::new());
        self.colors.len() - 1
    }

    fn push_arc(&mut self, u: usize, v: usize) -> usize {
        let (black, white) = if self.colors[u] == Color::Black {
            (u, v)
        } else {
            (v, u)
        };
        assert!(
            self.colors[black] == Color::Black && self.colors[white] == Color::White,
            "arcs must join opposite colors"
        );
        self.arcs.push(Arc { black, white });
        self.arcs.len() - 1
    }

    fn dart_at(&self, arc: usize, v: usize) -> Dart {
        Dart::new(arc, End::of(self.colors[v]))
    }

    fn insert_before(&mut self, corner: Dart, new: Dart) {
        let v = self.tail(corner);
        let pos = self.position(corner);
        self.rotations[v].insert(pos, new);
    }

    /// Adds an arc from a vertex with an empty rotation, or appends to the end
    /// of a rotation. Only meaningful while building trees.
    pub fn append_arc(&mut self, u: usize, v: usize) -> usize {
        let e = self.push_arc(u, v);
        let du = self.dart_at(e, u);
        let dv = self.dart_at(e, v);
        self.rotations[u].push(du);
        self.rotations[v].push(dv);
        e
    }

    /// Attaches a new degree-one vertex in the corner of `tail(corner)` that
    /// sits just before `corner`. Returns `(vertex, arc)`.
    pub fn insert_pendant(&mut self, corner: Dart) -> (usize, usize) {
        let host = self.tail(corner);
        let leaf = self.add_vertex(self.colors[host].opposite());
        let e = self.push_arc(host, leaf);
        let dh = self.dart_at(e, host);
        let dl = self.dart_at(e, leaf);
        self.insert_before(corner, dh);
        self.rotations[leaf].push(dl);
        (leaf, e)
    }

    /// Inserts an arc joining the corners just before `ci` and `cj`.
    ///
    /// When both corners lie on one face `d_0 .. d_{n-1}` with `ci = d_i` and
    /// `cj = d_j`, `i < j`, the face splits into `d_i .. d_{j-1}` closed by the
    /// dart at `tail(cj)` and `d_j .. d_{i-1}` closed by the dart at `tail(ci)`.
    /// Returns the new arc and its dart at `tail(ci)`.
    pub fn insert_diagonal(&mut self, ci: Dart, cj: Dart) -> (usize, Dart) {
        let u = self.tail(ci);
        let v = self.tail(cj);
        let e = self.push_arc(u, v);
        let du = self.dart_at(e, u);
        let dv = self.dart_at(e, v);
        self.insert_before(ci, du);
        self.insert_before(cj, dv);
        (e, du)
    }

    /// Number of connected components that contain at least one vertex.
    pub fn components(&self) -> usize {
        let n = self.colors.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arcs {
            adj[a.black].push(a.white);
            adj[a.white].push(a.black);
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }

    /// `2 - V + A - F`, twice the genus when the graph is connected.
    pub fn euler_defect(&self) -> i64 {
        2 - self.colors.len() as i64 + self.arcs.len() as i64 - self.faces().len() as i64
    }

    pub fn into_parts(self) -> (Vec<Color>, Vec<Arc>, Vec<Vec<Dart>>) {
        (self.colors, self.arcs, self.rotations)
    }
}

/// Validated mixed angulation: connected, bipartite, every face of even
/// degree at least four, integral genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedAngulation {
    graph: EmbeddedGraph,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    genus: u32,
}

impl MixedAngulation {
    pub fn build(
        colors: Vec<Color>,
        arcs: Vec<Arc>,
        rotations: Vec<Vec<Dart>>,
    ) -> Result<Self, AngulationError> {
        Self::from_graph(EmbeddedGraph::from_parts(colors, arcs, rotations)?)
    }

    pub fn from_graph(graph: EmbeddedGraph) -> Result<Self, AngulationError> {
        if graph.num_arcs() == 0 {
            return Err(AngulationError::Malformed("no arcs".into()));
        }
        for (i, a) in graph.arcs.iter().enumerate() {
            if graph.colors[a.black] != Color::Black || graph.colors[a.white] != Color::White
            {
                return Err(AngulationError::NotBipartite { arc: i });
            }
        }
        if graph.components() != 1 {
            return Err(AngulationError::Disconnected);
        }
        let faces = graph.faces();
        for f in &faces {
            if f.degree() % 2 == 1 || f.degree() < 4 {
                return Err(AngulationError::OddFaceDegree {
                    face: f.key.to_string(),
                    degree: f.degree(),
                });
            }
        }
        let defect = graph.euler_defect();
        if defect < 0 || defect % 2 != 0 {
            return Err(AngulationError::NonIntegerGenus);
        }
        let mut dart_face = vec![0; 2 * graph.num_arcs()];
        for (i, f) in faces.iter().enumerate() {
            for d in &f.darts {
                dart_face[d.index()] = i;
            }
        }
        Ok(MixedAngulation {
            graph,
            faces,
            dart_face,
            genus: (defect / 2) as u32,
        })
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_arcs(&self) -> usize {
        self.graph.num_arcs()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.graph.color(v)
    }

    pub fn arc(&self, e: usize) -> Arc {
        self.graph.arc(e)
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        self.graph.rotation(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertices_of(&self, color: Color) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| self.color(v) == color)
            .collect()
    }

    /// Index into [`faces`](Self::faces) of the face on the right of `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    /// Face to the right of the arc oriented from black to white.
    pub fn right_face(&self, e: usize) -> usize {
        self.face_of(Dart::b(e))
    }

    /// Face to the left of the arc oriented from black to white.
    pub fn left_face(&self, e: usize) -> usize {
        self.face_of(Dart::w(e))
    }

    /// Arc following `e` counter-clockwise at its black end.
    pub fn succ_black(&self, e: usize) -> usize {
        self.graph.sigma(Dart::b(e)).arc
    }

    /// Arc preceding `e` counter-clockwise at its white end.
    pub fn pred_white(&self, e: usize) -> usize {
        self.graph.sigma_inv(Dart::w(e)).arc
    }

    /// Order vector entry `deg - 2` of every face, in face order.
    pub fn order_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.degree() - 2).collect()
    }

    /// Finds a color and rotation preserving bijection onto `other`.
    pub fn isomorphism(&self, other: &MixedAngulation) -> Option<Isomorphism> {
        if self.num_vertices() != other.num_vertices()
            || self.num_arcs() != other.num_arcs()
            || self.num_faces() != other.num_faces()
        {
            return None;
        }
        (0..other.num_arcs()).find_map(|e| self.isomorphism_from(other, 0, e))
    }

    /// The unique isomorphism sending arc `from` to arc `to`, if any.
    pub fn isomorphism_from(
        &self,
        other: &MixedAngulation,
        from: usize,
        to: usize,
    ) -> Option<Isomorphism> {
        if self.num_arcs() != other.num_arcs() || self.num_vertices() != other.num_vertices() {
            return None;
        }
        self.extend_isomorphism(other, Dart::b(from), Dart::b(to))
    }

    fn extend_isomorphism(
        &self,
        other: &MixedAngulation,
        from: Dart,
        to: Dart,
    ) -> Option<Isomorphism> {
        let n = 2 * self.num_arcs();
        let mut map: Vec<Option<Dart>> = vec![None; n];
        let mut used = vec![false; n];
        let mut queue = VecDeque::new();
        map[from.index()] = Some(to);
        used[to.index()] = true;
        queue.push_back(from);
        while let Some(d) = queue.pop_front() {
            let img = map[d.index()].expect("queued darts are mapped");
            let pairs = [
                (d.opposite(), img.opposite()),
                (self.graph.sigma(d), other.graph.sigma(img)),
            ];
            for (x, y) in pairs {
                match map[x.index()] {
                    Some(existing) if existing != y => return None,
                    Some(_) => {}
                    None => {
                        if x.end != y.end || used[y.index()] {
                            return None;
                        }
                        map[x.index()] = Some(y);
                        used[y.index()] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
        let mut arcs = vec![0; self.num_arcs()];
        for (e, slot) in arcs.iter_mut().enumerate() {
            *slot = map[Dart::b(e).index()]?.arc;
        }
        let mut vertices = vec![0; self.num_vertices()];
        for (e, &img) in arcs.iter().enumerate() {
            let (a, b) = (self.arc(e), other.arc(img));
            vertices[a.black] = b.black;
            vertices[a.white] = b.white;
        }
        let faces = self
            .faces
            .iter()
            .map(|f| other.face_of(map[f.key.index()].expect("total map")))
            .collect();
        Some(Isomorphism {
            vertices,
            arcs,
            faces,
        })
    }
}

/// Correspondence found by [`MixedAngulation::isomorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub arcs: Vec<usize>,
    pub faces: Vec<usize>,
}

/// One-face map of the `(4g+2)`-gon with opposite sides glued: one black
/// vertex (id 0), one white vertex (id 1) and `2g+1` arcs. For `g = 0` this
/// is a single arc bounding a bigon, so it is returned unvalidated.
pub fn canonical_angulation(genus: u32) -> EmbeddedGraph {
    let m = 2 * genus as usize + 1;
    let colors = vec![Color::Black, Color::White];
    let arcs = vec![Arc { black: 0, white: 1 }; m];
    let walk: Vec<Dart> = (0..2 * m)
        .map(|j| {
            let arc = j % m;
            // Polygon vertex j is black for even j.
            if j % 2 == 0 {
                Dart::b(arc)
            } else {
                Dart::w(arc)
            }
        })
        .collect();
    EmbeddedGraph::from_single_face(colors, arcs, &walk)
}
