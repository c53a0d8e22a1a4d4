//! Marked graph diagrams as planar combinatorial maps.
//!
//! A diagram is a 4-valent plane graph given by a rotation system: every
//! vertex (crossing or marked vertex) has four slots numbered 0..3
//! counterclockwise, and every edge end occupies exactly one slot. Closed
//! crossing-free curves are kept separately as `circles`. A diagram with
//! `ports > 0` is a tangle: edges may end on boundary ports b0..bk-1 listed
//! counterclockwise on the disk boundary, and faces are traced on the closure
//! obtained by joining consecutive ports with boundary arcs.
//!
//! The plane (rather than sphere) structure is carried by the face partition:
//! faces of disjoint sub-diagrams that share a region of the plane are glued
//! into one global face, and one global face is designated as unbounded.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type CircleId = usize;
pub type PortId = usize;
pub type Slot = u8;

/// Which opposite slot pair carries the overstrand at a crossing.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OverPair {
    /// Slots 0 and 2 are on top.
    Axis02,
    /// Slots 1 and 3 are on top.
    Axis13,
}

impl OverPair {
    pub fn contains(self, s: Slot) -> bool {
        match self {
            OverPair::Axis02 => s % 2 == 0,
            OverPair::Axis13 => s % 2 == 1,
        }
    }

    /// The over pair as seen after relabeling slots by `s -> s + r (mod 4)`.
    pub fn rotated(self, r: Slot) -> Self {
        if r % 2 == 0 {
            self
        } else {
            match self {
                OverPair::Axis02 => OverPair::Axis13,
                OverPair::Axis13 => OverPair::Axis02,
            }
        }
    }
}

/// Which adjacent slot pairing the positive resolution joins at a marked
/// vertex. `P01x23` joins {0,1} and {2,3}; `P12x30` joins {1,2} and {3,0}.
/// The negative resolution joins the complementary adjacent pairing.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlusPairing {
    P01x23,
    P12x30,
}

impl PlusPairing {
    /// Partner of slot `s` under the positive resolution.
    pub fn plus_partner(self, s: Slot) -> Slot {
        match self {
            // 0<->1, 2<->3
            PlusPairing::P01x23 => s ^ 1,
            // 1<->2, 3<->0
            PlusPairing::P12x30 => (s + if s % 2 == 0 { 3 } else { 1 }) % 4,
        }
    }

    /// Partner of slot `s` under the negative resolution.
    pub fn minus_partner(self, s: Slot) -> Slot {
        self.other().plus_partner(s)
    }

    pub fn other(self) -> Self {
        match self {
            PlusPairing::P01x23 => PlusPairing::P12x30,
            PlusPairing::P12x30 => PlusPairing::P01x23,
        }
    }

    pub fn rotated(self, r: Slot) -> Self {
        if r % 2 == 0 {
            self
        } else {
            self.other()
        }
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Crossing(OverPair),
    Marked(PlusPairing),
}

impl VertexKind {
    pub fn is_marked(self) -> bool {
        matches!(self, VertexKind::Marked(_))
    }

    pub fn rotated(self, r: Slot) -> Self {
        match self {
            VertexKind::Crossing(o) => VertexKind::Crossing(o.rotated(r)),
            VertexKind::Marked(p) => VertexKind::Marked(p.rotated(r)),
        }
    }
}

/// One end of an edge: a vertex slot or a boundary port.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum End {
    V(VertexId, Slot),
    P(PortId),
}

/// A directed edge occurrence. Regular darts are `2e + h`, pointing from
/// `ends[h]` to `ends[1-h]`. Tangle closures add arc darts `2E + 2i + a`
/// where `a = 0` is the boundary arc from port i to port i+1 (ccw) and
/// `a = 1` its reverse.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub u32);

impl Dart {
    pub fn regular(e: EdgeId, h: usize) -> Dart {
        Dart((2 * e + h) as u32)
    }
}

/// Edge directions for an oriented diagram: `edge_fwd[e]` is true when edge
/// `e` flows from `ends[0]` to `ends[1]`. Circles carry a bare winding tag
/// (counterclockwise = true); it only becomes observable when a move cuts
/// the circle into edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientData {
    pub edge_fwd: Vec<bool>,
    pub circle_ccw: Vec<bool>,
}

pub type FaceId = usize;

/// Face partition of a diagram: every dart knows the global face on its
/// left, every circle knows the faces outside and inside it, and one face is
/// unbounded. Arc darts of a tangle closure are included; the unbounded face
/// of a tangle is the outside of the closure circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceData {
    pub n_faces: usize,
    /// Indexed by dart id (regular darts then arc darts).
    pub dart_face: Vec<FaceId>,
    /// Per circle: [outside face, inside face].
    pub circle_faces: Vec<[FaceId; 2]>,
    pub outer: FaceId,
}

/// A validated marked graph diagram (or tangle, when `ports > 0`),
/// immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub verts: Vec<VertexKind>,
    pub edges: Vec<[End; 2]>,
    pub n_circles: usize,
    pub ports: usize,
    pub orient: Option<OrientData>,
    pub faces: FaceData,
    /// Island (connected component of the projection, with the tangle
    /// closure ring counting as one island) of each edge.
    pub edge_island: Vec<usize>,
    pub circle_island: Vec<usize>,
    pub n_islands: usize,
    /// Dart tailed at (v, slot).
    slot_dart: Vec<[Dart; 4]>,
    /// Regular dart tailed at each port.
    port_dart: Vec<Dart>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("slot occupied: vertex v{0} slot {1} has two edge ends")]
    SlotOccupied(VertexId, Slot),
    #[error("dangling endpoint: vertex v{0} slot {1} has no edge end")]
    SlotEmpty(VertexId, Slot),
    #[error("port b{0} used by {1} edge ends (need exactly one)")]
    PortArity(PortId, usize),
    #[error("planarity violation: component has Euler characteristic {0}, expected 2")]
    NotPlanar(i64),
    #[error("unknown outer face reference")]
    BadOuterRef,
    #[error("bad placement: {0}")]
    BadPlacement(String),
    #[error("edge e{0} references vertex v{1} which does not exist")]
    BadVertexRef(EdgeId, VertexId),
    #[error("edge e{0} references port b{1} out of range")]
    BadPortRef(EdgeId, PortId),
    #[error("orientation data does not cover every edge and circle")]
    OrientationCoverage,
    #[error("internal face bookkeeping error: {0}")]
    Internal(String),
}

/// Raw diagram parts prior to face assembly.
#[derive(Debug, Clone, Default)]
pub struct RawDiagram {
    pub verts: Vec<VertexKind>,
    pub edges: Vec<[End; 2]>,
    pub n_circles: usize,
    pub ports: usize,
    pub orient: Option<OrientData>,
}

/// A face of some traced island, before global gluing. Used to express
/// placements and glue instructions.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceToken {
    /// The face on the left of this dart.
    Left(Dart),
    /// side 0 = outside of the circle, side 1 = inside.
    CircleSide(CircleId, u8),
}

/// Instructions for gluing island faces into global plane faces.
#[derive(Debug, Clone, Default)]
pub struct FaceGlue {
    /// Pairs of tokens whose faces become one global face.
    pub unions: Vec<(FaceToken, FaceToken)>,
    /// Token on the unbounded face (closed diagrams only; ignored for
    /// tangles, whose unbounded face is the closure outside). None means
    /// "auto": see `assemble`.
    pub outer: Option<FaceToken>,
}

struct Uf {
    parent: Vec<usize>,
}

impl Uf {
    fn new(n: usize) -> Uf {
        Uf {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
            r
        } else {
            x
        }
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        ra != rb
    }
}

impl Diagram {
    pub fn n_verts(&self) -> usize {
        self.verts.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_darts(&self) -> usize {
        2 * self.edges.len() + 2 * self.ports
    }

    pub fn is_tangle(&self) -> bool {
        self.ports > 0
    }

    pub fn crossing_count(&self) -> usize {
        self.verts
            .iter()
            .filter(|k| matches!(k, VertexKind::Crossing(_)))
            .count()
    }

    pub fn marked_count(&self) -> usize {
        self.verts.iter().filter(|k| k.is_marked()).count()
    }

    /// Total strand-carrying size used for search pruning.
    pub fn size(&self) -> usize {
        self.edges.len() + self.n_circles
    }

    pub fn dart_tail(&self, d: Dart) -> End {
        let i = d.0 as usize;
        assert!(i < 2 * self.edges.len(), "arc dart has no edge end");
        self.edges[i / 2][i % 2]
    }

    pub fn dart_head(&self, d: Dart) -> End {
        let i = d.0 as usize;
        assert!(i < 2 * self.edges.len(), "arc dart has no edge end");
        self.edges[i / 2][1 - i % 2]
    }

    pub fn dart_edge(&self, d: Dart) -> EdgeId {
        (d.0 as usize) / 2
    }

    pub fn dart_reverse(&self, d: Dart) -> Dart {
        let ne = 2 * self.edges.len();
        let i = d.0 as usize;
        if i < ne {
            Dart((i ^ 1) as u32)
        } else {
            Dart((((i - ne) ^ 1) + ne) as u32)
        }
    }

    pub fn is_arc_dart(&self, d: Dart) -> bool {
        (d.0 as usize) >= 2 * self.edges.len()
    }

    pub fn slot_dart(&self, v: VertexId, s: Slot) -> Dart {
        self.slot_dart[v][s as usize]
    }

    pub fn port_dart(&self, p: PortId) -> Dart {
        self.port_dart[p]
    }

    /// Face on the left of the dart tailed at (v, s).
    pub fn face_left_of_slot(&self, v: VertexId, s: Slot) -> FaceId {
        self.faces.dart_face[self.slot_dart(v, s).0 as usize]
    }

    /// True if the edge flows ends[0] -> ends[1] (oriented diagrams).
    pub fn edge_forward(&self, e: EdgeId) -> Option<bool> {
        self.orient.as_ref().map(|o| o.edge_fwd[e])
    }

    /// Polarity of an edge end: true when the strand flows into the
    /// vertex/port at `ends[h]`.
    pub fn end_inward(&self, e: EdgeId, h: usize) -> Option<bool> {
        self.orient.as_ref().map(|o| o.edge_fwd[e] == (h == 1))
    }

    /// Successor in the face walk keeping the face on the left of each dart.
    /// At a vertex, arriving at slot s continues from slot s-1; at a port the
    /// walk continues along the closure.
    pub fn next_dart(&self, d: Dart) -> Dart {
        let ne = 2 * self.edges.len();
        let i = d.0 as usize;
        if i < ne {
            match self.dart_head(d) {
                End::V(v, s) => self.slot_dart(v, (s + 3) % 4),
                End::P(p) => Dart((ne + 2 * p) as u32), // forward arc at p
            }
        } else {
            let a = i - ne;
            let arc = a / 2;
            if a % 2 == 0 {
                // forward arc lands on port arc+1: continue into its stub
                self.port_dart((arc + 1) % self.ports)
            } else {
                // reversed arc lands on port `arc`: continue along the
                // outside of the closure
                let prev = (arc + self.ports - 1) % self.ports;
                Dart((ne + 2 * prev + 1) as u32)
            }
        }
    }

    /// All darts on the boundary walk of a face, grouped by walk cycles.
    pub fn face_walks(&self, f: FaceId) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.n_darts()];
        let mut walks = Vec::new();
        for d0 in 0..self.n_darts() {
            if seen[d0] || self.faces.dart_face[d0] != f {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = Dart(d0 as u32);
            loop {
                if seen[d.0 as usize] {
                    break;
                }
                seen[d.0 as usize] = true;
                walk.push(d);
                d = self.next_dart(d);
            }
            walks.push(walk);
        }
        walks
    }

    /// Circle sides on the boundary of a face.
    pub fn face_circle_sides(&self, f: FaceId) -> Vec<(CircleId, u8)> {
        let mut out = Vec::new();
        for c in 0..self.n_circles {
            for side in 0..2u8 {
                if self.faces.circle_faces[c][side as usize] == f {
                    out.push((c, side));
                }
            }
        }
        out
    }

    /// Resolve a face token against the traced structure.
    pub fn face_of_token(&self, t: FaceToken) -> FaceId {
        match t {
            FaceToken::Left(d) => self.faces.dart_face[d.0 as usize],
            FaceToken::CircleSide(c, s) => self.faces.circle_faces[c][s as usize],
        }
    }

    /// Validate and assemble a diagram from raw parts and gluing data.
    pub fn assemble(raw: RawDiagram, glue: &FaceGlue) -> Result<Diagram, DiagramError> {
        let nv = raw.verts.len();
        let ne = raw.edges.len();
        let nc = raw.n_circles;
        let np = raw.ports;

        // Slot and port occupancy.
        let mut slot_dart = vec![[Dart(u32::MAX); 4]; nv];
        let mut port_dart = vec![Dart(u32::MAX); np];
        for (e, ends) in raw.edges.iter().enumerate() {
            for h in 0..2 {
                match ends[h] {
                    End::V(v, s) => {
                        if v >= nv {
                            return Err(DiagramError::BadVertexRef(e, v));
                        }
                        let s = s % 4;
                        if slot_dart[v][s as usize] != Dart(u32::MAX) {
                            return Err(DiagramError::SlotOccupied(v, s));
                        }
                        slot_dart[v][s as usize] = Dart::regular(e, h);
                    }
                    End::P(p) => {
                        if p >= np {
                            return Err(DiagramError::BadPortRef(e, p));
                        }
                        if port_dart[p] != Dart(u32::MAX) {
                            return Err(DiagramError::PortArity(p, 2));
                        }
                        port_dart[p] = Dart::regular(e, h);
                    }
                }
            }
        }
        for (v, slots) in slot_dart.iter().enumerate() {
            for (s, d) in slots.iter().enumerate() {
                if *d == Dart(u32::MAX) {
                    return Err(DiagramError::SlotEmpty(v, s as Slot));
                }
            }
        }
        for (p, d) in port_dart.iter().enumerate() {
            if *d == Dart(u32::MAX) {
                return Err(DiagramError::PortArity(p, 0));
            }
        }
        if let Some(o) = &raw.orient {
            if o.edge_fwd.len() != ne || o.circle_ccw.len() != nc {
                return Err(DiagramError::OrientationCoverage);
            }
        }

        // Islands over elements: edges, then circles, then the closure ring.
        let ring = ne + nc;
        let mut isl = Uf::new(ne + nc + if np > 0 { 1 } else { 0 });
        let mut vertex_edge = vec![usize::MAX; nv];
        for (e, ends) in raw.edges.iter().enumerate() {
            for end in ends {
                match *end {
                    End::V(v, _) => {
                        if vertex_edge[v] == usize::MAX {
                            vertex_edge[v] = e;
                        } else {
                            isl.union(e, vertex_edge[v]);
                        }
                    }
                    End::P(_) => {
                        isl.union(e, ring);
                    }
                }
            }
        }

        // Trace faces on the closure.
        let mut shell = Diagram {
            verts: raw.verts,
            edges: raw.edges,
            n_circles: nc,
            ports: np,
            orient: raw.orient,
            faces: FaceData {
                n_faces: 0,
                dart_face: vec![usize::MAX; 2 * ne + 2 * np],
                circle_faces: vec![[usize::MAX; 2]; nc],
                outer: 0,
            },
            edge_island: Vec::new(),
            circle_island: Vec::new(),
            n_islands: 0,
            slot_dart,
            port_dart,
        };
        let nd = shell.n_darts();
        let mut orbit = vec![usize::MAX; nd];
        let mut n_orbits = 0usize;
        let mut orbit_island_elem: Vec<usize> = Vec::new();
        let mut orbit_len: Vec<usize> = Vec::new();
        for d0 in 0..nd {
            if orbit[d0] != usize::MAX {
                continue;
            }
            let id = n_orbits;
            n_orbits += 1;
            let mut d = Dart(d0 as u32);
            let mut len = 0usize;
            let mut elem = usize::MAX;
            loop {
                if orbit[d.0 as usize] != usize::MAX {
                    break;
                }
                orbit[d.0 as usize] = id;
                len += 1;
                if (d.0 as usize) < 2 * ne {
                    elem = shell.dart_edge(d);
                } else if elem == usize::MAX {
                    elem = ring;
                }
                d = shell.next_dart(d);
                if d.0 as usize == d0 {
                    break;
                }
            }
            orbit_island_elem.push(elem);
            orbit_len.push(len);
        }

        // Componentwise planarity: V - E + F = 2 per island with edges.
        {
            let mut isl_v = std::collections::BTreeMap::<usize, i64>::new();
            let mut isl_e = std::collections::BTreeMap::<usize, i64>::new();
            let mut isl_f = std::collections::BTreeMap::<usize, i64>::new();
            for v in 0..nv {
                let e = vertex_edge[v];
                debug_assert!(e != usize::MAX, "4-valent vertex always has edges");
                let r = isl.find(e);
                *isl_v.entry(r).or_default() += 1;
            }
            for e in 0..ne {
                let r = isl.find(e);
                *isl_e.entry(r).or_default() += 1;
            }
            if np > 0 {
                let r = isl.find(ring);
                *isl_v.entry(r).or_default() += np as i64;
                *isl_e.entry(r).or_default() += np as i64;
            }
            for ob in 0..n_orbits {
                let r = isl.find(orbit_island_elem[ob]);
                *isl_f.entry(r).or_default() += 1;
            }
            for (r, f) in &isl_f {
                let v = isl_v.get(r).copied().unwrap_or(0);
                let e = isl_e.get(r).copied().unwrap_or(0);
                let chi = v - e + f;
                if chi != 2 {
                    return Err(DiagramError::NotPlanar(chi));
                }
            }
        }

        // Glue island faces into global faces. Token space: orbits then
        // circle sides; the empty diagram gets one synthetic face.
        let n_tok = n_orbits + 2 * nc;
        let token_index = |shell: &Diagram, t: FaceToken| -> Result<usize, DiagramError> {
            match t {
                FaceToken::Left(d) => {
                    if (d.0 as usize) < nd {
                        Ok(orbit[d.0 as usize])
                    } else {
                        Err(DiagramError::BadOuterRef)
                    }
                }
                FaceToken::CircleSide(c, s) => {
                    if c < shell.n_circles && s < 2 {
                        Ok(n_orbits + 2 * c + s as usize)
                    } else {
                        Err(DiagramError::BadOuterRef)
                    }
                }
            }
        };
        if n_tok == 0 {
            shell.faces = FaceData {
                n_faces: 1,
                dart_face: Vec::new(),
                circle_faces: Vec::new(),
                outer: 0,
            };
            shell.edge_island = Vec::new();
            shell.circle_island = Vec::new();
            shell.n_islands = 0;
            return Ok(shell);
        }
        let mut fuf = Uf::new(n_tok);
        for (a, b) in &glue.unions {
            let (ia, ib) = (token_index(&shell, *a)?, token_index(&shell, *b)?);
            fuf.union(ia, ib);
        }
        // Merge distinct same-island tokens only across islands; a valid
        // plane diagram never glues two faces of one island. Checked below.
        let outer_tok = if np > 0 {
            // Outside of the closure: the reversed arc of arc 0.
            orbit[2 * ne + 1]
        } else {
            match glue.outer {
                Some(t) => token_index(&shell, t)?,
                None => {
                    // auto: face of the least dart, or outside of circle 0.
                    if nd > 0 {
                        orbit[0]
                    } else {
                        n_orbits // circle 0 outside
                    }
                }
            }
        };

        // Renumber classes.
        let mut face_of_class = std::collections::BTreeMap::<usize, FaceId>::new();
        let mut n_faces = 0usize;
        for t in 0..n_tok {
            let r = fuf.find(t);
            face_of_class.entry(r).or_insert_with(|| {
                let id = n_faces;
                n_faces += 1;
                id
            });
        }
        let mut dart_face = vec![usize::MAX; nd];
        for d in 0..nd {
            dart_face[d] = face_of_class[&fuf.find(orbit[d])];
        }
        let mut circle_faces = vec![[usize::MAX; 2]; nc];
        for c in 0..nc {
            for s in 0..2 {
                circle_faces[c][s] = face_of_class[&fuf.find(n_orbits + 2 * c + s)];
            }
        }
        let outer = face_of_class[&fuf.find(outer_tok)];

        // Compact island numbering: edges, circles, ring share ids.
        let mut island_of_root = std::collections::BTreeMap::<usize, usize>::new();
        let mut n_islands = 0usize;
        let idx = |r: usize, n: &mut usize, m: &mut std::collections::BTreeMap<usize, usize>| {
            *m.entry(r).or_insert_with(|| {
                let id = *n;
                *n += 1;
                id
            })
        };
        let edge_island: Vec<usize> = (0..ne)
            .map(|e| idx(isl.find(e), &mut n_islands, &mut island_of_root))
            .collect();
        let circle_island: Vec<usize> = (0..nc)
            .map(|c| idx(isl.find(ne + c), &mut n_islands, &mut island_of_root))
            .collect();

        shell.faces = FaceData {
            n_faces,
            dart_face,
            circle_faces,
            outer,
        };
        shell.edge_island = edge_island;
        shell.circle_island = circle_island;
        shell.n_islands = n_islands;

        shell.check_island_faces()?;
        Ok(shell)
    }

    /// Island of the face's boundary items must be injective per island: a
    /// connected island meets each global face along at most one contour.
    fn check_island_faces(&self) -> Result<(), DiagramError> {
        use std::collections::BTreeSet;
        // (island, face) pairs seen through distinct traced orbits.
        let mut seen = BTreeSet::new();
        let mut orbit_seen = vec![false; self.n_darts()];
        for d0 in 0..self.n_darts() {
            if orbit_seen[d0] {
                continue;
            }
            let mut d = Dart(d0 as u32);
            loop {
                if orbit_seen[d.0 as usize] {
                    break;
                }
                orbit_seen[d.0 as usize] = true;
                d = self.next_dart(d);
            }
            let island = self.dart_island(Dart(d0 as u32));
            let f = self.faces.dart_face[d0];
            if !seen.insert((island, f)) {
                return Err(DiagramError::Internal(format!(
                    "island {island} meets face {f} along two contours"
                )));
            }
        }
        for c in 0..self.n_circles {
            let island = self.circle_island[c];
            for s in 0..2 {
                let f = self.faces.circle_faces[c][s];
                if !seen.insert((island, f)) {
                    return Err(DiagramError::Internal(format!(
                        "circle island {island} meets face {f} along two contours"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Island of a dart (arc darts belong to the closure ring's island).
    pub fn dart_island(&self, d: Dart) -> usize {
        let i = d.0 as usize;
        if i < 2 * self.edges.len() {
            self.edge_island[i / 2]
        } else {
            // ring island: island of any port-attached edge
            self.edge_island[self.dart_edge(self.port_dart[0]) ]
        }
    }

    /// Nesting forest derived from the face partition: for each island,
    /// (parent face, island's own outward face). Roots sit in the outer face.
    /// Also yields, per face, the island whose contour encloses it (None for
    /// the unbounded face).
    pub fn nesting_full(&self) -> (Vec<IslandNest>, Vec<Option<usize>>) {
        let mut faces_of_island: Vec<Vec<(FaceId, FaceToken)>> = vec![Vec::new(); self.n_islands];
        let mut orbit_seen = vec![false; self.n_darts()];
        for d0 in 0..self.n_darts() {
            if orbit_seen[d0] {
                continue;
            }
            let mut d = Dart(d0 as u32);
            loop {
                if orbit_seen[d.0 as usize] {
                    break;
                }
                orbit_seen[d.0 as usize] = true;
                d = self.next_dart(d);
            }
            let island = self.dart_island(Dart(d0 as u32));
            faces_of_island[island].push((self.faces.dart_face[d0], FaceToken::Left(Dart(d0 as u32))));
        }
        for c in 0..self.n_circles {
            for s in 0..2u8 {
                faces_of_island[self.circle_island[c]]
                    .push((self.faces.circle_faces[c][s as usize], FaceToken::CircleSide(c, s)));
            }
        }
        let mut nest: Vec<IslandNest> = (0..self.n_islands)
            .map(|_| IslandNest {
                parent_face: usize::MAX,
                out_token: FaceToken::Left(Dart(u32::MAX)),
            })
            .collect();
        // BFS over faces starting from the unbounded one.
        let mut face_queue = std::collections::VecDeque::new();
        let mut face_seen = vec![false; self.faces.n_faces];
        let mut face_owner: Vec<Option<usize>> = vec![None; self.faces.n_faces];
        face_queue.push_back(self.faces.outer);
        face_seen[self.faces.outer] = true;
        let mut assigned = vec![false; self.n_islands];
        while let Some(f) = face_queue.pop_front() {
            for island in 0..self.n_islands {
                if assigned[island] {
                    continue;
                }
                if let Some((_, tok)) = faces_of_island[island].iter().find(|(ff, _)| *ff == f) {
                    assigned[island] = true;
                    nest[island] = IslandNest {
                        parent_face: f,
                        out_token: *tok,
                    };
                    for (ff, _) in &faces_of_island[island] {
                        if !face_seen[*ff] {
                            face_seen[*ff] = true;
                            face_owner[*ff] = Some(island);
                            face_queue.push_back(*ff);
                        }
                    }
                }
            }
        }
        debug_assert!(
            assigned.iter().all(|a| *a),
            "every island reachable from outer"
        );
        (nest, face_owner)
    }

    pub fn nesting(&self) -> Vec<IslandNest> {
        self.nesting_full().0
    }

    /// Least representative vertex of each island (usize::MAX for circles).
    pub fn island_vertex(&self) -> Vec<VertexId> {
        let mut rep = vec![usize::MAX; self.n_islands];
        for (e, ends) in self.edges.iter().enumerate() {
            for end in ends {
                if let End::V(v, _) = end {
                    let i = self.edge_island[e];
                    if rep[i] == usize::MAX || *v < rep[i] {
                        rep[i] = *v;
                    }
                }
            }
        }
        rep
    }
}

/// Island placement derived from the face structure.
#[derive(Debug, Copy, Clone)]
pub struct IslandNest {
    pub parent_face: FaceId,
    /// A token on the island's own outward-looking face.
    pub out_token: FaceToken,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_raw(n: usize) -> RawDiagram {
        RawDiagram {
            n_circles: n,
            ..Default::default()
        }
    }

    #[test]
    fn plain_circle_has_two_faces() {
        let d = Diagram::assemble(circle_raw(1), &FaceGlue::default()).unwrap();
        assert_eq!(d.faces.n_faces, 2);
        assert_eq!(d.faces.outer, d.faces.circle_faces[0][0]);
    }

    #[test]
    fn two_disjoint_circles_share_the_outer_face() {
        let glue = FaceGlue {
            unions: vec![(FaceToken::CircleSide(0, 0), FaceToken::CircleSide(1, 0))],
            outer: Some(FaceToken::CircleSide(0, 0)),
        };
        let d = Diagram::assemble(circle_raw(2), &glue).unwrap();
        assert_eq!(d.faces.n_faces, 3);
        assert_eq!(d.n_islands, 2);
    }

    #[test]
    fn nested_circles() {
        let glue = FaceGlue {
            unions: vec![(FaceToken::CircleSide(1, 0), FaceToken::CircleSide(0, 1))],
            outer: Some(FaceToken::CircleSide(0, 0)),
        };
        let d = Diagram::assemble(circle_raw(2), &glue).unwrap();
        assert_eq!(d.faces.n_faces, 3);
        let nest = d.nesting();
        assert_eq!(nest[0].parent_face, d.faces.outer);
        assert_eq!(nest[1].parent_face, d.faces.circle_faces[0][1]);
    }

    /// One crossing whose two loops are the adjacent pairs (0,3) and (1,2):
    /// the figure-eight curve. V=1, E=2, F=3.
    #[test]
    fn figure_eight_curve_faces() {
        let raw = RawDiagram {
            verts: vec![VertexKind::Crossing(OverPair::Axis02)],
            edges: vec![
                [End::V(0, 0), End::V(0, 3)],
                [End::V(0, 1), End::V(0, 2)],
            ],
            ..Default::default()
        };
        let d = Diagram::assemble(raw, &FaceGlue::default()).unwrap();
        assert_eq!(d.faces.n_faces, 3);
    }

    /// Opposite-slot loops give a torus map, rejected by the planarity check.
    #[test]
    fn torus_rotation_rejected() {
        let raw = RawDiagram {
            verts: vec![VertexKind::Crossing(OverPair::Axis02)],
            edges: vec![
                [End::V(0, 0), End::V(0, 2)],
                [End::V(0, 1), End::V(0, 3)],
            ],
            ..Default::default()
        };
        match Diagram::assemble(raw, &FaceGlue::default()) {
            Err(DiagramError::NotPlanar(chi)) => assert_eq!(chi, 0),
            other => panic!("expected planarity violation, got {other:?}"),
        }
    }

    #[test]
    fn slot_occupied_rejected() {
        let raw = RawDiagram {
            verts: vec![VertexKind::Marked(PlusPairing::P01x23)],
            edges: vec![
                [End::V(0, 0), End::V(0, 0)],
                [End::V(0, 1), End::V(0, 2)],
            ],
            ..Default::default()
        };
        assert!(matches!(
            Diagram::assemble(raw, &FaceGlue::default()),
            Err(DiagramError::SlotOccupied(0, 0))
        ));
    }

    /// A single strand through a disk: 2 ports, one edge. The closure is a
    /// circle with a chord; F=2 on the closure (V=2, E=3).
    #[test]
    fn tangle_single_strand() {
        let raw = RawDiagram {
            edges: vec![[End::P(0), End::P(1)]],
            ports: 2,
            ..Default::default()
        };
        let d = Diagram::assemble(raw, &FaceGlue::default()).unwrap();
        assert_eq!(d.faces.n_faces, 3);
        // outer face is the closure outside
        let rev_arc0 = Dart((2 * d.n_edges() + 1) as u32);
        assert_eq!(d.faces.dart_face[rev_arc0.0 as usize], d.faces.outer);
    }
}
