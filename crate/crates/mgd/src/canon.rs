//! Canonical codes for diagrams and tangles.
//!
//! Two diagrams get equal codes iff they are isomorphic as combinatorial
//! maps rooted at the unbounded face, with matching vertex kinds, marker
//! data, nesting of disjoint components, and (when present) orientations.
//! Tangle boundaries are fixed pointwise: tangle codes are rooted at port 0
//! and never minimized over boundary rotations.
//!
//! Each connected island is encoded by a breadth-first traversal emitting,
//! per vertex, its kind normalized to the entry slot, then the targets of
//! its four slots in rotation order. The island code is the lexicographic
//! minimum over starting darts on the island's outward face. Nested islands
//! are encoded recursively and attached to the faces that hold them.

use crate::diagram::{Diagram, End, FaceId, VertexId, VertexKind};
use std::collections::BTreeMap;

const TOK_NEW: u8 = 1;
const TOK_OLD: u8 = 2;
const TOK_PORT: u8 = 3;
const TOK_FACE: u8 = 4;
const TOK_CIRCLE: u8 = 5;
const TOK_END: u8 = 6;

fn push_usize(out: &mut Vec<u8>, n: usize) {
    // varint keeps codes compact and order-stable for the sizes we use
    let mut n = n as u64;
    loop {
        let b = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            out.push(b | 0x80);
            break;
        }
        out.push(b);
    }
}

fn kind_token(k: VertexKind) -> u8 {
    match k {
        VertexKind::Crossing(crate::diagram::OverPair::Axis02) => 10,
        VertexKind::Crossing(crate::diagram::OverPair::Axis13) => 11,
        VertexKind::Marked(crate::diagram::PlusPairing::P01x23) => 12,
        VertexKind::Marked(crate::diagram::PlusPairing::P12x30) => 13,
    }
}

struct Coder<'a> {
    d: &'a Diagram,
    /// Children islands attached to each global face.
    face_children: Vec<Vec<usize>>,
    /// Memoized rooted codes per island.
    island_code: Vec<Option<Vec<u8>>>,
    nest: Vec<crate::diagram::IslandNest>,
}

impl<'a> Coder<'a> {
    /// Traverse the island containing the given seeds. Seeds are (vertex,
    /// entry slot) pairs processed in order; the ring island passes the port
    /// stubs, a closed island passes one starting dart. Emits the traversal
    /// and returns the vertex numbering for face keys.
    fn traverse(
        &self,
        seeds: &[(VertexId, u8)],
        port_seeds: bool,
        out: &mut Vec<u8>,
    ) -> BTreeMap<VertexId, (usize, u8)> {
        let d = self.d;
        let mut num: BTreeMap<VertexId, (usize, u8)> = BTreeMap::new();
        let mut order: Vec<VertexId> = Vec::new();
        let mut discover = |v: VertexId, s: u8, num: &mut BTreeMap<VertexId, (usize, u8)>, order: &mut Vec<VertexId>| {
            if !num.contains_key(&v) {
                num.insert(v, (order.len(), s));
                order.push(v);
            }
        };
        if port_seeds {
            // encode each port's target before walking the interior
            for (v, s) in seeds {
                discover(*v, *s, &mut num, &mut order);
            }
        } else {
            let (v, s) = seeds[0];
            discover(v, s, &mut num, &mut order);
        }
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            let (vn, base) = num[&v];
            debug_assert_eq!(vn, i - 1);
            out.push(kind_token(d.verts[v].rotated(base)));
            for rel in 0..4u8 {
                let s = (base + rel) % 4;
                let dart = d.slot_dart(v, s);
                match d.dart_head(dart) {
                    End::V(w, t) => {
                        if let Some((wn, wb)) = num.get(&w).copied() {
                            out.push(TOK_OLD);
                            push_usize(out, wn);
                            out.push((t + 4 - wb) % 4);
                        } else {
                            out.push(TOK_NEW);
                            discover(w, t, &mut num, &mut order);
                        }
                    }
                    End::P(p) => {
                        out.push(TOK_PORT);
                        push_usize(out, p);
                    }
                }
                if let Some(inward) = d.end_inward(d.dart_edge(dart), (dart.0 % 2) as usize) {
                    out.push(if inward { 21 } else { 20 });
                }
            }
        }
        num
    }

    /// Key of a face for child attachment, relative to a traversal
    /// numbering: the minimal (vertex number, relative slot) whose left face
    /// is this face, or the minimal port gap for ring faces.
    fn face_key(&self, f: FaceId, num: &BTreeMap<VertexId, (usize, u8)>) -> (u8, usize, u8) {
        let d = self.d;
        let mut best: Option<(u8, usize, u8)> = None;
        for p in 0..d.ports {
            let arc = 2 * d.n_edges() + 2 * p;
            if d.faces.dart_face[arc] == f {
                let k = (0u8, p, 0u8);
                if best.map_or(true, |b| k < b) {
                    best = Some(k);
                }
            }
        }
        for v_s in num.iter() {
            let (v, (vn, base)) = (*v_s.0, *v_s.1);
            for rel in 0..4u8 {
                let s = (base + rel) % 4;
                if d.face_left_of_slot(v, s) == f {
                    let k = (1u8, vn, rel);
                    if best.map_or(true, |b| k < b) {
                        best = Some(k);
                    }
                }
            }
        }
        best.expect("face key must touch the traversed island")
    }

    /// Children section: for each face of the traversed island holding
    /// children, the face key and the sorted child codes.
    fn children_section(
        &mut self,
        islands_faces: &[FaceId],
        num: &BTreeMap<VertexId, (usize, u8)>,
        out: &mut Vec<u8>,
    ) {
        let mut entries: Vec<((u8, usize, u8), Vec<Vec<u8>>)> = Vec::new();
        for f in islands_faces {
            if self.face_children[*f].is_empty() {
                continue;
            }
            let key = self.face_key(*f, num);
            let mut codes: Vec<Vec<u8>> = self.face_children[*f]
                .clone()
                .into_iter()
                .map(|y| self.code_island(y))
                .collect();
            codes.sort();
            entries.push((key, codes));
        }
        entries.sort();
        for (key, codes) in entries {
            out.push(TOK_FACE);
            out.push(key.0);
            push_usize(out, key.1);
            out.push(key.2);
            for c in codes {
                out.extend_from_slice(&c);
            }
            out.push(TOK_END);
        }
    }

    /// Faces incident to an island (deduplicated).
    fn island_faces(&self, island: usize) -> Vec<FaceId> {
        let d = self.d;
        let mut fs = Vec::new();
        for e in 0..d.n_edges() {
            if d.edge_island[e] == island {
                for h in 0..2 {
                    fs.push(d.faces.dart_face[2 * e + h]);
                }
            }
        }
        for c in 0..d.n_circles {
            if d.circle_island[c] == island {
                fs.push(d.faces.circle_faces[c][0]);
                fs.push(d.faces.circle_faces[c][1]);
            }
        }
        if d.ports > 0 && !fs.is_empty() {
            // ring island also owns the gap faces
            let ring = d.dart_island(crate::diagram::Dart((2 * d.n_edges()) as u32));
            if island == ring {
                for p in 0..d.ports {
                    fs.push(d.faces.dart_face[2 * d.n_edges() + 2 * p]);
                }
            }
        }
        fs.sort();
        fs.dedup();
        fs
    }

    /// Rooted code of an island: minimal over starting darts on its outward
    /// face. Circles have a fixed short code.
    fn code_island(&mut self, island: usize) -> Vec<u8> {
        if let Some(c) = &self.island_code[island] {
            return c.clone();
        }
        let d = self.d;
        // circle island?
        let mut code = Vec::new();
        let circle = (0..d.n_circles).find(|c| d.circle_island[*c] == island);
        if let Some(c) = circle {
            code.push(TOK_CIRCLE);
            if let Some(o) = &d.orient {
                code.push(if o.circle_ccw[c] { 21 } else { 20 });
            }
            // children inside the circle
            let inner = d.faces.circle_faces[c][1];
            let mut codes: Vec<Vec<u8>> = self.face_children[inner]
                .clone()
                .into_iter()
                .map(|y| self.code_island(y))
                .collect();
            codes.sort();
            for cc in codes {
                code.extend_from_slice(&cc);
            }
            code.push(TOK_END);
        } else {
            let out_face = d.face_of_token(self.nest[island].out_token);
            let faces = self.island_faces(island);
            let mut best: Option<Vec<u8>> = None;
            for e in 0..d.n_edges() {
                if d.edge_island[e] != island {
                    continue;
                }
                for h in 0..2 {
                    let dart = crate::diagram::Dart((2 * e + h) as u32);
                    if d.faces.dart_face[dart.0 as usize] != out_face {
                        continue;
                    }
                    if let End::V(v, s) = d.dart_tail(dart) {
                        let mut cand = Vec::new();
                        let num = self.traverse(&[(v, s)], false, &mut cand);
                        self.children_section(&faces, &num, &mut cand);
                        cand.push(TOK_END);
                        if best.as_ref().map_or(true, |b| &cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            code = best.expect("vertex island has darts on its outward face");
        }
        self.island_code[island] = Some(code.clone());
        code
    }
}

/// Canonical code of a validated diagram or tangle.
pub fn canonical_code(d: &Diagram) -> Vec<u8> {
    let (nest, _) = d.nesting_full();
    let mut face_children: Vec<Vec<usize>> = vec![Vec::new(); d.faces.n_faces];
    for island in 0..d.n_islands {
        if nest[island].parent_face != d.faces.outer {
            face_children[nest[island].parent_face].push(island);
        }
    }
    let mut coder = Coder {
        d,
        face_children,
        island_code: vec![None; d.n_islands],
        nest,
    };
    let mut out = Vec::new();
    out.push(if d.orient.is_some() { b'O' } else { b'U' });
    if d.ports > 0 {
        out.push(b'T');
        push_usize(&mut out, d.ports);
        // ring island: fixed traversal from the port stubs in order
        let ring = d.dart_island(crate::diagram::Dart((2 * d.n_edges()) as u32));
        let mut seeds = Vec::new();
        let mut port_heads = Vec::new();
        for p in 0..d.ports {
            let stub = d.port_dart(p);
            match d.dart_head(stub) {
                End::V(v, s) => {
                    port_heads.push((1u8, v, s));
                    seeds.push((v, s));
                }
                End::P(q) => {
                    // port-to-port strand
                    port_heads.push((0u8, q, 0));
                }
            }
            if let Some(inward) = d.end_inward(d.dart_edge(stub), (stub.0 % 2) as usize) {
                port_heads.push((2, inward as usize, 0));
            }
        }
        let mut body = Vec::new();
        let num = if seeds.is_empty() {
            BTreeMap::new()
        } else {
            coder.traverse(&seeds, true, &mut body)
        };
        // port targets in terms of the numbering
        for (tag, a, b) in port_heads {
            match tag {
                0 => {
                    out.push(TOK_PORT);
                    push_usize(&mut out, a);
                }
                1 => {
                    let (vn, base) = num[&a];
                    out.push(TOK_NEW);
                    push_usize(&mut out, vn);
                    out.push((b + 4 - base) % 4);
                }
                _ => out.push(20 + a as u8),
            }
        }
        out.extend_from_slice(&body);
        let faces = coder.island_faces(ring);
        let mut tail = Vec::new();
        coder.children_section(&faces, &num, &mut tail);
        out.extend_from_slice(&tail);
    } else {
        out.push(b'D');
        let mut roots: Vec<usize> = (0..d.n_islands)
            .filter(|i| coder.nest[*i].parent_face == d.faces.outer)
            .collect();
        let mut codes: Vec<Vec<u8>> = roots.drain(..).map(|i| coder.code_island(i)).collect();
        codes.sort();
        for c in codes {
            out.extend_from_slice(&c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_diagram;

    #[test]
    fn relabeling_invariance() {
        let a = parse_diagram(
            "mgd v1\n\
             vertex x crossing over=0,2\n\
             vertex m marked plus=0,1/2,3\n\
             edge e0 x:0 m:2\n\
             edge e1 x:1 m:1\n\
             edge e2 x:2 m:0\n\
             edge e3 x:3 m:3\n\
             outer x:0\n",
        )
        .unwrap();
        // same map, ids permuted and edges listed in another order
        let b = parse_diagram(
            "mgd v1\n\
             vertex q marked plus=0,1/2,3\n\
             vertex p crossing over=0,2\n\
             edge z p:3 q:3\n\
             edge y p:2 q:0\n\
             edge w p:1 q:1\n\
             edge u p:0 q:2\n\
             outer p:0\n",
        )
        .unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn kind_sensitivity() {
        let mk = |kind: &str| {
            parse_diagram(&format!(
                "mgd v1\nvertex v {kind}\nedge a v:0 v:1\nedge b v:2 v:3\nouter v:1\n"
            ))
            .unwrap()
        };
        let crossing = mk("crossing over=0,2");
        let marked = mk("marked plus=0,1/2,3");
        assert_ne!(canonical_code(&crossing), canonical_code(&marked));
    }

    #[test]
    fn over_pair_sensitivity() {
        let mk = |over: &str| {
            parse_diagram(&format!(
                "mgd v1\nvertex v crossing over={over}\nedge a v:0 v:3\nedge b v:1 v:2\nouter v:0\n"
            ))
            .unwrap()
        };
        assert_ne!(
            canonical_code(&mk("0,2")),
            canonical_code(&mk("1,3"))
        );
    }

    #[test]
    fn rotation_of_whole_diagram_is_isomorphic() {
        // the same kink tangle written with all slots shifted by one is a
        // different labeled map but the same closed diagram after closure
        let a = parse_diagram(
            "mgd v1\nvertex v crossing over=0,2\nedge a v:0 v:3\nedge b v:1 v:2\nouter v:0\n",
        )
        .unwrap();
        let b = parse_diagram(
            "mgd v1\nvertex v crossing over=1,3\nedge a v:1 v:0\nedge b v:2 v:3\nouter v:1\n",
        )
        .unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn nesting_sensitivity() {
        let side_by_side = parse_diagram("mgd v1\ncircle c0\ncircle c1\nouter auto\n").unwrap();
        let nested = parse_diagram("mgd v1\ncircle c0\ncircle c1 in=c0:in\nouter auto\n").unwrap();
        assert_ne!(
            canonical_code(&side_by_side),
            canonical_code(&nested)
        );
    }

    #[test]
    fn tangle_boundary_is_fixed() {
        // two single-strand tangles with 4 ports: b0-b1 vs b0-b3 chords
        let a = parse_diagram(
            "mgd v1\nboundary b0 b1 b2 b3\nedge e @b0 @b1\nedge f @b2 @b3\n",
        )
        .unwrap();
        let b = parse_diagram(
            "mgd v1\nboundary b0 b1 b2 b3\nedge e @b0 @b3\nedge f @b1 @b2\n",
        )
        .unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }
}
