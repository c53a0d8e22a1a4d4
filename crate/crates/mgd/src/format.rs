//! The `mgd v1` line-oriented text format for diagrams and tangles.
//!
//! Directives (one per line, `#` starts a comment):
//!
//! ```text
//! mgd v1
//! boundary b0 b1 ... bk-1            # tangles only, ccw on the disk
//! vertex <id> crossing over=<s>,<s>
//! vertex <id> marked plus=<s>,<s>/<s>,<s>
//! edge <id> <end> <end> [dir=<end>]  # end = <v>:<slot> or @b<i>; dir names the tail
//! circle <id> [in=<face-ref>] [dir=ccw|cw]
//! placement <vertex> in <face-ref>|outer [via <face-ref>]
//! outer <face-ref>|auto              # closed diagrams only
//! ```
//!
//! A face-ref names the face to the left of a dart: `<v>:<slot>` is the face
//! left of the dart leaving vertex v at that slot, `c<i>:in`/`c<i>:out` are
//! the two sides of a circle, and `b<i>:gap` is the face left of the tangle
//! closure arc from port i to port i+1. Placements record which face of the
//! plane holds each connected component that is not anchored to the rest;
//! `via` names the component's own outward-looking face when it is not the
//! face traced from its least dart.
//!
//! Serialization is normalizing: ids come out as `v0.., e0.., c0..` in index
//! order, so serialize . parse . serialize is a fixed point.

use crate::diagram::{
    Dart, Diagram, DiagramError, End, FaceGlue, FaceId, FaceToken, OrientData, OverPair,
    PlusPairing, RawDiagram, Slot, VertexKind,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn syn(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn sem(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RefSpec {
    Slot(String, Slot),
    CircleSide(String, u8),
    Gap(usize),
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum EndSpec {
    Slot(String, Slot),
    Port(usize),
}

struct Parser {
    verts: Vec<(String, VertexKind)>,
    vmap: BTreeMap<String, usize>,
    edges: Vec<(String, [EndSpec; 2], Option<EndSpec>, usize)>,
    circles: Vec<(String, Option<(RefSpec, usize)>, Option<bool>)>,
    cmap: BTreeMap<String, usize>,
    ports: usize,
    placements: Vec<(String, RefSpec, Option<RefSpec>, usize)>,
    outer: Option<(RefSpec, usize)>,
}

fn parse_slot(line: usize, s: &str) -> Result<Slot, FormatError> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        "2" => Ok(2),
        "3" => Ok(3),
        _ => Err(syn(line, format!("bad slot `{s}` (want 0..3)"))),
    }
}

fn parse_port_label(line: usize, s: &str) -> Result<usize, FormatError> {
    s.strip_prefix('b')
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| syn(line, format!("bad port label `{s}`")))
}

fn parse_end(line: usize, s: &str) -> Result<EndSpec, FormatError> {
    if let Some(p) = s.strip_prefix('@') {
        return Ok(EndSpec::Port(parse_port_label(line, p)?));
    }
    let (v, slot) = s
        .split_once(':')
        .ok_or_else(|| syn(line, format!("bad edge end `{s}` (want v:slot or @b<i>)")))?;
    Ok(EndSpec::Slot(v.to_string(), parse_slot(line, slot)?))
}

fn parse_ref(line: usize, s: &str) -> Result<RefSpec, FormatError> {
    if s == "outer" {
        return Ok(RefSpec::Outer);
    }
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| syn(line, format!("bad face ref `{s}`")))?;
    match b {
        "in" => Ok(RefSpec::CircleSide(a.to_string(), 1)),
        "out" => Ok(RefSpec::CircleSide(a.to_string(), 0)),
        "gap" => Ok(RefSpec::Gap(parse_port_label(line, a)?)),
        _ => Ok(RefSpec::Slot(a.to_string(), parse_slot(line, b)?)),
    }
}

pub fn parse_diagram(text: &str) -> Result<Diagram, FormatError> {
    let mut p = Parser {
        verts: Vec::new(),
        vmap: BTreeMap::new(),
        edges: Vec::new(),
        circles: Vec::new(),
        cmap: BTreeMap::new(),
        ports: 0,
        placements: Vec::new(),
        outer: None,
    };
    let mut saw_header = false;
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if !saw_header {
            if toks == ["mgd", "v1"] {
                saw_header = true;
                continue;
            }
            return Err(syn(line, "expected header `mgd v1`"));
        }
        match toks[0] {
            "boundary" => {
                if p.ports > 0 {
                    return Err(sem(line, "duplicate boundary directive"));
                }
                for (j, t) in toks[1..].iter().enumerate() {
                    let n = parse_port_label(line, t)?;
                    if n != j {
                        return Err(sem(
                            line,
                            format!("boundary labels must be b0..bk-1 in order, got `{t}`"),
                        ));
                    }
                }
                p.ports = toks.len() - 1;
                if p.ports == 0 {
                    return Err(syn(line, "boundary needs at least one label"));
                }
            }
            "vertex" => {
                if toks.len() < 3 {
                    return Err(syn(line, "vertex <id> crossing|marked ..."));
                }
                let name = toks[1].to_string();
                if p.vmap.contains_key(&name) {
                    return Err(sem(line, format!("duplicate vertex id `{name}`")));
                }
                let kind = match toks[2] {
                    "crossing" => {
                        let arg = toks
                            .get(3)
                            .and_then(|t| t.strip_prefix("over="))
                            .ok_or_else(|| syn(line, "crossing needs over=<s>,<s>"))?;
                        match arg {
                            "0,2" | "2,0" => VertexKind::Crossing(OverPair::Axis02),
                            "1,3" | "3,1" => VertexKind::Crossing(OverPair::Axis13),
                            _ => return Err(syn(line, "over pair must be 0,2 or 1,3")),
                        }
                    }
                    "marked" => {
                        let arg = toks
                            .get(3)
                            .and_then(|t| t.strip_prefix("plus="))
                            .ok_or_else(|| syn(line, "marked needs plus=<s>,<s>/<s>,<s>"))?;
                        match arg {
                            "0,1/2,3" | "2,3/0,1" => VertexKind::Marked(PlusPairing::P01x23),
                            "1,2/3,0" | "3,0/1,2" => VertexKind::Marked(PlusPairing::P12x30),
                            _ => return Err(syn(line, "plus pairing must be 0,1/2,3 or 1,2/3,0")),
                        }
                    }
                    other => return Err(syn(line, format!("unknown vertex kind `{other}`"))),
                };
                p.vmap.insert(name.clone(), p.verts.len());
                p.verts.push((name, kind));
            }
            "edge" => {
                if toks.len() < 4 {
                    return Err(syn(line, "edge <id> <end> <end> [dir=<end>]"));
                }
                let name = toks[1].to_string();
                let a = parse_end(line, toks[2])?;
                let b = parse_end(line, toks[3])?;
                let mut dir = None;
                for t in &toks[4..] {
                    if let Some(d) = t.strip_prefix("dir=") {
                        dir = Some(parse_end(line, d)?);
                    } else {
                        return Err(syn(line, format!("unknown edge attribute `{t}`")));
                    }
                }
                p.edges.push((name, [a, b], dir, line));
            }
            "circle" => {
                if toks.len() < 2 {
                    return Err(syn(line, "circle <id> [in=<face-ref>] [dir=ccw|cw]"));
                }
                let name = toks[1].to_string();
                if p.cmap.contains_key(&name) {
                    return Err(sem(line, format!("duplicate circle id `{name}`")));
                }
                let mut inref = None;
                let mut dir = None;
                for t in &toks[2..] {
                    if let Some(r) = t.strip_prefix("in=") {
                        inref = Some((parse_ref(line, r)?, line));
                    } else if let Some(d) = t.strip_prefix("dir=") {
                        dir = Some(match d {
                            "ccw" => true,
                            "cw" => false,
                            _ => return Err(syn(line, "circle dir must be ccw or cw")),
                        });
                    } else {
                        return Err(syn(line, format!("unknown circle attribute `{t}`")));
                    }
                }
                p.cmap.insert(name.clone(), p.circles.len());
                p.circles.push((name, inref, dir));
            }
            "placement" => {
                if toks.len() < 4 || toks[2] != "in" {
                    return Err(syn(line, "placement <vertex> in <face-ref> [via <face-ref>]"));
                }
                let member = toks[1].to_string();
                let parent = parse_ref(line, toks[3])?;
                let via = if toks.len() == 6 && toks[4] == "via" {
                    Some(parse_ref(line, toks[5])?)
                } else if toks.len() == 4 {
                    None
                } else {
                    return Err(syn(line, "placement <vertex> in <face-ref> [via <face-ref>]"));
                };
                p.placements.push((member, parent, via, line));
            }
            "outer" => {
                if toks.len() != 2 {
                    return Err(syn(line, "outer <face-ref>|auto"));
                }
                if p.outer.is_some() {
                    return Err(sem(line, "duplicate outer directive"));
                }
                if toks[1] != "auto" {
                    p.outer = Some((parse_ref(line, toks[1])?, line));
                } else {
                    p.outer = Some((RefSpec::Outer, line));
                }
            }
            other => return Err(syn(line, format!("unknown directive `{other}`"))),
        }
    }
    if !saw_header {
        return Err(syn(text.lines().count().max(1), "missing header `mgd v1`"));
    }
    if p.ports > 0 {
        if let Some((_, line)) = &p.outer {
            return Err(sem(
                *line,
                "tangles fix the unbounded face; drop the outer directive",
            ));
        }
    }

    build(p)
}

fn build(p: Parser) -> Result<Diagram, FormatError> {
    let nv = p.verts.len();
    let ne = p.edges.len();
    let nc = p.circles.len();

    let resolve_end = |spec: &EndSpec, line: usize| -> Result<End, FormatError> {
        match spec {
            EndSpec::Slot(v, s) => {
                let vi = *p
                    .vmap
                    .get(v)
                    .ok_or_else(|| sem(line, format!("unknown vertex `{v}`")))?;
                Ok(End::V(vi, *s))
            }
            EndSpec::Port(b) => {
                if *b >= p.ports {
                    return Err(sem(line, format!("port b{b} not declared in boundary")));
                }
                Ok(End::P(*b))
            }
        }
    };

    let mut edges: Vec<[End; 2]> = Vec::with_capacity(ne);
    let mut dirs: Vec<Option<bool>> = Vec::with_capacity(ne);
    for (_, ends, dir, line) in &p.edges {
        let a = resolve_end(&ends[0], *line)?;
        let b = resolve_end(&ends[1], *line)?;
        let fwd = match dir {
            None => None,
            Some(d) => {
                let tail = resolve_end(d, *line)?;
                if tail == a {
                    Some(true)
                } else if tail == b {
                    Some(false)
                } else {
                    return Err(sem(*line, "dir= must name one of the edge's ends"));
                }
            }
        };
        edges.push([a, b]);
        dirs.push(fwd);
    }

    // Orientation is all-or-nothing.
    let any_dir = dirs.iter().any(|d| d.is_some()) || p.circles.iter().any(|c| c.2.is_some());
    let orient = if any_dir {
        let mut edge_fwd = Vec::with_capacity(ne);
        for (i, d) in dirs.iter().enumerate() {
            match d {
                Some(f) => edge_fwd.push(*f),
                None => {
                    return Err(sem(
                        p.edges[i].3,
                        format!("edge `{}` missing dir= in oriented diagram", p.edges[i].0),
                    ))
                }
            }
        }
        let mut circle_ccw = Vec::with_capacity(nc);
        for (name, _, d) in &p.circles {
            match d {
                Some(t) => circle_ccw.push(*t),
                None => {
                    return Err(sem(
                        1,
                        format!("circle `{name}` missing dir= in oriented diagram"),
                    ))
                }
            }
        }
        Some(OrientData {
            edge_fwd,
            circle_ccw,
        })
    } else {
        None
    };

    // Dart lookup for face refs.
    let mut slot_dart: BTreeMap<(usize, Slot), Dart> = BTreeMap::new();
    for (e, ends) in edges.iter().enumerate() {
        for h in 0..2 {
            if let End::V(v, s) = ends[h] {
                slot_dart.entry((v, s)).or_insert(Dart::regular(e, h));
            }
        }
    }

    let resolve_ref = |r: &RefSpec, line: usize| -> Result<Option<FaceToken>, FormatError> {
        match r {
            RefSpec::Outer => Ok(None),
            RefSpec::Slot(v, s) => {
                let vi = *p
                    .vmap
                    .get(v)
                    .ok_or_else(|| sem(line, format!("unknown vertex `{v}` in face ref")))?;
                let d = slot_dart
                    .get(&(vi, *s))
                    .ok_or_else(|| sem(line, format!("no edge at {v}:{s}")))?;
                Ok(Some(FaceToken::Left(*d)))
            }
            RefSpec::CircleSide(c, side) => {
                let ci = *p
                    .cmap
                    .get(c)
                    .ok_or_else(|| sem(line, format!("unknown circle `{c}` in face ref")))?;
                Ok(Some(FaceToken::CircleSide(ci, *side)))
            }
            RefSpec::Gap(i) => {
                if *i >= p.ports {
                    return Err(sem(line, format!("gap ref b{i}:gap out of range")));
                }
                Ok(Some(FaceToken::Left(Dart((2 * ne + 2 * i) as u32))))
            }
        }
    };

    // Islands for placement resolution: edges, circles, closure ring.
    let ring = ne + nc;
    let n_elems = ne + nc + if p.ports > 0 { 1 } else { 0 };
    let mut parent: Vec<usize> = (0..n_elems).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
            r
        } else {
            x
        }
    }
    let mut vertex_elem = vec![usize::MAX; nv];
    for (e, ends) in edges.iter().enumerate() {
        for end in ends {
            match *end {
                End::V(v, _) => {
                    if vertex_elem[v] == usize::MAX {
                        vertex_elem[v] = e;
                    } else {
                        let (a, b) = (find(&mut parent, e), find(&mut parent, vertex_elem[v]));
                        parent[a] = b;
                    }
                }
                End::P(_) => {
                    let (a, b) = (find(&mut parent, e), find(&mut parent, ring));
                    parent[a] = b;
                }
            }
        }
    }

    let canonical_out = |root: usize, parent: &mut Vec<usize>| -> FaceToken {
        for e in 0..ne {
            if find(parent, e) == root {
                return FaceToken::Left(Dart::regular(e, 0));
            }
        }
        for c in 0..nc {
            if find(parent, ne + c) == root {
                return FaceToken::CircleSide(c, 0);
            }
        }
        unreachable!("island without elements")
    };

    let mut glue = FaceGlue::default();
    let mut placed: BTreeMap<usize, ()> = BTreeMap::new();
    let mut outer_unions: Vec<FaceToken> = Vec::new();
    for (member, parent_ref, via, line) in &p.placements {
        let vi = *p
            .vmap
            .get(member)
            .ok_or_else(|| sem(*line, format!("unknown placement member `{member}`")))?;
        let elem = vertex_elem[vi];
        let root = find(&mut parent, elem);
        if placed.insert(root, ()).is_some() {
            return Err(sem(*line, format!("component of `{member}` placed twice")));
        }
        let out_tok = match via {
            Some(r) => {
                resolve_ref(r, *line)?.ok_or_else(|| sem(*line, "via ref cannot be `outer`"))?
            }
            None => canonical_out(root, &mut parent),
        };
        match resolve_ref(parent_ref, *line)? {
            Some(t) => glue.unions.push((out_tok, t)),
            None => outer_unions.push(out_tok),
        }
    }
    for (ci, (name, inref, _)) in p.circles.iter().enumerate() {
        if let Some((r, line)) = inref {
            let root = find(&mut parent, ne + ci);
            if placed.insert(root, ()).is_some() {
                return Err(sem(
                    *line,
                    format!("component of circle `{name}` placed twice"),
                ));
            }
            match resolve_ref(r, *line)? {
                Some(t) => glue.unions.push((FaceToken::CircleSide(ci, 0), t)),
                None => outer_unions.push(FaceToken::CircleSide(ci, 0)),
            }
        }
    }

    let outer_tok: Option<FaceToken> = match &p.outer {
        Some((RefSpec::Outer, _)) | None => None,
        Some((r, line)) => resolve_ref(r, *line)?,
    };
    let mut roots: Vec<usize> = Vec::new();
    for elem in 0..n_elems {
        let root = find(&mut parent, elem);
        if root == elem && !placed.contains_key(&root) {
            roots.push(root);
        }
    }
    if p.ports > 0 {
        let ring_root = find(&mut parent, ring);
        for r in &roots {
            if *r != ring_root {
                return Err(sem(
                    1,
                    "tangle has a floating component without a placement clause".to_string(),
                ));
            }
        }
        if !outer_unions.is_empty() {
            return Err(sem(1, "tangle placements cannot target `outer`".to_string()));
        }
    } else if n_elems > 0 {
        let anchor = match outer_tok {
            Some(t) => t,
            None => match roots.first() {
                Some(r0) => canonical_out(*r0, &mut parent),
                None => canonical_out(find(&mut parent, 0), &mut parent),
            },
        };
        glue.outer = Some(anchor);
        // The anchor names the outward face of its own island; only the
        // other roots' outward faces get glued to it.
        let anchor_root = match anchor {
            FaceToken::Left(d) => find(&mut parent, (d.0 as usize) / 2),
            FaceToken::CircleSide(c, _) => find(&mut parent, ne + c),
        };
        for r in roots {
            if r == anchor_root {
                continue;
            }
            let t = canonical_out(r, &mut parent);
            glue.unions.push((t, anchor));
        }
        for t in outer_unions {
            glue.unions.push((t, anchor));
        }
    }

    let raw = RawDiagram {
        verts: p.verts.iter().map(|(_, k)| *k).collect(),
        edges,
        n_circles: nc,
        ports: p.ports,
        orient,
    };
    Ok(Diagram::assemble(raw, &glue)?)
}

fn end_str(end: End) -> String {
    match end {
        End::V(v, s) => format!("v{v}:{s}"),
        End::P(p) => format!("@b{p}"),
    }
}

/// A deterministic textual name for a face: least vertex-tailed dart on it,
/// else a gap arc, else a circle side. With `island`, only items of that
/// island are considered.
fn face_ref_string(d: &Diagram, f: FaceId, island: Option<usize>) -> String {
    let ne = d.n_edges();
    for i in 0..2 * ne {
        if d.faces.dart_face[i] == f {
            if let Some(isl) = island {
                if d.edge_island[i / 2] != isl {
                    continue;
                }
            }
            if let End::V(v, s) = d.dart_tail(Dart(i as u32)) {
                return format!("v{v}:{s}");
            }
        }
    }
    if island.is_none() {
        for p in 0..d.ports {
            let arc = 2 * ne + 2 * p;
            if d.faces.dart_face[arc] == f {
                return format!("b{p}:gap");
            }
        }
    }
    for c in 0..d.n_circles {
        if let Some(isl) = island {
            if d.circle_island[c] != isl {
                continue;
            }
        }
        if d.faces.circle_faces[c][0] == f {
            return format!("c{c}:out");
        }
        if d.faces.circle_faces[c][1] == f {
            return format!("c{c}:in");
        }
    }
    unreachable!("face without nameable boundary")
}

pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = String::from("mgd v1\n");
    if d.ports > 0 {
        out.push_str("boundary");
        for p in 0..d.ports {
            out.push_str(&format!(" b{p}"));
        }
        out.push('\n');
    }
    for (v, kind) in d.verts.iter().enumerate() {
        match kind {
            VertexKind::Crossing(OverPair::Axis02) => {
                out.push_str(&format!("vertex v{v} crossing over=0,2\n"))
            }
            VertexKind::Crossing(OverPair::Axis13) => {
                out.push_str(&format!("vertex v{v} crossing over=1,3\n"))
            }
            VertexKind::Marked(PlusPairing::P01x23) => {
                out.push_str(&format!("vertex v{v} marked plus=0,1/2,3\n"))
            }
            VertexKind::Marked(PlusPairing::P12x30) => {
                out.push_str(&format!("vertex v{v} marked plus=1,2/3,0\n"))
            }
        }
    }
    for (e, ends) in d.edges.iter().enumerate() {
        out.push_str(&format!(
            "edge e{e} {} {}",
            end_str(ends[0]),
            end_str(ends[1])
        ));
        if let Some(o) = &d.orient {
            let tail = if o.edge_fwd[e] { ends[0] } else { ends[1] };
            out.push_str(&format!(" dir={}", end_str(tail)));
        }
        out.push('\n');
    }

    let (nest, face_owner) = d.nesting_full();
    for c in 0..d.n_circles {
        out.push_str(&format!("circle c{c}"));
        let island = d.circle_island[c];
        let parent = nest[island].parent_face;
        if parent != d.faces.outer {
            out.push_str(&format!(
                " in={}",
                face_ref_string(d, parent, face_owner[parent])
            ));
        }
        if let Some(o) = &d.orient {
            out.push_str(&format!(
                " dir={}",
                if o.circle_ccw[c] { "ccw" } else { "cw" }
            ));
        }
        out.push('\n');
    }

    // Vertex islands: the outer line anchors one root; others get placement
    // lines when nested or when their outward face is not the default.
    let island_rep = d.island_vertex();
    let canonical_face = |island: usize| -> FaceId {
        for e in 0..d.n_edges() {
            if d.edge_island[e] == island {
                return d.faces.dart_face[2 * e];
            }
        }
        unreachable!("vertex island without edges")
    };
    if d.ports == 0 {
        let mut anchor_island = usize::MAX;
        let mut outer_ref = String::from("auto");
        for i in 0..2 * d.n_edges() {
            if d.faces.dart_face[i] == d.faces.outer {
                if let End::V(v, s) = d.dart_tail(Dart(i as u32)) {
                    anchor_island = d.edge_island[i / 2];
                    outer_ref = format!("v{v}:{s}");
                    break;
                }
            }
        }
        for island in 0..d.n_islands {
            let rep = island_rep[island];
            if rep == usize::MAX || island == anchor_island {
                continue;
            }
            let parent = nest[island].parent_face;
            let out_face = d.face_of_token(nest[island].out_token);
            let needs_via = out_face != canonical_face(island);
            if parent == d.faces.outer && !needs_via {
                continue;
            }
            let parent_str = if parent == d.faces.outer {
                "outer".to_string()
            } else {
                face_ref_string(d, parent, face_owner[parent])
            };
            out.push_str(&format!("placement v{rep} in {parent_str}"));
            if needs_via {
                out.push_str(&format!(
                    " via {}",
                    face_ref_string(d, out_face, Some(island))
                ));
            }
            out.push('\n');
        }
        if d.n_edges() + d.n_circles > 0 {
            out.push_str(&format!("outer {outer_ref}\n"));
        }
    } else {
        for island in 0..d.n_islands {
            let rep = island_rep[island];
            if rep == usize::MAX {
                continue;
            }
            let out_face = d.face_of_token(nest[island].out_token);
            if out_face == d.faces.outer {
                continue; // the ring island
            }
            let parent = nest[island].parent_face;
            out.push_str(&format!(
                "placement v{rep} in {}",
                face_ref_string(d, parent, face_owner[parent])
            ));
            if out_face != canonical_face(island) {
                out.push_str(&format!(
                    " via {}",
                    face_ref_string(d, out_face, Some(island))
                ));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_circle_file() {
        let d = parse_diagram("mgd v1\ncircle c0\nouter auto\n").unwrap();
        assert_eq!(d.n_circles, 1);
        assert_eq!(d.n_verts(), 0);
        assert_eq!(d.faces.n_faces, 2);
    }

    #[test]
    fn empty_diagram_roundtrip() {
        let d = parse_diagram("mgd v1\n").unwrap();
        assert_eq!(d.faces.n_faces, 1);
        let s = serialize_diagram(&d);
        assert_eq!(s, "mgd v1\n");
        parse_diagram(&s).unwrap();
    }

    #[test]
    fn figure_eight_marked_roundtrip() {
        let text = "mgd v1\n\
                    vertex m0 marked plus=0,1/2,3\n\
                    edge a m0:0 m0:1\n\
                    edge b m0:2 m0:3\n\
                    outer m0:1\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.n_verts(), 1);
        assert_eq!(d.n_edges(), 2);
        assert_eq!(d.faces.n_faces, 3);
        let s = serialize_diagram(&d);
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(serialize_diagram(&d2), s);
    }

    #[test]
    fn slot_occupied_is_semantic_error() {
        let text = "mgd v1\n\
                    vertex v0 crossing over=0,2\n\
                    edge a v0:0 v0:1\n\
                    edge b v0:1 v0:2\n";
        match parse_diagram(text) {
            Err(FormatError::Diagram(DiagramError::SlotOccupied(0, 1))) => {}
            other => panic!("expected slot occupied, got {other:?}"),
        }
    }

    #[test]
    fn nested_circle_roundtrip() {
        let text = "mgd v1\ncircle c0\ncircle c1 in=c0:in\ncircle c2 in=c0:in\nouter auto\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.faces.n_faces, 4);
        let s = serialize_diagram(&d);
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(d2.faces.n_faces, 4);
        assert_eq!(serialize_diagram(&d2), s);
    }

    #[test]
    fn tangle_roundtrip() {
        let text = "mgd v1\n\
                    boundary b0 b1 b2 b3\n\
                    vertex x crossing over=1,3\n\
                    edge e0 x:0 @b0\n\
                    edge e1 x:1 @b1\n\
                    edge e2 x:2 @b2\n\
                    edge e3 x:3 @b3\n";
        let d = parse_diagram(text).unwrap();
        assert!(d.is_tangle());
        // closure of a single crossing: V=1+4, E=4+4, chi=2 => F=5
        assert_eq!(d.faces.n_faces, 5);
        let s = serialize_diagram(&d);
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(serialize_diagram(&d2), s);
    }

    #[test]
    fn oriented_edges_roundtrip() {
        let text = "mgd v1\n\
                    vertex m0 marked plus=1,2/3,0\n\
                    edge a m0:0 m0:1 dir=m0:1\n\
                    edge b m0:2 m0:3 dir=m0:3\n\
                    outer m0:1\n";
        let d = parse_diagram(text).unwrap();
        assert!(d.orient.is_some());
        let s = serialize_diagram(&d);
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(d2.orient, d.orient);
        assert_eq!(serialize_diagram(&d2), s);
    }

    #[test]
    fn placement_via_roundtrip() {
        // a figure-eight curve nested inside a circle, with one of its
        // monogon lobes chosen as the outward face
        let text = "mgd v1\n\
                    vertex x crossing over=0,2\n\
                    edge e0 x:0 x:3\n\
                    edge e1 x:1 x:2\n\
                    circle c0\n\
                    placement x in c0:in via x:1\n\
                    outer c0:out\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.faces.n_faces, 4);
        let s = serialize_diagram(&d);
        assert!(s.contains("via"), "non-default outward face kept: {s}");
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(serialize_diagram(&d2), s);
        // without via, the default outward face gives a different diagram
        let text2 = "mgd v1\n\
                    vertex x crossing over=0,2\n\
                    edge e0 x:0 x:3\n\
                    edge e1 x:1 x:2\n\
                    circle c0\n\
                    placement x in c0:in\n\
                    outer c0:out\n";
        let d3 = parse_diagram(text2).unwrap();
        assert_eq!(d3.faces.n_faces, 4);
        assert_ne!(serialize_diagram(&d3), s);
    }
}
