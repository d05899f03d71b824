//! Orientations of a multiplied tree and their distance metrics.
//!
//! An orientation stores one direction bit per canonical edge (see
//! [`multiplied_edges`]): `false` means the first endpoint, the one closer to
//! the center, points to the second.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tree::{edge_lookup, multiplied_edges, Role, TreeSpec, VertexId, VertexIndex};

/// Sentinel distance for an unreachable ordered pair.
pub const INF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diameter {
    Finite(u32),
    Unreachable,
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Unreachable => None,
        }
    }

    fn key(self) -> u64 {
        match self {
            Diameter::Finite(d) => d as u64,
            Diameter::Unreachable => u64::MAX,
        }
    }
}

impl PartialOrd for Diameter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diameter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Vertex numbering and canonical edge list of one spec, shared between
/// orientations of the same graph.
#[derive(Debug)]
pub(crate) struct Layout {
    pub spec: TreeSpec,
    pub index: VertexIndex,
    pub edges: Vec<(usize, usize)>,
    pub lookup: HashMap<(usize, usize), usize>,
}

impl Layout {
    pub fn new(spec: &TreeSpec) -> Arc<Layout> {
        let index = VertexIndex::new(spec);
        let ids = multiplied_edges(spec);
        let lookup = edge_lookup(&index, &ids);
        let edges = ids
            .iter()
            .map(|(u, v)| (index.index(*u).unwrap(), index.index(*v).unwrap()))
            .collect();
        Arc::new(Layout { spec: spec.clone(), index, edges, lookup })
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }
}

#[derive(Clone)]
pub struct Orientation {
    layout: Arc<Layout>,
    dirs: Vec<bool>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        self.layout.spec == other.layout.spec && self.dirs == other.dirs
    }
}

impl Eq for Orientation {}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Orientation")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.dirs.len())
            .finish()
    }
}

impl Orientation {
    pub(crate) fn from_layout(layout: Arc<Layout>, dirs: Vec<bool>) -> Orientation {
        assert_eq!(dirs.len(), layout.edges.len());
        let n = layout.index.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (&(a, b), &flip) in layout.edges.iter().zip(&dirs) {
            let (u, v) = if flip { (b, a) } else { (a, b) };
            out[u].push(v);
            inn[v].push(u);
        }
        Orientation { layout, dirs, out, inn }
    }

    /// Builds an orientation from one direction bit per canonical edge.
    pub fn from_directions(spec: &TreeSpec, dirs: Vec<bool>) -> Result<Orientation> {
        let layout = Layout::new(spec);
        if dirs.len() != layout.edges.len() {
            return Err(Error::Usage(format!(
                "expected {} directions, got {}",
                layout.edges.len(),
                dirs.len()
            )));
        }
        Ok(Orientation::from_layout(layout, dirs))
    }

    /// Builds an orientation from explicit arcs. Every multiplied edge must
    /// appear exactly once, in either direction.
    pub fn from_arcs(spec: &TreeSpec, arcs: &[(VertexId, VertexId)]) -> Result<Orientation> {
        let layout = Layout::new(spec);
        let mut dirs: Vec<Option<bool>> = vec![None; layout.edges.len()];
        for &(u, v) in arcs {
            let (Some(a), Some(b)) = (layout.index.index(u), layout.index.index(v)) else {
                return Err(Error::InvalidSpec(format!("arc {u} -> {v} uses a vertex outside the spec")));
            };
            let Some(e) = layout.edge_between(a, b) else {
                return Err(Error::InvalidSpec(format!("arc {u} -> {v} is not an edge of the spec")));
            };
            if dirs[e].is_some() {
                return Err(Error::InvalidSpec(format!("edge {u} - {v} is listed twice")));
            }
            dirs[e] = Some(layout.edges[e].0 != a);
        }
        if let Some(e) = dirs.iter().position(Option::is_none) {
            let (a, b) = layout.edges[e];
            let missing = dirs.iter().filter(|d| d.is_none()).count();
            return Err(Error::InvalidSpec(format!(
                "{missing} edge(s) of the spec have no arc, first {} - {}",
                layout.index.vertex(a),
                layout.index.vertex(b)
            )));
        }
        Ok(Orientation::from_layout(layout, dirs.into_iter().map(Option::unwrap).collect()))
    }

    pub fn spec(&self) -> &TreeSpec {
        &self.layout.spec
    }

    pub fn directions(&self) -> &[bool] {
        &self.dirs
    }

    pub fn vertex_count(&self) -> usize {
        self.layout.index.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        self.layout.index.vertices()
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.layout.index.index(v)
    }

    pub fn vertex(&self, idx: usize) -> VertexId {
        self.layout.index.vertex(idx)
    }

    /// Arcs in canonical edge order.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let ix = &self.layout.index;
        self.layout
            .edges
            .iter()
            .zip(&self.dirs)
            .map(|(&(a, b), &flip)| if flip { (ix.vertex(b), ix.vertex(a)) } else { (ix.vertex(a), ix.vertex(b)) })
            .collect()
    }

    /// `Some(true)` if `u → v`, `Some(false)` if `v → u`, `None` if not adjacent.
    pub fn points_to(&self, u: VertexId, v: VertexId) -> Option<bool> {
        let a = self.vertex_index(u)?;
        let b = self.vertex_index(v)?;
        let e = self.layout.edge_between(a, b)?;
        Some((self.layout.edges[e].0 == a) != self.dirs[e])
    }

    pub fn out_neighbors(&self, idx: usize) -> &[usize] {
        &self.out[idx]
    }

    pub fn in_neighbors(&self, idx: usize) -> &[usize] {
        &self.inn[idx]
    }

    fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<u32> {
        let mut dist = vec![INF; adj.len()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distances from `src` to every vertex, [`INF`] where unreachable.
    pub fn distances_from(&self, src: usize) -> Vec<u32> {
        Self::bfs(&self.out, src)
    }

    /// Distances from every vertex to `dst`.
    pub fn distances_to(&self, dst: usize) -> Vec<u32> {
        Self::bfs(&self.inn, dst)
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<u32> {
        let a = self.vertex_index(u)?;
        let b = self.vertex_index(v)?;
        Some(self.distances_from(a)[b]).filter(|&d| d != INF)
    }

    /// Full distance matrix, rows indexed by source.
    pub fn distance_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.vertex_count()).into_par_iter().map(|s| self.distances_from(s)).collect()
    }

    pub fn eccentricity(&self, idx: usize) -> Diameter {
        let m = self.distances_from(idx).into_iter().max().unwrap_or(0);
        if m == INF {
            Diameter::Unreachable
        } else {
            Diameter::Finite(m)
        }
    }

    pub fn diameter(&self) -> Diameter {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|s| self.eccentricity(s))
            .max()
            .unwrap_or(Diameter::Finite(0))
    }

    pub fn is_strong(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        !self.distances_from(0).contains(&INF) && !self.distances_to(0).contains(&INF)
    }

    pub fn reverse(&self) -> Orientation {
        Orientation::from_layout(self.layout.clone(), self.dirs.iter().map(|d| !d).collect())
    }

    /// Length of the shortest directed cycle through `idx`.
    pub fn shortest_cycle_through(&self, idx: usize) -> Option<u32> {
        let to = self.distances_to(idx);
        self.out[idx].iter().filter(|&&w| to[w] != INF).map(|&w| to[w] + 1).min()
    }

    /// First vertex that lies on no directed cycle of length at most `m`.
    pub fn vertex_without_short_cycle(&self, m: u32) -> Option<VertexId> {
        (0..self.vertex_count())
            .into_par_iter()
            .find_first(|&v| self.shortest_cycle_through(v).is_none_or(|c| c > m))
            .map(|v| self.vertex(v))
    }

    pub fn every_vertex_on_cycle_le(&self, m: u32) -> bool {
        self.vertex_without_short_cycle(m).is_none()
    }

    fn projection(&self, v: VertexId, toward: Role, outward: bool) -> Result<Vec<VertexId>> {
        if !v.role.adjacent(toward) {
            return Err(Error::Usage(format!("{v} has no neighbours of role {toward:?}")));
        }
        let idx = self
            .vertex_index(v)
            .ok_or_else(|| Error::Usage(format!("{v} is not a vertex of this orientation")))?;
        let adj = if outward { &self.out[idx] } else { &self.inn[idx] };
        let mut res: Vec<VertexId> =
            adj.iter().map(|&w| self.vertex(w)).filter(|w| w.role == toward).collect();
        res.sort();
        Ok(res)
    }

    /// Out-neighbours of `v` among the copies of `toward`.
    pub fn out_projection(&self, v: VertexId, toward: Role) -> Result<Vec<VertexId>> {
        self.projection(v, toward, true)
    }

    /// In-neighbours of `v` among the copies of `toward`.
    pub fn in_projection(&self, v: VertexId, toward: Role) -> Result<Vec<VertexId>> {
        self.projection(v, toward, false)
    }

    /// Lifts the orientation to larger multiplicities. Copy `x` of `v` beyond
    /// the current multiplicity `t_v` copies the neighbourhood of copy
    /// `((x-1) mod t_v) + 1`.
    pub fn extend(&self, target: &TreeSpec, m: u32) -> Result<Orientation> {
        extend_orientation(self, target, m)
    }

    pub fn to_edge_list(&self) -> String {
        self.arcs().iter().map(|(u, v)| format!("{u} -> {v}\n")).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orientation {\n");
        for (u, v) in self.arcs() {
            s.push_str(&format!("  \"{u}\" -> \"{v}\";\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Parses `u -> v` lines. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Vec<(VertexId, VertexId)>> {
    let mut arcs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (u, v) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("line {}: expected 'u -> v'", n + 1)))?;
        let u = u.trim().trim_matches('"').parse().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        let v = v
            .trim()
            .trim_end_matches(';')
            .trim()
            .trim_matches('"')
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        arcs.push((u, v));
    }
    Ok(arcs)
}

pub fn extend_orientation(d: &Orientation, target: &TreeSpec, m: u32) -> Result<Orientation> {
    let base = d.spec();
    if !base.dominated_by(target) {
        return Err(Error::Usage(
            "extension target must have the same tree shape and multiplicities at least the base ones".into(),
        ));
    }
    if base == target {
        return Ok(d.clone());
    }
    if !d.is_strong() {
        return Err(Error::ExtensionInapplicable("base orientation is not strong".into()));
    }
    if let Some(v) = d.vertex_without_short_cycle(m) {
        return Err(Error::ExtensionInapplicable(format!(
            "{v} lies on no directed cycle of length at most {m}"
        )));
    }
    Ok(Orientation::from_layout(Layout::new(target), lift_directions(d, target)))
}

/// Directions on `target` copied from each edge's donor pair in `d`, the
/// donor of copy `x` being copy `((x - 1) mod t) + 1`. No hypothesis is
/// checked; `target` must have the same shape.
pub(crate) fn lift_directions(d: &Orientation, target: &TreeSpec) -> Vec<bool> {
    let base = d.spec();
    let donor = |v: VertexId| -> VertexId {
        let t = base.multiplicity(v.role).expect("same shape");
        VertexId { role: v.role, copy: (v.copy - 1) % t + 1 }
    };
    multiplied_edges(target)
        .into_iter()
        .map(|(u, v)| !d.points_to(donor(u), donor(v)).expect("donor pair is an edge"))
        .collect()
}

/// Pairs (leaf copy of branch i, copy of branch j≠i) whose distance is not 3
/// in both directions.
pub fn leaf_branch_parity_violations(d: &Orientation, dist: &[Vec<u32>]) -> Vec<(VertexId, VertexId)> {
    let vs = d.vertices();
    let mut bad = Vec::new();
    for (p, &u) in vs.iter().enumerate() {
        let Role::Leaf(i, _) = u.role else { continue };
        for (q, &w) in vs.iter().enumerate() {
            if let Role::Branch(j) = w.role {
                if j != i && (dist[p][q] != 3 || dist[q][p] != 3) {
                    bad.push((u, w));
                }
            }
        }
    }
    bad
}

/// Pairs of distinct center copies whose distance is not exactly 2.
pub fn center_distance_violations(d: &Orientation, dist: &[Vec<u32>]) -> Vec<(VertexId, VertexId)> {
    let s = d.spec().center_multiplicity as usize;
    let mut bad = Vec::new();
    for a in 0..s {
        for b in 0..s {
            if a != b && dist[a][b] != 2 {
                bad.push((d.vertex(a), d.vertex(b)));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::BranchSpec;

    fn p5() -> TreeSpec {
        TreeSpec::new(2, vec![BranchSpec::new(2, vec![2]), BranchSpec::new(2, vec![2])])
    }

    #[test]
    fn sink_is_unreachable() {
        let spec = p5();
        let n = multiplied_edges(&spec).len();
        let all_in = Orientation::from_directions(&spec, vec![false; n]).unwrap();
        // every center copy is a source here, leaves are sinks
        assert_eq!(all_in.diameter(), Diameter::Unreachable);
        assert!(!all_in.is_strong());
        assert_eq!(all_in.reverse().reverse(), all_in);
    }

    #[test]
    fn arcs_roundtrip_through_text() {
        let spec = p5();
        let n = multiplied_edges(&spec).len();
        let dirs: Vec<bool> = (0..n).map(|e| e % 3 == 0).collect();
        let d = Orientation::from_directions(&spec, dirs).unwrap();
        let text = d.to_edge_list();
        let back = Orientation::from_arcs(&spec, &parse_edge_list(&text).unwrap()).unwrap();
        assert_eq!(back, d);
        let mut arcs = parse_edge_list(&text).unwrap();
        arcs.pop();
        assert!(Orientation::from_arcs(&spec, &arcs).is_err());
        let dot = d.to_dot();
        let dot_arcs: String = dot.lines().filter(|l| l.contains("->")).map(|l| format!("{l}\n")).collect();
        assert_eq!(parse_edge_list(&dot_arcs).unwrap(), d.arcs());
    }

    #[test]
    fn projections_partition_center() {
        let spec = p5();
        let n = multiplied_edges(&spec).len();
        let d = Orientation::from_directions(&spec, (0..n).map(|e| e % 2 == 1).collect()).unwrap();
        let v = VertexId::b(1, 2);
        let mut all = d.out_projection(v, Role::Center).unwrap();
        all.extend(d.in_projection(v, Role::Center).unwrap());
        all.sort();
        assert_eq!(all, vec![VertexId::c(1), VertexId::c(2)]);
        assert!(d.out_projection(v, Role::Branch(2)).is_err());
    }
}
