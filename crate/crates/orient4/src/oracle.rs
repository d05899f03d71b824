//! Exhaustive orientation search for small graphs.
//!
//! Assignments are ranked so that canonical edge 0 is the most significant
//! bit, which makes "smallest rank" and "lexicographically first direction
//! vector" the same thing. The rank space is cut into contiguous chunks that
//! run in parallel; chunk results merge by `(diameter, rank)`, so the answer
//! does not depend on how the space was split.

use std::sync::atomic::{AtomicU32, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::digraph::{Layout, Orientation};
use crate::error::{Error, Result};
use crate::tree::{validate, TreeSpec};

pub const DEFAULT_MAX_EDGES: usize = 24;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub max_edges: usize,
    /// Only search assignments with edge 0 in its default direction. Every
    /// orientation's reverse has the same diameter, so the optimum and the
    /// lexicographically first witness are unchanged.
    pub symmetry: bool,
    /// Number of rank ranges to split the search into; 0 picks automatically.
    pub chunks: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_edges: DEFAULT_MAX_EDGES, symmetry: false, chunks: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub orientation_number: u32,
    /// The witness as a tree orientation; `None` for bipartite searches.
    pub witness: Option<Orientation>,
    /// Witness arcs as `(tail, head)` labels, in canonical edge order.
    pub witness_arcs: Vec<(String, String)>,
    pub witness_rank: u64,
    pub orientations_examined: u64,
    pub strong_count: u64,
    pub elapsed: Duration,
}

/// Undirected graph on at most 64 vertices with a canonical edge order.
struct SmallGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// A proven lower bound on any orientation's diameter; reaching it ends
    /// the search early.
    lower_bound: u32,
}

impl SmallGraph {
    fn has_bridge(&self) -> bool {
        (0..self.edges.len()).any(|skip| {
            let mut adj = vec![0u64; self.n];
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if e != skip {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            let mut reach = 1u64;
            let mut frontier = 1u64;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    next |= adj[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                frontier = next & !reach;
                reach |= next;
            }
            reach != full_mask(self.n)
        })
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn spread(adj: &[u64], mut frontier: u64) -> u64 {
    let mut next = 0;
    while frontier != 0 {
        next |= adj[frontier.trailing_zeros() as usize];
        frontier &= frontier - 1;
    }
    next
}

fn reaches_all(adj: &[u64], full: u64) -> bool {
    let mut reach = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let next = spread(adj, frontier) & !reach;
        reach |= next;
        frontier = next;
    }
    reach == full
}

/// Diameter if it is at most `cutoff`, otherwise `None`.
fn bounded_diameter(out: &[u64], full: u64, cutoff: u32) -> Option<u32> {
    let mut diam = 0;
    for s in 0..out.len() {
        let mut reach = 1u64 << s;
        let mut frontier = reach;
        let mut level = 0;
        while reach != full {
            if level == cutoff {
                return None;
            }
            let next = spread(out, frontier) & !reach;
            if next == 0 {
                return None;
            }
            reach |= next;
            frontier = next;
            level += 1;
        }
        diam = diam.max(level);
    }
    Some(diam)
}

struct ChunkOutcome {
    best: Option<(u32, u64)>,
    examined: u64,
    strong: u64,
}

fn search_chunk(
    g: &SmallGraph,
    lo: u64,
    hi: u64,
    chunk: usize,
    global_best: &AtomicU32,
    stop_after: &AtomicUsize,
) -> ChunkOutcome {
    let m = g.edges.len();
    let full = full_mask(g.n);
    let mut out = vec![0u64; g.n];
    let mut inn = vec![0u64; g.n];
    let mut best: Option<(u32, u64)> = None;
    let mut examined = 0;
    let mut strong = 0;
    for rank in lo..hi {
        if chunk > stop_after.load(Ordering::Relaxed) {
            break;
        }
        examined += 1;
        out.iter_mut().for_each(|x| *x = 0);
        inn.iter_mut().for_each(|x| *x = 0);
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            let (u, v) = if (rank >> (m - 1 - e)) & 1 == 1 { (b, a) } else { (a, b) };
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        if out.iter().any(|&x| x == 0) || inn.iter().any(|&x| x == 0) {
            continue;
        }
        if !reaches_all(&out, full) || !reaches_all(&inn, full) {
            continue;
        }
        strong += 1;
        let local_cut = best.map_or(u32::MAX, |(d, _)| d - 1);
        let cutoff = local_cut.min(global_best.load(Ordering::Relaxed));
        if let Some(d) = bounded_diameter(&out, full, cutoff.min(g.n as u32)) {
            best = Some((d, rank));
            global_best.fetch_min(d, Ordering::Relaxed);
            if d <= g.lower_bound {
                stop_after.fetch_min(chunk, Ordering::Relaxed);
                break;
            }
        }
    }
    ChunkOutcome { best, examined, strong }
}

/// Runs the search; returns `(diameter, rank, examined, strong)`.
fn search(g: &SmallGraph, opts: &OracleOptions) -> Result<(u32, u64, u64, u64)> {
    let m = g.edges.len();
    if m > opts.max_edges {
        return Err(Error::Refused(format!("edge budget exceeded: {m} edges > max {}", opts.max_edges)));
    }
    if g.n > 64 || m > 62 {
        return Err(Error::Refused(format!("graph too large for exhaustive search: {} vertices, {m} edges", g.n)));
    }
    if g.has_bridge() {
        return Err(Error::Refused("graph has a bridge, so no strong orientation exists".into()));
    }
    let total: u64 = if opts.symmetry && m > 0 { 1 << (m - 1) } else { 1 << m };
    let chunks = if opts.chunks > 0 {
        opts.chunks as u64
    } else {
        (total / 4096).clamp(1, 1024)
    }
    .min(total);
    let step = total.div_ceil(chunks);
    let global_best = AtomicU32::new(u32::MAX);
    let stop_after = AtomicUsize::new(usize::MAX);
    let examined = AtomicU64::new(0);
    let strong = AtomicU64::new(0);
    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let lo = c * step;
            let hi = ((c + 1) * step).min(total);
            let r = search_chunk(g, lo, hi, c as usize, &global_best, &stop_after);
            examined.fetch_add(r.examined, Ordering::Relaxed);
            strong.fetch_add(r.strong, Ordering::Relaxed);
            r.best
        })
        .min();
    let (d, rank) = best.ok_or_else(|| Error::Refused("no strong orientation exists".into()))?;
    Ok((d, rank, examined.into_inner(), strong.into_inner()))
}

fn rank_to_dirs(rank: u64, m: usize) -> Vec<bool> {
    (0..m).map(|e| (rank >> (m - 1 - e)) & 1 == 1).collect()
}

/// Orientation number of `T(s_1, ..., s_n)` by exhaustive search.
pub fn orientation_number(spec: &TreeSpec, opts: &OracleOptions) -> Result<OracleResult> {
    validate(spec)?;
    let start = Instant::now();
    let layout = Layout::new(spec);
    let g = SmallGraph { n: layout.index.len(), edges: layout.edges.clone(), lower_bound: 4 };
    let (d, rank, examined, strong) = search(&g, opts)?;
    let witness = Orientation::from_layout(layout, rank_to_dirs(rank, g.edges.len()));
    let witness_arcs = witness.arcs().iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
    Ok(OracleResult {
        orientation_number: d,
        witness: Some(witness),
        witness_arcs,
        witness_rank: rank,
        orientations_examined: examined,
        strong_count: strong,
        elapsed: start.elapsed(),
    })
}

/// Orientation number of the complete bipartite graph `K(p,q)`. Vertices are
/// `u1..up` and `v1..vq`; edges are ordered by `u` then `v`, and bit `false`
/// means `u → v`.
pub fn bipartite_orientation_number(p: usize, q: usize, opts: &OracleOptions) -> Result<OracleResult> {
    if p == 0 || q == 0 {
        return Err(Error::Usage("K(p,q) needs p, q ≥ 1".into()));
    }
    let start = Instant::now();
    let edges: Vec<(usize, usize)> = (0..p).flat_map(|a| (0..q).map(move |b| (a, p + b))).collect();
    // Any orientation of a bipartite graph needs 3 steps to return along an arc.
    let g = SmallGraph { n: p + q, edges, lower_bound: 3 };
    let (d, rank, examined, strong) = search(&g, opts)?;
    let label = |x: usize| if x < p { format!("u{}", x + 1) } else { format!("v{}", x - p + 1) };
    let witness_arcs = g
        .edges
        .iter()
        .zip(rank_to_dirs(rank, g.edges.len()))
        .map(|(&(a, b), flip)| if flip { (label(b), label(a)) } else { (label(a), label(b)) })
        .collect();
    Ok(OracleResult {
        orientation_number: d,
        witness: None,
        witness_arcs,
        witness_rank: rank,
        orientations_examined: examined,
        strong_count: strong,
        elapsed: start.elapsed(),
    })
}
