//! Seeded local search for a diameter-4 orientation in which every vertex
//! lies on a directed cycle of length at most 4.
//!
//! Used only when no explicit equation block applies. Runs are
//! deterministic for a given seed, and every result is re-checked by the
//! caller.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Layout;

struct Bits {
    n: usize,
    w: usize,
}

impl Bits {
    fn count(&self, row: &[u64]) -> usize {
        row.iter().map(|x| x.count_ones() as usize).sum()
    }

    fn has(&self, row: &[u64], v: usize) -> bool {
        row[v / 64] >> (v % 64) & 1 == 1
    }
}

/// Unreached ordered pairs within 4 steps plus vertices on no cycle of
/// length at most 4. Zero means the orientation qualifies.
fn cost(layout: &Layout, dirs: &[bool], b: &Bits, out: &mut [u64], r3: &mut [u64]) -> usize {
    let (n, w) = (b.n, b.w);
    out.iter_mut().for_each(|x| *x = 0);
    let mut succ = vec![Vec::new(); n];
    for (&(x, y), &flip) in layout.edges.iter().zip(dirs) {
        let (u, v) = if flip { (y, x) } else { (x, y) };
        out[u * w + v / 64] |= 1 << (v % 64);
        succ[u].push(v);
    }
    let mut bad = 0;
    let mut reach = vec![0u64; w];
    let mut frontier = vec![0u64; w];
    let mut next = vec![0u64; w];
    for src in 0..n {
        reach.iter_mut().for_each(|x| *x = 0);
        reach[src / 64] |= 1 << (src % 64);
        frontier.copy_from_slice(&reach);
        for step in 1..=4 {
            next.iter_mut().for_each(|x| *x = 0);
            for (wi, &word) in frontier.iter().enumerate() {
                let mut f = word;
                while f != 0 {
                    let u = wi * 64 + f.trailing_zeros() as usize;
                    for k in 0..w {
                        next[k] |= out[u * w + k];
                    }
                    f &= f - 1;
                }
            }
            for k in 0..w {
                frontier[k] = next[k] & !reach[k];
                reach[k] |= next[k];
            }
            if step == 3 {
                r3[src * w..(src + 1) * w].copy_from_slice(&reach);
            }
        }
        bad += n - b.count(&reach);
    }
    for (v, s) in succ.iter().enumerate() {
        if !s.iter().any(|&x| b.has(&r3[x * w..(x + 1) * w], v)) {
            bad += 1;
        }
    }
    bad
}

/// Direction vector over `layout.edges`, or `None` when the budget runs out.
/// The first restart begins at `init` when given, at a low temperature.
pub(crate) fn anneal(
    layout: &Layout,
    seed: u64,
    restarts: usize,
    iters: usize,
    init: Option<&[bool]>,
) -> Option<Vec<bool>> {
    let n = layout.index.len();
    let m = layout.edges.len();
    if m == 0 {
        return None;
    }
    let b = Bits { n, w: n.div_ceil(64) };
    let mut out = vec![0u64; n * b.w];
    let mut r3 = vec![0u64; n * b.w];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..restarts {
        let (mut dirs, mut temp) = match init {
            Some(d) if round == 0 && d.len() == m => (d.to_vec(), 0.3f64),
            _ => ((0..m).map(|_| rng.gen()).collect(), 2.0f64),
        };
        let mut cur = cost(layout, &dirs, &b, &mut out, &mut r3);
        for _ in 0..iters {
            if cur == 0 {
                return Some(dirs);
            }
            let e = rng.gen_range(0..m);
            dirs[e] = !dirs[e];
            let new = cost(layout, &dirs, &b, &mut out, &mut r3);
            if new <= cur || rng.gen::<f64>() < ((cur as f64 - new as f64) / temp).exp() {
                cur = new;
            } else {
                dirs[e] = !dirs[e];
            }
            temp = (temp * 0.9998).max(0.05);
        }
        if cur == 0 {
            return Some(dirs);
        }
    }
    None
}
