//! Arc-by-arc assembly of an orientation with conflict detection.

use std::sync::Arc;

use crate::digraph::{Layout, Orientation};
use crate::error::{Error, Result};
use crate::tree::{TreeSpec, VertexId};

pub(crate) struct Builder {
    layout: Arc<Layout>,
    dirs: Vec<Option<bool>>,
    center: u32,
}

impl Builder {
    pub fn new(spec: &TreeSpec) -> Builder {
        let layout = Layout::new(spec);
        let m = layout.edges.len();
        Builder { layout, dirs: vec![None; m], center: spec.center_multiplicity }
    }

    pub fn leaves(&self, slot: usize) -> usize {
        self.layout.spec.branches[slot - 1].leaf_multiplicities.len()
    }

    /// Assigns `u → v`. Repeating an arc is allowed; reversing one is not.
    pub fn arc(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        let iu = self.layout.index.index(u);
        let iv = self.layout.index.index(v);
        let (Some(iu), Some(iv)) = (iu, iv) else {
            return Err(Error::Internal(format!("arc {u} -> {v} names a missing vertex")));
        };
        let e = self
            .layout
            .edge_between(iu, iv)
            .ok_or_else(|| Error::Internal(format!("arc {u} -> {v} is not an edge")))?;
        let flip = self.layout.edges[e].0 != iu;
        match self.dirs[e] {
            Some(d) if d != flip => Err(Error::Internal(format!("conflicting assignment for {u} -> {v}"))),
            _ => {
                self.dirs[e] = Some(flip);
                Ok(())
            }
        }
    }

    fn centers(&self, mask: u64) -> impl Iterator<Item = VertexId> {
        (1..=self.center).filter(move |x| mask >> (x - 1) & 1 == 1).map(VertexId::c)
    }

    fn full(&self) -> u64 {
        (1u64 << self.center) - 1
    }

    /// Center copies in `mask` point into `v`; the remaining copies receive
    /// arcs from `v`.
    pub fn through(&mut self, v: VertexId, mask: u64) -> Result<()> {
        for x in self.centers(mask).collect::<Vec<_>>() {
            self.arc(x, v)?;
        }
        for x in self.centers(self.full() & !mask).collect::<Vec<_>>() {
            self.arc(v, x)?;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Orientation> {
        let mut dirs = Vec::with_capacity(self.dirs.len());
        for (e, d) in self.dirs.iter().enumerate() {
            match d {
                Some(d) => dirs.push(*d),
                None => {
                    let (a, b) = self.layout.edges[e];
                    return Err(Error::Internal(format!(
                        "equation block incomplete: edge {} - {} unassigned",
                        self.layout.index.vertex(a),
                        self.layout.index.vertex(b)
                    )));
                }
            }
        }
        Ok(Orientation::from_layout(self.layout, dirs))
    }
}
