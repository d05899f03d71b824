//! Diameter-4 trees and their vertex-multiplications.
//!
//! The center is `c`, branch `[i]` is the i-th neighbour of the center and
//! `[α,i]` is the α-th leaf hanging off `[i]`. All indices are 1-based and
//! follow the input order. Copy `x` of vertex `v` is written `(x, v)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchSpec {
    pub multiplicity: u32,
    #[serde(default)]
    pub leaf_multiplicities: Vec<u32>,
}

impl BranchSpec {
    pub fn new(multiplicity: u32, leaf_multiplicities: Vec<u32>) -> Self {
        BranchSpec { multiplicity, leaf_multiplicities }
    }

    pub fn has_leaves(&self) -> bool {
        !self.leaf_multiplicities.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeSpec {
    pub center_multiplicity: u32,
    pub branches: Vec<BranchSpec>,
}

impl TreeSpec {
    pub fn new(center_multiplicity: u32, branches: Vec<BranchSpec>) -> Self {
        TreeSpec { center_multiplicity, branches }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree spec serializes")
    }

    pub fn deg_c(&self) -> usize {
        self.branches.len()
    }

    pub fn s(&self) -> u32 {
        self.center_multiplicity
    }

    /// Multiplicity of a role, `None` if the role does not exist.
    pub fn multiplicity(&self, role: Role) -> Option<u32> {
        match role {
            Role::Center => Some(self.center_multiplicity),
            Role::Branch(i) => self.branches.get(i.checked_sub(1)?).map(|b| b.multiplicity),
            Role::Leaf(i, a) => self
                .branches
                .get(i.checked_sub(1)?)?
                .leaf_multiplicities
                .get(a.checked_sub(1)?)
                .copied(),
        }
    }

    /// True when both specs describe the same underlying tree.
    pub fn same_shape(&self, other: &TreeSpec) -> bool {
        self.branches.len() == other.branches.len()
            && self
                .branches
                .iter()
                .zip(&other.branches)
                .all(|(a, b)| a.leaf_multiplicities.len() == b.leaf_multiplicities.len())
    }

    /// Componentwise `self ≤ other` on a common shape.
    pub fn dominated_by(&self, other: &TreeSpec) -> bool {
        self.same_shape(other)
            && self.center_multiplicity <= other.center_multiplicity
            && self.branches.iter().zip(&other.branches).all(|(a, b)| {
                a.multiplicity <= b.multiplicity
                    && a.leaf_multiplicities.iter().zip(&b.leaf_multiplicities).all(|(x, y)| x <= y)
            })
    }
}

/// Checks the model invariants. The diagnostic names the violated one.
pub fn validate(spec: &TreeSpec) -> Result<()> {
    if spec.center_multiplicity < 2 {
        return Err(Error::InvalidSpec(format!(
            "multiplicity < 2: center has multiplicity {}",
            spec.center_multiplicity
        )));
    }
    for (i, b) in spec.branches.iter().enumerate() {
        if b.multiplicity < 2 {
            return Err(Error::InvalidSpec(format!(
                "multiplicity < 2: branch {} has multiplicity {}",
                i + 1,
                b.multiplicity
            )));
        }
        if let Some((a, m)) = b.leaf_multiplicities.iter().enumerate().find(|(_, &m)| m < 2) {
            return Err(Error::InvalidSpec(format!(
                "multiplicity < 2: leaf {} of branch {} has multiplicity {m}",
                a + 1,
                i + 1
            )));
        }
    }
    let internal = spec.branches.iter().filter(|b| b.has_leaves()).count();
    if internal < 2 {
        return Err(Error::InvalidSpec(format!(
            "diameter < 4: only {internal} branch(es) carry leaves, at least 2 are needed"
        )));
    }
    Ok(())
}

/// The sets `A2`, `A3`, `A≥4` (internal branches by multiplicity) and `E`
/// (branches without leaves), as 1-based branch indices in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborPartition {
    pub a2: Vec<usize>,
    pub a3: Vec<usize>,
    pub a4plus: Vec<usize>,
    pub e: Vec<usize>,
    pub deg_c: usize,
}

impl NeighborPartition {
    /// `|A≥2|`, the number of internal branches.
    pub fn internal(&self) -> usize {
        self.a2.len() + self.a3.len() + self.a4plus.len()
    }
}

pub fn partition(spec: &TreeSpec) -> NeighborPartition {
    let mut p = NeighborPartition { a2: vec![], a3: vec![], a4plus: vec![], e: vec![], deg_c: spec.deg_c() };
    for (i, b) in spec.branches.iter().enumerate() {
        let idx = i + 1;
        if !b.has_leaves() {
            p.e.push(idx);
        } else {
            match b.multiplicity {
                0..=2 => p.a2.push(idx),
                3 => p.a3.push(idx),
                _ => p.a4plus.push(idx),
            }
        }
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Center,
    Branch(usize),
    /// `Leaf(i, α)` is the leaf `[α,i]`.
    Leaf(usize, usize),
}

impl Role {
    /// Roles adjacent in the tree.
    pub fn adjacent(self, other: Role) -> bool {
        match (self, other) {
            (Role::Center, Role::Branch(_)) | (Role::Branch(_), Role::Center) => true,
            (Role::Branch(i), Role::Leaf(j, _)) | (Role::Leaf(j, _), Role::Branch(i)) => i == j,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    pub role: Role,
    pub copy: u32,
}

impl VertexId {
    pub fn c(copy: u32) -> Self {
        VertexId { role: Role::Center, copy }
    }

    pub fn b(i: usize, copy: u32) -> Self {
        VertexId { role: Role::Branch(i), copy }
    }

    pub fn l(i: usize, alpha: usize, copy: u32) -> Self {
        VertexId { role: Role::Leaf(i, alpha), copy }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Center => write!(f, "c.{}", self.copy),
            Role::Branch(i) => write!(f, "b{i}.{}", self.copy),
            Role::Leaf(i, a) => write!(f, "l{i}.{a}.{}", self.copy),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad vertex id '{s}'"));
        let num = |t: &str| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        let parts: Vec<&str> = s.trim().split('.').collect();
        match parts.as_slice() {
            ["c", x] => Ok(VertexId::c(num(x)? as u32)),
            [b, x] if b.starts_with('b') => Ok(VertexId::b(num(&b[1..])?, num(x)? as u32)),
            [l, a, x] if l.starts_with('l') => Ok(VertexId::l(num(&l[1..])?, num(a)?, num(x)? as u32)),
            _ => Err(bad()),
        }
    }
}

/// Dense vertex numbering of `T(s_1, ..., s_n)`: center copies, then the
/// copies of each branch, then the copies of each leaf, in input order.
#[derive(Clone, Debug)]
pub struct VertexIndex {
    s: u32,
    branch_off: Vec<usize>,
    branch_mult: Vec<u32>,
    leaf_off: Vec<Vec<usize>>,
    leaf_mult: Vec<Vec<u32>>,
    vertices: Vec<VertexId>,
}

impl VertexIndex {
    pub fn new(spec: &TreeSpec) -> Self {
        let s = spec.center_multiplicity;
        let mut vertices: Vec<VertexId> = (1..=s).map(VertexId::c).collect();
        let mut branch_off = Vec::new();
        let mut branch_mult = Vec::new();
        for (i, b) in spec.branches.iter().enumerate() {
            branch_off.push(vertices.len());
            branch_mult.push(b.multiplicity);
            vertices.extend((1..=b.multiplicity).map(|x| VertexId::b(i + 1, x)));
        }
        let mut leaf_off = Vec::new();
        let mut leaf_mult = Vec::new();
        for (i, b) in spec.branches.iter().enumerate() {
            let mut offs = Vec::new();
            for (a, &m) in b.leaf_multiplicities.iter().enumerate() {
                offs.push(vertices.len());
                vertices.extend((1..=m).map(|x| VertexId::l(i + 1, a + 1, x)));
            }
            leaf_off.push(offs);
            leaf_mult.push(b.leaf_multiplicities.clone());
        }
        VertexIndex { s, branch_off, branch_mult, leaf_off, leaf_mult, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, idx: usize) -> VertexId {
        self.vertices[idx]
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn index(&self, v: VertexId) -> Option<usize> {
        if v.copy == 0 {
            return None;
        }
        let x = (v.copy - 1) as usize;
        match v.role {
            Role::Center => (v.copy <= self.s).then_some(x),
            Role::Branch(i) => {
                let k = i.checked_sub(1)?;
                (v.copy <= *self.branch_mult.get(k)?).then(|| self.branch_off[k] + x)
            }
            Role::Leaf(i, a) => {
                let k = i.checked_sub(1)?;
                let al = a.checked_sub(1)?;
                let m = *self.leaf_mult.get(k)?.get(al)?;
                (v.copy <= m).then(|| self.leaf_off[k][al] + x)
            }
        }
    }
}

/// Every edge of the multiplied tree exactly once, in canonical order:
/// center-branch blocks by branch index (center copy, then branch copy),
/// then branch-leaf blocks by branch, leaf, branch copy, leaf copy.
/// The first endpoint is always the one closer to the center.
pub fn multiplied_edges(spec: &TreeSpec) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::with_capacity(edge_count(spec));
    for (i, b) in spec.branches.iter().enumerate() {
        for x in 1..=spec.center_multiplicity {
            for y in 1..=b.multiplicity {
                out.push((VertexId::c(x), VertexId::b(i + 1, y)));
            }
        }
    }
    for (i, b) in spec.branches.iter().enumerate() {
        for (a, &m) in b.leaf_multiplicities.iter().enumerate() {
            for y in 1..=b.multiplicity {
                for z in 1..=m {
                    out.push((VertexId::b(i + 1, y), VertexId::l(i + 1, a + 1, z)));
                }
            }
        }
    }
    out
}

/// `Σ` over tree edges of the product of endpoint multiplicities.
pub fn edge_count(spec: &TreeSpec) -> usize {
    let s = spec.center_multiplicity as usize;
    spec.branches
        .iter()
        .map(|b| {
            let m = b.multiplicity as usize;
            s * m + b.leaf_multiplicities.iter().map(|&l| m * l as usize).sum::<usize>()
        })
        .sum()
}

/// Map from an unordered pair of dense vertex indices to the canonical edge index.
pub(crate) fn edge_lookup(index: &VertexIndex, edges: &[(VertexId, VertexId)]) -> HashMap<(usize, usize), usize> {
    edges
        .iter()
        .enumerate()
        .map(|(e, (u, v))| {
            let a = index.index(*u).expect("edge endpoint indexed");
            let b = index.index(*v).expect("edge endpoint indexed");
            ((a.min(b), a.max(b)), e)
        })
        .collect()
}
