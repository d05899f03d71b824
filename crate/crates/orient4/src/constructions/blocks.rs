//! Equation blocks: the arc sets of every construction case.
//!
//! Slots are numbered from 1 in the order A2⋄, A3⋄, A4⋄, E (the single-A3
//! odd case puts its A3 slot first). Center sets are bit masks over the
//! center copies. `through(v, S)` means `S → v → S̄`.

use crate::classifier::CaseId;
use crate::error::{Error, Result};
use crate::sperner::{binom, KSubset};
use crate::tree::VertexId;

use super::builder::Builder;
use super::schedule::SetSchedule;

/// Slot counts per class in the reduced spec.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Groups {
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
    pub ne: usize,
}

impl Groups {
    fn a4(&self) -> std::ops::RangeInclusive<usize> {
        self.n2 + self.n3 + 1..=self.n2 + self.n3 + self.n4
    }

    fn e(&self) -> std::ops::RangeInclusive<usize> {
        let first = self.n2 + self.n3 + self.n4 + 1;
        first..=first + self.ne - 1
    }
}

fn b(i: usize, x: u32) -> VertexId {
    VertexId::b(i, x)
}

fn l(i: usize, alpha: usize, x: u32) -> VertexId {
    VertexId::l(i, alpha, x)
}

fn at(list: &[KSubset], i: usize) -> Result<u64> {
    i.checked_sub(1)
        .and_then(|j| list.get(j))
        .map(|x| x.bits())
        .ok_or_else(|| Error::Internal(format!("set index {i} outside a schedule of {} sets", list.len())))
}

struct Ctx<'a> {
    b: &'a mut Builder,
    full: u64,
}

impl Ctx<'_> {
    fn arcs(&mut self, pairs: &[(VertexId, VertexId)]) -> Result<()> {
        pairs.iter().try_for_each(|&(u, v)| self.b.arc(u, v))
    }

    fn through(&mut self, v: VertexId, mask: u64) -> Result<()> {
        self.b.through(v, mask)
    }

    fn pair_through(&mut self, i: usize, mask: u64) -> Result<()> {
        self.through(b(i, 1), mask)?;
        self.through(b(i, 2), mask)
    }

    fn comp(&self, mask: u64) -> u64 {
        self.full & !mask
    }

    /// `(2,[i]) → (1,[α,i]) → (1,[i]) → (2,[α,i]) → (2,[i])`
    fn leaf_cycle(&mut self, i: usize) -> Result<()> {
        for a in 1..=self.b.leaves(i) {
            self.arcs(&[
                (b(i, 2), l(i, a, 1)),
                (l(i, a, 1), b(i, 1)),
                (b(i, 1), l(i, a, 2)),
                (l(i, a, 2), b(i, 2)),
            ])?;
        }
        Ok(())
    }

    /// `(2,[i]) → {1,2}[α,i] → (1,[i])`
    fn leaf_pass(&mut self, i: usize) -> Result<()> {
        for a in 1..=self.b.leaves(i) {
            for x in 1..=2 {
                self.arcs(&[(b(i, 2), l(i, a, x)), (l(i, a, x), b(i, 1))])?;
            }
        }
        Ok(())
    }

    /// `(3,[i]) → {1,2}[α,i] → {1,2}[i]`, or the reverse.
    fn leaf_three(&mut self, i: usize, inward: bool) -> Result<()> {
        for a in 1..=self.b.leaves(i) {
            for x in 1..=2 {
                let leaf = l(i, a, x);
                if inward {
                    self.arcs(&[(b(i, 3), leaf), (leaf, b(i, 1)), (leaf, b(i, 2))])?;
                } else {
                    self.arcs(&[(b(i, 1), leaf), (b(i, 2), leaf), (leaf, b(i, 3))])?;
                }
            }
        }
        Ok(())
    }

    /// `{1,2}[i] → (1,[β,i]) → (3,[i])` and `{1,3}[i] → (2,[β,i]) → (2,[i])`.
    fn leaf_split(&mut self, i: usize) -> Result<()> {
        for a in 1..=self.b.leaves(i) {
            let (p, q) = (l(i, a, 1), l(i, a, 2));
            self.arcs(&[(b(i, 1), p), (b(i, 2), p), (p, b(i, 3)), (b(i, 1), q), (b(i, 3), q), (q, b(i, 2))])?;
        }
        Ok(())
    }

    /// `(3,[i]) → (1,[θ,i]) → {1,2}[i]` and `(2,[i]) → (2,[θ,i]) → {1,3}[i]`.
    fn leaf_split_rev(&mut self, i: usize) -> Result<()> {
        for a in 1..=self.b.leaves(i) {
            let (p, q) = (l(i, a, 1), l(i, a, 2));
            self.arcs(&[(b(i, 3), p), (p, b(i, 1)), (p, b(i, 2)), (b(i, 2), q), (q, b(i, 1)), (q, b(i, 3))])?;
        }
        Ok(())
    }

    /// Multiplicity-4 branch with `X → {1,4}[k] → X̄ → {2,3}[k] → X` at the
    /// center and a 4-cycle pattern at its leaves.
    fn four(&mut self, k: usize, x: u64) -> Result<()> {
        for a in 1..=self.b.leaves(k) {
            let (p, q) = (l(k, a, 1), l(k, a, 2));
            self.arcs(&[
                (q, b(k, 2)),
                (q, b(k, 4)),
                (b(k, 2), p),
                (b(k, 4), p),
                (p, b(k, 1)),
                (p, b(k, 3)),
                (b(k, 1), q),
                (b(k, 3), q),
            ])?;
        }
        let y = self.comp(x);
        self.through(b(k, 1), x)?;
        self.through(b(k, 4), x)?;
        self.through(b(k, 2), y)?;
        self.through(b(k, 3), y)
    }
}

pub(crate) fn emit(builder: &mut Builder, block: CaseId, g: &Groups, sch: &SetSchedule) -> Result<()> {
    let s = sch.s as usize;
    let full = (1u64 << sch.s) - 1;
    let c = binom(s as u64, s.div_ceil(2) as u64) as usize;
    let lam = |i: usize| at(&sch.lambda, i);
    let mut cx = Ctx { b: builder, full };
    let n23 = g.n2 + g.n3;
    match block {
        CaseId::P34 => {
            for i in g.a4() {
                for a in 1..=cx.b.leaves(i) {
                    let (p, q) = (l(i, a, 1), l(i, a, 2));
                    cx.arcs(&[
                        (b(i, 2), p),
                        (b(i, 3), p),
                        (p, b(i, 1)),
                        (p, b(i, 4)),
                        (b(i, 1), q),
                        (b(i, 4), q),
                        (q, b(i, 2)),
                        (q, b(i, 3)),
                    ])?;
                }
                cx.through(b(i, 1), 0b10)?;
                cx.through(b(i, 2), 0b10)?;
                cx.through(b(i, 3), 0b01)?;
                cx.through(b(i, 4), 0b01)?;
            }
            for j in g.e() {
                cx.pair_through(j, 0b10)?;
            }
        }
        CaseId::P35D1 | CaseId::P35D2 | CaseId::Thm16a => {
            let a = g.n2;
            for i in 1..=a {
                cx.leaf_cycle(i)?;
            }
            if block == CaseId::P35D2 {
                for i in 1..=a {
                    cx.pair_through(i, full & !(1 << (i - 1)))?;
                }
                let low = (1u64 << a) - 1;
                for j in g.e() {
                    cx.pair_through(j, low)?;
                }
            } else {
                if a > s {
                    return Err(Error::Internal(format!("{a} slots exceed the {s} center copies")));
                }
                for i in 1..a {
                    cx.pair_through(i, full & !(1 << (i - 1)))?;
                }
                let tail = full & !((1u64 << (a - 1)) - 1);
                cx.pair_through(a, full & !tail)?;
            }
        }
        CaseId::P35D3 | CaseId::P35D4 => {
            for i in 1..=g.n2 {
                cx.leaf_cycle(i)?;
                cx.pair_through(i, lam(i)?)?;
            }
            for j in g.e() {
                cx.pair_through(j, lam(c)?)?;
            }
        }
        CaseId::P39 | CaseId::P310 => {
            let half = s / 2;
            let step = |i: usize| if i < half { i + 1 } else { i + 2 };
            let (l1, lh) = (lam(1)?, lam(half + 1)?);
            if block == CaseId::P39 {
                for i in 1..=g.n3.min(c - 2) {
                    cx.leaf_three(i, true)?;
                    cx.through(b(i, 1), lh)?;
                    cx.through(b(i, 2), l1)?;
                    cx.through(b(i, 3), lam(step(i))?)?;
                }
                for j in c - 1..=g.n3 {
                    cx.leaf_three(j, false)?;
                    cx.through(b(j, 1), l1)?;
                    cx.through(b(j, 2), lh)?;
                    let psi = at(&sch.psi, j + 2 - c)?;
                    cx.through(b(j, 3), cx.comp(psi))?;
                }
            } else {
                for i in 1..=g.n2 {
                    cx.leaf_cycle(i)?;
                    cx.pair_through(i, lam(step(i))?)?;
                }
            }
            for k in g.a4() {
                cx.four(k, lh)?;
            }
            for j in g.e() {
                cx.pair_through(j, l1)?;
            }
        }
        CaseId::P312 => {
            let mu = |i: usize| at(&sch.mu, i);
            let (m1, mc) = (mu(1)?, mu(c)?);
            for i in 1..=g.n2 {
                cx.leaf_cycle(i)?;
                cx.pair_through(i, mu(i + 1)?)?;
            }
            for j in g.n2 + 1..=n23.min(c - 2) {
                cx.leaf_three(j, true)?;
                cx.through(b(j, 1), mc)?;
                cx.through(b(j, 2), m1)?;
                cx.through(b(j, 3), mu(j + 1)?)?;
            }
            for j in (c - 1).max(g.n2 + 1)..=n23 {
                cx.leaf_three(j, false)?;
                cx.through(b(j, 1), m1)?;
                cx.through(b(j, 2), mc)?;
                let psi = at(&sch.psi, j + 2 - c)?;
                cx.through(b(j, 3), cx.comp(psi))?;
            }
            for k in g.a4() {
                cx.four(k, mc)?;
            }
            for j in g.e() {
                cx.pair_through(j, m1)?;
            }
        }
        CaseId::P41 => {
            let l1 = lam(1)?;
            let lb = cx.comp(l1);
            for i in 1..=g.n3.min(c - 1) {
                cx.leaf_three(i, true)?;
                cx.through(b(i, 1), lb)?;
                cx.through(b(i, 2), l1)?;
                cx.through(b(i, 3), lam(i + 1)?)?;
            }
            for j in c..=g.n3 {
                cx.leaf_three(j, false)?;
                cx.through(b(j, 1), l1)?;
                cx.through(b(j, 2), lb)?;
                cx.through(b(j, 3), cx.comp(lam(j + 2 - c)?))?;
            }
            for k in g.a4() {
                cx.four(k, lb)?;
            }
            for j in g.e() {
                cx.pair_through(j, l1)?;
            }
        }
        CaseId::P43D1 => {
            // Slot 1 is the A3 branch, slots 2.. the A2 branches.
            let l1 = lam(1)?;
            cx.leaf_split(1)?;
            cx.through(b(1, 1), l1)?;
            cx.through(b(1, 2), cx.comp(l1))?;
            cx.through(b(1, 3), cx.comp(l1))?;
            for i in 2..=g.n2 + 1 {
                let li = lam(i)?;
                cx.leaf_pass(i)?;
                cx.through(b(i, 1), cx.comp(li))?;
                cx.through(b(i, 2), li)?;
            }
            for j in g.e() {
                cx.pair_through(j, l1)?;
            }
        }
        CaseId::P43D2 | CaseId::P413 | CaseId::P411 => {
            let l1 = lam(1)?;
            let lb = cx.comp(l1);
            for i in 1..=g.n2 {
                let li = lam(i + 1)?;
                cx.leaf_pass(i)?;
                cx.through(b(i, 1), cx.comp(li))?;
                cx.through(b(i, 2), li)?;
            }
            for j in g.n2 + 1..=n23.min(c - 1) {
                cx.leaf_three(j, true)?;
                cx.through(b(j, 1), lb)?;
                cx.through(b(j, 2), l1)?;
                cx.through(b(j, 3), lam(j + 1)?)?;
            }
            for k in c.max(g.n2 + 1)..=n23 {
                cx.leaf_three(k, false)?;
                cx.through(b(k, 1), l1)?;
                cx.through(b(k, 2), lb)?;
                cx.through(b(k, 3), cx.comp(lam(k + g.n2 + 2 - c)?))?;
            }
            for k in g.a4() {
                cx.four(k, lb)?;
            }
            for j in g.e() {
                cx.pair_through(j, l1)?;
            }
        }
        CaseId::P43D3 => {
            let psi = sch.anchor.ok_or_else(|| Error::Internal("schedule lacks the anchor set".into()))?.bits();
            let psib = cx.comp(psi);
            let (mu, gamma) = (|i: usize| at(&sch.mu, i), |i: usize| at(&sch.gamma, i));
            for i in 1..=g.n2 {
                cx.leaf_pass(i)?;
                cx.through(b(i, 1), cx.comp(mu(i)?))?;
                cx.through(b(i, 2), gamma(i)?)?;
            }
            for j in g.n2 + 1..=n23.min(c) {
                let mj = cx.comp(mu(j)?);
                cx.leaf_split(j)?;
                cx.through(b(j, 1), psib)?;
                cx.through(b(j, 2), mj)?;
                cx.through(b(j, 3), mj)?;
            }
            for k in c + 1..=n23 {
                let gk = gamma(k - c + g.n2)?;
                cx.leaf_split_rev(k)?;
                cx.through(b(k, 1), psib)?;
                cx.through(b(k, 2), gk)?;
                cx.through(b(k, 3), gk)?;
            }
            for j in g.e() {
                cx.pair_through(j, psib)?;
            }
        }
        CaseId::P311 => {
            return Err(Error::Internal("P311 is built through one of the P35 blocks".into()));
        }
    }
    Ok(())
}
