//! k-subsets of `{1..n}` in squashed order.
//!
//! A subset is stored as its characteristic bit pattern (bit `i-1` set when
//! `i` is a member). For two sets of equal size the squashed order compares
//! the largest element of their symmetric difference, which is exactly the
//! numeric order of the bit patterns. Ranking is the colex combinatorial
//! number system.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground-set size.
pub const MAX_N: u32 = 63;

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// A subset of `{1..n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct KSubset {
    n: u32,
    bits: u64,
}

impl KSubset {
    pub fn from_members(n: u32, members: &[u32]) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for &m in members {
            if m < 1 || m > n {
                return Err(Error::Usage(format!("member {m} outside 1..={n}")));
            }
            let b = 1u64 << (m - 1);
            if bits & b != 0 {
                return Err(Error::Usage(format!("member {m} repeated")));
            }
            bits |= b;
        }
        Ok(KSubset { n, bits })
    }

    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::Usage(format!("bit pattern {bits:#x} exceeds n={n}")));
        }
        Ok(KSubset { n, bits })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, m: u32) -> bool {
        m >= 1 && m <= self.n && self.bits & (1u64 << (m - 1)) != 0
    }

    pub fn members(&self) -> Vec<u32> {
        (1..=self.n).filter(|&m| self.contains(m)).collect()
    }

    pub fn complement(&self) -> KSubset {
        KSubset { n: self.n, bits: !self.bits & full_mask(self.n) }
    }

    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &KSubset) -> bool {
        self.bits & other.bits != 0
    }

    /// Colex rank among the subsets of the same size.
    pub fn rank(&self) -> u64 {
        let mut r = 0;
        let mut j = 0u64;
        for pos in 0..self.n as u64 {
            if self.bits & (1u64 << pos) != 0 {
                j += 1;
                r += binom(pos, j);
            }
        }
        r
    }

    /// The `r`-th `k`-subset of `{1..n}` in squashed order (0-based).
    pub fn unrank(n: u32, k: u32, r: u64) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::Usage(format!("k={k} exceeds n={n}")));
        }
        let total = binom(n as u64, k as u64);
        if r >= total {
            return Err(Error::Usage(format!("rank {r} out of range 0..{total}")));
        }
        let mut bits = 0u64;
        let mut rem = r;
        let mut top = n as u64;
        for j in (1..=k as u64).rev() {
            // Largest position p < top with C(p, j) <= rem.
            let mut p = j - 1;
            while p + 1 < top && binom(p + 1, j) <= rem {
                p += 1;
            }
            rem -= binom(p, j);
            bits |= 1u64 << p;
            top = p;
        }
        Ok(KSubset { n, bits })
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.members();
        if self.n < 10 {
            if m.is_empty() {
                return write!(f, "∅");
            }
            for x in m {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Usage(format!("ground set size {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The squash relation on two k-subsets of the same ground set.
pub fn squashed_compare(a: &KSubset, b: &KSubset) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::Usage(format!("ground sets differ: {} vs {}", a.n, b.n)));
    }
    if a.len() != b.len() {
        return Err(Error::Usage(format!("cardinalities differ: {} vs {}", a.len(), b.len())));
    }
    Ok(a.bits.cmp(&b.bits))
}

/// A finite sequence of subsets over a common ground set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Family {
    n: u32,
    sets: Vec<KSubset>,
}

impl Family {
    pub fn new(n: u32, sets: Vec<KSubset>) -> Result<Self> {
        check_n(n)?;
        if let Some(bad) = sets.iter().find(|s| s.n != n) {
            return Err(Error::Usage(format!("member {bad} has n={} not {n}", bad.n)));
        }
        Ok(Family { n, sets })
    }

    /// Builds a family from member lists, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_lists(n: u32, lists: &[&[u32]]) -> Result<Self> {
        let sets = lists.iter().map(|l| KSubset::from_members(n, l)).collect::<Result<_>>()?;
        Family::new(n, sets)
    }

    /// Every `k`-subset of `{1..n}` in squashed order.
    pub fn level(n: u32, k: u32) -> Result<Self> {
        first_m(n, k, binom(n as u64, k as u64))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sets(&self) -> &[KSubset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.sets.contains(s)
    }

    /// Common cardinality, `None` for an empty or mixed family.
    pub fn uniform_k(&self) -> Option<u32> {
        let k = self.sets.first()?.len();
        self.sets.iter().all(|s| s.len() == k).then_some(k)
    }

    fn require_uniform(&self, op: &str) -> Result<Option<u32>> {
        if self.sets.is_empty() {
            return Ok(None);
        }
        match self.uniform_k() {
            Some(k) => Ok(Some(k)),
            None => Err(Error::Usage(format!("{op} needs a uniform family"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn check_level(n: u32, k: u32, m: u64) -> Result<u64> {
    check_n(n)?;
    if k > n {
        return Err(Error::Usage(format!("k={k} exceeds n={n}")));
    }
    let total = binom(n as u64, k as u64);
    if m > total {
        return Err(Error::Usage(format!("m={m} exceeds C({n},{k})={total}")));
    }
    Ok(total)
}

/// `F_{n,k}(m)`: the first `m` k-subsets in squashed order.
pub fn first_m(n: u32, k: u32, m: u64) -> Result<Family> {
    check_level(n, k, m)?;
    let sets = (0..m).map(|r| KSubset::unrank(n, k, r)).collect::<Result<_>>()?;
    Family::new(n, sets)
}

/// `L_{n,k}(m)`: the last `m` k-subsets, listed in squashed order.
pub fn last_m(n: u32, k: u32, m: u64) -> Result<Family> {
    let total = check_level(n, k, m)?;
    let sets = (total - m..total).map(|r| KSubset::unrank(n, k, r)).collect::<Result<_>>()?;
    Family::new(n, sets)
}

fn sorted_family(n: u32, set: BTreeSet<u64>) -> Family {
    // Equal-size sets: numeric order of the bit pattern is squashed order.
    Family { n, sets: set.into_iter().map(|bits| KSubset { n, bits }).collect() }
}

/// All (k-1)-sets contained in some member.
pub fn shadow(f: &Family) -> Result<Family> {
    let Some(k) = f.require_uniform("shadow")? else {
        return Ok(Family { n: f.n, sets: vec![] });
    };
    if k == 0 {
        return Err(Error::Usage("shadow of 0-sets is undefined".into()));
    }
    let mut out = BTreeSet::new();
    for s in &f.sets {
        let mut rest = s.bits;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            out.insert(s.bits & !b);
            rest &= rest - 1;
        }
    }
    Ok(sorted_family(f.n, out))
}

/// All (k+1)-sets containing some member.
pub fn shade(f: &Family) -> Result<Family> {
    let Some(k) = f.require_uniform("shade")? else {
        return Ok(Family { n: f.n, sets: vec![] });
    };
    if k >= f.n {
        return Err(Error::Usage("shade of n-sets is undefined".into()));
    }
    let mut out = BTreeSet::new();
    for s in &f.sets {
        let mut rest = !s.bits & full_mask(f.n);
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            out.insert(s.bits | b);
            rest &= rest - 1;
        }
    }
    Ok(sorted_family(f.n, out))
}

/// The k-binomial (cascade) representation `m = Σ C(a_i, i)`, returned as
/// `(a_i, i)` pairs from `i = k` downwards.
pub fn cascade(k: u32, m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut rem = m;
    let mut i = k as u64;
    while rem > 0 && i >= 1 {
        let mut a = i;
        while binom(a + 1, i) <= rem {
            a += 1;
        }
        out.push((a, i));
        rem -= binom(a, i);
        i -= 1;
    }
    out
}

/// `|ΔF_{n,k}(m)|` from the cascade representation of `m`.
pub fn shadow_size_kkt(n: u32, k: u32, m: u64) -> Result<u64> {
    check_level(n, k, m)?;
    if k == 0 {
        return Err(Error::Usage("shadow size needs k >= 1".into()));
    }
    Ok(cascade(k, m).into_iter().map(|(a, i)| binom(a, i - 1)).sum())
}

/// `κ_{n,r}(m) = |ΔF_{n,r}(m)| - m`.
pub fn kappa(n: u32, r: u32, m: u64) -> Result<i64> {
    Ok(shadow_size_kkt(n, r, m)? as i64 - m as i64)
}

/// `κ*_{n,r}(m) = min_{0 ≤ j ≤ m} κ_{n,r}(j)`.
pub fn kappa_star(n: u32, r: u32, m: u64) -> Result<i64> {
    check_level(n, r, m)?;
    let mut best = 0i64;
    for j in 0..=m {
        best = best.min(kappa(n, r, j)?);
    }
    Ok(best)
}

/// Threshold below which `κ*_{n,n/2}` vanishes: `1 + Σ_{i=1}^{n/2} C(2i-1, i)`.
pub fn kappa_star_zero_threshold(n: u32) -> u64 {
    1 + (1..=(n / 2) as u64).map(|i| binom(2 * i - 1, i)).sum::<u64>()
}

pub fn is_antichain(f: &Family) -> bool {
    let s = &f.sets;
    for i in 0..s.len() {
        for j in 0..s.len() {
            if i != j && s[i].is_subset_of(&s[j]) {
                return false;
            }
        }
    }
    true
}

pub fn is_cross_intersecting(a: &Family, b: &Family) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::Usage(format!("ground sets differ: {} vs {}", a.n, b.n)));
    }
    Ok(a.sets.iter().all(|x| b.sets.iter().all(|y| x.intersects(y))))
}

/// Size of the disjointness graph between `a` and `b` when it is a partial
/// matching, `None` when some set is disjoint from two sets of the other family.
pub fn disjoint_pair_matching(a: &Family, b: &Family) -> Result<Option<usize>> {
    if a.n != b.n {
        return Err(Error::Usage(format!("ground sets differ: {} vs {}", a.n, b.n)));
    }
    let mut b_used = vec![false; b.sets.len()];
    let mut count = 0;
    for x in &a.sets {
        let mut hit = None;
        for (j, y) in b.sets.iter().enumerate() {
            if !x.intersects(y) {
                if hit.is_some() || b_used[j] {
                    return Ok(None);
                }
                hit = Some(j);
            }
        }
        if let Some(j) = hit {
            b_used[j] = true;
            count += 1;
        }
    }
    Ok(Some(count))
}
