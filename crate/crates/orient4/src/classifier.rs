//! Decision tables for the orientation number of `T(s_1, ..., s_n)`.
//!
//! The verdict depends only on `s`, `|A2|`, `|A3|`, `|A≥4|` and `deg(c)`.
//! Rules are tried in a fixed order and the first match wins.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sperner::{binom, kappa, kappa_star};
use crate::tree::{partition, validate, NeighborPartition, TreeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    C0,
    C1,
    UnknownGap,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::C0 => "C0",
            Verdict::C1 => "C1",
            Verdict::UnknownGap => "UnknownGap",
        })
    }
}

/// Both bound evaluations for an instance of the open even case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapDetail {
    pub necessary_bound_holds: bool,
    pub sufficient_bound_holds: bool,
    pub k_witness: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub orientation_number: Option<u32>,
    /// Identifier of the deciding result, e.g. `Prop3.9`.
    pub rule: String,
    /// The threshold comparison that decided the verdict.
    pub comparison: String,
    pub gap_detail: Option<GapDetail>,
    /// Smallest sufficient `k` when the even mixed case is decided as C0.
    pub k_witness: Option<u64>,
    pub s: u32,
    pub partition: NeighborPartition,
}

/// The construction that witnesses a C0 verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    Thm16a,
    P34,
    P35D1,
    P35D2,
    P35D3,
    P35D4,
    P39,
    P310,
    P311,
    P312,
    P41,
    P43D1,
    P43D2,
    P43D3,
    P411,
    P413,
}

impl CaseId {
    pub const ALL: [CaseId; 16] = [
        CaseId::Thm16a,
        CaseId::P34,
        CaseId::P35D1,
        CaseId::P35D2,
        CaseId::P35D3,
        CaseId::P35D4,
        CaseId::P39,
        CaseId::P310,
        CaseId::P311,
        CaseId::P312,
        CaseId::P41,
        CaseId::P43D1,
        CaseId::P43D2,
        CaseId::P43D3,
        CaseId::P411,
        CaseId::P413,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Thm16a => "Thm16a",
            CaseId::P34 => "P34",
            CaseId::P35D1 => "P35_D1",
            CaseId::P35D2 => "P35_D2",
            CaseId::P35D3 => "P35_D3",
            CaseId::P35D4 => "P35_D4",
            CaseId::P39 => "P39",
            CaseId::P310 => "P310",
            CaseId::P311 => "P311→CorC3.8",
            CaseId::P312 => "P312",
            CaseId::P41 => "P41",
            CaseId::P43D1 => "P43_D1",
            CaseId::P43D2 => "P43_D2",
            CaseId::P43D3 => "P43_D3",
            CaseId::P411 => "P411",
            CaseId::P413 => "P413",
        }
    }

    pub fn parse(name: &str) -> Option<CaseId> {
        let norm = name.replace("->", "→");
        CaseId::ALL.into_iter().find(|c| c.name() == norm || c.name().replace('_', "") == norm.replace('_', ""))
            .or_else(|| (norm == "P311").then_some(CaseId::P311))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

/// Counts that drive every rule.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Counts {
    pub s: u64,
    pub a: u64,
    pub b: u64,
    pub f: u64,
    pub e: u64,
    pub deg: u64,
    /// `C(s, ⌈s/2⌉)`.
    pub c: u64,
}

impl Counts {
    pub fn new(s: u32, p: &NeighborPartition) -> Counts {
        let s = s as u64;
        Counts {
            s,
            a: p.a2.len() as u64,
            b: p.a3.len() as u64,
            f: p.a4plus.len() as u64,
            e: p.e.len() as u64,
            deg: p.deg_c as u64,
            c: binom(s, s.div_ceil(2)),
        }
    }

    pub fn internal(&self) -> u64 {
        self.a + self.b + self.f
    }

    /// `C(s, s/2 + 1)`, meaningful for even `s`.
    pub fn c_next(&self) -> u64 {
        binom(self.s, self.s / 2 + 1)
    }
}

struct Decision {
    verdict: Verdict,
    rule: &'static str,
    comparison: String,
    gap: Option<GapDetail>,
    k: Option<u64>,
}

fn decide(verdict: bool, rule: &'static str, comparison: String) -> Decision {
    Decision { verdict: if verdict { Verdict::C0 } else { Verdict::C1 }, rule, comparison, gap: None, k: None }
}

fn cmp_str(lhs: &str, value: u64, holds: bool, rhs: &str, bound: i64) -> String {
    format!("{lhs}={value} {} {rhs} = {bound}", if holds { "≤" } else { ">" })
}

/// `Some(true)` when the first sufficient `k` exists, with that `k`.
fn even_mixed_witness(n: &Counts) -> Result<Option<(u64, i64)>> {
    let (s, half) = (n.s as u32, (n.s / 2) as u32);
    let total = 2 * n.a + n.b;
    let hi = (n.a + n.b).min(n.c - 1);
    for k in n.a + 1..=hi {
        let bound = (n.c + n.c_next()) as i64 - kappa(s, half, k)? - 3;
        if total as i64 <= bound {
            return Ok(Some((k, bound)));
        }
    }
    Ok(None)
}

fn decide_counts(n: &Counts) -> Result<Decision> {
    let s = n.s;
    let h = s.div_ceil(2);
    let c = n.c as i64;
    if n.deg == 2 {
        return Ok(decide(true, "Thm1.6a", "deg(c)=2".into()));
    }
    if s == 2 {
        if n.a + n.b > 0 {
            return Ok(decide(
                false,
                "Prop3.2",
                format!("s=2 with |A₂∪A₃|={} > 0 requires deg(c)=2, but deg(c)={}", n.a + n.b, n.deg),
            ));
        }
        return Ok(decide(true, "Prop3.4", "s=2 and A₂=A₃=∅".into()));
    }
    if n.a == 0 && n.b == 0 {
        return Ok(decide(true, "Prop3.4", "A₂=A₃=∅".into()));
    }
    if n.a > 0 && n.b == 0 && n.f == 0 {
        let (bound, rhs) = if n.a < n.deg {
            (c - 1, format!("C({s},{h})−1"))
        } else {
            (c, format!("C({s},{h})"))
        };
        let ok = n.a as i64 <= bound;
        let note = if n.a < n.deg { " (|A₂| < deg(c))" } else { " (|A₂| = deg(c))" };
        return Ok(decide(ok, "Prop3.5", cmp_str("|A₂|", n.a, ok, &rhs, bound) + note));
    }
    if s % 2 == 0 {
        let half = s / 2;
        let cn = n.c_next() as i64;
        if n.a == 0 {
            let bound = c + cn - 2;
            let ok = n.b as i64 <= bound;
            let rhs = format!("C({s},{half})+C({s},{})−2", half + 1);
            return Ok(decide(ok, "Prop3.9", cmp_str("|A₃|", n.b, ok, &rhs, bound)));
        }
        if n.b == 0 {
            let strict = n.f >= 2 || n.internal() < n.deg;
            let bound = if strict { c - 2 } else { c - 1 };
            let ok = n.a as i64 <= bound;
            let rhs = format!("C({s},{half})−{}", if strict { 2 } else { 1 });
            return Ok(decide(ok, "Prop3.10", cmp_str("|A₂|", n.a, ok, &rhs, bound)));
        }
        if n.b == 1 && n.f == 0 {
            let strict = n.internal() < n.deg;
            let bound = if strict { c - 2 } else { c - 1 };
            let ok = n.a as i64 <= bound;
            let rhs = format!("C({s},{half})−{}", if strict { 2 } else { 1 });
            return Ok(decide(ok, "Prop3.11", cmp_str("|A₂|", n.a, ok, &rhs, bound)));
        }
        // The mixed even case: a necessary and a sufficient bound.
        let total = 2 * n.a + n.b;
        let m = (n.a + n.b).min(n.c);
        let necessary = c + cn - kappa_star(s as u32, half as u32, m)?;
        let necessary_holds = total as i64 <= necessary;
        let nec_txt = format!(
            "2|A₂|+|A₃|={total} {} C({s},{half})+C({s},{})−κ*({m}) = {necessary}",
            if necessary_holds { "≤" } else { ">" },
            half + 1
        );
        if !necessary_holds {
            return Ok(Decision {
                verdict: Verdict::C1,
                rule: "Prop3.12",
                comparison: nec_txt,
                gap: None,
                k: None,
            });
        }
        if let Some((k, bound)) = even_mixed_witness(n)? {
            return Ok(Decision {
                verdict: Verdict::C0,
                rule: "Prop3.12",
                comparison: format!(
                    "2|A₂|+|A₃|={total} ≤ C({s},{half})+C({s},{})−κ({k})−3 = {bound}",
                    half + 1
                ),
                gap: None,
                k: Some(k),
            });
        }
        return Ok(Decision {
            verdict: Verdict::UnknownGap,
            rule: "Prop3.12",
            comparison: format!("{nec_txt}; no k in [{}, {}] meets the sufficient bound", n.a + 1, (n.a + n.b).min(n.c - 1)),
            gap: Some(GapDetail { necessary_bound_holds: true, sufficient_bound_holds: false, k_witness: None }),
            k: None,
        });
    }
    // odd s ≥ 3
    if n.a == 0 {
        let bound = 2 * c - 2;
        let ok = n.b as i64 <= bound;
        return Ok(decide(ok, "Prop4.1", cmp_str("|A₃|", n.b, ok, &format!("2C({s},{h})−2"), bound)));
    }
    if n.b == 0 {
        let bound = c - 1;
        let ok = n.a as i64 <= bound;
        return Ok(decide(ok, "Prop4.11", cmp_str("|A₂|", n.a, ok, &format!("C({s},{h})−1"), bound)));
    }
    if n.f == 0 {
        if n.b == 1 {
            let bound = c - 1;
            let ok = n.a as i64 <= bound;
            return Ok(decide(ok, "Prop4.3", cmp_str("|A₂|", n.a, ok, &format!("C({s},{h})−1"), bound)));
        }
        let total = 2 * n.a + n.b;
        let bound = 2 * c - 2;
        if total as i64 <= bound {
            return Ok(decide(true, "Prop4.3", cmp_str("2|A₂|+|A₃|", total, true, &format!("2C({s},{h})−2"), bound)));
        }
        let floor_prod = h * (s / 2);
        if total as i64 == 2 * c - 1 {
            let ok = n.a >= floor_prod && s >= 5;
            return Ok(decide(
                ok,
                "Prop4.3",
                format!(
                    "2|A₂|+|A₃|={total} = 2C({s},{h})−1 with |A₂|={} {} ⌈s/2⌉⌊s/2⌋ = {floor_prod} and s={s} {} 5",
                    n.a,
                    if n.a >= floor_prod { "≥" } else { "<" },
                    if s >= 5 { "≥" } else { "<" },
                ),
            ));
        }
        return Ok(decide(false, "Prop4.3", cmp_str("2|A₂|+|A₃|", total, false, &format!("2C({s},{h})−1"), 2 * c - 1)));
    }
    if n.b == 1 {
        let bound = c - 2;
        let ok = n.a as i64 <= bound;
        return Ok(decide(ok, "Prop4.13", cmp_str("|A₂|", n.a, ok, &format!("C({s},{h})−2"), bound)));
    }
    let total = 2 * n.a + n.b;
    let bound = 2 * c - 2;
    let ok = total as i64 <= bound;
    Ok(decide(ok, "Prop4.13", cmp_str("2|A₂|+|A₃|", total, ok, &format!("2C({s},{h})−2"), bound)))
}

pub fn classify(spec: &TreeSpec) -> Result<Classification> {
    validate(spec)?;
    let p = partition(spec);
    let n = Counts::new(spec.center_multiplicity, &p);
    let d = decide_counts(&n)?;
    Ok(Classification {
        verdict: d.verdict,
        orientation_number: match d.verdict {
            Verdict::C0 => Some(4),
            Verdict::C1 => Some(5),
            Verdict::UnknownGap => None,
        },
        rule: d.rule.to_string(),
        comparison: d.comparison,
        gap_detail: d.gap,
        k_witness: d.k,
        s: spec.center_multiplicity,
        partition: p,
    })
}

/// Which of the four Cor 3.8 orientations applies when every internal
/// branch is treated as multiplicity 2.
pub(crate) fn cor38_variant(n: &Counts) -> CaseId {
    let m = n.internal();
    if n.e == 0 {
        if m <= n.s {
            CaseId::P35D1
        } else {
            CaseId::P35D3
        }
    } else if m < n.s {
        CaseId::P35D2
    } else {
        CaseId::P35D4
    }
}

pub(crate) fn route(n: &Counts) -> CaseId {
    let c = n.c;
    let m = n.internal();
    if n.deg == 2 {
        return CaseId::Thm16a;
    }
    if n.s == 2 || (n.a == 0 && n.b == 0) {
        return CaseId::P34;
    }
    if n.b == 0 && n.f == 0 {
        return cor38_variant(n);
    }
    if n.s % 2 == 0 {
        if n.a == 0 {
            return if n.b + n.f < c { cor38_variant(n) } else { CaseId::P39 };
        }
        if n.b == 0 {
            if (n.f == 1 && m == n.deg) || n.a + n.f < c {
                return cor38_variant(n);
            }
            return CaseId::P310;
        }
        if n.b == 1 && n.f == 0 {
            return CaseId::P311;
        }
        return if m < c { cor38_variant(n) } else { CaseId::P312 };
    }
    if n.a == 0 {
        return if n.b + n.f < c { cor38_variant(n) } else { CaseId::P41 };
    }
    if n.b == 0 {
        return if n.a + n.f < c { cor38_variant(n) } else { CaseId::P411 };
    }
    if n.f == 0 {
        if n.b == 1 {
            return if n.a + 2 <= c { cor38_variant(n) } else { CaseId::P43D1 };
        }
        if n.a + n.b < c {
            return cor38_variant(n);
        }
        return if 2 * n.a + n.b + 2 <= 2 * c { CaseId::P43D2 } else { CaseId::P43D3 };
    }
    // Cor 4.12: A≤3 at multiplicity 2 with the P411 orientation.
    if (n.b == 1 && n.a + 2 <= c) || (n.b >= 2 && n.a + n.b < c) {
        let merged = Counts { a: n.a + n.b, b: 0, ..*n };
        return if merged.a + merged.f < c { cor38_variant(&merged) } else { CaseId::P411 };
    }
    CaseId::P413
}

/// The construction case behind a C0 verdict.
pub fn select_case(spec: &TreeSpec) -> Result<CaseId> {
    let cls = classify(spec)?;
    match cls.verdict {
        Verdict::C0 => Ok(route(&Counts::new(spec.center_multiplicity, &cls.partition))),
        Verdict::C1 => Err(Error::Refused(format!(
            "no diameter-4 construction: instance is C1 by {} ({})",
            cls.rule, cls.comparison
        ))),
        Verdict::UnknownGap => Err(Error::Refused(format!("no construction for the open case ({})", cls.comparison))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::BranchSpec;

    /// Instance with the given class sizes; every internal branch has one leaf.
    pub(crate) fn inst(s: u32, a: usize, b: usize, f: usize, e: usize) -> TreeSpec {
        let mut br = Vec::new();
        br.extend((0..a).map(|_| BranchSpec::new(2, vec![2])));
        br.extend((0..b).map(|_| BranchSpec::new(3, vec![2])));
        br.extend((0..f).map(|_| BranchSpec::new(4, vec![2])));
        br.extend((0..e).map(|_| BranchSpec::new(2, vec![])));
        TreeSpec::new(s, br)
    }

    fn verdict(s: u32, a: usize, b: usize, f: usize, e: usize) -> Verdict {
        classify(&inst(s, a, b, f, e)).unwrap().verdict
    }

    #[test]
    fn spec_examples() {
        let c = classify(&inst(2, 2, 0, 0, 1)).unwrap();
        assert_eq!((c.verdict, c.rule.as_str()), (Verdict::C1, "Prop3.2"));
        assert_eq!(verdict(4, 0, 8, 0, 0), Verdict::C0);
        assert_eq!(verdict(4, 0, 8, 3, 1), Verdict::C0);
        assert_eq!(verdict(4, 0, 9, 0, 0), Verdict::C1);
        let c = classify(&inst(4, 0, 9, 0, 0)).unwrap();
        assert!(c.comparison.contains("|A₃|=9 > C(4,2)+C(4,3)−2 = 8"), "{}", c.comparison);
        assert_eq!(verdict(3, 0, 4, 0, 0), Verdict::C0);
        assert_eq!(verdict(3, 0, 5, 0, 0), Verdict::C1);
        assert_eq!(classify(&inst(7, 1, 1, 0, 3)).unwrap().rule, "Prop4.3");
        assert_eq!(classify(&inst(7, 0, 2, 0, 0)).unwrap().rule, "Thm1.6a");
        let c = classify(&inst(5, 6, 7, 0, 0)).unwrap();
        assert_eq!((c.verdict, c.rule.as_str()), (Verdict::C0, "Prop4.3"));
        assert_eq!(verdict(5, 5, 9, 0, 0), Verdict::C1);
    }

    #[test]
    fn select_case_examples() {
        assert_eq!(select_case(&inst(5, 4, 0, 0, 0)).unwrap(), CaseId::P35D1);
        assert_eq!(select_case(&inst(5, 9, 0, 0, 2)).unwrap(), CaseId::P35D4);
        assert_eq!(select_case(&inst(3, 1, 2, 0, 0)).unwrap(), CaseId::P43D2);
        assert_eq!(select_case(&inst(4, 0, 6, 2, 2)).unwrap(), CaseId::P39);
        assert_eq!(select_case(&inst(6, 12, 8, 2, 2)).unwrap(), CaseId::P312);
        assert_eq!(select_case(&inst(5, 6, 7, 0, 2)).unwrap(), CaseId::P43D3);
        assert!(matches!(select_case(&inst(4, 0, 9, 0, 0)), Err(Error::Refused(_))));
    }

    #[test]
    fn mixed_even_witness() {
        let c = classify(&inst(6, 12, 8, 2, 2)).unwrap();
        assert_eq!((c.verdict, c.k_witness), (Verdict::C0, Some(13)));
    }

    #[test]
    fn gap_only_in_mixed_even_case() {
        for s in 2..=8 {
            for a in 0..8 {
                for b in 0..8 {
                    for f in 0..3 {
                        for e in 0..2 {
                            if a + b + f < 2 {
                                continue;
                            }
                            let c = classify(&inst(s, a, b, f, e)).unwrap();
                            if c.verdict == Verdict::UnknownGap {
                                assert!(s % 2 == 0 && s >= 4 && a >= 1 && (b >= 2 || (b == 1 && f >= 1)));
                            }
                        }
                    }
                }
            }
        }
    }
}
