//! Orderings of center-copy subsets used by the equation blocks.

use serde::Serialize;

use crate::classifier::CaseId;
use crate::error::{Error, Result};
use crate::sperner::{last_m, shade, Family, KSubset};

/// Lists of subsets of the center copies `{1..s}`. Lists a case does not use
/// stay empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetSchedule {
    pub s: u32,
    /// `⌈s/2⌉`-sets: the `s` cyclic runs `{i, i+1, ...}` first, then the
    /// remaining sets in squashed order.
    pub lambda: Vec<KSubset>,
    /// `(s/2+1)`-sets (even `s`). For the mixed even case, the sets outside
    /// the shade of the last `k` `s/2`-sets come first.
    pub psi: Vec<KSubset>,
    pub mu: Vec<KSubset>,
    pub gamma: Vec<KSubset>,
    /// The fixed `⌊s/2⌋`-set of the odd high-weight case.
    pub anchor: Option<KSubset>,
}

fn level(s: u32, k: u32) -> Result<Vec<KSubset>> {
    Ok(Family::level(s, k)?.sets().to_vec())
}

fn cyclic_run(s: u32, start: u32, len: u32) -> u64 {
    (0..len).fold(0, |acc, j| acc | 1 << ((start - 1 + j) % s))
}

pub fn lambda(s: u32) -> Result<Vec<KSubset>> {
    let h = s.div_ceil(2);
    let mut out: Vec<KSubset> =
        (1..=s).map(|i| KSubset::from_bits(s, cyclic_run(s, i, h))).collect::<Result<_>>()?;
    // For s = 2 the runs are all the 1-sets already.
    out.dedup();
    for x in level(s, h)? {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Stable partition: members satisfying `first` keep their order and go first.
fn front<F: Fn(&KSubset) -> bool>(sets: Vec<KSubset>, first: F) -> Vec<KSubset> {
    let (mut a, b): (Vec<_>, Vec<_>) = sets.into_iter().partition(|x| first(x));
    a.extend(b);
    a
}

pub fn make_schedule(s: u32, case: CaseId, k: Option<u64>) -> Result<SetSchedule> {
    if s < 2 {
        return Err(Error::Usage(format!("center multiplicity {s} < 2")));
    }
    let mut out =
        SetSchedule { s, lambda: lambda(s)?, psi: vec![], mu: vec![], gamma: vec![], anchor: None };
    match case {
        CaseId::P39 => {
            out.psi = level(s, s / 2 + 1)?;
        }
        CaseId::P312 => {
            let k = k.ok_or_else(|| Error::Usage("P312 needs a value of k".into()))?;
            let upper = shade(&last_m(s, s / 2, k)?)?;
            out.psi = front(level(s, s / 2 + 1)?, |x| !upper.contains(x));
            out.mu = level(s, s / 2)?;
        }
        CaseId::P43D3 => {
            let psi = KSubset::from_bits(s, (1u64 << (s / 2)) - 1)?;
            let bar = psi.complement();
            let h = level(s, s.div_ceil(2))?;
            out.mu = front(h.clone(), |x| psi.is_subset_of(x));
            let ones = |x: &KSubset| (x.bits() & psi.bits()).count_ones() == 1;
            let mut gamma = front(h.into_iter().filter(|x| *x != bar).collect(), ones);
            gamma.push(bar);
            out.gamma = gamma;
            out.anchor = Some(psi);
        }
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[KSubset]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn lambda_runs_then_squashed() {
        let l = lambda(4).unwrap();
        assert_eq!(names(&l), ["12", "23", "34", "14", "13", "24"]);
        assert_eq!(l[2], l[0].complement());
        let l = lambda(3).unwrap();
        assert_eq!(names(&l), ["12", "23", "13"]);
        assert_eq!(names(&lambda(2).unwrap()), ["1", "2"]);
    }

    #[test]
    fn mixed_even_psi_front() {
        let sch = make_schedule(6, CaseId::P312, Some(13)).unwrap();
        assert_eq!(names(&sch.psi[..2]), ["1234", "1235"]);
        assert_eq!(sch.mu.len(), 20);
        // μ̄_i = μ_{C+1-i}
        for i in 0..20 {
            assert_eq!(sch.mu[i].complement(), sch.mu[19 - i]);
        }
    }

    #[test]
    fn odd_anchor_lists() {
        let sch = make_schedule(5, CaseId::P43D3, None).unwrap();
        let psi = sch.anchor.unwrap();
        assert_eq!(psi.to_string(), "12");
        assert_eq!(sch.gamma.last().unwrap().to_string(), "345");
        assert!(psi.is_subset_of(&sch.mu[0]));
        assert_eq!(sch.gamma.len(), 10);
    }
}
