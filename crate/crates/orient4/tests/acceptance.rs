//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orient4::classifier::{classify, CaseId, Verdict};
use orient4::constructions::{build_with_case, construct_optimal};
use orient4::digraph::{center_distance_violations, extend_orientation, leaf_branch_parity_violations};
use orient4::oracle::{bipartite_orientation_number, orientation_number, OracleOptions};
use orient4::sperner::{binom, first_m, kappa, last_m, shade, shadow_size_kkt, Family};
use orient4::tree::{validate, BranchSpec, TreeSpec};

type Check = std::result::Result<String, String>;

fn edge_count(spec: &TreeSpec) -> u64 {
    let s = spec.center_multiplicity as u64;
    spec.branches
        .iter()
        .map(|b| {
            let m = b.multiplicity as u64;
            s * m + b.leaf_multiplicities.iter().map(|&l| m * l as u64).sum::<u64>()
        })
        .sum()
}

fn oracle_opts() -> OracleOptions {
    OracleOptions { max_edges: 24, symmetry: true, ..OracleOptions::default() }
}

/// Every branch shape with multiplicity 2 or 3 and up to two leaves of
/// multiplicity 2 or 3, leaves sorted.
fn branch_shapes() -> Vec<BranchSpec> {
    let leaf_sets: [&[u32]; 6] = [&[], &[2], &[3], &[2, 2], &[2, 3], &[3, 3]];
    let mut out = Vec::new();
    for m in [2, 3] {
        for l in leaf_sets {
            out.push(BranchSpec::new(m, l.to_vec()));
        }
    }
    out
}

fn criterion_1() -> Check {
    let shapes = branch_shapes();
    let mut specs = Vec::new();
    for s in [2, 3] {
        for n in [2usize, 3] {
            // non-decreasing index tuples give each multiset of branches once
            let mut idx = vec![0usize; n];
            loop {
                let spec = TreeSpec::new(s, idx.iter().map(|&i| shapes[i].clone()).collect());
                if validate(&spec).is_ok() && edge_count(&spec) <= 22 {
                    specs.push(spec);
                }
                let Some(p) = (0..n).rev().find(|&p| idx[p] + 1 < shapes.len()) else { break };
                idx[p] += 1;
                for q in p + 1..n {
                    idx[q] = idx[p];
                }
            }
        }
    }
    let mut disagreements = Vec::new();
    for spec in &specs {
        let cls = classify(spec).map_err(|e| e.to_string())?;
        let want = match cls.verdict {
            Verdict::C0 => 4,
            Verdict::C1 => 5,
            Verdict::UnknownGap => return Err(format!("open verdict for {}", spec.to_json())),
        };
        let got = orientation_number(spec, &oracle_opts()).map_err(|e| e.to_string())?.orientation_number;
        if got != want {
            disagreements.push(format!("{} classifier {want} oracle {got}", spec.to_json()));
        }
    }
    if disagreements.is_empty() {
        Ok(format!("{} canonical instances, zero disagreements", specs.len()))
    } else {
        Err(format!("{} disagreements: {}", disagreements.len(), disagreements.join("; ")))
    }
}

fn criterion_2() -> Check {
    let p5 = TreeSpec::new(2, vec![BranchSpec::new(2, vec![2]), BranchSpec::new(2, vec![2])]);
    let three = TreeSpec::new(2, (0..3).map(|_| BranchSpec::new(2, vec![2])).collect());
    let mut msgs = Vec::new();
    for (spec, want) in [(&p5, 4), (&three, 5)] {
        let r = orientation_number(spec, &oracle_opts()).map_err(|e| e.to_string())?;
        if r.orientation_number != want {
            return Err(format!("{} edges: oracle {} expected {want}", edge_count(spec), r.orientation_number));
        }
        msgs.push(format!("{} edges -> {want}", edge_count(spec)));
    }
    Ok(msgs.join(", "))
}

/// `a` A2 branches, `b` A3, `f` A4 and `e` leafless ones, each internal
/// branch with one leaf of multiplicity 2.
fn shaped(s: u32, a: usize, b: usize, f: usize, e: usize) -> TreeSpec {
    let mut br = Vec::new();
    br.extend((0..a).map(|_| BranchSpec::new(2, vec![2])));
    br.extend((0..b).map(|_| BranchSpec::new(3, vec![2])));
    br.extend((0..f).map(|_| BranchSpec::new(4, vec![2])));
    br.extend((0..e).map(|_| BranchSpec::new(2, vec![])));
    TreeSpec::new(s, br)
}

fn criterion_3() -> Check {
    let figures: Vec<(&str, TreeSpec, CaseId, Option<u64>)> = vec![
        ("2.2", shaped(2, 0, 0, 2, 2), CaseId::P34, None),
        ("3.3", shaped(5, 4, 0, 0, 0), CaseId::P35D1, None),
        ("3.4", shaped(5, 4, 0, 0, 2), CaseId::P35D2, None),
        ("3.5", shaped(5, 5, 0, 0, 0), CaseId::P35D3, None),
        ("3.6", shaped(5, 9, 0, 0, 2), CaseId::P35D4, None),
        ("3.7/3.8", shaped(4, 0, 6, 2, 2), CaseId::P39, None),
        ("3.9", shaped(4, 4, 0, 2, 0), CaseId::P310, None),
        ("3.10/3.11", shaped(6, 12, 8, 2, 2), CaseId::P312, Some(13)),
        ("4.12", shaped(3, 0, 4, 2, 2), CaseId::P41, None),
        ("4.13", shaped(3, 1, 1, 0, 2), CaseId::P43D1, None),
        ("4.14", shaped(3, 1, 2, 0, 2), CaseId::P43D2, None),
        ("4.15", shaped(5, 6, 7, 0, 0), CaseId::P43D3, None),
        ("4.16", shaped(5, 6, 7, 0, 2), CaseId::P43D3, None),
        ("4.17", shaped(3, 2, 0, 2, 2), CaseId::P411, None),
        ("4.18", shaped(3, 1, 2, 2, 2), CaseId::P413, None),
    ];
    let mut slowest = Duration::ZERO;
    for (fig, spec, case, k) in &figures {
        let t = Instant::now();
        let c = build_with_case(spec, *case, *k).map_err(|e| format!("figure {fig}: {e}"))?;
        let base = &c.base;
        let ok = base.diameter().finite() == Some(4) && base.is_strong() && base.every_vertex_on_cycle_le(4);
        let dt = t.elapsed();
        if !ok {
            return Err(format!("figure {fig}: base orientation fails diameter/strong/C4 check"));
        }
        if dt > Duration::from_secs(1) {
            return Err(format!("figure {fig}: took {dt:?}"));
        }
        slowest = slowest.max(dt);
    }
    Ok(format!("{} figure instances, slowest {:.0} ms", figures.len(), slowest.as_secs_f64() * 1e3))
}

fn criterion_4() -> Check {
    let cases: [(TreeSpec, Verdict, Option<CaseId>); 6] = [
        (shaped(4, 0, 8, 0, 0), Verdict::C0, None),
        (shaped(4, 0, 9, 0, 0), Verdict::C1, None),
        (shaped(3, 0, 4, 0, 0), Verdict::C0, None),
        (shaped(3, 0, 5, 0, 0), Verdict::C1, None),
        (shaped(5, 6, 7, 0, 0), Verdict::C0, Some(CaseId::P43D3)),
        (shaped(5, 5, 9, 0, 0), Verdict::C1, None),
    ];
    for (spec, want, want_case) in &cases {
        let p = orient4::tree::partition(spec);
        let tag = format!("s={} |A2|={} |A3|={}", spec.center_multiplicity, p.a2.len(), p.a3.len());
        let cls = classify(spec).map_err(|e| e.to_string())?;
        if cls.verdict != *want {
            return Err(format!("{tag}: verdict {} expected {want}", cls.verdict));
        }
        match (want, construct_optimal(spec)) {
            (Verdict::C0, Ok(c)) => {
                if c.orientation.diameter().finite() != Some(4) {
                    return Err(format!("{tag}: constructed diameter {}", c.orientation.diameter()));
                }
                if let Some(wc) = want_case {
                    if c.case != *wc {
                        return Err(format!("{tag}: built {} expected {wc}", c.case));
                    }
                }
            }
            (Verdict::C0, Err(e)) => return Err(format!("{tag}: {e}")),
            (_, Ok(_)) => return Err(format!("{tag}: C1 instance was constructed")),
            (_, Err(_)) => {}
        }
    }
    Ok("s=3,4,5 thresholds hold on both sides".into())
}

fn shadow_by_bits(sets: &[u64]) -> usize {
    let mut out = BTreeSet::new();
    for &s in sets {
        for i in 0..64 {
            if s >> i & 1 == 1 {
                out.insert(s & !(1u64 << i));
            }
        }
    }
    out.len()
}

fn k_sets(n: u32, k: u32) -> Vec<u64> {
    (0u64..1 << n).filter(|x| x.count_ones() == k).collect()
}

/// Largest `|A| + |B|` over cross-intersecting antichains on `{1..n}`,
/// optionally requiring `A` and `B` to share no member.
fn antichain_pair_max(n: u32, disjoint_families: bool) -> usize {
    let universe = 1usize << n;
    let antichains: Vec<u64> = (0u64..1 << universe)
        .filter(|&fam| {
            let members: Vec<usize> = (0..universe).filter(|&x| fam >> x & 1 == 1).collect();
            members.iter().all(|&x| members.iter().all(|&y| x == y || x & y != x))
        })
        .collect();
    let mut best = 0;
    for &a in &antichains {
        for &b in &antichains {
            if disjoint_families && a & b != 0 {
                continue;
            }
            let size = (a.count_ones() + b.count_ones()) as usize;
            if size <= best {
                continue;
            }
            let cross = (0..universe)
                .filter(|&x| a >> x & 1 == 1)
                .all(|x| (0..universe).filter(|&y| b >> y & 1 == 1).all(|y| x & y != 0));
            if cross {
                best = size;
            }
        }
    }
    best
}

fn criterion_5() -> Check {
    let k = kappa(6, 3, 13).map_err(|e| e.to_string())?;
    if k != 0 {
        return Err(format!("kappa(6,3,13) = {k}"));
    }
    let l = last_m(6, 3, 13).map_err(|e| e.to_string())?;
    let names: Vec<String> = l.sets().iter().map(|s| s.to_string()).collect();
    if names.first().map(String::as_str) != Some("145")
        || names.get(1).map(String::as_str) != Some("245")
        || names.last().map(String::as_str) != Some("456")
    {
        return Err(format!("L(6,3,13) = {names:?}"));
    }
    let sh = shade(&l).map_err(|e| e.to_string())?;
    let outside: Vec<String> = Family::level(6, 4)
        .map_err(|e| e.to_string())?
        .sets()
        .iter()
        .filter(|s| !sh.contains(s))
        .map(|s| s.to_string())
        .collect();
    if outside != ["1234", "1235"] {
        return Err(format!("4-sets outside the shade: {outside:?}"));
    }

    let mut checked = 0;
    for n in 1..=7u32 {
        for k in 1..=n {
            for m in 0..=binom(n as u64, k as u64) {
                let fam = first_m(n, k, m).map_err(|e| e.to_string())?;
                let bits: Vec<u64> = fam.sets().iter().map(|s| s.bits()).collect();
                let want = shadow_by_bits(&bits) as u64;
                let got = shadow_size_kkt(n, k, m).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("shadow_size_kkt({n},{k},{m}) = {got}, brute force {want}"));
                }
                checked += 1;
            }
        }
    }

    // Minimality: no m-family of k-sets has a smaller shadow, for n ≤ 5.
    for n in 2..=5u32 {
        for k in 1..=n {
            let level = k_sets(n, k);
            let mut best = vec![usize::MAX; level.len() + 1];
            for pick in 0u64..1 << level.len() {
                let fam: Vec<u64> = (0..level.len()).filter(|&i| pick >> i & 1 == 1).map(|i| level[i]).collect();
                let m = fam.len();
                best[m] = best[m].min(shadow_by_bits(&fam));
            }
            for (m, &b) in best.iter().enumerate() {
                let kkt = shadow_size_kkt(n, k, m as u64).map_err(|e| e.to_string())? as usize;
                if kkt != b {
                    return Err(format!("n={n} k={k} m={m}: KKT {kkt}, minimum {b}"));
                }
            }
        }
    }

    let mut pairs = Vec::new();
    for n in [3u32, 4] {
        let bound = (binom(n as u64, ((n + 1) / 2) as u64) + binom(n as u64, ((n + 2) / 2) as u64)) as usize;
        let free = antichain_pair_max(n, false);
        let distinct = antichain_pair_max(n, true);
        if free != bound {
            return Err(format!("n={n}: exhaustive maximum {free}, bound {bound}"));
        }
        pairs.push((n, free, distinct));
    }
    let (expect_distinct, got_distinct): (Vec<usize>, Vec<usize>) = (vec![4, 10], pairs.iter().map(|p| p.2).collect());
    if got_distinct != expect_distinct {
        return Err(format!("maxima over member-disjoint pairs {got_distinct:?}, expected {expect_distinct:?}"));
    }
    Ok(format!(
        "kappa/L/shade match, KKT agrees with brute force on {checked} (n,k,m), antichain-pair maxima {}",
        pairs
            .iter()
            .map(|(n, f, d)| format!("n={n}: {f} ({d} with no shared member)"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn claims_center_distance(case: CaseId) -> bool {
    use CaseId::*;
    matches!(case, P35D3 | P35D4 | P39 | P310 | P312 | P41 | P43D1 | P43D2 | P43D3 | P411 | P413)
}

fn random_spec(rng: &mut ChaCha8Rng) -> TreeSpec {
    let s = rng.gen_range(2..=6);
    let n = rng.gen_range(2..=9);
    let branches = (0..n)
        .map(|_| {
            let m = if rng.gen_bool(0.5) { 2 } else { rng.gen_range(2..=5) };
            let leaves = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(2..=3)).collect();
            BranchSpec::new(m, leaves)
        })
        .collect();
    TreeSpec::new(s, branches)
}

fn plus_one(spec: &TreeSpec) -> TreeSpec {
    TreeSpec::new(
        spec.center_multiplicity + 1,
        spec.branches
            .iter()
            .map(|b| BranchSpec::new(b.multiplicity + 1, b.leaf_multiplicities.iter().map(|l| l + 1).collect()))
            .collect(),
    )
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f72_6934);
    let mut done = 0;
    let mut center_checked = 0;
    while done < 200 {
        let spec = random_spec(&mut rng);
        if validate(&spec).is_err() || classify(&spec).map_err(|e| e.to_string())?.verdict != Verdict::C0 {
            continue;
        }
        let tag = spec.to_json();
        let c = construct_optimal(&spec).map_err(|e| format!("{tag}: {e}"))?;
        let d = &c.orientation;
        if d.reverse().diameter().finite() != Some(4) {
            return Err(format!("{tag}: reverse diameter {}", d.reverse().diameter()));
        }
        let dist = d.distance_matrix();
        let parity = leaf_branch_parity_violations(d, &dist);
        if !parity.is_empty() {
            return Err(format!("{tag}: {} parity violations", parity.len()));
        }
        if claims_center_distance(c.case) && !c.searched {
            let base_dist = c.base.distance_matrix();
            let bad = center_distance_violations(&c.base, &base_dist);
            if !bad.is_empty() {
                return Err(format!("{tag}: {} center pairs not at distance 2 ({})", bad.len(), c.case));
            }
            center_checked += 1;
        }
        let lifted = extend_orientation(d, &plus_one(&spec), 4).map_err(|e| format!("{tag}: {e}"))?;
        if lifted.diameter().finite() != Some(4) {
            return Err(format!("{tag}: lifted diameter {}", lifted.diameter()));
        }
        done += 1;
    }
    Ok(format!("{done} random C0 instances, center distance checked on {center_checked}"))
}

fn criterion_7() -> Check {
    let mut seen = Vec::new();
    for p in 2..=12usize {
        for q in p..=12 {
            if p * q > 12 {
                continue;
            }
            let want = if q as u64 <= binom(p as u64, (p / 2) as u64) { 3 } else { 4 };
            let got = bipartite_orientation_number(p, q, &oracle_opts()).map_err(|e| e.to_string())?.orientation_number;
            if got != want {
                return Err(format!("K({p},{q}): {got}, expected {want}"));
            }
            seen.push(format!("K({p},{q})={got}"));
        }
    }
    Ok(seen.join(" "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("classifier agrees with exhaustive search", criterion_1),
        ("small named instances", criterion_2),
        ("figure constructions", criterion_3),
        ("threshold boundaries", criterion_4),
        ("Sperner toolkit", criterion_5),
        ("randomized orientation properties", criterion_6),
        ("complete bipartite graphs", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
