//! Acceptance run: eight end-to-end criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines always show up in
//! `cargo test` output. Exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use springer_dual::az::{az_dual, UnipotentParam};
use springer_dual::duality::{max_marked, min_marked};
use springer_dual::exceptional::{enumerate_group, lookup, ExcGroup};
use springer_dual::greens::poly::{Poly, PolyMatrix};
use springer_dual::greens::{solve_family, solve_type_a, verify_theorems, FamilySolution};
use springer_dual::orbits::enumerate;
use springer_dual::symbols::{gsc_forward, gsc_inverse, sign_twist};
use springer_dual::{Bipartition, FamilyKey, GroupKind, MarkedPartition, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?}"))
}

/// Number of partitions of `n`, by the standard recurrence on the largest part.
fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

fn bipartition_count(m: u32) -> u64 {
    (0..=m).map(|a| partition_count(a) * partition_count(m - a)).sum()
}

/// Unordered pairs `{α, β}` of total `m`, where `α = β` counts twice for `m > 0`.
fn unordered_count(m: u32) -> u64 {
    let ordered = bipartition_count(m);
    let diagonal = if m % 2 == 0 { partition_count(m / 2) } else { 0 };
    if m == 0 {
        1
    } else {
        (ordered - diagonal) / 2 + 2 * diagonal
    }
}

fn expected_census(group: GroupKind, size: u32) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for k in 0..=size {
        match group {
            GroupKind::Sp if k * (k + 1) <= size => {
                out.insert(k, bipartition_count(size / 2 - k * (k + 1) / 2));
            }
            GroupKind::SO if k * k <= size && (size - k) % 2 == 0 => {
                let m = (size - k * k) / 2;
                out.insert(k, if k == 0 { unordered_count(m) } else { bipartition_count(m) });
            }
            _ => {}
        }
    }
    out
}

fn sizes(group: GroupKind, max: u32) -> Vec<u32> {
    (0..=max).filter(|s| group == GroupKind::SO || s % 2 == 0).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for group in [GroupKind::Sp, GroupKind::SO] {
        for size in sizes(group, 12) {
            let mut census: BTreeMap<u32, u64> = BTreeMap::new();
            let mut images = BTreeSet::new();
            for m in enumerate(group, size) {
                let (key, bip) = gsc_forward(&m).map_err(|e| format!("{m}: {e}"))?;
                let back = gsc_inverse(&key, &bip).map_err(|e| format!("{m}: inverse failed: {e}"))?;
                ensure(back == m, || format!("{m} -> {bip} -> {back}"))?;
                ensure(images.insert((key, bip.clone())), || format!("{m}: image {bip} hit twice"))?;
                *census.entry(key.defect).or_default() += 1;
                pairs += 1;
            }
            let want = expected_census(group, size);
            ensure(census == want, || format!("{group}({size}) census {census:?}, expected {want:?}"))?;
        }
    }
    let sp4: Vec<u64> = {
        let mut c: BTreeMap<u32, u64> = BTreeMap::new();
        for m in enumerate(GroupKind::Sp, 4) {
            *c.entry(gsc_forward(&m).unwrap().0.defect).or_default() += 1;
        }
        c.into_values().collect()
    };
    ensure(sp4 == [5, 2], || format!("Sp(4) census {sp4:?}"))?;
    let t = within(start, Duration::from_secs(10), "round trip")?;
    Ok(format!("{pairs} pairs, Sp(4) = 5 + 2, {t}"))
}

/// Twists a character of the family's Weyl group by the sign character,
/// using only the value rows of the character table.
fn twist_index(sol: &FamilySolution, x: usize) -> usize {
    let t = &sol.table;
    let row: Vec<i64> = t.values[sol.rows[x]].iter().zip(&t.values[t.sign_index]).map(|(a, b)| a * b).collect();
    let r = t.values.iter().position(|v| *v == row).expect("twisted row is a character");
    sol.rows.iter().position(|&q| q == r).expect("twist stays in the family")
}

fn same_ignoring_tag(a: &MarkedPartition, b: &MarkedPartition) -> bool {
    a.lambda() == b.lambda() && a.eps() == b.eps()
}

fn below(a: &Partition, b: &Partition) -> bool {
    a != b && a.dominated_by(b)
}

fn families(group: GroupKind, max: u32) -> Result<Vec<FamilySolution>, String> {
    sizes(group, max)
        .into_iter()
        .flat_map(|s| FamilyKey::all(group, s))
        .map(|k| solve_family(&k).map_err(|e| format!("{k}: {e}")))
        .collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for group in [GroupKind::Sp, GroupKind::SO] {
        for sol in families(group, 8)? {
            for (y, point) in sol.orbits.iter().enumerate() {
                let cons: Vec<(usize, BigInt)> = (0..sol.labels.len())
                    .map(|x| (x, sol.p.get(x, y).at_one()))
                    .filter(|(_, m)| !m.is_zero())
                    .collect();
                let top: Vec<_> = cons
                    .iter()
                    .filter(|(x, _)| cons.iter().all(|(z, _)| z == x || below(sol.orbits[*z].lambda(), sol.orbits[*x].lambda())))
                    .collect();
                let want = max_marked(point).map_err(|e| format!("{point}: {e}"))?;
                ensure(top.len() == 1, || format!("{point}: {} maximal constituents", top.len()))?;
                let (x, m) = top[0];
                ensure(m.is_one(), || format!("{point}: top multiplicity {m}"))?;
                ensure(same_ignoring_tag(&sol.orbits[*x], &want), || {
                    format!("{point}: oracle max {} vs {want}", sol.orbits[*x])
                })?;

                let twisted: Vec<(usize, &BigInt)> = cons.iter().map(|(x, m)| (twist_index(&sol, *x), m)).collect();
                let bottom: Vec<_> = twisted
                    .iter()
                    .filter(|(x, _)| twisted.iter().all(|(z, _)| z == x || below(sol.orbits[*x].lambda(), sol.orbits[*z].lambda())))
                    .collect();
                let want = min_marked(point).map_err(|e| format!("{point}: {e}"))?;
                ensure(bottom.len() == 1, || format!("{point}: {} minimal twisted constituents", bottom.len()))?;
                let (x, m) = bottom[0];
                ensure(m.is_one(), || format!("{point}: minimal multiplicity {m}"))?;
                ensure(same_ignoring_tag(&sol.orbits[*x], &want), || {
                    format!("{point}: oracle min {} vs {want}", sol.orbits[*x])
                })?;
                checked += 1;
            }
        }
        let report = verify_theorems(group, 8).map_err(|e| e.to_string())?;
        ensure(report.all_pass(), || format!("{group}: {:?}", report.counterexamples))?;
    }
    let t = within(start, Duration::from_secs(300), "oracle certification")?;
    Ok(format!("{checked} pairs, zero counterexamples, {t}"))
}

fn criterion_3() -> Outcome {
    let mut solved = 0;
    for group in [GroupKind::Sp, GroupKind::SO] {
        for sol in families(group, 8)? {
            let n = sol.labels.len();
            let residual = sol.omega.sub(&sol.p.mul(&sol.lambda).mul(&sol.p.transpose()));
            ensure(residual.is_zero(), || format!("{}: nonzero residual", sol.key))?;
            ensure((0..n).all(|i| *sol.p.get(i, i) == Poly::one()), || format!("{}: diagonal", sol.key))?;
            let block: Vec<usize> =
                (0..n).map(|i| sol.blocks.iter().position(|b| b.contains(&i)).expect("every index in a block")).collect();
            for x in 0..n {
                for y in 0..n {
                    let (ox, oy) = (&sol.orbits[x], &sol.orbits[y]);
                    if block[x] != block[y] {
                        ensure(sol.lambda.get(x, y).is_zero(), || format!("{}: Λ off-block at ({x},{y})", sol.key))?;
                    }
                    if x != y && !sol.p.get(x, y).is_zero() {
                        let strictly = oy.orbit_leq(ox) && !ox.orbit_leq(oy);
                        ensure(block[x] != block[y] && strictly, || {
                            format!("{}: P entry at constituent {ox}, point {oy}", sol.key)
                        })?;
                    }
                }
            }
            ensure(sol.certificate.ok(), || format!("{}: {:?}", sol.key, sol.certificate))?;
            solved += 1;
        }
    }
    Ok(format!("{solved} families certified"))
}

/// Row lengths `outer ⊇ inner` inside `shape` with `|outer/inner| = size`
/// and no two new boxes in one column.
fn strips(inner: &[usize], shape: &[u32], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = inner.to_vec();
    fn go(row: usize, left: usize, cur: &mut Vec<usize>, inner: &[usize], shape: &[u32], out: &mut Vec<Vec<usize>>) {
        if row == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let above = if row == 0 { usize::MAX } else { inner[row - 1] };
        let cap = (shape[row] as usize).min(above) - inner[row];
        for a in 0..=cap.min(left) {
            cur[row] = inner[row] + a;
            go(row + 1, left - a, cur, inner, shape, out);
        }
        cur[row] = inner[row];
    }
    go(0, size, &mut cur, inner, shape, &mut out);
    out
}

/// Semistandard tableaux of shape `shape` and content `content`, as rows.
fn tableaux(shape: &[u32], content: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let mut partial: Vec<(Vec<usize>, Vec<Vec<u32>>)> = vec![(vec![0; shape.len()], vec![Vec::new(); shape.len()])];
    for (i, &c) in content.iter().enumerate() {
        let letter = i as u32 + 1;
        partial = partial
            .into_iter()
            .flat_map(|(inner, rows)| {
                strips(&inner, shape, c as usize).into_iter().map(move |outer| {
                    let mut rows = rows.clone();
                    for (r, (&o, &n)) in outer.iter().zip(&inner).enumerate() {
                        rows[r].extend(std::iter::repeat_n(letter, o - n));
                    }
                    (outer, rows)
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .filter(|(lens, _)| lens.iter().zip(shape).all(|(&l, &s)| l == s as usize))
        .map(|(_, rows)| rows)
        .collect()
}

/// Charge of a word whose content is a partition.
fn charge(word: &[u32]) -> u32 {
    let mut used = vec![false; word.len()];
    let mut total = 0;
    loop {
        let Some(mut pos) = (0..word.len()).rev().find(|&i| !used[i] && word[i] == 1) else {
            return total;
        };
        used[pos] = true;
        let mut index = 0;
        let mut letter = 1;
        loop {
            letter += 1;
            // Scan leftwards cyclically for the next letter.
            let n = word.len();
            let found = (1..=n).map(|s| (pos + n - s) % n).find(|&i| !used[i] && word[i] == letter);
            let Some(next) = found else { break };
            if next > pos {
                index += 1;
            }
            total += index;
            used[next] = true;
            pos = next;
        }
    }
}

fn kostka_foulkes(lambda: &[u32], mu: &[u32]) -> Poly {
    tableaux(lambda, mu).iter().fold(Poly::zero(), |acc, t| {
        let word: Vec<u32> = t.iter().rev().flatten().copied().collect();
        &acc + &Poly::monomial(1, charge(&word) as usize)
    })
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for n in 0..=6u32 {
        let s = solve_type_a(n).map_err(|e| e.to_string())?;
        let k = s.partitions.len();
        let want = PolyMatrix::from_fn(k, |x, y| kostka_foulkes(s.partitions[x].parts(), s.partitions[y].parts()));
        ensure(s.p == want, || {
            let bad = (0..k)
                .flat_map(|x| (0..k).map(move |y| (x, y)))
                .find(|&(x, y)| s.p.get(x, y) != want.get(x, y))
                .unwrap();
            format!(
                "n={n}: P at ({}, {}) is {} but K = {}",
                s.partitions[bad.0],
                s.partitions[bad.1],
                s.p.get(bad.0, bad.1),
                want.get(bad.0, bad.1)
            )
        })?;
        let row = Partition::new(if n == 0 { vec![] } else { vec![n] }).unwrap();
        for mu in 0..k {
            ensure(s.max_support(mu) == Some(&row), || format!("n={n}: max support at {} is not {row}", s.partitions[mu]))?;
        }
    }
    let t = within(start, Duration::from_secs(30), "type A")?;
    Ok(format!("P equals K(t) by charge for n <= 6, one-row maxima, {t}"))
}

/// All `(γ, δ)` of total `size` that contain some base element with every
/// column of each half growing by at most one, by brute force.
fn pieri_brute(base: &BTreeSet<(Partition, Partition)>, size: u32) -> BTreeSet<(Partition, Partition)> {
    let strip = |big: &Partition, small: &Partition| {
        let (bt, st) = (big.transpose(), small.transpose());
        (0..=bt.len().max(st.len())).all(|j| st.get(j) <= bt.get(j) && bt.get(j) <= st.get(j) + 1)
    };
    Partition::all_pairs(size)
        .into_iter()
        .filter(|(g, d)| base.iter().any(|(a, b)| strip(g, a) && strip(d, b)))
        .collect()
}

fn unordered(key: &FamilyKey, b: &Bipartition) -> (Partition, Partition) {
    if key.is_unordered() && b.alpha < b.beta {
        (b.beta.clone(), b.alpha.clone())
    } else {
        (b.alpha.clone(), b.beta.clone())
    }
}

fn criterion_5() -> Outcome {
    let mut mixed = 0;
    for group in [GroupKind::Sp, GroupKind::SO] {
        let sols: BTreeMap<FamilyKey, FamilySolution> = families(group, 8)?.into_iter().map(|s| (s.key, s)).collect();
        let parity = group.marked_parity();
        for sol in sols.values() {
            for (y, point) in sol.orbits.iter().enumerate() {
                let (pure, other): (Vec<u32>, Vec<u32>) =
                    point.lambda().parts().iter().partition(|&&p| p % 2 == parity);
                if pure.is_empty() || other.is_empty() {
                    continue;
                }
                mixed += 1;
                let pure_pt = MarkedPartition::new(group, Partition::new(pure).unwrap(), point.eps().clone(), None)
                    .map_err(|e| format!("{point}: {e}"))?;
                let (pkey, _) = gsc_forward(&pure_pt).map_err(|e| e.to_string())?;
                ensure(pkey.defect == sol.key.defect, || format!("{point}: pure part changes the defect"))?;
                let psol = &sols[&pkey];
                let py = psol.index_of(&pure_pt).unwrap();
                let mut set: BTreeSet<(Partition, Partition)> = BTreeSet::new();
                for x in 0..psol.labels.len() {
                    if !psol.p.get(x, py).is_zero() {
                        let (a, b) = unordered(&pkey, &psol.labels[x]);
                        if pkey.is_unordered() {
                            set.insert((b.clone(), a.clone()));
                        }
                        set.insert((a, b));
                    }
                }
                let mut size = pkey.rank();
                for a in other.iter().step_by(2) {
                    size += a;
                    set = pieri_brute(&set, size);
                }
                let induced: BTreeSet<(Partition, Partition)> = set
                    .into_iter()
                    .map(|(a, b)| if sol.key.is_unordered() && a < b { (b, a) } else { (a, b) })
                    .collect();
                let actual: BTreeSet<(Partition, Partition)> = (0..sol.labels.len())
                    .filter(|&x| !sol.p.get(x, y).is_zero())
                    .map(|x| unordered(&sol.key, &sol.labels[x]))
                    .collect();
                ensure(induced == actual, || format!("{point}: induced {induced:?} vs constituents {actual:?}"))?;
            }
        }
    }
    ensure(mixed > 0, || "no mixed-parity inputs were exercised".into())?;
    Ok(format!("{mixed} mixed-parity pairs agree with Pieri induction"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let spot = [
        (ExcGroup::G2, "G_2(a_1)", "(21)", ("A_1", "1", "∅")),
        (ExcGroup::F4, "F_4(a_3)", "(1^4)", ("F_4(a_3)", "A_3", "(1^4)")),
        (ExcGroup::E8, "E_8(a_7)", "(2^2 1)", ("A_2+A_1", "A_1", "(2)")),
    ];
    for (g, o, e, (wo, wa, we)) in spot {
        let r = lookup(g, o, e).map_err(|x| x.to_string())?;
        ensure((r.dual_orbit.as_str(), r.dual_a_group.as_str(), r.dual_eps.as_str()) == (wo, wa, we), || {
            format!("{g} {o} {e}: got {r:?}")
        })?;
    }
    let counts: Vec<usize> = ExcGroup::ALL.iter().map(|g| enumerate_group(*g).len()).collect();
    ensure(counts[0] == 7, || format!("G2 has {} rows", counts[0]))?;
    let mut rows = 0;
    for g in ExcGroup::ALL {
        let all = enumerate_group(g);
        let keys: BTreeSet<(&str, &str)> = all.iter().map(|r| (r.orbit.as_str(), r.eps.as_str())).collect();
        ensure(keys.len() == all.len(), || format!("{g}: duplicate keys"))?;
        for r in &all {
            let d = lookup(g, &r.dual_orbit, &r.dual_eps).map_err(|x| format!("row closure: {x}"))?;
            ensure(d.a_group == r.dual_a_group, || format!("{g}: component group mismatch for {}", r.dual_orbit))?;
            rows += 1;
        }
        let t = lookup(g, "1", "∅").map_err(|x| x.to_string())?;
        ensure((t.dual_orbit.as_str(), t.dual_eps.as_str()) == ("1", "∅"), || format!("{g}: trivial row"))?;
    }
    let t = within(start, Duration::from_secs(1), "exceptional lookups")?;
    Ok(format!("{rows} rows closed, row counts {counts:?}, {t}"))
}

fn criterion_7() -> Outcome {
    let empty = MarkedPartition::sp(Partition::empty(), BTreeMap::new()).unwrap();
    let mut cases = 0;
    for gl in [vec![1], vec![1, 2], vec![3, 1, 1], vec![4, 2]] {
        let n: u32 = gl.iter().sum();
        let d = az_dual(&UnipotentParam::new(gl.clone(), empty.clone(), empty.clone(), n).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(d.lambda == Partition::new(vec![1; 2 * n as usize]).unwrap(), || format!("{gl:?}: {}", d.lambda))?;
        cases += 1;
    }
    for size in sizes(GroupKind::Sp, 10) {
        for m in enumerate(GroupKind::Sp, size) {
            let want = min_marked(&m).map_err(|e| e.to_string())?;
            for swap in [false, true] {
                let (a, b) = if swap { (empty.clone(), m.clone()) } else { (m.clone(), empty.clone()) };
                let d = az_dual(&UnipotentParam::symplectic(a, b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                ensure(d.lambda == *want.lambda(), || format!("{m}: {} vs {want}", d.lambda))?;
                let side = if swap { &d.minus_min } else { &d.plus_min };
                ensure(*side == want, || format!("{m}: block minimum {side} vs {want}"))?;
                cases += 1;
            }
        }
    }
    let small: Vec<MarkedPartition> = sizes(GroupKind::Sp, 4).into_iter().flat_map(|s| enumerate(GroupKind::Sp, s)).collect();
    for a in &small {
        for b in &small {
            for gl in [vec![], vec![2], vec![1, 1]] {
                let p = UnipotentParam::new(gl.clone(), a.clone(), b.clone(), gl.iter().sum::<u32>() + (a.size() + b.size()) / 2)
                    .map_err(|e| e.to_string())?;
                let d = az_dual(&p).map_err(|e| e.to_string())?;
                ensure(d.lambda.size() == 2 * p.n, || format!("{a} {b} {gl:?}: total {}", d.lambda.size()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameters"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for group in [GroupKind::Sp, GroupKind::SO] {
        for size in sizes(group, 12) {
            for m in enumerate(group, size) {
                let top = max_marked(&m).map_err(|e| format!("{m}: {e}"))?;
                let low = min_marked(&m).map_err(|e| format!("{m}: {e}"))?;
                ensure(m.lambda().dominated_by(top.lambda()), || format!("{m} not below {top}"))?;
                ensure(top.size() == size && low.size() == size, || format!("{m}: size changed"))?;
                let (k0, _) = gsc_forward(&m).unwrap();
                let (k1, _) = gsc_forward(&top).map_err(|e| e.to_string())?;
                ensure(k0 == k1, || format!("{m}: family {k0} but max in {k1}"))?;
                checked += 1;
            }
            for key in FamilyKey::all(group, size) {
                for b in key.members() {
                    ensure(sign_twist(&key, &sign_twist(&key, &b)) == b, || format!("{key}: twist of {b}"))?;
                }
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("correspondence round trip and family census", criterion_1),
        ("oracle certification of max and min", criterion_2),
        ("Lusztig-Shoji solver certificate", criterion_3),
        ("type A Kostka-Foulkes cross-check", criterion_4),
        ("Pieri induction consistency", criterion_5),
        ("exceptional tables", criterion_6),
        ("Aubert-Zelevinsky reductions", criterion_7),
        ("structural invariants", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
