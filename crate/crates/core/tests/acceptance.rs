//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use arith_equiv::cli::{self, files};
use arith_equiv::equiv::{compare_types, perlis_certify, EquivVerdict};
use arith_equiv::gassmann::{
    decomposition_from_frobenius, fix_counts_of_cycle_type, gassmann_equal, gassmann_implies_types, Perm, PermGroup,
};
use arith_equiv::nf::{decompose, decompose_via_algebra, places_over, NumberField};
use arith_equiv::exact::integer::primes_up_to;
use arith_equiv::sarith::{l2_profile, Csp, GroupSpec, L2Kind, Triple};
use num_bigint::BigInt;

use common::{data, groups};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> NumberField {
    files::load_field(&data(name)).unwrap()
}

fn big(base: u32, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

fn discriminants() -> Check {
    let expected = -(big(2, 10) * big(97, 7));
    for name in ["x8_97.field", "x8_1552.field"] {
        let d = load(name).field_disc().clone();
        ensure(d == expected, || format!("{name}: {d} != {expected}"))?;
    }
    let expected = big(2, 6) * big(13, 4) * big(191, 2);
    for name in ["deg7_k.field", "deg7_l.field"] {
        let d = load(name).field_disc().clone();
        ensure(d == expected, || format!("{name}: {d} != {expected}"))?;
    }
    Ok(())
}

fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    v.sort_unstable();
    v
}

fn ramification() -> Check {
    let cases: [(&str, u64, Vec<(usize, usize)>); 4] = [
        ("x8_97.field", 2, vec![(1, 1), (1, 1), (2, 1), (4, 1)]),
        ("x8_1552.field", 2, vec![(2, 1); 4]),
        ("x8_97.field", 97, vec![(8, 1)]),
        ("x8_1552.field", 97, vec![(8, 1)]),
    ];
    for (name, p, want) in cases {
        let got = sorted(decompose(&load(name), p).map_err(|e| e.to_string())?.pairs);
        ensure(got == want, || format!("{name} at {p}: {got:?} != {want:?}"))?;
    }
    Ok(())
}

fn perlis() -> Check {
    let (k, l) = (load("deg7_k.field"), load("deg7_l.field"));
    ensure(k.signature() == (7, 0) && l.signature() == (7, 0), || "signatures".into())?;
    let rep = perlis_certify(&k, &l).map_err(|e| e.to_string())?;
    ensure(rep.verdict == EquivVerdict::CertifiedEquivalent, || format!("verdict {}", rep.verdict))?;
    let degs = rep.norm_factor_degrees.unwrap_or_default();
    ensure(degs.iter().sum::<usize>() == 49 && degs.len() > 1, || format!("norm factors {degs:?}"))
}

fn example_i_sweep() -> Check {
    let rep = compare_types(&load("x8_3.field"), &load("x8_48.field"), 1000).map_err(|e| e.to_string())?;
    ensure(rep.mismatches() == 0, || format!("{} mismatches", rep.mismatches()))?;
    let swept: Vec<u64> = rep.evidence.iter().map(|r| r.p).collect();
    ensure(swept.contains(&2) && swept.contains(&3), || "ramified primes missing".into())?;
    let all = primes_up_to(1000);
    ensure(all.iter().all(|p| swept.contains(p)), || "sweep skipped a prime".into())
}

fn check_report(a: &str, b: &str) -> Result<cli::Report, String> {
    cli::cmd_check(&data(a), &data(b), 1000).map_err(|e| e.to_string())
}

fn has(r: &cli::Report, line: &str) -> bool {
    r.lines.iter().any(|l| l == line)
}

fn profinite_verdicts() -> Check {
    for (a, b) in [("ex_i_k.triple", "ex_i_l.triple"), ("x8_97.triple", "x8_1552.triple")] {
        let r = check_report(a, b)?;
        ensure(has(&r, "outcome = COMMENSURABLE") && r.exit == 0, || format!("{a} vs {b}: {:?}", r.lines))?;
    }
    let r = check_report("ex_i_k.triple", "ex_i_l_no3.triple")?;
    ensure(has(&r, "outcome = NOT_COMMENSURABLE") && r.exit == 1, || format!("{:?}", r.lines))?;
    ensure(has(&r, "cond.p_algebra = fail"), || "p_algebra did not fail".into())?;
    ensure(
        r.lines.iter().any(|l| l.starts_with("evidence.p_algebra = p=3 ")),
        || "no p-algebra witness at 3".into(),
    )
}

fn l2_degrees() -> Check {
    let k = load("deg7_k.field");
    ensure(k.signature() == (7, 0), || "field is not totally real".into())?;
    let extra: Vec<(u64, usize)> = [5u64, 7, 11]
        .iter()
        .map(|&p| (p, places_over(&k, p).unwrap()[0].ordinal))
        .collect();
    for m in 0..=3 {
        let g = GroupSpec::spin(3, 2, Some(vec![(3, 2); 7])).map_err(|e| e.to_string())?;
        let t = Triple::new(k.clone(), g, &extra[..m], Csp::Auto, BTreeMap::new()).map_err(|e| e.to_string())?;
        let prof = l2_profile(&t).map_err(|e| e.to_string())?;
        ensure(prof.degree == Some(21 + 2 * m), || format!("m = {m}: {:?}", prof.degree))?;
        ensure(prof.degree == Some(7 + 2 * t.s_size()), || format!("m = {m}: |S| = {}", t.s_size()))?;
    }
    for (name, want) in [("spin61_q2.triple", 6), ("spin52_q2.triple", 10)] {
        let prof = l2_profile(&files::load_triple(&data(name)).unwrap()).map_err(|e| e.to_string())?;
        ensure(prof.kind == L2Kind::Concentrated && prof.degree == Some(want), || format!("{name}: {prof:?}"))?;
    }
    for name in ["sl3_gauss.triple", "ex_i_k.triple", "ex_i_l.triple", "ex_i_l_no3.triple"] {
        let prof = l2_profile(&files::load_triple(&data(name)).unwrap()).map_err(|e| e.to_string())?;
        ensure(prof.kind == L2Kind::AllZero && prof.degree.is_none(), || format!("{name}: {prof:?}"))?;
    }
    Ok(())
}

fn gassmann_oracle() -> Check {
    let corpus = groups::small_groups(24);
    let counts: Vec<usize> = (1..=24).map(|n| corpus.iter().filter(|t| t.n == n).count()).collect();
    let known = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];
    ensure(counts == known, || format!("group counts {counts:?}"))?;
    let mut pairs = 0usize;
    for t in &corpus {
        let g = PermGroup::new(t.n, t.generators().iter().map(|&x| t.regular(x)).collect()).unwrap();
        let subs = t.subgroups();
        let types: Vec<Vec<Vec<usize>>> =
            subs.iter().map(|(s, _)| (0..t.n).map(|x| t.coset_cycle_type(*s, x)).collect()).collect();
        let gens: Vec<Vec<Perm>> = subs.iter().map(|(_, gs)| gs.iter().map(|&x| t.regular(x)).collect()).collect();
        for i in 0..subs.len() {
            for j in i..subs.len() {
                let oracle = types[i] == types[j];
                let res = gassmann_equal(&g, &gens[i], &gens[j]).map_err(|e| e.to_string())?;
                ensure(res.equal == oracle, || format!("order {} pair ({i},{j}) oracle {oracle}", t.n))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs > 10_000, || format!("only {pairs} pairs"))?;
    let gf = files::load_gassmann(&data("fano.gassmann")).unwrap();
    let g = PermGroup::new(gf.degree, gf.group.clone()).unwrap();
    ensure(g.order() == 168, || format!("order {}", g.order()))?;
    let (u, v) = (g.subgroup(&gf.u).unwrap(), g.subgroup(&gf.v).unwrap());
    ensure(u.order() == 24 && v.order() == 24, || "stabilizers are not index 7".into())?;
    ensure(
        u.elements().iter().all(|x| x.apply(0) == 0),
        || "U does not fix the point 1".into(),
    )?;
    let line = [0usize, 1, 3];
    ensure(
        v.elements().iter().all(|x| line.iter().all(|&a| line.contains(&x.apply(a)))),
        || "V does not fix the line {1,2,4}".into(),
    )?;
    ensure(gassmann_equal(&g, &gf.u, &gf.v).unwrap().equal, || "Fano pair not Gassmann".into())?;
    ensure(gassmann_implies_types(&g, &gf.u, &gf.v).unwrap(), || "Fano cycle types differ".into())
}

fn property_suites() -> Check {
    let fields = common::random_fields(20, 0x5eed);
    for k in &fields {
        let n = k.degree();
        for p in primes_up_to(50) {
            let fast = decompose(k, p).map_err(|e| e.to_string())?;
            let slow = decompose_via_algebra(k, p).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("{}: paths differ at {p}", k.poly()))?;
            ensure(fast.total() == n, || format!("{}: sum ef != n at {p}", k.poly()))?;
            let divides = (k.field_disc() % BigInt::from(p)) == BigInt::from(0);
            ensure(fast.is_ramified() == divides, || format!("{}: ramification at {p}", k.poly()))?;
        }
        let idx = k.index();
        ensure(k.field_disc() * &idx * &idx == *k.poly_disc(), || format!("{}: disc index", k.poly()))?;
    }
    for n in 1..=10 {
        for fs in common::partitions(n) {
            // the forward map, counted on an actual permutation of this type
            let mut cycles = Vec::new();
            let mut next = 0;
            for &f in &fs {
                cycles.push((next..next + f).collect::<Vec<_>>());
                next += f;
            }
            let g = Perm::from_cycles(n, &cycles).unwrap();
            let mut counts = BTreeMap::new();
            let mut power = Perm::identity(n);
            for s in 1..=n {
                power = g.compose(&power);
                counts.insert(s, (0..n).filter(|&i| power.apply(i) == i).count());
            }
            ensure(counts == fix_counts_of_cycle_type(&fs, n), || format!("forward map on {fs:?}"))?;
            let back = decomposition_from_frobenius(&counts, n).map_err(|e| e.to_string())?;
            ensure(back == fs, || format!("{fs:?} came back as {back:?}"))?;
        }
    }
    Ok(())
}

fn cli_commands() -> Vec<Vec<String>> {
    let d = |name: &str| data(name).display().to_string();
    let mut cmds: Vec<Vec<String>> = Vec::new();
    for f in ["x8_97.field", "x8_1552.field", "deg7_k.field", "deg7_l.field", "gauss.field"] {
        cmds.push(vec!["field".into(), d(f)]);
    }
    for (f, p) in [("x8_97.field", "2"), ("x8_1552.field", "2"), ("x8_97.field", "97")] {
        cmds.push(vec!["decompose".into(), d(f), p.into()]);
    }
    cmds.push(vec!["equiv".into(), d("deg7_k.field"), d("deg7_l.field")]);
    cmds.push(vec!["equiv".into(), d("x8_3.field"), d("x8_48.field")]);
    cmds.push(vec!["equiv".into(), d("gauss.field"), d("minus2.field")]);
    for (a, b) in [
        ("ex_i_k.triple", "ex_i_l.triple"),
        ("x8_97.triple", "x8_1552.triple"),
        ("ex_i_k.triple", "ex_i_l_no3.triple"),
    ] {
        cmds.push(vec!["check".into(), d(a), d(b)]);
    }
    for t in ["spin61_q2.triple", "spin52_q2.triple", "sl3_gauss.triple"] {
        cmds.push(vec!["l2".into(), d(t)]);
    }
    cmds.push(vec!["gassmann".into(), d("fano.gassmann")]);
    cmds
}

fn determinism() -> Check {
    let bin = Path::new(env!("CARGO_BIN_EXE_arith-equiv"));
    for args in cli_commands() {
        let run = || Command::new(bin).args(&args).output().expect("binary runs");
        let (a, b) = (run(), run());
        ensure(!a.stdout.is_empty(), || format!("{args:?}: no output"))?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{args:?}: runs differ"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 9] = [
        ("discriminants", discriminants, 20),
        ("ramification vectors", ramification, 10),
        ("perlis certification", perlis, 60),
        ("example (i) sweep", example_i_sweep, 60),
        ("profinite verdicts", profinite_verdicts, 60),
        ("l2 degrees", l2_degrees, 1),
        ("gassmann oracle", gassmann_oracle, 120),
        ("property suites", property_suites, 300),
        ("determinism", determinism, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= Duration::from_secs(*budget), || format!("took {took:.1?}, budget {budget} s"))
        });
        match outcome {
            Ok(()) => println!("criterion {} {name}: PASS ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
