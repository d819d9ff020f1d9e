//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use loopforge::catalog::{
    chein_double, cml81_associative, cml81_nonassociative, cyclic, elementary_abelian, moufang_catalog, named,
    quaternion8, rajah_loop, rajah_semiauto, symmetric, u3_group,
};
use loopforge::census::{converse_census, ResultClass};
use loopforge::extension::{
    theorem2_isomorphism, verify_remark2, verify_theorem1, ExtensionError, ExtensionSpec, Hypothesis,
};
use loopforge::iso::{are_isomorphic, IsoOutcome};
use loopforge::morphisms::{
    classify, conjugation_map, enumerate_semiautomorphisms, inner_generators, inversion, MapKind, SemiAutOptions,
};
use loopforge::props::{exponent, is_commutative, is_group, is_moufang, MoufangMode};
use loopforge::scan::ScanPolicy;
use loopforge::subloop::{induced_table, is_normal, quotient, SubsetHandle};
use loopforge::{CayleyTable, Elem, LoopOps, Mapping};

type Verdict = Result<String, String>;

/// Id, name, time budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn full() -> ScanPolicy {
    ScanPolicy::with_cap(4096)
}

// Independent oracles -------------------------------------------------------

fn is_hom(t: &CayleyTable, f: &Mapping) -> Option<(Elem, Elem)> {
    let n = t.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| f.apply(t.mul(a, b)) != t.mul(f.apply(a), f.apply(b)))
}

fn is_anti(t: &CayleyTable, f: &Mapping) -> Option<(Elem, Elem)> {
    let n = t.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| f.apply(t.mul(a, b)) != t.mul(f.apply(b), f.apply(a)))
}

fn is_semi(t: &CayleyTable, f: &Mapping) -> bool {
    let n = t.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (fa, fb) = (f.apply(a), f.apply(b));
            f.apply(t.mul(t.mul(a, b), a)) == t.mul(t.mul(fa, fb), fa)
                && f.apply(t.mul(a, t.mul(b, a))) == t.mul(fa, t.mul(fb, fa))
        })
    })
}

fn associative(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z)))))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn semi_count_brute(t: &CayleyTable) -> (usize, usize, usize) {
    let (mut total, mut auto, mut anti) = (0, 0, 0);
    for p in permutations(t.order()) {
        let f = Mapping::new(p).unwrap();
        if is_semi(t, &f) {
            total += 1;
            auto += is_hom(t, &f).is_none() as usize;
            anti += is_anti(t, &f).is_none() as usize;
        }
    }
    (total, auto, anti)
}

/// `(a, b, c)` at `c·q² + b·q + a`, multiplied as upper unitriangular matrices.
fn heis(q: u64, x: usize) -> [u64; 3] {
    let x = x as u64;
    [x % q, (x / q) % q, x / (q * q)]
}

fn heis_mul(q: u64, x: [u64; 3], y: [u64; 3]) -> [u64; 3] {
    [(x[0] + y[0]) % q, (x[1] + y[1]) % q, (x[2] + y[2] + x[0] * y[1]) % q]
}

fn heis_index(q: u64, p: [u64; 3]) -> usize {
    (p[2] * q * q + p[1] * q + p[0]) as usize
}

// Criteria -------------------------------------------------------------------

fn c1_chein_equivalence() -> Verdict {
    let s3 = symmetric(3).unwrap();
    let g = ExtensionSpec::new(s3.clone(), 2, inversion(&s3)).map_err(|e| e.to_string())?.materialize().unwrap();
    let n = 6;
    let u = n; // (e, u)
    let xu = |x: Elem| g.mul(x, u);
    let inv = |x: Elem| s3.inverse(x);
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            ensure(g.mul(xu(x), y) == xu(s3.mul(x, inv(y))), || format!("(xu)y law fails at {x},{y}"))?;
            ensure(g.mul(x, xu(y)) == xu(s3.mul(y, x)), || format!("x(yu) law fails at {x},{y}"))?;
            ensure(g.mul(xu(x), xu(y)) == s3.mul(inv(y), x), || format!("(xu)(yu) law fails at {x},{y}"))?;
            checked += 3;
        }
    }
    let chein = chein_double(&s3).unwrap();
    match are_isomorphic(&g, &chein) {
        IsoOutcome::Isomorphic(m) => {
            ensure(is_hom_between(&g, &chein, &m), || "isomorphism witness does not verify".into())?;
            Ok(format!("{checked} law instances, isomorphic to chein_double(S3)"))
        }
        other => Err(format!("not isomorphic to chein_double(S3): {other:?}")),
    }
}

fn is_hom_between(a: &CayleyTable, b: &CayleyTable, m: &Mapping) -> bool {
    let n = a.order();
    (0..n).all(|x| (0..n).all(|y| m.apply(a.mul(x, y)) == b.mul(m.apply(x), m.apply(y))))
}

fn c2_moufang_profile() -> Verdict {
    let s3 = symmetric(3).unwrap();
    let g = ExtensionSpec::new(s3.clone(), 2, inversion(&s3)).unwrap().materialize().unwrap();
    let m = is_moufang(&g, MoufangMode::AllFour, &full()).map_err(|e| e.to_string())?;
    ensure(m.holds, || format!("Moufang fails at {:?}", m.witness))?;
    let grp = is_group(&g, &full()).unwrap();
    let [x, y, z] = grp.witness.ok_or("group check passed on a nonassociative loop")?;
    ensure(!grp.holds && g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)), || "bad associativity witness".into())?;
    Ok(format!("all four identities over 1728 triples; nonassociative at ({x},{y},{z})"))
}

fn c3_theorem1() -> Verdict {
    let s3 = symmetric(3).unwrap();
    let chein = chein_double(&s3).unwrap();
    let z4 = cyclic(4).unwrap();
    let z5 = cyclic(5).unwrap();
    let double = Mapping::from_fn(5, |x| (2 * x) % 5).unwrap();
    let z5z4 = ExtensionSpec::new(z5, 4, double).unwrap().materialize().unwrap();
    let cases: [(&str, &CayleyTable, SubsetHandle, Elem, u64); 3] = [
        ("chein(S3)", &chein, SubsetHandle::new(12, (0..6).collect()).unwrap(), 6, 144),
        ("Z4/{0,2}", &z4, SubsetHandle::new(4, vec![0, 2]).unwrap(), 1, 64),
        ("Z5xZ4", &z5z4, SubsetHandle::new(20, (0..5).collect()).unwrap(), 5, 400),
    ];
    let mut parts = Vec::new();
    for (name, g, n, u, pairs) in cases {
        let start = Instant::now();
        let r = verify_theorem1(g, &n, u, &full()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds, || format!("{name}: fails at {:?}", r.witness))?;
        ensure(r.pairs_checked == pairs, || format!("{name}: {} pairs, expected {pairs}", r.pairs_checked))?;
        ensure(start.elapsed() < Duration::from_secs(1), || format!("{name}: over 1 s"))?;
        parts.push(format!("{name} {pairs} pairs"));
    }
    Ok(parts.join(", "))
}

fn c4_group_criterion() -> Verdict {
    let bases: Vec<(String, CayleyTable)> = [("z5", cyclic(5)), ("z3", cyclic(3)), ("s3", symmetric(3))]
        .into_iter()
        .map(|(n, t)| (n.to_string(), t.unwrap()))
        .chain(std::iter::once(("q8".to_string(), quaternion8())))
        .collect();
    let census = converse_census(&bases, &[2, 4], SemiAutOptions::default(), &full()).map_err(|e| e.to_string())?;
    ensure(!census.rows.is_empty(), || "empty census".into())?;
    for r in &census.rows {
        let base = &bases.iter().find(|(n, _)| *n == r.base).unwrap().1;
        let predicted = associative(base) && is_hom(base, &r.action).is_none();
        let g = ExtensionSpec::new(base.clone(), r.h, r.action.clone()).unwrap().materialize().unwrap();
        let observed = associative(&g);
        ensure(r.result != ResultClass::Skipped, || format!("skipped row {} h={}", r.base, r.h))?;
        ensure((r.result == ResultClass::Group) == observed, || format!("{} h={} misclassified", r.base, r.h))?;
        ensure(observed == predicted, || {
            format!("{} h={} action {}: group={observed} prediction={predicted}", r.base, r.h, r.action)
        })?;
    }
    let count = |c| census.rows.iter().filter(|r| r.result == c).count();
    Ok(format!(
        "{} rows ({} GROUP, {} MOUFANG_NONASSOC, {} NON_MOUFANG), {} identity-moving in annex",
        census.rows.len(),
        count(ResultClass::Group),
        count(ResultClass::MoufangNonassoc),
        count(ResultClass::NonMoufang),
        census.annex.len()
    ))
}

/// Regression baseline for the semi-automorphism count of A4.
const A4_SEMIAUT_COUNT: usize = 48;

fn c5_semiaut() -> Verdict {
    let mut parts = Vec::new();
    for (name, t, expect) in
        [("Z2", cyclic(2).unwrap(), 2), ("Z3", cyclic(3).unwrap(), 2), ("S3", symmetric(3).unwrap(), 12)]
    {
        let g = enumerate_semiautomorphisms(&t, SemiAutOptions::default()).map_err(|e| e.to_string())?;
        let (brute, _, _) = semi_count_brute(&t);
        ensure(g.maps.len() == expect && brute == expect, || {
            format!("{name}: enumerated {} brute {brute} expected {expect}", g.maps.len())
        })?;
        parts.push(format!("{name}={expect}"));
    }
    let s3 = symmetric(3).unwrap();
    let g = enumerate_semiautomorphisms(&s3, SemiAutOptions::default()).unwrap();
    let kinds: Vec<MapKind> = g.maps.iter().map(|m| classify(&s3, m).unwrap().kind()).collect();
    let auto = kinds.iter().filter(|k| **k == MapKind::Auto).count();
    let anti = kinds.iter().filter(|k| **k == MapKind::Anti).count();
    let proper = kinds.iter().filter(|k| **k == MapKind::Proper).count();
    ensure((auto, anti, proper) == (6, 6, 0), || format!("S3 split {auto}/{anti}/{proper}"))?;
    let (_, b_auto, b_anti) = semi_count_brute(&s3);
    ensure((b_auto, b_anti) == (6, 6), || format!("S3 brute split {b_auto}/{b_anti}"))?;
    parts.push("S3 6 AUTO/6 ANTI/0 PROPER".into());

    let a4 = named("alt4").unwrap();
    let start = Instant::now();
    let g = enumerate_semiautomorphisms(&a4, SemiAutOptions::default()).map_err(|e| e.to_string())?;
    if start.elapsed() > Duration::from_secs(600) {
        return Ok(format!("{}; A4 SKIPPED-stretch", parts.join(", ")));
    }
    for m in &g.maps {
        ensure(is_hom(&a4, m).is_none() || is_anti(&a4, m).is_none(), || format!("A4 proper map {m}"))?;
    }
    ensure(g.maps.len() == A4_SEMIAUT_COUNT, || format!("A4 count {} (baseline {A4_SEMIAUT_COUNT})", g.maps.len()))?;
    parts.push(format!("A4={} all AUTO or ANTI", g.maps.len()));
    Ok(parts.join(", "))
}

fn c6_rajah() -> Verdict {
    let q = 11u64;
    let u3 = u3_group(q).unwrap().materialize().unwrap();
    ensure(u3.order() == 1331, || "U3(F11) order".into())?;
    for x in (0..1331).step_by(7) {
        for y in (0..1331).step_by(11) {
            ensure(u3.mul(x, y) == heis_index(q, heis_mul(q, heis(q, x), heis(q, y))), || "U3 product".into())?;
        }
    }
    let f = rajah_semiauto(q, 3).map_err(|e| e.to_string())?;
    // k = 3: k⁻¹ = 4, (k⁻² − k)/2 = 1
    for x in 0..1331 {
        let [a, b, c] = heis(q, x);
        let want = heis_index(q, [(4 * a) % q, (4 * b) % q, (3 * c + a * b) % q]);
        ensure(f.apply(x) == want, || format!("wrong image of {x}"))?;
    }
    ensure(f.apply(heis_index(q, [1, 1, 0])) == heis_index(q, [4, 4, 1]), || "(1,1,0) image".into())?;
    ensure(f.order() == 5, || format!("map order {}", f.order()))?;

    let class = classify(&u3, &f).map_err(|e| e.to_string())?;
    ensure(class.kind() == MapKind::Proper, || format!("classified {:?}", class.kind()))?;
    ensure(is_semi(&u3, &f), || "oracle semi scan fails".into())?;
    let (ha, hb) = class.hom_witness.ok_or("no homomorphism witness")?;
    let (aa, ab) = class.anti_witness.ok_or("no anti-homomorphism witness")?;
    ensure(f.apply(u3.mul(ha, hb)) != u3.mul(f.apply(ha), f.apply(hb)), || "bad hom witness".into())?;
    ensure(f.apply(u3.mul(aa, ab)) != u3.mul(f.apply(ab), f.apply(aa)), || "bad anti witness".into())?;

    let spec = rajah_loop(q, 3).map_err(|e| e.to_string())?;
    ensure(spec.order() == 6655, || format!("rajah loop order {}", spec.order()))?;
    let sampled = ScanPolicy::sampled(1_000_000, 0x5241_4a41);
    let m = is_moufang(&spec, MoufangMode::Single, &sampled).map_err(|e| e.to_string())?;
    ensure(m.holds, || format!("Moufang violation at {:?}", m.witness))?;
    let grp = is_group(&spec, &ScanPolicy::sampled(10_000, 1)).map_err(|e| e.to_string())?;
    let [x, y, z] = grp.witness.ok_or("no nonassociativity witness in 10^4 samples")?;
    ensure(spec.op(spec.op(x, y), z) != spec.op(x, spec.op(y, z)), || "bad nonassociativity witness".into())?;
    Ok(format!(
        "proper semi-automorphism (hom fails at ({ha},{hb}), anti at ({aa},{ab})); order 6655, 10^6 sampled triples Moufang, nonassociative at ({x},{y},{z})"
    ))
}

fn c7_cml81() -> Verdict {
    let non = cml81_nonassociative().map_err(|e| e.to_string())?;
    let assoc = cml81_associative().map_err(|e| e.to_string())?;
    let z3 = cyclic(3).unwrap();
    let z3cubed = elementary_abelian(3, 3).unwrap();
    for (name, t) in [("nonassociative", &non), ("associative", &assoc)] {
        ensure(t.order() == 81, || format!("{name}: order"))?;
        ensure(is_commutative(t).holds, || format!("{name}: not commutative"))?;
        ensure(is_moufang(t, MoufangMode::Single, &full()).unwrap().holds, || format!("{name}: not Moufang"))?;
        ensure(exponent(t).unwrap() == 3, || format!("{name}: exponent"))?;
        // x₁ = 0 is the first coordinate, i.e. index divisible by 3
        let n = SubsetHandle::new(81, (0..81).filter(|x| x % 3 == 0).collect()).unwrap();
        ensure(is_normal(t, &n).unwrap(), || format!("{name}: N not normal"))?;
        let nt = induced_table(t, &n).unwrap();
        ensure(are_isomorphic(&nt, &z3cubed).is_isomorphic(), || format!("{name}: N is not Z3^3"))?;
        let qt = quotient(t, &n).unwrap();
        ensure(are_isomorphic(&qt.table, &z3).is_isomorphic(), || format!("{name}: quotient is not Z3"))?;
        let u = 1;
        let conj = conjugation_map(t, u).unwrap();
        ensure(n.members().iter().all(|&x| conj.apply(x) == x), || format!("{name}: action not trivial"))?;
        match verify_theorem1(t, &n, u, &full()) {
            Err(ExtensionError::HypothesisViolation(Hypothesis::OrderDivisibleBy3)) => {}
            other => return Err(format!("{name}: theorem1 returned {other:?}")),
        }
    }
    ensure(!associative(&non) && associative(&assoc), || "associativity profile".into())?;
    match are_isomorphic(&non, &assoc) {
        IsoOutcome::NotIsomorphic(why) => Ok(format!(
            "both commutative, Moufang, exponent 3, N=Z3^3 normal, quotient Z3, trivial action; non-isomorphic ({why}); theorem1 rejects with order-divisible-by-3"
        )),
        other => Err(format!("expected non-isomorphic, got {other:?}")),
    }
}

fn c8_remark2() -> Verdict {
    let s3 = symmetric(3).unwrap();
    let loops = [
        ("S3", s3.clone()),
        ("M(S3,2)", chein_double(&s3).unwrap()),
        ("Q8", quaternion8()),
        ("cml81", cml81_nonassociative().unwrap()),
    ];
    let mut parts = Vec::new();
    for (name, t) in &loops {
        let r = verify_remark2(t, &full()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds, || format!("{name}: fails at {:?}", r.witness))?;
        let n = t.order() as u64;
        ensure(r.triples_checked == n * n * n, || format!("{name}: only {} triples", r.triples_checked))?;
        parts.push(format!("{name} {}", r.triples_checked));
    }
    Ok(parts.join(", "))
}

fn c9_theorem2() -> Verdict {
    let z5 = cyclic(5).unwrap();
    let double = Mapping::from_fn(5, |x| (2 * x) % 5).unwrap();
    let a = theorem2_isomorphism(&z5, 4, &double, 3, &Mapping::identity(5)).map_err(|e| e.to_string())?;
    ensure(a.f2 == double.power(3), || "Z5: f2 should be f1^3".into())?;
    ensure(is_hom_between(&a.first, &a.second, &a.psi), || "Z5: psi is not a homomorphism".into())?;

    let s3 = symmetric(3).unwrap();
    let beta = conjugation_map(&s3, 1).unwrap();
    ensure(!beta.is_identity() && is_hom(&s3, &beta).is_none(), || {
        "beta should be a nontrivial inner automorphism".into()
    })?;
    let b = theorem2_isomorphism(&s3, 2, &inversion(&s3), 1, &beta).map_err(|e| e.to_string())?;
    ensure(is_hom_between(&b.first, &b.second, &b.psi), || "S3: psi is not a homomorphism".into())?;
    Ok("Z5 h=4 alpha=3 and S3 h=2 inner beta: psi verified on all pairs".into())
}

fn c10_inner_maps() -> Verdict {
    let mut total = 0;
    let mut loops = 0;
    for t in moufang_catalog().into_iter().filter(|t| t.order() <= 81) {
        let gens = inner_generators(&t, &full()).map_err(|e| e.to_string())?;
        for g in &gens {
            ensure(is_semi(&t, &g.map), || format!("{:?}: {} is not semi", t.name(), g.label))?;
        }
        total += gens.len();
        loops += 1;
    }
    Ok(format!("{total} inner generators over {loops} loops"))
}

fn c11_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_loopforge");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |args: &[&str], threads: &str| {
        let out = Command::new(bin)
            .args(args)
            .current_dir(dir.path())
            .env("LOOPFORGE_THREADS", threads)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout, out.stderr)
    };
    let setup: &[&[&str]] = &[
        &["construct", "chein", "--base", "sym3", "--out", "m12.tbl"],
        &["construct", "sym", "3", "--out", "s3.tbl"],
        &["mapping", "inv", "--base", "s3.tbl", "--out", "inv.map"],
        &["construct", "rajah", "--q", "11", "--k", "3", "--out", "rajah.json"],
    ];
    for args in setup {
        let (code, _, err) = run(args, "0");
        ensure(code == Some(0), || format!("{args:?} failed: {}", String::from_utf8_lossy(&err)))?;
    }
    let commands: &[&[&str]] = &[
        &["construct", "semidirect", "--base", "s3.tbl", "--order", "2", "--action", "inv.map", "--materialize"],
        &["check", "m12.tbl", "--moufang", "--all-four", "--group", "--commutative", "--nucleus"],
        &["check", "cml81", "--moufang", "--group"],
        &["check", "rajah.json", "--moufang", "--group", "--sample", "50000", "--seed", "7"],
        &["semiaut", "chein:sym3", "--enumerate", "--classify"],
        &["verify", "theorem1", "--loop", "m12.tbl", "--normal", "members:0,1,2,3,4,5", "--u", "6"],
        &["verify", "remark2", "--loop", "cml81"],
        &["verify", "corollary", "--base", "s3", "--order", "2", "--f1", "inv", "--f2", "images:0,2,1,4,3,5"],
        &["census", "--bases", "s3,z5,q8,sym4", "--orders", "2,4", "--json"],
        &["census", "--bases", "s3,z5,q8", "--orders", "2,4"],
    ];
    for args in commands {
        let reference = run(args, "1");
        for threads in ["2", "4", "0"] {
            let other = run(args, threads);
            ensure(other == reference, || format!("{args:?} differs between 1 and {threads} threads"))?;
        }
    }
    Ok(format!("{} commands byte-identical under 1, 2, 4 and auto threads", commands.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "chein-equivalence", 1, c1_chein_equivalence),
        (2, "moufang-profile", 1, c2_moufang_profile),
        (3, "theorem1-verification", 3, c3_theorem1),
        (4, "group-criterion", 60, c4_group_criterion),
        (5, "semiaut-enumeration", 600, c5_semiaut),
        (6, "rajah-construction", 300, c6_rajah),
        (7, "order-81-necessity", 120, c7_cml81),
        (8, "remark2-sweep", 120, c8_remark2),
        (9, "theorem2", 1, c9_theorem2),
        (10, "inner-mappings", 120, c10_inner_maps),
        (11, "determinism", 600, c11_determinism),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, budget, f) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let verdict = match verdict {
            Ok(_) if secs > budget as f64 => Err(format!("took {secs:.2}s, budget {budget}s")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("criterion {id:>2} {name}: PASS [{secs:.2}s / {budget}s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} {name}: FAIL [{secs:.2}s / {budget}s] {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
