//! Acceptance checks, one PASS/FAIL line each. Runs as a plain binary under `cargo test`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use bfcensus::boolfn::BoolFn;
use bfcensus::enumerate::{
    enumerate_balanced_monotone, enumerate_monotone, enumerate_unate, filter_balanced, filter_nondegenerate,
    EnumOptions, FunctionSet,
};
use bfcensus::equiv::{class_census_by_canonical, filter_classes};
use bfcensus::oracle::{brute_force_census, verify_all};
use bfcensus::property::Property;
use bfcensus::transforms::{
    balanced_unate_counts, binomial_transform, class_counts_from_nondegenerate, inverse_binomial_transform,
    nondegenerate_from_class_counts, unate_counts, CountSequence, KnownConstants, Label,
};
use num_bigint::BigUint;
use sha2::{Digest, Sha256};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decimal(values: &[&str]) -> Vec<BigUint> {
    values.iter().map(|v| v.parse().unwrap()).collect()
}

fn numbers(values: &[u64]) -> Vec<BigUint> {
    values.iter().map(|&v| BigUint::from(v)).collect()
}

fn opts() -> EnumOptions<'static> {
    EnumOptions::default()
}

fn monotone(n: usize) -> FunctionSet {
    enumerate_monotone(n, &opts()).unwrap()
}

fn unate(n: usize) -> FunctionSet {
    enumerate_unate(n, &opts()).unwrap().to_function_set()
}

fn oracle_equivalence() -> Outcome {
    let report = verify_all(4, KnownConstants::embedded()).map_err(|e| e.to_string())?;
    if let Some(r) = report.failures().next() {
        return Err(format!("{} n={} expected {} got {}", r.check, r.n, r.expected, r.actual));
    }
    let categories: BTreeSet<String> = report.rows.iter().map(|r| format!("{:?}", r.category)).collect();
    ensure(categories.len() == 5, || format!("missing categories: {categories:?}"))?;
    Ok(format!("{} checks over n = 0..4", report.rows.len()))
}

fn balanced_monotone_row() -> Outcome {
    let bm: Vec<u64> = (0..=6).map(|n| enumerate_balanced_monotone(n, &opts()).unwrap().len() as u64).collect();
    ensure(bm == [0, 1, 2, 4, 24, 621, 492288], || format!("BM = {bm:?}"))?;
    let nd = inverse_binomial_transform(&CountSequence::from_u64(Label::count(Property::BalancedMonotone), &bm))
        .map_err(|e| e.to_string())?;
    ensure(nd.values == numbers(&[0, 1, 0, 1, 16, 526, 488866]), || format!("ndBM = {:?}", nd.values))?;
    let filtered = filter_nondegenerate(&enumerate_balanced_monotone(6, &opts()).unwrap()).len();
    ensure(filtered == 488866, || format!("ndBM_6 by filter = {filtered}"))?;
    Ok("BM_0..6 and ndBM_0..6 exact".into())
}

const U: [&str; 10] = [
    "2",
    "4",
    "14",
    "104",
    "2170",
    "230540",
    "499596550",
    "309075799150640",
    "14369391928071394429416818",
    "146629927766168786368451678290041110762316052",
];

const ND_U: [&str; 10] = [
    "2",
    "2",
    "8",
    "72",
    "1824",
    "220608",
    "498243968",
    "309072306743552",
    "14369391925598802012151296",
    "146629927766168786239127150948525247729660416",
];

fn unate_chain() -> Outcome {
    let start = Instant::now();
    let (u, nd) = unate_counts(&KnownConstants::embedded().dedekind()).map_err(|e| e.to_string())?;
    ensure(u.values == decimal(&U), || format!("U = {:?}", u.values))?;
    ensure(nd.values == decimal(&ND_U), || format!("ndU = {:?}", nd.values))?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, || format!("took {elapsed:.2}s"))?;
    Ok(format!("U_0..9 and ndU_0..9 exact in {elapsed:.3}s"))
}

fn balanced_unate_chain() -> Outcome {
    let bm: Vec<u64> = (0..=6).map(|n| enumerate_balanced_monotone(n, &opts()).unwrap().len() as u64).collect();
    let (bu, nd) = balanced_unate_counts(&CountSequence::from_u64(Label::count(Property::BalancedMonotone), &bm))
        .map_err(|e| e.to_string())?;
    ensure(bu.values == numbers(&[0, 2, 4, 14, 296, 18202, 31392428]), || format!("BU = {:?}", bu.values))?;
    ensure(nd.values == numbers(&[0, 2, 0, 8, 256, 16832, 31287424]), || format!("ndBU = {:?}", nd.values))?;
    Ok("BU_0..6 and ndBU_0..6 exact from enumerated BM".into())
}

fn direct_unate() -> Outcome {
    for (n, expected) in U.iter().take(6).enumerate() {
        let u = enumerate_unate(n, &opts()).unwrap();
        let expected: u64 = expected.parse().unwrap();
        ensure(u.len() as u64 == expected, || format!("|U_{n}| = {}", u.len()))?;
        let bad = u.items.iter().find(|s| s.function.signature().ok() != Some(s.sig));
        ensure(bad.is_none(), || format!("signature of {} does not revalidate", bad.unwrap().function))?;
    }
    Ok("|U_0..5| exact, all signatures revalidate".into())
}

fn monotone_classes() -> Outcome {
    let nd_cls = KnownConstants::embedded().row(Label::nd_cls(Property::Monotone)).ok_or("no ndClsM row")?;
    ensure(nd_cls.len() == 10, || "ndClsM row must cover n = 0..9".into())?;
    let cls = class_counts_from_nondegenerate(&nd_cls);
    // A003182
    let reference = [2u64, 3, 5, 10, 30, 210, 16353];
    ensure(cls.values[..7] == numbers(&reference)[..], || format!("prefix sums {:?}", &cls.values[..7]))?;
    for (n, &want) in reference.iter().take(5).enumerate() {
        let c = brute_force_census(n, false, false).unwrap();
        let got = c.classes(Label::cls(Property::Monotone)).unwrap();
        ensure(got == want, || format!("oracle [M]_{n} = {got}"))?;
    }
    let start = Instant::now();
    for n in [5, 6] {
        let got = filter_classes(&monotone(n)).class_count;
        ensure(got == reference[n], || format!("filter [M]_{n} = {got}"))?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 600.0, || format!("filter runs took {elapsed:.0}s"))?;
    Ok(format!("[M]_0..6 agree, n = 5,6 filter runs {elapsed:.1}s"))
}

fn class_rows() -> Outcome {
    fn check(label: &str, sets: &[FunctionSet], expected: &[u64]) -> Result<(), String> {
        let cls: Vec<u64> = sets.iter().map(|s| filter_classes(s).class_count).collect();
        ensure(cls == expected, || format!("{label} = {cls:?}"))?;
        let nd_direct: Vec<u64> = sets.iter().map(|s| filter_classes(&filter_nondegenerate(s)).class_count).collect();
        let nd = nondegenerate_from_class_counts(&CountSequence::from_u64(Label::cls(Property::All), &cls))
            .map_err(|e| e.to_string())?;
        ensure(nd.values == numbers(&nd_direct), || format!("nd{label}: {:?} vs {nd_direct:?}", nd.values))
    }
    let bm: Vec<FunctionSet> = (0..=6).map(|n| enumerate_balanced_monotone(n, &opts()).unwrap()).collect();
    check("[BM]", &bm, &[0, 1, 1, 2, 4, 16, 951])?;
    let u: Vec<FunctionSet> = (0..=5).map(unate).collect();
    check("[U]", &u, &[2, 4, 10, 34, 200, 3466])?;
    let bu: Vec<FunctionSet> = u.iter().map(filter_balanced).collect();
    check("[BU]", &bu, &[0, 2, 2, 6, 24, 254])?;
    Ok("[BM]_0..6, [U]_0..5, [BU]_0..5 exact; nd rows match first differences".into())
}

fn property_suites() -> Outcome {
    for n in 0..=4 {
        let c = brute_force_census(n, false, false).unwrap();
        for p in [Property::Monotone, Property::Unate] {
            let w = c.weight_counts(Label::count(p));
            ensure(w.iter().eq(w.iter().rev()), || format!("{p} weights at n={n}: {w:?}"))?;
        }
        for (u, m) in [(Property::Unate, Property::Monotone), (Property::BalancedUnate, Property::BalancedMonotone)] {
            let (a, b) = (c.count(Label::nd(u)), c.count(Label::nd(m)));
            ensure(a == b << n, || format!("nd{u} = {a}, nd{m} = {b} at n={n}"))?;
        }

        // translates of distinct non-degenerate monotone functions are pairwise distinct
        let nd_m = filter_nondegenerate(&monotone(n));
        let mut orbit = BTreeSet::new();
        for f in nd_m.items() {
            for a in 0..1usize << n {
                ensure(orbit.insert(f.shift_index(a)), || format!("translate collision at n={n}: {f} by {a}"))?;
            }
        }

        let all: Vec<BoolFn> = (0..1u64 << (1u32 << n)).map(|w| BoolFn::from_word(n, w).unwrap()).collect();
        for f in &all {
            let ok = f.dual().is_unate() == f.is_unate()
                && f.negate().is_unate() == f.is_unate()
                && f.dual().is_monotone() == f.is_monotone()
                && f.dual().dual() == *f;
            ensure(ok, || format!("closure fails for {f}"))?;
        }
    }
    for name in ["M", "BM", "U", "BU"] {
        let label: Label = name.parse().unwrap();
        let seq = KnownConstants::embedded().row(label).ok_or("missing row")?;
        let round = binomial_transform(&inverse_binomial_transform(&seq).map_err(|e| e.to_string())?);
        ensure(round.values == seq.values, || format!("round trip of {name}"))?;
    }
    for n in 0..=5 {
        let (m, u) = (monotone(n), unate(n));
        for s in [filter_balanced(&m), m.clone(), filter_balanced(&u), u.clone()] {
            for s in [filter_nondegenerate(&s), s] {
                let (a, b) = (filter_classes(&s).class_count, class_census_by_canonical(&s).class_count);
                ensure(a == b, || format!("{} n={n}: filter {a}, canonical {b}", s.label()))?;
            }
        }
    }
    Ok("weight symmetry, nd identities, translate distinctness, closures, round trips, filter = canonical".into())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: &[&[&str]] = &[
        &["enumerate", "--class", "unate", "--n", "5", "--weights"],
        &["enumerate", "--class", "balanced-monotone", "--n", "6"],
        &["classes", "--class", "unate", "--n", "5", "--method", "both"],
        &["classes", "--class", "balanced-monotone", "--n", "6", "--nondegenerate"],
        &["count", "--class", "balanced-unate", "--n", "5", "--via", "enumerate", "--format", "json"],
        &["verify", "--n-max", "4", "--format", "json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut digests = BTreeSet::new();
        for threads in ["1", "2", "4"] {
            let out = dir.path().join(format!("run{i}-{threads}.fset"));
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_bfcensus"));
            cmd.args(["--threads", threads]).args(*args);
            let writes = matches!(args[0], "enumerate" | "classes");
            if writes {
                cmd.arg("--out").arg(&out);
            }
            let o = cmd.output().map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} exited with {}", o.status))?;
            let mut h = Sha256::new();
            h.update(&o.stdout);
            if writes {
                h.update(std::fs::read(&out).map_err(|e| e.to_string())?);
            }
            digests.insert(h.finalize().to_vec());
        }
        ensure(digests.len() == 1, || format!("{args:?} differs across thread counts"))?;
    }
    Ok(format!("{} commands byte-identical with 1, 2 and 4 threads", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence n <= 4", oracle_equivalence),
        ("balanced monotone counts n <= 6", balanced_monotone_row),
        ("unate counts n <= 9 by transform", unate_chain),
        ("balanced unate counts n <= 6 by transform", balanced_unate_chain),
        ("direct unate enumeration n <= 5", direct_unate),
        ("monotone class counts", monotone_classes),
        ("balanced monotone, unate, balanced unate class counts", class_rows),
        ("property suites", property_suites),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
