//! Exhaustive ground truth for small `n`.
//!
//! The census scans every truth table and classifies it with the predicates of
//! [`crate::boolfn`] only. [`verify_all`] then checks the generators, the count
//! transforms and the class filters against it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boolfn::BoolFn;
use crate::enumerate::{
    bucket_by_weight, enumerate_balanced_monotone, enumerate_monotone, enumerate_unate, filter_balanced,
    filter_nondegenerate, EnumOptions, EnumerateError, FunctionSet, Origin, UNATE_GUARD,
};
use crate::equiv::{class_census_by_canonical, filter_classes, unate_classes_from_monotone};
use crate::property::Property;
use crate::transforms::{
    all_function_counts, balanced_function_counts, balanced_unate_counts, binomial_transform,
    class_counts_from_nondegenerate, inverse_binomial_transform, nondegenerate_from_class_counts, unate_counts,
    CountSequence, KnownConstants, Label,
};

/// Largest `n` for the full census (with classes).
pub const ORACLE_MAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute-force census supports 0 <= n <= {ORACLE_MAX} (n = 5 counts-only with allow_large), got {0}")]
    OutOfRange(usize),
}

/// Counts of one `n`, keyed by count labels (`M`, `ndM`, ...) and class labels
/// (`clsM`, `ndClsM`, ...).
#[derive(Debug, Clone, Default)]
pub struct OracleCensus {
    pub n: usize,
    pub per_property: BTreeMap<Label, u64>,
    pub per_property_per_weight: BTreeMap<(Label, usize), u64>,
    pub class_counts: BTreeMap<Label, u64>,
    pub function_sets: Option<BTreeMap<Label, FunctionSet>>,
}

impl OracleCensus {
    pub fn count(&self, label: Label) -> u64 {
        self.per_property[&label]
    }

    pub fn weight_counts(&self, label: Label) -> Vec<u64> {
        (0..=1usize << self.n).map(|w| self.per_property_per_weight.get(&(label, w)).copied().unwrap_or(0)).collect()
    }

    pub fn classes(&self, label: Label) -> Option<u64> {
        self.class_counts.get(&label).copied()
    }

    pub fn set(&self, label: Label) -> Option<&FunctionSet> {
        self.function_sets.as_ref().and_then(|m| m.get(&label))
    }
}

const BALANCED: u8 = 1;
const MONOTONE: u8 = 2;
const UNATE: u8 = 4;
const NONDEGENERATE: u8 = 8;

fn classify(f: &BoolFn) -> u8 {
    let mut c = 0;
    if f.is_balanced_or_false() {
        c |= BALANCED;
    }
    if f.is_monotone() {
        c |= MONOTONE;
    }
    if f.is_unate() {
        c |= UNATE;
    }
    if f.is_nondegenerate() {
        c |= NONDEGENERATE;
    }
    c
}

fn has(property: Property, c: u8) -> bool {
    let need = match property {
        Property::All => 0,
        Property::Balanced => BALANCED,
        Property::Monotone => MONOTONE,
        Property::BalancedMonotone => BALANCED | MONOTONE,
        Property::Unate => UNATE,
        Property::BalancedUnate => BALANCED | UNATE,
    };
    c & need == need
}

/// Every count and class count for `n <= 4`, by scanning all `2^(2^n)` functions.
///
/// With `allow_large`, `n = 5` is accepted and only per-property counts are produced.
pub fn brute_force_census(n: usize, materialize: bool, allow_large: bool) -> Result<OracleCensus, OracleError> {
    if n > 5 || (n == 5 && !allow_large) {
        return Err(OracleError::OutOfRange(n));
    }
    let total = 1u64 << (1u32 << n);
    let mut census = OracleCensus { n, ..Default::default() };
    for p in Property::ALL {
        for nd in [false, true] {
            census.per_property.insert(Label::new(p, nd, false), 0);
        }
    }
    if n == 5 {
        // counts only; 2^32 tables are scanned in parallel chunks
        let partial: Vec<[u64; 16]> = (0..total)
            .into_par_iter()
            .fold(
                || [0u64; 16],
                |mut acc, w| {
                    let f = BoolFn::from_word(n, w).unwrap();
                    acc[classify(&f) as usize] += 1;
                    acc
                },
            )
            .collect();
        let mut tally = [0u64; 16];
        for p in partial {
            tally.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        }
        for (c, &k) in tally.iter().enumerate() {
            for p in Property::ALL {
                if has(p, c as u8) {
                    *census.per_property.get_mut(&Label::count(p)).unwrap() += k;
                    if c as u8 & NONDEGENERATE != 0 {
                        *census.per_property.get_mut(&Label::nd(p)).unwrap() += k;
                    }
                }
            }
        }
        return Ok(census);
    }

    let classes: Vec<u8> = (0..total).into_par_iter().map(|w| classify(&BoolFn::from_word(n, w).unwrap())).collect();
    let mut members: BTreeMap<Label, Vec<BoolFn>> = BTreeMap::new();
    for (w, &c) in classes.iter().enumerate() {
        let f = BoolFn::from_word(n, w as u64).unwrap();
        let weight = f.weight() as usize;
        for p in Property::ALL {
            if !has(p, c) {
                continue;
            }
            let mut labels = vec![Label::count(p)];
            if c & NONDEGENERATE != 0 {
                labels.push(Label::nd(p));
            }
            for label in labels {
                *census.per_property.get_mut(&label).unwrap() += 1;
                *census.per_property_per_weight.entry((label, weight)).or_insert(0) += 1;
                members.entry(label).or_default().push(f.clone());
            }
        }
    }
    let mut sets = BTreeMap::new();
    for p in Property::ALL {
        for nd in [false, true] {
            let label = Label::new(p, nd, false);
            let items = members.remove(&label).unwrap_or_default();
            // word order is table order, so the scan produced sorted lists
            let set = FunctionSet::new(n, items, p, nd, Origin::BruteForce).expect("oracle set is consistent");
            census.class_counts.insert(Label::new(p, nd, true), filter_classes(&set).class_count);
            sets.insert(label, set);
        }
    }
    if materialize {
        census.function_sets = Some(sets);
    }
    Ok(census)
}

/// Which path a verification row exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Enumerate,
    Transform,
    Equiv,
    Identity,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub category: Category,
    pub check: String,
    pub n: usize,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.rows.extend(other.rows);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn push(
        &mut self,
        category: Category,
        check: impl Into<String>,
        n: usize,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.rows.push(VerifyRow { category, check: check.into(), n, expected, actual, pass });
    }

    fn push_flag(&mut self, category: Category, check: impl Into<String>, n: usize, ok: bool) {
        self.push(category, check, n, "true", ok);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{} {:<10} n={} {:<40} expected {} got {}",
                if r.pass { "PASS" } else { "FAIL" },
                format!("{:?}", r.category).to_lowercase(),
                r.n,
                r.check,
                r.expected,
                r.actual
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.rows.len(), failed)
    }
}

fn seq_value(seq: &CountSequence, n: usize) -> String {
    seq.get(n).map(|v| v.to_string()).unwrap_or_else(|| "missing".into())
}

/// Compares the census for every `n <= n_max` against the generators (set equality),
/// the transforms fed from `constants` (count equality) and the class filters.
pub fn verify_all(n_max: usize, constants: &KnownConstants) -> Result<VerifyReport, OracleError> {
    if n_max > ORACLE_MAX {
        return Err(OracleError::OutOfRange(n_max));
    }
    let opts = EnumOptions::default();
    let mut report = VerifyReport::default();
    let censuses: Vec<OracleCensus> =
        (0..=n_max).map(|n| brute_force_census(n, true, false)).collect::<Result<_, _>>()?;
    let len = n_max + 1;

    let dedekind = constants.dedekind().truncated(len);
    let nd_m = inverse_binomial_transform(&dedekind);
    let unate = unate_counts(&dedekind);
    let bm_row = constants.row(Label::count(Property::BalancedMonotone)).map(|s| s.truncated(len));
    let bu = bm_row.as_ref().map(balanced_unate_counts);
    let nd_bm = bm_row.as_ref().map(inverse_binomial_transform);
    let all = all_function_counts(len);
    let bal = balanced_function_counts(len);
    let nd_all = inverse_binomial_transform(&all).expect("A_n is a census");
    let nd_bal = inverse_binomial_transform(&bal).expect("B_n is a census");

    for c in &censuses {
        let n = c.n;
        let set = |p: Property, nd: bool| c.set(Label::new(p, nd, false)).expect("materialized");

        // generators
        let m = enumerate_monotone(n, &opts).expect("within guard");
        let bm = enumerate_balanced_monotone(n, &opts).expect("within guard");
        let us = enumerate_unate(n, &opts).expect("within guard");
        let u = us.to_function_set();
        let bu_set = filter_balanced(&u);
        for (p, generated) in [
            (Property::Monotone, &m),
            (Property::BalancedMonotone, &bm),
            (Property::Unate, &u),
            (Property::BalancedUnate, &bu_set),
        ] {
            let oracle = set(p, false);
            report.push(Category::Enumerate, format!("{} set", p.symbol()), n, oracle.len(), generated.len());
            report.push_flag(
                Category::Enumerate,
                format!("{} set equality", p.symbol()),
                n,
                oracle.items() == generated.items(),
            );
            let nd = filter_nondegenerate(generated);
            let oracle_nd = set(p, true);
            report.push_flag(
                Category::Enumerate,
                format!("nd-{} set equality", p.symbol()),
                n,
                oracle_nd.items() == nd.items(),
            );
            // class counts on the generated sets
            for (label_nd, s) in [(false, generated), (true, &nd)] {
                let label = Label::new(p, label_nd, true);
                let filtered = filter_classes(s);
                let canonical = class_census_by_canonical(s);
                report.push(
                    Category::Equiv,
                    format!("{label} by filter"),
                    n,
                    c.classes(label).unwrap(),
                    filtered.class_count,
                );
                report.push(
                    Category::Equiv,
                    format!("{label} by canonical form"),
                    n,
                    filtered.class_count,
                    canonical.class_count,
                );
            }
        }
        report.push_flag(
            Category::Enumerate,
            "unate signatures revalidate",
            n,
            us.items.iter().all(|s| s.function.signature().ok().as_ref() == Some(&s.sig)),
        );

        // transforms
        let mut t = |label: Label, value: String| {
            report.push(Category::Transform, format!("{label} via transform"), n, c.count(label), value)
        };
        t(Label::count(Property::Monotone), seq_value(&dedekind, n));
        t(Label::nd(Property::Monotone), nd_m.as_ref().map(|s| seq_value(s, n)).unwrap_or_else(|e| e.to_string()));
        match &unate {
            Ok((u_seq, nd_u)) => {
                t(Label::count(Property::Unate), seq_value(u_seq, n));
                t(Label::nd(Property::Unate), seq_value(nd_u, n));
            }
            Err(e) => {
                t(Label::count(Property::Unate), e.to_string());
                t(Label::nd(Property::Unate), e.to_string());
            }
        }
        match (&bu, &nd_bm) {
            (Some(Ok((bu_seq, nd_bu))), Some(Ok(nd_bm))) => {
                t(Label::nd(Property::BalancedMonotone), seq_value(nd_bm, n));
                t(Label::count(Property::BalancedUnate), seq_value(bu_seq, n));
                t(Label::nd(Property::BalancedUnate), seq_value(nd_bu, n));
            }
            _ => t(Label::count(Property::BalancedUnate), "unavailable".into()),
        }
        t(Label::count(Property::All), seq_value(&all, n));
        t(Label::count(Property::Balanced), seq_value(&bal, n));
        t(Label::nd(Property::All), seq_value(&nd_all, n));
        t(Label::nd(Property::Balanced), seq_value(&nd_bal, n));

        // class counts: prefix sums of the monotone reference row, first differences
        let cls_m = constants
            .row(Label::nd_cls(Property::Monotone))
            .map(|s| class_counts_from_nondegenerate(&s.truncated(len)));
        report.push(
            Category::Transform,
            "clsM via prefix sums",
            n,
            c.classes(Label::cls(Property::Monotone)).unwrap(),
            cls_m.as_ref().map(|s| seq_value(s, n)).unwrap_or_else(|| "missing".into()),
        );
        for p in Property::ALL {
            let cls: Vec<u64> = censuses[..=n].iter().map(|k| k.classes(Label::cls(p)).unwrap()).collect();
            let nd = nondegenerate_from_class_counts(&CountSequence::from_u64(Label::cls(p), &cls));
            report.push(
                Category::Identity,
                format!("ndCls{} as first difference", p.symbol()),
                n,
                c.classes(Label::nd_cls(p)).unwrap(),
                nd.map(|s| seq_value(&s, n)).unwrap_or_else(|e| e.to_string()),
            );
        }

        // identities on oracle data
        for (u, m) in [(Property::Unate, Property::Monotone), (Property::BalancedUnate, Property::BalancedMonotone)] {
            report.push(
                Category::Identity,
                format!("nd{} = 2^n nd{}", u.symbol(), m.symbol()),
                n,
                c.count(Label::nd(u)),
                c.count(Label::nd(m)) << n,
            );
        }
        for p in [Property::Monotone, Property::Unate] {
            let w = c.weight_counts(Label::count(p));
            report.push_flag(
                Category::Identity,
                format!("{} weight symmetry", p.symbol()),
                n,
                w.iter().eq(w.iter().rev()),
            );
            let buckets = bucket_by_weight(set(p, false));
            let sizes: Vec<u64> = buckets.sizes().into_iter().map(|s| s as u64).collect();
            report.push(
                Category::Identity,
                format!("{} bucket sizes", p.symbol()),
                n,
                format!("{w:?}"),
                format!("{sizes:?}"),
            );
        }
        // binomial transform of oracle nd-counts gives the counts
        for p in Property::ALL {
            let nd: Vec<u64> = censuses[..=n].iter().map(|k| k.count(Label::nd(p))).collect();
            let total = binomial_transform(&CountSequence::from_u64(Label::nd(p), &nd));
            report.push(
                Category::Identity,
                format!("{} from nd{}", p.symbol(), p.symbol()),
                n,
                c.count(Label::count(p)),
                seq_value(&total, n),
            );
        }
    }

    // reference rows within the oracle range
    for c in &censuses {
        for row in &constants.tables {
            let Some(expected) = row.values.get(c.n) else { continue };
            let actual = if row.label.classes { c.classes(row.label) } else { c.per_property.get(&row.label).copied() };
            if let Some(actual) = actual {
                report.push(Category::Table, format!("{} reference row", row.label), c.n, expected, actual);
            }
        }
    }
    Ok(report)
}

/// Checks every embedded reference row reachable by the transform path:
/// Dedekind chain for `U`, the balanced monotone row for `BU`, prefix sums and first
/// differences for the class rows.
pub fn verify_tables(constants: &KnownConstants) -> VerifyReport {
    let mut report = VerifyReport::default();
    let table = |l: Label| constants.row(l);
    let mut compare = |label: Label, derived: Result<CountSequence, String>| {
        let Some(reference) = table(label) else { return };
        match derived {
            Ok(seq) => {
                for (n, v) in reference.values.iter().enumerate() {
                    report.push(Category::Table, format!("{label} reference row"), n, v, seq_value(&seq, n));
                }
            }
            Err(e) => report.push(Category::Table, format!("{label} reference row"), 0, "derivable", e),
        }
    };
    let dedekind = constants.dedekind();
    let unate = unate_counts(&dedekind).map_err(|e| e.to_string());
    compare(Label::count(Property::Unate), unate.clone().map(|u| u.0));
    compare(Label::nd(Property::Unate), unate.map(|u| u.1));
    if let Some(bm) = table(Label::count(Property::BalancedMonotone)) {
        compare(Label::nd(Property::BalancedMonotone), inverse_binomial_transform(&bm).map_err(|e| e.to_string()));
        let bu = balanced_unate_counts(&bm).map_err(|e| e.to_string());
        compare(Label::count(Property::BalancedUnate), bu.clone().map(|b| b.0));
        compare(Label::nd(Property::BalancedUnate), bu.map(|b| b.1));
    }
    for p in [Property::BalancedMonotone, Property::Unate, Property::BalancedUnate] {
        if let Some(cls) = table(Label::cls(p)) {
            compare(Label::nd_cls(p), nondegenerate_from_class_counts(&cls).map_err(|e| e.to_string()));
        }
        if let Some(nd) = table(Label::nd_cls(p)) {
            compare(Label::cls(p), Ok(class_counts_from_nondegenerate(&nd)));
        }
    }
    report
}

/// Enumeration-path rows beyond the oracle range: counts and class counts of the
/// generated sets at `n` (5 or 6) against the reference rows.
pub fn verify_enumeration(
    n: usize,
    constants: &KnownConstants,
    opts: &EnumOptions,
) -> Result<VerifyReport, EnumerateError> {
    let mut report = VerifyReport::default();
    let mut row = |label: Label, actual: u64, how: &str| {
        let expected = reference_value(constants, label, n).map(|v| v.to_string()).unwrap_or_else(|| "missing".into());
        report.push(Category::Table, format!("{label} {how} vs reference"), n, expected, actual);
    };
    let m = enumerate_monotone(n, opts)?;
    let nd_m = filter_nondegenerate(&m);
    row(Label::count(Property::Monotone), m.len() as u64, "enumerated");
    let bm = filter_balanced(&m);
    let nd_bm = filter_nondegenerate(&bm);
    row(Label::count(Property::BalancedMonotone), bm.len() as u64, "enumerated");
    row(Label::nd(Property::BalancedMonotone), nd_bm.len() as u64, "enumerated");
    for (label, set) in [
        (Label::cls(Property::Monotone), &m),
        (Label::nd_cls(Property::Monotone), &nd_m),
        (Label::cls(Property::BalancedMonotone), &bm),
        (Label::nd_cls(Property::BalancedMonotone), &nd_bm),
    ] {
        row(label, filter_classes(set).class_count, "by filter");
    }
    if n <= UNATE_GUARD || opts.allow_large {
        if n <= UNATE_GUARD {
            let u = enumerate_unate(n, opts)?.to_function_set();
            let bu = filter_balanced(&u);
            for (p, set) in [(Property::Unate, &u), (Property::BalancedUnate, &bu)] {
                let nd = filter_nondegenerate(set);
                row(Label::count(p), set.len() as u64, "enumerated");
                row(Label::nd(p), nd.len() as u64, "enumerated");
                row(Label::cls(p), filter_classes(set).class_count, "by filter");
                row(Label::nd_cls(p), filter_classes(&nd).class_count, "by filter");
            }
        }
        for (p, balanced) in [(Property::Unate, false), (Property::BalancedUnate, true)] {
            for nd in [false, true] {
                let census = unate_classes_from_monotone(&m, balanced, nd);
                row(Label::new(p, nd, true), census.class_count, "by monotone shifts");
                row(Label::new(p, nd, false), census.source_size, "by monotone shifts");
            }
        }
    }
    Ok(report)
}

/// Reference value for `label` at `n`; `clsM` is the prefix sum of the `ndClsM` row.
pub fn reference_value(constants: &KnownConstants, label: Label, n: usize) -> Option<BigUint> {
    if label == Label::cls(Property::Monotone) {
        let nd = constants.row(Label::nd_cls(Property::Monotone))?;
        return class_counts_from_nondegenerate(&nd).get(n).cloned();
    }
    constants.value(label, n).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbl(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn census_n2() {
        let c = brute_force_census(2, false, false).unwrap();
        assert_eq!(c.count(lbl("M")), 6);
        assert_eq!(c.count(lbl("U")), 14);
        assert_eq!(c.count(lbl("BM")), 2);
        assert_eq!(c.count(lbl("BU")), 4);
        assert_eq!(c.count(lbl("ndU")), 8);
        assert!(c.function_sets.is_none());
    }

    #[test]
    fn census_n3_classes() {
        let c = brute_force_census(3, false, false).unwrap();
        assert_eq!(c.classes(lbl("clsU")), Some(34));
        assert_eq!(c.classes(lbl("clsBU")), Some(6));
        assert_eq!(c.classes(lbl("clsBM")), Some(2));
    }

    #[test]
    fn census_n4() {
        let c = brute_force_census(4, true, false).unwrap();
        for (l, v) in [("M", 168), ("BM", 24), ("U", 2170), ("BU", 296)] {
            assert_eq!(c.count(lbl(l)), v, "{l}");
        }
        assert_eq!(c.classes(lbl("clsU")), Some(200));
        assert_eq!(c.classes(lbl("clsBU")), Some(24));
        assert_eq!(c.set(lbl("M")).unwrap().len(), 168);
    }

    #[test]
    fn census_n0_conventions() {
        let c = brute_force_census(0, false, false).unwrap();
        assert_eq!(c.count(lbl("M")), 2);
        assert_eq!(c.count(lbl("ndM")), 2);
        assert_eq!(c.count(lbl("BM")), 0);
        assert_eq!(c.classes(lbl("clsM")), Some(2));
        assert_eq!(c.classes(lbl("clsBU")), Some(0));
    }

    #[test]
    fn census_out_of_range() {
        assert_eq!(brute_force_census(5, false, false).unwrap_err(), OracleError::OutOfRange(5));
        assert!(brute_force_census(6, false, true).is_err());
        assert!(verify_all(5, KnownConstants::embedded()).is_err());
    }

    #[test]
    fn weight_sums_match_totals() {
        let c = brute_force_census(3, false, false).unwrap();
        for (&label, &count) in &c.per_property {
            assert_eq!(c.weight_counts(label).iter().sum::<u64>(), count, "{label}");
        }
        assert!(c.count(lbl("BM")) <= c.count(lbl("M")));
        assert!(c.count(lbl("ndBU")) <= c.count(lbl("BU")));
    }

    #[test]
    fn verify_n3_passes() {
        let report = verify_all(3, KnownConstants::embedded()).unwrap();
        assert!(report.all_pass(), "{report}");
        assert!(report.rows.len() > 100);
    }

    #[test]
    fn dedekind_fault_is_localized() {
        let mut k = KnownConstants::embedded().clone();
        k.dedekind.values[3] += 1u32;
        let report = verify_all(3, &k).unwrap();
        let failed: Vec<&VerifyRow> = report.failures().collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|r| r.category == Category::Transform), "{report}");
        assert!(failed.iter().any(|r| r.check == "M via transform" && r.n == 3));
    }

    #[test]
    fn enumeration_rows_n4() {
        let report = verify_enumeration(4, KnownConstants::embedded(), &EnumOptions::default()).unwrap();
        assert!(report.all_pass(), "{report}");
        assert_eq!(report.rows.len(), 3 + 4 + 8 + 8);
    }

    #[test]
    fn tables_consistent() {
        let report = verify_tables(KnownConstants::embedded());
        assert!(report.all_pass(), "{report}");
        let mut k = KnownConstants::embedded().clone();
        let row = k.tables.iter_mut().find(|r| r.label == lbl("BU")).unwrap();
        row.values[6] += 1u32;
        let bad = verify_tables(&k);
        let failed: Vec<_> = bad.failures().map(|r| (r.check.clone(), r.n)).collect();
        assert_eq!(failed, vec![("BU reference row".to_string(), 6)]);
    }
}
