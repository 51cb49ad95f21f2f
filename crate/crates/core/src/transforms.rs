//! Exact count algebra over big integers.
//!
//! Counts of a property `P` and of its non-degenerate members are related by the
//! binomial transform `P_n = sum_i C(n,i) nd-P_i`; class counts by prefix sums
//! `[P]_n = sum_i nd-[P]_i`. Non-degenerate unate counts are `2^n` times the
//! non-degenerate monotone counts, which yields every unate count from Dedekind numbers.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::property::Property;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{label}: entry {n} would be negative; the input is not a consistent census")]
    NegativeResult { label: Label, n: usize },
    #[error("{lhs}_{n} = {lhs_value} exceeds {factor}*{rhs}_{n} = {rhs_value}")]
    InequalityViolated { lhs: Label, rhs: Label, n: usize, factor: String, lhs_value: BigUint, rhs_value: BigUint },
    #[error("no known values for {label} at n = {n}")]
    Unavailable { label: Label, n: usize },
    #[error("invalid count label {0:?}")]
    BadLabel(String),
}

/// Which count a sequence holds, e.g. `ndM` or `clsBU`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub property: Property,
    pub nondegenerate: bool,
    pub classes: bool,
}

impl Label {
    pub const fn new(property: Property, nondegenerate: bool, classes: bool) -> Self {
        Self { property, nondegenerate, classes }
    }

    pub const fn count(property: Property) -> Self {
        Self::new(property, false, false)
    }

    pub const fn nd(property: Property) -> Self {
        Self::new(property, true, false)
    }

    pub const fn cls(property: Property) -> Self {
        Self::new(property, false, true)
    }

    pub const fn nd_cls(property: Property) -> Self {
        Self::new(property, true, true)
    }

    pub fn with_nondegenerate(self, nd: bool) -> Self {
        Self { nondegenerate: nd, ..self }
    }

    pub fn with_property(self, property: Property) -> Self {
        Self { property, ..self }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.property.symbol();
        match (self.nondegenerate, self.classes) {
            (false, false) => write!(f, "{p}"),
            (true, false) => write!(f, "nd{p}"),
            (false, true) => write!(f, "cls{p}"),
            (true, true) => write!(f, "ndCls{p}"),
        }
    }
}

impl FromStr for Label {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (nd, cls, rest) = if let Some(r) = s.strip_prefix("ndCls") {
            (true, true, r)
        } else if let Some(r) = s.strip_prefix("nd") {
            (true, false, r)
        } else if let Some(r) = s.strip_prefix("cls") {
            (false, true, r)
        } else {
            (false, false, s)
        };
        let property = Property::ALL
            .iter()
            .copied()
            .find(|p| p.symbol() == rest)
            .ok_or_else(|| TransformError::BadLabel(s.to_string()))?;
        Ok(Label::new(property, nd, cls))
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Big integers as JSON decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse::<BigUint>().map_err(serde::de::Error::custom)).collect()
    }
}

/// Counts indexed by `n` from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSequence {
    pub label: Label,
    #[serde(with = "decimal")]
    pub values: Vec<BigUint>,
}

impl CountSequence {
    pub fn new(label: Label, values: Vec<BigUint>) -> Self {
        Self { label, values }
    }

    pub fn from_u64(label: Label, values: &[u64]) -> Self {
        Self::new(label, values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn from_decimal(label: Label, values: &[&str]) -> Self {
        Self::new(label, values.iter().map(|v| v.parse().expect("decimal literal")).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn truncated(&self, len: usize) -> Self {
        Self::new(self.label, self.values.iter().take(len).cloned().collect())
    }

    /// `n,value` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serializes")
    }
}

/// Rows of Pascal's triangle `C(n, 0..=n)` for `n < len`.
fn pascal_rows(len: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(len);
    for n in 0..len {
        let mut row = vec![BigUint::one(); n + 1];
        if n > 0 {
            let prev = &rows[n - 1];
            for i in 1..n {
                row[i] = &prev[i - 1] + &prev[i];
            }
        }
        rows.push(row);
    }
    rows
}

fn total_label(l: Label) -> Label {
    l.with_nondegenerate(false)
}

/// `P_n = sum_i C(n,i) nd_i`.
pub fn binomial_transform(nd: &CountSequence) -> CountSequence {
    let rows = pascal_rows(nd.len());
    let values = rows.iter().map(|row| row.iter().zip(&nd.values).map(|(c, v)| c * v).sum()).collect();
    CountSequence::new(total_label(nd.label), values)
}

/// `nd_n = sum_i (-1)^(n-i) C(n,i) P_i`.
pub fn inverse_binomial_transform(p: &CountSequence) -> Result<CountSequence, TransformError> {
    let rows = pascal_rows(p.len());
    let label = p.label.with_nondegenerate(true);
    let mut values = Vec::with_capacity(p.len());
    for (n, row) in rows.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (i, (c, v)) in row.iter().zip(&p.values).enumerate() {
            let term = BigInt::from_biguint(Sign::Plus, c * v);
            if (n - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        values.push(acc.to_biguint().ok_or(TransformError::NegativeResult { label, n })?);
    }
    Ok(CountSequence::new(label, values))
}

fn times_power_of_two(seq: &CountSequence, label: Label) -> CountSequence {
    let values = seq.values.iter().enumerate().map(|(n, v)| v << n).collect();
    CountSequence::new(label, values)
}

/// `nd-U_n = 2^n nd-M_n`.
pub fn unate_from_monotone(nd_m: &CountSequence) -> CountSequence {
    times_power_of_two(nd_m, Label::nd(Property::Unate))
}

/// `nd-BU_n = 2^n nd-BM_n`.
pub fn balanced_unate_from_balanced_monotone(nd_bm: &CountSequence) -> CountSequence {
    times_power_of_two(nd_bm, Label::nd(Property::BalancedUnate))
}

/// `[P]_n = sum_{i <= n} nd-[P]_i`.
pub fn class_counts_from_nondegenerate(nd_cls: &CountSequence) -> CountSequence {
    let mut acc = BigUint::zero();
    let values = nd_cls
        .values
        .iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect();
    CountSequence::new(total_label(nd_cls.label), values)
}

/// `nd-[P]_n = [P]_n - [P]_{n-1}`.
pub fn nondegenerate_from_class_counts(cls: &CountSequence) -> Result<CountSequence, TransformError> {
    let label = cls.label.with_nondegenerate(true);
    let mut values = Vec::with_capacity(cls.len());
    let mut prev = BigUint::zero();
    for (n, v) in cls.values.iter().enumerate() {
        if *v < prev {
            return Err(TransformError::NegativeResult { label, n });
        }
        values.push(v - &prev);
        prev = v.clone();
    }
    Ok(CountSequence::new(label, values))
}

/// `[M]` from the embedded non-degenerate class counts.
pub fn monotone_class_counts(k: &KnownConstants) -> CountSequence {
    class_counts_from_nondegenerate(&k.row(Label::nd_cls(Property::Monotone)).expect("embedded"))
}

/// `(U, nd-U)` from Dedekind numbers: invert, scale by `2^n`, transform back.
pub fn unate_counts(dedekind: &CountSequence) -> Result<(CountSequence, CountSequence), TransformError> {
    let nd_m = inverse_binomial_transform(dedekind)?;
    let nd_u = unate_from_monotone(&nd_m);
    Ok((binomial_transform(&nd_u), nd_u))
}

/// `(BU, nd-BU)` from balanced monotone counts.
pub fn balanced_unate_counts(bm: &CountSequence) -> Result<(CountSequence, CountSequence), TransformError> {
    let nd_bm = inverse_binomial_transform(bm)?;
    let nd_bu = balanced_unate_from_balanced_monotone(&nd_bm);
    Ok((binomial_transform(&nd_bu), nd_bu))
}

/// `A_n = 2^(2^n)` for `n < len`.
pub fn all_function_counts(len: usize) -> CountSequence {
    let values = (0..len).map(|n| BigUint::one() << (1usize << n)).collect();
    CountSequence::new(Label::count(Property::All), values)
}

/// `B_n = C(2^n, 2^(n-1))`, with `B_0 = 0`.
pub fn balanced_function_counts(len: usize) -> CountSequence {
    let values = (0..len)
        .map(|n| {
            if n == 0 {
                return BigUint::zero();
            }
            let top = 1u64 << n;
            let k = top / 2;
            // C(top, k) by the multiplicative formula, exact at every step
            let mut c = BigUint::one();
            for i in 0..k {
                c = c * BigUint::from(top - i) / BigUint::from(i + 1);
            }
            c
        })
        .collect();
    CountSequence::new(Label::count(Property::Balanced), values)
}

/// One row of an inequality report: `lhs_n <= 2^n rhs_n` with the slack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub lhs: Label,
    pub rhs: Label,
    pub n: usize,
    #[serde(serialize_with = "big_as_str")]
    pub lhs_value: BigUint,
    #[serde(serialize_with = "big_as_str")]
    pub bound: BigUint,
    #[serde(serialize_with = "big_as_str")]
    pub slack: BigUint,
}

fn big_as_str<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
}

impl InequalityReport {
    pub fn rows_for(&self, lhs: Label) -> impl Iterator<Item = &InequalityRow> {
        self.rows.iter().filter(move |r| r.lhs == lhs)
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{}_{} = {} <= 2^{}*{}_{} = {} (slack {})",
                r.lhs, r.n, r.lhs_value, r.n, r.rhs, r.n, r.bound, r.slack
            )?;
        }
        Ok(())
    }
}

/// The unate-vs-monotone bounds, on counts and on class counts, all of the form
/// `X_n <= 2^n Y_n`.
pub fn inequality_pairs() -> Vec<(Label, Label)> {
    let mut pairs = Vec::new();
    for (u, m) in [(Property::Unate, Property::Monotone), (Property::BalancedUnate, Property::BalancedMonotone)] {
        for nd in [false, true] {
            for cls in [false, true] {
                pairs.push((Label::new(u, nd, cls), Label::new(m, nd, cls)));
            }
        }
    }
    pairs
}

/// Checks every bound whose two sides are present in `seqs`, over their common range.
pub fn check_inequalities(seqs: &[CountSequence]) -> Result<InequalityReport, TransformError> {
    let find = |l: Label| seqs.iter().find(|s| s.label == l);
    let mut report = InequalityReport::default();
    for (lhs, rhs) in inequality_pairs() {
        let (Some(a), Some(b)) = (find(lhs), find(rhs)) else { continue };
        for (n, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
            let bound = y << n;
            if *x > bound {
                return Err(TransformError::InequalityViolated {
                    lhs,
                    rhs,
                    n,
                    factor: format!("2^{n}"),
                    lhs_value: x.clone(),
                    rhs_value: bound,
                });
            }
            report.rows.push(InequalityRow { lhs, rhs, n, lhs_value: x.clone(), slack: &bound - x, bound });
        }
    }
    Ok(report)
}

/// A read-only reference row with a provenance note.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub label: Label,
    pub provenance: String,
    #[serde(with = "decimal")]
    pub values: Vec<BigUint>,
}

impl ConstantRow {
    pub fn sequence(&self) -> CountSequence {
        CountSequence::new(self.label, self.values.clone())
    }
}

/// Dedekind numbers and the reference census rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownConstants {
    pub dedekind: ConstantRow,
    pub tables: Vec<ConstantRow>,
}

const DEDEKIND: [&str; 10] = [
    "2",
    "3",
    "6",
    "20",
    "168",
    "7581",
    "7828354",
    "2414682040998",
    "56130437228687557907788",
    "286386577668298411128469151667598498812366",
];

fn row(label: &str, provenance: &str, values: &[&str]) -> ConstantRow {
    ConstantRow {
        label: label.parse().expect("label literal"),
        provenance: provenance.to_string(),
        values: values.iter().map(|v| v.parse().expect("decimal literal")).collect(),
    }
}

impl KnownConstants {
    /// The embedded reference values, built once.
    pub fn embedded() -> &'static KnownConstants {
        static K: OnceLock<KnownConstants> = OnceLock::new();
        K.get_or_init(Self::build)
    }

    fn build() -> KnownConstants {
        let census = "reference census";
        let tables = vec![
            row("BM", census, &["0", "1", "2", "4", "24", "621", "492288", "81203064840"]),
            row("ndBM", census, &["0", "1", "0", "1", "16", "526", "488866", "81199631130"]),
            row(
                "U",
                census,
                &[
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
                ],
            ),
            row(
                "ndU",
                census,
                &[
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
                ],
            ),
            row("BU", census, &["0", "2", "4", "14", "296", "18202", "31392428", "10393772159334"]),
            row("ndBU", census, &["0", "2", "0", "8", "256", "16832", "31287424", "10393552784640"]),
            row(
                "ndClsM",
                census,
                &[
                    "2",
                    "1",
                    "2",
                    "5",
                    "20",
                    "180",
                    "16143",
                    "489996795",
                    "1392195548399980210",
                    "789204635842035039135545297410259322",
                ],
            ),
            row("clsBM", census, &["0", "1", "1", "2", "4", "16", "951"]),
            row("ndClsBM", census, &["0", "1", "0", "1", "2", "12", "935"]),
            row("clsU", census, &["2", "4", "10", "34", "200", "3466", "829774"]),
            row("ndClsU", census, &["2", "2", "6", "24", "166", "3266", "826308"]),
            row("clsBU", census, &["0", "2", "2", "6", "24", "254", "50172"]),
            row("ndClsBU", census, &["0", "2", "0", "4", "18", "230", "49918"]),
        ];
        KnownConstants { dedekind: row("M", "Dedekind numbers, OEIS A000372", &DEDEKIND), tables }
    }

    pub fn dedekind(&self) -> CountSequence {
        self.dedekind.sequence()
    }

    pub fn dedekind_u64(&self, n: usize) -> Option<u64> {
        self.dedekind.values.get(n).and_then(|v| v.to_u64())
    }

    /// The reference row for `label`; `M` resolves to the Dedekind row.
    pub fn row(&self, label: Label) -> Option<CountSequence> {
        if label == self.dedekind.label {
            return Some(self.dedekind());
        }
        self.tables.iter().find(|r| r.label == label).map(|r| r.sequence())
    }

    pub fn value(&self, label: Label, n: usize) -> Result<BigUint, TransformError> {
        self.row(label).and_then(|s| s.get(n).cloned()).ok_or(TransformError::Unavailable { label, n })
    }
}
