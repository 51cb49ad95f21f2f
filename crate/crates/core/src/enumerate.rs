//! Generation of complete sets of monotone, balanced monotone and unate functions.
//!
//! All three generators build `(n+1)`-variable functions as concatenations `g || h` of
//! `n`-variable ones. The pair loop runs over `g` in ascending order with `h` ascending
//! inside, so the emitted functions come out strictly increasing. Shards cover
//! consecutive ranges of `g`, which makes concatenating the shard outputs in order the
//! k-way merge of the shards.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::boolfn::{full_mask, BoolFn, Directions, Signature};
use crate::property::Property;
use crate::transforms::KnownConstants;

/// Largest `n` each generator accepts without `allow_large`.
pub const MONOTONE_GUARD: usize = 6;
pub const BALANCED_MONOTONE_GUARD: usize = 6;
pub const UNATE_GUARD: usize = 5;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("n = {n} exceeds the resource guard for {what} (limit {limit}); pass allow_large to override")]
    ResourceLimit { what: &'static str, n: usize, limit: usize },
    #[error("{what} is not supported for n = {n}")]
    Unsupported { what: &'static str, n: usize },
    #[error("the weight-bucket method needs the complete set of monotone functions, got {0}")]
    IncompleteInput(String),
    #[error(transparent)]
    Store(#[from] crate::store::StoreError),
}

/// Where the members of a [`FunctionSet`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Generated,
    BruteForce,
    Loaded,
}

/// A strictly increasing list of `n`-variable functions all having `property`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSet {
    n: usize,
    items: Vec<BoolFn>,
    property: Property,
    nondegenerate: bool,
    origin: Origin,
}

impl FunctionSet {
    /// Wraps `items`, checking order, arity and the property of every member.
    pub fn new(
        n: usize,
        items: Vec<BoolFn>,
        property: Property,
        nondegenerate: bool,
        origin: Origin,
    ) -> Result<Self, String> {
        if let Some(bad) = items.iter().find(|f| f.n() != n) {
            return Err(format!("member {bad} does not have {n} variables"));
        }
        if let Some(w) = items.windows(2).find(|w| w[0] >= w[1]) {
            return Err(format!("members not strictly increasing at {}", w[1]));
        }
        if let Some(bad) = items.iter().find(|f| !property.holds(f) || (nondegenerate && !f.is_nondegenerate())) {
            return Err(format!("member {bad} is not {property}"));
        }
        Ok(Self { n, items, property, nondegenerate, origin })
    }

    pub(crate) fn from_sorted(
        n: usize,
        items: Vec<BoolFn>,
        property: Property,
        nondegenerate: bool,
        origin: Origin,
    ) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Self { n, items, property, nondegenerate, origin }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[BoolFn] {
        &self.items
    }

    pub fn into_items(self) -> Vec<BoolFn> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn property(&self) -> Property {
        self.property
    }

    pub fn nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn contains(&self, f: &BoolFn) -> bool {
        self.items.binary_search(f).is_ok()
    }

    /// Human-readable label such as `nd-BM`.
    pub fn label(&self) -> String {
        if self.nondegenerate {
            format!("nd-{}", self.property.symbol())
        } else {
            self.property.symbol().to_string()
        }
    }
}

/// A set split by weight: `buckets[w]` holds the members of weight `w`.
#[derive(Debug, Clone)]
pub struct WeightBuckets {
    pub n: usize,
    pub buckets: Vec<FunctionSet>,
}

impl WeightBuckets {
    pub fn sizes(&self) -> Vec<usize> {
        self.buckets.iter().map(|b| b.len()).collect()
    }

    pub fn is_palindromic(&self) -> bool {
        let s = self.sizes();
        s.iter().eq(s.iter().rev())
    }

    /// Number of pairs the bucket pairing visits: `sum_w |bucket w| * |bucket 2^n - w|`.
    pub fn pair_count(&self) -> u128 {
        let s = self.sizes();
        s.iter().zip(s.iter().rev()).map(|(&a, &b)| a as u128 * b as u128).sum()
    }
}

/// A unate function stored with its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFunction {
    pub function: BoolFn,
    pub sig: Signature,
    // Directions over index bits; both set where the function is degenerate.
    inc: u32,
    dec: u32,
}

impl SignedFunction {
    pub fn new(function: BoolFn) -> Option<Self> {
        let sig = function.signature().ok()?;
        let (inc, dec) = function.direction_masks();
        Some(Self { function, sig, inc, dec })
    }
}

/// All unate functions of `n` variables with signatures, in increasing order.
#[derive(Debug, Clone)]
pub struct UnateSet {
    pub n: usize,
    pub items: Vec<SignedFunction>,
}

impl UnateSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn to_function_set(&self) -> FunctionSet {
        let items = self.items.iter().map(|s| s.function.clone()).collect();
        FunctionSet::from_sorted(self.n, items, Property::Unate, false, Origin::Generated)
    }
}

/// Counters passed to a progress callback after each shard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Progress {
    pub pairs: u64,
    pub emitted: u64,
}

pub type ProgressFn<'a> = &'a (dyn Fn(Progress) + Sync);

#[derive(Clone, Copy, Default)]
pub struct EnumOptions<'a> {
    pub allow_large: bool,
    pub progress: Option<ProgressFn<'a>>,
}

impl<'a> EnumOptions<'a> {
    pub fn allow_large(mut self, yes: bool) -> Self {
        self.allow_large = yes;
        self
    }

    pub fn with_progress(mut self, f: ProgressFn<'a>) -> Self {
        self.progress = Some(f);
        self
    }
}

struct Tracker<'a> {
    pairs: AtomicU64,
    emitted: AtomicU64,
    callback: Option<ProgressFn<'a>>,
}

impl<'a> Tracker<'a> {
    fn new(callback: Option<ProgressFn<'a>>) -> Self {
        Self { pairs: AtomicU64::new(0), emitted: AtomicU64::new(0), callback }
    }

    fn record(&self, pairs: u64, emitted: u64) {
        let p = self.pairs.fetch_add(pairs, Ordering::Relaxed) + pairs;
        let e = self.emitted.fetch_add(emitted, Ordering::Relaxed) + emitted;
        if let Some(cb) = self.callback {
            cb(Progress { pairs: p, emitted: e });
        }
    }
}

fn shard_len(len: usize) -> usize {
    (len / (4 * rayon::current_num_threads()).max(1)).clamp(1, 4096)
}

fn guard(what: &'static str, n: usize, limit: usize, allow: bool) -> Result<(), EnumerateError> {
    if n > limit && !allow {
        Err(EnumerateError::ResourceLimit { what, n, limit })
    } else {
        Ok(())
    }
}

/// The two 0-variable monotone functions.
fn monotone_base() -> Vec<BoolFn> {
    vec![BoolFn::zero(0), BoolFn::one(0)]
}

/// One step of the monotone recursion: keeps `g || h` for every pair with `g <= h`.
///
/// Takes a complete set only; restricting to non-degenerate halves would miss functions
/// such as `0000 || 0001`.
pub fn extend_monotone(prev: &FunctionSet, opts: &EnumOptions) -> Result<FunctionSet, EnumerateError> {
    require_complete_monotone(prev)?;
    let tracker = Tracker::new(opts.progress);
    let items = monotone_step(prev.items(), &tracker);
    Ok(FunctionSet::from_sorted(prev.n + 1, items, Property::Monotone, false, Origin::Generated))
}

fn monotone_step(prev: &[BoolFn], tracker: &Tracker) -> Vec<BoolFn> {
    let shards: Vec<Vec<BoolFn>> = prev
        .par_chunks(shard_len(prev.len()))
        .enumerate()
        .map(|(c, gs)| {
            let base = c * shard_len(prev.len());
            let mut out = Vec::new();
            let mut pairs = 0u64;
            for (k, g) in gs.iter().enumerate() {
                // g <= h pointwise forces h >= g in the sort order
                let rest = &prev[base + k..];
                pairs += rest.len() as u64;
                out.extend(rest.iter().filter(|h| g.leq_unchecked(h)).map(|h| BoolFn::concat_unchecked(g, h)));
            }
            tracker.record(pairs, out.len() as u64);
            out
        })
        .collect();
    shards.concat()
}

/// All monotone functions of `n` variables.
pub fn enumerate_monotone(n: usize, opts: &EnumOptions) -> Result<FunctionSet, EnumerateError> {
    guard("monotone enumeration", n, MONOTONE_GUARD, opts.allow_large)?;
    // M_7 has about 2.4e12 members
    if n > 6 {
        return Err(EnumerateError::Unsupported { what: "monotone enumeration", n });
    }
    let tracker = Tracker::new(opts.progress);
    let mut level = monotone_base();
    for _ in 0..n {
        level = monotone_step(&level, &tracker);
    }
    Ok(FunctionSet::from_sorted(n, level, Property::Monotone, false, Origin::Generated))
}

/// Per-weight counts of monotone functions, computed without retaining level `n`.
pub fn count_monotone_by_weight(n: usize, opts: &EnumOptions) -> Result<Vec<u64>, EnumerateError> {
    guard("monotone counting", n, MONOTONE_GUARD, opts.allow_large)?;
    if n == 0 {
        return Ok(vec![1, 1]);
    }
    let prev = enumerate_monotone(n - 1, &EnumOptions { allow_large: true, progress: None })?;
    let prev = prev.items();
    let len = (1usize << n) + 1;
    let tracker = Tracker::new(opts.progress);
    let partial: Vec<Vec<u64>> = prev
        .par_chunks(shard_len(prev.len()))
        .enumerate()
        .map(|(c, gs)| {
            let base = c * shard_len(prev.len());
            let mut counts = vec![0u64; len];
            let mut emitted = 0u64;
            for (k, g) in gs.iter().enumerate() {
                let wg = g.weight() as usize;
                for h in &prev[base + k..] {
                    if g.leq_unchecked(h) {
                        counts[wg + h.weight() as usize] += 1;
                        emitted += 1;
                    }
                }
            }
            tracker.record(0, emitted);
            counts
        })
        .collect();
    Ok(sum_counts(partial, len))
}

fn sum_counts(partial: Vec<Vec<u64>>, len: usize) -> Vec<u64> {
    partial.into_iter().fold(vec![0u64; len], |mut acc, v| {
        acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        acc
    })
}

/// Balanced monotone functions of `n` variables, filtered from the complete monotone set.
///
/// `n = 7` is not materialized here; see [`stream_balanced_monotone`] and
/// [`count_balanced_monotone`].
pub fn enumerate_balanced_monotone(n: usize, opts: &EnumOptions) -> Result<FunctionSet, EnumerateError> {
    guard("balanced monotone enumeration", n, BALANCED_MONOTONE_GUARD, opts.allow_large)?;
    if n == 0 {
        return Ok(FunctionSet::from_sorted(0, Vec::new(), Property::BalancedMonotone, false, Origin::Generated));
    }
    if n > 6 {
        return Err(EnumerateError::Unsupported { what: "in-memory balanced monotone enumeration", n });
    }
    Ok(filter_balanced(&enumerate_monotone(n, &opts.allow_large(true))?))
}

fn require_complete_monotone(set: &FunctionSet) -> Result<(), EnumerateError> {
    let expected = KnownConstants::embedded().dedekind_u64(set.n);
    if set.property != Property::Monotone || set.nondegenerate || Some(set.len() as u64) != expected {
        return Err(EnumerateError::IncompleteInput(format!(
            "{} set of {} functions with n = {}",
            set.label(),
            set.len(),
            set.n
        )));
    }
    Ok(())
}

/// Weight-bucket pairing: emits every `(n+1)`-variable balanced monotone function
/// `g || h` with `wt(g) + wt(h) = 2^n` and `g <= h`, in increasing order.
///
/// The input must be the complete `n`-variable monotone set; a balanced monotone set is
/// rejected, since its concatenations do not cover all monotone functions.
pub fn stream_balanced_monotone<F>(
    monotone: &FunctionSet,
    opts: &EnumOptions,
    mut sink: F,
) -> Result<u64, EnumerateError>
where
    F: FnMut(&[BoolFn]) -> Result<(), EnumerateError>,
{
    require_complete_monotone(monotone)?;
    let buckets = bucket_by_weight(monotone);
    let full = 1usize << monotone.n;
    let tracker = Tracker::new(opts.progress);
    let items = monotone.items();
    let mut total = 0u64;
    // Bounded batches keep per-shard buffers small while the sink consumes in order.
    for batch in items.chunks(64 * shard_len(items.len()).max(1)) {
        let shards: Vec<Vec<BoolFn>> = batch
            .par_chunks(shard_len(batch.len()))
            .map(|gs| {
                let mut out = Vec::new();
                let mut pairs = 0u64;
                for g in gs {
                    let partner = buckets.buckets[full - g.weight() as usize].items();
                    pairs += partner.len() as u64;
                    out.extend(partner.iter().filter(|h| g.leq_unchecked(h)).map(|h| BoolFn::concat_unchecked(g, h)));
                }
                tracker.record(pairs, out.len() as u64);
                out
            })
            .collect();
        for shard in shards {
            total += shard.len() as u64;
            sink(&shard)?;
        }
    }
    Ok(total)
}

/// Counting mode of the weight-bucket pairing; nothing is retained.
pub fn count_balanced_monotone(monotone: &FunctionSet, opts: &EnumOptions) -> Result<u64, EnumerateError> {
    require_complete_monotone(monotone)?;
    let buckets = bucket_by_weight(monotone);
    let full = 1usize << monotone.n;
    let tracker = Tracker::new(opts.progress);
    let items = monotone.items();
    Ok(items
        .par_chunks(shard_len(items.len()))
        .map(|gs| {
            let mut count = 0u64;
            let mut pairs = 0u64;
            for g in gs {
                let partner = buckets.buckets[full - g.weight() as usize].items();
                pairs += partner.len() as u64;
                count += partner.iter().filter(|h| g.leq_unchecked(h)).count() as u64;
            }
            tracker.record(pairs, count);
            count
        })
        .sum())
}

/// Materialized weight-bucket pairing, for inputs small enough to hold the result.
pub fn balanced_monotone_by_buckets(monotone: &FunctionSet, opts: &EnumOptions) -> Result<FunctionSet, EnumerateError> {
    let mut items = Vec::new();
    stream_balanced_monotone(monotone, opts, |chunk| {
        items.extend_from_slice(chunk);
        Ok(())
    })?;
    Ok(FunctionSet::from_sorted(monotone.n + 1, items, Property::BalancedMonotone, false, Origin::Generated))
}

fn unate_base() -> Vec<SignedFunction> {
    ["00", "01", "10", "11"].iter().map(|s| SignedFunction::new(s.parse().unwrap()).unwrap()).collect()
}

/// Combines two signed halves, returning `None` when `g || h` is not unate.
///
/// A pair is admitted when either half is constant, or when the per-variable direction
/// sets of `g` and `h` intersect and the halves are comparable. Degenerate variables
/// allow both directions, so a single stored direction bit is not enough to decide.
#[inline]
fn combine(g: &SignedFunction, h: &SignedFunction, n: usize) -> Option<SignedFunction> {
    let full = full_mask(n);
    let common_inc = g.inc & h.inc;
    let common_dec = g.dec & h.dec;
    let either_constant = g.sig.is_constant() || h.sig.is_constant();
    if !either_constant && (common_inc | common_dec) != full {
        return None;
    }
    let up = g.function.leq_unchecked(&h.function);
    let down = h.function.leq_unchecked(&g.function);
    if !either_constant && !up && !down {
        return None;
    }
    let function = BoolFn::concat_unchecked(&g.function, &h.function);
    let inc = common_inc | (up as u32) << n;
    let dec = common_dec | (down as u32) << n;
    let sig = match (g.sig, h.sig) {
        (Signature::Zero, Signature::Zero) => Signature::Zero,
        (Signature::One, Signature::One) => Signature::One,
        _ => Signature::Vec(Directions::new(n + 1, inc)),
    };
    Some(SignedFunction { function, sig, inc, dec })
}

fn unate_step(prev: &[SignedFunction], n: usize, tracker: &Tracker) -> Vec<SignedFunction> {
    let shards: Vec<Vec<SignedFunction>> = prev
        .par_chunks(shard_len(prev.len()))
        .map(|gs| {
            let mut out = Vec::new();
            for g in gs {
                out.extend(prev.iter().filter_map(|h| combine(g, h, n)));
            }
            tracker.record((gs.len() * prev.len()) as u64, out.len() as u64);
            out
        })
        .collect();
    let mut items = shards.concat();
    // distinct pairs give distinct strings; the dedup is kept as a guarantee
    items.dedup_by(|a, b| a.function == b.function);
    debug_assert!(items.windows(2).all(|w| w[0].function < w[1].function));
    items
}

/// All unate functions of `n` variables with their signatures.
pub fn enumerate_unate(n: usize, opts: &EnumOptions) -> Result<UnateSet, EnumerateError> {
    guard("unate enumeration", n, UNATE_GUARD, opts.allow_large)?;
    if n > 6 {
        return Err(EnumerateError::Unsupported { what: "unate enumeration", n });
    }
    let items = if n == 0 {
        vec![SignedFunction::new(BoolFn::zero(0)).unwrap(), SignedFunction::new(BoolFn::one(0)).unwrap()]
    } else {
        let tracker = Tracker::new(opts.progress);
        let mut level = unate_base();
        for m in 1..n {
            level = unate_step(&level, m, &tracker);
        }
        level
    };
    Ok(UnateSet { n, items })
}

/// Splits a set by weight, preserving order within each bucket.
pub fn bucket_by_weight(s: &FunctionSet) -> WeightBuckets {
    let full = 1usize << s.n;
    let mut parts: Vec<Vec<BoolFn>> = vec![Vec::new(); full + 1];
    for f in s.items() {
        parts[f.weight() as usize].push(f.clone());
    }
    let buckets = parts
        .into_iter()
        .map(|items| FunctionSet::from_sorted(s.n, items, s.property, s.nondegenerate, s.origin))
        .collect();
    WeightBuckets { n: s.n, buckets }
}

/// Members of weight `2^(n-1)`. Empty for `n = 0`.
pub fn filter_balanced(s: &FunctionSet) -> FunctionSet {
    let items = s.items().iter().filter(|f| f.is_balanced_or_false()).cloned().collect();
    FunctionSet::from_sorted(s.n, items, s.property.balanced(), s.nondegenerate, s.origin)
}

/// Members that depend on every variable.
pub fn filter_nondegenerate(s: &FunctionSet) -> FunctionSet {
    let items = s.items().iter().filter(|f| f.is_nondegenerate()).cloned().collect();
    FunctionSet::from_sorted(s.n, items, s.property, true, s.origin)
}
