//! Equivalence under permutations of the input variables.
//!
//! A variable permutation `pi` induces the index permutation `pi*`: the bits of
//! `pi*(i)` read `(i_{pi(1)}, .., i_{pi(n)})`. The table of `f^pi` is then the table of
//! `f` reindexed by `pi*`. For tables of at most 64 bits the same reindexing is
//! compiled to a short sequence of delta swaps on the packed word.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boolfn::BoolFn;
use crate::enumerate::{FunctionSet, Origin};
use crate::property::Property;
use crate::store::{ExternalSorter, StoreError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("{0:?} is not a permutation of 0..{1}")]
    MalformedPermutation(Vec<usize>, usize),
    #[error("dimension mismatch: permutation over {expected} variables, function over {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Swap of two index bits inside a packed word: `t = ((w >> shift) ^ w) & mask`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DeltaSwap {
    mask: u64,
    shift: u32,
}

impl DeltaSwap {
    /// Exchanges index bits `a` and `b` (`a != b`, both below 6).
    fn between(a: usize, b: usize) -> Self {
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        let mask = (0..64u32).filter(|p| (p >> hi) & 1 == 0 && (p >> lo) & 1 == 1).fold(0u64, |m, p| m | 1 << p);
        Self { mask, shift: (1u32 << hi) - (1u32 << lo) }
    }

    #[inline(always)]
    fn apply(&self, w: u64) -> u64 {
        let t = ((w >> self.shift) ^ w) & self.mask;
        w ^ t ^ (t << self.shift)
    }
}

/// The table `P[i] = pi*(i)` of a variable permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct PermutationIndex {
    n: usize,
    perm: Vec<usize>,
    table: Vec<u32>,
    swaps: Vec<DeltaSwap>,
}

impl PermutationIndex {
    /// `perm[t]` is `pi(t+1) - 1`, i.e. variables are numbered from 0.
    pub fn new(perm: &[usize]) -> Result<Self, EquivError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(EquivError::MalformedPermutation(perm.to_vec(), n));
            }
        }
        let table = (0..1u32 << n)
            .map(|i| {
                (0..n).fold(0u32, |j, t| {
                    let bit = (i >> (n - 1 - perm[t])) & 1;
                    j | bit << (n - 1 - t)
                })
            })
            .collect();
        Ok(Self { n, perm: perm.to_vec(), table, swaps: compile_swaps(perm) })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(&(0..n).collect::<Vec<_>>()).expect("identity is a permutation")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// The index of `f^pi o sigma`, i.e. applying `self` and then `other`.
    pub fn then(&self, other: &PermutationIndex) -> Result<PermutationIndex, EquivError> {
        if self.n != other.n {
            return Err(EquivError::DimensionMismatch { expected: self.n, actual: other.n });
        }
        let perm: Vec<usize> = self.perm.iter().map(|&p| other.perm[p]).collect();
        PermutationIndex::new(&perm)
    }

    /// Table composition `R[i] = P[Q[i]]`.
    pub fn compose_tables(&self, other: &PermutationIndex) -> Vec<u32> {
        other.table.iter().map(|&q| self.table[q as usize]).collect()
    }

    /// `f^pi`: bit `i` of the result is bit `P[i]` of `f`.
    pub fn apply(&self, f: &BoolFn) -> Result<BoolFn, EquivError> {
        if f.n() != self.n {
            return Err(EquivError::DimensionMismatch { expected: self.n, actual: f.n() });
        }
        Ok(match f.word() {
            Some(w) => BoolFn::from_word(self.n, self.apply_word(w)).expect("n <= 6"),
            None => self.apply_by_table(f),
        })
    }

    /// Bit-by-bit reindexing through the table.
    pub fn apply_by_table(&self, f: &BoolFn) -> BoolFn {
        let bits: Vec<bool> = self.table.iter().map(|&p| f.bit(p as usize)).collect();
        BoolFn::from_bits(&bits).expect("same length")
    }

    /// Reindexes a packed table of at most 64 bits.
    #[inline]
    pub fn apply_word(&self, w: u64) -> u64 {
        self.swaps.iter().fold(w, |w, s| s.apply(w))
    }
}

impl fmt::Debug for PermutationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationIndex").field("perm", &self.perm).field("table", &self.table).finish()
    }
}

/// Writes `perm` as a product of transpositions, applied left to right.
fn compile_swaps(perm: &[usize]) -> Vec<DeltaSwap> {
    let n = perm.len();
    if n > 6 {
        return Vec::new();
    }
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    for t in 0..n {
        if p[t] != t {
            let u = (t + 1..n).find(|&u| p[u] == t).expect("permutation");
            p.swap(t, u);
            swaps.push(DeltaSwap::between(n - 1 - t, n - 1 - u));
        }
    }
    swaps
}

/// `f^pi` for the permutation behind `p`.
pub fn apply_perm(f: &BoolFn, p: &PermutationIndex) -> Result<BoolFn, EquivError> {
    p.apply(f)
}

/// All `n!` permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Index tables for every permutation of `n` variables, in lexicographic order of `pi`.
pub fn all_perm_indexes(n: usize) -> Vec<PermutationIndex> {
    permutations(n).iter().map(|p| PermutationIndex::new(p).unwrap()).collect()
}

/// Transpositions visiting all `n!` permutations (Heap's algorithm), for `n <= 6`.
fn heap_swaps(n: usize) -> &'static [DeltaSwap] {
    static CACHE: OnceLock<Vec<Vec<DeltaSwap>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        (0..=6)
            .map(|n| {
                let mut swaps = Vec::new();
                let mut c = vec![0usize; n];
                let mut i = 1;
                while i < n {
                    if c[i] < i {
                        let j = if i % 2 == 0 { 0 } else { c[i] };
                        swaps.push(DeltaSwap::between(j, i));
                        c[i] += 1;
                        i = 1;
                    } else {
                        c[i] = 0;
                        i += 1;
                    }
                }
                swaps
            })
            .collect()
    });
    &cache[n]
}

fn canonical_word(n: usize, w: u64) -> u64 {
    let mut cur = w;
    let mut best = w;
    for s in heap_swaps(n) {
        cur = s.apply(cur);
        best = best.min(cur);
    }
    best
}

/// The smallest table in the permutation orbit of `f`.
pub fn canonical_form(f: &BoolFn) -> BoolFn {
    match f.word() {
        Some(w) => BoolFn::from_word(f.n(), canonical_word(f.n(), w)).unwrap(),
        None => all_perm_indexes(f.n()).iter().map(|p| p.apply_by_table(f)).min().expect("at least the identity"),
    }
}

/// Class representatives of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub representatives: FunctionSet,
    pub class_count: u64,
    pub source_size: u64,
}

/// JSON sidecar written next to a representatives file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassSidecar {
    pub property: String,
    pub n: usize,
    pub class_count: u64,
    pub source_size: u64,
}

impl ClassCensus {
    pub fn sidecar(&self) -> ClassSidecar {
        ClassSidecar {
            property: self.representatives.label(),
            n: self.representatives.n(),
            class_count: self.class_count,
            source_size: self.source_size,
        }
    }
}

fn census(s: &FunctionSet, reps: Vec<BoolFn>) -> ClassCensus {
    let class_count = reps.len() as u64;
    ClassCensus {
        representatives: FunctionSet::from_sorted(s.n(), reps, s.property(), s.nondegenerate(), s.origin()),
        class_count,
        source_size: s.len() as u64,
    }
}

/// Growing-list filter: a function joins the representatives unless some `f^pi` is
/// already among them. The list stays sorted because the input is, so membership is a
/// binary search.
pub fn filter_classes(s: &FunctionSet) -> ClassCensus {
    let n = s.n();
    let indexes = all_perm_indexes(n);
    if n <= 6 {
        let mut reps: Vec<u64> = Vec::new();
        for f in s.items() {
            let w = f.word().unwrap();
            let last = reps.last().copied();
            let seen = last.is_some_and(|last| {
                indexes.iter().any(|p| {
                    let g = p.apply_word(w);
                    // everything in the list precedes f
                    g <= last && reps.binary_search(&g).is_ok()
                })
            });
            if !seen {
                reps.push(w);
            }
        }
        let reps = reps.into_iter().map(|w| BoolFn::from_word(n, w).unwrap()).collect();
        census(s, reps)
    } else {
        let mut reps: Vec<BoolFn> = Vec::new();
        for f in s.items() {
            let seen = indexes.iter().any(|p| reps.binary_search(&p.apply_by_table(f)).is_ok());
            if !seen {
                reps.push(f.clone());
            }
        }
        census(s, reps)
    }
}

/// Class count by distinct canonical forms; the representatives are the canonical forms.
pub fn class_census_by_canonical(s: &FunctionSet) -> ClassCensus {
    let mut forms: Vec<BoolFn> = s.items().par_iter().map(canonical_form).collect();
    forms.par_sort_unstable();
    forms.dedup();
    census(s, forms)
}

/// Number of distinct tables in the permutation orbit of an `n <= 6` table.
fn orbit_size(n: usize, w: u64) -> u64 {
    let mut seen = vec![w];
    let mut cur = w;
    for s in heap_swaps(n) {
        cur = s.apply(cur);
        seen.push(cur);
    }
    seen.sort_unstable();
    seen.dedup();
    seen.len() as u64
}

/// Unate classes for `n <= 6` without materializing the unate set.
///
/// Every unate function is `shift_a(g)` for a monotone `g`, and permuting the variables
/// moves the shifted ones to the front. So each class contains some `shift_a(g)` with
/// `a = 1..10..0`, and the canonical forms of those `(n+1)|M_n|` tables are exactly the
/// class representatives. `source_size` is the sum of orbit sizes, i.e. `|U_n|` (or its
/// balanced / non-degenerate part).
pub fn unate_classes_from_monotone(monotone: &FunctionSet, balanced: bool, nondegenerate: bool) -> ClassCensus {
    let n = monotone.n();
    assert!(n <= 6 && monotone.property() == Property::Monotone && !monotone.nondegenerate());
    let keep = |f: &BoolFn| (!balanced || f.is_balanced_or_false()) && (!nondegenerate || f.is_nondegenerate());
    let shifts: Vec<usize> = (0..=n).map(|k| ((1usize << k) - 1) << (n - k)).collect();
    let chunk = (monotone.len() / (8 * rayon::current_num_threads()).max(1)).max(1);
    let parts: Vec<Vec<u64>> = monotone
        .items()
        .par_chunks(chunk)
        .map(|gs| {
            let mut forms: Vec<u64> = gs
                .iter()
                .filter(|g| keep(g))
                .flat_map(|g| shifts.iter().map(move |&a| g.shift_index(a)))
                .map(|f| canonical_word(n, f.word().unwrap()))
                .collect();
            forms.sort_unstable();
            forms.dedup();
            forms
        })
        .collect();
    let mut forms = parts.concat();
    forms.par_sort_unstable();
    forms.dedup();
    let source_size = forms.par_iter().map(|&w| orbit_size(n, w)).sum();
    let reps: Vec<BoolFn> = forms.into_iter().map(|w| BoolFn::from_word(n, w).unwrap()).collect();
    let property = if balanced { Property::BalancedUnate } else { Property::Unate };
    let class_count = reps.len() as u64;
    ClassCensus {
        representatives: FunctionSet::from_sorted(n, reps, property, nondegenerate, Origin::Generated),
        class_count,
        source_size,
    }
}

/// Streaming variant for sets that do not fit in memory: canonical forms go through an
/// external sort and the distinct survivors are counted.
pub fn class_count_streaming<I>(n: usize, functions: I, sorter: ExternalSorter) -> Result<(u64, u64), StoreError>
where
    I: IntoIterator<Item = BoolFn>,
{
    let mut sorter = sorter;
    let mut source = 0u64;
    for f in functions {
        source += 1;
        sorter.push(&canonical_form(&f))?;
    }
    let mut classes = 0u64;
    sorter.finish(n, |_| {
        classes += 1;
        Ok(())
    })?;
    Ok((classes, source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_monotone, enumerate_unate, EnumOptions};

    fn f(s: &str) -> BoolFn {
        s.parse().unwrap()
    }

    #[test]
    fn unate_classes_via_monotone_shifts() {
        for n in 0..=5 {
            let m = enumerate_monotone(n, &EnumOptions::default()).unwrap();
            let u = enumerate_unate(n, &EnumOptions::default()).unwrap().to_function_set();
            let direct = class_census_by_canonical(&u);
            let via = unate_classes_from_monotone(&m, false, false);
            assert_eq!(via.representatives.items(), direct.representatives.items(), "n={n}");
            assert_eq!(via.source_size, u.len() as u64);
            let bu = crate::enumerate::filter_balanced(&u);
            let nd_bu = crate::enumerate::filter_nondegenerate(&bu);
            let via_bu = unate_classes_from_monotone(&m, true, true);
            assert_eq!(via_bu.class_count, class_census_by_canonical(&nd_bu).class_count);
            assert_eq!(via_bu.source_size, nd_bu.len() as u64);
        }
    }

    #[test]
    fn perm_index_examples() {
        assert_eq!(PermutationIndex::new(&[1, 0]).unwrap().table(), &[0, 2, 1, 3]);
        assert_eq!(PermutationIndex::identity(3).table(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        let cycle = PermutationIndex::new(&[1, 2, 0]).unwrap();
        let thrice = cycle.then(&cycle).unwrap().then(&cycle).unwrap();
        assert_eq!(thrice.table(), PermutationIndex::identity(3).table());
        assert!(PermutationIndex::new(&[0, 0]).is_err());
        assert!(PermutationIndex::new(&[0, 2]).is_err());
    }

    #[test]
    fn apply_examples() {
        let swap = PermutationIndex::new(&[1, 0]).unwrap();
        assert_eq!(apply_perm(&f("0010"), &swap).unwrap(), f("0100"));
        for p in all_perm_indexes(2) {
            assert_eq!(apply_perm(&f("0110"), &p).unwrap(), f("0110"));
        }
        let g = f("00010111");
        for p in all_perm_indexes(3) {
            assert_eq!(apply_perm(&g, &p).unwrap().weight(), 4);
        }
        assert!(apply_perm(&g, &swap).is_err());
    }

    #[test]
    fn apply_means_variable_substitution() {
        // f^pi(x_1..x_n) = f(x_pi(1)..x_pi(n))
        let g = f("0110100010010111");
        for p in all_perm_indexes(4) {
            let h = p.apply(&g).unwrap();
            for i in 0..16usize {
                let x: Vec<bool> = (0..4).map(|t| (i >> (3 - t)) & 1 == 1).collect();
                let y: Vec<bool> = p.perm().iter().map(|&s| x[s]).collect();
                assert_eq!(h.evaluate(&x).unwrap(), g.evaluate(&y).unwrap());
            }
        }
    }

    #[test]
    fn compiled_swaps_match_tables() {
        for n in 0..=6 {
            let words: Vec<u64> = (0..50u64).map(|k| k.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (k << 7)).collect();
            for p in all_perm_indexes(n).iter().step_by(7) {
                for &w in &words {
                    let g = BoolFn::from_word(n, w).unwrap();
                    assert_eq!(p.apply(&g).unwrap(), p.apply_by_table(&g));
                }
            }
        }
    }

    #[test]
    fn composition() {
        let idx = all_perm_indexes(3);
        for p in &idx {
            for q in &idx {
                let pq = p.then(q).unwrap();
                assert_eq!(pq.table(), p.compose_tables(q).as_slice());
                for w in 0..256u64 {
                    let g = BoolFn::from_word(3, w).unwrap();
                    let two = q.apply(&p.apply(&g).unwrap()).unwrap();
                    assert_eq!(two, pq.apply(&g).unwrap());
                }
            }
        }
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(heap_swaps(4).len(), 23);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&f("0100")), f("0010"));
        assert_eq!(canonical_form(&f("0110")), f("0110"));
        assert_eq!(canonical_form(&f("0101")), f("0011"));
    }

    #[test]
    fn canonical_is_orbit_min() {
        for w in 0..256u64 {
            let g = BoolFn::from_word(3, w).unwrap();
            let min = all_perm_indexes(3).iter().map(|p| p.apply_by_table(&g)).min().unwrap();
            assert_eq!(canonical_form(&g), min);
        }
    }

    #[test]
    fn class_filters_agree() {
        let o = EnumOptions::default();
        let u2 = enumerate_unate(2, &o).unwrap().to_function_set();
        assert_eq!(filter_classes(&u2).class_count, 10);
        let m3 = enumerate_monotone(3, &o).unwrap();
        assert_eq!(class_census_by_canonical(&m3).class_count, 10);
        let u4 = enumerate_unate(4, &o).unwrap().to_function_set();
        let a = filter_classes(&u4);
        let b = class_census_by_canonical(&u4);
        assert_eq!(a.class_count, 200);
        assert_eq!(a.representatives, b.representatives);
    }

    #[test]
    fn sidecar_json() {
        let m2 = enumerate_monotone(2, &EnumOptions::default()).unwrap();
        let c = filter_classes(&m2);
        let json = serde_json::to_string(&c.sidecar()).unwrap();
        assert_eq!(json, r#"{"property":"M","n":2,"classCount":5,"sourceSize":6}"#);
    }
}
