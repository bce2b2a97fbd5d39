//! Exact search for the compositions of `n` maximizing `P(c)`, the
//! forbidden-pattern pruning rules, and per-`n` verification of the
//! classification and of the maximum value.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::closed_forms::theorem2_value;
use crate::composition::{enumerate_admissible, join_with_threes, predicted_maximal, Composition};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::fast::count_fast;
use crate::permutation::Oracle;

/// A certificate that a composition is not maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PruneRule {
    /// A lone part `>= 5`, a non-final part `>= 5`, or a final part `>= 4`.
    LargePart { index: usize, part: usize },
    /// Starts with `(2,2)`, `(2,3)` or `(2,4)` and continues.
    Head { pattern: Composition },
    /// Ends with `(2,1)`, `(3,1)` or `(4,1)` after a nonempty prefix.
    Tail { pattern: Composition },
    /// Contains `(2,4)` or `(4,2)` and is not exactly that pair.
    #[serde(rename = "INFIX_24_42")]
    Infix2442 { pattern: Composition, index: usize },
    /// Starts with `(4,4)` and continues.
    #[serde(rename = "HEAD_44")]
    Head44,
    /// Starts with one of the longer forbidden prefixes and continues.
    #[serde(rename = "HEAD2")]
    Head2 { pattern: Composition },
    /// Ends with one of the longer forbidden suffixes after a nonempty prefix.
    #[serde(rename = "TAIL2")]
    Tail2 { pattern: Composition },
    /// At least three parts and a 3-factorization factor outside the
    /// allowed shapes (`x_0 ∈ {ε,(4)}`, middle `∈ {ε,(2),(4)}`, last
    /// `∈ {ε,(2),(2,2)}`), or no part 3 at all.
    Factor { index: Option<usize>, factor: Option<Composition> },
    /// At least three parts and one of the five part-count restrictions
    /// on `4`s and `2`s fails.
    #[serde(rename = "COR62")]
    Cor62 { clause: u8 },
}

impl PruneRule {
    pub fn id(&self) -> &'static str {
        match self {
            PruneRule::LargePart { .. } => "LARGE_PART",
            PruneRule::Head { .. } => "HEAD",
            PruneRule::Tail { .. } => "TAIL",
            PruneRule::Infix2442 { .. } => "INFIX_24_42",
            PruneRule::Head44 => "HEAD_44",
            PruneRule::Head2 { .. } => "HEAD2",
            PruneRule::Tail2 { .. } => "TAIL2",
            PruneRule::Factor { .. } => "FACTOR",
            PruneRule::Cor62 { .. } => "COR62",
        }
    }
}

impl fmt::Display for PruneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

const HEADS: [&[usize]; 3] = [&[2, 2], &[2, 3], &[2, 4]];
const TAILS: [&[usize]; 3] = [&[2, 1], &[3, 1], &[4, 1]];
const HEADS2: [&[usize]; 4] = [&[4, 3, 2], &[4, 3, 4], &[3, 2, 3, 2], &[3, 3, 2, 3, 2]];
const TAILS2: [&[usize]; 4] = [&[2, 3, 3], &[4, 3, 3], &[2, 3, 2, 2], &[2, 3, 2, 3, 2]];

fn proper_prefix<'a>(parts: &[usize], pats: &[&'a [usize]]) -> Option<&'a [usize]> {
    pats.iter()
        .copied()
        .find(|p| parts.len() > p.len() && parts.starts_with(p))
}

fn proper_suffix<'a>(parts: &[usize], pats: &[&'a [usize]]) -> Option<&'a [usize]> {
    pats.iter()
        .copied()
        .find(|p| parts.len() > p.len() && parts.ends_with(p))
}

fn lit(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).expect("patterns have positive parts")
}

/// The first rule certifying that `c` is not maximal, if any.
pub fn prune(c: &Composition) -> Result<Option<PruneRule>> {
    if !c.is_admissible() {
        return Err(Error::Inadmissible(c.clone()));
    }
    let parts = c.parts();
    let k = parts.len();

    if k == 1 && parts[0] >= 5 {
        return Ok(Some(PruneRule::LargePart { index: 1, part: parts[0] }));
    }
    if k >= 2 {
        if let Some(i) = parts[..k - 1].iter().position(|&p| p >= 5) {
            return Ok(Some(PruneRule::LargePart { index: i + 1, part: parts[i] }));
        }
        if parts[k - 1] >= 4 {
            return Ok(Some(PruneRule::LargePart { index: k, part: parts[k - 1] }));
        }
    }
    if let Some(p) = proper_prefix(parts, &HEADS) {
        return Ok(Some(PruneRule::Head { pattern: lit(p) }));
    }
    if let Some(p) = proper_suffix(parts, &TAILS) {
        return Ok(Some(PruneRule::Tail { pattern: lit(p) }));
    }
    if k > 2 {
        if let Some(i) = parts.windows(2).position(|w| w == [2, 4] || w == [4, 2]) {
            return Ok(Some(PruneRule::Infix2442 { pattern: lit(&parts[i..i + 2]), index: i + 1 }));
        }
    }
    if k > 2 && parts.starts_with(&[4, 4]) {
        return Ok(Some(PruneRule::Head44));
    }
    if let Some(p) = proper_prefix(parts, &HEADS2) {
        return Ok(Some(PruneRule::Head2 { pattern: lit(p) }));
    }
    if let Some(p) = proper_suffix(parts, &TAILS2) {
        return Ok(Some(PruneRule::Tail2 { pattern: lit(p) }));
    }
    if k >= 3 {
        if let Some(rule) = factor_rule(c) {
            return Ok(Some(rule));
        }
        if let Some(clause) = cor62_clause(parts) {
            return Ok(Some(PruneRule::Cor62 { clause }));
        }
    }
    Ok(None)
}

fn factor_rule(c: &Composition) -> Option<PruneRule> {
    let f = c.three_factorization();
    let factors = f.factors();
    if f.k() == 0 {
        return Some(PruneRule::Factor { index: None, factor: None });
    }
    let k = f.k();
    let ok = |i: usize, x: &Composition| match (i, x.parts()) {
        (_, []) => true,
        (0, [4]) => true,
        (i, [2]) if i > 0 => true,
        (i, [4]) if i > 0 && i < k => true,
        (i, [2, 2]) if i == k => true,
        _ => false,
    };
    factors
        .iter()
        .enumerate()
        .find(|(i, x)| !ok(*i, x))
        .map(|(i, x)| PruneRule::Factor { index: Some(i), factor: Some(x.clone()) })
}

fn cor62_clause(parts: &[usize]) -> Option<u8> {
    let fours = parts.iter().filter(|&&p| p == 4).count();
    let twos = parts.iter().filter(|&&p| p == 2).count();
    let (first, last) = (parts[0], parts[parts.len() - 1]);
    if first == 3 && fours > 0 {
        return Some(1);
    }
    if first == 4 && fours > 1 {
        return Some(2);
    }
    if first == 3 && last == 3 && twos > 1 {
        return Some(3);
    }
    if first == 3 && last == 2 && twos > 2 {
        return Some(4);
    }
    if first == 4 && twos > 0 {
        // must be (4, 3^s, 2^t) with s >= 1 and 1 <= t <= 2
        let threes = parts[1..].iter().take_while(|&&p| p == 3).count();
        let rest = &parts[1 + threes..];
        let shaped = threes >= 1 && (1..=2).contains(&rest.len()) && rest.iter().all(|&p| p == 2);
        if !shaped {
            return Some(5);
        }
    }
    None
}

/// Whether the maximal-with-≥3-parts shape list admits `c`: `(3^ℓ)`,
/// `(4,3^ℓ)`, `(4,3^{ℓ-2},2)`, `(4,3^{ℓ-2},2,2)`, `(3^ℓ,2)`, `(3^ℓ,2,2)`
/// with `ℓ >= 2`, or `(3^s,2,3^t,2)` with `s >= 1`, `t >= 0`.
pub fn in_reformulated_family(c: &Composition) -> bool {
    let p = c.parts();
    let run3 = |s: &[usize]| s.iter().all(|&x| x == 3);
    let lead = p.iter().take_while(|&&x| x == 3).count();
    match p {
        [4, rest @ ..] => {
            let threes = rest.iter().take_while(|&&x| x == 3).count();
            let tail = &rest[threes..];
            (tail.is_empty() && threes >= 2) || tail == [2] || tail == [2, 2]
        }
        _ if run3(p) => lead >= 2,
        _ => {
            let tail = &p[lead..];
            if lead >= 2 && (tail == [2] || tail == [2, 2]) {
                return true;
            }
            if lead >= 1 && tail.len() >= 2 && tail[0] == 2 && tail[tail.len() - 1] == 2 {
                return run3(&tail[1..tail.len() - 1]);
            }
            false
        }
    }
}

/// Whether the search matched the predicted family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// `n < 6`: only the exact answer is reported.
    OutsideTheoremRange,
}

/// Best two-part composition, recorded alongside each report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPartOutcome {
    #[serde(serialize_with = "decimal")]
    pub best_value: BigCount,
    pub best: BTreeSet<Composition>,
    /// A two-part composition attains the overall maximum.
    pub attains_max: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub n: usize,
    #[serde(serialize_with = "decimal")]
    pub max_value: BigCount,
    pub argmax: BTreeSet<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<BTreeSet<Composition>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_decimal")]
    pub predicted_max: Option<BigCount>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_part: Option<TwoPartOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_counts")]
    pub counts: Option<Vec<(Composition, BigCount)>>,
}

impl MaximalityReport {
    /// Argmax and maximum both match the predictions (or `n < 6`).
    pub fn passes(&self) -> bool {
        match self.verdict {
            Verdict::Match => self.max_matches.unwrap_or(true),
            Verdict::OutsideTheoremRange => true,
            Verdict::Mismatch => false,
        }
    }
}

fn decimal<S: Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_decimal<S: Serializer>(v: &Option<BigCount>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

fn opt_counts<S: Serializer>(
    v: &Option<Vec<(Composition, BigCount)>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let entries = v.as_deref().unwrap_or_default();
    let mut map = s.serialize_map(Some(entries.len()))?;
    for (c, count) in entries {
        map.serialize_entry(&c.to_string(), &count.to_string())?;
    }
    map.end()
}

/// Memo of `P(c)`: concurrent reads, serialized writes.
#[derive(Debug, Default)]
pub struct CountCache {
    inner: RwLock<HashMap<Composition, BigCount>>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, c: &Composition) -> Option<BigCount> {
        self.inner.read().expect("cache lock poisoned").get(c).cloned()
    }

    pub fn insert(&self, c: Composition, v: BigCount) {
        self.inner.write().expect("cache lock poisoned").insert(c, v);
    }

    pub fn count(&self, c: &Composition) -> BigCount {
        if let Some(v) = self.get(c) {
            return v;
        }
        let v = count_fast(c);
        self.insert(c.clone(), v.clone());
        v
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of the entries, sorted by composition.
    pub fn entries(&self) -> Vec<(Composition, BigCount)> {
        let mut v: Vec<_> = self
            .inner
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|(c, n)| (c.clone(), n.clone()))
            .collect();
        v.sort();
        v
    }
}

/// Pruning bookkeeping; kept out of the report so that pruned and unpruned
/// runs produce identical reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneStats {
    pub pruned: usize,
    pub sampled: usize,
    /// Pruned compositions whose count reached the maximum.
    pub violations: Vec<Composition>,
}

#[derive(Debug)]
pub struct Engine {
    cache: CountCache,
    /// Every `stride`-th pruned composition is still counted to confirm it loses.
    pub prune_sample_stride: usize,
    /// Compare every count against the brute-force oracle for `n <= 9`.
    pub oracle_cross_check: bool,
    /// Include per-composition counts in reports.
    pub dump_counts: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            cache: CountCache::new(),
            prune_sample_stride: 4,
            oracle_cross_check: false,
            dump_counts: false,
        }
    }
}

const ORACLE_CROSS_CHECK_MAX: usize = 9;

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: CountCache) -> Self {
        Engine { cache, ..Self::default() }
    }

    pub fn prune_sample_stride(mut self, stride: usize) -> Self {
        self.prune_sample_stride = stride;
        self
    }

    pub fn oracle_cross_check(mut self, on: bool) -> Self {
        self.oracle_cross_check = on;
        self
    }

    pub fn dump_counts(mut self, on: bool) -> Self {
        self.dump_counts = on;
        self
    }

    pub fn cache(&self) -> &CountCache {
        &self.cache
    }

    fn counts(&self, cs: &[Composition]) -> Vec<BigCount> {
        cs.par_iter().map(|c| self.cache.count(c)).collect()
    }

    pub fn exact_maximal(&self, n: usize, use_pruning: bool) -> Result<MaximalityReport> {
        self.exact_maximal_with_stats(n, use_pruning).map(|(r, _)| r)
    }

    pub fn exact_maximal_with_stats(
        &self,
        n: usize,
        use_pruning: bool,
    ) -> Result<(MaximalityReport, PruneStats)> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let all: Vec<Composition> = enumerate_admissible(n).collect();
        let (mut racing, mut pruned) = (Vec::new(), Vec::new());
        for c in &all {
            if use_pruning && prune(c)?.is_some() {
                pruned.push(c.clone());
            } else {
                racing.push(c.clone());
            }
        }
        let counts = self.counts(&racing);
        if self.oracle_cross_check && n <= ORACLE_CROSS_CHECK_MAX {
            let hist = Oracle::with_limit(ORACLE_CROSS_CHECK_MAX).histogram(n)?;
            for (c, v) in racing.iter().zip(&counts) {
                let want = hist.get(c).cloned().unwrap_or_default();
                if *v != want {
                    return Err(Error::Construction(format!(
                        "dynamic program gives P({c}) = {v}, listing gives {want}"
                    )));
                }
            }
        }
        let max_value = counts.iter().max().cloned().unwrap_or_default();
        let argmax: BTreeSet<Composition> = racing
            .iter()
            .zip(&counts)
            .filter(|(_, v)| **v == max_value)
            .map(|(c, _)| c.clone())
            .collect();

        let stride = self.prune_sample_stride.max(1);
        let sample: Vec<Composition> = pruned.iter().step_by(stride).cloned().collect();
        let sample_counts = self.counts(&sample);
        let stats = PruneStats {
            pruned: pruned.len(),
            sampled: sample.len(),
            violations: sample
                .iter()
                .zip(&sample_counts)
                .filter(|(_, v)| **v >= max_value)
                .map(|(c, _)| c.clone())
                .collect(),
        };

        let two_part = self.two_part_outcome(n, &max_value);
        let (predicted, predicted_max, verdict, max_matches) = if n >= 6 {
            let predicted = predicted_maximal(n)?;
            let predicted_max = theorem2_value(n)?;
            let verdict = if argmax == predicted { Verdict::Match } else { Verdict::Mismatch };
            let matches = predicted_max == max_value;
            (Some(predicted), Some(predicted_max), verdict, Some(matches))
        } else {
            (None, None, Verdict::OutsideTheoremRange, None)
        };
        let counts = self.dump_counts.then(|| {
            let mut full: Vec<_> = all.iter().map(|c| (c.clone(), self.cache.count(c))).collect();
            full.sort();
            full
        });
        let report = MaximalityReport {
            n,
            max_value,
            argmax,
            predicted,
            predicted_max,
            verdict,
            max_matches,
            two_part,
            counts,
        };
        Ok((report, stats))
    }

    fn two_part_outcome(&self, n: usize, max_value: &BigCount) -> Option<TwoPartOutcome> {
        let two: Vec<Composition> = (2..n)
            .filter_map(|first| Composition::new(vec![first, n - first]).ok())
            .collect();
        if two.is_empty() {
            return None;
        }
        let counts = self.counts(&two);
        let best_value = counts.iter().max().cloned().unwrap_or_default();
        let best = two
            .iter()
            .zip(&counts)
            .filter(|(_, v)| **v == best_value)
            .map(|(c, _)| c.clone())
            .collect();
        Some(TwoPartOutcome { attains_max: best_value == *max_value, best_value, best })
    }

    pub fn verify_theorems(&self, n_from: usize, n_to: usize) -> Result<Vec<MaximalityReport>> {
        if n_from < 6 || n_from > n_to {
            return Err(Error::Domain(format!(
                "verification range must satisfy 6 <= from <= to, got {n_from}..={n_to}"
            )));
        }
        (n_from..=n_to).map(|n| self.exact_maximal(n, false)).collect()
    }
}

/// Counts are unchanged by any reordering of the middle factors
/// `x_1 … x_{k-1}` of `x_0 ⊕ (3) ⊕ x_1 ⊕ … ⊕ (3) ⊕ x_k`.
pub fn invariance_check(factors: &[Composition], middle_order: &[usize]) -> Result<bool> {
    let k = factors.len().saturating_sub(1);
    if k == 0 || factors[k].is_empty() {
        return Err(Error::Domain("need at least two factors and a nonempty last factor".into()));
    }
    let middle = k - 1;
    let mut seen = vec![false; middle];
    if middle_order.len() != middle
        || middle_order.iter().any(|&i| i >= middle || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::Domain(format!(
            "middle order must be a permutation of 0..{middle}"
        )));
    }
    let mut reordered = Vec::with_capacity(factors.len());
    reordered.push(factors[0].clone());
    reordered.extend(middle_order.iter().map(|&i| factors[1 + i].clone()));
    reordered.push(factors[k].clone());
    Ok(count_fast(&join_with_threes(factors)) == count_fast(&join_with_threes(&reordered)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn prune_examples() {
        assert_eq!(prune(&c("3,5,2")).unwrap().unwrap().id(), "LARGE_PART");
        assert_eq!(
            prune(&c("2,3,3,2")).unwrap(),
            Some(PruneRule::Head { pattern: c("2,3") })
        );
        assert_eq!(prune(&c("3,3")).unwrap(), None);
        assert_eq!(prune(&c("5")).unwrap().unwrap().id(), "LARGE_PART");
        assert_eq!(prune(&c("4")).unwrap(), None);
        assert_eq!(prune(&c("3,3,4")).unwrap().unwrap().id(), "LARGE_PART");
        assert_eq!(prune(&c("3,3,2,1")).unwrap().unwrap().id(), "TAIL");
        assert_eq!(prune(&c("3,4,2,2")).unwrap().unwrap().id(), "INFIX_24_42");
        assert_eq!(prune(&c("4,4,3")).unwrap().unwrap().id(), "HEAD_44");
        assert_eq!(prune(&c("4,3,2,2")).unwrap().unwrap().id(), "HEAD2");
        assert_eq!(prune(&c("3,2,3,3")).unwrap().unwrap().id(), "TAIL2");
        assert_eq!(prune(&c("2,2")).unwrap(), None);
        assert!(prune(&c("1,2")).is_err());
    }

    #[test]
    fn predicted_members_survive_pruning() {
        for n in 6..=30 {
            for m in predicted_maximal(n).unwrap() {
                assert_eq!(prune(&m).unwrap(), None, "{m:?}");
                if m.len() >= 3 {
                    assert!(in_reformulated_family(&m), "{m:?}");
                }
            }
        }
    }

    #[test]
    fn reformulated_family_membership() {
        for s in ["3,3", "4,3,3", "4,3,2", "4,2", "4,3,2,2", "3,3,2", "3,3,2,2", "3,2,3,2", "3,2,2"] {
            assert!(in_reformulated_family(&c(s)), "{s}");
        }
        for s in ["3,2,3", "2,3,3", "4,4", "3,4,3", "3,2,2,2"] {
            assert!(!in_reformulated_family(&c(s)), "{s}");
        }
    }

    #[test]
    fn small_searches() {
        let e = Engine::new();
        let r = e.exact_maximal(6, false).unwrap();
        assert_eq!(r.argmax, [c("3,3"), c("4,2")].into_iter().collect());
        assert_eq!(r.max_value, BigCount::from(144u32));
        assert_eq!(r.verdict, Verdict::Match);
        let r = e.exact_maximal(5, false).unwrap();
        assert_eq!(r.argmax, [c("3,2")].into_iter().collect());
        assert_eq!(r.max_value, BigCount::from(40u32));
        assert_eq!(r.verdict, Verdict::OutsideTheoremRange);
        let r = e.exact_maximal(4, false).unwrap();
        assert_eq!(r.argmax, [c("4"), c("3,1"), c("2,2")].into_iter().collect());
        assert_eq!(r.max_value, BigCount::from(8u32));
        assert!(e.exact_maximal(0, false).is_err());
    }

    #[test]
    fn pruning_is_invisible() {
        let e = Engine { prune_sample_stride: 1, ..Engine::new() };
        for n in 4..=12 {
            let plain = e.exact_maximal(n, false).unwrap();
            let (pruned, stats) = e.exact_maximal_with_stats(n, true).unwrap();
            assert_eq!(plain, pruned, "n = {n}");
            assert!(stats.violations.is_empty(), "n = {n}: {:?}", stats.violations);
        }
    }

    #[test]
    fn argmax_shape_and_reversal_closure() {
        let e = Engine::new();
        for n in 4..=12 {
            let r = e.exact_maximal(n, false).unwrap();
            for m in &r.argmax {
                assert!(r.argmax.contains(&m.reverse_r().unwrap()), "n = {n}: {m:?}");
                if n >= 6 && m.len() >= 3 {
                    assert!(in_reformulated_family(m), "n = {n}: {m:?}");
                }
            }
        }
    }

    #[test]
    fn verify_small_range() {
        let e = Engine::new();
        let reports = e.verify_theorems(6, 10).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(MaximalityReport::passes));
        let r = e.verify_theorems(8, 8).unwrap();
        assert_eq!(r[0].max_value, BigCount::from(4480u32));
        let r = e.verify_theorems(10, 10).unwrap();
        assert_eq!(r[0].argmax, [c("3,2,3,2"), c("3,3,2,2")].into_iter().collect());
        assert!(e.verify_theorems(5, 8).is_err());
        assert!(e.verify_theorems(9, 8).is_err());
    }

    #[test]
    fn invariance_examples() {
        let e = Composition::empty();
        assert!(invariance_check(&[e.clone(), c("2"), c("4"), c("2")], &[1, 0]).unwrap());
        assert!(invariance_check(&[e.clone(), c("2"), c("2"), c("2")], &[1, 0]).unwrap());
        assert!(invariance_check(&[c("4"), c("2"), e.clone(), c("2,2")], &[1, 0]).unwrap());
        assert!(invariance_check(&[e.clone(), c("2"), e.clone()], &[0]).is_err());
        assert!(invariance_check(&[e.clone(), c("2"), c("4"), c("2")], &[0, 0]).is_err());
    }

    #[test]
    fn cache_is_shared() {
        let e = Engine::new();
        e.exact_maximal(7, false).unwrap();
        assert!(!e.cache().is_empty());
        let before = e.cache().len();
        e.exact_maximal(7, true).unwrap();
        assert_eq!(e.cache().len(), before);
    }

    #[test]
    fn report_serializes() {
        let e = Engine { dump_counts: true, ..Engine::new() };
        let r = e.exact_maximal(6, false).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["max_value"], "144");
        assert_eq!(json["argmax"], serde_json::json!(["3,3", "4,2"]));
        assert_eq!(json["verdict"], "match");
        assert_eq!(json["counts"]["3,3"], "144");
    }
}
