//! Brute-force ground truth over the symmetric group.
//!
//! Everything here works by listing actual permutations: a full
//! lexicographic scan of `S_n` for class sizes, and a prefix-pruned
//! depth-first walk (same lexicographic order) for listing the members of
//! one class `P(c)` together with their boundary letters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::{Composition, PeakSet};
use crate::count::BigCount;
use crate::error::{Error, Result};

/// A word of distinct positive integers; a permutation of `[n]` in the
/// standard case.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.contains(&0) {
            return Err(Error::InvalidPermutation("entries must be positive".into()));
        }
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPermutation(format!("entry {} repeated", w[0])));
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn into_word(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the word is a bijection on `[len]`.
    pub fn is_standard(&self) -> bool {
        let n = self.0.len() as u32;
        self.0.iter().all(|&x| x >= 1 && x <= n)
    }

    pub fn peak_set(&self) -> PeakSet {
        PeakSet::new(peak_positions(&self.0), self.0.len())
            .expect("peaks of a word are interior and never adjacent")
    }

    pub fn peak_composition(&self) -> Composition {
        self.peak_set().to_composition()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// 1-based positions `i` with `w[i-1] < w[i] > w[i+1]`.
pub fn peak_positions<T: Ord>(word: &[T]) -> Vec<usize> {
    word.windows(3)
        .enumerate()
        .filter(|(_, w)| w[0] < w[1] && w[1] > w[2])
        .map(|(i, _)| i + 2)
        .collect()
}

fn peak_mask(word: &[u32]) -> u64 {
    let mut mask = 0u64;
    for i in 1..word.len().saturating_sub(1) {
        if word[i - 1] < word[i] && word[i] > word[i + 1] {
            mask |= 1 << (i + 1);
        }
    }
    mask
}

fn mask_of(c: &Composition) -> Option<u64> {
    c.to_peak_set()
        .ok()
        .map(|s| s.positions().iter().fold(0u64, |m, &p| m | 1 << p))
}

/// The permutation of `[len]` order-isomorphic to `word`.
pub fn pattern_of(word: &[u32]) -> Result<Permutation> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_unstable_by_key(|&i| word[i]);
    if idx.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidPermutation("pattern_of needs distinct entries".into()));
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

/// In-place lexicographic successor; returns `false` (and leaves the slice
/// sorted ascending) after the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Square table indexed by `1 <= a, b <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountMatrix {
    n: usize,
    entries: Vec<BigCount>,
}

impl CountMatrix {
    pub fn zeros(n: usize) -> Self {
        CountMatrix { n, entries: vec![BigCount::default(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(a, b)`; zero outside `1..=n`.
    pub fn get(&self, a: usize, b: usize) -> BigCount {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return BigCount::default();
        }
        self.entries[(a - 1) * self.n + (b - 1)].clone()
    }

    fn bump(&mut self, a: usize, b: usize) {
        self.entries[(a - 1) * self.n + (b - 1)] += 1u32;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigCount]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// Column sums, `sum_a M[a][b]` for each `b`.
    pub fn column_sums(&self) -> Vec<BigCount> {
        (1..=self.n)
            .map(|b| (1..=self.n).map(|a| self.get(a, b)).sum())
            .collect()
    }
}

/// `(Ini_{·,b}(c))_{1 <= b <= n}`, written `T c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IniVector {
    entries: Vec<BigCount>,
}

impl IniVector {
    pub fn new(entries: Vec<BigCount>) -> Self {
        IniVector { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `b`, 1-based.
    pub fn get(&self, b: usize) -> BigCount {
        if b == 0 {
            return BigCount::default();
        }
        self.entries.get(b - 1).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &[BigCount] {
        &self.entries
    }
}

/// Exhaustive enumerator with a size cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { limit: Self::DEFAULT_LIMIT }
    }
}

impl Oracle {
    pub const DEFAULT_LIMIT: usize = 10;

    pub fn with_limit(limit: usize) -> Self {
        Oracle { limit }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.limit {
            Err(Error::ExhaustionLimit { size: n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// `P(c)` by scanning all of `S_n`; zero for inadmissible `c`.
    pub fn count(&self, c: &Composition) -> Result<BigCount> {
        let n = c.size();
        self.check(n)?;
        let Some(target) = mask_of(c) else {
            return Ok(BigCount::default());
        };
        let total = scan_by_first_letter(n, |word| u64::from(peak_mask(word) == target))
            .into_iter()
            .sum::<u64>();
        Ok(BigCount::from(total))
    }

    /// Class sizes `P(c)` for every peak composition `c` of `n`, from one
    /// scan of `S_n`.
    pub fn histogram(&self, n: usize) -> Result<BTreeMap<Composition, BigCount>> {
        self.check(n)?;
        if n == 0 {
            return Ok(BTreeMap::from([(Composition::empty(), BigCount::from(1u32))]));
        }
        let per_letter: Vec<HashMap<u64, u64>> = (1..=n as u32)
            .into_par_iter()
            .map(|first| {
                let mut tally = HashMap::new();
                for_each_with_first(n, first, |word| {
                    *tally.entry(peak_mask(word)).or_insert(0u64) += 1;
                });
                tally
            })
            .collect();
        let mut merged: BTreeMap<Composition, BigCount> = BTreeMap::new();
        for tally in per_letter {
            for (mask, count) in tally {
                let positions = (0..64).filter(|b| mask >> b & 1 == 1).collect();
                let c = PeakSet::new(positions, n)
                    .expect("mask comes from a real permutation")
                    .to_composition();
                *merged.entry(c).or_default() += count;
            }
        }
        Ok(merged)
    }

    /// Calls `visit` on each member of `P(c)` in lexicographic order until it
    /// returns `false`.
    pub fn walk_class<F>(&self, c: &Composition, mut visit: F) -> Result<()>
    where
        F: FnMut(&[u32]) -> bool,
    {
        let n = c.size();
        self.check(n)?;
        let Some(target) = mask_of(c) else {
            return Ok(());
        };
        let mut word = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        walk(n, target, &mut word, &mut used, &mut visit);
        Ok(())
    }

    /// Up to `limit` members of `P(c)` in lexicographic order.
    pub fn class_members(&self, c: &Composition, limit: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        if limit == 0 {
            return Ok(out);
        }
        self.walk_class(c, |w| {
            out.push(Permutation(w.to_vec()));
            out.len() < limit
        })?;
        Ok(out)
    }

    /// `P(c)` counted by listing the class (cross-check for [`Oracle::count`]).
    pub fn count_by_walk(&self, c: &Composition) -> Result<BigCount> {
        let mut total = 0u64;
        self.walk_class(c, |_| {
            total += 1;
            true
        })?;
        Ok(BigCount::from(total))
    }

    /// `Int_{a,b}(c)`: first letter `a` with an initial descent, last letter
    /// `b` with a final ascent.
    pub fn int_matrix(&self, c: &Composition) -> Result<CountMatrix> {
        self.boundary_matrix(c, true)
    }

    /// `Ini_{a,b}(c)`: first letter `a`, last letter `b` with a final ascent.
    pub fn ini_matrix(&self, c: &Composition) -> Result<CountMatrix> {
        self.boundary_matrix(c, false)
    }

    fn boundary_matrix(&self, c: &Composition, initial_descent: bool) -> Result<CountMatrix> {
        let n = c.size();
        let mut m = CountMatrix::zeros(n);
        self.walk_class(c, |w| {
            if let Some((a, b)) = boundary(w, initial_descent) {
                m.bump(a, b);
            }
            true
        })?;
        Ok(m)
    }

    /// `T c = (Ini_{·,b}(c))_b`.
    pub fn t_vector(&self, c: &Composition) -> Result<IniVector> {
        let n = c.size();
        let mut counts = vec![0u64; n];
        self.walk_class(c, |w| {
            if let Some((_, b)) = boundary(w, false) {
                counts[b - 1] += 1;
            }
            true
        })?;
        Ok(IniVector::new(counts.into_iter().map(BigCount::from).collect()))
    }

    /// Members of `Int_{x,y}(c)` in lexicographic order.
    pub fn int_class(&self, c: &Composition, x: usize, y: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.walk_class(c, |w| {
            if boundary(w, true) == Some((x, y)) {
                out.push(Permutation(w.to_vec()));
            }
            true
        })?;
        Ok(out)
    }

    /// Every nonempty `Int_{x,y}(c)` class, keyed by `(x, y)`, each sorted.
    pub fn int_classes(&self, c: &Composition) -> Result<BTreeMap<(usize, usize), Vec<Permutation>>> {
        let mut out: BTreeMap<(usize, usize), Vec<Permutation>> = BTreeMap::new();
        self.walk_class(c, |w| {
            if let Some(key) = boundary(w, true) {
                out.entry(key).or_default().push(Permutation(w.to_vec()));
            }
            true
        })?;
        Ok(out)
    }

    /// Lexicographically smallest member of `Ini_{·,b}(c)`, if any.
    pub fn first_ini_member(&self, c: &Composition, b: usize) -> Result<Option<Permutation>> {
        let mut found = None;
        self.walk_class(c, |w| {
            if boundary(w, false).map(|(_, last)| last) == Some(b) {
                found = Some(Permutation(w.to_vec()));
                false
            } else {
                true
            }
        })?;
        Ok(found)
    }
}

/// `(first, last)` when the word ends with an ascent (and, if requested,
/// starts with a descent).
fn boundary(w: &[u32], initial_descent: bool) -> Option<(usize, usize)> {
    let n = w.len();
    if n < 2 || w[n - 2] > w[n - 1] {
        return None;
    }
    if initial_descent && w[0] < w[1] {
        return None;
    }
    Some((w[0] as usize, w[n - 1] as usize))
}

fn walk<F>(n: usize, target: u64, word: &mut Vec<u32>, used: &mut [bool], visit: &mut F) -> bool
where
    F: FnMut(&[u32]) -> bool,
{
    if word.len() == n {
        return visit(word);
    }
    for x in 1..=n as u32 {
        if used[x as usize] {
            continue;
        }
        let d = word.len();
        // placing x decides whether position d (1-based) is a peak
        if d >= 2 {
            let is_peak = word[d - 2] < word[d - 1] && word[d - 1] > x;
            if is_peak != (target >> d & 1 == 1) {
                continue;
            }
        }
        used[x as usize] = true;
        word.push(x);
        let go_on = walk(n, target, word, used, visit);
        word.pop();
        used[x as usize] = false;
        if !go_on {
            return false;
        }
    }
    true
}

fn for_each_with_first<F: FnMut(&[u32])>(n: usize, first: u32, mut f: F) {
    let mut word: Vec<u32> = std::iter::once(first)
        .chain((1..=n as u32).filter(|&x| x != first))
        .collect();
    loop {
        f(&word);
        if !next_permutation(&mut word[1..]) {
            break;
        }
    }
}

/// Runs `f` over all of `S_n`, one task per first letter, results in
/// first-letter order.
fn scan_by_first_letter<F>(n: usize, f: F) -> Vec<u64>
where
    F: Fn(&[u32]) -> u64 + Sync,
{
    if n == 0 {
        return vec![f(&[])];
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut acc = 0u64;
            for_each_with_first(n, first, |w| acc += f(w));
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::enumerate_admissible;
    use crate::count::factorial;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn perm(w: &[u32]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn peak_set_examples() {
        assert_eq!(perm(&[2, 6, 5, 1, 4, 3]).peak_set().positions(), &[2, 5]);
        assert_eq!(perm(&[2, 6, 5, 1, 4, 3]).peak_composition(), c("2,3,1"));
        assert!(perm(&[1, 2, 3, 4]).peak_set().positions().is_empty());
        assert_eq!(perm(&[1, 3, 2]).peak_set().positions(), &[2]);
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(pattern_of(&[7, 3, 9]).unwrap(), perm(&[2, 1, 3]));
        assert_eq!(pattern_of(&[1, 2, 3]).unwrap(), perm(&[1, 2, 3]));
        assert_eq!(pattern_of(&[5, 8, 2, 6]).unwrap(), perm(&[2, 4, 1, 3]));
        assert!(pattern_of(&[4, 4]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn successor_walks_all_of_s4() {
        let mut v = vec![1, 2, 3, 4];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 24);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v, vec![1, 2, 3, 4]);
    }

    #[test]
    fn bruteforce_examples() {
        let o = Oracle::default();
        assert_eq!(o.count(&c("2,1")).unwrap(), BigCount::from(2u32));
        assert_eq!(o.count(&c("2,2,2")).unwrap(), BigCount::from(96u32));
        assert_eq!(o.count(&c("1,2")).unwrap(), BigCount::default());
        assert_eq!(o.count(&Composition::empty()).unwrap(), BigCount::from(1u32));
        assert!(matches!(
            o.count(&c("6,5")),
            Err(Error::ExhaustionLimit { size: 11, limit: 10 })
        ));
    }

    #[test]
    fn class_listing_matches_scan() {
        let o = Oracle::default();
        for n in 1..=7 {
            let hist = o.histogram(n).unwrap();
            for comp in enumerate_admissible(n) {
                let walked = o.count_by_walk(&comp).unwrap();
                assert_eq!(walked, o.count(&comp).unwrap(), "{comp:?}");
                assert_eq!(hist.get(&comp).cloned().unwrap_or_default(), walked);
            }
        }
        let members = o.class_members(&c("2,1"), 10).unwrap();
        assert_eq!(members, vec![perm(&[1, 3, 2]), perm(&[2, 3, 1])]);
        assert!(o.class_members(&c("1,2"), 10).unwrap().is_empty());
    }

    #[test]
    fn histogram_partitions_sn() {
        let o = Oracle::default();
        for n in 0..=8 {
            let hist = o.histogram(n).unwrap();
            let total: BigCount = hist.values().sum();
            assert_eq!(total, factorial(n));
            assert!(hist.keys().all(|k| k.is_admissible()));
        }
    }

    #[test]
    fn table_one_spot_values() {
        let o = Oracle::default();
        assert_eq!(o.int_matrix(&c("5,2")).unwrap().get(7, 2), BigCount::from(7u32));
        assert_eq!(o.int_matrix(&c("4,3")).unwrap().get(2, 4), BigCount::from(2u32));
    }

    #[test]
    fn boundary_matrix_shape() {
        let o = Oracle::default();
        for n in 1..=7 {
            for comp in enumerate_admissible(n) {
                let int = o.int_matrix(&comp).unwrap();
                let ini = o.ini_matrix(&comp).unwrap();
                for a in 1..=n {
                    assert_eq!(int.get(a, a), BigCount::default());
                    assert_eq!(int.get(1, a), BigCount::default());
                    assert_eq!(int.get(a, 1), BigCount::default());
                    assert_eq!(ini.get(a, 1), BigCount::default());
                    for b in 1..=n {
                        assert!(int.get(a, b) <= ini.get(a, b));
                    }
                }
                let t = o.t_vector(&comp).unwrap();
                assert_eq!(t.entries(), ini.column_sums().as_slice());
            }
        }
    }

    #[test]
    fn small_t_vectors() {
        let o = Oracle::default();
        let t = |s: &str| -> Vec<u64> {
            o.t_vector(&c(s))
                .unwrap()
                .entries()
                .iter()
                .map(|x| u64::try_from(x).unwrap())
                .collect()
        };
        assert_eq!(t("2,2"), vec![0, 1, 2, 2]);
        assert_eq!(t("4"), vec![0, 1, 2, 4]);
        assert_eq!(t("3,2,3"), vec![0, 96, 192, 288, 384, 480, 576, 672]);
    }

    #[test]
    fn degenerate_sizes() {
        let o = Oracle::default();
        assert_eq!(o.int_matrix(&c("2")).unwrap(), CountMatrix::zeros(2));
        assert_eq!(o.ini_matrix(&c("2")).unwrap().get(1, 2), BigCount::from(1u32));
        assert_eq!(o.t_vector(&c("1")).unwrap().entries(), &[BigCount::default()]);
    }
}
