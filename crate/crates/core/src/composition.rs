//! Integer compositions and the operations on them used throughout the
//! crate: concatenation, the reversal map `r'`, the `1+c` operation,
//! admissibility, peak-set conversion and the 3-factorization.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered list of positive parts. The empty composition (no parts,
/// size 0) is the identity for [`Composition::concat`].
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

/// Builds a [`Composition`] from literal parts, panicking on a zero part.
#[macro_export]
macro_rules! comp {
    () => { $crate::Composition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::Composition::new(vec![$($p),+]).expect("composition parts must be positive")
    };
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!("part {} is zero", i + 1)));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `part` repeated `times` times, e.g. `(3^ℓ)`.
    pub fn repeated(part: usize, times: usize) -> Result<Self> {
        Self::new(vec![part; times])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts, `|c|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Concatenates a sequence of compositions left to right.
    pub fn concat_all<'a, I>(pieces: I) -> Composition
    where
        I: IntoIterator<Item = &'a Composition>,
    {
        Composition(pieces.into_iter().flat_map(|c| c.0.iter().copied()).collect())
    }

    /// The reversal map `r'`: identity on one part, otherwise
    /// `(c_k + 1, c_{k-1}, …, c_2, c_1 - 1)`.
    pub fn reverse_r(&self) -> Result<Composition> {
        match self.0.as_slice() {
            [] => Err(Error::InvalidComposition("r' is undefined on the empty composition".into())),
            [_] => Ok(self.clone()),
            [1, ..] => Err(Error::InvalidComposition(format!(
                "r' of ({self}) would create a zero part"
            ))),
            parts => {
                let k = parts.len();
                let mut out = Vec::with_capacity(k);
                out.push(parts[k - 1] + 1);
                out.extend(parts[1..k - 1].iter().rev());
                out.push(parts[0] - 1);
                Ok(Composition(out))
            }
        }
    }

    /// The `1+c` operation: increments the first part.
    pub fn increase_first(&self) -> Result<Composition> {
        if self.is_empty() {
            return Err(Error::InvalidComposition("1+c is undefined on the empty composition".into()));
        }
        let mut parts = self.0.clone();
        parts[0] += 1;
        Ok(Composition(parts))
    }

    /// A composition is realized as a peak composition iff it has a single
    /// part, or every part but the last is at least 2. The empty composition
    /// counts as admissible (it indexes the empty permutation).
    pub fn is_admissible(&self) -> bool {
        match self.0.split_last() {
            None | Some((_, [])) => true,
            Some((_, init)) => init.iter().all(|&p| p >= 2),
        }
    }

    /// Peak positions `i_j = c_1 + … + c_j` for `j < k`, with ambient size `|c|`.
    pub fn to_peak_set(&self) -> Result<PeakSet> {
        if !self.is_admissible() {
            return Err(Error::Inadmissible(self.clone()));
        }
        let mut positions = Vec::with_capacity(self.len().saturating_sub(1));
        let mut acc = 0;
        for &p in self.0.iter().take(self.len().saturating_sub(1)) {
            acc += p;
            positions.push(acc);
        }
        PeakSet::new(positions, self.size())
    }

    pub fn three_factorization(&self) -> Factorization3 {
        let factors = self
            .0
            .split(|&p| p == 3)
            .map(|run| Composition(run.to_vec()))
            .collect();
        Factorization3 { factors }
    }

    /// Copy with the last part lowered by one, dropping it if it becomes zero.
    pub fn decrement_last(&self) -> Option<Composition> {
        let mut parts = self.0.clone();
        let last = parts.last_mut()?;
        *last -= 1;
        if *last == 0 {
            parts.pop();
        }
        Some(Composition(parts))
    }

    pub fn count_parts_equal(&self, value: usize) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "({self})")
        }
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `"4,3,2"`; an empty string or `ε` is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.is_empty() || s == "ε" {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Peak positions of a permutation of `[n]`, strictly increasing, each in
/// `2..=n-1`, no two adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PeakSet {
    positions: Vec<usize>,
    n: usize,
}

impl PeakSet {
    pub fn new(mut positions: Vec<usize>, n: usize) -> Result<Self> {
        positions.sort_unstable();
        for w in positions.windows(2) {
            if w[1] == w[0] {
                return Err(Error::InvalidPeakSet(format!("position {} repeated", w[0])));
            }
            if w[1] == w[0] + 1 {
                return Err(Error::InvalidPeakSet(format!(
                    "positions {} and {} are adjacent",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&p) = positions.iter().find(|&&p| p < 2 || p + 1 > n) {
            return Err(Error::InvalidPeakSet(format!(
                "position {p} is not interior to 1..={n}"
            )));
        }
        Ok(PeakSet { positions, n })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    /// Gaps between consecutive peaks with sentinels `0` and `n`.
    pub fn to_composition(&self) -> Composition {
        if self.n == 0 {
            return Composition::empty();
        }
        let mut prev = 0;
        let mut parts = Vec::with_capacity(self.positions.len() + 1);
        for &p in self.positions.iter().chain(std::iter::once(&self.n)) {
            parts.push(p - prev);
            prev = p;
        }
        Composition(parts)
    }

    /// Parses comma-separated positions (possibly empty) for ambient size `n`.
    pub fn parse(positions: &str, n: usize) -> Result<Self> {
        let positions = positions.trim();
        let parsed = if positions.is_empty() {
            Vec::new()
        } else {
            positions
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad position {tok:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        PeakSet::new(parsed, n)
    }
}

impl fmt::Display for PeakSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `c = x_0 ⊕ (3) ⊕ x_1 ⊕ … ⊕ (3) ⊕ x_k` with every factor free of 3s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization3 {
    factors: Vec<Composition>,
}

impl Factorization3 {
    pub fn from_factors(factors: Vec<Composition>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidComposition("a 3-factorization has at least one factor".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.parts().contains(&3)) {
            return Err(Error::InvalidComposition(format!("factor ({f}) contains a part 3")));
        }
        Ok(Factorization3 { factors })
    }

    pub fn factors(&self) -> &[Composition] {
        &self.factors
    }

    /// Number of `(3)` separators.
    pub fn k(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn reassemble(&self) -> Composition {
        join_with_threes(&self.factors)
    }
}

/// `x_0 ⊕ (3) ⊕ x_1 ⊕ … ⊕ (3) ⊕ x_k` for arbitrary factors.
pub fn join_with_threes(factors: &[Composition]) -> Composition {
    let mut parts = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        if i > 0 {
            parts.push(3);
        }
        parts.extend_from_slice(f.parts());
    }
    Composition(parts)
}

/// Admissible compositions of `n` in increasing lexicographic order.
///
/// Starts from `(2,2,…,2)` or `(2,…,2,1)` and ends with `(n)`. Each step bumps
/// the rightmost non-final part by one and refills the remainder with the
/// smallest admissible tail.
#[derive(Clone, Debug)]
pub struct AdmissibleCompositions {
    n: usize,
    next: Option<Vec<usize>>,
}

pub fn enumerate_admissible(n: usize) -> AdmissibleCompositions {
    let next = match n {
        0 => None,
        1 => Some(vec![1]),
        _ => Some(smallest_tail(n)),
    };
    AdmissibleCompositions { n, next }
}

fn smallest_tail(r: usize) -> Vec<usize> {
    let mut tail = vec![2; r / 2];
    if r % 2 == 1 {
        tail.push(1);
    }
    tail
}

impl Iterator for AdmissibleCompositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        if current.len() >= 2 {
            let i = current.len() - 2;
            let mut succ = current[..=i].to_vec();
            succ[i] += 1;
            let used: usize = succ.iter().sum();
            succ.extend(smallest_tail(self.n - used));
            self.next = Some(succ);
        }
        Some(Composition(current))
    }
}

/// All `2^{n-1}` compositions of `n` (admissible or not), for `1 <= n < 64`.
pub fn all_compositions(n: usize) -> impl Iterator<Item = Composition> {
    assert!(n < 64, "all_compositions is limited to n < 64");
    let masks = if n == 0 { 0u64 } else { 1u64 << (n - 1) };
    (0..masks).map(move |mask| {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..n.saturating_sub(1) {
            if mask >> bit & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Composition(parts)
    })
}

/// The family of maximal compositions of `n >= 6` claimed by the
/// classification theorem, keyed on `n mod 3`.
pub fn predicted_maximal(n: usize) -> Result<BTreeSet<Composition>> {
    if n < 6 {
        return Err(Error::Domain(format!("the classification covers n >= 6, got {n}")));
    }
    let l = n / 3;
    let mut out = BTreeSet::new();
    match n % 3 {
        0 => {
            out.insert(Composition(vec![3; l]));
            let mut p = vec![4];
            p.extend(std::iter::repeat_n(3, l - 2));
            p.push(2);
            out.insert(Composition(p));
        }
        1 => {
            for s in 1..l {
                let t = l - 1 - s;
                let mut p = vec![3; s];
                p.push(2);
                p.extend(std::iter::repeat_n(3, t));
                p.push(2);
                out.insert(Composition(p));
            }
        }
        _ => {
            let mut p = vec![3; l];
            p.push(2);
            out.insert(Composition(p));
        }
    }
    Ok(out)
}
