//! Polynomial-time exact counting.
//!
//! Both counters track, for each prefix length `m`, how many valid prefixes
//! end in a letter of relative rank `j` among the `m` letters placed so far.
//! Appending a letter after an ascent takes strict prefix sums of that
//! vector; after a descent, suffix sums. [`count_fast`] additionally splits
//! the state by the previous sign so the peak constraint (which couples
//! adjacent signs only) can be enforced position by position.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::composition::{Composition, PeakSet};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::permutation::IniVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Up,
    Down,
}

/// Up-down word `z_1 … z_{n-1}` of a permutation of `[n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignWord(Vec<Sign>);

impl SignWord {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignWord(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Length of the permutations this word describes.
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    /// Positions `i` with `z_{i-1} = +` and `z_i = -`.
    pub fn peaks(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Sign::Up && w[1] == Sign::Down)
            .map(|(i, _)| i + 2)
            .collect()
    }

    /// The up-down word of `word`.
    pub fn of(word: &[u32]) -> Self {
        SignWord(
            word.windows(2)
                .map(|w| if w[0] < w[1] { Sign::Up } else { Sign::Down })
                .collect(),
        )
    }

    /// All `2^len` words of a given length, `+` before `-` lexicographically.
    pub fn all(len: usize) -> impl Iterator<Item = SignWord> {
        assert!(len < 64);
        (0..1u64 << len).map(move |mask| {
            SignWord(
                (0..len)
                    .map(|i| if mask >> (len - 1 - i) & 1 == 0 { Sign::Up } else { Sign::Down })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Up => "+",
                Sign::Down => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|ch| match ch {
                '+' | 'u' | 'U' => Ok(Sign::Up),
                '-' | '−' | 'd' | 'D' => Ok(Sign::Down),
                other => Err(Error::Parse(format!("bad sign {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignWord)
    }
}

/// Strict prefix sums: `out[j] = sum_{i<j} v[i]`, length `v.len() + 1`.
fn ascend(v: &[BigCount]) -> Vec<BigCount> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut acc = BigCount::default();
    out.push(acc.clone());
    for x in v {
        acc += x;
        out.push(acc.clone());
    }
    out
}

/// Suffix sums: `out[j] = sum_{i>=j} v[i]`, length `v.len() + 1`.
fn descend(v: &[BigCount]) -> Vec<BigCount> {
    let mut out = vec![BigCount::default(); v.len() + 1];
    let mut acc = BigCount::default();
    for j in (0..v.len()).rev() {
        acc += &v[j];
        out[j] = acc.clone();
    }
    out
}

fn add(a: &[BigCount], b: &[BigCount]) -> Vec<BigCount> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Number of permutations with up-down word `w`.
pub fn beta(w: &SignWord) -> BigCount {
    let mut v = vec![BigCount::from(1u32)];
    for s in w.signs() {
        v = match s {
            Sign::Up => ascend(&v),
            Sign::Down => descend(&v),
        };
    }
    v.into_iter().sum()
}

/// Final-letter distributions of `P(c)`, split by the last sign:
/// `(ends_up[j], ends_down[j])` count members whose last letter is `j + 1`.
///
/// Returns `None` for inadmissible `c` and for `n < 2` (no last sign).
fn class_profile(c: &Composition) -> Option<(Vec<BigCount>, Vec<BigCount>)> {
    let n = c.size();
    if n < 2 || !c.is_admissible() {
        return None;
    }
    let peaks = c.to_peak_set().ok()?;
    let one = vec![BigCount::from(1u32)];
    let mut up = ascend(&one);
    let mut down = descend(&one);
    // appending letter m+1 fixes z_m and decides whether m is a peak
    for m in 2..n {
        if peaks.contains(m) {
            let next_down = descend(&up);
            up = vec![BigCount::default(); m + 1];
            down = next_down;
        } else {
            let next_up = ascend(&add(&up, &down));
            down = descend(&down);
            up = next_up;
        }
    }
    Some((up, down))
}

/// `P(c)` by a single constrained pass; `0` when `c` is inadmissible.
pub fn count_fast(c: &Composition) -> BigCount {
    match c.size() {
        0 | 1 => return BigCount::from(u32::from(c.is_admissible())),
        _ => {}
    }
    match class_profile(c) {
        Some((up, down)) => up.into_iter().chain(down).sum(),
        None => BigCount::default(),
    }
}

/// `T c` from the final-letter distribution of members ending in an ascent.
pub fn t_vector_fast(c: &Composition) -> IniVector {
    let n = c.size();
    match class_profile(c) {
        Some((up, _)) => IniVector::new(up),
        None => IniVector::new(vec![BigCount::default(); n]),
    }
}

/// Up-down words of length `n - 1` whose peak positions are exactly `S`.
pub fn compatible_words(s: &PeakSet) -> impl Iterator<Item = SignWord> {
    let len = s.n().saturating_sub(1);
    let s = s.clone();
    let mut stack: Vec<Vec<Sign>> = if s.n() == 0 { Vec::new() } else { vec![Vec::new()] };
    std::iter::from_fn(move || {
        while let Some(prefix) = stack.pop() {
            if prefix.len() == len {
                return Some(SignWord(prefix));
            }
            // choosing z_i (1-based i = prefix.len() + 1) settles position i
            let i = prefix.len() + 1;
            for sign in [Sign::Down, Sign::Up] {
                if let Some(&prev) = prefix.last() {
                    let is_peak = prev == Sign::Up && sign == Sign::Down;
                    if is_peak != s.contains(i) {
                        continue;
                    }
                }
                let mut next = prefix.clone();
                next.push(sign);
                stack.push(next);
            }
        }
        None
    })
}

/// `P(c)` as a sum of [`beta`] over the compatible words (cross-check path).
pub fn count_via_words(c: &Composition) -> BigCount {
    match c.to_peak_set() {
        Ok(s) => compatible_words(&s).map(|w| beta(&w)).sum(),
        Err(_) => BigCount::default(),
    }
}

/// [`count_fast`] over a batch, in input order.
pub fn count_many(cs: &[Composition]) -> Vec<BigCount> {
    cs.par_iter().map(count_fast).collect()
}
