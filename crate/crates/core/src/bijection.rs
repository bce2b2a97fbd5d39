//! Componentwise dominance between boundary statistics, and the two
//! explicit constructions behind the comparison arguments: the embedding of
//! a pattern into the middle block of a class, and the map `Γ` that swaps a
//! middle block `c` for `c'` through a family of injections between `Int`
//! classes.

use std::collections::HashMap;

use serde::Serialize;

use crate::composition::Composition;
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::permutation::{pattern_of, CountMatrix, Oracle, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `x <= y` everywhere and `x != y`.
    StrictlyDominated,
    Equal,
    Incomparable,
    /// `x >= y` everywhere and `x != y`.
    Dominates,
}

/// A 1-based vector index or `(a, b)` matrix cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coordinate {
    Entry(usize),
    Cell(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceVerdict {
    pub relation: Relation,
    /// First coordinate where the inequality is strict, for the two
    /// comparable-but-unequal relations.
    pub witness: Option<Coordinate>,
}

impl DominanceVerdict {
    pub fn is_strictly_dominated(&self) -> bool {
        self.relation == Relation::StrictlyDominated
    }
}

fn verdict<I>(pairs: I) -> DominanceVerdict
where
    I: IntoIterator<Item = (Coordinate, BigCount, BigCount)>,
{
    let mut first_less = None;
    let mut first_greater = None;
    for (at, x, y) in pairs {
        if x < y && first_less.is_none() {
            first_less = Some(at);
        } else if x > y && first_greater.is_none() {
            first_greater = Some(at);
        }
    }
    let (relation, witness) = match (first_less, first_greater) {
        (None, None) => (Relation::Equal, None),
        (Some(w), None) => (Relation::StrictlyDominated, Some(w)),
        (None, Some(w)) => (Relation::Dominates, Some(w)),
        (Some(_), Some(_)) => (Relation::Incomparable, None),
    };
    DominanceVerdict { relation, witness }
}

/// Componentwise comparison of two equal-length sequences.
pub fn compare_componentwise(x: &[BigCount], y: &[BigCount]) -> Result<DominanceVerdict> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!("lengths differ: {} vs {}", x.len(), y.len())));
    }
    Ok(verdict(
        x.iter()
            .zip(y)
            .enumerate()
            .map(|(i, (a, b))| (Coordinate::Entry(i + 1), a.clone(), b.clone())),
    ))
}

/// Entrywise comparison of two tables of the same size.
pub fn compare_matrices(x: &CountMatrix, y: &CountMatrix) -> Result<DominanceVerdict> {
    if x.n() != y.n() {
        return Err(Error::Domain(format!("sizes differ: {} vs {}", x.n(), y.n())));
    }
    let n = x.n();
    Ok(verdict((1..=n).flat_map(|a| {
        (1..=n).map(move |b| (Coordinate::Cell(a, b), x.get(a, b), y.get(a, b)))
    })))
}

fn same_size(c: &Composition, cp: &Composition) -> Result<()> {
    if c.size() != cp.size() {
        return Err(Error::Domain(format!(
            "sizes differ: |{c}| = {} vs |{cp}| = {}",
            c.size(),
            cp.size()
        )));
    }
    Ok(())
}

/// `T c` versus `T c'`.
pub fn dominates_t(oracle: &Oracle, c: &Composition, cp: &Composition) -> Result<DominanceVerdict> {
    same_size(c, cp)?;
    compare_componentwise(oracle.t_vector(c)?.entries(), oracle.t_vector(cp)?.entries())
}

/// `Int(1+c)` versus `Int(1+c')`, entrywise.
pub fn dominates_int(oracle: &Oracle, c: &Composition, cp: &Composition) -> Result<DominanceVerdict> {
    same_size(c, cp)?;
    let x = oracle.int_matrix(&c.increase_first()?)?;
    let y = oracle.int_matrix(&cp.increase_first()?)?;
    compare_matrices(&x, &y)
}

fn peak_composition_of(word: &[u32]) -> Result<Composition> {
    Ok(Permutation::new(word.to_vec())?.peak_composition())
}

/// Builds `σ ∈ P(c1 ⊕ c2 ⊕ c3)` whose window `σ_{n1} … σ_{n1+n2}` is
/// order-isomorphic to `tau`, where `tau ∈ Int_{u,v}(1 + c2)`.
///
/// The outer blocks come from the lexicographically smallest members of
/// `Ini_{·,n1}(c1)` and `Ini_{·,n3+1}(r'(1 + c3))`.
pub fn embed_middle(
    oracle: &Oracle,
    c1: &Composition,
    c2: &Composition,
    c3: &Composition,
    tau: &Permutation,
) -> Result<Permutation> {
    if c1.is_empty() || c2.is_empty() || c3.is_empty() {
        return Err(Error::Domain("embed_middle needs three nonempty compositions".into()));
    }
    let whole = Composition::concat_all([c1, c2, c3]);
    if !whole.is_admissible() {
        return Err(Error::Inadmissible(whole));
    }
    let (n1, n2, n3) = (c1.size(), c2.size(), c3.size());
    let lifted = c2.increase_first()?;
    let t = tau.word();
    let boundary_ok = tau.len() == n2 + 1
        && tau.is_standard()
        && t[0] > t[1]
        && t[n2 - 1] < t[n2]
        && tau.peak_composition() == lifted;
    if !boundary_ok {
        return Err(Error::Domain(format!("tau = {tau} is not in any Int class of ({lifted})")));
    }

    let gamma = oracle
        .first_ini_member(c1, n1)?
        .ok_or_else(|| Error::Construction(format!("Ini_{{·,{n1}}}({c1}) is empty")))?;
    let tail = c3.increase_first()?.reverse_r()?;
    let beta = oracle
        .first_ini_member(&tail, n3 + 1)?
        .ok_or_else(|| Error::Construction(format!("Ini_{{·,{}}}({tail}) is empty", n3 + 1)))?;

    let total = n1 + n2 + n3;
    let mut sigma = vec![0u32; total];
    sigma[..n1 - 1].copy_from_slice(&gamma.word()[..n1 - 1]);
    let shift = (n1 - 1) as u32;
    for (i, &x) in beta.word()[..n3].iter().enumerate() {
        sigma[total - 1 - i] = x + shift;
    }
    let shift = (n1 + n3 - 1) as u32;
    for (i, &x) in t.iter().enumerate() {
        sigma[n1 - 1 + i] = x + shift;
    }

    if peak_composition_of(&sigma)? != whole || pattern_of(&sigma[n1 - 1..n1 + n2])? != *tau {
        return Err(Error::Construction(format!(
            "assembled word {sigma:?} misses the required peaks or pattern"
        )));
    }
    Permutation::new(sigma)
}

/// The map `Γ : P(a ⊕ c ⊕ b) → P(a ⊕ c' ⊕ b)`.
///
/// It keeps every letter outside the window at positions `|a| … |a|+|c|`
/// and rearranges the window's letters to follow `φ(τ)`, where `τ` is the
/// window's pattern (a member of some `Int_{x,y}(1+c)`) and `φ` matches
/// the lexicographically sorted `Int_{x,y}(1+c)` against the sorted
/// `Int_{x,y}(1+c')` by index.
#[derive(Clone, Debug)]
pub struct GammaMap {
    source: Composition,
    target: Composition,
    window_start: usize,
    window_len: usize,
    table: HashMap<Vec<u32>, Vec<u32>>,
    strict: bool,
}

impl GammaMap {
    pub fn new(
        oracle: &Oracle,
        a: &Composition,
        c: &Composition,
        cp: &Composition,
        b: &Composition,
    ) -> Result<Self> {
        same_size(c, cp)?;
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Err(Error::Domain("Γ needs nonempty a, c and b".into()));
        }
        let source = Composition::concat_all([a, c, b]);
        if !source.is_admissible() {
            return Err(Error::Inadmissible(source));
        }
        let from = oracle.int_classes(&c.increase_first()?)?;
        let to = oracle.int_classes(&cp.increase_first()?)?;
        let mut table = HashMap::new();
        let mut strict = false;
        for (&(x, y), members) in &from {
            let images = to.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[]);
            if images.len() < members.len() {
                return Err(Error::DominanceViolated { x, y });
            }
            for (m, img) in members.iter().zip(images) {
                table.insert(m.word().to_vec(), img.word().to_vec());
            }
        }
        for (key, images) in &to {
            let have = from.get(key).map_or(0, Vec::len);
            strict |= images.len() > have;
        }
        Ok(GammaMap {
            source,
            target: Composition::concat_all([a, cp, b]),
            window_start: a.size() - 1,
            window_len: c.size() + 1,
            table,
            strict,
        })
    }

    pub fn source(&self) -> &Composition {
        &self.source
    }

    pub fn target(&self) -> &Composition {
        &self.target
    }

    /// Some `Int` class of `1+c'` is strictly larger than its counterpart,
    /// so the map cannot be onto.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn apply(&self, sigma: &Permutation) -> Result<Permutation> {
        if !sigma.is_standard() || sigma.peak_composition() != self.source {
            return Err(Error::Domain(format!("{sigma} is not in P({})", self.source)));
        }
        let range = self.window_start..self.window_start + self.window_len;
        let window = &sigma.word()[range.clone()];
        let tau = pattern_of(window)?;
        let image = self.table.get(tau.word()).ok_or_else(|| {
            Error::Construction(format!("window pattern {tau} is not in any Int class"))
        })?;
        let mut letters = window.to_vec();
        letters.sort_unstable();
        let mut out = sigma.word().to_vec();
        for (slot, &rank) in out[range].iter_mut().zip(image) {
            *slot = letters[rank as usize - 1];
        }
        Permutation::new(out)
    }
}

/// One-shot `Γ(σ)`; build a [`GammaMap`] to apply it repeatedly.
pub fn gamma_injection(
    oracle: &Oracle,
    a: &Composition,
    c: &Composition,
    cp: &Composition,
    b: &Composition,
    sigma: &Permutation,
) -> Result<Permutation> {
    GammaMap::new(oracle, a, c, cp, b)?.apply(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn t_dominance_examples() {
        let o = Oracle::default();
        let v = dominates_t(&o, &c("2,2"), &c("4")).unwrap();
        assert_eq!(v.relation, Relation::StrictlyDominated);
        assert!(v.witness.is_some());
        let v = dominates_t(&o, &c("4,3,2"), &c("3,3,3")).unwrap();
        assert_eq!(v.relation, Relation::StrictlyDominated);
        let v = dominates_t(&o, &c("3,3"), &c("3,3")).unwrap();
        assert_eq!(v, DominanceVerdict { relation: Relation::Equal, witness: None });
        assert!(dominates_t(&o, &c("3,3"), &c("3,2")).is_err());
    }

    #[test]
    fn int_dominance_examples() {
        let o = Oracle::default();
        let v = dominates_int(&o, &c("4,2"), &c("3,3")).unwrap();
        assert_eq!(v.relation, Relation::StrictlyDominated);
        assert_eq!(dominates_int(&o, &c("3,3"), &c("3,3")).unwrap().relation, Relation::Equal);
        let fwd = dominates_int(&o, &c("2,2"), &c("3,1")).unwrap();
        let back = dominates_int(&o, &c("3,1"), &c("2,2")).unwrap();
        let flipped = match fwd.relation {
            Relation::StrictlyDominated => Relation::Dominates,
            Relation::Dominates => Relation::StrictlyDominated,
            r => r,
        };
        assert_eq!(back.relation, flipped);
    }

    #[test]
    fn componentwise_relations() {
        let v = |xs: &[u32]| xs.iter().map(|&x| BigCount::from(x)).collect::<Vec<_>>();
        let got = compare_componentwise(&v(&[1, 2]), &v(&[1, 3])).unwrap();
        assert_eq!(got.witness, Some(Coordinate::Entry(2)));
        assert_eq!(compare_componentwise(&v(&[2, 2]), &v(&[1, 3])).unwrap().relation, Relation::Incomparable);
        assert_eq!(compare_componentwise(&v(&[2, 3]), &v(&[1, 3])).unwrap().relation, Relation::Dominates);
        assert!(compare_componentwise(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn embed_example() {
        let o = Oracle::default();
        let tau = Permutation::new(vec![3, 1, 2]).unwrap();
        let sigma = embed_middle(&o, &c("2"), &c("2"), &c("2"), &tau).unwrap();
        assert_eq!(sigma.peak_composition(), c("2,2,2"));
        assert_eq!(pattern_of(&sigma.word()[1..4]).unwrap(), tau);
        assert!(matches!(
            embed_middle(&o, &c("1"), &c("2"), &c("1"), &tau),
            Err(Error::Inadmissible(_))
        ));
        let not_int = Permutation::new(vec![1, 3, 2]).unwrap();
        assert!(embed_middle(&o, &c("2"), &c("2"), &c("2"), &not_int).is_err());
    }

    #[test]
    fn embed_every_middle_pattern() {
        let o = Oracle::default();
        for (c1, c2, c3) in [("2", "2", "2"), ("3", "2", "1"), ("2,2", "4", "2"), ("4", "3", "3"), ("2", "2,2", "1")] {
            let (c1, c2, c3) = (c(c1), c(c2), c(c3));
            for (_, members) in o.int_classes(&c2.increase_first().unwrap()).unwrap() {
                for tau in members {
                    let sigma = embed_middle(&o, &c1, &c2, &c3, &tau).unwrap();
                    assert_eq!(sigma.peak_composition(), Composition::concat_all([&c1, &c2, &c3]));
                    let n1 = c1.size();
                    assert_eq!(pattern_of(&sigma.word()[n1 - 1..n1 + c2.size()]).unwrap(), tau);
                }
            }
        }
    }

    #[test]
    fn gamma_on_table_one_instance() {
        let o = Oracle::default();
        let (a, cc, cp, b) = (c("2"), c("4,2"), c("3,3"), c("1"));
        let map = GammaMap::new(&o, &a, &cc, &cp, &b).unwrap();
        assert!(map.is_strict());
        let mut images = HashSet::new();
        let mut domain = 0;
        o.walk_class(map.source(), |w| {
            let img = map.apply(&Permutation::new(w.to_vec()).unwrap()).unwrap();
            assert_eq!(img.peak_composition(), *map.target());
            images.insert(img);
            domain += 1;
            true
        })
        .unwrap();
        assert_eq!(images.len(), domain);
        let target = o.count(map.target()).unwrap();
        assert!(BigCount::from(images.len()) < target);
    }

    #[test]
    fn gamma_identity_when_c_equals_cp() {
        let o = Oracle::default();
        let map = GammaMap::new(&o, &c("2"), &c("3,2"), &c("3,2"), &c("2")).unwrap();
        assert!(!map.is_strict());
        for sigma in o.class_members(map.source(), 50).unwrap() {
            assert_eq!(map.apply(&sigma).unwrap(), sigma);
        }
    }

    #[test]
    fn gamma_rejects_violated_hypothesis() {
        let o = Oracle::default();
        assert!(matches!(
            GammaMap::new(&o, &c("2"), &c("3,3"), &c("4,2"), &c("1")),
            Err(Error::DominanceViolated { .. })
        ));
        assert!(GammaMap::new(&o, &Composition::empty(), &c("4,2"), &c("3,3"), &c("1")).is_err());
        let sigma = Permutation::identity(9);
        assert!(gamma_injection(&o, &c("2"), &c("4,2"), &c("3,3"), &c("1"), &sigma).is_err());
    }
}
