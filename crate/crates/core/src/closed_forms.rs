//! Closed-form values of `P(c)`, `Int` and `Ini`, each paired with a
//! cross-check against the dynamic program or the brute-force oracle.
//!
//! Rational prefactors are evaluated exactly; a non-integer result is
//! reported, never rounded.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::composition::{Composition, Factorization3};
use crate::count::{binomial, factorial, multinomial, pow2, BigCount};
use crate::error::{Error, Result};
use crate::fast::count_fast;
use crate::permutation::Oracle;

/// The registry of implemented formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    L32a,
    L32b,
    L32_2a,
    L32_2b,
    L33_1a,
    L33_1b,
    L33_1c,
    PSingle,
    P3NMinus3,
    Sep51,
    Mult52,
    Gen56,
    C57T3ell,
    C57_3ell2,
    C57_3s23m,
    C57_3s23t2,
    C57_43ell,
    Thm12,
}

impl FormulaId {
    pub const ALL: [FormulaId; 18] = [
        FormulaId::L32a,
        FormulaId::L32b,
        FormulaId::L32_2a,
        FormulaId::L32_2b,
        FormulaId::L33_1a,
        FormulaId::L33_1b,
        FormulaId::L33_1c,
        FormulaId::PSingle,
        FormulaId::P3NMinus3,
        FormulaId::Sep51,
        FormulaId::Mult52,
        FormulaId::Gen56,
        FormulaId::C57T3ell,
        FormulaId::C57_3ell2,
        FormulaId::C57_3s23m,
        FormulaId::C57_3s23t2,
        FormulaId::C57_43ell,
        FormulaId::Thm12,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::L32a => "L32a",
            FormulaId::L32b => "L32b",
            FormulaId::L32_2a => "L32_2a",
            FormulaId::L32_2b => "L32_2b",
            FormulaId::L33_1a => "L33_1a",
            FormulaId::L33_1b => "L33_1b",
            FormulaId::L33_1c => "L33_1c",
            FormulaId::PSingle => "P_single",
            FormulaId::P3NMinus3 => "P_3_nminus3",
            FormulaId::Sep51 => "SEP51",
            FormulaId::Mult52 => "MULT52",
            FormulaId::Gen56 => "GEN56",
            FormulaId::C57T3ell => "C57_T3ell",
            FormulaId::C57_3ell2 => "C57_3ell2",
            FormulaId::C57_3s23m => "C57_3s23m",
            FormulaId::C57_3s23t2 => "C57_3s23t2",
            FormulaId::C57_43ell => "C57_43ell",
            FormulaId::Thm12 => "THM12",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown formula id {s:?}")))
    }
}

impl Serialize for FormulaId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

fn check_indices(n: usize, a: usize, b: usize) -> Result<()> {
    if a == 0 || b == 0 || a > n || b > n {
        return Err(Error::Domain(format!("indices ({a},{b}) outside 1..={n}")));
    }
    Ok(())
}

/// `Int_{a,b}(n)` for the one-part composition `(n)`, `n >= 3`.
pub fn int_single(n: usize, a: usize, b: usize) -> Result<BigCount> {
    if n < 3 {
        return Err(Error::Domain(format!("int_single needs n >= 3, got {n}")));
    }
    check_indices(n, a, b)?;
    let other = match (a == n, b == n) {
        (true, false) => b,
        (false, true) => a,
        _ => return Ok(BigCount::zero()),
    };
    if other >= 2 {
        Ok(pow2(other - 2))
    } else {
        Ok(BigCount::zero())
    }
}

/// `Ini_{a,b}(n)` for the one-part composition `(n)`, `n >= 3`.
pub fn ini_single(n: usize, a: usize, b: usize) -> Result<BigCount> {
    if n < 3 {
        return Err(Error::Domain(format!("ini_single needs n >= 3, got {n}")));
    }
    check_indices(n, a, b)?;
    if a == 1 {
        Ok(BigCount::from(u32::from(b == n)))
    } else {
        int_single(n, a, b)
    }
}

fn int_single_clause(n: usize, a: usize, b: usize) -> FormulaId {
    let one_is_n = (a == n) != (b == n);
    let other = if a == n { b } else { a };
    if one_is_n && other >= 2 {
        FormulaId::L32a
    } else {
        FormulaId::L32b
    }
}

/// Which stated clause covers `Int_{a,b}(3, n-3)`, if any.
pub fn int_3block_clause(n: usize, a: usize, b: usize) -> Option<FormulaId> {
    if n < 5 {
        return None;
    }
    if (a, b) == (n, n - 1) || (a, b) == (n - 1, n) {
        Some(FormulaId::L33_1a)
    } else if a == n && (2..=n - 2).contains(&b) {
        Some(FormulaId::L33_1b)
    } else if b == n && (2..=n - 2).contains(&a) {
        Some(FormulaId::L33_1c)
    } else {
        None
    }
}

/// `Int_{a,b}(3, n-3)`, `n >= 5`, from the stated clauses; other index
/// pairs (and the `Int_{a,n-1}` term of the third clause) come from the
/// oracle, or fail with [`Error::FormulaNotStated`] beyond its limit.
pub fn int_3block(oracle: &Oracle, n: usize, a: usize, b: usize) -> Result<BigCount> {
    if n < 5 {
        return Err(Error::Domain(format!("int_3block needs n >= 5, got {n}")));
    }
    check_indices(n, a, b)?;
    match int_3block_clause(n, a, b) {
        Some(FormulaId::L33_1a) => Ok(BigCount::from(n - 4) * pow2(n - 4)),
        Some(FormulaId::L33_1b) => {
            let mut v = BigCount::from(n - 2 - b) * pow2(b - 2);
            if b >= 3 {
                v += BigCount::from(b - 1) * pow2(b - 3);
            }
            Ok(v)
        }
        Some(FormulaId::L33_1c) => {
            Ok(int_3block(oracle, n, a, n - 1)? + BigCount::from(a - 1) * pow2(n - 5))
        }
        _ => {
            let block = Composition::new(vec![3, n - 3])?;
            match oracle.int_matrix(&block) {
                Ok(m) => Ok(m.get(a, b)),
                Err(Error::ExhaustionLimit { .. }) => Err(Error::FormulaNotStated { n, a, b }),
                Err(e) => Err(e),
            }
        }
    }
}

/// `P(n) = 2^{n-1}`.
pub fn p_single(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::Domain("p_single needs n >= 1".into()));
    }
    Ok(pow2(n - 1))
}

/// `P(3, n-3) = (C(n-1, 2) - 1) 2^{n-2}` for `n >= 5`.
pub fn p_3block(n: usize) -> Result<BigCount> {
    if n < 5 {
        return Err(Error::Domain(format!("p_3block needs n >= 5, got {n}")));
    }
    Ok((binomial(n - 1, 2) - 1u32) * pow2(n - 2))
}

/// `P(a ⊕ (3) ⊕ b) = C(|a|+|b|+3, |a|+1) P(a ⊕ (1)) P((2) ⊕ b)` for `b ≠ ε`.
pub fn separation(a: &Composition, b: &Composition) -> Result<BigCount> {
    if b.is_empty() {
        return Err(Error::Domain("separation needs a nonempty right factor".into()));
    }
    let whole = Composition::concat_all([a, &comp(&[3]), b]);
    if !whole.is_admissible() {
        return Err(Error::Inadmissible(whole));
    }
    let left = a.concat(&comp(&[1]));
    let right = comp(&[2]).concat(b);
    Ok(binomial(a.size() + b.size() + 3, a.size() + 1) * count_fast(&left) * count_fast(&right))
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).expect("literal parts are positive")
}

/// Product formula over a 3-factorization `x_0 ⊕ (3) ⊕ … ⊕ (3) ⊕ x_k` with
/// `k >= 1` and `x_k ≠ ε`.
pub fn multinomial_count(f: &Factorization3) -> Result<BigCount> {
    multinomial_over(f.factors())
}

/// As [`multinomial_count`], for any factor sequence (factors may contain 3s).
pub fn multinomial_over(factors: &[Composition]) -> Result<BigCount> {
    let k = factors.len().saturating_sub(1);
    if k == 0 {
        return Err(Error::Domain("the product formula needs at least one (3) separator".into()));
    }
    let last = &factors[k];
    if last.is_empty() {
        return Err(Error::Domain("the product formula needs a nonempty last factor".into()));
    }
    let mut blocks = Vec::with_capacity(k + 1);
    blocks.push(factors[0].size() + 1);
    blocks.extend(factors[1..k].iter().map(|x| x.size() + 3));
    blocks.push(last.size() + 2);

    let two = comp(&[2]);
    let one = comp(&[1]);
    let mut value = multinomial(&blocks) * count_fast(&factors[0].concat(&one));
    for x in &factors[1..k] {
        value *= count_fast(&Composition::concat_all([&two, x, &one]));
    }
    value *= count_fast(&two.concat(last));
    Ok(value)
}

/// The composition `c⁽¹⁾ ⊕ (3^{ℓ₁}) ⊕ c⁽²⁾ ⊕ … ⊕ (3^{ℓ_k}) ⊕ c⁽ᵏ⁺¹⁾`.
pub fn general_composition(pieces: &[Composition], exponents: &[usize]) -> Result<Composition> {
    check_general(pieces, exponents)?;
    let mut parts = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        parts.extend_from_slice(piece.parts());
        if let Some(&l) = exponents.get(i) {
            parts.extend(std::iter::repeat_n(3, l));
        }
    }
    Composition::new(parts)
}

fn check_general(pieces: &[Composition], exponents: &[usize]) -> Result<()> {
    let k = exponents.len();
    if k == 0 || pieces.len() != k + 1 {
        return Err(Error::Domain(format!(
            "need k >= 1 exponents and k + 1 pieces, got {} and {}",
            k,
            pieces.len()
        )));
    }
    if exponents.contains(&0) {
        return Err(Error::Domain("every exponent must be at least 1".into()));
    }
    if pieces[k].is_empty() {
        return Err(Error::Domain("the last piece must be nonempty".into()));
    }
    Ok(())
}

/// Exact (rational) value of the block-run product formula:
///
/// `(1/3)^{Σℓ - k} · N! / ((1+|c⁽¹⁾|)! · Π_{i=2..k} (3+|c⁽ⁱ⁾|)! · (|c⁽ᵏ⁺¹⁾|+2)!)
///  · P(c⁽¹⁾⊕(1)) · Π_{i=2..k} P((2)⊕c⁽ⁱ⁾⊕(1)) · P((2)⊕c⁽ᵏ⁺¹⁾)`
///
/// with `N = 3Σℓ + Σ|c⁽ⁱ⁾|`.
pub fn general_count_exact(pieces: &[Composition], exponents: &[usize]) -> Result<BigRational> {
    check_general(pieces, exponents)?;
    let k = exponents.len();
    let runs: usize = exponents.iter().sum();
    let total = 3 * runs + pieces.iter().map(Composition::size).sum::<usize>();

    let mut denom = factorial(1 + pieces[0].size()) * factorial(pieces[k].size() + 2);
    for piece in &pieces[1..k] {
        denom *= factorial(3 + piece.size());
    }
    let two = comp(&[2]);
    let one = comp(&[1]);
    let mut product = count_fast(&pieces[0].concat(&one)) * count_fast(&two.concat(&pieces[k]));
    for piece in &pieces[1..k] {
        product *= count_fast(&Composition::concat_all([&two, piece, &one]));
    }
    Ok(pow3(-((runs - k) as i64)) * ratio(factorial(total) * product, denom))
}

/// [`general_count_exact`] as an integer, or [`Error::FormulaInconsistency`].
pub fn general_count(pieces: &[Composition], exponents: &[usize]) -> Result<BigCount> {
    let value = general_count_exact(pieces, exponents)?;
    to_count(&value).ok_or_else(|| Error::FormulaInconsistency {
        formula: FormulaId::Gen56.to_string(),
        value: render(&value),
        reference: general_composition(pieces, exponents)
            .ok()
            .map(|c| count_fast(&c).to_string()),
    })
}

fn ratio(num: BigCount, den: BigCount) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow3(exp: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(3u32).pow(exp.unsigned_abs() as u32));
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

fn frac(num: u32, den: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn fact_q(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(factorial(n)))
}

/// Nonnegative integer value of `r`, if it is one.
pub fn to_count(r: &BigRational) -> Option<BigCount> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_biguint()
    } else {
        None
    }
}

/// Decimal rendering: exact for terminating expansions, otherwise `p/q`.
pub fn render(r: &BigRational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let mut digits = 0usize;
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    digits += twos.max(fives);
    let scaled = (r * BigRational::from_integer(BigInt::from(10u32).pow(digits as u32))).to_integer();
    let s = scaled.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (int, dec) = s.split_at(s.len() - digits);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{dec}")
}

fn threes(count: usize) -> Vec<usize> {
    vec![3; count]
}

/// Parameter names, minimum values and arity for each corollary formula.
fn corollary_arity(id: FormulaId) -> Option<&'static [(&'static str, usize)]> {
    match id {
        FormulaId::C57T3ell | FormulaId::C57_3ell2 | FormulaId::C57_43ell => Some(&[("l", 2)]),
        FormulaId::C57_3s23m => Some(&[("s", 1), ("m", 1)]),
        FormulaId::C57_3s23t2 => Some(&[("s", 1), ("t", 0)]),
        _ => None,
    }
}

fn check_corollary(id: FormulaId, params: &[usize]) -> Result<()> {
    let arity = corollary_arity(id)
        .ok_or_else(|| Error::Domain(format!("{id} is not a corollary formula")))?;
    if params.len() != arity.len() {
        return Err(Error::Domain(format!("{id} takes {} parameter(s)", arity.len())));
    }
    for (&(name, min), &v) in arity.iter().zip(params) {
        if v < min {
            return Err(Error::Domain(format!("{id} needs {name} >= {min}, got {v}")));
        }
    }
    Ok(())
}

/// Exact value of a corollary formula as printed.
pub fn corollary_exact(id: FormulaId, params: &[usize]) -> Result<BigRational> {
    check_corollary(id, params)?;
    let l = params[0] as i64;
    Ok(match id {
        FormulaId::C57T3ell => frac(1, 5) * pow3(2 - l) * fact_q(3 * params[0]),
        FormulaId::C57_3ell2 => pow3(-l) * fact_q(3 * params[0] + 2),
        FormulaId::C57_3s23m => {
            let (s, m) = (params[0], params[1]);
            frac(2, 25) * pow3(-((s + m) as i64)) * fact_q(3 * s + 3 * m + 2)
        }
        FormulaId::C57_3s23t2 => {
            let (s, t) = (params[0], params[1]);
            frac(2, 5) * pow3(-((s + t) as i64)) * fact_q(3 * s + 3 * t + 4)
        }
        FormulaId::C57_43ell => frac(1, 25) * pow3(2 - l) * fact_q(3 * params[0] + 4),
        _ => unreachable!("checked by check_corollary"),
    })
}

/// The compositions a corollary formula claims to count, each of which is
/// cross-checked independently.
///
/// The first family is listed as `(3^ℓ)` and `(4, 3^{ℓ-2}, 2)`: the latter
/// is the size-`3ℓ` member of the maximal family (the printed `3^{ℓ-1}`
/// has size `3ℓ + 3`).
pub fn corollary_compositions(id: FormulaId, params: &[usize]) -> Result<Vec<Composition>> {
    check_corollary(id, params)?;
    let build = |parts: Vec<usize>| Composition::new(parts);
    Ok(match id {
        FormulaId::C57T3ell => {
            let l = params[0];
            let mut alt = vec![4];
            alt.extend(threes(l - 2));
            alt.push(2);
            vec![build(threes(l))?, build(alt)?]
        }
        FormulaId::C57_3ell2 => {
            let mut p = threes(params[0]);
            p.push(2);
            vec![build(p)?]
        }
        FormulaId::C57_3s23m => {
            let (s, m) = (params[0], params[1]);
            let mut p = threes(s);
            p.push(2);
            p.extend(threes(m));
            let mut q = vec![4];
            q.extend(threes(m - 1));
            q.push(2);
            q.extend(threes(s - 1));
            q.push(2);
            vec![build(p)?, build(q)?]
        }
        FormulaId::C57_3s23t2 => {
            let (s, t) = (params[0], params[1]);
            let mut p = threes(s);
            p.push(2);
            p.extend(threes(t));
            p.push(2);
            let mut q = threes(t + 1);
            q.push(2);
            q.extend(threes(s - 1));
            q.push(2);
            vec![build(p)?, build(q)?]
        }
        FormulaId::C57_43ell => {
            let mut p = vec![4];
            p.extend(threes(params[0]));
            vec![build(p)?]
        }
        _ => unreachable!("checked by check_corollary"),
    })
}

/// Integer value of a corollary formula, or [`Error::FormulaInconsistency`]
/// carrying both the formula value and the direct count.
pub fn corollary_value(id: FormulaId, params: &[usize]) -> Result<BigCount> {
    let value = corollary_exact(id, params)?;
    to_count(&value).ok_or_else(|| Error::FormulaInconsistency {
        formula: id.to_string(),
        value: render(&value),
        reference: corollary_compositions(id, params)
            .ok()
            .and_then(|cs| cs.first().map(|c| count_fast(c).to_string())),
    })
}

/// `max P(c)` over compositions of `n >= 6`, from `n mod 3`.
pub fn theorem2_exact(n: usize) -> Result<BigRational> {
    if n < 6 {
        return Err(Error::Domain(format!("the maximum formula covers n >= 6, got {n}")));
    }
    let l = (n / 3) as i64;
    Ok(match n % 3 {
        0 => frac(1, 5) * pow3(2 - l) * fact_q(n),
        1 => frac(2, 5) * pow3(1 - l) * fact_q(n),
        _ => pow3(-l) * fact_q(n),
    })
}

pub fn theorem2_value(n: usize) -> Result<BigCount> {
    let value = theorem2_exact(n)?;
    to_count(&value).ok_or_else(|| Error::FormulaInconsistency {
        formula: FormulaId::Thm12.to_string(),
        value: render(&value),
        reference: None,
    })
}

/// A formula evaluation request for [`cross_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaCall {
    IntSingle { n: usize, a: usize, b: usize },
    IniSingle { n: usize, a: usize, b: usize },
    Int3Block { n: usize, a: usize, b: usize },
    PSingle(usize),
    P3Block(usize),
    Separation { a: Composition, b: Composition },
    Multinomial(Factorization3),
    General { pieces: Vec<Composition>, exponents: Vec<usize> },
    Corollary { id: FormulaId, params: Vec<usize> },
    Theorem2(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Agree,
    Disagree,
    /// The formula did not even produce an integer.
    NonInteger,
}

/// An independently computed value the formula is compared against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reference {
    pub label: String,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigCount,
}

/// Formula value next to its references, with a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub id: FormulaId,
    #[serde(serialize_with = "rational_as_decimal")]
    pub formula: BigRational,
    pub references: Vec<Reference>,
    pub verdict: CheckVerdict,
}

fn as_decimal<S: serde::Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn rational_as_decimal<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render(v))
}

impl CrossCheck {
    fn new(id: FormulaId, formula: BigRational, references: Vec<Reference>) -> Self {
        let verdict = match to_count(&formula) {
            None => CheckVerdict::NonInteger,
            Some(v) if references.iter().all(|r| r.value == v) => CheckVerdict::Agree,
            Some(_) => CheckVerdict::Disagree,
        };
        CrossCheck { id, formula, references, verdict }
    }

    pub fn agrees(&self) -> bool {
        self.verdict == CheckVerdict::Agree
    }
}

fn fast_ref(c: &Composition) -> Reference {
    Reference { label: format!("P({c})"), value: count_fast(c) }
}

fn int_q(v: BigCount) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Evaluates a formula and compares it with the dynamic program (for `P`
/// values) or the oracle (for `Int`/`Ini` entries).
pub fn cross_check(oracle: &Oracle, call: &FormulaCall) -> Result<CrossCheck> {
    Ok(match call {
        FormulaCall::IntSingle { n, a, b } => {
            let m = oracle.int_matrix(&Composition::single(*n)?)?;
            CrossCheck::new(
                int_single_clause(*n, *a, *b),
                int_q(int_single(*n, *a, *b)?),
                vec![Reference { label: format!("Int_{{{a},{b}}}({n})"), value: m.get(*a, *b) }],
            )
        }
        FormulaCall::IniSingle { n, a, b } => {
            let m = oracle.ini_matrix(&Composition::single(*n)?)?;
            let id = if *a == 1 { FormulaId::L32_2a } else { FormulaId::L32_2b };
            CrossCheck::new(
                id,
                int_q(ini_single(*n, *a, *b)?),
                vec![Reference { label: format!("Ini_{{{a},{b}}}({n})"), value: m.get(*a, *b) }],
            )
        }
        FormulaCall::Int3Block { n, a, b } => {
            let id = int_3block_clause(*n, *a, *b)
                .ok_or(Error::FormulaNotStated { n: *n, a: *a, b: *b })?;
            let block = Composition::new(vec![3, n - 3])?;
            let m = oracle.int_matrix(&block)?;
            CrossCheck::new(
                id,
                int_q(int_3block(oracle, *n, *a, *b)?),
                vec![Reference { label: format!("Int_{{{a},{b}}}({block})"), value: m.get(*a, *b) }],
            )
        }
        FormulaCall::PSingle(n) => CrossCheck::new(
            FormulaId::PSingle,
            int_q(p_single(*n)?),
            vec![fast_ref(&Composition::single(*n)?)],
        ),
        FormulaCall::P3Block(n) => CrossCheck::new(
            FormulaId::P3NMinus3,
            int_q(p_3block(*n)?),
            vec![fast_ref(&Composition::new(vec![3, n - 3])?)],
        ),
        FormulaCall::Separation { a, b } => CrossCheck::new(
            FormulaId::Sep51,
            int_q(separation(a, b)?),
            vec![fast_ref(&Composition::concat_all([a, &comp(&[3]), b]))],
        ),
        FormulaCall::Multinomial(f) => CrossCheck::new(
            FormulaId::Mult52,
            int_q(multinomial_count(f)?),
            vec![fast_ref(&f.reassemble())],
        ),
        FormulaCall::General { pieces, exponents } => CrossCheck::new(
            FormulaId::Gen56,
            general_count_exact(pieces, exponents)?,
            vec![fast_ref(&general_composition(pieces, exponents)?)],
        ),
        FormulaCall::Corollary { id, params } => CrossCheck::new(
            *id,
            corollary_exact(*id, params)?,
            corollary_compositions(*id, params)?.iter().map(fast_ref).collect(),
        ),
        FormulaCall::Theorem2(n) => {
            let predicted = crate::composition::predicted_maximal(*n)?;
            CrossCheck::new(
                FormulaId::Thm12,
                theorem2_exact(*n)?,
                predicted.iter().map(fast_ref).collect(),
            )
        }
    })
}

/// A closed-form value of `P(c)` when one applies directly: one part,
/// `(3, n-3)`, or the product formula on `c` or on `r'c`.
pub fn formula_count(c: &Composition) -> Option<(FormulaId, BigCount)> {
    if !c.is_admissible() {
        return None;
    }
    match c.parts() {
        [n] => return p_single(*n).ok().map(|v| (FormulaId::PSingle, v)),
        [3, m] if m + 3 >= 5 => return p_3block(m + 3).ok().map(|v| (FormulaId::P3NMinus3, v)),
        _ => {}
    }
    let via = |c: &Composition| multinomial_count(&c.three_factorization()).ok();
    via(c)
        .or_else(|| c.reverse_r().ok().and_then(|r| via(&r)))
        .map(|v| (FormulaId::Mult52, v))
}

/// Float view of a rational, for display only.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::enumerate_admissible;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn single_part_boundary_values() {
        assert_eq!(int_single(6, 6, 4).unwrap(), big(4));
        assert_eq!(int_single(6, 1, 6).unwrap(), big(0));
        assert_eq!(int_single(7, 3, 5).unwrap(), big(0));
        assert_eq!(int_single(6, 6, 6).unwrap(), big(0));
        assert_eq!(ini_single(6, 1, 6).unwrap(), big(1));
        assert_eq!(ini_single(6, 1, 4).unwrap(), big(0));
        assert_eq!(ini_single(6, 4, 6).unwrap(), big(4));
        assert!(int_single(6, 0, 6).is_err());
        assert!(int_single(6, 7, 6).is_err());
        assert!(int_single(2, 1, 2).is_err());
    }

    #[test]
    fn three_block_values() {
        let o = Oracle::default();
        assert_eq!(int_3block(&o, 6, 6, 5).unwrap(), big(8));
        assert_eq!(int_3block(&o, 6, 6, 2).unwrap(), big(2));
        // third clause as printed: Int_{3,6}(3,4) + 2 * 2^2, with Int_{3,6}(3,4) = 8 by listing
        assert_eq!(int_3block(&o, 7, 3, 7).unwrap(), big(8 + 8));
        assert!(matches!(
            int_3block(&Oracle::with_limit(8), 12, 3, 4),
            Err(Error::FormulaNotStated { n: 12, a: 3, b: 4 })
        ));
        assert!(int_3block(&o, 4, 1, 1).is_err());
    }

    #[test]
    fn small_p_values() {
        assert_eq!(p_single(5).unwrap(), big(16));
        assert_eq!(p_single(1).unwrap(), big(1));
        assert_eq!(p_3block(5).unwrap(), big(40));
        assert!(p_single(0).is_err());
        assert!(p_3block(4).is_err());
        let o = Oracle::default();
        for n in 5..=9 {
            assert_eq!(p_3block(n).unwrap(), o.count(&Composition::new(vec![3, n - 3]).unwrap()).unwrap());
        }
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation(&c("2"), &c("2")).unwrap(), big(560));
        assert_eq!(separation(&Composition::empty(), &c("2,3")).unwrap(), big(3200));
        assert_eq!(separation(&Composition::empty(), &c("1")).unwrap(), big(8));
        assert!(separation(&c("2"), &Composition::empty()).is_err());
        assert!(matches!(separation(&c("1"), &c("2")), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_count(&c("3,2").three_factorization()).unwrap(), big(40));
        assert_eq!(multinomial_count(&c("3,3,2").three_factorization()).unwrap(), big(4480));
        assert_eq!(multinomial_count(&c("2,3,2").three_factorization()).unwrap(), big(560));
        assert!(multinomial_count(&c("3,3").three_factorization()).is_err());
        assert!(multinomial_count(&c("2,2").three_factorization()).is_err());
    }

    #[test]
    fn general_examples() {
        let e = Composition::empty();
        assert_eq!(general_count(&[e.clone(), c("3")], &[1]).unwrap(), big(144));
        assert!(general_count(&[e.clone(), c("2"), c("2")], &[1, 0]).is_err());
        let v = general_count(&[e.clone(), c("2"), c("2")], &[1, 1]).unwrap();
        assert_eq!(v, count_fast(&c("3,2,3,2")));
        assert_eq!(v, big(161_280));
        assert!(general_count(&[e.clone(), e.clone()], &[1]).is_err());
        assert!(general_count(&[e], &[]).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_value(FormulaId::C57T3ell, &[2]).unwrap(), big(144));
        assert_eq!(corollary_value(FormulaId::C57_3ell2, &[2]).unwrap(), big(4480));
        assert_eq!(corollary_value(FormulaId::C57_43ell, &[2]).unwrap(), big(145_152));
        let exact = corollary_exact(FormulaId::C57_3s23m, &[1, 1]).unwrap();
        assert_eq!(render(&exact), "358.4");
        match corollary_value(FormulaId::C57_3s23m, &[1, 1]) {
            Err(Error::FormulaInconsistency { value, reference, .. }) => {
                assert_eq!(value, "358.4");
                assert_eq!(reference.as_deref(), Some("3200"));
            }
            other => panic!("expected an inconsistency, got {other:?}"),
        }
        assert!(corollary_value(FormulaId::C57T3ell, &[1]).is_err());
        assert!(corollary_value(FormulaId::C57_3s23t2, &[0, 0]).is_err());
        assert!(corollary_value(FormulaId::Sep51, &[2]).is_err());
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(theorem2_value(6).unwrap(), big(144));
        assert_eq!(theorem2_value(7).unwrap(), big(672));
        assert_eq!(theorem2_value(8).unwrap(), big(4480));
        assert!(theorem2_value(5).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&frac(1792, 5)), "358.4");
        assert_eq!(render(&frac(1, 3)), "1/3");
        assert_eq!(render(&frac(1, 8)), "0.125");
        assert_eq!(render(&frac(12, 4)), "3");
    }

    #[test]
    fn formula_ids_parse() {
        for id in FormulaId::ALL {
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
        }
        assert!("nope".parse::<FormulaId>().is_err());
    }

    #[test]
    fn formula_count_covers_common_shapes() {
        assert_eq!(formula_count(&c("5")), Some((FormulaId::PSingle, big(16))));
        assert_eq!(formula_count(&c("3,2")), Some((FormulaId::P3NMinus3, big(40))));
        assert_eq!(formula_count(&c("3,3")).map(|x| x.1), Some(big(144)));
        assert_eq!(formula_count(&c("1,2")), None);
        for n in 1..=10 {
            for comp in enumerate_admissible(n) {
                if let Some((_, v)) = formula_count(&comp) {
                    assert_eq!(v, count_fast(&comp), "{comp:?}");
                }
            }
        }
    }

    #[test]
    fn cross_check_reports_and_adjudicates() {
        let o = Oracle::default();
        let check = cross_check(&o, &FormulaCall::Corollary { id: FormulaId::C57_3s23m, params: vec![1, 1] })
            .unwrap();
        assert_eq!(check.verdict, CheckVerdict::NonInteger);
        assert_eq!(check.references[0].value, big(3200));
        assert_eq!(check.references[1].value, big(3200));
        let check = cross_check(&o, &FormulaCall::Theorem2(9)).unwrap();
        assert!(check.agrees());
        let check = cross_check(&o, &FormulaCall::IntSingle { n: 6, a: 6, b: 4 }).unwrap();
        assert_eq!(check.id, FormulaId::L32a);
        assert!(check.agrees());
        assert!(cross_check(&o, &FormulaCall::Int3Block { n: 6, a: 2, b: 3 }).is_err());
    }
}
