//! Exact integer helpers shared by the counting paths.

use num_bigint::BigUint;
use num_traits::One;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

pub fn factorial(n: usize) -> BigCount {
    (2..=n).fold(BigCount::one(), |acc, k| acc * k)
}

pub fn pow2(exp: usize) -> BigCount {
    BigCount::one() << exp
}

pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigCount::default();
    }
    num_integer::binomial(BigCount::from(n), BigCount::from(k))
}

/// Multinomial coefficient `(sum blocks)! / prod(block!)`.
pub fn multinomial(blocks: &[usize]) -> BigCount {
    let mut total = 0;
    let mut acc = BigCount::one();
    for &b in blocks {
        total += b;
        acc *= binomial(total, b);
    }
    acc
}
