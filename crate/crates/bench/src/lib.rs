//! Shared inputs for the criterion benches.

use peaklab::{predicted_maximal, Composition};

/// One maximal composition of `n` (the lexicographically smallest).
pub fn maximal_of(n: usize) -> Composition {
    predicted_maximal(n)
        .expect("n >= 6")
        .into_iter()
        .next()
        .expect("family is nonempty")
}
