//! Shared fixtures for the criterion benchmarks.

use raag_core::{DefiningGraph, Raag, Word};

/// Deterministic pseudo-random word of `len` letters (64-bit LCG).
pub fn lcg_word(raag: &Raag, len: usize, seed: u64) -> Word {
    let mut state = seed;
    let k = 2 * raag.rank() as u64;
    let letters = (0..len)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            raag_core::Letter::from_code(((state >> 33) % k) as usize)
        })
        .collect();
    Word::from_letters(letters)
}

/// The graphs the benchmarks sweep over.
pub fn bench_graphs() -> Vec<(&'static str, DefiningGraph)> {
    vec![
        ("F3", DefiningGraph::edgeless(3)),
        ("P4", DefiningGraph::path(4)),
        ("C5", DefiningGraph::cycle(5)),
        ("K4", DefiningGraph::complete(4)),
    ]
}
