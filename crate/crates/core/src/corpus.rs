//! Deterministic curve corpora for the verification suites and the audit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{make_relaxed, MultiCurve};
use crate::disk::PuncturedDisk;
use crate::error::Result;
use crate::twist::{apply_word, TwistWord};

/// All essential relaxed curves on the disk.
pub fn relaxed_curves(disk: PuncturedDisk) -> Vec<MultiCurve> {
    let n = disk.punctures();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if (i, j) == (1, n) {
                continue;
            }
            out.push(make_relaxed(disk, i, j).expect("valid relaxed curve"));
        }
    }
    out
}

/// Relaxed curves plus images under seeded random twist words.
pub fn twisted_corpus(
    disk: PuncturedDisk,
    words_per_seed: usize,
    max_word_length: usize,
    seed: u64,
) -> Result<Vec<MultiCurve>> {
    let generators = relaxed_curves(disk);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = generators.clone();
    for base in &generators {
        for _ in 0..words_per_seed {
            let len = rng.gen_range(1..=max_word_length);
            let word = TwistWord::sample(&mut rng, generators.len(), len);
            out.push(apply_word(&word, base, &generators)?);
        }
    }
    Ok(out)
}
