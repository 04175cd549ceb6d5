//! Seed splitting. Every randomised procedure draws from its own ChaCha
//! stream, keyed by the user seed and a fixed label, so results do not
//! depend on the order in which procedures run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Random stream for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label.as_bytes()));
    rng
}

/// Child seed for a sub-procedure, e.g. the `index`-th part of a pipeline.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    let mut bytes = label.as_bytes().to_vec();
    bytes.extend_from_slice(&index.to_le_bytes());
    bytes.extend_from_slice(&seed.to_le_bytes());
    fnv1a(&bytes)
}
