//! Genotype decoders: fixed-point binary to real, and random keys to
//! permutations.

/// Fixed-point linear map of a bit segment (most significant bit first)
/// onto `[lower, upper]`: `lower + int / (2^k - 1) * (upper - lower)`.
pub fn decode_bits_to_real(bits: &[bool], lower: f64, upper: f64) -> f64 {
    debug_assert!(!bits.is_empty());
    let mut value = 0u64;
    for &b in bits {
        value = (value << 1) | b as u64;
    }
    let max = ((1u128 << bits.len()) - 1) as f64;
    lower + value as f64 / max * (upper - lower)
}

/// Random-keys decoding: argsort of the values, ascending, ties broken
/// by lower index. Always yields a valid permutation; values are
/// expected to be finite.
pub fn decode_random_keys(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx
}
