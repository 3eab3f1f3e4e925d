//! Word-level helpers for bit-packed vertex sets.

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub(crate) fn test(set: &[u64], v: usize) -> bool {
    set[v >> 6] >> (v & 63) & 1 == 1
}

#[inline]
pub(crate) fn set(set: &mut [u64], v: usize) {
    set[v >> 6] |= 1 << (v & 63);
}

#[inline]
pub(crate) fn clear(set: &mut [u64], v: usize) {
    set[v >> 6] &= !(1 << (v & 63));
}

#[inline]
pub(crate) fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates the indices of set bits in ascending order.
pub(crate) fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + b)
            }
        })
    })
}
