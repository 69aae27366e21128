//! Inputs shared by the benchmarks.

use rbd_core::{HJTuple, Lens};

/// Lens spaces with `b = (4, 2, 4, 2, ...)` of length `k`, for `k` in `ks`.
pub fn alternating_lenses(ks: impl IntoIterator<Item = usize>) -> Vec<Lens> {
    ks.into_iter()
        .map(|k| {
            let b = HJTuple::new((0..k).map(|i| if i % 2 == 0 { 4 } else { 2 }).collect()).expect("entries are >= 2");
            Lens::from_b(&b).expect("valid expansion")
        })
        .collect()
}
