//! Append-only storage with lock-free reads.
//!
//! Slots live in geometrically growing buckets that are never moved, so a
//! reference handed out by [`AppendOnly::get`] stays valid for the lifetime of
//! the arena even while other threads keep pushing.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

const FIRST_BUCKET: usize = 64;
const BUCKETS: usize = 26;

pub(crate) struct AppendOnly<T> {
    buckets: [OnceLock<Box<[OnceLock<T>]>>; BUCKETS],
    len: AtomicUsize,
}

#[inline]
fn locate(index: usize) -> (usize, usize) {
    let shifted = index + FIRST_BUCKET;
    let bucket = (usize::BITS - 1 - shifted.leading_zeros() - FIRST_BUCKET.trailing_zeros()) as usize;
    (bucket, shifted - (FIRST_BUCKET << bucket))
}

impl<T> AppendOnly<T> {
    pub(crate) fn new() -> Self {
        AppendOnly {
            buckets: std::array::from_fn(|_| OnceLock::new()),
            len: AtomicUsize::new(0),
        }
    }

    /// Number of reserved slots. Every slot below this index is either
    /// published or about to be.
    pub(crate) fn len(&self) -> usize {
        self.len.load(Ordering::Acquire)
    }

    pub(crate) fn push(&self, value: T) -> usize {
        let index = self.len.fetch_add(1, Ordering::AcqRel);
        let (bucket, offset) = locate(index);
        assert!(bucket < BUCKETS, "arena capacity exhausted");
        let slots = self.buckets[bucket].get_or_init(|| {
            (0..FIRST_BUCKET << bucket).map(|_| OnceLock::new()).collect()
        });
        if slots[offset].set(value).is_err() {
            unreachable!("slot {index} written twice");
        }
        index
    }

    /// Panics if `index` was never published.
    #[inline]
    pub(crate) fn get(&self, index: usize) -> &T {
        let (bucket, offset) = locate(index);
        self.buckets[bucket]
            .get()
            .and_then(|slots| slots[offset].get())
            .expect("read of an unpublished arena slot")
    }
}
