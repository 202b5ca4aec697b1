//! Fixed-size lazily initialized tables shared by the whole process.

use alloc::boxed::Box;
use once_cell::race::OnceBox;

/// `N` slots indexed by a small integer key; keys past the end are not
/// cached and the caller computes them directly.
pub(crate) struct Memo<T, const N: usize> {
    slots: [OnceBox<T>; N],
}

impl<T, const N: usize> Memo<T, N> {
    pub(crate) const fn new() -> Self {
        Memo { slots: [const { OnceBox::new() }; N] }
    }

    pub(crate) fn get(&self, key: usize, init: impl FnOnce() -> T) -> Option<&T> {
        let slot = self.slots.get(key)?;
        Some(slot.get_or_init(|| Box::new(init())))
    }
}
