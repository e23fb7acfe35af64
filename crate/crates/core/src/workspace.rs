//! Workspace accounting.
//!
//! Algorithms declare their mutable state by opening a [`Frame`] sized in
//! machine words. Growable containers charge their contents explicitly. The
//! read-only polygon and the write-only output path are never charged.

use std::cell::Cell;
use std::mem::size_of;
use std::time::Duration;

/// Number of machine words needed to hold a `T`.
pub const fn words_of<T>() -> usize {
    size_of::<T>().div_ceil(size_of::<usize>())
}

/// Peak/current counter of live mutable words for one algorithm invocation.
#[derive(Debug, Default)]
pub struct WorkspaceMeter {
    current: Cell<usize>,
    peak: Cell<usize>,
}

impl WorkspaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn current(&self) -> usize {
        self.current.get()
    }

    pub fn peak(&self) -> usize {
        self.peak.get()
    }

    pub fn charge(&self, words: usize) {
        let now = self.current.get() + words;
        self.current.set(now);
        if now > self.peak.get() {
            self.peak.set(now);
        }
    }

    pub fn release(&self, words: usize) {
        let cur = self.current.get();
        debug_assert!(words <= cur, "releasing more words than charged");
        self.current.set(cur.saturating_sub(words));
    }

    /// Charges `words` until the returned guard is dropped.
    pub fn frame(&self, words: usize) -> Frame<'_> {
        self.charge(words);
        Frame { meter: self, words }
    }

    /// Charges the size of `T` until the guard is dropped.
    pub fn frame_of<T>(&self) -> Frame<'_> {
        self.frame(words_of::<T>())
    }
}

/// RAII charge on a [`WorkspaceMeter`].
#[derive(Debug)]
pub struct Frame<'a> {
    meter: &'a WorkspaceMeter,
    words: usize,
}

impl Frame<'_> {
    /// Adjusts this frame by `delta` words (container growth or shrinkage).
    pub fn grow(&mut self, words: usize) {
        self.meter.charge(words);
        self.words += words;
    }

    pub fn shrink(&mut self, words: usize) {
        let w = words.min(self.words);
        self.meter.release(w);
        self.words -= w;
    }
}

impl Drop for Frame<'_> {
    fn drop(&mut self) {
        self.meter.release(self.words);
    }
}

/// Processor time consumed by this process (user + system).
pub fn process_cpu_time() -> Duration {
    let mut ts = libc::timespec {
        tv_sec: 0,
        tv_nsec: 0,
    };
    // SAFETY: `ts` is a valid, writable timespec and the clock id is a constant.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_PROCESS_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return Duration::ZERO;
    }
    Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32)
}
