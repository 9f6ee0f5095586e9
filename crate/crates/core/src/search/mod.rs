//! Obstruction search over the family of coefficient vectors in `(Z/3)^20`.

mod context;
mod obstruct;
mod scan;
mod universal;

pub use context::{build_context, SearchContext};
pub use obstruct::{is_obstructed, ScanStats, SearchReport};
pub use scan::{scan_obstructed, ScanBudget, ScanStrategy};
pub use universal::{verify_universal_vanishing, UniversalReport, VerifyMode};

pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
