//! Formula-free machinery: denumerants, p-Apéry sets, and the two oracle
//! routes (Apéry-based and direct scan) to g_p and n_p.

mod apery;
mod denumerant;
mod generators;
mod oracle;

pub use apery::AperyTable;
pub use denumerant::{denumerant, denumerant_table, denumerant_with, DenumerantTable};
pub use generators::{gcd_of, GeneratorTuple};
pub use oracle::{
    apery_set, p_frobenius_scan, p_frobenius_via_apery, p_sylvester_count, p_sylvester_via_apery,
    Oracle,
};

/// Default cap on denumerant table entries.
pub const DEFAULT_TABLE_CAP: usize = 100_000_000;

/// Resource bounds for table-driven computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub table_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}
