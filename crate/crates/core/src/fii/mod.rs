//! Finite-integer-index replacement: boundary signatures, replacement
//! tables, protrusion replacement and the kernelization loop.

pub mod io;
mod replace;
mod signature;
mod table;

pub use replace::{kernelize, replace_protrusion, KernelInstance, KernelizeOptions, Replacement, Skip, TraceStep};
pub use signature::{
    compute_signature, compute_signature_brute, compute_signature_dp, state_space, test_equivalence, Signature,
    SignatureClass, BRUTE_SIGNATURE_BUDGET, NEED,
};
pub use table::{
    build_replacement_table, build_replacement_table_with, CertificationReport, ReplacementTable, TableOptions,
    TableRow, MAX_SIZE_BOUND, MAX_TABLE_T,
};
