//! Shared test data.

/// `A1 × A1` with the four-element boolean lattice.
pub(crate) const BOOLEAN_SQUARE: &str = "\
rank 2
idempotent 11
idempotent 10
idempotent 01
idempotent 00
meet 11 10 10
meet 11 01 01
meet 11 00 00
meet 10 01 00
meet 10 00 00
meet 01 00 00
upper 11 1,2
upper 10 1
lower 10 2
upper 01 2
lower 01 1
lower 00 1,2
";
