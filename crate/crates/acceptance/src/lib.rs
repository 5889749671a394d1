//! Host crate for the `acceptance` integration test; it has no library code.
