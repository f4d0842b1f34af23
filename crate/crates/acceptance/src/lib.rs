//! Holds no code. The criteria live in `tests/acceptance.rs`, which reuses
//! the property suites of the other crates.
