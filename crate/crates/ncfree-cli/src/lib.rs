//! Document schemas and report rendering shared by the `ncfree` binary and
//! its integration tests.

pub mod docs;
pub mod report;
