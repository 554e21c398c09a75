//! Expression language and JSON encoding behind the `pisom` command.

pub mod expr;
pub mod json;
