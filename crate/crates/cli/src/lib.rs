//! Library half of the `sullivan` binary: the text format for describing
//! algebras, the report structure every command emits, and the command
//! implementations themselves.

pub mod input;
pub mod report;
pub mod run;
