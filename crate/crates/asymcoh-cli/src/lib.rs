//! Wire formats of the `asymcoh` binary: rational encoding, model-document
//! schema and report documents.

pub mod ratio;
pub mod report;
pub mod schema;
