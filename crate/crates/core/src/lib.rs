pub mod audit;
pub mod check;
pub mod diagram;
pub mod pipeline;
pub mod probe;
pub mod rdf;
pub mod report;
pub mod scaffold;
pub mod vocab;

pub use check::{CheckResult, Evidence, Severity, Status};
pub use rdf::{OntologyModel, RdfError, RdfFormat, Term, Triple};
