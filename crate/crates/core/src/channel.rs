use crate::vector::TermVector;
use crate::wiki::PivotResolution;

/// How a query vector was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Wiki(PivotResolution),
    Translation { translated: String },
}

/// A target-language query vector plus its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryChannelResult {
    pub vector: TermVector,
    pub provenance: Provenance,
}
