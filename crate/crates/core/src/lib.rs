//! Root-and-pattern morphology and an embedding-geometry harness for testing
//! whether denominal verbs sit closer to their base nouns than root-derived
//! verbs do.

pub mod cli;
pub mod datasetgen;
pub mod hypotheses;
pub mod linalg;
pub mod morphology;
pub mod reduction;
pub mod synthgeom;
pub mod vectors;
