pub mod graph;
pub mod report;
pub mod rng;
pub mod weighting;
pub mod mis;
pub mod decompose;
pub mod bounds;
pub mod cli;
