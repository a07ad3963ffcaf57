pub mod error;
pub mod factors;
pub mod generators;
pub mod morphism;
pub mod word;
pub mod complexity;
pub mod rauzy;
pub mod tm_structure;
pub mod verify;
