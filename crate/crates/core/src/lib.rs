pub mod angle;
pub mod component;
pub mod error;
pub mod harness;
pub mod expansion;
pub mod interval;
pub mod lamination;
pub mod magic;
pub mod pairs;
pub mod rotation;
pub mod vein;
pub mod word;
pub mod words;
