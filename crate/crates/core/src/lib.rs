pub mod characters;
pub mod cli;
pub mod cyclepoly;
pub mod error;
pub mod fbmodules;
pub mod frobenius;
pub mod linalg;
pub mod partitions;
pub mod pieri;
pub mod stability;
