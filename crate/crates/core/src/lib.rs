pub mod arith;
pub mod bundle;
pub mod dend;
pub mod omega;
pub mod series;
pub mod tree;
pub mod verify;
