pub mod cli;
pub mod construct;
pub mod coverage;
pub mod fixture;
pub mod modnum;
pub mod odc;
pub mod path;
pub mod search;
