pub mod algebra;
pub mod weyl;
pub mod godiagram;
pub mod network;
pub mod marshrietsch;
pub mod strata;
pub mod cli;
