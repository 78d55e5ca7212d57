pub mod algebra;
pub mod decomp;
pub mod exactnum;
pub mod nevanlinna;
pub mod series;
