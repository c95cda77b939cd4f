pub mod curve;
pub mod divisor;
pub mod factor;
pub mod field;
pub mod integrate;
pub mod jacobian;
pub mod linalg;
pub mod poly;
mod series;
pub mod torsion;
