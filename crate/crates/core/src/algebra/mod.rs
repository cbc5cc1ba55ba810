//! Exact Lie algebra of CR(1,3) in its complex, real, physical and contracted
//! bases.

pub mod coeff;
pub mod contract;
pub mod convert;
pub mod element;
pub mod generator;
pub mod jacobi;
pub mod table;

pub use coeff::{Coef, GaussianRational};
pub use contract::{contract_table, default_scaling, ContractionRule, Scaling};
pub use convert::convert_basis;
pub use element::AlgebraElement;
pub use generator::{Family, GeneratorId, Sign};
pub use jacobi::{check_jacobi, ViolationReport};
pub use table::{bracket, structure_table, BasisKind, MetricTensor, StructureTable};
