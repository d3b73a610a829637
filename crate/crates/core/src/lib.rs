//! Exact computation with tree amplituhedra in the Grassmannian of lines in P^3.

pub mod adjoint;
pub mod error;
pub mod zinput;
pub mod grassmann;
pub mod matrix;
pub mod membership;
pub mod poly;
pub mod strata;
pub mod rat;

pub use adjoint::{AdjointPoly, GrBasis, PolygonAdjoint};
pub use error::{Error, Result};
pub use grassmann::{Chart, PlaneP3, Pluecker, PointP3};
pub use matrix::QMatrix;
pub use membership::{CellSample, CellTag, Certificate, MembershipVerdict, Sign};
pub use poly::{PolyQ, RatFun1};
pub use rat::Rat;
pub use strata::{CurveParam, Kind, SkeletonGraph, StratumId, StratumInfo, StratumType, VertexPoint};
pub use zinput::ZMatrix;
