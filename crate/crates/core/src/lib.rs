//! Exact-arithmetic toolkit for piercing experiments on planar convex
//! families: intersection combinatorics, piercing-number oracles, exact
//! rational LPs, weak epsilon-nets and clique approximation.

pub mod bounds;
pub mod budget;
pub mod clique;
pub mod family;
pub mod fileformat;
pub mod geometry;
pub mod instances;
pub mod pierce;
pub mod suite;

pub use budget::{Budget, BudgetExceeded};
pub use family::{Family, FamilyError, IntersectionGraph, PQDecision, TupleStats};
pub use geometry::{BodyId, ConvexBody, ConvexPolygon, Point2, Rat};
pub use pierce::{LPResult, PiercingSet, WeightedPoints};
