//! Exact computation of spline spaces on polytopal complexes: the spaces
//! C^r_d of piecewise polynomials, their lattice-supported subspaces built
//! from the intersection lattice of interior hyperplanes, and Hilbert
//! function / generator-degree diagnostics. All arithmetic is exact rational.

pub mod arrangement;
pub mod cli;
pub mod complex;
pub mod document;
pub mod dot;
pub mod fixtures;
pub mod hilbert;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod splines;
