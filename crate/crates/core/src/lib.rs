//! Hull spectra of matrix groups.
//!
//! A matrix group `G` determines a region of the complex plane: the set of
//! eigenvalues attained by convex combinations of its elements (its *hull
//! spectrum*). This crate constructs the classical finite matrix groups
//! (cyclic scalars, dihedral and quaternion irreducibles, permutation
//! representations, regular representations from Cayley tables), samples
//! their convex hulls deterministically, and checks the harvested spectra
//! against polygonal eigenvalue regions with signed margins.
//!
//! Module map:
//! - [`linalg`]: dense complex matrices and a small non-symmetric eigensolver
//! - [`groups`]: group construction (closures, irreducibles, Cayley tables)
//! - [`regions`]: polygons of roots of unity, discs, hulls, membership tests
//! - [`explore`]: convex-combination sampling, spectrum clouds, rasters
//! - [`paperchecks`]: executable verification suites with margin reports

pub mod explore;
pub mod groups;
pub mod linalg;
pub mod paperchecks;
pub mod regions;

pub use num_complex::Complex64;
