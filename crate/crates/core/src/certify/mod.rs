//! Independent verification of homotopies and coincidence sets.

mod conjugacy;
mod hom;
mod oracle;
mod word;

pub use conjugacy::simultaneously_conjugate;
pub use hom::{
    certificate, circle_degree, circle_degrees, homs_conjugate, induced_hom, maps_homotopic, nielsen_circle,
    Certificate, InducedHom,
};
pub use oracle::grid_oracle;
pub use word::{free_reduce, Letter, Word};
