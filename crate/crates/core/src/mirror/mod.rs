//! Hypergeometric series of mirror symmetry: the quintic and Candelas'
//! formula, toric B-series, projective spaces and Grassmannians.

pub mod grassmannian;
pub mod quintic;
pub mod toric;

pub use grassmannian::{gr_loc_sum, hg_projective, hori_vafa_series, GrassCohom, HoriVafaReport, ProjectiveHg};
pub use quintic::{candelas, multiple_cover, multiple_cover_invert, quintic_hg, Candelas, QuinticHg};
pub use toric::{toric_b_series, ToricSpec};
