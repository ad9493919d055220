//! Rigged paths: admissibility, degree, bounded enumeration, graded
//! characters and the translation to monomial exponents.

mod admissible;
mod degree_bound;
mod enumerate;
mod exponents;
mod path;

pub use admissible::{check_structure, first_violation, is_admissible, path_admissible, path_degree, Rules, Violation};
pub(crate) use admissible::{degree_scaled, require_admissible, unscale, window_ladder};
pub use enumerate::{
    char_paths, char_paths_total, char_paths_with, enumerate_paths, enumerate_paths_with, enumerate_with_degrees,
    min_degree, PathCharacter, DEFAULT_L_CAP,
};
pub(crate) use enumerate::enumerate_scaled;
pub use exponents::{
    exponents_from_path, monomial_violation, p3_admissible, path_from_exponents, w3_monomial_admissible,
    ExponentViolation, MonomialExponents,
};
pub use path::{PathJson, RiggedPath};
