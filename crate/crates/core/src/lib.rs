//! Exact invariants of plane branches.
//!
//! Given an irreducible Weierstrass polynomial `f(x, y)` this crate computes its
//! characteristic approximate roots, the semigroup of the branch, and the family
//! of approximate jacobian Newton diagrams `N_J(f^(k), f)`, both from a closed
//! arithmetic formula ([`jnd`]) and independently from a numerical
//! Newton–Puiseux decomposition of the jacobians ([`puiseux`]).
//!
//! Module map:
//!
//! - [`poly`]: exact bivariate polynomials over the rationals, jacobians,
//!   resultants, intersection multiplicities and Milnor numbers.
//! - [`diagram`]: Newton diagrams in canonical (elementary segment) form.
//! - [`branch`]: approximate roots, Puiseux characteristic and semigroup.
//! - [`jnd`]: the approximate jacobian Newton diagram formula and the
//!   recovery of the semigroup from a diagram family.
//! - [`puiseux`]: numerical Newton–Puiseux expansions, contact orders and
//!   contact-class verification.
//! - [`parse`]: the polynomial expression language used by the CLI.

pub mod branch;
pub mod diagram;
mod error;
pub mod jnd;
pub mod parse;
pub mod poly;
pub mod puiseux;

pub use branch::{
    approximate_root, approximate_root_semigroup, build_test_branch, char_to_semigroup,
    characteristic_roots, milnor_from_semigroup, random_semigroup, semigroup_of, semigroup_to_char,
    Branch, CharSequence, Semigroup,
};
pub use diagram::{ElementarySegment, Extent, Inclination, NewtonDiagram, RenderFormat};
pub use error::{Error, Result};
pub use jnd::{
    jacobian_invariants, jnd_family, jnd_formula, jnd_segments, parse_family_json,
    recover_semigroup, recover_semigroup_indexed, FamilyDocument, JndFamily,
};
pub use parse::parse_poly;
pub use poly::{
    intersection_multiplicity, jacobian_det, milnor_number, resultant_y, BiPoly, Multiplicity, Var,
};
pub use puiseux::{
    contact, contact_classes, contact_sets, jnd_oracle, puiseux_expand, verify_decomposition,
    Check, ContactClass, ContactOrder, Expansion, Precision, PuiseuxSeries, VerificationReport,
};
