//! Decision engine for linear recurrence sequences with rational data.

pub mod bounds;
pub mod decide;
pub mod density;
pub mod error;
pub mod lrs;
pub mod poly;
pub mod rigor;
pub mod roots;

pub use bounds::{
    b_height_bound, bounds_from_parameters, bounds_from_parameters_at, matveev_lower, BigBound,
    BoundCase, BoundInputs, BoundReport,
};
pub use decide::{
    classify, classify_at, decide_positivity, decide_positivity_at, decide_skolem,
    decide_skolem_at, decide_upp, decide_upp_at, sharp_cutoff, solve_coefficients_interval,
    Answer, CaseTag, CoefficientIntervals, Mode, Problem, SignCertificate, Verdict, Witness,
};
pub use density::{density_scan, DensityReport, Family};
pub use error::Error;
pub use lrs::{
    integer_rescaling, iterate_terms, minimal_annihilator, primitive_char_poly,
    rational_from_str, rational_to_string, validate_lrs, weil_height_rational, IntegerRescaling,
    LRSpec, Rational, TermStream,
};
pub use poly::IntPolynomial;
pub use rigor::{BigFloat, ComplexBall, RealInterval, Round, PRECISION_CAP};
pub use roots::{isolate_roots, root_profile, root_profile_at, RootBox, RootProfile};
