//! Theorem checks: generator brackets as operator identities on truncated
//! Fock spaces, central-charge extraction, the derivative property,
//! characters from enumerated bases, and automorphism eigenspaces.

mod closed;
mod dims;
mod identities;
mod relations;

pub use closed::{c_d, closed_form, pq_closed_form, weber_identities, ClosedForm, PqClosedForm};
pub use dims::{
    compare_biseries, compare_series, fixed_subspace_dims, graded_dimension, ramond_split, DimensionReport, Eigenspace,
    GradedDimension, RamondSplit, Variant,
};
pub use identities::{consequence_identities, conformal_vector, current_vector, superconformal_vector, IdentityCheck};
pub use relations::{
    check_derivative, check_relations, free_fields, CentralCharge, DerivativeReport, RelationFailure, RelationReport,
};
