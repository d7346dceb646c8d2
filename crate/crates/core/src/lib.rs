//! Exact mixed volumes, polynomial systems over the Gaussian rationals, and three routes to
//! the Brouwer degree of a polynomial map at 0 (mixed volume, zero count, mollified integral).

pub mod degree;
pub mod error;
pub mod exactgeom;
pub mod numeric;
pub mod perturb;
pub mod pipeline;
pub mod polysys;
pub mod qmc;
pub mod rational;
pub mod rootfind;

pub use degree::{
    consistency_check, degree_via_integral, degree_via_mv, degree_via_roots, mollifier_normalizer,
    DegreeIntegralConfig, DegreeOptions, DegreeReport, IntegralEstimate, Method, MollifierSpec,
};
pub use error::{Error, Result};
pub use exactgeom::{
    convex_hull, minkowski_sum, mixed_volume, mixed_volume_ie, mixed_volume_interp, volume_exact,
    zonotope_mixed_volume, zonotope_support, LatticeSupport, MixedVolumeResult, MvMethod, RationalPolytope,
    Zonotope,
};
pub use perturb::{
    make_regular_instance, perturb_system, rationalize, rationalize_complex, rouche_radius, PerturbationPlan,
    RegularInstance,
};
pub use pipeline::{count_real_zeros_view, permanent_ryser, reduce_permanent, IntMatrix, ReductionTrace};
pub use polysys::{
    parse_system, random_system_on_supports, randomize_constants, GaussianRational, PolySystem, RealSystem,
    SparsePoly,
};
pub use rootfind::{
    certify_regular, multistart_newton, root_bound, solve_decoupled, NewtonConfig, RegularityCertificate, RootSet,
};
