//! # fuzzy-prokhorov
//!
//! A fuzzy analogue of the Prokhorov metric on probability measures over
//! finite fuzzy metric spaces, with the Łukasiewicz t-norm
//! `a ⋆ b = max(a + b − 1, 0)` fixed throughout.
//!
//! For measures `μ, ν` on a fuzzy metric space `(X, M, ⋆)`:
//!
//! ```text
//! M̂(μ, ν, t) = 1 − inf { r ∈ (0, 1) : μ(A) ≤ ν(A^{r,t}) + r,
//!                                       ν(A) ≤ μ(A^{r,t}) + r  for all A ⊆ X }
//! ```
//!
//! where `A^{r,t}` is the union of open balls `B(x, r, t) = { y : M(x, y, t) > 1 − r }`
//! over `x ∈ A`. `M̂` is itself a fuzzy metric on the measures, the Dirac
//! embedding `x ↦ δ_x` is isometric, and pushforward along a nonexpanding
//! map is nonexpanding.
//!
//! ## Modules
//!
//! | Module | Contents |
//! |---|---|
//! | [`space`] | [`FuzzySpace`], open balls, neighborhoods |
//! | [`axioms`] | [`validate_axioms`] |
//! | [`map`] | [`PointMap`], [`check_nonexpanding`] |
//! | [`measure`] | [`Measure`], Dirac, pushforward, sampling, flattening |
//! | [`prokhorov`] | exact evaluators [`prokhorov_flow`] and [`prokhorov_brute`] |
//! | [`experiment`] | curves, empirical convergence, flattening probe |
//! | [`extension`] | metric extension through measures, terminal point |
//! | [`io`] | JSON file formats |
//!
//! ## Example
//!
//! ```
//! use std::sync::Arc;
//! use fuzzy_prokhorov::{dirac, prokhorov_flow, FuzzySpace, Measure, TimeScale};
//!
//! let labels = vec!["x".to_string(), "y".to_string()];
//! let space = Arc::new(FuzzySpace::standard(labels, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
//! let t = TimeScale::new(1.0).unwrap();
//!
//! // Dirac measures are exactly as far apart as their points: 1 / (1 + 1).
//! let x = dirac(space.clone(), 0).unwrap();
//! let y = dirac(space.clone(), 1).unwrap();
//! assert_eq!(prokhorov_flow(&x, &y, t).unwrap().value, 0.5);
//!
//! // Moving a quarter of the mass costs a radius of 0.25.
//! let mix = Measure::new(space, [(0, 0.75), (1, 0.25)]).unwrap();
//! assert_eq!(prokhorov_flow(&x, &mix, t).unwrap().value, 0.75);
//! ```

pub mod axioms;
pub mod error;
pub mod experiment;
pub mod extension;
pub mod flow;
pub mod io;
pub mod map;
pub mod measure;
pub mod prokhorov;
pub mod random;
pub mod space;
pub mod tnorm;

pub use axioms::{validate_axioms, validate_axioms_with, AxiomReport, Violation, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use experiment::{
    convergence_experiment, meta_prokhorov, prokhorov_curve, psi_nonexpansion_probe, ConvergenceReport,
    ConvergenceRow, MetricCurve, PsiProbeReport, PsiTrial,
};
pub use extension::{
    adjoin_terminal, default_t_grid, extend_metric, log_grid, plan_embedding, EmbeddingPlan, EmbeddingStrategy,
    ExtendedSpace, TERMINAL_LABEL,
};
pub use map::{check_nonexpanding, ExpansionWitness, PointMap};
pub use measure::{dirac, flatten, pushforward, sample_empirical, total_variation, Measure, MetaMeasure};
pub use prokhorov::{
    feasible, hall_deficiency, prokhorov, prokhorov_brute, prokhorov_brute_capped, prokhorov_flow, Adjacency,
    BreakpointSweep, Method, ProkhorovResult, Side, Witness,
};
pub use space::{in_ball, neighborhood, FuzzySpace, Generator, PointSet, Radius, TimeScale};
pub use tnorm::luk;
