//! Exact computation of the homology coalgebra and cohomology algebra of
//! polyhedral products Z_K(X, A) over ℚ or a prime field.
//!
//! The pipeline, bottom to top:
//!
//! * [`exactlin`]: arbitrary-precision scalars and dense exact linear algebra;
//! * [`simplicial`]: bitmask simplicial complexes, link/star/restriction and
//!   Alexander duals;
//! * [`chains`]: (augmented, relative) chain complexes, homology with
//!   deterministic cycle representatives, Alexander–Whitney diagonals;
//! * [`factors`]: per-factor analysis of a pair A ⊆ X: kernel / image /
//!   cokernel of the induced map on homology, plus homology coproducts;
//! * [`hochster`]: the direct-sum (Hochster-type) Betti decomposition and an
//!   independent minimal-model chain complex;
//! * [`structure`]: nerve-style cover complexes, their component
//!   decomposition, and the coproduct / dual-product structure constants;
//! * [`duality`]: Alexander-duality checks for sphere-pair instances;
//! * [`oracle`]: a brute-force cellular chain model of Z_K(X, A) used to
//!   cross-check every other pipeline.

pub mod chains;
pub mod duality;
pub mod exactlin;
pub mod factors;
pub mod hochster;
pub mod oracle;
pub mod simplicial;
pub mod structure;
