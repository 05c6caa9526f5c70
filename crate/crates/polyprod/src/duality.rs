//! Alexander-dual complementarity: complementary sphere-pair instances and
//! the bigraded dimension pairing between a space and its complement, plus
//! standalone combinatorial Alexander duality.

use crate::chains::{augmented_complex, betti_dims, GradedDims};
use crate::exactlin::Field;
use crate::factors::{sphere_pair, FactorError};
use crate::hochster::{betti, index_set, HochsterError, Instance};
use crate::simplicial::{SimplicialComplex, VertexSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("expected {expected} sphere parameters for ground size, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("sphere parameters at factor {index} need 0 ≤ k ≤ r, got (r={r}, k={k})")]
    BadParams { index: usize, r: i64, k: i64 },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Hochster(#[from] HochsterError),
}

/// A moment-angle instance whose factors are all sphere pairs
/// (S^{r_i+1}, S^{k_i}), determined by K and the parameter list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpherePairInstance {
    complex: SimplicialComplex,
    params: Vec<(i64, i64)>,
    field: Field,
}

impl SpherePairInstance {
    pub fn new(
        complex: SimplicialComplex,
        params: Vec<(i64, i64)>,
        field: Field,
    ) -> Result<SpherePairInstance, DualityError> {
        if params.len() != complex.ground() {
            return Err(DualityError::WrongLength {
                expected: complex.ground(),
                got: params.len(),
            });
        }
        for (i, &(r, k)) in params.iter().enumerate() {
            if k < 0 || k > r {
                return Err(DualityError::BadParams { index: i + 1, r, k });
            }
        }
        Ok(SpherePairInstance { complex, params, field })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn params(&self) -> &[(i64, i64)] {
        &self.params
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the ambient product of the X_i = S^{r_i+1}.
    pub fn total_dimension(&self) -> i64 {
        self.params.iter().map(|&(r, _)| r + 1).sum()
    }

    /// The complement instance: K goes to its Alexander dual and each inner
    /// sphere S^k to its linking sphere S^{r−k} inside S^{r+1}.
    pub fn complementary(&self) -> SpherePairInstance {
        SpherePairInstance {
            complex: self.complex.alexander_dual(),
            params: self.params.iter().map(|&(r, k)| (r, r - k)).collect(),
            field: self.field,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, DualityError> {
        let factors = self
            .params
            .iter()
            .map(|&(r, k)| sphere_pair(r as usize, k as usize, self.field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance::new(self.field, self.complex.clone(), factors)?)
    }
}

/// All shifts v with dim left_s = dim right_{v−s} for every s, or None when
/// both sides vanish identically (every shift matches vacuously).
pub fn matching_shifts(left: &GradedDims, right: &GradedDims) -> Option<Vec<i64>> {
    if left.is_zero() && right.is_zero() {
        return None;
    }
    if left.is_zero() || right.is_zero() {
        return Some(Vec::new());
    }
    let (llo, lhi) = (left.min_degree().unwrap(), left.max_degree().unwrap());
    let (rlo, rhi) = (right.min_degree().unwrap(), right.max_degree().unwrap());
    let mut out = Vec::new();
    for v in (llo + rlo)..=(lhi + rhi) {
        let ok = (llo.min(v - rhi)..=lhi.max(v - rlo))
            .all(|s| left.dim(s) == right.dim(v - s));
        if ok {
            out.push(v);
        }
    }
    Some(out)
}

/// Reduced-homology comparison of L against its Alexander dual on the full
/// ground set [t]: the pairing s ↔ t−s−3 should hold degreewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdReport {
    pub t: usize,
    pub left: GradedDims,
    pub right: GradedDims,
    /// Total s + s′ at which the pairing is expected, i.e. t − 3.
    pub expected_shift: i64,
    /// Shifts that actually match; None when both sides are zero.
    pub shifts: Option<Vec<i64>>,
    pub holds: bool,
}

pub fn ad_check(l: &SimplicialComplex, field: Field) -> AdReport {
    let t = l.ground();
    let dual = l.alexander_dual();
    let left = betti_dims(&augmented_complex(l, field).complex);
    let right = betti_dims(&augmented_complex(&dual, field).complex);
    let expected_shift = t as i64 - 3;
    let shifts = matching_shifts(&left, &right);
    let holds = shifts.as_ref().is_none_or(|s| s.contains(&expected_shift));
    AdReport { t, left, right, expected_shift, shifts, holds }
}

/// One (σ, ω) pair's duality status: the summand dimensions of M at (σ, ω)
/// against those of M^c at (σ̃, ω) under d ↔ r−d−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDuality {
    pub sigma: VertexSet,
    pub omega: VertexSet,
    pub sigma_tilde: VertexSet,
    pub holds: bool,
    /// Shifts d + d′ that would match; None when both summands vanish.
    pub shifts: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// Σ (r_i + 1): the pairing compares degree d with r_total − d − 1.
    pub r_total: i64,
    pub pairs: Vec<PairDuality>,
    pub all_hold: bool,
}

/// Alexander duality at the dimension level: for every pair with ω ≠ φ on
/// either side, dim H^{σ,ω}_d(M) must equal dim H^{σ̃,ω}_{r−d−1}(M^c) with
/// σ̃ = [m]∖(σ∪ω). Failures are report content, not errors.
pub fn duality_check(s: &SpherePairInstance) -> Result<DualityReport, DualityError> {
    let m = s.complex.ground();
    let comp = s.complementary();
    let inst = s.to_instance()?;
    let inst_c = comp.to_instance()?;
    let b = betti(&inst);
    let b_c = betti(&inst_c);
    let r_total = s.total_dimension();

    let mut keys: Vec<(VertexSet, VertexSet)> = Vec::new();
    for p in index_set(&inst) {
        if !p.omega.is_empty() {
            keys.push((p.sigma, p.omega));
        }
    }
    let full = VertexSet::full(m);
    for p in index_set(&inst_c) {
        if !p.omega.is_empty() {
            let mirrored = (full.minus(p.sigma.union(p.omega)), p.omega);
            if !keys.contains(&mirrored) {
                keys.push(mirrored);
            }
        }
    }
    keys.sort();

    let empty = GradedDims::new();
    let mut pairs = Vec::with_capacity(keys.len());
    for (sigma, omega) in keys {
        let sigma_tilde = full.minus(sigma.union(omega));
        let left = b.pair_dims(sigma, omega).unwrap_or(&empty);
        let right = b_c.pair_dims(sigma_tilde, omega).unwrap_or(&empty);
        let shifts = matching_shifts(left, right);
        let holds = shifts.as_ref().is_none_or(|v| v.contains(&(r_total - 1)));
        pairs.push(PairDuality { sigma, omega, sigma_tilde, holds, shifts });
    }
    let all_hold = pairs.iter().all(|p| p.holds);
    Ok(DualityReport { r_total, pairs, all_hold })
}
