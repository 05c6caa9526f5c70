//! Abstract simplicial complexes on a ground set [m] = {1,…,m}, m ≤ 30.
//!
//! Faces are bitmasks; the face family is a sorted set (by cardinality, then
//! mask value) so iteration order is canonical everywhere downstream. The
//! void complex {} (no faces at all) and the complex {φ} (only the empty
//! face) are distinct values with distinct reduced homology.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub const MAX_GROUND: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("ground set size {0} exceeds the bitmask cap {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("vertex {vertex} lies outside the ground set [{ground}]")]
    VertexOutOfRange { vertex: usize, ground: usize },
    #[error("void complex cannot carry facets")]
    VoidWithFacets,
    #[error("{0} is not a face of the complex")]
    NotAFace(VertexSet),
    #[error("σ = {sigma} and ω = {omega} must be disjoint")]
    NotDisjoint { sigma: VertexSet, omega: VertexSet },
}

/// A subset of [m] packed into a bitmask. Vertices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn empty() -> VertexSet {
        VertexSet(0)
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet::empty().with(v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
        let mut s = VertexSet::empty();
        for v in vs {
            s = s.with(v);
        }
        s
    }

    /// The full set {1,…,m}.
    pub fn full(m: usize) -> VertexSet {
        assert!(m <= MAX_GROUND);
        VertexSet(if m == 0 { 0 } else { (1u32 << m) - 1 })
    }

    pub(crate) fn from_bits(bits: u32) -> VertexSet {
        VertexSet(bits)
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_GROUND && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: usize) -> VertexSet {
        assert!((1..=MAX_GROUND).contains(&v), "vertex {v} out of range");
        VertexSet(self.0 | 1 << (v - 1))
    }

    pub fn without(self, v: usize) -> VertexSet {
        assert!((1..=MAX_GROUND).contains(&v), "vertex {v} out of range");
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn inter(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement_in(self, m: usize) -> VertexSet {
        VertexSet::full(m).minus(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Simplex dimension: |s| − 1 (the empty face has dimension −1).
    pub fn dim(self) -> i64 {
        self.card() as i64 - 1
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        (1..=MAX_GROUND).filter(move |&v| self.contains(v))
    }

    /// All subsets in ascending mask order ({} first, self last).
    pub fn subsets(self) -> Vec<VertexSet> {
        let mask = self.0;
        let mut out = Vec::with_capacity(1 << self.card());
        let mut sub = mask;
        loop {
            out.push(VertexSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        out.reverse();
        out
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A simplicial complex on ground set [m]. The ground set may exceed the
/// vertex set (isolated ground elements are allowed and matter for
/// Alexander duals and restrictions).
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    faces: BTreeSet<VertexSet>,
}

impl SimplicialComplex {
    /// The void complex {}: no faces, not even φ.
    pub fn void(ground: usize) -> SimplicialComplex {
        assert!(ground <= MAX_GROUND);
        SimplicialComplex { ground, faces: BTreeSet::new() }
    }

    /// The complex {φ} whose only face is the empty simplex.
    pub fn empty(ground: usize) -> SimplicialComplex {
        assert!(ground <= MAX_GROUND);
        let mut faces = BTreeSet::new();
        faces.insert(VertexSet::EMPTY);
        SimplicialComplex { ground, faces }
    }

    /// The full simplex 2^[m].
    pub fn full(ground: usize) -> SimplicialComplex {
        assert!(ground <= MAX_GROUND);
        let faces = VertexSet::full(ground).subsets().into_iter().collect();
        SimplicialComplex { ground, faces }
    }

    pub fn from_facets(
        ground: usize,
        facets: &[VertexSet],
        void_flag: bool,
    ) -> Result<SimplicialComplex, SimplicialError> {
        if ground > MAX_GROUND {
            return Err(SimplicialError::GroundTooLarge(ground));
        }
        if void_flag {
            if !facets.is_empty() {
                return Err(SimplicialError::VoidWithFacets);
            }
            return Ok(SimplicialComplex::void(ground));
        }
        let full = VertexSet::full(ground);
        let mut faces = BTreeSet::new();
        faces.insert(VertexSet::EMPTY);
        for &f in facets {
            if !f.is_subset_of(full) {
                let vertex = f.minus(full).vertices().next().expect("offending vertex");
                return Err(SimplicialError::VertexOutOfRange { vertex, ground });
            }
            faces.extend(f.subsets());
        }
        Ok(SimplicialComplex { ground, faces })
    }

    pub(crate) fn from_faces(ground: usize, faces: BTreeSet<VertexSet>) -> SimplicialComplex {
        debug_assert!(ground <= MAX_GROUND);
        debug_assert!(
            faces.is_empty() || faces.contains(&VertexSet::EMPTY),
            "non-void complex must contain φ"
        );
        debug_assert!(faces.iter().all(|f| {
            f.vertices().all(|v| faces.contains(&f.without(v)))
        }));
        SimplicialComplex { ground, faces }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: VertexSet) -> bool {
        self.faces.contains(&f)
    }

    pub fn faces(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.faces.iter().copied()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// None for the void complex; −1 for {φ}.
    pub fn dim(&self) -> Option<i64> {
        self.faces.iter().next_back().map(|f| f.dim())
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.faces.iter().fold(VertexSet::EMPTY, |acc, &f| acc.union(f))
    }

    /// Maximal faces, in canonical order.
    pub fn facets(&self) -> Vec<VertexSet> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                (1..=self.ground).all(|v| f.contains(v) || !self.contains(f.with(v)))
            })
            .collect()
    }

    /// link_K(σ) = {η ∈ K | η∪σ ∈ K, η∩σ = φ}.
    pub fn link(&self, sigma: VertexSet) -> Result<SimplicialComplex, SimplicialError> {
        if !self.contains(sigma) {
            return Err(SimplicialError::NotAFace(sigma));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&eta| eta.is_disjoint(sigma) && self.contains(eta.union(sigma)))
            .collect();
        Ok(SimplicialComplex::from_faces(self.ground, faces))
    }

    /// star_K(σ) = {τ ∈ K | σ∪τ ∈ K}.
    pub fn star(&self, sigma: VertexSet) -> Result<SimplicialComplex, SimplicialError> {
        if !self.contains(sigma) {
            return Err(SimplicialError::NotAFace(sigma));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&tau| self.contains(tau.union(sigma)))
            .collect();
        Ok(SimplicialComplex::from_faces(self.ground, faces))
    }

    /// K|_ω = {η∩ω | η ∈ K}. Void stays void; otherwise always contains φ.
    pub fn restrict(&self, omega: VertexSet) -> SimplicialComplex {
        let faces = self.faces.iter().map(|&eta| eta.inter(omega)).collect();
        SimplicialComplex { ground: self.ground, faces }
    }

    /// K_{σ,ω} = link_K(σ)|_ω. Never void when σ ∈ K.
    pub fn hochster_link(
        &self,
        sigma: VertexSet,
        omega: VertexSet,
    ) -> Result<SimplicialComplex, SimplicialError> {
        if !sigma.is_disjoint(omega) {
            return Err(SimplicialError::NotDisjoint { sigma, omega });
        }
        Ok(self.link(sigma)?.restrict(omega))
    }

    /// Alexander dual relative to the ground set:
    /// K* = { [m]∖σ | σ ∈ 2^[m], σ ∉ K }. Exponential in m.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let m = self.ground;
        let mut faces = BTreeSet::new();
        for mask in 0..(1u64 << m) {
            let s = VertexSet::from_bits(mask as u32);
            if !self.contains(s) {
                faces.insert(s.complement_in(m));
            }
        }
        SimplicialComplex { ground: m, faces }
    }

    /// Face-set union (both arguments on the same ground set).
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        assert_eq!(self.ground, other.ground);
        let faces = self.faces.union(&other.faces).copied().collect();
        SimplicialComplex { ground: self.ground, faces }
    }

    /// Face-set intersection (both arguments on the same ground set).
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        assert_eq!(self.ground, other.ground);
        let faces = self.faces.intersection(&other.faces).copied().collect();
        SimplicialComplex { ground: self.ground, faces }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "{{}} on [{}]", self.ground);
        }
        write!(f, "{{")?;
        for (i, face) in self.faces.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if face.is_empty() {
                write!(f, "φ")?;
            } else {
                write!(f, "{face}")?;
            }
        }
        write!(f, "}} on [{}]", self.ground)
    }
}
