//! Homology-level data of one pair (X, A): the kernel, image and cokernel of
//! the inclusion-induced map on homology, plus coproduct structure constants
//! for both homology coalgebras. Pairs come from explicit simplicial pairs,
//! from sphere-pair parameters, or from raw user data.

use crate::chains::{
    aw_diagonal, homology, induced_map, inclusion_chain_map, plain_complex, ChainsError,
    HomologyData, SimplicialChains,
};
use crate::exactlin::{nullspace, solve_in_span, Field, IncrementalSpan, Matrix, Scalar};
use crate::simplicial::{SimplicialComplex, VertexSet};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("A is not a subcomplex of X: face {0} is missing from X")]
    NotASubcomplex(VertexSet),
    #[error("factor spaces must contain at least one vertex")]
    EmptySpace,
    #[error("the total space X must be connected")]
    DisconnectedTotal,
    #[error("sphere pair needs 0 ≤ k ≤ r, got k={k}, r={r}")]
    BadSphereParams { r: usize, k: usize },
    #[error("disk–sphere pair needs dimension at least 1")]
    BadDiskDimension,
    #[error("generator {0} has negative degree")]
    NegativeDegree(usize),
    #[error("expected exactly one degree-0 image generator, found {0}")]
    BadUnit(usize),
    #[error("unit coproduct must be u⊗u")]
    BadUnitCoproduct,
    #[error("coproduct term of generator {gen} violates degree additivity")]
    DegreeMismatch { gen: usize },
    #[error("coproduct of generator {gen} uses a generator outside its coalgebra")]
    WrongSpace { gen: usize },
    #[error("coproduct of generator {gen} is not counital")]
    NotCounital { gen: usize },
    #[error("coproduct is not coassociative at generator {gen}")]
    NotCoassociative { gen: usize },
    #[error("scalar over the wrong field in coproduct of generator {gen}")]
    FieldMismatch { gen: usize },
    #[error(transparent)]
    Chains(#[from] ChainsError),
}

/// Which summand of the homology-level decomposition a generator lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Part {
    Kernel,
    Image,
    Coker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorGen {
    pub part: Part,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    SimplicialPair(SimplicialPair),
    SpherePair { r: usize, k: usize },
    DiskSphere { n: usize },
    Raw,
}

/// Terms of one coproduct value: Δ(g) = Σ c·(g_i ⊗ g_j), sorted by (i, j).
pub type CoproductTerms = Vec<(usize, usize, Scalar)>;

/// A simplicial pair X ⊇ A, both with at least one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialPair {
    pub x: SimplicialComplex,
    pub a: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(x: SimplicialComplex, a: SimplicialComplex) -> Result<SimplicialPair, FactorError> {
        if a.vertex_set().is_empty() || x.vertex_set().is_empty() {
            return Err(FactorError::EmptySpace);
        }
        if let Some(bad) = a.faces().find(|f| !x.contains(*f)) {
            return Err(FactorError::NotASubcomplex(bad));
        }
        Ok(SimplicialPair { x, a })
    }
}

/// The homology-level description of one pair: graded kernel/image/cokernel
/// bases and coproduct constants on H_*(A) (kernel ∪ image) and H_*(X)
/// (image ∪ coker). An image generator denotes both a class of H_*(A) and its
/// image in H_*(X), so the two coproducts share ids.
#[derive(Debug, Clone)]
pub struct FactorData {
    field: Field,
    gens: Vec<FactorGen>,
    unit: usize,
    coproduct_a: BTreeMap<usize, CoproductTerms>,
    coproduct_x: BTreeMap<usize, CoproductTerms>,
    provenance: Provenance,
}

impl FactorData {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gens(&self) -> &[FactorGen] {
        &self.gens
    }

    pub fn degree(&self, id: usize) -> i64 {
        self.gens[id].degree
    }

    pub fn part(&self, id: usize) -> Part {
        self.gens[id].part
    }

    /// The degree-0 image generator.
    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The simplicial pair this factor came from, reconstructed for
    /// parameterized provenances. None for raw factors.
    pub fn model(&self) -> Option<SimplicialPair> {
        match &self.provenance {
            Provenance::SimplicialPair(p) => Some(p.clone()),
            Provenance::SpherePair { r, k } => Some(sphere_pair_model(*r, *k).expect("validated")),
            Provenance::DiskSphere { n } => Some(disk_sphere_model(*n).expect("validated")),
            Provenance::Raw => None,
        }
    }

    pub fn ids_of(&self, part: Part) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.gens[i].part == part).collect()
    }

    pub fn dim_of(&self, part: Part, degree: i64) -> usize {
        self.gens.iter().filter(|g| g.part == part && g.degree == degree).count()
    }

    /// True when the cokernel is nonzero (the factor contributes to Σ).
    pub fn has_coker(&self) -> bool {
        self.gens.iter().any(|g| g.part == Part::Coker)
    }

    /// True when the kernel is nonzero (the factor contributes to Ω).
    pub fn has_kernel(&self) -> bool {
        self.gens.iter().any(|g| g.part == Part::Kernel)
    }

    pub fn max_degree(&self) -> i64 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// Coproduct on H_*(A); keyed by kernel and image ids.
    pub fn coproduct_a(&self, id: usize) -> &[(usize, usize, Scalar)] {
        self.coproduct_a.get(&id).map_or(&[], Vec::as_slice)
    }

    /// Coproduct on H_*(X); keyed by image and coker ids.
    pub fn coproduct_x(&self, id: usize) -> &[(usize, usize, Scalar)] {
        self.coproduct_x.get(&id).map_or(&[], Vec::as_slice)
    }

    /// The combined coproduct on 𝔨⊕𝔦⊕𝔠: the A-side value on kernel and image
    /// generators, the X-side value on cokernel generators.
    pub fn coproduct(&self, id: usize) -> &[(usize, usize, Scalar)] {
        match self.gens[id].part {
            Part::Kernel | Part::Image => self.coproduct_a(id),
            Part::Coker => self.coproduct_x(id),
        }
    }

    /// Display name: "u" for the unit, else part letter + degree, with a
    /// letter suffix when a (part, degree) slot holds several generators.
    pub fn name(&self, id: usize) -> String {
        if id == self.unit {
            return "u".to_string();
        }
        let g = self.gens[id];
        let letter = match g.part {
            Part::Kernel => 'k',
            Part::Image => 'i',
            Part::Coker => 'c',
        };
        let peers: Vec<usize> = (0..self.gens.len())
            .filter(|&i| self.gens[i].part == g.part && self.gens[i].degree == g.degree)
            .collect();
        if peers.len() == 1 {
            format!("{letter}{}", g.degree)
        } else {
            let pos = peers.iter().position(|&i| i == id).unwrap();
            let suffix = (b'a' + pos as u8) as char;
            format!("{letter}{}{suffix}", g.degree)
        }
    }

    /// Whether Δ_A of every image generator stays inside image⊗image. This is
    /// the splitting hypothesis under which the full coalgebra, not only its
    /// graded dimensions, transfers to the decomposition.
    pub fn splitting_holds(&self) -> bool {
        self.ids_of(Part::Image).iter().all(|&g| {
            self.coproduct_a(g)
                .iter()
                .all(|&(i, j, _)| self.gens[i].part != Part::Kernel && self.gens[j].part != Part::Kernel)
        })
    }

    fn space_ids(&self, side: Side) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| match side {
                Side::A => self.gens[i].part != Part::Coker,
                Side::X => self.gens[i].part != Part::Kernel,
            })
            .collect()
    }

    fn side_terms(&self, side: Side, id: usize) -> &[(usize, usize, Scalar)] {
        match side {
            Side::A => self.coproduct_a(id),
            Side::X => self.coproduct_x(id),
        }
    }

    fn check_side(&self, side: Side) -> Result<(), FactorError> {
        let ids = self.space_ids(side);
        let member = |i: usize| ids.binary_search(&i).is_ok();
        let stored: &BTreeMap<usize, CoproductTerms> = match side {
            Side::A => &self.coproduct_a,
            Side::X => &self.coproduct_x,
        };
        for (&g, _) in stored {
            if !member(g) {
                return Err(FactorError::WrongSpace { gen: g });
            }
        }
        for &g in &ids {
            let terms = self.side_terms(side, g);
            for &(i, j, ref c) in terms {
                if i >= self.gens.len() || j >= self.gens.len() || !member(i) || !member(j) {
                    return Err(FactorError::WrongSpace { gen: g });
                }
                if c.field() != self.field {
                    return Err(FactorError::FieldMismatch { gen: g });
                }
                if self.gens[i].degree + self.gens[j].degree != self.gens[g].degree {
                    return Err(FactorError::DegreeMismatch { gen: g });
                }
            }
            // counitality on both slots
            for slot in 0..2 {
                let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
                for &(i, j, ref c) in terms {
                    let (eps, other) = if slot == 0 { (i, j) } else { (j, i) };
                    if eps == self.unit {
                        let e = out.entry(other).or_insert_with(|| self.field.zero());
                        *e = e.add(c);
                    }
                }
                out.retain(|_, v| !v.is_zero());
                let ok = out.len() == 1 && out.get(&g).is_some_and(Scalar::is_one);
                if !ok {
                    return Err(FactorError::NotCounital { gen: g });
                }
            }
        }
        // coassociativity
        for &g in &ids {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for &(i, j, ref c) in self.side_terms(side, g) {
                for &(i1, i2, ref d) in self.side_terms(side, i) {
                    let e = lhs.entry((i1, i2, j)).or_insert_with(|| self.field.zero());
                    *e = e.add(&c.mul(d));
                }
                for &(j1, j2, ref d) in self.side_terms(side, j) {
                    let e = rhs.entry((i, j1, j2)).or_insert_with(|| self.field.zero());
                    *e = e.add(&c.mul(d));
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(FactorError::NotCoassociative { gen: g });
            }
        }
        Ok(())
    }

    /// All structural invariants: degrees, unit, counit, coassociativity,
    /// per-coalgebra id discipline.
    pub fn validate(&self) -> Result<(), FactorError> {
        for (i, g) in self.gens.iter().enumerate() {
            if g.degree < 0 {
                return Err(FactorError::NegativeDegree(i));
            }
        }
        let units: Vec<usize> = (0..self.gens.len())
            .filter(|&i| self.gens[i].part == Part::Image && self.gens[i].degree == 0)
            .collect();
        if units.len() != 1 || units[0] != self.unit {
            return Err(FactorError::BadUnit(units.len()));
        }
        for side in [Side::A, Side::X] {
            let u = self.side_terms(side, self.unit);
            let unit_ok =
                u.len() == 1 && u[0].0 == self.unit && u[0].1 == self.unit && u[0].2.is_one();
            if !unit_ok {
                return Err(FactorError::BadUnitCoproduct);
            }
            self.check_side(side)?;
        }
        Ok(())
    }

    /// Graded cocommutativity of both coproducts: τ∘Δ = Δ with the Koszul
    /// sign (−1)^{|x||y|} on the swap.
    pub fn is_cocommutative(&self) -> bool {
        for side in [Side::A, Side::X] {
            for &g in &self.space_ids(side) {
                let mut diff: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for &(i, j, ref c) in self.side_terms(side, g) {
                    let e = diff.entry((i, j)).or_insert_with(|| self.field.zero());
                    *e = e.add(c);
                    let sign = (self.gens[i].degree * self.gens[j].degree) % 2 != 0;
                    let swapped = if sign { c.neg() } else { c.clone() };
                    let e = diff.entry((j, i)).or_insert_with(|| self.field.zero());
                    *e = e.sub(&swapped);
                }
                if diff.values().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    X,
}

/// Explicit content for a user-supplied factor.
#[derive(Debug, Clone)]
pub struct RawFactor {
    pub gens: Vec<FactorGen>,
    pub coproduct_a: BTreeMap<usize, CoproductTerms>,
    pub coproduct_x: BTreeMap<usize, CoproductTerms>,
}

/// Validates raw factor content into FactorData.
pub fn from_raw(field: Field, raw: RawFactor) -> Result<FactorData, FactorError> {
    let units: Vec<usize> = (0..raw.gens.len())
        .filter(|&i| raw.gens[i].part == Part::Image && raw.gens[i].degree == 0)
        .collect();
    if units.len() != 1 {
        return Err(FactorError::BadUnit(units.len()));
    }
    let normalize = |m: BTreeMap<usize, CoproductTerms>| -> BTreeMap<usize, CoproductTerms> {
        m.into_iter()
            .map(|(g, mut terms)| {
                terms.sort_by_key(|&(i, j, _)| (i, j));
                terms.retain(|(_, _, c)| !c.is_zero());
                (g, terms)
            })
            .filter(|(_, terms)| !terms.is_empty())
            .collect()
    };
    let data = FactorData {
        field,
        gens: raw.gens,
        unit: units[0],
        coproduct_a: normalize(raw.coproduct_a),
        coproduct_x: normalize(raw.coproduct_x),
        provenance: Provenance::Raw,
    };
    data.validate()?;
    Ok(data)
}

struct SpaceBasis {
    /// Per degree: generator ids, and their coordinate columns in the
    /// echelon homology basis (same order).
    ids: BTreeMap<i64, Vec<usize>>,
    cols: BTreeMap<i64, Matrix>,
}

/// Coproduct constants of one space: apply the front/back diagonal to each
/// generator's cycle representative, read the homology class of the tensor
/// through the degreewise projection functionals, then change basis from the
/// echelon homology basis to the generator basis.
fn space_coproducts(
    chains: &SimplicialChains,
    h: &HomologyData,
    basis: &SpaceBasis,
) -> Result<BTreeMap<usize, CoproductTerms>, FactorError> {
    let field = chains.complex.field();
    let mut proj: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut inv: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (&p, cols) in &basis.cols {
        proj.insert(p, h.projection(p)?);
        let id = Matrix::identity(field, cols.rows());
        let b_inv = solve_in_span(cols, &id).ok_or_else(|| {
            ChainsError::Internal(format!("generator basis not invertible in degree {p}"))
        })?;
        inv.insert(p, b_inv);
    }
    let mut out = BTreeMap::new();
    for (&n, ids) in &basis.ids {
        let cols = &basis.cols[&n];
        let reps = h.reps(n);
        for (pos, &id) in ids.iter().enumerate() {
            let cycle = reps.mul_vec(&cols.col(pos));
            let faces = &chains.basis[&n];
            // sparse tensor of the diagonal, bucketed by front degree
            let mut buckets: BTreeMap<i64, BTreeMap<(usize, usize), Scalar>> = BTreeMap::new();
            for (fi, &face) in faces.iter().enumerate() {
                if cycle[fi].is_zero() {
                    continue;
                }
                for (front, back) in aw_diagonal(face) {
                    let (p, q) = (front.dim(), back.dim());
                    if !basis.ids.contains_key(&p) || !basis.ids.contains_key(&q) {
                        continue;
                    }
                    let fi2 = chains.index_of(front).expect("front face present");
                    let bi2 = chains.index_of(back).expect("back face present");
                    let e = buckets
                        .entry(p)
                        .or_default()
                        .entry((fi2, bi2))
                        .or_insert_with(|| field.zero());
                    *e = e.add(&cycle[fi]);
                }
            }
            let mut terms: CoproductTerms = Vec::new();
            for (p, entries) in buckets {
                let q = n - p;
                let mut w = Matrix::zero(field, chains.complex.dim(p), chains.complex.dim(q));
                for ((i, j), c) in entries {
                    w.set(i, j, c);
                }
                let y = proj[&p].mul(&w).mul(&proj[&q].transpose());
                let c = inv[&p].mul(&y).mul(&inv[&q].transpose());
                for i in 0..c.rows() {
                    for j in 0..c.cols() {
                        if !c.get(i, j).is_zero() {
                            terms.push((basis.ids[&p][i], basis.ids[&q][j], c.get(i, j).clone()));
                        }
                    }
                }
            }
            terms.sort_by_key(|&(i, j, _)| (i, j));
            out.insert(id, terms);
        }
    }
    Ok(out)
}

/// Computes FactorData for a simplicial pair: homologies, the induced map of
/// the inclusion, the kernel/image/cokernel split (echelon-deterministic
/// complements), and both coproducts. The compatibility of the two coproducts
/// on image generators is asserted.
pub fn analyze_pair(pair: &SimplicialPair, field: Field) -> Result<FactorData, FactorError> {
    let ca = plain_complex(&pair.a, field);
    let cx = plain_complex(&pair.x, field);
    let ha = homology(&ca.complex);
    let hx = homology(&cx.complex);
    if hx.dim(0) != 1 {
        return Err(FactorError::DisconnectedTotal);
    }
    let ind = induced_map(&inclusion_chain_map(&ca, &cx), &ha, &hx)?;

    let mut degrees: Vec<i64> = ha.dims().degrees();
    for n in hx.dims().degrees() {
        if !degrees.contains(&n) {
            degrees.push(n);
        }
    }
    degrees.sort_unstable();

    let mut gens: Vec<FactorGen> = Vec::new();
    let mut a_basis = SpaceBasis { ids: BTreeMap::new(), cols: BTreeMap::new() };
    let mut x_basis = SpaceBasis { ids: BTreeMap::new(), cols: BTreeMap::new() };
    for &n in &degrees {
        let da = ha.dim(n);
        let dx = hx.dim(n);
        let m = match ind.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(field, dx, da),
        };
        let kern = nullspace(&m);
        let mut span = IncrementalSpan::new(field, da);
        for j in 0..kern.cols() {
            span.insert(&kern.col(j));
        }
        let unit_vec = |dim: usize, at: usize| -> Vec<Scalar> {
            let mut v = vec![field.zero(); dim];
            v[at] = field.one();
            v
        };
        let mut image_src: Vec<usize> = Vec::new();
        for j in 0..da {
            if span.insert(&unit_vec(da, j)) {
                image_src.push(j);
            }
        }
        let mut xspan = IncrementalSpan::new(field, dx);
        for j in 0..m.cols() {
            xspan.insert(&m.col(j));
        }
        let mut coker_idx: Vec<usize> = Vec::new();
        for i in 0..dx {
            if xspan.insert(&unit_vec(dx, i)) {
                coker_idx.push(i);
            }
        }

        let mut a_ids = Vec::new();
        let mut a_cols: Vec<Vec<Scalar>> = Vec::new();
        let mut x_ids = Vec::new();
        let mut x_cols: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..kern.cols() {
            gens.push(FactorGen { part: Part::Kernel, degree: n });
            a_ids.push(gens.len() - 1);
            a_cols.push(kern.col(j));
        }
        for &j in &image_src {
            gens.push(FactorGen { part: Part::Image, degree: n });
            a_ids.push(gens.len() - 1);
            a_cols.push(unit_vec(da, j));
            x_ids.push(gens.len() - 1);
            x_cols.push(m.col(j));
        }
        for &i in &coker_idx {
            gens.push(FactorGen { part: Part::Coker, degree: n });
            x_ids.push(gens.len() - 1);
            x_cols.push(unit_vec(dx, i));
        }
        if !a_ids.is_empty() {
            a_basis.ids.insert(n, a_ids);
            a_basis.cols.insert(n, columns_matrix(field, da, &a_cols));
        }
        if !x_ids.is_empty() {
            x_basis.ids.insert(n, x_ids);
            x_basis.cols.insert(n, columns_matrix(field, dx, &x_cols));
        }
    }

    let coproduct_a = space_coproducts(&ca, &ha, &a_basis)?;
    let coproduct_x = space_coproducts(&cx, &hx, &x_basis)?;

    let unit = (0..gens.len())
        .find(|&i| gens[i].part == Part::Image && gens[i].degree == 0)
        .expect("connected nonempty X has a degree-0 image class");

    // H(inclusion) is a coalgebra morphism, so the X-side coproduct of an
    // image generator must be its A-side coproduct with kernel terms dropped.
    for (&g, x_terms) in &coproduct_x {
        if gens[g].part != Part::Image {
            continue;
        }
        let a_dropped: CoproductTerms = coproduct_a[&g]
            .iter()
            .filter(|&&(i, j, _)| {
                gens[i].part != Part::Kernel && gens[j].part != Part::Kernel
            })
            .cloned()
            .collect();
        assert_eq!(
            &a_dropped, x_terms,
            "coproducts disagree on an image generator of degree {}",
            gens[g].degree
        );
    }

    let data = FactorData {
        field,
        gens,
        unit,
        coproduct_a,
        coproduct_x,
        provenance: Provenance::SimplicialPair(pair.clone()),
    };
    data.validate()?;
    Ok(data)
}

fn columns_matrix(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    let mut m = Matrix::zero(field, rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// The simplicial model behind sphere_pair: A = ∂Δ^{k+1} on the first k+2
/// vertices, X = A ∗ ∂Δ^{r−k+1} (a triangulated S^{r+1}) on r+4 vertices.
pub fn sphere_pair_model(r: usize, k: usize) -> Result<SimplicialPair, FactorError> {
    if k > r {
        return Err(FactorError::BadSphereParams { r, k });
    }
    let m = r + 4;
    let left = VertexSet::from_vertices(1..=k + 2);
    let right = VertexSet::from_vertices(k + 3..=m);
    let left_facets: Vec<VertexSet> = left.vertices().map(|v| left.without(v)).collect();
    let right_facets: Vec<VertexSet> = right.vertices().map(|v| right.without(v)).collect();
    let mut x_facets = Vec::new();
    for &fa in &left_facets {
        for &fb in &right_facets {
            x_facets.push(fa.union(fb));
        }
    }
    let x = SimplicialComplex::from_facets(m, &x_facets, false).expect("join model in range");
    let a = SimplicialComplex::from_facets(m, &left_facets, false).expect("sphere in range");
    SimplicialPair::new(x, a)
}

/// The pair (S^{r+1}, S^k) with its standard inclusion: one kernel generator
/// in degree k, the unit, one cokernel generator in degree r+1.
pub fn sphere_pair(r: usize, k: usize, field: Field) -> Result<FactorData, FactorError> {
    let pair = sphere_pair_model(r, k)?;
    let mut data = analyze_pair(&pair, field)?;
    data.provenance = Provenance::SpherePair { r, k };
    let kernel = data.ids_of(Part::Kernel);
    let coker = data.ids_of(Part::Coker);
    assert_eq!(kernel.len(), 1, "sphere pair has one kernel class");
    assert_eq!(data.degree(kernel[0]), k as i64);
    assert_eq!(data.ids_of(Part::Image).len(), 1);
    assert_eq!(coker.len(), 1, "sphere pair has one cokernel class");
    assert_eq!(data.degree(coker[0]), (r + 1) as i64);
    Ok(data)
}

/// The simplicial model behind disk_sphere: (Δⁿ, ∂Δⁿ), n ≥ 1.
pub fn disk_sphere_model(n: usize) -> Result<SimplicialPair, FactorError> {
    if n == 0 {
        return Err(FactorError::BadDiskDimension);
    }
    let full = VertexSet::full(n + 1);
    let x = SimplicialComplex::full(n + 1);
    let facets: Vec<VertexSet> = full.vertices().map(|v| full.without(v)).collect();
    let a = SimplicialComplex::from_facets(n + 1, &facets, false).expect("boundary in range");
    SimplicialPair::new(x, a)
}

/// The pair (Δⁿ, ∂Δⁿ): one kernel generator in degree n−1, the unit, no
/// cokernel.
pub fn disk_sphere(n: usize, field: Field) -> Result<FactorData, FactorError> {
    let pair = disk_sphere_model(n)?;
    let mut data = analyze_pair(&pair, field)?;
    data.provenance = Provenance::DiskSphere { n };
    Ok(data)
}
