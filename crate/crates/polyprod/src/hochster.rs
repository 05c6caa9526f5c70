//! The decomposition engine: index pairs (σ, ω), tensor bases T^{σ,ω}, the
//! bigraded Betti table computed from links of K, and an independent
//! minimal-model chain complex built from per-factor acyclic extensions that
//! recovers the same totals with an explicit differential.

use crate::chains::{augmented_complex, homology, ChainComplex, ChainsError, GradedDims};
use crate::exactlin::{Field, Matrix};
use crate::factors::{FactorData, Part};
use crate::simplicial::{SimplicialComplex, VertexSet};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HochsterError {
    #[error("K has ground size {m} but {n} factors were given")]
    WrongFactorCount { m: usize, n: usize },
    #[error("factor {0} is over a different field than the instance")]
    FieldMismatch(usize),
    #[error(transparent)]
    Chains(#[from] ChainsError),
}

/// A complex K on [m] together with one homology-level factor per vertex.
/// Vertex k (1-based) corresponds to factors[k−1].
#[derive(Debug, Clone)]
pub struct Instance {
    field: Field,
    k: SimplicialComplex,
    factors: Vec<FactorData>,
}

impl Instance {
    pub fn new(
        field: Field,
        k: SimplicialComplex,
        factors: Vec<FactorData>,
    ) -> Result<Instance, HochsterError> {
        if factors.len() != k.ground() {
            return Err(HochsterError::WrongFactorCount { m: k.ground(), n: factors.len() });
        }
        if let Some(i) = factors.iter().position(|f| f.field() != field) {
            return Err(HochsterError::FieldMismatch(i + 1));
        }
        Ok(Instance { field, k, factors })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.k
    }

    pub fn factors(&self) -> &[FactorData] {
        &self.factors
    }

    pub fn factor(&self, vertex: usize) -> &FactorData {
        &self.factors[vertex - 1]
    }

    /// Σ: the vertices whose factor has nonzero cokernel.
    pub fn sigma_support(&self) -> VertexSet {
        VertexSet::from_vertices(
            (1..=self.factors.len()).filter(|&v| self.factor(v).has_coker()),
        )
    }

    /// Ω: the vertices whose factor has nonzero kernel.
    pub fn omega_support(&self) -> VertexSet {
        VertexSet::from_vertices(
            (1..=self.factors.len()).filter(|&v| self.factor(v).has_kernel()),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexPair {
    pub sigma: VertexSet,
    pub omega: VertexSet,
}

/// All pairs (σ, ω) with σ ∈ K, σ ⊆ Σ, ω ⊆ Ω, σ ∩ ω = φ, in (σ, ω) order.
pub fn index_set(inst: &Instance) -> Vec<IndexPair> {
    let sig = inst.sigma_support();
    let omg = inst.omega_support();
    let mut out = Vec::new();
    for sigma in inst.complex().faces() {
        if !sigma.is_subset_of(sig) {
            continue;
        }
        for omega in omg.minus(sigma).subsets() {
            out.push(IndexPair { sigma, omega });
        }
    }
    out.sort();
    out
}

fn allowed_ids(factor: &FactorData, vertex_in: (bool, bool)) -> Vec<usize> {
    let part = match vertex_in {
        (true, _) => Part::Coker,
        (_, true) => Part::Kernel,
        _ => Part::Image,
    };
    factor.ids_of(part)
}

/// Graded dimensions of T^{σ,ω}: the product over factors of the degree
/// spectra of the required parts (𝔠 on σ, 𝔨 on ω, 𝔦 elsewhere).
pub fn t_dims(inst: &Instance, pair: &IndexPair) -> GradedDims {
    let mut acc: BTreeMap<i64, usize> = BTreeMap::new();
    acc.insert(0, 1);
    for v in 1..=inst.factors().len() {
        let ids = allowed_ids(inst.factor(v), (pair.sigma.contains(v), pair.omega.contains(v)));
        let mut next: BTreeMap<i64, usize> = BTreeMap::new();
        for (&d, &c) in &acc {
            for &id in &ids {
                *next.entry(d + inst.factor(v).degree(id)).or_default() += c;
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

/// One basis tensor of T^{σ,ω}: a per-factor generator id for every vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TBasisElement {
    pub labels: Vec<usize>,
    pub degree: i64,
}

/// All basis tensors of T^{σ,ω}, sorted by (degree, labels).
pub fn t_basis(inst: &Instance, pair: &IndexPair) -> Vec<TBasisElement> {
    let m = inst.factors().len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    fn rec(
        inst: &Instance,
        pair: &IndexPair,
        v: usize,
        degree: i64,
        labels: &mut Vec<usize>,
        out: &mut Vec<TBasisElement>,
    ) {
        if v > inst.factors().len() {
            out.push(TBasisElement { labels: labels.clone(), degree });
            return;
        }
        let ids = allowed_ids(inst.factor(v), (pair.sigma.contains(v), pair.omega.contains(v)));
        for id in ids {
            labels[v - 1] = id;
            rec(inst, pair, v + 1, degree + inst.factor(v).degree(id), labels, out);
        }
    }
    rec(inst, pair, 1, 0, &mut labels, &mut out);
    out.sort();
    out
}

/// The bigraded Betti decomposition: per (σ, ω), graded dimensions in total
/// degree, plus degreewise totals. Over a field the cohomology Betti numbers
/// coincide, so the table serves both readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    by_pair: BTreeMap<(VertexSet, VertexSet), GradedDims>,
    totals: GradedDims,
}

impl BettiTable {
    pub fn totals(&self) -> &GradedDims {
        &self.totals
    }

    pub fn dim(&self, sigma: VertexSet, omega: VertexSet, degree: i64) -> usize {
        self.by_pair.get(&(sigma, omega)).map_or(0, |g| g.dim(degree))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexSet, VertexSet, &GradedDims)> {
        self.by_pair.iter().map(|(&(s, o), g)| (s, o, g))
    }

    pub fn pair_dims(&self, sigma: VertexSet, omega: VertexSet) -> Option<&GradedDims> {
        self.by_pair.get(&(sigma, omega))
    }
}

/// Per pair (σ, ω): the summand in total degree s+t+1 is H̃_s(K_{σ,ω}) ⊗ T_t,
/// with K_{σ,ω} = link_K(σ) restricted to ω.
pub fn betti(inst: &Instance) -> BettiTable {
    let mut by_pair = BTreeMap::new();
    let mut totals = GradedDims::new();
    for pair in index_set(inst) {
        let link = inst
            .complex()
            .hochster_link(pair.sigma, pair.omega)
            .expect("index pair is admissible");
        let h = homology(&augmented_complex(&link, inst.field()).complex);
        let t = t_dims(inst, &pair);
        let mut contrib = GradedDims::new();
        for (s, hs) in h.dims().iter() {
            for (tdeg, td) in t.iter() {
                contrib.add(s + tdeg + 1, hs * td);
            }
        }
        if !contrib.is_zero() {
            for (d, c) in contrib.iter() {
                totals.add(d, c);
            }
            by_pair.insert((pair.sigma, pair.omega), contrib);
        }
    }
    BettiTable { by_pair, totals }
}

/// A basis label of the per-factor acyclic extension U = 𝔨⊕𝔦⊕𝔠⊕𝔮: either a
/// factor generator or the shifted copy q(g) of a kernel generator g, one
/// degree up, with d(q(g)) = g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModelLabel {
    Gen(usize),
    Q(usize),
}

impl ModelLabel {
    fn degree(self, factor: &FactorData) -> i64 {
        match self {
            ModelLabel::Gen(id) => factor.degree(id),
            ModelLabel::Q(id) => factor.degree(id) + 1,
        }
    }

    fn is_wide(self, factor: &FactorData) -> bool {
        match self {
            ModelLabel::Gen(id) => factor.part(id) == Part::Coker,
            ModelLabel::Q(_) => {
                let _ = factor;
                true
            }
        }
    }
}

/// The minimal-model chain complex: basis tuples (a_1,…,a_m) over the U_k
/// with {k | a_k ∈ 𝔠_k∪𝔮_k} a face of K, Leibniz differential from the
/// per-factor d: 𝔮 → 𝔨 with standard Koszul signs.
#[derive(Debug)]
pub struct MinimalModel {
    pub complex: ChainComplex,
    pub tuples: BTreeMap<i64, Vec<Vec<ModelLabel>>>,
    pub totals: GradedDims,
}

pub fn minimal_model(inst: &Instance) -> Result<MinimalModel, HochsterError> {
    let m = inst.factors().len();
    let field = inst.field();
    let mut tuples: BTreeMap<i64, Vec<Vec<ModelLabel>>> = BTreeMap::new();
    let mut stack: Vec<ModelLabel> = Vec::with_capacity(m);
    fn rec(
        inst: &Instance,
        v: usize,
        degree: i64,
        wide: VertexSet,
        stack: &mut Vec<ModelLabel>,
        tuples: &mut BTreeMap<i64, Vec<Vec<ModelLabel>>>,
    ) {
        if !inst.complex().contains(wide) {
            return;
        }
        if v > inst.factors().len() {
            tuples.entry(degree).or_default().push(stack.clone());
            return;
        }
        let f = inst.factor(v);
        let mut labels: Vec<ModelLabel> = (0..f.gens().len()).map(ModelLabel::Gen).collect();
        labels.extend(f.ids_of(Part::Kernel).into_iter().map(ModelLabel::Q));
        for label in labels {
            let w = if label.is_wide(f) { wide.with(v) } else { wide };
            stack.push(label);
            rec(inst, v + 1, degree + label.degree(f), w, stack, tuples);
            stack.pop();
        }
    }
    rec(inst, 1, 0, VertexSet::EMPTY, &mut stack, &mut tuples);
    for v in tuples.values_mut() {
        v.sort();
    }

    let index = |n: i64, t: &[ModelLabel]| -> Option<usize> {
        tuples.get(&n).and_then(|v| v.binary_search_by(|x| x.as_slice().cmp(t)).ok())
    };
    let dims: GradedDims = tuples.iter().map(|(&n, v)| (n, v.len())).collect();
    let mut boundaries = BTreeMap::new();
    for (&n, ts) in &tuples {
        let rows = tuples.get(&(n - 1)).map_or(0, Vec::len);
        let mut d = Matrix::zero(field, rows, ts.len());
        for (j, t) in ts.iter().enumerate() {
            let mut sign = 1i64;
            for (pos, &label) in t.iter().enumerate() {
                if let ModelLabel::Q(id) = label {
                    let mut img = t.clone();
                    img[pos] = ModelLabel::Gen(id);
                    let i = index(n - 1, &img).expect("differential image tuple admissible");
                    let val = d.get(i, j).add(&field.from_i64(sign));
                    d.set(i, j, val);
                }
                if label.degree(inst.factor(pos + 1)) % 2 != 0 {
                    sign = -sign;
                }
            }
        }
        boundaries.insert(n, d);
    }
    let complex = ChainComplex::new(field, dims, boundaries)?;
    let totals = homology(&complex).dims().clone();
    Ok(MinimalModel { complex, tuples, totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{analyze_pair, disk_sphere, sphere_pair, SimplicialPair};

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn disk_circle(field: Field) -> FactorData {
        // (Δ², ∂Δ²)
        let p = SimplicialPair::new(
            SimplicialComplex::full(3),
            SimplicialComplex::from_facets(3, &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])], false)
                .unwrap(),
        )
        .unwrap();
        analyze_pair(&p, field).unwrap()
    }

    fn two_points(m: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(m, &[vs(&[1]), vs(&[2])], false).unwrap()
    }

    fn square(m: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            m,
            &[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])],
            false,
        )
        .unwrap()
    }

    #[test]
    fn instance_validation() {
        let f = Field::Rationals;
        let k = two_points(2);
        assert!(matches!(
            Instance::new(f, k.clone(), vec![disk_circle(f)]),
            Err(HochsterError::WrongFactorCount { m: 2, n: 1 })
        ));
        let mixed = vec![disk_circle(f), disk_circle(Field::Prime(2))];
        assert!(matches!(
            Instance::new(f, k, mixed),
            Err(HochsterError::FieldMismatch(2))
        ));
    }

    #[test]
    fn index_set_examples() {
        let f = Field::Rationals;
        let inst =
            Instance::new(f, two_points(2), vec![disk_circle(f), disk_circle(f)]).unwrap();
        assert_eq!(inst.sigma_support(), VertexSet::EMPTY);
        assert_eq!(inst.omega_support(), vs(&[1, 2]));
        let pairs = index_set(&inst);
        assert_eq!(pairs.len(), 4);
        assert!(pairs.iter().all(|p| p.sigma.is_empty()));

        // factors with no kernel and no cokernel: only (φ, φ)
        let contractible = {
            let p = SimplicialPair::new(
                SimplicialComplex::full(2),
                SimplicialComplex::from_facets(2, &[vs(&[1])], false).unwrap(),
            )
            .unwrap();
            analyze_pair(&p, f).unwrap()
        };
        let inst2 = Instance::new(f, two_points(2), vec![contractible.clone(), contractible])
            .unwrap();
        let pairs2 = index_set(&inst2);
        assert_eq!(pairs2, vec![IndexPair { sigma: VertexSet::EMPTY, omega: VertexSet::EMPTY }]);

        // sphere pairs: everything with σ ∈ K, σ ∩ ω = φ
        let sp = sphere_pair(1, 0, f).unwrap();
        let inst3 = Instance::new(f, two_points(2), vec![sp.clone(), sp]).unwrap();
        let pairs3 = index_set(&inst3);
        let expected: usize = two_points(2)
            .faces()
            .map(|s| 1usize << (2 - s.card() as usize))
            .sum();
        assert_eq!(pairs3.len(), expected);
    }

    #[test]
    fn t_basis_examples() {
        let f = Field::Rationals;
        let sp = sphere_pair(2, 1, f).unwrap();
        let inst = Instance::new(f, two_points(2), vec![sp.clone(), sp]).unwrap();
        for pair in index_set(&inst) {
            let basis = t_basis(&inst, &pair);
            assert_eq!(basis.len(), 1, "one generator per role at {:?}", pair);
            let dims = t_dims(&inst, &pair);
            assert_eq!(dims.total(), 1);
            assert_eq!(dims.dim(basis[0].degree), 1);
        }
        // unit tuple at (φ, φ)
        let unit_pair = IndexPair { sigma: VertexSet::EMPTY, omega: VertexSet::EMPTY };
        let unit_basis = t_basis(&inst, &unit_pair);
        assert_eq!(unit_basis[0].degree, 0);

        // a 2-dimensional kernel doubles the count
        let p = SimplicialPair::new(
            SimplicialComplex::full(3),
            SimplicialComplex::from_facets(3, &[vs(&[1]), vs(&[2]), vs(&[3])], false).unwrap(),
        )
        .unwrap();
        let three_pts = analyze_pair(&p, f).unwrap();
        let inst2 = Instance::new(
            f,
            SimplicialComplex::from_facets(1, &[vs(&[1])], false).unwrap(),
            vec![three_pts],
        )
        .unwrap();
        let pair = IndexPair { sigma: VertexSet::EMPTY, omega: vs(&[1]) };
        assert_eq!(t_basis(&inst2, &pair).len(), 2);
    }

    #[test]
    fn betti_golden_values() {
        let f = Field::Rationals;
        let inst =
            Instance::new(f, two_points(2), vec![disk_circle(f), disk_circle(f)]).unwrap();
        let b = betti(&inst);
        assert_eq!(b.totals().to_vec(0, 3), vec![1, 0, 0, 1]);
        // the degree-3 class comes from (φ, {1,2})
        assert_eq!(b.dim(VertexSet::EMPTY, vs(&[1, 2]), 3), 1);

        let inst4 = Instance::new(f, square(4), vec![disk_circle(f); 4]).unwrap();
        let b4 = betti(&inst4);
        assert_eq!(b4.totals().to_vec(0, 6), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn betti_of_product_is_kunneth() {
        let f = Field::Rationals;
        let inst = Instance::new(
            f,
            SimplicialComplex::empty(2),
            vec![disk_circle(f), disk_circle(f)],
        )
        .unwrap();
        let b = betti(&inst);
        // H(S¹ × S¹)
        assert_eq!(b.totals().to_vec(0, 2), vec![1, 2, 1]);
    }

    #[test]
    fn betti_of_void_is_zero() {
        let f = Field::Rationals;
        let inst = Instance::new(
            f,
            SimplicialComplex::void(2),
            vec![disk_circle(f), disk_circle(f)],
        )
        .unwrap();
        assert!(betti(&inst).totals().is_zero());
        let mm = minimal_model(&inst).unwrap();
        assert!(mm.totals.is_zero());
    }

    #[test]
    fn minimal_model_matches_betti() {
        let f = Field::Rationals;
        let instances = vec![
            Instance::new(f, two_points(2), vec![disk_circle(f), disk_circle(f)]).unwrap(),
            Instance::new(f, square(4), vec![disk_circle(f); 4]).unwrap(),
            Instance::new(
                f,
                SimplicialComplex::empty(2),
                vec![sphere_pair(2, 0, f).unwrap(), disk_sphere(2, f).unwrap()],
            )
            .unwrap(),
        ];
        for inst in &instances {
            let b = betti(inst);
            let mm = minimal_model(inst).unwrap();
            assert_eq!(&mm.totals, b.totals());
        }
    }

    #[test]
    fn minimal_model_single_factor_full_k() {
        // K = {φ, {1}}: the model is U₁ and homology is 𝔦⊕𝔠 = H_*(X₁)
        let f = Field::Rationals;
        let k = SimplicialComplex::from_facets(1, &[vs(&[1])], false).unwrap();
        let sp = sphere_pair(2, 1, f).unwrap();
        let inst = Instance::new(f, k, vec![sp]).unwrap();
        let mm = minimal_model(&inst).unwrap();
        // H(S³): degrees 0 and 3
        assert_eq!(mm.totals.to_vec(0, 3), vec![1, 0, 0, 1]);
        // the complex itself has the q/k pair in degrees 1 and 2
        assert_eq!(mm.complex.dim(1), 1);
        assert_eq!(mm.complex.dim(2), 1);
    }

    #[test]
    fn minimal_model_of_product_has_zero_differential() {
        let f = Field::Prime(3);
        let inst = Instance::new(
            f,
            SimplicialComplex::empty(2),
            vec![disk_circle(f), disk_circle(f)],
        )
        .unwrap();
        let mm = minimal_model(&inst).unwrap();
        for (n, _) in mm.complex.dims().iter() {
            assert!(mm.complex.boundary(n).is_zero(), "degree {n}");
        }
        assert_eq!(mm.totals.to_vec(0, 2), vec![1, 2, 1]);
    }
}
