//! Coalgebra and ring structure through simplex covers: the cover chain
//! complex 𝔅 with its Čech differential and chain-level coproduct, the
//! per-tuple component decomposition with support complexes, the tensor
//! coproduct Δ^T, the homology coproduct table with its dual product, and the
//! splitting-hypothesis checker.

use crate::chains::{
    aw_diagonal, betti_dims, homology, relative_full_complex, ChainComplex, ChainsError,
    GradedDims, HomologyData, SimplicialChains,
};
use crate::exactlin::{rank_in_place, Field, Matrix, Scalar};
use crate::factors::{FactorData, Part};
use crate::hochster::{index_set, t_basis, IndexPair, Instance, TBasisElement};
use crate::simplicial::{SimplicialComplex, VertexSet};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Cover sizes above this would need more than 2^12 subset enumerations.
pub const MAX_COVER_ENTRIES: usize = 12;

/// Per-degree dense elimination cap for direct cover homology.
pub const MAX_COVER_DEGREE_DIM: usize = 2_500;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("cover entry {0} is not a simplex of K")]
    EntryNotInK(VertexSet),
    #[error("facet {0} of K is not contained in any cover entry")]
    FacetNotCovered(VertexSet),
    #[error("cover has {0} entries, above the {MAX_COVER_ENTRIES}-entry enumeration guard")]
    CoverTooLarge(usize),
    #[error("pair (σ={sigma}, ω={omega}) is starved by the cover but has nonzero link homology")]
    StarvedPair { sigma: VertexSet, omega: VertexSet },
    #[error("cover complex degree {degree} has dimension {dim}, above the {cap} dense cap")]
    DegreeTooLarge { degree: i64, dim: usize, cap: usize },
    #[error(transparent)]
    Chains(#[from] ChainsError),
}

/// An ordered list (σ_1,…,σ_n) of simplices of K, φ and repetition allowed,
/// jointly containing every simplex of K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexCover {
    entries: Vec<VertexSet>,
}

impl SimplexCover {
    pub fn new(k: &SimplicialComplex, entries: Vec<VertexSet>) -> Result<SimplexCover, StructureError> {
        for &e in &entries {
            if !k.contains(e) {
                return Err(StructureError::EntryNotInK(e));
            }
        }
        for f in k.facets() {
            if !entries.iter().any(|&e| f.is_subset_of(e)) {
                return Err(StructureError::FacetNotCovered(f));
            }
        }
        Ok(SimplexCover { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[VertexSet] {
        &self.entries
    }

    /// Cover positions are 1-based, like vertices.
    pub fn entry(&self, i: usize) -> VertexSet {
        self.entries[i - 1]
    }

    /// ∩_{j∈mu} σ_j inside the ground set [m]; the empty intersection is [m].
    pub fn intersection(&self, mu: VertexSet, m: usize) -> VertexSet {
        let mut acc = VertexSet::full(m);
        for j in mu.vertices() {
            acc = acc.inter(self.entry(j));
        }
        acc
    }
}

/// The cover listing every simplex of K, φ included, in face order.
pub fn all_simplices_cover(k: &SimplicialComplex) -> SimplexCover {
    SimplexCover { entries: k.faces().collect() }
}

/// The cover listing only the facets of K.
pub fn facets_cover(k: &SimplicialComplex) -> SimplexCover {
    SimplexCover { entries: k.facets() }
}

/// One basis element of the cover complex: a nonempty index set μ ⊆ [n] and a
/// Künneth label tuple for H_*(M_μ), where coordinate k ranges over
/// image ∪ coker ids when k ∈ ∩_{j∈μ}σ_j and kernel ∪ image ids otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverElem {
    pub mu: VertexSet,
    pub labels: Vec<usize>,
}

/// The bigraded cover complex, stored by total degree (|μ|−1) + Σ|labels|.
/// Boundary matrices are built on demand.
#[derive(Debug)]
pub struct CoverComplex {
    inst: Instance,
    cover: SimplexCover,
    inters: BTreeMap<VertexSet, VertexSet>,
    basis: BTreeMap<i64, Vec<CoverElem>>,
}

fn x_side_ids(f: &FactorData) -> Vec<usize> {
    let mut ids = f.ids_of(Part::Image);
    ids.extend(f.ids_of(Part::Coker));
    ids.sort_unstable();
    ids
}

fn a_side_ids(f: &FactorData) -> Vec<usize> {
    let mut ids = f.ids_of(Part::Kernel);
    ids.extend(f.ids_of(Part::Image));
    ids.sort_unstable();
    ids
}

pub fn cover_complex(inst: &Instance, cover: &SimplexCover) -> Result<CoverComplex, StructureError> {
    let n = cover.len();
    if n > MAX_COVER_ENTRIES {
        return Err(StructureError::CoverTooLarge(n));
    }
    let m = inst.factors().len();
    let mut inters = BTreeMap::new();
    let mut basis: BTreeMap<i64, Vec<CoverElem>> = BTreeMap::new();
    for mu in VertexSet::full(n).subsets() {
        if mu.is_empty() {
            continue;
        }
        let inter = cover.intersection(mu, m);
        inters.insert(mu, inter);
        let s = mu.dim();
        let mut stack: Vec<usize> = Vec::with_capacity(m);
        rec_tuples(inst, inter, 1, s, &mut stack, &mut |deg, labels| {
            basis.entry(deg).or_default().push(CoverElem { mu, labels: labels.to_vec() });
        });
    }
    for v in basis.values_mut() {
        v.sort();
    }
    Ok(CoverComplex { inst: inst.clone(), cover: cover.clone(), inters, basis })
}

fn rec_tuples(
    inst: &Instance,
    inter: VertexSet,
    v: usize,
    degree: i64,
    stack: &mut Vec<usize>,
    sink: &mut impl FnMut(i64, &[usize]),
) {
    if v > inst.factors().len() {
        sink(degree, stack);
        return;
    }
    let f = inst.factor(v);
    let ids = if inter.contains(v) { x_side_ids(f) } else { a_side_ids(f) };
    for id in ids {
        stack.push(id);
        rec_tuples(inst, inter, v + 1, degree + f.degree(id), stack, sink);
        stack.pop();
    }
}

impl CoverComplex {
    pub fn dims(&self) -> GradedDims {
        self.basis.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn basis(&self, degree: i64) -> &[CoverElem] {
        self.basis.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn cover(&self) -> &SimplexCover {
        &self.cover
    }

    fn index(&self, degree: i64, e: &CoverElem) -> Option<usize> {
        self.basis.get(&degree)?.binary_search(e).ok()
    }

    fn degree_of(&self, e: &CoverElem) -> i64 {
        let t: i64 =
            e.labels.iter().enumerate().map(|(i, &id)| self.inst.factor(i + 1).degree(id)).sum();
        e.mu.dim() + t
    }

    /// Čech differential: d(μ⊗a) = Σ_k (−1)^k (μ∖{i_k}) ⊗ i(a), where the
    /// restriction keeps labels and kills the term when a kernel coordinate
    /// enters the enlarged intersection.
    pub fn apply_d(&self, e: &CoverElem) -> Vec<(CoverElem, Scalar)> {
        let field = self.inst.field();
        let mut out = Vec::new();
        if e.mu.card() <= 1 {
            return out;
        }
        for (k, j) in e.mu.vertices().enumerate() {
            let nu = e.mu.without(j);
            let inter = self.inters[&nu];
            let killed = e
                .labels
                .iter()
                .enumerate()
                .any(|(i, &id)| {
                    inter.contains(i + 1) && self.inst.factor(i + 1).part(id) == Part::Kernel
                });
            if killed {
                continue;
            }
            let sign = field.from_i64(if k % 2 == 0 { 1 } else { -1 });
            out.push((CoverElem { mu: nu, labels: e.labels.clone() }, sign));
        }
        out
    }

    /// Chain-level coproduct: front/back splits of μ, the Künneth coproduct
    /// of the labels over H_*(M_μ), the split sign (−1)^{(s−k)|a′|}, and the
    /// same label-killing restriction on each side.
    pub fn diagonal(&self, e: &CoverElem) -> Vec<(CoverElem, CoverElem, Scalar)> {
        let field = self.inst.field();
        let inter = self.inters[&e.mu];
        // per-coordinate coproducts in the appropriate coalgebra
        let mut parts: Vec<&[(usize, usize, Scalar)]> = Vec::with_capacity(e.labels.len());
        for (i, &id) in e.labels.iter().enumerate() {
            let f = self.inst.factor(i + 1);
            parts.push(if inter.contains(i + 1) { f.coproduct_x(id) } else { f.coproduct_a(id) });
        }
        // Künneth expansion with crossing signs
        let mut label_terms: Vec<(Vec<usize>, Vec<usize>, Scalar, i64)> =
            vec![(Vec::new(), Vec::new(), field.one(), 0)];
        for (i, terms) in parts.iter().enumerate() {
            let f = self.inst.factor(i + 1);
            let mut next = Vec::with_capacity(label_terms.len() * terms.len());
            for (xp, xpp, c, back_deg) in &label_terms {
                for &(a, b, ref cab) in terms.iter() {
                    let cross = back_deg * f.degree(a);
                    let mut coeff = c.mul(cab);
                    if cross % 2 != 0 {
                        coeff = coeff.neg();
                    }
                    let mut xp2 = xp.clone();
                    xp2.push(a);
                    let mut xpp2 = xpp.clone();
                    xpp2.push(b);
                    next.push((xp2, xpp2, coeff, back_deg + f.degree(b)));
                }
            }
            label_terms = next;
        }
        let s = e.mu.dim();
        let mut out = Vec::new();
        for (k, (front, back)) in aw_diagonal(e.mu).into_iter().enumerate() {
            let fi = self.inters[&front];
            let bi = self.inters[&back];
            for (xp, xpp, c, _) in &label_terms {
                let dead = |labels: &[usize], inter: VertexSet| {
                    labels.iter().enumerate().any(|(i, &id)| {
                        inter.contains(i + 1) && self.inst.factor(i + 1).part(id) == Part::Kernel
                    })
                };
                if dead(xp, fi) || dead(xpp, bi) {
                    continue;
                }
                let front_deg: i64 = xp
                    .iter()
                    .enumerate()
                    .map(|(i, &id)| self.inst.factor(i + 1).degree(id))
                    .sum();
                let mut coeff = c.clone();
                if ((s - k as i64) * front_deg) % 2 != 0 {
                    coeff = coeff.neg();
                }
                out.push((
                    CoverElem { mu: front, labels: xp.clone() },
                    CoverElem { mu: back, labels: xpp.clone() },
                    coeff,
                ));
            }
        }
        out
    }

    pub fn boundary(&self, degree: i64) -> Matrix {
        let field = self.inst.field();
        let cols = self.basis.get(&degree).map_or(0, Vec::len);
        let rows = self.basis.get(&(degree - 1)).map_or(0, Vec::len);
        let mut d = Matrix::zero(field, rows, cols);
        let Some(elems) = self.basis.get(&degree) else {
            return d;
        };
        for (j, e) in elems.iter().enumerate() {
            for (img, c) in self.apply_d(e) {
                let i = self.index(degree - 1, &img).expect("differential stays in basis");
                let val = d.get(i, j).add(&c);
                d.set(i, j, val);
            }
        }
        d
    }

    /// Homology totals by transient boundary ranks.
    pub fn homology_totals(&self) -> Result<GradedDims, StructureError> {
        for (&d, v) in &self.basis {
            if v.len() > MAX_COVER_DEGREE_DIM {
                return Err(StructureError::DegreeTooLarge {
                    degree: d,
                    dim: v.len(),
                    cap: MAX_COVER_DEGREE_DIM,
                });
            }
        }
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut out = GradedDims::new();
        for (&d, v) in &self.basis {
            for dd in [d, d + 1] {
                ranks.entry(dd).or_insert_with(|| rank_in_place(self.boundary(dd)));
            }
            out.set(d, v.len() - ranks[&d] - ranks[&(d + 1)]);
        }
        Ok(out)
    }

    /// Materializes the chain complex (validating d² = 0). Small covers only.
    pub fn to_chain_complex(&self) -> Result<ChainComplex, ChainsError> {
        let dims = self.dims();
        let boundaries = self.basis.keys().map(|&d| (d, self.boundary(d))).collect();
        ChainComplex::new(self.inst.field(), dims, boundaries)
    }

    /// Exact chain identities: d∘d = 0 and (d⊗d)Δ = Δd elementwise, with the
    /// tensor differential using the total-degree Koszul sign.
    pub fn check_chain_identities(&self) -> bool {
        type Key = (CoverElem, CoverElem);
        for elems in self.basis.values() {
            for e in elems {
                // d²
                let mut sq: BTreeMap<CoverElem, Scalar> = BTreeMap::new();
                for (f1, c1) in self.apply_d(e) {
                    for (f2, c2) in self.apply_d(&f1) {
                        let entry = sq.entry(f2).or_insert_with(|| self.inst.field().zero());
                        *entry = entry.add(&c1.mul(&c2));
                    }
                }
                if sq.values().any(|v| !v.is_zero()) {
                    return false;
                }
                // Δd vs (d⊗d)Δ
                let mut lhs: BTreeMap<Key, Scalar> = BTreeMap::new();
                for (f, c) in self.apply_d(e) {
                    for (p, q, c2) in self.diagonal(&f) {
                        let entry =
                            lhs.entry((p, q)).or_insert_with(|| self.inst.field().zero());
                        *entry = entry.add(&c.mul(&c2));
                    }
                }
                let mut rhs: BTreeMap<Key, Scalar> = BTreeMap::new();
                for (p, q, c) in self.diagonal(e) {
                    for (dp, c2) in self.apply_d(&p) {
                        let entry =
                            rhs.entry((dp, q.clone())).or_insert_with(|| self.inst.field().zero());
                        *entry = entry.add(&c.mul(&c2));
                    }
                    let sign = self.degree_of(&p) % 2 != 0;
                    for (dq, c2) in self.apply_d(&q) {
                        let term = if sign { c.mul(&c2).neg() } else { c.mul(&c2) };
                        let entry =
                            rhs.entry((p.clone(), dq)).or_insert_with(|| self.inst.field().zero());
                        *entry = entry.add(&term);
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// One surviving pair (σ, ω) of the decomposition: its largest valid index
/// set, the support complex N on it, and the relative chains whose degree-s
/// homology is H̃_{s−1}(N).
#[derive(Debug)]
pub struct PairClass {
    pub sigma: VertexSet,
    pub omega: VertexSet,
    pub mu_max: VertexSet,
    pub support: SimplicialComplex,
    pub relchains: SimplicialChains,
    pub reldims: GradedDims,
}

impl PairClass {
    pub fn homology(&self) -> HomologyData {
        homology(&self.relchains.complex)
    }
}

/// The component decomposition of the cover complex: basis tuples grouped by
/// their (σ, ω) pair, each pair carrying one shared support complex.
#[derive(Debug)]
pub struct Components {
    pub classes: Vec<PairClass>,
    /// (tuple, class index), in canonical pair-then-tuple order.
    pub members: Vec<(TBasisElement, usize)>,
}

impl Components {
    /// Graded totals of the decomposition: each member contributes its
    /// class's relative homology, shifted by the tuple degree.
    pub fn totals(&self) -> GradedDims {
        let mut out = GradedDims::new();
        for (x, ci) in &self.members {
            for (s, d) in self.classes[*ci].reldims.iter() {
                out.add(s + x.degree, d);
            }
        }
        out
    }
}

/// For every basis tuple x: the valid index sets are the nonempty μ with
/// σ(x) ⊆ σ_j for all j ∈ μ and ω(x) ∩ ∩_{j∈μ}σ_j = φ. Their union μ_max is
/// itself valid (or the tuple is dropped), and the invalid subsets of μ_max
/// form the support complex N. A dropped pair must have vanishing link
/// homology, which is checked.
pub fn components(inst: &Instance, cover: &SimplexCover) -> Result<Components, StructureError> {
    let n = cover.len();
    if n > MAX_COVER_ENTRIES {
        return Err(StructureError::CoverTooLarge(n));
    }
    let m = inst.factors().len();
    let field = inst.field();
    let mut classes: Vec<PairClass> = Vec::new();
    let mut members: Vec<(TBasisElement, usize)> = Vec::new();
    for pair in index_set(inst) {
        let IndexPair { sigma, omega } = pair;
        let j_set = VertexSet::from_vertices(
            (1..=n).filter(|&j| sigma.is_subset_of(cover.entry(j))),
        );
        let starved = j_set.is_empty() || !omega.inter(cover.intersection(j_set, m)).is_empty();
        if starved {
            let link = inst.complex().hochster_link(sigma, omega).expect("pair admissible");
            let h = betti_dims(&crate::chains::augmented_complex(&link, field).complex);
            if !h.is_zero() {
                return Err(StructureError::StarvedPair { sigma, omega });
            }
            continue;
        }
        let mu_max = j_set;
        let mut faces = BTreeSet::from([VertexSet::EMPTY]);
        for lam in mu_max.subsets() {
            if !lam.is_empty() && !omega.inter(cover.intersection(lam, m)).is_empty() {
                faces.insert(lam);
            }
        }
        let support = SimplicialComplex::from_faces(n, faces);
        let relchains = relative_full_complex(mu_max, &support, field)?;
        let reldims = betti_dims(&relchains.complex);
        classes.push(PairClass { sigma, omega, mu_max, support, relchains, reldims });
        let ci = classes.len() - 1;
        for x in t_basis(inst, &pair) {
            members.push((x, ci));
        }
    }
    Ok(Components { classes, members })
}

/// Decomposition totals for an instance and cover.
pub fn decomposition_totals(
    inst: &Instance,
    cover: &SimplexCover,
) -> Result<GradedDims, StructureError> {
    Ok(components(inst, cover)?.totals())
}

/// The tensor coproduct Δ^T: per-coordinate coproducts (the X-side one on
/// cokernel coordinates, the A-side one otherwise) combined with the Koszul
/// sign (−1)^{Σ_{u<v} |x″_u||x′_v|}.
pub fn delta_t(
    inst: &Instance,
    x: &TBasisElement,
) -> Vec<(TBasisElement, TBasisElement, Scalar)> {
    let field = inst.field();
    let mut acc: Vec<(Vec<usize>, Vec<usize>, Scalar, i64)> =
        vec![(Vec::new(), Vec::new(), field.one(), 0)];
    for (i, &id) in x.labels.iter().enumerate() {
        let f = inst.factor(i + 1);
        let terms = f.coproduct(id);
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for (xp, xpp, c, back_deg) in &acc {
            for &(a, b, ref cab) in terms {
                let cross = back_deg * f.degree(a);
                let mut coeff = c.mul(cab);
                if cross % 2 != 0 {
                    coeff = coeff.neg();
                }
                let mut xp2 = xp.clone();
                xp2.push(a);
                let mut xpp2 = xpp.clone();
                xpp2.push(b);
                next.push((xp2, xpp2, coeff, back_deg + f.degree(b)));
            }
        }
        acc = next;
    }
    let degree_of = |labels: &[usize]| -> i64 {
        labels.iter().enumerate().map(|(i, &id)| inst.factor(i + 1).degree(id)).sum()
    };
    acc.into_iter()
        .map(|(xp, xpp, c, _)| {
            let dp = degree_of(&xp);
            let dpp = degree_of(&xpp);
            (
                TBasisElement { labels: xp, degree: dp },
                TBasisElement { labels: xpp, degree: dpp },
                c,
            )
        })
        .collect()
}

/// One basis class of H_*(M) in the decomposition: a tuple's component with a
/// relative-homology degree and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub sigma: VertexSet,
    pub omega: VertexSet,
    pub labels: Vec<usize>,
    pub s: i64,
    pub index: usize,
    pub degree: i64,
}

/// The homology coproduct of the whole space on the decomposition basis,
/// with the dual product read off by transposition.
#[derive(Debug)]
pub struct StructureTable {
    field: Field,
    pub classes: Vec<StructureClass>,
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    unit: usize,
}

impl StructureTable {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for c in &self.classes {
            g.add(c.degree, 1);
        }
        g
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn coproduct(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[i]
    }

    /// Dual product constants: (h_i*·h_j*) = Σ_c (−1)^{|h_i||h_j|}·⟨Δ(h_c)⟩_{(i,j)}·h_c*.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        let sign = (self.classes[i].degree * self.classes[j].degree) % 2 != 0;
        let mut out = Vec::new();
        for (c, terms) in self.coproduct.iter().enumerate() {
            for &(a, b, ref v) in terms {
                if a == i && b == j {
                    out.push((c, if sign { v.neg() } else { v.clone() }));
                }
            }
        }
        out
    }

    /// Ranks of every multiplication H^p ⊗ H^q → H^{p+q}, for all degrees
    /// p, q carrying classes.
    pub fn mult_rank_table(&self) -> BTreeMap<(i64, i64), usize> {
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.classes.iter().enumerate() {
            by_degree.entry(c.degree).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for (&p, ps) in &by_degree {
            for (&q, qs) in &by_degree {
                let cs = by_degree.get(&(p + q)).map_or(&[][..], Vec::as_slice);
                if cs.is_empty() {
                    out.insert((p, q), 0);
                    continue;
                }
                let mut m = Matrix::zero(self.field, ps.len() * qs.len(), cs.len());
                for (col, &c) in cs.iter().enumerate() {
                    for &(a, b, ref v) in &self.coproduct[c] {
                        let (Some(ia), Some(jb)) = (
                            ps.iter().position(|&x| x == a),
                            qs.iter().position(|&x| x == b),
                        ) else {
                            continue;
                        };
                        let cur = m.get(ia * qs.len() + jb, col).add(v);
                        m.set(ia * qs.len() + jb, col, cur);
                    }
                }
                out.insert((p, q), rank_in_place(m));
            }
        }
        out
    }

    /// Δ(h) must reduce to h on both counit slots.
    pub fn is_counital(&self) -> bool {
        for (c, terms) in self.coproduct.iter().enumerate() {
            for slot in 0..2 {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for &(a, b, ref v) in terms {
                    let (eps, other) = if slot == 0 { (a, b) } else { (b, a) };
                    if eps == self.unit {
                        let e = acc.entry(other).or_insert_with(|| self.field.zero());
                        *e = e.add(v);
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                if !(acc.len() == 1 && acc.get(&c).is_some_and(Scalar::is_one)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_cocommutative(&self) -> bool {
        for terms in &self.coproduct {
            let mut diff: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for &(a, b, ref v) in terms {
                let e = diff.entry((a, b)).or_insert_with(|| self.field.zero());
                *e = e.add(v);
                let sign = (self.classes[a].degree * self.classes[b].degree) % 2 != 0;
                let sw = if sign { v.neg() } else { v.clone() };
                let e = diff.entry((b, a)).or_insert_with(|| self.field.zero());
                *e = e.sub(&sw);
            }
            if diff.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn is_coassociative(&self) -> bool {
        for terms in &self.coproduct {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for &(a, b, ref v) in terms {
                for &(a1, a2, ref w) in &self.coproduct[a] {
                    let e = lhs.entry((a1, a2, b)).or_insert_with(|| self.field.zero());
                    *e = e.add(&v.mul(w));
                }
                for &(b1, b2, ref w) in &self.coproduct[b] {
                    let e = rhs.entry((a, b1, b2)).or_insert_with(|| self.field.zero());
                    *e = e.add(&v.mul(w));
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn is_product_associative(&self) -> bool {
        let n = self.classes.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (c, v) in self.product(i, j) {
                        for (c2, w) in self.product(c, k) {
                            let e = lhs.entry(c2).or_insert_with(|| self.field.zero());
                            *e = e.add(&v.mul(&w));
                        }
                    }
                    let mut rhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (c, v) in self.product(j, k) {
                        for (c2, w) in self.product(i, c) {
                            let e = rhs.entry(c2).or_insert_with(|| self.field.zero());
                            *e = e.add(&v.mul(&w));
                        }
                    }
                    lhs.retain(|_, v| !v.is_zero());
                    rhs.retain(|_, v| !v.is_zero());
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The homology coproduct through the all-simplices cover: every component
/// class representative is split at the chain level (front/back on the index
/// simplex, Δ^T on the tuple, the (−1)^{(s−k)|x′|} sign and the kernel-killing
/// rule), and the result is decomposed against the target components.
pub fn homology_coproduct(inst: &Instance) -> Result<StructureTable, StructureError> {
    let cover = all_simplices_cover(inst.complex());
    let comps = components(inst, &cover)?;
    let field = inst.field();
    let m = inst.factors().len();

    let homs: Vec<HomologyData> = comps.classes.iter().map(PairClass::homology).collect();
    let mut projections: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
    for (ci, h) in homs.iter().enumerate() {
        for (s, _) in h.dims().iter() {
            projections.insert((ci, s), h.projection(s)?);
        }
    }

    let member_of: BTreeMap<(VertexSet, VertexSet, Vec<usize>), usize> = comps
        .members
        .iter()
        .enumerate()
        .map(|(i, (x, _))| {
            let (sig, omg) = tuple_pattern(inst, &x.labels);
            ((sig, omg, x.labels.clone()), i)
        })
        .collect();

    let mut classes: Vec<StructureClass> = Vec::new();
    let mut class_pos: BTreeMap<(usize, i64, usize), usize> = BTreeMap::new();
    for (mi, (x, ci)) in comps.members.iter().enumerate() {
        let (sig, omg) = (comps.classes[*ci].sigma, comps.classes[*ci].omega);
        for (s, d) in homs[*ci].dims().iter() {
            for idx in 0..d {
                class_pos.insert((mi, s, idx), classes.len());
                classes.push(StructureClass {
                    sigma: sig,
                    omega: omg,
                    labels: x.labels.clone(),
                    s,
                    index: idx,
                    degree: s + x.degree,
                });
            }
        }
    }

    let mut coproduct: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); classes.len()];
    for (mi, (x, ci)) in comps.members.iter().enumerate() {
        let class = &comps.classes[*ci];
        let hom = &homs[*ci];
        let dt = delta_t(inst, x);
        for (s, dcount) in hom.dims().iter() {
            let rep = hom.reps(s);
            let faces = &class.relchains.basis[&s];
            for idx in 0..dcount {
                let b = class_pos[&(mi, s, idx)];
                // buckets per (front member, back member, front rel degree)
                type Bucket = BTreeMap<(usize, usize), Scalar>;
                let mut buckets: BTreeMap<(usize, usize, i64), Bucket> = BTreeMap::new();
                for (li, &lam) in faces.iter().enumerate() {
                    let lc = rep.get(li, idx).clone();
                    if lc.is_zero() {
                        continue;
                    }
                    for (k, (front, back)) in aw_diagonal(lam).into_iter().enumerate() {
                        let fi = cover.intersection(front, m);
                        let bi = cover.intersection(back, m);
                        for (xp, xpp, c) in &dt {
                            let (sp_pat, op) = tuple_pattern(inst, &xp.labels);
                            let (spp_pat, opp) = tuple_pattern(inst, &xpp.labels);
                            if !op.inter(fi).is_empty() || !opp.inter(bi).is_empty() {
                                continue;
                            }
                            let mp = *member_of
                                .get(&(sp_pat, op, xp.labels.clone()))
                                .expect("front tuple is a basis member");
                            let mpp = *member_of
                                .get(&(spp_pat, opp, xpp.labels.clone()))
                                .expect("back tuple is a basis member");
                            let cp = comps.members[mp].1;
                            let cpp = comps.members[mpp].1;
                            let fidx = comps.classes[cp]
                                .relchains
                                .index_of(front)
                                .expect("front index set valid for front tuple");
                            let bidx = comps.classes[cpp]
                                .relchains
                                .index_of(back)
                                .expect("back index set valid for back tuple");
                            let mut coeff = lc.mul(c);
                            if ((s - k as i64) * xp.degree) % 2 != 0 {
                                coeff = coeff.neg();
                            }
                            let bucket = buckets.entry((mp, mpp, front.dim())).or_default();
                            let e = bucket.entry((fidx, bidx)).or_insert_with(|| field.zero());
                            *e = e.add(&coeff);
                        }
                    }
                }
                for ((mp, mpp, sp), w) in buckets {
                    let cp = comps.members[mp].1;
                    let cpp = comps.members[mpp].1;
                    let spp = s - sp;
                    let (Some(pf), Some(pb)) =
                        (projections.get(&(cp, sp)), projections.get(&(cpp, spp)))
                    else {
                        continue;
                    };
                    let (hp, hq) = (pf.rows(), pb.rows());
                    let mut y = Matrix::zero(field, hp, hq);
                    for ((fi2, bi2), wv) in &w {
                        if wv.is_zero() {
                            continue;
                        }
                        for i in 0..hp {
                            let a = pf.get(i, *fi2);
                            if a.is_zero() {
                                continue;
                            }
                            for j in 0..hq {
                                let bv = pb.get(j, *bi2);
                                if bv.is_zero() {
                                    continue;
                                }
                                let cur = y.get(i, j).add(&wv.mul(a).mul(bv));
                                y.set(i, j, cur);
                            }
                        }
                    }
                    for i in 0..hp {
                        for j in 0..hq {
                            if !y.get(i, j).is_zero() {
                                let pi = class_pos[&(mp, sp, i)];
                                let pj = class_pos[&(mpp, spp, j)];
                                coproduct[b].push((pi, pj, y.get(i, j).clone()));
                            }
                        }
                    }
                }
                coproduct[b].sort_by_key(|&(i, j, _)| (i, j));
            }
        }
    }

    let unit = classes
        .iter()
        .position(|c| {
            c.degree == 0
                && c.sigma.is_empty()
                && c.omega.is_empty()
                && c.labels
                    .iter()
                    .enumerate()
                    .all(|(i, &id)| id == inst.factor(i + 1).unit())
        })
        .expect("unit class present");

    Ok(StructureTable { field, classes, coproduct, unit })
}

fn tuple_pattern(inst: &Instance, labels: &[usize]) -> (VertexSet, VertexSet) {
    let mut sigma = VertexSet::EMPTY;
    let mut omega = VertexSet::EMPTY;
    for (i, &id) in labels.iter().enumerate() {
        match inst.factor(i + 1).part(id) {
            Part::Coker => sigma = sigma.with(i + 1),
            Part::Kernel => omega = omega.with(i + 1),
            Part::Image => {}
        }
    }
    (sigma, omega)
}

/// Splitting-hypothesis report: whether the image embeds as a subcoalgebra in
/// every factor, and if so, whether the transferred coproducts satisfy the
/// graded coalgebra laws they should.
#[derive(Debug)]
pub struct SplittingReport {
    pub per_factor: Vec<bool>,
    pub hypothesis_holds: bool,
    pub delta_t_cocommutative: Option<bool>,
    pub delta_t_coassociative: Option<bool>,
    pub homology_cocommutative: Option<bool>,
    pub homology_coassociative: Option<bool>,
}

/// Checks the splitting hypothesis and, when it holds, the coalgebra laws of
/// Δ^T on all basis tuples and of the full homology coproduct.
pub fn splitting_check(inst: &Instance) -> Result<SplittingReport, StructureError> {
    let per_factor: Vec<bool> = inst.factors().iter().map(FactorData::splitting_holds).collect();
    let hypothesis_holds = per_factor.iter().all(|&b| b);
    if !hypothesis_holds {
        return Ok(SplittingReport {
            per_factor,
            hypothesis_holds,
            delta_t_cocommutative: None,
            delta_t_coassociative: None,
            homology_cocommutative: None,
            homology_coassociative: None,
        });
    }
    let mut tuples: Vec<TBasisElement> = Vec::new();
    for pair in index_set(inst) {
        tuples.extend(t_basis(inst, &pair));
    }
    let field = inst.field();
    let key = |x: &TBasisElement| x.labels.clone();
    let mut cocomm = true;
    let mut coassoc = true;
    for x in &tuples {
        let terms = delta_t(inst, x);
        let mut diff: BTreeMap<(Vec<usize>, Vec<usize>), Scalar> = BTreeMap::new();
        for (xp, xpp, c) in &terms {
            let e = diff.entry((key(xp), key(xpp))).or_insert_with(|| field.zero());
            *e = e.add(c);
            let sw = if (xp.degree * xpp.degree) % 2 != 0 { c.neg() } else { c.clone() };
            let e = diff.entry((key(xpp), key(xp))).or_insert_with(|| field.zero());
            *e = e.sub(&sw);
        }
        if diff.values().any(|v| !v.is_zero()) {
            cocomm = false;
        }
        let mut lhs: BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), Scalar> = BTreeMap::new();
        for (xp, xpp, c) in &terms {
            for (a1, a2, w) in delta_t(inst, xp) {
                let e = lhs
                    .entry((key(&a1), key(&a2), key(xpp)))
                    .or_insert_with(|| field.zero());
                *e = e.add(&c.mul(&w));
            }
            for (b1, b2, w) in delta_t(inst, xpp) {
                let e = rhs
                    .entry((key(xp), key(&b1), key(&b2)))
                    .or_insert_with(|| field.zero());
                *e = e.add(&c.mul(&w));
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        if lhs != rhs {
            coassoc = false;
        }
    }
    let table = homology_coproduct(inst)?;
    Ok(SplittingReport {
        per_factor,
        hypothesis_holds,
        delta_t_cocommutative: Some(cocomm),
        delta_t_coassociative: Some(coassoc),
        homology_cocommutative: Some(table.is_cocommutative()),
        homology_coassociative: Some(table.is_coassociative()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{analyze_pair, sphere_pair, SimplicialPair};
    use crate::hochster::betti;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn disk_circle(field: Field) -> FactorData {
        let p = SimplicialPair::new(
            SimplicialComplex::full(3),
            SimplicialComplex::from_facets(3, &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])], false)
                .unwrap(),
        )
        .unwrap();
        analyze_pair(&p, field).unwrap()
    }

    fn two_points_instance(field: Field) -> Instance {
        let k = SimplicialComplex::from_facets(2, &[vs(&[1]), vs(&[2])], false).unwrap();
        Instance::new(field, k, vec![disk_circle(field), disk_circle(field)]).unwrap()
    }

    fn square_instance(field: Field) -> Instance {
        let k = SimplicialComplex::from_facets(
            4,
            &[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])],
            false,
        )
        .unwrap();
        Instance::new(field, k, vec![disk_circle(field); 4]).unwrap()
    }

    #[test]
    fn covers_of_small_complexes() {
        let k = SimplicialComplex::from_facets(2, &[vs(&[1]), vs(&[2])], false).unwrap();
        let c = all_simplices_cover(&k);
        assert_eq!(c.entries(), &[VertexSet::EMPTY, vs(&[1]), vs(&[2])]);
        let e = SimplicialComplex::empty(3);
        assert_eq!(all_simplices_cover(&e).entries(), &[VertexSet::EMPTY]);
        let f = facets_cover(&k);
        assert_eq!(f.entries(), &[vs(&[1]), vs(&[2])]);
    }

    #[test]
    fn cover_validation() {
        let k = SimplicialComplex::from_facets(2, &[vs(&[1]), vs(&[2])], false).unwrap();
        assert!(matches!(
            SimplexCover::new(&k, vec![vs(&[1, 2])]),
            Err(StructureError::EntryNotInK(_))
        ));
        assert!(matches!(
            SimplexCover::new(&k, vec![vs(&[1])]),
            Err(StructureError::FacetNotCovered(f)) if f == vs(&[2])
        ));
        assert!(SimplexCover::new(&k, vec![vs(&[1]), vs(&[2]), VertexSet::EMPTY]).is_ok());
    }

    #[test]
    fn single_entry_cover_is_a_product() {
        // K = {φ}: one cover entry φ, M_φ = A₁ × A₂, zero differential
        let f = Field::Rationals;
        let k = SimplicialComplex::empty(2);
        let inst = Instance::new(f, k.clone(), vec![disk_circle(f), disk_circle(f)]).unwrap();
        let cc = cover_complex(&inst, &all_simplices_cover(&k)).unwrap();
        let totals = cc.homology_totals().unwrap();
        assert_eq!(totals.to_vec(0, 2), vec![1, 2, 1]);
        for (d, _) in cc.dims().iter() {
            assert!(cc.boundary(d).is_zero());
        }
    }

    #[test]
    fn chain_identities_hold() {
        for field in [Field::Rationals, Field::Prime(2)] {
            let inst = two_points_instance(field);
            let cc = cover_complex(&inst, &all_simplices_cover(inst.complex())).unwrap();
            assert!(cc.check_chain_identities());
            cc.to_chain_complex().unwrap(); // validates d² = 0 again
        }
        let inst = square_instance(Field::Prime(3));
        let cc = cover_complex(&inst, &facets_cover(inst.complex())).unwrap();
        assert!(cc.check_chain_identities());
    }

    #[test]
    fn cover_totals_match_betti() {
        let f = Field::Rationals;
        let inst = two_points_instance(f);
        let b = betti(&inst);
        let all = cover_complex(&inst, &all_simplices_cover(inst.complex())).unwrap();
        assert_eq!(&all.homology_totals().unwrap(), b.totals());
        let fac = cover_complex(&inst, &facets_cover(inst.complex())).unwrap();
        assert_eq!(&fac.homology_totals().unwrap(), b.totals());

        let inst4 = square_instance(Field::Prime(2));
        let b4 = betti(&inst4);
        let fac4 = cover_complex(&inst4, &facets_cover(inst4.complex())).unwrap();
        assert_eq!(&fac4.homology_totals().unwrap(), b4.totals());
    }

    #[test]
    fn component_shapes_on_two_points() {
        let f = Field::Rationals;
        let inst = two_points_instance(f);
        let cover = all_simplices_cover(inst.complex());
        let comps = components(&inst, &cover).unwrap();
        // kernel⊗kernel tuple: support is two points, H_1(rel) = F, degree 3
        let kk = comps
            .classes
            .iter()
            .find(|c| c.omega == vs(&[1, 2]))
            .expect("kernel-kernel class");
        assert_eq!(kk.mu_max, vs(&[1, 2, 3]));
        let support_facets = kk.support.facets();
        assert_eq!(support_facets, vec![vs(&[2]), vs(&[3])]);
        assert_eq!(kk.reldims.dim(1), 1);
        // unit pair: support {φ}, H_0 = F
        let unit = comps
            .classes
            .iter()
            .find(|c| c.sigma.is_empty() && c.omega.is_empty())
            .unwrap();
        assert!(unit.support.facets() == vec![VertexSet::EMPTY]);
        assert_eq!(unit.reldims.dim(0), 1);
        // totals agree with the Betti table
        assert_eq!(&comps.totals(), betti(&inst).totals());
    }

    #[test]
    fn decomposition_totals_on_covers() {
        let f = Field::Prime(2);
        let inst = square_instance(f);
        let b = betti(&inst);
        for cover in [all_simplices_cover(inst.complex()), facets_cover(inst.complex())] {
            assert_eq!(&decomposition_totals(&inst, &cover).unwrap(), b.totals());
        }
    }

    #[test]
    fn support_betti_matches_link_betti() {
        let f = Field::Rationals;
        for inst in [two_points_instance(f), square_instance(f)] {
            let cover = all_simplices_cover(inst.complex());
            let comps = components(&inst, &cover).unwrap();
            for c in &comps.classes {
                let link = inst.complex().hochster_link(c.sigma, c.omega).unwrap();
                let lh = betti_dims(
                    &crate::chains::augmented_complex(&link, f).complex,
                );
                let nh = betti_dims(
                    &crate::chains::augmented_complex(&c.support, f).complex,
                );
                assert_eq!(lh, nh, "pair (σ={}, ω={})", c.sigma, c.omega);
            }
        }
    }

    #[test]
    fn delta_t_examples() {
        let f = Field::Rationals;
        let inst = two_points_instance(f);
        // unit tuple
        let u1 = inst.factor(1).unit();
        let u2 = inst.factor(2).unit();
        let unit = TBasisElement { labels: vec![u1, u2], degree: 0 };
        let terms = delta_t(&inst, &unit);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0.labels, vec![u1, u2]);
        assert!(terms[0].2.is_one());

        // kernel ⊗ unit, kernel primitive of degree 1
        let k1 = inst.factor(1).ids_of(Part::Kernel)[0];
        let x = TBasisElement { labels: vec![k1, u2], degree: 1 };
        let terms = delta_t(&inst, &x);
        assert_eq!(terms.len(), 2);
        for (xp, xpp, c) in &terms {
            assert!(c.is_one());
            assert_eq!(xp.degree + xpp.degree, 1);
        }

        // two odd kernels: the crossed term picks up the Koszul sign
        let k2 = inst.factor(2).ids_of(Part::Kernel)[0];
        let xx = TBasisElement { labels: vec![k1, k2], degree: 2 };
        let terms = delta_t(&inst, &xx);
        assert_eq!(terms.len(), 4);
        let crossed = terms
            .iter()
            .find(|(xp, _, _)| xp.labels == vec![u1, k2])
            .expect("crossed term");
        assert_eq!(crossed.1.labels, vec![k1, u2]);
        assert_eq!(crossed.2, f.from_i64(-1));
    }

    #[test]
    fn homology_coproduct_of_sphere() {
        let f = Field::Rationals;
        let inst = two_points_instance(f);
        let table = homology_coproduct(&inst).unwrap();
        assert_eq!(table.dims().to_vec(0, 3), vec![1, 0, 0, 1]);
        assert!(table.is_counital());
        assert!(table.is_cocommutative());
        assert!(table.is_coassociative());
        assert!(table.is_product_associative());
        // top class is primitive
        let top = table.classes.iter().position(|c| c.degree == 3).unwrap();
        let u = table.unit();
        for &(a, b, _) in table.coproduct(top) {
            assert!(a == u || b == u);
        }
    }

    #[test]
    fn homology_coproduct_of_sphere_product() {
        let f = Field::Prime(2);
        let inst = square_instance(f);
        let table = homology_coproduct(&inst).unwrap();
        assert_eq!(table.dims().to_vec(0, 6), vec![1, 0, 0, 2, 0, 0, 1]);
        assert!(table.is_counital());
        assert!(table.is_coassociative());
        // the top class coproduct contains the g₁⊗g₂ cross term: dually the
        // two degree-3 classes multiply to the top class
        let d3: Vec<usize> = (0..table.classes.len())
            .filter(|&i| table.classes[i].degree == 3)
            .collect();
        let ranks = table.mult_rank_table();
        assert_eq!(ranks[&(3, 3)], 1);
        assert_eq!(d3.len(), 2);
        let prod = table.product(d3[0], d3[1]);
        assert_eq!(prod.len(), 1);
        // unit laws in the rank table
        let dims = table.dims();
        for (d, dim) in dims.iter() {
            assert_eq!(ranks[&(0, d)], dim);
        }
    }

    #[test]
    fn splitting_check_on_sphere_pairs() {
        let f = Field::Rationals;
        let k = SimplicialComplex::from_facets(2, &[vs(&[1]), vs(&[2])], false).unwrap();
        let sp = sphere_pair(2, 1, f).unwrap();
        let inst = Instance::new(f, k, vec![sp.clone(), sp]).unwrap();
        let report = splitting_check(&inst).unwrap();
        assert!(report.hypothesis_holds);
        assert_eq!(report.delta_t_cocommutative, Some(true));
        assert_eq!(report.delta_t_coassociative, Some(true));
        assert_eq!(report.homology_cocommutative, Some(true));
        assert_eq!(report.homology_coassociative, Some(true));
    }

    #[test]
    fn splitting_check_detects_failure() {
        // A = isolated vertex 1 ⊔ square on {2..5}; X joins them by an edge.
        // The degree-1 image class has a kernel term in its coproduct.
        let f = Field::Rationals;
        let square = [vs(&[2, 3]), vs(&[3, 4]), vs(&[4, 5]), vs(&[2, 5])];
        let mut x_facets = square.to_vec();
        x_facets.push(vs(&[1, 2]));
        let mut a_facets = square.to_vec();
        a_facets.push(vs(&[1]));
        let p = SimplicialPair::new(
            SimplicialComplex::from_facets(5, &x_facets, false).unwrap(),
            SimplicialComplex::from_facets(5, &a_facets, false).unwrap(),
        )
        .unwrap();
        let fac = analyze_pair(&p, f).unwrap();
        assert!(!fac.splitting_holds());
        let k = SimplicialComplex::from_facets(1, &[vs(&[1])], false).unwrap();
        let inst = Instance::new(f, k, vec![fac]).unwrap();
        let report = splitting_check(&inst).unwrap();
        assert!(!report.hypothesis_holds);
        assert_eq!(report.delta_t_cocommutative, None);
    }

    #[test]
    fn starved_cover_is_sound_or_rejected() {
        // cover K = full triangle by its top face only
        let f = Field::Rationals;
        let k = SimplicialComplex::full(3);
        let sp = sphere_pair(1, 0, f).unwrap();
        let inst = Instance::new(f, k.clone(), vec![sp.clone(), sp.clone(), sp]).unwrap();
        let cover = SimplexCover::new(&k, vec![vs(&[1, 2, 3])]).unwrap();
        let b = betti(&inst);
        assert_eq!(&decomposition_totals(&inst, &cover).unwrap(), b.totals());
    }
}
