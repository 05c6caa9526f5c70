//! Seeded random instances and exhaustive complex enumeration for sweeps and
//! the integration suite. Everything here is deterministic given the RNG
//! state, so corpora can be reproduced from a seed alone.

use polyprod::duality::SpherePairInstance;
use polyprod::exactlin::Field;
use polyprod::factors::{
    analyze_pair, disk_sphere, sphere_pair, FactorData, SimplicialPair,
};
use polyprod::hochster::Instance;
use polyprod::simplicial::{SimplicialComplex, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every simplicial complex on the ground set [t], void included. The count
/// is the Dedekind number of downward-closed families, so this is only
/// practical for t ≤ 4 (169 complexes); larger t is refused.
pub fn all_complexes(t: usize) -> Vec<SimplicialComplex> {
    assert!((1..=4).contains(&t), "exhaustive enumeration is practical only for 1 <= t <= 4");
    let nsub = (1usize << t) - 1;
    let mut out = vec![SimplicialComplex::void(t)];
    for fam in 0u64..(1 << nsub) {
        let has = |s: usize| fam >> (s - 1) & 1 == 1;
        let closed = (1..=nsub).filter(|&s| has(s)).all(|s| {
            (0..t).all(|v| {
                let sub = s & !(1 << v);
                sub == 0 || sub == s || has(sub)
            })
        });
        if !closed {
            continue;
        }
        let faces: Vec<VertexSet> = (1..=nsub)
            .filter(|&s| has(s))
            .map(|s| VertexSet::from_vertices((1..=t).filter(|v| s >> (v - 1) & 1 == 1)))
            .collect();
        out.push(SimplicialComplex::from_facets(t, &faces, false).expect("closed family"));
    }
    out
}

fn random_subset<R: Rng>(rng: &mut R, t: usize, nonempty: bool) -> VertexSet {
    loop {
        let vs = VertexSet::from_vertices((1..=t).filter(|_| rng.gen_bool(0.5)));
        if !nonempty || !vs.is_empty() {
            return vs;
        }
    }
}

/// A random complex on [t]: a handful of random facets, occasionally the
/// void complex when `allow_void` is set.
pub fn random_complex<R: Rng>(rng: &mut R, t: usize, allow_void: bool) -> SimplicialComplex {
    if allow_void && rng.gen_ratio(1, 30) {
        return SimplicialComplex::void(t);
    }
    let nf = rng.gen_range(0..=t.min(4));
    let facets: Vec<VertexSet> = (0..nf).map(|_| random_subset(rng, t, true)).collect();
    SimplicialComplex::from_facets(t, &facets, false).expect("vertices stay in range")
}

/// Like [`random_complex`], but facets are dropped until the complex has at
/// most `max_faces` faces (the empty face included), so that covers indexed
/// by all simplices stay within the library's cover-size limit.
pub fn random_complex_capped<R: Rng>(
    rng: &mut R,
    t: usize,
    max_faces: usize,
) -> SimplicialComplex {
    let nf = rng.gen_range(0..=t.min(4));
    let mut facets: Vec<VertexSet> = (0..nf).map(|_| random_subset(rng, t, true)).collect();
    loop {
        let k = SimplicialComplex::from_facets(t, &facets, false).expect("vertices stay in range");
        if k.faces().count() <= max_faces {
            return k;
        }
        facets.pop();
    }
}

/// The three fields every sweep rotates through.
pub fn random_field<R: Rng>(rng: &mut R) -> Field {
    match rng.gen_range(0..3u8) {
        0 => Field::Rationals,
        1 => Field::prime(2).unwrap(),
        _ => Field::prime(3).unwrap(),
    }
}

/// The factor menu for random instances. Weights below estimate the
/// per-coordinate branching of the brute-force oracle, so instance builders
/// can keep the total block size within a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// (Δ^d, ∂Δ^d)
    DiskSphere(usize),
    /// (Δ^d, pt)
    SimplexPoint(usize),
    /// (Δ^1, S^0): the edge with both endpoints
    EdgeEnds,
    /// (S^{r+1}, S^k)
    Sphere { r: usize, k: usize },
}

impl FactorKind {
    /// Number of nonempty faces of the total space X, i.e. the worst-case
    /// per-coordinate branching factor of the oracle's cell basis.
    pub fn weight(self) -> usize {
        match self {
            FactorKind::DiskSphere(d) | FactorKind::SimplexPoint(d) => (1 << (d + 1)) - 1,
            FactorKind::EdgeEnds => 3,
            FactorKind::Sphere { r, k } => ((1 << (k + 2)) - 1) * ((1 << (r - k + 2)) - 1) - 1,
        }
    }

    pub fn build(self, field: Field) -> FactorData {
        match self {
            FactorKind::DiskSphere(d) => disk_sphere(d, field).expect("valid disk pair"),
            FactorKind::SimplexPoint(d) => {
                let x = SimplicialComplex::full(d + 1);
                let a = SimplicialComplex::from_facets(
                    d + 1,
                    &[VertexSet::from_vertices([1])],
                    false,
                )
                .expect("one vertex");
                analyze_pair(&SimplicialPair::new(x, a).expect("point is a subcomplex"), field)
                    .expect("simplex-point pair")
            }
            FactorKind::EdgeEnds => {
                let x = SimplicialComplex::full(2);
                let a = SimplicialComplex::from_facets(
                    2,
                    &[VertexSet::from_vertices([1]), VertexSet::from_vertices([2])],
                    false,
                )
                .expect("two vertices");
                analyze_pair(&SimplicialPair::new(x, a).expect("ends are a subcomplex"), field)
                    .expect("edge-ends pair")
            }
            FactorKind::Sphere { r, k } => sphere_pair(r, k, field).expect("valid sphere pair"),
        }
    }
}

fn random_factor_kind<R: Rng>(rng: &mut R, budget_left: usize) -> FactorKind {
    for _ in 0..12 {
        let kind = match rng.gen_range(0..4u8) {
            0 => FactorKind::DiskSphere(rng.gen_range(1..=3)),
            1 => FactorKind::SimplexPoint(rng.gen_range(1..=2)),
            2 => FactorKind::EdgeEnds,
            _ => {
                let r = rng.gen_range(0..=3);
                FactorKind::Sphere { r, k: rng.gen_range(0..=r) }
            }
        };
        if kind.weight() <= budget_left {
            return kind;
        }
    }
    FactorKind::EdgeEnds
}

/// Size limits for one random instance. The tuple budgets bound the product
/// of factor weights; rationals get a tighter budget because exact rational
/// elimination is far more expensive than prime-field arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct InstancePolicy {
    pub max_m: usize,
    pub tuple_budget_rationals: usize,
    pub tuple_budget_prime: usize,
    /// Cap on the number of faces of K (empty face included).
    pub max_faces: usize,
}

impl InstancePolicy {
    /// Sized for Betti-level comparisons across all pipelines.
    pub fn betti() -> InstancePolicy {
        InstancePolicy {
            max_m: 5,
            tuple_budget_rationals: 2_000,
            tuple_budget_prime: 3_200,
            max_faces: 12,
        }
    }

    /// Sized for full ring-structure comparisons, which keep dense cycle
    /// representatives around and need much smaller blocks.
    pub fn ring() -> InstancePolicy {
        InstancePolicy {
            max_m: 4,
            tuple_budget_rationals: 700,
            tuple_budget_prime: 1_200,
            max_faces: 10,
        }
    }
}

/// A random instance within the policy's budget. All factors come from the
/// simplicially modeled menu, so the oracle can always run.
pub fn random_instance<R: Rng>(rng: &mut R, field: Field, policy: &InstancePolicy) -> Instance {
    let m = rng.gen_range(1..=policy.max_m);
    let budget = match field {
        Field::Rationals => policy.tuple_budget_rationals,
        _ => policy.tuple_budget_prime,
    };
    let mut running = 1usize;
    let mut factors = Vec::with_capacity(m);
    for _ in 0..m {
        let kind = random_factor_kind(rng, budget / running);
        running = running.saturating_mul(kind.weight());
        factors.push(kind.build(field));
    }
    let k = random_complex_capped(rng, m, policy.max_faces);
    Instance::new(field, k, factors).expect("corpus instances are valid by construction")
}

/// A random all-spheres instance: (S^{r_i+1}, S^{k_i}) with
/// `min_k <= k_i <= r_i <= max_r` and a random complex on [m].
pub fn random_sphere_instance<R: Rng>(
    rng: &mut R,
    field: Field,
    max_m: usize,
    max_r: i64,
    min_k: i64,
    max_faces: Option<usize>,
) -> SpherePairInstance {
    let m = rng.gen_range(1..=max_m);
    let params: Vec<(i64, i64)> = (0..m)
        .map(|_| {
            let r = rng.gen_range(min_k.max(0)..=max_r);
            let k = rng.gen_range(min_k..=r);
            (r, k)
        })
        .collect();
    let k = match max_faces {
        Some(cap) => random_complex_capped(rng, m, cap),
        None => random_complex(rng, m, false),
    };
    SpherePairInstance::new(k, params, field).expect("parameters validated by construction")
}

/// A random pair A ⊆ X on up to `max_t` vertices. X always contains a path
/// through all vertices, so it is connected; A is the downward closure of a
/// random sample of faces of X plus one vertex.
pub fn random_pair<R: Rng>(rng: &mut R, max_t: usize) -> SimplicialPair {
    let t = rng.gen_range(1..=max_t);
    let mut xf: Vec<VertexSet> = if t == 1 {
        vec![VertexSet::from_vertices([1])]
    } else {
        (1..t).map(|i| VertexSet::from_vertices([i, i + 1])).collect()
    };
    for _ in 0..rng.gen_range(0..=3) {
        xf.push(random_subset(rng, t, true));
    }
    let x = SimplicialComplex::from_facets(t, &xf, false).expect("vertices stay in range");
    let faces: Vec<VertexSet> = x.faces().filter(|f| !f.is_empty()).collect();
    let picks = rng.gen_range(0..=faces.len().min(4));
    let mut af: Vec<VertexSet> = faces.choose_multiple(rng, picks).copied().collect();
    af.push(VertexSet::from_vertices([rng.gen_range(1..=t)]));
    let a = SimplicialComplex::from_facets(t, &af, false).expect("faces of X stay in range");
    SimplicialPair::new(x, a).expect("closure of faces of X is a subcomplex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complex_counts_match_dedekind_numbers() {
        assert_eq!(all_complexes(1).len(), 3);
        assert_eq!(all_complexes(2).len(), 6);
        assert_eq!(all_complexes(3).len(), 20);
        assert_eq!(all_complexes(4).len(), 168);
    }

    #[test]
    fn capped_complexes_respect_the_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let k = random_complex_capped(&mut rng, 5, 12);
            assert!(k.faces().count() <= 12);
        }
    }

    #[test]
    fn instances_are_reproducible_from_the_seed() {
        let policy = InstancePolicy::betti();
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let ia = random_instance(&mut a, Field::Rationals, &policy);
            let ib = random_instance(&mut b, Field::Rationals, &policy);
            assert_eq!(ia.complex().facets(), ib.complex().facets());
            assert_eq!(
                polyprod::hochster::betti(&ia).totals(),
                polyprod::hochster::betti(&ib).totals()
            );
        }
    }

    #[test]
    fn random_pairs_are_valid_and_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let p = random_pair(&mut rng, 5);
            let f = analyze_pair(&p, Field::prime(2).unwrap());
            assert!(f.is_ok(), "{:?}", f.err());
        }
    }
}
