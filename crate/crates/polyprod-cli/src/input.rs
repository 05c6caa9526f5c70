//! JSON instance files: the schema, parsing with precise error paths, and
//! construction of library objects from the parsed description.
//!
//! A file looks like
//!
//! ```json
//! {
//!   "field": {"type": "prime", "p": 2},
//!   "complex": {"m": 2, "facets": [[1], [2]]},
//!   "factors": [
//!     {"kind": "disk_sphere", "n": 2},
//!     {"kind": "sphere_pair", "r": 2, "k": 1}
//!   ]
//! }
//! ```
//!
//! Vertices are 1-based and must stay within the declared ground set. Factor
//! `i` (0-based in error paths) is attached to vertex `i + 1`.

use std::collections::BTreeMap;
use std::path::Path;

use polyprod::duality::SpherePairInstance;
use polyprod::exactlin::Field;
use polyprod::factors::{
    analyze_pair, disk_sphere, from_raw, sphere_pair, CoproductTerms, FactorData, FactorGen, Part,
    RawFactor, SimplicialPair,
};
use polyprod::hochster::Instance;
use polyprod::simplicial::{SimplicialComplex, VertexSet};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Ground-set cap shared with the bitmask complexes in the library.
pub const MAX_GROUND: usize = 30;

/// Sphere dimensions beyond this are refused up front: the simplicial models
/// grow as 2^r and every pipeline downstream would drown.
pub const MAX_SPHERE_DIM: u32 = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub complex: ComplexSpec,
    pub factors: Vec<FactorSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    /// True selects the void complex (no faces at all, not even the empty
    /// one); it requires an empty facet list.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub void: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorSpec {
    /// An explicit pair A ⊆ X of simplicial complexes on a shared vertex set
    /// (the largest vertex mentioned in either facet list).
    SimplicialPair { x_facets: Vec<Vec<usize>>, a_facets: Vec<Vec<usize>> },
    /// (S^{r+1}, S^k) with 0 ≤ k ≤ r, modeled as boundary-of-simplex joins.
    SpherePair { r: u32, k: u32 },
    /// (Δ^n, ∂Δ^n): the n-disk relative to its boundary sphere.
    DiskSphere { n: u32 },
    /// Hand-authored homology data: generators with their summand and degree,
    /// and both coproducts as integer-coefficient term lists.
    Raw {
        gens: Vec<RawGenSpec>,
        #[serde(default)]
        coproduct_a: Vec<RawCoproductSpec>,
        #[serde(default)]
        coproduct_x: Vec<RawCoproductSpec>,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGenSpec {
    pub part: PartSpec,
    pub degree: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartSpec {
    Kernel,
    Image,
    Coker,
}

impl From<PartSpec> for Part {
    fn from(p: PartSpec) -> Part {
        match p {
            PartSpec::Kernel => Part::Kernel,
            PartSpec::Image => Part::Image,
            PartSpec::Coker => Part::Coker,
        }
    }
}

/// One coproduct value: Δ(gen) = Σ coeff · (left ⊗ right), terms given as
/// `[left, right, coeff]` triples with integer coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCoproductSpec {
    pub gen: usize,
    pub terms: Vec<(usize, usize, i64)>,
}

/// Reads a file into memory, wrapping I/O failures with the path.
pub fn load(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses the JSON text of an instance file. Errors carry the JSON path of
/// the offending element ("factors[1].r" and the like).
pub fn parse_instance_text(text: &str) -> Result<InstanceFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = match e.path().to_string().as_str() {
            "." => "(document root)".to_string(),
            p => p.to_string(),
        };
        CliError::Json { path, message: e.inner().to_string() }
    })
}

pub fn field_from_spec(spec: &FieldSpec) -> Result<Field, CliError> {
    match spec {
        FieldSpec::Rational => Ok(Field::Rationals),
        FieldSpec::Prime { p } => {
            Field::prime(*p).map_err(|e| CliError::invalid("field.p", e.to_string()))
        }
    }
}

/// Parses the `--field` override: "rationals"/"q", "prime:p", or a bare
/// prime such as "7".
pub fn parse_field_flag(s: &str) -> Result<Field, CliError> {
    if let Ok(f) = Field::parse(s) {
        return Ok(f);
    }
    if let Ok(p) = s.trim().parse::<u64>() {
        return Field::prime(p).map_err(|e| CliError::invalid("--field", e.to_string()));
    }
    Err(CliError::invalid(
        "--field",
        format!("cannot parse {s:?}; use \"rationals\", \"prime:p\", or a bare prime"),
    ))
}

fn facet_sets(prefix: &str, lists: &[Vec<usize>], m: usize) -> Result<Vec<VertexSet>, CliError> {
    lists
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            for (j, &v) in vs.iter().enumerate() {
                if v < 1 || v > m {
                    return Err(CliError::invalid(
                        format!("{prefix}[{i}][{j}]"),
                        format!("vertex {v} is outside 1..={m}"),
                    ));
                }
            }
            Ok(VertexSet::from_vertices(vs.iter().copied()))
        })
        .collect()
}

pub fn build_complex(spec: &ComplexSpec) -> Result<SimplicialComplex, CliError> {
    if spec.m > MAX_GROUND {
        return Err(CliError::invalid(
            "complex.m",
            format!("at most {MAX_GROUND} vertices supported, got {}", spec.m),
        ));
    }
    if spec.void && !spec.facets.is_empty() {
        return Err(CliError::invalid("complex.void", "a void complex cannot list facets"));
    }
    let facets = facet_sets("complex.facets", &spec.facets, spec.m)?;
    SimplicialComplex::from_facets(spec.m, &facets, spec.void)
        .map_err(|e| CliError::invalid("complex", e.to_string()))
}

pub fn build_factor(index: usize, spec: &FactorSpec, field: Field) -> Result<FactorData, CliError> {
    let at = |suffix: &str| format!("factors[{index}]{suffix}");
    match spec {
        FactorSpec::SimplicialPair { x_facets, a_facets } => {
            let ground =
                x_facets.iter().chain(a_facets).flatten().copied().max().unwrap_or(0);
            if ground == 0 {
                return Err(CliError::invalid(
                    at(".x_facets"),
                    "the total space needs at least one vertex",
                ));
            }
            if ground > MAX_GROUND {
                return Err(CliError::invalid(
                    at(""),
                    format!("vertices must stay within 1..={MAX_GROUND}"),
                ));
            }
            let xf = facet_sets(&at(".x_facets"), x_facets, ground)?;
            let af = facet_sets(&at(".a_facets"), a_facets, ground)?;
            let x = SimplicialComplex::from_facets(ground, &xf, false)
                .map_err(|e| CliError::invalid(at(".x_facets"), e.to_string()))?;
            let a = SimplicialComplex::from_facets(ground, &af, false)
                .map_err(|e| CliError::invalid(at(".a_facets"), e.to_string()))?;
            let pair = SimplicialPair::new(x, a)
                .map_err(|e| CliError::invalid(at(""), e.to_string()))?;
            analyze_pair(&pair, field).map_err(|e| CliError::invalid(at(""), e.to_string()))
        }
        FactorSpec::SpherePair { r, k } => {
            if k > r {
                return Err(CliError::invalid(
                    at(""),
                    format!("sphere pair needs k <= r, got r={r}, k={k}"),
                ));
            }
            if *r > MAX_SPHERE_DIM {
                return Err(CliError::invalid(
                    at(".r"),
                    format!("sphere dimension at most {MAX_SPHERE_DIM} supported"),
                ));
            }
            sphere_pair(*r as usize, *k as usize, field)
                .map_err(|e| CliError::invalid(at(""), e.to_string()))
        }
        FactorSpec::DiskSphere { n } => {
            if *n < 1 || *n > MAX_SPHERE_DIM {
                return Err(CliError::invalid(
                    at(".n"),
                    format!("need 1 <= n <= {MAX_SPHERE_DIM}"),
                ));
            }
            disk_sphere(*n as usize, field).map_err(|e| CliError::invalid(at(""), e.to_string()))
        }
        FactorSpec::Raw { gens, coproduct_a, coproduct_x } => {
            let mut fg = Vec::with_capacity(gens.len());
            for (j, g) in gens.iter().enumerate() {
                if g.degree < 0 {
                    return Err(CliError::invalid(
                        at(&format!(".gens[{j}].degree")),
                        "degrees must be nonnegative",
                    ));
                }
                fg.push(FactorGen { part: g.part.into(), degree: g.degree });
            }
            let ca = raw_terms(&at(".coproduct_a"), coproduct_a, gens.len(), field)?;
            let cx = raw_terms(&at(".coproduct_x"), coproduct_x, gens.len(), field)?;
            from_raw(field, RawFactor { gens: fg, coproduct_a: ca, coproduct_x: cx })
                .map_err(|e| CliError::invalid(at(""), e.to_string()))
        }
    }
}

fn raw_terms(
    prefix: &str,
    entries: &[RawCoproductSpec],
    ngens: usize,
    field: Field,
) -> Result<BTreeMap<usize, CoproductTerms>, CliError> {
    let mut out: BTreeMap<usize, CoproductTerms> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        if e.gen >= ngens {
            return Err(CliError::invalid(
                format!("{prefix}[{i}].gen"),
                format!("generator id {} out of range 0..{ngens}", e.gen),
            ));
        }
        if out.contains_key(&e.gen) {
            return Err(CliError::invalid(
                format!("{prefix}[{i}].gen"),
                format!("duplicate entry for generator {}", e.gen),
            ));
        }
        let mut terms = Vec::with_capacity(e.terms.len());
        for (j, &(a, b, c)) in e.terms.iter().enumerate() {
            if a >= ngens || b >= ngens {
                return Err(CliError::invalid(
                    format!("{prefix}[{i}].terms[{j}]"),
                    format!("tensor factor id out of range 0..{ngens}"),
                ));
            }
            terms.push((a, b, field.from_i64(c)));
        }
        out.insert(e.gen, terms);
    }
    Ok(out)
}

/// Builds the full instance, overriding the file's field when asked to.
pub fn build_instance(
    file: &InstanceFile,
    field_override: Option<Field>,
) -> Result<Instance, CliError> {
    let field = match field_override {
        Some(f) => f,
        None => field_from_spec(&file.field)?,
    };
    let k = build_complex(&file.complex)?;
    if file.factors.len() != file.complex.m {
        return Err(CliError::invalid(
            "factors",
            format!(
                "expected {} factors, one per vertex of the complex, got {}",
                file.complex.m,
                file.factors.len()
            ),
        ));
    }
    let factors = file
        .factors
        .iter()
        .enumerate()
        .map(|(i, s)| build_factor(i, s, field))
        .collect::<Result<Vec<_>, _>>()?;
    Instance::new(field, k, factors).map_err(|e| CliError::Compute(e.to_string()))
}

/// Builds the sphere-parameter view used by the duality command. Every
/// factor must literally be a `sphere_pair` entry.
pub fn build_sphere_instance(
    file: &InstanceFile,
    field_override: Option<Field>,
) -> Result<SpherePairInstance, CliError> {
    let field = match field_override {
        Some(f) => f,
        None => field_from_spec(&file.field)?,
    };
    let k = build_complex(&file.complex)?;
    if file.factors.len() != file.complex.m {
        return Err(CliError::invalid(
            "factors",
            format!(
                "expected {} factors, one per vertex of the complex, got {}",
                file.complex.m,
                file.factors.len()
            ),
        ));
    }
    let params = file
        .factors
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            FactorSpec::SpherePair { r, k } => Ok((*r as i64, *k as i64)),
            _ => Err(CliError::invalid(
                format!("factors[{i}].kind"),
                "the dual command needs every factor to be a sphere_pair",
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpherePairInstance::new(k, params, field).map_err(|e| CliError::invalid("factors", e.to_string()))
}
