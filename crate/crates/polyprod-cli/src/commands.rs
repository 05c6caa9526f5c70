//! The five subcommands. Each takes the raw text of an instance file (where
//! it needs one) plus parsed options, and returns the full stdout text along
//! with a pass/fail bit. Rendering only walks ordered containers, so the
//! output is byte-identical across runs of the same input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use polyprod::chains::GradedDims;
use polyprod::duality::{ad_check, duality_check};
use polyprod::exactlin::Field;
use polyprod::hochster::{betti, index_set, Instance};
use polyprod::oracle::compare;
use polyprod::simplicial::SimplicialComplex;
use polyprod::structure::homology_coproduct;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{all_complexes, random_complex};
use crate::input;
use crate::{CliError, CmdOutcome};

fn dims_map(d: &GradedDims) -> BTreeMap<i64, usize> {
    d.iter().collect()
}

fn dims_line(d: &GradedDims, hi: i64) -> String {
    d.to_vec(0, hi)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn complex_line(k: &SimplicialComplex) -> String {
    if k.is_void() {
        return format!("m={}, void", k.ground());
    }
    let facets = k.facets();
    let list: Vec<String> = facets.iter().map(ToString::to_string).collect();
    format!("m={}, facets {}", k.ground(), list.join(" "))
}

#[derive(Serialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
    void: bool,
}

impl ComplexJson {
    fn of(k: &SimplicialComplex) -> ComplexJson {
        ComplexJson {
            m: k.ground(),
            facets: k.facets().iter().map(|f| f.vertices().collect()).collect(),
            void: k.is_void(),
        }
    }
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize cleanly");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- betti ---

#[derive(Debug, Clone, Copy, Default)]
pub struct BettiOpts {
    pub json: bool,
    pub crosscheck: bool,
    pub field: Option<Field>,
}

#[derive(Serialize)]
struct BettiJson {
    field: String,
    complex: ComplexJson,
    totals: BTreeMap<i64, usize>,
    pairs: Vec<PairDimsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscheck: Option<CrosscheckJson>,
}

#[derive(Serialize)]
struct PairDimsJson {
    sigma: Vec<usize>,
    omega: Vec<usize>,
    dims: BTreeMap<i64, usize>,
}

#[derive(Serialize)]
struct CrosscheckJson {
    minimal_model: bool,
    decomposition: bool,
    oracle: Option<bool>,
    pass: bool,
}

pub fn run_betti(text: &str, opts: &BettiOpts) -> Result<CmdOutcome, CliError> {
    let file = input::parse_instance_text(text)?;
    let inst = input::build_instance(&file, opts.field)?;
    let table = betti(&inst);
    let pairs = index_set(&inst);
    let check = if opts.crosscheck { Some(compare(&inst, false)?) } else { None };
    let flags = check.as_ref().map(|rep| CrosscheckJson {
        minimal_model: rep.minimal_model == rep.betti,
        decomposition: rep.decomposition == rep.betti,
        oracle: rep.oracle.as_ref().map(|o| *o == rep.betti),
        pass: rep.betti_agree,
    });
    let failed = flags.as_ref().is_some_and(|f| !f.pass);

    let mut rows = Vec::new();
    for p in &pairs {
        if let Some(d) = table.pair_dims(p.sigma, p.omega) {
            if !d.is_zero() {
                rows.push((p.sigma, p.omega, d));
            }
        }
    }

    if opts.json {
        let out = BettiJson {
            field: inst.field().to_string(),
            complex: ComplexJson::of(inst.complex()),
            totals: dims_map(table.totals()),
            pairs: rows
                .iter()
                .map(|(s, o, d)| PairDimsJson {
                    sigma: s.vertices().collect(),
                    omega: o.vertices().collect(),
                    dims: dims_map(d),
                })
                .collect(),
            crosscheck: flags,
        };
        return Ok(CmdOutcome { stdout: json_text(&out), failed });
    }

    let hi = table.totals().max_degree().unwrap_or(0);
    let mut s = String::new();
    writeln!(s, "field: {}", inst.field()).unwrap();
    writeln!(s, "complex: {}", complex_line(inst.complex())).unwrap();
    writeln!(s, "total betti (degrees 0..{hi}): {}", dims_line(table.totals(), hi)).unwrap();
    if rows.is_empty() {
        writeln!(s, "index pairs with homology: (none)").unwrap();
    } else {
        writeln!(s, "index pairs with homology:").unwrap();
        for (sigma, omega, d) in &rows {
            let degs: Vec<String> = d.iter().map(|(n, v)| format!("{n}:{v}")).collect();
            writeln!(s, "  sigma={sigma} omega={omega}: {}", degs.join(" ")).unwrap();
        }
    }
    if let Some(f) = &flags {
        let word = |b: bool| if b { "agree" } else { "DISAGREE" };
        writeln!(s, "crosscheck minimal model: {}", word(f.minimal_model)).unwrap();
        writeln!(s, "crosscheck cover decomposition: {}", word(f.decomposition)).unwrap();
        match f.oracle {
            Some(b) => writeln!(s, "crosscheck oracle: {}", word(b)).unwrap(),
            None => writeln!(s, "crosscheck oracle: skipped (factor without simplicial model)")
                .unwrap(),
        }
        writeln!(s, "crosscheck: {}", if f.pass { "PASS" } else { "FAIL" }).unwrap();
    }
    Ok(CmdOutcome { stdout: s, failed })
}

// ----------------------------------------------------------------- ring ---

#[derive(Debug, Clone, Copy, Default)]
pub struct RingOpts {
    pub json: bool,
    pub coalgebra: bool,
    pub field: Option<Field>,
}

#[derive(Serialize)]
struct RingJson {
    field: String,
    complex: ComplexJson,
    class_dims: BTreeMap<i64, usize>,
    classes: Vec<ClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    products: Option<Vec<ProductJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coproducts: Option<Vec<CoproductJson>>,
}

#[derive(Serialize)]
struct ClassJson {
    index: usize,
    degree: i64,
    sigma: Vec<usize>,
    omega: Vec<usize>,
    s: i64,
    t: Vec<String>,
}

#[derive(Serialize)]
struct ProductJson {
    left: usize,
    right: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct TermJson {
    class: usize,
    coeff: String,
}

#[derive(Serialize)]
struct CoproductJson {
    class: usize,
    terms: Vec<SplitTermJson>,
}

#[derive(Serialize)]
struct SplitTermJson {
    left: usize,
    right: usize,
    coeff: String,
}

fn tuple_names(inst: &Instance, labels: &[usize]) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .map(|(k, &id)| inst.factors()[k].name(id))
        .collect()
}

pub fn run_ring(text: &str, opts: &RingOpts) -> Result<CmdOutcome, CliError> {
    let file = input::parse_instance_text(text)?;
    let inst = input::build_instance(&file, opts.field)?;
    let st = homology_coproduct(&inst)?;
    let n = st.classes.len();

    let mut products = Vec::new();
    let mut coproducts = Vec::new();
    if opts.coalgebra {
        for i in 0..n {
            let terms = st.coproduct(i);
            if !terms.is_empty() {
                coproducts.push(CoproductJson {
                    class: i,
                    terms: terms
                        .iter()
                        .map(|&(a, b, ref c)| SplitTermJson {
                            left: a,
                            right: b,
                            coeff: c.to_string(),
                        })
                        .collect(),
                });
            }
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                let terms = st.product(i, j);
                if !terms.is_empty() {
                    products.push(ProductJson {
                        left: i,
                        right: j,
                        terms: terms
                            .iter()
                            .map(|&(k, ref c)| TermJson { class: k, coeff: c.to_string() })
                            .collect(),
                    });
                }
            }
        }
    }

    if opts.json {
        let out = RingJson {
            field: inst.field().to_string(),
            complex: ComplexJson::of(inst.complex()),
            class_dims: dims_map(&st.dims()),
            classes: st
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| ClassJson {
                    index: i,
                    degree: c.degree,
                    sigma: c.sigma.vertices().collect(),
                    omega: c.omega.vertices().collect(),
                    s: c.s,
                    t: tuple_names(&inst, &c.labels),
                })
                .collect(),
            products: (!opts.coalgebra).then_some(products),
            coproducts: opts.coalgebra.then_some(coproducts),
        };
        return Ok(CmdOutcome { stdout: json_text(&out), failed: false });
    }

    let dims = st.dims();
    let hi = dims.max_degree().unwrap_or(0);
    let mut s = String::new();
    writeln!(s, "field: {}", inst.field()).unwrap();
    writeln!(s, "complex: {}", complex_line(inst.complex())).unwrap();
    writeln!(s, "classes by degree (0..{hi}): {}", dims_line(&dims, hi)).unwrap();
    if n == 0 {
        writeln!(s, "classes: (none)").unwrap();
    } else {
        writeln!(s, "classes:").unwrap();
        for (i, c) in st.classes.iter().enumerate() {
            writeln!(
                s,
                "  [{i}] degree {} sigma={} omega={} s={} t=({})",
                c.degree,
                c.sigma,
                c.omega,
                c.s,
                tuple_names(&inst, &c.labels).join(",")
            )
            .unwrap();
        }
    }
    if opts.coalgebra {
        if coproducts.is_empty() {
            writeln!(s, "coproducts: (none)").unwrap();
        } else {
            writeln!(s, "coproducts:").unwrap();
            for cp in &coproducts {
                let terms: Vec<String> = cp
                    .terms
                    .iter()
                    .map(|t| format!("{}*([{}]x[{}])", t.coeff, t.left, t.right))
                    .collect();
                writeln!(s, "  [{}] -> {}", cp.class, terms.join(" + ")).unwrap();
            }
        }
    } else if products.is_empty() {
        writeln!(s, "nonzero products: (none)").unwrap();
    } else {
        writeln!(s, "nonzero products:").unwrap();
        for p in &products {
            let terms: Vec<String> =
                p.terms.iter().map(|t| format!("{}*[{}]", t.coeff, t.class)).collect();
            writeln!(s, "  [{}][{}] = {}", p.left, p.right, terms.join(" + ")).unwrap();
        }
    }
    Ok(CmdOutcome { stdout: s, failed: false })
}

// ----------------------------------------------------------------- dual ---

#[derive(Debug, Clone, Copy, Default)]
pub struct DualOpts {
    pub json: bool,
    pub field: Option<Field>,
}

#[derive(Serialize)]
struct DualJson {
    field: String,
    complex: ComplexJson,
    params: Vec<(i64, i64)>,
    r_total: i64,
    pairs: Vec<DualPairJson>,
    all_hold: bool,
}

#[derive(Serialize)]
struct DualPairJson {
    sigma: Vec<usize>,
    omega: Vec<usize>,
    sigma_tilde: Vec<usize>,
    holds: bool,
    shifts: Option<Vec<i64>>,
}

pub fn run_dual(text: &str, opts: &DualOpts) -> Result<CmdOutcome, CliError> {
    let file = input::parse_instance_text(text)?;
    let sp = input::build_sphere_instance(&file, opts.field)?;
    let rep = duality_check(&sp)?;
    let failed = !rep.all_hold;

    if opts.json {
        let out = DualJson {
            field: sp.field().to_string(),
            complex: ComplexJson::of(sp.complex()),
            params: sp.params().to_vec(),
            r_total: rep.r_total,
            pairs: rep
                .pairs
                .iter()
                .map(|p| DualPairJson {
                    sigma: p.sigma.vertices().collect(),
                    omega: p.omega.vertices().collect(),
                    sigma_tilde: p.sigma_tilde.vertices().collect(),
                    holds: p.holds,
                    shifts: p.shifts.clone(),
                })
                .collect(),
            all_hold: rep.all_hold,
        };
        return Ok(CmdOutcome { stdout: json_text(&out), failed });
    }

    let mut s = String::new();
    writeln!(s, "field: {}", sp.field()).unwrap();
    writeln!(s, "complex: {}", complex_line(sp.complex())).unwrap();
    let params: Vec<String> =
        sp.params().iter().map(|&(r, k)| format!("(r={r},k={k})")).collect();
    writeln!(s, "sphere parameters: {}", params.join(" ")).unwrap();
    writeln!(s, "pairing: degree d with degree {} - d on the complement", rep.r_total - 1)
        .unwrap();
    if rep.pairs.is_empty() {
        writeln!(s, "index pairs: (none with omega nonempty)").unwrap();
    } else {
        writeln!(s, "index pairs:").unwrap();
        for p in &rep.pairs {
            let status = match (&p.shifts, p.holds) {
                (None, _) => "ok (both sides empty)".to_string(),
                (Some(v), true) => {
                    let list: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("ok (matching shifts {})", list.join(","))
                }
                (Some(v), false) => {
                    let list: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("MISMATCH (matching shifts {})", list.join(","))
                }
            };
            writeln!(
                s,
                "  sigma={} omega={} sigma~={}: {status}",
                p.sigma, p.omega, p.sigma_tilde
            )
            .unwrap();
        }
    }
    writeln!(s, "duality: {}", if rep.all_hold { "PASS" } else { "FAIL" }).unwrap();
    Ok(CmdOutcome { stdout: s, failed })
}

// ------------------------------------------------------------- ad-check ---

#[derive(Debug, Clone, Copy)]
pub struct AdOpts {
    pub exhaustive: Option<usize>,
    pub random: Option<usize>,
    pub max_vertices: usize,
    pub seed: u64,
    pub json: bool,
    pub field: Option<Field>,
}

impl Default for AdOpts {
    fn default() -> AdOpts {
        AdOpts {
            exhaustive: None,
            random: None,
            max_vertices: 6,
            seed: 0,
            json: false,
            field: None,
        }
    }
}

#[derive(Serialize)]
struct AdJson {
    field: String,
    exhaustive: Option<AdSweepJson>,
    random: Option<AdSweepJson>,
    pass: bool,
}

#[derive(Serialize)]
struct AdSweepJson {
    max_vertices: usize,
    checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    failures: Vec<ComplexJson>,
}

pub fn run_adcheck(opts: &AdOpts) -> Result<CmdOutcome, CliError> {
    let field = opts.field.unwrap_or(Field::Rationals);
    let ex_n = opts.exhaustive.unwrap_or(3);
    let rand_n = opts.random.unwrap_or(50);
    if ex_n > 4 {
        return Err(CliError::invalid(
            "--exhaustive",
            "exhaustive sweeps are supported only up to 4 vertices",
        ));
    }
    if !(1..=10).contains(&opts.max_vertices) {
        return Err(CliError::invalid("--max-vertices", "need a value in 1..=10"));
    }

    let sweep = |ks: &mut dyn Iterator<Item = SimplicialComplex>| {
        let mut checked = 0usize;
        let mut failures = Vec::new();
        for k in ks {
            checked += 1;
            if !ad_check(&k, field).holds {
                failures.push(k);
            }
        }
        (checked, failures)
    };

    let exhaustive = (ex_n > 0).then(|| {
        let mut it = (1..=ex_n).flat_map(all_complexes);
        let (checked, failures) = sweep(&mut it);
        (ex_n, checked, failures)
    });
    let random = (rand_n > 0).then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut it = (0..rand_n).map(|_| {
            let t = rng.gen_range(1..=opts.max_vertices);
            random_complex(&mut rng, t, true)
        });
        let (checked, failures) = sweep(&mut it);
        (opts.max_vertices, checked, failures)
    });
    let failed = exhaustive.as_ref().is_some_and(|(_, _, f)| !f.is_empty())
        || random.as_ref().is_some_and(|(_, _, f)| !f.is_empty());

    if opts.json {
        let to_json = |sec: &Option<(usize, usize, Vec<SimplicialComplex>)>, seed: Option<u64>| {
            sec.as_ref().map(|(maxv, checked, failures)| AdSweepJson {
                max_vertices: *maxv,
                checked: *checked,
                seed,
                failures: failures.iter().map(ComplexJson::of).collect(),
            })
        };
        let out = AdJson {
            field: field.to_string(),
            exhaustive: to_json(&exhaustive, None),
            random: to_json(&random, Some(opts.seed)),
            pass: !failed,
        };
        return Ok(CmdOutcome { stdout: json_text(&out), failed });
    }

    let mut s = String::new();
    writeln!(s, "field: {field}").unwrap();
    if let Some((maxv, checked, failures)) = &exhaustive {
        writeln!(
            s,
            "exhaustive (1..={maxv} vertices): {checked} complexes checked, {} failures",
            failures.len()
        )
        .unwrap();
    }
    if let Some((maxv, checked, failures)) = &random {
        writeln!(
            s,
            "random ({checked} complexes, up to {maxv} vertices, seed {}): {} failures",
            opts.seed,
            failures.len()
        )
        .unwrap();
    }
    for (_, _, failures) in exhaustive.iter().chain(random.iter()) {
        for k in failures {
            writeln!(s, "  failing complex: {}", complex_line(k)).unwrap();
        }
    }
    writeln!(s, "ad-check: {}", if failed { "FAIL" } else { "PASS" }).unwrap();
    Ok(CmdOutcome { stdout: s, failed })
}

// --------------------------------------------------------------- verify ---

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOpts {
    pub json: bool,
    pub field: Option<Field>,
}

#[derive(Serialize)]
struct VerifyJson {
    field: String,
    complex: ComplexJson,
    totals: VerifyTotalsJson,
    betti_agree: bool,
    mult_ranks: Option<MultRanksJson>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyTotalsJson {
    direct: BTreeMap<i64, usize>,
    minimal_model: BTreeMap<i64, usize>,
    cover: BTreeMap<i64, usize>,
    oracle: Option<BTreeMap<i64, usize>>,
}

#[derive(Serialize)]
struct MultRanksJson {
    table: Vec<RankJson>,
    agree: bool,
}

#[derive(Serialize)]
struct RankJson {
    p: i64,
    q: i64,
    rank: usize,
}

pub fn run_verify(text: &str, opts: &VerifyOpts) -> Result<CmdOutcome, CliError> {
    let file = input::parse_instance_text(text)?;
    let inst = input::build_instance(&file, opts.field)?;
    let rings = inst.factors().iter().all(|f| f.model().is_some());
    let rep = compare(&inst, rings)?;
    let failed = !rep.all_agree();

    if opts.json {
        let out = VerifyJson {
            field: inst.field().to_string(),
            complex: ComplexJson::of(inst.complex()),
            totals: VerifyTotalsJson {
                direct: dims_map(&rep.betti),
                minimal_model: dims_map(&rep.minimal_model),
                cover: dims_map(&rep.decomposition),
                oracle: rep.oracle.as_ref().map(dims_map),
            },
            betti_agree: rep.betti_agree,
            mult_ranks: rep.structure_ranks.as_ref().map(|t| MultRanksJson {
                table: t
                    .iter()
                    .map(|(&(p, q), &rank)| RankJson { p, q, rank })
                    .collect(),
                agree: rep.ranks_agree.unwrap_or(true),
            }),
            pass: rep.all_agree(),
        };
        return Ok(CmdOutcome { stdout: json_text(&out), failed });
    }

    let hi = [Some(&rep.betti), Some(&rep.minimal_model), Some(&rep.decomposition), rep.oracle.as_ref()]
        .into_iter()
        .flatten()
        .filter_map(GradedDims::max_degree)
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    writeln!(s, "field: {}", inst.field()).unwrap();
    writeln!(s, "complex: {}", complex_line(inst.complex())).unwrap();
    writeln!(s, "betti totals (degrees 0..{hi}):").unwrap();
    writeln!(s, "  direct:        {}", dims_line(&rep.betti, hi)).unwrap();
    writeln!(s, "  minimal model: {}", dims_line(&rep.minimal_model, hi)).unwrap();
    writeln!(s, "  cover:         {}", dims_line(&rep.decomposition, hi)).unwrap();
    match &rep.oracle {
        Some(o) => writeln!(s, "  oracle:        {}", dims_line(o, hi)).unwrap(),
        None => {
            writeln!(s, "  oracle:        skipped (factor without simplicial model)").unwrap()
        }
    }
    writeln!(s, "betti agreement: {}", if rep.betti_agree { "yes" } else { "NO" }).unwrap();
    match (&rep.structure_ranks, rep.ranks_agree) {
        (Some(t), agree) => writeln!(
            s,
            "multiplication ranks: {} degree pairs, agreement: {}",
            t.len(),
            if agree.unwrap_or(true) { "yes" } else { "NO" }
        )
        .unwrap(),
        (None, _) => {
            writeln!(s, "multiplication ranks: skipped (factor without simplicial model)")
                .unwrap()
        }
    }
    writeln!(s, "verify: {}", if rep.all_agree() { "PASS" } else { "FAIL" }).unwrap();
    Ok(CmdOutcome { stdout: s, failed })
}
