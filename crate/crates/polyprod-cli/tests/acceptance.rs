//! The acceptance gate: one test per shipping criterion. Every test prints a
//! single `criterion N: PASS/FAIL (detail)` line, so a full run of this
//! target doubles as the release checklist. Corpora are seeded, so failures
//! reproduce exactly.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use polyprod::chains::{augmented_complex, betti_dims};
use polyprod::duality::{ad_check, duality_check};
use polyprod::exactlin::Field;
use polyprod::factors::analyze_pair;
use polyprod::hochster::Instance;
use polyprod::oracle::compare;
use polyprod::structure::{
    all_simplices_cover, components, cover_complex, facets_cover, splitting_check,
};
use polyprod_cli::corpus::{
    all_complexes, random_complex, random_instance, random_pair, random_sphere_instance,
    InstancePolicy,
};
use polyprod_cli::input;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(n: usize, pass: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n}: {detail}");
}

fn fixture(name: &str) -> Instance {
    let text = fs::read_to_string(format!("tests/fixtures/{name}")).unwrap();
    let file = input::parse_instance_text(&text).unwrap();
    input::build_instance(&file, None).unwrap()
}

fn rotate_field(i: usize) -> Field {
    match i % 3 {
        0 => Field::Rationals,
        1 => Field::prime(2).unwrap(),
        _ => Field::prime(3).unwrap(),
    }
}

#[test]
fn criterion_01_golden_instances_agree() {
    let t0 = Instant::now();
    let goldens: [(&str, Vec<usize>); 3] = [
        ("two_points.json", vec![1, 0, 0, 1]),
        ("boundary_square.json", vec![1, 0, 0, 2, 0, 0, 1]),
        ("free_pair.json", vec![1, 2, 1]),
    ];
    let mut pass = true;
    for (name, expect) in &goldens {
        let inst = fixture(name);
        let rep = compare(&inst, false).unwrap();
        let hi = expect.len() as i64 - 1;
        pass &= rep.all_agree()
            && rep.oracle.is_some()
            && rep.betti.to_vec(0, hi) == *expect
            && rep.betti.max_degree() == Some(hi);
    }
    let dt = t0.elapsed();
    pass &= dt < Duration::from_secs(5);
    criterion(1, pass, &format!("3 golden instances, 4 pipelines each, {dt:.2?}"));
}

#[test]
fn criterion_02_pipelines_agree_on_random_corpus() {
    let t0 = Instant::now();
    let policy = InstancePolicy::betti();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut pass = true;
    let mut checked = 0;
    for i in 0..50 {
        let field = rotate_field(i);
        let inst = random_instance(&mut rng, field, &policy);
        let rep = compare(&inst, false).unwrap();
        pass &= rep.oracle.is_some()
            && rep.minimal_model == rep.betti
            && rep.decomposition == rep.betti
            && rep.all_agree();
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 50 && dt < Duration::from_secs(120);
    criterion(2, pass, &format!("{checked} random instances, 4 pipelines degreewise, {dt:.2?}"));
}

#[test]
fn criterion_03_mult_ranks_match_the_oracle() {
    let t0 = Instant::now();
    let policy = InstancePolicy::ring();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let mut pass = true;
    let (mut checked, mut tables) = (0, 0);
    for i in 0..25 {
        let field = rotate_field(i);
        let inst = random_instance(&mut rng, field, &policy);
        let rep = compare(&inst, true).unwrap();
        pass &= rep.ranks_agree == Some(true);
        tables += rep.structure_ranks.map_or(0, |t| t.len());
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 25 && tables > 0 && dt < Duration::from_secs(300);
    criterion(
        3,
        pass,
        &format!("{checked} instances, {tables} (p,q) rank entries vs oracle, {dt:.2?}"),
    );
}

#[test]
fn criterion_04_chain_identities_on_cover_complexes() {
    let t0 = Instant::now();
    let policy = InstancePolicy::ring();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut pass = true;
    let mut checked = 0;
    for i in 0..20 {
        let field = rotate_field(i);
        let inst = random_instance(&mut rng, field, &policy);
        let cover = if i % 4 == 0 {
            all_simplices_cover(inst.complex())
        } else {
            facets_cover(inst.complex())
        };
        let cx = cover_complex(&inst, &cover).unwrap();
        pass &= cx.check_chain_identities();
        pass &= cx.to_chain_complex().is_ok();
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 20;
    criterion(4, pass, &format!("d^2=0 and (dxd)D=Dd on {checked} cover complexes, {dt:.2?}"));
}

#[test]
fn criterion_05_combinatorial_duality_sweep() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut exhaustive = 0;
    for t in 1..=4 {
        for k in all_complexes(t) {
            let rep = ad_check(&k, Field::Rationals);
            pass &= rep.holds && rep.expected_shift == t as i64 - 3;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut randomized = 0;
    for i in 0..100 {
        let t = rng.gen_range(1..=7);
        let k = random_complex(&mut rng, t, true);
        pass &= ad_check(&k, rotate_field(i)).holds;
        randomized += 1;
    }
    let dt = t0.elapsed();
    pass &= randomized >= 100 && dt < Duration::from_secs(60);
    criterion(
        5,
        pass,
        &format!("{exhaustive} exhaustive (t<=4) + {randomized} random (t<=7) complexes, {dt:.2?}"),
    );
}

#[test]
fn criterion_06_sphere_pair_duality() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let mut pass = true;
    let (mut checked, mut pairs) = (0, 0);
    for i in 0..20 {
        let s = random_sphere_instance(&mut rng, rotate_field(i), 5, 3, 0, None);
        let rep = duality_check(&s).unwrap();
        pass &= rep.all_hold;
        pairs += rep.pairs.len();
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 20 && pairs > 0;
    criterion(
        6,
        pass,
        &format!("{checked} sphere instances, {pairs} (sigma,omega) pairings vs complement, {dt:.2?}"),
    );
}

#[test]
fn criterion_07_support_homology_matches_links() {
    let t0 = Instant::now();
    let policy = InstancePolicy::ring();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    let mut pass = true;
    let (mut checked, mut classes) = (0, 0);
    for i in 0..15 {
        let field = rotate_field(i);
        let inst = random_instance(&mut rng, field, &policy);
        let cover = all_simplices_cover(inst.complex());
        let comps = components(&inst, &cover).unwrap();
        for c in &comps.classes {
            let link = inst.complex().hochster_link(c.sigma, c.omega).unwrap();
            let lh = betti_dims(&augmented_complex(&link, field).complex);
            let nh = betti_dims(&augmented_complex(&c.support, field).complex);
            pass &= lh == nh;
            classes += 1;
        }
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 15 && classes > 0;
    criterion(
        7,
        pass,
        &format!("{classes} component supports vs links over {checked} instances, {dt:.2?}"),
    );
}

#[test]
fn criterion_08_splitting_hypothesis_and_coalgebra_laws() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut pass = true;
    let mut checked = 0;
    for i in 0..12 {
        let s = random_sphere_instance(&mut rng, rotate_field(i), 4, 3, 1, Some(10));
        let inst = s.to_instance().unwrap();
        let rep = splitting_check(&inst).unwrap();
        pass &= rep.hypothesis_holds
            && rep.delta_t_cocommutative == Some(true)
            && rep.delta_t_coassociative == Some(true)
            && rep.homology_cocommutative == Some(true)
            && rep.homology_coassociative == Some(true);
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 12;
    criterion(
        8,
        pass,
        &format!("{checked} sphere instances with k>=1, tensor and homology coalgebra laws, {dt:.2?}"),
    );
}

#[test]
fn criterion_09_factor_coproducts_are_lawful() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    let mut pass = true;
    let mut checked = 0;
    for i in 0..20 {
        let p = random_pair(&mut rng, 5);
        let f = analyze_pair(&p, rotate_field(i)).unwrap();
        pass &= f.validate().is_ok() && f.is_cocommutative();
        checked += 1;
    }
    let dt = t0.elapsed();
    pass &= checked >= 20;
    criterion(
        9,
        pass,
        &format!("{checked} random pairs: counital, coassociative, cocommutative, {dt:.2?}"),
    );
}

#[test]
fn criterion_10_cli_output_is_deterministic() {
    let t0 = Instant::now();
    let bin = env!("CARGO_BIN_EXE_polyprod");
    let cases: [&[&str]; 6] = [
        &["betti", "tests/fixtures/two_points.json"],
        &["betti", "tests/fixtures/two_points.json", "--json"],
        &["betti", "tests/fixtures/boundary_square.json", "--crosscheck"],
        &["ring", "tests/fixtures/boundary_square.json"],
        &["ring", "tests/fixtures/two_points.json", "--json"],
        &["ring", "tests/fixtures/free_pair.json", "--coalgebra", "--json"],
    ];
    let mut pass = true;
    for args in &cases {
        let run = || Command::new(bin).args(*args).output().unwrap();
        let (a, b) = (run(), run());
        pass &= a.status.code() == Some(0)
            && b.status.code() == Some(0)
            && !a.stdout.is_empty()
            && a.stdout == b.stdout;
    }
    let dt = t0.elapsed();
    criterion(10, pass, &format!("{} command lines run twice, byte-identical, {dt:.2?}", cases.len()));
}
