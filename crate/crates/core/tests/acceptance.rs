//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Every dimension asserted here is confirmed by the modular-rank oracle at
//! three random primes (seeded via SPLINETOP_SEED for reproducibility);
//! any oracle disagreement fails the suite.
//!
//! Run with `cargo test -p splinetop --test acceptance -- --nocapture`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splinetop::arrangement::{
    face_span_forms, star_set_with_spans, IntersectionLattice, LatticeMode,
};
use splinetop::complex::{facet_set_label, PolytopalComplex, SubComplex};
use splinetop::fixtures;
use splinetop::hilbert::{generator_degrees, hf_table, hp_fit, HfSelector};
use splinetop::linalg::checked_rank;
use splinetop::poly::{DegreeMode, Monomial, Polynomial};
use splinetop::splines::{SplineEngine, SplineSubspace};
use std::collections::BTreeSet;

fn seeded_rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splinetop::cli::oracle_seed())
}

/// Oracle-checked dimension: the canonical basis of the space must have the
/// claimed rank modulo three random primes.
fn checked_dim(engine: &SplineEngine, space: &SplineSubspace, rng: &mut ChaCha8Rng) -> usize {
    let outcome = engine.oracle_check_space(space, rng, 3);
    assert!(
        outcome.ok,
        "modular oracle disagreed on a dimension (dim {}, primes {:?})",
        outcome.dim, outcome.primes
    );
    outcome.dim
}

fn labels(set: &[&str]) -> BTreeSet<String> {
    set.iter().map(|s| s.to_string()).collect()
}

fn unit(engine: &SplineEngine, d: u32) -> Vec<Polynomial> {
    engine.unit_spline(d, DegreeMode::Filtered)
}

fn x_squared_spline(p: &PolytopalComplex) -> Vec<Polynomial> {
    let xsq = Polynomial::monomial(2, Monomial(vec![2, 0]), splinetop::linalg::qr(1));
    vec![xsq; p.num_facets()]
}

#[test]
fn c01_q_combinatorics() {
    let q = fixtures::q();
    assert_eq!(q.num_facets(), 5);
    assert_eq!(q.interior_codim1().len(), 8);
    let (_, interior_vertices) = q.face_counts()[0];
    assert_eq!(interior_vertices, 4);
    let report = q.validate();
    assert!(report.pure && report.hereditary && report.manifold_ok);
    println!("ACCEPTANCE 01 PASS: Q has 5 facets, 8 interior edges, 4 interior vertices, hereditary");
}

#[test]
fn c02_lattice_counts() {
    let q = fixtures::q();
    let affine = IntersectionLattice::build(&q, LatticeMode::Affine);
    assert_eq!(affine.flats_of_rank(1).count(), 6);
    assert_eq!(affine.flats_of_rank(2).count(), 5);
    let homog = IntersectionLattice::build(&q, LatticeMode::Homogenized);
    assert_eq!(homog.flats_of_rank(1).count(), 6);
    assert_eq!(homog.flats_of_rank(2).count(), 7);
    let at_infinity = homog.flats.iter().filter(|f| f.at_infinity()).count();
    assert_eq!(at_infinity, 2);
    println!("ACCEPTANCE 02 PASS: L_Q has 6+5 flats; homogenized lattice has 6+7 with two at infinity");
}

#[test]
fn c03_gamma_posets() {
    let q = fixtures::q();
    let eng = SplineEngine::new(&q);
    let gamma = eng.gamma(2, LatticeMode::Homogenized);
    assert_eq!(gamma.row_sizes(), vec![5, 8, 7]);
    let rank2: BTreeSet<String> = gamma
        .nodes
        .iter()
        .filter(|n| n.gamma_rank == 2)
        .map(|n| facet_set_label(n.subcomplex.facet_ids()))
        .collect();
    // Node sets by facet labels (sets, so AEC/BED read as ACE/BDE).
    assert_eq!(rank2, labels(&["ABE", "BCE", "CDE", "ADE", "ABCD", "ACE", "BDE"]));
    assert_eq!(
        gamma.maximal_labels().into_iter().collect::<BTreeSet<_>>(),
        rank2
    );

    let qp = fixtures::q_prime();
    let eng_p = SplineEngine::new(&qp);
    let gamma_p = eng_p.gamma(2, LatticeMode::Homogenized);
    assert_eq!(gamma_p.row_sizes(), vec![5, 8, 10]);
    let rank2_p: BTreeSet<String> = gamma_p
        .nodes
        .iter()
        .filter(|n| n.gamma_rank == 2)
        .map(|n| facet_set_label(n.subcomplex.facet_ids()))
        .collect();
    assert_eq!(
        rank2_p,
        labels(&["ABE", "BCE", "CDE", "ADE", "ABC", "BCD", "ACD", "ABD", "ACE", "BDE"])
    );

    // The rank-1 rows coincide and the expected Hasse edges are exactly the
    // inclusion covers.
    let rank1: BTreeSet<String> = gamma
        .nodes
        .iter()
        .filter(|n| n.gamma_rank == 1)
        .map(|n| facet_set_label(n.subcomplex.facet_ids()))
        .collect();
    assert_eq!(rank1, labels(&["AB", "BC", "CD", "AD", "AE", "BE", "CE", "DE"]));
    let edge_labels: BTreeSet<(String, String)> = gamma
        .hasse
        .iter()
        .map(|&(lo, hi)| {
            (
                facet_set_label(gamma.nodes[lo].subcomplex.facet_ids()),
                facet_set_label(gamma.nodes[hi].subcomplex.facet_ids()),
            )
        })
        .collect();
    let mut expected = BTreeSet::new();
    for (lo, hi) in [
        ("A", "AB"), ("B", "AB"), ("B", "BC"), ("C", "BC"), ("C", "CD"), ("D", "CD"),
        ("A", "AD"), ("D", "AD"), ("A", "AE"), ("E", "AE"), ("B", "BE"), ("E", "BE"),
        ("C", "CE"), ("E", "CE"), ("D", "DE"), ("E", "DE"),
        ("AB", "ABE"), ("AE", "ABE"), ("BE", "ABE"),
        ("BC", "BCE"), ("BE", "BCE"), ("CE", "BCE"),
        ("CD", "CDE"), ("CE", "CDE"), ("DE", "CDE"),
        ("AD", "ADE"), ("AE", "ADE"), ("DE", "ADE"),
        ("AB", "ABCD"), ("BC", "ABCD"), ("CD", "ABCD"), ("AD", "ABCD"),
        ("AE", "ACE"), ("CE", "ACE"),
        ("BE", "BDE"), ("DE", "BDE"),
    ] {
        expected.insert((lo.to_string(), hi.to_string()));
    }
    assert_eq!(edge_labels, expected);
    println!("ACCEPTANCE 03 PASS: Gamma posets of Q (5,8,7) and Q' (5,8,10) have the expected row sizes, node sets, and Hasse edges");
}

#[test]
fn c04_unit_decomposes_over_affine_flats() {
    let q = fixtures::q();
    let eng = SplineEngine::new(&q);
    let one = unit(&eng, 2);
    let dec = eng
        .decompose(&one, 0, 2, 2, LatticeMode::Affine)
        .expect("valid spline")
        .expect("the unit is a sum of affinely lattice-supported splines");
    let gamma = eng.gamma(2, LatticeMode::Affine);
    let max_labels: BTreeSet<String> = gamma.maximal_labels().into_iter().collect();
    let mut sum = vec![Polynomial::zero(2); q.num_facets()];
    for (support, polys) in &dec.summands {
        let label = facet_set_label(support.facet_ids());
        assert!(max_labels.contains(&label), "support {label} is not a maximal Gamma node");
        eng.is_spline(0, polys).expect("summand is a spline");
        for (f, p) in polys.iter().enumerate() {
            if !support.contains_facet(f) {
                assert!(p.is_zero(), "summand leaks outside its support");
            }
            sum[f] = sum[f].add(p);
        }
    }
    assert_eq!(sum, one, "summands must add up to the unit exactly");
    println!(
        "ACCEPTANCE 04 PASS: 1 = sum of {} lattice-supported splines over affine flats",
        dec.summands.len()
    );
}

#[test]
fn c05_infinity_flats_matter_for_x_squared() {
    let q = fixtures::q();
    let eng = SplineEngine::new(&q);
    let mut rng = seeded_rng();
    let xsq = eng
        .coords_of(&x_squared_spline(&q), 2, DegreeMode::Filtered)
        .unwrap();
    let affine = eng.ls_space(0, 2, 2, DegreeMode::Filtered, LatticeMode::Affine);
    let homog = eng.ls_space(0, 2, 2, DegreeMode::Filtered, LatticeMode::Homogenized);
    checked_dim(&eng, &affine, &mut rng);
    checked_dim(&eng, &homog, &mut rng);
    assert!(affine.space.member(&xsq).is_none(), "x^2*1 must not be affinely lattice-supported in degree 2");
    assert!(homog.space.member(&xsq).is_some(), "x^2*1 must decompose once flats at infinity are allowed");
    println!("ACCEPTANCE 05 PASS: x^2*1 is outside the affine LS space and inside the homogenized one");
}

#[test]
fn c06_star_supported_sums_miss_the_unit() {
    let q = fixtures::q();
    let eng = SplineEngine::new(&q);
    let mut rng = seeded_rng();
    let interior_vertices: Vec<usize> = (0..q.num_vertices())
        .filter(|&v| q.face(q.face_id(&[v]).unwrap()).interior)
        .collect();
    assert_eq!(interior_vertices.len(), 4);
    for d in 0..=6u32 {
        let sum = eng
            .vertex_star_sum(&interior_vertices, 0, d, DegreeMode::Filtered)
            .unwrap();
        checked_dim(&eng, &sum, &mut rng);
        let one = eng.coords_of(&unit(&eng, d), d, DegreeMode::Filtered).unwrap();
        assert!(
            sum.space.member(&one).is_none(),
            "the unit must not be a sum of interior-vertex-star splines at d={d}"
        );
    }
    println!("ACCEPTANCE 06 PASS: 1 is not a sum of interior-vertex-star-supported splines for d <= 6");
}

#[test]
fn c07_tn_generator_degrees() {
    let mut rng = seeded_rng();
    for (n, r) in [(2usize, 0u32), (2, 1), (3, 0), (3, 1)] {
        let t = fixtures::tn(n);
        let eng = SplineEngine::new(&t);
        let b = SubComplex::new([1]);
        let expected = n as u32 * (r + 1);
        for d in 0..expected {
            let space = eng.supported_basis(&b, r, d, DegreeMode::Filtered);
            assert_eq!(checked_dim(&eng, &space, &mut rng), 0, "T_{n} r={r} d={d}");
        }
        let at = eng.supported_basis(&b, r, expected, DegreeMode::Filtered);
        assert!(checked_dim(&eng, &at, &mut rng) > 0, "T_{n} r={r} d={expected}");
        // The graded module needs a fresh generator at exactly that degree.
        let profile = generator_degrees(&eng, r, expected);
        assert!(
            profile.values[expected as usize] >= 1,
            "T_{n} r={r}: no new generator at degree {expected}: {:?}",
            profile.values
        );
        // Oracle coverage for the dimensions behind the profile.
        for d in 0..=expected {
            let space = eng.spline_basis(r, d, DegreeMode::Homogeneous);
            checked_dim(&eng, &space, &mut rng);
        }
    }
    println!("ACCEPTANCE 07 PASS: T_n first supported degree and generator degree are n(r+1) for the four cases");
}

#[test]
fn c08_homogenization_identity() {
    let mut rng = seeded_rng();
    for name in fixtures::FIXTURE_NAMES {
        let p = fixtures::fixture_by_name(name).unwrap();
        let eng = SplineEngine::new(&p);
        for r in 0..=2u32 {
            for d in 0..=8u32 {
                let filtered = eng.spline_basis(r, d, DegreeMode::Filtered);
                let homogeneous = eng.spline_basis(r, d, DegreeMode::Homogeneous);
                let df = checked_dim(&eng, &filtered, &mut rng);
                let dh = checked_dim(&eng, &homogeneous, &mut rng);
                assert_eq!(df, dh, "{name} r={r} d={d}: filtered {df} != homogeneous {dh}");
            }
        }
    }
    println!("ACCEPTANCE 08 PASS: filtered and graded dimensions agree on all fixtures for r<=2, d<=8");
}

#[test]
fn c09_lattice_supported_stabilization() {
    let mut rng = seeded_rng();
    for (name, p) in [
        ("q", fixtures::q()),
        ("qprime", fixtures::q_prime()),
        ("delta_plus", fixtures::delta_plus()),
        ("t2", fixtures::tn(2)),
    ] {
        for r in 0..=1u32 {
            let eng = SplineEngine::new(&p);
            // Start at the default window and widen until the stabilization
            // degree d0 is witnessed with at least 3 degrees of margin.
            let mut d_max = 3 * r + 6;
            let d0 = loop {
                let full = hf_table(&eng, &HfSelector::Full, r, d_max);
                let ls = hf_table(&eng, &HfSelector::Ls(2), r, d_max);
                for d in 0..=d_max as usize {
                    assert!(
                        full.values[d] >= ls.values[d],
                        "{name} r={r} d={d}: LS exceeds the full module"
                    );
                }
                match splinetop::hilbert::stabilization_degree(&full, &ls) {
                    Some(d0) if d_max >= d0 + 3 => break d0,
                    _ => {
                        d_max += 3;
                        assert!(d_max <= 21, "{name} r={r}: no stabilization by degree 21");
                    }
                }
            };
            // Oracle coverage of every tabulated dimension.
            for d in 0..=d_max {
                checked_dim(&eng, &eng.spline_basis(r, d, DegreeMode::Homogeneous), &mut rng);
                let ls_space =
                    eng.ls_space(r, 2, d, DegreeMode::Homogeneous, LatticeMode::Homogenized);
                checked_dim(&eng, &ls_space, &mut rng);
            }
            println!("  {name} r={r}: HF(full)=HF(ls(2)) from d0={d0}, window end {d_max}");
        }
    }
    println!("ACCEPTANCE 09 PASS: HF(full)-HF(ls(2)) is nonnegative and vanishes from d0 with >=3 degrees of margin");
}

#[test]
fn c10_simplicial_star_theorems() {
    let mut rng = seeded_rng();
    let mut complexes = vec![fixtures::delta_plus()];
    let mut gen_rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    use rand::Rng as _;
    for _ in 0..50 {
        let max_facets = gen_rng.gen_range(4..=12);
        complexes.push(fixtures::random_triangulation(&mut gen_rng, max_facets));
    }
    let mut star_checks = 0usize;
    for (idx, delta) in complexes.iter().enumerate() {
        assert!(delta.validate().hereditary, "triangulation {idx} must be hereditary");
        let spans = face_span_forms(delta);
        let lattice = IntersectionLattice::build(delta, LatticeMode::Affine);
        for flat in &lattice.flats {
            let dec = star_set_with_spans(delta, flat, &spans)
                .unwrap_or_else(|e| panic!("triangulation {idx}: star decomposition failed: {e}"));
            star_checks += dec.pairing.len();
        }
        let eng = SplineEngine::new(delta);
        for r in 0..=1u32 {
            for d in 0..=5u32 {
                let ls = eng.ls_space(r, 2, d, DegreeMode::Filtered, LatticeMode::Homogenized);
                let stars = eng.star_sum(2, r, d, DegreeMode::Filtered).unwrap();
                // Spot-check dimensions with the oracle on the larger cases.
                if d == 5 {
                    checked_dim(&eng, &ls, &mut rng);
                    checked_dim(&eng, &stars, &mut rng);
                }
                assert_eq!(
                    ls.space, stars.space,
                    "triangulation {idx} r={r} d={d}: LS(2) != vertex-star sum"
                );
            }
        }
    }
    println!(
        "ACCEPTANCE 10 PASS: star decompositions verified ({star_checks} component matches) and LS(2) equals the vertex-star sum on {} complexes",
        complexes.len()
    );
}

#[test]
fn c11_oracle_discipline_on_smoothness_systems() {
    // Criteria 1-10 already confirm every reported dimension through
    // checked_dim (basis-rank agreement at three primes). Here the
    // smoothness systems themselves are cross-checked: exact rank equals
    // modular rank and implies the reported kernel dimension.
    let mut rng = seeded_rng();
    for name in fixtures::FIXTURE_NAMES {
        let p = fixtures::fixture_by_name(name).unwrap();
        let eng = SplineEngine::new(&p);
        for (r, d) in [(0u32, 3u32), (1, 4)] {
            for mode in [DegreeMode::Filtered, DegreeMode::Homogeneous] {
                let outcome = eng.oracle_check_smoothness(r, d, mode, &mut rng, 3);
                assert!(
                    outcome.ok,
                    "{name} r={r} d={d} {mode:?}: smoothness oracle disagreement (primes {:?})",
                    outcome.primes
                );
            }
        }
    }
    // And directly on a raw matrix, as a sanity anchor for the oracle itself.
    let q = fixtures::q();
    let eng = SplineEngine::new(&q);
    let m = eng.smoothness_matrix(0, 2, DegreeMode::Filtered);
    let checked = checked_rank(&m, &mut rng, 3);
    assert!(checked.oracle_ok);
    assert_eq!(m.cols() - checked.rank, 11); // frozen regression: dim C^0_2(Q)
    println!("ACCEPTANCE 11 PASS: modular oracle agrees with exact ranks at 3 random primes everywhere");
}
