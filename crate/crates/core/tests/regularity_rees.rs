mod common;

use idemgen::biorder::{extract_biorder, Biorder};
use idemgen::corpus;
use idemgen::group::{enumerate_finite, GroupOracle, Letter, OracleKind};
use idemgen::rees::{rees_context, regular_wp, ReesTriple, RegularWordProblem};
use idemgen::regularity::{one_step_rewrites, verify_certificate, Regularity, RegularityChecker};
use idemgen::schreier::{presentation_B, presentation_F, presentation_f_for, schreier_system};
use proptest::prelude::*;

fn rb(r: usize, c: usize) -> Biorder {
    extract_biorder(&corpus::rectangular_band(r, c)).unwrap()
}

#[test]
fn rb22_words() {
    let b = rb(2, 2);
    let c = RegularityChecker::new(b.clone());
    for s in ["e11", "e11,e22", "e12,e21,e12", "e22,e11,e22,e11"] {
        let w = b.parse_word(s).unwrap();
        let r = c.is_regular(&w).unwrap();
        let cert = r.certificate().expect("regular");
        assert!(verify_certificate(&c, &w, cert).unwrap(), "{s}");
    }
    assert!(matches!(c.is_regular(&[]), Err(idemgen::Error::EmptyWord)));
}

#[test]
fn mixed_bgh_pair_is_not_regular() {
    let band = corpus::bgh_z2(&["z"]);
    let b = extract_biorder(&band.table).unwrap();
    let w = b.parse_word("1.1',1.1''").unwrap();
    assert_eq!(RegularityChecker::new(b).is_regular(&w).unwrap(), Regularity::NotRegular);
}

#[test]
fn certificate_with_wrong_pivot_fails() {
    let b = rb(2, 2);
    let c = RegularityChecker::new(b.clone());
    let w = b.parse_word("e11,e22").unwrap();
    let mut cert = c.is_regular(&w).unwrap().certificate().unwrap().clone();
    cert.k = 1 - cert.k;
    cert.e = w[cert.k];
    let _ = verify_certificate(&c, &w, &cert);
    cert.e = (cert.e + 1) % 4;
    assert!(!verify_certificate(&c, &w, &cert).unwrap());
}

#[test]
fn rb22_subgroup_is_infinite_cyclic() {
    let b = rb(2, 2);
    let s = schreier_system(&b, 0).unwrap();
    s.check().unwrap();
    let f = presentation_f_for(&b, &s).unwrap();
    assert!(f.squares.is_empty());
    let p = presentation_F(&b, 0).unwrap();
    assert!(enumerate_finite(&p, 50).order().is_none());
    let inv = idemgen::group::abelian_invariants(p.ngens(), &p.relators());
    assert_eq!(inv.free_rank, 1);
    assert!(inv.torsion.is_empty());
    let pb = presentation_B(&b, 0).unwrap();
    assert!(GroupOracle::free(&pb).is_ok());
}

#[test]
fn rb23_subgroup_has_rank_2() {
    let b = rb(2, 3);
    let p = presentation_F(&b, 0).unwrap();
    let inv = idemgen::group::abelian_invariants(p.ngens(), &p.relators());
    assert_eq!(inv.free_rank, 2);
}

#[test]
fn chain_subgroups_are_trivial() {
    let b = extract_biorder(&corpus::semilattice_chain(3)).unwrap();
    for e in 0..3 {
        assert_eq!(enumerate_finite(&presentation_F(&b, e).unwrap(), 4).order(), Some(1));
        assert_eq!(enumerate_finite(&presentation_B(&b, e).unwrap(), 4).order(), Some(1));
    }
}

#[test]
fn structure_matrix_inverse_law() {
    for t in common::structured_corpus() {
        let b = extract_biorder(&t).unwrap();
        for e in common::d_class_reps(&b) {
            let ctx = rees_context(&b, e).unwrap();
            let Ok(o) = GroupOracle::auto(ctx.presentation(), 256) else { continue };
            for (i, j) in ctx.schreier.k_pairs() {
                let mut w = ctx.p(j, i).unwrap();
                w.push(ctx.f_letter(i, j).unwrap());
                assert!(o.is_identity(&w).unwrap());
            }
        }
    }
}

#[test]
fn pi_rejects_words_leaving_d() {
    let t = corpus::ordinal_sum(&corpus::rectangular_band(2, 2), &corpus::left_zero(2));
    let b = extract_biorder(&t).unwrap();
    let reps = common::d_class_reps(&b);
    let ctx = rees_context(&b, reps[0]).unwrap();
    let outside = (0..b.len()).find(|&x| !ctx.schreier.automaton.in_d(x)).unwrap();
    assert_eq!(ctx.pi(&[reps[0], outside]).unwrap_err().code(), "domain");
    assert_eq!(ctx.pi(&[]).unwrap_err().code(), "empty-word");
}

#[test]
fn rho_round_trip_rb33() {
    let b = rb(3, 3);
    let ctx = rees_context(&b, 0).unwrap();
    let o = GroupOracle::free(ctx.presentation()).unwrap();
    let n = ctx.presentation().ngens();
    for i in 0..3 {
        for j in 0..3 {
            for g in 0..n {
                let t = ReesTriple::new(i, vec![Letter::pos(g), Letter::neg((g + 1) % n)], j);
                let back = ctx.pi(&ctx.rho(&t).unwrap()).unwrap();
                assert_eq!((back.i, back.j), (i, j));
                assert!(o.equal(&back.word, &t.word).unwrap());
            }
        }
    }
}

#[test]
fn wp_examples() {
    let b = rb(2, 2);
    let w = |s: &str| b.parse_word(s).unwrap();
    assert!(regular_wp(&b, &w("e11,e12"), &w("e12"), OracleKind::Free).unwrap());
    assert!(!regular_wp(&b, &w("e11,e22,e11"), &w("e11"), OracleKind::Free).unwrap());
    assert!(regular_wp(&b, &w("e21,e12"), &w("e21,e12"), OracleKind::Free).unwrap());
}

fn regular_words(b: &Biorder, seed: u64, count: usize) -> Vec<Vec<usize>> {
    use rand::SeedableRng;
    let c = RegularityChecker::new(b.clone());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let w = common::random_word(&mut rng, b.len(), 5);
        if c.is_regular(&w).unwrap().is_regular() {
            out.push(w);
        }
    }
    out
}

#[test]
fn wp_is_an_equivalence_on_samples() {
    let t = corpus::direct_product(&corpus::rectangular_band(2, 2), &corpus::semilattice_chain(2));
    let b = extract_biorder(&t).unwrap();
    let wp = RegularWordProblem::new(b.clone(), OracleKind::Auto { cap: 64 });
    let words = regular_words(&b, 3, 30);
    let eq: Vec<Vec<bool>> = words
        .iter()
        .map(|u| words.iter().map(|v| wp.equal(u, v).unwrap()).collect())
        .collect();
    for x in 0..words.len() {
        assert!(eq[x][x]);
        for y in 0..words.len() {
            assert_eq!(eq[x][y], eq[y][x]);
            for z in 0..words.len() {
                if eq[x][y] && eq[y][z] {
                    assert!(eq[x][z]);
                }
            }
        }
    }
}

#[test]
fn rewrites_do_not_change_the_element() {
    let b = rb(2, 3);
    let wp = RegularWordProblem::new(b.clone(), OracleKind::Free);
    for w in regular_words(&b, 9, 20) {
        for x in one_step_rewrites(&b, &w) {
            assert!(wp.equal(&w, &x).unwrap());
            assert!(wp.equal_via_f(&w, &x).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_reverify(seed in any::<u64>(), w in proptest::collection::vec(0usize..64, 1..6)) {
        let t = corpus::random_bands(seed, 1, 12).pop().unwrap();
        let b = extract_biorder(&t).unwrap();
        let w: Vec<usize> = w.into_iter().map(|x| x % b.len()).collect();
        let c = RegularityChecker::new(b.clone());
        if let Regularity::Regular(cert) = c.is_regular(&w).unwrap() {
            prop_assert!(verify_certificate(&c, &w, &cert).unwrap());
            // The word lands in the D-class of its pivot letter.
            prop_assert!(idemgen::ig_green(&b, cert.r_witness, cert.e, idemgen::IgRel::D));
            prop_assert!(idemgen::ig_green(&b, cert.l_witness, cert.e, idemgen::IgRel::D));
        }
    }

    #[test]
    fn pi_of_letters_in_d(i in 0usize..3, j in 0usize..3) {
        let b = rb(3, 3);
        let ctx = rees_context(&b, 0).unwrap();
        let e = b.index_of(&format!("e{}{}", i + 1, j + 1)).unwrap();
        let t = ctx.pi(&[e]).unwrap();
        prop_assert_eq!((t.i, t.j), (i, j));
        prop_assert_eq!(t.word, vec![ctx.f_letter(i, j).unwrap()]);
    }
}
