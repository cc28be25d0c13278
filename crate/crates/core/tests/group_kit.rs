use idemgen::corpus;
use idemgen::group::{
    abelian_invariants, enumerate_finite, free_reduce, mihailova, normalize_presentation, GroupOracle,
    GroupPresentation, Letter, NormalizedPresentation, Word,
};
use proptest::prelude::*;

fn pres(json: &str) -> GroupPresentation {
    GroupPresentation::from_json(json).unwrap()
}

fn small_groups() -> Vec<(GroupPresentation, usize)> {
    vec![
        (pres(r#"{"generators":[],"relations":[]}"#), 1),
        (pres(r#"{"generators":["a"],"relations":[[["a","a"],[]]]}"#), 2),
        (pres(r#"{"generators":["a"],"relations":[[["a","a","a","a","a"],[]]]}"#), 5),
        (pres(r#"{"generators":["a","b"],"relations":[[["a","a"],[]],[["b","b"],[]],[["a","b"],["b","a"]]]}"#), 4),
        (
            pres(r#"{"generators":["s","t"],"relations":[[["s","s"],[]],[["t","t","t"],[]],[["s","t","s"],["t^-1"]]]}"#),
            6,
        ),
        (
            pres(r#"{"generators":["a","b"],"relations":[[["a","a","a","a"],[]],[["a","a"],["b","b"]],[["b","a","b^-1"],["a^-1"]]]}"#),
            8,
        ),
    ]
}

#[test]
fn enumeration_orders() {
    for (p, n) in small_groups() {
        let t = enumerate_finite(&p, 64);
        assert_eq!(t.order(), Some(n), "{:?}", p.generators);
        let table = t.table().unwrap();
        for r in p.relators() {
            assert_eq!(table.eval(&r), table.eval(&[]));
        }
    }
    let z = pres(r#"{"generators":["a"],"relations":[]}"#);
    assert!(enumerate_finite(&z, 50).order().is_none());
}

#[test]
fn normalization_preserves_order() {
    for (p, n) in small_groups() {
        let np = normalize_presentation(&p).unwrap();
        for t in &np.triples {
            assert!(t.iter().all(|&x| x < np.generators.len()));
        }
        assert_eq!(enumerate_finite(&np.presentation(), 64).order(), Some(n), "{:?}", p.generators);
        for &b in &np.subgroup {
            let inv = np.inverse[b].expect("subgroup closed under inverses");
            assert!(np.subgroup.contains(&inv));
        }
    }
}

#[test]
fn z2_normal_form() {
    let p = pres(r#"{"generators":["a"],"relations":[[["a","a"],[]]],"subgroup":[]}"#);
    let np = normalize_presentation(&p).unwrap();
    assert_eq!(np.generators, ["a", "z"]);
    assert_eq!(np.triples.len(), 4);
    assert_eq!(np.subgroup, [1]);
}

#[test]
fn normalized_json_round_trip() {
    let p = corpus::z2_presentation(&["z"]);
    let np = normalize_presentation(&p).unwrap();
    let back = NormalizedPresentation::from_json(&np.to_json()).unwrap();
    assert_eq!(back.generators, np.generators);
    assert_eq!(back.triples, np.triples);
    assert_eq!(back.subgroup, np.subgroup);
}

#[test]
fn long_relator_gets_prefix_generators() {
    let p = pres(r#"{"generators":["a","b"],"relations":[[["a","b","a","b"],[]]]}"#);
    let np = normalize_presentation(&p).unwrap();
    assert!(np.generators.len() > 3);
    let orig = enumerate_finite(&p, 16).order();
    let norm = enumerate_finite(&np.presentation(), 16).order();
    assert_eq!(orig, norm);
}

#[test]
fn membership_examples() {
    let p = corpus::z2_presentation(&["z"]);
    let o = GroupOracle::finite(&p, 10).unwrap();
    let w = |s: &str| p.parse_word(s).unwrap();
    assert!(!o.membership(&w("a"), None).unwrap());
    assert!(o.membership(&w("a,a"), None).unwrap());
    let all: Vec<Word> = (0..2).map(|g| vec![Letter::pos(g)]).collect();
    assert!(o.membership(&w("a"), Some(&all)).unwrap());
}

#[test]
fn fibre_product_membership() {
    let delta = pres(r#"{"generators":["x"],"relations":[[["x","x"],[]]]}"#);
    let m = mihailova(&delta).unwrap();
    assert_eq!(m.bgens.len(), 2);
    assert_eq!(m.closed.len(), 4);
    let o = GroupOracle::product_of_free(&m.group, GroupOracle::finite(&delta, 8).unwrap()).unwrap();
    let w = |s: &str| m.group.parse_word(s).unwrap();
    assert!(o.membership(&w("x_1,x_2"), None).unwrap());
    assert!(!o.membership(&w("x_1"), None).unwrap());
    assert!(o.membership(&w("x_1,x_1"), None).unwrap());
}

#[test]
fn fibre_product_generator_counts() {
    let free = pres(r#"{"generators":["x"],"relations":[]}"#);
    assert_eq!(mihailova(&free).unwrap().bgens.len(), 1);
    let comm = pres(r#"{"generators":["x","y"],"relations":[[["x","y","x^-1","y^-1"],[]]]}"#);
    assert_eq!(mihailova(&comm).unwrap().bgens.len(), 3);
}

#[test]
fn free_oracle_refuses_relators() {
    let p = pres(r#"{"generators":["a"],"relations":[[["a","a"],[]]]}"#);
    assert_eq!(GroupOracle::free(&p).unwrap_err().code(), "capability");
    let inf = pres(r#"{"generators":["a"],"relations":[]}"#);
    assert_eq!(GroupOracle::finite(&inf, 10).unwrap_err().code(), "overflow");
}

#[test]
fn abelianization_examples() {
    let p = small_groups().remove(3).0;
    let inv = abelian_invariants(p.ngens(), &p.relators());
    assert_eq!((inv.free_rank, inv.torsion.clone()), (0, vec![2, 2]));
    let z6 = pres(r#"{"generators":["a","b"],"relations":[[["a","a"],[]],[["b","b","b"],[]],[["a","b"],["b","a"]]]}"#);
    let inv = abelian_invariants(z6.ngens(), &z6.relators());
    assert_eq!(inv.torsion, vec![6]);
}

#[test]
fn presentation_json_round_trip() {
    for (p, _) in small_groups() {
        assert_eq!(GroupPresentation::from_json(&p.to_json()).unwrap(), p);
    }
}

fn arb_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..3, any::<bool>()), 0..16)
        .prop_map(|v| v.into_iter().map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) }).collect())
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent(w in arb_word()) {
        let r = free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn word_times_inverse_reduces_to_empty(w in arb_word()) {
        let mut x = w.clone();
        x.extend(idemgen::group::word::inverse(&w));
        prop_assert!(free_reduce(&x).is_empty());
    }

    #[test]
    fn finite_oracle_is_consistent(u in arb_word(), v in arb_word()) {
        // S3 on generators s, t plus an unused third generator set to 1.
        let p = pres(r#"{"generators":["s","t","u"],"relations":[[["s","s"],[]],[["t","t","t"],[]],[["s","t","s"],["t^-1"]],[["u"],[]]]}"#);
        let o = GroupOracle::finite(&p, 16).unwrap();
        prop_assert_eq!(o.equal(&u, &v).unwrap(), o.equal(&v, &u).unwrap());
        let mut uv = u.clone();
        uv.extend(idemgen::group::word::inverse(&v));
        prop_assert_eq!(o.equal(&u, &v).unwrap(), o.is_identity(&uv).unwrap());
    }
}
