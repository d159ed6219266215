use nilbound_core::counting::{count_quadratic, enumerate_quadratic};
use nilbound_core::malle::{b_constant, min_index};
use nilbound_core::series::{d_range, optimize_d, DEFAULT_EXHAUSTIVE_CAP};
use nilbound_core::{catalog, BaseFieldData, FiniteGroup, Ratio};
use proptest::prelude::*;

#[test]
fn catalog_entries_match_their_recorded_invariants() {
    let q = BaseFieldData::rationals();
    for entry in catalog::catalog() {
        let g = entry.group().unwrap();
        assert_eq!(g.order(), entry.order, "{}", entry.name);
        assert!(g.is_transitive(), "{}", entry.name);
        let Some(expected) = &entry.expected else { continue };
        let (_, a) = min_index(&g).unwrap();
        assert_eq!(Some(a), entry.expected_a(), "{}", entry.name);
        if let Some(b) = expected.b_q {
            assert_eq!(b_constant(&g, &q).unwrap(), b, "{}", entry.name);
        }
        if let Some(d) = expected.d_opt {
            assert_eq!(optimize_d(&g, &q).unwrap().d_g, d, "{}", entry.name);
        }
    }
}

#[test]
fn upper_exponent_never_undercuts_the_predicted_one() {
    let q = BaseFieldData::rationals();
    for entry in catalog::nilpotent_catalog() {
        let g = entry.group().unwrap();
        let b = b_constant(&g, &q).unwrap();
        let opt = optimize_d(&g, &q).unwrap();
        assert!(opt.d_k >= Ratio::from_integer(b as i64), "{}: d {} < b {b}", entry.name, opt.d_k);
        if g.order() <= DEFAULT_EXHAUSTIVE_CAP {
            let r = d_range(&g, DEFAULT_EXHAUSTIVE_CAP).unwrap();
            assert_eq!(r.min, opt.d_g, "{}", entry.name);
        }
    }
}

#[test]
fn field_data_survives_a_json_round_trip() {
    let text = r#"{"degree": 4, "real_places": 0, "class_rank": {"2": 1, "3": 0}, "cyclo_generators": {"3": [1], "4": [1, 3]}}"#;
    let k = BaseFieldData::from_json_str(text).unwrap();
    let again = BaseFieldData::from_json_str(&serde_json::to_string(&k.to_json()).unwrap()).unwrap();
    assert_eq!(k, again);
    assert_eq!(k.class_rank(2), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn streamed_quadratic_counts_match_enumeration(x in 1u64..20_000) {
        let listed = enumerate_quadratic(x).unwrap().len() as u64;
        prop_assert_eq!(count_quadratic(&[x])[0], listed);
    }
}
