//! Agreement between independent constructions of the same mapping classes.

use pabraid::cone::{fiber_class_of_program, normalized_entropy_of_class};
use pabraid::dynnikov::{braids_equal, entropy_estimate};
use pabraid::families::{generate, xi_unpunctured, BaseBraid, FamilyName, FamilySpec};
use pabraid::foliation::penner_floor_for_braid;
use pabraid::{BraidWord, ConeClass, ConeContext, EstimatorConfig, StandardForm, TwistProgram};

fn log_lambda(b: &BraidWord) -> f64 {
    let e = entropy_estimate(b, &EstimatorConfig::default()).unwrap();
    assert!(e.converged, "{b}: {e:?}");
    assert!(e.value >= penner_floor_for_braid(b.degree()).unwrap(), "{b}");
    e.value
}

#[test]
fn gamma_has_the_entropy_of_xi() {
    let form = StandardForm::new(3, vec![vec![-1], vec![-1]]).unwrap();
    let gamma = form.ef_gamma();
    let xi = BaseBraid::Xi.word();
    assert_eq!(gamma.degree(), xi.degree());
    assert!((log_lambda(&gamma) - log_lambda(&xi)).abs() < 1e-6);
}

#[test]
fn punctured_and_unpunctured_xi_share_dilatations() {
    for p in 1..=4 {
        let full = xi_unpunctured(p).unwrap();
        let punctured = generate(&FamilySpec::fixed(FamilyName::Xi, p)).unwrap().word;
        assert!((log_lambda(&full.word) - log_lambda(&punctured)).abs() < 1e-8, "p={p}");
    }
}

#[test]
fn seeded_families_follow_their_cone_classes() {
    let seed = StandardForm::new(3, vec![vec![-1], vec![-1]]).unwrap();
    let ctx = ConeContext::of_seed(&seed);
    let config = EstimatorConfig::default();
    for p in 1..=4u64 {
        let beta = generate(&FamilySpec::seeded(FamilyName::Beta, p, seed.clone(), 0)).unwrap();
        let class = fiber_class_of_program(&TwistProgram::new(vec![0, 1, p]).unwrap()).unwrap();
        assert_eq!(class, ConeClass::new(p as i64 + 1, p as i64));
        let via_class = normalized_entropy_of_class(&ctx, &seed, class, &config).unwrap();
        assert_eq!(via_class.degree, beta.word.degree());
        let direct = (beta.word.degree() - 1) as f64 * log_lambda(&beta.word);
        assert!((via_class.normalized - direct).abs() < 1e-8, "p={p}");
    }
}

#[test]
fn twist_steps_commute_with_class_arithmetic() {
    // b[0, p, 1] is the disk twist of a full twist; both routes land on the
    // same braid
    let seed = StandardForm::new(3, vec![vec![-1]]).unwrap();
    for p in 1..=3u64 {
        let by_program = seed.apply_program(&TwistProgram::new(vec![0, p, 1]).unwrap()).unwrap();
        let by_class = seed.class_to_braid(p as i64 + 1, 1).unwrap();
        assert!(braids_equal(&by_program.to_braid_word(), &by_class.to_braid_word()).is_equal());
    }
}
