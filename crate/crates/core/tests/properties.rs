mod common;

use invsub::decompose::{decompose, decompose_with};
use invsub::endo::{is_mixed, BasicGenerator};
use invsub::nielsen::{check_witness, NielsenEngine};
use invsub::word::{positive_words, w};
use invsub::{Endomorphism, Letter, Sign, Substitution, Word};
use proptest::prelude::*;

use common::*;

fn raw_word(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'A', 'B', 'C']), 0..=max)
        .prop_map(|cs| cs.into_iter().collect())
}

fn positive_word(min: usize, max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c']), min..=max).prop_map(|cs| cs.into_iter().collect())
}

fn group_endo() -> impl Strategy<Value = Endomorphism> {
    [raw_word(5), raw_word(5), raw_word(5)].prop_map(|[a, b, c]| Endomorphism::new(w(&a), w(&b), w(&c)))
}

/// Products of basic generators, so always automorphisms.
fn automorphism() -> impl Strategy<Value = Endomorphism> {
    prop::collection::vec(prop::sample::select(BasicGenerator::ALL.to_vec()), 0..8).prop_map(|gs| {
        gs.iter()
            .fold(Endomorphism::identity(), |acc, g| acc.compose(&g.to_endo()))
    })
}

proptest! {
    #[test]
    fn parsing_reduces_like_the_reference(s in raw_word(16)) {
        prop_assert_eq!(w(&s).to_string(), reduce(&s));
    }

    #[test]
    fn word_group_laws(x in raw_word(10), y in raw_word(10), z in raw_word(10)) {
        let (x, y, z) = (w(&x), w(&y), w(&z));
        prop_assert!(x.concat(&x.inverse()).is_empty());
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        prop_assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
        prop_assert_eq!(x.concat(&y).inverse(), y.inverse().concat(&x.inverse()));
        prop_assert!(x.concat(&y).len() <= x.len() + y.len());
        prop_assert_eq!((x.len() + y.len() - x.concat(&y).len()) % 2, 0);
        for l in Letter::ALL {
            prop_assert_eq!(x.concat(&y).letter_count(l), x.letter_count(l) + y.letter_count(l));
        }
    }

    #[test]
    fn sign_matches_reference(s in raw_word(10)) {
        let word = w(&s);
        let expected = match sign_pattern(&word.to_string()).as_str() {
            "" => Sign::Empty,
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            _ => Sign::Mixed,
        };
        prop_assert_eq!(word.sign(), expected);
    }

    /// If `u` is not a suffix of `ux`, it is not a suffix of `uxᵐ` either.
    #[test]
    fn suffix_power(u in positive_word(1, 5), x in positive_word(1, 5), m in 1usize..=6) {
        let ux = format!("{u}{x}");
        prop_assume!(!ux.ends_with(&u));
        let uxm = format!("{u}{}", x.repeat(m));
        prop_assert!(!w(&uxm).has_suffix(&w(&u)));
    }

    #[test]
    fn mixed_conjugator_never_commutes(x in positive_word(1, 4), y in positive_word(1, 4), u in raw_word(6)) {
        let u = w(&u);
        prop_assume!(u.sign() == Sign::Mixed);
        prop_assert_ne!(u.concat(&w(&x)), w(&y).concat(&u));
    }

    #[test]
    fn composition_matches_reference(f in group_endo(), g in group_endo(), x in raw_word(6)) {
        let composed = f.compose(&g);
        prop_assert_eq!(images_of(&composed), compose_group(&images_of(&f), &images_of(&g)));
        prop_assert_eq!(composed.apply(&w(&x)), f.apply(&g.apply(&w(&x))));
    }

    #[test]
    fn matrix_is_multiplicative(f in group_endo(), g in group_endo()) {
        prop_assert_eq!(f.compose(&g).matrix(), f.matrix().mul(&g.matrix()));
        let rows = letter_matrix(&images_of(&f));
        prop_assert_eq!(f.matrix().det(), det3(&rows));
    }

    #[test]
    fn inner_automorphism_laws(f in group_endo(), u in raw_word(6), v in raw_word(6)) {
        let (u, v) = (w(&u), w(&v));
        prop_assert_eq!(
            Endomorphism::inner(&u).compose(&Endomorphism::inner(&v)),
            Endomorphism::inner(&u.concat(&v))
        );
        prop_assert_eq!(
            f.compose(&Endomorphism::inner(&u)),
            Endomorphism::inner(&f.apply(&u)).compose(&f)
        );
        prop_assert_eq!(f.conjugate(&u).matrix(), f.matrix());
    }

    /// Conjugating a substitution into another substitution keeps every
    /// image length.
    #[test]
    fn conjugation_preserves_lengths(a in positive_word(1, 4), b in positive_word(1, 4), c in positive_word(1, 4), z in raw_word(4)) {
        let sigma = sub(&triple(&a, &b, &c));
        if let Some(t) = sigma.conjugate(&w(&z)).to_substitution() {
            let lens = |s: &Substitution| s.images().clone().map(|x| x.len());
            prop_assert_eq!(lens(&t), lens(&sigma));
        }
    }

    #[test]
    fn witnesses_invert_automorphisms(sigma in automorphism()) {
        let engine = NielsenEngine::default();
        let verdict = engine.decide(&sigma).unwrap();
        let witness = verdict.witness().expect("products of generators are invertible");
        prop_assert!(check_witness(&sigma, witness));
        prop_assert!(sigma.compose(&witness.product()).is_identity());
        prop_assert_eq!(sigma.matrix().det().abs(), 1);
    }

    #[test]
    fn nielsen_verdicts_are_sound(sigma in group_endo()) {
        let engine = NielsenEngine::default().without_prefilters();
        match engine.decide(&sigma).unwrap().witness() {
            Some(witness) => {
                prop_assert!(check_witness(&sigma, witness));
                prop_assert_eq!(sigma.matrix().det().abs(), 1);
            }
            None => prop_assert!(NielsenEngine::default().decide(&sigma).unwrap().witness().is_none()),
        }
    }

    #[test]
    fn decomposition_invariants(steps in prop::collection::vec(0usize..4, 0..7), z in positive_word(0, 2), invert_z in any::<bool>()) {
        // a simple substitution conjugated by a short word
        let moves = [BasicGenerator::Pi1, BasicGenerator::Pi2, BasicGenerator::PhiL, BasicGenerator::PhiR];
        let simple = steps.iter().fold(Endomorphism::identity(), |acc, &i| acc.compose(&moves[i].to_endo()));
        let z = if invert_z { w(&z).inverse() } else { w(&z) };
        let Some(sigma) = simple.conjugate(&z).to_substitution() else {
            return Ok(());
        };
        let d = decompose(&sigma).unwrap();
        prop_assert_eq!(d.recompose(), sigma.as_endo().clone());
        prop_assert_ne!(d.conjugator.sign(), Sign::Mixed);
        prop_assert!(d.conjugator.len() <= sigma.min_image_len());
        let expanded = d.expanded().iter().fold(Endomorphism::inner(&d.conjugator), |acc, g| acc.compose(&g.to_endo()));
        prop_assert_eq!(expanded, sigma.as_endo().clone());
    }
}

/// `ux = yu` with non-empty positive `x, y` forces `u` or `u⁻¹` positive.
#[test]
fn commuting_conjugators_are_not_mixed() {
    let mut conjugators: Vec<Word> = Vec::new();
    let mut layer = vec![String::new()];
    for _ in 0..4 {
        layer = layer
            .iter()
            .flat_map(|u| "abcABC".chars().map(move |c| format!("{u}{c}")))
            .filter(|u| reduce(u) == *u)
            .collect();
        conjugators.extend(layer.iter().map(|u| w(u)));
    }
    let pos = positive_words(1, 4);
    let mut seen = [false; 2];
    for u in &conjugators {
        for x in &pos {
            let ux = u.concat(x);
            for y in pos.iter().filter(|y| y.len() == x.len()) {
                if ux == y.concat(u) {
                    assert_ne!(u.sign(), Sign::Mixed, "{u} {x} {y}");
                    seen[usize::from(u.sign() == Sign::Negative)] = true;
                }
            }
        }
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn mixedness_matches_reference() {
    let short = words(1, 2);
    for a in &short {
        for b in &short {
            for c in &short {
                let images = triple(a, b, c);
                assert_eq!(is_mixed(&sub(&images)), common::is_mixed(&images), "{images:?}");
            }
        }
    }
}

/// `(zux, zuv, zyv)` and `(uxz, uvz, yvz)` are not invertible under the
/// `(ux, uv, yv)` hypotheses.
#[test]
fn blocked_patterns_with_common_affix() {
    let engine = NielsenEngine::default().without_prefilters();
    let parts = words(1, 2);
    let mut checked = 0;
    for z in words(1, 2) {
        for u in &parts {
            for v in &parts {
                for x in &parts {
                    for y in &parts {
                        if !blocks_ux_uv_yv(u, v, x, y) {
                            continue;
                        }
                        let front = [format!("{z}{u}{x}"), format!("{z}{u}{v}"), format!("{z}{y}{v}")];
                        let back = [format!("{u}{x}{z}"), format!("{u}{v}{z}"), format!("{y}{v}{z}")];
                        for images in [front, back] {
                            assert!(!engine.decide(&endo(&images)).unwrap().is_invertible(), "{images:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn non_invertible_input_is_rejected_by_decompose() {
    let sigma: Substitution = "ab,ba,c".parse().unwrap();
    assert_eq!(decompose(&sigma), Err(invsub::Error::NotInvertible));
    let mixed: Substitution = "ab,cb,cab".parse().unwrap();
    let tight = NielsenEngine::default().without_prefilters();
    if !tight.decide(mixed.as_endo()).unwrap().is_invertible() {
        assert_eq!(decompose_with(&mixed, &tight), Err(invsub::Error::NotInvertible));
    }
}

#[test]
fn four_letter_input_is_refused() {
    assert!("ab,b,c,d".parse::<Endomorphism>().is_err());
    assert!("ab,d,c".parse::<Endomorphism>().is_err());
    assert!("ab,b".parse::<Substitution>().is_err());
    assert!(Word::empty().first_letter().is_err());
}

/// A member of the `(acbcⁿ, acⁿ⁺¹, abᵏcⁿ)` family with `k = 1` splits into
/// two non-permutation invertible substitutions; with `k = 2` it does not.
#[test]
fn acbc_acc_abc_is_decomposable() {
    let left = triple("a", "c", "bc");
    let right = triple("abc", "abb", "ac");
    assert_eq!(compose_group(&left, &right), triple("acbc", "acc", "abc"));
    for images in [&left, &right] {
        let inv = invsub::nielsen::invert(&endo(images)).unwrap();
        assert_eq!(compose_group(images, &images_of(&inv)), triple("a", "b", "c"));
    }
    assert!(invsub::enumerate::is_decomposable_bruteforce(&sub(&triple("acbc", "acc", "abc"))).unwrap());
    assert!(!invsub::enumerate::is_decomposable_bruteforce(&sub(&triple("acbc", "acc", "abbc"))).unwrap());
}
