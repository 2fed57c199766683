use std::collections::HashSet;

use proptest::prelude::*;

use crate::sadic::arnoux_rauzy::{ar_congenial, partial_quotients, DirectiveSequence};
use crate::sadic::bound::{theoretical_balance_bound, tribonacci_linear_recurrence_constant};
use crate::sadic::congenial::CongenialSequence;
use crate::sadic::decisive::{
    decisiveness_certificate, frequency_from_level, pattern_counts, seam_identity_check,
};
use crate::sadic::sturmian::{
    rotation_word_for_slope, sturmian_sadic, ContinuedFraction, IntervalVariant,
};
use crate::sources::{builtin_source, thue_morse_substitution, tribonacci_substitution};
use crate::words::alphabet::Alphabet;
use crate::words::factor_set;
use crate::words::scan::count_occurrences;
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;

fn tribonacci_sequence() -> CongenialSequence {
    CongenialSequence::constant(tribonacci_substitution(), 0).unwrap()
}

#[test]
fn composition_of_constant_levels() {
    let cs = tribonacci_sequence();
    let squared = cs.compose(0, 2).unwrap();
    assert_eq!(squared.image_word(0).render(), "abac");
    let single = cs.compose(0, 1).unwrap();
    assert_eq!(single.image_word(0).render(), "ab");
}

#[test]
fn composition_of_alternating_sturmian_levels() {
    let cf = ContinuedFraction::periodic(vec![], vec![1]).unwrap();
    let cs = sturmian_sadic(&cf).unwrap();
    let both = cs.compose(0, 2).unwrap();
    assert_eq!(both.image_word(0).render(), "010");
    assert_eq!(both.image_word(1).render(), "01");
}

#[test]
fn level_prefixes_telescoped() {
    let cs = tribonacci_sequence();
    assert_eq!(cs.level_prefix(0, 7).unwrap().render(), "abacaba");
    assert_eq!(cs.level_prefix(3, 1).unwrap().render(), "a");

    // Telescoping: level-0 prefix equals the composed image of a level-n
    // prefix, truncated.
    let level2 = cs.level_prefix(2, 40).unwrap();
    let composed = cs.compose(0, 2).unwrap();
    let image = composed.apply(&level2).unwrap();
    let direct = cs.level_prefix(0, 100).unwrap();
    assert_eq!(&image.symbols()[..100], direct.symbols());
}

#[test]
fn sturmian_level_prefix_lengths_follow_the_recurrence() {
    let cf = ContinuedFraction::periodic(vec![], vec![1]).unwrap();
    let cs = sturmian_sadic(&cf).unwrap();
    // Composed seed-image lengths are consecutive fibonacci numbers.
    let mut lengths = Vec::new();
    for n in 1..10 {
        let composed = cs.compose(0, n).unwrap();
        let seed = cs.level(n).unwrap().seed;
        lengths.push(composed.image_len(seed));
    }
    assert_eq!(lengths, vec![2, 3, 5, 8, 13, 21, 34, 55, 89]);
}

#[test]
fn sturmian_sadic_prefix_is_the_golden_word() {
    let cf = ContinuedFraction::periodic(vec![], vec![1]).unwrap();
    let cs = sturmian_sadic(&cf).unwrap();
    let prefix = cs.level_prefix(0, 13).unwrap();
    assert_eq!(prefix.render(), "0100101001001");
    // Same language as the fixed point of 0 -> 01, 1 -> 0.
    let fib = builtin_source("fibonacci-word").unwrap();
    assert_eq!(fib.prefix(13).unwrap().render(), "0100101001001");
}

#[test]
fn rotation_matches_sadic_for_classic_slopes() {
    for quotients in [vec![1u64], vec![2], vec![1, 2], vec![3, 1, 2]] {
        let cf = ContinuedFraction::periodic(vec![], quotients.clone()).unwrap();
        let cs = sturmian_sadic(&cf).unwrap();
        let sadic = cs.level_prefix(0, 2000).unwrap();
        let slope = cf.slope_for_rotation();
        let rotation =
            rotation_word_for_slope(&slope, 40, IntervalVariant::LeftClosed, 2000).unwrap();
        assert_eq!(sadic.symbols(), rotation.symbols(), "quotients {quotients:?}");
    }
}

#[test]
fn rotation_variants_agree_at_zero_intercept() {
    let cf = ContinuedFraction::periodic(vec![2], vec![1]).unwrap();
    let slope = cf.slope_for_rotation();
    let left = rotation_word_for_slope(&slope, 40, IntervalVariant::LeftClosed, 3000).unwrap();
    let right = rotation_word_for_slope(&slope, 40, IntervalVariant::RightClosed, 3000).unwrap();
    assert_eq!(left.symbols(), right.symbols());
}

#[test]
fn rotation_rejects_bad_intercepts() {
    use num_bigint::{BigInt, BigUint};
    let alpha = (BigUint::from(2u32), BigUint::from(5u32));
    // rho = 0.9 > 1 - alpha = 0.6
    let err = crate::sadic::sturmian::sturmian_rotation(
        (&alpha.0, &alpha.1),
        (&BigInt::from(9), &BigUint::from(10u32)),
        IntervalVariant::LeftClosed,
        10,
    );
    assert!(err.is_err());
}

#[test]
fn sturmian_words_have_complexity_n_plus_one() {
    let cf = ContinuedFraction::periodic(vec![], vec![1]).unwrap();
    let source = WordSource::sadic_limit(sturmian_sadic(&cf).unwrap()).unwrap();
    let profile = crate::words::profiles::complexity_profile(&source, 20, 10_000, None).unwrap();
    for n in 1..=20 {
        assert_eq!(profile.count(n), n + 1);
    }
}

#[test]
fn ar_directive_abc_generates_the_tribonacci_language() {
    let alphabet = Alphabet::from_chars("abc");
    let ds = DirectiveSequence::new(alphabet, vec![], vec![0, 1, 2]).unwrap();
    let (cs, warnings) = ar_congenial(&ds, 0).unwrap();
    assert!(warnings.is_empty());
    let source = WordSource::sadic_limit(cs).unwrap();
    let tri = builtin_source("tribonacci").unwrap();
    // The level word appends rather than prepends the directive letter, so
    // it is a different point of the same system: the factor sets agree.
    for n in [1usize, 2, 3, 6, 10] {
        let ours: HashSet<String> = factor_set(&source, n, 20_000)
            .unwrap()
            .iter()
            .map(|f| f.render())
            .collect();
        let reference: HashSet<String> = factor_set(&tri, n, 20_000)
            .unwrap()
            .iter()
            .map(|f| f.render())
            .collect();
        assert_eq!(ours, reference, "factor sets at n = {n}");
    }
    // Complexity (d - 1) n + 1 with d = 3.
    let profile = crate::words::profiles::complexity_profile(&source, 20, 100_000, None).unwrap();
    for n in 1..=20 {
        assert_eq!(profile.count(n), 2 * n + 1);
    }
}

#[test]
fn ar_binary_directive_gives_a_sturmian_language() {
    let alphabet = Alphabet::from_chars("01");
    let ds = DirectiveSequence::new(alphabet, vec![], vec![0, 1]).unwrap();
    let (cs, warnings) = ar_congenial(&ds, 0).unwrap();
    assert!(warnings.is_empty());
    let source = WordSource::sadic_limit(cs).unwrap();
    // Complexity n + 1 and the same factor sets as the golden-ratio word.
    let profile = crate::words::profiles::complexity_profile(&source, 12, 10_000, None).unwrap();
    for n in 1..=12 {
        assert_eq!(profile.count(n), n + 1);
    }
    let golden = WordSource::sadic_limit(
        sturmian_sadic(&ContinuedFraction::periodic(vec![], vec![1]).unwrap()).unwrap(),
    )
    .unwrap();
    for n in [2usize, 5, 9] {
        let ours: HashSet<String> = factor_set(&source, n, 10_000)
            .unwrap()
            .iter()
            .map(|f| f.render())
            .collect();
        let reference: HashSet<String> = factor_set(&golden, n, 10_000)
            .unwrap()
            .iter()
            .map(|f| f.render())
            .collect();
        assert_eq!(ours, reference, "factor sets at n = {n}");
    }
}

#[test]
fn ar_warns_when_a_letter_is_missing() {
    let alphabet = Alphabet::from_chars("abc");
    let ds = DirectiveSequence::new(alphabet, vec![], vec![0]).unwrap();
    let (_, warnings) = ar_congenial(&ds, 0).unwrap();
    assert_eq!(warnings.len(), 2);
}

#[test]
fn weak_and_strong_quotients() {
    let alphabet = Alphabet::from_chars("ab");
    // a a b b b a
    let ds = DirectiveSequence::new(alphabet, vec![0, 0, 1, 1, 1, 0], vec![]).unwrap();
    let pq = partial_quotients(&ds, 6);
    assert_eq!(pq.weak(), vec![2, 3, 1]);

    let ternary = Alphabet::from_chars("abc");
    let ds = DirectiveSequence::new(ternary, vec![], vec![0, 1, 2]).unwrap();
    let pq = partial_quotients(&ds, 13);
    assert_eq!(pq.window_indices[..4], [0, 2, 4, 6]);
    assert!(pq.strong.iter().all(|&s| s == 2));

    let binary = Alphabet::from_chars("ab");
    let ds = DirectiveSequence::new(binary, vec![], vec![0, 1]).unwrap();
    let pq = partial_quotients(&ds, 10);
    assert!(pq.weak().iter().all(|&k| k == 1));
    assert!(pq.strong.iter().all(|&s| s == 1));
}

#[test]
fn positivity_checks() {
    let cs = tribonacci_sequence();
    let at3 = cs.positivity_check(3, 12).unwrap();
    assert!(at3.iter().all(|&ok| ok));
    let at1 = cs.positivity_check(1, 12).unwrap();
    assert!(at1.iter().all(|&ok| !ok)); // c never occurs in tau(c) = "a"

    let cf = ContinuedFraction::periodic(vec![], vec![1]).unwrap();
    let sturmian = sturmian_sadic(&cf).unwrap();
    let at2 = sturmian.positivity_check(2, 12).unwrap();
    assert!(at2.iter().all(|&ok| ok));
}

fn tribonacci_factors2() -> HashSet<FiniteWord> {
    let tri = builtin_source("tribonacci").unwrap();
    factor_set(&tri, 2, 10_000).unwrap().into_iter().collect()
}

#[test]
fn tribonacci_is_1_decisive() {
    let tri = tribonacci_substitution();
    let cert = decisiveness_certificate(&tri, &tribonacci_factors2(), 1)
        .unwrap()
        .expect("certificate exists");
    for a in 0..3u32 {
        assert_eq!(cert.forecast[a as usize].render(), "a");
    }
}

#[test]
fn thue_morse_is_not_1_decisive() {
    let tm = thue_morse_substitution();
    let source = builtin_source("thue-morse").unwrap();
    let factors2: HashSet<FiniteWord> =
        factor_set(&source, 2, 10_000).unwrap().into_iter().collect();
    assert!(decisiveness_certificate(&tm, &factors2, 1).unwrap().is_none());
}

#[test]
fn sliding_block_presentation_is_decisive() {
    // The 2-block presentation of a substitution is (m-1)-decisive in its
    // fixed point, with m the least image length.
    let tm = thue_morse_substitution();
    let presentation = crate::morphisms::block::sliding_block_presentation(&tm, 2, 0).unwrap();
    let sub = &presentation.substitution;
    let source = WordSource::fixed_point(sub.clone(), presentation.seed).unwrap();
    let factors2: HashSet<FiniteWord> =
        factor_set(&source, 2, 10_000).unwrap().into_iter().collect();
    let k = sub.min_image_len() - 1;
    assert!(k >= 1);
    let cert = decisiveness_certificate(sub, &factors2, k).unwrap();
    assert!(cert.is_some());
}

#[test]
fn forced_forecast_is_unique() {
    // Whenever a certificate exists, the forecast is the common image
    // prefix of the successors, so rebuilding it gives the same map.
    let tri = tribonacci_substitution();
    let factors2 = tribonacci_factors2();
    let cert = decisiveness_certificate(&tri, &factors2, 1).unwrap().unwrap();
    for f in &factors2 {
        let (a, b) = (f.symbols()[0], f.symbols()[1]);
        let image = tri.image(b);
        assert_eq!(&image[..1], cert.forecast[a as usize].symbols());
    }
}

#[test]
fn decisive_composition_order_multiplies() {
    // tau decisive of order k and images of sigma at least m long give
    // sigma . tau decisiveness of order k m.
    let tri = tribonacci_substitution();
    let factors2 = tribonacci_factors2();
    let squared = tri.power(2).unwrap();
    let m = tri.min_image_len();
    let cert = decisiveness_certificate(&squared, &factors2, m).unwrap();
    assert!(cert.is_some(), "composed substitution is {m}-decisive");
    // Nontrivial multiplier: the square has min image length 2, so the
    // cube (square composed with tau, k = 1) is 2-decisive.
    let cubed = tri.power(3).unwrap();
    let m2 = squared.min_image_len();
    assert_eq!(m2, 2);
    let cert = decisiveness_certificate(&cubed, &factors2, m2).unwrap();
    assert!(cert.is_some(), "cube is {m2}-decisive");
}

#[test]
fn pattern_count_tables() {
    let tri = tribonacci_substitution();
    let cert = decisiveness_certificate(&tri, &tribonacci_factors2(), 1)
        .unwrap()
        .unwrap();
    let alphabet = tri.source_alphabet();
    let ab = FiniteWord::parse(alphabet, "ab").unwrap();
    assert_eq!(pattern_counts(&cert, &tri, &ab).unwrap(), vec![1, 0, 0]);
    let ba = FiniteWord::parse(alphabet, "ba").unwrap();
    assert_eq!(pattern_counts(&cert, &tri, &ba).unwrap(), vec![1, 0, 0]);
    // Single letters reduce to plain image counts.
    let a = FiniteWord::parse(alphabet, "a").unwrap();
    assert_eq!(pattern_counts(&cert, &tri, &a).unwrap(), vec![1, 1, 1]);
    // Patterns beyond order + 1 are rejected.
    let aba = FiniteWord::parse(alphabet, "aba").unwrap();
    assert!(pattern_counts(&cert, &tri, &aba).is_err());
}

#[test]
fn seam_identity_on_fixed_sites() {
    let tri = tribonacci_substitution();
    let cert = decisiveness_certificate(&tri, &tribonacci_factors2(), 1)
        .unwrap()
        .unwrap();
    let source = builtin_source("tribonacci").unwrap();
    let alphabet = tri.source_alphabet();
    let ab = FiniteWord::parse(alphabet, "ab").unwrap();
    assert!(seam_identity_check(&cert, &tri, &source, 0, 2, &ab).unwrap());
    // Single letters: both sides are the image count.
    let a = FiniteWord::parse(alphabet, "a").unwrap();
    assert!(seam_identity_check(&cert, &tri, &source, 5, 1, &a).unwrap());
}

#[test]
fn seam_identity_on_random_sites() {
    let tri = tribonacci_substitution();
    let cert = decisiveness_certificate(&tri, &tribonacci_factors2(), 1)
        .unwrap()
        .unwrap();
    let source = builtin_source("tribonacci").unwrap();
    let prefix = source.prefix(4000).unwrap();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move |bound: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize % bound
    };
    let mut checked = 0;
    while checked < 100 {
        let w_len = 1 + next(24);
        let position = next(3000);
        let u_len = 1 + next(2); // up to order + 1 = 2
        let u_start = next(prefix.len() - u_len);
        let u = prefix.slice(u_start, u_start + u_len);
        assert!(
            seam_identity_check(&cert, &tri, &source, position, w_len, &u).unwrap(),
            "site ({position}, {w_len}) pattern {u}"
        );
        checked += 1;
    }
}

#[test]
fn level_frequencies_predict_pattern_frequencies() {
    let tri = tribonacci_substitution();
    let cert = decisiveness_certificate(&tri, &tribonacci_factors2(), 1)
        .unwrap()
        .unwrap();
    let source = builtin_source("tribonacci").unwrap();
    let horizon = 100_000;
    let prefix = source.prefix(horizon).unwrap();
    let counts = prefix.letter_counts();
    let nu: Vec<f64> = counts.iter().map(|&c| c as f64 / horizon as f64).collect();
    let alphabet = tri.source_alphabet();
    for text in ["a", "b", "c", "ab", "ba", "ac", "ca", "aa"] {
        let pattern = FiniteWord::parse(alphabet, text).unwrap();
        let predicted = frequency_from_level(&cert, &tri, &nu, &pattern).unwrap();
        let observed = count_occurrences(&prefix, &pattern).unwrap() as f64 / horizon as f64;
        assert!(
            (predicted - observed).abs() < 1e-3,
            "pattern {text}: predicted {predicted}, observed {observed}"
        );
    }
}

#[test]
fn uniform_frequencies_on_periodic_presentation() {
    // a -> ab, b -> ab: the image word is (ab)^inf; mu(ab) = 1/2.
    let sub = crate::morphisms::substitution::Substitution::endomorphism(
        "ab",
        &[("a", "ab"), ("b", "ab")],
    )
    .unwrap();
    let mut factors2 = HashSet::new();
    let alphabet = sub.source_alphabet().clone();
    factors2.insert(FiniteWord::parse(&alphabet, "ab").unwrap());
    factors2.insert(FiniteWord::parse(&alphabet, "ba").unwrap());
    let cert = decisiveness_certificate(&sub, &factors2, 1).unwrap().unwrap();
    let ab = FiniteWord::parse(&alphabet, "ab").unwrap();
    let mu = frequency_from_level(&cert, &sub, &[0.5, 0.5], &ab).unwrap();
    assert!((mu - 0.5).abs() < 1e-12);
}

#[test]
fn balance_bound_values() {
    let l = tribonacci_linear_recurrence_constant();
    let bound = theoretical_balance_bound(l, 2.0, 3.0);
    assert!((4602.6..4602.8).contains(&bound), "bound {bound}");
    assert!((l - 9.605).abs() < 1e-3);
}

proptest! {
    #[test]
    fn prop_quotient_round_trip(
        pre in proptest::collection::vec(0u32..3, 0..12),
        period in proptest::collection::vec(0u32..3, 1..5),
    ) {
        let alphabet = Alphabet::from_chars("abc");
        let ds = DirectiveSequence::new(alphabet, pre, period).unwrap();
        let window = 30usize;
        let pq = partial_quotients(&ds, window);
        prop_assert_eq!(pq.reconstruct(), ds.window(window));
    }

    #[test]
    fn prop_telescoping_identity(levels in 1usize..6, len in 1usize..300) {
        let cs = tribonacci_sequence();
        let inner_len = len.min(80);
        let level_word = cs.level_prefix(levels, inner_len).unwrap();
        let composed = cs.compose(0, levels).unwrap();
        let image = composed.apply(&level_word).unwrap();
        let check = image.len().min(len);
        let direct = cs.level_prefix(0, check).unwrap();
        prop_assert_eq!(&image.symbols()[..check], direct.symbols());
    }
}
