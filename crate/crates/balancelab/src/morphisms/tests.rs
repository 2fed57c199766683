use proptest::prelude::*;

use crate::morphisms::block::{sliding_block_presentation, BlockCode};
use crate::morphisms::incidence::incidence;
use crate::morphisms::substitution::Substitution;
use crate::morphisms::tame::{tame_scan, TameVerdict};
use crate::morphisms::transient::transient_decomposition;
use crate::numeration::appendix::marker_substitution;
use crate::sources::{
    builtin_source, chacon_substitution, period_doubling_substitution, thue_morse_substitution,
    tribonacci_substitution,
};
use crate::words::alphabet::Alphabet;
use crate::words::source::WordSource;
use crate::words::word::FiniteWord;

#[test]
fn apply_concatenates_images() {
    let tri = tribonacci_substitution();
    let a = FiniteWord::parse(tri.source_alphabet(), "a").unwrap();
    assert_eq!(tri.apply(&a).unwrap().render(), "ab");
    let ab = FiniteWord::parse(tri.source_alphabet(), "ab").unwrap();
    assert_eq!(tri.apply(&ab).unwrap().render(), "abac");
    let empty = FiniteWord::empty(tri.source_alphabet().clone());
    assert!(tri.apply(&empty).unwrap().is_empty());
}

#[test]
fn apply_requires_matching_alphabet() {
    let tri = tribonacci_substitution();
    let w = FiniteWord::parse(&Alphabet::from_chars("xyz"), "xy").unwrap();
    assert!(tri.apply(&w).is_err());
}

#[test]
fn image_length_is_linear_in_letter_counts() {
    let chacon = chacon_substitution();
    let w = FiniteWord::parse(chacon.source_alphabet(), "0120012").unwrap();
    let image = chacon.apply(&w).unwrap();
    let counts = w.letter_counts();
    let expected: u64 = (0..3u32)
        .map(|a| counts[a as usize] * chacon.image_len(a) as u64)
        .sum();
    assert_eq!(image.len() as u64, expected);
}

#[test]
fn fixed_point_prefixes() {
    let tri = tribonacci_substitution();
    assert_eq!(tri.fixed_point_prefix(0, 7).unwrap().render(), "abacaba");

    let pd = period_doubling_substitution();
    assert_eq!(pd.fixed_point_prefix(0, 4).unwrap().render(), "0100");

    let marker = marker_substitution();
    assert_eq!(marker.fixed_point_prefix(0, 9).unwrap().render(), "*11000101");
}

#[test]
fn fixed_point_rejects_bad_seeds() {
    let tri = tribonacci_substitution();
    // b maps to "ac": not prolongable.
    assert!(tri.fixed_point_prefix(1, 10).is_err());
    // A stagnating seed: the fixed point stays finite.
    let stuck = Substitution::endomorphism("ab", &[("a", "a"), ("b", "ab")]).unwrap();
    assert!(stuck.fixed_point_prefix(0, 10).is_err());
}

#[test]
fn fixed_point_identity_on_prefixes() {
    for sub in [tribonacci_substitution(), thue_morse_substitution(), marker_substitution()] {
        let prefix = sub.fixed_point_prefix(0, 300).unwrap();
        let image = sub.apply(&prefix).unwrap();
        assert_eq!(&image.symbols()[..300], prefix.symbols());
    }
}

#[test]
fn incidence_classifies_letters() {
    // b fixes itself: bounded; a grows.
    let sub = Substitution::endomorphism("ab", &[("a", "ab"), ("b", "b")]).unwrap();
    let data = incidence(&sub).unwrap();
    assert_eq!(data.bounded_letters, vec![1]);
    assert_eq!(data.growing_letters, vec![0]);
    assert!(!data.primitive);
    assert!(data.quasi_primitive); // the only growing letter reaches itself

    let tri = incidence(&tribonacci_substitution()).unwrap();
    assert!(tri.bounded_letters.is_empty());
    assert!(tri.primitive);
    assert!(tri.quasi_primitive);

    let chacon = incidence(&chacon_substitution()).unwrap();
    assert!(chacon.bounded_letters.is_empty());
    assert!(chacon.primitive);

    // Incidence matrix columns sum to image lengths.
    let matrix = &tri.matrix;
    for a in 0..3usize {
        let col_sum: u64 = (0..3)
            .map(|b| u64::try_from(matrix[b][a].clone()).unwrap())
            .sum();
        assert_eq!(col_sum, tribonacci_substitution().image_len(a as u32) as u64);
    }
}

#[test]
fn incidence_rejects_erasing() {
    let erasing = Substitution::endomorphism("ab", &[("a", "ab"), ("b", ".")]).unwrap();
    assert!(incidence(&erasing).is_err());
    // apply still works on erasing substitutions.
    let w = FiniteWord::parse(erasing.source_alphabet(), "ab").unwrap();
    assert_eq!(erasing.apply(&w).unwrap().render(), "ab");
}

#[test]
fn quasi_uniformity_scan_reports_tribonacci_ratio() {
    let data = incidence(&tribonacci_substitution()).unwrap();
    let qu = data.quasi_uniform.unwrap();
    // max/min image length ratio stays below 3 for tribonacci powers.
    assert!(qu.observed_sup <= 3.0, "observed {}", qu.observed_sup);
    assert!(qu.ratio_cycle_detected);
}

#[test]
fn sliding_block_presentation_of_thue_morse() {
    let tm = thue_morse_substitution();
    let presentation = sliding_block_presentation(&tm, 2, 0).unwrap();
    // Four window letters in order of first appearance: 01, 11, 10, 00.
    assert_eq!(presentation.window_alphabet.size(), 4);
    // The presentation's fixed point, written with those indices, begins
    // 0 1 2 0 2 3.
    let fixed = presentation
        .substitution
        .fixed_point_prefix(presentation.seed, 6)
        .unwrap();
    assert_eq!(fixed.symbols(), &[0, 1, 2, 0, 2, 3]);
    // First-letter decoding reproduces the original word.
    let coded = presentation
        .substitution
        .fixed_point_prefix(presentation.seed, 500)
        .unwrap();
    let decoded = presentation.decode.apply(&coded).unwrap();
    let original = tm.fixed_point_prefix(0, 500).unwrap();
    assert_eq!(decoded.symbols(), original.symbols());
}

#[test]
fn sliding_block_presentation_of_period_doubling() {
    let pd = period_doubling_substitution();
    let presentation = sliding_block_presentation(&pd, 2, 0).unwrap();
    // Factors of length 2 of the doubling word: 01, 10, 00.
    assert_eq!(presentation.window_alphabet.size(), 3);
    let coded = presentation
        .substitution
        .fixed_point_prefix(presentation.seed, 256)
        .unwrap();
    let decoded = presentation.decode.apply(&coded).unwrap();
    assert_eq!(
        decoded.symbols(),
        pd.fixed_point_prefix(0, 256).unwrap().symbols()
    );
}

#[test]
fn sliding_block_presentation_single_letter() {
    let sub = Substitution::endomorphism("a", &[("a", "aa")]).unwrap();
    let presentation = sliding_block_presentation(&sub, 2, 0).unwrap();
    assert_eq!(presentation.window_alphabet.size(), 1);
}

#[test]
fn sum_block_code_of_thue_morse_is_period_doubling_complement() {
    let tm = builtin_source("thue-morse").unwrap();
    let code = BlockCode::mod_sum(2, tm.alphabet().clone()).unwrap();
    let coded = WordSource::block_code_image(code, tm).unwrap();
    let prefix = coded.prefix(9).unwrap();
    assert_eq!(prefix.render(), "101110101");
    // The coded word is the letter-exchange of the doubling fixed point.
    let pd = builtin_source("period-doubling").unwrap();
    let pd_prefix = pd.prefix(2000).unwrap();
    let coded_long = coded.prefix(2000).unwrap();
    for (a, b) in pd_prefix.symbols().iter().zip(coded_long.symbols()) {
        assert_eq!(*a, 1 - *b);
    }
}

#[test]
fn identity_block_code_is_identity() {
    let tri = builtin_source("tribonacci").unwrap();
    let code = BlockCode::identity(tri.alphabet().clone());
    let coded = WordSource::block_code_image(code, tri.clone()).unwrap();
    assert_eq!(
        coded.prefix(100).unwrap().symbols(),
        tri.prefix(100).unwrap().symbols()
    );
}

#[test]
fn first_appearance_coding_matches_presentation() {
    // Coding the word through its own length-2 window indices equals the
    // presentation's fixed point.
    let tm = builtin_source("thue-morse").unwrap();
    let presentation = sliding_block_presentation(&thue_morse_substitution(), 2, 0).unwrap();
    let coded = WordSource::block_code_image(presentation.coding.clone(), tm).unwrap();
    let via_code = coded.prefix(400).unwrap();
    let via_fixed = presentation
        .substitution
        .fixed_point_prefix(presentation.seed, 400)
        .unwrap();
    assert_eq!(via_code.symbols(), via_fixed.symbols());
}

#[test]
fn undefined_window_is_reported() {
    let tm = builtin_source("thue-morse").unwrap();
    // A code defined on a single window cannot cover the word.
    let alphabet = tm.alphabet().clone();
    let window = FiniteWord::parse(&alphabet, "01").unwrap();
    let code = BlockCode::new(2, alphabet.clone(), alphabet, vec![(window, 0)]).unwrap();
    let coded = WordSource::block_code_image(code, tm).unwrap();
    let err = coded.prefix(10).unwrap_err();
    assert!(err.to_string().contains("11"), "error names the factor: {err}");
}

#[test]
fn transient_decomposition_of_marker_word() {
    let marker = marker_substitution();
    let dec = transient_decomposition(&marker, 0).unwrap();
    assert!(!dec.already_recurrent);
    let alphabet = marker.source_alphabet();
    let recurrent: Vec<&str> = dec.recurrent.iter().map(|&a| alphabet.name(a)).collect();
    assert_eq!(recurrent, vec!["0", "1"]);
    assert_eq!(dec.transient_prefix.render(), "*");
    assert_eq!(dec.expansion.render(), "11");
    // Reconstruction: projection of the extended fixed point equals the
    // original on a long prefix.
    let rebuilt = dec
        .projection
        .apply(&dec.extended.fixed_point_prefix(dec.marker.unwrap(), 100_000).unwrap())
        .unwrap();
    let original = marker.fixed_point_prefix(0, 100_000).unwrap();
    assert_eq!(&rebuilt.symbols()[..100_000], original.symbols());
}

#[test]
fn transient_decomposition_of_recurrent_word() {
    let tri = tribonacci_substitution();
    let dec = transient_decomposition(&tri, 0).unwrap();
    assert!(dec.already_recurrent);
    assert_eq!(dec.recurrent.len(), 3);
    assert!(dec.transient_prefix.is_empty());
}

#[test]
fn transient_decomposition_with_initial_letter() {
    let sub =
        Substitution::endomorphism("sab", &[("s", "sab"), ("a", "ab"), ("b", "ba")]).unwrap();
    let dec = transient_decomposition(&sub, 0).unwrap();
    let alphabet = sub.source_alphabet();
    let recurrent: Vec<&str> = dec.recurrent.iter().map(|&a| alphabet.name(a)).collect();
    assert_eq!(recurrent, vec!["a", "b"]);
    assert_eq!(dec.transient_prefix.render(), "s");
    assert_eq!(dec.expansion.render(), "ab");
}

#[test]
fn tame_scan_verdicts() {
    // No bounded letters: immediately certified.
    let report = tame_scan(&tribonacci_substitution(), 12).unwrap();
    assert_eq!(report.verdict, TameVerdict::TameCertified);

    // Runs of b double every step: growth.
    let growing = Substitution::endomorphism("ab", &[("a", "abb"), ("b", "b")]).unwrap();
    let report = tame_scan(&growing, 12).unwrap();
    assert_eq!(report.verdict, TameVerdict::CounterGrowth);

    // One b per step stays isolated between a's: certified, runs of
    // length 1 only.
    let isolated = Substitution::endomorphism("ab", &[("a", "aba"), ("b", "b")]).unwrap();
    let report = tame_scan(&isolated, 12).unwrap();
    assert_eq!(report.verdict, TameVerdict::TameCertified);
    assert!(report.bounded_blocks.iter().all(|b| b.len() == 1));

    // a -> ab also lets b-runs grow (ab, abb, abbb, ...): growth, not
    // tameness.
    let trailing = Substitution::endomorphism("ab", &[("a", "ab"), ("b", "b")]).unwrap();
    let report = tame_scan(&trailing, 12).unwrap();
    assert_eq!(report.verdict, TameVerdict::CounterGrowth);
}

proptest! {
    #[test]
    fn prop_abelianization_is_linear(
        symbols in proptest::collection::vec(0u32..3, 0..60),
    ) {
        let tri = tribonacci_substitution();
        let w = FiniteWord::new(tri.source_alphabet().clone(), symbols).unwrap();
        let image = tri.apply(&w).unwrap();
        // image letter counts = incidence matrix times input counts
        let data = incidence(&tri).unwrap();
        let input = w.letter_counts();
        let output = image.letter_counts();
        for b in 0..3usize {
            let predicted: u64 = (0..3usize)
                .map(|a| u64::try_from(data.matrix[b][a].clone()).unwrap() * input[a])
                .sum();
            prop_assert_eq!(output[b], predicted);
        }
    }

    #[test]
    fn prop_composition_matches_double_apply(
        symbols in proptest::collection::vec(0u32..3, 0..40),
    ) {
        let tri = tribonacci_substitution();
        let squared = tri.power(2).unwrap();
        let w = FiniteWord::new(tri.source_alphabet().clone(), symbols).unwrap();
        prop_assert_eq!(
            squared.apply(&w).unwrap(),
            tri.apply(&tri.apply(&w).unwrap()).unwrap()
        );
    }
}
