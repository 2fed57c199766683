use num_traits::ToPrimitive;

use crate::toeplitz::spec::{validate_spec, SizeInfo, ToeplitzSpec};
use crate::toeplitz::{complexity_growth_check, exp_spec, pd_equivalence_check, toeplitz_prefix};
use crate::words::profiles::recurrence_profile;
use crate::words::source::WordSource;

#[test]
fn doubling_tower_prefixes() {
    let spec = ToeplitzSpec::period_doubling();
    assert_eq!(toeplitz_prefix(&spec, 4).unwrap().render(), "0100");
    assert_eq!(
        toeplitz_prefix(&spec, 16).unwrap().render(),
        "0100010101000100"
    );
    assert_eq!(toeplitz_prefix(&spec, 1).unwrap().render(), "0");
}

#[test]
fn doubling_tower_equals_fixed_point() {
    assert!(pd_equivalence_check(4).unwrap());
    assert!(pd_equivalence_check(1).unwrap());
    assert!(pd_equivalence_check(4usize.pow(5)).unwrap());
}

#[test]
fn doubling_tower_validates() {
    let spec = ToeplitzSpec::period_doubling();
    let report = validate_spec(&spec, 4).unwrap();
    assert!(report.all_passed, "{report:?}");
    for check in &report.levels {
        assert!(check.uniform_length);
        assert_eq!(check.left_proper, Some(0));
        assert!(check.strongly_primitive);
        assert!(check.injective_on_letters);
    }
}

#[test]
fn equal_images_break_injectivity() {
    let base = crate::words::alphabet::Alphabet::from_chars("01");
    let spec = ToeplitzSpec::explicit(
        base,
        vec![vec![vec![0, 1, 0, 0], vec![0, 1, 0, 0]]],
        true,
    )
    .unwrap();
    let report = validate_spec(&spec, 2).unwrap();
    assert!(!report.all_passed);
    assert!(report.levels.iter().any(|l| !l.injective_on_letters));
}

#[test]
fn block_level_enumeration_matches_the_small_case() {
    // Two letters, four of each: blocks are 01 w' 10 with the six balanced
    // middles 0011, 0101, 0110, 1001, 1010, 1100.
    let spec = exp_spec(2, vec![4], 7).unwrap();
    let stats = spec.exp_stats().unwrap();
    assert_eq!(stats.len(), 1);
    let level = &stats[0];
    assert_eq!(level.alphabet_size, 2);
    assert_eq!(level.middle_len, 4);
    match &level.member_count {
        SizeInfo::Exact(c) => assert_eq!(c.to_u64(), Some(6)),
        SizeInfo::LogOnly(_) => panic!("exact count expected"),
    }
    let middles = level.enumerated_middles.as_ref().unwrap();
    let rendered: Vec<String> = middles
        .iter()
        .map(|m| m.iter().map(|d| d.to_string()).collect())
        .collect();
    assert_eq!(rendered, vec!["0011", "0101", "0110", "1001", "1010", "1100"]);
    // Periods: p_1 = 1, p_2 = k_1 l_1 = 8.
    assert_eq!(spec.period(1).unwrap(), 1);
    assert_eq!(spec.period(2).unwrap(), 8);
    // Full level images are u + middle + v.
    let image = spec.image_prefix(1, 0, usize::MAX).unwrap();
    assert_eq!(image, vec![0, 1, 0, 0, 1, 1, 1, 0]);
}

#[test]
fn block_levels_validate_and_grow() {
    let spec = exp_spec(2, vec![4, 4], 7).unwrap();
    let report = validate_spec(&spec, 2).unwrap();
    assert!(report.all_passed, "{report:?}");
    let rows = complexity_growth_check(&spec, 2, 4096).unwrap();
    // Level 2 has period 8 and at least 6 distinct factors of that length.
    let level2 = rows.iter().find(|r| r.level == 2).unwrap();
    assert_eq!(level2.period, 8);
    assert_eq!(level2.lower_bound, Some(6));
    assert!(level2.bound_met.unwrap(), "{} factors", level2.distinct_factors);
}

#[test]
fn doubling_tower_growth_rows_are_flat() {
    let spec = ToeplitzSpec::period_doubling();
    let rows = complexity_growth_check(&spec, 3, 4096).unwrap();
    for row in rows {
        assert_eq!(row.lower_bound, Some(2));
        assert!(row.bound_met.unwrap());
    }
}

#[test]
fn deep_block_levels_switch_to_counting() {
    let spec = exp_spec(2, vec![4, 4, 4], 7).unwrap();
    let stats = spec.exp_stats().unwrap();
    // Level 2: six letters, middle of 12, member count 12!/(2!)^6 over the
    // enumeration cap, so only a deterministic sample is kept.
    let level2 = &stats[1];
    assert_eq!(level2.alphabet_size, 6);
    assert_eq!(level2.middle_len, 12);
    match &level2.member_count {
        SizeInfo::Exact(c) => assert_eq!(c.to_u64(), Some(7_484_400)),
        _ => panic!("exact count expected"),
    }
    assert!(level2.enumerated_middles.is_none());
    assert_eq!(level2.sampled.len(), 16);
    for (_, middle) in &level2.sampled {
        let mut counts = vec![0u64; 6];
        for &letter in middle {
            counts[letter as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == 2), "balanced middle");
    }
    // Level 3 addresses 7.48 million letters; its member count is only
    // known through the log estimate.
    let level3 = &stats[2];
    assert_eq!(level3.alphabet_size, 7_484_400);
    assert!(matches!(level3.member_count, SizeInfo::LogOnly(_)));
    // Prefixes still materialize through the sampled levels.
    let prefix = spec.prefix(500).unwrap();
    assert_eq!(prefix.len(), 500);
    let shallow = exp_spec(2, vec![4, 4], 7).unwrap().prefix(192).unwrap();
    assert_eq!(&prefix.symbols()[..192], shallow.symbols());
}

#[test]
fn enumerated_members_satisfy_the_boundary_conditions() {
    // Every enumerated member starts with the ascending run, ends with its
    // reversal, and uses each letter exactly k times.
    let spec = exp_spec(3, vec![3], 7).unwrap();
    let stats = spec.exp_stats().unwrap();
    let count = stats[0].member_count.as_u64().unwrap();
    for letter in 0..count {
        let member = spec.image_prefix(1, letter, usize::MAX).unwrap();
        assert_eq!(&member[..3], &[0, 1, 2], "ascending head");
        assert_eq!(&member[member.len() - 3..], &[2, 1, 0], "descending tail");
        let mut counts = [0u64; 3];
        for &b in &member {
            counts[b as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == 3), "letter counts {counts:?}");
    }
}

#[test]
fn rejects_k_below_two() {
    assert!(exp_spec(2, vec![1], 7).is_err());
}

#[test]
fn degenerate_k_equals_two_collapses() {
    let spec = exp_spec(2, vec![2], 7).unwrap();
    let stats = spec.exp_stats().unwrap();
    assert!(stats[0].degenerate);
    match &stats[0].member_count {
        SizeInfo::Exact(c) => assert_eq!(c.to_u64(), Some(1)),
        _ => panic!("exact"),
    }
}

#[test]
fn tower_words_are_uniformly_recurrent_in_scans() {
    let spec = ToeplitzSpec::period_doubling();
    let source = WordSource::toeplitz(spec);
    let profile = recurrence_profile(&source, 8, 20_000, None).unwrap();
    for n in 1..=8 {
        assert!(profile.value(n).is_some(), "finite window at n = {n}");
    }
}
