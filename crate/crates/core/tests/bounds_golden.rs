mod common;

use common::*;
use kissing_core::bounds::*;

fn dims_28_31(base: i64, mode: BoundMode) -> Vec<i64> {
    bounds_report(base, mode, None, 28..=31)
        .unwrap()
        .rows
        .iter()
        .map(|r| r.bound)
        .collect()
}

#[test]
fn prop14_columns() {
    assert_eq!(prop14_sequence(480, 51).unwrap(), SINGLE_480);
    assert_eq!(prop14_sequence(488, 51).unwrap(), SINGLE_488);
}

#[test]
fn paired_columns() {
    assert_eq!(algnew_sequence(480, 51).unwrap(), PAIRED_480);
    assert_eq!(algnew_sequence(488, 51).unwrap(), PAIRED_488);
}

#[test]
fn divergence_rows() {
    let a = algnew_sequence(480, 51).unwrap();
    let p = prop14_sequence(480, 51).unwrap();
    let diff: Vec<usize> = (0..51).filter(|&i| a[i] != p[i]).map(|i| i + 1).collect();
    assert_eq!(diff, [22, 31, 44]);
    let a = algnew_sequence(488, 51).unwrap();
    let p = prop14_sequence(488, 51).unwrap();
    let diff: Vec<usize> = (0..51).filter(|&i| a[i] != p[i]).map(|i| i + 1).collect();
    assert_eq!(diff, [6, 11, 23, 30, 39]);
}

#[test]
fn kissing_bounds_from_recursions() {
    assert_eq!(dims_28_31(480, BoundMode::Prop14), [204188, 207930, 219008, 230872]);
    assert_eq!(dims_28_31(480, BoundMode::Algnew), [204188, 207930, 219012, 230880]);
    assert_eq!(dims_28_31(488, BoundMode::Prop14), [204312, 208114, 219368, 231412]);
    assert_eq!(dims_28_31(488, BoundMode::Algnew), [204316, 208120, 219380, 231428]);
    let p = prop14_sequence(488, 51).unwrap();
    assert_eq!(dimension_bound(&p, 25).unwrap(), 197048);
    assert_eq!(dimension_bound(&p, 26).unwrap(), 198512);
    assert_eq!(dimension_bound(&p, 27).unwrap(), 199968);
}

#[test]
fn explicit_family_bounds() {
    let mut sizes = vec![488; 24];
    let expected = [197048, 198512, 199976, 204368, 208272, 219984];
    for (dim, want) in (25..=30).zip(expected) {
        assert_eq!(dimension_bound(&sizes, dim).unwrap(), want);
    }
    // any tail over indices 25..=51 summing to 232874 − 219984
    sizes.extend(std::iter::repeat(478).take(26));
    sizes.push(12890 - 478 * 26);
    assert_eq!(sizes.len(), 51);
    assert_eq!(dimension_bound(&sizes, 31).unwrap(), 232874);
}

#[test]
fn paired_recursion_dominates_in_sum() {
    for base in (2..=626).step_by(2) {
        let a = algnew_sequence(base, 51).unwrap();
        let p = prop14_sequence(base, 51).unwrap();
        let (mut sa, mut sp) = (0, 0);
        for k in 0..51 {
            sa += a[k];
            sp += p[k];
            assert!(sa >= sp, "base {base} k {}", k + 1);
        }
        for dim in 25..=31 {
            assert!(dimension_bound(&a, dim).unwrap() >= dimension_bound(&p, dim).unwrap());
        }
    }
}

#[test]
fn entrywise_domination_breaks_near_the_top() {
    let a = algnew_sequence(562, 51).unwrap();
    let p = prop14_sequence(562, 51).unwrap();
    assert_eq!((p[4], a[4]), (556, 558));
    assert_eq!((p[5], a[5]), (556, 554));
    let bad: Vec<i64> = (2..=626)
        .step_by(2)
        .filter(|&b| {
            let a = algnew_sequence(b, 51).unwrap();
            let p = prop14_sequence(b, 51).unwrap();
            a.iter().zip(&p).any(|(x, y)| x < y)
        })
        .collect();
    assert_eq!(
        bad,
        [554, 562, 564, 566, 568, 570, 574, 580, 594, 596, 598, 602, 608, 610, 612, 616]
    );
}

#[test]
fn report_text_and_json() {
    let r = bounds_report(488, BoundMode::Algnew, Some(&[488; 24]), 25..=31).unwrap();
    assert!(r.sizes_are_hypothetical);
    let text = r.to_text();
    assert!(text.contains("219380"));
    assert!(text.contains("219984"));
    let back: BoundsReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}
