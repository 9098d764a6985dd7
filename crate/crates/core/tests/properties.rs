use lcrit::arith::{is_fundamental_discriminant, is_square, kronecker};
use lcrit::criterion::{
    f_sum, first_failed_rule, is_admissible, is_good, level_data, levels, s_count, table_condition,
    vanishing_verdict, Vanishing,
};
use lcrit::quadforms::enumerate_forms;
use lcrit::RationalPoint;
use proptest::prelude::*;

fn pt(p: i64, q: i64) -> RationalPoint {
    RationalPoint::new(p, q).unwrap()
}

fn odd_fundamental_upto(bound: i64) -> impl Iterator<Item = i64> {
    (1..=bound)
        .step_by(2)
        .map(|m| -m)
        .filter(|&d| is_fundamental_discriminant(d))
}

#[test]
fn parity_congruence_at_level_32() {
    let mut checked = 0;
    for m in 3..=2000i64 {
        let d = -m;
        if !is_fundamental_discriminant(d) || d % 3 == 0 || is_square(3 * m) {
            continue;
        }
        for x in [pt(0, 1), pt(1, 3)] {
            let e = f_sum(32, -3, d, x).unwrap();
            assert_eq!(
                e.value.rem_euclid(2),
                (e.count % 2) as i64,
                "D={d} x={x}: value {} count {}",
                e.value,
                e.count
            );
            checked += 1;
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn sum_at_zero_is_even_for_level_32() {
    for m in (3..=5000i64).filter(|m| m % 8 == 3) {
        let d = -m;
        if !is_fundamental_discriminant(d) || is_square(3 * m) {
            continue;
        }
        let e = f_sum(32, -3, d, pt(0, 1)).unwrap();
        assert_eq!(e.value % 2, 0, "D={d}: F(0) = {}", e.value);
    }
}

#[test]
fn empty_sums_are_zero() {
    let mut empties = 0;
    for data in levels() {
        for m in 3..400i64 {
            let d = -m;
            let delta = m * data.d0.abs();
            if !lcrit::arith::is_discriminant(d) || is_square(delta) {
                continue;
            }
            for x in data.points() {
                let set = enumerate_forms(data.level as u64, delta, x).unwrap();
                if set.is_empty() {
                    let e = f_sum(data.level as u64, data.d0, d, x).unwrap();
                    assert_eq!((e.value, e.count), (0, 0));
                    empties += 1;
                }
            }
        }
    }
    assert!(empties > 0);
}

/// Levels whose tabulated condition coincides with the general goodness
/// rules on odd fundamental discriminants.
const CONSISTENT_LEVELS: [u32; 9] = [11, 17, 19, 20, 21, 27, 32, 36, 49];

#[test]
fn tabulated_conditions_match_goodness_rules() {
    for level in CONSISTENT_LEVELS {
        for d in odd_fundamental_upto(3000) {
            assert_eq!(
                is_good(level, d).unwrap(),
                table_condition(level, d).unwrap(),
                "N={level} D={d}"
            );
        }
    }
}

// At levels 14, 15 and 24 the tabulated condition is strictly weaker than the
// general rules. The tests below pin down exactly where they part ways.

#[test]
fn level_14_table_omits_the_mod_8_rule() {
    let mut diverging = 0;
    for d in odd_fundamental_upto(3000) {
        let rules = is_good(14, d).unwrap();
        let table = table_condition(14, d).unwrap();
        assert!(!rules || table, "D={d}");
        if rules != table {
            assert_ne!((-d) % 8, 3, "D={d}");
            assert_eq!(first_failed_rule(14, d).unwrap(), Some(2));
            diverging += 1;
        }
        if (-d) % 8 == 3 {
            assert_eq!(rules, table, "D={d}");
        }
    }
    assert_eq!(diverging, 134);
}

#[test]
fn level_15_table_admits_multiples_of_3() {
    let mut diverging = 0;
    for d in odd_fundamental_upto(3000) {
        let rules = is_good(15, d).unwrap();
        let table = table_condition(15, d).unwrap();
        assert!(!rules || table, "D={d}");
        if rules != table {
            assert_eq!(d % 3, 0, "D={d}");
            diverging += 1;
        } else if table {
            assert_ne!(d % 3, 0, "D={d}");
        }
    }
    assert_eq!(diverging, 65);
}

#[test]
fn level_24_general_rules_admit_nothing() {
    // rule 1 forces (-3/|D|) = -1 once |D| ≡ 3 (mod 8); rule 4 forces +1
    let mut tabulated = 0;
    for d in odd_fundamental_upto(3000) {
        assert!(!is_good(24, d).unwrap(), "D={d}");
        if table_condition(24, d).unwrap() {
            assert_eq!(kronecker(-3, -d), -1);
            tabulated += 1;
        }
    }
    assert_eq!(tabulated, 115);
}

#[test]
fn listed_entries_are_non_invariant() {
    for data in levels() {
        for entry in data.noninvariant {
            let d = -entry.m;
            if !lcrit::arith::is_discriminant(d) || is_square(entry.m * data.d0.abs()) {
                continue;
            }
            let [x1, x2] = data.points();
            let f1 = f_sum(data.level as u64, data.d0, d, x1).unwrap().value;
            let f2 = f_sum(data.level as u64, data.d0, d, x2).unwrap().value;
            assert_ne!(f1, f2, "N={} m={}", data.level, entry.m);
        }
    }
}

/// `(level, m)` marked as good in the table that the tabulated condition
/// itself rejects.
const UNDERLINED_OUTSIDE_CONDITION: [(u32, i64); 5] =
    [(21, 3), (21, 24), (24, 3), (24, 51), (24, 123)];

#[test]
fn underlined_entries_give_unequal_sums() {
    let mut nonzero = 0;
    for data in levels() {
        for entry in data.noninvariant.iter().filter(|e| e.underlined) {
            match vanishing_verdict(data.level, -entry.m) {
                Ok(v) => {
                    assert_eq!(
                        v.outcome,
                        Vanishing::LNonzero,
                        "N={} m={}",
                        data.level,
                        entry.m
                    );
                    nonzero += 1;
                }
                Err(e) => {
                    assert!(e.is_precondition());
                    assert!(
                        UNDERLINED_OUTSIDE_CONDITION.contains(&(data.level, entry.m)),
                        "N={} m={}: {e}",
                        data.level,
                        entry.m
                    );
                }
            }
        }
    }
    assert_eq!(nonzero, 60);
}

/// `m = 123` at level 20 is underlined and the sums do differ, yet the twist
/// `y² = x³ + d·x² + 4d²·x + 4d³` (d = -123) of `y² = x³ + x² + 4x + 4` has a
/// point of infinite order, so `L(E_D, 1) = 0` unconditionally.
#[test]
fn level_20_underlined_123_has_a_rational_point() {
    let v = vanishing_verdict(20, -123).unwrap();
    assert_eq!(v.outcome, Vanishing::LNonzero);
    assert!(is_admissible(20, -123).unwrap());

    let d: i128 = -123;
    let (a, b, c) = (d, 4 * d * d, 4 * d * d * d);
    let (x, y): (i128, i128) = (6603, 531_900);
    assert_eq!(y * y, x * x * x + a * x * x + b * x + c);
    // Nagell–Lutz: a torsion point has y = 0 or y² dividing the discriminant.
    let disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    assert_ne!(disc, 0);
    assert_ne!(disc % (y * y), 0);
}

#[test]
fn vanishing_verdict_needs_fundamental_negative_d() {
    for d in [-12i64, -3 * 4 * 4, 5, 0, -16] {
        assert!(
            vanishing_verdict(32, d).unwrap_err().is_precondition(),
            "D={d}"
        );
    }
}

#[test]
fn unknown_levels_are_rejected() {
    assert!(level_data(13).is_err());
    assert!(vanishing_verdict(13, -11).is_err());
}

/// `(level, D)` accepted by the verdict with `|D| ≤ bound`.
fn good_pairs(bound: i64) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    for data in levels() {
        for m in 3..=bound {
            if is_fundamental_discriminant(-m)
                && data.condition.holds(m)
                && !is_square(m * data.d0.abs())
            {
                out.push((data.level, -m));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_bound_values(level_idx in 0usize..12, m in 3i64..3000) {
        let data = &levels()[level_idx];
        let d = -m;
        prop_assume!(lcrit::arith::is_discriminant(d) && !is_square(m * data.d0.abs()));
        for x in data.points() {
            let e = f_sum(data.level as u64, data.d0, d, x).unwrap();
            prop_assert!(e.value.unsigned_abs() <= e.count);
            prop_assert_eq!(e.count, s_count(data.level as u64, data.d0, d, x).unwrap());
        }
    }

    #[test]
    fn verdict_equals_comparison_of_sums((level, d) in prop::sample::select(good_pairs(5000))) {
        let data = level_data(level).unwrap();
        let v = vanishing_verdict(level, d).unwrap();
        let [x1, x2] = data.points();
        let f1 = f_sum(level as u64, data.d0, d, x1).unwrap().value;
        let f2 = f_sum(level as u64, data.d0, d, x2).unwrap().value;
        prop_assert_eq!((v.f_x1, v.f_x2), (f1, f2));
        prop_assert_eq!(v.outcome == Vanishing::LVanishes, f1 == f2);
    }
}
