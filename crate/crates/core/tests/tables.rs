//! Every row of the shipped reference tables, including the large ones.

use lcrit::arith::is_prime;
use lcrit::criterion::parity_test;
use lcrit::tables::{check_row, fixture, TableName};
use rayon::prelude::*;

fn assert_table(name: TableName) {
    let fx = fixture(name).unwrap();
    let bad: Vec<String> = fx
        .rows
        .par_iter()
        .map(|row| check_row(&fx, row).unwrap())
        .filter(|c| !c.matches())
        .map(|c| format!("D={}: expected {:?} got {:?}", c.d, c.expected, c.computed))
        .collect();
    assert!(bad.is_empty(), "{name}: {}", bad.join("; "));
}

#[test]
fn congruent_number_table() {
    assert_table(TableName::Maincor);
}

#[test]
fn primes_table() {
    assert_table(TableName::Primes);
}

#[test]
fn cubes_table() {
    assert_table(TableName::Cubes);
}

#[test]
fn primes_table_parity_pattern() {
    let fx = fixture(TableName::Primes).unwrap();
    for row in &fx.rows {
        let p = -row.d;
        assert!(is_prime(p as u64) && p % 8 == 3, "p={p}");
        assert_eq!(row.f_x1 % 2, 0, "p={p}");
        assert_ne!(row.f_x2 % 2, 0, "p={p}");
        let report = parity_test(p).unwrap();
        assert!(report.odd && report.proven_noncongruent, "p={p}");
    }
}

#[test]
fn fixtures_are_well_formed() {
    for name in [TableName::Maincor, TableName::Primes, TableName::Cubes] {
        let fx = fixture(name).unwrap();
        assert!(!fx.rows.is_empty());
        assert!(
            fx.rows.windows(2).all(|w| w[0].d > w[1].d),
            "{name} not sorted"
        );
        if fx.labels.is_some() {
            assert!(fx.rows.iter().all(|r| r.label.is_some()), "{name}");
        }
    }
}
