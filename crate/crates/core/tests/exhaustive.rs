use num_bigint::BigUint;

use modgeo::counting::{self, CumulativeOptions, Family};
use modgeo::enumerate::{self, ClassFilter};
use modgeo::verify::{self, Suite};
use modgeo::{oracle, Exec};

#[test]
fn modes_agree_on_every_enumerator() {
    for tau in 1..=14 {
        for filter in [
            ClassFilter::all(),
            ClassFilter::primitive(),
            ClassFilter::low_lying(3),
        ] {
            assert_eq!(
                enumerate::classes(tau, filter, Exec::Sequential).unwrap(),
                enumerate::classes(tau, filter, Exec::Parallel).unwrap()
            );
        }
        assert_eq!(
            enumerate::reciprocal_classes(tau, Some(2), Exec::Sequential).unwrap(),
            enumerate::reciprocal_classes(tau, Some(2), Exec::Parallel).unwrap()
        );
    }
}

#[test]
fn orbit_oracle_matches_enumeration() {
    for tau in 1..=12u32 {
        let got = enumerate::count_classes(tau, ClassFilter::all(), Exec::Parallel).unwrap();
        assert_eq!(
            got as usize,
            oracle::orbit_count(tau as usize),
            "tau = {tau}"
        );
        let proper: usize = oracle::all_sequences(tau as usize)
            .iter()
            .filter(|x| oracle::least_rotation(x) == **x && !oracle::is_proper_power(x))
            .count();
        let prim = enumerate::count_classes(tau, ClassFilter::primitive(), Exec::Parallel).unwrap();
        assert_eq!(prim as usize, proper, "tau = {tau}");
    }
}

#[test]
fn lowlying_counts_match_block_oracle() {
    for tau in 1..=12u32 {
        for m in 1..=tau {
            let expected = oracle::all_sequences(tau as usize)
                .iter()
                .filter(|x| {
                    oracle::least_rotation(x) == **x
                        && oracle::longest_cyclic_block(x) <= m as usize
                })
                .count();
            let got =
                enumerate::count_classes(tau, ClassFilter::low_lying(m), Exec::Parallel).unwrap();
            assert_eq!(got as usize, expected, "tau = {tau}, m = {m}");
        }
    }
}

#[test]
fn cumulative_counts() {
    let opts = CumulativeOptions::default();
    assert_eq!(
        counting::cumulative(Family::Reciprocal, 5, opts).unwrap(),
        BigUint::from(31u32)
    );
    let with_torsion = CumulativeOptions {
        torsion: true,
        m: None,
    };
    let plain = counting::cumulative(Family::Classes, 6, opts).unwrap();
    assert_eq!(
        counting::cumulative(Family::Classes, 6, with_torsion).unwrap(),
        plain + 3u32
    );
    assert!(counting::cumulative(Family::Reciprocal, 6, with_torsion).is_err());
    let lowrec = CumulativeOptions {
        torsion: false,
        m: Some(2),
    };
    assert_eq!(
        counting::cumulative(Family::LowLyingReciprocal, 4, lowrec).unwrap(),
        BigUint::from(11u32)
    );
}

#[test]
fn full_verification_passes() {
    for c in verify::run_suite(Suite::All, 12, Exec::Parallel).unwrap() {
        assert!(c.passed, "{} / {}: {}", c.suite, c.name, c.detail);
    }
}

#[test]
fn empirical_threshold_is_reported() {
    let t0 = enumerate::empirical_t0(3, 16, Exec::Parallel).unwrap();
    let t0 = t0.expect("bound reached by tau = 16");
    assert!((1..=16).contains(&t0));
}
