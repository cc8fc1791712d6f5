use mcstack_core::asymptotics::{error_table, from_json, main_term_x, read_csv, to_json, write_csv};
use mcstack_core::export::{series_from_json, series_to_json, witnesses_from_json, witnesses_to_json};
use mcstack_core::gf::{gf_gap, gf_stack};
use mcstack_core::oracle::{count_stacks_dp, enumerate_stacks_explicit, OracleMode};
use mcstack_core::{StackParams, TruncatedSeries, Variant};
use proptest::prelude::*;
use rug::Integer;

fn expand(p: &StackParams, order: usize) -> TruncatedSeries {
    match p.variant() {
        Variant::Standard => gf_stack(p, order).unwrap(),
        Variant::Gap => gf_gap(p, order).unwrap(),
    }
}

fn valid_pair() -> impl Strategy<Value = StackParams> {
    (3u32..=11, 1u32..11).prop_filter_map("coprime, 2r != m", |(m, r)| StackParams::infer(r, m).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_agrees_with_dp(p in valid_pair()) {
        let s = expand(&p, 30);
        for n in 1..=30u64 {
            prop_assert_eq!(s.coeff(n as usize).unwrap(), &count_stacks_dp(OracleMode::Congruence(p), n));
        }
    }

    #[test]
    fn witnesses_are_valid_and_distinct(p in valid_pair(), n in 1u64..=14) {
        let mode = OracleMode::Congruence(p);
        let mut w = enumerate_stacks_explicit(mode, n).unwrap();
        prop_assert!(w.iter().all(|s| s.size() == n && s.is_valid(mode)));
        let len = w.len();
        w.sort_by(|a, b| (&a.left, a.peak, &a.right).cmp(&(&b.left, b.peak, &b.right)));
        w.dedup();
        prop_assert_eq!(w.len(), len);
        prop_assert_eq!(Integer::from(len), count_stacks_dp(mode, n));
    }

    #[test]
    fn product_is_commutative(a in prop::collection::vec(-50i64..50, 1..40), b in prop::collection::vec(-50i64..50, 1..40)) {
        let order = a.len().min(b.len()) - 1;
        let x = TruncatedSeries::from_i64s(&a).truncate(order);
        let y = TruncatedSeries::from_i64s(&b).truncate(order);
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }
}

#[test]
fn table_rows_use_series_coefficients() {
    let p = StackParams::standard(2, 5).unwrap();
    let ns = [10, 50, 250];
    let rows = error_table(&p, &ns).unwrap();
    let s = gf_stack(&p, 250).unwrap();
    for (row, &n) in rows.iter().zip(&ns) {
        assert_eq!(row.n, n);
        assert_eq!(&row.exact, s.coeff(n as usize).unwrap());
        assert_eq!(row.asymptotic, main_term_x(&p, n).unwrap());
    }
}

#[test]
fn table_round_trips_through_both_formats() {
    let p = StackParams::gap(3, 5).unwrap();
    let rows = error_table(&p, &[20, 400]).unwrap();
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let back = read_csv(buf.as_slice()).unwrap();
    let json = to_json(&back).unwrap();
    let again = from_json(&json).unwrap();
    for (a, b) in rows.iter().zip(&again) {
        assert_eq!(a.exact, b.exact);
        assert_eq!(a.relative_error, b.relative_error);
        assert_eq!(a.asymptotic.round_sig(30), b.asymptotic.round_sig(30));
    }
}

#[test]
fn exports_round_trip() {
    let p = StackParams::gap(5, 7).unwrap();
    let s = gf_gap(&p, 300).unwrap();
    assert_eq!(series_from_json(&series_to_json(&p, &s)).unwrap(), (p, s));

    let w = enumerate_stacks_explicit(OracleMode::Congruence(StackParams::standard(1, 3).unwrap()), 12).unwrap();
    assert_eq!(witnesses_from_json(&witnesses_to_json(&w)).unwrap(), w);
}
