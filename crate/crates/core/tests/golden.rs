//! Closed forms, and the printed variants that the exact table and the
//! numeric oracles reject.

mod common;

use rug::Float;

use common::*;
use ellcorr::engine::{isotropic_closed_form, CorrTable};
use ellcorr::ellring::{Basis, EllValue};
use ellcorr::numerics::{eval_value, toeplitz_row, ParamPoint};

const PREC: u32 = 200;

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(PREC, a - b).abs().to_f64()
}

#[test]
fn closed_forms_through_layer_four() {
    let t = CorrTable::build(2).unwrap();
    for (m, n, src) in C_FORMS {
        assert_eq!(t.c_entry(m, n).unwrap(), val(src), "C({m},{n})");
    }
    for (m, n, src) in C_DUAL_FORMS {
        assert_eq!(t.c_dual(m, n).unwrap(), val(src), "C_d({m},{n})");
    }
    for (m, n, src) in C_LOW_FORMS {
        assert_eq!(t.low_temp(m, n).unwrap(), val(src), "C_<({m},{n})");
    }
}

#[test]
fn column_entries_are_row_entries_with_couplings_swapped() {
    let t = CorrTable::build(2).unwrap();
    for (m, n, src) in C_FORMS.into_iter().filter(|(m, n, _)| m != n) {
        let swapped = val(src).swap_hv().change_basis(Basis::PiP);
        assert_eq!(t.c_entry(n, m).unwrap(), swapped, "C({n},{m})");
    }
}

#[test]
fn printed_low_temperature_square_coefficient_misses_the_oracle() {
    let p = ParamPoint::from_f64(1.3, 1.1, PREC).unwrap();
    let oracle = toeplitz_row(2, &p).unwrap().value;
    let corrected = eval_value(&val(C_LOW_FORMS[2].2), &p).unwrap();
    let printed = eval_value(&val(LOW_02_PRINTED), &p).unwrap();
    assert!(diff(&corrected, &oracle) < 1e-40);
    assert!(diff(&printed, &oracle) > 1e-3);
}

#[test]
fn printed_isotropic_linear_terms_miss_the_table() {
    let t = CorrTable::build(2).unwrap();
    let p = ParamPoint::from_f64(0.7, 0.7, PREC).unwrap();
    for (dual, printed) in [(false, ISO_12_PRINTED), (true, ISO_D12_PRINTED)] {
        let entry = if dual { t.c_dual(1, 2) } else { t.c_entry(1, 2) }.unwrap();
        let exact = eval_value(&entry, &p).unwrap();
        let corrected = eval_value(&isotropic_closed_form(dual, 1, 2).unwrap(), &p).unwrap();
        let wrong = eval_value(&val(printed), &p).unwrap();
        assert!(diff(&exact, &corrected) < 1e-40);
        assert!(diff(&exact, &wrong) > 1e-3);
    }
}

#[test]
fn isotropic_third_kind_reduction_sign() {
    // Π̃(−s², s²) = K̃/2 + 1/(2(1+s²)); the opposite sign is off by 1/(1+s²)
    let p = ParamPoint::from_f64(0.7, 0.7, PREC).unwrap();
    let pi = eval_value(&EllValue::pi(Basis::Pi), &p).unwrap();
    let plus = eval_value(&val("K/2 + 1/(2*(1+s_h^2))"), &p).unwrap();
    let minus = eval_value(&val("K/2 - 1/(2*(1+s_h^2))"), &p).unwrap();
    assert!(diff(&pi, &plus) < 1e-40);
    assert!((diff(&pi, &minus) - 1.0 / 1.49).abs() < 1e-12);
}
