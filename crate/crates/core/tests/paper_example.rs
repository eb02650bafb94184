use num_bigint::BigInt;
use quartic_hasse::arith::ParamTuple;
use quartic_hasse::conic::{is_smooth, smooth_by_elimination, smooth_by_macaulay, verify_bitangent, ConicBundle};
use quartic_hasse::poly::{frac, rat, TernForm};

fn bundle() -> ConicBundle {
    ConicBundle::from_params(&ParamTuple::worked_example()).unwrap()
}

const QUARTIC: [([u32; 3], &str); 12] = [
    ([4, 0, 0], "4096"),
    ([3, 1, 0], "-16384"),
    ([3, 0, 1], "-9869943810048"),
    ([2, 1, 1], "143396196352"),
    ([1, 2, 1], "-52445184"),
    ([0, 3, 1], "-32768"),
    ([2, 0, 2], "64826445425191482752"),
    ([1, 1, 2], "-277686962456893696"),
    ([0, 2, 2], "152281056061440"),
    ([1, 0, 3], "-917870567374331469445024"),
    ([0, 1, 3], "128810435095401504768"),
    ([0, 0, 4], "577825743806146102974275227249"),
];

#[test]
fn quartic_matches_the_published_coefficients() {
    let b = bundle();
    let mut expected = TernForm::zero(4);
    for (e, c) in QUARTIC {
        expected.set(e, c.parse().unwrap());
    }
    assert_eq!(b.quartic, expected);
    assert_eq!(b.quartic_raw.scale(&rat(4096)), expected);
    assert_eq!(b.a6, rat(-1513));
    assert_eq!(b.input.u, frac(-1, 257 * 769));
}

#[test]
fn quartic_is_smooth_by_both_methods() {
    let q = bundle().quartic;
    assert_eq!(smooth_by_elimination(&q), Some(true));
    assert!(smooth_by_macaulay(&q).unwrap());
    assert!(is_smooth(&q));
}

#[test]
fn fibers_split_over_the_expected_fields_into_bitangents() {
    let b = bundle();
    let splits = b.split_fibers().unwrap();
    let deltas: Vec<BigInt> = splits.iter().map(|s| s.delta.clone()).collect();
    let expected: Vec<BigInt> = [-769, 4369, 89, 257, 769, -1513].map(BigInt::from).to_vec();
    assert_eq!(deltas, expected);
    for s in &splits {
        let n = b.M.eval(&rat(1), &s.root);
        assert!(s.reproduces(&n), "fiber {}", s.index);
        for line in &s.lines {
            assert!(!line.is_rational_up_to_scalar());
            assert!(verify_bitangent(&b.quartic, line).unwrap(), "fiber {}", s.index);
        }
    }
}
