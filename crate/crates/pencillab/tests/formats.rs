//! Property tests for the wire formats and canonical forms.

use proptest::prelude::*;

use pencillab::exact::{parse_rat, rat_to_string, Mat, Rat, SymMat};
use pencillab::krasnov::canonical_necklace;
use pencillab::pencil::QuadricPencil;
use pencillab::report::{pencil_from_json, pencil_to_json};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (any::<i32>(), 1..10_000i32)
        .prop_map(|(n, d)| Rat::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d)))
}

proptest! {
    #[test]
    fn rational_wire_round_trip(x in arb_rat()) {
        let s = rat_to_string(&x);
        prop_assert_eq!(parse_rat(&s).unwrap(), x);
        // reduced form: no "/1" suffix, denominator positive
        prop_assert!(!s.ends_with("/1"));
        prop_assert!(!s.contains("/-"));
    }

    #[test]
    fn pencil_file_round_trip(
        diag0 in prop::collection::vec(-9i64..=9, 4..=6),
        diag1 in prop::collection::vec(-9i64..=9, 4..=6),
    ) {
        let n = diag0.len().min(diag1.len());
        let q0 = SymMat::diagonal_i64(&diag0[..n]);
        let q1 = SymMat::diagonal_i64(&diag1[..n]);
        // skip the degenerate pencils the constructor rejects
        if let Ok(p) = QuadricPencil::new(q0.clone(), q1.clone()) {
            let json = pencil_to_json(&p);
            let back = pencil_from_json(json.as_bytes()).unwrap();
            prop_assert_eq!(back.q0().mat().clone(), q0.mat().clone());
            prop_assert_eq!(back.q1().mat().clone(), q1.mat().clone());
        }
    }

    #[test]
    fn necklace_canonicalization_is_orbit_invariant(
        seq in prop::collection::vec(1usize..=5, 1..=7),
        rot in 0usize..7,
        flip in any::<bool>(),
    ) {
        let canon = canonical_necklace(&seq);
        // canonical form is idempotent
        prop_assert_eq!(canonical_necklace(&canon), canon.clone());
        // and invariant over the dihedral orbit
        let k = seq.len();
        let mut moved: Vec<usize> = (0..k).map(|i| seq[(i + rot % k) % k]).collect();
        if flip {
            moved.reverse();
        }
        prop_assert_eq!(canonical_necklace(&moved), canon.clone());
        // the canonical form is a rotation/reversal of the input
        let mut orbit = Vec::new();
        for s in 0..k {
            let r: Vec<usize> = (0..k).map(|i| seq[(s + i) % k]).collect();
            let mut rev = r.clone();
            rev.reverse();
            orbit.push(r);
            orbit.push(rev);
        }
        prop_assert!(orbit.contains(&canon));
    }

    #[test]
    fn matrix_parse_rejects_ragged(rows in 2usize..4) {
        let mut basis = vec![vec!["1".to_string(); 3]; rows];
        basis[rows - 1].pop();
        let json = serde_json::json!({"r": rows - 1, "basis": basis}).to_string();
        prop_assert!(pencillab::report::subspace_from_json(json.as_bytes()).is_err());
    }
}

#[test]
fn symmetric_matrix_required_by_pencil_file() {
    let json = serde_json::json!({
        "N": 2,
        "q0": [["0","1","0"],["0","0","0"],["0","0","1"]],
        "q1": [["1","0","0"],["0","1","0"],["0","0","2"]],
    })
    .to_string();
    assert!(pencil_from_json(json.as_bytes()).is_err());
    let _ = Mat::identity(2);
}
