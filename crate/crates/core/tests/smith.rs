use moore_core::{smith_normal_form, BigInt, IntMatrix, SmithForm};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrices(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix<BigInt> {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
}

/// Laplace expansion, kept separate from the library determinant.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `d₁ ⋯ d_k` is the gcd of all `k × k` minors.
fn determinantal_divisors(rows: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (rows.len(), rows[0].len());
    (1..=r.min(c))
        .map(|k| {
            let mut g = 0;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let minor: Vec<Vec<i128>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                    g = gcd(g, det(&minor));
                }
            }
            g
        })
        .collect()
}

fn check_form(rows: &[Vec<i64>]) {
    let m = to_matrix(rows);
    let s = SmithForm::compute(&m);
    assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
    assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
    assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
    assert_eq!(s.u.determinant().unwrap().abs(), BigInt::from(1));
    assert_eq!(s.v.determinant().unwrap().abs(), BigInt::from(1));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        assert!(!w[0].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "{diag:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unimodular_diagonalization(rows in matrices(7, 60)) {
        check_form(&rows);
    }

    #[test]
    fn diagonal_matches_determinantal_divisors(rows in matrices(4, 12)) {
        let s = SmithForm::compute(&to_matrix(&rows));
        let dd = determinantal_divisors(&rows);
        let mut prod = 1i128;
        for (k, d) in s.diagonal().iter().enumerate() {
            prod *= i128::try_from(d.clone()).unwrap();
            prop_assert_eq!(prod, dd[k]);
        }
    }

    #[test]
    fn fixed_width_is_exact_or_fails(rows in matrices(5, 30)) {
        // transforms may outgrow i64; that must abort, never wrap
        let m = to_matrix(&rows);
        let small: IntMatrix<i64> = m.convert();
        match std::panic::catch_unwind(|| smith_normal_form(&small)) {
            Ok((_, d, _)) => prop_assert_eq!(d.convert::<BigInt>(), SmithForm::compute(&m).d),
            Err(e) => {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                prop_assert_eq!(msg.as_deref(), Some(moore_core::scalar::OVERFLOW_MESSAGE));
            }
        }
    }

    #[test]
    fn fixed_width_small_entries_agree(rows in matrices(4, 6)) {
        let m = to_matrix(&rows);
        let (_, d, _) = smith_normal_form(&m.convert::<i64>());
        prop_assert_eq!(d.convert::<BigInt>(), SmithForm::compute(&m).d);
    }
}

#[test]
fn known_forms() {
    let (_, d, _) = smith_normal_form(&IntMatrix::<i64>::from_i64_rows(&[&[2, 4], &[6, 8]]));
    assert_eq!(d, IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]));
    let (_, d, _) = smith_normal_form(&IntMatrix::<i64>::from_i64_rows(&[&[0]]));
    assert_eq!(d, IntMatrix::from_i64_rows(&[&[0]]));
    check_form(&[vec![0, 0, 0], vec![0, 0, 0]]);
    check_form(&[vec![i64::from(i32::MAX), 1], vec![1, i64::from(i32::MAX)]]);
}
