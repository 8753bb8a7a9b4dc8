use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Every intermediate value is itself a minor, so the divisions
/// are exact.
pub fn integer_determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "matrix must be square");
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `|det|` of the matrix with row `drop_row` and column `drop_col` removed,
/// saturated to `u64::MAX`.
pub fn abs_minor(matrix: &[Vec<i64>], drop_row: usize, drop_col: usize) -> u64 {
    let minor: Vec<Vec<i64>> = matrix
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != drop_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != drop_col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    integer_determinant(&minor).abs().to_u64().unwrap_or(u64::MAX)
}
