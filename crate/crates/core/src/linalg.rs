//! Exact rational linear algebra for the small square systems that appear when
//! solving for lattice points and simplex corners.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Solves `A x = b` over the rationals by Gauss-Jordan elimination.
/// Returns `None` when `A` is singular.
pub fn solve(matrix: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Rational64>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right-hand side length");
    let mut aug: Vec<Vec<Rational64>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter()
                .map(|&x| Rational64::from_integer(x))
                .chain(std::iter::once(Rational64::from_integer(b)))
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = Rational64::one() / aug[col][col];
        for x in aug[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col];
                let (src, dst) = if r < col {
                    let (lo, hi) = aug.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = aug.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= factor * s;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n]).collect())
}

/// Returns the integer vector if every entry is integral.
pub fn to_integers(x: &[Rational64]) -> Option<Vec<i64>> {
    x.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}
