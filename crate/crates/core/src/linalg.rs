//! Exact solution of overdetermined integer linear systems.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a
//! minor of the augmented matrix, so each update divides exactly and no
//! rationals appear until back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<BigRational>),
    Underdetermined { rank: usize },
    Inconsistent,
}

/// Row echelon form of an augmented matrix with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

/// Fraction-free row reduction of `[a | b]`. Pivots are taken only from
/// the coefficient columns.
pub fn bareiss_echelon(a: &[Vec<BigInt>], b: &[BigInt]) -> Echelon {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, found);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in (c + 1)..=n {
                let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots }
}

/// Solves `a x = b` exactly, classifying the system.
pub fn solve_exact(a: &[Vec<BigInt>], b: &[BigInt]) -> Solve {
    let n = a.first().map_or(0, Vec::len);
    let Echelon { rows, pivots } = bareiss_echelon(a, b);
    let rank = pivots.len();
    if rows[rank..].iter().any(|row| !row[n].is_zero()) {
        return Solve::Inconsistent;
    }
    if rank < n {
        return Solve::Underdetermined { rank };
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..rank).rev() {
        let c = pivots[i];
        let row = &rows[i];
        let mut acc = BigRational::from_integer(row[n].clone());
        for j in (c + 1)..n {
            acc -= BigRational::from_integer(row[j].clone()) * &x[j];
        }
        x[c] = acc / BigRational::from_integer(row[c].clone());
    }
    Solve::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn vecb(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_system_with_fractions() {
        // 2x + y = 1, x + 3y = 2  →  x = 1/5, y = 3/5
        let s = solve_exact(&mat(&[&[2, 1], &[1, 3]]), &vecb(&[1, 2]));
        assert_eq!(s, Solve::Unique(vec![rat(1, 5), rat(3, 5)]));
    }

    #[test]
    fn overdetermined_consistent() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0], &[0, 2], &[3, 1]]);
        let b = vecb(&[3, -1, 2, 4, 5]);
        assert_eq!(
            solve_exact(&a, &b),
            Solve::Unique(vec![rat(1, 1), rat(2, 1)])
        );
    }

    #[test]
    fn detects_inconsistency_and_rank_loss() {
        let a = mat(&[&[1, 1], &[2, 2], &[1, 1]]);
        assert_eq!(solve_exact(&a, &vecb(&[1, 2, 3])), Solve::Inconsistent);
        assert_eq!(
            solve_exact(&a, &vecb(&[1, 2, 1])),
            Solve::Underdetermined { rank: 1 }
        );
    }

    #[test]
    fn zero_leading_column_is_skipped() {
        let a = mat(&[&[0, 1, 2], &[0, 2, 1], &[0, 1, 1]]);
        assert_eq!(
            solve_exact(&a, &vecb(&[3, 3, 2])),
            Solve::Underdetermined { rank: 2 }
        );
    }

    #[test]
    fn agrees_with_rational_gauss_on_random_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..5);
            let m = n + rng.gen_range(0..3);
            let a: Vec<Vec<BigInt>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-6..=6)))
                        .collect()
                })
                .collect();
            let x_true: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-9..=9)))
                .collect();
            let b: Vec<BigInt> = a
                .iter()
                .map(|row| row.iter().zip(&x_true).map(|(p, q)| p * q).sum())
                .collect();
            match solve_exact(&a, &b) {
                Solve::Unique(x) => {
                    let want: Vec<_> = x_true
                        .iter()
                        .cloned()
                        .map(BigRational::from_integer)
                        .collect();
                    assert_eq!(x, want);
                }
                Solve::Underdetermined { rank } => assert!(rank < n),
                Solve::Inconsistent => panic!("constructed system is consistent"),
            }
        }
    }
}
