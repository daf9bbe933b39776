//! Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rat;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns.
fn rref(rows: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::from_integer(1.into()) / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves the square system `a·x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// A basis of the right kernel of `rows` (each row of length `ncols`).
pub fn kernel(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::from_integer(1.into());
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let b = vec![int(3), int(5)];
        assert_eq!(solve(&a, &b), Some(vec![rat(4, 5), rat(7, 5)]));
    }

    #[test]
    fn singular_system_has_no_solution() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(&a, &[int(1), int(2)]), None);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = vec![vec![int(1), int(1), int(1)]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Rat = v.iter().sum();
            assert!(s.is_zero());
        }
    }
}
