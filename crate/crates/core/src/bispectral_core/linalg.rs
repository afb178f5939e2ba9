//! Small dense linear algebra over ℚ(i).

use alloc::vec::Vec;

use crate::exactfield::Gq;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Gq>>, ncols: usize) -> (Vec<Vec<Gq>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Gq>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{v : M v = 0}` for the `rows × ncols` matrix `M`, one vector per
/// free column, in column order.
pub fn nullspace(rows: Vec<Vec<Gq>>, ncols: usize) -> Vec<Vec<Gq>> {
    let (r, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Gq::zero(); ncols];
        v[free] = Gq::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn row(v: &[i64]) -> Vec<Gq> {
        v.iter().map(|&c| Gq::from_int(c)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(m.clone(), 3), 2);
        let ns = nullspace(m.clone(), 3);
        assert_eq!(ns.len(), 1);
        for r in &m {
            let dot = r.iter().zip(&ns[0]).fold(Gq::zero(), |a, (x, y)| &a + &(x * y));
            assert!(dot.is_zero());
        }
    }
}
