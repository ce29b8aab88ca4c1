//! Exact linear algebra over the rationals for the small matrices that
//! appear in edge polytope computations.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i128>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x -= p * f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    rref(&mut to_rational(rows)).len()
}

/// Integer basis of the right kernel `{x : M x = 0}`, each vector primitive.
pub fn kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m = to_rational(rows);
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f];
            }
            primitive_from_rational(&x)
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector pointing the
/// same way.
pub fn primitive_from_rational(x: &[Q]) -> Vec<i64> {
    let lcm = x.iter().fold(1i128, |l, q| l.lcm(q.denom()));
    let ints: Vec<i128> = x.iter().map(|q| q.numer() * (lcm / q.denom())).collect();
    primitive(&ints)
}

/// Divides by the gcd of the entries (no-op for the zero vector).
pub fn primitive(x: &[i128]) -> Vec<i64> {
    let g = x.iter().fold(0i128, |g, v| g.gcd(v));
    x.iter()
        .map(|&v| {
            let v = if g == 0 { v } else { v / g };
            i64::try_from(v).expect("coefficient overflow in primitive normalisation")
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, v| g.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, -1]];
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            assert_eq!(dot(row, &k[0]), 0);
        }
        assert_eq!(gcd_all(&k[0]), 1);
    }

    #[test]
    fn primitive_scales_fractions() {
        let x = [Q::new(1, 2), Q::new(-3, 4), Q::zero()];
        assert_eq!(primitive_from_rational(&x), vec![2, -3, 0]);
    }
}
