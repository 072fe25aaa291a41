//! Small dense linear algebra over any [`Field`].

use super::Field;

pub fn dot<S: Field>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn cross<S: Field>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn det2<S: Field>(a: &S, b: &S, c: &S, d: &S) -> S {
    a.clone() * d.clone() - b.clone() * c.clone()
}

pub fn det3<S: Field>(m: &[[S; 3]; 3]) -> S {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Determinant of the 3×3 matrix whose rows are `a`, `b`, `c`.
pub fn det3_rows<S: Field>(a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> S {
    dot(a, &cross(b, c))
}

pub fn det4<S: Field>(rows: &[[S; 4]; 4]) -> S {
    let cof = cofactor_row(&rows[1], &rows[2], &rows[3]);
    dot(&rows[0], &cof)
}

/// The vector `n` with `n · x = det[x; a; b; c]` for every `x`: orthogonal to
/// `a`, `b`, `c`, and zero iff they are dependent.
pub fn cofactor_row<S: Field>(a: &[S; 4], b: &[S; 4], c: &[S; 4]) -> [S; 4] {
    let minor = |skip: usize| -> S {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let m = [
            [a[cols[0]].clone(), a[cols[1]].clone(), a[cols[2]].clone()],
            [b[cols[0]].clone(), b[cols[1]].clone(), b[cols[2]].clone()],
            [c[cols[0]].clone(), c[cols[1]].clone(), c[cols[2]].clone()],
        ];
        det3(&m)
    };
    [minor(0), -minor(1), minor(2), -minor(3)]
}

pub fn mat_vec3<S: Field>(m: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn transpose3<S: Field>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mat_mul3<S: Field>(a: &[[S; 3]; 3], b: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

/// Adjugate (transpose of the cofactor matrix); `m · adj(m) = det(m) · I`.
pub fn adjugate3<S: Field>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    // Columns of the adjugate are cross products of pairs of rows.
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    std::array::from_fn(|i| [c0[i].clone(), c1[i].clone(), c2[i].clone()])
}

pub fn is_zero_vec<S: Field>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Basis of the right null space of `rows` (each of length `n`), computed by
/// Gauss–Jordan elimination. Approximate backends pivot on the largest
/// magnitude and treat entries below the default tolerance, relative to the
/// largest input entry, as zero.
pub fn null_space<S: Field>(rows: &[Vec<S>], n: usize) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.to_f64().abs()))
        .max(f64::MIN_POSITIVE);
    let tol = super::Tolerance::default();
    let negligible = |x: &S| x.is_zero_within(&tol, scale);

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        let pivot = if S::EXACT {
            (r..a.len()).find(|&i| !a[i][col].is_zero())
        } else {
            (r..a.len())
                .filter(|&i| !negligible(&a[i][col]))
                .max_by(|&i, &j| {
                    a[i][col]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[j][col].to_f64().abs())
                })
        };
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let lead = a[r][col].clone();
        for j in 0..n {
            a[r][j] = a[r][j].clone() / lead.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let delta = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let m = [[r(2), r(1), r(0)], [r(0), r(3), r(1)], [r(1), r(0), r(1)]];
        let prod = mat_mul3(&m, &adjugate3(&m));
        let d = det3(&m);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { d.clone() } else { r(0) };
                assert_eq!(*x, expect);
            }
        }
    }

    #[test]
    fn cofactor_row_is_orthogonal() {
        let a = [r(1), r(2), r(3), r(4)];
        let b = [r(0), r(1), r(-1), r(2)];
        let c = [r(5), r(0), r(1), r(1)];
        let n = cofactor_row(&a, &b, &c);
        assert!(dot(&n, &a).is_zero());
        assert!(dot(&n, &b).is_zero());
        assert!(dot(&n, &c).is_zero());
        let x = [r(1), r(0), r(0), r(0)];
        assert_eq!(dot(&n, &x), det4(&[x.clone(), a, b, c]));
    }

    #[test]
    fn null_space_rank_deficient() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn null_space_float() {
        let rows = vec![vec![1.0, 1.0, -1.0], vec![0.0, 1.0, 0.5]];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 1);
        assert!(dot(&rows[0], &ns[0]).abs() < 1e-12);
        assert!(dot(&rows[1], &ns[0]).abs() < 1e-12);
    }
}
