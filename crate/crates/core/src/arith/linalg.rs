//! Exact linear algebra over fields and over Q[z].

use num_integer::Integer;
use num_traits::One;

use super::cyclotomic::{rational_mod, CyclotomicNumber};
use super::field::{Field, Rational};
use super::ntheory::{factorize, inv_mod, is_prime, mul_mod, pow_mod};
use super::poly::UniPoly;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut().skip(c) {
            *v = v.clone() * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel of a `rows × cols` matrix.
///
/// Vectors come ordered by their free column; the vector for free column
/// `f` is supported on columns `<= f` and has a 1 at `f`, so the first
/// vector is, up to scaling, the unique kernel element whose last nonzero
/// coordinate is as early as possible.
pub fn nullspace<F: Field>(matrix: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut rows: Vec<Vec<F>> = matrix.to_vec();
    let pivots = rref(&mut rows, cols);
    let mut is_pivot = vec![None; cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (i, &c) in pivots.iter().enumerate() {
                if c < f {
                    v[c] = -rows[i][f].clone();
                }
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(matrix: &[Vec<F>], cols: usize) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows, cols).len()
}

pub fn mat_vec<F: Field>(matrix: &[Vec<F>], v: &[F]) -> Vec<F> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
        })
        .collect()
}

/// Field elements with ring homomorphisms into prime fields.
pub trait ModImage {
    /// Smallest `s` such that the value lies in Q(ζ_s).
    fn cyclotomic_order(&self) -> u64;
    /// Image under ζ_{big_order} -> `root` in F_p, `None` if a denominator
    /// vanishes mod `p`.
    fn image(&self, p: u64, big_order: u64, root: u64) -> Option<u64>;
}

impl ModImage for Rational {
    fn cyclotomic_order(&self) -> u64 {
        1
    }
    fn image(&self, p: u64, _: u64, _: u64) -> Option<u64> {
        rational_mod(self, p)
    }
}

impl ModImage for CyclotomicNumber {
    fn cyclotomic_order(&self) -> u64 {
        self.order()
    }
    fn image(&self, p: u64, big_order: u64, root: u64) -> Option<u64> {
        self.reduce_mod(p, big_order, root)
    }
}

/// Prime `p ≡ 1 (mod s)` below 2^62 together with an element of
/// multiplicative order exactly `s`.
struct PrimeContext {
    p: u64,
    root: u64,
}

fn prime_contexts(s: u64, count: usize) -> Vec<PrimeContext> {
    let factors: Vec<u64> = factorize(s).into_iter().map(|(q, _)| q).collect();
    let mut out = Vec::new();
    let mut t = (1u64 << 62) / s;
    while out.len() < count && t > 0 {
        let p = 1 + s * t;
        t -= 1;
        if !is_prime(p) {
            continue;
        }
        let cofactor = (p - 1) / s;
        let root = (2..).map(|g| pow_mod(g, cofactor, p)).find(|&w| {
            w != 0 && factors.iter().all(|&q| pow_mod(w, s / q, p) != 1) && pow_mod(w, s, p) == 1
        });
        if let Some(root) = root {
            out.push(PrimeContext { p, root });
        }
    }
    out
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p).expect("nonzero pivot");
        for v in rows[r].iter_mut().skip(c) {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v = (*v + p - mul_mod(f, *pv, p)) % p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// One-sided certificate of full column rank: reduction modulo a prime is
/// a ring homomorphism, so a nonzero maximal minor mod `p` is nonzero over
/// the field. `false` means only that no tried prime certified it.
pub fn certifies_full_column_rank<F: ModImage>(matrix: &[Vec<F>], cols: usize) -> bool {
    if matrix.len() < cols {
        return false;
    }
    let s = matrix
        .iter()
        .flatten()
        .map(ModImage::cyclotomic_order)
        .fold(1u64, |acc, o| acc.lcm(&o));
    for ctx in prime_contexts(s, 3) {
        let image: Option<Vec<Vec<u64>>> = matrix
            .iter()
            .map(|row| row.iter().map(|v| v.image(ctx.p, s, ctx.root)).collect())
            .collect();
        if let Some(image) = image {
            if rank_mod_p(image, cols, ctx.p) == cols {
                return true;
            }
        }
    }
    false
}

/// Determinant of a square matrix over Q[z] by fraction-free (Bareiss)
/// elimination.
pub fn poly_det(matrix: &[Vec<UniPoly<Rational>>]) -> UniPoly<Rational> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return UniPoly::one();
    }
    let mut m: Vec<Vec<UniPoly<Rational>>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = UniPoly::<Rational>::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    fn zpoly(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&q(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert!(certifies_full_column_rank(&q(&[&[1, 0], &[0, 1]]), 2));
    }

    #[test]
    fn single_row_kernel() {
        let ns = nullspace(&q(&[&[1, 1]]), 2);
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn rank_three_of_five_columns() {
        let m = q(&[&[1, 2, 0, 3, -1], &[0, 1, 4, 1, 2], &[2, 5, 4, 7, 0]]);
        // third row = 2*first + second: rank 2, so 3 kernel vectors
        let ns = nullspace(&m, 5);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
        let m = q(&[&[1, 2, 0, 3, -1], &[0, 1, 4, 1, 2], &[2, 5, 5, 7, 0]]);
        let ns = nullspace(&m, 5);
        assert_eq!(ns.len(), 2);
        assert_eq!(rank(&m, 5) + ns.len(), 5);
        for v in &ns {
            assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
        assert!(!certifies_full_column_rank(&m, 5));
    }

    #[test]
    fn determinants() {
        let x = zpoly(&[0, 1]);
        assert_eq!(
            poly_det(&[
                vec![x.clone(), UniPoly::zero()],
                vec![UniPoly::zero(), x.clone()]
            ]),
            zpoly(&[0, 0, 1])
        );
        let z2 = zpoly(&[0, 0, 1]);
        assert_eq!(
            poly_det(&[vec![UniPoly::one(), UniPoly::one()], vec![x, z2]]),
            zpoly(&[0, -1, 1])
        );
        // pivoting path: [[0,1],[1,0]] has determinant -1
        assert_eq!(
            poly_det(&[
                vec![UniPoly::zero(), UniPoly::one()],
                vec![UniPoly::one(), UniPoly::zero()]
            ]),
            zpoly(&[-1])
        );
    }

    #[test]
    fn cyclotomic_full_rank_certificate() {
        let i = CyclotomicNumber::zeta(4);
        let one = CyclotomicNumber::one();
        // [[1, i], [i, -1]] is singular; [[1, i], [i, 1]] is not
        let sing = vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]];
        let reg = vec![vec![one.clone(), i.clone()], vec![i.clone(), one.clone()]];
        assert!(!certifies_full_column_rank(&sing, 2));
        assert!(certifies_full_column_rank(&reg, 2));
        assert_eq!(nullspace(&sing, 2).len(), 1);
    }
}
