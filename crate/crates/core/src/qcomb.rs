//! q-integers, Gaussian binomial coefficients and the lattice-path area
//! statistic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{CyclotomicNumber, Rational, UniPoly};
use crate::error::{Error, Result};

/// Largest `x + y` that [`path_area_distribution`] enumerates by default.
pub const PATH_ENUMERATION_CAP: usize = 20;

/// `1 + q + ... + q^{n-1}`; zero for `n = 0`.
pub fn q_int(n: i64) -> Result<UniPoly<BigInt>> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "q-integer of negative n = {n}"
        )));
    }
    Ok(UniPoly::new(vec![BigInt::one(); n as usize]))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_range(n: i64, k: i64) -> Result<()> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "q-binomial requires 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Memoized q-Pascal triangle: `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
#[derive(Debug, Default, Clone)]
pub struct QBinomialTable {
    rows: Vec<Vec<UniPoly<BigInt>>>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        QBinomialTable {
            rows: vec![vec![UniPoly::one()]],
        }
    }

    fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("row 0 exists");
            let m = prev.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(UniPoly::one());
            for k in 1..m {
                row.push(&prev[k - 1] + &prev[k].shift(k));
            }
            row.push(UniPoly::one());
            self.rows.push(row);
        }
    }

    pub fn get(&mut self, n: i64, k: i64) -> Result<&UniPoly<BigInt>> {
        check_range(n, k)?;
        self.extend_to(n as usize);
        Ok(&self.rows[n as usize][k as usize])
    }
}

/// The Gaussian binomial `[n choose k]_q` as an integer polynomial of
/// degree `k(n-k)`.
pub fn q_binomial(n: i64, k: i64) -> Result<UniPoly<BigInt>> {
    check_range(n, k)?;
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // Row-by-row, keeping only columns 0..=k.
    let mut row: Vec<UniPoly<BigInt>> = vec![UniPoly::one()];
    for m in 1..=n {
        let width = (m + 1).min(k + 1);
        let mut next = Vec::with_capacity(width);
        next.push(UniPoly::one());
        for j in 1..width {
            let stay = row.get(j).map(|p| p.shift(j)).unwrap_or_else(UniPoly::zero);
            next.push(&row[j - 1] + &stay);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

fn to_cyc(v: &BigInt) -> CyclotomicNumber {
    use crate::arith::Ring;
    CyclotomicNumber::from_bigint(v)
}

fn horner(p: &UniPoly<BigInt>, q: &CyclotomicNumber) -> CyclotomicNumber {
    p.coeffs()
        .iter()
        .rev()
        .fold(CyclotomicNumber::zero(), |acc, c| &(&acc * q) + &to_cyc(c))
}

/// Evaluates `[n choose k]_q` for a fixed `q`, reusing powers of `q` and
/// the root-of-unity classification across calls.
#[derive(Debug, Clone)]
pub struct QEvaluator {
    q: CyclotomicNumber,
    root_order: Option<u64>,
    powers: Vec<CyclotomicNumber>,
    residual: QBinomialTable,
}

impl QEvaluator {
    pub fn new(q: &CyclotomicNumber) -> Result<Self> {
        let root_order = q.root_of_unity_order()?;
        Ok(QEvaluator {
            q: q.clone(),
            root_order,
            powers: vec![CyclotomicNumber::one()],
            residual: QBinomialTable::new(),
        })
    }

    pub fn q(&self) -> &CyclotomicNumber {
        &self.q
    }

    pub fn root_order(&self) -> Option<u64> {
        self.root_order
    }

    fn power(&mut self, e: usize) -> &CyclotomicNumber {
        while self.powers.len() <= e {
            let next = self.powers.last().expect("q^0 cached") * &self.q;
            self.powers.push(next);
        }
        &self.powers[e]
    }

    pub fn eval(&mut self, n: i64, k: i64) -> Result<CyclotomicNumber> {
        check_range(n, k)?;
        match self.root_order {
            Some(s) => Ok(self.lucas(n as u64, k as u64, s)),
            None => self.product_formula(n as usize, k as usize),
        }
    }

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::from_rational_in(self.q.order(), Rational::zero())
    }

    fn lucas(&mut self, x: u64, y: u64, s: u64) -> CyclotomicNumber {
        let outer = binomial(x / s, y / s);
        if outer.is_zero() {
            return self.zero();
        }
        let (xr, yr) = ((x % s) as i64, (y % s) as i64);
        if yr > xr {
            return self.zero();
        }
        let poly = self.residual.get(xr, yr).expect("range checked").clone();
        &to_cyc(&outer) * &horner(&poly, &self.q)
    }

    /// `Π_{i=1}^{k} (q^{n-k+i} - 1) / (q^i - 1)`; no factor vanishes when q
    /// is not a root of unity.
    fn product_formula(&mut self, n: usize, k: usize) -> Result<CyclotomicNumber> {
        let k = k.min(n - k);
        let one = CyclotomicNumber::one();
        let mut num = CyclotomicNumber::one();
        let mut den = CyclotomicNumber::one();
        for i in 1..=k {
            num = &num * &(self.power(n - k + i) - &one);
            den = &den * &(self.power(i) - &one);
        }
        Ok(&num * &den.try_inv()?)
    }
}

/// `[n choose k]_q` evaluated at `q`.
pub fn q_binomial_eval(n: i64, k: i64, q: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    QEvaluator::new(q)?.eval(n, k)
}

/// q-Lucas: for ω of order s, `[x, y]_ω = C(⌊x/s⌋, ⌊y/s⌋) · [x mod s, y mod s]_ω`,
/// the residual factor being 0 when `y mod s > x mod s`.
pub fn q_lucas_eval(x: i64, y: i64, omega: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    if x < 0 || y < 0 {
        return Err(Error::InvalidArgument(format!(
            "q-Lucas evaluation needs non-negative arguments, got ({x}, {y})"
        )));
    }
    let s = omega.root_of_unity_order()?.ok_or(Error::NotRootOfUnity)?;
    let mut ev = QEvaluator::new(omega)?;
    Ok(ev.lucas(x as u64, y as u64, s))
}

/// Area generating polynomial of North/East lattice paths to `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDistribution {
    pub endpoint: (usize, usize),
    /// Coefficient of `q^j` counts the paths with area `j`.
    pub distribution: UniPoly<BigInt>,
}

pub fn path_area_distribution(x: usize, y: usize) -> Result<AreaDistribution> {
    path_area_distribution_capped(x, y, PATH_ENUMERATION_CAP)
}

/// Exhaustive enumeration. The area of a path is the sum, over its East
/// steps, of the number of North steps taken before it.
pub fn path_area_distribution_capped(x: usize, y: usize, cap: usize) -> Result<AreaDistribution> {
    if x + y > cap {
        return Err(Error::CapExceeded {
            what: "x + y",
            value: x + y,
            cap,
        });
    }
    let mut counts = vec![0u64; x * y + 1];
    enumerate_paths(x, y, 0, 0, &mut counts);
    Ok(AreaDistribution {
        endpoint: (x, y),
        distribution: UniPoly::new(counts.into_iter().map(BigInt::from).collect()),
    })
}

fn enumerate_paths(
    east_left: usize,
    north_left: usize,
    height: usize,
    area: usize,
    counts: &mut [u64],
) {
    if east_left == 0 && north_left == 0 {
        counts[area] += 1;
        return;
    }
    if east_left > 0 {
        enumerate_paths(east_left - 1, north_left, height, area + height, counts);
    }
    if north_left > 0 {
        enumerate_paths(east_left, north_left - 1, height + 1, area, counts);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Ring;

    fn ip(cs: &[i64]) -> UniPoly<BigInt> {
        UniPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn q_integers() {
        assert!(q_int(0).unwrap().is_zero());
        assert_eq!(q_int(1).unwrap(), ip(&[1]));
        assert_eq!(q_int(3).unwrap(), ip(&[1, 1, 1]));
        assert!(q_int(-1).is_err());
    }

    #[test]
    fn small_q_binomials() {
        assert_eq!(q_binomial(2, 1).unwrap(), ip(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), ip(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 0).unwrap(), ip(&[1]));
        assert!(q_binomial(3, 4).is_err());
        assert!(q_binomial(3, -1).is_err());
    }

    #[test]
    fn degree_symmetry_and_value_at_one() {
        let mut table = QBinomialTable::new();
        for n in 0..=30i64 {
            for k in 0..=n {
                let p = table.get(n, k).unwrap().clone();
                let d = (k * (n - k)) as usize;
                assert_eq!(p.degree(), Some(d));
                let cs = p.coeffs();
                for i in 0..=d {
                    assert_eq!(cs[i], cs[d - i]);
                }
                assert_eq!(p.eval(&BigInt::one()), binomial(n as u64, k as u64));
                if n <= 20 {
                    assert!(cs.iter().all(|c| c > &BigInt::zero()));
                }
            }
        }
    }

    #[test]
    fn table_and_direct_agree() {
        let mut table = QBinomialTable::new();
        for n in 0..=14 {
            for k in 0..=n {
                assert_eq!(table.get(n, k).unwrap(), &q_binomial(n, k).unwrap());
            }
        }
    }

    #[test]
    fn evaluations() {
        let two = CyclotomicNumber::from_int(2);
        assert_eq!(
            q_binomial_eval(2, 1, &two).unwrap(),
            CyclotomicNumber::from_int(3)
        );
        assert_eq!(
            q_binomial_eval(4, 2, &two).unwrap(),
            CyclotomicNumber::from_int(35)
        );
        let m1 = CyclotomicNumber::from_int(-1);
        assert_eq!(
            q_binomial_eval(4, 2, &m1).unwrap(),
            CyclotomicNumber::from_int(2)
        );
    }

    #[test]
    fn lucas_examples() {
        let m1 = CyclotomicNumber::from_int(-1);
        assert!(q_lucas_eval(2, 1, &m1).unwrap().is_zero());
        assert_eq!(
            q_lucas_eval(4, 2, &m1).unwrap(),
            CyclotomicNumber::from_int(2)
        );
        let one = CyclotomicNumber::one();
        for (x, y) in [(7, 3), (10, 5), (3, 7)] {
            assert_eq!(
                q_lucas_eval(x, y, &one).unwrap(),
                CyclotomicNumber::from_bigint(&binomial(x as u64, y as u64))
            );
        }
        assert_eq!(
            q_lucas_eval(3, 1, &CyclotomicNumber::from_int(2)),
            Err(Error::NotRootOfUnity)
        );
    }

    #[test]
    fn lucas_matches_horner_at_small_orders() {
        let mut table = QBinomialTable::new();
        for s in [3u64, 4] {
            let w = CyclotomicNumber::zeta(s);
            for x in 0..=12i64 {
                for y in 0..=x {
                    let direct = horner(table.get(x, y).unwrap(), &w);
                    assert_eq!(q_lucas_eval(x, y, &w).unwrap(), direct, "s={s} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn path_examples() {
        assert_eq!(path_area_distribution(0, 0).unwrap().distribution, ip(&[1]));
        assert_eq!(
            path_area_distribution(1, 1).unwrap().distribution,
            ip(&[1, 1])
        );
        assert_eq!(
            path_area_distribution(2, 2).unwrap().distribution,
            ip(&[1, 1, 2, 1, 1])
        );
        assert!(matches!(
            path_area_distribution(11, 10),
            Err(Error::CapExceeded { cap: 20, .. })
        ));
    }

    #[test]
    fn distribution_sums_to_binomial() {
        for x in 0..=6 {
            for y in 0..=6 {
                let d = path_area_distribution(x, y).unwrap().distribution;
                assert_eq!(d.degree(), Some(x * y));
                assert_eq!(d.eval(&BigInt::one()), binomial((x + y) as u64, x as u64));
            }
        }
    }
}
