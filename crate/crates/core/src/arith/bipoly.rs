use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Ring;
use super::poly::{format_terms, power_name, CoeffFormat, UniPoly};

/// Sparse bivariate polynomial. The key `(i, j)` is the exponent of the
/// first variable (`x`) and of the second (`y` or `z`). No zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly<T> {
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Ring> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: (usize, usize), c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    /// `Σ_j coeffs[j](x) * y^j`
    pub fn from_y_coeffs(coeffs: &[UniPoly<T>]) -> Self {
        let mut p = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                p.add_term((i, j), a.clone());
            }
        }
        p
    }

    /// `a(x) * b(y)`
    pub fn product_of(a: &UniPoly<T>, b: &UniPoly<T>) -> Self {
        let mut p = Self::zero();
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                p.add_term((i, j), x.clone() * y);
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coeff(&self, j: usize) -> UniPoly<T> {
        let mut cs = Vec::new();
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                if cs.len() <= i {
                    cs.resize(i + 1, T::zero());
                }
                cs[i] = c.clone();
            }
        }
        UniPoly::new(cs)
    }

    /// Coefficients in `y`, each a polynomial in `x`.
    pub fn y_coeffs(&self) -> Vec<UniPoly<T>> {
        match self.degree_y() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|j| self.y_coeff(j)).collect(),
        }
    }

    /// Coefficient of `x^i` as a polynomial in `y`.
    pub fn x_coeff(&self, i: usize) -> UniPoly<T> {
        let mut cs = Vec::new();
        for (&(ii, j), c) in &self.terms {
            if ii == i {
                if cs.len() <= j {
                    cs.resize(j + 1, T::zero());
                }
                cs[j] = c.clone();
            }
        }
        UniPoly::new(cs)
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.y_coeffs()
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * y + &c.eval(x))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.clone() * c)))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        BiPoly::from_terms(self.terms.iter().map(|(e, a)| (*e, f(a))))
    }
}

impl<T: Ring + CoeffFormat> BiPoly<T> {
    pub fn format_vars(&self, x: &str, y: &str) -> String {
        let names: Vec<(&T, String)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mono = match (power_name(x, i), power_name(y, j)) {
                    (a, b) if a.is_empty() => b,
                    (a, b) if b.is_empty() => a,
                    (a, b) => format!("{a}*{b}"),
                };
                (c, mono)
            })
            .collect();
        format_terms(names.iter().map(|(c, m)| (*c, m.clone())))
    }
}

impl<T: Ring> Add<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Ring> Sub<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Ring> Mul<&BiPoly<T>> for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a.clone() * b);
            }
        }
        out
    }
}

impl<T: Ring> Neg for BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        BiPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Ring> $tr<BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $method(self, rhs: BiPoly<T>) -> BiPoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Ring> $tr<&'a BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $method(self, rhs: &'a BiPoly<T>) -> BiPoly<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Zero for BiPoly<T> {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Ring> One for BiPoly<T> {
    fn one() -> Self {
        BiPoly::from_terms([((0, 0), T::one())])
    }
}

impl<T: Ring> Ring for BiPoly<T> {
    fn from_bigint(value: &BigInt) -> Self {
        BiPoly::from_terms([((0, 0), T::from_bigint(value))])
    }
}
