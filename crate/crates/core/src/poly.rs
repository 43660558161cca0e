//! Sparse multivariate polynomials over the rationals, and the ordered
//! monomial bases used to coordinatize spline spaces.
//!
//! The monomial order is graded lexicographic. In homogeneous mode the
//! homogenizing variable x0 is stored as the *last* exponent, which gives it
//! the lowest lexicographic priority repo-wide.

use num::{BigRational, One, Zero};
use std::collections::BTreeMap;

/// Exponent vector. Affine polynomials in n variables use length n
/// (x1..xn); homogeneous ones use length n+1 with x0 last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, then lexicographic on exponents
    /// left to right (so x0, stored last, ties last).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
    nvars: usize,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { terms: BTreeMap::new(), nvars }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, BigRational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = Polynomial::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(m.0.len(), self.nvars);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_by_var(&self, i: usize) -> Polynomial {
        self.mul(&Polynomial::monomial(
            self.nvars,
            Monomial::var(self.nvars, i),
            BigRational::one(),
        ))
    }

    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Division with remainder by a single divisor under graded lex. For a
    /// single divisor `g`, `g` divides `self` iff the remainder is zero.
    pub fn div_rem(&self, g: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.nvars, g.nvars);
        let (lt_m, lt_c) = g.leading().expect("division by zero polynomial");
        let mut f = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        let mut rem = Polynomial::zero(self.nvars);
        while let Some((fm, fc)) = f.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lt_m.divides(&fm) {
                let qm = fm.div(lt_m);
                let qc = &fc / lt_c;
                let t = Polynomial::monomial(self.nvars, qm, qc);
                f = f.sub(&t.mul(g));
                quot = quot.add(&t);
            } else {
                rem.add_term(fm.clone(), fc);
                f.terms.remove(&fm);
            }
        }
        (quot, rem)
    }

    pub fn divisible_by(&self, g: &Polynomial) -> bool {
        self.div_rem(g).1.is_zero()
    }

    /// Homogenize with a new last variable so every term has degree `d`.
    pub fn homogenize(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let e = m.total_degree();
            assert!(e <= d, "degree exceeds homogenization target");
            let mut exps = m.0.clone();
            exps.push(d - e);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Set the last variable to 1 and drop it.
    pub fn dehomogenize(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let exps = m.0[..self.nvars - 1].to_vec();
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

/// Whether a degree window is a filtration (deg <= d) or a graded piece
/// (deg = d, used on the homogenized cone).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DegreeMode {
    Filtered,
    Homogeneous,
}

/// Ordered list of monomials coordinatizing polynomials of one degree window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: u32,
    pub mode: DegreeMode,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

fn enumerate_monomials(nvars: usize, degree: u32, exact: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(current: &mut Vec<u32>, pos: usize, remaining: u32, exact: bool, out: &mut Vec<Monomial>) {
        if pos == current.len() {
            if !exact || remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(current, pos + 1, remaining - e, exact, out);
        }
        current[pos] = 0;
    }
    rec(&mut current, 0, degree, exact, &mut out);
    out.sort();
    out
}

impl MonomialBasis {
    /// Basis for polynomials of degree <= d (filtered, `ambient_nvars`
    /// variables) or of degree exactly d (homogeneous, callers pass the
    /// homogenized variable count). The two have the same size; this is the
    /// content of the homogenization bijection and is asserted here.
    pub fn new(nvars: usize, degree: u32, mode: DegreeMode) -> Self {
        let monomials = enumerate_monomials(nvars, degree, mode == DegreeMode::Homogeneous);
        if mode == DegreeMode::Homogeneous {
            let filtered_count = enumerate_monomials(nvars - 1, degree, false).len();
            assert_eq!(monomials.len(), filtered_count, "homogenization bijection size");
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis { nvars, degree, mode, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p` over this basis; `None` if `p` does not fit the
    /// window (degree too high, or inhomogeneous in homogeneous mode).
    pub fn coords(&self, p: &Polynomial) -> Option<Vec<BigRational>> {
        if p.nvars() != self.nvars {
            return None;
        }
        let mut v = vec![BigRational::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            let i = self.index_of(m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn poly_from_coords(&self, coords: &[BigRational]) -> Polynomial {
        assert_eq!(coords.len(), self.monomials.len());
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in self.monomials.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// Number of monomials of degree <= d in n variables: C(d+n, n).
pub fn filtered_dim(nvars: usize, d: u32) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=nvars as u128 {
        num *= d as u128 + i;
        den *= i;
    }
    (num / den) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    fn p_x_plus_1() -> Polynomial {
        // x1 + 1 in two variables.
        let mut p = Polynomial::zero(2);
        p.add_term(Monomial(vec![1, 0]), qr(1));
        p.add_term(Monomial(vec![0, 0]), qr(1));
        p
    }

    #[test]
    fn grlex_order_with_trailing_variable_last() {
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let one = Monomial(vec![0, 0]);
        assert!(one < y && y < x);
        let x2 = Monomial(vec![2, 0]);
        assert!(x < x2);
    }

    #[test]
    fn division_by_linear_power() {
        let l = p_x_plus_1();
        let f = l.pow(3);
        assert!(f.divisible_by(&l.pow(2)));
        assert!(f.divisible_by(&l.pow(3)));
        assert!(!f.divisible_by(&l.pow(4)));
        let (q, r) = f.div_rem(&l);
        assert!(r.is_zero());
        assert_eq!(q, l.pow(2));
    }

    #[test]
    fn division_nonexact_leaves_remainder() {
        let l = p_x_plus_1();
        let f = l.mul(&l).add(&Polynomial::one(2));
        let (_, r) = f.div_rem(&l);
        assert!(!r.is_zero());
    }

    #[test]
    fn homogenize_roundtrip() {
        let f = p_x_plus_1().mul(&p_x_plus_1());
        let h = f.homogenize(4);
        assert!(h.is_homogeneous());
        assert_eq!(h.total_degree(), Some(4));
        assert_eq!(h.dehomogenize(), f);
    }

    #[test]
    fn basis_sizes_match_binomials() {
        for d in 0..6u32 {
            let filt = MonomialBasis::new(2, d, DegreeMode::Filtered);
            assert_eq!(filt.len(), filtered_dim(2, d));
            let hom = MonomialBasis::new(3, d, DegreeMode::Homogeneous);
            assert_eq!(hom.len(), filt.len());
        }
    }

    #[test]
    fn coords_roundtrip() {
        let basis = MonomialBasis::new(2, 2, DegreeMode::Filtered);
        let f = p_x_plus_1().mul(&p_x_plus_1());
        let v = basis.coords(&f).unwrap();
        assert_eq!(basis.poly_from_coords(&v), f);
        // Degree-3 polynomial does not fit a degree-2 window.
        let g = p_x_plus_1().pow(3);
        assert!(basis.coords(&g).is_none());
    }

    #[test]
    fn evaluate_simple() {
        let f = p_x_plus_1().pow(2);
        assert_eq!(f.evaluate(&[qr(2), qr(5)]), qr(9));
    }
}
