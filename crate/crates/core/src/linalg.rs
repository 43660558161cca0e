//! Exact dense linear algebra over the rationals.
//!
//! Everything here is exact: no floating point anywhere. Elimination works on
//! integer rows (each row is primitivized, i.e. scaled to coprime integers)
//! so that entry growth stays manageable, and results are converted back to
//! rationals only where a canonical leading-one form is wanted.
//!
//! An independent modular-arithmetic rank oracle ([`modular_rank`]) is used to
//! cross-check every dimension the library reports.

use num::bigint::Sign;
use num::rational::Ratio;
use num::{BigInt, BigRational, Integer, One, Zero};
use rand::Rng;

/// Dense matrix with exact rational entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: Vec<Vec<i64>>) -> Self {
        QMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank via exact elimination.
    pub fn rank(&self) -> usize {
        let mut rows = to_int_rows(self);
        echelonize(&mut rows).len()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Scale a rational vector to a primitive integer vector (coprime entries,
/// first nonzero entry positive). Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_one() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).map(|x| x.sign()) == Some(Sign::Minus) {
        for x in &mut ints {
            *x = -std::mem::take(x);
        }
    }
    Some(ints)
}

fn to_int_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            primitive_integer_vector(m.row(i)).unwrap_or_else(|| vec![BigInt::zero(); m.cols()])
        })
        .collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let mut gcd = BigInt::zero();
    for x in row.iter() {
        gcd = gcd.gcd(x);
        if gcd.is_one() {
            return;
        }
    }
    if gcd.is_zero() || gcd.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x /= &gcd;
    }
}

/// In-place forward elimination on integer rows, leftmost-first pivots.
/// Returns the pivot columns in order; afterwards rows `0..pivots.len()` form
/// an echelon basis of the row space and the remaining rows are dropped.
pub(crate) fn echelonize(rows: &mut Vec<Vec<BigInt>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
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
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let g = rows[r][c].gcd(&rows[i][c]);
            let a = &rows[r][c] / &g; // multiplier for row i
            let b = &rows[i][c] / &g; // multiplier for row r
            for j in c..ncols {
                rows[i][j] = &rows[i][j] * &a - &rows[r][j] * &b;
            }
            reduce_content(&mut rows[i]);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Back-eliminate above pivots and normalize leading entries to 1.
/// Input must be echelon integer rows as produced by [`echelonize`].
pub(crate) fn back_substitute(rows: Vec<Vec<BigInt>>, pivots: &[usize]) -> Vec<Vec<BigRational>> {
    let mut rows = rows;
    let ncols = rows.first().map_or(0, Vec::len);
    for i in (0..pivots.len()).rev() {
        let c = pivots[i];
        for k in 0..i {
            if rows[k][c].is_zero() {
                continue;
            }
            let g = rows[i][c].gcd(&rows[k][c]);
            let a = &rows[i][c] / &g;
            let b = &rows[k][c] / &g;
            for j in 0..ncols {
                rows[k][j] = &rows[k][j] * &a - &rows[i][j] * &b;
            }
            reduce_content(&mut rows[k]);
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            let lead = row[pivots[i]].clone();
            row.into_iter().map(|x| Ratio::new(x, lead.clone())).collect()
        })
        .collect()
}

/// A linear subspace of Q^ambient in canonical form: the rows are the reduced
/// row echelon basis of the space, so two subspaces are equal iff the structs
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows with leading ones; empty for the zero space.
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Span of the given vectors, brought to canonical form.
    pub fn span(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "ambient mismatch");
        }
        let mut rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .filter_map(|v| primitive_integer_vector(v))
            .collect();
        let pivots = echelonize(&mut rows);
        let rows = back_substitute(rows, &pivots);
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis vectors (the RREF rows).
    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Coefficients of `v` over the canonical basis, or `None` if `v` is
    /// outside the subspace. Deterministic: coefficients are read off the
    /// pivot coordinates.
    pub fn member(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let coeffs: Vec<BigRational> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.member(v).is_some()
    }

    /// `self` is a subspace of `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Sum of subspaces (column span of the concatenation of their bases).
pub fn subspace_sum<'a>(spaces: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
    let mut ambient = None;
    let mut vectors = Vec::new();
    for s in spaces {
        match ambient {
            None => ambient = Some(s.ambient),
            Some(a) => assert_eq!(a, s.ambient, "ambient mismatch in subspace sum"),
        }
        vectors.extend(s.rows.iter().cloned());
    }
    Subspace::span(ambient.expect("subspace_sum of empty list"), &vectors)
}

/// Basis of the kernel {v : Mv = 0}, with deterministic leftmost-first pivot
/// order. Asserts rank-nullity on every call.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let mut rows = to_int_rows(m);
    let pivots = echelonize(&mut rows);
    let rank = pivots.len();
    let rref = back_substitute(rows, &pivots);
    let mut kernel = Vec::new();
    for free in 0..m.cols() {
        if pivots.binary_search(&free).is_ok() {
            continue;
        }
        let mut v = vec![BigRational::zero(); m.cols()];
        v[free] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rref[i][free].clone();
        }
        kernel.push(v);
    }
    assert_eq!(rank + kernel.len(), m.cols(), "rank-nullity violated");
    Subspace::span(m.cols(), &kernel)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("prime {0} divides a cleared-row scaling factor; pick another prime")]
    BadPrime(u64),
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime and a != 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let r = (x % BigInt::from(p)).to_i64().expect("residue fits i64");
    r.rem_euclid(p as i64) as u64
}

/// Rank of `m` reduced modulo the prime `p` (an independent oracle for the
/// exact rank: always `<=` the rational rank, with equality for all but
/// finitely many primes). Rows are cleared to integers first; if `p` divides a
/// scaling factor the reduction would be degenerate and `BadPrime` is
/// returned so the caller can re-roll.
pub fn modular_rank(m: &QMatrix, p: u64) -> Result<usize, ModularError> {
    assert!(p > 2 && p < (1 << 31), "prime out of supported range");
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut lcm = BigInt::one();
        for x in m.row(i) {
            lcm = lcm.lcm(x.denom());
        }
        if (&lcm % &pb).is_zero() {
            return Err(ModularError::BadPrime(p));
        }
        let row: Vec<u64> = m
            .row(i)
            .iter()
            .map(|x| {
                let scaled = x.numer() * (&lcm / x.denom());
                bigint_mod(&scaled, p)
            })
            .collect();
        rows.push(row);
    }
    // Gaussian elimination over GF(p).
    let ncols = m.cols();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = mod_inverse(rows[rank][c], p);
        for j in c..ncols {
            rows[rank][j] = rows[rank][j] * inv % p;
        }
        for i in rank + 1..rows.len() {
            if rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..ncols {
                    rows[i][j] = (rows[i][j] + (p - f) % p * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Deterministic Miller-Rabin witness set for 64-bit inputs.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = 1u128;
        let mut base = a as u128 % n as u128;
        let mut exp = d;
        while exp > 0 {
            if exp & 1 == 1 {
                x = x * base % n as u128;
            }
            base = base * base % n as u128;
            exp >>= 1;
        }
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime in [2^29, 2^30).
pub fn random_prime(rng: &mut impl Rng) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 29)..(1u64 << 30)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

/// Result of an oracle-checked exact rank computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedRank {
    pub rank: usize,
    /// Primes at which the modular rank was compared.
    pub primes: Vec<u64>,
    /// True iff the modular rank agreed with the exact rank at every prime.
    pub oracle_ok: bool,
}

/// Exact rank plus modular cross-check at `count` random primes. Primes that
/// divide a row scaling factor are re-rolled; genuine disagreement (possible
/// only for primes dividing a pivot minor) is reported via `oracle_ok`.
pub fn checked_rank(m: &QMatrix, rng: &mut impl Rng, count: usize) -> CheckedRank {
    let rank = m.rank();
    let mut primes = Vec::new();
    let mut oracle_ok = true;
    while primes.len() < count {
        let p = random_prime(rng);
        match modular_rank(m, p) {
            Ok(r) => {
                primes.push(p);
                if r != rank {
                    oracle_ok = false;
                }
            }
            Err(ModularError::BadPrime(_)) => continue,
        }
    }
    CheckedRank { rank, primes, oracle_ok }
}

pub fn qr(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qr_frac(n: i64, d: i64) -> BigRational {
    Ratio::new(n.into(), d.into())
}
