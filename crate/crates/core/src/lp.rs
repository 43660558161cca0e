//! A small exact-rational linear program solver (two-phase simplex with
//! Bland's rule), used to validate that facets of a complex intersect in
//! common faces. The instances here are tiny: a handful of variables, one
//! equality constraint per ambient coordinate.

use num::{BigRational, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    /// Maximum of the objective over the feasible region.
    Optimal(BigRational),
    Unbounded,
}

/// Maximize `c . x` subject to `A x = b`, `x >= 0`, all data exact rationals.
pub fn simplex_maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));

    // Normalize to b >= 0.
    let mut a: Vec<Vec<BigRational>> = a.to_vec();
    let mut b: Vec<BigRational> = b.to_vec();
    for i in 0..m {
        if b[i].is_negative() {
            for x in &mut a[i] {
                *x = -std::mem::take(x);
            }
            b[i] = -std::mem::take(&mut b[i]);
        }
    }

    // Phase 1 tableau with one artificial variable per row; objective is to
    // drive the artificials to zero.
    let total = n + m;
    let mut tab: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = vec![BigRational::zero(); total + 1];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = BigRational::one();
            row[total] = b[i].clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    let phase1_cost: Vec<BigRational> = (0..total)
        .map(|j| if j < n { BigRational::zero() } else { -BigRational::one() })
        .collect();
    run_simplex(&mut tab, &mut basis, &phase1_cost, total);
    let phase1_value: BigRational = basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(i, _)| tab[i][total].clone())
        .fold(BigRational::zero(), |acc, v| acc + v);
    if !phase1_value.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Pivot any artificial that lingers in the basis at value zero out of it.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab[i][j].is_zero()) {
                pivot(&mut tab, &mut basis, i, j);
            }
            // Otherwise the row is all-zero in the structural part; harmless.
        }
    }

    // Phase 2 on the original objective.
    let phase2_cost: Vec<BigRational> = (0..total)
        .map(|j| if j < n { c[j].clone() } else { BigRational::zero() })
        .collect();
    // Artificials must stay out: forbid them by never selecting their columns.
    if !run_simplex_restricted(&mut tab, &mut basis, &phase2_cost, total, n) {
        return LpOutcome::Unbounded;
    }
    let value = basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj < n)
        .map(|(i, &bj)| &phase2_cost[bj] * &tab[i][total])
        .fold(BigRational::zero(), |acc, v| acc + v);
    LpOutcome::Optimal(value)
}

fn pivot(tab: &mut [Vec<BigRational>], basis: &mut [usize], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for x in &mut tab[row] {
        *x /= &p;
    }
    for i in 0..tab.len() {
        if i == row || tab[i][col].is_zero() {
            continue;
        }
        let f = tab[i][col].clone();
        for j in 0..tab[row].len() {
            let d = &f * &tab[row][j];
            tab[i][j] -= d;
        }
    }
    basis[row] = col;
}

fn run_simplex(
    tab: &mut [Vec<BigRational>],
    basis: &mut [usize],
    cost: &[BigRational],
    ncols: usize,
) -> bool {
    run_simplex_restricted(tab, basis, cost, ncols, ncols)
}

/// Simplex iterations with Bland's rule; entering columns are restricted to
/// `0..allowed`. Returns false on unboundedness.
fn run_simplex_restricted(
    tab: &mut [Vec<BigRational>],
    basis: &mut [usize],
    cost: &[BigRational],
    ncols: usize,
    allowed: usize,
) -> bool {
    loop {
        // Reduced costs: c_j - c_B . B^-1 A_j.
        let mut entering = None;
        for j in 0..allowed.min(ncols) {
            if basis.contains(&j) {
                continue;
            }
            let mut red = cost[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                if !cost[bj].is_zero() && !tab[i][j].is_zero() {
                    red -= &cost[bj] * &tab[i][j];
                }
            }
            if red.is_positive() {
                entering = Some(j);
                break; // Bland: smallest index.
            }
        }
        let Some(col) = entering else {
            return true;
        };
        // Ratio test, Bland tie-break on basis index.
        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..tab.len() {
            if tab[i][col].is_positive() {
                let ratio = &tab[i][ncols] / &tab[i][col];
                match &leaving {
                    None => leaving = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((row, _)) = leaving else {
            return false;
        };
        pivot(tab, basis, row, col);
    }
}
