//! Hilbert-function diagnostics of the graded spline modules: HF tables,
//! Hilbert-polynomial fits with their in-window agreement degree, minimal
//! generator degree profiles, the T_n family, and the empirical report
//! juxtaposing observed degrees with the conjectured planar bounds.
//!
//! Everything here is window-limited evidence: the window [0, d_max] is all
//! the artifact ever sees, and the reports say so.

use crate::arrangement::LatticeMode;
use crate::complex::{PolytopalComplex, SubComplex};
use crate::linalg::Subspace;
use crate::poly::{DegreeMode, Polynomial};
use crate::splines::{solve_linear_system, SplineEngine};
use num::{BigRational, Zero};
use serde::Serialize;

/// Which graded module an HF table describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HfSelector {
    /// C^r(P-hat): the full graded spline module.
    Full,
    /// LS^{r,k}(P-hat) over the homogenized lattice.
    Ls(usize),
    /// C^r supported on a fixed subcomplex.
    Supported(SubComplex),
}

impl std::fmt::Display for HfSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HfSelector::Full => write!(f, "full"),
            HfSelector::Ls(k) => write!(f, "ls({k})"),
            HfSelector::Supported(q) => {
                write!(f, "supported({})", crate::complex::facet_set_label(q.facet_ids()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFTable {
    pub selector: HfSelector,
    pub r: u32,
    pub d_max: u32,
    /// values[d] = dim of the degree-d graded piece, d = 0..=d_max.
    pub values: Vec<usize>,
}

/// Hilbert function table in homogeneous mode.
pub fn hf_table(engine: &SplineEngine, selector: &HfSelector, r: u32, d_max: u32) -> HFTable {
    let values = (0..=d_max)
        .map(|d| match selector {
            HfSelector::Full => engine.spline_basis(r, d, DegreeMode::Homogeneous).dim(),
            HfSelector::Ls(k) => engine
                .ls_space(r, *k, d, DegreeMode::Homogeneous, LatticeMode::Homogenized)
                .dim(),
            HfSelector::Supported(q) => {
                engine.supported_basis(q, r, d, DegreeMode::Homogeneous).dim()
            }
        })
        .collect();
    HFTable {
        selector: selector.clone(),
        r,
        d_max,
        values,
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("window of length {0} too short; need at least {1}")]
    WindowTooShort(usize, usize),
    #[error("T_n requires n >= 2, got {0}")]
    BadTnIndex(usize),
}

/// A degree-<=n polynomial fitted through the top of an HF table, plus the
/// first in-window degree from which the table agrees with it onward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPFit {
    /// Coefficients of the fitted polynomial in d, constant term first.
    pub coefficients: Vec<BigRational>,
    /// Smallest degree from which table and fit agree up to the window end.
    pub agreement_from: u32,
    /// True when agreement starts only at the interpolation anchors
    /// themselves, i.e. the window shows no independent confirmation.
    pub window_limited: bool,
}

impl HPFit {
    pub fn eval(&self, d: u32) -> BigRational {
        let mut acc = BigRational::zero();
        let x = BigRational::from_integer(d.into());
        for c in self.coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Interpolate a degree-<=n polynomial through the top n+1 table values and
/// scan downward for the first disagreement.
pub fn hp_fit(table: &HFTable, n: usize) -> Result<HPFit, HilbertError> {
    let len = table.values.len();
    if len < n + 2 {
        return Err(HilbertError::WindowTooShort(len, n + 2));
    }
    let anchor_lo = len - (n + 1); // first anchor degree
    // Vandermonde solve for the coefficients.
    let degrees: Vec<u32> = (anchor_lo..len).map(|d| d as u32).collect();
    let columns: Vec<Vec<BigRational>> = (0..=n)
        .map(|power| {
            degrees
                .iter()
                .map(|&d| BigRational::from_integer(num::BigInt::from(d).pow(power as u32)))
                .collect()
        })
        .collect();
    let target: Vec<BigRational> = degrees
        .iter()
        .map(|&d| BigRational::from_integer(table.values[d as usize].into()))
        .collect();
    let coefficients =
        solve_linear_system(&columns, &target).expect("Vandermonde system is solvable");
    let fit = HPFit {
        coefficients,
        agreement_from: 0,
        window_limited: false,
    };
    let mut agreement_from = anchor_lo;
    for d in (0..anchor_lo).rev() {
        if fit.eval(d as u32) == BigRational::from_integer(table.values[d].into()) {
            agreement_from = d;
        } else {
            break;
        }
    }
    Ok(HPFit {
        agreement_from: agreement_from as u32,
        window_limited: agreement_from == anchor_lo,
        ..fit
    })
}

/// Per-degree dimensions of M_d modulo the span of x_i * M_{d-1} (the new
/// minimal generators the graded module needs at each degree).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorProfile {
    pub r: u32,
    pub d_max: u32,
    pub values: Vec<usize>,
}

impl GeneratorProfile {
    pub fn max_generator_degree(&self) -> Option<u32> {
        (0..self.values.len()).rev().find(|&d| self.values[d] > 0).map(|d| d as u32)
    }
}

pub fn generator_degrees(engine: &SplineEngine, r: u32, d_max: u32) -> GeneratorProfile {
    let n = engine.complex().ambient_dim();
    let mut values = Vec::with_capacity(d_max as usize + 1);
    for d in 0..=d_max {
        let space = engine.spline_basis(r, d, DegreeMode::Homogeneous);
        if d == 0 {
            values.push(space.dim());
            continue;
        }
        let below = engine.spline_basis(r, d - 1, DegreeMode::Homogeneous);
        let mut shifted: Vec<Vec<BigRational>> = Vec::new();
        for b in below.space.basis() {
            let polys = engine.polys_from_coords(b, d - 1, DegreeMode::Homogeneous);
            for var in 0..=n {
                let moved: Vec<Polynomial> =
                    polys.iter().map(|p| p.mul_by_var(var)).collect();
                shifted.push(
                    engine
                        .coords_of(&moved, d, DegreeMode::Homogeneous)
                        .expect("degree shift stays in window"),
                );
            }
        }
        let ambient = engine.facet_basis(d, DegreeMode::Homogeneous).len()
            * engine.complex().num_facets();
        let image = Subspace::span(ambient, &shifted);
        // R_1 * M_{d-1} is a subspace of M_d; new generators are the gap.
        debug_assert!(image.is_subspace_of(&space.space));
        values.push(space.dim() - image.dim());
    }
    GeneratorProfile { r, d_max, values }
}

/// The T_n family of the tight-bound construction (one triangle, n-1
/// quadrilaterals, two (n+1)-gons).
pub fn build_tn(n: usize) -> Result<PolytopalComplex, HilbertError> {
    if n < 2 {
        return Err(HilbertError::BadTnIndex(n));
    }
    Ok(crate::fixtures::tn(n))
}

/// Default HF window top for a planar complex: covers both the classical
/// 3r landmarks and the T_n generator degree.
pub fn default_d_max(p: &PolytopalComplex, r: u32) -> u32 {
    let f = max_boundary_length(p) as u32;
    (3 * r + 6).max((f - 1) * (r + 1) + 2)
}

/// F: the maximum number of boundary edges of a facet (2-D only).
pub fn max_boundary_length(p: &PolytopalComplex) -> usize {
    assert_eq!(p.ambient_dim(), 2, "boundary length is a planar notion");
    (0..p.num_facets()).map(|f| p.facet_cycle(f).len()).max().unwrap_or(0)
}

/// Empirical juxtaposition of observed window degrees against the two
/// conjectured planar bounds. Window-limited evidence, not proof; the
/// report says so explicitly in `disclaimer`.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub r: u32,
    pub d_max: u32,
    /// F = maximum facet boundary length.
    pub max_boundary_length: usize,
    pub hf_full: Vec<usize>,
    pub hf_ls: Vec<usize>,
    /// Observed first degree from which HF(full) agrees with its HP fit.
    pub observed_hf_hp_agreement_from: u32,
    pub hf_hp_fit_window_limited: bool,
    /// Bound implied by the regularity conjecture on the full module:
    /// agreement expected from (F-1)(r+1) - 1.
    pub c2_implied_agreement_from: i64,
    /// Observed smallest degree from which HF(full) = HF(ls(2)) holds to
    /// the window end; `None` if the window never stabilizes.
    pub observed_full_equals_ls_from: Option<u32>,
    /// Bound implied by the regularity conjecture on the lattice-supported
    /// module: equality expected from F(r+1) - 1.
    pub c1_implied_equality_from: i64,
    /// Largest in-window degree needing a new module generator.
    pub max_generator_degree: Option<u32>,
    pub generator_profile: Vec<usize>,
    pub disclaimer: &'static str,
}

pub fn conjecture_report(
    engine: &SplineEngine,
    r: u32,
    d_max: u32,
) -> Result<ConjectureReport, HilbertError> {
    let p = engine.complex();
    let n = p.ambient_dim();
    let f = max_boundary_length(p);
    let full = hf_table(engine, &HfSelector::Full, r, d_max);
    let ls = hf_table(engine, &HfSelector::Ls(n), r, d_max);
    let fit = hp_fit(&full, n)?;
    let mut equals_from = None;
    for d in (0..=d_max as usize).rev() {
        if full.values[d] == ls.values[d] {
            equals_from = Some(d as u32);
        } else {
            break;
        }
    }
    let profile = generator_degrees(engine, r, d_max);
    Ok(ConjectureReport {
        r,
        d_max,
        max_boundary_length: f,
        hf_full: full.values,
        hf_ls: ls.values,
        observed_hf_hp_agreement_from: fit.agreement_from,
        hf_hp_fit_window_limited: fit.window_limited,
        c2_implied_agreement_from: (f as i64 - 1) * (r as i64 + 1) - 1,
        observed_full_equals_ls_from: equals_from,
        c1_implied_equality_from: f as i64 * (r as i64 + 1) - 1,
        max_generator_degree: profile.max_generator_degree(),
        generator_profile: profile.values,
        disclaimer: "window-limited evidence, not proof",
    })
}

/// The HF of the lattice-supported module never exceeds the full module's,
/// and their difference for k = n must vanish from some in-window degree on.
/// Returns the smallest such degree, or `None` when the window is too short.
pub fn stabilization_degree(full: &HFTable, ls: &HFTable) -> Option<u32> {
    assert_eq!(full.d_max, ls.d_max);
    let mut from = None;
    for d in (0..full.values.len()).rev() {
        assert!(
            full.values[d] >= ls.values[d],
            "LS is a submodule; HF difference must be nonnegative"
        );
        if full.values[d] == ls.values[d] {
            from = Some(d as u32);
        } else {
            break;
        }
    }
    from
}
