//! Spline spaces on a complex: smoothness systems and exact bases for
//! C^r_d(P), graded C^r(P-hat)_d, subcomplex-supported spaces C^r_{Q,d},
//! flat-supported spaces C^r_{W,d}, the lattice-supported sums LS^{r,k}_d,
//! star sums, and decomposition of splines into lattice-supported pieces.
//!
//! A spline is represented per facet, either as polynomials or as one
//! stacked coordinate vector over facet-major monomial blocks.

use crate::arrangement::{
    boundary_form, gamma_poset_from_lattice, Flat,
    GammaPoset, IntersectionLattice, LatticeMode, LinearForm,
};
use crate::complex::{ComplexError, ComplexKind, FaceId, PolytopalComplex, SubComplex};
use crate::linalg::{
    back_substitute, echelonize, primitive_integer_vector, subspace_sum, Subspace,
};
use crate::poly::{DegreeMode, MonomialBasis, Polynomial};
use num::{BigInt, BigRational, One, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
pub enum SplineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("expected {0} facet polynomials, got {1}")]
    WrongFacetCount(usize, usize),
    #[error("facet polynomial {0} uses {1} variables, expected {2}")]
    WrongVariableCount(usize, usize, usize),
    #[error("not a C^{0} spline: difference across face {1:?} is not divisible by the face form to order {2}")]
    NotASpline(u32, Vec<usize>, u32),
    #[error("facet polynomial {0} has degree {1}, exceeding the window degree {2}")]
    DegreeTooHigh(usize, u32, u32),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
}

/// A subspace of a spline coordinate space, tagged with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplineSubspace {
    pub space: Subspace,
    pub r: u32,
    pub d: u32,
    pub mode: DegreeMode,
    /// Facets outside this set carry only zero coordinates in every basis
    /// vector.
    pub support: SubComplex,
}

impl SplineSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Caching computation context for one complex. All results are exact and
/// deterministic; the cache only avoids recomputation.
type BasisKey = (SubComplex, u32, u32, DegreeMode);

pub struct SplineEngine<'p> {
    complex: &'p PolytopalComplex,
    edge_forms: BTreeMap<FaceId, LinearForm>,
    basis_cache: RefCell<BTreeMap<BasisKey, Rc<SplineSubspace>>>,
    lattice_cache: RefCell<BTreeMap<LatticeMode, Rc<IntersectionLattice>>>,
    component_cache: RefCell<BTreeMap<Flat, Rc<Vec<SubComplex>>>>,
}

impl<'p> SplineEngine<'p> {
    pub fn new(complex: &'p PolytopalComplex) -> Self {
        let edge_forms = crate::arrangement::arrangement_forms(complex).1;
        SplineEngine {
            complex,
            edge_forms,
            basis_cache: RefCell::new(BTreeMap::new()),
            lattice_cache: RefCell::new(BTreeMap::new()),
            component_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn complex(&self) -> &'p PolytopalComplex {
        self.complex
    }

    pub fn lattice(&self, mode: LatticeMode) -> Rc<IntersectionLattice> {
        self.lattice_cache
            .borrow_mut()
            .entry(mode)
            .or_insert_with(|| Rc::new(IntersectionLattice::build(self.complex, mode)))
            .clone()
    }

    /// Components of the lattice complex of `flat`, cached.
    pub fn components(&self, flat: &Flat) -> Rc<Vec<SubComplex>> {
        if let Some(hit) = self.component_cache.borrow().get(flat) {
            return hit.clone();
        }
        let computed = Rc::new(crate::arrangement::restriction_components_with_forms(
            self.complex,
            flat,
            &self.edge_forms,
        ));
        self.component_cache
            .borrow_mut()
            .insert(flat.clone(), computed.clone());
        computed
    }

    /// The monomial basis coordinatizing one facet block.
    pub fn facet_basis(&self, d: u32, mode: DegreeMode) -> MonomialBasis {
        let n = self.complex.ambient_dim();
        match mode {
            DegreeMode::Filtered => MonomialBasis::new(n, d, mode),
            DegreeMode::Homogeneous => MonomialBasis::new(n + 1, d, mode),
        }
    }

    fn form_poly(&self, face: FaceId, mode: DegreeMode) -> Polynomial {
        self.edge_forms[&face].to_polynomial(mode)
    }

    /// Smoothness rows for the subcomplex `q`: one block per constraint face
    /// (interior to q, or on the boundary of q away from the boundary of P),
    /// as (multiplier part, facet part) pairs over q's facets in order.
    /// The equation per face is F_{s1} - F_{s2} - l^{r+1} a = 0 (or
    /// F_s - l^{r+1} a = 0 on the one-sided boundary faces).
    fn smoothness_rows(
        &self,
        q: &SubComplex,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> SmoothnessSystem {
        let facet_basis = self.facet_basis(d, mode);
        let fb = facet_basis.len();
        let facets: Vec<usize> = q.facet_ids().iter().copied().collect();
        let facet_pos: BTreeMap<usize, usize> =
            facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mult_basis = if d > r {
            Some(match mode {
                DegreeMode::Filtered => {
                    MonomialBasis::new(self.complex.ambient_dim(), d - (r + 1), mode)
                }
                DegreeMode::Homogeneous => {
                    MonomialBasis::new(self.complex.ambient_dim() + 1, d - (r + 1), mode)
                }
            })
        } else {
            None
        };
        let mb = mult_basis.as_ref().map_or(0, MonomialBasis::len);

        let mut constraint_faces: Vec<(FaceId, Vec<usize>)> = Vec::new();
        for face in q.interior_codim1(self.complex) {
            let pair: Vec<usize> = self
                .complex
                .facets_containing(face)
                .iter()
                .filter(|f| q.contains_facet(**f))
                .copied()
                .collect();
            constraint_faces.push((face, pair));
        }
        for face in q.boundary_codim1_not_in_parent_boundary(self.complex) {
            let side: Vec<usize> = self
                .complex
                .facets_containing(face)
                .iter()
                .filter(|f| q.contains_facet(**f))
                .copied()
                .collect();
            constraint_faces.push((face, side));
        }
        constraint_faces.sort();

        let mult_cols = mb * constraint_faces.len();
        let facet_cols = fb * facets.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (ci, (face, sides)) in constraint_faces.iter().enumerate() {
            let mut block = vec![vec![BigRational::zero(); mult_cols + facet_cols]; fb];
            for (side, sign) in sides.iter().zip([1i64, -1]) {
                let col0 = mult_cols + facet_pos[side] * fb;
                for (mi, row) in block.iter_mut().enumerate() {
                    row[col0 + mi] = BigRational::from_integer(sign.into());
                }
            }
            if let Some(mbasis) = &mult_basis {
                let lpow = self.form_poly(*face, mode).pow(r + 1);
                for (vi, v) in mbasis.monomials().iter().enumerate() {
                    let prod = lpow.mul(&Polynomial::monomial(
                        lpow.nvars(),
                        v.clone(),
                        BigRational::one(),
                    ));
                    let coords = facet_basis
                        .coords(&prod)
                        .expect("product stays in the window");
                    let col = ci * mb + vi;
                    for (mi, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            block[mi][col] = -c.clone();
                        }
                    }
                }
            }
            rows.extend(block);
        }
        SmoothnessSystem {
            facets,
            facet_basis,
            mult_cols,
            rows,
        }
    }

    /// The full smoothness matrix of the complex, in block layout
    /// [facet coefficient columns | multiplier columns]. Its kernel projects
    /// bijectively onto the spline space.
    pub fn smoothness_matrix(&self, r: u32, d: u32, mode: DegreeMode) -> crate::linalg::QMatrix {
        let sys = self.smoothness_rows(&self.complex.full_subcomplex(), r, d, mode);
        let rows = sys
            .rows
            .iter()
            .map(|row| {
                let (mult, facet) = row.split_at(sys.mult_cols);
                facet.iter().chain(mult.iter()).cloned().collect()
            })
            .collect();
        crate::linalg::QMatrix::from_rows(rows)
    }

    /// Basis of C^r_{Q,d}(P) (splines vanishing outside `q`), embedded in
    /// the full stacked facet coordinates. For Q = P this is C^r_d(P)
    /// itself. Results are cached.
    pub fn supported_basis(
        &self,
        q: &SubComplex,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> Rc<SplineSubspace> {
        let key = (q.clone(), r, d, mode);
        if let Some(hit) = self.basis_cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = Rc::new(self.supported_basis_uncached(q, r, d, mode));
        self.basis_cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn supported_basis_uncached(
        &self,
        q: &SubComplex,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> SplineSubspace {
        let facet_basis = self.facet_basis(d, mode);
        let fb = facet_basis.len();
        let total = self.complex.num_facets() * fb;
        let local = if q.len() == 1 {
            self.single_facet_basis(q, r, d, mode, &facet_basis)
        } else {
            let sys = self.smoothness_rows(q, r, d, mode);
            sys.kernel_facet_vectors()
        };
        // Embed the per-q-facet vectors into the full stacked coordinates.
        let facets: Vec<usize> = q.facet_ids().iter().copied().collect();
        let vectors: Vec<Vec<BigRational>> = local
            .into_iter()
            .map(|v| {
                let mut full = vec![BigRational::zero(); total];
                for (qi, &f) in facets.iter().enumerate() {
                    full[f * fb..(f + 1) * fb].clone_from_slice(&v[qi * fb..(qi + 1) * fb]);
                }
                full
            })
            .collect();
        SplineSubspace {
            space: Subspace::span(total, &vectors),
            r,
            d,
            mode,
            support: q.clone(),
        }
    }

    /// Splines supported on a single facet form a free block: the boundary
    /// form (to the power r+1) times an arbitrary polynomial of the
    /// complementary degree.
    fn single_facet_basis(
        &self,
        q: &SubComplex,
        r: u32,
        d: u32,
        mode: DegreeMode,
        facet_basis: &MonomialBasis,
    ) -> Vec<Vec<BigRational>> {
        let bf = boundary_form(self.complex, q);
        let e = bf.total_degree().unwrap_or(0);
        let needed = e * (r + 1);
        if needed > d {
            return Vec::new();
        }
        let lead = match mode {
            DegreeMode::Filtered => bf.pow(r + 1),
            DegreeMode::Homogeneous => bf.pow(r + 1).homogenize(needed),
        };
        let free_basis = match mode {
            DegreeMode::Filtered => {
                MonomialBasis::new(self.complex.ambient_dim(), d - needed, mode)
            }
            DegreeMode::Homogeneous => {
                MonomialBasis::new(self.complex.ambient_dim() + 1, d - needed, mode)
            }
        };
        free_basis
            .monomials()
            .iter()
            .map(|m| {
                let prod = lead.mul(&Polynomial::monomial(
                    lead.nvars(),
                    m.clone(),
                    BigRational::one(),
                ));
                facet_basis.coords(&prod).expect("degree fits the window")
            })
            .collect()
    }

    /// C^r_d(P) itself (the full spline space).
    pub fn spline_basis(&self, r: u32, d: u32, mode: DegreeMode) -> Rc<SplineSubspace> {
        self.supported_basis(&self.complex.full_subcomplex(), r, d, mode)
    }

    /// C^r_{W,d}(P): sum of the supported spaces over the components of the
    /// lattice complex of `flat`.
    pub fn flat_supported(
        &self,
        flat: &Flat,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> SplineSubspace {
        let components = self.components(flat).as_ref().clone();
        self.sum_over_supports(components, r, d, mode)
    }

    fn sum_over_supports(
        &self,
        supports: Vec<SubComplex>,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> SplineSubspace {
        let fb = self.facet_basis(d, mode).len();
        let total = self.complex.num_facets() * fb;
        let mut support_union = Vec::new();
        let spaces: Vec<Rc<SplineSubspace>> = supports
            .iter()
            .map(|c| {
                support_union.extend(c.facet_ids().iter().copied());
                self.supported_basis(c, r, d, mode)
            })
            .collect();
        let space = if spaces.is_empty() {
            Subspace::zero(total)
        } else {
            subspace_sum(spaces.iter().map(|s| &s.space))
        };
        SplineSubspace {
            space,
            r,
            d,
            mode,
            support: SubComplex::new(support_union),
        }
    }

    /// LS^{r,k}_d(P): the sum of C^r_{W,d} over all flats of rank <= k in
    /// the selected lattice (affine spans only, or homogenized to include
    /// the flats at infinity).
    pub fn ls_space(
        &self,
        r: u32,
        k: usize,
        d: u32,
        mode: DegreeMode,
        flats: LatticeMode,
    ) -> SplineSubspace {
        let lattice = self.lattice(flats);
        let mut supports = Vec::new();
        for flat in &lattice.flats {
            if flat.rank() <= k {
                supports.extend(self.components(flat).iter().cloned());
            }
        }
        supports.sort();
        supports.dedup();
        self.sum_over_supports(supports, r, d, mode)
    }

    /// The Gamma poset of the selected lattice, truncated at rank k.
    pub fn gamma(&self, k: usize, flats: LatticeMode) -> GammaPoset {
        gamma_poset_from_lattice(self.complex, k, &self.lattice(flats))
    }

    /// Sum of the star-supported spaces over all (n-k)-faces of a simplicial
    /// complex; with k = n these are the vertex stars.
    pub fn star_sum(
        &self,
        k: usize,
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> Result<SplineSubspace, SplineError> {
        if self.complex.kind() != ComplexKind::Simplicial {
            return Err(ComplexError::NotSimplicial.into());
        }
        let n = self.complex.ambient_dim();
        assert!(k <= n, "star_sum rank must be at most the dimension");
        let supports: Vec<SubComplex> = self
            .complex
            .faces_of_dim(n - k)
            .map(|f| self.complex.star(f))
            .collect();
        Ok(self.sum_over_supports(supports, r, d, mode))
    }

    /// Sum of star-supported spaces over an explicit list of vertices
    /// (works on any complex kind; used to probe star insufficiency).
    pub fn vertex_star_sum(
        &self,
        vertices: &[usize],
        r: u32,
        d: u32,
        mode: DegreeMode,
    ) -> Result<SplineSubspace, SplineError> {
        let supports = vertices
            .iter()
            .map(|&v| self.complex.star_of_vertices(&[v]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.sum_over_supports(supports, r, d, mode))
    }

    /// Check the smoothness divisibility criterion: across every interior
    /// codim-1 face, the difference of the two facet polynomials is
    /// divisible by the face form to the power r+1. Accepts affine
    /// polynomials (n variables) or homogeneous ones (n+1 variables).
    pub fn is_spline(&self, r: u32, polys: &[Polynomial]) -> Result<(), SplineError> {
        let n = self.complex.ambient_dim();
        if polys.len() != self.complex.num_facets() {
            return Err(SplineError::WrongFacetCount(
                self.complex.num_facets(),
                polys.len(),
            ));
        }
        let mode = if polys.iter().all(|p| p.nvars() == n) {
            DegreeMode::Filtered
        } else if polys.iter().all(|p| p.nvars() == n + 1) {
            DegreeMode::Homogeneous
        } else {
            let bad = polys.iter().position(|p| p.nvars() != n).unwrap();
            return Err(SplineError::WrongVariableCount(bad, polys[bad].nvars(), n));
        };
        for (&face, form) in &self.edge_forms {
            let facets = self.complex.facets_containing(face);
            let diff = polys[facets[0]].sub(&polys[facets[1]]);
            if diff.is_zero() {
                continue;
            }
            let lpow = form.to_polynomial(mode).pow(r + 1);
            if !diff.divisible_by(&lpow) {
                return Err(SplineError::NotASpline(
                    r,
                    self.complex.face(face).vertex_ids.clone(),
                    r + 1,
                ));
            }
        }
        Ok(())
    }

    /// Homogenize a filtered spline of degree <= d to a graded spline on the
    /// cone (the x0-homogenization facet by facet).
    pub fn homogenize_spline(
        &self,
        r: u32,
        polys: &[Polynomial],
        d: u32,
    ) -> Result<Vec<Polynomial>, SplineError> {
        self.is_spline(r, polys)?;
        for (i, p) in polys.iter().enumerate() {
            if let Some(deg) = p.total_degree() {
                if deg > d {
                    return Err(SplineError::DegreeTooHigh(i, deg, d));
                }
            }
        }
        Ok(polys.iter().map(|p| p.homogenize(d)).collect())
    }

    /// Inverse of [`homogenize_spline`]: set x0 = 1.
    pub fn dehomogenize_spline(
        &self,
        r: u32,
        polys: &[Polynomial],
        d: u32,
    ) -> Result<Vec<Polynomial>, SplineError> {
        for p in polys {
            let wrong_degree = p.total_degree().is_some_and(|e| e != d);
            if !p.is_zero() && (!p.is_homogeneous() || wrong_degree) {
                return Err(SplineError::NotHomogeneous(d));
            }
        }
        self.is_spline(r, polys)?;
        Ok(polys.iter().map(Polynomial::dehomogenize).collect())
    }

    /// Stacked coordinates of per-facet polynomials over the facet basis.
    pub fn coords_of(
        &self,
        polys: &[Polynomial],
        d: u32,
        mode: DegreeMode,
    ) -> Result<Vec<BigRational>, SplineError> {
        let basis = self.facet_basis(d, mode);
        if polys.len() != self.complex.num_facets() {
            return Err(SplineError::WrongFacetCount(
                self.complex.num_facets(),
                polys.len(),
            ));
        }
        let mut out = Vec::with_capacity(polys.len() * basis.len());
        for (i, p) in polys.iter().enumerate() {
            let coords = basis.coords(p).ok_or(SplineError::DegreeTooHigh(
                i,
                p.total_degree().unwrap_or(0),
                d,
            ))?;
            out.extend(coords);
        }
        Ok(out)
    }

    pub fn polys_from_coords(&self, coords: &[BigRational], d: u32, mode: DegreeMode) -> Vec<Polynomial> {
        let basis = self.facet_basis(d, mode);
        coords
            .chunks(basis.len())
            .map(|c| basis.poly_from_coords(c))
            .collect()
    }

    /// The constant-1 spline in coordinates.
    pub fn unit_spline(&self, d: u32, mode: DegreeMode) -> Vec<Polynomial> {
        let n = self.complex.ambient_dim();
        let one = match mode {
            DegreeMode::Filtered => Polynomial::one(n),
            DegreeMode::Homogeneous => Polynomial::one(n).homogenize(d),
        };
        vec![one; self.complex.num_facets()]
    }

    /// Decompose a spline into lattice-supported summands over the maximal
    /// Gamma nodes of rank <= k. Returns `Ok(None)` when the spline lies
    /// outside LS^{r,k}_d for the selected lattice.
    pub fn decompose(
        &self,
        polys: &[Polynomial],
        r: u32,
        k: usize,
        d: u32,
        flats: LatticeMode,
    ) -> Result<Option<Decomposition>, SplineError> {
        self.is_spline(r, polys)?;
        let mode = DegreeMode::Filtered;
        let target = self.coords_of(polys, d, mode)?;
        let gamma = self.gamma(k, flats);
        let mut columns: Vec<Vec<BigRational>> = Vec::new();
        let mut groups: Vec<(SubComplex, std::ops::Range<usize>)> = Vec::new();
        for &mi in &gamma.maximal {
            let node = &gamma.nodes[mi];
            let basis = self.supported_basis(&node.subcomplex, r, d, mode);
            let start = columns.len();
            columns.extend(basis.space.basis().iter().cloned());
            groups.push((node.subcomplex.clone(), start..columns.len()));
        }
        let Some(solution) = solve_linear_system(&columns, &target) else {
            return Ok(None);
        };
        let mut summands = Vec::new();
        for (support, range) in groups {
            let mut vec = vec![BigRational::zero(); target.len()];
            let mut nonzero = false;
            for j in range {
                if solution[j].is_zero() {
                    continue;
                }
                nonzero = true;
                for (x, y) in vec.iter_mut().zip(&columns[j]) {
                    if !y.is_zero() {
                        *x += &solution[j] * y;
                    }
                }
            }
            if nonzero && !vec.iter().all(Zero::is_zero) {
                summands.push((support, self.polys_from_coords(&vec, d, mode)));
            }
        }
        // The summands must add back up to the input exactly.
        let n = self.complex.ambient_dim();
        let mut sum = vec![Polynomial::zero(n); self.complex.num_facets()];
        for (_, polys) in &summands {
            for (acc, p) in sum.iter_mut().zip(polys) {
                *acc = acc.add(p);
            }
        }
        assert_eq!(sum, polys.to_vec(), "decomposition must sum to the input");
        Ok(Some(Decomposition { summands }))
    }
}

/// A decomposition into lattice-supported summands: pairs of (support node,
/// per-facet polynomials), zero summands omitted.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<(SubComplex, Vec<Polynomial>)>,
}

/// Outcome of a modular cross-check of a reported dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub dim: usize,
    pub primes: Vec<u64>,
    pub ok: bool,
}

impl<'p> SplineEngine<'p> {
    /// Confirm the dimension of a computed subspace by reducing its
    /// canonical basis matrix modulo `count` random primes: the modular
    /// rank never exceeds the exact one, and must equal it here.
    pub fn oracle_check_space(
        &self,
        space: &SplineSubspace,
        rng: &mut impl rand::Rng,
        count: usize,
    ) -> OracleOutcome {
        if space.dim() == 0 {
            // Nothing to confirm; an empty basis has rank 0 at every prime.
            return OracleOutcome { dim: 0, primes: Vec::new(), ok: true };
        }
        let m = crate::linalg::QMatrix::from_rows(space.space.basis().to_vec());
        let checked = crate::linalg::checked_rank(&m, rng, count);
        OracleOutcome {
            dim: space.dim(),
            primes: checked.primes,
            ok: checked.oracle_ok && checked.rank == space.dim(),
        }
    }

    /// Confirm a full spline-space dimension against the smoothness system
    /// itself: the exact rank of the block matrix must agree with the
    /// modular rank at `count` random primes, and the kernel dimension it
    /// implies must match the reported dimension.
    pub fn oracle_check_smoothness(
        &self,
        r: u32,
        d: u32,
        mode: DegreeMode,
        rng: &mut impl rand::Rng,
        count: usize,
    ) -> OracleOutcome {
        let dim = self.spline_basis(r, d, mode).dim();
        let m = self.smoothness_matrix(r, d, mode);
        let checked = crate::linalg::checked_rank(&m, rng, count);
        OracleOutcome {
            dim,
            primes: checked.primes,
            ok: checked.oracle_ok && m.cols() - checked.rank == dim,
        }
    }
}

struct SmoothnessSystem {
    facets: Vec<usize>,
    facet_basis: MonomialBasis,
    mult_cols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl SmoothnessSystem {
    /// Kernel of the block system, projected onto the facet coordinates.
    /// The multiplier unknowns are uniquely determined by the facet part,
    /// which manifests as every multiplier column being a pivot; this is
    /// asserted.
    fn kernel_facet_vectors(self) -> Vec<Vec<BigRational>> {
        let facet_cols = self.facets.len() * self.facet_basis.len();
        let total = self.mult_cols + facet_cols;
        let mut int_rows: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .filter_map(|r| primitive_integer_vector(r))
            .collect();
        let pivots = echelonize(&mut int_rows);
        let mult_pivots = pivots.iter().filter(|&&c| c < self.mult_cols).count();
        assert_eq!(
            mult_pivots, self.mult_cols,
            "multiplier unknowns must be determined by the facet coefficients"
        );
        let rref = back_substitute(int_rows, &pivots);
        let mut vectors = Vec::new();
        for free in self.mult_cols..total {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![BigRational::zero(); facet_cols];
            v[free - self.mult_cols] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                if p >= self.mult_cols && !rref[i][free].is_zero() {
                    v[p - self.mult_cols] = -rref[i][free].clone();
                }
            }
            vectors.push(v);
        }
        vectors
    }
}

/// Solve `columns * x = target` exactly; `None` when inconsistent. Free
/// variables are set to zero, so the solution is the deterministic
/// pivot-order one.
pub fn solve_linear_system(
    columns: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let ncols = columns.len();
    let nrows = target.len();
    let mut rows: Vec<Vec<BigRational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    rows.retain(|r| !r.iter().all(Zero::is_zero));
    let mut int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter_map(|r| primitive_integer_vector(r))
        .collect();
    let pivots = echelonize(&mut int_rows);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let rref = back_substitute(int_rows, &pivots);
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rref[i][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::qr;
    use crate::poly::{filtered_dim, Monomial};

    fn x_squared(n: usize) -> Polynomial {
        let mut e = vec![0u32; n];
        e[0] = 2;
        Polynomial::monomial(n, Monomial(e), qr(1))
    }

    #[test]
    fn two_squares_dimension_examples() {
        let c = fixtures::two_unit_squares();
        let eng = SplineEngine::new(&c);
        // r=1, d=2: 6 free coefficients on one square plus (x^2) on the other.
        assert_eq!(eng.spline_basis(1, 2, DegreeMode::Filtered).dim(), 7);
        // r >= d: only trivial splines.
        for (r, d) in [(2, 2), (3, 2), (5, 1)] {
            assert_eq!(
                eng.spline_basis(r, d, DegreeMode::Filtered).dim(),
                filtered_dim(2, d)
            );
        }
    }

    #[test]
    fn delta_plus_continuous_linear_splines_are_hat_functions() {
        let d = fixtures::delta_plus();
        let eng = SplineEngine::new(&d);
        let space = eng.spline_basis(0, 1, DegreeMode::Filtered);
        assert_eq!(space.dim(), 5);
        // Independent oracle: build the interpolation basis explicitly. A
        // continuous piecewise-linear function is determined by its vertex
        // values; for each vertex build the linear polynomial per triangle
        // taking value 1 there and 0 at the other vertices.
        let mut hats: Vec<Vec<BigRational>> = Vec::new();
        for v in 0..d.num_vertices() {
            let mut polys = Vec::new();
            for f in 0..d.num_facets() {
                let verts = d.facet_cycle(f);
                // Solve for a + bx + cy with prescribed values at 3 vertices.
                let a = crate::linalg::QMatrix::from_rows(
                    verts
                        .iter()
                        .map(|&w| {
                            vec![qr(1), d.vertex(w)[0].clone(), d.vertex(w)[1].clone()]
                        })
                        .collect(),
                );
                let target: Vec<BigRational> = verts
                    .iter()
                    .map(|&w| if w == v { qr(1) } else { qr(0) })
                    .collect();
                let cols: Vec<Vec<BigRational>> =
                    (0..3).map(|j| (0..3).map(|i| a[(i, j)].clone()).collect()).collect();
                let sol = solve_linear_system(&cols, &target).unwrap();
                let mut p = Polynomial::constant(2, sol[0].clone());
                p.add_term(Monomial(vec![1, 0]), sol[1].clone());
                p.add_term(Monomial(vec![0, 1]), sol[2].clone());
                polys.push(p);
            }
            eng.is_spline(0, &polys).expect("hat functions are C^0");
            hats.push(eng.coords_of(&polys, 1, DegreeMode::Filtered).unwrap());
        }
        let hat_span = Subspace::span(hats[0].len(), &hats);
        assert_eq!(hat_span, space.space);
    }

    #[test]
    fn trivial_splines_always_members() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        for (r, d) in [(0u32, 2u32), (1, 3), (2, 4)] {
            let space = eng.spline_basis(r, d, DegreeMode::Filtered);
            let basis = MonomialBasis::new(2, d, DegreeMode::Filtered);
            for m in basis.monomials() {
                let g = Polynomial::monomial(2, m.clone(), qr(1));
                let coords = eng
                    .coords_of(&vec![g; q.num_facets()], d, DegreeMode::Filtered)
                    .unwrap();
                assert!(space.space.contains(&coords), "monomial {m:?} missing");
            }
        }
    }

    #[test]
    fn is_spline_divisibility_cases() {
        let c = fixtures::two_unit_squares();
        let eng = SplineEngine::new(&c);
        for r in 0..3u32 {
            // (0, x^{r+1}) is a C^r spline across x = 0; (0, x^r) is not.
            let mut e = vec![0u32; 2];
            e[0] = r + 1;
            let good = vec![
                Polynomial::zero(2),
                Polynomial::monomial(2, Monomial(e.clone()), qr(1)),
            ];
            assert!(eng.is_spline(r, &good).is_ok());
            if r > 0 {
                e[0] = r;
                let bad = vec![
                    Polynomial::zero(2),
                    Polynomial::monomial(2, Monomial(e), qr(1)),
                ];
                assert!(eng.is_spline(r, &bad).is_err());
            }
        }
    }

    #[test]
    fn supported_basis_matches_augmented_full_system() {
        // Against the definitional construction: full spline space
        // intersected with "zero outside Q" by forcing outside coordinates.
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let sub = SubComplex::new([1, 4]); // {B, E}
        let supported = eng.supported_basis(&sub, 0, 3, DegreeMode::Filtered);
        let full = eng.spline_basis(0, 3, DegreeMode::Filtered);
        let fb = eng.facet_basis(3, DegreeMode::Filtered).len();
        let outside: Vec<usize> = (0..q.num_facets()).filter(|f| !sub.contains_facet(*f)).collect();
        let restricted: Vec<Vec<BigRational>> = full.space.basis().to_vec();
        // Solve: which combinations of the full basis vanish outside Q.
        let mut constraint_cols: Vec<Vec<BigRational>> = Vec::new();
        for b in &restricted {
            let col: Vec<BigRational> = outside
                .iter()
                .flat_map(|&f| b[f * fb..(f + 1) * fb].iter().cloned())
                .collect();
            constraint_cols.push(col);
        }
        let m = crate::linalg::QMatrix::from_rows(
            (0..outside.len() * fb)
                .map(|i| constraint_cols.iter().map(|c| c[i].clone()).collect())
                .collect(),
        );
        let coeff_kernel = crate::linalg::kernel_basis(&m);
        let mut vectors = Vec::new();
        for coeffs in coeff_kernel.basis() {
            let mut v = vec![BigRational::zero(); q.num_facets() * fb];
            for (c, b) in coeffs.iter().zip(&restricted) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            vectors.push(v);
        }
        let reference = Subspace::span(q.num_facets() * fb, &vectors);
        assert_eq!(supported.space, reference);
    }

    #[test]
    fn single_facet_shortcut_matches_kernel_path() {
        let t = fixtures::tn(2);
        let eng = SplineEngine::new(&t);
        let b = SubComplex::new([1]);
        for (r, d) in [(0u32, 2u32), (0, 4), (1, 4), (1, 5)] {
            for mode in [DegreeMode::Filtered, DegreeMode::Homogeneous] {
                let fast = eng.supported_basis(&b, r, d, mode);
                // Kernel path: same constraints via the generic system.
                let sys = eng.smoothness_rows(&b, r, d, mode);
                let vectors = sys.kernel_facet_vectors();
                let fb = eng.facet_basis(d, mode).len();
                let full: Vec<Vec<BigRational>> = vectors
                    .into_iter()
                    .map(|v| {
                        let mut out = vec![BigRational::zero(); t.num_facets() * fb];
                        out[fb..2 * fb].clone_from_slice(&v);
                        out
                    })
                    .collect();
                let reference = Subspace::span(t.num_facets() * fb, &full);
                assert_eq!(fast.space, reference, "r={r} d={d} mode={mode:?}");
            }
        }
    }

    #[test]
    fn tn_single_facet_first_degrees() {
        // Smallest d with a spline supported on B is n(r+1).
        for (n, r) in [(2usize, 0u32), (2, 1), (3, 0), (3, 1)] {
            let t = fixtures::tn(n);
            let eng = SplineEngine::new(&t);
            let b = SubComplex::new([1]);
            let expected = n as u32 * (r + 1);
            for d in 0..=expected + 1 {
                let dim = eng.supported_basis(&b, r, d, DegreeMode::Filtered).dim();
                if d < expected {
                    assert_eq!(dim, 0, "n={n} r={r} d={d}");
                } else if d == expected {
                    assert_eq!(dim, 1, "n={n} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn homogenization_preserves_dimension() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        for r in 0..2u32 {
            for d in 0..5u32 {
                assert_eq!(
                    eng.spline_basis(r, d, DegreeMode::Filtered).dim(),
                    eng.spline_basis(r, d, DegreeMode::Homogeneous).dim(),
                    "r={r} d={d}"
                );
            }
        }
    }

    #[test]
    fn homogenize_dehomogenize_roundtrip() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let unit = eng.unit_spline(2, DegreeMode::Filtered);
        let hom = eng.homogenize_spline(0, &unit, 2).unwrap();
        for p in &hom {
            assert!(p.is_homogeneous());
            assert_eq!(p.total_degree(), Some(2));
        }
        let back = eng.dehomogenize_spline(0, &hom, 2).unwrap();
        assert_eq!(back, unit);
        // x^2 * 1 is already homogeneous of degree 2.
        let xsq = vec![x_squared(2); 5];
        let hom = eng.homogenize_spline(0, &xsq, 2).unwrap();
        assert_eq!(hom, vec![x_squared(3); 5]);
    }

    #[test]
    fn ls_chain_and_graded_membership_on_q() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let (r, d) = (0u32, 2u32);
        let full = eng.spline_basis(r, d, DegreeMode::Filtered);
        let ls0 = eng.ls_space(r, 0, d, DegreeMode::Filtered, LatticeMode::Homogenized);
        let ls1 = eng.ls_space(r, 1, d, DegreeMode::Filtered, LatticeMode::Homogenized);
        let ls2 = eng.ls_space(r, 2, d, DegreeMode::Filtered, LatticeMode::Homogenized);
        assert!(ls0.space.is_subspace_of(&ls1.space));
        assert!(ls1.space.is_subspace_of(&ls2.space));
        assert!(ls2.space.is_subspace_of(&full.space));

        let unit = eng
            .coords_of(&eng.unit_spline(d, DegreeMode::Filtered), d, DegreeMode::Filtered)
            .unwrap();
        let xsq = eng
            .coords_of(&vec![x_squared(2); 5], d, DegreeMode::Filtered)
            .unwrap();
        let ls2_affine = eng.ls_space(r, 2, d, DegreeMode::Filtered, LatticeMode::Affine);
        // The unit decomposes over affine flats; x^2 * 1 needs infinity flats.
        assert!(ls2_affine.space.contains(&unit));
        assert!(!ls2_affine.space.contains(&xsq));
        assert!(ls2.space.contains(&xsq));
    }

    #[test]
    fn decompose_unit_on_q_with_affine_flats() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let unit = eng.unit_spline(2, DegreeMode::Filtered);
        let dec = eng
            .decompose(&unit, 0, 2, 2, LatticeMode::Affine)
            .unwrap()
            .expect("unit is affinely lattice-supported");
        assert!(!dec.summands.is_empty());
        let allowed = ["ABE", "BCE", "CDE", "ADE", "ABCD"];
        for (support, polys) in &dec.summands {
            let label = crate::complex::facet_set_label(support.facet_ids());
            assert!(allowed.contains(&label.as_str()), "unexpected support {label}");
            eng.is_spline(0, polys).expect("summands are splines");
            // Support correctness: zero outside the node.
            for (f, p) in polys.iter().enumerate() {
                if !support.contains_facet(f) {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn decompose_x_squared_needs_infinity_flats() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let xsq = vec![x_squared(2); 5];
        assert!(eng
            .decompose(&xsq, 0, 2, 2, LatticeMode::Affine)
            .unwrap()
            .is_none());
        let dec = eng
            .decompose(&xsq, 0, 2, 2, LatticeMode::Homogenized)
            .unwrap()
            .expect("x^2 is lattice-supported over the homogenized lattice");
        assert!(!dec.summands.is_empty());
    }

    #[test]
    fn decompose_roundtrip_of_basis_columns() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let ls = eng.ls_space(0, 2, 2, DegreeMode::Filtered, LatticeMode::Affine);
        for col in ls.space.basis().iter().take(3) {
            let polys = eng.polys_from_coords(col, 2, DegreeMode::Filtered);
            let dec = eng.decompose(&polys, 0, 2, 2, LatticeMode::Affine).unwrap();
            assert!(dec.is_some());
        }
    }

    #[test]
    fn multiplicative_closure() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let space1 = eng.spline_basis(0, 2, DegreeMode::Filtered);
        let space2 = eng.spline_basis(0, 3, DegreeMode::Filtered);
        let g = Polynomial::monomial(2, Monomial(vec![1, 0]), qr(1));
        for col in space1.space.basis().iter().take(4) {
            let polys = eng.polys_from_coords(col, 2, DegreeMode::Filtered);
            let scaled: Vec<Polynomial> = polys.iter().map(|p| p.mul(&g)).collect();
            let coords = eng.coords_of(&scaled, 3, DegreeMode::Filtered).unwrap();
            assert!(space2.space.contains(&coords));
        }
    }

    #[test]
    fn ls_space_equals_sum_over_maximal_gamma_nodes() {
        // The sum over all flats' components may be restricted to the
        // maximal nodes of the component poset without changing the space.
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        for flats in [LatticeMode::Affine, LatticeMode::Homogenized] {
            for k in [1usize, 2] {
                for d in [2u32, 3] {
                    let full = eng.ls_space(0, k, d, DegreeMode::Filtered, flats);
                    let gamma = eng.gamma(k, flats);
                    let supports: Vec<SubComplex> = gamma
                        .maximal
                        .iter()
                        .map(|&i| gamma.nodes[i].subcomplex.clone())
                        .collect();
                    let via_max = eng.sum_over_supports(supports, 0, d, DegreeMode::Filtered);
                    assert_eq!(full.space, via_max.space, "k={k} d={d} {flats:?}");
                }
            }
        }
    }

    #[test]
    fn flat_supported_examples_on_q() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let n = q.ambient_dim();
        let form = |c: &[i64]| {
            crate::arrangement::LinearForm::from_integers(c.to_vec()).unwrap()
        };
        // W = origin: the annulus carries a nonzero degree-2 supported spline.
        let xi = crate::arrangement::Flat::from_forms(
            n,
            &[form(&[1, 0, 0]), form(&[0, 1, 0])],
            LatticeMode::Affine,
        )
        .unwrap();
        let annulus = eng.flat_supported(&xi, 0, 2, DegreeMode::Filtered);
        assert!(annulus.dim() > 0);
        assert_eq!(
            annulus.support.facet_ids().iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        // W = alpha at infinity: support {A, C, E}, zero columns elsewhere.
        let alpha = crate::arrangement::Flat::from_forms(
            n,
            &[form(&[0, 1, -1]), form(&[0, 1, 1])],
            LatticeMode::Homogenized,
        )
        .unwrap();
        let ace = eng.flat_supported(&alpha, 0, 2, DegreeMode::Filtered);
        assert_eq!(
            ace.support.facet_ids().iter().copied().collect::<Vec<_>>(),
            vec![0, 2, 4]
        );
        let fb = eng.facet_basis(2, DegreeMode::Filtered).len();
        for v in ace.space.basis() {
            for f in [1usize, 3] {
                assert!(v[f * fb..(f + 1) * fb].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn flat_covering_whole_complex_recovers_full_space() {
        // On delta_plus the origin flat's lattice complex is the whole
        // complex, so the flat-supported space is all of C^r_d.
        let d = fixtures::delta_plus();
        let eng = SplineEngine::new(&d);
        let origin = crate::arrangement::Flat::from_forms(
            2,
            &[
                crate::arrangement::LinearForm::from_integers(vec![1, 0, 0]).unwrap(),
                crate::arrangement::LinearForm::from_integers(vec![0, 1, 0]).unwrap(),
            ],
            LatticeMode::Affine,
        )
        .unwrap();
        let comps = eng.components(&origin);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 4);
        for r in 0..=1u32 {
            for dd in 1..=3u32 {
                let supported = eng.flat_supported(&origin, r, dd, DegreeMode::Filtered);
                let full = eng.spline_basis(r, dd, DegreeMode::Filtered);
                assert_eq!(supported.space, full.space);
            }
        }
    }

    #[test]
    fn star_sum_on_delta_plus_spans_continuous_linears() {
        let d = fixtures::delta_plus();
        let eng = SplineEngine::new(&d);
        let stars = eng.star_sum(2, 0, 1, DegreeMode::Filtered).unwrap();
        let full = eng.spline_basis(0, 1, DegreeMode::Filtered);
        assert_eq!(stars.space, full.space);
    }

    #[test]
    fn star_sum_rejects_polytopal() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        assert!(matches!(
            eng.star_sum(2, 0, 2, DegreeMode::Filtered),
            Err(SplineError::Complex(ComplexError::NotSimplicial))
        ));
    }

    #[test]
    fn unit_not_in_interior_vertex_stars_on_q() {
        let q = fixtures::q();
        let eng = SplineEngine::new(&q);
        let interior_vertices: Vec<usize> = (0..q.num_vertices())
            .filter(|&v| {
                let id = q.face_id(&[v]).unwrap();
                q.face(id).interior
            })
            .collect();
        assert_eq!(interior_vertices.len(), 4);
        for d in 0..=4u32 {
            let sum = eng
                .vertex_star_sum(&interior_vertices, 0, d, DegreeMode::Filtered)
                .unwrap();
            let unit = eng
                .coords_of(&eng.unit_spline(d, DegreeMode::Filtered), d, DegreeMode::Filtered)
                .unwrap();
            assert!(!sum.space.contains(&unit), "unit must not be star-supported, d={d}");
        }
    }
}
