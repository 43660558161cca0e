//! The hyperplane arrangement spanned by the interior codimension-1 faces of
//! a complex: its intersection lattice (affine, or homogenized to pick up
//! flats at infinity), the restricted graphs and lattice complexes attached
//! to each flat, the inclusion poset of their components with its rank
//! function, and the star decomposition in the simplicial case.

use crate::complex::{ComplexError, ComplexKind, FaceId, FacetId, PolytopalComplex, SubComplex};
use crate::linalg::{kernel_basis, primitive_integer_vector, QMatrix, Subspace};
use crate::poly::{Monomial, Polynomial};
use num::{BigInt, BigRational, One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A primitive integer affine form a_1 x_1 + ... + a_n x_n + c, stored as
/// (a_1, ..., a_n, c). The same coefficient vector read with the trailing
/// entry as the coefficient of x_0 is the homogenized form, so
/// homogenization is a change of interpretation, not of data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    /// Canonicalize a rational coefficient vector: primitive integers, first
    /// nonzero coefficient positive. `None` for the zero form.
    pub fn from_rational(coeffs: &[BigRational]) -> Option<LinearForm> {
        primitive_integer_vector(coeffs).map(|coeffs| LinearForm { coeffs })
    }

    pub fn from_integers(coeffs: Vec<i64>) -> Option<LinearForm> {
        let v: Vec<BigRational> = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        LinearForm::from_rational(&v)
    }

    /// Coefficients (a_1..a_n, c).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[self.coeffs.len() - 1]
    }

    pub fn as_rational_vector(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn eval_affine(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ambient_dim());
        let mut acc = BigRational::from_integer(self.constant().clone());
        for (a, x) in self.coeffs.iter().zip(point) {
            acc += BigRational::from_integer(a.clone()) * x;
        }
        acc
    }

    /// The affine polynomial in n variables.
    pub fn to_affine_polynomial(&self) -> Polynomial {
        let n = self.ambient_dim();
        let mut p = Polynomial::zero(n);
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            p.add_term(Monomial::var(n, i), BigRational::from_integer(a.clone()));
        }
        p.add_term(
            Monomial::one(n),
            BigRational::from_integer(self.constant().clone()),
        );
        p
    }

    /// The homogeneous linear polynomial in n+1 variables, x_0 last.
    pub fn to_homogeneous_polynomial(&self) -> Polynomial {
        let n = self.ambient_dim();
        let mut p = Polynomial::zero(n + 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            p.add_term(
                Monomial::var(n + 1, i),
                BigRational::from_integer(a.clone()),
            );
        }
        p
    }

    pub fn to_polynomial(&self, mode: crate::poly::DegreeMode) -> Polynomial {
        match mode {
            crate::poly::DegreeMode::Filtered => self.to_affine_polynomial(),
            crate::poly::DegreeMode::Homogeneous => self.to_homogeneous_polynomial(),
        }
    }

    fn var_name(i: usize, n: usize) -> String {
        if n <= 3 {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    /// Render with the trailing coefficient written as a multiple of x0
    /// (the homogenized reading of the same data).
    pub fn to_string_homogeneous(&self) -> String {
        let n = self.ambient_dim();
        let mut parts = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let name = if i < n { Self::var_name(i, n) } else { "x0".to_string() };
            let abs = a.magnitude().to_string();
            let coeff = if abs == "1" { String::new() } else { abs };
            let sign = if a.sign() == num::bigint::Sign::Minus { "-" } else { "+" };
            parts.push((sign, format!("{coeff}{name}")));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (sign, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(body);
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ambient_dim();
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let name = if i < n {
                Self::var_name(i, n)
            } else {
                String::new()
            };
            let abs = a.magnitude().to_string();
            let coeff = if abs == "1" && i < n { String::new() } else { abs };
            if first {
                if a.sign() == num::bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if a.sign() == num::bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which arrangement the lattice is built from: affine spans in R^n, or
/// their homogenizations (central hyperplanes in R^{n+1}, equivalently the
/// projective closure that adds flats at infinity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum LatticeMode {
    #[serde(rename = "affine")]
    Affine,
    #[serde(rename = "homogenized")]
    Homogenized,
}

/// A flat of the arrangement, represented by the span of the linear forms
/// vanishing on it, in canonical reduced echelon form. Rank = codimension =
/// number of basis forms. Equality of flats is equality of the structs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    rank: usize,
    /// Primitive integer RREF rows, each of length n+1.
    basis: Vec<Vec<BigInt>>,
    at_infinity: bool,
}

impl Flat {
    pub fn whole_space(ambient_dim: usize) -> Flat {
        let _ = ambient_dim;
        Flat { rank: 0, basis: Vec::new(), at_infinity: false }
    }

    /// Canonical flat spanned by the given forms. Returns `None` in affine
    /// mode when the span is inconsistent (empty intersection), and in
    /// homogenized mode when the span has full rank n+1 (only the origin,
    /// which projectively is empty).
    pub fn from_forms(ambient_dim: usize, forms: &[LinearForm], mode: LatticeMode) -> Option<Flat> {
        let vectors: Vec<Vec<BigRational>> =
            forms.iter().map(LinearForm::as_rational_vector).collect();
        Flat::from_span(ambient_dim, &Subspace::span(ambient_dim + 1, &vectors), mode)
    }

    fn from_span(ambient_dim: usize, span: &Subspace, mode: LatticeMode) -> Option<Flat> {
        let mut constant_form = vec![BigRational::zero(); ambient_dim + 1];
        constant_form[ambient_dim] = BigRational::one();
        let contains_x0 = span.contains(&constant_form);
        match mode {
            LatticeMode::Affine => {
                if contains_x0 {
                    return None;
                }
            }
            LatticeMode::Homogenized => {
                if span.dim() > ambient_dim {
                    return None;
                }
            }
        }
        let basis = span
            .basis()
            .iter()
            .map(|row| primitive_integer_vector(row).expect("nonzero RREF row"))
            .collect();
        Some(Flat {
            rank: span.dim(),
            basis,
            at_infinity: contains_x0 && mode == LatticeMode::Homogenized,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn at_infinity(&self) -> bool {
        self.at_infinity
    }

    /// Canonical generating forms. Basis rows are primitive with positive
    /// leading entry already (they come from leading-one RREF rows).
    pub fn generators(&self) -> Vec<LinearForm> {
        self.basis
            .iter()
            .map(|row| LinearForm { coeffs: row.clone() })
            .collect()
    }

    fn span(&self) -> Subspace {
        let ambient = self.basis.first().map_or(0, Vec::len);
        Subspace::span(
            ambient,
            &self
                .basis
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| BigRational::from_integer(c.clone()))
                        .collect()
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Does the form vanish on this flat, i.e. lie in the flat's span?
    pub fn contains_form(&self, form: &LinearForm) -> bool {
        if self.rank == 0 {
            return false;
        }
        self.span().contains(&form.as_rational_vector())
    }

    /// Is `self` a subflat of `other` as a span (reverse inclusion of the
    /// geometric flats: larger span = smaller flat)?
    pub fn span_contained_in(&self, other: &Flat) -> bool {
        if self.rank == 0 {
            return true;
        }
        if other.rank < self.rank {
            return false;
        }
        let other_span = other.span();
        self.generators()
            .iter()
            .all(|g| other_span.contains(&g.as_rational_vector()))
    }

    pub fn describe(&self) -> String {
        if self.rank == 0 {
            return "whole space".to_string();
        }
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                if self.at_infinity {
                    g.to_string_homogeneous()
                } else {
                    g.to_string()
                }
            })
            .collect();
        gens.join(", ")
    }
}

/// Primitive forms spanning the affine forms that vanish on a set of
/// vertices (the degree-1 part of I(aff(vertex set))).
pub fn affine_span_forms(p: &PolytopalComplex, vertex_ids: &[usize]) -> Vec<LinearForm> {
    let rows: Vec<Vec<BigRational>> = vertex_ids
        .iter()
        .map(|&v| {
            let mut row: Vec<BigRational> = p.vertex(v).to_vec();
            row.push(BigRational::one());
            row
        })
        .collect();
    kernel_basis(&QMatrix::from_rows(rows))
        .basis()
        .iter()
        .filter_map(|v| LinearForm::from_rational(v))
        .collect()
}

/// The canonical primitive form vanishing on the affine span of a
/// codimension-1 face.
pub fn edge_form(p: &PolytopalComplex, face: FaceId) -> Result<LinearForm, ComplexError> {
    let f = p.face(face);
    if f.dim != p.ambient_dim() - 1 {
        return Err(ComplexError::NoSuchFace(f.vertex_ids.clone()));
    }
    let forms = affine_span_forms(p, &f.vertex_ids);
    if forms.len() != 1 {
        return Err(ComplexError::NoSuchFace(f.vertex_ids.clone()));
    }
    Ok(forms.into_iter().next().unwrap())
}

/// Distinct canonical forms of the interior codim-1 faces (the hyperplanes
/// of the arrangement A(P)), sorted, plus the face -> form assignment.
pub fn arrangement_forms(p: &PolytopalComplex) -> (Vec<LinearForm>, BTreeMap<FaceId, LinearForm>) {
    let mut per_face = BTreeMap::new();
    let mut set = BTreeSet::new();
    for face in p.interior_codim1() {
        let form = edge_form(p, face).expect("interior codim-1 faces have spans");
        set.insert(form.clone());
        per_face.insert(face, form);
    }
    (set.into_iter().collect(), per_face)
}

/// The intersection (semi)lattice of the arrangement, including the rank-0
/// whole space as bottom element. Affine mode omits empty intersections;
/// homogenized mode works with the homogenized central arrangement and so
/// also contains the flats at infinity (projectively; the origin-only flat
/// of rank n+1 is not a projective flat and is excluded).
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    pub mode: LatticeMode,
    pub ambient_dim: usize,
    /// Flats sorted by (rank, canonical basis); index is the flat id.
    pub flats: Vec<Flat>,
    /// Hasse cover edges (lower id, upper id), by span inclusion.
    pub hasse: Vec<(usize, usize)>,
    /// For each flat, the ids of the rank-1 flats (hyperplanes) above the
    /// bottom that contain it, i.e. whose form vanishes on it.
    pub incident_hyperplanes: Vec<Vec<usize>>,
}

impl IntersectionLattice {
    pub fn build(p: &PolytopalComplex, mode: LatticeMode) -> IntersectionLattice {
        let (hyperplanes, _) = arrangement_forms(p);
        let n = p.ambient_dim();
        let mut found: BTreeSet<Flat> = BTreeSet::new();
        found.insert(Flat::whole_space(n));
        let mut frontier: Vec<Flat> = Vec::new();
        for h in &hyperplanes {
            if let Some(f) = Flat::from_forms(n, std::slice::from_ref(h), mode) {
                if found.insert(f.clone()) {
                    frontier.push(f);
                }
            }
        }
        while let Some(flat) = frontier.pop() {
            for h in &hyperplanes {
                if flat.contains_form(h) {
                    continue;
                }
                let mut forms = flat.generators();
                forms.push(h.clone());
                if let Some(new_flat) = Flat::from_forms(n, &forms, mode) {
                    if found.insert(new_flat.clone()) {
                        frontier.push(new_flat);
                    }
                }
            }
        }
        let flats: Vec<Flat> = found.into_iter().collect();
        let mut hasse = Vec::new();
        for i in 0..flats.len() {
            for j in 0..flats.len() {
                if flats[i].rank() < flats[j].rank() && flats[i].span_contained_in(&flats[j]) {
                    let covered = (0..flats.len()).any(|k| {
                        flats[k].rank() > flats[i].rank()
                            && flats[k].rank() < flats[j].rank()
                            && flats[i].span_contained_in(&flats[k])
                            && flats[k].span_contained_in(&flats[j])
                    });
                    if !covered {
                        hasse.push((i, j));
                    }
                }
            }
        }
        let rank1: Vec<usize> = (0..flats.len()).filter(|&i| flats[i].rank() == 1).collect();
        let incident_hyperplanes = flats
            .iter()
            .map(|f| {
                rank1
                    .iter()
                    .copied()
                    .filter(|&h| flats[h].span_contained_in(f))
                    .collect()
            })
            .collect();
        IntersectionLattice {
            mode,
            ambient_dim: n,
            flats,
            hasse,
            incident_hyperplanes,
        }
    }

    pub fn flats_of_rank(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.flats.len()).filter(move |&i| self.flats[i].rank() == rank)
    }

    pub fn flat_id(&self, flat: &Flat) -> Option<usize> {
        self.flats.iter().position(|f| f == flat)
    }
}

/// The subcomplexes dual to the connected components of the graph G_{I(W)}:
/// facets with a codim-1 interior face whose form vanishes on W, joined
/// along such faces. For the rank-0 flat every facet is its own singleton
/// component. Components are sorted by facet set.
pub fn restriction_components(p: &PolytopalComplex, flat: &Flat) -> Vec<SubComplex> {
    let (_, per_face) = arrangement_forms(p);
    restriction_components_with_forms(p, flat, &per_face)
}

/// As [`restriction_components`], with the interior-face forms precomputed
/// (they do not depend on the flat).
pub fn restriction_components_with_forms(
    p: &PolytopalComplex,
    flat: &Flat,
    per_face: &BTreeMap<FaceId, LinearForm>,
) -> Vec<SubComplex> {
    if flat.rank() == 0 {
        return (0..p.num_facets()).map(|f| SubComplex::new([f])).collect();
    }
    let qualifying: Vec<FaceId> = per_face
        .iter()
        .filter(|(_, form)| flat.contains_form(form))
        .map(|(&face, _)| face)
        .collect();
    let mut adjacent: BTreeMap<FacetId, Vec<FacetId>> = BTreeMap::new();
    for &face in &qualifying {
        let facets = p.facets_containing(face);
        adjacent.entry(facets[0]).or_default().push(facets[1]);
        adjacent.entry(facets[1]).or_default().push(facets[0]);
    }
    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    for &start in adjacent.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut component = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            component.insert(v);
            stack.extend(adjacent[&v].iter().copied());
        }
        components.push(SubComplex::new(component));
    }
    components.sort();
    components
}

/// A flat together with the components of its lattice complex P_W
/// (disjoint-union semantics: components may share codim-1 faces in P).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeComplex {
    pub flat: Flat,
    pub components: Vec<SubComplex>,
}

pub fn lattice_complex_for_flat(p: &PolytopalComplex, flat: &Flat) -> LatticeComplex {
    LatticeComplex {
        flat: flat.clone(),
        components: restriction_components(p, flat),
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FlatError {
    #[error("interior faces of the subcomplex have an empty affine intersection; use the homogenized lattice")]
    InconsistentAffineSpan,
}

/// The unique minimal flat W with P_{I(W)} containing the given subcomplexes
/// among its components: the span of the forms of all their interior codim-1
/// faces. Returns the rank-0 whole space when there are none.
pub fn minimal_flat(
    p: &PolytopalComplex,
    parts: &[SubComplex],
    mode: LatticeMode,
) -> Result<Flat, FlatError> {
    let mut forms = Vec::new();
    for part in parts {
        for face in part.interior_codim1(p) {
            forms.push(edge_form(p, face).expect("valid codim-1 face"));
        }
    }
    if forms.is_empty() {
        return Ok(Flat::whole_space(p.ambient_dim()));
    }
    Flat::from_forms(p.ambient_dim(), &forms, mode).ok_or(FlatError::InconsistentAffineSpan)
}

/// A node of the Gamma poset: a component of some lattice complex, with its
/// Gamma-rank (the minimal rank of a flat producing it; 0 exactly for the
/// single-facet nodes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaNode {
    pub subcomplex: SubComplex,
    pub gamma_rank: usize,
    /// Ids (in the source lattice) of the flats of minimal rank whose
    /// lattice complex has this node as a component.
    pub witness_flats: Vec<usize>,
}

/// The inclusion poset of all components of all lattice complexes P_W for
/// rk(W) <= k, ordered by facet-set inclusion.
#[derive(Debug, Clone)]
pub struct GammaPoset {
    pub mode: LatticeMode,
    pub k: usize,
    /// Nodes sorted by (gamma_rank, facet set).
    pub nodes: Vec<GammaNode>,
    /// Hasse cover edges (lower, upper) by strict facet-set inclusion.
    pub hasse: Vec<(usize, usize)>,
    /// Indices of the maximal nodes (the antichain Gamma^{k,max}).
    pub maximal: Vec<usize>,
}

pub fn gamma_poset(p: &PolytopalComplex, k: usize, mode: LatticeMode) -> GammaPoset {
    let lattice = IntersectionLattice::build(p, mode);
    gamma_poset_from_lattice(p, k, &lattice)
}

pub fn gamma_poset_from_lattice(
    p: &PolytopalComplex,
    k: usize,
    lattice: &IntersectionLattice,
) -> GammaPoset {
    let mut node_map: BTreeMap<SubComplex, (usize, Vec<usize>)> = BTreeMap::new();
    let mut by_rank: Vec<usize> = (0..lattice.flats.len()).collect();
    by_rank.sort_by_key(|&i| (lattice.flats[i].rank(), i));
    for &fi in &by_rank {
        let flat = &lattice.flats[fi];
        if flat.rank() > k {
            continue;
        }
        for component in restriction_components(p, flat) {
            let entry = node_map
                .entry(component)
                .or_insert_with(|| (flat.rank(), Vec::new()));
            if entry.0 == flat.rank() {
                entry.1.push(fi);
            }
        }
    }
    let mut nodes: Vec<GammaNode> = node_map
        .into_iter()
        .map(|(subcomplex, (gamma_rank, witness_flats))| GammaNode {
            subcomplex,
            gamma_rank,
            witness_flats,
        })
        .collect();
    nodes.sort_by(|a, b| {
        (a.gamma_rank, &a.subcomplex).cmp(&(b.gamma_rank, &b.subcomplex))
    });
    let mut hasse = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j || !nodes[i].subcomplex.is_subset_of(&nodes[j].subcomplex) {
                continue;
            }
            let covered = (0..nodes.len()).any(|m| {
                m != i
                    && m != j
                    && nodes[i].subcomplex.is_subset_of(&nodes[m].subcomplex)
                    && nodes[m].subcomplex.is_subset_of(&nodes[j].subcomplex)
            });
            if !covered {
                hasse.push((i, j));
            }
        }
    }
    let maximal: Vec<usize> = (0..nodes.len())
        .filter(|&i| {
            !(0..nodes.len())
                .any(|j| j != i && nodes[i].subcomplex.is_subset_of(&nodes[j].subcomplex))
        })
        .collect();
    GammaPoset {
        mode: lattice.mode,
        k,
        nodes,
        hasse,
        maximal,
    }
}

impl GammaPoset {
    /// Node counts per Gamma-rank, from rank 0 up.
    pub fn row_sizes(&self) -> Vec<usize> {
        let max_rank = self.nodes.iter().map(|n| n.gamma_rank).max().unwrap_or(0);
        let mut rows = vec![0; max_rank + 1];
        for n in &self.nodes {
            rows[n.gamma_rank] += 1;
        }
        rows
    }

    pub fn node_labels(&self) -> Vec<String> {
        self.nodes
            .iter()
            .map(|n| crate::complex::facet_set_label(n.subcomplex.facet_ids()))
            .collect()
    }

    pub fn maximal_labels(&self) -> Vec<String> {
        self.maximal
            .iter()
            .map(|&i| crate::complex::facet_set_label(self.nodes[i].subcomplex.facet_ids()))
            .collect()
    }
}

/// The faces S(W) of a simplicial complex: minimal faces whose affine span
/// contains the flat W, together with the verification pairing against the
/// components of Delta_W.
#[derive(Debug, Clone)]
pub struct StarDecomposition {
    /// Face ids of S(W), sorted.
    pub s_faces: Vec<FaceId>,
    /// (face in S(W), component of Delta_W equal to its star), for the faces
    /// whose star meets Delta_W.
    pub pairing: Vec<(FaceId, SubComplex)>,
    /// Faces of S(W) whose star is disjoint from Delta_W (their stars cover
    /// the facets outside Delta_W).
    pub strays: Vec<FaceId>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StarSetError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("star decomposition mismatch: {0}")]
    Mismatch(String),
}

/// The affine span forms of every face, keyed by face id (flat-independent;
/// precompute once when probing many flats).
pub fn face_span_forms(p: &PolytopalComplex) -> Vec<Vec<LinearForm>> {
    (0..p.faces().len())
        .map(|f| affine_span_forms(p, &p.face(f).vertex_ids))
        .collect()
}

/// Compute S(W) = minimal faces whose span contains W and verify that the
/// components of Delta_W are exactly the stars of the members of S(W) whose
/// star meets Delta_W, and that the stars of S(W) partition all facets.
pub fn star_set(p: &PolytopalComplex, flat: &Flat) -> Result<StarDecomposition, StarSetError> {
    star_set_with_spans(p, flat, &face_span_forms(p))
}

/// As [`star_set`], with the per-face span forms precomputed.
pub fn star_set_with_spans(
    p: &PolytopalComplex,
    flat: &Flat,
    spans: &[Vec<LinearForm>],
) -> Result<StarDecomposition, StarSetError> {
    if p.kind() != ComplexKind::Simplicial {
        return Err(ComplexError::NotSimplicial.into());
    }
    let flat_span = Subspace::span(
        p.ambient_dim() + 1,
        &flat
            .generators()
            .iter()
            .map(LinearForm::as_rational_vector)
            .collect::<Vec<_>>(),
    );
    // W is contained in aff(tau) iff every form vanishing on aff(tau)
    // vanishes on W, i.e. lies in the flat's span.
    let qualifies = |face: FaceId| -> bool {
        spans[face]
            .iter()
            .all(|f| flat_span.contains(&f.as_rational_vector()))
    };
    let qualifying: BTreeSet<FaceId> = (0..p.faces().len()).filter(|&f| qualifies(f)).collect();
    let mut s_faces = Vec::new();
    'faces: for &f in &qualifying {
        let verts = &p.face(f).vertex_ids;
        if verts.len() > 1 {
            for skip in 0..verts.len() {
                let sub: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let sub_id = p.face_id(&sub).expect("subfaces of simplices exist");
                if qualifying.contains(&sub_id) {
                    continue 'faces;
                }
            }
        }
        s_faces.push(f);
    }

    // Verification against the components of Delta_W.
    let components = restriction_components(p, flat);
    let mut pairing = Vec::new();
    let mut strays = Vec::new();
    let mut covered: BTreeSet<FacetId> = BTreeSet::new();
    for &f in &s_faces {
        let star = p.star(f);
        for &facet in star.facet_ids() {
            if !covered.insert(facet) {
                return Err(StarSetError::Mismatch(format!(
                    "stars of S(W) overlap at facet {facet}"
                )));
            }
        }
        if let Some(c) = components.iter().find(|c| *c == &star) {
            pairing.push((f, c.clone()));
        } else if components
            .iter()
            .any(|c| star.facet_ids().iter().any(|fx| c.contains_facet(*fx)))
        {
            return Err(StarSetError::Mismatch(format!(
                "star of face {:?} meets Delta_W but is not a component",
                p.face(f).vertex_ids
            )));
        } else {
            strays.push(f);
        }
    }
    if covered.len() != p.num_facets() {
        return Err(StarSetError::Mismatch(
            "stars of S(W) do not cover all facets".to_string(),
        ));
    }
    if pairing.len() != components.len() {
        return Err(StarSetError::Mismatch(format!(
            "{} components but {} matched stars",
            components.len(),
            pairing.len()
        )));
    }
    Ok(StarDecomposition { s_faces, pairing, strays })
}

/// The polynomial vanishing to first order on the boundary of Q away from
/// the boundary of P: the product of the edge forms over codim-1 faces of
/// the subcomplex boundary that are interior to P. Affine, in n variables;
/// degree = number of such faces. Returns 1 for Q = P.
pub fn boundary_form(p: &PolytopalComplex, q: &SubComplex) -> Polynomial {
    let mut result = Polynomial::one(p.ambient_dim());
    for face in q.boundary_codim1_not_in_parent_boundary(p) {
        let form = edge_form(p, face).expect("valid codim-1 face");
        result = result.mul(&form.to_affine_polynomial());
    }
    result
}
