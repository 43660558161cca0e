//! Pure hereditary polytopal complexes: planar polytopal complexes and
//! simplicial complexes in any dimension, with derived face posets,
//! interior/boundary classification, stars, and dual graphs.
//!
//! All types are immutable after construction and all operations are pure.

use crate::lp::{simplex_maximize, LpOutcome};
use num::{BigRational, One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type VertexId = usize;
pub type FaceId = usize;
/// Index of a facet in input order (also the source of its label).
pub type FacetId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ComplexKind {
    #[serde(rename = "polytopal2d")]
    Polytopal2d,
    #[serde(rename = "simplicial")]
    Simplicial,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertices {0} and {1} have identical coordinates")]
    DuplicateVertex(VertexId, VertexId),
    #[error("vertex {0} has {1} coordinates, expected ambient dimension {2}")]
    WrongCoordinateCount(VertexId, usize, usize),
    #[error("polytopal2d complexes require ambient dimension 2, got {0}")]
    BadPolytopalDimension(usize),
    #[error("facet {0} references unknown vertex {1}")]
    UnknownVertex(FacetId, usize),
    #[error("facet {0} repeats vertex {1}")]
    RepeatedVertex(FacetId, VertexId),
    #[error("facet {0} has {1} vertices; a polygon needs at least 3")]
    PolygonTooSmall(FacetId, usize),
    #[error("facet {0} is not a strictly convex polygon in counterclockwise order")]
    NotConvexCcw(FacetId),
    #[error("facet {0} has {1} vertices; an {2}-simplex needs {3}")]
    WrongSimplexSize(FacetId, usize, usize, usize),
    #[error("facet {0} is a degenerate simplex (affinely dependent vertices)")]
    DegenerateSimplex(FacetId),
    #[error("facet {0} is contained in facet {1}; complex is not pure")]
    FacetContained(FacetId, FacetId),
    #[error("facets {0} and {1} do not intersect in a common face")]
    IntersectionNotCommonFace(FacetId, FacetId),
    #[error("codimension-1 face {{{0:?}}} lies in {1} facets; complex is not a manifold")]
    NonManifold(Vec<VertexId>, usize),
    #[error("face {0:?} is not a face of the complex")]
    NoSuchFace(Vec<VertexId>),
    #[error("operation requires a simplicial complex")]
    NotSimplicial,
    #[error("empty complex (no facets)")]
    Empty,
}

/// A face, identified by its sorted vertex-id set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_ids: Vec<VertexId>,
    pub dim: usize,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopalComplex {
    ambient_dim: usize,
    kind: ComplexKind,
    vertices: Vec<Vec<BigRational>>,
    /// Vertex cycles as given in the input (CCW for polytopal2d).
    facet_cycles: Vec<Vec<VertexId>>,
    /// All faces, sorted lexicographically by vertex ids; the sort order is
    /// the face id.
    faces: Vec<Face>,
    face_index: BTreeMap<Vec<VertexId>, FaceId>,
    /// Facets containing each face, sorted.
    face_facets: Vec<Vec<FacetId>>,
}

fn cross2(o: &[BigRational], a: &[BigRational], b: &[BigRational]) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

impl PolytopalComplex {
    pub fn new(
        ambient_dim: usize,
        kind: ComplexKind,
        vertices: Vec<Vec<BigRational>>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        if kind == ComplexKind::Polytopal2d && ambient_dim != 2 {
            return Err(ComplexError::BadPolytopalDimension(ambient_dim));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(ComplexError::WrongCoordinateCount(i, v.len(), ambient_dim));
            }
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(ComplexError::DuplicateVertex(i, j));
                }
            }
        }
        for (fi, cycle) in facets.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in cycle {
                if v >= vertices.len() {
                    return Err(ComplexError::UnknownVertex(fi, v));
                }
                if !seen.insert(v) {
                    return Err(ComplexError::RepeatedVertex(fi, v));
                }
            }
        }
        let complex = PolytopalComplex {
            ambient_dim,
            kind,
            vertices,
            facet_cycles: facets,
            faces: Vec::new(),
            face_index: BTreeMap::new(),
            face_facets: Vec::new(),
        };
        complex.check_facet_shapes()?;
        complex.check_purity()?;
        complex.check_pairwise_intersections()?;
        complex.derive_faces()
    }

    fn check_facet_shapes(&self) -> Result<(), ComplexError> {
        match self.kind {
            ComplexKind::Polytopal2d => {
                for (fi, cycle) in self.facet_cycles.iter().enumerate() {
                    let k = cycle.len();
                    if k < 3 {
                        return Err(ComplexError::PolygonTooSmall(fi, k));
                    }
                    // Strict convexity, CCW orientation, no collinear triples.
                    for i in 0..k {
                        let o = &self.vertices[cycle[i]];
                        let a = &self.vertices[cycle[(i + 1) % k]];
                        let b = &self.vertices[cycle[(i + 2) % k]];
                        if !cross2(o, a, b).is_positive() {
                            return Err(ComplexError::NotConvexCcw(fi));
                        }
                    }
                }
            }
            ComplexKind::Simplicial => {
                let n = self.ambient_dim;
                for (fi, cycle) in self.facet_cycles.iter().enumerate() {
                    if cycle.len() != n + 1 {
                        return Err(ComplexError::WrongSimplexSize(fi, cycle.len(), n, n + 1));
                    }
                    let rows: Vec<Vec<BigRational>> = cycle[1..]
                        .iter()
                        .map(|&v| {
                            (0..n)
                                .map(|c| &self.vertices[v][c] - &self.vertices[cycle[0]][c])
                                .collect()
                        })
                        .collect();
                    if crate::linalg::QMatrix::from_rows(rows).rank() != n {
                        return Err(ComplexError::DegenerateSimplex(fi));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_purity(&self) -> Result<(), ComplexError> {
        let sets: Vec<BTreeSet<VertexId>> = self
            .facet_cycles
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && sets[i].is_subset(&sets[j]) {
                    return Err(ComplexError::FacetContained(i, j));
                }
            }
        }
        Ok(())
    }

    /// Exact check that conv(facet i) and conv(facet j) meet in exactly the
    /// convex hull of their common vertices, which must itself be a common
    /// face. Reduces to a tiny rational LP: over pairs of convex combinations
    /// producing the same point, maximize the total weight on non-shared
    /// vertices of facet i; validity is optimum zero (or infeasibility, when
    /// no vertex is shared).
    fn check_pairwise_intersections(&self) -> Result<(), ComplexError> {
        for i in 0..self.facet_cycles.len() {
            for j in i + 1..self.facet_cycles.len() {
                let vi = &self.facet_cycles[i];
                let vj = &self.facet_cycles[j];
                let common: BTreeSet<VertexId> = vi
                    .iter()
                    .filter(|v| vj.contains(v))
                    .copied()
                    .collect();
                if !self.is_combinatorial_face(i, &common) || !self.is_combinatorial_face(j, &common)
                {
                    return Err(ComplexError::IntersectionNotCommonFace(i, j));
                }
                let n = self.ambient_dim;
                let cols = vi.len() + vj.len();
                let mut a = vec![vec![BigRational::zero(); cols]; n + 2];
                for (c, &v) in vi.iter().enumerate() {
                    for r in 0..n {
                        a[r][c] = self.vertices[v][r].clone();
                    }
                    a[n][c] = BigRational::one();
                }
                for (c, &v) in vj.iter().enumerate() {
                    for r in 0..n {
                        a[r][vi.len() + c] = -self.vertices[v][r].clone();
                    }
                    a[n + 1][vi.len() + c] = BigRational::one();
                }
                let mut b = vec![BigRational::zero(); n + 2];
                b[n] = BigRational::one();
                b[n + 1] = BigRational::one();
                let c_obj: Vec<BigRational> = vi
                    .iter()
                    .map(|v| {
                        if common.contains(v) {
                            BigRational::zero()
                        } else {
                            BigRational::one()
                        }
                    })
                    .chain(std::iter::repeat_n(BigRational::zero(), vj.len()))
                    .collect();
                match simplex_maximize(&a, &b, &c_obj) {
                    LpOutcome::Infeasible => {
                        if !common.is_empty() {
                            // Shared vertices guarantee feasibility.
                            unreachable!("LP infeasible despite shared vertices");
                        }
                    }
                    LpOutcome::Optimal(v) => {
                        if common.is_empty() || !v.is_zero() {
                            return Err(ComplexError::IntersectionNotCommonFace(i, j));
                        }
                    }
                    LpOutcome::Unbounded => unreachable!("bounded feasible region"),
                }
            }
        }
        Ok(())
    }

    /// Is `set` the vertex set of a face of facet `fi` (empty, vertex, edge,
    /// ... up to the facet itself)?
    fn is_combinatorial_face(&self, fi: FacetId, set: &BTreeSet<VertexId>) -> bool {
        let cycle = &self.facet_cycles[fi];
        match self.kind {
            ComplexKind::Simplicial => true, // every vertex subset of a simplex is a face
            ComplexKind::Polytopal2d => match set.len() {
                0 | 1 => true,
                2 => {
                    let k = cycle.len();
                    (0..k).any(|i| {
                        let e = BTreeSet::from([cycle[i], cycle[(i + 1) % k]]);
                        e == *set
                    })
                }
                l if l == cycle.len() => true,
                _ => false,
            },
        }
    }

    fn derive_faces(mut self) -> Result<Self, ComplexError> {
        let mut face_map: BTreeMap<Vec<VertexId>, BTreeSet<FacetId>> = BTreeMap::new();
        let mut add = |verts: Vec<VertexId>, fi: FacetId| {
            face_map.entry(verts).or_default().insert(fi);
        };
        for (fi, cycle) in self.facet_cycles.iter().enumerate() {
            match self.kind {
                ComplexKind::Polytopal2d => {
                    let k = cycle.len();
                    for &v in cycle {
                        add(vec![v], fi);
                    }
                    for i in 0..k {
                        let mut e = vec![cycle[i], cycle[(i + 1) % k]];
                        e.sort_unstable();
                        add(e, fi);
                    }
                    let mut all = cycle.clone();
                    all.sort_unstable();
                    add(all, fi);
                }
                ComplexKind::Simplicial => {
                    let mut sorted = cycle.clone();
                    sorted.sort_unstable();
                    // All nonempty subsets.
                    for mask in 1u32..(1 << sorted.len()) {
                        let sub: Vec<VertexId> = sorted
                            .iter()
                            .enumerate()
                            .filter(|(b, _)| mask & (1 << b) != 0)
                            .map(|(_, &v)| v)
                            .collect();
                        add(sub, fi);
                    }
                }
            }
        }
        let n = self.ambient_dim;
        // Interior codim-1 faces lie in exactly two facets; three or more is
        // a manifold violation.
        for (verts, facets) in &face_map {
            let dim = self.face_dim(verts);
            if dim == n - 1 && facets.len() > 2 {
                return Err(ComplexError::NonManifold(verts.clone(), facets.len()));
            }
        }
        let boundary_codim1: Vec<&Vec<VertexId>> = face_map
            .iter()
            .filter(|(verts, facets)| self.face_dim(verts) == n - 1 && facets.len() == 1)
            .map(|(verts, _)| verts)
            .collect();
        let mut faces = Vec::with_capacity(face_map.len());
        let mut face_facets = Vec::with_capacity(face_map.len());
        let mut face_index = BTreeMap::new();
        for (verts, facets) in &face_map {
            let dim = self.face_dim(verts);
            let interior = if dim == n {
                true
            } else if dim == n - 1 {
                facets.len() == 2
            } else {
                !boundary_codim1
                    .iter()
                    .any(|b| verts.iter().all(|v| b.contains(v)))
            };
            face_index.insert(verts.clone(), faces.len());
            faces.push(Face { vertex_ids: verts.clone(), dim, interior });
            face_facets.push(facets.iter().copied().collect());
        }
        self.faces = faces;
        self.face_index = face_index;
        self.face_facets = face_facets;
        Ok(self)
    }

    fn face_dim(&self, verts: &[VertexId]) -> usize {
        match self.kind {
            ComplexKind::Simplicial => verts.len() - 1,
            ComplexKind::Polytopal2d => match verts.len() {
                1 => 0,
                2 => 1,
                _ => 2,
            },
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: VertexId) -> &[BigRational] {
        &self.vertices[id]
    }

    pub fn num_facets(&self) -> usize {
        self.facet_cycles.len()
    }

    /// Vertex cycle of a facet as given in the input (CCW for polytopal2d).
    pub fn facet_cycle(&self, fi: FacetId) -> &[VertexId] {
        &self.facet_cycles[fi]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, verts: &[VertexId]) -> Option<FaceId> {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        self.face_index.get(&sorted).copied()
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].dim == dim)
    }

    /// Interior codimension-1 face ids, sorted.
    pub fn interior_codim1(&self) -> Vec<FaceId> {
        let n = self.ambient_dim;
        self.faces_of_dim(n - 1)
            .filter(|&i| self.faces[i].interior)
            .collect()
    }

    /// Facets containing a face, sorted by facet id.
    pub fn facets_containing(&self, face: FaceId) -> &[FacetId] {
        &self.face_facets[face]
    }

    /// The star of a face: the subcomplex generated by all facets containing
    /// it.
    pub fn star(&self, face: FaceId) -> SubComplex {
        SubComplex {
            facet_ids: self.face_facets[face].iter().copied().collect(),
        }
    }

    pub fn star_of_vertices(&self, verts: &[VertexId]) -> Result<SubComplex, ComplexError> {
        let id = self
            .face_id(verts)
            .ok_or_else(|| ComplexError::NoSuchFace(verts.to_vec()))?;
        Ok(self.star(id))
    }

    pub fn full_subcomplex(&self) -> SubComplex {
        SubComplex {
            facet_ids: (0..self.num_facets()).collect(),
        }
    }

    pub fn dual_graph(&self) -> DualGraph {
        self.full_subcomplex().dual_graph(self)
    }

    pub fn is_hereditary(&self) -> Option<Vec<VertexId>> {
        for id in 0..self.faces.len() {
            let star = self.star(id);
            if !star.dual_graph(self).is_connected() {
                return Some(self.faces[id].vertex_ids.clone());
            }
        }
        None
    }

    pub fn validate(&self) -> ValidationReport {
        let witness = self.is_hereditary();
        ValidationReport {
            pure: true,
            manifold_ok: true,
            hereditary: witness.is_none(),
            non_hereditary_witness: witness,
        }
    }

    /// Face counts by dimension: (total, interior).
    pub fn face_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![(0usize, 0usize); self.ambient_dim + 1];
        for f in &self.faces {
            counts[f.dim].0 += 1;
            if f.interior {
                counts[f.dim].1 += 1;
            }
        }
        counts
    }
}

/// Validation report; purity and the manifold condition are enforced at load
/// time, so a constructed complex reports them true. Hereditariness is
/// report-valued because non-hereditary complexes are legitimate inputs to
/// detect.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub pure: bool,
    pub hereditary: bool,
    pub manifold_ok: bool,
    pub non_hereditary_witness: Option<Vec<VertexId>>,
}

/// A pure subcomplex, identified by its facet set. Induced faces and
/// interiority are derived against the parent on demand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubComplex {
    facet_ids: BTreeSet<FacetId>,
}

impl SubComplex {
    pub fn new(facet_ids: impl IntoIterator<Item = FacetId>) -> Self {
        SubComplex {
            facet_ids: facet_ids.into_iter().collect(),
        }
    }

    pub fn facet_ids(&self) -> &BTreeSet<FacetId> {
        &self.facet_ids
    }

    pub fn len(&self) -> usize {
        self.facet_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facet_ids.is_empty()
    }

    pub fn contains_facet(&self, fi: FacetId) -> bool {
        self.facet_ids.contains(&fi)
    }

    pub fn is_subset_of(&self, other: &SubComplex) -> bool {
        self.facet_ids.is_subset(&other.facet_ids)
    }

    /// Codim-1 faces interior to this subcomplex: shared by exactly two of
    /// its facets.
    pub fn interior_codim1(&self, parent: &PolytopalComplex) -> Vec<FaceId> {
        let n = parent.ambient_dim();
        parent
            .faces_of_dim(n - 1)
            .filter(|&f| {
                parent
                    .facets_containing(f)
                    .iter()
                    .filter(|fi| self.facet_ids.contains(fi))
                    .count()
                    == 2
            })
            .collect()
    }

    /// Codim-1 faces of the subcomplex boundary that are not in the parent
    /// boundary: faces lying in exactly one facet of the subcomplex while
    /// interior to the parent.
    pub fn boundary_codim1_not_in_parent_boundary(&self, parent: &PolytopalComplex) -> Vec<FaceId> {
        let n = parent.ambient_dim();
        parent
            .faces_of_dim(n - 1)
            .filter(|&f| {
                parent.face(f).interior
                    && parent
                        .facets_containing(f)
                        .iter()
                        .filter(|fi| self.facet_ids.contains(fi))
                        .count()
                        == 1
            })
            .collect()
    }

    pub fn dual_graph(&self, parent: &PolytopalComplex) -> DualGraph {
        let nodes: Vec<FacetId> = self.facet_ids.iter().copied().collect();
        let mut edges = Vec::new();
        for f in self.interior_codim1(parent) {
            let pair: Vec<FacetId> = parent
                .facets_containing(f)
                .iter()
                .filter(|fi| self.facet_ids.contains(fi))
                .copied()
                .collect();
            edges.push((pair[0], pair[1], f));
        }
        edges.sort_unstable();
        DualGraph { nodes, edges }
    }
}

/// Dual graph: one node per facet, one edge per shared interior codim-1 face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    /// Facet ids, sorted.
    pub nodes: Vec<FacetId>,
    /// (facet, facet, shared face id), with facet pairs sorted.
    pub edges: Vec<(FacetId, FacetId, FaceId)>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Connected components as sorted facet-id sets, ordered by smallest
    /// member.
    pub fn connected_components(&self) -> Vec<Vec<FacetId>> {
        let mut adjacent: BTreeMap<FacetId, Vec<FacetId>> = BTreeMap::new();
        for &n in &self.nodes {
            adjacent.entry(n).or_default();
        }
        for &(a, b, _) in &self.edges {
            adjacent.entry(a).or_default().push(b);
            adjacent.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for &start in &self.nodes {
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
            components.push(component.into_iter().collect());
        }
        components
    }
}

/// Spreadsheet-style facet labels: A..Z, AA, AB, ...
pub fn facet_label(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Concatenated labels of a facet set, e.g. "ABE", as used for naming
/// lattice-complex components.
pub fn facet_set_label(facets: &BTreeSet<FacetId>) -> String {
    facets.iter().map(|&f| facet_label(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    fn pts(raw: &[(i64, i64)]) -> Vec<Vec<BigRational>> {
        raw.iter().map(|&(x, y)| vec![qr(x), qr(y)]).collect()
    }

    pub(crate) fn two_squares() -> PolytopalComplex {
        // Unit squares sharing the edge x = 0.
        PolytopalComplex::new(
            2,
            ComplexKind::Polytopal2d,
            pts(&[(-1, 0), (0, 0), (0, 1), (-1, 1), (1, 0), (1, 1)]),
            vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2]],
        )
        .unwrap()
    }

    fn delta_plus() -> PolytopalComplex {
        PolytopalComplex::new(
            2,
            ComplexKind::Simplicial,
            pts(&[(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)]),
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]],
        )
        .unwrap()
    }

    #[test]
    fn single_triangle_counts() {
        let t = PolytopalComplex::new(
            2,
            ComplexKind::Polytopal2d,
            pts(&[(0, 0), (1, 0), (0, 1)]),
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(t.num_facets(), 1);
        assert_eq!(t.interior_codim1().len(), 0);
        let counts = t.face_counts();
        assert_eq!(counts[1], (3, 0));
        assert_eq!(counts[0], (3, 0));
        assert!(t.validate().hereditary);
        assert_eq!(t.dual_graph().edges.len(), 0);
    }

    #[test]
    fn two_squares_share_an_interior_edge() {
        let c = two_squares();
        let interior = c.interior_codim1();
        assert_eq!(interior.len(), 1);
        assert_eq!(c.face(interior[0]).vertex_ids, vec![1, 2]);
        assert_eq!(c.dual_graph().edges.len(), 1);
        assert!(c.validate().hereditary);
    }

    #[test]
    fn delta_plus_counts_and_stars() {
        let d = delta_plus();
        assert_eq!(d.num_facets(), 4);
        assert_eq!(d.interior_codim1().len(), 4);
        let counts = d.face_counts();
        assert_eq!(counts[0], (5, 1)); // one interior vertex
        let center = d.face_id(&[4]).unwrap();
        let star = d.star(center);
        assert_eq!(star.len(), 4);
        let report = d.validate();
        assert!(report.pure && report.hereditary && report.manifold_ok);
    }

    #[test]
    fn star_containment_reverses_face_containment() {
        let d = delta_plus();
        for f1 in 0..d.faces().len() {
            for f2 in 0..d.faces().len() {
                let v1: BTreeSet<_> = d.face(f1).vertex_ids.iter().collect();
                let v2: BTreeSet<_> = d.face(f2).vertex_ids.iter().collect();
                if v2.is_subset(&v1) {
                    assert!(d.star(f1).is_subset_of(&d.star(f2)));
                }
            }
        }
    }

    #[test]
    fn stars_on_q() {
        let q = crate::fixtures::q();
        // Inner vertex (1,1) is vertex id 2: its star is {A, D, E}.
        let star = q.star_of_vertices(&[2]).unwrap();
        assert_eq!(star.facet_ids().iter().copied().collect::<Vec<_>>(), vec![0, 3, 4]);
        // The star of a facet is the facet itself.
        let e_face = q.face_id(&[0, 1, 2, 3]).unwrap();
        let star_e = q.star(e_face);
        assert_eq!(star_e.facet_ids().iter().copied().collect::<Vec<_>>(), vec![4]);
        // Asking for a non-face errors.
        assert!(matches!(
            q.star_of_vertices(&[0, 2]),
            Err(ComplexError::NoSuchFace(_))
        ));
    }

    #[test]
    fn overlapping_facets_rejected() {
        // Two unit squares overlapping in a half-square strip.
        let err = PolytopalComplex::new(
            2,
            ComplexKind::Polytopal2d,
            pts(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 0), (3, 0), (3, 2), (1, 2)]),
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::IntersectionNotCommonFace(0, 1));
    }

    #[test]
    fn vertex_on_foreign_edge_rejected() {
        // Second triangle's vertex sits in the middle of the first one's edge.
        let err = PolytopalComplex::new(
            2,
            ComplexKind::Simplicial,
            pts(&[(0, 0), (2, 0), (0, 2), (1, 0), (3, 0), (1, -2)]),
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::IntersectionNotCommonFace(0, 1));
    }

    #[test]
    fn shared_vertex_only_is_valid_but_not_hereditary() {
        // Two triangles sharing one vertex; the shared vertex is interior to
        // neither, and the star of that vertex has a disconnected dual graph.
        let c = PolytopalComplex::new(
            2,
            ComplexKind::Simplicial,
            pts(&[(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]),
            vec![vec![0, 1, 2], vec![0, 3, 4]],
        )
        .unwrap();
        let report = c.validate();
        assert!(!report.hereditary);
        assert_eq!(report.non_hereditary_witness, Some(vec![0]));
    }

    #[test]
    fn nonconvex_and_clockwise_rejected() {
        let err = PolytopalComplex::new(
            2,
            ComplexKind::Polytopal2d,
            pts(&[(0, 0), (0, 1), (1, 0)]),
            vec![vec![0, 1, 2]], // clockwise
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NotConvexCcw(0));
        // Collinear triple.
        let err = PolytopalComplex::new(
            2,
            ComplexKind::Polytopal2d,
            pts(&[(0, 0), (1, 0), (2, 0), (2, 1)]),
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NotConvexCcw(0));
    }

    #[test]
    fn non_manifold_rejected() {
        // Three tetrahedra sharing one triangle. Two of them necessarily lie
        // on the same side and overlap, so the intersection check already
        // rejects the input; the explicit manifold check stays as a backstop.
        let err = PolytopalComplex::new(
            3,
            ComplexKind::Simplicial,
            vec![
                vec![qr(0), qr(0), qr(0)],
                vec![qr(1), qr(0), qr(0)],
                vec![qr(0), qr(1), qr(0)],
                vec![qr(0), qr(0), qr(1)],
                vec![qr(0), qr(0), qr(-1)],
                vec![qr(1), qr(1), qr(-1)],
            ],
            vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 2, 5]],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ComplexError::IntersectionNotCommonFace(_, _) | ComplexError::NonManifold(_, 3)
        ));
    }

    #[test]
    fn labels_are_spreadsheet_style() {
        assert_eq!(facet_label(0), "A");
        assert_eq!(facet_label(25), "Z");
        assert_eq!(facet_label(26), "AA");
        assert_eq!(facet_label(27), "AB");
    }
}
