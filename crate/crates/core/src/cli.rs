//! Command-line front end. Every subcommand is a pure function of its
//! inputs; output is byte-stable across runs (the modular-oracle primes come
//! from a seeded RNG, overridable via the SPLINETOP_SEED environment
//! variable).
//!
//! Exit codes: 0 success, 2 validation error (bad options, malformed or
//! invalid input), 3 computation-contract violation (a failed oracle
//! cross-check or internal inconsistency).

use crate::arrangement::{
    lattice_complex_for_flat, minimal_flat, IntersectionLattice, LatticeMode,
};
use crate::complex::{facet_label, facet_set_label, PolytopalComplex, SubComplex};
use crate::document::{
    emit_complex, load_complex, load_spline, render_rational, SplineDocument,
};
use crate::hilbert::{
    conjecture_report, generator_degrees, hf_table, HfSelector,
};
use crate::poly::{DegreeMode, Polynomial};
use crate::splines::SplineEngine;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fmt::Write as _;

pub const DEFAULT_SEED: u64 = 0x5EED_1A77;
const ORACLE_PRIMES: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "splinetop",
    about = "Exact spline spaces, intersection lattices, and Hilbert diagnostics on polytopal complexes",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Filtered,
    Homogeneous,
}

impl From<ModeArg> for DegreeMode {
    fn from(m: ModeArg) -> DegreeMode {
        match m {
            ModeArg::Filtered => DegreeMode::Filtered,
            ModeArg::Homogeneous => DegreeMode::Homogeneous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlatsArg {
    Affine,
    Homogenized,
}

impl From<FlatsArg> for LatticeMode {
    fn from(m: FlatsArg) -> LatticeMode {
        match m {
            FlatsArg::Affine => LatticeMode::Affine,
            FlatsArg::Homogenized => LatticeMode::Homogenized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face counts and validation report of a complex.
    Info {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Flats of the intersection lattice (ids, ranks, generators).
    Lattice {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "homogenized")]
        flats: FlatsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Components of the lattice complex P_W for one flat.
    Latcomplex {
        #[arg(long)]
        input: String,
        /// Flat id as printed by `lattice`.
        #[arg(long)]
        flat: usize,
        #[arg(long, value_enum, default_value = "homogenized")]
        flats: FlatsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// The Gamma poset up to rank k, with its maximal nodes.
    Gamma {
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "homogenized")]
        flats: FlatsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// dim C^r_d, with modular oracle cross-check.
    Dim {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "filtered")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// dim LS^{r,k}_d, with modular oracle cross-check.
    LsDim {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "filtered")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "homogenized")]
        flats: FlatsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Decompose a spline into lattice-supported summands.
    Decompose {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        /// Spline file (JSON, per-facet monomial/coefficient records).
        #[arg(long)]
        spline: String,
        #[arg(long, value_enum, default_value = "homogenized")]
        flats: FlatsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Verify that a spline file satisfies the C^r smoothness criterion.
    Check {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        spline: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Hilbert function table of a graded spline module.
    Hf {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        /// Window top; defaults to max(3r+6, (F-1)(r+1)+2) for planar input.
        #[arg(long)]
        dmax: Option<u32>,
        /// full | ls<k> | supported:<facet labels, e.g. ABE>
        #[arg(long, default_value = "full")]
        selector: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Generator-degree profile of the graded module.
    Gendeg {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        /// Window top; defaults to max(3r+6, (F-1)(r+1)+2) for planar input.
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Emit the T_n fixture as an input document.
    Tn {
        #[arg(long)]
        n: usize,
    },
    /// Empirical conjecture report (window-limited evidence).
    Report {
        #[arg(long)]
        input: String,
        #[arg(long)]
        r: u32,
        /// Window top; defaults to max(3r+6, (F-1)(r+1)+2).
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Emit built-in fixture documents.
    Fixtures {
        /// One of: q, qprime, delta_plus, two_squares, t<n>. Omit for all.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("computation contract violated: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Contract(_) => 3,
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

pub fn oracle_seed() -> u64 {
    std::env::var("SPLINETOP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn read_complex(path: &str) -> Result<PolytopalComplex, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?;
    load_complex(&text).map_err(validation)
}

fn poly_to_string(p: &Polynomial, homogeneous: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let nvars = p.nvars();
    let affine_vars = if homogeneous { nvars - 1 } else { nvars };
    let name = |i: usize| -> String {
        if homogeneous && i == nvars - 1 {
            "x0".to_string()
        } else if affine_vars <= 3 {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    let mut parts = Vec::new();
    for (m, c) in p.terms() {
        let mut factors = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(name(i)),
                _ => factors.push(format!("{}^{}", name(i), e)),
            }
        }
        let coeff = render_rational(c);
        let body = if factors.is_empty() {
            coeff
        } else if coeff == "1" {
            factors.join("*")
        } else if coeff == "-1" {
            format!("-{}", factors.join("*"))
        } else {
            format!("{}*{}", coeff, factors.join("*"))
        };
        parts.push(body);
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn resolve_flat(
    lattice: &IntersectionLattice,
    id: usize,
) -> Result<&crate::arrangement::Flat, CliError> {
    lattice
        .flats
        .get(id)
        .ok_or_else(|| CliError::Validation(format!("unknown flat id {id} (lattice has {} flats)", lattice.flats.len())))
}

fn parse_selector(s: &str, p: &PolytopalComplex) -> Result<HfSelector, CliError> {
    if s == "full" {
        return Ok(HfSelector::Full);
    }
    if let Some(k) = s.strip_prefix("ls") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Validation(format!("bad selector {s:?}")))?;
        return Ok(HfSelector::Ls(k));
    }
    if let Some(labels) = s.strip_prefix("supported:") {
        let mut facets = Vec::new();
        for ch in labels.chars() {
            let idx = (0..p.num_facets())
                .find(|&f| facet_label(f) == ch.to_string())
                .ok_or_else(|| CliError::Validation(format!("unknown facet label {ch:?}")))?;
            facets.push(idx);
        }
        if facets.is_empty() {
            return Err(CliError::Validation("empty support".to_string()));
        }
        return Ok(HfSelector::Supported(SubComplex::new(facets)));
    }
    Err(CliError::Validation(format!(
        "bad selector {s:?} (expected full, ls<k>, or supported:<labels>)"
    )))
}

fn default_window(p: &PolytopalComplex, r: u32) -> u32 {
    if p.ambient_dim() == 2 {
        crate::hilbert::default_d_max(p, r)
    } else {
        3 * r + 6
    }
}

fn oracle_tag(ok: bool) -> Result<&'static str, CliError> {
    if ok {
        Ok("ok")
    } else {
        Err(CliError::Contract(
            "modular rank disagreed with the exact rank".to_string(),
        ))
    }
}

/// Run one parsed command; returns the full output text.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(oracle_seed());
    match cli.command {
        Command::Info { input, format } => {
            let p = read_complex(&input)?;
            let report = p.validate();
            let counts = p.face_counts();
            match format {
                FormatArg::Json => {
                    let labels: Vec<String> = (0..p.num_facets()).map(facet_label).collect();
                    Ok(serde_json::to_string_pretty(&json!({
                        "kind": p.kind(),
                        "ambient_dim": p.ambient_dim(),
                        "vertices": p.num_vertices(),
                        "facets": p.num_facets(),
                        "facet_labels": labels,
                        "face_counts": counts.iter().enumerate().map(|(dim, (total, interior))| json!({
                            "dim": dim, "total": total, "interior": interior
                        })).collect::<Vec<_>>(),
                        "validation": report,
                    }))
                    .unwrap())
                }
                _ => {
                    let mut out = String::new();
                    writeln!(
                        out,
                        "kind {:?} ambient_dim {} vertices {} facets {}",
                        p.kind(),
                        p.ambient_dim(),
                        p.num_vertices(),
                        p.num_facets()
                    )
                    .unwrap();
                    for (dim, (total, interior)) in counts.iter().enumerate() {
                        writeln!(out, "dim {dim}: {total} faces ({interior} interior)").unwrap();
                    }
                    writeln!(
                        out,
                        "pure {} hereditary {} manifold_ok {}",
                        report.pure, report.hereditary, report.manifold_ok
                    )
                    .unwrap();
                    if let Some(w) = report.non_hereditary_witness {
                        writeln!(out, "hereditary fails at face {w:?}").unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Lattice { input, flats, format } => {
            let p = read_complex(&input)?;
            let lattice = IntersectionLattice::build(&p, flats.into());
            match format {
                FormatArg::Dot => Ok(crate::dot::lattice_dot(&lattice)),
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "mode": lattice.mode,
                    "flats": lattice.flats.iter().enumerate().map(|(i, f)| json!({
                        "id": i,
                        "rank": f.rank(),
                        "at_infinity": f.at_infinity(),
                        "generators": f.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "hasse": lattice.hasse,
                }))
                .unwrap()),
                FormatArg::Csv => {
                    let mut out = String::from("id,rank,at_infinity,generators\n");
                    for (i, f) in lattice.flats.iter().enumerate() {
                        writeln!(
                            out,
                            "{i},{},{},\"{}\"",
                            f.rank(),
                            f.at_infinity(),
                            f.describe()
                        )
                        .unwrap();
                    }
                    Ok(out)
                }
                FormatArg::Text => {
                    let mut out = String::new();
                    for (i, f) in lattice.flats.iter().enumerate() {
                        let inf = if f.at_infinity() { " at-infinity" } else { "" };
                        writeln!(out, "W{i} rank {}{}: {}", f.rank(), inf, f.describe()).unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Latcomplex { input, flat, flats, format } => {
            let p = read_complex(&input)?;
            let lattice = IntersectionLattice::build(&p, flats.into());
            let f = resolve_flat(&lattice, flat)?;
            let lc = lattice_complex_for_flat(&p, f);
            match format {
                FormatArg::Dot => Ok(crate::dot::lattice_complex_dot(&p, &lc)),
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "flat": {"id": flat, "rank": f.rank(), "generators": f.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()},
                    "components": lc.components.iter().map(|c| json!({
                        "label": facet_set_label(c.facet_ids()),
                        "facets": c.facet_ids().iter().copied().collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }))
                .unwrap()),
                _ => {
                    let mut out = String::new();
                    writeln!(out, "flat W{flat} rank {}: {}", f.rank(), f.describe()).unwrap();
                    if lc.components.is_empty() {
                        writeln!(out, "no components (no interior face lies on the flat)").unwrap();
                    }
                    for (i, c) in lc.components.iter().enumerate() {
                        writeln!(out, "component {}: {}", i, facet_set_label(c.facet_ids())).unwrap();
                    }
                    let v = minimal_flat(&p, &lc.components, lattice.mode)
                        .map_err(|e| CliError::Validation(e.to_string()))?;
                    writeln!(out, "minimal flat: rank {} ({})", v.rank(), v.describe()).unwrap();
                    Ok(out)
                }
            }
        }
        Command::Gamma { input, k, flats, format } => {
            let p = read_complex(&input)?;
            let engine = SplineEngine::new(&p);
            let gamma = engine.gamma(k, flats.into());
            match format {
                FormatArg::Dot => Ok(crate::dot::gamma_dot(&gamma)),
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "k": k,
                    "mode": gamma.mode,
                    "row_sizes": gamma.row_sizes(),
                    "nodes": gamma.nodes.iter().map(|n| json!({
                        "label": facet_set_label(n.subcomplex.facet_ids()),
                        "gamma_rank": n.gamma_rank,
                    })).collect::<Vec<_>>(),
                    "maximal": gamma.maximal_labels(),
                    "hasse": gamma.hasse,
                }))
                .unwrap()),
                _ => {
                    let mut out = String::new();
                    let rows = gamma.row_sizes();
                    writeln!(out, "row sizes {rows:?}").unwrap();
                    for (rank, _) in rows.iter().enumerate() {
                        let labels: Vec<String> = gamma
                            .nodes
                            .iter()
                            .filter(|n| n.gamma_rank == rank)
                            .map(|n| facet_set_label(n.subcomplex.facet_ids()))
                            .collect();
                        writeln!(out, "rank {rank}: {}", labels.join(" ")).unwrap();
                    }
                    writeln!(out, "maximal: {}", gamma.maximal_labels().join(" ")).unwrap();
                    Ok(out)
                }
            }
        }
        Command::Dim { input, r, d, mode, format } => {
            let p = read_complex(&input)?;
            let engine = SplineEngine::new(&p);
            let mode: DegreeMode = mode.into();
            let space = engine.spline_basis(r, d, mode);
            let outcome = engine.oracle_check_smoothness(r, d, mode, &mut rng, ORACLE_PRIMES);
            let basis_outcome = engine.oracle_check_space(&space, &mut rng, ORACLE_PRIMES);
            let tag = oracle_tag(outcome.ok && basis_outcome.ok && outcome.dim == space.dim())?;
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "r": r, "d": d, "mode": format!("{mode:?}"),
                    "dim": space.dim(),
                    "oracle": tag,
                    "primes": outcome.primes,
                }))
                .unwrap()),
                _ => Ok(format!("dim {} oracle={tag}\n", space.dim())),
            }
        }
        Command::LsDim { input, r, k, d, mode, flats, format } => {
            let p = read_complex(&input)?;
            let engine = SplineEngine::new(&p);
            let mode: DegreeMode = mode.into();
            let space = engine.ls_space(r, k, d, mode, flats.into());
            let outcome = engine.oracle_check_space(&space, &mut rng, ORACLE_PRIMES);
            let tag = oracle_tag(outcome.ok)?;
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "r": r, "k": k, "d": d, "mode": format!("{mode:?}"),
                    "dim": space.dim(),
                    "oracle": tag,
                    "primes": outcome.primes,
                }))
                .unwrap()),
                _ => Ok(format!("ls-dim {} oracle={tag}\n", space.dim())),
            }
        }
        Command::Decompose { input, r, k, d, spline, flats, format } => {
            let p = read_complex(&input)?;
            let engine = SplineEngine::new(&p);
            let text = std::fs::read_to_string(&spline)
                .map_err(|e| CliError::Validation(format!("cannot read {spline}: {e}")))?;
            let polys = load_spline(&text, &p).map_err(validation)?;
            engine.is_spline(r, &polys).map_err(validation)?;
            let result = engine
                .decompose(&polys, r, k, d, flats.into())
                .map_err(validation)?;
            match format {
                FormatArg::Json => {
                    let payload = match &result {
                        None => json!({"decomposable": false}),
                        Some(dec) => json!({
                            "decomposable": true,
                            "summands": dec.summands.iter().map(|(support, polys)| json!({
                                "support": facet_set_label(support.facet_ids()),
                                "spline": SplineDocument::from_polynomials(polys),
                            })).collect::<Vec<_>>(),
                        }),
                    };
                    Ok(serde_json::to_string_pretty(&payload).unwrap())
                }
                _ => match result {
                    None => Ok("decomposable false\n".to_string()),
                    Some(dec) => {
                        let mut out = String::from("decomposable true\n");
                        for (support, polys) in &dec.summands {
                            writeln!(out, "summand on {}", facet_set_label(support.facet_ids()))
                                .unwrap();
                            for (f, poly) in polys.iter().enumerate() {
                                if !poly.is_zero() {
                                    writeln!(out, "  {}: {}", facet_label(f), poly_to_string(poly, false))
                                        .unwrap();
                                }
                            }
                        }
                        Ok(out)
                    }
                },
            }
        }
        Command::Check { input, r, spline, format } => {
            let p = read_complex(&input)?;
            let engine = SplineEngine::new(&p);
            let text = std::fs::read_to_string(&spline)
                .map_err(|e| CliError::Validation(format!("cannot read {spline}: {e}")))?;
            let polys = load_spline(&text, &p).map_err(validation)?;
            engine.is_spline(r, &polys).map_err(validation)?;
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "r": r, "spline": true,
                }))
                .unwrap()),
                _ => Ok(format!("spline ok (r={r})\n")),
            }
        }
        Command::Hf { input, r, dmax, selector, format } => {
            let p = read_complex(&input)?;
            let dmax = dmax.unwrap_or_else(|| default_window(&p, r));
            let engine = SplineEngine::new(&p);
            let sel = parse_selector(&selector, &p)?;
            let table = hf_table(&engine, &sel, r, dmax);
            let mut outcomes = Vec::new();
            for d in 0..=dmax {
                let space = match &sel {
                    HfSelector::Full => engine.spline_basis(r, d, DegreeMode::Homogeneous),
                    HfSelector::Ls(k) => std::rc::Rc::new(engine.ls_space(
                        r,
                        *k,
                        d,
                        DegreeMode::Homogeneous,
                        LatticeMode::Homogenized,
                    )),
                    HfSelector::Supported(q) => {
                        engine.supported_basis(q, r, d, DegreeMode::Homogeneous)
                    }
                };
                let outcome = engine.oracle_check_space(&space, &mut rng, ORACLE_PRIMES);
                oracle_tag(outcome.ok)?;
                outcomes.push(outcome);
            }
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&json!({
                    "selector": sel.to_string(),
                    "r": r,
                    "d_max": dmax,
                    "values": table.values,
                    "oracle": "ok",
                }))
                .unwrap()),
                FormatArg::Csv => {
                    let mut out = String::from("d,hf\n");
                    for (d, v) in table.values.iter().enumerate() {
                        writeln!(out, "{d},{v}").unwrap();
                    }
                    Ok(out)
                }
                _ => {
                    let mut out = String::new();
                    writeln!(out, "selector {} r {}", sel, r).unwrap();
                    for (d, v) in table.values.iter().enumerate() {
                        writeln!(out, "d {d}: {v} oracle=ok").unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Gendeg { input, r, dmax, format } => {
            let p = read_complex(&input)?;
            let dmax = dmax.unwrap_or_else(|| default_window(&p, r));
            let engine = SplineEngine::new(&p);
            let profile = generator_degrees(&engine, r, dmax);
            // The profile values are differences of graded dimensions;
            // cross-check the dimensions behind them.
            for d in 0..=dmax {
                let space = engine.spline_basis(r, d, DegreeMode::Homogeneous);
                let outcome = engine.oracle_check_space(&space, &mut rng, ORACLE_PRIMES);
                oracle_tag(outcome.ok)?;
            }
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&profile).unwrap()),
                FormatArg::Csv => {
                    let mut out = String::from("d,new_generators\n");
                    for (d, v) in profile.values.iter().enumerate() {
                        writeln!(out, "{d},{v}").unwrap();
                    }
                    Ok(out)
                }
                _ => {
                    let mut out = String::new();
                    for (d, v) in profile.values.iter().enumerate() {
                        writeln!(out, "d {d}: {v} new generators oracle=ok").unwrap();
                    }
                    if let Some(m) = profile.max_generator_degree() {
                        writeln!(out, "max generator degree in window: {m}").unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Tn { n } => {
            let t = crate::hilbert::build_tn(n).map_err(validation)?;
            Ok(emit_complex(&t) + "\n")
        }
        Command::Report { input, r, dmax, format } => {
            let p = read_complex(&input)?;
            if p.ambient_dim() != 2 {
                return Err(CliError::Validation(
                    "conjecture report is defined for planar complexes".to_string(),
                ));
            }
            let dmax = dmax.unwrap_or_else(|| default_window(&p, r));
            let engine = SplineEngine::new(&p);
            let report = conjecture_report(&engine, r, dmax).map_err(validation)?;
            match format {
                FormatArg::Json => Ok(serde_json::to_string_pretty(&report).unwrap()),
                _ => {
                    let mut out = String::new();
                    writeln!(out, "r {} window 0..={} ({})", report.r, report.d_max, report.disclaimer).unwrap();
                    writeln!(out, "max facet boundary length F = {}", report.max_boundary_length).unwrap();
                    writeln!(out, "HF full: {:?}", report.hf_full).unwrap();
                    writeln!(out, "HF ls(2): {:?}", report.hf_ls).unwrap();
                    writeln!(
                        out,
                        "HF=HP observed from {}{}; bound implied by the C^r regularity conjecture: {}",
                        report.observed_hf_hp_agreement_from,
                        if report.hf_hp_fit_window_limited { " (window-limited)" } else { "" },
                        report.c2_implied_agreement_from
                    )
                    .unwrap();
                    match report.observed_full_equals_ls_from {
                        Some(d0) => writeln!(
                            out,
                            "HF(full)=HF(ls) observed from {d0}; bound implied by the LS regularity conjecture: {}",
                            report.c1_implied_equality_from
                        )
                        .unwrap(),
                        None => writeln!(out, "HF(full)=HF(ls) does not stabilize in the window").unwrap(),
                    }
                    writeln!(out, "generator profile: {:?}", report.generator_profile).unwrap();
                    if let Some(m) = report.max_generator_degree {
                        writeln!(out, "max generator degree in window: {m}").unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Fixtures { name } => match name {
            Some(name) => {
                let p = crate::fixtures::fixture_by_name(&name).ok_or_else(|| {
                    CliError::Validation(format!(
                        "unknown fixture {name:?}; available: {} or t<n>",
                        crate::fixtures::FIXTURE_NAMES.join(", ")
                    ))
                })?;
                Ok(emit_complex(&p) + "\n")
            }
            None => {
                let mut map = serde_json::Map::new();
                for &name in crate::fixtures::FIXTURE_NAMES {
                    let p = crate::fixtures::fixture_by_name(name).unwrap();
                    map.insert(
                        name.to_string(),
                        serde_json::to_value(crate::document::ComplexDocument::from_complex(&p))
                            .unwrap(),
                    );
                }
                Ok(serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap())
            }
        },
    }
}

/// Parse argv and run; returns (exit code, output or error text).
pub fn run_from_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            // clap's own help/version exits are success.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, rendered);
        }
    };
    match run(cli) {
        Ok(output) => (0, output),
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
