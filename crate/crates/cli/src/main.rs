//! `coxeter`: command-line access to diagram classification, Lannér
//! enumeration, Cartan matrices and their reflection groups, Lorentzian
//! realizations, Andreev's conditions, Hitchin dimensions and SVG tilings.
//!
//! Exit codes: 0 on success, 1 when `--strict` is given and the verdict is
//! negative or the input is refused, 2 on input errors.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use coxeter_core::andreev::{andreev_check, polytope_from_json, AndreevError, AndreevMode, LabeledPolytope3};
use coxeter_core::classify::classify_with_tol;
use coxeter_core::dsl::{parse_diagram, render_dsl};
use coxeter_core::fixtures;
use coxeter_core::hitchin::{hitchin_dimension, HitchinError};
use coxeter_core::lanner::{enumerate_lanner_family, lanner_status, EnumerationMode};
use coxeter_core::linalg::DEFAULT_TOL;
use coxeter_core::lorentz::{
    dh_convex_cocompact, dimension_bounds, gram_from_coxeter, gram_reconstruction_error, polygon_exists,
    realize_normals, reflections_lorentz, form_preservation_error, validate_gram, Angle, Feasibility, GramMatrix,
};
use coxeter_core::moussong::moussong_hyperbolic;
use coxeter_core::render::{emit_svg, tile_orbit, RenderError, SvgStyle};
use coxeter_core::report::DiagramReport;
use coxeter_core::vinberg::simplex::{exact_involutions, involution_error, relation_error};
use coxeter_core::vinberg::{
    cartan_analyze, cartan_from_coxeter, compatible_coxeter, convex_cocompact_status, enumerate_group_with,
    is_anosov, kac_vinberg_check, perfection_status, perron_type, polytope_character, tits_simplex, CartanMatrix,
    CartanSpec, EnumerationOptions, PerfectionLevel, VinbergError,
};
use coxeter_core::{CoxeterMatrix, Label};

#[derive(Parser)]
#[command(name = "coxeter", version, about = "Coxeter groups, Cartan matrices and hyperbolic reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 on a negative verdict or refused input.
    #[arg(long, global = true)]
    strict: bool,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Clone)]
struct DiagramInput {
    /// Diagram in the DSL, e.g. "nodes a b c; edge a b 3; edge b c 5".
    #[arg(long, conflicts_with = "file")]
    dsl: Option<String>,
    /// File holding a DSL diagram.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CartanInput {
    /// Cartan matrix as a JSON array of rows.
    #[arg(long, conflicts_with_all = ["file", "dsl"])]
    matrix: Option<String>,
    /// File holding a JSON Cartan matrix.
    #[arg(long, conflicts_with = "dsl")]
    file: Option<PathBuf>,
    /// Coxeter diagram; its Cartan matrix is the Cosine matrix, with
    /// `--inf-product` on every `inf` pair.
    #[arg(long)]
    dsl: Option<String>,
    /// Product `a_st a_ts` for `inf` pairs of a `--dsl` input.
    #[arg(long, default_value_t = 4.0)]
    inf_product: f64,
}

#[derive(Args, Clone)]
struct GramInput {
    /// Gram matrix as a JSON array of rows.
    #[arg(long, conflicts_with_all = ["file", "dsl"])]
    matrix: Option<String>,
    /// File holding a JSON Gram matrix.
    #[arg(long, conflicts_with = "dsl")]
    file: Option<PathBuf>,
    /// Coxeter diagram; its Gram matrix is half the Cosine matrix.
    #[arg(long)]
    dsl: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lanner,
    QuasiLanner,
    StrictQuasiLanner,
}

#[derive(Clone, Copy, ValueEnum)]
enum VolumeArg {
    Compact,
    FiniteVolume,
}

#[derive(Subcommand)]
enum Command {
    /// Components, types and flags of a Coxeter diagram.
    Classify(DiagramInput),
    /// Lannér / quasi-Lannér status.
    Lanner(DiagramInput),
    /// All Lannér or quasi-Lannér diagrams of a rank.
    Enumerate {
        #[arg(long, value_enum, default_value = "lanner")]
        mode: ModeArg,
        #[arg(long)]
        rank: usize,
    },
    /// Word-hyperbolicity by Moussong's criterion.
    Moussong(DiagramInput),
    /// Validate a Cartan matrix and find its Coxeter matrix.
    Cartan(CartanInput),
    /// Tits simplex: reflections and relation checks.
    Tits(CartanInput),
    /// Elements of the reflection group up to a word length.
    EnumerateGroup {
        #[command(flatten)]
        input: CartanInput,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Anosov criterion.
    Anosov(CartanInput),
    /// Convex cocompactness in projective space.
    Cc(CartanInput),
    /// Vertex links and the perfect / quasi-perfect / 2-perfect hierarchy.
    Perfection(CartanInput),
    /// Integral rank-3 checks and invariant forms.
    KacVinberg(CartanInput),
    /// Validate a Gram matrix.
    Gram(GramInput),
    /// Unit normals in Minkowski space.
    Realize(GramInput),
    /// Convex cocompactness of a hyperbolic reflection group.
    DhCc {
        #[command(flatten)]
        input: GramInput,
        /// Coxeter diagram when the Gram matrix is given explicitly.
        #[arg(long)]
        coxeter: Option<String>,
    },
    /// Existence of a compact hyperbolic polygon with given angles.
    Polygon {
        /// Angles as fractions of pi, e.g. "1/2,1/3,1/7".
        #[arg(long)]
        angles: String,
    },
    /// Known dimension bounds for hyperbolic Coxeter polytopes.
    Bounds {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        compact: bool,
        #[arg(long)]
        right_angled: bool,
    },
    /// Andreev's conditions for a labeled 3-polytope.
    Andreev {
        /// Polytope JSON file.
        #[arg(long, conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Embedded polytope: cube, dodecahedron or prism.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value = "compact")]
        mode: VolumeArg,
    },
    /// Dimension of the Hitchin component of a polygon group.
    HitchinDim {
        #[arg(long)]
        n: u32,
        /// Labels m_i of the angles pi/m_i, e.g. "2,3,7".
        #[arg(long)]
        angles: String,
    },
    /// SVG tiling of a rank-3 simplex orbit.
    Render {
        #[command(flatten)]
        input: CartanInput,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Write the SVG here instead of standard output.
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
    /// Print an embedded catalog: irreducible, lanner4 or quasi-lanner4.
    Fixtures {
        #[arg(long)]
        name: String,
    },
}

/// Result of a command: what to print and whether the verdict is positive.
struct Outcome {
    text: String,
    json: Value,
    positive: bool,
}

impl Outcome {
    fn new(text: String, json: Value, positive: bool) -> Self {
        Outcome { text, json, positive }
    }

    fn refused(reason: String) -> Self {
        Outcome { text: format!("refused: {reason}"), json: json!({ "refused": reason }), positive: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if cli.strict && !out.positive {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn diagram(input: &DiagramInput) -> Result<CoxeterMatrix> {
    let text = match (&input.dsl, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => bail!("a diagram is required (--dsl or --file)"),
    };
    Ok(parse_diagram(&text).map_err(|e| anyhow!("{e}"))?.to_matrix())
}

fn matrix_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    serde_json::from_str(text).context("expected a JSON array of numeric rows")
}

fn cartan(input: &CartanInput) -> Result<CartanMatrix> {
    if let Some(dsl) = &input.dsl {
        let m = parse_diagram(dsl).map_err(|e| anyhow!("{e}"))?.to_matrix();
        let mut spec = CartanSpec::default();
        for (s, t, label) in m.edges() {
            if label == Label::Infinity {
                spec.infinity_products.insert((s.min(t), s.max(t)), input.inf_product);
            }
        }
        return Ok(cartan_from_coxeter(&m, &spec)?);
    }
    let text = match (&input.matrix, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => bail!("a Cartan matrix is required (--matrix, --file or --dsl)"),
    };
    Ok(CartanMatrix::from_rows(&matrix_rows(&text)?)?)
}

fn gram(input: &GramInput) -> Result<(GramMatrix, Option<CoxeterMatrix>)> {
    if let Some(dsl) = &input.dsl {
        let m = parse_diagram(dsl).map_err(|e| anyhow!("{e}"))?.to_matrix();
        return Ok((gram_from_coxeter(&m), Some(m)));
    }
    let text = match (&input.matrix, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => bail!("a Gram matrix is required (--matrix, --file or --dsl)"),
    };
    Ok((GramMatrix::from_rows(&matrix_rows(&text)?)?, None))
}

fn format_rows(rows: &[Vec<f64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>10.6}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Domain refusals become negative outcomes; everything else is an input error.
fn vinberg_refusal(e: VinbergError) -> Result<Outcome> {
    match e {
        VinbergError::FiniteGroup
        | VinbergError::ReducibleGroup
        | VinbergError::Reducible
        | VinbergError::NotCoxeterType { .. } => Ok(Outcome::refused(e.to_string())),
        other => Err(other.into()),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol;
    match &cli.command {
        Command::Classify(input) => {
            let m = diagram(input)?;
            let report = DiagramReport::with_tol(&m, tol)?;
            let c = classify_with_tol(&m, tol);
            let mut text = String::new();
            for comp in &c.components {
                text.push_str(&format!("{} {{{}}}\n", comp.tag, comp.nodes.join(" ")));
            }
            let kind = if c.is_spherical {
                "spherical"
            } else if c.is_affine {
                "affine"
            } else {
                "neither spherical nor affine"
            };
            text.push_str(kind);
            Ok(Outcome::new(text, json!(report), true))
        }
        Command::Lanner(input) => {
            let m = diagram(input)?;
            let status = lanner_status(&m, tol)?;
            Ok(Outcome::new(
                status.to_string(),
                json!({ "status": status.to_string(), "diagram": m }),
                status.is_quasi_lanner(),
            ))
        }
        Command::Enumerate { mode, rank } => {
            let mode = match mode {
                ModeArg::Lanner => EnumerationMode::Lanner,
                ModeArg::QuasiLanner => EnumerationMode::QuasiLanner,
                ModeArg::StrictQuasiLanner => EnumerationMode::StrictQuasiLanner,
            };
            let found = enumerate_lanner_family(*rank, mode)?;
            let reports = found.iter().map(DiagramReport::new).collect::<Result<Vec<_>, _>>()?;
            let text = found
                .iter()
                .map(|m| render_dsl(&m.into()).trim_end().to_string())
                .collect::<Vec<_>>()
                .join("\n---\n");
            let text = format!("{} diagrams\n{text}", found.len());
            Ok(Outcome::new(text, json!({ "count": found.len(), "diagrams": reports }), true))
        }
        Command::Moussong(input) => {
            let m = diagram(input)?;
            let r = moussong_hyperbolic(&m);
            let text = match &r.witness {
                None => "word hyperbolic".to_string(),
                Some(w) => format!("not word hyperbolic: {}", serde_json::to_string(w)?),
            };
            Ok(Outcome::new(text, json!(r), r.hyperbolic))
        }
        Command::Cartan(input) => {
            let a = cartan(input)?;
            let rep = cartan_analyze(a.entries(), tol)?;
            let mut text = format!("valid Cartan matrix\ncoxeter type: {}", rep.coxeter_type);
            if let Some(m) = &rep.compatible_coxeter {
                let m = m.clone().with_node_names(a.nodes().to_vec())?;
                text.push_str(&format!("\n{}", render_dsl(&(&m).into()).trim_end()));
            }
            if let Some((s, t, p)) = rep.offending_pair {
                text.push_str(&format!("\noffending pair ({s},{t}) with product {p}"));
            }
            Ok(Outcome::new(text, json!(rep), rep.coxeter_type))
        }
        Command::Tits(input) => {
            let a = cartan(input)?;
            let s = tits_simplex(&a);
            let mut relations = Vec::new();
            if let Ok(m) = compatible_coxeter(&a, tol) {
                for i in 0..m.rank() {
                    for j in i + 1..m.rank() {
                        if let Label::Finite(k) = m.get(i, j) {
                            relations.push(json!({ "s": i, "t": j, "m": k, "error": relation_error(&s, i, j, k) }));
                        }
                    }
                }
            }
            let reflections: Vec<Vec<Vec<f64>>> = s
                .reflections
                .iter()
                .map(|r| (0..r.nrows()).map(|i| (0..r.ncols()).map(|j| r[(i, j)]).collect()).collect())
                .collect();
            let mut text = String::new();
            for (k, r) in reflections.iter().enumerate() {
                text.push_str(&format!("sigma_{k}\n{}\n", format_rows(r)));
            }
            text.push_str(&format!("max involution error {:e}", involution_error(&s)));
            let json = json!({
                "reflections": reflections,
                "exact_involutions": exact_involutions(&s),
                "involution_error": involution_error(&s),
                "relations": relations,
            });
            Ok(Outcome::new(text, json, true))
        }
        Command::EnumerateGroup { input, depth, cap } => {
            let a = cartan(input)?;
            let opts = EnumerationOptions { cap: *cap, ..EnumerationOptions::new(*depth) };
            let g = enumerate_group_with(&tits_simplex(&a), &opts)?;
            let growth = g.growth.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let text = format!("{} elements, closed: {}\ngrowth {growth}", g.elements.len(), g.closed);
            Ok(Outcome::new(text, json!(g), true))
        }
        Command::Anosov(input) => {
            let a = cartan(input)?;
            match is_anosov(&a) {
                Ok(r) => {
                    let text = if r.anosov {
                        "anosov".to_string()
                    } else {
                        format!("not anosov: {}", serde_json::to_string(&r.reasons)?)
                    };
                    Ok(Outcome::new(text, json!(r), r.anosov))
                }
                Err(e) => vinberg_refusal(e),
            }
        }
        Command::Cc(input) => {
            let a = cartan(input)?;
            match convex_cocompact_status(&a) {
                Ok(v) => {
                    let text = format!(
                        "convex cocompact: {}\ncondition (i): {}\ncondition (ii): {}",
                        v.cc, v.condition_i, v.condition_ii
                    );
                    Ok(Outcome::new(text, json!(v), v.cc))
                }
                Err(e) => vinberg_refusal(e),
            }
        }
        Command::Perfection(input) => {
            let a = cartan(input)?;
            let s = tits_simplex(&a);
            let p = perfection_status(&s);
            let tag = polytope_character(&s, tol);
            let links = p.links.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            let text = format!(
                "character: {}\nlevel: {:?}\nlinks: {links}\nconclusions: {}",
                p.character,
                p.level,
                p.conclusions.join("; ")
            );
            Ok(Outcome::new(text, json!({ "perfection": p, "character": tag }), p.level != PerfectionLevel::None))
        }
        Command::KacVinberg(input) => {
            let a = cartan(input)?;
            let r = kac_vinberg_check(&a)?;
            let perron = perron_type(&a, tol).ok();
            let text = format!(
                "integral: {}\nnegative determinant: {}\ncyclic products differ: {}\nreflections in SL(3,Z)^±: {}\ninvariant form: {}",
                r.integral,
                r.negative_det,
                r.cyclic_asymmetric,
                r.in_sl3z,
                match &r.invariant_form {
                    Some(f) => format!("signature {:?}", f.signature),
                    None => "none".to_string(),
                }
            );
            Ok(Outcome::new(text, json!({ "report": r, "perron": perron }), r.kac_vinberg))
        }
        Command::Gram(input) => {
            let (g, _) = gram(input)?;
            let r = validate_gram(&g, tol);
            let text = format!(
                "signature {:?}\nirreducible: {}\nVinberg conditions: {}{}",
                r.signature.triple(),
                r.irreducible,
                r.vinberg_ok,
                r.dimension.map(|d| format!("\ndimension {d}")).unwrap_or_default()
            );
            Ok(Outcome::new(text, json!(r), r.vinberg_ok))
        }
        Command::Realize(input) => {
            let (g, _) = gram(input)?;
            let r = realize_normals(&g, tol)?;
            let recon = gram_reconstruction_error(&r, &g);
            let form = reflections_lorentz(&r).iter().map(form_preservation_error).fold(0.0, f64::max);
            let rows: Vec<Vec<f64>> = r.normals.iter().map(|v| v.iter().copied().collect()).collect();
            let text = format!(
                "d = {} ({})\n{}\nGram reconstruction error {recon:e}\nform preservation error {form:e}",
                r.d,
                r.form,
                format_rows(&rows)
            );
            let json = json!({ "realization": r, "gram_error": recon, "form_error": form });
            Ok(Outcome::new(text, json, true))
        }
        Command::DhCc { input, coxeter } => {
            let (g, from_dsl) = gram(input)?;
            let m = match (coxeter, from_dsl) {
                (Some(text), _) => parse_diagram(text).map_err(|e| anyhow!("{e}"))?.to_matrix(),
                (None, Some(m)) => m,
                (None, None) => bail!("--coxeter is required with an explicit Gram matrix"),
            };
            let r = dh_convex_cocompact(&m, &g)?;
            let text = if r.convex_cocompact {
                "convex cocompact".to_string()
            } else {
                format!("not convex cocompact: {}", serde_json::to_string(&r.reasons)?)
            };
            Ok(Outcome::new(text, json!(r), r.convex_cocompact))
        }
        Command::Polygon { angles } => {
            let parsed = angles
                .split(',')
                .map(|a| parse_fraction(a.trim()).map(Angle::PiFraction))
                .collect::<Result<Vec<_>>>()?;
            let exists = polygon_exists(&parsed)?;
            Ok(Outcome::new(format!("exists: {exists}"), json!({ "exists": exists }), exists))
        }
        Command::Bounds { dim, compact, right_angled } => {
            let v = dimension_bounds(*dim, *compact, *right_angled)?;
            let text = format!("{:?} (bound {}): {}", v.feasibility, v.bound, v.note);
            Ok(Outcome::new(text, json!(v), v.feasibility != Feasibility::Impossible))
        }
        Command::Andreev { file, fixture, mode } => {
            let p: LabeledPolytope3 = match (file, fixture) {
                (Some(path), _) => polytope_from_json(&read(path)?)?,
                (None, Some(name)) => fixtures::polytope(name).ok_or_else(|| anyhow!("unknown polytope {name}"))?,
                (None, None) => bail!("a polytope is required (--file or --fixture)"),
            };
            let mode = match mode {
                VolumeArg::Compact => AndreevMode::Compact,
                VolumeArg::FiniteVolume => AndreevMode::FiniteVolume,
            };
            match andreev_check(&p, mode) {
                Ok(v) => {
                    let mut text = format!("realizable: {}", v.realizable);
                    for f in &v.failures {
                        text.push_str(&format!("\n{}", serde_json::to_string(f)?));
                    }
                    Ok(Outcome::new(text, json!(v), v.realizable))
                }
                Err(e @ AndreevError::Tetrahedron) => Ok(Outcome::refused(e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Command::HitchinDim { n, angles } => {
            let ms = angles
                .split(',')
                .map(|a| a.trim().parse::<u32>().with_context(|| format!("invalid angle label {a:?}")))
                .collect::<Result<Vec<_>>>()?;
            match hitchin_dimension(*n, &ms) {
                Ok(d) => Ok(Outcome::new(d.to_string(), json!({ "n": n, "angles": ms, "dimension": d }), true)),
                Err(e @ HitchinError::NotHyperbolic(_)) => Ok(Outcome::refused(e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Command::Render { input, depth, svg_out } => {
            let a = cartan(input)?;
            let tiling = match tile_orbit(&tits_simplex(&a), *depth) {
                Ok(t) => t,
                Err(e @ (RenderError::NotNegativeType(_) | RenderError::Reducible | RenderError::ChartFailure { .. })) => {
                    return Ok(Outcome::refused(e.to_string()))
                }
                Err(e) => return Err(e.into()),
            };
            let svg = emit_svg(&tiling, &SvgStyle::default());
            let text = match svg_out {
                Some(path) => {
                    fs::write(path, &svg).with_context(|| format!("writing {}", path.display()))?;
                    format!("{} tiles written to {}", tiling.tiles.len(), path.display())
                }
                None => svg,
            };
            Ok(Outcome::new(text, json!(tiling), true))
        }
        Command::Fixtures { name } => {
            let entries = fixtures::named_catalog(name).ok_or_else(|| anyhow!("unknown catalog {name}"))?;
            let text = entries
                .iter()
                .map(|e| format!("# name: {}\n{}", e.name, render_dsl(&e.diagram).trim_end()))
                .collect::<Vec<_>>()
                .join("\n---\n");
            let json: Vec<Value> = entries.iter().map(|e| json!({ "name": e.name, "diagram": e.diagram })).collect();
            Ok(Outcome::new(text, json!(json), true))
        }
    }
}

fn parse_fraction(text: &str) -> Result<Ratio<i64>> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>()?, d.trim().parse::<i64>()?),
        None => (text.parse::<i64>()?, 1),
    };
    if den == 0 {
        bail!("zero denominator in {text:?}");
    }
    Ok(Ratio::new(num, den))
}
