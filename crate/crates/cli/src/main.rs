//! `biinv`: bi-invariant metric analysis from the command line.

mod format;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biinvariant::io::{parse_algebra, parse_metric, AlgebraFile, MetricFile};
use biinvariant::metrics::{coordinates_conformal, coordinates_isometric};
use biinvariant::{
    canonical_coordinates, catalog, compact_type_check, invariant_form_space, moduli_description,
    positivity_probe, simple_ideals, BiInvariantCoordinates, Error, LieAlgebra, Metric, Tolerances,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use format::{human, matrix, num, nums, tuple};

#[derive(Parser)]
#[command(name = "biinv", version, about = "Bi-invariant metrics on Lie algebras given by structure constants")]
struct Cli {
    /// Base tolerance for rank, Jacobi and skew-adjointness tests.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the randomized decomposition and curvature sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a machine-readable JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Skip the Jacobi identity check on input algebras.
    #[arg(long, global = true)]
    skip_validate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an algebra and describe its moduli spaces.
    Analyze {
        /// Algebra file, or `-` for stdin.
        algebra: PathBuf,
    },
    /// Test whether a metric is bi-invariant and print its coordinates.
    CheckMetric { algebra: PathBuf, metric: PathBuf },
    /// Decide isometry or conformal equivalence of two metrics.
    Equivalent {
        #[arg(long, value_enum, default_value_t = Mode::Isometry)]
        mode: Mode,
        algebra1: PathBuf,
        metric1: PathBuf,
        algebra2: PathBuf,
        metric2: PathBuf,
    },
    /// Ricci, scalar and sampled sectional curvature of a bi-invariant metric.
    Curvature {
        algebra: PathBuf,
        metric: PathBuf,
        #[arg(long, default_value_t = biinvariant::curvature::DEFAULT_SAMPLES)]
        samples: usize,
        /// Emit the sampled sectional curvatures as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries with their expected moduli.
    List,
    /// Write an entry as an algebra file to stdout.
    Emit { name: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Isometry,
    Conformal,
}

/// A command's outcome: a report to print and the exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::Parse(_) | Error::InvalidAlgebra(_) | Error::DimensionMismatch { .. } => 2,
            Error::UnknownCatalogEntry(_) => 2,
            Error::Jacobi { .. } => 3,
            Error::NotCompactType(_) => 4,
            Error::NotPositiveDefinite { .. } => 5,
            Error::NotBiInvariant | Error::Proportionality { .. } => 1,
            _ => 6,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Report, Failure>;

struct Context {
    tol: Tolerances,
    seed: u64,
    validate: bool,
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let result = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    result.map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

impl Context {
    fn parse_algebra(&self, path: &Path) -> Result<LieAlgebra, Failure> {
        Ok(parse_algebra(&read_input(path)?)?.to_algebra()?)
    }

    fn validate(&self, g: &LieAlgebra) -> Result<(), Failure> {
        if self.validate {
            g.ensure_jacobi(self.tol.jacobi)?;
        }
        Ok(())
    }

    fn load_algebra(&self, path: &Path) -> Result<LieAlgebra, Failure> {
        let g = self.parse_algebra(path)?;
        self.validate(&g)?;
        Ok(g)
    }

    fn require_compact(&self, g: &LieAlgebra) -> Result<(), Failure> {
        let report = compact_type_check(g, &self.tol);
        if report.is_compact_type {
            Ok(())
        } else {
            Err(Error::NotCompactType(report.reason).into())
        }
    }

    fn to_metric(&self, file: &MetricFile, g: &LieAlgebra, path: &Path) -> Result<Metric, Failure> {
        let loaded = file.to_metric(&self.tol)?;
        if loaded.metric.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: loaded.metric.dim(),
            }
            .into());
        }
        if loaded.was_symmetrized() {
            eprintln!(
                "warning: {} is asymmetric by {:.3e}; using its symmetric part",
                path.display(),
                loaded.asymmetry
            );
        }
        Ok(loaded.metric)
    }

    /// Algebra-metric pairs checked in contract order across all inputs:
    /// parse, Jacobi, compact type, positive definite.
    fn load_pairs<const N: usize>(&self, paths: [(&Path, &Path); N]) -> Result<Vec<(LieAlgebra, Metric)>, Failure> {
        let mut parsed = Vec::with_capacity(N);
        for (algebra, metric) in paths {
            parsed.push((self.parse_algebra(algebra)?, parse_metric(&read_input(metric)?)?, metric));
        }
        for (g, _, _) in &parsed {
            self.validate(g)?;
        }
        for (g, _, _) in &parsed {
            self.require_compact(g)?;
        }
        parsed
            .into_iter()
            .map(|(g, file, path)| {
                let m = self.to_metric(&file, &g, path)?;
                Ok((g, m))
            })
            .collect()
    }

    fn load_pair(&self, algebra: &Path, metric: &Path) -> Result<(LieAlgebra, Metric), Failure> {
        Ok(self.load_pairs([(algebra, metric)])?.remove(0))
    }
}

fn coordinates_json(c: &BiInvariantCoordinates) -> Value {
    json!({
        "center_dim": c.center_dim,
        "alpha": nums(&c.alpha_vector()),
        "classes": c.classes.iter().map(|cl| json!({
            "dim": cl.fingerprint.dim,
            "rank": cl.fingerprint.rank,
            "alpha": nums(&cl.alphas),
        })).collect::<Vec<_>>(),
    })
}

fn analyze(ctx: &Context, path: &Path) -> Outcome {
    let g = ctx.load_algebra(path)?;
    let report = compact_type_check(&g, &ctx.tol);
    let forms = invariant_form_space(&g, &ctx.tol).len();
    let mut text = vec![
        format!("algebra: {}", g.name()),
        format!("dimension: {}", g.dim()),
        format!("jacobi: {}", if ctx.validate { "ok" } else { "skipped" }),
    ];
    let mut doc = json!({
        "command": "analyze",
        "name": g.name(),
        "dim": g.dim(),
        "jacobi_checked": ctx.validate,
        "compact_type": report.is_compact_type,
        "compact_type_reason": report.reason,
        "invariant_form_dim": forms,
    });
    if !report.is_compact_type {
        text.push(format!("compact type: no ({})", report.reason));
        text.push(format!("invariant form dimension: {forms}"));
        text.push("no bi-invariant metric exists".into());
        doc["bi_invariant_metric_exists"] = json!(false);
        return Ok(Report {
            text: text.join("\n"),
            json: doc,
            code: 0,
        });
    }
    let d = simple_ideals(&g, ctx.seed, &ctx.tol)?;
    let moduli = moduli_description(&g, ctx.seed, &ctx.tol)?;
    text.push(format!("compact type: yes ({})", report.reason));
    text.push(format!("center dimension: {}", d.center_dim()));
    text.push(format!("ideals: {}", d.ideals.len()));
    for (i, ideal) in d.ideals.iter().enumerate() {
        let f = &ideal.fingerprint;
        text.push(format!(
            "  ideal {i}: dim {}, rank {}, roots {}, root lengths {}",
            f.dim,
            f.rank,
            f.root_count,
            tuple(&distinct(&f.root_profile))
        ));
    }
    text.push(format!("class sizes: {:?}", d.class_sizes()));
    text.push(format!("invariant form dimension: {forms}"));
    text.push(moduli.summary());
    doc["bi_invariant_metric_exists"] = json!(true);
    doc["center_dim"] = json!(d.center_dim());
    doc["ideal_dims"] = json!(d.ideal_dims());
    doc["class_sizes"] = json!(d.class_sizes());
    doc["ideals"] = Value::Array(
        d.ideals
            .iter()
            .map(|i| {
                let f = &i.fingerprint;
                json!({"dim": f.dim, "rank": f.rank, "root_count": f.root_count, "root_profile": nums(&f.root_profile)})
            })
            .collect(),
    );
    doc["bi"] = json!(moduli.bi.to_string());
    doc["bi_model"] = json!(moduli.bi.model());
    doc["bi_dim"] = json!(moduli.bi.dim());
    doc["ebi"] = json!(moduli.ebi.to_string());
    doc["ebi_model"] = json!(moduli.ebi.model());
    doc["ebi_dim"] = json!(moduli.ebi.dim());
    doc["summary"] = json!(moduli.summary());
    Ok(Report {
        text: text.join("\n"),
        json: doc,
        code: 0,
    })
}

fn distinct(sorted: &[f64]) -> Vec<f64> {
    let mut v = sorted.to_vec();
    v.dedup();
    v
}

fn check_metric(ctx: &Context, algebra: &Path, metric: &Path) -> Outcome {
    let (g, m) = ctx.load_pair(algebra, metric)?;
    let mut doc = json!({"command": "check-metric", "name": g.name(), "dim": g.dim()});
    match canonical_coordinates(&g, &m, ctx.seed, &ctx.tol) {
        Ok(c) => {
            doc["bi_invariant"] = json!(true);
            doc["coordinates"] = coordinates_json(&c);
            let text = [
                "bi-invariant: yes".to_string(),
                format!("center dimension: {}", c.center_dim),
                format!("class sizes: {:?}", c.class_sizes()),
                format!("α = {}", tuple(&c.alpha_vector())),
            ];
            Ok(Report {
                text: text.join("\n"),
                json: doc,
                code: 0,
            })
        }
        Err(e @ (Error::NotBiInvariant | Error::Proportionality { .. })) => {
            doc["bi_invariant"] = json!(false);
            doc["reason"] = json!(e.to_string());
            Ok(Report {
                text: format!("bi-invariant: no ({e})"),
                json: doc,
                code: 1,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn equivalent(ctx: &Context, mode: Mode, paths: [&Path; 4]) -> Outcome {
    let mut pairs = ctx.load_pairs([(paths[0], paths[1]), (paths[2], paths[3])])?.into_iter();
    let (g1, m1) = pairs.next().expect("two pairs");
    let (g2, m2) = pairs.next().expect("two pairs");
    let side = |g: &LieAlgebra, m: &Metric, i: usize| {
        canonical_coordinates(g, m, ctx.seed, &ctx.tol).map_err(|e| Failure {
            message: format!("metric {i}: {e}"),
            ..Failure::from(e)
        })
    };
    let (c1, c2) = (side(&g1, &m1, 1)?, side(&g2, &m2, 2)?);
    let mut doc = json!({
        "command": "equivalent",
        "mode": match mode { Mode::Isometry => "isometry", Mode::Conformal => "conformal" },
        "coordinates": [coordinates_json(&c1), coordinates_json(&c2)],
    });
    let (equivalent, mut text) = match mode {
        Mode::Isometry => {
            let eq = coordinates_isometric(&c1, &c2, &ctx.tol);
            (eq, vec![format!("isometric: {}", yes_no(eq))])
        }
        Mode::Conformal => {
            let v = coordinates_conformal(&c1, &c2, &ctx.tol);
            let mut lines = vec![format!("conformally equivalent: {}", yes_no(v.equivalent))];
            if let Some(l) = v.lambda {
                lines.push(format!("λ = {} (metric 1 ≅ λ · metric 2)", human(l)));
                doc["lambda"] = num(l);
            }
            (v.equivalent, lines)
        }
    };
    doc["equivalent"] = json!(equivalent);
    text.push(format!("α₁ = {}", tuple(&c1.alpha_vector())));
    text.push(format!("α₂ = {}", tuple(&c2.alpha_vector())));
    Ok(Report {
        text: text.join("\n"),
        json: doc,
        code: if equivalent { 0 } else { 1 },
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn curvature(ctx: &Context, algebra: &Path, metric: &Path, samples: usize, csv: bool) -> Outcome {
    let (g, m) = ctx.load_pair(algebra, metric)?;
    let r = positivity_probe(&g, &m, samples, ctx.seed, &ctx.tol)?;
    if csv {
        let mut text = vec!["plane_index,sectional".to_string()];
        text.extend(r.samples.iter().enumerate().map(|(i, s)| format!("{i},{}", format::round_sig(*s, 12))));
        return Ok(Report {
            text: text.join("\n"),
            json: Value::Null,
            code: 0,
        });
    }
    let ric = r.ricci.to_matrix();
    let mut text = vec!["ricci:".to_string()];
    text.extend(ric.row_iter().map(|row| {
        let xs: Vec<f64> = row.iter().copied().collect();
        format!("  {}", tuple(&xs))
    }));
    text.push(format!("scalar curvature: {}", human(r.scalar)));
    text.push(format!(
        "min sectional ({} samples): {}",
        r.samples.len(),
        human(r.min_sectional_sampled)
    ));
    match &r.zero_plane {
        Some((x, y)) => text.push(format!("zero plane: x = {}, y = {}", tuple(x), tuple(y))),
        None => text.push("zero plane: none".into()),
    }
    match r.einstein_constant {
        Some(c) => text.push(format!("einstein constant: {}", human(c))),
        None => text.push("einstein constant: none".into()),
    }
    text.push(format!("flat: {}", yes_no(r.flat)));
    let doc = json!({
        "command": "curvature",
        "name": g.name(),
        "dim": g.dim(),
        "ricci": matrix(&ric),
        "scalar": num(r.scalar),
        "samples": r.samples.len(),
        "min_sectional_sampled": num(r.min_sectional_sampled),
        "zero_plane": r.zero_plane.as_ref().map(|(x, y)| json!([nums(x), nums(y)])),
        "einstein_constant": r.einstein_constant.map(num),
        "flat": r.flat,
    });
    Ok(Report {
        text: text.join("\n"),
        json: doc,
        code: 0,
    })
}

fn catalog_list() -> Outcome {
    let entries = catalog::all();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut text = Vec::new();
    let mut docs = Vec::new();
    for e in &entries {
        let x = &e.expected;
        let summary = if x.compact_type {
            let rel = |s: &str| if s == "point" { "=" } else { "≅" };
            format!(
                "BI {} {}; EBI {} {}",
                rel(&x.bi_description),
                x.bi_description,
                rel(&x.ebi_description),
                x.ebi_description
            )
        } else {
            "no bi-invariant metric".into()
        };
        text.push(format!("{:<width$}  dim {:>2}  {summary}", e.name, e.algebra.dim()));
        docs.push(json!({
            "name": e.name,
            "dim": e.algebra.dim(),
            "compact_type": x.compact_type,
            "center_dim": x.center_dim,
            "ideal_dims": x.ideal_dims,
            "class_sizes": x.class_sizes,
            "invariant_form_dim": x.invariant_form_dim,
            "bi": x.bi_description,
            "ebi": x.ebi_description,
        }));
    }
    Ok(Report {
        text: text.join("\n"),
        json: json!({"command": "catalog list", "entries": docs}),
        code: 0,
    })
}

fn catalog_emit(name: &str) -> Outcome {
    let entry = catalog::builtin(name)?;
    let file = AlgebraFile::from_algebra(&entry.algebra);
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    Ok(Report {
        json: serde_json::from_str(&text).expect("valid json"),
        text,
        code: 0,
    })
}

fn run(cli: &Cli, ctx: &Context) -> Outcome {
    match &cli.command {
        Command::Analyze { algebra } => analyze(ctx, algebra),
        Command::CheckMetric { algebra, metric } => check_metric(ctx, algebra, metric),
        Command::Equivalent {
            mode,
            algebra1,
            metric1,
            algebra2,
            metric2,
        } => equivalent(ctx, *mode, [algebra1, metric1, algebra2, metric2]),
        Command::Curvature {
            algebra,
            metric,
            samples,
            csv,
        } => curvature(ctx, algebra, metric, *samples, *csv),
        Command::Catalog { action } => match action {
            CatalogAction::List => catalog_list(),
            CatalogAction::Emit { name } => catalog_emit(name),
        },
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match cli.tol {
        Some(t) if t > 0.0 && t.is_finite() => Tolerances::with_base(t),
        Some(t) => {
            eprintln!("error: --tol must be a positive number, got {t}");
            return ExitCode::from(2);
        }
        None => Tolerances::default(),
    };
    let ctx = Context {
        tol,
        seed: cli.seed,
        validate: !cli.skip_validate,
    };
    let emit_catalog = matches!(cli.command, Command::Catalog { action: CatalogAction::Emit { .. } });
    let csv = matches!(cli.command, Command::Curvature { csv: true, .. });
    match run(&cli, &ctx) {
        Ok(report) => {
            if cli.json && !emit_catalog && !csv {
                emit(&serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                emit(&report.text);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.json {
                let doc = json!({"error": {"code": f.code, "message": f.message}});
                emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            ExitCode::from(f.code)
        }
    }
}
