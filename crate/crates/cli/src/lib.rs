//! Commands behind the `ornament` binary. Each returns a [`CommandOutcome`]:
//! a JSON report for standard output, a one-line summary for standard
//! error, and the exit status.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;

use ornament_core::constructions::{
    default_trivial_targets, make_borromean, make_random_ornament, make_trivial, ConstructionError,
};
use ornament_core::degree::{check_dimensions, mu_via_degree_seeded};
use ornament_core::io::{DegreeDoc, HomotopyDoc, IoError, OrnamentDoc, TriplePointDoc, WitnessDoc};
use ornament_core::kernel::{parse_scalar, KernelError, Scalar, Vector};
use ornament_core::model::{perturb_ornament, validate_ornament, ManifoldDefect, ModelError};
use ornament_core::sweep::{
    default_repair_eps, default_targets, pair_opposite_signs, relative_sweep, resolve_generic,
    trivial_like,
};
use ornament_core::{mu_via_sweep, HomotopyTrack, MuError, Ornament};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    InvalidInput = 1,
    ContractViolation = 2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutcome {
    pub status: Status,
    pub report: Value,
    pub summary: String,
}

impl CommandOutcome {
    fn ok(report: Value, summary: impl Into<String>) -> Self {
        CommandOutcome {
            status: Status::Ok,
            report,
            summary: summary.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document { path: PathBuf, source: IoError },
    #[error("input ornament is not valid")]
    InvalidOrnament(Option<WitnessDoc>),
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Mu(#[from] MuError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Mu(
                MuError::NonGenericDirection { .. }
                | MuError::NonGenericTrack { .. }
                | MuError::RetriesExhausted(_),
            )
            | CliError::Model(ModelError::PerturbationExhausted(_)) => Status::ContractViolation,
            _ => Status::InvalidInput,
        }
    }
}

impl From<CliError> for CommandOutcome {
    fn from(e: CliError) -> Self {
        let mut report = json!({ "status": "error", "error": e.to_string() });
        if let CliError::InvalidOrnament(Some(w)) = &e {
            report["witness"] = json!(w);
        }
        CommandOutcome {
            status: e.status(),
            report,
            summary: format!("error: {e}"),
        }
    }
}

fn run(f: impl FnOnce() -> Result<CommandOutcome, CliError>) -> CommandOutcome {
    f().unwrap_or_else(CommandOutcome::from)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_ornament(path: &Path) -> Result<(OrnamentDoc, Ornament), CliError> {
    let doc_err = |source| CliError::Document {
        path: path.to_path_buf(),
        source,
    };
    let doc = OrnamentDoc::parse(&read(path)?).map_err(doc_err)?;
    let o = doc.to_ornament().map_err(doc_err)?;
    Ok((doc, o))
}

fn load_track(path: &Path) -> Result<HomotopyTrack, CliError> {
    let doc_err = |source| CliError::Document {
        path: path.to_path_buf(),
        source,
    };
    HomotopyDoc::parse(&read(path)?)
        .and_then(|d| d.to_track())
        .map_err(doc_err)
}

fn require_valid(o: &Ornament) -> Result<(), CliError> {
    match validate_ornament(o).witness {
        Some(w) => Err(CliError::InvalidOrnament(Some(WitnessDoc::from(&w)))),
        None => Ok(()),
    }
}

fn defect_json(d: &ManifoldDefect) -> Value {
    match d {
        ManifoldDefect::Empty => json!({ "kind": "empty" }),
        ManifoldDefect::RepeatedVertex { facet } => {
            json!({ "kind": "repeated_vertex", "facet": facet })
        }
        ManifoldDefect::Ridge { face, facets } => {
            json!({ "kind": "ridge", "face": face, "facets": facets })
        }
        ManifoldDefect::Incoherent { face, facets } => {
            json!({ "kind": "incoherent", "face": face, "facets": facets })
        }
        ManifoldDefect::Disconnected { components, facet } => {
            json!({ "kind": "disconnected", "components": components, "facet": facet })
        }
    }
}

/// Manifold reports per component and the ornament report.
pub fn cmd_validate(file: &Path) -> CommandOutcome {
    run(|| {
        let (doc, o) = load_ornament(file)?;
        let components: Vec<Value> = o
            .components()
            .iter()
            .zip(&doc.components)
            .map(|(c, d)| {
                let r = c.domain().validate();
                json!({
                    "name": d.name,
                    "valid": r.is_valid(),
                    "defect": r.defect.as_ref().map(defect_json),
                })
            })
            .collect();
        let manifolds_ok = components.iter().all(|c| c["valid"] == json!(true));
        let report = validate_ornament(&o);
        let valid = manifolds_ok && report.is_valid();
        let verdict = if valid { "valid" } else { "invalid" };
        Ok(CommandOutcome::ok(
            json!({
                "status": verdict,
                "components": components,
                "ornament": {
                    "valid": report.is_valid(),
                    "witness": report.witness.as_ref().map(WitnessDoc::from),
                },
            }),
            verdict,
        ))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Degree,
    Sweep,
    Both,
}

/// μ of the ornament in `file` by one or both algorithms.
pub fn cmd_mu(file: &Path, method: Method, seed: u64) -> CommandOutcome {
    run(|| {
        let (_, o) = load_ornament(file)?;
        mu_of(&o, method, seed)
    })
}

pub fn mu_of(o: &Ornament, method: Method, seed: u64) -> Result<CommandOutcome, CliError> {
    check_dimensions(o)?;
    require_valid(o)?;
    let mut report = json!({ "status": "ok" });
    let degree = match method {
        Method::Degree | Method::Both => {
            let r = mu_via_degree_seeded(o, seed)?;
            report["degree"] = json!(DegreeDoc::from(&r));
            Some(r.mu)
        }
        Method::Sweep => None,
    };
    let sweep = match method {
        Method::Sweep | Method::Both => {
            let mu = mu_via_sweep(o, seed)?;
            report["sweep"] = json!({ "mu": mu });
            Some(mu)
        }
        Method::Degree => None,
    };
    let mut status = Status::Ok;
    let summary = match (degree, sweep) {
        (Some(d), Some(s)) => {
            let agree = d == s;
            report["agree"] = json!(agree);
            if !agree {
                report["status"] = json!("disagreement");
                status = Status::ContractViolation;
            }
            format!(
                "mu = {d} (degree), {s} (sweep): {}",
                if agree { "agree" } else { "DISAGREE" }
            )
        }
        (Some(d), None) => format!("mu = {d} (degree)"),
        (None, Some(s)) => format!("mu = {s} (sweep)"),
        (None, None) => unreachable!("at least one method runs"),
    };
    report["mu"] = json!(degree.or(sweep));
    Ok(CommandOutcome {
        status,
        report,
        summary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Borromean,
    Trivial,
    Random,
}

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub kind: Kind,
    pub k: usize,
    pub r: usize,
    pub seed: u64,
    /// Perturbation radius applied after construction (`None`: no perturbation).
    pub eps: Option<String>,
    /// Half-width of the random family's vertex boxes.
    pub spread: String,
    /// `"p/q,…;…;…"` for the trivial ornament.
    pub targets: Option<String>,
    pub out: Option<PathBuf>,
}

fn scalar_arg(name: &str, text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).map_err(|e| CliError::Argument(format!("--{name}: {e}")))
}

pub fn parse_targets(text: &str, m: usize) -> Result<[Vector; 3], CliError> {
    let points: Vec<Vector> = text
        .split(';')
        .map(|p| {
            p.split(',')
                .map(|c| scalar_arg("targets", c))
                .collect::<Result<Vec<_>, _>>()
                .map(Vector::new)
        })
        .collect::<Result<_, _>>()?;
    if points.len() != 3 || points.iter().any(|p| p.dim() != m) {
        return Err(CliError::Argument(format!(
            "--targets: expected three points with {m} coordinates each"
        )));
    }
    Ok(points.try_into().expect("three points"))
}

/// Generates an ornament document, validating it before it is written.
pub fn cmd_gen(opts: &GenOptions) -> CommandOutcome {
    run(|| {
        if opts.k == 0 {
            return Err(CliError::Argument("--k must be at least 1".into()));
        }
        let m = 3 * opts.k - 1;
        let mut o = match opts.kind {
            Kind::Borromean => make_borromean(opts.k, opts.r, opts.seed)?,
            Kind::Trivial => {
                let targets = match &opts.targets {
                    Some(t) => parse_targets(t, m)?,
                    None => default_trivial_targets(opts.k),
                };
                make_trivial(opts.k, &targets)?
            }
            Kind::Random => make_random_ornament(
                opts.k,
                opts.r,
                opts.seed,
                &scalar_arg("spread", &opts.spread)?,
            )?,
        };
        if let Some(eps) = &opts.eps {
            o = perturb_ornament(&o, &scalar_arg("eps", eps)?, opts.seed)?;
        }
        require_valid(&o)?;
        let text = OrnamentDoc::from_ornament(&o).to_json();
        let summary = format!(
            "{:?} ornament in R^{m}, {} facets per component",
            opts.kind,
            o.component(0).domain().facets().len()
        )
        .to_lowercase();
        match &opts.out {
            Some(path) => {
                write(path, &text)?;
                Ok(CommandOutcome::ok(
                    json!({ "status": "ok", "out": path, "m": m }),
                    summary,
                ))
            }
            None => Ok(CommandOutcome::ok(
                serde_json::from_str(&text).expect("just serialized"),
                summary,
            )),
        }
    })
}

/// Signed triple points of a homotopy document, checked against the endpoint
/// μ values and paired by sign.
pub fn cmd_sweep(file: &Path, seed: u64) -> CommandOutcome {
    run(|| {
        let track = load_track(file)?;
        let out = relative_sweep(&track, seed)?;
        let sum = out.sign_sum();
        let mu_start = mu_via_degree_seeded(&track.start(), seed)?.mu;
        let mu_end = mu_via_degree_seeded(&track.end(), seed)?.mu;
        let identity = sum == mu_start - mu_end;
        let pairing = pair_opposite_signs(&out.points);
        let report = json!({
            "status": if identity { "ok" } else { "identity_failed" },
            "points": out.points.iter().map(TriplePointDoc::from).collect::<Vec<_>>(),
            "sum": sum,
            "mu_start": mu_start,
            "mu_end": mu_end,
            "identity": identity,
            "pairs": pairing.pairs,
            "unpaired": pairing.unpaired,
            "keyframes": out.track.times().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        });
        let summary = format!(
            "{} triple points, sum {sum}, mu(start) - mu(end) = {}",
            out.points.len(),
            mu_start - mu_end
        );
        Ok(CommandOutcome {
            status: if identity {
                Status::Ok
            } else {
                Status::ContractViolation
            },
            report,
            summary,
        })
    })
}

#[derive(Clone, Debug)]
pub enum TrackEnd {
    /// Constant maps at the given (or seeded default) targets.
    Trivial(Option<String>),
    /// A certified perturbation of radius `eps`.
    Perturbed(String),
    /// Another ornament document with the same domains.
    File(PathBuf),
}

/// Writes the straight-line homotopy from the ornament in `file` to `end`,
/// with keyframes repaired until the track is generic.
pub fn cmd_track(file: &Path, end: &TrackEnd, seed: u64, out: Option<&Path>) -> CommandOutcome {
    run(|| {
        let (_, o) = load_ornament(file)?;
        check_dimensions(&o)?;
        require_valid(&o)?;
        let target = match end {
            TrackEnd::Trivial(None) => trivial_like(&o, &default_targets(&o, seed))?,
            TrackEnd::Trivial(Some(t)) => trivial_like(&o, &parse_targets(t, o.ambient_dim())?)?,
            TrackEnd::Perturbed(eps) => perturb_ornament(&o, &scalar_arg("eps", eps)?, seed)?,
            TrackEnd::File(path) => {
                let (_, b) = load_ornament(path)?;
                require_valid(&b)?;
                o.with_images(b.images())
                    .ok()
                    .filter(|c| c == &b)
                    .ok_or_else(|| {
                        CliError::Argument("end ornament has different domains".into())
                    })?
            }
        };
        let line = HomotopyTrack::straight_line(&o, &target);
        let resolved = resolve_generic(&line, &default_repair_eps(&line), seed)?;
        let text = HomotopyDoc::from_track(&resolved.track).to_json();
        let summary = format!(
            "track with {} keyframes, {} triple points",
            resolved.track.times().len(),
            resolved.points.len()
        );
        match out {
            Some(path) => {
                write(path, &text)?;
                Ok(CommandOutcome::ok(
                    json!({ "status": "ok", "out": path }),
                    summary,
                ))
            }
            None => Ok(CommandOutcome::ok(
                serde_json::from_str(&text).expect("just serialized"),
                summary,
            )),
        }
    })
}
