//! Command-line front end: instance generation, pipeline invocation,
//! certificate emission, and certification.
//!
//! Every pipeline subcommand re-checks its own output through the oracle
//! before exiting: exit 0 means "certificate produced and verified", exit 2
//! a precondition or parse failure, exit 3 an exhausted budget, exit 1 an
//! internal error or failed verification.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quantconvex::core::{Ball, Certificate, CertKind, Claim, Selected, Witness};
use quantconvex::oracle::{self, Instance};
use quantconvex::scalar::Scalar;
use quantconvex::tverberg::TverbergVariant;
use quantconvex::{approx, caratheodory, generate, helly, steinitz, tverberg};
use quantconvex::{Error, Result};

#[derive(Parser)]
#[command(name = "quantconvex", version, about = "Certified quantitative convexity pipelines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Instance JSON file (stdin when omitted).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file for the certificate or report (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rational tolerance "p/q".
    #[arg(long)]
    epsilon: Option<String>,
    /// Ambient dimension where the instance does not fix one.
    #[arg(long)]
    dim: Option<usize>,
    /// Number of parts / partition size.
    #[arg(long)]
    parts: Option<usize>,
    /// Deterministic seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration budget.
    #[arg(long)]
    budget: Option<usize>,
    /// Exact rational arithmetic (the default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Parse the tolerance as a float (uncertified paths only).
    #[arg(long)]
    float: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxMode {
    Inscribed,
    Circumscribed,
    Sandwich,
    Diameter,
}

#[derive(Clone, Copy, ValueEnum)]
enum BodyKind {
    Disk,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    ColoredBallClasses,
    HalfspaceFamily,
    TverbergQuant,
    TverbergColorful,
}

#[derive(Subcommand)]
enum Cmd {
    /// Colorful (or plain) Caratheodory selection for a target point.
    Caratheodory(Common),
    /// Colored Steinitz: certified ball in a rainbow selection hull.
    SteinitzBall(Common),
    /// Thrifty volume Steinitz selection at tolerance epsilon.
    SteinitzVolume(Common),
    /// Polytope approximation scans for the unit disk.
    Approx {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "disk")]
        body: BodyKind,
        #[arg(long, value_enum)]
        kind: ApproxMode,
        /// Emit a CSV (epsilon, k) curve over epsilon = 1/2 .. 1/20.
        #[arg(long)]
        emit_csv: bool,
    },
    /// Quantitative Helly volume witness.
    HellyVolume(Common),
    /// Quantitative Helly diameter witness.
    HellyDiameter(Common),
    /// Colorful Helly rainbow search.
    ColorfulHelly(Common),
    /// Classic Tverberg partition of plain points.
    Tverberg(Common),
    /// Quantitative Tverberg with a certified common ball.
    QuantTverberg(Common),
    /// Colorful quantitative Tverberg.
    ColorfulTverberg(Common),
    /// Re-verify a certificate against its instance.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Emit a seed-deterministic instance.
    Generate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Number of color classes (colored-ball-classes).
        #[arg(long)]
        classes: Option<usize>,
        /// Number of half-spaces (halfspace-family).
        #[arg(long)]
        members: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::EmptyPolytope
        | Error::Unbounded
        | Error::PreconditionFailed(_)
        | Error::Unsupported(_)
        | Error::ApproximateInCertifiedPath => ExitCode::from(2),
        Error::BudgetExceeded(_) => ExitCode::from(3),
        Error::Internal(_) => ExitCode::from(1),
    }
}

fn read_text(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_instance(common: &Common) -> Result<Instance> {
    let text = read_text(&common.input)?;
    let instance: Instance =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("instance JSON: {e}")))?;
    instance.validate()?;
    Ok(instance)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn epsilon_of(common: &Common) -> Result<Scalar> {
    let raw = common
        .epsilon
        .as_deref()
        .ok_or_else(|| Error::PreconditionFailed("this subcommand needs --epsilon".into()))?;
    let eps = Scalar::parse(raw)?;
    if common.float {
        return Ok(Scalar::Approx(eps.to_f64()));
    }
    Ok(eps)
}

/// Verifies the freshly produced certificate with the oracle, marks it, and
/// emits it. Exit 0 only on a passing verification.
fn emit_certified(
    mut cert: Certificate,
    instance: &Instance,
    common: &Common,
) -> Result<ExitCode> {
    let report = oracle::verify(&cert, instance)?;
    cert.verified = report.pass;
    let json = serde_json::to_string_pretty(&cert)
        .map_err(|e| Error::Internal(format!("certificate serialization: {e}")))?;
    write_out(&common.out, &json)?;
    if report.pass {
        eprintln!("certified: {:?} verified by the oracle", cert.kind);
        Ok(ExitCode::SUCCESS)
    } else {
        for note in &report.notes {
            eprintln!("verification failed: {note}");
        }
        Ok(ExitCode::from(1))
    }
}

fn parts_of(common: &Common, instance_parts: usize) -> usize {
    common.parts.unwrap_or(instance_parts)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Caratheodory(common) => {
            let instance = read_instance(&common)?;
            let Instance::Colored { family, target: Some(target) } = &instance else {
                return Err(Error::PreconditionFailed(
                    "caratheodory needs a colored instance with a target point".into(),
                ));
            };
            let sel: Vec<Selected> = if family.classes.len() == 1 {
                let combo = caratheodory::caratheodory_reduce(&family.classes[0], target)?;
                combo
                    .indices
                    .iter()
                    .zip(&combo.weights)
                    .map(|(&point, w)| Selected { class: 0, point, weight: Some(w.clone()) })
                    .collect()
            } else {
                let (picks, weights) =
                    caratheodory::colorful_caratheodory(&family.classes, target)?;
                picks
                    .iter()
                    .zip(&weights)
                    .enumerate()
                    .map(|(class, (&point, w))| Selected {
                        class,
                        point,
                        weight: Some(w.clone()),
                    })
                    .collect()
            };
            let cert = Certificate::new(
                CertKind::CaratheodorySelection,
                Witness::Selection(sel),
                Claim::Ball(Ball::new(target.clone(), Scalar::zero())?),
            );
            emit_certified(cert, &instance, &common)
        }
        Cmd::SteinitzBall(common) => {
            let instance = read_instance(&common)?;
            let Instance::Colored { family, .. } = &instance else {
                return Err(Error::PreconditionFailed(
                    "steinitz-ball needs a colored instance".into(),
                ));
            };
            let cert = match common.epsilon.as_deref() {
                None => steinitz::colored_steinitz_ball(family)?,
                Some(_) => steinitz::steinitz_ball_eps(family, &epsilon_of(&common)?)?,
            };
            emit_certified(cert, &instance, &common)
        }
        Cmd::SteinitzVolume(common) => {
            let instance = read_instance(&common)?;
            let Instance::ColoredWithBody { family, body } = &instance else {
                return Err(Error::PreconditionFailed(
                    "steinitz-volume needs a colored instance with a reference body".into(),
                ));
            };
            let cert = steinitz::thrifty_steinitz_volume(family, body, &epsilon_of(&common)?)?;
            emit_certified(cert, &instance, &common)
        }
        Cmd::Approx { common, body: BodyKind::Disk, kind, emit_csv } => {
            if emit_csv {
                let mut csv = String::from("epsilon,k\n");
                for q in 2..=20i64 {
                    let eps = Scalar::ratio(1, q);
                    let k = disk_k(kind, &eps, common.budget)?;
                    csv.push_str(&format!("1/{q},{k}\n"));
                }
                write_out(&common.out, &csv)?;
                return Ok(ExitCode::SUCCESS);
            }
            let eps = epsilon_of(&common)?;
            let k = disk_k(kind, &eps, common.budget)?;
            let report = serde_json::json!({
                "body": "disk",
                "kind": kind_name(kind),
                "epsilon": eps.render(),
                "k": k,
            });
            write_out(&common.out, &report.to_string())?;
            eprintln!("{} disk approximation at epsilon {}: k = {k}", kind_name(kind), eps);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::HellyVolume(common) => {
            let instance = read_instance(&common)?;
            let Instance::Halfspaces { halfspaces, .. } = &instance else {
                return Err(Error::PreconditionFailed(
                    "helly-volume needs a half-space instance".into(),
                ));
            };
            let cert = helly::extract_volume_witness(halfspaces, &epsilon_of(&common)?)?;
            emit_certified(cert, &instance, &common)
        }
        Cmd::HellyDiameter(common) => {
            let instance = read_instance(&common)?;
            let Instance::Halfspaces { halfspaces, .. } = &instance else {
                return Err(Error::PreconditionFailed(
                    "helly-diameter needs a half-space instance".into(),
                ));
            };
            let cert = helly::extract_diameter_witness(halfspaces, &epsilon_of(&common)?)?;
            emit_certified(cert, &instance, &common)
        }
        Cmd::ColorfulHelly(common) => {
            let instance = read_instance(&common)?;
            let Instance::HalfspaceFamilies { families, .. } = &instance else {
                return Err(Error::PreconditionFailed(
                    "colorful-helly needs a half-space family instance".into(),
                ));
            };
            let cert = helly::colorful_helly_search(families, &epsilon_of(&common)?, common.budget)?;
            emit_certified(cert, &instance, &common)
        }
        Cmd::Tverberg(common) => {
            let instance = read_instance(&common)?;
            let Instance::Points { dim, parts, points } = &instance else {
                return Err(Error::PreconditionFailed(
                    "tverberg needs a plain point instance".into(),
                ));
            };
            let m = parts_of(&common, *parts);
            let cert = tverberg::classic_tverberg_certificate(points, m)?;
            let instance = Instance::Points { dim: *dim, parts: m, points: points.clone() };
            emit_certified(cert, &instance, &common)
        }
        Cmd::QuantTverberg(common) => {
            let instance = read_instance(&common)?;
            let Instance::QuantSets { dim, parts, sets } = &instance else {
                return Err(Error::PreconditionFailed(
                    "quant-tverberg needs a quantitative set instance".into(),
                ));
            };
            let m = parts_of(&common, *parts);
            let variant = variant_of(&common)?;
            let cert = tverberg::quantitative_tverberg(
                *dim,
                m,
                sets,
                &variant,
                common.seed.unwrap_or(0),
            )?;
            let instance = Instance::QuantSets { dim: *dim, parts: m, sets: sets.clone() };
            emit_certified(cert, &instance, &common)
        }
        Cmd::ColorfulTverberg(common) => {
            let instance = read_instance(&common)?;
            let Instance::ColorfulQuantSets { dim, parts, classes } = &instance else {
                return Err(Error::PreconditionFailed(
                    "colorful-tverberg needs a colorful quantitative set instance".into(),
                ));
            };
            let m = parts_of(&common, *parts);
            let variant = variant_of(&common)?;
            let cert = tverberg::colorful_quantitative_tverberg(
                *dim,
                m,
                classes,
                &variant,
                common.budget,
            )?;
            let instance =
                Instance::ColorfulQuantSets { dim: *dim, parts: m, classes: classes.clone() };
            emit_certified(cert, &instance, &common)
        }
        Cmd::Certify { common, cert } => {
            let instance = read_instance(&common)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", cert.display())))?;
            let cert: Certificate = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("certificate JSON: {e}")))?;
            let report = oracle::verify(&cert, &instance)?;
            if report.pass {
                write_out(&common.out, "PASS")?;
                Ok(ExitCode::SUCCESS)
            } else {
                let mut lines = String::from("FAIL\n");
                for note in &report.notes {
                    lines.push_str(&format!("  {note}\n"));
                }
                write_out(&common.out, &lines)?;
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Generate { common, kind, classes, members } => {
            let dim = common.dim.unwrap_or(2);
            let seed = common.seed.unwrap_or(0);
            let parts = common.parts.unwrap_or(2);
            let variant = variant_of(&common)?;
            let instance = match kind {
                GenKind::ColoredBallClasses => {
                    generate::colored_ball_classes(dim, classes.unwrap_or(2 * dim), seed)?
                }
                GenKind::HalfspaceFamily => {
                    generate::halfspace_family(dim, members.unwrap_or(8), seed)?
                }
                GenKind::TverbergQuant => generate::tverberg_quant(dim, parts, &variant, seed)?,
                GenKind::TverbergColorful => {
                    generate::tverberg_colorful(dim, parts, &variant, seed)?
                }
            };
            let json = serde_json::to_string_pretty(&instance)
                .map_err(|e| Error::Internal(format!("instance serialization: {e}")))?;
            write_out(&common.out, &json)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Fixed-radius unless an epsilon is supplied.
fn variant_of(common: &Common) -> Result<TverbergVariant> {
    match common.epsilon.as_deref() {
        None => Ok(TverbergVariant::FixedRadius),
        Some(_) => Ok(TverbergVariant::Eps(epsilon_of(common)?)),
    }
}

fn kind_name(kind: ApproxMode) -> &'static str {
    match kind {
        ApproxMode::Inscribed => "inscribed",
        ApproxMode::Circumscribed => "circumscribed",
        ApproxMode::Sandwich => "sandwich",
        ApproxMode::Diameter => "diameter",
    }
}

fn disk_k(kind: ApproxMode, eps: &Scalar, budget: Option<usize>) -> Result<usize> {
    let eps = eps.expect_exact()?;
    match kind {
        ApproxMode::Inscribed => approx::disk_inscribed_k(eps, budget),
        ApproxMode::Circumscribed => approx::disk_circumscribed_k(eps, budget),
        ApproxMode::Sandwich => approx::disk_sandwich_k(eps, budget),
        ApproxMode::Diameter => approx::disk_diameter_k(eps, budget),
    }
}
