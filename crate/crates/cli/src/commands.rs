//! Subcommands of the `ngap` binary.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ngap_core::generator::RNG_NAME;
use ngap_core::object::DimCounts;
use ngap_core::{
    census, generate, verify_with_census, CellCensus, DigitalObject, Shape, ShapeSpec,
};
use serde::Serialize;
use thiserror::Error;

use crate::dvo::{self, DvoError};
use crate::report::{self, Report};

/// Largest object (in voxels) accepted by any command.
pub const MAX_VOXELS: u64 = 1_000_000;
/// Largest ambient dimension for which a census is computed.
pub const MAX_CENSUS_DIM: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: DvoError },
    #[error("{0}")]
    Usage(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("gap counts disagree: {0}")]
    Disagreement(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error(transparent)]
    Core(#[from] ngap_core::Error),
}

impl CliError {
    /// 2 input error, 3 internal inconsistency (including a failed identity),
    /// 4 resource cap.
    pub fn exit_code(&self) -> u8 {
        use ngap_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Disagreement(_) | CliError::IdentityFailure(_) => 3,
            CliError::Cap(_) => 4,
            CliError::Core(E::Inconsistent(_)) => 3,
            CliError::Core(E::VolumeTooLarge { .. } | E::DimensionTooLarge { .. }) => 4,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "ngap",
    version,
    about = "Count and verify (n-2)-gaps of digital objects"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Census and g_{n-2} by all three methods.
    Count {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// List the hubs in doubled coordinates.
        #[arg(long)]
        hubs: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Histogram of the (n-2)-cell configurations.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run every counting identity on a file or on seeded random objects.
    Verify(VerifyArgs),
    /// Write a named or random object as .dvo.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub file: Option<PathBuf>,
    /// Objects with seeds SEED, SEED+1, ..., one per trial.
    #[arg(long, num_args = 5, value_names = ["N", "EXTENT", "DENSITY", "SEED", "TRIALS"])]
    pub random: Option<Vec<String>>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    #[value(name = "single")]
    Single,
    #[value(name = "box")]
    Box,
    #[value(name = "diagonal_pair")]
    DiagonalPair,
    #[value(name = "l_block")]
    LBlock,
    #[value(name = "facet_block")]
    FacetBlock,
    #[value(name = "checkerboard")]
    Checkerboard,
    #[value(name = "random")]
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub shape: ShapeKind,
    #[arg(long)]
    pub n: usize,
    /// Box extents; a single value is used for every axis.
    #[arg(long, value_delimiter = ',')]
    pub extents: Option<Vec<u32>>,
    /// Keep probability, as a decimal or a fraction `p/q`.
    #[arg(long, value_parser = parse_density)]
    pub density: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `0.25`, `1/4` or `1`; the value must lie in `[0, 1]`.
pub fn parse_density(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            if q == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            p as f64 / q as f64
        }
        None => s
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("bad density {s:?}"))?,
    };
    if !(0.0..=1.0).contains(&value) {
        return Err(format!("density {s} outside [0, 1]"));
    }
    Ok(value)
}

pub fn read_object(path: &Path) -> CliResult<DigitalObject> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    dvo::parse(&text).map_err(|source| CliError::Parse {
        path: shown,
        source,
    })
}

fn check_caps(d: &DigitalObject) -> CliResult {
    if d.n() > MAX_CENSUS_DIM {
        return Err(CliError::Cap(format!(
            "n = {} exceeds {MAX_CENSUS_DIM}",
            d.n()
        )));
    }
    if d.len() as u64 > MAX_VOXELS {
        return Err(CliError::Cap(format!(
            "{} voxels exceed {MAX_VOXELS}",
            d.len()
        )));
    }
    Ok(())
}

fn check_volume(n: usize, extents: &[u32]) -> CliResult {
    let volume = extents
        .iter()
        .try_fold(1u64, |acc, &e| acc.checked_mul(u64::from(e)))
        .unwrap_or(u64::MAX);
    if volume > MAX_VOXELS {
        return Err(CliError::Cap(format!(
            "box of {volume} voxels (n = {n}) exceeds {MAX_VOXELS}"
        )));
    }
    Ok(())
}

/// Census with one free `(n-1)`-cell too many; test hook for failure paths.
fn corrupt(cen: &mut CellCensus) {
    let i = cen.n() - 1;
    let k = cen.counts(i);
    cen.inject_fault(
        i,
        DimCounts {
            total: k.total + 1,
            free: k.free + 1,
            non_free: k.non_free,
        },
    );
}

fn census_for(d: &DigitalObject, inject_fault: bool) -> CellCensus {
    let mut cen = census(d);
    if inject_fault {
        corrupt(&mut cen);
    }
    cen
}

/// Runs one parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Count {
            file,
            json,
            hubs,
            inject_fault,
        } => cmd_count(&file, json, hubs, inject_fault, out),
        Command::Classify { file, json } => cmd_classify(&file, json, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            path: "<output>".into(),
            source,
        })
}

pub fn count_report(d: &DigitalObject, hubs: bool, inject_fault: bool) -> CliResult<Report> {
    check_caps(d)?;
    let cen = census_for(d, inject_fault);
    Ok(report::build(d, &cen, hubs)?)
}

fn cmd_count(
    file: &Path,
    json: bool,
    hubs: bool,
    inject_fault: bool,
    out: &mut dyn Write,
) -> CliResult {
    let d = read_object(file)?;
    let r = count_report(&d, hubs, inject_fault)?;
    emit(out, &if json { r.to_json() } else { r.to_text() })?;
    match (&r.gaps, r.agreement) {
        (Some(g), false) => Err(CliError::Disagreement(format!(
            "{}: oracle {}, formula {}, brimkov {}",
            file.display(),
            g.oracle,
            g.formula,
            g.brimkov
        ))),
        _ => Ok(()),
    }
}

fn cmd_classify(file: &Path, json: bool, out: &mut dyn Write) -> CliResult {
    let d = read_object(file)?;
    check_caps(&d)?;
    if d.n() < 2 {
        return Err(CliError::Usage(format!(
            "{}: classification needs n >= 2, found n = {}",
            file.display(),
            d.n()
        )));
    }
    let cen = census(&d);
    let h = report::classify_all(&d, &cen)?;
    if h.total() != cen.c(d.n() - 2) {
        return Err(ngap_core::Error::Inconsistent(format!(
            "histogram total {} differs from c_{} = {}",
            h.total(),
            d.n() - 2,
            cen.c(d.n() - 2)
        ))
        .into());
    }
    if json {
        let mut s = serde_json::to_string_pretty(&h).expect("histogram serializes");
        s.push('\n');
        emit(out, &s)
    } else {
        emit(out, &report::histogram_text(&h))
    }
}

#[derive(Debug, Serialize)]
struct IdentityTally {
    name: &'static str,
    passed: u64,
    failed: u64,
}

#[derive(Debug, Serialize)]
struct Witness {
    label: String,
    identity: &'static str,
    detail: String,
    object: String,
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    objects: u64,
    passed: bool,
    identities: Vec<IdentityTally>,
    failures: Vec<Witness>,
}

struct RandomPlan {
    n: usize,
    extent: u32,
    density: f64,
    seed: u64,
    trials: u64,
}

fn parse_random(values: &[String]) -> CliResult<RandomPlan> {
    let bad = |what: &str, v: &str| CliError::Usage(format!("--random: bad {what} {v:?}"));
    let [n, extent, density, seed, trials] = values else {
        return Err(CliError::Usage(
            "--random takes N EXTENT DENSITY SEED TRIALS".into(),
        ));
    };
    Ok(RandomPlan {
        n: n.parse().map_err(|_| bad("N", n))?,
        extent: extent.parse().map_err(|_| bad("EXTENT", extent))?,
        density: parse_density(density).map_err(CliError::Usage)?,
        seed: seed.parse().map_err(|_| bad("SEED", seed))?,
        trials: trials.parse().map_err(|_| bad("TRIALS", trials))?,
    })
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let jobs: Box<dyn Iterator<Item = CliResult<(String, DigitalObject)>>> =
        match (&args.file, &args.random) {
            (Some(file), _) => {
                let d = read_object(file)?;
                Box::new(std::iter::once(Ok((file.display().to_string(), d))))
            }
            (None, Some(values)) => {
                let plan = parse_random(values)?;
                if plan.n == 0 || plan.extent == 0 {
                    return Err(CliError::Usage(
                        "--random: N and EXTENT must be positive".into(),
                    ));
                }
                if plan.n > MAX_CENSUS_DIM {
                    return Err(CliError::Cap(format!(
                        "n = {} exceeds {MAX_CENSUS_DIM}",
                        plan.n
                    )));
                }
                check_volume(plan.n, &vec![plan.extent; plan.n])?;
                Box::new((0..plan.trials).map(move |t| {
                    let seed = plan.seed.wrapping_add(t);
                    let spec = ShapeSpec::new(
                        plan.n,
                        Shape::Random {
                            extents: vec![plan.extent; plan.n],
                            density: plan.density,
                            seed,
                        },
                    );
                    Ok((format!("seed {seed}"), generate(&spec)?))
                }))
            }
            (None, None) => return Err(CliError::Usage("give a file or --random".into())),
        };

    let mut summary = VerifySummary {
        objects: 0,
        passed: true,
        identities: Vec::new(),
        failures: Vec::new(),
    };
    for job in jobs {
        let (label, d) = job?;
        check_caps(&d)?;
        let cen = census_for(&d, args.inject_fault);
        let result = verify_with_census(&d, &cen)?;
        summary.objects += 1;
        for o in &result.outcomes {
            let tally = match summary.identities.iter_mut().find(|t| t.name == o.name) {
                Some(t) => t,
                None => {
                    summary.identities.push(IdentityTally {
                        name: o.name,
                        passed: 0,
                        failed: 0,
                    });
                    summary.identities.last_mut().expect("just pushed")
                }
            };
            if o.passed {
                tally.passed += 1;
            } else {
                tally.failed += 1;
                summary.passed = false;
                summary.failures.push(Witness {
                    label: label.clone(),
                    identity: o.name,
                    detail: o.detail.clone(),
                    object: dvo::write(&d, &[]),
                });
            }
        }
    }

    let text = if args.json {
        let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
        s.push('\n');
        s
    } else {
        verify_text(&summary)
    };
    emit(out, &text)?;
    if summary.passed {
        Ok(())
    } else {
        let names: Vec<&str> = summary
            .identities
            .iter()
            .filter(|t| t.failed > 0)
            .map(|t| t.name)
            .collect();
        Err(CliError::IdentityFailure(names.join(", ")))
    }
}

fn verify_text(s: &VerifySummary) -> String {
    let mut out = String::new();
    for t in &s.identities {
        let status = if t.failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {:<24} {} passed, {} failed",
            t.name, t.passed, t.failed
        );
    }
    for w in &s.failures {
        let _ = writeln!(out, "\nfailure: {} ({})", w.identity, w.label);
        let _ = writeln!(out, "  {}", w.detail);
        for line in w.object.lines() {
            let _ = writeln!(out, "  | {line}");
        }
    }
    let _ = writeln!(
        out,
        "{} object(s): {}",
        s.objects,
        if s.passed {
            "all identities hold"
        } else {
            "FAILED"
        }
    );
    out
}

/// Resolves the generation flags into a shape and its header comments.
pub fn gen_spec(args: &GenArgs) -> CliResult<(ShapeSpec, Vec<String>)> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let uses_extents = matches!(
        args.shape,
        ShapeKind::Box | ShapeKind::Checkerboard | ShapeKind::Random
    );
    let extents = match (&args.extents, uses_extents) {
        (Some(_), false) => {
            return Err(CliError::Usage(format!(
                "--extents does not apply to shape {:?}",
                args.shape
            )))
        }
        (None, true) => return Err(CliError::Usage("--extents is required".into())),
        (None, false) => Vec::new(),
        (Some(e), true) if e.len() == 1 => vec![e[0]; n],
        (Some(e), true) => e.clone(),
    };
    if args.shape != ShapeKind::Random && (args.density.is_some() || args.seed.is_some()) {
        return Err(CliError::Usage(
            "--density and --seed only apply to shape random".into(),
        ));
    }
    if uses_extents {
        if extents.len() != n {
            return Err(CliError::Usage(format!(
                "{} extents given for n = {n}",
                extents.len()
            )));
        }
        check_volume(n, &extents)?;
    }
    let joined = extents
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let (shape, comments) = match args.shape {
        ShapeKind::Single => (Shape::Single, vec![format!("shape: single n={n}")]),
        ShapeKind::DiagonalPair => (
            Shape::DiagonalPair,
            vec![format!("shape: diagonal_pair n={n}")],
        ),
        ShapeKind::LBlock => (Shape::LBlock, vec![format!("shape: l_block n={n}")]),
        ShapeKind::FacetBlock => (Shape::FacetBlock, vec![format!("shape: facet_block n={n}")]),
        ShapeKind::Box => (
            Shape::Box { extents },
            vec![format!("shape: box n={n} extents={joined}")],
        ),
        ShapeKind::Checkerboard => (
            Shape::Checkerboard { extents },
            vec![format!("shape: checkerboard n={n} extents={joined}")],
        ),
        ShapeKind::Random => {
            let density = args.density.unwrap_or(0.5);
            let seed = args.seed.unwrap_or(0);
            (
                Shape::Random {
                    extents,
                    density,
                    seed,
                },
                vec![
                    format!("shape: random n={n} extents={joined} density={density} seed={seed}"),
                    format!("rng: {RNG_NAME}"),
                ],
            )
        }
    };
    Ok((ShapeSpec::new(n, shape), comments))
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult {
    let (spec, comments) = gen_spec(args)?;
    let d = generate(&spec)?;
    let text = dvo::write(&d, &comments);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => emit(out, &text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (CliResult, String) {
        let cli = Cli::try_parse_from(std::iter::once("ngap").chain(args.iter().copied()))
            .expect("arguments parse");
        let mut buf = Vec::new();
        let r = run(cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn densities() {
        assert_eq!(parse_density("1/4"), Ok(0.25));
        assert_eq!(parse_density("0.5"), Ok(0.5));
        assert_eq!(parse_density("1"), Ok(1.0));
        for bad in ["3/2", "1/0", "-0.1", "x", "1.5", "a/b"] {
            assert!(parse_density(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn gen_named_shapes() {
        let (r, out) = run_args(&["gen", "--shape", "diagonal_pair", "--n", "3"]);
        r.unwrap();
        assert_eq!(out, "dvo 3\n# shape: diagonal_pair n=3\n0 0 0\n1 1 0\n");
        let (r, out) = run_args(&["gen", "--shape", "box", "--n", "2", "--extents", "2,2"]);
        r.unwrap();
        assert_eq!(dvo::parse(&out).unwrap().len(), 4);
    }

    #[test]
    fn gen_rejects_inapplicable_flags() {
        for args in [
            &["gen", "--shape", "single", "--n", "3", "--extents", "2"][..],
            &["gen", "--shape", "box", "--n", "3"],
            &["gen", "--shape", "box", "--n", "3", "--extents", "2,2"],
            &[
                "gen",
                "--shape",
                "box",
                "--n",
                "2",
                "--extents",
                "2,2",
                "--seed",
                "1",
            ],
            &["gen", "--shape", "diagonal_pair", "--n", "1"],
        ] {
            let (r, _) = run_args(args);
            assert_eq!(r.unwrap_err().exit_code(), 2, "{args:?}");
        }
        let (r, _) = run_args(&["gen", "--shape", "box", "--n", "3", "--extents", "101"]);
        assert_eq!(r.unwrap_err().exit_code(), 4);
    }

    #[test]
    fn verify_random_passes_and_fault_fails() {
        let (r, out) = run_args(&["verify", "--random", "3", "3", "0.5", "42", "5"]);
        r.unwrap();
        assert!(out.ends_with("5 object(s): all identities hold\n"), "{out}");
        let (r, out) = run_args(&[
            "verify",
            "--random",
            "2",
            "3",
            "1/2",
            "1",
            "1",
            "--inject-fault",
        ]);
        let e = r.unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("census_partition"));
        assert!(out.contains("| dvo 2"));
    }

    #[test]
    fn verify_random_caps() {
        let (r, _) = run_args(&["verify", "--random", "9", "1", "0.5", "0", "1"]);
        assert_eq!(r.unwrap_err().exit_code(), 4);
        let (r, _) = run_args(&["verify", "--random", "3", "101", "0.5", "0", "1"]);
        assert_eq!(r.unwrap_err().exit_code(), 4);
        let (r, _) = run_args(&["verify", "--random", "3", "x", "0.5", "0", "1"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn verify_needs_exactly_one_source() {
        assert!(Cli::try_parse_from(["ngap", "verify"]).is_err());
        assert!(Cli::try_parse_from([
            "ngap", "verify", "f.dvo", "--random", "3", "3", "0.5", "1", "1"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["ngap", "verify", "--random", "3", "3", "0.5", "1"]).is_err());
    }

    #[test]
    fn exit_codes_of_core_errors() {
        let e: CliError = ngap_core::Error::Inconsistent("x".into()).into();
        assert_eq!(e.exit_code(), 3);
        let e: CliError = ngap_core::Error::ZeroDimension.into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = ngap_core::Error::VolumeTooLarge {
            volume: 30,
            cap: 20,
        }
        .into();
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn oversized_objects_hit_the_cap() {
        let d = DigitalObject::from_centers(9, [[0i64; 9]]).unwrap();
        assert_eq!(count_report(&d, false, false).unwrap_err().exit_code(), 4);
    }
}
