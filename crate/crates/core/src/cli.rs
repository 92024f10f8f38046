//! Command-line front end. `run` never touches the process: it returns the
//! exit code and both output streams, which keeps every path testable.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgAction, ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cone::{ambient_ray, extreme_rays, irredundant, split_sides, ConeHRep, RowStatus};
use crate::configurations::{
    apartment_semistability, iso_semistable, sl_semistable, ApartmentConfiguration,
    GrassmannianMeasure, Strategy,
};
use crate::coxeter::{build_root_system, RootSystem, RootSystemName};
use crate::error::Error;
use crate::inequalities::{
    membership, stability_system_with_limit, weak_system, InequalitySystem, Membership,
    DEFAULT_MAX_SIDES,
};
use crate::io::{parse_vector, rays_poi, sides_text, system_ieq, system_text};
use crate::polygons::hyperbolic::{
    config_distance, phi_fixed_point, FixedPointOptions, HyperbolicConfig, HyperbolicOutcome,
};
use crate::polygons::momentum::{construct_polygon_momentum, MomentumOptions, MomentumOutcome};
use crate::polygons::thompson::sample_thompson;
use crate::rational::{fmt_rational, parse_rational, to_f64};
use crate::schubert::{format_table, CohomologyRing, ProductMode};

/// Environment variable naming the directory that relative `--output` paths resolve against.
pub const OUT_DIR_ENV: &str = "DELTAPOLY_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "deltapoly",
    about = "Side-length cones of polygons in rank-two symmetric spaces",
    disable_version_flag = true
)]
pub struct RunConfig {
    /// Print the version and the checksum of the built-in data tables.
    #[arg(short = 'V', long, action = ArgAction::SetTrue)]
    pub version: bool,

    /// Write the result here instead of standard output; relative paths
    /// resolve against $DELTAPOLY_OUT_DIR when it is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Degree tuples whose Schubert product is a nonzero multiple of the point class.
    Exact,
    /// Every nonzero product (same cone, longer list).
    Nonzero,
    /// Weak triangle inequalities.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Ieq,
    Poi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the inequalities cutting out the side-length cone.
    Inequalities {
        #[arg(long, short = 'r')]
        root_system: RootSystemName,
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Append the Weyl chamber constraints of every side.
        #[arg(long)]
        chamber: bool,
        /// text, json or ieq.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_SIDES)]
        max_sides: usize,
    },
    /// Irredundant facets or extreme rays of the cone (chamber constraints included).
    #[command(group(ArgGroup::new("what").required(true).args(["facets", "rays"])))]
    Cone {
        #[arg(long, short = 'r')]
        root_system: RootSystemName,
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long)]
        facets: bool,
        #[arg(long)]
        rays: bool,
        /// text or json; ieq for facets, poi for rays.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_SIDES)]
        max_sides: usize,
    },
    /// Decide whether side lengths lie in the cone, e.g. `member -r B2 1,1 1,1 2,0`.
    Member {
        #[arg(long, short = 'r')]
        root_system: RootSystemName,
        /// One comma-separated dominant vector per side.
        #[arg(required = true, num_args = 3..)]
        sides: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the cohomology table of a Grassmannian, e.g. `--table G2 P1`.
    Schubert {
        #[arg(long, num_args = 2, value_names = ["ROOT_SYSTEM", "VERTEX"], required = true)]
        table: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Semistability of a weighted configuration at infinity.
    #[command(group(ArgGroup::new("kind").required(true).args(["apartment", "grassmannian"])))]
    Stability {
        #[arg(long, value_name = "CFG_JSON")]
        apartment: Option<PathBuf>,
        #[arg(long, value_name = "CFG_JSON")]
        grassmannian: Option<PathBuf>,
        /// spans, lattice or mc:<samples>.
        #[arg(long, default_value = "spans")]
        strategy: String,
        /// Seed for the mc strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a closed polygon with prescribed side lengths.
    #[command(group(ArgGroup::new("model").required(true).args(["construct", "hyperbolic"])))]
    Polygon {
        /// `{spectra: [[...]]}`: one non-increasing, trace-zero spectrum per side.
        #[arg(long, value_name = "H_JSON")]
        construct: Option<PathBuf>,
        /// `{masses: [...], angles: [...]}` with angles in radians.
        #[arg(long, value_name = "CFG_JSON")]
        hyperbolic: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the A2 inequalities on random closed polygons in both matrix models.
    VerifyThompson {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Cmd<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command, honouring `$DELTAPOLY_OUT_DIR`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_in(
        args,
        std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).as_deref(),
    )
}

pub fn run_in<I, T>(args: I, out_dir: Option<&Path>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    if cfg.version {
        return Outcome {
            code: 0,
            stdout: version_line(),
            stderr: String::new(),
        };
    }
    let Some(command) = cfg.command else {
        return Outcome {
            code: 2,
            stdout: String::new(),
            stderr: "error: a subcommand is required (see --help)\n".into(),
        };
    };
    let (text, code) = match dispatch(&command) {
        Ok(ok) => ok,
        Err(Failure::Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(Failure::Domain(e)) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match cfg.output {
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Some(p) => {
            let path = match out_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p,
            };
            match std::fs::write(&path, text) {
                Ok(()) => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("error: {}: {e}\n", path.display()),
                },
            }
        }
    }
}

/// SHA-256 over the canonical rendering of every root system and Schubert table.
pub fn data_checksum() -> String {
    let mut h = Sha256::new();
    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        let rows = |m: &[Vec<crate::rational::Q>]| {
            m.iter()
                .map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(";")
        };
        h.update(format!(
            "{name:?}|{}|{}|{}|{}\n",
            rows(&rs.gram),
            rows(&rs.fundamental_weights),
            rows(&rs.chamber_inequalities),
            rs.weyl().len()
        ));
        for vertex in [1, 2] {
            let ring = CohomologyRing::new(&rs, vertex).expect("built-in tables are consistent");
            h.update(serde_json::to_string(&ring).expect("ring serializes"));
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn version_line() -> String {
    format!(
        "deltapoly {} (data tables sha256 {})\n",
        env!("CARGO_PKG_VERSION"),
        data_checksum()
    )
}

fn json_text<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn read_json(path: &Path) -> Cmd<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn build_system(
    rs: &RootSystem,
    n: usize,
    mode: Mode,
    chamber: bool,
    max_sides: usize,
) -> Cmd<InequalitySystem> {
    let sys = match mode {
        Mode::Exact => {
            stability_system_with_limit(rs, n, ProductMode::ExactPoint, chamber, max_sides)?
        }
        Mode::Nonzero => {
            stability_system_with_limit(rs, n, ProductMode::Nonzero, chamber, max_sides)?
        }
        Mode::Weak => {
            if n > max_sides {
                return Err(Error::TooManySides {
                    n,
                    limit: max_sides,
                }
                .into());
            }
            let mut sys = weak_system(rs, n)?;
            if chamber {
                sys.add_chamber(rs);
            }
            sys
        }
    };
    Ok(sys.sorted())
}

fn dispatch(cmd: &Command) -> Cmd<(String, i32)> {
    match cmd {
        Command::Inequalities {
            root_system,
            n,
            mode,
            chamber,
            format,
            max_sides,
        } => {
            let rs = build_root_system(*root_system);
            let sys = build_system(&rs, *n, *mode, *chamber, *max_sides)?;
            let text = match format {
                Format::Text => system_text(&sys),
                Format::Json => json_text(&sys),
                Format::Ieq => system_ieq(&rs, &sys),
                Format::Poi => {
                    return Err(Failure::Usage(
                        "inequalities support text, json or ieq".into(),
                    ))
                }
            };
            Ok((text, 0))
        }
        Command::Cone {
            root_system,
            n,
            mode,
            facets,
            format,
            max_sides,
            ..
        } => {
            let rs = build_root_system(*root_system);
            let sys = build_system(&rs, *n, *mode, true, *max_sides)?;
            if *facets {
                cone_facets(&rs, &sys, *format)
            } else {
                cone_rays(&rs, &sys, *format)
            }
        }
        Command::Member {
            root_system,
            sides,
            format,
        } => {
            let rs = build_root_system(*root_system);
            let h = sides
                .iter()
                .map(|s| parse_vector(s))
                .collect::<crate::error::Result<Vec<_>>>()?;
            if let Some(bad) = h.iter().find(|v| v.len() != rs.ambient_dim) {
                return Err(Error::Dimension {
                    expected: rs.ambient_dim,
                    got: bad.len(),
                }
                .into());
            }
            let sys = build_system(&rs, h.len(), Mode::Exact, true, DEFAULT_MAX_SIDES)?;
            let verdict = membership(&rs, &sys, &h)?;
            let text = match format {
                Format::Text => member_text(&sys, &verdict),
                Format::Json => {
                    let (key, idx) = match &verdict {
                        Membership::Member { tight } => ("tight", tight),
                        Membership::NonMember { violated } => ("violated", violated),
                    };
                    let rows: Vec<String> =
                        idx.iter().map(|&i| sys.inequalities[i].to_text()).collect();
                    json_text(&json!({
                        "root_system": root_system,
                        "verdict": if verdict.is_member() { "member" } else { "non_member" },
                        key: rows,
                    }))
                }
                _ => return Err(Failure::Usage("member supports text or json".into())),
            };
            Ok((text, 0))
        }
        Command::Schubert { table, json } => {
            let name: RootSystemName = table[0].parse()?;
            let vertex = match table[1].trim().to_ascii_uppercase().as_str() {
                "P1" | "1" => 1,
                "P2" | "2" => 2,
                _ => return Err(Error::UnknownVertex(table[1].clone()).into()),
            };
            let ring = CohomologyRing::new(&build_root_system(name), vertex)?;
            let text = if *json {
                let weights: Vec<Vec<String>> = ring
                    .classes
                    .iter()
                    .map(|c| c.weight.iter().map(fmt_rational).collect())
                    .collect();
                json_text(
                    &json!({ "m": ring.m, "weights": weights, "a": ring.a, "structure": ring.structure }),
                )
            } else {
                format_table(&ring)
            };
            Ok((text, 0))
        }
        Command::Stability {
            apartment,
            grassmannian,
            strategy,
            seed,
        } => {
            if let Some(p) = apartment {
                let cfg: ApartmentConfiguration =
                    serde_json::from_value(read_json(p)?).map_err(Error::from)?;
                let verdict = apartment_semistability(&build_root_system(cfg.root_system), &cfg)?;
                return Ok((json_text(&verdict), 0));
            }
            let p = grassmannian.as_ref().expect("clap enforces one of the two");
            let mut strat: Strategy = strategy
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            if let Strategy::MonteCarlo { seed: s, .. } = &mut strat {
                *s = *seed;
            }
            let m: GrassmannianMeasure =
                serde_json::from_value(read_json(p)?).map_err(Error::from)?;
            let (criterion, verdict) = if m.form.is_some() {
                ("isotropic", iso_semistable(&m, &strat)?)
            } else {
                ("projective", sl_semistable(&m, &strat)?)
            };
            Ok((
                json_text(&json!({ "criterion": criterion, "strategy": strat, "result": verdict })),
                0,
            ))
        }
        Command::Polygon {
            construct,
            hyperbolic,
            tol,
            restarts,
            seed,
        } => {
            if let Some(p) = construct {
                construct_report(&read_json(p)?, *tol, *restarts, *seed)
            } else {
                let p = hyperbolic.as_ref().expect("clap enforces one of the two");
                let cfg: HyperbolicConfig =
                    serde_json::from_value(read_json(p)?).map_err(Error::from)?;
                hyperbolic_report(&cfg, *tol)
            }
        }
        Command::VerifyThompson {
            n,
            samples,
            seed,
            slack,
        } => {
            let report = sample_thompson(*n, *samples, *seed)?;
            let passes = report.passes(*slack);
            let text = json_text(&json!({ "slack": slack, "passes": passes, "report": report }));
            Ok((text, if passes { 0 } else { 1 }))
        }
    }
}

fn member_text(sys: &InequalitySystem, verdict: &Membership) -> String {
    let (head, label, idx) = match verdict {
        Membership::Member { tight } => ("Member", "tight", tight),
        Membership::NonMember { violated } => ("NonMember", "violated", violated),
    };
    let mut s = format!("{head}\n");
    for &i in idx {
        s.push_str(&format!("{label}: {}\n", sys.inequalities[i].to_symbolic()));
    }
    s
}

fn cone_facets(rs: &RootSystem, sys: &InequalitySystem, format: Format) -> Cmd<(String, i32)> {
    let h = ConeHRep::from_system(rs, sys);
    let irr = irredundant(&h);
    let mut kept = InequalitySystem::empty(sys.root_system, sys.n);
    kept.includes_chamber = sys.includes_chamber;
    let mut equations = Vec::new();
    let mut redundant = Vec::new();
    for (ineq, status) in sys.inequalities.iter().zip(&irr.status) {
        match status {
            RowStatus::Irredundant => kept.inequalities.push(ineq.clone()),
            RowStatus::ImplicitEquality => equations.push(ineq.to_text()),
            RowStatus::Redundant => redundant.push(ineq.to_text()),
        }
    }
    let text = match format {
        Format::Text => {
            let mut s = system_text(&kept);
            for e in &equations {
                s.push_str(&format!("# equality: {e}\n"));
            }
            for r in &redundant {
                s.push_str(&format!("# redundant: {r}\n"));
            }
            s
        }
        Format::Json => {
            json_text(&json!({ "facets": kept, "equalities": equations, "redundant": redundant }))
        }
        Format::Ieq => system_ieq(rs, &kept),
        Format::Poi => return Err(Failure::Usage("--facets supports text, json or ieq".into())),
    };
    Ok((text, 0))
}

fn cone_rays(rs: &RootSystem, sys: &InequalitySystem, format: Format) -> Cmd<(String, i32)> {
    let h = ConeHRep::from_system(rs, sys);
    let v = extreme_rays(&h)?;
    let mut rays: Vec<_> = v.rays.iter().map(|r| ambient_ray(rs, r)).collect();
    rays.sort_by(|a, b| b.cmp(a));
    let dim = sys.n * rs.ambient_dim;
    let text = match format {
        Format::Text => rays
            .iter()
            .map(|r| sides_text(&split_sides(rs, r)) + "\n")
            .collect(),
        Format::Json => {
            let list: Vec<Vec<Vec<String>>> = rays
                .iter()
                .map(|r| {
                    split_sides(rs, r)
                        .iter()
                        .map(|s| s.iter().map(|x| x.to_string()).collect())
                        .collect()
                })
                .collect();
            json_text(&json!({ "root_system": sys.root_system, "n": sys.n, "rays": list }))
        }
        Format::Poi => rays_poi(dim, &rays),
        Format::Ieq => return Err(Failure::Usage("--rays supports text, json or poi".into())),
    };
    Ok((text, 0))
}

fn spectra_from_json(v: &Value) -> Cmd<Vec<Vec<f64>>> {
    let bad = |msg: &str| {
        Failure::Domain(Error::Parse {
            line: 1,
            column: 1,
            message: msg.into(),
        })
    };
    let rows = v
        .get("spectra")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected {\"spectra\": [[...]]}"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("each spectrum must be an array"))?
                .iter()
                .map(|x| match x {
                    Value::Number(n) => n.as_f64().ok_or_else(|| bad("bad number")),
                    Value::String(s) => Ok(to_f64(&parse_rational(s)?)),
                    _ => Err(bad("entries must be numbers or \"p/q\" strings")),
                })
                .collect()
        })
        .collect()
}

fn construct_report(input: &Value, tol: f64, restarts: usize, seed: u64) -> Cmd<(String, i32)> {
    let h = spectra_from_json(input)?;
    let opts = MomentumOptions {
        tol,
        restarts,
        seed,
        ..MomentumOptions::default()
    };
    let outcome = construct_polygon_momentum(&h, &opts)?;
    let mut report = json!({ "outcome": outcome });
    // rank-two spectra: also report how each A2 inequality is met
    if h.first().map(Vec::len) == Some(3) && h.len() >= 3 && h.len() <= DEFAULT_MAX_SIDES {
        let rs = build_root_system(RootSystemName::A2);
        let sys = build_system(&rs, h.len(), Mode::Exact, false, DEFAULT_MAX_SIDES)?;
        let rows: Vec<Value> = sys
            .inequalities
            .iter()
            .map(|ineq| {
                let v: f64 = ineq
                    .coefficients
                    .iter()
                    .zip(&h)
                    .map(|(c, x)| c.iter().zip(x).map(|(a, b)| *a as f64 * b).sum::<f64>())
                    .sum();
                json!({ "inequality": ineq.to_text(), "slack": -v })
            })
            .collect();
        let min = rows
            .iter()
            .filter_map(|r| r["slack"].as_f64())
            .fold(f64::INFINITY, f64::min);
        report["min_slack"] = json!(min);
        report["inequalities"] = Value::Array(rows);
    }
    if let MomentumOutcome::Failure { best_residual } = outcome {
        report["confidently_infeasible"] = json!(best_residual > 1e-3);
    }
    Ok((json_text(&report), 0))
}

fn hyperbolic_report(cfg: &HyperbolicConfig, tol: f64) -> Cmd<(String, i32)> {
    let opts = FixedPointOptions {
        tol: tol.min(1e-12),
        ..FixedPointOptions::default()
    };
    let outcome = phi_fixed_point(cfg, &opts)?;
    let mut report = json!({ "total_mass": cfg.total_mass(), "result": outcome });
    if let HyperbolicOutcome::Polygon { polygon, .. } = &outcome {
        let back = polygon.gauss_map();
        report["gauss_map_error"] = json!(config_distance(cfg, &back));
    }
    Ok((json_text(&report), 0))
}
