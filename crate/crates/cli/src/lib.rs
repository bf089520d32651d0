//! Library surface of the `quivercount` CLI: argument grammar, quiver
//! description files, report assembly, and the grid sweep. Everything is
//! exact-rational; reports never contain floating point.

pub mod args;
mod quiver_file;
mod report;

use args::{Cli, Command, Common, Format};
use clap::error::ErrorKind;
use clap::Parser;
use quivercount::error::Error;
use quivercount::fock::{heis_filtration_dims, FockSpace};
use quivercount::partition::Partition;
use quivercount::quiver::{cb_flat_capped, Quiver};
use quivercount::rat::{parse_rat, rat_to_string, Rat};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use report::Report;

/// Exit codes: 0 success, 2 parse failure, 3 resource cap, 4 unsupported.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

/// Runs the CLI on `argv` (including the program name). Returns the exit
/// code and the full text to print.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok((format, report)) => match render(&report, format) {
            Ok(text) => (EXIT_OK, text),
            Err(msg) => (EXIT_PARSE, msg),
        },
        Err(err) => {
            let code = match err {
                Error::Resource(_) => EXIT_RESOURCE,
                Error::Unsupported(_) => EXIT_UNSUPPORTED,
                Error::Dimension { .. } | Error::Domain(_) => EXIT_PARSE,
            };
            (code, format!("error: {err}"))
        }
    }
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map_err(|e| format!("error: serialization failed: {e}")),
        Format::Csv => Ok(report.to_csv()),
    }
}

fn parse_lambda(raw: &[String]) -> Result<Vec<Rat>, Error> {
    raw.iter()
        .map(|s| {
            parse_rat(s.trim())
                .ok_or_else(|| Error::domain(format!("cannot parse rational `{s}`")))
        })
        .collect()
}

fn load_quiver(common: &Common) -> Result<Quiver, Error> {
    quiver_file::resolve(&common.quiver)
}

fn lambda_strings(lambda: &[Rat]) -> Vec<String> {
    lambda.iter().map(rat_to_string).collect()
}

fn dispatch(command: Command) -> Result<(Format, Report), Error> {
    match command {
        Command::Count {
            common,
            v,
            w,
            lambda,
        } => {
            let quiver = load_quiver(&common)?;
            let lam = parse_lambda(&lambda)?;
            let res = quivercount::subalgebra::predicted_count(&quiver, &v, &w, &lam)?;
            let report = Report::new(
                "count",
                json!({
                    "quiver": common.quiver,
                    "v": v,
                    "w": w,
                    "lambda": lambda_strings(&lam),
                }),
                status_label(&res),
                json!({
                    "count": res.count,
                    "branch": res.branch,
                }),
                vec![
                    ("count".into(), count_cell(&res)),
                    ("status".into(), status_label(&res)),
                    ("branch".into(), res.branch.clone()),
                ],
            );
            Ok((common.format, report))
        }
        Command::Mult { common, v, w } => {
            let quiver = load_quiver(&common)?;
            let mult = quivercount::weights::freudenthal_mult(&quiver, &w, &v)?;
            let report = Report::new(
                "mult",
                json!({"quiver": common.quiver, "v": v, "w": w}),
                "exact".into(),
                json!({"mult": mult}),
                vec![("mult".into(), mult.to_string())],
            );
            Ok((common.format, report))
        }
        Command::Walls {
            common,
            v,
            w,
            lambda,
            chambers,
        } => {
            let quiver = load_quiver(&common)?;
            let classical = quivercount::walls::classical_walls(&quiver, &v, &w)?;
            let mut result = json!({
                "classical": classical,
            });
            let mut rows: Vec<(String, String)> = classical
                .iter()
                .map(|h| {
                    (
                        "classical-wall".into(),
                        format!("{}={}", join_i64(&h.normal, "+"), rat_to_string(&h.offset)),
                    )
                })
                .collect();
            let mut inputs = json!({"quiver": common.quiver, "v": v, "w": w});
            if let Some(raw) = &lambda {
                let lam = parse_lambda(raw)?;
                inputs["lambda"] = json!(lambda_strings(&lam));
                let quantum = quivercount::walls::quantum_walls(&quiver, &v, &lam)?;
                for root in &quantum {
                    rows.push(("quantum-wall".into(), join_i64(&root.vector, ",")));
                }
                result["quantum"] = serde_json::to_value(&quantum)
                    .map_err(|e| Error::domain(e.to_string()))?;
            }
            if chambers {
                let ch = quivercount::walls::chambers(&classical, quiver.vertex_count())?;
                for signs in &ch {
                    rows.push((
                        "chamber".into(),
                        signs
                            .iter()
                            .map(|s| if *s > 0 { "+" } else { "-" })
                            .collect::<String>(),
                    ));
                }
                result["chambers"] = json!(ch);
            }
            let report = Report::new("walls", inputs, "exact".into(), result, rows);
            Ok((common.format, report))
        }
        Command::Slice {
            common,
            v,
            w,
            v0,
            summands,
        } => {
            let quiver = load_quiver(&common)?;
            let parsed: Vec<(Vec<i64>, i64)> = summands
                .iter()
                .map(|s| parse_summand(s))
                .collect::<Result<_, Error>>()?;
            let slice = quivercount::walls::slice_data(&quiver, &v, &w, &v0, &parsed)?;
            let rows = vec![
                (
                    "hat_arrows".into(),
                    slice
                        .hat_quiver
                        .arrows()
                        .iter()
                        .map(|(t, h)| format!("{t}-{h}"))
                        .collect::<Vec<_>>()
                        .join("|"),
                ),
                ("hat_v".into(), join_i64(&slice.hat_v, ",")),
                ("hat_w".into(), join_i64(&slice.hat_w, ",")),
                (
                    "offset".into(),
                    slice
                        .offset
                        .iter()
                        .map(rat_to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                ),
            ];
            let report = Report::new(
                "slice",
                json!({
                    "quiver": common.quiver,
                    "v": v,
                    "w": w,
                    "v0": v0,
                    "summands": summands,
                }),
                "exact".into(),
                serde_json::to_value(&slice).map_err(|e| Error::domain(e.to_string()))?,
                rows,
            );
            Ok((common.format, report))
        }
        Command::Flat { common, v, w } => {
            let quiver = load_quiver(&common)?;
            let cap = env_cap(
                "QUIVERCOUNT_DECOMP_CAP",
                quivercount::quiver::CB_FLAT_DEFAULT_CAP,
            );
            let (flat, witness) = cb_flat_capped(&quiver, &v, &w, cap)?;
            let report = Report::new(
                "flat",
                json!({"quiver": common.quiver, "v": v, "w": w}),
                "exact".into(),
                json!({"flat": flat, "witness": witness}),
                vec![
                    ("flat".into(), flat.to_string()),
                    (
                        "witness".into(),
                        witness.map_or(String::new(), |ws| {
                            let mut parts = vec![join_i64(&ws.v0, ",")];
                            parts.extend(ws.root_parts.iter().map(|p| join_i64(p, ",")));
                            parts.join("|")
                        }),
                    ),
                ],
            );
            Ok((common.format, report))
        }
        Command::Wallcross {
            partition,
            m,
            format,
        } => {
            let parts: Vec<u64> = partition
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::domain(format!("bad part `{s}`")))
                })
                .collect::<Result<_, Error>>()?;
            let nu = Partition::new(parts)?;
            let image = quivercount::comb::wallcross_map(&nu, m)?;
            let (nu1, nu2) = quivercount::comb::m_adic_row_decompose(&nu, m)?;
            let report = Report::new(
                "wallcross",
                json!({"partition": nu.parts(), "m": m}),
                "exact".into(),
                json!({
                    "image": image.parts(),
                    "quotient": nu1.parts(),
                    "corestricted": nu2.parts(),
                }),
                vec![
                    ("image".into(), join_u64(image.parts(), ",")),
                    ("quotient".into(), join_u64(nu1.parts(), ",")),
                    ("corestricted".into(), join_u64(nu2.parts(), ",")),
                ],
            );
            Ok((format, report))
        }
        Command::FockFiltration {
            m,
            r,
            degree,
            format,
        } => {
            let cap = env_cap("QUIVERCOUNT_FOCK_CAP", degree as i64).max(degree as i64);
            let fock = FockSpace::new(1, 0, cap as u64)?;
            let rep = heis_filtration_dims(&fock, m, r, degree)?;
            let report = Report::new(
                "fock-filtration",
                json!({"m": m, "r": r, "degree": degree}),
                "exact".into(),
                serde_json::to_value(&rep).map_err(|e| Error::domain(e.to_string()))?,
                vec![(
                    "dims".into(),
                    rep.dims
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join("|"),
                )],
            );
            Ok((format, report))
        }
        Command::Singular { common, v, w } => {
            let quiver = load_quiver(&common)?;
            let rep = quivercount::walls::singular_hyperplanes(&quiver, &v, &w)?;
            let status = if rep.unknown_oracles.is_empty() {
                "conjectural"
            } else {
                "unknown-oracle"
            };
            let mut rows: Vec<(String, String)> = rep
                .hyperplanes
                .iter()
                .map(|h| {
                    (
                        "singular-wall".into(),
                        format!("{}={}", join_i64(&h.normal, "+"), rat_to_string(&h.offset)),
                    )
                })
                .collect();
            for u in &rep.unknown_oracles {
                rows.push((
                    "unknown-oracle".into(),
                    format!(
                        "alpha={} loops={} hat_v={} hat_w={}",
                        join_i64(&u.alpha, ","),
                        u.loops,
                        u.hat_v,
                        u.hat_w
                    ),
                ));
            }
            let report = Report::new(
                "singular",
                json!({"quiver": common.quiver, "v": v, "w": w}),
                status.into(),
                serde_json::to_value(&rep).map_err(|e| Error::domain(e.to_string()))?,
                rows,
            );
            Ok((common.format, report))
        }
        Command::Sweep {
            common,
            w,
            v_set,
            lambda_set,
        } => {
            let quiver = load_quiver(&common)?;
            let vs: Vec<Vec<i64>> = v_set
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|entry| {
                    entry
                        .split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<i64>()
                                .map_err(|_| Error::domain(format!("bad integer `{x}`")))
                        })
                        .collect()
                })
                .collect::<Result<_, Error>>()?;
            let lams: Vec<Vec<Rat>> = lambda_set
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|entry| {
                    entry
                        .split(',')
                        .map(|x| {
                            parse_rat(x.trim())
                                .ok_or_else(|| Error::domain(format!("bad rational `{x}`")))
                        })
                        .collect()
                })
                .collect::<Result<_, Error>>()?;
            let grid: Vec<(Vec<i64>, Vec<Rat>)> = vs
                .iter()
                .flat_map(|v| lams.iter().map(move |l| (v.clone(), l.clone())))
                .collect();
            // Rows are independent; evaluate in parallel, emit in grid order.
            let rows: Vec<Result<Value, Error>> = grid
                .par_iter()
                .map(|(v, lam)| {
                    let res = quivercount::subalgebra::predicted_count(&quiver, v, &w, lam)?;
                    Ok(json!({
                        "v": v,
                        "lambda": lambda_strings(lam),
                        "count": res.count,
                        "status": status_label(&res),
                        "branch": res.branch,
                    }))
                })
                .collect();
            let rows: Vec<Value> = rows.into_iter().collect::<Result<_, Error>>()?;
            let csv_rows: Vec<(String, String)> = rows
                .iter()
                .map(|row| {
                    (
                        "row".into(),
                        format!(
                            "{};{};{};{};{}",
                            row["v"]
                                .as_array()
                                .unwrap()
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            row["lambda"]
                                .as_array()
                                .unwrap()
                                .iter()
                                .map(|x| x.as_str().unwrap().to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            row["count"]
                                .as_u64()
                                .map_or("null".to_string(), |c| c.to_string()),
                            row["status"].as_str().unwrap(),
                            row["branch"].as_str().unwrap(),
                        ),
                    )
                })
                .collect();
            let report = Report::new(
                "sweep",
                json!({
                    "quiver": common.quiver,
                    "w": w,
                    "v_set": v_set,
                    "lambda_set": lambda_set,
                }),
                "per-row".into(),
                json!({"rows": rows}),
                csv_rows,
            );
            Ok((common.format, report))
        }
    }
}

fn status_label(res: &quivercount::subalgebra::CountResult) -> String {
    use quivercount::subalgebra::CountStatus::*;
    match res.status {
        ProvenFiniteType => "proven-finite-type",
        ProvenEtingofCase => "proven-etingof-case",
        Conjectural => "conjectural",
        KnownAnswer => "known-answer",
    }
    .into()
}

fn count_cell(res: &quivercount::subalgebra::CountResult) -> String {
    res.count.map_or("null".into(), |c| c.to_string())
}

fn join_i64(xs: &[i64], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn join_u64(xs: &[u64], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// "1,1x2" → ((1,1), 2); multiplicity defaults to 1.
fn parse_summand(s: &str) -> Result<(Vec<i64>, i64), Error> {
    let (vec_part, mult) = match s.split_once('x') {
        Some((v, m)) => (
            v,
            m.trim()
                .parse::<i64>()
                .map_err(|_| Error::domain(format!("bad multiplicity in `{s}`")))?,
        ),
        None => (s, 1),
    };
    let vector: Vec<i64> = vec_part
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::domain(format!("bad integer in summand `{s}`")))
        })
        .collect::<Result<_, Error>>()?;
    Ok((vector, mult))
}

fn env_cap(name: &str, default: i64) -> i64 {
    std::env::var(name)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}
