//! `pro2` — verification suites, series tables and Hausdorff-dimension
//! ratio tables for the groups `G_k`, as CSV or JSON.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
//! 3 capacity error.

use clap::{Parser, Subcommand, ValueEnum};
use pro2_core::series::{
    dimension_series, frattini_series, iterated_power_series, lower_2_series,
    lower_central_series, rn_series, two_power_series,
};
use pro2_core::spectra::{build_named, hdim_ratio, spectrum_table, target_ratio, NamedSubgroup};
use pro2_core::verify::{run_suite, CheckStatus, VerifyOptions};
use pro2_core::wreath::{bfs_closure, collection_identity_check, project, relator_check};
use pro2_core::{Error, GroupContext, SeriesKind, SeriesTable};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pro2", version, about = "Exact engine for the 2-groups G_k over C2 wr C_(2^k)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the structural check suite and print pass/fail per statement.
    Verify {
        /// Levels to verify (repeatable); defaults to 2 and 3.
        #[arg(long = "k")]
        k: Vec<u32>,
        /// Enumeration cap (element count); overrides PRO2_CAP.
        #[arg(long)]
        cap: Option<u64>,
        /// Random samples for the property checks.
        #[arg(long, default_value_t = 100_000)]
        samples: u32,
    },
    /// Print a filtration series table.
    Series {
        #[arg(long)]
        k: u32,
        /// gamma | L | D | F | P | I | R | N (long names accepted).
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print exact Hausdorff-dimension ratio points.
    Hdim {
        #[arg(long)]
        k: u32,
        /// Series kind, as for `series --kind`.
        #[arg(long)]
        series: String,
        /// Z | Zk | H | G | trivial | K(m,n) | L(m,n).
        #[arg(long)]
        subgroup: String,
        /// Single level; omit for all levels with nontrivial index.
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// BFS, relator and projection oracles.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum CliError {
    Usage(String),
    Capacity(String),
    Check,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            Error::UnsupportedLevel { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Constraint(_)
            | Error::UndefinedRatio => CliError::Usage(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(0),
        Err(CliError::Check) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Enumeration cap as log2: flag, then PRO2_CAP, then the default 2^22.
/// The cap must be at least 2^10.
fn cap_log2(flag: Option<u64>) -> Result<u32, CliError> {
    let count = match flag {
        Some(c) => c,
        None => match std::env::var("PRO2_CAP") {
            Ok(s) => s
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("PRO2_CAP is not an integer: {s}")))?,
            Err(_) => 1u64 << pro2_core::DEFAULT_CAP_LOG2,
        },
    };
    if count < 1024 {
        return Err(CliError::Usage(format!(
            "enumeration cap {count} below the minimum 2^10"
        )));
    }
    Ok(63 - count.leading_zeros())
}

fn parse_kind(s: &str) -> Result<SeriesKind, CliError> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "gamma" | "lower-central" | "lowercentral" => SeriesKind::Gamma,
        "l" | "lower2" | "lower-2" => SeriesKind::Lower2,
        "d" | "dimension" | "jennings" => SeriesKind::Dimension,
        "f" | "frattini" => SeriesKind::Frattini,
        "p" | "power" | "2-power" | "two-power" => SeriesKind::TwoPower,
        "i" | "iterated" => SeriesKind::Iterated,
        "r" => SeriesKind::RSeries,
        "n" => SeriesKind::NSeries,
        other => return Err(CliError::Usage(format!("unknown series kind: {other}"))),
    })
}

fn parse_subgroup(s: &str) -> Result<NamedSubgroup, CliError> {
    let t = s.trim();
    match t {
        "Z" | "z" => return Ok(NamedSubgroup::Z),
        "Zk" | "zk" | "Z_k" => return Ok(NamedSubgroup::Zk),
        "H" | "h" => return Ok(NamedSubgroup::H),
        "G" | "g" | "full" => return Ok(NamedSubgroup::FullGroup),
        "1" | "trivial" => return Ok(NamedSubgroup::Trivial),
        _ => {}
    }
    let (name, rest) = t.split_at(1);
    let args = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| CliError::Usage(format!("cannot parse subgroup spec: {t}")))?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("expected two parameters in {t}")));
    }
    let m: u32 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad m in {t}")))?;
    let n: u32 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad n in {t}")))?;
    match name {
        "K" | "k" => Ok(NamedSubgroup::K { m, n }),
        "L" | "l" => Ok(NamedSubgroup::L { m, n }),
        other => Err(CliError::Usage(format!("unknown subgroup family: {other}"))),
    }
}

fn compute_series(ctx: GroupContext, kind: SeriesKind, cap: u32) -> Result<SeriesTable, Error> {
    match kind {
        SeriesKind::Gamma => Ok(lower_central_series(ctx)),
        SeriesKind::Lower2 => lower_2_series(ctx, cap),
        SeriesKind::Dimension => dimension_series(ctx, cap),
        SeriesKind::Frattini => frattini_series(ctx, cap),
        SeriesKind::TwoPower => two_power_series(ctx, cap),
        SeriesKind::Iterated => iterated_power_series(ctx, cap),
        SeriesKind::RSeries => Ok(rn_series(ctx, cap)?.0),
        SeriesKind::NSeries => Ok(rn_series(ctx, cap)?.1),
    }
}

#[derive(Serialize)]
struct SeriesRow {
    i: u32,
    log2_order: u32,
    factor_rank: u32,
    closed_form_match: bool,
}

#[derive(Serialize)]
struct SeriesOut {
    k: u32,
    series: String,
    rows: Vec<SeriesRow>,
}

#[derive(Serialize)]
struct HdimRow {
    i: u32,
    log2_sub_index: u32,
    log2_group_index: u32,
    num: u64,
    den: u64,
}

#[derive(Serialize)]
struct HdimOut {
    k: u32,
    series: String,
    subgroup: String,
    target_num: Option<u64>,
    target_den: Option<u64>,
    rows: Vec<HdimRow>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Verify { k, cap, samples } => {
            let cap = cap_log2(cap)?;
            let levels = if k.is_empty() { vec![2, 3] } else { k };
            let mut all_pass = true;
            for k in levels {
                let ctx = GroupContext::new(k)?;
                println!("== G_{k} (log2 order {}) ==", ctx.log_order());
                let opts = VerifyOptions {
                    log_cap: cap,
                    samples,
                };
                for outcome in run_suite(&ctx, &opts) {
                    let tag = match outcome.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => {
                            all_pass = false;
                            "FAIL"
                        }
                        CheckStatus::Skip => "SKIP",
                    };
                    println!("{tag} {}: {}", outcome.name, outcome.detail);
                }
            }
            if all_pass {
                Ok(())
            } else {
                Err(CliError::Check)
            }
        }
        Cmd::Series {
            k,
            kind,
            format,
            cap,
        } => {
            let cap = cap_log2(cap)?;
            let kind = parse_kind(&kind)?;
            let ctx = GroupContext::new(k)?;
            let table = compute_series(ctx, kind, cap).map_err(CliError::from)?;
            let rows: Vec<SeriesRow> = (0..table.factor_ranks().len())
                .map(|j| SeriesRow {
                    i: table.start_index() + j as u32,
                    log2_order: table.terms()[j].log_order(),
                    factor_rank: table.factor_ranks()[j],
                    closed_form_match: table.closed_form_match()[j],
                })
                .collect();
            let out = SeriesOut {
                k,
                series: kind.short_name().to_string(),
                rows,
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&out).unwrap()),
                Format::Csv => {
                    println!("k,series,i,log2_order,factor_rank,closed_form_match");
                    for r in &out.rows {
                        println!(
                            "{},{},{},{},{},{}",
                            out.k, out.series, r.i, r.log2_order, r.factor_rank,
                            r.closed_form_match
                        );
                    }
                }
            }
            Ok(())
        }
        Cmd::Hdim {
            k,
            series,
            subgroup,
            level,
            format,
            cap,
        } => {
            let cap = cap_log2(cap)?;
            let kind = parse_kind(&series)?;
            let spec = parse_subgroup(&subgroup)?;
            let ctx = GroupContext::new(k)?;
            let table = compute_series(ctx, kind, cap).map_err(CliError::from)?;
            let named = build_named(&ctx, spec).map_err(CliError::from)?;
            let points = match level {
                Some(i) => vec![hdim_ratio(&table, &named, i).map_err(CliError::from)?],
                None => spectrum_table(&table, &named),
            };
            let target = target_ratio(spec, kind);
            let out = HdimOut {
                k,
                series: kind.short_name().to_string(),
                subgroup: spec.to_string(),
                target_num: target.map(|t| t.num()),
                target_den: target.map(|t| t.den()),
                rows: points
                    .iter()
                    .map(|p| HdimRow {
                        i: p.level,
                        log2_sub_index: p.log_sub_index,
                        log2_group_index: p.log_group_index,
                        num: p.value.num(),
                        den: p.value.den(),
                    })
                    .collect(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&out).unwrap()),
                Format::Csv => {
                    println!("k,series,i,log2_sub_index,log2_group_index,ratio_num,ratio_den");
                    for r in &out.rows {
                        println!(
                            "{},{},{},{},{},{},{}",
                            out.k, out.series, r.i, r.log2_sub_index, r.log2_group_index,
                            r.num, r.den
                        );
                    }
                }
            }
            Ok(())
        }
        Cmd::Oracle { k, cap } => {
            let cap = cap_log2(cap)?;
            let ctx = GroupContext::new(k)?;
            let mut ok = true;
            let mut report = |name: &str, pass: bool, detail: String| {
                ok &= pass;
                println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
            };

            if ctx.log_order() <= cap.min(20) {
                let elems = bfs_closure(&ctx, cap.min(20)).map_err(CliError::from)?;
                report(
                    "bfs-closure",
                    elems.len() == 1usize << ctx.log_order(),
                    format!("{} elements, expected 2^{}", elems.len(), ctx.log_order()),
                );
                let kernel = elems.iter().filter(|e| project(e).is_identity()).count();
                report(
                    "projection-kernel",
                    kernel == 1usize << (ctx.n_c() + 2),
                    format!("kernel order {kernel}, expected 2^{} = |Z_k|", ctx.n_c() + 2),
                );
            } else {
                println!(
                    "SKIP bfs-closure: 2^{} elements exceeds the BFS bound",
                    ctx.log_order()
                );
            }

            let relators = relator_check(&ctx);
            report(
                "relator-suite",
                relators.all_hold(),
                format!(
                    "{} relators, x^(2^k) nontrivial: {}",
                    relators.checks.len(),
                    relators.x_half_order_nontrivial
                ),
            );

            for r in 1..=3u32 {
                if (1u64 << r) > (1u64 << (ctx.k() + 1)) {
                    break;
                }
                let c =
                    collection_identity_check(&ctx, &ctx.x(), &ctx.y(), r).map_err(CliError::from)?;
                report(
                    &format!("collection-identities-r{r}"),
                    c.eq1_holds && c.eq2_holds,
                    format!("eq(1) {}, eq(2) {}", c.eq1_holds, c.eq2_holds),
                );
            }

            if ok {
                Ok(())
            } else {
                Err(CliError::Check)
            }
        }
    }
}
