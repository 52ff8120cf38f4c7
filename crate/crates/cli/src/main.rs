//! `corners`: enumeration, censuses, series coefficients and the errata report.
//!
//! Exit codes: 0 success, 1 internal inconsistency found by `verify`,
//! 2 usage or resource-bound errors.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use corners::algebra::rational::to_pq;
use corners::bargraph::{enumerate_bargraphs, enumerate_setpartitions};
use corners::census::{census_bargraphs, census_setpartitions, CensusTable};
use corners::gf::{type_a, type_b, JetSeries, Marking, RatSeries};
use corners::verify::{run_suite, Report, SuiteConfig};
use corners::{Bargraph, Error};

/// Thread count for the parallel census and verification work.
const THREADS_ENV: &str = "CORNERS_THREADS";

const MAX_CELLS: usize = 24;
const MAX_LETTERS: usize = 12;
const MAX_SERIES_CAP: usize = 40;

const GF_HELP: &str = "\
Generating functions (--gf):
  H            type A corners, solved from the first-column recurrence: H(x,y,q)
  J            type B corners, solved likewise: J(x,y,p)
  G            total type A corners, displayed form y^2x^3/((1-x-xy)^2(1+x))
  T_A          (v,w) type A corners, displayed form (needs --v --w)
  T_B          (v,w) type B corners, displayed form (needs --v --w)
  H_B_printed  total type B corners, displayed form xy(1-x-xy+x^2y^2)/(1-x-xy)^2
  HN           type A with column heights at most N (needs --N)
  JN           type B with column heights at most N (needs --N)
  Pk_A         set partitions with k blocks, type A product of height-bounded factors (needs --k)
  Pk_B         set partitions with k blocks, type B product with the p^(1-k) factor (needs --k)
  Qk_A         total type A corners over set partitions with k blocks, series in t (needs --k; t cap = --xcap)
  Qk_B         same for type B
Marks (--mark): unmarked (default), all, vw (a single (v,w) mark; needs --v --w).
Marked series print the value and the eps part (the first derivative at mark 1).";

#[derive(Parser)]
#[command(name = "corners", version, about = "Exact corner statistics on bargraphs and set partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MarkArg {
    Unmarked,
    All,
    Vw,
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gf {
    #[value(name = "H")]
    H,
    #[value(name = "J")]
    J,
    #[value(name = "G")]
    G,
    #[value(name = "T_A")]
    T_A,
    #[value(name = "T_B")]
    T_B,
    #[value(name = "H_B_printed")]
    H_B_printed,
    #[value(name = "HN")]
    HN,
    #[value(name = "JN")]
    JN,
    #[value(name = "Pk_A")]
    Pk_A,
    #[value(name = "Pk_B")]
    Pk_B,
    #[value(name = "Qk_A")]
    Qk_A,
    #[value(name = "Qk_B")]
    Qk_B,
}

#[derive(Subcommand)]
enum Command {
    /// List bargraphs (or set partitions) with their corners.
    Enumerate {
        #[arg(long)]
        cells: usize,
        #[arg(long, conflicts_with = "setpart")]
        columns: Option<usize>,
        #[arg(long, conflicts_with = "setpart")]
        max_height: Option<u32>,
        /// Enumerate set partitions of [cells] as restricted growth words.
        #[arg(long)]
        setpart: bool,
        #[arg(long, requires = "setpart")]
        blocks: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tally corners by (cells, columns), or by (size, blocks) for set partitions.
    Census {
        #[arg(long)]
        cells_max: usize,
        #[arg(long, conflicts_with = "setpart")]
        max_height: Option<u32>,
        #[arg(long)]
        setpart: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Coefficients of a generating function up to the caps.
    #[command(after_help = GF_HELP)]
    Series {
        #[arg(long, value_enum)]
        gf: Gf,
        #[arg(long, value_enum, default_value = "unmarked")]
        mark: MarkArg,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        w: Option<usize>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 8)]
        xcap: usize,
        #[arg(long, default_value_t = 8)]
        ycap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run every cross-check and print the errata report.
    Verify {
        #[arg(long, default_value_t = SuiteConfig::default().xcap)]
        xcap: usize,
        #[arg(long, default_value_t = SuiteConfig::default().ycap)]
        ycap: usize,
        #[arg(long, default_value_t = SuiteConfig::default().setpart_n_max)]
        setpart_max: usize,
        #[arg(long, default_value_t = SuiteConfig::default().vw_max)]
        vw_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
    Io(io::Error),
    Csv(csv::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Csv(e)
    }
}

type Out<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let mut out = io::BufWriter::new(io::stdout().lock());
    let result = match cli.command {
        Command::Enumerate {
            cells,
            columns,
            max_height,
            setpart,
            blocks,
            format,
        } => cmd_enumerate(&mut out, cells, columns, max_height, setpart, blocks, format).map(|_| 0),
        Command::Census {
            cells_max,
            max_height,
            setpart,
            format,
        } => cmd_census(&mut out, cells_max, max_height, setpart, format).map(|_| 0),
        Command::Series {
            gf,
            mark,
            v,
            w,
            n,
            k,
            xcap,
            ycap,
            format,
        } => cmd_series(&mut out, gf, mark, v, w, n, k, xcap, ycap, format).map(|_| 0),
        Command::Verify {
            xcap,
            ycap,
            setpart_max,
            vw_max,
            format,
        } => cmd_verify(
            &mut out,
            SuiteConfig {
                xcap,
                ycap,
                setpart_n_max: setpart_max,
                vw_max,
            },
            format,
        ),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Ok(_), Err(e)) | (Err(Failure::Io(e)), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Engine(e)), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (Err(Failure::Csv(e)), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be a positive integer, got 0"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

#[derive(Serialize)]
struct ObjectRecord {
    word: String,
    cells: usize,
    columns: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<u32>,
    corners: Vec<String>,
}

fn object_record(g: &Bargraph, blocks: Option<u32>) -> ObjectRecord {
    ObjectRecord {
        word: g.to_string(),
        cells: g.cells(),
        columns: g.columns(),
        blocks,
        corners: g.corners().iter().map(|c| c.to_string()).collect(),
    }
}

fn cmd_enumerate(
    out: &mut impl Write,
    cells: usize,
    columns: Option<usize>,
    max_height: Option<u32>,
    setpart: bool,
    blocks: Option<u32>,
    format: Format,
) -> Out<()> {
    let records: Vec<ObjectRecord> = if setpart {
        if cells > MAX_LETTERS {
            return Err(usage(format!("--cells is at most {MAX_LETTERS} with --setpart")));
        }
        enumerate_setpartitions(cells, blocks)
            .map(|w| object_record(&w.as_bargraph(), Some(w.blocks())))
            .collect()
    } else {
        if cells > MAX_CELLS {
            return Err(usage(format!("--cells is at most {MAX_CELLS}")));
        }
        enumerate_bargraphs(cells, columns, max_height)
            .map(|g| object_record(&g, None))
            .collect()
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&records).expect("serialisable"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["word", "cells", "columns"];
            if setpart {
                header.push("blocks");
            }
            header.push("corners");
            w.write_record(&header)?;
            for r in &records {
                let mut row = vec![r.word.clone(), r.cells.to_string(), r.columns.to_string()];
                if let Some(b) = r.blocks {
                    row.push(b.to_string());
                }
                row.push(r.corners.join(" "));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for r in &records {
                let word = if r.word.is_empty() { "(empty)" } else { &r.word };
                let blocks = r.blocks.map(|b| format!(" blocks={b}")).unwrap_or_default();
                writeln!(
                    out,
                    "{word} cells={} columns={}{blocks} corners=[{}]",
                    r.cells,
                    r.columns,
                    r.corners.join(" ")
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_census(
    out: &mut impl Write,
    cells_max: usize,
    max_height: Option<u32>,
    setpart: bool,
    format: Format,
) -> Out<()> {
    let table: CensusTable = if setpart {
        if cells_max > MAX_LETTERS {
            return Err(usage(format!("--cells-max is at most {MAX_LETTERS} with --setpart")));
        }
        census_setpartitions(cells_max)
    } else {
        if cells_max > MAX_CELLS {
            return Err(usage(format!("--cells-max is at most {MAX_CELLS}")));
        }
        census_bargraphs(cells_max, max_height)
    };
    let rows = table.to_rows();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serialisable"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "k", "count", "total_A", "total_B", "kind", "a", "b", "ab_count"])?;
            for r in &rows {
                let head = [r.n.to_string(), r.k.to_string(), r.count.to_string(), r.total_a.to_string(), r.total_b.to_string()];
                let exploded: Vec<(&str, &[u64; 3])> = r
                    .per_ab_a
                    .iter()
                    .map(|e| ("A", e))
                    .chain(r.per_ab_b.iter().map(|e| ("B", e)))
                    .collect();
                if exploded.is_empty() {
                    let mut row = head.to_vec();
                    row.extend(["".into(), "".into(), "".into(), "".into()]);
                    w.write_record(&row)?;
                }
                for (kind, [a, b, c]) in exploded {
                    let mut row = head.to_vec();
                    row.extend([kind.to_string(), a.to_string(), b.to_string(), c.to_string()]);
                    w.write_record(&row)?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            for r in &rows {
                let fmt_ab = |v: &[[u64; 3]]| {
                    v.iter()
                        .map(|[a, b, c]| format!("({a},{b}):{c}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(
                    out,
                    "n={} k={} count={} total_A={} total_B={} A[{}] B[{}]",
                    r.n,
                    r.k,
                    r.count,
                    r.total_a,
                    r.total_b,
                    fmt_ab(&r.per_ab_a),
                    fmt_ab(&r.per_ab_b)
                )?;
            }
        }
    }
    Ok(())
}

/// One coefficient. `eps` is present for marked series.
#[derive(Serialize)]
struct CoeffRecord {
    monomial: String,
    i: usize,
    j: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
}

enum Computed {
    Rat(RatSeries, &'static str),
    Jets(JetSeries),
}

fn need(v: Option<usize>, flag: &str, gf: &str) -> Out<usize> {
    match v {
        Some(x) if x >= 1 => Ok(x),
        Some(_) => Err(usage(format!("{flag} must be at least 1 for --gf {gf}"))),
        None => Err(usage(format!("--gf {gf} requires {flag}"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    out: &mut impl Write,
    gf: Gf,
    mark: MarkArg,
    v: Option<usize>,
    w: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    xcap: usize,
    ycap: usize,
    format: Format,
) -> Out<()> {
    if xcap > MAX_SERIES_CAP || ycap > MAX_SERIES_CAP {
        return Err(usage(format!("--xcap and --ycap are at most {MAX_SERIES_CAP}")));
    }
    let name = gf.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
    let marking = match mark {
        MarkArg::Unmarked => Marking::Unmarked,
        MarkArg::All => Marking::All,
        MarkArg::Vw => Marking::Single {
            v: need(v, "--v", &name)? as u32,
            w: need(w, "--w", &name)? as u32,
        },
    };
    let computed = match gf {
        Gf::H => Computed::Jets(type_a::solve_system_a(xcap, ycap, marking, None)?.h),
        Gf::J => Computed::Jets(type_b::solve_system_b(xcap, ycap, marking, None)?.j),
        Gf::G => Computed::Rat(type_a::printed_g(xcap, ycap)?, "xy"),
        Gf::T_A => Computed::Rat(type_a::printed_t(need(v, "--v", &name)?, need(w, "--w", &name)?, xcap, ycap)?, "xy"),
        Gf::T_B => Computed::Rat(type_b::printed_t(need(v, "--v", &name)?, need(w, "--w", &name)?, xcap, ycap)?, "xy"),
        Gf::H_B_printed => Computed::Rat(type_b::printed_h(xcap, ycap)?, "xy"),
        Gf::HN => Computed::Jets(type_a::solve_system_a(xcap, ycap, marking, Some(need(n, "--N", &name)?))?.h),
        Gf::JN => Computed::Jets(type_b::solve_system_b(xcap, ycap, marking, Some(need(n, "--N", &name)?))?.j),
        Gf::Pk_A => Computed::Jets(type_a::pk_bivariate_a(need(k, "--k", &name)?, xcap, ycap, marking)?),
        Gf::Pk_B => Computed::Jets(type_b::pk_bivariate_b(need(k, "--k", &name)?, xcap, ycap, marking)?),
        Gf::Qk_A => Computed::Rat(type_a::qk_closed_a(need(k, "--k", &name)?, xcap)?, "t"),
        Gf::Qk_B => Computed::Rat(type_b::qk_closed_b(need(k, "--k", &name)?, xcap)?, "t"),
    };
    let marked = marking != Marking::Unmarked;
    let records: Vec<CoeffRecord> = match &computed {
        Computed::Rat(s, vars) => s
            .terms()
            .map(|(i, j, c)| CoeffRecord {
                monomial: if *vars == "t" { format!("t^{i}") } else { format!("x^{i} y^{j}") },
                i,
                j,
                value: to_pq(c),
                eps: None,
            })
            .collect(),
        Computed::Jets(s) => s
            .terms()
            .map(|(i, j, c)| CoeffRecord {
                monomial: format!("x^{i} y^{j}"),
                i,
                j,
                value: to_pq(&c.value),
                eps: marked.then(|| to_pq(&c.deriv)),
            })
            .collect(),
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&records).expect("serialisable"))?,
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(out);
            let mut header = vec!["monomial", "i", "j", "value"];
            if marked {
                header.push("eps");
            }
            wtr.write_record(&header)?;
            for r in &records {
                let mut row = vec![r.monomial.clone(), r.i.to_string(), r.j.to_string(), r.value.clone()];
                if let Some(e) = &r.eps {
                    row.push(e.clone());
                }
                wtr.write_record(&row)?;
            }
            wtr.flush()?;
        }
        Format::Plain => {
            for r in &records {
                match &r.eps {
                    Some(e) => writeln!(out, "{}\t{}\t{}", r.monomial, r.value, e)?,
                    None => writeln!(out, "{}\t{}", r.monomial, r.value)?,
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(out: &mut impl Write, config: SuiteConfig, format: Format) -> Out<u8> {
    let report = run_suite(&config)?;
    write_report(out, &report, format)?;
    Ok(if report.has_internal_failure() { 1 } else { 0 })
}

fn write_report(out: &mut impl Write, report: &Report, format: Format) -> Out<()> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "formula_id",
                "status",
                "internal",
                "index",
                "expected",
                "got",
                "ranges_checked",
                "diagnostics",
            ])?;
            for c in &report.checks {
                let (idx, e, g) = c
                    .first_discrepancy
                    .as_ref()
                    .map(|d| (d.index.clone(), d.expected.clone(), d.got.clone()))
                    .unwrap_or_default();
                w.write_record([
                    c.formula_id.clone(),
                    c.status.as_str().to_string(),
                    c.internal.to_string(),
                    idx,
                    e,
                    g,
                    c.ranges_checked.clone(),
                    c.diagnostics.join("; "),
                ])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let h = &report.header;
            writeln!(
                out,
                "{} {} xcap={} ycap={} setpart_max={} vw_max={}",
                h.engine, h.version, h.config.xcap, h.config.ycap, h.config.setpart_n_max, h.config.vw_max
            )?;
            for c in &report.checks {
                let kind = if c.internal { "internal" } else { "printed" };
                match &c.first_discrepancy {
                    None => writeln!(out, "{:<16} {:<8} {}", c.status.as_str(), kind, c.formula_id)?,
                    Some(d) => writeln!(
                        out,
                        "{:<16} {:<8} {}  at {}: expected {}, got {}",
                        c.status.as_str(),
                        kind,
                        c.formula_id,
                        d.index,
                        d.expected,
                        d.got
                    )?,
                }
            }
        }
    }
    Ok(())
}
