//! The `esdg` command line: timetable conversion, graph builds, queries,
//! statistics, coverage analytics and the seeded query benchmark.
//!
//! [`run`] takes the argument list and the two output streams so the whole
//! front end can be driven in-process by tests. Exit codes: 0 on success,
//! 2 for usage or input errors, 3 when an internal invariant fails.

use std::fmt::Display;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use rayon::prelude::*;

use esdg_core::bench::{self, BenchSpec, Mode, QueryRecord};
use esdg_core::ingest::{gtfs_to_temporal, GtfsLiteFeed};
use esdg_core::{
    build_esdg, coverage_report, format_time, EatEngine, EatOptions, Error, Esdg32, FpdEngine,
    FpdOptions, Percent, TemporalGraph32, Timestamp, VertexId,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Name of the stop-label sidecar written next to converted edge lists.
pub const LABELS_FILE: &str = "labels.tsv";

#[derive(Debug, Parser)]
#[command(name = "esdg", version, about = "Journey planning on temporal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a GTFS-lite directory into an edge list (plus labels.tsv)
    Convert {
        gtfs_dir: PathBuf,
        out_edges: PathBuf,
    },
    /// Build and validate the dependency graph of an edge list
    Build { edges: PathBuf, out_esdg: PathBuf },
    /// Earliest arrival times from one source
    Eat {
        esdg: PathBuf,
        #[arg(long)]
        source: u64,
        #[arg(long, allow_negative_numbers = true)]
        ready_time: i64,
        /// Expand every dequeued node, even without improvement
        #[arg(long)]
        no_skip: bool,
    },
    /// Fastest journey durations from one source
    Fpd {
        esdg: PathBuf,
        #[arg(long)]
        source: u64,
        /// Run a phase for every source departure
        #[arg(long)]
        no_skip: bool,
    },
    /// Seeded random queries with work counters
    Bench {
        esdg: PathBuf,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run queries on this many threads; the report order is unchanged
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Size statistics of a built graph
    Stats { esdg: PathBuf },
    /// Eccentricity plus k-bounded coverage or p% coverage time
    #[command(group(ArgGroup::new("bound").required(true).args(["k", "percent"])))]
    Coverage {
        esdg: PathBuf,
        #[arg(long)]
        source: u64,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        percent: Option<Percent>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

trait Context<T> {
    fn at(self, path: &Path) -> Result<T, Failure>;
}

impl<T, E: Into<Failure>> Context<T> for Result<T, E> {
    fn at(self, path: &Path) -> Result<T, Failure> {
        self.map_err(|e| {
            let mut f = e.into();
            f.message = format!("{}: {}", path.display(), f.message);
            f
        })
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "esdg: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Convert {
            gtfs_dir,
            out_edges,
        } => convert(&gtfs_dir, &out_edges, err),
        Command::Build { edges, out_esdg } => build(&edges, &out_esdg, err),
        Command::Eat {
            esdg,
            source,
            ready_time,
            no_skip,
        } => eat(&load(&esdg)?, source, ready_time, no_skip, out),
        Command::Fpd {
            esdg,
            source,
            no_skip,
        } => fpd(&load(&esdg)?, source, no_skip, out),
        Command::Bench {
            esdg,
            mode,
            queries,
            seed,
            threads,
        } => {
            let spec = BenchSpec::new(mode, queries, seed)?;
            bench_cmd(&load(&esdg)?, &spec, threads, out)
        }
        Command::Stats { esdg } => stats(&load(&esdg)?, out),
        Command::Coverage {
            esdg,
            source,
            k,
            percent,
        } => coverage(&load(&esdg)?, source, k, percent, out),
    }
}

fn load(path: &Path) -> Result<Esdg32, Failure> {
    Esdg32::load(path).at(path)
}

fn vertex(esdg: &Esdg32, source: u64) -> Result<VertexId, Failure> {
    let n = esdg.vertex_count();
    if source >= n as u64 {
        return Err(Error::SourceOutOfRange { vertex: source, n }.into());
    }
    Ok(source as VertexId)
}

fn convert(dir: &Path, out_edges: &Path, err: &mut dyn Write) -> Result<(), Failure> {
    let feed = GtfsLiteFeed::load(dir).at(dir)?;
    let conv = gtfs_to_temporal::<u32>(&feed).at(dir)?;
    let mut w = BufWriter::new(File::create(out_edges).at(out_edges)?);
    conv.write_edge_list(&mut w)
        .and_then(|()| w.flush())
        .at(out_edges)?;

    let labels_path = out_edges
        .parent()
        .unwrap_or(Path::new(""))
        .join(LABELS_FILE);
    let mut w = BufWriter::new(File::create(&labels_path).at(&labels_path)?);
    conv.write_labels(&mut w)
        .and_then(|()| w.flush())
        .at(&labels_path)?;

    writeln!(
        err,
        "converted {} stops, {} edges ({} dropped with non-positive duration, {} duplicates)",
        conv.labels.len(),
        conv.graph.edge_count(),
        conv.dropped_nonpositive,
        conv.duplicate_edges
    )?;
    Ok(())
}

fn build(edges: &Path, out_esdg: &Path, err: &mut dyn Write) -> Result<(), Failure> {
    let text = fs::read_to_string(edges).at(edges)?;
    let g = TemporalGraph32::parse_edge_list(&text).at(edges)?;
    let esdg = build_esdg(&g);
    esdg.check_invariants(&g)?;
    esdg.save(out_esdg).at(out_esdg)?;
    let s = esdg.stats();
    writeln!(
        err,
        "built {} nodes, {} arcs over {} vertices",
        s.n_nodes, s.n_arcs, s.n_vertices
    )?;
    Ok(())
}

fn write_column<T: Timestamp>(out: &mut dyn Write, name: &str, values: &[T]) -> io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "vertex\t{name}")?;
    for (z, &v) in values.iter().enumerate() {
        writeln!(w, "{z}\t{}", format_time(v))?;
    }
    w.flush()
}

fn eat(
    esdg: &Esdg32,
    source: u64,
    ready_time: i64,
    no_skip: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let s = vertex(esdg, source)?;
    if ready_time < 0 {
        return Err(input_error(format!("ready time {ready_time} is negative")));
    }
    let opts = if no_skip {
        EatOptions::unoptimized()
    } else {
        EatOptions::default()
    };
    match u32::try_from(ready_time)
        .ok()
        .filter(|rt| rt.is_reachable())
    {
        Some(rt) => {
            let r = EatEngine::new(esdg, opts).run(s, rt)?;
            write_column(out, "eat", &r.eat)?;
        }
        None => {
            // later than any representable departure: only the source is reached
            let mut w = BufWriter::new(out);
            writeln!(w, "vertex\teat")?;
            for z in 0..esdg.vertex_count() {
                let v: &dyn Display = if z == s as usize { &ready_time } else { &"inf" };
                writeln!(w, "{z}\t{v}")?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn fpd(esdg: &Esdg32, source: u64, no_skip: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let s = vertex(esdg, source)?;
    let opts = if no_skip {
        FpdOptions::unoptimized()
    } else {
        FpdOptions::default()
    };
    let r = FpdEngine::new(esdg, opts).run(s)?;
    write_column(out, "journey", &r.journey)?;
    Ok(())
}

fn bench_cmd(
    esdg: &Esdg32,
    spec: &BenchSpec,
    threads: Option<usize>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let records = match threads {
        None | Some(1) => bench::run_bench(esdg, spec)?,
        Some(0) => return Err(input_error("--threads must be at least 1")),
        Some(t) => {
            let queries = bench::generate_queries(spec, esdg.vertex_count())?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| input_error(format!("cannot start {t} threads: {e}")))?;
            let records: Vec<QueryRecord> = pool.install(|| {
                queries
                    .into_par_iter()
                    .map(|q| bench::run_query(esdg, spec.mode, q, false))
                    .collect::<Result<_, _>>()
            })?;
            bench::check_counters(esdg, &records)?;
            records
        }
    };
    let mut w = BufWriter::new(out);
    bench::write_report(&mut w, spec.mode, &records)?;
    w.flush()?;
    Ok(())
}

fn stats(esdg: &Esdg32, out: &mut dyn Write) -> Result<(), Failure> {
    let s = esdg.stats();
    writeln!(out, "n_vertices\t{}", s.n_vertices)?;
    writeln!(out, "n_nodes\t{}", s.n_nodes)?;
    writeln!(out, "n_arcs\t{}", s.n_arcs)?;
    writeln!(out, "max_out_degree\t{}", s.max_out_degree)?;
    writeln!(out, "avg_out_degree\t{}", s.avg_out_degree())?;
    Ok(())
}

fn coverage(
    esdg: &Esdg32,
    source: u64,
    k: Option<u32>,
    percent: Option<Percent>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let s = vertex(esdg, source)?;
    let r = coverage_report(esdg, s, k, percent)?;
    let opt = |v: Option<u32>| v.map_or_else(|| "inf".to_string(), |v| v.to_string());
    writeln!(out, "source\t{}", r.source)?;
    writeln!(out, "eccentricity\t{}", opt(r.eccentricity))?;
    if let (Some(k), Some(c)) = (r.k, r.coverage_count) {
        writeln!(out, "k\t{k}")?;
        writeln!(out, "coverage_count\t{c}")?;
    }
    if let Some(p) = r.percent {
        writeln!(out, "percent\t{p}")?;
        writeln!(out, "coverage_time\t{}", opt(r.coverage_time))?;
    }
    Ok(())
}
