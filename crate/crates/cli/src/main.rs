use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hadwiger_core::asymptotics::{self, DEFAULT_S_MAX};
use hadwiger_core::bodies::Monotonicity;
use hadwiger_core::lattices::{brute_force_kissing, required_box};
use hadwiger_core::pipelines::PivotPolicy;
use hadwiger_core::report::{table, KeyValues};
use hadwiger_core::{
    choose_t_lp, kissing_count, kissing_count_with, named_code, parse_body_spec, verify_theorem3, verify_theorem4,
    BinaryCode, BodySpec, LatticeD, Method, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "hadwiger",
    version,
    about = "Minimal vectors of code lattices under block gauges"
)]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Both, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Kv,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Binary codes.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Body documents.
    Body {
        #[command(subcommand)]
        cmd: BodyCmd,
    },
    /// Lattices built from codes.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Growth-rate constants and comparison tables.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Codewords over t as minimal vectors of l_p balls.
    Theorem3 {
        #[command(subcommand)]
        cmd: Theorem3Cmd,
    },
    /// Codewords embedded into block bodies.
    Theorem4 {
        #[command(subcommand)]
        cmd: Theorem4Cmd,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Parameters and weight distribution.
    Info {
        /// Named code (hamming8, golay24, rm(1,4), ...) or a generator file.
        #[arg(long)]
        code: String,
    },
}

#[derive(Subcommand)]
enum BodyCmd {
    /// Parse a body and report per-block data.
    Check { file: String },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Count minimal vectors.
    Kissing(KissingArgs),
}

#[derive(Args)]
struct KissingArgs {
    #[arg(long)]
    code: String,
    /// Denominator, or `auto` for the least t with t^p >= d.
    #[arg(long, default_value = "auto")]
    t: String,
    /// Body file, or `lp:P` for the l_P ball.
    #[arg(long)]
    body: String,
    /// Force the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Oracle box half-width (default: the smallest provably sufficient one).
    #[arg(long = "box")]
    box_radius: Option<i64>,
    /// Number of witnesses to print.
    #[arg(long, default_value_t = 0)]
    witnesses: usize,
}

#[derive(Subcommand)]
enum BoundsCmd {
    Table {
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_values_t = vec![8u64, 24, 64, 256, 4096])]
        n: Vec<u64>,
    },
    Constants,
}

#[derive(Subcommand)]
enum Theorem3Cmd {
    Verify {
        #[arg(long)]
        code: String,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Subcommand)]
enum Theorem4Cmd {
    Verify {
        #[arg(long)]
        code: String,
        #[arg(long)]
        body: String,
        /// 1-based position inside each block for the code coordinates.
        #[arg(long)]
        pivot: Option<usize>,
    },
}

fn load_code(arg: &str) -> anyhow::Result<BinaryCode> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return Ok(BinaryCode::parse(&text)?);
    }
    Ok(named_code(arg)?)
}

fn load_body(arg: &str, n: usize) -> anyhow::Result<BodySpec> {
    if let Some(p) = arg.strip_prefix("lp:") {
        let p: f64 = p.parse().with_context(|| format!("bad exponent in {arg:?}"))?;
        return Ok(BodySpec::lp(n, p)?);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    Ok(parse_body_spec(&text)?)
}

fn emit(format: Format, title: &str, table_text: &str, kv: &KeyValues) {
    if format != Format::Kv {
        println!("{title}\n{table_text}");
    }
    if format != Format::Table {
        print!("{}", kv.render());
    }
}

fn code_info(format: Format, arg: &str) -> anyhow::Result<ExitCode> {
    let code = load_code(arg)?;
    let dist = code.weight_distribution()?;
    let d = code.min_distance()?;
    let mut kv = KeyValues::new();
    kv.push("n", code.n())
        .push("k", code.k())
        .push("d", d)
        .push("A_d", code.min_weight_count()?);
    let rows: Vec<Vec<String>> = dist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, c)| vec![w.to_string(), c.to_string()])
        .collect();
    for r in &rows {
        kv.push(format!("weight.{}", r[0]), &r[1]);
    }
    for (i, row) in code.to_text().lines().enumerate() {
        kv.push(format!("generator.{i}"), row);
    }
    let title = format!("[{}, {}, {}] code", code.n(), code.k(), d);
    emit(format, &title, &table(&["weight", "count"], &rows), &kv);
    Ok(ExitCode::SUCCESS)
}

fn body_check(format: Format, file: &str) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    let spec = parse_body_spec(&text)?;
    let mut kv = KeyValues::new();
    kv.push("n", spec.n())
        .push("blocks", spec.blocks().len())
        .push(
            "common_exponent",
            spec.common_exponent().map_or("none".into(), |p| p.to_string()),
        )
        .push("radius", spec.radius());
    let mut rows = Vec::new();
    for (j, b) in spec.blocks().iter().enumerate() {
        let coords: Vec<String> = b.coords.iter().map(|c| (c + 1).to_string()).collect();
        let rho = b.gauge.min_integer_gauge()?.rho;
        let pivot = match b.gauge.default_pivot() {
            Ok(i) => (b.coords[i] + 1).to_string(),
            Err(_) => "none".to_string(),
        };
        let monotone: Vec<&str> = (0..b.coords.len())
            .map(|i| match b.gauge.check_monotonicity(i) {
                Ok(Monotonicity::Pass) => "y",
                _ => "n",
            })
            .collect();
        let prefix = format!("block.{}", j + 1);
        kv.push(format!("{prefix}.coords"), coords.join(","))
            .push(format!("{prefix}.gauge"), &b.gauge)
            .push(format!("{prefix}.p"), b.exponent)
            .push(format!("{prefix}.rho"), rho)
            .push(format!("{prefix}.pivot"), &pivot)
            .push(format!("{prefix}.monotone"), monotone.join(""));
        rows.push(vec![
            (j + 1).to_string(),
            coords.join(","),
            b.gauge.kind_name().to_string(),
            b.exponent.to_string(),
            format!("{rho:.6}"),
            pivot,
            monotone.join(""),
        ]);
    }
    let t = table(&["block", "coords", "gauge", "p", "rho", "pivot", "monotone"], &rows);
    emit(format, &spec.describe(), &t, &kv);
    Ok(ExitCode::SUCCESS)
}

fn lattice_kissing(format: Format, args: &KissingArgs) -> anyhow::Result<ExitCode> {
    let code = load_code(&args.code)?;
    let spec = load_body(&args.body, code.n())?;
    let d = code.min_distance()?;
    let t = if args.t == "auto" {
        match spec.common_exponent() {
            Some(p) => choose_t_lp(p, d)?,
            None => bail!("--t auto needs a body with one exponent; pass --t explicitly"),
        }
    } else {
        args.t.parse().with_context(|| format!("bad --t {:?}", args.t))?
    };
    let lat = LatticeD::new(&code, t)?;
    let report = match (args.oracle, args.box_radius) {
        (true, Some(b)) => brute_force_kissing(&lat, &spec, b)?,
        (true, None) => kissing_count_with(&lat, &spec, Method::BruteForce)?,
        (false, _) => kissing_count(&lat, &spec)?,
    };
    let kv = report.key_values();
    let title = format!("minimal vectors of Z^{} + (1/{t})<C_d>", lat.n());
    emit(format, &title, &kv.render_table(), &kv);
    if args.witnesses > 0 && format != Format::Kv {
        print!("{}", report.witness_lines(args.witnesses));
    }
    if report.box_sufficient == Some(false) {
        eprintln!(
            "warning: box {} may miss minimal vectors (need {:.4})",
            report.oracle_box.unwrap_or(0),
            required_box(&lat, &spec, report.nu)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_big(x: f64) -> String {
    if x.abs() < 1e9 {
        format!("{x:.4}")
    } else {
        format!("{x:.4e}")
    }
}

fn bounds_table(format: Format, ns: &[u64]) -> anyhow::Result<ExitCode> {
    let rows = asymptotics::bound_table(ns)?;
    let mut kv = KeyValues::new();
    let mut cells = Vec::new();
    for r in &rows {
        let p = format!("n.{}", r.n);
        kv.push(format!("{p}.quadratic"), r.quadratic)
            .push(format!("{p}.rate_log2"), r.rate_log2)
            .push(format!("{p}.rate"), r.rate)
            .push(format!("{p}.euclidean_rate"), r.euclidean_rate);
        cells.push(vec![
            r.n.to_string(),
            fmt_big(r.quadratic),
            format!("{:.4}", r.rate_log2),
            fmt_big(r.rate),
            fmt_big(r.euclidean_rate),
        ]);
    }
    let cross = asymptotics::crossover();
    kv.push("crossover_n", cross)
        .push("M", asymptotics::constant_m())
        .push("constant_factor_rate", "unspecified")
        .push("constant_factor_euclidean", "unspecified")
        .push("constant_superpolynomial", "unspecified");
    let t = table(&["n", "n^2+n", "M*n", "2^(M*n)", "1.015^n"], &cells)
        + &format!("2^(M*n) first exceeds n^2+n at n = {cross}\nconstant factors: unspecified\n");
    emit(format, "growth rates (constant factors omitted)", &t, &kv);
    Ok(ExitCode::SUCCESS)
}

fn bounds_constants(format: Format) -> anyhow::Result<ExitCode> {
    let m = asymptotics::constant_m();
    let c = asymptotics::constant_c(1.0)?;
    let closed = asymptotics::constant_c_closed_form();
    let (e, s) = asymptotics::exponent_e(0.5, DEFAULT_S_MAX)?;
    let (d1, d2) = asymptotics::zeros_of_es(3)?;
    let mut kv = KeyValues::new();
    kv.push("M", m)
        .push("E(0.5)", e)
        .push("argmax_s", s)
        .push("c", c)
        .push("c_closed_form", closed)
        .push("c_identity_error", (c - closed).abs())
        .push("E3.zero1", d1)
        .push("E3.zero2", d2)
        .push("s_max", DEFAULT_S_MAX);
    let mut rows = Vec::new();
    for i in 1..20 {
        let delta = i as f64 * 0.05;
        let (v, s) = asymptotics::exponent_e(delta, DEFAULT_S_MAX)?;
        let flag = if v > 0.0 { "" } else { "non-positive under s_max" };
        kv.push(format!("E.{delta:.2}"), v).push(format!("E.{delta:.2}.s"), s);
        rows.push(vec![
            format!("{delta:.2}"),
            format!("{v:.6e}"),
            s.to_string(),
            flag.to_string(),
        ]);
    }
    let head = format!("M = {m:.9}\nc = 2^M = {c:.9}  (closed form {closed:.9})\nE_3 zeros: {d1:.10}, {d2:.10}\n");
    emit(format, &head, &table(&["delta", "E(delta)", "s*", "flag"], &rows), &kv);
    Ok(ExitCode::SUCCESS)
}

fn emit_verification(format: Format, report: &VerificationReport) -> ExitCode {
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let status = match c.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "SKIP",
            };
            vec![
                c.name.to_string(),
                status.to_string(),
                if c.gating { "yes" } else { "no" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let verdict = if report.pass() { "PASS" } else { "FAIL" };
    let title = format!("{} {} on {}: {verdict}", report.kind, report.code, report.body);
    emit(
        format,
        &title,
        &table(&["check", "status", "gating", "detail"], &rows),
        &report.key_values(),
    );
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let f = cli.format;
    match cli.command {
        Command::Code {
            cmd: CodeCmd::Info { code },
        } => code_info(f, &code),
        Command::Body {
            cmd: BodyCmd::Check { file },
        } => body_check(f, &file),
        Command::Lattice {
            cmd: LatticeCmd::Kissing(args),
        } => lattice_kissing(f, &args),
        Command::Bounds {
            cmd: BoundsCmd::Table { n },
        } => bounds_table(f, &n),
        Command::Bounds {
            cmd: BoundsCmd::Constants,
        } => bounds_constants(f),
        Command::Theorem3 {
            cmd: Theorem3Cmd::Verify { code, p },
        } => Ok(emit_verification(f, &verify_theorem3(&load_code(&code)?, p)?)),
        Command::Theorem4 {
            cmd: Theorem4Cmd::Verify { code, body, pivot },
        } => {
            let code = load_code(&code)?;
            let spec = load_body(&body, code.n())?;
            let policy = match pivot {
                None => PivotPolicy::Default,
                Some(0) => bail!("--pivot is 1-based"),
                Some(i) => PivotPolicy::Fixed(i - 1),
            };
            Ok(emit_verification(f, &verify_theorem4(&spec, &code, policy)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
