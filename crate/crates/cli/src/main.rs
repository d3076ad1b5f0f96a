//! towerlab: tables, censuses, strata, and verification for recursive
//! Kummer towers.
//!
//! Subcommands: `table`, `census`, `genus`, `classify`, `verify`.
//! Every flag can also be set through the environment with the
//! `TOWERLAB_` prefix (`TOWERLAB_Q`, `TOWERLAB_MAX_N`, ...).
//! Exit codes: 0 success, 1 verification mismatch, 2 bad input.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{cell, Format, Sheet};
use tower_core::census::{total_census, CensusReport};
use tower_core::genus::{genus_report, limits, satisfies_dv_bound};
use tower_core::oracle::{
    engine_genus_sequence, mismatch_count, path_census, run_suite, ConstantField, OracleCensus,
    OracleConfig, Suite, Verdict,
};
use tower_core::pyramid::{classify, engine_different_degree};
use tower_core::scalar::pow_u;
use tower_core::{Int, Rat, Tower, TowerKind};

#[derive(Parser)]
#[command(
    name = "towerlab",
    version,
    about = "Exact invariants of recursive Kummer towers over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-level table: extension degree, different, genus, places, rates
    Table(TableArgs),
    /// Stratified rational-place census
    Census(CensusArgs),
    /// Different degrees and the genus ladder (plain gst2 tower)
    Genus(GenusArgs),
    /// Ramified strata of one tower step (plain gst2 tower)
    Classify(ClassifyArgs),
    /// Run oracle suites against the formulas; exit 1 on any mismatch
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TowerChoice {
    Gst2,
    Gst1,
    #[value(name = "gst2-shifted")]
    Gst2Shifted,
}

impl TowerChoice {
    fn kind(self) -> TowerKind {
        match self {
            TowerChoice::Gst2 => TowerKind::Gst2,
            TowerChoice::Gst1 => TowerKind::Gst1,
            TowerChoice::Gst2Shifted => TowerKind::Gst2Shifted,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TowerChoice::Gst2 => "gst2",
            TowerChoice::Gst1 => "gst1",
            TowerChoice::Gst2Shifted => "gst2-shifted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatChoice {
    Csv,
    Json,
}

impl From<FormatChoice> for Format {
    fn from(f: FormatChoice) -> Format {
        match f {
            FormatChoice::Csv => Format::Csv,
            FormatChoice::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldChoice {
    /// Count places rational over F_q
    Q,
    /// Count places rational over the full constant field F_{q^2}
    Q2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    All,
    Census,
    Genus,
    Bounds,
    Variant,
}

impl SuiteChoice {
    fn suite(self) -> Suite {
        match self {
            SuiteChoice::All => Suite::All,
            SuiteChoice::Census => Suite::Census,
            SuiteChoice::Genus => Suite::Genus,
            SuiteChoice::Bounds => Suite::Bounds,
            SuiteChoice::Variant => Suite::Variant,
        }
    }
}

#[derive(Args)]
struct TowerOpts {
    /// Tower family
    #[arg(long, value_enum, default_value_t = TowerChoice::Gst2, env = "TOWERLAB_TOWER")]
    tower: TowerChoice,
    /// Base parameter q (a prime power)
    #[arg(long, env = "TOWERLAB_Q")]
    q: u64,
    /// Shift index into the F_q subfield enumeration (gst2-shifted only)
    #[arg(long, env = "TOWERLAB_SHIFT")]
    shift: Option<u64>,
}

impl TowerOpts {
    fn build(&self) -> Result<Tower, Failure> {
        Ok(Tower::new(self.tower.kind(), self.q, self.shift)?)
    }
}

#[derive(Args)]
struct OracleOpts {
    /// Worker threads for enumeration sweeps
    #[arg(long, default_value_t = 1, env = "TOWERLAB_WORKERS")]
    workers: usize,
    /// Cap on the constant-field order for enumerations
    #[arg(long, default_value_t = 169, env = "TOWERLAB_MAX_ORDER")]
    max_order: u64,
}

impl OracleOpts {
    fn config(&self, max_level: u64) -> OracleConfig {
        OracleConfig {
            max_level,
            max_order: self.max_order,
            workers: self.workers.max(1),
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    tower: TowerOpts,
    /// Highest level to tabulate
    #[arg(long, env = "TOWERLAB_MAX_N")]
    max_n: u64,
    #[arg(long, value_enum, default_value_t = FormatChoice::Csv, env = "TOWERLAB_FORMAT")]
    format: FormatChoice,
    #[command(flatten)]
    oracle: OracleOpts,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    tower: TowerOpts,
    /// Single level to report
    #[arg(long, env = "TOWERLAB_N", conflicts_with = "max_n")]
    n: Option<u64>,
    /// Sweep levels 0..=max-n
    #[arg(long, env = "TOWERLAB_MAX_N")]
    max_n: Option<u64>,
    /// Which rationality to count
    #[arg(long, value_enum, default_value_t = FieldChoice::Q2, env = "TOWERLAB_CONSTANT_FIELD")]
    constant_field: FieldChoice,
    #[arg(long, value_enum, default_value_t = FormatChoice::Csv, env = "TOWERLAB_FORMAT")]
    format: FormatChoice,
    #[command(flatten)]
    oracle: OracleOpts,
}

#[derive(Args)]
struct GenusArgs {
    /// Base parameter q (a prime power)
    #[arg(long, env = "TOWERLAB_Q")]
    q: u64,
    /// Highest level to tabulate
    #[arg(long, env = "TOWERLAB_MAX_N")]
    max_n: u64,
    #[arg(long, value_enum, default_value_t = FormatChoice::Csv, env = "TOWERLAB_FORMAT")]
    format: FormatChoice,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Base parameter q (a prime power)
    #[arg(long, env = "TOWERLAB_Q")]
    q: u64,
    /// Level n of the step F_n -> F_{n+1}
    #[arg(long, env = "TOWERLAB_N")]
    n: u64,
    #[arg(long, value_enum, default_value_t = FormatChoice::Csv, env = "TOWERLAB_FORMAT")]
    format: FormatChoice,
}

#[derive(Args)]
struct VerifyArgs {
    /// Base parameter q (a prime power)
    #[arg(long, env = "TOWERLAB_Q")]
    q: u64,
    /// Highest level the suites sweep
    #[arg(long, default_value_t = 4, env = "TOWERLAB_MAX_N")]
    max_n: u64,
    #[arg(long, value_enum, default_value_t = SuiteChoice::All, env = "TOWERLAB_SUITE")]
    suite: SuiteChoice,
    #[command(flatten)]
    oracle: OracleOpts,
}

/// Failures map onto the exit-code contract: mismatches exit 1,
/// everything else that goes wrong is bad input and exits 2.
enum Failure {
    Mismatch(String),
    Input(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Table(args) => cmd_table(args),
        Command::Census(args) => cmd_census(args),
        Command::Genus(args) => cmd_genus(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn rat_cells(r: &Rat) -> (Option<String>, Option<String>) {
    (cell(r.numer()), cell(r.denom()))
}

const TABLE_COLUMNS: [&str; 10] = [
    "n",
    "ext_degree",
    "deg_diff",
    "genus",
    "N",
    "nu_num",
    "nu_den",
    "lambda_num",
    "lambda_den",
    "dv_bound_met",
];

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let tower = args.tower.build()?;
    let cfg = args.oracle.config(args.max_n);
    let mut sheet = Sheet::new(TABLE_COLUMNS.to_vec());
    let source = match tower.kind() {
        TowerKind::Gst2 => {
            table_rows_closed(&tower, args.max_n, &cfg, &mut sheet)?;
            "closed-form"
        }
        _ => {
            table_rows_engine(&tower, args.max_n, &cfg, &mut sheet)?;
            "oracle-engine"
        }
    };
    let config = json!({
        "tower": args.tower.tower.name(),
        "q": args.tower.q,
        "shift": args.tower.shift,
        "max_n": args.max_n,
        "workers": cfg.workers,
        "max_order": cfg.max_order,
        "source": source,
    });
    sheet.emit(args.format.into(), "table", config);
    Ok(())
}

fn dv_cell(lambda: &Option<Rat>, q: u64, field_order: u64) -> Option<String> {
    let lambda = lambda.as_ref()?;
    let lim = limits::<Int>(q).ok()?;
    let met = *lambda >= lim.lambda && satisfies_dv_bound(&lim.lambda, field_order);
    cell(met)
}

fn table_rows_closed(
    tower: &Tower,
    max_n: u64,
    cfg: &OracleConfig,
    sheet: &mut Sheet,
) -> Result<(), Failure> {
    let q = tower.q();
    let qm1 = Int::from(q - 1);
    for n in 0..=max_n {
        let rep = total_census(tower, n)?;
        // oracle supremacy on the cheap levels: the enumeration is
        // authoritative, so a disagreement aborts the table
        if (1..=4.min(cfg.max_level)).contains(&n) && tower.ctx().order() <= cfg.max_order {
            let oracle = path_census(tower, n, ConstantField::Quadratic, cfg)?;
            if oracle.total != rep.total {
                return Err(Failure::Mismatch(format!(
                    "path census {} != closed census {} at q={q} n={n}",
                    oracle.total, rep.total
                )));
            }
        }
        let diff_prev = if n == 0 {
            None
        } else {
            Some(tower_core::genus::different_degree_closed::<Int>(q, n - 1)?)
        };
        let (nu_n, nu_d) = rat_cells(&rep.nu);
        let (l_n, l_d) = rep.lambda.as_ref().map_or((None, None), rat_cells);
        sheet.push(vec![
            cell(n),
            cell(pow_u(&qm1, n)),
            diff_prev.map(|d| d.to_string()),
            cell(&rep.genus),
            cell(&rep.total),
            nu_n,
            nu_d,
            l_n,
            l_d,
            dv_cell(&rep.lambda, q, tower.ctx().order()),
        ]);
    }
    Ok(())
}

fn table_rows_engine(
    tower: &Tower,
    max_n: u64,
    cfg: &OracleConfig,
    sheet: &mut Sheet,
) -> Result<(), Failure> {
    let q = tower.q();
    let m = Int::from(tower.exponent());
    let engine_ok = tower.exponent() == q - 1;
    let genus_seq = if engine_ok {
        Some(engine_genus_sequence(tower, max_n)?)
    } else {
        None
    };
    let field = if tower.constant_field_degree() == 2 {
        ConstantField::Quadratic
    } else {
        ConstantField::Base
    };
    for n in 0..=max_n {
        let ext = pow_u(&m, n);
        let diff_prev: Option<Int> = if engine_ok && n >= 1 {
            Some(Int::from(engine_different_degree(tower, n - 1)?))
        } else {
            None
        };
        let genus = genus_seq.as_ref().map(|s| s[n as usize].clone());
        let places: Option<Int> = match path_census(tower, n, field, cfg) {
            Ok(rep) => Some(rep.total),
            Err(tower_core::oracle::OracleError::UnsupportedTower(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let nu = places.as_ref().map(|p| Rat::new(p.clone(), ext.clone()));
        let lambda = match (&places, &genus) {
            (Some(p), Some(g)) if *g > Int::from(0) => Some(Rat::new(p.clone(), g.clone())),
            _ => None,
        };
        let (nu_n, nu_d) = nu.as_ref().map_or((None, None), rat_cells);
        let (l_n, l_d) = lambda.as_ref().map_or((None, None), rat_cells);
        sheet.push(vec![
            cell(n),
            cell(&ext),
            diff_prev.map(|d| d.to_string()),
            genus.map(|g| g.to_string()),
            places.map(|p| p.to_string()),
            nu_n,
            nu_d,
            l_n,
            l_d,
            dv_cell(&lambda, q, tower.ctx().order()),
        ]);
    }
    Ok(())
}

const CENSUS_COLUMNS: [&str; 11] = [
    "n",
    "stratum_infinity",
    "stratum_fq",
    "stratum_minus_one",
    "stratum_quadratic",
    "total",
    "fq_rational",
    "nu_num",
    "nu_den",
    "lambda_num",
    "lambda_den",
];

fn census_row_from_formula(rep: &CensusReport) -> Vec<Option<String>> {
    let (nu_n, nu_d) = rat_cells(&rep.nu);
    let (l_n, l_d) = rep.lambda.as_ref().map_or((None, None), rat_cells);
    vec![
        cell(rep.level),
        cell(&rep.stratum_infinity),
        cell(&rep.stratum_fq),
        cell(&rep.stratum_minus_one),
        cell(&rep.stratum_quadratic),
        cell(&rep.total),
        cell(&rep.fq_rational),
        nu_n,
        nu_d,
        l_n,
        l_d,
    ]
}

fn census_row_from_oracle(
    tower: &Tower,
    rep: &OracleCensus,
    genus: Option<&Int>,
) -> Vec<Option<String>> {
    let q = tower.q();
    let ext = pow_u(&Int::from(tower.exponent()), rep.level);
    let nu = Rat::new(rep.total.clone(), ext);
    let lambda =
        genus.and_then(|g| (*g > Int::from(0)).then(|| Rat::new(rep.total.clone(), g.clone())));
    let (nu_n, nu_d) = rat_cells(&nu);
    let (l_n, l_d) = lambda.as_ref().map_or((None, None), rat_cells);
    let fq_rational = if rep.level == 0 { 1 } else { q - 1 };
    vec![
        cell(rep.level),
        cell(&rep.stratum_infinity),
        cell(&rep.stratum_fq),
        cell(&rep.stratum_minus_one),
        cell(&rep.stratum_quadratic),
        cell(&rep.total),
        cell(fq_rational),
        nu_n,
        nu_d,
        l_n,
        l_d,
    ]
}

fn cmd_census(args: CensusArgs) -> Result<(), Failure> {
    let levels: Vec<u64> = match (args.n, args.max_n) {
        (Some(n), None) => vec![n],
        (None, Some(max)) => (0..=max).collect(),
        (None, None) => return Err(Failure::Input("pass exactly one of --n or --max-n".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let tower = args.tower.build()?;
    let max_level = levels.iter().copied().max().unwrap_or(0);
    let cfg = args.oracle.config(max_level);
    let mut sheet = Sheet::new(CENSUS_COLUMNS.to_vec());
    let closed = tower.kind() == TowerKind::Gst2 && args.constant_field == FieldChoice::Q2;
    let source = if closed {
        "closed-form"
    } else {
        "oracle-engine"
    };
    if closed {
        for &n in &levels {
            let rep = total_census(&tower, n)?;
            sheet.push(census_row_from_formula(&rep));
        }
    } else {
        let field = match args.constant_field {
            FieldChoice::Q2 => ConstantField::Quadratic,
            FieldChoice::Q => ConstantField::Base,
        };
        let genus_seq = match tower.kind() {
            TowerKind::Gst2 => Some(
                (0..=max_level)
                    .map(|n| tower_core::genus::genus_closed::<Int>(tower.q(), n))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            _ if tower.exponent() == tower.q() - 1 => {
                Some(engine_genus_sequence(&tower, max_level)?)
            }
            _ => None,
        };
        for &n in &levels {
            let rep = path_census(&tower, n, field, &cfg)?;
            let genus = genus_seq.as_ref().map(|s| &s[n as usize]);
            sheet.push(census_row_from_oracle(&tower, &rep, genus));
        }
    }
    let config = json!({
        "tower": args.tower.tower.name(),
        "q": args.tower.q,
        "shift": args.tower.shift,
        "levels": levels,
        "constant_field": match args.constant_field { FieldChoice::Q => "q", FieldChoice::Q2 => "q2" },
        "workers": cfg.workers,
        "max_order": cfg.max_order,
        "source": source,
    });
    sheet.emit(args.format.into(), "census", config);
    Ok(())
}

fn cmd_genus(args: GenusArgs) -> Result<(), Failure> {
    if tower_core::tower::prime_power(args.q).is_none() {
        return Err(Failure::Input(format!("{} is not a prime power", args.q)));
    }
    let report = genus_report(args.q, args.max_n)?;
    let mut sheet = Sheet::new(vec![
        "N",
        "ext_degree",
        "diff_prev",
        "genus",
        "gamma_num",
        "gamma_den",
    ]);
    for row in &report.rows {
        let (g_n, g_d) = rat_cells(&row.gamma);
        sheet.push(vec![
            cell(row.level),
            cell(&row.ext_degree),
            row.diff_prev.as_ref().map(|d| d.to_string()),
            cell(&row.genus),
            g_n,
            g_d,
        ]);
    }
    let config = json!({
        "q": args.q,
        "max_n": args.max_n,
        "gamma_limit": {
            "num": report.gamma_limit.numer().to_string(),
            "den": report.gamma_limit.denom().to_string(),
        },
    });
    sheet.emit(args.format.into(), "genus", config);
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), Failure> {
    let tower = Tower::new(TowerKind::Gst2, args.q, None)?;
    let strata = classify(&tower, args.n)?;
    let mut sheet = Sheet::new(vec![
        "t",
        "alpha",
        "common_e",
        "aggregate_degree",
        "pivot_index",
    ]);
    for s in &strata {
        sheet.push(vec![
            cell(s.t),
            cell(tower.ctx().index_of(&s.alpha)),
            cell(s.common_e),
            cell(&s.aggregate_degree),
            cell(&s.pivot_index),
        ]);
    }
    let config = json!({
        "q": args.q,
        "n": args.n,
        "alpha_encoding": "enumeration index in the constant field",
    });
    sheet.emit(args.format.into(), "classify", config);
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = args.oracle.config(args.max_n.max(5));
    let outcomes = run_suite(args.q, args.max_n, args.suite.suite(), &cfg)?;
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let (verdict, note) = match &o.verdict {
                Verdict::Match => ("match", Value::Null),
                Verdict::Mismatch => ("mismatch", Value::Null),
                Verdict::Skipped(reason) => ("skipped", json!(reason)),
            };
            json!({
                "check": o.check,
                "params": o.params,
                "expected": o.expected,
                "observed": o.observed,
                "verdict": verdict,
                "note": note,
            })
        })
        .collect();
    let mismatches = mismatch_count(&outcomes);
    let doc = json!({
        "schema": 1,
        "command": "verify",
        "config": {
            "q": args.q,
            "max_n": args.max_n,
            "suite": format!("{:?}", args.suite).to_lowercase(),
            "workers": cfg.workers,
            "max_order": cfg.max_order,
        },
        "outcomes": rows,
        "mismatches": mismatches,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("static document")
    );
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!(
            "{mismatches} verification mismatch(es) at q={}",
            args.q
        )));
    }
    Ok(())
}
