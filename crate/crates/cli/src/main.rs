//! Command-line front end. Every subcommand prints one report in the chosen
//! format. Exit status: 0 on success, 2 when a verification fails, 3 when a
//! precondition is violated or an input is out of the validated range.

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qkoszul::cohomology::{bwb, step_lemma_table, wedge_weight_vanishing, CohomologyAnswer};
use qkoszul::config::{check_ell, Bounds, OutputFormat, RunConfig};
use qkoszul::invariants::{Decomposer, GroupAlgebraElement, Twist};
use qkoszul::koszul::strand_homology;
use qkoszul::qmatrix::{normal_form, XiPoly};
use qkoszul::verify::{run_suite, Suite};
use qkoszul::weights::Weight;
use qkoszul::Error;

#[derive(Parser)]
#[command(name = "qkoszul", version, about = "Exact computations for type-A quantum groups")]
struct Cli {
    /// Rank of GL_n [default: 3, or the length of a given weight].
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Coefficients: generic q, or a root of unity of order --zeta-order.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, global = true)]
    zeta_order: Option<u32>,
    /// Largest total degree.
    #[arg(long, global = true, default_value_t = 6)]
    degree_bound: usize,
    /// Radius of the weight box; defaults to n + 2.
    #[arg(long = "box", global = true)]
    weight_box: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generic,
    #[value(alias = "zeta")]
    RootOfUnity,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistArg {
    Twisted,
    Untwisted,
}

#[derive(Subcommand)]
enum Command {
    /// PBW normal form of an expression in x[r,s] or xt[r,s].
    NormalForm { expr: String },
    /// Dimensions, ranks and homology of the Koszul strands up to the degree bound.
    Koszul,
    /// Cohomology of the line bundle of a weight.
    Bwb {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Cohomology of -(α_{1j_1} + … + α_{1j_a}) for all 2 ≤ j_1 < … < j_a ≤ n.
    StepTable {
        #[arg(long)]
        a: usize,
    },
    /// Checks that -(a-k)ε_1 - α_{1j_1} - … - α_{1j_k} is acyclic for every j.
    WedgeTable {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
    },
    /// Writes a W_J-invariant as Σ_a f_a χ_{aε_1} with W-invariant f_a.
    Decompose {
        expr: String,
        #[arg(long, value_enum, default_value_t = TwistArg::Twisted)]
        twist: TwistArg,
    },
    /// Runs a verification suite, or `all` of them.
    Verify { suite: String },
}

/// A report plus whether it counts as a verification failure.
struct Report {
    json: Value,
    text: String,
    /// Table rows for CSV; the JSON object itself is used otherwise.
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, csv: None, ok: true }
    }
}

impl Cli {
    fn config(&self) -> Result<RunConfig, Error> {
        let zeta_order = match (self.mode, self.zeta_order) {
            (Some(ModeArg::Generic), Some(_)) => {
                return Err(Error::InvalidInput("--zeta-order needs --mode root-of-unity".into()))
            }
            (Some(ModeArg::RootOfUnity), None) => {
                return Err(Error::InvalidInput("--mode root-of-unity needs --zeta-order".into()))
            }
            (_, z) => z,
        };
        let format = match self.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        };
        let bounds = Bounds { degree: self.degree_bound, weight_box: self.weight_box, ..Bounds::default() };
        Ok(RunConfig { n: self.n.unwrap_or(3), zeta_order, bounds, format, seed: self.seed })
    }
}

fn run(cli: &Cli) -> Result<Vec<Report>> {
    let cfg = cli.config()?;
    let mode = cfg.mode()?;
    if cfg.n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {}", cfg.n)).into());
    }
    let reports = match &cli.command {
        Command::NormalForm { expr } => {
            let p = XiPoly::parse(expr, &mode, cfg.n)?;
            let nf = normal_form(&p).to_string();
            vec![Report::new(json!({ "input": expr, "normal_form": nf }), nf)]
        }
        Command::Koszul => {
            let strands = (0..=cfg.bounds.degree).map(|d| strand_homology(&mode, cfg.n, d)).collect::<Result<Vec<_>, _>>()?;
            let exact = strands.iter().all(|s| s.is_exact());
            let text = strands
                .iter()
                .map(|s| {
                    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                    format!("d={}  dims {}  ranks {}  betti {}", s.d, join(&s.dims), join(&s.ranks), join(&s.betti))
                })
                .chain([format!("exact: {exact}")])
                .collect::<Vec<_>>()
                .join("\n");
            let rows = strands
                .iter()
                .flat_map(|s| {
                    (0..=cfg.n).map(move |p| {
                        let rank = s.ranks.get(p).map_or(String::new(), |r| r.to_string());
                        vec![s.d.to_string(), p.to_string(), s.dims[p].to_string(), rank, s.betti[p].to_string()]
                    })
                })
                .collect();
            let json = json!({ "n": cfg.n, "zeta_order": cfg.zeta_order, "strands": strands, "exact": exact });
            vec![Report { json, text, csv: Some((vec!["d", "p", "dim", "rank", "betti"], rows)), ok: exact }]
        }
        Command::Bwb { weight } => {
            let lambda: Weight = weight.parse()?;
            if let Some(n) = cli.n.filter(|&n| n != lambda.rank()) {
                return Err(Error::RankMismatch { expected: n, found: lambda.rank() }.into());
            }
            check_ell(&mode, lambda.rank())?;
            let ans = bwb(&lambda, &mode)?;
            vec![Report::new(serde_json::to_value(&ans)?, describe(&ans))]
        }
        Command::StepTable { a } => {
            let table = step_lemma_table(&mode, cfg.n, *a)?;
            let text = table
                .tuples
                .iter()
                .map(|r| format!("j = {:?}: {}", r.j, describe(&r.result)))
                .collect::<Vec<_>>()
                .join("\n");
            let rows = table.tuples.iter().map(|r| answer_row(&r.j, &r.result)).collect();
            let ok = table.matches_expected();
            vec![Report { json: serde_json::to_value(&table)?, text, csv: Some((vec!["j", "i", "mu", "dim"], rows)), ok }]
        }
        Command::WedgeTable { a, k } => {
            let r = wedge_weight_vanishing(&mode, cfg.n, *a, *k)?;
            let text = format!("{} tuples, nonvanishing: {:?}", r.tuples, r.nonvanishing);
            let ok = r.all_vanish();
            vec![Report { json: serde_json::to_value(&r)?, text, csv: None, ok }]
        }
        Command::Decompose { expr, twist } => {
            let twist = match twist {
                TwistArg::Twisted => Twist::Twisted,
                TwistArg::Untwisted => Twist::Untwisted,
            };
            let g = GroupAlgebraElement::parse(expr, &mode, cfg.n)?;
            let radius = cfg.bounds.weight_box(cfg.n).max(g.radius());
            let dec = Decomposer::new(&mode, cfg.n, radius, twist)?;
            let d = dec.decompose(&g)?;
            let text = d.f.iter().enumerate().map(|(a, f)| format!("f_{a} = {f}")).collect::<Vec<_>>().join("\n");
            let json = json!({
                "n": cfg.n,
                "twist": twist,
                "radius": radius,
                "unique": dec.full_column_rank(),
                "f": d.f,
            });
            let rows = d.f.iter().enumerate().map(|(a, f)| vec![a.to_string(), f.to_string()]).collect();
            vec![Report { json, text, csv: Some((vec!["a", "f"], rows)), ok: true }]
        }
        Command::Verify { suite } => {
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            suites
                .into_iter()
                .map(|s| {
                    let r = run_suite(s, &cfg)?;
                    let mode_name = r.zeta_order.map_or("generic".to_string(), |m| format!("m={m}"));
                    let verdict = if r.passed { "pass" } else { "FAIL" };
                    let mut text = format!("{} n={} {mode_name} seed={}: {verdict} ({} checks)", r.suite, r.n, r.seed, r.checks);
                    for w in &r.witnesses {
                        text.push_str(&format!("\n  {w}"));
                    }
                    let ok = r.passed;
                    Ok(Report { json: serde_json::to_value(&r)?, text, csv: None, ok })
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(reports)
}

fn describe(ans: &CohomologyAnswer) -> String {
    match ans {
        CohomologyAnswer::Vanishes => "vanishes".into(),
        CohomologyAnswer::Nonzero { i, mu, dim } => format!("H^{i} = L({mu})^*, dim {dim}"),
    }
}

fn answer_row(j: &[usize], ans: &CohomologyAnswer) -> Vec<String> {
    let j = j.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    match ans {
        CohomologyAnswer::Vanishes => vec![j, String::new(), String::new(), "0".into()],
        CohomologyAnswer::Nonzero { i, mu, dim } => vec![j, i.to_string(), mu.to_string(), dim.to_string()],
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_csv<S: AsRef<str>>(header: &[S], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header.iter().map(|h| h.as_ref()))?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render(r: &Report, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => serde_json::to_string_pretty(&r.json)?,
        OutputFormat::Text => r.text.clone(),
        OutputFormat::Csv => match (&r.csv, &r.json) {
            (Some((header, rows)), _) => write_csv(header, rows.clone())?,
            (None, Value::Object(map)) => {
                let header: Vec<&String> = map.keys().collect();
                write_csv(&header, [map.values().map(cell).collect()])?
            }
            (None, v) => write_csv(&["value"], [vec![cell(v)]])?,
        }
        .trim_end()
        .to_string(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let format = match cli.config() {
        Ok(c) => c.format,
        Err(_) => OutputFormat::Json,
    };
    match run(&cli).and_then(|reports| {
        let ok = reports.iter().all(|r| r.ok);
        if reports.len() > 1 && format == OutputFormat::Json {
            println!("{}", serde_json::to_string_pretty(&reports.iter().map(|r| &r.json).collect::<Vec<_>>())?);
        } else {
            for r in &reports {
                println!("{}", render(r, format)?);
            }
        }
        Ok(ok)
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.downcast_ref::<Error>().is_some() { 3 } else { 1 })
        }
    }
}
