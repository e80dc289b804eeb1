use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use msdual::canonical::canonical_basis;
use msdual::crystal::{self, crystal_graph, Component};
use msdual::hallpbw::{self, PBWVector};
use msdual::involution::{self, multisegment_to_partition, partition_to_multisegment, Partition};
use msdual::quiverrep::{self, RankTable};
use msdual::verify::{self, Bounds};
use msdual::{DegreeVector, Error, Label, Multisegment, VertexRing};

#[derive(Parser, Debug)]
#[command(name = "msdual", version, about = "Dualities on multisegments over Z and Z/nZ")]
struct Cli {
    /// `z` or `zmod:N`
    #[arg(long, global = true)]
    ring: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DualOp {
    Tau,
    Sharp,
    Flat,
    Mw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CrystalOp {
    F,
    E,
    Epsilon,
    StringSums,
    Path,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ActOp {
    F,
    Eprime,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleOp {
    HallCount,
    AutCount,
    GeomDual,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply tau, sharp, flat or the Moeglin-Waldspurger dual.
    Dual {
        #[arg(long, value_enum)]
        op: DualOp,
        multisegment: String,
    },
    /// Kashiwara operators and string data at one residue.
    CrystalOp {
        #[arg(long, value_enum)]
        op: CrystalOp,
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
        multisegment: String,
    },
    /// The crystal graph up to a total degree.
    Graph {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = ComponentArg::Empty)]
        component: ComponentArg,
    },
    /// Canonical basis of one degree in PBW coordinates.
    Canonical {
        /// Dense `d_0,d_1,...` or sparse `i:d_i,...`.
        #[arg(long, allow_hyphen_values = true)]
        dim: String,
    },
    /// Apply f_i or e'_i to a PBW vector.
    Act {
        #[arg(long, value_enum)]
        op: ActOp,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        /// JSON file with a PBW vector, or `-` for stdin.
        #[arg(long)]
        input: Option<String>,
        /// A multisegment, read as its PBW basis vector.
        multisegment: Option<String>,
    },
    /// Brute-force oracles on explicit representations.
    Oracle {
        #[arg(long, value_enum)]
        op: OracleOp,
        #[arg(long)]
        q: Option<u64>,
        /// Submodule type for `hall-count`.
        #[arg(long)]
        sub: Option<String>,
        /// Quotient type for `hall-count`.
        #[arg(long)]
        quot: Option<String>,
        multisegment: String,
    },
    /// Convert between labels, partitions and multisegments.
    Label {
        /// Lengths of the label, comma separated.
        #[arg(long)]
        mu: Option<String>,
        /// Origins of the label, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// A partition such as `(3,1)`.
        #[arg(long)]
        partition: Option<String>,
        /// A multisegment to convert to a label.
        #[arg(long)]
        from: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Only this cyclic modulus.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComponentArg {
    Empty,
    All,
}

enum Failure {
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}

impl Cli {
    fn ring(&self) -> msdual::Result<VertexRing> {
        self.ring.as_deref().unwrap_or("z").parse()
    }

    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }

    fn parse_ms(&self, text: &str) -> msdual::Result<Multisegment> {
        Multisegment::parse(text, self.ring()?)
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON serializes"));
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dual { op, multisegment } => dual(cli, *op, multisegment),
        Command::CrystalOp { op, i, multisegment } => crystal_op(cli, *op, *i, multisegment),
        Command::Graph { max_degree, component } => graph(cli, *max_degree, *component),
        Command::Canonical { dim } => canonical(cli, dim),
        Command::Act { op, i, input, multisegment } => act(cli, *op, *i, input.as_deref(), multisegment.as_deref()),
        Command::Oracle { op, q, sub, quot, multisegment } => oracle(cli, *op, *q, sub.as_deref(), quot.as_deref(), multisegment),
        Command::Label { mu, a, partition, from } => label(cli, mu.as_deref(), a.as_deref(), partition.as_deref(), from.as_deref()),
        Command::Verify { suite, max_degree, max_dim, n, quick } => run_verify(cli, suite, *max_degree, *max_dim, *n, *quick),
    }
}

fn dual(cli: &Cli, op: DualOp, text: &str) -> Outcome {
    let m = cli.parse_ms(text)?;
    let out = match op {
        DualOp::Tau => involution::tau(&m)?,
        DualOp::Sharp => involution::sharp(&m)?,
        DualOp::Flat => involution::flat(&m),
        DualOp::Mw => involution::mw_dual(&m)?,
    };
    match cli.format() {
        Format::Json => print_json(&json!({
            "ring": m.ring().to_string(),
            "op": format!("{op:?}").to_lowercase(),
            "input": m.to_string(),
            "output": out.to_string(),
            "segments": out.to_json(),
        })),
        _ => println!("{out}"),
    }
    Ok(())
}

fn need_residue(i: Option<i64>) -> msdual::Result<i64> {
    i.ok_or_else(|| Error::InvalidInput("this operation needs --i".into()))
}

fn crystal_op(cli: &Cli, op: CrystalOp, i: Option<i64>, text: &str) -> Outcome {
    let m = cli.parse_ms(text)?;
    let (text_out, value) = match op {
        CrystalOp::F => {
            let out = crystal::f_tilde(&m, need_residue(i)?);
            (out.to_string(), json!(out.to_string()))
        }
        CrystalOp::E => match crystal::e_tilde(&m, need_residue(i)?) {
            Some(out) => (out.to_string(), json!(out.to_string())),
            None => ("undefined".to_string(), Value::Null),
        },
        CrystalOp::Epsilon => {
            let e = crystal::epsilon(&m, need_residue(i)?);
            (e.to_string(), json!(e))
        }
        CrystalOp::StringSums => {
            let s = crystal::string_sums(&m, need_residue(i)?);
            let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            (parts.join(" "), json!(s))
        }
        CrystalOp::Path => {
            let p = crystal::highest_weight_path(&m);
            let word: Vec<String> = p.removal.iter().map(|x| x.to_string()).collect();
            (
                format!("removal {} top {}", if word.is_empty() { "-".into() } else { word.join(",") }, p.top),
                json!({"removal": p.removal, "top": p.top.to_string()}),
            )
        }
    };
    match cli.format() {
        Format::Json => print_json(&json!({"input": m.to_string(), "result": value})),
        _ => println!("{text_out}"),
    }
    Ok(())
}

fn graph(cli: &Cli, max_degree: usize, component: ComponentArg) -> Outcome {
    let component = match component {
        ComponentArg::Empty => Component::Empty,
        ComponentArg::All => Component::All,
    };
    let g = crystal_graph(cli.ring()?, max_degree, component)?;
    match cli.format() {
        Format::Json => print_json(&g.to_json()),
        Format::Dot => print!("{}", g.to_dot()),
        _ => {
            for (d, c) in g.counts_by_degree().iter().enumerate() {
                println!("degree {d}: {c} vertices");
            }
            println!("{} arrows", g.arrows.len());
        }
    }
    Ok(())
}

fn parse_degree(text: &str) -> msdual::Result<DegreeVector> {
    let bad = |t: &str| Error::InvalidInput(format!("bad degree vector {t:?}"));
    if text.contains(':') {
        let entries = text
            .split(',')
            .map(|part| {
                let (i, d) = part.split_once(':').ok_or_else(|| bad(text))?;
                Ok((i.trim().parse().map_err(|_| bad(text))?, d.trim().parse().map_err(|_| bad(text))?))
            })
            .collect::<msdual::Result<Vec<(i64, i64)>>>()?;
        Ok(DegreeVector::from_entries(entries))
    } else {
        let dense = text
            .split(',')
            .map(|d| d.trim().parse::<i64>().map_err(|_| bad(text)))
            .collect::<msdual::Result<Vec<i64>>>()?;
        Ok(DegreeVector::from_dense(&dense))
    }
}

fn canonical(cli: &Cli, dim: &str) -> Outcome {
    let ring = cli.ring()?;
    let mut d = parse_degree(dim)?;
    if ring.is_cyclic() {
        d = DegreeVector::from_entries(d.iter().map(|(i, k)| (ring.norm(i), k)).collect::<Vec<_>>());
    }
    let table = canonical_basis(ring, &d)?;
    match cli.format() {
        Format::Json => print_json(&table.to_json()),
        _ => print!("{}", table.to_table()),
    }
    Ok(())
}

fn read_input(path: &str) -> msdual::Result<String> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("cannot read {path}: {e}"));
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn act(cli: &Cli, op: ActOp, i: i64, input: Option<&str>, text: Option<&str>) -> Outcome {
    let ring = cli.ring()?;
    let u = match (input, text) {
        (Some(path), None) => {
            let raw = read_input(path)?;
            let value: Value =
                serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("bad JSON in {path}: {e}")))?;
            PBWVector::from_json(&value, ring)?
        }
        (None, Some(t)) => PBWVector::basis(&Multisegment::parse(t, ring)?),
        _ => return Err(Error::InvalidInput("give exactly one of --input or a multisegment".into()).into()),
    };
    let out = match op {
        ActOp::F => hallpbw::f_action(i, &u),
        ActOp::Eprime => hallpbw::e_prime_action(i, &u),
    };
    match cli.format() {
        Format::Json => print_json(&out.to_json()),
        _ => println!("{out}"),
    }
    Ok(())
}

fn table_json(t: &RankTable) -> Value {
    let rows: serde_json::Map<String, Value> = t.rows().iter().map(|(i, r)| (i.to_string(), json!(r))).collect();
    Value::Object(rows)
}

fn oracle(cli: &Cli, op: OracleOp, q: Option<u64>, sub: Option<&str>, quot: Option<&str>, text: &str) -> Outcome {
    let m = cli.parse_ms(text)?;
    let value = match op {
        OracleOp::HallCount => {
            let (Some(p), Some(o)) = (sub, quot) else {
                return Err(Error::InvalidInput("hall-count needs --sub and --quot".into()).into());
            };
            let (p, o) = (cli.parse_ms(p)?, cli.parse_ms(o)?);
            match q {
                Some(q) => {
                    let count = quiverrep::count_submodules(&m, &p, &o, q)?;
                    json!({"module": m.to_string(), "sub": p.to_string(), "quot": o.to_string(), "q": q, "count": count})
                }
                None => {
                    let polys = hallpbw::hall_polynomials(&m, &p.degree())?;
                    let poly = polys.get(&(p.clone(), o.clone())).cloned().unwrap_or_default();
                    json!({"module": m.to_string(), "sub": p.to_string(), "quot": o.to_string(), "polynomial": poly})
                }
            }
        }
        OracleOp::AutCount => {
            let q = q.ok_or_else(|| Error::InvalidInput("aut-count needs --q".into()))?;
            let brute = quiverrep::brute_force_aut_count(&m, q)?;
            let formula = hallpbw::aut_order(&m, q);
            json!({"module": m.to_string(), "q": q, "count": brute.to_string(), "formula": formula.to_string(), "agree": brute == formula})
        }
        OracleOp::GeomDual => {
            let r = quiverrep::generic_commutant_report(&m, cli.seed)?;
            json!({
                "input": m.to_string(),
                "dual": r.dual.to_string(),
                "rank_table": table_json(&r.table),
                "commutant_dim": r.commutant_dim,
                "samples": r.samples.iter().map(table_json).collect::<Vec<_>>(),
            })
        }
    };
    match cli.format() {
        Format::Json => print_json(&value),
        _ => match op {
            OracleOp::HallCount => match value.get("count") {
                Some(c) => println!("{c}"),
                None => println!("{}", value["polynomial"]),
            },
            OracleOp::AutCount => println!("{} (formula {})", value["count"].as_str().unwrap_or(""), value["formula"].as_str().unwrap_or("")),
            OracleOp::GeomDual => println!("{}", value["dual"].as_str().unwrap_or("")),
        },
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str) -> msdual::Result<Vec<T>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::InvalidInput(format!("bad list {text:?}"))))
        .collect()
}

fn label(cli: &Cli, mu: Option<&str>, a: Option<&str>, partition: Option<&str>, from: Option<&str>) -> Outcome {
    let ring = cli.ring()?;
    let (m, lab) = match (mu, a, partition, from) {
        (Some(mu), Some(a), None, None) => {
            let lab = Label::new(parse_list(mu)?, parse_list(a)?)?;
            (Multisegment::from_label(&lab, ring), lab)
        }
        (None, None, Some(p), None) => {
            let lambda: Partition = p.parse()?;
            let m = partition_to_multisegment(&lambda, ring);
            let lab = m.to_label();
            (m, lab)
        }
        (None, None, None, Some(t)) => {
            let m = Multisegment::parse(t, ring)?;
            let lab = m.to_label();
            (m, lab)
        }
        _ => return Err(Error::InvalidInput("give --mu with --a, or --partition, or --from".into()).into()),
    };
    let partition = multisegment_to_partition(&m);
    match cli.format() {
        Format::Json => print_json(&json!({
            "multisegment": m.to_string(),
            "mu": lab.mu,
            "a": lab.a,
            "partition": partition.map(|p| p.to_string()),
        })),
        _ => {
            println!("{m}");
            let mu: Vec<String> = lab.mu.iter().map(|x| x.to_string()).collect();
            let a: Vec<String> = lab.a.iter().map(|x| x.to_string()).collect();
            println!("mu = ({}) a = ({})", mu.join(","), a.join(","));
            if let Some(p) = partition {
                println!("partition {p}");
            }
        }
    }
    Ok(())
}

fn run_verify(cli: &Cli, suite: &str, max_degree: Option<usize>, max_dim: Option<usize>, n: Option<u32>, quick: bool) -> Outcome {
    let mut bounds = if quick { Bounds::quick() } else { Bounds::full() };
    bounds.seed = cli.seed;
    if cli.ring.is_some() {
        bounds = bounds.only_ring(cli.ring()?);
    }
    if let Some(n) = n {
        bounds = bounds.only_ring(VertexRing::cyclic(n)?);
    }
    if let Some(d) = max_degree {
        bounds = bounds.cap_degree(d);
    }
    if let Some(d) = max_dim {
        bounds.max_dim = d;
    }
    let report = verify::run_suite(suite, &bounds)?;
    match cli.format() {
        Format::Json => print_json(&report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
