//! The `gyrolab` command line.
//!
//! ```text
//! gyrolab <verify|decompose|topo|witness|cover> [input]
//!         [--samples N] [--seed S] [--tolerance T] [--enumeration i0,i1,...]
//!         [--gyro MODEL] [--topology TOPO] [--subset SET] [--base SET]... [--json]
//! ```
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (a witness is
//! printed), 2 on usage or input errors.

use std::path::Path;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use gyrolab::models::{
    load_k16, nonassoc_witness, product, EinsteinBall, FiniteGyrogroup, MobiusDisk, Product,
};
use gyrolab::sub::{canonical_decomposition, covering_number, verify_decomposition};
use gyrolab::topo::{classify_continuity, disjoint_translate_cover, property_report};
use gyrolab::{
    check_axioms, check_identities, is_group, FiniteTopology, GyroError, Gyrogroup, Mode, Subset,
    TopoGyroModel, VerificationReport, DEFAULT_TOLERANCE,
};

/// Sample count for continuous carriers when `--samples` is absent.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Gyrogroup axioms, derived identities and an associativity scan.
    Verify,
    /// Canonical decomposition of a finite gyrogroup and its checks.
    Decompose,
    /// Point-set properties of a finite topology, with continuity when paired
    /// with `--gyro`.
    Topo,
    /// Search for a non-associative triple.
    Witness,
    /// Minimum cover `A ⊕ U = G` of a finite gyrogroup by translates of
    /// `--subset`.
    Cover,
}

#[derive(Debug, Parser)]
#[command(name = "gyrolab", version, about = "Gyrogroup and finite topology verification")]
pub struct Args {
    pub command: Command,

    /// Model (`mobius`, `einstein`, `einstein:<c>`, `z<n>`, `k16`,
    /// `product:<m>,<m>,...` or a `.gyro` file) or, for `topo`, a topology
    /// (`sierpinski`, `discrete<n>`, `indiscrete<n>` or a `.topo` file).
    pub input: Option<String>,

    #[arg(long)]
    pub samples: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long)]
    pub tolerance: Option<f64>,

    #[arg(long, value_delimiter = ',')]
    pub enumeration: Option<Vec<usize>>,

    /// Gyrogroup paired with the topology in `topo`.
    #[arg(long)]
    pub gyro: Option<String>,

    /// Topology used by `cover` for the disjoint-translate construction.
    #[arg(long)]
    pub topology: Option<String>,

    /// Subset literal such as `0,2,5` or `0x25`.
    #[arg(long)]
    pub subset: Option<String>,

    /// Neighbourhood base member at 0 (repeatable).
    #[arg(long)]
    pub base: Vec<String>,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Gyro(GyroError),
}

impl From<GyroError> for CliError {
    fn from(e: GyroError) -> Self {
        CliError::Gyro(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Gyro(GyroError::MissingSeed) => {
                write!(f, "sampled mode requires an explicit --seed")
            }
            CliError::Gyro(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Output of one command: the JSON document, its text rendering and the
/// verdict that decides the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub overall: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.overall {
            0
        } else {
            1
        }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub enum Model {
    Finite(FiniteGyrogroup),
    Mobius(MobiusDisk),
    Einstein(EinsteinBall),
    MobiusPower(Product<MobiusDisk>),
    EinsteinPower(Product<EinsteinBall>),
}

impl Model {
    pub fn finite(self, name: &str) -> CliResult<FiniteGyrogroup> {
        match self {
            Model::Finite(g) => Ok(g),
            _ => Err(CliError::Usage(format!("{name} is not a finite gyrogroup"))),
        }
    }
}

fn tolerance(args_tol: Option<f64>) -> CliResult<f64> {
    match args_tol {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            Err(CliError::Usage(format!("tolerance must be positive, got {t}")))
        }
        Some(t) => Ok(t),
        None => Ok(DEFAULT_TOLERANCE),
    }
}

fn parse_einstein(name: &str, tol: f64) -> CliResult<Option<EinsteinBall>> {
    if name == "einstein" {
        return Ok(Some(EinsteinBall::new(1.0)?.with_tolerance(tol)));
    }
    match name.strip_prefix("einstein:") {
        Some(c) => {
            let c: f64 = c
                .parse()
                .map_err(|_| CliError::Usage(format!("bad speed bound in {name:?}")))?;
            Ok(Some(EinsteinBall::new(c)?.with_tolerance(tol)))
        }
        None => Ok(None),
    }
}

fn finite_by_name(name: &str) -> CliResult<Option<FiniteGyrogroup>> {
    if name == "k16" {
        return load_k16()?.map(Some).ok_or_else(|| {
            CliError::Usage(format!(
                "K16 data file not found at {}",
                gyrolab::models::k16_path().display()
            ))
        });
    }
    if let Some(n) = name.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(Some(FiniteGyrogroup::cyclic(n)?));
    }
    Ok(None)
}

/// Resolves a builtin model name or a `.gyro` path.
pub fn resolve_model(name: &str, tol: f64) -> CliResult<Model> {
    if name == "mobius" {
        return Ok(Model::Mobius(MobiusDisk::with_tolerance(tol)));
    }
    if let Some(e) = parse_einstein(name, tol)? {
        return Ok(Model::Einstein(e));
    }
    if let Some(g) = finite_by_name(name)? {
        return Ok(Model::Finite(g));
    }
    if let Some(spec) = name.strip_prefix("product:") {
        let parts: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if parts.is_empty() {
            return Err(GyroError::EmptyProduct.into());
        }
        if parts.iter().all(|p| *p == "mobius") {
            let fs = parts.iter().map(|_| MobiusDisk::with_tolerance(tol)).collect();
            return Ok(Model::MobiusPower(product(fs)?));
        }
        if let Some(Some(first)) = parts.first().map(|p| parse_einstein(p, tol).ok().flatten()) {
            let fs = parts
                .iter()
                .map(|p| parse_einstein(p, tol)?.ok_or_else(|| mixed(name)))
                .collect::<CliResult<Vec<_>>>()?;
            if fs.iter().any(|f| f.c != first.c) {
                return Err(CliError::Usage(format!(
                    "{name}: Einstein factors must share one speed bound"
                )));
            }
            return Ok(Model::EinsteinPower(product(fs)?));
        }
        let fs = parts
            .iter()
            .map(|p| match resolve_model(p, tol)? {
                Model::Finite(g) => Ok(g),
                _ => Err(mixed(name)),
            })
            .collect::<CliResult<Vec<_>>>()?;
        return Ok(Model::Finite(FiniteGyrogroup::product(&fs)?));
    }
    let path = Path::new(name);
    if path.exists() {
        return Ok(Model::Finite(FiniteGyrogroup::load(path)?));
    }
    Err(CliError::Usage(format!(
        "unknown model {name:?} (expected mobius, einstein, z<n>, k16, product:<...> or a .gyro file)"
    )))
}

fn mixed(name: &str) -> CliError {
    CliError::Usage(format!(
        "{name}: products must have factors of one kind (all finite, all mobius or all einstein)"
    ))
}

/// Resolves a builtin topology name or a `.topo` path. A `.topo` suffix on a
/// builtin name is accepted when no such file exists.
pub fn resolve_topology(name: &str) -> CliResult<FiniteTopology> {
    let path = Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GyroError::Io(format!("{name}: {e}")))?;
        return Ok(FiniteTopology::parse(&text)?);
    }
    let stem = name.strip_suffix(".topo").unwrap_or(name);
    if stem == "sierpinski" {
        return Ok(FiniteTopology::sierpinski());
    }
    let sized = |prefix: &str| stem.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok());
    if let Some(n) = sized("indiscrete") {
        return Ok(FiniteTopology::indiscrete(n)?);
    }
    if let Some(n) = sized("discrete") {
        return Ok(FiniteTopology::discrete(n)?);
    }
    Err(CliError::Usage(format!(
        "unknown topology {name:?} (expected sierpinski, discrete<n>, indiscrete<n> or a .topo file)"
    )))
}

fn input(args: &Args) -> CliResult<&str> {
    args.input
        .as_deref()
        .ok_or_else(|| CliError::Usage("missing input".into()))
}

fn mode_for(args: &Args, enumerable: bool) -> Mode {
    match (args.samples, enumerable) {
        (None, true) => Mode::Exhaustive,
        (count, _) => Mode::Sampled {
            count: count.unwrap_or(DEFAULT_SAMPLES),
            seed: args.seed,
        },
    }
}

fn mode_json(mode: Mode) -> Value {
    match mode {
        Mode::Exhaustive => json!("exhaustive"),
        Mode::Sampled { count, seed } => json!({ "sampled": { "count": count, "seed": seed } }),
    }
}

fn verify_model<G: Gyrogroup>(g: &G, mode: Mode) -> CliResult<(VerificationReport, VerificationReport, Value)> {
    let axioms = check_axioms(g, mode)?;
    let identities = check_identities(g, mode)?;
    let (assoc, w) = is_group(g, mode)?;
    let group = match w {
        Some(t) => json!({ "holds": assoc, "witness": t }),
        None => json!({ "holds": assoc }),
    };
    Ok((axioms, identities, group))
}

fn cmd_verify(args: &Args) -> CliResult<Outcome> {
    let name = input(args)?;
    let tol = tolerance(args.tolerance)?;
    let model = resolve_model(name, tol)?;
    let enumerable = matches!(model, Model::Finite(_));
    let mode = mode_for(args, enumerable);
    let (axioms, identities, group) = match &model {
        Model::Finite(g) => verify_model(g, mode)?,
        Model::Mobius(g) => verify_model(g, mode)?,
        Model::Einstein(g) => verify_model(g, mode)?,
        Model::MobiusPower(g) => verify_model(g, mode)?,
        Model::EinsteinPower(g) => verify_model(g, mode)?,
    };
    let overall = axioms.overall && identities.overall;
    let text = format!(
        "model {name}\n-- axioms\n{}-- identities\n{}-- associative: {}\noverall: {}\n",
        axioms.render_text(),
        identities.render_text(),
        group,
        if overall { "pass" } else { "fail" },
    );
    let json = json!({
        "command": "verify",
        "input": name,
        "mode": mode_json(mode),
        "axioms": axioms,
        "identities": identities,
        "group": group,
        "overall": overall,
    });
    Ok(Outcome { json, text, overall })
}

fn cmd_decompose(args: &Args) -> CliResult<Outcome> {
    let name = input(args)?;
    let g = resolve_model(name, DEFAULT_TOLERANCE)?.finite(name)?;
    let enumeration = args
        .enumeration
        .clone()
        .unwrap_or_else(|| (0..g.order()).collect());
    let dec = canonical_decomposition(&g, &enumeration)?;
    let report = verify_decomposition(&g, &dec)?;
    let blocks: Vec<String> = dec.blocks.iter().map(|b| b.to_string()).collect();
    let text = format!(
        "model {name}\nenumeration {:?}\nblocks {}\n{}",
        dec.enumeration,
        blocks.join(" "),
        report.render_text()
    );
    let overall = report.overall;
    let json = json!({
        "command": "decompose",
        "input": name,
        "decomposition": dec.to_json(),
        "report": report,
        "overall": overall,
    });
    Ok(Outcome { json, text, overall })
}

fn parse_subset(n: usize, literal: &str) -> CliResult<Subset> {
    Subset::parse(n, literal).map_err(|e| CliError::Usage(format!("bad subset {literal:?}: {e}")))
}

fn cmd_topo(args: &Args) -> CliResult<Outcome> {
    let name = input(args)?;
    let t = resolve_topology(name)?;
    let report = property_report(&t)?;
    let mut overall = report
        .properties
        .iter()
        .all(|p| p.verdict.as_bool() != Some(false));
    let mut text = format!("topology {name} ({} points)\n{}", t.size(), report.render_text());
    let mut json = json!({
        "command": "topo",
        "input": name,
        "properties": report.to_json(),
    });
    if let Some(gname) = &args.gyro {
        let g = resolve_model(gname, DEFAULT_TOLERANCE)?.finite(gname)?;
        let base = if args.base.is_empty() {
            None
        } else {
            Some(
                args.base
                    .iter()
                    .map(|b| parse_subset(g.order(), b))
                    .collect::<CliResult<Vec<_>>>()?,
            )
        };
        let model = TopoGyroModel::new(g, t, base)?;
        let c = classify_continuity(&model);
        let flags = [
            ("left", c.left.holds),
            ("right", c.right.holds),
            ("inverse", c.inverse.holds),
            ("joint", c.joint.holds),
            ("strongly", c.strongly.holds),
        ];
        overall &= flags.iter().all(|(_, h)| *h);
        text.push_str(&format!("continuity with {gname}\n"));
        let cj = serde_json::to_value(&c).expect("serializable");
        for (k, h) in flags {
            match cj[k].get("witness") {
                Some(w) => text.push_str(&format!("  {k:<9} {h}  witness {w}\n")),
                None => text.push_str(&format!("  {k:<9} {h}\n")),
            }
        }
        json["gyro"] = json!(gname);
        json["continuity"] = cj;
    }
    text.push_str(&format!("overall: {}\n", if overall { "pass" } else { "fail" }));
    json["overall"] = json!(overall);
    Ok(Outcome { json, text, overall })
}

fn witness_for<G: Gyrogroup>(g: &G, budget: usize, seed: u64) -> (Value, u64, bool) {
    let w = nonassoc_witness(g, budget, seed);
    (
        serde_json::to_value(&w.witness).expect("serializable"),
        w.tried,
        w.exhaustive,
    )
}

fn cmd_witness(args: &Args) -> CliResult<Outcome> {
    let name = input(args)?;
    let tol = tolerance(args.tolerance)?;
    let model = resolve_model(name, tol)?;
    // random triples need a seed; without one only the model's probe triples
    // are tried
    let budget = match args.seed {
        Some(_) => args.samples.unwrap_or(DEFAULT_SAMPLES),
        None => 0,
    };
    let seed = args.seed.unwrap_or(0);
    let (w, tried, exhaustive) = match &model {
        Model::Finite(g) => witness_for(g, budget, seed),
        Model::Mobius(g) => witness_for(g, budget, seed),
        Model::Einstein(g) => witness_for(g, budget, seed),
        Model::MobiusPower(g) => witness_for(g, budget, seed),
        Model::EinsteinPower(g) => witness_for(g, budget, seed),
    };
    let found = !w.is_null();
    let text = if found {
        format!("model {name}\nwitness {w} (tried {tried})\n")
    } else if exhaustive {
        format!("model {name}\nnone found (exhaustive, {tried} triples)\n")
    } else {
        format!("model {name}\nnone found (budget {budget})\n")
    };
    let json = json!({
        "command": "witness",
        "input": name,
        "witness": w,
        "tried": tried,
        "budget": budget,
        "seed": args.seed,
        "exhaustive": exhaustive,
        "overall": !found,
    });
    Ok(Outcome {
        json,
        text,
        overall: !found,
    })
}

fn cmd_cover(args: &Args) -> CliResult<Outcome> {
    let name = input(args)?;
    let g = resolve_model(name, DEFAULT_TOLERANCE)?.finite(name)?;
    let literal = args
        .subset
        .as_deref()
        .ok_or_else(|| CliError::Usage("cover needs --subset".into()))?;
    let u = parse_subset(g.order(), literal)?;
    let cert = covering_number(&g, &u)?;
    let mut overall = cert.verify(&g);
    let mut text = format!(
        "model {name}\nU = {}\nA = {} (size {}, {})\n",
        cert.u,
        cert.a,
        cert.size,
        if cert.exact { "minimum" } else { "greedy bound" }
    );
    let mut json = json!({
        "command": "cover",
        "input": name,
        "certificate": cert,
        "certificate_verified": overall,
    });
    if let Some(tname) = &args.topology {
        let t = resolve_topology(tname)?;
        let model = TopoGyroModel::new(g, t, None)?;
        let (a, report) = disjoint_translate_cover(&model, &u)?;
        overall &= report.overall;
        text.push_str(&format!("V-disjoint set {a}\n{}", report.render_text()));
        json["topology"] = json!(tname);
        json["disjoint_translates"] = json!({ "a": a, "report": report });
    } else {
        text.push_str(&format!("overall: {}\n", if overall { "pass" } else { "fail" }));
    }
    json["overall"] = json!(overall);
    Ok(Outcome { json, text, overall })
}

pub fn execute(args: &Args) -> CliResult<Outcome> {
    match args.command {
        Command::Verify => cmd_verify(args),
        Command::Decompose => cmd_decompose(args),
        Command::Topo => cmd_topo(args),
        Command::Witness => cmd_witness(args),
        Command::Cover => cmd_cover(args),
    }
}

/// Parses `argv`, runs the command and returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                (0, msg, String::new())
            } else {
                (2, String::new(), msg)
            };
        }
    };
    match execute(&args) {
        Ok(out) => (out.exit_code(), out.render(args.json), String::new()),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
