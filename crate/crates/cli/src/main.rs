use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tauwide::exceptional::{ordered_objects, signed_sequences};
use tauwide::{
    factorizations, parse_presentation, phi, run_verify, Algebra, Cache, Catalog, Field, Obj, Reducer, Summand,
    WideCategory, WideMorphism, DEFAULT_BUDGET, SUITES,
};

#[derive(Parser)]
#[command(name = "tauwide", version, about = "τ-tilting reduction and the category of wide subcategories")]
struct Cli {
    /// Ground field: Q or F<p> for a prime p; overrides the file's `field` line
    #[arg(long, global = true)]
    field: Option<String>,

    /// Maximum number of indecomposables to enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Directory for cached enumerations
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel sweeps (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra presentations
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Indecomposable modules
    Modules {
        #[command(subcommand)]
        action: ListCmd,
    },
    /// The Auslander-Reiten quiver
    ArQuiver {
        #[command(subcommand)]
        action: ExportCmd,
    },
    /// τ-rigid modules and support τ-rigid objects
    TauRigid {
        #[command(subcommand)]
        action: ListCmd,
    },
    /// Wide subcategories
    Wide {
        #[command(subcommand)]
        action: ListCmd,
    },
    /// Apply the reduction map E_U to X, or its inverse with --inverse
    Reduce {
        file: PathBuf,
        /// Support τ-rigid object, e.g. `1/2 + 3[1]`
        #[arg(long)]
        u: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        inverse: bool,
    },
    /// The category of wide subcategories
    WideCat {
        #[command(subcommand)]
        action: WideCatCmd,
    },
    /// Signed τ-exceptional sequences of the whole module category
    Sequences {
        #[command(subcommand)]
        action: SeqCmd,
    },
    /// Factorizations of a morphism into irreducibles
    Factorizations {
        file: PathBuf,
        /// JSON such as {"source": 0, "label": ["2", "1/2"]}; source defaults to the whole category
        #[arg(long)]
        morphism: String,
    },
    /// Run the theorem suites
    Verify {
        file: PathBuf,
        /// Restrict to the named suites
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum ListCmd {
    List { file: PathBuf },
}

#[derive(Subcommand)]
enum ExportCmd {
    Export { file: PathBuf },
}

#[derive(Subcommand)]
enum WideCatCmd {
    Export {
        file: PathBuf,
        #[arg(long)]
        drop_zero_object: bool,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    List {
        file: PathBuf,
        #[arg(long)]
        length: usize,
    },
    Count {
        file: PathBuf,
        #[arg(long)]
        length: usize,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Verification(Value),
    Input(anyhow::Error),
    Budget(anyhow::Error),
}

impl From<tauwide::Error> for Failure {
    fn from(e: tauwide::Error) -> Self {
        use tauwide::Error as E;
        match e {
            E::BudgetExceeded(_) | E::NotFiniteDimensional(_) | E::DecompositionFailure(_) => Failure::Budget(e.into()),
            E::CaseDispatchError(_) => Failure::Verification(json!({ "error": e.to_string() })),
            _ => Failure::Input(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<tauwide::Error>() {
            Ok(inner) => inner.into(),
            Err(e) => Failure::Input(e),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx {
    field: Option<Field>,
    budget: usize,
    cache: Option<Cache>,
    format: Format,
}

fn parse_field(s: &str) -> anyhow::Result<Field> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(Field::Rationals);
    }
    let digits = t.trim_start_matches("Fp").trim_start_matches('F').trim();
    let p: u64 = digits.parse().with_context(|| format!("unknown field `{s}`"))?;
    Ok(Field::prime(p)?)
}

impl Ctx {
    fn algebra(&self, path: &Path) -> anyhow::Result<Arc<Algebra>> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut p = parse_presentation(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(f) = self.field {
            p = p.with_field(f);
        }
        Ok(Algebra::build(p)?)
    }

    fn catalog(&self, path: &Path) -> Result<Arc<Catalog>, Failure> {
        let alg = self.algebra(path)?;
        match &self.cache {
            Some(c) => {
                let (cat, outcome) = c.load_or_build(&alg, self.budget)?;
                if outcome == tauwide::CacheOutcome::Recovered {
                    eprintln!("warning: discarded a corrupt cache entry in {}", c.dir().display());
                }
                Ok(cat)
            }
            None => Ok(Arc::new(Catalog::build(&alg, self.budget)?)),
        }
    }

    fn reducer(&self, path: &Path) -> Result<Arc<Reducer>, Failure> {
        Ok(Arc::new(Reducer::new(self.catalog(path)?)))
    }

    fn category(&self, path: &Path) -> Result<WideCategory, Failure> {
        Ok(WideCategory::build(self.reducer(path)?)?)
    }

    fn emit(&self, v: &Value, text: impl FnOnce() -> String) -> Outcome {
        match self.format {
            Format::Text => out(&format!("{}\n", text())),
            _ => out(&format!("{}\n", serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.into()))?)),
        }
    }
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn out(s: &str) -> Outcome {
    let mut h = std::io::stdout().lock();
    match h.write_all(s.as_bytes()).and_then(|_| h.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(e.into())),
        _ => Ok(()),
    }
}

fn summand_json(cat: &Catalog, s: &Summand) -> Value {
    json!({ "id": s.id, "module": cat.label(s.id), "shifted": s.shifted })
}

fn obj_json(cat: &Catalog, o: &Obj) -> Value {
    json!({ "text": o.display(cat), "summands": o.summands().iter().map(|s| summand_json(cat, s)).collect::<Vec<_>>() })
}

fn algebra_check(ctx: &Ctx, file: &Path) -> Outcome {
    let alg = ctx.algebra(file)?;
    let p = alg.presentation();
    let v = json!({
        "field": alg.field().to_string(),
        "vertices": p.vertices,
        "arrows": p.arrows.iter().map(|a| json!({ "name": a.name, "source": p.vertices[a.source], "target": p.vertices[a.target] })).collect::<Vec<_>>(),
        "relations": p.relations.len(),
        "dimension": alg.dim(),
    });
    ctx.emit(&v, || {
        format!("{} vertices, {} arrows, {} relations, dimension {}", p.vertices.len(), p.arrows.len(), p.relations.len(), alg.dim())
    })
}

fn modules_list(ctx: &Ctx, file: &Path) -> Outcome {
    let cat = ctx.catalog(file)?;
    ctx.emit(&cat.modules_json(), || {
        (0..cat.len())
            .map(|i| format!("{i}\t{}\t{:?}", cat.label(i), cat.module(i).dims()))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn ar_export(ctx: &Ctx, file: &Path) -> Outcome {
    let cat = ctx.catalog(file)?;
    match ctx.format {
        Format::Dot => {
            out(&cat.ar_dot())?;
            Ok(())
        }
        _ => ctx.emit(&cat.ar_json(), || cat.ar_dot()),
    }
}

fn tau_rigid_list(ctx: &Ctx, file: &Path) -> Outcome {
    let r = ctx.reducer(file)?;
    let cat = r.catalog();
    let whole = r.whole();
    let modules: Vec<Value> =
        whole.iter().copied().filter(|&u| r.rig(&whole, u, u)).map(|u| json!({ "id": u, "label": cat.label(u) })).collect();
    let objects = r.support_tau_rigid_objects(&whole)?;
    let v = json!({
        "tau_rigid_modules": modules,
        "support_tau_rigid_objects": objects.iter().map(|o| obj_json(cat, o)).collect::<Vec<_>>(),
    });
    ctx.emit(&v, || objects.iter().map(|o| o.display(cat)).collect::<Vec<_>>().join("\n"))
}

fn wide_list(ctx: &Ctx, file: &Path) -> Outcome {
    let c = ctx.category(file)?;
    let cat = c.reducer().catalog();
    let labels = |ids: &[usize]| ids.iter().map(|&i| cat.label(i).to_string()).collect::<Vec<_>>();
    let rows: Vec<Value> = c
        .objects()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            json!({
                "index": i,
                "key": w.key,
                "rank": w.rank,
                "members": labels(&w.key),
                "ext_projectives": labels(&w.ext_projectives),
                "generator": obj_json(cat, &w.generator),
            })
        })
        .collect();
    ctx.emit(&Value::Array(rows), || {
        c.objects()
            .iter()
            .map(|w| format!("rank {}\t{{{}}}", w.rank, labels(&w.key).join(", ")))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn reduce(ctx: &Ctx, file: &Path, u: &str, x: &str, inverse: bool) -> Outcome {
    let r = ctx.reducer(file)?;
    let cat = r.catalog();
    let whole = r.whole();
    let u = Obj::parse(u, cat)?;
    let x = Obj::parse(x, cat)?;
    let y = if inverse { r.f_map(&whole, &u, &x)? } else { r.e_map(&whole, &u, &x)? };
    let j = r.perpendicular(&whole, &u)?;
    let v = json!({
        "u": obj_json(cat, &u),
        "x": obj_json(cat, &x),
        "result": obj_json(cat, &y),
        "perpendicular": j.iter().map(|&i| cat.label(i)).collect::<Vec<_>>(),
    });
    ctx.emit(&v, || y.display(cat))
}

fn wide_cat_export(ctx: &Ctx, file: &Path, drop_zero: bool) -> Outcome {
    let c = ctx.category(file)?;
    match ctx.format {
        Format::Dot | Format::Text => {
            out(&c.to_dot(drop_zero))?;
            Ok(())
        }
        Format::Json => ctx.emit(&c.to_json(drop_zero), String::new),
    }
}

fn sequences(ctx: &Ctx, file: &Path, length: usize, list: bool) -> Outcome {
    let r = ctx.reducer(file)?;
    let cat = r.catalog();
    let whole = r.whole();
    let seqs = signed_sequences(&r, &whole, length)?;
    let ordered = ordered_objects(&r, &whole, length)?.len();
    let show = |s: &[Summand]| Obj::display_sequence(s, cat);
    if !list {
        let v = json!({ "length": length, "sequences": seqs.len(), "ordered_support_tau_rigid": ordered });
        return ctx.emit(&v, || seqs.len().to_string());
    }
    let mut rows = Vec::with_capacity(seqs.len());
    for s in &seqs {
        let image = phi(&r, &whole, s)?;
        rows.push(json!({
            "sequence": s.iter().map(|e| summand_json(cat, e)).collect::<Vec<_>>(),
            "text": show(s),
            "phi": show(&image),
        }));
    }
    ctx.emit(&Value::Array(rows), || seqs.iter().map(|s| show(s)).collect::<Vec<_>>().join("\n"))
}

fn parse_morphism(c: &WideCategory, text: &str) -> anyhow::Result<WideMorphism> {
    let v: Value = serde_json::from_str(text).context("--morphism is not valid JSON")?;
    let r = c.reducer();
    let cat = r.catalog();
    let source = match v.get("source") {
        None => c.object_index(&r.whole()).ok_or_else(|| anyhow!("whole category missing"))?,
        Some(s) => {
            let i = s.as_u64().ok_or_else(|| anyhow!("`source` must be an object index"))? as usize;
            if i >= c.objects().len() {
                bail!("object index {i} out of range");
            }
            i
        }
    };
    let label = match v.get("label") {
        Some(Value::String(s)) => Obj::parse(s, cat)?,
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for it in items {
                match it {
                    Value::String(s) => out.extend_from_slice(Obj::parse(s, cat)?.summands()),
                    Value::Object(m) => {
                        let id = match (m.get("id"), m.get("module")) {
                            (Some(id), _) => id.as_u64().ok_or_else(|| anyhow!("bad summand id"))? as usize,
                            (None, Some(Value::String(l))) => {
                                cat.id_by_label(l).ok_or_else(|| anyhow!("unknown module `{l}`"))?
                            }
                            _ => bail!("summand needs `id` or `module`"),
                        };
                        if id >= cat.len() {
                            bail!("unknown summand id {id}");
                        }
                        let shifted = m.get("shifted").and_then(Value::as_bool).unwrap_or(false);
                        out.push(Summand { shifted, id });
                    }
                    _ => bail!("label entries must be strings or objects"),
                }
            }
            Obj::new(out)
        }
        _ => bail!("`label` is required"),
    };
    Ok(c.morphism(source, label)?)
}

fn factorizations_cmd(ctx: &Ctx, file: &Path, morphism: &str) -> Outcome {
    let c = ctx.category(file)?;
    let cat = c.reducer().catalog();
    let m = parse_morphism(&c, morphism)?;
    let fs = factorizations(&c, &m)?;
    let rows: Vec<Value> = fs
        .iter()
        .map(|f| {
            json!({
                "chain": f.chain.iter().map(|g| json!({ "source": g.source, "target": g.target, "label": obj_json(cat, &g.label) })).collect::<Vec<_>>(),
                "ordering": Obj::display_sequence(&f.ordering, cat),
            })
        })
        .collect();
    let v = json!({ "source": m.source, "target": m.target, "label": obj_json(cat, &m.label), "factorizations": rows });
    ctx.emit(&v, || {
        fs.iter()
            .map(|f| f.chain.iter().rev().map(|g| format!("g[{}]", g.label.display(cat))).collect::<Vec<_>>().join(" ∘ "))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn verify(ctx: &Ctx, file: &Path, suites: &[String]) -> Outcome {
    for s in suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(Failure::Input(anyhow!("unknown suite `{s}`; expected one of {}", SUITES.join(", "))));
        }
    }
    let selected: Vec<&str> = if suites.is_empty() { SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
    let c = ctx.category(file)?;
    let report = run_verify(&c, &selected)?;
    let v = serde_json::to_value(&report).map_err(|e| Failure::Input(e.into()))?;
    ctx.emit(&v, || {
        report
            .suites
            .iter()
            .map(|s| {
                let status = if s.failure_count == 0 { "ok" } else { "FAILED" };
                format!("{:<20} {status:<6} checks={} failures={} {}ms", s.suite, s.checks, s.failure_count, s.millis)
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(Value::Null))
    }
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        field: cli.field.as_deref().map(parse_field).transpose()?,
        budget: cli.budget,
        cache: cli.cache_dir.map(Cache::new),
        format: cli.format,
    };
    match &cli.command {
        Command::Algebra { action: AlgebraCmd::Check { file } } => algebra_check(&ctx, file),
        Command::Modules { action: ListCmd::List { file } } => modules_list(&ctx, file),
        Command::ArQuiver { action: ExportCmd::Export { file } } => ar_export(&ctx, file),
        Command::TauRigid { action: ListCmd::List { file } } => tau_rigid_list(&ctx, file),
        Command::Wide { action: ListCmd::List { file } } => wide_list(&ctx, file),
        Command::Reduce { file, u, x, inverse } => reduce(&ctx, file, u, x, *inverse),
        Command::WideCat { action: WideCatCmd::Export { file, drop_zero_object } } => {
            wide_cat_export(&ctx, file, *drop_zero_object)
        }
        Command::Sequences { action: SeqCmd::List { file, length } } => sequences(&ctx, file, *length, true),
        Command::Sequences { action: SeqCmd::Count { file, length } } => sequences(&ctx, file, *length, false),
        Command::Factorizations { file, morphism } => factorizations_cmd(&ctx, file, morphism),
        Command::Verify { file, suites } => verify(&ctx, file, suites),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(v)) => {
            if !v.is_null() {
                eprintln!("error: {v}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
