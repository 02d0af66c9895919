//! Command-line front end: text formats, report rendering and the
//! `torsionlab` subcommands.

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use torsionlab_core::catcore::{gen_mesh_window, gen_stable_tube, Category, CategoryPresentation};
use torsionlab_core::exactlin::Field;
use torsionlab_core::ideals::{enumerate_right_ideals, is_dense, two_sided_from_objects, DenseMode};
use torsionlab_core::modfun::{enumerate_universe, Module, Universe};
use torsionlab_core::topo::{verify_topology, Check, TopoWitness, TopologyReport};
use torsionlab_core::torsion::{
    check_axioms, closure_report, cogenerator_check, dense_filter, enumerate_filters, roundtrip_filter,
    sigma_ideal_check, sigma_member, torsion_witness, vanishing_filter, AxiomCounterexample, ClosureCheck,
    FilterFamily, ModuleClassSpec, SigmaVerdict, Verdict as AxiomVerdict,
};
use torsionlab_core::{Error, Limits};

use format::{
    parse_category, parse_filters, parse_ideal_inline, parse_modules, parse_morphism_inline, serialize_category,
    serialize_filter, serialize_ideal, serialize_module, write_ideal_inline, write_morphism, ParseError,
};
pub use report::{Format, Record, Report, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "torsionlab",
    version,
    about = "Linear filters, torsion classes and their topologies"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest enumeration allowed; overrides TORSIONLAB_CEILING.
    #[arg(long, global = true)]
    pub ceiling: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile or print a category file.
    #[command(subcommand)]
    Cat(CatCommand),
    /// Emit generated example categories.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Right ideals and density.
    #[command(subcommand)]
    Ideals(IdealsCommand),
    /// Filter axioms and the class correspondence.
    #[command(subcommand)]
    Filter(FilterCommand),
    /// Torsion classes over a module universe.
    #[command(subcommand)]
    Torsion(TorsionCommand),
    /// Topologies on hom-spaces.
    #[command(subcommand)]
    Topo(TopoCommand),
    /// Modules up to isomorphism.
    #[command(subcommand)]
    Universe(UniverseCommand),
}

#[derive(Debug, Args)]
pub struct CatArg {
    #[arg(long = "cat")]
    pub cat: PathBuf,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[command(flatten)]
    pub cat: CatArg,
    #[arg(long)]
    pub filter: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundArg {
    #[arg(long = "dim-bound", default_value_t = 2)]
    pub dim_bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum CatCommand {
    /// Compile and check the category laws.
    Compile(CatArg),
    /// Print the canonical file and the Hom dimensions.
    Show(CatArg),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// A rectangle of the mesh category of ZA_inf.
    Mesh {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value = "GF(2)")]
        field: String,
    },
    /// A stable tube cut at a quasi-length.
    Tube {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "GF(2)")]
        field: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealsCommand {
    /// Every right ideal into an object.
    Enumerate {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        object: String,
    },
    /// Density of every right ideal, or of one given inline.
    Dense {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        object: Option<String>,
        /// An ideal written `<gen; gen>@object`.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long = "strict-dense")]
        strict_dense: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FilterCommand {
    /// Axioms T1 to T4.
    Check(FilterArgs),
    /// Filter to class and back, for one filter or every linear one.
    Roundtrip {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        filter: Option<PathBuf>,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// The filter of dense ideals.
    DenseFilter {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long = "strict-dense")]
        strict_dense: bool,
    },
    /// The filter of the modules vanishing at the given objects.
    Vanishing {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TorsionCommand {
    /// Whether each module of a file is torsion.
    Member {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        module: PathBuf,
    },
    /// Closure of the induced class over a universe.
    Closure {
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Sub-generation by the first module of `--generator`, or the
    /// annihilator criterion for the ideal through `--objects`.
    Sigma {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        generator: Option<PathBuf>,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Injectivity of a module and whether it cogenerates the torsion-free
    /// side: `Hom(M,E) = 0` exactly on torsion modules.
    Cogenerator {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum TopoCommand {
    /// Open sets, continuity of addition and composition.
    Verify {
        #[command(flatten)]
        filter: FilterArgs,
        /// `A,B,C`; every triple when absent.
        #[arg(long, value_delimiter = ',')]
        triple: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum UniverseCommand {
    /// Isomorphism classes of modules with every component of dimension at most the bound.
    Enumerate {
        #[command(flatten)]
        cat: CatArg,
        #[command(flatten)]
        bound: BoundArg,
        /// Print every module.
        #[arg(long)]
        list: bool,
    },
}

/// Everything that stops a command before it produces a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CeilingExceeded { .. }) => 3,
            CliError::Core(Error::LinAlg(torsionlab_core::exactlin::LinAlgError::TooLarge)) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Files loaded for one command, each checked on load.
pub struct Workspace {
    pub presentation: CategoryPresentation,
    pub category: Arc<Category>,
    pub limits: Limits,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_err(path: &Path) -> impl FnOnce(ParseError) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.display().to_string(),
        source,
    }
}

impl Workspace {
    pub fn load(cat: &Path, limits: Limits) -> CliResult<Workspace> {
        let presentation = parse_category(&read(cat)?).map_err(parse_err(cat))?;
        let category = Arc::new(torsionlab_core::catcore::compile_quiver_with(&presentation, limits)?);
        Ok(Workspace {
            presentation,
            category,
            limits,
        })
    }

    pub fn filters(&self, path: &Path) -> CliResult<Vec<(String, FilterFamily)>> {
        parse_filters(&read(path)?, &self.category).map_err(parse_err(path))
    }

    pub fn filter(&self, path: &Path) -> CliResult<(String, FilterFamily)> {
        Ok(self.filters(path)?.remove(0))
    }

    pub fn modules(&self, path: &Path) -> CliResult<Vec<(String, Module)>> {
        let mods = parse_modules(&read(path)?, &self.category).map_err(parse_err(path))?;
        for (name, m) in &mods {
            let report = m.check_functoriality();
            if !report.is_empty() {
                return Err(CliError::Usage(format!(
                    "{}: module `{name}` is not a functor: {}",
                    path.display(),
                    report.describe(&self.category).join("; ")
                )));
            }
        }
        Ok(mods)
    }

    pub fn object(&self, name: &str) -> CliResult<usize> {
        Ok(self.category.object_index(name.trim())?)
    }

    pub fn universe(&self, bound: usize) -> CliResult<Universe> {
        Ok(enumerate_universe(&self.category, bound, self.limits)?)
    }
}

fn parse_field(s: &str) -> CliResult<Field> {
    s.parse()
        .map_err(|e: torsionlab_core::exactlin::LinAlgError| CliError::Usage(e.to_string()))
}

/// Renders a T3/T4 counterexample so that [`replay_axiom_witness`] can
/// rebuild it.
pub fn write_axiom_witness(cat: &Category, cx: &AxiomCounterexample) -> String {
    match cx {
        AxiomCounterexample::T3 { ideal, h, residual } => format!(
            "T3 ideal={} h={} residual={}",
            write_ideal_inline(cat, ideal),
            write_morphism(cat, h),
            write_ideal_inline(cat, residual)
        ),
        AxiomCounterexample::T4 { ideal } => format!("T4 ideal={}", write_ideal_inline(cat, ideal)),
    }
}

/// Re-derives a counterexample printed by `filter check`.
pub fn replay_axiom_witness(cat: &Category, f: &FilterFamily, witness: &str) -> Result<bool, CliError> {
    let field = |key: &str| -> CliResult<&str> {
        witness
            .split_whitespace()
            .find_map(|w| w.strip_prefix(key))
            .ok_or_else(|| CliError::Usage(format!("witness lacks `{key}`")))
    };
    let bad = |e: ParseError| CliError::Usage(format!("witness: {e}"));
    let cx = if witness.starts_with("T3") {
        AxiomCounterexample::T3 {
            ideal: parse_ideal_inline(cat, field("ideal=")?).map_err(bad)?,
            h: parse_morphism_inline(cat, field("h=")?).map_err(bad)?,
            residual: parse_ideal_inline(cat, field("residual=")?).map_err(bad)?,
        }
    } else if witness.starts_with("T4") {
        AxiomCounterexample::T4 {
            ideal: parse_ideal_inline(cat, field("ideal=")?).map_err(bad)?,
        }
    } else {
        return Err(CliError::Usage("not an axiom witness".into()));
    };
    Ok(cx.recheck(cat, f)?)
}

fn axiom_records(report: &mut Report, cat: &Category, name: &str, axioms: &torsionlab_core::torsion::AxiomReport) {
    for (label, v) in [
        ("T1", &axioms.t1),
        ("T2", &axioms.t2),
        ("T3", &axioms.t3),
        ("T4", &axioms.t4),
    ] {
        match v {
            AxiomVerdict::Pass => report.pass(label, name),
            AxiomVerdict::Fail(cx) => report.fail(label, name, write_axiom_witness(cat, cx)),
            AxiomVerdict::NotChecked(why) => report.push(label, name, Verdict::NotChecked, Some(why.clone())),
        }
    }
}

fn closure_records(report: &mut Report, name: &str, r: &torsionlab_core::torsion::ClosureReport) {
    let rows: [(&str, &ClosureCheck); 4] = [
        ("subobjects", &r.subobjects),
        ("quotients", &r.quotients),
        ("coproducts", &r.coproducts),
        ("extensions", &r.extensions),
    ];
    for (label, c) in rows {
        report.verdict(label, name, c.passed(), || {
            format!("{:?}", c.failure.as_ref().expect("failed"))
        });
    }
}

fn topo_witness(cat: &Category, w: &TopoWitness) -> String {
    match w {
        TopoWitness::Composition { f, g, f2, g2 } => format!(
            "f={} g={} f2={} g2={}",
            write_morphism(cat, f),
            write_morphism(cat, g),
            write_morphism(cat, f2),
            write_morphism(cat, g2)
        ),
        other => format!("{other:?}"),
    }
}

fn topo_records(report: &mut Report, cat: &Category, r: &TopologyReport) {
    let obj = format!(
        "({},{},{})",
        cat.object_name(r.a),
        cat.object_name(r.b),
        cat.object_name(r.c)
    );
    for (label, c) in [
        ("open-sets", &r.open_sets),
        ("addition", &r.addition),
        ("composition", &r.composition),
        ("translation", &r.translation),
    ] {
        match c {
            Check::Pass => report.pass(label, obj.clone()),
            Check::Fail(w) => report.fail(label, obj.clone(), topo_witness(cat, w)),
            // the gate only skips translation, which is not a verdict on its own
            Check::NotChecked(why) => report.info(label, obj.clone(), format!("{label} {obj}: skipped ({why})")),
        }
    }
    if r.basis_level {
        report.info("basis-level", obj.clone(), format!("{obj}: certified on bases only"));
    }
}

fn run_command(cli: &Cli, limits: Limits) -> CliResult<Report> {
    let mut report = Report::default();
    match &cli.command {
        Command::Cat(CatCommand::Compile(c)) => {
            let ws = Workspace::load(&c.cat, limits)?;
            let cat = &ws.category;
            let violations = cat.verify_laws();
            report.verdict("laws", cat.name(), violations.is_empty(), || {
                format!("{:?}", violations[0])
            });
            report.info(
                "hom",
                cat.name(),
                format!("total Hom dimension {}", cat.total_hom_dim()),
            );
        }
        Command::Cat(CatCommand::Show(c)) => {
            let ws = Workspace::load(&c.cat, limits)?;
            let cat = &ws.category;
            let mut text = serialize_category(&ws.presentation);
            text += "# Hom dimensions, rows are sources\n";
            for a in 0..cat.num_objects() {
                let row: Vec<String> = (0..cat.num_objects()).map(|b| cat.hom_dim(a, b).to_string()).collect();
                text += &format!("# {}: {}\n", cat.object_name(a), row.join(" "));
            }
            report.info("show", cat.name(), text);
        }
        Command::Gen(GenCommand::Mesh { n, window, field }) => {
            let g = gen_mesh_window(*n, *window, parse_field(field)?)?;
            report.info(
                "gen",
                g.presentation.name.clone(),
                format!("# {}\n{}", g.note, serialize_category(&g.presentation)),
            );
        }
        Command::Gen(GenCommand::Tube { rank, depth, field }) => {
            let g = gen_stable_tube(*rank, *depth, parse_field(field)?)?;
            report.info(
                "gen",
                g.presentation.name.clone(),
                format!("# {}\n{}", g.note, serialize_category(&g.presentation)),
            );
        }
        Command::Ideals(IdealsCommand::Enumerate { cat, object }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let c = ws.object(object)?;
            let ideals = enumerate_right_ideals(&ws.category, c, limits)?;
            for (k, i) in ideals.iter().enumerate() {
                report.info(
                    "ideal",
                    format!("I{k}"),
                    serialize_ideal(&format!("I{k}"), &ws.category, i),
                );
            }
            report.info(
                "count",
                object.clone(),
                format!("# {} right ideals into {object}", ideals.len()),
            );
        }
        Command::Ideals(IdealsCommand::Dense {
            cat,
            object,
            ideal,
            strict_dense,
        }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let mode = if *strict_dense {
                DenseMode::Strict
            } else {
                DenseMode::Literal
            };
            let targets = match ideal {
                Some(s) => {
                    vec![parse_ideal_inline(&ws.category, s).map_err(|e| CliError::Usage(format!("--ideal: {e}")))?]
                }
                None => {
                    let objs: Vec<usize> = match object {
                        Some(o) => vec![ws.object(o)?],
                        None => (0..ws.category.num_objects()).collect(),
                    };
                    let mut all = Vec::new();
                    for c in objs {
                        all.extend(enumerate_right_ideals(&ws.category, c, limits)?);
                    }
                    all
                }
            };
            for i in &targets {
                let d = is_dense(&ws.category, i, mode)?;
                let name = write_ideal_inline(&ws.category, i);
                let witnesses: Vec<String> = d
                    .witnesses
                    .iter()
                    .map(|w| {
                        format!(
                            "g={} h={}",
                            write_morphism(&ws.category, &w.g),
                            write_morphism(&ws.category, &w.h)
                        )
                    })
                    .collect();
                if d.dense {
                    report.pass("dense", name.clone());
                    if ideal.is_some() {
                        report.info("witnesses", name, witnesses.join("\n"));
                    }
                } else if ideal.is_some() {
                    let g = d.failure.as_ref().expect("not dense");
                    report.fail("dense", name, format!("g={}", write_morphism(&ws.category, g)));
                } else {
                    report.info("dense", name.clone(), format!("dense {name}: no"));
                }
            }
        }
        Command::Filter(FilterCommand::Check(a)) => {
            let ws = Workspace::load(&a.cat.cat, limits)?;
            for (name, f) in ws.filters(&a.filter)? {
                let axioms = check_axioms(&ws.category, &f, limits)?;
                axiom_records(&mut report, &ws.category, &name, &axioms);
            }
        }
        Command::Filter(FilterCommand::Roundtrip { cat, filter, bound }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let universe = ws.universe(bound.dim_bound)?;
            let filters: Vec<(String, FilterFamily)> = match filter {
                Some(p) => ws.filters(p)?,
                None => {
                    let mut linear = Vec::new();
                    for (k, f) in enumerate_filters(&ws.category, limits)?.into_iter().enumerate() {
                        if check_axioms(&ws.category, &f, limits)?.is_linear() {
                            linear.push((format!("F{k}"), f));
                        }
                    }
                    linear
                }
            };
            for (name, f) in filters {
                let r = roundtrip_filter(&universe, &f)?;
                report.verdict("roundtrip", name, r.exact(), || {
                    if let Some(e) = &r.error {
                        return e.clone();
                    }
                    let ideals: Vec<String> = r
                        .ideal_mismatches
                        .iter()
                        .map(|i| write_ideal_inline(&ws.category, i))
                        .collect();
                    format!("ideals {} modules {:?}", ideals.join(" "), r.class_mismatches)
                });
            }
        }
        Command::Filter(FilterCommand::DenseFilter { cat, strict_dense }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let mode = if *strict_dense {
                DenseMode::Strict
            } else {
                DenseMode::Literal
            };
            let r = dense_filter(&ws.category, mode, limits)?;
            report.info("filter", "dense", serialize_filter("dense", &ws.category, &r.family));
            axiom_records(&mut report, &ws.category, "dense", &r.axioms);
            report.verdict("principal", "dense", r.matches_family, || {
                "the dense ideals are not the ideals above their meet".into()
            });
        }
        Command::Filter(FilterCommand::Vanishing { cat, objects }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let objs = objects.iter().map(|o| ws.object(o)).collect::<CliResult<Vec<_>>>()?;
            let name = format!("vanishing-{}", objects.join("-"));
            let f = vanishing_filter(&ws.category, &objs)?;
            report.info("filter", name.clone(), serialize_filter(&name, &ws.category, &f));
            axiom_records(
                &mut report,
                &ws.category,
                &name,
                &check_axioms(&ws.category, &f, limits)?,
            );
        }
        Command::Torsion(TorsionCommand::Member { filter, module }) => {
            let ws = Workspace::load(&filter.cat.cat, limits)?;
            let (_, f) = ws.filter(&filter.filter)?;
            for (name, m) in ws.modules(module)? {
                let w = torsion_witness(&f, &m)?;
                report.verdict("torsion", name, w.is_none(), || {
                    let x = w.as_ref().expect("witness");
                    let v: Vec<String> = x.vector.iter().map(ToString::to_string).collect();
                    format!("element [{}] at {}", v.join(", "), ws.category.object_name(x.object))
                });
            }
        }
        Command::Torsion(TorsionCommand::Closure { filter, bound }) => {
            let ws = Workspace::load(&filter.cat.cat, limits)?;
            let universe = ws.universe(bound.dim_bound)?;
            for (name, f) in ws.filters(&filter.filter)? {
                let r = closure_report(&universe, &ModuleClassSpec::FilterInduced(f))?;
                closure_records(&mut report, &name, &r);
            }
        }
        Command::Torsion(TorsionCommand::Sigma {
            cat,
            generator,
            module,
            objects,
            bound,
        }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            if !objects.is_empty() {
                let objs = objects.iter().map(|o| ws.object(o)).collect::<CliResult<Vec<_>>>()?;
                let ideal = two_sided_from_objects(&ws.category, &objs)?;
                let universe = ws.universe(bound.dim_bound)?;
                let r = sigma_ideal_check(&ideal, &universe)?;
                let name = format!("through-{}", objects.join("-"));
                report.verdict("sigma-ideal", name.clone(), r.discrepancies.is_empty(), || {
                    format!("universe members {:?}", r.discrepancies)
                });
                if !r.exhausted.is_empty() {
                    report.push(
                        "sigma-ideal",
                        name,
                        Verdict::NotChecked,
                        Some(format!("{:?}", r.exhausted)),
                    );
                }
            } else {
                let (gen, module) = match (generator, module) {
                    (Some(g), Some(m)) => (g, m),
                    _ => {
                        return Err(CliError::Usage(
                            "sigma needs --generator and --module, or --objects".into(),
                        ))
                    }
                };
                let (_, u) = ws.modules(gen)?.remove(0);
                for (name, n) in ws.modules(module)? {
                    match sigma_member(&u, &n, limits)? {
                        SigmaVerdict::Member { copies, .. } => {
                            report.pass("sigma", name.clone());
                            let text = format!("{name} embeds in a quotient of U^{copies}");
                            report.info("embedding", name, text);
                        }
                        SigmaVerdict::NonMember { killer } => report.fail(
                            "sigma",
                            name,
                            format!("killer={}", write_morphism(&ws.category, &killer)),
                        ),
                        SigmaVerdict::Exhausted(why) => report.push("sigma", name, Verdict::NotChecked, Some(why)),
                    }
                }
            }
        }
        Command::Torsion(TorsionCommand::Cogenerator { filter, module, bound }) => {
            let ws = Workspace::load(&filter.cat.cat, limits)?;
            let (_, f) = ws.filter(&filter.filter)?;
            let universe = ws.universe(bound.dim_bound)?;
            for (name, e) in ws.modules(module)? {
                let r = cogenerator_check(&e, &f, &universe)?;
                report.verdict("injective", name.clone(), r.injective, || "restriction not onto".into());
                report.verdict("cogenerates", name, r.holds(), || format!("{:?}", r.discrepancies));
            }
        }
        Command::Topo(TopoCommand::Verify { filter, triple }) => {
            let ws = Workspace::load(&filter.cat.cat, limits)?;
            let n = ws.category.num_objects();
            let triples: Vec<(usize, usize, usize)> = match triple.len() {
                0 => (0..n)
                    .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                    .collect(),
                3 => vec![(ws.object(&triple[0])?, ws.object(&triple[1])?, ws.object(&triple[2])?)],
                _ => return Err(CliError::Usage("--triple takes A,B,C".into())),
            };
            for (_, f) in ws.filters(&filter.filter)? {
                for &t in &triples {
                    topo_records(
                        &mut report,
                        &ws.category,
                        &verify_topology(&ws.category, &f, t, limits)?,
                    );
                }
            }
        }
        Command::Universe(UniverseCommand::Enumerate { cat, bound, list }) => {
            let ws = Workspace::load(&cat.cat, limits)?;
            let universe = ws.universe(bound.dim_bound)?;
            if *list {
                for (k, m) in universe.iter().enumerate() {
                    report.info("module", format!("M{k}"), serialize_module(&format!("M{k}"), m));
                }
            }
            report.info(
                "count",
                ws.category.name(),
                format!(
                    "# {} modules with every dimension at most {}",
                    universe.len(),
                    bound.dim_bound
                ),
            );
        }
    }
    Ok(report)
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code with everything meant for stdout and stderr.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (
                code,
                if code == 0 { e.to_string() } else { String::new() },
                if code == 0 { String::new() } else { e.to_string() },
            );
        }
    };
    let mut limits = Limits::from_env();
    if let Some(c) = cli.ceiling {
        limits.ceiling = c;
    }
    match run_command(&cli, limits) {
        Ok(report) => (report.exit_code(), report.render(cli.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
