//! garland: certify cohomology vanishing from link spectra, inspect walk
//! spectra, verify the cochain identities numerically, and run the random
//! presentation experiments.
//!
//! Exit codes: 0 success (certified / all checks pass), 1 the run completed
//! but the verdict is negative or a mathematical hypothesis failed on the
//! input, 2 usage or input errors.

mod json;

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use garland_core::error::Error;
use garland_core::io as gio;
use garland_core::spectral::Sided;
use garland_core::{
    asymptotic_report, certify_descent, certify_local, conclude, link_expansion_experiment,
    relator_space_count, sample_presentation_binomial, sample_presentation_density, spectrum,
    theta_of_p, verify_all, verify_identity, zuk_link, BanachClassSpec, Certificate,
    CochainSpace, CoefficientSpace, ConcludeFlags, CurveModulus, ExperimentRow,
    ExperimentSummary, GroupAction, Identity, SimplicialComplex, VerificationReport,
    WeightedGraph,
};

use json::{float_pair, Json};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "garland", version, about = "Cohomology vanishing certificates from weighted link spectra")]
struct Cli {
    /// Worker threads for parallel sections; 1 = serial, 0 = all cores
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify vanishing in degree k for a coefficient class
    Certify(CertifyArgs),
    /// Walk spectrum of a graph, a complex skeleton, or a link
    Spectra(SpectraArgs),
    /// Verify the cochain identities on random samples
    Verify(VerifyArgs),
    /// Sample triangular presentations, build links, run experiments
    Randgroup(RandgroupArgs),
    /// Closed-form asymptotic consequences at density d
    Report(ReportArgs),
    /// Certification thresholds for a coefficient class
    Thresholds(ThresholdsArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Complex file: {"top_simplices": [[v, ...], ...]}
    #[arg(long)]
    complex: PathBuf,
    /// Optional group action file: {"generators": [[image, ...], ...]}
    #[arg(long)]
    action: Option<PathBuf>,
    /// Cohomology degree to certify
    #[arg(long)]
    k: usize,
    /// hilbert | power:THETA | lp:P | path to a modulus JSON file
    #[arg(long, default_value = "hilbert")]
    class: String,
    /// local = measure (k-1)-links; descent = measure only the deepest links
    #[arg(long, default_value = "local")]
    criterion: String,
    /// one | two sided expansion for the descent criterion
    #[arg(long, default_value = "two")]
    sided: String,
    /// Assert the quotient is aspherical, lifting conclusions to the group
    #[arg(long)]
    aspherical: bool,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "complex"])))]
struct SpectraArgs {
    /// Graph file: {"edges": [[u, v, weight], ...]}
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Complex file; the 1-skeleton is profiled unless --link is given
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Comma-separated vertex labels; profile the link of that simplex
    #[arg(long, requires = "complex", value_delimiter = ',')]
    link: Option<Vec<i64>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    action: Option<PathBuf>,
    /// Cochain degree
    #[arg(long)]
    k: usize,
    /// Identity name or "all"
    #[arg(long, default_value = "all")]
    identity: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Residual tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Coefficient dimension
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Coefficient exponent p of the lp norm
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// trivial | sign representation on the coefficients
    #[arg(long, default_value = "trivial")]
    rep: String,
    /// Constant for the contraction-gate identity
    #[arg(long)]
    nowak_c: Option<f64>,
}

#[derive(Args)]
struct RandgroupArgs {
    #[command(subcommand)]
    command: RandgroupCmd,
}

#[derive(Subcommand)]
enum RandgroupCmd {
    /// Sample a presentation in the density or binomial model
    Sample(SampleArgs),
    /// Build and profile the Zuk link of a presentation
    Link(LinkArgs),
    /// Link-expansion experiment over a list of m values
    Experiment(ExperimentArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("model").required(true).args(["d", "rho"])))]
struct SampleArgs {
    /// Number of generators
    #[arg(long)]
    m: u32,
    /// Density model parameter in (0,1)
    #[arg(long)]
    d: Option<f64>,
    /// Binomial model inclusion probability in [0,1]
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Treat cyclic rotations of a word as one relator
    #[arg(long)]
    rotation_classes: bool,
    /// Also write the presentation in line format to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LinkArgs {
    /// Presentation file: one relator per line, letters a1..am, A1..Am
    #[arg(long)]
    presentation: PathBuf,
    /// Also add the edges of every inverse relator
    #[arg(long)]
    symmetrize_relators: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Comma-separated generator counts
    #[arg(long, value_delimiter = ',', required = true)]
    m_list: Vec<u32>,
    /// rho(m) = multiplier * ln(m) / (8 m^2); must exceed 1
    #[arg(long, default_value_t = 4.0)]
    multiplier: f64,
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the per-trial rows as CSV to this path
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    m: u32,
    /// Density in [1/3, 1/2)
    #[arg(long)]
    d: f64,
    /// Expansion constant C, echoed as a conditionality note
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Margin parameter in (0,2)
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Base for every logarithm; natural log when absent
    #[arg(long)]
    log_base: Option<f64>,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// hilbert | power:THETA | lp:P | path to a modulus JSON file
    #[arg(long, default_value = "hilbert")]
    class: String,
    /// Tabulate local thresholds for k = 1..=k_max
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    /// Also report the largest certifiable p for this two-sided bound
    #[arg(long)]
    lambda: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    if cli.jobs != 1 {
        let threads = cli.jobs;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    match dispatch(cli.command) {
        Ok((document, code)) => {
            println!("{document}");
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("garland: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

/// Static validation and malformed inputs exit 2; mathematical hypotheses
/// that fail on a well-formed input exit 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EigensolveFailure { .. }
        | Error::Disconnected
        | Error::DisconnectedLink { .. }
        | Error::UnreachableThreshold { .. }
        | Error::DegenerateSubspace
        | Error::NumericalCheck { .. }
        | Error::OneSidedInapplicable { .. } => 1,
        _ => 2,
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("GARLAND_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| Error::OutOfRange(format!("GARLAND_SEED must be an unsigned 64-bit integer, got {text:?}"))),
        Err(_) => Ok(0),
    }
}

fn parse_class(spec: &str) -> Result<BanachClassSpec, Error> {
    if spec == "hilbert" {
        return Ok(BanachClassSpec::hilbert());
    }
    if let Some(theta) = spec.strip_prefix("power:") {
        let theta: f64 = theta
            .parse()
            .map_err(|_| Error::OutOfRange(format!("power class needs a numeric theta, got {spec:?}")))?;
        return BanachClassSpec::power(theta);
    }
    if let Some(p) = spec.strip_prefix("lp:") {
        let p: f64 = p
            .parse()
            .map_err(|_| Error::OutOfRange(format!("lp class needs a numeric exponent, got {spec:?}")))?;
        let theta = theta_of_p(p)?;
        let mut class = BanachClassSpec::power(theta)?;
        class.label = format!("lp(p={p})");
        return Ok(class);
    }
    let modulus = gio::load_modulus(Path::new(spec))?;
    let label = match &modulus {
        CurveModulus::Hilbert => "hilbert".to_string(),
        CurveModulus::Power { theta } => format!("power(theta={theta})"),
        CurveModulus::Table { .. } => format!("table({spec})"),
    };
    Ok(BanachClassSpec { label, modulus })
}

fn parse_sided(s: &str) -> Result<Sided, Error> {
    match s {
        "one" => Ok(Sided::One),
        "two" => Ok(Sided::Two),
        other => Err(Error::OutOfRange(format!("--sided takes one|two, got {other:?}"))),
    }
}

fn parse_identity(name: &str, nowak_c: Option<f64>) -> Result<Identity, Error> {
    let id = match name {
        "norm-localization" => Identity::NormLocalization,
        "codifferential-localization" => Identity::DstarLocalization,
        "garland" => Identity::Garland,
        "dd-zero" => Identity::DdZero,
        "differential-bound" => Identity::DBound,
        "adjointness" => Identity::Adjointness,
        "duality" => Identity::Duality,
        "contraction-gate" => {
            let c = nowak_c.ok_or_else(|| {
                Error::OutOfRange("the contraction-gate identity needs --nowak-c".into())
            })?;
            Identity::Nowak { c }
        }
        other => {
            return Err(Error::OutOfRange(format!("unknown identity {other:?}")));
        }
    };
    Ok(id)
}

fn load_action_for(complex: &SimplicialComplex, path: Option<&Path>) -> Result<GroupAction, Error> {
    let degree = complex.face_count(0) as u32;
    match path {
        Some(p) => gio::load_action(p, degree),
        None => Ok(GroupAction::trivial(degree)),
    }
}

/// Map internal dense vertex ids back to the labels of the input file.
fn label_of(complex: &SimplicialComplex, v: u32) -> i64 {
    match complex.labels() {
        Some(labels) => labels[v as usize],
        None => v as i64,
    }
}

fn dense_of(complex: &SimplicialComplex, label: i64) -> Result<u32, Error> {
    match complex.labels() {
        Some(labels) => labels
            .iter()
            .position(|&l| l == label)
            .map(|i| i as u32)
            .ok_or_else(|| Error::OutOfRange(format!("vertex label {label} not in the complex"))),
        None => u32::try_from(label)
            .map_err(|_| Error::OutOfRange(format!("vertex label {label} not in the complex"))),
    }
}

fn dispatch(command: Command) -> Result<(String, i32), Error> {
    match command {
        Command::Certify(args) => run_certify(args),
        Command::Spectra(args) => run_spectra(args),
        Command::Verify(args) => run_verify(args),
        Command::Randgroup(args) => match args.command {
            RandgroupCmd::Sample(a) => run_sample(a),
            RandgroupCmd::Link(a) => run_link(a),
            RandgroupCmd::Experiment(a) => run_experiment(a),
        },
        Command::Report(args) => run_report(args),
        Command::Thresholds(args) => run_thresholds(args),
    }
}

fn certificate_json(cert: &Certificate, complex: &SimplicialComplex, seed: u64, aspherical: bool) -> Result<Json, Error> {
    let conclusions = conclude(std::slice::from_ref(cert), &ConcludeFlags { aspherical })?;
    let witness: Vec<Json> = cert
        .witness
        .iter()
        .map(|&v| Json::Int(label_of(complex, v)))
        .collect();
    let vanishing: Vec<Json> = conclusions
        .vanishing
        .iter()
        .map(|(k, class)| Json::Array(vec![Json::UInt(*k as u64), Json::Str(class.clone())]))
        .collect();
    Ok(Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("seed", Json::UInt(seed)),
        ("criterion", Json::Str(cert.criterion.name().into())),
        ("k", Json::UInt(cert.k as u64)),
        ("n", Json::UInt(cert.n as u64)),
        ("class", Json::Str(cert.class.label.clone())),
        ("lambda", Json::Float(cert.lambda)),
        ("witness", Json::Array(witness)),
        ("measured", Json::Float(cert.measured)),
        ("threshold", Json::Float(cert.threshold)),
        ("margin", Json::Float(cert.margin)),
        ("certified", Json::Bool(cert.certified)),
        ("conclusion", Json::Str(cert.conclusion.clone())),
        (
            "assumptions",
            Json::Array(cert.assumptions.iter().map(|a| Json::Str(a.clone())).collect()),
        ),
        ("fingerprint", Json::Str(cert.fingerprint.clone())),
        (
            "conclusions",
            Json::Object(vec![
                ("vanishing", Json::Array(vanishing)),
                ("fixed_point", float_pair(conclusions.fixed_point)),
                ("stability", float_pair(conclusions.stability)),
                ("group_level", Json::Bool(conclusions.group_level)),
                (
                    "assumptions",
                    Json::Array(
                        conclusions.assumptions.iter().map(|a| Json::Str(a.clone())).collect(),
                    ),
                ),
            ]),
        ),
    ]))
}

fn run_certify(args: CertifyArgs) -> Result<(String, i32), Error> {
    let complex = gio::load_complex(&args.complex)?;
    let action = match &args.action {
        Some(p) => Some(gio::load_action(p, complex.face_count(0) as u32)?),
        None => None,
    };
    let class = parse_class(&args.class)?;
    let seed = resolve_seed(args.seed)?;
    let cert = match args.criterion.as_str() {
        "local" => certify_local(&complex, action.as_ref(), args.k, &class)?,
        "descent" => {
            let sided = parse_sided(&args.sided)?;
            certify_descent(&complex, action.as_ref(), args.k, &class, sided)?
        }
        other => {
            return Err(Error::OutOfRange(format!(
                "--criterion takes local|descent, got {other:?}"
            )));
        }
    };
    let doc = certificate_json(&cert, &complex, seed, args.aspherical)?;
    let code = if cert.certified { 0 } else { 1 };
    Ok((doc.render(), code))
}

fn profile_json(source: String, graph: &WeightedGraph) -> Result<Json, Error> {
    let profile = spectrum(graph)?;
    Ok(Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("source", Json::Str(source)),
        ("vertices", Json::UInt(graph.vertex_count() as u64)),
        ("edges", Json::UInt(graph.edge_count() as u64)),
        (
            "eigenvalues",
            Json::Array(profile.eigenvalues.iter().map(|&e| Json::Float(e)).collect()),
        ),
        ("lambda_one", Json::Float(profile.lambda_one)),
        ("lambda_two", Json::Float(profile.lambda_two)),
        ("connected", Json::Bool(profile.connected)),
        ("bipartite", Json::Bool(profile.bipartite)),
        ("trivial_multiplicity", Json::UInt(profile.trivial_multiplicity as u64)),
    ]))
}

fn run_spectra(args: SpectraArgs) -> Result<(String, i32), Error> {
    let (source, graph) = if let Some(path) = &args.graph {
        (format!("graph {}", path.display()), gio::load_graph(path)?)
    } else {
        let path = args.complex.as_ref().expect("clap enforces the source group");
        let complex = gio::load_complex(path)?;
        match &args.link {
            None => (
                format!("skeleton {}", path.display()),
                complex.skeleton_graph()?,
            ),
            Some(labels) => {
                let mut tau: Vec<u32> = labels
                    .iter()
                    .map(|&l| dense_of(&complex, l))
                    .collect::<Result<_, _>>()?;
                tau.sort_unstable();
                let link = complex.link(&tau)?;
                (
                    format!("link of {labels:?} in {}", path.display()),
                    link.skeleton_graph()?,
                )
            }
        }
    };
    let doc = profile_json(source, &graph)?;
    Ok((doc.render(), 0))
}

fn report_row(report: &VerificationReport) -> Json {
    Json::Object(vec![
        ("identity", Json::Str(report.identity.name().into())),
        ("degree", Json::UInt(report.degree as u64)),
        ("trials", Json::UInt(report.trials as u64)),
        ("zero_trials", Json::UInt(report.zero_trials as u64)),
        ("max_residual", Json::Float(report.max_residual)),
        ("tolerance", Json::Float(report.tolerance)),
        ("pass", Json::Bool(report.pass)),
    ])
}

fn run_verify(args: VerifyArgs) -> Result<(String, i32), Error> {
    let complex = gio::load_complex(&args.complex)?;
    let action = load_action_for(&complex, args.action.as_deref())?;
    let coefficients = match args.rep.as_str() {
        "trivial" => CoefficientSpace::trivial(&action, args.d, args.p)?,
        "sign" => CoefficientSpace::sign_rep(&action, args.p)?,
        other => {
            return Err(Error::OutOfRange(format!("--rep takes trivial|sign, got {other:?}")));
        }
    };
    let space = CochainSpace::new(complex, action, coefficients)?;
    let seed = resolve_seed(args.seed)?;
    let reports = if args.identity == "all" {
        verify_all(&space, args.k, args.trials, seed, args.tol)?
    } else {
        let identity = parse_identity(&args.identity, args.nowak_c)?;
        vec![verify_identity(&space, identity, args.k, args.trials, seed, args.tol)?]
    };
    let all_pass = reports.iter().all(|r| r.pass);
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("seed", Json::UInt(seed)),
        ("k", Json::UInt(args.k as u64)),
        ("trials", Json::UInt(args.trials as u64)),
        ("reports", Json::Array(reports.iter().map(report_row).collect())),
        ("pass", Json::Bool(all_pass)),
    ]);
    Ok((doc.render(), if all_pass { 0 } else { 1 }))
}

fn run_sample(args: SampleArgs) -> Result<(String, i32), Error> {
    let seed = resolve_seed(args.seed)?;
    let (model, param, presentation) = if let Some(d) = args.d {
        ("density", d, sample_presentation_density(args.m, d, seed, args.rotation_classes)?)
    } else {
        let rho = args.rho.expect("clap enforces the model group");
        ("binomial", rho, sample_presentation_binomial(args.m, rho, seed, args.rotation_classes)?)
    };
    if let Some(out) = &args.out {
        std::fs::write(out, presentation.format()).map_err(|source| Error::Io {
            path: out.display().to_string(),
            source,
        })?;
    }
    let relators: Vec<Json> =
        presentation.format().lines().map(|l| Json::Str(l.to_string())).collect();
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("seed", Json::UInt(seed)),
        ("m", Json::UInt(args.m as u64)),
        ("model", Json::Str(model.into())),
        ("param", Json::Float(param)),
        ("rotation_classes", Json::Bool(args.rotation_classes)),
        ("relator_space", Json::UInt(relator_space_count(args.m))),
        ("count", Json::UInt(presentation.len() as u64)),
        ("relators", Json::Array(relators)),
    ]);
    Ok((doc.render(), 0))
}

fn run_link(args: LinkArgs) -> Result<(String, i32), Error> {
    let presentation = gio::load_presentation(&args.presentation)?;
    let (graph, warnings) = zuk_link(&presentation, args.symmetrize_relators);
    let graph_json = match &graph {
        None => Json::Null,
        Some(g) => {
            let profile = spectrum(g)?;
            Json::Object(vec![
                ("vertices", Json::UInt(g.vertex_count() as u64)),
                ("edges", Json::UInt(g.edge_count() as u64)),
                (
                    "eigenvalues",
                    Json::Array(profile.eigenvalues.iter().map(|&e| Json::Float(e)).collect()),
                ),
                ("lambda_one", Json::Float(profile.lambda_one)),
                ("lambda_two", Json::Float(profile.lambda_two)),
                ("connected", Json::Bool(profile.connected)),
                ("bipartite", Json::Bool(profile.bipartite)),
            ])
        }
    };
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("m", Json::UInt(presentation.m() as u64)),
        ("relators", Json::UInt(presentation.len() as u64)),
        ("symmetrized", Json::Bool(args.symmetrize_relators)),
        ("warnings", Json::Array(warnings.iter().map(|w| Json::Str(w.clone())).collect())),
        ("link", graph_json),
    ]);
    Ok((doc.render(), 0))
}

fn experiment_row_json(row: &ExperimentRow) -> Json {
    Json::Object(vec![
        ("m", Json::UInt(row.m as u64)),
        ("rho", Json::Float(row.rho)),
        ("seed", Json::UInt(row.seed)),
        ("vertices", Json::UInt(row.vertices as u64)),
        ("edges", Json::UInt(row.edges as u64)),
        ("connected", Json::Bool(row.connected)),
        ("lambda_two_sided", Json::Float(row.lambda_two_sided)),
        ("lambda_one_sided", Json::Float(row.lambda_one_sided)),
    ])
}

fn summary_json(s: &ExperimentSummary) -> Json {
    Json::Object(vec![
        ("m", Json::UInt(s.m as u64)),
        ("rho", Json::Float(s.rho)),
        ("trials", Json::UInt(s.trials as u64)),
        ("connected_trials", Json::UInt(s.connected_trials as u64)),
        ("median_two_sided", Json::Float(s.median_two_sided)),
        ("median_one_sided", Json::Float(s.median_one_sided)),
        ("c_hat", Json::Float(s.c_hat)),
    ])
}

fn rows_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("m,rho,seed,vertices,edges,connected,lambda_two_sided,lambda_one_sided\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.m,
            json::format_float(r.rho),
            r.seed,
            r.vertices,
            r.edges,
            r.connected,
            json::format_float(r.lambda_two_sided),
            json::format_float(r.lambda_one_sided),
        ));
    }
    out
}

fn run_experiment(args: ExperimentArgs) -> Result<(String, i32), Error> {
    let seed = resolve_seed(args.seed)?;
    let (rows, summaries) =
        link_expansion_experiment(&args.m_list, args.multiplier, args.trials, seed)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, rows_csv(&rows)).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("seed", Json::UInt(seed)),
        ("multiplier", Json::Float(args.multiplier)),
        ("trials", Json::UInt(args.trials as u64)),
        (
            "m_list",
            Json::Array(args.m_list.iter().map(|&m| Json::UInt(m as u64)).collect()),
        ),
        ("summaries", Json::Array(summaries.iter().map(summary_json).collect())),
        ("rows", Json::Array(rows.iter().map(experiment_row_json).collect())),
    ]);
    Ok((doc.render(), 0))
}

fn run_report(args: ReportArgs) -> Result<(String, i32), Error> {
    let report = asymptotic_report(args.m, args.d, args.c, args.eta, args.log_base)?;
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("m", Json::UInt(report.m as u64)),
        ("d", Json::Float(report.d)),
        ("c", Json::Float(report.c)),
        ("eta", Json::Float(report.eta)),
        ("log_base", Json::Float(report.log_base)),
        ("p_interval", float_pair(report.p_interval)),
        ("confdim_lower", Json::Float(report.confdim_lower)),
        ("confdim_upper", Json::Float(report.confdim_upper)),
        ("density_threshold", Json::Float(report.density_threshold)),
        ("note", Json::Str(report.note.clone())),
    ]);
    Ok((doc.render(), 0))
}

fn run_thresholds(args: ThresholdsArgs) -> Result<(String, i32), Error> {
    let class = parse_class(&args.class)?;
    if args.k_max < 1 {
        return Err(Error::OutOfRange("--k-max must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for k in 1..=args.k_max {
        let threshold = garland_core::banach::local_threshold(k, &class.modulus)?;
        let mut fields = vec![
            ("k", Json::UInt(k as u64)),
            ("local_threshold", Json::Float(threshold)),
        ];
        if let Some(lambda) = args.lambda {
            let p_max = garland_core::banach::p_max_for_lambda(lambda, k)?;
            fields.push((
                "p_max",
                match p_max {
                    Some(p) => Json::Float(p),
                    None => Json::Null,
                },
            ));
        }
        rows.push(Json::Object(fields));
    }
    let theta0 = match &class.modulus {
        CurveModulus::Hilbert => Some(1.0),
        CurveModulus::Power { theta } => Some(*theta),
        CurveModulus::Table { .. } => None,
    };
    let stability = match theta0 {
        Some(t) => float_pair(Some(garland_core::banach::stability_p_range(t)?)),
        None => Json::Null,
    };
    let doc = Json::Object(vec![
        ("tool", Json::Str("garland".into())),
        ("version", Json::Str(VERSION.into())),
        ("class", Json::Str(class.label.clone())),
        ("rows", Json::Array(rows)),
        ("stability_p_range", stability),
    ]);
    Ok((doc.render(), 0))
}
