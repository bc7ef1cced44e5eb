//! Command-line front end: enumerate orthomorphisms, classify cycle
//! forms, export the orthogonality graph, compute the clique number,
//! run the statement catalog and print the Latin-square oracle.
//!
//! Exit codes: 0 success, 1 verification failure (with the failing
//! statement ids on stderr), 2 unusable group spec or flag combination,
//! 3 enumeration bound exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orthomorph::export::{graph_to_dot, graph_to_json, SCHEMA_VERSION};
use orthomorph::ortho::cycle_notation;
use orthomorph::z2z4::is_z2z4_like;
use orthomorph::{
    are_orthogonal, build_graph, classify_form, clique_number, direct_product,
    enumerate_orthomorphisms, latin_orthogonal, to_latin_square, verify, Error, FiniteGroup,
    Orthomorphism,
};

#[derive(Parser)]
#[command(name = "orthomorph", version, about = "Orthomorphism graphs of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count and list the normalised orthomorphisms of a group
    Enumerate(CommonArgs),
    /// Tag each orthomorphism with its cycle form (Z2xZ4-profile groups)
    Classify(CommonArgs),
    /// Export the orthomorphism graph
    Graph(CommonArgs),
    /// Print the clique number of the orthomorphism graph
    Clique(CommonArgs),
    /// Run the statement catalog; exit 0 iff every statement passes
    Verify(CommonArgs),
    /// Print the Latin squares and the pair-distinctness oracle verdict
    Latin(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Enumerate(a)
            | Command::Classify(a)
            | Command::Graph(a)
            | Command::Clique(a)
            | Command::Verify(a)
            | Command::Latin(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Group spec: cyclic:N, product:cyclic:A,cyclic:B, z2xz4, klein
    #[arg(long)]
    group: String,

    /// Output format (dot only for graph; cycles only for enumerate/classify)
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Bound on the group order for exhaustive enumeration
    #[arg(long, default_value_t = orthomorph::DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Worker threads for graph construction (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
    Cycles,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => code,
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => 3,
            _ => 1,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { message: e.to_string(), code: 1 }
    }
}

fn run(command: &Command) -> Result<ExitCode, CliError> {
    let args = command.args();
    check_format(command, args.format)?;
    let group = Arc::new(parse_group(&args.group)?);

    let work = || -> Result<(String, ExitCode), CliError> {
        match command {
            Command::Enumerate(_) => enumerate_cmd(&group, args).map(|s| (s, ExitCode::SUCCESS)),
            Command::Classify(_) => classify_cmd(&group, args).map(|s| (s, ExitCode::SUCCESS)),
            Command::Graph(_) => graph_cmd(&group, args).map(|s| (s, ExitCode::SUCCESS)),
            Command::Clique(_) => clique_cmd(&group, args).map(|s| (s, ExitCode::SUCCESS)),
            Command::Verify(_) => verify_cmd(&group, args),
            Command::Latin(_) => latin_cmd(&group, args).map(|s| (s, ExitCode::SUCCESS)),
        }
    };

    // All output is assembled deterministically before emission, so the
    // worker count never changes the bytes produced.
    let (output, code) = match args.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::usage(e.to_string()))?;
            pool.install(work)?
        }
        None => work()?,
    };

    match &args.out {
        Some(path) => std::fs::write(path, output)?,
        None => {
            std::io::stdout().write_all(output.as_bytes())?;
        }
    }
    Ok(code)
}

fn check_format(command: &Command, format: Format) -> Result<(), CliError> {
    match (command, format) {
        (Command::Graph(_), Format::Cycles) => {
            Err(CliError::usage("format 'cycles' applies to enumerate and classify only"))
        }
        (Command::Graph(_), _) => Ok(()),
        (_, Format::Dot) => Err(CliError::usage("format 'dot' applies to graph only")),
        (Command::Enumerate(_) | Command::Classify(_), _) => Ok(()),
        (_, Format::Cycles) => {
            Err(CliError::usage("format 'cycles' applies to enumerate and classify only"))
        }
        (_, _) => Ok(()),
    }
}

fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    let cyclic = |n: &str| -> Result<FiniteGroup, CliError> {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::usage(format!("unknown group spec '{spec}'")))?;
        FiniteGroup::cyclic(n).map_err(|e| CliError::usage(e.to_string()))
    };
    match spec {
        "z2xz4" => Ok(direct_product(
            &FiniteGroup::cyclic(2).expect("order 2"),
            &FiniteGroup::cyclic(4).expect("order 4"),
        )),
        "klein" => {
            let z2 = FiniteGroup::cyclic(2).expect("order 2");
            Ok(direct_product(&z2, &z2))
        }
        _ => {
            if let Some(n) = spec.strip_prefix("cyclic:") {
                cyclic(n)
            } else if let Some(rest) = spec.strip_prefix("product:") {
                let parts: Vec<&str> = rest.split(',').collect();
                let [a, b] = parts.as_slice() else {
                    return Err(CliError::usage(format!(
                        "unknown group spec '{spec}' (expected product:cyclic:A,cyclic:B)"
                    )));
                };
                let factor = |p: &str| -> Result<FiniteGroup, CliError> {
                    p.strip_prefix("cyclic:")
                        .ok_or_else(|| CliError::usage(format!("unknown group spec '{spec}'")))
                        .and_then(cyclic)
                };
                Ok(direct_product(&factor(a)?, &factor(b)?))
            } else {
                Err(CliError::usage(format!("unknown group spec '{spec}'")))
            }
        }
    }
}

fn orthomorphisms(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<Vec<Orthomorphism>, CliError> {
    Ok(enumerate_orthomorphisms(group, args.max_order)?)
}

fn images_line(o: &Orthomorphism) -> String {
    o.images().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn enumerate_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<String, CliError> {
    let orth = orthomorphisms(group, args)?;
    let mut out = String::new();
    match args.format {
        Format::Text => {
            out.push_str(&format!("{}\n", orth.len()));
            for o in &orth {
                out.push_str(&images_line(o));
                out.push('\n');
            }
        }
        Format::Cycles => {
            out.push_str(&format!("{}\n", orth.len()));
            for o in &orth {
                out.push_str(&o.cycle_notation());
                out.push('\n');
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "group": group.name(),
                "count": orth.len(),
                "orthomorphisms": orth.iter().map(|o| o.images().to_vec()).collect::<Vec<_>>(),
            });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serialises"));
            out.push('\n');
        }
        Format::Dot => unreachable!("rejected by check_format"),
    }
    Ok(out)
}

fn classify_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<String, CliError> {
    if !is_z2z4_like(group) {
        return Err(CliError::usage(format!(
            "classify requires the Z2xZ4 order profile; {} does not have it",
            group.name()
        )));
    }
    let orth = orthomorphisms(group, args)?;
    let classified: Vec<_> = orth.iter().map(|o| (o, classify_form(o))).collect();
    let count_of = |f: orthomorph::Form| classified.iter().filter(|(_, cf)| cf.form == f).count();
    let forms = [
        orthomorph::Form::I,
        orthomorph::Form::II,
        orthomorph::Form::III,
        orthomorph::Form::IV,
    ];

    let mut out = String::new();
    match args.format {
        Format::Text | Format::Cycles => {
            for f in forms {
                out.push_str(&format!("{f} {}\n", count_of(f)));
            }
            for (i, (o, cf)) in classified.iter().enumerate() {
                let serialised = if args.format == Format::Cycles {
                    o.cycle_notation()
                } else {
                    images_line(o)
                };
                out.push_str(&format!(
                    "{i} {} a={} x={} theta_x={} {}\n",
                    cf.form,
                    group.label(cf.a),
                    group.label(cf.x),
                    group.label(cf.theta_x),
                    serialised
                ));
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "group": group.name(),
                "counts": forms
                    .iter()
                    .map(|f| (f.to_string(), serde_json::json!(count_of(*f))))
                    .collect::<serde_json::Map<String, serde_json::Value>>(),
                "orthomorphisms": classified.iter().enumerate().map(|(i, (o, cf))| {
                    serde_json::json!({
                        "index": i,
                        "images": o.images().to_vec(),
                        "form": cf.form.to_string(),
                        "a": group.label(cf.a),
                        "x": group.label(cf.x),
                        "theta_x": group.label(cf.theta_x),
                    })
                }).collect::<Vec<_>>(),
            });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serialises"));
            out.push('\n');
        }
        Format::Dot => unreachable!("rejected by check_format"),
    }
    Ok(out)
}

fn graph_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<String, CliError> {
    let graph = build_graph(orthomorphisms(group, args)?);
    Ok(match args.format {
        Format::Dot => graph_to_dot(&graph, true),
        Format::Json => {
            let mut s = graph_to_json(&graph);
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("vertices {}\nedges {}\n", graph.vertex_count(), graph.edges().len());
            for (i, j) in graph.edges() {
                out.push_str(&format!("{i} {j}\n"));
            }
            out
        }
        Format::Cycles => unreachable!("rejected by check_format"),
    })
}

fn clique_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<String, CliError> {
    let graph = build_graph(orthomorphisms(group, args)?);
    let omega = clique_number(&graph);
    Ok(match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "group": group.name(),
                "clique_number": omega,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serialises"))
        }
        _ => format!("{omega}\n"),
    })
}

fn verify_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<(String, ExitCode), CliError> {
    let statements = verify::verify_group(group, args.max_order)?;
    let failing: Vec<&str> = statements.iter().filter(|s| !s.pass).map(|s| s.id).collect();

    let mut out = String::new();
    match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "group": group.name(),
                "statements": statements.iter().map(|s| serde_json::json!({
                    "id": s.id,
                    "pass": s.pass,
                    "detail": s.detail,
                })).collect::<Vec<_>>(),
                "all_pass": failing.is_empty(),
            });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serialises"));
            out.push('\n');
        }
        _ => {
            for s in &statements {
                if s.pass {
                    out.push_str(&format!("{} PASS\n", s.id));
                } else {
                    out.push_str(&format!("{} FAIL {}\n", s.id, s.detail));
                }
            }
        }
    }
    if failing.is_empty() {
        Ok((out, ExitCode::SUCCESS))
    } else {
        eprintln!("verification failed: {}", failing.join(", "));
        Ok((out, ExitCode::from(1)))
    }
}

fn latin_cmd(group: &Arc<FiniteGroup>, args: &CommonArgs) -> Result<String, CliError> {
    let orth = orthomorphisms(group, args)?;
    let squares: Vec<_> = orth
        .iter()
        .map(|o| to_latin_square(group, &o.as_map()).expect("orthomorphisms give Latin squares"))
        .collect();
    let mut agree = 0usize;
    let mut total = 0usize;
    for i in 0..orth.len() {
        for j in i + 1..orth.len() {
            total += 1;
            agree += (latin_orthogonal(&squares[i], &squares[j])
                == are_orthogonal(&orth[i], &orth[j])) as usize;
        }
    }
    let pass = agree == total;

    let mut out = String::new();
    match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": SCHEMA_VERSION,
                "group": group.name(),
                "squares": squares.iter().map(|s| {
                    (0..s.order()).map(|r| (0..s.order()).map(|c| s.get(r, c)).collect::<Vec<_>>()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "oracle_agree": agree,
                "oracle_total": total,
                "oracle_pass": pass,
            });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serialises"));
            out.push('\n');
        }
        _ => {
            for (i, s) in squares.iter().enumerate() {
                out.push_str(&format!("# {i} {}\n{}\n\n", cycle_notation(orth[i].images(), group), s.grid_string()));
            }
            out.push_str(&format!(
                "oracle: {agree}/{total} pairs agree with direct orthogonality: {}\n",
                if pass { "PASS" } else { "FAIL" }
            ));
        }
    }
    Ok(out)
}
