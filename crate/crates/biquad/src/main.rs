//! Command-line front end: field inspection, indecomposable enumeration,
//! gamma-count tables, escalation runs, unit generation and square roots.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use biquad::element::BiquadElement;
use biquad::error::Error;
use biquad::field::{basis_elements, make_field, Field};
use biquad::forms::{escalate, gamma_count_table, EscalationNode};
use biquad::indecomp::{
    decompose_search, theorem1_certify, totally_positive_integers, IndecompStatus,
};
use biquad::parse::{
    element_to_json, format_element, parse_element, parse_element_file, render_table_csv,
    table_to_json,
};
use biquad::presets;
use biquad::quadcf::{cf_expand, m_value, omega, quad_indecomposables};
use biquad::squares::{sqrt_in_ok, totally_positive_units};

#[derive(Parser)]
#[command(name = "biquad", version, about = "Exact arithmetic in real biquadratic fields")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Number of worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Compare the output against the bundled golden fixture
    #[arg(long, global = true)]
    golden: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the field: case, integral basis, subfield data
    Field { p: i64, q: i64 },
    /// List indecomposables up to a trace bound
    Indec {
        p: i64,
        q: i64,
        #[arg(long, default_value_t = 20)]
        trace: i64,
    },
    /// Emit the gamma-count table for an element list
    Table {
        p: i64,
        q: i64,
        /// Element list file (default: bundled preset for the field)
        #[arg(long)]
        elements: Option<PathBuf>,
    },
    /// Run the escalation method and report the proven rank lower bound
    Escalate {
        p: i64,
        q: i64,
        /// Escalator list file (default: bundled preset for the field)
        #[arg(long)]
        escalators: Option<PathBuf>,
        /// Tree depth (default: length of the escalator list)
        #[arg(long)]
        depth: Option<usize>,
        /// Per-node cap on the number of children
        #[arg(long)]
        branch_cap: Option<usize>,
    },
    /// Generate totally positive units from a generator list
    Units {
        p: i64,
        q: i64,
        /// Generator list file (default: bundled preset for the field)
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long, default_value_t = presets::DEFAULT_UNIT_EXPONENT_BOUND)]
        bound: i64,
    },
    /// Square root in the ring of integers, if one exists
    Sqrt {
        p: i64,
        q: i64,
        /// Element in the `a b c d` wire format
        element: String,
    },
}

/// Failure modes mapped to exit codes: usage errors exit 2, check/golden
/// failures exit 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EscalatorRepresented(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Field { p, q } => cmd_field(*p, *q, cli.json),
        Command::Indec { p, q, trace } => cmd_indec(*p, *q, *trace, cli.json),
        Command::Table { p, q, elements } => {
            cmd_table(*p, *q, elements.as_deref(), cli.golden, cli.json)
        }
        Command::Escalate {
            p,
            q,
            escalators,
            depth,
            branch_cap,
        } => cmd_escalate(*p, *q, escalators.as_deref(), *depth, *branch_cap, cli.json),
        Command::Units { p, q, gens, bound } => {
            cmd_units(*p, *q, gens.as_deref(), *bound, cli.json)
        }
        Command::Sqrt { p, q, element } => cmd_sqrt(*p, *q, element, cli.json),
    }
}

fn load_elements(
    field: &Arc<Field>,
    path: Option<&std::path::Path>,
    preset: Option<&'static str>,
    what: &str,
) -> Result<Vec<BiquadElement>, Failure> {
    let contents = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?,
        None => preset
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "no bundled {what} preset for this field; pass a file"
                ))
            })?
            .to_string(),
    };
    Ok(parse_element_file(field, &contents)?)
}

fn cmd_field(p: i64, q: i64, as_json: bool) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    let basis = basis_elements(&field);
    let mut subfields = Vec::new();
    for k in field.radicals() {
        let cf = cf_expand(k)?;
        let m = m_value(k)?;
        subfields.push((k, omega(k)?, cf, m));
    }
    if as_json {
        let value = json!({
            "schema": 1,
            "command": "field",
            "p": field.p,
            "q": field.q,
            "r": field.r,
            "case": field.case.to_string(),
            "permuted": field.was_permuted(),
            "basis": basis.iter().map(format_element).collect::<Vec<_>>(),
            "subfields": subfields.iter().map(|(k, w, cf, m)| json!({
                "k": k,
                "omega": w.to_string(),
                "cf_u0": cf.u0,
                "cf_period": cf.period,
                "m": m,
            })).collect::<Vec<_>>(),
        });
        println!("{value}");
        return Ok(());
    }
    println!("field Q(sqrt {}, sqrt {}), r = {}", field.p, field.q, field.r);
    println!("case: {}", field.case);
    if field.was_permuted() {
        println!(
            "note: input ({}, {}) canonicalized to (p, q) = ({}, {})",
            field.input.0, field.input.1, field.p, field.q
        );
    }
    let pretty: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    println!("integral basis: ({})", pretty.join(", "));
    for (k, w, cf, m) in &subfields {
        let per: Vec<String> = cf.period.iter().map(|u| u.to_string()).collect();
        println!(
            "subfield Q(sqrt {k}): omega = {w}, cf(-omega') = [{}; ({})...], M_{k} = {m}",
            cf.u0,
            per.join(",")
        );
    }
    Ok(())
}

fn cmd_indec(p: i64, q: i64, trace: i64, as_json: bool) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    // Subfield indecomposables with their verdict source.
    let mut subfield_rows = Vec::new();
    for k in field.radicals() {
        for alpha in quad_indecomposables(k, trace)? {
            let verdict = theorem1_certify(&alpha, &field)?;
            let (source, detail) = match verdict.status {
                IndecompStatus::IndecomposableByTheorem1 => {
                    ("theorem 1", verdict.certificate_detail)
                }
                _ => {
                    let oracle = decompose_search(&alpha.to_biquad(&field)?)?;
                    assert!(
                        oracle.is_indecomposable(),
                        "oracle contradicts the subfield characterization"
                    );
                    ("oracle", "confirmed by exhaustive decomposition search".into())
                }
            };
            subfield_rows.push((k, alpha, source, detail));
        }
    }
    // Genuinely biquadratic indecomposables below the bound: elements
    // supported on at least two radical coordinates.
    let mut biquad_rows = Vec::new();
    for alpha in totally_positive_integers(&field, trace) {
        let nonzero = alpha.coords()[1..].iter().filter(|c| !c.is_zero()).count();
        if nonzero < 2 {
            continue;
        }
        let verdict = decompose_search(&alpha)?;
        if verdict.is_indecomposable() {
            biquad_rows.push(alpha);
        }
    }
    if as_json {
        let value = json!({
            "schema": 1,
            "command": "indec",
            "p": field.p,
            "q": field.q,
            "trace_bound": trace,
            "subfield": subfield_rows.iter().map(|(k, a, source, detail)| json!({
                "k": k,
                "element": a.to_string(),
                "as_biquad": format_element(&a.to_biquad(&field).expect("subfield embeds")),
                "criterion": source,
                "detail": detail,
            })).collect::<Vec<_>>(),
            "biquadratic": biquad_rows.iter().map(|a| json!({
                "element": format_element(a),
                "criterion": "oracle",
            })).collect::<Vec<_>>(),
        });
        println!("{value}");
        return Ok(());
    }
    println!(
        "indecomposables of Q(sqrt {}, sqrt {}) with trace <= {trace}",
        field.p, field.q
    );
    for (k, alpha, source, detail) in &subfield_rows {
        println!("subfield k={k}: {alpha} [{source}: {detail}]");
    }
    for alpha in &biquad_rows {
        println!("biquadratic: {alpha} ({}) [oracle]", format_element(alpha));
    }
    Ok(())
}

fn cmd_table(
    p: i64,
    q: i64,
    elements_path: Option<&std::path::Path>,
    golden: bool,
    as_json: bool,
) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    let elements = load_elements(&field, elements_path, presets::preset_elements(p, q), "element")?;
    let table = gamma_count_table(&elements);
    let csv = render_table_csv(&elements, &table);
    if golden {
        let fixture = presets::preset_table_golden(p, q).ok_or_else(|| {
            Failure::Usage("no bundled golden table for this field".to_string())
        })?;
        if csv != fixture {
            return Err(Failure::Check(format!(
                "golden table mismatch\n--- expected ---\n{fixture}--- got ---\n{csv}"
            )));
        }
    }
    if as_json {
        let mut value = table_to_json(&elements, &table);
        let obj = value.as_object_mut().expect("table json is an object");
        obj.insert("schema".into(), json!(1));
        obj.insert("command".into(), json!("table"));
        obj.insert(
            "criterion".into(),
            json!("number of integral gamma with alpha*beta - gamma^2 totally nonnegative"),
        );
        obj.insert("golden".into(), json!(golden));
        println!("{value}");
    } else {
        print!("{csv}");
        if golden {
            println!("golden: ok");
        }
    }
    Ok(())
}

fn node_to_json(node: &EscalationNode) -> Value {
    json!({
        "diagonal": node.form.lineage().iter().map(format_element).collect::<Vec<_>>(),
        "offdiag_added": node.added_offdiag.iter().map(format_element).collect::<Vec<_>>(),
        "unrepresented": node.unrepresented.as_ref().map(format_element),
        "criterion": if node.form.is_diagonal() {
            "square-quotient test against each diagonal coefficient"
        } else {
            "exhaustive search inside the trace-of-inverse box"
        },
        "children": node.children.iter().map(node_to_json).collect::<Vec<_>>(),
    })
}

fn cmd_escalate(
    p: i64,
    q: i64,
    escalators_path: Option<&std::path::Path>,
    depth: Option<usize>,
    branch_cap: Option<usize>,
    as_json: bool,
) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    let escalators = load_elements(
        &field,
        escalators_path,
        presets::preset_escalators(p, q),
        "escalator",
    )?;
    let depth = depth.unwrap_or(escalators.len()).max(1);
    let run = escalate(&field, &escalators, depth, branch_cap)?;
    if as_json {
        let value = json!({
            "schema": 1,
            "command": "escalate",
            "p": field.p,
            "q": field.q,
            "depth": depth,
            "bound": run.bound,
            "leaves": run.root.leaves(),
            "branch_capped": run.branch_capped,
            "tree": node_to_json(&run.root),
        });
        println!("{value}");
        return Ok(());
    }
    println!(
        "escalation over Q(sqrt {}, sqrt {}), depth {depth}",
        field.p, field.q
    );
    let mut level: Vec<&EscalationNode> = vec![&run.root];
    let mut rank = 1;
    while !level.is_empty() {
        println!("level {rank}: {} form(s)", level.len());
        level = level.iter().flat_map(|n| n.children.iter()).collect();
        rank += 1;
    }
    println!("leaves: {}", run.root.leaves());
    println!("branch capped: {}", run.branch_capped);
    println!("proven rank lower bound: {}", run.bound);
    Ok(())
}

fn cmd_units(
    p: i64,
    q: i64,
    gens_path: Option<&std::path::Path>,
    bound: i64,
    as_json: bool,
) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    let gens = load_elements(
        &field,
        gens_path,
        presets::preset_unit_generators(p, q),
        "unit generator",
    )?;
    let units = totally_positive_units(&field, &gens, bound)?;
    if as_json {
        let value = json!({
            "schema": 1,
            "command": "units",
            "p": field.p,
            "q": field.q,
            "exponent_bound": bound,
            "units": units.iter().map(element_to_json).collect::<Vec<_>>(),
        });
        println!("{value}");
        return Ok(());
    }
    println!(
        "totally positive units of Q(sqrt {}, sqrt {}), exponents up to {bound}",
        field.p, field.q
    );
    for u in &units {
        println!("{u} ({})", format_element(u));
    }
    Ok(())
}

fn cmd_sqrt(p: i64, q: i64, element: &str, as_json: bool) -> Result<(), Failure> {
    let field = make_field(p, q)?;
    let alpha = parse_element(&field, element)?;
    let root = sqrt_in_ok(&alpha)?;
    if as_json {
        let value = json!({
            "schema": 1,
            "command": "sqrt",
            "element": element_to_json(&alpha),
            "root": root.as_ref().map(element_to_json),
        });
        println!("{value}");
        return Ok(());
    }
    match root {
        Some(r) => println!("sqrt({alpha}) = {r} ({})", format_element(&r)),
        None => println!("{alpha} is not a square in O_K"),
    }
    Ok(())
}
