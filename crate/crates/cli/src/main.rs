//! `flowpoly`: counts, generating functions, face numbers and table
//! reproduction for flow polytopes on the grid graphs `G(n,m)`.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 a verification failed,
//! 3 the work budget or a size cap was exceeded.

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Value};

use flowpoly::counting::{
    binomial_expansion_unsplit, count_unsplit_bruteforce, count_vertices_bruteforce, count_vertices_frontier,
    genfunc, p_coefficients, v_recurse_first, v_recurse_last, v_unsplit_matrix, v_vertices_matrix, Mode,
};
use flowpoly::faces::{face_count_bruteforce, face_vector_recurse, FaceVector};
use flowpoly::plane_partitions::{enumerate_pps, psi, psi_on, PlanePartition};
use flowpoly::reports::{render_reports, reproduce_tables, Format, InstanceSpec};
use flowpoly::vectors::{theta, NatVector};
use flowpoly::vertex::{is_vertex_flow, split_merge_check, vertex_pp_violation};
use flowpoly::Error;

#[derive(Parser)]
#[command(name = "flowpoly", version, about = "Exact counting on flow polytopes of grid graphs")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on enumerated plane partitions or edge subsets.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    /// Number of rows; defaults to the length of `a`.
    #[arg(long)]
    n: Option<usize>,
    /// Netflow vector, comma separated.
    #[arg(long)]
    a: NatVector,
    /// Outflow at the last column, comma separated; defaults to zero.
    #[arg(long)]
    b: Option<NatVector>,
}

impl Instance {
    fn spec(&self, m: usize, mode: Mode) -> Result<InstanceSpec> {
        let n = self.n.unwrap_or(self.a.len());
        let spec = InstanceSpec::new(n, m, self.a.clone(), self.b.clone(), mode)?;
        spec.require_nonempty()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Auto,
    Bruteforce,
    First,
    Last,
    Matrix,
    Frontier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FaceMethod {
    Recurse,
    Bruteforce,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Count vertices or unsplittable flows of F_{G(n,m)}(a,b).
    Count {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "vertices")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// The reduced generating function of the counts over m.
    Genfunc {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "vertices")]
        mode: Mode,
    },
    /// Coefficients of the counts in the basis C(m+1, k).
    Expand {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "unsplittable")]
        mode: Mode,
    },
    /// Face numbers of F_{G(n,m)}(a).
    Faces {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        m: usize,
        /// Report only f_d.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value = "recurse")]
        method: FaceMethod,
    },
    /// Vertex tests on one plane partition, or agreement over all of them.
    VertexCheck {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        m: usize,
        /// Rows of the filling separated by `;`, entries by `,`, cells of
        /// the inner shape omitted.
        #[arg(long)]
        pp: Option<String>,
    },
    /// Recompute the n = 5 tables and diff them against the embedded copies.
    ReproduceTables {
        /// 1, 2 or 3; all three when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: Option<u8>,
    },
}

/// What a verb produces: JSON, with an optional human-readable rendering.
struct Output {
    json: Value,
    text: Option<String>,
}

impl Output {
    fn new(json: Value) -> Self {
        Output { json, text: None }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Csv => to_csv(&self.json),
            Format::Ascii => self.text.clone().unwrap_or_else(|| to_ascii(&self.json)),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            xs.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn csv_field(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// One header line and one record, with arrays space separated.
fn to_csv(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let head: Vec<String> = map.keys().cloned().map(csv_field).collect();
            let row: Vec<String> = map.values().map(|x| csv_field(scalar(x))).collect();
            format!("{}\n{}\n", head.join(","), row.join(","))
        }
        other => format!("{}\n", csv_field(scalar(other))),
    }
}

fn to_ascii(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter().map(|(k, x)| format!("{k:<width$}  {}\n", scalar(x))).collect()
        }
        other => format!("{}\n", scalar(other)),
    }
}

fn instance_json(spec: &InstanceSpec) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("n".into(), json!(spec.n));
    map.insert("m".into(), json!(spec.m));
    map.insert("a".into(), json!(spec.a.to_string()));
    map.insert("b".into(), json!(spec.b.to_string()));
    map
}

fn count(spec: &InstanceSpec, method: Method, budget: Option<u64>) -> Result<(Method, BigUint)> {
    let (a, b, m) = (&spec.a, &spec.b, spec.m);
    let method = match (method, spec.mode) {
        (Method::Auto, Mode::Vertices) if b.is_zero() => Method::Matrix,
        (Method::Auto, Mode::Vertices) => Method::Frontier,
        (Method::Auto, Mode::Unsplittable) => Method::First,
        (other, _) => other,
    };
    let value = match (method, spec.mode) {
        (Method::Bruteforce, Mode::Vertices) => count_vertices_bruteforce(a, b, m, budget)?,
        (Method::Bruteforce, Mode::Unsplittable) => count_unsplit_bruteforce(a, b, m, budget)?,
        (Method::Matrix, Mode::Vertices) => {
            if !b.is_zero() {
                bail!(Error::Input("the matrix vertex count needs b = 0; use --method frontier".into()));
            }
            v_vertices_matrix(a, m)?
        }
        (Method::Matrix, Mode::Unsplittable) => v_unsplit_matrix(a, b, m)?,
        (Method::Frontier, Mode::Vertices) => count_vertices_frontier(a, b, m)?,
        (Method::First, Mode::Unsplittable) => v_recurse_first(a, b, m)?,
        (Method::Last, Mode::Unsplittable) => v_recurse_last(a, b, m)?,
        (method, mode) => {
            let name = serde_json::to_value(method)?;
            bail!(Error::Input(format!("method {} does not count {mode}", scalar(&name))));
        }
    };
    Ok((method, value))
}

fn faces_output(spec: &InstanceSpec, d: Option<usize>, method: FaceMethod, budget: Option<u64>) -> Result<Output> {
    let f: FaceVector = match method {
        FaceMethod::Recurse => face_vector_recurse(&spec.a, spec.m)?,
        FaceMethod::Bruteforce => face_count_bruteforce(&spec.a, spec.m, budget)?,
        FaceMethod::Both => {
            let r = face_vector_recurse(&spec.a, spec.m)?;
            let bf = face_count_bruteforce(&spec.a, spec.m, budget)?;
            if r != bf {
                bail!(Error::Mismatch(format!("recursion {:?} vs brute force {:?}", r.counts, bf.counts)));
            }
            r
        }
    };
    let strings = |xs: &[BigUint]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut map = instance_json(spec);
    map.remove("b");
    map.insert("method".into(), serde_json::to_value(method)?);
    map.insert("dim".into(), json!(f.dim()));
    if let Some(d) = d {
        map.insert("d".into(), json!(d));
        map.insert("f_d".into(), json!(f.get(d).to_string()));
    } else {
        map.insert("counts".into(), json!(strings(&f.counts)));
        map.insert("with_empty_face".into(), json!(strings(&f.with_empty_face())));
    }
    Ok(Output::new(Value::Object(map)))
}

fn parse_pp(text: &str, spec: &InstanceSpec) -> Result<PlanePartition> {
    let shape = theta(&spec.a, &spec.b)?;
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().with_context(|| format!("bad entry {x:?}")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanePartition::new(shape, spec.m as u64, rows)?)
}

fn vertex_check(spec: &InstanceSpec, pp: Option<&str>, budget: Option<u64>) -> Result<Output> {
    let mut map = instance_json(spec);
    let Some(text) = pp else {
        let g = flowpoly::graphs::g_graph(spec.m, &spec.a, &spec.b)?;
        let (mut points, mut vertices, mut unsplit, mut disagree) = (0u64, 0u64, 0u64, 0u64);
        for pp in enumerate_pps(&theta(&spec.a, &spec.b)?, spec.m as u64) {
            if budget.is_some_and(|cap| points >= cap) {
                bail!(Error::BudgetExceeded(budget.unwrap_or_default()));
            }
            points += 1;
            let f = psi_on(&pp, &g)?;
            let forest = is_vertex_flow(&f);
            let (sm, rep) = split_merge_check(&f)?;
            let ppv = vertex_pp_violation(&pp).is_none();
            vertices += forest as u64;
            unsplit += rep.is_unsplittable() as u64;
            disagree += (forest != sm || forest != ppv) as u64;
        }
        map.insert("lattice_points".into(), json!(points));
        map.insert("vertices".into(), json!(vertices));
        map.insert("unsplittable".into(), json!(unsplit));
        map.insert("disagreements".into(), json!(disagree));
        if disagree > 0 {
            bail!(Error::Mismatch(format!("vertex tests disagree on {disagree} lattice points")));
        }
        return Ok(Output::new(Value::Object(map)));
    };
    let pp = parse_pp(text, spec)?;
    let f = psi(&pp, &spec.a, &spec.b)?;
    let forest = is_vertex_flow(&f);
    let (sm, rep) = split_merge_check(&f)?;
    let violation = vertex_pp_violation(&pp);
    map.insert("forest".into(), json!(forest));
    map.insert("split_merge".into(), json!(sm));
    map.insert("vertex_pp".into(), json!(violation.is_none()));
    map.insert("unsplittable".into(), json!(rep.is_unsplittable()));
    map.insert("violation".into(), json!(violation.as_ref().map(ToString::to_string)));
    let pairs: Vec<Value> = rep
        .violations()
        .map(|p| json!(format!("units {},{}: {} splits, {} merges", p.first, p.second, p.splits, p.merges)))
        .collect();
    map.insert("pair_violations".into(), Value::Array(pairs));
    let mut text = pp.ascii();
    text.push_str(&to_ascii(&Value::Object(map.clone())));
    if forest != sm || forest != violation.is_none() {
        eprint!("{text}");
        bail!(Error::Mismatch("vertex tests disagree on this plane partition".into()));
    }
    Ok(Output { json: Value::Object(map), text: Some(text) })
}

fn run(cli: Cli) -> Result<String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("configuring worker threads")?;
    }
    let budget = cli.budget;
    let out = match cli.command {
        Command::Count { instance, m, mode, method } => {
            let spec = instance.spec(m, mode)?;
            let (method, value) = count(&spec, method, budget)?;
            let mut map = instance_json(&spec);
            map.insert("mode".into(), json!(mode.to_string()));
            map.insert("method".into(), serde_json::to_value(method)?);
            map.insert("value".into(), json!(value.to_string()));
            Output::new(Value::Object(map))
        }
        Command::Genfunc { instance, mode } => {
            let spec = instance.spec(0, mode)?;
            let g = genfunc(&spec.a, &spec.b, mode)?;
            let mut map = instance_json(&spec);
            map.remove("m");
            map.insert("mode".into(), json!(mode.to_string()));
            let body = serde_json::to_value(&g)?;
            map.extend(body.as_object().cloned().unwrap_or_default());
            map.insert("rendered".into(), json!(g.render()));
            Output::new(Value::Object(map))
        }
        Command::Expand { instance, mode } => {
            let spec = instance.spec(0, mode)?;
            let e = match mode {
                Mode::Unsplittable => binomial_expansion_unsplit(&spec.a, &spec.b)?,
                Mode::Vertices => p_coefficients(&spec.a, &spec.b, budget)?,
            };
            let mut map = instance_json(&spec);
            map.remove("m");
            map.insert("mode".into(), json!(mode.to_string()));
            map.extend(serde_json::to_value(&e)?.as_object().cloned().unwrap_or_default());
            Output::new(Value::Object(map))
        }
        Command::Faces { instance, m, d, method } => {
            if instance.b.as_ref().is_some_and(|b| !b.is_zero()) {
                bail!(Error::Input("face numbers are only available for b = 0".into()));
            }
            let spec = instance.spec(m, Mode::Vertices)?;
            faces_output(&spec, d, method, budget)?
        }
        Command::VertexCheck { instance, m, pp } => {
            let spec = instance.spec(m, Mode::Vertices)?;
            vertex_check(&spec, pp.as_deref(), budget)?
        }
        Command::ReproduceTables { table } => {
            let tables: Vec<u8> = table.map_or_else(|| vec![1, 2, 3], |t| vec![t]);
            let reports = tables.into_iter().map(reproduce_tables).collect::<flowpoly::Result<Vec<_>>>()?;
            let mut rendered = render_reports(&reports, cli.format);
            if !rendered.ends_with('\n') {
                rendered.push('\n');
            }
            let bad: Vec<String> = reports
                .iter()
                .flat_map(|rep| rep.mismatches().map(move |r| format!("table {} row {}", rep.table, r.expected.pattern)))
                .collect();
            if !bad.is_empty() {
                print!("{rendered}");
                bail!(Error::Mismatch(bad.join("; ")));
            }
            return Ok(rendered);
        }
    };
    let mut s = out.render(cli.format);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Mismatch(_)) => 2,
        Some(Error::BudgetExceeded(_) | Error::TooLarge(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
