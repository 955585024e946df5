mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use xconn_core::closed_form::{guard, kappa_for_family, FamilyParams};
use xconn_core::extra_conn::{
    check_g_extra_cut, check_layer_bounds, enumerate_min_cuts_with, kappa_extra_fragment_with,
    kappa_extra_subset, ExtraConnResult, FragmentConfig,
};
use xconn_core::graph::make_complete;
use xconn_core::products::CutClassification;
use xconn_core::verifier::{sweep, GPolicy, SweepConfig};
use xconn_core::witnesses::{
    all_witnesses, build_witness, validate_witness, WitnessKind, WitnessSpec,
};
use xconn_core::{
    cartesian_product, make_cycle, make_path, strong_product, CutSet, Error, Graph, ProductGraph,
};

use args::*;

enum Failure {
    Usage(String),
    Core(Error),
    /// A check ran and failed; the report has already been written.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Error::OutOfDomain(_) | Error::WitnessRefused { .. }) => 2,
            Failure::Core(Error::Inconclusive { .. }) => 3,
            Failure::Core(_) => 1,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Gen(a) => gen(a),
        Command::Product(a) => product(a),
        Command::Exact(a) => exact(a),
        Command::Formula(a) => formula(a),
        Command::Witness(a) => witness(a),
        Command::ClassifyCut(a) => classify_cut(a),
        Command::CheckLayers(a) => check_layers(a),
        Command::Sweep(a) => run_sweep(a),
    }
}

fn format_of(output: &Output, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let format = output.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::Usage(format!(
            "format {format:?} is not supported here (use one of {allowed:?})"
        )))
    }
}

fn emit(output: &Output, text: &str) -> CmdResult {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Core(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A loaded graph, with product structure when it has one.
struct Loaded {
    graph: Graph,
    product: Option<ProductGraph>,
}

impl Loaded {
    fn require_product(&self) -> Result<&ProductGraph, Failure> {
        self.product
            .as_ref()
            .ok_or_else(|| Failure::Usage("this command needs a product graph".into()))
    }

    fn render(&self, s: &CutSet) -> String {
        match &self.product {
            Some(pg) => pg.render_set(s),
            None => s
                .iter()
                .map(|v| self.graph.label(v))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    match (&source.family, &source.file) {
        (Some(family), None) => {
            let (Some(m), Some(n)) = (source.m, source.n) else {
                return Err(Failure::Usage("--family needs --m and --n".into()));
            };
            let pg = family
                .build(m, n)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Loaded {
                graph: pg.graph().clone(),
                product: Some(pg),
            })
        }
        (None, Some(path)) => {
            let value = read_json(path)?;
            if value.get("product").is_some() {
                let pg = ProductGraph::from_json(&value)?;
                Ok(Loaded {
                    graph: pg.graph().clone(),
                    product: Some(pg),
                })
            } else {
                Ok(Loaded {
                    graph: Graph::from_json(&value)?,
                    product: None,
                })
            }
        }
        _ => Err(Failure::Usage(
            "give either --family with --m/--n, or --file".into(),
        )),
    }
}

fn gen(a: GenArgs) -> CmdResult {
    let format = format_of(&a.output, Format::Json, &[Format::Json, Format::Dot])?;
    let usage = |e: Error| Failure::Usage(e.to_string());
    let (json, dot) = match (a.graph, a.family) {
        (Some(kind), _) => {
            let order = a.order.expect("clap enforces --order");
            let g = match kind {
                BasicGraph::Path => make_path(order),
                BasicGraph::Cycle => make_cycle(order),
                BasicGraph::Complete => make_complete(order),
            }
            .map_err(usage)?;
            (g.to_json(), g.to_dot(None))
        }
        (None, Some(family)) => {
            let pg = family
                .build(
                    a.m.expect("clap enforces --m"),
                    a.n.expect("clap enforces --n"),
                )
                .map_err(usage)?;
            (pg.to_json(), pg.graph().to_dot(None))
        }
        (None, None) => unreachable!("clap enforces --graph or --family"),
    };
    match format {
        Format::Dot => emit(&a.output, &dot),
        _ => emit(&a.output, &pretty(&json)),
    }
}

fn product(a: ProductArgs) -> CmdResult {
    let format = format_of(&a.output, Format::Json, &[Format::Json, Format::Dot])?;
    let left = Graph::from_json(&read_json(&a.left)?)?;
    let right = Graph::from_json(&read_json(&a.right)?)?;
    let pg = match a.kind {
        KindArg::Strong => strong_product(&left, &right)?,
        KindArg::Cartesian => cartesian_product(&left, &right)?,
    };
    match format {
        Format::Dot => emit(&a.output, &pg.graph().to_dot(None)),
        _ => emit(&a.output, &pretty(&pg.to_json())),
    }
}

fn exact(a: ExactArgs) -> CmdResult {
    let format = format_of(
        &a.output,
        Format::Text,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    if a.all && a.solver == SolverArg::Subset {
        return Err(Failure::Usage("--all needs the fragment solver".into()));
    }
    let loaded = load(&a.source)?;
    let config = FragmentConfig {
        threads: a.threads,
        seed: None,
    };
    let (result, all): (ExtraConnResult, Option<Vec<CutSet>>) = match a.solver {
        SolverArg::Subset => (kappa_extra_subset(&loaded.graph, a.g, a.budget)?, None),
        SolverArg::Fragment if a.all => {
            let (r, cuts) = enumerate_min_cuts_with(&loaded.graph, a.g, &config)?;
            (r, Some(cuts))
        }
        SolverArg::Fragment => (
            kappa_extra_fragment_with(&loaded.graph, a.g, &config)?,
            None,
        ),
    };

    let text = match format {
        Format::Dot => loaded.graph.to_dot(result.witness.as_ref()),
        Format::Json => {
            let mut value = json!({
                "g": result.g,
                "value": result.value,
                "solver": result.solver,
                "witness": result.witness,
            });
            if let Some(w) = &result.witness {
                value["witness_labels"] =
                    json!(w.iter().map(|v| labels_of(&loaded, v)).collect::<Vec<_>>());
            }
            if let Some(cuts) = &all {
                value["min_cuts"] = json!(cuts);
            }
            if a.stats {
                value["stats"] = json!({
                    "nodes": result.stats.nodes,
                    "elapsed_ms": result.stats.elapsed.as_millis() as u64,
                });
            }
            pretty(&value)
        }
        _ => {
            let mut out = format!("{}\n", result.value);
            if let Some(w) = &result.witness {
                let _ = writeln!(out, "witness: {}", loaded.render(w));
                let _ = writeln!(out, "ids: {w}");
            }
            if let Some(cuts) = &all {
                let _ = writeln!(out, "minimum cuts: {}", cuts.len());
                for c in cuts {
                    let _ = writeln!(out, "  {}", loaded.render(c));
                }
            }
            if a.stats {
                let _ = writeln!(out, "nodes: {}", result.stats.nodes);
                let _ = writeln!(out, "elapsed_ms: {}", result.stats.elapsed.as_millis());
            }
            out
        }
    };
    emit(&a.output, &text)
}

fn labels_of(loaded: &Loaded, v: usize) -> String {
    match &loaded.product {
        Some(pg) => pg.render(v),
        None => loaded.graph.label(v),
    }
}

fn formula(a: FormulaArgs) -> CmdResult {
    let format = format_of(&a.output, Format::Text, &[Format::Text, Format::Json])?;
    let value = kappa_for_family(a.family, a.m, a.n, a.g)?;
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&value).expect("serializable")),
        _ => format!("{}\n", value.value()),
    };
    emit(&a.output, &text)
}

fn which_kind(w: WhichArg) -> WitnessKind {
    match w {
        WhichArg::S1 => WitnessKind::S1,
        WhichArg::S2 => WitnessKind::S2,
        WhichArg::S3 => WitnessKind::S3,
    }
}

fn witness(a: WitnessArgs) -> CmdResult {
    let format = format_of(
        &a.output,
        Format::Text,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    let params = FamilyParams::new(a.family, a.m, a.n, a.g)?;
    if !guard(&params) {
        return Err(Error::OutOfDomain(format!(
            "g={} is outside the guard for {} with m={}, n={}",
            a.g, a.family, a.m, a.n
        ))
        .into());
    }
    let pg = a.family.build(a.m, a.n)?;
    let outcomes = match a.which {
        Some(w) => {
            let spec = WitnessSpec::new(params, which_kind(w));
            let cut = build_witness(&spec)?;
            let verdict = validate_witness(&pg, &cut, a.g)?;
            vec![xconn_core::witnesses::WitnessOutcome {
                which: spec.which,
                predicted_size: spec.predicted_size,
                size: Some(cut.len()),
                valid: Some(verdict.is_g_extra),
                cut: Some(cut),
                error: None,
            }]
        }
        None => all_witnesses(&pg, &params),
    };
    let bad: Vec<String> = outcomes
        .iter()
        .filter(|o| o.valid != Some(true) || o.size != Some(o.predicted_size))
        .map(|o| o.which.to_string())
        .collect();

    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&outcomes).expect("serializable")),
        Format::Dot => {
            let highlight = outcomes.iter().find_map(|o| o.cut.as_ref());
            pg.graph().to_dot(highlight)
        }
        _ => {
            let mut out = String::new();
            for o in &outcomes {
                let _ = write!(
                    out,
                    "{} predicted={} size={} valid={}",
                    o.which,
                    o.predicted_size,
                    o.size.map_or_else(|| "-".into(), |s| s.to_string()),
                    o.valid.map_or_else(|| "-".into(), |v| v.to_string()),
                );
                match (&o.cut, &o.error) {
                    (Some(cut), _) => {
                        let _ = writeln!(out, ": {}", pg.render_set(cut));
                    }
                    (None, Some(e)) => {
                        let _ = writeln!(out, ": {e}");
                    }
                    (None, None) => out.push('\n'),
                }
            }
            out
        }
    };
    emit(&a.output, &text)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "witness check failed for {}",
            bad.join(", ")
        )))
    }
}

fn read_cut(a: &CutArgs) -> Result<CutSet, Failure> {
    let ids: Vec<usize> = match &a.cut_file {
        Some(path) => serde_json::from_value(read_json(path)?).map_err(|e| {
            Failure::Usage(format!("{}: expected an array of ids: {e}", path.display()))
        })?,
        None => a.cut.clone(),
    };
    Ok(CutSet::from_ids(ids))
}

fn describe(pg: &ProductGraph, c: &CutClassification) -> String {
    let labels = |axis: xconn_core::Axis, s: &CutSet| {
        s.iter()
            .map(|v| pg.factor(axis).label(v))
            .collect::<Vec<_>>()
            .join(" ")
    };
    use xconn_core::Axis::{Factor1, Factor2};
    match c {
        CutClassification::ISet { axis, factor_cut } => {
            let name = match axis {
                Factor1 => "first",
                Factor2 => "second",
            };
            format!(
                "I-set from a cut of the {name} factor: {{{}}}\n",
                labels(*axis, factor_cut)
            )
        }
        CutClassification::LSet { s1, a1, s2, a2 } => format!(
            "L-set: S1={{{}}} A1={{{}}} S2={{{}}} A2={{{}}}\n",
            labels(Factor1, s1),
            labels(Factor1, a1),
            labels(Factor2, s2),
            labels(Factor2, a2)
        ),
        CutClassification::Neither => "neither\n".to_string(),
    }
}

fn classify_cut(a: CutArgs) -> CmdResult {
    let format = format_of(&a.output, Format::Text, &[Format::Text, Format::Json])?;
    let loaded = load(&a.source)?;
    let pg = loaded.require_product()?;
    let cut = read_cut(&a)?;
    let class = pg.classify_cut(&cut)?;
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&class).expect("serializable")),
        _ => describe(pg, &class),
    };
    emit(&a.output, &text)
}

fn check_layers(a: CheckLayersArgs) -> CmdResult {
    let format = format_of(&a.cut.output, Format::Text, &[Format::Text, Format::Json])?;
    let loaded = load(&a.cut.source)?;
    let pg = loaded.require_product()?;
    let cut = read_cut(&a.cut)?;
    let layers = check_layer_bounds(pg, &cut)?;
    let extra = match a.g {
        Some(g) => Some(check_g_extra_cut(pg.graph(), &cut, g)?.is_g_extra),
        None => None,
    };
    let text = match format {
        Format::Json => pretty(&json!({ "layer_bounds": layers, "g_extra": extra })),
        _ => {
            let mut out = format!("layer bounds: {}\n", if layers { "pass" } else { "fail" });
            if let (Some(g), Some(ok)) = (a.g, extra) {
                let _ = writeln!(out, "{g}-extra cut: {ok}");
            }
            out
        }
    };
    emit(&a.cut.output, &text)?;
    if layers && extra != Some(false) {
        Ok(())
    } else {
        Err(Failure::Verification("layer check failed".into()))
    }
}

fn run_sweep(a: SweepArgs) -> CmdResult {
    let format = format_of(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    let config = SweepConfig {
        families: a.family,
        m_range: a.m,
        n_range: a.n,
        g_policy: if a.g.is_empty() {
            GPolicy::AllInGuard
        } else {
            GPolicy::Explicit(a.g)
        },
        threads: a.threads,
        full_ceiling: a.full_ceiling,
        enum_ceiling: a.enum_ceiling,
        record_timings: a.timings,
    };
    let report = sweep(&config)?;
    let text = match format {
        Format::Json => pretty(&report.to_json()),
        _ => report.to_csv(),
    };
    emit(&a.output, &text)?;
    let failing = report.failures().count();
    if failing == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failing} row(s) failed")))
    }
}
