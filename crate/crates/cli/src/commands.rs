use std::path::{Path, PathBuf};
use std::time::Duration;

use berge_core::bergesearch::{
    find_berge_path, longest_cycle_with, longest_path_with, verify_witness_json, Longest, Outcome, SearchOptions,
    WitnessJson,
};
use berge_core::classifier::{
    embeds_in_core, embeds_in_core_block, embeds_in_core_plus, in_pendant_class, kernelize_with, EmbeddingCertificate,
    RemovalOrder, RemovalStep,
};
use berge_core::constructions::{
    build_extremal, build_extremal_plus, edge_count_formula, ConstructionParams, Partition, PlusVariant,
};
use berge_core::format::to_hg;
use berge_core::oracle::{
    audit_lemma1_with, exconn_bruteforce_with, verify_stability_with, CensusOptions, ExconnOptions, SearchReport,
};
use berge_core::{Hypergraph, Vertex};
use serde::Serialize;
use serde_json::Value;

use crate::output::{self, blocks_cell, csv, json, read_hg, read_text};
use crate::{CliError, Command, Construction, EmbedClass, Format, Global, Order};

const SCHEMA_VERSION: u32 = 1;

pub fn run(g: &Global, command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct { params, extra, header } => construct(g, &params, extra, header),
        Command::Count {
            input,
            n,
            a,
            bs,
            r,
            permissive,
        } => {
            let params = match (input.as_ref(), n, a) {
                (Some(_), _, _) => None,
                (None, Some(n), Some(a)) => Some(Construction {
                    n,
                    a,
                    bs,
                    r,
                    permissive,
                }),
                _ => return Err(CliError::Domain("count needs --input or --n and --a".into())),
            };
            count(g, input.as_deref(), params.as_ref())
        }
        Command::LongestPath { input } => longest(g, &input, None),
        Command::LongestCycle { input, min_len } => longest(g, &input, Some(min_len)),
        Command::CheckFree { input, k } => check_free(g, &input, k),
        Command::Embed { input, a, bs, class } => embed(g, &input, a, &bs, class),
        Command::Kernelize { input, k, order } => kernelize(g, &input, k, order),
        Command::Turan {
            n,
            r,
            k,
            checkpoint,
            no_seed_construction,
        } => turan(g, n, r, k, checkpoint, !no_seed_construction),
        Command::AuditLemma1 { n, r, min_len } => audit(g, n, r, min_len),
        Command::VerifyStability { n, r, k, max_entries } => stability(g, n, r, k, max_entries),
        Command::Verify { witness, hypergraph } => verify(g, &witness, &hypergraph),
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Domain(format!("format {format:?} is not available for {command}").to_lowercase())
}

fn params_of(c: &Construction) -> ConstructionParams {
    let mut p = ConstructionParams::new(c.n, c.a, c.bs.clone(), c.r);
    p.permissive = c.permissive;
    p
}

fn search_options(g: &Global) -> SearchOptions {
    SearchOptions {
        budget: g.budget,
        threads: g.threads as usize,
        ..SearchOptions::default()
    }
}

#[derive(Serialize)]
struct ConstructHeader<'a> {
    schema_version: u32,
    params: &'a ConstructionParams,
    extra: Option<&'a [Vertex]>,
    partition: &'a Partition,
    edge_count: usize,
}

#[derive(Serialize)]
struct ConstructJson<'a> {
    #[serde(flatten)]
    header: ConstructHeader<'a>,
    edges: &'a [Vec<Vertex>],
}

fn construct(g: &Global, c: &Construction, extra: Option<Vec<usize>>, header: Option<PathBuf>) -> Result<(), CliError> {
    let params = params_of(c);
    let partition = params.partition()?;
    let h = match &extra {
        Some(e) => build_extremal_plus(&PlusVariant::new(params.clone(), e.clone()))?,
        None => build_extremal(&params)?,
    };
    let extra = extra.map(|mut e| {
        e.sort_unstable();
        e
    });
    let head = ConstructHeader {
        schema_version: SCHEMA_VERSION,
        params: &params,
        extra: extra.as_deref(),
        partition: &partition,
        edge_count: h.edge_count(),
    };
    match g.format {
        Format::Hg => {
            output::write(g.output.as_deref(), &to_hg(&h))?;
            let text = json(&head);
            match header.or_else(|| g.output.as_ref().map(|p| p.with_extension("json"))) {
                Some(path) => output::write(Some(&path), &text),
                None => {
                    eprint!("{text}");
                    Ok(())
                }
            }
        }
        Format::Json => output::write(
            g.output.as_deref(),
            &json(&ConstructJson {
                header: head,
                edges: h.edges(),
            }),
        ),
        Format::Csv => output::write(
            g.output.as_deref(),
            &csv(
                "n,a,b,r,edges",
                &[format!(
                    "{},{},{},{},{}",
                    c.n,
                    c.a,
                    blocks_cell(&c.bs),
                    c.r,
                    h.edge_count()
                )],
            ),
        ),
    }
}

#[derive(Serialize)]
struct CountJson {
    schema_version: u32,
    n: usize,
    r: usize,
    edge_count: usize,
    /// Closed form, when counting a construction.
    formula: Option<u64>,
}

fn count(g: &Global, input: Option<&Path>, c: Option<&Construction>) -> Result<(), CliError> {
    let (h, formula) = match (input, c) {
        (Some(path), _) => (read_hg(path)?, None),
        (None, Some(c)) => {
            let p = params_of(c);
            (build_extremal(&p)?, Some(edge_count_formula(&p)?))
        }
        (None, None) => unreachable!("checked by the caller"),
    };
    let report = CountJson {
        schema_version: SCHEMA_VERSION,
        n: h.n(),
        r: h.r(),
        edge_count: h.edge_count(),
        formula,
    };
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "n,r,edges,formula",
            &[format!(
                "{},{},{},{}",
                report.n,
                report.r,
                report.edge_count,
                formula.map_or(String::new(), |f| f.to_string())
            )],
        ),
        Format::Hg => return Err(unsupported(g.format, "count")),
    };
    output::write(g.output.as_deref(), &text)
}

#[derive(Serialize)]
struct LongestJson {
    schema_version: u32,
    kind: &'static str,
    /// `None` when there is no cycle, or the budget ran out.
    length: Option<usize>,
    witness: Option<WitnessJson>,
    complete: bool,
    nodes: Option<u64>,
}

fn longest(g: &Global, input: &Path, cycle_min: Option<usize>) -> Result<(), CliError> {
    let h = read_hg(input)?;
    let mut opts = search_options(g);
    let (kind, outcome): (&str, Outcome<Option<Longest>>) = match cycle_min {
        None => ("path", longest_path_with(&h, &opts).map(Some)),
        Some(min) => {
            opts.min_cycle_len = min;
            ("cycle", longest_cycle_with(&h, &opts))
        }
    };
    let report = match &outcome {
        Outcome::Complete(found) => LongestJson {
            schema_version: SCHEMA_VERSION,
            kind,
            length: found.as_ref().map(|l| l.length),
            witness: found
                .as_ref()
                .and_then(|l| l.witness.as_ref())
                .map(|w| w.to_json(&h))
                .transpose()?,
            complete: true,
            nodes: None,
        },
        Outcome::Inconclusive { nodes } => LongestJson {
            schema_version: SCHEMA_VERSION,
            kind,
            length: None,
            witness: None,
            complete: false,
            nodes: Some(*nodes),
        },
    };
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "kind,length,complete",
            &[format!(
                "{kind},{},{}",
                report.length.map_or(String::new(), |l| l.to_string()),
                report.complete
            )],
        ),
        Format::Hg => return Err(unsupported(g.format, kind)),
    };
    output::write(g.output.as_deref(), &text)?;
    budget_status(&outcome)
}

fn budget_status<T>(outcome: &Outcome<T>) -> Result<(), CliError> {
    match outcome {
        Outcome::Complete(_) => Ok(()),
        Outcome::Inconclusive { nodes } => Err(CliError::Budget(format!(
            "node budget exhausted after {nodes} nodes; output is partial"
        ))),
    }
}

#[derive(Serialize)]
struct FreeJson {
    schema_version: u32,
    k: usize,
    free: Option<bool>,
    witness: Option<WitnessJson>,
    complete: bool,
}

fn check_free(g: &Global, input: &Path, k: usize) -> Result<(), CliError> {
    let h = read_hg(input)?;
    let outcome = find_berge_path(&h, k, &search_options(g));
    let report = match &outcome {
        Outcome::Complete(w) => FreeJson {
            schema_version: SCHEMA_VERSION,
            k,
            free: Some(w.is_none()),
            witness: w.as_ref().map(|w| w.to_json(&h)).transpose()?,
            complete: true,
        },
        Outcome::Inconclusive { .. } => FreeJson {
            schema_version: SCHEMA_VERSION,
            k,
            free: None,
            witness: None,
            complete: false,
        },
    };
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "k,free,complete",
            &[format!(
                "{k},{},{}",
                report.free.map_or(String::new(), |f| f.to_string()),
                report.complete
            )],
        ),
        Format::Hg => return Err(unsupported(g.format, "check-free")),
    };
    output::write(g.output.as_deref(), &text)?;
    budget_status(&outcome)
}

#[derive(Serialize)]
struct EmbedJson<'a> {
    schema_version: u32,
    class: &'a str,
    a: usize,
    bs: &'a [usize],
    embeds: bool,
    certificate: Option<EmbeddingCertificate>,
    certificate_verified: bool,
}

fn embed(g: &Global, input: &Path, a: usize, bs: &[usize], class: EmbedClass) -> Result<(), CliError> {
    let h = read_hg(input)?;
    let (name, cert) = match class {
        EmbedClass::Core => ("core", embeds_in_core(&h, a)),
        EmbedClass::CorePlus => ("core-plus", embeds_in_core_plus(&h, a)),
        EmbedClass::CoreBlock => ("core-block", embeds_in_core_block(&h, a, bs)),
        EmbedClass::Pendant => ("pendant", in_pendant_class(&h, a, bs)),
    };
    let verified = cert.as_ref().is_some_and(|c| c.verify(&h));
    let report = EmbedJson {
        schema_version: SCHEMA_VERSION,
        class: name,
        a,
        bs,
        embeds: cert.is_some(),
        certificate: cert,
        certificate_verified: verified,
    };
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "class,a,b,embeds,verified",
            &[format!("{name},{a},{},{},{verified}", blocks_cell(bs), report.embeds)],
        ),
        Format::Hg => return Err(unsupported(g.format, "embed")),
    };
    output::write(g.output.as_deref(), &text)
}

#[derive(Serialize)]
struct KernelJson<'a> {
    schema_version: u32,
    k: usize,
    steps: &'a [RemovalStep],
    /// Input label of each surviving vertex, in the kernel's vertex order.
    vertex_map: &'a [Vertex],
    kernel_n: usize,
    kernel_edges: Option<&'a [Vec<Vertex>]>,
}

fn kernelize(g: &Global, input: &Path, k: usize, order: Order) -> Result<(), CliError> {
    let h = read_hg(input)?;
    let order = match order {
        Order::MinSet => RemovalOrder::MinSet,
        Order::MaxDeficit => RemovalOrder::MaxDeficit,
    };
    let kernel = match kernelize_with(&h, k, order, g.budget)? {
        Outcome::Complete(kernel) => kernel,
        Outcome::Inconclusive { nodes } => {
            return Err(CliError::Budget(format!("node budget exhausted after {nodes} nodes")))
        }
    };
    let text = match g.format {
        Format::Json => json(&KernelJson {
            schema_version: SCHEMA_VERSION,
            k,
            steps: &kernel.log,
            vertex_map: &kernel.vertex_map,
            kernel_n: kernel.hypergraph.as_ref().map_or(0, Hypergraph::n),
            kernel_edges: kernel.hypergraph.as_ref().map(Hypergraph::edges),
        }),
        Format::Hg => match &kernel.hypergraph {
            Some(kh) => to_hg(kh),
            None => return Err(CliError::Domain("every vertex was removed; the kernel is empty".into())),
        },
        Format::Csv => csv(
            "k,steps,kernel_n,kernel_edges",
            &[format!(
                "{k},{},{},{}",
                kernel.log.len(),
                kernel.hypergraph.as_ref().map_or(0, Hypergraph::n),
                kernel.hypergraph.as_ref().map_or(0, Hypergraph::edge_count)
            )],
        ),
    };
    output::write(g.output.as_deref(), &text)
}

fn turan(g: &Global, n: usize, r: usize, k: usize, checkpoint: Option<PathBuf>, seeded: bool) -> Result<(), CliError> {
    let opts = ExconnOptions {
        threads: g.threads as usize,
        budget: g.budget,
        time_limit: g.time_limit.map(Duration::from_secs),
        checkpoint,
        seed_with_construction: seeded,
        ..ExconnOptions::default()
    };
    let report = exconn_bruteforce_with(n, r, k, &opts)?;
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(SearchReport::CSV_HEADER, &[report.csv_row()]),
        Format::Hg => return Err(unsupported(g.format, "turan")),
    };
    output::write(g.output.as_deref(), &text)?;
    if report.budget_exhausted {
        return Err(CliError::Budget(
            "search budget exhausted; the value is a lower bound and the report is partial".into(),
        ));
    }
    Ok(())
}

fn audit(g: &Global, n: usize, r: usize, min_len: usize) -> Result<(), CliError> {
    let report = audit_lemma1_with(n, r, min_len)?;
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "n,r,min_cycle_len,classes,audited,cycles_checked,counterexamples",
            &[format!(
                "{},{},{},{},{},{},{}",
                report.n,
                report.r,
                report.min_cycle_len,
                report.classes,
                report.audited,
                report.cycles_checked,
                report.counterexamples.len()
            )],
        ),
        Format::Hg => return Err(unsupported(g.format, "audit-lemma1")),
    };
    output::write(g.output.as_deref(), &text)
}

fn stability(g: &Global, n: usize, r: usize, k: usize, max_entries: usize) -> Result<(), CliError> {
    let opts = CensusOptions {
        threads: g.threads as usize,
        max_entries,
        ..CensusOptions::default()
    };
    let report = verify_stability_with(n, r, k, &opts)?;
    let c = &report.counts;
    let text = match g.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            "n,r,k,threshold,candidates,conforming,non_conforming,certificates_verified,digest",
            &[format!(
                "{n},{r},{k},{},{},{},{},{},{}",
                report.threshold, c.candidates, c.conforming, c.non_conforming, c.certificates_verified, report.digest
            )],
        ),
        Format::Hg => return Err(unsupported(g.format, "verify-stability")),
    };
    output::write(g.output.as_deref(), &text)
}

#[derive(Serialize)]
struct VerifyJson {
    kind: &'static str,
    valid: bool,
}

/// Accepts a bare witness or certificate, or any report carrying one under
/// `witness` or `certificate`.
fn verify(g: &Global, witness: &Path, hypergraph: &Path) -> Result<(), CliError> {
    let h = read_hg(hypergraph)?;
    let text = read_text(witness)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", witness.display())))?;
    let inner = ["witness", "certificate"]
        .iter()
        .find_map(|key| value.get(key).filter(|v| !v.is_null()))
        .unwrap_or(&value)
        .clone();
    let unreadable = || CliError::Io(format!("{}: neither a witness nor a certificate", witness.display()));
    let (kind, valid) = if inner.get("kind").is_some() {
        let w: WitnessJson = serde_json::from_value(inner).map_err(|_| unreadable())?;
        ("witness", verify_witness_json(&h, &w))
    } else if inner.get("A").is_some() {
        let c: EmbeddingCertificate = serde_json::from_value(inner).map_err(|_| unreadable())?;
        ("certificate", c.verify(&h))
    } else {
        return Err(unreadable());
    };
    let text = match g.format {
        Format::Json => json(&VerifyJson { kind, valid }),
        Format::Csv => csv("kind,valid", &[format!("{kind},{valid}")]),
        Format::Hg => return Err(unsupported(g.format, "verify")),
    };
    output::write(g.output.as_deref(), &text)?;
    if valid {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "{kind} does not hold in {}",
            hypergraph.display()
        )))
    }
}
