//! Command dispatch: each command resolves its inputs, runs the library
//! computation, and wraps the result in an envelope.

use std::path::Path;

use clap::ArgMatches;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use rigidity_core::charvar::{rigidity_report, CharVarError};
use rigidity_core::repvar::{gamma4_pipeline, numeric_check};
use rigidity_core::GroupWord;
use rigidity_groups::coset::{coset_enumerate, CosetTable, Strategy};
use rigidity_groups::fingerprint::{compare_with, cycle_notation, quotients_up_to_with, FingerprintError, FingerprintOptions};
use rigidity_groups::finite::FiniteGroup;
use rigidity_groups::lowindex::{is_normal, low_index_subgroups_with, LowIndexOptions};
use rigidity_groups::luck::{betti_1, cyclic_cover_chain, luck_sequence};
use rigidity_groups::presentation::{dsl, fixture, Presentation};
use rigidity_groups::rs::{reidemeister_schreier, subgroup_abelianization};

use crate::config::{
    ordered_inputs, Cli, Command, FingerprintArgs, GroupArgs, GroupOp, InputSpec, RunConfig, StrategyArg,
};
use crate::envelope::{Check, Envelope};
use crate::golden;

/// Largest regular table turned into a multiplication table for reporting.
const QUOTIENT_REPORT_CAP: usize = 2048;
/// Largest table whose permutations are written out.
const PERMUTATION_REPORT_CAP: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input or configuration.
    #[error("{0}")]
    Config(String),
    /// A resource limit was reached and no partial result is meaningful.
    #[error("{0}")]
    Overflow(String),
    /// Envelope validation failed.
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Overflow(_) => 3,
            CliError::Verify(_) => 4,
            CliError::Failed(_) => 1,
        }
    }
}

/// What a command produced.
#[derive(Debug)]
pub enum Outcome {
    Envelope(Box<Envelope>),
    /// `verify` reports on an existing envelope instead of producing one.
    Verified(Box<Envelope>),
}

struct Payload {
    schema: &'static str,
    value: Value,
    checks: Vec<Check>,
    overflow: bool,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

/// Integers as JSON numbers when they fit, strings otherwise.
fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))).collect())
}

fn small_ints(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect()
}

pub fn run(cli: &Cli, matches: Option<&ArgMatches>, argv: Vec<String>) -> Result<Outcome, CliError> {
    let mut config = RunConfig { workers: cli.workers, out: cli.out.clone(), ..Default::default() };
    let payload = match &cli.command {
        Command::RigidityGamma4 { precision, skip_numeric } => {
            config.command = "rigidity-gamma4".into();
            config.precision = Some(*precision);
            config.skip_numeric = Some(*skip_numeric);
            rigidity_gamma4(*precision, *skip_numeric)?
        }
        Command::Charvar { n } => {
            config.command = "charvar".into();
            config.n = Some(*n);
            charvar(*n)?
        }
        Command::Group(args) => {
            let sub = matches.and_then(|m| m.subcommand_matches("group"));
            config.command = "group".into();
            group(args, sub, &mut config)?
        }
        Command::Fingerprint(args) => {
            let sub = matches.and_then(|m| m.subcommand_matches("fingerprint"));
            config.command = "fingerprint".into();
            fingerprint(args, sub, &mut config)?
        }
        Command::Verify { path } => return verify(path),
    };
    let env = Envelope::new(argv, config, payload.schema, payload.value, payload.checks, payload.overflow);
    Ok(Outcome::Envelope(Box::new(env)))
}

fn verify(path: &Path) -> Result<Outcome, CliError> {
    use crate::store::VerifyError;
    match crate::store::verify(path) {
        Ok(env) => Ok(Outcome::Verified(Box::new(env))),
        Err(e @ (VerifyError::Checksum { .. } | VerifyError::FileName { .. })) => Err(CliError::Verify(e.to_string())),
        Err(e) => Err(CliError::Config(format!("{}: {e}", path.display()))),
    }
}

fn rigidity_gamma4(precision: u32, skip_numeric: bool) -> Result<Payload, CliError> {
    let cert = gamma4_pipeline().map_err(|e| CliError::Failed(format!("pipeline failed at {e}")))?;
    let numeric = (!skip_numeric).then(|| numeric_check(&cert, precision));
    let mut value = to_value(&cert);
    if let Some(n) = &numeric {
        value["numeric"] = to_value(n);
    }
    Ok(Payload {
        schema: "rigidity-lab/certificate/v1",
        checks: golden::certificate(&cert, numeric.as_ref()),
        value,
        overflow: false,
    })
}

fn charvar(n: u32) -> Result<Payload, CliError> {
    let report = rigidity_report(n).map_err(|e| match e {
        CharVarError::Unsupported(_) | CharVarError::SmallN(_) | CharVarError::BadK { .. } => CliError::Config(e.to_string()),
        e => CliError::Failed(e.to_string()),
    })?;
    Ok(Payload { schema: "rigidity-lab/charvar/v1", checks: golden::charvar(&report), value: to_value(&report), overflow: false })
}

fn load(spec: &InputSpec) -> Result<Presentation, CliError> {
    match spec {
        InputSpec::Fixture(name) => fixture(name).map_err(|e| CliError::Config(e.to_string())),
        InputSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Presentation::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
    }
}

fn fixture_name(spec: &InputSpec) -> &str {
    match spec {
        InputSpec::Fixture(n) => n,
        InputSpec::File(_) => "",
    }
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "name": p.name,
        "generators": p.generators(),
        "relators": p.relators().iter().map(dsl).collect::<Vec<_>>(),
    })
}

fn subgroup_words(p: &Presentation, words: &[String]) -> Result<Vec<GroupWord>, CliError> {
    words
        .iter()
        .map(|w| {
            let word = GroupWord::parse(w).map_err(|e| CliError::Config(format!("subgroup word {w:?}: {e}")))?;
            if let Some(g) = word.generators().into_iter().find(|g| p.generator_index(g).is_none()) {
                return Err(CliError::Config(format!("subgroup word {w:?} uses {g}, not a generator of {}", p.name)));
            }
            Ok(word)
        })
        .collect()
}

fn group(args: &GroupArgs, matches: Option<&ArgMatches>, config: &mut RunConfig) -> Result<Payload, CliError> {
    let inputs = ordered_inputs(&args.input, matches);
    let [input] = inputs.as_slice() else {
        return Err(CliError::Config(format!("group needs exactly one --fixture or --file, got {}", inputs.len())));
    };
    config.subcommand = Some(args.op);
    config.inputs = inputs.clone();
    let p = load(input)?;
    let name = fixture_name(input);
    match args.op {
        GroupOp::Abelianize => {
            let inv = p.abelianization();
            let free_rank = inv.iter().filter(|d| d == &&BigInt::from(0)).count();
            Ok(Payload {
                schema: "rigidity-lab/abelianization/v1",
                value: json!({
                    "presentation": presentation_json(&p),
                    "invariants": ints_json(&inv),
                    "free_rank": free_rank,
                    "torsion": ints_json(&inv.iter().filter(|d| d != &&BigInt::from(0)).cloned().collect::<Vec<_>>()),
                }),
                checks: golden::abelianization(name, &small_ints(&inv)),
                overflow: false,
            })
        }
        GroupOp::Cosets => {
            config.coset_limit = Some(args.limit);
            config.strategy = Some(args.strategy);
            config.subgroup = args.subgroup.clone();
            let words = subgroup_words(&p, &args.subgroup)?;
            let t = enumerate(&p, &words, args.limit, args.strategy);
            let mut value = json!({
                "group": presentation_json(&p),
                "subgroup": words.iter().map(dsl).collect::<Vec<_>>(),
                "strategy": args.strategy,
                "limit": args.limit,
                "status": t.status(),
            });
            let mut order = None;
            let mut histogram = None;
            if t.is_complete() {
                value["index"] = json!(t.index());
                if t.index() <= PERMUTATION_REPORT_CAP {
                    let perms: Vec<String> = t.permutations().iter().map(|q| cycle_notation(q)).collect();
                    value["permutations"] = json!(perms);
                }
                if t.index() <= QUOTIENT_REPORT_CAP && is_normal(&t) {
                    let g = FiniteGroup::from_regular_table(&t).expect("complete normal table");
                    value["quotient"] = to_value(g.invariants());
                    if words.is_empty() {
                        order = Some(g.order());
                        histogram = Some(g.order_histogram());
                    }
                }
            }
            let checks = if words.is_empty() && t.is_complete() {
                golden::order(name, order.or(Some(t.index())), histogram.as_deref())
            } else {
                Vec::new()
            };
            Ok(Payload { schema: "rigidity-lab/cosets/v1", value, checks, overflow: !t.is_complete() })
        }
        GroupOp::Subgroups => {
            config.index = Some(args.index);
            config.normal_only = Some(args.normal);
            config.node_limit = args.node_limit;
            let mut opts = LowIndexOptions { normal_only: args.normal, ..Default::default() };
            if let Some(n) = args.node_limit {
                opts.node_limit = n;
            }
            let listing = low_index_subgroups_with(&p, args.index, opts);
            let checks = if listing.complete { golden::subgroups(name, &listing, small_ints) } else { Vec::new() };
            let mut by_index = std::collections::BTreeMap::new();
            for s in &listing.subgroups {
                *by_index.entry(s.index.to_string()).or_insert(0usize) += 1;
            }
            let mut value = to_value(&listing);
            value["group"] = presentation_json(&p);
            value["normal_only"] = json!(args.normal);
            value["classes_by_index"] = to_value(by_index);
            Ok(Payload { schema: "rigidity-lab/subgroups/v1", value, checks, overflow: !listing.complete })
        }
        GroupOp::Rs => {
            config.coset_limit = Some(args.limit);
            config.strategy = Some(args.strategy);
            config.subgroup = args.subgroup.clone();
            let words = subgroup_words(&p, &args.subgroup)?;
            let t = enumerate(&p, &words, args.limit, args.strategy);
            if !t.is_complete() {
                let value = json!({
                    "group": presentation_json(&p),
                    "subgroup": words.iter().map(dsl).collect::<Vec<_>>(),
                    "status": t.status(),
                });
                return Ok(Payload { schema: "rigidity-lab/rs/v1", value, checks: Vec::new(), overflow: true });
            }
            let h = reidemeister_schreier(&p, &t).map_err(|e| CliError::Failed(e.to_string()))?;
            let inv = subgroup_abelianization(&p, &t).map_err(|e| CliError::Failed(e.to_string()))?;
            let value = json!({
                "group": presentation_json(&p),
                "subgroup": words.iter().map(dsl).collect::<Vec<_>>(),
                "status": t.status(),
                "index": t.index(),
                "presentation": presentation_json(&h),
                "invariants": ints_json(&inv),
            });
            Ok(Payload { schema: "rigidity-lab/rs/v1", value, checks: Vec::new(), overflow: false })
        }
        GroupOp::Luck => {
            let moduli = if args.moduli.is_empty() { default_moduli(&p) } else { args.moduli.clone() };
            config.moduli = moduli.clone();
            let chain = cyclic_cover_chain(&p, &moduli).map_err(|e| CliError::Config(e.to_string()))?;
            let values = luck_sequence(&p, &chain).map_err(|e| CliError::Failed(e.to_string()))?;
            let indices: Vec<usize> = chain.iter().map(|t| t.index()).collect();
            let betti: Vec<usize> = chain.iter().map(|t| betti_1(&p, t).expect("complete tables")).collect();
            let values: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let checks = golden::luck(name, &indices, &values);
            let value = json!({
                "group": presentation_json(&p),
                "moduli": moduli,
                "indices": indices,
                "betti_1": betti,
                "values": values,
            });
            Ok(Payload { schema: "rigidity-lab/luck/v1", value, checks, overflow: false })
        }
    }
}

fn enumerate(p: &Presentation, words: &[GroupWord], limit: usize, strategy: StrategyArg) -> CosetTable {
    let s = match strategy {
        StrategyArg::Hlt => Strategy::Hlt,
        StrategyArg::Felsch => Strategy::Felsch,
    };
    coset_enumerate(p, words, limit, s)
}

/// Cyclic covers along the last Smith coordinate: 2, 4, 8 when it is free,
/// otherwise the cumulative prime factorization of the torsion coefficient
/// (15 gives 3, 15).
pub fn default_moduli(p: &Presentation) -> Vec<u64> {
    let inv = p.abelianization();
    let last = inv.last().cloned().unwrap_or_default();
    if last == BigInt::from(0) {
        return vec![2, 4, 8];
    }
    let Ok(mut m) = u64::try_from(&last) else { return vec![2] };
    let mut out = Vec::new();
    let mut acc = 1;
    let mut d = 2;
    while m > 1 {
        while m % d == 0 {
            m /= d;
            acc *= d;
            out.push(acc);
        }
        d += 1;
    }
    out
}

fn fingerprint(args: &FingerprintArgs, matches: Option<&ArgMatches>, config: &mut RunConfig) -> Result<Payload, CliError> {
    let inputs = ordered_inputs(&args.input, matches);
    config.inputs = inputs.clone();
    config.bound = Some(args.bound);
    config.node_limit = args.node_limit;
    let mut opts = FingerprintOptions::default();
    if let Some(n) = args.node_limit {
        opts.node_limit = n;
    }
    match inputs.as_slice() {
        [one] => {
            let p = load(one)?;
            let f = quotients_up_to_with(&p, args.bound, opts).map_err(|e| CliError::Failed(e.to_string()))?;
            let overflow = !f.complete;
            let mut value = to_value(&f);
            value["group"] = json!(p.name);
            Ok(Payload { schema: "rigidity-lab/fingerprint/v1", value, checks: Vec::new(), overflow })
        }
        [a, b] => {
            let (g, h) = (load(a)?, load(b)?);
            let c = compare_with(&g, &h, args.bound, opts).map_err(|e| match e {
                FingerprintError::Partial { .. } => CliError::Overflow(format!("refusing to compare: {e}")),
                FingerprintError::ZeroBound => CliError::Config(e.to_string()),
                e => CliError::Failed(e.to_string()),
            })?;
            let checks = golden::comparison(fixture_name(a), fixture_name(b), &c);
            let mut value = to_value(&c);
            // The verdict holds up to the bound only.
            value["scope"] = json!(format!("quotients of order at most {}", args.bound));
            Ok(Payload { schema: "rigidity-lab/compare/v1", value, checks, overflow: false })
        }
        _ => Err(CliError::Config(format!("fingerprint takes one or two inputs, got {}", inputs.len()))),
    }
}
