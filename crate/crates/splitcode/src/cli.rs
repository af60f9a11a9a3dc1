//! Command-line front end. Every command writes one JSON document to
//! standard output; failures are reports carrying an `"error"` field.
//!
//! Exit codes: 0 success, 1 property fails or nothing found, 2 usage or
//! input error, 3 search budget exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use splitcode_core::algebra::AbelianGroup;
use splitcode_core::analysis::{
    amd_r_optimality, amd_strong_epsilon, amd_weak_epsilon, blundo_bound, bound_tightness_check,
    impersonation_probability, message_distribution, new_substitution_bound, perfect_secrecy,
    simmons_bound, substitution_probability, substitution_probability_any_distribution, AmdModel,
    AttackReport, TightnessOptions, Witness, DEFAULT_SAMPLES,
};
use splitcode_core::constructions::{
    develop_amd, search_base_blocks, BaseBlocks, CATALOG, UNTRANSCRIBED,
};
use splitcode_core::designs::{SourceDistribution, SplittingSystem};
use splitcode_core::ordering::{order_development, order_gdd, reorder_exact, SearchBudget};
use splitcode_core::verify::{
    check_equitably_ordered, check_gdd, check_group_generated, check_splitting_bibd, ActionWitness,
    GddViolation, GroupAction, Permutation,
};
use splitcode_core::{Error, Rational};

use crate::format::{self, element_json, rational, Document, FormatError};
use crate::plan::{catalog_document, Plan, PlanError};

#[derive(Debug, Parser)]
#[command(
    name = "splitcode",
    version,
    about = "Splitting authentication codes and splitting BIBDs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for sampled checks, in hex.
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_hex)]
    seed: u64,
    /// Searches always return the lexicographically least witness.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    deterministic: bool,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a construction plan.
    Construct { plan: Option<String> },
    /// Develop an AMD code or base blocks into a splitting system.
    Develop { input: Option<String> },
    /// Equitably order a design.
    Order {
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long)]
        budget: Option<u64>,
        input: Option<String>,
    },
    /// Check design properties.
    Verify(VerifyArgs),
    /// Attack probabilities and secrecy.
    Analyze(AnalyzeArgs),
    /// Lower bounds next to the exact attack probabilities.
    Bounds {
        #[arg(long, default_value = "uniform")]
        dist: String,
        input: Option<String>,
    },
    /// Search for base blocks whose development is a splitting BIBD.
    Search {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        c: usize,
        /// Cyclic factor orders; defaults to Z_v.
        #[arg(long, value_delimiter = ',')]
        group: Vec<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// AMD code success probabilities.
    Amd(AmdArgs),
    /// List built-in fixtures or print one.
    Catalog { name: Option<String> },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Development,
    GddColoring,
    Exact,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    bibd: bool,
    #[arg(long)]
    gdd: bool,
    #[arg(long)]
    equitable: bool,
    #[arg(long)]
    group_generated: bool,
    /// Action table `{"group": [..], "perms": [[..], ..]}`; translation by
    /// default.
    #[arg(long)]
    action: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    group: Vec<u64>,
    input: Option<String>,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("quantity").multiple(false)))]
struct AnalyzeArgs {
    #[arg(long, group = "quantity")]
    substitution: bool,
    /// Substitution maximised over all source distributions.
    #[arg(long, group = "quantity")]
    any_distribution: bool,
    #[arg(long, group = "quantity")]
    impersonation: bool,
    #[arg(long, group = "quantity")]
    secrecy: bool,
    #[arg(long, group = "quantity")]
    messages: bool,
    #[arg(long, group = "quantity")]
    tightness: bool,
    #[arg(long, default_value = "uniform")]
    dist: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    input: Option<String>,
}

#[derive(Debug, Args)]
struct AmdArgs {
    #[arg(long, conflicts_with = "strong")]
    weak: bool,
    #[arg(long)]
    strong: bool,
    #[arg(long)]
    r_optimality: bool,
    input: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Schema(String),
    Invalid(String),
    Budget(u64),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Budget(_) => 3,
            _ => 2,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Schema(_) => "schema",
            Failure::Invalid(_) => "invalid",
            Failure::Budget(_) => "budget_exceeded",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Budget(n) => format!("search budget exceeded after {n} nodes"),
            Failure::Usage(m) | Failure::Schema(m) | Failure::Invalid(m) | Failure::Io(m) => {
                m.clone()
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { explored } => Failure::Budget(explored),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(e) => e.into(),
            e => Failure::Schema(e.to_string()),
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        match e {
            PlanError::Format(e) => e.into(),
            PlanError::Core(e) => e.into(),
            PlanError::Io { .. } => Failure::Io(e.to_string()),
            PlanError::Step { .. } => Failure::Invalid(e.to_string()),
        }
    }
}

/// Command output: a document and the exit code it implies.
struct Outcome {
    doc: Value,
    code: i32,
}

impl Outcome {
    fn document(doc: &Document) -> Self {
        Outcome {
            doc: format::to_value(doc),
            code: 0,
        }
    }

    fn report(command: &str, ok: bool, fields: Value) -> Self {
        let mut map = Map::new();
        map.insert("kind".into(), json!("report"));
        map.insert("command".into(), json!(command));
        map.insert("ok".into(), json!(ok));
        if let Value::Object(f) = fields {
            map.extend(f);
        }
        Outcome {
            doc: Value::Object(map),
            code: if ok { 0 } else { 1 },
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => return emit_failure(stdout, "usage", &Failure::Usage(e.to_string())),
    };
    let name = command_name(&cli.command);
    match execute(&cli, stdin) {
        Ok(out) => {
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&out.doc).expect("json")
            );
            out.code
        }
        Err(f) => emit_failure(stdout, name, &f),
    }
}

fn emit_failure(stdout: &mut dyn Write, command: &str, f: &Failure) -> i32 {
    let doc = json!({
        "kind": "report",
        "command": command,
        "ok": false,
        "error": f.tag(),
        "message": f.message(),
    });
    let _ = writeln!(
        stdout,
        "{}",
        serde_json::to_string_pretty(&doc).expect("json")
    );
    f.code()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct { .. } => "construct",
        Command::Develop { .. } => "develop",
        Command::Order { .. } => "order",
        Command::Verify(_) => "verify",
        Command::Analyze(_) => "analyze",
        Command::Bounds { .. } => "bounds",
        Command::Search { .. } => "search",
        Command::Amd(_) => "amd",
        Command::Catalog { .. } => "catalog",
    }
}

fn read_text(input: Option<&str>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match input {
        None | Some("-") => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {path}: {e}")))
        }
    }
}

/// Reads a document from a path, standard input, or `catalog:NAME`.
fn read_input(input: Option<&str>, stdin: &mut dyn Read) -> Result<Document, Failure> {
    if let Some(name) = input.and_then(|s| s.strip_prefix("catalog:")) {
        return Ok(catalog_document(name)?);
    }
    Ok(format::parse(&read_text(input, stdin)?)?)
}

fn expect_system(doc: Document) -> Result<SplittingSystem, Failure> {
    match doc {
        Document::SplittingSystem(s) => Ok(s),
        other => Err(Failure::Usage(format!(
            "expected a splitting_system, got {}",
            other.kind()
        ))),
    }
}

fn distribution(arg: &str, m: usize) -> Result<SourceDistribution, Failure> {
    if arg == "uniform" {
        return Ok(SourceDistribution::uniform(m));
    }
    match read_input(Some(arg), &mut std::io::empty())? {
        Document::SourceDistribution(d) => Ok(d),
        other => Err(Failure::Usage(format!(
            "--dist: expected a source_distribution, got {}",
            other.kind()
        ))),
    }
}

fn budget(n: Option<u64>) -> SearchBudget {
    n.map_or_else(SearchBudget::default, |max_nodes| SearchBudget {
        max_nodes,
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Construct { plan } => {
            let text = read_text(plan.as_deref(), stdin)?;
            let base = plan
                .as_deref()
                .and_then(|p| Path::new(p).parent())
                .unwrap_or(Path::new("."));
            let doc = Plan::parse(&text)?.run(base)?;
            Ok(Outcome::document(&doc))
        }
        Command::Develop { input } => match read_input(input.as_deref(), stdin)? {
            Document::AmdCode(a) => Ok(Outcome::document(&Document::SplittingSystem(develop_amd(
                &a,
            )?))),
            Document::BaseBlocks(b) => {
                Ok(Outcome::document(&Document::SplittingSystem(b.develop()?)))
            }
            other => Err(Failure::Usage(format!("cannot develop a {}", other.kind()))),
        },
        Command::Order {
            method,
            budget: n,
            input,
        } => order(*method, budget(*n), read_input(input.as_deref(), stdin)?),
        Command::Verify(args) => verify(args, read_input(args.input.as_deref(), stdin)?),
        Command::Analyze(args) => {
            let sys = expect_system(read_input(args.input.as_deref(), stdin)?)?;
            analyze(args, cli.seed, &sys)
        }
        Command::Bounds { dist, input } => {
            let sys = expect_system(read_input(input.as_deref(), stdin)?)?;
            let d = distribution(dist, sys.m())?;
            let sub = substitution_probability(&sys, &d)?.value;
            let imp = impersonation_probability(&sys).value;
            let (blundo, simmons) = (blundo_bound(&sys), simmons_bound(&sys));
            let new = new_substitution_bound(&sys, &d)?;
            let ok = blundo
                <= substitution_probability(&sys, &SourceDistribution::uniform(sys.m()))?.value
                && new <= sub
                && simmons <= imp;
            Ok(Outcome::report(
                "bounds",
                ok,
                json!({
                    "blundo_bound": rational(blundo),
                    "new_substitution_bound": rational(new),
                    "substitution": rational(sub),
                    "simmons_bound": rational(simmons),
                    "impersonation": rational(imp),
                }),
            ))
        }
        Command::Search {
            v,
            m,
            c,
            group,
            budget: n,
        } => {
            let orders = if group.is_empty() {
                vec![*v as u64]
            } else {
                group.clone()
            };
            let group = AbelianGroup::new(orders)?;
            match search_base_blocks(*v, *m, *c, &group, budget(*n))? {
                Some(blocks) => Ok(Outcome::document(&Document::BaseBlocks(BaseBlocks {
                    group,
                    blocks,
                }))),
                None => Ok(Outcome::report(
                    "search",
                    false,
                    json!({ "result": "none" }),
                )),
            }
        }
        Command::Amd(args) => amd(args, read_input(args.input.as_deref(), stdin)?),
        Command::Catalog { name: Some(name) } => Ok(Outcome::document(&catalog_document(name)?)),
        Command::Catalog { name: None } => {
            let entries: Vec<Value> = CATALOG
                .iter()
                .map(|(n, d)| json!({ "name": n, "description": d }))
                .collect();
            Ok(Outcome::report(
                "catalog",
                true,
                json!({ "entries": entries, "untranscribed": UNTRANSCRIBED }),
            ))
        }
    }
}

fn order(method: Option<Method>, budget: SearchBudget, doc: Document) -> Result<Outcome, Failure> {
    let method = method.unwrap_or(match &doc {
        Document::BaseBlocks(_) => Method::Development,
        Document::Gdd(_) => Method::GddColoring,
        _ => Method::Exact,
    });
    match (method, doc) {
        (Method::Development, Document::BaseBlocks(b)) => Ok(Outcome::document(
            &Document::SplittingSystem(order_development(&b.blocks, &b.group)?),
        )),
        (Method::GddColoring, Document::Gdd(g)) => {
            Ok(Outcome::document(&Document::OrderedGdd(order_gdd(&g)?)))
        }
        (Method::Exact, Document::SplittingSystem(s)) => match reorder_exact(&s, budget)? {
            Some(s) => Ok(Outcome::document(&Document::SplittingSystem(s))),
            None => Ok(Outcome::report("order", false, json!({ "result": "none" }))),
        },
        (m, doc) => Err(Failure::Usage(format!(
            "--method {m:?} does not apply to a {}",
            doc.kind()
        ))),
    }
}

#[derive(Deserialize)]
struct ActionDoc {
    group: Vec<u64>,
    perms: Vec<Vec<usize>>,
}

fn load_action(path: &Path) -> Result<GroupAction, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?;
    let doc: ActionDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))?;
    let perms = doc
        .perms
        .into_iter()
        .map(Permutation::new)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupAction::from_table(
        AbelianGroup::new(doc.group)?,
        perms,
    )?)
}

fn verify(args: &VerifyArgs, doc: Document) -> Result<Outcome, Failure> {
    let mut fields = Map::new();
    let mut ok = true;
    let any = args.bibd || args.gdd || args.equitable || args.group_generated;
    match doc {
        Document::SplittingSystem(sys) => {
            if args.gdd {
                return Err(Failure::Usage("--gdd needs a gdd document".into()));
            }
            if args.bibd || !any {
                let r = check_splitting_bibd(&sys);
                ok &= r.is_bibd;
                fields.insert("is_bibd".into(), json!(r.is_bibd));
                fields.insert("lambda".into(), json!(r.lambda));
                fields.insert("c".into(), json!(r.c));
                fields.insert(
                    "count_range".into(),
                    json!([r.count_range.0, r.count_range.1]),
                );
                fields.insert(
                    "pair_witness".into(),
                    json!(r
                        .witness
                        .map(|w| json!({ "pair": [w.pair.0, w.pair.1], "count": w.count }))),
                );
                let rep: Vec<_> = r
                    .repeated_blocks
                    .iter()
                    .map(|&(a, b)| json!([a, b]))
                    .collect();
                fields.insert("repeated_blocks".into(), json!(rep));
            }
            if args.equitable {
                let r = check_equitably_ordered(&sys);
                ok &= r.ok;
                fields.insert("equitably_ordered".into(), json!(r.ok));
                fields.insert("equitable_witness".into(), json!(r.witness));
                fields.insert("position_counts".into(), json!(r.table));
            }
            if args.group_generated {
                let action = match &args.action {
                    Some(p) => load_action(p)?,
                    None => {
                        let orders = if args.group.is_empty() {
                            vec![sys.v() as u64]
                        } else {
                            args.group.clone()
                        };
                        GroupAction::translation(&AbelianGroup::new(orders)?)?
                    }
                };
                let r = check_group_generated(&sys, &action)?;
                ok &= r.ok;
                fields.insert("group_generated".into(), json!(r.ok));
                fields.insert("homomorphism".into(), json!(r.homomorphism));
                fields.insert("automorphisms".into(), json!(r.automorphisms));
                fields.insert("regular".into(), json!(r.regular));
                fields.insert("semiregular".into(), json!(r.semiregular));
                fields.insert("orbit_count".into(), json!(r.orbits.len()));
                fields.insert("action_witness".into(), action_witness(r.witness));
            }
        }
        Document::Gdd(g) => {
            if args.bibd || args.equitable || args.group_generated {
                return Err(Failure::Usage(
                    "only --gdd applies to an unordered gdd".into(),
                ));
            }
            gdd_fields(&g, &mut fields, &mut ok);
        }
        Document::OrderedGdd(o) => {
            if args.bibd || args.group_generated {
                return Err(Failure::Usage(
                    "only --gdd and --equitable apply to a gdd".into(),
                ));
            }
            if args.gdd || !args.equitable {
                gdd_fields(o.gdd(), &mut fields, &mut ok);
            }
            if args.equitable {
                let table = o.position_counts();
                let witness = table
                    .iter()
                    .position(|row| row.iter().any(|&c| c != row[0]));
                ok &= witness.is_none();
                fields.insert("equitably_ordered".into(), json!(witness.is_none()));
                fields.insert("equitable_witness".into(), json!(witness));
                fields.insert("position_counts".into(), json!(table));
            }
        }
        other => return Err(Failure::Usage(format!("cannot verify a {}", other.kind()))),
    }
    Ok(Outcome::report("verify", ok, Value::Object(fields)))
}

fn gdd_fields(g: &splitcode_core::designs::Gdd, fields: &mut Map<String, Value>, ok: &mut bool) {
    let r = check_gdd(g);
    *ok &= r.is_gdd;
    fields.insert("is_gdd".into(), json!(r.is_gdd));
    fields.insert("group_type".into(), json!(r.group_type.to_string()));
    let w = r.witness.map(|w| match w {
        GddViolation::SameGroup { block, x, y } => {
            json!({ "same_group": { "block": block, "x": x, "y": y } })
        }
        GddViolation::Coverage { x, y, count } => {
            json!({ "coverage": { "x": x, "y": y, "count": count } })
        }
    });
    fields.insert("gdd_witness".into(), json!(w));
}

fn action_witness(w: Option<ActionWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(ActionWitness::NotHomomorphism { g, h }) => {
            json!({ "not_homomorphism": { "g": g, "h": h } })
        }
        Some(ActionWitness::NotAutomorphism { g, block }) => {
            json!({ "not_automorphism": { "g": g, "block": block } })
        }
        Some(ActionWitness::NotRegular { from, to }) => {
            json!({ "not_regular": { "from": from, "to": to } })
        }
    }
}

fn rationals(rs: &[Rational]) -> Value {
    rs.iter().map(|&r| rational(r)).collect()
}

fn attack_fields(r: &AttackReport, group: Option<&AbelianGroup>) -> Value {
    let offset = |d: usize| group.map_or(json!(d), |g| element_json(g, d));
    let witness = match &r.witness {
        Witness::Strategy(s) => json!({ "strategy": s }),
        Witness::SourceStrategy { source, strategy } => {
            json!({ "source": source, "strategy": strategy })
        }
        Witness::Message(t) => json!({ "message": t }),
        Witness::Offset(d) => json!({ "offset": offset(*d) }),
        Witness::SourceOffset { source, offset: d } => {
            json!({ "source": source, "offset": offset(*d) })
        }
    };
    let mut f = json!({ "value": rational(r.value), "witness": witness });
    if let Some(ps) = &r.per_source {
        f["per_source"] = rationals(ps);
    }
    f
}

fn analyze(args: &AnalyzeArgs, seed: u64, sys: &SplittingSystem) -> Result<Outcome, Failure> {
    let dist = || distribution(&args.dist, sys.m());
    if args.any_distribution {
        let r = substitution_probability_any_distribution(sys)?;
        let mut f = attack_fields(&r, None);
        f["quantity"] = json!("substitution_any_distribution");
        return Ok(Outcome::report("analyze", true, f));
    }
    if args.impersonation {
        let mut f = attack_fields(&impersonation_probability(sys), None);
        f["quantity"] = json!("impersonation");
        return Ok(Outcome::report("analyze", true, f));
    }
    if args.secrecy {
        let d = if args.dist == "uniform" {
            None
        } else {
            Some(dist()?)
        };
        let r = perfect_secrecy(sys, d.as_ref())?;
        let w = r.witness.map(|(s, t)| json!({ "source": s, "message": t }));
        return Ok(Outcome::report(
            "analyze",
            r.holds,
            json!({ "quantity": "secrecy", "holds": r.holds, "universal": r.universal, "witness": w }),
        ));
    }
    if args.messages {
        let r = message_distribution(sys, &dist()?)?;
        let per: Vec<Value> = r.per_source.iter().map(|row| rationals(row)).collect();
        return Ok(Outcome::report(
            "analyze",
            true,
            json!({ "quantity": "messages", "per_source": per, "overall": rationals(&r.overall) }),
        ));
    }
    if args.tightness {
        let opts = TightnessOptions {
            seed,
            samples: args.samples,
            ..TightnessOptions::default()
        };
        let r = bound_tightness_check(sys, &dist()?, &opts)?;
        return Ok(Outcome::report(
            "analyze",
            r.tight,
            json!({
                "quantity": "tightness",
                "tight": r.tight,
                "optimum": rational(r.optimum),
                "bound": rational(r.bound),
                "all_derangements_equal": r.all_derangements_equal,
                "exhaustive": r.exhaustive,
                "strategies_checked": r.strategies_checked,
                "counterexample": r.counterexample,
                "seed": format!("{seed:#x}"),
            }),
        ));
    }
    let r = substitution_probability(sys, &dist()?)?;
    let mut f = attack_fields(&r, None);
    f["quantity"] = json!("substitution");
    Ok(Outcome::report("analyze", true, f))
}

fn amd(args: &AmdArgs, doc: Document) -> Result<Outcome, Failure> {
    let Document::AmdCode(code) = doc else {
        return Err(Failure::Usage(format!(
            "expected an amd_code, got {}",
            doc.kind()
        )));
    };
    let model = if args.strong {
        AmdModel::Strong
    } else {
        AmdModel::Weak
    };
    let r = match model {
        AmdModel::Weak => amd_weak_epsilon(&code)?,
        AmdModel::Strong => amd_strong_epsilon(&code)?,
    };
    let mut f = attack_fields(&r, Some(code.group()));
    f["model"] = json!(if args.strong { "strong" } else { "weak" });
    let mut ok = true;
    if args.r_optimality {
        let ro = amd_r_optimality(&code, model)?;
        ok = ro.r_optimal == Some(true);
        f["c_regular"] = json!(ro.c_regular);
        f["c"] = json!(ro.c);
        f["bound"] = json!(ro.bound.map(rational));
        f["r_optimal"] = json!(ro.r_optimal);
    }
    Ok(Outcome::report("amd", ok, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, Value) {
        let mut out = Vec::new();
        let argv = std::iter::once("splitcode").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out);
        (code, serde_json::from_slice(&out).expect("json output"))
    }

    #[test]
    fn substitution_from_stdin() {
        let doc = format::write(&catalog_document("acode5").unwrap());
        let (code, v) = call(&["analyze", "--substitution", "--dist", "uniform"], &doc);
        assert_eq!(code, 0);
        assert_eq!(v["value"], "1/2");
    }

    #[test]
    fn usage_errors() {
        let (code, v) = call(&["analyze", "--substitution", "--impersonation"], "");
        assert_eq!(code, 2);
        assert_eq!(v["error"], "usage");
        let (code, v) = call(&["verify"], "{\"kind\":\"splitting_system\"}");
        assert_eq!(code, 2);
        assert_eq!(v["error"], "schema");
        let (code, _) = call(
            &["search", "--v", "9", "--m", "2", "--c", "2", "--seed", "zz"],
            "",
        );
        assert_eq!(code, 2);
    }

    #[test]
    fn hex_seeds() {
        assert_eq!(parse_hex("0x5EED"), Ok(0x5EED));
        assert_eq!(parse_hex("ff"), Ok(255));
        assert!(parse_hex("0xg").is_err());
    }
}
