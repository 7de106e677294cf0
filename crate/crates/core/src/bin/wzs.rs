use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wzs::arith::{lemma22_check, lemma41_counting_check, lemma53_check};
use wzs::bounds::{bound_report, thm13_bounds};
use wzs::constructions::{binary_basis_sequence, example_sequence, padded_witness, Construction};
use wzs::group::groups_up_to;
use wzs::harness::{cached_invariant, report_paper_table, ReportOptions, ResultCache, RunRecord};
use wzs::parse::{
    format_sequence, parse_group, parse_list, parse_sequence, parse_weights, sequence_json,
};
use wzs::reach::{extract_witness, reach_table};
use wzs::search::theorems::{
    verify_lemma42, verify_thm11, verify_thm13_upper, verify_thm41, verify_thm43, Thm41Part,
};
use wzs::search::{compute_invariant, Mode, UniversalResult, Verdict};
use wzs::setsys::{
    check_separation, check_uniform_l, find_separating_degree, frw_uniform_bound,
    max_family_exhaustive, prime_power_bound, IntersectionProfile, Polynomial, SetFamily,
    UniformCheck, DEFAULT_VALUATION_CAP,
};
use wzs::{Error, Group, InvariantKind, Result, SearchBudget, Status};

const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wzs",
    version,
    about = "Weighted zero-sum invariants of finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// No progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a group.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Weighted subsequence sums of a sequence, per length.
    Reach {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "pm1")]
        weights: String,
        /// Sequence text, or a file holding it.
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        max_length: Option<usize>,
        /// Also extract an explicit zero-sum of this length.
        #[arg(long)]
        zero_witness: Option<usize>,
    },
    /// Compute D, s or E.
    Invariant {
        #[arg(long)]
        kind: InvariantKind,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "pm1")]
        weights: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Claimed value: refuted by a sampled witness, or checked against an exact result.
        #[arg(long)]
        candidate: Option<usize>,
        /// Skip the result cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Check a theorem over all (or sampled) sequences.
    Verify(VerifyArgs),
    /// Build and check an explicit extremal sequence.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        ks: Option<String>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "pm1")]
        weights: String,
        /// Zero-sum-free sequence to pad (text or file).
        #[arg(long)]
        witness: Option<String>,
    },
    /// Closed-form bounds for one group, or a table over `Z_n^rank`.
    Bound {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "pm1")]
        weights: String,
        /// Range `a..b` of n, for the table mode.
        #[arg(long)]
        n_range: Option<String>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Set-system bounds, checks and exact maxima.
    Setsys {
        #[command(subcommand)]
        cmd: SetsysCmd,
    },
    /// Recompute the reference value table.
    Report {
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        max_cyclic: u64,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// exhaustive, random or construction.
    #[arg(long, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    node_cap: Option<u64>,
    #[arg(long)]
    time_cap_ms: Option<u64>,
}

impl SearchArgs {
    fn budget(&self, workers: Option<usize>) -> SearchBudget {
        SearchBudget {
            mode: self.mode,
            node_cap: self.node_cap,
            time_cap_ms: self.time_cap_ms,
            samples: self.samples,
            seed: self.seed,
            workers,
            candidate: None,
        }
    }
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// 1.1, 1.3, 2.2, 4.1, 4.2, 4.3 or 5.3.
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value = "pm1")]
    weights: String,
    /// Exponents k, comma separated.
    #[arg(long, default_value = "1")]
    k: String,
    #[arg(long)]
    part: Option<Thm41Part>,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Primes, comma separated.
    #[arg(long, default_value = "2,3,5,7,11,13")]
    primes: String,
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    #[arg(long, default_value_t = 2000)]
    m_max: i64,
    #[arg(long, default_value_t = 30)]
    n_max: u64,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Example,
    BinaryBasis,
    Padded,
}

#[derive(Subcommand)]
enum SetsysCmd {
    /// Uniform and prime-power family bounds.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long = "L", default_value = "")]
        l: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "K", default_value = "")]
        k_set: String,
        /// Largest separating degree tried before the fallback.
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Check a family file against size k and intersections L.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "L", default_value = "")]
        l: String,
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact maximum L-intersecting k-uniform family.
    Maxfam {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "L", default_value = "")]
        l: String,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Check that a product of (x - r) separates alpha from L + qZ.
    Separate {
        #[arg(long, default_value_t = 0)]
        alpha: i64,
        #[arg(long = "L")]
        l: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        /// Roots r; omitted means search by degree.
        #[arg(long)]
        roots: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
}

struct Outcome {
    record: RunRecord,
    csv: Option<String>,
    markdown: Option<String>,
    code: u8,
}

impl Outcome {
    fn new(record: RunRecord) -> Self {
        Outcome {
            record,
            csv: None,
            markdown: None,
            code: 0,
        }
    }
}

struct Ctx {
    workers: Option<usize>,
    quiet: bool,
}

impl Ctx {
    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("wzs: {msg}");
        }
    }
}

fn text_or_file(s: &str) -> Result<String> {
    let p = Path::new(s);
    if p.is_file() {
        Ok(std::fs::read_to_string(p)?)
    } else {
        Ok(s.to_string())
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::BadParameters(format!("--{flag} is required here")))
}

fn set_of(text: &str) -> Result<BTreeSet<u64>> {
    Ok(parse_list::<u64>(text)?.into_iter().collect())
}

fn verdict_code(cases: &[UniversalResult]) -> u8 {
    if cases
        .iter()
        .any(|c| matches!(c.verdict, Verdict::Counterexample { .. }))
    {
        EXIT_COUNTEREXAMPLE
    } else if cases.iter().any(|c| c.verdict == Verdict::BudgetExhausted) {
        EXIT_BUDGET
    } else {
        0
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Counterexample { .. } => "counterexample",
        Verdict::BudgetExhausted => "budget-exhausted",
    }
}

fn cases_csv(cases: &[UniversalResult]) -> String {
    let mut s =
        String::from("group,weights,length,verdict,covered,total,samples,seed,nodes,wall_ms\n");
    for c in cases {
        s.push_str(&format!(
            "\"{}\",\"{}\",{},{},{},{},{},{},{},{}\n",
            c.group.canonical(),
            c.weights.canonical(),
            c.length,
            verdict_name(&c.verdict),
            c.covered.clone().unwrap_or_default(),
            c.total.clone().unwrap_or_default(),
            c.samples.map_or(String::new(), |v| v.to_string()),
            c.seed.map_or(String::new(), |v| v.to_string()),
            c.stats.nodes,
            c.stats.wall_ms
        ));
    }
    s
}

/// Counterexample sequences rendered in coordinate form next to the raw result.
fn cases_json(cases: &[UniversalResult]) -> Result<Value> {
    let mut out = Vec::new();
    for c in cases {
        let mut v = serde_json::to_value(c)?;
        if let Verdict::Counterexample { sequence } = &c.verdict {
            v["counterexample_text"] = format_sequence(&c.group, sequence)?.into();
        }
        out.push(v);
    }
    Ok(Value::Array(out))
}

fn cmd_group(text: &str) -> Result<Outcome> {
    let g = parse_group(text)?;
    let t13 = thm13_bounds(&g);
    let out = json!({
        "canonical": g.canonical(),
        "factors": g.factors(),
        "order": g.order(),
        "exponent": g.exponent(),
        "rank": g.rank(),
        "primary_decomposition": g.primary_decomposition(),
        "p_group": g.is_p_group(),
        "elementary_2_group": g.is_elementary_2_group(),
        "d_star": wzs::bounds::d_star(&g).ok(),
        "pm1_D_bounds": [t13.d_lower, t13.d_upper],
    });
    let mut rec = RunRecord::new("group", json!({ "group": text }), None);
    rec.outputs = out;
    Ok(Outcome::new(rec))
}

fn cmd_reach(
    group: &str,
    weights: &str,
    sequence: &str,
    max_length: Option<usize>,
    zw: Option<usize>,
) -> Result<Outcome> {
    let g = parse_group(group)?;
    let w = parse_weights(weights, g.exponent())?;
    let seq = parse_sequence(&g, &text_or_file(sequence)?)?;
    let max_len = max_length.unwrap_or(seq.len()).min(seq.len());
    let table = reach_table(&g, &seq, &w, max_len)?;
    let mut out = json!({
        "group": g.canonical(),
        "weights": w.canonical(),
        "sequence": format_sequence(&g, &seq)?,
        "max_length": max_len,
        "layers": table.layers(),
        "zero_lengths": table.zero_lengths(),
    });
    if let Some(n) = zw {
        let wit = extract_witness(&g, &seq, &w, n, 0)?;
        if !wit.verify(&g, &seq, &w, n) {
            return Err(Error::WitnessInvalid);
        }
        let terms: Vec<Value> = wit
            .terms
            .iter()
            .map(|&(i, a)| Ok(json!({ "element": g.element_of(i)?.coords(), "weight": a })))
            .collect::<Result<_>>()?;
        out["zero_witness"] = Value::Array(terms);
    }
    let mut rec = RunRecord::new(
        "reach",
        json!({ "group": g.canonical(), "weights": w.canonical(), "sequence": sequence_json(&g, &seq)?, "max_length": max_len }),
        None,
    );
    rec.outputs = out;
    let mut o = Outcome::new(rec);
    let mut csv = String::from("length,elements\n");
    for (l, layer) in table.layers().iter().enumerate() {
        let items: Vec<String> = layer.iter().map(|i| i.to_string()).collect();
        csv.push_str(&format!("{l},\"{}\"\n", items.join(" ")));
    }
    o.csv = Some(csv);
    Ok(o)
}

#[allow(clippy::too_many_arguments)]
fn cmd_invariant(
    ctx: &Ctx,
    kind: InvariantKind,
    group: &str,
    weights: &str,
    search: &SearchArgs,
    candidate: Option<usize>,
    no_cache: bool,
) -> Result<Outcome> {
    let g = parse_group(group)?;
    let w = parse_weights(weights, g.exponent())?;
    let mut budget = search.budget(ctx.workers);
    budget.candidate = candidate;
    ctx.progress(&format!(
        "{kind} over {} with weights {{{}}}, {:?}",
        g.canonical(),
        w.canonical(),
        budget.mode
    ));
    let cache = if no_cache
        || budget.mode != Mode::Exhaustive
        || budget.node_cap.is_some()
        || budget.time_cap_ms.is_some()
    {
        None
    } else {
        ResultCache::from_env()?
    };
    let r = if cache.is_some() {
        cached_invariant(cache.as_ref(), &g, &w, kind, &budget)?
    } else {
        compute_invariant(&g, &w, kind, &budget)?
    };
    ctx.progress(&format!(
        "value {} ({:?}), {} nodes",
        r.value, r.status, r.stats.nodes
    ));
    let mut out = serde_json::to_value(&r)?;
    out["witness_text"] = format_sequence(&g, &r.witness)?.into();
    let mut rec = RunRecord::new(
        "invariant",
        json!({
            "kind": kind, "group": g.canonical(), "weights": w.canonical(), "mode": budget.mode,
            "samples": budget.samples, "node_cap": budget.node_cap, "time_cap_ms": budget.time_cap_ms,
            "candidate": candidate,
        }),
        (budget.mode == Mode::Randomized).then_some(budget.seed),
    );
    rec.outputs = out;
    rec.verdicts.push(format!("{:?}", r.status));
    // an exact value settles the candidate either way
    let exact_miss = r.is_exact() && candidate.is_some_and(|c| c != r.value);
    if exact_miss {
        rec.verdicts.push(format!(
            "candidate {} refuted by exact value {}",
            candidate.unwrap_or(0),
            r.value
        ));
    }
    let mut o = Outcome::new(rec);
    o.code = match r.status {
        Status::RefutedCandidate => EXIT_COUNTEREXAMPLE,
        _ if exact_miss => EXIT_COUNTEREXAMPLE,
        _ if r.stats.budget_exhausted => EXIT_BUDGET,
        _ => 0,
    };
    o.csv = Some(format!(
        "group,weights,kind,value,status,nodes,wall_ms\n\"{}\",\"{}\",{},{},{:?},{},{}\n",
        g.canonical(),
        w.canonical(),
        kind,
        r.value,
        r.status,
        r.stats.nodes,
        r.stats.wall_ms
    ));
    Ok(o)
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Outcome> {
    let budget = a.search.budget(ctx.workers);
    let seed = (budget.mode == Mode::Randomized).then_some(budget.seed);
    let mut params = json!({ "theorem": a.theorem, "mode": budget.mode, "samples": budget.samples,
        "node_cap": budget.node_cap, "time_cap_ms": budget.time_cap_ms });
    let mut cases: Vec<UniversalResult> = Vec::new();
    let mut extra = json!({});
    let mut code = 0;
    ctx.progress(&format!("verifying {} ({:?})", a.theorem, budget.mode));
    match a.theorem.as_str() {
        "1.1" => {
            let g = parse_group(&need(a.group.clone(), "group")?)?;
            let w = parse_weights(&a.weights, g.exponent())?;
            params["group"] = g.canonical().into();
            params["weights"] = w.canonical().into();
            params["k"] = a.k.clone().into();
            for k in parse_list::<u32>(&a.k)? {
                ctx.progress(&format!("k = {k}"));
                cases.push(verify_thm11(&g, &w, k, &budget)?);
            }
        }
        "1.3" => {
            let groups: Vec<Group> = match (&a.group, a.max_order) {
                (Some(t), _) => vec![parse_group(t)?],
                (None, Some(m)) => groups_up_to(m),
                (None, None) => {
                    return Err(Error::BadParameters(
                        "--group or --max-order is required".into(),
                    ))
                }
            };
            params["groups"] = groups
                .iter()
                .map(|g| g.canonical())
                .collect::<Vec<_>>()
                .into();
            let mut lower = Vec::new();
            for g in &groups {
                ctx.progress(&format!("group {}", g.canonical()));
                let c = binary_basis_sequence(g)?;
                lower.push(
                    json!({ "group": g.canonical(), "zero_sum_free_length": c.sequence.len(),
                    "sequence": format_sequence(g, &c.sequence)?, "verified": c.verified }),
                );
                cases.push(verify_thm13_upper(g, &budget)?);
            }
            extra["lower_bound_constructions"] = Value::Array(lower);
        }
        "2.2" => {
            let primes = parse_list::<u64>(&a.primes)?;
            params["primes"] = a.primes.clone().into();
            params["k_max"] = a.k_max.into();
            params["m_max"] = a.m_max.into();
            let (mut checked, mut failures) = (0u64, Vec::new());
            for &p in &primes {
                for k in 0..=a.k_max {
                    for m in -a.m_max..=a.m_max {
                        let c = lemma22_check(m, p, k)?;
                        checked += 1;
                        if !c.equal && failures.len() < 20 {
                            failures.push(json!({ "m": m, "p": p, "k": k, "check": c }));
                        }
                    }
                }
            }
            if !failures.is_empty() {
                code = EXIT_COUNTEREXAMPLE;
            }
            extra = json!({ "checked": checked, "failures": failures });
        }
        "4.1" => {
            let part = need(a.part, "part")?;
            let m = need(a.max_order, "max-order")?;
            params["part"] = json!(part);
            params["max_order"] = m.into();
            let r = verify_thm41(part, m, &budget)?;
            extra["skipped"] = r
                .skipped
                .iter()
                .map(|(g, why)| json!({ "group": g.canonical(), "reason": why }))
                .collect::<Vec<_>>()
                .into();
            cases = r.cases;
        }
        "4.2" => {
            cases.push(verify_lemma42(&budget)?);
            extra["counting"] = serde_json::to_value(lemma41_counting_check())?;
        }
        "4.3" => {
            let n = need(a.n, "n")?;
            params["n"] = n.into();
            cases.push(verify_thm43(n, &budget)?);
        }
        "5.3" => {
            params["n_max"] = a.n_max.into();
            params["m_max"] = a.m_max.into();
            let (mut checked, mut failures) = (0u64, Vec::new());
            for n in 1..=a.n_max {
                for m in 1..=a.m_max.max(1) as u64 {
                    let c = lemma53_check(n, m)?;
                    checked += 1;
                    if !c.holds() {
                        failures.push(serde_json::to_value(c)?);
                    }
                }
            }
            if !failures.is_empty() {
                code = EXIT_COUNTEREXAMPLE;
            }
            extra = json!({ "checked": checked, "failures": failures });
        }
        t => return Err(Error::BadParameters(format!("unknown theorem {t:?}"))),
    }
    code = code.max(verdict_code(&cases));
    let holds = code == 0;
    ctx.progress(&format!(
        "{} case(s), {}",
        cases.len(),
        if holds { "holds" } else { "does not hold" }
    ));
    let mut rec = RunRecord::new("verify", params, seed);
    rec.verdicts = cases
        .iter()
        .map(|c| verdict_name(&c.verdict).to_string())
        .collect();
    rec.outputs = json!({ "holds": holds, "cases": cases_json(&cases)?, "details": extra });
    let mut o = Outcome::new(rec);
    o.code = code;
    o.csv = Some(cases_csv(&cases));
    Ok(o)
}

fn construction_output(c: &Construction) -> Result<Value> {
    let mut v = serde_json::to_value(c)?;
    v["sequence_text"] = format_sequence(&c.group, &c.sequence)?.into();
    v["sequence_json"] = sequence_json(&c.group, &c.sequence)?;
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    kind: ConstructKind,
    p: Option<u64>,
    ks: Option<String>,
    l: Option<u64>,
    group: Option<String>,
    weights: &str,
    witness: Option<String>,
) -> Result<Outcome> {
    let c = match kind {
        ConstructKind::Example => {
            let ks = parse_list::<u32>(&need(ks, "ks")?)?;
            example_sequence(need(p, "p")?, &ks, need(l, "l")?)?
        }
        ConstructKind::BinaryBasis => binary_basis_sequence(&parse_group(&need(group, "group")?)?)?,
        ConstructKind::Padded => {
            let g = parse_group(&need(group, "group")?)?;
            let w = parse_weights(weights, g.exponent())?;
            let s = parse_sequence(&g, &text_or_file(&need(witness, "witness")?)?)?;
            padded_witness(&g, &w, &s)?
        }
    };
    let mut rec = RunRecord::new(
        "construct",
        json!({ "recipe": c.recipe, "group": c.group.canonical() }),
        None,
    );
    rec.verdicts
        .push(if c.verified { "verified" } else { "unverified" }.into());
    rec.outputs = construction_output(&c)?;
    Ok(Outcome::new(rec))
}

fn cmd_bound(
    group: Option<String>,
    weights: &str,
    n_range: Option<String>,
    rank: usize,
) -> Result<Outcome> {
    let groups: Vec<Group> = match (group, n_range) {
        (Some(g), None) => vec![parse_group(&g)?],
        (None, Some(r)) => {
            let (a, b) = r
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("range {r:?} is not a..b")))?;
            let (a, b): (u64, u64) = (
                a.trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("{a:?}: {e}")))?,
                b.trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("{b:?}: {e}")))?,
            );
            (a.max(2)..=b)
                .map(|n| Group::power(n, rank))
                .collect::<Result<_>>()?
        }
        _ => {
            return Err(Error::BadParameters(
                "give exactly one of --group and --n-range".into(),
            ))
        }
    };
    let mut reports = Vec::new();
    let mut csv = String::from("group,weights,bound,value,applicable,reason\n");
    for g in &groups {
        let w = parse_weights(weights, g.exponent())?;
        let r = bound_report(g, &w)?;
        for b in &r.bounds {
            csv.push_str(&format!(
                "\"{}\",\"{}\",{},{},{},\"{}\"\n",
                g.canonical(),
                w.canonical(),
                b.name,
                b.value.map_or(String::new(), |v| v.to_string()),
                b.applicable,
                b.reason.replace('"', "'")
            ));
        }
        reports.push(r);
    }
    let mut rec = RunRecord::new(
        "bound",
        json!({ "groups": groups.iter().map(|g| g.canonical()).collect::<Vec<_>>(), "weights": weights }),
        None,
    );
    rec.outputs = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    let mut o = Outcome::new(rec);
    o.csv = Some(csv);
    Ok(o)
}

fn cmd_setsys(ctx: &Ctx, cmd: SetsysCmd) -> Result<Outcome> {
    match cmd {
        SetsysCmd::Bound {
            n,
            l,
            q,
            p,
            k_set,
            max_degree,
        } => {
            let l_set = set_of(&l)?;
            let mut out = json!({ "n": n, "L": l_set, "uniform_bound": frw_uniform_bound(n, l_set.len() as u64).to_string() });
            if let (Some(q), Some(p)) = (q, p) {
                let ks = set_of(&k_set)?;
                let mut degree = 0;
                let mut per_alpha = Vec::new();
                for &alpha in &ks {
                    let d = find_separating_degree(alpha as i64, &l_set, q, p, max_degree)?;
                    degree = degree.max(d.degree);
                    per_alpha.push(json!({ "alpha": alpha, "separating": d }));
                }
                let profile = IntersectionProfile::new(p, q, ks, l_set.clone(), degree)?;
                out["prime_power"] = json!({
                    "profile": profile,
                    "per_alpha": per_alpha,
                    "bound": prime_power_bound(n, &profile).to_string(),
                });
            }
            let mut rec = RunRecord::new(
                "setsys bound",
                json!({ "n": n, "L": l, "q": q, "p": p, "K": k_set }),
                None,
            );
            rec.outputs = out;
            Ok(Outcome::new(rec))
        }
        SetsysCmd::Check { n, k, l, family } => {
            let l_set: BTreeSet<usize> = parse_list::<usize>(&l)?.into_iter().collect();
            let fam = SetFamily::parse(n, &std::fs::read_to_string(&family)?)?;
            let verdict = check_uniform_l(&fam, k, &l_set);
            let mut rec = RunRecord::new(
                "setsys check",
                json!({ "n": n, "k": k, "L": l_set, "family": fam.members }),
                None,
            );
            let holds = verdict == UniformCheck::Holds;
            rec.verdicts
                .push(if holds { "holds" } else { "violation" }.into());
            rec.outputs = json!({ "members": fam.len(), "check": verdict,
                "uniform_bound": frw_uniform_bound(n as u64, l_set.len() as u64).to_string() });
            let mut o = Outcome::new(rec);
            o.code = if holds { 0 } else { EXIT_COUNTEREXAMPLE };
            Ok(o)
        }
        SetsysCmd::Maxfam { n, k, l, node_cap } => {
            let l_set: BTreeSet<usize> = parse_list::<usize>(&l)?.into_iter().collect();
            let budget = SearchBudget {
                node_cap,
                ..SearchBudget::exhaustive()
            };
            ctx.progress(&format!("maximum family n={n} k={k} L={l_set:?}"));
            let r = max_family_exhaustive(n, k, &l_set, &budget)?;
            let bound = frw_uniform_bound(n as u64, l_set.len() as u64);
            let within = num_bigint::BigUint::from(r.size) <= bound;
            let mut rec = RunRecord::new(
                "setsys maxfam",
                json!({ "n": n, "k": k, "L": l_set, "node_cap": node_cap }),
                None,
            );
            rec.verdicts
                .push(if r.exact { "exact" } else { "budget-exhausted" }.into());
            rec.outputs = json!({ "result": r, "uniform_bound": bound.to_string(), "within_bound": within,
                "family_text": r.family.to_text() });
            let mut o = Outcome::new(rec);
            o.code = if !within {
                EXIT_COUNTEREXAMPLE
            } else if !r.exact {
                EXIT_BUDGET
            } else {
                0
            };
            o.csv = Some(format!(
                "n,k,L,size,exact,uniform_bound\n{n},{k},\"{l}\",{},{},{bound}\n",
                r.size, r.exact
            ));
            Ok(o)
        }
        SetsysCmd::Separate {
            alpha,
            l,
            q,
            p,
            roots,
            max_degree,
        } => {
            let l_set = set_of(&l)?;
            let out = match roots {
                Some(r) => {
                    let f = Polynomial::from_roots(&parse_list::<i64>(&r)?);
                    let cert = check_separation(&f, alpha, &l_set, q, p, DEFAULT_VALUATION_CAP)?;
                    json!({ "polynomial": f, "separates": cert.is_some(), "certificate": cert })
                }
                None => {
                    serde_json::to_value(find_separating_degree(alpha, &l_set, q, p, max_degree)?)?
                }
            };
            let mut rec = RunRecord::new(
                "setsys separate",
                json!({ "alpha": alpha, "L": l_set, "q": q, "p": p }),
                None,
            );
            rec.outputs = out;
            Ok(Outcome::new(rec))
        }
    }
}

fn cmd_report(ctx: &Ctx, samples: u64, seed: u64, max_cyclic: u64) -> Result<Outcome> {
    let cache = ResultCache::from_env()?;
    ctx.progress("recomputing the reference table");
    let opts = ReportOptions {
        samples,
        seed,
        max_cyclic,
        workers: ctx.workers,
    };
    let t = report_paper_table(cache.as_ref(), &opts)?;
    let mut rec = RunRecord::new(
        "report",
        json!({ "samples": samples, "max_cyclic": max_cyclic }),
        Some(seed),
    );
    rec.verdicts.push(
        if t.all_match() {
            "all-match"
        } else {
            "mismatch"
        }
        .into(),
    );
    rec.outputs = serde_json::to_value(&t)?;
    let mut o = Outcome::new(rec);
    o.code = if t.all_match() {
        0
    } else {
        EXIT_COUNTEREXAMPLE
    };
    o.csv = Some(t.to_csv());
    o.markdown = Some(t.to_markdown());
    Ok(o)
}

fn run(cli: Cli) -> Result<Outcome> {
    let ctx = Ctx {
        workers: cli.workers,
        quiet: cli.quiet,
    };
    let start = Instant::now();
    let mut o = match cli.cmd {
        Cmd::Group { group } => cmd_group(&group),
        Cmd::Reach {
            group,
            weights,
            sequence,
            max_length,
            zero_witness,
        } => cmd_reach(&group, &weights, &sequence, max_length, zero_witness),
        Cmd::Invariant {
            kind,
            group,
            weights,
            search,
            candidate,
            no_cache,
        } => cmd_invariant(&ctx, kind, &group, &weights, &search, candidate, no_cache),
        Cmd::Verify(a) => cmd_verify(&ctx, &a),
        Cmd::Construct {
            kind,
            p,
            ks,
            l,
            group,
            weights,
            witness,
        } => cmd_construct(kind, p, ks, l, group, &weights, witness),
        Cmd::Bound {
            group,
            weights,
            n_range,
            rank,
        } => cmd_bound(group, &weights, n_range, rank),
        Cmd::Setsys { cmd } => cmd_setsys(&ctx, cmd),
        Cmd::Report {
            samples,
            seed,
            max_cyclic,
        } => cmd_report(&ctx, samples, seed, max_cyclic),
    }?;
    o.record.wall_ms = start.elapsed().as_millis() as u64;
    Ok(o)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    let emit = cli.emit.clone();
    let o = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&o.record).map_err(Error::from),
        Format::Csv => o.csv.clone().ok_or_else(|| {
            Error::BadParameters("CSV output is not available for this command".into())
        }),
        Format::Markdown => o.markdown.clone().ok_or_else(|| {
            Error::BadParameters("markdown output is only available for report".into())
        }),
    };
    match text.and_then(|t| write_output(emit.as_deref(), &t)) {
        Ok(()) => ExitCode::from(o.code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
