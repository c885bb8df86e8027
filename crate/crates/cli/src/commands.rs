use std::io::Write;

use perfpoly_core::circulant::{build_system, verify_rank_claims, RankReport};
use perfpoly_core::polynomial::{sigma_prime_power, sigma_split, split_roots};
use perfpoly_core::search::{
    classify_spec, registered_families, search_perfect, Classification, Limits, SearchOptions, SearchReport,
};
use perfpoly_core::{DensePoly, Error, ExtElement, FieldSpec, SplitPoly, SplitSpec};
use serde::Serialize;

use crate::{Command, SearchArgs};

/// A command failure with its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.to_string(), message: message.into(), code: 2 }
    }

    fn failed(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.to_string(), message: message.into(), code: 1 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.kind(), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage("io", e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

pub(crate) fn dispatch(command: &Command, json: bool, limits: Limits, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Check { p, spec } => check(*p, spec, json, limits, out),
        Command::Sigma { p, poly } => sigma(*p, poly, json, limits, out),
        Command::Matrix { p, order, grid } => matrix(*p, *order, *grid, json, out),
        Command::Search(args) => search(args, json, limits, out),
        Command::VerifyTheorem { primes } => verify_theorem(primes, json, out),
    }
}

/// Inline JSON if the argument looks like an array, otherwise a file path.
fn read_json_arg(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::usage("io", format!("{arg}: {e}")))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput {
    perfect: bool,
    #[serde(flatten)]
    classification: Classification,
}

fn check(p: u64, spec: &str, json: bool, limits: Limits, out: &mut dyn Write) -> CmdResult {
    let field = FieldSpec::new(p)?;
    let spec = SplitSpec::from_json(field, &read_json_arg(spec)?)?;
    let classification = classify_spec(&spec, &registered_families(&field), limits.degree_bound)?;
    let perfect = classification != Classification::NotPerfect;
    if json {
        return print_json(out, &CheckOutput { perfect, classification });
    }
    writeln!(out, "A = {}", spec.display())?;
    writeln!(out, "perfect: {}", if perfect { "yes" } else { "no" })?;
    writeln!(out, "class: {}", describe(&field, &classification))?;
    Ok(())
}

fn describe(field: &FieldSpec, c: &Classification) -> String {
    match c {
        Classification::UniformPower { order, power } => {
            format!("uniform-power (x^{} - x)^({order}*{}^{power} - 1)", field.q(), field.p)
        }
        Classification::FamilyShift { family, shift } => {
            format!("family-shift {family}(x - ({}))", field.format(*shift))
        }
        other => other.bucket().to_string(),
    }
}

#[derive(Serialize)]
struct SigmaFactor {
    gamma: ExtElement,
    exp: String,
    sigma: DensePoly,
    split: Option<SplitPoly>,
}

#[derive(Serialize)]
struct SigmaOutput {
    input: SplitPoly,
    factors: Vec<SigmaFactor>,
    expanded: DensePoly,
    split: Option<SplitPoly>,
    perfect: bool,
}

fn factor_if_split(field: &FieldSpec, f: &DensePoly) -> Result<Option<SplitPoly>, Failure> {
    match split_roots(field, f) {
        Ok(roots) => Ok(Some(SplitPoly::from_pairs(roots))),
        Err(Error::NotSplit) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn sigma(p: u64, poly: &str, json: bool, limits: Limits, out: &mut dyn Write) -> CmdResult {
    let field = FieldSpec::new(p)?;
    let input: SplitPoly = serde_json::from_str(&read_json_arg(poly)?)
        .map_err(|e| Failure::usage("invalid-input", format!("split polynomial JSON: {e}")))?;
    input.check(&field)?;
    let expanded = sigma_split(&field, &input, limits.degree_bound)?;
    let mut factors = Vec::new();
    for (&gamma, exp) in input.factors() {
        let h = usize::try_from(exp).expect("bounded by the degree check");
        let sigma = sigma_prime_power(&field, gamma, h);
        let split = factor_if_split(&field, &sigma)?;
        factors.push(SigmaFactor { gamma, exp: exp.to_string(), sigma, split });
    }
    let split = factor_if_split(&field, &expanded)?;
    let perfect = split.as_ref() == Some(&input);
    let output = SigmaOutput { input, factors, expanded, split, perfect };
    if json {
        return print_json(out, &output);
    }
    writeln!(out, "A = {}", output.input.display(&field))?;
    for f in &output.factors {
        let base = SplitPoly::from_pairs([(f.gamma, 1u32)]).display(&field);
        writeln!(out, "σ({base}^{}) = {}", f.exp, f.sigma.display(&field))?;
        if let Some(s) = &f.split {
            writeln!(out, "    = {}", s.display(&field))?;
        }
    }
    writeln!(out, "σ(A) = {}", output.expanded.display(&field))?;
    match &output.split {
        Some(s) => writeln!(out, "     = {}", s.display(&field))?,
        None => writeln!(out, "     (does not split over F_{})", field.q())?,
    }
    writeln!(out, "perfect: {}", if output.perfect { "yes" } else { "no" })?;
    Ok(())
}

#[derive(Serialize)]
struct MatrixOutput<'a> {
    a_table: &'a [Vec<i64>],
    matrix: &'a [Vec<i64>],
    #[serde(flatten)]
    report: &'a RankReport,
}

fn matrix(p: u64, order: u64, grid: bool, json: bool, out: &mut dyn Write) -> CmdResult {
    let field = FieldSpec::new(p)?;
    let sys = build_system(&field, order)?;
    if grid {
        write!(out, "{}", sys.grid_text())?;
        return Ok(());
    }
    let report = verify_rank_claims(&field, order)?;
    if json {
        return print_json(out, &MatrixOutput { a_table: &sys.first_rows, matrix: &sys.matrix, report: &report });
    }
    let width = sys.matrix.iter().flatten().map(|a| a.to_string().len()).max().unwrap_or(1);
    writeln!(out, "S for p = {p}, N = {order}:")?;
    for row in &sys.matrix {
        let cells: Vec<String> = row.iter().map(|a| format!("{a:>width$}")).collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    writeln!(out, "a-table (row j lists a_{{j,0}}, ..., a_{{j,p-1}}):")?;
    for (j, row) in sys.first_rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "  j = {j}: {}", cells.join(" "))?;
    }
    writeln!(out, "rank S = {}", report.rank_s)?;
    writeln!(out, "kernel basis:")?;
    for v in &report.kernel {
        let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
        writeln!(out, "  [{}]", cells.join(", "))?;
    }
    let blocks: Vec<String> = report.delta_tilde_block_ranks.iter().map(usize::to_string).collect();
    writeln!(out, "rank Δ̃ = {} (blocks: {})", report.rank_delta_tilde, blocks.join(" "))?;
    Ok(())
}

fn search(args: &SearchArgs, json: bool, limits: Limits, out: &mut dyn Write) -> CmdResult {
    let field = FieldSpec::new(args.p)?;
    let parallelism = match args.parallelism {
        Some(0) => return Err(Failure::usage("usage", "--parallelism must be positive")),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let options = SearchOptions {
        n_max: args.n_max,
        uniform_order: args.uniform_order,
        parallelism,
        prune: !args.no_prune,
        limits,
    };
    let outcome = search_perfect(&field, &options)?;
    let report = SearchReport::new(&field, &options, &outcome)?;
    let text = report.to_json_pretty();
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))?;
    }
    if json {
        writeln!(out, "{text}")?;
    } else {
        write_search_summary(&field, &report, out)?;
    }
    let other = report.count("other");
    if args.expect_classified && other > 0 {
        return Err(Failure::failed("unclassified", format!("{other} perfect specs fell in bucket \"other\"")));
    }
    Ok(())
}

fn write_search_summary(field: &FieldSpec, report: &SearchReport, out: &mut dyn Write) -> CmdResult {
    let s = &report.stats;
    writeln!(out, "F_{}: {} candidates, {} perfect", field.q(), s.candidates, s.perfect)?;
    writeln!(
        out,
        "screened out: {} by coefficients, {} by cosets, {} by multiplicities; {} dense checks",
        s.rejected_by_coefficients, s.rejected_by_cosets, s.rejected_by_multiplicities, s.dense_checks
    )?;
    for (bucket, n) in &report.counts {
        writeln!(out, "  {bucket:<18} {n}")?;
    }
    for (family, n) in &report.family_shifts {
        writeln!(out, "  distinct shifts of {family}: {n}")?;
    }
    for c in &report.specs {
        writeln!(out, "{}  [{}]", c.spec.display(), describe(field, &c.classification))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TheoremOutput {
    passed: bool,
    reports: Vec<RankReport>,
}

fn verify_theorem(primes: &[u64], json: bool, out: &mut dyn Write) -> CmdResult {
    let mut reports = Vec::new();
    for &p in primes {
        let field = FieldSpec::new(p)?;
        for order in field.orders() {
            reports.push(verify_rank_claims(&field, order)?);
        }
    }
    let passed = reports.iter().all(RankReport::passed);
    if json {
        print_json(out, &TheoremOutput { passed, reports: reports.clone() })?;
    } else {
        writeln!(out, "{:>3} {:>4}  {:<14} {:>6} {:>6}  result", "p", "N", "branch", "rank S", "rank Δ̃")?;
        for r in &reports {
            let branch = serde_json::to_value(r.branch).expect("serializes");
            let status = if r.passed() {
                "pass".to_string()
            } else {
                let tags: Vec<&str> = r.failures().map(|c| c.tag).collect();
                format!("FAIL ({})", tags.join(", "))
            };
            writeln!(
                out,
                "{:>3} {:>4}  {:<14} {:>6} {:>6}  {status}",
                r.p,
                r.order,
                branch.as_str().unwrap_or_default(),
                r.rank_s,
                r.rank_delta_tilde
            )?;
        }
    }
    if passed {
        Ok(())
    } else {
        let failed = reports.iter().filter(|r| !r.passed()).count();
        Err(Failure::failed("verification-failed", format!("{failed} (p, N) pairs failed")))
    }
}
