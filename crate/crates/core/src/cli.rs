//! Command-line front end. Every command builds a JSON document; the text
//! format is rendered from the same values.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    annihilator, check_identity, derivations, fingerprint, format_vector, power_filtration, IdentityCheck,
    IdentitySpec, StructureConstants,
};
use crate::catalog::{self, verify_all, Catalog, CatalogEntry, Check, SuiteConfig};
use crate::cohomology::{self, CocycleForm};
use crate::degeneration::{rset_membership, verify_certificate, Expr, Mode, RSet, Verdict, VerifyConfig};
use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, GaussianRational};

#[derive(Parser, Debug)]
#[command(
    name = "zinbiel",
    version,
    about = "Exact checks on finite-dimensional Zinbiel algebras"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Degeneration verification tier.
    #[arg(long, global = true, default_value = "auto")]
    pub mode: Mode,
    /// Bits of precision for the numeric tier.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Whole powers of t kept by the series tier.
    #[arg(long, global = true, default_value_t = 16)]
    pub truncation: i64,
    /// Numeric sample points t = 10^-k, as `2..8` or `2,4,6`.
    #[arg(long, global = true, default_value = "2..8", value_parser = parse_ladder)]
    pub ladder: Ladder,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for `catalog verify-all`; 0 picks a default.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory holding the catalog tables instead of the built-in copy.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder(pub Vec<u32>);

fn parse_ladder(s: &str) -> std::result::Result<Ladder, String> {
    let bad = || format!("bad ladder `{s}`");
    let ks: Vec<u32> = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u32, u32) = (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            );
            (a..=b).collect()
        }
        None => s
            .split(',')
            .map(|k| k.trim().parse().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?,
    };
    if ks.len() < 2 {
        return Err(format!("ladder `{s}` needs at least two points"));
    }
    Ok(Ladder(ks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl CliConfig {
    pub fn verify(&self) -> VerifyConfig {
        VerifyConfig {
            mode: self.mode,
            precision: self.precision,
            truncation: self.truncation,
            ladder: self.ladder.0.clone(),
            ..VerifyConfig::default()
        }
    }

    fn catalog(&self) -> Result<Catalog> {
        match &self.data {
            Some(dir) => Catalog::load_dir(dir),
            None => Ok(Catalog::shipped().clone()),
        }
    }
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Catalog id, optionally with parameters: `Z_02^3`, `N_04^{1/2}`, `zero`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    algebra: Option<String>,
    /// Algebra file in the table format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Parameter values for a parametric algebra file, comma separated.
    #[arg(long, requires = "file")]
    param: Option<String>,
    /// Dimension of the zero algebra.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks a defining identity on basis elements.
    Identity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// zinbiel, symmetric-zinbiel, two-step-nilpotent, associative, ...
        #[arg(long, default_value = "zinbiel")]
        id: IdentitySpec,
    },
    /// Basis of the annihilator.
    Ann {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Dimensions of the powers A^k.
    Powers {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Derivation algebra and orbit dimension.
    Der {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Second cohomology with representatives.
    H2 {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Central extension by cocycles such as `Δ12+Δ21`.
    Extend {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// One per added dimension.
        #[arg(long, required = true)]
        cocycle: Vec<String>,
    },
    /// Action of an automorphism on cocycles.
    Act {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, required = true)]
        cocycle: Vec<String>,
        /// Matrix rows separated by `;`, entries by `,`.
        #[arg(long)]
        phi: String,
    },
    /// Basis-independent invariants.
    Fingerprint {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Verifies degeneration certificates.
    Degenerate {
        #[arg(long)]
        cert: PathBuf,
        /// Value of the certificate's free symbol; sampled when omitted.
        #[arg(long)]
        free: Option<String>,
    },
    /// Borel-stable set evidence.
    Rset {
        /// Runs the catalog row whose source is this id.
        #[arg(long, conflicts_with_all = ["rset", "algebra", "file"])]
        row: Option<String>,
        /// Set description to test one algebra against.
        #[arg(long, requires = "algebra_spec")]
        rset: Option<PathBuf>,
        #[arg(long = "algebra", id = "algebra_spec")]
        algebra: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Catalog queries and the full table suite.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Ids in table order.
    List {
        /// Keeps entries carrying every given tag.
        #[arg(long)]
        tag: Vec<String>,
    },
    /// Structure constants of an entry.
    Get {
        #[arg(long)]
        algebra: String,
    },
    /// Runs the suite of table checks.
    VerifyAll {
        /// Restricts the run to the named checks.
        #[arg(long)]
        check: Vec<Check>,
    },
}

/// A finished command: its document, its text rendering and, for checks,
/// whether it passed.
struct Outcome {
    verdict: Option<bool>,
    json: String,
    text: String,
}

impl Outcome {
    fn info(value: Value, text: String) -> Outcome {
        Outcome {
            verdict: None,
            json: pretty(&value),
            text,
        }
    }

    fn check(passed: bool, value: Value, text: String) -> Outcome {
        Outcome {
            verdict: Some(passed),
            json: pretty(&value),
            text,
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 when a check fails, 2 on usage or data errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = match cli.config.format {
                Format::Json => o.json,
                Format::Text => o.text,
            };
            let _ = writeln!(out, "{}", body.trim_end());
            match o.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let config = &cli.config;
    let catalog = config.catalog()?;
    match &cli.command {
        Command::Identity { algebra, id } => {
            let a = load_algebra(&catalog, algebra)?;
            let result = check_identity(&a, *id);
            let (verdict, violation) = match &result {
                IdentityCheck::Pass => ("pass", Value::Null),
                IdentityCheck::Fail(v) => ("fail", serde_json::to_value(v)?),
            };
            let mut text = format!("{}: {} {verdict}", a.name(), id.as_str());
            if let IdentityCheck::Fail(v) = &result {
                let at: Vec<String> = v.indices.iter().map(|i| format!("e{i}")).collect();
                text += &format!(
                    "\n  {} fails at ({}): {} vs {}",
                    v.relation,
                    at.join(", "),
                    v.lhs.join(", "),
                    v.rhs.join(", ")
                );
            }
            let doc = json!({"algebra": a.name(), "identity": id.as_str(), "verdict": verdict, "violation": violation});
            Ok(Outcome::check(result.passed(), doc, text))
        }
        Command::Ann { algebra } => {
            let a = load_algebra(&catalog, algebra)?;
            let basis: Vec<String> = annihilator(&a).iter().map(|v| format_vector(v)).collect();
            let text = format!("dim Ann = {}\n{}", basis.len(), indented(&basis));
            Ok(Outcome::info(
                json!({"algebra": a.name(), "dim": basis.len(), "basis": basis}),
                text,
            ))
        }
        Command::Powers { algebra } => {
            let a = load_algebra(&catalog, algebra)?;
            let pf = power_filtration(&a);
            let dims: Vec<String> = pf.dims.iter().map(ToString::to_string).collect();
            let index = pf.nilpotency_index.map_or("none".to_string(), |k| k.to_string());
            let text = format!(
                "dim A^k for k = 1, 2, ...: {}\nnilpotency index: {index}",
                dims.join(", ")
            );
            Ok(Outcome::info(json!({"algebra": a.name(), "powers": pf}), text))
        }
        Command::Der { algebra } => {
            let a = load_algebra(&catalog, algebra)?;
            let n = a.dim();
            let der = derivations(&a);
            let orbit = n * n - der.len();
            let basis: Vec<Vec<Vec<String>>> = der.iter().map(matrix_strings).collect();
            let text = format!("dim Der = {}\norbit dimension = {orbit}", der.len());
            Ok(Outcome::info(
                json!({"algebra": a.name(), "dim": der.len(), "orbit_dimension": orbit, "basis": basis}),
                text,
            ))
        }
        Command::H2 { algebra } => {
            let a = load_algebra(&catalog, algebra)?;
            let h = cohomology::h2(&a);
            let reps: Vec<String> = h.reps.iter().map(cohomology::format_deltas).collect();
            let text = format!(
                "dim H2 = {}\ndim Z2 = {}, dim B2 = {}\n{}",
                h.dim(),
                h.z2.len(),
                h.b2.len(),
                indented(&reps)
            );
            let doc = json!({
                "algebra": a.name(), "h2": h.dim(), "z2": h.z2.len(), "b2": h.b2.len(), "representatives": reps,
            });
            Ok(Outcome::info(doc, text))
        }
        Command::Extend { algebra, cocycle } => {
            let a = load_algebra(&catalog, algebra)?;
            let theta = parse_cocycles(&a, cocycle)?;
            let report = cohomology::extension_wellformed(&a, &theta);
            let child = cohomology::central_extension(&a, &theta)?;
            let entry = CatalogEntry::from_structure(&child);
            let text = format!(
                "{}\ncocycles: {}\nAnn(θ) ∩ Ann(A) = 0: {}\nclasses independent: {}\nannihilator decomposition: {}\nwell-formed: {}",
                child,
                yes(report.cocycles),
                yes(report.annihilator_intersection_trivial),
                yes(report.classes_independent),
                yes(report.annihilator_decomposition),
                yes(report.ok),
            );
            let doc = json!({"parent": a.name(), "extension": entry, "report": report, "verdict": verdict(report.ok)});
            Ok(Outcome::check(report.ok, doc, text))
        }
        Command::Act { algebra, cocycle, phi } => {
            let a = load_algebra(&catalog, algebra)?;
            let theta = parse_cocycles(&a, cocycle)?;
            let phi = parse_matrix(phi)?;
            let image = cohomology::aut_action_verified(&a, &theta, &phi)?;
            let forms: Vec<String> = image.components().iter().map(cohomology::format_deltas).collect();
            let text = format!("φ·θ:\n{}", indented(&forms));
            Ok(Outcome::info(json!({"algebra": a.name(), "image": forms}), text))
        }
        Command::Fingerprint { algebra } => {
            let a = load_algebra(&catalog, algebra)?;
            let fp = fingerprint(&a);
            let text = format!(
                "dim {}, powers {:?}, Ann {}, Der {}, Z2 {}, H2 {}",
                fp.dim, fp.powers, fp.annihilator, fp.derivations, fp.cocycles, fp.h2
            );
            Ok(Outcome::info(json!({"algebra": a.name(), "fingerprint": fp}), text))
        }
        Command::Degenerate { cert, free } => degenerate(&catalog, config, cert, free.as_deref()),
        Command::Rset {
            row,
            rset,
            algebra,
            file,
        } => match (row, rset) {
            (Some(source), _) => rset_row(&catalog, config, source),
            (None, Some(path)) => {
                let args = AlgebraArgs {
                    algebra: algebra.clone(),
                    file: file.clone(),
                    param: None,
                    dim: None,
                };
                let a = load_algebra(&catalog, &args)?;
                let set: RSet = serde_json::from_str(&read(path)?)?;
                let m = rset_membership(&a, &set)?;
                let text = match &m.violated {
                    None => format!("{} satisfies every condition", a.name()),
                    Some(v) => format!("{} violates {v}", a.name()),
                };
                Ok(Outcome::check(
                    m.member,
                    json!({"algebra": a.name(), "membership": m}),
                    text,
                ))
            }
            (None, None) => Err(Error::Data("rset needs --row or --rset".into())),
        },
        Command::Catalog(CatalogCommand::List { tag }) => {
            let tags: Vec<&str> = tag.iter().map(String::as_str).collect();
            let ids = catalog.list(&tags);
            Ok(Outcome::info(json!(ids), ids.join("\n")))
        }
        Command::Catalog(CatalogCommand::Get { algebra }) => {
            let (entry, raw) = catalog.split_spec(algebra)?;
            if entry.is_family() && raw.is_empty() {
                let rows: Vec<String> = entry
                    .entries
                    .iter()
                    .map(|r| format!("e{}e{} += ({}) e{}", r.i, r.j, r.c, r.k))
                    .collect();
                let text = format!("{} [dim {}, parametric]\n{}", entry.id, entry.dim, indented(&rows));
                return Ok(Outcome::info(serde_json::to_value(entry)?, text));
            }
            let a = catalog.resolve(algebra, None)?;
            Ok(Outcome::info(
                serde_json::to_value(CatalogEntry::from_structure(&a))?,
                format!("{a:?}"),
            ))
        }
        Command::Catalog(CatalogCommand::VerifyAll { check }) => {
            let mut suite = SuiteConfig {
                verify: config.verify(),
                jobs: config.jobs,
                seed: config.seed,
                ..SuiteConfig::default()
            };
            if !check.is_empty() {
                suite.checks = check.clone();
            }
            let report = verify_all(&catalog, &suite)?;
            Ok(Outcome {
                verdict: Some(report.passed),
                json: report.to_json(),
                text: report.to_text(),
            })
        }
    }
}

fn degenerate(catalog: &Catalog, config: &CliConfig, path: &Path, free: Option<&str>) -> Result<Outcome> {
    let records = catalog::parse_certificates(&read(path)?)?;
    let verify = config.verify();
    let fixed = free.map(|s| Expr::parse(s)?.eval_constant()).transpose()?;
    let mut reports = Vec::new();
    for rec in &records {
        let values = match &fixed {
            Some(v) => vec![Some(v.clone())],
            None => rec.free_samples()?,
        };
        for v in values {
            let cert = catalog.certificate(rec, v.as_ref())?;
            let mut report = verify_certificate(&cert, &verify)?;
            if let (Some(f), Some(v)) = (&rec.free, &v) {
                report.label = format!("{} [{} = {v}]", report.label, f.symbol);
            }
            reports.push(report);
        }
    }
    let passed = !reports.is_empty() && reports.iter().all(|r| r.verified());
    let mut text = String::new();
    for r in &reports {
        text += &format!("{}: {} ({})\n", r.label, verdict_word(r.verdict), r.mode);
        if let Some(d) = &r.det_valuation {
            text += &format!("  det valuation {d}\n");
        }
        for x in r.residuals.iter().filter(|x| !x.ok) {
            text += &format!("  c_{}{}^{}: limit {} vs target {}\n", x.i, x.j, x.k, x.limit, x.target);
        }
        for n in &r.notes {
            text += &format!("  note: {n}\n");
        }
    }
    let json = match reports.as_slice() {
        [one] => pretty(one),
        _ => pretty(
            &json!({"verdict": verdict_word(if passed { Verdict::Verified } else { Verdict::Failed }), "reports": reports}),
        ),
    };
    Ok(Outcome {
        verdict: Some(passed),
        json,
        text,
    })
}

fn rset_row(catalog: &Catalog, config: &CliConfig, source: &str) -> Result<Outcome> {
    let mut sub = catalog.clone();
    sub.rsets.rows.retain(|r| r.source == source);
    if sub.rsets.rows.is_empty() {
        return Err(Error::Data(format!("no R-set row with source `{source}`")));
    }
    let suite = SuiteConfig {
        checks: vec![Check::Rsets],
        verify: config.verify(),
        jobs: config.jobs,
        seed: config.seed,
        ..SuiteConfig::default()
    };
    let report = verify_all(&sub, &suite)?;
    let mut text = String::new();
    for i in report.checks.iter().flat_map(|c| &c.items) {
        text += &format!(
            "{} {}: {}\n",
            if i.passed { "ok  " } else { "FAIL" },
            i.subject,
            i.detail
        );
    }
    Ok(Outcome {
        verdict: Some(report.passed),
        json: report.to_json(),
        text,
    })
}

fn load_algebra(catalog: &Catalog, args: &AlgebraArgs) -> Result<StructureConstants> {
    if let Some(path) = &args.file {
        let entry = catalog::parse_algebra(&read(path)?)?;
        let values = match &args.param {
            Some(p) => p
                .split(',')
                .map(|s| Expr::parse(s)?.eval_constant())
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        return entry.instantiate(&values);
    }
    let spec = args
        .algebra
        .as_deref()
        .ok_or_else(|| Error::Data("no algebra given".into()))?;
    catalog.resolve(spec, args.dim)
}

fn parse_cocycles(a: &StructureConstants, texts: &[String]) -> Result<CocycleForm> {
    let forms = texts
        .iter()
        .map(|t| CocycleForm::parse_deltas(t, a.dim(), &|_| None))
        .collect::<Result<Vec<_>>>()?;
    CocycleForm::new(a.dim(), forms)
}

fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|s| Expr::parse(s)?.eval_constant())
                .collect::<Result<Vec<GaussianRational>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows)
}

fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

fn indented(lines: &[String]) -> String {
    lines.iter().map(|l| format!("  {l}\n")).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Failed => "failed",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("zinbiel").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ladders_parse() {
        assert_eq!(parse_ladder("2..8").unwrap().0, (2..=8).collect::<Vec<_>>());
        assert_eq!(parse_ladder("3, 5").unwrap().0, vec![3, 5]);
        assert!(parse_ladder("4").is_err());
        assert!(parse_ladder("a..b").is_err());
    }

    #[test]
    fn zero_algebra_is_zinbiel() {
        let (code, out, _) = call(&["identity", "--algebra", "zero", "--dim", "5", "--id", "zinbiel"]);
        assert_eq!(code, 0);
        assert!(out.contains("pass"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["ann"]).0, 2);
        assert_eq!(call(&["ann", "--algebra", "no-such-algebra"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn failing_identity_exits_one() {
        let (code, out, _) = call(&[
            "identity",
            "--algebra",
            "N_01",
            "--id",
            "associative",
            "--format",
            "json",
        ]);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(code, if doc["verdict"] == "pass" { 0 } else { 1 });
    }

    #[test]
    fn matrices_parse() {
        let m = parse_matrix("1, i; 1/2, 0").unwrap();
        assert_eq!(m.row(0)[1], GaussianRational::i());
        assert_eq!(m.row(1)[0], crate::exactmath::gq_ratio(1, 2));
    }
}
