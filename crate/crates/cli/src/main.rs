use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use braceforge::catalog::{catalog_for_hol, cross_check, CatalogEntry};
use braceforge::compare::{match_catalog, orbit_lists_agree, Matching};
use braceforge::json::{self, BraceDoc, CatalogDoc, SolutionDoc};
use braceforge::oracle::DEFAULT_ORACLE_BOUND;
use braceforge::report::tabulate;
use braceforge::ybe::{solution_from_brace, solution_properties, verify_ybe};
use braceforge::{
    classify_case, enumerate_regular, naive_oracle_enumerate, CongruenceCase, GroupSpec, Holomorph, Kind, OrbitClass,
    ParamChoice, PrimePair, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "braceforge", version, about = "Left braces of size p^2 q")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate braces as regular subgroups of the holomorph and compare with the stored tables.
    Enumerate(RunArgs),
    /// Build, verify and export the explicit brace families.
    Catalog(RunArgs),
    /// Re-check a stored braceforge-v1 file.
    Verify {
        path: PathBuf,
    },
    /// Export the Yang-Baxter solution of every catalog brace, with checks.
    Ybe(RunArgs),
    /// Match enumerated classes against catalog entries.
    Compare(RunArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Additive::Both)]
    additive: Additive,
    #[arg(long, value_enum, default_value_t = Method::Structured)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse the oracle when |Hol(A)| exceeds this.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Additive {
    Cyclic,
    Mixed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Structured,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

impl RunArgs {
    fn pair(&self) -> anyhow::Result<PrimePair> {
        let pair = PrimePair::new(self.p, self.q)?;
        if classify_case(pair) == CongruenceCase::Excluded12 {
            bail!(braceforge::Error::Excluded12);
        }
        Ok(pair)
    }

    fn kinds(&self) -> Vec<Kind> {
        match self.additive {
            Additive::Cyclic => vec![Kind::Cyclic],
            Additive::Mixed => vec![Kind::Mixed],
            Additive::Both => Kind::BOTH.to_vec(),
        }
    }

    fn hols(&self) -> anyhow::Result<Vec<Arc<Holomorph>>> {
        let pair = self.pair()?;
        Ok(self.kinds().into_iter().map(|k| Holomorph::shared(GroupSpec::new(pair, k))).collect())
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn json_line<T: serde::Serialize>(x: &T) -> String {
    let mut s = json::to_string(x);
    s.push('\n');
    s
}

fn enumerate_one(hol: &Arc<Holomorph>, args: &RunArgs) -> anyhow::Result<Vec<OrbitClass>> {
    Ok(match args.method {
        Method::Structured => enumerate_regular(hol)?,
        Method::Oracle => naive_oracle_enumerate(hol, args.oracle_bound)?,
        Method::Both => {
            let s = enumerate_regular(hol)?;
            let o = naive_oracle_enumerate(hol, args.oracle_bound)?;
            if !orbit_lists_agree(hol, &s, &o)? {
                bail!(
                    "{}: structured ({} classes) and oracle ({} classes) enumerations disagree",
                    hol.spec().kind,
                    s.len(),
                    o.len()
                );
            }
            s
        }
    })
}

fn cmd_enumerate(args: &RunArgs) -> anyhow::Result<bool> {
    let pair = args.pair()?;
    let mut results = Vec::new();
    for hol in args.hols()? {
        let orbits = enumerate_one(&hol, args)?;
        results.push((hol, orbits));
    }
    let report = tabulate(pair, &results)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match args.format {
        Format::Table => args.emit(&report.render_table())?,
        Format::Json => args.emit(&json_line(&report))?,
    }
    Ok(report.verdict != Verdict::Mismatch)
}

fn catalog_entries(args: &RunArgs) -> anyhow::Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for hol in args.hols()? {
        out.extend(catalog_for_hol(&hol, ParamChoice::Smallest)?);
    }
    Ok(out)
}

fn cmd_catalog(args: &RunArgs) -> anyhow::Result<bool> {
    let entries = catalog_entries(args)?;
    let mut ok = true;
    let mut docs = Vec::new();
    let mut table = String::new();
    for e in &entries {
        let outcome = e.check()?;
        let printed = cross_check(e.brace.hol(), e.family, &e.params)?;
        let good = outcome.ok() && printed != Some(false);
        ok &= good;
        if let Err(w) = &outcome.axioms {
            eprintln!("{} {}: brace check failed: {w:?}", e.brace.spec().kind, e.family);
        } else if !outcome.invariants_match {
            eprintln!(
                "{} {}: invariants {:?}, expected {:?}",
                e.brace.spec().kind,
                e.family,
                outcome.computed,
                e.expected
            );
        }
        if printed == Some(false) {
            eprintln!("{} {}: printed circle formula disagrees with the λ build", e.brace.spec().kind, e.family);
        }
        table.push_str(&format!(
            "{:<7} {:<40} ker={:<4} {:<18} bi_skew={:<5} printed={:<5} {}\n",
            e.brace.spec().kind.to_string(),
            e.family.to_string(),
            outcome.computed.ker_size,
            outcome.computed.mult_class.to_string(),
            outcome.computed.bi_skew,
            match printed {
                Some(true) => "same",
                Some(false) => "DIFF",
                None => "n/a",
            },
            if good { "ok" } else { "FAIL" }
        ));
        docs.push(json::catalog_doc(e)?);
    }
    table.push_str(&format!(
        "{} entries, {}\n",
        entries.len(),
        if ok { "all verified" } else { "FAILURES" }
    ));
    match args.format {
        Format::Table => args.emit(&table)?,
        Format::Json => args.emit(&json_line(&docs))?,
    }
    Ok(ok)
}

/// What a stored document turned out to be.
enum Doc {
    Brace(BraceDoc),
    Catalog(Box<CatalogDoc>),
    Solution(SolutionDoc),
}

fn classify_doc(v: &Value) -> anyhow::Result<Doc> {
    let text = v.to_string();
    let obj = v.as_object().context("expected a JSON object")?;
    Ok(if obj.contains_key("sigma") {
        Doc::Solution(json::parse(&text)?)
    } else if obj.contains_key("family") {
        Doc::Catalog(Box::new(json::parse(&text)?))
    } else {
        Doc::Brace(json::parse(&text)?)
    })
}

fn verify_brace(label: &str, doc: &BraceDoc) -> anyhow::Result<bool> {
    let v = json::verify_brace_doc(doc)?;
    match &v.axioms {
        Err(w) => println!("{label}: FAIL {w:?}"),
        Ok(()) if !v.invariants_match => {
            println!("{label}: FAIL invariants stored {:?}, computed {:?}", doc.invariants, v.computed)
        }
        Ok(()) => println!("{label}: ok"),
    }
    Ok(v.ok())
}

fn cmd_verify(path: &PathBuf) -> anyhow::Result<bool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = json::parse(&text)?;
    let items: Vec<(String, &Value)> = match &value {
        Value::Array(xs) => xs.iter().enumerate().map(|(i, x)| (format!("[{i}]"), x)).collect(),
        x => vec![(String::from("document"), x)],
    };
    let mut ok = true;
    for (label, item) in items {
        let doc = classify_doc(item).with_context(|| label.clone())?;
        ok &= match doc {
            Doc::Brace(b) => verify_brace(&label, &b)?,
            Doc::Catalog(c) => {
                let name = format!("{label} {}", c.family);
                let good = verify_brace(&name, &c.brace)?;
                match json::catalog_entry_from_doc(&c) {
                    Ok(_) => good,
                    Err(e) => {
                        println!("{name}: FAIL {e}");
                        false
                    }
                }
            }
            Doc::Solution(s) => {
                let sol = json::solution_from_doc(&s)?;
                let ybe = verify_ybe(&sol);
                let props = solution_properties(&sol);
                let good = ybe.is_ok() && props.involutive && props.nondegenerate;
                match ybe {
                    Err((x, y, z)) => println!("{label}: FAIL braid relation at ({x}, {y}, {z})"),
                    Ok(()) if !good => println!("{label}: FAIL {props:?}"),
                    Ok(()) => println!("{label}: ok"),
                }
                good
            }
        };
    }
    Ok(ok)
}

fn cmd_ybe(args: &RunArgs) -> anyhow::Result<bool> {
    let entries = catalog_entries(args)?;
    let mut ok = true;
    let mut docs = Vec::new();
    let mut table = String::new();
    for e in &entries {
        let doc = json::solution_doc(&solution_from_brace(&e.brace));
        let c = doc.checks;
        let good = c.ybe && c.involutive && c.nondegenerate;
        ok &= good;
        table.push_str(&format!(
            "{:<7} {:<40} n={:<4} ybe={:<5} involutive={:<5} nondegenerate={:<5}\n",
            e.brace.spec().kind.to_string(),
            e.family.to_string(),
            doc.n,
            c.ybe,
            c.involutive,
            c.nondegenerate
        ));
        docs.push(doc);
    }
    match args.format {
        Format::Table => args.emit(&table)?,
        Format::Json => args.emit(&json_line(&docs))?,
    }
    Ok(ok)
}

fn cmd_compare(args: &RunArgs) -> anyhow::Result<bool> {
    let entries = catalog_entries(args)?;
    let mut matchings: Vec<Matching> = Vec::new();
    let mut table = String::new();
    for hol in args.hols()? {
        let orbits = enumerate_one(&hol, args)?;
        let mut m = match_catalog(&hol, &orbits, &entries)?;
        m.pairs.sort_by_key(|pr| pr.orbit);
        table.push_str(&format!("{} additive group: {} classes\n", hol.spec().kind, orbits.len()));
        for pr in &m.pairs {
            let o = &orbits[pr.orbit];
            table.push_str(&format!(
                "  orbit {:>2} (ker {:>3}, {}) <-> {}\n",
                pr.orbit, o.ker_size, o.mult_class, pr.family
            ));
        }
        for &i in &m.unmatched_orbits {
            table.push_str(&format!("  orbit {i:>2} has no catalog entry\n"));
        }
        for f in &m.unmatched_entries {
            table.push_str(&format!("  entry {f} matches no orbit\n"));
        }
        for &i in &m.repeated_orbits {
            table.push_str(&format!("  orbit {i:>2} matched by several entries\n"));
        }
        matchings.push(m);
    }
    let ok = matchings.iter().all(Matching::is_bijection);
    let total: usize = matchings.iter().map(|m| m.pairs.len() + m.unmatched_orbits.len()).sum();
    table.push_str(&format!(
        "{}, {total} classes\n",
        if ok { "perfect bijection" } else { "MISMATCH" }
    ));
    match args.format {
        Format::Table => args.emit(&table)?,
        Format::Json => args.emit(&json_line(&serde_json::json!({
            "p": args.p,
            "q": args.q,
            "kinds": matchings,
            "bijection": ok,
            "classes": total,
        })))?,
    }
    Ok(ok)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    match &cli.cmd {
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::Catalog(a) => cmd_catalog(a),
        Cmd::Verify { path } => cmd_verify(path),
        Cmd::Ybe(a) => cmd_ybe(a),
        Cmd::Compare(a) => cmd_compare(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
