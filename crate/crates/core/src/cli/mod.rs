//! Command-line front end. Every command renders `key = value` lines; the
//! process exit code is 0 for a positive result, 1 negative, 2 input error
//! and 3 unknown.

pub mod files;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::equiv::arith_equiv;
use crate::error::{Error, Result};
use crate::exact::integer::render_factored;
use crate::gassmann::{gassmann_equal, gassmann_implies_types, PermGroup};
use crate::nf::places_over;
use crate::sarith::{decide, l2_profile, L2Kind, Outcome};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "arith-equiv", version, about = "Number-field invariants and arithmetical-equivalence checks")]
pub struct Cli {
    /// Largest prime swept by `equiv` and `check`.
    #[arg(long, global = true, default_value_t = 1000)]
    pub bound: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, discriminant, signature and index primes of a field file.
    Field { path: PathBuf },
    /// Places above a prime.
    Decompose { path: PathBuf, p: u64 },
    /// Arithmetical equivalence of two field files.
    Equiv { k: PathBuf, l: PathBuf },
    /// Profinite-commensurability conditions for two triple files.
    Check { a: PathBuf, b: PathBuf },
    /// ℓ²-Betti profile of a triple file.
    L2 { path: PathBuf },
    /// Permutation characters of two subgroups.
    Gassmann { path: PathBuf },
}

/// Rendered lines plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub exit: i32,
}

impl Report {
    fn new(exit: i32) -> Self {
        Report { lines: Vec::new(), exit }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
    }
}

fn seq(xs: &[usize]) -> String {
    format!("({})", xs.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

pub fn cmd_field(path: &std::path::Path) -> Result<Report> {
    let k = files::load_field(path)?;
    let mut r = Report::new(EXIT_POSITIVE);
    r.kv("poly", k.poly());
    r.kv("degree", k.degree());
    r.kv("disc", render_factored(k.field_disc())?);
    let (rr, s) = k.signature();
    r.kv("signature", format!("({rr},{s})"));
    r.kv("index", k.index());
    r.kv("index_primes", join(k.index_primes()));
    Ok(r)
}

pub fn cmd_decompose(path: &std::path::Path, p: u64) -> Result<Report> {
    let k = files::load_field(path)?;
    let mut r = Report::new(EXIT_POSITIVE);
    for v in places_over(&k, p)? {
        r.lines.push(format!("place {}:{} e={} f={}", v.p, v.ordinal, v.e, v.f));
    }
    Ok(r)
}

pub fn cmd_equiv(k: &std::path::Path, l: &std::path::Path, bound: u64) -> Result<Report> {
    let (k, l) = (files::load_field(k)?, files::load_field(l)?);
    let rep = arith_equiv(&k, &l, bound)?;
    let mut r = Report::new(if rep.verdict.is_equivalent() { EXIT_POSITIVE } else { EXIT_NEGATIVE });
    r.kv("verdict", rep.verdict);
    r.kv("method", rep.method);
    r.kv("certified", if rep.verdict.is_certified() { "yes" } else { "no" });
    if let Some(b) = rep.battery {
        r.kv("battery.degree", b.degree_equal);
        r.kv("battery.disc", b.disc_equal);
        r.kv("battery.signature", b.signature_equal);
    }
    if let Some(b) = rep.bound {
        r.kv("bound", b);
        r.kv("primes_checked", rep.evidence.len());
        r.kv("mismatches", rep.mismatches());
    }
    if let Some(w) = rep.witness {
        r.kv("witness", w);
    }
    if let Some(d) = &rep.norm_factor_degrees {
        r.kv("norm_factor_degrees", join(d));
    }
    for rec in rep.evidence.iter().filter(|rec| !rec.agrees()) {
        r.kv(&format!("evidence.{}", rec.p), format!("{} vs {}", seq(&rec.k_type), seq(&rec.l_type)));
    }
    Ok(r)
}

pub fn cmd_check(a: &std::path::Path, b: &std::path::Path, bound: u64) -> Result<Report> {
    let (a, b) = (files::load_triple(a)?, files::load_triple(b)?);
    let v = decide(&a, &b, bound)?;
    let mut r = Report::new(match v.outcome {
        Outcome::Commensurable => EXIT_POSITIVE,
        Outcome::NotCommensurable => EXIT_NEGATIVE,
        Outcome::Unknown => EXIT_UNKNOWN,
    });
    r.kv("outcome", v.outcome);
    r.kv("bound", bound);
    for c in &v.conditions {
        r.kv(&format!("cond.{}", c.name), c.status);
    }
    for c in &v.conditions {
        r.kv(&format!("evidence.{}", c.name), &c.evidence);
    }
    if let Some(c) = &v.csp_caveat {
        r.kv("csp_caveat", c);
    }
    Ok(r)
}

pub fn cmd_l2(path: &std::path::Path) -> Result<Report> {
    let t = files::load_triple(path)?;
    let prof = l2_profile(&t)?;
    let mut r = Report::new(EXIT_POSITIVE);
    match prof.kind {
        L2Kind::AllZero => {
            r.kv("l2", "all_zero");
            r.kv("degree", "none");
        }
        L2Kind::Concentrated => {
            r.kv("l2", "concentrated");
            r.kv("degree", prof.degree.expect("concentrated profile has a degree"));
        }
    }
    r.kv("euler_sign", match prof.euler_sign {
        1 => "+1",
        -1 => "-1",
        _ => "0",
    });
    r.kv("s_size", t.s_size());
    if prof.finite_place_note {
        r.kv("note", "finite-place degrees assume large residue fields (not checked)");
    }
    Ok(r)
}

pub fn cmd_gassmann(path: &std::path::Path) -> Result<Report> {
    let gf = files::load_gassmann(path)?;
    let g = PermGroup::new(gf.degree, gf.group.clone())?;
    let u = g.subgroup(&gf.u)?;
    let v = g.subgroup(&gf.v)?;
    let res = gassmann_equal(&g, &gf.u, &gf.v)?;
    let mut r = Report::new(if res.equal { EXIT_POSITIVE } else { EXIT_NEGATIVE });
    r.kv("order", g.order());
    r.kv("index_u", g.order() / u.order());
    r.kv("index_v", g.order() / v.order());
    r.kv("gassmann_equal", res.equal);
    if let (Some(w), Some((a, b))) = (&res.witness, res.values) {
        r.kv("witness", w);
        r.kv("character_values", format!("{a} vs {b}"));
    } else {
        r.kv("cycle_types_agree", gassmann_implies_types(&g, &gf.u, &gf.v)?);
    }
    Ok(r)
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Field { path } => cmd_field(path),
        Command::Decompose { path, p } => cmd_decompose(path, *p),
        Command::Equiv { k, l } => cmd_equiv(k, l, cli.bound),
        Command::Check { a, b } => cmd_check(a, b, cli.bound),
        Command::L2 { path } => cmd_l2(path),
        Command::Gassmann { path } => cmd_gassmann(path),
    }
}

/// Full run: parse arguments, execute, render. Returns stdout text and the
/// exit code. Argument errors are left to clap.
pub fn run_parsed(cli: &Cli) -> (String, i32) {
    let (text, code) = match execute(cli) {
        Ok(report) => (report.text(), report.exit),
        Err(e) => (format!("ERROR: {e}\n"), EXIT_ERROR),
    };
    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, &text) {
            return (format!("ERROR: {}\n", Error::Parse(format!("{}: {e}", out.display()))), EXIT_ERROR);
        }
    }
    (text, code)
}

pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_POSITIVE };
        }
    };
    let (text, code) = run_parsed(&cli);
    print!("{text}");
    code
}
