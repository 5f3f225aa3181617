//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chow::{self, CycleClass, Reduced};
use crate::detcat::{self, CoverSpec, DetFormat, ModuliCount};
use crate::geography::{self, Admissibility, FamilyParams, SigmaPosition};
use crate::links::{self, LinkTrace, MuCheck, Table2Row};
use crate::newton::{self, BaseLocusReport, DivisibilityProfile, FibreMonomial, NewtonTable};
use crate::scroll::{DivClass, StandardScroll};

#[derive(Debug, Parser)]
#[command(
    name = "mfsgeo",
    version,
    about = "Geography, 2-ray games and determinantal numerology for cubic surface fibrations"
)]
pub struct Cli {
    /// Write the document into this directory instead of standard output.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Families X in |3M + nL| on F(0,a,b,c) plotted over (n, d).
    Geography(GeographyArgs),
    /// Invariants of one family.
    Family(FamilyArgs),
    /// Newton table of the cubic form of a family.
    Newton(NewtonArgs),
    /// Reduce an expression in M, L in the Chow ring of a scroll.
    Chow(ChowArgs),
    /// 2-ray game of a family, optionally on an extended scroll.
    Link(LinkArgs),
    /// Curated nonrigid families and their links.
    Table2(Table2Args),
    /// Symmetric determinantal format of a double cover of a plane curve.
    Theta(ThetaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeographyFormat {
    Tsv,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GeographyArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = -6)]
    pub n_min: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2)]
    pub n_max: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 14)]
    pub d_max: i64,
    #[arg(long, value_enum, default_value_t = GeographyFormat::Tsv)]
    pub format: GeographyFormat,
}

#[derive(Debug, Args)]
pub struct FamilyPos {
    #[arg(allow_negative_numbers = true)]
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl FamilyPos {
    fn family(&self) -> Result<FamilyParams> {
        Ok(FamilyParams::new(self.n, self.a, self.b, self.c)?)
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub family: FamilyPos,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct NewtonArgs {
    #[command(flatten)]
    pub family: FamilyPos,
    /// JSON object mapping monomials to the power of u dividing their coefficient.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct ChowArgs {
    /// Twists a_0,..,a_n of the scroll.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub scroll: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    pub base_dim: usize,
    /// Polynomial in M and L, e.g. "(M - L)^2 * (3M - 2L)".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    #[command(flatten)]
    pub family: FamilyPos,
    /// Extra coordinate of class m:l (or 3M-2L), optionally named as NAME=CLASS.
    #[arg(long, allow_hyphen_values = true, value_name = "CLASS")]
    pub extend: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    /// Check -μK - L against the mobile edge and the first wall against -K·Γ.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, required_unless_present = "spec")]
    pub degree: Option<i64>,
    #[arg(long, default_value_t = 0)]
    pub e: i64,
    /// Prescribed h0(λ(N)) = V.
    #[arg(long = "p", value_name = "N=V")]
    pub p: Vec<String>,
    /// Diagonal degrees of the format instead of h0 values.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["p", "spec"])]
    pub partition: Option<Vec<i64>>,
    /// JSON file of the form {"d":7,"e":0,"p":{"2":1}}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["degree", "p"])]
    pub spec: Option<PathBuf>,
    /// Last n of the printed Hilbert function (default d).
    #[arg(long)]
    pub n_max: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: DocFormat,
}

/// A rendered document and the file name it gets under `--out-dir`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub file_name: String,
    pub body: String,
}

/// Parses `argv` (program name first) and runs the command. The returned
/// string goes to standard output.
pub fn run<I, T>(argv: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(e.to_string());
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            bail!("{}", first.trim_start_matches("error: "));
        }
    };
    let doc = execute(&cli.command)?;
    match &cli.out_dir {
        None => Ok(doc.body),
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let path = dir.join(&doc.file_name);
            fs::write(&path, &doc.body).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(format!("{}\n", path.display()))
        }
    }
}

/// One-line diagnostic for an error chain.
pub fn diagnostic(err: &anyhow::Error) -> String {
    format!("{err:#}").lines().map(str::trim).collect::<Vec<_>>().join(" ")
}

pub fn execute(cmd: &Command) -> Result<Document> {
    match cmd {
        Command::Geography(a) => geography_cmd(a),
        Command::Family(a) => family_cmd(a),
        Command::Newton(a) => newton_cmd(a),
        Command::Chow(a) => chow_cmd(a),
        Command::Link(a) => link_cmd(a),
        Command::Table2(a) => table2_cmd(a),
        Command::Theta(a) => theta_cmd(a),
    }
}

fn doc(stem: &str, format: DocFormat, text: String, json: impl Serialize) -> Result<Document> {
    Ok(match format {
        DocFormat::Text => Document { file_name: format!("{stem}.txt"), body: text },
        DocFormat::Json => {
            Document { file_name: format!("{stem}.json"), body: serde_json::to_string_pretty(&json)? + "\n" }
        }
    })
}

fn geography_cmd(a: &GeographyArgs) -> Result<Document> {
    if a.n_min > a.n_max || a.d_max < 0 {
        return Err(geography::GeographyError::EmptyWindow(a.n_min, a.n_max, a.d_max).into());
    }
    let points = geography::enumerate(a.n_min..=a.n_max, a.d_max);
    let (format, ext) = match a.format {
        GeographyFormat::Tsv => (geography::Format::Tsv, "tsv"),
        GeographyFormat::Svg => (geography::Format::Svg, "svg"),
        GeographyFormat::Json => (geography::Format::Json, "json"),
    };
    Ok(Document { file_name: format!("geography.{ext}"), body: geography::render(&points, format) })
}

fn stem(name: &str, fam: &FamilyParams) -> String {
    format!("{name}_{}_{}_{}_{}", fam.n, fam.a, fam.b, fam.c)
}

#[derive(Debug, Serialize)]
pub struct K2Json {
    #[serde(flatten)]
    pub cycle: CycleClass,
    pub interior: bool,
    pub iff_proven: bool,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub family: FamilyParams,
    pub d: i64,
    pub twists: [i64; 4],
    pub class: DivClass,
    pub admissibility: Admissibility,
    pub anticanonical: DivClass,
    pub k_dot_gamma: i64,
    pub x_dot_gamma: i64,
    pub k2: K2Json,
    pub sigma_position: SigmaPosition,
    pub newton_rows: usize,
    pub val: Option<i64>,
    pub certificates: BaseLocusReport,
}

pub fn family_report(fam: &FamilyParams) -> FamilyReport {
    let k2 = chow::kx_squared(fam);
    let table = newton::newton_table(fam);
    FamilyReport {
        family: *fam,
        d: fam.d(),
        twists: fam.twists(),
        class: fam.class(),
        admissibility: geography::admissible(fam),
        anticanonical: chow::anticanonical_on_x(fam),
        k_dot_gamma: chow::mk_dot_gamma(fam),
        x_dot_gamma: chow::x_dot_gamma(fam),
        k2: K2Json { cycle: k2.cycle, interior: k2.interior, iff_proven: k2.iff_proven },
        sigma_position: geography::sigma_position(fam),
        newton_rows: table.rows.len(),
        val: newton::val(&table, &DivisibilityProfile::default()).ok(),
        certificates: newton::base_locus_certificates(fam),
    }
}

fn twists_str(t: &[i64]) -> String {
    t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn family_cmd(a: &FamilyArgs) -> Result<Document> {
    let fam = a.family.family()?;
    let r = family_report(&fam);
    let mut s = String::new();
    writeln!(s, "family {} in |{}| on F({}) over P^1, d = {}", fam, r.class, twists_str(&r.twists), r.d)?;
    match r.admissibility.violation {
        None => writeln!(s, "admissible: yes")?,
        Some(v) => writeln!(s, "admissible: no ({v})")?,
    }
    writeln!(s, "-K = {}", r.anticanonical)?;
    writeln!(s, "-K.Gamma = {}", r.k_dot_gamma)?;
    writeln!(s, "X.Gamma = {}", r.x_dot_gamma)?;
    let flag = if r.k2.interior { "interior" } else { "not interior" };
    let proof = if r.k2.iff_proven { "" } else { "; only the necessary direction is proven for n >= 0" };
    writeln!(s, "K^2 = {} ({flag}{proof})", r.k2.cycle)?;
    writeln!(s, "sigma-position: {}", r.sigma_position.as_str())?;
    let val = r.val.map_or("-".to_string(), |v| v.to_string());
    writeln!(s, "newton table: {} monomials, val(F) = {val}", r.newton_rows)?;
    doc(&stem("family", &fam), a.format, s, &r)
}

#[derive(Debug, Serialize)]
pub struct NewtonJsonRow {
    pub monomial: FibreMonomial,
    pub degree: i64,
    pub power: i64,
    pub present: bool,
}

#[derive(Debug, Serialize)]
pub struct NewtonReport {
    pub family: FamilyParams,
    pub rows: Vec<NewtonJsonRow>,
    pub val: Option<i64>,
    pub u_order: Option<i64>,
}

pub fn newton_report(table: &NewtonTable, profile: &DivisibilityProfile) -> NewtonReport {
    NewtonReport {
        family: table.family,
        rows: table
            .rows
            .iter()
            .map(|r| NewtonJsonRow {
                monomial: r.monomial,
                degree: r.degree,
                power: profile.power(&r.monomial),
                present: profile.is_present(r),
            })
            .collect(),
        val: newton::val(table, profile).ok(),
        u_order: newton::u_order(table, profile).ok(),
    }
}

fn newton_cmd(a: &NewtonArgs) -> Result<Document> {
    let fam = a.family.family()?;
    let profile: DivisibilityProfile = match &a.profile {
        None => DivisibilityProfile::default(),
        Some(path) => {
            let raw = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            serde_json::from_str(&raw).with_context(|| format!("bad profile {}", path.display()))?
        }
    };
    let table = newton::newton_table(&fam);
    let r = newton_report(&table, &profile);
    let mut s = String::new();
    writeln!(s, "Newton table of {} in |{}| on F({})", fam, fam.class(), twists_str(&fam.twists()))?;
    writeln!(s, "degree\tmonomial\tu-power")?;
    for row in &r.rows {
        let power = if row.present { row.power.max(0).to_string() } else { "vanishes".to_string() };
        writeln!(s, "{}\t{}\t{}", row.degree, row.monomial, power)?;
    }
    writeln!(s, "{} monomials", r.rows.len())?;
    match r.val {
        Some(v) => writeln!(s, "val(F) = {v}")?,
        None => writeln!(s, "val(F) undefined: no monomial is present")?,
    }
    if let Some(u) = r.u_order {
        writeln!(s, "u-order = {u}")?;
    }
    doc(&stem("newton", &fam), a.format, s, &r)
}

#[derive(Debug, Serialize)]
pub struct ChowReport {
    pub scroll: StandardScroll,
    pub expr: String,
    pub normal_form: String,
    pub number: Option<i64>,
}

fn chow_cmd(a: &ChowArgs) -> Result<Document> {
    let scroll = StandardScroll::new(a.base_dim, a.scroll.clone())?;
    let expr: chow::ChowExpr = a.expr.parse()?;
    let nf = chow::normal_form(&scroll, &expr)?;
    let reduced = chow::reduce(&scroll, &expr)?;
    let number = match reduced {
        Reduced::Number(v) => Some(v),
        Reduced::Class(_) => None,
    };
    let r = ChowReport { scroll: scroll.clone(), expr: expr.to_string(), normal_form: nf.to_string(), number };
    let mut s = String::new();
    writeln!(s, "{} on {}", r.expr, scroll)?;
    writeln!(s, "= {reduced}")?;
    doc("chow", a.format, s, &r)
}

fn parse_extension(raw: &str, idx: usize) -> Result<(String, DivClass)> {
    let (name, cls) = match raw.split_once('=') {
        Some((n, c)) if !n.trim().is_empty() => (n.trim().to_string(), c),
        _ => (format!("w{}", idx + 1), raw),
    };
    let cls: DivClass = cls.parse().with_context(|| format!("bad extension {raw:?}"))?;
    Ok((name, cls))
}

fn link_cmd(a: &LinkArgs) -> Result<Document> {
    let fam = a.family.family()?;
    let ext = a.extend.iter().enumerate().map(|(i, e)| parse_extension(e, i)).collect::<Result<Vec<_>>>()?;
    let tr: LinkTrace = links::trace(&fam, &ext)?;
    doc(&stem("link", &fam), a.format, links::render_trace(&tr), &tr)
}

#[derive(Debug, Serialize)]
pub struct Table2Entry {
    #[serde(flatten)]
    pub row: Table2Row,
    pub verification: Option<MuCheck>,
}

fn table2_cmd(a: &Table2Args) -> Result<Document> {
    let mut entries = Vec::new();
    let mut s = String::new();
    let mut passed = 0;
    for row in links::table2() {
        let fam = row.family();
        let ext: Vec<String> = row
            .extensions
            .iter()
            .map(|e| format!("{} = {}{}", e.name, e.class, if e.reconstructed { " (reconstructed)" } else { "" }))
            .collect();
        writeln!(
            s,
            "{}\t{}\tmu = {}\t{}\t{}",
            row.id,
            fam,
            row.mu,
            if row.general { "general" } else { "special" },
            if ext.is_empty() { "-".to_string() } else { ext.join(", ") }
        )?;
        writeln!(s, "  link: {}", row.link)?;
        writeln!(s, "  other model: {}{}", row.other_model, if row.other_model_uncertain { " (?)" } else { "" })?;
        let check = if a.verify { Some(links::verify_mu(row)?) } else { None };
        if let Some(c) = &check {
            if c.passed() {
                passed += 1;
            }
            writeln!(
                s,
                "  check: -{}K - L = {}, mobile edge {}: {}; -K.Gamma = {}, opens with {}: {}",
                row.mu,
                c.expected,
                c.edge,
                if c.mu_ok { "ok" } else { "MISMATCH" },
                c.k_dot_gamma,
                c.opening.as_str(),
                if c.opening_ok { "ok" } else { "MISMATCH" }
            )?;
        }
        entries.push(Table2Entry { row: *row, verification: check });
    }
    if a.verify {
        writeln!(s, "{passed}/{} rows verified", entries.len())?;
    }
    doc("table2", a.format, s, &entries)
}

#[derive(Debug, Serialize)]
pub struct ThetaReport {
    pub spec: Option<CoverSpec>,
    pub genus: i64,
    pub format: DetFormat,
    pub series: Vec<i64>,
    pub moduli: ModuliCount,
}

fn parse_override(raw: &str) -> Result<(i64, i64)> {
    let (n, v) = raw.split_once('=').with_context(|| format!("expected N=V, got {raw:?}"))?;
    Ok((
        n.trim().parse().with_context(|| format!("bad index in {raw:?}"))?,
        v.trim().parse().with_context(|| format!("bad value in {raw:?}"))?,
    ))
}

pub fn theta_report(
    spec: Option<CoverSpec>,
    partition: Option<(i64, i64, &[i64])>,
    n_max: Option<i64>,
) -> Result<ThetaReport> {
    let (format, series, genus) = match (&spec, partition) {
        (Some(sp), _) => {
            let fmt = detcat::derive_format(sp)?;
            let series = detcat::rr_table(sp, n_max.unwrap_or(sp.d))?;
            (fmt, series, sp.genus())
        }
        (None, Some((d, e, parts))) => {
            let fmt = detcat::format_from_partition(d, e, parts)?;
            let series = detcat::hilbert_series(&fmt, n_max.unwrap_or(d));
            (fmt, series, (d - 1) * (d - 2) / 2)
        }
        (None, None) => bail!("either a cover spec or a partition is required"),
    };
    let moduli = detcat::moduli_count(&format);
    Ok(ThetaReport { spec, genus, format, series, moduli })
}

fn theta_cmd(a: &ThetaArgs) -> Result<Document> {
    let r = if let Some(parts) = &a.partition {
        let d = a.degree.context("--partition needs --degree")?;
        theta_report(None, Some((d, a.e, parts)), a.n_max)?
    } else {
        let spec = match &a.spec {
            Some(path) => {
                let raw = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                let sp: CoverSpec =
                    serde_json::from_str(&raw).with_context(|| format!("bad spec {}", path.display()))?;
                CoverSpec::new(sp.d, sp.e, sp.overrides)?
            }
            None => {
                let overrides = a.p.iter().map(|p| parse_override(p)).collect::<Result<BTreeMap<_, _>>>()?;
                CoverSpec::new(a.degree.context("--degree is required")?, a.e, overrides)?
            }
        };
        theta_report(Some(spec), None, a.n_max)?
    };
    let f = &r.format;
    let mut s = String::new();
    writeln!(s, "plane curve of degree {}, e = {}, genus {}", f.d, f.e, r.genus)?;
    writeln!(s, "h0(lambda(n)) for n = 0..{}: {}", r.series.len().saturating_sub(1), join(&r.series, " "))?;
    writeln!(s, "format: {0}x{0}, diagonal degrees {1}", f.size(), join(&f.diagonal, ","))?;
    writeln!(s, "generator degrees: {}", join(&f.generators, ","))?;
    writeln!(s, "relation degrees: {}", join(&f.relations, ","))?;
    writeln!(s, "entry degrees:")?;
    for row in &f.entries {
        writeln!(s, "  [{}]", join(row, ", "))?;
    }
    let m = &r.moduli;
    writeln!(
        s,
        "moduli: {} parameters - {} gauge = {} (plane curves of degree {}: {})",
        m.params, m.gauge, m.family_dim, f.d, m.all_curves_dim
    )?;
    doc(&format!("theta_{}_{}", f.d, f.e), a.format, s, &r)
}

fn join(v: &[i64], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> String {
        run(std::iter::once("mfsgeo").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn family_example() {
        let s = out(&["family", "-2", "1", "2", "2"]);
        assert!(s.contains("admissible: yes"));
        assert!(s.contains("-K = M - L\n"));
        assert!(s.contains("-K.Gamma = -1\n"));
        assert!(s.contains("K^2 = 3Γ + 7M²L (interior)"));
        assert!(s.contains("sigma-position: interior"));
    }

    #[test]
    fn theta_example() {
        let s = out(&["theta", "--degree", "7", "--e", "0", "--p", "2=2"]);
        assert!(s.contains("[3, 3, 2]\n  [3, 3, 2]\n  [2, 2, 1]"), "{s}");
        assert!(s.contains("45 parameters - 11 gauge = 34"));
    }

    #[test]
    fn bad_input_is_one_line() {
        let err = run(["mfsgeo", "family", "1", "2", "1", "0"]).unwrap_err();
        assert!(!diagnostic(&err).contains('\n'));
        let err = run(["mfsgeo", "frobnicate"]).unwrap_err();
        assert!(!diagnostic(&err).contains('\n'));
    }

    #[test]
    fn extension_names() {
        assert_eq!(parse_extension("xi=3:-3", 0).unwrap(), ("xi".to_string(), DivClass::new(3, -3)));
        assert_eq!(parse_extension("3M-L", 1).unwrap(), ("w2".to_string(), DivClass::new(3, -1)));
    }
}
