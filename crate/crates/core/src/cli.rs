//! Command-line front end.
//!
//! Exit codes: 0 when every checked property or verification passes, 1 when
//! one is false, 2 for usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, rajah_semiauto};
use crate::census::converse_census;
use crate::extension::{
    corollary_check, theorem2_isomorphism, verify_remark2, verify_theorem1, CorollaryPath, ExtensionError,
    ExtensionSpec,
};
use crate::io::{self, Descriptor};
use crate::iso::IsoOutcome;
use crate::morphisms::{classify, conjugation_map, enumerate_semiautomorphisms, inversion, Mapping, SemiAutOptions};
use crate::props::{is_commutative, is_group, is_moufang, nucleus, MoufangMode};
use crate::scan::{ScanMode, ScanPolicy, DEFAULT_CAP, DEFAULT_SEED};
use crate::subloop::{subloop_generated, SubsetHandle};
use crate::table::{CayleyTable, Elem, LoopOps};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "loopforge", version, about = "Finite loops, semi-automorphisms and cyclic extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog loop or an extension and write it out.
    Construct(ConstructArgs),
    /// Write a named mapping of a loop as a map file.
    Mapping(MappingArgs),
    /// Check structural properties of a loop.
    Check(CheckArgs),
    /// Enumerate and classify semi-automorphisms.
    Semiaut(SemiautArgs),
    /// Run one of the extension verifiers.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Extensions of small bases by all their identity-fixing semi-automorphisms.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// cyclic, abelian, sym, alt, q8, dihedral, chein, u3, cml81, cml81-assoc, semidirect, rajah
    pub family: String,
    /// Size parameter for cyclic, sym, alt and dihedral.
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Base loop: catalog name or file.
    #[arg(long)]
    pub base: Option<String>,
    /// Order of the cyclic factor.
    #[arg(long)]
    pub order: Option<usize>,
    /// Action: map file or id, inv, conj:U, pow:A, rajah:Q:K, images:I,J,...
    #[arg(long)]
    pub action: Option<String>,
    #[arg(long)]
    pub materialize: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MappingArgs {
    /// id, inv, conj:U, pow:A, rajah:Q:K or images:I,J,...
    pub action: String,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Number of sampled triples instead of a full scan.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest order scanned exhaustively.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

impl ScanArgs {
    fn policy(&self) -> ScanPolicy {
        let mut p = ScanPolicy::with_cap(self.cap);
        if let Some(count) = self.sample {
            p.sample = Some(crate::scan::SampleBudget { count, seed: self.seed });
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Loop file, extension descriptor or catalog name.
    pub file: String,
    #[arg(long)]
    pub moufang: bool,
    /// Cross-check all four Moufang identities.
    #[arg(long)]
    pub all_four: bool,
    #[arg(long)]
    pub group: bool,
    #[arg(long)]
    pub commutative: bool,
    /// Passes when the nucleus is nontrivial.
    #[arg(long)]
    pub nucleus: bool,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug, Args)]
pub struct SemiautArgs {
    pub file: String,
    /// List every mapping.
    #[arg(long)]
    pub enumerate: bool,
    /// Annotate each mapping with its class.
    #[arg(long)]
    pub classify: bool,
    #[arg(long, default_value_t = SemiAutOptions::default().budget)]
    pub budget: u64,
    #[arg(long)]
    pub identity_fixing: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Theorem1 {
        #[arg(long = "loop")]
        loop_ref: String,
        /// Subset file, gen:I,J,... or members:I,J,...
        #[arg(long)]
        normal: String,
        #[arg(long)]
        u: Elem,
        #[command(flatten)]
        scan: ScanArgs,
    },
    Remark2 {
        #[arg(long = "loop")]
        loop_ref: String,
        #[command(flatten)]
        scan: ScanArgs,
    },
    Theorem2 {
        #[arg(long)]
        base: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        f1: String,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value = "id")]
        beta: String,
    },
    Corollary {
        #[arg(long)]
        base: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long, default_value_t = SemiAutOptions::default().budget)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Comma-separated catalog names or files.
    #[arg(long, value_delimiter = ',', required = true)]
    pub bases: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<usize>,
    /// Write PREFIX.tsv and PREFIX.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of TSV on stdout.
    #[arg(long)]
    pub json: bool,
    /// Fill the runtime column (output is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.to_string() }
}

/// Result of a command: text for stdout plus exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// A loop that is either tabulated or evaluated from an extension spec.
pub enum AnyLoop {
    Table(CayleyTable),
    Lazy(Box<ExtensionSpec>),
}

impl AnyLoop {
    pub fn table(&self) -> Option<&CayleyTable> {
        match self {
            AnyLoop::Table(t) => Some(t),
            AnyLoop::Lazy(_) => None,
        }
    }
}

impl LoopOps for AnyLoop {
    fn order(&self) -> usize {
        match self {
            AnyLoop::Table(t) => t.order(),
            AnyLoop::Lazy(s) => s.order(),
        }
    }
    fn op(&self, x: Elem, y: Elem) -> Elem {
        match self {
            AnyLoop::Table(t) => t.mul(x, y),
            AnyLoop::Lazy(s) => s.op(x, y),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn join_path(dir: Option<&Path>, r: &str) -> PathBuf {
    match dir {
        Some(d) if Path::new(r).is_relative() => d.join(r),
        _ => PathBuf::from(r),
    }
}

/// Resolve a loop reference relative to `dir`: an existing file (text loop,
/// JSON loop or JSON descriptor) or a catalog name.
pub fn resolve_loop(r: &str, dir: Option<&Path>) -> Result<AnyLoop, CliError> {
    let path = join_path(dir, r);
    if path.is_file() {
        let text = read(&path)?;
        if text.trim_start().starts_with('{') {
            if text.contains("\"kind\"") {
                let d = Descriptor::from_json(&text).map_err(usage)?;
                return resolve_descriptor(&d, path.parent());
            }
            return io::loop_from_json(&text).map(AnyLoop::Table).map_err(usage);
        }
        return io::parse_loop(&text).map(AnyLoop::Table).map_err(usage);
    }
    catalog::named(r).map(AnyLoop::Table).map_err(|e| usage(format!("{r}: not a file and {e}")))
}

fn resolve_table(r: &str) -> Result<CayleyTable, CliError> {
    match resolve_loop(r, None)? {
        AnyLoop::Table(t) => Ok(t),
        AnyLoop::Lazy(s) => s.materialize().map_err(usage),
    }
}

fn resolve_descriptor(d: &Descriptor, dir: Option<&Path>) -> Result<AnyLoop, CliError> {
    let base = match resolve_loop(&d.base, dir)? {
        AnyLoop::Table(t) => t,
        AnyLoop::Lazy(_) => return Err(usage("descriptor base must be a table")),
    };
    let action = resolve_map(&d.action, &base, dir)?;
    let spec = ExtensionSpec::new(base, d.order, action).map_err(usage)?;
    Ok(AnyLoop::Lazy(Box::new(spec)))
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad index {t:?}"))))
        .collect()
}

/// Resolve a mapping reference on `base`.
pub fn resolve_map(r: &str, base: &CayleyTable, dir: Option<&Path>) -> Result<Mapping, CliError> {
    let path = join_path(dir, r);
    if path.is_file() {
        let m = io::parse_map(&read(&path)?).map_err(usage)?;
        if m.len() != base.order() {
            return Err(usage(format!("map has {} images, loop has order {}", m.len(), base.order())));
        }
        return Ok(m);
    }
    let n = base.order();
    let m = match r.split_once(':') {
        None if r == "id" => Mapping::identity(n),
        None if r == "inv" => inversion(base),
        Some(("conj", u)) => {
            let u = u.parse().map_err(|_| usage(format!("bad element in {r:?}")))?;
            conjugation_map(base, u).map_err(usage)?
        }
        Some(("pow", a)) => {
            let a: usize = a.parse().map_err(|_| usage(format!("bad exponent in {r:?}")))?;
            let images = (0..n).map(|x| (0..a).fold(0, |acc, _| base.mul(x, acc))).collect();
            Mapping::new(images).map_err(|e| usage(format!("{r}: {e}")))?
        }
        Some(("rajah", qk)) => {
            let (q, k) = qk.split_once(':').ok_or_else(|| usage(format!("expected rajah:Q:K, got {r:?}")))?;
            let q: u64 = q.parse().map_err(|_| usage("bad q"))?;
            let k: u64 = k.parse().map_err(|_| usage("bad k"))?;
            let m = rajah_semiauto(q, k).map_err(usage)?;
            if m.len() != n {
                return Err(usage(format!("rajah:{q}:{k} acts on order {}, loop has order {n}", m.len())));
            }
            m
        }
        Some(("images", list)) => Mapping::new(parse_list(list)?).map_err(usage)?,
        _ => return Err(usage(format!("{r}: not a file or a known mapping"))),
    };
    if m.len() != n {
        return Err(usage(format!("map has {} images, loop has order {n}", m.len())));
    }
    Ok(m)
}

fn resolve_subset(r: &str, t: &CayleyTable) -> Result<SubsetHandle, CliError> {
    let path = Path::new(r);
    if path.is_file() {
        return io::parse_subset(&read(path)?).map_err(usage);
    }
    match r.split_once(':') {
        Some(("gen", list)) => subloop_generated(t, &parse_list(list)?).map_err(usage),
        Some(("members", list)) => SubsetHandle::new(t.order(), parse_list(list)?).map_err(usage),
        _ => Err(usage(format!("{r}: not a file, gen:... or members:..."))),
    }
}

pub fn run<I, T>(args: I) -> Result<Output, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        CliError { code, message: e.to_string() }
    })?;
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Mapping(a) => mapping(a),
        Command::Check(a) => check(a),
        Command::Semiaut(a) => semiaut(a),
        Command::Verify(v) => verify(v),
        Command::Census(a) => census(a),
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Output, CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(Output { text: String::new(), code: EXIT_PASS })
        }
        None => Ok(Output { text, code: EXIT_PASS }),
    }
}

fn construct(a: ConstructArgs) -> Result<Output, CliError> {
    let need_n = || a.n.ok_or_else(|| usage(format!("{} needs a size argument", a.family)));
    let table = match a.family.as_str() {
        "cyclic" => catalog::cyclic(need_n()?).map_err(usage)?,
        "abelian" => {
            let p = a.p.ok_or_else(|| usage("abelian needs --p"))?;
            let k = a.k.ok_or_else(|| usage("abelian needs --k"))?;
            catalog::elementary_abelian(p, k as usize).map_err(usage)?
        }
        "sym" => catalog::symmetric(need_n()?).map_err(usage)?,
        "alt" => catalog::alternating(need_n()?).map_err(usage)?,
        "q8" => catalog::quaternion8(),
        "dihedral" => catalog::dihedral(need_n()?).map_err(usage)?,
        "chein" => {
            let base = resolve_table(a.base.as_deref().ok_or_else(|| usage("chein needs --base"))?)?;
            catalog::chein_double(&base).map_err(usage)?
        }
        "u3" => {
            let q = a.q.ok_or_else(|| usage("u3 needs --q"))?;
            catalog::u3_group(q).and_then(|g| g.materialize()).map_err(usage)?
        }
        "cml81" => catalog::cml81_nonassociative().map_err(usage)?,
        "cml81-assoc" => catalog::cml81_associative().map_err(usage)?,
        "rajah" => {
            let q = a.q.ok_or_else(|| usage("rajah needs --q"))?;
            let k = a.k.ok_or_else(|| usage("rajah needs --k"))?;
            let spec = catalog::rajah_loop(q, k).map_err(usage)?;
            if !a.materialize {
                let d = Descriptor::semidirect(&format!("u3:{q}"), spec.h(), &format!("rajah:{q}:{k}"));
                return emit(d.to_json(), a.out.as_deref());
            }
            spec.materialize().map_err(usage)?
        }
        "semidirect" => {
            let base_ref = a.base.as_deref().ok_or_else(|| usage("semidirect needs --base"))?;
            let h = a.order.ok_or_else(|| usage("semidirect needs --order"))?;
            let action_ref = a.action.as_deref().ok_or_else(|| usage("semidirect needs --action"))?;
            let base = resolve_table(base_ref)?;
            let action = resolve_map(action_ref, &base, None)?;
            let spec = ExtensionSpec::new(base, h, action).map_err(usage)?;
            if !a.materialize {
                return emit(Descriptor::semidirect(base_ref, h, action_ref).to_json(), a.out.as_deref());
            }
            spec.materialize().map_err(usage)?
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    let text = if a.json { io::loop_to_json(&table) } else { io::write_loop(&table) };
    emit(text, a.out.as_deref())
}

fn mapping(a: MappingArgs) -> Result<Output, CliError> {
    let base = resolve_table(&a.base)?;
    let m = resolve_map(&a.action, &base, None)?;
    emit(io::write_map(&m), a.out.as_deref())
}

fn fmt_witness(w: Option<&[Elem]>) -> String {
    match w {
        Some(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        None => "-".into(),
    }
}

fn mode_suffix(mode: ScanMode) -> String {
    match mode {
        ScanMode::Full => String::new(),
        ScanMode::Sampled { count, seed } => format!(" sampled={count} seed={seed}"),
    }
}

fn check(a: CheckArgs) -> Result<Output, CliError> {
    let l = resolve_loop(&a.file, None)?;
    let policy = a.scan.policy();
    let none_selected = !(a.moufang || a.all_four || a.group || a.commutative || a.nucleus);
    let mut out = String::new();
    let mut all_pass = true;
    let mut line = |name: &str, pass: bool, witness: String, extra: String| {
        all_pass &= pass;
        let _ = writeln!(out, "PROPERTY {name} {} witness={witness}{extra}", if pass { "PASS" } else { "FAIL" });
    };
    if a.moufang || a.all_four || none_selected {
        let mode = if a.all_four { MoufangMode::AllFour } else { MoufangMode::Single };
        let o = is_moufang(&l, mode, &policy).map_err(usage)?;
        line("moufang", o.holds, fmt_witness(o.witness.as_ref().map(|w| &w[..])), mode_suffix(o.mode));
    }
    if a.group || none_selected {
        let o = is_group(&l, &policy).map_err(usage)?;
        line("group", o.holds, fmt_witness(o.witness.as_ref().map(|w| &w[..])), mode_suffix(o.mode));
    }
    if a.commutative || none_selected {
        let o = is_commutative(&l);
        line(
            "commutative",
            o.holds,
            fmt_witness(o.witness.map(|(x, y)| [x, y]).as_ref().map(|w| &w[..])),
            String::new(),
        );
    }
    if a.nucleus {
        let t = l.table().ok_or_else(|| usage("nucleus needs a tabulated loop"))?;
        let nuc = nucleus(t, &policy).map_err(usage)?;
        line("nucleus", nuc.len() > 1, "-".into(), format!(" size={}", nuc.len()));
    }
    Ok(Output { text: out, code: if all_pass { EXIT_PASS } else { EXIT_FAIL } })
}

fn semiaut(a: SemiautArgs) -> Result<Output, CliError> {
    let t = resolve_table(&a.file)?;
    let group =
        enumerate_semiautomorphisms(&t, SemiAutOptions { budget: a.budget, identity_fixing: a.identity_fixing })
            .map_err(usage)?;
    let mut counts = std::collections::BTreeMap::<&str, usize>::new();
    let mut out = String::new();
    for m in &group.maps {
        let label = if !m.fixes_identity() { "MOVES_IDENTITY" } else { classify(&t, m).map_err(usage)?.kind().label() };
        *counts.entry(label).or_default() += 1;
        if a.enumerate {
            if a.classify {
                let _ = writeln!(out, "{m}\t{label}");
            } else {
                let _ = writeln!(out, "{m}");
            }
        }
    }
    let _ = write!(out, "# total={}", group.maps.len());
    for label in ["AUTO", "ANTI", "BOTH", "PROPER", "MOVES_IDENTITY"] {
        let _ = write!(out, " {label}={}", counts.get(label).copied().unwrap_or(0));
    }
    out.push('\n');
    Ok(Output { text: out, code: EXIT_PASS })
}

fn verdict(name: &str, r: Result<String, ExtensionError>) -> Result<Output, CliError> {
    match r {
        Ok(detail) => Ok(Output { text: format!("VERIFY {name} PASS {detail}\n"), code: EXIT_PASS }),
        Err(ExtensionError::HypothesisViolation(h)) => {
            Ok(Output { text: format!("VERIFY {name} FAIL hypothesis={h}\n"), code: EXIT_FAIL })
        }
        Err(ExtensionError::VerificationFailed((a, b))) => {
            Ok(Output { text: format!("VERIFY {name} FAIL witness={a},{b}\n"), code: EXIT_FAIL })
        }
        Err(ExtensionError::NotConjugate) => {
            Ok(Output { text: format!("VERIFY {name} FAIL not-conjugate\n"), code: EXIT_FAIL })
        }
        Err(e) => Err(usage(e)),
    }
}

fn verify(v: VerifyCommand) -> Result<Output, CliError> {
    match v {
        VerifyCommand::Theorem1 { loop_ref, normal, u, scan } => {
            let g = resolve_table(&loop_ref)?;
            let n = resolve_subset(&normal, &g)?;
            let r = verify_theorem1(&g, &n, u, &scan.policy());
            match r {
                Ok(rep) if !rep.holds => {
                    let w = rep.witness.expect("failing report has a witness");
                    Ok(Output {
                        text: format!(
                            "VERIFY theorem1 FAIL witness={},{};{},{}\n",
                            w.left.0, w.left.1, w.right.0, w.right.1
                        ),
                        code: EXIT_FAIL,
                    })
                }
                other => {
                    verdict("theorem1", other.map(|rep| format!("pairs={} order_u={}", rep.pairs_checked, rep.order_u)))
                }
            }
        }
        VerifyCommand::Remark2 { loop_ref, scan } => {
            let g = resolve_table(&loop_ref)?;
            match verify_remark2(&g, &scan.policy()) {
                Ok(rep) if !rep.holds => {
                    let w = rep.witness.expect("failing report has a witness");
                    Ok(Output {
                        text: format!(
                            "VERIFY remark2 FAIL witness=v={},x={},y={},m={},n={}{}\n",
                            w.v,
                            w.x,
                            w.y,
                            w.m,
                            w.n,
                            mode_suffix(rep.mode)
                        ),
                        code: EXIT_FAIL,
                    })
                }
                other => verdict(
                    "remark2",
                    other.map(|rep| format!("triples={}{}", rep.triples_checked, mode_suffix(rep.mode))),
                ),
            }
        }
        VerifyCommand::Theorem2 { base, order, f1, alpha, beta } => {
            let b = resolve_table(&base)?;
            let f1 = resolve_map(&f1, &b, None)?;
            let beta = resolve_map(&beta, &b, None)?;
            verdict(
                "theorem2",
                theorem2_isomorphism(&b, order, &f1, alpha, &beta)
                    .map(|r| format!("f2={} psi={}", images(&r.f2), images(&r.psi))),
            )
        }
        VerifyCommand::Corollary { base, order, f1, f2, budget } => {
            let b = resolve_table(&base)?;
            let f1 = resolve_map(&f1, &b, None)?;
            let f2 = resolve_map(&f2, &b, None)?;
            match corollary_check(&b, order, &f1, &f2, budget) {
                Ok(rep) => {
                    let (path, code) = match &rep.path {
                        CorollaryPath::Theorem2(_) => ("theorem2".to_string(), EXIT_PASS),
                        CorollaryPath::IsomorphismSearch(IsoOutcome::Isomorphic(_)) => {
                            ("isomorphism-search".to_string(), EXIT_PASS)
                        }
                        CorollaryPath::IsomorphismSearch(IsoOutcome::NotIsomorphic(why)) => {
                            (format!("isomorphism-search-negative ({why})"), EXIT_FAIL)
                        }
                        CorollaryPath::IsomorphismSearch(IsoOutcome::Indeterminate { nodes }) => {
                            (format!("isomorphism-search-indeterminate nodes={nodes}"), EXIT_FAIL)
                        }
                    };
                    let status = if code == EXIT_PASS { "PASS" } else { "FAIL" };
                    Ok(Output {
                        text: format!(
                            "VERIFY corollary {status} path={path} beta={} j={}\n",
                            images(&rep.beta),
                            rep.exponent
                        ),
                        code,
                    })
                }
                Err(e) => verdict("corollary", Err(e)),
            }
        }
    }
}

fn images(m: &Mapping) -> String {
    m.images().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn census(a: CensusArgs) -> Result<Output, CliError> {
    let bases = a.bases.iter().map(|b| resolve_table(b).map(|t| (b.clone(), t))).collect::<Result<Vec<_>, _>>()?;
    let c =
        converse_census(&bases, &a.orders, SemiAutOptions::default(), &ScanPolicy::with_cap(a.cap)).map_err(usage)?;
    match &a.out {
        Some(prefix) => {
            let tsv = prefix.with_extension("tsv");
            let json = prefix.with_extension("json");
            std::fs::write(&tsv, c.to_tsv(a.timings)).map_err(|e| usage(format!("{}: {e}", tsv.display())))?;
            std::fs::write(&json, c.to_json(a.timings)).map_err(|e| usage(format!("{}: {e}", json.display())))?;
            Ok(Output { text: String::new(), code: EXIT_PASS })
        }
        None => Ok(Output { text: if a.json { c.to_json(a.timings) } else { c.to_tsv(a.timings) }, code: EXIT_PASS }),
    }
}
