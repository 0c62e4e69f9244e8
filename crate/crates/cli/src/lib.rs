//! Command-line front end for `grt-core`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! both a JSON payload and a plain-text rendering.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use grt_core::derivation::{der_dim, inner_kernel_dim, outder_dim, outder_dim_formula, Derivation};
use grt_core::ihara::{
    check_congruence, congruence_combination, freeness_table, ihara_bracket, lattice_discrepancy, soule_generator,
    special_basis, special_dim_mod,
};
use grt_core::lie::{expand_assoc, lyndon_words, parse_lie, weighted_witt_dims, witt_dim};
use grt_core::malcev::{bch, filtration_report, word_to_group};
use grt_core::motivic::{dn, dn_table, ext_table, image_model_dims, k_graded_dims, DimTable};
use grt_core::{Error, FilteredGroupSpec, GradedAlphabet, IharaElement, NilpotentElement, NumberFieldProfile};
use serde_json::{json, Value};

/// Degrees above this are refused outright.
pub const HARD_DEGREE_LIMIT: u32 = 16;
const IHARA_DEFAULT_CAP: u32 = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: i32,
    pub payload: Value,
    pub rendering: String,
    /// Whether `--json` was requested.
    pub json: bool,
}

impl CommandResult {
    /// Text for stdout: the JSON document or the table.
    pub fn stdout(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.payload).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            self.rendering.clone()
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "grt", version, about = "Exact computations in graded Lie algebras")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap (default 12 for ihara); refused above 16.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Worker threads for degreewise fan-out.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free Lie algebras in the Lyndon basis.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Derivations of the free Lie algebra on x, y.
    #[command(subcommand)]
    Der(DerCmd),
    /// The stable derivation algebra.
    #[command(subcommand)]
    Ihara(IharaCmd),
    /// Dimension tables for weighted completions.
    #[command(subcommand)]
    Motivic(MotivicCmd),
    /// Truncated Malcev completions.
    #[command(subcommand)]
    Malcev(MalcevCmd),
}

#[derive(Args, Debug)]
struct AlphabetArg {
    /// Letters with optional degrees, e.g. `x,y` or `a:3,b:5`.
    #[arg(long, default_value = "x,y")]
    alphabet: String,
}

#[derive(Subcommand, Debug)]
enum LieCmd {
    /// Dimension of the degree-n part.
    Dim {
        #[arg(long, default_value_t = 2)]
        letters: u64,
        #[arg(long)]
        degree: u32,
        /// Generator degrees (comma separated) for a weighted alphabet.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
    },
    /// Lyndon words of a given degree.
    Lyndon {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(long)]
        degree: u32,
    },
    /// Bracket of two Lie expressions.
    Bracket {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Canonical form of a Lie expression.
    Parse {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Expansion in the tensor algebra.
    Expand {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
enum DerCmd {
    /// Dimensions of derivations, inner derivations and outer derivations.
    Outdim {
        #[arg(long)]
        degree: u32,
    },
    /// Apply the derivation x ↦ X, y ↦ Y to an element.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        degree: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
enum IharaCmd {
    /// Integral basis of 𝒟ₙ (all degrees up to the cap without --degree).
    Basis {
        #[arg(long)]
        degree: Option<u32>,
        /// Also compute the dimension modulo this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// The normalized generator f_m, m odd.
    Soule {
        #[arg(long)]
        m: u32,
    },
    /// Ihara bracket of two elements of 𝒟.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Reduce 2⟨f₃,f₉⟩ − 27⟨f₅,f₇⟩ modulo a number.
    Congruence {
        #[arg(long, default_value_t = 691)]
        modulus: u64,
    },
    /// dim 𝒟ₙ against the free model on odd generators.
    Freeness,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[arg(long)]
    r1: u32,
    #[arg(long)]
    r2: u32,
    /// Size of S.
    #[arg(long = "s")]
    s: u32,
}

impl ProfileArgs {
    fn profile(&self) -> grt_core::Result<NumberFieldProfile> {
        NumberFieldProfile::new(self.r1, self.r2, self.s)
    }
}

#[derive(Subcommand, Debug)]
enum MotivicCmd {
    /// d_n for one n, or a table up to --max-n.
    Dn {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Ext dimensions, one entry or a table.
    Ext {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, requires = "n")]
        i: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Graded dimensions of the free model for k_F.
    Kdims {
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Graded dimensions of the free model on odd generators of degree >= 3.
    Image,
}

#[derive(Subcommand, Debug)]
enum MalcevCmd {
    /// log(exp a · exp b) truncated at the class.
    Bch {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(long)]
        class: u32,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Malcev coordinates of a group word such as `x y^-1 x^2`.
    Word {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(long)]
        class: u32,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Lower central series lattices and their saturations.
    Filtration {
        #[command(subcommand)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        max_m: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Free group on k generators.
    Free {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        class: u32,
    },
    /// ℤ^rank × ℤ/torsion.
    Cyclic {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        torsion: u64,
    },
    /// Subgroup of a free nilpotent group generated by Lie logarithms.
    Subgroup {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(long)]
        class: u32,
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
    },
}

/// Failure with its exit class.
struct Failure {
    status: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (status, kind) = match e {
            Error::Parse { .. } | Error::UnknownGenerator(_) => (EXIT_PARSE, "parse"),
            _ => (EXIT_PRECONDITION, "precondition"),
        };
        Failure { status, kind, message: e.to_string() }
    }
}

fn precondition(message: impl Into<String>) -> Failure {
    Failure { status: EXIT_PRECONDITION, kind: "precondition", message: message.into() }
}

type Output = Result<(Value, String), Failure>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return CommandResult {
                status: if informational { EXIT_OK } else { EXIT_USAGE },
                payload: if informational { json!({ "help": text }) } else { error_json("usage", &text) },
                rendering: text,
                json: false,
            };
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(precondition("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(precondition(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok((payload, rendering)) => CommandResult { status: EXIT_OK, payload, rendering, json: cli.json },
        Err(f) => CommandResult {
            status: f.status,
            payload: error_json(f.kind, &f.message),
            rendering: format!("error: {}\n", f.message),
            json: cli.json,
        },
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message.trim_end() } })
}

fn check_degree(cli: &Cli, degree: u32, default_cap: Option<u32>) -> Result<(), Failure> {
    if degree > HARD_DEGREE_LIMIT {
        return Err(precondition(format!("degree {degree} exceeds the hard limit {HARD_DEGREE_LIMIT}")));
    }
    if let Some(cap) = cli.max_degree.or(default_cap) {
        if degree > cap {
            return Err(precondition(format!("degree {degree} exceeds the cap {cap}; raise it with --max-degree")));
        }
    }
    Ok(())
}

fn cap(cli: &Cli, default: u32) -> Result<u32, Failure> {
    let c = cli.max_degree.unwrap_or(default);
    check_degree(cli, c, None)?;
    Ok(c)
}

fn dispatch(cli: &Cli) -> Output {
    match &cli.command {
        Command::Lie(c) => lie(cli, c),
        Command::Der(c) => der(cli, c),
        Command::Ihara(c) => ihara(cli, c),
        Command::Motivic(c) => motivic(cli, c),
        Command::Malcev(c) => malcev(cli, c),
    }
}

fn alphabet(a: &AlphabetArg) -> Result<GradedAlphabet, Failure> {
    GradedAlphabet::parse_spec(&a.alphabet).map_err(Failure::from)
}

fn lie(cli: &Cli, cmd: &LieCmd) -> Output {
    match cmd {
        LieCmd::Dim { letters, degree, weights } => {
            check_degree(cli, *degree, None)?;
            let dimension = match weights {
                Some(w) => weighted_witt_dims(w, *degree)?.get(degree).copied().unwrap_or(0),
                None => witt_dim(*letters, *degree)?,
            };
            let payload = match weights {
                Some(w) => json!({ "weights": w, "degree": degree, "dimension": big(dimension) }),
                None => json!({ "letters": letters, "degree": degree, "dimension": big(dimension) }),
            };
            Ok((payload, format!("{dimension}\n")))
        }
        LieCmd::Lyndon { alphabet: a, degree } => {
            check_degree(cli, *degree, None)?;
            let a = alphabet(a)?;
            let words = lyndon_words(&a, *degree);
            let rows: Vec<Value> =
                words.iter().map(|w| json!({ "word": w.spell(&a), "bracketing": w.bracketing(&a) })).collect();
            let mut text = String::new();
            for w in &words {
                let _ = writeln!(text, "{:<16} {}", w.spell(&a), w.bracketing(&a));
            }
            Ok((json!({ "degree": degree, "count": words.len(), "words": rows }), text))
        }
        LieCmd::Bracket { alphabet: a, left, right } => {
            let a = alphabet(a)?;
            let l = parse_lie(left, &a)?;
            let r = parse_lie(right, &a)?;
            let out = l.bracket(&r)?.to_canonical_string();
            Ok((
                json!({ "left": l.to_canonical_string(), "right": r.to_canonical_string(), "result": out }),
                line(&out),
            ))
        }
        LieCmd::Parse { alphabet: a, expr } => {
            let a = alphabet(a)?;
            let e = parse_lie(expr, &a)?;
            let canonical = e.to_canonical_string();
            let terms: Vec<Value> = e
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| json!({ "word": w.spell(&a), "bracketing": w.bracketing(&a), "coefficient": c.to_string() }))
                .collect();
            Ok((json!({ "canonical": canonical, "degrees": e.degrees(), "terms": terms }), line(&canonical)))
        }
        LieCmd::Expand { alphabet: a, expr } => {
            let a = alphabet(a)?;
            let e = parse_lie(expr, &a)?;
            let p = expand_assoc(&e).to_string();
            Ok((json!({ "lie": e.to_canonical_string(), "tensor": p }), line(&p)))
        }
    }
}

fn der(cli: &Cli, cmd: &DerCmd) -> Output {
    let a = GradedAlphabet::xy();
    match cmd {
        DerCmd::Outdim { degree } => {
            check_degree(cli, *degree, None)?;
            let der = der_dim(&a, *degree);
            let kernel = inner_kernel_dim(&a, *degree)?;
            let out = outder_dim(*degree)?;
            let formula = outder_dim_formula(*degree)?;
            let payload = json!({
                "degree": degree,
                "der_dim": der,
                "inner_kernel_dim": kernel,
                "outder_dim": out,
                "outder_dim_formula": big(formula),
            });
            let text = format!("degree {degree}: Der {der}, OutDer {out} (formula {formula})\n");
            Ok((payload, text))
        }
        DerCmd::Apply { x, y, degree, expr } => {
            let d = Derivation::from_xy(parse_lie(x, &a)?, parse_lie(y, &a)?, *degree)?;
            let e = parse_lie(expr, &a)?;
            let out = d.apply(&e)?.to_canonical_string();
            Ok((json!({ "derivation": d.to_json(), "input": e.to_canonical_string(), "result": out }), line(&out)))
        }
    }
}

fn basis_json(n: u32, basis: &[IharaElement]) -> Value {
    let strings: Vec<String> = basis.iter().map(|b| b.f().to_canonical_string()).collect();
    json!({ "degree": n, "dimension": basis.len(), "basis": strings })
}

fn ihara(cli: &Cli, cmd: &IharaCmd) -> Output {
    use rayon::prelude::*;
    let xy = GradedAlphabet::xy();
    match cmd {
        IharaCmd::Basis { degree: Some(n), prime } => {
            check_degree(cli, *n, Some(IHARA_DEFAULT_CAP))?;
            let basis = special_basis(*n)?;
            let mut payload = basis_json(*n, &basis);
            let mut text = format!("degree {n}: dimension {}\n", basis.len());
            for b in basis.iter() {
                let _ = writeln!(text, "  {}", b.f());
            }
            if let Some(p) = prime {
                let d = special_dim_mod(*n, *p)?;
                payload["dimension_mod_p"] = json!({ "p": p, "dimension": d });
                let _ = writeln!(text, "dimension mod {p}: {d}");
            }
            Ok((payload, text))
        }
        IharaCmd::Basis { degree: None, prime } => {
            if prime.is_some() {
                return Err(precondition("--prime needs --degree"));
            }
            let top = cap(cli, IHARA_DEFAULT_CAP)?;
            let bases = (2..=top).into_par_iter().map(special_basis).collect::<Vec<_>>();
            let mut rows = Vec::new();
            let mut text = String::new();
            for (n, b) in (2..=top).zip(bases) {
                let b = b?;
                let _ = writeln!(text, "{n:>3} {:>3}", b.len());
                rows.push(basis_json(n, &b));
            }
            Ok((Value::Array(rows), text))
        }
        IharaCmd::Soule { m } => {
            check_degree(cli, *m, Some(IHARA_DEFAULT_CAP))?;
            let f = soule_generator(*m)?;
            let s = f.f().to_canonical_string();
            Ok((json!({ "m": m, "generator": s }), line(&s)))
        }
        IharaCmd::Bracket { f, g } => {
            let f = IharaElement::new(parse_lie(f, &xy)?)?;
            let g = IharaElement::new(parse_lie(g, &xy)?)?;
            check_degree(cli, f.degree() + g.degree(), Some(IHARA_DEFAULT_CAP))?;
            let h = ihara_bracket(&f, &g)?;
            let s = h.f().to_canonical_string();
            Ok((json!({ "degree": h.degree(), "result": s }), line(&s)))
        }
        IharaCmd::Congruence { modulus } => {
            let report = check_congruence(&congruence_combination()?, *modulus)?;
            let mut payload = serde_json::to_value(&report).expect("report serializes");
            let mut text = format!(
                "2<f3,f9> - 27<f5,f7> mod {modulus}: {} ({} nonzero coefficients, {} not divisible)\n",
                if report.divisible { "divisible" } else { "not divisible" },
                report.coefficients.len(),
                report.nondivisible_coefficients.len()
            );
            if !report.divisible {
                let d = lattice_discrepancy(*modulus)?;
                let _ = writeln!(text, "scaling ratios making it vanish: {:?}", d.ratios_mod_p);
                payload["lattice_discrepancy"] = serde_json::to_value(&d).expect("report serializes");
            }
            Ok((payload, text))
        }
        IharaCmd::Freeness => {
            let rows = freeness_table(cap(cli, IHARA_DEFAULT_CAP)?)?;
            let mut text = String::from("  n  dim D  special only  free model  match\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{:>3} {:>6} {:>13} {:>11}  {}",
                    r.n, r.dim_d, r.dim_special_only, r.free_model, r.matches
                );
            }
            Ok((serde_json::to_value(&rows).expect("rows serialize"), text))
        }
    }
}

fn dim_table_text(t: &DimTable) -> String {
    let mut text = String::from("degree  weight  dim\n");
    for r in &t.rows {
        let _ = writeln!(text, "{:>6} {:>7}  {}", r.degree, r.weight, r.dim);
    }
    text
}

fn motivic(cli: &Cli, cmd: &MotivicCmd) -> Output {
    match cmd {
        MotivicCmd::Dn { profile, n: Some(n), .. } => {
            let d = dn(&profile.profile()?, *n)?;
            Ok((json!({ "profile": profile.profile()?, "n": n, "d_n": d }), format!("{d}\n")))
        }
        MotivicCmd::Dn { profile, n: None, max_n } => {
            let t = dn_table(&profile.profile()?, max_n.unwrap_or(12))?;
            let mut text = String::from("  n  d_n\n");
            for r in &t.rows {
                let _ = writeln!(text, "{:>3}  {}", r.n, r.d_n);
            }
            Ok((serde_json::to_value(&t).expect("table serializes"), text))
        }
        MotivicCmd::Ext { profile, i: Some(i), n: Some(n) } => {
            let e = grt_core::motivic::ext_dim(&profile.profile()?, *i, *n);
            Ok((json!({ "profile": profile.profile()?, "i": i, "n": n, "ext": e }), format!("{e}\n")))
        }
        MotivicCmd::Ext { profile, .. } => {
            let t = ext_table(&profile.profile()?, 2, 12);
            let mut text = String::from("i \\ n");
            for n in 0..=12 {
                let _ = write!(text, " {n:>3}");
            }
            text.push('\n');
            for chunk in t.rows.chunks(13) {
                let _ = write!(text, "{:>5}", chunk[0].i);
                for r in chunk {
                    let _ = write!(text, " {:>3}", r.ext);
                }
                text.push('\n');
            }
            Ok((serde_json::to_value(&t).expect("table serializes"), text))
        }
        MotivicCmd::Kdims { profile } => {
            let t = DimTable::from(k_graded_dims(&profile.profile()?, cap(cli, 12)?)?);
            let text = dim_table_text(&t);
            Ok((serde_json::to_value(&t).expect("table serializes"), text))
        }
        MotivicCmd::Image => {
            let t = DimTable::from(image_model_dims(cap(cli, 12)?)?);
            let text = dim_table_text(&t);
            Ok((serde_json::to_value(&t).expect("table serializes"), text))
        }
    }
}

fn nilpotent_json(e: &NilpotentElement) -> Value {
    json!({ "class": e.class(), "log": e.value().to_canonical_string() })
}

fn malcev(_cli: &Cli, cmd: &MalcevCmd) -> Output {
    match cmd {
        MalcevCmd::Bch { alphabet: a, class, left, right } => {
            let a = alphabet(a)?;
            let l = NilpotentElement::truncated(&parse_lie(left, &a)?, *class)?;
            let r = NilpotentElement::truncated(&parse_lie(right, &a)?, *class)?;
            let out = bch(&l, &r)?;
            Ok((nilpotent_json(&out), line(&out.value().to_canonical_string())))
        }
        MalcevCmd::Word { alphabet: a, class, word } => {
            let a = alphabet(a)?;
            let g = word_to_group(word, &a, *class)?;
            let mut payload = nilpotent_json(&g);
            payload["word"] = json!(word);
            Ok((payload, line(&g.value().to_canonical_string())))
        }
        MalcevCmd::Filtration { family, max_m } => {
            let spec = match family {
                Family::Free { k, class } => FilteredGroupSpec::FreeGroup { k: *k, class: *class },
                Family::Cyclic { rank, torsion } => {
                    FilteredGroupSpec::LatticeTimesCyclic { rank: *rank, torsion: *torsion }
                }
                Family::Subgroup { alphabet: a, class, generators } => {
                    let a = alphabet(a)?;
                    let generators = generators
                        .iter()
                        .map(|g| NilpotentElement::truncated(&parse_lie(g, &a)?, *class))
                        .collect::<grt_core::Result<Vec<_>>>()?;
                    FilteredGroupSpec::SubgroupOfNilpotent { generators }
                }
            };
            let report = filtration_report(&spec, *max_m)?;
            let mut text =
                format!("{} [{}]\n  m  rank  torsion  D/L  Gr_L torsion\n", report.family, report.filtration);
            for r in &report.rows {
                let _ = writeln!(
                    text,
                    "{:>3} {:>5}  {:<7}  {:<3}  {}",
                    r.m,
                    r.rank,
                    invariants(&r.torsion),
                    invariants(&r.d_mod_l),
                    invariants(&r.gr_l_torsion)
                );
            }
            Ok((serde_json::to_value(&report).expect("report serializes"), text))
        }
    }
}

fn invariants(v: &[u64]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        v.iter().map(|t| format!("Z/{t}")).collect::<Vec<_>>().join("+")
    }
}

fn line(s: &str) -> String {
    format!("{s}\n")
}

/// JSON number when it fits in `u64`, decimal string otherwise.
fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::from(v.to_string()), Value::from)
}
