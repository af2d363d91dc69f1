use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use relclosure::affine::{affine_maximal, affine_rank_four, gamma_l1, minimal_schemes, AssociationScheme, FiniteField};
use relclosure::closure::{closedness_verdicts, radical, relative_closure};
use relclosure::lattice::{closed_lattice, maximal_relatively_closed, rank_four, second_maximal};
use relclosure::normal_form::{order_triple, to_normal_form};
use relclosure::orbits::{orbit_multiset, orbits_explicit, QuotientAction};
use relclosure::verify::{run_battery, VerifyConfig};
use relclosure::{AmbientGroup, Error, Result, SubgroupPresentation};

/// Explicit orbit listings are refused above this many points.
const EXPLICIT_ORBIT_BOUND: u64 = 1 << 20;

#[derive(Parser)]
#[command(name = "relclosure", version, about = "Relatively closed subgroups of <a> ⋉ Z_n and affine schemes")]
struct Cli {
    /// Suppress the version header on stderr.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Binary,
}

#[derive(Args)]
struct Ambient {
    #[arg(long)]
    n: Option<u64>,
    /// May be negative; reduced mod n.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    /// `k,i,j` or a JSON document with fields k, i, j (and optionally n, alpha).
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct Field {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Normal form of a subgroup up to conjugation by W.
    NormalForm(Ambient),
    /// Order of the radical.
    Radical(Ambient),
    /// Relative closure.
    Closure(Ambient),
    /// Relative closedness, by both criteria.
    IsClosed(Ambient),
    /// Orbits on Z_n, explicit and predicted.
    Orbits(Ambient),
    /// Maximal relatively closed subgroups (of G, or of --subgroup).
    Maximal(Ambient),
    /// Second maximal relatively closed subgroups of G.
    SecondMaximal(Ambient),
    /// Relatively closed subgroups of G with exactly three orbits.
    Rank4(Ambient),
    /// Lattice of relatively closed subgroups, up to Hol(W)-conjugacy.
    Lattice {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// One-dimensional affine groups and schemes over F_(p^d).
    Affine {
        #[command(subcommand)]
        mode: AffineVerb,
    },
    /// Run the verification battery.
    Verify {
        /// Cap every sweep bound at this n.
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Subcommand)]
enum AffineVerb {
    Maximal(Field),
    Rank4(Field),
    Schemes(Field),
}

#[derive(Deserialize)]
struct SubgroupArg {
    n: Option<u64>,
    alpha: Option<u64>,
    k: u64,
    i: u64,
    j: u64,
}

#[derive(Serialize)]
struct Presented {
    k: u64,
    i: u64,
    j: u64,
}

impl From<&SubgroupPresentation> for Presented {
    fn from(h: &SubgroupPresentation) -> Self {
        Presented { k: h.k, i: h.i, j: h.j }
    }
}

enum Output {
    Text(String),
    Bytes(Vec<u8>),
}

fn parse_subgroup(text: &str) -> Result<SubgroupArg> {
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Malformed(format!("subgroup document: {e}")));
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums: std::result::Result<Vec<u64>, _> = parts.iter().map(|s| s.parse::<u64>()).collect();
    match nums {
        Ok(v) if v.len() == 3 => Ok(SubgroupArg { n: None, alpha: None, k: v[0], i: v[1], j: v[2] }),
        _ => Err(Error::Malformed(format!("expected k,i,j or a JSON document, got {text:?}"))),
    }
}

impl Ambient {
    fn group(&self) -> Result<(AmbientGroup, Option<SubgroupPresentation>)> {
        let doc = self.subgroup.as_deref().map(parse_subgroup).transpose()?;
        let n = match (self.n, doc.as_ref().and_then(|d| d.n)) {
            (Some(a), Some(b)) if a != b => return Err(Error::InvalidArgument(format!("--n {a} disagrees with document n = {b}"))),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::InvalidArgument("--n is required".into())),
        };
        let g = match (self.alpha, doc.as_ref().and_then(|d| d.alpha)) {
            (Some(a), Some(b)) => {
                let g = AmbientGroup::with_signed_alpha(n, a)?;
                if g.alpha() != b % n.max(1) {
                    return Err(Error::InvalidArgument(format!("--alpha {a} disagrees with document alpha = {b}")));
                }
                g
            }
            (Some(a), None) => AmbientGroup::with_signed_alpha(n, a)?,
            (None, Some(b)) => AmbientGroup::new(n, b)?,
            (None, None) => return Err(Error::InvalidArgument("--alpha is required".into())),
        };
        let h = match doc {
            Some(d) => Some(g.presentation_from_triple(d.k, d.i, d.j)?),
            None => None,
        };
        Ok((g, h))
    }

    fn with_subgroup(&self) -> Result<(AmbientGroup, SubgroupPresentation)> {
        match self.group()? {
            (g, Some(h)) => Ok((g, h)),
            _ => Err(Error::InvalidArgument("--subgroup is required".into())),
        }
    }

    fn json_only(&self) -> Result<()> {
        match self.format {
            Format::Json => Ok(()),
            _ => Err(Error::InvalidArgument("only --format json is supported here".into())),
        }
    }
}

/// Subgroup document with its normal form; the top-level fields read back
/// through `--subgroup`.
fn subgroup_doc(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<Value> {
    let (nf, u) = to_normal_form(g, h)?;
    let (b, x, y) = order_triple(g, &nf);
    Ok(json!({
        "n": g.n(),
        "alpha": g.alpha(),
        "k": h.k,
        "i": h.i,
        "j": h.j,
        "order": g.subgroup_order(h),
        "normal_form": Presented::from(&nf),
        "conjugator": u,
        "orders": { "b": b, "x": x, "y": y },
    }))
}

fn pretty(v: &impl Serialize) -> Output {
    Output::Text(serde_json::to_string_pretty(v).expect("serializable") + "\n")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn listing<T: Serialize>(g: &AmbientGroup, of: Option<&SubgroupPresentation>, items: &[T]) -> Result<Output> {
    let mut doc = json!({ "n": g.n(), "alpha": g.alpha(), "subgroups": items });
    if let Some(h) = of {
        doc["of"] = subgroup_doc(g, h)?;
    }
    Ok(pretty(&doc))
}

fn field_for(f: &Field) -> Result<FiniteField> {
    FiniteField::new(f.p, f.d)
}

fn run(verb: &Verb) -> Result<(Output, bool)> {
    let out = match verb {
        Verb::NormalForm(a) => {
            a.json_only()?;
            let (g, h) = a.with_subgroup()?;
            pretty(&subgroup_doc(&g, &h)?)
        }
        Verb::Radical(a) => {
            a.json_only()?;
            let (g, h) = a.with_subgroup()?;
            let r = radical(&g, &to_normal_form(&g, &h)?.0)?;
            pretty(&merge(subgroup_doc(&g, &h)?, json!({ "radical": r })))
        }
        Verb::Closure(a) => {
            a.json_only()?;
            let (g, h) = a.with_subgroup()?;
            let c = relative_closure(&g, &h)?;
            pretty(&merge(subgroup_doc(&g, &c)?, json!({ "input": Presented::from(&h) })))
        }
        Verb::IsClosed(a) => {
            a.json_only()?;
            let (g, h) = a.with_subgroup()?;
            let nf = to_normal_form(&g, &h)?.0;
            let (arithmetic, structural) = closedness_verdicts(&g, &nf)?;
            pretty(&merge(
                subgroup_doc(&g, &h)?,
                json!({ "closed": arithmetic && structural, "arithmetic": arithmetic, "structural": structural }),
            ))
        }
        Verb::Orbits(a) => {
            a.json_only()?;
            let (g, h) = a.with_subgroup()?;
            if g.n() > EXPLICIT_ORBIT_BOUND {
                return Err(Error::ResourceLimit(format!("explicit orbits need n <= {EXPLICIT_ORBIT_BOUND}")));
            }
            let nf = to_normal_form(&g, &h)?.0;
            let (min, max) = QuotientAction::new(&g, &nf)?.length_bounds();
            pretty(&merge(
                subgroup_doc(&g, &h)?,
                json!({
                    "multiset": orbit_multiset(&g, &nf)?,
                    "min_length": min,
                    "max_length": max,
                    "orbits": orbits_explicit(&g, &h),
                }),
            ))
        }
        Verb::Maximal(a) => {
            a.json_only()?;
            let (g, h) = a.group()?;
            let h = h.unwrap_or_else(|| g.whole());
            let nf = to_normal_form(&g, &h)?.0;
            listing(&g, Some(&nf), &maximal_relatively_closed(&g, &nf)?)?
        }
        Verb::SecondMaximal(a) => {
            a.json_only()?;
            let (g, _) = a.group()?;
            listing(&g, None, &second_maximal(&g)?)?
        }
        Verb::Rank4(a) => {
            a.json_only()?;
            let (g, _) = a.group()?;
            listing(&g, None, &rank_four(&g)?)?
        }
        Verb::Lattice { ambient, depth } => {
            let (g, _) = ambient.group()?;
            let lattice = closed_lattice(&g, *depth)?;
            match ambient.format {
                Format::Json => pretty(&lattice),
                Format::Dot => Output::Text(lattice.to_dot()),
                Format::Binary => return Err(Error::InvalidArgument("lattice has no binary form".into())),
            }
        }
        Verb::Affine { mode } => match mode {
            AffineVerb::Maximal(f) | AffineVerb::Rank4(f) => {
                if f.format != Format::Json {
                    return Err(Error::InvalidArgument("only --format json is supported here".into()));
                }
                let field = field_for(f)?;
                let g = gamma_l1(&field);
                let groups =
                    if matches!(mode, AffineVerb::Maximal(_)) { affine_maximal(&field)? } else { affine_rank_four(&field)? };
                pretty(&json!({ "p": f.p, "d": f.d, "q": field.order(), "n": g.n(), "alpha": g.alpha(), "subgroups": groups }))
            }
            AffineVerb::Schemes(f) => {
                let field = field_for(f)?;
                let report = minimal_schemes(&field)?;
                let schemes = report
                    .schemes
                    .iter()
                    .map(|s| AssociationScheme::from_stabilizer(&field, &s.group.presentation))
                    .collect::<Result<Vec<_>>>()?;
                match f.format {
                    Format::Binary => Output::Bytes(schemes.iter().flat_map(|s| s.to_binary()).collect()),
                    Format::Json => {
                        let matrices: Vec<Value> = schemes
                            .iter()
                            .map(|s| {
                                let rows: Vec<&[u16]> = s.colors.chunks(s.point_count).collect();
                                json!({ "point_count": s.point_count, "rank": s.rank, "valencies": s.valencies, "colors": rows })
                            })
                            .collect();
                        pretty(&json!({ "p": f.p, "d": f.d, "report": report, "matrices": matrices }))
                    }
                    Format::Dot => return Err(Error::InvalidArgument("schemes have no dot form".into())),
                }
            }
        },
        Verb::Verify { bound } => {
            let config = bound.map(VerifyConfig::capped).unwrap_or_default();
            let report = run_battery(&config);
            let passed = report.passed;
            return Ok((pretty(&report), passed));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({ "error": "malformed-input", "message": e.to_string().trim_end() });
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    if !cli.porcelain {
        eprintln!("relclosure {}", env!("CARGO_PKG_VERSION"));
    }
    match run(&cli.verb) {
        Ok((out, passed)) => {
            let mut stdout = std::io::stdout().lock();
            let written = match out {
                Output::Text(s) => stdout.write_all(s.as_bytes()),
                Output::Bytes(b) => stdout.write_all(&b),
            };
            if written.and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.code(), "message": e.to_string() }));
            ExitCode::from(if matches!(e, Error::ResourceLimit(_)) { 2 } else { 1 })
        }
    }
}
