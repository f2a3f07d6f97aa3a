use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use realtight::dividing::{self, AnnulusArcSystem, InvolutionOnMarks, ProofName};
use realtight::farey::farey_path;
use realtight::invariants::{self, LinkSign, TbRow};
use realtight::lens::{self, RealType, Special};
use realtight::slopes::{neg_cf_eval, neg_cf_expand, NegCF, Slope};
use realtight::solid_torus::{count_real_tight, count_slices, CountResult, RealKind, SliceKind, SolidTorusSpec};
use realtight::surgery::{self, ChainDiagram, Equivariance, LegendrianUnknot};
use realtight::{fmt_ratio, Error};

#[derive(Parser)]
#[command(name = "realtight", version, about = "Counts and invariants of real tight contact structures")]
struct Cli {
    /// Output format; plain text by default
    #[arg(long, value_enum, global = true, default_value = "markdown")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Farey graph distance
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Negative continued fractions
    #[command(subcommand)]
    Cf(CfCmd),
    /// Census of real tight structures
    #[command(subcommand)]
    Count(CountCmd),
    /// Bounds table for L(p,1) and L(p,p-1)
    Table {
        #[arg(long, value_parser = parse_range)]
        p: (i64, i64),
    },
    /// Rational Thurston-Bennequin numbers
    Tb(TbArgs),
    /// Genus-one Heegaard obstruction
    Obstruction {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Dividing-set enumeration and slice exhaustions
    #[command(subcommand)]
    Dividing(DividingCmd),
    /// Chain surgery diagrams
    #[command(subcommand)]
    Surgery(SurgeryCmd),
}

#[derive(Subcommand)]
enum FareyCmd {
    /// Counterclockwise distance from one slope to another
    Dist {
        #[arg(allow_hyphen_values = true)]
        from: Slope,
        #[arg(allow_hyphen_values = true)]
        to: Slope,
    },
}

#[derive(Subcommand)]
enum CfCmd {
    /// Expand a slope <= -1
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Evaluate comma-separated coefficients, e.g. -4,-2
    Eval {
        #[arg(allow_hyphen_values = true, value_parser = parse_list)]
        coeffs: IntList,
    },
}

#[derive(Subcommand)]
enum CountCmd {
    /// Real tight solid tori
    SolidTorus {
        #[arg(long = "type")]
        kind: RealKind,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long, default_value_t = 2)]
        gamma: u32,
    },
    /// Real tight basic or genuine double slices
    Slice {
        #[arg(long = "type")]
        kind: RealKind,
        #[arg(long)]
        slice: SliceKind,
    },
    /// Real tight lens spaces of a given type, or the non-real count without --type
    Lens {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long = "type")]
        kind: Option<RealType>,
    },
    /// S3 or RP3
    Special { which: Special },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct TbArgs {
    #[command(subcommand)]
    cross: Option<TbCmd>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    /// B, C or C' for the Heegaard formulas
    #[arg(long = "type")]
    kind: Option<RealType>,
    /// + or - for the singularity link A^±_{p-1}
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<LinkSign>,
}

#[derive(Subcommand)]
enum TbCmd {
    /// Compare singularity links with the Heegaard values
    CrossCheck {
        #[arg(long, value_parser = parse_range)]
        p: (i64, i64),
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    Identity,
    Rotation,
    Reflection,
    Swap,
}

#[derive(Subcommand)]
enum DividingCmd {
    /// Embedded arc systems on an annulus
    Enumerate {
        #[arg(long)]
        n_in: usize,
        #[arg(long)]
        n_out: usize,
        /// Keep only systems invariant under this involution
        #[arg(long, value_enum)]
        symmetric: Option<SymmetryArg>,
    },
    /// Replay an exhaustive slice argument
    Replay { proof: ProofName },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// Identify the lens space of a chain
    Identify {
        /// Comma-separated framings, e.g. -2,-2,-2
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list, conflicts_with = "json")]
        chain: Option<IntList>,
        /// JSON list of framings or of {tb, contact_coeff, equivariance}
        #[arg(long)]
        json: Option<String>,
    },
    /// Check an equivariant contact surgery on a Legendrian unknot
    Validate {
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, allow_hyphen_values = true)]
        contact: i64,
        #[arg(long)]
        equivariance: Equivariance,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound '{t}': {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

#[derive(Clone)]
struct IntList(Vec<i64>);

fn parse_list(s: &str) -> Result<IntList, String> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer '{t}': {e}")))
        .collect::<Result<Vec<i64>, String>>()
        .map(IntList)
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn count_text(c: &CountResult) -> String {
    format!("{c}\nnote: {}", c.note)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    let out = match cli.command {
        Command::Farey(FareyCmd::Dist { from, to }) => {
            let p = farey_path(from, to);
            match fmt {
                Format::Json => json(&p),
                _ => {
                    let path: Vec<String> = p.path.iter().map(Slope::to_string).collect();
                    format!("steps: {}\npath: {}", p.steps, path.join(" -> "))
                }
            }
        }
        Command::Cf(CfCmd::Expand { slope }) => {
            let cf = neg_cf_expand(slope)?;
            match fmt {
                Format::Json => json(&cf),
                _ => cf.to_string(),
            }
        }
        Command::Cf(CfCmd::Eval { coeffs }) => {
            let s = neg_cf_eval(&NegCF(coeffs.0))?;
            match fmt {
                Format::Json => json(&s),
                _ => s.to_string(),
            }
        }
        Command::Count(cmd) => {
            let c = match cmd {
                CountCmd::SolidTorus { kind, slope, gamma } => {
                    count_real_tight(&SolidTorusSpec { structure: kind, boundary_slope: slope, gamma_count: gamma })
                }
                CountCmd::Slice { kind, slice } => count_slices(kind, slice),
                CountCmd::Lens { p, q, kind } => match kind {
                    None => {
                        let n = lens::honda_count_lens(p, q)?;
                        CountResult::exact(n, "non-real tight count")
                    }
                    Some(RealType::A) => lens::l_a(p, q)?,
                    Some(RealType::B | RealType::Bp) => lens::l_b(p, q)?,
                    Some(t) => lens::l_star(p, q, t)?,
                },
                CountCmd::Special { which } => {
                    let s = lens::classify_special(which);
                    if fmt == Format::Json {
                        return Ok(json(&s));
                    }
                    return Ok(format!("{}\nwitness: {}", count_text(&s.count), s.witness));
                }
            };
            match fmt {
                Format::Json => json(&c),
                _ => count_text(&c),
            }
        }
        Command::Table { p } => {
            let rows = lens::bounds_table(p.0, p.1)?;
            match fmt {
                Format::Json => lens::table_json(&rows),
                Format::Csv => lens::table_csv(&rows)?.trim_end().to_string(),
                Format::Markdown => lens::table_markdown(&rows).trim_end().to_string(),
            }
        }
        Command::Tb(args) => match args.cross {
            Some(TbCmd::CrossCheck { p }) => {
                let checks = (p.0..=p.1).map(invariants::cross_check_links).collect::<Result<Vec<_>, _>>()?;
                match fmt {
                    Format::Json => json(&checks),
                    _ => checks
                        .iter()
                        .map(|c| {
                            format!(
                                "p={}: + {} vs {}; - {} vs {}: {}",
                                c.p,
                                fmt_ratio(&c.plus_link),
                                fmt_ratio(&c.type_b),
                                fmt_ratio(&c.minus_link),
                                fmt_ratio(&c.type_cprime),
                                if c.pass { "pass" } else { "FAIL" }
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("\n"),
                }
            }
            None => {
                let p = args.p.ok_or_else(|| Failure::Usage("tb needs --p".into()))?;
                let row = match (args.sign, args.kind, args.q) {
                    (Some(sign), None, _) => {
                        let v = invariants::tb_singularity_link(p, sign)?;
                        let label = if sign == LinkSign::Plus { "A+" } else { "A-" };
                        TbRow::new(p, p - 1, label, v)
                    }
                    (None, Some(t), Some(q)) => TbRow::new(p, q, t.to_string(), invariants::tb_for_type(p, q, t)?),
                    _ => return Err(Failure::Usage("tb needs either --q and --type, or --sign".into())),
                };
                match fmt {
                    Format::Json => json(&row),
                    _ => fmt_ratio(&row.value()),
                }
            }
        },
        Command::Obstruction { p, q } => {
            let o = invariants::genus1_obstruction(p, q)?;
            match fmt {
                Format::Json => json(&o),
                _ => format!(
                    "type B: {}\ntype {}: {}\n{}",
                    fmt_ratio(&o.type_b),
                    o.heegaard_type,
                    fmt_ratio(&o.heegaard_value),
                    o.verdict
                ),
            }
        }
        Command::Dividing(DividingCmd::Enumerate { n_in, n_out, symmetric }) => {
            let mut systems = dividing::enumerate_annulus_systems(n_in, n_out)?;
            if let Some(sym) = symmetric {
                let inv = match sym {
                    SymmetryArg::Identity => InvolutionOnMarks::identity(),
                    SymmetryArg::Rotation => InvolutionOnMarks::rotation_by_half(),
                    SymmetryArg::Reflection => InvolutionOnMarks::reflection(),
                    SymmetryArg::Swap => InvolutionOnMarks::boundary_swap(),
                };
                systems = dividing::filter_symmetric(&systems, &inv)?;
            }
            match fmt {
                Format::Json => json(&systems),
                _ => {
                    let mut lines = vec![format!("systems: {}", systems.len())];
                    lines.extend(systems.iter().map(AnnulusArcSystem::to_string));
                    lines.join("\n")
                }
            }
        }
        Command::Dividing(DividingCmd::Replay { proof }) => {
            let r = dividing::replay_proof(proof);
            match fmt {
                Format::Json => json(&r),
                _ => {
                    let mut lines = vec![
                        format!("proof: {}", r.name),
                        format!("boundary slopes: {} and {}", r.inner_slope, r.outer_slope),
                        format!("candidates: {}", r.candidates),
                        format!("symmetric candidates: {}", r.symmetric_candidates),
                        format!("tight survivors: {}", r.tight_survivors),
                        format!("survivor classes: {}", r.survivor_classes),
                        format!("with sign decorations: {}", r.with_sign_decorations),
                    ];
                    lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
                    lines.join("\n")
                }
            }
        }
        Command::Surgery(SurgeryCmd::Identify { chain, json: text }) => {
            let d = match (chain, text) {
                (Some(c), None) => ChainDiagram::new(c.0)?,
                (None, Some(t)) => ChainDiagram::from_json(&t)?,
                _ => return Err(Failure::Usage("surgery identify needs --chain or --json".into())),
            };
            let l = surgery::lens_from_chain(&d)?;
            match fmt {
                Format::Json => json(&l),
                _ => l.to_string(),
            }
        }
        Command::Surgery(SurgeryCmd::Validate { tb, contact, equivariance }) => {
            let d = LegendrianUnknot::new(tb, contact, equivariance)?;
            let v = surgery::validate_equivariance(&d)?;
            match fmt {
                Format::Json => json(&v),
                _ => {
                    let status = match (v.valid, v.unique) {
                        (true, true) => "valid, unique",
                        (true, false) => "valid",
                        (false, _) => "not equivariant",
                    };
                    let mut s = format!("{status}\nsmooth coefficient: {}", surgery::smooth_coefficient(&d));
                    if let Some((kind, slope)) = v.glue_back {
                        s.push_str(&format!("\nglue back: {kind} solid torus, slope {slope}"));
                    }
                    s.push_str(&format!("\n{}", v.message));
                    s
                }
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
