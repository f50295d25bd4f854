use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use thompson_core::characters::kernel_finiteness_f;
use thompson_core::explorer::{
    ascending_union_witness, build_ball, sublevel_components_in, support_dynamics, DEFAULT_MAX_VERTICES,
};
use thompson_core::parse::parse_element;
use thompson_core::presentation::{check_relations, normal_form};
use thompson_core::products::{embed_product, gr_membership, kernel_finiteness_fr, ProductCharacter, Subdivision};
use thompson_core::report::{classify_json, classify_product_json, emit_report, with_schema, Format, Report};
use thompson_core::{Character, Dyadic, End, Error, TreePair};

#[derive(Parser)]
#[command(name = "thompson", version, about = "Exact computations in Thompson's group F")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an element literal (word, breakpoints, or tree pair)
    Eval { element: String },
    /// Normal form of an element
    Nf { element: String },
    /// Whether two literals denote the same element
    Equal { left: String, right: String },
    /// Sigma verdict of a character of F
    Classify {
        #[arg(long = "char", allow_hyphen_values = true)]
        chi: Character,
        /// Also report the finiteness type of the kernel
        #[arg(long)]
        kernel: bool,
    },
    /// Skeleton verdict of a character of F^r
    ClassifyProduct {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        #[arg(long)]
        kernel: bool,
    },
    /// Finiteness type of a kernel, for F (--char) or F^r (--coords)
    Kernel {
        #[arg(long = "char", allow_hyphen_values = true, conflicts_with = "coords")]
        chi: Option<Character>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "chi")]
        coords: Option<String>,
    },
    /// Membership in G_r for the given cut points, of an element or of
    /// the embedded product of one factor per piece
    GrTest {
        #[arg(long)]
        cuts: String,
        #[arg(long, conflicts_with = "factor", required_unless_present = "factor")]
        element: Option<String>,
        #[arg(long)]
        factor: Vec<String>,
    },
    /// Cayley ball about the identity
    Ball {
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        /// Mark the sublevel set of this character in DOT output
        #[arg(long = "char", allow_hyphen_values = true)]
        chi: Option<Character>,
    },
    /// Components of B_n ∩ {chi >= 0} inside B_N for N = n..=extend
    Sublevel {
        #[arg(long = "char", allow_hyphen_values = true)]
        chi: Character,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        extend: Option<u32>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Orbits of eps and 1 - eps under an element
    Orbit {
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 20)]
        iterations: u32,
        #[arg(long)]
        epsilon: Option<Dyadic>,
    },
    /// Least conjugation depth by x0 landing in F(1)
    Witness {
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 64)]
        max_n: u32,
    },
    /// Check x_i^-1 x_n x_i = x_(n+1) for all indices up to max-index
    Relations {
        #[arg(long, default_value_t = 9)]
        max_index: u32,
    },
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn object(v: Value) -> Result<String, Failure> {
    Ok(emit_report(&Report::Object(with_schema(v)), Format::Json)?)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn describe(g: &TreePair) -> Result<Value, Failure> {
    let pl = g.to_pl();
    Ok(json!({
        "normal_form": normal_form(g).to_string(),
        "tree_pair": g.to_string(),
        "breakpoints": pl.to_string(),
        "log_slopes": [pl.endpoint_log_slope(End::Zero), pl.endpoint_log_slope(End::One)],
        "key": hex(&g.canonical_key()?),
    }))
}

fn product_character(coords: &str, r: Option<usize>) -> Result<ProductCharacter, Failure> {
    let r = match r {
        Some(r) => r,
        None => thompson_core::characters::parse_rationals(coords)?.len() / 2,
    };
    Ok(ProductCharacter::parse(coords, r)?)
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let text = match command {
        Command::Eval { element } => object(describe(&parse_element(&element)?)?)?,
        Command::Nf { element } => format!("{}\n", normal_form(&parse_element(&element)?)),
        Command::Equal { left, right } => {
            format!("{}\n", parse_element(&left)? == parse_element(&right)?)
        }
        Command::Classify { chi, kernel } => object(classify_json(&chi, kernel)?)?,
        Command::ClassifyProduct { r, coords, kernel } => {
            object(classify_product_json(&product_character(&coords, r)?, kernel)?)?
        }
        Command::Kernel { chi, coords } => {
            let report = match (chi, coords) {
                (Some(chi), _) => kernel_finiteness_f(&chi)?,
                (None, Some(coords)) => kernel_finiteness_fr(&product_character(&coords, None)?)?,
                (None, None) => unreachable!("clap requires one of --char, --coords"),
            };
            object(json!({
                "kernel_type": report.describe(),
                "max_type": report.max_type.map_or(json!("infinity"), |m| json!(m)),
                "discrete": report.discrete,
            }))?
        }
        Command::GrTest { cuts, element, factor } => {
            let sub = Subdivision::parse(&cuts)?;
            let f = match element {
                Some(e) => parse_element(&e)?.to_pl(),
                None => {
                    let gs = factor
                        .iter()
                        .map(|g| parse_element(g).map(|t| t.to_pl()))
                        .collect::<Result<Vec<_>, _>>()?;
                    embed_product(&gs, &sub)?
                }
            };
            let w = gr_membership(&f, &sub)?;
            object(json!({
                "r": sub.r(),
                "member": w.member,
                "log2_product": w.log2_product,
                "log_slopes": w.log_slopes,
            }))?
        }
        Command::Ball {
            radius,
            format,
            out,
            max_vertices,
            chi,
        } => {
            let format: Format = format.parse()?;
            let ball = build_ball(radius, max_vertices)?;
            let text = emit_report(&Report::Ball { ball: &ball, chi: chi.as_ref() }, format)?;
            return write_out(&text, out.as_ref());
        }
        Command::Sublevel {
            chi,
            radius,
            extend,
            format,
            out,
            max_vertices,
        } => {
            let format: Format = format.parse()?;
            let outer = extend.unwrap_or(radius);
            if outer < radius {
                return Err(Error::BallSpec {
                    inner: radius as usize,
                    outer: outer as usize,
                }
                .into());
            }
            let mut rows = Vec::new();
            for n in radius..=outer {
                let ball = build_ball(n, max_vertices)?;
                rows.push(sublevel_components_in(&ball, radius, &chi)?);
            }
            let text = emit_report(&Report::Components(&rows), format)?;
            return write_out(&text, out.as_ref());
        }
        Command::Orbit {
            element,
            iterations,
            epsilon,
        } => {
            let report = support_dynamics(&parse_element(&element)?.to_pl(), iterations, epsilon)?;
            object(serde_json::to_value(report).expect("orbit reports serialize"))?
        }
        Command::Witness { element, max_n } => {
            let outcome = ascending_union_witness(&parse_element(&element)?.to_pl(), max_n)?;
            object(json!({ "outcome": outcome }))?
        }
        Command::Relations { max_index } => {
            let checks = check_relations(max_index)?;
            object(json!({ "checked": checks.len(), "relations": checks }))?
        }
    };
    write_out(&text, None)
}
