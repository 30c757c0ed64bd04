use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use magic_angles::angle::Angle;
use magic_angles::component::HyperbolicComponent;
use magic_angles::error::{AngleError, ComponentError, ErrorKind, LeafError, MagicError};
use magic_angles::harness::{self, angle_decimal, parse_leaf, PlotRow};
use magic_angles::interval::CircularInterval;
use magic_angles::lamination::{ends_dyadic, hubbard_tree, DEFAULT_MAX_ITER};
use magic_angles::magic::{alternate_phi, alternate_word, ble_cabrera, orbit_report, MagicFormula};
use magic_angles::pairs::RayPairTable;
use magic_angles::vein::{vein_at_pseudocenter, vein_of};
use magic_angles::words::is_renormalizable;
use num_bigint::BigUint;
use serde_json::{json, Value};

const MAX_DENOM_VAR: &str = "MAGIC_ANGLES_MAX_DENOM";
const DEFAULT_MAX_DENOM: u64 = 1 << 24;
const MAX_GRID: u64 = 1 << 16;

#[derive(Parser)]
#[command(name = "magic-angles", version, about = "Exact external-angle computations for the Mandelbrot set")]
struct Cli {
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fraction, expansion and orbit summary of an angle (`p/q` or `.PRE~PERIOD`).
    Angle { angle: String },
    /// Φ_H(θ) with every hypothesis checked.
    Phi {
        /// `A:B` root words or `root=p/q`.
        component: String,
        theta: String,
        /// Vein center; defaults to the pseudocenter of the root pair.
        #[arg(long)]
        vein: Option<String>,
    },
    /// The two-branch tuned map T_H(θ).
    Th { component: String, theta: String },
    /// φ_H(θ) = 0 1^{2p-1} · θ on the tuned set.
    AltPhi { component: String, theta: String },
    /// CSV of (x, Ψ(x)) on a grid, optionally with Φ_H graph points.
    PsiPlot {
        #[arg(long)]
        grid: u64,
        #[arg(long)]
        output: PathBuf,
        /// Components whose Φ_H graph points are added.
        #[arg(long)]
        overlay: Vec<String>,
        /// Rotation-number denominator bound for overlay samples.
        #[arg(long, default_value_t = 6)]
        max_q: u32,
    },
    /// Dyadic of least complexity in the open arc from START to END.
    Pseudocenter { start: String, end: String },
    /// End count of the Hubbard tree of a leaf `p/q,r/s` or a point `p/q`.
    Ends { leaf: String },
    /// Vein data, and optionally whether a ray pair lies on it.
    Vein {
        center: String,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Enumerated ray pairs up to a period.
    Pairs {
        #[arg(long, default_value_t = 6)]
        max_period: u32,
    },
    /// All verification sweeps.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_period: u32,
        #[arg(long, default_value_t = 5)]
        max_q: u32,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<AngleError> for Failure {
    fn from(e: AngleError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<ComponentError> for Failure {
    fn from(e: ComponentError) -> Self {
        match e {
            ComponentError::Leaf(l) => l.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<LeafError> for Failure {
    fn from(e: LeafError) -> Self {
        match e {
            LeafError::Angle(a) => a.into(),
            LeafError::TreeDidNotClose(_) => Failure::internal(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// 10-14 by cause for hypothesis and domain errors.
impl From<MagicError> for Failure {
    fn from(e: MagicError) -> Self {
        let code = match &e {
            MagicError::LowerHalfPlane => 10,
            MagicError::HalfLimb => 11,
            MagicError::WrongVein { .. } => 12,
            MagicError::RequiresPeriodAboveOne => 14,
            MagicError::Component(c) => return c.clone().into(),
            _ if e.kind() == ErrorKind::Membership => 13,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Ctx {
    json: bool,
    cap: BigUint,
}

impl Ctx {
    fn angle(&self, s: &str) -> Result<Angle, Failure> {
        Ok(Angle::parse_with_cap(s, &self.cap)?)
    }

    /// Text lines `key value`, or a single JSON object.
    fn emit(&self, fields: &[(&str, Value)]) {
        if self.json {
            let obj: serde_json::Map<String, Value> =
                fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            println!("{}", Value::Object(obj));
        } else {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in fields {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("{k:width$}  {v}");
            }
        }
    }
}

fn max_denominator() -> Result<BigUint, Failure> {
    match std::env::var(MAX_DENOM_VAR) {
        Ok(v) => v
            .trim()
            .parse::<BigUint>()
            .ok()
            .filter(|n| n > &BigUint::from(0u32))
            .ok_or_else(|| Failure::usage(format!("{MAX_DENOM_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(BigUint::from(DEFAULT_MAX_DENOM)),
    }
}

/// Components of period up to this bound are checked against the enumeration.
const COMPONENT_TABLE_PERIOD: u32 = 10;

fn component(s: &str) -> Result<(HyperbolicComponent, RayPairTable), Failure> {
    let table = RayPairTable::new(COMPONENT_TABLE_PERIOD)?;
    let h = HyperbolicComponent::parse(s, &table)?;
    Ok((h, table))
}

fn angle_fields(theta: &Angle) -> Vec<(&'static str, Value)> {
    let (pre, period) = theta.orbit_lengths();
    let report = orbit_report(theta);
    vec![
        ("angle", json!(theta.to_string())),
        ("decimal", json!(angle_decimal(theta))),
        ("expansion", json!(theta.expansion().to_string())),
        ("preperiod", json!(pre)),
        ("period", json!(period)),
        ("min_distance", json!(report.min_distance.to_string())),
        ("closest_point", json!(report.argmin_point().to_string())),
        ("real", json!(report.is_real())),
    ]
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ctx = Ctx { json: cli.json, cap: max_denominator()? };
    match cli.command {
        Command::Angle { angle } => {
            ctx.emit(&angle_fields(&ctx.angle(&angle)?));
        }
        Command::Phi { component: c, theta, vein } => {
            let (h, table) = component(&c)?;
            let theta = ctx.angle(&theta)?;
            let vein = match vein {
                Some(v) => vein_of(&ctx.angle(&v)?).map_err(MagicError::from)?,
                None if h.is_cardioid() => vein_of(&Angle::half()).map_err(MagicError::from)?,
                None => vein_at_pseudocenter(&h.root_pair()).map_err(MagicError::from)?,
            };
            let f = MagicFormula::new(h.clone(), vein)?;
            let image = f.apply(&theta)?;
            let witness = is_renormalizable(&image.expansion(), harness::RENORMALIZATION_MAX_Q, &table, false)?;
            let (offset, slope) = f.affine();
            ctx.emit(&[
                ("component", json!(h.to_string())),
                ("vein", json!(f.vein().center().to_string())),
                ("delta", json!(f.vein().complexity())),
                ("word", json!(f.word().to_string())),
                ("affine", json!(format!("{offset} + {slope} theta"))),
                ("input", json!(theta.to_string())),
                ("intermediate", json!(f.intermediate(&theta).to_string())),
                ("image", json!(image.to_string())),
                ("decimal", json!(angle_decimal(&image))),
                ("real", json!(orbit_report(&image).is_real())),
                ("renormalizable", json!(witness.is_some())),
                ("renormalization_witness", json!(witness.map(|p| p.leaf.to_string()))),
            ]);
        }
        Command::Th { component: c, theta } => {
            let (h, _) = component(&c)?;
            let theta = ctx.angle(&theta)?;
            let image = ble_cabrera(&h, &theta)?;
            ctx.emit(&[
                ("component", json!(h.to_string())),
                ("input", json!(theta.to_string())),
                ("image", json!(image.to_string())),
                ("decimal", json!(angle_decimal(&image))),
            ]);
        }
        Command::AltPhi { component: c, theta } => {
            let (h, _) = component(&c)?;
            let theta = ctx.angle(&theta)?;
            let image = alternate_phi(&h, &theta)?;
            ctx.emit(&[
                ("component", json!(h.to_string())),
                ("word", json!(alternate_word(h.period()).to_string())),
                ("input", json!(theta.to_string())),
                ("image", json!(image.to_string())),
                ("decimal", json!(angle_decimal(&image))),
                ("real", json!(orbit_report(&image).is_real())),
            ]);
        }
        Command::PsiPlot { grid, output, overlay, max_q } => {
            if grid == 0 || grid > MAX_GRID {
                return Err(Failure::usage(format!("grid must be in 1..={MAX_GRID}, got {grid}")));
            }
            let mut rows: Vec<PlotRow> = harness::psi_rows(grid)?;
            for c in &overlay {
                let (h, _) = component(c)?;
                rows.extend(harness::formula_rows(&h, max_q)?);
            }
            let file = File::create(&output).map_err(|e| Failure::usage(format!("{}: {e}", output.display())))?;
            harness::write_csv(BufWriter::new(file), &rows)
                .map_err(|e| Failure::usage(format!("{}: {e}", output.display())))?;
            ctx.emit(&[("output", json!(output.display().to_string())), ("rows", json!(rows.len()))]);
        }
        Command::Pseudocenter { start, end } => {
            let arc = CircularInterval::new(ctx.angle(&start)?, ctx.angle(&end)?)?;
            let c = arc.pseudocenter();
            ctx.emit(&[
                ("arc", json!(arc.to_string())),
                ("pseudocenter", json!(c.to_string())),
                ("complexity", json!(c.dyadic_complexity()?)),
            ]);
        }
        Command::Ends { leaf } => {
            let l = parse_leaf(&leaf)?;
            for x in [l.lo(), l.hi()] {
                if x.denom() > &ctx.cap {
                    return Err(AngleError::DenominatorTooLarge { angle: x.to_string(), cap: ctx.cap.to_string() }.into());
                }
            }
            let tree = hubbard_tree(&l, DEFAULT_MAX_ITER)?;
            ctx.emit(&[
                ("leaf", json!(l.to_string())),
                ("n", json!(tree.n)),
                ("closure_bound", json!(tree.closure_bound())),
                ("postcritical_points", json!(tree.postcritical.len())),
                ("ends", json!(tree.ends)),
            ]);
        }
        Command::Vein { center, pair } => {
            let v = vein_of(&ctx.angle(&center)?)?;
            let mut fields = vec![
                ("vein", json!(v.to_string())),
                ("complexity", json!(v.complexity())),
                ("ends", json!(ends_dyadic(v.center())?)),
            ];
            if let Some(p) = pair {
                let l = parse_leaf(&p)?;
                fields.push(("pair", json!(l.to_string())));
                fields.push(("contains", json!(v.contains(&l)?)));
            }
            ctx.emit(&fields);
        }
        Command::Pairs { max_period } => {
            let table = RayPairTable::new(max_period)?;
            for pair in table.pairs() {
                let (a, b) = pair.words();
                let c = pair.leaf.inner_arc().expect("ray pairs are nondegenerate").pseudocenter();
                let fields = [
                    ("period", json!(pair.period)),
                    ("lower", json!(pair.lower().to_string())),
                    ("upper", json!(pair.upper().to_string())),
                    ("words", json!(format!("{a}:{b}"))),
                    ("pseudocenter", json!(c.to_string())),
                ];
                if ctx.json {
                    ctx.emit(&fields);
                } else {
                    let words = format!("{a}:{b}");
                    println!("{:>2}  {:<24} {:<w$}  {}", pair.period, pair.leaf.to_string(), words, c, w = 2 * max_period as usize + 1);
                }
            }
        }
        Command::Verify { max_period, max_q } => {
            let report = harness::verify(max_period, max_q)?;
            if !report.is_consistent() {
                return Err(Failure::internal("report counts do not reconcile"));
            }
            if ctx.json {
                println!("{}", serde_json::to_string(&report).map_err(|e| Failure::internal(e.to_string()))?);
            } else {
                println!("max period {max_period}, rotation q <= {max_q}");
                for s in &report.sections {
                    let c = &s.counts;
                    println!(
                        "{:<20} components {:>5}  angles {:>6}  passed {:>6}  outside hypotheses {:>6}  failed {:>4}",
                        s.name, c.components, c.angles, c.passes, c.hypothesis_violations, c.failures
                    );
                    for (cause, n) in &s.violations {
                        println!("{:<20}   {cause}: {n}", "");
                    }
                    for f in &s.failures {
                        println!("{:<20}   FAIL {} {} -> {:?}: {}", "", f.component, f.input, f.output, f.predicate);
                    }
                }
                let t = &report.totals;
                println!("total: {} angles, {} passed, {} failed", t.angles, t.passes, t.failures);
            }
            if report.totals.failures > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                eprintln!("{}", json!({ "error": f.message, "exit_code": f.code }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
