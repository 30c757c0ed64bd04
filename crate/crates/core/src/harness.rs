//! Batch verification sweeps and plot data.
//!
//! Angle sources are fixed so runs are reproducible: root angles of
//! enumerated components, their tunings of cardioid angles, and tunings of
//! `k/(2^j - 1)` for the alternate formula. Everything is visited in
//! `(period, angle)` order.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::angle::Angle;
use crate::component::HyperbolicComponent;
use crate::error::{ComponentError, ErrorKind, MagicError};
use crate::lamination::{arcs_disjoint, ends, ends_dyadic, Leaf};
use crate::magic::{
    alternate_phi, douady_t, in_u_p, is_real_angle, orbit_report, psi, u_p_radius, MagicFormula,
};
use crate::pairs::{RayPair, RayPairTable};
use crate::rotation::cardioid_angles;
use crate::vein::vein_at_pseudocenter;
use crate::words::is_renormalizable;

/// Largest block-word period used when testing images for renormalizability.
pub const RENORMALIZATION_MAX_Q: u32 = 8;

/// Largest `j` in the alternate-formula samples `tune(H, k/(2^j - 1))`.
pub const ALTERNATE_MAX_J: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepParameters {
    pub max_period: u32,
    pub max_rotation_q: u32,
    pub renormalization_max_q: u32,
    pub alternate_max_j: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub components: usize,
    pub angles: usize,
    pub passes: usize,
    pub hypothesis_violations: usize,
    pub failures: usize,
}

impl Counts {
    fn add(&mut self, other: &Counts) {
        self.components += other.components;
        self.angles += other.angles;
        self.passes += other.passes;
        self.hypothesis_violations += other.hypothesis_violations;
        self.failures += other.failures;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub component: String,
    pub vein: Option<String>,
    pub input: String,
    pub output: Option<String>,
    pub predicate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub counts: Counts,
    /// Hypothesis violations by cause.
    pub violations: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl Section {
    fn new(name: &str) -> Self {
        Section {
            name: name.to_string(),
            counts: Counts::default(),
            violations: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    fn pass(&mut self) {
        self.counts.angles += 1;
        self.counts.passes += 1;
    }

    fn violation(&mut self, cause: &str) {
        self.counts.angles += 1;
        self.counts.hypothesis_violations += 1;
        *self.violations.entry(cause.to_string()).or_default() += 1;
    }

    fn fail(&mut self, failure: Failure) {
        self.counts.angles += 1;
        self.counts.failures += 1;
        self.failures.push(failure);
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        if ok {
            self.pass();
        } else {
            self.fail(failure());
        }
    }

    pub fn is_consistent(&self) -> bool {
        let c = &self.counts;
        c.passes + c.failures + c.hypothesis_violations == c.angles
            && self.failures.len() == c.failures
            && self.violations.values().sum::<usize>() == c.hypothesis_violations
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub parameters: SweepParameters,
    pub sections: Vec<Section>,
    pub totals: Counts,
}

impl SweepReport {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn is_consistent(&self) -> bool {
        let mut sum = Counts::default();
        for s in &self.sections {
            sum.add(&s.counts);
        }
        sum == self.totals && self.sections.iter().all(Section::is_consistent)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.sections.iter().flat_map(|s| &s.failures)
    }
}

fn failure(component: &str, vein: Option<String>, input: &Angle, output: Option<&Angle>, predicate: &str) -> Failure {
    Failure {
        component: component.to_string(),
        vein,
        input: input.to_string(),
        output: output.map(ToString::to_string),
        predicate: predicate.to_string(),
    }
}

/// Every sweep at the given bounds.
pub fn verify(max_period: u32, max_rotation_q: u32) -> Result<SweepReport, ComponentError> {
    let table = RayPairTable::new(max_period.max(RENORMALIZATION_MAX_Q))?;
    let cardioid = cardioid_angles(max_rotation_q)?;
    let formula_run = formula_sweep(&table, max_period, &cardioid);
    let sections = vec![
        douady_sweep(&cardioid),
        formula_run.section,
        renormalization_sweep(&table, &formula_run.images, RENORMALIZATION_MAX_Q)?,
        index_sweep(&table, max_period),
        side_sweep(&table, max_period),
        disjoint_intervals_sweep(&table, max_period),
        alternate_sweep(&table, max_period, ALTERNATE_MAX_J),
    ];
    let mut totals = Counts::default();
    for s in &sections {
        totals.add(&s.counts);
    }
    Ok(SweepReport {
        parameters: SweepParameters {
            max_period,
            max_rotation_q,
            renormalization_max_q: RENORMALIZATION_MAX_Q,
            alternate_max_j: ALTERNATE_MAX_J,
        },
        sections,
        totals,
    })
}

/// `T(η)` is real for each cardioid angle `η`, and `Ψ(T(η))` is `T(η)`
/// or, below 1/2, its reflection `1 - T(η)`.
pub fn douady_sweep(cardioid: &[Angle]) -> Section {
    let mut s = Section::new("douady");
    s.counts.components = 1;
    for eta in cardioid {
        match douady_t(eta) {
            Ok(t) => {
                let real = is_real_angle(&t);
                s.check(real && psi(&t) == upper_reflection(&t), || {
                    let predicate = if real { "psi(T) = T up to reflection" } else { "is_real_angle" };
                    failure("0:1", None, eta, Some(&t), predicate)
                })
            }
            Err(e) => s.violation(e.cause()),
        }
    }
    s
}

/// `x` if `x >= 1/2`, else `1 - x`.
pub fn upper_reflection(x: &Angle) -> Angle {
    if x >= &Angle::half() {
        x.clone()
    } else {
        Angle::from_ratio(&-x.to_ratio())
    }
}

/// Components of the formula sweep: every enumerated pair of period
/// `2..=max_period`. The cardioid has its own sweep.
pub fn components(table: &RayPairTable, max_period: u32) -> Vec<HyperbolicComponent> {
    pairs_up_to(table, max_period)
        .map(HyperbolicComponent::from_ray_pair)
        .collect()
}

/// `{a_H} ∪ {tune(H, η)}`, sorted and without repeats.
pub fn formula_inputs(h: &HyperbolicComponent, cardioid: &[Angle]) -> Vec<Angle> {
    let mut inputs: Vec<Angle> = std::iter::once(h.root_a().clone())
        .chain(cardioid.iter().map(|eta| h.tune(eta)))
        .collect();
    inputs.sort();
    inputs.dedup();
    inputs
}

/// Result of [`formula_sweep`]: the section and every image computed.
pub struct FormulaRun {
    pub section: Section,
    /// `(component, vein, input, Φ_H(input))`.
    pub images: Vec<(String, String, Angle, Angle)>,
}

/// `Φ_H(θ)` is real for every admissible component and input.
pub fn formula_sweep(table: &RayPairTable, max_period: u32, cardioid: &[Angle]) -> FormulaRun {
    let mut s = Section::new("main");
    let mut images = Vec::new();
    for h in components(table, max_period) {
        s.counts.components += 1;
        let inputs = formula_inputs(&h, cardioid);
        let formula = match MagicFormula::for_component(h.clone()) {
            Ok(f) => f,
            Err(e) => {
                for theta in &inputs {
                    record_error(&mut s, &e, &h, theta);
                }
                continue;
            }
        };
        let vein = formula.vein().to_string();
        for theta in &inputs {
            match formula.apply(theta) {
                Ok(phi) => {
                    s.check(is_real_angle(&phi), || {
                        failure(&h.to_string(), Some(vein.clone()), theta, Some(&phi), "is_real_angle")
                    });
                    images.push((h.to_string(), vein.clone(), theta.clone(), phi));
                }
                Err(e) => record_error(&mut s, &e, &h, theta),
            }
        }
    }
    FormulaRun { section: s, images }
}

fn record_error(s: &mut Section, e: &MagicError, h: &HyperbolicComponent, theta: &Angle) {
    match e.kind() {
        ErrorKind::Hypothesis | ErrorKind::Membership => s.violation(e.cause()),
        ErrorKind::Internal => s.fail(failure(&h.to_string(), None, theta, None, e.cause())),
    }
}

/// No formula image tiles into the root words of a ray pair of period
/// `2..=max_q`.
pub fn renormalization_sweep(
    table: &RayPairTable,
    images: &[(String, String, Angle, Angle)],
    max_q: u32,
) -> Result<Section, ComponentError> {
    let mut s = Section::new("non-renormalizable");
    let mut seen = std::collections::BTreeSet::new();
    for (component, vein, theta, phi) in images {
        if seen.insert(component.clone()) {
            s.counts.components += 1;
        }
        let witness: Option<RayPair> = is_renormalizable(&phi.expansion(), max_q, table, false)?;
        s.check(witness.is_none(), || {
            let w = witness.as_ref().map(|p| p.leaf.to_string()).unwrap_or_default();
            failure(component, Some(vein.clone()), theta, Some(phi), &format!("renormalizable by {w}"))
        });
    }
    Ok(s)
}

fn pairs_up_to(table: &RayPairTable, max_period: u32) -> impl Iterator<Item = &RayPair> {
    table.pairs().iter().filter(move |p| p.period <= max_period)
}

fn third() -> Angle {
    Angle::new(1, 3).expect("nonzero")
}

/// `D^{δ_V}(θ⁺)` is real for every pair on a vein with pseudocenter below 1/3.
pub fn index_sweep(table: &RayPairTable, max_period: u32) -> Section {
    let mut s = Section::new("index");
    for pair in pairs_up_to(table, max_period) {
        s.counts.components += 1;
        let vein = vein_at_pseudocenter(&pair.leaf).expect("ray pairs have dyadic pseudocenters");
        if vein.center() >= &third() {
            s.violation("pseudocenter >= 1/3");
            continue;
        }
        match vein.contains(&pair.leaf) {
            Ok(true) => {}
            Ok(false) => {
                s.violation("wrong vein");
                continue;
            }
            Err(e) => {
                s.fail(failure(&pair.leaf.to_string(), Some(vein.to_string()), pair.upper(), None, &e.to_string()));
                continue;
            }
        }
        let image = pair.upper().iterate(vein.complexity() as usize);
        s.check(is_real_angle(&image), || {
            failure(&pair.leaf.to_string(), Some(vein.to_string()), pair.upper(), Some(&image), "is_real_angle")
        });
    }
    s
}

/// `θ⁺ - θ0 < θ0 - θ⁻` for pairs with pseudocenter `θ0 < 1/3`.
pub fn side_sweep(table: &RayPairTable, max_period: u32) -> Section {
    let mut s = Section::new("side");
    for pair in pairs_up_to(table, max_period) {
        s.counts.components += 1;
        let arc = pair.leaf.inner_arc().expect("ray pairs are nondegenerate");
        let center = arc.pseudocenter();
        if center >= third() {
            s.violation("pseudocenter >= 1/3");
            continue;
        }
        let upper_gap = pair.upper().sub_linear(&center);
        let lower_gap = center.sub_linear(pair.lower());
        s.check(upper_gap < lower_gap, || {
            failure(&pair.leaf.to_string(), None, pair.upper(), Some(&center), "upper gap < lower gap")
        });
    }
    s
}

/// Tree end count equals that of the pseudocenter exactly when the
/// iterated arcs are disjoint, and never exceeds it.
pub fn disjoint_intervals_sweep(table: &RayPairTable, max_period: u32) -> Section {
    let mut s = Section::new("disjoint-intervals");
    for pair in pairs_up_to(table, max_period) {
        s.counts.components += 1;
        let center = pair.leaf.inner_arc().expect("nondegenerate").pseudocenter();
        let q = center.dyadic_complexity().expect("dyadic") as usize;
        let outcome = ends(&pair.leaf).and_then(|e| Ok((e, ends_dyadic(&center)?)));
        match outcome {
            Ok((e, e0)) => {
                let ok = (e == e0) == arcs_disjoint(&pair.leaf, q) && e <= e0;
                s.check(ok, || {
                    failure(
                        &pair.leaf.to_string(),
                        None,
                        pair.lower(),
                        Some(&center),
                        &format!("ends {e} vs {e0} against arc disjointness"),
                    )
                });
            }
            Err(e) => s.fail(failure(&pair.leaf.to_string(), None, pair.lower(), None, &e.to_string())),
        }
    }
    s
}

/// `k/(2^j - 1)` for `1 <= j <= max_j`, `0 <= k < 2^j - 1`, sorted and distinct.
pub fn alternate_parameters(max_j: u32) -> Vec<Angle> {
    let mut out: Vec<Angle> = (1..=max_j)
        .flat_map(|j| {
            let m = (1u64 << j) - 1;
            (0..m).map(move |k| Angle::new(k, m).expect("nonzero"))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// For `θ ∈ Θ_H`: the orbit of `θ` stays `2^{-2p}` away from 1/2, and
/// `φ_H(θ)` is real, inside `U_p`, with no later iterate inside `U_p`.
pub fn alternate_sweep(table: &RayPairTable, max_period: u32, max_j: u32) -> Section {
    let mut s = Section::new("alternate");
    let params = alternate_parameters(max_j);
    for pair in pairs_up_to(table, max_period) {
        let h = HyperbolicComponent::from_ray_pair(pair);
        let p = h.period();
        s.counts.components += 1;
        for eta in &params {
            let theta = h.tune(eta);
            let name = h.to_string();
            if orbit_report(&theta).min_distance < u_p_radius(p) {
                s.fail(failure(&name, None, &theta, None, "orbit stays 2^{-2p} from 1/2"));
                continue;
            }
            match alternate_phi(&h, &theta) {
                Ok(phi) => {
                    let report = orbit_report(&phi);
                    let predicate = if !report.is_real() {
                        Some("is_real_angle")
                    } else if !in_u_p(&phi, p) {
                        Some("image in U_p")
                    } else if report.orbit.iter().skip(1).any(|x| in_u_p(x, p)) {
                        Some("no later iterate in U_p")
                    } else {
                        None
                    };
                    s.check(predicate.is_none(), || {
                        failure(&name, None, &theta, Some(&phi), predicate.unwrap_or_default())
                    });
                }
                Err(e) => record_error(&mut s, &e, &h, &theta),
            }
        }
    }
    s
}

/// Decimal rendering with 12 significant digits; presentation only.
pub fn decimal(x: &BigRational) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (11 - magnitude).max(0) as usize;
    format!("{v:.places$}")
}

pub fn angle_decimal(x: &Angle) -> String {
    decimal(&x.to_ratio())
}

/// One row of plot data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlotRow {
    pub series: String,
    pub x: String,
    pub x_decimal: String,
    pub y: String,
    pub y_decimal: String,
}

impl PlotRow {
    fn new(series: &str, x: &Angle, y: &Angle) -> Self {
        PlotRow {
            series: series.to_string(),
            x: x.to_string(),
            x_decimal: angle_decimal(x),
            y: y.to_string(),
            y_decimal: angle_decimal(y),
        }
    }
}

/// `(x, Ψ(x))` for `x = k/grid`, `0 <= k < grid`.
pub fn psi_rows(grid: u64) -> Result<Vec<PlotRow>, ComponentError> {
    if grid == 0 {
        return Err(crate::error::AngleError::ZeroDenominator.into());
    }
    Ok((0..grid)
        .map(|k| {
            let x = Angle::new(k, grid).expect("nonzero");
            PlotRow::new("psi", &x, &psi(&x))
        })
        .collect())
}

/// Graph points `(θ, Φ_H(θ))` over the upper part of `∂H`, sampled at
/// tunings of cardioid angles with `q <= max_q`.
pub fn formula_rows(h: &HyperbolicComponent, max_q: u32) -> Result<Vec<PlotRow>, MagicError> {
    let formula = MagicFormula::for_component(h.clone())?;
    let series = h.to_string();
    Ok(cardioid_angles(max_q)?
        .iter()
        .map(|eta| h.tune(eta))
        .filter_map(|theta| formula.apply(&theta).ok().map(|phi| PlotRow::new(&series, &theta, &phi)))
        .collect())
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: Write>(out: W, rows: &[PlotRow]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Leaf literal `"p/q,r/s"`.
pub fn parse_leaf(s: &str) -> Result<Leaf, crate::error::AngleError> {
    let (a, b) = s.split_once(',').unwrap_or((s, s));
    let a: Angle = a.trim().parse()?;
    let b: Angle = b.trim().parse().map_err(|e| match e {
        crate::error::AngleError::Parse { position, message } => crate::error::AngleError::Parse {
            position: position + s.find(',').map_or(0, |i| i + 1),
            message,
        },
        other => other,
    })?;
    Ok(Leaf::new(a, b))
}
