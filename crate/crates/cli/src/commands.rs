//! The `curve`, `probs` and `sample` subcommands.

use std::io::Write;

use arctic_core::curve::{
    arctic_ellipse, classify_regime, curve_branches, BranchLabel, CurveBranch, Side, SpecialKind,
};
use arctic_core::shuffling::{
    build_weights, edge_probabilities, order_parameters, sample_tiling, vertex_type, OrderParameterField,
    PlaquetteProbabilities, RhoTable, TilingSample, MAX_RHO_TABLE_ORDER, SAMPLER_VERSION,
};
use arctic_core::{LGeometry, ScaledGeometry};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::svg::{cell_field, ramp, Figure};

/// Number of colour levels in heat fields.
const HEAT_LEVELS: f64 = 64.0;
const OVERLAY_POINTS: usize = 4000;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Derived {
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub xi_x: f64,
    pub xi_y: f64,
    pub regime: String,
    #[serde(rename = "Rc")]
    pub critical_r: f64,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub derived: Option<Derived>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleDoc {
    pub u: Option<f64>,
    pub w: Option<f64>,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpecialDoc {
    pub kind: String,
    pub side: String,
    pub u: Option<f64>,
    pub w: Option<f64>,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BranchDoc {
    pub label: String,
    pub gaps: usize,
    pub samples: Vec<SampleDoc>,
    pub special: Vec<SpecialDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CurveDocument {
    pub metadata: Metadata,
    pub alpha: f64,
    pub branches: Vec<BranchDoc>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn label(l: BranchLabel) -> &'static str {
    match l {
        BranchLabel::Ellipse => "ellipse",
        BranchLabel::Plus => "C+",
        BranchLabel::Minus => "C-",
    }
}

fn kind(k: SpecialKind) -> &'static str {
    match k {
        SpecialKind::Contact => "contact",
        SpecialKind::Tangency => "tangency",
        SpecialKind::Cusp => "cusp",
        SpecialKind::DoubleTangent => "double-tangent",
    }
}

fn side(s: Side) -> &'static str {
    match s {
        Side::Top => "top",
        Side::Bottom => "bottom",
        Side::Right => "right",
        Side::Left => "left",
        Side::CutBottom => "cut-bottom",
        Side::CutRight => "cut-right",
        Side::Interior => "interior",
    }
}

impl From<&CurveBranch> for BranchDoc {
    fn from(b: &CurveBranch) -> Self {
        BranchDoc {
            label: label(b.label).into(),
            gaps: b.gaps,
            samples: b.samples.iter().map(|s| SampleDoc { u: finite(s.u), w: finite(s.w), x: s.x, y: s.y }).collect(),
            special: b
                .special
                .iter()
                .map(|p| SpecialDoc {
                    kind: kind(p.kind).into(),
                    side: side(p.side).into(),
                    u: finite(p.u),
                    w: finite(p.w),
                    x: p.x,
                    y: p.y,
                })
                .collect(),
        }
    }
}

fn derived(cfg: &RunConfig) -> Result<Option<(ScaledGeometry, Derived)>> {
    let Some(g) = cfg.geometry.scaled()? else { return Ok(None) };
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Ok(None);
    }
    let c = classify_regime(g.r, g.q, cfg.alpha)?;
    let d = Derived {
        r: g.r,
        q: g.q,
        xi_x: g.xi_x,
        xi_y: g.xi_y,
        regime: format!("{:?}", c.regime),
        critical_r: c.critical_r,
        beta: g.beta(cfg.alpha),
    };
    Ok(Some((g, d)))
}

fn metadata(cfg: &RunConfig, derived: Option<Derived>) -> Result<Metadata> {
    Ok(Metadata {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.command.clone(),
        config: serde_json::to_value(cfg)?,
        derived,
    })
}

/// Branches for the configured geometry: the tangent-method curve when the
/// domain has a cut, the arctic ellipse otherwise.
fn branches(cfg: &RunConfig, g: Option<&ScaledGeometry>, points: usize) -> Result<Vec<CurveBranch>> {
    Ok(match g {
        Some(g) => curve_branches(g.r, g.q, cfg.alpha, points)?.branches,
        None => vec![arctic_ellipse(cfg.alpha, points)],
    })
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn overlay(fig: &mut Figure, cfg: &RunConfig, g: Option<&ScaledGeometry>, branches: &[CurveBranch]) {
    fig.polyline(
        arctic_ellipse(cfg.alpha, OVERLAY_POINTS).samples.iter().map(|s| (s.x, s.y)),
        r##"stroke="#555" stroke-width="1" stroke-dasharray="6 4""##,
    );
    fig.frame(g);
    for b in branches {
        let colour = match b.label {
            BranchLabel::Minus => "#1b7837",
            _ => "#000",
        };
        fig.polyline(b.samples.iter().map(|s| (s.x, s.y)), &format!(r#"stroke="{colour}" stroke-width="2""#));
        for p in &b.special {
            let style = match p.kind {
                SpecialKind::Cusp => r##"fill="#d6604d""##,
                _ => r##"fill="#2166ac""##,
            };
            fig.dot(p.x, p.y, 3.5, style);
        }
    }
}

pub fn cmd_curve(cfg: &RunConfig, points: usize, out: &mut dyn Write) -> Result<()> {
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(CliError::Config(format!("curve needs alpha in (0,1), got {}", cfg.alpha)));
    }
    let d = derived(cfg)?;
    let g = d.as_ref().map(|(g, _)| *g);
    let bs = branches(cfg, g.as_ref(), points)?;
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["branch", "u", "w", "x", "y"])?;
            for b in &bs {
                for s in &b.samples {
                    w.write_record([label(b.label).to_string(), s.u.to_string(), s.w.to_string(), s.x.to_string(), s.y.to_string()])?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = CurveDocument {
                metadata: metadata(cfg, d.map(|(_, d)| d))?,
                alpha: cfg.alpha,
                branches: bs.iter().map(BranchDoc::from).collect(),
            };
            json_line(out, &doc)?;
        }
        Format::Svg => {
            let mut fig = Figure::new();
            overlay(&mut fig, cfg, g.as_ref(), &bs);
            out.write_all(fig.finish().as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ProbRow {
    i: usize,
    j: usize,
    x_pos: f64,
    y_pos: f64,
    p: f64,
    q: f64,
    r: f64,
    s: f64,
    x: f64,
    z_re: f64,
    z_im: f64,
    fluid: u8,
}

#[derive(Serialize)]
struct ProbDocument<'a> {
    metadata: Metadata,
    order: usize,
    eps: f64,
    ln_z: f64,
    p: &'a [f64],
    q: &'a [f64],
    r: &'a [f64],
    s: &'a [f64],
    x: &'a [f64],
    z: &'a [[f64; 2]],
    fluid: &'a [bool],
    mask_boundary: Vec<(usize, usize)>,
}

fn lattice(cfg: &RunConfig) -> Result<LGeometry> {
    let g = cfg.geometry.lattice()?;
    if g.n > cfg.max_n {
        return Err(CliError::Config(format!("N = {} exceeds the cap {} (raise --max-n)", g.n, cfg.max_n)));
    }
    Ok(g)
}

/// Probabilities and order parameters for the configured lattice.
pub fn probabilities(cfg: &RunConfig) -> Result<(PlaquetteProbabilities, OrderParameterField)> {
    let g = lattice(cfg)?;
    let pr = edge_probabilities(&build_weights(&g, cfg.alpha)?)?;
    let field = order_parameters(&pr, cfg.eps_const);
    Ok((pr, field))
}

fn lattice_overlay(cfg: &RunConfig) -> Result<(Option<ScaledGeometry>, Vec<CurveBranch>)> {
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Ok((None, Vec::new()));
    }
    let g = derived(cfg).ok().flatten().map(|(g, _)| g);
    let bs = branches(cfg, g.as_ref(), OVERLAY_POINTS)?;
    Ok((g, bs))
}

pub fn cmd_probs(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let (pr, f) = probabilities(cfg)?;
    let n = pr.order;
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for i in 0..n {
                for j in 0..n {
                    let k = i * n + j;
                    let (x_pos, y_pos) = f.position(i, j);
                    w.serialize(ProbRow {
                        i,
                        j,
                        x_pos,
                        y_pos,
                        p: pr.p[k],
                        q: pr.q[k],
                        r: pr.r[k],
                        s: pr.s[k],
                        x: f.x[k],
                        z_re: f.z[k][0],
                        z_im: f.z[k][1],
                        fluid: f.fluid[k] as u8,
                    })?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = ProbDocument {
                metadata: metadata(cfg, derived(cfg).ok().flatten().map(|(_, d)| d))?,
                order: n,
                eps: f.eps,
                ln_z: pr.ln_z,
                p: &pr.p,
                q: &pr.q,
                r: &pr.r,
                s: &pr.s,
                x: &f.x,
                z: &f.z,
                fluid: &f.fluid,
                mask_boundary: f.mask_boundary(),
            };
            json_line(out, &doc)?;
        }
        Format::Svg => {
            let (g, bs) = lattice_overlay(cfg)?;
            let mut fig = Figure::new();
            cell_field(&mut fig, n, |i, j| ramp((f.x[i * n + j] * HEAT_LEVELS).floor().min(HEAT_LEVELS - 1.0) / (HEAT_LEVELS - 1.0)));
            for (i, j) in f.mask_boundary() {
                let (x, y) = f.position(i, j);
                fig.dot(x, y, 1.2, r##"fill="#f0a000""##);
            }
            overlay(&mut fig, cfg, g.as_ref(), &bs);
            out.write_all(fig.finish().as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleRow {
    sample: usize,
    seed: u64,
    i: usize,
    j: usize,
    mask: u8,
    #[serde(rename = "type")]
    vertex: u8,
}

#[derive(Serialize)]
struct SampleDocument {
    metadata: Metadata,
    sampler_version: u32,
    order: usize,
    samples: Vec<SampleEntry>,
}

#[derive(Serialize)]
struct SampleEntry {
    seed: u64,
    /// Vertex types row by row.
    types: Vec<u8>,
    /// Domino edge bitmask per cell: N = 1, E = 2, S = 4, W = 8.
    masks: Vec<u8>,
}

fn vertex_code(mask: u8) -> u8 {
    vertex_type(mask).map_or(0, |t| t as u8)
}

/// Exact samples with seeds `seed, seed + 1, ...`.
pub fn samples(cfg: &RunConfig) -> Result<Vec<TilingSample>> {
    let g = lattice(cfg)?;
    let wg = build_weights(&g, cfg.alpha)?;
    let seeds = (0..cfg.samples as u64).map(|k| cfg.seed.wrapping_add(k));
    if g.n <= MAX_RHO_TABLE_ORDER && cfg.samples > 1 {
        let table = RhoTable::new(&wg)?;
        Ok(seeds.map(|s| table.sample(s)).collect())
    } else {
        seeds.map(|s| sample_tiling(&wg, s).map_err(CliError::from)).collect()
    }
}

const TYPE_COLOURS: [&str; 6] = ["#b2182b", "#2166ac", "#ef8a62", "#67a9cf", "#f7f7f7", "#999999"];

pub fn cmd_sample(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    if cfg.samples == 0 {
        return Err(CliError::Config("--samples must be at least 1".into()));
    }
    let all = samples(cfg)?;
    let n = lattice(cfg)?.n;
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for (k, t) in all.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        let mask = t.mask(i, j);
                        w.serialize(SampleRow { sample: k, seed: t.seed, i, j, mask, vertex: vertex_code(mask) })?;
                    }
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = SampleDocument {
                metadata: metadata(cfg, derived(cfg).ok().flatten().map(|(_, d)| d))?,
                sampler_version: SAMPLER_VERSION,
                order: n,
                samples: all
                    .iter()
                    .map(|t| SampleEntry { seed: t.seed, types: t.cells.iter().map(|&m| vertex_code(m)).collect(), masks: t.cells.clone() })
                    .collect(),
            };
            json_line(out, &doc)?;
        }
        Format::Svg => {
            let (g, bs) = lattice_overlay(cfg)?;
            let t = &all[0];
            let mut fig = Figure::new();
            cell_field(&mut fig, n, |i, j| {
                let c = vertex_code(t.mask(i, j));
                TYPE_COLOURS.get((c as usize).wrapping_sub(1)).copied().unwrap_or("#000").to_string()
            });
            overlay(&mut fig, cfg, g.as_ref(), &bs);
            out.write_all(fig.finish().as_bytes())?;
        }
    }
    Ok(())
}
