//! Config files, snapshot CSV, report files and SVG charts.

use std::fmt::Write as _;
use std::path::Path;

use super::compare::ComparisonReport;
use super::run::Snapshot;
use crate::config::{BulkStrategy, DragModel, RampBounds, ScenarioConfig};
use crate::error::{Result, SolverError};

pub const CSV_HEADER: &str = "step,x,alpha_g,alpha_l,u_g,u_l,p_k,S_g,S_l,sigma_g,sigma_l,G_g,G_l,phi";

fn io_err(path: &Path, e: std::io::Error) -> SolverError {
    SolverError::Io(format!("{}: {e}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

/// `key = value` lines; floats use the shortest representation that reads
/// back bit-for-bit.
pub fn config_to_string(c: &ScenarioConfig) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("nx", c.nx.to_string());
    kv("nt", c.nt.to_string());
    kv("n_ramp", c.n_ramp.to_string());
    kv("rho_g0", format!("{:?}", c.rho_g0));
    kv("rho_l0", format!("{:?}", c.rho_l0));
    kv("nu_g", format!("{:?}", c.nu_g));
    kv("nu_l", format!("{:?}", c.nu_l));
    kv("g_hat", format!("{:?}", c.g_hat));
    match c.drag {
        DragModel::Constant { k_i, k_w } => {
            kv("drag", "constant".into());
            kv("k_i", format!("{k_i:?}"));
            kv("k_w", format!("{k_w:?}"));
        }
        DragModel::Cgw { kappa_i, kappa_w } => {
            kv("drag", "cgw".into());
            kv("kappa_i", format!("{kappa_i:?}"));
            kv("kappa_w", format!("{kappa_w:?}"));
        }
    }
    kv("gamma", format!("{:?}", c.gamma));
    kv("n_gamma", c.n_gamma.to_string());
    kv("chi_alpha", format!("{:?}", c.chi_alpha));
    for (name, r) in [("alpha_g", c.alpha_g), ("u_g", c.u_g), ("u_l", c.u_l)] {
        kv(&format!("{name}_min"), format!("{:?}", r.min));
        kv(&format!("{name}_max"), format!("{:?}", r.max));
    }
    let bulk = match c.bulk_strategy {
        BulkStrategy::D1Smooth => "d1_smooth",
        BulkStrategy::D1Consistent => "d1_consistent",
    };
    kv("bulk_strategy", bulk.into());
    s
}

const CONFIG_KEYS: [&str; 23] = [
    "nx", "nt", "n_ramp", "rho_g0", "rho_l0", "nu_g", "nu_l", "g_hat", "drag", "k_i", "k_w", "kappa_i", "kappa_w",
    "gamma", "n_gamma", "chi_alpha", "alpha_g_min", "alpha_g_max", "u_g_min", "u_g_max", "u_l_min", "u_l_max",
    "bulk_strategy",
];

/// Parse a config file. Every key (with the coefficients of the selected drag
/// model) is required; unknown or repeated keys are errors.
pub fn config_from_str(text: &str) -> Result<ScenarioConfig> {
    let bad = |m: String| SolverError::Config(m);
    let mut map = std::collections::BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("line {}: expected key = value", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) {
            return Err(bad(format!("line {}: unknown key `{k}`", lineno + 1)));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(bad(format!("line {}: repeated key `{k}`", lineno + 1)));
        }
    }
    let get = |k: &str| map.get(k).cloned().ok_or_else(|| bad(format!("missing key `{k}`")));
    let float = |k: &str| -> Result<f64> { get(k)?.parse().map_err(|e| bad(format!("{k}: {e}"))) };
    let int = |k: &str| -> Result<u64> { get(k)?.parse().map_err(|e| bad(format!("{k}: {e}"))) };
    let drag = match get("drag")?.as_str() {
        "constant" => DragModel::Constant { k_i: float("k_i")?, k_w: float("k_w")? },
        "cgw" => DragModel::Cgw { kappa_i: float("kappa_i")?, kappa_w: float("kappa_w")? },
        other => return Err(bad(format!("drag: unknown model `{other}`"))),
    };
    let stray = match drag {
        DragModel::Constant { .. } => ["kappa_i", "kappa_w"],
        DragModel::Cgw { .. } => ["k_i", "k_w"],
    };
    if let Some(k) = stray.iter().find(|k| map.contains_key(**k)) {
        return Err(bad(format!("key `{k}` does not belong to the selected drag model")));
    }
    let bulk_strategy = match get("bulk_strategy")?.as_str() {
        "d1_smooth" => BulkStrategy::D1Smooth,
        "d1_consistent" => BulkStrategy::D1Consistent,
        other => return Err(bad(format!("bulk_strategy: unknown value `{other}`"))),
    };
    let ramp = |name: &str| -> Result<RampBounds> {
        Ok(RampBounds::new(float(&format!("{name}_min"))?, float(&format!("{name}_max"))?))
    };
    let c = ScenarioConfig {
        nx: int("nx")? as usize,
        nt: int("nt")?,
        n_ramp: int("n_ramp")?,
        rho_g0: float("rho_g0")?,
        rho_l0: float("rho_l0")?,
        nu_g: float("nu_g")?,
        nu_l: float("nu_l")?,
        g_hat: float("g_hat")?,
        drag,
        gamma: float("gamma")?,
        n_gamma: int("n_gamma")?,
        chi_alpha: float("chi_alpha")?,
        alpha_g: ramp("alpha_g")?,
        u_g: ramp("u_g")?,
        u_l: ramp("u_l")?,
        bulk_strategy,
    };
    c.validate()?;
    Ok(c)
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig> {
    config_from_str(&read_text(path)?)
}

fn columns(s: &Snapshot) -> [&Vec<f64>; 13] {
    [&s.x, &s.alpha_g, &s.alpha_l, &s.u_g, &s.u_l, &s.p_k, &s.s_g, &s.s_l, &s.sigma_g, &s.sigma_l, &s.g_g, &s.g_l, &s.phi]
}

/// Snapshot CSV with 17 significant digits and LF line endings.
pub fn snapshots_to_csv(snapshots: &[Snapshot]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in snapshots {
        let cols = columns(s);
        for i in 0..s.nx() {
            let _ = write!(out, "{}", s.step);
            for c in cols {
                let _ = write!(out, ",{:.16e}", c[i]);
            }
            out.push('\n');
        }
    }
    out
}

/// Parse a snapshot CSV; consecutive rows with the same step form one snapshot.
pub fn snapshots_from_csv(text: &str) -> Result<Vec<Snapshot>> {
    let bad = |m: String| SolverError::Io(format!("csv: {m}"));
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(bad("unexpected header".into()));
    }
    let mut out: Vec<Snapshot> = Vec::new();
    for (k, line) in lines.enumerate() {
        let mut it = line.split(',');
        let step: u64 = it.next().unwrap_or("").parse().map_err(|e| bad(format!("row {}: {e}", k + 1)))?;
        let vals: Vec<f64> = it.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|e| bad(format!("row {}: {e}", k + 1)))?;
        if vals.len() != 13 {
            return Err(bad(format!("row {}: expected 14 columns", k + 1)));
        }
        if out.last().map(|s| s.step) != Some(step) {
            out.push(Snapshot { step, ..Default::default() });
        }
        let s = out.last_mut().expect("pushed above");
        let cols = [
            &mut s.x, &mut s.alpha_g, &mut s.alpha_l, &mut s.u_g, &mut s.u_l, &mut s.p_k, &mut s.s_g, &mut s.s_l,
            &mut s.sigma_g, &mut s.sigma_l, &mut s.g_g, &mut s.g_l, &mut s.phi,
        ];
        for (c, v) in cols.into_iter().zip(vals) {
            c.push(v);
        }
    }
    Ok(out)
}

/// Plain-text `key = value` report.
pub fn report_to_string(r: &ComparisonReport) -> String {
    let mut s = String::new();
    for f in &r.fields {
        let _ = writeln!(s, "linf_rel.{} = {:e}", f.name, f.linf);
        let _ = writeln!(s, "l2_rel.{} = {:e}", f.name, f.l2);
    }
    for (tag, o) in [("lbm", r.outlet_lbm), ("fd", r.outlet_fd)] {
        let _ = writeln!(s, "outlet.{tag}.alpha_g = {:e}", o.alpha_g);
        let _ = writeln!(s, "outlet.{tag}.u_g = {:e}", o.u_g);
        let _ = writeln!(s, "outlet.{tag}.u_l = {:e}", o.u_l);
        let _ = writeln!(s, "outlet.{tag}.mixture_flux = {:e}", o.mixture_flux);
    }
    let _ = writeln!(s, "outlet.gas_discrepancy = {:e}", r.outlet_gas_discrepancy());
    let _ = writeln!(s, "mixture_flux_variation.lbm = {:e}", r.flux_variation_lbm);
    let _ = writeln!(s, "mixture_flux_variation.fd = {:e}", r.flux_variation_fd);
    let _ = writeln!(s, "mean_pressure_gradient_rel = {:e}", r.mean_gradient_diff);
    match r.analytic_residual {
        Some(v) => {
            let _ = writeln!(s, "analytic_residual = {v:e}");
        }
        None => s.push_str("analytic_residual = n/a\n"),
    }
    let _ = writeln!(s, "runtime_s.lbm = {:.3}", r.runtime_lbm_s);
    let _ = writeln!(s, "runtime_s.fd = {:.3}", r.runtime_fd_s);
    s
}

/// Self-contained SVG line chart of `series` (label, x, y) sharing one axis box.
pub fn svg_chart(title: &str, series: &[(&str, &[f64], &[f64])]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let range = |it: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, lo + 0.5)
        }
    };
    let (x0, x1) = range(&mut series.iter().flat_map(|s| s.1.iter().copied()));
    let (y0, y1) = range(&mut series.iter().flat_map(|s| s.2.iter().copied()));
    let px = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#, W - 2.0 * M, H - 2.0 * M);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{title}</text>"#, W / 2.0, M / 2.0);
    let _ = writeln!(s, r#"<text x="{M}" y="{}">{x0:.3}</text><text x="{}" y="{}" text-anchor="end">{x1:.3}</text>"#, H - M + 16.0, W - M, H - M + 16.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{y0:.4e}</text><text x="{}" y="{}" text-anchor="end">{y1:.4e}</text>"#, M - 4.0, H - M, M - 4.0, M + 4.0);
    for (k, (label, xs, ys)) in series.iter().enumerate() {
        let colour = COLOURS[k % COLOURS.len()];
        let pts: Vec<String> = xs.iter().zip(ys.iter()).map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let _ = writeln!(s, r#"<text x="{}" y="{}" fill="{colour}">{label}</text>"#, W - M - 80.0, M + 16.0 * (k as f64 + 1.0));
    }
    s.push_str("</svg>\n");
    s
}
