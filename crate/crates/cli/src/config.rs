use std::fs;

use frac_core::quadrature::QuadConfig;

use crate::args::QuadArgs;
use crate::CliError;

/// Apply `key = value` lines to `cfg`. Blank lines and `#` comments are
/// skipped; an unknown key is an error.
pub fn apply_config_text(cfg: &mut QuadConfig, text: &str) -> Result<(), CliError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim().trim_matches('"'));
        let bad = |what: &str| CliError::Usage(format!("config line {}: {key} expects {what}, got `{value}`", lineno + 1));
        let float = || value.parse::<f64>().map_err(|_| bad("a number"));
        let count = || value.parse::<usize>().map_err(|_| bad("a non-negative integer"));
        match key {
            "eps" => cfg.eps = float()?,
            "t_max" | "tmax" => cfg.t_max = float()?,
            "rel_tol" | "rtol" => cfg.rel_tol = float()?,
            "max_subdiv" => cfg.max_subdiv = count()?,
            "max_panels" => cfg.max_panels = count()?,
            "vanish_order" => cfg.vanish_order = float()?,
            "guard_cancellation" => cfg.guard_cancellation = value.parse::<bool>().map_err(|_| bad("true or false"))?,
            other => return Err(CliError::Usage(format!("config line {}: unknown key `{other}`", lineno + 1))),
        }
    }
    Ok(())
}

/// Defaults, then the config file, then flags.
pub fn resolve(args: &QuadArgs) -> Result<QuadConfig, CliError> {
    let mut cfg = QuadConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        apply_config_text(&mut cfg, &text)?;
    }
    if let Some(v) = args.eps {
        cfg.eps = v;
    }
    if let Some(v) = args.tmax {
        cfg.t_max = v;
    }
    if let Some(v) = args.rtol {
        cfg.rel_tol = v;
    }
    Ok(cfg)
}
