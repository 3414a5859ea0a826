use std::path::Path;

use hodgekp_core::curve::CurveParams;
use serde::Deserialize;

pub const DEFAULT_CATALOG: &str = include_str!("../config/catalog.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    points: Vec<String>,
    coupling: Option<i32>,
    seed: Option<u64>,
    samples: Option<usize>,
    mutants: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub points: Vec<CurveParams>,
    pub coupling: i32,
    pub seed: u64,
    pub samples: usize,
    pub mutants: usize,
}

fn parse_point(s: &str) -> Result<CurveParams, String> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let [q, p, sq] = parts.as_slice() else {
        return Err(format!("point {s:?} must have the form \"q p s\""));
    };
    CurveParams::parse(q, p, sq).map_err(|e| format!("point {s:?}: {e}"))
}

pub fn parse(text: &str) -> Result<Config, String> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| e.to_string())?;
    let points = raw.points.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
    if points.is_empty() {
        return Err("config lists no points".into());
    }
    Ok(Config {
        points,
        coupling: raw.coupling.unwrap_or(4),
        seed: raw.seed.unwrap_or(20240601),
        samples: raw.samples.unwrap_or(8),
        mutants: raw.mutants.unwrap_or(20),
    })
}

pub fn load(path: Option<&Path>) -> Result<Config, String> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
        None => parse(DEFAULT_CATALOG),
    }
}
