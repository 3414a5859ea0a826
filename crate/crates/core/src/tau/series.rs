use serde::Serialize;

use super::base::{tau_small, TauKind};
use super::hodge::{dressed_tau, hodge_partition, PointData};
use crate::algebra::rational;
use crate::algebra::tpoly::TPoly;
use crate::curve::CurveParams;
use crate::error::{Error, Result};

/// Everything `hodgekp tau` can dump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    #[serde(rename = "KW")]
    Kw,
    #[serde(rename = "BGW")]
    Bgw,
    #[serde(rename = "HodgeZ")]
    HodgeZ,
    #[serde(rename = "ThetaZ")]
    ThetaZ,
    #[serde(rename = "tau_qp")]
    TauQp,
    #[serde(rename = "tau_theta_qp")]
    TauThetaQp,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 6] =
        [SeriesKind::Kw, SeriesKind::Bgw, SeriesKind::HodgeZ, SeriesKind::ThetaZ, SeriesKind::TauQp, SeriesKind::TauThetaQp];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Kw => "kw",
            SeriesKind::Bgw => "bgw",
            SeriesKind::HodgeZ => "hodge-z",
            SeriesKind::ThetaZ => "theta-z",
            SeriesKind::TauQp => "tau-qp",
            SeriesKind::TauThetaQp => "tau-theta-qp",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn needs_point(self) -> bool {
        !matches!(self, SeriesKind::Kw | SeriesKind::Bgw)
    }

    fn base(self) -> TauKind {
        match self {
            SeriesKind::Kw | SeriesKind::HodgeZ | SeriesKind::TauQp => TauKind::Kw,
            _ => TauKind::Bgw,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub kind: SeriesKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(rename = "W")]
    pub weight: u32,
    /// Largest parameter degree kept, for the dressed series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<i32>,
    pub pipeline: &'static str,
    #[serde(rename = "engineVersion")]
    pub engine_version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauSeries {
    pub provenance: Provenance,
    pub body: TPoly,
}

/// Builds one of the series at weight `w`; dressed series keep parameter degree `≤ coupling`.
pub fn build_series(kind: SeriesKind, params: Option<&CurveParams>, w: u32, coupling: i32) -> Result<TauSeries> {
    let base = kind.base();
    let (body, pipeline) = match kind {
        SeriesKind::Kw | SeriesKind::Bgw => (tau_small(base, w)?, "dvv-recursion"),
        _ => {
            let params = params.ok_or_else(|| Error::MissingPoint(kind.name().to_string()))?;
            let window = base.window(w, coupling);
            let point = PointData::new(params, window.source_weight())?;
            match kind {
                SeriesKind::HodgeZ | SeriesKind::ThetaZ => {
                    let z = hodge_partition(&point, base, &window)?;
                    let mut z = z.with_max_weight(w);
                    window.target().prune(&mut z);
                    (z, "givental-direct=factorized")
                }
                _ => {
                    let d = dressed_tau(&point, base, w, coupling)?;
                    if let Some(diff) = d.difference {
                        return Err(Error::Invariant(format!("pullback and dressed base differ: {diff}")));
                    }
                    (d.tau, "givental-pullback=virasoro-dressing")
                }
            }
        }
    };
    let fmt = |c: &rational::Coefficient| Some(rational::format(c));
    let dressed = kind.needs_point();
    let provenance = Provenance {
        kind,
        q: params.filter(|_| dressed).and_then(|p| fmt(p.q())),
        p: params.filter(|_| dressed).and_then(|p| fmt(p.p())),
        s: params.filter(|_| dressed).and_then(|p| fmt(p.s())),
        weight: w,
        coupling: dressed.then_some(coupling),
        pipeline,
        engine_version: env!("CARGO_PKG_VERSION"),
    };
    Ok(TauSeries { provenance, body })
}
