//! Plot-ready CSV and JSON encodings.
//!
//! Floats in CSV are written with 17 significant digits in scientific
//! notation, which round-trips every `f64`. Records end in a bare `\n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geodesics::{speed, GeodesicTrace, SprayModel};
use crate::measures::{AreaReport, VolumeCoefficients};
use crate::surfaces::{Region, SurfaceOfRevolution};

/// `x` with 17 significant digits, e.g. `1.2500000000000000e-1`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Table builder on top of the `csv` writer with LF terminators.
pub struct CsvTable {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header).map_err(csv_err)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(csv_err)
    }

    pub fn finish(self) -> Result<String> {
        let bytes = self
            .writer
            .into_inner()
            .map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub const TRACE_COLUMNS: [&str; 7] = ["s", "u", "v", "du", "dv", "F", "nu_F"];

/// Trace rows `s,u,v,du,dv,F,nu_F`, where `F` is the slope norm of the
/// velocity.
pub fn trace_csv(surface: &SurfaceOfRevolution, trace: &GeodesicTrace) -> Result<String> {
    let mut t = CsvTable::new(&TRACE_COLUMNS)?;
    for (st, nu) in trace.states.iter().zip(&trace.clairaut) {
        let f = speed(surface, st.u, st.du, st.dv, SprayModel::Slope);
        t.row([st.s, st.u, st.v, st.du, st.dv, f, *nu].map(fmt_f64))?;
    }
    t.finish()
}

#[derive(Serialize)]
struct TraceRow {
    s: f64,
    u: f64,
    v: f64,
    du: f64,
    dv: f64,
    #[serde(rename = "F")]
    f: f64,
    #[serde(rename = "nu_F")]
    nu_f: f64,
    nu_riemannian: f64,
}

#[derive(Serialize)]
struct TraceDocument<'a> {
    surface: &'a str,
    model: SprayModel,
    exit_reason: crate::geodesics::ExitReason,
    stats: &'a crate::geodesics::TraceStats,
    states: Vec<TraceRow>,
}

pub fn trace_json(surface: &SurfaceOfRevolution, trace: &GeodesicTrace) -> Result<String> {
    let states = trace
        .states
        .iter()
        .zip(&trace.clairaut)
        .zip(&trace.clairaut_riem)
        .map(|((st, &nu), &nu_r)| TraceRow {
            s: st.s,
            u: st.u,
            v: st.v,
            du: st.du,
            dv: st.dv,
            f: speed(surface, st.u, st.du, st.dv, SprayModel::Slope),
            nu_f: nu,
            nu_riemannian: nu_r,
        })
        .collect();
    to_json(&TraceDocument {
        surface: surface.name(),
        model: trace.model,
        exit_reason: trace.exit_reason,
        stats: &trace.stats,
        states,
    })
}

pub const VOLCOEFF_COLUMNS: [&str; 6] = ["b", "f", "g", "h", "f_quad", "g_quad"];

/// Coefficient table with a `# monotonicity: pass|fail` footer line.
pub fn volcoeff_csv(rows: &[VolumeCoefficients], monotone: bool) -> Result<String> {
    let mut t = CsvTable::new(&VOLCOEFF_COLUMNS)?;
    for r in rows {
        t.row([
            fmt_f64(r.b),
            fmt_f64(r.f),
            fmt_f64(r.g),
            fmt_f64(r.h),
            fmt_opt(r.f_quad),
            fmt_opt(r.g_quad),
        ])?;
    }
    let mut out = t.finish()?;
    out.push_str(if monotone {
        "# monotonicity: pass\n"
    } else {
        "# monotonicity: fail\n"
    });
    Ok(out)
}

pub const AREA_COLUMNS: [&str; 16] = [
    "kind",
    "p1",
    "p2",
    "p3",
    "p4",
    "area_alpha",
    "area_BH",
    "area_HT",
    "bh_alpha",
    "ht_alpha",
    "ht_bh",
    "strict_chain",
    "bh_alpha_bounds",
    "ht_alpha_bounds",
    "ht_bh_bounds",
    "quad_error",
];

/// One row per report. Rectangles fill `p1..p4` with `c1_lo, c1_hi, c2_lo,
/// c2_hi`; disks with `center_1, center_2, radius` and an empty `p4`.
pub fn area_csv(reports: &[AreaReport]) -> Result<String> {
    let mut t = CsvTable::new(&AREA_COLUMNS)?;
    for r in reports {
        let (kind, params) = match r.region {
            Region::Rect { c1, c2 } => ("rect", [c1[0], c1[1], c2[0], c2[1]].map(Some)),
            Region::Disk { center, radius } => (
                "disk",
                [Some(center[0]), Some(center[1]), Some(radius), None],
            ),
        };
        let mut fields = vec![kind.to_string()];
        fields.extend(params.into_iter().map(fmt_opt));
        fields.extend([r.area_alpha, r.area_bh, r.area_ht].map(fmt_f64));
        fields.extend([r.ratios.bh_alpha, r.ratios.ht_alpha, r.ratios.ht_bh].map(fmt_opt));
        let v = r.verdicts;
        fields.extend(
            [
                v.strict_chain,
                v.bh_alpha_bounds,
                v.ht_alpha_bounds,
                v.ht_bh_bounds,
            ]
            .map(|b| b.to_string()),
        );
        fields.push(fmt_f64(r.quad_error));
        t.row(fields)?;
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            0.0,
        ] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn csv_uses_lf_and_commas() {
        let mut t = CsvTable::new(&["a", "b"]).unwrap();
        t.row([fmt_f64(0.5), fmt_f64(-1.0)]).unwrap();
        let s = t.finish().unwrap();
        assert_eq!(s, "a,b\n5.0000000000000000e-1,-1.0000000000000000e0\n");
    }

    #[test]
    fn volcoeff_footer() {
        let row = crate::measures::volume_coefficients(0.0).unwrap();
        let s = volcoeff_csv(&[row], true).unwrap();
        assert!(s.ends_with("\n# monotonicity: pass\n"));
        assert_eq!(s.lines().count(), 3);
    }
}
