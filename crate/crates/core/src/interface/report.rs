use std::fmt::Write as _;

use crate::identify::{Channel, ChannelDerivatives};
use crate::scenarios::{trend_table, ScenarioResult, ScenarioStatus, SweepReport};

pub const REPORT_COLUMNS: [&str; 11] = [
    "scenario",
    "V",
    "k",
    "channel",
    "C_alpha",
    "C_q",
    "C_alphadot",
    "damping_sum",
    "trim",
    "loop_area",
    "status",
];

/// Shortest round-trip digits; exponent form outside [1e-4, 1e15).
fn num(v: Option<f64>) -> String {
    v.map(|v| {
        if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) {
            format!("{v:e}")
        } else {
            format!("{v}")
        }
    })
    .unwrap_or_default()
}

fn static_trim(r: &ScenarioResult, channel: Channel) -> Option<f64> {
    r.static_loads.map(|l| match channel {
        Channel::Lift => l.lift,
        Channel::Drag => l.drag,
        Channel::Moment => l.moment,
    })
}

fn row(r: &ScenarioResult, channel: Channel) -> [String; 11] {
    let d: Option<&ChannelDerivatives> = match r.status {
        ScenarioStatus::Ok => r.derivatives.as_ref().and_then(|d| d.get(channel)),
        _ => None,
    };
    let trim = match r.status {
        ScenarioStatus::Ok => d.and_then(|d| d.trim_value),
        ScenarioStatus::StaticOnly => static_trim(r, channel),
        ScenarioStatus::Failed(_) => None,
    };
    let area = match r.status {
        ScenarioStatus::Ok => r.loop_for(channel).map(|m| m.signed_area),
        _ => None,
    };
    [
        r.scenario.name.clone(),
        num(Some(r.speed)),
        num(Some(r.reduced_frequency)),
        channel.column().to_string(),
        num(d.and_then(|d| d.static_slope)),
        num(d.and_then(|d| d.rate_derivative)),
        num(d.and_then(|d| d.aoa_rate_derivative)),
        num(d.and_then(|d| d.damping_sum)),
        num(trim),
        num(area),
        r.status.to_string(),
    ]
}

/// Machine table (CSV) and human summary. Fields that were not identified
/// are left empty.
pub fn write_report(report: &SweepReport) -> (String, String) {
    (report_csv(report), report_text(report))
}

pub fn report_csv(report: &SweepReport) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS).expect("in-memory write");
    for r in &report.results {
        for channel in Channel::ALL {
            w.write_record(row(r, channel)).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn cell(v: Option<f64>) -> String {
    v.map(|v| format!("{v:>12.6}")).unwrap_or_else(|| format!("{:>12}", "-"))
}

pub fn report_text(report: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Forced-oscillation sweep");
    let _ = writeln!(out, "Derivatives per radian; rates nondimensionalized by c/(2V).");
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    for r in &report.results {
        let s = &r.scenario;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "[{}] altitude {} m, w = {} m/s, u = {} m/s, V = {} m/s, k = {}, alpha0 = {:.4} deg",
            s.name,
            s.altitude,
            s.vertical_velocity,
            s.forward_velocity,
            r.speed,
            r.reduced_frequency,
            r.mean_incidence.to_degrees()
        );
        let _ = writeln!(out, "status: {}", r.status);
        let _ = write!(out, "      ");
        for head in ["C_alpha", "C_q", "C_alphadot", "damp_sum", "trim", "loop_area"] {
            let _ = write!(out, "{head:>12}");
        }
        let _ = writeln!(out, "  loop");
        for channel in Channel::ALL {
            let f = row(r, channel);
            let parse = |s: &str| s.parse::<f64>().ok();
            let orientation = match r.status {
                ScenarioStatus::Ok => r
                    .loop_for(channel)
                    .map(|m| format!("{:?}", m.orientation).to_lowercase())
                    .unwrap_or_default(),
                _ => String::new(),
            };
            let _ = writeln!(
                out,
                "  {:<4}{}{}{}{}{}{}  {}",
                channel.column(),
                cell(parse(&f[4])),
                cell(parse(&f[5])),
                cell(parse(&f[6])),
                cell(parse(&f[7])),
                cell(parse(&f[8])),
                cell(parse(&f[9])),
                orientation
            );
        }
        for (mode, channel, flag) in &r.flags {
            let _ = writeln!(out, "  flag: {mode}-mode {}: {flag}", channel.column());
        }
    }
    if let Ok(rows) = trend_table(report) {
        let _ = writeln!(out);
        let _ = writeln!(out, "Trends against forward speed");
        for row in rows {
            let values: Vec<String> = row
                .speeds
                .iter()
                .zip(&row.values)
                .map(|(v, x)| format!("{v} m/s: {x:.6}"))
                .collect();
            let _ = writeln!(
                out,
                "  {:<14} {}  ({})",
                row.quantity.label(row.channel),
                values.join(", "),
                row.monotonicity
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::FlightCondition;
    use crate::plants::Plant;
    use crate::scenarios::{builtin_scenarios, example_quasi_steady, run_sweep, SweepPlan};

    fn report() -> SweepReport {
        let plan = SweepPlan::new(
            builtin_scenarios(),
            FlightCondition::sdm(0.0),
            Plant::QuasiSteady(example_quasi_steady()),
        );
        run_sweep(&plan).unwrap()
    }

    #[test]
    fn hover_rows_are_empty_not_zero() {
        let (csv_text, txt) = write_report(&report());
        let lines: Vec<&str> = csv_text.lines().collect();
        assert_eq!(lines[0], REPORT_COLUMNS.join(","));
        assert_eq!(lines.len(), 1 + 9);
        let hover: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(hover[0], "transition-beginning");
        assert_eq!(&hover[4..8], ["", "", "", ""]);
        assert_eq!(hover[9], "");
        assert!(!hover[8].is_empty());
        assert_eq!(hover[10], "STATIC_ONLY");
        assert!(lines[4].ends_with(",OK"));
        assert!(txt.contains("status: STATIC_ONLY"));
    }

    #[test]
    fn loop_area_sign_matches_orientation() {
        let rep = report();
        let (csv_text, _) = write_report(&rep);
        let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
        for rec in rdr.records() {
            let rec = rec.unwrap();
            if &rec[10] != "OK" {
                continue;
            }
            let area: f64 = rec[9].parse().unwrap();
            let r = rep.results.iter().find(|r| r.scenario.name == rec[0]).unwrap();
            let channel = Channel::ALL.into_iter().find(|c| c.column() == &rec[3]).unwrap();
            let m = r.loop_for(channel).unwrap();
            assert_eq!(area, m.signed_area);
            if area < 0.0 {
                assert_eq!(m.orientation, crate::identify::Orientation::Clockwise);
            }
        }
    }
}
