//! JSON case documents.
//!
//! ```json
//! {
//!   "condition": { "chord": 0.2299, "freestream_speed": 100.0, "sound_speed": 340.0 },
//!   "oscillation": { "mean_deg": 3.16, "amplitude_deg": 4.59, "k": 0.0811, "cycles": 3 },
//!   "plant": { "kind": "quasi_steady", "cl_alpha": 5.0, "cm_q": -3.0 },
//!   "scenarios": "builtin"
//! }
//! ```
//!
//! Angles are in degrees, lengths in metres, speeds in m/s. Unknown keys are
//! rejected. `schema/case.schema.json` in the repository lists every key.

use std::fmt;

use serde_json::{json, Map, Value};

use super::monitor::AliasTable;
use crate::kinematics::{FlightCondition, Mode, OscillationSpec};
use crate::plants::{Plant, PlantError};
use crate::scenarios::{builtin_scenarios, OscillationTemplate, SpeedBasis, SweepPlan, TransitionScenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigErrorKind {
    MissingKey,
    UnknownKey,
    UnitViolation,
    MalformedDocument,
}

impl fmt::Display for ConfigErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigErrorKind::MissingKey => "missing key",
            ConfigErrorKind::UnknownKey => "unknown key",
            ConfigErrorKind::UnitViolation => "unit violation",
            ConfigErrorKind::MalformedDocument => "malformed document",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub kind: ConfigErrorKind,
    /// Dotted path such as `condition.chord` or `scenarios[1].altitude`.
    pub key: String,
    /// 1-based line in the document.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} '{}' (line {}): {}", self.kind, self.key, self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// A parsed case document.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub plan: SweepPlan,
    /// Extra monitor-table header names.
    pub monitor_aliases: Option<AliasTable>,
}

#[derive(Debug, Clone, PartialEq)]
enum Seg {
    Key(String),
    Index(usize),
}

impl Seg {
    fn key(k: &str) -> Self {
        Seg::Key(k.to_string())
    }
}

fn path_string(path: &[Seg]) -> String {
    let mut s = String::new();
    for seg in path {
        match seg {
            Seg::Key(k) if s.is_empty() => s.push_str(k),
            Seg::Key(k) => {
                s.push('.');
                s.push_str(k);
            }
            Seg::Index(i) => s.push_str(&format!("[{i}]")),
        }
    }
    s
}

/// Byte offset of the start of element `index` in the array opening at or
/// after `from`.
fn array_element(text: &str, from: usize, index: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut i = from + text[from..].find('[')? + 1;
    let (mut depth, mut in_str, mut escaped) = (0usize, false, false);
    let mut count = 0usize;
    let mut at_start = true;
    while i < bytes.len() {
        let c = bytes[i];
        if in_str {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, b'\\') => escaped = true,
                (false, b'"') => in_str = false,
                _ => {}
            }
        } else {
            match c {
                b' ' | b'\n' | b'\r' | b'\t' => {
                    i += 1;
                    continue;
                }
                _ if at_start && depth == 0 => {
                    if count == index {
                        return Some(i);
                    }
                    at_start = false;
                    continue;
                }
                b'"' => in_str = true,
                b'{' | b'[' => depth += 1,
                b'}' | b']' if depth == 0 => return None,
                b'}' | b']' => depth -= 1,
                b',' if depth == 0 => {
                    count += 1;
                    at_start = true;
                }
                _ => {}
            }
        }
        i += 1;
    }
    None
}

/// Line of the deepest segment of `path` that can be found in `text`.
fn locate(text: &str, path: &[Seg]) -> usize {
    let mut pos = 0usize;
    for seg in path {
        let next = match seg {
            Seg::Key(k) => text[pos..].find(&format!("\"{k}\"")).map(|p| pos + p),
            Seg::Index(i) => array_element(text, pos, *i),
        };
        match next {
            Some(p) => pos = p,
            None => break,
        }
    }
    text[..pos].matches('\n').count() + 1
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, kind: ConfigErrorKind, path: &[Seg], message: impl Into<String>) -> ConfigError {
        ConfigError {
            kind,
            key: path_string(path),
            line: locate(self.text, path),
            message: message.into(),
        }
    }

    fn object<'v>(&self, v: &'v Value, path: &[Seg], allowed: &[&str]) -> Result<&'v Map<String, Value>, ConfigError> {
        let map = v
            .as_object()
            .ok_or_else(|| self.err(ConfigErrorKind::MalformedDocument, path, "expected an object"))?;
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                let p = child(path, key);
                return Err(self.err(
                    ConfigErrorKind::UnknownKey,
                    &p,
                    format!("allowed keys: {}", allowed.join(", ")),
                ));
            }
        }
        Ok(map)
    }

    fn required<'v>(&self, map: &'v Map<String, Value>, path: &[Seg], key: &str) -> Result<&'v Value, ConfigError> {
        map.get(key).ok_or_else(|| {
            let p = child(path, key);
            let mut e = self.err(ConfigErrorKind::MissingKey, &p, "required");
            e.line = locate(self.text, path);
            e
        })
    }

    fn number(&self, v: &Value, path: &[Seg]) -> Result<f64, ConfigError> {
        v.as_f64()
            .ok_or_else(|| self.err(ConfigErrorKind::MalformedDocument, path, format!("expected a number, got {v}")))
    }

    fn req_number(&self, map: &Map<String, Value>, path: &[Seg], key: &str) -> Result<f64, ConfigError> {
        let v = self.required(map, path, key)?;
        self.number(v, &child(path, key))
    }

    fn opt_number(&self, map: &Map<String, Value>, path: &[Seg], key: &str) -> Result<Option<f64>, ConfigError> {
        match map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => self.number(v, &child(path, key)).map(Some),
        }
    }

    fn count(&self, v: &Value, path: &[Seg]) -> Result<usize, ConfigError> {
        v.as_u64().map(|n| n as usize).ok_or_else(|| {
            self.err(
                ConfigErrorKind::UnitViolation,
                path,
                format!("expected a non-negative integer, got {v}"),
            )
        })
    }

    fn unit(&self, ok: bool, path: &[Seg], key: &str, what: &str, v: f64) -> Result<(), ConfigError> {
        if ok {
            Ok(())
        } else {
            Err(self.err(ConfigErrorKind::UnitViolation, &child(path, key), format!("{what}, got {v}")))
        }
    }
}

fn child(path: &[Seg], key: &str) -> Vec<Seg> {
    let mut p = path.to_vec();
    p.push(Seg::key(key));
    p
}

const TOP_KEYS: &[&str] = &["condition", "oscillation", "plant", "scenarios", "monitor_aliases"];
const CONDITION_KEYS: &[&str] = &[
    "freestream_speed",
    "sound_speed",
    "density",
    "chord",
    "span",
    "area",
    "speed_basis",
];
const OSCILLATION_KEYS: &[&str] = &[
    "modes",
    "mean_deg",
    "amplitude_deg",
    "k",
    "cycles",
    "samples_per_cycle",
    "skip_cycles",
    "incidence_from_vertical_velocity",
];
const SCENARIO_KEYS: &[&str] = &["name", "altitude", "vertical_velocity", "forward_velocity", "plant"];

pub fn parse_case_config(text: &str) -> Result<SweepPlan, ConfigError> {
    parse_case_document(text).map(|c| c.plan)
}

pub fn parse_case_document(text: &str) -> Result<CaseConfig, ConfigError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ConfigError {
        kind: ConfigErrorKind::MalformedDocument,
        key: String::new(),
        line: e.line().max(1),
        message: e.to_string(),
    })?;
    let cx = Ctx { text };
    let top = cx.object(&root, &[], TOP_KEYS)?;

    let cpath = vec![Seg::key("condition")];
    let condition = parse_condition(&cx, cx.required(top, &[], "condition")?, &cpath)?;

    let opath = vec![Seg::key("oscillation")];
    let (oscillation, incidence_from_vertical_velocity) =
        parse_oscillation(&cx, cx.required(top, &[], "oscillation")?, &opath)?;

    let ppath = vec![Seg::key("plant")];
    let plant = parse_plant(&cx, cx.required(top, &[], "plant")?, &ppath)?;

    let spath = vec![Seg::key("scenarios")];
    let scenarios = parse_scenarios(&cx, cx.required(top, &[], "scenarios")?, &spath)?;

    let monitor_aliases = match top.get("monitor_aliases") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let apath = vec![Seg::key("monitor_aliases")];
            cx.object(v, &apath, &["time", "CL", "CD", "CM"])?;
            Some(
                serde_json::from_value::<AliasTable>(v.clone())
                    .map_err(|e| cx.err(ConfigErrorKind::MalformedDocument, &apath, e.to_string()))?,
            )
        }
    };

    let plan = SweepPlan {
        scenarios,
        oscillation,
        condition: condition.0,
        plant,
        speed_basis: condition.1,
        incidence_from_vertical_velocity,
    };
    Ok(CaseConfig { plan, monitor_aliases })
}

fn parse_condition(cx: &Ctx, v: &Value, path: &[Seg]) -> Result<(FlightCondition, SpeedBasis), ConfigError> {
    let m = cx.object(v, path, CONDITION_KEYS)?;
    let chord = cx.req_number(m, path, "chord")?;
    cx.unit(chord > 0.0, path, "chord", "chord must be > 0 m", chord)?;
    let speed = cx.opt_number(m, path, "freestream_speed")?.unwrap_or(0.0);
    cx.unit(speed >= 0.0, path, "freestream_speed", "speed must be >= 0 m/s", speed)?;
    let density = cx.opt_number(m, path, "density")?.unwrap_or(FlightCondition::SEA_LEVEL_DENSITY);
    cx.unit(density > 0.0, path, "density", "density must be > 0 kg/m^3", density)?;
    let span = cx.opt_number(m, path, "span")?.unwrap_or(1.0);
    cx.unit(span > 0.0, path, "span", "span must be > 0 m", span)?;
    let area = cx.opt_number(m, path, "area")?.unwrap_or(chord * span);
    cx.unit(area > 0.0, path, "area", "area must be > 0 m^2", area)?;
    let sound_speed = cx.opt_number(m, path, "sound_speed")?;
    if let Some(a) = sound_speed {
        cx.unit(a > 0.0, path, "sound_speed", "sound speed must be > 0 m/s", a)?;
        cx.unit(speed < a, path, "sound_speed", "freestream Mach must be < 1", a)?;
    }
    let speed_basis = match m.get("speed_basis") {
        None | Some(Value::Null) => SpeedBasis::Forward,
        Some(v) => serde_json::from_value(v.clone()).map_err(|_| {
            cx.err(
                ConfigErrorKind::UnitViolation,
                &child(path, "speed_basis"),
                format!("expected \"forward\" or \"total\", got {v}"),
            )
        })?,
    };
    Ok((
        FlightCondition {
            freestream_speed: speed,
            sound_speed,
            density,
            ref_chord: chord,
            ref_span: span,
            ref_area: area,
        },
        speed_basis,
    ))
}

fn parse_oscillation(cx: &Ctx, v: &Value, path: &[Seg]) -> Result<(OscillationTemplate, bool), ConfigError> {
    let m = cx.object(v, path, OSCILLATION_KEYS)?;
    let modes = match m.get("modes") {
        None | Some(Value::Null) => vec![Mode::Alpha, Mode::Q],
        Some(v) => {
            let mpath = child(path, "modes");
            let list = v
                .as_array()
                .ok_or_else(|| cx.err(ConfigErrorKind::MalformedDocument, &mpath, "expected a list of modes"))?;
            let mut modes = Vec::new();
            for (i, item) in list.iter().enumerate() {
                let mut ipath = mpath.clone();
                ipath.push(Seg::Index(i));
                let mode = item
                    .as_str()
                    .and_then(|s| s.parse::<Mode>().ok())
                    .ok_or_else(|| {
                        cx.err(ConfigErrorKind::UnitViolation, &ipath, format!("expected \"alpha\" or \"q\", got {item}"))
                    })?;
                if modes.contains(&mode) {
                    return Err(cx.err(ConfigErrorKind::UnitViolation, &ipath, format!("mode {mode} listed twice")));
                }
                modes.push(mode);
            }
            if modes.is_empty() {
                return Err(cx.err(ConfigErrorKind::UnitViolation, &mpath, "at least one mode required"));
            }
            modes
        }
    };
    let mean_deg = cx.req_number(m, path, "mean_deg")?;
    cx.unit(mean_deg.abs() < 90.0, path, "mean_deg", "mean incidence must lie in (-90, 90) deg", mean_deg)?;
    let amplitude_deg = cx.req_number(m, path, "amplitude_deg")?;
    cx.unit(
        amplitude_deg > 0.0 && amplitude_deg < 90.0,
        path,
        "amplitude_deg",
        "amplitude must lie in (0, 90) deg",
        amplitude_deg,
    )?;
    let k = cx.req_number(m, path, "k")?;
    cx.unit(k > 0.0, path, "k", "reduced frequency must be > 0", k)?;
    let cycles = cx.count(cx.required(m, path, "cycles")?, &child(path, "cycles"))?;
    cx.unit(cycles >= 1, path, "cycles", "at least one cycle required", cycles as f64)?;
    let samples_per_cycle = match m.get("samples_per_cycle") {
        None | Some(Value::Null) => OscillationSpec::DEFAULT_SAMPLES_PER_CYCLE,
        Some(v) => cx.count(v, &child(path, "samples_per_cycle"))?,
    };
    cx.unit(
        samples_per_cycle >= OscillationSpec::MIN_SAMPLES_PER_CYCLE,
        path,
        "samples_per_cycle",
        "at least 8 samples per cycle required",
        samples_per_cycle as f64,
    )?;
    let skip_cycles = match m.get("skip_cycles") {
        None | Some(Value::Null) => None,
        Some(v) => Some(cx.count(v, &child(path, "skip_cycles"))?),
    };
    if let Some(skip) = skip_cycles {
        cx.unit(skip < cycles, path, "skip_cycles", "must leave at least one cycle", skip as f64)?;
    }
    let fold = match m.get("incidence_from_vertical_velocity") {
        None | Some(Value::Null) => false,
        Some(Value::Bool(b)) => *b,
        Some(v) => {
            return Err(cx.err(
                ConfigErrorKind::MalformedDocument,
                &child(path, "incidence_from_vertical_velocity"),
                format!("expected true or false, got {v}"),
            ))
        }
    };
    Ok((
        OscillationTemplate {
            modes,
            mean_deg,
            amplitude_deg,
            reduced_frequency: k,
            cycles,
            samples_per_cycle,
            skip_cycles,
        },
        fold,
    ))
}

fn backticked(msg: &str) -> Option<&str> {
    let start = msg.find('`')? + 1;
    let end = start + msg[start..].find('`')?;
    Some(&msg[start..end])
}

fn parse_plant(cx: &Ctx, v: &Value, path: &[Seg]) -> Result<Plant, ConfigError> {
    let m = v
        .as_object()
        .ok_or_else(|| cx.err(ConfigErrorKind::MalformedDocument, path, "expected an object"))?;
    let kind = cx.required(m, path, "kind")?;
    if !kind.is_string() {
        return Err(cx.err(ConfigErrorKind::MalformedDocument, &child(path, "kind"), "expected a string"));
    }
    let plant: Plant = serde_json::from_value(v.clone()).map_err(|e| {
        let msg = e.to_string();
        let name = backticked(&msg).unwrap_or("");
        if msg.starts_with("unknown field") {
            cx.err(ConfigErrorKind::UnknownKey, &child(path, name), msg.clone())
        } else if msg.starts_with("missing field") {
            cx.err(ConfigErrorKind::MissingKey, &child(path, name), msg.clone())
        } else if msg.starts_with("unknown variant") {
            cx.err(
                ConfigErrorKind::UnitViolation,
                &child(path, "kind"),
                format!("unknown plant kind '{name}'; expected quasi_steady, flat_plate or indicial"),
            )
        } else {
            cx.err(ConfigErrorKind::MalformedDocument, path, msg.clone())
        }
    })?;
    plant.validate().map_err(|e| match e {
        PlantError::InvalidParameter { field, reason } => {
            cx.err(ConfigErrorKind::UnitViolation, &child(path, field), reason)
        }
        other => cx.err(ConfigErrorKind::UnitViolation, path, other.to_string()),
    })?;
    Ok(plant)
}

fn parse_scenarios(cx: &Ctx, v: &Value, path: &[Seg]) -> Result<Vec<TransitionScenario>, ConfigError> {
    if let Some(s) = v.as_str() {
        return if s == "builtin" {
            Ok(builtin_scenarios())
        } else {
            Err(cx.err(
                ConfigErrorKind::UnitViolation,
                path,
                format!("expected \"builtin\" or a list, got \"{s}\""),
            ))
        };
    }
    let list = v
        .as_array()
        .ok_or_else(|| cx.err(ConfigErrorKind::MalformedDocument, path, "expected \"builtin\" or a list"))?;
    if list.is_empty() {
        return Err(cx.err(ConfigErrorKind::UnitViolation, path, "at least one scenario required"));
    }
    let mut out: Vec<TransitionScenario> = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let mut p = path.to_vec();
        p.push(Seg::Index(i));
        let m = cx.object(item, &p, SCENARIO_KEYS)?;
        let name = cx
            .required(m, &p, "name")?
            .as_str()
            .ok_or_else(|| cx.err(ConfigErrorKind::MalformedDocument, &child(&p, "name"), "expected a string"))?
            .to_string();
        if name.trim().is_empty() || out.iter().any(|s| s.name == name) {
            return Err(cx.err(
                ConfigErrorKind::UnitViolation,
                &child(&p, "name"),
                format!("scenario names must be non-empty and unique, got '{name}'"),
            ));
        }
        let altitude = cx.req_number(m, &p, "altitude")?;
        cx.unit(altitude >= 0.0, &p, "altitude", "altitude must be >= 0 m", altitude)?;
        let vertical_velocity = cx.opt_number(m, &p, "vertical_velocity")?.unwrap_or(0.0);
        let forward_velocity = cx.req_number(m, &p, "forward_velocity")?;
        cx.unit(forward_velocity >= 0.0, &p, "forward_velocity", "speed must be >= 0 m/s", forward_velocity)?;
        let plant = match m.get("plant") {
            None | Some(Value::Null) => None,
            Some(v) => Some(parse_plant(cx, v, &child(&p, "plant"))?),
        };
        out.push(TransitionScenario {
            name,
            altitude,
            vertical_velocity,
            forward_velocity,
            plant,
        });
    }
    Ok(out)
}

/// Canonical rendering; `parse_case_config(&render_case_config(p)) == p`.
pub fn render_case_config(plan: &SweepPlan) -> String {
    render_case_document(&CaseConfig {
        plan: plan.clone(),
        monitor_aliases: None,
    })
}

pub fn render_case_document(config: &CaseConfig) -> String {
    let plan = &config.plan;
    let c = &plan.condition;
    let o = &plan.oscillation;
    let scenarios = if plan.scenarios == builtin_scenarios() {
        json!("builtin")
    } else {
        Value::Array(
            plan.scenarios
                .iter()
                .map(|s| serde_json::to_value(s).expect("scenario serializes"))
                .collect(),
        )
    };
    let mut doc = json!({
        "condition": {
            "freestream_speed": c.freestream_speed,
            "sound_speed": c.sound_speed,
            "density": c.density,
            "chord": c.ref_chord,
            "span": c.ref_span,
            "area": c.ref_area,
            "speed_basis": plan.speed_basis,
        },
        "oscillation": {
            "modes": o.modes.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
            "mean_deg": o.mean_deg,
            "amplitude_deg": o.amplitude_deg,
            "k": o.reduced_frequency,
            "cycles": o.cycles,
            "samples_per_cycle": o.samples_per_cycle,
            "skip_cycles": o.skip_cycles,
            "incidence_from_vertical_velocity": plan.incidence_from_vertical_velocity,
        },
        "plant": plan.plant,
        "scenarios": scenarios,
    });
    if let Some(a) = &config.monitor_aliases {
        doc["monitor_aliases"] = serde_json::to_value(a).expect("aliases serialize");
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}
