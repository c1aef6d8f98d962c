//! Time-stamped coefficient histories: the unit exchanged between plants,
//! monitor files and the identifier.

use std::fmt;

use thiserror::Error;

use crate::kinematics::{FlightCondition, OscillationSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Lift,
    Drag,
    Moment,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Lift, Channel::Drag, Channel::Moment];

    /// Canonical column name.
    pub fn column(self) -> &'static str {
        match self {
            Channel::Lift => "CL",
            Channel::Drag => "CD",
            Channel::Moment => "CM",
        }
    }

    /// Coefficient symbol stem used in derivative names (`C_L`, `C_D`, `C_m`).
    pub fn symbol(self) -> &'static str {
        match self {
            Channel::Lift => "C_L",
            Channel::Drag => "C_D",
            Channel::Moment => "C_m",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series has no samples")]
    Empty,
    #[error("series has no coefficient channel")]
    NoChannel,
    #[error("channel {channel} has {found} samples, expected {expected}")]
    LengthMismatch {
        channel: Channel,
        expected: usize,
        found: usize,
    },
    #[error("time is not strictly increasing at sample {index}")]
    NonMonotonicTime { index: usize },
    #[error("non-finite value in {column} at sample {index}")]
    NonFinite { column: String, index: usize },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeriesMetadata {
    pub spec: Option<OscillationSpec>,
    pub condition: Option<FlightCondition>,
    /// Angular frequency of the prescribed motion, rad/s.
    pub omega: Option<f64>,
    /// Plant tag or file path.
    pub source: String,
    /// False when time stamps are not evenly spaced.
    pub uniform: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub times: Vec<f64>,
    /// Exact motion phase ωt per sample, when generated from a schedule.
    pub phases: Option<Vec<f64>>,
    pub lift: Option<Vec<f64>>,
    pub drag: Option<Vec<f64>>,
    pub moment: Option<Vec<f64>>,
    pub metadata: SeriesMetadata,
}

const UNIFORM_RTOL: f64 = 1e-6;

impl CoefficientSeries {
    pub fn new(
        times: Vec<f64>,
        lift: Option<Vec<f64>>,
        drag: Option<Vec<f64>>,
        moment: Option<Vec<f64>>,
        source: impl Into<String>,
    ) -> Result<Self, SeriesError> {
        let uniform = is_uniform(&times);
        let series = Self {
            times,
            phases: None,
            lift,
            drag,
            moment,
            metadata: SeriesMetadata {
                source: source.into(),
                uniform,
                ..Default::default()
            },
        };
        series.validate()?;
        Ok(series)
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        let n = self.times.len();
        if n == 0 {
            return Err(SeriesError::Empty);
        }
        if self.lift.is_none() && self.drag.is_none() && self.moment.is_none() {
            return Err(SeriesError::NoChannel);
        }
        if let Some(index) = self.times.iter().position(|t| !t.is_finite()) {
            return Err(SeriesError::NonFinite {
                column: "t".into(),
                index,
            });
        }
        if let Some(i) = self.times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(SeriesError::NonMonotonicTime { index: i + 1 });
        }
        for channel in Channel::ALL {
            if let Some(values) = self.channel(channel) {
                if values.len() != n {
                    return Err(SeriesError::LengthMismatch {
                        channel,
                        expected: n,
                        found: values.len(),
                    });
                }
                if let Some(index) = values.iter().position(|v| !v.is_finite()) {
                    return Err(SeriesError::NonFinite {
                        column: channel.column().into(),
                        index,
                    });
                }
            }
        }
        if let Some(phases) = &self.phases {
            if phases.len() != n {
                return Err(SeriesError::LengthMismatch {
                    channel: Channel::Lift,
                    expected: n,
                    found: phases.len(),
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn channel(&self, channel: Channel) -> Option<&[f64]> {
        match channel {
            Channel::Lift => self.lift.as_deref(),
            Channel::Drag => self.drag.as_deref(),
            Channel::Moment => self.moment.as_deref(),
        }
    }

    pub fn channel_mut(&mut self, channel: Channel) -> &mut Option<Vec<f64>> {
        match channel {
            Channel::Lift => &mut self.lift,
            Channel::Drag => &mut self.drag,
            Channel::Moment => &mut self.moment,
        }
    }

    /// Present channels in canonical order.
    pub fn channels(&self) -> impl Iterator<Item = (Channel, &[f64])> {
        Channel::ALL
            .into_iter()
            .filter_map(move |c| self.channel(c).map(|v| (c, v)))
    }

    /// Motion phase of every sample for a regression at `omega`. The exact
    /// grid phases are used when the series carries them and `omega` is the
    /// series' own motion frequency.
    pub fn phases_at(&self, omega: f64) -> Vec<f64> {
        match (&self.phases, self.metadata.omega) {
            (Some(phases), Some(own)) if own == omega => phases.clone(),
            _ => self.times.iter().map(|t| omega * t).collect(),
        }
    }
}

pub(crate) fn is_uniform(times: &[f64]) -> bool {
    if times.len() < 3 {
        return true;
    }
    let span = times[times.len() - 1] - times[0];
    let step = span / (times.len() - 1) as f64;
    times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= UNIFORM_RTOL * step.abs())
}
