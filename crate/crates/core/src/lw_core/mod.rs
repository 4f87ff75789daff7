//! Jacobian-free Lax-Wendroff procedure: time-averaged fluxes at solution
//! points and faces, flux derivatives and the single-step update.

pub mod ladders;
pub mod one_d;
pub mod two_d;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::equations::StateVec;
use crate::error::{config, Error, Result};

pub use one_d::{flux_derivative_1d, lw_element_1d, lw_update_1d, Workspace1d};
pub use two_d::{face_point, face_trace, flux_divergence_2d, lw_element_2d, lw_update_2d, Workspace2d, MAX_NODES_2D};

/// How the time-average flux reaches the faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceMode {
    /// Average at the solution points, then extrapolate.
    #[serde(rename = "ae", alias = "AE")]
    AE,
    /// Extrapolate the solution, then average at the face.
    #[serde(rename = "ea", alias = "EA")]
    EA,
}

impl FromStr for FaceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ae" => Ok(FaceMode::AE),
            "ea" => Ok(FaceMode::EA),
            other => config(format!("unknown face mode `{other}` (expected ae|ea)")),
        }
    }
}

impl fmt::Display for FaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceMode::AE => "ae",
            FaceMode::EA => "ea",
        })
    }
}

/// Values an element contributes to one face point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trace<S> {
    /// Solution at the old time level.
    pub u: S,
    /// Time-average solution.
    pub u_avg: S,
    /// Time-average flux, normal component.
    pub f_avg: S,
}

impl<S: StateVec> Default for Trace<S> {
    fn default() -> Self {
        Trace {
            u: S::zero(),
            u_avg: S::zero(),
            f_avg: S::zero(),
        }
    }
}
