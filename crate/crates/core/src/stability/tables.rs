//! CFL limits used to pick time steps, so that solves do not rerun the
//! analysis. The acceptance suite regenerates them with the analyzer.

use crate::basis::Correction;
use crate::error::{config, Result};
use crate::numflux::Dissipation;

/// 1-D limits indexed by degree 1..=4.
pub const CFL_1D_RADAU_D1: [f64; 4] = [0.226, 0.117, 0.072, 0.049];
pub const CFL_1D_RADAU_D2: [f64; 4] = [0.333, 0.170, 0.103, 0.069];
pub const CFL_1D_G2_D1: [f64; 4] = [0.465, 0.204, 0.116, 0.060];
pub const CFL_1D_G2_D2: [f64; 4] = [1.000, 0.333, 0.170, 0.103];

/// 2-D limits on `|sigma1| + |sigma2|`, indexed by degree 1..=4.
pub const CFL_2D_RADAU_D2: [f64; 4] = [0.259, 0.166, 0.101, 0.067];
pub const CFL_2D_G2_D2: [f64; 4] = [0.511, 0.348, 0.178, 0.108];
/// Analyzer limits of D1 in 2-D, which applies the 1-D D1 face terms along
/// each direction. Time steps use the smaller value from [`cfl`].
pub const STABLE_2D_RADAU_D1: [f64; 4] = [0.229, 0.124, 0.077, 0.053];
pub const STABLE_2D_G2_D1: [f64; 4] = [0.466, 0.218, 0.124, 0.079];

fn table(correction: Correction, dissipation: Dissipation, two_d: bool) -> &'static [f64; 4] {
    use Correction::*;
    use Dissipation::*;
    match (correction, dissipation, two_d) {
        (Radau | Dfr, D1, false) => &CFL_1D_RADAU_D1,
        (Radau | Dfr, D2, false) => &CFL_1D_RADAU_D2,
        (G2, D1, false) => &CFL_1D_G2_D1,
        (G2, D2, false) => &CFL_1D_G2_D2,
        (Radau | Dfr, _, true) => &CFL_2D_RADAU_D2,
        (G2, _, true) => &CFL_2D_G2_D2,
    }
}

/// Embedded CFL limit. The values do not depend on the point family.
///
/// 2-D D1 uses the 2-D D2 limit scaled by the 1-D ratio D1/D2, which lies
/// below the analyzer limit at every degree.
pub fn cfl(correction: Correction, dissipation: Dissipation, degree: usize, two_d: bool) -> Result<f64> {
    if !(1..=4).contains(&degree) {
        return config(format!("no CFL table entry for degree {degree}"));
    }
    let i = degree - 1;
    let base = table(correction, dissipation, two_d)[i];
    if two_d && dissipation == Dissipation::D1 {
        let ratio = table(correction, Dissipation::D1, false)[i] / table(correction, Dissipation::D2, false)[i];
        return Ok(base * ratio);
    }
    Ok(base)
}

/// Analyzer stability limit of 2-D D1.
pub fn stable_2d_d1(correction: Correction, degree: usize) -> Result<f64> {
    if !(1..=4).contains(&degree) {
        return config(format!("no CFL table entry for degree {degree}"));
    }
    Ok(match correction {
        Correction::G2 => STABLE_2D_G2_D1,
        _ => STABLE_2D_RADAU_D1,
    }[degree - 1])
}
