//! Sphere/ball ratios of Cayley balls in exact rational arithmetic. Used by
//! the free-action constructor as a (heuristic, configurable) gate for
//! non-amenability: amenable models have thin spheres at large radii.

use super::GraphWindow;
use crate::error::Result;
use crate::group::MarkedGroup;
use num_rational::Ratio;

pub type ExpansionRatio = Ratio<u64>;

#[derive(Debug, Clone)]
pub struct ExpansionProfile {
    pub radius: u32,
    /// ratios[r] = |sphere_r| / |ball_r| for r = 0..=radius.
    pub ratios: Vec<ExpansionRatio>,
}

impl ExpansionProfile {
    /// The ratio at the outermost radius, the constructor's gate value.
    pub fn gate_value(&self) -> ExpansionRatio {
        *self.ratios.last().expect("radius 0 always present")
    }
}

pub fn expansion_profile(group: &MarkedGroup, radius: u32, cap: usize) -> Result<ExpansionProfile> {
    let w = GraphWindow::build_cayley(group, radius, cap)?;
    Ok(profile_of_window(&w))
}

/// Profile of an already-built window from its BFS layers.
pub fn profile_of_window(w: &GraphWindow) -> ExpansionProfile {
    let radius = w.radius();
    let mut sphere = vec![0u64; radius as usize + 1];
    for v in 0..w.len() {
        sphere[w.layer(v) as usize] += 1;
    }
    let mut ratios = Vec::with_capacity(sphere.len());
    let mut ball = 0u64;
    for s in sphere {
        ball += s;
        ratios.push(Ratio::new(s, ball));
    }
    ExpansionProfile { radius, ratios }
}

/// Renders a ratio as the exact fraction "p/q".
pub fn ratio_string(r: ExpansionRatio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults::WINDOW_CAP;
    use crate::group::MarkedGroup;

    #[test]
    fn line_ratios() {
        let z = MarkedGroup::free_abelian(1);
        let p = expansion_profile(&z, 8, WINDOW_CAP).unwrap();
        assert_eq!(p.ratios[8], Ratio::new(2, 17));
        assert_eq!(p.ratios[0], Ratio::new(1, 1));
    }

    #[test]
    fn plane_ratio_closed_form() {
        let z2 = MarkedGroup::free_abelian(2);
        let p = expansion_profile(&z2, 8, WINDOW_CAP).unwrap();
        // 4r / (2r^2 + 2r + 1) at r = 8.
        assert_eq!(p.gate_value(), Ratio::new(32, 145));
        for r in 1..=8u64 {
            assert_eq!(
                p.ratios[r as usize],
                Ratio::new(4 * r, 2 * r * r + 2 * r + 1)
            );
        }
    }

    #[test]
    fn free_group_ratio_closed_form() {
        let f2 = MarkedGroup::free(2);
        let p = expansion_profile(&f2, 8, WINDOW_CAP).unwrap();
        // 4*3^(r-1) / (2*3^r - 1) at r = 8.
        assert_eq!(p.gate_value(), Ratio::new(4 * 3u64.pow(7), 2 * 3u64.pow(8) - 1));
        let approx = *p.gate_value().numer() as f64 / *p.gate_value().denom() as f64;
        assert!((approx - 2.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn finite_group_profile_ends_in_zeros() {
        let c12 = crate::group::presets::cyclic(12);
        let p = expansion_profile(&c12, 8, WINDOW_CAP).unwrap();
        assert_eq!(p.ratios[6], Ratio::new(1, 12));
        assert_eq!(p.ratios[7], Ratio::new(0, 12));
        assert_eq!(p.gate_value(), Ratio::new(0, 12));
    }
}
