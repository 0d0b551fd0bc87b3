use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Instance;
use crate::error::{Error, Result};
use crate::geometry::{all_collinear, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Distinct integer points drawn uniformly from `[0, scale]^2`.
    UniformBox,
    /// Lattice points jittered by up to a quarter of the spacing.
    Grid,
    /// Distinct integer points on one line.
    Collinear,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::UniformBox => "uniform-box",
            Family::Grid => "grid",
            Family::Collinear => "collinear",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-box" | "uniform" => Ok(Family::UniformBox),
            "grid" => Ok(Family::Grid),
            "collinear" => Ok(Family::Collinear),
            other => Err(Error::InvalidInstance(format!("unknown family `{other}`"))),
        }
    }
}

/// Deterministic instance for `(seed, n, family, scale)`.
///
/// `UniformBox` and `Grid` resample until the point set is non-degenerate.
pub fn generate_instance(seed: u64, n: usize, family: Family, scale: i64) -> Result<Instance> {
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "n must be at least 3, got {n}"
        )));
    }
    if scale < n as i64 {
        return Err(Error::InvalidInstance(format!(
            "scale {scale} is smaller than n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = match family {
        Family::UniformBox => loop {
            let mut seen = BTreeSet::new();
            let mut pts = Vec::with_capacity(n);
            while pts.len() < n {
                let p = (rng.gen_range(0..=scale), rng.gen_range(0..=scale));
                if seen.insert(p) {
                    pts.push(p);
                }
            }
            if !degenerate(&pts) {
                break pts;
            }
        },
        Family::Grid => grid(&mut rng, n, scale),
        Family::Collinear => collinear(&mut rng, n, scale),
    };
    Instance::from_integers(format!("{family}-n{n}-s{seed}"), &coords)
}

fn degenerate(pts: &[(i64, i64)]) -> bool {
    let points: Vec<Point> = pts.iter().map(|&(x, y)| Point::int(x, y)).collect();
    all_collinear(&points)
}

fn grid(rng: &mut ChaCha8Rng, n: usize, scale: i64) -> Vec<(i64, i64)> {
    let side = (n as f64).sqrt().ceil() as i64;
    let spacing = (scale / side).max(1);
    let jitter = spacing / 4;
    loop {
        let mut cells: Vec<(i64, i64)> = (0..side)
            .flat_map(|i| (0..side).map(move |j| (i, j)))
            .collect();
        cells.shuffle(rng);
        let mut seen = BTreeSet::new();
        let pts: Vec<(i64, i64)> = cells
            .into_iter()
            .take(n)
            .map(|(i, j)| {
                let dx = if jitter > 0 {
                    rng.gen_range(-jitter..=jitter)
                } else {
                    0
                };
                let dy = if jitter > 0 {
                    rng.gen_range(-jitter..=jitter)
                } else {
                    0
                };
                (
                    i * spacing + spacing / 2 + dx,
                    j * spacing + spacing / 2 + dy,
                )
            })
            .filter(|p| seen.insert(*p))
            .collect();
        if pts.len() == n && !degenerate(&pts) {
            return pts;
        }
    }
}

fn collinear(rng: &mut ChaCha8Rng, n: usize, scale: i64) -> Vec<(i64, i64)> {
    let mut ts: Vec<i64> = (0..=scale).collect();
    ts.shuffle(rng);
    ts.truncate(n);
    let dir = rng.gen_range(0..4);
    ts.into_iter()
        .map(|t| match dir {
            0 => (t, 0),
            1 => (0, t),
            2 => (t, t),
            _ => (t, scale - t),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_instance(1, 5, Family::UniformBox, 100).unwrap();
        let b = generate_instance(1, 5, Family::UniformBox, 100).unwrap();
        assert_eq!(a.points(), b.points());
        let c = generate_instance(2, 5, Family::UniformBox, 100).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn collinear_family_is_degenerate() {
        for seed in 0..10 {
            let inst = generate_instance(seed, 6, Family::Collinear, 100).unwrap();
            assert!(inst.is_degenerate());
            assert_eq!(inst.len(), 6);
        }
    }

    #[test]
    fn distinct_points_in_small_box() {
        let inst = generate_instance(3, 12, Family::UniformBox, 20).unwrap();
        assert_eq!(inst.len(), 12);
        assert!(!inst.is_degenerate());
    }

    #[test]
    fn grid_family() {
        let inst = generate_instance(4, 10, Family::Grid, 100).unwrap();
        assert_eq!(inst.len(), 10);
        assert!(!inst.is_degenerate());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_instance(0, 2, Family::UniformBox, 100).is_err());
        assert!(generate_instance(0, 10, Family::UniformBox, 5).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("grid".parse::<Family>().unwrap(), Family::Grid);
    }
}
