//! Built-in models with golden `strata` reports.

use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::report::{self, Analysis};

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    config: &'static str,
    golden: &'static str,
}

macro_rules! fixture {
    ($name:literal, $desc:literal) => {
        Fixture {
            name: $name,
            description: $desc,
            config: include_str!(concat!("../fixtures/", $name, ".json")),
            golden: include_str!(concat!("../fixtures/golden/", $name, ".json")),
        }
    };
}

static FIXTURES: &[Fixture] = &[
    fixture!("z2-line", "sign representation of Z2 on the line"),
    fixture!("z2-trivial", "Z2 acting trivially on the line"),
    fixture!("t1-c", "circle acting on C with weight 1"),
    fixture!(
        "t1-c-plus-r",
        "circle on C with weight 1, plus a trivial real line"
    ),
    fixture!(
        "t2-cp2-chart1",
        "2-torus near [1,0,0] in CP2, weights (-1,1), (0,1)"
    ),
    fixture!(
        "t2-cp2-chart2",
        "2-torus near [0,1,0] in CP2, weights (1,-1), (1,0)"
    ),
    fixture!(
        "t2-cp2-chart3",
        "2-torus near [0,0,1] in CP2, weights (0,-1), (-1,0)"
    ),
    fixture!("s3-perm", "S3 permuting coordinates of Q3"),
    fixture!("d4-signed", "dihedral group of order 8 on Q2"),
    fixture!(
        "q8-gl4",
        "quaternion group acting on Q4 by left multiplication"
    ),
];

/// Expected strata of the rotation action of SO(3) on R^3, documentation only.
pub const SO3_EXPECTED: &str = include_str!("../fixtures/so3-r3-expected.json");

pub fn all() -> &'static [Fixture] {
    FIXTURES
}

pub fn get(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

impl Fixture {
    pub fn config(&self) -> ModelConfig {
        ModelConfig::parse(self.config).expect("built-in fixture parses")
    }

    pub fn golden(&self) -> &'static str {
        self.golden
    }

    pub fn render(&self) -> Result<String> {
        Ok(report::render(&report::strata(&Analysis::new(
            self.config(),
        )?)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: &'static str,
    /// First differing line (1-based), if any.
    pub first_difference: Option<usize>,
}

impl GoldenCheck {
    pub fn passed(&self) -> bool {
        self.first_difference.is_none()
    }
}

fn first_difference(a: &str, b: &str) -> Option<usize> {
    if a == b {
        return None;
    }
    let (la, lb): (Vec<&str>, Vec<&str>) = (a.lines().collect(), b.lines().collect());
    Some(
        (0..la.len().max(lb.len()))
            .find(|&i| la.get(i) != lb.get(i))
            .unwrap_or(la.len().min(lb.len()))
            + 1,
    )
}

pub fn check(f: &Fixture) -> Result<GoldenCheck> {
    let fresh = f.render()?;
    Ok(GoldenCheck {
        name: f.name,
        first_difference: first_difference(&fresh, f.golden),
    })
}

/// Checks that the documentation-only SO(3) file parses and lists four strata.
pub fn check_so3_expected() -> bool {
    serde_json::from_str::<serde_json::Value>(SO3_EXPECTED)
        .ok()
        .and_then(|v| {
            v.get("strata")
                .and_then(|s| s.as_array())
                .map(|s| s.len() == 4)
        })
        .unwrap_or(false)
}
