//! JSON model configuration. Rationals are strings such as `"-1/2"`.

use serde::{Deserialize, Serialize};

use crate::actions::{FiniteLinearAction, Model, TorusLinearAction};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, QMatrix};
use crate::groups::FiniteGroup;
use crate::strata::EngineOptions;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub kind: String,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite: Option<FiniteConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusConfig>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteConfig {
    /// Needed only when there are no generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub generators: Vec<Vec<Vec<String>>>,
    /// Matrices by which the generators act on the model space, one per
    /// generator; defaults to the generators themselves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusConfig {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub trivial_real_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub denominator_bound: usize,
    pub order_cap: usize,
    pub arrangement_dim_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            denominator_bound: 6,
            order_cap: 1024,
            arrangement_dim_cap: 2,
        }
    }
}

impl Options {
    pub fn engine(&self) -> EngineOptions {
        EngineOptions {
            arrangement_dim_cap: self.arrangement_dim_cap,
        }
    }
}

pub const FINITE_KIND: &str = "finite-linear";
pub const TORUS_KIND: &str = "torus-linear";

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ModelConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn finite(name: &str, generators: &[QMatrix]) -> Self {
        let generators = generators
            .iter()
            .map(|g| {
                (0..g.rows())
                    .map(|r| (0..g.cols()).map(|c| format_rational(&g[(r, c)])).collect())
                    .collect()
            })
            .collect();
        ModelConfig {
            kind: FINITE_KIND.into(),
            name: name.into(),
            finite: Some(FiniteConfig {
                dim: None,
                generators,
                action: None,
            }),
            torus: None,
            options: Options::default(),
        }
    }

    pub fn torus(name: &str, rank: usize, weights: Vec<Vec<i64>>, trivial_real_dim: usize) -> Self {
        ModelConfig {
            kind: TORUS_KIND.into(),
            name: name.into(),
            finite: None,
            torus: Some(TorusConfig {
                rank,
                weights,
                trivial_real_dim,
            }),
            options: Options::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        match (self.kind.as_str(), &self.finite, &self.torus) {
            (FINITE_KIND, Some(f), None) => {
                let gens = parse_matrices("finite.generators", &f.generators, f.dim)?;
                if let Some(action) = &f.action {
                    if action.len() != gens.len() {
                        return Err(Error::Config(format!(
                            "finite.action: expected {} matrices, found {}",
                            gens.len(),
                            action.len()
                        )));
                    }
                    parse_matrices("finite.action", action, None)?;
                }
            }
            (TORUS_KIND, None, Some(t)) => {
                for (i, w) in t.weights.iter().enumerate() {
                    if w.len() != t.rank {
                        return Err(Error::Config(format!(
                            "torus.weights[{i}]: expected {} entries, found {}",
                            t.rank,
                            w.len()
                        )));
                    }
                }
            }
            (FINITE_KIND, _, _) => {
                return Err(Error::Config(
                    "kind finite-linear needs exactly a `finite` payload".into(),
                ))
            }
            (TORUS_KIND, _, _) => {
                return Err(Error::Config(
                    "kind torus-linear needs exactly a `torus` payload".into(),
                ))
            }
            (other, _, _) => return Err(Error::Config(format!("unknown kind {other:?}"))),
        }
        if self.options.denominator_bound == 0 {
            return Err(Error::Config(
                "options.denominator_bound: must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn build_model(&self) -> Result<Model> {
        self.validate()?;
        match (&self.finite, &self.torus) {
            (Some(f), _) => {
                let gens = parse_matrices("finite.generators", &f.generators, f.dim)?;
                let degree = f.dim.or(gens.first().map(QMatrix::rows)).unwrap_or(0);
                let group =
                    FiniteGroup::generate_with_degree(degree, &gens, self.options.order_cap)?;
                match &f.action {
                    None => Ok(Model::Finite(FiniteLinearAction::new(group))),
                    Some(action) => {
                        let images = parse_matrices("finite.action", action, None)?;
                        let dim = images.first().map_or(degree, QMatrix::rows);
                        Ok(Model::Finite(FiniteLinearAction::from_generator_images(
                            group, dim, &images,
                        )?))
                    }
                }
            }
            (_, Some(t)) => Ok(Model::Torus(TorusLinearAction::new(
                t.rank,
                t.weights.clone(),
                t.trivial_real_dim,
            )?)),
            _ => unreachable!("validated"),
        }
    }
}

/// Square matrices of a common size (`dim` if given).
fn parse_matrices(
    field: &str,
    mats: &[Vec<Vec<String>>],
    dim: Option<usize>,
) -> Result<Vec<QMatrix>> {
    let mut out: Vec<QMatrix> = Vec::with_capacity(mats.len());
    for (i, g) in mats.iter().enumerate() {
        let rows = g.len();
        let mut parsed = Vec::with_capacity(rows);
        for (r, row) in g.iter().enumerate() {
            if row.len() != rows {
                return Err(Error::Config(format!(
                    "{field}[{i}][{r}]: non-square matrix, row has {} entries for {rows} rows",
                    row.len()
                )));
            }
            let entries = row
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    parse_rational(s).map_err(|_| {
                        Error::Config(format!("{field}[{i}][{r}][{c}]: malformed rational {s:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            parsed.push(entries);
        }
        if let Some(d) = dim.or(out.first().map(QMatrix::rows)) {
            if d != rows {
                return Err(Error::Config(format!(
                    "{field}[{i}]: expected {d}x{d}, found {rows}x{rows}"
                )));
            }
        }
        out.push(QMatrix::from_rows(rows, parsed)?);
    }
    Ok(out)
}
