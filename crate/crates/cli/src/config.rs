//! Run configuration: JSON in, validated pipeline inputs out.

use hermsym::boundary::{
    bc_from_ks_pair, bc_from_unitary, preset, BoundaryConditions, BoundaryError, Preset,
};
use hermsym::matrix::{CMatrix, Tolerance};
use hermsym::scattering::{
    validate_potential, KGrid, Potential, ScatteringError, Spacing, StarGraph,
};
use hermsym::C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config: {field}: {reason}")]
    Validation { field: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.into(),
        reason: reason.into(),
    }
}

/// `[re, im]`.
pub type ComplexPair = [f64; 2];
pub type MatrixSpec = Vec<Vec<ComplexPair>>;

/// The file as written, with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: usize,
    pub boundary: BoundarySpec,
    pub potentials: PotentialsSpec,
    pub kgrid: KGridSpec,
    #[serde(default)]
    pub outputs: OutputSpec,
    #[serde(default)]
    pub checks: ChecksSpec,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks_pair: Option<KsPairSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsPairSpec {
    pub a: MatrixSpec,
    pub b: MatrixSpec,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all: Option<PotentialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<PotentialSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Zero,
    /// `[x_start, x_end, value]` triples.
    PiecewiseConstant {
        segments: Vec<[f64; 3]>,
    },
    Sampled {
        x: Vec<f64>,
        q: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacingSpec {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KGridSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: SpacingSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub include_m_matrices: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksSpec {
    #[serde(default = "default_unitarity_tol")]
    pub unitarity_tol: f64,
    #[serde(default)]
    pub run_asymptotics: bool,
    #[serde(default)]
    pub run_bound_states: bool,
}

fn default_unitarity_tol() -> f64 {
    1e-7
}

impl Default for ChecksSpec {
    fn default() -> Self {
        ChecksSpec {
            unitarity_tol: default_unitarity_tol(),
            run_asymptotics: false,
            run_bound_states: false,
        }
    }
}

/// A validated configuration, ready to run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub file: ConfigFile,
    pub bc: BoundaryConditions<f64>,
    pub graph: StarGraph<f64>,
    pub kgrid: KGrid<f64>,
    /// Edge indices whose potentials carry visible mass near the end of
    /// their support.
    pub tail_warnings: Vec<usize>,
}

impl RunConfig {
    pub fn echo(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("config serializes")
    }

    pub fn all_zero_potential(&self) -> bool {
        self.graph.potentials().iter().all(|p| p.is_zero())
    }
}

pub fn load_config(path: &str) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(file)
}

fn validate(file: ConfigFile) -> Result<RunConfig, ConfigError> {
    let n = file.n;
    if n == 0 {
        return Err(invalid("n", "must be >= 1"));
    }
    let tol = Tolerance::default();
    let bc = build_boundary(&file.boundary, n, &tol)?;
    let (graph, tail_warnings) = build_graph(&file.potentials, n)?;
    let kgrid = KGrid {
        k_min: file.kgrid.k_min,
        k_max: file.kgrid.k_max,
        count: file.kgrid.count,
        spacing: match file.kgrid.spacing {
            SpacingSpec::Linear => Spacing::Linear,
            SpacingSpec::Log => Spacing::Log,
        },
    };
    kgrid.validate().map_err(|e| match e {
        ScatteringError::InvalidGrid { field, reason } => invalid(format!("kgrid.{field}"), reason),
        other => invalid("kgrid", other.to_string()),
    })?;
    let ut = file.checks.unitarity_tol;
    if !(ut > 0.0) || !ut.is_finite() {
        return Err(invalid(
            "checks.unitarity_tol",
            "must be a positive finite number",
        ));
    }
    Ok(RunConfig {
        file,
        bc,
        graph,
        kgrid,
        tail_warnings,
    })
}

fn matrix(spec: &MatrixSpec, n: usize, field: &str) -> Result<CMatrix<f64>, ConfigError> {
    if spec.len() != n || spec.iter().any(|r| r.len() != n) {
        return Err(invalid(
            field,
            format!("expected a {n}x{n} matrix of [re, im] pairs"),
        ));
    }
    if spec.iter().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(invalid(field, "entries must be finite"));
    }
    let rows: Vec<Vec<C64>> = spec
        .iter()
        .map(|r| r.iter().map(|[re, im]| C64::new(*re, *im)).collect())
        .collect();
    Ok(CMatrix::from_rows(&rows))
}

fn build_boundary(
    spec: &BoundarySpec,
    n: usize,
    tol: &Tolerance<f64>,
) -> Result<BoundaryConditions<f64>, ConfigError> {
    let given = [
        spec.preset.is_some(),
        spec.unitary.is_some(),
        spec.ks_pair.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if given != 1 {
        return Err(invalid(
            "boundary",
            "exactly one of preset, unitary, ks_pair must be given",
        ));
    }
    if spec.preset.is_none() && (spec.alpha.is_some() || spec.mask.is_some()) {
        return Err(invalid("boundary", "alpha and mask only apply to presets"));
    }
    if let Some(name) = &spec.preset {
        let p = Preset::from_name(name, spec.alpha, spec.mask.clone())
            .map_err(|e| preset_error(e, name))?;
        return preset(&p, n, tol).map_err(|e| preset_error(e, name));
    }
    if let Some(u) = &spec.unitary {
        let u = matrix(u, n, "boundary.unitary")?;
        return bc_from_unitary(&u, tol).map_err(|e| invalid("boundary.unitary", e.to_string()));
    }
    let ks = spec.ks_pair.as_ref().expect("one boundary form present");
    let a = matrix(&ks.a, n, "boundary.ks_pair.a")?;
    let b = matrix(&ks.b, n, "boundary.ks_pair.b")?;
    bc_from_ks_pair(&a, &b, tol).map_err(|e| invalid("boundary.ks_pair", e.to_string()))
}

fn preset_error(e: BoundaryError, name: &str) -> ConfigError {
    match e {
        BoundaryError::UnknownPreset(_) => invalid(
            "boundary.preset",
            format!(
                "unknown preset '{name}' (expected one of {})",
                Preset::<f64>::NAMES.join(", ")
            ),
        ),
        BoundaryError::BadParameter { name, reason } => invalid(format!("boundary.{name}"), reason),
        other => invalid("boundary.preset", other.to_string()),
    }
}

fn potential(spec: &PotentialSpec) -> Potential<f64> {
    match spec {
        PotentialSpec::Zero => Potential::Zero,
        PotentialSpec::PiecewiseConstant { segments } => {
            Potential::PiecewiseConstant(segments.iter().map(|s| (s[0], s[1], s[2])).collect())
        }
        PotentialSpec::Sampled { x, q } => Potential::Sampled {
            x: x.clone(),
            q: q.clone(),
        },
    }
}

fn build_graph(
    spec: &PotentialsSpec,
    n: usize,
) -> Result<(StarGraph<f64>, Vec<usize>), ConfigError> {
    let (specs, field): (Vec<(&PotentialSpec, String)>, &str) = match (&spec.all, &spec.edges) {
        (Some(p), None) => (
            (0..n).map(|_| (p, "potentials.all".to_string())).collect(),
            "potentials.all",
        ),
        (None, Some(edges)) => {
            if edges.len() != n {
                return Err(invalid(
                    "potentials.edges",
                    format!("expected {n} entries, found {}", edges.len()),
                ));
            }
            (
                edges
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p, format!("potentials.edges[{i}]")))
                    .collect(),
                "potentials.edges",
            )
        }
        _ => {
            return Err(invalid(
                "potentials",
                "exactly one of all, edges must be given",
            ))
        }
    };
    let mut pots = Vec::with_capacity(n);
    let mut warnings = Vec::new();
    for (i, (s, f)) in specs.into_iter().enumerate() {
        let p = potential(s);
        let est = validate_potential(&p).map_err(|e| invalid(f, e.to_string()))?;
        if est.tail_warning {
            warnings.push(i);
        }
        pots.push(p);
    }
    let graph = StarGraph::new(pots).map_err(|e| invalid(field, e.to_string()))?;
    Ok((graph, warnings))
}
