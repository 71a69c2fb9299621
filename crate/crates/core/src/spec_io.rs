//! Tower spec documents in TOML or JSON.
//!
//! ```toml
//! base = "P1xP1"
//! omega = "FIBER_22"
//!
//! [[levels]]
//! m = 3
//! curves = [
//!     { geom = "FIBER_H", param = 1, a = 1 },
//!     { geom = "FIBER_V", param = "inf", a = 2 },
//! ]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CurveGeom;
use crate::lattice::BaseSurface;
use crate::omega::{OmegaId, OmegaSpec};
use crate::tower::{BranchCurve, LevelSpec, TowerSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamDoc {
    Int(i64),
    Text(String),
}

impl ParamDoc {
    fn as_string(&self) -> String {
        match self {
            ParamDoc::Int(n) => n.to_string(),
            ParamDoc::Text(s) => s.clone(),
        }
    }
}

fn default_a() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub geom: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<ParamDoc>,
    #[serde(default = "default_a")]
    pub a: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub m: u64,
    pub curves: Vec<CurveDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub base: String,
    pub omega: String,
    pub levels: Vec<LevelDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecFormat {
    Toml,
    Json,
}

impl SpecFormat {
    /// JSON for `.json` paths or text starting with `{`, TOML otherwise.
    pub fn detect(path: Option<&str>, text: &str) -> SpecFormat {
        let json_path = path.is_some_and(|p| p.to_ascii_lowercase().ends_with(".json"));
        if json_path || text.trim_start().starts_with('{') {
            SpecFormat::Json
        } else {
            SpecFormat::Toml
        }
    }
}

pub fn parse_doc(text: &str, format: SpecFormat) -> Result<SpecDoc> {
    match format {
        SpecFormat::Toml => toml::from_str(text).map_err(|e| Error::Parse(e.to_string())),
        SpecFormat::Json => serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string())),
    }
}

pub fn spec_from_doc(doc: &SpecDoc) -> Result<TowerSpec> {
    let base = BaseSurface::parse(&doc.base).map_err(|e| Error::Parse(format!("base: {e}")))?;
    let omega = OmegaId::parse(&doc.omega).map_err(|e| Error::Parse(format!("omega: {e}")))?;
    let mut levels = Vec::new();
    for (li, l) in doc.levels.iter().enumerate() {
        let mut curves = Vec::new();
        for (ci, c) in l.curves.iter().enumerate() {
            let param = c.param.as_ref().map(ParamDoc::as_string);
            let geom = CurveGeom::from_parts(&c.geom, param.as_deref())
                .map_err(|e| Error::Parse(format!("levels[{li}].curves[{ci}]: {e}")))?;
            curves.push(BranchCurve::new(geom, c.a));
        }
        levels.push(LevelSpec::new(l.m, curves));
    }
    Ok(TowerSpec { base, omega: OmegaSpec::builtin(omega), levels })
}

pub fn parse_spec(text: &str, format: SpecFormat) -> Result<TowerSpec> {
    spec_from_doc(&parse_doc(text, format)?)
}

pub fn doc_from_spec(spec: &TowerSpec) -> SpecDoc {
    SpecDoc {
        base: spec.base.to_string(),
        omega: spec.omega.id.to_string(),
        levels: spec
            .levels
            .iter()
            .map(|l| LevelDoc {
                m: l.m,
                curves: l
                    .curves
                    .iter()
                    .map(|c| CurveDoc {
                        geom: c.geom.kind_name().to_string(),
                        param: c.geom.param_string().map(ParamDoc::Text),
                        a: c.a,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn canonical_json(spec: &TowerSpec) -> String {
    serde_json::to_string_pretty(&doc_from_spec(spec)).expect("serializable")
}

pub fn spec_to_toml(spec: &TowerSpec) -> String {
    toml::to_string(&doc_from_spec(spec)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{cuboid_spec, tangent_lines_spec};

    #[test]
    fn toml_document() {
        let text = r#"
base = "P1xP1"
omega = "FIBER_22"

[[levels]]
m = 2
curves = [
    { geom = "FIBER_H", param = 1 },
    { geom = "FIBER_H", param = "-1" },
    { geom = "FIBER_V", param = "i", a = 1 },
    { geom = "FIBER_V", param = "inf" },
]
"#;
        let spec = parse_spec(text, SpecFormat::Toml).unwrap();
        assert_eq!(spec.levels[0].curves.len(), 4);
        assert_eq!(spec.levels[0].curves[3].geom.to_string(), "FIBER_V(inf)");
    }

    #[test]
    fn canonical_json_round_trips() {
        for spec in [cuboid_spec(), tangent_lines_spec(15, 3).unwrap()] {
            let json = canonical_json(&spec);
            assert_eq!(SpecFormat::detect(None, &json), SpecFormat::Json);
            assert_eq!(parse_spec(&json, SpecFormat::Json).unwrap(), spec);
            assert_eq!(parse_spec(&spec_to_toml(&spec), SpecFormat::Toml).unwrap(), spec);
        }
    }

    #[test]
    fn errors_carry_context() {
        let bad = "base = \"P1xP1\"\nomega = \"FIBER_22\"\n[[levels]]\nm = 2\ncurves = [{ geom = \"FIBER_Q\", param = 1 }]\n";
        let e = parse_spec(bad, SpecFormat::Toml).unwrap_err().to_string();
        assert!(e.contains("levels[0].curves[0]"), "{e}");
        let e = parse_spec("base = 3", SpecFormat::Toml).unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
        let e = parse_spec("{\"base\": \"P2\", \"omega\": \"X\", \"levels\": []}", SpecFormat::Json).unwrap_err();
        assert!(e.to_string().contains("omega"));
    }
}
