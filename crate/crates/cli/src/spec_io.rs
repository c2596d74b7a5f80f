//! JSON formats for state specifications and parameterized families.
//!
//! A state spec is the canonical input document, angles in radians:
//!
//! ```json
//! {"components": [{"w": 0.5,
//!                  "a": {"theta": 0.0, "phi": 0.0},
//!                  "b": {"theta": 0.0, "phi": 0.0}}]}
//! ```
//!
//! A family file wraps a spec template together with a sweep block. Any
//! numeric field of the template may instead hold the sweep symbol as a
//! string; every occurrence is substituted with the sweep value at each
//! step (the same symbol may appear at several sites, e.g. a polar angle
//! shared between the A and B states):
//!
//! ```json
//! {"spec": {"components": [
//!    {"w": 0.5, "a": {"theta": 0, "phi": 0}, "b": {"theta": 0, "phi": 0}},
//!    {"w": 0.5, "a": {"theta": "theta", "phi": 0}, "b": {"theta": "theta", "phi": 0}}]},
//!  "sweep": {"symbol": "theta", "from": 0.0, "to": 3.141592653589793, "steps": 65}}
//! ```

use std::fs;
use std::path::Path;

use discord_scope_core::states::{SeparableStateSpec, StateComponent};
use discord_scope_core::BlochAngles;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumOrSymbol {
    Num(f64),
    Symbol(String),
}

impl NumOrSymbol {
    fn resolve(&self, field: &str, symbol: Option<(&str, f64)>) -> Result<f64, CliError> {
        match self {
            NumOrSymbol::Num(v) => Ok(*v),
            NumOrSymbol::Symbol(s) => match symbol {
                Some((name, value)) if name == s => Ok(value),
                _ => Err(CliError::malformed_spec(format!(
                    "field {field}: unknown symbol \"{s}\""
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnglesDoc {
    pub theta: NumOrSymbol,
    pub phi: NumOrSymbol,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub w: NumOrSymbol,
    pub a: AnglesDoc,
    pub b: AnglesDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecDoc {
    pub components: Vec<ComponentDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepDoc {
    pub symbol: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub spec: SpecDoc,
    pub sweep: SweepDoc,
}

impl SpecDoc {
    /// Instantiate with an optional symbol binding and validate.
    pub fn resolve(&self, symbol: Option<(&str, f64)>) -> Result<SeparableStateSpec, CliError> {
        let mut comps = Vec::with_capacity(self.components.len());
        for (i, comp) in self.components.iter().enumerate() {
            let w = comp.w.resolve(&format!("components[{i}].w"), symbol)?;
            let at = comp
                .a
                .theta
                .resolve(&format!("components[{i}].a.theta"), symbol)?;
            let ap = comp
                .a
                .phi
                .resolve(&format!("components[{i}].a.phi"), symbol)?;
            let bt = comp
                .b
                .theta
                .resolve(&format!("components[{i}].b.theta"), symbol)?;
            let bp = comp
                .b
                .phi
                .resolve(&format!("components[{i}].b.phi"), symbol)?;
            comps.push(StateComponent {
                weight: w,
                a_state: BlochAngles::new(at, ap),
                b_state: BlochAngles::new(bt, bp),
            });
        }
        SeparableStateSpec::new(comps)
            .map_err(|e| CliError::malformed_spec(format!("components: {e}")))
    }
}

impl SweepDoc {
    pub fn values(&self) -> Vec<f64> {
        let steps = self.steps.max(2);
        (0..steps)
            .map(|i| self.from + (self.to - self.from) * i as f64 / (steps - 1) as f64)
            .collect()
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::malformed_spec(format!("{}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        CliError::malformed_spec(format!("{}: field {}: {}", path.display(), e.path(), e.inner()))
    })
}

/// Load a plain state spec (no symbols allowed).
pub fn load_spec(path: &Path) -> Result<SeparableStateSpec, CliError> {
    let doc: SpecDoc = parse_json(path)?;
    doc.resolve(None)
}

/// Load a family file.
pub fn load_family(path: &Path) -> Result<FamilyDoc, CliError> {
    parse_json(path)
}

/// Serialize a spec back to its document form.
pub fn spec_to_doc(spec: &SeparableStateSpec) -> SpecDoc {
    SpecDoc {
        components: spec
            .components()
            .iter()
            .map(|c| ComponentDoc {
                w: NumOrSymbol::Num(c.weight),
                a: AnglesDoc {
                    theta: NumOrSymbol::Num(c.a_state.theta),
                    phi: NumOrSymbol::Num(c.a_state.phi),
                },
                b: AnglesDoc {
                    theta: NumOrSymbol::Num(c.b_state.theta),
                    phi: NumOrSymbol::Num(c.b_state.phi),
                },
            })
            .collect(),
    }
}
