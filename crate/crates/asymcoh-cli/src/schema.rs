//! Model documents: the JSON schema for surface and abelian models.
//!
//! All numbers are exact rationals, encoded as JSON integers or "p/q"
//! strings. Structural problems (wrong kinds, ragged arrays, rank
//! mismatches) are parse errors; mathematical validation failures
//! (signature, ample pairings, integrality) are model-validation errors.

use serde::Deserialize;

use asymcoh::abelian::{AbelianError, AbelianModel, HermitianForm};
use asymcoh::cohom::DivisorClass;
use asymcoh::surface::{ConeMode, NegativeCurve, SurfaceError, SurfaceModel};
use asymcoh::QSymMatrix;

use crate::ratio::{unwrap_matrix, unwrap_vec, RatJson};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelDocument {
    Surface(SurfaceDoc),
    Abelian(AbelianDoc),
}

#[derive(Debug, Deserialize)]
pub struct SurfaceDoc {
    pub rank: usize,
    pub gram: Vec<Vec<RatJson>>,
    pub curves: Vec<CurveDoc>,
    pub cone: ConeDoc,
    pub ample: Vec<RatJson>,
    /// Optional display labels for the basis.
    #[serde(default)]
    pub basis: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
pub struct CurveDoc {
    pub name: String,
    pub coords: Vec<RatJson>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ConeDoc {
    Polyhedral { mori: Vec<Vec<RatJson>> },
    Quadric {},
}

#[derive(Debug, Deserialize)]
pub struct AbelianDoc {
    pub g: usize,
    pub basis_forms: Vec<FormDoc>,
    pub lattice: Vec<Vec<RatJson>>,
}

#[derive(Debug, Deserialize)]
pub struct FormDoc {
    pub re: Vec<Vec<RatJson>>,
    pub im: Vec<Vec<RatJson>>,
}

/// Structural schema check: everything that is about shapes, not values.
fn shape_error(msg: &str) -> String {
    format!("schema violation: {msg}")
}

impl SurfaceDoc {
    pub fn build(&self) -> Result<SurfaceModel, BuildError> {
        let r = self.rank;
        if self.gram.len() != r || self.gram.iter().any(|row| row.len() != r) {
            return Err(BuildError::Schema(shape_error("gram must be rank x rank")));
        }
        if self.ample.len() != r {
            return Err(BuildError::Schema(shape_error("ample must have rank entries")));
        }
        for c in &self.curves {
            if c.coords.len() != r {
                return Err(BuildError::Schema(shape_error(&format!(
                    "curve {} must have rank entries",
                    c.name
                ))));
            }
        }
        let gram = QSymMatrix::new(unwrap_matrix(&self.gram))
            .map_err(|e| BuildError::Validation(e.to_string()))?;
        let curves = self
            .curves
            .iter()
            .map(|c| NegativeCurve {
                name: c.name.clone(),
                class: DivisorClass::new(unwrap_vec(&c.coords)),
            })
            .collect();
        let cone = match &self.cone {
            ConeDoc::Polyhedral { mori } => {
                for g in mori {
                    if g.len() != r {
                        return Err(BuildError::Schema(shape_error(
                            "curve-cone generators must have rank entries",
                        )));
                    }
                }
                ConeMode::Polyhedral {
                    mori_generators: mori
                        .iter()
                        .map(|g| DivisorClass::new(unwrap_vec(g)))
                        .collect(),
                }
            }
            ConeDoc::Quadric {} => ConeMode::Quadric,
        };
        let ample = DivisorClass::new(unwrap_vec(&self.ample));
        SurfaceModel::new(gram, curves, cone, ample, self.basis.clone()).map_err(|e| match e {
            SurfaceError::InvalidModel(_) => BuildError::Validation(e.to_string()),
            other => BuildError::Validation(other.to_string()),
        })
    }
}

impl AbelianDoc {
    pub fn build(&self) -> Result<AbelianModel, BuildError> {
        let g = self.g;
        for (k, form) in self.basis_forms.iter().enumerate() {
            let ok = form.re.len() == g
                && form.im.len() == g
                && form.re.iter().all(|row| row.len() == g)
                && form.im.iter().all(|row| row.len() == g);
            if !ok {
                return Err(BuildError::Schema(shape_error(&format!(
                    "basis form {k} must be g x g"
                ))));
            }
        }
        if self.lattice.len() != 2 * g || self.lattice.iter().any(|v| v.len() != 2 * g) {
            return Err(BuildError::Schema(shape_error("lattice must be 2g vectors of length 2g")));
        }
        let forms = self
            .basis_forms
            .iter()
            .map(|f| HermitianForm::new(unwrap_matrix(&f.re), unwrap_matrix(&f.im)))
            .collect::<Result<Vec<_>, AbelianError>>()
            .map_err(|e| BuildError::Validation(e.to_string()))?;
        AbelianModel::new(g, forms, unwrap_matrix(&self.lattice))
            .map_err(|e| BuildError::Validation(e.to_string()))
    }
}

/// Split of document errors into the two exit-code classes.
#[derive(Debug)]
pub enum BuildError {
    /// Exit 2: the document does not match the schema.
    Schema(String),
    /// Exit 4: the document is well-formed but mathematically inconsistent.
    Validation(String),
}

pub fn load_document(path: &std::path::Path) -> Result<ModelDocument, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}
