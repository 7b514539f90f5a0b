//! JSON interchange form of a [`TorsionClass`]:
//! `{"genus": g, "boundary": n, "phi": [[...]], "tau_num": "...", "tau_den": "..."}`.

use serde::{Deserialize, Serialize};

use crate::autstar::AutStarElement;
use crate::cylinder::TorsionClass;
use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::lattice::{IntMatrix, SurfaceSignature};
use crate::syntax::parse_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDescriptor {
    pub genus: usize,
    pub boundary: usize,
    pub phi: Vec<Vec<i64>>,
    pub tau_num: String,
    pub tau_den: String,
}

impl CylinderDescriptor {
    pub fn signature(&self) -> SurfaceSignature {
        SurfaceSignature::new(self.genus, self.boundary)
    }

    pub fn to_torsion_class(&self) -> Result<TorsionClass> {
        let sig = self.signature();
        let matrix = if self.phi.is_empty() && sig.rank() == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_rows(&self.phi).map_err(|e| Error::Descriptor(format!("phi: {e}")))?
        };
        let phi = AutStarElement::from_matrix(sig, matrix)?;
        let num = parse_polynomial(&self.tau_num, sig)?;
        let den = parse_polynomial(&self.tau_den, sig)?;
        TorsionClass::new(phi, LaurentFraction::new(num, den)?)
    }

    pub fn from_torsion_class(m: &TorsionClass) -> Self {
        let sig = m.signature();
        CylinderDescriptor {
            genus: sig.genus,
            boundary: sig.boundary_components,
            phi: m.phi().matrix().to_rows(),
            tau_num: m.tau().numerator().to_string(),
            tau_den: m.tau().denominator().to_string(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}
