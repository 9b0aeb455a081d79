//! The JSON chain-spec document and its conversions to and from library
//! chains, plus the matrix document consumed by the content command.

use serde::{Deserialize, Serialize};

use valchain_core::chain::{AugRecord, Chain};
use valchain_core::content::FpModulePresentation;
use valchain_core::error::{Error, Result};
use valchain_core::field::ValuedField;
use valchain_core::poly::Poly;
use valchain_core::valuation::{FamilyPrefix, GaussVal};

use crate::parse::{parse_elem, parse_poly, parse_value};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaseFieldDoc {
    pub kind: String,
    pub p: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaussDoc {
    pub center: String,
    pub radius: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyPairDoc {
    pub psi: String,
    pub gamma: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AugDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<FamilyPairDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_gamma_limit: Option<String>,
}

/// The on-disk chain description: base field, Gauss seed, augmentation
/// records in order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainSpecDocument {
    pub base: BaseFieldDoc,
    pub gauss: GaussDoc,
    #[serde(default)]
    pub augmentations: Vec<AugDoc>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseFieldDoc {
    pub fn to_field(&self) -> Result<ValuedField> {
        if !is_prime(self.p) {
            return Err(Error::Parse(format!("base p must be prime, got {}", self.p)));
        }
        match self.kind.as_str() {
            "padic" => Ok(ValuedField::PAdicRationals(self.p)),
            "laurent" => Ok(ValuedField::LaurentRationalFunctions(self.p)),
            other => Err(Error::Parse(format!(
                "unknown base kind {other:?} (expected \"padic\" or \"laurent\")"
            ))),
        }
    }

    pub fn from_field(field: ValuedField) -> BaseFieldDoc {
        match field {
            ValuedField::PAdicRationals(p) => BaseFieldDoc { kind: "padic".into(), p },
            ValuedField::LaurentRationalFunctions(p) => BaseFieldDoc { kind: "laurent".into(), p },
        }
    }
}

impl ChainSpecDocument {
    pub fn to_chain(&self) -> Result<Chain> {
        let field = self.base.to_field()?;
        let seed = GaussVal {
            field,
            center: parse_elem(field, &self.gauss.center)?,
            radius: parse_value(&self.gauss.radius)?,
        };
        let mut augs = Vec::with_capacity(self.augmentations.len());
        for (i, rec) in self.augmentations.iter().enumerate() {
            augs.push(rec.to_record(field).map_err(|e| {
                Error::Parse(format!("augmentation {i}: {e}"))
            })?);
        }
        Ok(Chain::new(seed, augs))
    }

    pub fn from_chain(chain: &Chain) -> ChainSpecDocument {
        let field = chain.seed.field;
        ChainSpecDocument {
            base: BaseFieldDoc::from_field(field),
            gauss: GaussDoc {
                center: chain.seed.center.to_string(),
                radius: chain.seed.radius.to_string(),
            },
            augmentations: chain.augs.iter().map(AugDoc::from_record).collect(),
        }
    }
}

impl AugDoc {
    fn to_record(&self, field: ValuedField) -> Result<AugRecord> {
        let need = |opt: &Option<String>, name: &str| -> Result<String> {
            opt.clone().ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
        };
        let family = |pairs: &Option<Vec<FamilyPairDoc>>, limit: &Option<String>| -> Result<FamilyPrefix> {
            let pairs = pairs
                .as_ref()
                .ok_or_else(|| Error::Parse("missing field \"family\"".into()))?
                .iter()
                .map(|pair| Ok((parse_poly(field, &pair.psi)?, parse_value(&pair.gamma)?)))
                .collect::<Result<Vec<(Poly, _)>>>()?;
            Ok(FamilyPrefix {
                pairs,
                declared_gamma_limit: parse_value(&need(limit, "family_gamma_limit")?)?,
            })
        };
        match self.kind.as_str() {
            "ordinary" => Ok(AugRecord::Ordinary {
                phi: parse_poly(field, &need(&self.phi, "phi")?)?,
                mu: parse_value(&need(&self.mu, "mu")?)?,
            }),
            "limit" => Ok(AugRecord::Limit {
                family: family(&self.family, &self.family_gamma_limit)?,
                phi: parse_poly(field, &need(&self.phi, "phi")?)?,
                mu: parse_value(&need(&self.mu, "mu")?)?,
            }),
            "stable_family" => Ok(AugRecord::StableFamily {
                family: family(&self.family, &self.family_gamma_limit)?,
            }),
            other => Err(Error::Parse(format!(
                "unknown record kind {other:?} (expected \"ordinary\", \"limit\", or \"stable_family\")"
            ))),
        }
    }

    fn from_record(rec: &AugRecord) -> AugDoc {
        let family_docs = |family: &FamilyPrefix| {
            family
                .pairs
                .iter()
                .map(|(psi, gamma)| FamilyPairDoc { psi: psi.to_string(), gamma: gamma.to_string() })
                .collect()
        };
        match rec {
            AugRecord::Ordinary { phi, mu } => AugDoc {
                kind: "ordinary".into(),
                phi: Some(phi.to_string()),
                mu: Some(mu.to_string()),
                family: None,
                family_gamma_limit: None,
            },
            AugRecord::Limit { family, phi, mu } => AugDoc {
                kind: "limit".into(),
                phi: Some(phi.to_string()),
                mu: Some(mu.to_string()),
                family: Some(family_docs(family)),
                family_gamma_limit: Some(family.declared_gamma_limit.to_string()),
            },
            AugRecord::StableFamily { family } => AugDoc {
                kind: "stable_family".into(),
                phi: None,
                mu: None,
                family: Some(family_docs(family)),
                family_gamma_limit: Some(family.declared_gamma_limit.to_string()),
            },
        }
    }
}

/// The matrix document for the content command: a base field and entries in
/// element text, rows of equal length.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub base: BaseFieldDoc,
    pub matrix: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn to_presentation(&self) -> Result<FpModulePresentation> {
        let field = self.base.to_field()?;
        let entries = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| parse_elem(field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FpModulePresentation::new(field, entries.len(), entries)
    }
}
