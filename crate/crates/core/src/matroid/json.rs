use serde::{Deserialize, Serialize};

use super::{CyclicFlat, GroundSet, Matroid};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFlatJson {
    pub set: Vec<String>,
    pub rank: usize,
}

/// Wire form: `{"elements":[...],"cyclic_flats":[{"set":[...],"rank":k},...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub elements: Vec<String>,
    pub cyclic_flats: Vec<CyclicFlatJson>,
}

impl MatroidJson {
    pub fn into_matroid(self) -> Result<Matroid> {
        let ground = GroundSet::new(self.elements)?;
        let zee = self
            .cyclic_flats
            .iter()
            .map(|z| {
                Ok(CyclicFlat {
                    set: ground.mask_of(&z.set)?,
                    rank: z.rank,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Matroid::new(ground, zee)
    }
}

impl Matroid {
    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            elements: self.ground.labels().to_vec(),
            cyclic_flats: self
                .zee
                .iter()
                .map(|z| CyclicFlatJson {
                    set: self.ground.labels_of(z.set),
                    rank: z.rank,
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Matroid> {
        let j: MatroidJson = serde_json::from_str(text)?;
        j.into_matroid()
    }
}
