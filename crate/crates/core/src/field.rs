//! Abstract description of a base number field `k`.
//!
//! Only the data the counting bounds consume is modeled: the degree, the
//! number of real places, class-group ℓ-ranks and the image of the
//! cyclotomic character modulo various `e`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Image of the cyclotomic character of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cyclotomic {
    /// `k ∩ ℚ(ζ_∞) = ℚ`: the image is all of `(ℤ/eℤ)^×` for every `e`.
    Full,
    /// Generators of the image modulo each listed `e`; smaller moduli are
    /// obtained by reduction from a listed multiple.
    Moduli(BTreeMap<u64, Vec<u64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFieldData {
    degree: u32,
    real_places: u32,
    class_rank: BTreeMap<u64, u32>,
    cyclotomic: Cyclotomic,
}

/// On-disk form: `{degree, real_places, class_rank: {ℓ: rank}, cyclo_generators: {e: [ints]}}`.
///
/// An absent `cyclo_generators` means the cyclotomic character is surjective.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseFieldJson {
    pub degree: u32,
    pub real_places: u32,
    #[serde(default)]
    pub class_rank: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclo_generators: Option<BTreeMap<String, Vec<u64>>>,
}

impl BaseFieldData {
    pub fn rationals() -> Self {
        BaseFieldData { degree: 1, real_places: 1, class_rank: BTreeMap::new(), cyclotomic: Cyclotomic::Full }
    }

    pub fn new(degree: u32, real_places: u32, class_rank: BTreeMap<u64, u32>, cyclotomic: Cyclotomic) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if real_places > degree {
            return Err(Error::InvalidField(format!("{real_places} real places exceed degree {degree}")));
        }
        if let Cyclotomic::Moduli(map) = &cyclotomic {
            for (&e, gens) in map {
                if e == 0 {
                    return Err(Error::InvalidField("modulus 0".into()));
                }
                if let Some(&g) = gens.iter().find(|&&g| g.gcd(&e) != 1) {
                    return Err(Error::InvalidField(format!("{g} is not a unit mod {e}")));
                }
                let size = subgroup_mod(e, gens).len() as u64;
                let phi = units_mod(e).len() as u64;
                // [k ∩ ℚ(ζ_e) : ℚ] = φ(e)/|image| must divide [k:ℚ]
                if phi % size != 0 || (degree as u64) % (phi / size) != 0 {
                    return Err(Error::InvalidField(format!(
                        "cyclotomic image of order {size} mod {e} is incompatible with degree {degree}"
                    )));
                }
            }
        }
        Ok(BaseFieldData { degree, real_places, class_rank, cyclotomic })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BaseFieldJson = serde_json::from_str(text).map_err(|e| Error::InvalidField(e.to_string()))?;
        Self::try_from(raw)
    }

    /// `"Q"` or a JSON document.
    pub fn parse(spec: &str) -> Result<Self> {
        if spec.trim() == "Q" {
            Ok(Self::rationals())
        } else {
            Self::from_json_str(spec)
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn real_places(&self) -> u32 {
        self.real_places
    }

    pub fn class_rank(&self, ell: u64) -> u32 {
        self.class_rank.get(&ell).copied().unwrap_or(0)
    }

    pub fn cyclotomic(&self) -> &Cyclotomic {
        &self.cyclotomic
    }

    /// The image of the cyclotomic character in `(ℤ/eℤ)^×`, sorted.
    pub fn cyclo_subgroup(&self, e: u64) -> Result<Vec<u64>> {
        if e == 1 {
            return Ok(vec![0]);
        }
        match &self.cyclotomic {
            Cyclotomic::Full => Ok(units_mod(e)),
            Cyclotomic::Moduli(map) => {
                let (&m, gens) = map.iter().find(|(&m, _)| m % e == 0).ok_or(Error::UnsupportedModulus(e))?;
                let mut image: Vec<u64> = subgroup_mod(m, gens).into_iter().map(|x| x % e).collect();
                image.sort_unstable();
                image.dedup();
                Ok(image)
            }
        }
    }

    /// `n_ℓ = [k(ζ_ℓ):k]`, the size of the cyclotomic image mod ℓ.
    pub fn n_ell(&self, ell: u64) -> Result<u64> {
        Ok(self.cyclo_subgroup(ell)?.len() as u64)
    }

    pub fn to_json(&self) -> BaseFieldJson {
        BaseFieldJson {
            degree: self.degree,
            real_places: self.real_places,
            class_rank: self.class_rank.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            cyclo_generators: match &self.cyclotomic {
                Cyclotomic::Full => None,
                Cyclotomic::Moduli(m) => Some(m.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()),
            },
        }
    }
}

impl TryFrom<BaseFieldJson> for BaseFieldData {
    type Error = Error;

    fn try_from(raw: BaseFieldJson) -> Result<Self> {
        let parse_key = |k: &str| k.trim().parse::<u64>().map_err(|_| Error::InvalidField(format!("bad key `{k}`")));
        let class_rank = raw.class_rank.iter().map(|(k, v)| Ok((parse_key(k)?, *v))).collect::<Result<_>>()?;
        let cyclotomic = match raw.cyclo_generators {
            None => Cyclotomic::Full,
            Some(map) => {
                Cyclotomic::Moduli(map.iter().map(|(k, v)| Ok((parse_key(k)?, v.clone()))).collect::<Result<_>>()?)
            }
        };
        BaseFieldData::new(raw.degree, raw.real_places, class_rank, cyclotomic)
    }
}

pub fn units_mod(e: u64) -> Vec<u64> {
    if e == 1 {
        return vec![0];
    }
    (1..e).filter(|x| x.gcd(&e) == 1).collect()
}

/// Subgroup of `(ℤ/mℤ)^×` generated by `gens`, sorted.
pub fn subgroup_mod(m: u64, gens: &[u64]) -> Vec<u64> {
    let one = 1 % m;
    let mut set = vec![one];
    let mut i = 0;
    while i < set.len() {
        let x = set[i];
        for &g in gens {
            let y = x * (g % m) % m;
            if !set.contains(&y) {
                set.push(y);
            }
        }
        i += 1;
    }
    set.sort_unstable();
    set
}
