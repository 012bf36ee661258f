use serde::{Deserialize, Serialize};

use crate::scalar::Rational;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Boson,
    Fermion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Untwisted,
    Sigma,
    Kappa,
    SigmaXi { j: i64, k: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlavorBasis {
    Orthonormal,
    Polarized,
    Charged,
}

/// One tensor factor. `copy` says which copy of 𝔥 the slot realizes
/// (1 or 2); charged slots carry both copies and use `copy = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotSpec {
    pub species: Species,
    pub twist: Twist,
    pub flavor_basis: FlavorBasis,
    #[serde(default = "default_copy")]
    pub copy: u8,
}

fn default_copy() -> u8 {
    1
}

impl SlotSpec {
    pub fn boson(copy: u8) -> Self {
        SlotSpec { species: Species::Boson, twist: Twist::Untwisted, flavor_basis: FlavorBasis::Orthonormal, copy }
    }

    pub fn fermion(copy: u8) -> Self {
        SlotSpec { species: Species::Fermion, twist: Twist::Untwisted, flavor_basis: FlavorBasis::Orthonormal, copy }
    }

    pub fn sigma_fermion(copy: u8) -> Self {
        SlotSpec { species: Species::Fermion, twist: Twist::Sigma, flavor_basis: FlavorBasis::Polarized, copy }
    }

    pub fn kappa_boson(copy: u8) -> Self {
        SlotSpec { species: Species::Boson, twist: Twist::Kappa, flavor_basis: FlavorBasis::Orthonormal, copy }
    }

    pub fn charged_fermion(j: i64, k: i64) -> Self {
        let twist = if j == 0 { Twist::Untwisted } else { Twist::SigmaXi { j, k } };
        SlotSpec { species: Species::Fermion, twist, flavor_basis: FlavorBasis::Charged, copy: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorSpec {
    pub d: u32,
    pub slots: Vec<SlotSpec>,
}

impl SectorSpec {
    pub fn new(d: u32, slots: Vec<SlotSpec>) -> Self {
        SectorSpec { d, slots }
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sector spec serializes")
    }

    /// V_bos
    pub fn bos(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::boson(1)])
    }

    /// V_fer
    pub fn fer(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::fermion(1)])
    }

    /// V = V_bos ⊗ V_fer
    pub fn n1_free(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::boson(1), SlotSpec::fermion(1)])
    }

    /// V ⊗ V in the orthonormal layout.
    pub fn n2_free(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::boson(1), SlotSpec::fermion(1), SlotSpec::boson(2), SlotSpec::fermion(2)])
    }

    /// V ⊗ V with the two fermion copies combined into charged fermions.
    pub fn n2_free_charged(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::boson(1), SlotSpec::boson(2), SlotSpec::charged_fermion(0, 1)])
    }

    /// M_σ
    pub fn sigma_fermion(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::sigma_fermion(1)])
    }

    /// M_κ
    pub fn kappa_boson(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::kappa_boson(1)])
    }

    /// V_bos ⊗ M_σ
    pub fn ramond_n1(d: u32) -> Self {
        Self::new(d, vec![SlotSpec::boson(1), SlotSpec::sigma_fermion(1)])
    }

    /// (V_bos ⊗ M_σ)^{⊗2}
    pub fn ramond_n2(d: u32) -> Self {
        Self::new(
            d,
            vec![SlotSpec::boson(1), SlotSpec::sigma_fermion(1), SlotSpec::boson(2), SlotSpec::sigma_fermion(2)],
        )
    }

    /// V ⊗ M_κ ⊗ M_σ
    pub fn mirror_kappa(d: u32) -> Self {
        Self::new(
            d,
            vec![SlotSpec::boson(1), SlotSpec::fermion(1), SlotSpec::kappa_boson(2), SlotSpec::sigma_fermion(2)],
        )
    }

    /// V_bos ⊗ V_bos ⊗ M_{σ_ξ} with ξ = e^{2πi j/k}.
    pub fn sigma_xi(d: u32, k: i64, j: i64) -> Self {
        Self::new(d, vec![SlotSpec::boson(1), SlotSpec::boson(2), SlotSpec::charged_fermion(j, k)])
    }

    /// Twist parameter j/k of a σ_ξ slot, reduced to [0, 1).
    pub fn theta(slot: &SlotSpec) -> Rational {
        match slot.twist {
            Twist::SigmaXi { j, k } => Rational::new(j, k).fract(),
            _ => Rational::zero(),
        }
    }
}
