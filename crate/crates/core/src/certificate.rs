//! Serializable, independently re-checkable records of claims.
//!
//! The leading fields `version, claim, expr, N, r, param, coloring, witness`
//! always appear in that order; the remaining fields are emitted only when
//! set.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::constructions::Interval;
use crate::error::{Error, Result};
use crate::witness::Witness;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// The attached coloring has no monochromatic `param`-term AP with
    /// common difference in the set.
    NoMonoAp,
    /// The attached coloring has no monochromatic walk with `param` elements.
    NoMonoWalk,
    /// The attached witness exists.
    WitnessFound,
    /// Every `r`-coloring of `[1, N]` contains the target structure, and the
    /// attached coloring of `[1, N - 1]` avoids it.
    Threshold,
    /// Exhaustive search found no structure of kind `target`.
    NoWitness,
}

/// The structure a claim is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Ap,
    Walk,
    Cube,
    Homothetic,
    SubsetAp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub claim: Claim,
    pub expr: String,
    #[serde(rename = "N")]
    pub n: usize,
    /// Number of colors; 0 for claims that involve no coloring.
    pub r: u32,
    /// Progression length, walk length, cube dimension, `n` of a homothetic
    /// progression, or target size of a difference set.
    pub param: usize,
    pub coloring: Option<Vec<u32>>,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Structure>,
    /// The subset searched by a subset-AP claim; `expr` then names the
    /// set of allowed common differences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset_expr: Option<String>,
    /// For cube searches: false when the search stopped on its node budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Interval>>,
    /// `"window"`: a statement about `[1, N]` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

impl Certificate {
    pub fn new(claim: Claim, expr: impl Into<String>, n: usize, r: u32, param: usize) -> Self {
        Certificate {
            version: FORMAT_VERSION,
            claim,
            expr: expr.into(),
            n,
            r,
            param,
            coloring: None,
            witness: None,
            target: None,
            subset_expr: None,
            exhausted: None,
            partition: None,
            scale: None,
            stats: None,
        }
    }

    pub fn with_coloring(mut self, coloring: &Coloring) -> Self {
        self.coloring = Some(coloring.as_slice().to_vec());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_target(mut self, target: Structure) -> Self {
        self.target = Some(target);
        self
    }

    pub fn window_scale(mut self) -> Self {
        self.scale = Some("window".into());
        self
    }

    /// The attached coloring, validated against `r`.
    pub fn coloring(&self) -> Result<Option<Coloring>> {
        self.coloring
            .as_ref()
            .map(|c| {
                Coloring::new(self.r, c.clone())
                    .map_err(|e| Error::MalformedCertificate(e.to_string()))
            })
            .transpose()
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        if cert.version != FORMAT_VERSION {
            return Err(Error::MalformedCertificate(format!(
                "unsupported version {}",
                cert.version
            )));
        }
        Ok(cert)
    }

    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        out.write_all(self.to_json().as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_and_nulls() {
        let c = Certificate::new(Claim::NoMonoAp, "odds", 3, 2, 2)
            .with_coloring(&Coloring::new(2, vec![1, 0, 1]).unwrap());
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"version":1,"claim":"no-mono-ap","expr":"odds","N":3,"r":2,"param":2,"coloring":[1,0,1],"witness":null}"#
        );
        assert_eq!(Certificate::from_json(&s).unwrap(), c);
    }

    #[test]
    fn rejects_bad_version_and_shape() {
        let s = r#"{"version":2,"claim":"no-mono-ap","expr":"odds","N":3,"r":2,"param":2,"coloring":null,"witness":null}"#;
        assert!(matches!(
            Certificate::from_json(s),
            Err(Error::MalformedCertificate(_))
        ));
        assert!(matches!(
            Certificate::from_json("{}"),
            Err(Error::MalformedCertificate(_))
        ));
        let s = r#"{"version":1,"claim":"no-mono-ap","expr":"odds","N":3,"r":2,"param":2,"coloring":[0,5,1],"witness":null}"#;
        assert!(Certificate::from_json(s).unwrap().coloring().is_err());
    }
}
